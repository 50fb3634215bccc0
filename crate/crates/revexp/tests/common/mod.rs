#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use revexp::lts::forward_steps;
use revexp::terms::{Action, Process, SyncSet};

pub fn acts(names: &[&str]) -> Vec<Action> {
    names.iter().map(|n| Action::new(n)).collect()
}

/// A random initial term with at most `depth` nested operators.
pub fn initial(rng: &mut ChaCha8Rng, depth: usize, alphabet: &[Action]) -> Process {
    if depth == 0 {
        return Process::Nil;
    }
    match rng.gen_range(0..10) {
        0 => Process::Nil,
        1..=4 => Process::prefix(alphabet.choose(rng).unwrap().clone(), initial(rng, depth - 1, alphabet)),
        5..=6 => Process::choice(initial(rng, depth - 1, alphabet), initial(rng, depth - 1, alphabet)),
        _ => {
            let sync = SyncSet::new(alphabet.iter().filter(|_| rng.gen_bool(0.3)).cloned()).unwrap();
            Process::par(
                sync,
                initial(rng, depth - 1, alphabet),
                initial(rng, depth - 1, alphabet),
            )
        }
    }
}

/// Takes up to `steps` random forward steps from `p`.
pub fn walk(rng: &mut ChaCha8Rng, p: Process, steps: usize) -> Process {
    let mut p = p;
    for _ in 0..steps {
        let next = forward_steps(&p);
        match next.choose(rng) {
            Some((_, q)) => p = q.clone(),
            None => break,
        }
    }
    p
}

/// A random reachable process.
pub fn reachable(rng: &mut ChaCha8Rng, depth: usize, alphabet: &[Action]) -> Process {
    let p = initial(rng, depth, alphabet);
    let steps = rng.gen_range(0..=depth + 1);
    walk(rng, p, steps)
}
