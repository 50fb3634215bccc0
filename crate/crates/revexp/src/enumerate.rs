//! Exhaustive generation of small processes for differential testing.

use std::collections::{BTreeSet, HashSet};

use crate::error::Result;
use crate::lts::Lts;
use crate::terms::{size, Action, Process, SyncSet};

/// Syntactic depth used when only a size bound is given.
pub const DEFAULT_DEPTH: usize = 3;

/// Initial processes of syntactic depth at most `max_depth` and size at most
/// `max_size`. `0` never appears as an operand of `+` or a parallel
/// composition, and synchronization sets range over subsets of the actions
/// occurring in the operands.
pub fn initial_terms(max_depth: usize, max_size: usize, alphabet: &[Action]) -> Vec<Process> {
    let mut level = vec![Process::Nil];
    for _ in 0..max_depth {
        let mut next = Vec::new();
        let mut seen = HashSet::new();
        let mut push = |p: Process, next: &mut Vec<Process>| {
            if size(&p) <= max_size && seen.insert(p.clone()) {
                next.push(p);
            }
        };
        push(Process::Nil, &mut next);
        for a in alphabet {
            for p in &level {
                push(Process::prefix(a.clone(), p.clone()), &mut next);
            }
        }
        let operands: Vec<&Process> = level.iter().filter(|p| **p != Process::Nil).collect();
        for l in &operands {
            for r in &operands {
                push(Process::choice((*l).clone(), (*r).clone()), &mut next);
            }
        }
        for l in &operands {
            for r in &operands {
                let acts: Vec<Action> = l.actions().union(&r.actions()).cloned().collect();
                for sync in subsets(&acts) {
                    push(Process::par(sync, (*l).clone(), (*r).clone()), &mut next);
                }
            }
        }
        level = next;
    }
    level
}

fn subsets(acts: &[Action]) -> Vec<SyncSet> {
    let usable: Vec<&Action> = acts.iter().filter(|a| !a.is_tau()).collect();
    (0..1u32 << usable.len())
        .map(|mask| {
            let chosen = usable
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, a)| (*a).clone());
            SyncSet::new(chosen).expect("tau filtered out")
        })
        .collect()
}

/// Every process reachable from an initial term of [`DEFAULT_DEPTH`] with
/// size at most `max_size`, deduplicated, in a deterministic order.
pub fn enumerate(max_size: usize, alphabet: &[Action]) -> Result<Vec<Process>> {
    enumerate_with_depth(max_size, DEFAULT_DEPTH, alphabet)
}

pub fn enumerate_with_depth(max_size: usize, max_depth: usize, alphabet: &[Action]) -> Result<Vec<Process>> {
    let mut lts = Lts::empty();
    for p in initial_terms(max_depth, max_size, alphabet) {
        lts.add_root(p, usize::MAX)?;
    }
    Ok(lts.states)
}

/// Alphabet from plain names.
pub fn alphabet(names: &[&str]) -> Vec<Action> {
    names
        .iter()
        .map(|n| Action::new(n))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}
