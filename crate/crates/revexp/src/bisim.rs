//! Forward, past-sensitive forward, reverse and forward-reverse bisimilarity
//! by partition refinement.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::encoding::BrsProcess;
use crate::error::{Error, Result};
use crate::lts::{state_cap, Lts, Observe, State};
use crate::terms::{brs, frs, is_reachable, to_initial, Process};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    FB,
    FBps,
    RB,
    FRB,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::FB, Variant::FBps, Variant::RB, Variant::FRB];

    pub fn forward(self) -> bool {
        self != Variant::RB
    }

    pub fn backward(self) -> bool {
        matches!(self, Variant::RB | Variant::FRB)
    }

    /// Whether related states must agree on being initial.
    pub fn splits_initiality(self) -> bool {
        self == Variant::FBps
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::FB => "fb",
            Variant::FBps => "fbps",
            Variant::RB => "rb",
            Variant::FRB => "frb",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fb" => Ok(Variant::FB),
            "fbps" => Ok(Variant::FBps),
            "rb" => Ok(Variant::RB),
            "frb" => Ok(Variant::FRB),
            _ => Err(Error::Invalid(format!("unknown variant {s}"))),
        }
    }
}

/// Which clause first told two states apart.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Initiality,
    Forward,
    Backward,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Initiality => "initiality",
            Direction::Forward => "forward",
            Direction::Backward => "backward",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub left: String,
    pub right: String,
    pub direction: Direction,
    /// Refinement round in which the two states were separated.
    pub round: usize,
    pub reason: String,
}

#[derive(Clone, Debug)]
pub struct Verdict<S> {
    pub equivalent: bool,
    /// The coarsest stable partition of the union of both state spaces.
    pub witness: Option<Vec<Vec<S>>>,
    pub counterexample: Option<Counterexample>,
}

struct Refinement {
    block_of: Vec<usize>,
    // For each round, the block assignment after it; round 0 is the seed.
    history: Vec<Vec<usize>>,
}

type Signature = (usize, Vec<(usize, usize)>, Vec<(usize, usize)>);

fn signatures<S: State>(lts: &Lts<S>, obs: &[usize], block_of: &[usize], v: Variant) -> Vec<Signature> {
    let n = lts.states.len();
    let mut fwd = vec![Vec::new(); n];
    let mut bwd = vec![Vec::new(); n];
    for (i, t) in lts.transitions.iter().enumerate() {
        if v.forward() {
            fwd[t.src].push((obs[i], block_of[t.dst]));
        }
        if v.backward() {
            bwd[t.dst].push((obs[i], block_of[t.src]));
        }
    }
    (0..n)
        .map(|s| {
            let mut f = std::mem::take(&mut fwd[s]);
            let mut b = std::mem::take(&mut bwd[s]);
            f.sort_unstable();
            f.dedup();
            b.sort_unstable();
            b.dedup();
            (block_of[s], f, b)
        })
        .collect()
}

fn observation_ids<S: State>(lts: &Lts<S>) -> Vec<usize> {
    let mut ids: HashMap<<S::Label as Observe>::Obs, usize> = HashMap::new();
    lts.transitions
        .iter()
        .map(|t| {
            let next = ids.len();
            *ids.entry(t.label.observe()).or_insert(next)
        })
        .collect()
}

fn renumber<K: std::hash::Hash + Eq>(keys: Vec<K>) -> (Vec<usize>, usize) {
    let mut ids: HashMap<K, usize> = HashMap::new();
    let out = keys
        .into_iter()
        .map(|k| {
            let next = ids.len();
            *ids.entry(k).or_insert(next)
        })
        .collect();
    (out, ids.len())
}

fn refine<S: State>(lts: &Lts<S>, v: Variant) -> Refinement {
    let obs = observation_ids(lts);
    let seed: Vec<bool> = (0..lts.states.len())
        .map(|s| v.splits_initiality() && lts.initial[s])
        .collect();
    let (mut block_of, mut count) = renumber(seed);
    let mut history = vec![block_of.clone()];
    loop {
        let (next, next_count) = renumber(signatures(lts, &obs, &block_of, v));
        block_of = next;
        if next_count == count {
            break;
        }
        count = next_count;
        history.push(block_of.clone());
    }
    Refinement { block_of, history }
}

/// Block index of every state in the coarsest partition stable under `v`.
/// Signatures are sets of (observation, target block) pairs, so duplicated
/// moves never split states.
pub fn largest_bisimulation<S: State>(lts: &Lts<S>, v: Variant) -> Vec<usize> {
    refine(lts, v).block_of
}

/// Number of blocks in a partition given as a block-per-state vector.
pub fn block_count(block_of: &[usize]) -> usize {
    block_of.iter().copied().max().map_or(0, |m| m + 1)
}

/// Transfer-clause violations of the relation "same block" on `lts`.
pub fn transfer_violations<S: State>(lts: &Lts<S>, block_of: &[usize], v: Variant) -> Vec<String> {
    let obs = observation_ids(lts);
    let mut out = Vec::new();
    let mut moves = |dir: &str, s: usize, t: usize, edges: &[(usize, usize)], other: &[(usize, usize)]| {
        for (o, target) in edges {
            if !other
                .iter()
                .any(|(o2, t2)| o2 == o && block_of[*t2] == block_of[*target])
            {
                out.push(format!(
                    "{dir} move of {} to {} is not matched by {}",
                    lts.states[s], lts.states[*target], lts.states[t]
                ));
            }
        }
    };
    let n = lts.states.len();
    let mut fwd = vec![Vec::new(); n];
    let mut bwd = vec![Vec::new(); n];
    for (i, t) in lts.transitions.iter().enumerate() {
        fwd[t.src].push((obs[i], t.dst));
        bwd[t.dst].push((obs[i], t.src));
    }
    for s in 0..n {
        for t in 0..n {
            if s == t || block_of[s] != block_of[t] {
                continue;
            }
            if v.forward() {
                moves("forward", s, t, &fwd[s], &fwd[t]);
            }
            if v.backward() {
                moves("backward", s, t, &bwd[s], &bwd[t]);
            }
        }
    }
    if v.splits_initiality() {
        for s in 0..n {
            for t in 0..n {
                if block_of[s] == block_of[t] && lts.initial[s] != lts.initial[t] {
                    out.push(format!("{} and {} differ on initiality", lts.states[s], lts.states[t]));
                }
            }
        }
    }
    out
}

/// Transfer-clause violations of a witness partition, rebuilt from its states.
pub fn witness_violations<S: State>(blocks: &[Vec<S>], v: Variant) -> Result<Vec<String>> {
    let mut lts = Lts::empty();
    for s in blocks.iter().flatten() {
        lts.add_root(s.clone(), usize::MAX)?;
    }
    let mut block_of = vec![usize::MAX; lts.states.len()];
    for (b, block) in blocks.iter().enumerate() {
        for s in block {
            let id = lts.id_of(s).expect("added above");
            block_of[id] = b;
        }
    }
    if let Some(id) = block_of.iter().position(|&b| b == usize::MAX) {
        return Ok(vec![format!("state {} is missing from the witness", lts.states[id])]);
    }
    Ok(transfer_violations(&lts, &block_of, v))
}

fn describe<S: State>(
    lts: &Lts<S>,
    obs: &[usize],
    before: &[usize],
    x: usize,
    y: usize,
    v: Variant,
) -> (Direction, String) {
    let sigs = signatures(lts, obs, before, v);
    let first_label = |id: usize| {
        lts.transitions
            .iter()
            .zip(obs)
            .find(|(_, &o)| o == id)
            .map(|(t, _)| t.label.to_string())
            .unwrap_or_default()
    };
    let explain = |dir: Direction, a: &[(usize, usize)], b: &[(usize, usize)]| {
        let (who, missing) = match a.iter().find(|e| !b.contains(e)) {
            Some(e) => (x, *e),
            None => (y, *b.iter().find(|e| !a.contains(e)).expect("signatures differ")),
        };
        let other = if who == x { y } else { x };
        (
            dir,
            format!(
                "{} has a {dir} step labelled {} that {} cannot match",
                lts.states[who],
                first_label(missing.0),
                lts.states[other]
            ),
        )
    };
    if sigs[x].1 != sigs[y].1 {
        explain(Direction::Forward, &sigs[x].1, &sigs[y].1)
    } else {
        explain(Direction::Backward, &sigs[x].2, &sigs[y].2)
    }
}

fn decide<S: State>(lts: &Lts<S>, x: usize, y: usize, v: Variant) -> Verdict<S> {
    let r = refine(lts, v);
    if r.block_of[x] == r.block_of[y] {
        let mut blocks = vec![Vec::new(); block_count(&r.block_of)];
        for (s, &b) in r.block_of.iter().enumerate() {
            blocks[b].push(lts.states[s].clone());
        }
        return Verdict {
            equivalent: true,
            witness: Some(blocks),
            counterexample: None,
        };
    }
    let round = r
        .history
        .iter()
        .position(|b| b[x] != b[y])
        .expect("final partition separates the states");
    let (direction, reason) = if round == 0 {
        (
            Direction::Initiality,
            format!("{} and {} differ on initiality", lts.states[x], lts.states[y]),
        )
    } else {
        describe(lts, &observation_ids(lts), &r.history[round - 1], x, y, v)
    };
    Verdict {
        equivalent: false,
        witness: None,
        counterexample: Some(Counterexample {
            left: lts.states[x].to_string(),
            right: lts.states[y].to_string(),
            direction,
            round,
            reason,
        }),
    }
}

fn union_of<S: State>(roots: &[(S, S)], cap: usize) -> Result<(Lts<S>, Vec<usize>)> {
    let mut lts = Lts::empty();
    for (init, _) in roots {
        lts.add_root(init.clone(), cap)?;
    }
    let ids = roots
        .iter()
        .map(|(_, s)| lts.id_of(s).ok_or_else(|| Error::NotReachable(s.to_string())))
        .collect::<Result<Vec<_>>>()?;
    Ok((lts, ids))
}

fn ensure_reachable(p: &Process) -> Result<()> {
    if is_reachable(p) {
        Ok(())
    } else {
        Err(Error::NotReachable(p.to_string()))
    }
}

/// Decides `p1 ~ p2` over the reachable states of both processes.
pub fn check(p1: &Process, p2: &Process, v: Variant) -> Result<Verdict<Process>> {
    ensure_reachable(p1)?;
    ensure_reachable(p2)?;
    let (lts, ids) = union_of(
        &[(to_initial(p1), p1.clone()), (to_initial(p2), p2.clone())],
        state_cap(),
    )?;
    Ok(decide(&lts, ids[0], ids[1], v))
}

/// Decides bisimilarity of two encodings, observing (action, ready set).
pub fn check_brs(u1: &BrsProcess, u2: &BrsProcess, v: Variant) -> Result<Verdict<BrsProcess>> {
    let (lts, ids) = union_of(
        &[(u1.to_initial(), u1.clone()), (u2.to_initial(), u2.clone())],
        state_cap(),
    )?;
    Ok(decide(&lts, ids[0], ids[1], v))
}

/// Equivalence classes of many states at once: one refinement over the union
/// of all their state spaces. Equal class ids mean bisimilar states.
pub fn classify<S: State>(states: &[S], initial_of: impl Fn(&S) -> S, v: Variant) -> Result<Vec<usize>> {
    let pairs: Vec<(S, S)> = states.iter().map(|s| (initial_of(s), s.clone())).collect();
    let (lts, ids) = union_of(&pairs, usize::MAX)?;
    let block_of = largest_bisimulation(&lts, v);
    Ok(ids.into_iter().map(|i| block_of[i]).collect())
}

/// Class ids for processes; see [`classify`].
pub fn classify_processes(ps: &[Process], v: Variant) -> Result<Vec<usize>> {
    for p in ps {
        ensure_reachable(p)?;
    }
    classify(ps, to_initial, v)
}

/// Class ids for encodings; see [`classify`].
pub fn classify_encodings(us: &[BrsProcess], v: Variant) -> Result<Vec<usize>> {
    classify(us, BrsProcess::to_initial, v)
}

/// Cheap refutation: equal ready sets are necessary for bisimilarity.
pub fn necessary_check(p1: &Process, p2: &Process, v: Variant) -> bool {
    (!v.forward() || frs(p1) == frs(p2)) && (!v.backward() || brs(p1) == brs(p2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::{default_order, encode};
    use crate::lts::build_lts;
    use crate::syntax::parse;

    fn p(s: &str) -> Process {
        parse(s).unwrap()
    }

    fn eq(a: &str, b: &str, v: Variant) -> bool {
        check(&p(a), &p(b), v).unwrap().equivalent
    }

    #[test]
    fn duplicated_choice_is_identified_by_all() {
        for v in Variant::ALL {
            assert!(eq("a.0 + a.0", "a.0", v), "{v}");
        }
    }

    #[test]
    fn interleaving_diamond_pair() {
        let (par, seq) = ("a.0 |[]| b.0", "a.b.0 + b.a.0");
        assert!(eq(par, seq, Variant::FB));
        assert!(eq(par, seq, Variant::FBps));
        assert!(!eq(par, seq, Variant::FRB));
        // Initial states have no incoming moves; only the bottoms differ.
        assert!(eq(par, seq, Variant::RB));
        assert!(!eq("a!.0 |[]| b!.0", "a!.b!.0 + b.a.0", Variant::RB));
        assert!(!eq("a!.0 |[]| b!.0", "a.b.0 + b!.a!.0", Variant::RB));
        assert!(eq("a!.0 |[]| b.0", "a!.b.0 + b.a.0", Variant::RB));
    }

    #[test]
    fn past_sensitivity() {
        assert!(eq("a!.b.0", "b.0", Variant::FB));
        assert!(!eq("a!.b.0", "b.0", Variant::FBps));
        assert!(eq("a!.b.0", "c!.b.0", Variant::FBps));
        assert!(!eq("a!.b.0", "c!.b.0", Variant::RB));
    }

    #[test]
    fn counterexample_reports_direction() {
        let v = check(&p("a!.b.0"), &p("b.0"), Variant::FBps).unwrap();
        assert_eq!(v.counterexample.unwrap().direction, Direction::Initiality);
        let v = check(&p("a.0"), &p("b.0"), Variant::FB).unwrap();
        assert_eq!(v.counterexample.unwrap().direction, Direction::Forward);
        let v = check(&p("a!.0"), &p("b!.0"), Variant::RB).unwrap();
        assert_eq!(v.counterexample.unwrap().direction, Direction::Backward);
    }

    #[test]
    fn witnesses_are_stable() {
        for (a, b) in [("a.0 + a.0", "a.0"), ("a.0 |[]| b.0", "a.b.0 + b.a.0")] {
            let v = check(&p(a), &p(b), Variant::FB).unwrap();
            assert!(witness_violations(&v.witness.unwrap(), Variant::FB).unwrap().is_empty());
        }
    }

    #[test]
    fn interleaving_diamond_blocks() {
        // The two intermediate states enable different actions.
        let lts = build_lts(&p("a.0 |[]| b.0")).unwrap();
        assert_eq!(block_count(&largest_bisimulation(&lts, Variant::FB)), 4);
        let lts = build_lts(&p("a.0 |[]| a.0")).unwrap();
        assert_eq!(block_count(&largest_bisimulation(&lts, Variant::FB)), 3);
        let again = largest_bisimulation(&lts, Variant::FB);
        assert!(transfer_violations(&lts, &again, Variant::FB).is_empty());
    }

    #[test]
    fn discrete_lts() {
        let lts = build_lts(&p("0")).unwrap();
        assert_eq!(block_count(&largest_bisimulation(&lts, Variant::FBps)), 1);
    }

    #[test]
    fn encodings_checked_with_ready_sets() {
        let enc = |s: &str| encode(&p(s), &default_order(&p(s))).unwrap();
        let (seq, par) = (enc("a.b.0 + b.a.0"), enc("a.0 |[]| b.0"));
        assert!(!check_brs(&seq, &par, Variant::FRB).unwrap().equivalent);
        assert!(check_brs(&seq, &seq, Variant::FRB).unwrap().equivalent);
        assert!(check_brs(&enc("a.0"), &enc("b.0"), Variant::RB).unwrap().equivalent);
    }

    #[test]
    fn necessary_conditions() {
        assert!(!necessary_check(
            &p("a!.0 |[]| b!.0"),
            &p("a!.b!.0 + b.a.0"),
            Variant::RB
        ));
        assert!(necessary_check(&p("a.0"), &p("a.0"), Variant::FRB));
        assert!(!necessary_check(&p("a.0"), &p("b.0"), Variant::FB));
    }

    #[test]
    fn classify_matches_pairwise_checks() {
        let ps: Vec<Process> = ["a.0 + a.0", "a.0", "b.0", "a.0 |[]| b.0", "a.b.0 + b.a.0"]
            .iter()
            .map(|s| p(s))
            .collect();
        for v in Variant::ALL {
            let ids = classify_processes(&ps, v).unwrap();
            for i in 0..ps.len() {
                for j in 0..ps.len() {
                    let direct = check(&ps[i], &ps[j], v).unwrap().equivalent;
                    assert_eq!(ids[i] == ids[j], direct, "{} vs {} under {v}", ps[i], ps[j]);
                }
            }
        }
    }
}
