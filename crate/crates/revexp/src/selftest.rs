//! Differential suites pairing each decision procedure with its oracle.

use std::collections::HashMap;
use std::hash::Hash;

use crate::bisim::{classify_processes, Variant};
use crate::encoding::verify_correspondence;
use crate::equational::{canonical_key, Theory};
use crate::error::Result;
use crate::terms::{size, Process};

/// Pairs on which two partitions of the same items disagree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Agreement {
    pub items: usize,
    /// Ordered pairs (i, j) related by exactly one of the two partitions.
    pub disagreeing_pairs: u64,
    pub example: Option<(usize, usize)>,
}

impl Agreement {
    pub fn ok(&self) -> bool {
        self.disagreeing_pairs == 0
    }

    pub fn pairs(&self) -> u64 {
        (self.items as u64).pow(2)
    }
}

/// Compares "same class" with "same key" over all ordered pairs, in time
/// linear in the number of items.
pub fn compare_partitions<A: Hash + Eq + Clone, B: Hash + Eq + Clone>(left: &[A], right: &[B]) -> Agreement {
    let mut both: HashMap<(A, B), u64> = HashMap::new();
    let mut by_left: HashMap<A, u64> = HashMap::new();
    let mut by_right: HashMap<B, u64> = HashMap::new();
    for (a, b) in left.iter().zip(right) {
        *both.entry((a.clone(), b.clone())).or_default() += 1;
        *by_left.entry(a.clone()).or_default() += 1;
        *by_right.entry(b.clone()).or_default() += 1;
    }
    let squares = |m: &u64| m * m;
    let joint: u64 = both.values().map(squares).sum();
    let disagreeing_pairs =
        by_left.values().map(squares).sum::<u64>() - joint + by_right.values().map(squares).sum::<u64>() - joint;
    let example = (disagreeing_pairs > 0)
        .then(|| {
            let n = left.len();
            (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .find(|&(i, j)| (left[i] == left[j]) != (right[i] == right[j]))
        })
        .flatten();
    Agreement {
        items: left.len(),
        disagreeing_pairs,
        example,
    }
}

/// The bisimilarity characterized by each theory.
pub fn variant_of(theory: Theory) -> Variant {
    match theory {
        Theory::F => Variant::FBps,
        Theory::R => Variant::RB,
        Theory::FR => Variant::FRB,
    }
}

/// Agreement of `prove_eq(·,·,theory)` with the matching bisimilarity on all
/// pairs of `ps`.
pub fn oracle_agreement(ps: &[Process], theory: Theory) -> Result<Agreement> {
    let classes = classify_processes(ps, variant_of(theory))?;
    let keys = ps
        .iter()
        .map(|p| canonical_key(p, theory))
        .collect::<Result<Vec<_>>>()?;
    Ok(compare_partitions(&classes, &keys))
}

/// Totals of a correspondence run over many roots.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CorrespondenceSummary {
    pub roots: usize,
    pub states: usize,
    pub transitions: usize,
    pub failing: Vec<(Process, String)>,
}

/// Runs the transition-correspondence walk from every root, as deep as the
/// root's size allows.
pub fn correspondence_suite(roots: &[Process]) -> CorrespondenceSummary {
    let mut out = CorrespondenceSummary {
        roots: roots.len(),
        ..Default::default()
    };
    for p in roots {
        let r = verify_correspondence(p, size(p));
        out.states += r.states;
        out.transitions += r.transitions;
        if let Some(v) = r.violations.first() {
            out.failing.push((p.clone(), v.clone()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_comparison_counts_ordered_pairs() {
        let a = compare_partitions(&[0, 0, 1], &["x", "x", "y"]);
        assert!(a.ok());
        let b = compare_partitions(&[0, 0, 1], &["x", "y", "y"]);
        // (0,1),(1,0) related only on the left; (1,2),(2,1) only on the right.
        assert_eq!(b.disagreeing_pairs, 4);
        assert!(b.example.is_some());
    }
}
