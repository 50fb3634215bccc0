mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use revexp::bisim::{check, check_brs, largest_bisimulation, transfer_violations, witness_violations, Variant};
use revexp::encoding::{default_order, encode, BrsProcess};
use revexp::equational::{
    canonical_brs, canonical_f, expansion_law_f, is_fnf, is_rnf, normalize_f, normalize_r, prove_eq, NormalFormTag,
    Theory,
};
use revexp::lts::{build_brs_lts, build_lts, export, forward_steps, Format, Lts, State};
use revexp::syntax::{parse, parse_brs, render, render_brs};
use revexp::terms::{
    act, brs, frs, is_initial, is_reachable, is_wellformed, size, to_initial, Action, ActionSet, Process, SyncSet,
};

fn action() -> impl Strategy<Value = Action> {
    prop_oneof![Just(Action::new("a")), Just(Action::new("b")), Just(Action::new("c"))]
}

fn sync() -> impl Strategy<Value = SyncSet> {
    proptest::collection::btree_set(action(), 0..3).prop_map(|s| SyncSet::new(s).unwrap())
}

fn initial() -> impl Strategy<Value = Process> {
    let leaf = prop_oneof![
        Just(Process::Nil),
        action().prop_map(|a| Process::prefix(a, Process::Nil))
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            (action(), inner.clone()).prop_map(|(a, p)| Process::prefix(a, p)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Process::choice(l, r)),
            (sync(), inner.clone(), inner).prop_map(|(s, l, r)| Process::par(s, l, r)),
        ]
    })
}

fn sequential() -> impl Strategy<Value = Process> {
    let leaf = prop_oneof![
        Just(Process::Nil),
        action().prop_map(|a| Process::prefix(a, Process::Nil))
    ];
    leaf.prop_recursive(4, 12, 2, |inner| {
        prop_oneof![
            (action(), inner.clone()).prop_map(|(a, p)| Process::prefix(a, p)),
            (inner.clone(), inner).prop_map(|(l, r)| Process::choice(l, r)),
        ]
    })
}

/// A reachable process: an initial term advanced by a seeded random walk.
fn reachable() -> impl Strategy<Value = Process> {
    (initial(), any::<u64>(), 0usize..5)
        .prop_map(|(p, seed, steps)| common::walk(&mut ChaCha8Rng::seed_from_u64(seed), p, steps))
}

fn set(s: &ActionSet) -> Vec<Action> {
    s.sorted()
}

fn longest_trace(p: &Process) -> usize {
    forward_steps(p)
        .iter()
        .map(|(_, q)| 1 + longest_trace(q))
        .max()
        .unwrap_or(0)
}

fn loop_holds<S: State>(lts: &Lts<S>) -> bool {
    (0..lts.len()).all(|s| lts.initial[s] == lts.incoming(s).unwrap().is_empty())
}

/// (action, ready) labels on the unique path from the initial version to `u`.
fn backward_chain(u: &BrsProcess) -> Vec<(Action, ActionSet)> {
    let lts = build_brs_lts(&u.to_initial()).unwrap();
    let mut s = lts.id_of(u).unwrap();
    let mut out = Vec::new();
    while let Some(t) = lts.incoming(s).unwrap().first() {
        out.push((act(&t.label.proof).unwrap().clone(), t.label.ready.clone()));
        s = t.src;
    }
    out.reverse();
    out
}

fn enc(p: &Process) -> BrsProcess {
    encode(p, &default_order(p)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn render_then_parse_is_identity(p in reachable()) {
        prop_assert_eq!(parse(&render(&p)).unwrap(), p);
    }

    #[test]
    fn brs_render_then_parse_is_identity(p in reachable()) {
        let u = enc(&p);
        prop_assert_eq!(parse_brs(&render_brs(&u)).unwrap(), u);
    }

    #[test]
    fn initial_terms_are_wellformed_and_idempotent(p in reachable()) {
        let q = to_initial(&p);
        prop_assert!(is_wellformed(&q) && is_initial(&q));
        prop_assert_eq!(to_initial(&q), q.clone());
        prop_assert_eq!(is_initial(&p), brs(&p).is_empty());
    }

    #[test]
    fn size_bounds_traces(p in initial()) {
        prop_assert!(size(&p) >= longest_trace(&p));
    }

    #[test]
    fn ready_sets_match_the_transition_system(p in reachable()) {
        let lts = build_lts(&to_initial(&p)).unwrap();
        let s = lts.id_of(&p).unwrap();
        let mut out = ActionSet::new();
        for t in lts.outgoing(s).unwrap() {
            out.insert(act(&t.label).unwrap().clone());
        }
        let mut inc = ActionSet::new();
        for t in lts.incoming(s).unwrap() {
            inc.insert(act(&t.label).unwrap().clone());
        }
        prop_assert_eq!(set(&frs(&p)), set(&out));
        prop_assert_eq!(set(&brs(&p)), set(&inc));
    }

    #[test]
    fn loop_property(p in initial()) {
        prop_assert!(loop_holds(&build_lts(&p).unwrap()));
        prop_assert!(loop_holds(&build_brs_lts(&enc(&p)).unwrap()));
    }

    #[test]
    fn construction_is_deterministic(p in initial()) {
        let (a, b) = (build_lts(&p).unwrap(), build_lts(&p).unwrap());
        prop_assert_eq!(a.states, b.states);
        prop_assert_eq!(a.transitions, b.transitions);
    }

    #[test]
    fn json_export_round_trips_counts(p in initial()) {
        let lts = build_lts(&p).unwrap();
        let v: serde_json::Value = serde_json::from_str(&export(&lts, Format::Json)).unwrap();
        prop_assert_eq!(v["states"].as_array().unwrap().len(), lts.len());
        prop_assert_eq!(v["transitions"].as_array().unwrap().len(), lts.transitions.len());
    }

    #[test]
    fn encoding_preserves_initiality(p in reachable()) {
        let u = enc(&p);
        prop_assert_eq!(u.is_initial(), is_initial(&p));
        prop_assert!(u.is_wellformed());
    }

    #[test]
    fn encoding_is_compositional(a in action(), p in initial(), r in reachable(), q in initial()) {
        let head = |executed, cont| BrsProcess::Prefix {
            action: a.clone(),
            executed,
            ready: ActionSet::singleton(a.clone()),
            cont: Box::new(cont),
        };
        prop_assert_eq!(enc(&Process::prefix(a.clone(), p.clone())), head(false, enc(&p)));
        prop_assert_eq!(enc(&Process::done(a.clone(), r.clone())), head(true, enc(&r)));
        let both = Process::choice(r.clone(), q.clone());
        prop_assert_eq!(enc(&both), BrsProcess::Choice(Box::new(enc(&r)), Box::new(enc(&q))));
    }

    #[test]
    fn bisimilarities_are_equivalences(p in reachable(), q in reachable(), r in reachable()) {
        for v in Variant::ALL {
            prop_assert!(check(&p, &p, v).unwrap().equivalent);
            let pq = check(&p, &q, v).unwrap().equivalent;
            prop_assert_eq!(pq, check(&q, &p, v).unwrap().equivalent);
            if pq && check(&q, &r, v).unwrap().equivalent {
                prop_assert!(check(&p, &r, v).unwrap().equivalent);
            }
        }
    }

    #[test]
    fn forward_reverse_is_finest(p in reachable(), q in reachable()) {
        if check(&p, &q, Variant::FRB).unwrap().equivalent {
            prop_assert!(check(&p, &q, Variant::FBps).unwrap().equivalent);
            prop_assert!(check(&p, &q, Variant::RB).unwrap().equivalent);
        }
        if check(&p, &q, Variant::FBps).unwrap().equivalent {
            prop_assert!(check(&p, &q, Variant::FB).unwrap().equivalent);
        }
    }

    #[test]
    fn sequential_initial_frb_is_fbps(p in sequential(), q in sequential()) {
        prop_assert_eq!(
            check(&p, &q, Variant::FRB).unwrap().equivalent,
            check(&p, &q, Variant::FBps).unwrap().equivalent
        );
    }

    #[test]
    fn witnesses_satisfy_transfer_clauses(p in reachable(), q in reachable()) {
        for v in Variant::ALL {
            let verdict = check(&p, &q, v).unwrap();
            if let Some(blocks) = verdict.witness {
                prop_assert!(witness_violations(&blocks, v).unwrap().is_empty());
            }
        }
        let lts = build_lts(&to_initial(&p)).unwrap();
        for v in Variant::ALL {
            prop_assert!(transfer_violations(&lts, &largest_bisimulation(&lts, v), v).is_empty());
        }
    }

    #[test]
    fn fnf_is_sound(p in reachable()) {
        let n = normalize_f(&p).unwrap();
        prop_assert!(is_fnf(&n));
        prop_assert!(check(&p, &n, Variant::FBps).unwrap().equivalent);
        let c = canonical_f(&n).unwrap();
        prop_assert_eq!(canonical_f(&c).unwrap(), c);
    }

    #[test]
    fn expansion_law_is_sound(p in initial(), q in initial(), l in sync()) {
        let (n1, n2) = (normalize_f(&p).unwrap(), normalize_f(&q).unwrap());
        let e = expansion_law_f(&n1, &n2, &l).unwrap();
        prop_assert!(check(&Process::par(l, n1, n2), &e, Variant::FBps).unwrap().equivalent);
    }

    #[test]
    fn rnf_keeps_the_backward_chain(p in reachable()) {
        let u = enc(&p);
        let n = normalize_r(&u);
        prop_assert!(is_rnf(&n));
        prop_assert_eq!(backward_chain(&n), backward_chain(&u));
        let c = canonical_brs(&n, NormalFormTag::Rnf).unwrap();
        prop_assert_eq!(canonical_brs(&c, NormalFormTag::Rnf).unwrap(), c);
        prop_assert!(check_brs(&u, &n, Variant::RB).unwrap().equivalent);
    }

    #[test]
    fn proofs_are_reflexive(p in reachable()) {
        for t in Theory::ALL {
            prop_assert!(prove_eq(&p, &p, t).unwrap());
        }
    }

    #[test]
    fn walks_stay_reachable(p in reachable()) {
        prop_assert!(is_reachable(&p) && is_wellformed(&p));
    }
}
