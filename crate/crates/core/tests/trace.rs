mod common;

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use rand::Rng;
use smtl_core::random::{random_timed_trace, ATOMS};
use smtl_core::time::ratio;
use smtl_core::trace::{
    apply_abstraction, build_stratified, check_consistency, load_trace, trace_to_json, AbstractionOp, Hierarchy,
    TimedTrace,
};

use common::rng;

fn random_op(r: &mut impl Rng) -> AbstractionOp {
    match r.gen_range(0..4) {
        0 => AbstractionOp::Identity,
        1 => AbstractionOp::Project {
            keep: ATOMS.iter().filter(|_| r.gen_bool(0.6)).map(|a| a.to_string()).chain(["p".into()]).collect(),
        },
        2 => AbstractionOp::SmoothIsolated { radius: ratio(r.gen_range(1..=8), 4) },
        _ => AbstractionOp::Downsample { period: ratio(r.gen_range(1..=8), 4), hold: r.gen_bool(0.5) },
    }
}

fn subset_pointwise(small: &TimedTrace, big: &TimedTrace) -> bool {
    small.states().iter().zip(big.states()).all(|(a, b)| a.is_subset(b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn identity_is_exact(seed in any::<u64>(), len in 1usize..40) {
        let t = random_timed_trace(&mut rng(seed), len);
        prop_assert_eq!(apply_abstraction(&AbstractionOp::Identity, &t), t);
    }

    #[test]
    fn project_is_idempotent_and_shrinking(seed in any::<u64>(), len in 1usize..40, mask in 1u8..8) {
        let t = random_timed_trace(&mut rng(seed), len);
        let keep: BTreeSet<String> =
            ATOMS.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, a)| a.to_string()).collect();
        let op = AbstractionOp::Project { keep };
        let once = apply_abstraction(&op, &t);
        prop_assert_eq!(apply_abstraction(&op, &once), once.clone());
        prop_assert!(subset_pointwise(&once, &t));
        prop_assert_eq!(once.timestamps(), t.timestamps());
    }

    #[test]
    fn smoothing_never_adds(seed in any::<u64>(), len in 1usize..40, quarters in 1i64..12) {
        let t = random_timed_trace(&mut rng(seed), len);
        let out = apply_abstraction(&AbstractionOp::SmoothIsolated { radius: ratio(quarters, 4) }, &t);
        prop_assert!(subset_pointwise(&out, &t));
    }

    #[test]
    fn downsample_is_constant_per_period(seed in any::<u64>(), len in 1usize..40, quarters in 1i64..12, hold: bool) {
        let t = random_timed_trace(&mut rng(seed), len);
        let period = ratio(quarters, 4);
        let out = apply_abstraction(&AbstractionOp::Downsample { period: period.clone(), hold }, &t);
        let mut by_period: BTreeMap<_, BTreeSet<_>> = BTreeMap::new();
        for (ts, s) in out.timestamps().iter().zip(out.states()) {
            by_period.entry((ts / &period).floor()).or_default().insert(s.clone());
        }
        prop_assert!(by_period.values().all(|states| states.len() == 1));
    }

    /// Building level `j` from level `i`'s output agrees with building it from
    /// the base trace.
    #[test]
    fn hierarchy_chain_composes(seed in any::<u64>(), len in 1usize..32, k in 2usize..=4) {
        let mut r = rng(seed);
        let base = random_timed_trace(&mut r, len);
        let ops: Vec<_> = (1..k).map(|_| random_op(&mut r)).collect();
        let resolutions = (1..=k as u32).map(|l| (l, ratio(l as i64, 16))).collect();
        let h = Hierarchy::new(ops.clone(), resolutions).unwrap();
        let full = build_stratified(&base, &h).unwrap();
        prop_assert!(full.validate().is_empty());
        prop_assert!(check_consistency(&full, &h).unwrap());
        for i in 1..k {
            for j in i + 1..=k {
                let mut t = full.level_trace(i as u32).unwrap();
                for op in &ops[i - 1..j - 1] {
                    t = apply_abstraction(op, &t);
                }
                prop_assert_eq!(t.states(), full.level(j as u32).unwrap());
            }
        }
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), len in 1usize..20) {
        let mut r = rng(seed);
        let base = random_timed_trace(&mut r, len);
        let h = Hierarchy::new(
            vec![random_op(&mut r), random_op(&mut r)],
            BTreeMap::from([(1, ratio(1, 16)), (2, ratio(1, 8)), (3, ratio(1, 5))]),
        )
        .unwrap();
        let t = build_stratified(&base, &h).unwrap();
        let (back, h_back) = load_trace(&trace_to_json(&t, Some(&h))).unwrap();
        prop_assert_eq!(back, t);
        prop_assert_eq!(h_back, Some(h));
    }
}

#[test]
fn one_level_with_empty_hierarchy() {
    let base = random_timed_trace(&mut rng(7), 12);
    let h = Hierarchy::new(vec![], BTreeMap::from([(1, ratio(1, 100))])).unwrap();
    let t = build_stratified(&base, &h).unwrap();
    assert_eq!(t.num_levels(), 1);
    assert_eq!(t.level_trace(1).unwrap(), base);
    assert!(check_consistency(&t, &h).unwrap());
}
