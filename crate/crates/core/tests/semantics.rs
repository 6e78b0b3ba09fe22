mod common;

use proptest::prelude::*;
use rand::Rng;
use smtl_core::formula::Formula;
use smtl_core::random::{extend_randomly, random_formula, random_stratified_trace, random_timed_trace, FormulaShape};
use smtl_core::time::ratio;
use smtl_core::trace::StratifiedTrace;
use smtl_core::{evaluate, evaluate_mtl, oracle_evaluate, parse, translate_mtl, SemanticsMode, Verdict};

use common::{rng, LAYER_DEPENDENCIES};

const MODES: [SemanticsMode; 2] = [SemanticsMode::Strict, SemanticsMode::Scoped];

fn shape(max_level: u32, well_formed: bool) -> FormulaShape {
    FormulaShape { max_depth: 6, max_level, well_formed, derived: true }
}

fn instance(seed: u64, well_formed: bool) -> (Formula, StratifiedTrace, usize, u32) {
    let mut r = rng(seed);
    let levels = r.gen_range(1..=3);
    let f = random_formula(&mut r, shape(levels, well_formed));
    let len = r.gen_range(1..=32);
    let t = random_stratified_trace(&mut r, len, levels);
    let position = r.gen_range(0..t.len());
    let level = r.gen_range(1..=levels);
    (f, t, position, level)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn table_matches_oracle(seed in any::<u64>()) {
        let (f, t, position, level) = instance(seed, false);
        for mode in MODES {
            prop_assert_eq!(
                evaluate(&f, &t, position, level, mode).unwrap(),
                oracle_evaluate(&f, &t, position, level, mode).unwrap(),
                "{} at {} level {} {}", f, position, level, mode
            );
        }
    }

    #[test]
    fn mtl_is_embedded(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_formula(&mut r, shape(0, true));
        let len = r.gen_range(1..=32);
        let base = random_timed_trace(&mut r, len);
        let lifted = StratifiedTrace::lift(&base, ratio(1, 16)).unwrap();
        let position = r.gen_range(0..base.len());
        let g = translate_mtl(&f).unwrap();
        for mode in MODES {
            prop_assert_eq!(evaluate(&g, &lifted, position, 1, mode).unwrap(), evaluate_mtl(&f, &base, position).unwrap());
        }
    }

    #[test]
    fn stratification_is_sound(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_formula(&mut r, shape(3, true));
        let len = r.gen_range(1..=32);
        let t = random_stratified_trace(&mut r, len, 3);
        let n = r.gen_range(0..t.len());
        let i = r.gen_range(1..=2);
        let j = r.gen_range(i + 1..=3);
        if evaluate(&Formula::stratum(j, f.clone()), &t, n, i, SemanticsMode::Strict).unwrap() == Verdict::True {
            prop_assert_eq!(evaluate(&f, &t, n, j, SemanticsMode::Strict).unwrap(), Verdict::True);
        }
    }

    #[test]
    fn strict_gate_rejects_lower_strata(seed in any::<u64>()) {
        let mut r = rng(seed);
        let f = random_formula(&mut r, shape(3, false));
        let len = r.gen_range(1..=32);
        let t = random_stratified_trace(&mut r, len, 3);
        let n = r.gen_range(0..t.len());
        let m = r.gen_range(2..=3);
        let k = r.gen_range(1..m);
        prop_assert_eq!(evaluate(&Formula::stratum(k, f), &t, n, m, SemanticsMode::Strict).unwrap(), Verdict::False);
    }

    #[test]
    fn always_is_dual_to_eventually(seed in any::<u64>()) {
        let (f, t, position, level) = instance(seed, false);
        let interval = smtl_core::random::random_interval(&mut rng(seed ^ 0x5eed));
        let always = Formula::always(interval.clone(), f.clone());
        let dual = Formula::not(Formula::eventually(interval, Formula::not(f)));
        for mode in MODES {
            prop_assert_eq!(
                evaluate(&always, &t, position, level, mode).unwrap(),
                evaluate(&dual, &t, position, level, mode).unwrap()
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1_000))]

    #[test]
    fn extending_only_resolves_unknowns(seed in any::<u64>()) {
        let (f, t, position, level) = instance(seed, false);
        let mut r = rng(!seed);
        let extra = r.gen_range(1..=16);
        let longer = extend_randomly(&mut r, &t, extra);
        for mode in MODES {
            let before = evaluate(&f, &t, position, level, mode).unwrap();
            let after = evaluate(&f, &longer, position, level, mode).unwrap();
            if before.is_definite() {
                prop_assert_eq!(before, after, "{}", f);
            }
        }
    }
}

#[test]
fn layer_dependencies_are_vacuous_only_in_strict_mode() {
    let f = parse(LAYER_DEPENDENCIES).unwrap();
    let mut r = rng(3);
    let t = random_stratified_trace(&mut r, 8, 2);
    let mut plan_at_zero = t.levels().clone();
    for level in plan_at_zero.values_mut() {
        for (i, s) in level.iter_mut().enumerate() {
            s.clear();
            if i == 0 {
                s.insert("plan_update".into());
            }
        }
    }
    let t = StratifiedTrace::new(t.timestamps().to_vec(), plan_at_zero, t.resolutions().clone()).unwrap();
    assert_eq!(evaluate(&f, &t, 0, 1, SemanticsMode::Strict).unwrap(), Verdict::False);
    assert_ne!(evaluate(&f, &t, 0, 1, SemanticsMode::Scoped).unwrap(), Verdict::True);
    let quiet = random_stratified_trace(&mut r, 8, 2);
    let empty: std::collections::BTreeMap<_, _> =
        quiet.levels().iter().map(|(&k, v)| (k, vec![Default::default(); v.len()])).collect();
    let quiet = StratifiedTrace::new(quiet.timestamps().to_vec(), empty, quiet.resolutions().clone()).unwrap();
    assert_eq!(evaluate(&f, &quiet, 0, 2, SemanticsMode::Strict).unwrap(), Verdict::Unknown);
}
