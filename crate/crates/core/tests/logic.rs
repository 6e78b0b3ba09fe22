mod common;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;
use smtl_core::formula::Formula;
use smtl_core::interval::Interval;
use smtl_core::lint::resolution_lint;
use smtl_core::time::{ratio, Rational};

use common::{formula, interval};

/// Compares `a/b` with `c/d` by cross-multiplying integers.
fn cmp_exact(t: &Rational, u: &Rational) -> std::cmp::Ordering {
    let lhs: BigInt = t.numer() * u.denom();
    let rhs: BigInt = u.numer() * t.denom();
    lhs.cmp(&rhs)
}

fn member_oracle(t: &Rational, i: &Interval) -> bool {
    use std::cmp::Ordering::*;
    let above = match cmp_exact(t, i.lower()) {
        Greater => true,
        Equal => i.lower_closed(),
        Less => false,
    };
    let below = match i.upper() {
        None => true,
        Some(u) => match cmp_exact(t, u) {
            Less => true,
            Equal => i.upper_closed(),
            Greater => false,
        },
    };
    above && below
}

fn point() -> impl Strategy<Value = Rational> {
    prop_oneof![
        (0i64..=30).prop_map(|n| ratio(n, 1)),
        (0i64..=200, 1i64..=12).prop_map(|(n, d)| ratio(n, d)),
        (0i64..=3000).prop_map(|n| ratio(n, 100)),
    ]
}

/// Raises every finite upper bound below `floor` to `floor`.
fn raise_uppers(f: &Formula, floor: &Rational) -> Formula {
    let fix = |i: &Interval| match i.upper() {
        Some(u) if u < floor => {
            Interval::new(i.lower().clone().min(floor.clone()), Some(floor.clone()), i.lower_closed(), true).unwrap()
        }
        _ => i.clone(),
    };
    let r = |g: &Formula| raise_uppers(g, floor);
    match f {
        Formula::Atom(_) | Formula::True | Formula::False => f.clone(),
        Formula::Not(g) => Formula::not(r(g)),
        Formula::And(a, b) => Formula::and(r(a), r(b)),
        Formula::Or(a, b) => Formula::or(r(a), r(b)),
        Formula::Implies(a, b) => Formula::implies(r(a), r(b)),
        Formula::Until(a, i, b) => Formula::until(r(a), fix(i), r(b)),
        Formula::Release(a, i, b) => Formula::release(r(a), fix(i), r(b)),
        Formula::Eventually(i, g) => Formula::eventually(fix(i), r(g)),
        Formula::Always(i, g) => Formula::always(fix(i), r(g)),
        Formula::Stratum(k, g) => Formula::stratum(*k, r(g)),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn interval_membership_matches_exact_comparison(t in point(), i in interval()) {
        prop_assert_eq!(i.contains(&t), member_oracle(&t, &i), "{} in {}", t, i);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn desugar_is_idempotent(f in formula(6, 3, true)) {
        let once = f.desugar();
        prop_assert!(once.is_core());
        prop_assert_eq!(once.desugar(), once);
    }

    #[test]
    fn well_formedness_survives_desugaring(f in formula(6, 3, true)) {
        prop_assert_eq!(f.is_well_formed(), f.desugar().is_well_formed());
    }

    #[test]
    fn lint_is_silent_when_bounds_cover_resolutions(f in formula(6, 3, true)) {
        let resolutions = BTreeMap::from([(1, ratio(1, 10)), (2, ratio(1, 2)), (3, ratio(2, 1))]);
        let f = raise_uppers(&f, &ratio(2, 1));
        let report = resolution_lint(&f, &resolutions, 1).unwrap();
        prop_assert!(report.warnings.is_empty(), "{:?}", report.warnings);
    }

    #[test]
    fn desugaring_preserves_levels_and_atoms(f in formula(6, 3, true)) {
        let d = f.desugar();
        prop_assert_eq!(d.levels(), f.levels());
        prop_assert_eq!(d.atoms(), f.atoms());
    }
}

#[test]
fn lint_flags_bound_below_level_resolution() {
    let f = smtl_core::parse("L2 F[0,0.1] p & L1 F[0,0.1] q").unwrap();
    let resolutions = BTreeMap::from([(1, ratio(1, 100)), (2, ratio(1, 2))]);
    let report = resolution_lint(&f, &resolutions, 1).unwrap();
    assert_eq!(report.warnings.len(), 1);
    assert_eq!(report.warnings[0].level, 2);
}
