#![allow(dead_code)]

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use smtl_core::formula::{Formula, Level};
use smtl_core::interval::Interval;
use smtl_core::time::{ratio, Rational};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn quarter() -> impl Strategy<Value = Rational> {
    (0i64..=16).prop_map(|q| ratio(q, 4))
}

pub fn bound() -> impl Strategy<Value = Rational> {
    prop_oneof![
        (0i64..=20).prop_map(|n| ratio(n, 1)),
        (0i64..=40, 1i64..=7).prop_map(|(n, d)| ratio(n, d)),
        (0i64..=400).prop_map(|n| ratio(n, 100)),
    ]
}

pub fn interval() -> impl Strategy<Value = Interval> {
    (bound(), proptest::option::weighted(0.8, bound()), any::<bool>(), any::<bool>()).prop_filter_map(
        "empty interval",
        |(lo, width, lc, uc)| match width {
            Some(w) => {
                let hi = &lo + w;
                Interval::new(lo, Some(hi), lc, uc).ok()
            }
            None => Interval::new(lo, None, lc, false).ok(),
        },
    )
}

fn ident() -> impl Strategy<Value = String> {
    prop_oneof![
        Just("p".to_string()),
        Just("q".to_string()),
        Just("r".to_string()),
        "[a-z_][a-z0-9_]{0,6}".prop_filter("reserved", |s| !smtl_core::parser::is_reserved(s)),
    ]
}

fn leaf(derived: bool) -> BoxedStrategy<Formula> {
    if derived {
        prop_oneof![
            6 => ident().prop_map(Formula::Atom),
            1 => Just(Formula::True),
            1 => Just(Formula::False),
        ]
        .boxed()
    } else {
        prop_oneof![6 => ident().prop_map(Formula::Atom), 1 => Just(Formula::True)].boxed()
    }
}

/// Arbitrary formulas up to `depth`, strata at levels `1..=max_level`
/// (none when 0), derived operators when `derived`.
pub fn formula(depth: u32, max_level: Level, derived: bool) -> BoxedStrategy<Formula> {
    leaf(derived)
        .prop_recursive(depth, 96, 2, move |inner| {
            let mut arms: Vec<(u32, BoxedStrategy<Formula>)> = vec![
                (2, inner.clone().prop_map(Formula::not).boxed()),
                (2, (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)).boxed()),
                (
                    3,
                    (inner.clone(), interval(), inner.clone())
                        .prop_map(|(a, i, b)| Formula::until(a, i, b))
                        .boxed(),
                ),
            ];
            if max_level > 0 {
                arms.push((2, (1..=max_level, inner.clone()).prop_map(|(k, f)| Formula::stratum(k, f)).boxed()));
            }
            if derived {
                arms.push((1, (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)).boxed()));
                arms.push((1, (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)).boxed()));
                arms.push((
                    1,
                    (inner.clone(), interval(), inner.clone())
                        .prop_map(|(a, i, b)| Formula::release(a, i, b))
                        .boxed(),
                ));
                arms.push((1, (interval(), inner.clone()).prop_map(|(i, f)| Formula::eventually(i, f)).boxed()));
                arms.push((1, (interval(), inner.clone()).prop_map(|(i, f)| Formula::always(i, f)).boxed()));
            }
            proptest::strategy::Union::new_weighted(arms)
        })
        .boxed()
}

pub const NAVIGATION: &str = "L1 G[0,0.01] accel_tracking \
    & L2 G[0,1] (speed_above_min -> F[0,0.5] lane_centered) \
    & L3 G[0,60] (destination_reached -> G[0,5] safely_parked)";

pub const LAYER_DEPENDENCIES: &str =
    "L2 G[0,inf) (plan_update -> L1 F[0,2] (exec_acknowledge & F[0,1] functional_update))";

pub const SEPARATING: &str = "L1 G[0,1] p & L2 F[0,2] !p";
