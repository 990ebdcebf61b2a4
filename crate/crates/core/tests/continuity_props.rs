//! Continuity notions of the builtin maps at sampled base points.

use ifnls_core::continuity::{
    check_ifc_default, check_sequential_default, check_strong_default, verify_thm32_implication,
    verify_thm34_equivalence, BuiltinMap, ContinuityGrids, SampledMap,
};
use ifnls_core::{CrispNorm, IfnSpace, Status, ToleranceConfig, Vector};
use proptest::prelude::*;

fn line() -> IfnSpace {
    IfnSpace::standard_min_max(1, CrispNorm::L1, 1.0).unwrap()
}

fn map(m: BuiltinMap) -> SampledMap {
    SampledMap::builtin(m, line(), line()).unwrap()
}

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

fn map_strategy() -> impl Strategy<Value = BuiltinMap> {
    prop::sample::select(BuiltinMap::CORPUS.to_vec())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn strong_never_holds_where_sequential_fails(m in map_strategy(), x0 in -3.0f64..3.0, seed in 0u64..100) {
        let g = ContinuityGrids { seed, probe_points: 128, ..ContinuityGrids::default() };
        let points = [Vector::scalar(x0).unwrap()];
        let v = verify_thm32_implication(&map(m), &points, &g, &cfg()).unwrap();
        prop_assert!(v.is_pass(), "{}", v);
    }

    #[test]
    fn ifc_and_sequential_agree_away_from_the_jump(m in map_strategy(), x0 in 0.05f64..3.0, seed in 0u64..100) {
        let g = ContinuityGrids { seed, probe_points: 128, ..ContinuityGrids::default() };
        let v = verify_thm34_equivalence(&map(m), &[Vector::scalar(x0).unwrap()], &g, &cfg()).unwrap();
        prop_assert!(v.is_pass(), "{}", v);
        let f = map(m);
        let x = Vector::scalar(x0).unwrap();
        prop_assert_eq!(check_sequential_default(&f, &x, &cfg()).unwrap().status(), Status::Pass);
    }

    #[test]
    fn strong_failures_reproduce(x0 in 1.5f64..4.0, seed in 0u64..100) {
        let g = ContinuityGrids { seed, ..ContinuityGrids::default() };
        let cv = check_strong_default(&map(BuiltinMap::Example33), &Vector::scalar(x0).unwrap(), &g).unwrap();
        prop_assert_eq!(cv.status(), Status::Fail);
        let w = cv.witness().unwrap();
        let x = w.get_vector("x").unwrap()[0];
        let (eps, delta) = (w.get("eps").unwrap(), w.get("delta").unwrap());
        let f = |v: f64| v.powi(4) / (1.0 + v * v);
        let du = (x - x0).abs();
        let dv = (f(x) - f(x0)).abs();
        let (nu, mu) = (delta / (delta + du), du / (delta + du));
        let (nv, mv) = (eps / (eps + dv), dv / (eps + dv));
        prop_assert!(nv < nu || mv >= mu);
    }
}

#[test]
fn step_is_discontinuous_only_at_zero() {
    let f = map(BuiltinMap::Step);
    let g = ContinuityGrids::default();
    let cfg = ToleranceConfig::default();
    let zero = Vector::scalar(0.0).unwrap();
    assert_eq!(check_ifc_default(&f, &zero, &g).unwrap().status(), Status::Fail);
    assert_eq!(check_sequential_default(&f, &zero, &cfg).unwrap().status(), Status::Fail);
    let one = Vector::scalar(1.0).unwrap();
    assert_eq!(check_ifc_default(&f, &one, &g).unwrap().status(), Status::Pass);
    assert_eq!(check_sequential_default(&f, &one, &cfg).unwrap().status(), Status::Pass);
}

#[test]
fn scaling_is_strongly_continuous() {
    let g = ContinuityGrids::default();
    for m in [BuiltinMap::Identity, BuiltinMap::Scale(2.0)] {
        let cv = check_strong_default(&map(m), &Vector::scalar(0.7).unwrap(), &g).unwrap();
        assert_eq!(cv.status(), Status::Pass, "{}", cv.verdict);
        for c in &cv.verdict.checks {
            let w = c.witness.as_ref().unwrap();
            assert!(w.get("delta").unwrap() < w.get("eps").unwrap());
        }
    }
}
