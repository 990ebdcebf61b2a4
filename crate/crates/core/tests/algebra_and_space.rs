//! Properties of the t-norm library, the standard fuzzy norm and the
//! bisected alpha-norms, checked against closed forms.

use ifnls_core::alpha_norms::{alpha_norm, closed_form_standard, AlphaLevel, NormFamily};
use ifnls_core::fuzzy_algebra::{
    check_algebra_axioms, check_duality, FnTNorm, TriangularConorm, TriangularNorm,
};
use ifnls_core::ifn_space::{verify_ifn_axioms, FnIfn};
use ifnls_core::{CrispNorm, DegreePair, IfnSpace, Status, TConorm, TNorm, ToleranceConfig, Vector};
use proptest::prelude::*;
use std::sync::Arc;

const TNORMS: [TNorm; 3] = [TNorm::Min, TNorm::Product, TNorm::Lukasiewicz];
const TCONORMS: [TConorm; 3] = [TConorm::Max, TConorm::ProbSum, TConorm::BoundedSum];

fn crisp_strategy() -> impl Strategy<Value = CrispNorm> {
    prop_oneof![Just(CrispNorm::L1), Just(CrispNorm::L2), Just(CrispNorm::Linf)]
}

fn vector_strategy(dim: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-100.0f64..100.0, dim)
}

fn norm_oracle(crisp: CrispNorm, x: &[f64]) -> f64 {
    match crisp {
        CrispNorm::L1 => x.iter().map(|c| c.abs()).sum(),
        CrispNorm::L2 => x.iter().map(|c| c * c).sum::<f64>().sqrt(),
        CrispNorm::Linf => x.iter().fold(0.0, |m, c| m.max(c.abs())),
    }
}

proptest! {
    #[test]
    fn tnorms_commute_and_have_identity_one(a in 0.0f64..=1.0, b in 0.0f64..=1.0, i in 0usize..3) {
        let t = TNORMS[i];
        prop_assert_eq!(t.tnorm(a, b), t.tnorm(b, a));
        prop_assert!((t.tnorm(a, 1.0) - a).abs() <= 1e-15);
        prop_assert!(t.tnorm(a, b) <= a.min(b) + 1e-15);
    }

    #[test]
    fn tnorms_associate_and_are_monotone(a in 0.0f64..=1.0, b in 0.0f64..=1.0, c in 0.0f64..=1.0, d in 0.0f64..=1.0, i in 0usize..3) {
        let t = TNORMS[i];
        prop_assert!((t.tnorm(t.tnorm(a, b), c) - t.tnorm(a, t.tnorm(b, c))).abs() <= 1e-12);
        let (lo, hi) = if c <= d { (c, d) } else { (d, c) };
        prop_assert!(t.tnorm(a, lo) <= t.tnorm(a, hi) + 1e-15);
    }

    #[test]
    fn tconorms_commute_and_have_identity_zero(a in 0.0f64..=1.0, b in 0.0f64..=1.0, c in 0.0f64..=1.0, i in 0usize..3) {
        let s = TCONORMS[i];
        prop_assert_eq!(s.tconorm(a, b), s.tconorm(b, a));
        prop_assert!((s.tconorm(a, 0.0) - a).abs() <= 1e-15);
        prop_assert!(s.tconorm(a, b) >= a.max(b) - 1e-15);
        prop_assert!((s.tconorm(s.tconorm(a, b), c) - s.tconorm(a, s.tconorm(b, c))).abs() <= 1e-12);
    }

    #[test]
    fn standard_degrees_sum_to_one(x in vector_strategy(3), t in 1e-6f64..1e6, k in 0.01f64..100.0, crisp in crisp_strategy()) {
        let space = IfnSpace::standard_min_max(3, crisp, k).unwrap();
        let d = space.evaluate(&Vector::new(x.clone()).unwrap(), t).unwrap();
        prop_assert_eq!(d.n + d.m, 1.0);
        let norm = norm_oracle(crisp, &x);
        prop_assert!((d.n - t / (t + k * norm)).abs() <= 1e-12);
        prop_assert!((d.m - k * norm / (t + k * norm)).abs() <= 1e-12);
    }

    #[test]
    fn membership_degree_grows_with_t(x in vector_strategy(2), t in 1e-3f64..1e3, f in 1.0f64..10.0, crisp in crisp_strategy()) {
        let space = IfnSpace::standard_min_max(2, crisp, 1.0).unwrap();
        let lo = space.degrees(&x, t);
        let hi = space.degrees(&x, t * f);
        prop_assert!(hi.n >= lo.n);
        prop_assert!(hi.m <= lo.m);
    }

    #[test]
    fn bisection_matches_closed_form(x in vector_strategy(2), a in 0.01f64..0.99, k in 0.1f64..10.0, crisp in crisp_strategy()) {
        let config = ToleranceConfig::default();
        let space = IfnSpace::standard_min_max(2, crisp, k).unwrap();
        let level = AlphaLevel::new(a).unwrap();
        let norm = norm_oracle(crisp, &x);
        let xv = Vector::new(x).unwrap();
        let mem = alpha_norm(&space, &xv, level, NormFamily::Membership, &config).unwrap();
        let non = alpha_norm(&space, &xv, level, NormFamily::NonMembership, &config).unwrap();
        prop_assert!((mem.value - a * k * norm / (1.0 - a)).abs() <= 1e-7);
        prop_assert!((non.value - k * norm * (1.0 - a) / a).abs() <= 1e-7);
        prop_assert!((closed_form_standard(norm, k, level, NormFamily::Membership) - a * k * norm / (1.0 - a)).abs() <= 1e-9 * (1.0 + norm));
    }

    #[test]
    fn bisection_bracket_straddles_the_level(x in vector_strategy(2), a in 0.01f64..0.99) {
        let config = ToleranceConfig::default();
        let space = IfnSpace::standard_min_max(2, CrispNorm::L2, 1.0).unwrap();
        prop_assume!(x.iter().any(|c| *c != 0.0));
        let r = alpha_norm(&space, &Vector::new(x.clone()).unwrap(), AlphaLevel::new(a).unwrap(), NormFamily::Membership, &config).unwrap();
        let (lo, hi) = r.bracket;
        prop_assert_eq!(r.value, hi);
        prop_assert!(lo < hi && hi - lo <= config.eps_bisect.max(hi * 1e-15));
        prop_assert!(space.degrees(&x, hi).n >= a);
        prop_assert!(lo == 0.0 || space.degrees(&x, lo).n < a);
    }

    #[test]
    fn membership_alpha_norm_is_a_norm(x in vector_strategy(2), y in vector_strategy(2), c in -10.0f64..10.0, a in 0.05f64..0.95) {
        let config = ToleranceConfig::default();
        let space = IfnSpace::standard_min_max(2, CrispNorm::L1, 1.0).unwrap();
        let level = AlphaLevel::new(a).unwrap();
        let n = |v: Vec<f64>| alpha_norm(&space, &Vector::new(v).unwrap(), level, NormFamily::Membership, &config).unwrap().value;
        let nx = n(x.clone());
        let ny = n(y.clone());
        let ncx = n(x.iter().map(|v| c * v).collect());
        let nsum = n(x.iter().zip(&y).map(|(a, b)| a + b).collect());
        let slack = 4.0 * (1.0 + c.abs()) * config.eps_bisect + 1e-9 * (nx + ny) * (1.0 + c.abs());
        prop_assert!((ncx - c.abs() * nx).abs() <= slack);
        prop_assert!(nsum <= nx + ny + slack);
    }

    #[test]
    fn standard_spaces_satisfy_all_conditions(seed in any::<u64>(), k in 0.1f64..10.0, dim in 1usize..4, crisp in crisp_strategy()) {
        let space = IfnSpace::standard_min_max(dim, crisp, k).unwrap();
        let v = verify_ifn_axioms(&space, 200, seed, &ToleranceConfig::default());
        prop_assert!(v.is_pass(), "{}", v);
        prop_assert_eq!(v.checks.len(), 11);
    }
}

#[test]
fn builtin_operators_pass_the_sampled_axioms() {
    for i in 0..3 {
        let v = check_algebra_axioms(&TNORMS[i], &TCONORMS[i], 2000, 11, 1e-12);
        assert!(v.is_pass(), "{v}");
        assert_eq!(check_duality(&TNORMS[i], &TCONORMS[i]).status, Status::Pass);
    }
}

#[test]
fn an_averaging_operator_is_rejected_with_a_reproducible_witness() {
    let avg = |a: f64, b: f64| 0.5 * (a + b);
    let v = check_algebra_axioms(&FnTNorm(avg), &TConorm::Max, 2000, 5, 1e-12);
    let identity = v.check("tnorm identity").expect("identity is checked");
    assert_eq!(identity.status, Status::Fail);
    let a = identity.witness.as_ref().and_then(|w| w.get("a")).expect("witness names a");
    assert!((avg(a, 1.0) - a).abs() > 1e-12);
    assert_eq!(v.check("tnorm commutativity").map(|c| c.status), Some(Status::Pass));
}

#[test]
fn dual_mismatch_detected() {
    let c = check_duality(&TNorm::Min, &TConorm::ProbSum);
    assert_eq!(c.status, Status::Fail);
    let w = c.witness.unwrap();
    let (a, b) = (w.get("a").unwrap(), w.get("b").unwrap());
    assert_ne!(TConorm::ProbSum.tconorm(a, b), 1.0 - TNorm::Min.tnorm(1.0 - a, 1.0 - b));
}

#[test]
fn a_non_homogeneous_membership_fails_with_witness() {
    // N depends on ||x||^2, which breaks N(cx, t) = N(x, t/|c|).
    let f = FnIfn::new("squared", |x: &[f64], t: f64| {
        let s: f64 = x.iter().map(|c| c * c).sum();
        let m = s / (t + s);
        DegreePair { n: 1.0 - m, m }
    });
    let space = IfnSpace::with_evaluator(2, Arc::new(f), TNorm::Min, TConorm::Max).unwrap();
    let v = verify_ifn_axioms(&space, 500, 1, &ToleranceConfig::default());
    assert_eq!(v.status, Status::Fail);
    let failing: Vec<_> = v.failures().collect();
    assert!(failing.iter().all(|c| c.witness.is_some()));
    assert!(failing.iter().any(|c| c.name == "(iv)"), "{v}");
}
