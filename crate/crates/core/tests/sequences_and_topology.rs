//! Convergence, Cauchy and boundedness properties over the generated
//! corpus, limit extraction, and the sampled-set checks.

use ifnls_core::corpus::{generate_corpus, CorpusKind};
use ifnls_core::sequence_analysis::{
    check_bounded, check_cauchy, check_convergence_to, check_subsequence_inheritance, findim_limit_extraction,
    verify_limit_arithmetic, verify_limit_uniqueness, ConvergenceStatus, VectorSequence,
};
use ifnls_core::topology::{check_set_bounded, closure_membership, compactness_verdict, convergent_subsequence, SampledSet};
use ifnls_core::{CrispNorm, IfnSpace, Status, ToleranceConfig, Vector};
use proptest::prelude::*;

/// Long enough for the fuzzy tail at t = 0.01, r = 0.01, k = 2 to settle.
const LEN: usize = 40_000;

fn kind_strategy() -> impl Strategy<Value = CorpusKind> {
    prop::sample::select(CorpusKind::ALL.to_vec())
}

fn space(dim: usize, k: f64) -> IfnSpace {
    IfnSpace::standard_min_max(dim, CrispNorm::L2, k).unwrap()
}

fn cfg() -> ToleranceConfig {
    ToleranceConfig::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn corpus_is_deterministic(kind in kind_strategy(), seed in 0u64..1000, dim in 1usize..4) {
        let a = generate_corpus(kind, 50, dim, seed).unwrap();
        let b = generate_corpus(kind, 50, dim, seed).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.convergent(), kind.canonical_limit().is_some());
    }

    #[test]
    fn csv_round_trip(kind in kind_strategy(), seed in 0u64..1000, dim in 1usize..4) {
        let e = generate_corpus(kind, 30, dim, seed).unwrap();
        let back = VectorSequence::parse_csv(&e.sequence.to_csv()).unwrap();
        prop_assert_eq!(back, e.sequence);
    }

    #[test]
    fn convergent_implies_cauchy_implies_bounded(kind in kind_strategy(), seed in 0u64..50, k in prop::sample::select(vec![0.5, 1.0, 2.0])) {
        let e = generate_corpus(kind, LEN, 1, seed).unwrap();
        let s = space(1, k);
        let conv = check_convergence_to(&s, &e.sequence, e.reference_target(), &cfg()).unwrap();
        let cauchy = check_cauchy(&s, &e.sequence, 3, &cfg()).unwrap();
        if e.convergent() {
            prop_assert_eq!(conv.status, ConvergenceStatus::Converges);
        }
        if conv.status == ConvergenceStatus::Converges {
            prop_assert_eq!(cauchy.status, ConvergenceStatus::Converges);
        }
        if cauchy.status == ConvergenceStatus::Converges {
            prop_assert_eq!(check_bounded(&s, &e.sequence, &cfg()).unwrap().status, Status::Pass);
        } else {
            prop_assert_eq!(kind, CorpusKind::Alternating);
        }
    }

    #[test]
    fn divergence_witness_reproduces(seed in 0u64..50, k in 0.5f64..2.0) {
        let e = generate_corpus(CorpusKind::Alternating, 200, 1, seed).unwrap();
        let s = space(1, k);
        let target = e.reference_target().clone();
        let v = check_convergence_to(&s, &e.sequence, &target, &cfg()).unwrap().to_verdict("converges");
        prop_assert_eq!(v.status, Status::Fail);
        let w = v.checks[0].witness.as_ref().unwrap();
        let (t, r, n) = (w.get("t").unwrap(), w.get("r").unwrap(), w.get("n").unwrap() as usize);
        let x = e.sequence.term(n - 1)[0] - target.coords()[0];
        let norm = x.abs();
        let (nn, mm) = (t / (t + k * norm), k * norm / (t + k * norm));
        prop_assert!((nn - w.get("N").unwrap()).abs() < 1e-12);
        prop_assert!((mm - w.get("M").unwrap()).abs() < 1e-12);
        prop_assert!(nn <= 1.0 - r || mm >= r);
    }

    #[test]
    fn extraction_agrees_with_direct_convergence(seed in 0u64..50, kind in prop::sample::select(vec![CorpusKind::Geometric, CorpusKind::Constant])) {
        let e = generate_corpus(kind, 200, 2, seed).unwrap();
        let s = space(2, 1.0);
        let basis = [Vector::new(vec![2.0, 1.0]).unwrap(), Vector::new(vec![-1.0, 3.0]).unwrap()];
        let (limit, v) = findim_limit_extraction(&s, &e.sequence, &basis, &cfg()).unwrap();
        prop_assert!(v.is_pass());
        let known = e.known_limit.unwrap();
        for (a, b) in limit.coords().iter().zip(known.coords()) {
            prop_assert!((a - b).abs() <= 1e-6);
        }
        let direct = check_convergence_to(&s, &e.sequence, &known, &cfg()).unwrap();
        prop_assert_eq!(direct.status, ConvergenceStatus::Converges);
    }

    #[test]
    fn limit_arithmetic_over_corpus_pairs(s1 in 0u64..50, s2 in 0u64..50, c in -3.0f64..3.0) {
        let a = generate_corpus(CorpusKind::Geometric, 200, 1, s1).unwrap();
        let b = generate_corpus(CorpusKind::Constant, 200, 1, s2).unwrap();
        let s = space(1, 1.0);
        let v = verify_limit_arithmetic(&s, &a.sequence, a.known_limit.as_ref().unwrap(), &b.sequence, b.known_limit.as_ref().unwrap(), c, &cfg()).unwrap();
        prop_assert!(v.is_pass(), "{}", v);
    }

    #[test]
    fn two_limits_must_coincide(seed in 0u64..50, shift in 0.01f64..5.0) {
        let e = generate_corpus(CorpusKind::Geometric, 200, 1, seed).unwrap();
        let s = space(1, 1.0);
        let x = e.known_limit.clone().unwrap();
        prop_assert!(verify_limit_uniqueness(&s, &e.sequence, &x, &x, &cfg()).unwrap().is_pass());
        let y = Vector::scalar(x.coords()[0] + shift).unwrap();
        prop_assert!(verify_limit_uniqueness(&s, &e.sequence, &x, &y, &cfg()).unwrap().is_pass());
        prop_assert_ne!(check_convergence_to(&s, &e.sequence, &y, &cfg()).unwrap().status, ConvergenceStatus::Converges);
    }

    #[test]
    fn subsequences_inherit_the_limit(seed in 0u64..50, step in 1usize..7) {
        let e = generate_corpus(CorpusKind::Geometric, 400, 1, seed).unwrap();
        let idx: Vec<usize> = (1..=400).step_by(step).collect();
        let v = check_subsequence_inheritance(&space(1, 1.0), &e.sequence, &idx, e.known_limit.as_ref().unwrap(), &cfg()).unwrap();
        prop_assert!(v.is_pass(), "{}", v);
    }

    #[test]
    fn pigeonhole_subsequence_is_constant(draws in prop::collection::vec(0usize..6, 1..200)) {
        let (point, positions) = convergent_subsequence(&draws).unwrap();
        prop_assert!(positions.iter().all(|&p| draws[p - 1] == point));
        prop_assert!(positions.windows(2).all(|w| w[0] < w[1]));
        let distinct = draws.iter().collect::<std::collections::BTreeSet<_>>().len();
        prop_assert!(positions.len() * distinct >= draws.len());
    }

    #[test]
    fn subsets_of_bounded_sets_are_bounded(points in prop::collection::vec(prop::collection::vec(-50.0f64..50.0, 2), 2..40), keep in 1usize..40) {
        let s = space(2, 1.0);
        let all: Vec<Vector> = points.iter().map(|p| Vector::new(p.clone()).unwrap()).collect();
        let full = SampledSet::new("sample", true, all.clone()).unwrap();
        prop_assert!(check_set_bounded(&s, &full, &cfg()).unwrap().is_pass());
        let sub = SampledSet::new("subset", true, all.into_iter().take(keep).collect()).unwrap();
        prop_assert!(check_set_bounded(&s, &sub, &cfg()).unwrap().is_pass());
    }
}

#[test]
fn far_points_defeat_the_bound_cap() {
    let s = space(1, 1.0);
    let set = SampledSet::new("trend", true, (0..=14).map(|j| Vector::scalar(10f64.powi(j)).unwrap()).collect()).unwrap();
    let v = check_set_bounded(&s, &set, &cfg()).unwrap();
    assert_eq!(v.status, Status::Fail);
    let w = v.checks[0].witness.as_ref().unwrap();
    let (x, t, r) = (w.get_vector("x").unwrap()[0], w.get("t").unwrap(), w.get("r").unwrap());
    let (n, m) = (t / (t + x.abs()), x.abs() / (t + x.abs()));
    assert!(!(n > 1.0 - r && m < r));
}

#[test]
fn zero_is_in_the_closure_of_reciprocals() {
    let s = space(1, 1.0);
    let set = SampledSet::new("1/n", false, (1..=1000).map(|n| Vector::scalar(1.0 / n as f64).unwrap()).collect()).unwrap();
    assert!(closure_membership(&s, &set, &Vector::scalar(0.0).unwrap(), &cfg()).unwrap().is_pass());
    assert_eq!(closure_membership(&s, &set, &Vector::scalar(-0.5).unwrap(), &cfg()).unwrap().status, Status::Fail);
    // Declared open, so not compact even though bounded.
    let c = compactness_verdict(&s, &set, &cfg()).unwrap();
    assert_eq!(c.check("closed").map(|c| c.status), Some(Status::Fail));
    assert_eq!(c.check("bounded").map(|c| c.status), Some(Status::Pass));
}

#[test]
fn ragged_and_malformed_csv_is_rejected() {
    assert!(VectorSequence::parse_csv("x1,x2\n1,2\n3\n").is_err());
    assert!(VectorSequence::parse_csv("x1\n1\nabc\n2\n").is_err());
}
