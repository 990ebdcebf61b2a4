//! Finite-dimensional real vectors, crisp norms, the standard fuzzy norm
//! `N = t / (t + k||x||)`, `M = k||x|| / (t + k||x||)`, and a sampled
//! verifier for the eleven defining conditions of an intuitionistic fuzzy
//! norm.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::ToleranceConfig;
use crate::deviation::Deviation;
use crate::fuzzy_algebra::{check_idempotency, DegreePair, TConorm, TNorm, TriangularConorm, TriangularNorm};
use crate::sampling;
use crate::verdict::{Check, Status, Verdict, Witness};

#[derive(Debug, Error, PartialEq)]
pub enum IfnError {
    #[error("t must be a positive finite real, got {0}")]
    Domain(f64),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("vector has no coordinates")]
    Empty,
    #[error("vector coordinate {index} is not finite")]
    NonFinite { index: usize },
    #[error("scale parameter k must be positive and finite, got {0}")]
    BadScale(f64),
    #[error("space dimension must be at least 1")]
    ZeroDimension,
    #[error("invalid space spec: {0}")]
    Spec(String),
}

/// A point of `R^d` with finite coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Vector(Vec<f64>);

impl Vector {
    pub fn new(coords: Vec<f64>) -> Result<Self, IfnError> {
        if coords.is_empty() {
            return Err(IfnError::Empty);
        }
        if let Some(index) = coords.iter().position(|c| !c.is_finite()) {
            return Err(IfnError::NonFinite { index });
        }
        Ok(Vector(coords))
    }

    /// Builds a vector from a slice already known to be finite and non-empty.
    pub(crate) fn from_slice_unchecked(coords: &[f64]) -> Self {
        Vector(coords.to_vec())
    }

    pub fn zeros(dim: usize) -> Self {
        Vector(vec![0.0; dim.max(1)])
    }

    pub fn scalar(value: f64) -> Result<Self, IfnError> {
        Vector::new(vec![value])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0.0)
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }

    pub fn parse_csv(text: &str) -> Result<Self, IfnError> {
        let coords = text
            .split(',')
            .map(|s| s.trim().parse::<f64>().map_err(|e| IfnError::Spec(format!("bad coordinate {s:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        Vector::new(coords)
    }
}

impl<'de> Deserialize<'de> for Vector {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Vector::new(Vec::<f64>::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

impl AsRef<[f64]> for Vector {
    fn as_ref(&self) -> &[f64] {
        &self.0
    }
}

impl Add for &Vector {
    type Output = Vector;
    fn add(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimensions differ");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Vector {
    type Output = Vector;
    fn sub(self, rhs: &Vector) -> Vector {
        assert_eq!(self.dim(), rhs.dim(), "vector dimensions differ");
        Vector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Mul<&Vector> for f64 {
    type Output = Vector;
    fn mul(self, rhs: &Vector) -> Vector {
        Vector(rhs.0.iter().map(|c| self * c).collect())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CrispNorm {
    L1,
    L2,
    Linf,
}

impl CrispNorm {
    pub fn norm(self, x: &[f64]) -> f64 {
        match self {
            CrispNorm::L1 => x.iter().map(|c| c.abs()).sum(),
            CrispNorm::L2 => x.iter().map(|c| c * c).sum::<f64>().sqrt(),
            CrispNorm::Linf => x.iter().fold(0.0, |m, c| m.max(c.abs())),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CrispNorm::L1 => "l1",
            CrispNorm::L2 => "l2",
            CrispNorm::Linf => "linf",
        }
    }
}

/// Anything that assigns degrees `(N(x,t), M(x,t))` to points of a space.
///
/// Only [`StandardIfn`] is serializable; other evaluators exist so the
/// verifiers can be pointed at non-examples.
pub trait IfnEvaluator: Send + Sync {
    fn degrees(&self, x: &[f64], t: f64) -> DegreePair;

    fn describe(&self) -> String;

    fn as_standard(&self) -> Option<&StandardIfn> {
        None
    }
}

/// `N(x,t) = t / (t + k||x||)`, `M(x,t) = k||x|| / (t + k||x||)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardIfn {
    crisp: CrispNorm,
    k: f64,
}

impl StandardIfn {
    pub fn new(crisp: CrispNorm, k: f64) -> Result<Self, IfnError> {
        if !(k.is_finite() && k > 0.0) {
            return Err(IfnError::BadScale(k));
        }
        Ok(StandardIfn { crisp, k })
    }

    pub fn crisp(&self) -> CrispNorm {
        self.crisp
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    /// Degrees from a precomputed crisp norm value.
    pub fn degrees_from_norm(&self, norm: f64, t: f64) -> DegreePair {
        let a = self.k * norm;
        if a == 0.0 {
            return DegreePair::CERTAIN;
        }
        let denom = t + a;
        // The larger degree is taken as 1 minus the smaller one, which keeps
        // n + m == 1 exactly in floating point.
        if t >= a {
            let m = a / denom;
            DegreePair { n: 1.0 - m, m }
        } else {
            let n = t / denom;
            DegreePair { n, m: 1.0 - n }
        }
    }
}

impl IfnEvaluator for StandardIfn {
    fn degrees(&self, x: &[f64], t: f64) -> DegreePair {
        self.degrees_from_norm(self.crisp.norm(x), t)
    }

    fn describe(&self) -> String {
        format!("standard(crisp={}, k={})", self.crisp.name(), self.k)
    }

    fn as_standard(&self) -> Option<&StandardIfn> {
        Some(self)
    }
}

/// A user-supplied evaluator.
pub struct FnIfn<F> {
    name: String,
    f: F,
}

impl<F> FnIfn<F>
where
    F: Fn(&[f64], f64) -> DegreePair + Send + Sync,
{
    pub fn new(name: impl Into<String>, f: F) -> Self {
        FnIfn { name: name.into(), f }
    }
}

impl<F> IfnEvaluator for FnIfn<F>
where
    F: Fn(&[f64], f64) -> DegreePair + Send + Sync,
{
    fn degrees(&self, x: &[f64], t: f64) -> DegreePair {
        (self.f)(x, t)
    }

    fn describe(&self) -> String {
        self.name.clone()
    }
}

/// The serialized form of a standard space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceSpec {
    pub dimension: usize,
    pub crisp_norm: CrispNorm,
    pub k: f64,
    pub tnorm: TNorm,
    pub tconorm: TConorm,
}

impl SpaceSpec {
    pub fn from_json(text: &str) -> Result<Self, IfnError> {
        serde_json::from_str(text).map_err(|e| IfnError::Spec(e.to_string()))
    }
}

/// A finite-dimensional space together with its fuzzy norm and the
/// t-norm / t-conorm pair.
#[derive(Clone)]
pub struct IfnSpace {
    dimension: usize,
    ifn: Arc<dyn IfnEvaluator>,
    tnorm: TNorm,
    tconorm: TConorm,
}

impl fmt::Debug for IfnSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IfnSpace")
            .field("dimension", &self.dimension)
            .field("ifn", &self.ifn.describe())
            .field("tnorm", &self.tnorm)
            .field("tconorm", &self.tconorm)
            .finish()
    }
}

impl IfnSpace {
    pub fn standard(
        dimension: usize,
        crisp: CrispNorm,
        k: f64,
        tnorm: TNorm,
        tconorm: TConorm,
    ) -> Result<Self, IfnError> {
        let ifn = StandardIfn::new(crisp, k)?;
        Self::with_evaluator(dimension, Arc::new(ifn), tnorm, tconorm)
    }

    /// The min/max standard space used throughout the worked examples.
    pub fn standard_min_max(dimension: usize, crisp: CrispNorm, k: f64) -> Result<Self, IfnError> {
        Self::standard(dimension, crisp, k, TNorm::Min, TConorm::Max)
    }

    pub fn with_evaluator(
        dimension: usize,
        ifn: Arc<dyn IfnEvaluator>,
        tnorm: TNorm,
        tconorm: TConorm,
    ) -> Result<Self, IfnError> {
        if dimension == 0 {
            return Err(IfnError::ZeroDimension);
        }
        Ok(IfnSpace { dimension, ifn, tnorm, tconorm })
    }

    pub fn from_spec(spec: &SpaceSpec) -> Result<Self, IfnError> {
        Self::standard(spec.dimension, spec.crisp_norm, spec.k, spec.tnorm, spec.tconorm)
    }

    pub fn to_spec(&self) -> Option<SpaceSpec> {
        self.standard_ifn().map(|s| SpaceSpec {
            dimension: self.dimension,
            crisp_norm: s.crisp(),
            k: s.k(),
            tnorm: self.tnorm,
            tconorm: self.tconorm,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn tnorm(&self) -> TNorm {
        self.tnorm
    }

    pub fn tconorm(&self) -> TConorm {
        self.tconorm
    }

    pub fn standard_ifn(&self) -> Option<&StandardIfn> {
        self.ifn.as_standard()
    }

    pub fn describe(&self) -> String {
        format!(
            "d={} {} tnorm={} tconorm={}",
            self.dimension,
            self.ifn.describe(),
            self.tnorm.name(),
            self.tconorm.name()
        )
    }

    pub fn check_dim(&self, x: &[f64]) -> Result<(), IfnError> {
        if x.len() != self.dimension {
            return Err(IfnError::DimensionMismatch { expected: self.dimension, found: x.len() });
        }
        Ok(())
    }

    /// Degrees of `x` at level `t > 0`.
    pub fn evaluate(&self, x: &Vector, t: f64) -> Result<DegreePair, IfnError> {
        if !(t.is_finite() && t > 0.0) {
            return Err(IfnError::Domain(t));
        }
        self.check_dim(x.coords())?;
        Ok(self.ifn.degrees(x.coords(), t))
    }

    /// Unchecked evaluation on a raw coordinate slice.
    pub fn degrees(&self, x: &[f64], t: f64) -> DegreePair {
        self.ifn.degrees(x, t)
    }

    /// Crisp norm of `x` when the space is built from one.
    pub fn crisp_norm(&self, x: &[f64]) -> Option<f64> {
        self.standard_ifn().map(|s| s.crisp().norm(x))
    }
}

struct SampledPoint {
    x: Vec<f64>,
    y: Vec<f64>,
    c: f64,
    s: f64,
    t: f64,
}

fn draw_points(dim: usize, samples: usize, seed: u64) -> Vec<SampledPoint> {
    let mut rng = sampling::rng(seed);
    (0..samples.max(1))
        .map(|_| SampledPoint {
            x: sampling::scaled_vector(&mut rng, dim, 1e-3, 10.0),
            y: sampling::scaled_vector(&mut rng, dim, 1e-3, 10.0),
            c: sampling::nonzero_scalar(&mut rng, 0.1, 10.0),
            s: sampling::log_uniform(&mut rng, 1e-3, 1e3),
            t: sampling::log_uniform(&mut rng, 1e-3, 1e3),
        })
        .collect()
}

/// Collects the first counterexample per condition.
struct FirstFailures {
    slots: Vec<(&'static str, &'static str, Option<Witness>)>,
}

impl FirstFailures {
    fn new(names: &[(&'static str, &'static str)]) -> Self {
        FirstFailures { slots: names.iter().map(|&(n, d)| (n, d, None)).collect() }
    }

    fn flag(&mut self, idx: usize, witness: impl FnOnce() -> Witness) {
        if self.slots[idx].2.is_none() {
            self.slots[idx].2 = Some(witness());
        }
    }

    fn into_checks(self) -> impl Iterator<Item = Check> {
        self.slots.into_iter().map(|(name, detail, w)| match w {
            Some(w) => Check::fail(name, w).with_detail(detail),
            None => Check::pass(name).with_detail(detail),
        })
    }
}

const AXIOMS: [(&str, &str); 11] = [
    ("(i)", "N + M <= 1"),
    ("(ii)", "N > 0"),
    ("(iii)", "N = 1 iff x = 0"),
    ("(iv)", "N(cx, t) = N(x, t/|c|)"),
    ("(v)", "N(x,s) * N(y,t) <= N(x+y, s+t)"),
    ("(vi)", "N(x,.) non-decreasing, N(x,t) -> 1"),
    ("(vii)", "M < 1"),
    ("(viii)", "M = 0 iff x = 0"),
    ("(ix)", "M(cx, t) = M(x, t/|c|)"),
    ("(x)", "M(x,s) <> M(y,t) >= M(x+y, s+t)"),
    ("(xi)", "M(x,.) non-increasing, M(x,t) -> 0"),
];

/// Checks the eleven defining conditions on `samples` seeded draws of
/// `(x, y, c, s, t)` plus a log-spaced t grid for the monotonicity and limit
/// conditions. Failures are returned as data with their witnesses.
pub fn verify_ifn_axioms(space: &IfnSpace, samples: usize, seed: u64, config: &ToleranceConfig) -> Verdict {
    let eps = config.eps_degree;
    let dim = space.dimension();
    let t_grid = sampling::log_space(1e-3, 1e3, 25);
    let zero = vec![0.0; dim];
    let tn = space.tnorm();
    let sn = space.tconorm();
    let deg = |x: &[f64], t: f64| space.degrees(x, t);

    let mut ff = FirstFailures::new(&AXIOMS);
    let pts = draw_points(dim, samples, seed);

    // Zero-vector rows of (iii) and (viii).
    for &t in &t_grid {
        let d = deg(&zero, t);
        if (d.n - 1.0).abs() > eps {
            ff.flag(2, || Witness::new().vector("x", &zero).scalar("t", t).scalar("n", d.n));
        }
        if d.m.abs() > eps {
            ff.flag(7, || Witness::new().vector("x", &zero).scalar("t", t).scalar("m", d.m));
        }
    }

    for p in &pts {
        let sum: Vec<f64> = p.x.iter().zip(&p.y).map(|(a, b)| a + b).collect();
        let scaled: Vec<f64> = p.x.iter().map(|a| p.c * a).collect();
        let dx = deg(&p.x, p.t);
        let dxs = deg(&p.x, p.s);
        let dy = deg(&p.y, p.t);
        let dsum = deg(&sum, p.s + p.t);
        let x_nonzero = p.x.iter().any(|&c| c != 0.0);

        for (vec, t, d) in [(&p.x, p.t, dx), (&p.y, p.t, dy), (&sum, p.s + p.t, dsum)] {
            if d.n + d.m > 1.0 + eps {
                ff.flag(0, || Witness::new().vector("x", vec).scalar("t", t).scalar("n", d.n).scalar("m", d.m));
            }
            if !(d.n > 0.0) {
                ff.flag(1, || Witness::new().vector("x", vec).scalar("t", t).scalar("n", d.n));
            }
            if !(d.m < 1.0) {
                ff.flag(6, || Witness::new().vector("x", vec).scalar("t", t).scalar("m", d.m));
            }
        }

        if x_nonzero {
            if !(dx.n < 1.0) {
                ff.flag(2, || Witness::new().vector("x", &p.x).scalar("t", p.t).scalar("n", dx.n));
            }
            if !(dx.m > 0.0) {
                ff.flag(7, || Witness::new().vector("x", &p.x).scalar("t", p.t).scalar("m", dx.m));
            }
        }

        let lhs = deg(&scaled, p.t);
        let rhs = deg(&p.x, p.t / p.c.abs());
        if (lhs.n - rhs.n).abs() > eps {
            ff.flag(3, || {
                Witness::new()
                    .vector("x", &p.x)
                    .scalar("c", p.c)
                    .scalar("t", p.t)
                    .scalar("lhs", lhs.n)
                    .scalar("rhs", rhs.n)
            });
        }
        if (lhs.m - rhs.m).abs() > eps {
            ff.flag(8, || {
                Witness::new()
                    .vector("x", &p.x)
                    .scalar("c", p.c)
                    .scalar("t", p.t)
                    .scalar("lhs", lhs.m)
                    .scalar("rhs", rhs.m)
            });
        }

        // Triangle conditions pair x at s with y at t.
        let combined_n = tn.tnorm(dxs.n, dy.n);
        if combined_n > dsum.n + eps {
            ff.flag(4, || {
                Witness::new()
                    .vector("x", &p.x)
                    .vector("y", &p.y)
                    .scalar("s", p.s)
                    .scalar("t", p.t)
                    .scalar("lhs", combined_n)
                    .scalar("rhs", dsum.n)
            });
        }
        let combined_m = sn.tconorm(dxs.m, dy.m);
        if combined_m + eps < dsum.m {
            ff.flag(9, || {
                Witness::new()
                    .vector("x", &p.x)
                    .vector("y", &p.y)
                    .scalar("s", p.s)
                    .scalar("t", p.t)
                    .scalar("lhs", combined_m)
                    .scalar("rhs", dsum.m)
            });
        }

        let mut prev: Option<(f64, DegreePair)> = None;
        for &t in &t_grid {
            let d = deg(&p.x, t);
            if let Some((t0, d0)) = prev {
                if d.n + eps < d0.n {
                    ff.flag(5, || {
                        Witness::new().vector("x", &p.x).scalar("t1", t0).scalar("t2", t).scalar("n1", d0.n).scalar("n2", d.n)
                    });
                }
                if d.m > d0.m + eps {
                    ff.flag(10, || {
                        Witness::new().vector("x", &p.x).scalar("t1", t0).scalar("t2", t).scalar("m1", d0.m).scalar("m2", d.m)
                    });
                }
            }
            prev = Some((t, d));
        }
        let far = deg(&p.x, config.t_large);
        if far.n < 1.0 - config.eps_limit {
            ff.flag(5, || Witness::new().vector("x", &p.x).scalar("t", config.t_large).scalar("n", far.n));
        }
        if far.m > config.eps_limit {
            ff.flag(10, || Witness::new().vector("x", &p.x).scalar("t", config.t_large).scalar("m", far.m));
        }
    }

    let mut verdict = Verdict::new(format!("IFN axioms on {}", space.describe()));
    for check in ff.into_checks() {
        verdict.push(check);
    }
    verdict.deviation(Deviation::NonMembershipBelowOne);
    verdict.deviation(Deviation::MonotoneConditionOnM);
    verdict.note(format!("{} seeded samples (seed {seed}); t grid of {} points in [1e-3, 1e3]", pts.len(), t_grid.len()));
    verdict
}

/// Search levels for the vanishing conditions: 1, 1/2, 1/4, ... 2^-80.
fn shrinking_levels() -> impl Iterator<Item = f64> {
    (0..=80).map(|j| 0.5f64.powi(j))
}

/// Checks (xii) idempotency of the operator pair and the sampled
/// contrapositive forms of (xiii)/(xiv): every sampled `x != 0` has a level
/// `t` with `N(x,t)` below the threshold (resp. `M(x,t)` above `1 - threshold`).
pub fn verify_extended_conditions(space: &IfnSpace, samples: usize, seed: u64, config: &ToleranceConfig) -> Verdict {
    let mut verdict = Verdict::new(format!("extended conditions on {}", space.describe()));

    let idem = check_idempotency(&space.tnorm(), &space.tconorm(), config.eps_degree);
    let xii = match idem.iter().find(|c| c.status == Status::Fail) {
        Some(failed) => Check::fail("(xii)", failed.witness.clone().unwrap_or_default()).with_detail(failed.name.clone()),
        None => Check::pass("(xii)").with_detail("a * a = a and a <> a = a on the dyadic grid"),
    };
    verdict.push(xii);

    let threshold = config.vanishing_threshold;
    let mut rng = sampling::rng(seed);
    let xs: Vec<Vec<f64>> = (0..samples.max(1))
        .map(|_| sampling::scaled_vector(&mut rng, space.dimension(), 1e-3, 10.0))
        .filter(|x| x.iter().any(|&c| c != 0.0))
        .collect();

    let mut xiii = Check::pass("(xiii)").with_detail(format!("exists t with N(x,t) < {threshold} for sampled x != 0"));
    let mut xiv = Check::pass("(xiv)").with_detail(format!("exists t with M(x,t) > {} for sampled x != 0", 1.0 - threshold));
    for x in &xs {
        if xiii.status == Status::Pass && !shrinking_levels().any(|t| space.degrees(x, t).n < threshold) {
            let t_min = 0.5f64.powi(80);
            xiii = Check::new("(xiii)", Status::Inconclusive)
                .with_witness(Witness::new().vector("x", x).scalar("t_min", t_min).scalar("n", space.degrees(x, t_min).n))
                .with_detail("search grid found no level below the threshold");
        }
        if xiv.status == Status::Pass && !shrinking_levels().any(|t| space.degrees(x, t).m > 1.0 - threshold) {
            let t_min = 0.5f64.powi(80);
            xiv = Check::new("(xiv)", Status::Inconclusive)
                .with_witness(Witness::new().vector("x", x).scalar("t_min", t_min).scalar("m", space.degrees(x, t_min).m))
                .with_detail("search grid found no level above the threshold");
        }
    }
    verdict.push(xiii);
    verdict.push(xiv);
    verdict.deviation(Deviation::VanishingConditionsContrapositive);
    verdict
}

/// First level on the shrinking grid where `N(x,t) < threshold`, if any.
pub fn vanishing_level(space: &IfnSpace, x: &Vector, threshold: f64) -> Option<f64> {
    shrinking_levels().find(|&t| space.degrees(x.coords(), t).n < threshold)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[f64]) -> Vector {
        Vector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn vector_validation() {
        assert_eq!(Vector::new(vec![]), Err(IfnError::Empty));
        assert_eq!(Vector::new(vec![1.0, f64::NAN]), Err(IfnError::NonFinite { index: 1 }));
        assert!(serde_json::from_str::<Vector>("[1.0, 2.0]").is_ok());
        assert_eq!(Vector::parse_csv("1, 2.5").unwrap(), v(&[1.0, 2.5]));
    }

    #[test]
    fn crisp_norms() {
        let x = [3.0, -4.0];
        assert_eq!(CrispNorm::L1.norm(&x), 7.0);
        assert_eq!(CrispNorm::L2.norm(&x), 5.0);
        assert_eq!(CrispNorm::Linf.norm(&x), 4.0);
    }

    #[test]
    fn evaluate_examples() {
        let s = IfnSpace::standard_min_max(3, CrispNorm::L2, 1.0).unwrap();
        assert_eq!(s.evaluate(&Vector::zeros(3), 5.0).unwrap(), DegreePair { n: 1.0, m: 0.0 });

        let s = IfnSpace::standard_min_max(1, CrispNorm::L1, 1.0).unwrap();
        assert_eq!(s.evaluate(&v(&[2.0]), 2.0).unwrap(), DegreePair { n: 0.5, m: 0.5 });

        let s = IfnSpace::standard_min_max(2, CrispNorm::L2, 2.0).unwrap();
        assert_eq!(s.evaluate(&v(&[3.0, 4.0]), 10.0).unwrap(), DegreePair { n: 0.5, m: 0.5 });
    }

    #[test]
    fn evaluate_errors() {
        let s = IfnSpace::standard_min_max(1, CrispNorm::L1, 1.0).unwrap();
        assert_eq!(s.evaluate(&v(&[1.0]), 0.0), Err(IfnError::Domain(0.0)));
        assert_eq!(s.evaluate(&v(&[1.0]), -1.0), Err(IfnError::Domain(-1.0)));
        assert_eq!(
            s.evaluate(&v(&[1.0, 2.0]), 1.0),
            Err(IfnError::DimensionMismatch { expected: 1, found: 2 })
        );
        assert_eq!(StandardIfn::new(CrispNorm::L1, 0.0), Err(IfnError::BadScale(0.0)));
        assert!(IfnSpace::standard_min_max(0, CrispNorm::L1, 1.0).is_err());
    }

    #[test]
    fn space_spec_json() {
        let spec = SpaceSpec::from_json(r#"{"dimension": 2, "crisp_norm": "l2", "k": 1.0, "tnorm": "min", "tconorm": "max"}"#).unwrap();
        let space = IfnSpace::from_spec(&spec).unwrap();
        assert_eq!(space.to_spec().unwrap(), spec);
        assert!(SpaceSpec::from_json(r#"{"dimension": 2, "crisp_norm": "l2", "k": 1.0, "tnorm": "min"}"#).is_err());
        assert!(SpaceSpec::from_json(
            r#"{"dimension": 2, "crisp_norm": "l2", "k": 1.0, "tnorm": "min", "tconorm": "max", "extra": 1}"#
        )
        .is_err());
    }

    #[test]
    fn example_space_passes_all_eleven() {
        let s = IfnSpace::standard_min_max(2, CrispNorm::L2, 1.0).unwrap();
        let verdict = verify_ifn_axioms(&s, 500, 7, &ToleranceConfig::default());
        assert!(verdict.is_pass(), "{verdict}");
        assert_eq!(verdict.checks.len(), 11);
        assert!(verdict.deviations.contains(&Deviation::NonMembershipBelowOne));
    }

    #[test]
    fn squared_norm_breaks_homogeneity() {
        // Hand check: N(2*1, 1) = 1/5 but N(1, 1/2) = 1/3.
        let broken = FnIfn::new("squared", |x: &[f64], t: f64| {
            let q: f64 = x.iter().map(|c| c * c).sum();
            DegreePair { n: t / (t + q), m: q / (t + q) }
        });
        assert!((broken.degrees(&[2.0], 1.0).n - 0.2).abs() < 1e-15);
        assert!((broken.degrees(&[1.0], 0.5).n - 1.0 / 3.0).abs() < 1e-15);

        let s = IfnSpace::with_evaluator(1, Arc::new(broken), TNorm::Min, TConorm::Max).unwrap();
        let verdict = verify_ifn_axioms(&s, 200, 0, &ToleranceConfig::default());
        let iv = verdict.check("(iv)").unwrap();
        assert_eq!(iv.status, Status::Fail);
        let w = iv.witness.as_ref().unwrap();
        let (x, c, t) = (w.get_vector("x").unwrap(), w.get("c").unwrap(), w.get("t").unwrap());
        let scaled: Vec<f64> = x.iter().map(|a| c * a).collect();
        assert!((s.degrees(&scaled, t).n - s.degrees(x, t / c.abs()).n).abs() > 1e-9);
    }

    #[test]
    fn zero_vector_rows_exact() {
        let s = IfnSpace::standard_min_max(3, CrispNorm::Linf, 0.5).unwrap();
        for t in [1e-6, 1.0, 1e6] {
            let d = s.degrees(&[0.0; 3], t);
            assert_eq!((d.n, d.m), (1.0, 0.0));
        }
    }

    #[test]
    fn extended_conditions() {
        let cfg = ToleranceConfig::default();
        let s = IfnSpace::standard_min_max(1, CrispNorm::L1, 1.0).unwrap();
        let v1 = verify_extended_conditions(&s, 100, 0, &cfg);
        assert!(v1.is_pass(), "{v1}");

        let p = IfnSpace::standard(1, CrispNorm::L1, 1.0, TNorm::Product, TConorm::ProbSum).unwrap();
        let v2 = verify_extended_conditions(&p, 100, 0, &cfg);
        let xii = v2.check("(xii)").unwrap();
        assert_eq!(xii.status, Status::Fail);
        assert_eq!(xii.witness.as_ref().unwrap().get("a"), Some(0.5));

        // x = (1): N(1, 0.5) = 0.5 / 1.5 = 1/3 < 0.5 is the first grid level found.
        let t = vanishing_level(&s, &v(&[1.0]), 0.5).unwrap();
        assert_eq!(t, 0.5);
        assert!((s.degrees(&[1.0], t).n - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn extended_conditions_inconclusive_when_degrees_never_drop() {
        let flat = FnIfn::new("flat", |x: &[f64], _t: f64| {
            if x.iter().all(|&c| c == 0.0) {
                DegreePair::CERTAIN
            } else {
                DegreePair { n: 0.9, m: 0.1 }
            }
        });
        let s = IfnSpace::with_evaluator(1, Arc::new(flat), TNorm::Min, TConorm::Max).unwrap();
        let verdict = verify_extended_conditions(&s, 10, 0, &ToleranceConfig::default());
        assert_eq!(verdict.check("(xiii)").unwrap().status, Status::Inconclusive);
        assert_eq!(verdict.check("(xiv)").unwrap().status, Status::Inconclusive);
    }
}
