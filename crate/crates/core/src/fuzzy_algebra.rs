//! Continuous t-norms and t-conorms on `[0, 1]`.
//!
//! Three families of each are built in. Min/Max is the pair every theorem
//! level check uses; the product and Łukasiewicz families exist so the
//! axiom checker and the idempotency detector have something to reject.
//!
//! Custom operators can be wrapped with [`FnTNorm`] / [`FnTConorm`] to use
//! the axiom checker as a falsifier.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sampling;
use crate::verdict::{Check, Status, Verdict, Witness};

/// Default slack for comparisons between degrees.
pub const EPS_DEGREE: f64 = 1e-9;

/// Spacing of the witness search grid.
const WITNESS_GRID: u32 = 1024;
const WITNESS_BISECTIONS: usize = 60;

#[derive(Debug, Error, PartialEq)]
pub enum FuzzyError {
    #[error("value {0} is outside [0, 1]")]
    OutOfRange(f64),
    #[error("precondition violated: {0}")]
    Precondition(&'static str),
    #[error("no witness found on the search grid; operator may be degenerate or discontinuous")]
    WitnessNotFound,
}

/// A real number in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct UnitValue(f64);

impl UnitValue {
    pub const ZERO: UnitValue = UnitValue(0.0);
    pub const ONE: UnitValue = UnitValue(1.0);

    pub fn new(value: f64) -> Result<Self, FuzzyError> {
        if (0.0..=1.0).contains(&value) {
            Ok(UnitValue(value))
        } else {
            Err(FuzzyError::OutOfRange(value))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl<'de> Deserialize<'de> for UnitValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = f64::deserialize(d)?;
        UnitValue::new(v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for UnitValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Membership and non-membership degrees of a point, `n + m <= 1`.
///
/// Evaluators return raw pairs so a broken evaluator can still be inspected;
/// [`DegreePair::checked`] enforces the invariant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DegreePair {
    pub n: f64,
    pub m: f64,
}

impl DegreePair {
    pub const CERTAIN: DegreePair = DegreePair { n: 1.0, m: 0.0 };

    pub fn checked(n: f64, m: f64, eps: f64) -> Result<Self, FuzzyError> {
        let n = UnitValue::new(n)?.get();
        let m = UnitValue::new(m)?.get();
        if n + m > 1.0 + eps {
            return Err(FuzzyError::Precondition("n + m <= 1"));
        }
        Ok(DegreePair { n, m })
    }

    pub fn is_valid(&self, eps: f64) -> bool {
        (0.0..=1.0).contains(&self.n) && (0.0..=1.0).contains(&self.m) && self.n + self.m <= 1.0 + eps
    }
}

/// A binary operation meant to be a t-norm (identity 1).
pub trait TriangularNorm {
    fn tnorm(&self, a: f64, b: f64) -> f64;
}

/// A binary operation meant to be a t-conorm (identity 0).
pub trait TriangularConorm {
    fn tconorm(&self, a: f64, b: f64) -> f64;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TNorm {
    #[default]
    Min,
    Product,
    Lukasiewicz,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TConorm {
    #[default]
    Max,
    ProbSum,
    BoundedSum,
}

impl TNorm {
    pub fn eval(self, a: UnitValue, b: UnitValue) -> UnitValue {
        UnitValue(self.tnorm(a.0, b.0).clamp(0.0, 1.0))
    }

    pub fn name(self) -> &'static str {
        match self {
            TNorm::Min => "min",
            TNorm::Product => "product",
            TNorm::Lukasiewicz => "lukasiewicz",
        }
    }
}

impl TConorm {
    pub fn eval(self, a: UnitValue, b: UnitValue) -> UnitValue {
        UnitValue(self.tconorm(a.0, b.0).clamp(0.0, 1.0))
    }

    pub fn name(self) -> &'static str {
        match self {
            TConorm::Max => "max",
            TConorm::ProbSum => "probsum",
            TConorm::BoundedSum => "boundedsum",
        }
    }
}

impl TriangularNorm for TNorm {
    fn tnorm(&self, a: f64, b: f64) -> f64 {
        match self {
            TNorm::Min => a.min(b),
            TNorm::Product => a * b,
            TNorm::Lukasiewicz => (a + b - 1.0).max(0.0),
        }
    }
}

impl TriangularConorm for TConorm {
    fn tconorm(&self, a: f64, b: f64) -> f64 {
        match self {
            TConorm::Max => a.max(b),
            TConorm::ProbSum => a + b - a * b,
            TConorm::BoundedSum => (a + b).min(1.0),
        }
    }
}

/// Wraps a closure as a t-norm candidate.
pub struct FnTNorm<F>(pub F);

/// Wraps a closure as a t-conorm candidate.
pub struct FnTConorm<F>(pub F);

impl<F: Fn(f64, f64) -> f64> TriangularNorm for FnTNorm<F> {
    fn tnorm(&self, a: f64, b: f64) -> f64 {
        (self.0)(a, b)
    }
}

impl<F: Fn(f64, f64) -> f64> TriangularConorm for FnTConorm<F> {
    fn tconorm(&self, a: f64, b: f64) -> f64 {
        (self.0)(a, b)
    }
}

/// Samples `samples` quadruples uniformly from `[0,1]^4` and checks
/// commutativity, associativity, identity, monotonicity and range for both
/// operators, within `eps`.
pub fn check_algebra_axioms(
    t: &dyn TriangularNorm,
    s: &dyn TriangularConorm,
    samples: usize,
    seed: u64,
    eps: f64,
) -> Verdict {
    let mut rng = sampling::rng(seed);
    let draws: Vec<[f64; 4]> = (0..samples.max(1))
        .map(|_| [rng.gen(), rng.gen(), rng.gen(), rng.gen()])
        .collect();

    let mut verdict = Verdict::new("t-norm / t-conorm axioms");
    for check in operator_checks("tnorm", &|a, b| t.tnorm(a, b), 1.0, &draws, eps) {
        verdict.push(check);
    }
    for check in operator_checks("tconorm", &|a, b| s.tconorm(a, b), 0.0, &draws, eps) {
        verdict.push(check);
    }
    verdict
}

fn operator_checks(
    prefix: &str,
    op: &dyn Fn(f64, f64) -> f64,
    identity: f64,
    draws: &[[f64; 4]],
    eps: f64,
) -> Vec<Check> {
    let mut range = None;
    let mut comm = None;
    let mut assoc = None;
    let mut ident = None;
    let mut mono = None;

    for &[a, b, c, d] in draws {
        let ab = op(a, b);
        if range.is_none() && !(-eps..=1.0 + eps).contains(&ab) {
            range = Some(Witness::new().scalar("a", a).scalar("b", b).scalar("value", ab));
        }
        let ba = op(b, a);
        if comm.is_none() && (ab - ba).abs() > eps {
            comm = Some(
                Witness::new()
                    .scalar("a", a)
                    .scalar("b", b)
                    .scalar("lhs", ab)
                    .scalar("rhs", ba),
            );
        }
        let left = op(ab, c);
        let right = op(a, op(b, c));
        if assoc.is_none() && (left - right).abs() > eps {
            assoc = Some(
                Witness::new()
                    .scalar("a", a)
                    .scalar("b", b)
                    .scalar("c", c)
                    .scalar("lhs", left)
                    .scalar("rhs", right),
            );
        }
        let id = op(a, identity);
        if ident.is_none() && (id - a).abs() > eps {
            ident = Some(Witness::new().scalar("a", a).scalar("value", id));
        }
        let (lo1, hi1) = if a <= c { (a, c) } else { (c, a) };
        let (lo2, hi2) = if b <= d { (b, d) } else { (d, b) };
        let low = op(lo1, lo2);
        let high = op(hi1, hi2);
        if mono.is_none() && low > high + eps {
            mono = Some(
                Witness::new()
                    .scalar("a", lo1)
                    .scalar("b", lo2)
                    .scalar("c", hi1)
                    .scalar("d", hi2)
                    .scalar("lhs", low)
                    .scalar("rhs", high),
            );
        }
    }

    [
        ("range", range),
        ("commutativity", comm),
        ("associativity", assoc),
        ("identity", ident),
        ("monotonicity", mono),
    ]
    .into_iter()
    .map(|(name, w)| {
        let name = format!("{prefix} {name}");
        match w {
            Some(w) => Check::fail(name, w),
            None => Check::pass(name),
        }
    })
    .collect()
}

/// Checks `s(a,b) = 1 - t(1-a, 1-b)` exactly on the dyadic grid of spacing 1/1024.
pub fn check_duality(t: &dyn TriangularNorm, s: &dyn TriangularConorm) -> Check {
    let grid: Vec<f64> = (0..=WITNESS_GRID).map(|i| i as f64 / WITNESS_GRID as f64).collect();
    for &a in &grid {
        for &b in grid.iter().step_by(8) {
            let lhs = s.tconorm(a, b);
            let rhs = 1.0 - t.tnorm(1.0 - a, 1.0 - b);
            if lhs != rhs {
                return Check::fail(
                    "duality",
                    Witness::new()
                        .scalar("a", a)
                        .scalar("b", b)
                        .scalar("lhs", lhs)
                        .scalar("rhs", rhs),
                );
            }
        }
    }
    Check::pass("duality")
}

/// Idempotency of both operators, checked coarse-to-fine on dyadic points
/// and at the endpoints. The first violating point is the witness.
pub fn check_idempotency(t: &dyn TriangularNorm, s: &dyn TriangularConorm, eps: f64) -> Vec<Check> {
    let mut points = vec![0.0, 1.0];
    points.extend(sampling::dyadic_coarse_to_fine(10));
    let find = |op: &dyn Fn(f64) -> f64| {
        points
            .iter()
            .copied()
            .find(|&a| (op(a) - a).abs() > eps)
            .map(|a| Witness::new().scalar("a", a).scalar("value", op(a)))
    };
    let tn = find(&|a| t.tnorm(a, a));
    let sn = find(&|a| s.tconorm(a, a));
    [("tnorm idempotency", tn), ("tconorm idempotency", sn)]
        .into_iter()
        .map(|(name, w)| match w {
            Some(w) => Check::fail(name, w),
            None => Check::pass(name),
        })
        .collect()
}

/// True when both operators satisfy `a*a = a` and `a<>a = a` on the grid.
pub fn is_idempotent_pair(t: &dyn TriangularNorm, s: &dyn TriangularConorm, eps: f64) -> bool {
    check_idempotency(t, s, eps)
        .iter()
        .all(|c| c.status == Status::Pass)
}

/// Finds `r3, r4` in (0,1) with `t(r1, r3) > r2` and `s(r4, r2) < r1`.
pub fn remark3_witness(
    t: &dyn TriangularNorm,
    s: &dyn TriangularConorm,
    r1: UnitValue,
    r2: UnitValue,
) -> Result<(UnitValue, UnitValue), FuzzyError> {
    let (r1, r2) = (r1.get(), r2.get());
    if !(0.0 < r2 && r2 < r1 && r1 < 1.0) {
        return Err(FuzzyError::Precondition("0 < r2 < r1 < 1"));
    }
    let r3 = upper_set_witness(&|r| t.tnorm(r1, r) > r2)?;
    let r4 = lower_set_witness(&|r| s.tconorm(r, r2) < r1)?;
    Ok((UnitValue(r3), UnitValue(r4)))
}

/// Finds `r6, r7` in (0,1) with `t(r6, r6) >= r5` and `s(r7, r7) <= r5`.
pub fn remark3_idempotent_witness(
    t: &dyn TriangularNorm,
    s: &dyn TriangularConorm,
    r5: UnitValue,
) -> Result<(UnitValue, UnitValue), FuzzyError> {
    let r5 = r5.get();
    if !(0.0 < r5 && r5 < 1.0) {
        return Err(FuzzyError::Precondition("0 < r5 < 1"));
    }
    let r6 = upper_set_witness(&|r| t.tnorm(r, r) >= r5)?;
    let r7 = lower_set_witness(&|r| s.tconorm(r, r) <= r5)?;
    Ok((UnitValue(r6), UnitValue(r7)))
}

/// For a predicate that holds on an upper subinterval of (0,1): scans the
/// grid downward to the last point where it holds, then bisects toward the
/// first failing grid point. The returned point always satisfies `pred`.
fn upper_set_witness(pred: &dyn Fn(f64) -> bool) -> Result<f64, FuzzyError> {
    let n = WITNESS_GRID;
    let top = (n - 1) as f64 / n as f64;
    if !pred(top) {
        // The satisfying set, if any, lies in (top, 1).
        let mut lo = top;
        for _ in 0..WITNESS_BISECTIONS {
            let mid = 0.5 * (lo + 1.0);
            if mid >= 1.0 {
                break;
            }
            if pred(mid) {
                return Ok(refine(pred, lo, mid));
            }
            lo = mid;
        }
        return Err(FuzzyError::WitnessNotFound);
    }
    let mut good = top;
    for i in (1..n - 1).rev() {
        let r = i as f64 / n as f64;
        if pred(r) {
            good = r;
        } else {
            return Ok(refine(pred, r, good));
        }
    }
    Ok(good)
}

fn lower_set_witness(pred: &dyn Fn(f64) -> bool) -> Result<f64, FuzzyError> {
    upper_set_witness(&|u| pred(1.0 - u)).map(|u| 1.0 - u)
}

/// Bisects between a failing `bad` and a satisfying `good`, returning the
/// satisfying end.
fn refine(pred: &dyn Fn(f64) -> bool, mut bad: f64, mut good: f64) -> f64 {
    for _ in 0..WITNESS_BISECTIONS {
        let mid = 0.5 * (bad + good);
        if mid == bad || mid == good {
            break;
        }
        if pred(mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    good
}
