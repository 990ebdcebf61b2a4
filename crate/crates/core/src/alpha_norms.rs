//! Crisp alpha-norms decomposed from an intuitionistic fuzzy norm and the
//! comparability constant relating them to coefficient sums over a basis.
//!
//! `||x||^1_a = inf{t : N(x,t) >= a}` and `||x||^2_a = inf{t : M(x,t) <= a}`,
//! both found by exponential bracketing from `t = 1` followed by bisection.

use nalgebra::DMatrix;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::ToleranceConfig;
use crate::deviation::Deviation;
use crate::ifn_space::{verify_extended_conditions, verify_ifn_axioms, IfnError, IfnSpace, Vector};
use crate::sampling;
use crate::verdict::{Check, Status, Verdict, Witness};

/// Gram determinants at or below this are treated as linearly dependent.
pub const GRAM_EPS: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum AlphaError {
    #[error("alpha must lie strictly inside (0, 1), got {0}")]
    BadLevel(f64),
    #[error("no t <= {t_max} reaches level {alpha}; the IFN misses its t -> infinity limit")]
    Bracket { alpha: f64, t_max: f64 },
    #[error("alpha levels must be strictly increasing")]
    NotIncreasing,
    #[error("basis is degenerate (Gram determinant {0:e})")]
    DegenerateBasis(f64),
    #[error("basis is empty")]
    EmptyBasis,
    #[error(transparent)]
    Ifn(#[from] IfnError),
}

#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct AlphaLevel(f64);

impl AlphaLevel {
    pub fn new(alpha: f64) -> Result<Self, AlphaError> {
        if alpha > 0.0 && alpha < 1.0 {
            Ok(AlphaLevel(alpha))
        } else {
            Err(AlphaError::BadLevel(alpha))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }
}

impl<'de> Deserialize<'de> for AlphaLevel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        AlphaLevel::new(f64::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NormFamily {
    Membership,
    NonMembership,
}

impl NormFamily {
    pub const BOTH: [NormFamily; 2] = [NormFamily::Membership, NormFamily::NonMembership];

    pub fn name(self) -> &'static str {
        match self {
            NormFamily::Membership => "membership",
            NormFamily::NonMembership => "non-membership",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaNormResult {
    pub value: f64,
    /// Final bisection interval; `value == bracket.1`.
    pub bracket: (f64, f64),
    pub iterations: usize,
}

impl AlphaNormResult {
    const ZERO: AlphaNormResult = AlphaNormResult { value: 0.0, bracket: (0.0, 0.0), iterations: 0 };
}

/// Infimum of `{t > 0 : pred(t)}` for a predicate that is false below some
/// threshold and true above it.
fn monotone_infimum(pred: impl Fn(f64) -> bool, alpha: f64, config: &ToleranceConfig) -> Result<AlphaNormResult, AlphaError> {
    let (mut lo, mut hi);
    if pred(1.0) {
        hi = 1.0;
        lo = 0.5;
        while pred(lo) {
            hi = lo;
            if hi <= config.eps_bisect {
                lo = 0.0;
                break;
            }
            lo *= 0.5;
        }
    } else {
        lo = 1.0;
        hi = 2.0;
        while !pred(hi) {
            if hi >= config.t_max {
                return Err(AlphaError::Bracket { alpha, t_max: config.t_max });
            }
            lo = hi;
            hi = (2.0 * hi).min(config.t_max);
        }
    }

    let mut iterations = 0;
    while hi - lo > config.eps_bisect && iterations < config.bisect_max_iter {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if pred(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
        iterations += 1;
    }
    Ok(AlphaNormResult { value: hi, bracket: (lo, hi), iterations })
}

pub fn alpha_norm(
    space: &IfnSpace,
    x: &Vector,
    alpha: AlphaLevel,
    family: NormFamily,
    config: &ToleranceConfig,
) -> Result<AlphaNormResult, AlphaError> {
    space.check_dim(x.coords())?;
    if x.is_zero() {
        return Ok(AlphaNormResult::ZERO);
    }
    let a = alpha.get();
    let c = x.coords();
    match family {
        NormFamily::Membership => monotone_infimum(|t| space.degrees(c, t).n >= a, a, config),
        NormFamily::NonMembership => monotone_infimum(|t| space.degrees(c, t).m <= a, a, config),
    }
}

pub fn alpha_norm_membership(
    space: &IfnSpace,
    x: &Vector,
    alpha: AlphaLevel,
    config: &ToleranceConfig,
) -> Result<AlphaNormResult, AlphaError> {
    alpha_norm(space, x, alpha, NormFamily::Membership, config)
}

pub fn alpha_norm_nonmembership(
    space: &IfnSpace,
    x: &Vector,
    alpha: AlphaLevel,
    config: &ToleranceConfig,
) -> Result<AlphaNormResult, AlphaError> {
    alpha_norm(space, x, alpha, NormFamily::NonMembership, config)
}

/// Analytic alpha-norm of the standard IFN for a crisp norm value.
pub fn closed_form_standard(crisp_value: f64, k: f64, alpha: AlphaLevel, family: NormFamily) -> f64 {
    let a = alpha.get();
    match family {
        NormFamily::Membership => a * k * crisp_value / (1.0 - a),
        NormFamily::NonMembership => k * crisp_value * (1.0 - a) / a,
    }
}

/// Tolerance for comparing two bisected alpha-norm values of size `scale`.
fn norm_tol(scale: f64, config: &ToleranceConfig) -> f64 {
    4.0 * config.eps_bisect + 1e-9 * scale.abs()
}

/// Samples the norm conditions of both alpha-norm families: non-negativity,
/// definiteness, absolute homogeneity and the triangle inequality.
pub fn verify_alpha_norm_axioms(
    space: &IfnSpace,
    alpha: AlphaLevel,
    samples: usize,
    seed: u64,
    config: &ToleranceConfig,
) -> Verdict {
    let mut verdict = Verdict::new(format!("alpha-norm axioms at alpha={} on {}", alpha.get(), space.describe()));

    let pre = verify_ifn_axioms(space, samples.clamp(1, 200), seed, config);
    let xii = verify_extended_conditions(space, 1, seed, config).check("(xii)").map(|c| c.status);
    if pre.is_pass() && xii == Some(Status::Pass) {
        verdict.push(Check::pass("precondition").with_detail("IFN axioms and (xii) hold on samples"));
    } else {
        verdict.push(
            Check::new("precondition", Status::Inconclusive)
                .with_detail("IFN axioms or (xii) fail; the norm property is not guaranteed"),
        );
    }

    let dim = space.dimension();
    let mut rng = sampling::rng(seed);
    let zero = Vector::zeros(dim);

    for family in NormFamily::BOTH {
        let name = family.name();
        let norm = |v: &Vector| alpha_norm(space, v, alpha, family, config).map(|r| r.value);
        let mut non_neg: Option<Witness> = None;
        let mut definite: Option<Witness> = None;
        let mut homog: Option<Witness> = None;
        let mut triangle: Option<Witness> = None;
        let mut errored: Option<String> = None;

        match norm(&zero) {
            Ok(v) if v == 0.0 => {}
            Ok(v) => definite = Some(Witness::new().vector("x", zero.coords()).scalar("value", v)),
            Err(e) => errored = Some(e.to_string()),
        }

        for _ in 0..samples.max(1) {
            let x = Vector::from_slice_unchecked(&sampling::scaled_vector(&mut rng, dim, 1e-3, 10.0));
            let y = Vector::from_slice_unchecked(&sampling::scaled_vector(&mut rng, dim, 1e-3, 10.0));
            let c = sampling::nonzero_scalar(&mut rng, 0.1, 10.0);
            let cx = c * &x;
            let sum = &x + &y;
            let vals = (|| Ok::<_, AlphaError>((norm(&x)?, norm(&y)?, norm(&cx)?, norm(&sum)?)))();
            let (nx, ny, ncx, nsum) = match vals {
                Ok(v) => v,
                Err(e) => {
                    errored.get_or_insert(e.to_string());
                    continue;
                }
            };
            if nx < 0.0 && non_neg.is_none() {
                non_neg = Some(Witness::new().vector("x", x.coords()).scalar("value", nx));
            }
            if !x.is_zero() && !(nx > 0.0) && definite.is_none() {
                definite = Some(Witness::new().vector("x", x.coords()).scalar("value", nx));
            }
            let scaled = c.abs() * nx;
            // Scaling `nx` scales its bisection error by |c| as well.
            let homog_tol = norm_tol(scaled, config) + 4.0 * c.abs() * config.eps_bisect;
            if (ncx - scaled).abs() > homog_tol && homog.is_none() {
                homog = Some(
                    Witness::new()
                        .vector("x", x.coords())
                        .scalar("c", c)
                        .scalar("lhs", ncx)
                        .scalar("rhs", scaled),
                );
            }
            if nsum > nx + ny + norm_tol(nx + ny, config) && triangle.is_none() {
                triangle = Some(
                    Witness::new()
                        .vector("x", x.coords())
                        .vector("y", y.coords())
                        .scalar("lhs", nsum)
                        .scalar("rhs", nx + ny),
                );
            }
        }

        for (label, w) in [
            ("non-negativity", non_neg),
            ("definiteness", definite),
            ("homogeneity", homog),
            ("triangle", triangle),
        ] {
            let check_name = format!("{name} {label}");
            verdict.push(match w {
                Some(w) => Check::fail(check_name, w),
                None => Check::pass(check_name),
            });
        }
        if let Some(e) = errored {
            verdict.push(Check::new(format!("{name} evaluation"), Status::Inconclusive).with_detail(e));
        }
    }
    verdict.deviation(Deviation::NonMembershipAlphaNormInfimum);
    verdict
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Ascending,
    Descending,
    Constant,
    Mixed,
}

/// Monotonicity direction of `values` up to `tol(value)` slack.
pub fn observed_direction(values: &[f64], tol: impl Fn(f64) -> f64) -> Direction {
    let mut up = false;
    let mut down = false;
    for w in values.windows(2) {
        let slack = tol(w[0].abs().max(w[1].abs()));
        if w[1] > w[0] + slack {
            up = true;
        } else if w[1] < w[0] - slack {
            down = true;
        }
    }
    match (up, down) {
        (false, false) => Direction::Constant,
        (true, false) => Direction::Ascending,
        (false, true) => Direction::Descending,
        (true, true) => Direction::Mixed,
    }
}

/// Checks that the membership family is non-decreasing in alpha and reports
/// the direction observed for the non-membership family.
pub fn verify_ascending_family(
    space: &IfnSpace,
    x: &Vector,
    alphas: &[AlphaLevel],
    config: &ToleranceConfig,
) -> Result<Verdict, AlphaError> {
    if alphas.windows(2).any(|w| w[0] >= w[1]) {
        return Err(AlphaError::NotIncreasing);
    }
    let levels: Vec<f64> = alphas.iter().map(|a| a.get()).collect();
    let mut values = [Vec::new(), Vec::new()];
    for (i, family) in NormFamily::BOTH.into_iter().enumerate() {
        for &a in alphas {
            values[i].push(alpha_norm(space, x, a, family, config)?.value);
        }
    }
    let tol = |s: f64| norm_tol(s, config);

    let mut verdict = Verdict::new(format!("alpha-norm family at x={x} on {}", space.describe()));
    let witness = |v: &[f64]| Witness::new().vector("alphas", &levels).vector("values", v);

    let mem = &values[0];
    let broken = mem.windows(2).position(|w| w[0] > w[1] + tol(w[1]));
    verdict.push(match broken {
        None => Check::pass("membership ascending").with_witness(witness(mem)),
        Some(i) => Check::fail(
            "membership ascending",
            witness(mem).scalar("alpha1", levels[i]).scalar("alpha2", levels[i + 1]),
        ),
    });

    let dir = observed_direction(&values[1], tol);
    verdict.push(
        Check::pass("non-membership direction")
            .with_witness(witness(&values[1]))
            .with_detail(format!("observed {dir:?}").to_lowercase()),
    );
    verdict.note(format!("non-membership family observed {}", format!("{dir:?}").to_lowercase()));
    verdict.deviation(Deviation::NonMembershipAlphaNormInfimum);
    verdict.deviation(Deviation::NonMembershipFamilyDirectionObserved);
    Ok(verdict)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparabilityEstimate {
    /// Smallest observed `||sum c_i x_i||^1_a / sum |c_i|`.
    pub constant: f64,
    /// Coefficients attaining it.
    pub argmin: Vec<f64>,
    pub evaluated: usize,
}

pub fn gram_determinant(basis: &[Vector]) -> f64 {
    let m = basis.len();
    let gram = DMatrix::from_fn(m, m, |i, j| {
        basis[i].coords().iter().zip(basis[j].coords()).map(|(a, b)| a * b).sum::<f64>()
    });
    gram.determinant()
}

/// Axis points, pairwise diagonals and sign patterns on the unit l1 sphere.
fn corner_coefficients(m: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::new();
    for i in 0..m {
        for s in [1.0, -1.0] {
            let mut c = vec![0.0; m];
            c[i] = s;
            out.push(c);
        }
    }
    if m <= 16 {
        for i in 0..m {
            for j in i + 1..m {
                for s in [1.0, -1.0] {
                    let mut c = vec![0.0; m];
                    c[i] = 0.5;
                    c[j] = 0.5 * s;
                    out.push(c);
                }
            }
        }
    }
    if (2..=10).contains(&m) {
        let w = 1.0 / m as f64;
        for mask in 0u32..(1 << m) {
            out.push((0..m).map(|i| if mask >> i & 1 == 1 { -w } else { w }).collect());
        }
    }
    out
}

/// Statistical lower-bound estimate of the comparability constant `C_a`:
/// the minimum of `||sum c_i x_i||^1_a / sum |c_i|` over corner coefficient
/// vectors and `samples` seeded Dirichlet draws with random signs.
pub fn estimate_comparability_constant(
    space: &IfnSpace,
    basis: &[Vector],
    alpha: AlphaLevel,
    samples: usize,
    seed: u64,
    config: &ToleranceConfig,
) -> Result<ComparabilityEstimate, AlphaError> {
    if basis.is_empty() {
        return Err(AlphaError::EmptyBasis);
    }
    for b in basis {
        space.check_dim(b.coords())?;
    }
    let det = gram_determinant(basis);
    if !(det > GRAM_EPS) {
        return Err(AlphaError::DegenerateBasis(det));
    }

    let m = basis.len();
    let mut coeffs = corner_coefficients(m);
    let mut rng = sampling::rng(seed);
    for _ in 0..samples {
        let e: Vec<f64> = (0..m).map(|_| -(1.0 - rng.gen::<f64>()).ln()).collect();
        let total: f64 = e.iter().sum();
        coeffs.push(
            e.iter()
                .map(|v| if rng.gen::<bool>() { v / total } else { -v / total })
                .collect(),
        );
    }

    let dim = space.dimension();
    let mut best = ComparabilityEstimate { constant: f64::INFINITY, argmin: Vec::new(), evaluated: 0 };
    let mut point = vec![0.0; dim];
    for c in coeffs {
        let l1: f64 = c.iter().map(|v| v.abs()).sum();
        if l1 == 0.0 {
            continue;
        }
        point.iter_mut().for_each(|p| *p = 0.0);
        for (ci, b) in c.iter().zip(basis) {
            for (p, bj) in point.iter_mut().zip(b.coords()) {
                *p += ci * bj;
            }
        }
        let value = alpha_norm_membership(space, &Vector::from_slice_unchecked(&point), alpha, config)?.value;
        let ratio = value / l1;
        best.evaluated += 1;
        if ratio < best.constant {
            best.constant = ratio;
            best.argmin = c;
        }
    }
    Ok(best)
}
