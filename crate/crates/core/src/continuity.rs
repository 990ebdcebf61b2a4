//! Continuity of maps between two IFNLS at a point: the plain, strong and
//! sequential notions, the implication and equivalence between them, and
//! compactness of images.
//!
//! The "for all x" quantifiers are sampled: seeded points on shells around
//! `x0` at log-spaced radii in `[1e-4, 1e2]`, plus radial escalation along
//! the coordinate axes and a few random rays at radii `2^j`,
//! `j = -40..=27`. The escalation reaches violations that only show up very
//! close to or very far from `x0`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::ToleranceConfig;
use crate::deviation::Deviation;
use crate::ifn_space::{IfnError, IfnSpace, Vector};
use crate::sampling;
use crate::sequence_analysis::{check_convergence_to, ConvergenceStatus, SequenceError, VectorSequence};
use crate::topology::{compactness_verdict, SampledSet, TopologyError};
use crate::verdict::{Check, Status, Verdict, Witness};

#[derive(Debug, Error, PartialEq)]
pub enum ContinuityError {
    #[error("unknown map {0:?}; expected identity, scale:<c>, step or example33")]
    UnknownMap(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error(transparent)]
    Ifn(#[from] IfnError),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
}

/// Maps applied coordinatewise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BuiltinMap {
    Identity,
    Scale(f64),
    /// 0 for negative arguments, 1 otherwise.
    Step,
    /// `x^4 / (1 + x^2)`.
    Example33,
}

impl BuiltinMap {
    pub const CORPUS: [BuiltinMap; 4] = [BuiltinMap::Identity, BuiltinMap::Scale(2.0), BuiltinMap::Step, BuiltinMap::Example33];

    pub fn eval(self, x: f64) -> f64 {
        match self {
            BuiltinMap::Identity => x,
            BuiltinMap::Scale(c) => c * x,
            BuiltinMap::Step => {
                if x < 0.0 {
                    0.0
                } else {
                    1.0
                }
            }
            BuiltinMap::Example33 => {
                let x2 = x * x;
                x2 * x2 / (1.0 + x2)
            }
        }
    }
}

impl fmt::Display for BuiltinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuiltinMap::Identity => f.write_str("identity"),
            BuiltinMap::Scale(c) => write!(f, "scale:{c}"),
            BuiltinMap::Step => f.write_str("step"),
            BuiltinMap::Example33 => f.write_str("example33"),
        }
    }
}

impl FromStr for BuiltinMap {
    type Err = ContinuityError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "identity" => Ok(BuiltinMap::Identity),
            "step" => Ok(BuiltinMap::Step),
            "example33" => Ok(BuiltinMap::Example33),
            _ => s
                .strip_prefix("scale:")
                .and_then(|c| c.parse::<f64>().ok())
                .filter(|c| c.is_finite())
                .map(BuiltinMap::Scale)
                .ok_or_else(|| ContinuityError::UnknownMap(s.to_owned())),
        }
    }
}

pub trait MapEvaluator: Send + Sync {
    fn apply(&self, x: &[f64], out: &mut [f64]);
    fn describe(&self) -> String;
}

impl MapEvaluator for BuiltinMap {
    fn apply(&self, x: &[f64], out: &mut [f64]) {
        for (o, &v) in out.iter_mut().zip(x) {
            *o = self.eval(v);
        }
    }

    fn describe(&self) -> String {
        self.to_string()
    }
}

/// A map `f: (U, A) -> (V, B)` evaluated pointwise.
#[derive(Clone)]
pub struct SampledMap {
    domain: IfnSpace,
    codomain: IfnSpace,
    evaluator: Arc<dyn MapEvaluator>,
    builtin: Option<BuiltinMap>,
}

impl fmt::Debug for SampledMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SampledMap")
            .field("map", &self.evaluator.describe())
            .field("domain", &self.domain)
            .field("codomain", &self.codomain)
            .finish()
    }
}

impl SampledMap {
    pub fn builtin(map: BuiltinMap, domain: IfnSpace, codomain: IfnSpace) -> Result<Self, ContinuityError> {
        if domain.dimension() != codomain.dimension() {
            return Err(IfnError::DimensionMismatch { expected: domain.dimension(), found: codomain.dimension() }.into());
        }
        Ok(SampledMap { domain, codomain, evaluator: Arc::new(map), builtin: Some(map) })
    }

    /// `evaluator` must write `codomain.dimension()` coordinates.
    pub fn custom(evaluator: Arc<dyn MapEvaluator>, domain: IfnSpace, codomain: IfnSpace) -> Self {
        SampledMap { domain, codomain, evaluator, builtin: None }
    }

    pub fn domain(&self) -> &IfnSpace {
        &self.domain
    }

    pub fn codomain(&self) -> &IfnSpace {
        &self.codomain
    }

    pub fn builtin_map(&self) -> Option<BuiltinMap> {
        self.builtin
    }

    pub fn describe(&self) -> String {
        self.evaluator.describe()
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.codomain.dimension()];
        self.evaluator.apply(x, &mut out);
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Notion {
    Ifc,
    StrongIfc,
    SequentialIfc,
}

impl fmt::Display for Notion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Notion::Ifc => "IFC",
            Notion::StrongIfc => "strong IFC",
            Notion::SequentialIfc => "sequential IFC",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuityVerdict {
    pub notion: Notion,
    pub x0: Vec<f64>,
    pub verdict: Verdict,
}

impl ContinuityVerdict {
    pub fn status(&self) -> Status {
        self.verdict.status
    }

    /// First failing check's witness.
    pub fn witness(&self) -> Option<&Witness> {
        self.verdict.failures().next().and_then(|c| c.witness.as_ref())
    }
}

/// Search grids and probe counts for the sampled quantifiers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ContinuityGrids {
    pub eps_list: Vec<f64>,
    pub delta_grid: Vec<f64>,
    pub eps_alpha: Vec<(f64, f64)>,
    pub delta_beta: Vec<(f64, f64)>,
    pub probe_points: usize,
    pub seed: u64,
}

impl Default for ContinuityGrids {
    fn default() -> Self {
        let delta_grid = sampling::log_space(1e-6, 1e3, 32);
        let mut delta_beta: Vec<(f64, f64)> =
            delta_grid.iter().flat_map(|&d| [0.5, 0.9, 0.99].map(|b| (d, b))).collect();
        // The schedule delta = 1/(n+1), beta = 1 - 1/(n+1).
        delta_beta.extend((1..=16).map(|n| {
            let h = 1.0 / (n as f64 + 1.0);
            (h, 1.0 - h)
        }));
        ContinuityGrids {
            eps_list: vec![0.1, 1.0],
            delta_grid,
            eps_alpha: vec![(0.1, 0.5), (0.1, 0.9), (1.0, 0.5), (1.0, 0.9)],
            delta_beta,
            probe_points: 512,
            seed: 0,
        }
    }
}

const ESCALATION: std::ops::RangeInclusive<i32> = -40..=27;
const RANDOM_RAYS: usize = 4;

fn random_direction(rng: &mut impl Rng, dim: usize) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..=1.0)).collect();
        let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
        if n > 1e-3 {
            return v.into_iter().map(|c| c / n).collect();
        }
    }
}

/// Seeded shell probes around `x0` followed by radial escalation points.
/// Points that round to `x0` itself are dropped.
pub fn probe_points(x0: &[f64], count: usize, seed: u64) -> Vec<Vec<f64>> {
    let dim = x0.len();
    let mut rng = sampling::rng(seed);
    let mut out = Vec::new();
    let radii = sampling::log_space(1e-4, 1e2, count);
    for r in radii {
        let u = random_direction(&mut rng, dim);
        out.push(x0.iter().zip(&u).map(|(a, b)| a + r * b).collect());
    }
    let mut rays = Vec::new();
    for i in 0..dim {
        for s in [1.0, -1.0] {
            let mut e = vec![0.0; dim];
            e[i] = s;
            rays.push(e);
        }
    }
    for _ in 0..RANDOM_RAYS {
        rays.push(random_direction(&mut rng, dim));
    }
    for ray in &rays {
        for j in ESCALATION {
            let r = 2f64.powi(j);
            out.push(x0.iter().zip(ray).map(|(a, b)| a + r * b).collect());
        }
    }
    out.retain(|p: &Vec<f64>| p.as_slice() != x0);
    out
}

struct Probe {
    x: Vec<f64>,
    dx: Vec<f64>,
    df: Vec<f64>,
    df_zero: bool,
}

fn probes(map: &SampledMap, x0: &[f64], count: usize, seed: u64) -> Vec<Probe> {
    let fx0 = map.apply(x0);
    probe_points(x0, count, seed)
        .into_iter()
        .map(|x| {
            let fx = map.apply(&x);
            let dx = x.iter().zip(x0).map(|(a, b)| a - b).collect();
            let df: Vec<f64> = fx.iter().zip(&fx0).map(|(a, b)| a - b).collect();
            let df_zero = df.iter().all(|&c| c == 0.0);
            Probe { x, dx, df, df_zero }
        })
        .collect()
}

fn ensure_point(map: &SampledMap, x0: &Vector) -> Result<(), ContinuityError> {
    map.domain.check_dim(x0.coords())?;
    Ok(())
}

/// Strong continuity: for each `eps`, some `delta` (tried as `eps` first,
/// then the grid) with `N_V(df, eps) >= N_U(dx, delta)` and
/// `M_V(df, eps) < M_U(dx, delta)` on every probe.
pub fn check_strong_ifc_at(
    map: &SampledMap,
    x0: &Vector,
    eps_list: &[f64],
    delta_grid: &[f64],
    probe_count: usize,
    seed: u64,
) -> Result<ContinuityVerdict, ContinuityError> {
    ensure_point(map, x0)?;
    let ps = probes(map, x0.coords(), probe_count, seed);
    let (u, v) = (&map.domain, &map.codomain);
    let mut verdict = Verdict::new(format!("{} strongly IFC at {x0}", map.describe()));

    // Returns the violated degrees, if any.
    let defeats = |p: &Probe, eps: f64, delta: f64| {
        let du = u.degrees(&p.dx, delta);
        let dv = v.degrees(&p.df, eps);
        let n_ok = dv.n >= du.n;
        let m_ok = p.df_zero || dv.m < du.m;
        (!(n_ok && m_ok)).then_some((du, dv))
    };

    for &eps in eps_list {
        let candidates: Vec<f64> = std::iter::once(eps).chain(delta_grid.iter().copied()).collect();
        let name = format!("eps={eps}");
        let found = candidates.iter().copied().find(|&d| ps.iter().all(|p| defeats(p, eps, d).is_none()));
        let check = match found {
            Some(delta) => Check::pass(name).with_witness(Witness::new().scalar("eps", eps).scalar("delta", delta)),
            None => {
                let d_min = candidates.iter().copied().fold(f64::INFINITY, f64::min);
                // Prefer one probe defeating every delta; else the defeater of the smallest delta.
                let universal = ps.iter().find(|p| candidates.iter().all(|&d| defeats(p, eps, d).is_some()));
                let (p, delta, detail) = match universal {
                    Some(p) => (p, d_min, "one probe defeats every delta"),
                    None => (
                        ps.iter().find(|p| defeats(p, eps, d_min).is_some()).expect("some probe defeats d_min"),
                        d_min,
                        "every delta is defeated by some probe",
                    ),
                };
                let (du, dv) = defeats(p, eps, delta).expect("probe defeats delta");
                Check::fail(
                    name,
                    Witness::new()
                        .vector("x", &p.x)
                        .vector("x0", x0.coords())
                        .scalar("eps", eps)
                        .scalar("delta", delta)
                        .scalar("N_U", du.n)
                        .scalar("M_U", du.m)
                        .scalar("N_V", dv.n)
                        .scalar("M_V", dv.m),
                )
                .with_detail(detail)
            }
        };
        verdict.push(check);
    }
    verdict.note(format!("{} probe points", ps.len()));
    verdict.deviation(Deviation::SampledContinuityProbes);
    verdict.deviation(Deviation::StrictConditionAtCoincidence);
    Ok(ContinuityVerdict { notion: Notion::StrongIfc, x0: x0.coords().to_vec(), verdict })
}

/// Plain continuity: for each `(eps, alpha)`, some `(delta, beta)` (tried as
/// `(eps, alpha)` first) such that on every probe `N_U(dx, delta) > beta`
/// forces `N_V(df, eps) > alpha` and `M_U(dx, delta) < 1 - beta` forces
/// `M_V(df, eps) < 1 - alpha`.
pub fn check_ifc_at(
    map: &SampledMap,
    x0: &Vector,
    eps_alpha: &[(f64, f64)],
    delta_beta: &[(f64, f64)],
    probe_count: usize,
    seed: u64,
) -> Result<ContinuityVerdict, ContinuityError> {
    ensure_point(map, x0)?;
    let ps = probes(map, x0.coords(), probe_count, seed);
    let (u, v) = (&map.domain, &map.codomain);
    let mut verdict = Verdict::new(format!("{} IFC at {x0}", map.describe()));

    let defeats = |p: &Probe, eps: f64, alpha: f64, delta: f64, beta: f64| {
        let du = u.degrees(&p.dx, delta);
        let dv = v.degrees(&p.df, eps);
        let n_bad = du.n > beta && !(dv.n > alpha);
        let m_bad = du.m < 1.0 - beta && !(dv.m < 1.0 - alpha);
        (n_bad || m_bad).then_some((du, dv))
    };

    for &(eps, alpha) in eps_alpha {
        let candidates: Vec<(f64, f64)> = std::iter::once((eps, alpha)).chain(delta_beta.iter().copied()).collect();
        let name = format!("eps={eps} alpha={alpha}");
        let found = candidates
            .iter()
            .copied()
            .find(|&(d, b)| ps.iter().all(|p| defeats(p, eps, alpha, d, b).is_none()));
        let check = match found {
            Some((delta, beta)) => Check::pass(name).with_witness(
                Witness::new().scalar("eps", eps).scalar("alpha", alpha).scalar("delta", delta).scalar("beta", beta),
            ),
            None => {
                let universal = ps
                    .iter()
                    .find(|p| candidates.iter().all(|&(d, b)| defeats(p, eps, alpha, d, b).is_some()));
                let (p, (delta, beta), detail) = match universal {
                    Some(p) => (p, candidates[0], "one probe defeats every (delta, beta)"),
                    None => {
                        let (d, b) = candidates[0];
                        let p = ps.iter().find(|p| defeats(p, eps, alpha, d, b).is_some()).expect("some probe defeats");
                        (p, (d, b), "every (delta, beta) is defeated by some probe")
                    }
                };
                let (du, dv) = defeats(p, eps, alpha, delta, beta).expect("probe defeats pair");
                Check::fail(
                    name,
                    Witness::new()
                        .vector("x", &p.x)
                        .vector("x0", x0.coords())
                        .scalar("eps", eps)
                        .scalar("alpha", alpha)
                        .scalar("delta", delta)
                        .scalar("beta", beta)
                        .scalar("N_U", du.n)
                        .scalar("M_U", du.m)
                        .scalar("N_V", dv.n)
                        .scalar("M_V", dv.m),
                )
                .with_detail(detail)
            }
        };
        verdict.push(check);
    }
    verdict.note(format!("{} probe points", ps.len()));
    verdict.deviation(Deviation::SampledContinuityProbes);
    Ok(ContinuityVerdict { notion: Notion::Ifc, x0: x0.coords().to_vec(), verdict })
}

/// Probe sequences converging to `x0`: `x0 + 2^-n`, `x0 - 2^-n`,
/// `x0 + (-2)^-n`, `x0 + 1/n^2` and `x0 - 1/n^2`, in every coordinate.
pub fn default_probe_sequences(x0: &Vector) -> Vec<VectorSequence> {
    let base = x0.coords().to_vec();
    let make = |label: &str, len: usize, f: &dyn Fn(f64) -> f64| {
        VectorSequence::from_fn(len, base.len(), label, |n, out| {
            for (o, b) in out.iter_mut().zip(&base) {
                *o = b + f(n as f64);
            }
        })
        .expect("probe sequences are long enough and finite")
    };
    vec![
        make("x0 + 2^-n", 64, &|n| 0.5f64.powf(n)),
        make("x0 - 2^-n", 64, &|n| -(0.5f64.powf(n))),
        make("x0 + (-2)^-n", 64, &|n| (-0.5f64).powi(n as i32)),
        make("x0 + 1/n^2", 1000, &|n| 1.0 / (n * n)),
        make("x0 - 1/n^2", 1000, &|n| -1.0 / (n * n)),
    ]
}

/// Sequential continuity: every probe converging to `x0` must have images
/// converging to `f(x0)`.
pub fn check_sequential_ifc_at(
    map: &SampledMap,
    x0: &Vector,
    probes: &[VectorSequence],
    config: &ToleranceConfig,
) -> Result<ContinuityVerdict, ContinuityError> {
    ensure_point(map, x0)?;
    let fx0 = Vector::new(map.apply(x0.coords()))?;
    let mut verdict = Verdict::new(format!("{} sequentially IFC at {x0}", map.describe()));
    for probe in probes {
        let dom = check_convergence_to(&map.domain, probe, x0, config)?;
        if dom.status != ConvergenceStatus::Converges {
            return Err(ContinuityError::PreconditionFailed(format!(
                "probe {} does not converge to {x0}: {}",
                probe.label(),
                dom.status
            )));
        }
        let mut image = Vec::with_capacity(probe.len() * map.codomain.dimension());
        for term in probe.terms() {
            image.extend(map.apply(term));
        }
        let image = VectorSequence::from_flat(map.codomain.dimension(), image, format!("f({})", probe.label()))?;
        let cv = check_convergence_to(&map.codomain, &image, &fx0, config)?;
        let mut check = cv.to_verdict(probe.label()).checks.remove(0);
        check.detail = format!("image {} to f(x0)", cv.status);
        if check.status == Status::Fail {
            let w = check.witness.take().unwrap_or_default().vector("x0", x0.coords()).vector("f_x0", fx0.coords());
            let w = match w.get("n") {
                Some(n) => {
                    let i = n as usize - 1;
                    w.vector("x_n", probe.term(i)).vector("f_x_n", image.term(i))
                }
                None => w,
            };
            check.witness = Some(w);
        }
        verdict.push(check);
    }
    verdict.deviation(Deviation::FinitePrefixOnly);
    Ok(ContinuityVerdict { notion: Notion::SequentialIfc, x0: x0.coords().to_vec(), verdict })
}

pub fn check_strong_default(map: &SampledMap, x0: &Vector, grids: &ContinuityGrids) -> Result<ContinuityVerdict, ContinuityError> {
    check_strong_ifc_at(map, x0, &grids.eps_list, &grids.delta_grid, grids.probe_points, grids.seed)
}

pub fn check_ifc_default(map: &SampledMap, x0: &Vector, grids: &ContinuityGrids) -> Result<ContinuityVerdict, ContinuityError> {
    check_ifc_at(map, x0, &grids.eps_alpha, &grids.delta_beta, grids.probe_points, grids.seed)
}

pub fn check_sequential_default(map: &SampledMap, x0: &Vector, config: &ToleranceConfig) -> Result<ContinuityVerdict, ContinuityError> {
    check_sequential_ifc_at(map, x0, &default_probe_sequences(x0), config)
}

/// Strong continuity implies sequential continuity at every point.
pub fn verify_thm32_implication(
    map: &SampledMap,
    points: &[Vector],
    grids: &ContinuityGrids,
    config: &ToleranceConfig,
) -> Result<Verdict, ContinuityError> {
    let mut verdict = Verdict::new(format!("strong => sequential for {}", map.describe()));
    for x0 in points {
        let strong = check_strong_default(map, x0, grids)?;
        let seq = check_sequential_default(map, x0, config)?;
        let name = format!("x0={x0}");
        let detail = format!("strong {}, sequential {}", strong.status(), seq.status());
        let check = if strong.status() == Status::Pass && seq.status() == Status::Fail {
            Check::fail(name, seq.witness().cloned().unwrap_or_default().vector("x0", x0.coords()))
        } else {
            Check::pass(name)
        };
        verdict.push(check.with_detail(detail));
        if strong.status() == Status::Fail && seq.status() == Status::Pass {
            verdict.note(format!("converse falsified at x0={x0}: sequential holds, strong fails"));
        }
    }
    verdict.deviation(Deviation::SampledContinuityProbes);
    verdict.deviation(Deviation::FinitePrefixOnly);
    Ok(verdict)
}

/// Plain and sequential continuity agree at every point; a disagreement is
/// a grid artifact and reported as inconclusive.
pub fn verify_thm34_equivalence(
    map: &SampledMap,
    points: &[Vector],
    grids: &ContinuityGrids,
    config: &ToleranceConfig,
) -> Result<Verdict, ContinuityError> {
    let mut verdict = Verdict::new(format!("IFC <=> sequential for {}", map.describe()));
    for x0 in points {
        let ifc = check_ifc_default(map, x0, grids)?;
        let seq = check_sequential_default(map, x0, config)?;
        let name = format!("x0={x0}");
        let detail = format!("IFC {}, sequential {}", ifc.status(), seq.status());
        let check = if ifc.status() == seq.status() {
            Check::pass(name)
        } else {
            let mut w = Witness::new().vector("x0", x0.coords());
            for (prefix, cv) in [("ifc", &ifc), ("seq", &seq)] {
                if let Some(wit) = cv.witness() {
                    for (k, v) in &wit.scalars {
                        w = w.scalar(&format!("{prefix}_{k}"), *v);
                    }
                }
            }
            Check::new(name, Status::Inconclusive).with_witness(w)
        };
        verdict.push(check.with_detail(detail));
    }
    verdict.deviation(Deviation::SampledContinuityProbes);
    verdict.deviation(Deviation::FinitePrefixOnly);
    Ok(verdict)
}

/// At most `n` evenly strided indices into `0..len`.
fn strided(len: usize, n: usize) -> Vec<usize> {
    if len <= n {
        return (0..len).collect();
    }
    (0..n).map(|i| i * (len - 1) / (n - 1)).collect()
}

/// Image of a compact sample under a continuous map is compact.
pub fn compact_image_check(
    map: &SampledMap,
    domain_set: &SampledSet,
    grids: &ContinuityGrids,
    config: &ToleranceConfig,
) -> Result<Verdict, ContinuityError> {
    let dom = compactness_verdict(&map.domain, domain_set, config)?;
    if dom.status != Status::Pass {
        return Err(ContinuityError::PreconditionFailed(format!("domain sample is not certified compact: {}", dom.status)));
    }
    for i in strided(domain_set.points.len(), 8) {
        let x0 = &domain_set.points[i];
        let ifc = check_ifc_default(map, x0, grids)?;
        if ifc.status() != Status::Pass {
            return Err(ContinuityError::PreconditionFailed(format!("map is not IFC at {x0}: {}", ifc.status())));
        }
    }
    let image = SampledSet::new(
        format!("{}({})", map.describe(), domain_set.label),
        domain_set.closed,
        domain_set
            .points
            .iter()
            .map(|p| Vector::new(map.apply(p.coords())))
            .collect::<Result<_, _>>()?,
    )?;
    let img = compactness_verdict(&map.codomain, &image, config)?;
    let mut verdict = Verdict::new(format!("{} maps {} to a compact set", map.describe(), domain_set.label));
    verdict.push(Check::pass("domain compact"));
    verdict.push(Check::pass("continuity gate").with_detail("IFC at sampled domain points"));
    for c in img.checks {
        let name = format!("image {}", c.name);
        verdict.push(Check { name, ..c });
    }
    for d in img.deviations {
        verdict.deviation(d);
    }
    verdict.deviation(Deviation::SampledContinuityProbes);
    Ok(verdict)
}
