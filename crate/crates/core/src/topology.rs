//! Boundedness, closure membership and compactness for finite point
//! samples standing in for subsets of a finite-dimensional IFNLS.
//!
//! Closedness of a sample cannot be read off finitely many points, so it
//! travels with the set as a declared flag.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::alpha_norms::{alpha_norm_membership, AlphaLevel};
use crate::config::ToleranceConfig;
use crate::deviation::Deviation;
use crate::ifn_space::{verify_extended_conditions, IfnError, IfnSpace, Vector};
use crate::verdict::{Check, Status, Verdict, Witness};

#[derive(Debug, Error, PartialEq)]
pub enum TopologyError {
    #[error("sampled set has no points")]
    Empty,
    #[error("point {index} has dimension {found}, expected {expected}")]
    Ragged { index: usize, expected: usize, found: usize },
    #[error("invalid set json: {0}")]
    Json(String),
    #[error("distance evaluation failed: {0}")]
    Distance(String),
    #[error(transparent)]
    Ifn(#[from] IfnError),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampledSet {
    #[serde(default)]
    pub label: String,
    pub closed: bool,
    pub points: Vec<Vector>,
}

impl SampledSet {
    pub fn new(label: impl Into<String>, closed: bool, points: Vec<Vector>) -> Result<Self, TopologyError> {
        let set = SampledSet { label: label.into(), closed, points };
        set.validate()?;
        Ok(set)
    }

    pub fn from_json(text: &str) -> Result<Self, TopologyError> {
        let set: SampledSet = serde_json::from_str(text).map_err(|e| TopologyError::Json(e.to_string()))?;
        set.validate()?;
        Ok(set)
    }

    fn validate(&self) -> Result<(), TopologyError> {
        let first = self.points.first().ok_or(TopologyError::Empty)?;
        let expected = first.dim();
        for (index, p) in self.points.iter().enumerate() {
            if p.dim() != expected {
                return Err(TopologyError::Ragged { index, expected, found: p.dim() });
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    fn check_space(&self, space: &IfnSpace) -> Result<(), TopologyError> {
        space.check_dim(self.points[0].coords())?;
        Ok(())
    }

    fn display_label(&self) -> &str {
        if self.label.is_empty() {
            "set"
        } else {
            &self.label
        }
    }
}

/// Outcome of the `(t, r)` witness search for boundedness.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundedSearch {
    pub witness: Option<(f64, f64)>,
    pub attempts: usize,
    pub max_norm: Option<f64>,
    pub cap: f64,
    /// Point defeating the last attempted `(t, r)` with its degrees.
    pub last_violation: Option<(Vec<f64>, f64, f64, f64, f64)>,
}

impl BoundedSearch {
    pub fn found(&self) -> bool {
        self.witness.is_some()
    }

    pub fn to_check(&self) -> Check {
        match (self.witness, &self.last_violation) {
            (Some((t, r)), _) => {
                let mut w = Witness::new().scalar("t", t).scalar("r", r);
                if let Some(m) = self.max_norm {
                    w = w.scalar("max_norm", m);
                }
                Check::pass("bounded").with_witness(w).with_detail(format!("N > {} and M < {r} at t = {t}", 1.0 - r))
            }
            (None, Some((x, t, r, n, m))) => Check::fail(
                "bounded",
                Witness::new().vector("x", x).scalar("t", *t).scalar("r", *r).scalar("N", *n).scalar("M", *m),
            )
            .with_detail(format!("no witness found up to t = {}", self.cap)),
            (None, None) => Check::fail("bounded", Witness::new().scalar("t", self.cap))
                .with_detail(format!("no witness found up to t = {}", self.cap)),
        }
    }
}

/// Searches `r` over `r_levels` and `t` by doubling up to `bound_t_cap`.
/// Standard spaces start at `t = k max||x|| (1 - r) / r`, just above the
/// analytic threshold.
pub fn search_bounded_witness<'a, I>(space: &IfnSpace, points: impl Fn() -> I, config: &ToleranceConfig) -> BoundedSearch
where
    I: Iterator<Item = &'a [f64]>,
{
    let cap = config.bound_t_cap;
    let max_norm = space.standard_ifn().map(|s| points().map(|p| s.crisp().norm(p)).fold(0.0, f64::max));
    let mut out = BoundedSearch { witness: None, attempts: 0, max_norm, cap, last_violation: None };

    for &r in &config.r_levels {
        let mut t = match (space.standard_ifn(), max_norm) {
            (Some(s), Some(m)) if m > 0.0 => (s.k() * m * (1.0 - r) / r * (1.0 + 1e-9)).max(f64::MIN_POSITIVE),
            _ => 1.0,
        };
        loop {
            let t_try = t.min(cap);
            out.attempts += 1;
            let bad = points().find_map(|p| {
                let d = space.degrees(p, t_try);
                (!(d.n > 1.0 - r && d.m < r)).then(|| (p.to_vec(), t_try, r, d.n, d.m))
            });
            match bad {
                None => {
                    out.witness = Some((t_try, r));
                    return out;
                }
                Some(v) => out.last_violation = Some(v),
            }
            if t_try >= cap {
                break;
            }
            t *= 2.0;
        }
    }
    out
}

pub fn check_set_bounded(space: &IfnSpace, set: &SampledSet, config: &ToleranceConfig) -> Result<Verdict, TopologyError> {
    set.check_space(space)?;
    let search = search_bounded_witness(space, || set.points.iter().map(Vector::coords), config);
    let mut v = Verdict::new(format!("{} is bounded", set.display_label()));
    v.push(search.to_check());
    Ok(v)
}

/// Distance used for closure: the crisp norm for standard spaces, the
/// membership alpha-norm at 1/2 otherwise.
fn distance(space: &IfnSpace, a: &[f64], b: &[f64], config: &ToleranceConfig) -> Result<f64, TopologyError> {
    let d: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
    match space.crisp_norm(&d) {
        Some(n) => Ok(n),
        None => {
            let half = AlphaLevel::new(0.5).expect("0.5 is a valid level");
            alpha_norm_membership(space, &Vector::from_slice_unchecked(&d), half, config)
                .map(|r| r.value)
                .map_err(|e| TopologyError::Distance(e.to_string()))
        }
    }
}

/// `x` is in the closure of the sample when a sample point lies within
/// `eps_limit`, or when the sample accumulates at `x`: at least
/// `tail_window + 1` distinct distances to `x` with the nearest at most
/// `finest r level` times the farthest.
pub fn closure_membership(space: &IfnSpace, set: &SampledSet, x: &Vector, config: &ToleranceConfig) -> Result<Verdict, TopologyError> {
    set.check_space(space)?;
    space.check_dim(x.coords())?;
    let dists = set
        .points
        .iter()
        .map(|p| distance(space, p.coords(), x.coords(), config))
        .collect::<Result<Vec<_>, _>>()?;
    let (nearest, d_min) = dists
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (i, d)| if d < acc.1 { (i, d) } else { acc });
    let d_max = dists.iter().copied().fold(0.0, f64::max);
    let mut distinct = dists.clone();
    distinct.sort_by(|a, b| b.total_cmp(a));
    distinct.dedup();

    let near = set.points[nearest].coords();
    let diff: Vec<f64> = near.iter().zip(x.coords()).map(|(a, b)| a - b).collect();
    let (t_worst, n_worst) = config
        .t_grid
        .iter()
        .map(|&t| (t, space.degrees(&diff, t).n))
        .fold((f64::NAN, f64::INFINITY), |acc, c| if c.1 < acc.1 { c } else { acc });
    let witness = Witness::new()
        .vector("x", x.coords())
        .vector("nearest", near)
        .scalar("distance", d_min)
        .scalar("t", t_worst)
        .scalar("N", n_worst);

    let accumulates = distinct.len() > config.tail_window && d_min <= config.finest_level() * d_max;
    let check = if d_min <= config.eps_limit {
        Check::pass("closure").with_witness(witness).with_detail("a sample point lies within eps_limit")
    } else if accumulates {
        Check::pass("closure")
            .with_witness(witness.scalar("chain", distinct.len() as f64).scalar("farthest", d_max))
            .with_detail("sample points accumulate at x")
    } else {
        Check::fail("closure", witness).with_detail("nearest sample point stays away from x")
    };
    let mut v = Verdict::new(format!("{x} in closure of {}", set.display_label()));
    v.push(check);
    v.deviation(Deviation::SampledClosure);
    Ok(v)
}

/// Compact iff declared closed and bounded.
pub fn compactness_verdict(space: &IfnSpace, set: &SampledSet, config: &ToleranceConfig) -> Result<Verdict, TopologyError> {
    set.check_space(space)?;
    let mut v = Verdict::new(format!("{} is compact", set.display_label()));

    let ext = verify_extended_conditions(space, 50, 0, config);
    if ext.status != Status::Pass {
        v.push(
            Check::new("precondition", Status::Inconclusive)
                .with_detail(format!("conditions (xii)-(xiv) not accepted: {}", ext.status)),
        );
    }

    v.push(if set.closed {
        Check::pass("closed").with_detail("declared")
    } else {
        Check::fail("closed", Witness::new().scalar("closed", 0.0)).with_detail("declared open")
    });
    let bounded = check_set_bounded(space, set, config)?;
    for c in bounded.checks {
        v.push(c);
    }
    v.deviation(Deviation::DeclaredClosedness);
    Ok(v)
}

/// For a sequence drawn from a finite sample (as point indices), the most
/// frequent point and the positions where it occurs: a constant, hence
/// convergent, subsequence.
pub fn convergent_subsequence(draws: &[usize]) -> Option<(usize, Vec<usize>)> {
    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
    for &d in draws {
        *counts.entry(d).or_default() += 1;
    }
    let (&point, _) = counts.iter().max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)))?;
    let positions = draws.iter().enumerate().filter(|(_, &d)| d == point).map(|(i, _)| i + 1).collect();
    Some((point, positions))
}
