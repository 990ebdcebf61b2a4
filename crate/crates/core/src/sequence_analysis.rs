//! Convergence, Cauchy, boundedness and limit-arithmetic diagnostics on a
//! finite prefix `x_1..x_L` of a vector sequence.
//!
//! "For all t > 0" and "for all 0 < r < 1" are read on the configured grids.
//! A `(t, r)` pair settles when every one of the last `tail_window + 1`
//! terms satisfies `N > 1 - r` and `M < r`; its `n0` is one past the last
//! violation. A pair whose violation on the second half of the tail is no
//! smaller than on the first half is stagnant, which is reported as
//! divergence. Everything else is inconclusive.

use std::fmt;

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::ToleranceConfig;
use crate::deviation::Deviation;
use crate::fuzzy_algebra::DegreePair;
use crate::ifn_space::{IfnError, IfnSpace, Vector};
use crate::topology;
use crate::verdict::{Check, Status, Verdict, Witness};

/// Pivots below this make a basis unusable for coordinate extraction.
pub const PIVOT_EPS: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum SequenceError {
    #[error("sequence needs at least 2 terms, got {0}")]
    TooShort(usize),
    #[error("term {term} has dimension {found}, expected {expected}")]
    Ragged { term: usize, expected: usize, found: usize },
    #[error("csv: {0}")]
    Csv(String),
    #[error("csv header must be x1,...,xd; got {0:?}")]
    Header(String),
    #[error("csv row {row}, column {col}: cannot parse {text:?} as a finite real")]
    Parse { row: usize, col: usize, text: String },
    #[error("index {0} outside 1..=L")]
    IndexOutOfRange(usize),
    #[error("subsequence indices must be strictly increasing")]
    IndicesNotIncreasing,
    #[error("sequences differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("basis is degenerate (pivot {0:e})")]
    DegenerateBasis(f64),
    #[error("basis must have exactly {expected} vectors, got {found}")]
    BasisSize { expected: usize, found: usize },
    #[error("coordinate {coord} has not settled on the tail (spread {spread:e})")]
    TailNotSettled { coord: usize, spread: f64 },
    #[error(transparent)]
    Ifn(#[from] IfnError),
}

/// A finite prefix of a sequence in `R^d`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorSequence {
    dim: usize,
    data: Vec<f64>,
    label: String,
}

impl VectorSequence {
    pub fn from_flat(dim: usize, data: Vec<f64>, label: impl Into<String>) -> Result<Self, SequenceError> {
        if dim == 0 {
            return Err(IfnError::ZeroDimension.into());
        }
        if data.len() % dim != 0 {
            return Err(SequenceError::Ragged { term: data.len() / dim + 1, expected: dim, found: data.len() % dim });
        }
        if let Some(i) = data.iter().position(|c| !c.is_finite()) {
            return Err(SequenceError::Ifn(IfnError::NonFinite { index: i % dim }));
        }
        let len = data.len() / dim;
        if len < 2 {
            return Err(SequenceError::TooShort(len));
        }
        Ok(VectorSequence { dim, data, label: label.into() })
    }

    pub fn from_terms(terms: &[Vector], label: impl Into<String>) -> Result<Self, SequenceError> {
        let dim = terms.first().map_or(1, Vector::dim);
        let mut data = Vec::with_capacity(terms.len() * dim);
        for (i, t) in terms.iter().enumerate() {
            if t.dim() != dim {
                return Err(SequenceError::Ragged { term: i + 1, expected: dim, found: t.dim() });
            }
            data.extend_from_slice(t.coords());
        }
        Self::from_flat(dim, data, label)
    }

    /// Builds `x_1..x_len` from `f(n, out)` with 1-based `n`.
    pub fn from_fn(
        len: usize,
        dim: usize,
        label: impl Into<String>,
        mut f: impl FnMut(usize, &mut [f64]),
    ) -> Result<Self, SequenceError> {
        let mut data = vec![0.0; len * dim];
        if dim > 0 {
            for (i, chunk) in data.chunks_exact_mut(dim).enumerate() {
                f(i + 1, chunk);
            }
        }
        Self::from_flat(dim, data, label)
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Term `x_{i+1}` (0-based access).
    pub fn term(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn terms(&self) -> std::slice::ChunksExact<'_, f64> {
        self.data.chunks_exact(self.dim)
    }

    pub fn last(&self) -> &[f64] {
        self.term(self.len() - 1)
    }

    /// Subsequence at 1-based, strictly increasing `indices`.
    pub fn subsequence(&self, indices: &[usize]) -> Result<Self, SequenceError> {
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SequenceError::IndicesNotIncreasing);
        }
        let mut data = Vec::with_capacity(indices.len() * self.dim);
        for &n in indices {
            if n == 0 || n > self.len() {
                return Err(SequenceError::IndexOutOfRange(n));
            }
            data.extend_from_slice(self.term(n - 1));
        }
        Self::from_flat(self.dim, data, format!("{}[sub]", self.label))
    }

    /// Termwise combination of two sequences of equal length and dimension.
    pub fn zip_with(&self, other: &Self, label: impl Into<String>, f: impl Fn(f64, f64) -> f64) -> Result<Self, SequenceError> {
        if self.len() != other.len() {
            return Err(SequenceError::LengthMismatch(self.len(), other.len()));
        }
        if self.dim != other.dim {
            return Err(IfnError::DimensionMismatch { expected: self.dim, found: other.dim }.into());
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(*a, *b)).collect();
        Self::from_flat(self.dim, data, label)
    }

    pub fn map_coords(&self, label: impl Into<String>, f: impl Fn(f64) -> f64) -> Result<Self, SequenceError> {
        Self::from_flat(self.dim, self.data.iter().map(|&a| f(a)).collect(), label)
    }

    /// Parses `# label: ...` (optional), a header `x1,...,xd`, then one row per term.
    pub fn parse_csv(text: &str) -> Result<Self, SequenceError> {
        let mut label = String::new();
        let mut body = text;
        if let Some(rest) = text.trim_start().strip_prefix('#') {
            let (line, tail) = rest.split_once('\n').unwrap_or((rest, ""));
            if let Some(l) = line.trim().strip_prefix("label:") {
                label = l.trim().to_owned();
            }
            body = tail;
        }
        let mut reader = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(body.as_bytes());
        let header = reader.headers().map_err(|e| SequenceError::Csv(e.to_string()))?.clone();
        let dim = header.len();
        let expected = (1..=dim).map(|i| format!("x{i}")).collect::<Vec<_>>();
        if dim == 0 || header.iter().ne(expected.iter().map(String::as_str)) {
            return Err(SequenceError::Header(header.iter().collect::<Vec<_>>().join(",")));
        }
        let mut data = Vec::new();
        for (row, record) in reader.records().enumerate() {
            let record = record.map_err(|e| SequenceError::Csv(e.to_string()))?;
            for (col, field) in record.iter().enumerate() {
                match field.parse::<f64>() {
                    Ok(v) if v.is_finite() => data.push(v),
                    _ => return Err(SequenceError::Parse { row: row + 1, col: col + 1, text: field.to_owned() }),
                }
            }
        }
        Self::from_flat(dim, data, label)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        if !self.label.is_empty() {
            out.push_str(&format!("# label: {}\n", self.label));
        }
        let header: Vec<String> = (1..=self.dim).map(|i| format!("x{i}")).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for term in self.terms() {
            let row: Vec<String> = term.iter().map(|v| format!("{v:?}")).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConvergenceStatus {
    Converges,
    Diverges,
    Inconclusive,
}

impl ConvergenceStatus {
    pub fn as_status(self) -> Status {
        match self {
            ConvergenceStatus::Converges => Status::Pass,
            ConvergenceStatus::Diverges => Status::Fail,
            ConvergenceStatus::Inconclusive => Status::Inconclusive,
        }
    }
}

impl fmt::Display for ConvergenceStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConvergenceStatus::Converges => "converges",
            ConvergenceStatus::Diverges => "diverges",
            ConvergenceStatus::Inconclusive => "inconclusive",
        };
        f.write_str(s)
    }
}

/// Per-`(t, r)` (and per offset `p` for Cauchy checks) outcome.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairOutcome {
    pub t: f64,
    pub r: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<usize>,
    /// 1-based index from which every term complies, when the pair settled.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n0: Option<usize>,
    /// 1-based index of the last violating term and its degrees.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub last_violation: Option<(usize, f64, f64)>,
    pub stagnant: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceVerdict {
    pub subject: String,
    pub status: ConvergenceStatus,
    pub terms: usize,
    pub pairs: Vec<PairOutcome>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limit: Option<Vec<f64>>,
}

impl ConvergenceVerdict {
    /// Largest `n0` over all pairs once converged.
    pub fn n0_max(&self) -> Option<usize> {
        if self.status != ConvergenceStatus::Converges {
            return None;
        }
        self.pairs.iter().map(|p| p.n0.unwrap_or(1)).max()
    }

    fn decisive_pair(&self) -> Option<&PairOutcome> {
        match self.status {
            ConvergenceStatus::Converges => None,
            ConvergenceStatus::Diverges => self.pairs.iter().find(|p| p.stagnant),
            ConvergenceStatus::Inconclusive => self.pairs.iter().find(|p| p.n0.is_none()),
        }
    }

    /// A single-check [`Verdict`] named `name`.
    pub fn to_verdict(&self, name: &str) -> Verdict {
        let mut check = Check::new(name, self.status.as_status()).with_detail(format!("{} on {} terms", self.status, self.terms));
        let mut w = Witness::new();
        if let Some(n0) = self.n0_max() {
            w = w.scalar("n0", n0 as f64);
        }
        if let Some(p) = self.decisive_pair() {
            w = w.scalar("t", p.t).scalar("r", p.r);
            if let Some(off) = p.p {
                w = w.scalar("p", off as f64);
            }
            if let Some((n, deg_n, deg_m)) = p.last_violation {
                w = w.scalar("n", n as f64).scalar("N", deg_n).scalar("M", deg_m);
            }
        }
        if let Some(l) = &self.limit {
            w = w.vector("limit", l);
        }
        if !(w.scalars.is_empty() && w.vectors.is_empty()) {
            check = check.with_witness(w);
        }
        let mut v = Verdict::new(self.subject.clone()).with_check(check);
        v.deviation(Deviation::FinitePrefixOnly);
        v
    }
}

/// Fills `out[j]` with degrees of `x` at `t_grid[j]`, computing the crisp
/// norm once for standard spaces.
fn degree_row(space: &IfnSpace, x: &[f64], t_grid: &[f64], out: &mut [DegreePair]) {
    if let Some(s) = space.standard_ifn() {
        let norm = s.crisp().norm(x);
        for (o, &t) in out.iter_mut().zip(t_grid) {
            *o = s.degrees_from_norm(norm, t);
        }
    } else {
        for (o, &t) in out.iter_mut().zip(t_grid) {
            *o = space.degrees(x, t);
        }
    }
}

struct PairScan {
    last_violation: Option<(usize, f64, f64)>,
    first_half_max: f64,
    second_half_max: f64,
}

/// Tail-window scan over `len` difference terms produced by `diff(i, out)`.
fn scan_pairs(
    space: &IfnSpace,
    len: usize,
    p: Option<usize>,
    diff: impl Fn(usize, &mut [f64]),
    config: &ToleranceConfig,
) -> (ConvergenceStatus, Vec<PairOutcome>) {
    let t_grid = &config.t_grid;
    let r_levels = &config.r_levels;
    let w = config.tail_window;
    let (nt, nr) = (t_grid.len(), r_levels.len());
    let mut scans: Vec<PairScan> = (0..nt * nr)
        .map(|_| PairScan { last_violation: None, first_half_max: f64::NEG_INFINITY, second_half_max: f64::NEG_INFINITY })
        .collect();

    if len < w + 1 {
        let pairs = iproduct(t_grid, r_levels)
            .map(|(t, r)| PairOutcome { t, r, p, n0: None, last_violation: None, stagnant: false })
            .collect();
        return (ConvergenceStatus::Inconclusive, pairs);
    }

    let tail_start = len - 1 - w;
    let split = tail_start + (w + 1) / 2;
    let mut buf = vec![0.0; space.dimension()];
    let mut row = vec![DegreePair::CERTAIN; nt];
    let mut open = nt * nr;
    for i in (0..len).rev() {
        if i < tail_start && open == 0 {
            break;
        }
        diff(i, &mut buf);
        degree_row(space, &buf, t_grid, &mut row);
        for (ti, d) in row.iter().enumerate() {
            for (ri, &r) in r_levels.iter().enumerate() {
                let s = &mut scans[ti * nr + ri];
                let gap = ((1.0 - r) - d.n).max(d.m - r);
                if i >= tail_start {
                    let slot = if i >= split { &mut s.second_half_max } else { &mut s.first_half_max };
                    *slot = slot.max(gap);
                }
                if gap >= 0.0 && s.last_violation.is_none() {
                    s.last_violation = Some((i + 1, d.n, d.m));
                    open -= 1;
                }
            }
        }
    }

    let mut pairs = Vec::with_capacity(nt * nr);
    let mut all_settled = true;
    let mut any_stagnant = false;
    for (ti, &t) in t_grid.iter().enumerate() {
        for (ri, &r) in r_levels.iter().enumerate() {
            let s = &scans[ti * nr + ri];
            let n0 = match s.last_violation {
                None => Some(1),
                Some((n, _, _)) if n <= tail_start => Some(n + 1),
                _ => None,
            };
            let stagnant = n0.is_none()
                && s.second_half_max >= 0.0
                && s.second_half_max >= s.first_half_max - config.eps_degree;
            all_settled &= n0.is_some();
            any_stagnant |= stagnant;
            pairs.push(PairOutcome { t, r, p, n0, last_violation: s.last_violation, stagnant });
        }
    }
    let status = if all_settled {
        ConvergenceStatus::Converges
    } else if any_stagnant {
        ConvergenceStatus::Diverges
    } else {
        ConvergenceStatus::Inconclusive
    };
    (status, pairs)
}

fn iproduct<'a>(a: &'a [f64], b: &'a [f64]) -> impl Iterator<Item = (f64, f64)> + 'a {
    a.iter().flat_map(move |&x| b.iter().map(move |&y| (x, y)))
}

fn combine_convergence(a: ConvergenceStatus, b: ConvergenceStatus) -> ConvergenceStatus {
    use ConvergenceStatus::*;
    match (a, b) {
        (Diverges, _) | (_, Diverges) => Diverges,
        (Inconclusive, _) | (_, Inconclusive) => Inconclusive,
        _ => Converges,
    }
}

fn check_dims(space: &IfnSpace, seq: &VectorSequence) -> Result<(), SequenceError> {
    if seq.dim() != space.dimension() {
        return Err(IfnError::DimensionMismatch { expected: space.dimension(), found: seq.dim() }.into());
    }
    Ok(())
}

/// Checks `N(x_n - x, t) -> 1` and `M(x_n - x, t) -> 0` on the grids.
pub fn check_convergence_to(
    space: &IfnSpace,
    seq: &VectorSequence,
    x: &Vector,
    config: &ToleranceConfig,
) -> Result<ConvergenceVerdict, SequenceError> {
    check_dims(space, seq)?;
    space.check_dim(x.coords())?;
    let target = x.coords();
    let diff = |i: usize, out: &mut [f64]| {
        for ((o, a), b) in out.iter_mut().zip(seq.term(i)).zip(target) {
            *o = a - b;
        }
    };
    let (status, pairs) = scan_pairs(space, seq.len(), None, diff, config);
    Ok(ConvergenceVerdict {
        subject: format!("{} -> {x}", display_label(seq)),
        status,
        terms: seq.len(),
        pairs,
        limit: (status == ConvergenceStatus::Converges).then(|| target.to_vec()),
    })
}

fn display_label(seq: &VectorSequence) -> &str {
    if seq.label().is_empty() {
        "sequence"
    } else {
        seq.label()
    }
}

/// Checks `N(x_{n+p} - x_n, t) -> 1` and `M -> 0` for `p = 1..=p_max`.
pub fn check_cauchy(
    space: &IfnSpace,
    seq: &VectorSequence,
    p_max: usize,
    config: &ToleranceConfig,
) -> Result<ConvergenceVerdict, SequenceError> {
    check_dims(space, seq)?;
    if p_max == 0 {
        return Err(SequenceError::PreconditionFailed("p_max must be at least 1".into()));
    }
    let mut status = ConvergenceStatus::Converges;
    let mut pairs = Vec::new();
    for p in 1..=p_max {
        if p >= seq.len() {
            status = combine_convergence(status, ConvergenceStatus::Inconclusive);
            break;
        }
        let diff = |i: usize, out: &mut [f64]| {
            for ((o, a), b) in out.iter_mut().zip(seq.term(i + p)).zip(seq.term(i)) {
                *o = a - b;
            }
        };
        let (s, ps) = scan_pairs(space, seq.len() - p, Some(p), diff, config);
        status = combine_convergence(status, s);
        pairs.extend(ps);
    }
    Ok(ConvergenceVerdict {
        subject: format!("{} is Cauchy", display_label(seq)),
        status,
        terms: seq.len(),
        pairs,
        limit: None,
    })
}

/// Searches a `(t0, r0)` with `N(x_n, t0) > 1 - r0` and `M(x_n, t0) < r0`
/// for every term of the prefix.
pub fn check_bounded(space: &IfnSpace, seq: &VectorSequence, config: &ToleranceConfig) -> Result<Verdict, SequenceError> {
    check_dims(space, seq)?;
    let search = topology::search_bounded_witness(space, || seq.terms(), config);
    let mut v = Verdict::new(format!("{} is bounded", display_label(seq)));
    v.push(search.to_check());
    v.note(format!("witness holds on the {}-term prefix", seq.len()));
    v.deviation(Deviation::FinitePrefixOnly);
    Ok(v)
}

/// Both targets converging forces `N(x - y, t) >= 1 - eps_limit` on the grid.
pub fn verify_limit_uniqueness(
    space: &IfnSpace,
    seq: &VectorSequence,
    x: &Vector,
    y: &Vector,
    config: &ToleranceConfig,
) -> Result<Verdict, SequenceError> {
    let cx = check_convergence_to(space, seq, x, config)?;
    let cy = check_convergence_to(space, seq, y, config)?;
    let mut v = Verdict::new(format!("limit uniqueness for {}", display_label(seq)));
    use ConvergenceStatus::*;
    let check = match (cx.status, cy.status) {
        (Converges, Converges) => {
            let d = x - y;
            let worst = config
                .t_grid
                .iter()
                .map(|&t| (t, space.degrees(d.coords(), t).n))
                .fold((f64::NAN, f64::INFINITY), |acc, c| if c.1 < acc.1 { c } else { acc });
            if worst.1 >= 1.0 - config.eps_limit {
                Check::pass("uniqueness").with_detail("both targets accepted and indistinguishable on the grid")
            } else {
                Check::fail(
                    "uniqueness",
                    Witness::new().vector("x", x.coords()).vector("y", y.coords()).scalar("t", worst.0).scalar("N", worst.1),
                )
                .with_detail("two distinct limits accepted")
            }
        }
        (Diverges, _) | (_, Diverges) => {
            Check::pass("uniqueness").with_detail(format!("x: {}, y: {}; at most one target accepted", cx.status, cy.status))
        }
        _ => Check::new("uniqueness", Status::Inconclusive)
            .with_witness(
                Witness::new()
                    .vector("x", x.coords())
                    .vector("y", y.coords())
                    .scalar("n0_x", cx.n0_max().unwrap_or(0) as f64)
                    .scalar("n0_y", cy.n0_max().unwrap_or(0) as f64),
            )
            .with_detail(format!("x: {}, y: {}; prefix cannot separate the targets", cx.status, cy.status)),
    };
    v.push(check);
    v.deviation(Deviation::FinitePrefixOnly);
    Ok(v)
}

/// Sum and scalar-multiple rules for limits.
pub fn verify_limit_arithmetic(
    space: &IfnSpace,
    seq_a: &VectorSequence,
    lim_a: &Vector,
    seq_b: &VectorSequence,
    lim_b: &Vector,
    c: f64,
    config: &ToleranceConfig,
) -> Result<Verdict, SequenceError> {
    if !(c.is_finite() && c != 0.0) {
        return Err(SequenceError::PreconditionFailed(format!("scalar must be nonzero and finite, got {c}")));
    }
    for (seq, lim) in [(seq_a, lim_a), (seq_b, lim_b)] {
        let conv = check_convergence_to(space, seq, lim, config)?;
        if conv.status != ConvergenceStatus::Converges {
            return Err(SequenceError::PreconditionFailed(format!("{} does not converge to {lim}: {}", display_label(seq), conv.status)));
        }
    }
    let sum = seq_a.zip_with(seq_b, "sum", |a, b| a + b)?;
    let scaled = seq_a.map_coords("scaled", |a| c * a)?;
    let sum_v = check_convergence_to(space, &sum, &(lim_a + lim_b), config)?;
    let scaled_v = check_convergence_to(space, &scaled, &(c * lim_a), config)?;

    let mut v = Verdict::new(format!("limit arithmetic for {} and {}", display_label(seq_a), display_label(seq_b)));
    for (name, cv) in [("sum", sum_v), ("scalar multiple", scaled_v)] {
        let mut check = cv.to_verdict(name).checks.remove(0);
        if check.status == Status::Fail && check.witness.is_none() {
            check.witness = Some(Witness::new());
        }
        v.push(check);
    }
    v.deviation(Deviation::FinitePrefixOnly);
    Ok(v)
}

/// If the sequence converges to `x`, the subsequence at `indices` must too.
pub fn check_subsequence_inheritance(
    space: &IfnSpace,
    seq: &VectorSequence,
    indices: &[usize],
    x: &Vector,
    config: &ToleranceConfig,
) -> Result<Verdict, SequenceError> {
    let sub = seq.subsequence(indices)?;
    let full = check_convergence_to(space, seq, x, config)?;
    let part = check_convergence_to(space, &sub, x, config)?;
    let mut v = Verdict::new(format!("subsequence inheritance for {}", display_label(seq)));
    if full.status == ConvergenceStatus::Converges {
        let mut check = part.to_verdict("inherits limit").checks.remove(0);
        check.detail = format!("full sequence converges; subsequence {}", part.status);
        v.push(check);
    } else {
        v.push(Check::pass("inherits limit").with_detail(format!("full sequence {}; nothing to inherit", full.status)));
        v.note(format!("subsequence {} on its own; the converse direction is not claimed", part.status));
    }
    v.deviation(Deviation::FinitePrefixOnly);
    Ok(v)
}

/// Crisp tail check `||x_n - x|| <= eps_limit`, three-valued in the same way
/// as the fuzzy scan.
fn crisp_tail_status(values: impl DoubleEndedIterator<Item = f64>, len: usize, config: &ToleranceConfig) -> ConvergenceStatus {
    let w = config.tail_window;
    if len < w + 1 {
        return ConvergenceStatus::Inconclusive;
    }
    let tail: Vec<f64> = values.rev().take(w + 1).collect::<Vec<_>>().into_iter().rev().collect();
    if tail.iter().all(|&v| v <= config.eps_limit) {
        return ConvergenceStatus::Converges;
    }
    let h = (w + 1) / 2;
    let gap = |s: &[f64]| s.iter().fold(f64::NEG_INFINITY, |m, &v| m.max(v - config.eps_limit));
    let (first, second) = (gap(&tail[..h]), gap(&tail[h..]));
    if second > 0.0 && second >= first - config.eps_degree {
        ConvergenceStatus::Diverges
    } else {
        ConvergenceStatus::Inconclusive
    }
}

pub fn crisp_convergence(space: &IfnSpace, seq: &VectorSequence, x: &Vector, config: &ToleranceConfig) -> Result<ConvergenceStatus, SequenceError> {
    check_dims(space, seq)?;
    space.check_dim(x.coords())?;
    let crisp = space
        .standard_ifn()
        .ok_or_else(|| SequenceError::PreconditionFailed("crisp comparison needs a standard space".into()))?
        .crisp();
    let target = x.coords();
    let mut buf = vec![0.0; seq.dim()];
    let values = seq.terms().map(|term| {
        for ((o, a), b) in buf.iter_mut().zip(term).zip(target) {
            *o = a - b;
        }
        crisp.norm(&buf)
    });
    Ok(crisp_tail_status(values.collect::<Vec<_>>().into_iter(), seq.len(), config))
}

pub fn crisp_cauchy(space: &IfnSpace, seq: &VectorSequence, p_max: usize, config: &ToleranceConfig) -> Result<ConvergenceStatus, SequenceError> {
    check_dims(space, seq)?;
    let crisp = space
        .standard_ifn()
        .ok_or_else(|| SequenceError::PreconditionFailed("crisp comparison needs a standard space".into()))?
        .crisp();
    let mut status = ConvergenceStatus::Converges;
    let mut buf = vec![0.0; seq.dim()];
    for p in 1..=p_max.max(1) {
        if p >= seq.len() {
            return Ok(combine_convergence(status, ConvergenceStatus::Inconclusive));
        }
        let start = (seq.len() - p).saturating_sub(config.tail_window + 1);
        let values: Vec<f64> = (start..seq.len() - p)
            .map(|i| {
                for ((o, a), b) in buf.iter_mut().zip(seq.term(i + p)).zip(seq.term(i)) {
                    *o = a - b;
                }
                crisp.norm(&buf)
            })
            .collect();
        status = combine_convergence(status, crisp_tail_status(values.into_iter(), seq.len() - p, config));
    }
    Ok(status)
}

fn agreement(name: &str, fuzzy: ConvergenceStatus, crisp: ConvergenceStatus) -> Check {
    use ConvergenceStatus::*;
    let status = match (fuzzy, crisp) {
        (a, b) if a == b => Status::Pass,
        (Converges, Diverges) | (Diverges, Converges) => Status::Fail,
        _ => Status::Inconclusive,
    };
    let mut check = Check::new(name, status).with_detail(format!("fuzzy {fuzzy}, crisp {crisp}"));
    if status == Status::Fail {
        check = check.with_witness(Witness::new().scalar("fuzzy_converges", (fuzzy == Converges) as u8 as f64));
    }
    check
}

/// Fuzzy and crisp verdicts must coincide for convergence to `x` and for
/// the Cauchy property in a standard space.
pub fn crisp_fuzzy_equivalence(
    space: &IfnSpace,
    seq: &VectorSequence,
    x: &Vector,
    config: &ToleranceConfig,
) -> Result<Verdict, SequenceError> {
    let fuzzy_conv = check_convergence_to(space, seq, x, config)?.status;
    let crisp_conv = crisp_convergence(space, seq, x, config)?;
    let fuzzy_cauchy = check_cauchy(space, seq, config.cauchy_p_max, config)?.status;
    let crisp_c = crisp_cauchy(space, seq, config.cauchy_p_max, config)?;
    let mut v = Verdict::new(format!("crisp/fuzzy agreement for {}", display_label(seq)));
    v.push(agreement("convergence agreement", fuzzy_conv, crisp_conv));
    v.push(agreement("cauchy agreement", fuzzy_cauchy, crisp_c));
    v.deviation(Deviation::FinitePrefixOnly);
    Ok(v)
}

/// Coordinates of the tail terms in `basis`, their tail means as the limit
/// coefficients, the reconstructed limit, and its certification.
pub fn findim_limit_extraction(
    space: &IfnSpace,
    seq: &VectorSequence,
    basis: &[Vector],
    config: &ToleranceConfig,
) -> Result<(Vector, Verdict), SequenceError> {
    check_dims(space, seq)?;
    let d = space.dimension();
    if basis.len() != d {
        return Err(SequenceError::BasisSize { expected: d, found: basis.len() });
    }
    for b in basis {
        space.check_dim(b.coords())?;
    }
    let cauchy = check_cauchy(space, seq, config.cauchy_p_max, config)?;
    if cauchy.status != ConvergenceStatus::Converges {
        return Err(SequenceError::PreconditionFailed(format!("sequence is not certified Cauchy: {}", cauchy.status)));
    }

    let b = DMatrix::from_fn(d, d, |i, j| basis[j].coords()[i]);
    let lu = b.clone().lu();
    let min_pivot = lu.u().diagonal().iter().fold(f64::INFINITY, |m, p| m.min(p.abs()));
    if !(min_pivot >= PIVOT_EPS) {
        return Err(SequenceError::DegenerateBasis(min_pivot));
    }

    let w = config.tail_window.min(seq.len() - 1);
    let start = seq.len() - 1 - w;
    let coeffs: Vec<DVector<f64>> = (start..seq.len())
        .map(|i| {
            lu.solve(&DVector::from_column_slice(seq.term(i)))
                .ok_or(SequenceError::DegenerateBasis(min_pivot))
        })
        .collect::<Result<_, _>>()?;

    let mut beta = vec![0.0; d];
    for (j, slot) in beta.iter_mut().enumerate() {
        let (lo, hi, sum) = coeffs
            .iter()
            .map(|c| c[j])
            .fold((f64::INFINITY, f64::NEG_INFINITY, 0.0), |(lo, hi, s), v| (lo.min(v), hi.max(v), s + v));
        let spread = hi - lo;
        if !(spread < config.eps_limit) {
            return Err(SequenceError::TailNotSettled { coord: j + 1, spread });
        }
        *slot = sum / coeffs.len() as f64;
    }
    let limit_coords = &b * DVector::from_column_slice(&beta);
    let limit = Vector::new(limit_coords.iter().copied().collect())?;

    let cert = check_convergence_to(space, seq, &limit, config)?;
    let mut v = Verdict::new(format!("finite-dimensional limit of {}", display_label(seq)));
    let mut check = cert.to_verdict("certified").checks.remove(0);
    let w = check.witness.take().unwrap_or_default().vector("coefficients", &beta).vector("limit", limit.coords());
    check.witness = Some(w);
    v.push(check);
    v.deviation(Deviation::FinitePrefixOnly);
    Ok((limit, v))
}

/// A Cauchy sequence with a subsequence converging to `x` converges to `x`.
pub fn subsequence_completeness_criterion(
    space: &IfnSpace,
    seq: &VectorSequence,
    indices: &[usize],
    x: &Vector,
    config: &ToleranceConfig,
) -> Result<Verdict, SequenceError> {
    let cauchy = check_cauchy(space, seq, config.cauchy_p_max, config)?;
    if cauchy.status != ConvergenceStatus::Converges {
        return Err(SequenceError::PreconditionFailed(format!("sequence is not certified Cauchy: {}", cauchy.status)));
    }
    let sub = seq.subsequence(indices)?;
    let sub_v = check_convergence_to(space, &sub, x, config)?;
    if sub_v.status != ConvergenceStatus::Converges {
        return Err(SequenceError::PreconditionFailed(format!("subsequence does not converge to {x}: {}", sub_v.status)));
    }
    let full = check_convergence_to(space, seq, x, config)?;
    let mut v = Verdict::new(format!("subsequence completeness for {}", display_label(seq)));
    v.push(full.to_verdict("full sequence converges").checks.remove(0));
    v.deviation(Deviation::FinitePrefixOnly);
    Ok(v)
}
