//! Deterministic closed-form sequences with known limits, used by the
//! theorem-as-property suites.
//!
//! Seed 0 gives the canonical form. Any other seed shifts every term by a
//! fixed offset drawn uniformly from `[-1, 1]^d`, which shifts the limit too.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ifn_space::Vector;
use crate::sampling;
use crate::sequence_analysis::{SequenceError, VectorSequence};

#[derive(Debug, Error, PartialEq)]
pub enum CorpusError {
    #[error("corpus length must be at least 2, got {0}")]
    TooShort(usize),
    #[error("corpus dimension must be at least 1")]
    ZeroDimension,
    #[error("unknown corpus kind {0:?}")]
    UnknownKind(String),
    #[error(transparent)]
    Sequence(#[from] SequenceError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusKind {
    /// `1/n` in every coordinate.
    Harmonic,
    /// `2^-n` in every coordinate.
    Geometric,
    /// `(-1)^n` in every coordinate.
    Alternating,
    /// The all-ones vector.
    Constant,
    /// `sum_{i <= n} 1/i^2` in every coordinate, limit `pi^2/6`.
    PartialSums,
}

impl CorpusKind {
    pub const ALL: [CorpusKind; 5] = [
        CorpusKind::Harmonic,
        CorpusKind::Geometric,
        CorpusKind::Alternating,
        CorpusKind::Constant,
        CorpusKind::PartialSums,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CorpusKind::Harmonic => "harmonic",
            CorpusKind::Geometric => "geometric",
            CorpusKind::Alternating => "alternating",
            CorpusKind::Constant => "constant",
            CorpusKind::PartialSums => "partial-sums",
        }
    }

    /// Limit of the canonical (seed 0) form in each coordinate.
    pub fn canonical_limit(self) -> Option<f64> {
        match self {
            CorpusKind::Harmonic | CorpusKind::Geometric => Some(0.0),
            CorpusKind::Alternating => None,
            CorpusKind::Constant => Some(1.0),
            CorpusKind::PartialSums => Some(std::f64::consts::PI * std::f64::consts::PI / 6.0),
        }
    }
}

impl fmt::Display for CorpusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CorpusKind {
    type Err = CorpusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CorpusKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| CorpusError::UnknownKind(s.to_owned()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CorpusEntry {
    pub kind: CorpusKind,
    pub seed: u64,
    pub sequence: VectorSequence,
    pub known_limit: Option<Vector>,
    /// The seed offset; the centre of oscillation for divergent kinds.
    pub offset: Vector,
}

impl CorpusEntry {
    pub fn convergent(&self) -> bool {
        self.known_limit.is_some()
    }

    /// The known limit, or the offset for divergent kinds.
    pub fn reference_target(&self) -> &Vector {
        self.known_limit.as_ref().unwrap_or(&self.offset)
    }
}

fn offset(dim: usize, seed: u64) -> Vec<f64> {
    if seed == 0 {
        return vec![0.0; dim];
    }
    let mut rng = sampling::rng(seed);
    (0..dim).map(|_| rng.gen_range(-1.0..=1.0)).collect()
}

pub fn generate_corpus(kind: CorpusKind, length: usize, dimension: usize, seed: u64) -> Result<CorpusEntry, CorpusError> {
    if length < 2 {
        return Err(CorpusError::TooShort(length));
    }
    if dimension == 0 {
        return Err(CorpusError::ZeroDimension);
    }
    let off = offset(dimension, seed);
    let mut partial = 0.0;
    let label = if seed == 0 { kind.name().to_owned() } else { format!("{}#{seed}", kind.name()) };
    let sequence = VectorSequence::from_fn(length, dimension, label, |n, out| {
        let base = match kind {
            CorpusKind::Harmonic => 1.0 / n as f64,
            CorpusKind::Geometric => 0.5f64.powi(n as i32),
            CorpusKind::Alternating => {
                if n % 2 == 0 {
                    1.0
                } else {
                    -1.0
                }
            }
            CorpusKind::Constant => 1.0,
            CorpusKind::PartialSums => {
                partial += 1.0 / (n as f64 * n as f64);
                partial
            }
        };
        for (o, c) in out.iter_mut().zip(&off) {
            *o = base + c;
        }
    })?;
    let known_limit = kind
        .canonical_limit()
        .map(|l| Vector::new(off.iter().map(|c| l + c).collect()))
        .transpose()
        .map_err(SequenceError::from)?;
    Ok(CorpusEntry {
        kind,
        seed,
        sequence,
        known_limit,
        offset: Vector::new(off).map_err(SequenceError::from)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_terms() {
        let e = generate_corpus(CorpusKind::Harmonic, 100, 1, 0).unwrap();
        assert_eq!(e.sequence.len(), 100);
        assert_eq!(e.sequence.term(0), &[1.0]);
        assert_eq!(e.sequence.term(3), &[0.25]);
        assert_eq!(e.known_limit.unwrap().coords(), &[0.0]);
    }

    #[test]
    fn alternating_is_divergent() {
        let e = generate_corpus(CorpusKind::Alternating, 100, 1, 0).unwrap();
        assert!(!e.convergent());
        assert_eq!(e.sequence.term(0), &[-1.0]);
        assert_eq!(e.sequence.term(1), &[1.0]);
    }

    #[test]
    fn geometric_two_dim() {
        let e = generate_corpus(CorpusKind::Geometric, 10, 2, 0).unwrap();
        assert_eq!(e.sequence.term(2), &[0.125, 0.125]);
        assert_eq!(e.known_limit.unwrap().coords(), &[0.0, 0.0]);
    }

    #[test]
    fn partial_sums_approach_limit() {
        let e = generate_corpus(CorpusKind::PartialSums, 100_000, 1, 0).unwrap();
        let gap = e.known_limit.unwrap().coords()[0] - e.sequence.last()[0];
        // Remainder of sum 1/i^2 after n terms lies in (1/(n+1), 1/n).
        assert!(gap > 1.0 / 100_001.0 && gap < 1.0 / 100_000.0);
    }

    #[test]
    fn seeded_offset_shifts_limit() {
        let a = generate_corpus(CorpusKind::Constant, 5, 3, 9).unwrap();
        let b = generate_corpus(CorpusKind::Constant, 5, 3, 9).unwrap();
        assert_eq!(a, b);
        let lim = a.known_limit.as_ref().unwrap();
        assert_eq!(a.sequence.term(4), lim.coords());
        assert!(a.offset.coords().iter().all(|c| c.abs() <= 1.0));
        assert_ne!(a.offset, Vector::zeros(3));
    }

    #[test]
    fn kind_names_round_trip() {
        for k in CorpusKind::ALL {
            assert_eq!(k.name().parse::<CorpusKind>().unwrap(), k);
        }
        assert!("nope".parse::<CorpusKind>().is_err());
        assert_eq!(generate_corpus(CorpusKind::Harmonic, 1, 1, 0).unwrap_err(), CorpusError::TooShort(1));
    }
}
