//! Seeded sample generation. Every randomized check draws its whole sample
//! set up front from a ChaCha8 stream, so the seed alone fixes the result.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Log-uniform draw in `[lo, hi]`, both positive.
pub fn log_uniform(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    let (a, b) = (lo.ln(), hi.ln());
    (a + (b - a) * rng.gen::<f64>()).exp()
}

/// A vector whose coordinates are uniform in `[-1, 1]` times a common
/// log-uniform scale in `[scale_lo, scale_hi]`.
pub fn scaled_vector(rng: &mut impl Rng, dim: usize, scale_lo: f64, scale_hi: f64) -> Vec<f64> {
    let scale = log_uniform(rng, scale_lo, scale_hi);
    (0..dim).map(|_| scale * rng.gen_range(-1.0..=1.0)).collect()
}

/// A nonzero scalar with log-uniform magnitude in `[lo, hi]` and random sign.
pub fn nonzero_scalar(rng: &mut impl Rng, lo: f64, hi: f64) -> f64 {
    let m = log_uniform(rng, lo, hi);
    if rng.gen::<bool>() {
        m
    } else {
        -m
    }
}

/// `n` points log-spaced over `[lo, hi]` inclusive.
pub fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let (a, b) = (lo.ln(), hi.ln());
            (0..n)
                .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
                .collect()
        }
    }
}

/// Dyadic points of (0,1) in coarse-to-fine order: 1/2, 1/4, 3/4, 1/8, ...
/// down to spacing `2^-depth`.
pub fn dyadic_coarse_to_fine(depth: u32) -> Vec<f64> {
    let mut out = Vec::new();
    for level in 1..=depth {
        let denom = (1u64 << level) as f64;
        for k in (1..(1u64 << level)).step_by(2) {
            out.push(k as f64 / denom);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let a: Vec<f64> = (0..5).map(|_| rng(7).gen()).collect();
        let b: Vec<f64> = (0..5).map(|_| rng(7).gen()).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn log_space_endpoints() {
        let v = log_space(1e-6, 1e3, 32);
        assert_eq!(v.len(), 32);
        assert!((v[0] - 1e-6).abs() < 1e-18);
        assert!((v[31] - 1e3).abs() < 1e-9);
        assert!(v.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn dyadic_order() {
        assert_eq!(dyadic_coarse_to_fine(2), vec![0.5, 0.25, 0.75]);
        assert_eq!(dyadic_coarse_to_fine(10).len(), 1023);
    }
}
