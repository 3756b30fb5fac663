//! Block flat fading: channel gains are fixed within a frame and redrawn
//! independently for the next one. Each block is re-optimized with its own
//! gains, and the per-block optimal rates are summarized.
//!
//! Every block owns a ChaCha8 stream selected by its index, so results do not
//! depend on evaluation order or thread count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::duplex::{compare_with, Comparison, SolveOptions};
use crate::error::{Error, Result};
use crate::model::SystemParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelKind {
    Deterministic,
    /// Rayleigh amplitudes, i.e. exponentially distributed power gains.
    Exponential,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelModel {
    pub kind: ChannelKind,
    pub mean_h: f64,
    pub mean_g: f64,
}

impl ChannelModel {
    pub fn new(kind: ChannelKind, mean_h: f64, mean_g: f64) -> Result<Self> {
        for (name, mean) in [("mean_h", mean_h), ("mean_g", mean_g)] {
            if !mean.is_finite() || mean < 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "{name} must be finite and >= 0, got {mean}"
                )));
            }
        }
        Ok(Self {
            kind,
            mean_h,
            mean_g,
        })
    }

    pub fn deterministic(mean_h: f64, mean_g: f64) -> Result<Self> {
        Self::new(ChannelKind::Deterministic, mean_h, mean_g)
    }

    pub fn exponential(mean_h: f64, mean_g: f64) -> Result<Self> {
        Self::new(ChannelKind::Exponential, mean_h, mean_g)
    }
}

/// Draws one block's `(h, g)` power gains.
pub fn draw_block<R: Rng + ?Sized>(model: &ChannelModel, rng: &mut R) -> (f64, f64) {
    match model.kind {
        ChannelKind::Deterministic => (model.mean_h, model.mean_g),
        ChannelKind::Exponential => {
            let h: f64 = rng.sample(Exp1);
            let g: f64 = rng.sample(Exp1);
            (model.mean_h * h, model.mean_g * g)
        }
    }
}

/// RNG for block `index` under run seed `seed`.
pub fn block_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlockOutcome {
    pub h_gain: f64,
    pub g_gain: f64,
    pub comparison: Comparison,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Quantiles {
    pub p5: f64,
    pub p50: f64,
    pub p95: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloReport {
    pub n_blocks: usize,
    pub mean_rate_tdd: f64,
    pub mean_rate_fdd: f64,
    pub quantiles_tdd: Quantiles,
    pub quantiles_fdd: Quantiles,
    pub seed: u64,
}

/// Solves both schemes on every block; outcomes are in block order.
pub fn simulate_blocks(
    params: &SystemParams,
    model: &ChannelModel,
    n_blocks: usize,
    seed: u64,
    opts: &SolveOptions,
) -> Result<Vec<BlockOutcome>> {
    params.validate()?;
    if n_blocks == 0 {
        return Err(Error::InvalidArgument("n_blocks must be >= 1".into()));
    }
    (0..n_blocks as u64)
        .into_par_iter()
        .map(|index| {
            let mut rng = block_rng(seed, index);
            let (h_gain, g_gain) = draw_block(model, &mut rng);
            let comparison = compare_with(&params.with_gains(h_gain, g_gain), opts)?;
            Ok(BlockOutcome {
                h_gain,
                g_gain,
                comparison,
            })
        })
        .collect()
}

pub fn monte_carlo(
    params: &SystemParams,
    model: &ChannelModel,
    n_blocks: usize,
    seed: u64,
    opts: &SolveOptions,
) -> Result<MonteCarloReport> {
    let blocks = simulate_blocks(params, model, n_blocks, seed, opts)?;
    let tdd: Vec<f64> = blocks.iter().map(|b| b.comparison.tdd.rate).collect();
    let fdd: Vec<f64> = blocks.iter().map(|b| b.comparison.fdd.rate).collect();
    Ok(MonteCarloReport {
        n_blocks,
        mean_rate_tdd: shifted_mean(&tdd),
        mean_rate_fdd: shifted_mean(&fdd),
        quantiles_tdd: quantiles(tdd),
        quantiles_fdd: quantiles(fdd),
        seed,
    })
}

/// Mean taken relative to the first sample; a constant sample returns that
/// constant bit-for-bit.
fn shifted_mean(samples: &[f64]) -> f64 {
    let first = samples[0];
    let offset: f64 = samples.iter().map(|x| x - first).sum();
    first + offset / samples.len() as f64
}

fn quantiles(mut samples: Vec<f64>) -> Quantiles {
    samples.sort_by(f64::total_cmp);
    Quantiles {
        p5: quantile_sorted(&samples, 0.05),
        p50: quantile_sorted(&samples, 0.50),
        p95: quantile_sorted(&samples, 0.95),
    }
}

/// Linear interpolation between order statistics.
fn quantile_sorted(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    if lo == hi || sorted[lo] == sorted[hi] {
        return sorted[lo];
    }
    sorted[lo] + (sorted[hi] - sorted[lo]) * (pos - lo as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_draws_means() {
        let model = ChannelModel::deterministic(1e-6, 1e-6).unwrap();
        let mut rng = block_rng(7, 0);
        for _ in 0..10 {
            assert_eq!(draw_block(&model, &mut rng), (1e-6, 1e-6));
        }
    }

    #[test]
    fn zero_mean_is_degenerate() {
        let model = ChannelModel::exponential(0.0, 1.0).unwrap();
        let mut rng = block_rng(1, 0);
        for _ in 0..1000 {
            assert_eq!(draw_block(&model, &mut rng).0, 0.0);
        }
    }

    #[test]
    fn exponential_sample_mean() {
        // Exp(mean 2) has sd 2, so the mean of 1e6 draws has sd 2e-3.
        let model = ChannelModel::exponential(2.0, 2.0).unwrap();
        let mut rng = block_rng(42, 0);
        let n = 1_000_000;
        let (mut sum_h, mut sum_g) = (0.0, 0.0);
        for _ in 0..n {
            let (h, g) = draw_block(&model, &mut rng);
            sum_h += h;
            sum_g += g;
        }
        let band = 3.0 * 2.0 / (n as f64).sqrt();
        assert!((sum_h / n as f64 - 2.0).abs() < band);
        assert!((sum_g / n as f64 - 2.0).abs() < band);
    }

    #[test]
    fn rejects_bad_models() {
        assert!(ChannelModel::exponential(-1.0, 1.0).is_err());
        assert!(ChannelModel::deterministic(1.0, f64::NAN).is_err());
    }

    #[test]
    fn quantile_interpolation() {
        let s = [0.0, 1.0, 2.0, 3.0, 4.0];
        assert_eq!(quantile_sorted(&s, 0.5), 2.0);
        assert!((quantile_sorted(&s, 0.05) - 0.2).abs() < 1e-12);
        assert!((quantile_sorted(&s, 0.95) - 3.8).abs() < 1e-12);
        assert_eq!(quantile_sorted(&[5.0], 0.95), 5.0);
    }

    #[test]
    fn shifted_mean_of_constant_is_exact() {
        let x = 38_306.461_998_544_58_f64;
        assert_eq!(shifted_mean(&[x; 7]), x);
        assert_eq!(shifted_mean(&[1.0, 2.0, 3.0, 6.0]), 3.0);
    }

    #[test]
    fn zero_blocks_rejected() {
        let params = SystemParams::new(1e-15, 0.1, 1e-5, 1e4, 1e-3, 1e-6, 1e-6).unwrap();
        let model = ChannelModel::deterministic(1e-6, 1e-6).unwrap();
        assert!(monte_carlo(&params, &model, 0, 0, &SolveOptions::default()).is_err());
    }
}
