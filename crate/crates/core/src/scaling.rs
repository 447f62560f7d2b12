//! Sample-count scaling harness.
//!
//! Runs the approximate degeneracy algorithm over a family of graphs of
//! growing size and reports the mean number of neighbor samples, normalized
//! by `n ln n` (and by `n^b ln n` for the clique-union family). Wall time is
//! not part of the output; sample counts are the portable cost measure.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::approx::{approximate_degeneracy, ApproxOptions};
use crate::error::{Error, Result};
use crate::exact::peel_degeneracy;
use crate::generate::{gen_clique_union, gen_erdos_renyi};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "family")]
pub enum ScalingFamily {
    /// Erdős–Rényi graphs at a fixed average degree; one graph per seed.
    Er { avg_degree: f64 },
    /// One clique of `round(n^exponent)` nodes, the rest filled with cliques
    /// of `floor(large / (1 + eps1)^2)` nodes.
    CliqueUnion { exponent: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingConfig {
    pub family: ScalingFamily,
    pub sizes: Vec<usize>,
    pub epsilon: f64,
    pub c: f64,
    pub seeds_per_size: u64,
    pub base_seed: u64,
    pub options: ApproxOptions,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingRow {
    /// Requested size.
    pub size: usize,
    /// Actual node count of the generated instance(s).
    pub n: usize,
    pub mean_edges: f64,
    pub mean_degeneracy: f64,
    pub mean_samples: f64,
    pub samples_per_n_log_n: f64,
    /// Only for the clique-union family.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples_per_nb_log_n: Option<f64>,
    pub mean_trials: f64,
    pub fallback_rate: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScalingSummary {
    pub config: ScalingConfig,
    pub rows: Vec<ScalingRow>,
    /// max / min of `samples_per_n_log_n` across sizes. `None` with fewer
    /// than two sizes or when some size drew no samples.
    pub ratio_spread: Option<f64>,
    /// Least-squares slope of `ln(mean_samples)` against `ln(n)`, under the
    /// same conditions.
    pub loglog_exponent: Option<f64>,
}

/// Clique-union instance sized as close to `n` as the block sizes allow.
pub fn clique_union_instance(n: usize, exponent: f64, epsilon: f64) -> Result<Graph> {
    let (large, small, count) = clique_union_shape(n, exponent, epsilon)?;
    gen_clique_union(large, small, count)
}

fn clique_union_shape(n: usize, exponent: f64, epsilon: f64) -> Result<(usize, usize, usize)> {
    if n == 0 || !(exponent > 0.0 && exponent <= 1.0) {
        return Err(Error::parameter(format!(
            "clique-union scaling needs n >= 1 and exponent in (0, 1], got n={n}, b={exponent}"
        )));
    }
    let large = ((n as f64).powf(exponent).round() as usize).clamp(1, n);
    let eps1 = epsilon / 3.0;
    let small = ((large as f64 / (1.0 + eps1).powi(2)).floor() as usize).max(1);
    Ok((large, small, (n - large) / small))
}

struct Sample {
    n: usize,
    edges: usize,
    degeneracy: usize,
    samples: u64,
    trials: u64,
    fallback: bool,
}

pub fn run_scaling(cfg: &ScalingConfig) -> Result<ScalingSummary> {
    if cfg.sizes.is_empty() || cfg.seeds_per_size == 0 {
        return Err(Error::parameter("need at least one size and one seed"));
    }
    let mut rows = Vec::with_capacity(cfg.sizes.len());
    for &size in &cfg.sizes {
        let shared = match cfg.family {
            ScalingFamily::CliqueUnion { exponent } => {
                Some(clique_union_instance(size, exponent, cfg.epsilon)?)
            }
            ScalingFamily::Er { .. } => None,
        };
        let shared_degeneracy = shared.as_ref().map(peel_degeneracy);

        let samples: Vec<Sample> = (0..cfg.seeds_per_size)
            .into_par_iter()
            .map(|i| {
                let seed = cfg.base_seed.wrapping_add(i);
                let owned;
                let (g, degeneracy) = match (&shared, cfg.family) {
                    (Some(g), _) => (g, shared_degeneracy.unwrap()),
                    (None, ScalingFamily::Er { avg_degree }) => {
                        owned = gen_erdos_renyi(size, avg_degree, seed)?;
                        let d = peel_degeneracy(&owned);
                        (&owned, d)
                    }
                    (None, ScalingFamily::CliqueUnion { .. }) => unreachable!(),
                };
                let r = approximate_degeneracy(g, cfg.epsilon, cfg.c, seed, cfg.options)?;
                Ok(Sample {
                    n: g.node_count(),
                    edges: g.edge_count(),
                    degeneracy,
                    samples: r.stats.samples_drawn,
                    trials: r.stats.trials,
                    fallback: r.used_fallback,
                })
            })
            .collect::<Result<_>>()?;

        let runs = samples.len() as f64;
        let mean = |f: &dyn Fn(&Sample) -> f64| samples.iter().map(f).sum::<f64>() / runs;
        let n = samples[0].n;
        let nf = n as f64;
        let mean_samples = mean(&|s| s.samples as f64);
        let n_log_n = nf * nf.ln();
        let samples_per_nb_log_n = match cfg.family {
            ScalingFamily::CliqueUnion { exponent } => {
                Some(mean_samples / (nf.powf(exponent) * nf.ln()))
            }
            ScalingFamily::Er { .. } => None,
        };
        rows.push(ScalingRow {
            size,
            n,
            mean_edges: mean(&|s| s.edges as f64),
            mean_degeneracy: mean(&|s| s.degeneracy as f64),
            mean_samples,
            samples_per_n_log_n: if n_log_n > 0.0 {
                mean_samples / n_log_n
            } else {
                0.0
            },
            samples_per_nb_log_n,
            mean_trials: mean(&|s| s.trials as f64),
            fallback_rate: mean(&|s| if s.fallback { 1.0 } else { 0.0 }),
        });
    }

    let measurable = rows.len() >= 2 && rows.iter().all(|r| r.mean_samples > 0.0 && r.n > 1);
    let (ratio_spread, loglog_exponent) = if measurable {
        let ratios = rows.iter().map(|r| r.samples_per_n_log_n);
        let hi = ratios.clone().fold(f64::NEG_INFINITY, f64::max);
        let lo = ratios.fold(f64::INFINITY, f64::min);
        let points: Vec<(f64, f64)> = rows
            .iter()
            .map(|r| ((r.n as f64).ln(), r.mean_samples.ln()))
            .collect();
        (Some(hi / lo), least_squares_slope(&points))
    } else {
        (None, None)
    };

    Ok(ScalingSummary {
        config: cfg.clone(),
        rows,
        ratio_spread,
        loglog_exponent,
    })
}

/// Ordinary least-squares slope; `None` when all x coincide.
pub fn least_squares_slope(points: &[(f64, f64)]) -> Option<f64> {
    let k = points.len() as f64;
    if points.len() < 2 {
        return None;
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / k;
    let my = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_exact_power_law() {
        let pts: Vec<_> = [1e3f64, 1e4, 1e5]
            .iter()
            .map(|&n| (n.ln(), (3.0 * n.powf(0.5)).ln()))
            .collect();
        assert!((least_squares_slope(&pts).unwrap() - 0.5).abs() < 1e-12);
        assert_eq!(least_squares_slope(&pts[..1]), None);
        assert_eq!(least_squares_slope(&[(1.0, 2.0), (1.0, 3.0)]), None);
    }

    #[test]
    fn clique_union_shapes() {
        // sqrt(10^4) = 100, small cliques of floor(100 / (7/6)^2) = 73 nodes.
        assert_eq!(
            clique_union_shape(10_000, 0.5, 0.5).unwrap(),
            (100, 73, 135)
        );
        assert_eq!(
            clique_union_shape(160_000, 0.5, 0.5).unwrap(),
            (400, 293, 544)
        );
        assert!(clique_union_shape(0, 0.5, 0.5).is_err());
        assert!(clique_union_shape(10, 1.5, 0.5).is_err());
    }

    #[test]
    fn single_size_has_no_regression() {
        let cfg = ScalingConfig {
            family: ScalingFamily::Er { avg_degree: 4.0 },
            sizes: vec![300],
            epsilon: 0.5,
            c: 0.5,
            seeds_per_size: 3,
            base_seed: 1,
            options: ApproxOptions::default(),
        };
        let s = run_scaling(&cfg).unwrap();
        assert_eq!(s.rows.len(), 1);
        assert_eq!(s.ratio_spread, None);
        assert_eq!(s.loglog_exponent, None);
        assert_eq!(s.rows[0].n, 300);
    }
}
