//! Seeded experiments on run counts, chain covers and bends, and the
//! closed-form total-bend lower bound.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;
use thiserror::Error;

use crate::chains::{
    alternating_runs, interior_extrema, longest_decreasing_subsequence, min_common_chain_cover, ChainError,
};
use crate::geomcheck::verify_drawing;
use crate::graph::{gen_planar, gen_points, Model, PointShape};
use crate::rng::{self, derive_seed};
use crate::route::{draw_fixed, PointConfig, RouteError, C_ROUTE};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StatsError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(&'static str),
    #[error("exhaustive enumeration of size {0} is too large")]
    TooLarge(usize),
    #[error("drawing for n = {n}, trial {trial} failed verification")]
    Verification { n: usize, trial: usize },
    #[error(transparent)]
    Route(#[from] RouteError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

/// One measured trial.
#[derive(Debug, Clone, PartialEq)]
pub struct Trial {
    pub n: usize,
    pub trial: usize,
    pub seed: u64,
    pub metrics: Vec<(&'static str, f64)>,
}

impl Trial {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.metrics.iter().find(|m| m.0 == name).map(|m| m.1)
    }
}

/// Summary of one metric over the trials for one `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Aggregate {
    pub n: usize,
    pub metric: &'static str,
    pub mean: f64,
    pub stddev: f64,
    pub min: f64,
    pub max: f64,
}

/// Least-squares line through `(ln n, ln y)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Fit {
    pub metric: &'static str,
    pub exponent: f64,
    pub intercept: f64,
    /// Sum of squared residuals.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub experiment: String,
    pub n_values: Vec<usize>,
    pub k: Option<usize>,
    pub trials_per_n: usize,
    pub seed: u64,
    pub trials: Vec<Trial>,
    pub aggregates: Vec<Aggregate>,
    pub fit: Option<Fit>,
}

impl ExperimentReport {
    fn new(experiment: &str, n_values: Vec<usize>, k: Option<usize>, trials_per_n: usize, seed: u64) -> Self {
        ExperimentReport {
            experiment: experiment.into(),
            n_values,
            k,
            trials_per_n,
            seed,
            trials: Vec::new(),
            aggregates: Vec::new(),
            fit: None,
        }
    }

    pub fn aggregate(&self, n: usize, metric: &str) -> Option<&Aggregate> {
        self.aggregates.iter().find(|a| a.n == n && a.metric == metric)
    }

    /// Recomputes the aggregates of every metric from the stored trials.
    pub fn summarize(&mut self) {
        let mut out = Vec::new();
        for &n in &self.n_values {
            let rows: Vec<&Trial> = self.trials.iter().filter(|t| t.n == n).collect();
            let Some(first) = rows.first() else { continue };
            for &(metric, _) in &first.metrics {
                let xs: Vec<f64> = rows.iter().filter_map(|t| t.get(metric)).collect();
                out.push(aggregate_of(n, metric, &xs));
            }
        }
        self.aggregates = out;
    }
}

fn aggregate_of(n: usize, metric: &'static str, xs: &[f64]) -> Aggregate {
    let m = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / m;
    let var = if xs.len() > 1 { xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (m - 1.0) } else { 0.0 };
    Aggregate {
        n,
        metric,
        mean,
        stddev: libm::sqrt(var),
        min: xs.iter().copied().fold(f64::INFINITY, f64::min),
        max: xs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
    }
}

/// Least-squares fit of `ln y = exponent·ln x + intercept`.
pub fn fit_power_law(metric: &'static str, points: &[(f64, f64)]) -> Option<Fit> {
    if points.len() < 2 || points.iter().any(|&(x, y)| x <= 0.0 || y <= 0.0) {
        return None;
    }
    let m = points.len() as f64;
    let lx: Vec<f64> = points.iter().map(|p| libm::log(p.0)).collect();
    let ly: Vec<f64> = points.iter().map(|p| libm::log(p.1)).collect();
    let mx = lx.iter().sum::<f64>() / m;
    let my = ly.iter().sum::<f64>() / m;
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let exponent = sxy / sxx;
    let intercept = my - exponent * mx;
    let residual = lx.iter().zip(&ly).map(|(x, y)| (y - exponent * x - intercept) * (y - exponent * x - intercept)).sum();
    Some(Fit { metric, exponent, intercept, residual })
}

fn alpha_from(perm: Vec<usize>) -> Vec<usize> {
    perm.into_iter().map(|x| x + 1).collect()
}

/// Greedy alternating runs `r` and interior extrema `|X|` of uniformly random
/// permutations of `1..=n`.
pub fn runs_experiment(n: usize, trials: usize, seed: u64) -> Result<ExperimentReport, StatsError> {
    if n < 3 || trials == 0 {
        return Err(StatsError::InvalidParameters("need n ≥ 3 and at least one trial"));
    }
    let mut rep = ExperimentReport::new("runs", vec![n], None, trials, seed);
    for trial in 0..trials {
        let s = derive_seed(seed, trial as u64);
        let alpha = alpha_from(rng::permutation(n, &mut rng::rng(s)));
        let r = alternating_runs(&alpha)?.r();
        let x = interior_extrema(&alpha);
        rep.trials.push(Trial { n, trial, seed: s, metrics: vec![("r", r as f64), ("extrema", x as f64)] });
    }
    rep.summarize();
    Ok(rep)
}

/// Exact averages over all `n!` permutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExhaustiveRuns {
    pub n: usize,
    pub permutations: u64,
    /// For each interior index, the fraction of permutations with a local
    /// extremum there.
    pub extremum_probability: Vec<Ratio<u64>>,
    pub mean_extrema: Ratio<u64>,
    pub mean_r: Ratio<u64>,
}

/// Enumerates every permutation of `1..=n` (`n ≤ 9`).
pub fn runs_exhaustive(n: usize) -> Result<ExhaustiveRuns, StatsError> {
    if n > 9 {
        return Err(StatsError::TooLarge(n));
    }
    let mut alpha: Vec<usize> = (1..=n).collect();
    let mut count = 0u64;
    let mut at = vec![0u64; n.saturating_sub(2)];
    let (mut sum_x, mut sum_r) = (0u64, 0u64);
    loop {
        count += 1;
        for (i, w) in alpha.windows(3).enumerate() {
            if (w[1] > w[0]) == (w[1] > w[2]) {
                at[i] += 1;
            }
        }
        sum_x += interior_extrema(&alpha) as u64;
        sum_r += alternating_runs(&alpha)?.r() as u64;
        if !next_permutation(&mut alpha) {
            break;
        }
    }
    Ok(ExhaustiveRuns {
        n,
        permutations: count,
        extremum_probability: at.into_iter().map(|c| Ratio::new(c, count)).collect(),
        mean_extrema: Ratio::new(sum_x, count),
        mean_r: Ratio::new(sum_r, count),
    })
}

/// Lexicographic successor; false after the last permutation.
fn next_permutation(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Minimum common chain cover of the identity and `k − 1` uniformly random
/// permutations, for every `n`, with a power-law fit of the mean cover size.
/// For `k = 2` each trial also records the longest decreasing subsequence of
/// the random permutation, which the cover size must equal.
pub fn chain_scaling_experiment(
    k: usize,
    n_list: &[usize],
    trials: usize,
    seed: u64,
) -> Result<ExperimentReport, StatsError> {
    if k == 0 || trials == 0 || n_list.is_empty() || n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(StatsError::InvalidParameters("need k ≥ 1, trials ≥ 1 and increasing sizes"));
    }
    let mut rep = ExperimentReport::new("chains", n_list.to_vec(), Some(k), trials, seed);
    for (ni, &n) in n_list.iter().enumerate() {
        for trial in 0..trials {
            let s = derive_seed(derive_seed(seed, ni as u64), trial as u64);
            let mut g = rng::rng(s);
            let mut perms = vec![(0..n).collect::<Vec<usize>>()];
            for _ in 1..k {
                perms.push(rng::permutation(n, &mut g));
            }
            let r = min_common_chain_cover(&perms)?.len();
            let mut metrics = vec![("r", r as f64)];
            if k == 2 {
                metrics.push(("lds", longest_decreasing_subsequence(&perms[1]) as f64));
            }
            rep.trials.push(Trial { n, trial, seed: s, metrics });
        }
    }
    rep.summarize();
    let pts: Vec<(f64, f64)> =
        n_list.iter().filter_map(|&n| rep.aggregate(n, "r").map(|a| (n as f64, a.mean))).collect();
    rep.fit = fit_power_law("r", &pts);
    Ok(rep)
}

/// One fixed-mapping drawing: a seeded planar graph, seeded random points
/// and a seeded random mapping, drawn by [`draw_fixed`] and verified.
pub fn bends_trial(n: usize, model: Model, seed: u64) -> Result<(Trial, bool), StatsError> {
    let g = gen_planar(n, model, derive_seed(seed, 0));
    let pts = gen_points(n, PointShape::Random, derive_seed(seed, 1));
    let gamma = rng::permutation(n, &mut rng::rng(derive_seed(seed, 2)));
    let config = PointConfig::new(pts, gamma)?;
    let d = draw_fixed(&g, &config, derive_seed(seed, 3))?;
    let report = verify_drawing(&d, &g, &config.vertex_points()).map_err(|_| StatsError::Verification { n, trial: 0 })?;
    let edges = report.bends.len().max(1) as f64;
    let r = d.meta.r;
    let within = report.max_bends() <= 3 * r + C_ROUTE;
    let trial = Trial {
        n,
        trial: 0,
        seed,
        metrics: vec![
            ("r", r as f64),
            ("mean_bends", report.beta as f64 / edges),
            ("max_bends", report.max_bends() as f64),
            ("violations", report.violations.len() as f64),
            ("mapping_ok", if report.mapping_ok { 1.0 } else { 0.0 }),
            ("within_budget", if within { 1.0 } else { 0.0 }),
        ],
    };
    Ok((trial, report.ok()))
}

/// [`bends_trial`] on seeded triangulations for every `n`; fails if any
/// drawing does not verify.
pub fn bends_experiment(n_list: &[usize], trials: usize, seed: u64) -> Result<ExperimentReport, StatsError> {
    if trials == 0 || n_list.is_empty() {
        return Err(StatsError::InvalidParameters("need trials ≥ 1 and at least one size"));
    }
    let mut rep = ExperimentReport::new("bends", n_list.to_vec(), None, trials, seed);
    for (ni, &n) in n_list.iter().enumerate() {
        for trial in 0..trials {
            let s = derive_seed(derive_seed(seed, ni as u64), trial as u64);
            let (mut t, ok) = bends_trial(n, Model::Triangulation, s)?;
            if !ok {
                return Err(StatsError::Verification { n, trial });
            }
            t.trial = trial;
            rep.trials.push(t);
        }
    }
    rep.summarize();
    Ok(rep)
}

/// Total bends forced on `k` graphs sharing a convex point set, with `delta`
/// bits of slack and constant `c`:
/// `n^(2 − 1/k) / 2^(c + delta/(k·n)) − n`, clamped at zero.
pub fn lower_bound_eval(n: u64, k: u64, delta: f64, c: f64) -> f64 {
    if n == 0 || k == 0 {
        return 0.0;
    }
    let nf = n as f64;
    let kf = k as f64;
    // n^(2 − 1/k) as n · n^(1 − 1/k) keeps perfect powers exact.
    let power = nf * libm::pow(nf, 1.0 - 1.0 / kf);
    let value = power / libm::exp2(c + delta / (kf * nf)) - nf;
    if value > 0.0 {
        value
    } else {
        0.0
    }
}

/// Pearson's statistic for `counts` against the uniform distribution.
pub fn chi_square_uniform(counts: &[usize]) -> f64 {
    let total: usize = counts.iter().sum();
    if counts.is_empty() || total == 0 {
        return 0.0;
    }
    let expected = total as f64 / counts.len() as f64;
    counts.iter().map(|&c| (c as f64 - expected) * (c as f64 - expected) / expected).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_three() {
        let e = runs_exhaustive(3).unwrap();
        assert_eq!(e.permutations, 6);
        assert_eq!(e.extremum_probability, vec![Ratio::new(2, 3)]);
        assert_eq!(e.mean_extrema, Ratio::new(2, 3));
    }

    #[test]
    fn bound_cases() {
        assert_eq!(lower_bound_eval(10_000, 2, 0.0, 5.0), 21250.0);
        assert_eq!(lower_bound_eval(10_000, 2, 0.0, 10.0), 0.0);
        assert_eq!(lower_bound_eval(100, 1, 0.0, 0.0), 0.0);
    }

    #[test]
    fn fit_recovers_exponent() {
        let pts: Vec<(f64, f64)> = [2.0, 4.0, 8.0, 16.0].iter().map(|&x: &f64| (x, 3.0 * libm::sqrt(x))).collect();
        let f = fit_power_law("r", &pts).unwrap();
        assert!((f.exponent - 0.5).abs() < 1e-12);
        assert!(f.residual < 1e-20);
    }

    #[test]
    fn next_permutation_counts() {
        let mut a = [1, 2, 3, 4];
        let mut c = 1;
        while next_permutation(&mut a) {
            c += 1;
        }
        assert_eq!(c, 24);
    }
}
