//! Outlier-robustness study and density-curve tables.
//!
//! The study draws clean exponential samples, appends fixed outliers and
//! compares three estimates of the scale τ against the clean-sample mean:
//! a plain exponential fit to the contaminated data ("ignore"), a Lomax fit
//! and a generalised-exponential fit. Errors are absolute differences.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fitting::{fit_all, FitOptions, FitResult, Sample};
use crate::format::fmt_g17;
use crate::rng::substream;
use crate::{Distribution, Family, Params};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub sample_sizes: Vec<usize>,
    /// Outlier values in the order they are appended.
    pub outlier_values: Vec<f64>,
    pub true_tau: f64,
    pub replications: usize,
    pub base_seed: u64,
    /// Also run the uncontaminated `k = 0` cells.
    pub include_clean: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            sample_sizes: vec![10, 100, 1000],
            outlier_values: vec![20.0, 10.0],
            true_tau: 1.0,
            replications: 200,
            base_seed: 20_240_601,
            include_clean: false,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.sample_sizes.is_empty() || self.sample_sizes.contains(&0) {
            return Err(Error::domain("sizes: need at least one sample size, all >= 1"));
        }
        if self.replications == 0 {
            return Err(Error::domain("reps: replications must be >= 1"));
        }
        if let Some(v) = self.outlier_values.iter().find(|v| !(v.is_finite() && **v >= 0.0)) {
            return Err(Error::domain(format!("outliers: {v} is not a finite value >= 0")));
        }
        if !(self.true_tau.is_finite() && self.true_tau > 0.0) {
            return Err(Error::domain(format!("tau: {} is not finite and > 0", self.true_tau)));
        }
        Ok(())
    }

    fn outlier_counts(&self) -> std::ops::RangeInclusive<usize> {
        let first = if self.include_clean { 0 } else { 1 };
        first..=self.outlier_values.len()
    }
}

/// The three estimation methods compared in the study.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Ignore,
    Lomax,
    GenExp,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Ignore, Method::Lomax, Method::GenExp];

    pub fn name(self) -> &'static str {
        match self {
            Method::Ignore => "ignore",
            Method::Lomax => "lomax",
            Method::GenExp => "genexp",
        }
    }

    fn family(self) -> Family {
        match self {
            Method::Ignore => Family::Exponential,
            Method::Lomax => Family::Lomax,
            Method::GenExp => Family::GenExp,
        }
    }
}

/// One method's fit in one replication. A failed fit is recorded with NaN
/// values and `converged = false`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodFit {
    pub neg_log_lik: f64,
    pub tau_hat: f64,
    pub nu_hat: Option<f64>,
    pub converged: bool,
    pub at_nu_bound: bool,
    /// `|τ̂ − clean mean|`.
    pub error: f64,
}

impl MethodFit {
    fn new(fit: Option<&FitResult>, clean_mean: f64) -> Self {
        match fit {
            Some(f) => Self {
                neg_log_lik: f.neg_log_lik,
                tau_hat: f.estimates.tau,
                nu_hat: f.family.uses_nu().then_some(f.estimates.nu),
                converged: f.converged,
                at_nu_bound: f.at_nu_bound,
                error: (f.estimates.tau - clean_mean).abs(),
            },
            None => Self {
                neg_log_lik: f64::NAN,
                tau_hat: f64::NAN,
                nu_hat: None,
                converged: false,
                at_nu_bound: false,
                error: f64::NAN,
            },
        }
    }

    fn flagged(&self) -> bool {
        !self.converged || !self.error.is_finite()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub n: usize,
    pub n_outliers: usize,
    pub replication: usize,
    pub clean_mean: f64,
    pub ignore: MethodFit,
    pub lomax: MethodFit,
    pub genexp: MethodFit,
}

impl ExperimentRow {
    pub fn method(&self, m: Method) -> &MethodFit {
        match m {
            Method::Ignore => &self.ignore,
            Method::Lomax => &self.lomax,
            Method::GenExp => &self.genexp,
        }
    }

    pub fn error_ignore(&self) -> f64 {
        self.ignore.error
    }

    pub fn error_lomax(&self) -> f64 {
        self.lomax.error
    }

    pub fn error_genexp(&self) -> f64 {
        self.genexp.error
    }
}

/// Median and quartiles (linear interpolation between order statistics).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quartiles {
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
}

impl Quartiles {
    /// NaN entries are dropped; an empty input gives NaN quartiles.
    pub fn of(values: impl IntoIterator<Item = f64>) -> Self {
        let mut v: Vec<f64> = values.into_iter().filter(|x| !x.is_nan()).collect();
        v.sort_by(f64::total_cmp);
        Self {
            q1: quantile_sorted(&v, 0.25),
            median: quantile_sorted(&v, 0.5),
            q3: quantile_sorted(&v, 0.75),
        }
    }
}

fn quantile_sorted(v: &[f64], p: f64) -> f64 {
    if v.is_empty() {
        return f64::NAN;
    }
    let h = p * (v.len() - 1) as f64;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    v[lo] + (h - lo as f64) * (v[hi] - v[lo])
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodSummary {
    pub error: Quartiles,
    pub tau_hat_median: f64,
    pub neg_log_lik_median: f64,
    pub nu_hat_median: Option<f64>,
    /// Replications whose fit failed or did not converge.
    pub flagged: usize,
    pub at_nu_bound: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellSummary {
    pub n: usize,
    pub n_outliers: usize,
    pub replications: usize,
    pub ignore: MethodSummary,
    pub lomax: MethodSummary,
    pub genexp: MethodSummary,
    /// Fraction of replications where the generalised exponential attains
    /// a lower −ℓ than the Lomax.
    pub genexp_beats_lomax: f64,
}

impl CellSummary {
    pub fn method(&self, m: Method) -> &MethodSummary {
        match m {
            Method::Ignore => &self.ignore,
            Method::Lomax => &self.lomax,
            Method::GenExp => &self.genexp,
        }
    }

    fn from_rows(n: usize, k: usize, rows: &[&ExperimentRow]) -> Self {
        let summarise = |m: Method| {
            let fits: Vec<&MethodFit> = rows.iter().map(|r| r.method(m)).collect();
            let usable = || fits.iter().filter(|f| !f.flagged());
            let nu_hat_median = (m != Method::Ignore).then(|| Quartiles::of(usable().filter_map(|f| f.nu_hat)).median);
            MethodSummary {
                error: Quartiles::of(usable().map(|f| f.error)),
                tau_hat_median: Quartiles::of(usable().map(|f| f.tau_hat)).median,
                neg_log_lik_median: Quartiles::of(usable().map(|f| f.neg_log_lik)).median,
                nu_hat_median,
                flagged: fits.iter().filter(|f| f.flagged()).count(),
                at_nu_bound: fits.iter().filter(|f| f.at_nu_bound).count(),
            }
        };
        let wins = rows.iter().filter(|r| r.genexp.neg_log_lik < r.lomax.neg_log_lik).count();
        Self {
            n,
            n_outliers: k,
            replications: rows.len(),
            ignore: summarise(Method::Ignore),
            lomax: summarise(Method::Lomax),
            genexp: summarise(Method::GenExp),
            genexp_beats_lomax: wins as f64 / rows.len() as f64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    /// Ordered by sample size, outlier count, replication.
    pub rows: Vec<ExperimentRow>,
    /// One cell per (sample size, outlier count).
    pub summary: Vec<CellSummary>,
}

const CSV_HEADER: &str =
    "kind,n,n_outliers,replication,method,error,error_q1,error_q3,tau_hat,nu_hat,neg_log_lik,converged,at_nu_bound\n";

impl ExperimentReport {
    pub fn cell(&self, n: usize, k: usize) -> Option<&CellSummary> {
        self.summary.iter().find(|c| c.n == n && c.n_outliers == k)
    }

    /// Long-format CSV: one line per (replication, method) with
    /// `kind = replication`, then one line per (cell, method) with
    /// `kind = summary`. Summary lines carry the error median and quartiles,
    /// parameter medians, and counts in the flag columns (converged
    /// replications and boundary hits).
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        for row in &self.rows {
            for m in Method::ALL {
                let f = row.method(m);
                let _ = writeln!(
                    out,
                    "replication,{},{},{},{},{},,,{},{},{},{},{}",
                    row.n,
                    row.n_outliers,
                    row.replication,
                    m.name(),
                    fmt_g17(f.error),
                    fmt_g17(f.tau_hat),
                    nu_cell(f.nu_hat),
                    fmt_g17(f.neg_log_lik),
                    f.converged,
                    f.at_nu_bound,
                );
            }
        }
        for cell in &self.summary {
            for m in Method::ALL {
                let s = cell.method(m);
                let _ = writeln!(
                    out,
                    "summary,{},{},,{},{},{},{},{},{},{},{},{}",
                    cell.n,
                    cell.n_outliers,
                    m.name(),
                    fmt_g17(s.error.median),
                    fmt_g17(s.error.q1),
                    fmt_g17(s.error.q3),
                    fmt_g17(s.tau_hat_median),
                    nu_cell(s.nu_hat_median),
                    fmt_g17(s.neg_log_lik_median),
                    cell.replications - s.flagged,
                    s.at_nu_bound,
                );
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }
}

fn nu_cell(nu: Option<f64>) -> String {
    nu.map(fmt_g17).unwrap_or_default()
}

/// Runs every replication of every (sample size, outlier count) cell.
///
/// Replication `r` at sample size `n` draws its clean sample from
/// `substream(base_seed, [n, r])`, so all outlier counts share the same
/// clean data and the report is identical however the work is scheduled.
pub fn run_robustness_study(config: &ExperimentConfig) -> Result<ExperimentReport> {
    config.validate()?;
    let clean_dist = Distribution::new(Family::Exponential, Params::new(1.0, 1.0).with_scale(config.true_tau))?;
    let options = FitOptions::default();

    let tasks: Vec<(usize, usize)> = config
        .sample_sizes
        .iter()
        .flat_map(|&n| (0..config.replications).map(move |r| (n, r)))
        .collect();
    let per_task: Vec<Vec<ExperimentRow>> = tasks
        .par_iter()
        .map(|&(n, r)| {
            let mut rng = substream(config.base_seed, &[n as u64, r as u64]);
            let clean = clean_dist.sample(n, &mut rng);
            let clean_mean = Sample::new("clean", clean.clone()).expect("exponential draws").mean();
            config
                .outlier_counts()
                .map(|k| {
                    let mut values = clean.clone();
                    values.extend_from_slice(&config.outlier_values[..k]);
                    let sample = Sample::new(format!("n{n}k{k}r{r}"), values).expect("validated values");
                    let fits = fit_all(&sample, &options);
                    let pick = |m: Method| {
                        let fit = fits
                            .iter()
                            .find(|(f, _)| *f == m.family())
                            .and_then(|(_, res)| res.as_ref().ok());
                        MethodFit::new(fit, clean_mean)
                    };
                    ExperimentRow {
                        n,
                        n_outliers: k,
                        replication: r,
                        clean_mean,
                        ignore: pick(Method::Ignore),
                        lomax: pick(Method::Lomax),
                        genexp: pick(Method::GenExp),
                    }
                })
                .collect()
        })
        .collect();

    let mut rows: Vec<ExperimentRow> = per_task.into_iter().flatten().collect();
    rows.sort_by_key(|r| (position(&config.sample_sizes, r.n), r.n_outliers, r.replication));

    let mut summary = Vec::new();
    for (i, &n) in config.sample_sizes.iter().enumerate() {
        if config.sample_sizes[..i].contains(&n) {
            continue;
        }
        for k in config.outlier_counts() {
            let cell: Vec<&ExperimentRow> = rows.iter().filter(|r| r.n == n && r.n_outliers == k).collect();
            summary.push(CellSummary::from_rows(n, k, &cell));
        }
    }
    Ok(ExperimentReport {
        config: config.clone(),
        rows,
        summary,
    })
}

fn position(sizes: &[usize], n: usize) -> usize {
    sizes.iter().position(|&s| s == n).unwrap_or(usize::MAX)
}

/// Exponential, generalised-exponential and Lomax densities (all unit
/// scale, the latter two with tail index ν) on a uniform grid over
/// `[0, x_max]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveTable {
    pub log_scale: bool,
    pub x: Vec<f64>,
    pub exp_pdf: Vec<f64>,
    pub genexp_pdf: Vec<f64>,
    pub lomax_pdf: Vec<f64>,
}

/// Smallest value written in log scale: `log₁₀` of the smallest normal `f64`.
pub const LOG10_FLOOR: f64 = -307.652_655_568_588_35;

impl CurveTable {
    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,exp_pdf,genexp_pdf,lomax_pdf\n");
        for i in 0..self.len() {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                fmt_g17(self.x[i]),
                fmt_g17(self.exp_pdf[i]),
                fmt_g17(self.genexp_pdf[i]),
                fmt_g17(self.lomax_pdf[i]),
            );
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("curves serialise")
    }
}

/// Builds the curve table. In log scale each column holds `log₁₀ f(x)`,
/// computed from the log-density and floored at [`LOG10_FLOOR`].
pub fn emit_curves(nu: f64, x_max: f64, points: usize, log_scale: bool) -> Result<CurveTable> {
    if !(nu.is_finite() && nu > 0.0) {
        return Err(Error::domain(format!("nu: {nu} is not finite and > 0")));
    }
    if !(x_max.is_finite() && x_max > 0.0) {
        return Err(Error::domain(format!("xmax: {x_max} is not finite and > 0")));
    }
    if points < 2 {
        return Err(Error::domain(format!("points: {points} < 2")));
    }
    let dists = [Family::Exponential, Family::GenExp, Family::Lomax]
        .map(|f| Distribution::new(f, Params::nu(nu)).expect("validated nu"));
    let x: Vec<f64> = (0..points)
        .map(|i| x_max * i as f64 / (points - 1) as f64)
        .collect();
    let column = |d: &Distribution| -> Vec<f64> {
        x.iter()
            .map(|&xi| {
                if log_scale {
                    (d.log_pdf(xi) / std::f64::consts::LN_10).max(LOG10_FLOOR)
                } else {
                    d.pdf(xi)
                }
            })
            .collect()
    };
    Ok(CurveTable {
        log_scale,
        exp_pdf: column(&dists[0]),
        genexp_pdf: column(&dists[1]),
        lomax_pdf: column(&dists[2]),
        x,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small_config() -> ExperimentConfig {
        ExperimentConfig {
            sample_sizes: vec![10, 50],
            replications: 6,
            include_clean: true,
            base_seed: 99,
            ..ExperimentConfig::default()
        }
    }

    #[test]
    fn clean_cells_have_zero_ignore_error() {
        let report = run_robustness_study(&small_config()).unwrap();
        for row in report.rows.iter().filter(|r| r.n_outliers == 0) {
            assert_eq!(row.error_ignore(), 0.0);
        }
        assert_eq!(report.cell(10, 0).unwrap().ignore.error.median, 0.0);
    }

    #[test]
    fn ignore_error_matches_direct_computation() {
        let cfg = small_config();
        let report = run_robustness_study(&cfg).unwrap();
        for row in report.rows.iter().filter(|r| r.n_outliers > 0) {
            let n = row.n as f64;
            let k = row.n_outliers;
            let extra: f64 = cfg.outlier_values[..k].iter().sum();
            let direct = ((n * row.clean_mean + extra) / (n + k as f64) - row.clean_mean).abs();
            assert!((row.error_ignore() - direct).abs() <= 1e-12 * (1.0 + direct), "{row:?}");
        }
    }

    #[test]
    fn genexp_never_worse_than_exponential() {
        let report = run_robustness_study(&small_config()).unwrap();
        for row in &report.rows {
            assert!(row.genexp.neg_log_lik <= row.ignore.neg_log_lik + 1e-6, "{row:?}");
        }
    }

    #[test]
    fn shapes_and_ordering() {
        let cfg = small_config();
        let report = run_robustness_study(&cfg).unwrap();
        assert_eq!(report.rows.len(), 2 * 3 * 6);
        assert_eq!(report.summary.len(), 2 * 3);
        let keys: Vec<(usize, usize, usize)> = report.rows.iter().map(|r| (r.n, r.n_outliers, r.replication)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        let csv = report.to_csv();
        assert_eq!(csv.lines().count(), 1 + 3 * report.rows.len() + 3 * report.summary.len());
        let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(json["summary"].as_array().unwrap().len(), 6);
    }

    #[test]
    fn default_grid_has_six_contaminated_cells() {
        let cfg = ExperimentConfig {
            replications: 1,
            ..ExperimentConfig::default()
        };
        let report = run_robustness_study(&cfg).unwrap();
        let cells: Vec<(usize, usize)> = report.summary.iter().map(|c| (c.n, c.n_outliers)).collect();
        assert_eq!(cells, vec![(10, 1), (10, 2), (100, 1), (100, 2), (1000, 1), (1000, 2)]);
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let cfg = small_config();
        let a = run_robustness_study(&cfg).unwrap().to_csv();
        let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let b = pool.install(|| run_robustness_study(&cfg).unwrap().to_csv());
        assert_eq!(a, b);
    }

    #[test]
    fn invalid_configs() {
        for cfg in [
            ExperimentConfig { sample_sizes: vec![], ..small_config() },
            ExperimentConfig { sample_sizes: vec![0], ..small_config() },
            ExperimentConfig { replications: 0, ..small_config() },
            ExperimentConfig { outlier_values: vec![-1.0], ..small_config() },
        ] {
            assert!(run_robustness_study(&cfg).is_err());
        }
    }

    #[test]
    fn quartiles_interpolate() {
        let q = Quartiles::of([4.0, 1.0, 3.0, 2.0, f64::NAN]);
        assert_eq!((q.q1, q.median, q.q3), (1.75, 2.5, 3.25));
        assert!(Quartiles::of([]).median.is_nan());
    }

    #[test]
    fn curve_rows() {
        let t = emit_curves(1.0, 10.0, 11, false).unwrap();
        assert_eq!(t.len(), 11);
        assert_eq!((t.exp_pdf[0], t.genexp_pdf[0], t.lomax_pdf[0]), (1.0, 1.0, 1.0));
        assert!((t.exp_pdf[1] - 0.367_879_441_171_442_3).abs() < 1e-15);
        assert!((t.genexp_pdf[1] - (1.0 - std::f64::consts::FRAC_1_SQRT_2)).abs() < 1e-15);
        assert!((t.lomax_pdf[1] - 0.25).abs() < 1e-15);
        assert_eq!(t.to_csv().lines().count(), 12);
    }

    #[test]
    fn log_curves_keep_the_tail_slope() {
        let t = emit_curves(1.0, 1e4, 11, true).unwrap();
        // x = 1e3 and x = 1e4 are the second and last grid points.
        let slope = t.genexp_pdf[10] - t.genexp_pdf[1];
        assert!((slope + 2.0).abs() < 0.01, "{slope}");
        assert_eq!(t.exp_pdf[10], LOG10_FLOOR);
        assert_eq!(t.exp_pdf[0], 0.0);
    }

    #[test]
    fn curve_argument_checks() {
        assert!(emit_curves(0.0, 1.0, 5, false).is_err());
        assert!(emit_curves(1.0, 1.0, 1, false).is_err());
        assert!(emit_curves(1.0, f64::INFINITY, 5, false).is_err());
    }
}
