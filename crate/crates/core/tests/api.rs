use asinh_survival::experiments::{emit_curves, run_robustness_study, ExperimentConfig};
use asinh_survival::fitting::{fit_all, fit_mle, FitOptions, Sample};
use asinh_survival::rng::substream;
use asinh_survival::{Distribution, DistributionF32, Family, Params, Params32};

#[test]
fn sample_then_fit_recovers_scale() {
    let truth = Distribution::new(Family::GenExp, Params::nu(3.0).with_scale(2.0)).unwrap();
    let xs = truth.sample(4000, &mut substream(41, &[0]));
    let sample = Sample::new("genexp", xs).unwrap();
    let fit = fit_mle(Family::GenExp, &sample, &FitOptions::default()).unwrap();
    assert!(fit.converged);
    assert!((fit.estimates.tau / 2.0 - 1.0).abs() < 0.1, "{fit:?}");

    let ranked = fit_all(&sample, &FitOptions::default());
    assert_eq!(ranked.len(), 3);
    let nll: Vec<f64> = ranked.iter().map(|(_, r)| r.as_ref().unwrap().neg_log_lik).collect();
    assert!(nll.windows(2).all(|w| w[0] <= w[1]));
}

#[test]
fn single_precision_handle_tracks_double() {
    let d64 = Distribution::new(Family::GenWeibull, Params::new(2.0, 1.5)).unwrap();
    let d32 = DistributionF32::new(Family::GenWeibull, Params32::new(2.0, 1.5)).unwrap();
    for x in [0.1f64, 1.0, 4.0, 50.0] {
        let a = d64.survival(x);
        let b = d32.survival(x as f32) as f64;
        assert!((a - b).abs() <= 1e-5 * a.max(1e-30) + 1e-7, "x={x}: {a} vs {b}");
    }
}

#[test]
fn small_study_serialises_both_ways() {
    let config = ExperimentConfig {
        sample_sizes: vec![30],
        replications: 5,
        ..ExperimentConfig::default()
    };
    let report = run_robustness_study(&config).unwrap();
    assert_eq!(report.rows.len(), 2 * 5);
    let json: serde_json::Value = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(json["summary"].as_array().unwrap().len(), 2);
    let csv = report.to_csv();
    assert!(csv.starts_with("kind,n,n_outliers,"));
    assert_eq!(csv.lines().filter(|l| l.starts_with("summary,")).count(), 2 * 3);
}

#[test]
fn log_curves_stay_finite() {
    let table = emit_curves(1.0, 1e4, 5, true).unwrap();
    assert!(table.exp_pdf.iter().all(|v| v.is_finite()));
    assert!(table.lomax_pdf.iter().zip(&table.genexp_pdf).all(|(l, g)| l.is_finite() && g.is_finite()));
}
