//! Special functions, quadrature and one-dimensional optimisation.
//!
//! All functions are pure and reject NaN arguments with [`Error::Domain`](crate::Error).

mod optimize;
mod quadrature;
mod special;

pub use optimize::{find_max_1d, find_root_1d};
pub use quadrature::{adaptive_quadrature, Integrator, QuadratureResult};
pub use special::{
    beta_fn, digamma, ln_reg_inc_beta, log_beta, log_gamma, reg_inc_beta, reg_inc_beta_pair,
    stable_asinh_scaled, EULER_GAMMA,
};
pub(crate) use special::{asinh_pos, digamma_pos, ln_beta_pos, ln_gamma_pos, ln_hypot1};

/// One-sample Kolmogorov–Smirnov statistic `sup |F_n(x) − F(x)|`.
///
/// `values` is sorted in place.
pub fn ks_statistic<F: FnMut(f64) -> f64>(values: &mut [f64], mut cdf: F) -> f64 {
    values.sort_by(|a, b| a.total_cmp(b));
    let n = values.len() as f64;
    values
        .iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            let above = (i as f64 + 1.0) / n - f;
            let below = f - i as f64 / n;
            above.max(below)
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ks_of_uniform_grid_is_small() {
        let mut v: Vec<f64> = (0..1000).map(|i| (i as f64 + 0.5) / 1000.0).collect();
        let d = ks_statistic(&mut v, |x| x);
        assert!((d - 0.0005).abs() < 1e-12);
    }

    #[test]
    fn ks_detects_shift() {
        let mut v: Vec<f64> = (0..1000).map(|i| 0.5 + (i as f64 + 0.5) / 2000.0).collect();
        assert!(ks_statistic(&mut v, |x| x) > 0.49);
    }
}
