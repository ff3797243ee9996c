//! Classical comparators: exponential, Lomax (Pareto II), Burr XII
//! (Singh–Maddala) and the compound-gamma (Pearson VI / F-type) distribution.
//!
//! These are the scale-mixture heavy-tailed counterparts of the parent
//! distributions, and implement the same evaluation contract as the
//! generalised family through [`DistributionHandle`](crate::DistributionHandle).

use rand::Rng;
use rand_distr::{Distribution, Gamma, Open01};

use crate::distributions::StandardMember;
use crate::error::Result;
use crate::numerics::{find_root_1d, ln_beta_pos, ln_gamma_pos, reg_inc_beta_pair};
use crate::Scalar;

fn uniform_exponent<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    let u: f64 = rng.sample(Open01);
    -u.ln()
}

/// Unit exponential.
#[derive(Debug, Clone, Copy, Default)]
pub struct Exponential;

impl<T: Scalar> StandardMember<T> for Exponential {
    fn log_survival(&self, z: T) -> T {
        -z
    }

    fn log_pdf(&self, z: T) -> T {
        -z
    }

    fn hazard(&self, _z: T) -> T {
        T::one()
    }

    fn quantile(&self, p: T) -> Result<T> {
        Ok(-(-p).ln_1p())
    }

    fn moment_threshold(&self) -> T {
        T::infinity()
    }

    /// `Γ(n+1)`.
    fn raw_moment(&self, n: T) -> T {
        ln_gamma_pos(n + T::one()).exp()
    }

    fn mode(&self) -> T {
        T::zero()
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        T::lit(uniform_exponent(rng))
    }
}

/// Lomax: `S(x) = (1+x/ν)^{−ν}`, `f(x) = (1+x/ν)^{−ν−1}`.
#[derive(Debug, Clone, Copy)]
pub struct Lomax<T> {
    pub nu: T,
}

impl<T: Scalar> Lomax<T> {
    pub fn new(nu: T) -> Self {
        Self { nu }
    }
}

impl<T: Scalar> StandardMember<T> for Lomax<T> {
    fn log_survival(&self, z: T) -> T {
        -self.nu * (z / self.nu).ln_1p()
    }

    fn log_pdf(&self, z: T) -> T {
        -(self.nu + T::one()) * (z / self.nu).ln_1p()
    }

    fn hazard(&self, z: T) -> T {
        (T::one() + z / self.nu).recip()
    }

    /// `ν((1−p)^{−1/ν} − 1)`.
    fn quantile(&self, p: T) -> Result<T> {
        Ok(self.nu * (-(-p).ln_1p() / self.nu).exp_m1())
    }

    fn moment_threshold(&self) -> T {
        self.nu
    }

    /// `ν^{n+1} B(n+1, ν−n)`.
    fn raw_moment(&self, n: T) -> T {
        let one = T::one();
        ((n + one) * self.nu.ln() + ln_beta_pos(n + one, self.nu - n)).exp()
    }

    fn mode(&self) -> T {
        T::zero()
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        self.nu * (T::lit(uniform_exponent(rng)) / self.nu).exp_m1()
    }
}

/// Burr XII (Singh–Maddala): `S(x) = (1+x^β/ν)^{−ν}`.
#[derive(Debug, Clone, Copy)]
pub struct BurrXII<T> {
    pub nu: T,
    pub beta: T,
}

impl<T: Scalar> BurrXII<T> {
    pub fn new(nu: T, beta: T) -> Self {
        Self { nu, beta }
    }

    fn ln_jacobian(&self, z: T) -> T {
        let one = T::one();
        if z == T::zero() {
            return if self.beta > one {
                T::neg_infinity()
            } else if self.beta < one {
                T::infinity()
            } else {
                T::zero()
            };
        }
        self.beta.ln() + (self.beta - one) * z.ln()
    }
}

impl<T: Scalar> StandardMember<T> for BurrXII<T> {
    fn log_survival(&self, z: T) -> T {
        -self.nu * (z.powf(self.beta) / self.nu).ln_1p()
    }

    fn log_pdf(&self, z: T) -> T {
        self.ln_jacobian(z) - (self.nu + T::one()) * (z.powf(self.beta) / self.nu).ln_1p()
    }

    fn hazard(&self, z: T) -> T {
        (self.ln_jacobian(z) - (z.powf(self.beta) / self.nu).ln_1p()).exp()
    }

    /// `{ν((1−p)^{−1/ν} − 1)}^{1/β}`.
    fn quantile(&self, p: T) -> Result<T> {
        let y = self.nu * (-(-p).ln_1p() / self.nu).exp_m1();
        Ok(y.powf(self.beta.recip()))
    }

    fn moment_threshold(&self) -> T {
        self.beta * self.nu
    }

    /// `X^β` is Lomax, so `E X^n = ν^{n/β+1} B(n/β+1, ν−n/β)`.
    fn raw_moment(&self, n: T) -> T {
        let k = n / self.beta;
        let one = T::one();
        ((k + one) * self.nu.ln() + ln_beta_pos(k + one, self.nu - k)).exp()
    }

    /// `{ν(β−1)/(νβ+1)}^{1/β}` for β > 1.
    fn mode(&self) -> T {
        let one = T::one();
        if self.beta <= one {
            return T::zero();
        }
        (self.nu * (self.beta - one) / (self.nu * self.beta + one)).powf(self.beta.recip())
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        let y = self.nu * (T::lit(uniform_exponent(rng)) / self.nu).exp_m1();
        y.powf(self.beta.recip())
    }
}

/// Compound gamma (F-type, Pearson VI):
/// `f(x) = ν⁻¹ (x/ν)^{β−1} / (B(ν, β) (1+x/ν)^{ν+β})`.
///
/// With `u = x/(ν+x)`, the cdf is `I_u(β, ν)`.
#[derive(Debug, Clone, Copy)]
pub struct CompoundGamma<T> {
    pub nu: T,
    pub beta: T,
}

impl<T: Scalar> CompoundGamma<T> {
    pub fn new(nu: T, beta: T) -> Self {
        Self { nu, beta }
    }

    fn tails(&self, z: T) -> (T, T) {
        let u = z / (self.nu + z);
        let v = self.nu / (self.nu + z);
        // (survival, cdf)
        reg_inc_beta_pair(u, v, self.beta, self.nu)
            .map(|(cdf, sf)| (sf, cdf))
            .unwrap_or((T::nan(), T::nan()))
    }
}

impl<T: Scalar> StandardMember<T> for CompoundGamma<T> {
    fn log_survival(&self, z: T) -> T {
        self.tails(z).0.ln()
    }

    fn survival(&self, z: T) -> T {
        self.tails(z).0
    }

    fn cdf(&self, z: T) -> T {
        self.tails(z).1
    }

    fn log_pdf(&self, z: T) -> T {
        let one = T::one();
        let t = z / self.nu;
        let jac = if z == T::zero() {
            if self.beta > one {
                T::neg_infinity()
            } else if self.beta < one {
                T::infinity()
            } else {
                T::zero()
            }
        } else {
            (self.beta - one) * t.ln()
        };
        jac - self.nu.ln() - ln_beta_pos(self.nu, self.beta) - (self.nu + self.beta) * t.ln_1p()
    }

    fn quantile(&self, p: T) -> Result<T> {
        let one = T::one();
        let u = find_root_1d(
            |u| {
                reg_inc_beta_pair(u, one - u, self.beta, self.nu)
                    .map(|(i, _)| i - p)
                    .unwrap_or(T::nan())
            },
            T::zero(),
            one,
            T::zero(),
        )?;
        Ok(self.nu * u / (one - u))
    }

    fn moment_threshold(&self) -> T {
        self.nu
    }

    /// `ν^n B(β+n, ν−n) / B(β, ν)`.
    fn raw_moment(&self, n: T) -> T {
        (n * self.nu.ln() + ln_beta_pos(self.beta + n, self.nu - n) - ln_beta_pos(self.beta, self.nu)).exp()
    }

    /// `ν(β−1)/(ν+1)` for β > 1.
    fn mode(&self) -> T {
        let one = T::one();
        if self.beta <= one {
            return T::zero();
        }
        self.nu * (self.beta - one) / (self.nu + one)
    }

    /// `ν·G₁/G₂` with `G₁ ~ Γ(β)`, `G₂ ~ Γ(ν)`.
    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        let g1 = Gamma::new(self.beta.as_f64(), 1.0).expect("beta > 0").sample(rng);
        let g2 = Gamma::new(self.nu.as_f64(), 1.0).expect("nu > 0").sample(rng);
        T::lit(self.nu.as_f64() * g1 / g2)
    }
}

// Free-function forms of the comparator formulas, for standard members.

pub fn exponential_survival<T: Scalar>(x: T) -> T {
    (-x.max(T::zero())).exp()
}

pub fn exponential_pdf<T: Scalar>(x: T) -> T {
    if x < T::zero() {
        T::zero()
    } else {
        (-x).exp()
    }
}

pub fn exponential_quantile<T: Scalar>(p: T) -> Result<T> {
    crate::DistributionHandle::new(crate::Family::Exponential, crate::Params::default())?.quantile(p)
}

pub fn lomax_survival<T: Scalar>(x: T, nu: T) -> T {
    if x <= T::zero() {
        T::one()
    } else {
        Lomax::new(nu).survival(x)
    }
}

pub fn lomax_pdf<T: Scalar>(x: T, nu: T) -> T {
    if x < T::zero() {
        T::zero()
    } else {
        Lomax::new(nu).pdf(x)
    }
}

pub fn lomax_quantile<T: Scalar>(p: T, nu: T) -> Result<T> {
    crate::DistributionHandle::new(crate::Family::Lomax, crate::Params::nu(nu))?.quantile(p)
}

pub fn burr12_survival<T: Scalar>(x: T, nu: T, beta: T) -> T {
    if x <= T::zero() {
        T::one()
    } else {
        BurrXII::new(nu, beta).survival(x)
    }
}

pub fn burr12_pdf<T: Scalar>(x: T, nu: T, beta: T) -> T {
    if x < T::zero() {
        T::zero()
    } else {
        BurrXII::new(nu, beta).pdf(x)
    }
}

pub fn compound_gamma_pdf<T: Scalar>(x: T, nu: T, beta: T) -> T {
    if x < T::zero() {
        T::zero()
    } else {
        CompoundGamma::new(nu, beta).pdf(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::adaptive_quadrature;
    use crate::{Distribution, Family, Params};

    #[test]
    fn lomax_examples() {
        assert!((lomax_survival(1.0f64, 1.0) - 0.5).abs() < 1e-15);
        assert!((lomax_pdf(1.0f64, 1.0) - 0.25).abs() < 1e-15);
        assert!((lomax_quantile(0.75f64, 2.0).unwrap() - 2.0).abs() < 1e-14);
        let mean = adaptive_quadrature(|x: f64| lomax_survival(x, 2.0), 0.0, f64::INFINITY, 1e-11)
            .unwrap()
            .value;
        assert!((mean - 2.0).abs() < 1e-8);
        let d = Distribution::new(Family::Lomax, Params::nu(2.0)).unwrap();
        assert!((d.moment(1.0).unwrap().unwrap() - 2.0).abs() < 1e-13);
    }

    #[test]
    fn lomax_log_survival_is_quadratic_near_zero() {
        // The remainder of the quadratic expansion is the alternating cubic
        // term x³/(3ν²), so it stays within 1e-4 only up to x ≈ 0.067.
        for i in 1..=10 {
            let x = i as f64 / 100.0;
            let dev = (lomax_survival(x, 1.0).ln() + x - x * x / 2.0).abs();
            assert!(dev <= x * x * x / 3.0, "x={x} dev={dev}");
            assert!(dev >= x * x * x / 3.0 - x.powi(4) / 4.0, "x={x} dev={dev}");
            if x <= 0.06 {
                assert!(dev <= 1e-4, "x={x} dev={dev}");
            }
        }
    }

    #[test]
    fn burr12_reduces_to_lomax() {
        assert_eq!(burr12_survival(0.0, 2.0, 3.0), 1.0);
        for i in 0..50 {
            let x = i as f64 * 0.37;
            assert!((burr12_survival(x, 1.7, 1.0) - lomax_survival(x, 1.7)).abs() < 1e-15);
            assert!((burr12_pdf(x, 1.7, 1.0) - lomax_pdf(x, 1.7)).abs() < 1e-15);
        }
    }

    #[test]
    fn comparators_normalise() {
        type Pdf = fn(f64) -> f64;
        let cases: [(&str, Pdf); 4] = [
            ("burr12", |x| burr12_pdf(x, 2.0, 1.5)),
            ("cgamma", |x| compound_gamma_pdf(x, 2.0, 1.0)),
            ("cgamma β=3", |x| compound_gamma_pdf(x, 4.0, 3.0)),
            ("exp", exponential_pdf),
        ];
        for (name, f) in cases {
            let r = adaptive_quadrature(f, 0.0, f64::INFINITY, 1e-11).unwrap();
            assert!((r.value - 1.0).abs() < 1e-8, "{name}: {}", r.value);
        }
    }

    #[test]
    fn exponential_examples() {
        assert!((exponential_survival(2f64.ln()) - 0.5).abs() < 1e-15);
        assert!((exponential_quantile(0.5).unwrap() - 2f64.ln()).abs() < 1e-15);
        let d = Distribution::new(Family::Exponential, Params::default().with_scale(2.5)).unwrap();
        assert!((d.moments().mean.unwrap() - 2.5).abs() < 1e-14);
    }

    #[test]
    fn compound_gamma_mean_and_mode() {
        let d = Distribution::new(Family::CompoundGamma, Params::new(2.0, 1.0)).unwrap();
        assert!((d.moment(1.0).unwrap().unwrap() - 2.0).abs() < 1e-13);
        let d = Distribution::new(Family::CompoundGamma, Params::new(5.0, 3.0)).unwrap();
        assert!((d.mode() - 5.0 * 2.0 / 6.0).abs() < 1e-15);
    }
}
