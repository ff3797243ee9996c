use rand::Rng;
use rand_distr::Open01;

use super::StandardMember;
use crate::error::{check, Result};
use crate::numerics::{asinh_pos, ln_beta_pos, ln_hypot1};
use crate::Scalar;

/// Standard generalised exponential with tail index ν.
///
/// `S(x) = (C+S)^{−ν}`, `f(x) = S(x)/C`, `h(x) = 1/C` with `C = √(1+(x/ν)²)`,
/// `S = x/ν`. The hazard falls off only through `(x/ν)²`, so the body stays
/// close to the unit exponential while the tail decays like `x^{−ν}`.
#[derive(Debug, Clone, Copy)]
pub struct GenExp<T> {
    pub nu: T,
}

impl<T: Scalar> GenExp<T> {
    pub fn new(nu: T) -> Self {
        Self { nu }
    }

    /// `ν²/(ν²−1)` for ν > 1.
    pub fn mean(&self) -> Option<T> {
        let nu2 = self.nu * self.nu;
        (self.nu > T::one()).then(|| nu2 / (nu2 - T::one()))
    }

    /// `2ν²/(ν²−4)` for ν > 2.
    pub fn second_moment(&self) -> Option<T> {
        let nu2 = self.nu * self.nu;
        (self.nu > T::lit(2.0)).then(|| T::lit(2.0) * nu2 / (nu2 - T::lit(4.0)))
    }

    /// `6ν⁴/((ν²−1)(ν²−9))` for ν > 3.
    pub fn third_moment(&self) -> Option<T> {
        let nu2 = self.nu * self.nu;
        (self.nu > T::lit(3.0))
            .then(|| T::lit(6.0) * nu2 * nu2 / ((nu2 - T::one()) * (nu2 - T::lit(9.0))))
    }

    /// `ν²(ν⁴+2)/((ν²−1)²(ν²−4))` for ν > 2.
    pub fn variance(&self) -> Option<T> {
        let nu2 = self.nu * self.nu;
        let m = nu2 - T::one();
        (self.nu > T::lit(2.0)).then(|| nu2 * (nu2 * nu2 + T::lit(2.0)) / (m * m * (nu2 - T::lit(4.0))))
    }

    /// `2ν(ν⁶+2ν⁴+6ν²+15)(ν²−4)^{1/2} / ((ν²−9)(ν⁴+2)^{3/2})` for ν > 3.
    pub fn skewness(&self) -> Option<T> {
        let nu = self.nu;
        let nu2 = nu * nu;
        let nu4 = nu2 * nu2;
        (nu > T::lit(3.0)).then(|| {
            let poly = nu4 * nu2 + T::lit(2.0) * nu4 + T::lit(6.0) * nu2 + T::lit(15.0);
            T::lit(2.0) * nu * poly * (nu2 - T::lit(4.0)).sqrt()
                / ((nu2 - T::lit(9.0)) * (nu4 + T::lit(2.0)).powf(T::lit(1.5)))
        })
    }
}

impl<T: Scalar> StandardMember<T> for GenExp<T> {
    fn log_survival(&self, z: T) -> T {
        -self.nu * asinh_pos(z / self.nu)
    }

    fn log_pdf(&self, z: T) -> T {
        let s = z / self.nu;
        -self.nu * asinh_pos(s) - ln_hypot1(s)
    }

    fn hazard(&self, z: T) -> T {
        (-ln_hypot1(z / self.nu)).exp()
    }

    fn quantile(&self, p: T) -> Result<T> {
        Ok(self.nu * (-(-p).ln_1p() / self.nu).sinh())
    }

    fn moment_threshold(&self) -> T {
        self.nu
    }

    /// `(ν/2)^{1+n} B((ν−n)/2, 1+n)`, the β = 1 case of the Weibull formula.
    /// Integer orders up to 3 use the rational closed forms; other orders
    /// `(ν/2)^{1+n} B((ν−n)/2, 1+n)`.
    fn raw_moment(&self, n: T) -> T {
        let closed = match n.to_f64() {
            Some(1.0) => self.mean(),
            Some(2.0) => self.second_moment(),
            Some(3.0) => self.third_moment(),
            _ => None,
        };
        if let Some(m) = closed {
            return m;
        }
        let half = T::lit(0.5);
        let one = T::one();
        ((one + n) * (self.nu * half).ln() + ln_beta_pos((self.nu - n) * half, one + n)).exp()
    }

    fn mode(&self) -> T {
        T::zero()
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        let u: f64 = rng.sample(Open01);
        self.nu * (T::lit(-u.ln()) / self.nu).sinh()
    }
}

/// Exact `ln S(x)` of the standard generalised exponential alongside its
/// three-term expansion `−x + (ν/6)(x/ν)³ − (3ν/40)(x/ν)⁵`.
///
/// The correction terms carry the signs of the Taylor series of
/// `−ν asinh(x/ν)`: the tail is heavier than exponential, so `ln S ≥ −x`.
///
/// Returns `(exact, series)`; requires `x/ν ≤ 0.5`.
pub fn log_survival_series_check<T: Scalar>(x: T, nu: T) -> Result<(T, T)> {
    check("nu", nu, nu > T::zero() && nu.is_finite(), "finite and > 0")?;
    check("x", x, x >= T::zero() && x / nu <= T::lit(0.5), "in [0, nu/2]")?;
    let s = x / nu;
    let exact = GenExp::new(nu).log_survival(x);
    let s3 = s * s * s;
    let series = -x + nu / T::lit(6.0) * s3 - T::lit(3.0) * nu / T::lit(40.0) * s3 * s * s;
    Ok((exact, series))
}
