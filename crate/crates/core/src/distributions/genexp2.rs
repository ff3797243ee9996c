use rand::Rng;
use rand_distr::Open01;

use super::StandardMember;
use crate::error::Result;
use crate::numerics::{asinh_pos, find_root_1d, ln_beta_pos};
use crate::Scalar;

/// Second exponential-type member: the density, not the survival function,
/// is the generalised exponential kernel.
///
/// With `r = (C+S)⁻¹`: `f(x) = k r^{ν+1}`, `k = (ν+2)/(ν+1)`, and
/// `S(x) = (ν r^{ν+2} + (ν+2) r^ν) / (2(ν+1))`.
#[derive(Debug, Clone, Copy)]
pub struct GenExpType2<T> {
    pub nu: T,
}

impl<T: Scalar> GenExpType2<T> {
    pub fn new(nu: T) -> Self {
        Self { nu }
    }

    /// Normalising constant `(ν+2)/(ν+1)`.
    pub fn norm_const(&self) -> T {
        (self.nu + T::lit(2.0)) / (self.nu + T::one())
    }

    /// ln S as a function of `a = asinh(z/ν)`:
    /// `−νa + ln(1 − ν(1−r²)/(2(ν+1)))`.
    fn log_survival_at(&self, a: T) -> T {
        let one_minus_r2 = -(-(a + a)).exp_m1();
        -self.nu * a + (-self.nu * one_minus_r2 / (T::lit(2.0) * (self.nu + T::one()))).ln_1p()
    }

    /// `E X = ν²(ν+2)/((ν−1)(ν+1)(ν+3))` for ν > 1.
    pub fn mean(&self) -> Option<T> {
        let nu = self.nu;
        let one = T::one();
        (nu > one).then(|| nu * nu * (nu + T::lit(2.0)) / ((nu - one) * (nu + one) * (nu + T::lit(3.0))))
    }

    /// `E X² = 2ν²/((ν−2)(ν+4))` for ν > 2.
    pub fn second_moment(&self) -> Option<T> {
        let nu = self.nu;
        (nu > T::lit(2.0)).then(|| T::lit(2.0) * nu * nu / ((nu - T::lit(2.0)) * (nu + T::lit(4.0))))
    }
}

impl<T: Scalar> StandardMember<T> for GenExpType2<T> {
    fn log_survival(&self, z: T) -> T {
        self.log_survival_at(asinh_pos(z / self.nu))
    }

    fn log_pdf(&self, z: T) -> T {
        self.norm_const().ln() - (self.nu + T::one()) * asinh_pos(z / self.nu)
    }

    /// Solved for `a = asinh(x/ν)`; `ln S` is monotone in `a`, and the
    /// bracket `[0, a_max]` is derived from `ln S ≤ −νa`.
    fn quantile(&self, p: T) -> Result<T> {
        let target = (-p).ln_1p();
        let a_max = (-target + (T::lit(2.0) * (self.nu + T::one()) / (self.nu + T::lit(2.0))).ln())
            / self.nu
            + T::one();
        let a = find_root_1d(|a| self.log_survival_at(a) - target, T::zero(), a_max, T::zero())?;
        Ok(self.nu * a.sinh())
    }

    fn moment_threshold(&self) -> T {
        self.nu
    }

    /// `k (ν/2)^{n+1} [B(m, n+1) + B(m+1, n+1)] / 2` with `m = (ν−n)/2`.
    fn raw_moment(&self, n: T) -> T {
        let half = T::lit(0.5);
        let one = T::one();
        let m = (self.nu - n) * half;
        let lead = self.norm_const().ln() + (n + one) * (self.nu * half).ln();
        half * ((lead + ln_beta_pos(m, n + one)).exp() + (lead + ln_beta_pos(m + one, n + one)).exp())
    }

    fn mode(&self) -> T {
        T::zero()
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        let u: f64 = rng.sample(Open01);
        // Rounding to a narrower scalar can land on 1.
        let p = T::lit(u).min(T::one() - T::epsilon());
        self.quantile(p).expect("quantile of an interior probability")
    }
}
