use rand::Rng;

use super::{GenExp, StandardMember};
use crate::error::Result;
use crate::numerics::{asinh_pos, ln_beta_pos, ln_hypot1};
use crate::Scalar;

/// Standard generalised Weibull: `S(x) = exp(−ν asinh(x^β/ν))`.
#[derive(Debug, Clone, Copy)]
pub struct GenWeibull<T> {
    pub nu: T,
    pub beta: T,
}

impl<T: Scalar> GenWeibull<T> {
    pub fn new(nu: T, beta: T) -> Self {
        Self { nu, beta }
    }

    /// `ln β + (β−1) ln z`, with the limits at `z = 0` resolved by β.
    fn ln_jacobian(&self, z: T) -> T {
        let one = T::one();
        if z == T::zero() {
            return if self.beta > one {
                T::neg_infinity()
            } else if self.beta < one {
                T::infinity()
            } else {
                self.beta.ln()
            };
        }
        self.beta.ln() + (self.beta - one) * z.ln()
    }

    /// Hazard maximum `ν^{1/β}(β−1)^{1/(2β)}` for β > 1.
    pub fn hazard_argmax(&self) -> Option<T> {
        let one = T::one();
        (self.beta > one).then(|| {
            self.nu.powf(self.beta.recip()) * (self.beta - one).powf((self.beta + self.beta).recip())
        })
    }
}

impl<T: Scalar> StandardMember<T> for GenWeibull<T> {
    fn log_survival(&self, z: T) -> T {
        -self.nu * asinh_pos(z.powf(self.beta) / self.nu)
    }

    fn log_pdf(&self, z: T) -> T {
        let s = z.powf(self.beta) / self.nu;
        self.ln_jacobian(z) - self.nu * asinh_pos(s) - ln_hypot1(s)
    }

    fn hazard(&self, z: T) -> T {
        let s = z.powf(self.beta) / self.nu;
        (self.ln_jacobian(z) - ln_hypot1(s)).exp()
    }

    fn quantile(&self, p: T) -> Result<T> {
        let y = self.nu * (-(-p).ln_1p() / self.nu).sinh();
        Ok(y.powf(self.beta.recip()))
    }

    fn moment_threshold(&self) -> T {
        self.beta * self.nu
    }

    /// `(ν/2)^{1+n/β} B((ν−n/β)/2, 1+n/β)`.
    fn raw_moment(&self, n: T) -> T {
        let half = T::lit(0.5);
        let k = T::one() + n / self.beta;
        (k * (self.nu * half).ln() + ln_beta_pos((self.nu - n / self.beta) * half, k)).exp()
    }

    /// For β > 1, squaring the stationarity condition of the log density gives
    /// a quadratic in `w = (x^β/ν)²` whose positive root is taken.
    fn mode(&self) -> T {
        let one = T::one();
        let two = T::lit(2.0);
        let (nu, beta) = (self.nu, self.beta);
        if beta <= one {
            return T::zero();
        }
        let bm1 = beta - one;
        let nb2 = (nu * beta) * (nu * beta);
        // ν²w = 2(β−1)²ν² / ((νβ)² + 2(β−1) + √((νβ)⁴ + 4(νβ)²β(β−1))),
        // with (νβ)² factored out of the denominator.
        let denom = one + two * bm1 / nb2 + (one + T::lit(4.0) * beta * bm1 / nb2).sqrt();
        let y2 = two * bm1 * bm1 * nu * nu / (nb2 * denom);
        y2.powf((two * beta).recip())
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        GenExp::new(self.nu).draw(rng).powf(self.beta.recip())
    }
}
