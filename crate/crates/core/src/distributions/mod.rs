//! The arcsinh-generalised survival distributions and the evaluation
//! contract shared with the classical comparators.
//!
//! Every family is defined for a standard member (scale 1, location 0); a
//! [`DistributionHandle`] applies the location-scale map `x → (x−η)/τ` on top.
//! Arguments below the location have survival 1 and density 0.
//!
//! The generalised exponential is written with `S(x) = exp(−ν·asinh(x/ν))`;
//! note the minus sign, which makes `exp_ν(−x)` decay and reduce to `e^{−x}`.

mod genexp;
mod genexp2;
mod gengamma;
mod genweibull;
mod terms;

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::baselines::{BurrXII, CompoundGamma, Exponential, Lomax};
use crate::error::{check, Error, Result};
use crate::numerics::digamma_pos;
use crate::Scalar;

pub use genexp::{log_survival_series_check, GenExp};
pub use genexp2::GenExpType2;
pub use gengamma::{gen_gamma_rejection, GenGamma, RejectionSampler};
pub use genweibull::GenWeibull;
pub use terms::AsinhTerms;

/// Distribution families known to the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// Generalised exponential: `S(x) = exp(−ν asinh(x/ν))`.
    GenExp,
    /// Generalised Weibull: `S(x) = exp(−ν asinh(x^β/ν))`.
    GenWeibull,
    /// Generalised gamma: survival is an incomplete beta ratio in `q = (C+S)⁻²`.
    GenGamma,
    /// Exponential-type member defined through its density `∝ (C+S)^{−ν−1}`.
    #[serde(rename = "genexp2")]
    GenExpType2,
    #[serde(rename = "exp")]
    Exponential,
    Lomax,
    #[serde(rename = "burr12")]
    BurrXII,
    #[serde(rename = "cgamma")]
    CompoundGamma,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::GenExp,
        Family::GenWeibull,
        Family::GenGamma,
        Family::GenExpType2,
        Family::Exponential,
        Family::Lomax,
        Family::BurrXII,
        Family::CompoundGamma,
    ];

    /// Short name used on the command line and in reports.
    pub fn name(self) -> &'static str {
        match self {
            Family::GenExp => "genexp",
            Family::GenWeibull => "genweibull",
            Family::GenGamma => "gengamma",
            Family::GenExpType2 => "genexp2",
            Family::Exponential => "exp",
            Family::Lomax => "lomax",
            Family::BurrXII => "burr12",
            Family::CompoundGamma => "cgamma",
        }
    }

    pub fn uses_nu(self) -> bool {
        self != Family::Exponential
    }

    pub fn uses_beta(self) -> bool {
        matches!(
            self,
            Family::GenWeibull | Family::GenGamma | Family::BurrXII | Family::CompoundGamma
        )
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown distribution family '{s}'")))
    }
}

/// Parameter bundle shared by all families. Parameters a family does not
/// use are carried along but ignored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Params<T> {
    /// Tail index ν.
    pub nu: T,
    /// Shape β.
    pub beta: T,
    /// Scale τ.
    pub tau: T,
    /// Location η.
    pub eta: T,
}

impl<T: Scalar> Params<T> {
    pub fn new(nu: T, beta: T) -> Self {
        Self {
            nu,
            beta,
            tau: T::one(),
            eta: T::zero(),
        }
    }

    pub fn nu(nu: T) -> Self {
        Self::new(nu, T::one())
    }

    pub fn with_scale(mut self, tau: T) -> Self {
        self.tau = tau;
        self
    }

    pub fn with_location(mut self, eta: T) -> Self {
        self.eta = eta;
        self
    }

    fn validate(&self, family: Family) -> Result<()> {
        if family.uses_nu() {
            check("nu", self.nu, self.nu > T::zero() && self.nu.is_finite(), "finite and > 0")?;
        }
        if family.uses_beta() {
            check("beta", self.beta, self.beta > T::zero() && self.beta.is_finite(), "finite and > 0")?;
        }
        check("tau", self.tau, self.tau > T::zero() && self.tau.is_finite(), "finite and > 0")?;
        check("eta", self.eta, self.eta.is_finite(), "finite")
    }
}

impl<T: Scalar> Default for Params<T> {
    fn default() -> Self {
        Self::new(T::one(), T::one())
    }
}

/// Mean, variance and skewness; `None` where the moment does not exist.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentReport<T> {
    pub mean: Option<T>,
    pub variance: Option<T>,
    pub skewness: Option<T>,
    /// Moments of order `n` exist iff `n < order_threshold`.
    pub order_threshold: T,
}

/// Evaluation contract of a standard (τ = 1, η = 0) member, for `z ≥ 0`.
pub(crate) trait StandardMember<T: Scalar> {
    fn log_survival(&self, z: T) -> T;

    fn survival(&self, z: T) -> T {
        self.log_survival(z).exp()
    }

    fn cdf(&self, z: T) -> T {
        -self.log_survival(z).exp_m1()
    }

    fn log_pdf(&self, z: T) -> T;

    fn pdf(&self, z: T) -> T {
        self.log_pdf(z).exp()
    }

    fn hazard(&self, z: T) -> T {
        (self.log_pdf(z) - self.log_survival(z)).exp()
    }

    /// `p ∈ [0, 1)` is validated by the caller.
    fn quantile(&self, p: T) -> Result<T>;

    /// Existence threshold on the moment order.
    fn moment_threshold(&self) -> T;

    /// `E Z^n` for `0 < n < moment_threshold()`; callers check existence.
    fn raw_moment(&self, n: T) -> T;

    fn mode(&self) -> T;

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> T;
}

/// Evaluates `$body` with `$m` bound to the standard member for the handle's family.
macro_rules! with_member {
    ($handle:expr, $m:ident => $body:expr) => {{
        let p = &$handle.params;
        match $handle.family {
            Family::GenExp => {
                let $m = GenExp::new(p.nu);
                $body
            }
            Family::GenWeibull => {
                let $m = GenWeibull::new(p.nu, p.beta);
                $body
            }
            Family::GenGamma => {
                let $m = GenGamma::new(p.nu, p.beta);
                $body
            }
            Family::GenExpType2 => {
                let $m = GenExpType2::new(p.nu);
                $body
            }
            Family::Exponential => {
                let $m = Exponential;
                $body
            }
            Family::Lomax => {
                let $m = Lomax::new(p.nu);
                $body
            }
            Family::BurrXII => {
                let $m = BurrXII::new(p.nu, p.beta);
                $body
            }
            Family::CompoundGamma => {
                let $m = CompoundGamma::new(p.nu, p.beta);
                $body
            }
        }
    }};
}

/// An immutable (family, parameters) pair exposing the full evaluation contract.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DistributionHandle<T> {
    family: Family,
    params: Params<T>,
}

impl<T: Scalar> DistributionHandle<T> {
    pub fn new(family: Family, params: Params<T>) -> Result<Self> {
        params.validate(family)?;
        Ok(Self { family, params })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn params(&self) -> &Params<T> {
        &self.params
    }

    /// Standardised argument, or `None` when `x` lies below the support.
    fn standardise(&self, x: T) -> Option<T> {
        let z = (x - self.params.eta) / self.params.tau;
        (z >= T::zero()).then_some(z)
    }

    fn unsupported(&self, operation: &'static str) -> Error {
        Error::Unsupported {
            operation,
            family: self.family.name(),
        }
    }

    pub fn survival(&self, x: T) -> T {
        match self.standardise(x) {
            Some(z) => with_member!(self, m => m.survival(z)),
            None if x.is_nan() => T::nan(),
            None => T::one(),
        }
    }

    pub fn log_survival(&self, x: T) -> T {
        match self.standardise(x) {
            Some(z) => with_member!(self, m => m.log_survival(z)),
            None if x.is_nan() => T::nan(),
            None => T::zero(),
        }
    }

    pub fn cdf(&self, x: T) -> T {
        match self.standardise(x) {
            Some(z) => with_member!(self, m => m.cdf(z)),
            None if x.is_nan() => T::nan(),
            None => T::zero(),
        }
    }

    /// Density. Unbounded shapes (β < 1) report `+∞` at the support's lower end.
    pub fn pdf(&self, x: T) -> T {
        match self.standardise(x) {
            Some(z) => with_member!(self, m => m.pdf(z)) / self.params.tau,
            None if x.is_nan() => T::nan(),
            None => T::zero(),
        }
    }

    /// Log density, computed from log-space forms rather than `pdf().ln()`.
    pub fn log_pdf(&self, x: T) -> T {
        match self.standardise(x) {
            Some(z) => with_member!(self, m => m.log_pdf(z)) - self.params.tau.ln(),
            None if x.is_nan() => T::nan(),
            None => T::neg_infinity(),
        }
    }

    pub fn hazard(&self, x: T) -> T {
        match self.standardise(x) {
            Some(z) => with_member!(self, m => m.hazard(z)) / self.params.tau,
            None if x.is_nan() => T::nan(),
            None => T::zero(),
        }
    }

    /// The `x` with `cdf(x) = p`, for `p ∈ [0, 1)`.
    pub fn quantile(&self, p: T) -> Result<T> {
        check("p", p, p >= T::zero() && p < T::one(), "in [0, 1)")?;
        if p == T::zero() {
            return Ok(self.params.eta);
        }
        let z = with_member!(self, m => m.quantile(p))?;
        Ok(self.params.eta + self.params.tau * z)
    }

    /// Raw moments of the standard member exist for orders below this value.
    pub fn moment_threshold(&self) -> T {
        with_member!(self, m => m.moment_threshold())
    }

    /// Raw moment `E X^n`; `Ok(None)` when it does not exist (the integral diverges).
    ///
    /// Fractional orders are allowed when the location is zero; with a
    /// nonzero location only integer orders are supported.
    pub fn moment(&self, n: T) -> Result<Option<T>> {
        check("n", n, n > T::zero() && n.is_finite(), "finite and > 0")?;
        if n >= self.moment_threshold() {
            return Ok(None);
        }
        let Params { tau, eta, .. } = self.params;
        if eta == T::zero() {
            return Ok(Some(tau.powf(n) * self.standard_moment(n)));
        }
        if n.fract() != T::zero() {
            return Err(self.unsupported("fractional moment with nonzero location"));
        }
        // E(η + τZ)^n by binomial expansion.
        let order = n.to_usize().expect("integer order");
        let mut sum = T::zero();
        let mut binom = T::one();
        for k in 0..=order {
            let mk = if k == 0 {
                T::one()
            } else {
                self.standard_moment(T::from_usize_lossy(k))
            };
            sum = sum + binom * eta.powi((order - k) as i32) * tau.powi(k as i32) * mk;
            binom = binom * T::from_usize_lossy(order - k) / T::from_usize_lossy(k + 1);
        }
        Ok(Some(sum))
    }

    fn standard_moment(&self, n: T) -> T {
        with_member!(self, m => m.raw_moment(n))
    }

    /// Mean, variance and skewness of the distribution.
    pub fn moments(&self) -> MomentReport<T> {
        let threshold = self.moment_threshold();
        let Params { tau, eta, .. } = self.params;
        let raw = |n: f64| (T::lit(n) < threshold).then(|| self.standard_moment(T::lit(n)));
        let (mean, variance, skewness) = if self.family == Family::GenExp {
            let g = GenExp::new(self.params.nu);
            (g.mean(), g.variance(), g.skewness())
        } else {
            let m1 = raw(1.0);
            let var = raw(2.0).zip(m1).map(|(m2, m1)| m2 - m1 * m1);
            let skew = raw(3.0).zip(m1).zip(var).map(|((m3, m1), v)| {
                (m3 - T::lit(3.0) * m1 * v - m1 * m1 * m1) / v.powf(T::lit(1.5))
            });
            (m1, var, skew)
        };
        MomentReport {
            mean: mean.map(|m| eta + tau * m),
            variance: variance.map(|v| tau * tau * v),
            skewness,
            order_threshold: threshold,
        }
    }

    /// Closed-form skewness of the generalised exponential; `None` for ν ≤ 3.
    pub fn skewness(&self) -> Result<Option<T>> {
        match self.family {
            Family::GenExp => Ok(GenExp::new(self.params.nu).skewness()),
            _ => Err(self.unsupported("closed-form skewness")),
        }
    }

    pub fn mode(&self) -> T {
        self.params.eta + self.params.tau * with_member!(self, m => m.mode())
    }

    /// Differential entropy of the generalised exponential,
    /// `1 − 1/ν + ψ((ν+2)/4)/2 − ψ(ν/4)/2 + ln τ`.
    pub fn entropy(&self) -> Result<T> {
        if self.family != Family::GenExp {
            return Err(self.unsupported("entropy"));
        }
        let nu = self.params.nu;
        let half = T::lit(0.5);
        let four = T::lit(4.0);
        Ok(T::one() - nu.recip() + half * digamma_pos((nu + T::lit(2.0)) / four)
            - half * digamma_pos(nu / four)
            + self.params.tau.ln())
    }

    /// Location of the hazard maximum for the generalised Weibull; `None`
    /// when β ≤ 1 (the hazard is then monotone decreasing).
    pub fn hazard_argmax(&self) -> Result<Option<T>> {
        match self.family {
            Family::GenWeibull => Ok(GenWeibull::new(self.params.nu, self.params.beta)
                .hazard_argmax()
                .map(|z| self.params.eta + self.params.tau * z)),
            _ => Err(self.unsupported("hazard maximum")),
        }
    }

    /// A single variate.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        self.params.eta + self.params.tau * with_member!(self, m => m.draw(rng))
    }

    /// `n` variates from `rng`; reproducible for a given stream state.
    pub fn sample<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Vec<T> {
        let Params { tau, eta, .. } = self.params;
        with_member!(self, m => (0..n).map(|_| eta + tau * m.draw(rng)).collect())
    }
}
