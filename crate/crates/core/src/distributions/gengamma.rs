use rand::Rng;
use rand_distr::{Distribution, Gamma};

use super::{AsinhTerms, Params, StandardMember};
use crate::error::Result;
use crate::numerics::{find_root_1d, ln_beta_pos, ln_reg_inc_beta, reg_inc_beta_pair};
use crate::Scalar;

/// Standard generalised gamma with tail index ν and shape β:
///
/// `f(x) = (2/ν)^β x^{β−1} (C+S)^{−(ν+β−1)} / (C·B(ν/2, β))`,
/// `S(x) = I_q(ν/2, β)` with `q = (C+S)⁻²` and `I` the regularised
/// incomplete beta ratio.
#[derive(Debug, Clone, Copy)]
pub struct GenGamma<T> {
    pub nu: T,
    pub beta: T,
    ln_norm: T,
}

impl<T: Scalar> GenGamma<T> {
    pub fn new(nu: T, beta: T) -> Self {
        let ln_norm = beta * (T::lit(2.0) / nu).ln() - ln_beta_pos(nu * T::lit(0.5), beta);
        Self { nu, beta, ln_norm }
    }

    fn tails(&self, z: T) -> (T, T) {
        let t = AsinhTerms::new(z, self.nu);
        // (survival, cdf)
        reg_inc_beta_pair(t.q, t.one_minus_q(), self.nu * T::lit(0.5), self.beta)
            .unwrap_or((T::nan(), T::nan()))
    }
}

impl<T: Scalar> StandardMember<T> for GenGamma<T> {
    fn log_survival(&self, z: T) -> T {
        let t = AsinhTerms::new(z, self.nu);
        ln_reg_inc_beta(t.q, t.one_minus_q(), self.nu * T::lit(0.5), self.beta).unwrap_or(T::nan())
    }

    fn survival(&self, z: T) -> T {
        self.tails(z).0
    }

    fn cdf(&self, z: T) -> T {
        self.tails(z).1
    }

    fn log_pdf(&self, z: T) -> T {
        let one = T::one();
        let t = AsinhTerms::new(z, self.nu);
        let jac = if z == T::zero() {
            if self.beta > one {
                T::neg_infinity()
            } else if self.beta < one {
                T::infinity()
            } else {
                T::zero()
            }
        } else {
            (self.beta - one) * z.ln()
        };
        self.ln_norm + jac - (self.nu + self.beta - one) * t.ln_cs - t.ln_c
    }

    /// Inverted in the bounded variable: `u = 1 − q` in the lower half
    /// (cdf `I_u(β, ν/2)`), `q` in the upper half (survival `I_q(ν/2, β)`).
    fn quantile(&self, p: T) -> Result<T> {
        let one = T::one();
        let half_nu = self.nu * T::lit(0.5);
        if p <= T::lit(0.5) {
            let u = find_root_1d(
                |u| {
                    reg_inc_beta_pair(u, one - u, self.beta, half_nu)
                        .map(|(i, _)| i - p)
                        .unwrap_or(T::nan())
                },
                T::zero(),
                one,
                T::zero(),
            )?;
            Ok(AsinhTerms::z_from_q(one - u, u, self.nu))
        } else {
            let target = one - p;
            let q = find_root_1d(
                |q| {
                    reg_inc_beta_pair(q, one - q, half_nu, self.beta)
                        .map(|(i, _)| i - target)
                        .unwrap_or(T::nan())
                },
                T::zero(),
                one,
                T::zero(),
            )?;
            Ok(AsinhTerms::z_from_q(q, one - q, self.nu))
        }
    }

    fn moment_threshold(&self) -> T {
        self.nu
    }

    /// `(ν/2)^n B((ν−n)/2, β+n) / B(ν/2, β)`.
    fn raw_moment(&self, n: T) -> T {
        let half = T::lit(0.5);
        (n * (self.nu * half).ln() + ln_beta_pos((self.nu - n) * half, self.beta + n)
            - ln_beta_pos(self.nu * half, self.beta))
        .exp()
    }

    /// For β > 1 the stationarity condition, squared, is a quadratic in
    /// `(x/ν)²`; `B = ν² + (β−1)(2ν−β+3)`.
    fn mode(&self) -> T {
        let one = T::one();
        let (nu, beta) = (self.nu, self.beta);
        if beta <= one {
            return T::zero();
        }
        let bm1 = beta - one;
        let nu2 = nu * nu;
        let b = (nu2 + bm1 * (T::lit(2.0) * nu - beta + T::lit(3.0))) / nu2;
        let disc = b * b + T::lit(4.0) * (nu + T::lit(2.0) * beta - T::lit(3.0)) * (nu + one) * bm1 * bm1 / (nu2 * nu2);
        // x² = 2ν²(β−1)² / (B + √(B² + 4(ν+2β−3)(ν+1)(β−1)²)), scaled by ν².
        let x2 = T::lit(2.0) * bm1 * bm1 / (b + disc.sqrt());
        x2.sqrt()
    }

    fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        RejectionSampler::new(self.nu, self.beta).draw(rng)
    }
}

/// Rejection sampler for the generalised gamma using the compound-gamma
/// (F-type) distribution with the same ν, β as proposal.
///
/// The density ratio is `f_a/f = M · p(x)` with
/// `p(x) = (1+x/ν)^{ν+β} / (C (C+S)^{ν+β−1} g)`. Since `C+S ≥ 1+x/ν` and
/// `(1+x/ν)/C ≤ √2` (equality at `x = ν`), `g = √2` bounds the ratio whenever
/// `ν+β ≥ 1`. For `ν+β < 1` the power of `(C+S)/(1+x/ν) ≤ 2` flips sign and
/// the envelope is widened to `g = √2·2^{1−ν−β}`.
#[derive(Debug, Clone, Copy)]
pub struct RejectionSampler<T> {
    nu: T,
    beta: T,
    ln_envelope: T,
    shape_num: Gamma<f64>,
    shape_den: Gamma<f64>,
}

impl<T: Scalar> RejectionSampler<T> {
    pub fn new(nu: T, beta: T) -> Self {
        let deficit = (T::one() - nu - beta).max(T::zero());
        let ln_envelope = T::LN_2() * (T::lit(0.5) + deficit);
        Self {
            nu,
            beta,
            ln_envelope,
            shape_num: Gamma::new(beta.as_f64(), 1.0).expect("beta > 0"),
            shape_den: Gamma::new(nu.as_f64(), 1.0).expect("nu > 0"),
        }
    }

    /// The envelope constant `g` (√2 whenever ν + β ≥ 1).
    pub fn envelope(&self) -> T {
        self.ln_envelope.exp()
    }

    /// Probability of accepting a proposal at `x ≥ 0`.
    pub fn acceptance_probability(&self, x: T) -> T {
        let t = AsinhTerms::new(x, self.nu);
        let k = self.nu + self.beta;
        (k * t.s.ln_1p() - t.ln_c - (k - T::one()) * t.ln_cs - self.ln_envelope).exp()
    }

    /// Long-run fraction of proposals accepted,
    /// `B(ν/2, β) / (2^β B(ν, β) g)`.
    pub fn acceptance_rate(&self) -> T {
        let half = T::lit(0.5);
        (ln_beta_pos(self.nu * half, self.beta)
            - self.beta * T::LN_2()
            - ln_beta_pos(self.nu, self.beta)
            - self.ln_envelope)
            .exp()
    }

    /// One compound-gamma proposal `ν·G₁/G₂`, `G₁ ~ Γ(β)`, `G₂ ~ Γ(ν)`.
    pub fn propose<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        let g1 = self.shape_num.sample(rng);
        let g2 = self.shape_den.sample(rng);
        T::lit(self.nu.as_f64() * g1 / g2)
    }

    /// Returns an accepted draw and the number of proposals it took.
    pub fn draw_counted<R: Rng + ?Sized>(&self, rng: &mut R) -> (T, usize) {
        let mut proposals = 0;
        loop {
            proposals += 1;
            let x = self.propose(rng);
            if !x.is_finite() {
                continue;
            }
            let u: f64 = rng.random();
            if T::lit(u) < self.acceptance_probability(x) {
                return (x, proposals);
            }
        }
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> T {
        self.draw_counted(rng).0
    }
}

/// One standard generalised-gamma variate by rejection from the compound gamma.
pub fn gen_gamma_rejection<T: Scalar, R: Rng + ?Sized>(params: &Params<T>, rng: &mut R) -> T {
    params.eta + params.tau * RejectionSampler::new(params.nu, params.beta).draw(rng)
}
