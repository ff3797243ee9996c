use crate::numerics::{asinh_pos, ln_hypot1};
use crate::Scalar;

/// The quantities every formula in the family is written in, for a
/// standardised argument `z ≥ 0` and tail index ν:
///
/// - `s = z/ν`
/// - `c = √(1+s²)`
/// - `r = c − s = 1/(c+s)`
/// - `q = r² = (c+s)⁻²`
///
/// `ln_cs = ln(c+s) = asinh(s)` and `ln_c = ln c` are kept as well, since
/// the densities are evaluated in log space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsinhTerms<T> {
    pub s: T,
    pub c: T,
    pub r: T,
    pub q: T,
    pub ln_cs: T,
    pub ln_c: T,
}

impl<T: Scalar> AsinhTerms<T> {
    pub fn new(z: T, nu: T) -> Self {
        let s = z / nu;
        let ln_cs = asinh_pos(s);
        let ln_c = ln_hypot1(s);
        Self {
            s,
            c: (T::one() + s * s).sqrt(),
            r: (-ln_cs).exp(),
            q: (-(ln_cs + ln_cs)).exp(),
            ln_cs,
            ln_c,
        }
    }

    /// `1 − q`, computed without cancellation near `z = 0`.
    pub fn one_minus_q(&self) -> T {
        -(-(self.ln_cs + self.ln_cs)).exp_m1()
    }

    /// Inverse map from `q` back to `z = ν(1−q)/(2√q)`, given `1 − q` separately.
    pub fn z_from_q(q: T, one_minus_q: T, nu: T) -> T {
        nu * one_minus_q / (T::lit(2.0) * q.sqrt())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identities_hold_on_grid() {
        for &nu in &[0.5, 1.0, 3.0, 50.0] {
            for i in 0..=200 {
                let z = nu * i as f64 / 20.0;
                let t = AsinhTerms::new(z, nu);
                assert!((t.c * t.c - t.s * t.s - 1.0).abs() <= 1e-12, "z={z}");
                assert!((t.q - t.r * t.r).abs() <= 1e-15);
                assert!((t.r * (t.c + t.s) - 1.0).abs() <= 1e-14);
                assert!(t.c >= 1.0 && t.s >= 0.0);
                assert!(t.q > 0.0 && t.q <= 1.0);
                assert!((t.one_minus_q() - (1.0 - t.q)).abs() <= 1e-15);
                let back = AsinhTerms::z_from_q(t.q, t.one_minus_q(), nu);
                assert!((back - z).abs() <= 1e-12 * z.max(1.0));
            }
        }
    }

    #[test]
    fn small_argument_complement_is_accurate() {
        let t = AsinhTerms::new(1e-12f64, 2.0);
        // 1 − q ≈ 2s for small s.
        assert!(((t.one_minus_q() - 1e-12) / 1e-12).abs() < 1e-10);
    }
}
