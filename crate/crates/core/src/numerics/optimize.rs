//! One-dimensional maximisation and root finding.

use crate::error::{check, Error, Result};
use crate::Scalar;

const GOLDEN_MAX_ITER: usize = 500;
const ROOT_MAX_ITER: usize = 500;

/// Golden-section search for the maximum of a unimodal `f` on `[lo, hi]`.
///
/// Returns `(argmax, max)` with the argmax bracketed to width `tol`.
pub fn find_max_1d<T: Scalar, F: FnMut(T) -> T>(mut f: F, lo: T, hi: T, tol: T) -> Result<(T, T)> {
    check("lo", lo, lo.is_finite(), "finite")?;
    check("hi", hi, hi.is_finite() && hi > lo, "finite and > lo")?;
    check("tol", tol, tol > T::zero(), "> 0")?;
    let inv_phi = T::lit(0.618_033_988_749_895);
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..GOLDEN_MAX_ITER {
        if b - a <= tol {
            break;
        }
        if fc >= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
        if c >= d {
            // bracket collapsed to adjacent floats
            break;
        }
    }
    let mid = T::lit(0.5) * (a + b);
    let fm = f(mid);
    // The best interior probe can beat the midpoint on a flat top.
    let mut best = (mid, fm);
    for (x, fx) in [(c, fc), (d, fd)] {
        if fx > best.1 {
            best = (x, fx);
        }
    }
    // Endpoint maxima (monotone f) are reported at the endpoint itself.
    for x in [lo, hi] {
        let fx = f(x);
        if fx > best.1 {
            best = (x, fx);
        }
    }
    Ok(best)
}

/// Brent's bracketing root finder (bisection safeguarded by secant and
/// inverse-quadratic steps).
///
/// Stops when `|f(root)| ≤ tol` or the bracket width falls below `tol`
/// (or below floating-point resolution at the root).
pub fn find_root_1d<T: Scalar, F: FnMut(T) -> T>(mut f: F, lo: T, hi: T, tol: T) -> Result<T> {
    check("lo", lo, lo.is_finite(), "finite")?;
    check("hi", hi, hi.is_finite() && hi >= lo, "finite and >= lo")?;
    check("tol", tol, tol >= T::zero(), ">= 0")?;
    let two = T::lit(2.0);
    let half = T::lit(0.5);
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a), f(b));
    if fa.is_nan() || fb.is_nan() {
        return Err(Error::domain("root finder: function is NaN at a bracket end"));
    }
    if fa == T::zero() {
        return Ok(a);
    }
    if fb == T::zero() {
        return Ok(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::domain(format!(
            "root finder: no sign change on [{lo}, {hi}] (f = {fa}, {fb})"
        )));
    }
    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..ROOT_MAX_ITER {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = two * T::epsilon() * b.abs() + half * tol;
        let xm = half * (c - b);
        if xm.abs() <= tol1 || fb.abs() <= tol {
            return Ok(b);
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = two * xm * s;
                q = T::one() - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (two * xm * qq * (qq - r) - (b - a) * (r - T::one()));
                q = (qq - T::one()) * (r - T::one()) * (s - T::one());
            }
            if p > T::zero() {
                q = -q;
            }
            p = p.abs();
            let min1 = T::lit(3.0) * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if two * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b = if d.abs() > tol1 { b + d } else { b + tol1 * xm.signum() };
        fb = f(b);
        if fb.is_nan() {
            return Err(Error::domain(format!("root finder: function is NaN at {b}")));
        }
    }
    Err(Error::NoConvergence {
        method: "root finder",
        evaluations: ROOT_MAX_ITER,
        partial: b.as_f64(),
    })
}
