//! Heavy-tailed survival distributions built from the arcsinh-generalised
//! exponential `exp_ν(−x) = exp(−ν·asinh(x/ν))`.
//!
//! The family contains heavy-tailed versions of the exponential, Weibull and
//! gamma distributions (plus a second exponential-type member defined through
//! its density). Each behaves like its parent in the body and develops a
//! power-law tail of index ν; every member reduces to its parent as ν → ∞.
//!
//! The crate is organised as:
//!
//! - [`numerics`]: special functions, adaptive quadrature, 1-D optimisers.
//! - [`distributions`]: the generalised family and the evaluation contract.
//! - [`baselines`]: exponential, Lomax, Burr XII and compound-gamma comparators.
//! - [`fitting`]: maximum-likelihood estimation by bounded simplex search.
//! - [`experiments`]: the outlier-robustness study and pdf curve tables.
//!
//! Numerical code is generic over [`Scalar`] (`f32` or `f64`); the type
//! aliases below fix the scalar for everyday use. Fitting and experiments
//! are `f64`-only.
//!
//! The moment generating function of the generalised exponential (an
//! Anger/Bessel expression) is not provided. Nor is a scale-mixture
//! representation: the mixing density that would turn an exponential into
//! the generalised exponential is proportional to `J_ν(w)/w`, which changes
//! sign, so no such representation exists.

pub mod baselines;
pub mod distributions;
mod error;
pub mod experiments;
pub mod fitting;
pub mod format;
pub mod numerics;
pub mod rng;
mod scalar;

pub use distributions::{AsinhTerms, DistributionHandle, Family, MomentReport, Params};
pub use error::{Error, Result};
pub use scalar::Scalar;

/// Double-precision distribution handle.
pub type Distribution = DistributionHandle<f64>;
/// Single-precision distribution handle.
pub type DistributionF32 = DistributionHandle<f32>;
/// Double-precision parameter bundle.
pub type Params64 = Params<f64>;
/// Single-precision parameter bundle.
pub type Params32 = Params<f32>;
/// Double-precision moment summary.
pub type Moments64 = MomentReport<f64>;
/// Double-precision shared arcsinh quantities.
pub type Terms64 = AsinhTerms<f64>;
/// Double-precision quadrature result.
pub type Quadrature64 = numerics::QuadratureResult<f64>;
