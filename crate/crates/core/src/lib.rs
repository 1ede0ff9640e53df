//! Koornwinder polynomials built from q-difference and contour-integral
//! operators, with exact rational arithmetic and torus quadrature.
//!
//! The algebra is generic over the coefficient ring ([`scalar::Ring`]) and
//! the numeric code over the float type ([`scalar::Real`]). The aliases
//! below fix the concrete choices used by the verifiers and the CLI.

pub mod bcpoly;
pub mod cfactors;
pub mod diffops;
pub mod error;
pub mod intops;
pub mod koornwinder;
pub mod laurent;
pub mod params;
pub mod partition;
pub mod quadrature;
pub mod random;
pub mod scalar;
pub mod verify;

pub use bcpoly::BCPoly;
pub use error::{Error, Result};
pub use koornwinder::{KoornwinderResult, Method};
pub use params::ParamPoint;
pub use partition::Partition;
pub use scalar::{Field, FloatComplex, Rational, Real, Ring};

/// BC_n-symmetric polynomials with exact rational coefficients.
pub type BCPolyQ = BCPoly<Rational>;
/// Laurent polynomials with exact rational coefficients.
pub type LaurentQ = laurent::SparseLaurent<Rational>;
/// The double-precision quadrature backend.
pub type DensityF64 = quadrature::DensityEvaluator<f64>;
