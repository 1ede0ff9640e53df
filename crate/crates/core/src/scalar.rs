//! Coefficient rings, exact rationals and q-Pochhammer symbols.
//!
//! Everything polynomial in this crate is generic over [`Ring`]. The exact
//! pipeline instantiates it with [`Rational`]; the numeric side uses `f64`
//! or [`FloatComplex`]; [`crate::BCPoly`] is itself a ring, which lets the
//! difference operators run with coefficients that are polynomials in
//! spectator variables.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, FloatConst, One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms.
pub type Rational = BigRational;

/// Complex value of the float backend.
pub type FloatComplex = Complex<f64>;

/// Commutative ring with unit containing the rationals.
///
/// `mul_ref`/`add_assign_ref` exist so that hot loops over big rationals do
/// not clone both operands on every product.
pub trait Ring:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    fn from_rational(r: &Rational) -> Self;

    fn mul_ref(&self, other: &Self) -> Self {
        self.clone() * other.clone()
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.clone() + other.clone();
    }

    fn sub_assign_ref(&mut self, other: &Self) {
        *self = self.clone() - other.clone();
    }

    /// Multiplication by an element of the prime field.
    fn scale(&self, r: &Rational) -> Self {
        self.mul_ref(&Self::from_rational(r))
    }

    fn from_int(k: i64) -> Self {
        Self::from_rational(&Rational::from_integer(BigInt::from(k)))
    }
}

/// A [`Ring`] with exact (or floating) division.
pub trait Field: Ring + Div<Output = Self> {
    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    /// Integer power, negative exponents allowed.
    fn powi(&self, k: i64) -> Self {
        let mut acc = Self::one();
        let base = if k < 0 { self.inv() } else { self.clone() };
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul_ref(&base);
        }
        acc
    }
}

impl Ring for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self += other;
    }
    fn sub_assign_ref(&mut self, other: &Self) {
        *self -= other;
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
}

impl Field for Rational {
    fn inv(&self) -> Self {
        self.recip()
    }
    fn powi(&self, k: i64) -> Self {
        num_traits::Pow::pow(self, k as i32)
    }
}

macro_rules! float_ring {
    ($($t:ty),*) => {$(
        impl Ring for $t {
            fn from_rational(r: &Rational) -> Self {
                rational_to_f64(r) as $t
            }
            fn mul_ref(&self, other: &Self) -> Self {
                self * other
            }
            fn add_assign_ref(&mut self, other: &Self) {
                *self += other;
            }
            fn sub_assign_ref(&mut self, other: &Self) {
                *self -= other;
            }
        }
        impl Field for $t {}

        impl Ring for Complex<$t> {
            fn from_rational(r: &Rational) -> Self {
                Complex::new(rational_to_f64(r) as $t, 0.0)
            }
            fn mul_ref(&self, other: &Self) -> Self {
                self * other
            }
            fn add_assign_ref(&mut self, other: &Self) {
                *self += other;
            }
            fn sub_assign_ref(&mut self, other: &Self) {
                *self -= other;
            }
        }
        impl Field for Complex<$t> {}
    )*};
}

float_ring!(f32, f64);

/// Floating scalar of the numeric backend (`f32` or `f64`).
pub trait Real: Float + FloatConst + Debug + Send + Sync + 'static {
    fn from_f64(x: f64) -> Self;
}

impl Real for f32 {
    fn from_f64(x: f64) -> Self {
        x as f32
    }
}

impl Real for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
}

/// `p/q` as a rational; panics on a zero denominator.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

/// Parses `"p/q"`, `"p"` or `"-p/q"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if let Some((_, d)) = s.split_once('/') {
        if d.trim().trim_start_matches(['+', '-']).chars().all(|c| c == '0') {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
    }
    Rational::from_str(s).map_err(|_| Error::Parse(format!("not a rational: {s:?}")))
}

/// Nearest double; exact for small heights and well-conditioned otherwise.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if let (Some(n), Some(d)) = (r.numer().to_f64(), r.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    // Shift both to ~60 significant bits before dividing.
    let nb = r.numer().bits() as i64;
    let db = r.denom().bits() as i64;
    let shift_n = (nb - 60).max(0);
    let shift_d = (db - 60).max(0);
    let n = (r.numer() >> shift_n as usize).to_f64().unwrap_or(0.0);
    let d = (r.denom() >> shift_d as usize).to_f64().unwrap_or(1.0);
    n / d * 2f64.powi((shift_n - shift_d) as i32)
}

/// Finite q-Pochhammer symbol `(x;q)_k = prod_{0<=j<k} (1 - q^j x)`.
pub fn qpoch<R: Ring>(x: &R, q: &R, k: usize) -> R {
    let mut acc = R::one();
    let mut term = x.clone();
    for _ in 0..k {
        acc = acc.mul_ref(&(R::one() - term.clone()));
        term = term.mul_ref(q);
    }
    acc
}

/// Product of finite q-symbols over several arguments.
pub fn qpoch_many<R: Ring>(xs: &[R], q: &R, k: usize) -> R {
    xs.iter().fold(R::one(), |acc, x| acc.mul_ref(&qpoch(x, q, k)))
}

/// Smallest `K` with `|q|^K |x| / (1 - |q|) < tol`: the number of factors
/// kept by [`qpoch_inf`].
pub fn truncation_depth<F: Real>(q_abs: F, x_abs: F, tol: F) -> Result<usize> {
    if !(q_abs < F::one()) {
        return Err(Error::DivergentProduct(format!("{q_abs:?}")));
    }
    let denom = F::one() - q_abs;
    let mut bound = x_abs / denom;
    let mut k = 0usize;
    while !(bound < tol) {
        bound = bound * q_abs;
        k += 1;
        if k > 1_000_000 {
            return Err(Error::DivergentProduct(format!("{q_abs:?}")));
        }
    }
    Ok(k)
}

/// Infinite q-symbol `(x;q)` truncated by the geometric tail bound.
pub fn qpoch_inf<F: Real>(x: Complex<F>, q: Complex<F>, tol: F) -> Result<Complex<F>> {
    let depth = truncation_depth(q.norm(), x.norm(), tol)?;
    Ok(qpoch_inf_depth(x, q, depth))
}

/// `prod_{0<=j<depth} (1 - q^j x)` in the float backend.
pub fn qpoch_inf_depth<F: Real>(x: Complex<F>, q: Complex<F>, depth: usize) -> Complex<F> {
    let one = Complex::new(F::one(), F::zero());
    let mut acc = one;
    let mut term = x;
    for _ in 0..depth {
        acc = acc * (one - term);
        term = term * q;
    }
    acc
}
