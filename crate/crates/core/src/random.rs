//! Seeded sampling of parameter points, evaluation points and polynomials.
//!
//! Exact points use rationals with numerator and denominator at most
//! [`MAX_HEIGHT`] in absolute value. Numeric points stay well inside the
//! unit disc so that the torus quadrature converges quickly. Callers that
//! hit a non-generic point redraw through [`Sampler::retry_generic`], at
//! most [`MAX_RETRIES`] times.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bcpoly::BCPoly;
use crate::error::{Error, Result};
use crate::params::ParamPoint;
use crate::partition::{box_partitions, Partition};
use crate::scalar::{rat, Rational};

pub const MAX_HEIGHT: i64 = 20;
pub const MAX_RETRIES: usize = 32;

/// Deterministic source of test data.
#[derive(Debug, Clone)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

/// FNV-1a, used to derive independent streams from one seed.
fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for b in bytes {
        h ^= *b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// A stream determined by `seed` and a label, independent of the order
    /// in which labelled streams are created.
    pub fn labelled(seed: u64, label: &str) -> Self {
        Self::new(seed ^ fnv1a(label.as_bytes()))
    }

    /// Nonzero rational of height at most `MAX_HEIGHT`, excluding `±1`.
    pub fn rational(&mut self) -> Rational {
        loop {
            let num = self.rng.gen_range(-MAX_HEIGHT..=MAX_HEIGHT);
            let den = self.rng.gen_range(1..=MAX_HEIGHT);
            if num == 0 {
                continue;
            }
            let r = rat(num, den);
            if !r.abs().is_one() {
                return r;
            }
        }
    }

    /// Rational with absolute value in `[lo, hi]` (both between 0 and 1),
    /// denominator at most `MAX_HEIGHT`, random sign if `signed`.
    pub fn rational_in(&mut self, lo: &Rational, hi: &Rational, signed: bool) -> Rational {
        loop {
            let den = self.rng.gen_range(2..=MAX_HEIGHT);
            let num = self.rng.gen_range(1..den);
            let r = rat(num, den);
            if &r >= lo && &r <= hi {
                return if signed && self.rng.gen_bool(0.5) { -r } else { r };
            }
        }
    }

    /// A parameter point for exact checks.
    pub fn exact_point(&mut self) -> ParamPoint {
        let qh = self.rational();
        let th = self.rational();
        let ts = [self.rational(), self.rational(), self.rational(), self.rational()];
        ParamPoint::new(qh, th, ts).expect("sampled values are nonzero")
    }

    /// A point for quadrature: `q, t` in `[0.36, 0.49]` and
    /// `|t_r| <= max_t`, which must be at most `1/2`.
    pub fn numeric_point(&mut self, max_t: &Rational) -> ParamPoint {
        let lo_h = rat(3, 5);
        let hi_h = rat(7, 10);
        let lo_t = rat(1, 10).min(max_t.clone());
        let qh = self.rational_in(&lo_h, &hi_h, false);
        let th = self.rational_in(&lo_h, &hi_h, false);
        let ts = [0; 4].map(|_| self.rational_in(&lo_t, max_t, true));
        ParamPoint::new(qh, th, ts).expect("sampled values are nonzero")
    }

    /// `count` nonzero exact parameters.
    pub fn exact_params(&mut self, count: usize) -> Vec<Rational> {
        (0..count).map(|_| self.rational()).collect()
    }

    /// `count` parameters with absolute value in `[1/10, max_abs]`.
    pub fn numeric_params(&mut self, count: usize, max_abs: &Rational) -> Vec<Rational> {
        let lo = rat(1, 10).min(max_abs.clone());
        (0..count).map(|_| self.rational_in(&lo, max_abs, true)).collect()
    }

    /// A point `z` off the poles `z_i^2 = 1` and `z_i^{±1} z_j^{±1} = 1`.
    pub fn pole_free_point(&mut self, n: usize) -> Vec<Rational> {
        loop {
            let z: Vec<Rational> = (0..n).map(|_| self.rational()).collect();
            let clash = (0..n).any(|i| {
                (i + 1..n).any(|j| z[i] == z[j] || z[i] == z[j].recip())
            });
            if !clash {
                return z;
            }
        }
    }

    /// A polynomial in `n` variables supported on partitions with
    /// `λ_1 <= m`, `ℓ(λ) <= n`, `|λ| <= max_size`, with small rational
    /// coefficients and a nonzero top term.
    pub fn bcpoly(&mut self, n: usize, m: u32, max_size: u32) -> BCPoly<Rational> {
        let shapes: Vec<Partition> =
            box_partitions(m, n).into_iter().filter(|l| l.size() <= max_size).collect();
        loop {
            let mut terms = Vec::new();
            for l in &shapes {
                if self.rng.gen_bool(0.6) {
                    let num = self.rng.gen_range(-9..=9);
                    let den = self.rng.gen_range(1..=9);
                    terms.push((l.clone(), rat(num, den)));
                }
            }
            let f = BCPoly::from_terms(n, terms).expect("shapes fit n");
            if !f.is_zero() {
                return f;
            }
        }
    }

    /// Runs `f` at freshly drawn points until it does not report
    /// `NonGenericParameters`.
    pub fn retry_generic<T>(
        &mut self,
        mut draw: impl FnMut(&mut Self) -> ParamPoint,
        mut f: impl FnMut(&ParamPoint) -> Result<T>,
    ) -> Result<(ParamPoint, T)> {
        let mut last = None;
        for _ in 0..MAX_RETRIES {
            let p = draw(self);
            match f(&p) {
                Err(Error::NonGenericParameters(msg)) => last = Some(msg),
                Err(e) => return Err(e),
                Ok(v) => return Ok((p, v)),
            }
        }
        Err(Error::NonGenericParameters(format!(
            "no generic point in {MAX_RETRIES} draws: {}",
            last.unwrap_or_default()
        )))
    }

    pub fn gen_bool(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }
}

/// True iff no coordinate is zero and the point avoids `z_i^2 = 1` and
/// `z_i^{±1} z_j^{±1} = 1`.
pub fn is_pole_free(z: &[Rational]) -> bool {
    let one = Rational::one();
    z.iter().all(|x| !x.is_zero() && x.abs() != one)
        && (0..z.len()).all(|i| (i + 1..z.len()).all(|j| z[i] != z[j] && z[i] != z[j].recip()))
}
