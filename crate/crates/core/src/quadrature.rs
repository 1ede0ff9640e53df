//! Trapezoidal quadrature on the unit torus: the Koornwinder density, the
//! type I integrand, and numeric checks of the integral identities.
//!
//! Only the unit-torus contour is supported, so every parameter entering an
//! infinite q-symbol must lie strictly inside the unit disc. Integrands are
//! periodic and analytic in an annulus around the torus, and the equispaced
//! rule converges geometrically in the grid size.

use num_complex::Complex;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::bcpoly::{distinct_permutations, BCPoly};
use crate::cfactors::{gustafson_constant, norm_closed, typei_constant};
use crate::diffops::{DiffOperator, DifferenceKind, Direction};
use crate::error::{Error, Result};
use crate::intops::{apply_integral, IntegralKind};
use crate::koornwinder::{koornwinder, principal_specialize, Method};
use crate::params::{ParamPoint, ShiftKind};
use crate::partition::Partition;
use crate::scalar::{int, qpoch, qpoch_inf, rational_to_f64, truncation_depth, Rational, Real};

/// Truncation tolerance for the infinite q-symbols in the densities.
pub const DEFAULT_PRODUCT_TOL: f64 = 1e-18;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Grid points per dimension.
    pub grid: usize,
    /// Truncation tolerance of the infinite products.
    pub tol: f64,
}

impl QuadratureSpec {
    pub fn new(grid: usize) -> Result<Self> {
        Self::with_tol(grid, DEFAULT_PRODUCT_TOL)
    }

    pub fn with_tol(grid: usize, tol: f64) -> Result<Self> {
        if grid < 8 {
            return Err(Error::InvalidParameter(format!("grid of {grid} points; need at least 8")));
        }
        if !(tol > 0.0) {
            return Err(Error::InvalidParameter(format!("product tolerance {tol}")));
        }
        Ok(QuadratureSpec { grid, tol })
    }
}

fn c<F: Real>(x: F) -> Complex<F> {
    Complex::new(x, F::zero())
}

fn from_rational<F: Real>(r: &Rational) -> F {
    F::from_f64(rational_to_f64(r))
}

/// Compensated (Kahan) complex accumulator; the summation order is the
/// fixed grid order, so results are reproducible.
#[derive(Debug, Clone, Copy)]
struct KahanSum<F: Real> {
    sum: Complex<F>,
    carry: Complex<F>,
}

impl<F: Real> KahanSum<F> {
    fn new() -> Self {
        KahanSum { sum: Complex::zero(), carry: Complex::zero() }
    }

    fn add(&mut self, x: Complex<F>) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Tensor trapezoid rule for
/// `prefactor ∫ f(z) prod_i w(z_i) prod_{i<j} v(z_i, z_j) prod dz_i/(2πi z_i)`
/// with
/// `w(z) = (z^{±2}; q) / prod_r (a_r z^{±1}; q)` and
/// `v(z, y) = (z^{±1} y^{±1}; q) / (c z^{±1} y^{±1}; q)`.
///
/// The weights (density times prefactor over `N^n`) are tabulated once.
#[derive(Debug, Clone)]
pub struct DensityEvaluator<F: Real> {
    n: usize,
    grid: usize,
    /// `x_k = z_k + 1/z_k = 2 cos θ_k`.
    nodes: Vec<F>,
    weights: Vec<Complex<F>>,
}

impl<F: Real> DensityEvaluator<F> {
    /// General product density; every `|a_r|`, `|c|` and `|q|` must be below 1.
    pub fn new(
        n: usize,
        singles: &[Complex<F>],
        q: Complex<F>,
        cross: Complex<F>,
        prefactor: Complex<F>,
        spec: &QuadratureSpec,
    ) -> Result<Self> {
        let one = F::one();
        if !(q.norm() < one) || !(cross.norm() < one) || singles.iter().any(|a| !(a.norm() < one)) {
            return Err(Error::ContourViolation("a parameter has absolute value >= 1".into()));
        }
        let tol = F::from_f64(spec.tol);
        // On the torus every q-symbol argument has modulus at most 1.
        let depth = truncation_depth(q.norm(), one, tol)?;
        let sym = |x: Complex<F>| crate::scalar::qpoch_inf_depth(x, q, depth);

        let big_n = spec.grid;
        let tau = F::from_f64(std::f64::consts::TAU);
        let zs: Vec<Complex<F>> = (0..big_n)
            .map(|k| Complex::from_polar(one, tau * F::from_f64(k as f64) / F::from_f64(big_n as f64)))
            .collect();
        let nodes: Vec<F> = zs.iter().map(|z| (z + z.inv()).re).collect();

        let single: Vec<Complex<F>> = zs
            .iter()
            .map(|&z| {
                let zi = z.inv();
                let mut v = sym(z * z) * sym(zi * zi);
                for &a in singles {
                    v = v / (sym(a * z) * sym(a * zi));
                }
                v
            })
            .collect();
        let pair: Vec<Complex<F>> = if n >= 2 {
            let mut out = Vec::with_capacity(big_n * big_n);
            for &z in &zs {
                for &y in &zs {
                    let args = [z * y, z / y, y / z, (z * y).inv()];
                    let mut v = Complex::one();
                    for x in args {
                        v = v * sym(x);
                        if !cross.is_zero() {
                            v = v / sym(cross * x);
                        }
                    }
                    out.push(v);
                }
            }
            out
        } else {
            Vec::new()
        };

        let scale = prefactor / c(F::from_f64(big_n as f64).powi(n as i32));
        let total = big_n.checked_pow(n as u32).ok_or_else(|| Error::InvalidParameter("grid too large".into()))?;
        let mut weights = Vec::with_capacity(total);
        let mut idx = vec![0usize; n];
        for _ in 0..total {
            let mut w = scale;
            for i in 0..n {
                w = w * single[idx[i]];
                for j in i + 1..n {
                    w = w * pair[idx[i] * big_n + idx[j]];
                }
            }
            weights.push(w);
            advance(&mut idx, big_n);
        }
        Ok(DensityEvaluator { n, grid: big_n, nodes, weights })
    }

    /// The Koornwinder density with the `(q;q)^n / ((t;q)^n 2^n n!)`
    /// prefactor, so that integrating 1 gives `<1>'`.
    pub fn koornwinder(n: usize, p: &ParamPoint, spec: &QuadratureSpec) -> Result<Self> {
        if !p.is_numeric_admissible() {
            return Err(Error::ContourViolation("q, t and t0..t3 must lie inside the unit disc".into()));
        }
        let q = c(from_rational::<F>(p.q()));
        let t = c(from_rational::<F>(p.t()));
        let ts: Vec<Complex<F>> = p.ts().iter().map(|x| c(from_rational(x))).collect();
        let tol = F::from_f64(spec.tol);
        let ratio = qpoch_inf(q, q, tol)? / qpoch_inf(t, q, tol)?;
        let prefactor = ratio.powi(n as i32) / c(F::from_f64(2f64.powi(n as i32) * factorial(n)));
        Self::new(n, &ts, q, t, prefactor, spec)
    }

    /// The type I integrand in `n` variables for `2n + 2` parameters, with
    /// the `(q;q)^n / (2^n n!)` prefactor.
    pub fn type_one(ts: &[Complex<F>], q: Complex<F>, spec: &QuadratureSpec) -> Result<Self> {
        let n = type_one_rank(ts.len())?;
        let qq = qpoch_inf(q, q, F::from_f64(spec.tol))?;
        let prefactor = qq.powi(n as i32) / c(F::from_f64(2f64.powi(n as i32) * factorial(n)));
        Self::new(n, ts, q, Complex::zero(), prefactor, spec)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn grid(&self) -> usize {
        self.grid
    }

    /// Weighted sum of `f(x)` over the grid, where `x_i = z_i + 1/z_i`.
    pub fn integrate(&self, mut f: impl FnMut(&[F]) -> Complex<F>) -> Complex<F> {
        let mut idx = vec![0usize; self.n];
        let mut x = vec![F::zero(); self.n];
        let mut acc = KahanSum::new();
        for w in &self.weights {
            for (xi, &k) in x.iter_mut().zip(&idx) {
                *xi = self.nodes[k];
            }
            acc.add(*w * f(&x));
            advance(&mut idx, self.grid);
        }
        acc.sum
    }

    /// Weighted sum of precomputed values (one per grid point, grid order).
    pub fn integrate_values(&self, vals: &[Complex<F>]) -> Result<Complex<F>> {
        if vals.len() != self.weights.len() {
            return Err(Error::DimensionMismatch { left: self.weights.len(), right: vals.len() });
        }
        let mut acc = KahanSum::new();
        for (w, v) in self.weights.iter().zip(vals) {
            acc.add(*w * v);
        }
        Ok(acc.sum)
    }

    /// `f` at every grid point, in grid order.
    pub fn grid_values(&self, f: &BCPoly<Rational>) -> Result<Vec<Complex<F>>> {
        let constant = f.support().all(|l| l.is_empty());
        if f.n() != self.n && !constant {
            return Err(Error::DimensionMismatch { left: self.n, right: f.n() });
        }
        let mut terms: Vec<(F, Vec<Vec<u32>>)> = Vec::new();
        for (lambda, coeff) in f.terms() {
            if lambda.len() > self.n {
                return Err(Error::InvalidShape(format!("{lambda} has more than {} parts", self.n)));
            }
            terms.push((from_rational(coeff), distinct_permutations(&lambda.padded(self.n))));
        }
        let top = f.max_part() as usize;
        // powers[k][a] = x_k^a
        let powers: Vec<Vec<F>> = self
            .nodes
            .iter()
            .map(|&x| {
                let mut row = vec![F::one(); top + 1];
                for a in 1..=top {
                    row[a] = row[a - 1] * x;
                }
                row
            })
            .collect();
        let mut idx = vec![0usize; self.n];
        let mut out = Vec::with_capacity(self.weights.len());
        for _ in 0..self.weights.len() {
            let mut v = F::zero();
            for (coeff, perms) in &terms {
                let mut m = F::zero();
                for perm in perms {
                    let mut term = F::one();
                    for (&k, &a) in idx.iter().zip(perm) {
                        term = term * powers[k][a as usize];
                    }
                    m = m + term;
                }
                v = v + *coeff * m;
            }
            out.push(c(v));
            advance(&mut idx, self.grid);
        }
        Ok(out)
    }

    /// `∫ f g` against the density.
    pub fn pairing(&self, f: &BCPoly<Rational>, g: &BCPoly<Rational>) -> Result<Complex<F>> {
        let fv = self.grid_values(f)?;
        let gv = self.grid_values(g)?;
        let prod: Vec<Complex<F>> = fv.iter().zip(&gv).map(|(a, b)| a * b).collect();
        self.integrate_values(&prod)
    }
}

/// Odometer step over `{0..base}^n`.
fn advance(idx: &mut [usize], base: usize) {
    for i in (0..idx.len()).rev() {
        idx[i] += 1;
        if idx[i] < base {
            return;
        }
        idx[i] = 0;
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn type_one_rank(len: usize) -> Result<usize> {
    if len < 2 || len % 2 != 0 {
        return Err(Error::InvalidParameter(format!("expected 2n+2 parameters, got {len}")));
    }
    Ok(len / 2 - 1)
}

/// `<fg>'` together with `<1>'`; the normalized product is their ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InnerProduct<F: Real> {
    pub raw: Complex<F>,
    pub one: Complex<F>,
}

impl<F: Real> InnerProduct<F> {
    pub fn normalized(&self) -> Complex<F> {
        self.raw / self.one
    }
}

/// `<f g>'` and `<1>'` for the Koornwinder density at `p`.
pub fn torus_inner<F: Real>(
    f: &BCPoly<Rational>,
    g: &BCPoly<Rational>,
    p: &ParamPoint,
    spec: &QuadratureSpec,
) -> Result<InnerProduct<F>> {
    let n = f.n().max(g.n());
    let d = DensityEvaluator::<F>::koornwinder(n, p, spec)?;
    Ok(InnerProduct { raw: d.pairing(f, g)?, one: d.integrate(|_| Complex::one()) })
}

/// Quadrature of the type I integral with `2n + 2` parameters.
pub fn typei_integral<F: Real>(ts: &[Complex<F>], q: Complex<F>, spec: &QuadratureSpec) -> Result<Complex<F>> {
    Ok(DensityEvaluator::type_one(ts, q, spec)?.integrate(|_| Complex::one()))
}

/// Result of one numeric comparison.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericReport {
    pub identity: String,
    pub left: Complex<f64>,
    pub right: Complex<f64>,
    pub rel_err: f64,
    pub tol: f64,
    pub matched: bool,
}

impl NumericReport {
    pub fn new<F: Real>(identity: &str, left: Complex<F>, right: Complex<F>, tol: f64) -> Self {
        let cv = |z: Complex<F>| Complex::new(z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN));
        let (left, right) = (cv(left), cv(right));
        let scale = left.norm().max(right.norm());
        let rel_err = if scale == 0.0 { 0.0 } else { (left - right).norm() / scale };
        NumericReport { identity: identity.to_string(), left, right, rel_err, tol, matched: rel_err <= tol }
    }

    /// As [`new`](Self::new), with the error measured relative to `scale`.
    pub fn with_scale<F: Real>(identity: &str, left: Complex<F>, right: Complex<F>, scale: f64, tol: f64) -> Self {
        let mut r = Self::new(identity, left, right, tol);
        r.rel_err = if scale == 0.0 { (r.left - r.right).norm() } else { (r.left - r.right).norm() / scale };
        r.matched = r.rel_err <= tol;
        r
    }

    pub fn to_json(&self) -> Value {
        json!({
            "identity": self.identity,
            "match": self.matched,
            "left": [self.left.re, self.left.im],
            "right": [self.right.re, self.right.im],
            "rel_err": self.rel_err,
            "tol": self.tol,
        })
    }
}

/// `<1>'` by quadrature against the closed-form constant term.
pub fn gustafson_check(n: usize, p: &ParamPoint, spec: &QuadratureSpec, tol: f64) -> Result<NumericReport> {
    let d = DensityEvaluator::<f64>::koornwinder(n, p, spec)?;
    let left = d.integrate(|_| Complex::one());
    let right = gustafson_constant(n, p, spec.tol)?;
    Ok(NumericReport::new("density-constant-term", left, right, tol))
}

/// Type I integral by quadrature against its closed form.
pub fn typei_check(ts: &[Rational], q: &Rational, spec: &QuadratureSpec, tol: f64) -> Result<NumericReport> {
    let tf: Vec<Complex<f64>> = ts.iter().map(|x| c(rational_to_f64(x))).collect();
    let qf = c(rational_to_f64(q));
    let left = typei_integral(&tf, qf, spec)?;
    let right = typei_constant(&tf, qf, spec.tol)?;
    Ok(NumericReport::new("type-one-integral", left, right, tol))
}

/// The four adjointness relations of the difference and integral operators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Adjointness {
    /// `<f D^0(t0,t1) g>'_t = <g D^0(t2/√q, t3/√q) f>'_{t'}`.
    DiffZero,
    /// `<f D^+ g>'_t = q^{n/2} <g D^- f>'_{√q t}`.
    DiffPlusMinus,
    /// `<g I^0(t0,t1) f>_{t'} = <f I^0(t2/√t, t3/√t) g>_t`, normalized.
    IntZero,
    /// `<h I^- f>^{(n-1)}_{√t t} = <f I^+ h>^{(n)}_t`, normalized.
    IntPlusMinus,
}

impl Adjointness {
    pub fn name(self) -> &'static str {
        match self {
            Adjointness::DiffZero => "adjoint-difference-zero",
            Adjointness::DiffPlusMinus => "adjoint-difference-plus-minus",
            Adjointness::IntZero => "adjoint-integral-zero",
            Adjointness::IntPlusMinus => "adjoint-integral-plus-minus",
        }
    }
}

/// Both sides of an adjointness relation by quadrature, with the operators
/// applied exactly. For `IntPlusMinus`, `f` has `n` variables and `g` plays
/// the role of `h` in `n - 1` variables.
///
/// When an exact operator image is the zero polynomial, that side vanishes
/// identically and the other side is measured against its Cauchy-Schwarz
/// bound `sqrt(<a a><b b>)` instead of against itself.
pub fn adjointness_check(
    which: Adjointness,
    f: &BCPoly<Rational>,
    g: &BCPoly<Rational>,
    p: &ParamPoint,
    spec: &QuadratureSpec,
    tol: f64,
) -> Result<NumericReport> {
    let n = f.n();
    let (left, right) = match which {
        Adjointness::DiffZero => {
            let pp = p.shift(ShiftKind::DZeroSource);
            let d_left = DiffOperator::from_kind(&DifferenceKind::Zero(p.t_r(0).clone(), p.t_r(1).clone()), Direction::Q, n, p);
            let d_right =
                DiffOperator::from_kind(&DifferenceKind::Zero(pp.t_r(2).clone(), pp.t_r(3).clone()), Direction::Q, n, p);
            (
                Side::eval(f, &d_left.apply(g)?, n, p, false, spec)?,
                Side::eval(g, &d_right.apply(f)?, n, &pp, false, spec)?,
            )
        }
        Adjointness::DiffPlusMinus => {
            let pp = p.shift(ShiftKind::DPlusSource);
            let plus = DiffOperator::from_kind(&DifferenceKind::Plus, Direction::Q, n, p);
            let minus = DiffOperator::from_kind(&DifferenceKind::Minus, Direction::Q, n, p);
            let r = Side::eval(g, &minus.apply(f)?, n, &pp, false, spec)?;
            (Side::eval(f, &plus.apply(g)?, n, p, false, spec)?, r.scaled(rational_to_f64(&p.qh().pow(n as i32))))
        }
        Adjointness::IntZero => {
            let pp = p.shift(ShiftKind::IZeroTarget);
            let i_left = IntegralKind::Zero(p.t_r(0).clone(), p.t_r(1).clone());
            let i_right = IntegralKind::Zero(pp.t_r(2).clone(), pp.t_r(3).clone());
            (
                Side::eval(g, &apply_integral(&i_left, f, p)?, n, &pp, true, spec)?,
                Side::eval(f, &apply_integral(&i_right, g, p)?, n, p, true, spec)?,
            )
        }
        Adjointness::IntPlusMinus => {
            if n == 0 || g.n() + 1 != n {
                return Err(Error::DimensionMismatch { left: n, right: g.n() + 1 });
            }
            let pp = p.shift(ShiftKind::IMinusTarget);
            let down = apply_integral(&IntegralKind::Minus, f, p)?;
            let up = apply_integral(&IntegralKind::Plus, g, p)?;
            (Side::eval(g, &down, n - 1, &pp, true, spec)?, Side::eval(f, &up, n, p, true, spec)?)
        }
    };
    let report = if left.exact_zero || right.exact_zero {
        let scale = left.bound.max(right.bound);
        NumericReport::with_scale(which.name(), left.value, right.value, scale, tol)
    } else {
        NumericReport::new(which.name(), left.value, right.value, tol)
    };
    Ok(report)
}

/// One side `<a b>` of an adjointness relation.
struct Side {
    value: Complex<f64>,
    /// `sqrt(<a a><b b>)`.
    bound: f64,
    /// `b` is the zero polynomial.
    exact_zero: bool,
}

impl Side {
    fn eval(
        a: &BCPoly<Rational>,
        b: &BCPoly<Rational>,
        n: usize,
        p: &ParamPoint,
        normalized: bool,
        spec: &QuadratureSpec,
    ) -> Result<Self> {
        let d = DensityEvaluator::<f64>::koornwinder(n, p, spec)?;
        let norm = if normalized { d.integrate(|_| Complex::one()) } else { Complex::one() };
        let value = d.pairing(a, b)? / norm;
        let aa = (d.pairing(a, a)? / norm).norm();
        let bb = (d.pairing(b, b)? / norm).norm();
        Ok(Side { value, bound: (aa * bb).sqrt(), exact_zero: b.is_zero() })
    }

    fn scaled(self, c: f64) -> Self {
        Side { value: self.value * c, bound: self.bound * c.abs(), ..self }
    }
}

/// The type I integral against `prod_{i,j} (y_j + 1/y_j - z_i - 1/z_i)`,
/// normalized by the type I constant, compared with
/// `(t0...t_{2n+1}; q)_m^{-1} prod_i (1 + R(y_i)) [prod_r (1 - t_r y_i) / (y_i^n (1 - y_i^2))]
///  prod_{i<j} (1 - q y_i y_j) / (1 - y_i y_j)`
/// evaluated exactly at the `m` points `ys`.
pub fn awtrans_check(
    n: usize,
    ys: &[Rational],
    ts: &[Rational],
    q: &Rational,
    spec: &QuadratureSpec,
    tol: f64,
) -> Result<NumericReport> {
    if type_one_rank(ts.len())? != n {
        return Err(Error::InvalidParameter(format!("{} parameters for n = {n}", ts.len())));
    }
    let m = ys.len();
    let total = ts.iter().fold(int(1), |acc, x| acc * x);
    let pref = qpoch(&total, q, m);
    if pref.is_zero() {
        return Err(Error::NonGenericParameters("(t0...t_{2n+1}; q)_m vanishes".into()));
    }
    let op = DiffOperator::new(m, ts.to_vec(), n as i32, int(1), q.clone())?;
    let right = op.evaluate_at(&BCPoly::one(m), ys)? / pref;

    let tf: Vec<Complex<f64>> = ts.iter().map(|x| c(rational_to_f64(x))).collect();
    let qf = c(rational_to_f64(q));
    let yx: Vec<f64> = ys.iter().map(|y| rational_to_f64(&(y + y.recip()))).collect();
    let d = DensityEvaluator::<f64>::type_one(&tf, qf, spec)?;
    let integral = d.integrate(|x| {
        let mut v = 1.0;
        for xi in x {
            for yj in &yx {
                v *= yj - xi;
            }
        }
        c(v)
    });
    let left = integral / typei_constant(&tf, qf, spec.tol)?;
    Ok(NumericReport::new("kernel-integral", left, c(rational_to_f64(&right)), tol))
}

/// `N_λ` as `<K_λ K_λ> / k_λ^2` by quadrature against the closed form.
pub fn norm_check(
    lambda: &Partition,
    n: usize,
    p: &ParamPoint,
    method: Method,
    spec: &QuadratureSpec,
    tol: f64,
) -> Result<NumericReport> {
    let k = koornwinder(lambda, n, p, method)?;
    let ip = torus_inner::<f64>(&k, &k, p, spec)?;
    let kk = rational_to_f64(&principal_specialize(&k, n, p)?);
    let left = ip.normalized() / (kk * kk);
    let right = c(rational_to_f64(&norm_closed(lambda, n, p)?));
    Ok(NumericReport::new("norm", left, right, tol))
}
