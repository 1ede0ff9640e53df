//! The first-order q-difference operators `D^-`, `D^0(a,b)`, `D^+` and the
//! second-order operator diagonal on Koornwinder polynomials.
//!
//! Every operator here has the shape
//!
//! ```text
//! (D f)(z) = prod_i (1 + R(z_i)) prod_i A(z_i) z_i^{-e} / (1 - z_i^2)
//!            prod_{i<j} (1 - c z_i z_j) / (1 - z_i z_j) f(s z)
//! ```
//!
//! with `R(z) f(z) = f(1/z)`. It is evaluated without rational functions:
//! the Weyl denominator `Δ(z)` clears every denominator, the `2^n`
//! inversions antisymmetrize the numerator, and `Δ` is divided back out.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;
use once_cell::sync::Lazy;
use parking_lot::Mutex;

use crate::bcpoly::BCPoly;
use crate::error::{Error, Result};
use crate::laurent::{Exps, SparseLaurent};
use crate::params::ParamPoint;
use crate::partition::Partition;
use crate::scalar::{int, Field, Rational, Ring};

/// Which variable drives the shift: `q` (shift by `q^{1/2}`, cross term
/// `t`) or the mirrored operators with `q` and `t` exchanged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Q,
    T,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum DifferenceKind {
    Minus,
    Zero(Rational, Rational),
    Plus,
}

/// A fully specified operator of the shape in the module docs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiffOperator {
    n: usize,
    /// Roots of the single-variable numerator `A(z) = prod_r (1 - a_r z)`.
    params: Vec<Rational>,
    /// Extra power `z^{-e}` in the single-variable factor.
    e: i32,
    /// Dilation `s` in `f(s z)`.
    shift: Rational,
    /// Cross parameter `c`.
    cross: Rational,
}

impl DiffOperator {
    pub fn new(n: usize, params: Vec<Rational>, e: i32, shift: Rational, cross: Rational) -> Result<Self> {
        if shift.is_zero() {
            return Err(Error::InvalidParameter("zero dilation".into()));
        }
        Ok(DiffOperator { n, params, e, shift, cross })
    }

    /// `D^-`, `D^0(a,b)` or `D^+` in `n` variables at `p`.
    pub fn from_kind(kind: &DifferenceKind, dir: Direction, n: usize, p: &ParamPoint) -> Self {
        let (shift, cross) = match dir {
            Direction::Q => (p.qh().clone(), p.t().clone()),
            Direction::T => (p.th().clone(), p.q().clone()),
        };
        let (params, e) = match kind {
            DifferenceKind::Minus => (vec![], -1),
            DifferenceKind::Zero(a, b) => (vec![a.clone(), b.clone()], 0),
            DifferenceKind::Plus => (p.ts().to_vec(), 1),
        };
        DiffOperator { n, params, e, shift, cross }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Laurent polynomial `P0` with `D f = antisym(P0 f(s z)) / Δ`.
    fn cleared_prefactor(&self) -> Arc<SparseLaurent<Rational>> {
        let key = (self.n, self.params.clone(), self.e, self.cross.clone());
        if let Some(v) = PREFACTOR_CACHE.lock().get(&key) {
            return v.clone();
        }
        let n = self.n;
        let mono = |pairs: &[(usize, i32)], c: Rational| {
            let mut e = Exps::from_elem(0, n);
            for &(i, a) in pairs {
                e[i] += a;
            }
            SparseLaurent::monomial(e, c)
        };
        // single(z) = -A(z) z^{-e-1}
        let mut single_1 = SparseLaurent::<Rational>::monomial(Exps::from_elem(-self.e - 1, 1), int(-1));
        for a in &self.params {
            let f = SparseLaurent::from_terms(1, [(Exps::from_elem(0, 1), int(1)), (Exps::from_elem(1, 1), -a)]);
            single_1 = single_1.mul(&f);
        }
        let mut acc = SparseLaurent::constant(n, int(1));
        for i in 0..n {
            let mut s = SparseLaurent::zero(n);
            for (e, c) in single_1.terms() {
                s = s.add(&mono(&[(i, e[0])], c.clone()));
            }
            acc = acc.mul(&s);
        }
        // pair(z_i, z_j) = (z_j - z_i)(1 - c z_i z_j) / (z_i z_j)
        for i in 0..n {
            for j in i + 1..n {
                let diff = mono(&[(i, -1)], int(1)).sub(&mono(&[(j, -1)], int(1)));
                let lin = mono(&[], int(1)).sub(&mono(&[(i, 1), (j, 1)], self.cross.clone()));
                acc = acc.mul(&diff.mul(&lin));
            }
        }
        let v = Arc::new(acc);
        PREFACTOR_CACHE.lock().insert(key, v.clone());
        v
    }

    /// Applies the operator through the clear/antisymmetrize/divide pipeline
    /// over any coefficient ring.
    pub fn apply_direct<R: Ring>(&self, f: &BCPoly<R>) -> Result<BCPoly<R>> {
        let f = lift(f, self.n)?;
        let shifted = f.to_laurent().dilate(&self.shift);
        let numer = shifted.mul_rational(&self.cleared_prefactor()).antisymmetrize_inversions();
        BCPoly::from_z_laurent(&numer.weyl_divide()?)
    }

    /// Image of the basis element `m_λ`, cached.
    pub fn image_of_monomial(&self, lambda: &Partition) -> Result<Arc<BCPoly<Rational>>> {
        let key = (self.clone(), lambda.clone());
        if let Some(v) = IMAGE_CACHE.lock().get(&key) {
            return Ok(v.clone());
        }
        let v = Arc::new(self.apply_direct(&BCPoly::monomial(self.n, lambda.clone())?)?);
        IMAGE_CACHE.lock().insert(key, v.clone());
        Ok(v)
    }

    /// Applies the operator by linearity over cached basis images.
    pub fn apply<R: Ring>(&self, f: &BCPoly<R>) -> Result<BCPoly<R>> {
        let f = lift(f, self.n)?;
        let mut out = BCPoly::zero(self.n);
        for (lambda, c) in f.terms() {
            let img = self.image_of_monomial(lambda)?;
            out = out.try_add(&img.map_coeffs(|b| c.scale(b)))?;
        }
        Ok(out)
    }

    /// Direct evaluation of `(D f)(z)` as a sum over the `2^n` inversions.
    pub fn evaluate_at<F: Field>(&self, f: &BCPoly<Rational>, z: &[F]) -> Result<F> {
        if z.len() != self.n {
            return Err(Error::DimensionMismatch { left: self.n, right: z.len() });
        }
        if z.iter().any(|x| x.is_zero()) {
            return Err(Error::InvalidPoint("zero coordinate".into()));
        }
        let one = F::one();
        let s = F::from_rational(&self.shift);
        let c = F::from_rational(&self.cross);
        let a: Vec<F> = self.params.iter().map(F::from_rational).collect();
        let mut total = F::zero();
        for mask in 0u32..(1 << self.n) {
            let w: Vec<F> = z
                .iter()
                .enumerate()
                .map(|(i, x)| if mask >> i & 1 == 1 { x.inv() } else { x.clone() })
                .collect();
            let mut term = F::one();
            for x in &w {
                let den = one.clone() - x.mul_ref(x);
                if den.is_zero() {
                    return Err(Error::InvalidPoint("pole at z_i^2 = 1".into()));
                }
                let mut num = x.powi(-self.e as i64);
                for ar in &a {
                    num = num.mul_ref(&(one.clone() - ar.mul_ref(x)));
                }
                term = term.mul_ref(&(num / den));
            }
            for i in 0..self.n {
                for j in i + 1..self.n {
                    let p = w[i].mul_ref(&w[j]);
                    let den = one.clone() - p.clone();
                    if den.is_zero() {
                        return Err(Error::InvalidPoint("pole at z_i z_j = 1".into()));
                    }
                    term = term.mul_ref(&((one.clone() - c.mul_ref(&p)) / den));
                }
            }
            let sw: Vec<F> = w.iter().map(|x| s.mul_ref(x)).collect();
            let fv = f.evaluate_with(&sw, |r| F::from_rational(r))?;
            total.add_assign_ref(&term.mul_ref(&fv));
        }
        Ok(total)
    }
}

/// Constants stored with `n = 0` are lifted to the operator's `n`.
fn lift<R: Ring>(f: &BCPoly<R>, n: usize) -> Result<BCPoly<R>> {
    if f.n() == n {
        return Ok(f.clone());
    }
    if f.support().all(|l| l.is_empty()) {
        return Ok(BCPoly::constant(n, f.coeff(&Partition::empty())));
    }
    Err(Error::DimensionMismatch { left: n, right: f.n() })
}

type PrefactorKey = (usize, Vec<Rational>, i32, Rational);
static PREFACTOR_CACHE: Lazy<Mutex<HashMap<PrefactorKey, Arc<SparseLaurent<Rational>>>>> =
    Lazy::new(Default::default);
static IMAGE_CACHE: Lazy<Mutex<HashMap<(DiffOperator, Partition), Arc<BCPoly<Rational>>>>> =
    Lazy::new(Default::default);

/// `D^-`, `D^0` or `D^+` applied to `f` (in `f.n()` variables).
pub fn apply_difference<R: Ring>(
    kind: &DifferenceKind,
    dir: Direction,
    f: &BCPoly<R>,
    p: &ParamPoint,
) -> Result<BCPoly<R>> {
    DiffOperator::from_kind(kind, dir, f.n(), p).apply(f)
}

/// `(base, other)` = `(q, t)` or `(t, q)` and the square root of `base`.
fn direction_params(dir: Direction, p: &ParamPoint) -> (Rational, Rational, Rational) {
    match dir {
        Direction::Q => (p.q().clone(), p.t().clone(), p.qh().clone()),
        Direction::T => (p.t().clone(), p.q().clone(), p.th().clone()),
    }
}

/// Exponent vector and coefficient of the leading term of the image of
/// `m_λ`. For `D^-` with `ℓ(λ) < n` the target has a negative entry and the
/// coefficient vanishes.
pub fn expected_leading(
    kind: &DifferenceKind,
    dir: Direction,
    n: usize,
    lambda: &Partition,
    p: &ParamPoint,
) -> (Vec<i64>, Rational) {
    let (base, other, root) = direction_params(dir, p);
    let (offset, prod) = match kind {
        DifferenceKind::Minus => (-1, int(1)),
        DifferenceKind::Zero(a, b) => (0, a * b),
        DifferenceKind::Plus => (1, p.t_product()),
    };
    let target = lambda.padded(n).iter().map(|&x| x as i64 + offset).collect();
    let mut c = root.powi(-(lambda.size() as i64));
    for i in 1..=n {
        let f = base.powi(lambda.part(i) as i64) * other.powi((n - i) as i64) * &prod;
        c *= int(1) - f;
    }
    (target, c)
}

/// The second-order operator `D^0(t2, t3; t) ∘ D^0(t0/√q, t1/√q; t)`.
///
/// Koornwinder polynomials with parameters `p` are its eigenfunctions with
/// eigenvalues [`eigenvalue`].
pub fn second_order_operators(n: usize, p: &ParamPoint) -> (DiffOperator, DiffOperator) {
    let ts = p.ts();
    let inner = DiffOperator::from_kind(
        &DifferenceKind::Zero(&ts[0] / p.qh(), &ts[1] / p.qh()),
        Direction::Q,
        n,
        p,
    );
    let outer = DiffOperator::from_kind(&DifferenceKind::Zero(ts[2].clone(), ts[3].clone()), Direction::Q, n, p);
    (inner, outer)
}

pub fn second_order_eigenop<R: Ring>(f: &BCPoly<R>, p: &ParamPoint) -> Result<BCPoly<R>> {
    let (inner, outer) = second_order_operators(f.n(), p);
    outer.apply(&inner.apply(f)?)
}

/// `q^{-|λ|} prod_i (1 - q^{λ_i-1} t^{n-i} t0 t1)(1 - q^{λ_i} t^{n-i} t2 t3)`.
pub fn eigenvalue(lambda: &Partition, n: usize, p: &ParamPoint) -> Rational {
    let ts = p.ts();
    let (a, b) = (&ts[0] * &ts[1] / p.q(), &ts[2] * &ts[3]);
    let mut ev = p.q().powi(-(lambda.size() as i64));
    for i in 1..=n {
        let base = p.q().powi(lambda.part(i) as i64) * p.t().powi((n - i) as i64);
        ev *= (int(1) - &base * &a) * (int(1) - &base * &b);
    }
    ev
}

/// `prod_{1<=i<=n} (1 - t^{n-i} t0 t1)`.
pub fn normalization_constant(n: usize, p: &ParamPoint) -> Rational {
    let ab = p.t_r(0) * p.t_r(1);
    (1..=n).fold(int(1), |acc, i| acc * (int(1) - p.t().powi((n - i) as i64) * &ab))
}

/// Checks `prod (1 + R(z_i))` of the single/pair expression against
/// `prod (1 - t^{n-i} t0 t1)`, both as a polynomial identity and at every
/// given point.
pub fn check_lemma22(n: usize, p: &ParamPoint, points: &[Vec<Rational>]) -> Result<bool> {
    let op = DiffOperator::from_kind(
        &DifferenceKind::Zero(p.t_r(0).clone(), p.t_r(1).clone()),
        Direction::Q,
        n,
        p,
    );
    let rhs = normalization_constant(n, p);
    check_constant_identity(&op, &rhs, points)
}

/// `prod_{0<=i<j<=n} (1 - t_i t_j)` for `n + 1` parameters.
pub fn third_identity_constant(ts: &[Rational]) -> Rational {
    let mut acc = int(1);
    for i in 0..ts.len() {
        for j in i + 1..ts.len() {
            acc *= int(1) - &ts[i] * &ts[j];
        }
    }
    acc
}

/// The companion identity with `n + 1` parameters and no cross term:
/// `prod (1+R(z_i)) prod_r (1 - t_r z_i)/(1 - z_i^2) prod_{i<j} 1/(1 - z_i z_j)
/// = prod_{i<j} (1 - t_i t_j)`.
pub fn check_third_identity(ts: &[Rational], points: &[Vec<Rational>]) -> Result<bool> {
    if ts.is_empty() {
        return Err(Error::InvalidParameter("need n + 1 >= 1 parameters".into()));
    }
    let n = ts.len() - 1;
    let op = DiffOperator::new(n, ts.to_vec(), 0, int(1), int(0))?;
    check_constant_identity(&op, &third_identity_constant(ts), points)
}

fn check_constant_identity(op: &DiffOperator, rhs: &Rational, points: &[Vec<Rational>]) -> Result<bool> {
    let one = BCPoly::<Rational>::one(op.n);
    let image = op.apply_direct(&one)?;
    let mut ok = image == BCPoly::constant(op.n, rhs.clone());
    for z in points {
        ok &= op.evaluate_at(&one, z)? == *rhs;
    }
    Ok(ok)
}

/// Shape checks used by tests and the verifier: the image of `m_λ` is
/// dominated by the expected target and carries the expected coefficient.
pub fn check_triangularity(
    kind: &DifferenceKind,
    dir: Direction,
    n: usize,
    lambda: &Partition,
    p: &ParamPoint,
) -> Result<bool> {
    let img = DiffOperator::from_kind(kind, dir, n, p).image_of_monomial(lambda)?;
    let (target, coeff) = expected_leading(kind, dir, n, lambda, p);
    let dominated = img.support().all(|mu| {
        let v: Vec<i64> = mu.padded(n).iter().map(|&x| x as i64).collect();
        crate::partition::vector_dominates(&target, &v)
    });
    let lead = if target.iter().all(|&x| x >= 0) {
        let t = Partition::new(target.iter().map(|&x| x as u32).collect())?;
        img.coeff(&t) == coeff
    } else {
        coeff.is_zero()
    };
    Ok(dominated && lead)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::box_partitions;
    use crate::scalar::rat;

    fn sample() -> ParamPoint {
        ParamPoint::new(rat(1, 2), rat(1, 3), [rat(1, 5), rat(1, 7), rat(-1, 4), rat(2, 9)]).unwrap()
    }

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn kinds(p: &ParamPoint) -> Vec<DifferenceKind> {
        vec![
            DifferenceKind::Minus,
            DifferenceKind::Zero(p.t_r(0).clone(), p.t_r(1).clone()),
            DifferenceKind::Plus,
        ]
    }

    #[test]
    fn normalization_identity() {
        let p = sample();
        let pts = vec![vec![int(2), int(3), rat(-5, 7)], vec![rat(1, 3), rat(7, 2), rat(4, 5)]];
        assert!(check_lemma22(1, &p, &[vec![int(2)]]).unwrap());
        assert!(check_lemma22(2, &p, &[vec![int(2), int(3)]]).unwrap());
        assert!(check_lemma22(3, &p, &pts).unwrap());
    }

    #[test]
    fn companion_identity() {
        let ts = [rat(1, 5), rat(-2, 3), rat(3, 7), rat(5, 11)];
        assert!(check_third_identity(&ts[..2], &[vec![int(3)]]).unwrap());
        assert_eq!(third_identity_constant(&ts[..2]), int(1) - rat(1, 5) * rat(-2, 3));
        assert!(check_third_identity(&ts[..3], &[vec![int(2), rat(5, 3)]]).unwrap());
        assert!(check_third_identity(&ts, &[vec![int(2), rat(5, 3), rat(-3, 4)]]).unwrap());
    }

    #[test]
    fn pole_reported() {
        let p = sample();
        assert!(matches!(check_lemma22(1, &p, &[vec![int(1)]]), Err(Error::InvalidPoint(_))));
        assert!(matches!(check_lemma22(2, &p, &[vec![int(2), rat(1, 2)]]), Err(Error::InvalidPoint(_))));
    }

    #[test]
    fn lowering_on_linear_monomial() {
        let p = sample();
        let f = BCPoly::<Rational>::monomial(1, part(&[1])).unwrap();
        let img = apply_difference(&DifferenceKind::Minus, Direction::Q, &f, &p).unwrap();
        let expect = (int(1) - p.q()) / p.qh();
        assert_eq!(img, BCPoly::constant(1, expect));
    }

    #[test]
    fn triangular_with_expected_leading_terms() {
        let p = sample();
        for dir in [Direction::Q, Direction::T] {
            for n in 1..=2 {
                for lam in box_partitions(3, n) {
                    for k in kinds(&p) {
                        assert!(check_triangularity(&k, dir, n, &lam, &p).unwrap(), "{k:?} {dir:?} {lam} n={n}");
                    }
                }
            }
            for lam in box_partitions(2, 3) {
                for k in kinds(&p) {
                    assert!(check_triangularity(&k, dir, 3, &lam, &p).unwrap(), "{k:?} {dir:?} {lam} n=3");
                }
            }
        }
    }

    #[test]
    fn pipeline_matches_pointwise_sum() {
        let p = sample();
        let f = BCPoly::from_terms(2, [(part(&[2, 1]), rat(3, 7)), (part(&[1]), int(-2)), (part(&[]), int(1))])
            .unwrap();
        let z = [rat(5, 3), rat(-7, 2)];
        for dir in [Direction::Q, Direction::T] {
            for k in kinds(&p) {
                let op = DiffOperator::from_kind(&k, dir, 2, &p);
                let lhs = op.apply(&f).unwrap().evaluate(&z).unwrap();
                assert_eq!(lhs, op.evaluate_at(&f, &z).unwrap(), "{k:?} {dir:?}");
            }
        }
    }

    #[test]
    fn polynomial_coefficients_act_coefficientwise() {
        let p = sample();
        let c1 = BCPoly::<Rational>::monomial(2, part(&[1])).unwrap();
        let c2 = BCPoly::from_terms(2, [(part(&[1, 1]), rat(2, 3)), (part(&[]), int(1))]).unwrap();
        let f = BCPoly::from_terms(1, [(part(&[2]), c1.clone()), (part(&[1]), c2.clone())]).unwrap();
        let op = DiffOperator::from_kind(&DifferenceKind::Plus, Direction::T, 1, &p);
        let direct = op.apply_direct(&f).unwrap();
        let by_parts = op
            .apply(&BCPoly::<Rational>::monomial(1, part(&[2])).unwrap())
            .unwrap()
            .map_coeffs(|b| c1.scale(b))
            .try_add(&op.apply(&BCPoly::<Rational>::monomial(1, part(&[1])).unwrap()).unwrap().map_coeffs(|b| c2.scale(b)))
            .unwrap();
        assert_eq!(direct, by_parts);
    }

    #[test]
    fn second_order_operator_diagonal() {
        let p = sample();
        for n in 1..=2 {
            let one = BCPoly::<Rational>::one(n);
            let img = second_order_eigenop(&one, &p).unwrap();
            assert_eq!(img, BCPoly::constant(n, eigenvalue(&Partition::empty(), n, &p)));
            for lam in box_partitions(2, n) {
                let img = second_order_eigenop(&BCPoly::<Rational>::monomial(n, lam.clone()).unwrap(), &p).unwrap();
                assert!(img.supported_below(&lam), "{lam}");
                assert_eq!(img.coeff(&lam), eigenvalue(&lam, n, &p), "{lam}");
            }
        }
    }

    #[test]
    fn eigenvalue_ratio_one_variable() {
        let p = sample();
        let (q, ts) = (p.q(), p.ts());
        let (a, b) = (&ts[0] * &ts[1], &ts[2] * &ts[3]);
        let ratio = eigenvalue(&part(&[1]), 1, &p) / eigenvalue(&Partition::empty(), 1, &p);
        let expect = (int(1) - &a) * (int(1) - q * &b) / (q * (int(1) - &a / q) * (int(1) - &b));
        assert_eq!(ratio, expect);
    }
}
