//! Closed forms: the `C^0`, `C^-`, `C^+` symbols, the `Δ^0`/`Δ` combinations,
//! the principal specialization and norm formulas, the constant terms of the
//! Koornwinder and type I densities, and the parameter-shift recurrences
//! tying them to the operators.

use num_complex::Complex;
use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::params::{ParamPoint, ShiftKind};
use crate::partition::Partition;
use crate::scalar::{int, qpoch, qpoch_inf, Field, Rational, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CKind {
    Zero,
    Minus,
    Plus,
}

/// Numerator and denominator of a C symbol, kept apart so that callers can
/// detect a vanishing denominator.
fn c_symbol_parts(kind: CKind, lambda: &Partition, x: &Rational, q: &Rational, t: &Rational) -> (Rational, Rational) {
    let l = lambda.len();
    let part = |i: usize| lambda.part(i) as usize;
    let mut num = int(1);
    let mut den = int(1);
    match kind {
        CKind::Zero => {
            for i in 1..=l {
                num *= qpoch(&(t.powi(1 - i as i64) * x), q, part(i));
            }
        }
        CKind::Minus => {
            for i in 1..=l {
                for j in i..=l {
                    let y = t.powi((j - i) as i64) * x;
                    num *= qpoch(&y, q, part(i) - part(j + 1));
                    den *= qpoch(&y, q, part(i) - part(j));
                }
            }
        }
        CKind::Plus => {
            for i in 1..=l {
                for j in i..=l {
                    let y = t.powi(2 - (i + j) as i64) * x;
                    num *= qpoch(&y, q, part(i) + part(j));
                    den *= qpoch(&y, q, part(i) + part(j + 1));
                }
            }
        }
    }
    (num, den)
}

/// `C^0_λ(x)`, `C^-_λ(x)` or `C^+_λ(x)`.
pub fn c_symbol(kind: CKind, lambda: &Partition, x: &Rational, q: &Rational, t: &Rational) -> Result<Rational> {
    let (num, den) = c_symbol_parts(kind, lambda, x, q, t);
    divide(num, den, "C symbol")
}

/// Product of the C symbol over several arguments.
pub fn c_symbol_many(kind: CKind, lambda: &Partition, xs: &[Rational], q: &Rational, t: &Rational) -> Result<Rational> {
    let mut acc = int(1);
    for x in xs {
        acc *= c_symbol(kind, lambda, x, q, t)?;
    }
    Ok(acc)
}

fn divide(num: Rational, den: Rational, what: &str) -> Result<Rational> {
    if den.is_zero() {
        return Err(Error::NonGenericParameters(format!("{what}: vanishing denominator")));
    }
    Ok(num / den)
}

/// `Δ^0_λ(a | b_1..b_{2m}) = ((qa)^m / prod b)^{|λ|} C^0_λ(b..) / C^0_λ(qa/b..)`.
pub fn delta0_symbol(lambda: &Partition, a: &Rational, bs: &[Rational], q: &Rational, t: &Rational) -> Result<Rational> {
    if bs.len() % 2 != 0 {
        return Err(Error::InvalidParameter("Δ symbol needs an even number of b parameters".into()));
    }
    if bs.iter().any(|b| b.is_zero()) {
        return Err(Error::NonGenericParameters("zero b parameter".into()));
    }
    let m = (bs.len() / 2) as i64;
    let qa = q * a;
    let prod_b = bs.iter().fold(int(1), |acc, b| acc * b);
    let pre = (qa.powi(m) / prod_b).powi(lambda.size() as i64);
    let num = c_symbol_many(CKind::Zero, lambda, bs, q, t)?;
    let duals: Vec<Rational> = bs.iter().map(|b| &qa / b).collect();
    let den = c_symbol_many(CKind::Zero, lambda, &duals, q, t)?;
    divide(pre * num, den, "Δ^0 symbol")
}

/// `Δ_λ(a | b..) = Δ^0_λ(a | b..) t^{2n(λ)} (t/qa)^{|λ|} C^0_{2λ²}(qa)
/// / (C^-_λ(q, t) C^+_λ(a, qa/t))`.
pub fn delta_symbol(lambda: &Partition, a: &Rational, bs: &[Rational], q: &Rational, t: &Rational) -> Result<Rational> {
    let d0 = delta0_symbol(lambda, a, bs, q, t)?;
    let qa = q * a;
    if qa.is_zero() {
        return Err(Error::NonGenericParameters("a = 0".into()));
    }
    let extra = t.powi(2 * lambda.nstat() as i64)
        * (t / &qa).powi(lambda.size() as i64)
        * c_symbol(CKind::Zero, &lambda.doubled(), &qa, q, t)?;
    let den = c_symbol_many(CKind::Minus, lambda, &[q.clone(), t.clone()], q, t)?
        * c_symbol_many(CKind::Plus, lambda, &[a.clone(), &qa / t], q, t)?;
    divide(d0 * extra, den, "Δ symbol")
}

/// `(t0 t^{n-1})^{-|λ|} t^{n(λ)} C^0_λ(t^n, t^{n-1}t0t1, t^{n-1}t0t2, t^{n-1}t0t3)
/// / (C^-_λ(t) C^+_λ(t^{2n-2} t0t1t2t3 / q))`: the value of `K_λ` at
/// `z_i = t^{n-i} t0`.
pub fn kprincipal_closed(lambda: &Partition, n: usize, p: &ParamPoint) -> Result<Rational> {
    check_length(lambda, n)?;
    if lambda.is_empty() {
        return Ok(int(1));
    }
    let (q, t, ts) = (p.q(), p.t(), p.ts());
    let tn1 = t.powi(n as i64 - 1);
    let args = [
        t.powi(n as i64),
        &tn1 * &ts[0] * &ts[1],
        &tn1 * &ts[0] * &ts[2],
        &tn1 * &ts[0] * &ts[3],
    ];
    let pre = (&ts[0] * &tn1).powi(-(lambda.size() as i64)) * t.powi(lambda.nstat() as i64);
    let num = c_symbol_many(CKind::Zero, lambda, &args, q, t)?;
    let den = c_symbol(CKind::Minus, lambda, t, q, t)?
        * c_symbol(CKind::Plus, lambda, &(t.powi(2 * n as i64 - 2) * p.t_product() / q), q, t)?;
    divide(pre * num, den, "principal specialization")
}

/// `Δ_λ(t^{2n-2} t0t1t2t3/q | t^n, t^{n-1}t0t1, t^{n-1}t0t2, t^{n-1}t0t3)^{-1}`:
/// `<K_λ K_λ> / k_λ^2` in the normalized inner product.
pub fn norm_closed(lambda: &Partition, n: usize, p: &ParamPoint) -> Result<Rational> {
    check_length(lambda, n)?;
    if lambda.is_empty() {
        return Ok(int(1));
    }
    let (q, t, ts) = (p.q(), p.t(), p.ts());
    let tn1 = t.powi(n as i64 - 1);
    let a = t.powi(2 * n as i64 - 2) * p.t_product() / q;
    let bs = [
        t.powi(n as i64),
        &tn1 * &ts[0] * &ts[1],
        &tn1 * &ts[0] * &ts[2],
        &tn1 * &ts[0] * &ts[3],
    ];
    let d = delta_symbol(lambda, &a, &bs, q, t)?;
    divide(int(1), d, "norm")
}

fn check_length(lambda: &Partition, n: usize) -> Result<()> {
    if lambda.len() > n {
        return Err(Error::InvalidShape(format!("{lambda} has more than {n} parts")));
    }
    Ok(())
}

/// `<1>'` for the Koornwinder density:
/// `prod_{j<=n} (t^{2n-j-1} t0t1t2t3; q) / ((t^{n-j+1}; q) prod_{r<s} (t^{n-j} t_r t_s; q))`.
pub fn gustafson_constant(n: usize, p: &ParamPoint, tol: f64) -> Result<Complex<f64>> {
    if !p.is_numeric_admissible() {
        return Err(Error::DivergentProduct("parameters outside the unit disc".into()));
    }
    let f = p.to_f64();
    let c = |x: f64| Complex::new(x, 0.0);
    let q = c(f.q);
    let tt = f.t0123();
    let mut acc = c(1.0);
    for j in 1..=n as i32 {
        acc *= qpoch_inf(c(f.t.powi(2 * n as i32 - j - 1) * tt), q, tol)?;
        acc /= qpoch_inf(c(f.t.powi(n as i32 - j + 1)), q, tol)?;
        for r in 0..4 {
            for s in r + 1..4 {
                acc /= qpoch_inf(c(f.t.powi(n as i32 - j) * f.ts[r] * f.ts[s]), q, tol)?;
            }
        }
    }
    Ok(acc)
}

/// `(t_0 ... t_{2n+1}; q) / prod_{r<s} (t_r t_s; q)` for `2n + 2` parameters.
pub fn typei_constant<F: Real>(ts: &[Complex<F>], q: Complex<F>, tol: F) -> Result<Complex<F>> {
    if ts.len() < 2 || ts.len() % 2 != 0 {
        return Err(Error::InvalidParameter(format!("expected 2n+2 parameters, got {}", ts.len())));
    }
    if !(q.norm() < F::one()) || ts.iter().any(|x| !(x.norm() < F::one())) {
        return Err(Error::DivergentProduct("parameters outside the unit disc".into()));
    }
    let all = ts.iter().fold(Complex::new(F::one(), F::zero()), |acc, x| acc * x);
    let mut acc = qpoch_inf(all, q, tol)?;
    for r in 0..ts.len() {
        for s in r + 1..ts.len() {
            acc = acc / qpoch_inf(ts[r] * ts[s], q, tol)?;
        }
    }
    Ok(acc)
}

/// One exact identity check.
#[derive(Debug, Clone, PartialEq)]
pub struct ClosedFormReport {
    pub identity: String,
    pub left: Rational,
    pub right: Rational,
    pub matched: bool,
}

impl ClosedFormReport {
    pub fn new(identity: &str, left: Rational, right: Rational) -> Self {
        let matched = left == right;
        ClosedFormReport { identity: identity.to_string(), left, right, matched }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "identity": self.identity,
            "match": self.matched,
            "left": self.left.to_string(),
            "right": self.right.to_string(),
        })
    }
}

/// `prod_{i<=m} num(i) / den(i)` over the columns of `λ`, with
/// `λ'_i = 0` beyond `λ_1`.
fn column_product(
    lambda: &Partition,
    m: usize,
    f: impl Fn(usize, i64) -> (Rational, Rational),
) -> Result<Rational> {
    let conj = lambda.conjugate();
    let mut num = int(1);
    let mut den = int(1);
    for i in 1..=m {
        let (a, b) = f(i, conj.part(i) as i64);
        num *= a;
        den *= b;
    }
    divide(num, den, "column product")
}

/// Right-hand sides of the integral-operator recurrences with the column
/// product running to `m` (any `m >= λ_1` gives the same value).
pub mod int_rhs {
    use super::*;

    /// `k_λ(t^{1/2}t0 : t^{1/2}t1, t^{-1/2}t2, t^{-1/2}t3) / k_λ(t0 : ...)`.
    pub fn k_zero(lambda: &Partition, n: usize, p: &ParamPoint, m: usize) -> Result<Rational> {
        let (q, t) = (p.q(), p.t());
        let ab = p.t_r(0) * p.t_r(1);
        let prod = column_product(lambda, m, |i, c| {
            let qi = q.powi(i as i64 - 1) * &ab;
            (int(1) - t.powi(n as i64) * &qi, int(1) - t.powi(n as i64 - c) * &qi)
        })?;
        Ok(p.th().powi(-(lambda.size() as i64)) * prod)
    }

    /// `k^{(n+1)}_λ(t^{-1/2}t0 : ...) / k^{(n)}_λ(t0 : ...)`.
    pub fn k_plus(lambda: &Partition, n: usize, p: &ParamPoint, m: usize) -> Result<Rational> {
        let (q, t) = (p.q(), p.t());
        let prod = column_product(lambda, m, |i, c| {
            let qi = q.powi(i as i64 - 1);
            (int(1) - t.powi(n as i64 + 1) * &qi, int(1) - t.powi(n as i64 + 1 - c) * &qi)
        })?;
        Ok(p.th().powi(-(lambda.size() as i64)) * prod)
    }

    /// `N_λ(t^{1/2}t0 : t^{1/2}t1, t^{-1/2}t2, t^{-1/2}t3) / N_λ(t0 : ...)`.
    pub fn norm_zero(lambda: &Partition, n: usize, p: &ParamPoint, m: usize) -> Result<Rational> {
        let (q, t, ts) = (p.q(), p.t(), p.ts());
        let ab = &ts[0] * &ts[1];
        let cd = &ts[2] * &ts[3] / t;
        let prod = column_product(lambda, m, |i, c| {
            let qi = q.powi(i as i64 - 1);
            let lo = t.powi(n as i64 - c) * &qi;
            let hi = t.powi(n as i64) * &qi;
            (
                (int(1) - &lo * &ab) * (int(1) - &lo * &cd),
                (int(1) - &hi * &ab) * (int(1) - &hi * &cd),
            )
        })?;
        Ok(t.powi(lambda.size() as i64) * prod)
    }

    /// `N^{(n+1)}_λ(t^{-1/2}t0 : ...) / N^{(n)}_λ(t0 : ...)`.
    pub fn norm_plus(lambda: &Partition, n: usize, p: &ParamPoint, m: usize) -> Result<Rational> {
        let (q, t) = (p.q(), p.t());
        let tt = p.t_product() / (t * t);
        let prod = column_product(lambda, m, |i, c| {
            let qi = q.powi(i as i64 - 1);
            (
                (int(1) - t.powi(n as i64 + 1 - c) * &qi) * (int(1) - t.powi(n as i64 - c) * &qi * &tt),
                (int(1) - t.powi(n as i64 + 1) * &qi) * (int(1) - t.powi(n as i64) * &qi * &tt),
            )
        })?;
        Ok(t.powi(lambda.size() as i64) * prod)
    }
}

/// Right-hand sides of the difference-operator recurrences.
pub mod diff_rhs {
    use super::*;

    fn row_product(n: usize, f: impl Fn(usize) -> (Rational, Rational)) -> Result<Rational> {
        let mut num = int(1);
        let mut den = int(1);
        for i in 1..=n {
            let (a, b) = f(i);
            num *= a;
            den *= b;
        }
        divide(num, den, "row product")
    }

    /// `k_λ(t0 : ...) / k_λ(q^{1/2}t0 : q^{1/2}t1, q^{-1/2}t2, q^{-1/2}t3)`.
    pub fn k_zero(lambda: &Partition, n: usize, p: &ParamPoint) -> Result<Rational> {
        let (q, t) = (p.q(), p.t());
        let ab = p.t_r(0) * p.t_r(1);
        let prod = row_product(n, |i| {
            let ti = t.powi((n - i) as i64) * &ab;
            (int(1) - &ti, int(1) - q.powi(lambda.part(i) as i64) * &ti)
        })?;
        Ok(p.qh().powi(lambda.size() as i64) * prod)
    }

    /// `k_{λ+1^n}(t0 : ...) / k_λ(q^{1/2}t0 : q^{1/2}t1, q^{1/2}t2, q^{1/2}t3)`.
    pub fn k_plus(lambda: &Partition, n: usize, p: &ParamPoint) -> Result<Rational> {
        let (q, t, ts) = (p.q(), p.t(), p.ts());
        let tt = p.t_product();
        let prod = row_product(n, |i| {
            let ti = t.powi((n - i) as i64);
            let num = (1..4).fold(int(1), |acc, r| acc * (int(1) - &ti * &ts[0] * &ts[r]));
            (num, &ti * &ts[0] * (int(1) - q.powi(lambda.part(i) as i64) * &ti * &tt))
        })?;
        Ok(p.qh().powi(lambda.size() as i64) * prod)
    }

    /// `N_λ(t0 : ...) / N_λ(q^{1/2}t0 : q^{1/2}t1, q^{-1/2}t2, q^{-1/2}t3)`.
    pub fn norm_zero(lambda: &Partition, n: usize, p: &ParamPoint) -> Result<Rational> {
        let (q, t, ts) = (p.q(), p.t(), p.ts());
        let ab = &ts[0] * &ts[1];
        let cd = &ts[2] * &ts[3] / q;
        row_product(n, |i| {
            let ti = t.powi((n - i) as i64);
            let ql = q.powi(lambda.part(i) as i64);
            (
                ql.recip() * (int(1) - &ql * &ti * &ab) * (int(1) - &ql * &ti * &cd),
                (int(1) - &ti * &ab) * (int(1) - &ti * &cd),
            )
        })
    }

    /// `N_{λ+1^n}(t0 : ...) / N_λ(q^{1/2}t0 : q^{1/2}t1, q^{1/2}t2, q^{1/2}t3)`.
    pub fn norm_plus(lambda: &Partition, n: usize, p: &ParamPoint) -> Result<Rational> {
        let (q, t, ts) = (p.q(), p.t(), p.ts());
        let tt = p.t_product();
        let pre = ts[0].powi(2 * n as i64) * t.powi((n * n.saturating_sub(1)) as i64);
        let prod = row_product(n, |i| {
            let ti = t.powi((n - i) as i64);
            let pair = |r: usize, s: usize| int(1) - &ti * &ts[r] * &ts[s];
            let ql = q.powi(lambda.part(i) as i64);
            let t2 = t.powi(2 * n as i64 - i as i64 - 1) * &tt;
            (
                pair(1, 2) * pair(1, 3) * pair(2, 3) * ql.recip() * (int(1) - &ql * &ti * q) * (int(1) - &ql * &ti * &tt),
                pair(0, 1) * pair(0, 2) * pair(0, 3) * (int(1) - &t2) * (int(1) - q * &t2),
            )
        })?;
        Ok(pre * prod)
    }
}

/// Substitutes the closed forms into all eight parameter-shift recurrences.
/// The difference-operator recurrences need `n >= 1`; for `n = 0` only the
/// integral ones are reported.
pub fn check_recurrences(lambda: &Partition, n: usize, p: &ParamPoint) -> Result<Vec<ClosedFormReport>> {
    check_length(lambda, n)?;
    let k = kprincipal_closed;
    let nm = norm_closed;
    let m = lambda.width() as usize;
    let mut out = Vec::new();
    if n >= 1 {
        let pz = p.shift(ShiftKind::DZeroSource);
        let pp = p.shift(ShiftKind::DPlusSource);
        let up = lambda.add_column(n);
        out.push(ClosedFormReport::new(
            "k-difference-zero",
            divide(k(lambda, n, p)?, k(lambda, n, &pz)?, "k")?,
            diff_rhs::k_zero(lambda, n, p)?,
        ));
        out.push(ClosedFormReport::new(
            "k-difference-plus",
            divide(k(&up, n, p)?, k(lambda, n, &pp)?, "k")?,
            diff_rhs::k_plus(lambda, n, p)?,
        ));
        out.push(ClosedFormReport::new(
            "norm-difference-zero",
            divide(nm(lambda, n, p)?, nm(lambda, n, &pz)?, "N")?,
            diff_rhs::norm_zero(lambda, n, p)?,
        ));
        out.push(ClosedFormReport::new(
            "norm-difference-plus",
            divide(nm(&up, n, p)?, nm(lambda, n, &pp)?, "N")?,
            diff_rhs::norm_plus(lambda, n, p)?,
        ));
    }
    let iz = p.shift(ShiftKind::IZeroTarget);
    let ip = p.shift(ShiftKind::IPlusTarget);
    out.push(ClosedFormReport::new(
        "k-integral-zero",
        divide(k(lambda, n, &iz)?, k(lambda, n, p)?, "k")?,
        int_rhs::k_zero(lambda, n, p, m)?,
    ));
    out.push(ClosedFormReport::new(
        "k-integral-plus",
        divide(k(lambda, n + 1, &ip)?, k(lambda, n, p)?, "k")?,
        int_rhs::k_plus(lambda, n, p, m)?,
    ));
    out.push(ClosedFormReport::new(
        "norm-integral-zero",
        divide(nm(lambda, n, &iz)?, nm(lambda, n, p)?, "N")?,
        int_rhs::norm_zero(lambda, n, p, m)?,
    ));
    out.push(ClosedFormReport::new(
        "norm-integral-plus",
        divide(nm(lambda, n + 1, &ip)?, nm(lambda, n, p)?, "N")?,
        int_rhs::norm_plus(lambda, n, p, m)?,
    ));
    Ok(out)
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

    #[test]
    fn c_symbols_small() {
        let (x, q, t) = (rat(2, 7), rat(1, 3), rat(3, 5));
        let e = Partition::empty();
        for k in [CKind::Zero, CKind::Minus, CKind::Plus] {
            assert_eq!(c_symbol(k, &e, &x, &q, &t).unwrap(), int(1));
        }
        let one = part(&[1]);
        assert_eq!(c_symbol(CKind::Zero, &one, &x, &q, &t).unwrap(), int(1) - &x);
        assert_eq!(c_symbol(CKind::Minus, &one, &x, &q, &t).unwrap(), int(1) - &x);
        assert_eq!(c_symbol(CKind::Plus, &one, &x, &q, &t).unwrap(), int(1) - &q * &x);
    }

    #[test]
    fn one_row_symbols_are_q_symbols() {
        let (x, q, t) = (rat(2, 7), rat(1, 3), rat(3, 5));
        for k in 1..5u32 {
            let row = part(&[k]);
            let k = k as usize;
            assert_eq!(c_symbol(CKind::Zero, &row, &x, &q, &t).unwrap(), qpoch(&x, &q, k));
            assert_eq!(c_symbol(CKind::Minus, &row, &x, &q, &t).unwrap(), qpoch(&x, &q, k));
            assert_eq!(
                c_symbol(CKind::Plus, &row, &x, &q, &t).unwrap(),
                qpoch(&x, &q, 2 * k) / qpoch(&x, &q, k)
            );
        }
    }

    #[test]
    fn delta0_single_box() {
        let (a, b1, b2, q, t) = (rat(2, 9), rat(1, 3), rat(-3, 5), rat(1, 4), rat(1, 9));
        let got = delta0_symbol(&part(&[1]), &a, &[b1.clone(), b2.clone()], &q, &t).unwrap();
        let qa = &q * &a;
        let expect = &qa / (&b1 * &b2) * (int(1) - &b1) * (int(1) - &b2)
            / ((int(1) - &qa / &b1) * (int(1) - &qa / &b2));
        assert_eq!(got, expect);
        assert_eq!(delta_symbol(&Partition::empty(), &a, &[b1, b2], &q, &t).unwrap(), int(1));
        assert!(delta0_symbol(&part(&[1]), &a, &[int(2)], &q, &t).is_err());
    }

    #[test]
    fn principal_specialization_single_box() {
        let p = sample();
        let ts = p.ts();
        let expect = (int(1) - &ts[0] * &ts[1]) * (int(1) - &ts[0] * &ts[2]) * (int(1) - &ts[0] * &ts[3])
            / (&ts[0] * (int(1) - p.t_product()));
        assert_eq!(kprincipal_closed(&part(&[1]), 1, &p).unwrap(), expect);
        assert_eq!(kprincipal_closed(&Partition::empty(), 3, &p).unwrap(), int(1));
        assert_eq!(norm_closed(&Partition::empty(), 2, &p).unwrap(), int(1));
        assert!(kprincipal_closed(&part(&[1, 1]), 1, &p).is_err());
    }

    #[test]
    fn all_recurrences_hold() {
        let p = sample();
        for r in check_recurrences(&Partition::empty(), 0, &p).unwrap() {
            assert!(r.matched, "{}", r.identity);
        }
        for n in 1..=3 {
            for lam in box_partitions(3, n) {
                let reports = check_recurrences(&lam, n, &p).unwrap();
                assert_eq!(reports.len(), 8);
                for r in reports {
                    assert!(r.matched, "{} at {lam}, n={n}: {} vs {}", r.identity, r.left, r.right);
                }
            }
        }
    }

    #[test]
    fn column_products_stable_in_width() {
        let p = sample();
        for lam in box_partitions(3, 2) {
            let m = lam.width() as usize;
            for extra in 1..3 {
                assert_eq!(int_rhs::k_zero(&lam, 2, &p, m).unwrap(), int_rhs::k_zero(&lam, 2, &p, m + extra).unwrap());
                assert_eq!(int_rhs::k_plus(&lam, 2, &p, m).unwrap(), int_rhs::k_plus(&lam, 2, &p, m + extra).unwrap());
                assert_eq!(
                    int_rhs::norm_zero(&lam, 2, &p, m).unwrap(),
                    int_rhs::norm_zero(&lam, 2, &p, m + extra).unwrap()
                );
                assert_eq!(
                    int_rhs::norm_plus(&lam, 2, &p, m).unwrap(),
                    int_rhs::norm_plus(&lam, 2, &p, m + extra).unwrap()
                );
            }
        }
    }

    #[test]
    fn report_json() {
        let r = ClosedFormReport::new("k-difference-zero", rat(1, 2), rat(1, 2));
        assert_eq!(
            serde_json::to_string(&r.to_json()).unwrap(),
            r#"{"identity":"k-difference-zero","left":"1/2","match":true,"right":"1/2"}"#
        );
    }

    #[test]
    fn constants() {
        let p = sample();
        let g0 = gustafson_constant(0, &p, 1e-18).unwrap();
        assert_eq!(g0, Complex::new(1.0, 0.0));
        let f = p.to_f64();
        let c = |x: f64| Complex::new(x, 0.0);
        let ts: Vec<Complex<f64>> = f.ts.iter().map(|&x| c(x)).collect();
        let aw = typei_constant(&ts, c(f.q), 1e-18).unwrap();
        let t_q = qpoch_inf(c(f.t), c(f.q), 1e-18).unwrap();
        let g1 = gustafson_constant(1, &p, 1e-18).unwrap();
        assert!((g1 * t_q - aw).norm() < 1e-14);
        assert!((typei_constant(&ts[..2], c(f.q), 1e-18).unwrap() - c(1.0)).norm() < 1e-15);
        let big = ParamPoint::new(int(2), rat(1, 3), p.ts().clone()).unwrap();
        assert!(matches!(gustafson_constant(1, &big, 1e-18), Err(Error::DivergentProduct(_))));
    }

    #[test]
    fn gustafson_shift_ratio() {
        let p = sample();
        let n = 2;
        let shifted = p.shift(ShiftKind::DZeroSource);
        let ratio = gustafson_constant(n, &p, 1e-18).unwrap() / gustafson_constant(n, &shifted, 1e-18).unwrap();
        let f = p.to_f64();
        let mut expect = 1.0;
        for i in 1..=n as i32 {
            let ti = f.t.powi(n as i32 - i);
            expect *= (1.0 - ti * f.ts[2] * f.ts[3] / f.q) / (1.0 - ti * f.ts[0] * f.ts[1]);
        }
        assert!((ratio.re - expect).abs() < 1e-13 * expect.abs(), "{ratio} vs {expect}");
    }
}
