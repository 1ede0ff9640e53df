//! Koornwinder polynomials: the difference-integral construction, an
//! independent eigenfunction solver, principal specialization, the
//! interpolation polynomials built by the same recursion, and the dual
//! Cauchy identity.

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::Zero;
use once_cell::sync::Lazy;
use parking_lot::Mutex;
use serde_json::{json, Value};

use crate::bcpoly::BCPoly;
use crate::diffops::{eigenvalue, second_order_operators, DiffOperator, DifferenceKind, Direction};
use crate::error::{Error, Result};
use crate::intops::{apply_integral, build_kernel, IntegralKind};
use crate::params::{ParamPoint, ShiftKind};
use crate::partition::{box_partitions, dominated_by, Partition};
use crate::scalar::{int, Field, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    /// Raising/lifting recursion through the difference and integral operators.
    Construction,
    /// Triangular eigenfunction solve for the second-order operator.
    Oracle,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Construction => "construction",
            Method::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KoornwinderResult {
    pub lambda: Partition,
    pub n: usize,
    pub params: ParamPoint,
    pub poly: BCPoly<Rational>,
    pub method: Method,
}

impl KoornwinderResult {
    /// Leading coefficient is 1 and every other term is dominated by `λ`.
    pub fn is_monic(&self) -> bool {
        self.poly.coeff(&self.lambda) == int(1) && self.poly.supported_below(&self.lambda)
    }

    /// `{"n","basis","terms","lambda","method"}`.
    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self.poly.to_json()).expect("plain data");
        let obj = v.as_object_mut().expect("object");
        obj.insert("lambda".into(), json!(self.lambda));
        obj.insert("method".into(), json!(self.method.name()));
        v
    }
}

fn check_shape(lambda: &Partition, n: usize) -> Result<()> {
    if lambda.len() > n {
        return Err(Error::InvalidShape(format!("{lambda} has more than {n} parts")));
    }
    Ok(())
}

type PolyKey = (Partition, usize, ParamPoint);
type PolyCache = Lazy<Mutex<HashMap<PolyKey, Arc<BCPoly<Rational>>>>>;
static KHAT: PolyCache = Lazy::new(Default::default);
static ORACLE: PolyCache = Lazy::new(Default::default);

/// `t^{-|λ|/2} prod_{i<=λ_1} (1 - t^n q^{i-1}) / (1 - t^{n-λ'_i} q^{i-1})`.
fn lift_prefactor(lambda: &Partition, n: usize, p: &ParamPoint) -> Result<Rational> {
    let (q, t) = (p.q(), p.t());
    let conj = lambda.conjugate();
    let mut c = p.th().powi(-(lambda.size() as i64));
    for i in 1..=lambda.width() as usize {
        let qi = q.powi(i as i64 - 1);
        let den = int(1) - t.powi(n as i64 - conj.part(i) as i64) * &qi;
        if den.is_zero() {
            return Err(Error::NonGenericParameters(format!("lifting factor {i} vanishes")));
        }
        c *= (int(1) - t.powi(n as i64) * &qi) / den;
    }
    Ok(c)
}

/// The polynomial `K̂^{(n)}_λ` of the raising/lifting recursion:
/// `K̂^{(0)}_∅ = 1`; for `λ_n = 0` lift `K̂^{(n-1)}_λ` (parameters times
/// `t^{1/2}`) with `I^{+(n-1)}`; for `λ_n > 0` raise `K̂^{(n)}_{λ-1^n}`
/// (parameters times `q^{1/2}`) with `D^{+(n)}`.
pub fn build_khat(lambda: &Partition, n: usize, p: &ParamPoint) -> Result<KoornwinderResult> {
    let poly = khat_poly(lambda, n, p)?;
    Ok(KoornwinderResult {
        lambda: lambda.clone(),
        n,
        params: p.clone(),
        poly: (*poly).clone(),
        method: Method::Construction,
    })
}

fn khat_poly(lambda: &Partition, n: usize, p: &ParamPoint) -> Result<Arc<BCPoly<Rational>>> {
    check_shape(lambda, n)?;
    let key = (lambda.clone(), n, p.clone());
    if let Some(v) = KHAT.lock().get(&key) {
        return Ok(v.clone());
    }
    let poly = if n == 0 {
        BCPoly::one(0)
    } else if lambda.len() < n {
        let lower = khat_poly(lambda, n - 1, &p.shift(ShiftKind::IMinusTarget))?;
        let lifted = apply_integral(&IntegralKind::Plus, &lower, p)?;
        lifted.scale(&lift_prefactor(lambda, n, p)?)
    } else {
        let smaller = lambda.remove_column(n).expect("ℓ(λ) = n");
        let lower = khat_poly(&smaller, n, &p.shift(ShiftKind::DPlusSource))?;
        let raised = DiffOperator::from_kind(&DifferenceKind::Plus, Direction::Q, n, p).apply(&lower)?;
        let tt = p.t_product() / p.q();
        let mut c = p.qh().powi(lambda.size() as i64 - n as i64);
        for i in 1..=n {
            let f = int(1) - p.q().powi(lambda.part(i) as i64) * p.t().powi((n - i) as i64) * &tt;
            if f.is_zero() {
                return Err(Error::NonGenericParameters(format!("raising factor {i} vanishes")));
            }
            c /= f;
        }
        raised.scale(&c)
    };
    let v = Arc::new(poly);
    KHAT.lock().insert(key, v.clone());
    Ok(v)
}

/// `K_λ` as the monic eigenfunction of the second-order operator, by
/// back-substitution down the graded order.
pub fn koornwinder_oracle(lambda: &Partition, n: usize, p: &ParamPoint) -> Result<KoornwinderResult> {
    let poly = oracle_poly(lambda, n, p)?;
    Ok(KoornwinderResult {
        lambda: lambda.clone(),
        n,
        params: p.clone(),
        poly: (*poly).clone(),
        method: Method::Oracle,
    })
}

fn oracle_poly(lambda: &Partition, n: usize, p: &ParamPoint) -> Result<Arc<BCPoly<Rational>>> {
    check_shape(lambda, n)?;
    let key = (lambda.clone(), n, p.clone());
    if let Some(v) = ORACLE.lock().get(&key) {
        return Ok(v.clone());
    }
    let (inner, outer) = second_order_operators(n, p);
    let basis = dominated_by(lambda, n);
    let mut columns: HashMap<Partition, BCPoly<Rational>> = HashMap::new();
    for nu in &basis {
        let img = outer.apply(&inner.apply(&BCPoly::<Rational>::monomial(n, nu.clone())?)?)?;
        columns.insert(nu.clone(), img);
    }
    let target = eigenvalue(lambda, n, p);
    let mut coeffs: HashMap<Partition, Rational> = HashMap::new();
    coeffs.insert(lambda.clone(), int(1));
    for kappa in basis.iter().rev().skip(1) {
        let gap = eigenvalue(kappa, n, p) - &target;
        if gap.is_zero() {
            return Err(Error::NonGenericParameters(format!("eigenvalues of {kappa} and {lambda} coincide")));
        }
        let mut rhs = int(0);
        for (nu, c) in &coeffs {
            rhs -= columns[nu].coeff(kappa) * c;
        }
        coeffs.insert(kappa.clone(), rhs / gap);
    }
    let poly = BCPoly::from_terms(n, coeffs)?;
    let v = Arc::new(poly);
    ORACLE.lock().insert(key, v.clone());
    Ok(v)
}

/// `K_λ` by either method.
pub fn koornwinder(lambda: &Partition, n: usize, p: &ParamPoint, method: Method) -> Result<Arc<BCPoly<Rational>>> {
    match method {
        Method::Construction => khat_poly(lambda, n, p),
        Method::Oracle => oracle_poly(lambda, n, p),
    }
}

/// `f` at `z_i = t^{n-i} t0`.
pub fn principal_specialize(f: &BCPoly<Rational>, n: usize, p: &ParamPoint) -> Result<Rational> {
    let z: Vec<Rational> = (1..=n).map(|i| p.t().powi((n - i) as i64) * p.t_r(0)).collect();
    f.evaluate(&z)
}

/// Interpolation polynomials from the same recursion: lifting with `I^+`
/// as for `K̂`, raising by multiplication with
/// `prod_i (x_i + 1/x_i - s - 1/s)` and `s -> q s`.
///
/// The lifting step evaluates the `n-1` variable polynomial at
/// `s t^{1/2}`, which places its vanishing points `q^{μ_i} t^{n-1-i} s t^{1/2}`
/// where the lifted integral reproduces the `n` variable ones.
pub fn build_interpolation(lambda: &Partition, n: usize, p: &ParamPoint, s: &Rational) -> Result<BCPoly<Rational>> {
    check_shape(lambda, n)?;
    if s.is_zero() {
        return Err(Error::InvalidParameter("s = 0".into()));
    }
    if n == 0 {
        return Ok(BCPoly::one(0));
    }
    if lambda.len() < n {
        let lower = build_interpolation(lambda, n - 1, p, &(s * p.th()))?;
        let lifted = apply_integral(&IntegralKind::Plus, &lower, p)?;
        return Ok(lifted.scale(&lift_prefactor(lambda, n, p)?));
    }
    let smaller = lambda.remove_column(n).expect("ℓ(λ) = n");
    let lower = build_interpolation(&smaller, n, p, &(s * p.q()))?;
    let shift = s + s.recip();
    let mut factor = BCPoly::<Rational>::one(n);
    for k in 0..=n {
        // prod_i (x_i - c) = Σ_k (-c)^{n-k} e_k(x)
        let e = BCPoly::monomial(n, Partition::new(vec![1; k])?)?;
        let c = (-shift.clone()).powi((n - k) as i64);
        if k == 0 {
            factor = BCPoly::constant(n, c);
        } else {
            factor = factor.try_add(&e.scale(&c))?;
        }
    }
    lower.multiply(&factor)
}

/// The dual Cauchy identity
/// `f_{n,m}(x; y) = Σ_{λ ⊂ m^n} (-1)^{|λ|} K^{(n)}_λ(x; q, t) K^{(m)}_{n^m-λ'}(y; t, q)`,
/// compared coefficientwise in `m_κ(x) m_μ(y)`.
pub fn mimachi_check(n: usize, m: usize, p: &ParamPoint, method: Method) -> Result<bool> {
    let kernel = build_kernel(n, m);
    let swapped = p.swap_qt();
    let mut rhs: HashMap<(Partition, Partition), Rational> = HashMap::new();
    for lambda in box_partitions(m as u32, n) {
        let dual = lambda.complement_conjugate(m as u32, n);
        let kx = koornwinder(&lambda, n, p, method)?;
        let ky = koornwinder(&dual, m, &swapped, method)?;
        let sign = if lambda.size() % 2 == 0 { int(1) } else { int(-1) };
        for (kappa, a) in kx.terms() {
            for (mu, b) in ky.terms() {
                let e = rhs.entry((kappa.clone(), mu.clone())).or_insert_with(|| int(0));
                *e += &sign * a * b;
            }
        }
    }
    rhs.retain(|_, v| !v.is_zero());
    let mut lhs: HashMap<(Partition, Partition), Rational> = HashMap::new();
    for (mu, row) in kernel.rows() {
        for (kappa, c) in row.terms() {
            lhs.insert((kappa.clone(), mu.clone()), c.clone());
        }
    }
    Ok(lhs == rhs)
}

/// One polynomial identity `left = right`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyIdentity {
    pub identity: String,
    pub left: BCPoly<Rational>,
    pub right: BCPoly<Rational>,
}

impl PolyIdentity {
    pub fn holds(&self) -> bool {
        self.left == self.right
    }

    pub fn to_json(&self) -> Value {
        json!({
            "identity": self.identity,
            "match": self.holds(),
            "left": self.left.to_json(),
            "right": self.right.to_json(),
        })
    }
}

fn row_factor(lambda: &Partition, n: usize, p: &ParamPoint, prod: &Rational) -> Rational {
    let mut c = p.qh().powi(-(lambda.size() as i64));
    for i in 1..=n {
        c *= int(1) - p.q().powi(lambda.part(i) as i64) * p.t().powi((n - i) as i64) * prod;
    }
    c
}

/// The three difference-operator actions on `K_λ` (lowering, diagonal,
/// raising), with both sides computed from `method`.
pub fn difference_actions(lambda: &Partition, n: usize, p: &ParamPoint, method: Method) -> Result<Vec<PolyIdentity>> {
    check_shape(lambda, n)?;
    let k = |l: &Partition, q: &ParamPoint| koornwinder(l, n, q, method);
    let ts = p.ts();
    let mut out = Vec::new();

    let minus = DiffOperator::from_kind(&DifferenceKind::Minus, Direction::Q, n, p);
    let left = minus.apply(&*k(lambda, &p.shift(ShiftKind::DMinusSource))?)?;
    let right = match lambda.remove_column(n) {
        Some(lower) if n > 0 => k(&lower, p)?.scale(&row_factor(lambda, n, p, &int(1))),
        _ => BCPoly::zero(n),
    };
    out.push(PolyIdentity { identity: "difference-lowering".into(), left, right });

    let zero = DiffOperator::from_kind(&DifferenceKind::Zero(ts[0].clone(), ts[1].clone()), Direction::Q, n, p);
    let left = zero.apply(&*k(lambda, &p.shift(ShiftKind::DZeroSource))?)?;
    let right = k(lambda, p)?.scale(&row_factor(lambda, n, p, &(&ts[0] * &ts[1])));
    out.push(PolyIdentity { identity: "difference-diagonal".into(), left, right });

    let plus = DiffOperator::from_kind(&DifferenceKind::Plus, Direction::Q, n, p);
    let left = plus.apply(&*k(lambda, &p.shift(ShiftKind::DPlusSource))?)?;
    let right = k(&lambda.add_column(n), p)?.scale(&row_factor(lambda, n, p, &p.t_product()));
    out.push(PolyIdentity { identity: "difference-raising".into(), left, right });
    Ok(out)
}

/// `t^{|λ|/2} prod_{i<=λ_1} (1 - t^{N-λ'_i} q^{i-1} T) / (1 - t^N q^{i-1} T)`.
fn column_factor(lambda: &Partition, big_n: i64, prod: &Rational, p: &ParamPoint) -> Result<Rational> {
    let conj = lambda.conjugate();
    let mut c = p.th().powi(lambda.size() as i64);
    for i in 1..=lambda.width() as usize {
        let qi = p.q().powi(i as i64 - 1) * prod;
        let den = int(1) - p.t().powi(big_n) * &qi;
        if den.is_zero() {
            return Err(Error::NonGenericParameters(format!("column factor {i} vanishes")));
        }
        c *= (int(1) - p.t().powi(big_n - conj.part(i) as i64) * &qi) / den;
    }
    Ok(c)
}

/// The three integral-operator actions on `K_λ`.
pub fn integral_actions(lambda: &Partition, n: usize, p: &ParamPoint, method: Method) -> Result<Vec<PolyIdentity>> {
    check_shape(lambda, n)?;
    let ts = p.ts();
    let base = koornwinder(lambda, n, p, method)?;
    let mut out = Vec::new();

    let left = apply_integral(&IntegralKind::Plus, &base, p)?;
    let right = koornwinder(lambda, n + 1, &p.shift(ShiftKind::IPlusTarget), method)?
        .scale(&column_factor(lambda, n as i64 + 1, &int(1), p)?);
    out.push(PolyIdentity { identity: "integral-lifting".into(), left, right });

    let ab = &ts[0] * &ts[1];
    let left = apply_integral(&IntegralKind::Zero(ts[0].clone(), ts[1].clone()), &base, p)?;
    let right = koornwinder(lambda, n, &p.shift(ShiftKind::IZeroTarget), method)?
        .scale(&column_factor(lambda, n as i64, &ab, p)?);
    out.push(PolyIdentity { identity: "integral-diagonal".into(), left, right });

    if n >= 1 {
        let left = apply_integral(&IntegralKind::Minus, &base, p)?;
        let right = if lambda.len() < n {
            koornwinder(lambda, n - 1, &p.shift(ShiftKind::IMinusTarget), method)?
                .scale(&column_factor(lambda, n as i64 - 1, &p.t_product(), p)?)
        } else {
            BCPoly::zero(n - 1)
        };
        out.push(PolyIdentity { identity: "integral-descending".into(), left, right });
    }
    Ok(out)
}
