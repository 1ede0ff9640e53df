//! Exact integral operators `I^+`, `I^0(a,b)`, `I^-`.
//!
//! Applied to the dual Cauchy product
//! `f_{n,m}(z; y) = prod_{i<=n, j<=m} (y_j + 1/y_j - z_i - 1/z_i)` in `z`,
//! each integral operator becomes a t-direction difference operator in `y`
//! (times a scalar). Expanding both sides in `m_μ(y)` gives the images of
//! the `z`-coefficients of the kernel, and since that coefficient matrix is
//! triangular with `±1` diagonal, a triangular solve recovers the image of
//! every `m_λ(z)` with `λ_1 <= m`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::Zero;
use once_cell::sync::Lazy;
use parking_lot::Mutex;

use crate::bcpoly::BCPoly;
use crate::diffops::{DiffOperator, DifferenceKind, Direction};
use crate::error::{Error, Result};
use crate::params::ParamPoint;
use crate::partition::{box_partitions, Partition};
use crate::scalar::{int, qpoch, Field, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum IntegralKind {
    /// `n -> n + 1` variables.
    Plus,
    /// `n -> n` variables, with two parameters.
    Zero(Rational, Rational),
    /// `n -> n - 1` variables, using all four `t_r`.
    Minus,
}

impl IntegralKind {
    pub fn target_n(&self, n: usize) -> Result<usize> {
        match self {
            IntegralKind::Plus => Ok(n + 1),
            IntegralKind::Zero(..) => Ok(n),
            IntegralKind::Minus => n
                .checked_sub(1)
                .ok_or_else(|| Error::InvalidParameter("I^- needs at least one variable".into())),
        }
    }
}

/// `f_{n,m} = Σ_μ m_μ(y) b_μ(z)` over `μ ⊂ n^m`.
#[derive(Debug, Clone)]
pub struct DualCauchyKernel {
    pub n: usize,
    pub m: usize,
    rows: BTreeMap<Partition, BCPoly<Rational>>,
}

impl DualCauchyKernel {
    /// The coefficient `b_μ(z)` of `m_μ(y)`.
    pub fn row(&self, mu: &Partition) -> Option<&BCPoly<Rational>> {
        self.rows.get(mu)
    }

    pub fn rows(&self) -> impl Iterator<Item = (&Partition, &BCPoly<Rational>)> {
        self.rows.iter()
    }

    /// `B[μ, λ]`: coefficient of `m_λ(z)` in `b_μ`.
    pub fn entry(&self, mu: &Partition, lambda: &Partition) -> Rational {
        self.rows.get(mu).map(|b| b.coeff(lambda)).unwrap_or_else(Rational::zero)
    }

    /// The row index paired with `λ ⊂ m^n`: `n^m - λ'`.
    pub fn paired_row(&self, lambda: &Partition) -> Partition {
        lambda.complement_conjugate(self.m as u32, self.n)
    }
}

static KERNELS: Lazy<Mutex<HashMap<(usize, usize), Arc<DualCauchyKernel>>>> = Lazy::new(Default::default);

/// Expands `f_{n,m}` as `Σ_μ m_μ(y) b_μ(z)`.
///
/// In `x`-variables `Y_j`, `Z_i`, `prod_i (Y_j - Z_i) = Σ_k Y_j^k (-1)^{n-k} e_{n-k}(Z)`,
/// so `b_μ = (-1)^{nm-|μ|} prod_j e_{n-μ_j}(Z)`.
pub fn build_kernel(n: usize, m: usize) -> Arc<DualCauchyKernel> {
    if let Some(k) = KERNELS.lock().get(&(n, m)) {
        return k.clone();
    }
    let mut rows = BTreeMap::new();
    for mu in box_partitions(n as u32, m) {
        let mut b = BCPoly::<Rational>::one(n);
        for &part in &mu.padded(m) {
            let k = n - part as usize;
            let e = BCPoly::monomial(n, Partition::new(vec![1; k]).expect("column")).expect("fits");
            b = b.multiply(&e).expect("same n");
        }
        let sign = if (n * m - mu.size() as usize) % 2 == 0 { int(1) } else { int(-1) };
        rows.insert(mu, b.scale(&sign));
    }
    let k = Arc::new(DualCauchyKernel { n, m, rows });
    KERNELS.lock().insert((n, m), k.clone());
    k
}

/// The `y`-side difference operator and scalar prefactor matching an
/// integral operator on `n` variables with kernel width `m`, plus the
/// number of target variables.
fn dual_data(kind: &IntegralKind, n: usize, m: usize, p: &ParamPoint) -> Result<(DiffOperator, Rational, usize)> {
    let t = p.t();
    let (dkind, base, half_power) = match kind {
        IntegralKind::Plus => (DifferenceKind::Minus, t.powi(n as i64 + 1), n + 1),
        IntegralKind::Zero(a, b) => (DifferenceKind::Zero(a.clone(), b.clone()), t.powi(n as i64) * a * b, n),
        IntegralKind::Minus => {
            let n1 = kind.target_n(n)?;
            (DifferenceKind::Plus, t.powi(n1 as i64) * p.t_product(), n1)
        }
    };
    let poch = qpoch(&base, p.q(), m);
    if poch.is_zero() {
        return Err(Error::NonGenericParameters(format!("({base};q)_{m} vanishes")));
    }
    let scalar = p.th().powi((m * half_power) as i64) / poch;
    let op = DiffOperator::from_kind(&dkind, Direction::T, m, p);
    Ok((op, scalar, kind.target_n(n)?))
}

type ImageTable = HashMap<Partition, Arc<BCPoly<Rational>>>;
type IntKey = (IntegralKind, usize, usize, ParamPoint);
static IMAGES: Lazy<Mutex<HashMap<IntKey, Arc<ImageTable>>>> = Lazy::new(Default::default);

/// Images of all `m_λ`, `λ ⊂ m^n`, under the integral operator.
pub fn monomial_images(kind: &IntegralKind, n: usize, m: usize, p: &ParamPoint) -> Result<Arc<ImageTable>> {
    let key = (kind.clone(), n, m, p.clone());
    if let Some(v) = IMAGES.lock().get(&key) {
        return Ok(v.clone());
    }
    let (op, scalar, n_target) = dual_data(kind, n, m, p)?;
    let source = build_kernel(n, m);
    let target = build_kernel(n_target, m);

    // g_μ(w) = scalar Σ_ν [m_μ(y)] D_y m_ν(y) · b'_ν(w)
    let mut g: BTreeMap<Partition, BCPoly<Rational>> = BTreeMap::new();
    for (nu, b_nu) in target.rows() {
        let img = op.image_of_monomial(nu)?;
        for (mu, d) in img.terms() {
            let entry = g.entry(mu.clone()).or_insert_with(|| BCPoly::zero(n_target));
            *entry = entry.try_add(&b_nu.scale(&(d * &scalar)))?;
        }
    }

    // B·A = g, solved in increasing graded order of λ.
    let mut lambdas = box_partitions(m as u32, n);
    lambdas.sort();
    let mut table: ImageTable = HashMap::new();
    for lambda in &lambdas {
        let mu = source.paired_row(lambda);
        let row = source.row(&mu).ok_or_else(|| Error::Internal(format!("missing kernel row {mu}")))?;
        if !row.supported_below(lambda) {
            return Err(Error::Internal(format!("kernel row {mu} not triangular at {lambda}")));
        }
        let diag = row.coeff(lambda);
        if diag.is_zero() {
            return Err(Error::Internal(format!("zero kernel diagonal at {lambda}")));
        }
        let mut rhs = g.get(&mu).cloned().unwrap_or_else(|| BCPoly::zero(n_target));
        for (kappa, c) in row.terms() {
            if kappa != lambda {
                let a = table
                    .get(kappa)
                    .ok_or_else(|| Error::Internal(format!("{kappa} solved out of order")))?;
                rhs = rhs.try_add(&a.scale(&-c))?;
            }
        }
        table.insert(lambda.clone(), Arc::new(rhs.scale(&diag.inv())));
    }
    let v = Arc::new(table);
    IMAGES.lock().insert(key, v.clone());
    Ok(v)
}

/// Applies `I^+`, `I^0(a,b)` or `I^-` to `f`.
pub fn apply_integral(kind: &IntegralKind, f: &BCPoly<Rational>, p: &ParamPoint) -> Result<BCPoly<Rational>> {
    let n = f.n();
    let n_target = kind.target_n(n)?;
    let m = f.max_part() as usize;
    let table = monomial_images(kind, n, m, p)?;
    let mut out = BCPoly::zero(n_target);
    for (lambda, c) in f.terms() {
        let img = table
            .get(lambda)
            .ok_or_else(|| Error::InvalidShape(format!("{lambda} has more than {n} parts")))?;
        out = out.try_add(&img.scale(c))?;
    }
    Ok(out)
}

/// `t^{|λ|/2} prod_{i<=λ_1} (1 - t^{N-λ'_i} q^{i-1} T)/(1 - t^N q^{i-1} T)`
/// with `(N, T)` = `(n+1, 1)`, `(n, ab)`, `(n-1, t0t1t2t3)`: the leading
/// coefficient of the image of `m_λ`.
pub fn expected_leading(kind: &IntegralKind, n: usize, lambda: &Partition, p: &ParamPoint) -> Result<Rational> {
    let (big_n, prod) = match kind {
        IntegralKind::Plus => (n as i64 + 1, int(1)),
        IntegralKind::Zero(a, b) => (n as i64, a * b),
        IntegralKind::Minus => (kind.target_n(n)? as i64, p.t_product()),
    };
    let (q, t) = (p.q(), p.t());
    let conj = lambda.conjugate();
    let mut c = p.th().powi(lambda.size() as i64);
    for i in 1..=lambda.width() as usize {
        let qi = q.powi(i as i64 - 1) * &prod;
        let den = int(1) - t.powi(big_n) * &qi;
        if den.is_zero() {
            return Err(Error::NonGenericParameters(format!("leading factor {i} vanishes")));
        }
        c *= (int(1) - t.powi(big_n - conj.part(i) as i64) * &qi) / den;
    }
    Ok(c)
}

/// Triangularity and leading coefficient of the image of `m_λ`.
/// For `I^-` with `ℓ(λ) = n` the image is dominated by `λ` with no `m_λ` term.
pub fn check_triangularity(kind: &IntegralKind, n: usize, lambda: &Partition, p: &ParamPoint) -> Result<bool> {
    let img = apply_integral(kind, &BCPoly::monomial(n, lambda.clone())?, p)?;
    let n_target = kind.target_n(n)?;
    let dominated = img.supported_below(lambda);
    let lead = if lambda.len() <= n_target {
        img.coeff(lambda) == expected_leading(kind, n, lambda, p)?
    } else {
        img.coeff(lambda).is_zero()
    };
    Ok(dominated && lead)
}

/// Both `D^{-(n+1)}_q(t) I^{+(n)}_t(q) f` and
/// `I^{-(n)}_t(t0..t3; q) D^{+(n)}_q(t0..t3; t) f` vanish.
pub fn check_annihilation(n: usize, p: &ParamPoint, f: &BCPoly<Rational>) -> Result<bool> {
    if f.n() != n {
        return Err(Error::DimensionMismatch { left: n, right: f.n() });
    }
    let up = apply_integral(&IntegralKind::Plus, f, p)?;
    let first = DiffOperator::from_kind(&DifferenceKind::Minus, Direction::Q, n + 1, p).apply(&up)?;
    if n == 0 {
        return Ok(first.is_zero());
    }
    let raised = DiffOperator::from_kind(&DifferenceKind::Plus, Direction::Q, n, p).apply(f)?;
    let second = apply_integral(&IntegralKind::Minus, &raised, p)?;
    Ok(first.is_zero() && second.is_zero())
}
