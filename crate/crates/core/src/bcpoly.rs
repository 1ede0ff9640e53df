//! `BC_n`-symmetric Laurent polynomials in the basis
//! `m_λ(z) := m_λ(z_1 + 1/z_1, ..., z_n + 1/z_n)`, the ordinary monomial
//! symmetric polynomials in `x_i = z_i + z_i^{-1}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use parking_lot::Mutex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{Exps, SparseLaurent};
use crate::partition::Partition;
use crate::scalar::{int, parse_rational, Field, Rational, Ring};

#[derive(Clone)]
pub struct BCPoly<R> {
    n: usize,
    terms: BTreeMap<Partition, R>,
}

impl<R: Ring> BCPoly<R> {
    pub fn zero(n: usize) -> Self {
        BCPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: R) -> Self {
        let mut p = Self::zero(n);
        p.add_term(Partition::empty(), c);
        p
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, R::one())
    }

    /// The basis element `m_λ` in `n` variables.
    pub fn monomial(n: usize, lambda: Partition) -> Result<Self> {
        Self::term(n, lambda, R::one())
    }

    pub fn term(n: usize, lambda: Partition, c: R) -> Result<Self> {
        if lambda.len() > n {
            return Err(Error::InvalidShape(format!("{lambda} has more than {n} parts")));
        }
        let mut p = Self::zero(n);
        p.add_term(lambda, c);
        Ok(p)
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Partition, R)>) -> Result<Self> {
        let mut p = Self::zero(n);
        for (l, c) in terms {
            if l.len() > n {
                return Err(Error::InvalidShape(format!("{l} has more than {n} parts")));
            }
            p.add_term(l, c);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending graded order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Partition, &R)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Partition> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, lambda: &Partition) -> R {
        self.terms.get(lambda).cloned().unwrap_or_else(R::zero)
    }

    /// Largest part over the support.
    pub fn max_part(&self) -> u32 {
        self.terms.keys().map(|l| l.width()).max().unwrap_or(0)
    }

    fn add_term(&mut self, lambda: Partition, c: R) {
        if c.is_zero() {
            return;
        }
        debug_assert!(lambda.len() <= self.n || self.n == 0 && lambda.is_empty());
        match self.terms.entry(lambda) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(&c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Constants carry `n = 0` and combine with polynomials in any `n`.
    fn is_constant(&self) -> bool {
        self.terms.keys().all(|l| l.is_empty())
    }

    fn joint_n(&self, other: &Self) -> Result<usize> {
        if self.n == other.n {
            Ok(self.n)
        } else if self.n == 0 && self.is_constant() {
            Ok(other.n)
        } else if other.n == 0 && other.is_constant() {
            Ok(self.n)
        } else {
            Err(Error::DimensionMismatch { left: self.n, right: other.n })
        }
    }

    /// `Σ c_k f_k`, exact; all `f_k` must share `n`.
    pub fn linear_combine(coeffs: &[R], polys: &[BCPoly<R>]) -> Result<Self> {
        if coeffs.len() != polys.len() {
            return Err(Error::InvalidParameter("coefficient count differs from polynomial count".into()));
        }
        let n = polys.first().map(|p| p.n).unwrap_or(0);
        let mut out = Self::zero(n);
        for (c, p) in coeffs.iter().zip(polys) {
            if p.n != n {
                return Err(Error::DimensionMismatch { left: n, right: p.n });
            }
            for (l, a) in &p.terms {
                out.add_term(l.clone(), c.mul_ref(a));
            }
        }
        Ok(out)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        let n = self.joint_n(other)?;
        let mut out = BCPoly { n, terms: self.terms.clone() };
        for (l, c) in &other.terms {
            out.add_term(l.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        let mut out = Self::zero(self.n);
        for (l, c) in &self.terms {
            out.add_term(l.clone(), c.scale(r));
        }
        out
    }

    pub fn scale_by(&self, r: &R) -> Self {
        let mut out = Self::zero(self.n);
        for (l, c) in &self.terms {
            out.add_term(l.clone(), c.mul_ref(r));
        }
        out
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> BCPoly<S> {
        let mut out = BCPoly::zero(self.n);
        for (l, c) in &self.terms {
            out.add_term(l.clone(), f(c));
        }
        out
    }

    /// Monomials `x^a` of the expansion, one per distinct permutation.
    fn x_monomials(&self, n: usize) -> Vec<(Vec<u32>, &R)> {
        let mut out = Vec::new();
        for (l, c) in &self.terms {
            for perm in distinct_permutations(&l.padded(n)) {
                out.push((perm, c));
            }
        }
        out
    }

    /// Product of two symmetric polynomials, computed in `x`-space.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        let n = self.joint_n(other)?;
        if self.is_constant() {
            let c = self.coeff(&Partition::empty());
            return Ok(BCPoly { n, terms: other.scale_by(&c).terms });
        }
        if other.is_constant() {
            let c = other.coeff(&Partition::empty());
            return Ok(BCPoly { n, terms: self.scale_by(&c).terms });
        }
        // Only the weakly decreasing monomials of the product are needed:
        // their coefficients are the m-basis coefficients.
        let lhs = self.x_monomials(n);
        let rhs = other.x_monomials(n);
        let mut out = Self::zero(n);
        let mut s = vec![0u32; n];
        for (a, ca) in &lhs {
            for (b, cb) in &rhs {
                for i in 0..n {
                    s[i] = a[i] + b[i];
                }
                if s.windows(2).all(|w| w[0] >= w[1]) {
                    out.add_term(Partition::new(s.clone()).expect("sorted"), ca.mul_ref(cb));
                }
            }
        }
        Ok(out)
    }

    /// Expansion in the variables `z_i`.
    pub fn to_laurent(&self) -> SparseLaurent<R> {
        let mut out = SparseLaurent::zero(self.n);
        for (l, c) in &self.terms {
            let basis = x_monomial_laurent(self.n, l);
            for (e, b) in basis.terms() {
                out.add_term(e.clone(), c.scale(b));
            }
        }
        out
    }

    /// Collects a `BC_n`-symmetric Laurent polynomial into the `m`-basis.
    pub fn from_z_laurent(l: &SparseLaurent<R>) -> Result<Self> {
        if !l.is_bc_symmetric() {
            return Err(Error::SymmetryViolation);
        }
        let n = l.n();
        let mut out = Self::zero(n);
        for (e, c) in l.terms() {
            if !is_dominant(e) {
                continue;
            }
            let lambda = Partition::new(e.iter().map(|&a| a as u32).collect()).expect("dominant");
            for (mu, b) in orbit_in_x_basis(n, &lambda).terms.iter() {
                out.add_term(mu.clone(), c.scale(b));
            }
        }
        Ok(out)
    }

    /// The unique dominance-maximal term.
    pub fn leading(&self) -> Result<(Partition, R)> {
        let top = self
            .terms
            .keys()
            .next_back()
            .ok_or_else(|| Error::InvalidParameter("zero polynomial has no leading term".into()))?;
        // The graded-last element is maximal; it leads iff it dominates all.
        if self.terms.keys().all(|mu| top.dominates(mu)) {
            Ok((top.clone(), self.terms[top].clone()))
        } else {
            Err(Error::AmbiguousLeading)
        }
    }

    /// Every partition in the support is dominated by `lambda`.
    pub fn supported_below(&self, lambda: &Partition) -> bool {
        self.terms.keys().all(|mu| lambda.dominates(mu))
    }

    /// Evaluation at `z`, mapping coefficients into the field of the point.
    pub fn evaluate_with<F: Field>(&self, z: &[F], embed: impl Fn(&R) -> F) -> Result<F> {
        if z.len() != self.n && !(self.is_constant()) {
            return Err(Error::DimensionMismatch { left: self.n, right: z.len() });
        }
        if z.iter().any(|x| x.is_zero()) {
            return Err(Error::InvalidPoint("zero coordinate".into()));
        }
        let x: Vec<F> = z.iter().map(|zi| zi.clone() + zi.inv()).collect();
        let mut acc = F::zero();
        for (l, c) in &self.terms {
            let mut m = F::zero();
            for perm in distinct_permutations(&l.padded(x.len())) {
                let mut term = F::one();
                for (xi, &a) in x.iter().zip(&perm) {
                    for _ in 0..a {
                        term = term.mul_ref(xi);
                    }
                }
                m.add_assign_ref(&term);
            }
            acc.add_assign_ref(&embed(c).mul_ref(&m));
        }
        Ok(acc)
    }
}

impl<F: Field> BCPoly<F> {
    pub fn evaluate(&self, z: &[F]) -> Result<F> {
        self.evaluate_with(z, |c| c.clone())
    }
}

fn is_dominant(e: &[i32]) -> bool {
    e.iter().all(|&a| a >= 0) && e.windows(2).all(|w| w[0] >= w[1])
}

/// All distinct rearrangements of `v`.
pub(crate) fn distinct_permutations(v: &[u32]) -> Vec<Vec<u32>> {
    let mut cur: Vec<u32> = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    // lexicographic next_permutation
    while let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) {
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

type LaurentCache = Mutex<HashMap<(usize, Partition), Arc<SparseLaurent<Rational>>>>;
type PolyCache = Mutex<HashMap<(usize, Partition), Arc<BCPoly<Rational>>>>;

static X_MONOMIAL_LAURENT: Lazy<LaurentCache> = Lazy::new(Default::default);
static ORBIT_IN_X: Lazy<PolyCache> = Lazy::new(Default::default);

/// `m_λ(z + 1/z)` expanded in `z`.
pub fn x_monomial_laurent(n: usize, lambda: &Partition) -> Arc<SparseLaurent<Rational>> {
    let key = (n, lambda.clone());
    if let Some(v) = X_MONOMIAL_LAURENT.lock().get(&key) {
        return v.clone();
    }
    let mut out = SparseLaurent::zero(n);
    for perm in distinct_permutations(&lambda.padded(n)) {
        // prod_i (z_i + 1/z_i)^{a_i} via binomial coefficients
        let mut term = SparseLaurent::constant(n, int(1));
        for (i, &a) in perm.iter().enumerate() {
            let mut factor = SparseLaurent::zero(n);
            let mut binom = num_bigint::BigInt::one();
            for k in 0..=a {
                let mut e = Exps::from_elem(0, n);
                e[i] = a as i32 - 2 * k as i32;
                factor.add_term(e, Rational::from_integer(binom.clone()));
                binom = binom * (a - k) / (k + 1);
            }
            term = term.mul(&factor);
        }
        out = out.add(&term);
    }
    let v = Arc::new(out);
    X_MONOMIAL_LAURENT.lock().insert(key, v.clone());
    v
}

/// The orbit sum of `z^λ` written in the `m`-basis.
pub fn orbit_in_x_basis(n: usize, lambda: &Partition) -> Arc<BCPoly<Rational>> {
    let key = (n, lambda.clone());
    if let Some(v) = ORBIT_IN_X.lock().get(&key) {
        return v.clone();
    }
    // m_λ(x) = o_λ + Σ_{κ ≺ λ} c_κ o_κ, so o_λ = m_λ - Σ c_κ o_κ.
    let expansion = x_monomial_laurent(n, lambda);
    let mut out = BCPoly::monomial(n, lambda.clone()).expect("fits");
    for (e, c) in expansion.terms() {
        if !is_dominant(e) {
            continue;
        }
        let kappa = Partition::new(e.iter().map(|&a| a as u32).collect()).expect("dominant");
        if &kappa == lambda {
            debug_assert!(c.is_one());
            continue;
        }
        let lower = orbit_in_x_basis(n, &kappa);
        for (mu, b) in lower.terms.iter() {
            out.add_term(mu.clone(), -(c * b));
        }
    }
    let v = Arc::new(out);
    ORBIT_IN_X.lock().insert(key, v.clone());
    v
}

impl<R: Ring> PartialEq for BCPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && (self.n == other.n || self.is_constant())
    }
}

impl<R: Ring + fmt::Debug> fmt::Debug for BCPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BCPoly[n={}]{{", self.n)?;
        for (i, (l, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{l}: {c:?}")?;
        }
        write!(f, "}}")
    }
}

impl<R: Ring> Add for BCPoly<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("BCPoly addition across different n")
    }
}

impl<R: Ring> Sub for BCPoly<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.try_add(&-rhs).expect("BCPoly subtraction across different n")
    }
}

impl<R: Ring> Neg for BCPoly<R> {
    type Output = Self;
    fn neg(self) -> Self {
        BCPoly { n: self.n, terms: self.terms.into_iter().map(|(l, c)| (l, -c)).collect() }
    }
}

impl<R: Ring> Mul for BCPoly<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.multiply(&rhs).expect("BCPoly product across different n")
    }
}

impl<R: Ring> Zero for BCPoly<R> {
    fn zero() -> Self {
        BCPoly::zero(0)
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<R: Ring> One for BCPoly<R> {
    fn one() -> Self {
        BCPoly::one(0)
    }
}

impl<R: Ring> Ring for BCPoly<R> {
    fn from_rational(r: &Rational) -> Self {
        BCPoly::constant(0, R::from_rational(r))
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self.multiply(other).expect("BCPoly product across different n")
    }
    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.try_add(other).expect("BCPoly addition across different n");
    }
    fn scale(&self, r: &Rational) -> Self {
        BCPoly::scale(self, r)
    }
}

/// Wire form of one term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub lambda: Partition,
    pub coeff: String,
}

/// Wire form: `{"n":2,"basis":"x-monomial","terms":[{"lambda":[2,1],"coeff":"-3/7"}]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BCPolyJson {
    pub n: usize,
    pub basis: String,
    pub terms: Vec<TermJson>,
}

pub const BASIS_NAME: &str = "x-monomial";

impl BCPoly<Rational> {
    /// Terms listed leading-first (descending graded order).
    pub fn to_json(&self) -> BCPolyJson {
        BCPolyJson {
            n: self.n,
            basis: BASIS_NAME.to_string(),
            terms: self
                .terms
                .iter()
                .rev()
                .map(|(l, c)| TermJson { lambda: l.clone(), coeff: c.to_string() })
                .collect(),
        }
    }

    pub fn from_json(j: &BCPolyJson) -> Result<Self> {
        if j.basis != BASIS_NAME {
            return Err(Error::Parse(format!("unsupported basis {:?}", j.basis)));
        }
        let mut terms = Vec::new();
        for t in &j.terms {
            terms.push((t.lambda.clone(), parse_rational(&t.coeff)?));
        }
        BCPoly::from_terms(j.n, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::box_partitions;
    use crate::scalar::rat;
    use proptest::prelude::*;
    use smallvec::smallvec;

    type P = BCPoly<Rational>;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn m(n: usize, v: &[u32]) -> P {
        P::monomial(n, part(v)).unwrap()
    }

    #[test]
    fn linear_combination() {
        let z = P::linear_combine(&[int(1), int(-1)], &[m(1, &[1]), m(1, &[1])]).unwrap();
        assert!(z.is_zero());
        let f = P::linear_combine(&[int(2), int(3)], &[m(1, &[2]), m(1, &[])]).unwrap();
        assert_eq!(f.coeff(&part(&[2])), int(2));
        assert_eq!(f.coeff(&part(&[])), int(3));
        assert_eq!(
            P::linear_combine(&[int(1), int(1)], &[m(1, &[1]), m(2, &[1])]),
            Err(Error::DimensionMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn products() {
        assert_eq!(m(1, &[1]).multiply(&m(1, &[1])).unwrap(), m(1, &[2]));
        let f = P::from_terms(2, [(part(&[2, 1]), rat(3, 7)), (part(&[]), int(-1))]).unwrap();
        assert_eq!(f.multiply(&P::one(2)).unwrap(), f);
        let sq = m(2, &[1]).multiply(&m(2, &[1])).unwrap();
        let expect = P::from_terms(2, [(part(&[2]), int(1)), (part(&[1, 1]), int(2))]).unwrap();
        assert_eq!(sq, expect);
        // m_(1,1) * m_(1) = m_(2,1) in two variables
        assert_eq!(m(2, &[1, 1]).multiply(&m(2, &[1])).unwrap(), m(2, &[2, 1]));
        assert!(m(1, &[1]).multiply(&m(2, &[1])).is_err());
    }

    #[test]
    fn evaluation() {
        assert_eq!(m(1, &[1]).evaluate(&[int(2)]).unwrap(), rat(5, 2));
        assert_eq!(m(2, &[1, 1]).evaluate(&[int(2), int(3)]).unwrap(), rat(25, 3));
        let f = P::from_terms(2, [(part(&[2, 1]), rat(3, 7)), (part(&[1]), int(-2))]).unwrap();
        let a = f.evaluate(&[rat(2, 3), rat(-5, 2)]).unwrap();
        let b = f.evaluate(&[rat(3, 2), rat(-2, 5)]).unwrap();
        assert_eq!(a, b);
        assert!(matches!(m(1, &[1]).evaluate(&[int(0)]), Err(Error::InvalidPoint(_))));
    }

    #[test]
    fn from_laurent_examples() {
        let l = |ts: &[(i32, i64)]| {
            SparseLaurent::from_terms(1, ts.iter().map(|&(e, c)| (smallvec![e], int(c))))
        };
        assert_eq!(P::from_z_laurent(&l(&[(2, 1), (0, 2), (-2, 1)])).unwrap(), m(1, &[2]));
        assert_eq!(P::from_z_laurent(&l(&[(1, 1), (-1, 1)])).unwrap(), m(1, &[1]));
        assert_eq!(P::from_z_laurent(&l(&[(1, 1)])), Err(Error::SymmetryViolation));
    }

    #[test]
    fn basis_round_trip_in_box() {
        for n in 1..=3 {
            for lam in box_partitions(3, n) {
                let f = m(n, lam.parts());
                assert_eq!(P::from_z_laurent(&f.to_laurent()).unwrap(), f, "{lam} n={n}");
            }
        }
    }

    #[test]
    fn orbit_sums_are_unitriangular() {
        for n in 1..=3 {
            for lam in box_partitions(3, n) {
                let o = orbit_in_x_basis(n, &lam);
                assert_eq!(o.coeff(&lam), int(1));
                assert!(o.supported_below(&lam), "{lam}");
            }
        }
    }

    #[test]
    fn leading_terms() {
        let f = P::from_terms(1, [(part(&[2]), int(1)), (part(&[]), int(2))]).unwrap();
        assert_eq!(f.leading().unwrap(), (part(&[2]), int(1)));
        let g = P::from_terms(
            2,
            [(part(&[2, 1]), rat(-1, 3)), (part(&[1, 1]), int(5)), (part(&[]), int(1))],
        )
        .unwrap();
        assert_eq!(g.leading().unwrap(), (part(&[2, 1]), rat(-1, 3)));
        let h = P::from_terms(3, [(part(&[2]), int(1)), (part(&[1, 1, 1]), int(1))]).unwrap();
        assert_eq!(h.leading(), Err(Error::AmbiguousLeading));
    }

    #[test]
    fn json_round_trip() {
        let f = P::from_terms(2, [(part(&[2, 1]), rat(-3, 7)), (part(&[]), int(1))]).unwrap();
        let j = serde_json::to_string(&f.to_json()).unwrap();
        assert_eq!(
            j,
            r#"{"n":2,"basis":"x-monomial","terms":[{"lambda":[2,1],"coeff":"-3/7"},{"lambda":[],"coeff":"1"}]}"#
        );
        let back: BCPolyJson = serde_json::from_str(&j).unwrap();
        assert_eq!(P::from_json(&back).unwrap(), f);
    }

    fn arb_poly(n: usize) -> impl Strategy<Value = P> {
        let parts = box_partitions(2, n);
        prop::collection::vec((0..parts.len(), -4i64..=4, 1i64..=3), 0..4).prop_map(move |ts| {
            P::from_terms(n, ts.into_iter().map(|(i, a, b)| (parts[i].clone(), rat(a, b)))).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn product_commutes_and_associates(f in arb_poly(2), g in arb_poly(2), h in arb_poly(2)) {
            let fg = f.multiply(&g).unwrap();
            prop_assert_eq!(&fg, &g.multiply(&f).unwrap());
            prop_assert_eq!(fg.multiply(&h).unwrap(), f.multiply(&g.multiply(&h).unwrap()).unwrap());
        }

        #[test]
        fn product_matches_pointwise(f in arb_poly(2), g in arb_poly(2)) {
            let z = [rat(2, 3), rat(-7, 5)];
            let lhs = f.multiply(&g).unwrap().evaluate(&z).unwrap();
            prop_assert_eq!(lhs, f.evaluate(&z).unwrap() * g.evaluate(&z).unwrap());
        }

        #[test]
        fn laurent_round_trip(f in arb_poly(3)) {
            prop_assert_eq!(P::from_z_laurent(&f.to_laurent()).unwrap(), f);
        }
    }
}
