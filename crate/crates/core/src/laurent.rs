//! Sparse multivariate Laurent polynomials keyed by signed exponent vectors.
//!
//! This is the working representation inside the operators: prefactors are
//! multiplied in, the hyperoctahedral group acts on exponents, and the Weyl
//! denominator is divided back out exactly.

use std::collections::BTreeMap;

use num_traits::Zero;
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::{Field, Rational, Ring};

/// Exponent vector of one monomial.
pub type Exps = SmallVec<[i32; 4]>;

#[derive(Debug, Clone, PartialEq)]
pub struct SparseLaurent<R> {
    n: usize,
    terms: BTreeMap<Exps, R>,
}

impl<R: Ring> SparseLaurent<R> {
    pub fn zero(n: usize) -> Self {
        SparseLaurent { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: R) -> Self {
        Self::monomial(Exps::from_elem(0, n), c)
    }

    pub fn monomial(e: Exps, c: R) -> Self {
        let mut s = Self::zero(e.len());
        s.add_term(e, c);
        s
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Exps, R)>) -> Self {
        let mut s = Self::zero(n);
        for (e, c) in terms {
            assert_eq!(e.len(), n, "exponent vector length");
            s.add_term(e, c);
        }
        s
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &R)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[i32]) -> R {
        self.terms.get(e).cloned().unwrap_or_else(R::zero)
    }

    /// Adds `c z^e`, pruning an entry that cancels to zero.
    pub fn add_term(&mut self, e: Exps, c: R) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
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

    fn add_term_ref(&mut self, e: Exps, c: &R) {
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c.clone());
                }
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                o.get_mut().add_assign_ref(c);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term_ref(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        SparseLaurent {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = Self::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exps = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.mul_ref(cb));
            }
        }
        out
    }

    /// Product with a rational-coefficient Laurent polynomial.
    pub fn mul_rational(&self, other: &SparseLaurent<Rational>) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = Self::zero(self.n);
        for (eb, cb) in &other.terms {
            for (ea, ca) in &self.terms {
                let e: Exps = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca.scale(cb));
            }
        }
        out
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero(self.n);
        }
        SparseLaurent {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.scale(r))).collect(),
        }
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> SparseLaurent<S> {
        let mut out = SparseLaurent::zero(self.n);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), f(c));
        }
        out
    }

    /// The substitution `z_i -> s z_i` for every variable.
    pub fn dilate(&self, s: &Rational) -> Self {
        let mut out = Self::zero(self.n);
        for (e, c) in &self.terms {
            let deg: i32 = e.iter().sum();
            out.add_term(e.clone(), c.scale(&num_traits::Pow::pow(s, deg)));
        }
        out
    }

    /// The substitution `z_i -> 1/z_i` for each `i` with bit `i` set in `mask`.
    pub fn invert_coords(&self, mask: u32) -> Self {
        SparseLaurent {
            n: self.n,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let e2: Exps = e
                        .iter()
                        .enumerate()
                        .map(|(i, &a)| if mask >> i & 1 == 1 { -a } else { a })
                        .collect();
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// `prod_i (1 - R(z_i))` applied to `self`, where `R(z) f(z) = f(1/z)`.
    pub fn antisymmetrize_inversions(&self) -> Self {
        let mut out = Self::zero(self.n);
        for mask in 0u32..(1 << self.n) {
            let neg = mask.count_ones() % 2 == 1;
            for (e, c) in &self.terms {
                let e2: Exps = e
                    .iter()
                    .enumerate()
                    .map(|(i, &a)| if mask >> i & 1 == 1 { -a } else { a })
                    .collect();
                out.add_term(e2, if neg { -c.clone() } else { c.clone() });
            }
        }
        out
    }

    /// `prod_i (1 + R(z_i))` applied to `self`.
    pub fn symmetrize_inversions(&self) -> Self {
        let mut out = Self::zero(self.n);
        for mask in 0u32..(1 << self.n) {
            out = out.add(&self.invert_coords(mask));
        }
        out
    }

    /// Exact quotient by the binomial `z^alpha - z^beta`.
    pub fn divide_binomial(&self, alpha: &[i32], beta: &[i32]) -> Result<Self> {
        let d: Exps = alpha.iter().zip(beta).map(|(a, b)| a - b).collect();
        let p = d
            .iter()
            .position(|&x| x != 0)
            .ok_or_else(|| Error::Internal("binomial divisor is zero".into()))?;
        if d[p] < 0 {
            return Ok(self.divide_binomial(beta, alpha)?.neg());
        }
        // Q z^{-alpha} / (1 - X^{-1}) with X = z^d, one chain base + kd at a time.
        let mut chains: BTreeMap<Exps, BTreeMap<i32, &R>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let shifted: Exps = e.iter().zip(alpha).map(|(a, b)| a - b).collect();
            let k = shifted[p].div_euclid(d[p]);
            let base: Exps = shifted.iter().zip(&d).map(|(s, dd)| s - k * dd).collect();
            chains.entry(base).or_default().insert(k, c);
        }
        let mut out = Self::zero(self.n);
        for (base, chain) in chains {
            let lo = *chain.keys().next().expect("nonempty chain");
            let hi = *chain.keys().next_back().expect("nonempty chain");
            let mut running = R::zero();
            for k in (lo + 1..=hi).rev() {
                if let Some(c) = chain.get(&k) {
                    running.add_assign_ref(c);
                }
                if !running.is_zero() {
                    let e: Exps = base.iter().zip(&d).map(|(b, dd)| b + k * dd).collect();
                    out.add_term(e, running.clone());
                }
            }
            running.add_assign_ref(chain[&lo]);
            if !running.is_zero() {
                return Err(Error::NotDivisible);
            }
        }
        Ok(out)
    }

    /// Exact division by `Δ(z) = prod (z_i - 1/z_i) prod_{i<j} (z_i + 1/z_i - z_j - 1/z_j)`.
    pub fn weyl_divide(&self) -> Result<Self> {
        let n = self.n;
        let unit = |i: usize, s: i32| -> Exps {
            let mut e = Exps::from_elem(0, n);
            e[i] = s;
            e
        };
        let mut cur = self.clone();
        for i in 0..n {
            cur = cur.divide_binomial(&unit(i, 1), &unit(i, -1))?;
        }
        for i in 0..n {
            for j in i + 1..n {
                cur = cur.divide_binomial(&unit(i, 1), &unit(j, 1))?;
                let mut b = Exps::from_elem(0, n);
                b[i] = -1;
                b[j] = -1;
                cur = cur.divide_binomial(&Exps::from_elem(0, n), &b)?;
            }
        }
        Ok(cur)
    }

    fn check_generators(&self, sign: bool) -> bool {
        let n = self.n;
        for (e, c) in &self.terms {
            let expect = if sign { -c.clone() } else { c.clone() };
            if n >= 1 {
                let mut e2 = e.clone();
                e2[0] = -e2[0];
                if self.coeff(&e2) != expect {
                    return false;
                }
            }
            for i in 0..n.saturating_sub(1) {
                let mut e2 = e.clone();
                e2.swap(i, i + 1);
                if self.coeff(&e2) != expect {
                    return false;
                }
            }
        }
        true
    }

    /// Invariant under permutations and coordinate inversions.
    pub fn is_bc_symmetric(&self) -> bool {
        self.check_generators(false)
    }

    /// Changes sign under every transposition and every coordinate inversion.
    pub fn is_bc_antisymmetric(&self) -> bool {
        self.check_generators(true)
    }
}

impl<F: Field> SparseLaurent<F> {
    pub fn evaluate(&self, z: &[F]) -> Result<F> {
        if z.len() != self.n {
            return Err(Error::DimensionMismatch { left: self.n, right: z.len() });
        }
        if z.iter().any(|x| x.is_zero()) {
            return Err(Error::InvalidPoint("zero coordinate".into()));
        }
        let mut acc = F::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (x, &a) in z.iter().zip(e) {
                term = term.mul_ref(&x.powi(a as i64));
            }
            acc.add_assign_ref(&term);
        }
        Ok(acc)
    }
}

/// `Δ(z)` as a Laurent polynomial.
pub fn weyl_denominator(n: usize) -> SparseLaurent<Rational> {
    let one = Rational::from_integer(1.into());
    let mut acc = SparseLaurent::constant(n, one.clone());
    let mono = |pairs: &[(usize, i32)], c: Rational| -> SparseLaurent<Rational> {
        let mut e = Exps::from_elem(0, n);
        for &(i, a) in pairs {
            e[i] += a;
        }
        SparseLaurent::monomial(e, c)
    };
    for i in 0..n {
        let f = mono(&[(i, 1)], one.clone()).add(&mono(&[(i, -1)], -one.clone()));
        acc = acc.mul(&f);
    }
    for i in 0..n {
        for j in i + 1..n {
            let f = mono(&[(i, 1)], one.clone())
                .add(&mono(&[(i, -1)], one.clone()))
                .add(&mono(&[(j, 1)], -one.clone()))
                .add(&mono(&[(j, -1)], -one.clone()));
            acc = acc.mul(&f);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};
    use proptest::prelude::*;
    use smallvec::smallvec;

    fn l1(terms: &[(i32, i64)]) -> SparseLaurent<Rational> {
        SparseLaurent::from_terms(1, terms.iter().map(|&(e, c)| (smallvec![e], int(c))))
    }

    #[test]
    fn one_variable_weyl_division() {
        assert_eq!(l1(&[(2, 1), (-2, -1)]).weyl_divide().unwrap(), l1(&[(1, 1), (-1, 1)]));
        assert_eq!(l1(&[(1, 1), (-1, -1)]).weyl_divide().unwrap(), l1(&[(0, 1)]));
        assert_eq!(l1(&[(1, 1), (-1, -2)]).weyl_divide(), Err(Error::NotDivisible));
    }

    #[test]
    fn denominator_is_antisymmetric_with_unit_leading_term() {
        for n in 1..=3 {
            let d = weyl_denominator(n);
            assert!(d.is_bc_antisymmetric());
            let rho: Exps = (1..=n as i32).rev().collect();
            assert_eq!(d.coeff(&rho), int(1));
            assert_eq!(d.weyl_divide().unwrap(), SparseLaurent::constant(n, int(1)));
        }
    }

    #[test]
    fn symmetry_checks() {
        assert!(l1(&[(2, 1), (0, 2), (-2, 1)]).is_bc_symmetric());
        assert!(!l1(&[(1, 1)]).is_bc_symmetric());
        let two = SparseLaurent::from_terms(
            2,
            [(smallvec![1, 0], int(1)), (smallvec![0, 1], int(1)), (smallvec![-1, 0], int(1))],
        );
        assert!(!two.is_bc_symmetric());
    }

    #[test]
    fn evaluation() {
        let f = l1(&[(1, 1), (-1, 1)]);
        assert_eq!(f.evaluate(&[int(2)]).unwrap(), rat(5, 2));
        assert!(matches!(f.evaluate(&[int(0)]), Err(Error::InvalidPoint(_))));
    }

    fn arb_sym2() -> impl Strategy<Value = SparseLaurent<Rational>> {
        prop::collection::vec(((-2i32..=2, -2i32..=2), -5i64..=5), 1..5).prop_map(|ts| {
            let base = SparseLaurent::from_terms(
                2,
                ts.into_iter().map(|((a, b), c)| (smallvec![a, b], int(c))),
            );
            // symmetrize over the full group of order 8
            let mut acc = SparseLaurent::zero(2);
            for mask in 0..4u32 {
                let inv = base.invert_coords(mask);
                let swapped = SparseLaurent::from_terms(
                    2,
                    inv.terms().map(|(e, c)| (smallvec![e[1], e[0]], c.clone())),
                );
                acc = acc.add(&inv).add(&swapped);
            }
            acc
        })
    }

    proptest! {
        #[test]
        fn weyl_divide_inverts_multiplication(f in arb_sym2()) {
            let d = weyl_denominator(2);
            let prod = d.mul(&f);
            prop_assert!(prod.is_bc_antisymmetric());
            prop_assert_eq!(prod.weyl_divide().unwrap(), f);
        }

        #[test]
        fn binomial_division_round_trip(
            ts in prop::collection::vec(((-3i32..=3, -3i32..=3), -4i64..=4), 0..6),
            a in (-2i32..=2, -2i32..=2),
            b in (-2i32..=2, -2i32..=2),
        ) {
            prop_assume!(a != b);
            let f = SparseLaurent::from_terms(2, ts.into_iter().map(|((x, y), c)| (smallvec![x, y], int(c))));
            let div = SparseLaurent::from_terms(2, [(smallvec![a.0, a.1], int(1)), (smallvec![b.0, b.1], int(-1))]);
            let q = div.mul(&f).divide_binomial(&[a.0, a.1], &[b.0, b.1]).unwrap();
            prop_assert_eq!(q, f);
        }
    }
}
