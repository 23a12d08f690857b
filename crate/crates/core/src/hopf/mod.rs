//! The polynomial Hopf algebra `H = k[T_1, ..., T_n]`.
//!
//! `H` carries the canonical Hopf structure with primitive generators:
//! the coproduct sends `T_i` to `T_i (x) 1 + 1 (x) T_i`, the counit picks
//! the constant term, and the antipode negates each generator. The number
//! of variables is fixed per value and validated by every binary operation.

mod dual;
mod tensor;

pub use dual::DualPoly;
pub use tensor::HTensor;

use crate::error::{Error, Result};
use crate::multiindex::{Degree, MultiIndex};
use crate::ring::Ring;
use crate::scalar::Rat;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial in `H = k[T_1..T_n]` with exact rational coefficients.
///
/// Sparse representation keyed by exponent multi-index; no stored
/// coefficient is zero, and the map's graded-lex key order is the
/// canonical term order.
#[derive(Clone, PartialEq, Eq)]
pub struct HPoly {
    nvars: usize,
    terms: BTreeMap<MultiIndex, Rat>,
}

impl HPoly {
    pub fn zero(nvars: usize) -> Self {
        HPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        p.insert(MultiIndex::zero(nvars), c);
        p
    }

    /// The generator `T_i` (zero-based index).
    pub fn var(nvars: usize, i: usize) -> Result<Self> {
        Ok(Self::monomial(MultiIndex::unit(nvars, i)?, Rat::one()))
    }

    pub fn monomial(exp: MultiIndex, c: Rat) -> Self {
        let mut p = Self::zero(exp.nvars());
        p.insert(exp, c);
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (MultiIndex, Rat)>) -> Self {
        let mut p = Self::zero(nvars);
        for (exp, c) in terms {
            assert_eq!(exp.nvars(), nvars, "multi-index length mismatch");
            p.insert(exp, c);
        }
        p
    }

    fn insert(&mut self, exp: MultiIndex, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, exp: &MultiIndex) -> Rat {
        self.terms.get(exp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rat)> {
        self.terms.iter()
    }

    /// Largest total degree in the support; 0 for the zero polynomial.
    pub fn max_total_degree(&self) -> u64 {
        self.terms
            .keys()
            .map(MultiIndex::total_degree)
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &Rat) -> HPoly {
        if c.is_zero() {
            return HPoly::zero(self.nvars);
        }
        HPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> HPoly {
        let mut acc = HPoly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Fallible product with an explicit variable-count check.
    pub fn try_mul(&self, rhs: &HPoly) -> Result<HPoly> {
        if self.nvars != rhs.nvars {
            return Err(Error::VarMismatch {
                expected: self.nvars,
                found: rhs.nvars,
            });
        }
        Ok(self * rhs)
    }

    /// Formal partial derivative with respect to `T_i` (zero-based).
    pub fn partial_derivative(&self, i: usize) -> Result<HPoly> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: i,
                nvars: self.nvars,
            });
        }
        let mut out = HPoly::zero(self.nvars);
        for (exp, c) in &self.terms {
            let e = exp.get(i);
            if e > 0 {
                out.insert(exp.with_entry(i, e - 1), c * &Rat::from_int(e as i64));
            }
        }
        Ok(out)
    }

    /// Iterated derivative `d^alpha`.
    pub fn derivative_multi(&self, alpha: &MultiIndex) -> HPoly {
        assert_eq!(alpha.nvars(), self.nvars, "multi-index length mismatch");
        let mut out = HPoly::zero(self.nvars);
        for (exp, c) in &self.terms {
            if let Some(rest) = exp.checked_sub(alpha) {
                out.insert(rest, c * &exp.falling_factorial_rat(alpha));
            }
        }
        out
    }

    /// Counit: the constant term.
    pub fn counit(&self) -> Rat {
        self.coeff(&MultiIndex::zero(self.nvars))
    }

    /// Degree in the augmentation filtration: the minimum total degree over
    /// the support, `+inf` for the zero polynomial. `f` lies in the k-th
    /// power of the augmentation ideal exactly when this is at least `k`.
    pub fn aug_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|e| Degree::Finite(e.total_degree()))
            .min()
            .unwrap_or(Degree::Infinite)
    }

    /// Antipode: `T^a` picks up the sign `(-1)^|a|`.
    pub fn antipode(&self) -> HPoly {
        HPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let c = if e.total_degree() % 2 == 1 { -c } else { c.clone() };
                    (e.clone(), c)
                })
                .collect(),
        }
    }

    /// Coproduct `H -> H (x) H`; an algebra map with primitive generators,
    /// so on monomials it is the binomial expansion
    /// `T^a -> sum_{g <= a} C(a,g) T^g (x) T^{a-g}`.
    pub fn coproduct(&self) -> HTensor {
        let mut out = HTensor::zero(self.nvars, 2);
        for (exp, c) in &self.terms {
            for g in exp.enumerate_below() {
                let rest = exp.checked_sub(&g).expect("enumerate_below bounds");
                let coeff = c * &exp.binomial_rat(&g);
                out.insert(vec![g, rest], coeff);
            }
        }
        out
    }

    /// Iterated coproduct: `k = 0` is the identity (an arity-1 tensor),
    /// and each further step expands the last leg.
    pub fn iterated_coproduct(&self, k: usize) -> HTensor {
        let mut t = HTensor::from_poly(self);
        for _ in 0..k {
            t = t.expand_leg(t.arity() - 1);
        }
        t
    }

    /// Reinterpret over a larger variable count (appending variables).
    pub fn extend_vars(&self, nvars: usize) -> Result<HPoly> {
        let mut out = HPoly::zero(nvars);
        for (exp, c) in &self.terms {
            out.insert(exp.extend_vars(nvars)?, c.clone());
        }
        Ok(out)
    }
}

impl MultiIndex {
    /// All multi-indices componentwise below `self` (inclusive).
    pub fn enumerate_below(&self) -> Vec<MultiIndex> {
        let mut out = vec![MultiIndex::zero(self.nvars())];
        for i in 0..self.nvars() {
            let mut next = Vec::with_capacity(out.len() * (self.get(i) as usize + 1));
            for base in &out {
                for e in 0..=self.get(i) {
                    next.push(base.with_entry(i, e));
                }
            }
            out = next;
        }
        out
    }
}

impl Add for &HPoly {
    type Output = HPoly;
    /// Panics on variable-count mismatch.
    fn add(self, rhs: &HPoly) -> HPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &HPoly {
    type Output = HPoly;
    fn sub(self, rhs: &HPoly) -> HPoly {
        self + &(-rhs)
    }
}

impl Neg for &HPoly {
    type Output = HPoly;
    fn neg(self) -> HPoly {
        HPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &HPoly {
    type Output = HPoly;
    /// Panics on variable-count mismatch; see [`HPoly::try_mul`].
    fn mul(self, rhs: &HPoly) -> HPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = HPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.insert(ea.add(eb), ca * cb);
            }
        }
        out
    }
}

impl Ring for HPoly {
    fn zero_like(&self) -> Self {
        HPoly::zero(self.nvars)
    }
    fn one_like(&self) -> Self {
        HPoly::one(self.nvars)
    }
    fn is_zero(&self) -> bool {
        HPoly::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, c: &Rat) -> Self {
        HPoly::scale(self, c)
    }
}

impl fmt::Display for HPoly {
    /// Canonical form: terms in descending graded-lex order,
    /// e.g. `3*T1^2*T2 - 1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::fmt_terms(
            f,
            self.terms.iter().rev().map(|(e, c)| {
                let mono = crate::format_monomial("T", e);
                (mono, c.clone())
            }),
        )
    }
}

impl fmt::Debug for HPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
