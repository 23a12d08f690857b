//! Normal-ordered arithmetic in the Weyl algebra `A_n`.
//!
//! `A_n` is generated by `p_1..p_n, q_1..q_n` with `[p_i,p_j] = [q_i,q_j] = 0`
//! and `[q_i,p_j] = delta_{ij}`. Elements are stored in normal order (every
//! `p` to the left of every `q`); the product rewrites `q^a p^b` per variable
//! with the closed-form coefficients `k! C(a,k) C(b,k)`, which the tests pin
//! against the canonical representation on `H`.

mod matrix;

pub use matrix::{ideal_element, HVector, MatPoly, MatWeyl};

use crate::error::{Error, Result};
use crate::hopf::HPoly;
use crate::multiindex::{Degree, MultiIndex};
use crate::ring::Ring;
use crate::scalar::Rat;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Normal-ordered monomial `p^beta q^alpha`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct WeylMono {
    pub p: MultiIndex,
    pub q: MultiIndex,
}

impl WeylMono {
    pub fn total_degree(&self) -> u64 {
        self.p.total_degree() + self.q.total_degree()
    }
}

/// Element of the Weyl algebra in normal form:
/// `sum c_{beta,alpha} p^beta q^alpha` with no zero coefficients stored.
#[derive(Clone, PartialEq, Eq)]
pub struct WeylElement {
    nvars: usize,
    terms: BTreeMap<WeylMono, Rat>,
}

impl WeylElement {
    pub fn zero(nvars: usize) -> Self {
        WeylElement {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        Self::monomial(MultiIndex::zero(nvars), MultiIndex::zero(nvars), c)
    }

    /// The generator `p_i` (zero-based).
    pub fn p_var(nvars: usize, i: usize) -> Result<Self> {
        Ok(Self::monomial(
            MultiIndex::unit(nvars, i)?,
            MultiIndex::zero(nvars),
            Rat::one(),
        ))
    }

    /// The generator `q_i` (zero-based).
    pub fn q_var(nvars: usize, i: usize) -> Result<Self> {
        Ok(Self::monomial(
            MultiIndex::zero(nvars),
            MultiIndex::unit(nvars, i)?,
            Rat::one(),
        ))
    }

    /// The monomial `c p^beta q^alpha` (already in normal order).
    pub fn monomial(p: MultiIndex, q: MultiIndex, c: Rat) -> Self {
        assert_eq!(p.nvars(), q.nvars(), "p/q index length mismatch");
        let mut w = Self::zero(p.nvars());
        w.insert(WeylMono { p, q }, c);
        w
    }

    /// Interpret a polynomial as an element of `k[p_1..p_n]`.
    pub fn from_p_poly(f: &HPoly) -> Self {
        let mut w = Self::zero(f.nvars());
        for (e, c) in f.terms() {
            w.insert(
                WeylMono {
                    p: e.clone(),
                    q: MultiIndex::zero(f.nvars()),
                },
                c.clone(),
            );
        }
        w
    }

    fn insert(&mut self, m: WeylMono, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&WeylMono, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &WeylMono) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn scale(&self, c: &Rat) -> WeylElement {
        if c.is_zero() {
            return WeylElement::zero(self.nvars);
        }
        WeylElement {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn max_p_degree(&self) -> u64 {
        self.terms.keys().map(|m| m.p.total_degree()).max().unwrap_or(0)
    }

    pub fn max_q_degree(&self) -> u64 {
        self.terms.keys().map(|m| m.q.total_degree()).max().unwrap_or(0)
    }

    /// Fallible product with an explicit variable-count check.
    pub fn try_mul(&self, rhs: &WeylElement) -> Result<WeylElement> {
        if self.nvars != rhs.nvars {
            return Err(Error::VarMismatch {
                expected: self.nvars,
                found: rhs.nvars,
            });
        }
        Ok(self * rhs)
    }

    /// The derivation `[., p_i]`; on normal forms it is the formal partial
    /// derivative with respect to `q_i`.
    pub fn derivation(&self, i: usize) -> Result<WeylElement> {
        if i >= self.nvars {
            return Err(Error::IndexOutOfRange {
                index: i,
                nvars: self.nvars,
            });
        }
        let mut out = WeylElement::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.q.get(i);
            if e > 0 {
                out.insert(
                    WeylMono {
                        p: m.p.clone(),
                        q: m.q.with_entry(i, e - 1),
                    },
                    c * &Rat::from_int(e as i64),
                );
            }
        }
        Ok(out)
    }

    /// Degree in the q-adic filtration: the minimum total q-degree over the
    /// support, `+inf` for zero. `a` lies in the left ideal `Q_k` exactly
    /// when this is at least `k`.
    pub fn q_adic_degree(&self) -> Degree {
        self.terms
            .keys()
            .map(|m| Degree::Finite(m.q.total_degree()))
            .min()
            .unwrap_or(Degree::Infinite)
    }

    /// The anti-automorphism `p -> -p, q -> q` (without any matrix
    /// transpose; see [`MatWeyl::involution`] for the matrix version).
    pub fn involution(&self) -> WeylElement {
        let mut out = WeylElement::zero(self.nvars);
        for (m, c) in &self.terms {
            // sigma(p^b q^a) = q^a (-p)^b, rewritten to normal order
            let qpart = WeylElement::monomial(MultiIndex::zero(self.nvars), m.q.clone(), Rat::one());
            let ppart = WeylElement::monomial(m.p.clone(), MultiIndex::zero(self.nvars), Rat::one());
            let mut coeff = c.clone();
            if m.p.total_degree() % 2 == 1 {
                coeff = -&coeff;
            }
            out = &out + &(&qpart * &ppart).scale(&coeff);
        }
        out
    }

    /// Canonical action on `H`: `p_i` multiplies by `T_i`, `q_i` differentiates.
    pub fn act(&self, f: &HPoly) -> Result<HPoly> {
        if self.nvars != f.nvars() {
            return Err(Error::VarMismatch {
                expected: self.nvars,
                found: f.nvars(),
            });
        }
        let mut out = HPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let diff = f.derivative_multi(&m.q);
            for (e, v) in diff.terms() {
                out = &out + &HPoly::monomial(e.add(&m.p), &(v * c) * &Rat::one());
            }
        }
        Ok(out)
    }

    /// Commutator `[self, rhs]`.
    pub fn commutator(&self, rhs: &WeylElement) -> Result<WeylElement> {
        Ok(&self.try_mul(rhs)? - &rhs.try_mul(self)?)
    }

    /// The part free of `q`, as a polynomial in the `p` variables.
    pub fn q_free_p_poly(&self) -> HPoly {
        HPoly::from_terms(
            self.nvars,
            self.terms
                .iter()
                .filter(|(m, _)| m.q.is_zero())
                .map(|(m, c)| (m.p.clone(), c.clone())),
        )
    }

    /// Reinterpret over a larger variable count (appending variables).
    pub fn extend_vars(&self, nvars: usize) -> Result<WeylElement> {
        let mut out = WeylElement::zero(nvars);
        for (m, c) in &self.terms {
            out.insert(
                WeylMono {
                    p: m.p.extend_vars(nvars)?,
                    q: m.q.extend_vars(nvars)?,
                },
                c.clone(),
            );
        }
        Ok(out)
    }
}

impl Add for &WeylElement {
    type Output = WeylElement;
    fn add(self, rhs: &WeylElement) -> WeylElement {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &WeylElement {
    type Output = WeylElement;
    fn sub(self, rhs: &WeylElement) -> WeylElement {
        self + &(-rhs)
    }
}

impl Neg for &WeylElement {
    type Output = WeylElement;
    fn neg(self) -> WeylElement {
        WeylElement {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &WeylElement {
    type Output = WeylElement;
    /// Normal-ordering product. Panics on variable-count mismatch; see
    /// [`WeylElement::try_mul`].
    ///
    /// Per variable, `q^a p^b = sum_k k! C(a,k) C(b,k) p^{b-k} q^{a-k}`.
    fn mul(self, rhs: &WeylElement) -> WeylElement {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = WeylElement::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                // rewrite q^{a.q} p^{b.p}
                let a = &ma.q;
                let b = &mb.p;
                let kmax: Vec<u32> = a
                    .entries()
                    .iter()
                    .zip(b.entries())
                    .map(|(&x, &y)| x.min(y))
                    .collect();
                for k in MultiIndex::new(kmax).enumerate_below() {
                    let coeff = &(&k.factorial_rat() * &a.binomial_rat(&k)) * &b.binomial_rat(&k);
                    let p_exp = ma.p.add(&b.checked_sub(&k).unwrap());
                    let q_exp = a.checked_sub(&k).unwrap().add(&mb.q);
                    out.insert(
                        WeylMono { p: p_exp, q: q_exp },
                        &(&coeff * ca) * cb,
                    );
                }
            }
        }
        out
    }
}

impl Ring for WeylElement {
    fn zero_like(&self) -> Self {
        WeylElement::zero(self.nvars)
    }
    fn one_like(&self) -> Self {
        WeylElement::one(self.nvars)
    }
    fn is_zero(&self) -> bool {
        WeylElement::is_zero(self)
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
        WeylElement::scale(self, c)
    }
}

impl fmt::Display for WeylElement {
    /// Normal order enforced: `p1^2*q1*q2 + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::fmt_terms(
            f,
            self.terms.iter().rev().map(|(m, c)| {
                let ps = crate::format_monomial("p", &m.p);
                let qs = crate::format_monomial("q", &m.q);
                let mono = match (ps.is_empty(), qs.is_empty()) {
                    (true, true) => String::new(),
                    (false, true) => ps,
                    (true, false) => qs,
                    (false, false) => format!("{ps}*{qs}"),
                };
                (mono, c.clone())
            }),
        )
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
