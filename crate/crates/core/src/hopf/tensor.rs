//! Tensor powers of `H` and the basis-change maps on `H (x) H`.

use super::HPoly;
use crate::multiindex::MultiIndex;
use crate::scalar::Rat;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// Element of `H^{(x) k}`: a finite rational combination of monomial
/// tensors, keyed by the tuple of leg exponents. Componentwise
/// multiplication makes it a commutative ring with unit `1 (x) ... (x) 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct HTensor {
    nvars: usize,
    arity: usize,
    terms: BTreeMap<Vec<MultiIndex>, Rat>,
}

impl HTensor {
    pub fn zero(nvars: usize, arity: usize) -> Self {
        assert!(arity >= 1, "tensor arity must be positive");
        HTensor {
            nvars,
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nvars: usize, arity: usize) -> Self {
        let mut t = Self::zero(nvars, arity);
        t.insert(vec![MultiIndex::zero(nvars); arity], Rat::one());
        t
    }

    /// Arity-1 tensor wrapping a polynomial.
    pub fn from_poly(f: &HPoly) -> Self {
        let mut t = Self::zero(f.nvars(), 1);
        for (e, c) in f.terms() {
            t.insert(vec![e.clone()], c.clone());
        }
        t
    }

    /// Elementary tensor `f_1 (x) ... (x) f_k`, expanded to monomial terms.
    pub fn pure(legs: &[HPoly]) -> Self {
        assert!(!legs.is_empty());
        let nvars = legs[0].nvars();
        assert!(legs.iter().all(|l| l.nvars() == nvars), "variable count mismatch");
        let mut t = Self::zero(nvars, legs.len());
        let mut stack: Vec<(Vec<MultiIndex>, Rat)> = vec![(Vec::new(), Rat::one())];
        for leg in legs {
            let mut next = Vec::new();
            for (prefix, c) in &stack {
                for (e, v) in leg.terms() {
                    let mut key = prefix.clone();
                    key.push(e.clone());
                    next.push((key, c * v));
                }
            }
            stack = next;
        }
        for (key, c) in stack {
            t.insert(key, c);
        }
        t
    }

    pub fn insert(&mut self, legs: Vec<MultiIndex>, c: Rat) {
        assert_eq!(legs.len(), self.arity, "tensor arity mismatch");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(legs) {
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

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<MultiIndex>, &Rat)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Rat) -> HTensor {
        if c.is_zero() {
            return HTensor::zero(self.nvars, self.arity);
        }
        HTensor {
            nvars: self.nvars,
            arity: self.arity,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Componentwise (legwise) product.
    pub fn mul(&self, rhs: &HTensor) -> HTensor {
        assert_eq!(self.arity, rhs.arity, "tensor arity mismatch");
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = HTensor::zero(self.nvars, self.arity);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &rhs.terms {
                let key: Vec<MultiIndex> = ka.iter().zip(kb).map(|(a, b)| a.add(b)).collect();
                out.insert(key, ca * cb);
            }
        }
        out
    }

    /// Apply the coproduct to leg `i`, raising the arity by one.
    pub fn expand_leg(&self, i: usize) -> HTensor {
        assert!(i < self.arity);
        let mut out = HTensor::zero(self.nvars, self.arity + 1);
        for (key, c) in &self.terms {
            let exp = &key[i];
            for g in exp.enumerate_below() {
                let rest = exp.checked_sub(&g).expect("enumerate_below bounds");
                let mut legs = Vec::with_capacity(self.arity + 1);
                legs.extend_from_slice(&key[..i]);
                legs.push(g.clone());
                legs.push(rest);
                legs.extend_from_slice(&key[i + 1..]);
                out.insert(legs, c * &exp.binomial_rat(&g));
            }
        }
        out
    }

    /// Apply the counit to leg `i`, lowering the arity by one.
    pub fn contract_leg(&self, i: usize) -> HTensor {
        assert!(i < self.arity);
        assert!(self.arity > 1, "cannot contract the last leg");
        let mut out = HTensor::zero(self.nvars, self.arity - 1);
        for (key, c) in &self.terms {
            if key[i].is_zero() {
                let mut legs = key.clone();
                legs.remove(i);
                out.insert(legs, c.clone());
            }
        }
        out
    }

    /// Apply the antipode to leg `i`.
    pub fn antipode_leg(&self, i: usize) -> HTensor {
        assert!(i < self.arity);
        let mut out = HTensor::zero(self.nvars, self.arity);
        for (key, c) in &self.terms {
            let c = if key[i].total_degree() % 2 == 1 { -c } else { c.clone() };
            out.insert(key.clone(), c);
        }
        out
    }

    /// Swap legs `i` and `j`.
    pub fn swap_legs(&self, i: usize, j: usize) -> HTensor {
        assert!(i < self.arity && j < self.arity);
        let mut out = HTensor::zero(self.nvars, self.arity);
        for (key, c) in &self.terms {
            let mut legs = key.clone();
            legs.swap(i, j);
            out.insert(legs, c.clone());
        }
        out
    }

    /// Extract the polynomial from an arity-1 tensor.
    pub fn into_poly(&self) -> HPoly {
        assert_eq!(self.arity, 1, "into_poly needs arity 1");
        HPoly::from_terms(
            self.nvars,
            self.terms.iter().map(|(k, c)| (k[0].clone(), c.clone())),
        )
    }

    /// Basis change `f (x) g -> f S(g_(1)) (x) g_(2)`, expressing a tensor
    /// in the right-module basis `{h (x) 1}` of `H (x) H`. Arity 2 only.
    pub fn to_h_basis(&self) -> HTensor {
        self.straighten(true)
    }

    /// Inverse basis change `f (x) g -> f g_(1) (x) g_(2)`.
    pub fn from_h_basis(&self) -> HTensor {
        self.straighten(false)
    }

    fn straighten(&self, with_antipode: bool) -> HTensor {
        assert_eq!(self.arity, 2, "basis change is defined on H (x) H");
        let mut out = HTensor::zero(self.nvars, 2);
        for (key, c) in &self.terms {
            let (fexp, gexp) = (&key[0], &key[1]);
            for g1 in gexp.enumerate_below() {
                let g2 = gexp.checked_sub(&g1).expect("enumerate_below bounds");
                let mut coeff = c * &gexp.binomial_rat(&g1);
                if with_antipode && g1.total_degree() % 2 == 1 {
                    coeff = -&coeff;
                }
                out.insert(vec![fexp.add(&g1), g2], coeff);
            }
        }
        out
    }
}

impl Add for &HTensor {
    type Output = HTensor;
    fn add(self, rhs: &HTensor) -> HTensor {
        assert_eq!(self.arity, rhs.arity, "tensor arity mismatch");
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.insert(k.clone(), c.clone());
        }
        out
    }
}

impl Sub for &HTensor {
    type Output = HTensor;
    fn sub(self, rhs: &HTensor) -> HTensor {
        self + &(-rhs)
    }
}

impl Neg for &HTensor {
    type Output = HTensor;
    fn neg(self) -> HTensor {
        HTensor {
            nvars: self.nvars,
            arity: self.arity,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for HTensor {
    /// Legs separated by `(x)`: `T1(x)1 + 1(x)T1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::fmt_terms(
            f,
            self.terms.iter().rev().map(|(key, c)| {
                let legs: Vec<String> = key
                    .iter()
                    .map(|e| {
                        let m = crate::format_monomial("T", e);
                        if m.is_empty() {
                            "1".to_string()
                        } else {
                            m
                        }
                    })
                    .collect();
                (legs.join("(x)"), c.clone())
            }),
        )
    }
}

impl fmt::Debug for HTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
