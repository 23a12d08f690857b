//! Laurent polynomials in one variable `t` over the rationals; a coefficient
//! ring instance for formal distributions.

use crate::ring::Ring;
use crate::scalar::Rat;
use std::collections::BTreeMap;
use std::fmt;

/// `sum c_k t^k` with integer exponents of either sign, finitely many.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(0, Rat::one())
    }

    pub fn monomial(exp: i64, c: Rat) -> Self {
        let mut p = Self::zero();
        p.insert(exp, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Rat)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.insert(e, c);
        }
        p
    }

    fn insert(&mut self, exp: i64, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(exp) {
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

    pub fn coeff(&self, exp: i64) -> Rat {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rat)> {
        self.coeffs.iter()
    }
}

impl Ring for LaurentPoly {
    fn zero_like(&self) -> Self {
        LaurentPoly::zero()
    }
    fn one_like(&self) -> Self {
        LaurentPoly::one()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &rhs.coeffs {
            out.insert(e, c.clone());
        }
        out
    }
    fn neg(&self) -> Self {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }
    fn mul(&self, rhs: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (&ea, ca) in &self.coeffs {
            for (&eb, cb) in &rhs.coeffs {
                out.insert(ea + eb, ca * cb);
            }
        }
        out
    }
    fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }
}

impl fmt::Display for LaurentPoly {
    /// Ascending exponents: `2*t^-1 + 1 - 3*t^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::fmt_terms(
            f,
            self.coeffs.iter().map(|(&e, c)| {
                let mono = match e {
                    0 => String::new(),
                    1 => "t".to_string(),
                    _ => format!("t^{e}"),
                };
                (mono, c.clone())
            }),
        )
    }
}
