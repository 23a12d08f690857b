//! The divided-power span inside the dual of `H`.
//!
//! `DualPoly` realizes the sub-bialgebra of `H*` spanned by the functionals
//! `t^a` with `<t^a, T^b> = delta_{a,b} a!`; products follow the
//! divided-power rule `t^a t^b = t^{a+b}`, dual to the coproduct of `H`.
//! The full topological dual `k[[t]]` is never materialized: every pairing
//! against a fixed polynomial has finite support.

use super::HPoly;
use crate::error::{Error, Result};
use crate::multiindex::MultiIndex;
use crate::scalar::Rat;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Finite rational combination of the divided-power functionals `t^a`.
#[derive(Clone, PartialEq, Eq)]
pub struct DualPoly {
    nvars: usize,
    terms: BTreeMap<MultiIndex, Rat>,
}

impl DualPoly {
    pub fn zero(nvars: usize) -> Self {
        DualPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    /// The counit functional `t^0`.
    pub fn one(nvars: usize) -> Self {
        Self::monomial(MultiIndex::zero(nvars), Rat::one())
    }

    pub fn monomial(exp: MultiIndex, c: Rat) -> Self {
        let mut x = Self::zero(exp.nvars());
        x.insert(exp, c);
        x
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

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Rat)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Rat) -> DualPoly {
        if c.is_zero() {
            return DualPoly::zero(self.nvars);
        }
        DualPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Bilinear extension of `<t^a, T^b> = delta_{a,b} a!`.
    pub fn pairing(&self, f: &HPoly) -> Result<Rat> {
        if self.nvars != f.nvars() {
            return Err(Error::VarMismatch {
                expected: self.nvars,
                found: f.nvars(),
            });
        }
        let mut acc = Rat::zero();
        for (exp, c) in &self.terms {
            let fc = f.coeff(exp);
            if !fc.is_zero() {
                acc += &(&(c * &fc) * &exp.factorial_rat());
            }
        }
        Ok(acc)
    }

    /// Right action of `H` on the dual, twisted by the antipode:
    /// `<x.h, f> = <x, S(h) f>`. On monomials this is
    /// `t^a . T^k = (-1)^{|k|} (a)_k t^{a-k}`.
    pub fn h_action(&self, h: &HPoly) -> DualPoly {
        assert_eq!(self.nvars, h.nvars(), "variable count mismatch");
        let mut out = DualPoly::zero(self.nvars);
        for (lam, c) in &self.terms {
            for (kap, d) in h.terms() {
                if let Some(rest) = lam.checked_sub(kap) {
                    let mut coeff = &(c * d) * &lam.falling_factorial_rat(kap);
                    if kap.total_degree() % 2 == 1 {
                        coeff = -&coeff;
                    }
                    out.insert(rest, coeff);
                }
            }
        }
        out
    }

    /// The untwisted alternative `<x.h, f> = <x, h f>`; kept only so axiom
    /// failures can report which module-action convention would have held.
    pub fn h_action_untwisted(&self, h: &HPoly) -> DualPoly {
        assert_eq!(self.nvars, h.nvars(), "variable count mismatch");
        let mut out = DualPoly::zero(self.nvars);
        for (lam, c) in &self.terms {
            for (kap, d) in h.terms() {
                if let Some(rest) = lam.checked_sub(kap) {
                    out.insert(rest, &(c * d) * &lam.falling_factorial_rat(kap));
                }
            }
        }
        out
    }
}

impl Add for &DualPoly {
    type Output = DualPoly;
    fn add(self, rhs: &DualPoly) -> DualPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &DualPoly {
    type Output = DualPoly;
    fn sub(self, rhs: &DualPoly) -> DualPoly {
        self + &(-rhs)
    }
}

impl Neg for &DualPoly {
    type Output = DualPoly;
    fn neg(self) -> DualPoly {
        DualPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &DualPoly {
    type Output = DualPoly;
    /// Divided-power product `t^a t^b = t^{a+b}`, extended bilinearly.
    fn mul(self, rhs: &DualPoly) -> DualPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = DualPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.insert(ea.add(eb), ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for DualPoly {
    /// `t^3` in one variable, `t^[1,2]` in several.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::fmt_terms(
            f,
            self.terms.iter().rev().map(|(e, c)| {
                let mono = if e.is_zero() {
                    String::new()
                } else if e.nvars() == 1 {
                    format!("t^{}", e.get(0))
                } else {
                    format!("t^{e}")
                };
                (mono, c.clone())
            }),
        )
    }
}

impl fmt::Debug for DualPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tpow(n: u32) -> DualPoly {
        DualPoly::monomial(MultiIndex::new(vec![n]), Rat::one())
    }

    fn hpow(n: u32) -> HPoly {
        HPoly::monomial(MultiIndex::new(vec![n]), Rat::one())
    }

    #[test]
    fn pairing_examples() {
        // <t^2, T^2> = 2!, <t^1, T^2> = 0
        assert_eq!(tpow(2).pairing(&hpow(2)).unwrap(), Rat::from_int(2));
        assert_eq!(tpow(1).pairing(&hpow(2)).unwrap(), Rat::zero());
        // multi-index extension: <t^(1,1), T1*T2> = 1!*1! = 1,
        // the product of the one-variable pairings
        let x = DualPoly::monomial(MultiIndex::new(vec![1, 1]), Rat::one());
        let f = HPoly::monomial(MultiIndex::new(vec![1, 1]), Rat::one());
        assert_eq!(x.pairing(&f).unwrap(), Rat::one());
        let one_var = tpow(1).pairing(&hpow(1)).unwrap();
        assert_eq!(x.pairing(&f).unwrap(), &one_var * &one_var);
    }

    #[test]
    fn pairing_var_mismatch() {
        let x = tpow(1);
        let f = HPoly::one(2);
        assert!(x.pairing(&f).is_err());
    }

    #[test]
    fn dual_mul_against_coproduct() {
        // oracle: <x y, T^v> = sum_k C(v,k) <x, T^k><y, T^{v-k}>
        for a in 0..=3u32 {
            for b in 0..=3u32 {
                let x = tpow(a);
                let y = tpow(b);
                let xy = &x * &y;
                for v in 0..=6u64 {
                    let f = hpow(v as u32);
                    let mut rhs = Rat::zero();
                    for (legs, c) in f.coproduct().terms() {
                        let xf = x.pairing(&HPoly::monomial(legs[0].clone(), Rat::one())).unwrap();
                        let yf = y.pairing(&HPoly::monomial(legs[1].clone(), Rat::one())).unwrap();
                        rhs += &(&(c * &xf) * &yf);
                    }
                    assert_eq!(xy.pairing(&f).unwrap(), rhs);
                }
            }
        }
        // frozen instances
        assert_eq!(&tpow(1) * &tpow(1), tpow(2));
        let t10 = DualPoly::monomial(MultiIndex::new(vec![1, 0]), Rat::one());
        let t01 = DualPoly::monomial(MultiIndex::new(vec![0, 1]), Rat::one());
        let t11 = DualPoly::monomial(MultiIndex::new(vec![1, 1]), Rat::one());
        assert_eq!(&t10 * &t01, t11);
        // unit
        let x = &tpow(2).scale(&Rat::new(3, 2)) + &tpow(0);
        assert_eq!(&DualPoly::one(1) * &x, x);
    }

    #[test]
    fn h_action_examples() {
        // t^n . T = -n t^{n-1}: <t^n . T, T^{n-1}> = <t^n, -T^n> = -n!
        let t_gen = HPoly::var(1, 0).unwrap();
        for n in 1..=5u32 {
            let acted = tpow(n).h_action(&t_gen);
            assert_eq!(acted, tpow(n - 1).scale(&Rat::from_int(-(n as i64))));
        }
        // x . 1 = x
        let x = &tpow(3) + &tpow(1).scale(&Rat::new(-1, 2));
        assert_eq!(x.h_action(&HPoly::one(1)), x);
        // t^0 . T1 = 0
        assert_eq!(tpow(0).h_action(&t_gen), DualPoly::zero(1));
    }

    #[test]
    fn h_action_adjoint_identity() {
        // <x.h, f> = <x, S(h) f> on monomials up to degree 4, two variables
        for lam in MultiIndex::enumerate(2, 4) {
            let x = DualPoly::monomial(lam, Rat::one());
            for kap in MultiIndex::enumerate(2, 2) {
                let h = HPoly::monomial(kap, Rat::one());
                let xh = x.h_action(&h);
                for mu in MultiIndex::enumerate(2, 4) {
                    let f = HPoly::monomial(mu, Rat::one());
                    let lhs = xh.pairing(&f).unwrap();
                    let rhs = x.pairing(&(&h.antipode() * &f)).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn display_forms() {
        assert_eq!(tpow(3).to_string(), "t^3");
        assert_eq!(tpow(0).to_string(), "1");
        let t11 = DualPoly::monomial(MultiIndex::new(vec![1, 1]), Rat::new(-1, 2));
        assert_eq!(t11.to_string(), "-1/2*t^[1,1]");
    }
}
