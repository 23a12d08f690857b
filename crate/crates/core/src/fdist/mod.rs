//! Finitely supported formal distributions and residue n-products.
//!
//! A distribution `a(z) = sum a_k z^k` is stored by the exponent of `z`
//! directly (coefficient of `z^k`), over any [`Ring`] instance — rationals,
//! rational matrices, Weyl elements, or Laurent polynomials. The n-th
//! product is the residue formula `(a_(n) b)(z) = Res_w a(w) b(z) (w-z)^n`.
//!
//! Because only finite supports are representable, multiplication by
//! `(w - z)` is injective here, so locality degenerates: a pair is local
//! exactly when the outer product `a(w) b(z)` vanishes outright (order
//! `N = 0`). Nontrivial locality needs infinite sums (delta distributions)
//! and lives on the conformal-element side, where it is finite by
//! construction.

mod laurent;

pub use laurent::LaurentPoly;

use crate::ring::Ring;
use crate::scalar::Rat;
use std::collections::BTreeMap;
use std::fmt;

/// Finitely supported `a(z) = sum a_k z^k` over a coefficient ring `R`.
#[derive(Clone, PartialEq, Debug)]
pub struct FormalDistribution<R: Ring> {
    coeffs: BTreeMap<i64, R>,
}

impl<R: Ring> FormalDistribution<R> {
    pub fn zero() -> Self {
        FormalDistribution {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn monomial(exp: i64, r: R) -> Self {
        let mut d = Self::zero();
        d.insert(exp, r);
        d
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, R)>) -> Self {
        let mut d = Self::zero();
        for (e, r) in terms {
            d.insert(e, r);
        }
        d
    }

    fn insert(&mut self, exp: i64, r: R) {
        if r.is_zero() {
            return;
        }
        match self.coeffs.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(r);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&r);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> Option<&R> {
        self.coeffs.get(&exp)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &R)> {
        self.coeffs.iter()
    }

    pub fn support_width(&self) -> u64 {
        match (self.coeffs.keys().next(), self.coeffs.keys().next_back()) {
            (Some(lo), Some(hi)) => (hi - lo) as u64,
            _ => 0,
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&e, r) in &rhs.coeffs {
            out.insert(e, r.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        FormalDistribution {
            coeffs: self.coeffs.iter().map(|(&e, r)| (e, r.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FormalDistribution {
            coeffs: self.coeffs.iter().map(|(&e, r)| (e, r.scale(c))).collect(),
        }
    }

    /// `T = d/dz`, term by term.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero();
        for (&e, r) in &self.coeffs {
            if e != 0 {
                out.insert(e - 1, r.scale(&Rat::from_int(e)));
            }
        }
        out
    }
}

/// Finitely supported `x(w, z) = sum x_{j,k} w^j z^k`.
#[derive(Clone, PartialEq, Debug)]
pub struct BiDistribution<R: Ring> {
    coeffs: BTreeMap<(i64, i64), R>,
}

impl<R: Ring> BiDistribution<R> {
    pub fn zero() -> Self {
        BiDistribution {
            coeffs: BTreeMap::new(),
        }
    }

    fn insert(&mut self, key: (i64, i64), r: R) {
        if r.is_zero() {
            return;
        }
        match self.coeffs.entry(key) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(r);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&r);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `w^j z^k`.
    pub fn coeff(&self, j: i64, k: i64) -> Option<&R> {
        self.coeffs.get(&(j, k))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &R)> {
        self.coeffs.iter()
    }

    /// Multiply by `(w - z)^n`, expanded exactly.
    pub fn mul_diff_power(&self, n: u32) -> Self {
        let mut out = self.clone();
        for _ in 0..n {
            let mut next = Self::zero();
            for (&(j, k), r) in &out.coeffs {
                next.insert((j + 1, k), r.clone());
                next.insert((j, k + 1), r.neg());
            }
            out = next;
        }
        out
    }

    /// The coefficient of `w^{-1}`, as a distribution in `z`.
    pub fn residue_w(&self) -> FormalDistribution<R> {
        let mut out = FormalDistribution::zero();
        for (&(j, k), r) in &self.coeffs {
            if j == -1 {
                out.insert(k, r.clone());
            }
        }
        out
    }
}

/// `a(w) b(z)`: coefficient of `w^j z^k` is `a_j b_k`.
pub fn outer_product<R: Ring>(a: &FormalDistribution<R>, b: &FormalDistribution<R>) -> BiDistribution<R> {
    let mut out = BiDistribution::zero();
    for (&j, ra) in &a.coeffs {
        for (&k, rb) in &b.coeffs {
            out.insert((j, k), ra.mul(rb));
        }
    }
    out
}

/// The residue n-product `(a_(n) b)(z) = Res_w a(w) b(z) (w-z)^n`.
pub fn nproduct<R: Ring>(
    a: &FormalDistribution<R>,
    b: &FormalDistribution<R>,
    n: u32,
) -> FormalDistribution<R> {
    outer_product(a, b).mul_diff_power(n).residue_w()
}

/// Locality verdict for a pair of finitely supported distributions.
#[derive(Clone, PartialEq, Debug)]
pub enum Locality<R> {
    /// `a(w) b(z) (w-z)^N = 0` already at `N = 0`.
    Local,
    /// Certificate: a nonzero coefficient of the outer product.
    NotLocal { w_exp: i64, z_exp: i64, witness: R },
}

impl<R> Locality<R> {
    pub fn is_local(&self) -> bool {
        matches!(self, Locality::Local)
    }
}

/// Decide locality. Multiplication by `(w - z)` is injective on finitely
/// supported bidistributions (the lexicographically leading coefficient
/// survives), so the pair is local exactly when the outer product vanishes;
/// otherwise the leading nonzero coefficient is returned as a certificate.
pub fn locality_test<R: Ring>(a: &FormalDistribution<R>, b: &FormalDistribution<R>) -> Locality<R> {
    let outer = outer_product(a, b);
    match outer.coeffs.iter().next_back() {
        None => Locality::Local,
        Some((&(j, k), r)) => Locality::NotLocal {
            w_exp: j,
            z_exp: k,
            witness: r.clone(),
        },
    }
}

/// `(Ta)_(n) b = -n a_(n-1) b`, exactly; at `n = 0` the left side must
/// vanish (a derivative has no `w^{-1}` coefficient under `Res_w`).
pub fn check_c2<R: Ring>(a: &FormalDistribution<R>, b: &FormalDistribution<R>, n: u32) -> bool {
    let lhs = nproduct(&a.derivative(), b, n);
    let rhs = if n == 0 {
        FormalDistribution::zero()
    } else {
        nproduct(a, b, n - 1).scale(&Rat::from_int(-(n as i64)))
    };
    lhs == rhs
}

/// `a_(n) (Tb) = T(a_(n) b) + n a_(n-1) b`, exactly.
pub fn check_c3<R: Ring>(a: &FormalDistribution<R>, b: &FormalDistribution<R>, n: u32) -> bool {
    let lhs = nproduct(a, &b.derivative(), n);
    let mut rhs = nproduct(a, b, n).derivative();
    if n > 0 {
        rhs = rhs.add(&nproduct(a, b, n - 1).scale(&Rat::from_int(n as i64)));
    }
    lhs == rhs
}

impl<R: Ring> fmt::Display for FormalDistribution<R> {
    /// Ascending exponents, ring-element syntax delegated to the instance:
    /// `3*z^-1 + 1/2*z^2`. Non-scalar coefficients are parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, r) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let rs = r.to_string();
            let coeff = if rs.contains(' ') || rs.contains('+') {
                format!("({rs})")
            } else {
                rs
            };
            match e {
                0 => write!(f, "{coeff}")?,
                1 => write!(f, "{coeff}*z")?,
                _ => write!(f, "{coeff}*z^{e}")?,
            }
        }
        Ok(())
    }
}
