//! Lie and Jordan structures around the polynomial algebra: Poisson
//! brackets, hamiltonian fields, polynomial derivations with divergence-free
//! and symplectic membership, the skew/symmetric split of matrix Weyl
//! elements, and the TC constructions (matrix embedding, variable
//! extension, derivation-valued basic maps).
//!
//! Membership in the divergence-free algebra is decided by the vanishing of
//! the divergence (the Lie derivative of the volume form), and membership
//! in the symplectic algebra by `d(i_D s) = 0` via Cartan's formula with
//! `ds = 0`; the hamiltonian-field consistency tests pin both reductions
//! against the bracket.
//!
//! Derivations live in two encodings that must not be conflated: as
//! [`PolyDerivation`] over the `T` variables (acting on `H`), and inside
//! the Weyl algebra as `sum f_i(p) q_i` (see [`wn_basic_map`] and
//! [`PolyDerivation::to_weyl`]), where the relevant derivations are
//! `[q_i, .]` instead.

use crate::confalg::{Backend, ConformalElement};
use crate::error::{Error, Result};
use crate::hopf::HPoly;
use crate::multiindex::MultiIndex;
use crate::ring::{RatMatrix, Ring};
use crate::scalar::Rat;
use crate::weyl::{MatWeyl, WeylElement};
use std::collections::BTreeMap;
use std::fmt;

/// Polynomial derivation `D = sum components[i] d/dT_i` of `H`.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyDerivation {
    components: Vec<HPoly>,
}

impl PolyDerivation {
    pub fn new(components: Vec<HPoly>) -> Result<Self> {
        let n = components.len();
        for c in &components {
            if c.nvars() != n {
                return Err(Error::VarMismatch {
                    expected: n,
                    found: c.nvars(),
                });
            }
        }
        if n == 0 {
            return Err(Error::Invalid("derivation needs at least one variable".into()));
        }
        Ok(PolyDerivation { components })
    }

    pub fn zero(nvars: usize) -> Self {
        PolyDerivation {
            components: vec![HPoly::zero(nvars); nvars],
        }
    }

    /// The coordinate derivation `d/dT_i` (zero-based).
    pub fn coordinate(nvars: usize, i: usize) -> Result<Self> {
        if i >= nvars {
            return Err(Error::IndexOutOfRange { index: i, nvars });
        }
        let mut components = vec![HPoly::zero(nvars); nvars];
        components[i] = HPoly::one(nvars);
        Ok(PolyDerivation { components })
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[HPoly] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(HPoly::is_zero)
    }

    pub fn add(&self, rhs: &PolyDerivation) -> Result<PolyDerivation> {
        if self.nvars() != rhs.nvars() {
            return Err(Error::VarMismatch {
                expected: self.nvars(),
                found: rhs.nvars(),
            });
        }
        Ok(PolyDerivation {
            components: self
                .components
                .iter()
                .zip(&rhs.components)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rat) -> PolyDerivation {
        PolyDerivation {
            components: self.components.iter().map(|f| f.scale(c)).collect(),
        }
    }

    /// Apply to a polynomial; a derivation of `H`.
    pub fn apply(&self, f: &HPoly) -> Result<HPoly> {
        if f.nvars() != self.nvars() {
            return Err(Error::VarMismatch {
                expected: self.nvars(),
                found: f.nvars(),
            });
        }
        let mut out = HPoly::zero(self.nvars());
        for (i, c) in self.components.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &(c * &f.partial_derivative(i)?);
            }
        }
        Ok(out)
    }

    /// The Lie bracket `[D1, D2]`, componentwise `D1(g_j) - D2(f_j)`.
    pub fn bracket(&self, rhs: &PolyDerivation) -> Result<PolyDerivation> {
        if self.nvars() != rhs.nvars() {
            return Err(Error::VarMismatch {
                expected: self.nvars(),
                found: rhs.nvars(),
            });
        }
        let mut components = Vec::with_capacity(self.nvars());
        for j in 0..self.nvars() {
            components.push(&self.apply(&rhs.components[j])? - &rhs.apply(&self.components[j])?);
        }
        Ok(PolyDerivation { components })
    }

    /// `div D = sum d(f_i)/dT_i`; the Lie derivative of the volume form.
    pub fn divergence(&self) -> HPoly {
        let mut out = HPoly::zero(self.nvars());
        for (i, c) in self.components.iter().enumerate() {
            out = &out + &c.partial_derivative(i).expect("index in range");
        }
        out
    }

    /// Membership in the divergence-free (volume-preserving) algebra.
    pub fn is_divergence_free(&self) -> bool {
        self.divergence().is_zero()
    }

    /// The contraction `i_D s` against the symplectic form
    /// `s = sum_i dT_i ^ dT_{k+i}`: equals
    /// `sum_i (f_i dT_{k+i} - f_{k+i} dT_i)`. Needs an even variable count.
    pub fn symplectic_contraction(&self) -> Result<DifferentialForm> {
        let n = self.nvars();
        if n % 2 != 0 {
            return Err(Error::OddDimension(n));
        }
        let k = n / 2;
        let mut form = DifferentialForm::zero(n, 1);
        for i in 0..k {
            form.insert(vec![k + i], self.components[i].clone());
            form.insert(vec![i], -&self.components[k + i]);
        }
        Ok(form)
    }

    /// Membership in the symplectic algebra: `d(i_D s) = 0` (Cartan's
    /// formula with `ds = 0`).
    pub fn is_symplectic(&self) -> Result<bool> {
        Ok(self.symplectic_contraction()?.exterior_d()?.is_zero())
    }

    /// Encode as `sum f_i(p) q_i` inside the Weyl algebra. The polynomial
    /// components are reinterpreted in the `p` variables.
    pub fn to_weyl(&self) -> WeylElement {
        let n = self.nvars();
        let mut out = WeylElement::zero(n);
        for (i, f) in self.components.iter().enumerate() {
            let qi = WeylElement::q_var(n, i).expect("index in range");
            out = &out + &(&WeylElement::from_p_poly(f) * &qi);
        }
        out
    }

    /// Decode from a Weyl element of the shape `sum f_i(p) q_i`.
    pub fn from_weyl(w: &WeylElement) -> Result<Self> {
        let n = w.nvars();
        let mut components = vec![HPoly::zero(n); n];
        for (mono, c) in w.terms() {
            if mono.q.total_degree() != 1 {
                return Err(Error::Invalid(
                    "not a derivation encoding: q-degree must be 1 in every term".into(),
                ));
            }
            let i = (0..n).find(|&i| mono.q.get(i) == 1).expect("degree 1");
            components[i] = &components[i] + &HPoly::monomial(mono.p.clone(), c.clone());
        }
        Self::new(components)
    }
}

impl fmt::Display for PolyDerivation {
    /// `T2*d1 - T1*d2`, with `di` the i-th coordinate derivation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.components.iter().enumerate() {
            for (exp, v) in c.terms() {
                let mono = crate::format_monomial("T", exp);
                let d = format!("d{}", i + 1);
                let full = if mono.is_empty() {
                    d
                } else {
                    format!("{mono}*{d}")
                };
                parts.push((full, v.clone()));
            }
        }
        crate::fmt_terms(f, parts.into_iter())
    }
}

/// Differential form of fixed degree with polynomial coefficients, keyed by
/// strictly increasing index subsets (antisymmetry is absorbed by sorting).
#[derive(Clone, PartialEq, Debug)]
pub struct DifferentialForm {
    nvars: usize,
    degree: usize,
    terms: BTreeMap<Vec<usize>, HPoly>,
}

impl DifferentialForm {
    pub fn zero(nvars: usize, degree: usize) -> Self {
        DifferentialForm {
            nvars,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// The volume form `dT_1 ^ ... ^ dT_n`.
    pub fn volume(nvars: usize) -> Self {
        let mut form = Self::zero(nvars, nvars);
        form.insert((0..nvars).collect(), HPoly::one(nvars));
        form
    }

    /// The symplectic form `s = sum_{i<k} dT_i ^ dT_{k+i}`, `n = 2k`.
    pub fn symplectic(nvars: usize) -> Result<Self> {
        if nvars % 2 != 0 {
            return Err(Error::OddDimension(nvars));
        }
        let k = nvars / 2;
        let mut form = Self::zero(nvars, 2);
        for i in 0..k {
            form.insert(vec![i, k + i], HPoly::one(nvars));
        }
        Ok(form)
    }

    /// Insert `coeff dT_S`; the index set is sorted with the sign of the
    /// sorting permutation, duplicate indices annihilate the term.
    pub fn insert(&mut self, mut indices: Vec<usize>, mut coeff: HPoly) {
        assert_eq!(indices.len(), self.degree, "form degree mismatch");
        // sort by adjacent transpositions, tracking the sign
        let mut sign_flip = false;
        for i in 0..indices.len() {
            for j in (i + 1)..indices.len() {
                match indices[j].cmp(&indices[i]) {
                    std::cmp::Ordering::Less => {
                        indices.swap(i, j);
                        sign_flip = !sign_flip;
                    }
                    std::cmp::Ordering::Equal => return,
                    std::cmp::Ordering::Greater => {}
                }
            }
        }
        if sign_flip {
            coeff = -&coeff;
        }
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(indices) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &HPoly)> {
        self.terms.iter()
    }

    /// Exterior derivative: `d(f dT_S) = sum_i (df/dT_i) dT_i ^ dT_S`.
    pub fn exterior_d(&self) -> Result<DifferentialForm> {
        let mut out = DifferentialForm::zero(self.nvars, self.degree + 1);
        for (indices, coeff) in &self.terms {
            for i in 0..self.nvars {
                let di = coeff.partial_derivative(i)?;
                if di.is_zero() {
                    continue;
                }
                let mut idx = Vec::with_capacity(self.degree + 1);
                idx.push(i);
                idx.extend_from_slice(indices);
                out.insert(idx, di);
            }
        }
        Ok(out)
    }
}

impl fmt::Display for DifferentialForm {
    /// `f dT1^dT2` summands; multi-term coefficients are parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (indices, coeff) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = coeff.to_string();
            let wedge: Vec<String> = indices.iter().map(|i| format!("dT{}", i + 1)).collect();
            if cs == "1" {
                write!(f, "{}", wedge.join("^"))?;
            } else if cs.contains(' ') {
                write!(f, "({cs}) {}", wedge.join("^"))?;
            } else {
                write!(f, "{cs} {}", wedge.join("^"))?;
            }
        }
        Ok(())
    }
}

/// The Poisson bracket
/// `{f, g} = sum_{i<=k} df/dT_i dg/dT_{k+i} - df/dT_{k+i} dg/dT_i`,
/// `n = 2k`. Bilinear, antisymmetric, satisfies Jacobi.
pub fn poisson_bracket(f: &HPoly, g: &HPoly) -> Result<HPoly> {
    let n = f.nvars();
    if g.nvars() != n {
        return Err(Error::VarMismatch {
            expected: n,
            found: g.nvars(),
        });
    }
    if n % 2 != 0 {
        return Err(Error::OddDimension(n));
    }
    let k = n / 2;
    let mut out = HPoly::zero(n);
    for i in 0..k {
        let a = &f.partial_derivative(i)? * &g.partial_derivative(k + i)?;
        let b = &f.partial_derivative(k + i)? * &g.partial_derivative(i)?;
        out = &out + &(&a - &b);
    }
    Ok(out)
}

/// The hamiltonian field `D_f = {f, .}`: components
/// `D_i = -df/dT_{k+i}`, `D_{k+i} = df/dT_i` for `i <= k`.
pub fn hamiltonian_field(f: &HPoly) -> Result<PolyDerivation> {
    let n = f.nvars();
    if n % 2 != 0 {
        return Err(Error::OddDimension(n));
    }
    let k = n / 2;
    let mut components = vec![HPoly::zero(n); n];
    for i in 0..k {
        components[i] = -&f.partial_derivative(k + i)?;
        components[k + i] = f.partial_derivative(i)?;
    }
    PolyDerivation::new(components)
}

/// Whether `f -> {f, .}` intertwines the bracket on the given pair:
/// `D_{{f,g}} = [D_f, D_g]`.
pub fn poisson_homomorphism_holds(f: &HPoly, g: &HPoly) -> Result<bool> {
    let lhs = hamiltonian_field(&poisson_bracket(f, g)?)?;
    let rhs = hamiltonian_field(f)?.bracket(&hamiltonian_field(g)?)?;
    Ok(lhs == rhs)
}

/// The skew part `(a - sigma(a))/2` under the matrix involution.
pub fn skew_part(a: &MatWeyl) -> MatWeyl {
    a.sub(&a.involution()).scale(&Rat::new(1, 2))
}

/// The symmetric part `(a + sigma(a))/2` under the matrix involution.
pub fn sym_part(a: &MatWeyl) -> MatWeyl {
    a.add(&a.involution()).scale(&Rat::new(1, 2))
}

/// Embed a size-1 conformal element diagonally into size `size`.
pub fn matrix_embed(a: &ConformalElement, size: usize) -> Result<ConformalElement> {
    if a.backend().size() != 1 {
        return Err(Error::DimensionMismatch(format!(
            "diagonal embedding starts from size 1, got {}",
            a.backend().size()
        )));
    }
    let backend = match a.backend() {
        Backend::CendWeyl { nvars, .. } => Backend::CendWeyl { nvars, size },
        Backend::CurPoly { nvars, .. } => Backend::CurPoly { nvars, size },
    };
    let coeffs = a.coeffs().map(|((g, b), m)| {
        let scalar = m.get(0, 0).clone();
        ((g.clone(), b.clone()), RatMatrix::identity(size).scale(&scalar))
    });
    ConformalElement::from_coeffs(backend, coeffs)
}

/// Extend an element over `r` variables to `n >= r` variables: the new map
/// sends `T^alpha` to `a(T^(alpha_1..alpha_r))` times the trailing factor
/// (`T_{r+1}^{a_{r+1}} ...` for the current target, the matching `q`
/// monomial for the Weyl target). On canonical coefficients this pads
/// `gamma` and `beta` with zeros.
pub fn extend_vars(a: &ConformalElement, nvars: usize) -> Result<ConformalElement> {
    let r = a.backend().nvars();
    if r > nvars {
        return Err(Error::VarMismatch {
            expected: r,
            found: nvars,
        });
    }
    let backend = match a.backend() {
        Backend::CendWeyl { size, .. } => Backend::CendWeyl { nvars, size },
        Backend::CurPoly { size, .. } => Backend::CurPoly { nvars, size },
    };
    let coeffs: Result<Vec<_>> = a
        .coeffs()
        .map(|((g, b), m)| {
            Ok((
                (g.extend_vars(nvars)?, b.extend_vars(nvars)?),
                m.clone(),
            ))
        })
        .collect();
    ConformalElement::from_coeffs(backend, coeffs?)
}

/// The derivation-valued basic map at `T^alpha`: the Weyl element
/// `p^alpha q_i`. Translation-invariant for the derivations `[q_j, .]`:
/// `[q_j, p^alpha q_i] = alpha_j p^(alpha - e_j) q_i`.
pub fn wn_basic_map(nvars: usize, i: usize, alpha: &MultiIndex) -> Result<WeylElement> {
    if i >= nvars {
        return Err(Error::IndexOutOfRange { index: i, nvars });
    }
    if alpha.nvars() != nvars {
        return Err(Error::VarMismatch {
            expected: nvars,
            found: alpha.nvars(),
        });
    }
    Ok(WeylElement::monomial(
        alpha.clone(),
        MultiIndex::unit(nvars, i)?,
        Rat::one(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: usize, i: usize) -> HPoly {
        HPoly::var(n, i).unwrap()
    }

    #[test]
    fn poisson_examples() {
        // {T1, T2} = 1 at n = 2
        assert_eq!(
            poisson_bracket(&t(2, 0), &t(2, 1)).unwrap(),
            HPoly::one(2)
        );
        // antisymmetry: {f, f} = 0
        let f = &(&t(2, 0) * &t(2, 0)) + &t(2, 1);
        assert!(poisson_bracket(&f, &f).unwrap().is_zero());
        // {T1^2, T2} = 2 T1
        let sq = &t(2, 0) * &t(2, 0);
        assert_eq!(
            poisson_bracket(&sq, &t(2, 1)).unwrap(),
            t(2, 0).scale(&Rat::from_int(2))
        );
        // odd variable count is rejected
        assert!(poisson_bracket(&t(3, 0), &t(3, 1)).is_err());
    }

    #[test]
    fn poisson_jacobi_small() {
        for f in MultiIndex::enumerate(2, 2) {
            for g in MultiIndex::enumerate(2, 2) {
                for h in MultiIndex::enumerate(2, 2) {
                    let f = HPoly::monomial(f.clone(), Rat::one());
                    let g = HPoly::monomial(g.clone(), Rat::one());
                    let h = HPoly::monomial(h.clone(), Rat::one());
                    let j1 = poisson_bracket(&poisson_bracket(&f, &g).unwrap(), &h).unwrap();
                    let j2 = poisson_bracket(&poisson_bracket(&g, &h).unwrap(), &f).unwrap();
                    let j3 = poisson_bracket(&poisson_bracket(&h, &f).unwrap(), &g).unwrap();
                    assert!((&(&j1 + &j2) + &j3).is_zero());
                }
            }
        }
    }

    #[test]
    fn derivation_bracket_examples() {
        // [d1, T1 d1] = d1 in one variable
        let d1 = PolyDerivation::coordinate(1, 0).unwrap();
        let td1 = PolyDerivation::new(vec![t(1, 0)]).unwrap();
        assert_eq!(d1.bracket(&td1).unwrap(), d1);
        // [D, D] = 0
        assert!(td1.bracket(&td1).unwrap().is_zero());
        // Leibniz on T1 * T2
        let d = PolyDerivation::new(vec![t(2, 1), t(2, 0)]).unwrap();
        let prod = &t(2, 0) * &t(2, 1);
        let lhs = d.apply(&prod).unwrap();
        let rhs = &(&d.apply(&t(2, 0)).unwrap() * &t(2, 1)) + &(&t(2, 0) * &d.apply(&t(2, 1)).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn divergence_examples() {
        // T2 d1 is divergence free
        let d = PolyDerivation::new(vec![t(2, 1), HPoly::zero(2)]).unwrap();
        assert!(d.is_divergence_free());
        // T1 d1 is not
        let d2 = PolyDerivation::new(vec![t(2, 0), HPoly::zero(2)]).unwrap();
        assert_eq!(d2.divergence(), HPoly::one(2));
        assert!(!d2.is_divergence_free());
        assert!(PolyDerivation::zero(2).is_divergence_free());
    }

    #[test]
    fn divergence_of_bracket_identity() {
        // div [D1, D2] = D1(div D2) - D2(div D1)
        let samples = [
            PolyDerivation::new(vec![&t(2, 0) * &t(2, 1), t(2, 0).pow(2)]).unwrap(),
            PolyDerivation::new(vec![t(2, 1), HPoly::zero(2)]).unwrap(),
            PolyDerivation::new(vec![t(2, 1).pow(2), &t(2, 0) + &t(2, 1)]).unwrap(),
        ];
        for d1 in &samples {
            for d2 in &samples {
                let lhs = d1.bracket(d2).unwrap().divergence();
                let rhs = &d1.apply(&d2.divergence()).unwrap() - &d2.apply(&d1.divergence()).unwrap();
                assert_eq!(lhs, rhs);
                // bracket of divergence-free stays divergence-free
                if d1.is_divergence_free() && d2.is_divergence_free() {
                    assert!(d1.bracket(d2).unwrap().is_divergence_free());
                }
            }
        }
    }

    #[test]
    fn symplectic_membership_examples() {
        // hamiltonian fields are symplectic
        for exp in MultiIndex::enumerate(2, 4) {
            let f = HPoly::monomial(exp, Rat::one());
            let d = hamiltonian_field(&f).unwrap();
            assert!(d.is_symplectic().unwrap());
        }
        // T1 d1 is not symplectic at n = 2: d(i_D s) = dT1 ^ dT2
        let d = PolyDerivation::new(vec![t(2, 0), HPoly::zero(2)]).unwrap();
        assert!(!d.is_symplectic().unwrap());
        let dd = d.symplectic_contraction().unwrap().exterior_d().unwrap();
        let mut expected = DifferentialForm::zero(2, 2);
        expected.insert(vec![0, 1], HPoly::one(2));
        assert_eq!(dd, expected);
        // zero derivation is symplectic
        assert!(PolyDerivation::zero(2).is_symplectic().unwrap());
    }

    #[test]
    fn hamiltonian_field_examples() {
        // f = T1 at n = 2 gives d/dT2
        assert_eq!(
            hamiltonian_field(&t(2, 0)).unwrap(),
            PolyDerivation::coordinate(2, 1).unwrap()
        );
        // constants give zero
        assert!(hamiltonian_field(&HPoly::one(2)).unwrap().is_zero());
        // f = T1 T2 gives T2 d2 - T1 d1
        let f = &t(2, 0) * &t(2, 1);
        let expected = PolyDerivation::new(vec![-&t(2, 0), t(2, 1)]).unwrap();
        assert_eq!(hamiltonian_field(&f).unwrap(), expected);
        // defining property: D_f(g) = {f, g}
        for fexp in MultiIndex::enumerate(2, 3) {
            let f = HPoly::monomial(fexp, Rat::one());
            let d = hamiltonian_field(&f).unwrap();
            for gexp in MultiIndex::enumerate(2, 3) {
                let g = HPoly::monomial(gexp, Rat::one());
                assert_eq!(d.apply(&g).unwrap(), poisson_bracket(&f, &g).unwrap());
            }
        }
    }

    #[test]
    fn poisson_homomorphism_examples() {
        assert!(poisson_homomorphism_holds(&t(2, 0), &t(2, 1)).unwrap());
        let f = &t(2, 0) * &t(2, 1);
        assert!(poisson_homomorphism_holds(&f, &f).unwrap());
        for fexp in MultiIndex::enumerate(2, 3) {
            for gexp in MultiIndex::enumerate(2, 3) {
                let f = HPoly::monomial(fexp.clone(), Rat::one());
                let g = HPoly::monomial(gexp, Rat::one());
                assert!(poisson_homomorphism_holds(&f, &g).unwrap());
            }
        }
    }

    #[test]
    fn exterior_square_vanishes() {
        // d(d(omega)) = 0 for 1-forms with coefficients of degree <= 3
        for i in 0..2usize {
            for exp in MultiIndex::enumerate(2, 3) {
                let mut omega = DifferentialForm::zero(2, 1);
                omega.insert(vec![i], HPoly::monomial(exp.clone(), Rat::new(2, 3)));
                assert!(omega.exterior_d().unwrap().exterior_d().unwrap().is_zero());
            }
        }
    }

    #[test]
    fn skew_sym_split() {
        let n = 1;
        let p1 = WeylElement::p_var(n, 0).unwrap();
        let a = MatWeyl::weyl_scalar(&p1, 2);
        // sigma(p1) = -p1, so p1 I is already skew
        assert_eq!(skew_part(&a), a);
        assert!(sym_part(&a).is_zero());
        // skew + sym = a on a generic element
        let b = MatWeyl::from_fn(2, |i, j| {
            if i == 0 && j == 1 {
                &p1 * &WeylElement::q_var(n, 0).unwrap()
            } else {
                WeylElement::zero(n)
            }
        });
        assert_eq!(skew_part(&b).add(&sym_part(&b)), b);
        // sigma fixes sym and negates skew
        assert_eq!(sym_part(&b).involution(), sym_part(&b));
        assert_eq!(skew_part(&b).involution(), skew_part(&b).neg());
        // commutator of skew parts is skew; jordan product of sym parts is sym
        let s1 = skew_part(&b);
        let s2 = skew_part(&a);
        let br = s1.commutator(&s2).unwrap();
        assert_eq!(skew_part(&br), br);
        let y1 = sym_part(&b);
        let y2 = sym_part(&MatWeyl::weyl_scalar(&WeylElement::q_var(n, 0).unwrap(), 2));
        let jp = y1.jordan(&y2).unwrap();
        assert_eq!(sym_part(&jp), jp);
    }

    #[test]
    fn matrix_embed_example() {
        let backend = Backend::CendWeyl { nvars: 1, size: 1 };
        let a1 = ConformalElement::basic_scalar(backend, &HPoly::one(1)).unwrap();
        let emb = matrix_embed(&a1, 2).unwrap();
        assert_eq!(emb.backend().size(), 2);
        // evaluation scales the identity matrix
        let v = emb.eval(&HPoly::var(1, 0).unwrap()).unwrap();
        let q = WeylElement::q_var(1, 0).unwrap();
        assert_eq!(v.as_weyl().unwrap(), &MatWeyl::weyl_scalar(&q, 2));
        // only size-1 elements embed
        assert!(matrix_embed(&emb, 4).is_err());
    }

    #[test]
    fn extend_vars_examples() {
        // current backend: a' (T1 T2) = a(T1) * T2
        let b = Backend::CurPoly { nvars: 1, size: 1 };
        let a1 = ConformalElement::basic(b, MultiIndex::zero(1), RatMatrix::identity(1)).unwrap();
        let ext = extend_vars(&a1, 2).unwrap();
        let t1t2 = HPoly::from_terms(
            2,
            vec![(MultiIndex::new(vec![1, 1]), Rat::one())],
        );
        let got = ext.eval(&t1t2).unwrap();
        let expected = a1
            .eval(&HPoly::var(1, 0).unwrap())
            .unwrap()
            .as_cur()
            .unwrap()
            .extend_poly_vars(2)
            .unwrap()
            .mul(&crate::weyl::MatPoly::from_scaled_poly(
                &RatMatrix::identity(1),
                &HPoly::var(2, 1).unwrap(),
            ));
        assert_eq!(got.as_cur().unwrap(), &expected);

        // Weyl backend: the extra variables arrive as new q's, and the
        // extension stays translation-invariant (round trip through the
        // evaluation table certifies canonicity)
        let bw = Backend::CendWeyl { nvars: 1, size: 1 };
        let ap = ConformalElement::basic_scalar(bw, &HPoly::var(1, 0).unwrap()).unwrap();
        let ta = ap.t_action(0).unwrap();
        let ext2 = extend_vars(&ta, 2).unwrap();
        let table = ext2.eval_table(ext2.deg_t() + 1);
        assert_eq!(crate::confalg::reconstruct(&table).unwrap(), ext2);
        let alpha = MultiIndex::new(vec![1, 2]);
        let got2 = ext2.eval(&HPoly::monomial(alpha, Rat::one())).unwrap();
        // a'(T1 T2^2) = a(T1) q2^2 with a = T.a_p over one variable
        let base = ta
            .eval(&HPoly::var(1, 0).unwrap())
            .unwrap()
            .as_weyl()
            .unwrap()
            .extend_weyl_vars(2)
            .unwrap();
        let q2sq = WeylElement::monomial(
            MultiIndex::zero(2),
            MultiIndex::new(vec![0, 2]),
            Rat::one(),
        );
        let expected2 = base.mul(&MatWeyl::weyl_scalar(&q2sq, 1));
        assert_eq!(got2.as_weyl().unwrap(), &expected2);

        // identity case r = n
        assert_eq!(extend_vars(&ta, 1).unwrap(), ta);
        // r > n rejected
        assert!(extend_vars(&ext2, 1).is_err());
    }

    #[test]
    fn wn_basic_map_examples() {
        // one variable: alpha = (1) gives p q
        let w = wn_basic_map(1, 0, &MultiIndex::new(vec![1])).unwrap();
        let p = WeylElement::p_var(1, 0).unwrap();
        let q = WeylElement::q_var(1, 0).unwrap();
        assert_eq!(w, &p * &q);
        // alpha = 0 gives q_i
        assert_eq!(wn_basic_map(2, 1, &MultiIndex::zero(2)).unwrap(), WeylElement::q_var(2, 1).unwrap());
        // translation invariance for the [q_j, .] derivations:
        // [q_j, p^alpha q_i] = alpha_j p^(alpha - e_j) q_i
        let alpha = MultiIndex::new(vec![2]);
        let w2 = wn_basic_map(1, 0, &alpha).unwrap();
        let lhs = q.commutator(&w2).unwrap();
        let rhs = wn_basic_map(1, 0, &MultiIndex::new(vec![1]))
            .unwrap()
            .scale(&Rat::from_int(2));
        assert_eq!(lhs, rhs);
        assert!(wn_basic_map(1, 1, &MultiIndex::new(vec![1])).is_err());
    }

    #[test]
    fn weyl_encoding_roundtrip() {
        let d = PolyDerivation::new(vec![&t(2, 0) * &t(2, 1), t(2, 0).pow(2)]).unwrap();
        let w = d.to_weyl();
        assert_eq!(PolyDerivation::from_weyl(&w).unwrap(), d);
        // a pure p-polynomial is not a derivation encoding
        let bad = WeylElement::p_var(2, 0).unwrap();
        assert!(PolyDerivation::from_weyl(&bad).is_err());
    }

    #[test]
    fn display_forms() {
        let d = PolyDerivation::new(vec![-&t(2, 1), t(2, 0)]).unwrap();
        assert_eq!(d.to_string(), "-T2*d1 + T1*d2");
        let mut omega = DifferentialForm::zero(2, 2);
        omega.insert(vec![1, 0], HPoly::one(2));
        assert_eq!(omega.to_string(), "-dT1^dT2");
    }
}
