//! Matrices over the Weyl algebra and over `H`, vectors in `H (x) k^N`,
//! and the left-ideal constructor.

use super::WeylElement;
use crate::error::{Error, Result};
use crate::hopf::HPoly;
use crate::multiindex::{Degree, MultiIndex};
use crate::ring::{RatMatrix, Ring, SquareMatrix};
use crate::scalar::Rat;
use std::collections::BTreeMap;
use std::fmt;

/// `M_N(A_n)`: square matrix over the Weyl algebra.
pub type MatWeyl = SquareMatrix<WeylElement>;

/// `M_N(H)`: square matrix over the polynomial algebra. Also used for
/// matrices over `k[p_1..p_n]` (same data, `p` interpretation).
pub type MatPoly = SquareMatrix<HPoly>;

/// Element of the module `M = H (x) k^N`: a column of polynomials.
#[derive(Clone, PartialEq, Eq)]
pub struct HVector {
    entries: Vec<HPoly>,
}

impl HVector {
    pub fn new(entries: Vec<HPoly>) -> Self {
        assert!(!entries.is_empty());
        let n = entries[0].nvars();
        assert!(entries.iter().all(|e| e.nvars() == n), "variable count mismatch");
        HVector { entries }
    }

    pub fn zero(nvars: usize, size: usize) -> Self {
        HVector {
            entries: vec![HPoly::zero(nvars); size],
        }
    }

    /// Basis vector `T^alpha e_j`.
    pub fn basis(alpha: MultiIndex, size: usize, j: usize) -> Self {
        assert!(j < size);
        let nvars = alpha.nvars();
        let mut v = Self::zero(nvars, size);
        v.entries[j] = HPoly::monomial(alpha, Rat::one());
        v
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn nvars(&self) -> usize {
        self.entries[0].nvars()
    }

    pub fn get(&self, i: usize) -> &HPoly {
        &self.entries[i]
    }

    pub fn entries(&self) -> &[HPoly] {
        &self.entries
    }
}

impl fmt::Display for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for HVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl SquareMatrix<WeylElement> {
    /// Identity of `M_N(A_n)`.
    pub fn weyl_identity(nvars: usize, size: usize) -> Self {
        Self::identity_matrix(size, &WeylElement::zero(nvars))
    }

    /// `c (x) w`: scalar matrix times a Weyl element.
    pub fn from_scaled_weyl(c: &RatMatrix, w: &WeylElement) -> Self {
        c.map(|r| w.scale(r))
    }

    /// Scalar element on the diagonal.
    pub fn weyl_scalar(w: &WeylElement, size: usize) -> Self {
        Self::from_fn(size, |i, j| {
            if i == j {
                w.clone()
            } else {
                WeylElement::zero(w.nvars())
            }
        })
    }

    pub fn weyl_nvars(&self) -> usize {
        self.get(0, 0).nvars()
    }

    /// The canonical action on `H (x) k^N`.
    pub fn act(&self, v: &HVector) -> Result<HVector> {
        if v.size() != self.size() {
            return Err(Error::DimensionMismatch(format!(
                "matrix size {} vs vector size {}",
                self.size(),
                v.size()
            )));
        }
        if v.nvars() != self.weyl_nvars() {
            return Err(Error::VarMismatch {
                expected: self.weyl_nvars(),
                found: v.nvars(),
            });
        }
        let mut out = Vec::with_capacity(self.size());
        for i in 0..self.size() {
            let mut acc = HPoly::zero(v.nvars());
            for j in 0..self.size() {
                let e = self.get(i, j);
                if !e.is_zero() {
                    acc = &acc + &e.act(v.get(j))?;
                }
            }
            out.push(acc);
        }
        Ok(HVector::new(out))
    }

    /// Entrywise derivation `[., p_i]`.
    pub fn derivation(&self, i: usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(self.size() * self.size());
        for e in self.entries() {
            entries.push(e.derivation(i)?);
        }
        Ok(Self::from_entries(self.size(), entries))
    }

    /// Minimum q-adic degree over the entries.
    pub fn q_adic_degree(&self) -> Degree {
        self.entries()
            .iter()
            .map(WeylElement::q_adic_degree)
            .min()
            .unwrap_or(Degree::Infinite)
    }

    /// The involution: entrywise `p -> -p, q -> q` anti-automorphism
    /// composed with matrix transpose. Commutes with every derivation and
    /// preserves the top q-degree (normal ordering can lower the q-adic
    /// valuation of individual elements).
    pub fn involution(&self) -> Self {
        self.map(WeylElement::involution).transpose()
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        if self.size() != rhs.size() {
            return Err(Error::DimensionMismatch(format!(
                "matrix sizes {} vs {}",
                self.size(),
                rhs.size()
            )));
        }
        Ok(self.mul(rhs))
    }

    /// Commutator `[a, b] = ab - ba`.
    pub fn commutator(&self, rhs: &Self) -> Result<Self> {
        Ok(self.try_mul(rhs)?.sub(&rhs.try_mul(self)?))
    }

    /// Jordan product `a o b = (ab + ba)/2`.
    pub fn jordan(&self, rhs: &Self) -> Result<Self> {
        Ok(self
            .try_mul(rhs)?
            .add(&rhs.try_mul(self)?)
            .scale(&Rat::new(1, 2)))
    }

    /// Decompose the q-free part as `sum_beta p^beta (x) C_beta` with
    /// rational matrices `C_beta`.
    pub fn q_free_decomposition(&self) -> BTreeMap<MultiIndex, RatMatrix> {
        let mut out: BTreeMap<MultiIndex, RatMatrix> = BTreeMap::new();
        let size = self.size();
        for i in 0..size {
            for j in 0..size {
                for (beta, c) in self.get(i, j).q_free_p_poly().terms() {
                    let m = out
                        .entry(beta.clone())
                        .or_insert_with(|| RatMatrix::zeros(size));
                    m.set(i, j, &m.get(i, j).clone() + c);
                }
            }
        }
        out.retain(|_, m| !m.is_zero());
        out
    }

    /// Reinterpret over a larger variable count.
    pub fn extend_weyl_vars(&self, nvars: usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(self.size() * self.size());
        for e in self.entries() {
            entries.push(e.extend_vars(nvars)?);
        }
        Ok(Self::from_entries(self.size(), entries))
    }
}

impl SquareMatrix<HPoly> {
    pub fn poly_identity(nvars: usize, size: usize) -> Self {
        Self::identity_matrix(size, &HPoly::zero(nvars))
    }

    /// `c (x) f`: scalar matrix times a polynomial.
    pub fn from_scaled_poly(c: &RatMatrix, f: &HPoly) -> Self {
        c.map(|r| f.scale(r))
    }

    pub fn poly_nvars(&self) -> usize {
        self.get(0, 0).nvars()
    }

    /// Interpret the entries as polynomials in `p` and inject into `M_N(A_n)`.
    pub fn to_weyl_p(&self) -> MatWeyl {
        self.map(WeylElement::from_p_poly)
    }

    /// The degree-zero part of every entry, as a rational matrix.
    pub fn constant_part(&self) -> RatMatrix {
        self.map(|e| e.counit())
    }

    /// Whether every entry is a constant.
    pub fn is_constant(&self) -> bool {
        self.entries().iter().all(|e| e.max_total_degree() == 0)
    }

    pub fn extend_poly_vars(&self, nvars: usize) -> Result<Self> {
        let mut entries = Vec::with_capacity(self.size() * self.size());
        for e in self.entries() {
            entries.push(e.extend_vars(nvars)?);
        }
        Ok(Self::from_entries(self.size(), entries))
    }
}

/// `m Q(p)`: an element of the left ideal `A_{n,N,Q} = M_N(A_n) Q(p_1..p_n)`.
/// The ideal property (closure under left multiplication and under every
/// derivation) is a checked property of the construction, not an enforced
/// invariant per element.
pub fn ideal_element(m: &MatWeyl, q: &MatPoly) -> Result<MatWeyl> {
    if m.size() != q.size() {
        return Err(Error::DimensionMismatch(format!(
            "matrix sizes {} vs {}",
            m.size(),
            q.size()
        )));
    }
    Ok(m.mul(&q.to_weyl_p()))
}
