//! Abstract ring interface and square matrices over it.
//!
//! The trait is deliberately small: it is what formal distributions and
//! matrix containers need from their coefficients. Constructors are
//! "like"-shaped (`zero_like`, `one_like`) because several implementors
//! carry a variable count that a bare `zero()` could not know.

use crate::scalar::Rat;
use std::fmt;

/// Associative ring operations over exact rational scalars.
///
/// Implementations panic on structural mismatch (different variable counts
/// or matrix sizes); mixing shapes is a caller bug, not a data condition.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    /// Scalar multiple `c * self`.
    fn scale(&self, c: &Rat) -> Self;

    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
}

impl Ring for Rat {
    fn zero_like(&self) -> Self {
        Rat::zero()
    }
    fn one_like(&self) -> Self {
        Rat::one()
    }
    fn is_zero(&self) -> bool {
        Rat::is_zero(self)
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
        self * c
    }
}

/// Dense square matrix over a ring, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct SquareMatrix<T> {
    size: usize,
    entries: Vec<T>,
}

pub type RatMatrix = SquareMatrix<Rat>;

impl<T: Ring> SquareMatrix<T> {
    pub fn from_entries(size: usize, entries: Vec<T>) -> Self {
        assert_eq!(entries.len(), size * size, "entry count != size^2");
        SquareMatrix { size, entries }
    }

    pub fn from_fn(size: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(size * size);
        for i in 0..size {
            for j in 0..size {
                entries.push(f(i, j));
            }
        }
        SquareMatrix { size, entries }
    }

    /// Matrix of zeros with the shape of `proto` in every entry.
    pub fn zero_matrix(size: usize, proto: &T) -> Self {
        Self::from_fn(size, |_, _| proto.zero_like())
    }

    /// Identity matrix with entry shapes taken from `proto`.
    pub fn identity_matrix(size: usize, proto: &T) -> Self {
        Self::from_fn(size, |i, j| {
            if i == j {
                proto.one_like()
            } else {
                proto.zero_like()
            }
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.size + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.size + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> SquareMatrix<U> {
        SquareMatrix {
            size: self.size,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.size, |i, j| self.get(j, i).clone())
    }
}

impl<T: Ring> Ring for SquareMatrix<T> {
    fn zero_like(&self) -> Self {
        Self::zero_matrix(self.size, &self.entries[0])
    }

    fn one_like(&self) -> Self {
        Self::identity_matrix(self.size, &self.entries[0])
    }

    fn is_zero(&self) -> bool {
        self.entries.iter().all(Ring::is_zero)
    }

    fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.size, rhs.size, "matrix size mismatch");
        SquareMatrix {
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    fn neg(&self) -> Self {
        self.map(Ring::neg)
    }

    fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.size, rhs.size, "matrix size mismatch");
        Self::from_fn(self.size, |i, j| {
            let mut acc = self.entries[0].zero_like();
            for k in 0..self.size {
                acc = acc.add(&self.get(i, k).mul(rhs.get(k, j)));
            }
            acc
        })
    }

    fn scale(&self, c: &Rat) -> Self {
        self.map(|e| e.scale(c))
    }
}

impl RatMatrix {
    pub fn zeros(size: usize) -> Self {
        Self::zero_matrix(size, &Rat::zero())
    }

    pub fn identity(size: usize) -> Self {
        Self::identity_matrix(size, &Rat::zero())
    }

    /// Matrix unit `E_ij`.
    pub fn unit(size: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(size);
        m.set(i, j, Rat::one());
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>) -> Self {
        let size = rows.len();
        assert!(rows.iter().all(|r| r.len() == size), "ragged matrix");
        SquareMatrix {
            size,
            entries: rows.into_iter().flatten().collect(),
        }
    }
}

impl<T: Ring> fmt::Display for SquareMatrix<T> {
    /// Row-major bracket form: `[[a, b], [c, d]]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.size {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.size {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T: Ring> fmt::Debug for SquareMatrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
