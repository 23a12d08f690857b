//! Multi-indices: exponent vectors of a fixed number of variables.

use crate::error::{Error, Result};
use crate::scalar::Rat;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Exponent vector `(a_1, ..., a_n)` of a monomial in `n` variables.
///
/// Ordered by graded lexicographic order (total degree first, then
/// lexicographic), so sorted maps over `MultiIndex` iterate in the
/// canonical term order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u32>);

impl MultiIndex {
    pub fn new(entries: Vec<u32>) -> Self {
        MultiIndex(entries)
    }

    pub fn zero(nvars: usize) -> Self {
        MultiIndex(vec![0; nvars])
    }

    /// The unit vector `e_i` (zero-based variable index).
    pub fn unit(nvars: usize, i: usize) -> Result<Self> {
        if i >= nvars {
            return Err(Error::IndexOutOfRange { index: i, nvars });
        }
        let mut e = vec![0; nvars];
        e[i] = 1;
        Ok(MultiIndex(e))
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Componentwise `self <= other`.
    pub fn leq(&self, other: &MultiIndex) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        assert_eq!(self.0.len(), other.0.len(), "multi-index length mismatch");
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference; `None` unless `other <= self`.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        if !other.leq(self) {
            return None;
        }
        Some(MultiIndex(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn with_entry(&self, i: usize, v: u32) -> MultiIndex {
        let mut e = self.0.clone();
        e[i] = v;
        MultiIndex(e)
    }

    /// `a! = prod_i a_i!`.
    pub fn factorial(&self) -> BigInt {
        self.0.iter().map(|&e| int_factorial(e)).product()
    }

    /// Falling factorial `(a)_k = prod_i a_i! / (a_i - k_i)!`; zero when
    /// `k` is not componentwise below `a`.
    pub fn falling_factorial(&self, k: &MultiIndex) -> BigInt {
        if !k.leq(self) {
            return BigInt::zero();
        }
        let mut acc = BigInt::one();
        for (&a, &b) in self.0.iter().zip(&k.0) {
            for j in (a - b + 1)..=a {
                acc *= BigInt::from(j);
            }
        }
        acc
    }

    /// Multinomial binomial `C(a, k) = prod_i C(a_i, k_i)`; zero when
    /// `k` is not componentwise below `a`.
    pub fn binomial(&self, k: &MultiIndex) -> BigInt {
        if !k.leq(self) {
            return BigInt::zero();
        }
        self.falling_factorial(k) / k.factorial()
    }

    pub fn falling_factorial_rat(&self, k: &MultiIndex) -> Rat {
        Rat::from_bigint(self.falling_factorial(k))
    }

    pub fn binomial_rat(&self, k: &MultiIndex) -> Rat {
        Rat::from_bigint(self.binomial(k))
    }

    pub fn factorial_rat(&self) -> Rat {
        Rat::from_bigint(self.factorial())
    }

    /// Pad with trailing zero exponents up to `nvars` variables.
    pub fn extend_vars(&self, nvars: usize) -> Result<MultiIndex> {
        if nvars < self.0.len() {
            return Err(Error::VarMismatch {
                expected: self.0.len(),
                found: nvars,
            });
        }
        let mut e = self.0.clone();
        e.resize(nvars, 0);
        Ok(MultiIndex(e))
    }

    /// All multi-indices over `nvars` variables with total degree at most
    /// `max_total`, in graded-lex order.
    pub fn enumerate(nvars: usize, max_total: u64) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        for d in 0..=max_total {
            Self::enumerate_degree_into(nvars, d, &mut out);
        }
        out
    }

    /// All multi-indices over `nvars` variables with total degree exactly `d`.
    pub fn enumerate_degree(nvars: usize, d: u64) -> Vec<MultiIndex> {
        let mut out = Vec::new();
        Self::enumerate_degree_into(nvars, d, &mut out);
        out
    }

    fn enumerate_degree_into(nvars: usize, d: u64, out: &mut Vec<MultiIndex>) {
        fn rec(prefix: &mut Vec<u32>, remaining: u64, slots: usize, out: &mut Vec<Vec<u32>>) {
            if slots == 1 {
                let mut v = prefix.clone();
                v.push(remaining as u32);
                out.push(v);
                return;
            }
            for e in (0..=remaining).rev() {
                prefix.push(e as u32);
                rec(prefix, remaining - e, slots - 1, out);
                prefix.pop();
            }
        }
        if nvars == 0 {
            if d == 0 {
                out.push(MultiIndex(vec![]));
            }
            return;
        }
        let mut raw = Vec::new();
        rec(&mut Vec::new(), d, nvars, &mut raw);
        let mut indices: Vec<MultiIndex> = raw.into_iter().map(MultiIndex).collect();
        indices.sort();
        out.extend(indices);
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiIndex {
    /// Graded lexicographic: compare total degree first, then entries
    /// left to right.
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn int_factorial(k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for j in 2..=k {
        acc *= BigInt::from(j);
    }
    acc
}

/// Degree of a filtration member: finite, or `+inf` for the zero element.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Degree {
    Finite(u64),
    Infinite,
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Finite(d) => write!(f, "{d}"),
            Degree::Infinite => write!(f, "+inf"),
        }
    }
}
