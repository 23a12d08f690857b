//! Partition and symmetric-group combinatorics for operad composition.
//!
//! An n-partition of m is an n-tuple of positive parts summing to m, read
//! as a surjection `{1..m} -> {1..n}` in block order; parts are not assumed
//! sorted. Positions `k` and pairs `(i, j)` are 1-based throughout, matching
//! one-line permutation notation.

mod tree;
pub mod verify;

pub use tree::{OperadElt, TreeWord, Variety};

use crate::error::{Error, Result};
use std::fmt;

/// An n-partition `(m_1, ..., m_n)` of `m = sum m_i`, all parts positive.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() || parts.iter().any(|&p| p == 0) {
            return Err(Error::Invalid(
                "partition parts must be positive and nonempty".into(),
            ));
        }
        Ok(Partition { parts })
    }

    /// The identity partition `(1, ..., 1)` of `n`.
    pub fn identity(n: usize) -> Self {
        Partition { parts: vec![1; n] }
    }

    /// The trivial partition `(m)`.
    pub fn trivial(m: usize) -> Result<Self> {
        Self::new(vec![m])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The pair `(i, j)` with `k` the j-th element of block `i` (1-based).
    pub fn index_to_pair(&self, k: usize) -> Result<(usize, usize)> {
        if k == 0 || k > self.total() {
            return Err(Error::IndexOutOfRange {
                index: k,
                nvars: self.total(),
            });
        }
        let mut offset = 0;
        for (i, &m) in self.parts.iter().enumerate() {
            if k <= offset + m {
                return Ok((i + 1, k - offset));
            }
            offset += m;
        }
        unreachable!("k bounded by total")
    }

    /// Inverse of [`Partition::index_to_pair`].
    pub fn pair_to_index(&self, i: usize, j: usize) -> Result<usize> {
        if i == 0 || i > self.parts.len() {
            return Err(Error::IndexOutOfRange {
                index: i,
                nvars: self.parts.len(),
            });
        }
        if j == 0 || j > self.parts[i - 1] {
            return Err(Error::IndexOutOfRange {
                index: j,
                nvars: self.parts[i - 1],
            });
        }
        Ok(self.parts[..i - 1].iter().sum::<usize>() + j)
    }

    /// The action `sigma pi = (m_{sigma^{-1}(1)}, ..., m_{sigma^{-1}(n)})`.
    pub fn permuted(&self, sigma: &Perm) -> Result<Partition> {
        if sigma.degree() != self.parts.len() {
            return Err(Error::ArityMismatch(format!(
                "permutation degree {} vs partition length {}",
                sigma.degree(),
                self.parts.len()
            )));
        }
        let inv = sigma.inverse();
        Ok(Partition {
            parts: (1..=self.parts.len())
                .map(|i| self.parts[inv.apply(i) - 1])
                .collect(),
        })
    }

    /// Regroup: for `self` an n-partition of `m` and `tau` an m-partition of
    /// `p`, the n-partition of `p` whose i-th part sums the tau-parts in
    /// block i.
    pub fn compose(&self, tau: &Partition) -> Result<Partition> {
        if tau.parts.len() != self.total() {
            return Err(Error::ArityMismatch(format!(
                "inner partition has {} parts, outer total is {}",
                tau.parts.len(),
                self.total()
            )));
        }
        let mut out = Vec::with_capacity(self.parts.len());
        let mut offset = 0;
        for &m in &self.parts {
            out.push(tau.parts[offset..offset + m].iter().sum());
            offset += m;
        }
        Ok(Partition { parts: out })
    }

    /// Split `tau` (an m-partition of p) into the sub-partitions lying over
    /// each block of `self`.
    pub fn split(&self, tau: &Partition) -> Result<Vec<Partition>> {
        if tau.parts.len() != self.total() {
            return Err(Error::ArityMismatch(format!(
                "inner partition has {} parts, outer total is {}",
                tau.parts.len(),
                self.total()
            )));
        }
        let mut out = Vec::with_capacity(self.parts.len());
        let mut offset = 0;
        for &m in &self.parts {
            out.push(Partition {
                parts: tau.parts[offset..offset + m].to_vec(),
            });
            offset += m;
        }
        Ok(out)
    }

    /// All n-partitions of m.
    pub fn enumerate(m: usize, n: usize) -> Vec<Partition> {
        let mut out = Vec::new();
        fn rec(remaining: usize, slots: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if slots == 1 {
                if remaining >= 1 {
                    let mut parts = prefix.clone();
                    parts.push(remaining);
                    out.push(Partition { parts });
                }
                return;
            }
            for p in 1..=remaining.saturating_sub(slots - 1) {
                prefix.push(p);
                rec(remaining - p, slots - 1, prefix, out);
                prefix.pop();
            }
        }
        if n >= 1 && m >= n {
            rec(m, n, &mut Vec::new(), &mut out);
        }
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// A permutation of `{1..n}` in one-line notation: `images[k-1] = sigma(k)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::Invalid(format!(
                    "not a bijection of 1..{n}: {images:?}"
                )));
            }
            seen[v - 1] = true;
        }
        Ok(Perm { images })
    }

    pub fn identity(n: usize) -> Self {
        Perm {
            images: (1..=n).collect(),
        }
    }

    /// The transposition `(i j)` in `S_n` (1-based).
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::IndexOutOfRange {
                index: i.max(j),
                nvars: n,
            });
        }
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(i - 1, j - 1);
        Ok(Perm { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `sigma(k)`, 1-based.
    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1]
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.images.len()];
        for (k, &v) in self.images.iter().enumerate() {
            images[v - 1] = k + 1;
        }
        Perm { images }
    }

    /// Composition `(self * rhs)(k) = self(rhs(k))`.
    pub fn compose(&self, rhs: &Perm) -> Result<Perm> {
        if self.degree() != rhs.degree() {
            return Err(Error::ArityMismatch(format!(
                "permutation degrees {} vs {}",
                self.degree(),
                rhs.degree()
            )));
        }
        Ok(Perm {
            images: (1..=rhs.degree()).map(|k| self.apply(rhs.apply(k))).collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, &v)| v == k + 1)
    }

    /// All of `S_n` in lexicographic one-line order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut current: Vec<usize> = (1..=n).collect();
        fn rec(current: &mut Vec<usize>, k: usize, out: &mut Vec<Perm>) {
            if k == current.len() {
                out.push(Perm {
                    images: current.clone(),
                });
                return;
            }
            for i in k..current.len() {
                current.swap(k, i);
                rec(current, k + 1, out);
                current.swap(k, i);
            }
        }
        rec(&mut current, 0, &mut out);
        out.sort();
        out
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.images.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// The block composition `sigma^pi(tau_1, ..., tau_n)` in `S_m`: the image
/// of `k <-> (i, j)` under `pi` is `(sigma(i), tau_i(j))` under `sigma pi`.
pub fn block_composition(sigma: &Perm, pi: &Partition, taus: &[Perm]) -> Result<Perm> {
    if sigma.degree() != pi.len() {
        return Err(Error::ArityMismatch(format!(
            "sigma degree {} vs partition length {}",
            sigma.degree(),
            pi.len()
        )));
    }
    if taus.len() != pi.len() {
        return Err(Error::ArityMismatch(format!(
            "got {} inner permutations for {} blocks",
            taus.len(),
            pi.len()
        )));
    }
    for (t, &m) in taus.iter().zip(pi.parts()) {
        if t.degree() != m {
            return Err(Error::ArityMismatch(format!(
                "inner permutation degree {} vs block size {m}",
                t.degree()
            )));
        }
    }
    let sigma_pi = pi.permuted(sigma)?;
    let m = pi.total();
    let mut images = Vec::with_capacity(m);
    for k in 1..=m {
        let (i, j) = pi.index_to_pair(k)?;
        images.push(sigma_pi.pair_to_index(sigma.apply(i), taus[i - 1].apply(j))?);
    }
    Perm::new(images)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_pair_examples() {
        // pi = (2,1): blocks {1,2},{3}, so 3 <-> (2,1)
        let pi = Partition::new(vec![2, 1]).unwrap();
        assert_eq!(pi.index_to_pair(3).unwrap(), (2, 1));
        assert_eq!(pi.pair_to_index(2, 1).unwrap(), 3);
        // identity partition: k <-> (k, 1)
        let id = Partition::identity(4);
        for k in 1..=4 {
            assert_eq!(id.index_to_pair(k).unwrap(), (k, 1));
        }
        // trivial partition: k <-> (1, k)
        let eps = Partition::trivial(5).unwrap();
        for k in 1..=5 {
            assert_eq!(eps.index_to_pair(k).unwrap(), (1, k));
        }
        assert!(pi.index_to_pair(0).is_err());
        assert!(pi.index_to_pair(4).is_err());
        assert!(pi.pair_to_index(3, 1).is_err());
        assert!(pi.pair_to_index(1, 3).is_err());
    }

    #[test]
    fn index_pair_mutually_inverse() {
        for m in 1..=8usize {
            for n in 1..=m {
                for pi in Partition::enumerate(m, n) {
                    for k in 1..=m {
                        let (i, j) = pi.index_to_pair(k).unwrap();
                        assert_eq!(pi.pair_to_index(i, j).unwrap(), k);
                    }
                }
            }
        }
    }

    #[test]
    fn partition_action_examples() {
        let pi = Partition::new(vec![2, 1]).unwrap();
        let swap = Perm::transposition(2, 1, 2).unwrap();
        assert_eq!(pi.permuted(&swap).unwrap(), Partition::new(vec![1, 2]).unwrap());
        assert_eq!(pi.permuted(&Perm::identity(2)).unwrap(), pi);
    }

    #[test]
    fn partition_action_is_left_action() {
        // (sigma tau) pi = sigma (tau pi) for all of S_3 on partitions of m <= 6
        for m in 3..=6usize {
            for pi in Partition::enumerate(m, 3) {
                for sigma in Perm::all(3) {
                    for tau in Perm::all(3) {
                        let st = sigma.compose(&tau).unwrap();
                        let lhs = pi.permuted(&st).unwrap();
                        let rhs = pi.permuted(&tau).unwrap().permuted(&sigma).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn block_composition_examples() {
        // all identities compose to the identity
        let pi = Partition::new(vec![2, 2]).unwrap();
        let got = block_composition(
            &Perm::identity(2),
            &pi,
            &[Perm::identity(2), Perm::identity(2)],
        )
        .unwrap();
        assert!(got.is_identity());

        // sigma = (1 2), pi = (2,1), identities inside: the 3-cycle 1->2->3->1
        let pi = Partition::new(vec![2, 1]).unwrap();
        let sigma = Perm::transposition(2, 1, 2).unwrap();
        let got = block_composition(&sigma, &pi, &[Perm::identity(2), Perm::identity(1)]).unwrap();
        assert_eq!(got, Perm::new(vec![2, 3, 1]).unwrap());

        // sigma = id gives the block-diagonal permutation
        let tau1 = Perm::new(vec![2, 1]).unwrap();
        let tau2 = Perm::new(vec![1, 3, 2]).unwrap();
        let pi2 = Partition::new(vec![2, 3]).unwrap();
        let got = block_composition(&Perm::identity(2), &pi2, &[tau1, tau2]).unwrap();
        assert_eq!(got, Perm::new(vec![2, 1, 3, 5, 4]).unwrap());
    }

    #[test]
    fn block_composition_bijective_exhaustive() {
        // result is a genuine permutation for every small instance
        for m in 2..=6usize {
            for n in 1..=m.min(3) {
                for pi in Partition::enumerate(m, n) {
                    for sigma in Perm::all(n) {
                        // vary one inner permutation per block cycle
                        let taus: Vec<Perm> = pi
                            .parts()
                            .iter()
                            .map(|&mi| {
                                if mi >= 2 {
                                    Perm::transposition(mi, 1, mi).unwrap()
                                } else {
                                    Perm::identity(mi)
                                }
                            })
                            .collect();
                        // Perm::new validates bijectivity internally
                        let _ = block_composition(&sigma, &pi, &taus).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn partition_compose_examples() {
        // (2,1) o (1,2,1) = (3,1)
        let pi = Partition::new(vec![2, 1]).unwrap();
        let tau = Partition::new(vec![1, 2, 1]).unwrap();
        assert_eq!(pi.compose(&tau).unwrap(), Partition::new(vec![3, 1]).unwrap());
        // identity outer partition regroups into tau itself
        let id = Partition::identity(3);
        assert_eq!(id.compose(&tau).unwrap(), tau);
        // trivial outer partition collapses to (p)
        let eps = Partition::trivial(3).unwrap();
        assert_eq!(eps.compose(&tau).unwrap(), Partition::trivial(4).unwrap());
        // arity mismatch
        let bad = Partition::new(vec![1, 1]).unwrap();
        assert!(pi.compose(&bad).is_err());
    }

    #[test]
    fn perm_convention() {
        let sigma = Perm::new(vec![2, 3, 1]).unwrap();
        assert_eq!(sigma.apply(1), 2);
        assert_eq!(sigma.inverse().apply(2), 1);
        assert_eq!(sigma.compose(&sigma.inverse()).unwrap(), Perm::identity(3));
        assert_eq!(Perm::all(3).len(), 6);
        assert!(Perm::new(vec![1, 1]).is_err());
        assert_eq!(sigma.to_string(), "[2,3,1]");
    }
}
