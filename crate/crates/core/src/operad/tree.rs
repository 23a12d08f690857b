//! Multilinear non-associative words and the free operads they span.
//!
//! `C_free(n)` is spanned by full binary trees whose leaves carry the
//! variables `1..n` exactly once; `C_assoc(n)` flattens trees to their
//! leaf order, so words become permutations. Composition substitutes
//! trees into leaves with relabelling through a partition.

use super::{Partition, Perm};
use crate::error::{Error, Result};
use crate::scalar::Rat;
use std::collections::BTreeMap;
use std::fmt;

/// Full binary tree with leaves labelled by distinct variables `1..n`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum TreeWord {
    Leaf(usize),
    Node(Box<TreeWord>, Box<TreeWord>),
}

impl TreeWord {
    pub fn node(left: TreeWord, right: TreeWord) -> TreeWord {
        TreeWord::Node(Box::new(left), Box::new(right))
    }

    pub fn arity(&self) -> usize {
        match self {
            TreeWord::Leaf(_) => 1,
            TreeWord::Node(l, r) => l.arity() + r.arity(),
        }
    }

    /// Leaf labels in left-to-right order.
    pub fn leaves(&self) -> Vec<usize> {
        fn collect(t: &TreeWord, out: &mut Vec<usize>) {
            match t {
                TreeWord::Leaf(v) => out.push(*v),
                TreeWord::Node(l, r) => {
                    collect(l, out);
                    collect(r, out);
                }
            }
        }
        let mut out = Vec::new();
        collect(self, &mut out);
        out
    }

    /// Multilinearity: each of `1..n` appears exactly once.
    pub fn is_multilinear(&self, n: usize) -> bool {
        let mut seen = vec![false; n];
        for v in self.leaves() {
            if v == 0 || v > n || seen[v - 1] {
                return false;
            }
            seen[v - 1] = true;
        }
        self.arity() == n
    }

    pub fn relabel(&self, f: &impl Fn(usize) -> usize) -> TreeWord {
        match self {
            TreeWord::Leaf(v) => TreeWord::Leaf(f(*v)),
            TreeWord::Node(l, r) => TreeWord::node(l.relabel(f), r.relabel(f)),
        }
    }

    /// Left-comb tree of a word: `((w1 w2) w3) ...`.
    pub fn left_comb(word: &[usize]) -> TreeWord {
        assert!(!word.is_empty());
        let mut t = TreeWord::Leaf(word[0]);
        for &v in &word[1..] {
            t = TreeWord::node(t, TreeWord::Leaf(v));
        }
        t
    }

    /// All binary shapes over the given leaf word, in order.
    fn shapes_over(word: &[usize]) -> Vec<TreeWord> {
        if word.len() == 1 {
            return vec![TreeWord::Leaf(word[0])];
        }
        let mut out = Vec::new();
        for split in 1..word.len() {
            for l in Self::shapes_over(&word[..split]) {
                for r in Self::shapes_over(&word[split..]) {
                    out.push(TreeWord::node(l.clone(), r));
                }
            }
        }
        out
    }

    /// Every multilinear tree on `n` variables (all shapes, all labelings).
    pub fn enumerate(n: usize) -> Vec<TreeWord> {
        let mut out = Vec::new();
        for perm in Perm::all(n) {
            let word: Vec<usize> = (1..=n).map(|k| perm.apply(k)).collect();
            out.extend(Self::shapes_over(&word));
        }
        out.sort();
        out
    }
}

impl fmt::Display for TreeWord {
    /// Adjacency is left-associative, so only right children need
    /// parentheses: `(x1 x2) x3` prints as `x1 x2 x3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TreeWord::Leaf(v) => write!(f, "x{v}"),
            TreeWord::Node(l, r) => {
                write!(f, "{l} ")?;
                match r.as_ref() {
                    TreeWord::Leaf(v) => write!(f, "x{v}"),
                    node => write!(f, "({node})"),
                }
            }
        }
    }
}

/// Which free multilinear operad an element lives in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Variety {
    /// No identities: trees are kept distinct.
    Free,
    /// Associativity: trees are flattened to their leaf order.
    Assoc,
}

impl Variety {
    fn normalize(&self, t: &TreeWord) -> TreeWord {
        match self {
            Variety::Free => t.clone(),
            Variety::Assoc => TreeWord::left_comb(&t.leaves()),
        }
    }
}

/// Finite rational combination of multilinear words of a fixed arity.
#[derive(Clone, PartialEq, Debug)]
pub struct OperadElt {
    variety: Variety,
    arity: usize,
    terms: BTreeMap<TreeWord, Rat>,
}

impl OperadElt {
    pub fn zero(variety: Variety, arity: usize) -> Self {
        OperadElt {
            variety,
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_tree(variety: Variety, tree: TreeWord) -> Result<Self> {
        let n = tree.arity();
        if !tree.is_multilinear(n) {
            return Err(Error::Invalid(format!(
                "tree is not multilinear on 1..{n}"
            )));
        }
        let mut e = Self::zero(variety, n);
        e.insert(tree, Rat::one());
        Ok(e)
    }

    /// The 1-ary unit `x1`.
    pub fn identity(variety: Variety) -> Self {
        Self::from_tree(variety, TreeWord::Leaf(1)).expect("leaf is multilinear")
    }

    /// The binary product `x1 x2`.
    pub fn mu(variety: Variety) -> Self {
        Self::from_tree(
            variety,
            TreeWord::node(TreeWord::Leaf(1), TreeWord::Leaf(2)),
        )
        .expect("mu is multilinear")
    }

    fn insert(&mut self, tree: TreeWord, c: Rat) {
        if c.is_zero() {
            return;
        }
        let tree = self.variety.normalize(&tree);
        match self.terms.entry(tree) {
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

    pub fn variety(&self) -> Variety {
        self.variety
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TreeWord, &Rat)> {
        self.terms.iter()
    }

    pub fn checked_add(&self, rhs: &OperadElt) -> Result<OperadElt> {
        if self.variety != rhs.variety {
            return Err(Error::VarietyMismatch);
        }
        if self.arity != rhs.arity {
            return Err(Error::ArityMismatch(format!(
                "operad element arities {} vs {}",
                self.arity, rhs.arity
            )));
        }
        let mut out = self.clone();
        for (t, c) in &rhs.terms {
            out.insert(t.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> OperadElt {
        if c.is_zero() {
            return Self::zero(self.variety, self.arity);
        }
        OperadElt {
            variety: self.variety,
            arity: self.arity,
            terms: self.terms.iter().map(|(t, v)| (t.clone(), v * c)).collect(),
        }
    }

    /// Substitution composition along a partition: leaf `i` of `self`
    /// receives `parts[i-1]`, with the j-th variable of block i relabelled
    /// to the partition position of `(i, j)`. Linear in every slot.
    pub fn compose(&self, pi: &Partition, parts: &[OperadElt]) -> Result<OperadElt> {
        if pi.len() != self.arity {
            return Err(Error::ArityMismatch(format!(
                "partition length {} vs outer arity {}",
                pi.len(),
                self.arity
            )));
        }
        if parts.len() != self.arity {
            return Err(Error::ArityMismatch(format!(
                "got {} inner elements for arity {}",
                parts.len(),
                self.arity
            )));
        }
        for (g, &m) in parts.iter().zip(pi.parts()) {
            if g.variety != self.variety {
                return Err(Error::VarietyMismatch);
            }
            if g.arity != m {
                return Err(Error::ArityMismatch(format!(
                    "inner arity {} vs block size {m}",
                    g.arity
                )));
            }
        }
        let total = pi.total();
        let mut out = Self::zero(self.variety, total);
        // Outer leaves are moved past the partition positions first, so a
        // substituted block can never capture a later outer leaf.
        let mut acc: Vec<(TreeWord, Rat)> = Vec::new();
        for (outer_tree, outer_c) in &self.terms {
            let shifted = outer_tree.relabel(&|v| total + v);
            let mut stack: Vec<(TreeWord, Rat)> = vec![(shifted, outer_c.clone())];
            for (i, g) in parts.iter().enumerate() {
                let mut next = Vec::new();
                for (partial, c) in &stack {
                    for (inner_tree, ic) in &g.terms {
                        let relabelled = inner_tree.relabel(&|j| {
                            pi.pair_to_index(i + 1, j).expect("leaf within block")
                        });
                        let substituted = substitute_leaf(partial, total + i + 1, &relabelled);
                        next.push((substituted, c * ic));
                    }
                }
                stack = next;
            }
            acc.extend(stack);
        }
        for (tree, c) in acc {
            // leaves now carry partition positions 1..total
            out.insert(tree, c);
        }
        Ok(out)
    }

    /// The symmetric-group action: `(sigma f)(a_1, ..., a_n) =
    /// f(a_{sigma(1)}, ..., a_{sigma(n)})`, i.e. each leaf `v` is relabelled
    /// to `sigma(v)`. Applying `sigma` then `tau` relabels by the
    /// left-to-right composite (`tau` after `sigma`), which is the product
    /// convention the composition rule of the action is stated in.
    pub fn permute(&self, sigma: &Perm) -> Result<OperadElt> {
        if sigma.degree() != self.arity {
            return Err(Error::ArityMismatch(format!(
                "permutation degree {} vs arity {}",
                sigma.degree(),
                self.arity
            )));
        }
        let mut out = Self::zero(self.variety, self.arity);
        for (t, c) in &self.terms {
            out.insert(t.relabel(&|v| sigma.apply(v)), c.clone());
        }
        Ok(out)
    }

    /// Basis of the span of multilinear words of the given arity.
    pub fn basis(variety: Variety, n: usize) -> Vec<OperadElt> {
        match variety {
            Variety::Free => TreeWord::enumerate(n)
                .into_iter()
                .map(|t| Self::from_tree(variety, t).expect("enumerated trees are multilinear"))
                .collect(),
            Variety::Assoc => Perm::all(n)
                .into_iter()
                .map(|p| {
                    let word: Vec<usize> = (1..=n).map(|k| p.apply(k)).collect();
                    Self::from_tree(variety, TreeWord::left_comb(&word))
                        .expect("words are multilinear")
                })
                .collect(),
        }
    }

    /// Dimension by explicit enumeration.
    pub fn dim(variety: Variety, n: usize) -> usize {
        Self::basis(variety, n).len()
    }

    /// The closed forms `n! * Catalan(n-1)` (free) and `n!` (assoc).
    pub fn dim_closed_form(variety: Variety, n: usize) -> usize {
        let factorial: usize = (1..=n).product();
        match variety {
            Variety::Free => factorial * catalan(n - 1),
            Variety::Assoc => factorial,
        }
    }
}

fn catalan(n: usize) -> usize {
    // C(2n, n) / (n + 1), exact in usize for the sizes used here
    let mut c: u128 = 1;
    for k in 0..n as u128 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c as usize
}

fn substitute_leaf(t: &TreeWord, label: usize, replacement: &TreeWord) -> TreeWord {
    match t {
        TreeWord::Leaf(v) if *v == label => replacement.clone(),
        TreeWord::Leaf(v) => TreeWord::Leaf(*v),
        TreeWord::Node(l, r) => TreeWord::node(
            substitute_leaf(l, label, replacement),
            substitute_leaf(r, label, replacement),
        ),
    }
}

impl fmt::Display for OperadElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::fmt_terms(
            f,
            self.terms.iter().map(|(t, c)| {
                let s = t.to_string();
                let mono = if c.abs().is_one() || !s.contains(' ') {
                    s
                } else {
                    format!("({s})")
                };
                (mono, c.clone())
            }),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mu(v: Variety) -> OperadElt {
        OperadElt::mu(v)
    }

    #[test]
    fn compose_unit_laws() {
        for v in [Variety::Free, Variety::Assoc] {
            let f = mu(v);
            // Comp^{id(n)}(f, id, ..., id) = f
            let got = f
                .compose(
                    &Partition::identity(2),
                    &[OperadElt::identity(v), OperadElt::identity(v)],
                )
                .unwrap();
            assert_eq!(got, f);
            // Comp^{eps}(id, f) = f
            let got2 = OperadElt::identity(v)
                .compose(&Partition::trivial(2).unwrap(), &[f.clone()])
                .unwrap();
            assert_eq!(got2, f);
        }
    }

    #[test]
    fn associativity_distinguishes_varieties() {
        // mu(mu, id) vs mu(id, mu) over three variables
        for v in [Variety::Free, Variety::Assoc] {
            let left = mu(v)
                .compose(
                    &Partition::new(vec![2, 1]).unwrap(),
                    &[mu(v), OperadElt::identity(v)],
                )
                .unwrap();
            let right = mu(v)
                .compose(
                    &Partition::new(vec![1, 2]).unwrap(),
                    &[OperadElt::identity(v), mu(v)],
                )
                .unwrap();
            match v {
                Variety::Free => assert_ne!(left, right),
                Variety::Assoc => assert_eq!(left, right),
            }
            // the left composite is (x1 x2) x3 either way
            let expected = OperadElt::from_tree(
                v,
                TreeWord::node(
                    TreeWord::node(TreeWord::Leaf(1), TreeWord::Leaf(2)),
                    TreeWord::Leaf(3),
                ),
            )
            .unwrap();
            assert_eq!(left, expected);
        }
    }

    #[test]
    fn permutation_action_examples() {
        let v = Variety::Free;
        let f = mu(v);
        assert_eq!(f.permute(&Perm::identity(2)).unwrap(), f);
        // (1 2) on x1 x2 gives x2 x1
        let swapped = f.permute(&Perm::transposition(2, 1, 2).unwrap()).unwrap();
        let expected =
            OperadElt::from_tree(v, TreeWord::node(TreeWord::Leaf(2), TreeWord::Leaf(1))).unwrap();
        assert_eq!(swapped, expected);
    }

    #[test]
    fn permutation_action_composition_rule() {
        // (sigma tau) f = tau (sigma f) on every basis tree, n <= 4, where
        // the product sigma tau applies sigma first (tau.compose(sigma) in
        // function-composition notation)
        for v in [Variety::Free, Variety::Assoc] {
            for n in 1..=4usize {
                let basis = OperadElt::basis(v, n);
                for sigma in Perm::all(n) {
                    for tau in Perm::all(n) {
                        let st = tau.compose(&sigma).unwrap();
                        for f in &basis {
                            let lhs = f.permute(&st).unwrap();
                            let rhs = f.permute(&sigma).unwrap().permute(&tau).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn dims_match_closed_forms() {
        let free_expected = [1usize, 2, 12, 120, 1680];
        for n in 1..=5usize {
            assert_eq!(OperadElt::dim(Variety::Free, n), free_expected[n - 1]);
            assert_eq!(
                OperadElt::dim(Variety::Free, n),
                OperadElt::dim_closed_form(Variety::Free, n)
            );
            let factorial: usize = (1..=n).product();
            assert_eq!(OperadElt::dim(Variety::Assoc, n), factorial);
            assert_eq!(
                OperadElt::dim(Variety::Assoc, n),
                OperadElt::dim_closed_form(Variety::Assoc, n)
            );
        }
    }

    #[test]
    fn tree_display_roundtrip_shapes() {
        let t1 = TreeWord::node(
            TreeWord::node(TreeWord::Leaf(1), TreeWord::Leaf(2)),
            TreeWord::Leaf(3),
        );
        assert_eq!(t1.to_string(), "x1 x2 x3");
        let t2 = TreeWord::node(
            TreeWord::Leaf(1),
            TreeWord::node(TreeWord::Leaf(2), TreeWord::Leaf(3)),
        );
        assert_eq!(t2.to_string(), "x1 (x2 x3)");
    }

    #[test]
    fn arity_and_variety_errors() {
        let f = mu(Variety::Free);
        assert!(f
            .compose(&Partition::new(vec![2, 1]).unwrap(), &[mu(Variety::Assoc), OperadElt::identity(Variety::Free)])
            .is_err());
        assert!(f
            .compose(&Partition::new(vec![2]).unwrap(), &[mu(Variety::Free)])
            .is_err());
        assert!(f.permute(&Perm::identity(3)).is_err());
        let bad = TreeWord::node(TreeWord::Leaf(1), TreeWord::Leaf(1));
        assert!(OperadElt::from_tree(Variety::Free, bad).is_err());
    }
}
