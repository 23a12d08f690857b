//! Shared helpers for the canonical textual forms.

use crate::multiindex::MultiIndex;
use crate::scalar::Rat;
use std::fmt;

/// Monomial string for an exponent vector, e.g. `T1^2*T2` with `stem = "T"`.
/// Returns the empty string for the zero index (the caller decides how the
/// constant monomial reads in context).
pub(crate) fn format_monomial(stem: &str, exp: &MultiIndex) -> String {
    let mut parts = Vec::new();
    for (i, &e) in exp.entries().iter().enumerate() {
        if e == 1 {
            parts.push(format!("{stem}{}", i + 1));
        } else if e > 1 {
            parts.push(format!("{stem}{}^{e}", i + 1));
        }
    }
    parts.join("*")
}

/// Write a sum of `(monomial, coefficient)` terms in sign-aware canonical
/// form: `3*T1^2*T2 - 1/2`. An empty monomial string denotes the constant
/// term. Writes `0` when the iterator is empty.
pub(crate) fn fmt_terms(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, Rat)>,
) -> fmt::Result {
    let mut first = true;
    let mut wrote = false;
    for (mono, c) in terms {
        if c.is_zero() {
            continue;
        }
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
        } else if c.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let mag = c.abs();
        if mono.is_empty() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{mag}*{mono}")?;
        }
        wrote = true;
    }
    if !wrote {
        write!(f, "0")?;
    }
    Ok(())
}
