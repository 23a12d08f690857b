//! Translation-invariant continuous maps `H -> A` in canonical finite form.
//!
//! A conformal element is stored as `sum c_{gamma,beta} T^gamma . a_{p^beta}`
//! where `a_{p^beta M}` is the basic map `T^alpha -> M p^beta q^alpha`
//! (matrix Weyl target) or `f -> M f` (matrix polynomial "current" target)
//! and `T^gamma` acts through `(T_i a)(f) = -a(df/dT_i)`. The canonical
//! coefficients are pinned by the reconstruction round trip: probing the
//! map on monomials determines the presentation uniquely.
//!
//! Every stored map has finite data, hence is automatically continuous in
//! the augmentation-adic topology; the translation-invariance checker exists
//! for raw evaluation tables only.

pub mod verify;

use crate::error::{Error, Result};
use crate::hopf::{DualPoly, HPoly};
use crate::multiindex::MultiIndex;
use crate::ring::{RatMatrix, Ring};
use crate::scalar::Rat;
use crate::weyl::{MatPoly, MatWeyl, WeylElement};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Which target TC-algebra a conformal element maps into.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Backend {
    /// Target `M_N(A_n)` with derivations `[., p_i]`; basic maps
    /// `a_f: T^alpha -> f q^alpha` for `f` in `M_N(k[p])`.
    CendWeyl { nvars: usize, size: usize },
    /// Target `M_N(H)` with derivations `d/dT_i`; basic maps
    /// `a_M: f -> M f` for constant matrices `M`. Forces `beta = 0`.
    CurPoly { nvars: usize, size: usize },
}

impl Backend {
    pub fn nvars(&self) -> usize {
        match self {
            Backend::CendWeyl { nvars, .. } | Backend::CurPoly { nvars, .. } => *nvars,
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Backend::CendWeyl { size, .. } | Backend::CurPoly { size, .. } => *size,
        }
    }

    pub fn is_current(&self) -> bool {
        matches!(self, Backend::CurPoly { .. })
    }

    pub fn target_zero(&self) -> TargetElem {
        match self {
            Backend::CendWeyl { nvars, size } => TargetElem::Weyl(MatWeyl::from_fn(*size, |_, _| {
                WeylElement::zero(*nvars)
            })),
            Backend::CurPoly { nvars, size } => {
                TargetElem::Cur(MatPoly::from_fn(*size, |_, _| HPoly::zero(*nvars)))
            }
        }
    }

    fn check_same(&self, other: &Backend) -> Result<()> {
        if self != other {
            return Err(Error::BackendMismatch(format!("{self:?} vs {other:?}")));
        }
        Ok(())
    }
}

/// Value of a conformal element: an element of the backend's target ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TargetElem {
    Weyl(MatWeyl),
    Cur(MatPoly),
}

impl TargetElem {
    pub fn is_zero(&self) -> bool {
        match self {
            TargetElem::Weyl(m) => m.is_zero(),
            TargetElem::Cur(m) => m.is_zero(),
        }
    }

    /// Panics when the variants differ; values from one backend never mix
    /// with another in well-formed code.
    pub fn add(&self, rhs: &TargetElem) -> TargetElem {
        match (self, rhs) {
            (TargetElem::Weyl(a), TargetElem::Weyl(b)) => TargetElem::Weyl(a.add(b)),
            (TargetElem::Cur(a), TargetElem::Cur(b)) => TargetElem::Cur(a.add(b)),
            _ => panic!("mixed target elements"),
        }
    }

    pub fn mul(&self, rhs: &TargetElem) -> TargetElem {
        match (self, rhs) {
            (TargetElem::Weyl(a), TargetElem::Weyl(b)) => TargetElem::Weyl(a.mul(b)),
            (TargetElem::Cur(a), TargetElem::Cur(b)) => TargetElem::Cur(a.mul(b)),
            _ => panic!("mixed target elements"),
        }
    }

    pub fn neg(&self) -> TargetElem {
        match self {
            TargetElem::Weyl(m) => TargetElem::Weyl(m.neg()),
            TargetElem::Cur(m) => TargetElem::Cur(m.neg()),
        }
    }

    pub fn scale(&self, c: &Rat) -> TargetElem {
        match self {
            TargetElem::Weyl(m) => TargetElem::Weyl(m.scale(c)),
            TargetElem::Cur(m) => TargetElem::Cur(m.scale(c)),
        }
    }

    /// Apply the backend's i-th derivation.
    pub fn derive(&self, i: usize) -> Result<TargetElem> {
        match self {
            TargetElem::Weyl(m) => Ok(TargetElem::Weyl(m.derivation(i)?)),
            TargetElem::Cur(m) => {
                let mut entries = Vec::with_capacity(m.size() * m.size());
                for e in m.entries() {
                    entries.push(e.partial_derivative(i)?);
                }
                Ok(TargetElem::Cur(MatPoly::from_entries(m.size(), entries)))
            }
        }
    }

    pub fn as_weyl(&self) -> Option<&MatWeyl> {
        match self {
            TargetElem::Weyl(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_cur(&self) -> Option<&MatPoly> {
        match self {
            TargetElem::Cur(m) => Some(m),
            _ => None,
        }
    }

    fn matches(&self, backend: &Backend) -> bool {
        match (self, backend) {
            (TargetElem::Weyl(m), Backend::CendWeyl { nvars, size }) => {
                m.size() == *size && m.weyl_nvars() == *nvars
            }
            (TargetElem::Cur(m), Backend::CurPoly { nvars, size }) => {
                m.size() == *size && m.poly_nvars() == *nvars
            }
            _ => false,
        }
    }

    /// The "q-free" decomposition used by reconstruction: the part of the
    /// value that survives setting every `q` (resp. every `T`) to zero,
    /// expressed as `sum_beta p^beta (x) C_beta`.
    fn q_free_decomposition(&self) -> BTreeMap<MultiIndex, RatMatrix> {
        match self {
            TargetElem::Weyl(m) => m.q_free_decomposition(),
            TargetElem::Cur(m) => {
                let c = m.constant_part();
                let mut out = BTreeMap::new();
                if !c.is_zero() {
                    out.insert(MultiIndex::zero(m.poly_nvars()), c);
                }
                out
            }
        }
    }
}

impl fmt::Display for TargetElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetElem::Weyl(m) => {
                if m.size() == 1 {
                    write!(f, "{}", m.get(0, 0))
                } else {
                    write!(f, "{m}")
                }
            }
            TargetElem::Cur(m) => {
                if m.size() == 1 {
                    write!(f, "{}", m.get(0, 0))
                } else {
                    write!(f, "{m}")
                }
            }
        }
    }
}

/// Canonical finite presentation of a translation-invariant continuous map.
///
/// `coeffs[(gamma, beta)]` is the rational matrix `c_{gamma,beta}` of the
/// summand `c_{gamma,beta} T^gamma . a_{p^beta}`; zero matrices are never
/// stored, so equality of presentations is equality of maps.
#[derive(Clone, PartialEq, Debug)]
pub struct ConformalElement {
    backend: Backend,
    coeffs: BTreeMap<(MultiIndex, MultiIndex), RatMatrix>,
}

impl ConformalElement {
    pub fn zero(backend: Backend) -> Self {
        ConformalElement {
            backend,
            coeffs: BTreeMap::new(),
        }
    }

    /// The basic map `a_{p^beta M}`. For the current backend `beta` must be
    /// the zero index.
    pub fn basic(backend: Backend, beta: MultiIndex, matrix: RatMatrix) -> Result<Self> {
        if beta.nvars() != backend.nvars() {
            return Err(Error::VarMismatch {
                expected: backend.nvars(),
                found: beta.nvars(),
            });
        }
        if matrix.size() != backend.size() {
            return Err(Error::DimensionMismatch(format!(
                "matrix size {} vs backend size {}",
                matrix.size(),
                backend.size()
            )));
        }
        if backend.is_current() && !beta.is_zero() {
            return Err(Error::BackendMismatch(
                "current backend admits no p-part in basic maps".into(),
            ));
        }
        let mut c = Self::zero(backend);
        c.insert(MultiIndex::zero(backend.nvars()), beta, matrix);
        Ok(c)
    }

    /// Scalar basic map over a size-1 backend, `a_f` for `f` in `k[p]`
    /// (or a constant for the current backend).
    pub fn basic_scalar(backend: Backend, p_poly: &HPoly) -> Result<Self> {
        let mut out = Self::zero(backend);
        for (beta, c) in p_poly.terms() {
            let m = RatMatrix::from_entries(backend.size(), {
                let mut v = vec![Rat::zero(); backend.size() * backend.size()];
                for d in 0..backend.size() {
                    v[d * backend.size() + d] = c.clone();
                }
                v
            });
            out = out.checked_add(&Self::basic(backend, beta.clone(), m)?)?;
        }
        Ok(out)
    }

    pub fn from_coeffs(
        backend: Backend,
        coeffs: impl IntoIterator<Item = ((MultiIndex, MultiIndex), RatMatrix)>,
    ) -> Result<Self> {
        let mut out = Self::zero(backend);
        for ((gamma, beta), m) in coeffs {
            if gamma.nvars() != backend.nvars() || beta.nvars() != backend.nvars() {
                return Err(Error::VarMismatch {
                    expected: backend.nvars(),
                    found: gamma.nvars().max(beta.nvars()),
                });
            }
            if m.size() != backend.size() {
                return Err(Error::DimensionMismatch("coefficient matrix size".into()));
            }
            if backend.is_current() && !beta.is_zero() {
                return Err(Error::BackendMismatch(
                    "current backend admits no p-part".into(),
                ));
            }
            out.insert(gamma, beta, m);
        }
        Ok(out)
    }

    fn insert(&mut self, gamma: MultiIndex, beta: MultiIndex, m: RatMatrix) {
        if m.is_zero() {
            return;
        }
        match self.coeffs.entry((gamma, beta)) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(m);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&m);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&(MultiIndex, MultiIndex), &RatMatrix)> {
        self.coeffs.iter()
    }

    /// Largest `|gamma|` over the support.
    pub fn deg_t(&self) -> u64 {
        self.coeffs
            .keys()
            .map(|(g, _)| g.total_degree())
            .max()
            .unwrap_or(0)
    }

    /// Largest `|beta|` over the support.
    pub fn deg_p(&self) -> u64 {
        self.coeffs
            .keys()
            .map(|(_, b)| b.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn checked_add(&self, rhs: &ConformalElement) -> Result<ConformalElement> {
        self.backend.check_same(&rhs.backend)?;
        let mut out = self.clone();
        for ((g, b), m) in &rhs.coeffs {
            out.insert(g.clone(), b.clone(), m.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, rhs: &ConformalElement) -> Result<ConformalElement> {
        self.checked_add(&rhs.scale(&Rat::from_int(-1)))
    }

    pub fn scale(&self, c: &Rat) -> ConformalElement {
        if c.is_zero() {
            return Self::zero(self.backend);
        }
        ConformalElement {
            backend: self.backend,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, m)| (k.clone(), m.scale(c)))
                .collect(),
        }
    }

    /// Evaluate on a monomial `T^alpha`:
    /// `sum_{gamma <= alpha} (-1)^|gamma| (alpha)_gamma c_{gamma,beta} p^beta q^{alpha-gamma}`
    /// (`T^{alpha-gamma}` in the current backend).
    pub fn eval_monomial(&self, alpha: &MultiIndex) -> TargetElem {
        let mut acc = self.backend.target_zero();
        for ((gamma, beta), m) in &self.coeffs {
            if let Some(rest) = alpha.checked_sub(gamma) {
                let mut factor = alpha.falling_factorial_rat(gamma);
                if factor.is_zero() {
                    continue;
                }
                if gamma.total_degree() % 2 == 1 {
                    factor = -&factor;
                }
                let scaled = m.scale(&factor);
                let term = match &self.backend {
                    Backend::CendWeyl { nvars, .. } => {
                        let mono = WeylElement::monomial(beta.clone(), rest, Rat::one());
                        let _ = nvars;
                        TargetElem::Weyl(MatWeyl::from_scaled_weyl(&scaled, &mono))
                    }
                    Backend::CurPoly { .. } => {
                        let mono = HPoly::monomial(rest, Rat::one());
                        TargetElem::Cur(MatPoly::from_scaled_poly(&scaled, &mono))
                    }
                };
                acc = acc.add(&term);
            }
        }
        acc
    }

    /// Evaluate on an arbitrary polynomial; linear in `f`.
    pub fn eval(&self, f: &HPoly) -> Result<TargetElem> {
        if f.nvars() != self.backend.nvars() {
            return Err(Error::VarMismatch {
                expected: self.backend.nvars(),
                found: f.nvars(),
            });
        }
        let mut acc = self.backend.target_zero();
        for (alpha, c) in f.terms() {
            acc = acc.add(&self.eval_monomial(alpha).scale(c));
        }
        Ok(acc)
    }

    /// The module action of the generator `T_i`:
    /// `(T_i a)(f) = -a(df/dT_i) = -d_i a(f)`. On canonical coefficients it
    /// shifts `gamma` by `e_i`.
    pub fn t_action(&self, i: usize) -> Result<ConformalElement> {
        let n = self.backend.nvars();
        if i >= n {
            return Err(Error::IndexOutOfRange { index: i, nvars: n });
        }
        let e_i = MultiIndex::unit(n, i)?;
        let mut out = Self::zero(self.backend);
        for ((gamma, beta), m) in &self.coeffs {
            out.insert(gamma.add(&e_i), beta.clone(), m.clone());
        }
        Ok(out)
    }

    /// The module action of an arbitrary polynomial `h`, extended from the
    /// generator action multiplicatively and linearly.
    pub fn h_action(&self, h: &HPoly) -> Result<ConformalElement> {
        if h.nvars() != self.backend.nvars() {
            return Err(Error::VarMismatch {
                expected: self.backend.nvars(),
                found: h.nvars(),
            });
        }
        let mut out = Self::zero(self.backend);
        for (delta, c) in h.terms() {
            let mut shifted = Self::zero(self.backend);
            for ((gamma, beta), m) in &self.coeffs {
                shifted.insert(gamma.add(delta), beta.clone(), m.scale(c));
            }
            out = out.checked_add(&shifted)?;
        }
        Ok(out)
    }

    /// Probe table on all monomials of total degree at most `max_deg`.
    pub fn eval_table(&self, max_deg: u64) -> EvalTable {
        let n = self.backend.nvars();
        let mut t = EvalTable::new(self.backend);
        for alpha in MultiIndex::enumerate(n, max_deg) {
            t.entries.insert(alpha.clone(), self.eval_monomial(&alpha));
        }
        t
    }
}

impl fmt::Display for ConformalElement {
    /// Summands `T^gamma.a[p^beta; M]`; the matrix is folded into the
    /// bracket polynomial when the backend has size 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((gamma, beta), m) in self.coeffs.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let tpart = crate::format_monomial("T", gamma);
            if !tpart.is_empty() {
                write!(f, "{tpart}.")?;
            }
            let ppart = crate::format_monomial("p", beta);
            if self.backend.size() == 1 {
                let c = m.get(0, 0);
                let inner = if ppart.is_empty() {
                    format!("{c}")
                } else if c.is_one() {
                    ppart
                } else {
                    format!("{c}*{ppart}")
                };
                write!(f, "a[{inner}]")?;
            } else if ppart.is_empty() {
                write!(f, "a[{m}]")?;
            } else {
                write!(f, "a[{ppart}; {m}]")?;
            }
        }
        Ok(())
    }
}

/// Candidate evaluation table `T^alpha -> value`, the input form for
/// reconstruction.
#[derive(Clone, PartialEq, Debug)]
pub struct EvalTable {
    backend: Backend,
    entries: BTreeMap<MultiIndex, TargetElem>,
}

impl EvalTable {
    pub fn new(backend: Backend) -> Self {
        EvalTable {
            backend,
            entries: BTreeMap::new(),
        }
    }

    pub fn insert(&mut self, alpha: MultiIndex, value: TargetElem) -> Result<()> {
        if alpha.nvars() != self.backend.nvars() {
            return Err(Error::VarMismatch {
                expected: self.backend.nvars(),
                found: alpha.nvars(),
            });
        }
        if !value.matches(&self.backend) {
            return Err(Error::BackendMismatch(
                "table value does not fit the backend target".into(),
            ));
        }
        self.entries.insert(alpha, value);
        Ok(())
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn get(&self, alpha: &MultiIndex) -> Option<&TargetElem> {
        self.entries.get(alpha)
    }

    pub fn support(&self) -> impl Iterator<Item = &MultiIndex> {
        self.entries.keys()
    }

    fn is_downward_closed(&self) -> bool {
        self.entries.keys().all(|alpha| {
            (0..alpha.nvars()).all(|i| {
                alpha.get(i) == 0 || {
                    let down = alpha.with_entry(i, alpha.get(i) - 1);
                    self.entries.contains_key(&down)
                }
            })
        })
    }
}

/// Recover the canonical element whose evaluations realize `table`.
///
/// The coefficient formula inverts [`ConformalElement::eval_monomial`]: the
/// q-free part of the value at `T^alpha` is `(-1)^|alpha| alpha! sum_beta
/// c_{alpha,beta} p^beta`, so `c_{alpha,beta}` is read off by dividing.
/// The candidate is then verified against every stored entry; a mismatch
/// means no translation-invariant map takes these values. Tables whose
/// support is not downward closed are refused rather than guessed at.
pub fn reconstruct(table: &EvalTable) -> Result<ConformalElement> {
    if !table.is_downward_closed() {
        return Err(Error::NotReconstructible(
            "table support is not downward closed".into(),
        ));
    }
    let mut candidate = ConformalElement::zero(table.backend);
    for (alpha, value) in &table.entries {
        let mut scale = alpha.factorial_rat().recip();
        if alpha.total_degree() % 2 == 1 {
            scale = -&scale;
        }
        for (beta, m) in value.q_free_decomposition() {
            candidate.insert(alpha.clone(), beta, m.scale(&scale));
        }
    }
    for (alpha, value) in &table.entries {
        if &candidate.eval_monomial(alpha) != value {
            return Err(Error::InconsistentTable(format!(
                "value at T^{alpha} is not reproduced by any translation-invariant map"
            )));
        }
    }
    Ok(candidate)
}

/// The f-product `(a_(f) b)(g) = a(f_(1)) b(S(f_(2)) g)`.
///
/// Computed pointwise on a probe window of monomials and reconstructed to
/// canonical form; the window bound is re-checked one degree beyond, so a
/// reconstruction failure here signals an internal bound bug rather than a
/// data condition.
pub fn fproduct(
    a: &ConformalElement,
    b: &ConformalElement,
    f: &HPoly,
) -> Result<ConformalElement> {
    a.backend().check_same(&b.backend())?;
    if f.nvars() != a.backend().nvars() {
        return Err(Error::VarMismatch {
            expected: a.backend().nvars(),
            found: f.nvars(),
        });
    }
    let backend = a.backend();
    if a.is_zero() || b.is_zero() || f.is_zero() {
        return Ok(ConformalElement::zero(backend));
    }

    // Sweedler legs of f, grouped once.
    let cop = f.coproduct();
    let legs: Vec<(TargetElem, MultiIndex, Rat)> = cop
        .terms()
        .map(|(key, c)| {
            let a_val = a.eval_monomial(&key[0]);
            (a_val, key[1].clone(), c.clone())
        })
        .collect();

    let direct_eval = |alpha: &MultiIndex| -> TargetElem {
        let mut acc = backend.target_zero();
        for (a_val, f2, c) in &legs {
            if a_val.is_zero() {
                continue;
            }
            // b(S(f2) T^alpha) with S(T^f2) = (-1)^{|f2|} T^f2
            let mut coeff = c.clone();
            if f2.total_degree() % 2 == 1 {
                coeff = -&coeff;
            }
            let b_val = b.eval_monomial(&f2.add(alpha));
            acc = acc.add(&a_val.mul(&b_val).scale(&coeff));
        }
        acc
    };

    let bound = a.deg_t() + b.deg_t() + f.max_total_degree() + a.deg_p() + b.deg_p() + 1;
    let mut table = EvalTable::new(backend);
    for alpha in MultiIndex::enumerate(backend.nvars(), bound) {
        table.entries.insert(alpha.clone(), direct_eval(&alpha));
    }
    let candidate = reconstruct(&table)?;

    // cross-check one degree beyond the window
    for alpha in MultiIndex::enumerate_degree(backend.nvars(), bound + 1) {
        if candidate.eval_monomial(&alpha) != direct_eval(&alpha) {
            return Err(Error::DegreeBound(format!(
                "f-product window {bound} misses degree {}",
                bound + 1
            )));
        }
    }
    Ok(candidate)
}

/// The n-th product of a one-variable session: the f-product at `f = T^k`.
pub fn nproduct(a: &ConformalElement, b: &ConformalElement, k: u32) -> Result<ConformalElement> {
    if a.backend().nvars() != 1 {
        return Err(Error::MultiVariableSession(a.backend().nvars()));
    }
    fproduct(a, b, &HPoly::monomial(MultiIndex::new(vec![k]), Rat::one()))
}

/// The x-product for a dual functional `x = sum c_lambda t^lambda`, i.e.
/// the matching combination of f-products at `f = T^lambda`.
pub fn xproduct(a: &ConformalElement, b: &ConformalElement, x: &DualPoly) -> Result<ConformalElement> {
    a.backend().check_same(&b.backend())?;
    let mut acc = ConformalElement::zero(a.backend());
    for (lambda, c) in x.terms() {
        let term = fproduct(a, b, &HPoly::monomial(lambda.clone(), Rat::one()))?;
        acc = acc.checked_add(&term.scale(c))?;
    }
    Ok(acc)
}

/// The set of multi-indices `lambda` with `a_(T^lambda) b != 0`.
///
/// Probes every `|lambda|` up to the locality degree bound
/// `deg_T(a) + deg_T(b) + deg_p(a) + deg_p(b)` and verifies one degree
/// beyond that every product vanishes; a nonzero product there is an
/// internal bound failure.
pub fn locality_set(a: &ConformalElement, b: &ConformalElement) -> Result<BTreeSet<MultiIndex>> {
    a.backend().check_same(&b.backend())?;
    let n = a.backend().nvars();
    let bound = a.deg_t() + b.deg_t() + a.deg_p() + b.deg_p();
    let mut out = BTreeSet::new();
    for lambda in MultiIndex::enumerate(n, bound) {
        let prod = fproduct(a, b, &HPoly::monomial(lambda.clone(), Rat::one()))?;
        if !prod.is_zero() {
            out.insert(lambda);
        }
    }
    for lambda in MultiIndex::enumerate_degree(n, bound + 1) {
        let prod = fproduct(a, b, &HPoly::monomial(lambda.clone(), Rat::one()))?;
        if !prod.is_zero() {
            return Err(Error::DegreeBound(format!(
                "nonzero product at |lambda| = {} beyond the locality bound {bound}",
                bound + 1
            )));
        }
    }
    Ok(out)
}

/// Witness pairs `(c, f)` with `sum c(f) = target`, one pair per q-exponent
/// (resp. T-exponent) of the target. Realizes every target-ring element as
/// a value of a translation-invariant map.
pub fn tc_witness(backend: Backend, target: &TargetElem) -> Result<Vec<(ConformalElement, HPoly)>> {
    if !target.matches(&backend) {
        return Err(Error::BackendMismatch(
            "target does not fit the backend".into(),
        ));
    }
    let n = backend.nvars();
    let size = backend.size();
    let mut groups: BTreeMap<MultiIndex, ConformalElement> = BTreeMap::new();
    match target {
        TargetElem::Weyl(m) => {
            for i in 0..size {
                for j in 0..size {
                    for (mono, c) in m.get(i, j).terms() {
                        let elem = groups
                            .entry(mono.q.clone())
                            .or_insert_with(|| ConformalElement::zero(backend));
                        let mut mat = RatMatrix::zeros(size);
                        mat.set(i, j, c.clone());
                        elem.insert(MultiIndex::zero(n), mono.p.clone(), mat);
                    }
                }
            }
        }
        TargetElem::Cur(m) => {
            for i in 0..size {
                for j in 0..size {
                    for (alpha, c) in m.get(i, j).terms() {
                        let elem = groups
                            .entry(alpha.clone())
                            .or_insert_with(|| ConformalElement::zero(backend));
                        let mut mat = RatMatrix::zeros(size);
                        mat.set(i, j, c.clone());
                        elem.insert(MultiIndex::zero(n), MultiIndex::zero(n), mat);
                    }
                }
            }
        }
    }
    Ok(groups
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(alpha, c)| (c, HPoly::monomial(alpha, Rat::one())))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cend1() -> Backend {
        Backend::CendWeyl { nvars: 1, size: 1 }
    }

    fn cur(nvars: usize, size: usize) -> Backend {
        Backend::CurPoly { nvars, size }
    }

    fn a_one() -> ConformalElement {
        ConformalElement::basic_scalar(cend1(), &HPoly::one(1)).unwrap()
    }

    fn a_p() -> ConformalElement {
        ConformalElement::basic_scalar(cend1(), &HPoly::var(1, 0).unwrap()).unwrap()
    }

    fn tpow(k: u32) -> HPoly {
        HPoly::monomial(MultiIndex::new(vec![k]), Rat::one())
    }

    fn weyl_mono(p: u32, q: u32) -> TargetElem {
        TargetElem::Weyl(MatWeyl::from_scaled_weyl(
            &RatMatrix::identity(1),
            &WeylElement::monomial(
                MultiIndex::new(vec![p]),
                MultiIndex::new(vec![q]),
                Rat::one(),
            ),
        ))
    }

    #[test]
    fn eval_examples() {
        // a_1 at T^2 -> q^2
        assert_eq!(a_one().eval(&tpow(2)).unwrap(), weyl_mono(0, 2));
        // (T.a_1)(T^m) = -m q^{m-1}
        let ta = a_one().t_action(0).unwrap();
        for m in 1..=5u32 {
            let got = ta.eval(&tpow(m)).unwrap();
            let expected = weyl_mono(0, m - 1).scale(&Rat::from_int(-(m as i64)));
            assert_eq!(got, expected);
        }
        assert!(ta.eval(&tpow(0)).unwrap().is_zero());
        // a_M at 1 -> M in the current backend
        let m = RatMatrix::unit(2, 0, 1);
        let am = ConformalElement::basic(cur(1, 2), MultiIndex::zero(1), m.clone()).unwrap();
        let got = am.eval(&HPoly::one(1)).unwrap();
        assert_eq!(got, TargetElem::Cur(MatPoly::from_scaled_poly(&m, &HPoly::one(1))));
    }

    #[test]
    fn t_action_agrees_with_derivation_route() {
        // eval(T_i . a, f) = -a(df/dT_i) = -d_i(a(f)) on samples
        let a = {
            let mut c = a_p();
            c = c.checked_add(&a_one().t_action(0).unwrap()).unwrap();
            c
        };
        let ta = a.t_action(0).unwrap();
        for m in 0..=6u32 {
            let f = tpow(m);
            let lhs = ta.eval(&f).unwrap();
            let via_inner = a.eval(&f.partial_derivative(0).unwrap()).unwrap().neg();
            let via_outer = a.eval(&f).unwrap().derive(0).unwrap().neg();
            assert_eq!(lhs, via_inner);
            assert_eq!(lhs, via_outer);
        }
    }

    #[test]
    fn h_action_composes() {
        let a = a_p();
        let via_poly = a.h_action(&tpow(2)).unwrap();
        let via_steps = a.t_action(0).unwrap().t_action(0).unwrap();
        assert_eq!(via_poly, via_steps);
        // commuting generators in two variables
        let b2 = Backend::CurPoly { nvars: 2, size: 1 };
        let am = ConformalElement::basic(b2, MultiIndex::zero(2), RatMatrix::identity(1)).unwrap();
        assert_eq!(
            am.t_action(0).unwrap().t_action(1).unwrap(),
            am.t_action(1).unwrap().t_action(0).unwrap()
        );
    }

    #[test]
    fn reconstruct_examples() {
        // table of a_1 -> single coefficient at (0, 0)
        let t = a_one().eval_table(3);
        let r = reconstruct(&t).unwrap();
        assert_eq!(r, a_one());

        // table of T.a_p -> single coefficient at (1, 1)
        let tap = a_p().t_action(0).unwrap();
        let r2 = reconstruct(&tap.eval_table(4)).unwrap();
        assert_eq!(r2, tap);
        let coeffs: Vec<_> = r2.coeffs().collect();
        assert_eq!(coeffs.len(), 1);
        assert_eq!(
            coeffs[0].0,
            &(MultiIndex::new(vec![1]), MultiIndex::new(vec![1]))
        );
        assert_eq!(coeffs[0].1, &RatMatrix::identity(1));

        // a table sending 1 to q is not translation invariant
        let mut bad = EvalTable::new(cend1());
        bad.insert(MultiIndex::zero(1), weyl_mono(0, 1)).unwrap();
        assert!(matches!(reconstruct(&bad), Err(Error::InconsistentTable(_))));

        // support with a hole is refused
        let mut holey = EvalTable::new(cend1());
        holey
            .insert(MultiIndex::new(vec![2]), weyl_mono(0, 2))
            .unwrap();
        assert!(matches!(
            reconstruct(&holey),
            Err(Error::NotReconstructible(_))
        ));
    }

    #[test]
    fn fproduct_cend_examples() {
        // a_1 (1) a_p = a_p
        let r = fproduct(&a_one(), &a_p(), &HPoly::one(1)).unwrap();
        assert_eq!(r, a_p());
        // a_1 (T) a_p = a_1
        let r2 = fproduct(&a_one(), &a_p(), &tpow(1)).unwrap();
        assert_eq!(r2, a_one());
    }

    #[test]
    fn fproduct_current_examples() {
        let b = cur(1, 2);
        let m = RatMatrix::unit(2, 0, 1);
        let k = RatMatrix::unit(2, 1, 0);
        let am = ConformalElement::basic(b, MultiIndex::zero(1), m.clone()).unwrap();
        let ak = ConformalElement::basic(b, MultiIndex::zero(1), k.clone()).unwrap();
        // a_M (T) a_K = 0 in the commutative target
        assert!(fproduct(&am, &ak, &tpow(1)).unwrap().is_zero());
        // a_M (1) a_K = a_{MK}
        let r = fproduct(&am, &ak, &HPoly::one(1)).unwrap();
        let amk = ConformalElement::basic(b, MultiIndex::zero(1), m.mul(&k)).unwrap();
        assert_eq!(r, amk);
    }

    #[test]
    fn fproduct_defining_display_holds_pointwise() {
        // eval(a_(f) b, g) = sum a(f_(1)) b(S(f_(2)) g) for non-monomial f, g
        let a = a_p().checked_add(&a_one().t_action(0).unwrap()).unwrap();
        let b = a_p();
        let f = &tpow(2) + &tpow(0).scale(&Rat::new(1, 2));
        let g = &tpow(3) + &tpow(1).scale(&Rat::from_int(-2));
        let prod = fproduct(&a, &b, &f).unwrap();
        let lhs = prod.eval(&g).unwrap();
        let mut rhs = a.backend().target_zero();
        for (legs, c) in f.coproduct().terms() {
            let aval = a.eval_monomial(&legs[0]);
            let sleg = HPoly::monomial(legs[1].clone(), c.clone()).antipode();
            let bval = b.eval(&(&sleg * &g)).unwrap();
            rhs = rhs.add(&aval.mul(&bval));
        }
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn nproduct_examples() {
        assert_eq!(nproduct(&a_one(), &a_p(), 0).unwrap(), a_p());
        assert!(nproduct(&a_one(), &a_one(), 1).unwrap().is_zero());
        // n beyond the locality bound vanishes
        assert!(nproduct(&a_one(), &a_p(), 5).unwrap().is_zero());
        // multi-variable sessions are rejected
        let b2 = Backend::CurPoly { nvars: 2, size: 1 };
        let am = ConformalElement::basic(b2, MultiIndex::zero(2), RatMatrix::identity(1)).unwrap();
        assert!(matches!(
            nproduct(&am, &am, 0),
            Err(Error::MultiVariableSession(2))
        ));
    }

    #[test]
    fn locality_examples() {
        // locality_set(a_1, a_p) = {0, 1}
        let s = locality_set(&a_one(), &a_p()).unwrap();
        let expected: BTreeSet<_> = [MultiIndex::new(vec![0]), MultiIndex::new(vec![1])]
            .into_iter()
            .collect();
        assert_eq!(s, expected);
        // zero against anything is empty
        let z = ConformalElement::zero(cend1());
        assert!(locality_set(&z, &a_p()).unwrap().is_empty());
        // currents: {0} when MK != 0
        let b = cur(1, 2);
        let am = ConformalElement::basic(b, MultiIndex::zero(1), RatMatrix::unit(2, 0, 1)).unwrap();
        let ak = ConformalElement::basic(b, MultiIndex::zero(1), RatMatrix::unit(2, 1, 0)).unwrap();
        let s2 = locality_set(&am, &ak).unwrap();
        assert_eq!(s2.len(), 1);
        assert!(s2.contains(&MultiIndex::zero(1)));
    }

    #[test]
    fn tc_witness_examples() {
        let b = Backend::CendWeyl { nvars: 1, size: 1 };
        // p1^2 q1 -> (a_{p^2}, T)
        let target = weyl_mono(2, 1);
        let ws = tc_witness(b, &target).unwrap();
        assert_eq!(ws.len(), 1);
        assert_eq!(ws[0].1, tpow(1));
        let mut acc = b.target_zero();
        for (c, f) in &ws {
            acc = acc.add(&c.eval(f).unwrap());
        }
        assert_eq!(acc, target);

        // p1 q1 + q2 in two variables -> two witness pairs
        let b2 = Backend::CendWeyl { nvars: 2, size: 1 };
        let w = &(&WeylElement::p_var(2, 0).unwrap() * &WeylElement::q_var(2, 0).unwrap())
            + &WeylElement::q_var(2, 1).unwrap();
        let target2 = TargetElem::Weyl(MatWeyl::from_scaled_weyl(&RatMatrix::identity(1), &w));
        let ws2 = tc_witness(b2, &target2).unwrap();
        assert_eq!(ws2.len(), 2);
        let mut acc2 = b2.target_zero();
        for (c, f) in &ws2 {
            acc2 = acc2.add(&c.eval(f).unwrap());
        }
        assert_eq!(acc2, target2);

        // the unit
        let ws3 = tc_witness(b, &weyl_mono(0, 0)).unwrap();
        assert_eq!(ws3.len(), 1);
        assert_eq!(ws3[0].0, a_one());
        assert_eq!(ws3[0].1, HPoly::one(1));
    }

    #[test]
    fn display_canonical() {
        let tap = a_p().t_action(0).unwrap();
        assert_eq!(tap.to_string(), "T1.a[p1]");
        let sum = a_one()
            .scale(&Rat::new(1, 2))
            .checked_add(&tap)
            .unwrap();
        assert_eq!(sum.to_string(), "T1.a[p1] + a[1/2]");
        let b = cur(1, 2);
        let am = ConformalElement::basic(b, MultiIndex::zero(1), RatMatrix::unit(2, 0, 1)).unwrap();
        assert_eq!(am.to_string(), "a[[[0, 1], [0, 0]]]");
    }
}
