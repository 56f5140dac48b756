//! The finite element spaces PᵣΛᵏ and Pᵣ⁻Λᵏ on the n-simplex: canonical
//! spanning sets, canonical bases, exact rank/dimension, membership, and
//! homogenization of spanning representations.

use crate::combinatorics::{
    binomial, complement, enum_multiindices, sigma, sigma0, Alternator, Floor, MultiIndex,
};
use crate::forms::{whitney_alt, Form, FormError};
use crate::linalg;
use crate::scalar::Cyclo;
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SpacesError {
    #[error("forms do not share a simplex dimension and form degree")]
    MixedSpace,
    #[error("term of degree {found} exceeds the homogenization degree {target}")]
    DegreeTooLow { found: usize, target: usize },
    #[error("degree/family combination is undefined: {0}")]
    UnsupportedDegree(String),
    #[error(transparent)]
    Form(#[from] FormError),
}

/// Family selector: the full space PᵣΛᵏ or the trimmed space Pᵣ⁻Λᵏ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "P")]
    P,
    #[serde(rename = "Pminus")]
    PMinus,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::P => write!(f, "P"),
            Family::PMinus => write!(f, "P-"),
        }
    }
}

/// A finite element space on the n-simplex. `ring` selects the subspace
/// with vanishing traces on all proper faces. Negative degrees are legal
/// and denote the zero space, which grounds the recursion in degree
/// bookkeeping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SpaceSpec {
    pub family: Family,
    pub ring: bool,
    pub r: i64,
    pub k: usize,
    pub n: usize,
}

impl SpaceSpec {
    pub fn new(family: Family, ring: bool, r: i64, k: usize, n: usize) -> Self {
        SpaceSpec {
            family,
            ring,
            r,
            k,
            n,
        }
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}_{}Λ^{}(T^{})",
            self.family,
            if self.ring { "°" } else { "" },
            self.r,
            self.k,
            self.n
        )
    }
}

/// An ordered, duplicate-free list of forms sharing (n, k).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormSet {
    n: usize,
    k: usize,
    forms: Vec<Form>,
}

impl FormSet {
    pub fn empty(n: usize, k: usize) -> Self {
        FormSet {
            n,
            k,
            forms: Vec::new(),
        }
    }

    /// Builds a set in the given order, dropping zero forms and repeated
    /// expressions. Deduplication is symbolic (coefficient-table identity),
    /// not semantic: two generators that only coincide through the
    /// barycentric relation Σλ = 1 both stay, because the symmetry action
    /// permutes generator expressions and collapsing such pairs can leave a
    /// set with no element-wise permutation witness.
    pub fn collect(n: usize, k: usize, candidates: Vec<Form>) -> Result<Self, SpacesError> {
        let mut forms = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for f in candidates {
            if f.simplex_dim() != n || f.form_degree() != k {
                return Err(SpacesError::MixedSpace);
            }
            if f.reduce().is_zero() {
                continue;
            }
            if seen.insert(f.clone()) {
                forms.push(f);
            }
        }
        Ok(FormSet { n, k, forms })
    }

    pub fn simplex_dim(&self) -> usize {
        self.n
    }

    pub fn form_degree(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn forms(&self) -> &[Form] {
        &self.forms
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Form> {
        self.forms.iter()
    }
}

impl Serialize for FormSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.forms.serialize(serializer)
    }
}

/// The canonical spanning set of the space.
pub fn spanning_set(spec: &SpaceSpec) -> Result<FormSet, SpacesError> {
    let SpaceSpec {
        family,
        ring,
        r,
        k,
        n,
    } = *spec;
    let mut out = Vec::new();
    match family {
        Family::P => {
            if r >= 0 {
                for alpha in enum_multiindices(r as usize, 0, n).expect("0 <= n") {
                    for s in sigma(k, n) {
                        if ring && !covers(&alpha, &s, n) {
                            continue;
                        }
                        out.push(Form::monomial(n, alpha.clone(), s, Cyclo::one())?);
                    }
                }
            }
        }
        Family::PMinus => {
            if r >= 1 {
                for alpha in enum_multiindices((r - 1) as usize, 0, n).expect("0 <= n") {
                    for rho in sigma0(k as isize, n) {
                        if ring && !covers(&alpha, &rho, n) {
                            continue;
                        }
                        let phi = whitney_alt(n, &rho)?;
                        out.push(phi.mul_monomial(&alpha));
                    }
                }
            }
        }
    }
    FormSet::collect(n, k, out)
}

fn covers(alpha: &MultiIndex, sigma: &Alternator, n: usize) -> bool {
    (0..=n).all(|i| alpha.get(i) > 0 || sigma.contains(i))
}

/// The canonical basis of the space.
///
/// For the full plain family at r = 0 the canonical spanning set is not
/// independent once k ≥ 1 (the partition of zero collapses it), so the
/// degree-0 basis uses the alternators avoiding index 0, which are exactly
/// the free reduced coordinates.
pub fn basis_b(spec: &SpaceSpec) -> Result<FormSet, SpacesError> {
    let SpaceSpec {
        family,
        ring,
        r,
        k,
        n,
    } = *spec;
    let mut out = Vec::new();
    match (family, ring) {
        (Family::P, false) => {
            if r == 0 {
                for s in sigma(k, n) {
                    if s.contains(0) {
                        continue;
                    }
                    out.push(Form::monomial(n, MultiIndex::zero(n), s, Cyclo::one())?);
                }
            } else if r >= 1 {
                for alpha in enum_multiindices(r as usize, 0, n).expect("0 <= n") {
                    let Floor::Finite(fl) = alpha.floor() else {
                        unreachable!("degree r >= 1")
                    };
                    for s in sigma(k, n) {
                        if s.contains(fl) {
                            continue;
                        }
                        out.push(Form::monomial(n, alpha.clone(), s, Cyclo::one())?);
                    }
                }
            }
        }
        (Family::P, true) => {
            if r >= 1 {
                for alpha in enum_multiindices(r as usize, 0, n).expect("0 <= n") {
                    let Floor::Finite(fl) = alpha.floor() else {
                        unreachable!("degree r >= 1")
                    };
                    for s in sigma(k, n) {
                        if s.contains(fl) || !covers(&alpha, &s, n) {
                            continue;
                        }
                        out.push(Form::monomial(n, alpha.clone(), s, Cyclo::one())?);
                    }
                }
            }
        }
        (Family::PMinus, false) => {
            if r >= 1 {
                for alpha in enum_multiindices((r - 1) as usize, 0, n).expect("0 <= n") {
                    for rho in sigma0(k as isize, n) {
                        if alpha.floor() < rho.floor() {
                            continue;
                        }
                        let phi = whitney_alt(n, &rho)?;
                        out.push(phi.mul_monomial(&alpha));
                    }
                }
            }
        }
        (Family::PMinus, true) => {
            if r >= 1 {
                for alpha in enum_multiindices((r - 1) as usize, 0, n).expect("0 <= n") {
                    for rho in sigma0(k as isize, n) {
                        if rho.floor() != Floor::Finite(0) || !covers(&alpha, &rho, n) {
                            continue;
                        }
                        let phi = whitney_alt(n, &rho)?;
                        out.push(phi.mul_monomial(&alpha));
                    }
                }
            }
        }
    }
    FormSet::collect(n, k, out)
}

/// Symbolic generators λ^β·λ_{σᶜ}·dλ_σ of the full ring space, returned as
/// (β, σ) pairs together with the realized forms. With the side condition
/// ⌊β⌋ ≥ ⌊σᶜ⌋ these are a basis; without it, a spanning set.
pub fn ring_p_generators(
    r: i64,
    k: usize,
    n: usize,
    basis_only: bool,
) -> Result<Vec<(MultiIndex, Alternator, Form)>, SpacesError> {
    let mut out = Vec::new();
    let beta_degree = r - (n as i64) + (k as i64) - 1;
    if beta_degree < 0 {
        return Ok(out);
    }
    for s in sigma(k, n) {
        let sc = complement(&s, n).expect("sigma is in range");
        for beta in enum_multiindices(beta_degree as usize, 0, n).expect("0 <= n") {
            if basis_only && beta.floor() < sc.floor() {
                continue;
            }
            let alpha = beta.plus(&crate::forms::indicator(n, &sc));
            let form = Form::monomial(n, alpha, s.clone(), Cyclo::one())?;
            out.push((beta.clone(), s.clone(), form));
        }
    }
    Ok(out)
}

/// Labeled basis triples (α, ρ, λ^α·φ_ρ) of the plain P⁻ space, the same
/// elements as `basis_b(P⁻, plain)` but keeping the generating indices,
/// which termwise maps need.
pub fn pminus_basis_generators(
    r: i64,
    k: usize,
    n: usize,
) -> Result<Vec<(MultiIndex, Alternator, Form)>, SpacesError> {
    let mut out = Vec::new();
    if r >= 1 {
        for alpha in enum_multiindices((r - 1) as usize, 0, n).expect("0 <= n") {
            for rho in sigma0(k as isize, n) {
                if alpha.floor() < rho.floor() {
                    continue;
                }
                let phi = whitney_alt(n, &rho)?;
                out.push((alpha.clone(), rho.clone(), phi.mul_monomial(&alpha)));
            }
        }
    }
    Ok(out)
}

/// Labeled basis triples (α, ρ, λ^α·φ_ρ) of the ring P⁻ space: the
/// elements of `basis_b(P⁻, ring)` with their generating indices.
pub fn pminus_ring_basis_generators(
    r: i64,
    k: usize,
    n: usize,
) -> Result<Vec<(MultiIndex, Alternator, Form)>, SpacesError> {
    let mut out = Vec::new();
    if r >= 1 {
        for alpha in enum_multiindices((r - 1) as usize, 0, n).expect("0 <= n") {
            for rho in sigma0(k as isize, n) {
                if rho.floor() != Floor::Finite(0) || !covers(&alpha, &rho, n) {
                    continue;
                }
                let phi = whitney_alt(n, &rho)?;
                out.push((alpha.clone(), rho.clone(), phi.mul_monomial(&alpha)));
            }
        }
    }
    Ok(out)
}

/// Exact rank and independence of a set of forms.
pub fn rank_dim(set: &FormSet) -> (usize, bool) {
    let rank = linalg::rank_forms(set.forms());
    (rank, rank == set.len())
}

/// Closed-form dimension of the space from binomial counts; zero below
/// the family's minimal degree. Ring dimensions follow the degree-shift
/// bijections with plain spaces of the complementary form degree. Agrees
/// with the `dimension` rank oracle (regression-tested); the recursive
/// builder uses it to avoid large eliminations.
pub fn binomial_dim(spec: &SpaceSpec) -> usize {
    let SpaceSpec {
        family,
        ring,
        r,
        k,
        n,
    } = *spec;
    if ring {
        let shift = r - n as i64 + k as i64;
        return match family {
            Family::P => binomial_dim(&SpaceSpec::new(Family::PMinus, false, shift, n - k, n)),
            Family::PMinus => binomial_dim(&SpaceSpec::new(Family::P, false, shift - 1, n - k, n)),
        };
    }
    match family {
        Family::P if r >= 0 => {
            binomial(r as usize + k, k) * binomial(r as usize + n, n - k)
        }
        Family::PMinus if r >= 1 => {
            binomial((r - 1) as usize + k, k) * binomial(r as usize + n, n - k)
        }
        _ => 0,
    }
}

/// Dimension of the space: the exact rank of its canonical spanning set.
pub fn dimension(spec: &SpaceSpec) -> Result<usize, SpacesError> {
    Ok(linalg::rank_forms(spanning_set(spec)?.forms()))
}

/// Membership of a form in the span of the canonical spanning set.
pub fn contains(spec: &SpaceSpec, omega: &Form) -> Result<bool, SpacesError> {
    let span = spanning_set(spec)?;
    if omega.simplex_dim() != span.simplex_dim() || omega.form_degree() != span.form_degree() {
        return Err(SpacesError::MixedSpace);
    }
    if omega.is_zero() {
        return Ok(true);
    }
    let solver = linalg::Solver::new(span.forms());
    Ok(solver.solve(omega).is_some())
}

/// Rewrites ω so every term has polynomial degree exactly r, multiplying
/// by powers of the partition of unity λ₀ + … + λₙ.
pub fn homogenize(omega: &Form, r: usize) -> Result<Form, SpacesError> {
    let n = omega.simplex_dim();
    let mut out = Form::zero(n, omega.form_degree());
    for (alpha, s, c) in omega.terms() {
        let d = alpha.degree();
        if d > r {
            return Err(SpacesError::DegreeTooLow {
                found: d,
                target: r,
            });
        }
        // one term: c·λ^α·(Σλ)^{r−d} dλ_σ
        let mut parts: Vec<(MultiIndex, Cyclo)> = vec![(alpha.clone(), c.clone())];
        for _ in d..r {
            let mut next: std::collections::BTreeMap<MultiIndex, Cyclo> =
                std::collections::BTreeMap::new();
            for (m, coeff) in &parts {
                for i in 0..=n {
                    let key = m.bump(i);
                    let slot = next.entry(key).or_insert_with(Cyclo::zero);
                    *slot = &*slot + coeff;
                }
            }
            parts = next.into_iter().collect();
        }
        for (m, coeff) in parts {
            out.add_term(m, s.clone(), coeff);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::whitney;

    fn spec(family: Family, ring: bool, r: i64, k: usize, n: usize) -> SpaceSpec {
        SpaceSpec::new(family, ring, r, k, n)
    }

    #[test]
    fn spanning_set_examples() {
        let s = spanning_set(&spec(Family::PMinus, false, 1, 1, 2)).unwrap();
        assert_eq!(s.len(), 3);
        for (f, rho) in s.iter().zip([[0, 1], [0, 2], [1, 2]]) {
            assert!(f.equals(&whitney(2, &rho).unwrap()).unwrap());
        }

        let s = spanning_set(&spec(Family::P, false, 1, 1, 2)).unwrap();
        assert_eq!(s.len(), 9);

        let s = spanning_set(&spec(Family::PMinus, true, 1, 1, 2)).unwrap();
        assert!(s.is_empty());
    }

    #[test]
    fn basis_examples() {
        let b = basis_b(&spec(Family::P, false, 1, 1, 2)).unwrap();
        assert_eq!(b.len(), 6);
        let (rank, indep) = rank_dim(&b);
        assert_eq!((rank, indep), (6, true));

        let b = basis_b(&spec(Family::PMinus, false, 1, 1, 2)).unwrap();
        assert_eq!(b.len(), 3);

        let b = basis_b(&spec(Family::PMinus, true, 3, 1, 2)).unwrap();
        let (rank, indep) = rank_dim(&b);
        assert!(indep);
        assert_eq!(rank, dimension(&spec(Family::PMinus, true, 3, 1, 2)).unwrap());
    }

    #[test]
    fn rank_examples() {
        let dls = FormSet::collect(2, 1, (0..=2).map(|i| Form::d_lambda(2, i)).collect()).unwrap();
        assert_eq!(rank_dim(&dls).0, 2);

        let s = spanning_set(&spec(Family::P, false, 1, 1, 2)).unwrap();
        let (rank, indep) = rank_dim(&s);
        assert_eq!(rank, 6);
        assert!(!indep);
    }

    #[test]
    fn membership() {
        let pm = spec(Family::PMinus, false, 1, 1, 2);
        assert!(contains(&pm, &whitney(2, &[0, 1]).unwrap()).unwrap());
        assert!(contains(&pm, &Form::d_lambda(2, 1)).unwrap());
        let outside = Form::lambda(2, 0)
            .wedge(&Form::d_lambda(2, 1))
            .unwrap();
        assert!(!contains(&pm, &outside).unwrap());
    }

    #[test]
    fn homogenize_examples() {
        let one = Form::one(1);
        let h = homogenize(&one, 1).unwrap();
        let expected = Form::lambda(1, 0).add(&Form::lambda(1, 1)).unwrap();
        assert_eq!(h, expected);

        let h = homogenize(&Form::d_lambda(1, 1), 1).unwrap();
        assert_eq!(h.term_count(), 2);
        assert!(h.equals(&Form::d_lambda(1, 1)).unwrap());

        let h = homogenize(&Form::lambda(1, 0), 2).unwrap();
        // λ₀² + λ₀λ₁
        assert_eq!(h.term_count(), 2);
        assert!(h.equals(&Form::lambda(1, 0)).unwrap());

        assert!(homogenize(&h, 1).is_err());
    }

    #[test]
    fn bases_span_and_are_independent() {
        for n in 1..=3usize {
            for k in 0..=n {
                for r in 0..=4i64 {
                    for family in [Family::P, Family::PMinus] {
                        for ring in [false, true] {
                            let sp = spec(family, ring, r, k, n);
                            let s = spanning_set(&sp).unwrap();
                            let b = basis_b(&sp).unwrap();
                            let (rank_b, indep) = rank_dim(&b);
                            assert!(indep, "{sp}: basis not independent");
                            let rank_s = linalg::rank_forms(s.forms());
                            assert_eq!(rank_s, rank_b, "{sp}: span(B) != span(S)");
                            // the bases are subsets of the spanning sets
                            for f in b.iter() {
                                let red = f.reduce();
                                assert!(
                                    s.iter().any(|g| g.reduce() == red),
                                    "{sp}: basis element outside spanning set"
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn ring_generator_rewrite_matches_dimension() {
        // λ^β λ_{σᶜ} dλ_σ with ⌊β⌋ ≥ ⌊σᶜ⌋ is a basis of the full ring space.
        for n in 1..=3usize {
            for k in 1..=n {
                for r in 1..=4i64 {
                    let gens = ring_p_generators(r, k, n, true).unwrap();
                    let forms: Vec<Form> = gens.iter().map(|(_, _, f)| f.clone()).collect();
                    let dim = dimension(&spec(Family::P, true, r, k, n)).unwrap();
                    assert_eq!(forms.len(), dim, "count mismatch at r={r},k={k},n={n}");
                    assert_eq!(linalg::rank_forms(&forms), dim);
                }
            }
        }
    }

    #[test]
    fn degree_zero_full_basis() {
        for n in 1..=3usize {
            for k in 0..=n {
                let sp = spec(Family::P, false, 0, k, n);
                let b = basis_b(&sp).unwrap();
                let (rank, indep) = rank_dim(&b);
                assert!(indep);
                assert_eq!(rank, dimension(&sp).unwrap());
                assert_eq!(rank, crate::combinatorics::binomial(n, k));
            }
        }
    }
}
