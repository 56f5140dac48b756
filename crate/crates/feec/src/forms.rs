//! Barycentric differential forms on a simplex: linear combinations of
//! terms λ^α dλ_σ with cyclotomic coefficients, the Whitney forms, wedge
//! product, exterior derivative, traces, and a reduced normal form that
//! decides equality.

use crate::combinatorics::{
    complement, eps_point, sort_with_sign, Alternator, CombinatoricsError, MultiIndex,
};
use crate::scalar::Cyclo;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormError {
    #[error("index out of range for the simplex")]
    RangeMismatch,
    #[error("forms live on different simplices or have different degrees")]
    DimensionMismatch,
    #[error("not a face of the simplex")]
    NotAFace,
    #[error(transparent)]
    Combinatorics(#[from] CombinatoricsError),
}

/// A face F of the n-simplex T, recorded through the ascending vertex
/// inclusion ι(F,T) ∈ Σ₀(m,n).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Face {
    n: usize,
    iota: Alternator,
}

impl Face {
    pub fn new(n: usize, vertices: Vec<usize>) -> Result<Self, FormError> {
        if vertices.is_empty()
            || vertices.iter().any(|&v| v > n)
            || vertices.windows(2).any(|w| w[0] >= w[1])
        {
            return Err(FormError::NotAFace);
        }
        Ok(Face {
            n,
            iota: Alternator::new(vertices),
        })
    }

    pub fn whole(n: usize) -> Self {
        Face {
            n,
            iota: Alternator::new((0..=n).collect()),
        }
    }

    /// Ambient simplex dimension n.
    pub fn ambient(&self) -> usize {
        self.n
    }

    /// Face dimension m.
    pub fn dim(&self) -> usize {
        self.iota.len() - 1
    }

    pub fn vertices(&self) -> &[usize] {
        self.iota.entries()
    }

    pub fn iota(&self) -> &Alternator {
        &self.iota
    }

    pub fn is_whole(&self) -> bool {
        self.dim() == self.n
    }

    /// ι(F,T)(j) for a local index j of the face.
    pub fn embed(&self, j: usize) -> usize {
        self.iota.entries()[j]
    }

    /// ι⁻¹(i) when vertex i of T belongs to F.
    pub fn local(&self, i: usize) -> Option<usize> {
        self.iota.entries().iter().position(|&v| v == i)
    }

    pub fn contains(&self, other: &Face) -> bool {
        other
            .vertices()
            .iter()
            .all(|&v| self.iota.contains(v))
    }

    /// All faces of the n-simplex with dimension m, lexicographic.
    pub fn enumerate(n: usize, m: usize) -> Vec<Face> {
        crate::combinatorics::sigma0(m as isize, n)
            .into_iter()
            .map(|iota| Face { n, iota })
            .collect()
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.iota)
    }
}

/// A barycentric differential k-form on the n-simplex: a finite sum of
/// terms c·λ^α dλ_σ. Zero coefficients are never stored; mixed polynomial
/// degrees are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Form {
    n: usize,
    k: usize,
    terms: BTreeMap<(MultiIndex, Alternator), Cyclo>,
}

impl Form {
    pub fn zero(n: usize, k: usize) -> Self {
        Form {
            n,
            k,
            terms: BTreeMap::new(),
        }
    }

    /// The single-term form c·λ^α dλ_σ.
    pub fn monomial(
        n: usize,
        alpha: MultiIndex,
        sigma: Alternator,
        coeff: Cyclo,
    ) -> Result<Self, FormError> {
        if alpha.upper() != n || sigma.entries().iter().any(|&e| e > n) {
            return Err(FormError::RangeMismatch);
        }
        let mut form = Form::zero(n, sigma.len());
        form.add_term(alpha, sigma, coeff);
        Ok(form)
    }

    /// The constant function 1.
    pub fn one(n: usize) -> Self {
        Form::monomial(n, MultiIndex::zero(n), Alternator::empty(), Cyclo::one()).unwrap()
    }

    /// The barycentric coordinate λ_i.
    pub fn lambda(n: usize, i: usize) -> Self {
        Form::monomial(n, MultiIndex::unit(n, i), Alternator::empty(), Cyclo::one()).unwrap()
    }

    /// The one-form dλ_i.
    pub fn d_lambda(n: usize, i: usize) -> Self {
        Form::monomial(
            n,
            MultiIndex::zero(n),
            Alternator::new(vec![i]),
            Cyclo::one(),
        )
        .unwrap()
    }

    pub fn simplex_dim(&self) -> usize {
        self.n
    }

    pub fn form_degree(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Alternator, &Cyclo)> {
        self.terms.iter().map(|((a, s), c)| (a, s, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Structural zero: no terms stored. Use `is_zero` for the semantic test.
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.reduce().is_zero()
    }

    pub fn add_term(&mut self, alpha: MultiIndex, sigma: Alternator, coeff: Cyclo) {
        debug_assert_eq!(alpha.upper(), self.n);
        debug_assert_eq!(sigma.len(), self.k);
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry((alpha, sigma));
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() = &*o.get() + &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Form) -> Result<Form, FormError> {
        if self.n != other.n || self.k != other.k {
            return Err(FormError::DimensionMismatch);
        }
        let mut out = self.clone();
        for ((a, s), c) in &other.terms {
            out.add_term(a.clone(), s.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Form) -> Result<Form, FormError> {
        self.add(&other.scale(&Cyclo::from_int(-1)))
    }

    pub fn scale(&self, c: &Cyclo) -> Form {
        if c.is_zero() {
            return Form::zero(self.n, self.k);
        }
        let mut out = Form::zero(self.n, self.k);
        for ((a, s), x) in &self.terms {
            out.terms.insert((a.clone(), s.clone()), x * c);
        }
        out
    }

    pub fn negate(&self) -> Form {
        self.scale(&Cyclo::from_int(-1))
    }

    /// Multiply by the barycentric monomial λ^γ.
    pub fn mul_monomial(&self, gamma: &MultiIndex) -> Form {
        let mut out = Form::zero(self.n, self.k);
        for ((a, s), c) in &self.terms {
            out.add_term(a.plus(gamma), s.clone(), c.clone());
        }
        out
    }

    /// Exterior product; zero whenever the degrees overflow n.
    pub fn wedge(&self, other: &Form) -> Result<Form, FormError> {
        if self.n != other.n {
            return Err(FormError::DimensionMismatch);
        }
        let k = self.k + other.k;
        if k > self.n {
            return Ok(Form::zero(self.n, self.n.min(k)));
        }
        let mut out = Form::zero(self.n, k);
        for ((a1, s1), c1) in &self.terms {
            for ((a2, s2), c2) in &other.terms {
                let concat: Vec<usize> = s1
                    .entries()
                    .iter()
                    .chain(s2.entries())
                    .copied()
                    .collect();
                let Ok((sorted, sign)) = sort_with_sign(&concat) else {
                    continue; // repeated index: the term vanishes
                };
                let coeff = &(c1 * c2) * &Cyclo::from_int(sign);
                out.add_term(a1.plus(a2), sorted, coeff);
            }
        }
        Ok(out)
    }

    /// Exterior derivative: d(λ^α dλ_σ) = Σ_{p∈[α]} α(p) λ^{α−p} dλ_p∧dλ_σ.
    pub fn exterior_derivative(&self) -> Form {
        let mut out = Form::zero(self.n, (self.k + 1).min(self.n + 1));
        for ((a, s), c) in &self.terms {
            for p in a.support() {
                let mut seq = vec![p];
                seq.extend_from_slice(s.entries());
                let Ok((sorted, sign)) = sort_with_sign(&seq) else {
                    continue;
                };
                let coeff = c * &Cyclo::from_int(sign * a.get(p) as i64);
                out.add_term(a.drop(p), sorted, coeff);
            }
        }
        out
    }

    /// Trace onto a face: λ_i and dλ_i survive only for vertices of F and
    /// are relabeled through ι(F,T)⁻¹.
    pub fn trace(&self, face: &Face) -> Result<Form, FormError> {
        if face.ambient() != self.n {
            return Err(FormError::NotAFace);
        }
        let m = face.dim();
        let mut out = Form::zero(m, self.k);
        if self.k > m {
            return Ok(out);
        }
        'term: for ((a, s), c) in &self.terms {
            let mut alpha = MultiIndex::zero(m);
            for i in a.support() {
                match face.local(i) {
                    Some(j) => {
                        for _ in 0..a.get(i) {
                            alpha = alpha.bump(j);
                        }
                    }
                    None => continue 'term, // λ_i restricts to zero on F
                }
            }
            let mut entries = Vec::with_capacity(s.len());
            for &i in s.entries() {
                match face.local(i) {
                    Some(j) => entries.push(j),
                    None => continue 'term, // dλ_i has zero trace on F
                }
            }
            out.add_term(alpha, Alternator::new(entries), c.clone());
        }
        Ok(out)
    }

    /// Canonical coordinates after eliminating λ₀ and dλ₀.
    pub fn reduce(&self) -> ReducedForm {
        let mut out = ReducedForm {
            n: self.n,
            k: self.k,
            coeffs: BTreeMap::new(),
        };
        for ((a, s), c) in &self.terms {
            let polys = expand_lambda0_power(self.n, a);
            let alts = expand_dlambda0(self.n, s);
            for (beta, pc) in &polys {
                for (tau, ac) in &alts {
                    let coeff = &(c * pc) * ac;
                    out.insert(beta.clone(), tau.clone(), coeff);
                }
            }
        }
        out
    }

    pub fn equals(&self, other: &Form) -> Result<bool, FormError> {
        if self.n != other.n || self.k != other.k {
            return Err(FormError::DimensionMismatch);
        }
        Ok(self.reduce() == other.reduce())
    }
}

/// λ₀^{α(0)}·λ^{α|[1:n]} expanded through λ₀ = 1 − λ₁ − … − λₙ into
/// coefficients over monomials avoiding index 0.
fn expand_lambda0_power(n: usize, alpha: &MultiIndex) -> Vec<(MultiIndex, Cyclo)> {
    let a0 = alpha.get(0);
    let mut rest = MultiIndex::zero(n);
    for i in 1..=n {
        for _ in 0..alpha.get(i) {
            rest = rest.bump(i);
        }
    }
    // (1 − Σλᵢ)^{a0}: iterate the product one factor at a time.
    let mut acc: BTreeMap<MultiIndex, Cyclo> = BTreeMap::new();
    acc.insert(rest, Cyclo::one());
    for _ in 0..a0 {
        let mut next: BTreeMap<MultiIndex, Cyclo> = BTreeMap::new();
        for (beta, c) in &acc {
            let mut bump = |idx: Option<usize>, coeff: Cyclo| {
                let key = match idx {
                    Some(i) => beta.bump(i),
                    None => beta.clone(),
                };
                let slot = next.entry(key).or_insert_with(Cyclo::zero);
                *slot = &*slot + &coeff;
            };
            bump(None, c.clone());
            for i in 1..=n {
                bump(Some(i), -(c.clone()));
            }
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    acc.into_iter().collect()
}

/// dλ_σ expanded through dλ₀ = −dλ₁ − … − dλₙ into alternators avoiding 0.
fn expand_dlambda0(n: usize, sigma: &Alternator) -> Vec<(Alternator, Cyclo)> {
    if !sigma.contains(0) {
        return vec![(sigma.clone(), Cyclo::one())];
    }
    let rest = sigma.remove(0);
    let mut out = Vec::new();
    for j in 1..=n {
        if rest.contains(j) {
            continue;
        }
        let mut seq = vec![j];
        seq.extend_from_slice(rest.entries());
        let (sorted, sign) = sort_with_sign(&seq).expect("entries distinct by construction");
        out.push((sorted, Cyclo::from_int(-sign)));
    }
    out
}

/// The Whitney form φ_ρ = Σ_{p∈[ρ]} ε(p, ρ−p) λ_p dλ_{ρ−p} for an ascending
/// index sequence; the general-sequence variant returns ε(ρ)·φ_{sorted},
/// and the zero form when ρ repeats an index.
pub fn whitney(n: usize, rho: &[usize]) -> Result<Form, FormError> {
    if rho.iter().any(|&v| v > n) {
        return Err(FormError::RangeMismatch);
    }
    let k = rho.len().saturating_sub(1);
    let Ok((sorted, sign)) = sort_with_sign(rho) else {
        return Ok(Form::zero(n, k)); // repeated index: φ vanishes
    };
    let mut out = Form::zero(n, k);
    for &p in sorted.entries() {
        let rest = sorted.remove(p);
        let eps = eps_point(p, &rest)?;
        out.add_term(
            MultiIndex::unit(n, p),
            rest,
            Cyclo::from_int(eps * sign),
        );
    }
    Ok(out)
}

/// φ_ρ for an ascending alternator.
pub fn whitney_alt(n: usize, rho: &Alternator) -> Result<Form, FormError> {
    whitney(n, rho.entries())
}

/// λ_σ = Π_{i∈[σ]} λ_i as a multiindex (the indicator exponent of [σ]).
pub fn indicator(n: usize, sigma: &Alternator) -> MultiIndex {
    let mut m = MultiIndex::zero(n);
    for &i in sigma.entries() {
        m = m.bump(i);
    }
    m
}

/// The full Whitney form φ_T of the n-simplex.
pub fn whitney_full(n: usize) -> Form {
    let full = complement(&Alternator::empty(), n).expect("range is valid");
    whitney_alt(n, &full).expect("range is valid")
}

/// Canonical coordinates of a form: coefficients over pairs (λ^β, dλ_τ)
/// whose indices avoid 0. These pairs are a free generating set, so two
/// forms agree on the simplex iff their reductions are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedForm {
    n: usize,
    k: usize,
    coeffs: BTreeMap<(MultiIndex, Alternator), Cyclo>,
}

impl ReducedForm {
    fn insert(&mut self, beta: MultiIndex, tau: Alternator, coeff: Cyclo) {
        if coeff.is_zero() {
            return;
        }
        debug_assert_eq!(beta.get(0), 0);
        debug_assert!(!tau.contains(0));
        let entry = self.coeffs.entry((beta, tau));
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() = &*o.get() + &coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn simplex_dim(&self) -> usize {
        self.n
    }

    pub fn form_degree(&self) -> usize {
        self.k
    }

    pub fn coefficients(&self) -> impl Iterator<Item = (&MultiIndex, &Alternator, &Cyclo)> {
        self.coeffs.iter().map(|((b, t), c)| (b, t, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Leading coefficient in key order; None for the zero form.
    pub fn leading(&self) -> Option<&Cyclo> {
        self.coeffs.values().next()
    }

    /// The form scaled so its leading coefficient is 1; the canonical
    /// representative of the proportionality class. None for zero.
    pub fn normalized(&self) -> Option<ReducedForm> {
        let lead = self.leading()?.clone();
        let inv = lead.inverse().expect("leading coefficient is nonzero");
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = &*c * &inv;
        }
        Some(out)
    }

    /// The factor χ with self = χ·other, when the two are proportional.
    pub fn proportionality(&self, other: &ReducedForm) -> Option<Cyclo> {
        if self.n != other.n || self.k != other.k || self.coeffs.len() != other.coeffs.len() {
            return None;
        }
        if self.is_zero() {
            return None;
        }
        let mut chi: Option<Cyclo> = None;
        for (key, c) in &self.coeffs {
            let d = other.coeffs.get(key)?;
            let ratio = c / d;
            match &chi {
                None => chi = Some(ratio),
                Some(x) if *x == ratio => {}
                Some(_) => return None,
            }
        }
        chi
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    alpha: Vec<usize>,
    sigma: Vec<usize>,
    coeff: Cyclo,
}

#[derive(Serialize, Deserialize)]
struct FormJson {
    n: usize,
    k: usize,
    terms: Vec<TermJson>,
}

impl Serialize for Form {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let terms = self
            .terms
            .iter()
            .map(|((a, s), c)| TermJson {
                alpha: a.exponents().to_vec(),
                sigma: s.entries().to_vec(),
                coeff: c.clone(),
            })
            .collect();
        FormJson {
            n: self.n,
            k: self.k,
            terms,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Form {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = FormJson::deserialize(deserializer)?;
        let mut form = Form::zero(raw.n, raw.k);
        for t in raw.terms {
            if t.alpha.len() != raw.n + 1 || t.sigma.len() != raw.k {
                return Err(D::Error::custom("term does not match the declared (n, k)"));
            }
            if t.sigma.windows(2).any(|w| w[0] >= w[1]) || t.sigma.iter().any(|&v| v > raw.n) {
                return Err(D::Error::custom("malformed alternator"));
            }
            form.add_term(
                MultiIndex::from_exponents(t.alpha),
                Alternator::new(t.sigma),
                t.coeff,
            );
        }
        Ok(form)
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for ((a, s), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            if a.degree() > 0 {
                write!(f, "*l^{}", a)?;
            }
            if !s.is_empty() {
                write!(f, "*dl{}", s)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dl(n: usize, entries: &[usize]) -> Form {
        Form::monomial(
            n,
            MultiIndex::zero(n),
            Alternator::new(entries.to_vec()),
            Cyclo::one(),
        )
        .unwrap()
    }

    #[test]
    fn partition_of_unity_reduces_to_zero() {
        for n in 1..=3 {
            let mut sum = Form::one(n).negate();
            for i in 0..=n {
                sum = sum.add(&Form::lambda(n, i)).unwrap();
            }
            assert!(sum.is_zero());
        }
    }

    #[test]
    fn partition_of_zero_reduces_to_zero() {
        for n in 1..=3 {
            let mut sum = Form::zero(n, 1);
            for i in 0..=n {
                sum = sum.add(&Form::d_lambda(n, i)).unwrap();
            }
            assert!(sum.is_zero());
        }
    }

    #[test]
    fn reduce_lambda0_dlambda0_on_the_interval() {
        // λ₀dλ₀ = (1−λ₁)(−dλ₁) = −dλ₁ + λ₁dλ₁
        let form = Form::monomial(
            1,
            MultiIndex::unit(1, 0),
            Alternator::new(vec![0]),
            Cyclo::one(),
        )
        .unwrap();
        let mut expected = Form::d_lambda(1, 1).negate();
        expected
            .add_term(
                MultiIndex::unit(1, 1),
                Alternator::new(vec![1]),
                Cyclo::one(),
            );
        assert_eq!(form.reduce(), expected.reduce());
        // and the reduction itself matches the hand substitution
        let red = form.reduce();
        assert_eq!(red.len(), 2);
    }

    #[test]
    fn whitney_edge() {
        let phi = whitney(1, &[0, 1]).unwrap();
        let expected = Form::lambda(1, 0)
            .wedge(&Form::d_lambda(1, 1))
            .unwrap()
            .sub(&Form::lambda(1, 1).wedge(&Form::d_lambda(1, 0)).unwrap())
            .unwrap();
        assert!(phi.equals(&expected).unwrap());
        // reversed order flips the sign; repeated index vanishes
        let rev = whitney(1, &[1, 0]).unwrap();
        assert!(rev.equals(&phi.negate()).unwrap());
        assert!(whitney(1, &[0, 0]).unwrap().is_empty());
    }

    #[test]
    fn wedge_antisymmetry() {
        let a = dl(2, &[0]);
        let b = dl(2, &[1]);
        let ab = a.wedge(&b).unwrap();
        let ba = b.wedge(&a).unwrap();
        assert_eq!(ab, dl(2, &[0, 1]));
        assert_eq!(ba, dl(2, &[0, 1]).negate());
    }

    #[test]
    fn exterior_derivative_examples() {
        let d_l0 = Form::lambda(2, 0).exterior_derivative();
        assert!(d_l0.equals(&Form::d_lambda(2, 0)).unwrap());

        let phi = whitney(1, &[0, 1]).unwrap();
        let expected = dl(1, &[0, 1]).scale(&Cyclo::from_int(2));
        // On the interval dλ₀∧dλ₁ has top degree; compare after reduce.
        assert!(phi.exterior_derivative().equals(&expected).unwrap());

        let two_form = dl(2, &[0, 1]);
        assert!(two_form.exterior_derivative().is_zero());
    }

    #[test]
    fn trace_examples() {
        let edge = Face::new(2, vec![0, 1]).unwrap();
        assert!(Form::lambda(2, 2).trace(&edge).unwrap().is_zero());
        assert!(Form::d_lambda(2, 2).trace(&edge).unwrap().is_zero());
        let phi = whitney(2, &[0, 1]).unwrap();
        let traced = phi.trace(&edge).unwrap();
        assert!(traced.equals(&whitney(1, &[0, 1]).unwrap()).unwrap());
        // relabeling: trace of φ_{(1,2)} onto edge {v₁,v₂} is φ_{(0,1)}
        let edge12 = Face::new(2, vec![1, 2]).unwrap();
        let traced = whitney(2, &[1, 2]).unwrap().trace(&edge12).unwrap();
        assert!(traced.equals(&whitney(1, &[0, 1]).unwrap()).unwrap());
    }

    #[test]
    fn equality_through_partitions() {
        let lhs = Form::lambda(1, 0).add(&Form::lambda(1, 1)).unwrap();
        assert!(lhs.equals(&Form::one(1)).unwrap());
        let lhs = Form::d_lambda(1, 0);
        assert!(lhs.equals(&Form::d_lambda(1, 1).negate()).unwrap());
        assert!(!Form::d_lambda(2, 0).equals(&Form::d_lambda(2, 1)).unwrap());
    }

    #[test]
    fn proportionality_detection() {
        let a = whitney(2, &[0, 2]).unwrap().reduce();
        let b = whitney(2, &[0, 2])
            .unwrap()
            .scale(&Cyclo::xi3())
            .reduce();
        assert_eq!(b.proportionality(&a), Some(Cyclo::xi3()));
        let c = whitney(2, &[0, 1]).unwrap().reduce();
        assert_eq!(c.proportionality(&a), None);
    }

    #[test]
    fn form_json_round_trip() {
        let phi = whitney(2, &[0, 2]).unwrap().scale(&Cyclo::i());
        let text = serde_json::to_string(&phi).unwrap();
        let back: Form = serde_json::from_str(&text).unwrap();
        assert_eq!(phi, back);
    }
}
