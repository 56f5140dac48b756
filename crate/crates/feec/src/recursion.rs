//! Recursive construction of invariant bases: constant base catalogs on
//! low-dimensional simplices, degree-lowering through the canonical
//! isomorphisms, assembly over faces through the extension operators, and
//! a structural predictor for when the construction stays real.
//!
//! Every constructed element carries a symbolic spanning representation
//! (either monomial terms λ^α dλ_σ or Whitney terms λ^α φ_ρ, always of
//! uniform polynomial degree), so the degree-lowering and face-transport
//! steps act termwise without any linear solves; correctness is enforced
//! by rank, dimension-count, and vanishing-trace assertions at every
//! recursion node, and cross-checked against the solve-based operator
//! implementations in the tests.

use crate::combinatorics::{complement, eps_split, Alternator, MultiIndex, Permutation};
use crate::extension::ExtError;
use crate::forms::{indicator, whitney_alt, Face, Form, FormError};
use crate::isomorphisms::IsoError;
use crate::linalg::independent;
use crate::scalar::Cyclo;
use crate::spaces::{binomial_dim, Family, FormSet, SpaceSpec, SpacesError};
use crate::symmetry::{
    check_invariance, verify_certificate, InvarianceCertificate, Mode, SymmetryError,
};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::rc::Rc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum RecursionError {
    #[error("no constant monomial basis exists for k={k} on the {n}-simplex")]
    NotMonomial { n: usize, k: usize },
    #[error("constructed set for {spec} is not a basis: got {got} independent of {expected}")]
    RankDeficient {
        spec: SpaceSpec,
        got: usize,
        expected: usize,
    },
    #[error("degree {r} exceeds the configured cap {cap} (FEEC_MAX_DEGREE)")]
    DegreeCapped { r: i64, cap: i64 },
    #[error("base catalog entry for (n={n}, k={k}) failed verification")]
    CatalogInvalid { n: usize, k: usize },
    #[error(transparent)]
    Spaces(#[from] SpacesError),
    #[error(transparent)]
    Form(#[from] FormError),
    #[error(transparent)]
    Iso(#[from] IsoError),
    #[error(transparent)]
    Ext(#[from] ExtError),
    #[error(transparent)]
    Symmetry(#[from] SymmetryError),
}

/// A verified constant basis of P₀Λᵏ(Tⁿ) together with its strongest
/// invariance mode and a checked certificate.
#[derive(Debug, Clone)]
pub struct BaseCatalogEntry {
    pub n: usize,
    pub k: usize,
    pub set: FormSet,
    pub mode: Mode,
    pub certificate: InvarianceCertificate,
}

/// One step of a provenance chain, outermost last. Replaying the chain
/// through the solve-based operators must reproduce the element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Step {
    Base { n: usize, k: usize, index: usize },
    IsoI { r: i64 },
    IsoJInverse { r: i64 },
    ExtMinus { face: Face, r: i64 },
    ExtFull { face: Face, r: i64 },
}

/// Symbolic spanning representation of a constructed element.
#[derive(Debug, Clone)]
enum Rep {
    /// Σ c·λ^α dλ_σ, all α of one degree.
    Monomial(Form),
    /// Σ c·λ^α φ_ρ, all α of one degree.
    Whitney(BTreeMap<(MultiIndex, Alternator), Cyclo>),
}

#[derive(Debug, Clone)]
struct AElement {
    form: Form,
    rep: Rep,
    provenance: Vec<Step>,
}

#[derive(Debug)]
struct ABasis {
    elements: Vec<AElement>,
}

/// A constructed basis with per-element provenance.
#[derive(Debug, Clone, Serialize)]
pub struct ABasisResult {
    pub spec: SpaceSpec,
    pub set: FormSet,
    pub provenance: Vec<Vec<Step>>,
}

/// Verdict of the structural invariance predictor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Prediction {
    R,
    COnly,
    Unsupported,
}

impl std::fmt::Display for Prediction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Prediction::R => write!(f, "R"),
            Prediction::COnly => write!(f, "C_only"),
            Prediction::Unsupported => write!(f, "unsupported"),
        }
    }
}

/// Strongest invariance mode achieved by a constructed basis, with the
/// verified certificate that witnesses it.
#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub mode: Option<Mode>,
    pub certificate: Option<InvarianceCertificate>,
}

impl Classification {
    pub fn as_prediction(&self) -> Prediction {
        match self.mode {
            Some(Mode::R) => Prediction::R,
            Some(Mode::C) => Prediction::COnly,
            None => Prediction::Unsupported,
        }
    }
}

fn catalog_forms(n: usize, k: usize) -> Option<(Vec<Form>, Mode)> {
    let dl = |i: usize| Form::d_lambda(n, i);
    if k == 0 {
        return Some((vec![Form::one(n)], Mode::R));
    }
    if k == n {
        let top = Form::monomial(
            n,
            MultiIndex::zero(n),
            Alternator::new((1..=n).collect()),
            Cyclo::one(),
        )
        .expect("ascending indices");
        return Some((vec![top], Mode::R));
    }
    match (n, k) {
        (2, 1) => {
            let xi = Cyclo::xi3();
            let xi2 = &xi * &xi;
            let phi0 = dl(0)
                .add(&dl(1).scale(&xi))
                .unwrap()
                .add(&dl(2).scale(&xi2))
                .unwrap();
            let phi1 = dl(0)
                .add(&dl(1).scale(&xi2))
                .unwrap()
                .add(&dl(2).scale(&xi))
                .unwrap();
            Some((vec![phi0, phi1], Mode::C))
        }
        (3, 1) => Some((psi_basis(), Mode::R)),
        (3, 2) => {
            let psi = psi_basis();
            Some((
                vec![
                    psi[0].wedge(&psi[1]).unwrap(),
                    psi[0].wedge(&psi[2]).unwrap(),
                    psi[1].wedge(&psi[2]).unwrap(),
                ],
                Mode::R,
            ))
        }
        (4, 2) => Some((zeta_basis(), Mode::C)),
        _ => None,
    }
}

/// The three sign-pattern one-forms on the tetrahedron: weights
/// (+,−,+,−), (+,+,−,−), (+,−,−,+) on dλ₀..dλ₃.
fn psi_basis() -> Vec<Form> {
    let signed = |signs: [i64; 4]| {
        let mut f = Form::zero(3, 1);
        for (i, s) in signs.into_iter().enumerate() {
            f = f.add(&Form::d_lambda(3, i).scale(&Cyclo::from_int(s))).unwrap();
        }
        f
    };
    vec![
        signed([1, -1, 1, -1]),
        signed([1, 1, -1, -1]),
        signed([1, -1, -1, 1]),
    ]
}

/// The six constant two-forms on the 4-simplex: ζ₀ explicit, ζ₁ = S_τ^*ζ₀
/// for τ = (0 1), and ζ_{j+1} = S_κ^*ζ_j for the five-cycle κ.
fn zeta_basis() -> Vec<Form> {
    let i = Cyclo::i();
    let dll = |a: usize, b: usize| {
        Form::monomial(4, MultiIndex::zero(4), Alternator::new(vec![a, b]), Cyclo::one()).unwrap()
    };
    let term = |a, b, c: Cyclo| dll(a, b).scale(&c);
    let mut zeta0 = Form::zero(4, 2);
    for (a, b, c) in [
        (0, 1, Cyclo::one()),
        (0, 2, i.clone()),
        (0, 3, -&i),
        (0, 4, -&Cyclo::one()),
        (1, 2, Cyclo::one()),
        (1, 3, i.clone()),
        (1, 4, -&i),
        (2, 3, Cyclo::one()),
        (2, 4, i.clone()),
        (3, 4, Cyclo::one()),
    ] {
        zeta0 = zeta0.add(&term(a, b, c)).unwrap();
    }
    let tau = Permutation::transposition(4, 0, 1);
    let kappa = Permutation::full_cycle(4);
    let mut out = vec![zeta0];
    out.push(crate::symmetry::pullback(&out[0], &tau).unwrap());
    for j in 1..5 {
        out.push(crate::symmetry::pullback(&out[j], &kappa).unwrap());
    }
    out
}

/// The advertised invariance mode of the base catalog, as pure data for
/// the structural predictor.
fn catalog_mode(n: usize, k: usize) -> Prediction {
    if k == 0 || k == n {
        Prediction::R
    } else {
        match (n, k) {
            (2, 1) | (4, 2) => Prediction::COnly,
            (3, 1) | (3, 2) => Prediction::R,
            _ => Prediction::Unsupported,
        }
    }
}

/// Constant basis of P₀Λᵏ(Tⁿ), verified (rank and invariance certificate)
/// at every call; errors with NotMonomial outside the catalog.
pub fn base_constant_basis(n: usize, k: usize) -> Result<BaseCatalogEntry, RecursionError> {
    let (forms, mode) = catalog_forms(n, k).ok_or(RecursionError::NotMonomial { n, k })?;
    let set = FormSet::collect(n, k, forms)?;
    let expected = binomial_dim(&SpaceSpec::new(Family::P, false, 0, k, n));
    if set.len() != expected || !independent(set.forms()) {
        return Err(RecursionError::CatalogInvalid { n, k });
    }
    let certificate = check_invariance(&set, mode)?;
    if !verify_certificate(&set, &certificate) {
        return Err(RecursionError::CatalogInvalid { n, k });
    }
    Ok(BaseCatalogEntry {
        n,
        k,
        set,
        mode,
        certificate,
    })
}

fn realize_whitney(
    n: usize,
    k: usize,
    terms: &BTreeMap<(MultiIndex, Alternator), Cyclo>,
) -> Result<Form, RecursionError> {
    let mut out = Form::zero(n, k);
    for ((alpha, rho), c) in terms {
        let phi = whitney_alt(n, rho)?;
        out = out.add(&phi.mul_monomial(alpha).scale(c))?;
    }
    Ok(out)
}

/// Termwise degree-raising map: λ^α dλ_σ ↦ ε(σ,σᶜ)·λ^{α+1_σ}·φ_{σᶜ}.
fn iso_i_rep(form: &Form) -> BTreeMap<(MultiIndex, Alternator), Cyclo> {
    let n = form.simplex_dim();
    let mut out: BTreeMap<(MultiIndex, Alternator), Cyclo> = BTreeMap::new();
    for (alpha, s, c) in form.terms() {
        let sc = complement(s, n).expect("term indices are in range");
        let sign = eps_split(s, &sc).expect("σ and σᶜ are disjoint");
        let key = (alpha.plus(&indicator(n, s)), sc);
        let add = c * &Cyclo::from_int(sign);
        let entry = out.entry(key).or_insert_with(Cyclo::zero);
        *entry = &*entry + &add;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Termwise inverse of the second isomorphism:
/// λ^α φ_ρ ↦ ε(ρᶜ,ρ)·λ^{α+1_ρ}·dλ_{ρᶜ}.
fn iso_j_inv_rep(
    n: usize,
    k_out: usize,
    terms: &BTreeMap<(MultiIndex, Alternator), Cyclo>,
) -> Result<Form, RecursionError> {
    let mut out = Form::zero(n, k_out);
    for ((alpha, rho), c) in terms {
        let s = complement(rho, n).expect("ρ is in range");
        let sign = eps_split(&s, rho).expect("ρᶜ and ρ are disjoint");
        out.add_term(
            alpha.plus(&indicator(n, rho)),
            s,
            c * &Cyclo::from_int(sign),
        );
    }
    Ok(out)
}

fn transport_multiindex(face: &Face, alpha: &MultiIndex) -> MultiIndex {
    let mut out = MultiIndex::zero(face.ambient());
    for j in alpha.support() {
        for _ in 0..alpha.get(j) {
            out = out.bump(face.embed(j));
        }
    }
    out
}

fn transport_alternator(face: &Face, rho: &Alternator) -> Alternator {
    Alternator::new(rho.entries().iter().map(|&j| face.embed(j)).collect())
}

/// Termwise face transport of Whitney terms: λ^α φ_ρ ↦ λ^{α̃} φ_{ι∘ρ}.
fn ext_minus_rep(
    face: &Face,
    terms: &BTreeMap<(MultiIndex, Alternator), Cyclo>,
) -> BTreeMap<(MultiIndex, Alternator), Cyclo> {
    terms
        .iter()
        .map(|((alpha, rho), c)| {
            (
                (
                    transport_multiindex(face, alpha),
                    transport_alternator(face, rho),
                ),
                c.clone(),
            )
        })
        .collect()
}

/// Termwise face transport of monomial terms through the Ψ factors:
/// λ^α dλ_σ ↦ λ^{α̃} ⋀_{i∈ι∘σ} (dλᵢ − (α̃ᵢ/r)·Σ_{j∈F} dλⱼ).
fn ext_full_rep(face: &Face, form: &Form, r: i64) -> Result<Form, RecursionError> {
    if face.is_whole() {
        return Ok(form.clone());
    }
    let n = face.ambient();
    let mut face_sum = Form::zero(n, 1);
    for &j in face.vertices() {
        face_sum = face_sum.add(&Form::d_lambda(n, j))?;
    }
    let mut out = Form::zero(n, form.form_degree());
    for (alpha, s, c) in form.terms() {
        let alpha_t = transport_multiindex(face, alpha);
        let mut product = Form::monomial(n, alpha_t.clone(), Alternator::empty(), c.clone())?;
        for &j in s.entries() {
            let i = face.embed(j);
            let weight = Cyclo::from_ratio(alpha_t.get(i) as i64, r);
            let psi = Form::d_lambda(n, i).sub(&face_sum.scale(&weight))?;
            product = product.wedge(&psi)?;
        }
        out = out.add(&product)?;
    }
    Ok(out)
}

/// Recursive builder with memoized sub-results. One builder instance can
/// serve many queries; sub-bases are shared across them.
pub struct Builder {
    memo: BTreeMap<SpaceSpec, Rc<ABasis>>,
    predict_memo: BTreeMap<SpaceSpec, Prediction>,
    max_degree: Option<i64>,
}

impl Default for Builder {
    fn default() -> Self {
        Self::new()
    }
}

impl Builder {
    /// Reads the optional degree cap from the FEEC_MAX_DEGREE environment
    /// variable (a CI safety valve).
    pub fn new() -> Self {
        let max_degree = std::env::var("FEEC_MAX_DEGREE")
            .ok()
            .and_then(|v| v.parse::<i64>().ok());
        Builder {
            memo: BTreeMap::new(),
            predict_memo: BTreeMap::new(),
            max_degree,
        }
    }

    /// Constructs the invariant basis for the space, with provenance.
    pub fn build(&mut self, spec: &SpaceSpec) -> Result<ABasisResult, RecursionError> {
        let basis = self.build_inner(spec)?;
        let set = FormSet::collect(
            spec.n,
            spec.k,
            basis.elements.iter().map(|e| e.form.clone()).collect(),
        )?;
        Ok(ABasisResult {
            spec: *spec,
            set,
            provenance: basis.elements.iter().map(|e| e.provenance.clone()).collect(),
        })
    }

    fn build_inner(&mut self, spec: &SpaceSpec) -> Result<Rc<ABasis>, RecursionError> {
        if let Some(hit) = self.memo.get(spec) {
            return Ok(hit.clone());
        }
        if let Some(cap) = self.max_degree {
            if spec.r > cap {
                return Err(RecursionError::DegreeCapped { r: spec.r, cap });
            }
        }
        let elements = if binomial_dim(spec) == 0 {
            Vec::new()
        } else {
            match (spec.family, spec.ring) {
                (Family::P, false) if spec.r == 0 => {
                    let entry = base_constant_basis(spec.n, spec.k)?;
                    entry
                        .set
                        .iter()
                        .enumerate()
                        .map(|(index, f)| AElement {
                            form: f.clone(),
                            rep: Rep::Monomial(f.clone()),
                            provenance: vec![Step::Base {
                                n: spec.n,
                                k: spec.k,
                                index,
                            }],
                        })
                        .collect()
                }
                (_, false) => self.build_plain_union(spec)?,
                (Family::PMinus, true) => {
                    // I: P_{r−n+k−1}Λ^{n−k} → P̊⁻ᵣΛᵏ
                    let r_sub = spec.r - spec.n as i64 + spec.k as i64 - 1;
                    let sub_spec = SpaceSpec::new(Family::P, false, r_sub, spec.n - spec.k, spec.n);
                    let sub = self.build_inner(&sub_spec)?;
                    let mut out = Vec::with_capacity(sub.elements.len());
                    for el in &sub.elements {
                        let Rep::Monomial(form) = &el.rep else {
                            unreachable!("plain P elements carry monomial reps")
                        };
                        let terms = iso_i_rep(form);
                        let realized = realize_whitney(spec.n, spec.k, &terms)?;
                        let mut provenance = el.provenance.clone();
                        provenance.push(Step::IsoI { r: r_sub });
                        out.push(AElement {
                            form: realized,
                            rep: Rep::Whitney(terms),
                            provenance,
                        });
                    }
                    out
                }
                (Family::P, true) => {
                    // J⁻¹: P⁻_{r−n+k}Λ^{n−k} → P̊ᵣΛᵏ
                    let r_sub = spec.r - spec.n as i64 + spec.k as i64;
                    let sub_spec =
                        SpaceSpec::new(Family::PMinus, false, r_sub, spec.n - spec.k, spec.n);
                    let sub = self.build_inner(&sub_spec)?;
                    let mut out = Vec::with_capacity(sub.elements.len());
                    for el in &sub.elements {
                        let Rep::Whitney(terms) = &el.rep else {
                            unreachable!("plain P⁻ elements carry Whitney reps")
                        };
                        let realized = iso_j_inv_rep(spec.n, spec.k, terms)?;
                        let mut provenance = el.provenance.clone();
                        provenance.push(Step::IsoJInverse { r: r_sub - 1 });
                        out.push(AElement {
                            form: realized.clone(),
                            rep: Rep::Monomial(realized),
                            provenance,
                        });
                    }
                    out
                }
            }
        };
        self.validate(spec, &elements)?;
        let basis = Rc::new(ABasis { elements });
        self.memo.insert(*spec, basis.clone());
        Ok(basis)
    }

    fn build_plain_union(&mut self, spec: &SpaceSpec) -> Result<Vec<AElement>, RecursionError> {
        let n = spec.n;
        let mut out = Vec::new();
        for m in spec.k..=n {
            let local_spec = SpaceSpec::new(spec.family, true, spec.r, spec.k, m);
            if binomial_dim(&local_spec) == 0 {
                continue;
            }
            let sub = self.build_inner(&local_spec)?;
            for face in Face::enumerate(n, m) {
                for el in &sub.elements {
                    let (form, rep, step) = match (&el.rep, spec.family) {
                        (Rep::Whitney(terms), Family::PMinus) => {
                            let moved = ext_minus_rep(&face, terms);
                            (
                                realize_whitney(n, spec.k, &moved)?,
                                Rep::Whitney(moved),
                                Step::ExtMinus {
                                    face: face.clone(),
                                    r: spec.r,
                                },
                            )
                        }
                        (Rep::Monomial(form), Family::P) => {
                            let moved = ext_full_rep(&face, form, spec.r)?;
                            (
                                moved.clone(),
                                Rep::Monomial(moved),
                                Step::ExtFull {
                                    face: face.clone(),
                                    r: spec.r,
                                },
                            )
                        }
                        _ => unreachable!("rep variant always matches the family"),
                    };
                    let mut provenance = el.provenance.clone();
                    provenance.push(step);
                    out.push(AElement {
                        form,
                        rep,
                        provenance,
                    });
                }
            }
        }
        Ok(out)
    }

    /// Rank, count, and (for ring spaces) vanishing-trace assertions. With
    /// the syntactic degree bounds of the symbolic representations these
    /// certify that the elements form a basis of the intended space.
    fn validate(&self, spec: &SpaceSpec, elements: &[AElement]) -> Result<(), RecursionError> {
        let expected = binomial_dim(spec);
        let forms: Vec<Form> = elements.iter().map(|e| e.form.clone()).collect();
        if elements.len() != expected || !independent(&forms) {
            let got = crate::linalg::rank_forms(&forms);
            return Err(RecursionError::RankDeficient {
                spec: *spec,
                got,
                expected,
            });
        }
        if spec.ring && spec.n > 0 {
            for facet in Face::enumerate(spec.n, spec.n - 1) {
                for f in &forms {
                    if !f.trace(&facet)?.is_zero() {
                        return Err(RecursionError::RankDeficient {
                            spec: *spec,
                            got: elements.len(),
                            expected,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Structural predictor: walks the same recursion as `build` but only
    /// propagates the invariance mode of the base cases it would reach.
    /// Empty spaces are vacuously real-invariant.
    pub fn predict_r_invariance(&mut self, spec: &SpaceSpec) -> Prediction {
        if let Some(&hit) = self.predict_memo.get(spec) {
            return hit;
        }
        let verdict = if binomial_dim(spec) == 0 {
            Prediction::R
        } else {
            match (spec.family, spec.ring) {
                (Family::P, false) if spec.r == 0 => catalog_mode(spec.n, spec.k),
                (_, false) => {
                    let mut verdict = Prediction::R;
                    for m in spec.k..=spec.n {
                        let local = SpaceSpec::new(spec.family, true, spec.r, spec.k, m);
                        if binomial_dim(&local) == 0 {
                            continue;
                        }
                        match self.predict_r_invariance(&local) {
                            Prediction::Unsupported => {
                                verdict = Prediction::Unsupported;
                                break;
                            }
                            Prediction::COnly => verdict = Prediction::COnly,
                            Prediction::R => {}
                        }
                    }
                    verdict
                }
                (Family::PMinus, true) => {
                    let r_sub = spec.r - spec.n as i64 + spec.k as i64 - 1;
                    self.predict_r_invariance(&SpaceSpec::new(
                        Family::P,
                        false,
                        r_sub,
                        spec.n - spec.k,
                        spec.n,
                    ))
                }
                (Family::P, true) => {
                    let r_sub = spec.r - spec.n as i64 + spec.k as i64;
                    self.predict_r_invariance(&SpaceSpec::new(
                        Family::PMinus,
                        false,
                        r_sub,
                        spec.n - spec.k,
                        spec.n,
                    ))
                }
            }
        };
        self.predict_memo.insert(*spec, verdict);
        verdict
    }
}

/// One-shot convenience wrapper around `Builder::build`.
pub fn build_a_basis(spec: &SpaceSpec) -> Result<ABasisResult, RecursionError> {
    Builder::new().build(spec)
}

/// One-shot convenience wrapper around `Builder::predict_r_invariance`.
pub fn predict_r_invariance(spec: &SpaceSpec) -> Prediction {
    Builder::new().predict_r_invariance(spec)
}

/// Runs the invariance check in real mode first, then complex mode, and
/// reports the strongest mode that holds with its verified certificate.
pub fn classify_basis(result: &ABasisResult) -> Classification {
    for mode in [Mode::R, Mode::C] {
        if let Ok(cert) = check_invariance(&result.set, mode) {
            debug_assert!(verify_certificate(&result.set, &cert));
            return Classification {
                mode: Some(mode),
                certificate: Some(cert),
            };
        }
    }
    Classification {
        mode: None,
        certificate: None,
    }
}

/// Re-evaluates a provenance chain through the solve-based operators,
/// reproducing the element it certifies.
pub fn replay(provenance: &[Step]) -> Result<Form, RecursionError> {
    let mut steps = provenance.iter();
    let Some(Step::Base { n, k, index }) = steps.next() else {
        return Err(RecursionError::CatalogInvalid { n: 0, k: 0 });
    };
    let entry = base_constant_basis(*n, *k)?;
    let mut current = entry.set.forms()[*index].clone();
    for step in steps {
        current = match step {
            Step::Base { .. } => unreachable!("base step only opens a chain"),
            Step::IsoI { r } => crate::isomorphisms::iso_i(&current, *r)?,
            Step::IsoJInverse { r } => crate::isomorphisms::iso_j_inverse(&current, *r)?,
            Step::ExtMinus { face, r } => crate::extension::ext_minus(face, &current, *r)?,
            Step::ExtFull { face, r } => crate::extension::ext_full(face, &current, *r)?,
        };
    }
    Ok(current)
}
