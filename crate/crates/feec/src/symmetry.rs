//! The pullback action of the simplicial symmetry group on barycentric
//! forms, and the invariance certifier: decide whether a finite set of
//! forms is mapped to itself by every vertex permutation up to nonzero
//! scalars, and emit a witness that can be re-checked without search.

use crate::combinatorics::{all_permutations, sort_with_sign, MultiIndex, Permutation};
use crate::forms::{Form, ReducedForm};
use crate::scalar::Cyclo;
use crate::spaces::FormSet;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SymmetryError {
    #[error("permutation does not act on the simplex of the form")]
    RangeMismatch,
    #[error("set contains the zero form at position {0}")]
    ZeroElement(usize),
    #[error("not invariant: generator {generator} moves element {element} outside the set{detail}")]
    NotInvariant {
        generator: Permutation,
        element: usize,
        detail: String,
    },
}

/// Scalar field mode for invariance: ℝ demands conjugation-fixed scalars.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Mode {
    R,
    C,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::R => write!(f, "R"),
            Mode::C => write!(f, "C"),
        }
    }
}

/// Per-generator matching data: the pullback of element i is χᵢ times
/// element τ(i).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorMatch {
    pub tau: Vec<usize>,
    pub chi: Vec<Cyclo>,
}

/// A monomial-matrix witness of invariance: for each generator g of the
/// symmetry group, a permutation τ of the set and nonzero scalars χ with
/// S_g^* ωᵢ = χᵢ ω_{τ(i)}, all verified exactly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceCertificate {
    pub generators: Vec<Permutation>,
    pub matches: Vec<GeneratorMatch>,
    pub real: bool,
}

/// Pullback S_π^* of a form along the simplex automorphism induced by the
/// vertex permutation π: λᵢ ↦ λ_{π(i)}, dλ_σ ↦ ε(πσ)·dλ_{sort(πσ)}.
pub fn pullback(omega: &Form, pi: &Permutation) -> Result<Form, SymmetryError> {
    let n = omega.simplex_dim();
    if pi.upper() != n {
        return Err(SymmetryError::RangeMismatch);
    }
    let mut out = Form::zero(n, omega.form_degree());
    for (alpha, s, c) in omega.terms() {
        let mut new_alpha = MultiIndex::zero(n);
        for i in alpha.support() {
            for _ in 0..alpha.get(i) {
                new_alpha = new_alpha.bump(pi.apply(i));
            }
        }
        let mapped: Vec<usize> = s.entries().iter().map(|&i| pi.apply(i)).collect();
        let (sorted, sign) = sort_with_sign(&mapped).expect("π is injective");
        out.add_term(new_alpha, sorted, c * &Cyclo::from_int(sign));
    }
    Ok(out)
}

/// Whether to check only the generating set {(0 1), (0 1 … n)} or, as a
/// small-n safety oracle, the entire group.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorScope {
    Generators,
    FullGroup,
}

/// Checks K-invariance of a set against the default generators.
pub fn check_invariance(
    set: &FormSet,
    mode: Mode,
) -> Result<InvarianceCertificate, SymmetryError> {
    check_invariance_with(
        set,
        mode,
        &crate::combinatorics::symmetry_generators(set.simplex_dim()),
    )
}

/// Checks K-invariance against the full group; exponential, n ≤ 3 sizes only.
pub fn check_invariance_full_group(
    set: &FormSet,
    mode: Mode,
) -> Result<InvarianceCertificate, SymmetryError> {
    check_invariance_with(set, mode, &all_permutations(set.simplex_dim()))
}

/// Checks K-invariance against an explicit generator list.
///
/// Elements that are proportional to each other are matched class-by-class:
/// a pullback maps a proportionality class into a single class, and the
/// induced map on classes is invertible, so pairing members in index order
/// always produces a valid (deterministic) certificate permutation.
pub fn check_invariance_with(
    set: &FormSet,
    mode: Mode,
    generators: &[Permutation],
) -> Result<InvarianceCertificate, SymmetryError> {
    let reduced: Vec<ReducedForm> = set.iter().map(Form::reduce).collect();
    for (i, r) in reduced.iter().enumerate() {
        if r.is_zero() {
            return Err(SymmetryError::ZeroElement(i));
        }
    }
    // proportionality classes keyed by normalized reduction
    let mut classes: BTreeMap<ReducedForm, Vec<usize>> = BTreeMap::new();
    for (i, r) in reduced.iter().enumerate() {
        classes
            .entry(r.normalized().expect("element is nonzero"))
            .or_default()
            .push(i);
    }
    let mut matches = Vec::new();
    let mut real = true;
    for g in generators {
        let mut tau = vec![usize::MAX; set.len()];
        let mut chi = vec![Cyclo::zero(); set.len()];
        for (key, members) in &classes {
            let image = pullback(&set.forms()[members[0]], g)?.reduce();
            let image_key = image.normalized().expect("pullback of nonzero is nonzero");
            let Some(targets) = classes.get(&image_key) else {
                return Err(SymmetryError::NotInvariant {
                    generator: g.clone(),
                    element: members[0],
                    detail: ": no proportional element".to_string(),
                });
            };
            if targets.len() != members.len() {
                // The action maps lines bijectively, so a multiplicity skew
                // between a class and its image class rules out any
                // element-wise permutation witness.
                return Err(SymmetryError::NotInvariant {
                    generator: g.clone(),
                    element: members[0],
                    detail: format!(
                        ": proportionality class of size {} maps onto one of size {}",
                        members.len(),
                        targets.len()
                    ),
                });
            }
            let _ = key;
            for (&i, &j) in members.iter().zip(targets.iter()) {
                let image_i = pullback(&set.forms()[i], g)?.reduce();
                let factor = image_i
                    .proportionality(&reduced[j])
                    .expect("class members are proportional");
                if mode == Mode::R && !factor.is_real() {
                    return Err(SymmetryError::NotInvariant {
                        generator: g.clone(),
                        element: i,
                        detail: format!(": scalar {} is not real", factor),
                    });
                }
                if !factor.is_real() {
                    real = false;
                }
                tau[i] = j;
                chi[i] = factor;
            }
        }
        matches.push(GeneratorMatch { tau, chi });
    }
    Ok(InvarianceCertificate {
        generators: generators.to_vec(),
        matches,
        real,
    })
}

/// Independent re-check of a certificate: no search, just the defining
/// identities S_g^* ωᵢ = χᵢ ω_{τ(i)}.
pub fn verify_certificate(set: &FormSet, cert: &InvarianceCertificate) -> bool {
    if cert.generators.len() != cert.matches.len() {
        return false;
    }
    let mut all_real = true;
    for (g, m) in cert.generators.iter().zip(&cert.matches) {
        if m.tau.len() != set.len() || m.chi.len() != set.len() {
            return false;
        }
        let mut seen = vec![false; set.len()];
        for (i, (&j, chi)) in m.tau.iter().zip(&m.chi).enumerate() {
            if j >= set.len() || seen[j] || chi.is_zero() {
                return false;
            }
            seen[j] = true;
            if !chi.is_real() {
                all_real = false;
            }
            let Ok(image) = pullback(&set.forms()[i], g) else {
                return false;
            };
            let expected = set.forms()[j].scale(chi);
            match image.equals(&expected) {
                Ok(true) => {}
                _ => return false,
            }
        }
    }
    if cert.real && !all_real {
        return false;
    }
    true
}

/// The order-divisibility obstruction: |Perm(n)| = (n+1)! must divide the
/// order 2^d·d! of the group of d×d signed permutation matrices for a
/// faithful real monomial realization of dimension d to exist.
pub fn obstruction_order(d: u32, n: u32) -> (u128, u128, bool) {
    let fact = |m: u32| -> u128 { (1..=m as u128).product::<u128>().max(1) };
    let group_order = fact(n + 1);
    let signed_order = (1u128 << d) * fact(d);
    (group_order, signed_order, signed_order % group_order == 0)
}
