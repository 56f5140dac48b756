//! Extension operators transporting vanishing-trace forms from a face to
//! the ambient simplex, inverse to the trace, plus the geometric
//! decomposition assembling whole-space bases from per-face ring bases.

use crate::forms::{whitney_alt, Face, Form, FormError};
use crate::linalg::Solver;
use crate::scalar::Cyclo;
use crate::spaces::{
    basis_b, dimension, pminus_ring_basis_generators, ring_p_generators, Family, FormSet,
    SpaceSpec, SpacesError,
};
use crate::combinatorics::{Alternator, MultiIndex, Permutation};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ExtError {
    #[error("form does not live on the given face")]
    WrongSimplex,
    #[error("input form lies outside the ring space of the face")]
    NotInDomain,
    #[error("the full-family extension needs polynomial degree at least 1")]
    ZeroDegree,
    #[error("decomposition union is rank deficient: rank {rank}, expected {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error(transparent)]
    Spaces(#[from] SpacesError),
    #[error(transparent)]
    Form(#[from] FormError),
}

/// Transports a local multiindex on the face to the ambient simplex.
fn transport_multiindex(face: &Face, alpha: &MultiIndex) -> MultiIndex {
    let mut out = MultiIndex::zero(face.ambient());
    for j in alpha.support() {
        for _ in 0..alpha.get(j) {
            out = out.bump(face.embed(j));
        }
    }
    out
}

/// Transports a local alternator on the face to the ambient simplex; the
/// embedding is strictly increasing, so no sign appears.
fn transport_alternator(face: &Face, rho: &Alternator) -> Alternator {
    Alternator::new(rho.entries().iter().map(|&j| face.embed(j)).collect())
}

/// Extension of P̊⁻ᵣΛᵏ(F) into P̊⁻ᵣΛᵏ(T): index transport
/// λ_F^α φ^F_ρ ↦ λ_T^{α̃} φ^T_{ι∘ρ} on the canonical ring basis of the face.
pub fn ext_minus(face: &Face, omega: &Form, r: i64) -> Result<Form, ExtError> {
    let m = face.dim();
    let n = face.ambient();
    if omega.simplex_dim() != m {
        return Err(ExtError::WrongSimplex);
    }
    if face.is_whole() {
        return Ok(omega.clone());
    }
    let k = omega.form_degree();
    let gens = pminus_ring_basis_generators(r, k, m)?;
    if gens.is_empty() {
        if omega.is_zero() {
            return Ok(Form::zero(n, k));
        }
        return Err(ExtError::NotInDomain);
    }
    let forms: Vec<Form> = gens.iter().map(|(_, _, f)| f.clone()).collect();
    let solver = Solver::new(&forms);
    let coeffs = solver.solve(omega).ok_or(ExtError::NotInDomain)?;
    let mut out = Form::zero(n, k);
    for (c, (alpha, rho, _)) in coeffs.iter().zip(&gens) {
        if c.is_zero() {
            continue;
        }
        let alpha_t = transport_multiindex(face, alpha);
        let rho_t = transport_alternator(face, rho);
        let phi = whitney_alt(n, &rho_t)?;
        out = out.add(&phi.mul_monomial(&alpha_t).scale(c))?;
    }
    Ok(out)
}

/// Extension of P̊ᵣΛᵏ(F) into P̊ᵣΛᵏ(T): on the ring basis,
/// λ^α_F dλ^F_σ ↦ λ^{α̃}_T Ψ_{ι∘σ}, where Ψᵢ = dλᵢ − (α̃ᵢ/r)·Σ_{j∈F} dλⱼ.
pub fn ext_full(face: &Face, omega: &Form, r: i64) -> Result<Form, ExtError> {
    let m = face.dim();
    let n = face.ambient();
    if omega.simplex_dim() != m {
        return Err(ExtError::WrongSimplex);
    }
    if face.is_whole() {
        return Ok(omega.clone());
    }
    if r < 1 {
        if omega.is_zero() {
            return Ok(Form::zero(n, omega.form_degree()));
        }
        return Err(ExtError::ZeroDegree);
    }
    let k = omega.form_degree();
    let gens = ring_p_generators(r, k, m, true)?;
    if gens.is_empty() {
        if omega.is_zero() {
            return Ok(Form::zero(n, k));
        }
        return Err(ExtError::NotInDomain);
    }
    let forms: Vec<Form> = gens.iter().map(|(_, _, f)| f.clone()).collect();
    let solver = Solver::new(&forms);
    let coeffs = solver.solve(omega).ok_or(ExtError::NotInDomain)?;
    let mut face_sum = Form::zero(n, 1);
    for &j in face.vertices() {
        face_sum = face_sum.add(&Form::d_lambda(n, j))?;
    }
    let mut out = Form::zero(n, k);
    for (c, (beta, s, _)) in coeffs.iter().zip(&gens) {
        if c.is_zero() {
            continue;
        }
        let sc = crate::combinatorics::complement(s, m).expect("σ is in range");
        let alpha = beta.plus(&crate::forms::indicator(m, &sc));
        let alpha_t = transport_multiindex(face, &alpha);
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

/// The image face S_π F together with the induced permutation of local
/// vertex indices q = ι(πF)⁻¹ ∘ π ∘ ι(F). The commutation law reads
/// ext(πF) ∘ S_q^* = S_π^* ∘ ext(F).
pub fn face_image(face: &Face, pi: &Permutation) -> (Face, Permutation) {
    let mut verts: Vec<usize> = face.vertices().iter().map(|&v| pi.apply(v)).collect();
    verts.sort_unstable();
    let image = Face::new(face.ambient(), verts).expect("π permutes vertices");
    let q: Vec<usize> = (0..=face.dim())
        .map(|j| {
            image
                .local(pi.apply(face.embed(j)))
                .expect("π maps F onto πF")
        })
        .collect();
    (image, Permutation::new(q).expect("composition of bijections"))
}

/// One face's contribution to a geometric decomposition.
#[derive(Debug, Clone, Serialize)]
pub struct PlanEntry {
    pub face: Face,
    /// Ring basis on the face, in the face's local coordinates.
    pub local: FormSet,
    /// The same elements extended to the ambient simplex.
    pub extended: FormSet,
}

/// A verified direct-sum decomposition of a full polynomial space into
/// extended per-face ring bases.
#[derive(Debug, Clone, Serialize)]
pub struct DecompositionPlan {
    pub spec: SpaceSpec,
    pub entries: Vec<PlanEntry>,
    pub union: FormSet,
    pub total_rank: usize,
}

/// Builds and verifies the decomposition of the plain space `spec` from the
/// canonical ring bases of its faces. Every face of a given dimension uses
/// the same reference basis expressions in local coordinates; since faces
/// are identified by order-preserving relabelings, this transport is
/// automatically equivariant.
pub fn geometric_decomposition(spec: &SpaceSpec) -> Result<DecompositionPlan, ExtError> {
    assert!(!spec.ring, "decomposition targets the full space");
    let n = spec.n;
    let mut entries = Vec::new();
    let mut all = Vec::new();
    for m in spec.k..=n {
        let local_spec = SpaceSpec::new(spec.family, true, spec.r, spec.k, m);
        let local = basis_b(&local_spec)?;
        if local.len() == 0 {
            continue;
        }
        for face in Face::enumerate(n, m) {
            let mut extended = Vec::new();
            for f in local.iter() {
                let e = match spec.family {
                    Family::P => ext_full(&face, f, spec.r)?,
                    Family::PMinus => ext_minus(&face, f, spec.r)?,
                };
                extended.push(e);
            }
            all.extend(extended.iter().cloned());
            entries.push(PlanEntry {
                face,
                local: local.clone(),
                extended: FormSet::collect(n, spec.k, extended)?,
            });
        }
    }
    let expected: usize = entries.iter().map(|e| e.extended.len()).sum();
    let union = FormSet::collect(n, spec.k, all)?;
    let space_dim = dimension(spec)?;
    let (rank, independent) = crate::spaces::rank_dim(&union);
    if union.len() != expected || !independent || rank != space_dim {
        return Err(ExtError::RankDeficient {
            rank,
            expected: space_dim,
        });
    }
    Ok(DecompositionPlan {
        spec: *spec,
        entries,
        union,
        total_rank: rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::symmetry_generators;
    use crate::forms::whitney;
    use crate::symmetry::pullback;

    fn ring_basis(spec: &SpaceSpec) -> FormSet {
        basis_b(spec).unwrap()
    }

    #[test]
    fn ext_minus_edge_examples() {
        let phi = whitney(1, &[0, 1]).unwrap();
        let e01 = Face::new(2, vec![0, 1]).unwrap();
        let e12 = Face::new(2, vec![1, 2]).unwrap();
        let ext01 = ext_minus(&e01, &phi, 1).unwrap();
        assert!(ext01.equals(&whitney(2, &[0, 1]).unwrap()).unwrap());
        let ext12 = ext_minus(&e12, &phi, 1).unwrap();
        assert!(ext12.equals(&whitney(2, &[1, 2]).unwrap()).unwrap());
        // whole simplex: identity
        let whole = Face::whole(1);
        assert!(ext_minus(&whole, &phi, 1).unwrap().equals(&phi).unwrap());
    }

    #[test]
    fn ext_full_edge_example() {
        // λ₀λ₁ dλ₁ on the edge {0,1} of the triangle, degree 2
        let omega = Form::lambda(1, 0)
            .wedge(&Form::lambda(1, 1))
            .unwrap()
            .wedge(&Form::d_lambda(1, 1))
            .unwrap();
        let e01 = Face::new(2, vec![0, 1]).unwrap();
        let ext = ext_full(&e01, &omega, 2).unwrap();
        let half = Cyclo::from_ratio(1, 2);
        let bubble = Form::lambda(2, 0).wedge(&Form::lambda(2, 1)).unwrap();
        let expected = bubble
            .wedge(
                &Form::d_lambda(2, 1)
                    .sub(&Form::d_lambda(2, 0))
                    .unwrap()
                    .scale(&half),
            )
            .unwrap();
        assert!(ext.equals(&expected).unwrap());
    }

    #[test]
    fn traces_recover_and_vanish() {
        for n in 2..=3usize {
            for r in 1..=2i64 {
                for k in 0..n {
                    for m in k..n {
                        let p_basis = ring_basis(&SpaceSpec::new(Family::P, true, r, k, m));
                        let pm_basis =
                            ring_basis(&SpaceSpec::new(Family::PMinus, true, r, k, m));
                        for face in Face::enumerate(n, m) {
                            for f in p_basis.iter() {
                                let e = ext_full(&face, f, r).unwrap();
                                assert!(e.trace(&face).unwrap().equals(f).unwrap());
                                for g in Face::enumerate(n, m) {
                                    if g != face && !g.contains(&face) {
                                        assert!(e.trace(&g).unwrap().is_zero());
                                    }
                                }
                            }
                            for f in pm_basis.iter() {
                                let e = ext_minus(&face, f, r).unwrap();
                                assert!(e.trace(&face).unwrap().equals(f).unwrap());
                                for g in Face::enumerate(n, m) {
                                    if g != face && !g.contains(&face) {
                                        assert!(e.trace(&g).unwrap().is_zero());
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn extension_commutes_with_symmetries() {
        // ext(πF) ∘ S_q^* = S_π^* ∘ ext(F) on ring bases of the triangle
        let n = 2usize;
        for r in 1..=2i64 {
            for k in 0..n {
                for m in k..n {
                    for face in Face::enumerate(n, m) {
                        for pi in symmetry_generators(n) {
                            let (image, q) = face_image(&face, &pi);
                            for spec_family in [Family::P, Family::PMinus] {
                                let basis = ring_basis(&SpaceSpec::new(
                                    spec_family,
                                    true,
                                    r,
                                    k,
                                    m,
                                ));
                                for f in basis.iter() {
                                    let moved = pullback(f, &q).unwrap();
                                    let lhs = match spec_family {
                                        Family::P => ext_full(&image, &moved, r).unwrap(),
                                        Family::PMinus => {
                                            ext_minus(&image, &moved, r).unwrap()
                                        }
                                    };
                                    let rhs = pullback(
                                        &match spec_family {
                                            Family::P => ext_full(&face, f, r).unwrap(),
                                            Family::PMinus => {
                                                ext_minus(&face, f, r).unwrap()
                                            }
                                        },
                                        &pi,
                                    )
                                    .unwrap();
                                    assert!(lhs.equals(&rhs).unwrap());
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn decomposition_examples() {
        // Whitney forms: only edges contribute
        let plan =
            geometric_decomposition(&SpaceSpec::new(Family::PMinus, false, 1, 1, 2)).unwrap();
        assert_eq!(plan.total_rank, 3);
        assert!(plan.entries.iter().all(|e| e.face.dim() == 1));
        // hat functions: only vertices contribute
        let plan = geometric_decomposition(&SpaceSpec::new(Family::P, false, 1, 0, 2)).unwrap();
        assert_eq!(plan.total_rank, 3);
        assert!(plan.entries.iter().all(|e| e.face.dim() == 0));
        // quadratic 1-forms on the triangle: edges and cell
        let plan = geometric_decomposition(&SpaceSpec::new(Family::P, false, 2, 1, 2)).unwrap();
        assert_eq!(
            plan.total_rank,
            dimension(&SpaceSpec::new(Family::P, false, 2, 1, 2)).unwrap()
        );
        let dims: Vec<usize> = plan.entries.iter().map(|e| e.face.dim()).collect();
        assert!(dims.contains(&1) && dims.contains(&2));
        // plan serializes
        serde_json::to_string(&plan).unwrap();
    }

    #[test]
    fn decomposition_union_is_invariant() {
        let plan =
            geometric_decomposition(&SpaceSpec::new(Family::PMinus, false, 1, 1, 2)).unwrap();
        let cert =
            crate::symmetry::check_invariance(&plan.union, crate::symmetry::Mode::R).unwrap();
        assert!(crate::symmetry::verify_certificate(&plan.union, &cert));
    }
}
