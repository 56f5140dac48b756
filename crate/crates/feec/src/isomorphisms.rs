//! The canonical degree-raising isomorphisms between polynomial form
//! spaces: I carries PᵣΛᵏ onto the ring (vanishing-trace) space
//! P̊⁻_{r+k+1}Λ^{n−k}, and J carries P̊_{r+n−k+1}Λᵏ onto P⁻_{r+1}Λ^{n−k}.
//! Both commute with the simplicial symmetries up to the sign character.

use crate::combinatorics::{complement, eps_split};
use crate::forms::{indicator, whitney_alt, Form, FormError};
use crate::linalg::Solver;
use crate::scalar::Cyclo;
use crate::spaces::{
    basis_b, homogenize, pminus_basis_generators, ring_p_generators, Family, SpaceSpec,
    SpacesError,
};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum IsoError {
    #[error("input form lies outside the domain space of the isomorphism")]
    NotInDomain,
    #[error(transparent)]
    Spaces(#[from] SpacesError),
    #[error(transparent)]
    Form(#[from] FormError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsoKind {
    I,
    J,
}

/// I_{k,r}: PᵣΛᵏ(Tⁿ) → P̊⁻_{r+k+1}Λ^{n−k}(Tⁿ), acting termwise on the
/// homogenized input by λ^α dλ_σ ↦ ε(σ,σᶜ)·λ^{α+1_σ}·φ_{σᶜ}.
pub fn iso_i(omega: &Form, r: i64) -> Result<Form, IsoError> {
    let n = omega.simplex_dim();
    let k = omega.form_degree();
    if r < 0 {
        if omega.is_zero() {
            return Ok(Form::zero(n, n - k));
        }
        return Err(IsoError::NotInDomain);
    }
    let homog = homogenize(omega, r as usize)?;
    let mut out = Form::zero(n, n - k);
    for (alpha, s, c) in homog.terms() {
        let sc = complement(s, n).expect("term indices are in range");
        let sign = eps_split(s, &sc).expect("σ and σᶜ are disjoint");
        let phi = whitney_alt(n, &sc)?;
        let exps = alpha.plus(&indicator(n, s));
        out = out.add(&phi.mul_monomial(&exps).scale(&(c * &Cyclo::from_int(sign))))?;
    }
    Ok(out)
}

/// J_{k,r}: P̊_{r+n−k+1}Λᵏ(Tⁿ) → P⁻_{r+1}Λ^{n−k}(Tⁿ). The input is solved
/// onto the ring generators λ^β λ_{σᶜ} dλ_σ, each of which maps to
/// ε(σ,σᶜ)·λ^β·φ_{σᶜ}.
pub fn iso_j(omega: &Form, r: i64) -> Result<Form, IsoError> {
    let n = omega.simplex_dim();
    let k = omega.form_degree();
    let dom_degree = r + n as i64 - k as i64 + 1;
    let gens = ring_p_generators(dom_degree, k, n, true)?;
    if gens.is_empty() {
        if omega.is_zero() {
            return Ok(Form::zero(n, n - k));
        }
        return Err(IsoError::NotInDomain);
    }
    let forms: Vec<Form> = gens.iter().map(|(_, _, f)| f.clone()).collect();
    let solver = Solver::new(&forms);
    let coeffs = solver.solve(omega).ok_or(IsoError::NotInDomain)?;
    let mut out = Form::zero(n, n - k);
    for (c, (beta, s, _)) in coeffs.iter().zip(&gens) {
        if c.is_zero() {
            continue;
        }
        let sc = complement(s, n).expect("σ is in range");
        let sign = eps_split(s, &sc).expect("σ and σᶜ are disjoint");
        let phi = whitney_alt(n, &sc)?;
        out = out.add(&phi.mul_monomial(beta).scale(&(c * &Cyclo::from_int(sign))))?;
    }
    Ok(out)
}

/// I⁻¹: solves the input against the images of the canonical basis of the
/// domain PᵣΛᵏ (no closed termwise formula exists for this direction).
pub fn iso_i_inverse(omega: &Form, r: i64) -> Result<Form, IsoError> {
    let n = omega.simplex_dim();
    let k = n - omega.form_degree();
    let dom = basis_b(&SpaceSpec::new(Family::P, false, r, k, n))?;
    if dom.len() == 0 {
        if omega.is_zero() {
            return Ok(Form::zero(n, k));
        }
        return Err(IsoError::NotInDomain);
    }
    let images: Vec<Form> = dom
        .iter()
        .map(|f| iso_i(f, r))
        .collect::<Result<_, _>>()?;
    let solver = Solver::new(&images);
    let coeffs = solver.solve(omega).ok_or(IsoError::NotInDomain)?;
    let mut out = Form::zero(n, k);
    for (c, f) in coeffs.iter().zip(dom.iter()) {
        out = out.add(&f.scale(c))?;
    }
    Ok(out)
}

/// J⁻¹: P⁻_{r+1}Λ^{n−k}(Tⁿ) → P̊_{r+n−k+1}Λᵏ(Tⁿ), termwise on the basis
/// elements λ^α φ_ρ ↦ ε(ρᶜ,ρ)·λ^{α+1_ρ}·dλ_{ρᶜ}.
pub fn iso_j_inverse(omega: &Form, r: i64) -> Result<Form, IsoError> {
    let n = omega.simplex_dim();
    let km = omega.form_degree();
    let k = n - km;
    let gens = pminus_basis_generators(r + 1, km, n)?;
    if gens.is_empty() {
        if omega.is_zero() {
            return Ok(Form::zero(n, k));
        }
        return Err(IsoError::NotInDomain);
    }
    let forms: Vec<Form> = gens.iter().map(|(_, _, f)| f.clone()).collect();
    let solver = Solver::new(&forms);
    let coeffs = solver.solve(omega).ok_or(IsoError::NotInDomain)?;
    let mut out = Form::zero(n, k);
    for (c, (alpha, rho, _)) in coeffs.iter().zip(&gens) {
        if c.is_zero() {
            continue;
        }
        let s = complement(rho, n).expect("ρ is in range");
        let sign = eps_split(&s, rho).expect("ρᶜ and ρ are disjoint");
        let exps = alpha.plus(&indicator(n, rho));
        let term = Form::monomial(n, exps, s, c * &Cyclo::from_int(sign))?;
        out = out.add(&term)?;
    }
    Ok(out)
}

/// Inverse direction dispatcher for the two isomorphisms.
pub fn iso_inverse(kind: IsoKind, omega: &Form, r: i64) -> Result<Form, IsoError> {
    match kind {
        IsoKind::I => iso_i_inverse(omega, r),
        IsoKind::J => iso_j_inverse(omega, r),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::symmetry_generators;
    use crate::forms::whitney;
    use crate::linalg::rank_forms;
    use crate::spaces::{contains, spanning_set};
    use crate::symmetry::pullback;

    #[test]
    fn iso_i_examples() {
        // interval, constant scalar ↦ the Whitney edge form
        let one = Form::one(1);
        let img = iso_i(&one, 0).unwrap();
        assert!(img.equals(&whitney(1, &[0, 1]).unwrap()).unwrap());
        // triangle, dλ₁ ↦ −λ₁ φ_{(0,2)}
        let img = iso_i(&Form::d_lambda(2, 1), 0).unwrap();
        let expected = whitney(2, &[0, 2])
            .unwrap()
            .mul_monomial(&crate::combinatorics::MultiIndex::unit(2, 1))
            .negate();
        assert!(img.equals(&expected).unwrap());
    }

    #[test]
    fn iso_i_linearity_and_well_definedness() {
        let a = Form::d_lambda(2, 0);
        let b = Form::lambda(2, 1);
        let b = b.wedge(&Form::d_lambda(2, 2)).unwrap();
        let sum_img = iso_i(&a.add(&b).unwrap(), 1).unwrap();
        let img_sum = iso_i(&a, 1).unwrap().add(&iso_i(&b, 1).unwrap()).unwrap();
        assert!(sum_img.equals(&img_sum).unwrap());
        // dλ₀ + dλ₁ + dλ₂ vanishes identically, so its image must too
        let zero_rep = Form::d_lambda(2, 0)
            .add(&Form::d_lambda(2, 1))
            .unwrap()
            .add(&Form::d_lambda(2, 2))
            .unwrap();
        assert!(iso_i(&zero_rep, 2).unwrap().is_zero());
    }

    #[test]
    fn iso_i_image_in_ring_space() {
        for r in 0..=2i64 {
            for k in 0..=2usize {
                let dom = basis_b(&SpaceSpec::new(Family::P, false, r, k, 2)).unwrap();
                let target = SpaceSpec::new(Family::PMinus, true, r + k as i64 + 1, 2 - k, 2);
                let mut images = Vec::new();
                for f in dom.iter() {
                    let img = iso_i(f, r).unwrap();
                    assert!(contains(&target, &img).unwrap());
                    images.push(img);
                }
                // injectivity: image of a basis stays independent
                assert_eq!(rank_forms(&images), dom.len());
            }
        }
    }

    #[test]
    fn iso_j_example_and_round_trips() {
        // triangle: λ₀λ₂ dλ₁ ↦ −φ_{(0,2)}
        let mut alpha = crate::combinatorics::MultiIndex::unit(2, 0);
        alpha = alpha.bump(2);
        let input = Form::monomial(
            2,
            alpha,
            crate::combinatorics::Alternator::new(vec![1]),
            Cyclo::one(),
        )
        .unwrap();
        let img = iso_j(&input, 0).unwrap();
        assert!(img.equals(&whitney(2, &[0, 2]).unwrap().negate()).unwrap());
        // J⁻¹ then J is the identity on P⁻ elements
        let omega = whitney(2, &[0, 2]).unwrap().mul_monomial(
            &crate::combinatorics::MultiIndex::unit(2, 0),
        );
        let back = iso_j(&iso_j_inverse(&omega, 1).unwrap(), 1).unwrap();
        assert!(back.equals(&omega).unwrap());
    }

    #[test]
    fn iso_j_inverse_scalar_example() {
        // interval: φ_{(0,1)} pulls back to the bubble λ₀λ₁
        let phi = whitney(1, &[0, 1]).unwrap();
        let pre = iso_j_inverse(&phi, 0).unwrap();
        let bubble = Form::lambda(1, 0).wedge(&Form::lambda(1, 1)).unwrap();
        assert!(pre.equals(&bubble).unwrap());
    }

    #[test]
    fn round_trips_over_spaces() {
        for r in 0..=2i64 {
            for k in 0..=2usize {
                let dom = basis_b(&SpaceSpec::new(Family::P, false, r, k, 2)).unwrap();
                for f in dom.iter() {
                    let back = iso_i_inverse(&iso_i(f, r).unwrap(), r).unwrap();
                    assert!(back.equals(&homogenize(f, r as usize).unwrap()).unwrap());
                }
                let cod = basis_b(&SpaceSpec::new(Family::PMinus, false, r + 1, k, 2)).unwrap();
                for f in cod.iter() {
                    let back = iso_j(&iso_j_inverse(f, r).unwrap(), r).unwrap();
                    assert!(back.equals(f).unwrap());
                }
            }
        }
    }

    #[test]
    fn sign_commutation_small() {
        // pullback ∘ Φ = sign(π) · Φ ∘ pullback for both isomorphisms
        let n = 2usize;
        for r in 0..=2i64 {
            for k in 0..=n {
                let dom = spanning_set(&SpaceSpec::new(Family::P, false, r, k, n)).unwrap();
                for pi in symmetry_generators(n) {
                    let sgn = Cyclo::from_int(pi.sign());
                    for f in dom.iter() {
                        let lhs = pullback(&iso_i(f, r).unwrap(), &pi).unwrap();
                        let rhs = iso_i(&pullback(f, &pi).unwrap(), r).unwrap().scale(&sgn);
                        assert!(lhs.equals(&rhs).unwrap());
                    }
                }
                let ring = ring_p_generators(r + n as i64 - k as i64 + 1, k, n, true).unwrap();
                for pi in symmetry_generators(n) {
                    let sgn = Cyclo::from_int(pi.sign());
                    for (_, _, f) in &ring {
                        let lhs = pullback(&iso_j(f, r).unwrap(), &pi).unwrap();
                        let rhs = iso_j(&pullback(f, &pi).unwrap(), r).unwrap().scale(&sgn);
                        assert!(lhs.equals(&rhs).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn out_of_domain_inputs_are_rejected() {
        // λ₀ dλ₁ is not in the ring space of the triangle
        let bad = Form::monomial(
            2,
            crate::combinatorics::MultiIndex::unit(2, 0),
            crate::combinatorics::Alternator::new(vec![1]),
            Cyclo::one(),
        )
        .unwrap();
        assert!(matches!(iso_j(&bad, -1), Err(IsoError::NotInDomain)));
    }
}
