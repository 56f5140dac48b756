//! Randomized algebraic invariants: field axioms for the cyclotomic
//! scalars, sign identities of the index combinatorics, the exterior
//! calculus laws (d∘d = 0, Leibniz), functoriality of pullbacks, the
//! homogenization identity, and serialization round trips.

use feec::combinatorics::{eps_split, sort_with_sign, Alternator, MultiIndex, Permutation};
use feec::forms::Form;
use feec::scalar::Cyclo;
use feec::spaces::homogenize;
use feec::symmetry::pullback;
use proptest::prelude::*;

fn arb_cyclo() -> impl Strategy<Value = Cyclo> {
    let q = (-6i64..=6, 1i64..=4).prop_map(|(a, b)| Cyclo::from_ratio(a, b));
    (q.clone(), q.clone(), q.clone(), q).prop_map(|(c0, c1, c2, c3)| {
        &(&c0 + &(&c1 * &Cyclo::zeta())) + &(&(&c2 * &Cyclo::zeta_pow(2)) + &(&c3 * &Cyclo::zeta_pow(3)))
    })
}

fn arb_alternator(n: usize, k: usize) -> impl Strategy<Value = Alternator> {
    proptest::sample::subsequence((0..=n).collect::<Vec<_>>(), k).prop_map(Alternator::new)
}

/// A k-form on the n-simplex with up to three small monomial terms.
fn arb_form(n: usize, k: usize) -> impl Strategy<Value = Form> {
    let term = (
        proptest::collection::vec(0usize..=2, n + 1),
        arb_alternator(n, k),
        arb_cyclo(),
    );
    proptest::collection::vec(term, 0..=3).prop_map(move |terms| {
        let mut out = Form::zero(n, k);
        for (exps, s, c) in terms {
            out.add_term(MultiIndex::from_exponents(exps), s, c);
        }
        out
    })
}

fn arb_permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just(()).prop_perturb(move |_, mut rng| {
        let mut map: Vec<usize> = (0..=n).collect();
        for i in (1..map.len()).rev() {
            let j = (rng.next_u64() as usize) % (i + 1);
            map.swap(i, j);
        }
        Permutation::new(map).expect("shuffled identity")
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in arb_cyclo(), b in arb_cyclo(), c in arb_cyclo()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a + &(-a.clone())).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
    }

    #[test]
    fn conjugation_is_a_field_automorphism(a in arb_cyclo(), b in arb_cyclo()) {
        prop_assert_eq!((&a + &b).conjugate(), &a.conjugate() + &b.conjugate());
        prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        prop_assert_eq!(a.conjugate().conjugate(), a.clone());
        prop_assert_eq!(a.is_real(), a.conjugate() == a);
        // Norm a·ā is conjugation-fixed, hence real.
        prop_assert!((&a * &a.conjugate()).is_real());
    }

    #[test]
    fn block_swap_sign(picks in proptest::collection::vec(0usize..3, 8)) {
        // Split a subset of 0..8 into two disjoint ascending blocks.
        let left: Vec<usize> = picks.iter().enumerate()
            .filter(|(_, &p)| p == 1).map(|(i, _)| i).collect();
        let right: Vec<usize> = picks.iter().enumerate()
            .filter(|(_, &p)| p == 2).map(|(i, _)| i).collect();
        let sign = if (left.len() * right.len()) % 2 == 0 { 1 } else { -1 };
        let l = Alternator::new(left);
        let r = Alternator::new(right);
        prop_assert_eq!(eps_split(&l, &r).unwrap(), sign * eps_split(&r, &l).unwrap());
    }

    #[test]
    fn serialization_round_trips(a in arb_cyclo()) {
        let json = serde_json::to_string(&a).unwrap();
        let back: Cyclo = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, a);
    }
}

macro_rules! form_property {
    ($name:ident, $n:expr, $k:expr, |$omega:ident| $body:block) => {
        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]
            #[test]
            fn $name($omega in arb_form($n, $k)) $body
        }
    };
}

form_property!(dd_zero_2d_0forms, 2, 0, |omega| {
    prop_assert!(omega.exterior_derivative().exterior_derivative().is_zero());
});

form_property!(dd_zero_3d_1forms, 3, 1, |omega| {
    prop_assert!(omega.exterior_derivative().exterior_derivative().is_zero());
});

form_property!(form_json_round_trip, 3, 2, |omega| {
    let json = serde_json::to_string(&omega).unwrap();
    let back: Form = serde_json::from_str(&json).unwrap();
    prop_assert_eq!(back, omega);
});

form_property!(homogenize_is_semantically_identity, 3, 1, |omega| {
    let d = omega.terms().map(|(a, _, _)| a.degree()).max().unwrap_or(0);
    for r in d..d + 2 {
        let h = homogenize(&omega, r).unwrap();
        prop_assert!(h.equals(&omega).unwrap());
        for (alpha, _, _) in h.terms() {
            prop_assert_eq!(alpha.degree(), r);
        }
    }
});

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn leibniz_rule(omega in arb_form(3, 1), eta in arb_form(3, 1)) {
        let lhs = omega.wedge(&eta).unwrap().exterior_derivative();
        let sign = Cyclo::from_int(-1); // (−1)^k for k = 1
        let rhs = omega
            .exterior_derivative()
            .wedge(&eta)
            .unwrap()
            .add(&omega.wedge(&eta.exterior_derivative()).unwrap().scale(&sign))
            .unwrap();
        prop_assert!(lhs.equals(&rhs).unwrap());
    }

    #[test]
    fn pullback_is_a_contravariant_algebra_action(
        omega in arb_form(3, 1),
        eta in arb_form(3, 1),
        pi in arb_permutation(3),
        rho in arb_permutation(3),
    ) {
        // Identity acts trivially.
        let id = Permutation::identity(3);
        prop_assert!(pullback(&omega, &id).unwrap().equals(&omega).unwrap());

        // S_{ρ∘π}^* ω = S_ρ^*(S_π^* ω): barycentric indices travel i ↦ π(i) ↦ ρ(π(i)).
        let composed = rho.compose(&pi);
        let direct = pullback(&omega, &composed).unwrap();
        let staged = pullback(&pullback(&omega, &pi).unwrap(), &rho).unwrap();
        prop_assert!(direct.equals(&staged).unwrap());

        // Pullback respects the wedge product and the exterior derivative.
        let w = pullback(&omega.wedge(&eta).unwrap(), &pi).unwrap();
        let ww = pullback(&omega, &pi).unwrap().wedge(&pullback(&eta, &pi).unwrap()).unwrap();
        prop_assert!(w.equals(&ww).unwrap());
        let dp = pullback(&omega, &pi).unwrap().exterior_derivative();
        let pd = pullback(&omega.exterior_derivative(), &pi).unwrap();
        prop_assert!(dp.equals(&pd).unwrap());
    }
}

/// Every injective index tuple factors uniquely through its ascending
/// rearrangement with the sign of the sorting permutation, and the wedge of
/// the corresponding one-forms picks up exactly that sign. Checked
/// exhaustively for all injective tuples of length ≤ 3 over 0..=3.
#[test]
fn injective_tuples_factor_through_ascending_ones() {
    let n = 3;
    let mut tuples: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..3 {
        let mut next = Vec::new();
        for t in &tuples {
            next.push(t.clone());
            for v in 0..=n {
                if !t.contains(&v) {
                    let mut u = t.clone();
                    u.push(v);
                    next.push(u);
                }
            }
        }
        tuples = next;
    }
    tuples.dedup();
    for tau in tuples {
        let (rho, sign) = sort_with_sign(&tau).unwrap();
        assert_eq!(
            rho.entries().len(),
            tau.len(),
            "sorting an injective tuple keeps every entry"
        );
        // Wedge dλ_{τ(a)} ∧ … ∧ dλ_{τ(b)} = sign · dλ_ρ.
        let mut wedge = Form::one(n);
        for &i in &tau {
            wedge = wedge.wedge(&Form::d_lambda(n, i)).unwrap();
        }
        let mut expected = Form::monomial(
            n,
            MultiIndex::zero(n),
            rho.clone(),
            Cyclo::from_int(sign),
        )
        .unwrap();
        if tau.is_empty() {
            expected = Form::one(n);
        }
        assert!(wedge.equals(&expected).unwrap(), "tuple {:?}", tau);
    }
}
