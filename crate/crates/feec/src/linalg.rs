//! Exact linear algebra over Q(ζ₁₂) in reduced-form coordinates.
//!
//! Rank and solve run Gaussian elimination on exact cyclotomic entries.
//! For large matrices a modular projection into a prime field provides a
//! sound fast path: full rank modulo p implies full rank over Q(ζ₁₂),
//! since the projection is a ring homomorphism on p-integral elements.
//! Rank deficits reported by the modular path are always re-checked
//! exactly before they are believed.

use crate::forms::{Form, ReducedForm};
use crate::scalar::Cyclo;
use num::bigint::BigInt;
use num::Signed;
use std::collections::BTreeMap;

/// Dense coordinate rows for a family of forms over the union of their
/// reduced-form keys, in key order.
pub fn coordinate_rows(forms: &[Form]) -> Vec<Vec<Cyclo>> {
    let reduced: Vec<ReducedForm> = forms.iter().map(Form::reduce).collect();
    reduced_coordinate_rows(&reduced)
}

pub fn reduced_coordinate_rows(reduced: &[ReducedForm]) -> Vec<Vec<Cyclo>> {
    let mut keys = BTreeMap::new();
    for r in reduced {
        for (beta, tau, _) in r.coefficients() {
            let next = keys.len();
            keys.entry((beta.clone(), tau.clone())).or_insert(next);
        }
    }
    // BTreeMap iteration order differs from insertion order; rebuild dense
    // column indices in key order for determinism.
    let ordered: BTreeMap<_, usize> = keys
        .keys()
        .cloned()
        .enumerate()
        .map(|(i, k)| (k, i))
        .collect();
    let ncols = ordered.len();
    reduced
        .iter()
        .map(|r| {
            let mut row = vec![Cyclo::zero(); ncols];
            for (beta, tau, c) in r.coefficients() {
                row[ordered[&(beta.clone(), tau.clone())]] = c.clone();
            }
            row
        })
        .collect()
}

/// Exact rank by Gaussian elimination over Q(ζ₁₂).
pub fn rank_exact(mut rows: Vec<Vec<Cyclo>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col]
            .inverse()
            .expect("pivot entry is nonzero");
        for c in col..ncols {
            rows[rank][c] = &rows[rank][c] * &inv;
        }
        let (pivot_row, rest) = {
            let (head, tail) = rows.split_at_mut(rank + 1);
            (&head[rank], tail)
        };
        for other in rest.iter_mut() {
            if other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            for c in col..ncols {
                let sub = &pivot_row[c] * &factor;
                other[c] = &other[c] - &sub;
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Exact rank with a modular shortcut for the full-rank case: if the
/// projected matrix already has rank = min(rows, cols), that is the exact
/// rank; otherwise fall back to exact elimination.
pub fn rank_hybrid(rows: &[Vec<Cyclo>]) -> usize {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    if nrows == 0 || ncols == 0 {
        return 0;
    }
    if let Some(modular) = rank_modular(rows) {
        if modular == nrows.min(ncols) {
            return modular;
        }
    }
    rank_exact(rows.to_vec())
}

/// Rank over exact coordinates of a set of forms.
pub fn rank_forms(forms: &[Form]) -> usize {
    rank_hybrid(&coordinate_rows(forms))
}

/// True when the forms are exactly linearly independent. The modular
/// full-rank certificate is sound; a modular deficit triggers the exact
/// elimination.
pub fn independent(forms: &[Form]) -> bool {
    let rows = coordinate_rows(forms);
    rank_hybrid(&rows) == forms.len()
}

// ---------------------------------------------------------------------
// Modular projection: the Goldilocks prime p = 2^64 − 2^32 + 1 satisfies
// 12 | p − 1, so F_p contains a primitive 12th root of unity and the
// projection ζ ↦ w is a homomorphism out of Z[ζ, 1/d] for p ∤ d.

const P: u128 = 0xffff_ffff_0000_0001;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P) as u64
}

fn add_mod(a: u64, b: u64) -> u64 {
    ((a as u128 + b as u128) % P) as u64
}

fn sub_mod(a: u64, b: u64) -> u64 {
    ((a as u128 + P - b as u128) % P) as u64
}

fn pow_mod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

fn inv_mod(a: u64) -> Option<u64> {
    if a == 0 {
        None
    } else {
        Some(pow_mod(a, (P - 2) as u64))
    }
}

/// A primitive 12th root of unity modulo p (7 generates F_p^*).
fn zeta_mod() -> u64 {
    let w = pow_mod(7, ((P - 1) / 12) as u64);
    debug_assert_eq!(pow_mod(w, 6), (P - 1) as u64);
    debug_assert_ne!(pow_mod(w, 4), 1);
    // ζ⁴ − ζ² + 1 ≡ 0, so the projection respects the reduction rule.
    debug_assert_eq!(
        sub_mod(add_mod(pow_mod(w, 4), 1), pow_mod(w, 2)),
        0
    );
    w
}

fn bigint_mod(v: &BigInt) -> u64 {
    let p = BigInt::from(P);
    let mut m = v % &p;
    if m.is_negative() {
        m += &p;
    }
    let digits = m.to_u64_digits().1;
    digits.first().copied().unwrap_or(0)
}

/// Projection of a cyclotomic scalar into F_p; None if a denominator is
/// divisible by p (practically unreachable, handled for soundness).
fn cyclo_mod(c: &Cyclo, w: u64) -> Option<u64> {
    let mut acc = 0u64;
    let mut wp = 1u64;
    for coeff in c.coefficients() {
        let num = bigint_mod(coeff.numer());
        let den = inv_mod(bigint_mod(coeff.denom()))?;
        acc = add_mod(acc, mul_mod(mul_mod(num, den), wp));
        wp = mul_mod(wp, w);
    }
    Some(acc)
}

/// Rank of the projected matrix over F_p; a lower bound for the exact
/// rank, equal to it when the matrix has full modular rank.
pub fn rank_modular(rows: &[Vec<Cyclo>]) -> Option<usize> {
    let w = zeta_mod();
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|row| row.iter().map(|c| cyclo_mod(c, w)).collect::<Option<Vec<u64>>>())
        .collect::<Option<Vec<Vec<u64>>>>()?;
    let ncols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..m.len()).find(|&i| m[i][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = inv_mod(m[rank][col]).expect("pivot is nonzero");
        for c in col..ncols {
            m[rank][c] = mul_mod(m[rank][c], inv);
        }
        let (head, tail) = m.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for other in tail.iter_mut() {
            if other[col] == 0 {
                continue;
            }
            let factor = other[col];
            for c in col..ncols {
                other[c] = sub_mod(other[c], mul_mod(pivot_row[c], factor));
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    Some(rank)
}

/// Exact coordinate solver against a fixed basis of forms: factors the
/// basis once, then answers "express ω as Σ xᵢ·basisᵢ" per right-hand side.
pub struct Solver {
    keys: Vec<(crate::combinatorics::MultiIndex, crate::combinatorics::Alternator)>,
    /// Row-reduced basis matrix R together with the transform T, T·A = R.
    rref: Vec<Vec<Cyclo>>,
    transform: Vec<Vec<Cyclo>>,
    pivots: Vec<(usize, usize)>, // (row of R, column)
}

impl Solver {
    pub fn new(basis: &[Form]) -> Self {
        let reduced: Vec<ReducedForm> = basis.iter().map(Form::reduce).collect();
        let mut keyset = BTreeMap::new();
        for r in &reduced {
            for (beta, tau, _) in r.coefficients() {
                keyset.entry((beta.clone(), tau.clone())).or_insert(());
            }
        }
        let keys: Vec<_> = keyset.into_keys().collect();
        let index: BTreeMap<_, usize> = keys
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, k)| (k, i))
            .collect();
        let nrows = basis.len();
        let ncols = keys.len();
        let mut rref: Vec<Vec<Cyclo>> = reduced
            .iter()
            .map(|r| {
                let mut row = vec![Cyclo::zero(); ncols];
                for (beta, tau, c) in r.coefficients() {
                    row[index[&(beta.clone(), tau.clone())]] = c.clone();
                }
                row
            })
            .collect();
        let mut transform: Vec<Vec<Cyclo>> = (0..nrows)
            .map(|i| {
                let mut row = vec![Cyclo::zero(); nrows];
                row[i] = Cyclo::one();
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..ncols {
            let Some(pivot) = (rank..nrows).find(|&i| !rref[i][col].is_zero()) else {
                continue;
            };
            rref.swap(rank, pivot);
            transform.swap(rank, pivot);
            let inv = rref[rank][col].inverse().expect("pivot is nonzero");
            for c in 0..ncols {
                rref[rank][c] = &rref[rank][c] * &inv;
            }
            for c in 0..nrows {
                transform[rank][c] = &transform[rank][c] * &inv;
            }
            for i in 0..nrows {
                if i == rank || rref[i][col].is_zero() {
                    continue;
                }
                let factor = rref[i][col].clone();
                for c in 0..ncols {
                    let sub = &rref[rank][c] * &factor;
                    rref[i][c] = &rref[i][c] - &sub;
                }
                for c in 0..nrows {
                    let sub = &transform[rank][c] * &factor;
                    transform[i][c] = &transform[i][c] - &sub;
                }
            }
            pivots.push((rank, col));
            rank += 1;
            if rank == nrows {
                break;
            }
        }
        Solver {
            keys,
            rref,
            transform,
            pivots,
        }
    }

    pub fn basis_rank(&self) -> usize {
        self.pivots.len()
    }

    /// Coordinates x with ω = Σ xᵢ·basisᵢ, or None when ω is outside the span.
    pub fn solve(&self, omega: &Form) -> Option<Vec<Cyclo>> {
        let reduced = omega.reduce();
        let ncols = self.keys.len();
        let mut b = vec![Cyclo::zero(); ncols];
        for (beta, tau, c) in reduced.coefficients() {
            let key = (beta.clone(), tau.clone());
            let idx = self.keys.binary_search(&key).ok()?;
            b[idx] = c.clone();
        }
        let nrows = self.transform.first().map_or(0, Vec::len);
        let mut y = vec![Cyclo::zero(); self.rref.len()];
        for &(row, col) in &self.pivots {
            let coeff = b[col].clone();
            if coeff.is_zero() {
                continue;
            }
            for c in 0..ncols {
                let sub = &self.rref[row][c] * &coeff;
                b[c] = &b[c] - &sub;
            }
            y[row] = coeff;
        }
        if b.iter().any(|c| !c.is_zero()) {
            return None;
        }
        let mut x = vec![Cyclo::zero(); nrows];
        for (row, yv) in y.iter().enumerate() {
            if yv.is_zero() {
                continue;
            }
            for (i, xi) in x.iter_mut().enumerate() {
                let add = yv * &self.transform[row][i];
                *xi = &*xi + &add;
            }
        }
        Some(x)
    }
}
