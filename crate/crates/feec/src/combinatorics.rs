//! Index calculus for simplices: multiindices, alternators, permutations,
//! complements, and the sign conventions ε.

use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CombinatoricsError {
    #[error("empty index range: lower bound {0} exceeds upper bound {1}")]
    EmptyRange(usize, usize),
    #[error("sequence is not injective")]
    NotInjective,
    #[error("index images overlap")]
    Overlap,
    #[error("index out of range")]
    RangeMismatch,
}

/// The minimum ⌊·⌋ of an index set, with the empty minimum being +∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Floor {
    Finite(usize),
    Infinity,
}

impl Floor {
    pub fn is_finite(&self) -> bool {
        matches!(self, Floor::Finite(_))
    }
}

/// A multiindex α over [0:n], i.e. exponents α(i) ∈ ℕ₀ for each index i.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex {
    exps: Vec<usize>,
}

impl MultiIndex {
    /// The zero multiindex over [0:n].
    pub fn zero(n: usize) -> Self {
        MultiIndex {
            exps: vec![0; n + 1],
        }
    }

    pub fn from_exponents(exps: Vec<usize>) -> Self {
        assert!(!exps.is_empty(), "multiindex needs a nonempty range");
        MultiIndex { exps }
    }

    /// The unit multiindex e_i over [0:n].
    pub fn unit(n: usize, i: usize) -> Self {
        let mut m = MultiIndex::zero(n);
        m.exps[i] = 1;
        m
    }

    /// Upper end n of the range [0:n].
    pub fn upper(&self) -> usize {
        self.exps.len() - 1
    }

    pub fn get(&self, i: usize) -> usize {
        self.exps.get(i).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[usize] {
        &self.exps
    }

    /// Degree |α| = Σ α(i).
    pub fn degree(&self) -> usize {
        self.exps.iter().sum()
    }

    /// Support [α] = {i : α(i) > 0}, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.exps.len()).filter(|&i| self.exps[i] > 0).collect()
    }

    /// ⌊α⌋ = min [α], or ∞ for the zero multiindex.
    pub fn floor(&self) -> Floor {
        match self.exps.iter().position(|&e| e > 0) {
            Some(i) => Floor::Finite(i),
            None => Floor::Infinity,
        }
    }

    /// Pointwise sum α + β.
    pub fn plus(&self, other: &MultiIndex) -> MultiIndex {
        assert_eq!(self.exps.len(), other.exps.len());
        MultiIndex {
            exps: (0..self.exps.len())
                .map(|i| self.exps[i] + other.exps[i])
                .collect(),
        }
    }

    /// α with one exponent at p raised.
    pub fn bump(&self, p: usize) -> MultiIndex {
        let mut m = self.clone();
        m.exps[p] += 1;
        m
    }

    /// α − e_p; panics if α(p) = 0.
    pub fn drop(&self, p: usize) -> MultiIndex {
        let mut m = self.clone();
        assert!(m.exps[p] > 0);
        m.exps[p] -= 1;
        m
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.exps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e)?;
        }
        write!(f, ")")
    }
}

/// All multiindices of degree r with support in [m:n], stored over [0:n],
/// in lexicographic order.
pub fn enum_multiindices(
    r: usize,
    m: usize,
    n: usize,
) -> Result<Vec<MultiIndex>, CombinatoricsError> {
    if m > n {
        return Err(CombinatoricsError::EmptyRange(m, n));
    }
    let mut out = Vec::new();
    let mut exps = vec![0usize; n + 1];
    fn rec(exps: &mut Vec<usize>, pos: usize, n: usize, left: usize, out: &mut Vec<MultiIndex>) {
        if pos == n {
            exps[pos] = left;
            out.push(MultiIndex::from_exponents(exps.clone()));
            exps[pos] = 0;
            return;
        }
        for e in 0..=left {
            exps[pos] = e;
            rec(exps, pos + 1, n, left - e, out);
        }
        exps[pos] = 0;
    }
    rec(&mut exps, m, n, r, &mut out);
    Ok(out)
}

/// A strictly ascending index sequence σ, possibly empty. Carries its
/// entries only; the arity (Σ(k,n) versus Σ₀(l,n)) is positional context.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Alternator {
    entries: Vec<usize>,
}

impl Alternator {
    pub fn empty() -> Self {
        Alternator {
            entries: Vec::new(),
        }
    }

    pub fn new(entries: Vec<usize>) -> Self {
        assert!(
            entries.windows(2).all(|w| w[0] < w[1]),
            "alternator entries must be strictly ascending"
        );
        Alternator { entries }
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.entries.binary_search(&i).is_ok()
    }

    /// ⌊σ⌋: least entry, or ∞ for the empty alternator.
    pub fn floor(&self) -> Floor {
        match self.entries.first() {
            Some(&e) => Floor::Finite(e),
            None => Floor::Infinity,
        }
    }

    /// σ with the entry p removed (ρ − p).
    pub fn remove(&self, p: usize) -> Alternator {
        Alternator {
            entries: self
                .entries
                .iter()
                .copied()
                .filter(|&q| q != p)
                .collect(),
        }
    }
}

impl fmt::Display for Alternator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e)?;
        }
        write!(f, ")")
    }
}

/// All strictly ascending maps [a:b] → [m:n] in lexicographic order; the
/// singleton {∅} when a > b.
pub fn enum_alternators(a: isize, b: isize, m: usize, n: usize) -> Vec<Alternator> {
    if a > b {
        return vec![Alternator::empty()];
    }
    let len = (b - a + 1) as usize;
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(len);
    fn rec(buf: &mut Vec<usize>, from: usize, n: usize, len: usize, out: &mut Vec<Alternator>) {
        if buf.len() == len {
            out.push(Alternator::new(buf.clone()));
            return;
        }
        for v in from..=n {
            if n + 1 - v < len - buf.len() {
                break;
            }
            buf.push(v);
            rec(buf, v + 1, n, len, out);
            buf.pop();
        }
    }
    if len <= n + 1 - m {
        rec(&mut buf, m, n, len, &mut out);
    }
    out
}

/// Σ(k, n) = Σ(1:k, 0:n): ascending k-sequences in [0:n].
pub fn sigma(k: usize, n: usize) -> Vec<Alternator> {
    enum_alternators(1, k as isize, 0, n)
}

/// Σ₀(l, n) = Σ(0:l, 0:n): ascending (l+1)-sequences in [0:n].
pub fn sigma0(l: isize, n: usize) -> Vec<Alternator> {
    enum_alternators(0, l, 0, n)
}

/// Sorts an injective sequence ascending and reports the sign of the
/// sorting permutation.
pub fn sort_with_sign(tau: &[usize]) -> Result<(Alternator, i64), CombinatoricsError> {
    let mut inversions = 0i64;
    for i in 0..tau.len() {
        for j in i + 1..tau.len() {
            if tau[i] == tau[j] {
                return Err(CombinatoricsError::NotInjective);
            }
            if tau[i] > tau[j] {
                inversions += 1;
            }
        }
    }
    let mut sorted = tau.to_vec();
    sorted.sort_unstable();
    Ok((Alternator::new(sorted), if inversions % 2 == 0 { 1 } else { -1 }))
}

/// The complement σᶜ with [σ] ∪ [σᶜ] = [0:n]; maps Σ(k,n) to Σ₀(n−k,n)
/// and back.
pub fn complement(sigma: &Alternator, n: usize) -> Result<Alternator, CombinatoricsError> {
    if sigma.entries().iter().any(|&e| e > n) {
        return Err(CombinatoricsError::RangeMismatch);
    }
    Ok(Alternator::new(
        (0..=n).filter(|&i| !sigma.contains(i)).collect(),
    ))
}

/// ε(left, right): the sign of the permutation sorting the concatenation
/// left‖right ascending; errors when the images overlap.
pub fn eps_split(left: &Alternator, right: &Alternator) -> Result<i64, CombinatoricsError> {
    let concat: Vec<usize> = left
        .entries()
        .iter()
        .chain(right.entries())
        .copied()
        .collect();
    match sort_with_sign(&concat) {
        Ok((_, sign)) => Ok(sign),
        Err(CombinatoricsError::NotInjective) => Err(CombinatoricsError::Overlap),
        Err(e) => Err(e),
    }
}

/// ε(p, ρ−p): the sign placing p in front of ρ with p removed.
pub fn eps_point(p: usize, rho_minus_p: &Alternator) -> Result<i64, CombinatoricsError> {
    let singleton = Alternator::new(vec![p]);
    eps_split(&singleton, rho_minus_p)
}

/// A permutation π of [0:n], stored as the table i ↦ π(i).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self, CombinatoricsError> {
        let n = map.len();
        let mut seen = vec![false; n];
        for &v in &map {
            if v >= n || seen[v] {
                return Err(CombinatoricsError::NotInjective);
            }
            seen[v] = true;
        }
        Ok(Permutation { map })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            map: (0..=n).collect(),
        }
    }

    /// The transposition (a b) on [0:n].
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut map: Vec<usize> = (0..=n).collect();
        map.swap(a, b);
        Permutation { map }
    }

    /// The full cycle (0 1 … n).
    pub fn full_cycle(n: usize) -> Self {
        Permutation {
            map: (0..=n).map(|i| (i + 1) % (n + 1)).collect(),
        }
    }

    /// Upper end n of the domain [0:n].
    pub fn upper(&self) -> usize {
        self.map.len() - 1
    }

    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    pub fn table(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.map.len()];
        for (i, &v) in self.map.iter().enumerate() {
            inv[v] = i;
        }
        Permutation { map: inv }
    }

    /// Composition self∘other: (self∘other)(i) = self(other(i)).
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.map.len(), other.map.len());
        Permutation {
            map: other.map.iter().map(|&i| self.map[i]).collect(),
        }
    }

    pub fn sign(&self) -> i64 {
        sort_with_sign(&self.map).expect("a permutation is injective").1
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.map.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", v)?;
        }
        write!(f, "]")
    }
}

/// The default generating set of Perm(n): the transposition (0 1) and the
/// full cycle (0 1 … n). Empty for n = 0, one transposition for n = 1.
pub fn symmetry_generators(n: usize) -> Vec<Permutation> {
    match n {
        0 => vec![],
        1 => vec![Permutation::transposition(1, 0, 1)],
        _ => vec![
            Permutation::transposition(n, 0, 1),
            Permutation::full_cycle(n),
        ],
    }
}

/// Every permutation of [0:n]; used only as a small-n safety oracle.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..=n).collect();
    permute(&mut items, 0, &mut out);
    out.sort_by(|a, b| a.map.cmp(&b.map));
    out
}

fn permute(items: &mut Vec<usize>, at: usize, out: &mut Vec<Permutation>) {
    if at == items.len() {
        out.push(Permutation { map: items.clone() });
        return;
    }
    for i in at..items.len() {
        items.swap(at, i);
        permute(items, at + 1, out);
        items.swap(at, i);
    }
}

/// Binomial coefficient, used by enumeration count checks.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}
