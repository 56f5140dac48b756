//! Exact construction and certification of symmetry-invariant bases for
//! the finite element spaces PᵣΛᵏ and Pᵣ⁻Λᵏ on simplices.
//!
//! All arithmetic is exact over the cyclotomic field Q(ζ₁₂); invariance
//! claims are produced together with machine-checkable certificates.

pub mod combinatorics;
pub mod extension;
pub mod forms;
pub mod isomorphisms;
pub mod linalg;
pub mod recursion;
pub mod report;
pub mod scalar;
pub mod spaces;
pub mod suites;
pub mod symmetry;
