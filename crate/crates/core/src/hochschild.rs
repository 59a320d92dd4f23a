//! Low degree Hochschild cohomology.
//!
//! Every derivation is cohomologous to one vanishing on the vertex
//! idempotents `E`, and an inner derivation `[b, -]` vanishes on `E` exactly
//! when `b` commutes with `E`. Hence
//! `dim HH¹ = dim Der_E(A) - (dim A^E - dim Z(A))`, where `A^E = ⊕ e_v A e_v`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::One;

use crate::linalg::{Rational, SparseRow};
use crate::presentation::{Algebra, Element, Presentation, PresentationError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HochschildReport {
    pub hh0: usize,
    pub hh1: usize,
    pub derivations: usize,
    pub inner: usize,
}

fn one() -> Rational {
    Rational::one()
}

fn product(alg: &Algebra, arrows: &[usize], start: usize) -> Element {
    arrows.iter().fold(alloc::vec![(alg.idempotent(start), one())], |acc, &a| alg.mul(&acc, &alg.arrow_element(a)))
}

fn rank(equations: BTreeMap<usize, SparseRow>, ncols: usize) -> usize {
    let mut ech = crate::linalg::Echelon::new(ncols);
    for row in equations.into_values() {
        ech.insert(row);
    }
    ech.rank()
}

/// `dim Z(A)`: elements of `A^E` commuting with every arrow.
pub fn center_dim(alg: &Algebra) -> usize {
    let q = alg.quiver();
    let unknowns: Vec<usize> = (0..q.num_vertices()).flat_map(|v| alg.basis_between(v, v)).collect();
    let mut equations: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for a in 0..q.num_arrows() {
        let alpha = alg.arrow_element(a);
        for (u, &b) in unknowns.iter().enumerate() {
            let z = [(b, one())];
            let left = alg.mul(&z, &alpha);
            let right = alg.mul(&alpha, &z);
            for (k, c) in crate::linalg::axpy(&left, &-one(), &right) {
                // one equation per (arrow, basis element) pair
                equations.entry(a * alg.dim() + k).or_default().push((u, c));
            }
        }
    }
    unknowns.len() - rank(equations, unknowns.len())
}

/// `dim Der_E(A)`: arrow images in parallel path spaces whose Leibniz
/// extension kills every relation.
pub fn derivation_dim(alg: &Algebra) -> usize {
    let q = alg.quiver();
    let pres = alg.presentation();
    let mut unknowns: Vec<(usize, usize)> = Vec::new();
    let mut offsets = Vec::new();
    for (a, arrow) in q.arrows().iter().enumerate() {
        offsets.push(unknowns.len());
        unknowns.extend(alg.basis_between(arrow.source, arrow.target).into_iter().map(|b| (a, b)));
    }
    let mut equations: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for (r, rel) in pres.relations().iter().enumerate() {
        let mut per_unknown: BTreeMap<usize, Element> = BTreeMap::new();
        for (coef, path) in rel.terms() {
            let arrows = &path.arrows;
            for k in 0..arrows.len() {
                let left = product(alg, &arrows[..k], path.source);
                let mid = q.arrow(arrows[k]).target;
                let right = product(alg, &arrows[k + 1..], mid);
                let a = arrows[k];
                let end = if a + 1 < offsets.len() { offsets[a + 1] } else { unknowns.len() };
                for u in offsets[a]..end {
                    let value = alg.mul(&alg.mul(&left, &[(unknowns[u].1, one())]), &right);
                    let entry = per_unknown.entry(u).or_default();
                    *entry = crate::linalg::axpy(entry, coef, &value);
                }
            }
        }
        for (u, value) in per_unknown {
            for (k, c) in value {
                equations.entry(r * alg.dim() + k).or_default().push((u, c));
            }
        }
    }
    for row in equations.values_mut() {
        row.sort_by_key(|t| t.0);
    }
    unknowns.len() - rank(equations, unknowns.len())
}

pub fn hochschild(alg: &Algebra) -> HochschildReport {
    let z = center_dim(alg);
    let diagonal: usize = (0..alg.num_vertices()).map(|v| alg.basis_between(v, v).len()).sum();
    let der = derivation_dim(alg);
    let inner = diagonal - z;
    HochschildReport { hh0: z, hh1: der - inner, derivations: der, inner }
}

pub fn hh0_dim(p: &Presentation) -> Result<usize, PresentationError> {
    Ok(center_dim(&p.algebra()?))
}

pub fn hh1_dim(p: &Presentation) -> Result<usize, PresentationError> {
    Ok(hochschild(&p.algebra()?).hh1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatingConsistency {
    pub hh1_a_zero: bool,
    pub hh1_b_zero: bool,
    pub separating: bool,
    /// `HH¹(A) = 0` exactly when `HH¹(B) = 0` and the extension is separating.
    pub consistent: bool,
}

pub fn hh1_separating_consistency(separating: bool, hh1_a: usize, hh1_b_components: &[usize]) -> SeparatingConsistency {
    let hh1_a_zero = hh1_a == 0;
    let hh1_b_zero = hh1_b_components.iter().all(|&h| h == 0);
    SeparatingConsistency {
        hh1_a_zero,
        hh1_b_zero,
        separating,
        consistent: hh1_a_zero == (hh1_b_zero && separating),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn small_values() {
        assert_eq!(hh0_dim(&fixtures::field()).unwrap(), 1);
        assert_eq!(hh1_dim(&fixtures::field()).unwrap(), 0);
        assert_eq!(hh0_dim(&fixtures::field_squared()).unwrap(), 2);
        for n in 2..=4 {
            assert_eq!(hh1_dim(&fixtures::linear_a(n)).unwrap(), 0);
            assert_eq!(hh0_dim(&fixtures::linear_a(n)).unwrap(), 1);
        }
        assert_eq!(hh1_dim(&fixtures::d4()).unwrap(), 0);
        assert_eq!(hh1_dim(&fixtures::kronecker()).unwrap(), 3);
    }

    #[test]
    fn commutative_square_is_rigid() {
        let p = fixtures::commutative_square();
        assert_eq!(hh1_dim(&p).unwrap(), 0);
        assert_eq!(hh0_dim(&p).unwrap(), 1);
    }

    #[test]
    fn truncated_loop() {
        // k[x]/(x³): derivations x ↦ x, x², centre everything
        let p = fixtures::truncated_loop(3);
        let r = hochschild(&p.algebra().unwrap());
        assert_eq!(r.hh0, 3);
        assert_eq!(r.hh1, 2);
    }

    #[test]
    fn radical_square_zero_counts() {
        let r = hochschild(&fixtures::wild_chain().algebra().unwrap());
        assert_eq!(r.hh0, 1);
        assert_eq!(r.derivations, 13);
        assert_eq!(r.inner, 5);
        assert_eq!(r.hh1, 8);
    }

    #[test]
    fn separating_consistency() {
        assert!(hh1_separating_consistency(false, 8, &[0]).consistent);
        assert!(hh1_separating_consistency(true, 0, &[0, 0]).consistent);
        assert!(!hh1_separating_consistency(true, 1, &[0]).consistent);
    }
}
