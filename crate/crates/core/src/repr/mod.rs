//! Finite dimensional modules as representations of bound quivers.
//!
//! The projective module at a vertex `v` has as basis the paths ending at
//! `v`. Consequently an arrow `α: s -> t` acts by a linear map
//! `M(t) -> M(s)`, stored as a `dim M(s) x dim M(t)` matrix, and a path
//! `a1.a2...ak` acts by the product `M(a1) M(a2) ... M(ak)`.
//!
//! With this convention the radical of the projective at the sink of
//! three parallel arrows `5 -> 6` is three copies of the simple at `5`.
//!
//! A morphism `f: M -> N` is a family of matrices `f_v` of shape
//! `dim N(v) x dim M(v)` with `f_s M(α) = N(α) f_t` for every arrow.

mod decompose;
mod hom;
mod homological;

use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::linalg::{Matrix, Rational};
use crate::presentation::{Algebra, Element, Path};

pub use decompose::{
    certify_decomposition, endomorphism_trace_rank, indecompose, indecompose_with, is_indecomposable, is_isomorphic,
    is_isomorphic_with, Decomposition, DEFAULT_DECOMPOSE_BUDGET,
};
pub use hom::{hom_dim, hom_space, hom_space_direct};
pub use homological::{
    ext1_dim, id, is_injective, is_projective, minimal_presentation, pd, projective_cover, syzygy, tau, tau_inv,
    transpose, Dimension, MinimalPresentation, ProjectiveCover,
};

/// A family of matrices, one per vertex.
pub type Morphism = Vec<Matrix>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReprError {
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("vertex index {0} out of range")]
    UnknownVertex(usize),
    #[error("wrong shape for {what}: expected {expected:?}, found {found:?}")]
    Shape { what: &'static str, expected: (usize, usize), found: (usize, usize) },
    #[error("relation {0} does not act as zero")]
    RelationViolated(usize),
    #[error("morphism does not commute with arrow {0}")]
    NotAMorphism(usize),
    #[error("decomposition budget exhausted after {tried} candidate endomorphisms")]
    DecompositionBudget { tried: usize },
    #[error("module is decomposable")]
    Decomposable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    algebra: Algebra,
    dims: Vec<usize>,
    maps: Vec<Matrix>,
}

impl Representation {
    pub fn new(algebra: Algebra, dims: Vec<usize>, maps: Vec<Matrix>) -> Result<Self, ReprError> {
        let q = algebra.quiver();
        if dims.len() != q.num_vertices() {
            return Err(ReprError::Shape { what: "dimension vector", expected: (q.num_vertices(), 1), found: (dims.len(), 1) });
        }
        if maps.len() != q.num_arrows() {
            return Err(ReprError::Shape { what: "arrow list", expected: (q.num_arrows(), 1), found: (maps.len(), 1) });
        }
        for (i, a) in q.arrows().iter().enumerate() {
            let expected = (dims[a.source], dims[a.target]);
            if maps[i].shape() != expected {
                return Err(ReprError::Shape { what: "arrow map", expected, found: maps[i].shape() });
            }
        }
        let m = Representation { algebra, dims, maps };
        for (i, r) in m.algebra.presentation().relations().iter().enumerate() {
            let mut acc = Matrix::zeros(m.dims[r.source()], m.dims[r.target()]);
            for (c, p) in r.terms() {
                acc = acc.add(&m.path_matrix(p).scale(c));
            }
            if !acc.is_zero() {
                return Err(ReprError::RelationViolated(i));
            }
        }
        Ok(m)
    }

    /// Trusted constructor for internally produced modules.
    pub(crate) fn from_parts(algebra: Algebra, dims: Vec<usize>, maps: Vec<Matrix>) -> Self {
        debug_assert!(Representation::new(algebra.clone(), dims.clone(), maps.clone()).is_ok());
        Representation { algebra, dims, maps }
    }

    pub fn zero(algebra: &Algebra) -> Self {
        let q = algebra.quiver();
        let maps = q.arrows().iter().map(|_| Matrix::zeros(0, 0)).collect();
        Representation { algebra: algebra.clone(), dims: vec![0; q.num_vertices()], maps }
    }

    pub fn simple(algebra: &Algebra, v: usize) -> Result<Self, ReprError> {
        let q = algebra.quiver();
        if v >= q.num_vertices() {
            return Err(ReprError::UnknownVertex(v));
        }
        let mut dims = vec![0; q.num_vertices()];
        dims[v] = 1;
        let maps = q.arrows().iter().map(|a| Matrix::zeros(dims[a.source], dims[a.target])).collect();
        Ok(Representation { algebra: algebra.clone(), dims, maps })
    }

    /// The projective `A e_v`: basis the paths ending at `v`.
    pub fn projective(algebra: &Algebra, v: usize) -> Result<Self, ReprError> {
        if v >= algebra.num_vertices() {
            return Err(ReprError::UnknownVertex(v));
        }
        let (p, _) = projective_sum(algebra, &[v]);
        Ok(p)
    }

    /// The injective `D(e_v A)`.
    pub fn injective(algebra: &Algebra, v: usize) -> Result<Self, ReprError> {
        Ok(Representation::projective(&algebra.opposite(), v)?.dual())
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim_at(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn map(&self, arrow: usize) -> &Matrix {
        &self.maps[arrow]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    /// Action of a path as a `dim M(source) x dim M(target)` matrix.
    pub fn path_matrix(&self, p: &Path) -> Matrix {
        let mut acc = Matrix::identity(self.dims[p.target]);
        for &a in p.arrows.iter().rev() {
            acc = self.maps[a].mul(&acc);
        }
        acc
    }

    /// Action matrices of every basis element of the algebra, indexed by
    /// basis position.
    pub fn basis_action(&self) -> Vec<Matrix> {
        let alg = &self.algebra;
        let mut order: Vec<usize> = (0..alg.dim()).collect();
        order.sort_by_key(|&i| alg.basis_path(i).len());
        let mut out: Vec<Option<Matrix>> = vec![None; alg.dim()];
        for i in order {
            let p = alg.basis_path(i);
            let m = if p.is_trivial() {
                Matrix::identity(self.dims[p.source])
            } else {
                let rest = Path { source: self.algebra.quiver().arrow(p.arrows[0]).target, target: p.target, arrows: p.arrows[1..].to_vec() };
                let tail = match alg.reduce_path(&rest).as_slice() {
                    [(j, c)] if c.is_one() => out[*j].clone().expect("subpaths come first"),
                    _ => self.path_matrix(&rest),
                };
                self.maps[p.arrows[0]].mul(&tail)
            };
            out[i] = Some(m);
        }
        out.into_iter().map(|m| m.expect("filled")).collect()
    }

    /// Action of an element supported on paths from `s` to `t`.
    pub fn element_matrix(&self, x: &[(usize, Rational)], s: usize, t: usize, action: &[Matrix]) -> Matrix {
        let mut acc = Matrix::zeros(self.dims[s], self.dims[t]);
        for (i, c) in x {
            acc = acc.add(&action[*i].scale(c));
        }
        acc
    }

    /// `D M`, a module over the opposite algebra.
    pub fn dual(&self) -> Representation {
        Representation {
            algebra: self.algebra.opposite(),
            dims: self.dims.clone(),
            maps: self.maps.iter().map(Matrix::transpose).collect(),
        }
    }

    pub fn identity(&self) -> Morphism {
        self.dims.iter().map(|&d| Matrix::identity(d)).collect()
    }

    pub fn zero_morphism(&self, to: &Representation) -> Morphism {
        self.dims.iter().zip(&to.dims).map(|(&m, &n)| Matrix::zeros(n, m)).collect()
    }

    /// Checks the commutation rule for a candidate morphism `self -> to`.
    pub fn check_morphism(&self, to: &Representation, f: &[Matrix]) -> Result<(), ReprError> {
        if self.algebra != to.algebra {
            return Err(ReprError::AlgebraMismatch);
        }
        for (v, fv) in f.iter().enumerate() {
            if fv.shape() != (to.dims[v], self.dims[v]) {
                return Err(ReprError::Shape { what: "morphism component", expected: (to.dims[v], self.dims[v]), found: fv.shape() });
            }
        }
        for (i, a) in self.algebra.quiver().arrows().iter().enumerate() {
            if f[a.source].mul(&self.maps[i]) != to.maps[i].mul(&f[a.target]) {
                return Err(ReprError::NotAMorphism(i));
            }
        }
        Ok(())
    }

    /// Subspaces spanned by the images of all arrows, per vertex.
    pub fn radical_basis(&self) -> Vec<Matrix> {
        let q = self.algebra.quiver();
        (0..self.dims.len())
            .map(|v| {
                let mut span = Matrix::zeros(self.dims[v], 0);
                for a in q.arrows_from(v) {
                    span = span.hstack(&self.maps[a]);
                }
                span.column_space()
            })
            .collect()
    }

    /// Elements killed by every arrow, per vertex.
    pub fn socle_basis(&self) -> Vec<Matrix> {
        let q = self.algebra.quiver();
        (0..self.dims.len())
            .map(|v| {
                let mut stacked = Matrix::zeros(0, self.dims[v]);
                for a in q.arrows_to(v) {
                    stacked = stacked.vstack(&self.maps[a]);
                }
                stacked.kernel()
            })
            .collect()
    }

    pub fn top_dims(&self) -> Vec<usize> {
        self.radical_basis().iter().zip(&self.dims).map(|(r, d)| d - r.cols()).collect()
    }

    pub fn socle_dims(&self) -> Vec<usize> {
        self.socle_basis().iter().map(Matrix::cols).collect()
    }

    pub fn radical(&self) -> (Representation, Morphism) {
        self.submodule(&self.radical_basis())
    }

    pub fn socle(&self) -> (Representation, Morphism) {
        self.submodule(&self.socle_basis())
    }

    pub fn top(&self) -> (Representation, Morphism) {
        let (t, proj, _) = self.quotient(&self.radical_basis());
        (t, proj)
    }

    /// Submodule given by a basis (columns) at each vertex, closed under the
    /// action; returns it with its inclusion.
    pub fn submodule(&self, bases: &[Matrix]) -> (Representation, Morphism) {
        let q = self.algebra.quiver();
        let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
        let lefts: Vec<Matrix> = bases.iter().map(|b| b.left_inverse().expect("independent columns")).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| lefts[a.source].mul(&self.maps[i]).mul(&bases[a.target]))
            .collect();
        (Representation::from_parts(self.algebra.clone(), dims, maps), bases.to_vec())
    }

    /// Quotient by a submodule given by bases; returns the quotient, the
    /// projection and a section (complement basis) of the projection.
    pub fn quotient(&self, bases: &[Matrix]) -> (Representation, Morphism, Morphism) {
        let q = self.algebra.quiver();
        let mut proj = Vec::new();
        let mut sect = Vec::new();
        for (v, b) in bases.iter().enumerate() {
            let n = self.dims[v];
            let comp = Matrix::units(n, &b.complement_units());
            let full = b.hstack(&comp);
            let inv = full.inverse().expect("basis");
            proj.push(inv.block(b.cols(), 0, comp.cols(), n));
            sect.push(comp);
        }
        let dims: Vec<usize> = sect.iter().map(Matrix::cols).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| proj[a.source].mul(&self.maps[i]).mul(&sect[a.target]))
            .collect();
        (Representation::from_parts(self.algebra.clone(), dims, maps), proj, sect)
    }

    pub fn kernel(&self, f: &[Matrix]) -> (Representation, Morphism) {
        let bases: Vec<Matrix> = f.iter().map(Matrix::kernel).collect();
        self.submodule(&bases)
    }

    /// Image of `f: self -> target` as a submodule of `target`.
    pub fn image(target: &Representation, f: &[Matrix]) -> (Representation, Morphism) {
        let bases: Vec<Matrix> = f.iter().map(Matrix::column_space).collect();
        target.submodule(&bases)
    }

    /// Cokernel of `f: _ -> target` with projection and section.
    pub fn cokernel(target: &Representation, f: &[Matrix]) -> (Representation, Morphism, Morphism) {
        let bases: Vec<Matrix> = f.iter().map(Matrix::column_space).collect();
        target.quotient(&bases)
    }

    /// Direct sum with the canonical injections and projections.
    pub fn direct_sum(parts: &[&Representation]) -> (Representation, Vec<Morphism>, Vec<Morphism>) {
        let alg = parts[0].algebra.clone();
        let q = alg.quiver();
        let n = q.num_vertices();
        let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let mut m = Matrix::zeros(dims[a.source], dims[a.target]);
                let (mut r, mut c) = (0, 0);
                for p in parts {
                    m.set_block(r, c, &p.maps[i]);
                    r += p.dims[a.source];
                    c += p.dims[a.target];
                }
                m
            })
            .collect();
        let mut incs = Vec::new();
        let mut projs = Vec::new();
        let mut offsets = vec![0usize; n];
        for p in parts {
            let mut inc = Vec::new();
            let mut pr = Vec::new();
            for v in 0..n {
                let mut i = Matrix::zeros(dims[v], p.dims[v]);
                i.set_block(offsets[v], 0, &Matrix::identity(p.dims[v]));
                pr.push(i.transpose());
                inc.push(i);
                offsets[v] += p.dims[v];
            }
            incs.push(inc);
            projs.push(pr);
        }
        (Representation::from_parts(alg, dims, maps), incs, projs)
    }

    pub fn direct_sum_of(parts: &[Representation]) -> Representation {
        if parts.is_empty() {
            panic!("direct sum of an empty list needs an algebra; use Representation::zero");
        }
        let refs: Vec<&Representation> = parts.iter().collect();
        Representation::direct_sum(&refs).0
    }

    pub fn power(&self, k: usize) -> Representation {
        if k == 0 {
            return Representation::zero(&self.algebra);
        }
        Representation::direct_sum_of(&vec![self.clone(); k])
    }

    /// Relabels the module along an automorphism of the quiver:
    /// `(gM)(g v) = M(v)`, `(gM)(g α) = M(α)`.
    pub fn relabel(&self, vperm: &[usize], aperm: &[usize]) -> Representation {
        let mut dims = vec![0; self.dims.len()];
        for (v, &d) in self.dims.iter().enumerate() {
            dims[vperm[v]] = d;
        }
        let mut maps = vec![Matrix::zeros(0, 0); self.maps.len()];
        for (a, m) in self.maps.iter().enumerate() {
            maps[aperm[a]] = m.clone();
        }
        Representation::from_parts(self.algebra.clone(), dims, maps)
    }
}

/// Composition `g ∘ f`.
pub fn compose(g: &[Matrix], f: &[Matrix]) -> Morphism {
    g.iter().zip(f).map(|(a, b)| a.mul(b)).collect()
}

pub fn morphism_is_zero(f: &[Matrix]) -> bool {
    f.iter().all(Matrix::is_zero)
}

pub fn add_morphisms(f: &[Matrix], g: &[Matrix]) -> Morphism {
    f.iter().zip(g).map(|(a, b)| a.add(b)).collect()
}

pub fn scale_morphism(f: &[Matrix], c: &Rational) -> Morphism {
    f.iter().map(|a| a.scale(c)).collect()
}

/// Flattens a morphism into coordinates (row-major per vertex).
pub fn flatten(f: &[Matrix]) -> Vec<Rational> {
    f.iter().flat_map(|m| m.entries().iter().cloned()).collect()
}

pub fn linear_combination(basis: &[Morphism], coeffs: &[Rational]) -> Morphism {
    let mut acc: Morphism = basis[0].iter().map(|m| Matrix::zeros(m.rows(), m.cols())).collect();
    for (b, c) in basis.iter().zip(coeffs) {
        if !c.is_zero() {
            acc = add_morphisms(&acc, &scale_morphism(b, c));
        }
    }
    acc
}

/// `⊕_i P_{vertices[i]}`, with the generator positions: at vertex `x` the
/// coordinates are `(i, basis path x -> vertices[i])`, slot by slot.
pub fn projective_sum(algebra: &Algebra, vertices: &[usize]) -> (Representation, Vec<Vec<(usize, usize)>>) {
    let q = algebra.quiver();
    let n = q.num_vertices();
    let labels: Vec<Vec<(usize, usize)>> = (0..n)
        .map(|x| vertices.iter().enumerate().flat_map(|(i, &v)| algebra.basis_between(x, v).into_iter().map(move |b| (i, b))).collect())
        .collect();
    let position = |x: usize, slot: usize, b: usize| labels[x].iter().position(|&(i, c)| i == slot && c == b);
    let dims: Vec<usize> = labels.iter().map(Vec::len).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let mut m = Matrix::zeros(dims[a.source], dims[a.target]);
            let elem = algebra.arrow_element(ai);
            for (col, &(slot, b)) in labels[a.target].iter().enumerate() {
                for (k, c) in algebra.mul(&elem, &[(b, Rational::one())]) {
                    let row = position(a.source, slot, k).expect("product stays in the slot");
                    m[(row, col)] = c;
                }
            }
            m
        })
        .collect();
    (Representation::from_parts(algebra.clone(), dims, maps), labels)
}

/// Morphism `⊕_j P_{src[j]} -> ⊕_i P_{tgt[i]}` sending the generator of
/// slot `j` to `Σ_i rho[j][i]` (each `rho[j][i]` a combination of paths
/// `src[j] -> tgt[i]`).
pub fn projective_map(algebra: &Algebra, src: &[usize], tgt: &[usize], rho: &[Vec<Element>]) -> (Representation, Representation, Morphism) {
    let (p1, l1) = projective_sum(algebra, src);
    let (p0, l0) = projective_sum(algebra, tgt);
    let n = algebra.num_vertices();
    let f = (0..n)
        .map(|x| {
            let mut m = Matrix::zeros(p0.dims[x], p1.dims[x]);
            for (col, &(j, b)) in l1[x].iter().enumerate() {
                for (i, r) in rho[j].iter().enumerate() {
                    for (k, c) in algebra.mul(&[(b, Rational::one())], r) {
                        let row = l0[x].iter().position(|&(s, bb)| s == i && bb == k).expect("path into slot");
                        m[(row, col)] += c;
                    }
                }
            }
            m
        })
        .collect();
    (p1, p0, f)
}

#[cfg(test)]
mod tests;
