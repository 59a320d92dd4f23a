use alloc::vec::Vec;

use num_traits::Zero;

use super::{hom_dim, projective_map, projective_sum, Morphism, Representation};
use crate::linalg::{Matrix, Rational};
use crate::presentation::Element;

/// `π: P0 = ⊕_i P_{vertices[i]} -> M` sending the generator of slot `i` to
/// `generators[i] ∈ M(vertices[i])`.
#[derive(Debug, Clone)]
pub struct ProjectiveCover {
    pub vertices: Vec<usize>,
    pub generators: Vec<Vec<Rational>>,
    pub module: Representation,
    /// Coordinates of `P0(x)`: `(slot, basis index of a path x -> vertices[slot])`.
    pub labels: Vec<Vec<(usize, usize)>>,
    pub map: Morphism,
}

pub fn projective_cover(m: &Representation) -> ProjectiveCover {
    let alg = m.algebra().clone();
    let mut vertices = Vec::new();
    let mut generators = Vec::new();
    for (v, rad) in m.radical_basis().iter().enumerate() {
        for u in rad.complement_units() {
            let mut g = alloc::vec![Rational::zero(); m.dim_at(v)];
            g[u] = num_traits::One::one();
            vertices.push(v);
            generators.push(g);
        }
    }
    let (module, labels) = projective_sum(&alg, &vertices);
    let action = m.basis_action();
    let map = (0..alg.num_vertices())
        .map(|x| {
            let mut pi = Matrix::zeros(m.dim_at(x), labels[x].len());
            for (col, &(i, b)) in labels[x].iter().enumerate() {
                for (r, val) in action[b].mul_vec(&generators[i]).into_iter().enumerate() {
                    pi[(r, col)] = val;
                }
            }
            pi
        })
        .collect();
    ProjectiveCover { vertices, generators, module, labels, map }
}

/// `ΩM` with its inclusion into the projective cover.
pub fn syzygy(m: &Representation) -> (Representation, Morphism, ProjectiveCover) {
    let cover = projective_cover(m);
    let (omega, inc) = cover.module.kernel(&cover.map);
    (omega, inc, cover)
}

/// `P1 -> P0 -> M -> 0` with `P1 -> P0` given by the path elements
/// `rho[j][i] ∈ e_{w_j} A e_{v_i}`.
#[derive(Debug, Clone)]
pub struct MinimalPresentation {
    pub cover: ProjectiveCover,
    pub p1_vertices: Vec<usize>,
    pub rho: Vec<Vec<Element>>,
    pub p1: Representation,
    pub p1_to_p0: Morphism,
}

pub fn minimal_presentation(m: &Representation) -> MinimalPresentation {
    let (omega, inc, cover) = syzygy(m);
    let alg = m.algebra();
    let omega_cover = projective_cover(&omega);
    let mut rho = Vec::new();
    for (w, h) in omega_cover.vertices.iter().zip(&omega_cover.generators) {
        let image = inc[*w].mul_vec(h);
        let mut row: Vec<Element> = (0..cover.vertices.len()).map(|_| Vec::new()).collect();
        for (pos, &(i, b)) in cover.labels[*w].iter().enumerate() {
            if !image[pos].is_zero() {
                row[i].push((b, image[pos].clone()));
            }
        }
        for e in row.iter_mut() {
            e.sort_by_key(|t| t.0);
        }
        rho.push(row);
    }
    let (p1, _, p1_to_p0) = projective_map(alg, &omega_cover.vertices, &cover.vertices, &rho);
    MinimalPresentation { cover, p1_vertices: omega_cover.vertices, rho, p1, p1_to_p0 }
}

/// `Tr M`, a module over the opposite algebra: the cokernel of
/// `Hom(P0, A) -> Hom(P1, A)`.
pub fn transpose(m: &Representation) -> Representation {
    let pres = minimal_presentation(m);
    let op = m.algebra().opposite();
    let n0 = pres.cover.vertices.len();
    let rho_op: Vec<Vec<Element>> =
        (0..n0).map(|i| pres.rho.iter().map(|row| row[i].clone()).collect()).collect();
    let (_, target, f) = projective_map(&op, &pres.cover.vertices, &pres.p1_vertices, &rho_op);
    Representation::cokernel(&target, &f).0
}

/// `τM = D Tr M`; `None` for projective (or zero) input.
pub fn tau(m: &Representation) -> Option<Representation> {
    let t = transpose(m).dual();
    (!t.is_zero()).then_some(t)
}

/// `τ⁻M = Tr D M`; `None` for injective (or zero) input.
pub fn tau_inv(m: &Representation) -> Option<Representation> {
    let t = transpose(&m.dual());
    (!t.is_zero()).then_some(t)
}

pub fn is_projective(m: &Representation) -> bool {
    projective_cover(m).module.total_dim() == m.total_dim()
}

pub fn is_injective(m: &Representation) -> bool {
    is_projective(&m.dual())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Dimension {
    Finite(usize),
    AtLeast(usize),
}

/// Projective dimension by iterated syzygies, giving up at `bound`.
pub fn pd(m: &Representation, bound: usize) -> Dimension {
    let mut current = m.clone();
    for n in 0..=bound {
        let (omega, _, _) = syzygy(&current);
        if omega.is_zero() {
            return Dimension::Finite(n);
        }
        current = omega;
    }
    Dimension::AtLeast(bound + 1)
}

pub fn id(m: &Representation, bound: usize) -> Dimension {
    pd(&m.dual(), bound)
}

/// `dim Ext¹(M, N)` from `0 -> Hom(M,N) -> Hom(P0,N) -> Hom(ΩM,N) -> Ext¹(M,N) -> 0`.
pub fn ext1_dim(m: &Representation, n: &Representation) -> usize {
    let (omega, _, cover) = syzygy(m);
    let hom_p0: usize = cover.vertices.iter().map(|&v| n.dim_at(v)).sum();
    let hom_omega = hom_dim(&omega, n).expect("same algebra");
    let hom_m = hom_dim(m, n).expect("same algebra");
    hom_omega + hom_m - hom_p0
}
