use alloc::vec::Vec;

use num_traits::Zero;

use super::{projective_cover, Morphism, ReprError, Representation};
use crate::linalg::{solve_homogeneous, Echelon, Matrix, SparseRow};

/// Basis of `Hom(M, N)`.
///
/// A morphism out of `M` is determined by where it sends the top
/// generators of `M`, so the unknowns are one vector of `N(v_i)` per
/// generator, constrained to kill the syzygy of `M`.
pub fn hom_space(m: &Representation, n: &Representation) -> Result<Vec<Morphism>, ReprError> {
    if m.algebra() != n.algebra() {
        return Err(ReprError::AlgebraMismatch);
    }
    if m.is_zero() || n.is_zero() {
        return Ok(Vec::new());
    }
    let cover = projective_cover(m);
    let action = n.basis_action();
    let nv = m.algebra().num_vertices();
    let offsets: Vec<usize> = cover
        .vertices
        .iter()
        .scan(0, |acc, &v| {
            let o = *acc;
            *acc += n.dim_at(v);
            Some(o)
        })
        .collect();
    let unknowns: usize = cover.vertices.iter().map(|&v| n.dim_at(v)).sum();
    if unknowns == 0 {
        return Ok(Vec::new());
    }
    let mut ech = Echelon::new(unknowns);
    for x in 0..nv {
        if n.dim_at(x) == 0 {
            continue;
        }
        let kernel = cover.map[x].kernel();
        for kc in 0..kernel.cols() {
            // Σ_(i,b) k_(i,b) N(b) n_i = 0, one equation per row of N(x)
            let mut rows: Vec<SparseRow> = (0..n.dim_at(x)).map(|_| Vec::new()).collect();
            for (pos, &(i, b)) in cover.labels[x].iter().enumerate() {
                let k = &kernel[(pos, kc)];
                if k.is_zero() {
                    continue;
                }
                let nb = &action[b];
                for (r, row) in rows.iter_mut().enumerate() {
                    for c in 0..nb.cols() {
                        if !nb[(r, c)].is_zero() {
                            row.push((offsets[i] + c, k * &nb[(r, c)]));
                        }
                    }
                }
            }
            for row in rows {
                ech.insert(merge(row));
            }
        }
    }
    let solutions = ech.nullspace();
    let right_inverses: Vec<Matrix> =
        (0..nv).map(|x| cover.map[x].transpose().left_inverse().expect("cover is onto").transpose()).collect();
    Ok(solutions
        .iter()
        .map(|sol| {
            (0..nv)
                .map(|x| {
                    let mut psi = Matrix::zeros(n.dim_at(x), cover.labels[x].len());
                    for (pos, &(i, b)) in cover.labels[x].iter().enumerate() {
                        let v = cover.vertices[i];
                        let ni = &sol[offsets[i]..offsets[i] + n.dim_at(v)];
                        let col = action[b].mul_vec(ni);
                        for (r, val) in col.into_iter().enumerate() {
                            psi[(r, pos)] = val;
                        }
                    }
                    psi.mul(&right_inverses[x])
                })
                .collect()
        })
        .collect())
}

fn merge(mut row: SparseRow) -> SparseRow {
    row.sort_by_key(|e| e.0);
    let mut out: SparseRow = Vec::with_capacity(row.len());
    for (c, v) in row {
        match out.last_mut() {
            Some(last) if last.0 == c => last.1 += v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|e| !e.1.is_zero());
    out
}

pub fn hom_dim(m: &Representation, n: &Representation) -> Result<usize, ReprError> {
    Ok(hom_space(m, n)?.len())
}

/// Basis of `Hom(M, N)` from the full commutation system
/// `f_s M(α) = N(α) f_t`; slower, kept as an independent check.
pub fn hom_space_direct(m: &Representation, n: &Representation) -> Result<Vec<Morphism>, ReprError> {
    if m.algebra() != n.algebra() {
        return Err(ReprError::AlgebraMismatch);
    }
    let nv = m.dims().len();
    let mut offsets = Vec::with_capacity(nv);
    let mut total = 0;
    for v in 0..nv {
        offsets.push(total);
        total += m.dim_at(v) * n.dim_at(v);
    }
    // unknown (v, r, c) is entry (r, c) of f_v
    let var = |v: usize, r: usize, c: usize| offsets[v] + r * m.dim_at(v) + c;
    let mut equations = Vec::new();
    for (i, a) in m.algebra().quiver().arrows().iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let (ma, na) = (m.map(i), n.map(i));
        for r in 0..n.dim_at(s) {
            for c in 0..m.dim_at(t) {
                let mut row: SparseRow = Vec::new();
                for k in 0..m.dim_at(s) {
                    if !ma[(k, c)].is_zero() {
                        row.push((var(s, r, k), ma[(k, c)].clone()));
                    }
                }
                for k in 0..n.dim_at(t) {
                    if !na[(r, k)].is_zero() {
                        row.push((var(t, k, c), -na[(r, k)].clone()));
                    }
                }
                equations.push(merge(row));
            }
        }
    }
    let basis = solve_homogeneous(equations, total);
    Ok(basis
        .iter()
        .map(|sol| {
            (0..nv)
                .map(|v| {
                    let mut f = Matrix::zeros(n.dim_at(v), m.dim_at(v));
                    for r in 0..n.dim_at(v) {
                        for c in 0..m.dim_at(v) {
                            f[(r, c)] = sol[var(v, r, c)].clone();
                        }
                    }
                    f
                })
                .collect()
        })
        .collect())
}
