use alloc::vec::Vec;

use num_bigint::BigInt;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::{hom_space, linear_combination, Morphism, ReprError, Representation};
use crate::linalg::{charpoly, rational_roots, Matrix, Rational};

pub const DEFAULT_DECOMPOSE_BUDGET: usize = 64;

const ROOT_SEARCH_LIMIT: u64 = 1 << 36;

#[derive(Debug, Clone)]
pub struct Decomposition {
    /// Pairwise non-isomorphic indecomposable summands with multiplicities.
    pub summands: Vec<(Representation, usize)>,
}

impl Decomposition {
    pub fn count(&self) -> usize {
        self.summands.iter().map(|s| s.1).sum()
    }
}

pub(crate) fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub(crate) fn small_int(rng: &mut ChaCha8Rng, radius: u64) -> Rational {
    let v = (rng.next_u64() % (2 * radius + 1)) as i64 - radius as i64;
    Rational::from_integer(BigInt::from(v))
}

fn trace(f: &[Matrix]) -> Rational {
    f.iter().fold(Rational::from_integer(BigInt::from(0)), |acc, m| acc + m.trace())
}

/// Rank of the trace form `(f, g) ↦ tr(f ∘ g)` on `End(M)`.
///
/// In characteristic zero the radical of `End(M)` is exactly the kernel of
/// this form, so the rank is `Σ d_i²` when `M = ⊕ X_i^{d_i}` with the `X_i`
/// pairwise non-isomorphic and absolutely indecomposable; it is 1 exactly
/// when `End(M)` is local with residue field the rationals.
pub fn endomorphism_trace_rank(m: &Representation) -> usize {
    let basis = hom_space(m, m).expect("same algebra");
    trace_rank(&basis)
}

fn trace_rank(basis: &[Morphism]) -> usize {
    let k = basis.len();
    let mut t = Matrix::zeros(k, k);
    for i in 0..k {
        for j in i..k {
            let prod: Morphism = basis[i].iter().zip(&basis[j]).map(|(a, b)| a.mul(b)).collect();
            let v = trace(&prod);
            t[(i, j)] = v.clone();
            t[(j, i)] = v;
        }
    }
    t.rank()
}

pub fn is_indecomposable(m: &Representation) -> bool {
    !m.is_zero() && endomorphism_trace_rank(m) == 1
}

fn candidate(basis: &[Morphism], k: usize, rng: &mut ChaCha8Rng) -> Morphism {
    let n = basis.len();
    if k < n {
        return basis[k].clone();
    }
    let k = k - n;
    if k < n * (n - 1) / 2 {
        let (mut i, mut rest) = (0, k);
        while rest >= n - 1 - i {
            rest -= n - 1 - i;
            i += 1;
        }
        let j = i + 1 + rest;
        return basis[i].iter().zip(&basis[j]).map(|(a, b)| a.add(b)).collect();
    }
    let coeffs: Vec<Rational> = (0..n).map(|_| small_int(rng, 3)).collect();
    linear_combination(basis, &coeffs)
}

/// Fitting decomposition `M = ker g^N ⊕ im g^N` for `g = f - λ`, when both
/// parts are nonzero.
fn fitting_split(m: &Representation, f: &[Matrix]) -> Option<(Vec<Matrix>, Vec<Matrix>)> {
    let mut eigen: Vec<Rational> = Vec::new();
    for fv in f {
        if fv.rows() == 0 {
            continue;
        }
        for r in rational_roots(&charpoly(fv), ROOT_SEARCH_LIMIT)? {
            if !eigen.contains(&r) {
                eigen.push(r);
            }
        }
    }
    eigen.sort();
    for lambda in eigen {
        let mut ker = Vec::new();
        let mut im = Vec::new();
        for (v, fv) in f.iter().enumerate() {
            let d = m.dim_at(v);
            let g = fv.sub(&Matrix::scalar(d, &lambda)).power(d);
            ker.push(g.kernel());
            im.push(g.column_space());
        }
        let k: usize = ker.iter().map(Matrix::cols).sum();
        let i: usize = im.iter().map(Matrix::cols).sum();
        if k > 0 && i > 0 {
            return Some((ker, im));
        }
    }
    None
}

pub fn indecompose(m: &Representation) -> Result<Decomposition, ReprError> {
    indecompose_with(m, 0, DEFAULT_DECOMPOSE_BUDGET)
}

/// Splits `M` into indecomposables by Fitting decompositions of
/// endomorphisms; candidates are basis elements of `End(M)`, their pairwise
/// sums, then seeded random combinations, `budget` in total per split.
pub fn indecompose_with(m: &Representation, seed: u64, budget: usize) -> Result<Decomposition, ReprError> {
    let mut rng = rng(seed);
    let mut work = alloc::vec![m.clone()];
    let mut pieces: Vec<Representation> = Vec::new();
    let mut tried = 0;
    while let Some(x) = work.pop() {
        if x.is_zero() {
            continue;
        }
        let basis = hom_space(&x, &x)?;
        if basis.len() == 1 || trace_rank(&basis) == 1 {
            pieces.push(x);
            continue;
        }
        let mut split = None;
        for k in 0..budget {
            tried += 1;
            let f = candidate(&basis, k, &mut rng);
            if let Some(s) = fitting_split(&x, &f) {
                split = Some(s);
                break;
            }
        }
        let Some((ker, im)) = split else {
            return Err(ReprError::DecompositionBudget { tried });
        };
        work.push(x.submodule(&im).0);
        work.push(x.submodule(&ker).0);
    }
    let mut summands: Vec<(Representation, usize)> = Vec::new();
    for p in pieces {
        match summands.iter_mut().find(|(s, _)| is_isomorphic_with(s, &p, seed)) {
            Some(entry) => entry.1 += 1,
            None => summands.push((p, 1)),
        }
    }
    summands.sort_by(|a, b| a.0.dims().cmp(b.0.dims()));
    Ok(Decomposition { summands })
}

/// Independent re-check of a decomposition: dimension vectors add up, each
/// summand has local endomorphism ring, distinct summands are
/// non-isomorphic, and the trace-form rank of `End(M)` equals `Σ d_i²`.
pub fn certify_decomposition(m: &Representation, dec: &Decomposition) -> bool {
    let n = m.dims().len();
    let mut total = alloc::vec![0usize; n];
    for (s, d) in &dec.summands {
        for v in 0..n {
            total[v] += d * s.dim_at(v);
        }
        if !is_indecomposable(s) {
            return false;
        }
    }
    if total != m.dims() {
        return false;
    }
    for i in 0..dec.summands.len() {
        for j in i + 1..dec.summands.len() {
            if is_isomorphic(&dec.summands[i].0, &dec.summands[j].0) {
                return false;
            }
        }
    }
    let squares: usize = dec.summands.iter().map(|s| s.1 * s.1).sum();
    endomorphism_trace_rank(m) == squares
}

pub fn is_isomorphic(m: &Representation, n: &Representation) -> bool {
    is_isomorphic_with(m, n, 0)
}

/// Tests a few random elements of `Hom(M, N)` for invertibility; a `true`
/// answer is certified by the invertible morphism found.
pub fn is_isomorphic_with(m: &Representation, n: &Representation, seed: u64) -> bool {
    if m.algebra() != n.algebra() || m.dims() != n.dims() {
        return false;
    }
    if m.is_zero() {
        return true;
    }
    let basis = hom_space(m, n).expect("same algebra");
    if basis.is_empty() {
        return false;
    }
    let invertible = |f: &Morphism| f.iter().all(Matrix::is_invertible);
    if basis.len() == 1 {
        return invertible(&basis[0]);
    }
    let mut rng = rng(seed ^ 0x9e37_79b9);
    for _ in 0..4 {
        let coeffs: Vec<Rational> = basis.iter().map(|_| small_int(&mut rng, 1000)).collect();
        if invertible(&linear_combination(&basis, &coeffs)) {
            return true;
        }
    }
    false
}
