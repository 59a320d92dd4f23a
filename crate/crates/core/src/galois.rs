//! Galois coverings of bound quiver algebras by finite groups, with push-down
//! and pull-up of representations.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::One;

use crate::linalg::{Echelon, Matrix, Rational};
use crate::presentation::{Algebra, Element, Path, Presentation};
use crate::repr::{
    compose, flatten, hom_dim, hom_space, indecompose_with, is_isomorphic, tau, Morphism, ReprError,
    Representation, DEFAULT_DECOMPOSE_BUDGET,
};
use crate::tq::Verdict;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GaloisError {
    #[error("permutation has wrong length or is not a bijection: {0}")]
    BadPermutation(String),
    #[error("not an automorphism: {0}")]
    NotAutomorphism(String),
    #[error("arrow {0} is not mapped over its ends")]
    ArrowEnds(String),
    #[error("group generated by the given permutations exceeds {0} elements")]
    TooLarge(usize),
    #[error("the action is not free on vertices")]
    NotFree,
    #[error(transparent)]
    Presentation(#[from] crate::presentation::PresentationError),
    #[error(transparent)]
    Repr(#[from] ReprError),
}

/// Product of the arrows of `p` in `alg`.
pub fn path_element(alg: &Algebra, p: &Path) -> Element {
    p.arrows
        .iter()
        .fold(vec![(alg.idempotent(p.source), Rational::one())], |acc, &a| alg.mul(&acc, &alg.arrow_element(a)))
}

fn map_path(p: &Path, vmap: &[usize], amap: &[usize]) -> Path {
    Path { source: vmap[p.source], target: vmap[p.target], arrows: p.arrows.iter().map(|&a| amap[a]).collect() }
}

/// Image of every relation of `from` under the maps is zero in `to`.
fn relations_preserved(from: &Presentation, to: &Algebra, vmap: &[usize], amap: &[usize]) -> Result<(), String> {
    for (i, rel) in from.relations().iter().enumerate() {
        let mut acc: Element = Vec::new();
        for (c, p) in rel.terms() {
            acc = crate::linalg::axpy(&acc, c, &path_element(to, &map_path(p, vmap, amap)));
        }
        if !acc.is_empty() {
            return Err(format!("relation {i} is not mapped into the ideal"));
        }
    }
    Ok(())
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    p.len() == n && p.iter().copied().collect::<BTreeSet<_>>().len() == n && p.iter().all(|&x| x < n)
}

const MAX_GROUP_ORDER: usize = 4096;

/// A finite group acting on a presentation, listed element by element as
/// vertex and arrow permutations; element 0 is the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAction {
    pub elements: Vec<(Vec<usize>, Vec<usize>)>,
}

impl GroupAction {
    pub fn trivial(p: &Presentation) -> Self {
        let q = p.quiver();
        GroupAction { elements: vec![((0..q.num_vertices()).collect(), (0..q.num_arrows()).collect())] }
    }

    /// Closure of the generators, each checked to be an automorphism of the
    /// bound quiver.
    pub fn generated(p: &Presentation, generators: &[(Vec<usize>, Vec<usize>)]) -> Result<Self, GaloisError> {
        let q = p.quiver();
        let (nv, na) = (q.num_vertices(), q.num_arrows());
        let alg = p.algebra().map_err(|e| GaloisError::NotAutomorphism(format!("{e}")))?;
        for (k, (vp, ap)) in generators.iter().enumerate() {
            if !is_permutation(vp, nv) || !is_permutation(ap, na) {
                return Err(GaloisError::BadPermutation(format!("generator {k}")));
            }
            for (a, arrow) in q.arrows().iter().enumerate() {
                let image = q.arrow(ap[a]);
                if image.source != vp[arrow.source] || image.target != vp[arrow.target] {
                    return Err(GaloisError::NotAutomorphism(format!("generator {k} moves arrow {} off its ends", arrow.name)));
                }
            }
            relations_preserved(p, &alg, vp, ap).map_err(|e| GaloisError::NotAutomorphism(format!("generator {k}: {e}")))?;
        }
        let identity: (Vec<usize>, Vec<usize>) = ((0..nv).collect(), (0..na).collect());
        let mut elements = vec![identity.clone()];
        let mut seen: BTreeSet<(Vec<usize>, Vec<usize>)> = [identity].into();
        let mut i = 0;
        while i < elements.len() {
            for (gv, ga) in generators {
                let (ev, ea) = &elements[i];
                let next: (Vec<usize>, Vec<usize>) = (ev.iter().map(|&x| gv[x]).collect(), ea.iter().map(|&x| ga[x]).collect());
                if seen.insert(next.clone()) {
                    elements.push(next);
                    if elements.len() > MAX_GROUP_ORDER {
                        return Err(GaloisError::TooLarge(MAX_GROUP_ORDER));
                    }
                }
            }
            i += 1;
        }
        Ok(GroupAction { elements })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn inverse(&self, g: usize) -> usize {
        let (vp, ap) = &self.elements[g];
        self.elements
            .iter()
            .position(|(wv, wa)| wv.iter().enumerate().all(|(i, &j)| vp[j] == i) && wa.iter().enumerate().all(|(i, &j)| ap[j] == i))
            .expect("groups are closed under inverses")
    }

    /// No non-identity element fixes a vertex.
    pub fn is_free(&self) -> bool {
        self.elements.iter().skip(1).all(|(vp, _)| vp.iter().enumerate().all(|(i, &j)| i != j))
    }

    /// `^gM`, supported on `g` applied to the support of `M`.
    pub fn translate(&self, g: usize, m: &Representation) -> Representation {
        let (vp, ap) = &self.elements[g];
        m.relabel(vp, ap)
    }

    /// Indices of `g` with `^gM ≅ M`.
    pub fn stabilizer(&self, m: &Representation) -> Vec<usize> {
        (0..self.order()).filter(|&g| is_isomorphic(&self.translate(g, m), m)).collect()
    }
}

/// A functor between bound quiver algebras sending arrows to arrows.
#[derive(Debug, Clone)]
pub struct CoveringFunctor {
    pub total: Algebra,
    pub base: Algebra,
    pub vertex_map: Vec<usize>,
    pub arrow_map: Vec<usize>,
}

impl CoveringFunctor {
    pub fn new(total: &Algebra, base: &Algebra, vertex_map: Vec<usize>, arrow_map: Vec<usize>) -> Result<Self, GaloisError> {
        let (qt, qb) = (total.quiver(), base.quiver());
        if vertex_map.len() != qt.num_vertices() || vertex_map.iter().any(|&v| v >= qb.num_vertices()) {
            return Err(GaloisError::BadPermutation("vertex map".into()));
        }
        if arrow_map.len() != qt.num_arrows() || arrow_map.iter().any(|&a| a >= qb.num_arrows()) {
            return Err(GaloisError::BadPermutation("arrow map".into()));
        }
        for (a, arrow) in qt.arrows().iter().enumerate() {
            let image = qb.arrow(arrow_map[a]);
            if image.source != vertex_map[arrow.source] || image.target != vertex_map[arrow.target] {
                return Err(GaloisError::ArrowEnds(arrow.name.clone()));
            }
        }
        Ok(CoveringFunctor { total: total.clone(), base: base.clone(), vertex_map, arrow_map })
    }

    pub fn identity(alg: &Algebra) -> Self {
        let q = alg.quiver();
        CoveringFunctor {
            total: alg.clone(),
            base: alg.clone(),
            vertex_map: (0..q.num_vertices()).collect(),
            arrow_map: (0..q.num_arrows()).collect(),
        }
    }

    pub fn fibre(&self, b: usize) -> Vec<usize> {
        (0..self.vertex_map.len()).filter(|&x| self.vertex_map[x] == b).collect()
    }

    fn image_matrix(&self, paths: &[Path], s: usize, t: usize) -> Matrix {
        let target = self.base.basis_between(s, t);
        let mut m = Matrix::zeros(target.len(), paths.len());
        for (col, p) in paths.iter().enumerate() {
            for (k, c) in path_element(&self.base, &map_path(p, &self.vertex_map, &self.arrow_map)) {
                let row = target.iter().position(|&b| b == k).expect("image between the mapped vertices");
                m[(row, col)] = c;
            }
        }
        m
    }
}

/// Relations map into the ideal, and for all `x` and base vertices `b` the
/// maps `⊕_{Fy=b} E(x,y) -> B(Fx,b)` and `⊕_{Fy=b} E(y,x) -> B(b,Fx)` are
/// bijective.
pub fn check_covering_functor(f: &CoveringFunctor) -> Vec<Verdict> {
    let mut out = Vec::new();
    let name = "relations preserved";
    out.push(match relations_preserved(f.total.presentation(), &f.base, &f.vertex_map, &f.arrow_map) {
        Ok(()) => Verdict { condition: name.into(), passed: true, witness: None },
        Err(e) => Verdict { condition: name.into(), passed: false, witness: Some(e) },
    });
    let (qt, qb) = (f.total.quiver(), f.base.quiver());
    for (dir, label) in [(0, "outgoing sums bijective"), (1, "incoming sums bijective")] {
        let mut verdict = Verdict { condition: label.into(), passed: true, witness: None };
        'outer: for x in 0..qt.num_vertices() {
            for b in 0..qb.num_vertices() {
                let mut paths = Vec::new();
                for y in f.fibre(b) {
                    let between = if dir == 0 { f.total.basis_between(x, y) } else { f.total.basis_between(y, x) };
                    paths.extend(between.into_iter().map(|i| f.total.basis_path(i)));
                }
                let (s, t) = if dir == 0 { (f.vertex_map[x], b) } else { (b, f.vertex_map[x]) };
                let m = f.image_matrix(&paths, s, t);
                if m.rank() != m.rows() || m.rank() != m.cols() {
                    verdict.passed = false;
                    verdict.witness = Some(format!("({}, {})", qt.vertex_name(x), qb.vertex_name(b)));
                    break 'outer;
                }
            }
        }
        out.push(verdict);
    }
    out
}

/// Covering conditions plus: the action is free, `F g = F`, and every fibre
/// is a single nonempty orbit.
pub fn check_galois(f: &CoveringFunctor, act: &GroupAction) -> Vec<Verdict> {
    let mut out = check_covering_functor(f);
    let fail = |c: &str, w: String| Verdict { condition: c.into(), passed: false, witness: Some(w) };
    let pass = |c: &str| Verdict { condition: c.into(), passed: true, witness: None };
    out.push(if act.is_free() { pass("free on vertices") } else { fail("free on vertices", "an element fixes a vertex".into()) });
    let invariant = act.elements.iter().enumerate().find(|(_, (vp, ap))| {
        (0..vp.len()).any(|x| f.vertex_map[vp[x]] != f.vertex_map[x]) || (0..ap.len()).any(|a| f.arrow_map[ap[a]] != f.arrow_map[a])
    });
    out.push(match invariant {
        None => pass("F g = F"),
        Some((g, _)) => fail("F g = F", format!("element {g}")),
    });
    let mut transitive = pass("fibres are nonempty orbits");
    for b in 0..f.base.num_vertices() {
        let fibre: BTreeSet<usize> = f.fibre(b).into_iter().collect();
        let Some(&x) = fibre.iter().next() else {
            transitive = fail("fibres are nonempty orbits", format!("empty fibre over {}", f.base.quiver().vertex_name(b)));
            break;
        };
        let orbit: BTreeSet<usize> = act.elements.iter().map(|(vp, _)| vp[x]).collect();
        if orbit != fibre {
            transitive = fail("fibres are nonempty orbits", format!("fibre over {}", f.base.quiver().vertex_name(b)));
            break;
        }
    }
    out.push(transitive);
    out
}

fn fibre_offsets(f: &CoveringFunctor, m: &Representation) -> Vec<usize> {
    let mut offsets = vec![0; f.vertex_map.len()];
    let mut fill = vec![0; f.base.num_vertices()];
    for x in 0..f.vertex_map.len() {
        let b = f.vertex_map[x];
        offsets[x] = fill[b];
        fill[b] += m.dim_at(x);
    }
    offsets
}

/// `F_λ M`: at a base vertex the sum over its fibre, each arrow the sum of
/// the blocks of its preimages.
pub fn push_down(f: &CoveringFunctor, m: &Representation) -> Result<Representation, GaloisError> {
    let qb = f.base.quiver();
    let mut dims = vec![0; qb.num_vertices()];
    for x in 0..f.vertex_map.len() {
        dims[f.vertex_map[x]] += m.dim_at(x);
    }
    let offsets = fibre_offsets(f, m);
    let mut maps: Vec<Matrix> = qb.arrows().iter().map(|a| Matrix::zeros(dims[a.source], dims[a.target])).collect();
    for (a, arrow) in f.total.quiver().arrows().iter().enumerate() {
        let block = m.map(a);
        let target = &mut maps[f.arrow_map[a]];
        for r in 0..block.rows() {
            for c in 0..block.cols() {
                target[(offsets[arrow.source] + r, offsets[arrow.target] + c)] += block[(r, c)].clone();
            }
        }
    }
    Ok(Representation::new(f.base.clone(), dims, maps)?)
}

/// `F_λ` on morphisms: block diagonal over fibres.
pub fn push_down_morphism(f: &CoveringFunctor, m: &Representation, n: &Representation, h: &[Matrix]) -> Morphism {
    let (om, on) = (fibre_offsets(f, m), fibre_offsets(f, n));
    let nb = f.base.num_vertices();
    let mut dm = vec![0; nb];
    let mut dn = vec![0; nb];
    for x in 0..f.vertex_map.len() {
        dm[f.vertex_map[x]] += m.dim_at(x);
        dn[f.vertex_map[x]] += n.dim_at(x);
    }
    let mut out: Morphism = (0..nb).map(|b| Matrix::zeros(dn[b], dm[b])).collect();
    for (x, hx) in h.iter().enumerate() {
        out[f.vertex_map[x]].set_block(on[x], om[x], hx);
    }
    out
}

/// `F_. X = X ∘ F`.
pub fn pull_up(f: &CoveringFunctor, x: &Representation) -> Result<Representation, GaloisError> {
    let dims = f.vertex_map.iter().map(|&b| x.dim_at(b)).collect();
    let maps = f.arrow_map.iter().map(|&a| x.map(a).clone()).collect();
    Ok(Representation::new(f.total.clone(), dims, maps)?)
}

#[derive(Debug, Clone)]
pub enum FirstKind {
    /// An indecomposable summand of `F_. X` pushing down to `X`.
    Lift(Representation),
    NotFirstKind,
}

impl FirstKind {
    pub fn is_first_kind(&self) -> bool {
        matches!(self, FirstKind::Lift(_))
    }
}

/// Decomposes `F_. X` and looks for a summand whose push-down is `X`.
pub fn is_first_kind(f: &CoveringFunctor, x: &Representation, seed: u64) -> Result<FirstKind, GaloisError> {
    let up = pull_up(f, x)?;
    for (s, _) in indecompose_with(&up, seed, DEFAULT_DECOMPOSE_BUDGET)?.summands {
        let down = push_down(f, &s)?;
        if down.dims() == x.dims() && is_isomorphic(&down, x) {
            return Ok(FirstKind::Lift(s));
        }
    }
    Ok(FirstKind::NotFirstKind)
}

/// `dim Hom(F_λ M, F_λ N)` and `Σ_g dim Hom(^gM, N)`.
pub fn covering_property(f: &CoveringFunctor, act: &GroupAction, m: &Representation, n: &Representation) -> Result<(usize, usize), GaloisError> {
    let lhs = hom_dim(&push_down(f, m)?, &push_down(f, n)?)?;
    let mut rhs = 0;
    for g in 0..act.order() {
        rhs += hom_dim(&act.translate(g, m), n)?;
    }
    Ok((lhs, rhs))
}

/// `F_. F_λ M` and `⊕_g ^gM` are isomorphic.
pub fn check_pull_push(f: &CoveringFunctor, act: &GroupAction, m: &Representation) -> Result<bool, GaloisError> {
    let lhs = pull_up(f, &push_down(f, m)?)?;
    let parts: Vec<Representation> = (0..act.order()).map(|g| act.translate(g, m)).collect();
    let rhs = Representation::direct_sum_of(&parts);
    Ok(lhs.dims() == rhs.dims() && is_isomorphic(&lhs, &rhs))
}

fn spans_identity(products: Vec<Morphism>, id: &Morphism) -> bool {
    let n: usize = id.iter().map(|m| m.rows() * m.cols()).sum();
    let mut ech = Echelon::new(n);
    for p in products {
        ech.insert_dense(&flatten(&p));
    }
    ech.contains(crate::linalg::to_sparse(&flatten(id)))
}

/// `(section, retraction)` status of `h: M -> N`.
pub fn section_retraction(m: &Representation, n: &Representation, h: &[Matrix]) -> Result<(bool, bool), GaloisError> {
    let back = hom_space(n, m)?;
    let section = spans_identity(back.iter().map(|b| compose(b, h)).collect(), &m.identity());
    let retraction = spans_identity(back.iter().map(|b| compose(h, b)).collect(), &n.identity());
    Ok((section, retraction))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectionReport {
    pub upstairs: (bool, bool),
    pub downstairs: (bool, bool),
    pub agree: bool,
}

/// Section/retraction status of `h` and of `F_λ h`, computed separately.
pub fn check_section_retraction_reflection(f: &CoveringFunctor, m: &Representation, n: &Representation, h: &[Matrix]) -> Result<ReflectionReport, GaloisError> {
    let upstairs = section_retraction(m, n, h)?;
    let (dm, dn) = (push_down(f, m)?, push_down(f, n)?);
    let downstairs = section_retraction(&dm, &dn, &push_down_morphism(f, m, n, h))?;
    Ok(ReflectionReport { upstairs, downstairs, agree: upstairs == downstairs })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TauCommutation {
    /// Both `X` and `F_λ X` are projective.
    BothProjective,
    Agree,
    Disagree,
    /// Projectivity differs between the two sides.
    Mismatch,
}

/// Compares `F_λ τX` with `τ F_λ X`.
pub fn check_tau_commutation(f: &CoveringFunctor, x: &Representation) -> Result<TauCommutation, GaloisError> {
    let down = push_down(f, x)?;
    match (tau(x), tau(&down)) {
        (None, None) => Ok(TauCommutation::BothProjective),
        (Some(t), Some(td)) => {
            let lhs = push_down(f, &t)?;
            Ok(if lhs.dims() == td.dims() && is_isomorphic(&lhs, &td) { TauCommutation::Agree } else { TauCommutation::Disagree })
        }
        _ => Ok(TauCommutation::Mismatch),
    }
}

/// `E/G` for a free action, with the projection `E -> E/G`. Orbits are
/// named after their first member.
pub fn quotient_presentation(p: &Presentation, act: &GroupAction) -> Result<(Presentation, CoveringFunctor), GaloisError> {
    if !act.is_free() {
        return Err(GaloisError::NotFree);
    }
    let q = p.quiver();
    let orbit_rep = |x: usize, arrow: bool| {
        act.elements.iter().map(|(vp, ap)| if arrow { ap[x] } else { vp[x] }).min().expect("nonempty group")
    };
    let mut quotient = crate::presentation::Quiver::new();
    let mut vmap = vec![0; q.num_vertices()];
    let mut vreps = Vec::new();
    for v in 0..q.num_vertices() {
        let r = orbit_rep(v, false);
        if r == v {
            vreps.push(v);
            quotient.add_vertex(q.vertex_name(v))?;
        }
    }
    for v in 0..q.num_vertices() {
        vmap[v] = vreps.iter().position(|&r| r == orbit_rep(v, false)).expect("orbit representative");
    }
    let mut amap = vec![0; q.num_arrows()];
    let mut areps = Vec::new();
    for (a, arrow) in q.arrows().iter().enumerate() {
        if orbit_rep(a, true) == a {
            areps.push(a);
            quotient.add_arrow(&arrow.name, vmap[arrow.source], vmap[arrow.target])?;
        }
    }
    for a in 0..q.num_arrows() {
        amap[a] = areps.iter().position(|&r| r == orbit_rep(a, true)).expect("orbit representative");
    }
    let mut relations: Vec<crate::presentation::RelationElement> = Vec::new();
    for rel in p.relations() {
        let terms = rel.terms().iter().map(|(c, path)| (c.clone(), map_path(path, &vmap, &amap))).collect();
        let image = crate::presentation::RelationElement::new(&quotient, terms)?;
        if !relations.contains(&image) {
            relations.push(image);
        }
    }
    let mut base = Presentation::new(quotient, relations);
    for (k, v) in p.flags() {
        base.set_flag(k, v);
    }
    let f = CoveringFunctor::new(&p.algebra()?, &base.algebra()?, vmap, amap)?;
    Ok((base, f))
}

/// The Ã₃ → Kronecker covering with its `Z/2` action swapping the sheets.
pub fn a3_tilde_covering() -> (CoveringFunctor, GroupAction) {
    let total_p = crate::fixtures::a3_tilde();
    let base_p = crate::fixtures::kronecker();
    let total = total_p.algebra().expect("fixture");
    let base = base_p.algebra().expect("fixture");
    let f = CoveringFunctor::new(&total, &base, vec![0, 1, 0, 1], vec![0, 1, 0, 1]).expect("fixture covering");
    let act = GroupAction::generated(&total_p, &[(vec![2, 3, 0, 1], vec![2, 3, 0, 1])]).expect("fixture action");
    (f, act)
}
