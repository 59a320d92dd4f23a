//! Peeling weakly shod algebras into one-point extensions, the orbit graph
//! of the connecting component assembled along the peel, simple
//! connectedness, and explicit finite Galois coverings.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::ar::{classify_components, connecting_orbit_graph, knit_projectives_injectives, ArError, Fragment, KnitOptions};
use crate::galois::{check_galois, CoveringFunctor, GaloisError, GroupAction};
use crate::hochschild::{hh1_dim, hh1_separating_consistency, SeparatingConsistency};
use crate::presentation::{Path, Presentation, PresentationError, Quiver, RelationElement};
use crate::repr::{indecompose_with, is_injective, is_projective, tau, tau_inv, ReprError, Representation, DEFAULT_DECOMPOSE_BUDGET};
use crate::tq::{all_passed, Multigraph, TqError, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ShodError {
    #[error(transparent)]
    Presentation(#[from] PresentationError),
    #[error(transparent)]
    Repr(#[from] ReprError),
    #[error(transparent)]
    Ar(#[from] ArError),
    #[error(transparent)]
    Tq(#[from] TqError),
    #[error(transparent)]
    Galois(#[from] GaloisError),
    #[error("the algebra is not connected")]
    Disconnected,
    #[error("vertex {0} has outgoing arrows; the extension vertex must be a sink")]
    NotSink(String),
    #[error("P{0} is not maximal among projectives that succeed injectives")]
    NotMaximal(String),
    #[error("base case unsupported: {0}")]
    BaseCaseUnsupported(String),
    #[error("no τ-orbit label found for a summand supported at {0:?}")]
    OrbitNotFound(Vec<String>),
    #[error("knitted orbit graph ({knitted:?}) and recursive orbit graph ({recursive:?}) differ")]
    Disagreement { knitted: (usize, usize), recursive: (usize, usize) },
    #[error("the algebra is flagged as quasi-tilted of canonical type")]
    CanonicalType,
    #[error("relation {0} is not homogeneous for the arrow weights")]
    Inhomogeneous(usize),
    #[error("quotient data: {0}")]
    Quotient(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShodOptions {
    pub knit: KnitOptions,
    /// Bound on the number of translations applied when locating a module's
    /// τ-orbit.
    pub orbit_walk: usize,
}

impl Default for ShodOptions {
    fn default() -> Self {
        ShodOptions { knit: KnitOptions { steps: 200, max_dim: 10, seed: 0 }, orbit_walk: 32 }
    }
}

/// Projectives (fragment vertices) reachable from injectives, with the
/// maximal ones under reachability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectivesAfterInjectives {
    pub members: Vec<usize>,
    pub maximal: Vec<usize>,
    /// Some vertex of the component was not completely knitted.
    pub incomplete: bool,
}

fn reachable(frag: &Fragment, from: usize, inside: &BTreeSet<usize>) -> BTreeSet<usize> {
    let mut seen: BTreeSet<usize> = [from].into();
    let mut queue = VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for (&(x, y), _) in frag.arrows.range((v, 0)..(v + 1, 0)) {
            if x == v && inside.contains(&y) && seen.insert(y) {
                queue.push_back(y);
            }
        }
    }
    seen
}

pub fn compute_pf(frag: &Fragment, component: &[usize]) -> Result<ProjectivesAfterInjectives, ShodError> {
    frag.topological_order(component)?;
    let inside: BTreeSet<usize> = component.iter().copied().collect();
    let mut members = BTreeSet::new();
    for &v in component {
        if frag.vertices[v].injective.is_some() {
            for w in reachable(frag, v, &inside) {
                if frag.vertices[w].projective.is_some() {
                    members.insert(w);
                }
            }
        }
    }
    let maximal = members
        .iter()
        .copied()
        .filter(|&p| reachable(frag, p, &inside).iter().all(|q| *q == p || !members.contains(q)))
        .collect();
    let incomplete = component.iter().any(|&v| !frag.vertices[v].is_complete());
    Ok(ProjectivesAfterInjectives { members: members.into_iter().collect(), maximal, incomplete })
}

/// `A = B[M]` with `M = rad P_{x0}` and `B` the algebra without `x0`.
#[derive(Debug, Clone)]
pub struct PeelStep {
    pub x0: usize,
    pub x0_name: String,
    pub b: Presentation,
    /// Vertex lists (indices of `b`) of the connected components of `b`.
    pub b_components: Vec<Vec<usize>>,
    pub summands: Vec<(Representation, usize)>,
    /// Component index of each summand.
    pub summand_component: Vec<usize>,
    pub separating: bool,
}

/// Peels the vertex `x0`, which must be a sink.
pub fn peel(p: &Presentation, x0: usize, seed: u64) -> Result<PeelStep, ShodError> {
    let q = p.quiver();
    if q.arrows_from(x0).next().is_some() {
        return Err(ShodError::NotSink(q.vertex_name(x0).into()));
    }
    let alg = p.algebra()?;
    let keep: Vec<usize> = (0..q.num_vertices()).filter(|&v| v != x0).collect();
    let b = p.restrict(&keep);
    let balg = b.algebra()?;
    let (rad, _) = Representation::projective(&alg, x0)?.radical();
    let dims: Vec<usize> = keep.iter().map(|&v| rad.dim_at(v)).collect();
    let maps = b
        .quiver()
        .arrows()
        .iter()
        .map(|a| rad.map(q.arrow_index(&a.name).expect("restricted arrow")).clone())
        .collect();
    let m = Representation::new(balg, dims, maps)?;
    let summands = if m.is_zero() { Vec::new() } else { indecompose_with(&m, seed, DEFAULT_DECOMPOSE_BUDGET)?.summands };
    let b_components = b.quiver().components();
    let summand_component: Vec<usize> = summands
        .iter()
        .map(|(x, _)| {
            let v = x.dims().iter().position(|&d| d > 0).expect("nonzero summand");
            b_components.iter().position(|c| c.contains(&v)).expect("vertex in a component")
        })
        .collect();
    let mut hits = vec![0usize; b_components.len()];
    for &c in &summand_component {
        hits[c] += 1;
    }
    let separating = summands.iter().all(|s| s.1 == 1) && hits.iter().all(|&h| h == 1);
    Ok(PeelStep { x0, x0_name: q.vertex_name(x0).into(), b, b_components, summands, summand_component, separating })
}

/// Vertex whose projective shares the τ-orbit of `x` (walking τ), or whose
/// injective does (walking τ⁻).
fn orbit_label(x: &Representation, walk: usize) -> Option<usize> {
    let n = x.dims().len();
    let find = |m: &Representation, f: fn(&Algebra_, usize) -> Result<Representation, ReprError>| {
        (0..n).find(|&v| f(m.algebra(), v).is_ok_and(|p| p.dims() == m.dims() && crate::repr::is_isomorphic(&p, m)))
    };
    let mut y = x.clone();
    for _ in 0..walk {
        if is_projective(&y) {
            return find(&y, Representation::projective);
        }
        match tau(&y) {
            Some(t) => y = t,
            None => break,
        }
    }
    let mut y = x.clone();
    for _ in 0..walk {
        if is_injective(&y) {
            return find(&y, Representation::injective);
        }
        match tau_inv(&y) {
            Some(t) => y = t,
            None => break,
        }
    }
    None
}

type Algebra_ = crate::presentation::Algebra;

/// Orbit graph built along the peel, with the arrows of the algebra that
/// each edge accounts for.
#[derive(Debug, Clone)]
pub struct RecursiveOrbitGraph {
    pub graph: Multigraph,
    pub edge_arrows: Vec<Vec<String>>,
    pub peels: Vec<PeelStep>,
}

fn choose_maximal(frag: &Fragment, pf: &ProjectivesAfterInjectives) -> usize {
    let q = frag.algebra.quiver();
    let mut best = pf.maximal.clone();
    best.sort_by(|&a, &b| {
        let (va, vb) = (frag.vertices[a].projective.expect("projective"), frag.vertices[b].projective.expect("projective"));
        q.vertex_name(va).cmp(q.vertex_name(vb))
    });
    frag.vertices[best[0]].projective.expect("projective")
}

fn check_flags(p: &Presentation) -> Result<(), ShodError> {
    if p.flag("canonical-type") == Some("true") {
        return Err(ShodError::CanonicalType);
    }
    Ok(())
}

/// Maximal element of the projectives succeeding injectives, if any.
pub fn peel_vertex(p: &Presentation, opts: &ShodOptions) -> Result<Option<usize>, ShodError> {
    let alg = p.algebra()?;
    let frag = knit_projectives_injectives(&alg, opts.knit)?;
    let kind = classify_components(&frag)?;
    let pf = compute_pf(&frag, kind.primary())?;
    Ok((!pf.maximal.is_empty()).then(|| choose_maximal(&frag, &pf)))
}

/// Peels at `x0` after checking that `P_{x0}` is maximal among the
/// projectives succeeding injectives.
pub fn peel_maximal(p: &Presentation, x0: usize, opts: &ShodOptions) -> Result<PeelStep, ShodError> {
    let alg = p.algebra()?;
    let frag = knit_projectives_injectives(&alg, opts.knit)?;
    let kind = classify_components(&frag)?;
    let pf = compute_pf(&frag, kind.primary())?;
    if !pf.maximal.iter().any(|&v| frag.vertices[v].projective == Some(x0)) {
        return Err(ShodError::NotMaximal(p.quiver().vertex_name(x0).into()));
    }
    peel(p, x0, opts.knit.seed)
}

/// Fragment vertices with a path to `target`, excluding `target`.
pub fn strict_predecessors(frag: &Fragment, target: usize) -> Vec<usize> {
    let mut seen: BTreeSet<usize> = [target].into();
    let mut queue = VecDeque::from([target]);
    while let Some(v) = queue.pop_front() {
        for &(x, y) in frag.arrows.keys() {
            if y == v && seen.insert(x) {
                queue.push_back(x);
            }
        }
    }
    seen.remove(&target);
    seen.into_iter().collect()
}

fn recurse(p: &Presentation, opts: &ShodOptions, out: &mut RecursiveOrbitGraph) -> Result<(), ShodError> {
    if !p.is_connected() {
        return Err(ShodError::Disconnected);
    }
    let q = p.quiver();
    let Some(x0) = peel_vertex(p, opts)? else {
        if !p.is_hereditary() {
            return Err(ShodError::BaseCaseUnsupported("no projective succeeds an injective and the algebra is not hereditary".into()));
        }
        let offset = out.graph.num_vertices();
        for v in q.vertices() {
            out.graph.add_vertex(v);
        }
        for a in q.arrows() {
            out.graph.add_edge(&a.name, offset + a.source, offset + a.target);
            out.edge_arrows.push(vec![a.name.clone()]);
        }
        return Ok(());
    };
    let step = peel(p, x0, opts.knit.seed)?;
    for c in &step.b_components {
        recurse(&step.b.restrict(c), opts, out)?;
    }
    let top = out.graph.add_vertex(&step.x0_name);
    let bq = step.b.quiver();
    // arrows into x0 by source, consumed copy by copy
    let mut pending: BTreeMap<String, VecDeque<String>> = BTreeMap::new();
    for a in q.arrows_to(x0) {
        let arrow = q.arrow(a);
        pending.entry(q.vertex_name(arrow.source).to_string()).or_default().push_back(arrow.name.clone());
    }
    for (x, d) in &step.summands {
        let Some(v) = orbit_label(x, opts.orbit_walk) else {
            let support = (0..x.dims().len()).filter(|&v| x.dim_at(v) > 0).map(|v| bq.vertex_name(v).to_string()).collect();
            return Err(ShodError::OrbitNotFound(support));
        };
        let label = out.graph.vertex_index(bq.vertex_name(v)).expect("recursed component vertex");
        let top_dims = x.top_dims();
        for _ in 0..*d {
            let mut arrows = Vec::new();
            for (y, &t) in top_dims.iter().enumerate() {
                let queue = pending.entry(bq.vertex_name(y).to_string()).or_default();
                for _ in 0..t {
                    if let Some(a) = queue.pop_front() {
                        arrows.push(a);
                    }
                }
            }
            out.graph.add_edge(&arrows.join("+"), label, top);
            out.edge_arrows.push(arrows);
        }
    }
    out.peels.push(step);
    Ok(())
}

pub fn orbit_graph_recursive(p: &Presentation, opts: &ShodOptions) -> Result<RecursiveOrbitGraph, ShodError> {
    check_flags(p)?;
    let mut out = RecursiveOrbitGraph { graph: Multigraph::default(), edge_arrows: Vec::new(), peels: Vec::new() };
    recurse(p, opts, &mut out)?;
    out.peels.reverse();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Knit,
    Recursive,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Knitted,
    Recursive,
    BothAgree,
}

impl Provenance {
    pub fn as_str(&self) -> &'static str {
        match self {
            Provenance::Knitted => "knitted",
            Provenance::Recursive => "recursive",
            Provenance::BothAgree => "both-agree",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitGraphReport {
    pub graph: Multigraph,
    pub pi1_rank: usize,
    pub is_tree: bool,
    pub provenance: Provenance,
    pub warnings: Vec<String>,
}

/// Knitting parameters for orbit graphs read off the connecting component.
pub const ORBIT_KNIT: KnitOptions = KnitOptions { steps: 48, max_dim: 32, seed: 0 };
pub const ORBIT_ROUNDS: usize = 4;

pub fn orbit_graph_report(p: &Presentation, method: Method, opts: &ShodOptions, knit: KnitOptions) -> Result<OrbitGraphReport, ShodError> {
    check_flags(p)?;
    let mut warnings = Vec::new();
    let knitted = if matches!(method, Method::Knit | Method::Both) {
        let alg = p.algebra()?;
        let r = connecting_orbit_graph(&alg, knit, ORBIT_ROUNDS)?;
        if !r.exact {
            warnings.push(format!("orbit graph read from a truncated fragment after {} knitting rounds", r.rounds));
        }
        Some(r.graph)
    } else {
        None
    };
    let recursive = if matches!(method, Method::Recursive | Method::Both) { Some(orbit_graph_recursive(p, opts)?.graph) } else { None };
    let (graph, provenance) = match (knitted, recursive) {
        (Some(k), Some(r)) => {
            if !k.is_isomorphic(&r) {
                return Err(ShodError::Disagreement {
                    knitted: (k.num_vertices(), k.num_edges()),
                    recursive: (r.num_vertices(), r.num_edges()),
                });
            }
            (r, Provenance::BothAgree)
        }
        (Some(k), None) => (k, Provenance::Knitted),
        (None, Some(r)) => (r, Provenance::Recursive),
        (None, None) => unreachable!("some method is selected"),
    };
    let pi1_rank = graph.pi1_rank()?;
    Ok(OrbitGraphReport { is_tree: pi1_rank == 0, pi1_rank, graph, provenance, warnings })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplyConnectedReport {
    pub pi1_rank: usize,
    pub is_tree: bool,
    pub hh1: usize,
    pub simply_connected: bool,
    /// The orbit graph is a tree exactly when `HH¹` vanishes.
    pub consistent: bool,
}

pub fn simply_connected_verdict(p: &Presentation, opts: &ShodOptions) -> Result<SimplyConnectedReport, ShodError> {
    let report = orbit_graph_report(p, Method::Recursive, opts, opts.knit)?;
    let hh1 = hh1_dim(p)?;
    Ok(SimplyConnectedReport {
        pi1_rank: report.pi1_rank,
        is_tree: report.is_tree,
        hh1,
        simply_connected: report.is_tree,
        consistent: report.is_tree == (hh1 == 0),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeelEquivalences {
    pub separating: bool,
    pub a_simply_connected: bool,
    pub b_simply_connected: Vec<bool>,
    pub hh1_a: usize,
    pub hh1_b: Vec<usize>,
    /// `A` simply connected exactly when every component of `B` is and the
    /// extension is separating.
    pub simply_connected_equivalence: bool,
    pub hochschild_equivalence: SeparatingConsistency,
}

/// Checks both equivalences across the first peel of `p`.
pub fn check_peel_equivalences(p: &Presentation, opts: &ShodOptions) -> Result<PeelEquivalences, ShodError> {
    let x0 = peel_vertex(p, opts)?.ok_or_else(|| ShodError::BaseCaseUnsupported("nothing to peel".into()))?;
    let step = peel(p, x0, opts.knit.seed)?;
    let a_tree = orbit_graph_recursive(p, opts)?.graph.pi1_rank()? == 0;
    let mut b_trees = Vec::new();
    let mut hh1_b = Vec::new();
    for c in &step.b_components {
        let bc = step.b.restrict(c);
        b_trees.push(orbit_graph_recursive(&bc, opts)?.graph.pi1_rank()? == 0);
        hh1_b.push(hh1_dim(&bc)?);
    }
    let hh1_a = hh1_dim(p)?;
    Ok(PeelEquivalences {
        separating: step.separating,
        a_simply_connected: a_tree,
        simply_connected_equivalence: a_tree == (b_trees.iter().all(|&t| t) && step.separating),
        b_simply_connected: b_trees,
        hochschild_equivalence: hh1_separating_consistency(step.separating, hh1_a, &hh1_b),
        hh1_a,
        hh1_b,
    })
}

/// A finite abelian quotient `⊕ Z/n_i` of the free fundamental group, given
/// by the image of each free generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteQuotient {
    pub moduli: Vec<u64>,
    pub images: Vec<Vec<u64>>,
}

impl FiniteQuotient {
    pub fn trivial(generators: usize) -> Self {
        FiniteQuotient { moduli: Vec::new(), images: vec![Vec::new(); generators] }
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().product::<u64>() as usize
    }

    fn element(&self, mut index: usize) -> Vec<u64> {
        self.moduli
            .iter()
            .map(|&n| {
                let d = (index as u64) % n;
                index /= n as usize;
                d
            })
            .collect()
    }

    fn index(&self, digits: &[u64]) -> usize {
        let mut idx = 0usize;
        let mut stride = 1usize;
        for (d, &n) in digits.iter().zip(&self.moduli) {
            idx += (*d % n) as usize * stride;
            stride *= n as usize;
        }
        idx
    }

    fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.moduli).map(|((x, y), n)| (x + y) % n).collect()
    }

    fn zero(&self) -> Vec<u64> {
        vec![0; self.moduli.len()]
    }
}

#[derive(Debug, Clone)]
pub struct CoveringConstruction {
    pub presentation: Presentation,
    pub functor: CoveringFunctor,
    pub action: GroupAction,
    /// Group element attached to each arrow of the base.
    pub weights: Vec<Vec<u64>>,
    pub verdicts: Vec<Verdict>,
    pub connected: bool,
}

/// The Galois covering with group `H` obtained from the orbit graph: edges
/// of a spanning tree get weight zero, the remaining edges (the free
/// generators of the fundamental group) get their images in `H`, every
/// arrow inherits the weight of its edge, and the covering has vertices
/// `(v, h)` and arrows `(α, h): (s, h) -> (t, h + w(α))`.
pub fn build_a_tilde(p: &Presentation, orbit: &RecursiveOrbitGraph, quotient: &FiniteQuotient) -> Result<CoveringConstruction, ShodError> {
    let generators = orbit.graph.generator_edges();
    if quotient.images.len() != generators.len() {
        return Err(ShodError::Quotient(format!("{} generator images for {} generators", quotient.images.len(), generators.len())));
    }
    if quotient.moduli.contains(&0) || quotient.images.iter().any(|im| im.len() != quotient.moduli.len()) {
        return Err(ShodError::Quotient("images must have one residue per modulus, moduli positive".into()));
    }
    let q = p.quiver();
    let mut weights = vec![quotient.zero(); q.num_arrows()];
    for (k, &e) in generators.iter().enumerate() {
        for name in &orbit.edge_arrows[e] {
            let a = q.arrow_index(name).ok_or_else(|| ShodError::Quotient(format!("unknown arrow {name}")))?;
            weights[a] = quotient.images[k].iter().zip(&quotient.moduli).map(|(x, n)| x % n).collect();
        }
    }
    let path_weight = |path: &Path| path.arrows.iter().fold(quotient.zero(), |acc, &a| quotient.add(&acc, &weights[a]));
    for (i, rel) in p.relations().iter().enumerate() {
        let w = path_weight(&rel.terms()[0].1);
        if rel.terms().iter().any(|(_, t)| path_weight(t) != w) {
            return Err(ShodError::Inhomogeneous(i));
        }
    }
    let order = quotient.order();
    let (nv, na) = (q.num_vertices(), q.num_arrows());
    let mut quiver = Quiver::new();
    for h in 0..order {
        for v in q.vertices() {
            quiver.add_vertex(&format!("{v}_{h}"))?;
        }
    }
    for h in 0..order {
        let hv = quotient.element(h);
        for (a, arrow) in q.arrows().iter().enumerate() {
            let t = quotient.index(&quotient.add(&hv, &weights[a]));
            quiver.add_arrow(&format!("{}_{h}", arrow.name), h * nv + arrow.source, t * nv + arrow.target)?;
        }
    }
    let mut relations = Vec::new();
    for rel in p.relations() {
        for h in 0..order {
            let terms = rel
                .terms()
                .iter()
                .map(|(c, path)| {
                    let mut cur = quotient.element(h);
                    let mut arrows = Vec::new();
                    for &a in &path.arrows {
                        arrows.push(quotient.index(&cur) * na + a);
                        cur = quotient.add(&cur, &weights[a]);
                    }
                    let end = quotient.index(&cur);
                    (c.clone(), Path { source: h * nv + path.source, target: end * nv + path.target, arrows })
                })
                .collect();
            relations.push(RelationElement::new(&quiver, terms)?);
        }
    }
    let presentation = Presentation::new(quiver, relations);
    let total = presentation.algebra()?;
    let base = p.algebra()?;
    let functor = CoveringFunctor::new(
        &total,
        &base,
        (0..order * nv).map(|x| x % nv).collect(),
        (0..order * na).map(|x| x % na).collect(),
    )?;
    let shift = |g: usize| {
        let gv = quotient.element(g);
        let vp: Vec<usize> = (0..order * nv)
            .map(|x| quotient.index(&quotient.add(&gv, &quotient.element(x / nv))) * nv + x % nv)
            .collect();
        let ap: Vec<usize> = (0..order * na)
            .map(|x| quotient.index(&quotient.add(&gv, &quotient.element(x / na))) * na + x % na)
            .collect();
        (vp, ap)
    };
    let gens: Vec<(Vec<usize>, Vec<usize>)> = (0..order).map(shift).collect();
    let action = GroupAction::generated(&presentation, &gens)?;
    let verdicts = check_galois(&functor, &action);
    let connected = presentation.is_connected();
    Ok(CoveringConstruction { presentation, functor, action, weights, verdicts, connected })
}

impl CoveringConstruction {
    pub fn passed(&self) -> bool {
        all_passed(&self.verdicts)
    }
}

/// Directed multigraph isomorphism of quivers by backtracking.
pub fn quivers_isomorphic(a: &Quiver, b: &Quiver) -> bool {
    let n = a.num_vertices();
    if n != b.num_vertices() || a.num_arrows() != b.num_arrows() {
        return false;
    }
    let counts = |q: &Quiver| {
        let mut m = vec![vec![0usize; n]; n];
        for arrow in q.arrows() {
            m[arrow.source][arrow.target] += 1;
        }
        m
    };
    let (ca, cb) = (counts(a), counts(b));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn extend(i: usize, n: usize, a: &[Vec<usize>], b: &[Vec<usize>], map: &mut [usize], used: &mut [bool]) -> bool {
        if i == n {
            return true;
        }
        for c in 0..n {
            if used[c] || a[i][i] != b[c][c] {
                continue;
            }
            if (0..i).any(|j| a[i][j] != b[c][map[j]] || a[j][i] != b[map[j]][c]) {
                continue;
            }
            map[i] = c;
            used[c] = true;
            if extend(i + 1, n, a, b, map, used) {
                return true;
            }
            used[c] = false;
        }
        false
    }
    extend(0, n, &ca, &cb, &mut map, &mut used)
}
