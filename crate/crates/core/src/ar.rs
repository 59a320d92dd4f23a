//! Almost split sequences and knitting of Auslander-Reiten components.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::linalg::{to_sparse, Echelon, Matrix, Rational, SparseRow};
use crate::presentation::{Algebra, Element};
use crate::repr::{
    add_morphisms, compose, flatten, hom_dim, hom_space, indecompose_with, is_injective, is_isomorphic, is_projective,
    linear_combination, morphism_is_zero, pd, projective_map, scale_morphism, syzygy, tau, tau_inv, Dimension,
    Morphism, ProjectiveCover, ReprError, Representation, DEFAULT_DECOMPOSE_BUDGET,
};
use crate::tq::{Multigraph, TqError, TranslationQuiver};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ArError {
    #[error("no almost split sequence ends at a projective module")]
    Projective,
    #[error(transparent)]
    Repr(#[from] ReprError),
    #[error(transparent)]
    Tq(#[from] TqError),
    #[error("almost split sequence failed verification: {0}")]
    Verification(String),
    #[error("inconsistent multiplicity for arrow {from} -> {to}: {old} and {new}")]
    InconsistentArrow { from: String, to: String, old: usize, new: usize },
    #[error("oriented cycle through {0:?}")]
    Cycle(Vec<String>),
    #[error("fragment is incomplete: {0}")]
    Incomplete(String),
    #[error("no connecting component: {0}")]
    NoConnectingComponent(String),
}

/// `0 -> τZ --f--> E --g--> Z -> 0`.
#[derive(Debug, Clone)]
pub struct AlmostSplitSequence {
    pub start: Representation,
    pub middle: Representation,
    pub end: Representation,
    pub f: Morphism,
    pub g: Morphism,
    pub summands: Vec<(Representation, usize)>,
}

/// Lifts an endomorphism `r` of `Z` along the projective cover and
/// restricts the lift to `ΩZ`.
fn restrict_to_syzygy(cover: &ProjectiveCover, iota: &[Matrix], r: &[Matrix]) -> Morphism {
    let alg = cover.module.algebra();
    let n0 = cover.vertices.len();
    let mut rho: Vec<Vec<Element>> = Vec::with_capacity(n0);
    for (v, g) in cover.vertices.iter().zip(&cover.generators) {
        let target = r[*v].mul_vec(g);
        let y = cover.map[*v].solve(&target).expect("shapes agree").expect("cover is surjective");
        let mut row: Vec<Element> = (0..n0).map(|_| Vec::new()).collect();
        for (pos, &(slot, b)) in cover.labels[*v].iter().enumerate() {
            if !y[pos].is_zero() {
                row[slot].push((b, y[pos].clone()));
            }
        }
        for e in row.iter_mut() {
            e.sort_by_key(|t| t.0);
        }
        rho.push(row);
    }
    let (_, _, lift) = projective_map(alg, &cover.vertices, &cover.vertices, &rho);
    iota.iter()
        .zip(&lift)
        .map(|(i, l)| {
            if i.cols() == 0 {
                Matrix::zeros(0, 0)
            } else {
                i.left_inverse().expect("inclusion").mul(l).mul(i)
            }
        })
        .collect()
}

fn total_trace(f: &[Matrix]) -> Rational {
    f.iter().fold(Rational::zero(), |acc, m| acc + m.trace())
}

/// Computes the almost split sequence ending at an indecomposable
/// non-projective `z`, as the pushout of `0 -> ΩZ -> P0 -> Z -> 0` along a
/// map `ΩZ -> τZ` representing a nonzero element of the socle of `Ext¹(Z, τZ)`
/// as a module over `End(Z)`.
///
/// Exactness and non-splitness are always verified.
pub fn almost_split_ending_at(z: &Representation, seed: u64) -> Result<AlmostSplitSequence, ArError> {
    if is_projective(z) {
        return Err(ArError::Projective);
    }
    let tz = tau(z).ok_or(ArError::Projective)?;
    let (omega, iota, cover) = syzygy(z);
    let p0 = &cover.module;
    let h = hom_space(&omega, &tz)?;
    let ncols: usize = (0..z.dims().len()).map(|v| tz.dim_at(v) * omega.dim_at(v)).sum();
    let mut inner = Echelon::new(ncols);
    for psi in hom_space(p0, &tz)? {
        inner.insert_dense(&flatten(&compose(&psi, &iota)));
    }

    let end = hom_space(z, z)?;
    let traces: Vec<Rational> = end.iter().map(|f| total_trace(f)).collect();
    let rad: Vec<Morphism> = Matrix::from_rows(vec![traces])
        .expect("one row")
        .nullspace_basis()
        .iter()
        .map(|c| linear_combination(&end, c))
        .collect();
    let mut equations: BTreeMap<(usize, usize), SparseRow> = BTreeMap::new();
    for (k, r) in rad.iter().enumerate() {
        let omega_r = restrict_to_syzygy(&cover, &iota, r);
        for (i, hi) in h.iter().enumerate() {
            for (col, val) in inner.reduce(to_sparse(&flatten(&compose(hi, &omega_r)))) {
                equations.entry((k, col)).or_default().push((i, val));
            }
        }
    }
    let solutions = crate::linalg::solve_homogeneous(equations.into_values(), h.len());
    let xi = solutions
        .iter()
        .map(|c| linear_combination(&h, c))
        .find(|x| !inner.reduce(to_sparse(&flatten(x))).is_empty())
        .ok_or_else(|| ArError::Verification("Ext¹(Z, τZ) has no socle element".into()))?;

    let (sum, incs, projs) = Representation::direct_sum(&[&tz, p0]);
    let minus_one = -Rational::from_integer(1.into());
    let phi = add_morphisms(&compose(&incs[0], &xi), &scale_morphism(&compose(&incs[1], &iota), &minus_one));
    let (middle, proj, sect) = Representation::cokernel(&sum, &phi);
    let f = compose(&proj, &incs[0]);
    let g = compose(&cover.map, &compose(&projs[1], &sect));
    let summands = indecompose_with(&middle, seed, DEFAULT_DECOMPOSE_BUDGET)?.summands;
    let seq = AlmostSplitSequence { start: tz, middle, end: z.clone(), f, g, summands };
    check_exact(&seq)?;
    check_non_split(&seq)?;
    Ok(seq)
}

fn check_exact(seq: &AlmostSplitSequence) -> Result<(), ArError> {
    for v in 0..seq.end.dims().len() {
        let (a, b, c) = (seq.start.dim_at(v), seq.middle.dim_at(v), seq.end.dim_at(v));
        if a + c != b || seq.f[v].rank() != a || seq.g[v].rank() != c {
            return Err(ArError::Verification(format!("not short exact at vertex {v}")));
        }
    }
    if !morphism_is_zero(&compose(&seq.g, &seq.f)) {
        return Err(ArError::Verification("g ∘ f ≠ 0".into()));
    }
    Ok(())
}

fn check_non_split(seq: &AlmostSplitSequence) -> Result<(), ArError> {
    let n: usize = seq.end.dims().iter().map(|d| d * d).sum();
    let mut span = Echelon::new(n);
    for phi in hom_space(&seq.end, &seq.middle)? {
        span.insert_dense(&flatten(&compose(&seq.g, &phi)));
    }
    if span.contains(to_sparse(&flatten(&seq.end.identity()))) {
        return Err(ArError::Verification("sequence splits".into()));
    }
    Ok(())
}

/// Right almost split property against indecomposable test modules: every
/// non-split-epi `W -> Z` factors through `g`.
pub fn check_factorization(seq: &AlmostSplitSequence, tests: &[Representation]) -> Result<(), ArError> {
    for (k, w) in tests.iter().enumerate() {
        let n: usize = (0..w.dims().len()).map(|v| w.dim_at(v) * seq.end.dim_at(v)).sum();
        let mut span = Echelon::new(n);
        for phi in hom_space(w, &seq.middle)? {
            span.insert_dense(&flatten(&compose(&seq.g, &phi)));
        }
        let all = hom_dim(w, &seq.end)?;
        let expected = if is_isomorphic(w, &seq.end) { all - 1 } else { all };
        if span.rank() != expected {
            return Err(ArError::Verification(format!(
                "test module {k}: {} of {expected} maps factor through the sequence",
                span.rank()
            )));
        }
    }
    Ok(())
}

/// Exactness, non-splitness and factorization against `tests`.
pub fn verify_almost_split(seq: &AlmostSplitSequence, tests: &[Representation]) -> Result<(), ArError> {
    check_exact(seq)?;
    check_non_split(seq)?;
    check_factorization(seq, tests)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Task {
    Pending,
    Done,
    /// Not applicable (projective going back, injective going forward).
    None,
    /// The neighbour exceeded the dimension cap.
    Skipped,
}

#[derive(Debug, Clone)]
pub struct KnitVertex {
    pub module: Representation,
    pub name: String,
    pub projective: Option<usize>,
    pub injective: Option<usize>,
    pub tau: Option<usize>,
    pub tau_inv: Option<usize>,
    pub attached: bool,
    pub backward: Task,
    pub forward: Task,
}

impl KnitVertex {
    /// All neighbours and both translates are known.
    pub fn is_complete(&self) -> bool {
        self.attached && matches!(self.backward, Task::Done | Task::None) && matches!(self.forward, Task::Done | Task::None)
    }
}

#[derive(Debug, Clone)]
pub struct Mesh {
    pub start: usize,
    pub end: usize,
    pub middle: Vec<(usize, usize)>,
    pub sequence: AlmostSplitSequence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KnitOptions {
    /// Maximum number of meshes computed.
    pub steps: usize,
    /// Modules of larger total dimension are not expanded.
    pub max_dim: usize,
    pub seed: u64,
}

impl Default for KnitOptions {
    fn default() -> Self {
        KnitOptions { steps: 64, max_dim: 24, seed: 0 }
    }
}

/// A knitted piece of the Auslander-Reiten quiver.
#[derive(Debug, Clone)]
pub struct Fragment {
    pub algebra: Algebra,
    pub vertices: Vec<KnitVertex>,
    /// Arrow multiplicities (dimension of irreducible maps).
    pub arrows: BTreeMap<(usize, usize), usize>,
    pub meshes: Vec<Mesh>,
    /// The step budget ran out with work left.
    pub exhausted: bool,
    projectives: Vec<Representation>,
    injectives: Vec<Representation>,
    options: KnitOptions,
}

impl Fragment {
    pub fn new(algebra: &Algebra, options: KnitOptions) -> Result<Self, ArError> {
        let n = algebra.num_vertices();
        let projectives = (0..n).map(|v| Representation::projective(algebra, v)).collect::<Result<_, _>>()?;
        let injectives = (0..n).map(|v| Representation::injective(algebra, v)).collect::<Result<_, _>>()?;
        Ok(Fragment {
            algebra: algebra.clone(),
            vertices: Vec::new(),
            arrows: BTreeMap::new(),
            meshes: Vec::new(),
            exhausted: false,
            projectives,
            injectives,
            options,
        })
    }

    pub fn options(&self) -> KnitOptions {
        self.options
    }

    pub fn find(&self, m: &Representation) -> Option<usize> {
        self.vertices.iter().position(|v| v.module.dims() == m.dims() && is_isomorphic(&v.module, m))
    }

    pub fn find_or_add(&mut self, m: Representation) -> usize {
        if let Some(i) = self.find(&m) {
            return i;
        }
        let q = self.algebra.quiver();
        let matches = |list: &[Representation]| list.iter().position(|p| p.dims() == m.dims() && is_isomorphic(p, &m));
        let projective = matches(&self.projectives);
        let injective = matches(&self.injectives);
        let simple = (m.total_dim() == 1).then(|| m.dims().iter().position(|&d| d == 1)).flatten();
        let mut parts = Vec::new();
        if let Some(v) = projective {
            parts.push(format!("P{}", q.vertex_name(v)));
        }
        if let Some(v) = injective {
            parts.push(format!("I{}", q.vertex_name(v)));
        }
        if let Some(v) = simple {
            parts.push(format!("S{}", q.vertex_name(v)));
        }
        let name = if parts.is_empty() { format!("M{}", self.vertices.len()) } else { parts.join("=") };
        self.vertices.push(KnitVertex {
            module: m,
            name,
            projective,
            injective,
            tau: None,
            tau_inv: None,
            attached: false,
            backward: if projective.is_some() { Task::None } else { Task::Pending },
            forward: if injective.is_some() { Task::None } else { Task::Pending },
        });
        self.vertices.len() - 1
    }

    fn set_arrow(&mut self, x: usize, y: usize, m: usize) -> Result<(), ArError> {
        match self.arrows.get(&(x, y)) {
            Some(&old) if old != m => Err(ArError::InconsistentArrow {
                from: self.vertices[x].name.clone(),
                to: self.vertices[y].name.clone(),
                old,
                new: m,
            }),
            _ => {
                self.arrows.insert((x, y), m);
                Ok(())
            }
        }
    }

    fn attach(&mut self, v: usize) -> Result<(), ArError> {
        self.vertices[v].attached = true;
        if self.vertices[v].projective.is_some() {
            let (rad, _) = self.vertices[v].module.radical();
            if !rad.is_zero() {
                for (x, m) in indecompose_with(&rad, self.options.seed, DEFAULT_DECOMPOSE_BUDGET)?.summands {
                    let i = self.find_or_add(x);
                    self.set_arrow(i, v, m)?;
                }
            }
        }
        if self.vertices[v].injective.is_some() {
            let module = &self.vertices[v].module;
            let (top, _, _) = module.quotient(&module.socle_basis());
            if !top.is_zero() {
                for (y, m) in indecompose_with(&top, self.options.seed, DEFAULT_DECOMPOSE_BUDGET)?.summands {
                    let i = self.find_or_add(y);
                    self.set_arrow(v, i, m)?;
                }
            }
        }
        Ok(())
    }

    fn record_mesh(&mut self, start: usize, end: usize, seq: AlmostSplitSequence) -> Result<(), ArError> {
        self.vertices[end].tau = Some(start);
        self.vertices[end].backward = Task::Done;
        self.vertices[start].tau_inv = Some(end);
        self.vertices[start].forward = Task::Done;
        let mut middle = Vec::new();
        for (e, m) in seq.summands.clone() {
            let i = self.find_or_add(e);
            self.set_arrow(start, i, m)?;
            self.set_arrow(i, end, m)?;
            middle.push((i, m));
        }
        self.meshes.push(Mesh { start, end, middle, sequence: seq });
        Ok(())
    }

    fn backward(&mut self, v: usize) -> Result<(), ArError> {
        let z = self.vertices[v].module.clone();
        let tz = tau(&z).ok_or(ArError::Projective)?;
        if tz.total_dim() > self.options.max_dim {
            self.vertices[v].backward = Task::Skipped;
            return Ok(());
        }
        let seq = almost_split_ending_at(&z, self.options.seed)?;
        let s = self.find_or_add(seq.start.clone());
        self.record_mesh(s, v, seq)
    }

    fn forward(&mut self, v: usize) -> Result<(), ArError> {
        let x = self.vertices[v].module.clone();
        let y = tau_inv(&x).ok_or_else(|| ArError::Verification("τ⁻ of a non-injective vanished".into()))?;
        if y.total_dim() > self.options.max_dim {
            self.vertices[v].forward = Task::Skipped;
            return Ok(());
        }
        let e = self.find_or_add(y);
        let seq = almost_split_ending_at(&self.vertices[e].module.clone(), self.options.seed)?;
        if !is_isomorphic(&seq.start, &x) {
            return Err(ArError::Verification(format!("τ τ⁻ {} is not {}", self.vertices[v].name, self.vertices[v].name)));
        }
        self.record_mesh(v, e, seq)
    }

    /// Runs pending work, lowest vertex first, until nothing is left or
    /// `steps` further meshes have been computed.
    pub fn knit(&mut self, steps: usize) -> Result<(), ArError> {
        let mut done = 0;
        self.exhausted = false;
        loop {
            let Some(v) = self.vertices.iter().position(|x| !x.attached || x.backward == Task::Pending || x.forward == Task::Pending)
            else {
                return Ok(());
            };
            if !self.vertices[v].attached {
                self.attach(v)?;
                continue;
            }
            if done == steps {
                self.exhausted = true;
                return Ok(());
            }
            done += 1;
            if self.vertices[v].backward == Task::Pending {
                self.backward(v)?;
            } else {
                self.forward(v)?;
            }
        }
    }

    /// Every vertex complete and the budget not exhausted: the fragment is a
    /// union of finite components.
    pub fn is_finished(&self) -> bool {
        !self.exhausted && self.vertices.iter().all(KnitVertex::is_complete)
    }

    pub fn complete_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.vertices[v].is_complete()).collect()
    }

    /// Translation quiver with multiplicities expanded into parallel arrows,
    /// polarised by position.
    pub fn translation_quiver(&self) -> TranslationQuiver {
        let mut tq = TranslationQuiver::default();
        for v in &self.vertices {
            tq.add_vertex(&v.name, v.projective.is_some(), v.injective.is_some());
        }
        for (&(x, y), &m) in &self.arrows {
            for _ in 0..m {
                tq.add_arrow(x, y);
            }
        }
        for (v, x) in self.vertices.iter().enumerate() {
            tq.tau[v] = x.tau;
        }
        tq.polarise_by_order();
        tq
    }

    /// Connected components (arrows and τ), as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.translation_quiver().components()
    }

    pub fn modules(&self, keep: &[usize]) -> Vec<Representation> {
        keep.iter().map(|&v| self.vertices[v].module.clone()).collect()
    }

    /// Orbit graph of the complete part of `component`.
    pub fn orbit_graph(&self, component: &[usize]) -> Result<Multigraph, ArError> {
        let complete: Vec<usize> = component.iter().copied().filter(|&v| self.vertices[v].is_complete()).collect();
        Ok(self.translation_quiver().restrict(&complete).orbit_graph()?)
    }

    /// Vertices of `component` in an order compatible with the arrows, or
    /// the vertices of an oriented cycle.
    pub fn topological_order(&self, component: &[usize]) -> Result<Vec<usize>, ArError> {
        let inside: BTreeSet<usize> = component.iter().copied().collect();
        let mut indeg: BTreeMap<usize, usize> = inside.iter().map(|&v| (v, 0)).collect();
        for &(x, y) in self.arrows.keys() {
            if inside.contains(&x) && inside.contains(&y) {
                *indeg.get_mut(&y).expect("inside") += 1;
            }
        }
        let mut queue: VecDeque<usize> = indeg.iter().filter(|(_, &d)| d == 0).map(|(&v, _)| v).collect();
        let mut order = Vec::new();
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for (&(x, y), _) in self.arrows.range((v, 0)..(v + 1, 0)) {
                if x == v && inside.contains(&y) {
                    let d = indeg.get_mut(&y).expect("inside");
                    *d -= 1;
                    if *d == 0 {
                        queue.push_back(y);
                    }
                }
            }
        }
        if order.len() < inside.len() {
            let left: Vec<String> =
                inside.iter().filter(|v| !order.contains(v)).map(|&v| self.vertices[v].name.clone()).collect();
            return Err(ArError::Cycle(left));
        }
        Ok(order)
    }

    /// Re-verifies every recorded mesh, including the factorization property
    /// against all modules of the fragment.
    pub fn verify_meshes(&self) -> Result<(), ArError> {
        let tests = self.modules(&(0..self.vertices.len()).collect::<Vec<_>>());
        for mesh in &self.meshes {
            verify_almost_split(&mesh.sequence, &tests)?;
        }
        Ok(())
    }

    /// `dim Hom(X, Y)` for every `Y`, obtained from additivity of `Hom(X, -)`
    /// on meshes; requires a finished, directed fragment.
    pub fn mesh_hom_dims(&self, x: usize) -> Result<Vec<usize>, ArError> {
        if !self.is_finished() {
            return Err(ArError::Incomplete("knitting did not finish".into()));
        }
        let all: Vec<usize> = (0..self.vertices.len()).collect();
        let order = self.topological_order(&all)?;
        let mut h = vec![0i64; self.vertices.len()];
        for y in order {
            h[y] = if y == x {
                hom_dim(&self.vertices[x].module, &self.vertices[x].module)? as i64
            } else {
                let into: i64 = self.arrows.iter().filter(|((_, t), _)| *t == y).map(|(&(s, _), &m)| m as i64 * h[s]).sum();
                into - self.vertices[y].tau.map_or(0, |t| h[t])
            };
        }
        Ok(h.into_iter().map(|d| d.max(0) as usize).collect())
    }
}

pub fn knit(algebra: &Algebra, seeds: Vec<Representation>, options: KnitOptions) -> Result<Fragment, ArError> {
    let mut frag = Fragment::new(algebra, options)?;
    for s in seeds {
        frag.find_or_add(s);
    }
    frag.knit(options.steps)?;
    Ok(frag)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConnectingKind {
    /// One component containing projectives and injectives.
    Single(Vec<usize>),
    /// Projectives and injectives in different components.
    Concealed { postprojective: Vec<usize>, preinjective: Vec<usize> },
}

impl ConnectingKind {
    /// The component used for orbit graphs and certificates.
    pub fn primary(&self) -> &[usize] {
        match self {
            ConnectingKind::Single(c) => c,
            ConnectingKind::Concealed { postprojective, .. } => postprojective,
        }
    }
}

/// Knits from all indecomposable projectives and injectives.
pub fn knit_projectives_injectives(algebra: &Algebra, options: KnitOptions) -> Result<Fragment, ArError> {
    let n = algebra.num_vertices();
    let mut seeds = Vec::new();
    for v in 0..n {
        seeds.push(Representation::projective(algebra, v)?);
    }
    for v in 0..n {
        seeds.push(Representation::injective(algebra, v)?);
    }
    knit(algebra, seeds, options)
}

pub fn classify_components(frag: &Fragment) -> Result<ConnectingKind, ArError> {
    let comps = frag.components();
    let has = |c: &[usize], proj: bool| {
        c.iter().any(|&v| if proj { frag.vertices[v].projective.is_some() } else { frag.vertices[v].injective.is_some() })
    };
    let mixed: Vec<&Vec<usize>> = comps.iter().filter(|c| has(c, true) && has(c, false)).collect();
    if mixed.len() == 1 {
        return Ok(ConnectingKind::Single(mixed[0].clone()));
    }
    if mixed.is_empty() {
        let n = frag.algebra.num_vertices();
        let count = |c: &[usize], proj: bool| {
            c.iter()
                .filter(|&&v| if proj { frag.vertices[v].projective.is_some() } else { frag.vertices[v].injective.is_some() })
                .count()
        };
        let pp = comps.iter().find(|c| count(c, true) == n);
        let pi = comps.iter().find(|c| count(c, false) == n);
        if let (Some(pp), Some(pi)) = (pp, pi) {
            return Ok(ConnectingKind::Concealed { postprojective: pp.clone(), preinjective: pi.clone() });
        }
    }
    Err(ArError::NoConnectingComponent(format!("{} components contain both projectives and injectives", mixed.len())))
}

pub fn connecting_component(algebra: &Algebra, options: KnitOptions) -> Result<(Fragment, ConnectingKind), ArError> {
    let frag = knit_projectives_injectives(algebra, options)?;
    let kind = classify_components(&frag)?;
    Ok((frag, kind))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FragmentOrbitGraph {
    pub graph: Multigraph,
    /// The component was knitted completely.
    pub exact: bool,
    /// Number of knitting rounds until the graph stopped changing.
    pub rounds: usize,
}

/// Orbit graph of the connecting component, knitting in rounds of
/// `options.steps` meshes until the orbit graph of the complete part is
/// unchanged between two rounds (or the component is finished).
pub fn connecting_orbit_graph(algebra: &Algebra, options: KnitOptions, max_rounds: usize) -> Result<FragmentOrbitGraph, ArError> {
    let mut frag = knit_projectives_injectives(algebra, options)?;
    let mut previous: Option<Multigraph> = None;
    for round in 1..=max_rounds.max(1) {
        let kind = classify_components(&frag)?;
        let graph = frag.orbit_graph(kind.primary())?;
        let exact = kind.primary().iter().all(|&v| frag.vertices[v].is_complete()) && !frag.exhausted;
        let stable = previous.as_ref().is_some_and(|p| p.is_isomorphic(&graph));
        if exact || stable || round == max_rounds.max(1) || !frag.exhausted {
            return Ok(FragmentOrbitGraph { graph, exact, rounds: round });
        }
        previous = Some(graph);
        frag.knit(options.steps)?;
    }
    unreachable!("loop returns on the last round")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShodCertificate {
    /// Length of the longest path from an injective to a projective.
    pub bound: Option<usize>,
    pub witness: Vec<usize>,
}

/// Longest path of irreducible maps from an indecomposable injective to an
/// indecomposable projective inside `component`; an oriented cycle on the
/// way is an error.
pub fn certify_weakly_shod(frag: &Fragment, component: &[usize]) -> Result<ShodCertificate, ArError> {
    let order = frag.topological_order(component)?;
    let mut best: BTreeMap<usize, (usize, Option<usize>)> = BTreeMap::new();
    for &v in &order {
        let mut entry = frag.vertices[v].injective.map(|_| (0usize, None));
        for &(x, y) in frag.arrows.keys() {
            if y == v {
                if let Some(&(len, _)) = best.get(&x) {
                    if entry.is_none_or(|(l, _)| len + 1 > l) {
                        entry = Some((len + 1, Some(x)));
                    }
                }
            }
        }
        if let Some(e) = entry {
            best.insert(v, e);
        }
    }
    let end = order
        .iter()
        .filter(|&&v| frag.vertices[v].projective.is_some())
        .filter_map(|&v| best.get(&v).map(|&(l, _)| (l, v)))
        .max_by_key(|&(l, v)| (l, core::cmp::Reverse(v)));
    let Some((bound, mut v)) = end else {
        return Ok(ShodCertificate { bound: None, witness: Vec::new() });
    };
    let mut witness = vec![v];
    while let Some(&(_, Some(prev))) = best.get(&v) {
        witness.push(prev);
        v = prev;
    }
    witness.reverse();
    Ok(ShodCertificate { bound: Some(bound), witness })
}

fn require_finished(frag: &Fragment) -> Result<(), ArError> {
    if !frag.is_finished() {
        return Err(ArError::Incomplete("knitting did not finish".into()));
    }
    if frag.vertices.iter().filter(|v| v.projective.is_some()).count() < frag.algebra.num_vertices() {
        return Err(ArError::Incomplete("not all projectives are present".into()));
    }
    Ok(())
}

const PD_BOUND: usize = 64;

/// Modules `M` such that every indecomposable `L` with `Hom(L, M) ≠ 0` has
/// projective dimension at most one; needs the whole (finite) AR quiver.
pub fn left_part(frag: &Fragment) -> Result<Vec<usize>, ArError> {
    require_finished(frag)?;
    let small: Vec<bool> = frag.vertices.iter().map(|v| pd(&v.module, PD_BOUND) <= Dimension::Finite(1)).collect();
    let mut out = Vec::new();
    for (m, vm) in frag.vertices.iter().enumerate() {
        let mut ok = true;
        for (l, vl) in frag.vertices.iter().enumerate() {
            if !small[l] && hom_dim(&vl.module, &vm.module)? > 0 {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(m);
        }
    }
    Ok(out)
}

/// Dual of [`left_part`]: every indecomposable `L` with `Hom(M, L) ≠ 0` has
/// injective dimension at most one.
pub fn right_part(frag: &Fragment) -> Result<Vec<usize>, ArError> {
    require_finished(frag)?;
    let small: Vec<bool> = frag.vertices.iter().map(|v| pd(&v.module.dual(), PD_BOUND) <= Dimension::Finite(1)).collect();
    let mut out = Vec::new();
    for (m, vm) in frag.vertices.iter().enumerate() {
        let mut ok = true;
        for (l, vl) in frag.vertices.iter().enumerate() {
            if !small[l] && hom_dim(&vm.module, &vl.module)? > 0 {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(m);
        }
    }
    Ok(out)
}

/// Quasi-tilted test for a representation-finite algebra: the left part
/// contains every indecomposable projective.
pub fn is_quasi_tilted(frag: &Fragment) -> Result<bool, ArError> {
    let left: BTreeSet<usize> = left_part(frag)?.into_iter().collect();
    Ok((0..frag.vertices.len()).filter(|&v| frag.vertices[v].projective.is_some()).all(|v| left.contains(&v)))
}

/// Checks `is_injective`/`is_projective` flags against direct computation.
pub fn check_flags(frag: &Fragment) -> bool {
    frag.vertices.iter().all(|v| is_projective(&v.module) == v.projective.is_some() && is_injective(&v.module) == v.injective.is_some())
}
