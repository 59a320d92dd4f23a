//! Translation quivers, orbit graphs and coverings of graphs.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TqError {
    #[error("vertex `{0}` is periodic and lies on a periodic arrow orbit")]
    Periodic(String),
    #[error("graph is disconnected ({0} components)")]
    Disconnected(usize),
    #[error("invalid translation quiver: {0}")]
    Invalid(String),
    #[error("action is not free: {0}")]
    NotFree(String),
    #[error("action does not commute with the structure: {0}")]
    NotEquivariant(String),
}

/// Undirected multigraph; loops and parallel edges allowed.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Multigraph {
    pub vertices: Vec<String>,
    /// `(name, u, v)`.
    pub edges: Vec<(String, usize, usize)>,
}

impl Multigraph {
    pub fn new(vertices: Vec<String>) -> Self {
        Multigraph { vertices, edges: Vec::new() }
    }

    pub fn add_vertex(&mut self, name: &str) -> usize {
        self.vertices.push(name.into());
        self.vertices.len() - 1
    }

    pub fn add_edge(&mut self, name: &str, u: usize, v: usize) -> usize {
        self.edges.push((name.into(), u, v));
        self.edges.len() - 1
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn num_loops(&self) -> usize {
        self.edges.iter().filter(|e| e.1 == e.2).count()
    }

    /// Component index of every vertex, numbered by smallest member.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.vertices.len());
        for (_, u, v) in &self.edges {
            uf.union(*u, *v);
        }
        let mut ids = BTreeMap::new();
        (0..self.vertices.len())
            .map(|v| {
                let r = uf.find(v);
                let next = ids.len();
                *ids.entry(r).or_insert(next)
            })
            .collect()
    }

    pub fn num_components(&self) -> usize {
        self.component_labels().into_iter().collect::<BTreeSet<_>>().len()
    }

    /// Rank of the (free) fundamental group, `E - V + 1`.
    pub fn pi1_rank(&self) -> Result<usize, TqError> {
        let c = self.num_components();
        if c > 1 {
            return Err(TqError::Disconnected(c));
        }
        Ok((self.edges.len() + 1).saturating_sub(self.vertices.len()))
    }

    /// `E - V + C`, the cycle rank of each component summed.
    pub fn cycle_rank(&self) -> usize {
        self.edges.len() + self.num_components() - self.vertices.len()
    }

    /// Per-component ranks, by component label.
    pub fn pi1_ranks_by_component(&self) -> Vec<usize> {
        let labels = self.component_labels();
        let n = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut v = vec![0usize; n];
        let mut e = vec![0usize; n];
        for &l in &labels {
            v[l] += 1;
        }
        for (_, a, _) in &self.edges {
            e[labels[*a]] += 1;
        }
        (0..n).map(|i| e[i] + 1 - v[i]).collect()
    }

    pub fn is_tree(&self) -> Result<bool, TqError> {
        Ok(self.pi1_rank()? == 0)
    }

    pub fn has_cycle(&self) -> bool {
        self.cycle_rank() > 0
    }

    /// Canonical invariant for isomorphism testing of small multigraphs:
    /// sorted degree sequence plus sorted multiset of edge multiplicities.
    fn invariant(&self) -> (Vec<usize>, Vec<(usize, usize, usize)>) {
        let mut deg = vec![0usize; self.vertices.len()];
        for (_, u, v) in &self.edges {
            deg[*u] += 1;
            deg[*v] += 1;
        }
        let mut mult: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for (_, u, v) in &self.edges {
            *mult.entry((*u.min(v), *u.max(v))).or_default() += 1;
        }
        let mut pairs: Vec<(usize, usize, usize)> = mult
            .iter()
            .map(|(&(u, v), &m)| {
                let (a, b) = (deg[u].min(deg[v]), deg[u].max(deg[v]));
                (a, b, m)
            })
            .collect();
        pairs.sort_unstable();
        let mut d = deg.clone();
        d.sort_unstable();
        (d, pairs)
    }

    /// Multigraph isomorphism by backtracking over degree-compatible
    /// bijections (fine for graphs with a few dozen vertices).
    pub fn is_isomorphic(&self, other: &Multigraph) -> bool {
        if self.vertices.len() != other.vertices.len() || self.edges.len() != other.edges.len() {
            return false;
        }
        if self.invariant() != other.invariant() {
            return false;
        }
        let n = self.vertices.len();
        let adj = |g: &Multigraph| {
            let mut m = vec![vec![0usize; n]; n];
            for (_, u, v) in &g.edges {
                m[*u][*v] += 1;
                if u != v {
                    m[*v][*u] += 1;
                }
            }
            m
        };
        let (a, b) = (adj(self), adj(other));
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
                if (0..i).any(|j| a[i][j] != b[c][map[j]]) {
                    continue;
                }
                if a[i].iter().sum::<usize>() != b[c].iter().sum::<usize>() {
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
        extend(0, n, &a, &b, &mut map, &mut used)
    }

    /// Indices of edges incident to `v`, each loop listed twice (once per end).
    fn star(&self, v: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, (_, a, b)) in self.edges.iter().enumerate() {
            if *a == v {
                out.push((i, *b));
            }
            if *b == v {
                out.push((i, *a));
            }
        }
        out
    }

    /// Edges of a BFS spanning forest, in discovery order.
    pub fn spanning_forest(&self) -> Vec<usize> {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut tree = Vec::new();
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for (e, w) in self.star(v) {
                    if !seen[w] {
                        seen[w] = true;
                        tree.push(e);
                        queue.push_back(w);
                    }
                }
            }
        }
        tree
    }

    /// Edges outside the spanning forest: one free generator of `π₁` each.
    pub fn generator_edges(&self) -> Vec<usize> {
        let tree: BTreeSet<usize> = self.spanning_forest().into_iter().collect();
        (0..self.edges.len()).filter(|e| !tree.contains(e)).collect()
    }

    /// Subdivides edge `e` by a new vertex.
    pub fn subdivide(&self, e: usize) -> Multigraph {
        let mut g = self.clone();
        let (name, u, v) = g.edges[e].clone();
        let mid = g.add_vertex(&format!("{name}'"));
        g.edges[e] = (format!("{name}_1"), u, mid);
        g.add_edge(&format!("{name}_2"), mid, v);
        g
    }
}

/// Minimal union-find with path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Keeps the smaller root, so roots are minimal members.
    pub fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TqVertex {
    pub name: String,
    pub projective: bool,
    pub injective: bool,
}

/// A translation quiver with arrows listed individually (a multiplicity `m`
/// is `m` parallel arrows) and an explicit polarisation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TranslationQuiver {
    pub vertices: Vec<TqVertex>,
    /// `(source, target)`.
    pub arrows: Vec<(usize, usize)>,
    pub tau: Vec<Option<usize>>,
    /// `sigma[α]` for `α: x -> y` with `y` non-projective is an arrow `τy -> x`.
    pub sigma: Vec<Option<usize>>,
}

impl TranslationQuiver {
    pub fn add_vertex(&mut self, name: &str, projective: bool, injective: bool) -> usize {
        self.vertices.push(TqVertex { name: name.into(), projective, injective });
        self.tau.push(None);
        self.vertices.len() - 1
    }

    pub fn add_arrow(&mut self, s: usize, t: usize) -> usize {
        self.arrows.push((s, t));
        self.sigma.push(None);
        self.arrows.len() - 1
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.name == name)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// Polarisation pairing parallel arrows by position: the `k`-th arrow
    /// `x -> y` goes to the `k`-th arrow `τy -> x`.
    pub fn polarise_by_order(&mut self) {
        for a in 0..self.arrows.len() {
            let (x, y) = self.arrows[a];
            let Some(ty) = self.tau[y] else { continue };
            let k = self.arrows[..a].iter().filter(|&&e| e == (x, y)).count();
            self.sigma[a] = self.arrows.iter().enumerate().filter(|(_, &e)| e == (ty, x)).nth(k).map(|(i, _)| i);
        }
    }

    /// Structural checks: τ defined on non-projectives only with
    /// non-injective images; σ a bijection from arrows ending at
    /// non-projectives onto arrows starting at their translates.
    pub fn validate(&self) -> Result<(), TqError> {
        for (v, t) in self.tau.iter().enumerate() {
            let vx = &self.vertices[v];
            if let Some(t) = t {
                if vx.projective {
                    return Err(TqError::Invalid(format!("τ defined on projective {}", vx.name)));
                }
                if self.vertices[*t].injective {
                    return Err(TqError::Invalid(format!("τ{} is injective", vx.name)));
                }
            }
        }
        let mut hit = BTreeSet::new();
        for (a, s) in self.sigma.iter().enumerate() {
            let (x, y) = self.arrows[a];
            match (s, self.tau[y]) {
                (Some(b), Some(ty)) => {
                    if self.arrows[*b] != (ty, x) {
                        return Err(TqError::Invalid(format!("σ of arrow {a} has wrong ends")));
                    }
                    if !hit.insert(*b) {
                        return Err(TqError::Invalid(format!("σ not injective at arrow {b}")));
                    }
                }
                (None, Some(_)) => return Err(TqError::Invalid(format!("σ missing on arrow {a}"))),
                (Some(_), None) => return Err(TqError::Invalid(format!("σ defined on arrow {a} into a vertex without τ"))),
                (None, None) => {}
            }
        }
        Ok(())
    }

    /// τ-orbit representative (smallest index) of every vertex.
    pub fn tau_orbits(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.vertices.len());
        for (v, t) in self.tau.iter().enumerate() {
            if let Some(t) = t {
                uf.union(v, *t);
            }
        }
        (0..self.vertices.len()).map(|v| uf.find(v)).collect()
    }

    fn is_periodic(&self, v: usize) -> bool {
        let mut x = v;
        for _ in 0..self.vertices.len() {
            match self.tau[x] {
                Some(t) if t == v => return true,
                Some(t) => x = t,
                None => return false,
            }
        }
        false
    }

    /// Orbit graph: one vertex per τ-orbit (named after its first vertex),
    /// one edge per σ-orbit of arrows, and one loop per periodic τ-orbit.
    ///
    /// A σ-orbit that closes up on itself cannot be drawn as an edge between
    /// orbits of a directed component and is rejected.
    pub fn orbit_graph(&self) -> Result<Multigraph, TqError> {
        let orbit = self.tau_orbits();
        let reps: Vec<usize> = (0..self.vertices.len()).filter(|&v| orbit[v] == v).collect();
        let vid: BTreeMap<usize, usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let mut g = Multigraph::new(reps.iter().map(|&r| self.vertices[r].name.clone()).collect());
        let mut uf = UnionFind::new(self.arrows.len());
        for (a, s) in self.sigma.iter().enumerate() {
            if let Some(b) = s {
                uf.union(a, *b);
            }
        }
        for a in 0..self.arrows.len() {
            if uf.find(a) != a {
                continue;
            }
            if self.sigma_cycle(a) {
                return Err(TqError::Periodic(self.vertices[self.arrows[a].0].name.clone()));
            }
            let (x, y) = self.arrows[a];
            g.add_edge(&format!("e{}", g.edges.len()), vid[&orbit[x]], vid[&orbit[y]]);
        }
        let mut seen = BTreeSet::new();
        for v in 0..self.vertices.len() {
            if self.is_periodic(v) && seen.insert(orbit[v]) {
                let i = vid[&orbit[v]];
                g.add_edge(&format!("e{}", g.edges.len()), i, i);
            }
        }
        Ok(g)
    }

    fn sigma_cycle(&self, a: usize) -> bool {
        let mut b = a;
        for _ in 0..self.arrows.len() {
            match self.sigma[b] {
                Some(c) if c == a => return true,
                Some(c) => b = c,
                None => return false,
            }
        }
        false
    }

    /// Underlying undirected multigraph (every arrow an edge).
    pub fn underlying_graph(&self) -> Multigraph {
        let mut g = Multigraph::new(self.vertices.iter().map(|v| v.name.clone()).collect());
        for (i, &(s, t)) in self.arrows.iter().enumerate() {
            g.add_edge(&format!("α{i}"), s, t);
        }
        g
    }

    /// Connected components (by arrows and τ), each a sorted vertex list.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.vertices.len());
        for &(s, t) in &self.arrows {
            uf.union(s, t);
        }
        for (v, t) in self.tau.iter().enumerate() {
            if let Some(t) = t {
                uf.union(v, *t);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..self.vertices.len() {
            groups.entry(uf.find(v)).or_default().push(v);
        }
        groups.into_values().collect()
    }

    /// The full sub-translation-quiver on `keep`; τ and σ restricted.
    pub fn restrict(&self, keep: &[usize]) -> TranslationQuiver {
        let mut vmap = vec![usize::MAX; self.vertices.len()];
        let mut out = TranslationQuiver::default();
        for &v in keep {
            let x = &self.vertices[v];
            vmap[v] = out.add_vertex(&x.name, x.projective, x.injective);
        }
        let mut amap = vec![usize::MAX; self.arrows.len()];
        for (a, &(s, t)) in self.arrows.iter().enumerate() {
            if vmap[s] != usize::MAX && vmap[t] != usize::MAX {
                amap[a] = out.add_arrow(vmap[s], vmap[t]);
            }
        }
        for &v in keep {
            if let Some(t) = self.tau[v] {
                if vmap[t] != usize::MAX {
                    out.tau[vmap[v]] = Some(vmap[t]);
                }
            }
        }
        for (a, s) in self.sigma.iter().enumerate() {
            if let (Some(b), true) = (s, amap[a] != usize::MAX) {
                if amap[*b] != usize::MAX {
                    out.sigma[amap[a]] = Some(amap[*b]);
                }
            }
        }
        out
    }

    /// First Betti number of the mesh complex: vertices, one edge per arrow,
    /// and `r - 1` two-cells for a mesh with `r` middle arrows (the
    /// differences of consecutive paths `τy -> x_i -> y`).
    pub fn mesh_complex_b1(&self) -> usize {
        use crate::linalg::{q, Matrix};
        let (nv, na) = (self.vertices.len(), self.arrows.len());
        let mut d1 = Matrix::zeros(nv, na);
        for (a, &(s, t)) in self.arrows.iter().enumerate() {
            if s != t {
                d1[(s, a)] = q(-1);
                d1[(t, a)] = q(1);
            }
        }
        let mut cells = Vec::new();
        for (y, t) in self.tau.iter().enumerate() {
            if t.is_none() {
                continue;
            }
            // paths τy -> x -> y: pair each arrow into y with its σ-image
            let paths: Vec<(usize, usize)> = (0..na)
                .filter(|&a| self.arrows[a].1 == y)
                .filter_map(|a| self.sigma[a].map(|b| (b, a)))
                .collect();
            for w in paths.windows(2) {
                let mut c = vec![q(0); na];
                c[w[0].0] += q(1);
                c[w[0].1] += q(1);
                c[w[1].0] -= q(1);
                c[w[1].1] -= q(1);
                cells.push(c);
            }
        }
        let d2 = Matrix::from_columns(na, &cells);
        let kernel_d1 = na - d1.rank();
        kernel_d1 - if cells.is_empty() { 0 } else { d2.rank() }
    }
}

/// A morphism of translation quivers given on vertices and arrows.
#[derive(Debug, Clone)]
pub struct TqMap {
    pub vertex_map: Vec<usize>,
    pub arrow_map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub condition: String,
    pub passed: bool,
    pub witness: Option<String>,
}

impl Verdict {
    fn pass(condition: &str) -> Self {
        Verdict { condition: condition.into(), passed: true, witness: None }
    }
    fn fail(condition: &str, witness: String) -> Self {
        Verdict { condition: condition.into(), passed: false, witness: Some(witness) }
    }
}

pub fn all_passed(v: &[Verdict]) -> bool {
    v.iter().all(|x| x.passed)
}

/// Covering conditions for `p: total -> base`: (a) bijection on stars of
/// the underlying graphs, (b) projective and injective vertices preserved
/// and reflected, (c) `p τ = τ p`.
pub fn check_tq_covering(total: &TranslationQuiver, base: &TranslationQuiver, p: &TqMap) -> Vec<Verdict> {
    let mut out = Vec::new();
    let mut a = Verdict::pass("(a) covering of unoriented graphs");
    'stars: for x in 0..total.vertices.len() {
        let px = p.vertex_map[x];
        for dir in [0, 1] {
            let mut local: Vec<usize> = total
                .arrows
                .iter()
                .enumerate()
                .filter(|(_, e)| if dir == 0 { e.0 == x } else { e.1 == x })
                .map(|(i, _)| p.arrow_map[i])
                .collect();
            local.sort_unstable();
            let mut star: Vec<usize> = base
                .arrows
                .iter()
                .enumerate()
                .filter(|(_, e)| if dir == 0 { e.0 == px } else { e.1 == px })
                .map(|(i, _)| i)
                .collect();
            star.sort_unstable();
            if local != star {
                a = Verdict::fail(a.condition.as_str(), format!("star of {}", total.vertices[x].name));
                break 'stars;
            }
        }
    }
    for (i, &(s, t)) in total.arrows.iter().enumerate() {
        let (bs, bt) = base.arrows[p.arrow_map[i]];
        if bs != p.vertex_map[s] || bt != p.vertex_map[t] {
            a = Verdict::fail("(a) covering of unoriented graphs", format!("arrow {i} not mapped over its ends"));
            break;
        }
    }
    out.push(a);
    let mut b = Verdict::pass("(b) projectives and injectives preserved and reflected");
    for (x, v) in total.vertices.iter().enumerate() {
        let w = &base.vertices[p.vertex_map[x]];
        if v.projective != w.projective || v.injective != w.injective {
            b = Verdict::fail("(b) projectives and injectives preserved and reflected", v.name.clone());
            break;
        }
    }
    out.push(b);
    let mut c = Verdict::pass("(c) commutes with translations");
    for x in 0..total.vertices.len() {
        let lhs = total.tau[x].map(|t| p.vertex_map[t]);
        let rhs = base.tau[p.vertex_map[x]];
        if lhs != rhs {
            c = Verdict::fail("(c) commutes with translations", total.vertices[x].name.clone());
            break;
        }
    }
    out.push(c);
    out
}

/// A finite group acting on a translation quiver by permutations, given by
/// the full list of group elements (each a vertex and an arrow permutation).
#[derive(Debug, Clone)]
pub struct TqAction {
    pub elements: Vec<(Vec<usize>, Vec<usize>)>,
}

impl TqAction {
    pub fn trivial(tq: &TranslationQuiver) -> Self {
        TqAction { elements: vec![((0..tq.vertices.len()).collect(), (0..tq.arrows.len()).collect())] }
    }
}

/// Galois conditions (d)–(g) on top of the covering conditions: free action
/// on vertices, `p g = p`, transitivity on fibres, and the induced map
/// `total/G -> base` an isomorphism.
pub fn check_tq_galois(total: &TranslationQuiver, base: &TranslationQuiver, p: &TqMap, action: &TqAction) -> Vec<Verdict> {
    let mut out = check_tq_covering(total, base, p);
    let n = total.vertices.len();
    let mut d = Verdict::pass("(d) free on vertices");
    for (k, (vp, _)) in action.elements.iter().enumerate() {
        let identity = vp.iter().enumerate().all(|(i, &j)| i == j);
        if !identity {
            if let Some(x) = (0..n).find(|&x| vp[x] == x) {
                d = Verdict::fail("(d) free on vertices", format!("element {k} fixes {}", total.vertices[x].name));
                break;
            }
        }
    }
    out.push(d);
    let mut e = Verdict::pass("(e) p g = p");
    for (k, (vp, ap)) in action.elements.iter().enumerate() {
        if (0..n).any(|x| p.vertex_map[vp[x]] != p.vertex_map[x]) || (0..total.arrows.len()).any(|a| p.arrow_map[ap[a]] != p.arrow_map[a]) {
            e = Verdict::fail("(e) p g = p", format!("element {k}"));
            break;
        }
    }
    out.push(e);
    let mut f = Verdict::pass("(f) fibres are orbits");
    for x in 0..n {
        let orbit: BTreeSet<usize> = action.elements.iter().map(|(vp, _)| vp[x]).collect();
        let fibre: BTreeSet<usize> = (0..n).filter(|&y| p.vertex_map[y] == p.vertex_map[x]).collect();
        if orbit != fibre {
            f = Verdict::fail("(f) fibres are orbits", total.vertices[x].name.clone());
            break;
        }
    }
    out.push(f);
    let mut g = Verdict::pass("(g) total/G isomorphic to base");
    let vertex_orbits: BTreeSet<BTreeSet<usize>> =
        (0..n).map(|x| action.elements.iter().map(|(vp, _)| vp[x]).collect()).collect();
    let arrow_orbits: BTreeSet<BTreeSet<usize>> =
        (0..total.arrows.len()).map(|a| action.elements.iter().map(|(_, ap)| ap[a]).collect()).collect();
    let hit_v: BTreeSet<usize> = vertex_orbits.iter().map(|o| p.vertex_map[*o.iter().next().expect("nonempty")]).collect();
    let hit_a: BTreeSet<usize> = arrow_orbits.iter().map(|o| p.arrow_map[*o.iter().next().expect("nonempty")]).collect();
    if vertex_orbits.len() != base.vertices.len() || hit_v.len() != base.vertices.len() {
        g = Verdict::fail("(g) total/G isomorphic to base", "vertex orbits do not biject".into());
    } else if arrow_orbits.len() != base.arrows.len() || hit_a.len() != base.arrows.len() {
        g = Verdict::fail("(g) total/G isomorphic to base", "arrow orbits do not biject".into());
    }
    out.push(g);
    out
}

/// Orbit translation quiver `tq/G` with the projection.
pub fn quotient_tq(tq: &TranslationQuiver, action: &TqAction) -> Result<(TranslationQuiver, TqMap), TqError> {
    let n = tq.vertices.len();
    for (vp, ap) in &action.elements {
        let identity = vp.iter().enumerate().all(|(i, &j)| i == j);
        if !identity && (0..n).any(|x| vp[x] == x) {
            return Err(TqError::NotFree("an element fixes a vertex".into()));
        }
        for x in 0..n {
            if tq.tau[x].map(|t| vp[t]) != tq.tau[vp[x]] {
                return Err(TqError::NotEquivariant(format!("τ at {}", tq.vertices[x].name)));
            }
        }
        for (a, &(s, t)) in tq.arrows.iter().enumerate() {
            if tq.arrows[ap[a]] != (vp[s], vp[t]) {
                return Err(TqError::NotEquivariant(format!("arrow {a}")));
            }
            if tq.sigma[a].map(|b| ap[b]) != tq.sigma[ap[a]] {
                return Err(TqError::NotEquivariant(format!("σ at arrow {a}")));
            }
        }
    }
    let mut vrep = vec![usize::MAX; n];
    let mut out = TranslationQuiver::default();
    for x in 0..n {
        if vrep[x] != usize::MAX {
            continue;
        }
        let v = &tq.vertices[x];
        let id = out.add_vertex(&v.name, v.projective, v.injective);
        for (vp, _) in &action.elements {
            vrep[vp[x]] = id;
        }
    }
    let mut arep = vec![usize::MAX; tq.arrows.len()];
    for (a, &(s, t)) in tq.arrows.iter().enumerate() {
        if arep[a] != usize::MAX {
            continue;
        }
        let id = out.add_arrow(vrep[s], vrep[t]);
        for (_, ap) in &action.elements {
            arep[ap[a]] = id;
        }
    }
    for x in 0..n {
        if let Some(t) = tq.tau[x] {
            out.tau[vrep[x]] = Some(vrep[t]);
        }
    }
    for (a, s) in tq.sigma.iter().enumerate() {
        if let Some(b) = s {
            out.sigma[arep[a]] = Some(arep[*b]);
        }
    }
    Ok((out, TqMap { vertex_map: vrep, arrow_map: arep }))
}

/// A map of multigraphs, with an optional finite group acting on the total
/// graph (elements as vertex and edge permutations).
#[derive(Debug, Clone)]
pub struct GraphCovering {
    pub total: Multigraph,
    pub base: Multigraph,
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
    pub group: Vec<(Vec<usize>, Vec<usize>)>,
}

impl GraphCovering {
    /// Local bijectivity on stars, counting loop ends twice, restricted to
    /// vertices whose star is complete (`interior`).
    pub fn is_local_bijection_at(&self, x: usize) -> bool {
        let mut local: Vec<(usize, usize)> = self.total.star(x).into_iter().map(|(e, _)| (self.edge_map[e], 0)).collect();
        let mut star: Vec<(usize, usize)> = self.base.star(self.vertex_map[x]).into_iter().map(|(e, _)| (e, 0)).collect();
        local.sort_unstable();
        star.sort_unstable();
        local == star
    }
}

/// Ball of radius `radius` around `base` in the universal cover: vertices
/// are reduced edge-words (no immediate backtracking along the same edge
/// end) of length at most `radius`.
pub fn universal_cover_ball(g: &Multigraph, base: usize, radius: usize) -> Result<GraphCovering, TqError> {
    let c = g.num_components();
    if c > 1 {
        return Err(TqError::Disconnected(c));
    }
    // half-edges: (edge, direction); direction 0 traverses u -> v
    let mut total = Multigraph::new(vec![g.vertices[base].clone()]);
    let mut vertex_map = vec![base];
    let mut edge_map = Vec::new();
    // (total vertex, base vertex, last half-edge used to arrive)
    let mut frontier: Vec<(usize, usize, Option<(usize, usize)>)> = vec![(0, base, None)];
    for _ in 0..radius {
        let mut next = Vec::new();
        for &(tv, bv, last) in &frontier {
            for (e, (_, u, v)) in g.edges.iter().enumerate() {
                for dir in 0..2 {
                    let (from, to) = if dir == 0 { (*u, *v) } else { (*v, *u) };
                    if from != bv {
                        continue;
                    }
                    // backtracking: same edge, opposite direction
                    if let Some((le, ld)) = last {
                        if le == e && ld != dir {
                            continue;
                        }
                    }
                    let name = format!("{}{}", total.vertices[tv], if dir == 0 { format!("+{}", g.edges[e].0) } else { format!("-{}", g.edges[e].0) });
                    let nv = total.add_vertex(&name);
                    vertex_map.push(to);
                    total.add_edge(&g.edges[e].0, tv, nv);
                    edge_map.push(e);
                    next.push((nv, to, Some((e, dir))));
                }
            }
        }
        frontier = next;
    }
    Ok(GraphCovering { total, base: g.clone(), vertex_map, edge_map, group: Vec::new() })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Multigraph {
        let mut g = Multigraph::new((0..n).map(|i| format!("v{i}")).collect());
        for (i, &(u, v)) in edges.iter().enumerate() {
            g.add_edge(&format!("e{i}"), u, v);
        }
        g
    }

    #[test]
    fn pi1_examples() {
        let single = graph(1, &[]);
        assert_eq!(single.pi1_rank().unwrap(), 0);
        assert!(single.is_tree().unwrap());
        let kron = graph(2, &[(0, 1), (0, 1)]);
        assert_eq!(kron.pi1_rank().unwrap(), 1);
        assert!(!kron.is_tree().unwrap());
        assert!(matches!(graph(2, &[]).pi1_rank(), Err(TqError::Disconnected(2))));
        assert_eq!(graph(3, &[(0, 1)]).pi1_ranks_by_component(), [0, 0]);
    }

    #[test]
    fn subdivision_keeps_rank() {
        let g = graph(3, &[(0, 1), (1, 2), (2, 0), (1, 1)]);
        for e in 0..g.num_edges() {
            assert_eq!(g.subdivide(e).pi1_rank().unwrap(), g.pi1_rank().unwrap());
        }
    }

    #[test]
    fn universal_cover_of_a_loop() {
        let g = graph(1, &[(0, 0)]);
        let ball = universal_cover_ball(&g, 0, 2).unwrap();
        assert_eq!(ball.total.num_vertices(), 5);
        assert!(!ball.total.has_cycle());
        let path = graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        assert!(ball.total.is_isomorphic(&path));
    }

    #[test]
    fn universal_cover_of_a_tree_is_the_tree() {
        let t = graph(4, &[(0, 1), (1, 2), (1, 3)]);
        let ball = universal_cover_ball(&t, 0, 5).unwrap();
        assert!(ball.total.is_isomorphic(&t));
    }

    #[test]
    fn multigraph_isomorphism() {
        let a = graph(3, &[(0, 1), (0, 1), (1, 2)]);
        let b = graph(3, &[(2, 0), (1, 2), (2, 1)]);
        let c = graph(3, &[(0, 1), (1, 2), (1, 2), (0, 0)]);
        assert!(a.is_isomorphic(&b));
        assert!(!a.is_isomorphic(&c));
    }

    /// `1 -> 2` knitted: P1 = S1 -> P2 -> S2 with τS2 = S1.
    fn a2_tq() -> TranslationQuiver {
        let mut tq = TranslationQuiver::default();
        let s1 = tq.add_vertex("P1", true, false);
        let p2 = tq.add_vertex("P2", true, true);
        let s2 = tq.add_vertex("S2", false, true);
        tq.add_arrow(s1, p2);
        tq.add_arrow(p2, s2);
        tq.tau[s2] = Some(s1);
        tq.polarise_by_order();
        tq
    }

    #[test]
    fn a2_orbit_graph() {
        let tq = a2_tq();
        tq.validate().unwrap();
        let g = tq.orbit_graph().unwrap();
        assert_eq!((g.num_vertices(), g.num_edges()), (2, 1));
        assert!(g.is_tree().unwrap());
        assert_eq!(tq.mesh_complex_b1(), 0);
    }

    #[test]
    fn identity_and_broken_coverings() {
        let tq = a2_tq();
        let id = TqMap { vertex_map: vec![0, 1, 2], arrow_map: vec![0, 1] };
        assert!(all_passed(&check_tq_covering(&tq, &tq, &id)));
        assert!(all_passed(&check_tq_galois(&tq, &tq, &id, &TqAction::trivial(&tq))));
        let mut broken = tq.clone();
        broken.tau[2] = None;
        broken.vertices[2].projective = true;
        let verdicts = check_tq_covering(&tq, &broken, &id);
        assert!(!verdicts[2].passed);
        assert_eq!(verdicts[2].witness.as_deref(), Some("S2"));
    }

    fn doubled_a2() -> (TranslationQuiver, TqAction) {
        let base = a2_tq();
        let mut tq = TranslationQuiver::default();
        for sheet in ["", "'"] {
            for v in &base.vertices {
                tq.add_vertex(&format!("{}{sheet}", v.name), v.projective, v.injective);
            }
        }
        for off in [0, 3] {
            tq.add_arrow(off, off + 1);
            tq.add_arrow(off + 1, off + 2);
            tq.tau[off + 2] = Some(off);
        }
        tq.polarise_by_order();
        let swap = (vec![3, 4, 5, 0, 1, 2], vec![2, 3, 0, 1]);
        (tq.clone(), TqAction { elements: vec![((0..6).collect(), (0..4).collect()), swap] })
    }

    #[test]
    fn doubled_sheet_quotient() {
        let (tq, act) = doubled_a2();
        let (q, p) = quotient_tq(&tq, &act).unwrap();
        assert_eq!(q.num_vertices(), 3);
        assert!(all_passed(&check_tq_galois(&tq, &q, &p, &act)));
        let og = tq.orbit_graph().unwrap();
        let oq = q.orbit_graph().unwrap();
        assert_eq!(og.num_vertices(), 2 * oq.num_vertices());

        let fixing = TqAction { elements: vec![((0..6).collect(), (0..4).collect()), ((0..6).collect(), (0..4).collect())] };
        let verdicts = check_tq_galois(&tq, &q, &p, &fixing);
        assert!(!verdicts.iter().find(|v| v.condition.starts_with("(f)")).unwrap().passed);
        let not_free = TqAction { elements: vec![((0..6).collect(), (0..4).collect()), (vec![0, 4, 5, 3, 1, 2], vec![0, 1, 2, 3])] };
        assert!(matches!(quotient_tq(&tq, &not_free), Err(TqError::NotFree(_))));
    }

    #[test]
    fn laura_component_orbit_graph() {
        let tq = crate::fixtures::laura_component();
        tq.validate().unwrap();
        assert_eq!(tq.num_vertices(), 17);
        let g = tq.orbit_graph().unwrap();
        assert_eq!((g.num_vertices(), g.num_edges(), g.num_loops()), (6, 8, 1));
        assert_eq!(g.pi1_rank().unwrap(), 3);
        let s3 = g.vertex_index("S3").unwrap();
        assert!(g.edges.iter().any(|&(_, u, v)| u == s3 && v == s3));
        let mut expected = Multigraph::new(["P3", "P4", "P5", "I1", "S2", "S3"].map(String::from).to_vec());
        for (u, v) in [(3, 4), (3, 4), (4, 2), (4, 2), (0, 4), (4, 1), (1, 5), (5, 5)] {
            expected.add_edge("e", u, v);
        }
        assert!(g.is_isomorphic(&expected));
        assert_eq!(tq.mesh_complex_b1(), 3);
    }
}
