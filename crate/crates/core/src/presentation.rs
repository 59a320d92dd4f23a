//! Bound quivers and the finite dimensional algebras they present.
//!
//! Paths compose left to right: `a.b` is `a` followed by `b`, so it runs
//! from `source(a)` to `target(b)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_traits::{One, Zero};

use crate::linalg::{axpy, Echelon, Rational, SparseRow};

pub const DEFAULT_MAX_PATH_LEN: usize = 64;

/// Flag overriding [`DEFAULT_MAX_PATH_LEN`] for [`Presentation::algebra`].
pub const MAX_PATH_LEN_FLAG: &str = "max-path-len";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PresentationError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("ideal is not admissible: {0}")]
    NotAdmissible(String),
    #[error("arrow ideal is not nilpotent modulo the relations up to path length {bound}; surviving cycle {}", cycle.join("."))]
    NotNilpotent { cycle: Vec<String>, bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds a quiver from names; arrows are `(name, source, target)`.
    pub fn from_names(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self, PresentationError> {
        let mut q = Quiver::new();
        for v in vertices {
            q.add_vertex(v)?;
        }
        for (a, s, t) in arrows {
            let s = q.vertex_index(s).ok_or_else(|| PresentationError::UnknownVertex(s.to_string()))?;
            let t = q.vertex_index(t).ok_or_else(|| PresentationError::UnknownVertex(t.to_string()))?;
            q.add_arrow(a, s, t)?;
        }
        Ok(q)
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize, PresentationError> {
        if self.vertex_index(name).is_some() {
            return Err(PresentationError::DuplicateVertex(name.to_string()));
        }
        self.vertices.push(name.to_string());
        Ok(self.vertices.len() - 1)
    }

    pub fn add_arrow(&mut self, name: &str, source: usize, target: usize) -> Result<usize, PresentationError> {
        if self.arrow_index(name).is_some() {
            return Err(PresentationError::DuplicateArrow(name.to_string()));
        }
        for v in [source, target] {
            if v >= self.vertices.len() {
                return Err(PresentationError::UnknownVertex(v.to_string()));
            }
        }
        self.arrows.push(Arrow { name: name.to_string(), source, target });
        Ok(self.arrows.len() - 1)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn arrows_to(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source })
                .collect(),
        }
    }

    /// Connected components of the underlying graph, each sorted, listed by
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            comp[start] = id;
            let mut members = Vec::new();
            while let Some(v) = stack.pop() {
                members.push(v);
                for a in &self.arrows {
                    for (x, y) in [(a.source, a.target), (a.target, a.source)] {
                        if x == v && comp[y] == usize::MAX {
                            comp[y] = id;
                            stack.push(y);
                        }
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_acyclic(&self) -> bool {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in &self.arrows {
                if a.source == v {
                    indeg[a.target] -= 1;
                    if indeg[a.target] == 0 {
                        stack.push(a.target);
                    }
                }
            }
        }
        seen == n
    }

    pub fn path_name(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            let mut s = String::from("e_");
            s.push_str(&self.vertices[p.source]);
            return s;
        }
        let names: Vec<&str> = p.arrows.iter().map(|&a| self.arrows[a].name.as_str()).collect();
        names.join(".")
    }

    /// Parses `a.b.c` (or `e_<vertex>` for a trivial path).
    pub fn parse_path(&self, text: &str) -> Result<Path, PresentationError> {
        let text = text.trim();
        if let Some(v) = text.strip_prefix("e_") {
            if let Some(v) = self.vertex_index(v) {
                return Ok(Path::trivial(v));
            }
        }
        let mut arrows = Vec::new();
        for name in text.split('.') {
            let name = name.trim();
            arrows.push(self.arrow_index(name).ok_or_else(|| PresentationError::UnknownArrow(name.to_string()))?);
        }
        self.path_from_arrows(arrows)
    }

    pub fn path_from_arrows(&self, arrows: Vec<usize>) -> Result<Path, PresentationError> {
        let Some(&first) = arrows.first() else {
            return Err(PresentationError::InvalidRelation("empty path".into()));
        };
        for w in arrows.windows(2) {
            if self.arrows[w[0]].target != self.arrows[w[1]].source {
                return Err(PresentationError::InvalidRelation(alloc::format!(
                    "arrows `{}` and `{}` do not compose",
                    self.arrows[w[0]].name,
                    self.arrows[w[1]].name
                )));
            }
        }
        let last = *arrows.last().unwrap_or(&first);
        Ok(Path { source: self.arrows[first].source, target: self.arrows[last].target, arrows })
    }

    /// All paths of length at most `max_len` starting at `v`.
    pub fn paths_from(&self, v: usize, max_len: usize) -> Vec<Path> {
        let mut out = vec![Path::trivial(v)];
        let mut frontier = vec![Path::trivial(v)];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for a in self.arrows_from(p.target) {
                    next.push(p.then_arrow(a, self.arrows[a].target));
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// All paths of length at most `max_len` ending at `v`.
    pub fn paths_to(&self, v: usize, max_len: usize) -> Vec<Path> {
        let mut out = vec![Path::trivial(v)];
        let mut frontier = vec![Path::trivial(v)];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for p in &frontier {
                for a in self.arrows_to(p.source) {
                    let mut arrows = vec![a];
                    arrows.extend_from_slice(&p.arrows);
                    next.push(Path { source: self.arrows[a].source, target: p.target, arrows });
                }
            }
            if next.is_empty() {
                break;
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }
}

/// A path in a quiver. Trivial paths have no arrows and `source == target`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path { source: v, target: v, arrows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    fn then_arrow(&self, a: usize, target: usize) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.push(a);
        Path { source: self.source, target, arrows }
    }

    /// `self` followed by `other`, if they compose.
    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { source: self.source, target: other.target, arrows })
    }

    pub fn reversed(&self) -> Path {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Path { source: self.target, target: self.source, arrows }
    }
}

/// Length first, then the arrow sequence lexicographically. Larger paths
/// lead relations and are eliminated first.
fn deglex(a: &Path, b: &Path) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.arrows.cmp(&b.arrows))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RelationElement {
    terms: Vec<(Rational, Path)>,
}

impl RelationElement {
    /// Validates and normalizes: terms merged, sorted by decreasing
    /// length-then-name order, leading coefficient 1.
    pub fn new(quiver: &Quiver, terms: Vec<(Rational, Path)>) -> Result<Self, PresentationError> {
        let mut merged: Vec<(Rational, Path)> = Vec::new();
        for (c, p) in terms {
            if p.is_trivial() || p.len() < 2 {
                return Err(PresentationError::NotAdmissible(alloc::format!(
                    "term `{}` has length < 2",
                    quiver.path_name(&p)
                )));
            }
            quiver.path_from_arrows(p.arrows.clone())?;
            if let Some(t) = merged.iter_mut().find(|t| t.1 == p) {
                t.0 += c;
            } else {
                merged.push((c, p));
            }
        }
        merged.retain(|t| !t.0.is_zero());
        let Some(first) = merged.first() else {
            return Err(PresentationError::InvalidRelation("relation has no nonzero term".into()));
        };
        let (s, t) = (first.1.source, first.1.target);
        if merged.iter().any(|(_, p)| p.source != s || p.target != t) {
            return Err(PresentationError::InvalidRelation("paths are not parallel".into()));
        }
        let name_key = |p: &Path| -> Vec<&str> { p.arrows.iter().map(|&a| quiver.arrow(a).name.as_str()).collect() };
        merged.sort_by(|a, b| b.1.len().cmp(&a.1.len()).then_with(|| name_key(&b.1).cmp(&name_key(&a.1))));
        let lead = merged[0].0.recip();
        for t in merged.iter_mut() {
            t.0 = &t.0 * &lead;
        }
        Ok(RelationElement { terms: merged })
    }

    pub fn terms(&self) -> &[(Rational, Path)] {
        &self.terms
    }

    pub fn source(&self) -> usize {
        self.terms[0].1.source
    }

    pub fn target(&self) -> usize {
        self.terms[0].1.target
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    fn min_len(&self) -> usize {
        self.terms.iter().map(|t| t.1.len()).min().unwrap_or(0)
    }

    fn reversed(&self, opposite: &Quiver) -> RelationElement {
        let terms = self.terms.iter().map(|(c, p)| (c.clone(), p.reversed())).collect();
        RelationElement::new(opposite, terms).expect("reversal preserves validity")
    }

    fn relabel(&self, quiver: &Quiver, vmap: &[usize], amap: &[usize]) -> RelationElement {
        let terms = self
            .terms
            .iter()
            .map(|(c, p)| {
                let arrows = p.arrows.iter().map(|&a| amap[a]).collect();
                (c.clone(), Path { source: vmap[p.source], target: vmap[p.target], arrows })
            })
            .collect();
        RelationElement::new(quiver, terms).expect("relabeling preserves validity")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    quiver: Quiver,
    relations: Vec<RelationElement>,
    flags: BTreeMap<String, String>,
}

impl Presentation {
    pub fn new(quiver: Quiver, relations: Vec<RelationElement>) -> Self {
        Presentation { quiver, relations, flags: BTreeMap::new() }
    }

    pub fn hereditary(quiver: Quiver) -> Self {
        Self::new(quiver, Vec::new())
    }

    /// All paths of length two are relations.
    pub fn radical_square_zero(quiver: Quiver) -> Self {
        let mut relations = Vec::new();
        for a in 0..quiver.num_arrows() {
            for b in quiver.arrows_from(quiver.arrow(a).target).collect::<Vec<_>>() {
                let p = quiver.path_from_arrows(vec![a, b]).expect("composable");
                relations.push(RelationElement::new(&quiver, vec![(Rational::one(), p)]).expect("monomial"));
            }
        }
        Self::new(quiver, relations)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[RelationElement] {
        &self.relations
    }

    pub fn flags(&self) -> &BTreeMap<String, String> {
        &self.flags
    }

    pub fn set_flag(&mut self, key: &str, value: &str) {
        self.flags.insert(key.to_string(), value.to_string());
    }

    pub fn flag(&self, key: &str) -> Option<&str> {
        self.flags.get(key).map(String::as_str)
    }

    pub fn is_hereditary(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    pub fn opposite(&self) -> Presentation {
        let quiver = self.quiver.opposite();
        let relations = self.relations.iter().map(|r| r.reversed(&quiver)).collect();
        Presentation { quiver, relations, flags: self.flags.clone() }
    }

    /// The full subcategory on `keep` (sorted vertex indices): arrows between
    /// kept vertices, relations not passing through removed vertices.
    pub fn restrict(&self, keep: &[usize]) -> Presentation {
        let mut vmap = vec![usize::MAX; self.quiver.num_vertices()];
        let mut quiver = Quiver::new();
        for &v in keep {
            vmap[v] = quiver.add_vertex(self.quiver.vertex_name(v)).expect("unique names");
        }
        let mut amap = vec![usize::MAX; self.quiver.num_arrows()];
        for (i, a) in self.quiver.arrows().iter().enumerate() {
            if vmap[a.source] != usize::MAX && vmap[a.target] != usize::MAX {
                amap[i] = quiver.add_arrow(&a.name, vmap[a.source], vmap[a.target]).expect("unique names");
            }
        }
        let relations = self
            .relations
            .iter()
            .filter(|r| r.terms.iter().all(|(_, p)| p.arrows.iter().all(|&a| amap[a] != usize::MAX)))
            .map(|r| r.relabel(&quiver, &vmap, &amap))
            .collect();
        let flags = self.flags.iter().filter(|(k, _)| *k == MAX_PATH_LEN_FLAG).map(|(k, v)| (k.clone(), v.clone())).collect();
        Presentation { quiver, relations, flags }
    }

    /// Presentation obtained by deleting one vertex.
    pub fn delete_vertex(&self, v: usize) -> Presentation {
        let keep: Vec<usize> = (0..self.quiver.num_vertices()).filter(|&x| x != v).collect();
        self.restrict(&keep)
    }

    pub fn components(&self) -> Vec<Presentation> {
        self.quiver.components().iter().map(|c| self.restrict(c)).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.quiver.components().len() <= 1
    }

    /// Renames vertices and arrows through the given permutations
    /// (`vperm[old] = new`), producing an isomorphic presentation.
    pub fn permuted(&self, vperm: &[usize], aperm: &[usize]) -> Presentation {
        let n = self.quiver.num_vertices();
        let mut names = vec![String::new(); n];
        for v in 0..n {
            names[vperm[v]] = self.quiver.vertex_name(v).to_string();
        }
        let mut quiver = Quiver::new();
        for name in &names {
            quiver.add_vertex(name).expect("unique names");
        }
        let mut arrows: Vec<Option<Arrow>> = vec![None; self.quiver.num_arrows()];
        for (i, a) in self.quiver.arrows().iter().enumerate() {
            arrows[aperm[i]] = Some(Arrow { name: a.name.clone(), source: vperm[a.source], target: vperm[a.target] });
        }
        for a in arrows.into_iter().flatten() {
            quiver.add_arrow(&a.name, a.source, a.target).expect("unique names");
        }
        let relations = self.relations.iter().map(|r| r.relabel(&quiver, vperm, aperm)).collect();
        Presentation { quiver, relations, flags: self.flags.clone() }
    }

    pub fn algebra(&self) -> Result<Algebra, PresentationError> {
        let bound = self.flag(MAX_PATH_LEN_FLAG).and_then(|v| v.parse().ok()).unwrap_or(DEFAULT_MAX_PATH_LEN);
        Algebra::new(self.clone(), bound)
    }

    pub fn algebra_with_bound(&self, max_path_len: usize) -> Result<Algebra, PresentationError> {
        Algebra::new(self.clone(), max_path_len)
    }

    /// Ordered basis of the presented algebra.
    pub fn path_basis(&self) -> Result<Vec<Path>, PresentationError> {
        Ok(self.algebra()?.basis().to_vec())
    }
}

/// An element of an algebra in basis coordinates.
pub type Element = SparseRow;

#[derive(Debug)]
struct AlgebraData {
    presentations: [Presentation; 2],
    basis: Vec<Path>,
    index: BTreeMap<Path, usize>,
    reductions: BTreeMap<Path, Element>,
    nil_length: usize,
}

/// A finite dimensional algebra `kQ/I` with a standard-monomial basis.
///
/// Cheap to clone. The opposite algebra shares the same data: basis element
/// `i` of `A^op` is the reversal of basis element `i` of `A`.
#[derive(Debug, Clone)]
pub struct Algebra {
    data: Arc<AlgebraData>,
    opposite: bool,
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) && self.opposite == other.opposite
    }
}

impl Eq for Algebra {}

impl Algebra {
    pub fn new(presentation: Presentation, max_path_len: usize) -> Result<Self, PresentationError> {
        let q = presentation.quiver().clone();
        let nil_length = nilpotency_index(&presentation, max_path_len)?;
        let mut basis = Vec::new();
        let mut pending: BTreeMap<Path, Vec<(Path, Rational)>> = BTreeMap::new();
        for s in 0..q.num_vertices() {
            let paths = q.paths_from(s, nil_length - 1);
            for t in 0..q.num_vertices() {
                let mut block: Vec<Path> = paths.iter().filter(|p| p.target == t).cloned().collect();
                if block.is_empty() {
                    continue;
                }
                block.sort_by(|a, b| deglex(b, a));
                let col: BTreeMap<&Path, usize> = block.iter().enumerate().map(|(i, p)| (p, i)).collect();
                let mut ech = Echelon::new(block.len());
                for g in ideal_elements(&presentation, s, t, nil_length - 1) {
                    let mut row: SparseRow = g.into_iter().map(|(c, p)| (col[&p], c)).collect();
                    row.sort_by_key(|e| e.0);
                    ech.insert(row);
                }
                let rref = ech.rref();
                for (pivot, row) in &rref {
                    let red = row[1..].iter().map(|(c, v)| (block[*c].clone(), -v.clone())).collect();
                    pending.insert(block[*pivot].clone(), red);
                }
                for (i, p) in block.iter().enumerate() {
                    if !rref.contains_key(&i) {
                        basis.push(p.clone());
                    }
                }
            }
        }
        basis.sort_by(|a, b| deglex(a, b).then_with(|| a.source.cmp(&b.source)));
        let index: BTreeMap<Path, usize> = basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let reductions = pending
            .into_iter()
            .map(|(p, terms)| {
                let mut row: Element = terms.into_iter().map(|(bp, c)| (index[&bp], c)).collect();
                row.sort_by_key(|e| e.0);
                (p, row)
            })
            .collect();
        let opposite = presentation.opposite();
        Ok(Algebra {
            data: Arc::new(AlgebraData { presentations: [presentation, opposite], basis, index, reductions, nil_length }),
            opposite: false,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.data.presentations[self.opposite as usize]
    }

    pub fn quiver(&self) -> &Quiver {
        self.presentation().quiver()
    }

    pub fn is_opposite(&self) -> bool {
        self.opposite
    }

    pub fn opposite(&self) -> Algebra {
        Algebra { data: self.data.clone(), opposite: !self.opposite }
    }

    pub fn dim(&self) -> usize {
        self.data.basis.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver().num_vertices()
    }

    /// Paths of length at least this vanish.
    pub fn nilpotency_index(&self) -> usize {
        self.data.nil_length
    }

    pub fn basis(&self) -> Vec<Path> {
        if self.opposite {
            self.data.basis.iter().map(Path::reversed).collect()
        } else {
            self.data.basis.clone()
        }
    }

    pub fn basis_path(&self, i: usize) -> Path {
        let p = &self.data.basis[i];
        if self.opposite {
            p.reversed()
        } else {
            p.clone()
        }
    }

    /// Basis indices of paths from `s` to `t`, in basis order.
    pub fn basis_between(&self, s: usize, t: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| {
                let p = self.basis_path(i);
                p.source == s && p.target == t
            })
            .collect()
    }

    pub fn idempotent(&self, v: usize) -> usize {
        self.data.index[&Path::trivial(v)]
    }

    pub fn arrow_element(&self, a: usize) -> Element {
        let q = self.quiver();
        let arrow = q.arrow(a);
        self.reduce_path(&Path { source: arrow.source, target: arrow.target, arrows: vec![a] })
    }

    /// Coordinates of a path of this algebra's quiver.
    pub fn reduce_path(&self, p: &Path) -> Element {
        let p = if self.opposite { p.reversed() } else { p.clone() };
        if p.len() >= self.data.nil_length {
            return Vec::new();
        }
        if let Some(&i) = self.data.index.get(&p) {
            return vec![(i, Rational::one())];
        }
        self.data.reductions.get(&p).cloned().unwrap_or_default()
    }

    pub fn mul_basis(&self, i: usize, j: usize) -> Element {
        let (i, j) = if self.opposite { (j, i) } else { (i, j) };
        let (p, q) = (&self.data.basis[i], &self.data.basis[j]);
        match p.concat(q) {
            None => Vec::new(),
            Some(pq) => {
                if pq.len() >= self.data.nil_length {
                    return Vec::new();
                }
                if let Some(&k) = self.data.index.get(&pq) {
                    return vec![(k, Rational::one())];
                }
                self.data.reductions.get(&pq).cloned().unwrap_or_default()
            }
        }
    }

    pub fn mul(&self, x: &[(usize, Rational)], y: &[(usize, Rational)]) -> Element {
        let mut acc: Element = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                let prod = self.mul_basis(*i, *j);
                if !prod.is_empty() {
                    acc = axpy(&acc, &(a * b), &prod);
                }
            }
        }
        acc
    }

    pub fn element_name(&self, x: &[(usize, Rational)]) -> String {
        if x.is_empty() {
            return "0".into();
        }
        let q = self.quiver();
        let parts: Vec<String> = x
            .iter()
            .map(|(i, c)| {
                let p = q.path_name(&self.basis_path(*i));
                if c.is_one() {
                    p
                } else {
                    alloc::format!("{}*{}", c, p)
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// Generators `u r w` of the ideal inside the span of paths from `s` to `t`,
/// with terms longer than `max_len` dropped.
fn ideal_elements(p: &Presentation, s: usize, t: usize, max_len: usize) -> Vec<Vec<(Rational, Path)>> {
    let q = p.quiver();
    let mut out = Vec::new();
    for r in p.relations() {
        let m = r.min_len();
        if m > max_len {
            continue;
        }
        let room = max_len - m;
        let lefts: Vec<Path> = q.paths_to(r.source(), room).into_iter().filter(|u| u.source == s).collect();
        if lefts.is_empty() {
            continue;
        }
        let rights: Vec<Path> = q.paths_from(r.target(), room).into_iter().filter(|w| w.target == t).collect();
        for u in &lefts {
            for w in &rights {
                if u.len() + w.len() > room {
                    continue;
                }
                let mut elem = Vec::new();
                for (c, path) in r.terms() {
                    let full = u.concat(path).and_then(|x| x.concat(w)).expect("composable");
                    if full.len() <= max_len {
                        elem.push((c.clone(), full));
                    }
                }
                if !elem.is_empty() {
                    out.push(elem);
                }
            }
        }
    }
    out
}

/// Smallest `n` such that every path of length `n` lies in the ideal.
fn nilpotency_index(p: &Presentation, bound: usize) -> Result<usize, PresentationError> {
    let q = p.quiver();
    for n in 1..=bound {
        let mut all_vanish = true;
        'blocks: for s in 0..q.num_vertices() {
            let paths = q.paths_from(s, n);
            let targets: BTreeSet<usize> = paths.iter().filter(|x| x.len() == n).map(|x| x.target).collect();
            for t in targets {
                let mut block: Vec<Path> = paths.iter().filter(|x| x.target == t).cloned().collect();
                block.sort_by(|a, b| deglex(b, a));
                let col: BTreeMap<&Path, usize> = block.iter().enumerate().map(|(i, x)| (x, i)).collect();
                let mut ech = Echelon::new(block.len());
                for g in ideal_elements(p, s, t, n) {
                    let mut row: SparseRow = g.into_iter().map(|(c, x)| (col[&x], c)).collect();
                    row.sort_by_key(|e| e.0);
                    ech.insert(row);
                }
                for (i, x) in block.iter().enumerate() {
                    if x.len() == n && !ech.contains(vec![(i, Rational::one())]) {
                        all_vanish = false;
                        break 'blocks;
                    }
                }
            }
        }
        if all_vanish {
            return Ok(n);
        }
    }
    Err(PresentationError::NotNilpotent { cycle: surviving_cycle(q), bound })
}

fn surviving_cycle(q: &Quiver) -> Vec<String> {
    for v in 0..q.num_vertices() {
        for p in q.paths_from(v, q.num_vertices()) {
            if !p.is_trivial() && p.target == p.source {
                return p.arrows.iter().map(|&a| q.arrow(a).name.clone()).collect();
            }
        }
    }
    Vec::new()
}
