//! Line-based text formats for presentations, modules, coverings and graphs.
//!
//! Every format ignores blank lines and `#` comments. Paths are written
//! `a.b.c` and compose left to right.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use quivercover_core::galois::{CoveringFunctor, GroupAction};
use quivercover_core::linalg::{Matrix, Rational};
use quivercover_core::presentation::{Presentation, Quiver, RelationElement};
use quivercover_core::repr::Representation;
use quivercover_core::shod::FiniteQuotient;
use quivercover_core::tq::Multigraph;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{0}")]
    Invalid(String),
}

fn syntax(line: usize, raw: &str, token: &str, message: impl Into<String>) -> FormatError {
    let column = raw.find(token).map_or(1, |c| c + 1);
    FormatError::Syntax { line, column, message: message.into() }
}

/// Non-empty lines with comments removed, numbered from 1.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, raw, body))
    })
}

fn parse_rational(s: &str) -> Option<Rational> {
    s.trim().parse().ok()
}

/// Accumulates the lines of one presentation block.
#[derive(Default)]
struct PresentationBuilder {
    quiver: Quiver,
    relations: Vec<(usize, String, String)>,
    flags: Vec<(String, String)>,
}

impl PresentationBuilder {
    /// Consumes a presentation line; `Ok(false)` if the keyword is foreign.
    fn line(&mut self, n: usize, raw: &str, body: &str) -> Result<bool, FormatError> {
        let (keyword, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let rest = rest.trim();
        match keyword {
            "vertex" => {
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(syntax(n, raw, "vertex", "expected `vertex <name>`"));
                }
                self.quiver.add_vertex(rest).map_err(|e| syntax(n, raw, rest, e.to_string()))?;
            }
            "arrow" => {
                let err = || syntax(n, raw, "arrow", "expected `arrow <name>: <source> -> <target>`");
                let (name, ends) = rest.split_once(':').ok_or_else(err)?;
                let (s, t) = ends.split_once("->").ok_or_else(err)?;
                let (name, s, t) = (name.trim(), s.trim(), t.trim());
                if name.is_empty() || name.contains(char::is_whitespace) {
                    return Err(err());
                }
                let sv = self.quiver.vertex_index(s).ok_or_else(|| syntax(n, raw, s, format!("unknown vertex `{s}`")))?;
                let tv = self.quiver.vertex_index(t).ok_or_else(|| syntax(n, raw, t, format!("unknown vertex `{t}`")))?;
                self.quiver.add_arrow(name, sv, tv).map_err(|e| syntax(n, raw, name, e.to_string()))?;
            }
            "relation" => self.relations.push((n, raw.to_string(), rest.to_string())),
            "flag" => {
                let (k, v) = rest.split_once('=').ok_or_else(|| syntax(n, raw, "flag", "expected `flag <key>=<value>`"))?;
                self.flags.push((k.trim().to_string(), v.trim().to_string()));
            }
            _ => return Ok(false),
        }
        Ok(true)
    }

    fn finish(self) -> Result<Presentation, FormatError> {
        let mut relations = Vec::new();
        for (n, raw, text) in &self.relations {
            let mut terms = Vec::new();
            for term in split_terms(text) {
                let (coef, path) = match term.split_once('*') {
                    Some((c, p)) => (parse_rational(c).ok_or_else(|| syntax(*n, raw, c.trim(), "bad coefficient"))?, p.trim()),
                    None => match term.strip_prefix('-') {
                        Some(p) => (Rational::from_integer((-1).into()), p.trim()),
                        None => (Rational::from_integer(1.into()), term.trim()),
                    },
                };
                let p = self.quiver.parse_path(path).map_err(|e| syntax(*n, raw, path, e.to_string()))?;
                terms.push((coef, p));
            }
            if terms.is_empty() {
                return Err(syntax(*n, raw, "relation", "empty relation"));
            }
            relations.push(RelationElement::new(&self.quiver, terms).map_err(|e| syntax(*n, raw, "relation", e.to_string()))?);
        }
        let mut p = Presentation::new(self.quiver, relations);
        for (k, v) in self.flags {
            p.set_flag(&k, &v);
        }
        Ok(p)
    }
}

/// Splits `c1*p1 + c2*p2 - p3` into signed terms at ` + ` and ` - `.
fn split_terms(text: &str) -> Vec<String> {
    let spaced = format!(" {} ", text.split_whitespace().collect::<Vec<_>>().join(" "));
    spaced
        .replace(" - ", " + -")
        .split(" + ")
        .map(|t| t.trim().to_string())
        .filter(|t| !t.is_empty())
        .collect()
}

pub fn parse_presentation(text: &str) -> Result<Presentation, FormatError> {
    let mut b = PresentationBuilder::default();
    for (n, raw, body) in lines(text) {
        if !b.line(n, raw, body)? {
            let word = body.split_whitespace().next().unwrap_or(body);
            return Err(syntax(n, raw, word, format!("unknown keyword `{word}`")));
        }
    }
    b.finish()
}

/// Canonical form: vertices, arrows, normalized relations, sorted flags.
pub fn print_presentation(p: &Presentation) -> String {
    let q = p.quiver();
    let mut out = String::new();
    for v in q.vertices() {
        writeln!(out, "vertex {v}").unwrap();
    }
    for a in q.arrows() {
        writeln!(out, "arrow {}: {} -> {}", a.name, q.vertex_name(a.source), q.vertex_name(a.target)).unwrap();
    }
    for r in p.relations() {
        let terms: Vec<String> = r.terms().iter().map(|(c, path)| format!("{c}*{}", q.path_name(path))).collect();
        writeln!(out, "relation {}", terms.join(" + ")).unwrap();
    }
    for (k, v) in p.flags() {
        writeln!(out, "flag {k}={v}").unwrap();
    }
    out
}

fn parse_matrix(text: &str, rows: usize, cols: usize) -> Option<Matrix> {
    let t = text.trim().strip_prefix('[')?.strip_suffix(']')?.trim();
    if t.is_empty() {
        return (rows == 0).then(|| Matrix::zeros(0, cols));
    }
    let mut parsed = Vec::new();
    let mut rest = t;
    while !rest.is_empty() {
        let inner = rest.strip_prefix('[')?;
        let close = inner.find(']')?;
        let entries: Option<Vec<Rational>> = if inner[..close].trim().is_empty() {
            Some(Vec::new())
        } else {
            inner[..close].split(',').map(parse_rational).collect()
        };
        parsed.push(entries?);
        rest = inner[close + 1..].trim_start().trim_start_matches(',').trim_start();
    }
    if parsed.len() != rows || parsed.iter().any(|r| r.len() != cols) {
        return None;
    }
    if cols == 0 {
        return Some(Matrix::zeros(rows, 0));
    }
    Matrix::from_rows(parsed).ok()
}

fn print_matrix(m: &Matrix) -> String {
    let rows: Vec<String> =
        (0..m.rows()).map(|r| format!("[{}]", m.row(r).iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))).collect();
    format!("[{}]", rows.join(","))
}

/// A module file: `module <name> over <algebra>`, then `dim <vertex>=<n>`
/// and `map <arrow> = [[..],..]` lines. An arrow `s -> t` is a
/// `dim s × dim t` matrix; omitted dims are zero and omitted maps are zero.
#[derive(Debug, Clone)]
pub struct ModuleFile {
    pub name: String,
    pub over: String,
    pub module: Representation,
}

pub fn parse_module(text: &str, algebra: &quivercover_core::presentation::Algebra) -> Result<ModuleFile, FormatError> {
    let q = algebra.quiver();
    let mut header = None;
    let mut dims = vec![0usize; q.num_vertices()];
    let mut maps: Vec<Option<(usize, String, String)>> = vec![None; q.num_arrows()];
    for (n, raw, body) in lines(text) {
        let (keyword, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        match keyword {
            "module" => {
                let words: Vec<&str> = rest.split_whitespace().collect();
                match words.as_slice() {
                    [name, "over", over] => header = Some((name.to_string(), over.to_string())),
                    _ => return Err(syntax(n, raw, "module", "expected `module <name> over <algebra>`")),
                }
            }
            "dim" => {
                let (v, d) = rest.split_once('=').ok_or_else(|| syntax(n, raw, "dim", "expected `dim <vertex>=<n>`"))?;
                let v = v.trim();
                let idx = q.vertex_index(v).ok_or_else(|| syntax(n, raw, v, format!("unknown vertex `{v}`")))?;
                dims[idx] = d.trim().parse().map_err(|_| syntax(n, raw, d.trim(), "bad dimension"))?;
            }
            "map" => {
                let (a, m) = rest.split_once('=').ok_or_else(|| syntax(n, raw, "map", "expected `map <arrow> = <matrix>`"))?;
                let a = a.trim();
                let idx = q.arrow_index(a).ok_or_else(|| syntax(n, raw, a, format!("unknown arrow `{a}`")))?;
                maps[idx] = Some((n, raw.to_string(), m.trim().to_string()));
            }
            _ => return Err(syntax(n, raw, keyword, format!("unknown keyword `{keyword}`"))),
        }
    }
    let (name, over) = header.ok_or_else(|| FormatError::Invalid("missing `module <name> over <algebra>` line".into()))?;
    let mut matrices = Vec::new();
    for (a, arrow) in q.arrows().iter().enumerate() {
        let (r, c) = (dims[arrow.source], dims[arrow.target]);
        matrices.push(match &maps[a] {
            Some((n, raw, text)) => parse_matrix(text, r, c)
                .ok_or_else(|| syntax(*n, raw, text, format!("expected a {r}×{c} matrix for `{}`", arrow.name)))?,
            None => Matrix::zeros(r, c),
        });
    }
    let module = Representation::new(algebra.clone(), dims, matrices).map_err(|e| FormatError::Invalid(e.to_string()))?;
    Ok(ModuleFile { name, over, module })
}

pub fn print_module(name: &str, over: &str, m: &Representation) -> String {
    let q = m.algebra().quiver();
    let mut out = format!("module {name} over {over}\n");
    for (v, d) in m.dims().iter().enumerate() {
        writeln!(out, "dim {}={d}", q.vertex_name(v)).unwrap();
    }
    for (a, arrow) in q.arrows().iter().enumerate() {
        writeln!(out, "map {} = {}", arrow.name, print_matrix(m.map(a))).unwrap();
    }
    out
}

/// A covering file: `begin total` / `end` and `begin base` / `end`
/// presentation blocks, `map <x> -> <y>` lines for vertices and arrows of
/// the total presentation, and `generator <x>-><y>, ...` lines listing the
/// moved vertices and arrows of each group generator.
pub struct CoveringFile {
    pub total: Presentation,
    pub base: Presentation,
    pub functor: CoveringFunctor,
    pub action: GroupAction,
}

enum Item {
    Vertex(usize),
    Arrow(usize),
}

fn lookup(q: &Quiver, name: &str) -> Option<Item> {
    match (q.vertex_index(name), q.arrow_index(name)) {
        (Some(v), None) => Some(Item::Vertex(v)),
        (None, Some(a)) => Some(Item::Arrow(a)),
        _ => None,
    }
}

pub fn parse_covering(text: &str) -> Result<CoveringFile, FormatError> {
    let mut blocks: BTreeMap<&str, PresentationBuilder> = BTreeMap::new();
    let mut open: Option<&str> = None;
    let mut maps = Vec::new();
    let mut generators = Vec::new();
    for (n, raw, body) in lines(text) {
        if let Some(name) = open {
            if body == "end" {
                open = None;
            } else if !blocks.get_mut(name).expect("open block").line(n, raw, body)? {
                return Err(syntax(n, raw, body, "expected a presentation line or `end`"));
            }
            continue;
        }
        let (keyword, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        match (keyword, rest.trim()) {
            ("begin", which @ ("total" | "base")) => {
                let which: &str = if which == "total" { "total" } else { "base" };
                if blocks.insert(which, PresentationBuilder::default()).is_some() {
                    return Err(syntax(n, raw, which, format!("duplicate `{which}` block")));
                }
                open = Some(which);
            }
            ("map", rest) => maps.push((n, raw, rest.to_string())),
            ("generator", rest) => generators.push((n, raw, rest.to_string())),
            _ => return Err(syntax(n, raw, keyword, format!("unknown keyword `{keyword}`"))),
        }
    }
    if open.is_some() {
        return Err(FormatError::Invalid("unterminated block".into()));
    }
    let total = blocks.remove("total").ok_or_else(|| FormatError::Invalid("missing `begin total` block".into()))?.finish()?;
    let base = blocks.remove("base").ok_or_else(|| FormatError::Invalid("missing `begin base` block".into()))?.finish()?;
    let (qt, qb) = (total.quiver(), base.quiver());
    let mut vmap = vec![None; qt.num_vertices()];
    let mut amap = vec![None; qt.num_arrows()];
    for (n, raw, rest) in maps {
        let (x, y) = rest.split_once("->").ok_or_else(|| syntax(n, raw, "map", "expected `map <x> -> <y>`"))?;
        let (x, y) = (x.trim(), y.trim());
        match (lookup(qt, x), lookup(qb, y)) {
            (Some(Item::Vertex(a)), Some(Item::Vertex(b))) => vmap[a] = Some(b),
            (Some(Item::Arrow(a)), Some(Item::Arrow(b))) => amap[a] = Some(b),
            _ => return Err(syntax(n, raw, x, format!("`{x} -> {y}` maps neither vertex to vertex nor arrow to arrow"))),
        }
    }
    let unmapped = |v: &[Option<usize>]| v.iter().position(Option::is_none);
    if let Some(v) = unmapped(&vmap) {
        return Err(FormatError::Invalid(format!("vertex `{}` is not mapped", qt.vertex_name(v))));
    }
    if let Some(a) = unmapped(&amap) {
        return Err(FormatError::Invalid(format!("arrow `{}` is not mapped", qt.arrow(a).name)));
    }
    let mut gens = Vec::new();
    for (n, raw, rest) in generators {
        let mut vp: Vec<usize> = (0..qt.num_vertices()).collect();
        let mut ap: Vec<usize> = (0..qt.num_arrows()).collect();
        for pair in rest.split(',').filter(|s| !s.trim().is_empty()) {
            let (x, y) = pair.split_once("->").ok_or_else(|| syntax(n, raw, pair.trim(), "expected `<x>-><y>`"))?;
            let (x, y) = (x.trim(), y.trim());
            match (lookup(qt, x), lookup(qt, y)) {
                (Some(Item::Vertex(a)), Some(Item::Vertex(b))) => vp[a] = b,
                (Some(Item::Arrow(a)), Some(Item::Arrow(b))) => ap[a] = b,
                _ => return Err(syntax(n, raw, x, format!("`{x}->{y}` is not a vertex or arrow pair"))),
            }
        }
        gens.push((vp, ap));
    }
    let talg = total.algebra().map_err(|e| FormatError::Invalid(format!("total: {e}")))?;
    let balg = base.algebra().map_err(|e| FormatError::Invalid(format!("base: {e}")))?;
    let vmap = vmap.into_iter().map(Option::unwrap).collect();
    let amap = amap.into_iter().map(Option::unwrap).collect();
    let functor = CoveringFunctor::new(&talg, &balg, vmap, amap).map_err(|e| FormatError::Invalid(e.to_string()))?;
    let action = GroupAction::generated(&total, &gens).map_err(|e| FormatError::Invalid(e.to_string()))?;
    Ok(CoveringFile { total, base, functor, action })
}

pub fn print_covering(total: &Presentation, base: &Presentation, functor: &CoveringFunctor, generators: &[(Vec<usize>, Vec<usize>)]) -> String {
    let (qt, qb) = (total.quiver(), base.quiver());
    let mut out = String::from("begin total\n");
    out.push_str(&print_presentation(total));
    out.push_str("end\nbegin base\n");
    out.push_str(&print_presentation(base));
    out.push_str("end\n");
    for (v, &w) in functor.vertex_map.iter().enumerate() {
        writeln!(out, "map {} -> {}", qt.vertex_name(v), qb.vertex_name(w)).unwrap();
    }
    for (a, &b) in functor.arrow_map.iter().enumerate() {
        writeln!(out, "map {} -> {}", qt.arrow(a).name, qb.arrow(b).name).unwrap();
    }
    for (vp, ap) in generators {
        let moved: Vec<String> = vp
            .iter()
            .enumerate()
            .filter(|(v, w)| v != *w)
            .map(|(v, &w)| format!("{}->{}", qt.vertex_name(v), qt.vertex_name(w)))
            .chain(ap.iter().enumerate().filter(|(a, b)| a != *b).map(|(a, &b)| format!("{}->{}", qt.arrow(a).name, qt.arrow(b).name)))
            .collect();
        writeln!(out, "generator {}", moved.join(", ")).unwrap();
    }
    out
}

/// A graph file: `vertex <name>` and `edge <name>: <u> - <v>` lines.
pub fn parse_graph(text: &str) -> Result<Multigraph, FormatError> {
    let mut g = Multigraph::default();
    for (n, raw, body) in lines(text) {
        let (keyword, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let rest = rest.trim();
        match keyword {
            "vertex" => {
                if rest.is_empty() || g.vertex_index(rest).is_some() {
                    return Err(syntax(n, raw, "vertex", "expected a new vertex name"));
                }
                g.add_vertex(rest);
            }
            "edge" => {
                let err = || syntax(n, raw, "edge", "expected `edge <name>: <u> - <v>`");
                let (name, ends) = rest.split_once(':').ok_or_else(err)?;
                let (u, v) = ends.split_once(" - ").ok_or_else(err)?;
                let (u, v) = (u.trim(), v.trim());
                let ui = g.vertex_index(u).ok_or_else(|| syntax(n, raw, u, format!("unknown vertex `{u}`")))?;
                let vi = g.vertex_index(v).ok_or_else(|| syntax(n, raw, v, format!("unknown vertex `{v}`")))?;
                g.add_edge(name.trim(), ui, vi);
            }
            _ => return Err(syntax(n, raw, keyword, format!("unknown keyword `{keyword}`"))),
        }
    }
    Ok(g)
}

pub fn print_graph(g: &Multigraph) -> String {
    let mut out = String::new();
    for v in &g.vertices {
        writeln!(out, "vertex {v}").unwrap();
    }
    for (name, u, v) in &g.edges {
        writeln!(out, "edge {name}: {} - {}", g.vertices[*u], g.vertices[*v]).unwrap();
    }
    out
}

/// Quotient specification `n1xn2:g1;g2;...` where each `gi` lists the
/// residues of a free generator, comma separated; `trivial` for `H = 1`.
pub fn parse_quotient(spec: &str, generators: usize) -> Result<FiniteQuotient, FormatError> {
    let spec = spec.trim();
    if spec == "trivial" {
        return Ok(FiniteQuotient::trivial(generators));
    }
    let bad = |m: &str| FormatError::Invalid(format!("quotient `{spec}`: {m}"));
    let (moduli, images) = spec.split_once(':').ok_or_else(|| bad("expected `<moduli>:<images>`"))?;
    let moduli: Vec<u64> = moduli
        .split('x')
        .map(|m| m.trim().parse().ok().filter(|&m: &u64| m > 0).ok_or_else(|| bad("moduli must be positive integers")))
        .collect::<Result<_, _>>()?;
    let images: Vec<Vec<u64>> = images
        .split(';')
        .map(|g| g.split(',').map(|r| r.trim().parse().map_err(|_| bad("residues must be integers"))).collect())
        .collect::<Result<_, _>>()?;
    if images.iter().any(|g| g.len() != moduli.len()) {
        return Err(bad("each generator needs one residue per modulus"));
    }
    if images.len() != generators {
        return Err(bad(&format!("{} generator images given, the orbit graph has {generators} free generators", images.len())));
    }
    Ok(FiniteQuotient { moduli, images })
}

#[cfg(test)]
mod tests {
    use super::*;
    use quivercover_core::fixtures;

    #[test]
    fn presentation_round_trip() {
        for p in [fixtures::wild_chain(), fixtures::commutative_square(), fixtures::kronecker(), fixtures::truncated_loop(3)] {
            let text = print_presentation(&p);
            let back = parse_presentation(&text).unwrap();
            assert_eq!(back, p);
            assert_eq!(print_presentation(&back), text);
        }
    }

    #[test]
    fn relation_terms() {
        let text = "vertex 1\nvertex 2\nvertex 3\nvertex 4\narrow a: 1 -> 2\narrow b: 2 -> 4\narrow c: 1 -> 3\narrow d: 3 -> 4\nrelation a.b - c.d\n";
        assert_eq!(parse_presentation(text).unwrap(), fixtures::commutative_square());
        let text2 = text.replace("a.b - c.d", "1*a.b + -1*c.d");
        assert_eq!(parse_presentation(&text2).unwrap(), fixtures::commutative_square());
        assert_eq!(split_terms("1/2*a.b + -3/4*c.d"), ["1/2*a.b", "-3/4*c.d"]);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse_presentation("vertex 1\narrow a: 1 -> 7\n").unwrap_err();
        match err {
            FormatError::Syntax { line, column, .. } => assert_eq!((line, column), (2, 15)),
            other => panic!("{other}"),
        }
        assert!(parse_presentation("vertex 1\nbogus\n").is_err());
        assert!(parse_presentation("vertex 1\narrow x: 1 -> 1\nrelation x\n").is_err());
    }

    #[test]
    fn module_round_trip() {
        let alg = fixtures::kronecker().algebra().unwrap();
        let text = "module r over kronecker\ndim 1=1\ndim 2=1\nmap a = [[1]]\nmap b = [[2/3]]\n";
        let m = parse_module(text, &alg).unwrap();
        assert_eq!(print_module(&m.name, &m.over, &m.module), text);
        let p = Representation::projective(&alg, 1).unwrap();
        let again = parse_module(&print_module("p", "k", &p), &alg).unwrap();
        assert_eq!(again.module.dims(), p.dims());
        assert!(parse_module("module x over k\ndim 1=1\nmap a = [[1]]\n", &alg).is_err());
    }

    #[test]
    fn graph_and_quotient() {
        let g = parse_graph("vertex u\nvertex v\nedge e: u - v\nedge l: v - v\n").unwrap();
        assert_eq!((g.num_vertices(), g.num_edges(), g.num_loops()), (2, 2, 1));
        assert_eq!(parse_graph(&print_graph(&g)).unwrap(), g);
        let q = parse_quotient("2:1;0", 2).unwrap();
        assert_eq!((q.moduli, q.images), (vec![2], vec![vec![1], vec![0]]));
        assert!(parse_quotient("2:1", 2).is_err());
        assert!(parse_quotient("0:1", 1).is_err());
        assert_eq!(parse_quotient("trivial", 3).unwrap().order(), 1);
    }

    #[test]
    fn covering_round_trip() {
        let (f, _) = quivercover_core::galois::a3_tilde_covering();
        let gens = [(vec![2, 3, 0, 1], vec![2, 3, 0, 1])];
        let text = print_covering(&fixtures::a3_tilde(), &fixtures::kronecker(), &f, &gens);
        let c = parse_covering(&text).unwrap();
        assert_eq!(c.functor.vertex_map, f.vertex_map);
        assert_eq!(c.functor.arrow_map, f.arrow_map);
        assert_eq!(c.action.elements.len(), 2);
        assert_eq!(print_covering(&c.total, &c.base, &c.functor, &gens), text);
        assert!(parse_covering(&text.replace("map sb -> b\n", "")).is_err());
        assert!(parse_covering(&text.replacen("end\n", "", 1)).is_err());
    }
}
