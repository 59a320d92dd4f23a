//! Graphviz export.

use std::fmt::Write as _;

use quivercover_core::ar::Fragment;
use quivercover_core::tq::Multigraph;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn dims(d: &[usize]) -> String {
    d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Irreducible maps solid (labelled by multiplicity above one), τ dashed,
/// projectives boxed and injectives as diamonds.
pub fn fragment(frag: &Fragment) -> String {
    let mut out = String::from("digraph ar {\n  rankdir=LR;\n");
    for (i, v) in frag.vertices.iter().enumerate() {
        let shape = match (v.projective.is_some(), v.injective.is_some()) {
            (true, true) => "box, peripheries=2",
            (true, false) => "box",
            (false, true) => "diamond",
            (false, false) => "ellipse",
        };
        let label = format!("{} [{}]", v.name, dims(v.module.dims()));
        writeln!(out, "  n{i} [label={}, shape={shape}];", quote(&label)).unwrap();
    }
    for (&(x, y), &m) in &frag.arrows {
        if m > 1 {
            writeln!(out, "  n{x} -> n{y} [label=\"{m}\"];").unwrap();
        } else {
            writeln!(out, "  n{x} -> n{y};").unwrap();
        }
    }
    for (i, v) in frag.vertices.iter().enumerate() {
        if let Some(t) = v.tau {
            writeln!(out, "  n{i} -> n{t} [style=dashed, constraint=false];").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// Undirected multigraph; parallel edges and loops are drawn separately.
pub fn multigraph(g: &Multigraph) -> String {
    let mut out = String::from("graph g {\n");
    for (i, v) in g.vertices.iter().enumerate() {
        writeln!(out, "  v{i} [label={}];", quote(v)).unwrap();
    }
    for (name, u, v) in &g.edges {
        writeln!(out, "  v{u} -- v{v} [label={}];", quote(name)).unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use quivercover_core::ar::{knit_projectives_injectives, KnitOptions};
    use quivercover_core::fixtures;

    #[test]
    fn a2_fragment() {
        let alg = fixtures::linear_a(2).algebra().unwrap();
        let frag = knit_projectives_injectives(&alg, KnitOptions::default()).unwrap();
        let dot = fragment(&frag);
        assert_eq!(dot.matches("style=dashed").count(), 1);
        assert!(dot.contains("peripheries=2"));
        assert!(dot.contains("shape=diamond"));
    }

    #[test]
    fn loops_and_parallel_edges() {
        let mut g = Multigraph::new(vec!["a".into(), "b".into()]);
        g.add_edge("e", 0, 1);
        g.add_edge("f", 0, 1);
        g.add_edge("l", 1, 1);
        let dot = multigraph(&g);
        assert_eq!(dot.matches("v0 -- v1").count(), 2);
        assert!(dot.contains("v1 -- v1"));
    }
}
