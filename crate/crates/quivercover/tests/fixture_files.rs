//! The files under `fixtures/` are the canonical printouts of the built-in
//! fixtures. Set `QUIVERCOVER_BLESS=1` to rewrite them.

use std::path::PathBuf;

use quivercover::format::{parse_covering, parse_graph, parse_module, parse_presentation, print_covering, print_graph, print_module, print_presentation};
use quivercover_core::fixtures;
use quivercover_core::galois::a3_tilde_covering;
use quivercover_core::linalg::Matrix;
use quivercover_core::presentation::Presentation;
use quivercover_core::repr::Representation;
use quivercover_core::tq::Multigraph;

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn presentations() -> Vec<(&'static str, Presentation)> {
    vec![
        ("field", fixtures::field()),
        ("a2", fixtures::linear_a(2)),
        ("a3", fixtures::linear_a(3)),
        ("a4", fixtures::linear_a(4)),
        ("a5", fixtures::linear_a(5)),
        ("kronecker", fixtures::kronecker()),
        ("wild_chain", fixtures::wild_chain()),
        ("a3_rad2", fixtures::a3_rad2()),
        ("a2_double", fixtures::a2_double()),
        ("kronecker_ext", fixtures::kronecker_ext()),
        ("laura_rad2", fixtures::laura_rad2()),
        ("d4", fixtures::d4()),
        ("commutative_square", fixtures::commutative_square()),
        ("a3_tilde", fixtures::a3_tilde()),
    ]
}

fn band() -> Representation {
    let (f, _) = a3_tilde_covering();
    let one = Matrix::identity(1);
    Representation::new(f.total.clone(), vec![1, 1, 1, 1], vec![one.clone(), one.clone(), one.clone(), one]).unwrap()
}

fn theta() -> Multigraph {
    let mut g = Multigraph::new(vec!["u".into(), "v".into()]);
    for e in ["e1", "e2", "e3"] {
        g.add_edge(e, 0, 1);
    }
    g
}

fn expected() -> Vec<(String, String)> {
    let mut files: Vec<(String, String)> = presentations().into_iter().map(|(n, p)| (format!("{n}.quiver"), print_presentation(&p))).collect();
    let (f, _) = a3_tilde_covering();
    let gens = [(vec![2, 3, 0, 1], vec![2, 3, 0, 1])];
    files.push(("a3_tilde_kronecker.cover".into(), print_covering(&fixtures::a3_tilde(), &fixtures::kronecker(), &f, &gens)));
    files.push(("a3_tilde_band.module".into(), print_module("band", "a3_tilde", &band())));
    files.push(("theta.graph".into(), print_graph(&theta())));
    files
}

#[test]
fn fixture_files_match_builtins() {
    let dir = dir();
    if std::env::var_os("QUIVERCOVER_BLESS").is_some() {
        std::fs::create_dir_all(&dir).unwrap();
        for (name, text) in expected() {
            std::fs::write(dir.join(name), text).unwrap();
        }
    }
    for (name, text) in expected() {
        let on_disk = std::fs::read_to_string(dir.join(&name)).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert_eq!(on_disk, text, "{name} is stale");
    }
}

#[test]
fn fixture_files_parse_back() {
    for (name, p) in presentations() {
        let text = std::fs::read_to_string(dir().join(format!("{name}.quiver"))).unwrap();
        assert_eq!(parse_presentation(&text).unwrap(), p, "{name}");
    }
    let cover = parse_covering(&std::fs::read_to_string(dir().join("a3_tilde_kronecker.cover")).unwrap()).unwrap();
    let m = parse_module(&std::fs::read_to_string(dir().join("a3_tilde_band.module")).unwrap(), &cover.functor.total).unwrap();
    assert_eq!(m.module.dims(), band().dims());
    let g = parse_graph(&std::fs::read_to_string(dir().join("theta.graph")).unwrap()).unwrap();
    assert_eq!(g.num_edges(), 3);
}
