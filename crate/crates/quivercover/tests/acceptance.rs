//! Acceptance checks, one line per criterion. Exits nonzero if any fails.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use quivercover::format::{parse_covering, parse_presentation};
use quivercover_core::ar::{knit_projectives_injectives, KnitOptions};
use quivercover_core::fixtures;
use quivercover_core::galois::{
    a3_tilde_covering, check_galois, check_tau_commutation, covering_property, is_first_kind, pull_up, push_down, TauCommutation,
};
use quivercover_core::hochschild::{hh0_dim, hh1_dim};
use quivercover_core::linalg::{q, Matrix, Rational};
use quivercover_core::presentation::Presentation;
use quivercover_core::repr::{id, is_isomorphic, is_projective, pd, Representation};
use quivercover_core::shod::{
    build_a_tilde, check_peel_equivalences, orbit_graph_recursive, orbit_graph_report, quivers_isomorphic, simply_connected_verdict,
    FiniteQuotient, Method, Provenance, ShodOptions, ORBIT_KNIT,
};
use quivercover_core::tq::{all_passed, universal_cover_ball, Multigraph};

type Outcome = Result<String, String>;

/// Number, title, time limit in seconds and check.
type Criterion = (u32, &'static str, Option<u64>, fn() -> Outcome);

fn fixture(name: &str) -> Presentation {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name);
    parse_presentation(&std::fs::read_to_string(&path).expect("fixture file")).expect("fixture parses")
}

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn opts() -> ShodOptions {
    ShodOptions::default()
}

fn wild_chain_orbit_graph() -> Outcome {
    let p = fixture("wild_chain.quiver");
    let g = orbit_graph_recursive(&p, &opts()).map_err(err)?.graph;
    let found = (g.num_vertices(), g.num_edges(), g.pi1_rank().map_err(err)?);
    ensure(found == (6, 7, 2), format!("V, E, rank = {found:?}, expected (6, 7, 2)"))?;
    Ok(format!("V={} E={} rank={}", found.0, found.1, found.2))
}

fn wild_chain_hochschild() -> Outcome {
    let p = fixture("wild_chain.quiver");
    let hh0 = hh0_dim(&p).map_err(err)?;
    let hh1 = hh1_dim(&p).map_err(err)?;
    ensure(hh0 == 1 && hh1 == 3, format!("hh0={hh0} hh1={hh1}, expected hh0=1 hh1=3"))?;
    Ok(format!("hh0={hh0} hh1={hh1}"))
}

fn consistency_corpus() -> Vec<(&'static str, Presentation)> {
    ["a2", "a3", "a4", "a5", "kronecker", "wild_chain", "a3_rad2", "kronecker_ext", "a2_double"]
        .into_iter()
        .map(|n| (n, fixture(&format!("{n}.quiver"))))
        .collect()
}

fn tree_iff_hh1_vanishes() -> Outcome {
    let corpus = consistency_corpus();
    let mut exceptions = Vec::new();
    for (name, p) in &corpus {
        let r = simply_connected_verdict(p, &opts()).map_err(|e| format!("{name}: {e}"))?;
        if !r.consistent {
            exceptions.push(format!("{name} (tree={}, hh1={})", r.is_tree, r.hh1));
        }
    }
    ensure(exceptions.is_empty(), format!("exceptions: {}", exceptions.join(", ")))?;
    Ok(format!("{} fixtures, 0 exceptions", corpus.len()))
}

fn laura_orbit_graph() -> Outcome {
    let tq = fixtures::laura_component();
    tq.validate().map_err(err)?;
    let g = tq.orbit_graph().map_err(err)?;
    let s3 = g.vertex_index("S3").ok_or("no orbit named S3")?;
    let loop_at_s3 = g.edges.iter().any(|&(_, u, v)| u == s3 && v == s3);
    let found = (g.num_vertices(), g.num_edges(), g.pi1_rank().map_err(err)?);
    ensure(found == (6, 8, 3) && loop_at_s3, format!("V, E, rank = {found:?}, loop at S3: {loop_at_s3}"))?;
    Ok(format!("V={} E={} rank={} loop at S3", found.0, found.1, found.2))
}

/// Knitted indecomposables of the double cover ordered by dimension.
fn a3_tilde_indecomposables(max_dim: usize) -> Vec<Representation> {
    let (f, _) = a3_tilde_covering();
    let frag = knit_projectives_injectives(&f.total, KnitOptions { steps: 64, max_dim, seed: 0 }).expect("knits");
    let mut ms: Vec<Representation> = frag.vertices.iter().map(|v| v.module.clone()).filter(|m| m.total_dim() <= max_dim).collect();
    ms.sort_by_key(|m| m.total_dim());
    ms
}

fn kronecker_covering() -> Outcome {
    let text = std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/a3_tilde_kronecker.cover")).map_err(err)?;
    let c = parse_covering(&text).map_err(err)?;
    let (f, act) = (&c.functor, &c.action);
    let verdicts = check_galois(f, act);
    ensure(all_passed(&verdicts), format!("galois check failed: {verdicts:?}"))?;
    let first: Vec<Representation> = a3_tilde_indecomposables(6).into_iter().take(6).collect();
    ensure(first.len() == 6, "fewer than 6 indecomposables knitted")?;
    for (i, m) in first.iter().enumerate() {
        for (j, n) in first.iter().enumerate() {
            let (lhs, rhs) = covering_property(f, act, m, n).map_err(err)?;
            ensure(lhs == rhs, format!("pair ({i},{j}): {lhs} != {rhs}"))?;
        }
    }
    let one = Matrix::identity(1);
    let regular = Representation::new(f.base.clone(), vec![1, 1], vec![one.clone(), one]).map_err(err)?;
    ensure(!is_first_kind(f, &regular, 0).map_err(err)?.is_first_kind(), "(Id, Id) reported first kind")?;
    let lifts: Vec<Representation> = a3_tilde_indecomposables(8).into_iter().filter(|m| !is_projective(m)).take(5).collect();
    ensure(lifts.len() == 5, "fewer than 5 non-projective lifts")?;
    for m in &lifts {
        let r = check_tau_commutation(f, m).map_err(err)?;
        ensure(r == TauCommutation::Agree, format!("tau commutation on {:?}: {r:?}", m.dims()))?;
    }
    Ok("galois, 36 pairs, (Id, Id) not first kind, 5 tau agreements".into())
}

fn knitting_fidelity() -> Outcome {
    let p = fixture("wild_chain.quiver");
    let b = p.restrict(&[0, 1, 2, 3, 4]);
    let alg = b.algebra().map_err(err)?;
    let frag = knit_projectives_injectives(&alg, KnitOptions { steps: 200, max_dim: 16, seed: 0 }).map_err(err)?;
    ensure(frag.is_finished(), "knitting did not close")?;
    let found: BTreeSet<Vec<usize>> = frag.vertices.iter().map(|v| v.module.dims().to_vec()).collect();
    let unit = |i: usize| (0..5).map(|v| usize::from(v == i)).collect::<Vec<_>>();
    let pair = |i: usize| (0..5).map(|v| usize::from(v == i || v == i + 1)).collect::<Vec<_>>();
    let expected: BTreeSet<Vec<usize>> = (0..5).map(unit).chain((0..4).map(pair)).collect();
    ensure(frag.vertices.len() == 9 && found == expected, format!("{} modules with dims {found:?}", frag.vertices.len()))?;
    frag.verify_meshes().map_err(err)?;
    Ok(format!("9 indecomposables, {} meshes verified", frag.meshes.len()))
}

fn knit_and_recursive_agree() -> Outcome {
    let mut lines = Vec::new();
    for name in ["wild_chain", "kronecker_ext", "a2_double"] {
        let p = fixture(&format!("{name}.quiver"));
        let r = orbit_graph_report(&p, Method::Both, &opts(), ORBIT_KNIT).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.provenance == Provenance::BothAgree, format!("{name}: {}", r.provenance.as_str()))?;
        lines.push(name);
    }
    Ok(format!("both-agree on {}", lines.join(", ")))
}

fn finite_quotient_construction() -> Outcome {
    let p = fixture("wild_chain.quiver");
    let orbit = orbit_graph_recursive(&p, &opts()).map_err(err)?;
    let gens = orbit.graph.generator_edges().len();
    let mut images = vec![vec![0]; gens];
    images[0] = vec![1];
    let c = build_a_tilde(&p, &orbit, &FiniteQuotient { moduli: vec![2], images }).map_err(err)?;
    ensure(c.passed(), format!("galois verdicts failed: {:?}", c.verdicts))?;
    let (base, total) = (&c.functor.base, &c.functor.total);
    let base_projectives: Vec<Representation> =
        (0..base.num_vertices()).map(|v| Representation::projective(base, v)).collect::<Result<_, _>>().map_err(err)?;
    let mut hits = vec![0usize; base.num_vertices()];
    for x in 0..total.num_vertices() {
        let down = push_down(&c.functor, &Representation::projective(total, x).map_err(err)?).map_err(err)?;
        let matches: Vec<usize> =
            base_projectives.iter().enumerate().filter(|(_, b)| b.dims() == down.dims() && is_isomorphic(&down, b)).map(|(i, _)| i).collect();
        ensure(matches.len() == 1, format!("push-down of P_{x} matches {} projectives", matches.len()))?;
        hits[matches[0]] += 1;
    }
    ensure(hits.iter().all(|&h| h == 2), format!("fibres over projectives: {hits:?}"))?;
    let k = fixture("kronecker.quiver");
    let korbit = orbit_graph_recursive(&k, &opts()).map_err(err)?;
    let kc = build_a_tilde(&k, &korbit, &FiniteQuotient { moduli: vec![2], images: vec![vec![1]] }).map_err(err)?;
    ensure(kc.passed(), "Kronecker construction fails its galois check")?;
    ensure(quivers_isomorphic(kc.presentation.quiver(), fixture("a3_tilde.quiver").quiver()), "Kronecker construction is not the cyclic double cover")?;
    Ok(format!("{} projectives pushed down, Kronecker gives the cyclic double cover", total.num_vertices()))
}

fn peel_equivalences() -> Outcome {
    let mut seen = Vec::new();
    for (name, must_separate) in [("wild_chain", false), ("kronecker_ext", true), ("a3_rad2", true)] {
        let r = check_peel_equivalences(&fixture(&format!("{name}.quiver")), &opts()).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.separating == must_separate, format!("{name}: separating = {}", r.separating))?;
        ensure(r.simply_connected_equivalence, format!("{name}: orbit graph equivalence fails"))?;
        ensure(r.hochschild_equivalence.consistent, format!("{name}: Hochschild equivalence fails"))?;
        seen.push(name);
    }
    Ok(format!("both equivalences on {}", seen.join(", ")))
}

fn deterministic_runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(Config { cases, ..Config::default() }, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn sample<S: Strategy>(s: S, n: u32) -> Vec<S::Value> {
    let mut runner = deterministic_runner(n);
    (0..n).map(|_| s.new_tree(&mut runner).expect("strategy").current()).collect()
}

fn matrix(rows: usize, cols: usize, entries: &[i64]) -> Matrix {
    if rows == 0 || cols == 0 {
        return Matrix::zeros(rows, cols);
    }
    let data: Vec<Vec<Rational>> = (0..rows).map(|r| (0..cols).map(|c| q(entries[r * cols + c])).collect()).collect();
    Matrix::from_rows(data).expect("rectangular")
}

fn property_suites() -> Outcome {
    let matrices = sample(
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| proptest::collection::vec(-2i64..3, r * c).prop_map(move |e| matrix(r, c, &e))),
        200,
    );
    for m in &matrices {
        let kernel = m.nullspace_basis();
        ensure(m.rank() + kernel.len() == m.cols(), format!("rank-nullity fails on {m:?}"))?;
        ensure(kernel.iter().all(|v| m.mul_vec(v).iter().all(|x| *x == q(0))), "kernel vector not annihilated")?;
    }

    let graphs = sample(
        (1usize..6, proptest::collection::vec((0usize..6, 0usize..6), 0..8)).prop_map(|(n, extra)| {
            let mut g = Multigraph::new((0..n).map(|i| format!("v{i}")).collect());
            for i in 1..n {
                g.add_edge(&format!("t{i}"), i - 1, i);
            }
            for (i, (u, v)) in extra.into_iter().enumerate() {
                g.add_edge(&format!("x{i}"), u % n, v % n);
            }
            g
        }),
        50,
    );
    for g in &graphs {
        let ball = universal_cover_ball(g, 0, 3).map_err(err)?;
        ensure(ball.total.is_tree().map_err(err)?, "universal cover ball has a cycle")?;
    }

    let mut meshes = 0;
    for p in [
        fixtures::linear_a(2),
        fixtures::linear_a(3),
        fixtures::linear_a(4),
        fixtures::linear_a(5),
        fixtures::d4(),
        fixtures::kronecker(),
        fixtures::a3_rad2(),
        fixtures::a2_double(),
        fixtures::kronecker_ext(),
        fixtures::wild_chain(),
        fixtures::a3_tilde(),
    ] {
        let alg = p.algebra().map_err(err)?;
        let frag = knit_projectives_injectives(&alg, KnitOptions { steps: 40, max_dim: 8, seed: 0 }).map_err(err)?;
        for mesh in &frag.meshes {
            let mut middle = vec![0usize; alg.num_vertices()];
            for &(x, d) in &mesh.middle {
                for (t, dx) in middle.iter_mut().zip(frag.vertices[x].module.dims()) {
                    *t += d * dx;
                }
            }
            let ends: Vec<usize> =
                frag.vertices[mesh.start].module.dims().iter().zip(frag.vertices[mesh.end].module.dims()).map(|(a, b)| a + b).collect();
            ensure(middle == ends, "mesh is not dimension additive")?;
            meshes += 1;
        }
        frag.verify_meshes().map_err(err)?;
    }

    let (f, _) = a3_tilde_covering();
    let shapes = |dims: &[usize]| -> Vec<(usize, usize)> { f.total.quiver().arrows().iter().map(|a| (dims[a.source], dims[a.target])).collect() };
    let mut modules = a3_tilde_indecomposables(6);
    let one = Matrix::identity(1);
    for lambda in [0i64, 1, -1, 2] {
        let band = Representation::new(f.base.clone(), vec![1, 1], vec![one.clone(), one.scale(&q(lambda))]).map_err(err)?;
        modules.push(pull_up(&f, &band).map_err(err)?);
    }
    let dims = sample(proptest::collection::vec(0usize..3, 4).prop_filter("dimension at most 6", |d| d.iter().sum::<usize>() <= 6), 120);
    let entries = sample(proptest::collection::vec(-2i64..3, 36), 120);
    for (d, e) in dims.iter().zip(&entries) {
        let mut offset = 0;
        let maps = shapes(d)
            .into_iter()
            .map(|(r, c)| {
                let m = matrix(r, c, &e[offset..offset + r * c]);
                offset += r * c;
                m
            })
            .collect();
        modules.push(Representation::new(f.total.clone(), d.clone(), maps).map_err(err)?);
    }
    for m in &modules {
        let down = push_down(&f, m).map_err(err)?;
        ensure(down.total_dim() == m.total_dim(), "push-down changes dimension")?;
        ensure(pd(&down, 4) == pd(m, 4) && id(&down, 4) == id(m, 4), format!("pd/id differ on {:?}", m.dims()))?;
    }
    Ok(format!("{} matrices, {} balls, {meshes} meshes, {} modules", matrices.len(), graphs.len(), modules.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "wild chain orbit graph", Some(10), wild_chain_orbit_graph),
        (2, "wild chain Hochschild dimensions", Some(10), wild_chain_hochschild),
        (3, "tree iff HH1 vanishes", Some(60), tree_iff_hh1_vanishes),
        (4, "non semi-regular component orbit graph", None, laura_orbit_graph),
        (5, "Kronecker double cover", Some(30), kronecker_covering),
        (6, "knitting fidelity", None, knitting_fidelity),
        (7, "knitted and recursive orbit graphs", None, knit_and_recursive_agree),
        (8, "finite quotient construction", Some(60), finite_quotient_construction),
        (9, "peel equivalences", None, peel_equivalences),
        (10, "property suites", None, property_suites),
    ];
    let mut failed = 0;
    for (n, name, limit, check) in criteria {
        let start = Instant::now();
        let mut outcome = check();
        let elapsed = start.elapsed();
        if let (Ok(detail), Some(secs)) = (&outcome, limit) {
            if elapsed > Duration::from_secs(secs) {
                outcome = Err(format!("{detail}, but took {elapsed:.1?} (limit {secs} s)"));
            }
        }
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        failed += usize::from(outcome.is_err());
        println!("criterion {n:>2} {status} [{elapsed:.2?}] {name}: {detail}");
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
