use proptest::prelude::*;

use quivercover_core::ar::{knit_projectives_injectives, KnitOptions};
use quivercover_core::fixtures;
use quivercover_core::galois::{a3_tilde_covering, pull_up, push_down};
use quivercover_core::hochschild::{hh0_dim, hh1_dim};
use quivercover_core::linalg::{q, Matrix, Rational};
use quivercover_core::presentation::{Path, Presentation, Quiver, RelationElement};
use quivercover_core::repr::{id, pd, Representation};
use quivercover_core::tq::{universal_cover_ball, Multigraph};

fn matrix(rows: usize, cols: usize, entries: &[i64]) -> Matrix {
    if rows == 0 || cols == 0 {
        return Matrix::zeros(rows, cols);
    }
    let data: Vec<Vec<Rational>> = (0..rows).map(|r| (0..cols).map(|c| q(entries[r * cols + c])).collect()).collect();
    Matrix::from_rows(data).unwrap()
}

fn small_matrix() -> impl Strategy<Value = Matrix> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| {
        // bias towards zeros so that rank deficiency is common
        proptest::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..4], r * c).prop_map(move |e| matrix(r, c, &e))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn rank_nullity(m in small_matrix()) {
        let kernel = m.nullspace_basis();
        prop_assert_eq!(m.rank() + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == q(0)));
        }
    }

    #[test]
    fn solve_is_exact(m in small_matrix(), seed in proptest::collection::vec(-3i64..4, 6)) {
        let x: Vec<Rational> = (0..m.cols()).map(|i| q(seed[i])).collect();
        let b = m.mul_vec(&x);
        let y = m.solve(&b).unwrap().expect("consistent by construction");
        prop_assert_eq!(m.mul_vec(&y), b);
    }
}

fn connected_multigraph() -> impl Strategy<Value = Multigraph> {
    (1usize..6).prop_flat_map(|n| {
        let tree = proptest::collection::vec(any::<prop::sample::Index>(), n - 1);
        let extra = proptest::collection::vec((0..n, 0..n), 0..4);
        (Just(n), tree, extra).prop_map(|(n, tree, extra)| {
            let mut g = Multigraph::new((0..n).map(|i| format!("v{i}")).collect());
            for (i, parent) in tree.iter().enumerate() {
                g.add_edge(&format!("t{i}"), parent.index(i + 1), i + 1);
            }
            for (i, (u, v)) in extra.into_iter().enumerate() {
                g.add_edge(&format!("x{i}"), u, v);
            }
            g
        })
    })
}

/// Walks from `v` of length at most `radius` that never traverse an edge
/// straight back; a loop can be traversed in either direction.
fn reduced_walks(g: &Multigraph, v: usize, back: Option<(usize, bool)>, radius: usize) -> usize {
    if radius == 0 {
        return 1;
    }
    let mut count = 1;
    for (e, &(_, a, b)) in g.edges.iter().enumerate() {
        for (from, to, forward) in [(a, b, true), (b, a, false)] {
            if from != v || back == Some((e, !forward)) {
                continue;
            }
            count += reduced_walks(g, to, Some((e, forward)), radius - 1);
        }
    }
    count
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn universal_cover_balls_are_trees(g in connected_multigraph(), radius in 0usize..4) {
        let ball = universal_cover_ball(&g, 0, radius).unwrap();
        prop_assert!(ball.total.is_tree().unwrap());
        prop_assert_eq!(ball.total.num_vertices(), reduced_walks(&g, 0, None, radius));
        for (e, &(_, u, v)) in ball.total.edges.iter().enumerate() {
            let (_, a, b) = g.edges[ball.edge_map[e]];
            let ends = (ball.vertex_map[u], ball.vertex_map[v]);
            prop_assert!(ends == (a, b) || ends == (b, a));
        }
    }

    #[test]
    fn subdivision_keeps_rank(g in connected_multigraph(), e in any::<prop::sample::Index>()) {
        prop_assume!(g.num_edges() > 0);
        let s = g.subdivide(e.index(g.num_edges()));
        prop_assert_eq!(s.pi1_rank().unwrap(), g.pi1_rank().unwrap());
    }
}

fn random_acyclic_quiver() -> impl Strategy<Value = Quiver> {
    (2usize..5).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..6).prop_map(move |pairs| {
            let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
            let mut q = Quiver::new();
            for v in &names {
                q.add_vertex(v).unwrap();
            }
            for (i, (a, b)) in pairs.into_iter().filter(|(a, b)| a != b).enumerate() {
                let (s, t) = (a.min(b), a.max(b));
                q.add_arrow(&format!("x{i}"), s, t).unwrap();
            }
            q
        })
    })
}

/// Number of paths in an acyclic quiver, counted by dynamic programming.
fn path_count(q: &Quiver) -> usize {
    let n = q.num_vertices();
    let mut ending = vec![1usize; n];
    // vertices are topologically ordered by construction
    for v in 0..n {
        for a in q.arrows() {
            if a.target == v {
                ending[v] += ending[a.source];
            }
        }
    }
    ending.iter().sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn path_basis_matches_oracles(q in random_acyclic_quiver()) {
        let hereditary = Presentation::hereditary(q.clone()).algebra().unwrap();
        prop_assert_eq!(hereditary.dim(), path_count(&q));
        let rad2 = Presentation::radical_square_zero(q.clone()).algebra().unwrap();
        prop_assert_eq!(rad2.dim(), q.num_vertices() + q.num_arrows());
    }
}

/// Same presentation with vertices and arrows listed in permuted order and
/// renamed.
fn permuted(p: &Presentation, vperm: &[usize], aperm: &[usize]) -> Presentation {
    let old = p.quiver();
    let mut q = Quiver::new();
    let mut vpos = vec![0; vperm.len()];
    for (i, &v) in vperm.iter().enumerate() {
        vpos[v] = i;
        q.add_vertex(&format!("w{}", old.vertex_name(v))).unwrap();
    }
    let mut apos = vec![0; aperm.len()];
    for (i, &a) in aperm.iter().enumerate() {
        apos[a] = i;
        let arrow = &old.arrows()[a];
        q.add_arrow(&format!("r{}", arrow.name), vpos[arrow.source], vpos[arrow.target]).unwrap();
    }
    let relations = p
        .relations()
        .iter()
        .map(|r| {
            let terms = r
                .terms()
                .iter()
                .map(|(c, path)| {
                    let arrows = path.arrows.iter().map(|&a| apos[a]).collect();
                    (c.clone(), Path { source: vpos[path.source], target: vpos[path.target], arrows })
                })
                .collect();
            RelationElement::new(&q, terms).unwrap()
        })
        .collect();
    Presentation::new(q, relations)
}

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..n).collect::<Vec<_>>()).prop_shuffle()
}

fn hh_fixture() -> impl Strategy<Value = Presentation> {
    prop_oneof![
        Just(fixtures::kronecker()),
        Just(fixtures::commutative_square()),
        Just(fixtures::a3_rad2()),
        Just(fixtures::kronecker_ext()),
        Just(fixtures::a2_double()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn hochschild_invariant_under_renaming(
        (p, vperm, aperm) in hh_fixture().prop_flat_map(|p| {
            let (n, m) = (p.quiver().num_vertices(), p.quiver().num_arrows());
            (Just(p), permutation(n), permutation(m))
        })
    ) {
        let r = permuted(&p, &vperm, &aperm);
        prop_assert_eq!(hh1_dim(&r).unwrap(), hh1_dim(&p).unwrap());
        prop_assert_eq!(hh0_dim(&r).unwrap(), hh0_dim(&p).unwrap());
    }
}

/// Representations of the hereditary double cover of the Kronecker quiver
/// with total dimension at most 6.
fn a3_tilde_module() -> impl Strategy<Value = Representation> {
    proptest::collection::vec(0usize..3, 4)
        .prop_filter("total dimension at most 6", |d| d.iter().sum::<usize>() <= 6)
        .prop_flat_map(|dims| {
            let (f, _) = a3_tilde_covering();
            let shapes: Vec<(usize, usize)> =
                f.total.quiver().arrows().iter().map(|a| (dims[a.source], dims[a.target])).collect();
            let entries: Vec<_> = shapes.iter().map(|&(r, c)| proptest::collection::vec(-2i64..3, r * c)).collect();
            (Just(dims), Just(shapes), entries)
        })
        .prop_map(|(dims, shapes, entries)| {
            let (f, _) = a3_tilde_covering();
            let maps = shapes.iter().zip(&entries).map(|(&(r, c), e)| matrix(r, c, e)).collect();
            Representation::new(f.total.clone(), dims, maps).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn push_down_preserves_dimension_and_homological_dimensions(m in a3_tilde_module()) {
        let (f, _) = a3_tilde_covering();
        let down = push_down(&f, &m).unwrap();
        prop_assert_eq!(down.total_dim(), m.total_dim());
        for b in 0..2 {
            let fibre: usize = f.fibre(b).iter().map(|&x| m.dim_at(x)).sum();
            prop_assert_eq!(down.dim_at(b), fibre);
        }
        prop_assert_eq!(pd(&down, 4), pd(&m, 4));
        prop_assert_eq!(id(&down, 4), id(&m, 4));
        let up = pull_up(&f, &down).unwrap();
        prop_assert_eq!(pd(&up, 4), pd(&down, 4));
        prop_assert_eq!(id(&up, 4), id(&down, 4));
    }
}

#[test]
fn mesh_additivity_on_knitted_fixtures() {
    let opts = KnitOptions { steps: 40, max_dim: 8, seed: 0 };
    for p in [
        fixtures::linear_a(3),
        fixtures::linear_a(4),
        fixtures::d4(),
        fixtures::kronecker(),
        fixtures::a3_rad2(),
        fixtures::a2_double(),
        fixtures::kronecker_ext(),
        fixtures::wild_chain(),
        fixtures::a3_tilde(),
    ] {
        let alg = p.algebra().unwrap();
        let frag = knit_projectives_injectives(&alg, opts).unwrap();
        assert!(!frag.meshes.is_empty());
        for mesh in &frag.meshes {
            let mut total = vec![0usize; alg.num_vertices()];
            for &(x, d) in &mesh.middle {
                for (t, dx) in total.iter_mut().zip(frag.vertices[x].module.dims()) {
                    *t += d * dx;
                }
            }
            let ends: Vec<usize> = frag.vertices[mesh.start]
                .module
                .dims()
                .iter()
                .zip(frag.vertices[mesh.end].module.dims())
                .map(|(a, b)| a + b)
                .collect();
            assert_eq!(total, ends);
        }
        frag.verify_meshes().unwrap();
    }
}

#[test]
fn a3_tilde_indecomposables_up_to_dim_six() {
    let (f, _) = a3_tilde_covering();
    let frag = knit_projectives_injectives(&f.total, KnitOptions { steps: 64, max_dim: 6, seed: 0 }).unwrap();
    let mut modules: Vec<Representation> =
        frag.vertices.iter().map(|v| v.module.clone()).filter(|m| m.total_dim() <= 6).collect();
    let one = Matrix::identity(1);
    let band = Representation::new(f.base.clone(), vec![1, 1], vec![one.clone(), one]).unwrap();
    modules.push(pull_up(&f, &band).unwrap());
    assert!(modules.len() >= 12);
    for m in &modules {
        let down = push_down(&f, m).unwrap();
        assert_eq!(down.total_dim(), m.total_dim());
        assert_eq!(pd(&down, 4), pd(m, 4));
        assert_eq!(id(&down, 4), id(m, 4));
    }
}
