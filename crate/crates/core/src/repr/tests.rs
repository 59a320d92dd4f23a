use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::fixtures;
use crate::linalg::q;

fn mat(rows: &[&[i64]]) -> Matrix {
    Matrix::from_i64(rows)
}

fn kronecker() -> Algebra {
    fixtures::kronecker().algebra().unwrap()
}

/// Kronecker module with `a = [1]`, `b = [λ]`.
fn regular(alg: &Algebra, lambda: i64) -> Representation {
    Representation::new(alg.clone(), vec![1, 1], vec![mat(&[&[1]]), mat(&[&[lambda]])]).unwrap()
}

fn all_simples_projectives_injectives(alg: &Algebra) -> Vec<Representation> {
    let mut out = Vec::new();
    for v in 0..alg.num_vertices() {
        out.push(Representation::simple(alg, v).unwrap());
        out.push(Representation::projective(alg, v).unwrap());
        out.push(Representation::injective(alg, v).unwrap());
    }
    out
}

#[test]
fn projectives_and_injectives() {
    let k = fixtures::field().algebra().unwrap();
    assert_eq!(Representation::projective(&k, 0).unwrap(), Representation::simple(&k, 0).unwrap());

    let kr = kronecker();
    assert_eq!(Representation::projective(&kr, 0).unwrap().dims(), [1, 0]);
    assert_eq!(Representation::projective(&kr, 1).unwrap().dims(), [2, 1]);
    assert_eq!(Representation::injective(&kr, 0).unwrap().dims(), [1, 2]);
    assert_eq!(Representation::injective(&kr, 1).unwrap().dims(), [0, 1]);
    assert!(is_isomorphic(&Representation::simple(&kr, 0).unwrap(), &Representation::projective(&kr, 0).unwrap()));

    let a = fixtures::wild_chain().algebra().unwrap();
    let p6 = Representation::projective(&a, 5).unwrap();
    assert_eq!(p6.dims(), [0, 0, 0, 0, 3, 1]);
    let (rad, _) = p6.radical();
    let dec = indecompose(&rad).unwrap();
    assert_eq!(dec.summands.len(), 1);
    assert_eq!(dec.summands[0].1, 3);
    assert!(is_isomorphic(&dec.summands[0].0, &Representation::simple(&a, 4).unwrap()));
    assert_eq!(Representation::injective(&a, 0).unwrap().dims(), [1, 1, 0, 0, 0, 0]);
}

#[test]
fn hom_examples() {
    let kr = kronecker();
    let p1 = Representation::projective(&kr, 0).unwrap();
    let p2 = Representation::projective(&kr, 1).unwrap();
    assert_eq!(hom_dim(&p1, &p2).unwrap(), 2);
    assert_eq!(hom_dim(&p2, &p1).unwrap(), 0);
    let s = Representation::simple(&kr, 1).unwrap();
    assert_eq!(hom_dim(&s, &s).unwrap(), 1);

    let a = fixtures::wild_chain().algebra().unwrap();
    let i1 = Representation::injective(&a, 0).unwrap();
    let p2 = Representation::projective(&a, 1).unwrap();
    assert_eq!(hom_dim(&i1, &p2).unwrap(), 1);
    assert!(is_isomorphic(&i1, &p2));
}

#[test]
fn hom_matches_commutation_oracle() {
    for pres in [fixtures::kronecker(), fixtures::wild_chain(), fixtures::kronecker_ext(), fixtures::d4(), fixtures::a2_double()] {
        let alg = pres.algebra().unwrap();
        let mods = all_simples_projectives_injectives(&alg);
        for m in &mods {
            for n in &mods {
                let fast = hom_space(m, n).unwrap();
                let slow = hom_space_direct(m, n).unwrap();
                assert_eq!(fast.len(), slow.len());
                for f in &fast {
                    m.check_morphism(n, f).unwrap();
                }
                let flat: Vec<Vec<Rational>> = fast.iter().map(|f| flatten(f)).collect();
                let rows = flat.len();
                if rows > 0 {
                    assert_eq!(Matrix::from_rows(flat).unwrap().rank(), rows);
                }
            }
        }
    }
}

#[test]
fn projective_hom_is_evaluation() {
    let alg = fixtures::laura_rad2().algebra().unwrap();
    let mods = all_simples_projectives_injectives(&alg);
    for v in 0..alg.num_vertices() {
        let p = Representation::projective(&alg, v).unwrap();
        for m in &mods {
            assert_eq!(hom_dim(&p, m).unwrap(), m.dim_at(v));
        }
    }
}

#[test]
fn regular_modules_are_distinguished() {
    let kr = kronecker();
    assert!(is_isomorphic(&regular(&kr, 0), &regular(&kr, 0)));
    assert!(!is_isomorphic(&regular(&kr, 0), &regular(&kr, 1)));
    let s = Representation::direct_sum_of(&[Representation::simple(&kr, 0).unwrap(), Representation::simple(&kr, 1).unwrap()]);
    assert!(!is_isomorphic(&s, &Representation::projective(&kr, 0).unwrap()));
    assert!(!is_isomorphic(&s, &regular(&kr, 3)));
}

#[test]
fn decomposition_examples() {
    let kr = kronecker();
    let s1 = Representation::simple(&kr, 0).unwrap();
    let d = indecompose(&s1).unwrap();
    assert_eq!(d.summands.len(), 1);
    assert_eq!(d.summands[0].1, 1);

    let two = s1.power(2);
    let d = indecompose(&two).unwrap();
    assert_eq!(d.summands.len(), 1);
    assert_eq!(d.summands[0].1, 2);
    assert!(certify_decomposition(&two, &d));

    let mix = Representation::direct_sum_of(&[regular(&kr, 0), regular(&kr, 1), regular(&kr, 1), Representation::projective(&kr, 1).unwrap()]);
    let d = indecompose(&mix).unwrap();
    assert_eq!(d.count(), 4);
    assert_eq!(d.summands.len(), 3);
    assert!(certify_decomposition(&mix, &d));
}

#[test]
fn decomposition_of_a_scrambled_sum() {
    // conjugate a direct sum by a dense change of basis
    let kr = kronecker();
    let sum = Representation::direct_sum_of(&[regular(&kr, 2), Representation::projective(&kr, 1).unwrap()]);
    let g1 = mat(&[&[1, 2, 1], &[0, 1, 3], &[1, 0, 1]]);
    let g2 = mat(&[&[2, 1], &[1, 1]]);
    let g = [g1, g2];
    let ginv: Vec<Matrix> = g.iter().map(|m| m.inverse().unwrap()).collect();
    let maps = kr
        .quiver()
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| g[a.source].mul(sum.map(i)).mul(&ginv[a.target]))
        .collect();
    let scrambled = Representation::new(kr.clone(), sum.dims().to_vec(), maps).unwrap();
    assert!(is_isomorphic(&scrambled, &sum));
    let d = indecompose(&scrambled).unwrap();
    assert_eq!(d.summands.len(), 2);
    assert!(certify_decomposition(&scrambled, &d));
}

#[test]
fn minimal_presentations() {
    let kr = kronecker();
    let p2 = Representation::projective(&kr, 1).unwrap();
    assert!(minimal_presentation(&p2).p1.is_zero());

    let s2 = Representation::simple(&kr, 1).unwrap();
    let pres = minimal_presentation(&s2);
    assert_eq!(pres.cover.vertices, [1]);
    assert_eq!(pres.p1_vertices, [0, 0]);
    let (omega, inc, _) = syzygy(&s2);
    assert!(is_isomorphic(&omega, &Representation::projective(&kr, 0).unwrap().power(2)));
    assert!(morphism_is_zero(&compose(&pres.cover.map, &pres.p1_to_p0)));
    let image = Representation::image(&pres.cover.module, &pres.p1_to_p0).0;
    assert_eq!(image.dims(), omega.dims());
    assert_eq!(inc.len(), 2);

    let a = fixtures::wild_chain().algebra().unwrap();
    let s5 = Representation::simple(&a, 4).unwrap();
    assert_eq!(minimal_presentation(&s5).cover.vertices, [4]);
}

#[test]
fn tau_examples() {
    let a2 = fixtures::linear_a(2).algebra().unwrap();
    assert!(tau(&Representation::projective(&a2, 0).unwrap()).is_none());
    let s2 = Representation::simple(&a2, 1).unwrap();
    let t = tau(&s2).unwrap();
    assert!(is_isomorphic(&t, &Representation::simple(&a2, 0).unwrap()));
    assert!(is_isomorphic(&t, &Representation::projective(&a2, 0).unwrap()));
    assert!(tau_inv(&Representation::injective(&a2, 0).unwrap()).is_none());
    assert!(is_isomorphic(&tau_inv(&t).unwrap(), &s2));
}

#[test]
fn kronecker_preprojectives_round_trip() {
    let kr = kronecker();
    let mut preproj = vec![Representation::projective(&kr, 0).unwrap(), Representation::projective(&kr, 1).unwrap()];
    while preproj.last().unwrap().total_dim() < 9 {
        let n = preproj.len();
        let next = tau_inv(&preproj[n - 2]).unwrap();
        preproj.push(next);
    }
    let dims: Vec<Vec<usize>> = preproj.iter().map(|m| m.dims().to_vec()).collect();
    assert_eq!(dims, [vec![1, 0], vec![2, 1], vec![3, 2], vec![4, 3], vec![5, 4]]);
    for m in &preproj[2..] {
        let t = tau(m).unwrap();
        assert!(!is_injective(&t));
        assert!(is_isomorphic(&tau_inv(&t).unwrap(), m));
        assert_eq!(pd(m, 4), Dimension::Finite(1));
    }
}

#[test]
fn projective_dimensions() {
    let a = fixtures::wild_chain().algebra().unwrap();
    assert_eq!(pd(&Representation::projective(&a, 3).unwrap(), 5), Dimension::Finite(0));
    assert_eq!(pd(&Representation::simple(&a, 4).unwrap(), 8), Dimension::Finite(4));
    assert_eq!(pd(&Representation::simple(&a, 4).unwrap(), 2), Dimension::AtLeast(3));
    assert_eq!(id(&Representation::injective(&a, 2).unwrap(), 5), Dimension::Finite(0));
    // S1 is a submodule of P2 with quotient S2, and so on up the line
    assert_eq!(id(&Representation::simple(&a, 0).unwrap(), 8), Dimension::Finite(5));
}

#[test]
fn ext_examples() {
    let kr = kronecker();
    let s1 = Representation::simple(&kr, 0).unwrap();
    let s2 = Representation::simple(&kr, 1).unwrap();
    assert_eq!(ext1_dim(&s2, &s1), 2);
    assert_eq!(ext1_dim(&s1, &s2), 0);
    assert_eq!(ext1_dim(&Representation::projective(&kr, 1).unwrap(), &s1), 0);
    let a = fixtures::wild_chain().algebra().unwrap();
    let s5 = Representation::simple(&a, 4).unwrap();
    assert_eq!(ext1_dim(&s5, &s5), 0);
    assert_eq!(ext1_dim(&Representation::simple(&a, 5).unwrap(), &s5), 3);
}

#[test]
fn duality() {
    let a = fixtures::laura_rad2().algebra().unwrap();
    for v in 0..a.num_vertices() {
        let s = Representation::simple(&a, v).unwrap();
        assert_eq!(s.dual(), Representation::simple(&a.opposite(), v).unwrap());
        let p = Representation::projective(&a, v).unwrap();
        assert_eq!(p.dual().dual(), p);
        assert!(is_isomorphic(&p.dual(), &Representation::injective(&a.opposite(), v).unwrap()));
    }
}

#[test]
fn module_validation() {
    let kr = kronecker();
    let bad_shape = Representation::new(kr.clone(), vec![1, 1], vec![mat(&[&[1, 0]]), mat(&[&[1]])]);
    assert!(matches!(bad_shape, Err(ReprError::Shape { .. })));
    let a = fixtures::a3_rad2().algebra().unwrap();
    let violates = Representation::new(a, vec![1, 1, 1], vec![mat(&[&[1]]), mat(&[&[1]])]);
    assert_eq!(violates, Err(ReprError::RelationViolated(0)));
}

#[test]
fn radical_top_socle() {
    let a = fixtures::wild_chain().algebra().unwrap();
    let p6 = Representation::projective(&a, 5).unwrap();
    assert_eq!(p6.top_dims(), [0, 0, 0, 0, 0, 1]);
    assert_eq!(p6.socle_dims(), [0, 0, 0, 0, 3, 0]);
    let (top, proj) = p6.top();
    assert_eq!(top, Representation::simple(&a, 5).unwrap());
    p6.check_morphism(&top, &proj).unwrap();
    let scaled = scale_morphism(&p6.identity(), &q(2));
    assert!(!morphism_is_zero(&scaled));
}
