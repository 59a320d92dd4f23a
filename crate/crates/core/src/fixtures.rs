//! The standard small algebras used throughout the tests and examples.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::linalg::q;
use crate::presentation::{Presentation, Quiver, RelationElement};

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{i}")).collect()
}

fn build(vertices: &[String], arrows: &[(String, String, String)]) -> Quiver {
    let vs: Vec<&str> = vertices.iter().map(String::as_str).collect();
    let arr: Vec<(&str, &str, &str)> = arrows.iter().map(|(a, s, t)| (a.as_str(), s.as_str(), t.as_str())).collect();
    Quiver::from_names(&vs, &arr).expect("fixture quiver is well formed")
}

fn arrow(name: &str, s: &str, t: &str) -> (String, String, String) {
    (name.into(), s.into(), t.into())
}

/// The field: one vertex, no arrows.
pub fn field() -> Presentation {
    Presentation::hereditary(build(&names(1), &[]))
}

/// Linearly oriented `1 -> 2 -> ... -> n` with arrows `a1, a2, ...`.
pub fn linear_quiver(n: usize) -> Quiver {
    let arrows: Vec<_> = (1..n).map(|i| arrow(&format!("a{i}"), &format!("{i}"), &format!("{}", i + 1))).collect();
    build(&names(n), &arrows)
}

pub fn linear_a(n: usize) -> Presentation {
    Presentation::hereditary(linear_quiver(n))
}

/// Two arrows `a, b: 1 -> 2`.
pub fn kronecker() -> Presentation {
    Presentation::hereditary(build(&names(2), &[arrow("a", "1", "2"), arrow("b", "1", "2")]))
}

/// `1 -> 2 -> 3 -> 4 -> 5` followed by three parallel arrows `5 -> 6`,
/// radical square zero.
pub fn wild_chain() -> Presentation {
    let mut arrows: Vec<_> = (1..5).map(|i| arrow(&format!("a{i}"), &format!("{i}"), &format!("{}", i + 1))).collect();
    for j in 1..=3 {
        arrows.push(arrow(&format!("b{j}"), "5", "6"));
    }
    Presentation::radical_square_zero(build(&names(6), &arrows))
}

/// Radical square zero algebra with quiver `1 => 2`, `2 -> 3 -> 4`,
/// `2 -> 4`, `4 => 5`.
pub fn laura_rad2() -> Presentation {
    let arrows = [
        arrow("a1", "1", "2"),
        arrow("a2", "1", "2"),
        arrow("b", "2", "3"),
        arrow("c", "3", "4"),
        arrow("d", "2", "4"),
        arrow("e1", "4", "5"),
        arrow("e2", "4", "5"),
    ];
    Presentation::radical_square_zero(build(&names(5), &arrows))
}

/// Type `D4` with the three outer vertices mapping to the centre.
pub fn d4() -> Presentation {
    let arrows = [arrow("a", "1", "4"), arrow("b", "2", "4"), arrow("c", "3", "4")];
    Presentation::hereditary(build(&names(4), &arrows))
}

/// `1 -> 2 -> 3` with its composition as relation.
pub fn a3_rad2() -> Presentation {
    Presentation::radical_square_zero(linear_quiver(3))
}

/// `1 -> 2` followed by two parallel arrows `2 -> 3`, radical square zero.
pub fn a2_double() -> Presentation {
    let arrows = [arrow("a", "1", "2"), arrow("b1", "2", "3"), arrow("b2", "2", "3")];
    Presentation::radical_square_zero(build(&names(3), &arrows))
}

/// The Kronecker quiver followed by `c: 2 -> 3` with `a.c = b.c = 0`.
pub fn kronecker_ext() -> Presentation {
    let quiver = build(&names(3), &[arrow("a", "1", "2"), arrow("b", "1", "2"), arrow("c", "2", "3")]);
    let rel = |p: &str| RelationElement::new(&quiver, [(q(1), quiver.parse_path(p).expect("path"))].into()).expect("relation");
    let relations = [rel("a.c"), rel("b.c")].into();
    Presentation::new(quiver, relations)
}

/// The cyclic quiver of type `Ã3` covering the Kronecker quiver: vertices
/// `1, 2, s1, s2`, arrows `a: 1 -> 2`, `b: 1 -> s2`, `sa: s1 -> s2`,
/// `sb: s1 -> 2`.
pub fn a3_tilde() -> Presentation {
    let vertices: Vec<String> = ["1", "2", "s1", "s2"].iter().map(|s| String::from(*s)).collect();
    let arrows = [arrow("a", "1", "2"), arrow("b", "1", "s2"), arrow("sa", "s1", "s2"), arrow("sb", "s1", "2")];
    Presentation::hereditary(build(&vertices, &arrows))
}

/// Two disjoint copies of `1 -> 2`.
pub fn two_a2() -> Presentation {
    let vertices: Vec<String> = ["1", "2", "1'", "2'"].iter().map(|s| String::from(*s)).collect();
    Presentation::hereditary(build(&vertices, &[arrow("a", "1", "2"), arrow("a'", "1'", "2'")]))
}

/// Product of two copies of the field.
pub fn field_squared() -> Presentation {
    Presentation::hereditary(build(&names(2), &[]))
}

/// Commutative square `1 -> 2 -> 4`, `1 -> 3 -> 4` with `a.b = c.d`.
pub fn commutative_square() -> Presentation {
    let quiver = build(
        &names(4),
        &[arrow("a", "1", "2"), arrow("b", "2", "4"), arrow("c", "1", "3"), arrow("d", "3", "4")],
    );
    let path = |p: &str| quiver.parse_path(p).expect("path");
    let rel = RelationElement::new(&quiver, [(q(1), path("a.b")), (q(-1), path("c.d"))].into()).expect("relation");
    Presentation::new(quiver, [rel].into())
}

/// One loop `x` with `x^k = 0`.
pub fn truncated_loop(k: usize) -> Presentation {
    let quiver = build(&names(1), &[arrow("x", "1", "1")]);
    let rel = RelationElement::new(&quiver, [(q(1), quiver.path_from_arrows(alloc::vec![0; k]).expect("path"))].into())
        .expect("relation");
    Presentation::new(quiver, [rel].into())
}

/// The non semi-regular component of the radical square zero algebra
/// [`laura_rad2`], truncated to one period around the projectives and
/// injectives. The two ends of the τ-orbit of `S3` are identified, so that
/// orbit is periodic. Unnamed modules are `X1`..`X8`.
pub fn laura_component() -> crate::tq::TranslationQuiver {
    let mut tq = crate::tq::TranslationQuiver::default();
    let vertices = [
        ("P3", true, false),
        ("P4", true, false),
        ("P5", true, false),
        ("I1", false, true),
        ("I2", false, true),
        ("I3", false, true),
        ("S2", false, false),
        ("S3", false, false),
        ("S4", false, false),
        ("X1", false, false),
        ("X2", false, false),
        ("X3", false, false),
        ("X4", false, false),
        ("X5", false, false),
        ("X6", false, false),
        ("X7", false, false),
        ("X8", false, false),
    ];
    for (name, p, i) in vertices {
        tq.add_vertex(name, p, i);
    }
    let v = |tq: &crate::tq::TranslationQuiver, n: &str| tq.vertex_index(n).expect("fixture vertex");
    // middle row X3 X4 S2 X5 S4 X6 X7, top row X1 I1 P5 X2, X8 between the
    // two copies of S3
    let arrows: [(&str, &str, usize); 20] = [
        ("X3", "X1", 2),
        ("X1", "X4", 2),
        ("X4", "I1", 2),
        ("I1", "S2", 2),
        ("S2", "P3", 1),
        ("S2", "P4", 1),
        ("P3", "X5", 1),
        ("P4", "X5", 1),
        ("P4", "X8", 1),
        ("S3", "P4", 1),
        ("X5", "I3", 1),
        ("X5", "I2", 1),
        ("X8", "I2", 1),
        ("I3", "S4", 1),
        ("I2", "S4", 1),
        ("I2", "S3", 1),
        ("S4", "P5", 2),
        ("P5", "X6", 2),
        ("X6", "X2", 2),
        ("X2", "X7", 2),
    ];
    for (s, t, m) in arrows {
        let (s, t) = (v(&tq, s), v(&tq, t));
        for _ in 0..m {
            tq.add_arrow(s, t);
        }
    }
    let taus = [
        ("X4", "X3"),
        ("I1", "X1"),
        ("S2", "X4"),
        ("X5", "S2"),
        ("I3", "P3"),
        ("I2", "P4"),
        ("S4", "X5"),
        ("X6", "S4"),
        ("X2", "P5"),
        ("X7", "X6"),
        ("X8", "S3"),
        ("S3", "X8"),
    ];
    for (x, t) in taus {
        let (x, t) = (v(&tq, x), v(&tq, t));
        tq.tau[x] = Some(t);
    }
    tq.polarise_by_order();
    tq
}
