//! Small worked examples shared by tests, benches and the command line.

use std::collections::BTreeMap;

use crate::acyccat::{AcycCat, CategoryData, EnrichedCat};
use crate::morse::{FlowHoms, Matching, RegComplex};
use crate::poset::FinPoset;
use crate::simpset::{simplicial_complex, standard_simplex, FinSimpSet};
use crate::strat::StratSpace;

fn strings(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn triples(v: &[(&str, &str, &str)]) -> Vec<(String, String, String)> {
    v.iter().map(|(a, b, c)| (a.to_string(), b.to_string(), c.to_string())).collect()
}

/// Objects `x, y, z`; `v: x → y`, `u1, u2: y → z` and their two composites.
pub fn figure1_data() -> CategoryData {
    CategoryData {
        objects: strings(&["x", "y", "z"]),
        arrows: triples(&[("v", "x", "y"), ("u1", "y", "z"), ("u2", "y", "z"), ("u1v", "x", "z"), ("u2v", "x", "z")]),
        compose: triples(&[("u1", "v", "u1v"), ("u2", "v", "u2v")]),
    }
}

pub fn figure1() -> AcycCat {
    AcycCat::from_data(&figure1_data()).expect("figure 1 is acyclic")
}

/// `x → y → z` with two arrows `x → y`, composites kept apart.
pub fn free_square() -> AcycCat {
    AcycCat::from_data(&CategoryData {
        objects: strings(&["x", "y", "z"]),
        arrows: triples(&[("a1", "x", "y"), ("a2", "x", "y"), ("c", "y", "z"), ("ca1", "x", "z"), ("ca2", "x", "z")]),
        compose: triples(&[("c", "a1", "ca1"), ("c", "a2", "ca2")]),
    })
    .expect("free")
}

/// Same hom sizes as [`free_square`], but both composites agree.
pub fn collapsed_square() -> AcycCat {
    AcycCat::from_data(&CategoryData {
        objects: strings(&["x", "y", "z"]),
        arrows: triples(&[("a1", "x", "y"), ("a2", "x", "y"), ("c", "y", "z"), ("h", "x", "z"), ("k", "x", "z")]),
        compose: triples(&[("c", "a1", "h"), ("c", "a2", "h")]),
    })
    .expect("collapsed")
}

/// `∂Δⁿ` as a simplicial set.
pub fn sphere_boundary(n: usize) -> FinSimpSet {
    let d = standard_simplex(n);
    let cells: Vec<_> = d.ids().filter(|id| id.dim < n).collect();
    d.subcomplex(&cells).expect("face closed").0
}

/// Two objects, `C(x, y)` the three-vertex circle.
pub fn suspension_circle() -> EnrichedCat {
    let mut homs = BTreeMap::new();
    homs.insert((0, 1), sphere_boundary(2));
    EnrichedCat::new(strings(&["x", "y"]), homs, BTreeMap::new()).expect("no composable pairs")
}

/// The face poset of `∂[v1, v2, v3]`.
pub fn triangle_boundary_faces() -> FinPoset {
    let names = strings(&["[v1]", "[v2]", "[v3]", "[v1v2]", "[v1v3]", "[v2v3]"]);
    FinPoset::from_relations(names, &[(0, 3), (1, 3), (0, 4), (2, 4), (1, 5), (2, 5)]).expect("face poset")
}

/// The flow category of the height function on `∂Δ³`: critical cells `[v0]` and
/// `[v1v2v3]`, with hom poset the faces of `∂[v1, v2, v3]`.
pub fn hexagon_flow() -> EnrichedCat {
    let mut homs = BTreeMap::new();
    homs.insert((0, 1), triangle_boundary_faces());
    EnrichedCat::from_hom_posets(strings(&["[v0]", "[v1v2v3]"]), homs, &BTreeMap::new()).expect("two objects")
}

/// `Δ¹` with vertices `a`, `b` and edge `c`, all pairwise incomparable.
pub fn bad_antichain() -> StratSpace {
    let p = FinPoset::antichain(strings(&["a", "b", "c"]));
    StratSpace::new(standard_simplex(1), p, vec![vec![0, 1], vec![2]]).expect("labels in range")
}

/// `Δ¹` with `a, b < c`.
pub fn good_edge() -> StratSpace {
    let p = FinPoset::from_relations(strings(&["a", "b", "c"]), &[(0, 2), (1, 2)]).expect("poset");
    StratSpace::new(standard_simplex(1), p, vec![vec![0, 1], vec![2]]).expect("labels in range")
}

/// `Δ²` with one stratum the vertex `0` together with the open 2-cell.
pub fn vertex_with_open_triangle() -> StratSpace {
    let p = FinPoset::from_relations(strings(&["s", "t"]), &[(1, 0)]).expect("poset");
    StratSpace::new(standard_simplex(2), p, vec![vec![0, 1, 1], vec![1, 1, 1], vec![0]]).expect("labels in range")
}

/// A triangulated circle on two vertices and two edges.
pub fn two_gon() -> FinSimpSet {
    let mut b = crate::simpset::SimpSetBuilder::new();
    let v = b.add_vertex(Some("p".into()));
    let w = b.add_vertex(Some("q".into()));
    b.add_nondegenerate(&[w, v], Some("e".into())).expect("edge");
    b.add_nondegenerate(&[w, v], Some("f".into())).expect("edge");
    b.build().expect("circle")
}

/// The hexagon as an ordered simplicial complex.
pub fn hexagon() -> FinSimpSet {
    simplicial_complex(&[vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 4], vec![4, 5], vec![0, 5]]).0
}

/// Every named category fixture.
pub fn categories() -> Vec<(&'static str, AcycCat)> {
    let mut v = vec![("figure1", figure1()), ("free_square", free_square()), ("collapsed_square", collapsed_square())];
    for (name, n) in [("ordinal0", 0), ("ordinal1", 1), ("ordinal2", 2), ("ordinal3", 3), ("ordinal4", 4)] {
        v.push((name, AcycCat::ordinal(n)));
    }
    v
}

/// `∂Δ³` with cells named by their vertices, `[v0]`, `[v0v1]`, ….
pub fn tetrahedron_boundary_space() -> FinSimpSet {
    let x = sphere_boundary(3);
    let names: Vec<Vec<String>> = (0..3)
        .map(|d| x.ids_of_dim(d).map(|id| format!("[{}]", x.label(id).chars().map(|c| format!("v{c}")).collect::<String>())).collect())
        .collect();
    x.with_names(|id| Some(names[id.dim][id.index].clone()))
}

pub fn tetrahedron_boundary() -> RegComplex {
    RegComplex::from_simplicial(&tetrahedron_boundary_space()).expect("regular")
}

fn named_matching(c: &RegComplex, pairs: &[(&str, &str)]) -> Matching {
    let pairs: Vec<(String, String)> = pairs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    Matching::from_names(c, &pairs).expect("cells exist")
}

/// The matching of the height function on `∂Δ³` with minimum `[v0]`: `σ ↔ σ ∪ {v0}`.
pub fn height_matching(c: &RegComplex) -> Matching {
    named_matching(
        c,
        &[
            ("[v1]", "[v0v1]"),
            ("[v2]", "[v0v2]"),
            ("[v3]", "[v0v3]"),
            ("[v1v2]", "[v0v1v2]"),
            ("[v1v3]", "[v0v1v3]"),
            ("[v2v3]", "[v0v2v3]"),
        ],
    )
}

/// The height function inducing [`height_matching`], by cell name.
pub fn height_function() -> BTreeMap<String, String> {
    let x = tetrahedron_boundary_space();
    x.ids()
        .map(|id| {
            let name = x.label(id);
            let f = if name == "[v0]" {
                0
            } else if name.contains("v0") {
                id.dim
            } else {
                id.dim + 1
            };
            (name, f.to_string())
        })
        .collect()
}

/// A closed gradient path around `∂Δ²`.
pub fn three_cycle_matching(c: &RegComplex) -> Matching {
    named_matching(c, &[("0", "01"), ("1", "12"), ("2", "02")])
}

/// Collapses `Δ²` onto the vertex `0`.
pub fn triangle_collapse(c: &RegComplex) -> Matching {
    named_matching(c, &[("1", "01"), ("2", "02"), ("12", "012")])
}

/// Hom poset between the two critical cells of [`height_matching`].
pub fn hexagon_flow_homs() -> FlowHoms {
    let mut homs = BTreeMap::new();
    homs.insert(("[v0]".to_string(), "[v1v2v3]".to_string()), triangle_boundary_faces());
    FlowHoms { homs, compose: Vec::new() }
}
