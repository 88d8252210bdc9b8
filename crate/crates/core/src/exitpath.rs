//! Exit simplices, conical charts and inner horns on unstably stratified classifying spaces.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::acyccat::{AcycCat, Chain, Mor};
use crate::simpset::{join, CellTable, FinSimpSet, Joined, Simplex, SimplexId, SimplicialMap};
use crate::stellar::{chain_stratification, star, Side, StellarCell, StellarError};
use crate::strat::StratSpace;

#[derive(Debug, Error)]
pub enum ExitError {
    #[error("{0} is not a simplex of the space")]
    NotASimplex(String),
    #[error("malformed horn: {0}")]
    MalformedHorn(String),
    #[error(transparent)]
    Stellar(#[from] StellarError),
}

/// An `n`-simplex mapped into a cell by a map of vertices `[n] → [dim cell]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExitSimplex {
    pub cell: SimplexId,
    pub vertices: Vec<usize>,
}

impl ExitSimplex {
    pub fn from_simplex(s: &Simplex) -> Self {
        Self { cell: s.base, vertices: s.degen.values().to_vec() }
    }
}

/// Labels weakly increase along the vertices and every face lies in the stratum of its last vertex.
pub fn is_exit_simplex(x: &StratSpace, s: &ExitSimplex) -> Result<bool, ExitError> {
    let space = x.space();
    if !space.contains(s.cell) || s.vertices.is_empty() || s.vertices.iter().any(|&v| v > s.cell.dim) {
        return Err(ExitError::NotASimplex(format!("{:?}", s)));
    }
    let top = Simplex::nondegenerate(s.cell);
    let vertex_label = |v: usize| x.label(space.vertex(&top, v));
    let labels: Vec<usize> = s.vertices.iter().map(|&v| vertex_label(v)).collect();
    if labels.windows(2).any(|w| !x.poset().leq(w[0], w[1])) {
        return Ok(false);
    }
    let n = s.vertices.len();
    for mask in 1u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let mut image: Vec<usize> = members.iter().map(|&i| s.vertices[i]).collect();
        image.sort();
        image.dedup();
        let face = space.apply(&top, &image).base;
        if x.label(face) != labels[*members.last().expect("nonempty")] {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The chart `n_x : D_x ⋆ ∂D_x^op → BC` together with the two stars it is built from.
#[derive(Clone, Debug)]
pub struct ConicalChart {
    pub object: usize,
    pub lower: StellarCell,
    pub upper: StellarCell,
    pub join: FinSimpSet,
    pub join_table: CellTable<Joined>,
    pub n: SimplicialMap,
    /// Cells `a` and `a ⋆ b` with `a ∈ D_x°`.
    pub open: Vec<SimplexId>,
}

/// Builds `n_x` on every cell of the join. `bc` is the chain table of `BC`.
pub fn build_chart(c: &AcycCat, x: usize, bc: &CellTable<Chain>) -> Result<ConicalChart, ExitError> {
    let lower = star(c, x, Side::Lower, bc)?;
    let upper = star(c, x, Side::Upper, bc)?;
    let (jx, table) = join(&lower.dome, &upper.boundary);
    let ambient_lower = |a: SimplexId| bc.key(lower.attach.image(a).base).clone();
    let upper_dome = |b: SimplexId| boundary_to_dome(&upper, b);
    let ambient_upper = |b: SimplexId| bc.key(upper.attach.image(upper_dome(b)).base).clone();
    let mut images = Vec::new();
    let mut open = Vec::new();
    for (d, &count) in jx.f_vector().iter().enumerate() {
        let mut row = Vec::with_capacity(count);
        for i in 0..count {
            let id = SimplexId::new(d, i);
            let key = table.key(id);
            let chain = match *key {
                Joined::Left(a) => ambient_lower(a),
                Joined::Right(b) => ambient_upper(b),
                Joined::Pair(a, b) => {
                    let u = lower.comma.objects[lower.dome_table.key(a).last()];
                    let g = upper.comma.objects[upper.dome_table.key(upper_dome(b)).first()];
                    let Some(Mor::Arrow(m)) = c.compose(g, u) else { unreachable!("g is not an identity") };
                    let (mut head, tail) = (ambient_lower(a), ambient_upper(b));
                    head.objects.extend(tail.objects);
                    head.arrows.push(m);
                    head.arrows.extend(tail.arrows);
                    head
                }
            };
            if let Joined::Left(a) | Joined::Pair(a, _) = *key {
                if lower.interior.contains(&a) {
                    open.push(id);
                }
            }
            row.push(Simplex::nondegenerate(bc.id(&chain).expect("chain of C")));
        }
        images.push(row);
    }
    Ok(ConicalChart { object: x, lower, upper, join: jx, join_table: table, n: SimplicialMap::new(images), open })
}

fn boundary_to_dome(s: &StellarCell, b: SimplexId) -> SimplexId {
    s.dome_table.id(&s.dome_chain_of(s.boundary_table.key(b))).expect("link chain in dome")
}

impl ConicalChart {
    /// `c_x(a, b')` for a cell `a` of `D_x` and a cell `b'` of `D_x^op`.
    pub fn c(&self, a: SimplexId, b: SimplexId) -> SimplexId {
        let apex = SimplexId::new(0, 0);
        let key = match *self.upper.cone_table.key(self.upper.h.image(b).base) {
            Joined::Left(_) => Joined::Left(a),
            Joined::Right(y) => Joined::Right(y),
            Joined::Pair(p, y) => {
                debug_assert_eq!(p, apex);
                Joined::Pair(a, y)
            }
        };
        self.n.image(self.join_table.id(&key).expect("join cell")).base
    }

    pub fn open_image(&self) -> Vec<SimplexId> {
        let mut v: Vec<SimplexId> = self.open.iter().map(|&id| self.n.image(id).base).collect();
        v.sort();
        v
    }

    pub fn closed_image(&self) -> Vec<SimplexId> {
        let set: BTreeSet<SimplexId> = self.join.ids().map(|id| self.n.image(id).base).collect();
        set.into_iter().collect()
    }

    /// Identity of `D_x` and `D_x^op` as vertices (the `0`-chain on `1_x`).
    fn unit(s: &StellarCell) -> SimplexId {
        s.dome_table.id(&Chain { objects: vec![0], arrows: Vec::new() }).expect("1_x")
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChartReport {
    pub object: String,
    pub open_image: Vec<String>,
    pub closed_image: Vec<String>,
    pub star: usize,
    /// Open cells whose image ends at `x`, and those passing through it.
    pub branches: (usize, usize),
    /// Cells of the join through the composite `g ∘ u` with `u ≠ 1_x`.
    pub composite_cells: usize,
    pub simplicial: bool,
    pub bijective_onto_star: bool,
    pub branches_partition: bool,
    pub restrictions: bool,
    pub open_identity: bool,
    pub witness: Option<String>,
}

impl ChartReport {
    pub fn pass(&self) -> bool {
        self.simplicial && self.bijective_onto_star && self.branches_partition && self.restrictions && self.open_identity
    }
}

/// Checks (a) bijectivity onto the vertex star, (b) the restrictions to `s_x` and `t_x`,
/// (c) the open-chart identity, and the branch partition.
pub fn verify_chart(c: &AcycCat, chart: &ConicalChart, bc: &FinSimpSet, table: &CellTable<Chain>) -> ChartReport {
    let x = chart.object;
    let name = |id: SimplexId| bc.label(id);
    let mut witness: Option<String> = None;
    let simplicial = chart.n.is_simplicial(&chart.join, bc);
    if !simplicial {
        witness.get_or_insert("n_x is not simplicial".into());
    }

    let star: Vec<SimplexId> = bc.ids().filter(|&id| table.key(id).objects.contains(&x)).collect();
    let open = chart.open_image();
    let mut distinct = open.clone();
    distinct.dedup();
    let bijective_onto_star = distinct.len() == open.len() && distinct == star;
    if !bijective_onto_star {
        witness.get_or_insert(format!("open image {} cells, star {}", open.len(), star.len()));
    }

    let (mut ends, mut through) = (BTreeSet::new(), BTreeSet::new());
    let mut composite_cells = 0;
    for id in chart.join.ids() {
        let key = chart.join_table.key(id);
        let img = chart.n.image(id).base;
        match *key {
            Joined::Left(_) if chart.open.contains(&id) => {
                ends.insert(img);
            }
            Joined::Pair(a, _) => {
                if chart.open.contains(&id) {
                    through.insert(img);
                }
                if !chart.lower.dome_table.key(a).objects.contains(&0) {
                    composite_cells += 1;
                }
            }
            _ => {}
        }
    }
    let branches_partition = ends.is_disjoint(&through)
        && ends.iter().all(|&id| table.key(id).last() == x)
        && through.iter().all(|&id| table.key(id).last() != x)
        && ends.len() + through.len() == star.len();

    let unit_lower = ConicalChart::unit(&chart.lower);
    let unit_upper = ConicalChart::unit(&chart.upper);
    let mut restrictions = true;
    for a in chart.lower.dome.ids() {
        if chart.c(a, unit_upper) != chart.lower.attach.image(a).base {
            restrictions = false;
            witness.get_or_insert(format!("c_x(a, 1_x) differs from s_x at {}", chart.lower.dome.label(a)));
        }
    }
    for b in chart.upper.dome.ids() {
        if chart.c(unit_lower, b) != chart.upper.attach.image(b).base {
            restrictions = false;
            witness.get_or_insert(format!("c_x(1_x, b) differs from t_x at {}", chart.upper.dome.label(b)));
        }
    }

    // D_x° ⋆ ∂D_x^op minus ∂D_x^op against D_x° × cone°(∂D_x^op)
    let mut open_identity = true;
    let mut paired = BTreeSet::new();
    for &a in &chart.lower.interior {
        for &b in &chart.upper.interior {
            let key = match *chart.upper.cone_table.key(chart.upper.h.image(b).base) {
                Joined::Left(_) => Joined::Left(a),
                Joined::Pair(_, y) => Joined::Pair(a, y),
                Joined::Right(_) => {
                    open_identity = false;
                    continue;
                }
            };
            let id = chart.join_table.id(&key).expect("join cell");
            if !paired.insert(id) || chart.c(a, b) != chart.n.image(id).base {
                open_identity = false;
            }
        }
    }
    let open_set: BTreeSet<SimplexId> = chart.open.iter().copied().collect();
    if paired != open_set {
        open_identity = false;
    }
    if !open_identity {
        witness.get_or_insert("open cells of the join and of the product disagree".into());
    }

    ChartReport {
        object: c.objects()[x].clone(),
        open_image: open.iter().map(|&id| name(id)).collect(),
        closed_image: chart.closed_image().into_iter().map(name).collect(),
        star: star.len(),
        branches: (ends.len(), through.len()),
        composite_cells,
        simplicial,
        bijective_onto_star,
        branches_partition,
        restrictions,
        open_identity,
        witness,
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoverReport {
    pub charts: Vec<ChartReport>,
    pub cells: usize,
    pub uncovered: Vec<String>,
}

impl CoverReport {
    /// (d): every chart verifies and the open images cover `BC`.
    pub fn pass(&self) -> bool {
        self.uncovered.is_empty() && self.charts.iter().all(ChartReport::pass)
    }
}

pub fn cover(c: &AcycCat) -> Result<CoverReport, ExitError> {
    let (strat, table) = chain_stratification(c, Side::Lower);
    let bc = strat.space();
    let mut covered = BTreeSet::new();
    let mut charts = Vec::new();
    for x in 0..c.objects().len() {
        let chart = build_chart(c, x, &table)?;
        covered.extend(chart.open_image());
        charts.push(verify_chart(c, &chart, bc, &table));
    }
    let uncovered = bc.ids().filter(|id| !covered.contains(id)).map(|id| bc.label(id)).collect();
    Ok(CoverReport { charts, cells: bc.total_cells(), uncovered })
}

/// An inner horn `Λⁿ_k`: the faces `d_i` for `i ≠ k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Horn {
    pub k: usize,
    pub faces: Vec<Option<Simplex>>,
}

impl Horn {
    pub fn dim(&self) -> usize {
        self.faces.len() - 1
    }
}

fn compatible(space: &FinSimpSet, faces: &[Option<Simplex>], i: usize, j: usize) -> bool {
    match (&faces[i], &faces[j]) {
        (Some(fi), Some(fj)) => space.face(fj, i) == space.face(fi, j - 1),
        _ => true,
    }
}

fn exit(x: &StratSpace, s: &Simplex) -> bool {
    is_exit_simplex(x, &ExitSimplex::from_simplex(s)).unwrap_or(false)
}

/// The least exit simplex (by cell id, then degeneracy) with the given faces.
pub fn horn_fill(x: &StratSpace, horn: &Horn) -> Result<Option<Simplex>, ExitError> {
    let n = horn.dim();
    let space = x.space();
    if !(2..=3).contains(&n) || horn.k == 0 || horn.k >= n {
        return Err(ExitError::MalformedHorn(format!("Λ^{n}_{} is not an inner horn of dimension 2 or 3", horn.k)));
    }
    for (i, f) in horn.faces.iter().enumerate() {
        match f {
            None if i == horn.k => {}
            Some(s) if i != horn.k => {
                if s.dim() != n - 1 || !space.contains(s.base) {
                    return Err(ExitError::MalformedHorn(format!("face {i} is not an {}-simplex", n - 1)));
                }
                if !exit(x, s) {
                    return Err(ExitError::MalformedHorn(format!("face {i} is not an exit simplex")));
                }
            }
            _ => return Err(ExitError::MalformedHorn(format!("face {i} present or missing wrongly"))),
        }
    }
    for j in 0..=n {
        for i in 0..j {
            if !compatible(space, &horn.faces, i, j) {
                return Err(ExitError::MalformedHorn(format!("faces {i} and {j} disagree")));
            }
        }
    }
    Ok(space.all_simplices(n).into_iter().find(|s| {
        exit(x, s) && horn.faces.iter().enumerate().all(|(i, f)| f.as_ref().map_or(true, |f| space.face(s, i) == *f))
    }))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HornReport {
    pub dim: usize,
    pub k: usize,
    pub horns: usize,
    pub filled: usize,
    pub unfilled: Option<Vec<String>>,
}

/// Every inner horn `Λⁿ_k` whose faces are exit simplices, and how many are filled.
pub fn inner_horns(x: &StratSpace, n: usize) -> Result<Vec<HornReport>, ExitError> {
    let space = x.space();
    let faces: Vec<Simplex> = space.all_simplices(n - 1).into_iter().filter(|s| exit(x, s)).collect();
    let show = |s: &Simplex| format!("{}{:?}", space.label(s.base), s.degen.values());
    let mut out = Vec::new();
    for k in 1..n {
        let mut report = HornReport { dim: n, k, horns: 0, filled: 0, unfilled: None };
        let slots: Vec<usize> = (0..=n).filter(|&i| i != k).collect();
        let mut current: Vec<Option<Simplex>> = vec![None; n + 1];
        let mut err = None;
        search(space, &faces, &slots, 0, &mut current, &mut |faces| {
            let horn = Horn { k, faces: faces.to_vec() };
            report.horns += 1;
            match horn_fill(x, &horn) {
                Ok(Some(_)) => report.filled += 1,
                Ok(None) => {
                    report.unfilled.get_or_insert_with(|| faces.iter().flatten().map(show).collect());
                }
                Err(e) => {
                    err.get_or_insert(e);
                }
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        out.push(report);
    }
    Ok(out)
}

fn search(
    space: &FinSimpSet,
    pool: &[Simplex],
    slots: &[usize],
    depth: usize,
    current: &mut Vec<Option<Simplex>>,
    visit: &mut dyn FnMut(&[Option<Simplex>]),
) {
    if depth == slots.len() {
        visit(current);
        return;
    }
    let j = slots[depth];
    for s in pool {
        current[j] = Some(s.clone());
        if slots[..depth].iter().all(|&i| compatible(space, current, i.min(j), i.max(j))) {
            search(space, pool, slots, depth + 1, current, visit);
        }
    }
    current[j] = None;
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::simpset::Degeneracy;

    fn fig1() -> (AcycCat, StratSpace, CellTable<Chain>) {
        let c = fixtures::figure1();
        let (s, t) = chain_stratification(&c, Side::Lower);
        (c, s, t)
    }

    fn chain_id(c: &AcycCat, t: &CellTable<Chain>, objs: &[&str], arrows: &[&str]) -> SimplexId {
        let ch = Chain {
            objects: objs.iter().map(|o| c.object_index(o).unwrap()).collect(),
            arrows: arrows.iter().map(|a| c.arrow_index(a).unwrap()).collect(),
        };
        t.id(&ch).unwrap()
    }

    #[test]
    fn exit_recognition() {
        let (c, s, t) = fig1();
        let tri = chain_id(&c, &t, &["x", "y", "z"], &["v", "u1"]);
        assert!(is_exit_simplex(&s, &ExitSimplex { cell: tri, vertices: vec![0, 1, 2] }).unwrap());
        let x = chain_id(&c, &t, &["x"], &[]);
        assert!(is_exit_simplex(&s, &ExitSimplex { cell: x, vertices: vec![0, 0, 0] }).unwrap());
        let v = chain_id(&c, &t, &["x", "y"], &["v"]);
        assert!(!is_exit_simplex(&s, &ExitSimplex { cell: v, vertices: vec![1, 0] }).unwrap());
        assert!(is_exit_simplex(&s, &ExitSimplex { cell: v, vertices: vec![0, 1] }).unwrap());
        assert!(is_exit_simplex(&s, &ExitSimplex { cell: SimplexId::new(5, 0), vertices: vec![0] }).is_err());
    }

    #[test]
    fn every_cell_is_exit() {
        for (name, c) in fixtures::categories() {
            let (s, _) = chain_stratification(&c, Side::Lower);
            for n in 0..=3 {
                for simplex in s.space().all_simplices(n) {
                    assert!(is_exit_simplex(&s, &ExitSimplex::from_simplex(&simplex)).unwrap(), "{name}");
                }
            }
        }
    }

    #[test]
    fn chart_at_y_in_figure_one() {
        let (c, s, t) = fig1();
        let chart = build_chart(&c, 1, &t).unwrap();
        let r = verify_chart(&c, &chart, s.space(), &t);
        assert!(r.pass(), "{r:?}");
        assert_eq!(r.open_image.len(), 6);
        assert_eq!(r.closed_image.len(), 10);
        assert_eq!(r.branches, (2, 4));
        assert!(r.composite_cells > 0);
    }

    #[test]
    fn chart_at_middle_of_ordinal_two() {
        let c = AcycCat::ordinal(2);
        let (s, t) = chain_stratification(&c, Side::Lower);
        let chart = build_chart(&c, 1, &t).unwrap();
        let r = verify_chart(&c, &chart, s.space(), &t);
        assert!(r.pass());
        let mut names = r.open_image.clone();
        names.sort();
        let mut expected: Vec<String> = ["1", "(0->1)", "(1->2)", "(1->2,0->1)"].iter().map(|s| s.to_string()).collect();
        expected.sort();
        assert_eq!(names, expected);
    }

    #[test]
    fn chart_at_minimum_reaches_everything() {
        for n in 0..=3 {
            let c = AcycCat::ordinal(n);
            let (s, t) = chain_stratification(&c, Side::Lower);
            let chart = build_chart(&c, 0, &t).unwrap();
            assert_eq!(chart.closed_image().len(), s.space().total_cells());
            assert_eq!(chart.open_image().len(), 1 << n);
        }
    }

    #[test]
    fn charts_cover() {
        for (name, c) in fixtures::categories() {
            let r = cover(&c).unwrap();
            assert!(r.pass(), "{name}: {r:?}");
        }
        assert_eq!(cover(&fixtures::figure1()).unwrap().cells, 10);
        assert_eq!(cover(&AcycCat::ordinal(0)).unwrap().charts[0].open_image.len(), 1);
    }

    #[test]
    fn horn_in_figure_one() {
        let (c, s, t) = fig1();
        let v = Simplex::nondegenerate(chain_id(&c, &t, &["x", "y"], &["v"]));
        let u1 = Simplex::nondegenerate(chain_id(&c, &t, &["y", "z"], &["u1"]));
        let filler = horn_fill(&s, &Horn { k: 1, faces: vec![Some(u1), None, Some(v.clone())] }).unwrap().unwrap();
        assert_eq!(filler, Simplex::nondegenerate(chain_id(&c, &t, &["x", "y", "z"], &["v", "u1"])));

        let x = chain_id(&c, &t, &["x"], &[]);
        let const_x = Simplex::new(Degeneracy::codegeneracy(0, 0), x);
        let filler = horn_fill(&s, &Horn { k: 1, faces: vec![Some(v.clone()), None, Some(const_x)] }).unwrap().unwrap();
        assert_eq!(filler, s.space().degeneracy(&v, 0));

        assert!(horn_fill(&s, &Horn { k: 0, faces: vec![None, Some(v.clone()), Some(v.clone())] }).is_err());
        assert!(horn_fill(&s, &Horn { k: 1, faces: vec![Some(v.clone()), None, Some(v)] }).is_err());
    }

    #[test]
    fn inner_horns_of_ordinal_three_fill() {
        let (s, _) = chain_stratification(&AcycCat::ordinal(3), Side::Lower);
        for n in 2..=3 {
            for r in inner_horns(&s, n).unwrap() {
                assert!(r.horns > 0);
                assert_eq!(r.filled, r.horns, "{r:?}");
            }
        }
    }
}
