//! Stellar stratifications of classifying spaces and the face categories they determine.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::acyccat::{iso_check, AcycCat, CategoryData, CategoryError, Chain, Comma, EnrichedCat, EnrichedCell, Mismatch, Mor};
use crate::poset::{face_poset, FinPoset};
use crate::simpset::{
    cone, find_isomorphism, join, standard_simplex, standard_simplex_with_table, CellTable, DiagonalTable, FinSimpSet, Joined,
    Simplex, SimplexId, SimplicialMap,
};
use crate::strat::{simplicial_stratification, StratSpace};

#[derive(Debug, Error)]
pub enum StellarError {
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("face {face} of {cell} is degenerate")]
    DegenerateFace { cell: String, face: String },
    #[error(transparent)]
    Category(#[from] CategoryError),
}

/// Which end of a chain labels it: the target (unstable, lower stars) or the source (stable, upper stars).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Lower,
    Upper,
}

impl Side {
    fn end(self, c: &Chain) -> usize {
        match self {
            Side::Lower => c.last(),
            Side::Upper => c.first(),
        }
    }
}

fn labelled<K: Clone + Eq + std::hash::Hash>(x: &FinSimpSet, table: &CellTable<K>, label: impl Fn(&K) -> usize) -> Vec<Vec<usize>> {
    x.f_vector()
        .iter()
        .enumerate()
        .map(|(d, &n)| (0..n).map(|i| label(table.key(SimplexId::new(d, i)))).collect())
        .collect()
}

fn side_poset(order: &FinPoset, side: Side) -> FinPoset {
    match side {
        Side::Lower => order.clone(),
        Side::Upper => order.opposite(),
    }
}

/// `BC` with every cell labelled by an end of its chain, over `P(C)` (over `P(C)^op` for sources).
pub fn chain_stratification(c: &AcycCat, side: Side) -> (StratSpace, CellTable<Chain>) {
    let (x, table) = c.classifying_space();
    let labels = labelled(&x, &table, |ch| side.end(ch));
    (StratSpace::new(x, side_poset(c.order(), side), labels).expect("every chain labelled"), table)
}

pub fn unstable_stratification(c: &AcycCat) -> StratSpace {
    chain_stratification(c, Side::Lower).0
}

pub fn stable_stratification(c: &AcycCat) -> StratSpace {
    chain_stratification(c, Side::Upper).0
}

/// The same labelling on the diagonal of an enriched nerve.
pub fn enriched_stratification(e: &EnrichedCat, side: Side) -> Result<(StratSpace, DiagonalTable<EnrichedCell>), CategoryError> {
    let (x, table) = e.classifying_space()?;
    let labels = labelled(&x, &table, |cell| match side {
        Side::Lower => cell.last(),
        Side::Upper => cell.first(),
    });
    Ok((StratSpace::new(x, side_poset(e.order(), side), labels).expect("every cell labelled"), table))
}

/// The lower star `D_x = B(C↓x)` (or the upper star `B(x↓C)`), its link and its cone structure.
#[derive(Clone, Debug)]
pub struct StellarCell {
    pub object: usize,
    pub side: Side,
    pub comma: Comma,
    pub dome: FinSimpSet,
    pub dome_table: CellTable<Chain>,
    /// The full subcategory on the objects other than `1_x`.
    pub link: AcycCat,
    link_arrows: Vec<usize>,
    pub boundary: FinSimpSet,
    pub boundary_table: CellTable<Chain>,
    /// Cells of the dome that contain `1_x`.
    pub interior: Vec<SimplexId>,
    pub cone: FinSimpSet,
    pub cone_table: CellTable<Joined>,
    /// `h_x`: dome to cone.
    pub h: SimplicialMap,
    /// `s_x` (or `t_x`): dome to `BC`.
    pub attach: SimplicialMap,
    /// Number of link `k`-chains, by `k`.
    pub link_levels: Vec<usize>,
    /// Link `k`-chains correspond bijectively to `(k+1)`-chains of `C` ending (starting) at `x`.
    pub link_levels_match: bool,
}

pub fn lower_star(c: &AcycCat, x: usize) -> Result<StellarCell, StellarError> {
    star(c, x, Side::Lower, &c.classifying_space().1)
}

pub fn upper_star(c: &AcycCat, x: usize) -> Result<StellarCell, StellarError> {
    star(c, x, Side::Upper, &c.classifying_space().1)
}

pub fn star(c: &AcycCat, x: usize, side: Side, bc: &CellTable<Chain>) -> Result<StellarCell, StellarError> {
    if x >= c.objects().len() {
        return Err(StellarError::UnknownObject(x.to_string()));
    }
    let comma = match side {
        Side::Lower => c.comma_below(x),
        Side::Upper => c.comma_above(x),
    };
    let (dome, dome_table) = comma.cat.classifying_space();
    let others: Vec<usize> = (1..comma.objects.len()).collect();
    let (link, link_arrows) = comma.cat.full_subcategory(&others);
    let (boundary, boundary_table) = link.classifying_space();
    let (cone, cone_table) = match side {
        Side::Lower => join(&boundary, &standard_simplex(0).with_names(|_| Some("*".into()))),
        Side::Upper => cone(&boundary),
    };
    let to_link: HashMap<usize, usize> = link_arrows.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let down = |ch: &Chain| Chain {
        objects: ch.objects.iter().map(|o| o - 1).collect(),
        arrows: ch.arrows.iter().map(|a| to_link[a]).collect(),
    };
    let bd = |ch: &Chain| boundary_table.id(&down(ch)).expect("link chain");
    let apex = SimplexId::new(0, 0);
    let free_end = |m: Mor| match side {
        Side::Lower => c.source(m),
        Side::Upper => c.target(m),
    };
    let ambient = |ch: &Chain| Chain {
        objects: ch.objects.iter().map(|&o| free_end(comma.objects[o])).collect(),
        arrows: ch.arrows.iter().map(|&a| comma.arrows[a]).collect(),
    };

    let mut interior = Vec::new();
    let mut h_images = Vec::new();
    let mut s_images = Vec::new();
    for (d, &n) in dome.f_vector().iter().enumerate() {
        let mut h_row = Vec::with_capacity(n);
        let mut s_row = Vec::with_capacity(n);
        for i in 0..n {
            let id = SimplexId::new(d, i);
            let ch = dome_table.key(id);
            let key = match side {
                Side::Lower if ch.last() != 0 => Joined::Left(bd(ch)),
                Side::Lower if d == 0 => Joined::Right(apex),
                Side::Lower => {
                    let prefix = Chain { objects: ch.objects[..d].to_vec(), arrows: ch.arrows[..d - 1].to_vec() };
                    Joined::Pair(bd(&prefix), apex)
                }
                Side::Upper if ch.first() != 0 => Joined::Right(bd(ch)),
                Side::Upper if d == 0 => Joined::Left(apex),
                Side::Upper => {
                    let suffix = Chain { objects: ch.objects[1..].to_vec(), arrows: ch.arrows[1..].to_vec() };
                    Joined::Pair(apex, bd(&suffix))
                }
            };
            if ch.objects.contains(&0) {
                interior.push(id);
            }
            h_row.push(Simplex::nondegenerate(cone_table.id(&key).expect("cone cell")));
            s_row.push(Simplex::nondegenerate(bc.id(&ambient(ch)).expect("chain of C")));
        }
        h_images.push(h_row);
        s_images.push(s_row);
    }

    // link chain (f_0..f_k; h) against the (k+1)-chain obtained by appending f_k (prepending f_0)
    let link_chains = link.chains();
    let link_levels: Vec<usize> = link_chains.iter().map(Vec::len).collect();
    let mut link_levels_match = true;
    let c_chains = c.chains();
    for (k, level) in link_chains.iter().enumerate() {
        let mut seen = BTreeSet::new();
        for ch in level {
            let lifted = Chain {
                objects: ch.objects.iter().map(|o| o + 1).collect(),
                arrows: ch.arrows.iter().map(|&a| link_arrows[a]).collect(),
            };
            let mut long = ambient(&lifted);
            match side {
                Side::Lower => {
                    let Mor::Arrow(a) = comma.objects[lifted.last()] else { unreachable!("identity excluded") };
                    long.objects.push(x);
                    long.arrows.push(a);
                }
                Side::Upper => {
                    let Mor::Arrow(a) = comma.objects[lifted.first()] else { unreachable!("identity excluded") };
                    long.objects.insert(0, x);
                    long.arrows.insert(0, a);
                }
            }
            seen.insert(long);
        }
        let expected = c_chains.get(k + 1).map_or(0, |l| l.iter().filter(|ch| side.end(ch) == x).count());
        if seen.len() != level.len() || seen.len() != expected {
            link_levels_match = false;
        }
    }
    let deeper = c_chains.get(link_chains.len() + 1).map_or(0, |l| l.iter().filter(|ch| side.end(ch) == x).count());
    if deeper != 0 {
        link_levels_match = false;
    }

    Ok(StellarCell {
        object: x,
        side,
        comma,
        dome,
        dome_table,
        link,
        link_arrows,
        boundary,
        boundary_table,
        interior,
        cone,
        cone_table,
        h: SimplicialMap::new(h_images),
        attach: SimplicialMap::new(s_images),
        link_levels,
        link_levels_match,
    })
}

impl StellarCell {
    /// `h_x` is a simplicial isomorphism onto the cone.
    pub fn h_is_isomorphism(&self) -> bool {
        self.h.is_isomorphism(&self.dome, &self.cone)
    }

    /// The link chain of a dome cell lying in the boundary.
    pub fn link_chain_of(&self, ch: &Chain) -> Option<Chain> {
        if ch.objects.contains(&0) {
            return None;
        }
        Some(Chain {
            objects: ch.objects.iter().map(|o| o - 1).collect(),
            arrows: ch.arrows.iter().map(|a| self.link_arrows.iter().position(|b| b == a).expect("full subcategory")).collect(),
        })
    }

    /// A link chain as a dome chain.
    pub fn dome_chain_of(&self, ch: &Chain) -> Chain {
        Chain { objects: ch.objects.iter().map(|o| o + 1).collect(), arrows: ch.arrows.iter().map(|&a| self.link_arrows[a]).collect() }
    }

    pub fn summary(&self, c: &AcycCat) -> StellarSummary {
        StellarSummary {
            object: c.objects()[self.object].clone(),
            side: self.side,
            dome: self.dome.f_vector(),
            boundary: self.boundary.f_vector(),
            interior: self.interior.len(),
            dome_euler: self.dome.euler_characteristic(),
            h_isomorphism: self.h_is_isomorphism(),
            link_levels: self.link_levels.clone(),
            link_levels_match: self.link_levels_match,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StellarSummary {
    pub object: String,
    pub side: Side,
    pub dome: Vec<usize>,
    pub boundary: Vec<usize>,
    pub interior: usize,
    pub dome_euler: i64,
    pub h_isomorphism: bool,
    pub link_levels: Vec<usize>,
    pub link_levels_match: bool,
}

/// Cell-level comparison of a stratum with the image of a star.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StarReport {
    pub object: String,
    pub interior_cells: usize,
    pub stratum_cells: usize,
    pub closure_cells: usize,
    pub injective: bool,
    pub interior_matches: bool,
    pub closure_matches: bool,
    pub witness: Option<String>,
}

impl StarReport {
    pub fn pass(&self) -> bool {
        self.injective && self.interior_matches && self.closure_matches
    }
}

/// `s_x(D_x°) = e_x` and `s_x(D_x) = cl(e_x)`, or the dual statement for upper stars.
pub fn verify_stratum_equals_star(c: &AcycCat, x: usize, side: Side) -> Result<StarReport, StellarError> {
    let (strat, bc) = chain_stratification(c, side);
    let st = star(c, x, side, &bc)?;
    let space = strat.space();
    let image = |id: SimplexId| st.attach.image(id).base;
    let inner: Vec<SimplexId> = st.interior.iter().map(|&id| image(id)).collect();
    let mut inner_sorted = inner.clone();
    inner_sorted.sort();
    inner_sorted.dedup();
    let injective = inner_sorted.len() == inner.len();
    let stratum = strat.stratum(x);
    let mut whole: Vec<SimplexId> = st.dome.ids().map(image).collect();
    whole.sort();
    whole.dedup();
    let closure = strat.closure(x);
    let name = |id: SimplexId| space.label(id);
    let diff = |a: &[SimplexId], b: &[SimplexId]| a.iter().chain(b).find(|id| a.contains(id) != b.contains(id)).map(|&id| name(id));
    let witness = if injective { diff(&inner_sorted, &stratum).or_else(|| diff(&whole, &closure)) } else { Some("s_x not injective on interior".into()) };
    Ok(StarReport {
        object: c.objects()[x].clone(),
        interior_cells: st.interior.len(),
        stratum_cells: stratum.len(),
        closure_cells: closure.len(),
        injective,
        interior_matches: inner_sorted == stratum,
        closure_matches: whole == closure,
        witness,
    })
}

/// Parameter sets `P_{μ,λ}` acting on domes, with their composition. Indices are positions in `strata`.
#[derive(Clone, Debug)]
pub struct CylStructure {
    /// Stratum labels in the poset of the stratified space.
    pub strata: Vec<usize>,
    pub domes: Vec<FinSimpSet>,
    pub interiors: Vec<Vec<SimplexId>>,
    pub attach: Vec<SimplicialMap>,
    pub params: BTreeMap<(usize, usize), Vec<String>>,
    /// `b_{μ,λ}(p, −)` for each parameter `p`.
    pub action: BTreeMap<(usize, usize), Vec<SimplicialMap>>,
    /// `c[q][p]` is the index of `c(q, p)` in `P_{μ,ν}`.
    pub compose: BTreeMap<(usize, usize, usize), Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct CylReport {
    pub attaching: bool,
    pub action: bool,
    pub associativity: bool,
    pub coverage: bool,
    pub witness: Option<String>,
}

impl CylReport {
    pub fn pass(&self) -> bool {
        self.attaching && self.action && self.associativity && self.coverage
    }
}

impl CylStructure {
    /// The three commuting diagrams and the coverage condition, cell by cell.
    pub fn verify(&self, space: &FinSimpSet) -> CylReport {
        let mut r = CylReport { attaching: true, action: true, associativity: true, coverage: true, witness: None };
        let fail = |flag: &mut bool, w: String, witness: &mut Option<String>| {
            *flag = false;
            witness.get_or_insert(w);
        };
        for (l, a) in self.attach.iter().enumerate() {
            if !a.is_simplicial(&self.domes[l], space) {
                fail(&mut r.attaching, format!("attaching map of stratum {l} is not simplicial"), &mut r.witness);
            }
        }
        for (&(m, l), maps) in &self.action {
            for (p, b) in maps.iter().enumerate() {
                if !b.is_simplicial(&self.domes[m], &self.domes[l]) {
                    fail(&mut r.action, format!("b({}) is not simplicial", self.params[&(m, l)][p]), &mut r.witness);
                } else if b.then(&self.attach[l]) != self.attach[m] {
                    fail(&mut r.attaching, format!("s ∘ b({}) differs from s", self.params[&(m, l)][p]), &mut r.witness);
                }
            }
        }
        for (&(a, b, c), table) in &self.compose {
            for (q, row) in table.iter().enumerate() {
                for (p, &qp) in row.iter().enumerate() {
                    let two = self.action[&(a, b)][p].then(&self.action[&(b, c)][q]);
                    if two != self.action[&(a, c)][qp] {
                        fail(
                            &mut r.action,
                            format!("b({}) ∘ b({}) differs from b({})", self.params[&(b, c)][q], self.params[&(a, b)][p], self.params[&(a, c)][qp]),
                            &mut r.witness,
                        );
                    }
                }
            }
        }
        for (&(a, b, c), inner) in &self.compose {
            for (&(c2, d), outer) in self.params.iter().filter(|(&(c2, _), _)| c2 == c) {
                let (Some(bcd), Some(acd)) = (self.compose.get(&(b, c2, d)), self.compose.get(&(a, c2, d))) else { continue };
                for r3 in 0..outer.len() {
                    for q in 0..self.params[&(b, c)].len() {
                        for p in 0..self.params[&(a, b)].len() {
                            if acd[r3][inner[q][p]] != self.compose[&(a, b, d)][bcd[r3][q]][p] {
                                fail(
                                    &mut r.associativity,
                                    format!("{} , {} , {}", outer[r3], self.params[&(b, c)][q], self.params[&(a, b)][p]),
                                    &mut r.witness,
                                );
                            }
                        }
                    }
                }
            }
        }
        for (l, dome) in self.domes.iter().enumerate() {
            let mut hits: BTreeMap<SimplexId, usize> = dome.ids().map(|id| (id, 0)).collect();
            for id in &self.interiors[l] {
                *hits.get_mut(id).expect("dome cell") += 1;
            }
            for (&(m, _), maps) in self.action.range((0, l)..).filter(|(&(_, l2), _)| l2 == l) {
                for b in maps {
                    for &id in &self.interiors[m] {
                        let s = b.image(id);
                        if s.is_degenerate() {
                            fail(&mut r.coverage, format!("degenerate image in dome {l}"), &mut r.witness);
                        } else {
                            *hits.get_mut(&s.base).expect("dome cell") += 1;
                        }
                    }
                }
            }
            if let Some((id, n)) = hits.iter().find(|(_, &n)| n != 1) {
                fail(&mut r.coverage, format!("cell {} of dome {l} covered {n} times", dome.label(*id)), &mut r.witness);
            }
        }
        r
    }
}

/// `b_{x,y}(u, −) = u ∘ (−)` on lower stars, for the unstable stratification.
pub fn cylindrical_structure(c: &AcycCat) -> CylStructure {
    let bc = c.classifying_space().1;
    let n = c.objects().len();
    let stars: Vec<StellarCell> = (0..n).map(|x| star(c, x, Side::Lower, &bc).expect("object in range")).collect();
    let mut params = BTreeMap::new();
    let mut action = BTreeMap::new();
    for x in 0..n {
        for y in 0..n {
            let hom = c.hom(x, y);
            if hom.is_empty() {
                continue;
            }
            params.insert((x, y), hom.iter().map(|&a| c.arrows()[a].name.clone()).collect::<Vec<String>>());
            let (from, to) = (&stars[x], &stars[y]);
            let obj_pos: HashMap<Mor, usize> = to.comma.objects.iter().enumerate().map(|(i, &m)| (m, i)).collect();
            let arrow_pos: HashMap<(usize, usize, usize), usize> =
                to.comma.cat.arrows().iter().enumerate().map(|(i, a)| ((a.source, a.target, to.comma.arrows[i]), i)).collect();
            let maps = hom
                .iter()
                .map(|&u| {
                    let moved: Vec<usize> =
                        from.comma.objects.iter().map(|&f| obj_pos[&c.compose(Mor::Arrow(u), f).expect("composable")]).collect();
                    let images = from
                        .dome
                        .f_vector()
                        .iter()
                        .enumerate()
                        .map(|(d, &k)| {
                            (0..k)
                                .map(|i| {
                                    let ch = from.dome_table.key(SimplexId::new(d, i));
                                    let arrows = ch
                                        .arrows
                                        .iter()
                                        .map(|&a| {
                                            let ar = &from.comma.cat.arrows()[a];
                                            arrow_pos[&(moved[ar.source], moved[ar.target], from.comma.arrows[a])]
                                        })
                                        .collect();
                                    let image = Chain { objects: ch.objects.iter().map(|&o| moved[o]).collect(), arrows };
                                    Simplex::nondegenerate(to.dome_table.id(&image).expect("chain of C↓y"))
                                })
                                .collect()
                        })
                        .collect();
                    SimplicialMap::new(images)
                })
                .collect();
            action.insert((x, y), maps);
        }
    }
    let mut compose = BTreeMap::new();
    for (&(x, y), ps) in &params {
        for (&(y2, z), qs) in params.range((y, 0)..).take_while(|(&(y2, _), _)| y2 == y) {
            debug_assert_eq!(y, y2);
            let xz = c.hom(x, z);
            let table = qs
                .iter()
                .enumerate()
                .map(|(q, _)| {
                    (0..ps.len())
                        .map(|p| {
                            let gf = c.compose_arrows(c.hom(y, z)[q], c.hom(x, y)[p]).expect("composable");
                            xz.iter().position(|&a| a == gf).expect("in hom")
                        })
                        .collect()
                })
                .collect();
            compose.insert((x, y, z), table);
        }
    }
    CylStructure {
        strata: (0..n).collect(),
        domes: stars.iter().map(|s| s.dome.clone()).collect(),
        interiors: stars.iter().map(|s| s.interior.clone()).collect(),
        attach: stars.iter().map(|s| s.attach.clone()).collect(),
        params,
        action,
        compose,
    }
}

/// The simplicial stratification with `D_σ = Δⁿ` and `P_{τ,σ}` the face inclusions exhibiting `τ` as a face of `σ`.
pub fn simplicial_cylindrical_structure(x: &FinSimpSet) -> Result<(StratSpace, CylStructure), StellarError> {
    let strat = simplicial_stratification(x);
    let ids: Vec<SimplexId> = x.ids().collect();
    let pos: HashMap<SimplexId, usize> = ids.iter().enumerate().map(|(k, &id)| (id, k)).collect();
    let name = |k: usize| strat.poset().name(k).to_string();
    let mut domes = Vec::new();
    let mut tables = Vec::new();
    let mut attach = Vec::new();
    let mut faces: BTreeMap<(usize, usize), Vec<Vec<usize>>> = BTreeMap::new();
    for (k, &sigma) in ids.iter().enumerate() {
        let (delta, table) = standard_simplex_with_table(sigma.dim);
        let top = Simplex::nondegenerate(sigma);
        let mut images = Vec::new();
        for (d, &n) in delta.f_vector().iter().enumerate() {
            let mut row = Vec::new();
            for i in 0..n {
                let verts = table.key(SimplexId::new(d, i));
                let f = x.apply(&top, verts);
                if f.is_degenerate() {
                    return Err(StellarError::DegenerateFace { cell: name(k), face: format!("{verts:?}") });
                }
                if d < sigma.dim {
                    faces.entry((pos[&f.base], k)).or_default().push(verts.clone());
                }
                row.push(f);
            }
            images.push(row);
        }
        domes.push(delta);
        tables.push(table);
        attach.push(SimplicialMap::new(images));
    }
    let mut params = BTreeMap::new();
    let mut action = BTreeMap::new();
    for (&(t, s), alphas) in &faces {
        params.insert((t, s), (0..alphas.len()).map(|i| format!("{}<{}#{i}", name(t), name(s))).collect::<Vec<_>>());
        let maps = alphas
            .iter()
            .map(|alpha| {
                let images = domes[t]
                    .f_vector()
                    .iter()
                    .enumerate()
                    .map(|(d, &n)| {
                        (0..n)
                            .map(|i| {
                                let verts: Vec<usize> = tables[t].key(SimplexId::new(d, i)).iter().map(|&v| alpha[v]).collect();
                                Simplex::nondegenerate(tables[s].id(&verts).expect("face of Δⁿ"))
                            })
                            .collect()
                    })
                    .collect();
                SimplicialMap::new(images)
            })
            .collect();
        action.insert((t, s), maps);
    }
    let mut compose = BTreeMap::new();
    for (&(a, b), inner) in &faces {
        for (&(_, c), outer) in faces.range((b, 0)..).take_while(|(&(b2, _), _)| b2 == b) {
            let table = outer
                .iter()
                .map(|beta| {
                    inner
                        .iter()
                        .map(|alpha| {
                            let both: Vec<usize> = alpha.iter().map(|&v| beta[v]).collect();
                            faces[&(a, c)].iter().position(|g| *g == both).expect("composite face")
                        })
                        .collect()
                })
                .collect();
            compose.insert((a, b, c), table);
        }
    }
    let interiors = domes.iter().map(|d| vec![SimplexId::new(d.dim().unwrap_or(0), 0)]).collect();
    let cyl = CylStructure { strata: (0..ids.len()).collect(), domes, interiors, attach, params, action, compose };
    Ok((strat, cyl))
}

/// Objects the strata, homs the parameter sets, composition `c`.
pub fn extract_face_category(strat: &StratSpace, cyl: &CylStructure) -> Result<AcycCat, CategoryError> {
    let name = |l: usize| strat.poset().name(cyl.strata[l]).to_string();
    let objects = (0..cyl.strata.len()).map(name).collect();
    let mut arrows = Vec::new();
    for (&(m, l), ps) in &cyl.params {
        for p in ps {
            arrows.push((p.clone(), name(m), name(l)));
        }
    }
    let mut compose = Vec::new();
    for (&(a, b, c), table) in &cyl.compose {
        for (q, row) in table.iter().enumerate() {
            for (p, &qp) in row.iter().enumerate() {
                compose.push((cyl.params[&(b, c)][q].clone(), cyl.params[&(a, b)][p].clone(), cyl.params[&(a, c)][qp].clone()));
            }
        }
    }
    AcycCat::from_data(&CategoryData { objects, arrows, compose })
}

fn stirling2(n: usize, k: usize) -> usize {
    let mut row = vec![1usize];
    for i in 1..=n {
        let mut next = vec![0; i + 1];
        for j in 1..=i {
            next[j] = j * row.get(j).copied().unwrap_or(0) + row[j - 1];
        }
        row = next;
    }
    row.get(k).copied().unwrap_or(0)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SalvettiReport {
    /// `Σ_σ (k+1)!·S(dim σ + 1, k + 1)`.
    pub subdivision: Vec<usize>,
    /// f-vector of `B` of the extracted face category.
    pub nerve: Vec<usize>,
}

impl SalvettiReport {
    pub fn pass(&self) -> bool {
        self.subdivision == self.nerve
    }
}

/// Compares `B` of the face category of a simplicial set with its barycentric subdivision.
pub fn salvetti_check(x: &FinSimpSet) -> Result<SalvettiReport, StellarError> {
    let (strat, cyl) = simplicial_cylindrical_structure(x)?;
    let face = extract_face_category(&strat, &cyl)?;
    let mut subdivision = vec![0; x.dim().map_or(0, |d| d + 1)];
    let fact = |n: usize| (1..=n).product::<usize>();
    for id in x.ids() {
        for k in 0..=id.dim {
            subdivision[k] += fact(k + 1) * stirling2(id.dim + 1, k + 1);
        }
    }
    Ok(SalvettiReport { subdivision, nerve: face.classifying_space().0.f_vector() })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RoundtripReport {
    pub cylinder: CylReport,
    /// Extracted name to original name, for objects and arrows.
    pub isomorphism: Option<BTreeMap<String, String>>,
    pub mismatch: Option<Mismatch>,
    #[serde(skip)]
    pub extracted: Option<AcycCat>,
}

impl RoundtripReport {
    pub fn pass(&self) -> bool {
        self.cylinder.pass() && self.isomorphism.is_some()
    }
}

/// Extracts the face category of the unstable stratification and compares it with `c`.
pub fn roundtrip(c: &AcycCat) -> Result<RoundtripReport, StellarError> {
    let (strat, _) = chain_stratification(c, Side::Lower);
    let cyl = cylindrical_structure(c);
    let cylinder = cyl.verify(strat.space());
    let extracted = extract_face_category(&strat, &cyl)?;
    let (isomorphism, mismatch) = match iso_check(&extracted, c) {
        Ok(iso) if iso.verify(&extracted, c) => (Some(iso.named(&extracted, c)), None),
        Ok(_) => (None, Some(Mismatch { invariant: "functoriality".into(), left: String::new(), right: String::new() })),
        Err(m) => (None, Some(m)),
    };
    Ok(RoundtripReport { cylinder, isomorphism, mismatch, extracted: Some(extracted) })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HomCheck {
    pub source: String,
    pub target: String,
    /// Product cells over the chain `(source, target)`.
    pub prisms: usize,
    pub hom_cells: usize,
    /// The parameter space read off the strata is the nerve of the hom poset.
    pub nerve_iso: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StructuralReport {
    pub strata: usize,
    pub face_poset_iso: bool,
    pub homs: Vec<HomCheck>,
    pub composition: bool,
    pub witness: Option<String>,
}

impl StructuralReport {
    pub fn pass(&self) -> bool {
        self.face_poset_iso && self.composition && self.homs.iter().all(|h| h.nerve_iso && h.prisms == h.hom_cells)
    }
}

/// Round trip on the enriched tier: face poset, hom spaces and composition on vertices.
pub fn roundtrip_enriched(e: &EnrichedCat) -> Result<StructuralReport, StellarError> {
    let (strat, table) = enriched_stratification(e, Side::Lower)?;
    let space = strat.space();
    let face_poset_iso = match face_poset(&strat) {
        Ok((fp, _)) => fp.isomorphism(e.order()).is_some(),
        Err(_) => false,
    };
    let mut homs = Vec::new();
    let mut witness = None;
    for ((x, y), hom) in e.homs() {
        if x == y {
            continue;
        }
        let mut bases: Vec<SimplexId> = space
            .ids()
            .map(|id| table.key(id).prism())
            .filter(|p| p.chain == [x, y])
            .map(|p| p.homs[0])
            .collect();
        bases.sort();
        bases.dedup();
        let read = hom.space.subcomplex(&bases).ok().map(|s| s.0);
        let target = match &hom.poset {
            Some((p, _)) => p.order_complex().0,
            None => hom.space.clone(),
        };
        let nerve_iso = read.is_some_and(|r| find_isomorphism(&r, &target).is_some());
        if !nerve_iso {
            witness.get_or_insert(format!("hom {} -> {}", e.objects()[x], e.objects()[y]));
        }
        homs.push(HomCheck {
            source: e.objects()[x].clone(),
            target: e.objects()[y].clone(),
            prisms: bases.len(),
            hom_cells: hom.space.total_cells(),
            nerve_iso,
        });
    }
    let mut composition = true;
    for id in space.ids_of_dim(2) {
        let cell = table.key(id);
        let vertices = cell.homs.iter().all(|h| h.as_ref().is_some_and(|s| s.base.dim == 0));
        if !vertices {
            continue;
        }
        let (x, y, z) = (cell.objs[0], cell.objs[1], cell.objs[2]);
        let vertex = |s: &Option<Simplex>| Simplex::nondegenerate(s.as_ref().expect("strict step").base);
        let expected = e.compose_in(x, y, z, &vertex(&cell.homs[1]), &vertex(&cell.homs[0])).base;
        let face = space.face(&Simplex::nondegenerate(id), 1);
        let got = table.key(face.base);
        let ok = got.objs == [x, z] && got.homs[0].as_ref().is_some_and(|s| s.base == expected);
        if !ok {
            composition = false;
            witness.get_or_insert(format!("composite through {}", e.cell_name(cell)));
        }
    }
    Ok(StructuralReport { strata: strat.image().len(), face_poset_iso, homs, composition, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::simpset::{homology, simplicial_complex, SimpSetBuilder};

    fn stratum_sizes(s: &StratSpace) -> Vec<usize> {
        (0..s.poset().len()).map(|l| s.stratum(l).len()).collect()
    }

    #[test]
    fn unstable_strata_of_small_examples() {
        assert_eq!(stratum_sizes(&unstable_stratification(&AcycCat::ordinal(2))), vec![1, 2, 4]);
        assert_eq!(stratum_sizes(&stable_stratification(&AcycCat::ordinal(2))), vec![4, 2, 1]);
        assert_eq!(stratum_sizes(&unstable_stratification(&fixtures::figure1())), vec![1, 2, 7]);
        assert_eq!(stratum_sizes(&unstable_stratification(&AcycCat::ordinal(0))), vec![1]);
        for (_, c) in fixtures::categories() {
            assert!(unstable_stratification(&c).check_conditions().is_stratification());
            assert!(stable_stratification(&c).check_conditions().is_stratification());
        }
    }

    #[test]
    fn lower_star_of_minimal_object_is_a_point() {
        let c = fixtures::figure1();
        let s = lower_star(&c, 0).unwrap();
        assert_eq!(s.dome.f_vector(), vec![1]);
        assert!(s.boundary.is_empty());
        assert!(s.h_is_isomorphism());
        assert_eq!(s.interior.len(), 1);
        assert!(lower_star(&c, 9).is_err());
    }

    #[test]
    fn lower_star_of_z_in_figure_one() {
        let c = fixtures::figure1();
        let s = lower_star(&c, 2).unwrap();
        assert_eq!(s.boundary.f_vector(), vec![4, 2]);
        assert_eq!(s.dome.euler_characteristic(), 1);
        assert!(homology(&s.dome).is_point());
        assert!(s.h_is_isomorphism());
        assert!(s.link_levels_match);
        assert!(s.attach.is_simplicial(&s.dome, &c.classifying_space().0));
        assert_eq!(s.interior.len(), 7);
    }

    #[test]
    fn top_of_ordinal_two_is_the_cone_on_an_edge_path() {
        let c = AcycCat::ordinal(2);
        let s = lower_star(&c, 2).unwrap();
        assert_eq!(s.dome.f_vector(), vec![3, 3, 1]);
        assert_eq!(s.boundary.f_vector(), vec![2, 1]);
        assert!(s.h_is_isomorphism());
        assert!(s.link_levels_match);
    }

    #[test]
    fn upper_stars_are_cones() {
        for (name, c) in fixtures::categories() {
            for x in 0..c.objects().len() {
                let s = upper_star(&c, x).unwrap();
                assert!(s.h_is_isomorphism(), "{name} {x}");
                assert!(s.link_levels_match, "{name} {x}");
                let l = lower_star(&c, x).unwrap();
                assert!(l.h_is_isomorphism(), "{name} {x}");
                assert!(l.link_levels_match, "{name} {x}");
            }
        }
    }

    #[test]
    fn strata_are_star_images() {
        for (name, c) in fixtures::categories() {
            for x in 0..c.objects().len() {
                for side in [Side::Lower, Side::Upper] {
                    let r = verify_stratum_equals_star(&c, x, side).unwrap();
                    assert!(r.pass(), "{name} {x} {side:?}: {:?}", r.witness);
                }
            }
        }
        let r = verify_stratum_equals_star(&fixtures::figure1(), 1, Side::Lower).unwrap();
        assert_eq!((r.stratum_cells, r.interior_cells, r.closure_cells), (2, 2, 3));
    }

    #[test]
    fn figure_one_parameters_and_extraction() {
        let c = fixtures::figure1();
        let cyl = cylindrical_structure(&c);
        assert_eq!(cyl.params[&(1, 2)], vec!["u1", "u2"]);
        assert_eq!(cyl.params[&(0, 2)], vec!["u1v", "u2v"]);
        assert_eq!(cyl.params[&(0, 1)], vec!["v"]);
        assert_eq!(cyl.compose[&(0, 1, 2)], vec![vec![0], vec![1]]);
        let r = roundtrip(&c).unwrap();
        assert!(r.pass(), "{r:?}");
        assert_eq!(r.isomorphism.unwrap()["u1v"], "u1v");
    }

    #[test]
    fn ordinal_two_parameters_are_singletons() {
        let cyl = cylindrical_structure(&AcycCat::ordinal(2));
        assert!(cyl.params.values().all(|p| p.len() == 1));
        assert_eq!(cyl.params.len(), 3);
    }

    #[test]
    fn fixtures_round_trip() {
        for (name, c) in fixtures::categories() {
            let r = roundtrip(&c).unwrap();
            assert!(r.pass(), "{name}: {r:?}");
        }
    }

    #[test]
    fn simplicial_face_category_of_triangle_boundary_is_its_face_poset() {
        let x = fixtures::sphere_boundary(2);
        let (strat, cyl) = simplicial_cylindrical_structure(&x).unwrap();
        assert!(cyl.verify(&x).pass(), "{:?}", cyl.verify(&x));
        let face = extract_face_category(&strat, &cyl).unwrap();
        let poset = face_poset(&strat).unwrap().0;
        assert!(iso_check(&face, &AcycCat::from_poset(&poset)).is_ok());
        assert_eq!(face.arrows().len(), 6);
    }

    #[test]
    fn loop_has_two_parameters() {
        let mut b = SimpSetBuilder::new();
        let v = b.add_vertex(Some("v".into()));
        b.add_nondegenerate(&[v, v], Some("e".into())).unwrap();
        let x = b.build().unwrap();
        let (strat, cyl) = simplicial_cylindrical_structure(&x).unwrap();
        assert!(cyl.verify(&x).pass());
        let face = extract_face_category(&strat, &cyl).unwrap();
        assert_eq!(face.hom(0, 1).len(), 2);
        assert!(salvetti_check(&x).unwrap().pass());
    }

    #[test]
    fn salvetti_counts() {
        assert_eq!(stirling2(3, 2), 3);
        assert_eq!(stirling2(4, 2), 7);
        let r = salvetti_check(&standard_simplex(2)).unwrap();
        assert_eq!(r.subdivision, vec![7, 12, 6]);
        assert!(r.pass());
        for x in [fixtures::two_gon(), fixtures::hexagon(), simplicial_complex(&[vec![0, 1, 2], vec![1, 2, 3]]).0] {
            assert!(salvetti_check(&x).unwrap().pass());
        }
    }

    #[test]
    fn degenerate_faces_are_rejected() {
        let mut b = SimpSetBuilder::new();
        let v = b.add_vertex(None);
        let d = Simplex::new(crate::simpset::Degeneracy::codegeneracy(0, 0), v);
        b.add_simplex(vec![d.clone(), d.clone(), d], None).unwrap();
        let x = b.build().unwrap();
        assert!(matches!(simplicial_cylindrical_structure(&x), Err(StellarError::DegenerateFace { .. })));
    }

    #[test]
    fn enriched_round_trip_on_hexagon_flow() {
        let e = fixtures::hexagon_flow();
        let r = roundtrip_enriched(&e).unwrap();
        assert!(r.pass(), "{r:?}");
        assert_eq!(r.strata, 2);
        assert_eq!(r.homs[0].prisms, 12);
    }

    #[test]
    fn enriched_round_trip_on_discrete_tier() {
        for (name, c) in fixtures::categories() {
            let r = roundtrip_enriched(&EnrichedCat::from_discrete(&c)).unwrap();
            assert!(r.pass(), "{name}: {r:?}");
        }
    }
}
