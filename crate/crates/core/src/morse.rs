//! Discrete Morse theory on regular complexes and the flow categories of acyclic matchings.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::path::Path;

use num_rational::Rational64;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::acyccat::{CategoryError, EnrichedCat};
use crate::poset::{FinPoset, PosetError, PosetJson};
use crate::simpset::io::{IoError, SimpSetJson};
use crate::simpset::{ChainComplex, FinSimpSet, HomologyReport, SimplexId};
use crate::stellar::{enriched_stratification, roundtrip_enriched, Side, StellarError, StructuralReport};
use crate::strat::{Inline, StratSpace};

#[derive(Debug, Error)]
pub enum MorseError {
    #[error("not a regular complex: {0}")]
    NotRegular(String),
    #[error("unknown cell {0}")]
    UnknownCell(String),
    #[error("{0} and {1} are not a cover pair")]
    NotACover(String, String),
    #[error("{0} is matched twice")]
    MatchedTwice(String),
    #[error("not a discrete Morse function: {0} has two exceptional neighbours")]
    NotMorse(String),
    #[error("matching has a closed V-path through {0:?}")]
    Cyclic(Vec<String>),
    #[error("Morse homology {morse} differs from cellular homology {cellular}")]
    HomologyMismatch { morse: String, cellular: String },
    #[error("no hom poset supplied for {0} -> {1}")]
    MissingHom(String, String),
    #[error("no composite supplied for {0} ∘ {1}")]
    MissingComposite(String, String),
    #[error("bad flow data: {0}")]
    FlowData(String),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error(transparent)]
    Stellar(#[from] StellarError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Io(#[from] IoError),
}

/// The face poset of a finite regular CW complex, graded by dimension.
#[derive(Clone, Debug)]
pub struct RegComplex {
    names: Vec<String>,
    dims: Vec<usize>,
    /// Codimension-one faces with their incidence numbers (all `1` when unsigned).
    faces: Vec<Vec<(usize, i64)>>,
    cofaces: Vec<Vec<usize>>,
    signed: bool,
}

impl RegComplex {
    fn assemble(names: Vec<String>, dims: Vec<usize>, faces: Vec<Vec<(usize, i64)>>, signed: bool) -> Result<Self, MorseError> {
        let mut cofaces = vec![Vec::new(); names.len()];
        for (b, fs) in faces.iter().enumerate() {
            for &(a, _) in fs {
                if dims[a] + 1 != dims[b] {
                    return Err(MorseError::NotRegular(format!("{} does not have codimension one in {}", names[a], names[b])));
                }
                cofaces[a].push(b);
            }
        }
        let c = Self { names, dims, faces, cofaces, signed };
        if let Some((a, b)) = c.diamond_violation() {
            return Err(MorseError::NotRegular(format!("interval [{}, {}] is not a diamond", c.names[a], c.names[b])));
        }
        Ok(c)
    }

    /// Simplices with pairwise distinct vertices; incidence `(-1)^i` for the `i`-th face.
    pub fn from_simplicial(x: &FinSimpSet) -> Result<Self, MorseError> {
        let ids: Vec<SimplexId> = x.ids().collect();
        let pos: HashMap<SimplexId, usize> = ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();
        let mut faces = Vec::with_capacity(ids.len());
        for &id in &ids {
            let mut vs = x.vertices(id);
            vs.sort();
            vs.dedup();
            if vs.len() != id.dim + 1 {
                return Err(MorseError::NotRegular(format!("{} repeats a vertex", x.label(id))));
            }
            let fs = if id.dim == 0 {
                Vec::new()
            } else {
                x.faces(id).iter().enumerate().map(|(i, f)| (pos[&f.base], if i % 2 == 0 { 1 } else { -1 })).collect()
            };
            faces.push(fs);
        }
        Self::assemble(ids.iter().map(|&id| x.label(id)).collect(), ids.iter().map(|id| id.dim).collect(), faces, true)
    }

    /// A graded poset taken as the face poset of a regular complex; homology is computed mod 2.
    pub fn from_graded_poset(p: &FinPoset) -> Result<Self, MorseError> {
        let dims: Vec<usize> = (0..p.len()).map(|x| p.height(x)).collect();
        let faces = (0..p.len()).map(|b| p.lower_covers(b).into_iter().map(|a| (a, 1)).collect()).collect();
        Self::assemble(p.names().to_vec(), dims, faces, false)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn dim(&self, i: usize) -> usize {
        self.dims[i]
    }

    pub fn faces(&self, i: usize) -> &[(usize, i64)] {
        &self.faces[i]
    }

    pub fn cofaces(&self, i: usize) -> &[usize] {
        &self.cofaces[i]
    }

    pub fn is_signed(&self) -> bool {
        self.signed
    }

    fn incidence(&self, b: usize, a: usize) -> i64 {
        self.faces[b].iter().find(|f| f.0 == a).map_or(0, |f| f.1)
    }

    /// A codimension-two interval with other than two middle elements.
    pub fn diamond_violation(&self) -> Option<(usize, usize)> {
        for c in 0..self.len() {
            let mut count: BTreeMap<usize, usize> = BTreeMap::new();
            for &(b, _) in &self.faces[c] {
                for &(a, _) in &self.faces[b] {
                    *count.entry(a).or_default() += 1;
                }
            }
            if let Some((&a, _)) = count.iter().find(|(_, &n)| n != 2) {
                return Some((a, c));
            }
        }
        None
    }

    /// Position of each cell among the cells of its dimension.
    fn slots(&self) -> (Vec<usize>, Vec<usize>) {
        let top = self.dims.iter().max().map_or(0, |d| d + 1);
        let mut ranks = vec![0; top];
        let mut slot = vec![0; self.len()];
        for i in 0..self.len() {
            slot[i] = ranks[self.dims[i]];
            ranks[self.dims[i]] += 1;
        }
        (ranks, slot)
    }

    pub fn chain_complex(&self) -> ChainComplex {
        let (ranks, slot) = self.slots();
        let mut cc = ChainComplex::new(ranks);
        for b in 0..self.len() {
            for &(a, s) in &self.faces[b] {
                cc.boundaries[self.dims[b]].add(slot[a], slot[b], s);
            }
        }
        cc
    }
}

/// A partial matching of cells along covers, stored as `(face, coface)` pairs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
}

impl Matching {
    /// Partner of each cell, after checking that pairs are covers and disjoint.
    pub fn partners(&self, c: &RegComplex) -> Result<Vec<Option<usize>>, MorseError> {
        let mut partner = vec![None; c.len()];
        for &(a, b) in &self.pairs {
            if a >= c.len() || b >= c.len() {
                return Err(MorseError::UnknownCell(format!("{}", a.max(b))));
            }
            if c.incidence(b, a) == 0 {
                return Err(MorseError::NotACover(c.name(a).into(), c.name(b).into()));
            }
            for (x, y) in [(a, b), (b, a)] {
                if partner[x].replace(y).is_some() {
                    return Err(MorseError::MatchedTwice(c.name(x).into()));
                }
            }
        }
        Ok(partner)
    }

    pub fn critical(&self, c: &RegComplex) -> Result<Vec<usize>, MorseError> {
        let partner = self.partners(c)?;
        Ok((0..c.len()).filter(|&i| partner[i].is_none()).collect())
    }

    pub fn from_names(c: &RegComplex, pairs: &[(String, String)]) -> Result<Self, MorseError> {
        let idx = |n: &String| c.index_of(n).ok_or_else(|| MorseError::UnknownCell(n.clone()));
        let pairs = pairs
            .iter()
            .map(|(a, b)| {
                let (a, b) = (idx(a)?, idx(b)?);
                Ok(if c.dim(a) <= c.dim(b) { (a, b) } else { (b, a) })
            })
            .collect::<Result<_, MorseError>>()?;
        Ok(Self { pairs })
    }
}

/// Pairs each cell with the unique cover on which `f` fails to increase.
pub fn morse_function_to_matching(c: &RegComplex, f: &[Rational64]) -> Result<Matching, MorseError> {
    if f.len() != c.len() {
        return Err(MorseError::FlowData(format!("{} values for {} cells", f.len(), c.len())));
    }
    let mut pairs = Vec::new();
    for s in 0..c.len() {
        let up: Vec<usize> = c.cofaces(s).iter().copied().filter(|&t| f[t] <= f[s]).collect();
        let down = c.faces(s).iter().filter(|&&(r, _)| f[r] >= f[s]).count();
        if up.len() > 1 || down > 1 {
            return Err(MorseError::NotMorse(c.name(s).into()));
        }
        if let Some(&t) = up.first() {
            pairs.push((s, t));
        }
    }
    let m = Matching { pairs };
    m.partners(c)?;
    Ok(m)
}

/// Directed cycle in the Hasse diagram with matched covers pointing up, by depth-first search.
pub fn hasse_cycle(c: &RegComplex, partner: &[Option<usize>]) -> Option<Vec<usize>> {
    let succ = |v: usize| -> Vec<usize> {
        let mut out: Vec<usize> = c.faces(v).iter().map(|f| f.0).filter(|&a| partner[a] != Some(v)).collect();
        if let Some(p) = partner[v] {
            if c.dim(p) > c.dim(v) {
                out.push(p);
            }
        }
        out
    };
    // 0 unseen, 1 on stack, 2 done
    let mut state = vec![0u8; c.len()];
    for root in 0..c.len() {
        if state[root] != 0 {
            continue;
        }
        let mut stack: Vec<(usize, Vec<usize>)> = vec![(root, succ(root))];
        state[root] = 1;
        while let Some((v, next)) = stack.last_mut() {
            let v = *v;
            if let Some(w) = next.pop() {
                match state[w] {
                    0 => {
                        state[w] = 1;
                        stack.push((w, succ(w)));
                    }
                    1 => {
                        let start = stack.iter().position(|(u, _)| *u == w).expect("on stack");
                        return Some(stack[start..].iter().map(|(u, _)| *u).collect());
                    }
                    _ => {}
                }
            } else {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    None
}

/// Closed V-paths, detected by peeling the graph `α → α'` (`α'` a face of `μ(α)`) with Kahn's algorithm.
pub fn has_closed_vpath(c: &RegComplex, partner: &[Option<usize>]) -> bool {
    let lower: Vec<usize> = (0..c.len()).filter(|&a| partner[a].is_some_and(|b| c.dim(b) > c.dim(a))).collect();
    let pos: HashMap<usize, usize> = lower.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut edges = vec![Vec::new(); lower.len()];
    let mut indeg = vec![0usize; lower.len()];
    for (i, &a) in lower.iter().enumerate() {
        let b = partner[a].expect("matched");
        for &(a2, _) in c.faces(b) {
            if a2 != a {
                if let Some(&j) = pos.get(&a2) {
                    edges[i].push(j);
                    indeg[j] += 1;
                }
            }
        }
    }
    let mut queue: VecDeque<usize> = (0..lower.len()).filter(|&i| indeg[i] == 0).collect();
    let mut removed = 0;
    while let Some(i) = queue.pop_front() {
        removed += 1;
        for &j in &edges[i] {
            indeg[j] -= 1;
            if indeg[j] == 0 {
                queue.push_back(j);
            }
        }
    }
    removed != lower.len()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatchingReport {
    pub pairs: usize,
    pub critical: Vec<String>,
    pub acyclic: bool,
    /// The same verdict from the V-path graph.
    pub acyclic_vpaths: bool,
    pub witness: Option<Vec<String>>,
}

pub fn validate_matching(c: &RegComplex, m: &Matching) -> Result<MatchingReport, MorseError> {
    let partner = m.partners(c)?;
    let cycle = hasse_cycle(c, &partner);
    Ok(MatchingReport {
        pairs: m.pairs.len(),
        critical: (0..c.len()).filter(|&i| partner[i].is_none()).map(|i| c.name(i).to_string()).collect(),
        acyclic: cycle.is_none(),
        acyclic_vpaths: !has_closed_vpath(c, &partner),
        witness: cycle.map(|cy| cy.into_iter().map(|i| c.name(i).to_string()).collect()),
    })
}

/// A gradient path `β > α₀ < β₀ > α₁ < … > α_r` ending at a critical cell, with its sign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VPath {
    pub cells: Vec<usize>,
    pub sign: i64,
}

impl VPath {
    pub fn end(&self) -> usize {
        *self.cells.last().expect("nonempty")
    }
}

/// All gradient paths from a critical cell down to critical cells one dimension lower.
pub fn vpaths(c: &RegComplex, partner: &[Option<usize>], beta: usize) -> Vec<VPath> {
    let mut out = Vec::new();
    let mut path = vec![beta];
    walk(c, partner, beta, None, 1, &mut path, &mut out);
    out
}

fn walk(c: &RegComplex, partner: &[Option<usize>], b: usize, skip: Option<usize>, sign: i64, path: &mut Vec<usize>, out: &mut Vec<VPath>) {
    for &(a, inc) in c.faces(b) {
        if Some(a) == skip {
            continue;
        }
        path.push(a);
        match partner[a] {
            None => out.push(VPath { cells: path.clone(), sign: sign * inc }),
            Some(b2) if c.dim(b2) > c.dim(a) && b2 != b => {
                path.push(b2);
                walk(c, partner, b2, Some(a), sign * inc * -c.incidence(b2, a), path, out);
                path.pop();
            }
            _ => {}
        }
        path.pop();
    }
}

#[derive(Clone, Debug)]
pub struct MorseComplex {
    /// Critical cells by dimension.
    pub critical: Vec<Vec<usize>>,
    pub complex: ChainComplex,
    /// Integral homology, for signed complexes.
    pub homology: Option<HomologyReport>,
    pub betti_mod2: Vec<usize>,
}

/// Generators the critical cells, boundary the signed (or mod 2) count of gradient paths.
/// Disagreement with the cellular homology is reported as an error.
pub fn morse_complex(c: &RegComplex, m: &Matching) -> Result<MorseComplex, MorseError> {
    let partner = m.partners(c)?;
    if let Some(cycle) = hasse_cycle(c, &partner) {
        return Err(MorseError::Cyclic(cycle.into_iter().map(|i| c.name(i).to_string()).collect()));
    }
    let top = (0..c.len()).map(|i| c.dim(i) + 1).max().unwrap_or(0);
    let mut critical = vec![Vec::new(); top];
    for i in (0..c.len()).filter(|&i| partner[i].is_none()) {
        critical[c.dim(i)].push(i);
    }
    let mut cc = ChainComplex::new(critical.iter().map(Vec::len).collect());
    for (d, cells) in critical.iter().enumerate().skip(1) {
        for (j, &beta) in cells.iter().enumerate() {
            for p in vpaths(c, &partner, beta) {
                let i = critical[d - 1].iter().position(|&a| a == p.end()).expect("critical end");
                cc.boundaries[d].add(i, j, if c.is_signed() { p.sign } else { 1 });
            }
        }
    }
    let cellular = c.chain_complex();
    let betti_mod2 = cc.betti_mod2();
    let mismatch = |morse: String, cellular: String| Err(MorseError::HomologyMismatch { morse, cellular });
    if betti_mod2 != cellular.betti_mod2() {
        return mismatch(format!("{betti_mod2:?} mod 2"), format!("{:?} mod 2", cellular.betti_mod2()));
    }
    let homology = if c.is_signed() {
        let (h, hc) = (cc.homology(), cellular.homology());
        if h != hc {
            return mismatch(h.groups().join(", "), hc.groups().join(", "));
        }
        Some(h)
    } else {
        None
    };
    Ok(MorseComplex { critical, complex: cc, homology, betti_mod2 })
}

/// Hom posets and composites supplied for critical pairs more than one dimension apart.
#[derive(Clone, Debug, Default)]
pub struct FlowHoms {
    pub homs: BTreeMap<(String, String), FinPoset>,
    /// `(g, f, g∘f)` by element name.
    pub compose: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct FlowHomsJson {
    /// Keyed by `"source->target"`.
    pub homs: BTreeMap<String, PosetJson>,
    #[serde(default)]
    pub compose: Vec<(String, String, String)>,
}

impl FlowHomsJson {
    pub fn from_flow_homs(h: &FlowHoms) -> Self {
        Self {
            homs: h.homs.iter().map(|((a, b), p)| (format!("{a}->{b}"), PosetJson::from_poset(p))).collect(),
            compose: h.compose.clone(),
        }
    }

    pub fn to_flow_homs(&self) -> Result<FlowHoms, MorseError> {
        let mut homs = BTreeMap::new();
        for (key, p) in &self.homs {
            let (a, b) = key.split_once("->").ok_or_else(|| MorseError::FlowData(format!("bad hom key {key}")))?;
            homs.insert((a.to_string(), b.to_string()), p.to_poset()?);
        }
        Ok(FlowHoms { homs, compose: self.compose.clone() })
    }
}

/// The poset-enriched flow category of an acyclic matching.
#[derive(Clone, Debug)]
pub struct FlowCat {
    /// Critical cells, in order of dimension.
    pub critical: Vec<usize>,
    pub cat: EnrichedCat,
    /// The gradient paths behind each generated hom.
    pub vpaths: BTreeMap<(usize, usize), Vec<VPath>>,
}

/// Critical cells reachable from `b` by descending the modified Hasse diagram.
fn flows_to(c: &RegComplex, partner: &[Option<usize>], b: usize) -> Vec<bool> {
    let mut seen = vec![false; c.len()];
    let mut stack = vec![b];
    while let Some(v) = stack.pop() {
        let mut next: Vec<usize> = c.faces(v).iter().map(|f| f.0).filter(|&a| partner[a] != Some(v)).collect();
        if let Some(p) = partner[v].filter(|&p| c.dim(p) > c.dim(v)) {
            next.push(p);
        }
        for w in next {
            if !std::mem::replace(&mut seen[w], true) {
                stack.push(w);
            }
        }
    }
    seen
}

/// Objects the critical cells; adjacent-dimension homs are the discrete posets of gradient
/// paths, other homs (needed wherever the gradient flow connects two cells) come from `supplied`.
pub fn flow_category(c: &RegComplex, m: &Matching, supplied: Option<&FlowHoms>) -> Result<FlowCat, MorseError> {
    let partner = m.partners(c)?;
    if let Some(cycle) = hasse_cycle(c, &partner) {
        return Err(MorseError::Cyclic(cycle.into_iter().map(|i| c.name(i).to_string()).collect()));
    }
    let mut critical: Vec<usize> = (0..c.len()).filter(|&i| partner[i].is_none()).collect();
    critical.sort_by_key(|&i| (c.dim(i), i));
    let empty = FlowHoms::default();
    let supplied = supplied.unwrap_or(&empty);
    let objects: Vec<String> = critical.iter().map(|&i| c.name(i).to_string()).collect();
    for (a, b) in supplied.homs.keys() {
        let known = |n: &String| objects.contains(n);
        if !known(a) || !known(b) {
            return Err(MorseError::FlowData(format!("hom {a}->{b} names a cell that is not critical")));
        }
    }
    let mut homs = BTreeMap::new();
    let mut paths = BTreeMap::new();
    for (y, &b) in critical.iter().enumerate() {
        let reach = flows_to(c, &partner, b);
        for (x, &a) in critical.iter().enumerate() {
            if c.dim(a) >= c.dim(b) {
                continue;
            }
            let key = (objects[x].clone(), objects[y].clone());
            if c.dim(a) + 1 == c.dim(b) {
                if supplied.homs.contains_key(&key) {
                    return Err(MorseError::FlowData(format!("hom {}->{} is generated from gradient paths", key.0, key.1)));
                }
                let ps: Vec<VPath> = vpaths(c, &partner, b).into_iter().filter(|p| p.end() == a).collect();
                if !ps.is_empty() {
                    let names = ps.iter().map(|p| p.cells.iter().map(|&i| c.name(i)).collect::<Vec<_>>().join("/")).collect();
                    homs.insert((x, y), FinPoset::antichain(names));
                    paths.insert((x, y), ps);
                }
            } else if let Some(p) = supplied.homs.get(&key) {
                if !p.is_empty() {
                    homs.insert((x, y), p.clone());
                }
            } else if reach[a] {
                return Err(MorseError::MissingHom(key.0, key.1));
            }
        }
    }
    let table: HashMap<(&str, &str), &str> = supplied.compose.iter().map(|(g, f, gf)| ((g.as_str(), f.as_str()), gf.as_str())).collect();
    let mut compose = BTreeMap::new();
    let n = critical.len();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (Some(pxy), Some(pyz)) = (homs.get(&(x, y)), homs.get(&(y, z))) else { continue };
                let pxz = homs.get(&(x, z)).ok_or_else(|| MorseError::MissingHom(objects[x].clone(), objects[z].clone()))?;
                let mut rows = Vec::new();
                for g in pyz.names() {
                    let mut row = Vec::new();
                    for f in pxy.names() {
                        let gf = table.get(&(g.as_str(), f.as_str())).ok_or_else(|| MorseError::MissingComposite(g.clone(), f.clone()))?;
                        row.push(pxz.index_of(gf).ok_or_else(|| MorseError::FlowData(format!("{gf} is not in hom {}->{}", objects[x], objects[z])))?);
                    }
                    rows.push(row);
                }
                compose.insert((x, y, z), rows);
            }
        }
    }
    let cat = EnrichedCat::from_hom_posets(objects, homs, &compose)?;
    Ok(FlowCat { critical, cat, vpaths: paths })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FlowReport {
    pub critical: Vec<String>,
    pub strata: usize,
    /// Product cells of the realization, by dimension.
    pub cells: Vec<usize>,
    /// Simplices of the diagonal simplicial set, by dimension.
    pub simplices: Vec<usize>,
    pub homology: HomologyReport,
    pub structure: StructuralReport,
}

impl FlowReport {
    pub fn pass(&self) -> bool {
        self.strata == self.critical.len() && self.structure.pass()
    }
}

/// `B²C(f)` with the unstable stratification.
pub fn classify_flow(fc: &FlowCat) -> Result<(StratSpace, FlowReport), MorseError> {
    let (strat, table) = enriched_stratification(&fc.cat, Side::Lower)?;
    let prisms = fc.cat.prism_table(strat.space(), &table);
    let report = FlowReport {
        critical: fc.cat.objects().to_vec(),
        strata: strat.image().len(),
        cells: prisms.f_vector(),
        simplices: strat.space().f_vector(),
        homology: crate::simpset::homology(strat.space()),
        structure: roundtrip_enriched(&fc.cat)?,
    };
    Ok((strat, report))
}

/// Greedily adds random cover pairs while the matching stays acyclic.
pub fn random_acyclic_matching<R: Rng>(c: &RegComplex, rng: &mut R) -> Matching {
    let mut covers: Vec<(usize, usize)> = (0..c.len()).flat_map(|b| c.faces(b).iter().map(move |&(a, _)| (a, b))).collect();
    covers.shuffle(rng);
    let mut m = Matching::default();
    let mut partner = vec![None; c.len()];
    for (a, b) in covers {
        if partner[a].is_some() || partner[b].is_some() || rng.gen_bool(0.3) {
            continue;
        }
        partner[a] = Some(b);
        partner[b] = Some(a);
        if hasse_cycle(c, &partner).is_some() {
            partner[a] = None;
            partner[b] = None;
        } else {
            m.pairs.push((a, b));
        }
    }
    m
}

/// `matching.json`: a complex (simplicial set or graded poset, inline or by path) and either
/// matched pairs or a discrete Morse function by cell name.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatchingJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub complex: Option<Inline<SimpSetJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poset: Option<Inline<PosetJson>>,
    #[serde(default)]
    pub pairs: Vec<(String, String)>,
    /// Values written as integers or fractions `p/q`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub function: Option<BTreeMap<String, String>>,
}

impl MatchingJson {
    pub fn load(&self, base: &Path) -> Result<(RegComplex, Matching), MorseError> {
        let read = |p: &str| std::fs::read_to_string(base.join(p)).map_err(|e| IoError::Format(format!("{p}: {e}")));
        let c = match (&self.complex, &self.poset) {
            (Some(Inline::Value(v)), None) => RegComplex::from_simplicial(&v.to_simpset()?)?,
            (Some(Inline::Path(p)), None) => {
                RegComplex::from_simplicial(&serde_json::from_str::<SimpSetJson>(&read(p)?).map_err(IoError::from)?.to_simpset()?)?
            }
            (None, Some(Inline::Value(v))) => RegComplex::from_graded_poset(&v.to_poset()?)?,
            (None, Some(Inline::Path(p))) => {
                RegComplex::from_graded_poset(&serde_json::from_str::<PosetJson>(&read(p)?).map_err(IoError::from)?.to_poset()?)?
            }
            _ => return Err(MorseError::FlowData("exactly one of \"complex\" and \"poset\" is required".into())),
        };
        let m = match &self.function {
            Some(f) => {
                let mut values = vec![None; c.len()];
                for (name, v) in f {
                    let i = c.index_of(name).ok_or_else(|| MorseError::UnknownCell(name.clone()))?;
                    values[i] = Some(v.parse::<Rational64>().map_err(|e| MorseError::FlowData(format!("{name}: {e}")))?);
                }
                let values = values
                    .into_iter()
                    .enumerate()
                    .map(|(i, v)| v.ok_or_else(|| MorseError::FlowData(format!("no value for {}", c.name(i)))))
                    .collect::<Result<Vec<_>, _>>()?;
                morse_function_to_matching(&c, &values)?
            }
            None => Matching::from_names(&c, &self.pairs)?,
        };
        Ok((c, m))
    }
}
