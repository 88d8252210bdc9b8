//! Poset-labelled simplicial sets and the finite criteria for stratifications.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poset::{FinPoset, PosetError, PosetJson};
use crate::simpset::io::{IoError, SimpSetJson};
use crate::simpset::{join, simplicial_complex, FinSimpSet, Joined, SimplexId};

#[derive(Debug, Error)]
pub enum StratError {
    #[error("simplex {0} has no label")]
    MissingLabel(SimplexId),
    #[error("label index {0} is outside the poset")]
    BadLabel(usize),
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("join needs stratified inputs; {0}")]
    Precondition(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Io(#[from] IoError),
}

/// A simplicial set whose nondegenerate simplices carry labels in a poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratSpace {
    space: FinSimpSet,
    poset: FinPoset,
    labels: Vec<Vec<usize>>,
}

impl StratSpace {
    pub fn new(space: FinSimpSet, poset: FinPoset, labels: Vec<Vec<usize>>) -> Result<Self, StratError> {
        for id in space.ids() {
            let l = *labels.get(id.dim).and_then(|r| r.get(id.index)).ok_or(StratError::MissingLabel(id))?;
            if l >= poset.len() {
                return Err(StratError::BadLabel(l));
            }
        }
        Ok(Self { space, poset, labels })
    }

    pub fn space(&self) -> &FinSimpSet {
        &self.space
    }

    pub fn poset(&self) -> &FinPoset {
        &self.poset
    }

    pub fn label(&self, id: SimplexId) -> usize {
        self.labels[id.dim][id.index]
    }

    pub fn labels(&self) -> &[Vec<usize>] {
        &self.labels
    }

    pub fn label_name(&self, id: SimplexId) -> &str {
        self.poset.name(self.label(id))
    }

    /// Labels that occur, ascending; this is `P(X)` as a subset of `Λ`.
    pub fn image(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.labels.iter().flatten().copied().collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.poset.len()
    }

    pub fn stratum(&self, l: usize) -> Vec<SimplexId> {
        self.space.ids().filter(|&id| self.label(id) == l).collect()
    }

    fn closure_mask(&self, l: usize) -> CellMask {
        let mut m = CellMask::new(&self.space);
        for id in self.stratum(l) {
            for c in self.space.closure_of(id) {
                m.set(c);
            }
        }
        m
    }

    /// Closed cells of `cl(e_λ)`.
    pub fn closure(&self, l: usize) -> Vec<SimplexId> {
        self.closure_mask(l).members(&self.space)
    }

    pub fn closure_by_name(&self, name: &str) -> Result<Vec<SimplexId>, StratError> {
        let l = self.poset.index_of(name).ok_or_else(|| StratError::UnknownLabel(name.into()))?;
        Ok(self.closure(l))
    }

    /// Labels of the cells in `cl(e_λ)`.
    pub fn closure_labels(&self, l: usize) -> Vec<usize> {
        let mut v: Vec<usize> = self.closure(l).into_iter().map(|c| self.label(c)).collect();
        v.sort();
        v.dedup();
        v
    }

    pub fn check_conditions(&self) -> StratReport {
        check(self)
    }

    /// Subset-enumeration oracle for (1), (2) and (5); `None` above 12 occurring labels.
    pub fn check_exhaustive(&self) -> Option<ExhaustiveReport> {
        exhaustive(self)
    }
}

/// Membership table over all nondegenerate simplices.
#[derive(Clone, Debug)]
struct CellMask {
    bits: Vec<Vec<bool>>,
}

impl CellMask {
    fn new(x: &FinSimpSet) -> Self {
        Self { bits: x.f_vector().iter().map(|&n| vec![false; n]).collect() }
    }

    fn set(&mut self, id: SimplexId) {
        self.bits[id.dim][id.index] = true;
    }

    fn has(&self, id: SimplexId) -> bool {
        self.bits[id.dim][id.index]
    }

    fn members(&self, x: &FinSimpSet) -> Vec<SimplexId> {
        x.ids().filter(|&id| self.has(id)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    /// The cell the failure is read off.
    pub cell: SimplexId,
    /// The stratum label under test.
    pub label: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub pass: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    fn ok() -> Self {
        Self { pass: true, witness: None }
    }

    fn fail(cell: SimplexId, label: &str, detail: String) -> Self {
        Self { pass: false, witness: Some(Witness { cell, label: label.to_string(), detail }) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StratReport {
    pub continuous: Verdict,
    pub open: Verdict,
    pub closure_order: Verdict,
    pub frontier: Verdict,
    pub closed_unions: Verdict,
    pub connected: BTreeMap<String, Verdict>,
    pub locally_closed: BTreeMap<String, Verdict>,
    pub closure_finite: bool,
    pub weak_topology: bool,
}

impl StratReport {
    /// Open, continuous, with connected locally closed strata.
    pub fn is_stratification(&self) -> bool {
        self.continuous.pass
            && self.open.pass
            && self.connected.values().all(|v| v.pass)
            && self.locally_closed.values().all(|v| v.pass)
    }

    pub fn all_pass(&self) -> bool {
        self.is_stratification() && self.closure_order.pass && self.frontier.pass && self.closed_unions.pass
    }

    pub fn conditions(&self) -> [(&'static str, &Verdict); 5] {
        [
            ("continuous", &self.continuous),
            ("open", &self.open),
            ("closure-order", &self.closure_order),
            ("frontier", &self.frontier),
            ("closed-unions", &self.closed_unions),
        ]
    }

    /// First failing verdict, in report order.
    pub fn first_witness(&self) -> Option<&Witness> {
        self.conditions()
            .into_iter()
            .map(|(_, v)| v)
            .chain(self.connected.values())
            .chain(self.locally_closed.values())
            .find_map(|v| v.witness.as_ref())
    }

    pub fn tap_lines(&self) -> Vec<String> {
        let mut rows: Vec<(String, &Verdict)> = self.conditions().into_iter().map(|(n, v)| (n.to_string(), v)).collect();
        rows.extend(self.connected.iter().map(|(k, v)| (format!("connected {k}"), v)));
        rows.extend(self.locally_closed.iter().map(|(k, v)| (format!("locally-closed {k}"), v)));
        let mut out = vec![format!("1..{}", rows.len() + 2)];
        for (i, (name, v)) in rows.iter().enumerate() {
            match &v.witness {
                None => out.push(format!("ok {} - {name}", i + 1)),
                Some(w) => out.push(format!("not ok {} - {name} # cell {} label {}: {}", i + 1, w.cell, w.label, w.detail)),
            }
        }
        let n = rows.len();
        out.push(format!("{} {} - closure-finite", if self.closure_finite { "ok" } else { "not ok" }, n + 1));
        out.push(format!("{} {} - weak-topology", if self.weak_topology { "ok" } else { "not ok" }, n + 2));
        out
    }
}

fn check(x: &StratSpace) -> StratReport {
    let s = &x.space;
    let p = &x.poset;
    let image = x.image();
    let strata: BTreeMap<usize, Vec<SimplexId>> = image.iter().map(|&l| (l, x.stratum(l))).collect();
    let closures: BTreeMap<usize, CellMask> = image.iter().map(|&l| (l, x.closure_mask(l))).collect();

    // (1) cl(e_λ) ⊆ ∪_{μ≤λ} e_μ
    let mut continuous = Verdict::ok();
    'outer: for &l in &image {
        for &c in &strata[&l] {
            for f in s.closure_of(c) {
                if !p.leq(x.label(f), l) {
                    continuous = Verdict::fail(
                        c,
                        p.name(l),
                        format!("face {} has label {}, not below {}", s.label(f), x.label_name(f), p.name(l)),
                    );
                    break 'outer;
                }
            }
        }
    }

    // (2) ∪_{μ≤λ} e_μ ⊆ cl(e_λ)
    let mut open = Verdict::ok();
    'outer: for &l in &image {
        for &m in image.iter().filter(|&&m| p.leq(m, l)) {
            if let Some(&c) = strata[&m].iter().find(|&&c| !closures[&l].has(c)) {
                open = Verdict::fail(c, p.name(l), format!("cell labelled {} is not in the closure", p.name(m)));
                break 'outer;
            }
        }
    }

    // (3) e_μ ⊆ cl(e_λ) iff μ ≤ λ
    let mut closure_order = Verdict::ok();
    'outer: for &l in &image {
        for &m in &image {
            let inside = strata[&m].iter().all(|&c| closures[&l].has(c));
            if inside == p.leq(m, l) {
                continue;
            }
            closure_order = if inside {
                let top = strata[&l]
                    .iter()
                    .copied()
                    .find(|&c| s.closure_of(c).iter().any(|f| x.label(*f) == m))
                    .expect("some cell of the stratum sees e_μ");
                Verdict::fail(top, p.name(l), format!("closure contains stratum {} which is not below", p.name(m)))
            } else {
                let c = *strata[&m].iter().find(|&&c| !closures[&l].has(c)).expect("not inside");
                Verdict::fail(c, p.name(l), format!("stratum {} is below but not inside the closure", p.name(m)))
            };
            break 'outer;
        }
    }

    // (4) e_μ ∩ cl(e_λ) ≠ ∅ ⇒ e_μ ⊆ cl(e_λ)
    let mut frontier = Verdict::ok();
    'outer: for &l in &image {
        for &m in &image {
            let hit = strata[&m].iter().any(|&c| closures[&l].has(c));
            if let Some(&c) = strata[&m].iter().find(|&&c| !closures[&l].has(c)).filter(|_| hit) {
                frontier = Verdict::fail(c, p.name(l), format!("stratum {} meets the closure only partly", p.name(m)));
                break 'outer;
            }
        }
    }

    // (5) unions of closures over closed label sets are closed. Each down-set is
    // a union of principal ones, so face-closure of the principal unions suffices.
    let mut closed_unions = Verdict::ok();
    'outer: for &l in &image {
        let mut mask = CellMask::new(s);
        for &m in image.iter().filter(|&&m| p.leq(m, l)) {
            for c in closures[&m].members(s) {
                mask.set(c);
            }
        }
        for c in mask.members(s) {
            if let Some(f) = s.facet_bases(c).into_iter().find(|f| !mask.has(*f)) {
                closed_unions = Verdict::fail(c, p.name(l), format!("face {} escapes the union", s.label(f)));
                break 'outer;
            }
        }
    }

    let mut connected = BTreeMap::new();
    let mut locally_closed = BTreeMap::new();
    for &l in &image {
        let cells = &strata[&l];
        // union-find over the closure relation restricted to the stratum
        let mut parent: Vec<usize> = (0..cells.len()).collect();
        fn root(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for (i, &c) in cells.iter().enumerate() {
            for f in s.closure_of(c) {
                if let Some(j) = cells.iter().position(|&d| d == f) {
                    let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                    parent[a] = b;
                }
            }
        }
        let r0 = root(&mut parent, 0);
        let split = (1..cells.len()).find(|&i| root(&mut parent, i) != r0);
        connected.insert(
            p.name(l).to_string(),
            match split {
                None => Verdict::ok(),
                Some(i) => Verdict::fail(cells[i], p.name(l), format!("not connected to {}", s.label(cells[0]))),
            },
        );
        // cl(e_λ) ∖ e_λ must be face-closed
        let rest: Vec<SimplexId> = closures[&l].members(s).into_iter().filter(|c| x.label(*c) != l).collect();
        let bad = rest.iter().find_map(|&c| s.facet_bases(c).into_iter().find(|f| x.label(*f) == l).map(|f| (c, f)));
        locally_closed.insert(
            p.name(l).to_string(),
            match bad {
                None => Verdict::ok(),
                Some((c, f)) => Verdict::fail(c, p.name(l), format!("boundary cell has face {} inside the stratum", s.label(f))),
            },
        );
    }

    StratReport {
        continuous,
        open,
        closure_order,
        frontier,
        closed_unions,
        connected,
        locally_closed,
        closure_finite: true,
        weak_topology: true,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExhaustiveReport {
    pub continuous: bool,
    pub open: bool,
    pub closed_unions: bool,
}

/// Reference evaluation over all subsets of the occurring labels.
fn exhaustive(x: &StratSpace) -> Option<ExhaustiveReport> {
    let image = x.image();
    let n = image.len();
    if n > 12 {
        return None;
    }
    let s = &x.space;
    let p = &x.poset;
    let cells: Vec<SimplexId> = s.ids().collect();
    let pos = |id: SimplexId| cells.iter().position(|&c| c == id).expect("cell");
    // faces as positions, computed once
    let faces: Vec<Vec<usize>> = cells.iter().map(|&c| s.facet_bases(c).into_iter().map(pos).collect()).collect();
    let closure = |set: &[bool]| -> Vec<bool> {
        let mut out = set.to_vec();
        let mut changed = true;
        while changed {
            changed = false;
            for i in 0..cells.len() {
                if out[i] {
                    for &f in &faces[i] {
                        if !out[f] {
                            out[f] = true;
                            changed = true;
                        }
                    }
                }
            }
        }
        out
    };
    let preimage = |mask: u32| -> Vec<bool> {
        cells.iter().map(|&c| image.iter().position(|&l| l == x.label(c)).is_some_and(|k| mask >> k & 1 == 1)).collect()
    };
    let down_closure = |mask: u32| -> u32 {
        let mut out = 0;
        for (k, &l) in image.iter().enumerate() {
            if (0..n).any(|j| mask >> j & 1 == 1 && p.leq(l, image[j])) {
                out |= 1 << k;
            }
        }
        out
    };
    let mut report = ExhaustiveReport { continuous: true, open: true, closed_unions: true };
    for b in 0u32..(1 << n) {
        let cl_b = down_closure(b);
        let pre_cl = preimage(cl_b);
        let cl_pre = closure(&preimage(b));
        if cl_b == b && closure(&pre_cl) != pre_cl {
            report.continuous = false;
        }
        if pre_cl.iter().zip(&cl_pre).any(|(&a, &c)| a && !c) {
            report.open = false;
        }
        if cl_b == b {
            let mut union = vec![false; cells.len()];
            for k in (0..n).filter(|k| b >> k & 1 == 1) {
                let single = closure(&preimage(1 << k));
                for (u, v) in union.iter_mut().zip(single) {
                    *u |= v;
                }
            }
            if closure(&union) != union {
                report.closed_unions = false;
            }
        }
    }
    Some(report)
}

/// Each nondegenerate simplex is its own stratum, ordered by the face relation.
pub fn simplicial_stratification(x: &FinSimpSet) -> StratSpace {
    let ids: Vec<SimplexId> = x.ids().collect();
    let mut rels = Vec::new();
    for (j, &c) in ids.iter().enumerate() {
        for f in x.facet_bases(c) {
            rels.push((ids.iter().position(|&d| d == f).expect("face"), j));
        }
    }
    let names = ids.iter().map(|&c| x.label(c)).collect::<Vec<_>>();
    let names = uniquify(names);
    let poset = FinPoset::from_relations(names, &rels).expect("face relation of a simplicial set");
    let mut labels: Vec<Vec<usize>> = x.f_vector().iter().map(|&n| vec![0; n]).collect();
    for (k, c) in ids.iter().enumerate() {
        labels[c.dim][c.index] = k;
    }
    StratSpace::new(x.clone(), poset, labels).expect("every simplex labelled")
}

fn uniquify(names: Vec<String>) -> Vec<String> {
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    names
        .into_iter()
        .map(|n| {
            let k = seen.entry(n.clone()).or_default();
            *k += 1;
            if *k == 1 {
                n
            } else {
                format!("{n}#{k}")
            }
        })
        .collect()
}

/// The poset `P ⋆ Q = P ⨿ P×Q ⨿ Q` with `λ < (λ,μ) > μ` and the product order in the middle.
pub fn stratified_join_poset(a: &FinPoset, b: &FinPoset) -> FinPoset {
    let (na, nb) = (a.len(), b.len());
    let mid = |i: usize, j: usize| na + i * nb + j;
    let right = |j: usize| na + na * nb + j;
    let mut names: Vec<String> = a.names().to_vec();
    for i in 0..na {
        for j in 0..nb {
            names.push(format!("({},{})", a.name(i), b.name(j)));
        }
    }
    names.extend(b.names().iter().cloned());
    let names = uniquify(names);
    let mut rels: Vec<(usize, usize)> = a.covers().to_vec();
    rels.extend(b.covers().iter().map(|&(x, y)| (right(x), right(y))));
    for i in 0..na {
        for j in 0..nb {
            rels.push((i, mid(i, j)));
            rels.push((right(j), mid(i, j)));
            for &(x, y) in a.covers() {
                if x == i {
                    rels.push((mid(i, j), mid(y, j)));
                }
            }
            for &(x, y) in b.covers() {
                if x == j {
                    rels.push((mid(i, j), mid(i, y)));
                }
            }
        }
    }
    FinPoset::from_relations(names, &rels).expect("join poset")
}

/// Join of stratified spaces, labelled by `P(a) ⋆ P(b)`.
pub fn join_strat(a: &StratSpace, b: &StratSpace) -> Result<StratSpace, StratError> {
    for (side, x) in [("left", a), ("right", b)] {
        let r = x.check_conditions();
        if !(r.continuous.pass && r.open.pass) {
            return Err(StratError::Precondition(format!("{side} factor is not open and continuous")));
        }
    }
    let (pa, ia) = crate::poset::face_poset(a)?;
    let (pb, ib) = crate::poset::face_poset(b)?;
    let poset = stratified_join_poset(&pa, &pb);
    let (space, table) = join(a.space(), b.space());
    let la = |id: SimplexId| ia.iter().position(|&l| l == a.label(id)).expect("in image");
    let lb = |id: SimplexId| ib.iter().position(|&l| l == b.label(id)).expect("in image");
    let (na, nb) = (pa.len(), pb.len());
    let labels = space
        .f_vector()
        .iter()
        .enumerate()
        .map(|(d, &n)| {
            (0..n)
                .map(|i| match *table.key(SimplexId::new(d, i)) {
                    Joined::Left(x) => la(x),
                    Joined::Pair(x, y) => na + la(x) * nb + lb(y),
                    Joined::Right(y) => na + na * nb + lb(y),
                })
                .collect()
        })
        .collect();
    StratSpace::new(space, poset, labels)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JoinReport {
    pub f_vector: Vec<usize>,
    pub face_poset_iso: bool,
    /// Reduced Euler characteristics of the factors and of the join.
    pub reduced_euler: (i64, i64, i64),
    pub stratification: bool,
}

impl JoinReport {
    pub fn pass(&self) -> bool {
        let (a, b, j) = self.reduced_euler;
        self.face_poset_iso && j == -a * b
    }
}

/// The join together with the face-poset and Euler characteristic laws.
pub fn join_law(a: &StratSpace, b: &StratSpace) -> Result<(StratSpace, JoinReport), StratError> {
    let j = join_strat(a, b)?;
    let (pa, _) = crate::poset::face_poset(a)?;
    let (pb, _) = crate::poset::face_poset(b)?;
    let (pj, _) = crate::poset::face_poset(&j)?;
    let reduced = |x: &StratSpace| x.space().euler_characteristic() - 1;
    let report = JoinReport {
        f_vector: j.space().f_vector(),
        face_poset_iso: pj.isomorphism(&stratified_join_poset(&pa, &pb)).is_some(),
        reduced_euler: (reduced(a), reduced(b), reduced(&j)),
        stratification: {
            let r = j.check_conditions();
            r.continuous.pass && r.open.pass
        },
    };
    Ok((j, report))
}

/// `join_strat(point, x)`; the apex stratum is named `*`.
pub fn cone_strat(x: &StratSpace) -> Result<StratSpace, StratError> {
    let pt = crate::simpset::standard_simplex(0).with_names(|_| Some("*".into()));
    let apex = StratSpace::new(pt, FinPoset::antichain(vec!["*".into()]), vec![vec![0]])?;
    join_strat(&apex, x)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Inline<T> {
    Path(String),
    Value(T),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StratJson {
    pub space: Inline<SimpSetJson>,
    pub poset: Inline<PosetJson>,
    /// Keys are `"dim:index"` simplex ids, values element names.
    pub labels: BTreeMap<String, String>,
}

impl StratJson {
    pub fn from_strat(x: &StratSpace) -> Self {
        Self {
            space: Inline::Value(SimpSetJson::from_simpset(&x.space)),
            poset: Inline::Value(PosetJson::from_poset(&x.poset)),
            labels: x.space.ids().map(|id| (id.to_string(), x.label_name(id).to_string())).collect(),
        }
    }

    /// Resolves path references relative to `base`.
    pub fn to_strat(&self, base: &std::path::Path) -> Result<StratSpace, StratError> {
        let read = |p: &str| std::fs::read_to_string(base.join(p)).map_err(|e| IoError::Format(format!("{p}: {e}")));
        let space = match &self.space {
            Inline::Value(v) => v.to_simpset()?,
            Inline::Path(p) => serde_json::from_str::<SimpSetJson>(&read(p)?).map_err(IoError::from)?.to_simpset()?,
        };
        let poset = match &self.poset {
            Inline::Value(v) => v.to_poset()?,
            Inline::Path(p) => serde_json::from_str::<PosetJson>(&read(p)?).map_err(IoError::from)?.to_poset()?,
        };
        let mut labels: Vec<Vec<usize>> = space.f_vector().iter().map(|&n| vec![usize::MAX; n]).collect();
        for (key, name) in &self.labels {
            let (d, i) = key
                .split_once(':')
                .and_then(|(d, i)| Some((d.parse::<usize>().ok()?, i.parse::<usize>().ok()?)))
                .ok_or_else(|| IoError::Format(format!("bad simplex id {key}")))?;
            let id = SimplexId::new(d, i);
            if !space.contains(id) {
                return Err(IoError::Format(format!("label for missing simplex {key}")).into());
            }
            labels[d][i] = poset.index_of(name).ok_or_else(|| StratError::UnknownLabel(name.clone()))?;
        }
        if let Some(id) = space.ids().find(|id| labels[id.dim][id.index] == usize::MAX) {
            return Err(StratError::MissingLabel(id));
        }
        StratSpace::new(space, poset, labels)
    }
}

/// A random labelled simplicial complex with at most `max_cells` simplices.
pub fn random_labelled_complex<R: Rng>(rng: &mut R, max_cells: usize) -> StratSpace {
    loop {
        let nv = rng.gen_range(1..=4);
        let nf = rng.gen_range(1..=3);
        let facets: Vec<Vec<usize>> = (0..nf)
            .map(|_| {
                let k = rng.gen_range(1..=nv.min(3));
                let mut vs: Vec<usize> = (0..nv).collect();
                vs.shuffle(rng);
                vs.truncate(k);
                vs
            })
            .collect();
        let (space, _) = simplicial_complex(&facets);
        if space.total_cells() > max_cells {
            continue;
        }
        let ids: Vec<SimplexId> = space.ids().collect();
        let mode = rng.gen_range(0..3);
        let (poset, flat): (FinPoset, Vec<usize>) = match mode {
            0 => {
                let p = FinPoset::random(rng.gen_range(1..=5), 0.4, rng);
                let flat = ids.iter().map(|_| rng.gen_range(0..p.len())).collect();
                (p, flat)
            }
            1 => {
                // labels pushed up along faces, so continuity tends to hold
                let p = FinPoset::chain(rng.gen_range(0..=3));
                let mut flat = vec![0usize; ids.len()];
                for (k, &c) in ids.iter().enumerate() {
                    let below = space.facet_bases(c).iter().map(|f| flat[ids.iter().position(|d| d == f).expect("face")]).max();
                    let bump = rng.gen_range(0..p.len());
                    flat[k] = below.map_or(bump, |b| b.max(bump));
                }
                (p, flat)
            }
            _ => {
                let s = simplicial_stratification(&space);
                let flat = ids.iter().map(|&c| s.label(c)).collect();
                (s.poset().clone(), flat)
            }
        };
        let mut labels: Vec<Vec<usize>> = space.f_vector().iter().map(|&n| vec![0; n]).collect();
        for (k, c) in ids.iter().enumerate() {
            labels[c.dim][c.index] = flat[k];
        }
        // restrict the poset to the occurring labels so that π is onto
        let tmp = StratSpace::new(space.clone(), poset.clone(), labels.clone()).expect("labels in range");
        let image = tmp.image();
        let sub = poset.subposet(&image);
        for row in labels.iter_mut() {
            for l in row.iter_mut() {
                *l = image.iter().position(|m| m == l).expect("in image");
            }
        }
        return StratSpace::new(space, sub, labels).expect("restricted labels");
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ImplicationsReport {
    pub samples: usize,
    pub seed: u64,
    /// Samples satisfying (1) and (2).
    pub open_continuous: usize,
    /// Samples satisfying (3), (4) and (5).
    pub order_frontier_closed: usize,
    pub violations: Vec<String>,
}

impl ImplicationsReport {
    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the implications among the five conditions on random samples.
pub fn implications_harness(samples: usize, seed: u64) -> ImplicationsReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ImplicationsReport { samples, seed, ..Default::default() };
    for k in 0..samples {
        let x = random_labelled_complex(&mut rng, 12);
        let r = x.check_conditions();
        let (c1, c2, c3, c4, c5) =
            (r.continuous.pass, r.open.pass, r.closure_order.pass, r.frontier.pass, r.closed_unions.pass);
        let mut fail = |what: &str| report.violations.push(format!("sample {k}: {what}"));
        if c1 && c2 != c3 {
            fail("(1) holds but (2) and (3) disagree");
        }
        if c1 && c3 && !c4 {
            fail("(1) and (3) hold but (4) fails");
        }
        if c3 && c4 && c5 && !c1 {
            fail("(3), (4), (5) hold but (1) fails");
        }
        let closure_formula = x.image().iter().all(|&l| {
            let mut lower: Vec<SimplexId> =
                x.space().ids().filter(|&c| x.poset().leq(x.label(c), l)).collect();
            lower.sort();
            x.closure(l) == lower
        });
        if (c1 && c2) != closure_formula || (c1 && c3) != closure_formula {
            fail("(1)+(2), (1)+(3) and the closure formula are not equivalent");
        }
        match x.check_exhaustive() {
            Some(e) if (e.continuous, e.open, e.closed_unions) != (c1, c2, c5) => {
                fail("singleton criteria disagree with subset enumeration")
            }
            _ => {}
        }
        if c1 && c2 {
            report.open_continuous += 1;
        }
        if c3 && c4 && c5 {
            report.order_frontier_closed += 1;
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::face_poset;
    use crate::simpset::{homology, standard_simplex, SimpSetBuilder};

    fn edge_with_labels(rels: &[(usize, usize)]) -> StratSpace {
        let x = standard_simplex(1);
        let p = FinPoset::from_relations(vec!["a".into(), "b".into(), "c".into()], rels).unwrap();
        StratSpace::new(x, p, vec![vec![0, 1], vec![2]]).unwrap()
    }

    #[test]
    fn simplicial_stratifications_pass() {
        for x in [standard_simplex(1), standard_simplex(2), standard_simplex(3)] {
            let s = simplicial_stratification(&x);
            assert!(s.check_conditions().all_pass());
            assert_eq!(s.poset().len(), x.total_cells());
        }
        let d2 = standard_simplex(2);
        let (bd, _) = d2.subcomplex(&d2.ids().filter(|c| c.dim < 2).collect::<Vec<_>>()).unwrap();
        let s = simplicial_stratification(&bd);
        assert_eq!(s.poset().len(), 6);
        assert!(s.check_conditions().all_pass());
    }

    #[test]
    fn edge_over_its_vertices() {
        assert!(edge_with_labels(&[(0, 2), (1, 2)]).check_conditions().all_pass());
        let r = edge_with_labels(&[]).check_conditions();
        assert!(!r.continuous.pass && !r.closure_order.pass);
        let w = r.continuous.witness.unwrap();
        assert_eq!((w.cell, w.label.as_str()), (SimplexId::new(1, 0), "c"));
    }

    #[test]
    fn vertex_plus_open_triangle_is_not_locally_closed() {
        let x = standard_simplex(2);
        let p = FinPoset::from_relations(vec!["s".into(), "t".into()], &[(1, 0)]).unwrap();
        // vertex 0 and the 2-cell form stratum s; everything else t
        let labels = vec![vec![0, 1, 1], vec![1, 1, 1], vec![0]];
        let r = StratSpace::new(x, p, labels).unwrap().check_conditions();
        assert!(!r.locally_closed["s"].pass);
        assert!(r.locally_closed["t"].pass);
    }

    #[test]
    fn closures_in_simplex() {
        let s = simplicial_stratification(&standard_simplex(2));
        assert_eq!(s.closure_by_name("012").unwrap().len(), 7);
        assert_eq!(s.closure_by_name("1").unwrap(), vec![SimplexId::new(0, 1)]);
        assert!(s.closure_by_name("nope").is_err());
    }

    #[test]
    fn disconnected_stratum() {
        let mut b = SimpSetBuilder::new();
        b.add_vertex(None);
        b.add_vertex(None);
        let x = b.build().unwrap();
        let s = StratSpace::new(x, FinPoset::antichain(vec!["a".into()]), vec![vec![0, 0]]).unwrap();
        assert!(!s.check_conditions().connected["a"].pass);
    }

    #[test]
    fn join_of_points() {
        let pt = |n: &str| {
            StratSpace::new(standard_simplex(0), FinPoset::antichain(vec![n.into()]), vec![vec![0]]).unwrap()
        };
        let j = join_strat(&pt("a"), &pt("b")).unwrap();
        assert_eq!(j.space().f_vector(), vec![2, 1]);
        assert_eq!(j.poset().len(), 3);
        assert!(j.check_conditions().all_pass());
    }

    #[test]
    fn join_of_one_stratum_spheres() {
        let mut b = SimpSetBuilder::new();
        b.add_vertex(None);
        b.add_vertex(None);
        let s0 = b.build().unwrap();
        // two points as a single stratum is disconnected, but (1) and (2) hold
        let s = StratSpace::new(s0, FinPoset::antichain(vec!["p".into()]), vec![vec![0, 0]]).unwrap();
        let j = join_strat(&s, &s).unwrap();
        assert_eq!(j.poset().len(), 3);
        assert!(homology(j.space()).is_free_with(&[1, 1]));
        let r = j.check_conditions();
        assert!(r.continuous.pass && r.open.pass);
    }

    #[test]
    fn join_law_on_intervals() {
        let s = simplicial_stratification(&standard_simplex(1));
        let (j, r) = join_law(&s, &s).unwrap();
        assert_eq!(j.space().f_vector(), vec![4, 6, 4, 1]);
        assert_eq!(r.reduced_euler, (0, 0, 0));
        assert!(r.pass() && r.stratification);
    }

    #[test]
    fn cone_poset_shape() {
        let s = simplicial_stratification(&standard_simplex(1));
        let c = cone_strat(&s).unwrap();
        // Λ × {b, i} ⨿ {*}
        assert_eq!(c.poset().len(), 2 * 3 + 1);
        let (fp, _) = face_poset(&c).unwrap();
        assert!(fp.isomorphism(c.poset()).is_some());
    }

    #[test]
    fn harness_smoke() {
        let r = implications_harness(50, 7);
        assert!(r.pass(), "{:?}", r.violations);
        assert!(r.open_continuous > 0);
    }

    #[test]
    fn json_round_trip() {
        let s = simplicial_stratification(&standard_simplex(2));
        let text = serde_json::to_string(&StratJson::from_strat(&s)).unwrap();
        let back: StratJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_strat(std::path::Path::new(".")).unwrap(), s);
    }
}
