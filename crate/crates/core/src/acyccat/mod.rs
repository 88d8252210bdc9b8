//! Finite acyclic categories: validation, nerves, comma categories and isomorphism.
//!
//! The discrete tier keeps identities implicit; only non-identity arrows are stored,
//! together with the composition table on composable pairs. Acyclicity makes that
//! table closed: a composite of non-identity arrows is never an identity.

mod enriched;
mod io;
mod iso;
mod random;

pub use enriched::{EnrichedCat, EnrichedCell, EnrichedNerve, Hom, HomKind, PrismCell, PrismTable};
pub use io::{CategoryJson, ComposeJson, GenSimplexJson, HomJson, LoadedCategory};
pub use iso::{iso_check, CatIso, Mismatch};
pub use random::{random_category, random_free_category, random_modular_category};

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poset::FinPoset;
use crate::simpset::{CellTable, Degeneracy, FinSimpSet, SimpSetError};

#[derive(Debug, Error)]
pub enum CategoryError {
    #[error("malformed category data: {0}")]
    Malformed(String),
    #[error("category fails validation: {0}")]
    Invalid(String),
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("operation needs the discrete tier")]
    UnsupportedTier,
    #[error(transparent)]
    SimpSet(#[from] SimpSetError),
    #[error(transparent)]
    Io(#[from] crate::simpset::io::IoError),
    #[error(transparent)]
    Poset(#[from] crate::poset::PosetError),
}

/// Raw presentation of a discrete category, before validation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CategoryData {
    pub objects: Vec<String>,
    /// `(name, source, target)` for every non-identity arrow.
    pub arrows: Vec<(String, String, String)>,
    /// `(g, f, g∘f)` for every composable pair of non-identity arrows.
    pub compose: Vec<(String, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomVerdict {
    pub axiom: String,
    pub pass: bool,
    pub witness: Option<String>,
}

impl AxiomVerdict {
    fn new(axiom: &str, witness: Option<String>) -> Self {
        Self { axiom: axiom.to_string(), pass: witness.is_none(), witness }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryReport {
    pub verdicts: Vec<AxiomVerdict>,
    /// Every `P(C)_{<x}` is finite.
    pub locally_finite: bool,
}

impl CategoryReport {
    pub fn pass(&self) -> bool {
        self.verdicts.iter().all(|v| v.pass)
    }

    pub fn verdict(&self, axiom: &str) -> Option<&AxiomVerdict> {
        self.verdicts.iter().find(|v| v.axiom == axiom)
    }

    pub fn failures(&self) -> String {
        let v: Vec<String> = self
            .verdicts
            .iter()
            .filter(|v| !v.pass)
            .map(|v| format!("{} ({})", v.axiom, v.witness.as_deref().unwrap_or("")))
            .collect();
        v.join("; ")
    }
}

struct Indexed {
    arrows: Vec<Arrow>,
    compose: BTreeMap<(usize, usize), usize>,
}

impl CategoryData {
    fn index(&self) -> Result<Indexed, CategoryError> {
        let mut names: HashMap<&str, ()> = HashMap::new();
        for o in &self.objects {
            if names.insert(o.as_str(), ()).is_some() {
                return Err(CategoryError::Malformed(format!("duplicate name {o}")));
            }
        }
        let obj = |n: &str| {
            self.objects.iter().position(|o| o == n).ok_or_else(|| CategoryError::Malformed(format!("unknown object {n}")))
        };
        let mut arrows = Vec::with_capacity(self.arrows.len());
        for (name, s, t) in &self.arrows {
            if names.insert(name.as_str(), ()).is_some() {
                return Err(CategoryError::Malformed(format!("duplicate name {name}")));
            }
            arrows.push(Arrow { name: name.clone(), source: obj(s)?, target: obj(t)? });
        }
        let arrow = |n: &str| {
            arrows.iter().position(|a| a.name == n).ok_or_else(|| CategoryError::Malformed(format!("unknown arrow {n}")))
        };
        let mut compose = BTreeMap::new();
        for (g, f, gf) in &self.compose {
            let (ig, i_f, igf) = (arrow(g)?, arrow(f)?, arrow(gf)?);
            let (a, b, c) = (&arrows[ig], &arrows[i_f], &arrows[igf]);
            if b.target != a.source || c.source != b.source || c.target != a.target {
                return Err(CategoryError::Malformed(format!("composite {g}∘{f} = {gf} is ill-typed")));
            }
            if let Some(prev) = compose.insert((ig, i_f), igf) {
                if prev != igf {
                    return Err(CategoryError::Malformed(format!("{g}∘{f} listed twice with different values")));
                }
            }
        }
        Ok(Indexed { arrows, compose })
    }

    /// Checks the axioms of an acyclic category; structural errors are `Err`.
    pub fn validate(&self) -> Result<CategoryReport, CategoryError> {
        let Indexed { arrows, compose } = self.index()?;
        let n = self.objects.len();
        let mut hom = vec![vec![Vec::new(); n]; n];
        for (i, a) in arrows.iter().enumerate() {
            hom[a.source][a.target].push(i);
        }
        let mut verdicts = Vec::new();

        let mut w = None;
        'a1: for x in 0..n {
            for y in x + 1..n {
                if let (Some(&f), Some(&g)) = (hom[x][y].first(), hom[y][x].first()) {
                    w = Some(format!("{}: {}->{} and {}: {}->{}", arrows[f].name, self.objects[x], self.objects[y], arrows[g].name, self.objects[y], self.objects[x]));
                    break 'a1;
                }
            }
        }
        verdicts.push(AxiomVerdict::new("opposite-homs-empty", w));

        let w = (0..n).find_map(|x| hom[x][x].first().map(|&f| format!("{} is a non-identity endomorphism of {}", arrows[f].name, self.objects[x])));
        verdicts.push(AxiomVerdict::new("endomorphisms-trivial", w));

        let mut w = None;
        'tot: for (ig, g) in arrows.iter().enumerate() {
            for (i_f, f) in arrows.iter().enumerate() {
                if f.target == g.source && !compose.contains_key(&(ig, i_f)) {
                    w = Some(format!("{}∘{} missing", g.name, f.name));
                    break 'tot;
                }
            }
        }
        verdicts.push(AxiomVerdict::new("composition-total", w));

        let mut w = None;
        'assoc: for (&(h, g), &hg) in &compose {
            for (&(g2, f), &gf) in &compose {
                if g2 != g {
                    continue;
                }
                match (compose.get(&(hg, f)), compose.get(&(h, gf))) {
                    (Some(a), Some(b)) if a == b => {}
                    _ => {
                        w = Some(format!("({}∘{})∘{} != {}∘({}∘{})", arrows[h].name, arrows[g].name, arrows[f].name, arrows[h].name, arrows[g].name, arrows[f].name));
                        break 'assoc;
                    }
                }
            }
        }
        verdicts.push(AxiomVerdict::new("associative", w));

        // reachability must be a partial order
        let rels: Vec<(usize, usize)> = arrows.iter().map(|a| (a.source, a.target)).filter(|(s, t)| s != t).collect();
        let w = match FinPoset::from_relations(self.objects.clone(), &rels) {
            Err(e) => Some(e.to_string()),
            Ok(p) => (0..n)
                .flat_map(|x| (0..n).map(move |y| (x, y)))
                .find(|&(x, y)| x != y && p.leq(x, y) && hom[x][y].is_empty())
                .map(|(x, y)| format!("{} reaches {} but the hom is empty", self.objects[x], self.objects[y])),
        };
        verdicts.push(AxiomVerdict::new("reachability-order", w));

        Ok(CategoryReport { verdicts, locally_finite: true })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A morphism: an implicit identity or a stored arrow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mor {
    Id(usize),
    Arrow(usize),
}

/// A nondegenerate chain `x₀ → x₁ → … → x_k` of non-identity arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Chain {
    pub objects: Vec<usize>,
    pub arrows: Vec<usize>,
}

impl Chain {
    pub fn dim(&self) -> usize {
        self.arrows.len()
    }

    pub fn first(&self) -> usize {
        self.objects[0]
    }

    pub fn last(&self) -> usize {
        *self.objects.last().expect("nonempty")
    }
}

/// A comma category together with its forgetful data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comma {
    pub cat: AcycCat,
    /// The morphism of the ambient category each object stands for.
    pub objects: Vec<Mor>,
    /// The ambient arrow underlying each arrow.
    pub arrows: Vec<usize>,
}

/// A validated finite acyclic category, discrete tier.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcycCat {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    compose: BTreeMap<(usize, usize), usize>,
    hom: Vec<Vec<Vec<usize>>>,
    order: FinPoset,
}

impl AcycCat {
    pub fn from_data(data: &CategoryData) -> Result<Self, CategoryError> {
        let report = data.validate()?;
        if !report.pass() {
            return Err(CategoryError::Invalid(report.failures()));
        }
        let Indexed { arrows, compose } = data.index()?;
        Ok(Self::assemble(data.objects.clone(), arrows, compose))
    }

    fn assemble(objects: Vec<String>, arrows: Vec<Arrow>, compose: BTreeMap<(usize, usize), usize>) -> Self {
        let n = objects.len();
        let mut hom = vec![vec![Vec::new(); n]; n];
        for (i, a) in arrows.iter().enumerate() {
            hom[a.source][a.target].push(i);
        }
        let rels: Vec<(usize, usize)> = arrows.iter().map(|a| (a.source, a.target)).collect();
        let order = FinPoset::from_relations(objects.clone(), &rels).expect("validated acyclic");
        Self { objects, arrows, compose, hom, order }
    }

    pub fn to_data(&self) -> CategoryData {
        CategoryData {
            objects: self.objects.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| (a.name.clone(), self.objects[a.source].clone(), self.objects[a.target].clone()))
                .collect(),
            compose: self
                .compose
                .iter()
                .map(|(&(g, f), &gf)| (self.arrows[g].name.clone(), self.arrows[f].name.clone(), self.arrows[gf].name.clone()))
                .collect(),
        }
    }

    /// The poset viewed as a category with one arrow `a->b` for each `a < b`.
    pub fn from_poset(p: &FinPoset) -> Self {
        let n = p.len();
        let mut arrows = Vec::new();
        let mut index = HashMap::new();
        for a in 0..n {
            for b in 0..n {
                if p.lt(a, b) {
                    index.insert((a, b), arrows.len());
                    arrows.push(Arrow { name: format!("{}->{}", p.name(a), p.name(b)), source: a, target: b });
                }
            }
        }
        let mut compose = BTreeMap::new();
        for (&(b, c), &g) in &index {
            for (&(a, b2), &f) in &index {
                if b2 == b {
                    compose.insert((g, f), index[&(a, c)]);
                }
            }
        }
        Self::assemble(p.names().to_vec(), arrows, compose)
    }

    /// `[n]` as a category.
    pub fn ordinal(n: usize) -> Self {
        Self::from_poset(&FinPoset::chain(n))
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn hom(&self, x: usize, y: usize) -> &[usize] {
        &self.hom[x][y]
    }

    /// `P(C)`.
    pub fn order(&self) -> &FinPoset {
        &self.order
    }

    pub fn compose_arrows(&self, g: usize, f: usize) -> Option<usize> {
        self.compose.get(&(g, f)).copied()
    }

    pub fn source(&self, m: Mor) -> usize {
        match m {
            Mor::Id(x) => x,
            Mor::Arrow(a) => self.arrows[a].source,
        }
    }

    pub fn target(&self, m: Mor) -> usize {
        match m {
            Mor::Id(x) => x,
            Mor::Arrow(a) => self.arrows[a].target,
        }
    }

    /// `g ∘ f`, or `None` when not composable.
    pub fn compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        if self.target(f) != self.source(g) {
            return None;
        }
        Some(match (g, f) {
            (Mor::Id(_), m) | (m, Mor::Id(_)) => m,
            (Mor::Arrow(a), Mor::Arrow(b)) => Mor::Arrow(self.compose[&(a, b)]),
        })
    }

    pub fn mor_name(&self, m: Mor) -> String {
        match m {
            Mor::Id(x) => format!("1_{}", self.objects[x]),
            Mor::Arrow(a) => self.arrows[a].name.clone(),
        }
    }

    /// All morphisms with target `x`, identity first.
    pub fn morphisms_into(&self, x: usize) -> Vec<Mor> {
        let mut v = vec![Mor::Id(x)];
        v.extend((0..self.arrows.len()).filter(|&a| self.arrows[a].target == x).map(Mor::Arrow));
        v
    }

    pub fn morphisms_out_of(&self, x: usize) -> Vec<Mor> {
        let mut v = vec![Mor::Id(x)];
        v.extend((0..self.arrows.len()).filter(|&a| self.arrows[a].source == x).map(Mor::Arrow));
        v
    }

    pub fn opposite(&self) -> Self {
        let arrows = self
            .arrows
            .iter()
            .map(|a| Arrow { name: format!("{}^op", a.name), source: a.target, target: a.source })
            .collect();
        let compose = self.compose.iter().map(|(&(g, f), &gf)| ((f, g), gf)).collect();
        Self::assemble(self.objects.clone(), arrows, compose)
    }

    /// Nondegenerate `k`-chains, grouped by `k`.
    pub fn chains(&self) -> Vec<Vec<Chain>> {
        let mut out = Vec::new();
        let mut level: Vec<Chain> = (0..self.objects.len()).map(|x| Chain { objects: vec![x], arrows: Vec::new() }).collect();
        while !level.is_empty() {
            let mut next = Vec::new();
            for c in &level {
                for (a, arr) in self.arrows.iter().enumerate() {
                    if arr.source == c.last() {
                        let mut d = c.clone();
                        d.objects.push(arr.target);
                        d.arrows.push(a);
                        next.push(d);
                    }
                }
            }
            out.push(level);
            level = next;
        }
        out
    }

    /// `d_i` of a chain: drop an end, or compose at an inner object.
    pub fn chain_face(&self, c: &Chain, i: usize) -> Chain {
        let k = c.dim();
        let mut d = c.clone();
        d.objects.remove(i);
        if i == 0 {
            d.arrows.remove(0);
        } else if i == k {
            d.arrows.pop();
        } else {
            let gf = self.compose[&(c.arrows[i], c.arrows[i - 1])];
            d.arrows.splice(i - 1..=i, [gf]);
        }
        d
    }

    /// The nondegenerate nerve realized as a simplicial set, with its chain table.
    pub fn classifying_space(&self) -> (FinSimpSet, CellTable<Chain>) {
        let (x, table) = FinSimpSet::from_keys(self.chains(), |c, i| {
            let f = self.chain_face(c, i);
            (Degeneracy::identity(f.dim()), f)
        })
        .expect("nerve of an acyclic category");
        let named = x.with_names(|id| Some(self.chain_name(table.key(id))));
        (named, table)
    }

    pub fn chain_name(&self, c: &Chain) -> String {
        if c.arrows.is_empty() {
            self.objects[c.first()].clone()
        } else {
            let names: Vec<&str> = c.arrows.iter().rev().map(|&a| self.arrows[a].name.as_str()).collect();
            format!("({})", names.join(","))
        }
    }

    /// `C↓x`: objects are the morphisms into `x` (with `1_x` first), arrows the commuting triangles.
    pub fn comma_below(&self, x: usize) -> Comma {
        let objs = self.morphisms_into(x);
        self.comma(objs, |m| self.source(m), |h, f, g| self.compose(g, Mor::Arrow(h)) == Some(f))
    }

    /// `x↓C`: objects are the morphisms out of `x`, with `1_x` first.
    pub fn comma_above(&self, x: usize) -> Comma {
        let objs = self.morphisms_out_of(x);
        self.comma(objs, |m| self.target(m), |h, f, g| self.compose(Mor::Arrow(h), f) == Some(g))
    }

    fn comma(
        &self,
        objs: Vec<Mor>,
        free_end: impl Fn(Mor) -> usize,
        commutes: impl Fn(usize, Mor, Mor) -> bool,
    ) -> Comma {
        let names: Vec<String> = objs.iter().map(|&m| self.mor_name(m)).collect();
        let mut arrows = Vec::new();
        let mut lookup = HashMap::new();
        for (i, &f) in objs.iter().enumerate() {
            for (j, &g) in objs.iter().enumerate() {
                if i == j {
                    continue;
                }
                for (h, a) in self.arrows.iter().enumerate() {
                    if (a.source, a.target) == (free_end(f), free_end(g)) && commutes(h, f, g) {
                        lookup.insert((i, j, h), arrows.len());
                        arrows.push((Arrow { name: format!("{}:{}->{}", a.name, names[i], names[j]), source: i, target: j }, h));
                    }
                }
            }
        }
        let mut compose = BTreeMap::new();
        for (gi, (g, hg)) in arrows.iter().enumerate() {
            for (fi, (f, hf)) in arrows.iter().enumerate() {
                if f.target == g.source {
                    let h = self.compose[&(*hg, *hf)];
                    compose.insert((gi, fi), lookup[&(f.source, g.target, h)]);
                }
            }
        }
        let under = arrows.iter().map(|(_, h)| *h).collect();
        let cat = Self::assemble(names, arrows.into_iter().map(|(a, _)| a).collect(), compose);
        Comma { cat, objects: objs, arrows: under }
    }

    /// Full subcategory on the given objects, with the inclusion of arrows.
    pub fn full_subcategory(&self, objs: &[usize]) -> (AcycCat, Vec<usize>) {
        let pos = |x: usize| objs.iter().position(|&o| o == x);
        let kept: Vec<usize> =
            (0..self.arrows.len()).filter(|&a| pos(self.arrows[a].source).is_some() && pos(self.arrows[a].target).is_some()).collect();
        let arrows = kept
            .iter()
            .map(|&a| {
                let ar = &self.arrows[a];
                Arrow { name: ar.name.clone(), source: pos(ar.source).expect("kept"), target: pos(ar.target).expect("kept") }
            })
            .collect();
        let mut compose = BTreeMap::new();
        for (gi, &g) in kept.iter().enumerate() {
            for (fi, &f) in kept.iter().enumerate() {
                if let Some(&gf) = self.compose.get(&(g, f)) {
                    compose.insert((gi, fi), kept.iter().position(|&k| k == gf).expect("full"));
                }
            }
        }
        let cat = Self::assemble(objs.iter().map(|&o| self.objects[o].clone()).collect(), arrows, compose);
        (cat, kept)
    }

    /// `C_{<x}`.
    pub fn below(&self, x: usize) -> (AcycCat, Vec<usize>) {
        let objs: Vec<usize> = (0..self.objects.len()).filter(|&y| self.order.lt(y, x)).collect();
        self.full_subcategory(&objs)
    }

    /// `C_{>x}`.
    pub fn above(&self, x: usize) -> (AcycCat, Vec<usize>) {
        let objs: Vec<usize> = (0..self.objects.len()).filter(|&y| self.order.lt(x, y)).collect();
        self.full_subcategory(&objs)
    }
}

impl fmt::Display for AcycCat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} objects, {} arrows", self.objects.len(), self.arrows.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::simpset::{find_isomorphism, homology, standard_simplex};

    fn data(objects: &[&str], arrows: &[(&str, &str, &str)], compose: &[(&str, &str, &str)]) -> CategoryData {
        let s = |v: &str| v.to_string();
        CategoryData {
            objects: objects.iter().map(|o| s(o)).collect(),
            arrows: arrows.iter().map(|(a, b, c)| (s(a), s(b), s(c))).collect(),
            compose: compose.iter().map(|(a, b, c)| (s(a), s(b), s(c))).collect(),
        }
    }

    #[test]
    fn figure_one_validates() {
        let d = fixtures::figure1_data();
        assert!(d.validate().unwrap().pass());
    }

    #[test]
    fn opposite_pair_fails_first_axiom() {
        let d = data(&["x", "y"], &[("f", "x", "y"), ("g", "y", "x")], &[]);
        let r = d.validate().unwrap();
        assert!(!r.verdict("opposite-homs-empty").unwrap().pass);
    }

    #[test]
    fn monoid_fails_second_axiom() {
        let d = data(&["x"], &[("e", "x", "x")], &[("e", "e", "e")]);
        let r = d.validate().unwrap();
        assert!(!r.verdict("endomorphisms-trivial").unwrap().pass);
        assert!(AcycCat::from_data(&d).is_err());
    }

    #[test]
    fn malformed_tables_are_errors() {
        let d = data(&["x", "y"], &[("f", "x", "y")], &[("f", "f", "f")]);
        assert!(matches!(d.validate(), Err(CategoryError::Malformed(_))));
    }

    #[test]
    fn nerve_of_figure_one() {
        let c = fixtures::figure1();
        let (bc, _) = c.classifying_space();
        assert_eq!(bc.f_vector(), vec![3, 5, 2]);
        assert_eq!(bc.euler_characteristic(), 0);
        assert!(homology(&bc).is_free_with(&[1, 1]));
    }

    #[test]
    fn ordinals_give_simplices() {
        for n in 0..=4 {
            let (b, _) = AcycCat::ordinal(n).classifying_space();
            assert!(find_isomorphism(&b, &standard_simplex(n)).is_some());
        }
    }

    #[test]
    fn comma_categories_of_figure_one() {
        let c = fixtures::figure1();
        let z = c.object_index("z").unwrap();
        let Comma { cat: below, objects: objs, .. } = c.comma_below(z);
        assert_eq!(objs.len(), 5);
        // the two triangles through v, and one arrow from each object into 1_z
        assert_eq!(below.arrows().len(), 6);
        let rest: Vec<usize> = (1..5).collect();
        assert_eq!(objs[0], Mor::Id(z));
        assert_eq!(below.full_subcategory(&rest).0.arrows().len(), 2);
        let y = c.object_index("y").unwrap();
        let Comma { cat: above, objects: objs, .. } = c.comma_above(y);
        assert_eq!(objs.len(), 3);
        assert_eq!(above.arrows().len(), 2);
        assert!(above.full_subcategory(&[1, 2]).0.arrows().is_empty());
        let x = c.object_index("x").unwrap();
        let bx = c.comma_below(x).cat;
        assert_eq!((bx.objects().len(), bx.arrows().len()), (1, 0));
        let (bz, _) = below.classifying_space();
        assert_eq!(bz.f_vector(), vec![5, 6, 2]);
    }

    #[test]
    fn chain_counts_match_weighted_object_chains() {
        let c = fixtures::figure1();
        let p = c.order();
        let weighted: Vec<usize> = p
            .chains()
            .iter()
            .map(|lvl| lvl.iter().map(|ch| ch.windows(2).map(|w| c.hom(w[0], w[1]).len()).product::<usize>()).sum())
            .collect();
        let (bc, _) = c.classifying_space();
        assert_eq!(bc.f_vector(), weighted);
    }
}
