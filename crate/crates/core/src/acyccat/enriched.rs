use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::{AcycCat, CategoryError};
use crate::poset::FinPoset;
use crate::simpset::{
    diagonal, normalize_pair, product, Bisimplicial, CellTable, Degeneracy, DiagonalTable, FinSimpSet, ProductKey,
    Simplex, SimplexId,
};

/// How a hom object was supplied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HomKind {
    Discrete,
    SimpSet,
    Poset,
}

/// A hom object `C(x, y)`.
#[derive(Clone, Debug)]
pub struct Hom {
    pub kind: HomKind,
    pub space: FinSimpSet,
    /// For the poset and discrete tiers: the poset and the chain of each simplex.
    pub poset: Option<(FinPoset, CellTable<Vec<usize>>)>,
}

impl Hom {
    fn from_poset(kind: HomKind, p: FinPoset) -> Self {
        let (space, table) = p.order_complex();
        Self { kind, space, poset: Some((p, table)) }
    }

    /// Vertex sequence of a simplex, as poset elements.
    pub fn elements(&self, s: &Simplex) -> Option<Vec<usize>> {
        let (_, table) = self.poset.as_ref()?;
        let chain = table.key(s.base);
        Some(s.degen.values().iter().map(|&v| chain[v]).collect())
    }

    /// The simplex with the given weakly increasing vertex sequence.
    pub fn simplex_of(&self, seq: &[usize]) -> Option<Simplex> {
        let (_, table) = self.poset.as_ref()?;
        let mut chain: Vec<usize> = seq.to_vec();
        chain.dedup();
        let base = table.id(&chain)?;
        let mut values = Vec::with_capacity(seq.len());
        let mut k = 0;
        for i in 0..seq.len() {
            if i > 0 && seq[i] != seq[i - 1] {
                k += 1;
            }
            values.push(k);
        }
        Some(Simplex::new(Degeneracy::from_values(values)?, base))
    }
}

type ComposeTable = HashMap<ProductKey, Simplex>;

/// A finite acyclic category enriched in finite simplicial sets.
#[derive(Clone, Debug)]
pub struct EnrichedCat {
    objects: Vec<String>,
    order: FinPoset,
    homs: BTreeMap<(usize, usize), Hom>,
    compose: BTreeMap<(usize, usize, usize), ComposeTable>,
}

impl EnrichedCat {
    /// General simplicial tier: composition given on jointly nondegenerate pairs `(g, f)`.
    pub fn new(
        objects: Vec<String>,
        homs: BTreeMap<(usize, usize), FinSimpSet>,
        compose: BTreeMap<(usize, usize, usize), ComposeTable>,
    ) -> Result<Self, CategoryError> {
        let homs = homs.into_iter().map(|(k, space)| (k, Hom { kind: HomKind::SimpSet, space, poset: None })).collect();
        Self::assemble(objects, homs, compose)
    }

    /// Poset tier: `compose[(x,y,z)][q][p]` is the element `c(q, p)` of `C(x,z)`.
    pub fn from_hom_posets(
        objects: Vec<String>,
        homs: BTreeMap<(usize, usize), FinPoset>,
        compose: &BTreeMap<(usize, usize, usize), Vec<Vec<usize>>>,
    ) -> Result<Self, CategoryError> {
        Self::from_posets_with(objects, homs, compose, HomKind::Poset)
    }

    /// The discrete tier as one-point-per-arrow hom objects.
    pub fn from_discrete(c: &AcycCat) -> Self {
        let n = c.objects().len();
        let mut homs = BTreeMap::new();
        for x in 0..n {
            for y in 0..n {
                let h = c.hom(x, y);
                if !h.is_empty() {
                    let names = h.iter().map(|&a| c.arrows()[a].name.clone()).collect();
                    homs.insert((x, y), FinPoset::antichain(names));
                }
            }
        }
        let mut compose = BTreeMap::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let (hxy, hyz) = (c.hom(x, y), c.hom(y, z));
                    if hxy.is_empty() || hyz.is_empty() {
                        continue;
                    }
                    let hxz = c.hom(x, z);
                    let table: Vec<Vec<usize>> = hyz
                        .iter()
                        .map(|&g| {
                            hxy.iter()
                                .map(|&f| {
                                    let gf = c.compose_arrows(g, f).expect("validated");
                                    hxz.iter().position(|&a| a == gf).expect("typed")
                                })
                                .collect()
                        })
                        .collect();
                    compose.insert((x, y, z), table);
                }
            }
        }
        Self::from_posets_with(c.objects().to_vec(), homs, &compose, HomKind::Discrete).expect("validated discrete category")
    }

    fn from_posets_with(
        objects: Vec<String>,
        posets: BTreeMap<(usize, usize), FinPoset>,
        compose: &BTreeMap<(usize, usize, usize), Vec<Vec<usize>>>,
        kind: HomKind,
    ) -> Result<Self, CategoryError> {
        let homs: BTreeMap<(usize, usize), Hom> = posets.into_iter().map(|(k, p)| (k, Hom::from_poset(kind, p))).collect();
        let mut tables = BTreeMap::new();
        for (&(x, y, z), c) in compose {
            let (Some(hxy), Some(hyz), Some(hxz)) = (homs.get(&(x, y)), homs.get(&(y, z)), homs.get(&(x, z))) else {
                return Err(CategoryError::Malformed(format!("composition {x},{y},{z} refers to an empty hom")));
            };
            let (pxy, pyz, pxz) = (&hxy.poset.as_ref().expect("poset").0, &hyz.poset.as_ref().expect("poset").0, &hxz.poset.as_ref().expect("poset").0);
            if c.len() != pyz.len() || c.iter().any(|row| row.len() != pxy.len() || row.iter().any(|&v| v >= pxz.len())) {
                return Err(CategoryError::Malformed(format!("composition table for {x},{y},{z} has the wrong shape")));
            }
            for q in 0..pyz.len() {
                for q2 in 0..pyz.len() {
                    for p in 0..pxy.len() {
                        for p2 in 0..pxy.len() {
                            if pyz.leq(q, q2) && pxy.leq(p, p2) && !pxz.leq(c[q][p], c[q2][p2]) {
                                return Err(CategoryError::Invalid(format!(
                                    "composition {}∘{} -> {}∘{} is not monotone",
                                    pyz.name(q),
                                    pxy.name(p),
                                    pyz.name(q2),
                                    pxy.name(p2)
                                )));
                            }
                        }
                    }
                }
            }
            let (prod, keys) = product(&hyz.space, &hxy.space);
            let mut table = HashMap::new();
            for id in prod.ids() {
                let key = keys.key(id).clone();
                let qs = hyz.elements(&key.left).expect("poset");
                let ps = hxy.elements(&key.right).expect("poset");
                let seq: Vec<usize> = qs.iter().zip(&ps).map(|(&q, &p)| c[q][p]).collect();
                let s = hxz.simplex_of(&seq).expect("monotone image of a chain is a chain");
                table.insert(key, s);
            }
            tables.insert((x, y, z), table);
        }
        Self::assemble(objects, homs, tables)
    }

    fn assemble(
        objects: Vec<String>,
        homs: BTreeMap<(usize, usize), Hom>,
        compose: BTreeMap<(usize, usize, usize), ComposeTable>,
    ) -> Result<Self, CategoryError> {
        let n = objects.len();
        for (&(x, y), h) in &homs {
            if x >= n || y >= n {
                return Err(CategoryError::Malformed(format!("hom ({x},{y}) out of range")));
            }
            if x == y {
                return Err(CategoryError::Invalid(format!("{} has a non-identity endomorphism object", objects[x])));
            }
            if h.space.is_empty() {
                return Err(CategoryError::Malformed(format!("hom {}->{} listed but empty", objects[x], objects[y])));
            }
            if homs.contains_key(&(y, x)) {
                return Err(CategoryError::Invalid(format!("both {0}->{1} and {1}->{0} are nonempty", objects[x], objects[y])));
            }
        }
        let rels: Vec<(usize, usize)> = homs.keys().copied().collect();
        let order = FinPoset::from_relations(objects.clone(), &rels)?;
        let cat = Self { objects, order, homs, compose };
        cat.check()?;
        Ok(cat)
    }

    fn check(&self) -> Result<(), CategoryError> {
        let n = self.objects.len();
        for x in 0..n {
            for y in 0..n {
                if x != y && self.order.leq(x, y) && !self.homs.contains_key(&(x, y)) {
                    return Err(CategoryError::Invalid(format!("{} reaches {} but the hom is empty", self.objects[x], self.objects[y])));
                }
            }
        }
        for (&(x, y), hxy) in &self.homs {
            for (&(y2, z), hyz) in &self.homs {
                if y2 != y {
                    continue;
                }
                let Some(table) = self.compose.get(&(x, y, z)) else {
                    return Err(CategoryError::Invalid(format!("no composition {}->{}->{}", self.objects[x], self.objects[y], self.objects[z])));
                };
                let hxz = &self.homs[&(x, z)].space;
                let (_, keys) = product(&hyz.space, &hxy.space);
                for key in keys.keys.iter().flatten() {
                    let Some(t) = table.get(key) else {
                        return Err(CategoryError::Invalid(format!("composition of {} and {} missing", key.left, key.right)));
                    };
                    let dim = key.left.dim();
                    if t.dim() != dim || !hxz.contains(t.base) {
                        return Err(CategoryError::Invalid(format!("composite of {} and {} has the wrong dimension", key.left, key.right)));
                    }
                    for i in (0..=dim).filter(|_| dim > 0) {
                        let lhs = self.compose_in(x, y, z, &hyz.space.face(&key.left, i), &hxy.space.face(&key.right, i));
                        if lhs != hxz.face(t, i) {
                            return Err(CategoryError::Invalid(format!("composition does not commute with d_{i} at ({}, {})", key.left, key.right)));
                        }
                    }
                }
            }
        }
        // associativity on every level up to the top of the three homs
        for (&(w, x), h1) in &self.homs {
            for (&(x2, y), h2) in &self.homs {
                if x2 != x {
                    continue;
                }
                for (&(y2, z), h3) in &self.homs {
                    if y2 != y {
                        continue;
                    }
                    let top = [h1, h2, h3].iter().map(|h| h.space.dim().unwrap_or(0)).sum::<usize>();
                    for m in 0..=top {
                        let (a, b, c) = (h3.space.all_simplices(m), h2.space.all_simplices(m), h1.space.all_simplices(m));
                        for h in &a {
                            for g in &b {
                                for f in &c {
                                    let left = self.compose_in(w, y, z, h, &self.compose_in(w, x, y, g, f));
                                    let right = self.compose_in(w, x, z, &self.compose_in(x, y, z, h, g), f);
                                    if left != right {
                                        return Err(CategoryError::Invalid(format!("composition is not associative at ({h}, {g}, {f})")));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    /// `P(C)`.
    pub fn order(&self) -> &FinPoset {
        &self.order
    }

    pub fn hom(&self, x: usize, y: usize) -> Option<&Hom> {
        self.homs.get(&(x, y))
    }

    pub fn homs(&self) -> impl Iterator<Item = ((usize, usize), &Hom)> {
        self.homs.iter().map(|(&k, h)| (k, h))
    }

    /// True when every hom came from a poset (or a discrete set).
    pub fn is_poset_tier(&self) -> bool {
        self.homs.values().all(|h| h.poset.is_some())
    }

    pub fn compose_table(&self, x: usize, y: usize, z: usize) -> Option<&ComposeTable> {
        self.compose.get(&(x, y, z))
    }

    /// `g ∘ f` for `f ∈ C(x,y)_n`, `g ∈ C(y,z)_n`.
    pub fn compose_in(&self, x: usize, y: usize, z: usize, g: &Simplex, f: &Simplex) -> Simplex {
        let (hyz, hxy) = (&self.homs[&(y, z)].space, &self.homs[&(x, y)].space);
        let (rho, key) = normalize_pair(hyz, hxy, g.clone(), f.clone());
        let t = &self.compose[&(x, y, z)][&key];
        Simplex::new(t.degen.after(&rho), t.base)
    }

    /// The diagonal of the enriched nerve, with its cell table.
    pub fn classifying_space(&self) -> Result<(FinSimpSet, DiagonalTable<EnrichedCell>), CategoryError> {
        let nerve = EnrichedNerve(self);
        let (x, table) = diagonal(&nerve)?;
        let named = x.with_names(|id| Some(self.cell_name(table.key(id))));
        Ok((named, table))
    }

    pub fn cell_name(&self, c: &EnrichedCell) -> String {
        let objs: Vec<&str> = c.objs.iter().map(|&o| self.objects[o].as_str()).collect();
        let homs: Vec<String> = c.homs.iter().flatten().map(|s| s.to_string()).collect();
        if homs.is_empty() {
            objs.join(",")
        } else {
            format!("{}[{}]", objs.join(","), homs.join(","))
        }
    }

    /// Groups the diagonal cells by the product cell `Δᵏ × Π Δ^{dᵢ}` they triangulate.
    pub fn prism_table(&self, x: &FinSimpSet, table: &DiagonalTable<EnrichedCell>) -> PrismTable {
        let mut members: BTreeMap<PrismCell, Vec<SimplexId>> = BTreeMap::new();
        for id in x.ids() {
            members.entry(table.key(id).prism()).or_default().push(id);
        }
        let (cells, members): (Vec<PrismCell>, Vec<Vec<SimplexId>>) = members.into_iter().unzip();
        PrismTable { cells, members }
    }
}

/// A diagonal simplex of the enriched nerve: a weakly increasing object sequence with
/// one hom simplex per strict step (`None` marks an identity step).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EnrichedCell {
    pub objs: Vec<usize>,
    pub homs: Vec<Option<Simplex>>,
}

impl EnrichedCell {
    pub fn dim(&self) -> usize {
        self.objs.len() - 1
    }

    pub fn first(&self) -> usize {
        self.objs[0]
    }

    pub fn last(&self) -> usize {
        *self.objs.last().expect("nonempty")
    }

    pub fn prism(&self) -> PrismCell {
        let mut chain = self.objs.clone();
        chain.dedup();
        PrismCell { chain, homs: self.homs.iter().flatten().map(|s| s.base).collect() }
    }
}

/// A product cell: a strict object chain with one nondegenerate simplex per step.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrismCell {
    pub chain: Vec<usize>,
    pub homs: Vec<SimplexId>,
}

impl PrismCell {
    pub fn dim(&self) -> usize {
        self.chain.len() - 1 + self.homs.iter().map(|h| h.dim).sum::<usize>()
    }

    /// Number of top simplices in the standard triangulation of the product.
    pub fn multinomial(&self) -> usize {
        let fact = |n: usize| (1..=n).product::<usize>();
        let k = self.chain.len() - 1;
        fact(self.dim()) / (fact(k) * self.homs.iter().map(|h| fact(h.dim)).product::<usize>())
    }
}

#[derive(Clone, Debug)]
pub struct PrismTable {
    pub cells: Vec<PrismCell>,
    /// Diagonal simplices lying in the interior of each cell.
    pub members: Vec<Vec<SimplexId>>,
}

impl PrismTable {
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.cells.iter().map(PrismCell::dim).max();
        let mut f = vec![0; top.map_or(0, |t| t + 1)];
        for c in &self.cells {
            f[c.dim()] += 1;
        }
        f
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.cells.iter().map(|c| if c.dim() % 2 == 0 { 1 } else { -1 }).sum()
    }

    /// First cell whose top simplices are not the multinomial count.
    pub fn multinomial_mismatch(&self) -> Option<&PrismCell> {
        self.cells.iter().zip(&self.members).find_map(|(c, m)| {
            let top = m.iter().filter(|id| id.dim == c.dim()).count();
            (top != c.multinomial()).then_some(c)
        })
    }
}

/// The enriched nerve as a bisimplicial set.
pub struct EnrichedNerve<'a>(pub &'a EnrichedCat);

impl EnrichedNerve<'_> {
    fn sequences(&self, n: usize) -> Vec<Vec<usize>> {
        let c = self.0;
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n + 1);
        fn go(c: &EnrichedCat, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == n + 1 {
                out.push(cur.clone());
                return;
            }
            let last = cur.last().copied();
            for y in 0..c.objects.len() {
                if last.is_none_or(|x| x == y || c.homs.contains_key(&(x, y))) {
                    cur.push(y);
                    go(c, n, cur, out);
                    cur.pop();
                }
            }
        }
        go(c, n, &mut cur, &mut out);
        out
    }
}

impl Bisimplicial for EnrichedNerve<'_> {
    type Cell = EnrichedCell;

    fn diagonal_cells(&self, n: usize) -> Vec<EnrichedCell> {
        let c = self.0;
        let level: HashMap<(usize, usize), Vec<Simplex>> = c.homs.iter().map(|(&k, h)| (k, h.space.all_simplices(n))).collect();
        let mut out = Vec::new();
        for objs in self.sequences(n) {
            let mut partial: Vec<Vec<Option<Simplex>>> = vec![Vec::new()];
            for w in objs.windows(2) {
                let choices: Vec<Option<Simplex>> =
                    if w[0] == w[1] { vec![None] } else { level[&(w[0], w[1])].iter().cloned().map(Some).collect() };
                partial = partial
                    .into_iter()
                    .flat_map(|p| {
                        choices.iter().map(move |s| {
                            let mut q = p.clone();
                            q.push(s.clone());
                            q
                        })
                    })
                    .collect();
            }
            out.extend(partial.into_iter().map(|homs| EnrichedCell { objs: objs.clone(), homs }));
        }
        out
    }

    fn max_nondegenerate_dim(&self) -> usize {
        let c = self.0;
        let mut best = 0;
        for level in c.order.chains() {
            for ch in level {
                let d = ch.len() - 1 + ch.windows(2).map(|w| c.homs[&(w[0], w[1])].space.dim().unwrap_or(0)).sum::<usize>();
                best = best.max(d);
            }
        }
        best
    }

    fn face(&self, cell: &EnrichedCell, i: usize) -> EnrichedCell {
        let c = self.0;
        let n = cell.dim();
        let vert: Vec<Option<Simplex>> = cell
            .objs
            .windows(2)
            .zip(&cell.homs)
            .map(|(w, s)| s.as_ref().map(|s| c.homs[&(w[0], w[1])].space.face(s, i)))
            .collect();
        let mut objs = cell.objs.clone();
        objs.remove(i);
        let mut homs = vert;
        if i == 0 {
            homs.remove(0);
        } else if i == n {
            homs.pop();
        } else {
            let (a, b, d) = (cell.objs[i - 1], cell.objs[i], cell.objs[i + 1]);
            let merged = match (homs[i - 1].take(), homs[i].take()) {
                (None, s) | (s, None) => s,
                (Some(f), Some(g)) => Some(c.compose_in(a, b, d, &g, &f)),
            };
            homs.splice(i - 1..=i, [merged]);
        }
        EnrichedCell { objs, homs }
    }

    fn is_degenerate_at(&self, cell: &EnrichedCell, j: usize) -> bool {
        cell.objs[j] == cell.objs[j + 1]
            && cell.homs.iter().flatten().all(|s| {
                let v = s.degen.values();
                v[j] == v[j + 1]
            })
    }

    fn cell_dim(&self, cell: &EnrichedCell) -> usize {
        cell.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::simpset::{find_isomorphism, homology};

    #[test]
    fn discrete_tier_agrees_with_the_nerve() {
        for c in [fixtures::figure1(), AcycCat::ordinal(3)] {
            let e = EnrichedCat::from_discrete(&c);
            let (d, _) = e.classifying_space().unwrap();
            let (b, _) = c.classifying_space();
            assert!(find_isomorphism(&d, &b).is_some());
        }
    }

    #[test]
    fn suspension_of_a_circle() {
        let e = fixtures::suspension_circle();
        let (x, table) = e.classifying_space().unwrap();
        let h = homology(&x);
        assert!(h.is_free_with(&[1, 0, 1]));
        assert_eq!(x.euler_characteristic(), 2);
        let prisms = e.prism_table(&x, &table);
        assert_eq!(prisms.f_vector(), vec![2, 3, 3]);
        assert!(prisms.multinomial_mismatch().is_none());
    }

    #[test]
    fn hexagon_prisms_and_diagonal() {
        let e = fixtures::hexagon_flow();
        let (x, table) = e.classifying_space().unwrap();
        assert_eq!(x.f_vector(), vec![2, 12, 12]);
        let prisms = e.prism_table(&x, &table);
        assert_eq!(prisms.f_vector(), vec![2, 6, 6]);
        assert_eq!(prisms.euler_characteristic(), x.euler_characteristic());
        assert!(prisms.multinomial_mismatch().is_none());
    }

    #[test]
    fn poset_composition_is_monotone_and_associative() {
        // 0 -> 1 -> 2 with homs [1] and composite into [1] by max
        let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let two = |a: &str, b: &str| FinPoset::from_relations(names(&[a, b]), &[(0, 1)]).unwrap();
        let mut homs = BTreeMap::new();
        homs.insert((0, 1), two("a", "b"));
        homs.insert((1, 2), two("c", "d"));
        homs.insert((0, 2), two("e", "f"));
        let mut compose = BTreeMap::new();
        compose.insert((0, 1, 2), vec![vec![0, 1], vec![1, 1]]);
        let e = EnrichedCat::from_hom_posets(names(&["x", "y", "z"]), homs.clone(), &compose).unwrap();
        let (x, table) = e.classifying_space().unwrap();
        assert!(homology(&x).is_point());
        assert!(e.prism_table(&x, &table).multinomial_mismatch().is_none());
        compose.insert((0, 1, 2), vec![vec![1, 0], vec![1, 1]]);
        assert!(EnrichedCat::from_hom_posets(names(&["x", "y", "z"]), homs, &compose).is_err());
    }
}
