//! Finite posets, order complexes and the face-poset side of regular complexes.

use std::collections::HashMap;

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::simpset::{homology, CellTable, Degeneracy, FinSimpSet, HomologyReport};
use crate::strat::StratSpace;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PosetError {
    #[error("relation has a cycle through {0}")]
    Cycle(String),
    #[error("unknown element {0}")]
    UnknownElement(String),
    #[error("duplicate element {0}")]
    DuplicateElement(String),
    #[error("stratification violates the closure condition: stratum {mu} meets the closure of {lambda} out of order")]
    NotFaceOrdered { mu: String, lambda: String },
}

/// A finite poset with its Hasse diagram and the full order relation cached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinPoset {
    names: Vec<String>,
    covers: Vec<(usize, usize)>,
    leq: Vec<Vec<bool>>,
}

impl FinPoset {
    /// Builds the poset generated by `rels` (pairs `a < b`).
    pub fn from_relations(names: Vec<String>, rels: &[(usize, usize)]) -> Result<Self, PosetError> {
        let n = names.len();
        let mut seen = HashMap::new();
        for (i, name) in names.iter().enumerate() {
            if seen.insert(name.clone(), i).is_some() {
                return Err(PosetError::DuplicateElement(name.clone()));
            }
        }
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in rels {
            if a >= n || b >= n {
                return Err(PosetError::UnknownElement(format!("#{}", a.max(b))));
            }
            leq[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if leq[i][k] {
                    for j in 0..n {
                        if leq[k][j] {
                            leq[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in i + 1..n {
                if leq[i][j] && leq[j][i] {
                    return Err(PosetError::Cycle(names[i].clone()));
                }
            }
        }
        let mut covers = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if a != b && leq[a][b] && !(0..n).any(|c| c != a && c != b && leq[a][c] && leq[c][b]) {
                    covers.push((a, b));
                }
            }
        }
        Ok(Self { names, covers, leq })
    }

    pub fn from_named(names: Vec<String>, covers: &[(String, String)]) -> Result<Self, PosetError> {
        let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let mut rels = Vec::with_capacity(covers.len());
        for (a, b) in covers {
            let ia = *index.get(a.as_str()).ok_or_else(|| PosetError::UnknownElement(a.clone()))?;
            let ib = *index.get(b.as_str()).ok_or_else(|| PosetError::UnknownElement(b.clone()))?;
            rels.push((ia, ib));
        }
        Self::from_relations(names, &rels)
    }

    /// The total order `[n] = {0 < 1 < … < n}`.
    pub fn chain(n: usize) -> Self {
        let rels: Vec<(usize, usize)> = (0..n).map(|i| (i, i + 1)).collect();
        Self::from_relations((0..=n).map(|i| i.to_string()).collect(), &rels).expect("chain")
    }

    pub fn antichain(names: Vec<String>) -> Self {
        Self::from_relations(names, &[]).expect("antichain")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a][b]
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq[a][b]
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq[a][b] || self.leq[b][a]
    }

    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn upper_covers(&self, a: usize) -> Vec<usize> {
        self.covers.iter().filter(|c| c.0 == a).map(|c| c.1).collect()
    }

    pub fn lower_covers(&self, a: usize) -> Vec<usize> {
        self.covers.iter().filter(|c| c.1 == a).map(|c| c.0).collect()
    }

    pub fn down_set(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.leq[y][x]).collect()
    }

    pub fn up_set(&self, x: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.leq[x][y]).collect()
    }

    /// Elements strictly between `a` and `b`.
    pub fn open_interval(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.len()).filter(|&y| self.lt(a, y) && self.lt(y, b)).collect()
    }

    pub fn is_down_closed(&self, set: &[usize]) -> bool {
        set.iter().all(|&x| self.down_set(x).iter().all(|y| set.contains(y)))
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.lower_covers(x).is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&x| self.upper_covers(x).is_empty()).collect()
    }

    /// Length of the longest chain ending at `x`, counted in steps.
    pub fn height(&self, x: usize) -> usize {
        self.lower_covers(x).into_iter().map(|y| self.height(y) + 1).max().unwrap_or(0)
    }

    fn depth(&self, x: usize) -> usize {
        self.upper_covers(x).into_iter().map(|y| self.depth(y) + 1).max().unwrap_or(0)
    }

    /// Elements sorted so that `a < b` implies `a` comes first.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| (self.height(x), x));
        order
    }

    /// All strict chains `x₀ < … < x_k`, grouped by `k`.
    pub fn chains(&self) -> Vec<Vec<Vec<usize>>> {
        let mut out: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut level: Vec<Vec<usize>> = (0..self.len()).map(|x| vec![x]).collect();
        while !level.is_empty() {
            let mut next = Vec::new();
            for c in &level {
                let last = *c.last().expect("nonempty");
                for y in 0..self.len() {
                    if self.lt(last, y) {
                        let mut d = c.clone();
                        d.push(y);
                        next.push(d);
                    }
                }
            }
            out.push(level);
            level = next;
        }
        out
    }

    /// The order complex: nondegenerate `k`-simplices are strict chains of length `k`.
    pub fn order_complex(&self) -> (FinSimpSet, CellTable<Vec<usize>>) {
        let (x, table) = FinSimpSet::from_keys(self.chains(), |c, i| {
            let mut f = c.clone();
            f.remove(i);
            (Degeneracy::identity(f.len() - 1), f)
        })
        .expect("chains form a simplicial set");
        let named = x.with_names(|id| {
            let c = table.key(id);
            Some(c.iter().map(|&e| self.names[e].as_str()).collect::<Vec<_>>().join("<"))
        });
        (named, table)
    }

    pub fn opposite(&self) -> Self {
        let rels: Vec<(usize, usize)> = self.covers.iter().map(|&(a, b)| (b, a)).collect();
        Self::from_relations(self.names.clone(), &rels).expect("opposite of a poset")
    }

    /// Full subposet on `elems`, in the given order.
    pub fn subposet(&self, elems: &[usize]) -> Self {
        let mut rels = Vec::new();
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                if self.lt(a, b) {
                    rels.push((i, j));
                }
            }
        }
        Self::from_relations(elems.iter().map(|&e| self.names[e].clone()).collect(), &rels).expect("subposet")
    }

    /// `P ⋆ Q`: disjoint union with every element of `P` below every element of `Q`.
    pub fn join(&self, other: &Self) -> Self {
        let n = self.len();
        let mut names: Vec<String> = self.names.clone();
        for q in &other.names {
            let mut name = q.clone();
            while names.contains(&name) {
                name.push('\'');
            }
            names.push(name);
        }
        let mut rels: Vec<(usize, usize)> = self.covers.clone();
        rels.extend(other.covers.iter().map(|&(a, b)| (a + n, b + n)));
        for a in 0..n {
            for b in 0..other.len() {
                rels.push((a, b + n));
            }
        }
        Self::from_relations(names, &rels).expect("join of posets")
    }

    /// Adjoins a least element `0̂` at index 0.
    pub fn with_bottom(&self) -> Self {
        let mut names = vec!["0^".to_string()];
        names.extend(self.names.iter().cloned());
        let mut rels: Vec<(usize, usize)> = self.covers.iter().map(|&(a, b)| (a + 1, b + 1)).collect();
        rels.extend((0..self.len()).map(|x| (0, x + 1)));
        Self::from_relations(names, &rels).expect("bottom adjoined")
    }

    pub fn least_element(&self) -> Option<usize> {
        (0..self.len()).find(|&x| (0..self.len()).all(|y| self.leq[x][y]))
    }

    fn invariant(&self, x: usize) -> (usize, usize, usize, usize, usize, usize) {
        (
            self.height(x),
            self.depth(x),
            self.down_set(x).len(),
            self.up_set(x).len(),
            self.lower_covers(x).len(),
            self.upper_covers(x).len(),
        )
    }

    /// An order isomorphism `self -> other` as a list of images, if one exists.
    pub fn isomorphism(&self, other: &Self) -> Option<Vec<usize>> {
        if self.len() != other.len() || self.covers.len() != other.covers.len() {
            return None;
        }
        let ia: Vec<_> = (0..self.len()).map(|x| self.invariant(x)).collect();
        let ib: Vec<_> = (0..other.len()).map(|x| other.invariant(x)).collect();
        let (mut sa, mut sb) = (ia.clone(), ib.clone());
        sa.sort();
        sb.sort();
        if sa != sb {
            return None;
        }
        let order = self.linear_extension();
        let mut map = vec![usize::MAX; self.len()];
        let mut used = vec![false; other.len()];
        #[allow(clippy::too_many_arguments)]
        fn go(
            k: usize,
            order: &[usize],
            a: &FinPoset,
            b: &FinPoset,
            ia: &[(usize, usize, usize, usize, usize, usize)],
            ib: &[(usize, usize, usize, usize, usize, usize)],
            map: &mut [usize],
            used: &mut [bool],
        ) -> bool {
            let Some(&x) = order.get(k) else { return true };
            for y in 0..b.len() {
                if used[y] || ia[x] != ib[y] {
                    continue;
                }
                let ok = order[..k].iter().all(|&p| a.leq(p, x) == b.leq(map[p], y) && a.leq(x, p) == b.leq(y, map[p]));
                if !ok {
                    continue;
                }
                map[x] = y;
                used[y] = true;
                if go(k + 1, order, a, b, ia, ib, map, used) {
                    return true;
                }
                used[y] = false;
            }
            map[x] = usize::MAX;
            false
        }
        go(0, &order, self, other, &ia, &ib, &mut map, &mut used).then_some(map)
    }

    /// Random poset on `n` elements: each pair `i < j` is a relation with probability `p`.
    pub fn random<R: Rng>(n: usize, p: f64, rng: &mut R) -> Self {
        let mut rels = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(p) {
                    rels.push((i, j));
                }
            }
        }
        Self::from_relations((0..n).map(|i| format!("p{i}")).collect(), &rels).expect("upper triangular")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetJson {
    pub elements: Vec<String>,
    #[serde(default)]
    pub covers: Vec<(String, String)>,
}

impl PosetJson {
    pub fn from_poset(p: &FinPoset) -> Self {
        Self {
            elements: p.names.clone(),
            covers: p.covers.iter().map(|&(a, b)| (p.names[a].clone(), p.names[b].clone())).collect(),
        }
    }

    pub fn to_poset(&self) -> Result<FinPoset, PosetError> {
        FinPoset::from_named(self.elements.clone(), &self.covers)
    }
}

/// Per-element verdict of the CW-poset necessary condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalVerdict {
    pub element: String,
    pub sphere_dim: i64,
    pub homology: HomologyReport,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CwPosetReport {
    /// Passing is necessary for being the face poset of a regular CW complex, not sufficient.
    pub necessary_only: bool,
    pub intervals: Vec<IntervalVerdict>,
    pub pass: bool,
}

fn looks_like_sphere(h: &HomologyReport, dim: i64) -> bool {
    match dim {
        d if d < 0 => h.betti.is_empty(),
        0 => h.is_free_with(&[2]),
        d => {
            let mut want = vec![0; d as usize + 1];
            want[0] = 1;
            want[d as usize] = 1;
            h.is_free_with(&want)
        }
    }
}

/// Checks that every open interval `(0̂, x)` has the homology of a sphere of the
/// dimension of its order complex. A least element is adjoined if missing.
pub fn cw_poset_necessary_check(p: &FinPoset) -> CwPosetReport {
    let (q, bottom) = match p.least_element() {
        Some(b) => (p.clone(), b),
        None => (p.with_bottom(), 0),
    };
    let mut intervals = Vec::new();
    for x in 0..q.len() {
        if x == bottom {
            continue;
        }
        let inner = q.subposet(&q.open_interval(bottom, x));
        let (oc, _) = inner.order_complex();
        let sphere_dim = oc.dim().map_or(-1, |d| d as i64);
        let h = homology(&oc);
        let pass = looks_like_sphere(&h, sphere_dim);
        intervals.push(IntervalVerdict { element: q.name(x).to_string(), sphere_dim, homology: h, pass });
    }
    let pass = intervals.iter().all(|v| v.pass);
    CwPosetReport { necessary_only: true, intervals, pass }
}

/// The face poset `P(X)`: the strata that occur, ordered by `e_μ ⊆ cl(e_λ)`.
///
/// Returns the poset together with the index in `Λ` of each of its elements.
pub fn face_poset(x: &StratSpace) -> Result<(FinPoset, Vec<usize>), PosetError> {
    let lam = x.poset();
    let used = x.image();
    let closures: Vec<Vec<usize>> = used.iter().map(|&l| x.closure_labels(l)).collect();
    let mut rels = Vec::new();
    for (i, &mu) in used.iter().enumerate() {
        for (j, &l) in used.iter().enumerate() {
            let inside = closures[j].contains(&mu);
            if inside != lam.leq(mu, l) {
                return Err(PosetError::NotFaceOrdered { mu: lam.name(mu).into(), lambda: lam.name(l).into() });
            }
            if inside && i != j {
                rels.push((i, j));
            }
        }
    }
    let names = used.iter().map(|&l| lam.name(l).to_string()).collect();
    Ok((FinPoset::from_relations(names, &rels)?, used))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simpset::find_isomorphism;
    use crate::simpset::standard_simplex;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn face_poset_of_simplex_boundary(n: usize) -> FinPoset {
        // nonempty proper subsets of {0..n}, ordered by inclusion
        let mut sets: Vec<Vec<usize>> = Vec::new();
        for mask in 1u32..(1 << (n + 1)) - 1 {
            sets.push((0..=n).filter(|i| mask >> i & 1 == 1).collect());
        }
        let mut rels = Vec::new();
        for (i, a) in sets.iter().enumerate() {
            for (j, b) in sets.iter().enumerate() {
                if a.len() + 1 == b.len() && a.iter().all(|v| b.contains(v)) {
                    rels.push((i, j));
                }
            }
        }
        let nm = sets.iter().map(|s| s.iter().map(|v| v.to_string()).collect()).collect();
        FinPoset::from_relations(nm, &rels).unwrap()
    }

    #[test]
    fn order_complex_examples() {
        let anti = FinPoset::antichain(names(&["a", "b", "c"]));
        assert_eq!(anti.order_complex().0.f_vector(), vec![3]);
        let (c2, _) = FinPoset::chain(2).order_complex();
        assert!(find_isomorphism(&c2, &standard_simplex(2)).is_some());
        let (sd, _) = face_poset_of_simplex_boundary(2).order_complex();
        assert_eq!(sd.f_vector(), vec![6, 6]);
    }

    #[test]
    fn down_and_up_sets() {
        let v = FinPoset::from_named(names(&["a", "b", "c"]), &[("a".into(), "c".into()), ("b".into(), "c".into())]).unwrap();
        let c = v.index_of("c").unwrap();
        assert_eq!(v.down_set(c), vec![0, 1, 2]);
        assert_eq!(v.down_set(0), vec![0]);
        assert_eq!(FinPoset::chain(2).down_set(2), vec![0, 1, 2]);
        assert_eq!(v.up_set(0), vec![0, 2]);
    }

    #[test]
    fn cycles_are_rejected() {
        let r = FinPoset::from_relations(names(&["a", "b"]), &[(0, 1), (1, 0)]);
        assert!(matches!(r, Err(PosetError::Cycle(_))));
    }

    #[test]
    fn hasse_diagram_drops_transitive_edges() {
        let p = FinPoset::from_relations(names(&["a", "b", "c"]), &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(p.covers(), &[(0, 1), (1, 2)]);
        assert_eq!(p.height(2), 2);
    }

    #[test]
    fn cw_check_on_simplex_face_posets() {
        // Δ¹: two vertices below an edge
        let d1 = FinPoset::from_named(names(&["a", "b", "e"]), &[("a".into(), "e".into()), ("b".into(), "e".into())]).unwrap();
        let r = cw_poset_necessary_check(&d1.with_bottom());
        assert!(r.pass && r.necessary_only);
        assert!(cw_poset_necessary_check(&face_poset_of_simplex_boundary(3)).pass);
    }

    #[test]
    fn cw_check_rejects_single_cover() {
        let p = FinPoset::from_named(names(&["a", "c"]), &[("a".into(), "c".into())]).unwrap();
        let r = cw_poset_necessary_check(&p.with_bottom());
        assert!(!r.pass);
        let bad: Vec<&str> = r.intervals.iter().filter(|v| !v.pass).map(|v| v.element.as_str()).collect();
        assert_eq!(bad, vec!["c"]);
    }

    #[test]
    fn isomorphism_of_relabelled_posets() {
        let p = face_poset_of_simplex_boundary(2);
        let q = p.opposite();
        // ∂Δ² face poset is self dual (hexagon)
        let m = p.isomorphism(&q).unwrap();
        for a in 0..p.len() {
            for b in 0..p.len() {
                assert_eq!(p.leq(a, b), q.leq(m[a], m[b]));
            }
        }
        assert!(FinPoset::chain(2).isomorphism(&FinPoset::antichain(names(&["a", "b", "c"]))).is_none());
    }

    #[test]
    fn join_of_posets() {
        let a = FinPoset::antichain(names(&["a"]));
        let b = FinPoset::antichain(names(&["b", "c"]));
        let j = a.join(&b);
        assert_eq!(j.covers().len(), 2);
        assert!(j.lt(0, 2));
    }

    #[test]
    fn json_round_trip() {
        let p = face_poset_of_simplex_boundary(2);
        let text = serde_json::to_string(&PosetJson::from_poset(&p)).unwrap();
        let back: PosetJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_poset().unwrap(), p);
    }
}
