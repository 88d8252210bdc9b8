//! Finite simplicial sets stored by their nondegenerate simplices.
//!
//! Every simplex of a [`FinSimpSet`] is written in Eilenberg–Zilber normal form
//! `s_{j1} ... s_{jk} y` with `y` nondegenerate and `j1 > ... > jk`. Internally the
//! degeneracy word is kept as the monotone surjection it induces, which makes
//! composition with face operators a matter of composing maps of ordinals.

mod diagonal;
mod homology;
mod iso;
mod map;
mod ops;
pub mod io;

pub use diagonal::{diagonal, Bisimplicial, ConstantBisimplicial, DiagonalTable};
pub use homology::{homology, homology_mod2, ChainComplex, HomologyReport, IntMatrix};
pub use iso::find_isomorphism;
pub use map::SimplicialMap;
pub(crate) use ops::standard_simplex_with_table;
pub use ops::{cone, join, product, simplicial_complex, standard_simplex, Joined, ProductKey};
pub(crate) use ops::normalize_pair;

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimpSetError {
    #[error("simplex {0} does not exist")]
    UnknownSimplex(SimplexId),
    #[error("simplex of dimension {dim} needs {expected} faces, got {got}")]
    FaceCount { dim: usize, expected: usize, got: usize },
    #[error("face {face} of a {dim}-simplex has dimension {got}")]
    FaceDimension { dim: usize, face: usize, got: usize },
    #[error("degeneracy word {0:?} is not a strictly decreasing normal form")]
    BadDegeneracyWord(Vec<usize>),
    #[error("simplicial identity d_{i} d_{j} = d_{jm1} d_{i} fails on {simplex}", jm1 = .j - 1)]
    Identity { simplex: SimplexId, i: usize, j: usize },
    #[error("face of a nondegenerate simplex is not a listed simplex")]
    MissingFace,
    #[error("dimension gap: simplices of dimension {0} exist but none of dimension {1}")]
    DimensionGap(usize, usize),
}

/// Identifier of a nondegenerate simplex. Indices are dense per dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplexId {
    pub dim: usize,
    pub index: usize,
}

impl SimplexId {
    pub const fn new(dim: usize, index: usize) -> Self {
        Self { dim, index }
    }
}

impl fmt::Display for SimplexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.dim, self.index)
    }
}

/// A monotone surjection `[n] -> [m]`, stored as the list of its values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Degeneracy(Vec<usize>);

/// Outcome of precomposing a surjection with a coface map `δ_i`.
pub(crate) enum AfterFace {
    /// `θ ∘ δ_i` is still surjective.
    Surjective(Degeneracy),
    /// `θ ∘ δ_i = δ_r ∘ θ'`: value `r` lost its only preimage.
    Drops { r: usize, rest: Degeneracy },
}

impl Degeneracy {
    pub fn identity(n: usize) -> Self {
        Self((0..=n).collect())
    }

    /// Builds from a list of values; `None` unless monotone, starting at 0, with unit steps.
    pub fn from_values(values: Vec<usize>) -> Option<Self> {
        if values.first() != Some(&0) {
            return None;
        }
        if values.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1) {
            Some(Self(values))
        } else {
            None
        }
    }

    /// `s_{j1} ... s_{jk}` applied to a simplex of dimension `target_dim`.
    pub fn from_word(word: &[usize], target_dim: usize) -> Result<Self, SimpSetError> {
        if word.windows(2).any(|w| w[0] <= w[1]) {
            return Err(SimpSetError::BadDegeneracyWord(word.to_vec()));
        }
        let n = target_dim + word.len();
        if word.iter().any(|&j| j >= n) {
            return Err(SimpSetError::BadDegeneracyWord(word.to_vec()));
        }
        let values = (0..=n).map(|i| i - word.iter().filter(|&&j| j < i).count()).collect();
        Ok(Self(values))
    }

    /// The Eilenberg–Zilber word: positions `j` with `θ(j) = θ(j+1)`, decreasing.
    pub fn word(&self) -> Vec<usize> {
        let mut w: Vec<usize> =
            self.0.windows(2).enumerate().filter(|(_, p)| p[0] == p[1]).map(|(j, _)| j).collect();
        w.reverse();
        w
    }

    pub fn values(&self) -> &[usize] {
        &self.0
    }

    pub fn source_dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn target_dim(&self) -> usize {
        *self.0.last().expect("nonempty")
    }

    pub fn is_identity(&self) -> bool {
        self.source_dim() == self.target_dim()
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &Degeneracy) -> Degeneracy {
        Degeneracy(inner.0.iter().map(|&v| self.0[v]).collect())
    }

    /// The codegeneracy `σ_j : [n+1] -> [n]` hitting `j` twice.
    pub fn codegeneracy(n: usize, j: usize) -> Self {
        Self((0..=n + 1).map(|i| if i <= j { i } else { i - 1 }).collect())
    }

    pub(crate) fn after_face(&self, i: usize) -> AfterFace {
        let r = self.0[i];
        let lone = (i == 0 || self.0[i - 1] != r) && (i + 1 >= self.0.len() || self.0[i + 1] != r);
        let mut rest: Vec<usize> = self.0.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, &v)| v).collect();
        if lone {
            for v in rest.iter_mut() {
                if *v > r {
                    *v -= 1;
                }
            }
            AfterFace::Drops { r, rest: Degeneracy(rest) }
        } else {
            AfterFace::Surjective(Degeneracy(rest))
        }
    }

    /// Concatenation `θ ⊕ ψ : [a+b+1] -> [p+q+1]` used by joins.
    pub(crate) fn concat(&self, other: &Degeneracy) -> Degeneracy {
        let shift = self.target_dim() + 1;
        let mut v = self.0.clone();
        v.extend(other.0.iter().map(|&x| x + shift));
        Degeneracy(v)
    }
}

/// A (possibly degenerate) simplex `θ^* y` with `y` nondegenerate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub degen: Degeneracy,
    pub base: SimplexId,
}

impl Simplex {
    pub fn nondegenerate(base: SimplexId) -> Self {
        Self { degen: Degeneracy::identity(base.dim), base }
    }

    pub fn new(degen: Degeneracy, base: SimplexId) -> Self {
        debug_assert_eq!(degen.target_dim(), base.dim);
        Self { degen, base }
    }

    pub fn dim(&self) -> usize {
        self.degen.source_dim()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.degen.is_identity()
    }
}

impl fmt::Display for Simplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.degen.word();
        if w.is_empty() {
            write!(f, "{}", self.base)
        } else {
            let s: Vec<String> = w.iter().map(|j| format!("s{j}")).collect();
            write!(f, "{}({})", s.join(""), self.base)
        }
    }
}

/// A finite simplicial set.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FinSimpSet {
    /// `faces[d][i]` lists `d_0 .. d_d` of the `i`-th nondegenerate `d`-simplex.
    faces: Vec<Vec<Vec<Simplex>>>,
    names: Vec<Vec<Option<String>>>,
}

impl FinSimpSet {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    /// Top dimension, `None` for the empty simplicial set.
    pub fn dim(&self) -> Option<usize> {
        self.faces.len().checked_sub(1)
    }

    pub fn count(&self, dim: usize) -> usize {
        self.faces.get(dim).map_or(0, Vec::len)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces.iter().map(Vec::len).collect()
    }

    pub fn total_cells(&self) -> usize {
        self.faces.iter().map(Vec::len).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.faces.iter().enumerate().map(|(d, c)| if d % 2 == 0 { c.len() as i64 } else { -(c.len() as i64) }).sum()
    }

    pub fn contains(&self, id: SimplexId) -> bool {
        id.index < self.count(id.dim)
    }

    pub fn ids(&self) -> impl Iterator<Item = SimplexId> + '_ {
        self.faces.iter().enumerate().flat_map(|(d, c)| (0..c.len()).map(move |i| SimplexId::new(d, i)))
    }

    pub fn ids_of_dim(&self, dim: usize) -> impl Iterator<Item = SimplexId> {
        (0..self.count(dim)).map(move |i| SimplexId::new(dim, i))
    }

    pub fn faces(&self, id: SimplexId) -> &[Simplex] {
        &self.faces[id.dim][id.index]
    }

    pub fn name(&self, id: SimplexId) -> Option<&str> {
        self.names.get(id.dim).and_then(|n| n.get(id.index)).and_then(|n| n.as_deref())
    }

    /// Display name, falling back to the id.
    pub fn label(&self, id: SimplexId) -> String {
        self.name(id).map_or_else(|| id.to_string(), str::to_owned)
    }

    /// `d_i` of an arbitrary simplex, in normal form.
    pub fn face(&self, s: &Simplex, i: usize) -> Simplex {
        assert!(s.dim() > 0 && i <= s.dim(), "face d_{i} of a {}-simplex", s.dim());
        match s.degen.after_face(i) {
            AfterFace::Surjective(theta) => Simplex { degen: theta, base: s.base },
            AfterFace::Drops { r, rest } => {
                let f = &self.faces[s.base.dim][s.base.index][r];
                Simplex { degen: f.degen.after(&rest), base: f.base }
            }
        }
    }

    /// `s_j` of an arbitrary simplex.
    pub fn degeneracy(&self, s: &Simplex, j: usize) -> Simplex {
        assert!(j <= s.dim());
        Simplex { degen: s.degen.after(&Degeneracy::codegeneracy(s.dim(), j)), base: s.base }
    }

    /// Pulls `s` back along a monotone map `alpha : [k] -> [dim s]` given by its values.
    pub fn apply(&self, s: &Simplex, alpha: &[usize]) -> Simplex {
        debug_assert!(alpha.windows(2).all(|w| w[0] <= w[1]));
        let composite: Vec<usize> = alpha.iter().map(|&a| s.degen.values()[a]).collect();
        let mut image: Vec<usize> = composite.clone();
        image.dedup();
        let epi: Vec<usize> = composite.iter().map(|v| image.binary_search(v).expect("in image")).collect();
        let mut base = Simplex::nondegenerate(s.base);
        for r in (0..=s.base.dim).rev() {
            if image.binary_search(&r).is_err() {
                base = self.face(&base, r);
            }
        }
        Simplex { degen: base.degen.after(&Degeneracy(epi)), base: base.base }
    }

    /// The `i`-th vertex of a simplex.
    pub fn vertex(&self, s: &Simplex, i: usize) -> SimplexId {
        self.apply(s, &[i]).base
    }

    pub fn vertices(&self, id: SimplexId) -> Vec<SimplexId> {
        let s = Simplex::nondegenerate(id);
        (0..=id.dim).map(|i| self.vertex(&s, i)).collect()
    }

    /// Nondegenerate bases of the codimension-one faces.
    pub fn facet_bases(&self, id: SimplexId) -> Vec<SimplexId> {
        let mut out: Vec<SimplexId> = self.faces(id).iter().map(|f| f.base).collect();
        out.sort();
        out.dedup();
        out
    }

    /// All nondegenerate simplices in the closure of `id`, including `id`.
    pub fn closure_of(&self, id: SimplexId) -> Vec<SimplexId> {
        let mut seen = vec![id];
        let mut stack = vec![id];
        while let Some(c) = stack.pop() {
            for f in self.faces(c) {
                if !seen.contains(&f.base) {
                    seen.push(f.base);
                    stack.push(f.base);
                }
            }
        }
        seen.sort();
        seen
    }

    /// All `n`-simplices, degenerate ones included, in lexicographic order of (base, word).
    pub fn all_simplices(&self, n: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for d in 0..=n.min(self.dim().unwrap_or(0)) {
            if self.count(d) == 0 {
                continue;
            }
            let surj = surjections(n, d);
            for id in self.ids_of_dim(d) {
                for s in &surj {
                    out.push(Simplex { degen: s.clone(), base: id });
                }
            }
        }
        out.sort();
        out
    }

    /// Checks face dimensions and `d_i d_j = d_{j-1} d_i` for `i < j` on every stored simplex.
    pub fn validate(&self) -> Result<(), SimpSetError> {
        for (d, cells) in self.faces.iter().enumerate() {
            for (idx, faces) in cells.iter().enumerate() {
                let expected = if d == 0 { 0 } else { d + 1 };
                if faces.len() != expected {
                    return Err(SimpSetError::FaceCount { dim: d, expected, got: faces.len() });
                }
                for (k, f) in faces.iter().enumerate() {
                    if f.dim() + 1 != d {
                        return Err(SimpSetError::FaceDimension { dim: d, face: k, got: f.dim() });
                    }
                    if !self.contains(f.base) {
                        return Err(SimpSetError::UnknownSimplex(f.base));
                    }
                }
                if d >= 2 {
                    let s = Simplex::nondegenerate(SimplexId::new(d, idx));
                    for j in 1..=d {
                        let dj = self.face(&s, j);
                        for i in 0..j {
                            let lhs = self.face(&dj, i);
                            let rhs = self.face(&self.face(&s, i), j - 1);
                            if lhs != rhs {
                                return Err(SimpSetError::Identity { simplex: SimplexId::new(d, idx), i, j });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Builds a simplicial set from nondegenerate simplices indexed by arbitrary keys.
    ///
    /// `face(k, i)` must return `d_i` of key `k` as a degeneracy of another listed key.
    pub fn from_keys<K, F>(keys: Vec<Vec<K>>, mut face: F) -> Result<(Self, CellTable<K>), SimpSetError>
    where
        K: Clone + Eq + Hash,
        F: FnMut(&K, usize) -> (Degeneracy, K),
    {
        let mut keys = keys;
        while keys.last().is_some_and(Vec::is_empty) {
            keys.pop();
        }
        let table = CellTable::new(keys);
        let mut faces = Vec::with_capacity(table.keys.len());
        for (d, row) in table.keys.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for k in row {
                let mut fs = Vec::new();
                if d > 0 {
                    for i in 0..=d {
                        let (degen, fk) = face(k, i);
                        let base = table.id(&fk).ok_or(SimpSetError::MissingFace)?;
                        if degen.target_dim() != base.dim || degen.source_dim() + 1 != d {
                            return Err(SimpSetError::FaceDimension { dim: d, face: i, got: degen.source_dim() });
                        }
                        fs.push(Simplex { degen, base });
                    }
                }
                out.push(fs);
            }
            faces.push(out);
        }
        let names = table.keys.iter().map(|r| vec![None; r.len()]).collect();
        let x = Self { faces, names };
        x.validate()?;
        Ok((x, table))
    }

    pub fn with_names(mut self, mut name: impl FnMut(SimplexId) -> Option<String>) -> Self {
        for d in 0..self.faces.len() {
            for i in 0..self.faces[d].len() {
                self.names[d][i] = name(SimplexId::new(d, i));
            }
        }
        self
    }

    /// The sub-simplicial set spanned by a face-closed set of simplices, with the
    /// inclusion recorded as `(sub id -> ambient id)`.
    pub fn subcomplex(&self, cells: &[SimplexId]) -> Result<(Self, Vec<Vec<SimplexId>>), SimpSetError> {
        let mut keys: Vec<Vec<SimplexId>> = Vec::new();
        let mut sorted = cells.to_vec();
        sorted.sort();
        sorted.dedup();
        for c in sorted {
            if keys.len() <= c.dim {
                keys.resize(c.dim + 1, Vec::new());
            }
            keys[c.dim].push(c);
        }
        let (sub, table) = Self::from_keys(keys, |k, i| {
            let f = &self.faces(*k)[i];
            (f.degen.clone(), f.base)
        })?;
        let names_sub = sub.with_names(|id| self.name(*table.key(id)).map(str::to_owned));
        Ok((names_sub, table.keys))
    }
}

/// Lookup table between nondegenerate simplices and the keys they were built from.
#[derive(Clone, Debug)]
pub struct CellTable<K> {
    pub keys: Vec<Vec<K>>,
    index: HashMap<K, SimplexId>,
}

impl<K: Clone + Eq + Hash> CellTable<K> {
    pub fn new(keys: Vec<Vec<K>>) -> Self {
        let mut index = HashMap::new();
        for (d, row) in keys.iter().enumerate() {
            for (i, k) in row.iter().enumerate() {
                index.insert(k.clone(), SimplexId::new(d, i));
            }
        }
        Self { keys, index }
    }

    pub fn id(&self, k: &K) -> Option<SimplexId> {
        self.index.get(k).copied()
    }

    pub fn key(&self, id: SimplexId) -> &K {
        &self.keys[id.dim][id.index]
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }
}

/// Incremental construction of a simplicial set from explicit face data.
#[derive(Default)]
pub struct SimpSetBuilder {
    faces: Vec<Vec<Vec<Simplex>>>,
    names: Vec<Vec<Option<String>>>,
}

impl SimpSetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn push(&mut self, dim: usize, faces: Vec<Simplex>, name: Option<String>) -> SimplexId {
        if self.faces.len() <= dim {
            self.faces.resize(dim + 1, Vec::new());
            self.names.resize(dim + 1, Vec::new());
        }
        self.faces[dim].push(faces);
        self.names[dim].push(name);
        SimplexId::new(dim, self.faces[dim].len() - 1)
    }

    pub fn add_vertex(&mut self, name: Option<String>) -> SimplexId {
        self.push(0, Vec::new(), name)
    }

    /// Adds a nondegenerate simplex of dimension `faces.len() - 1`.
    pub fn add_simplex(&mut self, faces: Vec<Simplex>, name: Option<String>) -> Result<SimplexId, SimpSetError> {
        let dim = faces.len().checked_sub(1).filter(|&d| d > 0).ok_or(SimpSetError::FaceCount {
            dim: 1,
            expected: 2,
            got: faces.len(),
        })?;
        for (k, f) in faces.iter().enumerate() {
            if f.dim() + 1 != dim {
                return Err(SimpSetError::FaceDimension { dim, face: k, got: f.dim() });
            }
            if self.faces.get(f.base.dim).is_none_or(|c| f.base.index >= c.len()) {
                return Err(SimpSetError::UnknownSimplex(f.base));
            }
        }
        Ok(self.push(dim, faces, name))
    }

    /// Convenience for simplices all of whose faces are nondegenerate.
    pub fn add_nondegenerate(&mut self, faces: &[SimplexId], name: Option<String>) -> Result<SimplexId, SimpSetError> {
        self.add_simplex(faces.iter().map(|&f| Simplex::nondegenerate(f)).collect(), name)
    }

    pub fn build(mut self) -> Result<FinSimpSet, SimpSetError> {
        while self.faces.last().is_some_and(Vec::is_empty) {
            self.faces.pop();
            self.names.pop();
        }
        let x = FinSimpSet { faces: self.faces, names: self.names };
        x.validate()?;
        Ok(x)
    }
}

/// All monotone surjections `[n] -> [m]`, lexicographic.
pub fn surjections(n: usize, m: usize) -> Vec<Degeneracy> {
    fn rec(n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Degeneracy>) {
        let last = *cur.last().expect("starts at 0");
        if cur.len() == n + 1 {
            if last == m {
                out.push(Degeneracy(cur.clone()));
            }
            return;
        }
        let remaining = n + 1 - cur.len();
        for next in [last, last + 1] {
            if next <= m && m - next <= remaining - 1 {
                cur.push(next);
                rec(n, m, cur, out);
                cur.pop();
            }
        }
    }
    if m > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(n, m, &mut vec![0], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_round_trip() {
        let d = Degeneracy::from_word(&[2, 0], 1).unwrap();
        assert_eq!(d.values(), &[0, 0, 1, 1]);
        assert_eq!(d.word(), vec![2, 0]);
        assert!(Degeneracy::from_word(&[0, 2], 1).is_err());
    }

    #[test]
    fn surjection_counts_are_binomial() {
        assert_eq!(surjections(3, 1).len(), 3);
        assert_eq!(surjections(4, 2).len(), 6);
        assert_eq!(surjections(2, 2).len(), 1);
        assert!(surjections(1, 2).is_empty());
    }

    #[test]
    fn faces_of_degenerate_simplices() {
        let x = standard_simplex(1);
        let e = Simplex::nondegenerate(SimplexId::new(1, 0));
        let s0 = x.degeneracy(&e, 0);
        // d_0 s_0 = d_1 s_0 = id
        assert_eq!(x.face(&s0, 0), e);
        assert_eq!(x.face(&s0, 1), e);
        // d_2 s_0 e = s_0 d_1 e
        let d2 = x.face(&s0, 2);
        assert_eq!(d2, x.degeneracy(&x.face(&e, 1), 0));
    }

    #[test]
    fn builder_rejects_bad_identities() {
        let mut b = SimpSetBuilder::new();
        let a = b.add_vertex(None);
        let c = b.add_vertex(None);
        let e1 = b.add_nondegenerate(&[c, a], None).unwrap();
        let e2 = b.add_nondegenerate(&[c, a], None).unwrap();
        // d_0 = e2 should end where d_1 = e1 ends... make them mismatch
        let e3 = b.add_nondegenerate(&[a, c], None).unwrap();
        b.add_nondegenerate(&[e1, e3, e2], None).unwrap();
        assert!(matches!(b.build(), Err(SimpSetError::Identity { .. })));
    }

    #[test]
    fn vertices_of_standard_simplex() {
        let x = standard_simplex(2);
        let top = SimplexId::new(2, 0);
        let v = x.vertices(top);
        assert_eq!(v.len(), 3);
        let mut sorted = v.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 3);
    }
}
