use super::{surjections, CellTable, Degeneracy, FinSimpSet, Simplex, SimplexId};

/// The standard simplex `Δⁿ`; the `k`-simplices are the `(k+1)`-subsets of `{0..n}`.
pub fn standard_simplex(n: usize) -> FinSimpSet {
    let (x, table) = standard_simplex_with_table(n);
    x.with_names(|id| Some(vertex_set_name(table.key(id))))
}

pub(crate) fn standard_simplex_with_table(n: usize) -> (FinSimpSet, CellTable<Vec<usize>>) {
    let mut keys: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n + 1];
    for mask in 1u64..(1u64 << (n + 1)) {
        let set: Vec<usize> = (0..=n).filter(|i| mask >> i & 1 == 1).collect();
        keys[set.len() - 1].push(set);
    }
    for row in &mut keys {
        row.sort();
    }
    FinSimpSet::from_keys(keys, |k, i| {
        let mut f = k.clone();
        f.remove(i);
        (Degeneracy::identity(f.len() - 1), f)
    })
    .expect("standard simplex is well formed")
}

/// An ordered simplicial complex given by its facets; vertex order is numeric.
pub fn simplicial_complex(facets: &[Vec<usize>]) -> (FinSimpSet, CellTable<Vec<usize>>) {
    let mut all: std::collections::BTreeSet<Vec<usize>> = std::collections::BTreeSet::new();
    for f in facets {
        let mut f = f.clone();
        f.sort();
        f.dedup();
        let n = f.len();
        for mask in 1u64..(1u64 << n) {
            all.insert((0..n).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect());
        }
    }
    let top = all.iter().map(Vec::len).max().unwrap_or(0);
    let mut keys: Vec<Vec<Vec<usize>>> = vec![Vec::new(); top];
    for s in all {
        keys[s.len() - 1].push(s);
    }
    let (x, table) = FinSimpSet::from_keys(keys, |k, i| {
        let mut f = k.clone();
        f.remove(i);
        (Degeneracy::identity(f.len() - 1), f)
    })
    .expect("face-closed family of vertex sets");
    (x.with_names(|id| Some(vertex_set_name(table.key(id)))), table)
}

pub(crate) fn vertex_set_name(set: &[usize]) -> String {
    if set.iter().all(|&v| v < 10) {
        set.iter().map(|v| v.to_string()).collect()
    } else {
        let s: Vec<String> = set.iter().map(|v| v.to_string()).collect();
        s.join(",")
    }
}

/// A nondegenerate simplex of a product: a jointly nondegenerate pair of simplices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductKey {
    pub left: Simplex,
    pub right: Simplex,
}

/// Levelwise product; nondegenerate simplices are shuffles of a pair of simplices.
pub fn product(a: &FinSimpSet, b: &FinSimpSet) -> (FinSimpSet, CellTable<ProductKey>) {
    let top = match (a.dim(), b.dim()) {
        (Some(p), Some(q)) => p + q,
        _ => return FinSimpSet::from_keys(Vec::new(), |_, _| unreachable!()).expect("empty"),
    };
    let mut keys: Vec<Vec<ProductKey>> = vec![Vec::new(); top + 1];
    for (n, row) in keys.iter_mut().enumerate() {
        for p in 0..=n.min(a.dim().unwrap_or(0)) {
            for q in 0..=n.min(b.dim().unwrap_or(0)) {
                if p + q < n || a.count(p) == 0 || b.count(q) == 0 {
                    continue;
                }
                let sp = surjections(n, p);
                let sq = surjections(n, q);
                for x in a.ids_of_dim(p) {
                    for y in b.ids_of_dim(q) {
                        for s in &sp {
                            for t in &sq {
                                if joint_repeats(s, t).is_empty() {
                                    row.push(ProductKey { left: Simplex::new(s.clone(), x), right: Simplex::new(t.clone(), y) });
                                }
                            }
                        }
                    }
                }
            }
        }
        row.sort();
    }
    let (x, table) = FinSimpSet::from_keys(keys, |k, i| {
        let l = a.face(&k.left, i);
        let r = b.face(&k.right, i);
        normalize_pair(a, b, l, r)
    })
    .expect("product of valid simplicial sets is valid");
    let named = x.with_names(|id| {
        let k = table.key(id);
        Some(format!("({},{})", a.label(k.left.base), b.label(k.right.base)))
    });
    (named, table)
}

fn joint_repeats(s: &Degeneracy, t: &Degeneracy) -> Vec<usize> {
    let (sv, tv) = (s.values(), t.values());
    (0..sv.len().saturating_sub(1)).filter(|&j| sv[j] == sv[j + 1] && tv[j] == tv[j + 1]).collect()
}

/// Writes a pair of `n`-simplices as `ρ^*` of a jointly nondegenerate pair.
pub(crate) fn normalize_pair(a: &FinSimpSet, b: &FinSimpSet, l: Simplex, r: Simplex) -> (Degeneracy, ProductKey) {
    let rep = joint_repeats(&l.degen, &r.degen);
    let n = l.dim();
    if rep.is_empty() {
        return (Degeneracy::identity(n), ProductKey { left: l, right: r });
    }
    let reps: Vec<usize> = (0..=n).filter(|&i| i == 0 || !rep.contains(&(i - 1))).collect();
    let mut values = Vec::with_capacity(n + 1);
    let mut cur = 0usize;
    for i in 0..=n {
        if i > 0 && !rep.contains(&(i - 1)) {
            cur += 1;
        }
        values.push(cur);
    }
    let rho = Degeneracy::from_values(values).expect("collapse map is a surjection");
    (rho, ProductKey { left: a.apply(&l, &reps), right: b.apply(&r, &reps) })
}

/// A nondegenerate simplex of a join `X ⋆ Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Joined {
    Left(SimplexId),
    Right(SimplexId),
    Pair(SimplexId, SimplexId),
}

impl Joined {
    pub fn dim(&self) -> usize {
        match self {
            Joined::Left(a) | Joined::Right(a) => a.dim,
            Joined::Pair(a, b) => a.dim + b.dim + 1,
        }
    }
}

/// The join `X ⋆ Y`. A pair `(x, y)` of a `p`- and a `q`-simplex spans a `(p+q+1)`-simplex
/// whose first `p+1` vertices come from `x`.
pub fn join(a: &FinSimpSet, b: &FinSimpSet) -> (FinSimpSet, CellTable<Joined>) {
    let top = match (a.dim(), b.dim()) {
        (Some(p), Some(q)) => p + q + 1,
        (Some(p), None) => p,
        (None, Some(q)) => q,
        (None, None) => 0,
    };
    let mut keys: Vec<Vec<Joined>> = vec![Vec::new(); top + 1];
    for id in a.ids() {
        keys[id.dim].push(Joined::Left(id));
    }
    for id in b.ids() {
        keys[id.dim].push(Joined::Right(id));
    }
    for x in a.ids() {
        for y in b.ids() {
            keys[x.dim + y.dim + 1].push(Joined::Pair(x, y));
        }
    }
    for row in &mut keys {
        row.sort();
    }
    let (x, table) = FinSimpSet::from_keys(keys, |k, i| match *k {
        Joined::Left(x) => {
            let f = &a.faces(x)[i];
            (f.degen.clone(), Joined::Left(f.base))
        }
        Joined::Right(y) => {
            let f = &b.faces(y)[i];
            (f.degen.clone(), Joined::Right(f.base))
        }
        Joined::Pair(x, y) => {
            let (p, q) = (x.dim, y.dim);
            if i <= p {
                if p == 0 {
                    (Degeneracy::identity(q), Joined::Right(y))
                } else {
                    let f = &a.faces(x)[i];
                    (f.degen.concat(&Degeneracy::identity(q)), Joined::Pair(f.base, y))
                }
            } else if q == 0 {
                (Degeneracy::identity(p), Joined::Left(x))
            } else {
                let f = &b.faces(y)[i - p - 1];
                (Degeneracy::identity(p).concat(&f.degen), Joined::Pair(x, f.base))
            }
        }
    })
    .expect("join of valid simplicial sets is valid");
    let named = x.with_names(|id| {
        Some(match *table.key(id) {
            Joined::Left(x) => a.label(x),
            Joined::Right(y) => b.label(y),
            Joined::Pair(x, y) => format!("{}*{}", a.label(x), b.label(y)),
        })
    });
    (named, table)
}

/// The cone `{*} ⋆ X`; the apex is `Joined::Left(0:0)`.
pub fn cone(x: &FinSimpSet) -> (FinSimpSet, CellTable<Joined>) {
    let point = standard_simplex(0).with_names(|_| Some("*".into()));
    join(&point, x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn standard_simplex_f_vectors() {
        assert_eq!(standard_simplex(0).f_vector(), vec![1]);
        assert_eq!(standard_simplex(2).f_vector(), vec![3, 3, 1]);
        assert_eq!(standard_simplex(3).f_vector(), vec![4, 6, 4, 1]);
        for n in 0..6 {
            let f = standard_simplex(n).f_vector();
            for (k, c) in f.iter().enumerate() {
                assert_eq!(*c, binom(n + 1, k + 1));
            }
        }
    }

    #[test]
    fn square_and_prism() {
        let d1 = standard_simplex(1);
        let (sq, _) = product(&d1, &d1);
        assert_eq!(sq.f_vector(), vec![4, 5, 2]);
        let (prism, _) = product(&d1, &standard_simplex(2));
        assert_eq!(prism.count(3), 3);
    }

    /// Top simplices of Δᵖ × Δ^q are monotone lattice paths from (0,0) to (p,q).
    #[test]
    fn product_top_cells_match_lattice_paths() {
        fn paths(p: usize, q: usize) -> usize {
            if p == 0 || q == 0 {
                1
            } else {
                paths(p - 1, q) + paths(p, q - 1)
            }
        }
        for p in 0..4 {
            for q in 0..3 {
                let (x, _) = product(&standard_simplex(p), &standard_simplex(q));
                assert_eq!(x.count(p + q), paths(p, q), "Δ{p} × Δ{q}");
            }
        }
    }

    #[test]
    fn complex_from_facets() {
        let (x, t) = simplicial_complex(&[vec![0, 1, 2], vec![2, 3]]);
        assert_eq!(x.f_vector(), vec![4, 4, 1]);
        assert_eq!(t.key(SimplexId::new(2, 0)), &vec![0, 1, 2]);
    }

    #[test]
    fn join_of_points_is_an_edge() {
        let pt = standard_simplex(0);
        let (e, _) = join(&pt, &pt);
        assert_eq!(e.f_vector(), vec![2, 1]);
    }

    #[test]
    fn join_with_empty_is_unit() {
        let x = standard_simplex(2);
        let (j, _) = join(&x, &FinSimpSet::empty());
        assert_eq!(j.f_vector(), x.f_vector());
        let (c, _) = cone(&FinSimpSet::empty());
        assert_eq!(c.f_vector(), vec![1]);
    }

    #[test]
    fn cone_on_two_points_is_a_path() {
        let mut b = super::super::SimpSetBuilder::new();
        b.add_vertex(None);
        b.add_vertex(None);
        let s0 = b.build().unwrap();
        let (c, _) = cone(&s0);
        assert_eq!(c.f_vector(), vec![3, 2]);
    }
}
