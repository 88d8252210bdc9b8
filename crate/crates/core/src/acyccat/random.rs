use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use super::{AcycCat, Arrow};
use crate::poset::FinPoset;

const MAX_OBJECTS: usize = 5;
const MAX_HOM: usize = 3;

/// Lists objects in a random order so that indices carry no order information.
fn shuffled<R: Rng>(n: usize, rng: &mut R) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

fn build(
    n: usize,
    perm: &[usize],
    arrows: Vec<(String, usize, usize)>,
    compose: BTreeMap<(usize, usize), usize>,
) -> AcycCat {
    let mut objects = vec![String::new(); n];
    for (i, &slot) in perm.iter().enumerate() {
        objects[slot] = format!("o{i}");
    }
    let arrows = arrows.into_iter().map(|(name, s, t)| Arrow { name, source: perm[s], target: perm[t] }).collect();
    AcycCat::assemble(objects, arrows, compose)
}

/// Free category on a random DAG with parallel edges, redrawn until every hom has at most three paths.
pub fn random_free_category<R: Rng>(rng: &mut R) -> AcycCat {
    loop {
        let n = rng.gen_range(1..=MAX_OBJECTS);
        let mut gens = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(0.45) {
                    let k = if rng.gen_bool(0.25) { 2 } else { 1 };
                    for _ in 0..k {
                        gens.push((i, j));
                    }
                }
            }
        }
        // paths as generator index lists, last generator applied last
        let mut paths: Vec<Vec<usize>> = (0..gens.len()).map(|g| vec![g]).collect();
        let mut frontier = paths.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for p in &frontier {
                let end = gens[*p.last().expect("nonempty")].1;
                for (g, &(s, _)) in gens.iter().enumerate() {
                    if s == end {
                        let mut q = p.clone();
                        q.push(g);
                        next.push(q);
                    }
                }
            }
            paths.extend(next.iter().cloned());
            frontier = next;
        }
        let ends = |p: &Vec<usize>| (gens[p[0]].0, gens[*p.last().expect("nonempty")].1);
        let mut counts = BTreeMap::new();
        for p in &paths {
            *counts.entry(ends(p)).or_insert(0usize) += 1;
        }
        if counts.values().any(|&c| c > MAX_HOM) {
            continue;
        }
        let index: BTreeMap<Vec<usize>, usize> = paths.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let name = |p: &Vec<usize>| p.iter().rev().map(|g| format!("g{g}")).collect::<Vec<_>>().join(".");
        let arrows = paths.iter().map(|p| (name(p), ends(p).0, ends(p).1)).collect();
        let mut compose = BTreeMap::new();
        for (fi, f) in paths.iter().enumerate() {
            for (gi, g) in paths.iter().enumerate() {
                if ends(f).1 == ends(g).0 {
                    let mut gf = f.clone();
                    gf.extend(g);
                    compose.insert((gi, fi), index[&gf]);
                }
            }
        }
        let perm = shuffled(n, rng);
        return build(n, &perm, arrows, compose);
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Homs `C(i,j) = Z/m_ij` on a random poset, composition by addition.
///
/// Covers draw `m ∈ {1,2,3}`; every other `m_ik` divides `m_ij` and `m_jk` for all `i < j < k`.
pub fn random_modular_category<R: Rng>(rng: &mut R) -> AcycCat {
    let n = rng.gen_range(1..=MAX_OBJECTS);
    let p = FinPoset::random(n, 0.5, rng);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |k| (i, k))).filter(|&(i, k)| p.lt(i, k)).collect();
    pairs.sort_by_key(|&(i, k)| (p.open_interval(i, k).len(), i, k));
    let mut m: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &(i, k) in &pairs {
        let mids = p.open_interval(i, k);
        let v = if mids.is_empty() {
            rng.gen_range(1..=MAX_HOM)
        } else {
            let g = mids.iter().fold(0, |acc, &j| gcd(acc, gcd(m[&(i, j)], m[&(j, k)])));
            let divisors: Vec<usize> = (1..=g).filter(|d| g % d == 0).collect();
            *divisors.choose(rng).expect("1 divides")
        };
        m.insert((i, k), v);
    }
    let mut arrows = Vec::new();
    let mut index = BTreeMap::new();
    for (&(i, k), &mik) in &m {
        for a in 0..mik {
            index.insert((i, k, a), arrows.len());
            arrows.push((format!("c{i}{k}_{a}"), i, k));
        }
    }
    let mut compose = BTreeMap::new();
    for (&(i, j, a), &f) in &index {
        for (&(j2, k, b), &g) in &index {
            if j2 == j {
                compose.insert((g, f), index[&(i, k, (a + b) % m[&(i, k)])]);
            }
        }
    }
    let perm = shuffled(n, rng);
    build(n, &perm, arrows, compose)
}

/// One of: a free category, a modular-sum category, or a random poset. At most five objects, homs of size ≤ 3.
pub fn random_category<R: Rng>(rng: &mut R) -> AcycCat {
    match rng.gen_range(0..3) {
        0 => random_free_category(rng),
        1 => random_modular_category(rng),
        _ => {
            let n = rng.gen_range(1..=MAX_OBJECTS);
            let p = FinPoset::random(n, 0.5, rng);
            let perm = shuffled(n, rng);
            let names: Vec<String> = (0..n).map(|i| p.name(perm[i]).to_string()).collect();
            let rels: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (0..n).map(move |b| (a, b)))
                .filter(|&(a, b)| p.lt(perm[a], perm[b]))
                .collect();
            AcycCat::from_poset(&FinPoset::from_relations(names, &rels).expect("relabelled poset"))
        }
    }
}
