use std::fmt;

use serde::{Deserialize, Serialize};

use super::FinSimpSet;

/// Dense integer matrix, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn add(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] += v;
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    /// Nonzero diagonal entries of the Smith normal form, each dividing the next.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let (r, c) = (self.rows, self.cols);
        let mut a: Vec<Vec<i128>> = (0..r).map(|i| (0..c).map(|j| self.get(i, j) as i128).collect()).collect();
        let mut diag = Vec::new();
        let mut t = 0;
        while t < r.min(c) {
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(t) {
                for (j, &v) in row.iter().enumerate().skip(t) {
                    if v != 0 && best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            loop {
                let mut clean = true;
                for i in t + 1..r {
                    if a[i][t] != 0 {
                        let q = a[i][t].div_euclid(a[t][t]);
                        for j in t..c {
                            a[i][j] -= q * a[t][j];
                        }
                        if a[i][t] != 0 {
                            a.swap(t, i);
                            clean = false;
                        }
                    }
                }
                for j in t + 1..c {
                    if a[t][j] != 0 {
                        let q = a[t][j].div_euclid(a[t][t]);
                        for row in a.iter_mut().skip(t) {
                            row[j] -= q * row[t];
                        }
                        if a[t][j] != 0 {
                            for row in a.iter_mut() {
                                row.swap(t, j);
                            }
                            clean = false;
                        }
                    }
                }
                if !clean {
                    continue;
                }
                let p = a[t][t];
                let bad = (t + 1..r).find(|&i| (t + 1..c).any(|j| a[i][j] % p != 0));
                match bad {
                    Some(i) => {
                        for j in t..c {
                            let v = a[i][j];
                            a[t][j] += v;
                        }
                    }
                    None => break,
                }
            }
            diag.push(a[t][t].unsigned_abs() as u64);
            t += 1;
        }
        diag
    }

    /// Rank over the field with two elements.
    pub fn rank_mod2(&self) -> usize {
        let mut rows: Vec<Vec<bool>> =
            (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).rem_euclid(2) == 1).collect()).collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&i| rows[i][col]) else { continue };
            rows.swap(rank, p);
            for i in 0..self.rows {
                if i != rank && rows[i][col] {
                    let pivot = rows[rank].clone();
                    for (x, y) in rows[i].iter_mut().zip(pivot) {
                        *x ^= y;
                    }
                }
            }
            rank += 1;
        }
        rank
    }
}

/// A finite free chain complex; `boundaries[n] : C_n -> C_{n-1}` (with `boundaries[0]` empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub ranks: Vec<usize>,
    pub boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn new(ranks: Vec<usize>) -> Self {
        let boundaries = (0..ranks.len())
            .map(|n| if n == 0 { IntMatrix::zeros(0, ranks[0]) } else { IntMatrix::zeros(ranks[n - 1], ranks[n]) })
            .collect();
        Self { ranks, boundaries }
    }

    /// Normalized chains: faces landing on degenerate simplices contribute zero.
    pub fn normalized(x: &FinSimpSet) -> Self {
        let mut cc = Self::new(x.f_vector());
        for n in 1..cc.ranks.len() {
            for id in x.ids_of_dim(n) {
                for (i, f) in x.faces(id).iter().enumerate() {
                    if !f.is_degenerate() {
                        let sign = if i % 2 == 0 { 1 } else { -1 };
                        cc.boundaries[n].add(f.base.index, id.index, sign);
                    }
                }
            }
        }
        cc
    }

    /// `∂_{n} ∘ ∂_{n+1} = 0` in every degree.
    pub fn is_complex(&self) -> bool {
        (1..self.ranks.len().saturating_sub(1)).all(|n| self.boundaries[n].mul(&self.boundaries[n + 1]).is_zero())
    }

    pub fn is_complex_mod2(&self) -> bool {
        (1..self.ranks.len().saturating_sub(1)).all(|n| {
            let m = self.boundaries[n].mul(&self.boundaries[n + 1]);
            m.data.iter().all(|v| v % 2 == 0)
        })
    }

    pub fn homology(&self) -> HomologyReport {
        let top = self.ranks.len();
        let factors: Vec<Vec<u64>> = (0..top).map(|n| self.boundaries[n].invariant_factors()).collect();
        let rank = |n: usize| if n < top { factors[n].len() } else { 0 };
        let betti: Vec<usize> = (0..top).map(|n| self.ranks[n] - rank(n) - rank(n + 1)).collect();
        let torsion: Vec<Vec<u64>> = (0..top)
            .map(|n| if n + 1 < top { factors[n + 1].iter().copied().filter(|&d| d > 1).collect() } else { Vec::new() })
            .collect();
        let euler = self.ranks.iter().enumerate().map(|(n, &r)| if n % 2 == 0 { r as i64 } else { -(r as i64) }).sum();
        HomologyReport { betti, torsion, euler_characteristic: euler }
    }

    /// Betti numbers with coefficients in the field with two elements.
    pub fn betti_mod2(&self) -> Vec<usize> {
        let top = self.ranks.len();
        let ranks: Vec<usize> = (0..top).map(|n| self.boundaries[n].rank_mod2()).collect();
        let rank = |n: usize| if n < top { ranks[n] } else { 0 };
        (0..top).map(|n| self.ranks[n] - rank(n) - rank(n + 1)).collect()
    }
}

/// Integral homology of a finite chain complex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub betti: Vec<usize>,
    pub torsion: Vec<Vec<u64>>,
    pub euler_characteristic: i64,
}

impl HomologyReport {
    /// Betti numbers with trailing zeros removed.
    pub fn trimmed_betti(&self) -> Vec<usize> {
        let mut b = self.betti.clone();
        while b.last() == Some(&0) {
            b.pop();
        }
        b
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.iter().all(Vec::is_empty)
    }

    /// True when the homology is free with exactly the given ranks.
    pub fn is_free_with(&self, betti: &[usize]) -> bool {
        let mut want = betti.to_vec();
        while want.last() == Some(&0) {
            want.pop();
        }
        self.is_torsion_free() && self.trimmed_betti() == want
    }

    pub fn is_point(&self) -> bool {
        self.is_free_with(&[1])
    }

    pub fn rational_euler(&self) -> i64 {
        self.betti.iter().enumerate().map(|(n, &b)| if n % 2 == 0 { b as i64 } else { -(b as i64) }).sum()
    }

    /// Human readable groups, e.g. `["Z", "0", "Z"]`.
    pub fn groups(&self) -> Vec<String> {
        self.betti
            .iter()
            .zip(&self.torsion)
            .map(|(&b, t)| {
                let mut parts = Vec::new();
                match b {
                    0 => {}
                    1 => parts.push("Z".to_string()),
                    k => parts.push(format!("Z^{k}")),
                }
                parts.extend(t.iter().map(|d| format!("Z/{d}")));
                if parts.is_empty() {
                    "0".to_string()
                } else {
                    parts.join("+")
                }
            })
            .collect()
    }
}

impl fmt::Display for HomologyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.groups().join(", "))
    }
}

/// Integral homology via Smith normal form of the normalized boundary matrices.
pub fn homology(x: &FinSimpSet) -> HomologyReport {
    ChainComplex::normalized(x).homology()
}

pub fn homology_mod2(x: &FinSimpSet) -> Vec<usize> {
    ChainComplex::normalized(x).betti_mod2()
}
