use std::fmt::Debug;
use std::hash::Hash;

use super::{CellTable, Degeneracy, FinSimpSet, SimpSetError, Simplex};

/// A levelwise finite bisimplicial set, seen through its diagonal.
///
/// Implementors enumerate the diagonal simplices `X_{n,n}` and supply the diagonal
/// face `d_i = d_i^h d_i^v` together with a test for lying in the image of the
/// diagonal degeneracy `s_j = s_j^h s_j^v`.
pub trait Bisimplicial {
    type Cell: Clone + Eq + Hash + Ord + Debug;

    /// All diagonal `n`-simplices, degenerate ones included.
    fn diagonal_cells(&self, n: usize) -> Vec<Self::Cell>;

    /// Every diagonal simplex above this dimension is degenerate.
    fn max_nondegenerate_dim(&self) -> usize;

    fn face(&self, cell: &Self::Cell, i: usize) -> Self::Cell;

    fn is_degenerate_at(&self, cell: &Self::Cell, j: usize) -> bool;

    fn cell_dim(&self, cell: &Self::Cell) -> usize;
}

pub type DiagonalTable<C> = CellTable<C>;

/// Normal form `c = ρ^* y` of a diagonal simplex of dimension `n`.
pub(crate) fn normalize<B: Bisimplicial>(b: &B, cell: &B::Cell, n: usize) -> (Degeneracy, B::Cell) {
    if n == 0 {
        return (Degeneracy::identity(0), cell.clone());
    }
    match (0..n).find(|&j| b.is_degenerate_at(cell, j)) {
        None => (Degeneracy::identity(n), cell.clone()),
        Some(j) => {
            let inner = b.face(cell, j);
            let (sigma, base) = normalize(b, &inner, n - 1);
            (sigma.after(&Degeneracy::codegeneracy(n - 1, j)), base)
        }
    }
}

/// The diagonal simplicial set, with its nondegenerate simplices extracted by normal form.
pub fn diagonal<B: Bisimplicial>(b: &B) -> Result<(FinSimpSet, DiagonalTable<B::Cell>), SimpSetError> {
    let top = b.max_nondegenerate_dim();
    let mut keys = Vec::with_capacity(top + 1);
    for n in 0..=top {
        let mut row: Vec<B::Cell> =
            b.diagonal_cells(n).into_iter().filter(|c| !(0..n).any(|j| b.is_degenerate_at(c, j))).collect();
        row.sort();
        row.dedup();
        keys.push(row);
    }
    // s_j identities on the degenerate part: d_j s_j = d_{j+1} s_j.
    for n in 1..=top + 1 {
        for c in b.diagonal_cells(n) {
            for j in 0..n {
                if b.is_degenerate_at(&c, j) && b.face(&c, j) != b.face(&c, j + 1) {
                    return Err(SimpSetError::MissingFace);
                }
            }
        }
    }
    FinSimpSet::from_keys(keys, |c, i| {
        let n = b.cell_dim(c);
        normalize(b, &b.face(c, i), n - 1)
    })
}

/// The bisimplicial set `X_{p,q} = X_p`, constant in the second direction.
pub struct ConstantBisimplicial<'a>(pub &'a FinSimpSet);

impl Bisimplicial for ConstantBisimplicial<'_> {
    type Cell = Simplex;

    fn diagonal_cells(&self, n: usize) -> Vec<Simplex> {
        self.0.all_simplices(n)
    }

    fn max_nondegenerate_dim(&self) -> usize {
        self.0.dim().unwrap_or(0)
    }

    fn face(&self, cell: &Simplex, i: usize) -> Simplex {
        self.0.face(cell, i)
    }

    fn is_degenerate_at(&self, cell: &Simplex, j: usize) -> bool {
        let v = cell.degen.values();
        v[j] == v[j + 1]
    }

    fn cell_dim(&self, cell: &Simplex) -> usize {
        cell.dim()
    }
}
