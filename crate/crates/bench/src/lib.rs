//! Seeded workloads shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use strata_core::acyccat::random_category;
use strata_core::morse::random_acyclic_matching;
use strata_core::strat::random_labelled_complex;
use strata_core::{AcycCat, Matching, RegComplex};

pub fn categories(n: usize, seed: u64) -> Vec<AcycCat> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_category(&mut rng)).collect()
}

/// Simplicial complexes with at most `max_cells` cells, each with a random acyclic matching.
pub fn matchings(n: usize, max_cells: usize, seed: u64) -> Vec<(RegComplex, Matching)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let x = random_labelled_complex(&mut rng, max_cells);
            let c = RegComplex::from_simplicial(x.space()).expect("simplicial complexes are regular");
            let m = random_acyclic_matching(&c, &mut rng);
            (c, m)
        })
        .collect()
}
