//! Fixtures shared by the benchmarks under `benches/`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use vcinv::{Fe, FieldSpec, InvariantCatalog, MatrixFq};

pub fn field(q: u64) -> FieldSpec {
    FieldSpec::with_order(q).expect("prime power")
}

pub fn catalog(q: u64) -> InvariantCatalog {
    InvariantCatalog::new(&field(q)).expect("catalog builds")
}

/// A reproducible dense matrix with uniformly random entries.
pub fn random_matrix(q: u64, rows: usize, cols: usize, seed: u64) -> MatrixFq {
    let k = field(q);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..rows).map(|_| (0..cols).map(|_| Fe(rng.gen_range(0..q as u32))).collect());
    MatrixFq::from_rows(&k, cols, data).expect("rectangular")
}
