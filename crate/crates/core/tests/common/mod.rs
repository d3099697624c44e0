#![allow(dead_code)]

pub mod oracle;

use dgca_core::dgca::{validate, CoeffMatrix, Position};
use dgca_core::ExactRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn q(s: &str) -> ExactRational {
    s.parse().unwrap()
}

pub fn ones(dim: usize, support: &[Position]) -> CoeffMatrix {
    validate(dim, support.iter().map(|&(i, j)| (i, j, ExactRational::one()))).unwrap()
}
