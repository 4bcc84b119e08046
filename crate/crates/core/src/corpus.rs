//! Seeded random fields for cross-checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rational::{qi, Q};
use crate::series::{Monomial, Poly};

/// A sparse field on `n` variables: each component has one to three terms of
/// degree `2..=max_deg` with nonzero integer coefficients in `[−3, 3]`.
pub fn random_field(n: usize, max_deg: usize, seed: u64) -> Result<Vec<Poly<Q>>> {
    if n == 0 || max_deg < 2 {
        return Err(Error::BadDimensions(format!("random field needs n ≥ 1 and degree ≥ 2, got n={n}, degree={max_deg}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let h = (0..n)
        .map(|_| loop {
            let terms = rng.gen_range(1..=3);
            let mut p = Poly::zero();
            for _ in 0..terms {
                let deg = rng.gen_range(2..=max_deg);
                let all = Monomial::all_of_degree(n, deg);
                let m = all[rng.gen_range(0..all.len())].clone();
                let mut c = rng.gen_range(1..=3);
                if rng.gen_bool(0.5) {
                    c = -c;
                }
                p.add_term(m, qi(c));
            }
            if !p.is_zero() {
                break p;
            }
        })
        .collect();
    Ok(h)
}

#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub n: usize,
    pub max_deg: usize,
    pub seed: u64,
    pub h: Vec<Poly<Q>>,
}

/// `count` fields cycling through `n ∈ {1, 2, 3}` and degree `∈ {2, 3}`.
pub fn corpus(count: usize, base_seed: u64) -> Vec<CorpusEntry> {
    (0..count)
        .map(|k| {
            let n = 1 + k % 3;
            let max_deg = 2 + (k / 3) % 2;
            let seed = base_seed.wrapping_add(k as u64);
            let h = random_field(n, max_deg, seed).expect("valid shape");
            CorpusEntry { n, max_deg, seed, h }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_shaped() {
        let a = random_field(3, 3, 9).unwrap();
        assert_eq!(a, random_field(3, 3, 9).unwrap());
        for p in &a {
            assert!(!p.is_zero());
            assert!(p.min_degree().unwrap() >= 2 && p.max_degree().unwrap() <= 3);
        }
        let c = corpus(6, 1);
        assert_eq!(c.iter().map(|e| (e.n, e.max_deg)).collect::<Vec<_>>(), [(1, 2), (2, 2), (3, 2), (1, 3), (2, 3), (3, 3)]);
        assert!(random_field(2, 1, 0).is_err());
    }
}
