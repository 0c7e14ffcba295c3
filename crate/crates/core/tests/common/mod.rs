//! Shared random inputs for the integration tests.
#![allow(dead_code)]

use invar::seifert::SeifertData;
use invar::Graph;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Normalized Seifert data with `α_i <= 12`, `d <= 5`, `b0 <= 4` and `e < 0`.
pub fn random_seifert(rng: &mut impl Rng) -> SeifertData {
    loop {
        let b0 = rng.gen_range(1..=4);
        let d = rng.gen_range(0..=5);
        let legs: Vec<(i64, i64)> = (0..d)
            .map(|_| loop {
                let a = rng.gen_range(2..=12i64);
                let w = rng.gen_range(1..a);
                if a.gcd(&w) == 1 {
                    break (a, w);
                }
            })
            .collect();
        if let Ok(sf) = SeifertData::new(b0, &legs) {
            return sf;
        }
    }
}

/// `count` distinct instances from a fixed seed.
pub fn seifert_corpus(seed: u64, count: usize) -> Vec<SeifertData> {
    let mut rng = rng(seed);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    while out.len() < count {
        let sf = random_seifert(&mut rng);
        if seen.insert(sf.clone()) {
            out.push(sf);
        }
    }
    out
}

/// A random negative definite tree on `2..=max_vertices` vertices.
pub fn random_graph(rng: &mut impl Rng, max_vertices: usize) -> Graph {
    loop {
        let n = rng.gen_range(2..=max_vertices);
        let eulers: Vec<i64> = (0..n)
            .map(|_| if rng.gen_bool(0.1) { -1 } else { rng.gen_range(-5..=-2) })
            .collect();
        let edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
        if let Ok(g) = Graph::from_eulers(&eulers, &edges) {
            return g;
        }
    }
}
