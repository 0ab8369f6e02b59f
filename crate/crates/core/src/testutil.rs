//! Deterministic helpers for randomized sweeps in tests and CLI checks.

use crate::groupoid::{ArcPath, Dir, Endpoint, Letter};

/// Small xorshift generator so sweeps are reproducible from a seed.
#[derive(Debug, Clone)]
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng(seed.max(1))
    }

    pub fn next_u64(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    /// Uniform-ish draw in `0..n`.
    pub fn below(&mut self, n: usize) -> usize {
        assert!(n > 0);
        (self.next_u64() % n as u64) as usize
    }
}

/// A composable (not necessarily reduced) alternating word at `b0`.
pub fn random_raw_word(rng: &mut Rng, rank: u32, max_len: usize) -> Vec<Letter> {
    let len = rng.below(max_len + 1);
    let mut letters = Vec::with_capacity(len);
    let mut dir = Dir::Forward;
    for _ in 0..len {
        let index = 1 + rng.below(rank as usize) as u32;
        letters.push(Letter { index, dir });
        dir = dir.flip();
    }
    letters
}

/// A random reduced path starting at `b0`.
pub fn random_path(rng: &mut Rng, rank: u32, max_len: usize) -> ArcPath {
    let raw = random_raw_word(rng, rank, max_len);
    ArcPath::reduce(rank, Endpoint::B0, &raw).unwrap()
}

/// A random closed path at `b0` that does not cyclically reduce away.
pub fn random_loop(rng: &mut Rng, rank: u32, max_half_len: usize) -> ArcPath {
    loop {
        let half = 1 + rng.below(max_half_len);
        let mut letters = Vec::with_capacity(2 * half);
        for _ in 0..half {
            letters.push(Letter::forward(1 + rng.below(rank as usize) as u32));
            letters.push(Letter::backward(1 + rng.below(rank as usize) as u32));
        }
        let path = ArcPath::reduce(rank, Endpoint::B0, &letters).unwrap();
        if path.is_closed() && path.cyclic_normal_form().is_ok() {
            return path;
        }
    }
}
