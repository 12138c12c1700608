#![allow(dead_code)]

use ppn_core::corpus::{default_corpus, CorpusCaps, CorpusEntry};

pub const PRIMES: [u32; 3] = [2, 3, 5];

pub fn full_corpus() -> Vec<CorpusEntry> {
    default_corpus(&PRIMES, &CorpusCaps::default()).unwrap()
}

/// Corpus groups of order at most `p^4`.
pub fn small_corpus() -> Vec<CorpusEntry> {
    full_corpus()
        .into_iter()
        .filter(|e| e.presentation.ngens() <= 4)
        .collect()
}
