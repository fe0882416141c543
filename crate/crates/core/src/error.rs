use thiserror::Error;

use crate::lattice::LatticePoint;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid weight system {weights:?}: {reason}")]
    InvalidWeights { weights: Vec<u32>, reason: String },

    #[error("{0:?} is not Gorenstein (lcm of weights does not divide their sum)")]
    NotGorenstein([u32; 4]),

    #[error("{0} is not an odd prime below 2^31")]
    NotPrime(u64),

    #[error("matrix entry {value} at ({row}, {col}) vanishes modulo {prime}")]
    EntryVanishes { row: usize, col: usize, value: i64, prime: u64 },

    #[error("results disagree between primes {p1} and {p2} ({p1_value} vs {p2_value}) for matrix {fingerprint}")]
    PrimeDisagreement {
        p1: u64,
        p2: u64,
        p1_value: usize,
        p2_value: usize,
        fingerprint: String,
    },

    #[error("kernel vector at multidegree {0} does not lift to an integer syzygy under either prime")]
    LiftFailure(LatticePoint),

    #[error("consistency check failed: {0}")]
    Inconsistent(String),

    #[error("degree-3 generation has not been verified; first disconnected fiber at {0}")]
    CubicGenerator(LatticePoint),

    #[error("invalid identification: {0}")]
    InvalidIdentification(String),

    #[error("Veronese presentation incomplete: generators may exist up to degree {needed}, cutoff covers {covered}")]
    IncompletePresentation { needed: u32, covered: u32 },

    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
