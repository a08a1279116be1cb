//! Exact scalars and linear algebra over the rationals.

pub mod matrix;
pub mod modular;
pub mod rational;

pub use matrix::{
    kernel_basis, kernel_multimodular, rank_certified, rank_certified_modular, rank_exact, ExactSystem, QMatrix, RankCertificate,
    RankMethod,
};
pub use rational::{
    binomial, ceil_i64, ceil_int, floor_i64, floor_int, gcd_i64, is_integer, parse_rational, q, qbig, qi, to_f64,
    Frac, Rational,
};
