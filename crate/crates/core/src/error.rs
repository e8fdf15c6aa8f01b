use thiserror::Error;

use crate::roots::Root;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: usize, right: usize },

    #[error("invalid signed permutation {images:?}: {reason}")]
    InvalidPermutation { images: Vec<i32>, reason: String },

    #[error("element is not an involution: {0}")]
    NotAnInvolution(String),

    #[error("n = {n} exceeds the configured bound {max_n}")]
    RankBound { n: usize, max_n: usize },

    #[error("n must be at least 1")]
    ZeroRank,

    #[error("element {0} is not in the poset")]
    NotInPoset(String),

    #[error("invalid root {0}")]
    InvalidRoot(String),

    #[error("roots {0} and {1} are not orthogonal")]
    NotOrthogonal(Root, Root),

    #[error("zero coefficient for root {0}")]
    ZeroCoefficient(Root),

    #[error("scalar {0} is not invertible")]
    NotInvertible(String),

    #[error("entry ({row}, {col}) has exponent {exponent}, limit at zero diverges")]
    NegativeExponent { row: i32, col: i32, exponent: i32 },

    #[error("indices must satisfy 1 <= i < k < j <= n, got (i, k, j) = ({i}, {k}, {j}) with n = {n}")]
    IndexOrder { i: usize, k: usize, j: usize, n: usize },

    #[error("rank-of-submatrix and south-west count disagree at ({row}, {col}): {rank} vs {count}")]
    RankDefinitionMismatch { row: usize, col: usize, rank: usize, count: usize },

    #[error("invalid rook placement: {0}")]
    InvalidPlacement(String),

    #[error("size mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),

    #[error("matrix is not a functional: {0}")]
    NotAFunctional(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown format {0}")]
    UnknownFormat(String),

    #[error("type {0} is not supported")]
    UnsupportedType(String),
}

pub type Result<T> = std::result::Result<T, Error>;
