//! Quantum cluster structures on Grassmannians: weakly separated labels,
//! rank-one module invariants, based quantum tori, quantum seed mutation,
//! and an independent quantum-matrix oracle.

pub mod combinatorics;
pub mod grassmannian;
pub mod invariants;
pub mod matrix;
pub mod poly;
pub mod qmatrix;
pub mod seed;
pub mod torus;
pub mod verify;

pub use combinatorics::{GrassParams, IndexSubset, Partition};
pub use grassmannian::{initial_seed, GeometricExchange};
pub use matrix::IntMatrix;
pub use seed::{ExchangeMatrix, LambdaMatrix, QuantumSeed};
pub use torus::{QCoefficient, TorusElement};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Combinatorics(#[from] combinatorics::CombinatoricsError),
    #[error(transparent)]
    Invariant(#[from] invariants::InvariantError),
    #[error(transparent)]
    Torus(#[from] torus::TorusError),
    #[error(transparent)]
    Seed(#[from] seed::SeedError),
    #[error("initial seed has compatibility degrees {0:?}, expected all 2")]
    Degrees(Vec<i64>),
    #[error(transparent)]
    QMatrix(#[from] qmatrix::QMatrixError),
}
