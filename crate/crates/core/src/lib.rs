//! Exact symbolic engine for the 4D+ bicovariant exterior calculus on
//! quantum SU(2): braiding, antisymmetrizers, sesquilinear contractions,
//! Hodge operators, metrics and Laplacians over Q(i)(q^(1/2)).

pub mod calculus;
pub mod cli;
pub mod exterior;
pub mod hodge;
pub mod laplacian;
pub mod metric;
pub mod qalgebra;
pub mod scalar;
pub mod verify;
