//! Linear algebra over F_p and (co)chain complexes.

mod chain;
mod echelon;
mod homology;
pub mod fp;

pub use chain::{betti, BettiProfile, ChainComplexFp};
pub use echelon::{rank_dense, rank_fp, rank_sparse, SparseEchelon, DENSE_COLUMN_LIMIT};
pub use fp::FpMatrix;
pub use homology::{cochain_complex, invariant_basis, invariant_cochain_complex, InvariantBasis};
