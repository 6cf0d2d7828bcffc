//! Exact Waring rank of binary forms.
//!
//! Given a binary form `q` of degree `d` with rational coefficients, this crate
//! computes the least `r` such that `q` is a sum of `r` `d`-th powers of linear
//! forms, certifies it with the catalecticant (Hankel) rank and an apolar
//! generator, places `q` in its rank stratum, and extracts an explicit
//! high-precision decomposition.
//!
//! ```
//! use waring_core::{waring_rank, BinaryForm, CaseTag};
//!
//! let q = BinaryForm::monomial(2, 1); // x^2 y
//! let r = waring_rank(&q).unwrap();
//! assert_eq!(r.rank, 3);
//! assert_eq!(r.case, CaseTag::Degenerate);
//! ```

pub mod apolarity;
pub mod decompose;
pub mod error;
pub mod forms;
pub mod linalg;
pub mod oracle;
pub mod sylvester;

pub use apolarity::{
    apolar_generator, apolar_space, border_rank, catalecticant, discriminant, is_squarefree,
    ApolarBasis,
};
pub use decompose::{
    decompose, projective_roots, solve_weights, verify_decomposition, Decomposition,
    DecompositionMethod, VerifyReport,
};
pub use error::{Error, Result};
pub use forms::{expand_power_sum, BinaryForm, ComplexPoint, DualCoordinates};
pub use linalg::{nullspace, rank_exact, rank_modular, RationalMatrix};
pub use oracle::{numeric_fit, oracle_rank_upper, FitResult};
pub use sylvester::{
    classify, closure_ranks, sample_degenerate, sample_generic_rank, waring_rank, CaseTag,
    Classification, RankResult,
};
