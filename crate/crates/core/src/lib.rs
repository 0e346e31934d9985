//! Schubert polynomials computed three ways (Demazure recursion, pipe dreams,
//! bumpless pipe dreams), a rhombus-puzzle engine on the triangular lattice,
//! and checkers for the convolution and vanishing identities that characterize
//! the Schubert family.

pub mod bpd;
pub mod cli;
pub mod error;
pub mod identity;
pub mod perm;
pub mod pipedream;
pub mod poly;
pub mod puzzle;
pub mod report;
pub mod schubert;
pub mod structure;

pub use error::{Error, Result};
pub use perm::Permutation;
pub use poly::Polynomial;
