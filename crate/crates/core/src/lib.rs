//! Jordan partitions of `J_r (x) J_s` over fields of characteristic `p`.
//!
//! The fast path never touches a matrix: it combines periodicity and duality
//! of deviation vectors mod `p^m`, `p`-multiple scaling, closed forms, and a
//! recurrence driven by p-adic valuations of binomial determinants. The
//! [`oracle`] module computes the same partitions by brute-force elimination
//! and serves as ground truth.

pub mod arith;
pub mod cli;
pub mod delta;
pub mod error;
pub mod fastpath;
mod linalg;
pub mod oracle;
pub mod partitions;
pub mod survey;
pub mod verify;

pub use arith::{Prime, PrimePower};
pub use error::{JordanError, Result};
pub use fastpath::{jordan_partition, jordan_partition_with, Engine, Reduction, ReductionKind};
pub use partitions::{DeviationVector, JordanRecord, Method, Partition};
