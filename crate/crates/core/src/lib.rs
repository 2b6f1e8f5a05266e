//! Generator modules for elementary abelian p-groups and the global-dimension
//! bounds they give for group algebras in characteristic p.
//!
//! The pipeline runs bottom-up:
//!
//! * [`matrix`]: exact dense linear algebra over F_p;
//! * [`module`]: modules over kP, P elementary abelian, with radical
//!   filtrations, restriction, induction, automorphism twists and Hom spaces;
//! * [`decompose`]: endomorphism algebras, Krull–Schmidt decomposition and
//!   isomorphism testing;
//! * [`genset`]: the recursively defined generator set, its closure-based
//!   counterpart, and the layer partition;
//! * [`basic`] and [`qh`]: the basic endomorphism algebra, standard modules,
//!   the layered certificate and exact global dimension;
//! * [`bridge`]: permutation groups, Sylow embeddings, Mackey decomposition and
//!   the transfer of the bound to kG.

pub mod algebra;
pub mod basic;
pub mod bridge;
pub mod cert;
pub mod decompose;
pub mod error;
pub mod field;
pub mod genset;
pub mod matrix;
pub mod module;
pub mod par;
pub mod perm;
pub mod pgroup;
pub mod poly;
pub mod qh;
pub mod suites;

pub use error::{Error, Result};
pub use field::{Fp, Prime};
pub use matrix::FpMatrix;
