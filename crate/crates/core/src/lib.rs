//! Exact computer algebra for the (q,Q)-current algebras of sl_n.
//!
//! Everything is computed over the field Q(q) of rational functions in a
//! formal parameter q, so every check in the crate is an exact identity,
//! never a floating-point approximation. The main layers:
//!
//! - [`scalars`]: rationals, Q(q), truncated ω-series;
//! - [`symfun`]: partitions and the q-analogue power-sum calculus;
//! - [`hwclass`]: classification data for finite-dimensional simple
//!   highest-weight modules (node polynomials, canonical forms, eigen-series);
//! - [`presentation`]: the symbolic layer of generators, relations,
//!   composite elements and coproduct formulas;
//! - [`repmodule`]: concrete finite-dimensional modules with exact matrices
//!   and relation/identity verification;
//! - [`pbwcheck`]: graded dimension counts against the PBW monomial basis.

pub mod error;
pub mod hwclass;
pub mod linalg;
pub mod pbwcheck;
pub mod presentation;
pub mod repmodule;
pub mod scalars;
pub mod symfun;

pub use error::{Error, Result};
pub use hwclass::{HighestWeight, HighestWeightNode, Multipartition, NodePolynomial};
pub use linalg::Matrix;
pub use presentation::{AlgebraElement, GenSymbol, GeneratorMap, TensorElement};
pub use repmodule::{HWReport, Module};
pub use scalars::{qfact, qint, OmegaRational, OmegaSeries, QRational, Rational};
pub use symfun::{Partition, VariableValues};
