//! Exact-arithmetic toolkit for Fischer operators `q ↦ L(ψ·q)` where `L` is a
//! constant-coefficient second-order operator (the Laplacian by default).
//!
//! The crate is organised bottom-up:
//!
//! * [`poly`]: sparse multivariate polynomials over ℚ, second-order
//!   operators, homogeneous structure, translation and multiplicities.
//! * [`text`]: parsing and canonical printing of polynomial expressions.
//! * [`linalg`]: graded monomial bases and fraction-free exact elimination.
//! * [`fischer`]: graded Fischer matrices, truncated solves, kernels,
//!   Fischer decompositions, the graded recursion and structural
//!   non-surjectivity verdicts.
//! * [`harmonic`]: harmonicity tests, harmonic bases and harmonic divisors.
//! * [`domains`]: ellipsoid Dirichlet solving and polygon reports.

pub mod domains;
pub mod error;
pub mod fischer;
pub mod harmonic;
pub mod linalg;
pub mod poly;
pub mod rational;
pub mod text;

pub use error::{Error, Result};
pub use fischer::{FischerProblem, ObstructionRule, ObstructionVerdict, SolveOutcome, SolveStatus};
pub use linalg::{DegreeSpec, ExactMatrix, GradedBasis};
pub use poly::{Monomial, Multiplicity, Polynomial, QuadraticOperator};
pub use rational::Rational;
pub use text::{format_polynomial, parse_polynomial, ParseError, SourceSpan};
