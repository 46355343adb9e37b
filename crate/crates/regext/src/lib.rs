//! Exact computations with finitely generated graded modules over a
//! standard graded polynomial ring `k[x_1..x_n]` with `k` a prime field.
//!
//! The crate is organized bottom-up:
//!
//! * [`ring`], [`monomial`], [`poly`] — exact prime-field and sparse
//!   polynomial arithmetic with the degrevlex order;
//! * [`freemod`] — twisted graded free modules, vectors and homogeneous maps;
//! * [`gb`] — Gröbner bases for submodules of free modules, normal forms,
//!   kernels (syzygies), colon and saturation by the maximal ideal;
//! * [`resolution`] — minimal graded free resolutions, Betti tables and the
//!   numerical invariants read off from them;
//! * [`hilbert`] — Hilbert functions, series, polynomials and coefficients;
//! * [`cohomology`] — Ext modules, graded local cohomology dimensions via
//!   duality, truncation;
//! * [`degrees`] — filter-regular sequences and the homological degree;
//! * [`bounds`] — the verified bound formulas and the per-instance checker;
//! * [`corpus`] — deterministic generation of test modules;
//! * [`textio`], [`report`] — the presentation file format and JSON/CSV
//!   report emission.

pub mod analysis;
pub mod bounds;
pub mod cohomology;
pub mod corpus;
pub mod degrees;
pub mod freemod;
pub mod gb;
pub mod hilbert;
pub mod monomial;
pub mod oracle;
pub mod poly;
pub mod presentation;
pub mod report;
pub mod resolution;
pub mod ring;
pub mod textio;

pub use freemod::{FreeModule, FreeVector, GradedMap};
pub use presentation::Presentation;
pub use ring::PolyRing;

/// An integer extended by the sentinels `reg(0) = -inf` and `indeg(0) = +inf`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExtInt {
    NegInf,
    Fin(i64),
    PosInf,
}

impl ExtInt {
    pub fn fin(self) -> Option<i64> {
        match self {
            ExtInt::Fin(v) => Some(v),
            _ => None,
        }
    }

    pub fn expect_fin(self, what: &str) -> i64 {
        match self {
            ExtInt::Fin(v) => v,
            other => panic!("expected a finite {what}, got {other}"),
        }
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> Self {
        ExtInt::Fin(v)
    }
}

impl std::fmt::Display for ExtInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ExtInt::NegInf => write!(f, "-inf"),
            ExtInt::Fin(v) => write!(f, "{v}"),
            ExtInt::PosInf => write!(f, "+inf"),
        }
    }
}

/// Errors produced by the algebra layers.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u32),
    #[error("ring must have at least one variable")]
    NoVariables,
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("exponent vectors have different lengths ({0} vs {1})")]
    VariableCountMismatch(usize, usize),
    #[error("map shapes do not compose: {0}")]
    ShapeMismatch(String),
    #[error("inhomogeneous input: {0}")]
    Inhomogeneous(String),
    #[error("retry limit exceeded: {0}")]
    RetryLimit(String),
    #[error("degree window misconfigured: {0}")]
    Window(String),
}
