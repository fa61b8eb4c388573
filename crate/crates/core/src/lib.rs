//! Exact computational toolkit for the quantized matrix algebra `M_q(n)` and
//! its generator-subset subalgebras at roots of unity.
//!
//! The crate has two sides that meet at the leading-term exponent matrix:
//!
//! * the symbolic side ([`laurent`], [`ncalgebra`], [`minors`]) rewrites words
//!   into PBW normal form over integer Laurent coefficients, builds quantum
//!   minors and candidate central elements, and checks commutation exactly or
//!   modulo a cyclotomic polynomial;
//! * the lattice side ([`skewlat`], [`degree`]) works with the integer
//!   skew-symmetric defining matrix of the associated quasipolynomial algebra:
//!   congruence normal form, image cardinality mod `m`, kernels mod `m`, and
//!   the degree `sqrt(h)`.

pub mod degree;
pub mod error;
pub mod laurent;
pub mod minors;
pub mod ncalgebra;
pub mod serde_big;
pub mod skewlat;

pub use error::{Error, Result};
