//! Exact construction, identity auditing, and heat-equation solutions for the
//! two-variable (p,q) Gould–Hopper polynomials
//!
//! H_{n,m}^{(p,q)}(z,w|γ) = n! m! Σ_{k} γ^k/k! · z^{n−pk}/(n−pk)! · w^{m−qk}/(m−qk)!
//!
//! All arithmetic is exact over the rationals; nothing here evaluates in
//! floating point.

pub mod classical;
pub mod cli;
pub mod error;
pub mod expr;
pub mod family;
pub mod format;
pub mod heat;
pub mod identity;
pub mod poly;
pub mod scalar;
pub mod series;
pub mod var;

pub use error::{Error, Result};
pub use family::{FamilyParams, GHPoly, Strategy};
pub use poly::{Monomial, Poly};
pub use scalar::Scalar;
pub use series::SeriesUV;
pub use var::Var;
