//! Weighted integer exponential systems `{t^γ e^{2πint} : n ∈ ℤ, γ ∈ Γ}`,
//! lacunary polynomials and generalized Vandermonde matrices.
//!
//! The crate is split into an exact layer (big rationals: gap sets,
//! lacunary polynomials, Sturm chains, Vandermonde determinants, uniqueness
//! checks, null-space measures) and a floating layer (trigonometric
//! obstructions, singular-value scans, frame bounds, quadrature witnesses).
//! The two layers only meet at explicit conversion points.

pub mod config;
pub mod error;
pub mod frame;
pub mod gamma;
pub mod lacunary;
pub mod linalg;
pub mod obstructions;
pub mod quadrature;
pub mod rational;
pub mod sturm;
pub mod uniqueness;
pub mod vandermonde;

pub use config::Config;
pub use error::{Error, Result};
pub use gamma::{GammaSet, ParitySplit};
pub use lacunary::LacunaryPolynomial;
pub use rational::Rational;
