//! Numerical toolkit for the two-oscillator (two-photon) construction of the
//! O(3,2) de Sitter algebra.
//!
//! The crate is organised bottom-up:
//!
//! - [`fock`]: truncated two-mode Fock space, ladder operators and quadratures.
//! - [`algebra`]: the ten quadratic generators built from two oscillators and
//!   the commutator checks of their Lie algebra.
//! - [`five`]: the 5×5 matrix and differential-operator representation, the
//!   translation generators of the Poincaré algebra and finite group elements.
//! - [`contraction`]: the ε-scaled similarity transform taking O(3,2) to the
//!   inhomogeneous Lorentz algebra.
//! - [`optics`]: two-mode squeezed vacuum and the light-cone squeeze of the
//!   oscillator ground state.
//!
//! Every algebraic statement is checked numerically and reported as residuals
//! rather than asserted.

pub mod algebra;
pub mod combination;
pub mod contraction;
pub mod error;
pub mod five;
pub mod fock;
pub mod generator;
pub mod linalg;
pub mod optics;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;

/// Imaginary unit.
pub const I: C64 = C64::new(0.0, 1.0);
