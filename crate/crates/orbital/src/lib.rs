//! Decay and square-integrability of convolution powers of orbital
//! measures on Riemannian symmetric spaces of noncompact type.
//!
//! The crate is organized bottom-up:
//!
//! * [`rootsys`] — exact realizations of the restricted root systems,
//!   chamber points, pairings, and Weyl groups;
//! * [`catalog`] — the classification table of irreducible symmetric
//!   spaces with restricted root multiplicities and dimensions;
//! * [`subsystems`] — annihilator sets of singular chamber points and
//!   the maximal proper full subsystems containing them;
//! * [`decay`] — minimal weighted root counts, the uniform and
//!   regular-point square-integrability gates, differentiability orders
//!   of convolution-power densities, and explicit spherical-bound
//!   products;
//! * [`rank1`] — numerically verified spherical functions and truncated
//!   Plancherel integrals on the hyperbolic plane.

pub mod catalog;
pub mod decay;
pub mod rank1;
pub mod rootsys;
pub mod subsystems;
