//! Entanglement geometry of finite-dimensional pure states.
//!
//! Rank-based separability tests, the partition lattice of subsystems,
//! determinantal-variety numerology, Weyl-operator holonomy, finite Čech
//! covers with Brauer-type obstructions, splitting-type factorization on
//! the projective line, and spectral product criteria.

pub mod cech;
pub mod error;
pub mod gluing;
pub mod linalg;
pub mod rank_geometry;
pub mod satake;
pub mod separability;
pub mod splitting;
pub mod tensor;

pub use error::{Error, Result};
pub use linalg::{CMatrix, CVector, C64};
