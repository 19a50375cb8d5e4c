//! Toric invariance and toricity of vertically parametrized polynomial systems,
//! with a reaction-network frontend.

pub mod error;
pub mod exactalg;
pub mod polyhedra;
pub mod polyring;
pub mod toricity;
pub mod crn;

pub use error::{Error, Result};
