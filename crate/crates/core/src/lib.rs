//! Exact computations for the Hilbert scheme of points in the plane: K-theoretic
//! stable envelopes, vertex functions, solutions of exotic q-difference equations,
//! quantum toroidal wall-crossing operators on Fock space and Bethe roots.

pub mod bethe;
pub mod error;
pub mod field;
pub mod fock;
pub mod linalg;
pub mod params;
pub mod poly;
pub mod qde;
pub mod ratfunc;
pub mod series;
pub mod stab;
pub mod toroidal;
pub mod vertex;
pub mod young;

pub use error::{Error, Result};
pub use field::{Field, Rat};
