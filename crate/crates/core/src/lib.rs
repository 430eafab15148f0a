//! Orchard crossing numbers of rectilinear graph drawings.
//!
//! An Orchard crossing is a point where a drawn edge meets the line spanned
//! by some other pair of drawing points. This crate counts them exactly over
//! rational coordinates, builds low-crossing drawings for cycle-based
//! families (disjoint cycles, chains, bouquets, prisms, ladders), evaluates
//! the closed-form values and lower/upper bounds for those families, and
//! searches for drawings with few crossings.

pub mod bounds;
pub mod constructions;
pub mod crossings;
pub mod error;
pub mod exact_geom;
pub mod graphs;
pub mod io;
pub mod search;
pub mod verify;

pub use crossings::{CircularOrder, Drawing};
pub use error::{Error, Result};
pub use exact_geom::{Point, Rational};
pub use graphs::{Family, FamilySpec, Graph};
