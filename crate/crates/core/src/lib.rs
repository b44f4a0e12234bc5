//! Exact computations for walls and chambers of weighted hyperplane
//! arrangements.
//!
//! Everything is carried out over the rationals or over the ordered field
//! Q(ε) with ε a positive infinitesimal, so statements that hold "for ε small
//! enough" are decided symbolically:
//!
//! - [`exactnum`]: rationals, polynomials in ε and the field Q(ε).
//! - [`weightdomain`]: weight vectors, walls, chambers and segment crossings.
//! - [`arrangement`]: hyperplane arrangements, flats, log canonicity and stability.
//! - [`intersect`]: intersection numbers on the blow-up of projective space at a point.
//! - [`replacement`]: limit sections of one-parameter hyperplane families.
//! - [`mixedsub`]: regular mixed subdivisions of dilated simplices via the Cayley trick.

pub mod arrangement;
pub mod error;
pub mod exactnum;
pub mod intersect;
pub mod linalg;
pub mod mixedsub;
pub mod replacement;
pub mod weightdomain;

pub use error::{Error, Result};
pub use exactnum::{EpsPoly, EpsRat, Rat};
