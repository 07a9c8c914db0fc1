//! Exact invariants of the genus-two handlebody-knots cut off by the
//! twice-punctured torus in the exterior of Eudave-Muñoz knots `K(l,m,n,p)`.

pub mod classify;
pub mod cli;
pub mod emknot;
pub mod equivalence;
pub mod error;
pub mod invariants;
pub mod projrat;
pub mod tangle;
pub mod verify;

pub use emknot::{HandlebodyKnot, Params, Side};
pub use error::{Error, Result};
pub use projrat::ProjRat;
