//! Oriented graded posets, molecules and their combinatorics.

pub mod glue;
pub mod graph;
pub mod graycat;
pub mod io;
pub mod iso;
pub mod molecule;
pub mod ogp;
pub mod order;
pub mod products;
pub mod regular;
pub mod theories;

pub use molecule::{Cert, Molecule, Recognition};
pub use ogp::{ElemSet, ElementSpec, Ogp, Sign};
