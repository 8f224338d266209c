//! Serialization, graph and diagram export, shipped fixtures.

pub mod dot;
pub mod fixtures;
pub mod json;
pub mod svg;

pub use dot::{export_dot, export_maxd_dot};
pub use fixtures::{fixture_complex, frob, power};
pub use json::{parse_complex, serialize_complex, IoError};
pub use svg::export_svg_2diagram;
