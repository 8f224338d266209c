//! Presented monoidal theories, braidings and their tensor products.

pub mod builtin;
pub mod diag;
pub mod perm;
pub mod pro;

pub use builtin::{builtin, Builtin, BuiltinError};
pub use diag::{presentation_of_smash, DiagCell, DiagPresentation};
pub use perm::{perm_decompose, sigma_expr, sigma_star_expr, wire_permutation, Permutation};
pub use pro::{prop_quotient, tensor_pros, Op, Presentation, Relation, RelationKind, Slice};
