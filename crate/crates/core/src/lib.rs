//! Exact orders, differents and conductors in number fields, arithmetic
//! discriminants of algebraic points on the projective line, finiteness
//! criteria for curves in a product of two curves, and point censuses.

pub mod archimedean;
pub mod cli;
pub mod criteria;
pub mod error;
pub mod factor;
pub mod field;
pub mod height;
pub mod intfactor;
pub mod lattice;
pub mod linalg;
pub mod oracle;
pub mod orders;
pub mod point_search;
pub mod poly;
pub mod records;
pub mod roots;
pub mod sample;

pub use error::{Error, Result};
pub use field::{compositum, AlgebraicNumber, Compositum, NumberField};
pub use poly::{IntPoly, RatPoly};
