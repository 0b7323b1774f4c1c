//! Symplectic and orthogonal groups over `GF(q)`: spaces, certified
//! elements, fixed-point counts, explicit character values and the
//! verifiers built from them.

pub mod chars;
pub mod counts;
pub mod group;
pub mod space;
pub mod verify;

pub use chars::{beta_value, derived_constituents, weil_values, EigenDims};
pub use counts::{point_counts, PointCounts};
pub use group::{generators, sample, Certified, GroupElement};
pub use space::{group_order, Kind, QuadraticSpace};
