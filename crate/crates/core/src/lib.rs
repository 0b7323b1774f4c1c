//! Exact-arithmetic toolkit for McKay graphs of symmetric and alternating
//! groups and for the low-degree characters of symplectic and orthogonal
//! groups over finite fields.

pub mod an;
pub mod bounds;
pub mod classical;
pub mod error;
pub mod gf;
pub mod harness;
pub mod mckay;
pub mod partitions;
pub mod quad;
pub mod sn;
pub mod table;

pub use error::{Error, Result};
