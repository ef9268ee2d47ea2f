//! Exact symbolic computation of invariants, connections, curvature and rank
//! of planar webs presented by a polynomial differential equation.

pub mod assoc;
pub mod conn;
pub mod extract;
pub mod rank;
pub mod error;
pub mod kernel;
pub mod webdef;

pub use error::{Result, WebError};
