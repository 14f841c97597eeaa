//! Exact tools for studying the Tuza constant `c_k` of k-uniform hypergraphs.
//!
//! The crate is organised bottom-up:
//!
//! * [`hypergraph`]: the hypergraph model, degree profiles, closed removal `H - U`.
//! * [`transversal`]: exact transversal numbers (branch and bound plus a brute-force oracle).
//! * [`construction`]: the 13-block lower-bound instance and the closed-form bounds.
//! * [`lp`]: a two-phase rational simplex with dual, Farkas and ray certificates.
//! * [`weights`]: weight schemes, the discharging constraint system, checking and optimisation.
//! * [`table`]: the per-k comparison of lower and upper bounds.

pub mod construction;
pub mod error;
pub mod hypergraph;
pub mod lp;
pub mod rational;
pub mod table;
pub mod transversal;
pub mod weights;

pub use error::{Error, Result};
pub use hypergraph::{DegreeProfile, Hypergraph};
pub use num_rational::BigRational;
