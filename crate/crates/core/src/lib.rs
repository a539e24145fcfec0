//! Exact computation of k-normality invariants and Castelnuovo-Mumford
//! regularity bounds for lattice polytopes.
//!
//! ```
//! use polynorm::{bounds, catalog};
//!
//! let p = catalog::bruns_gubeladze(4).unwrap();
//! let r = bounds::full_report(&p, "bruns:4", &Default::default()).unwrap();
//! assert_eq!(r.k_p, Some(3));
//! assert_eq!(r.regularity, Some(4));
//! ```

pub mod audit;
pub mod bounds;
pub mod catalog;
pub mod error;
pub mod exactmath;
pub mod invariants;
pub mod polytope;
pub mod semigroup;

pub use bounds::{analyze, full_report, Analysis, InvariantReport, ReportOptions};
pub use catalog::FamilySpec;
pub use error::{Error, Result};
pub use exactmath::{IntVector, Rational};
pub use polytope::Polytope;
