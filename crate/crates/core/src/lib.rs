//! Exact stable-form calculus for G₂- and SU(3)-structures on Lie algebras of dimension ≤ 7.

pub mod catalog;
pub mod coeff;
pub mod curvature;
pub mod error;
pub mod exterior;
pub mod liealg;
pub mod linalg;
pub mod obstructions;
pub mod parse;
pub mod poly;
pub mod scalar;
pub mod stability;
pub mod structures;
pub mod verify;

pub use coeff::{Coeff, Field};
pub use error::{Error, Result};
pub use exterior::{Blade, Form, LinearMap, Metric, Vector};
pub use poly::{Monomial, PolyK, RatFunK, Var};
pub use scalar::ScalarK;
pub use liealg::{parse_algebra, GenericClosedForm, LieAlgebra, Quotient};
