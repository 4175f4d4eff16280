//! Matrix versions of the new extended gamma, beta, Gauss, confluent, Appell and
//! Lauricella functions, with quadrature and series evaluators and a numerical
//! identity-verification engine backed by an independent scalar oracle.

pub mod config;
pub mod error;
pub mod gammabeta;
pub mod hyper;
pub mod matcalc;
pub mod multivar;
pub mod par;
pub mod quadrature;
pub mod verify;

pub use config::EvalConfig;
pub use error::{MatError, Result};
pub use matcalc::{SquareMatrix, Tolerances, C64};
pub use quadrature::{EvalReport, QuadratureSpec, SeriesSpec};
