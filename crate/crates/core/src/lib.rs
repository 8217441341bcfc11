//! Certified evaluation of ln Γ(z), ln Γ(z+½) and the Riemann-Siegel theta
//! function from truncated asymptotic series, with rigorous error radii and an
//! arbitrary-precision oracle for checking them.

pub mod bernoulli;
pub mod bounds;
pub mod error;
pub mod ext;
pub mod lngamma;
pub mod oracle;
mod scaled;
pub mod series;
pub mod theta;

pub use error::{Error, Result};
pub use ext::{ExtComplex, ExtReal};
