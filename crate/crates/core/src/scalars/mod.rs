//! Exact arithmetic foundation: arbitrary-precision rationals, the field
//! Q(q) of rational functions in q, and truncated Laurent series in ω.

mod poly;
mod qrational;
mod series;

pub use poly::Rational;
pub use qrational::{qfact, qint, QRational};
pub use series::{OmegaRational, OmegaSeries};
