//! Exact and floating-point truncated series.

mod bivariate;
mod coeff;
mod laurent;
mod power;

pub use bivariate::BivariateSeries;
pub use coeff::Coeff;
pub use laurent::LaurentPoly;
pub use power::{catalan_like, FloatSeries, PowerSeries, Series};
