//! Metric and symplectic structure on a chart.

mod chart;
pub mod library;
pub mod linalg;
mod tangent_lift;

pub use chart::{ChartGeometry, LTensor};
pub use linalg::Matrix;
pub use tangent_lift::{canonical_almost_product, tangent_lift_chart};

#[cfg(test)]
mod tests;
