//! Shared numerical kernels.

mod quadrature;
mod special;

pub use quadrature::{
    integrate, CancelToken, ProgressObserver, QuadValue, QuadratureConfig, QuadratureProgress, QuadratureResult,
};
pub use special::{cosine_integral, entire_cosine_integral, sine_integral, EULER_GAMMA, REFERENCE_TABLE};
