//! Numerical building blocks shared by the physics modules.

pub mod abel_plana;
pub mod derivative;
pub mod fit;
pub mod matsubara;
pub mod quadrature;
pub mod special;

pub use abel_plana::{
    abel_plana_difference, abel_plana_from_axis, abel_plana_on_ray, abel_plana_real_symmetric,
    abel_plana_contour, gaussian_difference,
    exponential_difference,
};
pub use derivative::{derivative_wrt_parameter, richardson, richardson_to_tolerance, Derivative};
pub use fit::{fit_scaling, ScalingFit};
pub use matsubara::{matsubara_sum, matsubara_sum_parallel, matsubara_sum_with, SumResult};
pub use quadrature::{
    integrate, integrate_semi_infinite, integrate_semi_infinite_with, integrate_with_breakpoints,
    with_fallible, QuadOptions, QuadratureResult,
};
pub use special::{csqrt, polylog3};
