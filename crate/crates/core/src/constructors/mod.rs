//! Generators for rectifying curves and their controls.

pub mod integrate;
pub mod parse;
pub mod profile;
pub mod sphere;

pub use integrate::{
    integrate_frenet3, integrate_frenet4, rectifying_coefficients, InitialFrame3, InitialFrame4, IntegrateOptions,
    Trajectory3, Trajectory4,
};
pub use parse::{parse_profile, parse_range, parse_sphere_family, parse_cone_case};
pub use profile::{
    curvature_family_thm43, family_ode_residual, CurvatureProfile, Profile3, Profile4, ScalarFunction, Signs3, Signs4,
    FamilyCase, FamilyConstants,
};
pub use sphere::{base_sphere_curve, construct_thm34, SphereCurveFamily, SphereFamilyKind, ConeCase};
