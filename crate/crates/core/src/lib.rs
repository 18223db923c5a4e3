//! Semi-real quaternion algebra and numerical rectifying-curve analysis in
//! the semi-Euclidean spaces R^3_1 and R^4_2.
//!
//! The crate is organized bottom-up:
//!
//! * [`quat`]: the quaternion product, conjugation, quadratic form and
//!   causal characters.
//! * [`curve`]: sampled curves, numerical derivatives and pseudo arc-length
//!   reparametrization.
//! * [`frenet3`] and [`frenet4`]: Frenet frames, curvatures and residuals.
//! * [`rectifying`]: the position-vector characterizations of rectifying
//!   curves, each with fitted constants and residuals.
//! * [`constructors`]: pseudosphere constructions, curvature families and
//!   prescribed-curvature integrators.
//! * [`report`]: the end-to-end analysis pipeline and its JSON/CSV outputs.

pub mod config;
pub mod constructors;
pub mod curve;
pub mod error;
pub mod fit;
pub mod frenet3;
pub mod frenet4;
pub mod io;
pub mod quat;
pub mod rectifying;
pub mod report;
pub mod stencil;

pub use error::{Error, Result};
pub use quat::{Ambient, BasisSignature, CausalCharacter, SemiQuaternion, Sign};
