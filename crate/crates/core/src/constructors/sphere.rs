//! Unit-speed curves on the pseudosphere `S^2_1(1)` and the pseudohyperbolic
//! space `H^2_0(1)`, and the cone constructions built on them.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::curve::{linspace, CurveSamples, ParamKind, MIN_SAMPLES};
use crate::error::{Error, Result};
use crate::quat::{h_inner, BasisSignature, SemiQuaternion};

/// Smallest latitude height accepted; `b = 0` is a great circle, whose cone
/// image is a straight line.
pub const MIN_LATITUDE_B: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SphereFamilyKind {
    /// `(r cos(t/r), r sin(t/r), b)`, `r = sqrt(1 + b^2)`; spacelike on `S^2_1`.
    #[serde(rename = "S12_latitude")]
    S12Latitude,
    /// `(sqrt(1 - b^2), b cosh(t/b), b sinh(t/b))`, `0 < b < 1`; timelike on `S^2_1`.
    #[serde(rename = "S12_timelike")]
    S12Timelike,
    /// `(b cos(t/b), b sin(t/b), sqrt(1 + b^2))`; spacelike on `H^2_0`.
    #[serde(rename = "H02_spacelike")]
    H02Spacelike,
}

impl fmt::Display for SphereFamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SphereFamilyKind::S12Latitude => "S12_latitude",
            SphereFamilyKind::S12Timelike => "S12_timelike",
            SphereFamilyKind::H02Spacelike => "H02_spacelike",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphereCurveFamily {
    pub kind: SphereFamilyKind,
    pub b: f64,
    pub phase: f64,
}

impl SphereCurveFamily {
    pub fn new(kind: SphereFamilyKind, b: f64, phase: f64) -> Result<Self> {
        let ok = b.is_finite()
            && phase.is_finite()
            && match kind {
                SphereFamilyKind::S12Latitude => b >= MIN_LATITUDE_B,
                SphereFamilyKind::S12Timelike => b > 0.0 && b < 1.0,
                SphereFamilyKind::H02Spacelike => b > 0.0,
            };
        if !ok {
            return Err(Error::InvalidFamilyParameter(format!("{kind}: b = {b}, phase = {phase}")));
        }
        Ok(Self { kind, b, phase })
    }

    /// `h(y, y)` on the family: `+1` on `S^2_1`, `-1` on `H^2_0`.
    pub fn position_sign(&self) -> f64 {
        match self.kind {
            SphereFamilyKind::H02Spacelike => -1.0,
            _ => 1.0,
        }
    }

    /// `h(y', y')`: `-1` for the timelike family, `+1` otherwise.
    pub fn velocity_sign(&self) -> f64 {
        match self.kind {
            SphereFamilyKind::S12Timelike => -1.0,
            _ => 1.0,
        }
    }

    pub fn point(&self, t: f64) -> SemiQuaternion {
        let t = t + self.phase;
        let b = self.b;
        match self.kind {
            SphereFamilyKind::S12Latitude => {
                let r = (1.0 + b * b).sqrt();
                SemiQuaternion::spatial(r * (t / r).cos(), r * (t / r).sin(), b)
            }
            SphereFamilyKind::S12Timelike => {
                SemiQuaternion::spatial((1.0 - b * b).sqrt(), b * (t / b).cosh(), b * (t / b).sinh())
            }
            SphereFamilyKind::H02Spacelike => {
                SemiQuaternion::spatial(b * (t / b).cos(), b * (t / b).sin(), (1.0 + b * b).sqrt())
            }
        }
    }

    pub fn velocity(&self, t: f64) -> SemiQuaternion {
        let t = t + self.phase;
        let b = self.b;
        match self.kind {
            SphereFamilyKind::S12Latitude => {
                let r = (1.0 + b * b).sqrt();
                SemiQuaternion::spatial(-(t / r).sin(), (t / r).cos(), 0.0)
            }
            SphereFamilyKind::S12Timelike => SemiQuaternion::spatial(0.0, (t / b).sinh(), (t / b).cosh()),
            SphereFamilyKind::H02Spacelike => SemiQuaternion::spatial(-(t / b).sin(), (t / b).cos(), 0.0),
        }
    }

    fn validate_at(&self, t: f64) -> Result<()> {
        let y = self.point(t);
        let v = self.velocity(t);
        let size = y.euclidean_norm().powi(2).max(1.0);
        let hy = h_inner(y, y);
        let hv = h_inner(v, v);
        if (hy - self.position_sign()).abs() > 1e-12 * size || (hv - self.velocity_sign()).abs() > 1e-8 * v.euclidean_norm().powi(2).max(1.0) {
            return Err(Error::InvalidFamilyParameter(format!(
                "{} leaves its quadric at t = {t}: h(y,y) = {hy}, h(y',y') = {hv}",
                self.kind
            )));
        }
        Ok(())
    }
}

fn check_range(range: (f64, f64), n: usize) -> Result<()> {
    if !(range.0.is_finite() && range.1.is_finite() && range.0 < range.1) {
        return Err(Error::InvalidConfig(format!("empty parameter range {}:{}", range.0, range.1)));
    }
    if n < MIN_SAMPLES {
        return Err(Error::InsufficientSamples { needed: MIN_SAMPLES, got: n });
    }
    Ok(())
}

/// Samples the base curve, checking the quadric identities at every sample.
pub fn base_sphere_curve(family: SphereCurveFamily, range: (f64, f64), n_samples: usize) -> Result<CurveSamples> {
    check_range(range, n_samples)?;
    let t = linspace(range.0, range.1, n_samples);
    let mut points = Vec::with_capacity(n_samples);
    for &u in &t {
        family.validate_at(u)?;
        points.push(family.point(u));
    }
    CurveSamples::new(t, points, BasisSignature::default(), ParamKind::PseudoArcLength)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConeCase {
    /// `alpha = y a / cos t`
    Cos,
    /// `alpha = y a / sinh t`
    Sinh,
    /// `alpha = y a / cosh t`
    Cosh,
}

impl ConeCase {
    pub fn scale(self, t: f64) -> f64 {
        match self {
            ConeCase::Cos => t.cos(),
            ConeCase::Sinh => t.sinh(),
            ConeCase::Cosh => t.cosh(),
        }
    }

    fn admits(self, kind: SphereFamilyKind) -> bool {
        use SphereFamilyKind::*;
        match self {
            ConeCase::Cos => kind == S12Latitude,
            ConeCase::Sinh | ConeCase::Cosh => matches!(kind, S12Timelike | H02Spacelike),
        }
    }

    /// Pole of `1/scale` within `margin` of the closed range, if any.
    fn pole_near(self, range: (f64, f64), margin: f64) -> Option<f64> {
        let (lo, hi) = (range.0 - margin, range.1 + margin);
        match self {
            ConeCase::Cos => {
                let k = ((lo - FRAC_PI_2) / PI).ceil();
                let pole = FRAC_PI_2 + k * PI;
                (pole <= hi).then_some(pole)
            }
            ConeCase::Sinh => (lo <= 0.0 && 0.0 <= hi).then_some(0.0),
            ConeCase::Cosh => None,
        }
    }
}

/// `alpha(t) = y(t) a / f(t)` sampled on a uniform `t` grid, in raw
/// parametrization.
pub fn construct_thm34(
    case: ConeCase,
    base: SphereCurveFamily,
    a: f64,
    t_range: (f64, f64),
    n_samples: usize,
    pole_margin: f64,
) -> Result<CurveSamples> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::InvalidFamilyParameter(format!("a must be positive, got {a}")));
    }
    if !case.admits(base.kind) {
        return Err(Error::CausalMismatch(format!("{case:?} case does not admit base family {}", base.kind)));
    }
    check_range(t_range, n_samples)?;
    if let Some(t) = case.pole_near(t_range, pole_margin) {
        return Err(Error::PoleInRange { t });
    }
    let y = base_sphere_curve(base, t_range, n_samples)?;
    let points = y
        .params()
        .iter()
        .zip(y.points())
        .map(|(&t, &p)| p * (a / case.scale(t)))
        .collect();
    CurveSamples::new(y.params().to_vec(), points, BasisSignature::default(), ParamKind::Raw)
}
