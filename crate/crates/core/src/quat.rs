//! Semi-real quaternion arithmetic.
//!
//! A semi-real quaternion is `q = q1 e1 + q2 e2 + q3 e3 + q4` with basis
//! products
//!
//! ```text
//! e_i x e_i = -eps_i
//! e_i x e_j =  s * eps_i * eps_j * e_k     (ijk) an even permutation of (123)
//! e_j x e_i = -s * eps_i * eps_j * e_k
//! ```
//!
//! where `s = +1` in the ambient R^3_1 and `s = -1` in R^4_2. The product is
//! associative exactly when `eps_1 * eps_2 * eps_3 = +1`; the default
//! signature `(-1, -1, +1)` satisfies this and makes the scalar part of the
//! product of two spatial quaternions equal to [`h_inner`].
//!
//! The quadratic form is `Q(q) = q1^2 + q2^2 - q3^2 - q4^2` regardless of the
//! signature; [`h_inner`] is its polarization.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Tolerance (relative to the magnitude of the arguments) below which a
/// scalar part is treated as zero by [`cross_lorentz`].
pub const SPATIAL_TOL: f64 = 1e-10;

/// A sign `+1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    /// Sign of a nonzero real; zero maps to `None`.
    pub fn of(x: f64) -> Option<Sign> {
        if x > 0.0 {
            Some(Sign::Plus)
        } else if x < 0.0 {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_i8())
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(self.as_i8())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        Sign::from_i64(v).ok_or_else(|| serde::de::Error::custom(format!("sign must be +1 or -1, got {v}")))
    }
}

/// Ambient space tag selecting the sign of mixed basis products.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Ambient {
    R13,
    R24,
}

impl Ambient {
    fn product_sign(self) -> f64 {
        match self {
            Ambient::R13 => 1.0,
            Ambient::R24 => -1.0,
        }
    }
}

impl fmt::Display for Ambient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ambient::R13 => f.write_str("R13"),
            Ambient::R24 => f.write_str("R24"),
        }
    }
}

/// Basis signature `(eps_e1, eps_e2, eps_e3)` together with the ambient tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisSignature {
    pub eps: [Sign; 3],
    pub ambient: Ambient,
}

impl BasisSignature {
    pub const DEFAULT_EPS: [Sign; 3] = [Sign::Minus, Sign::Minus, Sign::Plus];

    pub fn new(eps: [Sign; 3], ambient: Ambient) -> Self {
        Self { eps, ambient }
    }

    pub fn default_for(ambient: Ambient) -> Self {
        Self::new(Self::DEFAULT_EPS, ambient)
    }

    pub fn with_ambient(self, ambient: Ambient) -> Self {
        Self { ambient, ..self }
    }

    /// Whether the basis table defines an associative product.
    pub fn is_associative(&self) -> bool {
        self.eps[0] * self.eps[1] * self.eps[2] == Sign::Plus
    }
}

impl Default for BasisSignature {
    fn default() -> Self {
        Self::default_for(Ambient::R13)
    }
}

/// A semi-real quaternion `q1 e1 + q2 e2 + q3 e3 + q4`.
///
/// Serializes as the JSON array `[q1, q2, q3, q4]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SemiQuaternion {
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
    pub q4: f64,
}

impl SemiQuaternion {
    pub const ZERO: SemiQuaternion = SemiQuaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: SemiQuaternion = SemiQuaternion::new(0.0, 0.0, 0.0, 1.0);
    pub const E1: SemiQuaternion = SemiQuaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const E2: SemiQuaternion = SemiQuaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const E3: SemiQuaternion = SemiQuaternion::new(0.0, 0.0, 1.0, 0.0);

    pub const fn new(q1: f64, q2: f64, q3: f64, q4: f64) -> Self {
        Self { q1, q2, q3, q4 }
    }

    /// Spatial quaternion (zero scalar part).
    pub const fn spatial(q1: f64, q2: f64, q3: f64) -> Self {
        Self::new(q1, q2, q3, 0.0)
    }

    pub const fn scalar(v: f64) -> Self {
        Self::new(0.0, 0.0, 0.0, v)
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.q1, self.q2, self.q3, self.q4]
    }

    /// Unit basis element; index 0..3 are `e1, e2, e3, 1`.
    pub fn basis(i: usize) -> Self {
        let mut a = [0.0; 4];
        a[i] = 1.0;
        Self::from_array(a)
    }

    /// Scalar part `S_q = q4`.
    pub fn scalar_part(self) -> f64 {
        self.q4
    }

    /// Vector part `V_q = (q1, q2, q3)` as a spatial quaternion.
    pub fn vector_part(self) -> Self {
        Self::spatial(self.q1, self.q2, self.q3)
    }

    pub fn is_finite(self) -> bool {
        self.to_array().iter().all(|c| c.is_finite())
    }

    /// Plain Euclidean length of the coefficient vector.
    pub fn euclidean_norm(self) -> f64 {
        self.to_array().iter().map(|c| c * c).sum::<f64>().sqrt()
    }

    pub fn dot_euclidean(self, other: Self) -> f64 {
        self.q1 * other.q1 + self.q2 * other.q2 + self.q3 * other.q3 + self.q4 * other.q4
    }
}

impl Serialize for SemiQuaternion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_array().serialize(s)
    }
}

impl<'de> Deserialize<'de> for SemiQuaternion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let a = <[f64; 4]>::deserialize(d)?;
        Ok(Self::from_array(a))
    }
}

impl Add for SemiQuaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.q1 + o.q1, self.q2 + o.q2, self.q3 + o.q3, self.q4 + o.q4)
    }
}

impl AddAssign for SemiQuaternion {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for SemiQuaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.q1 - o.q1, self.q2 - o.q2, self.q3 - o.q3, self.q4 - o.q4)
    }
}

impl SubAssign for SemiQuaternion {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl Neg for SemiQuaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.q1, -self.q2, -self.q3, -self.q4)
    }
}

impl Mul<f64> for SemiQuaternion {
    type Output = Self;
    fn mul(self, k: f64) -> Self {
        Self::new(self.q1 * k, self.q2 * k, self.q3 * k, self.q4 * k)
    }
}

impl Mul<SemiQuaternion> for f64 {
    type Output = SemiQuaternion;
    fn mul(self, q: SemiQuaternion) -> SemiQuaternion {
        q * self
    }
}

impl Mul<Sign> for SemiQuaternion {
    type Output = Self;
    fn mul(self, s: Sign) -> Self {
        self * s.value()
    }
}

impl Div<f64> for SemiQuaternion {
    type Output = Self;
    fn div(self, k: f64) -> Self {
        Self::new(self.q1 / k, self.q2 / k, self.q3 / k, self.q4 / k)
    }
}

impl std::iter::Sum for SemiQuaternion {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

/// Causal character of a vector under the quadratic form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Null,
}

impl CausalCharacter {
    /// `+1`, `-1` or `0`.
    pub fn sign(self) -> i8 {
        match self {
            CausalCharacter::Spacelike => 1,
            CausalCharacter::Timelike => -1,
            CausalCharacter::Null => 0,
        }
    }

    pub fn as_sign(self) -> Option<Sign> {
        match self {
            CausalCharacter::Spacelike => Some(Sign::Plus),
            CausalCharacter::Timelike => Some(Sign::Minus),
            CausalCharacter::Null => None,
        }
    }
}

/// Quaternion product under the given basis signature.
pub fn quat_mul(p: SemiQuaternion, q: SemiQuaternion, sig: BasisSignature) -> SemiQuaternion {
    let [e1, e2, e3] = sig.eps.map(Sign::value);
    let s = sig.ambient.product_sign();

    let scalar = p.q4 * q.q4 - (e1 * p.q1 * q.q1 + e2 * p.q2 * q.q2 + e3 * p.q3 * q.q3);
    let w1 = s * e2 * e3 * (p.q2 * q.q3 - p.q3 * q.q2);
    let w2 = s * e3 * e1 * (p.q3 * q.q1 - p.q1 * q.q3);
    let w3 = s * e1 * e2 * (p.q1 * q.q2 - p.q2 * q.q1);

    SemiQuaternion::new(
        p.q4 * q.q1 + q.q4 * p.q1 + w1,
        p.q4 * q.q2 + q.q4 * p.q2 + w2,
        p.q4 * q.q3 + q.q4 * p.q3 + w3,
        scalar,
    )
}

pub fn conjugate(q: SemiQuaternion) -> SemiQuaternion {
    SemiQuaternion::new(-q.q1, -q.q2, -q.q3, q.q4)
}

/// Signed form `Q(q) = q1^2 + q2^2 - q3^2 - q4^2`.
pub fn quadratic_form(q: SemiQuaternion) -> f64 {
    q.q1 * q.q1 + q.q2 * q.q2 - q.q3 * q.q3 - q.q4 * q.q4
}

/// `N(q) = sqrt(|Q(q)|)`.
pub fn norm(q: SemiQuaternion) -> f64 {
    quadratic_form(q).abs().sqrt()
}

/// Polarization of [`quadratic_form`]: `p1 q1 + p2 q2 - p3 q3 - p4 q4`.
pub fn h_inner(p: SemiQuaternion, q: SemiQuaternion) -> f64 {
    p.q1 * q.q1 + p.q2 * q.q2 - p.q3 * q.q3 - p.q4 * q.q4
}

pub fn causal_character(q: SemiQuaternion, tol: f64) -> CausalCharacter {
    let v = quadratic_form(q);
    if v > tol {
        CausalCharacter::Spacelike
    } else if v < -tol {
        CausalCharacter::Timelike
    } else {
        CausalCharacter::Null
    }
}

/// Returns `(spatial, temporal) = ((q - conj q)/2, (q + conj q)/2)`.
pub fn spatial_temporal_split(q: SemiQuaternion) -> (SemiQuaternion, SemiQuaternion) {
    let c = conjugate(q);
    ((q - c) * 0.5, (q + c) * 0.5)
}

/// Vector part of the product of two spatial quaternions.
pub fn cross_lorentz(p: SemiQuaternion, q: SemiQuaternion, sig: BasisSignature) -> Result<SemiQuaternion> {
    let scale = 1.0_f64.max(p.euclidean_norm()).max(q.euclidean_norm());
    for x in [p, q] {
        if x.q4.abs() > SPATIAL_TOL * scale {
            return Err(Error::NonSpatialInput { scalar: x.q4 });
        }
    }
    Ok(quat_mul(p.vector_part(), q.vector_part(), sig).vector_part())
}
