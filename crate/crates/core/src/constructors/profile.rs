//! Curvature profiles for prescribed-curvature integration, including the
//! three curvature families that make a curve in R^4_2 rectifying.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quat::Sign;

/// A real function of arc length with analytic first and second
/// derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScalarFunction {
    Constant { value: f64 },
    Linear { slope: f64, intercept: f64 },
    /// `1 / sqrt(-e s^2 - 2 e c s - 2 c1)`
    InvSqrtQuadratic { e: f64, c: f64, c1: f64 },
    /// `(c1 C(w s) + c2 S(w s)) / (s + c)` with `(C, S) = (cos, sin)` for
    /// `e = +1` and `(cosh, sinh)` for `e = -1`.
    HarmonicOverLinear { e: f64, omega: f64, c: f64, c1: f64, c2: f64 },
    /// `(s + c) / (c1 C(w s) + c2 S(w s))`
    LinearOverHarmonic { e: f64, omega: f64, c: f64, c1: f64, c2: f64 },
}

/// `(H, H', H'')` for `H = c1 C(w s) + c2 S(w s)`.
fn harmonic(e: f64, omega: f64, c1: f64, c2: f64, s: f64) -> (f64, f64, f64) {
    let x = omega * s;
    let (cc, ss) = if e > 0.0 { (x.cos(), x.sin()) } else { (x.cosh(), x.sinh()) };
    let h = c1 * cc + c2 * ss;
    let dh = omega * (-e * c1 * ss + c2 * cc);
    (h, dh, -e * omega * omega * h)
}

impl ScalarFunction {
    pub fn constant(value: f64) -> Self {
        ScalarFunction::Constant { value }
    }

    /// `(f, f', f'')` at `s`.
    pub fn eval3(&self, s: f64) -> (f64, f64, f64) {
        match *self {
            ScalarFunction::Constant { value } => (value, 0.0, 0.0),
            ScalarFunction::Linear { slope, intercept } => (slope * s + intercept, slope, 0.0),
            ScalarFunction::InvSqrtQuadratic { e, c, c1 } => {
                let g = -e * s * s - 2.0 * e * c * s - 2.0 * c1;
                let dg = -2.0 * e * (s + c);
                let ddg = -2.0 * e;
                let f = g.powf(-0.5);
                let df = -0.5 * g.powf(-1.5) * dg;
                let ddf = 0.75 * g.powf(-2.5) * dg * dg - 0.5 * g.powf(-1.5) * ddg;
                (f, df, ddf)
            }
            ScalarFunction::HarmonicOverLinear { e, omega, c, c1, c2 } => {
                let (h, dh, ddh) = harmonic(e, omega, c1, c2, s);
                let l = s + c;
                (h / l, dh / l - h / (l * l), ddh / l - 2.0 * dh / (l * l) + 2.0 * h / (l * l * l))
            }
            ScalarFunction::LinearOverHarmonic { e, omega, c, c1, c2 } => {
                let (h, dh, ddh) = harmonic(e, omega, c1, c2, s);
                let l = s + c;
                let f = l / h;
                let df = 1.0 / h - l * dh / (h * h);
                let ddf = -2.0 * dh / (h * h) - l * ddh / (h * h) + 2.0 * l * dh * dh / (h * h * h);
                (f, df, ddf)
            }
        }
    }

    pub fn eval(&self, s: f64) -> f64 {
        self.eval3(s).0
    }

    pub fn derivative(&self, s: f64) -> f64 {
        self.eval3(s).1
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, ScalarFunction::Constant { .. })
    }
}

/// Causal signs `(eps_t, eps_n1, eps_n2)` of a frame in R^3_1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signs3 {
    pub eps_t: Sign,
    pub eps_n1: Sign,
    pub eps_n2: Sign,
}

impl Signs3 {
    pub fn new(eps_t: Sign, eps_n1: Sign, eps_n2: Sign) -> Result<Self> {
        let s = Self { eps_t, eps_n1, eps_n2 };
        let negatives = [eps_t, eps_n1, eps_n2].iter().filter(|&&e| e == Sign::Minus).count();
        if negatives != 1 {
            return Err(Error::InvalidInitialFrame(format!(
                "a frame of R^3_1 has exactly one timelike vector, got signs ({eps_t}, {eps_n1}, {eps_n2})"
            )));
        }
        Ok(s)
    }

    /// Returns the signs as `[eps_t, eps_n1, eps_n2]`.
    pub fn as_array(&self) -> [Sign; 3] {
        [self.eps_t, self.eps_n1, self.eps_n2]
    }
}

impl Default for Signs3 {
    fn default() -> Self {
        Self { eps_t: Sign::Plus, eps_n1: Sign::Plus, eps_n2: Sign::Minus }
    }
}

/// Signs `(eps_T, eps_N1, eps_n1, eps_n2)` of a frame in R^4_2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Signs4 {
    pub eps_big_t: Sign,
    pub eps_big_n1: Sign,
    pub eps_n1: Sign,
    pub eps_n2: Sign,
}

impl Signs4 {
    pub fn new(eps_big_t: Sign, eps_big_n1: Sign, eps_n1: Sign, eps_n2: Sign) -> Result<Self> {
        let s = Self { eps_big_t, eps_big_n1, eps_n1, eps_n2 };
        let negatives = s.metric().iter().filter(|&&e| e == Sign::Minus).count();
        if negatives != 2 {
            return Err(Error::InvalidInitialFrame(format!(
                "a frame of R^4_2 has exactly two negative squares, got h-signs {:?}",
                s.metric().map(|e| e.as_i8())
            )));
        }
        Ok(s)
    }

    /// Default signs for a given `e = eps_n1 eps_n2`.
    pub fn default_for(e: Sign) -> Self {
        match e {
            Sign::Plus => Self { eps_big_t: Sign::Plus, eps_big_n1: Sign::Plus, eps_n1: Sign::Minus, eps_n2: Sign::Minus },
            Sign::Minus => Self { eps_big_t: Sign::Plus, eps_big_n1: Sign::Minus, eps_n1: Sign::Plus, eps_n2: Sign::Minus },
        }
    }

    /// `h(T,T), h(N1,N1), h(N2,N2), h(N3,N3)`.
    pub fn metric(&self) -> [Sign; 4] {
        [self.eps_big_t, self.eps_big_n1, self.eps_n1 * self.eps_big_t, self.eps_n2 * self.eps_big_t]
    }

    pub fn eps_t(&self) -> Sign {
        self.eps_big_t * self.eps_big_n1
    }

    /// `eps_n1 eps_n2`.
    pub fn e(&self) -> Sign {
        self.eps_n1 * self.eps_n2
    }
}

impl Default for Signs4 {
    fn default() -> Self {
        Self::default_for(Sign::Minus)
    }
}

/// Curvature and torsion of a curve in R^3_1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Profile3 {
    pub k: ScalarFunction,
    pub r: ScalarFunction,
    pub signs: Signs3,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FamilyCase {
    /// Constant `kappa` and `k`, bitorsion `1/sqrt(...)`.
    One,
    /// Constant `k` and bitorsion, `kappa` harmonic over linear.
    Two,
    /// Constant `kappa` and bitorsion, `k` linear over harmonic.
    Three,
}

/// Curvature, torsion and bitorsion of a curve in R^4_2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Profile4 {
    pub kappa: ScalarFunction,
    pub k: ScalarFunction,
    pub bitorsion: ScalarFunction,
    pub signs: Signs4,
    /// Constant `c` of `lambda = s + c` used for a rectifying start.
    pub c: f64,
    pub family: Option<FamilyCase>,
}

/// Either kind of profile, as parsed from a specifier string.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum CurvatureProfile {
    Spatial(Profile3),
    Quaternionic(Profile4),
}

/// Constants of a curvature family. Unused entries are ignored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FamilyConstants {
    pub c: f64,
    pub c1: f64,
    pub c2: f64,
    pub kappa: f64,
    pub k: f64,
    pub bitorsion: f64,
}

impl Default for FamilyConstants {
    fn default() -> Self {
        Self { c: 0.0, c1: -0.5, c2: 0.0, kappa: 1.0, k: 1.0, bitorsion: 1.0 }
    }
}

const SCAN: usize = 2001;

fn scan(range: (f64, f64)) -> impl Iterator<Item = f64> {
    (0..SCAN).map(move |i| range.0 + (range.1 - range.0) * i as f64 / (SCAN - 1) as f64)
}

fn positive_constant(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(Error::InvalidFamilyParameter(format!("{name} must be positive, got {v}")));
    }
    Ok(())
}

/// Builds a curvature family on `s_range`, rejecting ranges on which it is
/// singular or leaves the admissible class (`kappa > 0`, `k > 0`).
pub fn curvature_family_thm43(
    case: FamilyCase,
    constants: FamilyConstants,
    signs: Signs4,
    s_range: (f64, f64),
) -> Result<Profile4> {
    if !(s_range.0 < s_range.1) {
        return Err(Error::InvalidConfig(format!("empty range {}:{}", s_range.0, s_range.1)));
    }
    let e = signs.e().value();
    let FamilyConstants { c, c1, c2, kappa, k, bitorsion } = constants;
    let (fk, fkk, fb) = match case {
        FamilyCase::One => {
            positive_constant("kappa", kappa)?;
            positive_constant("k", k)?;
            let g = |s: f64| -e * s * s - 2.0 * e * c * s - 2.0 * c1;
            let mut probes = vec![s_range.0, s_range.1];
            if s_range.0 < -c && -c < s_range.1 {
                probes.push(-c);
            }
            for s in probes {
                if g(s) <= 1e-12 {
                    return Err(Error::SingularOnRange {
                        s,
                        what: format!("bitorsion radicand {} must stay positive", g(s)),
                    });
                }
            }
            (
                ScalarFunction::constant(kappa),
                ScalarFunction::constant(k),
                ScalarFunction::InvSqrtQuadratic { e, c, c1 },
            )
        }
        FamilyCase::Two => {
            positive_constant("k", k)?;
            positive_constant("bitorsion", bitorsion)?;
            let f = ScalarFunction::HarmonicOverLinear { e, omega: bitorsion, c, c1, c2 };
            for s in scan(s_range) {
                if (s + c).abs() < 1e-6 {
                    return Err(Error::SingularOnRange { s, what: "s + c vanishes".into() });
                }
                if !(f.eval(s) > 1e-9) {
                    return Err(Error::SingularOnRange { s, what: format!("kappa = {} is not positive", f.eval(s)) });
                }
            }
            (f, ScalarFunction::constant(k), ScalarFunction::constant(bitorsion))
        }
        FamilyCase::Three => {
            positive_constant("kappa", kappa)?;
            positive_constant("bitorsion", bitorsion)?;
            let f = ScalarFunction::LinearOverHarmonic { e, omega: bitorsion, c, c1, c2 };
            for s in scan(s_range) {
                let (h, _, _) = harmonic(e, bitorsion, c1, c2, s);
                if h.abs() < 1e-6 {
                    return Err(Error::SingularOnRange { s, what: "denominator of k vanishes".into() });
                }
                if !(f.eval(s) > 1e-9) {
                    return Err(Error::SingularOnRange { s, what: format!("k = {} is not positive", f.eval(s)) });
                }
            }
            (ScalarFunction::constant(kappa), f, ScalarFunction::constant(bitorsion))
        }
    };
    Ok(Profile4 { kappa: fk, k: fkk, bitorsion: fb, signs, c, family: Some(case) })
}

/// Step of the central second difference used by [`family_ode_residual`].
pub const ODE_FD_STEP: f64 = 1e-3;

fn second_difference(f: impl Fn(f64) -> f64, s: f64) -> f64 {
    let h = ODE_FD_STEP;
    (f(s + h) - 2.0 * f(s) + f(s - h)) / (h * h)
}

/// Residual of the defining ODE of a curvature family at `s`.
///
/// * case 1: `b' - eps_n1 eps_n2 b^3 (s + c)` with the exact derivative;
/// * case 2: `eps_n1 P b^2 + eps_n2 P''`, `P = kappa (s + c)`;
/// * case 3: `eps_n1 P b^2 + w P''`, `P = kappa (s + c) / k`, with `w = 1`
///   when `unit_weight` is set and `w = eps_n2` otherwise. The two agree
///   when `eps_n2 = +1`.
///
/// Second derivatives are central differences with step [`ODE_FD_STEP`].
pub fn family_ode_residual(profile: &Profile4, s: f64, unit_weight: bool) -> Option<f64> {
    let c = profile.c;
    let (en1, en2) = (profile.signs.eps_n1.value(), profile.signs.eps_n2.value());
    match profile.family? {
        FamilyCase::One => {
            let (b, db, _) = profile.bitorsion.eval3(s);
            Some(db - en1 * en2 * b.powi(3) * (s + c))
        }
        FamilyCase::Two => {
            let b = profile.bitorsion.eval(s);
            let p = |x: f64| profile.kappa.eval(x) * (x + c);
            Some(en1 * p(s) * b * b + en2 * second_difference(p, s))
        }
        FamilyCase::Three => {
            let b = profile.bitorsion.eval(s);
            let p = |x: f64| profile.kappa.eval(x) * (x + c) / profile.k.eval(x);
            let w = if unit_weight { 1.0 } else { en2 };
            Some(en1 * p(s) * b * b + w * second_difference(p, s))
        }
    }
}
