//! Classical Runge-Kutta integration of prescribed-curvature Frenet systems.

use serde::{Deserialize, Serialize};

use super::profile::{Profile3, Profile4, Signs3, Signs4};
use crate::curve::{CurveSamples, ParamKind, MIN_SAMPLES};
use crate::error::{Error, Result};
use crate::quat::{cross_lorentz, h_inner, norm, quadratic_form, Ambient, BasisSignature, SemiQuaternion, Sign};

/// Orthonormality tolerance for initial frames.
pub const INITIAL_FRAME_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegrateOptions {
    pub step: f64,
    /// Project the frame back to `h`-orthonormality after every step.
    pub renormalize: bool,
}

impl Default for IntegrateOptions {
    fn default() -> Self {
        Self { step: 1e-3, renormalize: false }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InitialFrame3 {
    pub point: SemiQuaternion,
    pub t: SemiQuaternion,
    pub n1: SemiQuaternion,
    pub n2: SemiQuaternion,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct InitialFrame4 {
    pub point: SemiQuaternion,
    pub tangent: SemiQuaternion,
    pub n1: SemiQuaternion,
    pub n2: SemiQuaternion,
    pub n3: SemiQuaternion,
}

/// Coordinate vectors handed out in order: positive squares first get
/// `e1, e2`, negative squares get `e3, 1`.
fn coordinate_frame<const N: usize>(metric: [Sign; N]) -> [SemiQuaternion; N] {
    let mut pos = [SemiQuaternion::E1, SemiQuaternion::E2].into_iter();
    let mut neg = [SemiQuaternion::E3, SemiQuaternion::ONE].into_iter();
    metric.map(|e| match e {
        Sign::Plus => pos.next().expect("at most two positive squares"),
        Sign::Minus => neg.next().expect("at most two negative squares"),
    })
}

fn check_orthonormal(vectors: &[(&str, SemiQuaternion, Sign)]) -> Result<()> {
    for (i, &(a, va, ea)) in vectors.iter().enumerate() {
        let d = h_inner(va, va) - ea.value();
        if d.abs() > INITIAL_FRAME_TOL {
            return Err(Error::InvalidInitialFrame(format!("h({a},{a}) = {} but the declared sign is {ea}", h_inner(va, va))));
        }
        for &(b, vb, _) in &vectors[i + 1..] {
            let x = h_inner(va, vb);
            if x.abs() > INITIAL_FRAME_TOL {
                return Err(Error::InvalidInitialFrame(format!("h({a},{b}) = {x}")));
            }
        }
    }
    Ok(())
}

impl InitialFrame3 {
    /// Coordinate frame at the origin with `n2` completing `t, n1` by the
    /// Lorentzian cross product.
    pub fn standard(signs: Signs3) -> Result<Self> {
        let [t, n1, _] = coordinate_frame(signs.as_array());
        let w = cross_lorentz(t, n1, BasisSignature::default())?;
        let n2 = w / norm(w);
        Ok(Self { point: SemiQuaternion::ZERO, t, n1, n2 })
    }

    pub fn validate(&self, signs: Signs3) -> Result<()> {
        for (name, v) in [("point", self.point), ("t", self.t), ("n1", self.n1), ("n2", self.n2)] {
            if !v.is_finite() || v.q4 != 0.0 {
                return Err(Error::InvalidInitialFrame(format!("{name} must be a finite spatial quaternion")));
            }
        }
        check_orthonormal(&[("t", self.t, signs.eps_t), ("n1", self.n1, signs.eps_n1), ("n2", self.n2, signs.eps_n2)])
    }
}

impl InitialFrame4 {
    pub fn standard(signs: Signs4) -> Self {
        let [tangent, n1, n2, n3] = coordinate_frame(signs.metric());
        Self { point: SemiQuaternion::ZERO, tangent, n1, n2, n3 }
    }

    /// Standard frame whose point lies on the rectifying locus
    /// `lambda T + mu N2 + nu N3` at `s0`.
    pub fn rectifying(profile: &Profile4, s0: f64) -> Self {
        let mut f = Self::standard(profile.signs);
        let (lambda, mu, nu) = rectifying_coefficients(profile, s0);
        f.point = f.tangent * lambda + f.n2 * mu + f.n3 * nu;
        f
    }

    pub fn validate(&self, signs: Signs4) -> Result<()> {
        for (name, v) in [("point", self.point), ("T", self.tangent), ("N1", self.n1), ("N2", self.n2), ("N3", self.n3)] {
            if !v.is_finite() {
                return Err(Error::InvalidInitialFrame(format!("{name} is not finite")));
            }
        }
        let m = signs.metric();
        check_orthonormal(&[
            ("T", self.tangent, m[0]),
            ("N1", self.n1, m[1]),
            ("N2", self.n2, m[2]),
            ("N3", self.n3, m[3]),
        ])
    }
}

/// `(lambda, mu, nu)` of the rectifying locus from the analytic profile.
pub fn rectifying_coefficients(profile: &Profile4, s: f64) -> (f64, f64, f64) {
    let (kp, dkp, _) = profile.kappa.eval3(s);
    let (k, dk, _) = profile.k.eval3(s);
    let b = profile.bitorsion.eval(s);
    let pre = (profile.signs.eps_t() * profile.signs.eps_big_n1).value();
    let x = s + profile.c;
    let mu = pre * kp * x / k;
    let dmu = pre * (kp * k + x * (dkp * k - kp * dk)) / (k * k);
    (x, mu, profile.signs.eps_n2.value() * dmu / b)
}

/// Integrated curve together with the propagated frame.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory3 {
    pub curve: CurveSamples,
    pub t: Vec<SemiQuaternion>,
    pub n1: Vec<SemiQuaternion>,
    pub n2: Vec<SemiQuaternion>,
    pub signs: Signs3,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory4 {
    pub curve: CurveSamples,
    pub tangent: Vec<SemiQuaternion>,
    pub n1: Vec<SemiQuaternion>,
    pub n2: Vec<SemiQuaternion>,
    pub n3: Vec<SemiQuaternion>,
    pub signs: Signs4,
}

/// Largest deviation of the Gram matrix `h(X_i, X_j)` from `diag(eps)`.
fn gram_drift(frames: &[&[SemiQuaternion]], metric: &[Sign]) -> f64 {
    let n = frames[0].len();
    let mut worst = 0.0_f64;
    for s in 0..n {
        for i in 0..frames.len() {
            for j in i..frames.len() {
                let target = if i == j { metric[i].value() } else { 0.0 };
                worst = worst.max((h_inner(frames[i][s], frames[j][s]) - target).abs());
            }
        }
    }
    worst
}

impl Trajectory3 {
    pub fn metric_drift(&self) -> f64 {
        gram_drift(&[&self.t, &self.n1, &self.n2], &self.signs.as_array())
    }

    /// `max |h(t,t) - eps_t|`.
    pub fn tangent_drift(&self) -> f64 {
        self.t.iter().map(|&v| (quadratic_form(v) - self.signs.eps_t.value()).abs()).fold(0.0, f64::max)
    }
}

impl Trajectory4 {
    pub fn metric_drift(&self) -> f64 {
        gram_drift(&[&self.tangent, &self.n1, &self.n2, &self.n3], &self.signs.metric())
    }

    /// `max |h(T,T) - eps_T|`.
    pub fn tangent_drift(&self) -> f64 {
        self.tangent.iter().map(|&v| (quadratic_form(v) - self.signs.eps_big_t.value()).abs()).fold(0.0, f64::max)
    }
}

fn grid(range: (f64, f64), step: f64) -> Result<Vec<f64>> {
    if !(step > 0.0 && step.is_finite()) {
        return Err(Error::InvalidConfig(format!("step must be positive, got {step}")));
    }
    if !(range.0.is_finite() && range.1.is_finite() && range.0 < range.1) {
        return Err(Error::InvalidConfig(format!("empty range {}:{}", range.0, range.1)));
    }
    let steps = ((range.1 - range.0) / step).round().max(1.0) as usize;
    if steps + 1 < MIN_SAMPLES {
        return Err(Error::InsufficientSamples { needed: MIN_SAMPLES, got: steps + 1 });
    }
    let h = (range.1 - range.0) / steps as f64;
    Ok((0..=steps).map(|i| if i == steps { range.1 } else { range.0 + h * i as f64 }).collect())
}

fn axpy<const N: usize>(y: &[SemiQuaternion; N], a: f64, x: &[SemiQuaternion; N]) -> [SemiQuaternion; N] {
    std::array::from_fn(|i| y[i] + x[i] * a)
}

fn rk4_step<const N: usize>(
    f: &impl Fn(f64, &[SemiQuaternion; N]) -> [SemiQuaternion; N],
    s: f64,
    h: f64,
    y: &[SemiQuaternion; N],
) -> [SemiQuaternion; N] {
    let k1 = f(s, y);
    let k2 = f(s + 0.5 * h, &axpy(y, 0.5 * h, &k1));
    let k3 = f(s + 0.5 * h, &axpy(y, 0.5 * h, &k2));
    let k4 = f(s + h, &axpy(y, h, &k3));
    std::array::from_fn(|i| y[i] + (k1[i] + k2[i] * 2.0 + k3[i] * 2.0 + k4[i]) * (h / 6.0))
}

/// Gram-Schmidt with respect to `h`, in frame order.
fn renormalize(frame: &mut [SemiQuaternion], metric: &[Sign]) {
    for i in 0..frame.len() {
        let mut v = frame[i];
        for j in 0..i {
            v -= frame[j] * (metric[j].value() * h_inner(v, frame[j]));
        }
        frame[i] = v / quadratic_form(v).abs().sqrt();
    }
}

fn integrate<const N: usize>(
    rhs: impl Fn(f64, &[SemiQuaternion; N]) -> [SemiQuaternion; N],
    y0: [SemiQuaternion; N],
    s: &[f64],
    metric: &[Sign],
    renorm: bool,
) -> Result<Vec<[SemiQuaternion; N]>> {
    let mut out = Vec::with_capacity(s.len());
    out.push(y0);
    let mut y = y0;
    for w in s.windows(2) {
        y = rk4_step(&rhs, w[0], w[1] - w[0], &y);
        if renorm {
            renormalize(&mut y[1..], metric);
        }
        if y.iter().any(|v| !v.is_finite()) {
            return Err(Error::SingularOnRange { s: w[1], what: "integration diverged".into() });
        }
        out.push(y);
    }
    Ok(out)
}

/// Integrates `alpha' = t` together with
///
/// ```text
/// t'  =  eps_n1 k n1
/// n1' = -eps_t  k t  + eps_n1 r n2
/// n2' = -eps_n2 r n1
/// ```
///
/// The output is in raw parametrization.
pub fn integrate_frenet3(
    profile: &Profile3,
    initial: &InitialFrame3,
    range: (f64, f64),
    opts: IntegrateOptions,
) -> Result<Trajectory3> {
    let signs = profile.signs;
    initial.validate(signs)?;
    let s = grid(range, opts.step)?;
    let (et, en1, en2) = (signs.eps_t.value(), signs.eps_n1.value(), signs.eps_n2.value());
    let rhs = |u: f64, y: &[SemiQuaternion; 4]| {
        let (k, r) = (profile.k.eval(u), profile.r.eval(u));
        let [_, t, n1, n2] = *y;
        [t, n1 * (en1 * k), t * (-et * k) + n2 * (en1 * r), n1 * (-en2 * r)]
    };
    let y0 = [initial.point, initial.t, initial.n1, initial.n2];
    let states = integrate(rhs, y0, &s, &signs.as_array(), opts.renormalize)?;
    let pick = |j: usize| states.iter().map(|y| y[j]).collect::<Vec<_>>();
    let curve = CurveSamples::new(s, pick(0), BasisSignature::default_for(Ambient::R13), ParamKind::Raw)?;
    Ok(Trajectory3 { curve, t: pick(1), n1: pick(2), n2: pick(3), signs })
}

/// Integrates `beta' = T` together with
///
/// ```text
/// T'  =  eps_N1 kappa N1
/// N1' = -eps_t eps_N1 kappa T + eps_n1 k N2
/// N2' = -eps_t k N1 + eps_n1 b N3
/// N3' = -eps_n2 b N2
/// ```
///
/// with `eps_t = eps_T eps_N1`. The output is in raw parametrization.
pub fn integrate_frenet4(
    profile: &Profile4,
    initial: &InitialFrame4,
    range: (f64, f64),
    opts: IntegrateOptions,
) -> Result<Trajectory4> {
    let signs = profile.signs;
    initial.validate(signs)?;
    let s = grid(range, opts.step)?;
    let (et, eb1) = (signs.eps_t().value(), signs.eps_big_n1.value());
    let (en1, en2) = (signs.eps_n1.value(), signs.eps_n2.value());
    let rhs = |u: f64, y: &[SemiQuaternion; 5]| {
        let (kp, k, b) = (profile.kappa.eval(u), profile.k.eval(u), profile.bitorsion.eval(u));
        let [_, t, n1, n2, n3] = *y;
        [
            t,
            n1 * (eb1 * kp),
            t * (-et * eb1 * kp) + n2 * (en1 * k),
            n1 * (-et * k) + n3 * (en1 * b),
            n2 * (-en2 * b),
        ]
    };
    let y0 = [initial.point, initial.tangent, initial.n1, initial.n2, initial.n3];
    let states = integrate(rhs, y0, &s, &signs.metric(), opts.renormalize)?;
    let pick = |j: usize| states.iter().map(|y| y[j]).collect::<Vec<_>>();
    let curve = CurveSamples::new(s, pick(0), BasisSignature::default_for(Ambient::R24), ParamKind::Raw)?;
    Ok(Trajectory4 { curve, tangent: pick(1), n1: pick(2), n2: pick(3), n3: pick(4), signs })
}
