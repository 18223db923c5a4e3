//! Frenet apparatus of spatial curves in R^3_1.
//!
//! For a unit-speed spatial curve `alpha(s)` the frame `{t, n1, n2}` obeys
//!
//! ```text
//! t'  =  eps_n1 k n1
//! n1' = -eps_t k t + eps_n1 r n2
//! n2' = -eps_n2 r n1
//! ```
//!
//! with `h(t,t) = eps_t`, `h(n1,n1) = eps_n1`, `h(n2,n2) = eps_n2`.

use std::ops::Range;

use crate::config::RunConfig;
use crate::curve::{derivatives, CurveSamples};
use crate::error::{Error, Result};
use crate::quat::{cross_lorentz, h_inner, norm, quadratic_form, Ambient, SemiQuaternion, Sign};
use crate::stencil;

/// Per-sample frame, curvatures and causal signs of a spatial curve.
///
/// Arrays cover every sample of the curve; checks use [`Frenet3Data::retained`].
#[derive(Debug, Clone, PartialEq)]
pub struct Frenet3Data {
    pub s: Vec<f64>,
    pub t: Vec<SemiQuaternion>,
    pub n1: Vec<SemiQuaternion>,
    pub n2: Vec<SemiQuaternion>,
    pub k: Vec<f64>,
    pub r: Vec<f64>,
    pub eps_t: Sign,
    pub eps_n1: Sign,
    pub eps_n2: Sign,
    pub boundary_margin: usize,
}

impl Frenet3Data {
    /// Indices excluded from neither end by the boundary margin.
    pub fn retained(&self) -> Range<usize> {
        self.boundary_margin..self.s.len() - self.boundary_margin
    }

    /// `eps_t * eps_n1 * eps_n2`.
    pub fn eps_product(&self) -> Sign {
        self.eps_t * self.eps_n1 * self.eps_n2
    }
}

/// Margin check shared by both frame constructions.
pub(crate) fn check_margin(n: usize, margin: usize) -> Result<()> {
    if n < 2 * margin + 3 {
        return Err(Error::InsufficientSamples { needed: 2 * margin + 3, got: n });
    }
    Ok(())
}

/// Causal sign constant over the retained samples, or `CausalFlip`.
pub(crate) fn constant_sign(values: &[f64], s: &[f64], range: Range<usize>, vector: &str) -> Result<Sign> {
    let first = range.start;
    let sign = Sign::of(values[first]).ok_or_else(|| Error::CausalFlip { param: s[first], vector: vector.into() })?;
    for i in range {
        if Sign::of(values[i]) != Some(sign) {
            return Err(Error::CausalFlip { param: s[i], vector: vector.into() });
        }
    }
    Ok(sign)
}

pub(crate) fn check_unit_speed(tangent: &[SemiQuaternion], s: &[f64], range: Range<usize>, tol: f64) -> Result<()> {
    for i in range {
        let speed = norm(tangent[i]);
        if (speed - 1.0).abs() > tol {
            return Err(Error::NotUnitSpeed { param: s[i], speed });
        }
    }
    Ok(())
}

/// Tolerance on `|N(curve') - 1|` accepted by the frame constructions.
pub(crate) fn unit_speed_tol(cfg: &RunConfig) -> f64 {
    100.0 * cfg.reparam_tol
}

/// Frame with default configuration.
pub fn frenet3_apparatus(curve: &CurveSamples) -> Result<Frenet3Data> {
    frenet3_apparatus_with(curve, &RunConfig::default())
}

pub fn frenet3_apparatus_with(curve: &CurveSamples, cfg: &RunConfig) -> Result<Frenet3Data> {
    if curve.ambient() != Ambient::R13 {
        return Err(Error::InvalidCurve("spatial frame requires an R13 curve".into()));
    }
    let n = curve.len();
    check_margin(n, cfg.margin)?;
    let s = curve.params().to_vec();
    for (&u, q) in s.iter().zip(curve.points()) {
        if q.q4.abs() > cfg.frame_tol * q.euclidean_norm().max(1.0) {
            return Err(Error::NotSpatial { param: u, scalar: q.q4 });
        }
    }
    let keep = cfg.margin..n - cfg.margin;
    let d = derivatives(curve, 3, cfg.derivatives)?;
    let (t, tp, tpp) = (&d[0], &d[1], &d[2]);
    check_unit_speed(t, &s, keep.clone(), unit_speed_tol(cfg))?;

    let qt: Vec<f64> = t.iter().map(|&v| quadratic_form(v)).collect();
    let eps_t = constant_sign(&qt, &s, keep.clone(), "t")?;

    let k: Vec<f64> = tp.iter().map(|&v| norm(v)).collect();
    for i in keep.clone() {
        if k[i] <= cfg.frame_tol {
            return Err(Error::DegenerateFrame { param: s[i], what: format!("principal curvature {} vanishes", k[i]) });
        }
    }
    let qtp: Vec<f64> = tp.iter().map(|&v| quadratic_form(v)).collect();
    let eps_n1 = constant_sign(&qtp, &s, keep.clone(), "n1")?;

    let n1: Vec<SemiQuaternion> = tp
        .iter()
        .zip(&k)
        .map(|(&v, &kk)| if kk > 0.0 { v * (eps_n1.value() / kk) } else { SemiQuaternion::ZERO })
        .collect();
    let binormal: Vec<SemiQuaternion> = t
        .iter()
        .zip(&n1)
        .map(|(&a, &b)| cross_lorentz(a, b, curve.sig))
        .collect::<Result<_>>()?;
    let qb: Vec<f64> = binormal.iter().map(|&v| quadratic_form(v)).collect();
    for i in keep.clone() {
        if qb[i].abs() <= cfg.frame_tol {
            return Err(Error::DegenerateFrame { param: s[i], what: "binormal is null".into() });
        }
    }
    let eps_n2 = constant_sign(&qb, &s, keep, "n2")?;
    let n2: Vec<SemiQuaternion> = binormal
        .iter()
        .map(|&v| {
            let m = norm(v);
            if m > 0.0 {
                v / m
            } else {
                SemiQuaternion::ZERO
            }
        })
        .collect();

    // n1' = eps_n1 (t''/k - t' k'/k^2) and h(t', n2) = 0
    let r: Vec<f64> = (0..n)
        .map(|i| if k[i] > 0.0 { eps_n2.value() * h_inner(tpp[i], n2[i]) / k[i] } else { 0.0 })
        .collect();

    Ok(Frenet3Data {
        s,
        t: t.clone(),
        n1,
        n2,
        k,
        r,
        eps_t,
        eps_n1,
        eps_n2,
        boundary_margin: cfg.margin,
    })
}

/// Second-order central difference of `values` at interior index `i`.
pub(crate) fn central_diff(s: &[f64], values: &[SemiQuaternion], i: usize) -> SemiQuaternion {
    let w = stencil::fornberg(s[i], &s[i - 1..=i + 1], 1);
    stencil::apply_centered(&w[1], &values[i - 1..=i + 1], values[i])
}

/// Euclidean lengths of the three Frenet-equation defects at each retained
/// sample, with frame derivatives taken by central differences.
pub fn frenet3_residuals(frame: &Frenet3Data) -> Vec<[f64; 3]> {
    let (et, en1, en2) = (frame.eps_t.value(), frame.eps_n1.value(), frame.eps_n2.value());
    frame
        .retained()
        .map(|i| {
            let dt = central_diff(&frame.s, &frame.t, i);
            let dn1 = central_diff(&frame.s, &frame.n1, i);
            let dn2 = central_diff(&frame.s, &frame.n2, i);
            let (k, r) = (frame.k[i], frame.r[i]);
            [
                (dt - frame.n1[i] * (en1 * k)).euclidean_norm(),
                (dn1 + frame.t[i] * (et * k) - frame.n2[i] * (en1 * r)).euclidean_norm(),
                (dn2 + frame.n1[i] * (en2 * r)).euclidean_norm(),
            ]
        })
        .collect()
}

/// Component-wise maximum of residual rows.
pub fn max_residuals<const N: usize>(rows: &[[f64; N]]) -> [f64; N] {
    let mut out = [0.0_f64; N];
    for row in rows {
        for (o, v) in out.iter_mut().zip(row) {
            *o = f64::max(*o, *v);
        }
    }
    out
}
