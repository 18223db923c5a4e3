//! Frenet apparatus of curves in R^4_2.
//!
//! The frame `{T, N1, N2, N3}` obeys
//!
//! ```text
//! T'  =  eps_N1 kappa N1
//! N1' = -eps_t eps_N1 kappa T + eps_n1 k N2
//! N2' = -eps_t k N1 + eps_n1 b N3
//! N3' = -eps_n2 b N2
//! ```
//!
//! where `b` is the bitorsion and `h(T,T) = eps_T`, `h(N1,N1) = eps_N1`,
//! `h(N2,N2) = eps_n1 eps_T`, `h(N3,N3) = eps_n2 eps_T`. Keeping `h(T, N1)`
//! constant along the flow forces `eps_t = eps_T eps_N1`, which is the value
//! used throughout.

use std::ops::Range;

use crate::config::RunConfig;
use crate::curve::{derivatives, CurveSamples};
use crate::error::{Error, Result};
use crate::frenet3::{central_diff, check_margin, check_unit_speed, constant_sign, unit_speed_tol};
use crate::quat::{h_inner, norm, quadratic_form, quat_mul, Ambient, BasisSignature, SemiQuaternion, Sign};

#[derive(Debug, Clone, PartialEq)]
pub struct Frenet4Data {
    pub s: Vec<f64>,
    pub tangent: Vec<SemiQuaternion>,
    pub n1: Vec<SemiQuaternion>,
    pub n2: Vec<SemiQuaternion>,
    pub n3: Vec<SemiQuaternion>,
    pub kappa: Vec<f64>,
    pub k: Vec<f64>,
    pub bitorsion: Vec<f64>,
    pub eps_big_t: Sign,
    pub eps_big_n1: Sign,
    pub eps_n1: Sign,
    pub eps_n2: Sign,
    pub boundary_margin: usize,
}

impl Frenet4Data {
    pub fn retained(&self) -> Range<usize> {
        self.boundary_margin..self.s.len() - self.boundary_margin
    }

    /// Causal sign of the associated spatial tangent, `eps_T * eps_N1`.
    pub fn eps_t(&self) -> Sign {
        self.eps_big_t * self.eps_big_n1
    }
}

/// Vector `h`-orthogonal to `a`, `b`, `c`: the metric dual of their
/// Euclidean triple product.
fn metric_cross(a: SemiQuaternion, b: SemiQuaternion, c: SemiQuaternion) -> SemiQuaternion {
    let (a, b, c) = (a.to_array(), b.to_array(), c.to_array());
    let minor = |skip: usize| {
        let cols: Vec<usize> = (0..4).filter(|&j| j != skip).collect();
        let m = |r: &[f64; 4], j: usize| r[cols[j]];
        m(&a, 0) * (m(&b, 1) * m(&c, 2) - m(&b, 2) * m(&c, 1)) - m(&a, 1) * (m(&b, 0) * m(&c, 2) - m(&b, 2) * m(&c, 0))
            + m(&a, 2) * (m(&b, 0) * m(&c, 1) - m(&b, 1) * m(&c, 0))
    };
    let w = [minor(0), -minor(1), minor(2), -minor(3)];
    SemiQuaternion::new(w[0], w[1], -w[2], -w[3])
}

pub fn frenet4_apparatus(curve: &CurveSamples) -> Result<Frenet4Data> {
    frenet4_apparatus_with(curve, &RunConfig::default())
}

pub fn frenet4_apparatus_with(curve: &CurveSamples, cfg: &RunConfig) -> Result<Frenet4Data> {
    if curve.ambient() != Ambient::R24 {
        return Err(Error::InvalidCurve("quaternionic frame requires an R24 curve".into()));
    }
    let n = curve.len();
    check_margin(n, cfg.margin)?;
    let s = curve.params().to_vec();
    let keep = cfg.margin..n - cfg.margin;
    let d = derivatives(curve, 4, cfg.derivatives)?;
    let (t, b2, b3, b4) = (&d[0], &d[1], &d[2], &d[3]);
    check_unit_speed(t, &s, keep.clone(), unit_speed_tol(cfg))?;

    let qt: Vec<f64> = t.iter().map(|&v| quadratic_form(v)).collect();
    let eps_big_t = constant_sign(&qt, &s, keep.clone(), "T")?;

    let kappa: Vec<f64> = b2.iter().map(|&v| norm(v)).collect();
    for i in keep.clone() {
        if kappa[i] <= cfg.frame_tol {
            return Err(Error::DegenerateFrame { param: s[i], what: format!("curvature kappa {} vanishes", kappa[i]) });
        }
    }
    let q2: Vec<f64> = b2.iter().map(|&v| quadratic_form(v)).collect();
    let eps_big_n1 = constant_sign(&q2, &s, keep.clone(), "N1")?;
    let n1: Vec<SemiQuaternion> = b2
        .iter()
        .zip(&kappa)
        .map(|(&v, &kp)| if kp > 0.0 { v * (eps_big_n1.value() / kp) } else { SemiQuaternion::ZERO })
        .collect();

    let remainder: Vec<SemiQuaternion> = (0..n)
        .map(|i| {
            let v = b3[i];
            v - t[i] * (h_inner(v, t[i]) * eps_big_t.value()) - n1[i] * (h_inner(v, n1[i]) * eps_big_n1.value())
        })
        .collect();
    for i in keep.clone() {
        let e = remainder[i].euclidean_norm();
        if e <= cfg.frame_tol * b3[i].euclidean_norm().max(1.0) {
            return Err(Error::DegenerateFrame { param: s[i], what: "third derivative lies in span{T, N1}".into() });
        }
        if quadratic_form(remainder[i]).abs() <= cfg.frame_tol * e * e {
            return Err(Error::NullRemainder { param: s[i], what: "N2 direction is null".into() });
        }
    }
    let qr: Vec<f64> = remainder.iter().map(|&v| quadratic_form(v)).collect();
    let sign2 = constant_sign(&qr, &s, keep.clone(), "N2")?;
    let eps_n1 = eps_big_t * sign2;
    let rem_norm: Vec<f64> = remainder.iter().map(|&v| norm(v)).collect();
    // k = eps_n1 eps_N1 N(remainder)/kappa for N2 along the remainder
    let orient2 = eps_n1 * eps_big_n1;
    let n2: Vec<SemiQuaternion> = remainder
        .iter()
        .zip(&rem_norm)
        .map(|(&v, &m)| if m > 0.0 { v * (orient2.value() / m) } else { SemiQuaternion::ZERO })
        .collect();
    let k: Vec<f64> = (0..n).map(|i| if kappa[i] > 0.0 { rem_norm[i] / kappa[i] } else { 0.0 }).collect();

    let dual: Vec<SemiQuaternion> = (0..n).map(|i| metric_cross(t[i], n1[i], n2[i])).collect();
    for i in keep.clone() {
        let e = dual[i].euclidean_norm();
        if quadratic_form(dual[i]).abs() <= cfg.frame_tol * e * e {
            return Err(Error::NullRemainder { param: s[i], what: "N3 direction is null".into() });
        }
    }
    let q3: Vec<f64> = dual.iter().map(|&v| quadratic_form(v)).collect();
    let sign3 = constant_sign(&q3, &s, keep.clone(), "N3")?;
    let eps_n2 = eps_big_t * sign3;
    let mut n3: Vec<SemiQuaternion> = dual
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

    // h(N2', N3) = orient2 h(beta'''', N3) / N(remainder)
    let raw_b = |i: usize, n3: &[SemiQuaternion]| {
        if rem_norm[i] > 0.0 {
            eps_n1.value() * orient2.value() * h_inner(b4[i], n3[i]) / (rem_norm[i] * sign3.value())
        } else {
            0.0
        }
    };
    if raw_b(keep.start, &n3) < 0.0 {
        n3.iter_mut().for_each(|v| *v = -*v);
    }
    let bitorsion: Vec<f64> = (0..n).map(|i| raw_b(i, &n3)).collect();

    Ok(Frenet4Data {
        s,
        tangent: t.clone(),
        n1,
        n2,
        n3,
        kappa,
        k,
        bitorsion,
        eps_big_t,
        eps_big_n1,
        eps_n1,
        eps_n2,
        boundary_margin: cfg.margin,
    })
}

/// Euclidean lengths of the four Frenet-equation defects at each retained
/// sample, with frame derivatives taken by central differences.
pub fn frenet4_residuals(frame: &Frenet4Data) -> Vec<[f64; 4]> {
    let et = frame.eps_t().value();
    let (e_n1big, en1, en2) = (frame.eps_big_n1.value(), frame.eps_n1.value(), frame.eps_n2.value());
    frame
        .retained()
        .map(|i| {
            let d_t = central_diff(&frame.s, &frame.tangent, i);
            let d1 = central_diff(&frame.s, &frame.n1, i);
            let d2 = central_diff(&frame.s, &frame.n2, i);
            let d3 = central_diff(&frame.s, &frame.n3, i);
            let (kp, k, b) = (frame.kappa[i], frame.k[i], frame.bitorsion[i]);
            [
                (d_t - frame.n1[i] * (e_n1big * kp)).euclidean_norm(),
                (d1 + frame.tangent[i] * (et * e_n1big * kp) - frame.n2[i] * (en1 * k)).euclidean_norm(),
                (d2 + frame.n1[i] * (et * k) - frame.n3[i] * (en1 * b)).euclidean_norm(),
                (d3 + frame.n2[i] * (en2 * b)).euclidean_norm(),
            ]
        })
        .collect()
}

/// Tolerance on unit length accepted by [`quaternionic_frame_lift`].
pub const LIFT_UNIT_TOL: f64 = 1e-8;

/// Lifts a spatial frame `(t, n1, n2)` by a unit quaternion `T`:
/// `N1 = eps_T (t x T)`, `N2 = eps_T (n1 x T)`, `N3 = eps_T (n2 x T)`, with
/// products taken in the R24 ambient.
pub fn quaternionic_frame_lift(
    t: SemiQuaternion,
    n1: SemiQuaternion,
    n2: SemiQuaternion,
    big_t: SemiQuaternion,
    sig: BasisSignature,
) -> Result<(SemiQuaternion, SemiQuaternion, SemiQuaternion)> {
    for (name, v) in [("t", t), ("n1", n1), ("n2", n2), ("T", big_t)] {
        let m = norm(v);
        if (m - 1.0).abs() > LIFT_UNIT_TOL {
            return Err(Error::NonUnitInput(format!("N({name}) = {m}")));
        }
    }
    let sig = sig.with_ambient(Ambient::R24);
    let eps = if quadratic_form(big_t) > 0.0 { 1.0 } else { -1.0 };
    let lift = |x: SemiQuaternion| quat_mul(x, big_t, sig) * eps;
    Ok((lift(t), lift(n1), lift(n2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{linspace, ParamKind};

    fn curve(a: f64, b: f64, n: usize, f: impl Fn(f64) -> SemiQuaternion) -> CurveSamples {
        let s = linspace(a, b, n);
        let p = s.iter().map(|&u| f(u)).collect();
        CurveSamples::new(s, p, BasisSignature::default_for(Ambient::R24), ParamKind::PseudoArcLength).unwrap()
    }

    #[test]
    fn metric_cross_is_orthogonal() {
        let a = SemiQuaternion::new(1.0, 0.2, 0.3, -0.1);
        let b = SemiQuaternion::new(0.0, 1.0, 0.5, 0.4);
        let c = SemiQuaternion::new(0.3, -0.2, 1.0, 0.7);
        let w = metric_cross(a, b, c);
        for v in [a, b, c] {
            assert!(h_inner(w, v).abs() < 1e-12);
        }
    }

    #[test]
    fn planar_circle_is_degenerate() {
        let c = curve(0.0, 1.0, 501, |s| SemiQuaternion::new(s.cos(), s.sin(), 0.0, 0.0));
        assert!(matches!(frenet4_apparatus(&c), Err(Error::DegenerateFrame { .. })));
    }

    #[test]
    fn double_rotation() {
        let r3 = 3.0_f64.sqrt();
        let c = curve(0.0, 1.0, 1001, |s| {
            SemiQuaternion::new((2.0 * s).cos(), (2.0 * s).sin(), r3 * s.cos(), r3 * s.sin())
        });
        let f = frenet4_apparatus(&c).unwrap();
        for i in f.retained() {
            assert!((f.kappa[i] - 13.0_f64.sqrt()).abs() < 1e-6);
            assert!(f.k[i] > 0.0 && f.bitorsion[i] > 0.0);
        }
        let res = crate::frenet3::max_residuals(&frenet4_residuals(&f));
        assert!(res.iter().all(|&v| v < 1e-4), "{res:?}");
    }

    #[test]
    fn lift_examples() {
        let sig = BasisSignature::default();
        let (a, _, _) = quaternionic_frame_lift(
            SemiQuaternion::E1,
            SemiQuaternion::E2,
            SemiQuaternion::E3,
            SemiQuaternion::ONE,
            sig,
        )
        .unwrap();
        assert_eq!(a, -SemiQuaternion::E1);
        let (a, _, _) = quaternionic_frame_lift(
            SemiQuaternion::E1,
            SemiQuaternion::E3,
            SemiQuaternion::E2,
            SemiQuaternion::E2,
            sig,
        )
        .unwrap();
        assert_eq!(a, -SemiQuaternion::E3);
        assert!(matches!(
            quaternionic_frame_lift(SemiQuaternion::E1 * 2.0, SemiQuaternion::E2, SemiQuaternion::E3, SemiQuaternion::ONE, sig),
            Err(Error::NonUnitInput(_))
        ));
    }
}
