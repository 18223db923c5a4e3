use serde::Serialize;

use super::{normal_length, quadratic_fit, ratio_fit, scale, tangential_fit, NormalLength, QuadraticFit, RatioFit, TangentialFit};
use crate::curve::CurveSamples;
use crate::fit;
use crate::frenet3::Frenet3Data;
use crate::quat::{h_inner, norm, quadratic_form};

/// Largest share of retained samples on which the torsion may vanish while
/// still counting as nonvanishing (isolated zeros).
const TORSION_ZERO_SHARE: f64 = 0.05;

/// Position vector split along the frame at the retained samples.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition3 {
    pub s: Vec<f64>,
    /// `eps_t h(alpha, t)`
    pub lambda: Vec<f64>,
    /// `eps_n2 h(alpha, n2)`
    pub mu: Vec<f64>,
    /// Rectifying defect `h(alpha, n1)`.
    pub h_alpha_n1: Vec<f64>,
}

pub fn decompose_position_3d(curve: &CurveSamples, frame: &Frenet3Data) -> Decomposition3 {
    let p = curve.points();
    let keep = frame.retained();
    Decomposition3 {
        s: frame.s[keep.clone()].to_vec(),
        lambda: keep.clone().map(|i| frame.eps_t.value() * h_inner(p[i], frame.t[i])).collect(),
        mu: keep.clone().map(|i| frame.eps_n2.value() * h_inner(p[i], frame.n2[i])).collect(),
        h_alpha_n1: keep.map(|i| h_inner(p[i], frame.n1[i])).collect(),
    }
}

/// Constancy of `h(alpha, n2)` together with nonvanishing torsion.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BinormalConstancy {
    pub h_alpha_n2: f64,
    pub std: f64,
    pub residual: f64,
    pub torsion_max: f64,
    pub torsion_zero_share: f64,
    pub torsion_nonvanishing: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RectifyingReport3 {
    pub thm32_i: QuadraticFit,
    pub thm32_ii: TangentialFit,
    pub thm32_iii: NormalLength,
    pub thm32_iv: BinormalConstancy,
    pub thm33: RatioFit,
    /// `max |h(alpha, n1)|` relative to the largest distance.
    pub h_alpha_n1_max: f64,
    pub normal_length: f64,
    /// True when every statement and the ratio check pass.
    pub all_pass: bool,
    pub verdict: bool,
}

/// Linear fit of `r/k` against `s` on the retained samples.
pub fn check_ratio_linearity(frame: &Frenet3Data, tol: f64) -> RatioFit {
    let keep = frame.retained();
    let ratio: Vec<f64> = keep.clone().map(|i| frame.r[i] / frame.k[i]).collect();
    ratio_fit(&frame.s[keep], &ratio, tol)
}

pub fn check_thm32(curve: &CurveSamples, frame: &Frenet3Data, tol: f64) -> RectifyingReport3 {
    let keep = frame.retained();
    let s = &frame.s[keep.clone()];
    let p = curve.points();
    let q: Vec<f64> = keep.clone().map(|i| quadratic_form(p[i])).collect();
    let rho: Vec<f64> = q.iter().map(|v| v.abs().sqrt()).collect();
    let h_t: Vec<f64> = keep.clone().map(|i| h_inner(p[i], frame.t[i])).collect();
    let h_n1: Vec<f64> = keep.clone().map(|i| h_inner(p[i], frame.n1[i])).collect();
    let h_n2: Vec<f64> = keep.clone().map(|i| h_inner(p[i], frame.n2[i])).collect();
    let et = frame.eps_t.value();
    let normal: Vec<f64> = keep.clone().map(|i| norm(p[i] - frame.t[i] * (et * h_inner(p[i], frame.t[i])))).collect();

    let thm32_i = quadratic_fit(s, &q, frame.eps_t, tol);
    let thm32_ii = tangential_fit(s, &h_t, frame.eps_t, tol);
    let thm32_iii = normal_length(&normal, &rho, tol);

    let mean_n2 = fit::mean(&h_n2);
    let std_n2 = fit::std_dev(&h_n2);
    let residual_n2 = std_n2 / mean_n2.abs().max(1.0);
    let r: Vec<f64> = frame.r[keep].to_vec();
    let torsion_max = fit::max_abs(&r);
    let zeros = r.iter().filter(|v| v.abs() <= tol).count();
    let torsion_zero_share = zeros as f64 / r.len() as f64;
    let torsion_nonvanishing = torsion_max > tol && torsion_zero_share <= TORSION_ZERO_SHARE;
    let thm32_iv = BinormalConstancy {
        h_alpha_n2: mean_n2,
        std: std_n2,
        residual: residual_n2,
        torsion_max,
        torsion_zero_share,
        torsion_nonvanishing,
        pass: residual_n2 < tol && torsion_nonvanishing,
    };

    let thm33 = check_ratio_linearity(frame, tol);
    let h_alpha_n1_max = fit::max_abs(&h_n1) / scale(&rho);
    let verdict = h_alpha_n1_max < tol && thm33.residual < tol && thm33.c1.abs() > tol;
    let all_pass = thm32_i.pass && thm32_ii.pass && thm32_iii.pass && thm32_iv.pass && thm33.pass;
    RectifyingReport3 {
        thm32_i,
        thm32_ii,
        thm32_iii,
        thm32_iv,
        thm33,
        h_alpha_n1_max,
        normal_length: thm32_iii.normal_length,
        all_pass,
        verdict,
    }
}
