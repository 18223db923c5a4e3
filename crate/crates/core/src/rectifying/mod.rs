//! Characterizations of rectifying curves, each returning fitted constants,
//! residuals and a pass flag.
//!
//! Residuals are relative: the largest absolute deviation divided by
//! `max(1, scale)` where the scale is the size of the compared quantity.

mod quaternionic;
mod spatial;

use serde::Serialize;

pub use quaternionic::{
    check_curvature_condition, check_curvature_condition_with, check_thm44, check_thm44_with, compute_rectifying_coefficients_4d,
    compute_rectifying_coefficients_4d_with, estimate_c, Coefficients4, CurvatureConditionValues, CurvatureCondition, NormalPartCheck,
    RectifyingReport4, Series4, BinormalCheck,
};
pub use spatial::{
    check_ratio_linearity, check_thm32, decompose_position_3d, BinormalConstancy, Decomposition3, RectifyingReport3,
};

use crate::fit::{self, LineFit};
use crate::quat::Sign;

/// `rho^2 = |eps s^2 + c1 s + c2|`, fitted on the signed quadratic form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadraticFit {
    pub c1: f64,
    pub c2: f64,
    /// Constant term after moving the vertex to the origin,
    /// `c2 - eps c1^2 / 4`.
    pub c2_centered: f64,
    pub vertex: f64,
    pub residual: f64,
    pub pass: bool,
}

/// `h(x, tangent) = eps s + c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TangentialFit {
    pub c: f64,
    pub residual: f64,
    pub pass: bool,
}

/// Constant length of the normal component together with non-constant
/// distance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalLength {
    pub normal_length: f64,
    pub std: f64,
    pub residual: f64,
    pub rho_relative_range: f64,
    pub rho_nonconstant: bool,
    pub pass: bool,
}

/// Linear fit of a ratio against arc length.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioFit {
    pub c1: f64,
    pub c2: f64,
    pub residual: f64,
    pub pass: bool,
}

pub(crate) fn scale(values: &[f64]) -> f64 {
    fit::max_abs(values).max(1.0)
}

pub(crate) fn quadratic_fit(s: &[f64], q: &[f64], eps: Sign, tol: f64) -> QuadraticFit {
    let e = eps.value();
    let y: Vec<f64> = s.iter().zip(q).map(|(&s, &q)| q - e * s * s).collect();
    let LineFit { slope: c1, intercept: c2, .. } = fit::fit_line(s, &y);
    let dev = s
        .iter()
        .zip(q)
        .filter_map(|(&s, &q)| {
            let model = e * s * s + c1 * s + c2;
            (model.signum() == q.signum()).then(|| (model.abs() - q.abs()).abs())
        })
        .fold(0.0, f64::max);
    let residual = dev / scale(q);
    QuadraticFit {
        c1,
        c2,
        c2_centered: c2 - e * c1 * c1 / 4.0,
        vertex: -e * c1 / 2.0,
        residual,
        pass: residual < tol,
    }
}

pub(crate) fn tangential_fit(s: &[f64], h: &[f64], eps: Sign, tol: f64) -> TangentialFit {
    let f = fit::fit_intercept(s, h, eps.value());
    let residual = f.max_dev / scale(h);
    TangentialFit { c: f.intercept, residual, pass: residual < tol }
}

pub(crate) fn normal_length(lengths: &[f64], rho: &[f64], tol: f64) -> NormalLength {
    let mean = fit::mean(lengths);
    let std = fit::std_dev(lengths);
    let residual = std / mean.abs().max(1.0);
    let (lo, hi) = fit::min_max(rho);
    let rho_relative_range = if hi > 0.0 { (hi - lo) / hi } else { 0.0 };
    let rho_nonconstant = rho_relative_range > 100.0 * tol;
    NormalLength {
        normal_length: mean,
        std,
        residual,
        rho_relative_range,
        rho_nonconstant,
        pass: residual < tol && rho_nonconstant,
    }
}

pub(crate) fn ratio_fit(s: &[f64], ratio: &[f64], tol: f64) -> RatioFit {
    let f = fit::fit_line(s, ratio);
    let residual = f.max_dev / scale(ratio);
    RatioFit { c1: f.slope, c2: f.intercept, residual, pass: residual < tol && f.slope.abs() > tol }
}
