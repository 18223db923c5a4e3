use std::ops::Range;

use serde::Serialize;

use super::{normal_length, quadratic_fit, scale, tangential_fit, NormalLength, QuadraticFit, TangentialFit};
use crate::curve::{derivative_table, CurveSamples, DerivativeScheme};
use crate::error::{Error, Result};
use crate::fit;
use crate::frenet4::Frenet4Data;
use crate::quat::{h_inner, norm, quadratic_form};

/// Curvatures at or below this size count as vanishing.
const VANISHING: f64 = 1e-9;

/// `lambda`, `mu`, `nu` over the whole grid for a given constant `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct Coefficients4 {
    pub c: f64,
    pub s: Vec<f64>,
    pub lambda: Vec<f64>,
    pub mu: Vec<f64>,
    pub nu: Vec<f64>,
    pub retained: Range<usize>,
}

pub fn compute_rectifying_coefficients_4d(frame: &Frenet4Data, c: f64) -> Result<Coefficients4> {
    compute_rectifying_coefficients_4d_with(frame, c, DerivativeScheme::default())
}

/// Evaluates
///
/// ```text
/// lambda = s + c
/// mu     = eps_t eps_N1 kappa (s + c) / k
/// nu     = eps_t eps_n2 eps_N1 (kappa k + (s + c)(kappa' k - kappa k')) / (k^2 b)
/// ```
///
/// with `kappa'` and `k'` estimated from the sampled curvatures.
pub fn compute_rectifying_coefficients_4d_with(
    frame: &Frenet4Data,
    c: f64,
    scheme: DerivativeScheme,
) -> Result<Coefficients4> {
    for (i, (&k, &b)) in frame.k.iter().zip(&frame.bitorsion).enumerate() {
        if k.abs() <= VANISHING {
            return Err(Error::VanishingCurvature { param: frame.s[i], what: format!("k = {k}") });
        }
        if b.abs() <= VANISHING {
            return Err(Error::VanishingCurvature { param: frame.s[i], what: format!("bitorsion = {b}") });
        }
    }
    let dkappa = derivative_table(&frame.s, &frame.kappa, 1, scheme)?.remove(0);
    let dk = derivative_table(&frame.s, &frame.k, 1, scheme)?.remove(0);
    let pre = (frame.eps_t() * frame.eps_big_n1).value();
    let en2 = frame.eps_n2.value();
    let n = frame.s.len();
    let mut lambda = Vec::with_capacity(n);
    let mut mu = Vec::with_capacity(n);
    let mut nu = Vec::with_capacity(n);
    for i in 0..n {
        let (kp, k, b) = (frame.kappa[i], frame.k[i], frame.bitorsion[i]);
        let x = frame.s[i] + c;
        lambda.push(x);
        mu.push(pre * kp * x / k);
        let mu_prime = pre * (kp * k + x * (dkappa[i] * k - kp * dk[i])) / (k * k);
        nu.push(en2 * mu_prime / b);
    }
    Ok(Coefficients4 { c, s: frame.s.clone(), lambda, mu, nu, retained: frame.retained() })
}

/// Pointwise value of `eps_n1 mu b + nu'` at the retained samples.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureConditionValues {
    pub c: f64,
    pub values: Vec<f64>,
    pub max_abs: f64,
}

pub fn check_curvature_condition(frame: &Frenet4Data, c: f64) -> Result<CurvatureConditionValues> {
    check_curvature_condition_with(frame, c, DerivativeScheme::default())
}

pub fn check_curvature_condition_with(frame: &Frenet4Data, c: f64, scheme: DerivativeScheme) -> Result<CurvatureConditionValues> {
    let coef = compute_rectifying_coefficients_4d_with(frame, c, scheme)?;
    let values = condition_values(frame, &coef, scheme)?;
    let max_abs = fit::max_abs(&values);
    Ok(CurvatureConditionValues { c, values, max_abs })
}

fn condition_values(frame: &Frenet4Data, coef: &Coefficients4, scheme: DerivativeScheme) -> Result<Vec<f64>> {
    let dnu = derivative_table(&coef.s, &coef.nu, 1, scheme)?.remove(0);
    let en1 = frame.eps_n1.value();
    Ok(coef.retained.clone().map(|i| en1 * coef.mu[i] * frame.bitorsion[i] + dnu[i]).collect())
}

/// `(min over c of the max condition residual, minimizing c)`. The residual is affine in
/// `c`, so the objective is convex and piecewise linear.
fn condition_min_over_c(frame: &Frenet4Data, scheme: DerivativeScheme) -> Result<(f64, f64)> {
    let a = check_curvature_condition_with(frame, 0.0, scheme)?.values;
    let a1 = check_curvature_condition_with(frame, 1.0, scheme)?.values;
    let b: Vec<f64> = a1.iter().zip(&a).map(|(x, y)| x - y).collect();
    let f = |c: f64| a.iter().zip(&b).map(|(x, y)| (x + c * y).abs()).fold(0.0, f64::max);
    let roots: Vec<f64> = a.iter().zip(&b).filter(|(_, y)| y.abs() > 1e-300).map(|(x, y)| -x / y).collect();
    if roots.is_empty() {
        return Ok((f(0.0), 0.0));
    }
    let (mut lo, mut hi) = fit::min_max(&roots);
    let g = 0.5 * (5.0_f64.sqrt() - 1.0);
    for _ in 0..200 {
        let m1 = hi - g * (hi - lo);
        let m2 = lo + g * (hi - lo);
        if f(m1) <= f(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let c = 0.5 * (lo + hi);
    Ok((f(c), c))
}

/// `c = eps_T h(beta, T)(s0) - s0` at the first retained sample.
pub fn estimate_c(curve: &CurveSamples, frame: &Frenet4Data) -> f64 {
    let i = frame.retained().start;
    frame.eps_big_t.value() * h_inner(curve.points()[i], frame.tangent[i]) - frame.s[i]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BinormalCheck {
    pub residual_n2: f64,
    pub residual_n3: f64,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormalPartCheck {
    pub mean: f64,
    pub std: f64,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureCondition {
    pub c: f64,
    pub max: f64,
    pub min_over_c: f64,
    pub c_best: f64,
    pub pass: bool,
}

/// Per-sample series behind [`RectifyingReport4`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Series4 {
    pub s: Vec<f64>,
    pub eq43: Vec<f64>,
    pub lambda: Vec<f64>,
    pub mu: Vec<f64>,
    pub nu: Vec<f64>,
    pub h_beta_n2: Vec<f64>,
    pub h_beta_n3: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RectifyingReport4 {
    pub c: f64,
    pub eq43: CurvatureCondition,
    pub thm44_i: QuadraticFit,
    pub thm44_ii: TangentialFit,
    pub thm44_iii: NormalLength,
    pub thm44_iv: BinormalCheck,
    pub eq48: NormalPartCheck,
    /// `max N_E(beta - lambda T - mu N2 - nu N3)` relative to the curve size.
    pub reconstruction_residual: f64,
    /// `max |h(beta, N1)|` relative to the largest distance.
    pub h_beta_n1_max: f64,
    pub all_pass: bool,
    pub verdict: bool,
    #[serde(skip)]
    pub series: Series4,
}

pub fn check_thm44(curve: &CurveSamples, frame: &Frenet4Data, tol: f64) -> Result<RectifyingReport4> {
    check_thm44_with(curve, frame, tol, DerivativeScheme::default())
}

pub fn check_thm44_with(
    curve: &CurveSamples,
    frame: &Frenet4Data,
    tol: f64,
    scheme: DerivativeScheme,
) -> Result<RectifyingReport4> {
    let keep = frame.retained();
    let s = &frame.s[keep.clone()];
    let p = curve.points();
    let c = estimate_c(curve, frame);
    let coef = compute_rectifying_coefficients_4d_with(frame, c, scheme)?;
    let e43 = condition_values(frame, &coef, scheme)?;
    let (min_over_c, c_best) = condition_min_over_c(frame, scheme)?;
    let e43_max = fit::max_abs(&e43);

    let et = frame.eps_big_t.value();
    let (en1, en2) = (frame.eps_n1.value(), frame.eps_n2.value());
    let q: Vec<f64> = keep.clone().map(|i| quadratic_form(p[i])).collect();
    let rho: Vec<f64> = q.iter().map(|v| v.abs().sqrt()).collect();
    let h_t: Vec<f64> = keep.clone().map(|i| h_inner(p[i], frame.tangent[i])).collect();
    let h_n1: Vec<f64> = keep.clone().map(|i| h_inner(p[i], frame.n1[i])).collect();
    let h_n2: Vec<f64> = keep.clone().map(|i| h_inner(p[i], frame.n2[i])).collect();
    let h_n3: Vec<f64> = keep.clone().map(|i| h_inner(p[i], frame.n3[i])).collect();
    let normal: Vec<f64> =
        keep.clone().map(|i| norm(p[i] - frame.tangent[i] * (et * h_inner(p[i], frame.tangent[i])))).collect();

    let thm44_i = quadratic_fit(s, &q, frame.eps_big_t, tol);
    let thm44_ii = tangential_fit(s, &h_t, frame.eps_big_t, tol);
    let thm44_iii = normal_length(&normal, &rho, tol);

    let mu: Vec<f64> = coef.mu[keep.clone()].to_vec();
    let nu: Vec<f64> = coef.nu[keep.clone()].to_vec();
    let lambda: Vec<f64> = coef.lambda[keep.clone()].to_vec();
    let d2: Vec<f64> = h_n2.iter().zip(&mu).map(|(h, m)| h - m * en1 * et).collect();
    let d3: Vec<f64> = h_n3.iter().zip(&nu).map(|(h, v)| h - v * en2 * et).collect();
    let bin_scale = scale(&h_n2).max(scale(&h_n3));
    let residual_n2 = fit::max_abs(&d2) / bin_scale;
    let residual_n3 = fit::max_abs(&d3) / bin_scale;
    let residual = residual_n2.max(residual_n3);
    let thm44_iv = BinormalCheck { residual_n2, residual_n3, residual, pass: residual < tol };

    let a2: Vec<f64> = mu.iter().zip(&nu).map(|(m, v)| en1 * m * m + en2 * v * v).collect();
    let a2_mean = fit::mean(&a2);
    let a2_std = fit::std_dev(&a2);
    let a2_res = a2_std / a2_mean.abs().max(1.0);
    let eq48 = NormalPartCheck { mean: a2_mean, std: a2_std, residual: a2_res, pass: a2_res < tol };

    let size = keep.clone().map(|i| p[i].euclidean_norm()).fold(1.0, f64::max);
    let reconstruction_residual = keep
        .clone()
        .enumerate()
        .map(|(j, i)| {
            (p[i] - frame.tangent[i] * lambda[j] - frame.n2[i] * mu[j] - frame.n3[i] * nu[j]).euclidean_norm()
        })
        .fold(0.0, f64::max)
        / size;
    let h_beta_n1_max = fit::max_abs(&h_n1) / scale(&rho);

    let eq43 = CurvatureCondition { c, max: e43_max, min_over_c, c_best, pass: e43_max < tol };
    let verdict = reconstruction_residual < tol && h_beta_n1_max < tol;
    let all_pass = eq43.pass && thm44_i.pass && thm44_ii.pass && thm44_iii.pass && thm44_iv.pass;
    Ok(RectifyingReport4 {
        c,
        eq43,
        thm44_i,
        thm44_ii,
        thm44_iii,
        thm44_iv,
        eq48,
        reconstruction_residual,
        h_beta_n1_max,
        all_pass,
        verdict,
        series: Series4 { s: s.to_vec(), eq43: e43, lambda, mu, nu, h_beta_n2: h_n2, h_beta_n3: h_n3 },
    })
}
