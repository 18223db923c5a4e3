//! Sampled curves, numerical derivatives and pseudo arc-length
//! reparametrization.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quat::{norm, quadratic_form, Ambient, BasisSignature, SemiQuaternion};
use crate::stencil::{self, Sample};

/// Smallest number of samples a curve may carry.
pub const MIN_SAMPLES: usize = 5;

/// Nodes used by local Lagrange interpolation.
const INTERP_WIDTH: usize = 8;

/// Nodes used by the arc-length quadrature.
const QUAD_WIDTH: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParamKind {
    Raw,
    #[serde(rename = "pseudo_arclength")]
    PseudoArcLength,
}

/// A discretized curve: strictly increasing parameters and one point each.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveSamples {
    params: Vec<f64>,
    points: Vec<SemiQuaternion>,
    pub sig: BasisSignature,
    pub param_kind: ParamKind,
}

impl CurveSamples {
    pub fn new(
        params: Vec<f64>,
        points: Vec<SemiQuaternion>,
        sig: BasisSignature,
        param_kind: ParamKind,
    ) -> Result<Self> {
        if params.len() != points.len() {
            return Err(Error::InvalidCurve(format!(
                "{} parameters but {} points",
                params.len(),
                points.len()
            )));
        }
        if params.len() < MIN_SAMPLES {
            return Err(Error::InsufficientSamples { needed: MIN_SAMPLES, got: params.len() });
        }
        if let Some(i) = params.iter().position(|p| !p.is_finite()) {
            return Err(Error::InvalidCurve(format!("non-finite parameter at index {i}")));
        }
        if let Some(i) = points.iter().position(|q| !q.is_finite()) {
            return Err(Error::InvalidCurve(format!("non-finite point at index {i}")));
        }
        if let Some(i) = params.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::InvalidCurve(format!(
                "parameters not strictly increasing at index {}",
                i + 1
            )));
        }
        Ok(Self { params, points, sig, param_kind })
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn points(&self) -> &[SemiQuaternion] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.params.len()
    }

    pub fn is_empty(&self) -> bool {
        self.params.is_empty()
    }

    pub fn ambient(&self) -> Ambient {
        self.sig.ambient
    }

    pub fn range(&self) -> (f64, f64) {
        (self.params[0], self.params[self.len() - 1])
    }

    /// Same curve shifted by a constant vector.
    pub fn translated(&self, offset: SemiQuaternion) -> Self {
        Self { points: self.points.iter().map(|&p| p + offset).collect(), ..self.clone() }
    }

    pub fn with_kind(mut self, kind: ParamKind) -> Self {
        self.param_kind = kind;
        self
    }
}

/// Evenly spaced grid with exact endpoints.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![a];
    }
    let last = (n - 1) as f64;
    (0..n)
        .map(|i| if i == n - 1 { b } else { a + (b - a) * (i as f64 / last) })
        .collect()
}

/// Whether consecutive parameter gaps agree to relative precision `rtol`.
pub fn is_uniform(params: &[f64], rtol: f64) -> bool {
    if params.len() < 2 {
        return true;
    }
    let h = (params[params.len() - 1] - params[0]) / (params.len() - 1) as f64;
    params.windows(2).all(|w| ((w[1] - w[0]) - h).abs() <= rtol * h.abs())
}

/// Result of [`differentiate`].
#[derive(Debug, Clone, PartialEq)]
pub struct Derivative {
    pub values: Vec<SemiQuaternion>,
    /// True where no centered stencil fits and a one-sided one was used.
    pub low_confidence: Vec<bool>,
}

/// Finite-difference derivative of the given order (1 to 4).
///
/// Interior samples use centered stencils accurate to fourth order (five
/// nodes for orders 1 and 2, seven for orders 3 and 4); samples too close to
/// either end fall back to a one-sided second-order stencil and are flagged.
pub fn differentiate(curve: &CurveSamples, order: usize) -> Result<Derivative> {
    let (values, low_confidence) = finite_difference(curve.params(), curve.points(), order)?;
    Ok(Derivative { values, low_confidence })
}

fn finite_difference<T: Sample>(params: &[f64], values: &[T], order: usize) -> Result<(Vec<T>, Vec<bool>)> {
    if !(1..=4).contains(&order) {
        return Err(Error::InvalidConfig(format!("derivative order {order} not in 1..=4")));
    }
    let half = if order <= 2 { 2 } else { 3 };
    let width = 2 * half + 1;
    let n = params.len();
    if n < width {
        return Err(Error::InsufficientSamples { needed: width, got: n });
    }
    let edge = order + 2;
    let mut out = Vec::with_capacity(n);
    let mut flags = Vec::with_capacity(n);
    for i in 0..n {
        let (start, len, low) = if i >= half && i + half < n {
            (i - half, width, false)
        } else if i < half {
            (0, edge, true)
        } else {
            (n - edge, edge, true)
        };
        let w = stencil::fornberg(params[i], &params[start..start + len], order);
        out.push(stencil::apply_centered(&w[order], &values[start..start + len], values[i]));
        flags.push(low);
    }
    Ok((out, flags))
}

/// How derivatives of sampled data are estimated.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum DerivativeScheme {
    /// The stencils of [`differentiate`].
    FiniteDifference,
    /// Local least-squares polynomial fits over `2 * half_width + 1` nodes,
    /// with windows shifted inward at the ends. `None` selects the
    /// half-width from the data, see [`derivative_table`].
    LeastSquares { half_width: Option<usize>, degree: usize },
}

impl Default for DerivativeScheme {
    fn default() -> Self {
        DerivativeScheme::LeastSquares { half_width: None, degree: 10 }
    }
}

/// Candidate half-widths tried when none is given: `8 * sqrt(2)^j`.
pub fn candidate_half_widths(n: usize) -> Vec<usize> {
    let cap = ((n.saturating_sub(1)) / 2).min(MAX_HALF_WIDTH);
    let mut out: Vec<usize> = (0..)
        .map(|j| (8.0 * std::f64::consts::SQRT_2.powi(j)).round() as usize)
        .take_while(|&m| m <= cap)
        .collect();
    if out.is_empty() {
        out.push(cap.max(2));
    }
    out
}

const MAX_HALF_WIDTH: usize = 362;

/// Derivatives of orders `1..=max_order`; `out[k - 1][i]` is the `k`-th
/// derivative at sample `i`.
///
/// With `half_width: None` the least-squares window is chosen per call: among
/// [`candidate_half_widths`], the one whose highest-order estimate differs
/// least (in the maximum norm) from the estimate of the next wider window.
pub fn derivative_table<T: Sample>(
    params: &[f64],
    values: &[T],
    max_order: usize,
    scheme: DerivativeScheme,
) -> Result<Vec<Vec<T>>> {
    let n = params.len();
    if n != values.len() {
        return Err(Error::InvalidCurve("parameter and value counts differ".into()));
    }
    match scheme {
        DerivativeScheme::FiniteDifference => (1..=max_order)
            .map(|k| finite_difference(params, values, k).map(|(v, _)| v))
            .collect(),
        DerivativeScheme::LeastSquares { half_width: Some(m), degree } => {
            least_squares_table(params, values, max_order, m, degree)
        }
        DerivativeScheme::LeastSquares { half_width: None, degree } => {
            let candidates = candidate_half_widths(n);
            let tables = candidates
                .iter()
                .map(|&m| least_squares_table(params, values, max_order, m, degree))
                .collect::<Result<Vec<_>>>()?;
            if tables.len() == 1 {
                return Ok(tables.into_iter().next().expect("one table"));
            }
            let spread = |a: &Vec<Vec<T>>, b: &Vec<Vec<T>>| {
                let (x, y) = (&a[max_order - 1], &b[max_order - 1]);
                x.iter().zip(y).map(|(&p, &q)| (p - q).magnitude()).fold(0.0, f64::max)
            };
            let best = (0..tables.len() - 1)
                .min_by(|&i, &j| spread(&tables[i], &tables[i + 1]).total_cmp(&spread(&tables[j], &tables[j + 1])))
                .expect("at least two tables");
            Ok(tables.into_iter().nth(best).expect("index in range"))
        }
    }
}

fn least_squares_table<T: Sample>(
    params: &[f64],
    values: &[T],
    max_order: usize,
    m: usize,
    degree: usize,
) -> Result<Vec<Vec<T>>> {
    let n = params.len();
    let width = (2 * m + 1).min(n);
    let degree = degree.min(width - 1);
    if degree < max_order || n < MIN_SAMPLES {
        return Err(Error::InsufficientSamples { needed: (max_order + 1).max(MIN_SAMPLES), got: n });
    }
    let mut out = vec![Vec::with_capacity(n); max_order];
    if is_uniform(params, 1e-8) {
        let h = (params[n - 1] - params[0]) / (n - 1) as f64;
        let local: Vec<f64> = (0..width).map(|j| j as f64 * h).collect();
        let fit = stencil::LeastSquaresFit::new(&local, degree);
        let cache: Vec<Vec<Vec<f64>>> = (0..width).map(|p| fit.weights(local[p], max_order)).collect();
        for i in 0..n {
            let start = stencil::window_start(i, width, n);
            let w = &cache[i - start];
            let win = &values[start..start + width];
            for (k, col) in out.iter_mut().enumerate() {
                col.push(stencil::apply_centered(&w[k + 1], win, values[i]));
            }
        }
    } else {
        for i in 0..n {
            let start = stencil::window_start(i, width, n);
            let nodes = &params[start..start + width];
            let w = stencil::least_squares_weights(params[i], nodes, degree, max_order);
            let win = &values[start..start + width];
            for (k, col) in out.iter_mut().enumerate() {
                col.push(stencil::apply_centered(&w[k + 1], win, values[i]));
            }
        }
    }
    Ok(out)
}

/// Derivatives of the curve points, see [`derivative_table`].
pub fn derivatives(curve: &CurveSamples, max_order: usize, scheme: DerivativeScheme) -> Result<Vec<Vec<SemiQuaternion>>> {
    derivative_table(curve.params(), curve.points(), max_order, scheme)
}

/// Reparametrizes by pseudo arc length with the default derivative scheme,
/// keeping the sample count.
pub fn reparam_pseudo_arclength(curve: &CurveSamples, tol: f64) -> Result<CurveSamples> {
    reparam_with(curve, tol, DerivativeScheme::default(), None)
}

/// Reparametrizes by pseudo arc length `s(u) = u0 + int_{u0}^{u} N(curve'(v)) dv`
/// onto a uniform grid of `n_out` samples (default: unchanged count).
///
/// A curve whose speed is already within `tol` of one is returned with its
/// grid unchanged.
pub fn reparam_with(
    curve: &CurveSamples,
    tol: f64,
    scheme: DerivativeScheme,
    n_out: Option<usize>,
) -> Result<CurveSamples> {
    let n = curve.len();
    let params = curve.params();
    let d1 = derivative_table(params, curve.points(), 1, scheme)?.remove(0);
    let speeds: Vec<f64> = d1.iter().map(|&v| norm(v)).collect();
    let first_sign = quadratic_form(d1[0]).signum();
    for (i, (&v, &sp)) in d1.iter().zip(&speeds).enumerate() {
        if sp <= tol || quadratic_form(v).signum() != first_sign {
            return Err(Error::NullTangent { param: params[i] });
        }
    }
    let n_out = n_out.unwrap_or(n);
    if n_out < MIN_SAMPLES {
        return Err(Error::InsufficientSamples { needed: MIN_SAMPLES, got: n_out });
    }
    let unit = speeds.iter().all(|sp| (sp - 1.0).abs() <= tol);
    if unit && n_out == n {
        return Ok(curve.clone().with_kind(ParamKind::PseudoArcLength));
    }

    let qw = QUAD_WIDTH.min(n);
    let mut arc = Vec::with_capacity(n);
    arc.push(params[0]);
    for i in 0..n - 1 {
        let start = (i + 1).saturating_sub(qw / 2).min(n - qw);
        let nodes = &params[start..start + qw];
        let mid = 0.5 * (params[i] + params[i + 1]);
        let half = 0.5 * (params[i + 1] - params[i]);
        let piece: f64 = stencil::GAUSS4
            .iter()
            .map(|&(x, w)| {
                let lw = stencil::fornberg(mid + half * x, nodes, 0);
                w * stencil::apply(&lw[0], &speeds[start..start + qw])
            })
            .sum();
        arc.push(arc[i] + half * piece);
    }

    let grid = linspace(arc[0], arc[n - 1], n_out);
    let mut points: Vec<SemiQuaternion> = grid
        .iter()
        .map(|&s| stencil::lagrange_local(&arc, curve.points(), s, INTERP_WIDTH))
        .collect();
    points[0] = curve.points()[0];
    points[n_out - 1] = curve.points()[n - 1];
    CurveSamples::new(grid, points, curve.sig, ParamKind::PseudoArcLength)
}

/// Interpolates the curve onto `new_params` with local Lagrange polynomials.
pub fn resample(curve: &CurveSamples, new_params: &[f64]) -> Result<CurveSamples> {
    let (lo, hi) = curve.range();
    let slack = 1e-12 * lo.abs().max(hi.abs()).max(1.0);
    for &p in new_params {
        if !(p >= lo - slack && p <= hi + slack) {
            return Err(Error::OutOfRange { param: p, lo, hi });
        }
    }
    let points = new_params
        .iter()
        .map(|&u| stencil::lagrange_local(curve.params(), curve.points(), u, INTERP_WIDTH))
        .collect();
    CurveSamples::new(new_params.to_vec(), points, curve.sig, curve.param_kind)
}
