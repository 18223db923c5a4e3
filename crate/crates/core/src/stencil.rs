//! Finite-difference, least-squares and interpolation weights on arbitrary
//! node sets.

use std::ops::{Add, Mul, Sub};

use nalgebra::{DMatrix, DVector};

use crate::quat::SemiQuaternion;

/// Values that can be combined linearly by stencil weights.
pub trait Sample: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> {
    fn zero() -> Self;
    /// Euclidean size, used to compare estimates.
    fn magnitude(&self) -> f64;
}

impl Sample for f64 {
    fn zero() -> Self {
        0.0
    }

    fn magnitude(&self) -> f64 {
        self.abs()
    }
}

impl Sample for SemiQuaternion {
    fn zero() -> Self {
        SemiQuaternion::ZERO
    }

    fn magnitude(&self) -> f64 {
        self.euclidean_norm()
    }
}

/// Fornberg's recursion: `w[k][j]` is the weight of node `j` in the
/// approximation of the `k`-th derivative at `z`, for `k = 0..=max_order`.
pub fn fornberg(z: f64, nodes: &[f64], max_order: usize) -> Vec<Vec<f64>> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; n]; max_order + 1];
    if n == 0 {
        return c;
    }
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - z;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(max_order);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - z;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// Legendre polynomials and their derivatives at `z`:
/// `out[m][k] = P_k^{(m)}(z)` for `m = 0..=max_order`, `k = 0..=degree`.
fn legendre_table(z: f64, degree: usize, max_order: usize) -> Vec<Vec<f64>> {
    let mut p = vec![vec![0.0; degree + 1]; max_order + 1];
    p[0][0] = 1.0;
    if degree >= 1 {
        p[0][1] = z;
        if max_order >= 1 {
            p[1][1] = 1.0;
        }
    }
    for k in 1..degree {
        let kf = k as f64;
        for m in 0..=max_order {
            let lower = if m > 0 { m as f64 * p[m - 1][k] } else { 0.0 };
            p[m][k + 1] = ((2.0 * kf + 1.0) * (z * p[m][k] + lower) - kf * p[m][k - 1]) / (kf + 1.0);
        }
    }
    p
}

/// QR factorization of a Legendre least-squares fit on a fixed node set,
/// reusable for weights at any evaluation point.
pub struct LeastSquaresFit {
    q: DMatrix<f64>,
    r: DMatrix<f64>,
    center: f64,
    half: f64,
    degree: usize,
}

impl LeastSquaresFit {
    /// The degree is clipped to `nodes.len() - 1`.
    pub fn new(nodes: &[f64], degree: usize) -> Self {
        let n = nodes.len();
        let degree = degree.min(n - 1);
        let center = 0.5 * (nodes[0] + nodes[n - 1]);
        let half = 0.5 * (nodes[n - 1] - nodes[0]);
        let mut a = DMatrix::<f64>::zeros(n, degree + 1);
        for (j, &x) in nodes.iter().enumerate() {
            let row = legendre_table((x - center) / half, degree, 0);
            for k in 0..=degree {
                a[(j, k)] = row[0][k];
            }
        }
        let qr = a.qr();
        Self { q: qr.q(), r: qr.r(), center, half, degree }
    }

    /// `w[m][j]`, the weight of node `j` in the `m`-th derivative of the fit
    /// at `z`, for `m = 0..=max_order`.
    pub fn weights(&self, z: f64, max_order: usize) -> Vec<Vec<f64>> {
        let at = legendre_table((z - self.center) / self.half, self.degree, max_order);
        let mut out = vec![vec![0.0; self.q.nrows()]; max_order + 1];
        for (m, row) in out.iter_mut().enumerate() {
            let factor = self.half.powi(-(m as i32));
            let d = DVector::from_iterator(self.degree + 1, at[m].iter().map(|v| v * factor));
            if let Some(y) = self.r.tr_solve_upper_triangular(&d) {
                let w = &self.q * y;
                row.copy_from_slice(w.as_slice());
            }
        }
        out
    }
}

/// Least-squares polynomial derivative weights.
///
/// Fits a polynomial of the given degree to values on `nodes` and returns
/// `w[m][j]`, the weight of node `j` in the `m`-th derivative of the fit at
/// `z`, for `m = 0..=max_order`. The degree is clipped to `nodes.len() - 1`.
pub fn least_squares_weights(z: f64, nodes: &[f64], degree: usize, max_order: usize) -> Vec<Vec<f64>> {
    LeastSquaresFit::new(nodes, degree).weights(z, max_order)
}

/// Start index of a window of `width` consecutive nodes around `center`,
/// shifted inward at the ends of `0..n`.
pub fn window_start(center: usize, width: usize, n: usize) -> usize {
    let half = width / 2;
    center.saturating_sub(half).min(n.saturating_sub(width))
}

/// Applies weights to a window of values.
pub fn apply<T: Sample>(weights: &[f64], values: &[T]) -> T {
    weights.iter().zip(values).fold(T::zero(), |acc, (&w, &v)| acc + v * w)
}

/// Applies derivative weights to differences from a reference value; exact
/// when the weights annihilate constants and less sensitive to large offsets.
pub fn apply_centered<T: Sample>(weights: &[f64], values: &[T], reference: T) -> T {
    weights.iter().zip(values).fold(T::zero(), |acc, (&w, &v)| acc + (v - reference) * w)
}

/// Local Lagrange interpolation through `width` nodes nearest to `x`.
pub fn lagrange_local<T: Sample>(nodes: &[f64], values: &[T], x: f64, width: usize) -> T {
    let n = nodes.len();
    let width = width.min(n);
    let idx = nodes.partition_point(|&p| p <= x).saturating_sub(1);
    let start = (idx + 1).saturating_sub(width / 2).min(n - width);
    let w = fornberg(x, &nodes[start..start + width], 0);
    apply(&w[0], &values[start..start + width])
}

/// Nodes and weights of the 4-point Gauss-Legendre rule on `[-1, 1]`.
pub const GAUSS4: [(f64, f64); 4] = [
    (-0.861_136_311_594_052_6, 0.347_854_845_137_453_9),
    (-0.339_981_043_584_856_3, 0.652_145_154_862_546_1),
    (0.339_981_043_584_856_3, 0.652_145_154_862_546_1),
    (0.861_136_311_594_052_6, 0.347_854_845_137_453_9),
];
