//! Ground-state negative orders by iterated Green's-function quadrature for `(h_1 + 1)`.

use crate::error::{Error, Result};

/// Log-spaced grid in `rho`.
#[derive(Clone, Copy, Debug)]
pub struct GreenGrid {
    pub rho_min: f64,
    pub rho_max: f64,
    pub points: usize,
}

impl Default for GreenGrid {
    fn default() -> Self {
        GreenGrid { rho_min: 1e-6, rho_max: 60.0, points: 24_001 }
    }
}

/// Regular solution `rho Phi_2 = e^rho P(2 rho) / (2 rho)` with `P(x) = 1 - e^(-x)(1 + x + x^2/2)`.
pub fn regular_solution(rho: f64) -> f64 {
    let x = 2.0 * rho;
    if x < 2.0 {
        // e^(-x) sum_(k>=3) x^k/k! avoids the cancellation in P near the origin.
        let mut term = x * x * x / 6.0;
        let mut sum = 0.0f64;
        let mut k = 3.0;
        while term > 1e-18 * sum.max(f64::MIN_POSITIVE) {
            sum += term;
            k += 1.0;
            term *= x / k;
        }
        (-rho).exp() * sum / x
    } else {
        let p = 1.0 - (-x).exp() * (1.0 + x + 0.5 * x * x);
        rho.exp() * p / x
    }
}

/// Decaying solution `rho Phi_1 = e^(-rho) (rho + 1 + 1/(2 rho))`.
pub fn decaying_solution(rho: f64) -> f64 {
    (-rho).exp() * (rho + 1.0 + 0.5 / rho)
}

pub fn regular_derivative(rho: f64) -> f64 {
    let x = 2.0 * rho;
    let p = if x < 2.0 {
        regular_solution(rho) * x * (-rho).exp()
    } else {
        1.0 - (-x).exp() * (1.0 + x + 0.5 * x * x)
    };
    rho.exp() / (2.0 * rho) * ((1.0 - 1.0 / rho) * p + 4.0 * rho * rho * (-x).exp())
}

pub fn decaying_derivative(rho: f64) -> f64 {
    -(-rho).exp() * (rho + 0.5 / rho + 0.5 / (rho * rho))
}

/// `Phi_2 Phi_1' - Phi_1 Phi_2'` for the unreduced functions; equals `-1/rho^2`.
pub fn unreduced_wronskian(rho: f64) -> f64 {
    let (y1, y2) = (regular_solution(rho), decaying_solution(rho));
    let (d1, d2) = (regular_derivative(rho), decaying_derivative(rho));
    (y1 * d2 - y2 * d1) / (rho * rho)
}

struct LogGrid {
    rho: Vec<f64>,
    h: f64,
}

impl LogGrid {
    fn new(spec: &GreenGrid) -> LogGrid {
        let (a, b) = (spec.rho_min.ln(), spec.rho_max.ln());
        let h = (b - a) / (spec.points - 1) as f64;
        LogGrid { rho: (0..spec.points).map(|i| (a + h * i as f64).exp()).collect(), h }
    }

    /// Running integral `int_(rho_0)^(rho_i) f drho` with a fourth-order rule in `ln rho`.
    fn cumulative(&self, f: &[f64]) -> Vec<f64> {
        let g: Vec<f64> = f.iter().zip(&self.rho).map(|(v, r)| v * r).collect();
        let n = g.len();
        let mut out = vec![0.0; n];
        for i in 0..n - 1 {
            let piece = if i == 0 {
                9.0 * g[0] + 19.0 * g[1] - 5.0 * g[2] + g[3]
            } else if i == n - 2 {
                9.0 * g[n - 1] + 19.0 * g[n - 2] - 5.0 * g[n - 3] + g[n - 4]
            } else {
                -g[i - 1] + 13.0 * g[i] + 13.0 * g[i + 1] - g[i + 2]
            };
            out[i + 1] = out[i] + piece * self.h / 24.0;
        }
        out
    }

    fn integral(&self, f: &[f64]) -> f64 {
        *self.cumulative(f).last().unwrap()
    }
}

/// One Green's-function step: `G = y2 int_0^rho y1 f + y1 int_rho^inf y2 f`.
fn green_step(grid: &LogGrid, y1: &[f64], y2: &[f64], f: &[f64]) -> Vec<f64> {
    let inner: Vec<f64> = y1.iter().zip(f).map(|(a, b)| a * b).collect();
    let outer: Vec<f64> = y2.iter().zip(f).map(|(a, b)| a * b).collect();
    let lower = grid.cumulative(&inner);
    let upper_total_prefix = grid.cumulative(&outer);
    let total = *upper_total_prefix.last().unwrap();
    (0..f.len())
        .map(|i| y2[i] * lower[i] + y1[i] * (total - upper_total_prefix[i]))
        .collect()
}

/// `<G_j | G_k>` on one grid; the ground-state seed is `G_0 = 2 rho^2 e^(-rho)`.
pub fn greens_pair(j: usize, k: usize, spec: &GreenGrid) -> f64 {
    let grid = LogGrid::new(spec);
    let y1: Vec<f64> = grid.rho.iter().map(|&r| regular_solution(r)).collect();
    let y2: Vec<f64> = grid.rho.iter().map(|&r| decaying_solution(r)).collect();
    let mut rungs = vec![grid.rho.iter().map(|&r| 2.0 * r * r * (-r).exp()).collect::<Vec<_>>()];
    for _ in 0..j.max(k) {
        let next = green_step(&grid, &y1, &y2, rungs.last().unwrap());
        rungs.push(next);
    }
    let product: Vec<f64> = rungs[j].iter().zip(&rungs[k]).map(|(a, b)| a * b).collect();
    grid.integral(&product)
}

/// `S_(-j)` for the ground state's plus channel, `(1/3) <G_K|G_(j-K)>` with `K = j/2`.
pub fn greens_negative_order(j: usize) -> Result<f64> {
    if j == 0 {
        return Err(Error::InvalidOrder(0));
    }
    let fine = GreenGrid::default();
    let coarse = GreenGrid { points: (fine.points - 1) / 2 + 1, ..fine };
    let k = j / 2;
    let a = greens_pair(k, j - k, &fine) / 3.0;
    let b = greens_pair(k, j - k, &coarse) / 3.0;
    // Fourth-order rule: halving the step should shrink the error sixteenfold.
    if (a - b).abs() > 1e-7 * a.abs() {
        return Err(Error::QuadratureNotConverged(format!("S_-{j}: {a} vs {b} on the coarse grid")));
    }
    Ok(a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn wronskian_is_inverse_square() {
        for r in [1e-3, 0.1, 0.5, 0.999, 1.0, 1.001, 3.0, 10.0, 30.0] {
            let w = unreduced_wronskian(r);
            assert!((w * r * r + 1.0).abs() < 1e-12, "rho={r}: {}", w * r * r);
        }
    }

    #[test]
    fn regular_solution_is_continuous_at_branch() {
        let a = regular_solution(1.0 - 1e-12);
        let b = regular_solution(1.0 + 1e-12);
        assert!((a - b).abs() < 1e-10);
        assert!((regular_solution(1e-4) / (2.0 / 3.0 * 1e-8) - 1.0).abs() < 1e-3);
    }

    #[test]
    fn first_two_orders() {
        assert!((greens_negative_order(1).unwrap() - 9.0 / 8.0).abs() < 1e-8);
        assert!((greens_negative_order(2).unwrap() - 43.0 / 32.0).abs() < 1e-8);
    }
}
