use std::sync::Arc;

use super::Potential;
use crate::error::{Error, Result};

/// Innermost grid point; every kind has `u ~ rho^(l+1)` well before this.
const RHO_MIN: f64 = 1e-6;
/// Crossover radius of the `x = ln rho + rho / RHO_C` map.
const RHO_C: f64 = 1.0;
/// Decay exponent required past the outer turning point (`e^-36 ~ 2e-16`).
const DECAY_EXPONENT: f64 = 36.0;
const DEFAULT_STEP: f64 = 0.004;

/// Uniform grid in `x = ln rho + rho/RHO_C`, with the Jacobian data Numerov needs.
#[derive(Clone, Debug)]
pub struct XGrid {
    pub step: f64,
    pub rho: Vec<f64>,
    /// `drho/dx`
    pub d1: Vec<f64>,
    d2: Vec<f64>,
    d3: Vec<f64>,
}

impl XGrid {
    pub fn new(rho_max: f64, step: f64) -> XGrid {
        let x_of = |r: f64| r.ln() + r / RHO_C;
        let (x0, x1) = (x_of(RHO_MIN), x_of(rho_max));
        let mut n = ((x1 - x0) / step).ceil() as usize + 1;
        if n.is_multiple_of(2) {
            n += 1;
        }
        let mut rho = Vec::with_capacity(n);
        let mut guess = RHO_MIN;
        for i in 0..n {
            let x = x0 + step * i as f64;
            // Newton on ln r + r/c = x, warm-started from the previous node.
            let mut r = guess;
            for _ in 0..50 {
                let f = r.ln() + r / RHO_C - x;
                let dr = f / (1.0 / r + 1.0 / RHO_C);
                r = (r - dr).max(r * 0.5);
                if dr.abs() < 1e-15 * r {
                    break;
                }
            }
            rho.push(r);
            guess = r;
        }
        let d1: Vec<f64> = rho.iter().map(|&r| r * RHO_C / (r + RHO_C)).collect();
        let d2: Vec<f64> = rho.iter().zip(&d1).map(|(&r, &p)| p * RHO_C * RHO_C / ((r + RHO_C) * (r + RHO_C))).collect();
        let d3: Vec<f64> = rho
            .iter()
            .zip(d1.iter().zip(&d2))
            .map(|(&r, (&p1, &p2))| {
                let s = RHO_C * RHO_C / ((r + RHO_C) * (r + RHO_C));
                p2 * s - 2.0 * p1 * p1 * RHO_C * RHO_C / (r + RHO_C).powi(3)
            })
            .collect();
        XGrid { step, rho, d1, d2, d3 }
    }

    pub fn len(&self) -> usize {
        self.rho.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rho.is_empty()
    }

    pub fn rho_max(&self) -> f64 {
        *self.rho.last().unwrap()
    }

    /// `int f drho` by Simpson's rule in `x`.
    pub fn integrate(&self, f: &[f64]) -> f64 {
        let n = self.len();
        let g = |i: usize| f[i] * self.d1[i];
        let mut s = g(0) + g(n - 1);
        for i in 1..n - 1 {
            s += if i % 2 == 1 { 4.0 * g(i) } else { 2.0 * g(i) };
        }
        s * self.step / 3.0
    }

    /// `d f / d rho` by five-point central differences in `x`.
    pub fn derivative(&self, f: &[f64]) -> Vec<f64> {
        let n = self.len();
        let h = self.step;
        (0..n)
            .map(|i| {
                let dx = if i >= 2 && i + 2 < n {
                    (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h)
                } else if i < 2 {
                    (-25.0 * f[i] + 48.0 * f[i + 1] - 36.0 * f[i + 2] + 16.0 * f[i + 3] - 3.0 * f[i + 4]) / (12.0 * h)
                } else {
                    (25.0 * f[i] - 48.0 * f[i - 1] + 36.0 * f[i - 2] - 16.0 * f[i - 3] + 3.0 * f[i - 4]) / (12.0 * h)
                };
                dx / self.d1[i]
            })
            .collect()
    }
}

/// Numerically solved reduced radial eigenfunction.
#[derive(Clone, Debug)]
pub struct GridFunction {
    pub grid: Arc<XGrid>,
    pub values: Vec<f64>,
    pub l: u32,
    /// Scaled energy `eps_m`; `k_m^2 = -2 eps_m`.
    pub energy: f64,
    pub nodes: u32,
    pub potential: Potential,
}

impl GridFunction {
    pub fn rho(&self) -> &[f64] {
        &self.grid.rho
    }

    pub fn ksq(&self) -> f64 {
        -2.0 * self.energy
    }

    /// `C_l = lim u / rho^(l+1)`, linearly extrapolated from the first two points.
    pub fn origin_coefficient(&self) -> f64 {
        let r = &self.grid.rho;
        let e = self.l as i32 + 1;
        let (f0, f1) = (self.values[0] / r[0].powi(e), self.values[1] / r[1].powi(e));
        (r[1] * f0 - r[0] * f1) / (r[1] - r[0])
    }

    /// Same function shape on this grid with new values (used for ladder rungs).
    pub fn with_values(&self, values: Vec<f64>) -> GridFunction {
        GridFunction { values, ..self.clone() }
    }

    pub fn derivative(&self) -> Vec<f64> {
        self.grid.derivative(&self.values)
    }
}

/// `int u^2 w drho` on the state's grid.
pub fn grid_expectation<F: Fn(f64) -> f64>(state: &GridFunction, weight: F) -> f64 {
    let f: Vec<f64> = state.values.iter().zip(state.rho()).map(|(u, &r)| u * u * weight(r)).collect();
    state.grid.integrate(&f)
}

/// `int f g drho` for two functions on the same grid.
pub fn grid_overlap(f: &GridFunction, g: &GridFunction) -> f64 {
    debug_assert!(Arc::ptr_eq(&f.grid, &g.grid) || f.grid.len() == g.grid.len());
    let p: Vec<f64> = f.values.iter().zip(&g.values).map(|(a, b)| a * b).collect();
    f.grid.integrate(&p)
}

struct Shooter<'a> {
    grid: &'a XGrid,
    l: u32,
    /// `G(x) = a - 2 eps b` in the Numerov equation `w'' = G w`.
    a: Vec<f64>,
    b: Vec<f64>,
    start: [f64; 2],
}

impl<'a> Shooter<'a> {
    fn new(grid: &'a XGrid, v0: &Potential, l: u32) -> Shooter<'a> {
        let lam = f64::from(l * (l + 1));
        let mut a = Vec::with_capacity(grid.len());
        let mut b = Vec::with_capacity(grid.len());
        for i in 0..grid.len() {
            let (r, p1, p2, p3) = (grid.rho[i], grid.d1[i], grid.d2[i], grid.d3[i]);
            let schwarz = 0.75 * (p2 / p1).powi(2) - 0.5 * p3 / p1;
            a.push(p1 * p1 * (lam / (r * r) + 2.0 * v0.v0(r)) + schwarz);
            b.push(p1 * p1);
        }
        // u = rho^(l+1) (1 + c rho^(g+2)) absorbs the leading 2 v0 term at the origin.
        let start_u = |r: f64| {
            let corr = match v0.origin_power() {
                Some((bb, g)) if g < 0.0 => {
                    let s = g + 2.0;
                    2.0 * bb / (s * (s + 2.0 * f64::from(l) + 1.0)) * r.powf(s)
                }
                _ => 0.0,
            };
            r.powi(l as i32 + 1) * (1.0 + corr)
        };
        let start = [
            start_u(grid.rho[0]) / grid.d1[0].sqrt(),
            start_u(grid.rho[1]) / grid.d1[1].sqrt(),
        ];
        Shooter { grid, l, a, b, start }
    }

    fn g(&self, i: usize, eps: f64) -> f64 {
        self.a[i] - 2.0 * eps * self.b[i]
    }

    /// Outward Numerov to index `stop`; returns values (rescaled against overflow) and node count.
    fn outward(&self, eps: f64, stop: usize) -> (Vec<f64>, u32) {
        let h12 = self.grid.step * self.grid.step / 12.0;
        let mut w = Vec::with_capacity(stop + 1);
        w.extend_from_slice(&self.start);
        let mut nodes = 0;
        for i in 1..stop {
            let next = (2.0 * w[i] * (1.0 + 5.0 * h12 * self.g(i, eps))
                - w[i - 1] * (1.0 - h12 * self.g(i - 1, eps)))
                / (1.0 - h12 * self.g(i + 1, eps));
            if next * w[i] < 0.0 || (w[i] == 0.0 && next * w[i - 1] < 0.0) {
                nodes += 1;
            }
            w.push(next);
            if next.abs() > 1e200 {
                for v in w.iter_mut() {
                    *v *= 1e-200;
                }
            }
        }
        (w, nodes)
    }

    /// Inward Numerov from the outer edge (`w = 0`) down to index `stop`.
    fn inward(&self, eps: f64, stop: usize) -> Vec<f64> {
        let n = self.grid.len();
        let h12 = self.grid.step * self.grid.step / 12.0;
        let mut w = vec![0.0; n];
        w[n - 1] = 0.0;
        w[n - 2] = 1e-200;
        for i in (stop..n - 2).rev() {
            let next = (2.0 * w[i + 1] * (1.0 + 5.0 * h12 * self.g(i + 1, eps))
                - w[i + 2] * (1.0 - h12 * self.g(i + 2, eps)))
                / (1.0 - h12 * self.g(i, eps));
            w[i] = next;
            if next.abs() > 1e200 {
                for v in w[i..].iter_mut() {
                    *v *= 1e-200;
                }
            }
        }
        w
    }

    fn nodes(&self, eps: f64) -> u32 {
        self.outward(eps, self.grid.len() - 1).1
    }

    /// Outermost classically allowed index at energy `eps`.
    fn turning_index(&self, eps: f64) -> Option<usize> {
        (0..self.grid.len()).rev().find(|&i| self.g(i, eps) < 0.0)
    }

    /// Log-derivative mismatch at the matching index.
    fn mismatch(&self, eps: f64, m: usize) -> f64 {
        let (out, _) = self.outward(eps, m + 1);
        let inw = self.inward(eps, m - 1);
        let d_out = (out[m + 1] - out[m - 1]) / out[m];
        let d_in = (inw[m + 1] - inw[m - 1]) / inw[m];
        d_out - d_in
    }

    fn assemble(&self, eps: f64, m: usize) -> Vec<f64> {
        let (out, _) = self.outward(eps, m);
        let inw = self.inward(eps, m);
        let scale = out[m] / inw[m];
        let mut w: Vec<f64> = out[..m].to_vec();
        w.extend(inw[m..].iter().map(|v| v * scale));
        let u: Vec<f64> = w.iter().zip(&self.grid.d1).map(|(w, p)| w * p.sqrt()).collect();
        let norm = self.grid.integrate(&u.iter().map(|v| v * v).collect::<Vec<_>>()).sqrt();
        let sign = if u[1] < 0.0 { -1.0 } else { 1.0 };
        u.into_iter().map(|v| sign * v / norm).collect()
    }

    fn min_energy(&self) -> f64 {
        (0..self.grid.len())
            .map(|i| self.a[i] / (2.0 * self.b[i]))
            .fold(f64::INFINITY, f64::min)
    }
}

/// Energy bracket `[lo, hi]` with `nodes(lo) <= target < nodes(hi)`, bisected to round-off.
fn bisect(sh: &Shooter<'_>, target: u32, v0: &Potential) -> Result<(f64, f64)> {
    let mut lo = sh.min_energy();
    let mut hi = if v0.is_confining() { lo.abs().max(1.0) } else { -1e-12 };
    if sh.nodes(lo) > target {
        return Err(Error::NotConverged("lower energy bound already has too many nodes".into()));
    }
    let mut grow = 0;
    while sh.nodes(hi) <= target {
        if !v0.is_confining() || grow > 200 {
            return Err(Error::NoBoundState(format!("{v0}, l={}, nodes={target}", sh.l)));
        }
        lo = hi;
        hi = hi + (hi - sh.min_energy()).abs().max(1.0);
        grow += 1;
    }
    for _ in 0..300 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if sh.nodes(mid) > target {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo <= 1e-15 * hi.abs().max(1e-3) {
            break;
        }
    }
    Ok((lo, hi))
}

fn solve_on(grid: Arc<XGrid>, v0: &Potential, l: u32, nodes: u32) -> Result<GridFunction> {
    let sh = Shooter::new(&grid, v0, l);
    let (lo, hi) = bisect(&sh, nodes, v0)?;
    let mut eps = 0.5 * (lo + hi);
    let m = sh
        .turning_index(eps)
        .ok_or_else(|| Error::NotConverged("no classically allowed region".into()))?
        .clamp(4, grid.len() - 5);
    // Secant polish on the matching condition, kept only while it stays in the bracket.
    let (mut e0, mut e1) = (lo, hi);
    let (mut f0, mut f1) = (sh.mismatch(e0, m), sh.mismatch(e1, m));
    for _ in 0..8 {
        if f1 == f0 || !f0.is_finite() || !f1.is_finite() {
            break;
        }
        let e2 = e1 - f1 * (e1 - e0) / (f1 - f0);
        if !(e2 >= lo && e2 <= hi) {
            break;
        }
        eps = e2;
        if (e2 - e1).abs() <= 1e-16 * e2.abs().max(1e-3) {
            break;
        }
        (e0, f0, e1) = (e1, f1, e2);
        f1 = sh.mismatch(e1, m);
    }
    let values = sh.assemble(eps, m);
    Ok(GridFunction { grid: grid.clone(), values, l, energy: eps, nodes, potential: v0.clone() })
}

/// WKB decay exponent accumulated between the outer turning point and the grid edge.
fn decay_exponent(state: &GridFunction) -> f64 {
    let lam = f64::from(state.l * (state.l + 1));
    let g: Vec<f64> = state
        .rho()
        .iter()
        .map(|&r| {
            let q = lam / (r * r) + 2.0 * (state.potential.v0(r) - state.energy);
            if q > 0.0 && r > 1.0 { q.sqrt() } else { 0.0 }
        })
        .collect();
    // Only the monotone tail past the last turning point counts.
    let turn = (0..g.len()).rev().find(|&i| g[i] == 0.0).unwrap_or(0);
    let mut tail = vec![0.0; g.len()];
    tail[turn..].copy_from_slice(&g[turn..]);
    state.grid.integrate(&tail)
}

fn initial_rho_max(v0: &Potential, l: u32, nodes: u32) -> f64 {
    match v0 {
        Potential::Coulomb => {
            let n = f64::from(nodes + l + 1);
            2.0 * n * n + 40.0 * n
        }
        _ => 12.0,
    }
}

/// Grid policy shared by single solves and spectra: grow until the decay exponent is met.
pub fn solve_bound_with_step(v0: &Potential, l: u32, nodes: u32, step: f64) -> Result<GridFunction> {
    let mut rho_max = initial_rho_max(v0, l, nodes);
    for _ in 0..12 {
        let grid = Arc::new(XGrid::new(rho_max, step));
        match solve_on(grid, v0, l, nodes) {
            Ok(state) => {
                let d = decay_exponent(&state);
                if d >= DECAY_EXPONENT {
                    return Ok(state);
                }
                rho_max *= (DECAY_EXPONENT / d.max(1.0)).clamp(1.3, 4.0);
            }
            Err(Error::NoBoundState(_)) if !v0.is_confining() && rho_max < 1e5 => rho_max *= 2.0,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NotConverged(format!("grid did not reach decay exponent {DECAY_EXPONENT}")))
}

/// Bound state of `v0` with `nodes` interior nodes; energy Richardson-corrected over two steps.
pub fn solve_bound(v0: &Potential, l: u32, nodes: u32) -> Result<GridFunction> {
    solve_bound_refined(v0, l, nodes, DEFAULT_STEP)
}

pub fn solve_bound_refined(v0: &Potential, l: u32, nodes: u32, step: f64) -> Result<GridFunction> {
    let fine = solve_bound_with_step(v0, l, nodes, step)?;
    let coarse_grid = Arc::new(XGrid::new(fine.grid.rho_max(), 2.0 * step));
    let coarse = solve_on(coarse_grid, v0, l, nodes)?;
    let energy = fine.energy + (fine.energy - coarse.energy) / 15.0;
    Ok(GridFunction { energy, ..fine })
}

/// Several states of one `l` on a single shared grid (for spectral sums).
pub fn solve_spectrum(v0: &Potential, l: u32, count: u32, grid: Arc<XGrid>) -> Result<Vec<GridFunction>> {
    (0..count).map(|k| solve_on(grid.clone(), v0, l, k)).collect()
}

/// Grid wide enough for the `nodes`-th state of `l`.
pub fn grid_for(v0: &Potential, l: u32, nodes: u32, step: f64) -> Result<Arc<XGrid>> {
    Ok(solve_bound_with_step(v0, l, nodes, step)?.grid)
}

pub fn default_step() -> f64 {
    DEFAULT_STEP
}
