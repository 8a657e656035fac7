use rayon::prelude::*;

use crate::error::{Error, Result};

// Gauss-Kronrod 7/15 on [-1, 1]: Kronrod abscissae (descending) with both weight sets.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
// Gauss weights for the odd-indexed Kronrod nodes 1, 3, 5 and the centre.
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

/// `(K15, |K15 - G7|)` on `[a, b]`.
pub fn gauss_kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut k = WGK[7] * fc;
    let mut g = WG[3] * fc;
    for i in 0..7 {
        let x = h * XGK[i];
        let s = f(c - x) + f(c + x);
        k += WGK[i] * s;
        if i % 2 == 1 {
            g += WG[i / 2] * s;
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Deterministic pairwise summation, independent of thread scheduling.
pub fn pairwise_sum(v: &[f64]) -> f64 {
    match v.len() {
        0 => 0.0,
        1 => v[0],
        n if n <= 8 => v.iter().sum(),
        n => pairwise_sum(&v[..n / 2]) + pairwise_sum(&v[n / 2..]),
    }
}

/// Global adaptive bisection: always split the interval with the largest error estimate.
fn adapt<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> Result<(f64, f64)> {
    const MAX_INTERVALS: usize = 4000;
    let mut parts = vec![(a, b, gauss_kronrod(f, a, b))];
    loop {
        let err: f64 = parts.iter().map(|p| p.2 .1).sum();
        let worst = (0..parts.len()).max_by(|&i, &j| parts[i].2 .1.total_cmp(&parts[j].2 .1)).unwrap();
        let value: f64 = parts.iter().map(|p| p.2 .0).sum();
        if !value.is_finite() {
            return Err(Error::QuadratureNotConverged(format!("non-finite integrand on [{a}, {b}]")));
        }
        if err <= tol || err <= 1e-14 * value.abs() {
            parts.sort_by(|p, q| p.0.total_cmp(&q.0));
            let values: Vec<f64> = parts.iter().map(|p| p.2 .0).collect();
            return Ok((pairwise_sum(&values), err));
        }
        let (lo, hi, _) = parts[worst];
        let mid = 0.5 * (lo + hi);
        if parts.len() >= MAX_INTERVALS || mid <= lo || mid >= hi {
            return Err(Error::QuadratureNotConverged(format!("error {err:e} on [{a}, {b}] after {} intervals", parts.len())));
        }
        parts[worst] = (lo, mid, gauss_kronrod(f, lo, mid));
        parts.push((mid, hi, gauss_kronrod(f, mid, hi)));
    }
}

/// Adaptive G7K15 over `panels` equal starting panels, refined in parallel; returns `(value, error)`.
pub fn integrate<F>(f: &F, a: f64, b: f64, panels: usize, abs_tol: f64) -> Result<(f64, f64)>
where
    F: Fn(f64) -> f64 + Sync,
{
    let h = (b - a) / panels as f64;
    let tol = abs_tol / panels as f64;
    let parts: Vec<(f64, f64)> = (0..panels)
        .into_par_iter()
        .map(|i| adapt(f, a + h * i as f64, a + h * (i + 1) as f64, tol))
        .collect::<Result<_>>()?;
    let values: Vec<f64> = parts.iter().map(|p| p.0).collect();
    let errors: Vec<f64> = parts.iter().map(|p| p.1).collect();
    Ok((pairwise_sum(&values), pairwise_sum(&errors)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_is_exact() {
        let (v, _) = gauss_kronrod(&|x: f64| x.powi(20), 0.0, 1.0);
        assert!((v - 1.0 / 21.0).abs() < 1e-15);
    }

    #[test]
    fn adaptive_handles_endpoint_singularity() {
        let (v, e) = integrate(&|x: f64| x.sqrt().recip(), 0.0, 1.0, 4, 1e-10).unwrap();
        assert!((v - 2.0).abs() < 1e-9, "{v} {e}");
    }

    #[test]
    fn pairwise_matches_naive_on_small_input() {
        let v: Vec<f64> = (1..=100).map(f64::from).collect();
        assert_eq!(pairwise_sum(&v), 5050.0);
    }
}
