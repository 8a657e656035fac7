use num_traits::Zero;

use super::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveFailure {
    Inconsistent,
    Underdetermined(usize),
}

/// Solves `A x = b` exactly by Gauss-Jordan elimination. `A` may be rectangular.
pub fn solve(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Result<Vec<Rational>, SolveFailure> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        b.swap(r, p);
        let inv = a[r][c].recip();
        for k in c..cols {
            a[r][k] = &a[r][k] * &inv;
        }
        b[r] = &b[r] * &inv;
        for i in 0..rows {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for k in c..cols {
                let t = &f * &a[r][k];
                a[i][k] -= t;
            }
            let t = &f * &b[r];
            b[i] -= t;
        }
        pivot_cols.push(c);
        r += 1;
    }
    if b[r..].iter().any(|v| !v.is_zero()) {
        return Err(SolveFailure::Inconsistent);
    }
    if pivot_cols.len() < cols {
        return Err(SolveFailure::Underdetermined(cols - pivot_cols.len()));
    }
    let mut x = vec![Rational::zero(); cols];
    for (row, &c) in pivot_cols.iter().enumerate() {
        x[c] = b[row].clone();
    }
    Ok(x)
}
