//! Numerical derivatives at a point by central differences with
//! Richardson extrapolation.

use crate::combinat::binomial_u64;
use crate::error::Result;

/// `δ^k f(0) / h^k` with `δ^k f(0) = Σ_j (-1)^j binom(k, j) f((k/2 - j) h)`;
/// the error is even in `h`.
pub fn central_difference(f: &mut impl FnMut(f64) -> Result<f64>, k: u32, h: f64) -> Result<f64> {
    let mut acc = 0.0;
    for j in 0..=k {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let x = (k as f64 / 2.0 - j as f64) * h;
        acc += sign * binomial_u64(k as u64, j as u64) as f64 * f(x)?;
    }
    Ok(acc / h.powi(k as i32))
}

/// `f^{(k)}(0)` from central differences at `h0, h0/2, ...` (`levels` of
/// them), extrapolated in powers of `h²`. Returns the estimate and the size
/// of the last correction.
pub fn richardson_derivative(
    mut f: impl FnMut(f64) -> Result<f64>,
    k: u32,
    h0: f64,
    levels: usize,
) -> Result<(f64, f64)> {
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(levels);
    let mut h = h0;
    for i in 0..levels {
        let mut row = vec![central_difference(&mut f, k, h)?];
        for j in 1..=i {
            let factor = 4f64.powi(j as i32);
            let v = row[j - 1] + (row[j - 1] - rows[i - 1][j - 1]) / (factor - 1.0);
            row.push(v);
        }
        rows.push(row);
        h /= 2.0;
    }
    let last = rows.last().expect("at least one level");
    let best = *last.last().unwrap();
    let correction = if last.len() > 1 { (best - last[last.len() - 2]).abs() } else { f64::INFINITY };
    Ok((best, correction))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_derivatives() {
        for k in 1..=4 {
            let (d, _) = richardson_derivative(|x: f64| Ok((2.0 * x).exp()), k, 0.4, 6).unwrap();
            let want = 2f64.powi(k as i32);
            assert!((d - want).abs() < 1e-8 * want, "k={k}: {d}");
        }
    }
}
