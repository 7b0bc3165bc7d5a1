//! Matrix exponential `exp(tM)` for small complex matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;

const TAYLOR_TERMS: usize = 40;

fn norm1(m: &DMatrix<Complex64>) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

fn is_diagonal(m: &DMatrix<Complex64>) -> bool {
    m.iter().enumerate().all(|(k, z)| {
        let (i, j) = (k % m.nrows(), k / m.nrows());
        i == j || *z == Complex64::new(0.0, 0.0)
    })
}

fn is_zero(m: &DMatrix<Complex64>) -> bool {
    m.iter().all(|z| *z == Complex64::new(0.0, 0.0))
}

/// `exp(tM)`.
///
/// Diagonal input uses the entrywise closed form. When some power
/// `(tM)^k`, `k ≤ dim`, is exactly zero the series is summed to that point
/// and is exact up to rounding of the products. Otherwise the result comes
/// from scaling and squaring with a truncated Taylor series.
pub fn matrix_exponential(m: &DMatrix<Complex64>, t: Complex64) -> DMatrix<Complex64> {
    assert!(m.is_square(), "matrix exponential needs a square matrix");
    let n = m.nrows();
    let a = m * t;
    if is_diagonal(&a) {
        return DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                a[(i, i)].exp()
            } else {
                Complex64::new(0.0, 0.0)
            }
        });
    }

    let mut sum = DMatrix::<Complex64>::identity(n, n);
    let mut term = sum.clone();
    for k in 1..=n {
        term = &term * &a / Complex64::new(k as f64, 0.0);
        if is_zero(&term) {
            return sum;
        }
        sum += &term;
    }

    let norm = norm1(&a);
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as i32
    } else {
        0
    };
    let scaled = &a / Complex64::new(2f64.powi(squarings), 0.0);
    let mut result = DMatrix::<Complex64>::identity(n, n);
    let mut term = result.clone();
    for k in 1..=TAYLOR_TERMS {
        term = &term * &scaled / Complex64::new(k as f64, 0.0);
        result += &term;
        if norm1(&term) <= f64::EPSILON * 1e-3 * norm1(&result) {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}
