//! Perron roots of nonnegative matrices, with an exact cross-check through the
//! characteristic polynomial for small matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::algebraic::RatPoly;

const MAX_ITERS: usize = 200_000;

/// Perron root and right/left Perron vectors of an irreducible nonnegative
/// matrix, by power iteration on M + I with Collatz–Wielandt bounds.
#[derive(Debug, Clone)]
pub struct Perron {
    pub rho: f64,
    pub right: Vec<f64>,
    pub left: Vec<f64>,
}

fn power(m: &[Vec<f64>], transpose: bool) -> (f64, Vec<f64>) {
    let n = m.len();
    let mut x = vec![1.0 / n as f64; n];
    let mut bounds = (0.0, f64::INFINITY);
    for _ in 0..MAX_ITERS {
        let mut y = x.clone();
        for i in 0..n {
            for j in 0..n {
                let a = if transpose { m[j][i] } else { m[i][j] };
                y[i] += a * x[j];
            }
        }
        let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
        for i in 0..n {
            let r = y[i] / x[i];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        let s: f64 = y.iter().sum();
        x = y.into_iter().map(|v| v / s).collect();
        bounds = (lo, hi);
        if hi - lo <= 1e-14 * hi {
            break;
        }
    }
    ((bounds.0 + bounds.1) / 2.0 - 1.0, x)
}

pub fn perron(m: &[Vec<f64>]) -> Perron {
    if m.is_empty() {
        return Perron { rho: 0.0, right: Vec::new(), left: Vec::new() };
    }
    let (rho, right) = power(m, false);
    let (_, left) = power(m, true);
    Perron { rho, right, left }
}

/// Characteristic polynomial det(λI − M) by Faddeev–LeVerrier, exact.
pub fn char_poly(m: &[Vec<BigRational>]) -> RatPoly {
    let n = m.len();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    coeffs[n] = BigRational::from_integer(1.into());
    // M_k = M (M_{k−1} + c_{n−k+1} I), c_{n−k} = −tr(M_k)/k
    let mut mk: Vec<Vec<BigRational>> = vec![vec![BigRational::zero(); n]; n];
    for k in 1..=n {
        let mut prev = mk.clone();
        for (i, row) in prev.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        mk = (0..n)
            .map(|i| (0..n).map(|j| (0..n).fold(BigRational::zero(), |acc, l| acc + &m[i][l] * &prev[l][j])).collect())
            .collect();
        let tr = (0..n).fold(BigRational::zero(), |acc, i| acc + &mk[i][i]);
        coeffs[n - k] = -tr / BigRational::from_integer(BigInt::from(k));
    }
    RatPoly::new(coeffs)
}

pub fn to_rational_matrix(m: &[Vec<u64>]) -> Vec<Vec<BigRational>> {
    m.iter().map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect()).collect()
}

/// Largest real root of the characteristic polynomial, to within `2^-60`.
pub fn exact_perron_root(m: &[Vec<u64>]) -> Option<f64> {
    let p = char_poly(&to_rational_matrix(m));
    let tol = BigRational::new(1.into(), BigInt::from(1u64 << 60));
    let (lo, hi) = p.largest_real_root(&tol)?;
    ((lo + hi) / BigRational::from_integer(2.into())).to_f64()
}

pub fn to_f64_matrix(m: &[Vec<u64>]) -> Vec<Vec<f64>> {
    m.iter().map(|r| r.iter().map(|&v| v as f64).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn companion_cubic() {
        // cycle V0→V1→V2→V0 plus V2→V1: λ³ − λ − 1
        let m = vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, 0]];
        let p = char_poly(&to_rational_matrix(&m));
        let ints: Vec<i64> = p.coeffs().iter().map(|c| c.to_integer().try_into().unwrap()).collect();
        assert_eq!(ints, vec![-1, -1, 0, 1]);
        let rho = perron(&to_f64_matrix(&m)).rho;
        assert!((rho - 1.324_717_957_244_746).abs() < 1e-12);
        assert!((exact_perron_root(&m).unwrap() - rho).abs() < 1e-12);
    }

    #[test]
    fn periodic_matrix_converges() {
        let m = vec![vec![0.0, 1.0], vec![1.0, 0.0]];
        let p = perron(&m);
        assert!((p.rho - 1.0).abs() < 1e-12);
        assert!((p.right[0] - 0.5).abs() < 1e-12);
    }
}
