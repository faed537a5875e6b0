//! Test-only oracles and random generators, independent of the Jacobi solver.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use unruh_coherence::{ComplexMatrix, DensityMatrix};

pub const SINGLET_EXPRESSION: fn() -> f64 = || (0.125 - 0.625 * 0.625f64.log2()).sqrt();

pub fn complex_gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn random_complex_matrix<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    let entries = (0..n * n).map(|_| complex_gaussian(rng)).collect();
    ComplexMatrix::from_vec(n, entries).unwrap()
}

/// Hermitian with real diagonal in [-1, 1] and off-diagonals in the unit box.
pub fn random_hermitian<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(n);
    for i in 0..n {
        m[(i, i)] = Complex64::new(rng.random_range(-1.0..1.0), 0.0);
        for j in i + 1..n {
            let z = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    m
}

/// Gram–Schmidt on the columns of a Gaussian matrix.
pub fn random_unitary<R: Rng>(rng: &mut R, n: usize) -> ComplexMatrix {
    let a = random_complex_matrix(rng, n);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v: Vec<Complex64> = (0..n).map(|i| a[(i, j)]).collect();
        for u in &cols {
            let proj: Complex64 = u.iter().zip(&v).map(|(ui, vi)| ui.conj() * vi).sum();
            for (vi, ui) in v.iter_mut().zip(u) {
                *vi -= proj * ui;
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|z| *z /= norm);
        cols.push(v);
    }
    let mut u = ComplexMatrix::zeros(n);
    for (j, col) in cols.iter().enumerate() {
        for (i, z) in col.iter().enumerate() {
            u[(i, j)] = *z;
        }
    }
    u
}

pub fn random_density<R: Rng>(rng: &mut R, n: usize) -> DensityMatrix {
    DensityMatrix::from_gram(&random_complex_matrix(rng, n)).unwrap()
}

/// Two-qubit SWAP permutation.
pub fn swap_gate() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 0.0, 1.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
    ])
    .unwrap()
}

/// Coefficients `c_0..c_n` of `det(xI − A)` by Faddeev–LeVerrier (`c_n = 1`).
pub fn characteristic_polynomial(a: &ComplexMatrix) -> Vec<f64> {
    let n = a.dim();
    let mut coeffs = vec![0.0; n + 1];
    coeffs[n] = 1.0;
    let mut m = ComplexMatrix::zeros(n);
    for k in 1..=n {
        let mut next = a.matmul(&m).unwrap();
        for i in 0..n {
            next[(i, i)] += coeffs[n - k + 1];
        }
        let am = a.matmul(&next).unwrap();
        coeffs[n - k] = -am.trace().re / k as f64;
        m = next;
    }
    coeffs
}

/// `det(A − xI)` by Gaussian elimination with partial pivoting.
pub fn shifted_determinant(a: &ComplexMatrix, x: f64) -> f64 {
    let n = a.dim();
    let mut m: Vec<Vec<Complex64>> = (0..n)
        .map(|i| (0..n).map(|j| a[(i, j)]).collect())
        .collect();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] -= x;
    }
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| m[i][col].norm().total_cmp(&m[j][col].norm()))
            .unwrap();
        if m[pivot][col].norm() == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col];
        det *= p;
        let (upper, lower) = m.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        for row in lower.iter_mut() {
            let f = row[col] / p;
            for (x, v) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= f * v;
            }
        }
    }
    det.re
}

/// Durand–Kerner iteration on a real monic polynomial; returns real parts.
fn polynomial_roots(coeffs: &[f64]) -> Vec<f64> {
    let n = coeffs.len() - 1;
    let eval = |z: Complex64| {
        coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
    };
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..500 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    let mut re: Vec<f64> = roots.iter().map(|z| z.re).collect();
    re.sort_by(f64::total_cmp);
    re
}

/// Eigenvalues of a Hermitian matrix as roots of its characteristic
/// polynomial, each polished by bisection on `det(A − xI)`.
pub fn charpoly_eigenvalues(a: &ComplexMatrix) -> Vec<f64> {
    let approx = polynomial_roots(&characteristic_polynomial(a));
    approx
        .iter()
        .map(|&r| {
            let mut width = 1e-9;
            while width < 1e-3 {
                let (lo, hi) = (r - width, r + width);
                let (flo, fhi) = (shifted_determinant(a, lo), shifted_determinant(a, hi));
                if flo == 0.0 {
                    return lo;
                }
                if fhi == 0.0 {
                    return hi;
                }
                if flo.signum() != fhi.signum() {
                    return bisect(a, lo, hi, flo);
                }
                width *= 10.0;
            }
            r
        })
        .collect()
}

fn bisect(a: &ComplexMatrix, mut lo: f64, mut hi: f64, mut flo: f64) -> f64 {
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = shifted_determinant(a, mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Explicit model matrix built entry by entry.
pub fn model_matrix(alpha: f64, beta: f64, gamma: f64) -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        &[gamma, 0.0, 0.0, 0.0],
        &[0.0, alpha, alpha, 0.0],
        &[0.0, alpha, alpha, 0.0],
        &[0.0, 0.0, 0.0, beta],
    ])
    .unwrap()
}

pub fn plain_entropy(values: &[f64]) -> f64 {
    values
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}
