//! Dense complex linear algebra shared by the Fock-space and 5×5 layers.
//!
//! Operators in this crate are stored densely but are very sparse (ladder
//! operators and their quadratic products have at most a handful of entries
//! per column), so products skip zero entries of the right factor.

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use num_traits::{One, Zero};

/// Largest absolute entry; the residual norm used throughout the crate.
pub fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// Maximum absolute column sum.
pub fn one_norm(m: &DMatrix<C64>) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Matrix product that skips structural zeros of `b`.
pub fn matmul(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    assert_eq!(a.ncols(), b.nrows(), "matmul: inner dimensions differ");
    let mut c = DMatrix::zeros(a.nrows(), b.ncols());
    for j in 0..b.ncols() {
        for k in 0..b.nrows() {
            let bkj = b[(k, j)];
            if bkj.is_zero() {
                continue;
            }
            c.column_mut(j).axpy(bkj, &a.column(k), C64::one());
        }
    }
    c
}

/// `ab - ba`.
pub fn commutator(a: &DMatrix<C64>, b: &DMatrix<C64>) -> DMatrix<C64> {
    matmul(a, b) - matmul(b, a)
}

const TAYLOR_DEGREE: usize = 18;
const SCALED_NORM: f64 = 0.5;

/// Matrix exponential by scaling and squaring with a truncated Taylor series.
///
/// The argument is scaled by `2^-s` until its 1-norm is at most 1/2; the
/// degree-18 remainder is then below `1e-20` relative to the result before
/// the `s` squarings.
pub fn expm(a: &DMatrix<C64>) -> DMatrix<C64> {
    assert!(a.is_square(), "expm: matrix must be square");
    let n = a.nrows();
    let norm = one_norm(a);
    let squarings = if norm > SCALED_NORM {
        (norm / SCALED_NORM).log2().ceil() as i32
    } else {
        0
    };
    let scaled = a * C64::from(2f64.powi(-squarings));

    let mut result = DMatrix::<C64>::identity(n, n);
    let mut term = DMatrix::<C64>::identity(n, n);
    for k in 1..=TAYLOR_DEGREE {
        term = matmul(&term, &scaled) / C64::from(k as f64);
        let size = max_abs(&term);
        result += &term;
        if size == 0.0 || size < f64::EPSILON * 1e-4 * max_abs(&result) {
            break;
        }
    }
    for _ in 0..squarings {
        result = matmul(&result, &result);
    }
    result
}

/// Least-squares projection of a matrix onto the span of a set of matrices.
#[derive(Debug, Clone)]
pub struct Projection {
    /// Expansion coefficients, one per basis element.
    pub coefficients: Vec<C64>,
    /// Max-abs entry of `target - Σ c_a B_a`.
    pub residual: f64,
    /// Numerical rank of the basis.
    pub rank: usize,
}

const RANK_TOLERANCE: f64 = 1e-10;

/// Projects `target` onto `span(basis)` through the Gram matrix
/// `G_ab = <B_a, B_b>` (Frobenius inner product), solved with an SVD
/// pseudo-inverse so rank-deficient bases still yield the minimum-norm fit.
pub fn project(target: &DMatrix<C64>, basis: &[&DMatrix<C64>]) -> Projection {
    let m = basis.len();
    let gram = DMatrix::from_fn(m, m, |a, b| basis[a].dotc(basis[b]));
    let rhs = nalgebra::DVector::from_fn(m, |a, _| basis[a].dotc(target));

    let svd = gram.svd(true, true);
    let largest = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let cutoff = RANK_TOLERANCE * largest.max(f64::MIN_POSITIVE);
    let rank = svd.singular_values.iter().filter(|&&s| s > cutoff).count();
    let coefficients = svd
        .solve(&rhs, cutoff)
        .expect("SVD was computed with U and V");

    let mut fitted = target.clone();
    for (c, b) in coefficients.iter().zip(basis) {
        if !c.is_zero() {
            fitted -= *b * *c;
        }
    }
    Projection {
        coefficients: coefficients.iter().cloned().collect(),
        residual: max_abs(&fitted),
        rank,
    }
}

/// Numerical rank of a set of matrices viewed as vectors.
pub fn span_rank(basis: &[&DMatrix<C64>]) -> usize {
    let m = basis.len();
    if m == 0 {
        return 0;
    }
    let gram = DMatrix::from_fn(m, m, |a, b| basis[a].dotc(basis[b]));
    let sv = gram.singular_values();
    let largest = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter()
        .filter(|&&s| s > RANK_TOLERANCE * largest.max(f64::MIN_POSITIVE))
        .count()
}
