//! Gaussian elimination kernels shared by every domain.
//!
//! Exact domains pivot on the first nonzero entry; the float domain uses
//! partial pivoting on the largest modulus and treats entries below
//! `tol * max(1, max |a_ij|)` as zero.

use crate::error::AlgebraError;
use crate::matrix::Matrix;
use crate::scalar::Field;

fn zero_threshold<T: Field>(m: &Matrix<T>, tol: f64) -> f64 {
    if T::EXACT {
        0.0
    } else {
        tol * m.max_abs().max(1.0)
    }
}

fn pick_pivot<T: Field>(m: &Matrix<T>, col: usize, from: usize, thresh: f64) -> Option<usize> {
    if T::EXACT {
        (from..m.rows()).find(|&i| !m[(i, col)].is_zero())
    } else {
        let (best, val) = (from..m.rows())
            .map(|i| (i, m[(i, col)].to_c64().norm()))
            .fold((None, 0.0), |(bi, bv), (i, v)| if v > bv { (Some(i), v) } else { (bi, bv) });
        best.filter(|_| val > thresh)
    }
}

fn swap_rows<T: Field>(m: &mut Matrix<T>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols() {
        let tmp = m[(a, j)].clone();
        m[(a, j)] = m[(b, j)].clone();
        m[(b, j)] = tmp;
    }
}

/// Reduced row echelon form of `m` together with the pivot columns.
pub fn rref<T: Field>(m: &Matrix<T>, tol: f64) -> (Matrix<T>, Vec<usize>) {
    let mut a = m.clone();
    let thresh = zero_threshold(m, tol);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols() {
        if r == a.rows() {
            break;
        }
        let Some(p) = pick_pivot(&a, c, r, thresh) else {
            if !T::EXACT {
                for i in r..a.rows() {
                    a[(i, c)] = T::zero();
                }
            }
            continue;
        };
        swap_rows(&mut a, r, p);
        let inv = a[(r, c)].inv().expect("pivot is nonzero");
        for j in c..a.cols() {
            a[(r, j)] = a[(r, j)].mul_ref(&inv);
        }
        for i in 0..a.rows() {
            if i == r || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in c..a.cols() {
                let v = a[(i, j)].sub_ref(&f.mul_ref(&a[(r, j)]));
                a[(i, j)] = v;
            }
            a[(i, c)] = T::zero();
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

/// Kernel basis read off the reduced row echelon form: one vector per free column.
pub fn nullspace_rref<T: Field>(m: &Matrix<T>, tol: f64) -> Matrix<T> {
    let (r, pivots) = rref(m, tol);
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut out = Matrix::zeros(n, free.len());
    for (k, &f) in free.iter().enumerate() {
        out[(f, k)] = T::one();
        for (row, &p) in pivots.iter().enumerate() {
            out[(p, k)] = r[(row, f)].neg_ref();
        }
    }
    out
}

pub fn inverse<T: Field>(m: &Matrix<T>, tol: f64) -> Result<Matrix<T>, AlgebraError> {
    if !m.is_square() {
        return Err(AlgebraError::DimensionMismatch(format!(
            "inverse of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    let aug = m.hstack(&Matrix::identity(n));
    let thresh = zero_threshold(m, tol);
    let mut a = aug;
    for c in 0..n {
        let p = pick_pivot(&a, c, c, thresh).ok_or(AlgebraError::Singular)?;
        swap_rows(&mut a, c, p);
        let inv = a[(c, c)].inv().ok_or(AlgebraError::Singular)?;
        for j in 0..2 * n {
            a[(c, j)] = a[(c, j)].mul_ref(&inv);
        }
        for i in 0..n {
            if i == c || a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].clone();
            for j in 0..2 * n {
                let v = a[(i, j)].sub_ref(&f.mul_ref(&a[(c, j)]));
                a[(i, j)] = v;
            }
        }
    }
    Ok(a.submatrix(0..n, n..2 * n))
}

/// Determinant by elimination; the empty matrix has determinant one.
pub fn det<T: Field>(m: &Matrix<T>) -> T {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut d = T::one();
    for c in 0..n {
        let Some(p) = pick_pivot(&a, c, c, 0.0) else {
            return T::zero();
        };
        if p != c {
            swap_rows(&mut a, c, p);
            d = d.neg_ref();
        }
        let piv = a[(c, c)].clone();
        d = d.mul_ref(&piv);
        for i in c + 1..n {
            if a[(i, c)].is_zero() {
                continue;
            }
            let f = a[(i, c)].div_ref(&piv);
            for j in c..n {
                let v = a[(i, j)].sub_ref(&f.mul_ref(&a[(c, j)]));
                a[(i, j)] = v;
            }
        }
    }
    d
}

/// One solution of `a * X = b` (free variables set to zero).
pub fn solve<T: Field>(a: &Matrix<T>, b: &Matrix<T>, tol: f64) -> Result<Matrix<T>, AlgebraError> {
    if a.rows() != b.rows() {
        return Err(AlgebraError::DimensionMismatch("right-hand side has the wrong height".into()));
    }
    let n = a.cols();
    let aug = a.hstack(b);
    let (r, pivots) = rref(&aug, tol);
    if pivots.iter().any(|&p| p >= n) {
        return Err(AlgebraError::Singular);
    }
    let mut x = Matrix::zeros(n, b.cols());
    for (row, &p) in pivots.iter().enumerate() {
        for j in 0..b.cols() {
            x[(p, j)] = r[(row, n + j)].clone();
        }
    }
    if !T::EXACT && !a.mul(&x).approx_eq(b, tol.sqrt() * b.max_abs().max(1.0)) {
        return Err(AlgebraError::Singular);
    }
    Ok(x)
}

/// Basis (as columns) of the intersection of the column spaces of `a` and `b`.
pub fn intersect_column_spaces<T: Field>(a: &Matrix<T>, b: &Matrix<T>, tol: f64) -> Matrix<T> {
    // [a | -b] (x; y) = 0  =>  a x lies in both spaces
    let k = a.hstack(&b.neg()).nullspace(tol);
    let x = k.submatrix(0..a.cols(), 0..k.cols());
    a.mul(&x).column_space(tol)
}

/// Vectors `v` (columns of the result) with `m * v` in the column space of `target`.
pub fn preimage<T: Field>(m: &Matrix<T>, target: &Matrix<T>, tol: f64) -> Matrix<T> {
    let n = m.cols();
    let k = m.hstack(&target.neg()).nullspace(tol);
    let x = k.submatrix(0..n, 0..k.cols());
    x.column_space(tol)
}
