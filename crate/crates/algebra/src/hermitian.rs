//! Inertia of Hermitian (or real symmetric) matrices.

use std::cmp::Ordering;

use crate::error::AlgebraError;
use crate::matrix::Matrix;
use crate::scalar::Field;

/// Counts of positive, negative and zero eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Inertia {
    pub plus: usize,
    pub minus: usize,
    pub zero: usize,
}

/// Inertia of `m` (Hermitian with respect to conjugation) by exact symmetric
/// elimination `m -> E^H m E`.
///
/// A diagonal pivot is used when one exists. Otherwise a nonzero off-diagonal
/// `h_ij` is folded into the diagonal by the column operation
/// `col_i += conj(h_ij) col_j`, which makes the new `(i, i)` entry `2 |h_ij|^2`.
pub fn inertia_ldl<T: Field>(m: &Matrix<T>, tol: f64) -> Result<Inertia, AlgebraError> {
    if !m.is_square() {
        return Err(AlgebraError::DimensionMismatch("inertia of a non-square matrix".into()));
    }
    if !m.approx_eq(&m.conj_transpose(), tol) {
        return Err(AlgebraError::NotHermitian);
    }
    let mut a = m.clone();
    let mut out = Inertia::default();
    loop {
        let n = a.rows();
        if n == 0 {
            return Ok(out);
        }
        let pivot = (0..n).find(|&k| !a[(k, k)].is_negligible(tol));
        let k = match pivot {
            Some(k) => k,
            None => {
                let Some((i, j)) = (0..n)
                    .flat_map(|i| (0..n).map(move |j| (i, j)))
                    .find(|&(i, j)| i != j && !a[(i, j)].is_negligible(tol))
                else {
                    out.zero += n;
                    return Ok(out);
                };
                let c = a[(i, j)].conj();
                // E = I + c e_j e_i^T ; a <- E^H a E
                let mut e = Matrix::identity(n);
                e[(j, i)] = c;
                a = e.conj_transpose().mul(&a).mul(&e);
                i
            }
        };
        let d = a[(k, k)].clone();
        match d.real_sign(tol) {
            Ordering::Greater => out.plus += 1,
            Ordering::Less => out.minus += 1,
            Ordering::Equal => unreachable!("pivot is nonzero"),
        }
        let rest: Vec<usize> = (0..n).filter(|&x| x != k).collect();
        let v = a.select(&rest, &[k]);
        let schur = a
            .select(&rest, &rest)
            .sub(&v.mul(&v.conj_transpose()).scale(&d.inv().expect("pivot is nonzero")));
        a = schur;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{GaussianRational, Rational};

    #[test]
    fn diagonal_and_hyperbolic() {
        let d = Matrix::<Rational>::from_i64_rows(&[&[2, 0, 0], &[0, -3, 0], &[0, 0, 0]]);
        assert_eq!(inertia_ldl(&d, 0.0).unwrap(), Inertia { plus: 1, minus: 1, zero: 1 });
        let h = Matrix::<Rational>::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(inertia_ldl(&h, 0.0).unwrap(), Inertia { plus: 1, minus: 1, zero: 0 });
    }

    #[test]
    fn complex_hermitian() {
        let i = GaussianRational::i;
        let m = Matrix::from_rows(vec![
            vec![GaussianRational::from(0), i()],
            vec![-i(), GaussianRational::from(0)],
        ]);
        assert_eq!(inertia_ldl(&m, 0.0).unwrap(), Inertia { plus: 1, minus: 1, zero: 0 });
        let not_h = Matrix::from_rows(vec![vec![GaussianRational::from(0), i()], vec![i(), GaussianRational::from(0)]]);
        assert_eq!(inertia_ldl(&not_h, 0.0), Err(AlgebraError::NotHermitian));
    }
}
