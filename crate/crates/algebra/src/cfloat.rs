//! Double-precision complex scalars with tolerance-aware kernels.
//!
//! Rank, kernel, eigenvalue and inertia computations are delegated to
//! nalgebra's SVD, Schur and Hermitian eigensolvers. Tolerances are relative:
//! a singular value or eigenvalue counts as zero when it is at most
//! `tol * max(1, largest)`.

use std::cmp::Ordering;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::error::{AlgebraError, ScalarParseError};
use crate::hermitian::Inertia;
use crate::matrix::Matrix;
use crate::ops::scalar_ops;
use crate::scalar::{split_complex, Field, ScalarKind};

const SVD_EPS: f64 = 1e-15;
const MAX_ITER: usize = 10_000;

#[derive(Clone, Copy, PartialEq)]
pub struct ComplexFloat(pub Complex64);

impl ComplexFloat {
    pub fn new(re: f64, im: f64) -> Self {
        ComplexFloat(Complex64::new(re, im))
    }

    pub fn re(&self) -> f64 {
        self.0.re
    }

    pub fn im(&self) -> f64 {
        self.0.im
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }
}

impl From<f64> for ComplexFloat {
    fn from(x: f64) -> Self {
        ComplexFloat::new(x, 0.0)
    }
}

impl From<Complex64> for ComplexFloat {
    fn from(c: Complex64) -> Self {
        ComplexFloat(c)
    }
}

impl fmt::Display for ComplexFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let Complex64 { re, im } = self.0;
        if im == 0.0 {
            write!(f, "{re}")
        } else if im.is_sign_negative() {
            write!(f, "{re}{im}i")
        } else {
            write!(f, "{re}+{im}i")
        }
    }
}

impl fmt::Debug for ComplexFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

scalar_ops!(ComplexFloat);

pub(crate) fn to_nalgebra(m: &Matrix<ComplexFloat>) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)].0)
}

/// Singular values of `m` (descending) and the right singular vectors as
/// columns of a `cols x cols` unitary matrix.
pub(crate) fn svd_full(m: &Matrix<ComplexFloat>) -> Result<(Vec<f64>, DMatrix<Complex64>), AlgebraError> {
    let (r, c) = (m.rows(), m.cols());
    // pad to at least `c` rows so that the full right basis is returned
    let padded = DMatrix::from_fn(r.max(c), c, |i, j| if i < r { m[(i, j)].0 } else { Complex64::new(0.0, 0.0) });
    let svd = nalgebra::SVD::try_new(padded, false, true, SVD_EPS, MAX_ITER)
        .ok_or_else(|| AlgebraError::NoConvergence("singular value decomposition".into()))?;
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&a, &b| svd.singular_values[b].total_cmp(&svd.singular_values[a]));
    let v_t = svd.v_t.expect("requested right singular vectors");
    let sigma: Vec<f64> = order.iter().map(|&k| svd.singular_values[k]).collect();
    let v = DMatrix::from_fn(c, c, |i, j| v_t[(order[j], i)].conj());
    Ok((sigma, v))
}

fn numerical_rank(sigma: &[f64], tol: f64) -> usize {
    let top = sigma.first().copied().unwrap_or(0.0).max(1.0);
    sigma.iter().filter(|&&s| s > tol * top).count()
}

impl Field for ComplexFloat {
    const KIND: ScalarKind = ScalarKind::ComplexFloat;
    const EXACT: bool = false;

    fn add_ref(&self, rhs: &Self) -> Self {
        ComplexFloat(self.0 + rhs.0)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        ComplexFloat(self.0 - rhs.0)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        ComplexFloat(self.0 * rhs.0)
    }
    fn div_ref(&self, rhs: &Self) -> Self {
        ComplexFloat(self.0 / rhs.0)
    }
    fn neg_ref(&self) -> Self {
        ComplexFloat(-self.0)
    }

    fn zero() -> Self {
        ComplexFloat::new(0.0, 0.0)
    }
    fn one() -> Self {
        ComplexFloat::new(1.0, 0.0)
    }
    fn from_i64(n: i64) -> Self {
        ComplexFloat::new(n as f64, 0.0)
    }
    fn from_rational(q: &BigRational) -> Self {
        ComplexFloat::new(q.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn imag_unit() -> Option<Self> {
        Some(ComplexFloat::new(0.0, 1.0))
    }
    fn is_zero(&self) -> bool {
        self.0.re == 0.0 && self.0.im == 0.0
    }
    fn is_negligible(&self, tol: f64) -> bool {
        self.0.norm() <= tol
    }
    fn conj(&self) -> Self {
        ComplexFloat(self.0.conj())
    }
    fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| ComplexFloat(self.0.inv()))
    }
    fn to_c64(&self) -> Complex64 {
        self.0
    }
    fn from_c64(c: Complex64) -> Option<Self> {
        Some(ComplexFloat(c))
    }
    fn sqrt(&self) -> Option<Self> {
        Some(ComplexFloat(self.0.sqrt()))
    }
    fn is_real(&self, tol: f64) -> bool {
        self.0.im.abs() <= tol * self.0.norm().max(1.0)
    }
    fn real_sign(&self, tol: f64) -> Ordering {
        if self.0.re.abs() <= tol {
            Ordering::Equal
        } else {
            self.0.re.total_cmp(&0.0)
        }
    }
    fn modulus_cmp(&self, other: &Self, tol: f64) -> Ordering {
        let (a, b) = (self.0.norm(), other.0.norm());
        if (a - b).abs() <= tol * a.max(b).max(1.0) {
            Ordering::Equal
        } else {
            a.total_cmp(&b)
        }
    }
    fn total_cmp(&self, other: &Self) -> Ordering {
        self.0.re.total_cmp(&other.0.re).then_with(|| self.0.im.total_cmp(&other.0.im))
    }
    fn parse_scalar(s: &str) -> Result<Self, ScalarParseError> {
        let (re, im) = split_complex(s)?;
        let part = |t: Option<String>, what: &str| -> Result<f64, ScalarParseError> {
            match t {
                None => Ok(0.0),
                Some(t) => {
                    let t = t.strip_prefix('+').unwrap_or(&t).to_string();
                    let v = match t.split_once('/') {
                        Some((n, d)) => n.parse::<f64>().ok().zip(d.parse::<f64>().ok()).map(|(n, d)| n / d),
                        None => t.parse::<f64>().ok(),
                    };
                    v.filter(|v| v.is_finite())
                        .ok_or_else(|| ScalarParseError::new(s, format!("malformed {what} part")))
                }
            }
        };
        Ok(ComplexFloat::new(part(re, "real")?, part(im, "imaginary")?))
    }

    fn rank_kernel(m: &Matrix<Self>, tol: f64) -> usize {
        if m.rows() == 0 || m.cols() == 0 {
            return 0;
        }
        match svd_full(m) {
            Ok((sigma, _)) => numerical_rank(&sigma, tol),
            Err(_) => crate::linalg::rref(m, tol).1.len(),
        }
    }

    fn nullspace_kernel(m: &Matrix<Self>, tol: f64) -> Matrix<Self> {
        let c = m.cols();
        if m.rows() == 0 || c == 0 {
            return Matrix::identity(c);
        }
        match svd_full(m) {
            Ok((sigma, v)) => {
                let r = numerical_rank(&sigma, tol);
                Matrix::from_fn(c, c - r, |i, j| ComplexFloat(v[(i, r + j)]))
            }
            Err(_) => crate::linalg::nullspace_rref(m, tol),
        }
    }

    fn eigenvalues_kernel(m: &Matrix<Self>) -> Result<Vec<Self>, AlgebraError> {
        if !m.is_square() {
            return Err(AlgebraError::DimensionMismatch("eigenvalues of a non-square matrix".into()));
        }
        if m.rows() == 0 {
            return Ok(Vec::new());
        }
        let schur = nalgebra::linalg::Schur::try_new(to_nalgebra(m), SVD_EPS, MAX_ITER)
            .ok_or_else(|| AlgebraError::NoConvergence("Schur decomposition".into()))?;
        let (_, t) = schur.unpack();
        Ok((0..m.rows()).map(|k| ComplexFloat(t[(k, k)])).collect())
    }

    fn inertia_kernel(m: &Matrix<Self>, tol: f64) -> Result<Inertia, AlgebraError> {
        if !m.is_square() {
            return Err(AlgebraError::DimensionMismatch("inertia of a non-square matrix".into()));
        }
        if !m.approx_eq(&m.conj_transpose(), tol * m.max_abs().max(1.0)) {
            return Err(AlgebraError::NotHermitian);
        }
        if m.rows() == 0 {
            return Ok(Inertia::default());
        }
        let herm = (to_nalgebra(m) + to_nalgebra(m).adjoint()) * Complex64::new(0.5, 0.0);
        let eig = nalgebra::SymmetricEigen::try_new(herm, SVD_EPS, MAX_ITER)
            .ok_or_else(|| AlgebraError::NoConvergence("Hermitian eigensolver".into()))?;
        let scale = eig.eigenvalues.iter().fold(1.0f64, |a, v| a.max(v.abs()));
        let mut out = Inertia::default();
        for &v in eig.eigenvalues.iter() {
            if v.abs() <= tol * scale {
                out.zero += 1;
            } else if v > 0.0 {
                out.plus += 1;
            } else {
                out.minus += 1;
            }
        }
        Ok(out)
    }
}
