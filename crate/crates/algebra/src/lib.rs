//! Exact and floating scalar domains with involution, dense linear algebra,
//! univariate polynomials, factorization and the Smith normal form over `F[x]`.
//!
//! ```
//! use qf_algebra::{Field, Matrix, Poly, Rational, smith_polynomial, PolyMatrix};
//!
//! let a = Matrix::<Rational>::from_i64_rows(&[&[0, -1], &[1, 0]]);
//! let inv = smith_polynomial(&PolyMatrix::characteristic(&a)).unwrap();
//! assert_eq!(inv.last().unwrap(), &Poly::from_i64(&[1, 0, 1]));
//! assert_eq!(a.rank(0.0), 2);
//! ```

mod cfloat;
mod error;
mod factor;
mod fraction_free;
mod gaussian;
mod hermitian;
pub mod linalg;
mod matrix;
mod ops;
mod poly;
mod rational;
mod scalar;
mod smith;

pub use cfloat::ComplexFloat;
pub use error::{AlgebraError, ScalarParseError};
pub use factor::{MAX_DEGREE, MAX_MODULAR_FACTORS};
pub use gaussian::GaussianRational;
pub use hermitian::{inertia_ldl, Inertia};
pub use matrix::Matrix;
pub use poly::Poly;
pub use rational::Rational;
pub use scalar::{Field, Involution, ScalarDomain, ScalarKind, DEFAULT_TOLERANCE};
pub use smith::{pencil_invariant_factors, smith_polynomial, PolyMatrix};

/// Inertia of a Hermitian matrix using the domain's preferred kernel.
pub fn inertia<T: Field>(m: &Matrix<T>, tol: f64) -> Result<Inertia, AlgebraError> {
    T::inertia_kernel(m, tol)
}

/// Re-exports of the big-number types used in public signatures.
pub mod num {
    pub use num_bigint::BigInt;
    pub use num_complex::Complex64;
    pub use num_rational::BigRational;
}
