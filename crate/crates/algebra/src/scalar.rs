//! Scalar domains with involution.
//!
//! Three domains are provided: exact rationals ([`Rational`]), exact Gaussian
//! rationals ([`GaussianRational`]) and tolerance-aware complex floats
//! ([`ComplexFloat`]). All of them implement [`Field`], which also carries the
//! hooks that let generic linear algebra pick an exact or a numerical kernel.
//!
//! [`Rational`]: crate::Rational
//! [`GaussianRational`]: crate::GaussianRational
//! [`ComplexFloat`]: crate::ComplexFloat

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, Zero};

use crate::error::{AlgebraError, ScalarParseError};
use crate::hermitian::{self, Inertia};
use crate::linalg;
use crate::matrix::Matrix;
use crate::poly::Poly;

/// Tolerance used by the float domain when the caller does not pick one.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScalarKind {
    Rational,
    GaussianRational,
    ComplexFloat,
}

impl fmt::Display for ScalarKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScalarKind::Rational => "rational",
            ScalarKind::GaussianRational => "gaussian-rational",
            ScalarKind::ComplexFloat => "complex-float",
        })
    }
}

/// The fixed involution `a -> conj(a)` of a scalar domain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Involution {
    #[default]
    Identity,
    Conjugation,
}

impl Involution {
    pub fn apply<T: Field>(self, a: &T) -> T {
        match self {
            Involution::Identity => a.clone(),
            Involution::Conjugation => a.conj(),
        }
    }

    /// Involution-transpose `M^H` (plain transpose for the identity involution).
    pub fn adjoint<T: Field>(self, m: &Matrix<T>) -> Matrix<T> {
        match self {
            Involution::Identity => m.transpose(),
            Involution::Conjugation => m.conj_transpose(),
        }
    }

    pub fn poly<T: Field>(self, p: &Poly<T>) -> Poly<T> {
        match self {
            Involution::Identity => p.clone(),
            Involution::Conjugation => p.conj(),
        }
    }
}

/// A scalar domain as selected at runtime (for example by a command-line flag).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarDomain {
    kind: ScalarKind,
    involution: Involution,
    tolerance: f64,
}

impl ScalarDomain {
    pub fn new(kind: ScalarKind, involution: Involution) -> Result<Self, AlgebraError> {
        if kind == ScalarKind::Rational && involution == Involution::Conjugation {
            return Err(AlgebraError::InvalidDomain(
                "the rational domain only admits the identity involution".into(),
            ));
        }
        Ok(ScalarDomain {
            kind,
            involution,
            tolerance: DEFAULT_TOLERANCE,
        })
    }

    pub fn with_tolerance(mut self, tolerance: f64) -> Result<Self, AlgebraError> {
        if self.kind != ScalarKind::ComplexFloat {
            return Err(AlgebraError::InvalidDomain(
                "a tolerance is only meaningful for the complex-float domain".into(),
            ));
        }
        if !(tolerance >= 0.0 && tolerance.is_finite()) {
            return Err(AlgebraError::InvalidDomain(format!(
                "tolerance must be a nonnegative real, got {tolerance}"
            )));
        }
        self.tolerance = tolerance;
        Ok(self)
    }

    pub fn kind(&self) -> ScalarKind {
        self.kind
    }

    pub fn involution(&self) -> Involution {
        self.involution
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn is_exact(&self) -> bool {
        self.kind != ScalarKind::ComplexFloat
    }
}

/// A commutative field with a complex conjugation, together with the
/// linear-algebra hooks that differ between exact and floating domains.
///
/// Exact domains ignore every `tol` argument.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    const KIND: ScalarKind;
    const EXACT: bool;

    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    /// Division; dividing by zero panics for exact domains.
    fn div_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn from_rational(q: &BigRational) -> Self;
    /// The imaginary unit, if the domain contains one.
    fn imag_unit() -> Option<Self>;

    /// Exact zero test (for floats: bitwise zero).
    fn is_zero(&self) -> bool;
    fn is_negligible(&self, _tol: f64) -> bool {
        self.is_zero()
    }
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn conj(&self) -> Self;
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one().div_ref(self))
        }
    }
    fn to_c64(&self) -> Complex64;
    /// Build a scalar from a float value; only the float domain accepts this.
    fn from_c64(_c: Complex64) -> Option<Self> {
        None
    }
    /// A square root inside the domain, when one exists.
    fn sqrt(&self) -> Option<Self>;
    /// True when the imaginary part vanishes.
    fn is_real(&self, tol: f64) -> bool;
    /// Sign of the real part (the caller checks `is_real` first when it matters).
    fn real_sign(&self, tol: f64) -> Ordering;
    /// Compare `|self|` with `|other|`.
    fn modulus_cmp(&self, other: &Self, tol: f64) -> Ordering;
    /// A deterministic total order used to sort canonical output.
    fn total_cmp(&self, other: &Self) -> Ordering;
    fn parse_scalar(s: &str) -> Result<Self, ScalarParseError>;

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.sub_ref(other).is_negligible(tol)
    }

    // --- kernels -----------------------------------------------------------

    fn det_kernel(m: &Matrix<Self>) -> Self {
        linalg::det(m)
    }

    fn rank_kernel(m: &Matrix<Self>, tol: f64) -> usize {
        linalg::rref(m, tol).1.len()
    }

    /// Columns form a basis of the right kernel of `m`.
    fn nullspace_kernel(m: &Matrix<Self>, tol: f64) -> Matrix<Self> {
        linalg::nullspace_rref(m, tol)
    }

    fn eigenvalues_kernel(_m: &Matrix<Self>) -> Result<Vec<Self>, AlgebraError> {
        Err(AlgebraError::Unsupported(
            "numerical eigenvalues are only available for the complex-float domain".into(),
        ))
    }

    fn inertia_kernel(m: &Matrix<Self>, tol: f64) -> Result<Inertia, AlgebraError> {
        hermitian::inertia_ldl(m, tol)
    }

    /// Irreducible monic factors of a monic squarefree polynomial.
    fn factor_squarefree(_p: &Poly<Self>) -> Result<Vec<Poly<Self>>, AlgebraError> {
        Err(AlgebraError::DomainNotExact)
    }
}

// --- shared parsing helpers ----------------------------------------------------

/// Split a complex literal into its real and imaginary text parts.
pub(crate) fn split_complex(s: &str) -> Result<(Option<String>, Option<String>), ScalarParseError> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err(ScalarParseError::new(s, "empty scalar"));
    }
    if !t.ends_with('i') {
        return Ok((Some(t), None));
    }
    let body = &t[..t.len() - 1];
    let bytes = body.as_bytes();
    let mut split = None;
    for k in (1..bytes.len()).rev() {
        let c = bytes[k];
        if (c == b'+' || c == b'-') && !matches!(bytes[k - 1], b'e' | b'E' | b'/') {
            split = Some(k);
            break;
        }
    }
    let (re, im) = match split {
        Some(k) => (Some(body[..k].to_string()), body[k..].to_string()),
        None => (None, body.to_string()),
    };
    let im = match im.as_str() {
        "" | "+" => "1".to_string(),
        "-" => "-1".to_string(),
        _ => im,
    };
    Ok((re, Some(im)))
}

/// Parse an exact rational from `p`, `p/q` or a decimal such as `-1.25e3`.
pub(crate) fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.strip_prefix('+').unwrap_or(s);
    if s.is_empty() {
        return None;
    }
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str_radix(n, 10).ok()?;
        let d = BigInt::from_str_radix(d.strip_prefix('+').unwrap_or(d), 10).ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    if let Ok(n) = BigInt::from_str_radix(s, 10) {
        return Some(BigRational::from_integer(n));
    }
    // decimal with optional exponent
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(k) => (&s[..k], s[k + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(BigInt::from_str_radix(&digits, 10).ok()?);
    let scale = exp - frac_part.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    if scale >= 0 {
        value *= num_traits::pow(ten, scale as usize);
    } else {
        value /= num_traits::pow(ten, (-scale) as usize);
    }
    Some(if neg { -value } else { value })
}

pub(crate) fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub(crate) fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = q.numer().sqrt();
    let d = q.denom().sqrt();
    if &(&n * &n) == q.numer() && &(&d * &d) == q.denom() {
        Some(BigRational::new(n, d))
    } else {
        None
    }
}
