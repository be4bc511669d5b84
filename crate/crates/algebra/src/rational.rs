//! Arbitrary-precision rationals.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{AlgebraError, ScalarParseError};
use crate::factor;
use crate::fraction_free::{bareiss, row_lcm, scaled, Elimination};
use crate::matrix::Matrix;
use crate::ops::scalar_ops;
use crate::poly::Poly;
use crate::scalar::{fmt_rational, parse_rational, rational_sqrt, split_complex, Field, ScalarKind};

/// An exact rational number.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Self {
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_integer(n: BigInt) -> Self {
        Rational(BigRational::from_integer(n))
    }

    pub fn inner(&self) -> &BigRational {
        &self.0
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }
}

impl From<BigRational> for Rational {
    fn from(q: BigRational) -> Self {
        Rational(q)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_rational(&self.0))
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

scalar_ops!(Rational);

fn eliminate(m: &Matrix<Rational>) -> Elimination<BigInt> {
    let rows = (0..m.rows())
        .map(|i| {
            let l = row_lcm((0..m.cols()).map(|j| &m[(i, j)].0));
            (0..m.cols()).map(|j| scaled(&m[(i, j)].0, &l)).collect()
        })
        .collect();
    bareiss(rows, m.cols())
}

impl Field for Rational {
    const KIND: ScalarKind = ScalarKind::Rational;
    const EXACT: bool = true;

    fn det_kernel(m: &Matrix<Self>) -> Self {
        let scale = (0..m.rows()).fold(BigInt::from(1), |acc, i| acc * row_lcm((0..m.cols()).map(|j| &m[(i, j)].0)));
        Rational(BigRational::new(eliminate(m).det, scale))
    }

    fn rank_kernel(m: &Matrix<Self>, _tol: f64) -> usize {
        eliminate(m).rank
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }
    fn div_ref(&self, rhs: &Self) -> Self {
        assert!(!rhs.0.is_zero(), "division by zero rational");
        Rational(&self.0 / &rhs.0)
    }
    fn neg_ref(&self) -> Self {
        Rational(-&self.0)
    }

    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational::from(1)
    }
    fn from_i64(n: i64) -> Self {
        Rational::from(n)
    }
    fn from_rational(q: &BigRational) -> Self {
        Rational(q.clone())
    }
    fn imag_unit() -> Option<Self> {
        None
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn conj(&self) -> Self {
        self.clone()
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.0.to_f64().unwrap_or(f64::NAN), 0.0)
    }
    fn sqrt(&self) -> Option<Self> {
        rational_sqrt(&self.0).map(Rational)
    }
    fn is_real(&self, _tol: f64) -> bool {
        true
    }
    fn real_sign(&self, _tol: f64) -> Ordering {
        self.0.cmp(&BigRational::zero())
    }
    fn modulus_cmp(&self, other: &Self, _tol: f64) -> Ordering {
        self.0.abs().cmp(&other.0.abs())
    }
    fn total_cmp(&self, other: &Self) -> Ordering {
        self.cmp(other)
    }
    fn parse_scalar(s: &str) -> Result<Self, ScalarParseError> {
        let (re, im) = split_complex(s)?;
        if let Some(im) = im {
            let v = parse_rational(&im).ok_or_else(|| ScalarParseError::new(s, "malformed imaginary part"))?;
            if !v.is_zero() {
                return Err(ScalarParseError::new(s, "imaginary value in the rational domain"));
            }
        }
        match re {
            Some(re) => parse_rational(&re)
                .map(Rational)
                .ok_or_else(|| ScalarParseError::new(s, "malformed rational")),
            None => Ok(Rational::zero()),
        }
    }

    fn factor_squarefree(p: &Poly<Self>) -> Result<Vec<Poly<Self>>, AlgebraError> {
        factor::rational::factor_squarefree(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        for (s, want) in [("3/2", "3/2"), ("-4/2", "-2"), ("0.25", "1/4"), ("1e2", "100"), ("+7", "7"), ("-1.5e-1", "-3/20")] {
            assert_eq!(Rational::parse_scalar(s).unwrap().to_string(), want, "{s}");
        }
        assert!(Rational::parse_scalar("1/0").is_err());
        assert!(Rational::parse_scalar("1+i").is_err());
        assert!(Rational::parse_scalar("abc").is_err());
        assert_eq!(Rational::parse_scalar("2+0i").unwrap(), Rational::from(2));
    }

    #[test]
    fn sqrt_perfect_squares_only() {
        assert_eq!(Rational::new(9, 4).sqrt(), Some(Rational::new(3, 2)));
        assert_eq!(Rational::from(2).sqrt(), None);
        assert_eq!(Rational::from(-1).sqrt(), None);
    }
}
