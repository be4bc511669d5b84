//! Exact Gaussian rationals `a + b i` with `a, b` rational.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{AlgebraError, ScalarParseError};
use crate::factor;
use crate::fraction_free::{bareiss, row_lcm, scaled, Elimination, GaussInt};
use crate::matrix::Matrix;
use crate::ops::scalar_ops;
use crate::poly::Poly;
use crate::rational::Rational;
use crate::scalar::{fmt_rational, parse_rational, rational_sqrt, split_complex, Field, ScalarKind};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussianRational { re, im }
    }

    /// `re_num/re_den + (im_num/im_den) i`.
    pub fn from_parts(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Self {
        GaussianRational {
            re: BigRational::new(re_num.into(), re_den.into()),
            im: BigRational::new(im_num.into(), im_den.into()),
        }
    }

    /// `a + b i` with integer parts.
    pub fn int(a: i64, b: i64) -> Self {
        GaussianRational {
            re: BigRational::from_integer(BigInt::from(a)),
            im: BigRational::from_integer(BigInt::from(b)),
        }
    }

    pub fn i() -> Self {
        GaussianRational::int(0, 1)
    }

    /// `|z|^2`.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    /// The rational value, when the imaginary part is zero.
    pub fn to_rational(&self) -> Option<Rational> {
        self.im.is_zero().then(|| Rational(self.re.clone()))
    }
}

impl From<Rational> for GaussianRational {
    fn from(q: Rational) -> Self {
        GaussianRational { re: q.0, im: BigRational::zero() }
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        GaussianRational::int(n, 0)
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return f.write_str(&fmt_rational(&self.re));
        }
        let im = if self.im.is_one() {
            "i".to_string()
        } else if (-&self.im).is_one() {
            "-i".to_string()
        } else {
            format!("{}i", fmt_rational(&self.im))
        };
        if self.re.is_zero() {
            f.write_str(&im)
        } else if im.starts_with('-') {
            write!(f, "{}{}", fmt_rational(&self.re), im)
        } else {
            write!(f, "{}+{}", fmt_rational(&self.re), im)
        }
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

scalar_ops!(GaussianRational);

fn row_scale(m: &Matrix<GaussianRational>, i: usize) -> BigInt {
    row_lcm((0..m.cols()).flat_map(|j| [&m[(i, j)].re, &m[(i, j)].im]))
}

fn eliminate(m: &Matrix<GaussianRational>) -> Elimination<GaussInt> {
    let rows = (0..m.rows())
        .map(|i| {
            let l = row_scale(m, i);
            (0..m.cols()).map(|j| GaussInt { re: scaled(&m[(i, j)].re, &l), im: scaled(&m[(i, j)].im, &l) }).collect()
        })
        .collect();
    bareiss(rows, m.cols())
}

impl Field for GaussianRational {
    const KIND: ScalarKind = ScalarKind::GaussianRational;
    const EXACT: bool = true;

    fn det_kernel(m: &Matrix<Self>) -> Self {
        let scale = BigRational::from_integer((0..m.rows()).fold(BigInt::one(), |acc, i| acc * row_scale(m, i)));
        let d = eliminate(m).det;
        GaussianRational { re: BigRational::from_integer(d.re) / &scale, im: BigRational::from_integer(d.im) / scale }
    }

    fn rank_kernel(m: &Matrix<Self>, _tol: f64) -> usize {
        eliminate(m).rank
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        GaussianRational { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        GaussianRational { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        GaussianRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
    fn div_ref(&self, rhs: &Self) -> Self {
        let n = rhs.norm_sqr();
        assert!(!n.is_zero(), "division by zero Gaussian rational");
        let num = self.mul_ref(&rhs.conj());
        GaussianRational { re: num.re / &n, im: num.im / n }
    }
    fn neg_ref(&self) -> Self {
        GaussianRational { re: -&self.re, im: -&self.im }
    }

    fn zero() -> Self {
        GaussianRational::int(0, 0)
    }
    fn one() -> Self {
        GaussianRational::int(1, 0)
    }
    fn from_i64(n: i64) -> Self {
        GaussianRational::int(n, 0)
    }
    fn from_rational(q: &BigRational) -> Self {
        GaussianRational { re: q.clone(), im: BigRational::zero() }
    }
    fn imag_unit() -> Option<Self> {
        Some(GaussianRational::i())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -&self.im }
    }
    fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }

    /// Exact square root: `x + y i` with `x = sqrt((r + a)/2)`, `y = ±sqrt((r - a)/2)`
    /// where `r = |z|`; all three square roots must be rational.
    fn sqrt(&self) -> Option<Self> {
        if self.im.is_zero() {
            return if self.re.is_negative() {
                rational_sqrt(&-&self.re).map(|y| GaussianRational { re: BigRational::zero(), im: y })
            } else {
                rational_sqrt(&self.re).map(|x| GaussianRational { re: x, im: BigRational::zero() })
            };
        }
        let r = rational_sqrt(&self.norm_sqr())?;
        let two = BigRational::from_integer(BigInt::from(2));
        let x = rational_sqrt(&((&r + &self.re) / &two))?;
        let mut y = rational_sqrt(&((&r - &self.re) / &two))?;
        if self.im.is_negative() {
            y = -y;
        }
        Some(GaussianRational { re: x, im: y })
    }
    fn is_real(&self, _tol: f64) -> bool {
        self.im.is_zero()
    }
    fn real_sign(&self, _tol: f64) -> Ordering {
        self.re.cmp(&BigRational::zero())
    }
    fn modulus_cmp(&self, other: &Self, _tol: f64) -> Ordering {
        self.norm_sqr().cmp(&other.norm_sqr())
    }
    fn total_cmp(&self, other: &Self) -> Ordering {
        self.re.cmp(&other.re).then_with(|| self.im.cmp(&other.im))
    }
    fn parse_scalar(s: &str) -> Result<Self, ScalarParseError> {
        let (re, im) = split_complex(s)?;
        let re = match re {
            Some(t) => parse_rational(&t).ok_or_else(|| ScalarParseError::new(s, "malformed real part"))?,
            None => BigRational::zero(),
        };
        let im = match im {
            Some(t) => parse_rational(&t).ok_or_else(|| ScalarParseError::new(s, "malformed imaginary part"))?,
            None => BigRational::zero(),
        };
        Ok(GaussianRational { re, im })
    }

    fn factor_squarefree(p: &Poly<Self>) -> Result<Vec<Poly<Self>>, AlgebraError> {
        factor::gaussian::factor_squarefree(p)
    }
}
