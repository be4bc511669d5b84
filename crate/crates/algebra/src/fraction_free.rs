//! Fraction-free (Bareiss) elimination over the integers and the Gaussian
//! integers. Rows of a rational matrix are cleared of denominators first, so
//! every intermediate entry is a minor of the integral matrix and no gcd
//! normalization is needed along the way.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// The operations Bareiss elimination needs from an integral domain.
pub(crate) trait Integral: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn neg(&self) -> Self;
    /// `a * b - c * d`.
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self) -> Self;
    /// Quotient of an exact division.
    fn exact_div(&self, d: &Self) -> Self;
}

impl Integral for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn neg(&self) -> Self {
        -self
    }
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        a * b - c * d
    }
    fn exact_div(&self, d: &Self) -> Self {
        self / d
    }
}

/// A Gaussian integer `re + im i`.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct GaussInt {
    pub re: BigInt,
    pub im: BigInt,
}

impl GaussInt {
    fn mul(&self, o: &Self) -> Self {
        GaussInt { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }
}

impl Integral for GaussInt {
    fn zero() -> Self {
        GaussInt { re: Zero::zero(), im: Zero::zero() }
    }
    fn one() -> Self {
        GaussInt { re: One::one(), im: Zero::zero() }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(&self.re) && Zero::is_zero(&self.im)
    }
    fn neg(&self) -> Self {
        GaussInt { re: -&self.re, im: -&self.im }
    }
    fn cross(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let (x, y) = (a.mul(b), c.mul(d));
        GaussInt { re: x.re - y.re, im: x.im - y.im }
    }
    fn exact_div(&self, d: &Self) -> Self {
        if Zero::is_zero(&d.im) {
            return GaussInt { re: &self.re / &d.re, im: &self.im / &d.re };
        }
        let n = &d.re * &d.re + &d.im * &d.im;
        let re = &self.re * &d.re + &self.im * &d.im;
        let im = &self.im * &d.re - &self.re * &d.im;
        GaussInt { re: re / &n, im: im / n }
    }
}

/// Result of a fraction-free elimination: the rank, and for a square matrix
/// the determinant of the integral matrix.
pub(crate) struct Elimination<R> {
    pub rank: usize,
    pub det: R,
}

pub(crate) fn bareiss<R: Integral>(mut a: Vec<Vec<R>>, cols: usize) -> Elimination<R> {
    let rows = a.len();
    let mut prev = R::one();
    let mut negate = false;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(p, r);
            negate = !negate;
        }
        let (top, rest) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            for j in c + 1..cols {
                row[j] = R::cross(&row[j], &pivot_row[c], &row[c], &pivot_row[j]).exact_div(&prev);
            }
            row[c] = R::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    let det = if rows == cols && r == rows {
        let d = if rows == 0 { R::one() } else { prev };
        if negate {
            d.neg()
        } else {
            d
        }
    } else {
        R::zero()
    };
    Elimination { rank: r, det }
}

/// Least common multiple of the denominators in a row.
pub(crate) fn row_lcm<'a>(entries: impl Iterator<Item = &'a BigRational>) -> BigInt {
    entries.fold(<BigInt as One>::one(), |acc, q| acc.lcm(q.denom()))
}

/// `q * l` for a multiple `l` of the denominator of `q`.
pub(crate) fn scaled(q: &BigRational, l: &BigInt) -> BigInt {
    q.numer() * (l / q.denom())
}
