//! Dense univariate polynomials over a [`Field`].

use std::cmp::Ordering;
use std::fmt;

use crate::error::AlgebraError;
use crate::matrix::Matrix;
use crate::scalar::Field;

/// A polynomial with ascending coefficients and no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Field> Poly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(T::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| T::from_i64(c)).collect())
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn x() -> Self {
        Poly { coeffs: vec![T::zero(), T::one()] }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// `x - a`.
    pub fn linear(a: &T) -> Self {
        Poly { coeffs: vec![a.neg_ref(), T::one()] }
    }

    pub fn monomial(c: T, k: usize) -> Self {
        let mut v = vec![T::zero(); k];
        v.push(c);
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0 (for sizing).
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> T {
        self.coeffs.last().cloned().unwrap_or_else(T::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(T::is_one)
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => Self::zero(),
            Some(l) => {
                let inv = l.inv().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.mul_ref(c)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k).add_ref(&other.coeff(k))).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|k| self.coeff(k).sub_ref(&other.coeff(k))).collect())
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(T::neg_ref).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add_ref(&a.mul_ref(b));
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| acc.mul(self))
    }

    /// Euclidean division: `self = q * d + r` with `deg r < deg d`.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let inv = d.lead().inv().expect("leading coefficient is nonzero");
        let mut r = self.coeffs.clone();
        let mut q = vec![T::zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = r[k + dd].mul_ref(&inv);
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[k + j] = r[k + j].sub_ref(&c.mul_ref(dj));
            }
            r[k + dd] = T::zero();
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Exact quotient, if `d` divides `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divrem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            // monic remainders keep coefficient growth in check
            let r = a.rem(&b).monic();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The unique polynomial of degree below `points.len()` through the given
    /// `(x, y)` pairs, by Newton divided differences. The `x` must be distinct.
    pub fn interpolate(points: &[(T, T)]) -> Self {
        let mut dd: Vec<T> = points.iter().map(|(_, y)| y.clone()).collect();
        for level in 1..points.len() {
            for i in (level..points.len()).rev() {
                let num = dd[i].sub_ref(&dd[i - 1]);
                let den = points[i].0.sub_ref(&points[i - level].0);
                dd[i] = num.div_ref(&den);
            }
        }
        let mut p = Self::zero();
        for i in (0..points.len()).rev() {
            p = p.mul(&Self::new(vec![points[i].0.neg_ref(), T::one()])).add(&Self::constant(dd[i].clone()));
        }
        p
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.mul_ref(&T::from_i64(k as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, x: &T) -> T {
        self.coeffs.iter().rev().fold(T::zero(), |acc, c| acc.mul_ref(x).add_ref(c))
    }

    /// `self(x + c)`.
    pub fn shift(&self, c: &T) -> Self {
        let lin = Poly { coeffs: vec![c.clone(), T::one()] };
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, a| acc.mul(&lin).add(&Self::constant(a.clone())))
    }

    /// Apply the conjugation to every coefficient.
    pub fn conj(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(T::conj).collect() }
    }

    /// `x^n p(1/x)` with `n = deg p`.
    pub fn reversed(&self) -> Self {
        Self::new(self.coeffs.iter().rev().cloned().collect())
    }

    pub fn eval_matrix(&self, a: &Matrix<T>) -> Matrix<T> {
        let n = a.rows();
        self.coeffs
            .iter()
            .rev()
            .fold(Matrix::zeros(n, n), |acc, c| acc.mul(a).add(&Matrix::scalar(n, c)))
    }

    /// Multiplicity of `x` as a factor (the `x`-adic valuation); `None` for zero.
    pub fn x_valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Squarefree decomposition of a monic polynomial (characteristic zero):
    /// pairs `(s_k, k)` with `self = prod s_k^k`, each `s_k` squarefree, monic and
    /// nonconstant, pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(Self, usize)> {
        assert!(T::EXACT, "squarefree decomposition needs exact arithmetic");
        let f = self.monic();
        let mut out = Vec::new();
        if f.deg() == 0 {
            return out;
        }
        // Yun's algorithm
        let df = f.derivative();
        let a = f.gcd(&df);
        let mut b = f.div_exact(&a).expect("gcd divides");
        let mut c = df.div_exact(&a).expect("gcd divides");
        let mut k = 1;
        loop {
            let d = c.sub(&b.derivative());
            if b.deg() == 0 {
                break;
            }
            let g = b.gcd(&d);
            if g.deg() > 0 {
                out.push((g.clone(), k));
            }
            b = b.div_exact(&g).expect("gcd divides");
            c = d.div_exact(&g).expect("gcd divides");
            k += 1;
        }
        out
    }

    /// Monic irreducible factors with multiplicities, sorted deterministically.
    pub fn factor(&self) -> Result<Vec<(Self, usize)>, AlgebraError> {
        if !T::EXACT {
            return Err(AlgebraError::DomainNotExact);
        }
        if self.is_zero() {
            return Err(AlgebraError::Unsupported("factorization of the zero polynomial".into()));
        }
        let mut out = Vec::new();
        for (s, k) in self.squarefree_decomposition() {
            for f in T::factor_squarefree(&s)? {
                out.push((f, k));
            }
        }
        out.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        Ok(out)
    }

    /// Deterministic order: by degree, then coefficients from the top down.
    pub fn total_cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            for (a, b) in self.coeffs.iter().rev().zip(other.coeffs.iter().rev()) {
                let o = a.total_cmp(b);
                if o != Ordering::Equal {
                    return o;
                }
            }
            Ordering::Equal
        })
    }

    /// Companion matrix of a monic polynomial: ones on the subdiagonal and
    /// `-c_0, ..., -c_{n-1}` down the last column.
    pub fn companion(&self) -> Matrix<T> {
        assert!(self.is_monic(), "companion matrix needs a monic polynomial");
        let n = self.deg();
        let mut m = Matrix::zeros(n, n);
        for i in 1..n {
            m[(i, i - 1)] = T::one();
        }
        for i in 0..n {
            m[(i, n - 1)] = self.coeffs[i].neg_ref();
        }
        m
    }

    /// Characteristic polynomial `det(xI - a)` by Faddeev–LeVerrier (exact
    /// domains; characteristic zero).
    pub fn charpoly(a: &Matrix<T>) -> Self {
        assert!(a.is_square(), "characteristic polynomial of a non-square matrix");
        let n = a.rows();
        let mut coeffs = vec![T::zero(); n + 1];
        coeffs[n] = T::one();
        let mut m = Matrix::zeros(n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I ; c_{n-k} = -tr(A M_k)/k
            m = a.mul(&m).add(&Matrix::scalar(n, &coeffs[n - k + 1]));
            let c = a.mul(&m).trace().div_ref(&T::from_i64(k as i64)).neg_ref();
            coeffs[n - k] = c;
        }
        Self::new(coeffs)
    }
}

impl<T: Field> fmt::Display for Poly<T> {
    /// Human-readable form such as `x^2 - 3/2*x + (1+i)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let compound = s[1..].contains(['+', '-']);
            let (neg, body) = if !compound && s.starts_with('-') {
                (true, s[1..].to_string())
            } else if compound {
                (false, format!("({s})"))
            } else {
                (false, s)
            };
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mon = match k {
                0 => String::new(),
                1 => "x".into(),
                _ => format!("x^{k}"),
            };
            if k == 0 {
                f.write_str(&body)?;
            } else if body == "1" {
                f.write_str(&mon)?;
            } else {
                write!(f, "{body}*{mon}")?;
            }
        }
        Ok(())
    }
}

impl<T: Field> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}
