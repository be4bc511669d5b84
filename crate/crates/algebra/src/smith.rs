//! Smith normal form over `F[x]` for exact fields.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::AlgebraError;
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::scalar::Field;

/// A dense matrix with polynomial entries.
#[derive(Clone, PartialEq)]
pub struct PolyMatrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Poly<T>>>,
}

impl<T: Field> PolyMatrix<T> {
    pub fn new(entries: Vec<Vec<Poly<T>>>, cols: usize) -> Self {
        assert!(entries.iter().all(|r| r.len() == cols), "ragged polynomial matrix");
        PolyMatrix { rows: entries.len(), cols, entries }
    }

    /// The pencil `x a - b`.
    pub fn pencil(a: &Matrix<T>, b: &Matrix<T>) -> Self {
        assert_eq!(a.shape(), b.shape(), "pencil matrices must share a shape");
        let entries = (0..a.rows())
            .map(|i| {
                (0..a.cols())
                    .map(|j| Poly::new(vec![b[(i, j)].neg_ref(), a[(i, j)].clone()]))
                    .collect()
            })
            .collect();
        PolyMatrix { rows: a.rows(), cols: a.cols(), entries }
    }

    /// The characteristic matrix `x I - a`.
    pub fn characteristic(a: &Matrix<T>) -> Self {
        Self::pencil(&Matrix::identity(a.rows()), a)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly<T> {
        &self.entries[i][j]
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "polynomial matrix shape mismatch");
        let entries = (0..self.rows)
            .map(|i| {
                (0..other.cols)
                    .map(|j| {
                        (0..self.cols).fold(Poly::zero(), |acc, k| {
                            acc.add(&self.entries[i][k].mul(&other.entries[k][j]))
                        })
                    })
                    .collect()
            })
            .collect();
        PolyMatrix { rows: self.rows, cols: other.cols, entries }
    }
}

/// Nonzero invariant factors `d_1 | d_2 | ... | d_r` (monic, including leading
/// ones), where `r` is the rank of `m` over `F(x)`.
pub fn smith_polynomial<T: Field>(m: &PolyMatrix<T>) -> Result<Vec<Poly<T>>, AlgebraError> {
    if !T::EXACT {
        return Err(AlgebraError::DomainNotExact);
    }
    let mut a = m.entries.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut diag = Vec::new();
    for k in 0..rows.min(cols) {
        loop {
            // smallest-degree nonzero entry of the trailing block
            let mut best: Option<(usize, usize, usize)> = None;
            for (i, row) in a.iter().enumerate().skip(k) {
                for (j, e) in row.iter().enumerate().skip(k) {
                    if let Some(d) = e.degree() {
                        if best.is_none_or(|(_, _, bd)| d < bd) {
                            best = Some((i, j, d));
                        }
                    }
                }
            }
            let Some((pi, pj, _)) = best else {
                return Ok(diag);
            };
            a.swap(k, pi);
            for row in a.iter_mut() {
                row.swap(k, pj);
            }
            let pivot = a[k][k].clone();
            let mut dirty = false;
            for i in k + 1..rows {
                if a[i][k].is_zero() {
                    continue;
                }
                let (q, r) = a[i][k].divrem(&pivot);
                for j in k..cols {
                    let v = a[i][j].sub(&q.mul(&a[k][j]));
                    a[i][j] = v;
                }
                dirty |= !r.is_zero();
            }
            for j in k + 1..cols {
                if a[k][j].is_zero() {
                    continue;
                }
                let (q, r) = a[k][j].divrem(&pivot);
                for row in a.iter_mut().skip(k) {
                    let v = row[j].sub(&q.mul(&row[k]));
                    row[j] = v;
                }
                dirty |= !r.is_zero();
            }
            if dirty {
                continue;
            }
            // divisibility of the trailing block by the pivot
            let bad = (k + 1..rows).find(|&i| (k + 1..cols).any(|j| !a[i][j].rem(&pivot).is_zero()));
            match bad {
                Some(i) => {
                    for j in k..cols {
                        let v = a[k][j].add(&a[i][j]);
                        a[k][j] = v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[k][k].monic());
    }
    Ok(diag)
}

/// Nonzero invariant factors of the pencil `x a - b`, as [`smith_polynomial`]
/// would return them, computed from determinantal divisors.
///
/// `D_k`, the gcd of all `k x k` minors, is taken as the gcd of a few
/// determinants of random compressions `U (x a - b) V`; each determinant is
/// recovered exactly by interpolation. This avoids the coefficient swell of
/// polynomial elimination. The random choices are seeded, and the divisor
/// chain is checked and resampled if it is inconsistent.
pub fn pencil_invariant_factors<T: Field>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Vec<Poly<T>>, AlgebraError> {
    if !T::EXACT {
        return Err(AlgebraError::DomainNotExact);
    }
    assert_eq!(a.shape(), b.shape(), "pencil matrices must share a shape");
    let (m, n) = a.shape();
    // a nonzero r x r minor has degree at most r, so one of min(m, n) + 1
    // points attains the rank over F(x)
    let full = m.min(n);
    let mut r = 0;
    for t in 0..=full as i64 {
        r = r.max(a.scale(&T::from_i64(t)).sub(b).rank(0.0));
        if r == full {
            break;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xd17e);
    for samples in 3..8 {
        // D_k for k = r, r-1, ... until D_k = 1, which forces D_j = 1 below
        let mut divisors = vec![Poly::one(); r + 1];
        for k in (1..=r).rev() {
            let mut d = Poly::zero();
            let mut drawn = 0;
            // the running gcd is a multiple of D_k, so reaching one is conclusive
            while !d.is_one() && (drawn < samples || (d.is_zero() && drawn < samples + 32)) {
                d = d.gcd(&compressed_det(a, b, k, &mut rng));
                drawn += 1;
            }
            if d.is_zero() {
                return Err(AlgebraError::NoConvergence("determinantal divisors of a pencil".into()));
            }
            let done = d.is_one();
            divisors[k] = d;
            if done {
                break;
            }
        }
        let factors: Option<Vec<Poly<T>>> = divisors.windows(2).map(|w| w[1].div_exact(&w[0])).collect();
        if let Some(factors) = factors {
            if factors.windows(2).all(|w| w[1].rem(&w[0]).is_zero()) {
                return Ok(factors);
            }
        }
    }
    Err(AlgebraError::NoConvergence("determinantal divisors of a pencil".into()))
}

/// `det(U (x a - b) V)` for random integer `U` (`k x m`) and `V` (`n x k`),
/// interpolated from `k + 1` evaluations.
fn compressed_det<T: Field>(a: &Matrix<T>, b: &Matrix<T>, k: usize, rng: &mut ChaCha8Rng) -> Poly<T> {
    let (m, n) = a.shape();
    let u = Matrix::from_fn(k, m, |_, _| T::from_i64(rng.gen_range(-40..=40)));
    let v = Matrix::from_fn(n, k, |_, _| T::from_i64(rng.gen_range(-40..=40)));
    let (p, q) = (u.mul(a).mul(&v), u.mul(b).mul(&v));
    let points: Vec<(T, T)> = (0..=k as i64).map(|t| (T::from_i64(t), p.scale(&T::from_i64(t)).sub(&q).det())).collect();
    Poly::interpolate(&points)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{ComplexFloat, Rational};

    type P = Poly<Rational>;

    #[test]
    fn examples() {
        let a = Matrix::<Rational>::from_i64_rows(&[&[0, -1], &[1, 0]]);
        assert_eq!(
            smith_polynomial(&PolyMatrix::characteristic(&a)).unwrap(),
            vec![P::one(), P::from_i64(&[1, 0, 1])]
        );
        let z = Matrix::<Rational>::zeros(1, 1);
        assert_eq!(smith_polynomial(&PolyMatrix::characteristic(&z)).unwrap(), vec![P::x()]);
        let i2 = Matrix::<Rational>::identity(2);
        assert_eq!(
            smith_polynomial(&PolyMatrix::characteristic(&i2)).unwrap(),
            vec![P::from_i64(&[-1, 1]), P::from_i64(&[-1, 1])]
        );
    }

    #[test]
    fn singular_pencil_rank() {
        // x [1 0] - [0 1] has rank one and invariant factor 1
        let a = Matrix::<Rational>::from_i64_rows(&[&[1, 0]]);
        let b = Matrix::<Rational>::from_i64_rows(&[&[0, 1]]);
        assert_eq!(smith_polynomial(&PolyMatrix::pencil(&a, &b)).unwrap(), vec![P::one()]);
        let e = Matrix::<Rational>::zeros(0, 1);
        assert!(smith_polynomial(&PolyMatrix::pencil(&e, &e)).unwrap().is_empty());
    }

    #[test]
    fn determinantal_route_agrees() {
        let a = Matrix::<Rational>::from_i64_rows(&[&[1, 0, 0, 2], &[0, 1, 0, 0], &[0, 0, 0, 0]]);
        let b = Matrix::<Rational>::from_i64_rows(&[&[0, 1, 1, 0], &[0, 0, 0, 1], &[3, 0, 0, 0]]);
        let want = smith_polynomial(&PolyMatrix::pencil(&a, &b)).unwrap();
        assert_eq!(pencil_invariant_factors(&a, &b).unwrap(), want);
        let c = Matrix::<Rational>::from_i64_rows(&[&[2, 1, 0], &[0, 2, 0], &[0, 0, 2]]);
        let i3 = Matrix::<Rational>::identity(3);
        assert_eq!(
            pencil_invariant_factors(&i3, &c).unwrap(),
            vec![P::one(), P::from_i64(&[-2, 1]), P::from_i64(&[4, -4, 1])]
        );
    }

    #[test]
    fn float_rejected() {
        let a = Matrix::<ComplexFloat>::identity(1);
        assert_eq!(
            smith_polynomial(&PolyMatrix::characteristic(&a)),
            Err(AlgebraError::DomainNotExact)
        );
    }
}
