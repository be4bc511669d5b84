//! Literal block matrices.

use std::cmp::Ordering;

use qf_algebra::{Field, Matrix};

use super::{principal_sqrt, Block, CongruenceBlock, ContraBlock, ElementaryDivisor, EquivBlock, PencilBlock, SignBlock, StarBlock};
use crate::error::CoreError;

/// The matrices of one block: one matrix for a map or a form, two for a pair.
pub type BlockMatrices<T> = Vec<Matrix<T>>;

/// `J_n(lambda)`: `lambda` on the diagonal, ones on the superdiagonal.
pub fn jordan<T: Field>(n: usize, lambda: &T) -> Matrix<T> {
    Matrix::from_fn(n, n, |i, j| {
        if i == j {
            lambda.clone()
        } else if j == i + 1 {
            T::one()
        } else {
            T::zero()
        }
    })
}

/// `L_n = [I_{n-1} 0]`, of size `(n-1) x n`.
pub fn l_block<T: Field>(n: usize) -> Matrix<T> {
    assert!(n >= 1, "L_n needs n >= 1");
    Matrix::from_fn(n - 1, n, |i, j| if i == j { T::one() } else { T::zero() })
}

/// `R_n = [0 I_{n-1}]`, of size `(n-1) x n`.
pub fn r_block<T: Field>(n: usize) -> Matrix<T> {
    assert!(n >= 1, "R_n needs n >= 1");
    Matrix::from_fn(n - 1, n, |i, j| if j == i + 1 { T::one() } else { T::zero() })
}

/// `Gamma_n`: anti-diagonal and the diagonal just below it, with signs
/// alternating upward from `+1` in the bottom row.
pub fn gamma<T: Field>(n: usize) -> Matrix<T> {
    Matrix::from_fn(n, n, |i, j| {
        let sign = if (n - 1 - i) % 2 == 0 { T::one() } else { T::one().neg_ref() };
        if i + j == n - 1 || (i >= 1 && i + j == n) {
            sign
        } else {
            T::zero()
        }
    })
}

/// `Delta_n`: ones on the anti-diagonal and `i` on the diagonal just below it.
pub fn delta<T: Field>(n: usize) -> Result<Matrix<T>, CoreError> {
    let i_unit = T::imag_unit().ok_or_else(|| CoreError::InvalidDescriptor("Delta blocks need an imaginary unit".into()))?;
    Ok(Matrix::from_fn(n, n, |r, c| {
        if r + c == n - 1 {
            T::one()
        } else if r >= 1 && r + c == n {
            i_unit.clone()
        } else {
            T::zero()
        }
    }))
}

/// `[[0, I_n], [J_n(lambda), 0]]`.
pub fn h_block<T: Field>(n: usize, lambda: &T) -> Matrix<T> {
    Matrix::from_blocks(&[
        vec![Matrix::zeros(n, n), Matrix::identity(n)],
        vec![jordan(n, lambda), Matrix::zeros(n, n)],
    ])
}

fn invalid(msg: impl Into<String>) -> CoreError {
    CoreError::InvalidDescriptor(msg.into())
}

fn positive(n: usize) -> Result<usize, CoreError> {
    if n == 0 {
        Err(invalid("block sizes start at 1"))
    } else {
        Ok(n)
    }
}

/// The matrix of an elementary divisor: the companion matrix over exact
/// domains, the Jordan block over floats (where the base is linear).
fn ed_matrix<T: Field>(ed: &ElementaryDivisor<T>) -> Result<Matrix<T>, CoreError> {
    positive(ed.exponent)?;
    if !ed.base.is_monic() || ed.base.deg() == 0 {
        return Err(invalid(format!("elementary divisor base {} must be monic of positive degree", ed.base)));
    }
    if T::EXACT {
        let factors = ed.base.factor()?;
        if factors.len() != 1 || factors[0].1 != 1 {
            return Err(invalid(format!("elementary divisor base {} is reducible", ed.base)));
        }
        Ok(ed.poly().companion())
    } else {
        let lambda = ed.eigenvalue().ok_or_else(|| invalid("float elementary divisors must be linear"))?;
        Ok(jordan(ed.exponent, &lambda))
    }
}

/// Representative of `{lambda, 1/lambda}`: the larger by modulus, then real part, then imaginary part.
pub(crate) fn reciprocal_representative<T: Field>(lambda: &T, tol: f64) -> T {
    let inv = lambda.inv().expect("nonzero eigenvalue");
    match lambda.modulus_cmp(&inv, tol) {
        Ordering::Greater => lambda.clone(),
        Ordering::Less => inv,
        Ordering::Equal => {
            // on the unit circle 1/lambda = conj(lambda): keep the nonnegative imaginary part
            let (a, b) = (lambda.to_c64(), inv.to_c64());
            let scale = a.norm().max(1.0);
            let order = if T::EXACT {
                lambda.total_cmp(&inv)
            } else if (a.re - b.re).abs() > tol * scale {
                a.re.total_cmp(&b.re)
            } else if (a.im - b.im).abs() > tol * scale {
                a.im.total_cmp(&b.im)
            } else {
                Ordering::Equal
            };
            if order == Ordering::Less {
                inv
            } else {
                lambda.clone()
            }
        }
    }
}

/// `(-1)^(n+1)`.
pub(crate) fn gamma_eigenvalue<T: Field>(n: usize) -> T {
    if n % 2 == 1 {
        T::one()
    } else {
        T::one().neg_ref()
    }
}

/// Builds the literal matrices of a block, checking its invariants.
pub fn build_block<T: Field>(b: &Block<T>, tol: f64) -> Result<BlockMatrices<T>, CoreError> {
    Ok(match b {
        Block::Equivalence(EquivBlock::Identity) => vec![Matrix::identity(1)],
        Block::Equivalence(EquivBlock::ZeroToField) => vec![Matrix::zeros(1, 0)],
        Block::Equivalence(EquivBlock::FieldToZero) => vec![Matrix::zeros(0, 1)],
        Block::Similarity(ed) => vec![ed_matrix(ed)?],
        Block::Pencil(PencilBlock::Regular(ed)) | Block::Contragredient(ContraBlock::Regular(ed)) => {
            let c = ed_matrix(ed)?;
            vec![Matrix::identity(c.rows()), c]
        }
        Block::Pencil(PencilBlock::Infinite(n)) | Block::Contragredient(ContraBlock::Nilpotent(n)) => {
            vec![jordan(positive(*n)?, &T::zero()), Matrix::identity(*n)]
        }
        Block::Pencil(PencilBlock::ColumnMinimal(n)) => vec![l_block(positive(*n)?), r_block(*n)],
        Block::Pencil(PencilBlock::RowMinimal(n)) => vec![l_block(positive(*n)?).transpose(), r_block(*n).transpose()],
        Block::Contragredient(ContraBlock::ColumnChain(n)) => vec![l_block(positive(*n)?), r_block(*n).transpose()],
        Block::Contragredient(ContraBlock::RowChain(n)) => vec![l_block(positive(*n)?).transpose(), r_block(*n)],
        Block::Congruence(CongruenceBlock::H { size, lambda }) => {
            positive(*size)?;
            if lambda.is_negligible(tol) || lambda.approx_eq(&gamma_eigenvalue(*size), tol) {
                return Err(invalid(format!("H_{size}({lambda}) needs 0 != lambda != (-1)^(n+1)")));
            }
            if !reciprocal_representative(lambda, tol).approx_eq(lambda, tol) {
                return Err(invalid(format!("H_{size}({lambda}): use the representative of lambda and 1/lambda")));
            }
            vec![h_block(*size, lambda)]
        }
        Block::Congruence(CongruenceBlock::Gamma(n)) => vec![gamma(positive(*n)?)],
        Block::Congruence(CongruenceBlock::JZero(n)) | Block::StarCongruence(StarBlock::JZero(n)) => {
            vec![jordan(positive(*n)?, &T::zero())]
        }
        Block::StarCongruence(StarBlock::H { size, lambda }) => {
            positive(*size)?;
            if lambda.modulus_cmp(&T::one(), tol) != Ordering::Greater {
                return Err(invalid(format!("H_{size}({lambda}) needs |lambda| > 1")));
            }
            vec![h_block(*size, lambda)]
        }
        Block::StarCongruence(StarBlock::Delta { size, nu, sign }) => {
            positive(*size)?;
            if nu.modulus_cmp(&T::one(), tol) != Ordering::Equal || !matches!(sign, 1 | -1) {
                return Err(invalid("Delta blocks need |nu| = 1 and sign +-1"));
            }
            // a scalar c with c / conj(c) = nu and c a positive multiple of sqrt(nu)
            let c = match principal_sqrt(nu) {
                Some(r) => r,
                None => nu.add_ref(&T::one()),
            };
            let c = if *sign < 0 { c.neg_ref() } else { c };
            vec![delta::<T>(*size)?.scale(&c)]
        }
        Block::RealSymmetric(s) => {
            if T::imag_unit().is_some() && T::EXACT {
                return Err(invalid("real symmetric blocks live over the rationals or floats"));
            }
            let v = match s {
                SignBlock::Plus => T::one(),
                SignBlock::Minus => T::one().neg_ref(),
                SignBlock::Zero => T::zero(),
            };
            vec![Matrix::scalar(1, &v)]
        }
    })
}
