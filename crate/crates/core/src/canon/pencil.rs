//! Matrix pencils `(A, B) -> (R^-1 A S, R^-1 B S)`, read as `x A - B`.
//!
//! Minimal indices come from kernel dimensions of block Toeplitz matrices,
//! finite elementary divisors from the Smith form of `x A - B` (exact) or from
//! clustered eigenvalues of a random square projection (float), and infinite
//! elementary divisors from the Jordan structure of the swapped pencil at zero.

use qf_algebra::{pencil_invariant_factors, AlgebraError, Field, Matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::spectrum::{cluster_spectrum, column_minimal_indices, elementary_divisors, jordan_sizes};
use super::{Block, CanonOptions, Decomposition, ElementaryDivisor, PencilBlock, Problem};
use crate::error::CoreError;

/// Kronecker invariants of a pencil.
pub(crate) struct Kronecker<T> {
    pub finite: Vec<ElementaryDivisor<T>>,
    pub infinite: Vec<usize>,
    /// Column minimal indices `eps` (block `L_{eps+1}`).
    pub column: Vec<usize>,
    /// Row minimal indices.
    pub row: Vec<usize>,
}

fn random_scalar<T: Field>(rng: &mut ChaCha8Rng) -> T {
    let re = T::from_i64(rng.gen_range(-1000..=1000)).div_ref(&T::from_i64(97));
    match T::imag_unit() {
        Some(i) => re.add_ref(&i.mul_ref(&T::from_i64(rng.gen_range(-1000..=1000)).div_ref(&T::from_i64(89)))),
        None => re,
    }
}

fn random_matrix<T: Field>(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix<T> {
    Matrix::from_fn(rows, cols, |_, _| random_scalar(rng))
}

fn float_normal_rank<T: Field>(a: &Matrix<T>, b: &Matrix<T>, tol: f64, rng: &mut ChaCha8Rng) -> usize {
    (0..3).map(|_| a.scale(&random_scalar(rng)).sub(b).rank(tol)).max().unwrap_or(0)
}

pub(crate) fn kronecker<T: Field>(a: &Matrix<T>, b: &Matrix<T>, opts: &CanonOptions) -> Result<Kronecker<T>, CoreError> {
    if a.shape() != b.shape() {
        return Err(CoreError::invalid("pencil matrices must have the same shape"));
    }
    let (m, n) = a.shape();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (r, invariants) = if T::EXACT {
        let inv = pencil_invariant_factors(a, b)?;
        (inv.len(), Some(inv))
    } else {
        (float_normal_rank(a, b, opts.tol, &mut rng), None)
    };
    let column = column_minimal_indices(a, b, n - r, opts.tol);
    let row = column_minimal_indices(&a.transpose(), &b.transpose(), m - r, opts.tol);
    if column.len() != n - r || row.len() != m - r {
        return Err(CoreError::InternalInconsistency("minimal indices do not match the normal rank".into()));
    }
    let regular = n - column.iter().map(|e| e + 1).sum::<usize>() - row.iter().sum::<usize>();
    let ncol = column.len();
    let (finite, infinite) = match invariants {
        Some(inv) => {
            let finite = elementary_divisors(&inv)?;
            let fin: usize = finite.iter().map(ElementaryDivisor::size).sum();
            let inf_total = regular.checked_sub(fin).ok_or_else(|| CoreError::InternalInconsistency("regular part too small".into()))?;
            let infinite = if inf_total == 0 { Vec::new() } else { jordan_sizes(b, a, &T::zero(), ncol, inf_total, opts.tol) };
            if infinite.iter().sum::<usize>() != inf_total {
                return Err(CoreError::InternalInconsistency("infinite elementary divisors do not fill the regular part".into()));
            }
            (finite, infinite)
        }
        None => {
            let infinite = if regular == 0 { Vec::new() } else { jordan_sizes(b, a, &T::zero(), ncol, regular, opts.tol) };
            let fin = regular - infinite.iter().sum::<usize>().min(regular);
            let finite = float_finite(a, b, r, ncol, fin, infinite.iter().sum(), opts, &mut rng)?;
            (finite, infinite)
        }
    };
    Ok(Kronecker { finite, infinite, column, row })
}

/// Finite eigenvalues of a float pencil through a random `r x r` projection
/// `U (x A - B) V`, whose spectrum contains the true eigenvalues.
///
/// The projection keeps every infinite elementary divisor, so the
/// `infinite_total` candidates closest to infinity are discarded first.
#[allow(clippy::too_many_arguments)]
fn float_finite<T: Field>(
    a: &Matrix<T>,
    b: &Matrix<T>,
    r: usize,
    ncol: usize,
    expected: usize,
    infinite_total: usize,
    opts: &CanonOptions,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<ElementaryDivisor<T>>, CoreError> {
    if expected == 0 {
        return Ok(Vec::new());
    }
    let (m, n) = a.shape();
    let square = m == n && r == n;
    for _ in 0..4 {
        let (pa, pb) = if square {
            (a.clone(), b.clone())
        } else {
            let u = random_matrix::<T>(r, m, rng);
            let v = random_matrix::<T>(n, r, rng);
            (u.mul(a).mul(&v), u.mul(b).mul(&v))
        };
        // eigenvalues mu of (sigma pa - pb)^-1 pa give lambda = sigma - 1/mu
        let sigma = random_scalar::<T>(rng);
        let Ok(shifted) = pa.scale(&sigma).sub(&pb).inverse(opts.tol) else { continue };
        let mut mus = shifted.mul(&pa).eigenvalues()?;
        mus.sort_by(|x, y| y.to_c64().norm().total_cmp(&x.to_c64().norm()));
        mus.truncate(r.saturating_sub(infinite_total));
        let top = mus.iter().fold(0.0f64, |s, x| s.max(x.to_c64().norm()));
        let candidates: Vec<T> = mus
            .iter()
            .filter(|mu| mu.to_c64().norm() > 1e-7 * top.max(1e-300))
            .map(|mu| sigma.sub_ref(&mu.inv().expect("nonzero")))
            .collect();
        if let Some(found) = cluster_spectrum(a, b, &candidates, ncol, expected, !square, opts) {
            return Ok(found
                .into_iter()
                .flat_map(|(mu, sizes)| sizes.into_iter().map(move |s| ElementaryDivisor::linear(&mu, s)))
                .collect());
        }
    }
    Err(CoreError::Algebra(AlgebraError::NoConvergence("pencil eigenvalue clustering".into())))
}

/// Kronecker canonical form of the pencil `x A - B`.
pub fn canon_pencil<T: Field>(a: &Matrix<T>, b: &Matrix<T>, opts: &CanonOptions) -> Result<Decomposition<T>, CoreError> {
    let k = kronecker(a, b, opts)?;
    let blocks = k
        .finite
        .into_iter()
        .map(PencilBlock::Regular)
        .chain(k.infinite.into_iter().map(PencilBlock::Infinite))
        .chain(k.column.into_iter().map(|e| PencilBlock::ColumnMinimal(e + 1)))
        .chain(k.row.into_iter().map(|e| PencilBlock::RowMinimal(e + 1)))
        .map(Block::Pencil)
        .collect();
    Decomposition::new(Problem::Pencil, blocks)
}
