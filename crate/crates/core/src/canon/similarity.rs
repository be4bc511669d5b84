//! Similarity `A -> S^-1 A S`: elementary divisors of `xI - A`.

use qf_algebra::{pencil_invariant_factors, Field, Matrix};

use super::spectrum::{cluster_spectrum, elementary_divisors};
use super::{Block, CanonOptions, Decomposition, ElementaryDivisor, Problem};
use crate::error::CoreError;

/// Elementary divisors of `xI - a`; over floats, Jordan data by eigenvalue clustering.
pub(crate) fn similarity_divisors<T: Field>(a: &Matrix<T>, opts: &CanonOptions) -> Result<Vec<ElementaryDivisor<T>>, CoreError> {
    if !a.is_square() {
        return Err(CoreError::invalid("similarity needs a square matrix"));
    }
    if T::EXACT {
        return elementary_divisors(&pencil_invariant_factors(&Matrix::identity(a.rows()), a)?);
    }
    let n = a.rows();
    let id = Matrix::identity(n);
    let ev = a.eigenvalues()?;
    let found = cluster_spectrum(&id, a, &ev, 0, n, false, opts)
        .ok_or_else(|| CoreError::Algebra(qf_algebra::AlgebraError::NoConvergence("eigenvalue clustering".into())))?;
    Ok(found
        .into_iter()
        .flat_map(|(mu, sizes)| sizes.into_iter().map(move |s| ElementaryDivisor::linear(&mu, s)))
        .collect())
}

/// Companion blocks of the elementary divisors of `xI - A`.
pub fn canon_similarity<T: Field>(a: &Matrix<T>, opts: &CanonOptions) -> Result<Decomposition<T>, CoreError> {
    let blocks = similarity_divisors(a, opts)?.into_iter().map(Block::Similarity).collect();
    Decomposition::new(Problem::Similarity, blocks)
}
