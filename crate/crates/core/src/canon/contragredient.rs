//! Contragredient pairs `A: V1 -> V2`, `B: V2 -> V1` under `(R^-1 A S, S^-1 B R)`.
//!
//! On the part where `BA` is invertible the pair is determined by the
//! elementary divisors of `BA` with nonzero root. The rest decomposes into
//! strings `v -> Av -> BAv -> ...` that alternate between the two vertices;
//! their number by length and start vertex is read off the ranks of the
//! alternating words `A, BA, ABA, ...` and `B, AB, BAB, ...`.

use qf_algebra::{Field, Matrix};

use super::similarity::similarity_divisors;
use super::spectrum::is_zero_eigenvalue;
use super::{Block, CanonOptions, ContraBlock, Decomposition, ElementaryDivisor, Problem};
use crate::error::CoreError;

/// Ranks of the alternating words starting at vertex `start` (0 or 1), for lengths `0..=len`.
fn word_ranks<T: Field>(maps: [&Matrix<T>; 2], dims: [usize; 2], start: usize, len: usize, tol: f64) -> Vec<usize> {
    let mut ranks = vec![dims[start]];
    let mut word = Matrix::identity(dims[start]);
    let mut at = start;
    for _ in 0..len {
        word = maps[at].mul(&word);
        at = 1 - at;
        ranks.push(word.rank(tol));
    }
    ranks
}

pub fn canon_contragredient<T: Field>(a: &Matrix<T>, b: &Matrix<T>, opts: &CanonOptions) -> Result<Decomposition<T>, CoreError> {
    if a.rows() != b.cols() || a.cols() != b.rows() {
        return Err(CoreError::invalid("contragredient pairs need A: p x q and B: q x p"));
    }
    let dims = [a.cols(), a.rows()];
    let total = dims[0] + dims[1];
    let len = total + 2;
    let ranks = [word_ranks([a, b], dims, 0, len, opts.tol), word_ranks([a, b], dims, 1, len, opts.tol)];
    // elements at vertex s with exactly l successors
    let exact = |s: usize, l: usize| ranks[s][l].saturating_sub(ranks[s][l + 1]);
    // strings with at least l+1 elements ending at vertex e
    let ending = |e: usize, l: usize| if l % 2 == 0 { exact(e, l) } else { exact(1 - e, l) };
    let mut blocks = Vec::new();
    let mut nil_dim = 0;
    for l in 1..=total {
        for e in 0..2 {
            let count = ending(e, l - 1).saturating_sub(ending(e, l));
            let start = if l % 2 == 1 { e } else { 1 - e };
            let n = l.div_ceil(2);
            let block = match (l % 2, start) {
                (0, 0) => ContraBlock::Regular(ElementaryDivisor::new(qf_algebra::Poly::x(), n)),
                (0, _) => ContraBlock::Nilpotent(n),
                (_, 0) => ContraBlock::ColumnChain(n),
                _ => ContraBlock::RowChain(n),
            };
            nil_dim += count * l;
            blocks.extend(std::iter::repeat_n(Block::Contragredient(block), count));
        }
    }
    let invertible = ranks[0][len];
    if nil_dim + 2 * invertible != total || ranks[1][len] != invertible {
        return Err(CoreError::InternalInconsistency("alternating word ranks do not add up".into()));
    }
    if invertible > 0 {
        let ba = b.mul(a);
        let scale = ba.max_abs().max(1.0);
        let nonzero: Vec<ElementaryDivisor<T>> = similarity_divisors(&ba, opts)?
            .into_iter()
            .filter(|ed| match ed.eigenvalue() {
                Some(mu) => !is_zero_eigenvalue(&mu, scale),
                None => true,
            })
            .collect();
        if nonzero.iter().map(ElementaryDivisor::size).sum::<usize>() != invertible {
            return Err(CoreError::InternalInconsistency("invertible part of BA has the wrong size".into()));
        }
        blocks.extend(nonzero.into_iter().map(|ed| Block::Contragredient(ContraBlock::Regular(ed))));
    }
    Decomposition::new(Problem::Contragredient, blocks)
}
