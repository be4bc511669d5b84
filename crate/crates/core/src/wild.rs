//! Embeddings that carry one classification problem into another while
//! preserving and reflecting isomorphism: matrix pairs into pairs of commuting
//! nilpotent matrices, and representations of a six-arrow quiver into matrix pairs.

use qf_algebra::{Field, Matrix};

use crate::error::CoreError;
use crate::graph::MixedGraph;
use crate::rep::Representation;

/// A pair of square matrices of one size, up to simultaneous similarity.
#[derive(Clone, PartialEq)]
pub struct MatrixPair<T> {
    pub first: Matrix<T>,
    pub second: Matrix<T>,
}

impl<T: Field> std::fmt::Debug for MatrixPair<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MatrixPair").field("first", &self.first).field("second", &self.second).finish()
    }
}

/// The `4n x 4n` commuting nilpotent pair attached to `(A, B)`:
///
/// ```text
/// [0 I 0 0]   [0 A 0 I]
/// [0 0 I 0]   [0 0 A 0]
/// [0 0 0 0]   [0 0 0 0]
/// [0 0 0 0]   [0 0 B 0]
/// ```
pub fn embed_pair_to_commuting_nilpotent<T: Field>(a: &Matrix<T>, b: &Matrix<T>) -> Result<MatrixPair<T>, CoreError> {
    if !a.is_square() || a.shape() != b.shape() {
        return Err(CoreError::invalid("the pair must consist of square matrices of one size"));
    }
    let n = a.rows();
    let id = Matrix::identity(n);
    let mut first = Matrix::zeros(4 * n, 4 * n);
    first.set_block(0, n, &id);
    first.set_block(n, 2 * n, &id);
    let mut second = Matrix::zeros(4 * n, 4 * n);
    second.set_block(0, n, a);
    second.set_block(n, 2 * n, a);
    second.set_block(0, 3 * n, &id);
    second.set_block(3 * n, 2 * n, b);
    Ok(MatrixPair { first, second })
}

/// The block-diagonal similarity `diag(S, S, S, S)` that carries the embedding
/// of `(A, B)` to the embedding of `(S A S^-1, S B S^-1)`.
pub fn induced_similarity<T: Field>(s: &Matrix<T>) -> Matrix<T> {
    Matrix::block_diag(&[s.clone(), s.clone(), s.clone(), s.clone()])
}

/// The pair attached to a representation of [`MixedGraph::six_arrow`] with
/// dimensions `(p, q, r)` and distinct scalars `(alpha, beta, gamma, delta)`:
///
/// ```text
/// diag(alpha I_p, beta I_q, gamma I_r, delta I_r),  [A 0 0   0]
///                                                   [B 0 0   0]
///                                                   [C 0 0   0]
///                                                   [D E I_r F]
/// ```
pub fn embed_quiver_rep_to_pair<T: Field>(rep: &Representation<T>, scalars: &[T; 4], tol: f64) -> Result<MatrixPair<T>, CoreError> {
    if rep.graph() != &MixedGraph::six_arrow() {
        return Err(CoreError::GraphMismatch);
    }
    let tol = if T::EXACT { 0.0 } else { tol };
    for i in 0..4 {
        for j in i + 1..4 {
            if scalars[i].approx_eq(&scalars[j], tol) {
                return Err(CoreError::ScalarsNotDistinct);
            }
        }
    }
    let (p, q, r) = (rep.dims()[0], rep.dims()[1], rep.dims()[2]);
    let [a, b, c, d, e, f] = [0, 1, 2, 3, 4, 5].map(|k| &rep.maps()[k]);
    let first = Matrix::block_diag(&[
        Matrix::scalar(p, &scalars[0]),
        Matrix::scalar(q, &scalars[1]),
        Matrix::scalar(r, &scalars[2]),
        Matrix::scalar(r, &scalars[3]),
    ]);
    let total = p + q + 2 * r;
    let mut second = Matrix::zeros(total, total);
    second.set_block(0, 0, a);
    second.set_block(p, 0, b);
    second.set_block(p + q, 0, c);
    let last = p + q + r;
    second.set_block(last, 0, d);
    second.set_block(last, p, e);
    second.set_block(last, p + q, &Matrix::identity(r));
    second.set_block(last, p + q + r, f);
    Ok(MatrixPair { first, second })
}

/// The similarity `diag(S_1, S_2, S_3, S_3)` induced by an isomorphism `(S_1, S_2, S_3)`.
pub fn induced_quiver_similarity<T: Field>(s: &[Matrix<T>]) -> Result<Matrix<T>, CoreError> {
    match s {
        [s1, s2, s3] => Ok(Matrix::block_diag(&[s1.clone(), s2.clone(), s3.clone(), s3.clone()])),
        _ => Err(CoreError::invalid("need one change of basis per vertex")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qf_algebra::Rational;

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_i64_rows(rows)
    }

    #[test]
    fn scalar_pair() {
        let z = q(&[&[0]]);
        let p = embed_pair_to_commuting_nilpotent(&z, &z).unwrap();
        assert_eq!(p.first, q(&[&[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]));
        assert_eq!(p.second, q(&[&[0, 0, 0, 1], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]));
        let a = q(&[&[1, 2], &[3, 4]]);
        let b = q(&[&[0, -1], &[5, 2]]);
        let p = embed_pair_to_commuting_nilpotent(&a, &b).unwrap();
        assert_eq!(p.first.mul(&p.second), p.second.mul(&p.first));
        assert!(p.first.pow(4).is_zero() && p.second.pow(4).is_zero());
    }

    #[test]
    fn zero_six_arrow_rep() {
        let rep = Representation::zero(MixedGraph::six_arrow(), vec![1, 1, 1]).unwrap();
        let s = [1, 2, 3, 4].map(Rational::from_i64);
        let p = embed_quiver_rep_to_pair(&rep, &s, 0.0).unwrap();
        assert_eq!(p.first, Matrix::diagonal(&s));
        assert_eq!(p.second, q(&[&[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 1, 0]]));
        let same = [1, 2, 3, 1].map(Rational::from_i64);
        assert_eq!(embed_quiver_rep_to_pair(&rep, &same, 0.0).unwrap_err(), CoreError::ScalarsNotDistinct);
    }
}
