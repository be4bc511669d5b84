//! Equivalence `A -> R^-1 A S`: the rank decides everything.

use qf_algebra::{Field, Matrix};

use super::{Block, CanonOptions, Decomposition, EquivBlock, Problem};

/// `rank(A)` identity blocks, `rows - rank` blocks `0 -> F` and `cols - rank` blocks `F -> 0`.
pub fn canon_equivalence<T: Field>(a: &Matrix<T>, opts: &CanonOptions) -> Decomposition<T> {
    let r = a.rank(opts.tol);
    let blocks = std::iter::repeat_n(EquivBlock::Identity, r)
        .chain(std::iter::repeat_n(EquivBlock::ZeroToField, a.rows() - r))
        .chain(std::iter::repeat_n(EquivBlock::FieldToZero, a.cols() - r))
        .map(Block::Equivalence)
        .collect();
    Decomposition::new(Problem::Equivalence, blocks).expect("equivalence blocks")
}

#[cfg(test)]
mod tests {
    use super::*;
    use qf_algebra::Rational;

    fn count(d: &Decomposition<Rational>, b: EquivBlock) -> usize {
        d.blocks().iter().filter(|x| **x == Block::Equivalence(b)).count()
    }

    #[test]
    fn examples() {
        let o = CanonOptions::default();
        let d = canon_equivalence(&Matrix::<Rational>::from_i64_rows(&[&[1, 2], &[2, 4]]), &o);
        assert_eq!([count(&d, EquivBlock::Identity), count(&d, EquivBlock::ZeroToField), count(&d, EquivBlock::FieldToZero)], [1, 1, 1]);
        let d = canon_equivalence(&Matrix::<Rational>::identity(3), &o);
        assert_eq!(count(&d, EquivBlock::Identity), 3);
        let d = canon_equivalence(&Matrix::<Rational>::zeros(2, 3), &o);
        assert_eq!([count(&d, EquivBlock::ZeroToField), count(&d, EquivBlock::FieldToZero)], [2, 3]);
    }
}
