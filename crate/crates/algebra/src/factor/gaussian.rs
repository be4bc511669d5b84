//! Factorization over the Gaussian rationals via squarefree norms.
//!
//! For a squarefree `f` and a shift `s`, put `f_s(x) = f(x + s i)` and
//! `N(x) = f_s(x) * conj(f_s)(x)`, a rational polynomial. When `N` is
//! squarefree, the irreducible factors of `f_s` are `gcd(f_s, h)` for the
//! rational irreducible factors `h` of `N`.

use num_rational::BigRational;
use num_traits::Zero;

use super::rational;
use crate::error::AlgebraError;
use crate::gaussian::GaussianRational;
use crate::poly::Poly;
use crate::rational::Rational;
use crate::scalar::Field;

const SHIFTS: [i64; 13] = [0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6, -6];

fn to_gaussian(p: &Poly<Rational>) -> Poly<GaussianRational> {
    Poly::new(p.coeffs().iter().map(|c| GaussianRational::from(c.clone())).collect())
}

fn to_rational(p: &Poly<GaussianRational>) -> Option<Poly<Rational>> {
    p.coeffs()
        .iter()
        .map(|c| c.im.is_zero().then(|| Rational(c.re.clone())))
        .collect::<Option<Vec<_>>>()
        .map(Poly::new)
}

pub(crate) fn factor_squarefree(p: &Poly<GaussianRational>) -> Result<Vec<Poly<GaussianRational>>, AlgebraError> {
    let f = p.monic();
    if f.deg() == 0 {
        return Ok(Vec::new());
    }
    if f.deg() == 1 {
        return Ok(vec![f]);
    }
    for s in SHIFTS {
        let shift = GaussianRational::new(BigRational::zero(), BigRational::from_integer(s.into()));
        let fs = f.shift(&shift);
        let norm = to_rational(&fs.mul(&fs.conj())).expect("norm has rational coefficients");
        if norm.gcd(&norm.derivative()).deg() > 0 {
            continue;
        }
        let mut out = Vec::new();
        for h in rational::factor_squarefree(&norm)? {
            let g = fs.gcd(&to_gaussian(&h));
            if g.deg() > 0 {
                out.push(g.shift(&shift.neg_ref()));
            }
        }
        out.sort_by(|a, b| a.total_cmp(b));
        debug_assert_eq!(out.iter().fold(Poly::one(), |acc, g| acc.mul(g)), f);
        return Ok(out);
    }
    Err(AlgebraError::FactorizationIncomplete(
        "no shift produced a squarefree norm".into(),
    ))
}
