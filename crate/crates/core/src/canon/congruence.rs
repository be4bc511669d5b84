//! Congruence `A -> S^T A S`, *congruence `A -> S^H A S`, and real symmetric forms.
//!
//! A form `A` is classified through the pencil `x A* - A` (with `A* = A^T` or
//! `A^H`), whose regular part carries the elementary divisors of the cosquare
//! `A^-* A`. Singular blocks `J_n(0)` show up as paired minimal indices or as
//! paired zero and infinite elementary divisors. Under *congruence the blocks
//! with unimodular cosquare eigenvalue also carry a sign, recovered from the
//! sign characteristic of a Hermitian pair built on each eigenspace.

use std::cmp::Ordering;

use qf_algebra::{inertia, linalg::preimage, Field, Matrix, Poly};

use super::blocks::{delta, gamma_eigenvalue, reciprocal_representative};
use super::pencil::kronecker;
use super::spectrum::{is_zero_eigenvalue, kernel_of_dim};
use super::{
    Block, CanonOptions, CongruenceBlock, Decomposition, ElementaryDivisor, PencilBlock, Problem, SignBlock, StarBlock,
};
use crate::error::CoreError;

fn inconsistent(msg: &str) -> CoreError {
    CoreError::InternalInconsistency(msg.into())
}

/// Pencil blocks of `x A^T - A` for a congruence block `A`.
pub fn congruence_fingerprint<T: Field>(b: &CongruenceBlock<T>) -> Vec<PencilBlock<T>> {
    match b {
        CongruenceBlock::H { size, lambda } => {
            let inv = lambda.inv().unwrap_or_else(T::zero);
            vec![
                PencilBlock::Regular(ElementaryDivisor::linear(lambda, *size)),
                PencilBlock::Regular(ElementaryDivisor::linear(&inv, *size)),
            ]
        }
        CongruenceBlock::Gamma(n) => vec![PencilBlock::Regular(ElementaryDivisor::linear(&gamma_eigenvalue(*n), *n))],
        CongruenceBlock::JZero(n) => zero_fingerprint(*n),
    }
}

/// Pencil blocks of `x A^H - A` for a *congruence block `A`.
pub fn star_fingerprint<T: Field>(b: &StarBlock<T>) -> Vec<PencilBlock<T>> {
    match b {
        StarBlock::H { size, lambda } => {
            let inv = lambda.conj().inv().unwrap_or_else(T::zero);
            vec![
                PencilBlock::Regular(ElementaryDivisor::linear(lambda, *size)),
                PencilBlock::Regular(ElementaryDivisor::linear(&inv, *size)),
            ]
        }
        StarBlock::Delta { size, nu, .. } => vec![PencilBlock::Regular(ElementaryDivisor::linear(nu, *size))],
        StarBlock::JZero(n) => zero_fingerprint(*n),
    }
}

/// `J_{2k-1}(0)` gives a pair of minimal indices; `J_{2k}(0)` gives `x^k` and an infinite divisor of degree `k`.
fn zero_fingerprint<T: Field>(n: usize) -> Vec<PencilBlock<T>> {
    let k = n.div_ceil(2);
    if n % 2 == 1 {
        vec![PencilBlock::ColumnMinimal(k), PencilBlock::RowMinimal(k)]
    } else {
        vec![PencilBlock::Regular(ElementaryDivisor::new(Poly::x(), k)), PencilBlock::Infinite(k)]
    }
}

/// Cosquare data of a form: sizes of its `J_n(0)` blocks and the nonzero
/// eigenvalues of its cosquare with their Jordan sizes.
struct Cosquare<T> {
    zero: Vec<usize>,
    eigen: Vec<(T, usize)>,
    pencil: Decomposition<T>,
}

fn cosquare<T: Field>(a: &Matrix<T>, star: &Matrix<T>, opts: &CanonOptions) -> Result<Cosquare<T>, CoreError> {
    let k = kronecker(star, a, opts)?;
    let pencil = Decomposition::new(
        Problem::Pencil,
        k.finite
            .iter()
            .cloned()
            .map(PencilBlock::Regular)
            .chain(k.infinite.iter().map(|&n| PencilBlock::Infinite(n)))
            .chain(k.column.iter().map(|&e| PencilBlock::ColumnMinimal(e + 1)))
            .chain(k.row.iter().map(|&e| PencilBlock::RowMinimal(e + 1)))
            .map(Block::Pencil)
            .collect(),
    )?;
    let (mut column, mut row) = (k.column, k.row);
    column.sort_unstable();
    row.sort_unstable();
    if column != row {
        return Err(inconsistent("column and row minimal indices of a form pencil must agree"));
    }
    let mut zero: Vec<usize> = column.iter().map(|e| 2 * e + 1).collect();
    let mut eigen = Vec::new();
    let mut finite_zero = Vec::new();
    for ed in k.finite {
        if ed.base == Poly::x() {
            finite_zero.push(ed.exponent);
            continue;
        }
        let Some(mu) = ed.eigenvalue() else {
            return Err(CoreError::EigenvalueNotRepresentable(format!(
                "cosquare eigenvalue with minimal polynomial {} is outside the domain",
                ed.base
            )));
        };
        if is_zero_eigenvalue(&mu, 1.0) {
            finite_zero.push(ed.exponent);
        } else {
            eigen.push((mu, ed.exponent));
        }
    }
    let mut infinite = k.infinite;
    finite_zero.sort_unstable();
    infinite.sort_unstable();
    if finite_zero != infinite {
        return Err(inconsistent("zero and infinite elementary divisors of a form pencil must pair up"));
    }
    zero.extend(infinite.iter().map(|k| 2 * k));
    eigen.sort_by(|x, y| y.1.cmp(&x.1).then_with(|| x.0.total_cmp(&y.0)));
    Ok(Cosquare { zero, eigen, pencil })
}

/// Tolerance for matching eigenvalues that were computed separately.
fn match_tol<T: Field>(opts: &CanonOptions) -> f64 {
    if T::EXACT {
        0.0
    } else {
        opts.cluster_tol.sqrt()
    }
}

fn close<T: Field>(a: &T, b: &T, tol: f64) -> bool {
    a.approx_eq(b, tol * a.to_c64().norm().max(1.0))
}

/// Removes an eigenvalue of the given size close to `target` from `rest`.
fn take_partner<T: Field>(rest: &mut Vec<(T, usize)>, target: &T, size: usize, tol: f64) -> bool {
    match rest.iter().position(|(mu, s)| *s == size && close(mu, target, tol)) {
        Some(k) => {
            rest.remove(k);
            true
        }
        None => false,
    }
}

fn check_fingerprint<T: Field>(pencil: &Decomposition<T>, parts: Vec<PencilBlock<T>>, tol: f64) -> Result<(), CoreError> {
    let rebuilt = Decomposition::new(Problem::Pencil, parts.into_iter().map(Block::Pencil).collect())?;
    if rebuilt.approx_eq(pencil, tol.max(1e-12)) {
        Ok(())
    } else {
        Err(inconsistent("decoded blocks do not reproduce the pencil of the form"))
    }
}

fn square<T: Field>(a: &Matrix<T>) -> Result<(), CoreError> {
    if a.is_square() {
        Ok(())
    } else {
        Err(CoreError::invalid("forms are given by square matrices"))
    }
}

/// Canonical form of a bilinear form under congruence `S^T A S`.
pub fn canon_congruence<T: Field>(a: &Matrix<T>, opts: &CanonOptions) -> Result<Decomposition<T>, CoreError> {
    square(a)?;
    let tol = match_tol::<T>(opts);
    let data = cosquare(a, &a.transpose(), opts)?;
    let mut blocks: Vec<CongruenceBlock<T>> = data.zero.iter().map(|&n| CongruenceBlock::JZero(n)).collect();
    let mut rest = data.eigen;
    while !rest.is_empty() {
        let (mu, n) = rest.remove(0);
        if close(&mu, &gamma_eigenvalue(n), tol) {
            blocks.push(CongruenceBlock::Gamma(n));
            continue;
        }
        let inv = mu.inv().ok_or_else(|| inconsistent("zero cosquare eigenvalue"))?;
        if !take_partner(&mut rest, &inv, n, tol) {
            return Err(inconsistent("cosquare eigenvalue without its reciprocal"));
        }
        blocks.push(CongruenceBlock::H { size: n, lambda: reciprocal_representative(&mu, tol) });
    }
    check_fingerprint(&data.pencil, blocks.iter().flat_map(congruence_fingerprint).collect(), tol)?;
    Decomposition::new(Problem::Congruence, blocks.into_iter().map(Block::Congruence).collect())
}

/// Canonical form of a sesquilinear form under *congruence `S^H A S`.
pub fn canon_star_congruence<T: Field>(a: &Matrix<T>, opts: &CanonOptions) -> Result<Decomposition<T>, CoreError> {
    square(a)?;
    if T::imag_unit().is_none() {
        return Err(CoreError::UnsupportedDomain("*congruence needs a domain with an imaginary unit".into()));
    }
    let tol = match_tol::<T>(opts);
    let data = cosquare(a, &a.conj_transpose(), opts)?;
    let mut blocks: Vec<StarBlock<T>> = data.zero.iter().map(|&n| StarBlock::JZero(n)).collect();
    // unimodular eigenvalues grouped with their Jordan sizes
    let mut unit: Vec<(T, Vec<usize>)> = Vec::new();
    let mut rest = data.eigen;
    while !rest.is_empty() {
        let (mu, n) = rest.remove(0);
        match mu.modulus_cmp(&T::one(), tol) {
            Ordering::Equal => match unit.iter_mut().find(|(nu, _)| close(nu, &mu, tol)) {
                Some((_, sizes)) => sizes.push(n),
                None => unit.push((mu, vec![n])),
            },
            _ => {
                let partner = mu.conj().inv().ok_or_else(|| inconsistent("zero cosquare eigenvalue"))?;
                if !take_partner(&mut rest, &partner, n, tol) {
                    return Err(inconsistent("cosquare eigenvalue without its conjugate reciprocal"));
                }
                let lambda = if mu.modulus_cmp(&T::one(), tol) == Ordering::Greater { mu } else { partner };
                blocks.push(StarBlock::H { size: n, lambda });
            }
        }
    }
    if !unit.is_empty() {
        let regular: usize = a.rows() - data.zero.iter().sum::<usize>();
        let b = nonsingular_part(a, regular, opts.tol)?;
        for (nu, sizes) in unit {
            for (size, sign) in sign_characteristic(&b, &nu, &sizes, opts)? {
                blocks.push(StarBlock::Delta { size, nu: nu.clone(), sign });
            }
        }
    }
    check_fingerprint(&data.pencil, blocks.iter().flat_map(star_fingerprint).collect(), tol)?;
    Decomposition::new(Problem::StarCongruence, blocks.into_iter().map(Block::StarCongruence).collect())
}

/// A nonsingular form `*congruent` to the summand of `a` without `J_n(0)` blocks.
///
/// The limit `V` of `V_0 = F^n`, `V_{i+1} = {x : A x in A^H V_i}` contains the
/// nonsingular summand and meets each `J_n(0)` summand in a totally isotropic
/// subspace, so dropping the radical of `A` restricted to `V` leaves that summand.
fn nonsingular_part<T: Field>(a: &Matrix<T>, dim: usize, tol: f64) -> Result<Matrix<T>, CoreError> {
    let star = a.conj_transpose();
    let mut v = Matrix::identity(a.rows());
    loop {
        let next = preimage(a, &star.mul(&v), tol);
        if next.cols() == v.cols() {
            break;
        }
        v = next;
    }
    let f = v.conj_transpose().mul(a).mul(&v);
    let radical_dim = v.cols().checked_sub(dim).ok_or_else(|| inconsistent("regular subspace too small"))?;
    let radical = kernel_of_dim(&f.vstack(&f.conj_transpose()), radical_dim, tol)?;
    let complement = kernel_of_dim(&radical.conj_transpose(), dim, tol)?;
    Ok(complement.conj_transpose().mul(&f).mul(&complement))
}

fn half<T: Field>() -> T {
    T::one().div_ref(&T::from_i64(2))
}

/// Numbers of `+` and `-` blocks of size exactly `k` in a form with cosquare
/// eigenvalue 1, from the Hermitian pair `(H1, H2)` with `A = H1 + i H2`.
fn signs_at<T: Field>(form: &Matrix<T>, k: usize, dim: usize, tol: f64) -> Result<(usize, usize), CoreError> {
    let i_unit = T::imag_unit().expect("checked by the caller");
    let star = form.conj_transpose();
    let h1 = form.add(&star).scale(&half());
    let h2 = form.sub(&star).scale(&half::<T>().div_ref(&i_unit));
    let t = h1.inverse(tol)?.mul(&h2);
    let z = kernel_of_dim(&t.pow(k), dim, tol)?;
    let g = z.conj_transpose().mul(&h1).mul(&t.pow(k - 1)).mul(&z);
    let g = g.add(&g.conj_transpose()).scale(&half());
    let loose = if T::EXACT { 0.0 } else { tol.sqrt() };
    let s = inertia(&g, loose)?;
    Ok((s.plus, s.minus))
}

/// Sizes and signs of the `Delta` blocks with cosquare eigenvalue `nu` in the nonsingular form `b`.
fn sign_characteristic<T: Field>(b: &Matrix<T>, nu: &T, sizes: &[usize], opts: &CanonOptions) -> Result<Vec<(usize, i8)>, CoreError> {
    let tol = opts.tol;
    let total: usize = sizes.iter().sum();
    let top = sizes.iter().copied().max().unwrap_or(0);
    let c = b.conj_transpose().inverse(tol)?.mul(b);
    let x = kernel_of_dim(&c.sub(&Matrix::scalar(c.rows(), nu)).pow(top), total, tol)?;
    let b_nu = x.conj_transpose().mul(b).mul(&x);
    // d / conj(d) = nu, so conj(d) b_nu has cosquare eigenvalue 1
    let minus_one = T::one().neg_ref();
    let d = if close(nu, &minus_one, match_tol::<T>(opts)) { T::imag_unit().expect("checked") } else { nu.add_ref(&T::one()) };
    let form = b_nu.scale(&d.conj());
    let mut out = Vec::new();
    let mut distinct: Vec<usize> = sizes.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    for k in distinct {
        let count = sizes.iter().filter(|&&s| s == k).count();
        let dim: usize = sizes.iter().map(|&s| s.min(k)).sum();
        let (p, q) = signs_at(&form, k, dim, tol)?;
        if p + q != count {
            return Err(inconsistent("sign characteristic does not match the Jordan structure"));
        }
        let (bp, _) = signs_at(&delta::<T>(k)?, k, k, 0.0)?;
        let base: i8 = if bp == 1 { 1 } else { -1 };
        out.extend(std::iter::repeat_n((k, base), p));
        out.extend(std::iter::repeat_n((k, -base), q));
    }
    Ok(out)
}

/// Inertia blocks `[1]`, `[-1]`, `[0]` of a real symmetric matrix.
pub fn canon_real_symmetric<T: Field>(a: &Matrix<T>, opts: &CanonOptions) -> Result<Decomposition<T>, CoreError> {
    square(a)?;
    if T::EXACT && T::imag_unit().is_some() {
        return Err(CoreError::UnsupportedDomain("real symmetric forms live over the rationals or floats".into()));
    }
    let scale = a.max_abs().max(1.0);
    let real = (0..a.rows()).all(|i| (0..a.cols()).all(|j| a[(i, j)].is_real(opts.tol)));
    if !real || !a.approx_eq(&a.transpose(), opts.tol * scale) {
        return Err(CoreError::UnsupportedDomain("the matrix is not real symmetric".into()));
    }
    let s = inertia(a, opts.tol)?;
    let blocks = std::iter::repeat_n(SignBlock::Plus, s.plus)
        .chain(std::iter::repeat_n(SignBlock::Minus, s.minus))
        .chain(std::iter::repeat_n(SignBlock::Zero, s.zero))
        .map(Block::RealSymmetric)
        .collect();
    Decomposition::new(Problem::RealSymmetric, blocks)
}
