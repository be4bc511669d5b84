//! Shared spectral kernels: elementary divisors from invariant factors,
//! Jordan structure of a pencil at one eigenvalue, minimal indices, and
//! adaptive clustering of float eigenvalues.

use qf_algebra::{Field, Matrix, Poly};

use super::{CanonOptions, ElementaryDivisor};
use crate::error::CoreError;

/// Elementary divisors of a list of invariant factors.
pub(crate) fn elementary_divisors<T: Field>(invariants: &[Poly<T>]) -> Result<Vec<ElementaryDivisor<T>>, CoreError> {
    let mut out = Vec::new();
    for d in invariants.iter().filter(|d| d.deg() > 0) {
        for (base, k) in d.factor()? {
            out.push(ElementaryDivisor::new(base, k));
        }
    }
    Ok(out)
}

/// `W_k(lambda)`: `k x k` block lower bidiagonal with `lambda a - b` on the
/// diagonal and `a` below it. Its nullity is `k * (#column minimal indices)`
/// plus `sum_j min(k, s_j)` over the Jordan blocks `J_{s_j}(lambda)`.
fn chain_matrix<T: Field>(a: &Matrix<T>, b: &Matrix<T>, lambda: &T, k: usize) -> Matrix<T> {
    let (m, n) = a.shape();
    let p = a.scale(lambda).sub(b);
    let mut w = Matrix::zeros(k * m, k * n);
    for j in 0..k {
        w.set_block(j * m, j * n, &p);
        if j + 1 < k {
            w.set_block((j + 1) * m, j * n, a);
        }
    }
    w
}

/// Sizes of the Jordan blocks of the pencil `x a - b` at `lambda`, given the
/// number of column minimal indices; `limit` bounds the block sizes.
pub(crate) fn jordan_sizes<T: Field>(a: &Matrix<T>, b: &Matrix<T>, lambda: &T, ncol: usize, limit: usize, tol: f64) -> Vec<usize> {
    let n = a.cols();
    // g[k] = sum_j min(k, s_j)
    let mut g = vec![0usize];
    for k in 1..=limit + 1 {
        let w = chain_matrix(a, b, lambda, k);
        let nullity = (k * n - w.rank(tol)).saturating_sub(k * ncol);
        g.push(nullity.max(g[k - 1]));
        if g[k] == g[k - 1] {
            break;
        }
    }
    // at_least[k] = #{j : s_j >= k} = g[k] - g[k-1]
    let at_least: Vec<usize> = (1..g.len()).map(|k| g[k] - g[k - 1]).collect();
    let mut sizes = Vec::new();
    for k in 1..=at_least.len() {
        let here = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0).min(at_least[k - 1]);
        sizes.extend(std::iter::repeat_n(k, here));
    }
    sizes
}

/// Column minimal indices of `x a - b`, from kernel dimensions of the
/// block Toeplitz matrices `T_k`. `count` is the known number of indices.
pub(crate) fn column_minimal_indices<T: Field>(a: &Matrix<T>, b: &Matrix<T>, count: usize, tol: f64) -> Vec<usize> {
    let (m, n) = a.shape();
    let mut out = Vec::new();
    if count == 0 {
        return out;
    }
    let (mut prev_d, mut prev_c) = (0usize, 0usize);
    for k in 0..=n {
        // (x a - b) sum_j v_j x^j = 0, coefficients of x^0 .. x^{k+1}
        let mut t = Matrix::zeros((k + 2) * m, (k + 1) * n);
        for j in 0..=k {
            t.set_block(j * m, j * n, &b.neg());
            t.set_block((j + 1) * m, j * n, a);
        }
        let d = (k + 1) * n - t.rank(tol);
        // c_k = #{eps_i <= k}
        let c = d - prev_d;
        out.extend(std::iter::repeat_n(k, c.saturating_sub(prev_c)));
        if c >= count {
            break;
        }
        prev_d = d;
        prev_c = c;
    }
    out
}

/// Float eigenvalues within this distance of zero (relative to `scale`) count as zero.
pub(crate) const ZERO_EIGENVALUE_TOLERANCE: f64 = 1e-6;

pub(crate) fn is_zero_eigenvalue<T: Field>(mu: &T, scale: f64) -> bool {
    if T::EXACT {
        mu.is_zero()
    } else {
        mu.to_c64().norm() <= ZERO_EIGENVALUE_TOLERANCE * scale.max(1.0)
    }
}

/// A basis of the kernel of `m` with the known dimension `dim`. Over floats
/// the rank tolerance is loosened step by step until the dimension matches.
pub(crate) fn kernel_of_dim<T: Field>(m: &Matrix<T>, dim: usize, tol: f64) -> Result<Matrix<T>, CoreError> {
    if T::EXACT {
        let k = m.nullspace(0.0);
        if k.cols() == dim {
            return Ok(k);
        }
    } else {
        let mut t = tol;
        while t <= 1e-3 {
            let k = m.nullspace(t);
            if k.cols() == dim {
                return Ok(k);
            }
            t *= 10.0;
        }
    }
    Err(CoreError::InternalInconsistency(format!("expected a kernel of dimension {dim}")))
}

/// Groups `points` by single linkage at `radius`.
fn single_linkage<T: Field>(points: &[T], radius: f64) -> Vec<Vec<usize>> {
    let n = points.len();
    let mut group: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in i + 1..n {
            if (points[i].to_c64() - points[j].to_c64()).norm() <= radius {
                let (gi, gj) = (group[i], group[j]);
                for g in group.iter_mut() {
                    if *g == gj {
                        *g = gi;
                    }
                }
            }
        }
    }
    let mut ids: Vec<usize> = group.clone();
    ids.sort();
    ids.dedup();
    ids.iter().map(|&id| (0..n).filter(|&k| group[k] == id).collect()).collect()
}

fn mean<T: Field>(points: &[T], idx: &[usize]) -> T {
    let sum = idx.iter().fold(T::zero(), |acc, &k| acc.add_ref(&points[k]));
    sum.div_ref(&T::from_i64(idx.len() as i64))
}

/// Eigenvalues and Jordan sizes of the regular part of `x a - b` over floats.
///
/// `candidates` are approximate eigenvalues (a superset when `spurious` is set).
/// Candidates are clustered by single linkage with the largest radius at which
/// every cluster of `m` candidates carries exactly `m` dimensions of Jordan
/// structure at its mean; lone candidates with no structure are dropped when
/// spurious candidates are allowed.
pub(crate) fn cluster_spectrum<T: Field>(
    a: &Matrix<T>,
    b: &Matrix<T>,
    candidates: &[T],
    ncol: usize,
    expected: usize,
    spurious: bool,
    opts: &CanonOptions,
) -> Option<Vec<(T, Vec<usize>)>> {
    if expected == 0 {
        return Some(Vec::new());
    }
    let scale = candidates.iter().fold(1.0f64, |s, c| s.max(c.to_c64().norm()));
    let mut radius = 0.3 * scale;
    while radius >= opts.cluster_tol * scale * 1e-3 {
        let mut found = Vec::new();
        let mut ok = true;
        for cluster in single_linkage(candidates, radius) {
            let mu = mean(candidates, &cluster);
            let sizes = jordan_sizes(a, b, &mu, ncol, expected, opts.tol);
            let total: usize = sizes.iter().sum();
            if total == 0 && spurious && cluster.len() == 1 {
                continue;
            }
            if total != cluster.len() && !(spurious && total > 0 && total < cluster.len()) {
                ok = false;
                break;
            }
            found.push((mu, sizes));
        }
        if ok && found.iter().map(|(_, s)| s.iter().sum::<usize>()).sum::<usize>() == expected {
            return Some(found);
        }
        radius /= 3.0;
    }
    None
}
