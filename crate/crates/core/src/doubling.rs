//! Doubling a mixed graph into a quiver with involution, and the reduction of
//! forms to pairs of mutually adjoint linear maps.
//!
//! Dual spaces are coordinate spaces: the dual of `F^n` is `F^n` with the
//! pairing `(phi, u) -> phi^* u`, where `^*` is the involution-transpose.

use qf_algebra::{Field, Involution, Matrix};

use crate::canon::{
    build_block, canon_congruence, canon_real_symmetric, canon_star_congruence, Block, CanonOptions, CongruenceBlock,
    Decomposition, StarBlock,
};
use crate::error::CoreError;
use crate::graph::{Arrow, MixedGraph};
use crate::path_algebra::{Path, PathElement};
use crate::rep::Representation;

/// Where an arrow of the doubled quiver comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArrowKind {
    /// `alpha: i -> j` for an arrow `alpha: i -> j`.
    Arrow,
    /// `alpha*: j* -> i*`.
    ArrowStar,
    /// `lambda: i -> j*` for an edge `lambda: i -- j`, `i <= j`.
    Edge,
    /// `lambda*: j -> i*`.
    EdgeStar,
}

/// The doubled quiver of a mixed graph with `t` vertices: vertex `i` keeps its
/// number and `i*` is numbered `t + i`; arrows come in pairs `x, x*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubledQuiver {
    quiver: MixedGraph,
    original: usize,
    kinds: Vec<ArrowKind>,
}

impl DoubledQuiver {
    pub fn quiver(&self) -> &MixedGraph {
        &self.quiver
    }

    /// Number of vertices of the original mixed graph.
    pub fn original_vertices(&self) -> usize {
        self.original
    }

    /// The vertex involution `i <-> i*`.
    pub fn vertex_star(&self, v: usize) -> usize {
        if v > self.original {
            v - self.original
        } else {
            v + self.original
        }
    }

    /// The arrow involution; paired arrows are adjacent.
    pub fn arrow_star(&self, k: usize) -> usize {
        k ^ 1
    }

    pub fn kind(&self, k: usize) -> ArrowKind {
        self.kinds[k]
    }

    /// `"3"` or `"3*"`.
    pub fn vertex_label(&self, v: usize) -> String {
        if v > self.original {
            format!("{}*", v - self.original)
        } else {
            v.to_string()
        }
    }
}

/// Replaces each vertex `i` by `i, i*`, each arrow `alpha: i -> j` by
/// `alpha: i -> j, alpha*: j* -> i*`, and each edge `lambda: i -- j` by
/// `lambda: i -> j*, lambda*: j -> i*`.
pub fn double_graph(g: &MixedGraph) -> Result<DoubledQuiver, CoreError> {
    let t = g.vertices();
    let mut arrows = Vec::new();
    let mut kinds = Vec::new();
    for a in g.arrows() {
        arrows.push(Arrow { id: a.id.clone(), src: a.src, dst: a.dst });
        arrows.push(Arrow { id: format!("{}*", a.id), src: t + a.dst, dst: t + a.src });
        kinds.extend([ArrowKind::Arrow, ArrowKind::ArrowStar]);
    }
    for e in g.edges() {
        arrows.push(Arrow { id: e.id.clone(), src: e.i, dst: t + e.j });
        arrows.push(Arrow { id: format!("{}*", e.id), src: e.j, dst: t + e.i });
        kinds.extend([ArrowKind::Edge, ArrowKind::EdgeStar]);
    }
    // fails only when a star id such as `a*` is already taken by the input
    let quiver = MixedGraph::new(2 * t, arrows, Vec::new())?;
    Ok(DoubledQuiver { quiver, original: t, kinds })
}

/// The doubled representation: `A_alpha*` is the adjoint of `A_alpha`, the
/// arrow `lambda` carries the Gram matrix and `lambda*` its adjoint.
pub fn double_representation<T: Field>(rep: &Representation<T>, involution: Involution) -> Result<(DoubledQuiver, Representation<T>), CoreError> {
    let dq = double_graph(rep.graph())?;
    let mut dims = rep.dims().to_vec();
    dims.extend_from_slice(rep.dims());
    let mut maps = Vec::with_capacity(dq.quiver.arrows().len());
    for m in rep.maps().iter().chain(rep.forms()) {
        maps.push(m.clone());
        maps.push(involution.adjoint(m));
    }
    let doubled = Representation::new(dq.quiver.clone(), dims, maps, Vec::new())?;
    Ok((dq, doubled))
}

fn check_on<T: Field>(dq: &DoubledQuiver, m: &Representation<T>) -> Result<(), CoreError> {
    if m.graph() != dq.quiver() {
        return Err(CoreError::GraphMismatch);
    }
    Ok(())
}

/// The adjoint representation: dimension at `v` is that of `M` at `v*`, and the
/// matrix at `tau` is the adjoint of the matrix of `M` at `tau*`.
pub fn adjoint_rep<T: Field>(dq: &DoubledQuiver, m: &Representation<T>, involution: Involution) -> Result<Representation<T>, CoreError> {
    check_on(dq, m)?;
    let n = dq.quiver.vertices();
    let dims = (1..=n).map(|v| m.dims()[dq.vertex_star(v) - 1]).collect();
    let maps = (0..m.maps().len()).map(|k| involution.adjoint(&m.maps()[dq.arrow_star(k)])).collect();
    Representation::new(dq.quiver.clone(), dims, maps, Vec::new())
}

/// Literal equality with the adjoint representation (within `tol` for floats).
pub fn is_selfadjoint<T: Field>(dq: &DoubledQuiver, m: &Representation<T>, involution: Involution, tol: f64) -> Result<bool, CoreError> {
    let adj = adjoint_rep(dq, m, involution)?;
    let tol = if T::EXACT { 0.0 } else { tol };
    Ok(adj.dims() == m.dims() && adj.maps().iter().zip(m.maps()).all(|(a, b)| a.approx_eq(b, tol * b.max_abs().max(1.0))))
}

/// The adjoint of a relation: each `c * t_p...t_1` becomes
/// `involve(c) * t_1*...t_p*`.
pub fn adjoint_relation<T: Field>(dq: &DoubledQuiver, r: &PathElement<T>, involution: Involution) -> Result<PathElement<T>, CoreError> {
    let mut out = PathElement::zero();
    for (p, c) in r.terms() {
        let image = if p.is_lazy() {
            Path::lazy(dq.vertex_star(p.start()))
        } else {
            Path::new(&dq.quiver, p.arrows().iter().rev().map(|&k| dq.arrow_star(k)).collect())?
        };
        out = out.add(&PathElement::term(image, involution.apply(c)));
    }
    Ok(out)
}

/// [`adjoint_relation`] applied to every relation.
pub fn adjoint_relations<T: Field>(dq: &DoubledQuiver, relations: &[PathElement<T>], involution: Involution) -> Result<Vec<PathElement<T>>, CoreError> {
    relations.iter().map(|r| adjoint_relation(dq, r, involution)).collect()
}

/// The scalar setting of a single form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormDomain {
    /// Bilinear forms up to congruence.
    Bilinear,
    /// Sesquilinear forms up to *congruence.
    Sesquilinear,
    /// Real symmetric forms up to congruence.
    RealSymmetric,
}

/// The direct-sum decomposition of one form into indecomposable forms.
///
/// Over the reals only symmetric forms are accepted: the blocks are `[1]`,
/// `[-1]` and `[0]`, counted by the law of inertia.
/// The involution in `opts` is replaced by the one the domain implies.
pub fn algorithm3_forms<T: Field>(gram: &Matrix<T>, domain: FormDomain, opts: &CanonOptions) -> Result<Decomposition<T>, CoreError> {
    let with = |involution| CanonOptions { involution, ..*opts };
    match domain {
        FormDomain::Bilinear => canon_congruence(gram, &with(Involution::Identity)),
        FormDomain::Sesquilinear => canon_star_congruence(gram, &with(Involution::Conjugation)),
        FormDomain::RealSymmetric => canon_real_symmetric(gram, &with(Involution::Identity)),
    }
}

/// The form `[[0, B^*], [A, 0]]` on `U + V*` attached to a representation
/// `(A, B)` of the doubled form graph.
pub fn m_plus<T: Field>(a: &Matrix<T>, b: &Matrix<T>, involution: Involution) -> Result<Matrix<T>, CoreError> {
    if a.shape() != b.shape() {
        return Err(CoreError::invalid("both arrows of the doubled form graph map U to V"));
    }
    let (v, u) = a.shape();
    Ok(Matrix::from_blocks(&[vec![Matrix::zeros(u, u), involution.adjoint(b)], vec![a.clone(), Matrix::zeros(v, v)]]))
}

/// A matrix `W` with `W^{-*} W` similar to `J_n(lambda)`, when one exists:
/// `Gamma_n` for `lambda = (-1)^(n+1)` under the identity involution, and a
/// multiple of `Delta_n` for `|lambda| = 1` under conjugation.
pub fn sqrt_star_exists<T: Field>(lambda: &T, n: usize, involution: Involution, tol: f64) -> Result<Option<Matrix<T>>, CoreError> {
    if n == 0 {
        return Err(CoreError::invalid("block size must be positive"));
    }
    if lambda.is_negligible(if T::EXACT { 0.0 } else { tol }) {
        return Err(CoreError::invalid("lambda must be nonzero"));
    }
    let block = match involution {
        Involution::Identity => {
            let want = if n % 2 == 1 { T::one() } else { T::one().neg_ref() };
            if !lambda.approx_eq(&want, if T::EXACT { 0.0 } else { tol }) {
                return Ok(None);
            }
            Block::Congruence(CongruenceBlock::Gamma(n))
        }
        Involution::Conjugation => {
            if T::imag_unit().is_none() {
                return Err(CoreError::UnsupportedDomain("conjugation needs an imaginary unit".into()));
            }
            if lambda.modulus_cmp(&T::one(), tol) != std::cmp::Ordering::Equal {
                return Ok(None);
            }
            Block::StarCongruence(StarBlock::Delta { size: n, nu: lambda.clone(), sign: 1 })
        }
    };
    Ok(build_block(&block, tol)?.pop())
}
