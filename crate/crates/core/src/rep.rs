//! Representations of mixed graphs and their morphisms.
//!
//! Matrices are stored in explicit coordinates. An arrow `a: i -> j` carries a
//! `z_j x z_i` matrix; an undirected edge `l: i -- j` carries the `z_j x z_i`
//! Gram matrix `G` of the form `(y, x) -> involve(y)^T G x`.

use qf_algebra::{Field, Involution, Matrix};

use crate::error::CoreError;
use crate::graph::MixedGraph;

#[derive(Clone, PartialEq)]
pub struct Representation<T> {
    graph: MixedGraph,
    dims: Vec<usize>,
    maps: Vec<Matrix<T>>,
    forms: Vec<Matrix<T>>,
}

impl<T: Field> Representation<T> {
    /// Checks that every matrix has the shape implied by `dims`.
    pub fn new(graph: MixedGraph, dims: Vec<usize>, maps: Vec<Matrix<T>>, forms: Vec<Matrix<T>>) -> Result<Self, CoreError> {
        if dims.len() != graph.vertices() {
            return Err(CoreError::invalid(format!(
                "dimension vector has {} entries for {} vertices",
                dims.len(),
                graph.vertices()
            )));
        }
        if maps.len() != graph.arrows().len() || forms.len() != graph.edges().len() {
            return Err(CoreError::invalid("one matrix per arrow and per edge is required"));
        }
        for (a, m) in graph.arrows().iter().zip(&maps) {
            let want = (dims[a.dst - 1], dims[a.src - 1]);
            if m.shape() != want {
                return Err(CoreError::invalid(format!("arrow {:?} needs a {}x{} matrix, got {}x{}", a.id, want.0, want.1, m.rows(), m.cols())));
            }
        }
        for (e, m) in graph.edges().iter().zip(&forms) {
            let want = (dims[e.j - 1], dims[e.i - 1]);
            if m.shape() != want {
                return Err(CoreError::invalid(format!("edge {:?} needs a {}x{} matrix, got {}x{}", e.id, want.0, want.1, m.rows(), m.cols())));
            }
        }
        Ok(Representation { graph, dims, maps, forms })
    }

    /// The zero representation of dimension `dims`.
    pub fn zero(graph: MixedGraph, dims: Vec<usize>) -> Result<Self, CoreError> {
        let maps = graph.arrows().iter().map(|a| Matrix::zeros(dims.get(a.dst - 1).copied().unwrap_or(0), dims.get(a.src - 1).copied().unwrap_or(0))).collect();
        let forms = graph.edges().iter().map(|e| Matrix::zeros(dims.get(e.j - 1).copied().unwrap_or(0), dims.get(e.i - 1).copied().unwrap_or(0))).collect();
        Self::new(graph, dims, maps, forms)
    }

    pub fn graph(&self) -> &MixedGraph {
        &self.graph
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Arrow matrices, in the graph's arrow order.
    pub fn maps(&self) -> &[Matrix<T>] {
        &self.maps
    }

    /// Edge Gram matrices, in the graph's edge order.
    pub fn forms(&self) -> &[Matrix<T>] {
        &self.forms
    }

    pub fn map(&self, id: &str) -> Option<&Matrix<T>> {
        self.graph.arrow_index(id).map(|k| &self.maps[k])
    }

    pub fn form(&self, id: &str) -> Option<&Matrix<T>> {
        self.graph.edge_index(id).map(|k| &self.forms[k])
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Blockwise direct sum.
    pub fn direct_sum(&self, other: &Self) -> Result<Self, CoreError> {
        if self.graph != other.graph {
            return Err(CoreError::GraphMismatch);
        }
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| Matrix::block_diag(&[a.clone(), b.clone()])).collect();
        let forms = self.forms.iter().zip(&other.forms).map(|(a, b)| Matrix::block_diag(&[a.clone(), b.clone()])).collect();
        Self::new(self.graph.clone(), dims, maps, forms)
    }

    /// Direct sum of a nonempty list; an empty list gives the zero representation.
    pub fn direct_sum_all(graph: &MixedGraph, parts: &[Self]) -> Result<Self, CoreError> {
        let mut acc = Self::zero(graph.clone(), vec![0; graph.vertices()])?;
        for p in parts {
            acc = acc.direct_sum(p)?;
        }
        Ok(acc)
    }

    /// Transport along invertible vertex maps `s_i` (target coordinates `s_i x`):
    /// arrows become `s_j A s_i^{-1}` and forms `s_j^{-*} G s_i^{-1}`.
    pub fn transport(&self, s: &[Matrix<T>], involution: Involution, tol: f64) -> Result<Self, CoreError> {
        if s.len() != self.dims.len() || s.iter().zip(&self.dims).any(|(m, &z)| m.shape() != (z, z)) {
            return Err(CoreError::invalid("transport needs one square matrix per vertex"));
        }
        let inv: Vec<Matrix<T>> = s.iter().map(|m| m.inverse(tol)).collect::<Result<_, _>>()?;
        let maps = self.graph.arrows().iter().zip(&self.maps).map(|(a, m)| s[a.dst - 1].mul(m).mul(&inv[a.src - 1])).collect();
        let forms = self
            .graph
            .edges()
            .iter()
            .zip(&self.forms)
            .map(|(e, g)| involution.adjoint(&inv[e.j - 1]).mul(g).mul(&inv[e.i - 1]))
            .collect();
        Self::new(self.graph.clone(), self.dims.clone(), maps, forms)
    }
}

/// A family of vertex maps `phi_i: A_i -> B_i`, stored as `z^B_i x z^A_i` matrices.
#[derive(Clone, PartialEq)]
pub struct Morphism<T> {
    pub source: Representation<T>,
    pub target: Representation<T>,
    pub maps: Vec<Matrix<T>>,
}

impl<T: Field> Morphism<T> {
    pub fn new(source: Representation<T>, target: Representation<T>, maps: Vec<Matrix<T>>) -> Result<Self, CoreError> {
        if source.graph != target.graph {
            return Err(CoreError::GraphMismatch);
        }
        if maps.len() != source.dims.len() {
            return Err(CoreError::invalid("one vertex map per vertex is required"));
        }
        for (k, m) in maps.iter().enumerate() {
            if m.shape() != (target.dims[k], source.dims[k]) {
                return Err(CoreError::invalid(format!("vertex map {} has the wrong shape", k + 1)));
            }
        }
        Ok(Morphism { source, target, maps })
    }

    pub fn identity(rep: &Representation<T>) -> Self {
        let maps = rep.dims.iter().map(|&z| Matrix::identity(z)).collect();
        Morphism { source: rep.clone(), target: rep.clone(), maps }
    }

    /// `phi_j A_a = B_a phi_i` for every arrow and `G^A = phi_j^* G^B phi_i` for every edge.
    pub fn is_morphism(&self, involution: Involution, tol: f64) -> Result<bool, CoreError> {
        if self.source.graph != self.target.graph {
            return Err(CoreError::GraphMismatch);
        }
        let g = &self.source.graph;
        let (a, b, phi) = (&self.source, &self.target, &self.maps);
        for (k, arrow) in g.arrows().iter().enumerate() {
            let lhs = phi[arrow.dst - 1].mul(&a.maps[k]);
            let rhs = b.maps[k].mul(&phi[arrow.src - 1]);
            if !lhs.approx_eq(&rhs, tol) {
                return Ok(false);
            }
        }
        for (k, edge) in g.edges().iter().enumerate() {
            let rhs = involution.adjoint(&phi[edge.j - 1]).mul(&b.forms[k]).mul(&phi[edge.i - 1]);
            if !a.forms[k].approx_eq(&rhs, tol) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A morphism whose vertex maps are all invertible.
    pub fn is_isomorphism(&self, involution: Involution, tol: f64) -> Result<bool, CoreError> {
        if !self.is_morphism(involution, tol)? {
            return Ok(false);
        }
        Ok(self.maps.iter().all(|m| m.is_square() && m.rank(tol) == m.rows()))
    }

    /// The composite `other . self`.
    pub fn then(&self, other: &Self) -> Result<Self, CoreError> {
        let maps = other.maps.iter().zip(&self.maps).map(|(psi, phi)| psi.try_mul(phi)).collect::<Result<_, _>>()?;
        Morphism::new(self.source.clone(), other.target.clone(), maps)
    }

    /// The family of inverse vertex maps, as a morphism `target -> source`.
    pub fn inverse(&self, tol: f64) -> Result<Self, CoreError> {
        let maps = self.maps.iter().map(|m| m.inverse(tol)).collect::<Result<_, _>>()?;
        Morphism::new(self.target.clone(), self.source.clone(), maps)
    }
}

impl<T: Field> std::fmt::Debug for Representation<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Representation")
            .field("graph", &self.graph)
            .field("dims", &self.dims)
            .field("maps", &self.maps)
            .field("forms", &self.forms)
            .finish()
    }
}

impl<T: Field> std::fmt::Debug for Morphism<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Morphism").field("maps", &self.maps).finish()
    }
}
