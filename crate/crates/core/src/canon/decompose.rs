//! Dispatch between representations of the small graphs and the canonical-form engines.

use qf_algebra::{Field, Involution, Matrix};

use super::{
    build_block, canon_congruence, canon_contragredient, canon_equivalence, canon_pencil, canon_real_symmetric,
    canon_similarity, canon_star_congruence, CanonOptions, Decomposition, Problem,
};
use crate::error::CoreError;
use crate::graph::MixedGraph;
use crate::rep::Representation;

/// The matrix problem whose objects are the representations of `g`.
///
/// A single undirected loop is read as congruence, or as *congruence when
/// the involution is conjugation and the domain has an imaginary unit.
pub fn shape_of<T: Field>(g: &MixedGraph, involution: Involution) -> Result<Problem, CoreError> {
    let arrows = g.arrows();
    let unsupported = || CoreError::UnsupportedShape("expected one of the six classical graph shapes".into());
    match (g.vertices(), arrows.len(), g.edges().len()) {
        (1, 1, 0) => Ok(Problem::Similarity),
        (1, 0, 1) => {
            if involution == Involution::Conjugation && T::imag_unit().is_some() {
                Ok(Problem::StarCongruence)
            } else {
                Ok(Problem::Congruence)
            }
        }
        (2, 1, 0) if arrows[0].src != arrows[0].dst => Ok(Problem::Equivalence),
        (2, 2, 0) if arrows.iter().all(|a| a.src != a.dst) => {
            if arrows[0].src == arrows[1].src {
                Ok(Problem::Pencil)
            } else {
                Ok(Problem::Contragredient)
            }
        }
        _ => Err(unsupported()),
    }
}

/// The standard graph on which a problem's blocks are realized.
pub fn problem_graph(p: Problem) -> MixedGraph {
    match p {
        Problem::Equivalence => MixedGraph::single_arrow(),
        Problem::Similarity => MixedGraph::loop_quiver(),
        Problem::Pencil => MixedGraph::kronecker(),
        Problem::Contragredient => MixedGraph::two_cycle(),
        Problem::Congruence | Problem::StarCongruence | Problem::RealSymmetric => MixedGraph::form_graph(),
    }
}

/// The direct sum of the literal blocks, as a representation of [`problem_graph`].
pub fn realize<T: Field>(d: &Decomposition<T>, tol: f64) -> Result<Representation<T>, CoreError> {
    let graph = problem_graph(d.problem());
    let parts = d.blocks().iter().map(|b| build_block(b, tol)).collect::<Result<Vec<_>, _>>()?;
    let slots = graph.arrows().len() + graph.edges().len();
    let sums: Vec<Matrix<T>> = (0..slots)
        .map(|k| Matrix::block_diag(&parts.iter().map(|p| p[k].clone()).collect::<Vec<_>>()))
        .collect();
    // the first matrix determines every dimension: it maps vertex 1 to the last vertex
    let dims = match graph.vertices() {
        1 => vec![sums[0].rows()],
        _ => vec![sums[0].cols(), sums[0].rows()],
    };
    let (maps, forms) = if graph.edges().is_empty() { (sums, Vec::new()) } else { (Vec::new(), sums) };
    Representation::new(graph, dims, maps, forms)
}

/// Canonical decomposition of a representation of one of the six classical graphs.
pub fn decompose_representation<T: Field>(rep: &Representation<T>, opts: &CanonOptions) -> Result<Decomposition<T>, CoreError> {
    let g = rep.graph();
    let maps = rep.maps();
    match shape_of::<T>(g, opts.involution)? {
        Problem::Equivalence => Ok(canon_equivalence(&maps[0], opts)),
        Problem::Similarity => canon_similarity(&maps[0], opts),
        Problem::Pencil => canon_pencil(&maps[0], &maps[1], opts),
        Problem::Contragredient => {
            // A leaves the lower-numbered vertex
            let first = usize::from(g.arrows()[0].src > g.arrows()[1].src);
            canon_contragredient(&maps[first], &maps[1 - first], opts)
        }
        Problem::Congruence => canon_congruence(&rep.forms()[0], opts),
        Problem::StarCongruence => canon_star_congruence(&rep.forms()[0], opts),
        Problem::RealSymmetric => canon_real_symmetric(&rep.forms()[0], opts),
    }
}
