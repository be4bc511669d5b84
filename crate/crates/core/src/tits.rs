//! The Tits quadratic form of a quiver or mixed graph and the
//! finite / tame / wild trichotomy.
//!
//! `q(z) = sum z_i^2 - sum_{arrows and edges i-j} z_i z_j`. Definiteness is
//! decided exactly by symmetric elimination over the rationals, and the
//! answer is cross-checked against recognition of the (extended) Dynkin
//! diagrams.

use std::fmt;

use qf_algebra::{inertia_ldl, Matrix, Rational};

use crate::error::CoreError;
use crate::graph::MixedGraph;

/// Component bound for positive roots of Dynkin diagrams (the highest root of E8).
pub const DYNKIN_ROOT_BOUND: usize = 6;

/// The Tits form, stored as the integer matrix `2 * gram`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TitsForm {
    gram2: Vec<Vec<i64>>,
}

impl TitsForm {
    pub fn of(g: &MixedGraph) -> Self {
        let t = g.vertices();
        let mut gram2 = vec![vec![0i64; t]; t];
        for (k, row) in gram2.iter_mut().enumerate() {
            row[k] = 2;
        }
        for (u, v) in g.incidences() {
            let (u, v) = (u - 1, v - 1);
            if u == v {
                gram2[u][u] -= 2;
            } else {
                gram2[u][v] -= 1;
                gram2[v][u] -= 1;
            }
        }
        TitsForm { gram2 }
    }

    pub fn vertices(&self) -> usize {
        self.gram2.len()
    }

    /// The symmetric integer matrix `2 * gram`.
    pub fn gram2(&self) -> &[Vec<i64>] {
        &self.gram2
    }

    pub fn eval(&self, z: &[i64]) -> i64 {
        assert_eq!(z.len(), self.vertices(), "dimension vector length");
        let mut s = 0;
        for (i, row) in self.gram2.iter().enumerate() {
            for (j, g) in row.iter().enumerate() {
                s += z[i] * g * z[j];
            }
        }
        s / 2
    }

    /// `(positive, negative, zero)` counts of the form over the rationals.
    pub fn signature(&self) -> (usize, usize, usize) {
        let m = Matrix::from_fn(self.vertices(), self.vertices(), |i, j| Rational::from(self.gram2[i][j]));
        let inertia = inertia_ldl(&m, 0.0).expect("Tits gram matrix is symmetric");
        (inertia.plus, inertia.minus, inertia.zero)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.signature().0 == self.vertices()
    }

    pub fn is_positive_semidefinite(&self) -> bool {
        self.signature().1 == 0
    }
}

/// Representation type of a quiver or mixed graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QuiverType {
    /// Positive definite form; the Dynkin diagram names of the components.
    Finite(String),
    /// Positive semidefinite, not definite; the diagram names of the components.
    Tame(String),
    Wild,
}

impl QuiverType {
    fn rank(&self) -> u8 {
        match self {
            QuiverType::Finite(_) => 0,
            QuiverType::Tame(_) => 1,
            QuiverType::Wild => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            QuiverType::Finite(_) => "finite",
            QuiverType::Tame(_) => "tame",
            QuiverType::Wild => "wild",
        }
    }

    pub fn diagram(&self) -> Option<&str> {
        match self {
            QuiverType::Finite(d) | QuiverType::Tame(d) => Some(d),
            QuiverType::Wild => None,
        }
    }
}

impl fmt::Display for QuiverType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.diagram() {
            Some(d) => write!(f, "{} ({d})", self.kind()),
            None => f.write_str(self.kind()),
        }
    }
}

/// A recognized diagram: a name and whether it is extended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagram {
    pub name: String,
    pub extended: bool,
}

fn ordinary(name: String) -> Option<Diagram> {
    Some(Diagram { name, extended: false })
}

fn extended(name: String) -> Option<Diagram> {
    Some(Diagram { name, extended: true })
}

/// Recognizes the underlying undirected multigraph of a connected graph as a
/// Dynkin diagram `A_t, D_t, E_6, E_7, E_8` or an extended diagram
/// `A~_{t-1}, D~_{t-1}, E~_6, E~_7, E~_8`.
pub fn recognize_dynkin(g: &MixedGraph) -> Option<Diagram> {
    let t = g.vertices();
    if t == 0 || !g.is_connected() {
        return None;
    }
    let pairs: Vec<(usize, usize)> = g.incidences().map(|(u, v)| (u.min(v) - 1, u.max(v) - 1)).collect();
    let loops = pairs.iter().filter(|(u, v)| u == v).count();
    if loops > 0 {
        return (t == 1 && pairs.len() == 1).then(|| Diagram { name: "A~0".into(), extended: true });
    }
    let mut sorted = pairs.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != pairs.len() {
        return (t == 2 && pairs.len() == 2).then(|| Diagram { name: "A~1".into(), extended: true });
    }
    let mut adj = vec![Vec::new(); t];
    for &(u, v) in &pairs {
        adj[u].push(v);
        adj[v].push(u);
    }
    let deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let m = pairs.len();
    if m == t {
        // connected with one cycle: only the cycle itself is extended Dynkin
        return deg.iter().all(|&d| d == 2).then(|| Diagram { name: format!("A~{}", t - 1), extended: true });
    }
    if m != t - 1 {
        return None;
    }
    let branch: Vec<usize> = (0..t).filter(|&v| deg[v] >= 3).collect();
    // length (in vertices) of the arm leaving `from` through `first`
    let arm = |from: usize, first: usize| -> (usize, usize) {
        let (mut prev, mut cur, mut len) = (from, first, 1);
        while deg[cur] == 2 {
            let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
            prev = cur;
            cur = next;
            len += 1;
        }
        (len, cur)
    };
    match branch.as_slice() {
        [] => ordinary(format!("A{t}")),
        [c] if deg[*c] == 3 => {
            let mut arms: Vec<usize> = adj[*c].iter().map(|&w| arm(*c, w).0).collect();
            arms.sort();
            match arms.as_slice() {
                [1, 1, k] => ordinary(format!("D{}", k + 3)),
                [1, 2, 2] => ordinary("E6".into()),
                [1, 2, 3] => ordinary("E7".into()),
                [1, 2, 4] => ordinary("E8".into()),
                [2, 2, 2] => extended("E~6".into()),
                [1, 3, 3] => extended("E~7".into()),
                [1, 2, 5] => extended("E~8".into()),
                _ => None,
            }
        }
        [c] if deg[*c] == 4 && t == 5 => extended("D~4".into()),
        [a, b] if deg[*a] == 3 && deg[*b] == 3 => {
            // each branch vertex carries two leaves and the two are joined by a path
            let leaves = |c: usize| adj[c].iter().filter(|&&w| deg[w] == 1).count();
            (leaves(*a) == 2 && leaves(*b) == 2).then(|| Diagram { name: format!("D~{}", t - 1), extended: true })
        }
        _ => None,
    }
}

fn component_subgraph(g: &MixedGraph, comp: &[usize]) -> MixedGraph {
    let index = |v: usize| comp.iter().position(|&w| w == v).map(|k| k + 1);
    let arrows = g
        .arrows()
        .iter()
        .filter_map(|a| Some(crate::graph::Arrow { id: a.id.clone(), src: index(a.src)?, dst: index(a.dst)? }))
        .collect();
    let edges =
        g.edges().iter().filter_map(|e| Some(crate::graph::Edge { id: e.id.clone(), i: index(e.i)?, j: index(e.j)? })).collect();
    MixedGraph::new(comp.len(), arrows, edges).expect("subgraph of a valid graph")
}

fn combine(parts: Vec<QuiverType>) -> QuiverType {
    let worst = parts.iter().map(QuiverType::rank).max().unwrap_or(0);
    let names = || parts.iter().filter_map(|p| p.diagram()).collect::<Vec<_>>().join("+");
    match worst {
        0 => QuiverType::Finite(names()),
        1 => QuiverType::Tame(names()),
        _ => QuiverType::Wild,
    }
}

/// Classification by definiteness of the Tits form, componentwise; the
/// overall type is the worst component type.
pub fn classify(g: &MixedGraph) -> Result<QuiverType, CoreError> {
    let parts = g
        .components()
        .iter()
        .map(|comp| {
            let sub = component_subgraph(g, comp);
            let form = TitsForm::of(&sub);
            let name = recognize_dynkin(&sub);
            if form.is_positive_definite() {
                match name {
                    Some(d) if !d.extended => Ok(QuiverType::Finite(d.name)),
                    _ => Err(CoreError::InternalInconsistency("positive definite form without a Dynkin diagram".into())),
                }
            } else if form.is_positive_semidefinite() {
                match name {
                    Some(d) if d.extended => Ok(QuiverType::Tame(d.name)),
                    _ => Err(CoreError::InternalInconsistency("semidefinite form without an extended Dynkin diagram".into())),
                }
            } else {
                Ok(QuiverType::Wild)
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(combine(parts))
}

/// Classification by diagram recognition alone, componentwise.
pub fn classify_by_diagram(g: &MixedGraph) -> QuiverType {
    let parts = g
        .components()
        .iter()
        .map(|comp| match recognize_dynkin(&component_subgraph(g, comp)) {
            Some(d) if d.extended => QuiverType::Tame(d.name),
            Some(d) => QuiverType::Finite(d.name),
            None => QuiverType::Wild,
        })
        .collect();
    combine(parts)
}

/// Dimension vectors of indecomposables: for finite type every nonzero
/// `z >= 0` with `q(z) = 1`; for tame type every nonzero `z` with components
/// at most `bound` and `q(z)` in `{0, 1}`.
pub fn indecomposable_dimensions(g: &MixedGraph, bound: Option<usize>) -> Result<Vec<Vec<i64>>, CoreError> {
    let form = TitsForm::of(g);
    let (limit, allowed): (usize, &[i64]) = match classify(g)? {
        QuiverType::Finite(_) => (DYNKIN_ROOT_BOUND, &[1]),
        QuiverType::Tame(_) => (
            bound.ok_or_else(|| CoreError::invalid("tame type needs an explicit component bound"))?,
            &[0, 1],
        ),
        QuiverType::Wild => return Err(CoreError::WildTypeUnsupported),
    };
    let t = g.vertices();
    let mut out = Vec::new();
    let mut z = vec![0i64; t];
    loop {
        if z.iter().any(|&c| c != 0) && allowed.contains(&form.eval(&z)) {
            out.push(z.clone());
        }
        // odometer over [0, limit]^t
        let mut k = 0;
        while k < t && z[k] == limit as i64 {
            z[k] = 0;
            k += 1;
        }
        if k == t {
            break;
        }
        z[k] += 1;
    }
    out.sort();
    Ok(out)
}

/// `1 - q(z)`: the number of parameters of representations of dimension `z`.
pub fn parameter_count(g: &MixedGraph, z: &[i64]) -> i64 {
    1 - TitsForm::of(g).eval(z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forms_of_small_quivers() {
        let k = TitsForm::of(&MixedGraph::kronecker());
        assert_eq!(k.gram2(), &[vec![2, -2], vec![-2, 2]]);
        assert_eq!(TitsForm::of(&MixedGraph::loop_quiver()).eval(&[3]), 0);
        assert_eq!(TitsForm::of(&MixedGraph::linear(2)).eval(&[1, 1]), 1);
        assert_eq!(TitsForm::of(&MixedGraph::form_graph()).eval(&[2]), 0);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&MixedGraph::linear(2)).unwrap(), QuiverType::Finite("A2".into()));
        assert_eq!(classify(&MixedGraph::kronecker()).unwrap(), QuiverType::Tame("A~1".into()));
        let two_loops = MixedGraph::quiver(1, &[("a", 1, 1), ("b", 1, 1)]).unwrap();
        assert_eq!(classify(&two_loops).unwrap(), QuiverType::Wild);
        let square = MixedGraph::quiver(4, &[("a", 1, 2), ("b", 2, 3), ("c", 4, 3), ("d", 1, 4)]).unwrap();
        assert_eq!(classify(&square).unwrap(), QuiverType::Tame("A~3".into()));
    }

    #[test]
    fn diagram_recognition() {
        let name = |t: usize, arrows: &[(&str, usize, usize)]| recognize_dynkin(&MixedGraph::quiver(t, arrows).unwrap()).map(|d| d.name);
        assert_eq!(name(5, &[("a", 1, 2), ("b", 2, 3), ("c", 3, 4), ("d", 4, 5)]), Some("A5".into()));
        assert_eq!(name(5, &[("a", 1, 2), ("b", 2, 3), ("c", 2, 4), ("d", 4, 5)]), Some("D5".into()));
        assert_eq!(name(4, &[("a", 1, 2), ("b", 1, 3), ("c", 1, 4)]), Some("D4".into()));
        assert_eq!(name(5, &[("a", 1, 2), ("b", 1, 3), ("c", 1, 4), ("d", 1, 5)]), Some("D~4".into()));
        assert_eq!(
            name(6, &[("a", 1, 3), ("b", 2, 3), ("c", 3, 4), ("d", 4, 5), ("e", 4, 6)]),
            Some("D~5".into())
        );
        assert_eq!(name(4, &[("a", 1, 2), ("b", 2, 3), ("c", 3, 4), ("d", 4, 1)]), Some("A~3".into()));
    }

    #[test]
    fn roots() {
        assert_eq!(
            indecomposable_dimensions(&MixedGraph::linear(2), None).unwrap(),
            vec![vec![0, 1], vec![1, 0], vec![1, 1]]
        );
        assert_eq!(indecomposable_dimensions(&MixedGraph::linear(3), None).unwrap().len(), 6);
        let k = indecomposable_dimensions(&MixedGraph::kronecker(), Some(2)).unwrap();
        for z in [[1, 1], [2, 1], [1, 2], [1, 0], [0, 1], [2, 2]] {
            assert!(k.contains(&z.to_vec()));
        }
        let two_loops = MixedGraph::quiver(1, &[("a", 1, 1), ("b", 1, 1)]).unwrap();
        assert_eq!(indecomposable_dimensions(&two_loops, Some(2)), Err(CoreError::WildTypeUnsupported));
    }

    #[test]
    fn parameters() {
        assert_eq!(parameter_count(&MixedGraph::kronecker(), &[1, 1]), 1);
        assert_eq!(parameter_count(&MixedGraph::loop_quiver(), &[1]), 1);
        assert_eq!(parameter_count(&MixedGraph::linear(2), &[1, 1]), 0);
    }
}
