//! Quivers and mixed graphs: vertices `1..=t`, directed arrows and undirected edges.

use std::collections::BTreeSet;

use crate::error::CoreError;

/// A directed arrow `src -> dst` (1-based vertices).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub dst: usize,
}

/// An undirected edge `i -- j`, normalized so that `i <= j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: String,
    pub i: usize,
    pub j: usize,
}

/// A mixed graph; a quiver is a mixed graph without undirected edges.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MixedGraph {
    vertices: usize,
    arrows: Vec<Arrow>,
    edges: Vec<Edge>,
}

impl MixedGraph {
    /// Validates vertex ranges and id uniqueness; normalizes edges to `i <= j`.
    pub fn new(vertices: usize, arrows: Vec<Arrow>, edges: Vec<Edge>) -> Result<Self, CoreError> {
        let mut ids = BTreeSet::new();
        for a in &arrows {
            check_vertex(vertices, a.src, &a.id)?;
            check_vertex(vertices, a.dst, &a.id)?;
            if !ids.insert(a.id.clone()) {
                return Err(CoreError::invalid(format!("duplicate id {:?}", a.id)));
            }
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for e in edges {
            check_vertex(vertices, e.i, &e.id)?;
            check_vertex(vertices, e.j, &e.id)?;
            if !ids.insert(e.id.clone()) {
                return Err(CoreError::invalid(format!("duplicate id {:?}", e.id)));
            }
            normalized.push(Edge { id: e.id, i: e.i.min(e.j), j: e.i.max(e.j) });
        }
        Ok(MixedGraph { vertices, arrows, edges: normalized })
    }

    /// A quiver from `(id, src, dst)` triples.
    pub fn quiver(vertices: usize, arrows: &[(&str, usize, usize)]) -> Result<Self, CoreError> {
        Self::new(
            vertices,
            arrows.iter().map(|&(id, src, dst)| Arrow { id: id.into(), src, dst }).collect(),
            Vec::new(),
        )
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_quiver(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    /// Undirected incidence pairs of every arrow and edge (1-based).
    pub fn incidences(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arrows.iter().map(|a| (a.src, a.dst)).chain(self.edges.iter().map(|e| (e.i, e.j)))
    }

    /// Connected components of the underlying undirected graph, as sorted vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut parent: Vec<usize> = (0..=self.vertices).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for (u, v) in self.incidences() {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            parent[ru] = rv;
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for v in 1..=self.vertices {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// The Kronecker quiver: two arrows `a, b: 1 -> 2`.
    pub fn kronecker() -> Self {
        Self::quiver(2, &[("a", 1, 2), ("b", 1, 2)]).expect("valid fixture")
    }

    /// One vertex with one loop `a`.
    pub fn loop_quiver() -> Self {
        Self::quiver(1, &[("a", 1, 1)]).expect("valid fixture")
    }

    /// The linearly oriented path `1 -> 2 -> ... -> t` with arrows `a1..`.
    pub fn linear(t: usize) -> Self {
        let ids: Vec<String> = (1..t).map(|k| format!("a{k}")).collect();
        let arrows: Vec<(&str, usize, usize)> = ids.iter().enumerate().map(|(k, id)| (id.as_str(), k + 1, k + 2)).collect();
        Self::quiver(t, &arrows).expect("valid fixture")
    }

    /// A single arrow `a: 1 -> 2`.
    pub fn single_arrow() -> Self {
        Self::linear(2)
    }

    /// Arrows `a: 1 -> 2` and `b: 2 -> 1`.
    pub fn two_cycle() -> Self {
        Self::quiver(2, &[("a", 1, 2), ("b", 2, 1)]).expect("valid fixture")
    }

    /// One vertex with one undirected loop `l`: the graph whose representations are forms.
    pub fn form_graph() -> Self {
        Self::new(1, Vec::new(), vec![Edge { id: "l".into(), i: 1, j: 1 }]).expect("valid fixture")
    }

    /// The six-arrow quiver on three vertices used by the matrix-pair embedding:
    /// loop `A` at 1, `B: 1 -> 2`, `C, D: 1 -> 3`, `E: 2 -> 3`, loop `F` at 3.
    pub fn six_arrow() -> Self {
        Self::quiver(3, &[("A", 1, 1), ("B", 1, 2), ("C", 1, 3), ("D", 1, 3), ("E", 2, 3), ("F", 3, 3)])
            .expect("valid fixture")
    }
}

fn check_vertex(t: usize, v: usize, id: &str) -> Result<(), CoreError> {
    if v == 0 || v > t {
        Err(CoreError::invalid(format!("{id:?} references vertex {v} outside 1..={t}")))
    } else {
        Ok(())
    }
}
