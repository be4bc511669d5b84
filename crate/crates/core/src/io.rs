//! JSON text formats for graphs, representations and matrices.
//!
//! Parsing reports malformed input as [`CoreError::Parse`] with a line and
//! column. Printing is canonical: fixed key order, one matrix row per line,
//! scalars as strings, so that `print(parse(s))` is stable.

use std::collections::BTreeMap;
use std::fmt::Write;
use std::marker::PhantomData;

use qf_algebra::{Field, Matrix};
use serde::de::{self, Deserializer, IgnoredAny, Visitor};
use serde::Deserialize;

use crate::error::CoreError;
use crate::graph::{Arrow, Edge, MixedGraph};
use crate::path_algebra::QuiverWithRelations;
use crate::rep::Representation;

/// A scalar cell: a scalar string, or a JSON number.
pub(crate) struct Cell<T>(pub(crate) T);

impl<'de, T: Field> Deserialize<'de> for Cell<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V<T>(PhantomData<T>);
        impl<T: Field> Visitor<'_> for V<T> {
            type Value = Cell<T>;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a scalar string or number")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> Result<Cell<T>, E> {
                T::parse_scalar(s).map(Cell).map_err(E::custom)
            }
            fn visit_i64<E: de::Error>(self, n: i64) -> Result<Cell<T>, E> {
                Ok(Cell(T::from_i64(n)))
            }
            fn visit_u64<E: de::Error>(self, n: u64) -> Result<Cell<T>, E> {
                i64::try_from(n).map(|n| Cell(T::from_i64(n))).map_err(|_| E::custom("integer out of range"))
            }
            fn visit_f64<E: de::Error>(self, x: f64) -> Result<Cell<T>, E> {
                self.visit_str(&x.to_string())
            }
        }
        d.deserialize_any(V(PhantomData))
    }
}

/// A 1-based vertex index; zero is rejected at its position in the text.
struct Vertex(usize);

impl<'de> Deserialize<'de> for Vertex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = usize::deserialize(d)?;
        if v == 0 {
            return Err(de::Error::custom("vertices are numbered from 1"));
        }
        Ok(Vertex(v))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawArrow {
    id: String,
    src: Vertex,
    dst: Vertex,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
pub(crate) struct RawEdge {
    id: String,
    i: Vertex,
    j: Vertex,
}

pub(crate) type RawMatrixRows<T> = Vec<Vec<Cell<T>>>;

#[derive(Deserialize)]
#[serde(deny_unknown_fields, bound = "T: Field")]
struct RawRep<T> {
    vertices: usize,
    #[serde(default)]
    arrows: Vec<RawArrow>,
    #[serde(default)]
    edges: Vec<RawEdge>,
    #[serde(default)]
    dims: Option<Vec<usize>>,
    #[serde(default)]
    maps: Option<BTreeMap<String, RawMatrixRows<T>>>,
    #[serde(default)]
    forms: Option<BTreeMap<String, RawMatrixRows<T>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGraphOnly {
    vertices: usize,
    #[serde(default)]
    arrows: Vec<RawArrow>,
    #[serde(default)]
    edges: Vec<RawEdge>,
    #[serde(default)]
    #[allow(dead_code)]
    dims: Option<IgnoredAny>,
    #[serde(default)]
    #[allow(dead_code)]
    maps: Option<IgnoredAny>,
    #[serde(default)]
    #[allow(dead_code)]
    forms: Option<IgnoredAny>,
}

pub(crate) fn build_graph(vertices: usize, arrows: Vec<RawArrow>, edges: Vec<RawEdge>) -> Result<MixedGraph, String> {
    MixedGraph::new(
        vertices,
        arrows.into_iter().map(|a| Arrow { id: a.id, src: a.src.0, dst: a.dst.0 }).collect(),
        edges.into_iter().map(|e| Edge { id: e.id, i: e.i.0, j: e.j.0 }).collect(),
    )
    .map_err(|e| e.to_string())
}

pub(crate) fn build_matrix<T: Field>(rows: RawMatrixRows<T>, shape: (usize, usize), what: &str) -> Result<Matrix<T>, String> {
    let (r, c) = shape;
    if r * c == 0 && rows.iter().all(|row| row.is_empty()) && (rows.is_empty() || rows.len() == r) {
        return Ok(Matrix::zeros(r, c));
    }
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(format!("{what} must be a {r}x{c} matrix"));
    }
    Ok(Matrix::from_fn(r, c, {
        let data: Vec<Vec<T>> = rows.into_iter().map(|row| row.into_iter().map(|x| x.0).collect()).collect();
        move |i, j| data[i][j].clone()
    }))
}

/// Builds the representation, defaulting missing empty matrices to zero.
fn build_rep<T: Field>(raw: RawRep<T>) -> Result<Representation<T>, String> {
    let graph = build_graph(raw.vertices, raw.arrows, raw.edges)?;
    let dims = raw.dims.ok_or("a representation needs \"dims\"")?;
    if dims.len() != graph.vertices() {
        return Err(format!("\"dims\" has {} entries for {} vertices", dims.len(), graph.vertices()));
    }
    let mut maps_in = raw.maps.unwrap_or_default();
    let mut forms_in = raw.forms.unwrap_or_default();
    let mut maps = Vec::new();
    for a in graph.arrows() {
        let shape = (dims[a.dst - 1], dims[a.src - 1]);
        let what = format!("map {:?}", a.id);
        maps.push(match maps_in.remove(&a.id) {
            Some(rows) => build_matrix(rows, shape, &what)?,
            None if shape.0 * shape.1 == 0 => Matrix::zeros(shape.0, shape.1),
            None => return Err(format!("missing {what}")),
        });
    }
    let mut forms = Vec::new();
    for e in graph.edges() {
        let shape = (dims[e.j - 1], dims[e.i - 1]);
        let what = format!("form {:?}", e.id);
        forms.push(match forms_in.remove(&e.id) {
            Some(rows) => build_matrix(rows, shape, &what)?,
            None if shape.0 * shape.1 == 0 => Matrix::zeros(shape.0, shape.1),
            None => return Err(format!("missing {what}")),
        });
    }
    if let Some(id) = maps_in.keys().chain(forms_in.keys()).next() {
        return Err(format!("no arrow or edge named {id:?}"));
    }
    Representation::new(graph, dims, maps, forms).map_err(|e| e.to_string())
}

/// Runs `build` on the deserialized value; semantic failures are reported at
/// the end of the document.
pub(crate) fn parse_with<'a, R: Deserialize<'a>, O>(text: &'a str, build: impl FnOnce(R) -> Result<O, String>) -> Result<O, CoreError> {
    let mut de = serde_json::Deserializer::from_str(text);
    let raw = R::deserialize(&mut de)?;
    de.end()?;
    build(raw).map_err(|message| {
        let (line, column) = end_position(text);
        CoreError::Parse { line, column, message }
    })
}

fn end_position(text: &str) -> (usize, usize) {
    let trimmed = text.trim_end();
    let line = trimmed.lines().count().max(1);
    let column = trimmed.lines().last().map_or(0, |l| l.chars().count());
    (line, column)
}

/// Parses a graph; representation keys are accepted and ignored.
pub fn parse_graph(text: &str) -> Result<MixedGraph, CoreError> {
    parse_with(text, |raw: RawGraphOnly| build_graph(raw.vertices, raw.arrows, raw.edges))
}

pub fn parse_representation<T: Field>(text: &str) -> Result<Representation<T>, CoreError> {
    parse_with(text, build_rep::<T>)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, bound = "T: Field")]
struct RawMatrix<T> {
    #[serde(default)]
    rows: Option<usize>,
    #[serde(default)]
    cols: Option<usize>,
    entries: RawMatrixRows<T>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, bound = "T: Field")]
struct RawMatrices<T> {
    #[serde(default)]
    rows: Option<usize>,
    #[serde(default)]
    cols: Option<usize>,
    #[serde(default)]
    entries: Option<RawMatrixRows<T>>,
    #[serde(default)]
    matrices: Option<Vec<RawMatrix<T>>>,
}

fn build_one<T: Field>(rows: Option<usize>, cols: Option<usize>, entries: RawMatrixRows<T>) -> Result<Matrix<T>, String> {
    let r = rows.unwrap_or(entries.len());
    let c = cols.or_else(|| entries.first().map(Vec::len)).unwrap_or(0);
    build_matrix(entries, (r, c), "\"entries\"")
}

/// Parses `{"rows", "cols", "entries"}` (shape optional when nonempty) or
/// `{"matrices": [...]}` into a list of matrices.
pub fn parse_matrices<T: Field>(text: &str) -> Result<Vec<Matrix<T>>, CoreError> {
    parse_with(text, |raw: RawMatrices<T>| match (raw.entries, raw.matrices) {
        (Some(e), None) => Ok(vec![build_one(raw.rows, raw.cols, e)?]),
        (None, Some(ms)) if raw.rows.is_none() && raw.cols.is_none() => {
            ms.into_iter().map(|m| build_one(m.rows, m.cols, m.entries)).collect()
        }
        _ => Err("expected either \"entries\" or \"matrices\"".into()),
    })
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

fn matrix_rows<T: Field>(m: &Matrix<T>) -> String {
    if m.rows() == 0 || m.cols() == 0 {
        return "[]".into();
    }
    let rows: Vec<String> = (0..m.rows())
        .map(|i| format!("[{}]", (0..m.cols()).map(|j| quote(&m[(i, j)].to_string())).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

fn write_graph(out: &mut String, g: &MixedGraph) {
    let _ = writeln!(out, "  \"vertices\": {},", g.vertices());
    let arrows: Vec<String> = g
        .arrows()
        .iter()
        .map(|a| format!("    {{\"id\": {}, \"src\": {}, \"dst\": {}}}", quote(&a.id), a.src, a.dst))
        .collect();
    let edges: Vec<String> =
        g.edges().iter().map(|e| format!("    {{\"id\": {}, \"i\": {}, \"j\": {}}}", quote(&e.id), e.i, e.j)).collect();
    let list = |items: Vec<String>| if items.is_empty() { "[]".to_string() } else { format!("[\n{}\n  ]", items.join(",\n")) };
    let _ = write!(out, "  \"arrows\": {},\n  \"edges\": {}", list(arrows), list(edges));
}

/// Canonical text of a graph.
pub fn print_graph(g: &MixedGraph) -> String {
    let mut out = String::from("{\n");
    write_graph(&mut out, g);
    out.push_str("\n}\n");
    out
}

/// Canonical text of a representation.
pub fn print_representation<T: Field>(r: &Representation<T>) -> String {
    let g = r.graph();
    let mut out = String::from("{\n");
    write_graph(&mut out, g);
    let dims: Vec<String> = r.dims().iter().map(|d| d.to_string()).collect();
    let _ = write!(out, ",\n  \"dims\": [{}]", dims.join(", "));
    let block = |entries: Vec<String>| {
        if entries.is_empty() {
            "{}".to_string()
        } else {
            format!("{{\n{}\n  }}", entries.join(",\n"))
        }
    };
    let maps = g.arrows().iter().zip(r.maps()).map(|(a, m)| format!("    {}: {}", quote(&a.id), matrix_rows(m))).collect();
    let forms = g.edges().iter().zip(r.forms()).map(|(e, m)| format!("    {}: {}", quote(&e.id), matrix_rows(m))).collect();
    let _ = write!(out, ",\n  \"maps\": {},\n  \"forms\": {}\n}}\n", block(maps), block(forms));
    out
}

/// Canonical text of one matrix in the `{"rows", "cols", "entries"}` form.
pub fn print_matrix<T: Field>(m: &Matrix<T>) -> String {
    format!("{{\"rows\": {}, \"cols\": {}, \"entries\": {}}}\n", m.rows(), m.cols(), matrix_rows(m))
}

/// Canonical text of a list of matrices in the `{"matrices": [...]}` form.
pub fn print_matrices<T: Field>(ms: &[Matrix<T>]) -> String {
    if ms.is_empty() {
        return "{\n  \"matrices\": []\n}\n".into();
    }
    let items: Vec<String> = ms
        .iter()
        .map(|m| format!("    {{\"rows\": {}, \"cols\": {}, \"entries\": {}}}", m.rows(), m.cols(), matrix_rows(m)))
        .collect();
    format!("{{\n  \"matrices\": [\n{}\n  ]\n}}\n", items.join(",\n"))
}

/// Canonical text of a quiver with relations.
pub fn print_quiver_with_relations<T: Field>(qr: &QuiverWithRelations<T>) -> String {
    let q = qr.quiver();
    let arrows: Vec<String> = q
        .arrows()
        .iter()
        .map(|a| format!("    {{\"id\": {}, \"src\": {}, \"dst\": {}}}", quote(&a.id), a.src, a.dst))
        .collect();
    let arrows = if arrows.is_empty() { "[]".to_string() } else { format!("[\n{}\n  ]", arrows.join(",\n")) };
    let relations: Vec<String> = qr.relations().iter().map(|r| quote(&r.display(q))).collect();
    format!(
        "{{\n  \"vertices\": {},\n  \"arrows\": {},\n  \"relations\": [{}]\n}}\n",
        q.vertices(),
        arrows,
        relations.join(", ")
    )
}

/// A matrix as a JSON value (rows of scalar strings).
pub fn matrix_json<T: Field>(m: &Matrix<T>) -> serde_json::Value {
    serde_json::Value::Array(
        (0..m.rows())
            .map(|i| serde_json::Value::Array((0..m.cols()).map(|j| m[(i, j)].to_string().into()).collect()))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use qf_algebra::{GaussianRational, Rational};

    const KRONECKER: &str = r#"{
  "vertices": 2,
  "arrows": [
    {"id": "a", "src": 1, "dst": 2},
    {"id": "b", "src": 1, "dst": 2}
  ],
  "edges": [],
  "dims": [2, 1],
  "maps": {
    "a": [["1", "0"]],
    "b": [["0", "1/2"]]
  },
  "forms": {}
}
"#;

    #[test]
    fn representation_round_trip() {
        let r: Representation<Rational> = parse_representation(KRONECKER).unwrap();
        assert_eq!(r.dims(), &[2, 1]);
        assert_eq!(r.map("b").unwrap()[(0, 1)], Rational::new(1, 2));
        assert_eq!(print_representation(&r), KRONECKER);
    }

    #[test]
    fn vertex_zero_is_a_positioned_parse_error() {
        let text = "{\n  \"vertices\": 2,\n  \"arrows\": [{\"id\": \"a\", \"src\": 0, \"dst\": 2}]\n}";
        match parse_graph(text) {
            Err(CoreError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn bad_scalar_and_bad_shape() {
        let bad = KRONECKER.replace("\"1/2\"", "\"1/x\"");
        assert!(matches!(parse_representation::<Rational>(&bad), Err(CoreError::Parse { line: 11, .. })));
        let short = KRONECKER.replace("[[\"1\", \"0\"]]", "[[\"1\"]]");
        assert!(matches!(parse_representation::<Rational>(&short), Err(CoreError::Parse { .. })));
    }

    #[test]
    fn empty_matrices_and_defaults() {
        let text = r#"{"vertices": 2, "arrows": [{"id": "a", "src": 1, "dst": 2}], "dims": [0, 3]}"#;
        let r: Representation<GaussianRational> = parse_representation(text).unwrap();
        assert_eq!(r.maps()[0].shape(), (3, 0));
        let again: Representation<GaussianRational> = parse_representation(&print_representation(&r)).unwrap();
        assert_eq!(again, r);
    }

    #[test]
    fn matrices_document() {
        let one: Vec<Matrix<Rational>> = parse_matrices(r#"{"entries": [["1", 2], [3, "4/5"]]}"#).unwrap();
        assert_eq!(one[0], Matrix::from_rows(vec![vec![1.into(), 2.into()], vec![3.into(), Rational::new(4, 5)]]));
        let two: Vec<Matrix<Rational>> =
            parse_matrices(r#"{"matrices": [{"rows": 0, "cols": 1, "entries": []}, {"entries": [["0"]]}]}"#).unwrap();
        assert_eq!(two[0].shape(), (0, 1));
        assert_eq!(parse_matrices::<Rational>(&print_matrix(&two[1])).unwrap()[0], two[1]);
    }
}
