//! From a finite dimensional algebra to a quiver with relations, and from a
//! representation of the algebra to a representation of that quiver.

use qf_algebra::{Field, Matrix};
use serde::Deserialize;

use super::{paths_up_to, satisfies_relations, Path, PathAlgebra, PathElement, QuiverWithRelations};
use crate::error::CoreError;
use crate::graph::{Arrow, MixedGraph};
use crate::io::{build_graph, build_matrix, parse_with, Cell, RawArrow, RawMatrixRows};
use crate::rep::Representation;

/// A generator `a = e_q a e_p`, giving an arrow `p -> q`.
#[derive(Clone, PartialEq)]
pub struct Generator<T> {
    pub name: String,
    pub vector: Vec<T>,
    pub p: usize,
    pub q: usize,
}

/// An algebra given by structure constants in a basis `b_1..b_d`, with
/// orthogonal idempotents summing to the unit and generators between them.
#[derive(Clone)]
pub struct StructuredAlgebra<T> {
    labels: Vec<String>,
    /// `structure[i][j][k]`: coefficient of `b_k` in `b_i b_j`.
    structure: Vec<Vec<Vec<T>>>,
    unit: Vec<T>,
    idempotents: Vec<Vec<T>>,
    generators: Vec<Generator<T>>,
    tol: f64,
}

fn invalid(msg: impl Into<String>) -> CoreError {
    CoreError::Invalid(msg.into())
}

impl<T: Field> StructuredAlgebra<T> {
    /// Checks the unit, the idempotent decomposition and the generator conditions.
    pub fn new(
        labels: Vec<String>,
        structure: Vec<Vec<Vec<T>>>,
        unit: Vec<T>,
        idempotents: Vec<Vec<T>>,
        generators: Vec<Generator<T>>,
        tol: f64,
    ) -> Result<Self, CoreError> {
        let d = structure.len();
        if structure.iter().any(|r| r.len() != d || r.iter().any(|c| c.len() != d)) {
            return Err(invalid("structure constants must form a d x d x d array"));
        }
        if labels.len() != d || unit.len() != d {
            return Err(invalid("basis labels and unit must have the algebra's dimension"));
        }
        if idempotents.is_empty() || idempotents.iter().chain(generators.iter().map(|g| &g.vector)).any(|v| v.len() != d) {
            return Err(invalid("idempotents and generators are vectors of the algebra's dimension"));
        }
        let alg = StructuredAlgebra { labels, structure, unit, idempotents, generators, tol };
        alg.check()?;
        Ok(alg)
    }

    fn check(&self) -> Result<(), CoreError> {
        let d = self.dim();
        for k in 0..d {
            let b = basis_vector::<T>(d, k);
            if !self.eq(&self.mul(&self.unit, &b), &b) || !self.eq(&self.mul(&b, &self.unit), &b) {
                return Err(invalid("the unit does not act as the identity"));
            }
        }
        let t = self.idempotents.len();
        let zero = vec![T::zero(); d];
        let mut sum = zero.clone();
        for (i, ei) in self.idempotents.iter().enumerate() {
            sum = add(&sum, ei);
            if self.eq(ei, &zero) {
                return Err(invalid(format!("idempotent e{} is zero", i + 1)));
            }
            for (j, ej) in self.idempotents.iter().enumerate() {
                let want = if i == j { ei } else { &zero };
                if !self.eq(&self.mul(ei, ej), want) {
                    return Err(invalid(format!("e{} e{} violates orthogonality or idempotence", i + 1, j + 1)));
                }
            }
        }
        if !self.eq(&sum, &self.unit) {
            return Err(invalid("the idempotents do not sum to the unit"));
        }
        for g in &self.generators {
            if !(1..=t).contains(&g.p) || !(1..=t).contains(&g.q) {
                return Err(invalid(format!("generator {} refers to a missing idempotent", g.name)));
            }
            let sandwich = self.mul(&self.mul(&self.idempotents[g.q - 1], &g.vector), &self.idempotents[g.p - 1]);
            if !self.eq(&sandwich, &g.vector) {
                return Err(invalid(format!("generator {} is not e{} {} e{}", g.name, g.q, g.name, g.p)));
            }
        }
        Ok(())
    }

    /// The algebra spanned by `basis` inside a matrix algebra; the unit is the identity matrix.
    pub fn from_matrices(
        labels: Vec<String>,
        basis: &[Matrix<T>],
        idempotents: &[Matrix<T>],
        generators: &[(String, Matrix<T>, usize, usize)],
        tol: f64,
    ) -> Result<Self, CoreError> {
        let first = basis.first().ok_or_else(|| invalid("empty matrix basis"))?;
        let (r, c) = first.shape();
        if r != c || basis.iter().any(|m| m.shape() != (r, c)) {
            return Err(invalid("matrix basis elements must be square of one size"));
        }
        let flat = |m: &Matrix<T>| -> Vec<T> { (0..r).flat_map(|i| (0..c).map(move |j| (i, j))).map(|(i, j)| m[(i, j)].clone()).collect() };
        let columns: Vec<Vec<T>> = basis.iter().map(flat).collect();
        let big = Matrix::from_columns(r * c, &columns);
        if big.rank(tol) != basis.len() {
            return Err(invalid("matrix basis is linearly dependent"));
        }
        let coords = |m: &Matrix<T>| -> Result<Vec<T>, CoreError> {
            if m.shape() != (r, c) {
                return Err(invalid("matrix has the wrong size"));
            }
            let rhs = Matrix::from_columns(r * c, &[flat(m)]);
            let x = big.solve(&rhs, tol).map_err(|_| invalid("matrix is not in the span of the basis"))?;
            Ok(x.column(0))
        };
        let structure = basis
            .iter()
            .map(|bi| basis.iter().map(|bj| coords(&bi.mul(bj))).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let unit = coords(&Matrix::identity(r))?;
        let idem = idempotents.iter().map(coords).collect::<Result<Vec<_>, _>>()?;
        let gens = generators
            .iter()
            .map(|(name, m, p, q)| Ok(Generator { name: name.clone(), vector: coords(m)?, p: *p, q: *q }))
            .collect::<Result<Vec<_>, CoreError>>()?;
        Self::new(labels, structure, unit, idem, gens, tol)
    }

    pub fn dim(&self) -> usize {
        self.structure.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[T] {
        &self.unit
    }

    pub fn idempotents(&self) -> &[Vec<T>] {
        &self.idempotents
    }

    pub fn generators(&self) -> &[Generator<T>] {
        &self.generators
    }

    pub fn mul(&self, x: &[T], y: &[T]) -> Vec<T> {
        let d = self.dim();
        let mut out = vec![T::zero(); d];
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let c = xi.mul_ref(yj);
                for (k, s) in self.structure[i][j].iter().enumerate() {
                    if !s.is_zero() {
                        out[k] = out[k].add_ref(&c.mul_ref(s));
                    }
                }
            }
        }
        out
    }

    fn eq(&self, x: &[T], y: &[T]) -> bool {
        let tol = if T::EXACT { 0.0 } else { self.tol };
        x.iter().zip(y).all(|(a, b)| a.approx_eq(b, tol))
    }

    /// Matrix of left multiplication by `x` in the basis: the regular representation.
    pub fn left_regular(&self, x: &[T]) -> Matrix<T> {
        let d = self.dim();
        let columns: Vec<Vec<T>> = (0..d).map(|j| self.mul(x, &basis_vector(d, j))).collect();
        Matrix::from_columns(d, &columns)
    }

    /// Dimension of the subalgebra generated by the idempotents and generators.
    pub fn closure_dim(&self) -> usize {
        let d = self.dim();
        let gens: Vec<Vec<T>> = self.idempotents.iter().cloned().chain(self.generators.iter().map(|g| g.vector.clone())).collect();
        let mut span = Matrix::from_columns(d, &gens).column_space(self.tol);
        loop {
            let mut cols: Vec<Vec<T>> = (0..span.cols()).map(|k| span.column(k)).collect();
            for k in 0..span.cols() {
                for g in &gens {
                    cols.push(self.mul(&span.column(k), g));
                }
            }
            let next = Matrix::from_columns(d, &cols).column_space(self.tol);
            if next.cols() == span.cols() {
                return span.cols();
            }
            span = next;
        }
    }

    /// The image of a path: the product of its generators, or an idempotent for a lazy path.
    pub fn evaluate(&self, p: &Path) -> Vec<T> {
        p.arrows().iter().fold(self.idempotents[p.start() - 1].clone(), |acc, &k| self.mul(&self.generators[k].vector, &acc))
    }
}

fn basis_vector<T: Field>(d: usize, k: usize) -> Vec<T> {
    (0..d).map(|i| if i == k { T::one() } else { T::zero() }).collect()
}

fn add<T: Field>(x: &[T], y: &[T]) -> Vec<T> {
    x.iter().zip(y).map(|(a, b)| a.add_ref(b)).collect()
}

/// The quiver with one vertex per idempotent and one arrow `p -> q` per generator.
fn quiver_of<T: Field>(alg: &StructuredAlgebra<T>) -> Result<MixedGraph, CoreError> {
    let arrows = alg.generators.iter().map(|g| Arrow { id: g.name.clone(), src: g.p, dst: g.q }).collect();
    MixedGraph::new(alg.idempotents.len(), arrows, Vec::new())
}

/// A quiver with relations whose truncated path algebra is the given algebra.
///
/// Relations span the kernel of the evaluation map on paths of length at most
/// `bound`, split by endpoints; relations already in the truncated ideal of the
/// shorter ones are dropped.
pub fn algebra_to_quiver<T: Field>(alg: &StructuredAlgebra<T>, bound: usize) -> Result<QuiverWithRelations<T>, CoreError> {
    let d = alg.dim();
    let closure = alg.closure_dim();
    if closure < d {
        return Err(CoreError::GeneratorsInsufficient { closure, dim: d });
    }
    let quiver = quiver_of(alg)?;
    let paths = paths_up_to(&quiver, bound);
    let images: Vec<Vec<T>> = paths.iter().map(|p| alg.evaluate(p)).collect();
    if Matrix::from_columns(d, &images).rank(alg.tol) < d {
        return Err(CoreError::BoundTooSmall(bound));
    }
    let t = quiver.vertices();
    let mut candidates: Vec<PathElement<T>> = Vec::new();
    for i in 1..=t {
        for j in 1..=t {
            let block: Vec<usize> = (0..paths.len()).filter(|&k| paths[k].start() == i && paths[k].end() == j).collect();
            if block.is_empty() {
                continue;
            }
            let cols: Vec<Vec<T>> = block.iter().map(|&k| images[k].clone()).collect();
            let kernel = Matrix::from_columns(d, &cols).nullspace(alg.tol);
            for c in 0..kernel.cols() {
                let mut r = PathElement::zero();
                for (row, &k) in block.iter().enumerate() {
                    if !kernel[(row, c)].is_negligible(if T::EXACT { 0.0 } else { alg.tol }) {
                        r = r.add(&PathElement::term(paths[k].clone(), kernel[(row, c)].clone()));
                    }
                }
                candidates.push(monic(&r));
            }
        }
    }
    candidates.sort_by(|a, b| a.max_len().cmp(&b.max_len()));
    let mut kept: Vec<PathElement<T>> = Vec::new();
    for r in candidates {
        let qr = QuiverWithRelations::new(quiver.clone(), kept.clone())?;
        if !PathAlgebra::new(qr, bound, alg.tol)?.in_ideal(&r)? {
            let image = r.terms().fold(vec![T::zero(); d], |acc, (p, c)| {
                add(&acc, &alg.evaluate(p).iter().map(|x| x.mul_ref(c)).collect::<Vec<_>>())
            });
            if !alg.eq(&image, &vec![T::zero(); d]) {
                return Err(CoreError::InternalInconsistency("a relation does not vanish in the algebra".into()));
            }
            kept.push(r);
        }
    }
    QuiverWithRelations::new(quiver, kept)
}

/// Scales a relation so that its largest path has coefficient one.
fn monic<T: Field>(r: &PathElement<T>) -> PathElement<T> {
    match r.terms().last() {
        Some((_, c)) => r.scale(&c.inv().expect("stored coefficients are nonzero")),
        None => r.clone(),
    }
}

/// The quiver representation attached to an algebra representation given by
/// the images `taus` of the idempotents and `rhos` of the generators.
///
/// `R_i` is the image of `tau_i` with the pivot columns of `tau_i` as basis,
/// and `R_alpha` is the restriction of `rho` to `R_p`, written in the basis of `R_q`.
pub fn algebra_rep_to_quiver_rep<T: Field>(
    qr: &QuiverWithRelations<T>,
    taus: &[Matrix<T>],
    rhos: &[Matrix<T>],
    tol: f64,
) -> Result<Representation<T>, CoreError> {
    let q = qr.quiver();
    let bad = |m: &str| CoreError::NotARepresentation(m.into());
    if taus.len() != q.vertices() || rhos.len() != q.arrows().len() {
        return Err(bad("need one matrix per idempotent and per generator"));
    }
    let z = taus.first().map_or(0, |m| m.rows());
    if taus.iter().chain(rhos).any(|m| m.shape() != (z, z)) {
        return Err(bad("all matrices must be square of one size"));
    }
    let close = |a: &Matrix<T>, b: &Matrix<T>| a.approx_eq(b, if T::EXACT { 0.0 } else { tol * a.max_abs().max(1.0) });
    let zero = Matrix::zeros(z, z);
    let mut sum = zero.clone();
    for (i, ti) in taus.iter().enumerate() {
        sum = sum.add(ti);
        for (j, tj) in taus.iter().enumerate() {
            if !close(&ti.mul(tj), if i == j { ti } else { &zero }) {
                return Err(bad("the images of the idempotents are not orthogonal idempotents"));
            }
        }
    }
    if !close(&sum, &Matrix::identity(z)) {
        return Err(bad("the images of the idempotents do not sum to the identity"));
    }
    for (a, rho) in q.arrows().iter().zip(rhos) {
        if !close(&taus[a.dst - 1].mul(rho).mul(&taus[a.src - 1]), rho) {
            return Err(bad(&format!("the image of {} is not supported between its idempotents", a.id)));
        }
    }
    let bases: Vec<Matrix<T>> = taus.iter().map(|t| t.column_space(tol)).collect();
    let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
    let maps = q
        .arrows()
        .iter()
        .zip(rhos)
        .map(|(a, rho)| {
            let image = rho.mul(&bases[a.src - 1]);
            if bases[a.dst - 1].cols() == 0 {
                return Ok(Matrix::zeros(0, image.cols()));
            }
            bases[a.dst - 1].solve(&image, tol).map_err(|_| bad("generator image leaves its target space"))
        })
        .collect::<Result<Vec<_>, CoreError>>()?;
    let rep = Representation::new(q.clone(), dims, maps, Vec::new())?;
    if !satisfies_relations(&rep, qr.relations(), tol)? {
        return Err(bad("the action does not satisfy the relations of the quiver"));
    }
    Ok(rep)
}

#[derive(Deserialize)]
#[serde(untagged, bound = "T: Field")]
enum RawElement<T> {
    Vector(Vec<Cell<T>>),
    Matrix(RawMatrixRows<T>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, bound = "T: Field")]
struct RawGenerator<T> {
    #[serde(default)]
    name: Option<String>,
    element: RawElement<T>,
    p: usize,
    q: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields, bound = "T: Field")]
struct RawAlgebra<T> {
    #[serde(default)]
    basis: Option<Vec<String>>,
    #[serde(default)]
    structure: Option<Vec<Vec<Vec<Cell<T>>>>>,
    #[serde(default)]
    unit: Option<Vec<Cell<T>>>,
    #[serde(default)]
    matrix_basis: Option<Vec<RawMatrixRows<T>>>,
    idempotents: Vec<RawElement<T>>,
    generators: Vec<RawGenerator<T>>,
}

fn raw_vector<T: Field>(e: RawElement<T>, what: &str) -> Result<Vec<T>, String> {
    match e {
        RawElement::Vector(v) => Ok(v.into_iter().map(|c| c.0).collect()),
        RawElement::Matrix(_) => Err(format!("{what} must be a coordinate vector")),
    }
}

fn raw_matrix<T: Field>(e: RawElement<T>, n: usize, what: &str) -> Result<Matrix<T>, String> {
    match e {
        RawElement::Matrix(rows) => build_matrix(rows, (n, n), what),
        RawElement::Vector(v) if v.is_empty() && n == 0 => Ok(Matrix::zeros(0, 0)),
        RawElement::Vector(_) => Err(format!("{what} must be a matrix")),
    }
}

fn build_algebra<T: Field>(raw: RawAlgebra<T>, tol: f64) -> Result<StructuredAlgebra<T>, String> {
    let names: Vec<String> =
        raw.generators.iter().enumerate().map(|(k, g)| g.name.clone().unwrap_or_else(|| format!("a{}", k + 1))).collect();
    let alg = match (raw.structure, raw.matrix_basis) {
        (Some(structure), None) => {
            let d = structure.len();
            let labels = raw.basis.unwrap_or_else(|| (1..=d).map(|k| format!("b{k}")).collect());
            let structure: Vec<Vec<Vec<T>>> =
                structure.into_iter().map(|r| r.into_iter().map(|c| c.into_iter().map(|x| x.0).collect()).collect()).collect();
            let unit = raw.unit.ok_or("structure constants need a \"unit\"")?.into_iter().map(|c| c.0).collect();
            let idem = raw.idempotents.into_iter().map(|e| raw_vector(e, "an idempotent")).collect::<Result<Vec<_>, _>>()?;
            let gens = raw
                .generators
                .into_iter()
                .zip(names)
                .map(|(g, name)| Ok(Generator { name, vector: raw_vector(g.element, "a generator")?, p: g.p, q: g.q }))
                .collect::<Result<Vec<_>, String>>()?;
            StructuredAlgebra::new(labels, structure, unit, idem, gens, tol)
        }
        (None, Some(mb)) => {
            if raw.unit.is_some() {
                return Err("a matrix algebra uses the identity matrix as its unit".into());
            }
            let n = mb.first().map_or(0, |m| m.len());
            let basis = mb.into_iter().map(|m| build_matrix(m, (n, n), "a basis matrix")).collect::<Result<Vec<_>, _>>()?;
            let labels = raw.basis.unwrap_or_else(|| (1..=basis.len()).map(|k| format!("b{k}")).collect());
            let idem = raw.idempotents.into_iter().map(|e| raw_matrix(e, n, "an idempotent")).collect::<Result<Vec<_>, _>>()?;
            let gens = raw
                .generators
                .into_iter()
                .zip(names)
                .map(|(g, name)| Ok((name, raw_matrix(g.element, n, "a generator")?, g.p, g.q)))
                .collect::<Result<Vec<_>, String>>()?;
            StructuredAlgebra::from_matrices(labels, &basis, &idem, &gens, tol)
        }
        _ => return Err("give exactly one of \"structure\" and \"matrix_basis\"".into()),
    };
    alg.map_err(|e| e.to_string())
}

/// Parses an algebra given either by `structure` constants with a `unit`, or
/// by a `matrix_basis` of square matrices closed under multiplication.
pub fn parse_structured_algebra<T: Field>(text: &str, tol: f64) -> Result<StructuredAlgebra<T>, CoreError> {
    parse_with(text, |raw: RawAlgebra<T>| build_algebra(raw, tol))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawQuiverWithRelations {
    vertices: usize,
    #[serde(default)]
    arrows: Vec<RawArrow>,
    #[serde(default)]
    relations: Vec<String>,
}

/// Parses `{"vertices", "arrows", "relations": ["b.a - d.g", ...]}`.
pub fn parse_quiver_with_relations<T: Field>(text: &str) -> Result<QuiverWithRelations<T>, CoreError> {
    let (graph, relations) = parse_with(text, |raw: RawQuiverWithRelations| {
        Ok((build_graph(raw.vertices, raw.arrows, Vec::new())?, raw.relations))
    })?;
    QuiverWithRelations::parse(graph, &relations)
}

/// `{"vertices", "arrows", "relations"}` as JSON.
pub fn quiver_with_relations_json<T: Field>(qr: &QuiverWithRelations<T>) -> serde_json::Value {
    let q = qr.quiver();
    serde_json::json!({
        "vertices": q.vertices(),
        "arrows": q.arrows().iter().map(|a| serde_json::json!({ "id": a.id, "src": a.src, "dst": a.dst })).collect::<Vec<_>>(),
        "relations": qr.relations().iter().map(|r| r.display(q)).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use qf_algebra::Rational;

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_i64_rows(rows)
    }

    /// Upper triangular 3x3 matrices with equal first two diagonal entries.
    fn triangular() -> StructuredAlgebra<Rational> {
        let basis = [
            m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 0]]),
            m(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]]),
            m(&[&[0, 0, 1], &[0, 0, 0], &[0, 0, 0]]),
            m(&[&[0, 0, 0], &[0, 0, 1], &[0, 0, 0]]),
            m(&[&[0, 0, 0], &[0, 0, 0], &[0, 0, 1]]),
        ];
        let labels = ["u", "x", "z", "y", "v"].map(String::from).to_vec();
        let e = [basis[0].clone(), basis[4].clone()];
        let gens = [("a1".to_string(), basis[1].clone(), 1, 1), ("a2".to_string(), basis[3].clone(), 2, 1)];
        StructuredAlgebra::from_matrices(labels, &basis, &e, &gens, 0.0).unwrap()
    }

    #[test]
    fn triangular_algebra_gives_loop_with_square_zero() {
        let alg = triangular();
        let qr = algebra_to_quiver(&alg, 4).unwrap();
        let q = qr.quiver();
        assert_eq!(q.vertices(), 2);
        let rel: Vec<String> = qr.relations().iter().map(|r| r.display(q)).collect();
        assert_eq!(rel, ["a1.a1"]);
    }

    #[test]
    fn regular_representation() {
        let alg = triangular();
        let qr = algebra_to_quiver(&alg, 4).unwrap();
        let taus: Vec<_> = alg.idempotents().iter().map(|e| alg.left_regular(e)).collect();
        let rhos: Vec<_> = alg.generators().iter().map(|g| alg.left_regular(&g.vector)).collect();
        let rep = algebra_rep_to_quiver_rep(&qr, &taus, &rhos, 0.0).unwrap();
        assert_eq!(rep.dims(), &[4, 1]);
    }

    #[test]
    fn insufficient_generators_and_small_bound() {
        let basis = [m(&[&[1, 0], &[0, 1]]), m(&[&[0, 1], &[0, 0]])];
        let labels = vec!["1".into(), "x".into()];
        let none = StructuredAlgebra::from_matrices(labels.clone(), &basis, &basis[..1], &[], 0.0).unwrap();
        assert_eq!(algebra_to_quiver(&none, 2).unwrap_err(), CoreError::GeneratorsInsufficient { closure: 1, dim: 2 });
        let gens = [("a".to_string(), basis[1].clone(), 1, 1)];
        let dual = StructuredAlgebra::from_matrices(labels, &basis, &basis[..1], &gens, 0.0).unwrap();
        assert_eq!(algebra_to_quiver(&dual, 0).unwrap_err(), CoreError::BoundTooSmall(0));
        let qr = algebra_to_quiver(&dual, 4).unwrap();
        assert_eq!(qr.relations().iter().map(|r| r.display(qr.quiver())).collect::<Vec<_>>(), ["a.a"]);
    }
}
