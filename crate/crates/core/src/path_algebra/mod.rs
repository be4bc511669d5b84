//! Paths in a quiver, path-algebra arithmetic modulo relations, and the
//! passage between finite dimensional algebras and quivers with relations.
//!
//! Everything is truncated at an explicit path-length bound `L`: the ideal
//! generated by the relations is replaced by its span on paths of length at
//! most `L`, and products that leave that range are errors.
//!
//! Text format for elements: `c1*a3.a2.a1 + c2*e4`, where `a3.a2.a1` is the
//! path that traverses `a1` first and `e4` is the lazy path at vertex 4.
//! Coefficients with an imaginary part are parenthesized, as in `(1+2i)*a`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use qf_algebra::{Field, Matrix};

use crate::error::CoreError;
use crate::graph::MixedGraph;
use crate::rep::Representation;

mod algorithms;

pub use algorithms::{
    algebra_rep_to_quiver_rep, algebra_to_quiver, parse_quiver_with_relations, parse_structured_algebra,
    quiver_with_relations_json, Generator, StructuredAlgebra,
};

/// A directed path; `arrows` lists arrow indices in traversal order, so the
/// path `a3.a2.a1` is stored as `[a1, a2, a3]`. Empty `arrows` is the lazy path.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    start: usize,
    end: usize,
    arrows: Vec<usize>,
}

impl Path {
    pub fn lazy(vertex: usize) -> Self {
        Path { start: vertex, end: vertex, arrows: Vec::new() }
    }

    /// The path through `arrows` (traversal order), checking composability.
    pub fn new(q: &MixedGraph, arrows: Vec<usize>) -> Result<Self, CoreError> {
        let first = arrows.first().ok_or_else(|| CoreError::invalid("use Path::lazy for paths without arrows"))?;
        let all = q.arrows();
        let start = all.get(*first).ok_or_else(|| CoreError::invalid("arrow index out of range"))?.src;
        let mut end = start;
        for &k in &arrows {
            let a = all.get(k).ok_or_else(|| CoreError::invalid("arrow index out of range"))?;
            if a.src != end {
                return Err(CoreError::invalid(format!("arrow {:?} does not continue the path", a.id)));
            }
            end = a.dst;
        }
        Ok(Path { start, end, arrows })
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self) -> usize {
        self.end
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_lazy(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` after `first`, or `None` when `first` does not end where `self` starts.
    pub fn after(&self, first: &Path) -> Option<Path> {
        (first.end == self.start).then(|| Path {
            start: first.start,
            end: self.end,
            arrows: first.arrows.iter().chain(&self.arrows).copied().collect(),
        })
    }

    /// Text form `a3.a2.a1` or `e<u>`.
    pub fn display(&self, q: &MixedGraph) -> String {
        if self.is_lazy() {
            return format!("e{}", self.start);
        }
        let names: Vec<&str> = self.arrows.iter().rev().map(|&k| q.arrows()[k].id.as_str()).collect();
        names.join(".")
    }
}

impl Ord for Path {
    /// Shorter paths first, then lexicographic in traversal order, then by start.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.arrows.cmp(&other.arrows)).then(self.start.cmp(&other.start))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite linear combination of paths with nonzero coefficients.
#[derive(Clone, PartialEq)]
pub struct PathElement<T> {
    terms: BTreeMap<Path, T>,
}

impl<T: Field> PathElement<T> {
    pub fn zero() -> Self {
        PathElement { terms: BTreeMap::new() }
    }

    pub fn path(p: Path) -> Self {
        Self::term(p, T::one())
    }

    pub fn term(p: Path, c: T) -> Self {
        let mut e = Self::zero();
        e.add_term(p, c);
        e
    }

    /// `e_1 + ... + e_t`.
    pub fn one(q: &MixedGraph) -> Self {
        (1..=q.vertices()).fold(Self::zero(), |acc, u| acc.add(&Self::path(Path::lazy(u))))
    }

    fn add_term(&mut self, p: Path, c: T) {
        let sum = match self.terms.remove(&p) {
            Some(old) => old.add_ref(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(p, sum);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &T)> {
        self.terms.iter()
    }

    pub fn coeff(&self, p: &Path) -> T {
        self.terms.get(p).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&T::one().neg_ref()))
    }

    pub fn scale(&self, c: &T) -> Self {
        let mut out = Self::zero();
        for (p, d) in &self.terms {
            out.add_term(p.clone(), d.mul_ref(c));
        }
        out
    }

    /// Product in the free path algebra: concatenation with the zero rule.
    pub fn concat(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (p, c) in &self.terms {
            for (q, d) in &other.terms {
                if let Some(pq) = p.after(q) {
                    out.add_term(pq, c.mul_ref(d));
                }
            }
        }
        out
    }

    /// Length of the longest path in the support.
    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Path::len).max().unwrap_or(0)
    }

    /// The common start and end vertex of all terms, if there is one.
    pub fn endpoints(&self) -> Option<(usize, usize)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let ends = (first.start, first.end);
        it.all(|p| (p.start, p.end) == ends).then_some(ends)
    }

    /// Text form, longest paths first.
    pub fn display(&self, q: &MixedGraph) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (p, c)) in self.terms.iter().rev().enumerate() {
            let text = c.to_string();
            let (negative, magnitude) = match text.strip_prefix('-') {
                Some(rest) if !needs_parens(rest) => (true, rest.to_string()),
                _ => (false, text),
            };
            if k > 0 {
                out.push_str(if negative { " - " } else { " + " });
            } else if negative {
                out.push('-');
            }
            let path = p.display(q);
            if magnitude == "1" {
                out.push_str(&path);
            } else if needs_parens(&magnitude) {
                out.push_str(&format!("({magnitude})*{path}"));
            } else {
                out.push_str(&format!("{magnitude}*{path}"));
            }
        }
        out
    }

    /// Parses the text form against the arrows of `q`.
    pub fn parse(text: &str, q: &MixedGraph) -> Result<Self, CoreError> {
        parse_element(text, q)
    }
}

fn needs_parens(s: &str) -> bool {
    s.contains('i') || s.contains('+') || s.contains('-') || s.contains('e')
}

impl<T: Field> std::fmt::Debug for PathElement<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> =
            self.terms.iter().map(|(p, c)| format!("{c}*{}@{}:{:?}", p.end, p.start, p.arrows)).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn parse_error(message: impl Into<String>) -> CoreError {
    CoreError::Parse { line: 1, column: 1, message: message.into() }
}

/// Splits `text` at top-level `+` / `-` signs, keeping each sign with its term.
fn split_terms(text: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    let mut negative = false;
    let mut prev: Option<char> = None;
    for ch in text.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        // a sign after an exponent marker belongs to the number
        let exponent = matches!(prev, Some('e') | Some('E')) && cur.trim().chars().next().is_some_and(|c| c.is_ascii_digit());
        if depth == 0 && (ch == '+' || ch == '-') && !exponent {
            if !cur.trim().is_empty() {
                out.push((negative, cur.trim().to_string()));
            }
            cur.clear();
            negative = ch == '-';
        } else {
            cur.push(ch);
        }
        if !ch.is_whitespace() {
            prev = Some(ch);
        }
    }
    if !cur.trim().is_empty() || out.is_empty() {
        out.push((negative, cur.trim().to_string()));
    }
    out
}

fn parse_atom(name: &str, q: &MixedGraph) -> Option<Path> {
    if let Some(k) = q.arrow_index(name) {
        let a = &q.arrows()[k];
        return Some(Path { start: a.src, end: a.dst, arrows: vec![k] });
    }
    let u: usize = name.strip_prefix('e')?.parse().ok()?;
    (1..=q.vertices()).contains(&u).then(|| Path::lazy(u))
}

/// Splits `c*word` at the first `*` whose prefix is a scalar, so that arrow
/// ids may themselves contain `*`.
fn split_coefficient<T: Field>(term: &str) -> Result<(T, String), CoreError> {
    if let Some(rest) = term.strip_prefix('(') {
        let close = rest.find(')').ok_or_else(|| parse_error("unbalanced parenthesis"))?;
        let word = rest[close + 1..].trim().strip_prefix('*').ok_or_else(|| parse_error("expected '*' after a coefficient"))?;
        let value = T::parse_scalar(rest[..close].trim()).map_err(|e| parse_error(e.to_string()))?;
        return Ok((value, word.trim().to_string()));
    }
    for (k, _) in term.match_indices('*') {
        let word = term[k + 1..].trim();
        if word.is_empty() {
            break;
        }
        if let Ok(value) = T::parse_scalar(term[..k].trim()) {
            return Ok((value, word.to_string()));
        }
    }
    Ok((T::one(), term.to_string()))
}

fn parse_element<T: Field>(text: &str, q: &MixedGraph) -> Result<PathElement<T>, CoreError> {
    let mut total = PathElement::zero();
    for (negative, term) in split_terms(text) {
        if term.is_empty() {
            return Err(parse_error("empty term"));
        }
        let (coef, word) = split_coefficient::<T>(&term)?;
        let coef = if negative { coef.neg_ref() } else { coef };
        let value = if word == "0" {
            PathElement::zero()
        } else if word.split('.').all(|n| parse_atom(n.trim(), q).is_some()) {
            // a3.a2.a1: product of atoms, rightmost applied first
            word.split('.').map(|n| PathElement::path(parse_atom(n.trim(), q).expect("checked"))).fold(
                PathElement::one(q),
                |acc: PathElement<T>, atom| acc.concat(&atom),
            )
        } else {
            let c = T::parse_scalar(&word).map_err(|_| parse_error(format!("unknown arrow or lazy path {word:?}")))?;
            PathElement::one(q).scale(&c)
        };
        total = total.add(&value.scale(&coef));
    }
    Ok(total)
}

/// A quiver with a finite set of relations, each supported on paths with one
/// common start and one common end vertex.
#[derive(Clone)]
pub struct QuiverWithRelations<T> {
    quiver: MixedGraph,
    relations: Vec<PathElement<T>>,
}

impl<T: Field> std::fmt::Debug for QuiverWithRelations<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let relations: Vec<String> = self.relations.iter().map(|r| r.display(&self.quiver)).collect();
        f.debug_struct("QuiverWithRelations").field("quiver", &self.quiver).field("relations", &relations).finish()
    }
}

impl<T: Field> QuiverWithRelations<T> {
    pub fn new(quiver: MixedGraph, relations: Vec<PathElement<T>>) -> Result<Self, CoreError> {
        if !quiver.is_quiver() {
            return Err(CoreError::invalid("relations live on quivers without undirected edges"));
        }
        let relations: Vec<PathElement<T>> = relations.into_iter().filter(|r| !r.is_zero()).collect();
        if let Some(r) = relations.iter().find(|r| r.endpoints().is_none()) {
            return Err(CoreError::invalid(format!(
                "relation {} mixes paths with different endpoints",
                r.display(&quiver)
            )));
        }
        Ok(QuiverWithRelations { quiver, relations })
    }

    /// Parses relations given as text, each meaning `expr = 0`.
    pub fn parse(quiver: MixedGraph, relations: &[String]) -> Result<Self, CoreError> {
        let rel = relations.iter().map(|r| PathElement::parse(r, &quiver)).collect::<Result<Vec<_>, _>>()?;
        Self::new(quiver, rel)
    }

    pub fn quiver(&self) -> &MixedGraph {
        &self.quiver
    }

    pub fn relations(&self) -> &[PathElement<T>] {
        &self.relations
    }
}

/// All paths of length at most `bound`, sorted.
pub fn paths_up_to(q: &MixedGraph, bound: usize) -> Vec<Path> {
    let mut all: Vec<Path> = (1..=q.vertices()).map(Path::lazy).collect();
    let mut frontier = all.clone();
    for _ in 0..bound {
        let mut next = Vec::new();
        for p in &frontier {
            for (k, a) in q.arrows().iter().enumerate() {
                if a.src == p.end {
                    let mut arrows = p.arrows.clone();
                    arrows.push(k);
                    next.push(Path { start: p.start, end: a.dst, arrows });
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    all.sort();
    all
}

/// The path algebra of a quiver with relations, truncated at paths of length `bound`.
///
/// The truncated ideal is the span of all `p r q` with `r` a relation and
/// `p r q` supported on paths of length at most `bound`. It is kept in reduced
/// echelon form with pivots on the largest paths, so normal forms use the
/// smallest paths available.
pub struct PathAlgebra<T> {
    qr: QuiverWithRelations<T>,
    bound: usize,
    tol: f64,
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
    /// Echelon rows over path indices, each with its pivot path index.
    reducer: Vec<(usize, Vec<T>)>,
}

impl<T: Field> PathAlgebra<T> {
    pub fn new(qr: QuiverWithRelations<T>, bound: usize, tol: f64) -> Result<Self, CoreError> {
        if let Some(r) = qr.relations.iter().find(|r| r.max_len() > bound) {
            return Err(CoreError::invalid(format!(
                "relation {} is longer than the length bound {bound}",
                r.display(&qr.quiver)
            )));
        }
        let paths = paths_up_to(&qr.quiver, bound);
        let index: HashMap<Path, usize> = paths.iter().cloned().enumerate().map(|(k, p)| (p, k)).collect();
        let n = paths.len();
        let generators = truncated_ideal(&qr, &paths, bound);
        // columns in decreasing path order so that pivots land on the largest paths
        let rows: Vec<Vec<T>> = generators
            .iter()
            .map(|g| {
                let mut row = vec![T::zero(); n];
                for (p, c) in g.terms() {
                    row[n - 1 - index[p]] = c.clone();
                }
                row
            })
            .collect();
        let mut reducer = Vec::new();
        if !rows.is_empty() {
            let m = Matrix::from_rows(rows);
            let (r, pivots) = m.rref(tol);
            for (k, &col) in pivots.iter().enumerate() {
                let mut row = vec![T::zero(); n];
                for (c, slot) in (0..n).map(|c| (c, n - 1 - c)) {
                    row[slot] = r[(k, c)].clone();
                }
                reducer.push((n - 1 - col, row));
            }
        }
        Ok(PathAlgebra { qr, bound, tol, paths, index, reducer })
    }

    pub fn quiver(&self) -> &MixedGraph {
        &self.qr.quiver
    }

    pub fn relations(&self) -> &[PathElement<T>] {
        &self.qr.relations
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// Dimension of the truncated ideal.
    pub fn ideal_dim(&self) -> usize {
        self.reducer.len()
    }

    /// Residue-class representatives: the paths that are not pivots of the ideal.
    pub fn basis(&self) -> Vec<Path> {
        let pivots: std::collections::HashSet<usize> = self.reducer.iter().map(|(p, _)| *p).collect();
        (0..self.paths.len()).filter(|k| !pivots.contains(k)).map(|k| self.paths[k].clone()).collect()
    }

    fn coordinates(&self, x: &PathElement<T>) -> Result<Vec<T>, CoreError> {
        let mut v = vec![T::zero(); self.paths.len()];
        for (p, c) in x.terms() {
            let k = self.index.get(p).ok_or(CoreError::LengthBoundExceeded(self.bound))?;
            v[*k] = c.clone();
        }
        Ok(v)
    }

    fn element(&self, v: &[T]) -> PathElement<T> {
        let mut out = PathElement::zero();
        for (k, c) in v.iter().enumerate() {
            if !c.is_negligible(if T::EXACT { 0.0 } else { self.tol }) {
                out.add_term(self.paths[k].clone(), c.clone());
            }
        }
        out
    }

    /// The normal form of `x` modulo the truncated ideal.
    pub fn reduce(&self, x: &PathElement<T>) -> Result<PathElement<T>, CoreError> {
        let mut v = self.coordinates(x)?;
        for (pivot, row) in &self.reducer {
            let c = v[*pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (slot, r) in v.iter_mut().zip(row) {
                *slot = slot.sub_ref(&r.mul_ref(&c));
            }
        }
        Ok(self.element(&v))
    }

    /// True when `x` lies in the truncated ideal.
    pub fn in_ideal(&self, x: &PathElement<T>) -> Result<bool, CoreError> {
        Ok(self.reduce(x)?.is_zero())
    }

    /// Product `x y` reduced modulo the relations.
    pub fn multiply(&self, x: &PathElement<T>, y: &PathElement<T>) -> Result<PathElement<T>, CoreError> {
        if x.max_len() > self.bound || y.max_len() > self.bound {
            return Err(CoreError::LengthBoundExceeded(self.bound));
        }
        let product = x.concat(y);
        if product.max_len() > self.bound {
            return Err(CoreError::LengthBoundExceeded(self.bound));
        }
        self.reduce(&product)
    }

    /// The unit `e_1 + ... + e_t`.
    pub fn one(&self) -> PathElement<T> {
        PathElement::one(&self.qr.quiver)
    }

    pub fn parse(&self, text: &str) -> Result<PathElement<T>, CoreError> {
        PathElement::parse(text, &self.qr.quiver)
    }

    pub fn display(&self, x: &PathElement<T>) -> String {
        x.display(&self.qr.quiver)
    }

    /// Equality of truncated ideals with another relation set on the same quiver and bound.
    pub fn same_ideal(&self, other: &PathAlgebra<T>) -> Result<bool, CoreError> {
        if self.paths != other.paths || self.ideal_dim() != other.ideal_dim() {
            return Ok(false);
        }
        for (_, row) in &other.reducer {
            if !self.in_ideal(&other.element(row))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Spanning set of the truncated ideal: all `p r q` within the bound.
fn truncated_ideal<T: Field>(qr: &QuiverWithRelations<T>, paths: &[Path], bound: usize) -> Vec<PathElement<T>> {
    let mut out = Vec::new();
    for r in &qr.relations {
        let (u, v) = r.endpoints().expect("checked on construction");
        let room = bound - r.max_len();
        for q in paths.iter().filter(|q| q.end == u && q.len() <= room) {
            let rq = r.concat(&PathElement::path(q.clone()));
            for p in paths.iter().filter(|p| p.start == v && p.len() + q.len() <= room) {
                out.push(PathElement::path(p.clone()).concat(&rq));
            }
        }
    }
    out
}

/// Residue-class representatives of paths of length at most `bound`.
pub fn basis_up_to_length<T: Field>(qr: &QuiverWithRelations<T>, bound: usize) -> Result<Vec<Path>, CoreError> {
    Ok(PathAlgebra::new(qr.clone(), bound, qf_algebra::DEFAULT_TOLERANCE)?.basis())
}

/// The matrix of a path in a representation: the product of its arrow maps,
/// or the identity for a lazy path.
pub fn path_matrix<T: Field>(rep: &Representation<T>, p: &Path) -> Matrix<T> {
    p.arrows.iter().fold(Matrix::identity(rep.dims()[p.start - 1]), |acc, &k| rep.maps()[k].mul(&acc))
}

/// True when every relation evaluates to zero on `rep`.
pub fn satisfies_relations<T: Field>(rep: &Representation<T>, relations: &[PathElement<T>], tol: f64) -> Result<bool, CoreError> {
    for r in relations {
        let Some((u, v)) = r.endpoints() else {
            return Err(CoreError::invalid("relation with mixed endpoints"));
        };
        let mut sum = Matrix::zeros(rep.dims()[v - 1], rep.dims()[u - 1]);
        for (p, c) in r.terms() {
            if p.arrows.iter().any(|&k| k >= rep.maps().len()) {
                return Err(CoreError::GraphMismatch);
            }
            sum = sum.add(&path_matrix(rep, p).scale(c));
        }
        let scale = rep.maps().iter().fold(1.0f64, |s, m| s.max(m.max_abs()));
        if !sum.is_negligible(if T::EXACT { 0.0 } else { tol * scale.powi(r.max_len().max(1) as i32) }) {
            return Ok(false);
        }
    }
    Ok(true)
}
