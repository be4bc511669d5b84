//! Canonical forms for the six classical matrix problems: equivalence,
//! similarity, matrix pencils, contragredient pairs, congruence and
//! *congruence, plus real symmetric forms.
//!
//! Every engine returns a [`Decomposition`]: a sorted multiset of block
//! descriptors. [`realize`] builds the direct sum of the literal blocks, and
//! [`decompose_representation`] dispatches a representation to the engine
//! matching its graph.

use std::cmp::Ordering;
use std::fmt;

use qf_algebra::{Field, Involution, Poly, DEFAULT_TOLERANCE};

mod blocks;
mod congruence;
mod contragredient;
mod decompose;
mod equivalence;
mod pencil;
mod similarity;
mod spectrum;

pub use blocks::{build_block, delta, gamma, h_block, jordan, l_block, r_block, BlockMatrices};
pub use congruence::{
    canon_congruence, canon_real_symmetric, canon_star_congruence, congruence_fingerprint, star_fingerprint,
};
pub use contragredient::canon_contragredient;
pub use decompose::{decompose_representation, problem_graph, realize, shape_of};
pub use equivalence::canon_equivalence;
pub use pencil::canon_pencil;
pub use similarity::canon_similarity;

/// Default tolerance for clustering float eigenvalues and deciding `|lambda| = 1`.
pub const DEFAULT_CLUSTER_TOLERANCE: f64 = 1e-8;

/// Tolerances and involution used by the engines. Exact domains ignore the tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonOptions {
    pub involution: Involution,
    /// Relative tolerance for rank decisions.
    pub tol: f64,
    /// Relative tolerance for eigenvalue clustering and modulus tests.
    pub cluster_tol: f64,
}

impl Default for CanonOptions {
    fn default() -> Self {
        CanonOptions { involution: Involution::Identity, tol: DEFAULT_TOLERANCE, cluster_tol: DEFAULT_CLUSTER_TOLERANCE }
    }
}

impl CanonOptions {
    pub fn with_involution(involution: Involution) -> Self {
        CanonOptions { involution, ..Self::default() }
    }
}

/// The matrix problem a decomposition belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Problem {
    Equivalence,
    Similarity,
    Pencil,
    Contragredient,
    Congruence,
    StarCongruence,
    RealSymmetric,
}

impl Problem {
    pub const ALL: [Problem; 7] = [
        Problem::Equivalence,
        Problem::Similarity,
        Problem::Pencil,
        Problem::Contragredient,
        Problem::Congruence,
        Problem::StarCongruence,
        Problem::RealSymmetric,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Problem::Equivalence => "equivalence",
            Problem::Similarity => "similarity",
            Problem::Pencil => "pencil",
            Problem::Contragredient => "contragredient",
            Problem::Congruence => "congruence",
            Problem::StarCongruence => "star-congruence",
            Problem::RealSymmetric => "real-symmetric",
        }
    }
}

/// A power `base^exponent` of a monic irreducible polynomial.
#[derive(Clone, PartialEq)]
pub struct ElementaryDivisor<T> {
    pub base: Poly<T>,
    pub exponent: usize,
}

impl<T: Field> ElementaryDivisor<T> {
    pub fn new(base: Poly<T>, exponent: usize) -> Self {
        ElementaryDivisor { base, exponent }
    }

    /// `(x - lambda)^exponent`.
    pub fn linear(lambda: &T, exponent: usize) -> Self {
        ElementaryDivisor { base: Poly::linear(lambda), exponent }
    }

    /// The eigenvalue when the base is linear.
    pub fn eigenvalue(&self) -> Option<T> {
        (self.base.deg() == 1).then(|| self.base.coeff(0).neg_ref())
    }

    pub fn poly(&self) -> Poly<T> {
        self.base.pow(self.exponent)
    }

    /// Size of the companion (or Jordan) block.
    pub fn size(&self) -> usize {
        self.base.deg() * self.exponent
    }

    fn cmp(&self, other: &Self) -> Ordering {
        self.base.deg().cmp(&other.base.deg()).then_with(|| self.base.total_cmp(&other.base)).then(self.exponent.cmp(&other.exponent))
    }

    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.exponent == other.exponent
            && self.base.deg() == other.base.deg()
            && self.base.coeffs().iter().zip(other.base.coeffs()).all(|(a, b)| a.approx_eq(b, tol * a.to_c64().norm().max(1.0)))
    }
}

impl<T: Field> fmt::Display for ElementaryDivisor<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exponent == 1 {
            write!(f, "{}", self.base)
        } else {
            write!(f, "({})^{}", self.base, self.exponent)
        }
    }
}

impl<T: Field> fmt::Debug for ElementaryDivisor<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Indecomposable blocks of a single linear map `F^n -> F^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum EquivBlock {
    /// `F -> F` by `[1]`.
    Identity,
    /// `0 -> F`, the `1 x 0` matrix.
    ZeroToField,
    /// `F -> 0`, the `0 x 1` matrix.
    FieldToZero,
}

/// Kronecker blocks of a pair `(A, B)` read as the pencil `x A - B`.
#[derive(Clone, PartialEq)]
pub enum PencilBlock<T> {
    /// `(I_n, C(q))`.
    Regular(ElementaryDivisor<T>),
    /// `(J_n(0), I_n)`: infinite elementary divisor of degree `n`.
    Infinite(usize),
    /// `(L_n, R_n)`, of size `(n-1) x n`.
    ColumnMinimal(usize),
    /// `(L_n^T, R_n^T)`, of size `n x (n-1)`.
    RowMinimal(usize),
}

/// Blocks of a pair `A: F^q -> F^p`, `B: F^p -> F^q` under `(R^-1 A S, S^-1 B R)`.
#[derive(Clone, PartialEq)]
pub enum ContraBlock<T> {
    /// `(I_n, C(q))`; `q` may be a power of `x`.
    Regular(ElementaryDivisor<T>),
    /// `(J_n(0), I_n)`.
    Nilpotent(usize),
    /// `(L_n, R_n^T)`.
    ColumnChain(usize),
    /// `(L_n^T, R_n)`.
    RowChain(usize),
}

/// Blocks of a bilinear form under congruence.
#[derive(Clone, PartialEq)]
pub enum CongruenceBlock<T> {
    /// `[[0, I_n], [J_n(lambda), 0]]`, `0 != lambda != (-1)^(n+1)`, `lambda ~ 1/lambda`.
    H { size: usize, lambda: T },
    Gamma(usize),
    JZero(usize),
}

/// Blocks of a sesquilinear form under *congruence.
#[derive(Clone, PartialEq)]
pub enum StarBlock<T> {
    /// `[[0, I_n], [J_n(lambda), 0]]` with `|lambda| > 1`.
    H { size: usize, lambda: T },
    /// `mu Delta_n` with `mu = sign * sqrt(nu)` (principal root), `|nu| = 1`.
    /// The cosquare of the block has the single eigenvalue `nu`.
    Delta { size: usize, nu: T, sign: i8 },
    JZero(usize),
}

impl<T: Field> StarBlock<T> {
    /// The phase `mu` of `mu Delta_n`, when `sqrt(nu)` lies in the domain.
    pub fn mu(&self) -> Option<T> {
        match self {
            StarBlock::Delta { nu, sign, .. } => {
                let root = principal_sqrt(nu)?;
                Some(if *sign < 0 { root.neg_ref() } else { root })
            }
            _ => None,
        }
    }
}

/// The square root with positive real part (or positive imaginary part on the negative axis).
pub(crate) fn principal_sqrt<T: Field>(a: &T) -> Option<T> {
    let r = a.sqrt()?;
    let c = r.to_c64();
    let flip = c.re < 0.0 || (c.re == 0.0 && c.im < 0.0);
    Some(if flip { r.neg_ref() } else { r })
}

/// Blocks of a real symmetric form: `[1]`, `[-1]`, `[0]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SignBlock {
    Plus,
    Minus,
    Zero,
}

/// A block descriptor of any of the problems.
#[derive(Clone, PartialEq)]
pub enum Block<T> {
    Equivalence(EquivBlock),
    Similarity(ElementaryDivisor<T>),
    Pencil(PencilBlock<T>),
    Contragredient(ContraBlock<T>),
    Congruence(CongruenceBlock<T>),
    StarCongruence(StarBlock<T>),
    RealSymmetric(SignBlock),
}

impl<T: Field> Block<T> {
    pub fn problem(&self) -> Problem {
        match self {
            Block::Equivalence(_) => Problem::Equivalence,
            Block::Similarity(_) => Problem::Similarity,
            Block::Pencil(_) => Problem::Pencil,
            Block::Contragredient(_) => Problem::Contragredient,
            Block::Congruence(_) => Problem::Congruence,
            Block::StarCongruence(_) => Problem::StarCongruence,
            Block::RealSymmetric(_) => Problem::RealSymmetric,
        }
    }

    /// Variant rank and integer key used for the canonical order.
    fn key(&self) -> (u8, usize) {
        match self {
            Block::Equivalence(b) => (*b as u8, 0),
            Block::Similarity(ed) => (0, ed.size()),
            Block::Pencil(PencilBlock::Regular(ed)) | Block::Contragredient(ContraBlock::Regular(ed)) => (0, ed.size()),
            Block::Pencil(PencilBlock::Infinite(n)) | Block::Contragredient(ContraBlock::Nilpotent(n)) => (1, *n),
            Block::Pencil(PencilBlock::ColumnMinimal(n)) | Block::Contragredient(ContraBlock::ColumnChain(n)) => (2, *n),
            Block::Pencil(PencilBlock::RowMinimal(n)) | Block::Contragredient(ContraBlock::RowChain(n)) => (3, *n),
            Block::Congruence(CongruenceBlock::H { size, .. }) | Block::StarCongruence(StarBlock::H { size, .. }) => (0, *size),
            Block::Congruence(CongruenceBlock::Gamma(n)) => (1, *n),
            Block::StarCongruence(StarBlock::Delta { size, .. }) => (1, *size),
            Block::Congruence(CongruenceBlock::JZero(n)) | Block::StarCongruence(StarBlock::JZero(n)) => (2, *n),
            Block::RealSymmetric(s) => (*s as u8, 0),
        }
    }

    fn cmp(&self, other: &Self) -> Ordering {
        self.problem().cmp(&other.problem()).then(self.key().cmp(&other.key())).then_with(|| match (self, other) {
            (Block::Similarity(a), Block::Similarity(b))
            | (Block::Pencil(PencilBlock::Regular(a)), Block::Pencil(PencilBlock::Regular(b)))
            | (Block::Contragredient(ContraBlock::Regular(a)), Block::Contragredient(ContraBlock::Regular(b))) => a.cmp(b),
            (Block::Congruence(CongruenceBlock::H { lambda: a, .. }), Block::Congruence(CongruenceBlock::H { lambda: b, .. }))
            | (Block::StarCongruence(StarBlock::H { lambda: a, .. }), Block::StarCongruence(StarBlock::H { lambda: b, .. })) => {
                a.total_cmp(b)
            }
            (
                Block::StarCongruence(StarBlock::Delta { nu: a, sign: s, .. }),
                Block::StarCongruence(StarBlock::Delta { nu: b, sign: t, .. }),
            ) => a.total_cmp(b).then(s.cmp(t)),
            _ => Ordering::Equal,
        })
    }

    /// Equality with scalar parameters compared up to `tol` (relative).
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let close = |a: &T, b: &T| a.approx_eq(b, tol * a.to_c64().norm().max(1.0));
        match (self, other) {
            (Block::Similarity(a), Block::Similarity(b))
            | (Block::Pencil(PencilBlock::Regular(a)), Block::Pencil(PencilBlock::Regular(b)))
            | (Block::Contragredient(ContraBlock::Regular(a)), Block::Contragredient(ContraBlock::Regular(b))) => a.approx_eq(b, tol),
            (
                Block::Congruence(CongruenceBlock::H { size: m, lambda: a }),
                Block::Congruence(CongruenceBlock::H { size: n, lambda: b }),
            )
            | (
                Block::StarCongruence(StarBlock::H { size: m, lambda: a }),
                Block::StarCongruence(StarBlock::H { size: n, lambda: b }),
            ) => m == n && close(a, b),
            (
                Block::StarCongruence(StarBlock::Delta { size: m, nu: a, sign: s }),
                Block::StarCongruence(StarBlock::Delta { size: n, nu: b, sign: t }),
            ) => m == n && s == t && close(a, b),
            _ => self == other,
        }
    }
}

impl<T: Field> fmt::Display for Block<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::Equivalence(EquivBlock::Identity) => write!(f, "identity F -> F"),
            Block::Equivalence(EquivBlock::ZeroToField) => write!(f, "0 -> F"),
            Block::Equivalence(EquivBlock::FieldToZero) => write!(f, "F -> 0"),
            Block::Similarity(ed) => write!(f, "C({ed})"),
            Block::Pencil(PencilBlock::Regular(ed)) => write!(f, "(I, C({ed}))"),
            Block::Pencil(PencilBlock::Infinite(n)) => write!(f, "(J_{n}(0), I_{n})"),
            Block::Pencil(PencilBlock::ColumnMinimal(n)) => write!(f, "(L_{n}, R_{n})"),
            Block::Pencil(PencilBlock::RowMinimal(n)) => write!(f, "(L_{n}^T, R_{n}^T)"),
            Block::Contragredient(ContraBlock::Regular(ed)) => write!(f, "(I, C({ed}))"),
            Block::Contragredient(ContraBlock::Nilpotent(n)) => write!(f, "(J_{n}(0), I_{n})"),
            Block::Contragredient(ContraBlock::ColumnChain(n)) => write!(f, "(L_{n}, R_{n}^T)"),
            Block::Contragredient(ContraBlock::RowChain(n)) => write!(f, "(L_{n}^T, R_{n})"),
            Block::Congruence(CongruenceBlock::H { size, lambda }) => write!(f, "H_{size}({lambda})"),
            Block::Congruence(CongruenceBlock::Gamma(n)) => write!(f, "Gamma_{n}"),
            Block::Congruence(CongruenceBlock::JZero(n)) | Block::StarCongruence(StarBlock::JZero(n)) => write!(f, "J_{n}(0)"),
            Block::StarCongruence(StarBlock::H { size, lambda }) => write!(f, "H_{size}({lambda})"),
            Block::StarCongruence(b @ StarBlock::Delta { size, nu, sign }) => match b.mu() {
                Some(mu) => write!(f, "({mu}) Delta_{size}"),
                None => write!(f, "{}sqrt({nu}) Delta_{size}", if *sign < 0 { "-" } else { "" }),
            },
            Block::RealSymmetric(SignBlock::Plus) => write!(f, "[1]"),
            Block::RealSymmetric(SignBlock::Minus) => write!(f, "[-1]"),
            Block::RealSymmetric(SignBlock::Zero) => write!(f, "[0]"),
        }
    }
}

impl<T: Field> fmt::Debug for Block<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A canonical decomposition: a multiset of blocks of one problem, kept sorted.
#[derive(Clone, PartialEq)]
pub struct Decomposition<T> {
    problem: Problem,
    blocks: Vec<Block<T>>,
}

impl<T: Field> Decomposition<T> {
    /// Sorts the blocks; every block must belong to `problem`.
    pub fn new(problem: Problem, mut blocks: Vec<Block<T>>) -> Result<Self, crate::CoreError> {
        if let Some(b) = blocks.iter().find(|b| b.problem() != problem) {
            return Err(crate::CoreError::InvalidDescriptor(format!("block {b} does not belong to {}", problem.name())));
        }
        blocks.sort_by(|a, b| a.cmp(b));
        Ok(Decomposition { problem, blocks })
    }

    pub fn problem(&self) -> Problem {
        self.problem
    }

    pub fn blocks(&self) -> &[Block<T>] {
        &self.blocks
    }

    /// Multiset union.
    pub fn union(&self, other: &Self) -> Result<Self, crate::CoreError> {
        Self::new(self.problem, self.blocks.iter().chain(&other.blocks).cloned().collect())
    }

    /// Multiset equality with parameters compared up to `tol`.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if self.problem != other.problem || self.blocks.len() != other.blocks.len() {
            return false;
        }
        let mut used = vec![false; other.blocks.len()];
        self.blocks.iter().all(|b| {
            let hit = other.blocks.iter().enumerate().position(|(k, c)| !used[k] && b.approx_eq(c, tol));
            hit.map(|k| used[k] = true).is_some()
        })
    }

    /// The decomposition as a JSON value.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "problem": self.problem.name(),
            "blocks": self.blocks.iter().map(block_json).collect::<Vec<_>>(),
        })
    }
}

impl<T: Field> fmt::Display for Decomposition<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        write!(f, "{}: {}", self.problem.name(), if parts.is_empty() { "(empty)".into() } else { parts.join(" + ") })
    }
}

impl<T: Field> fmt::Debug for Decomposition<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn ed_json<T: Field>(kind: &str, ed: &ElementaryDivisor<T>) -> serde_json::Value {
    serde_json::json!({
        "type": kind,
        "base": ed.base.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "exponent": ed.exponent,
        "poly": ed.to_string(),
    })
}

fn sized(kind: &str, n: usize) -> serde_json::Value {
    serde_json::json!({ "type": kind, "size": n })
}

/// One block descriptor as JSON.
pub fn block_json<T: Field>(b: &Block<T>) -> serde_json::Value {
    use serde_json::json;
    match b {
        Block::Equivalence(EquivBlock::Identity) => json!({ "type": "identity" }),
        Block::Equivalence(EquivBlock::ZeroToField) => json!({ "type": "zero-to-field" }),
        Block::Equivalence(EquivBlock::FieldToZero) => json!({ "type": "field-to-zero" }),
        Block::Similarity(ed) => ed_json("companion", ed),
        Block::Pencil(PencilBlock::Regular(ed)) | Block::Contragredient(ContraBlock::Regular(ed)) => ed_json("regular", ed),
        Block::Pencil(PencilBlock::Infinite(n)) => sized("infinite", *n),
        Block::Pencil(PencilBlock::ColumnMinimal(n)) => sized("column-minimal", *n),
        Block::Pencil(PencilBlock::RowMinimal(n)) => sized("row-minimal", *n),
        Block::Contragredient(ContraBlock::Nilpotent(n)) => sized("nilpotent", *n),
        Block::Contragredient(ContraBlock::ColumnChain(n)) => sized("column-chain", *n),
        Block::Contragredient(ContraBlock::RowChain(n)) => sized("row-chain", *n),
        Block::Congruence(CongruenceBlock::H { size, lambda }) | Block::StarCongruence(StarBlock::H { size, lambda }) => {
            json!({ "type": "H", "size": size, "lambda": lambda.to_string() })
        }
        Block::Congruence(CongruenceBlock::Gamma(n)) => sized("Gamma", *n),
        Block::Congruence(CongruenceBlock::JZero(n)) | Block::StarCongruence(StarBlock::JZero(n)) => sized("Jzero", *n),
        Block::StarCongruence(d @ StarBlock::Delta { size, nu, sign }) => {
            let mut v = json!({ "type": "Delta", "size": size, "nu": nu.to_string(), "sign": sign });
            if let Some(mu) = d.mu() {
                v["mu"] = mu.to_string().into();
            }
            v
        }
        Block::RealSymmetric(SignBlock::Plus) => json!({ "type": "plus", "matrix": "[1]" }),
        Block::RealSymmetric(SignBlock::Minus) => json!({ "type": "minus", "matrix": "[-1]" }),
        Block::RealSymmetric(SignBlock::Zero) => json!({ "type": "zero", "matrix": "[0]" }),
    }
}
