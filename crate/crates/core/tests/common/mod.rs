//! Seeded generators shared by the integration tests: random canonical block
//! multisets, random invertible changes of basis and random representations.

#![allow(dead_code)]

use qf_algebra::{ComplexFloat, Field, Involution, Matrix, Poly};
use quiverforms::canon::{
    build_block, realize, Block, CanonOptions, CongruenceBlock, ContraBlock, Decomposition, ElementaryDivisor, EquivBlock,
    PencilBlock, Problem, SignBlock, StarBlock,
};
use quiverforms::{Arrow, Edge, MixedGraph, Representation};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int<T: Field>(k: i64) -> T {
    T::from_i64(k)
}

pub fn frac<T: Field>(p: i64, q: i64) -> T {
    int::<T>(p).div_ref(&int(q))
}

/// `a + b i`, or `a` when the domain has no imaginary unit.
pub fn complex<T: Field>(a: T, b: T) -> T {
    match T::imag_unit() {
        Some(i) => a.add_ref(&i.mul_ref(&b)),
        None => a,
    }
}

/// A small random entry: integers in `-2..=2` (Gaussian integers over Q(i)),
/// or a uniform complex number in the unit square for floats.
pub fn entry<T: Field>(rng: &mut Rng8) -> T {
    if T::EXACT {
        complex(int(rng.gen_range(-2..=2)), int(rng.gen_range(-2..=2)))
    } else {
        let re = T::from_f64_parts(rng.gen_range(-1.0..1.0), 0.0);
        let im = T::from_f64_parts(rng.gen_range(-1.0..1.0), 0.0);
        complex(re, im)
    }
}

pub fn random_matrix<T: Field>(rows: usize, cols: usize, rng: &mut Rng8) -> Matrix<T> {
    Matrix::from_fn(rows, cols, |_, _| entry(rng))
}

/// `P L D U` with unit triangular `L, U`, a random permutation `P` and a
/// diagonal `D` of units, so the result is invertible by construction.
pub fn invertible<T: Field>(n: usize, rng: &mut Rng8) -> Matrix<T> {
    let lower = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Greater => entry(rng),
        std::cmp::Ordering::Equal => T::one(),
        std::cmp::Ordering::Less => T::zero(),
    });
    let upper = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => entry(rng),
        std::cmp::Ordering::Equal => T::one(),
        std::cmp::Ordering::Greater => T::zero(),
    });
    let diag: Vec<T> = (0..n)
        .map(|_| {
            let d: T = int([1, -1, 2, -2][rng.gen_range(0..4)]);
            if T::imag_unit().is_some() && rng.gen_bool(0.3) {
                d.mul_ref(&T::imag_unit().expect("checked"))
            } else {
                d
            }
        })
        .collect();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let p = Matrix::from_fn(n, n, |i, j| if perm[i] == j { T::one() } else { T::zero() });
    p.mul(&lower).mul(&Matrix::diagonal(&diag)).mul(&upper)
}

/// Float scalars built from real and imaginary parts.
pub trait FromParts {
    fn from_f64_parts(re: f64, im: f64) -> Self;
}

impl<T: Field> FromParts for T {
    fn from_f64_parts(re: f64, im: f64) -> Self {
        let scale = 1u64 << 40;
        let part = |x: f64| frac::<T>((x * scale as f64).round() as i64, scale as i64);
        complex(part(re), part(im))
    }
}

pub fn cf(re: f64, im: f64) -> ComplexFloat {
    ComplexFloat::new(re, im)
}

/// Eigenvalues drawn from a fixed pool (exact) or well separated random
/// points (float); repeats of earlier picks are allowed on purpose.
pub struct EigenPool<T> {
    taken: Vec<T>,
}

impl<T: Field> EigenPool<T> {
    pub fn new() -> Self {
        EigenPool { taken: Vec::new() }
    }

    pub fn pick(&mut self, rng: &mut Rng8, nonzero: bool) -> T {
        if !self.taken.is_empty() && rng.gen_bool(0.3) {
            let c = self.taken[rng.gen_range(0..self.taken.len())].clone();
            if !(nonzero && c.is_zero()) {
                return c;
            }
        }
        let value = if T::EXACT {
            let mut pool: Vec<T> = vec![int(-2), int(-1), int(0), int(1), int(2), int(3), frac(1, 2)];
            if T::imag_unit().is_some() {
                pool.extend([complex(int(0), int(1)), complex(int(1), int(1)), complex(int(0), int(-2))]);
            }
            pool.retain(|c| !(nonzero && c.is_zero()));
            pool[rng.gen_range(0..pool.len())].clone()
        } else {
            loop {
                let c = complex(T::from_f64_parts(rng.gen_range(-2.0..2.0), 0.0), T::from_f64_parts(rng.gen_range(-2.0..2.0), 0.0));
                let far = self.taken.iter().all(|t| t.sub_ref(&c).to_c64().norm() > 0.5);
                if far && (!nonzero || c.to_c64().norm() > 0.5) {
                    break c;
                }
            }
        };
        self.taken.push(value.clone());
        value
    }
}

/// Monic irreducible quadratics over the domain.
fn quadratics<T: Field>() -> Vec<Poly<T>> {
    let p = |c: &[i64]| Poly::new(c.iter().map(|&k| int::<T>(k)).collect());
    if T::imag_unit().is_some() {
        vec![p(&[-2, 0, 1]), p(&[1, 1, 1]), p(&[3, 0, 1])]
    } else {
        vec![p(&[1, 0, 1]), p(&[-2, 0, 1]), p(&[1, 1, 1])]
    }
}

fn divisor<T: Field>(rng: &mut Rng8, pool: &mut EigenPool<T>, nonzero: bool) -> ElementaryDivisor<T> {
    if T::EXACT && rng.gen_bool(0.25) {
        let q = quadratics::<T>();
        let base = q[rng.gen_range(0..q.len())].clone();
        ElementaryDivisor::new(base, rng.gen_range(1..=2))
    } else {
        ElementaryDivisor::linear(&pool.pick(rng, nonzero), rng.gen_range(1..=3))
    }
}

/// `(-1)^(n+1)`.
fn gamma_eigenvalue<T: Field>(n: usize) -> T {
    if n % 2 == 1 {
        T::one()
    } else {
        T::one().neg_ref()
    }
}

fn unit_circle<T: Field>(rng: &mut Rng8) -> T {
    if T::EXACT {
        let pool = [(1, 0, 1), (-1, 0, 1), (0, 1, 1), (0, -1, 1), (3, 4, 5), (-3, 4, 5), (4, -3, 5), (5, 12, 13)];
        let len = if T::imag_unit().is_some() { pool.len() } else { 2 };
        let (a, b, d) = pool[rng.gen_range(0..len)];
        complex(frac(a, d), frac(b, d))
    } else {
        let theta: f64 = rng.gen_range(-3.1..3.1);
        complex(T::from_f64_parts(theta.cos(), 0.0), T::from_f64_parts(theta.sin(), 0.0))
    }
}

/// A scalar of modulus greater than one.
fn outside_circle<T: Field>(rng: &mut Rng8) -> T {
    if T::EXACT {
        let mut pool: Vec<T> = vec![int(2), int(-3), frac(3, 2), frac(-5, 2)];
        if T::imag_unit().is_some() {
            pool.extend([complex(int(1), int(1)), complex(int(0), int(2)), complex(int(-2), int(1))]);
        }
        pool[rng.gen_range(0..pool.len())].clone()
    } else {
        let r: f64 = rng.gen_range(1.5..3.0);
        let theta: f64 = rng.gen_range(-3.1..3.1);
        complex(T::from_f64_parts(r * theta.cos(), 0.0), T::from_f64_parts(r * theta.sin(), 0.0))
    }
}

/// The representative of `{lambda, 1/lambda}` used by congruence `H` blocks:
/// the larger modulus, and on the unit circle the larger in the total order.
fn reciprocal_pick<T: Field>(lambda: T) -> T {
    let inv = lambda.inv().expect("nonzero");
    let (a, b) = (lambda.to_c64().norm(), inv.to_c64().norm());
    if (a - b).abs() > 1e-12 {
        if a > b {
            lambda
        } else {
            inv
        }
    } else if lambda.total_cmp(&inv) == std::cmp::Ordering::Less {
        inv
    } else {
        lambda
    }
}

fn random_block<T: Field>(problem: Problem, rng: &mut Rng8, pool: &mut EigenPool<T>) -> Block<T> {
    let n = |rng: &mut Rng8, hi: usize| rng.gen_range(1..=hi);
    match problem {
        Problem::Equivalence => {
            Block::Equivalence([EquivBlock::Identity, EquivBlock::ZeroToField, EquivBlock::FieldToZero][rng.gen_range(0..3)])
        }
        Problem::Similarity => Block::Similarity(divisor(rng, pool, false)),
        Problem::Pencil => Block::Pencil(match rng.gen_range(0..4) {
            0 => PencilBlock::Regular(divisor(rng, pool, false)),
            1 => PencilBlock::Infinite(n(rng, 3)),
            2 => PencilBlock::ColumnMinimal(n(rng, 3)),
            _ => PencilBlock::RowMinimal(n(rng, 3)),
        }),
        Problem::Contragredient => Block::Contragredient(match rng.gen_range(0..4) {
            0 => ContraBlock::Regular(divisor(rng, pool, false)),
            1 => ContraBlock::Nilpotent(n(rng, 3)),
            2 => ContraBlock::ColumnChain(n(rng, 3)),
            _ => ContraBlock::RowChain(n(rng, 3)),
        }),
        Problem::Congruence => Block::Congruence(match rng.gen_range(0..3) {
            0 => {
                let size = n(rng, 2);
                let lambda = loop {
                    let c = if T::EXACT && rng.gen_bool(0.3) { unit_circle::<T>(rng) } else { outside_circle::<T>(rng) };
                    if !c.approx_eq(&gamma_eigenvalue(size), 1e-9) {
                        break c;
                    }
                };
                CongruenceBlock::H { size, lambda: reciprocal_pick(lambda) }
            }
            1 => CongruenceBlock::Gamma(n(rng, 3)),
            _ => CongruenceBlock::JZero(n(rng, 4)),
        }),
        Problem::StarCongruence => Block::StarCongruence(match rng.gen_range(0..3) {
            0 => StarBlock::H { size: n(rng, 2), lambda: outside_circle(rng) },
            1 => StarBlock::Delta { size: n(rng, 3), nu: unit_circle(rng), sign: if rng.gen_bool(0.5) { 1 } else { -1 } },
            _ => StarBlock::JZero(n(rng, 4)),
        }),
        Problem::RealSymmetric => {
            Block::RealSymmetric([SignBlock::Plus, SignBlock::Minus, SignBlock::Zero][rng.gen_range(0..3)])
        }
    }
}

/// Total dimension of the realized block.
pub fn block_dim<T: Field>(b: &Block<T>) -> usize {
    let m = &build_block(b, 1e-9).expect("generated blocks are valid")[0];
    match b.problem() {
        Problem::Similarity | Problem::Congruence | Problem::StarCongruence | Problem::RealSymmetric => m.rows(),
        _ => m.rows() + m.cols(),
    }
}

/// A random canonical multiset of total dimension between 1 and `max_dim`.
pub fn planted<T: Field>(problem: Problem, max_dim: usize, rng: &mut Rng8) -> Decomposition<T> {
    let mut pool = EigenPool::new();
    let target = rng.gen_range(1..=max_dim);
    let mut blocks = Vec::new();
    let mut used = 0;
    for _ in 0..50 {
        if used >= target {
            break;
        }
        let b = random_block(problem, rng, &mut pool);
        let d = block_dim(&b);
        if used + d <= max_dim {
            used += d;
            blocks.push(b);
        }
    }
    Decomposition::new(problem, blocks).expect("blocks of one problem")
}

pub fn involution_for(problem: Problem) -> Involution {
    if problem == Problem::StarCongruence {
        Involution::Conjugation
    } else {
        Involution::Identity
    }
}

pub fn options_for<T: Field>(problem: Problem, tol: f64) -> CanonOptions {
    let base = CanonOptions::with_involution(involution_for(problem));
    if T::EXACT {
        base
    } else {
        CanonOptions { tol, cluster_tol: tol, ..base }
    }
}

/// Transport of a representation along random invertible vertex maps.
pub fn scramble<T: Field>(rep: &Representation<T>, involution: Involution, rng: &mut Rng8) -> Representation<T> {
    let s: Vec<Matrix<T>> = rep.dims().iter().map(|&z| invertible(z, rng)).collect();
    rep.transport(&s, involution, 1e-12).expect("invertible changes of basis")
}

/// The literal direct sum of the planted blocks.
pub fn realize_planted<T: Field>(d: &Decomposition<T>) -> Representation<T> {
    realize(d, 1e-9).expect("planted blocks realize")
}

/// A random mixed graph on 1..=3 vertices with up to 3 arrows and 2 edges.
pub fn random_mixed_graph(rng: &mut Rng8) -> MixedGraph {
    let t = rng.gen_range(1..=3);
    let arrows = (0..rng.gen_range(0..=3))
        .map(|k| Arrow { id: format!("a{k}"), src: rng.gen_range(1..=t), dst: rng.gen_range(1..=t) })
        .collect();
    let edges = (0..rng.gen_range(0..=2))
        .map(|k| Edge { id: format!("l{k}"), i: rng.gen_range(1..=t), j: rng.gen_range(1..=t) })
        .collect();
    MixedGraph::new(t, arrows, edges).expect("fresh ids")
}

/// A random representation of `g` with dimensions in `0..=max_dim`.
pub fn random_rep<T: Field>(g: &MixedGraph, max_dim: usize, rng: &mut Rng8) -> Representation<T> {
    let dims: Vec<usize> = (0..g.vertices()).map(|_| rng.gen_range(0..=max_dim)).collect();
    let maps = g.arrows().iter().map(|a| random_matrix(dims[a.dst - 1], dims[a.src - 1], rng)).collect();
    let forms = g.edges().iter().map(|e| random_matrix(dims[e.j - 1], dims[e.i - 1], rng)).collect();
    Representation::new(g.clone(), dims, maps, forms).expect("shapes follow the dimensions")
}
