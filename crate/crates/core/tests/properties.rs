//! Randomized invariants over exact scalars, driven by proptest seeds.

mod common;

use common::{invertible, random_matrix, random_mixed_graph, random_rep, rng};
use proptest::prelude::*;
use qf_algebra::{GaussianRational, Involution, Rational};
use quiverforms::canon::{canon_similarity, CanonOptions};
use quiverforms::doubling::{adjoint_rep, double_graph, double_representation, is_selfadjoint};
use quiverforms::path_algebra::{paths_up_to, PathAlgebra, PathElement, QuiverWithRelations};
use quiverforms::tits::TitsForm;
use quiverforms::wild::{embed_pair_to_commuting_nilpotent, induced_similarity};
use quiverforms::MixedGraph;
use rand::Rng;

type Qi = GaussianRational;

fn involution(conj: bool) -> Involution {
    if conj {
        Involution::Conjugation
    } else {
        Involution::Identity
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn doubled_representation_is_selfadjoint(seed in any::<u64>(), conj in any::<bool>()) {
        let mut r = rng(seed);
        let g = random_mixed_graph(&mut r);
        let rep = random_rep::<Qi>(&g, 3, &mut r);
        let inv = involution(conj);
        let (dq, doubled) = double_representation(&rep, inv).unwrap();
        prop_assert!(is_selfadjoint(&dq, &doubled, inv, 0.0).unwrap());
    }

    #[test]
    fn adjoint_is_an_involution(seed in any::<u64>(), conj in any::<bool>()) {
        let mut r = rng(seed);
        let g = random_mixed_graph(&mut r);
        let dq = double_graph(&g).unwrap();
        let m = random_rep::<Qi>(dq.quiver(), 2, &mut r);
        let inv = involution(conj);
        let twice = adjoint_rep(&dq, &adjoint_rep(&dq, &m, inv).unwrap(), inv).unwrap();
        prop_assert_eq!(twice, m);
    }

    #[test]
    fn doubling_keeps_vertex_and_arrow_pairing(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_mixed_graph(&mut r);
        let dq = double_graph(&g).unwrap();
        let q = dq.quiver();
        prop_assert_eq!(q.vertices(), 2 * g.vertices());
        prop_assert_eq!(q.arrows().len(), 2 * (g.arrows().len() + g.edges().len()));
        for (k, a) in q.arrows().iter().enumerate() {
            let s = &q.arrows()[dq.arrow_star(k)];
            prop_assert_eq!(s.src, dq.vertex_star(a.dst));
            prop_assert_eq!(s.dst, dq.vertex_star(a.src));
        }
    }

    #[test]
    fn commuting_nilpotent_embedding(seed in any::<u64>(), n in 1usize..4) {
        let mut r = rng(seed);
        let a = random_matrix::<Rational>(n, n, &mut r);
        let b = random_matrix::<Rational>(n, n, &mut r);
        let p = embed_pair_to_commuting_nilpotent(&a, &b).unwrap();
        prop_assert_eq!(p.first.mul(&p.second), p.second.mul(&p.first));
        prop_assert!(p.first.pow(3).is_zero());
        prop_assert!(p.second.pow(3).is_zero());

        let s = invertible::<Rational>(n, &mut r);
        let si = s.inverse(0.0).unwrap();
        let moved = embed_pair_to_commuting_nilpotent(&s.mul(&a).mul(&si), &s.mul(&b).mul(&si)).unwrap();
        let big = induced_similarity(&s);
        let big_inv = big.inverse(0.0).unwrap();
        prop_assert_eq!(big.mul(&p.first).mul(&big_inv), moved.first);
        prop_assert_eq!(big.mul(&p.second).mul(&big_inv), moved.second);
    }

    #[test]
    fn path_algebra_multiplication_is_associative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let q = MixedGraph::quiver(2, &[("a", 1, 1), ("b", 1, 2), ("c", 2, 1)]).unwrap();
        let qr = QuiverWithRelations::<Rational>::parse(q.clone(), &["a.a".to_string(), "c.b".to_string(), "b.c - b.a.c".to_string()]).unwrap();
        let alg = PathAlgebra::new(qr, 6, 0.0).unwrap();
        let paths = paths_up_to(&q, 2);
        let element = |r: &mut common::Rng8| {
            paths.iter().fold(PathElement::<Rational>::zero(), |acc, p| {
                acc.add(&PathElement::term(p.clone(), Rational::from(r.gen_range(-2i64..=2))))
            })
        };
        let (x, y, z) = (element(&mut r), element(&mut r), element(&mut r));
        let left = alg.multiply(&alg.multiply(&x, &y).unwrap(), &z).unwrap();
        let right = alg.multiply(&x, &alg.multiply(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let one = alg.one();
        prop_assert_eq!(alg.multiply(&one, &x).unwrap(), alg.reduce(&x).unwrap());
    }

    #[test]
    fn similarity_canon_is_conjugation_invariant(seed in any::<u64>(), n in 1usize..5) {
        let mut r = rng(seed);
        let a = random_matrix::<Qi>(n, n, &mut r);
        let s = invertible::<Qi>(n, &mut r);
        let b = s.mul(&a).mul(&s.inverse(0.0).unwrap());
        let opts = CanonOptions::with_involution(Involution::Identity);
        prop_assert_eq!(canon_similarity(&a, &opts).unwrap(), canon_similarity(&b, &opts).unwrap());
    }

    #[test]
    fn tits_form_matches_direct_count(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_mixed_graph(&mut r);
        let z: Vec<i64> = (0..g.vertices()).map(|_| r.gen_range(-3..=3)).collect();
        let squares: i64 = z.iter().map(|x| x * x).sum();
        let arrows: i64 = g.arrows().iter().map(|a| z[a.src - 1] * z[a.dst - 1]).sum();
        let edges: i64 = g.edges().iter().map(|e| z[e.i - 1] * z[e.j - 1]).sum();
        prop_assert_eq!(TitsForm::of(&g).eval(&z), squares - arrows - edges);
    }
}
