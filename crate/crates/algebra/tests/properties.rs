use proptest::prelude::*;
use qf_algebra::{
    pencil_invariant_factors, smith_polynomial, Field, GaussianRational, Involution, Matrix, Poly, PolyMatrix, Rational,
};

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-9i64..10, 1i64..5, -9i64..10, 1i64..5).prop_map(|(a, b, c, d)| GaussianRational::from_parts(a, b, c, d))
}

fn rational_matrix(max: usize) -> impl Strategy<Value = Matrix<Rational>> {
    (0..=max, 0..=max).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-3i64..4, r * c).prop_map(move |v| {
            Matrix::new(r, c, v.into_iter().map(Rational::from).collect()).unwrap()
        })
    })
}

fn rational_poly(max_deg: usize) -> impl Strategy<Value = Poly<Rational>> {
    proptest::collection::vec(-5i64..6, 1..=max_deg + 1).prop_map(|v| Poly::from_i64(&v))
}

/// Product of random elementary polynomial row operations: unimodular by construction.
fn unimodular(n: usize, ops: &[(usize, usize, i64, usize)]) -> PolyMatrix<Rational> {
    let mut m = identity_poly(n);
    for &(i, j, c, k) in ops {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        let mut e = identity_poly(n);
        let mut rows: Vec<Vec<Poly<Rational>>> =
            (0..n).map(|r| (0..n).map(|s| e.entry(r, s).clone()).collect()).collect();
        rows[i][j] = Poly::monomial(Rational::from(c), k);
        e = PolyMatrix::new(rows, n);
        m = m.mul(&e);
    }
    m
}

fn identity_poly(n: usize) -> PolyMatrix<Rational> {
    PolyMatrix::new(
        (0..n)
            .map(|i| (0..n).map(|j| if i == j { Poly::one() } else { Poly::zero() }).collect())
            .collect(),
        n,
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn conjugation_is_a_self_inverse_ring_automorphism(a in gaussian(), b in gaussian()) {
        let inv = Involution::Conjugation;
        prop_assert_eq!(inv.apply(&inv.apply(&a)), a.clone());
        prop_assert_eq!(inv.apply(&(&a + &b)), &inv.apply(&a) + &inv.apply(&b));
        prop_assert_eq!(inv.apply(&(&a * &b)), &inv.apply(&a) * &inv.apply(&b));
    }

    #[test]
    fn rank_of_transpose(m in rational_matrix(5)) {
        prop_assert_eq!(m.rank(0.0), m.transpose().rank(0.0));
        let k = m.nullspace(0.0);
        prop_assert_eq!(k.cols() + m.rank(0.0), m.cols());
        prop_assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn smith_invariant_under_unimodular_transforms(
        a in proptest::collection::vec(-2i64..3, 9),
        left in proptest::collection::vec((0usize..3, 0usize..3, -2i64..3, 0usize..2), 0..4),
        right in proptest::collection::vec((0usize..3, 0usize..3, -2i64..3, 0usize..2), 0..4),
    ) {
        let a = Matrix::new(3, 3, a.into_iter().map(Rational::from).collect()).unwrap();
        let base = PolyMatrix::characteristic(&a);
        let want = smith_polynomial(&base).unwrap();
        let scrambled = unimodular(3, &left).mul(&base).mul(&unimodular(3, &right));
        prop_assert_eq!(smith_polynomial(&scrambled).unwrap(), want.clone());
        let det = want.iter().fold(Poly::one(), |acc, d| acc.mul(d));
        prop_assert_eq!(det, Poly::charpoly(&a));
    }

    #[test]
    fn fraction_free_matches_field_elimination(
        n in 0usize..5,
        entries in proptest::collection::vec(gaussian(), 25),
        singular in any::<bool>(),
    ) {
        let mut m = Matrix::from_fn(n, n, |i, j| entries[5 * i + j].clone());
        if singular && n > 1 {
            for j in 0..n {
                m[(n - 1, j)] = m[(0, j)].add_ref(&m[(1, j)]);
            }
        }
        prop_assert_eq!(m.det(), qf_algebra::linalg::det(&m));
        prop_assert_eq!(m.rank(0.0), qf_algebra::linalg::rref(&m, 0.0).1.len());
        let re = Matrix::from_fn(n, n, |i, j| Rational::from(entries[5 * i + j].re.clone()));
        prop_assert_eq!(re.det(), qf_algebra::linalg::det(&re));
        prop_assert_eq!(re.rank(0.0), qf_algebra::linalg::rref(&re, 0.0).1.len());
    }

    #[test]
    fn pencil_factors_match_elimination(
        m in 0usize..4,
        n in 0usize..4,
        a in proptest::collection::vec(-1i64..2, 16),
        b in proptest::collection::vec(-2i64..3, 16),
    ) {
        let a = Matrix::from_fn(m, n, |i, j| Rational::from(a[4 * i + j]));
        let b = Matrix::from_fn(m, n, |i, j| Rational::from(b[4 * i + j]));
        let want = smith_polynomial(&PolyMatrix::pencil(&a, &b)).unwrap();
        prop_assert_eq!(pencil_invariant_factors(&a, &b).unwrap(), want);
    }

    #[test]
    fn factorization_reexpands(fs in proptest::collection::vec(rational_poly(3), 1..4)) {
        let p = fs.iter().filter(|f| f.deg() > 0).fold(Poly::<Rational>::one(), |acc, f| acc.mul(f));
        prop_assume!(p.deg() > 0);
        let p = p.monic();
        let factors = p.factor().unwrap();
        let back = factors.iter().fold(Poly::one(), |acc, (f, k)| acc.mul(&f.pow(*k)));
        prop_assert_eq!(back, p);
        for (f, _) in &factors {
            prop_assert!(f.is_monic());
        }
    }

    #[test]
    fn gaussian_factorization_reexpands(roots in proptest::collection::vec(gaussian(), 1..4), extra in rational_poly(2)) {
        let mut p = roots.iter().fold(Poly::<GaussianRational>::one(), |acc, r| acc.mul(&Poly::linear(r)));
        let e = Poly::new(extra.coeffs().iter().map(|c| GaussianRational::from(c.clone())).collect());
        if e.deg() > 0 {
            p = p.mul(&e);
        }
        let p = p.monic();
        let factors = p.factor().unwrap();
        let back = factors.iter().fold(Poly::one(), |acc, (f, k)| acc.mul(&f.pow(*k)));
        prop_assert_eq!(back, p);
        // every planted root gives a linear factor
        for r in &roots {
            prop_assert!(factors.iter().any(|(f, _)| f == &Poly::linear(r)));
        }
    }
}

#[test]
fn factor_examples() {
    let q = Poly::<Rational>::from_i64(&[1, 0, 1]);
    assert_eq!(q.factor().unwrap(), vec![(q.clone(), 1)]);
    let g = Poly::<GaussianRational>::from_i64(&[1, 0, 1]);
    let i = GaussianRational::i();
    let fs = g.factor().unwrap();
    assert_eq!(fs.len(), 2);
    assert!(fs.contains(&(Poly::linear(&i), 1)));
    assert!(fs.contains(&(Poly::linear(&i.neg_ref()), 1)));
    let c = Poly::<Rational>::from_i64(&[0, -1, 0, 1]);
    let fs: Vec<_> = c.factor().unwrap().into_iter().map(|(f, _)| f).collect();
    assert_eq!(fs, vec![Poly::from_i64(&[-1, 1]), Poly::x(), Poly::from_i64(&[1, 1])]);
}

#[test]
fn degree_sixteen_cyclotomic_products() {
    // x^16 - 1 = (x-1)(x+1)(x^2+1)(x^4+1)(x^8+1) over Q
    let p = Poly::<Rational>::from_i64(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
    let fs = p.factor().unwrap();
    assert_eq!(fs.len(), 5);
    let degrees: Vec<usize> = fs.iter().map(|(f, _)| f.deg()).collect();
    assert_eq!(degrees, vec![1, 1, 2, 4, 8]);
    // over Q(i), x^2 + 1 splits and x^4 + 1 = (x^2 - i)(x^2 + i)
    let g = Poly::<GaussianRational>::from_i64(&[-1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
    let fs = g.factor().unwrap();
    let degrees: Vec<usize> = fs.iter().map(|(f, _)| f.deg()).collect();
    assert_eq!(degrees, vec![1, 1, 1, 1, 2, 2, 4, 4]);
}
