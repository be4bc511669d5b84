//! Factorization over the rationals: modular factorization, quadratic Hensel
//! lifting and subset recombination (Zassenhaus).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{self, PolyP};
use super::{MAX_DEGREE, MAX_MODULAR_FACTORS};
use crate::error::AlgebraError;
use crate::poly::Poly;
use crate::rational::Rational;

/// Integer polynomial, ascending, no trailing zeros.
type ZPoly = Vec<BigInt>;

/// How many admissible primes to try before settling on the one with the
/// fewest modular factors.
const PRIME_TRIALS: usize = 5;

fn ztrim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(Zero::is_zero) {
        a.pop();
    }
    a
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

fn zadd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim((0..n).map(|k| a.get(k).unwrap_or(&z) + b.get(k).unwrap_or(&z)).collect())
}

fn zsub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim((0..n).map(|k| a.get(k).unwrap_or(&z) - b.get(k).unwrap_or(&z)).collect())
}

/// Reduce coefficients into `0..m`.
fn zmod(a: &ZPoly, m: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|c| c.mod_floor(m)).collect())
}

/// Reduce coefficients into the symmetric range `(-m/2, m/2]`.
fn zmod_sym(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m >> 1;
    ztrim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Division by a monic polynomial with coefficients reduced mod `m`.
fn zdivrem_monic(a: &ZPoly, d: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    let dd = d.len() - 1;
    debug_assert!(d[dd].is_one());
    let mut r = zmod(a, m);
    if r.len() <= dd {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in d.iter().enumerate() {
            r[k + j] = (&r[k + j] - &c * dj).mod_floor(m);
        }
        q[k] = c;
    }
    r.truncate(dd);
    (ztrim(q), ztrim(r))
}

/// Exact division over the integers by a monic polynomial.
fn zdiv_exact(a: &ZPoly, d: &ZPoly) -> Option<ZPoly> {
    let dd = d.len() - 1;
    if a.len() <= dd {
        return None;
    }
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); r.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in d.iter().enumerate() {
            r[k + j] -= &c * dj;
        }
        q[k] = c;
    }
    r[..dd].iter().all(Zero::is_zero).then(|| ztrim(q))
}

fn to_modp(a: &ZPoly, p: u64) -> PolyP {
    let pb = BigInt::from(p);
    modp::trim(a.iter().map(|c| c.mod_floor(&pb).to_u64().expect("reduced below p")).collect())
}

fn from_modp(a: &PolyP) -> ZPoly {
    ztrim(a.iter().map(|&c| BigInt::from(c)).collect())
}

/// One quadratic Hensel step: from `f = g h (mod m)` with `s g + t h = 1 (mod m)`
/// to the same identities modulo `m^2`. `g` and `h` are monic.
fn hensel_step(f: &ZPoly, g: &ZPoly, h: &ZPoly, s: &ZPoly, t: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = zmod(&zsub(f, &zmul(g, h)), &m2);
    let (q, r) = zdivrem_monic(&zmul(s, &e), h, &m2);
    let g2 = zmod(&zadd(&zadd(g, &zmul(t, &e)), &zmul(&q, g)), &m2);
    let h2 = zmod(&zadd(h, &r), &m2);
    let b = zmod(&zsub(&zadd(&zmul(s, &g2), &zmul(t, &h2)), &vec![BigInt::one()]), &m2);
    let (c, d) = zdivrem_monic(&zmul(s, &b), &h2, &m2);
    let s2 = zmod(&zsub(s, &d), &m2);
    let t2 = zmod(&zsub(&zsub(t, &zmul(t, &b)), &zmul(&c, &g2)), &m2);
    (g2, h2, s2, t2)
}

/// Lift the modular factorization `f = prod factors (mod p)` to modulus
/// `p^(2^steps)`.
fn multi_lift(f: &ZPoly, factors: &[PolyP], p: u64, steps: u32) -> Vec<ZPoly> {
    let modulus = BigInt::from(p).pow(1u32 << steps);
    if factors.len() == 1 {
        return vec![zmod(f, &modulus)];
    }
    let (left, right) = factors.split_at(factors.len() / 2);
    let g0 = left.iter().fold(vec![1u64], |acc, x| modp::mul(&acc, x, p));
    let h0 = right.iter().fold(vec![1u64], |acc, x| modp::mul(&acc, x, p));
    let (one, s0, t0) = modp::ext_gcd(&g0, &h0, p);
    debug_assert_eq!(one, vec![1]);
    let (mut g, mut h, mut s, mut t) = (from_modp(&g0), from_modp(&h0), from_modp(&s0), from_modp(&t0));
    let mut m = BigInt::from(p);
    for _ in 0..steps {
        (g, h, s, t) = hensel_step(f, &g, &h, &s, &t, &m);
        m = &m * &m;
    }
    let mut out = multi_lift(&g, left, p, steps);
    out.extend(multi_lift(&h, right, p, steps));
    out
}

/// Upper bound on the coefficients of any monic factor of `f` (Mignotte).
fn factor_coefficient_bound(f: &ZPoly) -> BigInt {
    let norm_sq: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm_sq.sqrt() + BigInt::one();
    (BigInt::one() << (f.len() - 1)) * norm
}

/// Irreducible monic factors of a monic squarefree integer polynomial.
fn factor_monic_integer(f: &ZPoly) -> Result<Vec<ZPoly>, AlgebraError> {
    let n = f.len() - 1;
    if n <= 1 {
        return Ok(vec![f.clone()]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d);
    let mut best: Option<(u64, Vec<PolyP>)> = None;
    let mut tried = 0;
    for p in modp::primes().take(200) {
        let fp = to_modp(f, p);
        if !modp::is_squarefree(&fp, p) {
            continue;
        }
        let fs = modp::factor_squarefree(&fp, p, &mut rng);
        if fs.len() == 1 {
            return Ok(vec![f.clone()]);
        }
        if best.as_ref().is_none_or(|(_, b)| fs.len() < b.len()) {
            best = Some((p, fs));
        }
        tried += 1;
        if tried == PRIME_TRIALS {
            break;
        }
    }
    let (p, mut fs) = best.ok_or_else(|| AlgebraError::FactorizationIncomplete("no admissible prime found".into()))?;
    if fs.len() > MAX_MODULAR_FACTORS {
        return Err(AlgebraError::FactorizationIncomplete(format!(
            "{} modular factors exceed the recombination budget of {MAX_MODULAR_FACTORS}",
            fs.len()
        )));
    }
    fs.sort();
    let bound = factor_coefficient_bound(f) * 2 + 1;
    let mut steps = 0u32;
    while BigInt::from(p).pow(1u32 << steps) <= bound {
        steps += 1;
    }
    let modulus = BigInt::from(p).pow(1u32 << steps);
    let mut lifted = multi_lift(f, &fs, p, steps);

    // subset recombination
    let mut rest = f.clone();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = None;
        for subset in combinations(lifted.len(), size) {
            let cand = subset
                .iter()
                .fold(vec![BigInt::one()], |acc, &k| zmod_sym(&zmul(&acc, &lifted[k]), &modulus));
            let c0 = &cand[0];
            let r0 = &rest[0];
            if !c0.is_zero() && !r0.is_zero() && !(r0 % c0).is_zero() {
                continue;
            }
            if let Some(q) = zdiv_exact(&rest, &cand) {
                found = Some((subset, cand, q));
                break;
            }
        }
        match found {
            Some((subset, cand, q)) => {
                out.push(cand);
                rest = q;
                for &k in subset.iter().rev() {
                    lifted.remove(k);
                }
            }
            None => size += 1,
        }
    }
    if rest.len() > 1 {
        out.push(rest);
    }
    Ok(out)
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] < n - k + i) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Monic irreducible factors over the rationals of a squarefree polynomial.
pub(crate) fn factor_squarefree(p: &Poly<Rational>) -> Result<Vec<Poly<Rational>>, AlgebraError> {
    let f = p.monic();
    let n = f.deg();
    if n == 0 {
        return Ok(Vec::new());
    }
    if n == 1 {
        return Ok(vec![f]);
    }
    if n > MAX_DEGREE {
        return Err(AlgebraError::FactorizationIncomplete(format!(
            "degree {n} exceeds the supported bound {MAX_DEGREE}"
        )));
    }
    // g(y) = D^n f(y / D) is a monic integer polynomial
    let d = f
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.inner().denom()));
    let mut g: ZPoly = Vec::with_capacity(n + 1);
    for (k, c) in f.coeffs().iter().enumerate() {
        let v = c.inner() * BigRational::from_integer(d.pow((n - k) as u32));
        debug_assert!(v.is_integer());
        g.push(v.to_integer());
    }
    let mut int_factors = Vec::new();
    if g[0].is_zero() {
        int_factors.push(vec![BigInt::zero(), BigInt::one()]);
        g.remove(0);
    }
    if g.len() > 1 {
        int_factors.extend(factor_monic_integer(&g)?);
    }
    // h(y) -> h(D x) / D^deg h
    let dq = BigRational::from_integer(d);
    let mut out: Vec<Poly<Rational>> = int_factors
        .into_iter()
        .map(|h| {
            let k = h.len() - 1;
            Poly::new(
                h.iter()
                    .enumerate()
                    .map(|(j, c)| {
                        let scale = num_traits::pow(dq.clone(), j) / num_traits::pow(dq.clone(), k);
                        Rational(BigRational::from_integer(c.clone()) * scale)
                    })
                    .collect(),
            )
        })
        .collect();
    out.sort_by(|a, b| a.total_cmp(b));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Poly<Rational>;

    fn prod(fs: &[P]) -> P {
        fs.iter().fold(P::one(), |acc, f| acc.mul(f))
    }

    #[test]
    fn small_examples() {
        assert_eq!(factor_squarefree(&P::from_i64(&[1, 0, 1])).unwrap(), vec![P::from_i64(&[1, 0, 1])]);
        let f = P::from_i64(&[0, -1, 0, 1]);
        let fs = factor_squarefree(&f).unwrap();
        assert_eq!(fs.len(), 3);
        assert_eq!(prod(&fs), f);
    }

    #[test]
    fn swinnerton_dyer_like_products() {
        // (x^4 - 10x^2 + 1)(x^2 - 2)(x + 3) : the quartic splits modulo every prime
        let q = P::from_i64(&[1, 0, -10, 0, 1]);
        let f = q.mul(&P::from_i64(&[-2, 0, 1])).mul(&P::from_i64(&[3, 1]));
        let fs = factor_squarefree(&f).unwrap();
        assert_eq!(fs.len(), 3);
        assert!(fs.contains(&q));
        assert_eq!(prod(&fs), f);
    }

    #[test]
    fn rational_coefficients() {
        // (x - 1/2)(x^2 + 1/3)
        let f = P::new(vec![Rational::new(-1, 2), Rational::from(1)]).mul(&P::new(vec![
            Rational::new(1, 3),
            Rational::from(0),
            Rational::from(1),
        ]));
        let fs = factor_squarefree(&f).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(prod(&fs), f);
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
    }
}
