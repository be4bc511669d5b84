//! Polynomials over a prime field `F_p` (`p < 2^31`), with distinct-degree and
//! equal-degree (Cantor–Zassenhaus) factorization.

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Ascending coefficients in `0..p`, no trailing zeros.
pub(crate) type PolyP = Vec<u64>;

pub(crate) fn trim(mut a: PolyP) -> PolyP {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn powmod_u64(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

pub(crate) fn inv(a: u64, p: u64) -> u64 {
    assert!(a % p != 0, "inverse of zero mod p");
    powmod_u64(a, p - 2, p)
}

pub(crate) fn deg(a: &PolyP) -> isize {
    a.len() as isize - 1
}

#[cfg(test)]
pub(crate) fn add(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    let n = a.len().max(b.len());
    trim((0..n).map(|k| (a.get(k).unwrap_or(&0) + b.get(k).unwrap_or(&0)) % p).collect())
}

pub(crate) fn sub(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    let n = a.len().max(b.len());
    trim((0..n).map(|k| (a.get(k).unwrap_or(&0) + p - b.get(k).unwrap_or(&0)) % p).collect())
}

pub(crate) fn mul(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

pub(crate) fn scale(a: &PolyP, c: u64, p: u64) -> PolyP {
    trim(a.iter().map(|&x| x * c % p).collect())
}

pub(crate) fn divrem(a: &PolyP, d: &PolyP, p: u64) -> (PolyP, PolyP) {
    assert!(!d.is_empty(), "division by zero polynomial mod p");
    let dd = d.len() - 1;
    if a.len() <= dd {
        return (Vec::new(), a.clone());
    }
    let li = inv(d[dd], p);
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd] * li % p;
        if c == 0 {
            continue;
        }
        for (j, &dj) in d.iter().enumerate() {
            r[k + j] = (r[k + j] + p - c * dj % p) % p;
        }
        q[k] = c;
    }
    r.truncate(dd);
    (trim(q), trim(r))
}

pub(crate) fn rem(a: &PolyP, d: &PolyP, p: u64) -> PolyP {
    divrem(a, d, p).1
}

pub(crate) fn monic(a: &PolyP, p: u64) -> PolyP {
    match a.last() {
        None => Vec::new(),
        Some(&l) => scale(a, inv(l, p), p),
    }
}

pub(crate) fn gcd(a: &PolyP, b: &PolyP, p: u64) -> PolyP {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// `(g, s, t)` with `s a + t b = g = gcd(a, b)` monic.
pub(crate) fn ext_gcd(a: &PolyP, b: &PolyP, p: u64) -> (PolyP, PolyP, PolyP) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        let t2 = sub(&t0, &mul(&q, &t1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let l = inv(*r0.last().expect("gcd of nonzero inputs"), p);
    (scale(&r0, l, p), scale(&s0, l, p), scale(&t0, l, p))
}

pub(crate) fn derivative(a: &PolyP, p: u64) -> PolyP {
    trim(a.iter().enumerate().skip(1).map(|(k, &c)| (k as u64 % p) * c % p).collect())
}

fn powmod(base: &PolyP, e: &BigUint, f: &PolyP, p: u64) -> PolyP {
    let mut result = vec![1u64];
    let mut b = rem(base, f, p);
    for k in 0..e.bits() {
        if e.bit(k) {
            result = rem(&mul(&result, &b, p), f, p);
        }
        b = rem(&mul(&b, &b, p), f, p);
    }
    result
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// pairs `(g, d)` where `g` is the product of all irreducible factors of degree `d`.
fn distinct_degree(f: &PolyP, p: u64) -> Vec<(PolyP, usize)> {
    let x = vec![0u64, 1];
    let pb = BigUint::from(p);
    let mut rest = f.clone();
    let mut h = x.clone();
    let mut out = Vec::new();
    let mut d = 0;
    while deg(&rest) >= 2 * (d as isize + 1) {
        d += 1;
        h = powmod(&h, &pb, &rest, p);
        let g = gcd(&sub(&h, &x, p), &rest, p);
        if deg(&g) > 0 {
            rest = divrem(&rest, &g, p).0;
            h = rem(&h, &rest, p);
            out.push((g, d));
        }
    }
    if deg(&rest) > 0 {
        let dr = deg(&rest) as usize;
        out.push((rest, dr));
    }
    out
}

/// Equal-degree splitting (odd `p`).
fn equal_degree(f: &PolyP, d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<PolyP>) {
    let n = deg(f) as usize;
    if n == d {
        out.push(f.clone());
        return;
    }
    let e = (BigUint::from(p).pow(d as u32) - BigUint::one()) >> 1;
    loop {
        let a: PolyP = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if deg(&a) < 1 {
            continue;
        }
        let g = gcd(&a, f, p);
        let cand = if deg(&g) > 0 {
            g
        } else {
            let b = sub(&powmod(&a, &e, f, p), &vec![1u64], p);
            gcd(&b, f, p)
        };
        if deg(&cand) > 0 && deg(&cand) < n as isize {
            let other = divrem(f, &cand, p).0;
            equal_degree(&cand, d, p, rng, out);
            equal_degree(&other, d, p, rng, out);
            return;
        }
    }
}

/// Monic irreducible factors of a monic squarefree polynomial over `F_p`.
pub(crate) fn factor_squarefree(f: &PolyP, p: u64, rng: &mut ChaCha8Rng) -> Vec<PolyP> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f, p) {
        equal_degree(&g, d, p, rng, &mut out);
    }
    out
}

pub(crate) fn is_squarefree(f: &PolyP, p: u64) -> bool {
    let df = derivative(f, p);
    !df.is_empty() && deg(&gcd(f, &df, p)) == 0
}

/// Small primes above 10, in increasing order.
pub(crate) fn primes() -> impl Iterator<Item = u64> {
    (11u64..).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}
