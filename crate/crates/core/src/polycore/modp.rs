//! Dense polynomials over a small prime field, used only inside the
//! integer factorizer.

use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub(crate) type Fp = Vec<u64>;

#[inline]
fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

pub(crate) fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    powmod(a, p - 2, p)
}

pub(crate) fn trim(mut f: Fp) -> Fp {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

pub(crate) fn deg(f: &Fp) -> usize {
    f.len().saturating_sub(1)
}

pub(crate) fn sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

pub(crate) fn mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u128; a.len() + b.len() - 1];
    let pp = p as u128;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u128 * y as u128) % pp;
        }
    }
    trim(out.into_iter().map(|v| v as u64).collect())
}

pub(crate) fn scale(a: &Fp, c: u64, p: u64) -> Fp {
    trim(a.iter().map(|&x| mulmod(x, c, p)).collect())
}

pub(crate) fn monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => Vec::new(),
        Some(&l) => scale(a, inv(l, p), p),
    }
}

pub(crate) fn div_rem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    assert!(!b.is_empty());
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let mut r = a.clone();
    let db = b.len() - 1;
    let li = inv(*b.last().unwrap(), p);
    let mut q = vec![0u64; a.len() - db];
    for k in (0..q.len()).rev() {
        let t = mulmod(r[k + db], li, p);
        if t == 0 {
            continue;
        }
        q[k] = t;
        for (j, &bc) in b.iter().enumerate() {
            r[k + j] = (r[k + j] + p - mulmod(t, bc, p)) % p;
        }
    }
    r.truncate(db);
    (trim(q), trim(r))
}

pub(crate) fn rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    div_rem(a, b, p).1
}

pub(crate) fn gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

/// Returns `(g, s, t)` with `s a + t b = g` monic.
pub(crate) fn ext_gcd(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (vec![1u64], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s);
        let t = sub(&t0, &mul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t);
    }
    let l = inv(*r0.last().unwrap(), p);
    (scale(&r0, l, p), scale(&s0, l, p), scale(&t0, l, p))
}

pub(crate) fn derivative(a: &Fp, p: u64) -> Fp {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulmod(c, i as u64 % p, p))
            .collect(),
    )
}

/// `base^e mod m`.
pub(crate) fn powmod_poly(base: &Fp, e: &BigUint, m: &Fp, p: u64) -> Fp {
    let mut r = vec![1u64];
    let b = rem(base, m, p);
    for i in (0..e.bits()).rev() {
        r = rem(&mul(&r, &r, p), m, p);
        if e.bit(i) {
            r = rem(&mul(&r, &b, p), m, p);
        }
    }
    r
}

/// Distinct-degree factorization of a monic squarefree polynomial:
/// returns `(g, d)` where `g` is the product of all irreducible factors of degree `d`.
pub(crate) fn distinct_degree(f: &Fp, p: u64) -> Vec<(Fp, usize)> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let mut d = 0;
    while deg(&f) >= 2 * (d + 1) {
        d += 1;
        h = powmod_poly(&h, &BigUint::from(p), &f, p);
        let g = gcd(&sub(&h, &x, p), &f, p);
        if deg(&g) > 0 {
            out.push((g.clone(), d));
            f = div_rem(&f, &g, p).0;
            h = rem(&h, &f, p);
        }
    }
    if deg(&f) > 0 {
        let df = deg(&f);
        out.push((f, df));
    }
    out
}

/// Cantor-Zassenhaus equal-degree splitting (p odd).
pub(crate) fn equal_degree(f: &Fp, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Fp> {
    let n = deg(f);
    if n == d {
        return vec![monic(f, p)];
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a: Fp = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if deg(&a) == 0 {
            continue;
        }
        let mut b = powmod_poly(&a, &e, f, p);
        if b.is_empty() {
            continue;
        }
        b[0] = (b[0] + p - 1) % p;
        let b = trim(b);
        let g = gcd(&b, f, p);
        let dg = deg(&g);
        if dg > 0 && dg < n {
            let h = div_rem(f, &g, p).0;
            let mut out = equal_degree(&g, d, p, rng);
            out.extend(equal_degree(&h, d, p, rng));
            return out;
        }
    }
}

/// Complete factorization of a monic squarefree polynomial into monic irreducibles.
pub(crate) fn factor_squarefree(f: &Fp, p: u64, rng: &mut ChaCha8Rng) -> Vec<Fp> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f, p) {
        out.extend(equal_degree(&g, d, p, rng));
    }
    out.sort();
    out
}
