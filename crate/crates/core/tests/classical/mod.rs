//! Independent commutative oracle for the acceptance suite: textbook
//! linear Hensel lifting over Z/p^k on plain integer coefficient vectors,
//! with no machinery shared with the library under test.

pub fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn pmul(a: &[i64], b: &[i64], m: i64) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y).rem_euclid(m);
        }
    }
    trim(out)
}

pub fn padd(a: &[i64], b: &[i64], m: i64) -> Vec<i64> {
    let n = a.len().max(b.len());
    let at = |v: &[i64], i: usize| v.get(i).copied().unwrap_or(0);
    trim((0..n).map(|i| (at(a, i) + at(b, i)).rem_euclid(m)).collect())
}

pub fn psub(a: &[i64], b: &[i64], m: i64) -> Vec<i64> {
    let n = a.len().max(b.len());
    let at = |v: &[i64], i: usize| v.get(i).copied().unwrap_or(0);
    trim((0..n).map(|i| (at(a, i) - at(b, i)).rem_euclid(m)).collect())
}

pub fn pscale(a: &[i64], c: i64, m: i64) -> Vec<i64> {
    trim(a.iter().map(|x| (x * c).rem_euclid(m)).collect())
}

fn inv_mod(a: i64, m: i64) -> i64 {
    let (mut r0, mut r1) = (m, a.rem_euclid(m));
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    assert_eq!(r0, 1, "not invertible");
    s0.rem_euclid(m)
}

/// Division with remainder over GF(p) (divisor need not be monic).
pub fn gf_divrem(a: &[i64], b: &[i64], p: i64) -> (Vec<i64>, Vec<i64>) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "division by zero polynomial");
    let lead_inv = inv_mod(*b.last().unwrap(), p);
    let mut rem = trim(a.to_vec());
    let mut quot = vec![0i64; a.len()];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = (rem.last().unwrap() * lead_inv).rem_euclid(p);
        quot[shift] = c;
        let mut step = vec![0i64; shift];
        step.extend_from_slice(&b);
        rem = psub(&rem, &pscale(&step, c, p), p);
    }
    (trim(quot), rem)
}

pub fn gf_gcd(a: &[i64], b: &[i64], p: i64) -> Vec<i64> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let (_, r) = gf_divrem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

pub fn gf_coprime(a: &[i64], b: &[i64], p: i64) -> bool {
    gf_gcd(a, b, p).len() == 1
}

/// Extended Euclid over GF(p): s*a + t*b = 1 for coprime a, b.
pub fn gf_bezout(a: &[i64], b: &[i64], p: i64) -> (Vec<i64>, Vec<i64>) {
    let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
    let (mut s0, mut s1) = (vec![1i64], vec![]);
    let (mut t0, mut t1) = (vec![], vec![1i64]);
    while !r1.is_empty() {
        let (q, r) = gf_divrem(&r0, &r1, p);
        let new_s = psub(&s0, &pmul(&q, &s1, p), p);
        let new_t = psub(&t0, &pmul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = new_s;
        t0 = t1;
        t1 = new_t;
    }
    assert_eq!(r0.len(), 1, "inputs are not coprime");
    let c = inv_mod(r0[0], p);
    (pscale(&s0, c, p), pscale(&t0, c, p))
}

/// Textbook linear Hensel lifting: from F = f1 f2 (mod p) with f1, f2
/// monic coprime, to the unique monic factorization mod p^k.
pub fn hensel(f: &[i64], f1: &[i64], f2: &[i64], p: i64, k: u32) -> (Vec<i64>, Vec<i64>) {
    let m = p.pow(k);
    let d1 = f1.len() - 1;
    let (s, t) = gf_bezout(f1, f2, p);
    let mut cur1: Vec<i64> = f1.to_vec();
    let mut cur2: Vec<i64> = f2.to_vec();
    for j in 1..k {
        let pj = p.pow(j);
        let err = psub(f, &pmul(&cur1, &cur2, m), m);
        // every coefficient divisible by p^j
        let d: Vec<i64> = err.iter().map(|c| (c / pj).rem_euclid(p)).collect();
        let d = trim(d);
        // solve A f2 + B f1 = D (mod p) with deg A < d1
        let a0 = pmul(&d, &t, p);
        let (q, a) = gf_divrem_monic_like(&a0, f1, p, d1);
        let b = padd(&pmul(&d, &s, p), &pmul(&q, f2, p), p);
        cur1 = padd(&cur1, &pscale(&a, pj, m), m);
        cur2 = padd(&cur2, &pscale(&b, pj, m), m);
    }
    debug_assert_eq!(psub(f, &pmul(&cur1, &cur2, m), m), Vec::<i64>::new());
    (cur1, cur2)
}

fn gf_divrem_monic_like(a: &[i64], b: &[i64], p: i64, want_deg_below: usize) -> (Vec<i64>, Vec<i64>) {
    let (q, r) = gf_divrem(a, b, p);
    assert!(r.len() <= want_deg_below, "remainder degree out of range");
    (q, r)
}
