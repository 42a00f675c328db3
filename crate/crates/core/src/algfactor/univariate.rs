//! Univariate factorization over ℚ via Zassenhaus: squarefree split, modular
//! factorization by Cantor–Zassenhaus, quadratic Hensel lifting, subset
//! recombination.
//!
//! Polynomials here are dense coefficient vectors (index = degree) with no
//! trailing zeros.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type ZPoly = Vec<BigInt>;

pub fn deg(f: &ZPoly) -> usize {
    assert!(!f.is_empty(), "degree of the zero polynomial");
    f.len() - 1
}

fn trim(mut f: ZPoly) -> ZPoly {
    while f.len() > 1 && f.last().unwrap().is_zero() {
        f.pop();
    }
    f
}

fn is_zero_poly(f: &ZPoly) -> bool {
    f.iter().all(|c| c.is_zero())
}

pub fn z_mul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, ca) in a.iter().enumerate() {
        if ca.is_zero() {
            continue;
        }
        for (j, cb) in b.iter().enumerate() {
            out[i + j] += ca * cb;
        }
    }
    trim(out)
}

/// Exact division over ℤ; `None` when `b` does not divide `a`.
pub fn z_div_exact(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    if is_zero_poly(a) {
        return Some(vec![BigInt::zero()]);
    }
    if deg(a) < deg(b) {
        return None;
    }
    let mut rem = a.clone();
    let mut quot = vec![BigInt::zero(); deg(a) - deg(b) + 1];
    let lead_b = b.last().unwrap().clone();
    while !is_zero_poly(&rem) && deg(&rem) >= deg(b) {
        let (q, r) = rem.last().unwrap().div_rem(&lead_b);
        if !r.is_zero() {
            return None;
        }
        let shift = deg(&rem) - deg(b);
        quot[shift] = q.clone();
        for (i, cb) in b.iter().enumerate() {
            let t = cb * &q;
            rem[shift + i] -= t;
        }
        rem = trim(rem);
    }
    if is_zero_poly(&rem) {
        Some(trim(quot))
    } else {
        None
    }
}

pub fn z_content(f: &ZPoly) -> BigInt {
    let mut c = BigInt::zero();
    for x in f {
        c = c.gcd(x);
    }
    c
}

/// Primitive with positive leading coefficient.
pub fn z_primitive(f: &ZPoly) -> ZPoly {
    let mut c = z_content(f);
    if c.is_zero() {
        return f.clone();
    }
    if f.last().unwrap().is_negative() {
        c = -c;
    }
    trim(f.iter().map(|x| x / &c).collect())
}

fn z_derivative(f: &ZPoly) -> ZPoly {
    if f.len() <= 1 {
        return vec![BigInt::zero()];
    }
    trim(
        f.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigInt::from(i))
            .collect(),
    )
}

/// GCD over ℤ (primitive PRS via rational pseudo-division).
pub fn z_gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if is_zero_poly(a) {
        return z_primitive(b);
    }
    if is_zero_poly(b) {
        return z_primitive(a);
    }
    let (mut f, mut g) = if deg(a) >= deg(b) {
        (z_primitive(a), z_primitive(b))
    } else {
        (z_primitive(b), z_primitive(a))
    };
    loop {
        if is_zero_poly(&g) {
            return z_primitive(&f);
        }
        if deg(&g) == 0 {
            return vec![BigInt::one()];
        }
        // pseudo-remainder of f by g
        let mut r = f.clone();
        let lg = g.last().unwrap().clone();
        while !is_zero_poly(&r) && deg(&r) >= deg(&g) {
            let shift = deg(&r) - deg(&g);
            let lr = r.last().unwrap().clone();
            for c in r.iter_mut() {
                *c *= &lg;
            }
            for (i, cg) in g.iter().enumerate() {
                r[shift + i] -= cg * &lr;
            }
            r = trim(r);
        }
        f = g;
        g = if is_zero_poly(&r) { r } else { z_primitive(&r) };
    }
}

/// Yun squarefree decomposition of a primitive polynomial over ℤ:
/// returns [(g₁,1), (g₂,2), …] with f = ∏ gᵢ^i, gᵢ squarefree and pairwise
/// coprime (trivial gᵢ omitted).
pub fn z_squarefree_decomposition(f: &ZPoly) -> Vec<(ZPoly, u32)> {
    let mut out = Vec::new();
    if deg(f) == 0 {
        return out;
    }
    let df = z_derivative(f);
    let mut a = z_gcd(f, &df);
    let mut b = z_div_exact(f, &a).unwrap();
    let mut c = z_div_exact(&df, &a).unwrap();
    let mut i = 1u32;
    loop {
        let d = sub_poly(&c, &z_derivative(&b));
        if is_zero_poly(&d) {
            if deg(&b) > 0 {
                out.push((z_primitive(&b), i));
            }
            break;
        }
        let g = z_gcd(&b, &d);
        if deg(&g) > 0 {
            out.push((z_primitive(&g), i));
        }
        b = z_div_exact(&b, &g).unwrap();
        c = z_div_exact(&d, &g).unwrap();
        i += 1;
        if deg(&b) == 0 {
            break;
        }
        let _ = &mut a;
    }
    out
}

fn sub_poly(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let mut out = vec![BigInt::zero(); a.len().max(b.len())];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in b.iter().enumerate() {
        out[i] -= c;
    }
    trim(out)
}

// ---------------------------------------------------------------------------
// GF(p) arithmetic (p a small odd prime)
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Debug)]
struct GfPoly {
    c: Vec<u64>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod_u64(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod_u64(a, p - 2, p)
}

impl GfPoly {
    fn trim(mut self) -> Self {
        while self.c.len() > 1 && *self.c.last().unwrap() == 0 {
            self.c.pop();
        }
        self
    }

    fn zero() -> Self {
        GfPoly { c: vec![0] }
    }

    fn x() -> Self {
        GfPoly { c: vec![0, 1] }
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    fn deg(&self) -> usize {
        self.c.len() - 1
    }

    fn from_z(f: &ZPoly, p: u64) -> Self {
        let pp = BigInt::from(p);
        GfPoly {
            c: f.iter()
                .map(|c| {
                    let r = c.mod_floor(&pp);
                    r.to_u64().unwrap()
                })
                .collect(),
        }
        .trim()
    }

    fn mul(&self, other: &Self, p: u64) -> Self {
        let mut out = vec![0u64; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(a, b, p)) % p;
            }
        }
        GfPoly { c: out }.trim()
    }

    fn sub(&self, other: &Self, p: u64) -> Self {
        let mut out = vec![0u64; self.c.len().max(other.c.len())];
        for (i, &a) in self.c.iter().enumerate() {
            out[i] = a;
        }
        for (i, &b) in other.c.iter().enumerate() {
            out[i] = (out[i] + p - b) % p;
        }
        GfPoly { c: out }.trim()
    }

    fn monic(&self, p: u64) -> Self {
        let l = *self.c.last().unwrap();
        if l == 1 || self.is_zero() {
            return self.clone();
        }
        let inv = invmod(l, p);
        GfPoly {
            c: self.c.iter().map(|&a| mulmod(a, inv, p)).collect(),
        }
    }

    fn rem(&self, m: &Self, p: u64) -> Self {
        let mut r = self.clone();
        let lm_inv = invmod(*m.c.last().unwrap(), p);
        while !r.is_zero() && r.deg() >= m.deg() {
            let shift = r.deg() - m.deg();
            let factor = mulmod(*r.c.last().unwrap(), lm_inv, p);
            for (i, &cm) in m.c.iter().enumerate() {
                let t = mulmod(cm, factor, p);
                r.c[shift + i] = (r.c[shift + i] + p - t) % p;
            }
            r = r.trim();
        }
        r
    }

    fn gcd(&self, other: &Self, p: u64) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, p);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic(p)
        }
    }

    fn pow_mod(&self, e: &BigUint, modulus: &Self, p: u64) -> Self {
        let mut acc = GfPoly { c: vec![1] };
        let mut base = self.rem(modulus, p);
        for i in 0..e.bits() {
            if e.bit(i) {
                acc = acc.mul(&base, p).rem(modulus, p);
            }
            base = base.mul(&base, p).rem(modulus, p);
        }
        acc
    }

    fn is_squarefree(&self, p: u64) -> bool {
        let d = GfPoly {
            c: self
                .c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| mulmod(c, (i as u64) % p, p))
                .collect(),
        }
        .trim();
        if d.is_zero() {
            return false;
        }
        self.gcd(&d, p).deg() == 0
    }
}

/// Distinct-degree then equal-degree factorization of a monic squarefree
/// polynomial over GF(p). Deterministically seeded.
fn factor_mod_p(f: &GfPoly, p: u64) -> Vec<GfPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xD1FF_5EED ^ p);
    let mut out = Vec::new();
    let mut v = f.monic(p);
    let mut h = GfPoly::x();
    let mut d = 0usize;
    let pbig = BigUint::from(p);
    while v.deg() >= 1 {
        d += 1;
        if 2 * d > v.deg() {
            out.push(v.clone());
            break;
        }
        h = h.pow_mod(&pbig, &v, p);
        let g = h.sub(&GfPoly::x(), p).gcd(&v, p);
        if g.deg() > 0 {
            equal_degree_split(&g, d, p, &mut rng, &mut out);
            v = divide_out(&v, &g, p);
            h = h.rem(&v, p);
        }
    }
    out.sort_by(|a, b| a.c.len().cmp(&b.c.len()).then_with(|| a.c.cmp(&b.c)));
    out
}

fn divide_out(f: &GfPoly, g: &GfPoly, p: u64) -> GfPoly {
    // f = g * q exactly (both monic)
    let mut r = f.clone();
    let mut q = vec![0u64; f.deg() - g.deg() + 1];
    while !r.is_zero() && r.deg() >= g.deg() {
        let shift = r.deg() - g.deg();
        let factor = *r.c.last().unwrap();
        q[shift] = factor;
        for (i, &cg) in g.c.iter().enumerate() {
            let t = mulmod(cg, factor, p);
            r.c[shift + i] = (r.c[shift + i] + p - t) % p;
        }
        r = r.trim();
    }
    debug_assert!(r.is_zero());
    GfPoly { c: q }.trim()
}

fn equal_degree_split(f: &GfPoly, d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<GfPoly>) {
    if f.deg() == d {
        out.push(f.monic(p));
        return;
    }
    let exponent = (BigUint::from(p).pow(d as u32) - BigUint::one()) / BigUint::from(2u32);
    loop {
        let r = GfPoly {
            c: (0..f.deg()).map(|_| rng.gen_range(0..p)).collect(),
        }
        .trim();
        if r.deg() == 0 {
            continue;
        }
        let s = r.pow_mod(&exponent, f, p);
        let s1 = s.sub(&GfPoly { c: vec![1] }, p);
        let g = s1.gcd(f, p);
        if g.deg() > 0 && g.deg() < f.deg() {
            let h = divide_out(f, &g, p);
            equal_degree_split(&g, d, p, rng, out);
            equal_degree_split(&h, d, p, rng, out);
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// Hensel lifting (coefficients mod p^k as BigInt)
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
struct ModPoly {
    c: Vec<BigInt>,
}

impl ModPoly {
    fn trim(mut self) -> Self {
        while self.c.len() > 1 && self.c.last().unwrap().is_zero() {
            self.c.pop();
        }
        self
    }

    fn reduce(f: &ZPoly, m: &BigInt) -> Self {
        ModPoly {
            c: f.iter().map(|x| x.mod_floor(m)).collect(),
        }
        .trim()
    }

    fn from_gf(f: &GfPoly) -> Self {
        ModPoly {
            c: f.c.iter().map(|&x| BigInt::from(x)).collect(),
        }
        .trim()
    }

    fn deg(&self) -> usize {
        self.c.len() - 1
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }

    fn mul(&self, o: &Self, m: &BigInt) -> Self {
        let mut out = vec![BigInt::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] = (&out[i + j] + a * b).mod_floor(m);
            }
        }
        ModPoly { c: out }.trim()
    }

    fn add(&self, o: &Self, m: &BigInt) -> Self {
        let mut out = vec![BigInt::zero(); self.c.len().max(o.c.len())];
        for (i, a) in self.c.iter().enumerate() {
            out[i] += a;
        }
        for (i, b) in o.c.iter().enumerate() {
            out[i] += b;
        }
        ModPoly {
            c: out.into_iter().map(|x| x.mod_floor(m)).collect(),
        }
        .trim()
    }

    fn sub(&self, o: &Self, m: &BigInt) -> Self {
        let mut out = vec![BigInt::zero(); self.c.len().max(o.c.len())];
        for (i, a) in self.c.iter().enumerate() {
            out[i] += a;
        }
        for (i, b) in o.c.iter().enumerate() {
            out[i] -= b;
        }
        ModPoly {
            c: out.into_iter().map(|x| x.mod_floor(m)).collect(),
        }
        .trim()
    }

    /// Division with remainder by a monic polynomial.
    fn divmod_monic(&self, d: &Self, m: &BigInt) -> (Self, Self) {
        assert!(d.c.last().unwrap().is_one(), "divisor must be monic");
        let mut r = self.clone();
        if r.deg() < d.deg() {
            return (ModPoly { c: vec![BigInt::zero()] }, r);
        }
        let mut q = vec![BigInt::zero(); r.deg() - d.deg() + 1];
        while !r.is_zero() && r.deg() >= d.deg() {
            let shift = r.deg() - d.deg();
            let factor = r.c.last().unwrap().clone();
            q[shift] = factor.clone();
            for (i, cd) in d.c.iter().enumerate() {
                r.c[shift + i] = (&r.c[shift + i] - cd * &factor).mod_floor(m);
            }
            r = r.trim();
        }
        (ModPoly { c: q }.trim(), r)
    }
}

fn gf_extended_euclid(a: &GfPoly, b: &GfPoly, p: u64) -> (GfPoly, GfPoly) {
    // returns (s, t) with s·a + t·b ≡ 1 (mod p); requires gcd(a, b) = 1
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (GfPoly { c: vec![1] }, GfPoly::zero());
    let (mut t0, mut t1) = (GfPoly::zero(), GfPoly { c: vec![1] });
    while !r1.is_zero() {
        // quotient of r0 by r1
        let mut r = r0.clone();
        let mut q = vec![0u64; if r.deg() >= r1.deg() { r.deg() - r1.deg() + 1 } else { 1 }];
        let inv = invmod(*r1.c.last().unwrap(), p);
        while !r.is_zero() && r.deg() >= r1.deg() {
            let shift = r.deg() - r1.deg();
            let factor = mulmod(*r.c.last().unwrap(), inv, p);
            q[shift] = factor;
            for (i, &c) in r1.c.iter().enumerate() {
                let t = mulmod(c, factor, p);
                r.c[shift + i] = (r.c[shift + i] + p - t) % p;
            }
            r = r.trim();
        }
        let qp = GfPoly { c: q }.trim();
        let new_s = s0.sub(&qp.mul(&s1, p), p);
        let new_t = t0.sub(&qp.mul(&t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = new_s;
        t0 = t1;
        t1 = new_t;
    }
    // r0 = gcd (a unit); scale to make the identity equal 1
    assert_eq!(r0.deg(), 0, "inputs must be coprime mod p");
    let inv = invmod(r0.c[0], p);
    let scale = |f: &GfPoly| GfPoly {
        c: f.c.iter().map(|&x| mulmod(x, inv, p)).collect(),
    };
    (scale(&s0), scale(&t0))
}

/// One quadratic Hensel step (von zur Gathen & Gerhard, Alg. 15.10):
/// f ≡ g·h (mod m), s·g + t·h ≡ 1 (mod m), h monic ⟹ the same mod m².
#[allow(clippy::too_many_arguments)]
fn hensel_step(
    f: &ZPoly,
    g: &ModPoly,
    h: &ModPoly,
    s: &ModPoly,
    t: &ModPoly,
    m: &BigInt,
) -> (ModPoly, ModPoly, ModPoly, ModPoly) {
    let m2 = m * m;
    let fm = ModPoly::reduce(f, &m2);
    let e = fm.sub(&g.mul(h, &m2), &m2);
    let (q, r) = s.mul(&e, &m2).divmod_monic(h, &m2);
    let g1 = g.add(&t.mul(&e, &m2), &m2).add(&q.mul(g, &m2), &m2);
    let h1 = h.add(&r, &m2);
    let b = s
        .mul(&g1, &m2)
        .add(&t.mul(&h1, &m2), &m2)
        .sub(&ModPoly { c: vec![BigInt::one()] }, &m2);
    let (c, d) = s.mul(&b, &m2).divmod_monic(&h1, &m2);
    let s1 = s.sub(&d, &m2);
    let t1 = t.sub(&t.mul(&b, &m2), &m2).sub(&c.mul(&g1, &m2), &m2);
    (g1, h1, s1, t1)
}

/// Lift the monic factorization f ≡ lc(f)·∏ factors (mod p) to mod `target`
/// (a power of p), returning monic factors mod `target`.
fn lift_factors(f: &ZPoly, factors: &[GfPoly], p: u64, target: &BigInt) -> Vec<ModPoly> {
    if factors.len() == 1 {
        // monic image of f mod target
        let fm = ModPoly::reduce(f, target);
        let l = fm.c.last().unwrap().clone();
        let linv = modinv_bigint(&l, target);
        return vec![ModPoly {
            c: fm.c.iter().map(|x| (x * &linv).mod_floor(target)).collect(),
        }
        .trim()];
    }
    let half = factors.len() / 2;
    let (left, right) = factors.split_at(half);
    let pm = BigInt::from(p);
    // g0 = lc(f)·∏left, h0 = ∏right (monic) mod p
    let lc = f.last().unwrap().mod_floor(&pm).to_u64().unwrap();
    let mut g0 = GfPoly { c: vec![lc % p] };
    for w in left {
        g0 = g0.mul(w, p);
    }
    let mut h0 = GfPoly { c: vec![1] };
    for w in right {
        h0 = h0.mul(w, p);
    }
    let (s0, t0) = gf_extended_euclid(&g0, &h0, p);

    let mut m = pm.clone();
    let mut g = ModPoly::from_gf(&g0);
    let mut h = ModPoly::from_gf(&h0);
    let mut s = ModPoly::from_gf(&s0);
    let mut t = ModPoly::from_gf(&t0);
    while &m < target {
        let (g1, h1, s1, t1) = hensel_step(f, &g, &h, &s, &t, &m);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        m = &m * &m;
    }
    // Recurse: g ≡ lc·∏left and h ≡ ∏right both hold mod p still.
    let gz: ZPoly = trim(g.c.clone());
    let hz: ZPoly = trim(h.c.clone());
    let mut out = lift_factors(&gz, left, p, target);
    out.extend(lift_factors(&hz, right, p, target));
    out
}

fn modinv_bigint(a: &BigInt, m: &BigInt) -> BigInt {
    // extended euclid over the integers
    let e = a.extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

/// Symmetric representative in (−m/2, m/2].
fn symmetric(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x.mod_floor(m);
    if &r + &r > *m {
        r - m
    } else {
        r
    }
}

const PRIMES: [u64; 20] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73,
];

/// Factor a primitive squarefree polynomial over ℤ with positive leading
/// coefficient into irreducible factors (primitive, positive lead).
pub fn factor_squarefree_primitive(f: &ZPoly) -> Vec<ZPoly> {
    let n = deg(f);
    if n == 0 {
        return vec![];
    }
    if n == 1 {
        return vec![f.clone()];
    }
    let lc = f.last().unwrap().clone();
    let p = PRIMES
        .into_iter()
        .find(|&p| {
            !(&lc % BigInt::from(p)).is_zero() && GfPoly::from_z(f, p).is_squarefree(p)
        })
        .unwrap_or_else(|| {
            // a squarefree integer polynomial is squarefree mod all but
            // finitely many primes; extend the search upward
            let mut p = 79u64;
            loop {
                if is_prime_u64(p)
                    && !(&lc % BigInt::from(p)).is_zero()
                    && GfPoly::from_z(f, p).is_squarefree(p)
                {
                    return p;
                }
                p += 2;
            }
        });

    let modular = factor_mod_p(&GfPoly::from_z(f, p), p);
    if modular.len() == 1 {
        return vec![f.clone()];
    }

    // Landau–Mignotte style bound: coefficients of any factor of f (times
    // lc) are below 2^n · ‖f‖₁ · |lc|.
    let norm1: BigInt = f.iter().map(|c| c.abs()).sum();
    let bound: BigInt = (BigInt::one() << n) * norm1 * lc.abs();
    let mut target = BigInt::from(p);
    while target <= &bound * 2 {
        target = &target * &target;
    }

    let lifted = lift_factors(f, &modular, p, &target);

    // Subset recombination with trial division.
    let mut remaining: Vec<ModPoly> = lifted;
    let mut current = f.clone();
    let mut result = Vec::new();
    let mut subset_size = 1usize;
    'outer: while 2 * subset_size <= remaining.len() {
        let idxs: Vec<usize> = (0..remaining.len()).collect();
        for combo in combinations(&idxs, subset_size) {
            let lc_cur = current.last().unwrap().clone();
            let mut prod = ModPoly {
                c: vec![lc_cur.mod_floor(&target)],
            };
            for &i in &combo {
                prod = prod.mul(&remaining[i], &target);
            }
            let cand: ZPoly = trim(prod.c.iter().map(|x| symmetric(x, &target)).collect());
            let cand = z_primitive(&cand);
            if cand.len() > 1 {
                if let Some(quot) = z_div_exact(&current, &cand) {
                    result.push(cand);
                    current = z_primitive(&quot);
                    let mut keep = Vec::new();
                    for (i, w) in remaining.into_iter().enumerate() {
                        if !combo.contains(&i) {
                            keep.push(w);
                        }
                    }
                    remaining = keep;
                    continue 'outer;
                }
            }
        }
        subset_size += 1;
    }
    if deg(&current) > 0 {
        result.push(current);
    }
    result
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Full factorization of a univariate polynomial with rational coefficients:
/// returns (content, factors with multiplicity); factors are primitive over ℤ
/// with positive leading coefficient and `content·∏ fᵢ^{mᵢ}` reconstructs the
/// input exactly.
pub fn factor_rational(coeffs: &[BigRational]) -> (BigRational, Vec<(ZPoly, u32)>) {
    assert!(
        coeffs.iter().any(|c| !c.is_zero()),
        "factorization of the zero polynomial"
    );
    // clear denominators
    let mut den = BigInt::one();
    for c in coeffs {
        den = den.lcm(c.denom());
    }
    let zpoly: ZPoly = trim(
        coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect(),
    );
    let mut content = BigRational::new(z_content(&zpoly), den);
    if zpoly.last().unwrap().is_negative() {
        content = -content;
    }
    let prim = z_primitive(&zpoly);
    let mut factors = Vec::new();
    if deg(&prim) > 0 {
        for (g, mult) in z_squarefree_decomposition(&prim) {
            for irr in factor_squarefree_primitive(&g) {
                factors.push((irr, mult));
            }
        }
    }
    (content, factors)
}
