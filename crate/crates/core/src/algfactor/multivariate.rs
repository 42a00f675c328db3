//! Multivariate factorization over ℚ by Kronecker substitution.
//!
//! The primitive squarefree part is mapped to a univariate polynomial by an
//! injective monomial substitution, factored there, and multivariate factors
//! are recovered by subset recombination with exact trial division. Slow in
//! theory, entirely adequate for the polynomial sizes triangular
//! decomposition produces here.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::algfactor::gcd::{content_in, exact_div, gcd as poly_gcd};
use crate::algfactor::univariate::{self, ZPoly};
use crate::operator::DerivativeVariable;
use crate::poly::{DiffPolynomial, Monomial};

/// content · ∏ factorᵢ^{multᵢ} = the input, exactly; factors irreducible
/// over ℚ, normalized (coprime integer coefficients, positive lead).
#[derive(Clone, Debug)]
pub struct Factorization {
    pub content: BigRational,
    pub factors: Vec<(DiffPolynomial, u32)>,
}

impl Factorization {
    pub fn reconstruct(&self, m: usize) -> DiffPolynomial {
        let mut acc = DiffPolynomial::constant(m, self.content.clone());
        for (f, e) in &self.factors {
            acc = &acc * &f.pow(*e);
        }
        acc
    }
}

/// Factor a nonzero differential polynomial into irreducibles over ℚ.
pub fn factor(f: &DiffPolynomial) -> Factorization {
    assert!(!f.is_zero(), "factorization of the zero polynomial");
    let (content, prim) = f.content_and_primitive();
    let mut factors = Vec::new();
    factor_primitive(&prim, 1, &mut factors);
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    Factorization { content, factors }
}

/// True when `f` is irreducible over ℚ (as a multivariate polynomial,
/// constants excluded).
pub fn is_irreducible(f: &DiffPolynomial) -> bool {
    if f.is_constant() {
        return false;
    }
    let fac = factor(f);
    fac.factors.len() == 1 && fac.factors[0].1 == 1
}

fn factor_primitive(f: &DiffPolynomial, mult: u32, out: &mut Vec<(DiffPolynomial, u32)>) {
    if f.is_constant() {
        return;
    }
    // main variable: smallest positive degree keeps the recursion shallow
    let v = f
        .variables()
        .into_iter()
        .min_by_key(|v| f.degree_in(v))
        .unwrap();
    let cont = content_in(f, &v);
    let pp = exact_div(f, &cont).unwrap();
    if !cont.is_constant() {
        factor_primitive(&cont.normalized(), mult, out);
    }
    // Yun's squarefree decomposition of pp with respect to v.
    let ppv = pp.partial_derivative(&v);
    let a = poly_gcd(&pp, &ppv);
    let mut b = exact_div(&pp, &a).unwrap();
    let mut c = exact_div(&ppv, &a).unwrap();
    let mut i = 1u32;
    loop {
        let d = &c - &b.partial_derivative(&v);
        if d.is_zero() {
            if !b.is_constant() {
                factor_squarefree(&b.normalized(), mult * i, out);
            }
            break;
        }
        let g = poly_gcd(&b, &d);
        if !g.is_constant() {
            factor_squarefree(&g.normalized(), mult * i, out);
        }
        b = exact_div(&b, &g).unwrap();
        c = exact_div(&d, &g).unwrap();
        i += 1;
        if b.is_constant() {
            break;
        }
    }
}

fn push_factor(out: &mut Vec<(DiffPolynomial, u32)>, f: DiffPolynomial, mult: u32) {
    for (g, e) in out.iter_mut() {
        if *g == f {
            *e += mult;
            return;
        }
    }
    out.push((f, mult));
}

/// Factor a squarefree primitive (integer-coprime, positive lead) polynomial.
fn factor_squarefree(f: &DiffPolynomial, mult: u32, out: &mut Vec<(DiffPolynomial, u32)>) {
    let m = f.num_derivations();
    if f.total_degree() == 1 {
        push_factor(out, f.clone(), mult);
        return;
    }
    let vars: Vec<DerivativeVariable> = f.variables().into_iter().collect();
    let degs: Vec<u32> = vars.iter().map(|v| f.degree_in(v)).collect();

    // Kronecker strides: variable i maps to X^{stride_i}.
    let mut strides: Vec<u64> = Vec::with_capacity(vars.len());
    let mut acc = 1u64;
    for d in &degs {
        strides.push(acc);
        acc = acc
            .checked_mul(*d as u64 + 1)
            .expect("Kronecker degree overflow");
    }
    assert!(acc <= 1 << 22, "Kronecker image degree too large to factor");

    let to_exponent = |mono: &Monomial| -> u64 {
        mono.powers()
            .iter()
            .map(|(v, e)| {
                let i = vars.iter().position(|w| w == v).unwrap();
                strides[i] * *e as u64
            })
            .sum()
    };
    let mut image: ZPoly = vec![BigInt::zero(); acc as usize];
    for (mono, c) in f.terms() {
        debug_assert!(c.denom().is_one());
        image[to_exponent(mono) as usize] = c.numer().clone();
    }
    while image.len() > 1 && image.last().unwrap().is_zero() {
        image.pop();
    }

    let from_exponent = |mut k: u64| -> Monomial {
        let mut powers = Vec::new();
        for (i, d) in degs.iter().enumerate() {
            let radix = *d as u64 + 1;
            let e = (k % radix) as u32;
            k /= radix;
            if e > 0 {
                powers.push((vars[i].clone(), e));
            }
        }
        Monomial::from_powers(powers)
    };
    let preimage = |g: &ZPoly| -> DiffPolynomial {
        DiffPolynomial::from_terms(
            m,
            g.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| {
                (from_exponent(k as u64), BigRational::from_integer(c.clone()))
            }),
        )
    };

    // The image of a squarefree polynomial need not be squarefree; factor it
    // fully and recombine from the multiset of univariate factors.
    let (_, uni) = univariate::factor_rational(
        &image
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect::<Vec<_>>(),
    );
    let mut pool: Vec<ZPoly> = Vec::new();
    for (g, e) in uni {
        for _ in 0..e {
            pool.push(g.clone());
        }
    }
    if pool.len() == 1 {
        push_factor(out, f.clone(), mult);
        return;
    }

    let mut current = f.clone();
    let mut size = 1usize;
    'outer: while 2 * size <= pool.len() {
        let idxs: Vec<usize> = (0..pool.len()).collect();
        for combo in combinations(&idxs, size) {
            let mut prod: ZPoly = vec![BigInt::one()];
            for &i in &combo {
                prod = univariate::z_mul(&prod, &pool[i]);
            }
            let cand = preimage(&prod);
            if cand.is_constant() {
                continue;
            }
            if let Some(quot) = exact_div(&current, &cand) {
                push_factor(out, cand.normalized(), mult);
                current = quot.normalized();
                let mut keep = Vec::new();
                for (i, w) in pool.into_iter().enumerate() {
                    if !combo.contains(&i) {
                        keep.push(w);
                    }
                }
                pool = keep;
                continue 'outer;
            }
        }
        size += 1;
    }
    if !current.is_constant() {
        push_factor(out, current.normalized(), mult);
    }
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        items: &[usize],
        k: usize,
        start: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
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
