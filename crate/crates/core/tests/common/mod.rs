//! Shared fixtures and random generators for the integration suites.
#![allow(dead_code)]

use dalg::poly::q;
use dalg::{
    DerivativeOperator, DerivativeVariable, DiffPolynomial, DiffRationalFunction, Monomial,
    Ranking, Symbol,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn sym(s: &str) -> Symbol {
    Symbol::new(s)
}

pub fn dv(s: &str, exps: &[u32]) -> DerivativeVariable {
    DerivativeVariable::new(sym(s), DerivativeOperator::new(exps.to_vec()))
}

pub fn pv(s: &str, exps: &[u32]) -> DiffPolynomial {
    DiffPolynomial::var(exps.len(), dv(s, exps))
}

pub fn rf(p: DiffPolynomial) -> DiffRationalFunction {
    DiffRationalFunction::from_poly(p)
}

pub fn ratio(n: DiffPolynomial, d: DiffPolynomial) -> DiffRationalFunction {
    DiffRationalFunction::new(n, d).unwrap()
}

/// Example fixtures from the worked examples: generator lists with m = 2.
pub fn fixture_simple_generator() -> Vec<DiffRationalFunction> {
    // d1d2(u), d1(u) + d1d2^2(u)
    vec![rf(pv("u", &[1, 1])), rf(&pv("u", &[1, 0]) + &pv("u", &[1, 2]))]
}

pub fn fixture_with_denominator() -> Vec<DiffRationalFunction> {
    // d1(u)/u, u + d1(u), d2(u)
    vec![
        ratio(pv("u", &[1, 0]), pv("u", &[0, 0])),
        rf(&pv("u", &[0, 0]) + &pv("u", &[1, 0])),
        rf(pv("u", &[0, 1])),
    ]
}

pub fn fixture_counterexample() -> Vec<DiffRationalFunction> {
    // d1(u), d2(u): no Lüroth generator
    vec![rf(pv("u", &[1, 0])), rf(pv("u", &[0, 1]))]
}

pub fn fixture_curve() -> Vec<DiffRationalFunction> {
    // u^2, d1(u) d2(u)
    let u = pv("u", &[0, 0]);
    vec![rf(&u * &u), rf(&pv("u", &[1, 0]) * &pv("u", &[0, 1]))]
}

/// A random differential polynomial in derivatives of the given symbols.
pub fn random_poly(
    rng: &mut ChaCha8Rng,
    symbols: &[&str],
    max_order: u32,
    max_terms: usize,
    max_power: u32,
) -> DiffPolynomial {
    let m = 2usize;
    let n_terms = rng.gen_range(1..=max_terms);
    let mut p = DiffPolynomial::zero(m);
    for _ in 0..n_terms {
        let n_vars = rng.gen_range(0..=2);
        let mut powers = Vec::new();
        for _ in 0..n_vars {
            let s = symbols[rng.gen_range(0..symbols.len())];
            let e1 = rng.gen_range(0..=max_order);
            let e2 = rng.gen_range(0..=max_order.saturating_sub(e1));
            powers.push((dv(s, &[e1, e2]), rng.gen_range(1..=max_power)));
        }
        let c = loop {
            let c = rng.gen_range(-4i64..=4);
            if c != 0 {
                break c;
            }
        };
        p.add_term(Monomial::from_powers(powers), q(c));
    }
    p
}

pub fn random_ranking(rng: &mut ChaCha8Rng) -> Ranking {
    let symbols = vec![sym("x1"), sym("x2"), sym("u")];
    match rng.gen_range(0..3) {
        0 => Ranking::canonical(symbols),
        1 => Ranking::orderly(symbols),
        _ => Ranking::elimination(symbols),
    }
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
