//! Shared fixture builders for the kernel benchmarks.

use dalg::poly::q;
use dalg::{
    DerivativeOperator, DerivativeVariable, DiffPolynomial, DiffRationalFunction, Symbol,
};

pub fn sym(s: &str) -> Symbol {
    Symbol::new(s)
}

pub fn pv(s: &str, exps: &[u32]) -> DiffPolynomial {
    DiffPolynomial::var(
        exps.len(),
        DerivativeVariable::new(sym(s), DerivativeOperator::new(exps.to_vec())),
    )
}

pub fn rf(p: DiffPolynomial) -> DiffRationalFunction {
    DiffRationalFunction::from_poly(p)
}

/// Generators of the denominator fixture: d1(u)/u, u + d1(u), d2(u).
pub fn denominator_generators() -> Vec<DiffRationalFunction> {
    vec![
        DiffRationalFunction::new(pv("u", &[1, 0]), pv("u", &[0, 0])).unwrap(),
        rf(&pv("u", &[0, 0]) + &pv("u", &[1, 0])),
        rf(pv("u", &[0, 1])),
    ]
}

/// The parametrization system of the curve fixture x1 = u^2, x2 = d1(u)d2(u).
pub fn curve_system() -> Vec<DiffPolynomial> {
    let u = pv("u", &[0, 0]);
    vec![
        &pv("x1", &[0, 0]) - &(&u * &u),
        &pv("x2", &[0, 0]) - &(&pv("u", &[1, 0]) * &pv("u", &[0, 1])),
    ]
}

/// A moderately deep reduction instance: an order-4 polynomial against a
/// two-element charset with nonconstant initials.
pub fn reduction_instance() -> (DiffPolynomial, Vec<DiffPolynomial>) {
    let one = DiffPolynomial::one(2);
    let f = &(&(&pv("x2", &[2, 2]) * &pv("u", &[1, 0]))
        + &(&pv("u", &[2, 2]) * &pv("u", &[1, 1])))
        - &(&pv("x1", &[0, 0]) * &pv("u", &[0, 2])).scale(&q(3));
    let a1 = &(&(&pv("x1", &[0, 0]) + &one) * &pv("u", &[1, 0])) - &pv("x2", &[0, 0]);
    let a2 = &(&pv("x1", &[0, 1]) * &pv("u", &[0, 1])) - &pv("x1", &[0, 0]);
    (f, vec![a2, a1])
}
