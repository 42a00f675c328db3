//! Δ-irreducibility of autoreduced sets.
//!
//! Element k must be irreducible as a polynomial in its leader over the field
//! the earlier elements define. Supported towers are the ones where every
//! earlier element is linear in its leader or in some parametric variable, so
//! the tower field is a pure rational function field and irreducibility
//! reduces to factorization over ℚ after substitution. A random
//! degree-preserving specialization gives a sound fast path for the
//! "irreducible" answer; "reducible" verdicts are re-checked exactly.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algfactor::multivariate::factor;
use crate::algfactor::univariate;
use crate::error::{Error, Result};
use crate::operator::DerivativeVariable;
use crate::poly::{q, DiffPolynomial};
use crate::ratfunc::DiffRationalFunction;
use crate::reduction::AutoreducedSet;

/// Substitute a single derivative variable (as an algebraic indeterminate)
/// by a rational function, via Horner evaluation.
fn subst_var(
    f: &DiffPolynomial,
    v: &DerivativeVariable,
    val: &DiffRationalFunction,
) -> DiffRationalFunction {
    let m = f.num_derivations();
    let coeffs = f.univariate_in(v);
    let mut acc = DiffRationalFunction::zero(m);
    for c in coeffs.iter().rev() {
        acc = &(&acc * val) + &DiffRationalFunction::from_poly(c.clone());
    }
    acc
}

fn apply_bindings(
    f: &DiffPolynomial,
    bindings: &[(DerivativeVariable, DiffRationalFunction)],
) -> Result<DiffRationalFunction> {
    let mut acc = DiffRationalFunction::from_poly(f.clone());
    for (v, val) in bindings {
        let num = subst_var(acc.numerator(), v, val);
        let den = subst_var(acc.denominator(), v, val);
        if den.is_zero() {
            return Err(Error::UnsupportedTower(
                "a tower denominator vanishes identically".into(),
            ));
        }
        acc = num
            .checked_div(&den)
            .map_err(|_| Error::UnsupportedTower("a tower denominator vanishes identically".into()))?;
    }
    Ok(acc)
}

/// Solve `f = c1·w + c0` for `w`, returning −c0/c1.
fn solve_linear(f: &DiffPolynomial, w: &DerivativeVariable) -> DiffRationalFunction {
    let c1 = f.coeff_of_power(w, 1);
    let c0 = f.coeff_of_power(w, 0);
    DiffRationalFunction::new(-&c0, c1).expect("linear coefficient is nonzero")
}

/// Count distinct irreducible factors of `f` involving `v`, with the maximal
/// multiplicity among them.
fn leader_factor_profile(f: &DiffPolynomial, v: &DerivativeVariable) -> (usize, u32) {
    let fac = factor(f);
    let mut count = 0usize;
    let mut max_mult = 0u32;
    for (g, e) in &fac.factors {
        if g.contains_var(v) {
            count += 1;
            max_mult = max_mult.max(*e);
        }
    }
    (count, max_mult)
}

/// Random degree-preserving specialization of every variable except `v`;
/// `None` if no degree-preserving point was found.
fn specialize(
    f: &DiffPolynomial,
    v: &DerivativeVariable,
    rng: &mut ChaCha8Rng,
) -> Option<Vec<BigRational>> {
    let deg = f.degree_in(v);
    let lead = f.coeff_of_power(v, deg);
    let params: Vec<DerivativeVariable> = f
        .variables()
        .into_iter()
        .filter(|w| w != v)
        .collect();
    for _ in 0..32 {
        let point: BTreeMap<DerivativeVariable, BigRational> = params
            .iter()
            .map(|w| (w.clone(), q(rng.gen_range(-40i64..=40))))
            .collect();
        if lead.eval(&point).is_zero() {
            continue;
        }
        let coeffs: Vec<BigRational> = f
            .univariate_in(v)
            .iter()
            .map(|c| c.eval(&point))
            .collect();
        return Some(coeffs);
    }
    None
}

/// The elements of the set with the tower relations of their predecessors
/// substituted in (linear-tower presentation) and denominators cleared.
/// Fails on towers outside the supported class when a later element needs
/// the broken relation.
pub fn substituted_numerators(set: &AutoreducedSet) -> Result<Vec<DiffPolynomial>> {
    let leaders: Vec<DerivativeVariable> = set.leaders();
    let mut bindings: Vec<(DerivativeVariable, DiffRationalFunction)> = Vec::new();
    let mut tower_broken: Option<usize> = None;
    let mut out = Vec::new();
    for (k, element) in set.elements().iter().enumerate() {
        if let Some(j) = tower_broken {
            return Err(Error::UnsupportedTower(format!(
                "element {j} is linear in no usable variable; cannot present the tower \
                 as a rational function field for element {k}"
            )));
        }
        let view = &set.views()[k];
        let leader = &view.leader;
        let substituted = apply_bindings(element, &bindings)?;
        let numerator = substituted.numerator().normalized();
        if numerator.degree_in(leader) != view.degree {
            return Err(Error::UnsupportedTower(format!(
                "initial of element {k} vanishes on the tower"
            )));
        }
        if numerator.degree_in(leader) == 1 {
            bindings.push((leader.clone(), solve_linear(&numerator, leader)));
        } else {
            let candidate = numerator.variables().into_iter().find(|w| {
                w != leader
                    && numerator.degree_in(w) == 1
                    && !leaders.contains(w)
                    && !bindings.iter().any(|(b, _)| b == w)
            });
            match candidate {
                Some(w) => bindings.push((w.clone(), solve_linear(&numerator, &w))),
                None => tower_broken = Some(k),
            }
        }
        out.push(numerator);
    }
    Ok(out)
}

/// Is every element of the set irreducible over the tower defined by the
/// preceding elements?
pub fn is_delta_irreducible(set: &AutoreducedSet) -> Result<bool> {
    is_delta_irreducible_seeded(set, 0x7041_3359)
}

pub fn is_delta_irreducible_seeded(set: &AutoreducedSet, seed: u64) -> Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let numerators = substituted_numerators(set)?;
    for (k, numerator) in numerators.iter().enumerate() {
        let view = &set.views()[k];
        if view.degree <= 1 {
            // degree one in the leader: irreducible over any field
            continue;
        }
        let leader = &view.leader;
        // Fast path: a degree-preserving rational specialization that is
        // irreducible over ℚ certifies irreducibility over the tower.
        let mut certified = false;
        if let Some(coeffs) = specialize(numerator, leader, &mut rng) {
            let (_, factors) = univariate::factor_rational(&coeffs);
            if factors.len() == 1 && factors[0].1 == 1 {
                certified = true;
            }
        }
        if !certified {
            let (count, max_mult) = leader_factor_profile(numerator, leader);
            if count != 1 || max_mult != 1 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::DerivativeOperator;
    use crate::ranking::Ranking;
    use crate::symbol::Symbol;

    fn sym(s: &str) -> Symbol {
        Symbol::new(s)
    }

    fn pv(s: &str, exps: &[u32]) -> DiffPolynomial {
        DiffPolynomial::var(
            exps.len(),
            DerivativeVariable::new(sym(s), DerivativeOperator::new(exps.to_vec())),
        )
    }

    #[test]
    fn linear_charset_is_irreducible() {
        // {-d2(x2)+d2^2(x1)+x1, d1(u)+d2(x1)-x2} under x1<x2<u
        let r = Ranking::elimination(vec![sym("x1"), sym("x2"), sym("u")]);
        let a = &(&pv("x1", &[0, 0]) + &pv("x1", &[0, 2])) - &pv("x2", &[0, 1]);
        let b = &(&pv("u", &[1, 0]) + &pv("x1", &[0, 1])) - &pv("x2", &[0, 0]);
        let set = AutoreducedSet::new(vec![a, b], r).unwrap();
        assert_eq!(is_delta_irreducible(&set), Ok(true));
    }

    #[test]
    fn reducible_over_rationals() {
        // {(u-1)(u+1)}
        let r = Ranking::elimination(vec![sym("u")]);
        let one = DiffPolynomial::one(2);
        let u = pv("u", &[0, 0]);
        let f = &(&u - &one) * &(&u + &one);
        let set = AutoreducedSet::new(vec![f], r).unwrap();
        assert_eq!(is_delta_irreducible(&set), Ok(false));
    }

    #[test]
    fn reducible_over_tower() {
        // {x2^2 - x1, u^2 - x1} under x1<x2<u: substituting x1 = x2^2 makes
        // the second element u^2 - x2^2 = (u-x2)(u+x2).
        let r = Ranking::elimination(vec![sym("x1"), sym("x2"), sym("u")]);
        let x1 = pv("x1", &[0, 0]);
        let x2 = pv("x2", &[0, 0]);
        let u = pv("u", &[0, 0]);
        let a = &(&x2 * &x2) - &x1;
        let b = &(&u * &u) - &x1;
        let set = AutoreducedSet::new(vec![a, b], r).unwrap();
        assert_eq!(is_delta_irreducible(&set), Ok(false));
    }

    #[test]
    fn quadratic_but_irreducible_tower() {
        // {x2^2 - x1, u^2 - x2} : u^2 - x2 stays irreducible over Q(x2)
        let r = Ranking::elimination(vec![sym("x1"), sym("x2"), sym("u")]);
        let a = &(&pv("x2", &[0, 0]) * &pv("x2", &[0, 0])) - &pv("x1", &[0, 0]);
        let b = &(&pv("u", &[0, 0]) * &pv("u", &[0, 0])) - &pv("x2", &[0, 0]);
        let set = AutoreducedSet::new(vec![a, b], r).unwrap();
        assert_eq!(is_delta_irreducible(&set), Ok(true));
    }

    #[test]
    fn unsupported_tower_is_reported() {
        // First element quadratic in everything; a later element exists.
        // {x2^2 - x1^2 - 1, u - x1}? the first is linear in no variable.
        let r = Ranking::elimination(vec![sym("x1"), sym("x2"), sym("u")]);
        let one = DiffPolynomial::one(2);
        let x1 = pv("x1", &[0, 0]);
        let x2 = pv("x2", &[0, 0]);
        let a = &(&(&x2 * &x2) - &(&x1 * &x1)) - &one;
        let b = &(&pv("u", &[0, 0]) * &pv("u", &[0, 0])) - &(&x1 * &x1);
        let set = AutoreducedSet::new(vec![a, b], r).unwrap();
        assert!(matches!(
            is_delta_irreducible(&set),
            Err(Error::UnsupportedTower(_))
        ));
    }
}
