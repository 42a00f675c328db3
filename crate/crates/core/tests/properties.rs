//! Cross-cutting invariants of the decomposition and Lüroth pipelines that go
//! beyond the per-module unit tests.

mod common;

use common::*;
use dalg::decompose::zero_decompose;
use dalg::kolchin::{dimension_polynomial, is_luroth_shape, LeaderStairs, NumericalPolynomial};
use dalg::luroth::{
    build_system, generators_equivalent, luroth_decide, u_block_stairs, verify_generator,
    LurothDecision, SubfieldPresentation,
};
use dalg::poly::q;
use dalg::ratfunc::substitute;
use dalg::reduction::{ritt_reduce, AutoreducedSet};
use dalg::reparam::{is_proper, reparametrize, Pdrpe, ReparamOutcome};
use dalg::{DiffRationalFunction, Ranking};
use num_rational::BigRational;
use rand::Rng;

const SEED: u64 = 0x9909;

fn all_fixtures() -> Vec<Vec<DiffRationalFunction>> {
    vec![
        fixture_simple_generator(),
        fixture_with_denominator(),
        fixture_counterexample(),
        fixture_curve(),
        vec![rf(pv("u", &[0, 0]))],
    ]
}

/// Union soundness: every input polynomial reduces to zero modulo every
/// returned charset (Σ ⊆ sat(𝒜ᵢ) for each component).
#[test]
fn decompose_union_soundness() {
    for gens in all_fixtures() {
        let pres = SubfieldPresentation::new(gens, vec![sym("u")]).unwrap();
        let system = build_system(&pres);
        let mut order = system.x_symbols.clone();
        order.push(sym("u"));
        let comps =
            zero_decompose(&system.ps, &system.ds, &Ranking::elimination(order)).unwrap();
        for comp in &comps {
            for f in &system.ps {
                assert!(
                    ritt_reduce(f, &comp.charset).remainder.is_zero(),
                    "{f} does not reduce to zero modulo a component charset"
                );
            }
        }
    }
}

/// Exactly one component vanishes at the generic point on every pipeline
/// fixture.
#[test]
fn select_component_uniqueness() {
    for gens in all_fixtures() {
        let pres = SubfieldPresentation::new(gens, vec![sym("u")]).unwrap();
        let system = build_system(&pres);
        let mut order = system.x_symbols.clone();
        order.push(sym("u"));
        let comps =
            zero_decompose(&system.ps, &system.ds, &Ranking::elimination(order)).unwrap();
        let vanishing = comps
            .iter()
            .filter(|c| {
                c.charset
                    .elements()
                    .iter()
                    .all(|f| substitute(f, &system.eta).is_zero())
                    && c.charset
                        .initials_and_separants()
                        .iter()
                        .all(|h| !substitute(h, &system.eta).is_zero())
            })
            .count();
        assert_eq!(vanishing, 1);
    }
}

/// A single-polynomial charset stays a characteristic set of its ideal under
/// a different elimination ranking (general-component property).
#[test]
fn single_polynomial_charset_is_ranking_independent() {
    // pipeline input u^2: selected charset {u^2 - x1}
    let pres = SubfieldPresentation::new(
        vec![rf(&pv("u", &[0, 0]) * &pv("u", &[0, 0]))],
        vec![sym("u")],
    )
    .unwrap();
    let out = luroth_decide(&pres, SEED).unwrap();
    assert_eq!(out.component.charset.len(), 1);
    let a = out.component.charset.elements()[0].clone();
    let x1 = out.system.x_symbols[0];

    // re-view the same polynomial as a charset under the reversed elimination
    let reversed = Ranking::elimination(vec![sym("u"), x1]);
    let set2 = AutoreducedSet::new(vec![a.clone()], reversed).unwrap();
    for f in &out.system.ps {
        assert!(ritt_reduce(f, &set2).remainder.is_zero());
    }
    // random ideal members still reduce to zero under the second view
    let mut rng = seeded(SEED);
    for _ in 0..10 {
        let mult = random_poly(&mut rng, &["u", "x1"], 1, 2, 1);
        let theta = dalg::DerivativeOperator::new(vec![
            rng.gen_range(0..2u32),
            rng.gen_range(0..2u32),
        ]);
        let member = &a.apply_operator(&theta) * &mult;
        assert!(ritt_reduce(&member, &set2).remainder.is_zero());
    }
}

/// Criterion consistency: the pipeline decision matches the
/// Lüroth shape test of the induced dimension polynomial, both directions,
/// on every fixture.
#[test]
fn criterion_matches_dimension_polynomial() {
    for gens in all_fixtures() {
        let pres = SubfieldPresentation::new(gens, vec![sym("u")]).unwrap();
        let out = luroth_decide(&pres, SEED).unwrap();
        let (stairs, n_free) = u_block_stairs(&out.component, pres.u_symbols());
        let omega = dimension_polynomial(&stairs, 2, n_free);
        let shape = is_luroth_shape(&omega, pres.u_symbols().len() as u32, 2);
        match out.decision {
            LurothDecision::HasGenerator => assert!(shape.is_some()),
            LurothDecision::NoGenerator => assert!(shape.is_none()),
        }
    }
}

/// Every generator the pipeline returns passes the independent two-way
/// membership verification.
#[test]
fn returned_generators_verify() {
    for gens in all_fixtures() {
        let pres = SubfieldPresentation::new(gens, vec![sym("u")]).unwrap();
        let out = luroth_decide(&pres, SEED).unwrap();
        if let Some(v) = &out.generator {
            assert_eq!(verify_generator(&pres, v, SEED), Ok(true));
        }
    }
}

/// The negative decision is stable under re-ordering the generators (which
/// permutes the x-block of the elimination ranking).
#[test]
fn counterexample_invariant_under_ranking_variants() {
    let orders: Vec<Vec<DiffRationalFunction>> = vec![
        vec![rf(pv("u", &[1, 0])), rf(pv("u", &[0, 1]))],
        vec![rf(pv("u", &[0, 1])), rf(pv("u", &[1, 0]))],
    ];
    for gens in orders {
        let pres = SubfieldPresentation::new(gens, vec![sym("u")]).unwrap();
        let out = luroth_decide(&pres, SEED).unwrap();
        assert_eq!(out.decision, LurothDecision::NoGenerator);
        assert_eq!(out.criterion.t_size(), 2);
    }
}

/// reparametrize output parameter is fractionally-linearly the Lüroth
/// generator of the component field.
#[test]
fn reparam_parameter_matches_luroth_generator() {
    let p = Pdrpe::new(fixture_curve(), sym("u")).unwrap();
    let ReparamOutcome::Reparametrized { parameter, .. } = reparametrize(&p, SEED).unwrap()
    else {
        panic!("curve fixture must be reparametrizable");
    };
    let pres = SubfieldPresentation::new(fixture_curve(), vec![sym("u")]).unwrap();
    let v = luroth_decide(&pres, SEED).unwrap().generator.unwrap();
    assert!(generators_equivalent(&parameter, &v).is_some());
}

/// A proper parametrization generates the full parameter field: the Lüroth
/// generator has order zero and is a fractional linear image of u₁.
#[test]
fn proper_parametrization_generates_parameter_field() {
    let comps = vec![rf(pv("u", &[0, 0])), rf(pv("u", &[1, 0]))];
    let p = Pdrpe::new(comps.clone(), sym("u")).unwrap();
    assert!(is_proper(&p, SEED).unwrap().proper);
    let pres = SubfieldPresentation::new(comps, vec![sym("u")]).unwrap();
    let v = luroth_decide(&pres, SEED).unwrap().generator.unwrap();
    assert_eq!(v.order(), 0);
    assert!(generators_equivalent(&v, &rf(pv("u", &[0, 0]))).is_some());
}

/// An impossible case: two independent derivatives as a parametrization.
#[test]
fn reparam_impossible_case() {
    let p = Pdrpe::new(fixture_counterexample(), sym("u")).unwrap();
    match reparametrize(&p, SEED).unwrap() {
        ReparamOutcome::Impossible { l1 } => assert_eq!(l1, 2),
        other => panic!("expected Impossible, got {other:?}"),
    }
}

/// The decomposition of the denominator fixture reproduces the reference
/// component pair exactly (mutual zero-remainder cross-reduction).
#[test]
fn denominator_fixture_components_match_reference_charsets() {
    let one = dalg::DiffPolynomial::one(2);
    let x1 = pv("x1", &[0, 0]);
    let x2 = pv("x2", &[0, 0]);
    let x3 = pv("x3", &[0, 0]);
    let u = pv("u", &[0, 0]);
    let ranking = Ranking::elimination(vec![sym("x1"), sym("x2"), sym("x3"), sym("u")]);

    let ps = vec![
        &(&u * &x1) - &pv("u", &[1, 0]),
        &(&x2 - &u) - &pv("u", &[1, 0]),
        &x3 - &pv("u", &[0, 1]),
    ];
    let comps = zero_decompose(&ps, &[u.clone()], &ranking).unwrap();
    assert_eq!(comps.len(), 2);

    // reference pair:
    // C1 = {(x1+1)d1(x2) - d1(x1)x2 - x1^2 x2 - x1 x2,
    //       (x1^2+2x1+1)x3 - d2(x2)x1 - d2(x2) + d2(x1)x2,
    //       (x1+1)u - x2}
    // C2 = {x1+1, x2, d1(x3)+x3, d1(u)+u, d2(u)-x3}
    let x1p1 = &x1 + &one;
    let c1 = AutoreducedSet::new(
        vec![
            &(&(&x1p1 * &pv("x2", &[1, 0])) - &(&pv("x1", &[1, 0]) * &x2))
                - &(&(&(&x1 * &x1) * &x2) + &(&x1 * &x2)),
            &(&(&x1p1 * &x1p1) * &x3)
                - &(&(&(&x1 * &pv("x2", &[0, 1])) + &pv("x2", &[0, 1]))
                    - &(&pv("x1", &[0, 1]) * &x2)),
            &(&x1p1 * &u) - &x2,
        ],
        ranking.clone(),
    )
    .unwrap();
    let c2 = AutoreducedSet::new(
        vec![
            x1p1.clone(),
            x2.clone(),
            &pv("x3", &[1, 0]) + &x3,
            &pv("u", &[1, 0]) + &u,
            &pv("u", &[0, 1]) - &x3,
        ],
        ranking.clone(),
    )
    .unwrap();

    for reference in [&c1, &c2] {
        let matched = comps
            .iter()
            .filter(|comp| {
                comp.charset
                    .elements()
                    .iter()
                    .all(|f| ritt_reduce(f, reference).remainder.is_zero())
                    && reference
                        .elements()
                        .iter()
                        .all(|f| ritt_reduce(f, &comp.charset).remainder.is_zero())
            })
            .count();
        assert_eq!(matched, 1, "reference charset matched {matched} components");
    }
}

/// Closed-form dimension polynomial vs direct lattice enumeration on random
/// antichains, compared from the exactness threshold upward.
#[test]
fn dimension_polynomial_matches_enumeration_on_random_antichains() {
    let mut rng = seeded(SEED ^ 0xA);
    for _ in 0..40 {
        let mut chain: Vec<dalg::DerivativeOperator> = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            let cand = dalg::DerivativeOperator::new(vec![
                rng.gen_range(0..=3u32),
                rng.gen_range(0..=3u32),
            ]);
            if cand.is_identity() {
                continue;
            }
            if chain.iter().all(|c| !c.divides(&cand) && !cand.divides(c)) {
                chain.push(cand);
            }
        }
        if chain.is_empty() {
            continue;
        }
        let stairs = LeaderStairs::new(vec![chain]);
        let omega = dimension_polynomial(&stairs, 2, 0);
        let t0 = stairs.max_join_order().saturating_sub(2);
        for t in t0..=t0 + 6 {
            assert_eq!(
                omega.eval(t as i64),
                BigRational::from_integer(stairs.count_lattice(2, t, 0)),
                "stairs {stairs:?} at t={t}"
            );
        }
    }
}

/// Binomial-basis round trip: evaluating and re-fitting is the identity, and
/// the power-basis expansion evaluates identically.
#[test]
fn binomial_basis_round_trip() {
    let mut rng = seeded(SEED ^ 0xB);
    for _ in 0..25 {
        let coeffs: Vec<BigRational> = (0..3).map(|_| q(rng.gen_range(-6i64..=6))).collect();
        let omega = NumericalPolynomial { coeffs };
        let values: Vec<BigRational> = (0..=2).map(|t| omega.eval(t)).collect();
        let refit = NumericalPolynomial::fit(2, &values);
        assert_eq!(refit, omega);
        let power = omega.power_coeffs();
        for t in -3i64..=5 {
            let direct = omega.eval(t);
            let mut horner = BigRational::from_integer(0.into());
            for c in power.iter().rev() {
                horner = horner * q(t) + c;
            }
            assert_eq!(direct, horner);
        }
    }
}
