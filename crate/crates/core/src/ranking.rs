//! Rankings on derivative variables and the induced leader machinery.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::operator::DerivativeVariable;
use crate::poly::DiffPolynomial;
use crate::symbol::Symbol;

/// The three ranking families the algorithms use. Within each variable the
/// tie-break is always the canonical ranking ℛ₀ comparing
/// (Σkᵢ, k₁, …, k_m) lexicographically.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RankingKind {
    /// ℛ₀ on operators first, then the declared variable order.
    Canonical,
    /// Operator order first, then declared variable order, then ℛ₀.
    Orderly,
    /// Variable blocks first (later in the declaration ranks higher),
    /// then ℛ₀ inside each block.
    Elimination,
}

/// A total order on Θ(Y) compatible with differentiation.
#[derive(Clone, PartialEq, Eq)]
pub struct Ranking {
    kind: RankingKind,
    /// Declared symbols, lowest first.
    symbols: Vec<Symbol>,
}

impl Ranking {
    pub fn new(kind: RankingKind, symbols: Vec<Symbol>) -> Self {
        Ranking { kind, symbols }
    }

    /// Elimination ranking s₁ ≺ s₂ ≺ … with canonical per-variable tie-break.
    pub fn elimination(symbols: Vec<Symbol>) -> Self {
        Ranking::new(RankingKind::Elimination, symbols)
    }

    pub fn orderly(symbols: Vec<Symbol>) -> Self {
        Ranking::new(RankingKind::Orderly, symbols)
    }

    pub fn canonical(symbols: Vec<Symbol>) -> Self {
        Ranking::new(RankingKind::Canonical, symbols)
    }

    pub fn kind(&self) -> RankingKind {
        self.kind
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn position(&self, s: Symbol) -> Result<usize> {
        self.symbols
            .iter()
            .position(|&t| t == s)
            .ok_or(Error::UnknownSymbol(s))
    }

    /// Compare two derivative variables. Panics on a symbol the ranking does
    /// not know; use `try_compare` at validation boundaries.
    pub fn compare(&self, a: &DerivativeVariable, b: &DerivativeVariable) -> Ordering {
        self.try_compare(a, b).expect("symbol not declared in ranking")
    }

    pub fn try_compare(&self, a: &DerivativeVariable, b: &DerivativeVariable) -> Result<Ordering> {
        let pa = self.position(a.symbol)?;
        let pb = self.position(b.symbol)?;
        Ok(match self.kind {
            RankingKind::Canonical => a
                .op
                .canonical_cmp(&b.op)
                .then(pa.cmp(&pb)),
            RankingKind::Orderly => a
                .op
                .order()
                .cmp(&b.op.order())
                .then(pa.cmp(&pb))
                .then_with(|| a.op.canonical_cmp(&b.op)),
            RankingKind::Elimination => pa.cmp(&pb).then_with(|| a.op.canonical_cmp(&b.op)),
        })
    }

    /// The maximal derivative variable of `f` (its leader), `None` for
    /// constants.
    pub fn leader(&self, f: &DiffPolynomial) -> Option<DerivativeVariable> {
        f.variables()
            .into_iter()
            .max_by(|a, b| self.compare(a, b))
    }
}

impl fmt::Debug for Ranking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.symbols.iter().map(|s| s.name()).collect();
        write!(f, "{:?}[{}]", self.kind, names.join("<"))
    }
}

/// Leader, rank, initial and separant of a nonconstant polynomial under a
/// fixed ranking.
#[derive(Clone, Debug)]
pub struct RankedPolynomialView {
    pub leader: DerivativeVariable,
    pub degree: u32,
    pub initial: DiffPolynomial,
    pub separant: DiffPolynomial,
}

impl RankedPolynomialView {
    /// Rank comparison: by leader, then degree in the leader.
    pub fn rank_cmp(&self, other: &Self, r: &Ranking) -> Ordering {
        r.compare(&self.leader, &other.leader)
            .then(self.degree.cmp(&other.degree))
    }
}

/// Compute the ranked view of `f`; `Err(ConstantPolynomial)` when f ∈ ℚ.
pub fn rank_view(f: &DiffPolynomial, r: &Ranking) -> Result<RankedPolynomialView> {
    let leader = r.leader(f).ok_or(Error::ConstantPolynomial)?;
    let degree = f.degree_in(&leader);
    let initial = f.coeff_of_power(&leader, degree);
    let separant = f.partial_derivative(&leader);
    Ok(RankedPolynomialView {
        leader,
        degree,
        initial,
        separant,
    })
}

/// True when `g` contains no proper derivative of ld(f).
pub fn is_partially_reduced(g: &DiffPolynomial, f: &DiffPolynomial, r: &Ranking) -> bool {
    let view = rank_view(f, r).expect("f must not be constant");
    partially_reduced_wrt_leader(g, &view.leader)
}

pub(crate) fn partially_reduced_wrt_leader(g: &DiffPolynomial, leader: &DerivativeVariable) -> bool {
    g.variables()
        .iter()
        .all(|v| !v.is_proper_derivative_of(leader))
}

/// True when `g` is partially reduced w.r.t. `f` and deg(g, ld f) < deg(f, ld f).
pub fn is_reduced(g: &DiffPolynomial, f: &DiffPolynomial, r: &Ranking) -> bool {
    let view = rank_view(f, r).expect("f must not be constant");
    partially_reduced_wrt_leader(g, &view.leader) && g.degree_in(&view.leader) < view.degree
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::DerivativeOperator;
    use crate::poly::q;
    use proptest::prelude::*;

    fn sym(s: &str) -> Symbol {
        Symbol::new(s)
    }

    fn dv(s: &str, exps: &[u32]) -> DerivativeVariable {
        DerivativeVariable::new(sym(s), DerivativeOperator::new(exps.to_vec()))
    }

    fn pv(s: &str, exps: &[u32]) -> DiffPolynomial {
        DiffPolynomial::var(exps.len(), dv(s, exps))
    }

    #[test]
    fn canonical_ranking_examples() {
        let r = Ranking::canonical(vec![sym("u")]);
        // d1d2(u) > d2^2(u): (2,1,1) >lex (2,0,2)
        assert_eq!(
            r.compare(&dv("u", &[1, 1]), &dv("u", &[0, 2])),
            Ordering::Greater
        );
    }

    #[test]
    fn elimination_ranking_examples() {
        let r = Ranking::elimination(vec![sym("x1"), sym("u")]);
        // d1^3(x1) < u
        assert_eq!(
            r.compare(&dv("x1", &[3, 0]), &dv("u", &[0, 0])),
            Ordering::Less
        );
    }

    #[test]
    fn orderly_ranking_examples() {
        let r = Ranking::orderly(vec![sym("u1"), sym("u2")]);
        // d1^2(u1) > d2(u2): order 2 > 1
        assert_eq!(
            r.compare(&dv("u1", &[2, 0]), &dv("u2", &[0, 1])),
            Ordering::Greater
        );
    }

    #[test]
    fn unknown_symbol_is_reported() {
        let r = Ranking::elimination(vec![sym("u")]);
        assert_eq!(
            r.try_compare(&dv("u", &[1, 0]), &dv("zz", &[0, 0])),
            Err(Error::UnknownSymbol(sym("zz")))
        );
    }

    #[test]
    fn rank_view_paper_shape() {
        // f = u*x1 - d1(u), elimination x1 < u: leader d1(u), initial -1,
        // separant -1
        let m = 2;
        let r = Ranking::elimination(vec![sym("x1"), sym("u")]);
        let f = &(&pv("u", &[0, 0]) * &pv("x1", &[0, 0])) - &pv("u", &[1, 0]);
        let v = rank_view(&f, &r).unwrap();
        assert_eq!(v.leader, dv("u", &[1, 0]));
        assert_eq!(v.degree, 1);
        assert_eq!(v.initial, DiffPolynomial::constant(m, q(-1)));
        assert_eq!(v.separant, DiffPolynomial::constant(m, q(-1)));

        // f = d1(u)^2: leader d1(u), degree 2, initial 1, separant 2 d1(u)
        let f = &pv("u", &[1, 0]) * &pv("u", &[1, 0]);
        let v = rank_view(&f, &Ranking::canonical(vec![sym("u")])).unwrap();
        assert_eq!(v.leader, dv("u", &[1, 0]));
        assert_eq!(v.degree, 2);
        assert_eq!(v.initial, DiffPolynomial::one(m));
        assert_eq!(v.separant, pv("u", &[1, 0]).scale(&q(2)));

        // f = (x1+1)u - x2, elimination x1 < x2 < u: leader u, initial x1+1
        let r = Ranking::elimination(vec![sym("x1"), sym("x2"), sym("u")]);
        let f = &(&(&pv("x1", &[0, 0]) + &DiffPolynomial::one(m)) * &pv("u", &[0, 0]))
            - &pv("x2", &[0, 0]);
        let v = rank_view(&f, &r).unwrap();
        assert_eq!(v.leader, dv("u", &[0, 0]));
        assert_eq!(v.initial, &pv("x1", &[0, 0]) + &DiffPolynomial::one(m));
    }

    #[test]
    fn rank_view_rejects_constants() {
        let r = Ranking::canonical(vec![sym("u")]);
        assert!(matches!(
            rank_view(&DiffPolynomial::one(2), &r),
            Err(Error::ConstantPolynomial)
        ));
    }

    #[test]
    fn reducedness_checks() {
        let m = 2;
        let r = Ranking::elimination(vec![sym("x1"), sym("u")]);
        // g = d1d2(u) vs f with leader d2(u): not partially reduced
        let f = &pv("u", &[0, 1]) - &pv("x1", &[0, 0]);
        assert!(!is_partially_reduced(&pv("u", &[1, 1]), &f, &r));
        // g = x1 vs f with leader u: reduced
        let f = &pv("u", &[0, 0]) - &DiffPolynomial::one(m);
        assert!(is_reduced(&pv("x1", &[0, 0]), &f, &r));
        // g = d1(u)^2, f = d1(u): partially reduced but not reduced
        let g = &pv("u", &[1, 0]) * &pv("u", &[1, 0]);
        let f = pv("u", &[1, 0]);
        assert!(is_partially_reduced(&g, &f, &r));
        assert!(!is_reduced(&g, &f, &r));
    }

    #[test]
    fn reconstruction_identity() {
        // f = initial * leader^degree + lower-degree terms in the leader
        let r = Ranking::elimination(vec![sym("x1"), sym("u")]);
        let u0 = pv("u", &[0, 0]);
        let f = &(&(&pv("x1", &[0, 0]) * &(&u0 * &u0)) + &u0) + &DiffPolynomial::one(2);
        let v = rank_view(&f, &r).unwrap();
        let lead = DiffPolynomial::var(2, v.leader.clone()).pow(v.degree);
        let rest = &f - &(&v.initial * &lead);
        assert!(rest.degree_in(&v.leader) < v.degree);
    }

    fn arb_var() -> impl Strategy<Value = DerivativeVariable> {
        (0u32..4, 0u32..4, prop::sample::select(vec!["u", "x1", "x2"]))
            .prop_map(|(a, b, s)| dv(s, &[a, b]))
    }

    fn rankings() -> impl Strategy<Value = Ranking> {
        prop::sample::select(vec![
            Ranking::canonical(vec![sym("u"), sym("x1"), sym("x2")]),
            Ranking::orderly(vec![sym("x1"), sym("x2"), sym("u")]),
            Ranking::elimination(vec![sym("x1"), sym("x2"), sym("u")]),
        ])
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn strict_total_order(r in rankings(), a in arb_var(), b in arb_var(), c in arb_var()) {
            // antisymmetry
            prop_assert_eq!(r.compare(&a, &b), r.compare(&b, &a).reverse());
            // equality only for identical variables
            if r.compare(&a, &b) == Ordering::Equal {
                prop_assert_eq!(&a, &b);
            }
            // transitivity
            if r.compare(&a, &b) != Ordering::Greater && r.compare(&b, &c) != Ordering::Greater {
                prop_assert_ne!(r.compare(&a, &c), Ordering::Greater);
            }
        }

        #[test]
        fn ranking_axioms(r in rankings(), a in arb_var(), b in arb_var(), k in 1usize..3) {
            // a < δ_k(a)
            let da = DerivativeVariable::new(a.symbol, a.op.bump(k));
            prop_assert_eq!(r.compare(&a, &da), Ordering::Less);
            // a < b implies δ_k(a) < δ_k(b)
            if r.compare(&a, &b) == Ordering::Less {
                let db = DerivativeVariable::new(b.symbol, b.op.bump(k));
                prop_assert_eq!(r.compare(&da, &db), Ordering::Less);
            }
        }
    }
}
