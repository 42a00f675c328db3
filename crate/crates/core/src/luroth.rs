//! Decision and computation of Lüroth generators for finitely generated
//! differential subfields 𝒢 = ℚ⟨P₁/Q₁, …, P_r/Q_r⟩ of ℚ⟨u₁,…,uₙ⟩.
//!
//! The pipeline: build the parametrization system PS = {xⱼQⱼ(u) − Pⱼ(u)},
//! DS = {Qⱼ}, decompose 𝕍(PS/DS) under the elimination ranking
//! x₁ ≺ … ≺ x_r ≺ u₁ ≺ … ≺ uₙ, select the unique component vanishing at the
//! generic point η = (P/Q, u), certify it, and read the generator off the
//! single charset element led by a u-variable.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::decompose::{
    certify_component, select_component, zero_decompose_seeded, ComponentCertificate,
    DecompositionComponent,
};
use crate::error::{Error, Result};
use crate::kolchin::LeaderStairs;
use crate::operator::DerivativeVariable;
use crate::poly::{DiffPolynomial, Monomial};
use crate::ranking::Ranking;
use crate::ratfunc::{substitute, Bindings, DiffRationalFunction};
use crate::reduction::AutoreducedSet;
use crate::symbol::Symbol;

pub const DEFAULT_SEED: u64 = 0x10_u64;

/// A finitely generated subfield of ℚ⟨u₁,…,uₙ⟩ given by reduced-form,
/// nonconstant generators.
#[derive(Clone, Debug)]
pub struct SubfieldPresentation {
    generators: Vec<DiffRationalFunction>,
    u_symbols: Vec<Symbol>,
    m: usize,
}

impl SubfieldPresentation {
    pub fn new(generators: Vec<DiffRationalFunction>, u_symbols: Vec<Symbol>) -> Result<Self> {
        if generators.is_empty() || u_symbols.is_empty() {
            return Err(Error::EmptyInput);
        }
        let m = generators[0].num_derivations();
        for g in &generators {
            if g.is_constant() {
                return Err(Error::ConstantGenerator);
            }
            for s in g.numerator().symbols().union(&g.denominator().symbols()) {
                if !u_symbols.contains(s) {
                    return Err(Error::UnknownSymbol(*s));
                }
            }
        }
        Ok(SubfieldPresentation {
            generators,
            u_symbols,
            m,
        })
    }

    pub fn generators(&self) -> &[DiffRationalFunction] {
        &self.generators
    }

    pub fn u_symbols(&self) -> &[Symbol] {
        &self.u_symbols
    }

    pub fn num_derivations(&self) -> usize {
        self.m
    }
}

/// Names `prefix1..prefixN` that avoid clashing with the given symbols.
pub fn fresh_symbols(base: &str, count: usize, avoid: &[Symbol]) -> Vec<Symbol> {
    let taken: BTreeSet<&str> = avoid.iter().map(|s| s.name()).collect();
    let mut prefix = base.to_string();
    loop {
        let names: Vec<String> = (1..=count).map(|i| format!("{prefix}{i}")).collect();
        if names.iter().all(|n| !taken.contains(n.as_str())) {
            return names.iter().map(|n| Symbol::new(n)).collect();
        }
        prefix.insert(0, '_');
    }
}

/// A single fresh name avoiding the given symbols.
pub fn fresh_symbol(base: &str, avoid: &[Symbol]) -> Symbol {
    let taken: BTreeSet<&str> = avoid.iter().map(|s| s.name()).collect();
    let mut name = base.to_string();
    while taken.contains(name.as_str()) {
        name.insert(0, '_');
    }
    Symbol::new(&name)
}

/// The parametrization system of a presentation.
#[derive(Clone, Debug)]
pub struct ParametrizationSystem {
    pub ps: Vec<DiffPolynomial>,
    pub ds: Vec<DiffPolynomial>,
    pub x_symbols: Vec<Symbol>,
    /// η = (P₁/Q₁, …, P_r/Q_r, u₁, …, uₙ) as bindings for the x-symbols.
    pub eta: Bindings,
}

/// PS := {x₁Q₁(u)−P₁(u), …, x_rQ_r(u)−P_r(u)}, DS := {Q₁(u), …, Q_r(u)}.
pub fn build_system(pres: &SubfieldPresentation) -> ParametrizationSystem {
    let m = pres.m;
    let xs = fresh_symbols("x", pres.generators.len(), &pres.u_symbols);
    let mut ps = Vec::new();
    let mut ds = Vec::new();
    let mut eta = Bindings::new();
    for (j, g) in pres.generators.iter().enumerate() {
        let x = DiffPolynomial::symbol(m, xs[j]);
        ps.push(&(&x * g.denominator()) - g.numerator());
        ds.push(g.denominator().clone());
        eta.insert(xs[j], g.clone());
    }
    ParametrizationSystem {
        ps,
        ds,
        x_symbols: xs,
        eta,
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LurothDecision {
    HasGenerator,
    NoGenerator,
}

/// The criterion data read off the certified characteristic set (10):
/// d = number of distinct u-variables among the leading variables,
/// l1 = size of the first u-block, T = all u-led elements.
#[derive(Clone, Debug)]
pub struct CriterionData {
    pub d: usize,
    pub l1: usize,
    pub t_elements: Vec<DiffPolynomial>,
}

impl CriterionData {
    pub fn t_size(&self) -> usize {
        self.t_elements.len()
    }
}

#[derive(Clone, Debug)]
pub struct LurothOutcome {
    pub decision: LurothDecision,
    pub generator: Option<DiffRationalFunction>,
    pub component: DecompositionComponent,
    pub certificate: ComponentCertificate,
    pub criterion: CriterionData,
    pub system: ParametrizationSystem,
}

fn criterion_data(
    charset: &AutoreducedSet,
    u_symbols: &[Symbol],
    ranking: &Ranking,
) -> CriterionData {
    let mut t_elements = Vec::new();
    let mut u_leads: Vec<Symbol> = Vec::new();
    for (e, view) in charset.elements().iter().zip(charset.views()) {
        if u_symbols.contains(&view.leader.symbol) {
            t_elements.push(e.clone());
            if !u_leads.contains(&view.leader.symbol) {
                u_leads.push(view.leader.symbol);
            }
        }
    }
    let d = u_leads.len();
    let l1 = match u_leads
        .iter()
        .min_by_key(|s| ranking.position(**s).unwrap_or(usize::MAX))
    {
        None => 0,
        Some(first) => charset
            .views()
            .iter()
            .filter(|v| v.leader.symbol == *first)
            .count(),
    };
    CriterionData { d, l1, t_elements }
}

/// Decompose the system of a presentation and certify the component that
/// vanishes at its generic point; shared by the Lüroth and re-parametrization
/// pipelines.
pub fn certified_component(
    system: &ParametrizationSystem,
    u_symbols: &[Symbol],
    seed: u64,
) -> Result<(DecompositionComponent, ComponentCertificate, Ranking)> {
    let mut order = system.x_symbols.clone();
    order.extend_from_slice(u_symbols);
    let r2 = Ranking::elimination(order);
    let components = zero_decompose_seeded(&system.ps, &system.ds, &r2, seed)?;
    let selected = select_component(&components, &system.eta)?.clone();

    let mut ref_order = u_symbols.to_vec();
    ref_order.extend_from_slice(&system.x_symbols);
    let r1 = Ranking::elimination(ref_order);
    let reference = AutoreducedSet::new(system.ps.clone(), r1)?;
    let certificate = certify_component(&selected, &reference, &system.eta, seed)?;
    if !certificate.passed() {
        return Err(Error::Certification(format!(
            "selected component failed certification (witness: {:?})",
            certificate.failing_witness
        )));
    }
    Ok((selected, certificate, r2))
}

/// Decide whether the subfield admits a Lüroth generator and compute one.
pub fn luroth_decide(pres: &SubfieldPresentation, seed: u64) -> Result<LurothOutcome> {
    let system = build_system(pres);
    let (component, certificate, r2) = certified_component(&system, &pres.u_symbols, seed)?;
    let criterion = criterion_data(&component.charset, &pres.u_symbols, &r2);

    if criterion.t_size() != 1 {
        return Ok(LurothOutcome {
            decision: LurothDecision::NoGenerator,
            generator: None,
            component,
            certificate,
            criterion,
            system,
        });
    }

    let generator = extract_generator(&criterion.t_elements[0], pres, &system)?;
    Ok(LurothOutcome {
        decision: LurothDecision::HasGenerator,
        generator: Some(generator),
        component,
        certificate,
        criterion,
        system,
    })
}

/// Write A = Σᵢ a_{Mᵢ}(x)·Mᵢ(u) over distinct Δ-monomials Mᵢ in the
/// u-variables (descending graded-lex) and scan a_{Mᵢ}/a_{M₁} at x = P/Q for
/// the first nonconstant value.
fn extract_generator(
    a: &DiffPolynomial,
    pres: &SubfieldPresentation,
    system: &ParametrizationSystem,
) -> Result<DiffRationalFunction> {
    let m = pres.m;
    // group terms by their u-monomial part
    let mut groups: std::collections::BTreeMap<Monomial, DiffPolynomial> =
        std::collections::BTreeMap::new();
    for (mono, c) in a.terms() {
        let mut u_part = Vec::new();
        let mut x_part = Vec::new();
        for (v, e) in mono.powers() {
            if pres.u_symbols.contains(&v.symbol) {
                u_part.push((v.clone(), *e));
            } else {
                x_part.push((v.clone(), *e));
            }
        }
        groups
            .entry(Monomial::from_powers(u_part))
            .or_insert_with(|| DiffPolynomial::zero(m))
            .add_term(Monomial::from_powers(x_part), c.clone());
    }
    let mut iter = groups.iter().rev();
    let (_, a1) = iter.next().expect("nonzero polynomial");
    let a1_at_eta = substitute(a1, &system.eta);
    if a1_at_eta.is_zero() {
        return Err(Error::Certification(
            "leading coefficient of the u-led charset element vanishes at the generic point".into(),
        ));
    }
    for (_, ai) in iter {
        let vi = substitute(ai, &system.eta).checked_div(&a1_at_eta)?;
        if !vi.is_constant() {
            return Ok(vi);
        }
    }
    Err(Error::Certification(
        "all coefficient ratios are constant; contradicts the Lüroth construction".into(),
    ))
}

/// Check 𝒢 = ℚ⟨v⟩ both ways: every generator must be a differential rational
/// function of v, and v must lie in 𝒢. Both directions run through certified
/// decompositions of PS ∪ {g(u)y − f(u)}.
pub fn verify_generator(
    pres: &SubfieldPresentation,
    v: &DiffRationalFunction,
    seed: u64,
) -> Result<bool> {
    if v.is_constant() {
        return Err(Error::ConstantGenerator);
    }
    let m = pres.m;
    let system = build_system(pres);
    let mut avoid = pres.u_symbols.clone();
    avoid.extend_from_slice(&system.x_symbols);
    let y = fresh_symbol("y", &avoid);
    let y_poly = DiffPolynomial::symbol(m, y);
    let relation = &(v.denominator() * &y_poly) - v.numerator();

    let mut sys = system.ps.clone();
    sys.push(relation);
    let mut ds = system.ds.clone();
    ds.push(v.denominator().clone());
    let mut eta = system.eta.clone();
    eta.insert(y, v.clone());

    // reference charset of the extended prime ideal: u lowest, then y, then x
    let mut ref_order = pres.u_symbols.clone();
    ref_order.push(y);
    ref_order.extend_from_slice(&system.x_symbols);
    let reference = AutoreducedSet::new(sys.clone(), Ranking::elimination(ref_order))?;

    // direction 1: each x_j expressible over y
    let mut order_a = vec![y];
    order_a.extend_from_slice(&system.x_symbols);
    order_a.extend_from_slice(&pres.u_symbols);
    let comps_a = zero_decompose_seeded(&sys, &ds, &Ranking::elimination(order_a), seed)?;
    let comp_a = select_component(&comps_a, &eta)?;
    let cert_a = certify_component(comp_a, &reference, &eta, seed)?;
    if !cert_a.passed() {
        return Err(Error::Certification(
            "generator-membership component failed certification".into(),
        ));
    }
    for xj in &system.x_symbols {
        if !block_is_linear_over(&comp_a.charset, *xj, &[y]) {
            return Ok(false);
        }
    }

    // direction 2: v expressible over the x's
    let mut order_b = system.x_symbols.clone();
    order_b.push(y);
    order_b.extend_from_slice(&pres.u_symbols);
    let comps_b = zero_decompose_seeded(&sys, &ds, &Ranking::elimination(order_b), seed)?;
    let comp_b = select_component(&comps_b, &eta)?;
    let cert_b = certify_component(comp_b, &reference, &eta, seed)?;
    if !cert_b.passed() {
        return Err(Error::Certification(
            "field-membership component failed certification".into(),
        ));
    }
    Ok(block_is_linear_over(
        &comp_b.charset,
        y,
        &system.x_symbols,
    ))
}

/// True when the charset element leading in `symbol` exists, has leader
/// exactly the order-zero variable, degree 1, and involves only `symbol` and
/// the `allowed` symbols.
fn block_is_linear_over(charset: &AutoreducedSet, symbol: Symbol, allowed: &[Symbol]) -> bool {
    let mut found = false;
    for (e, view) in charset.elements().iter().zip(charset.views()) {
        if view.leader.symbol != symbol {
            continue;
        }
        if !view.leader.op.is_identity() || view.degree != 1 {
            return false;
        }
        let symbols = e.symbols();
        if !symbols
            .iter()
            .all(|s| *s == symbol || allowed.contains(s))
        {
            return false;
        }
        found = true;
    }
    found
}

/// Report for the order bound ord(v) ≤ minᵢ ord(Pᵢ/Qᵢ) and the supporting
/// leader containment Sld(Pᵢ/Qᵢ) ⊆ Θ(Sld(v)).
#[derive(Clone, Debug)]
pub struct OrderBoundReport {
    pub generator_order: u32,
    pub min_generator_order: u32,
    pub order_ok: bool,
    pub sld_generator: Vec<DerivativeVariable>,
    pub sld_ok: bool,
}

impl OrderBoundReport {
    pub fn passed(&self) -> bool {
        self.order_ok && self.sld_ok
    }
}

/// Supporting leaders of v: its leaders under a generating family of orderly
/// rankings (all derivation-index and variable-priority permutations).
pub fn supporting_leaders(
    v: &DiffRationalFunction,
    u_symbols: &[Symbol],
) -> Vec<DerivativeVariable> {
    let vars: Vec<DerivativeVariable> = v.variables().into_iter().collect();
    assert!(!vars.is_empty(), "constant has no supporting leaders");
    let m = v.num_derivations();
    let index_perms = permutations(m);
    let sym_perms = permutations(u_symbols.len());
    let mut out: Vec<DerivativeVariable> = Vec::new();
    for ip in &index_perms {
        for sp in &sym_perms {
            let best = vars
                .iter()
                .max_by(|a, b| {
                    a.order().cmp(&b.order()).then_with(|| {
                        let pa = sp
                            .iter()
                            .position(|&i| u_symbols[i] == a.symbol)
                            .unwrap_or(usize::MAX);
                        let pb = sp
                            .iter()
                            .position(|&i| u_symbols[i] == b.symbol)
                            .unwrap_or(usize::MAX);
                        // later position ranks higher, mirroring elimination
                        pa.cmp(&pb).then_with(|| {
                            let ea: Vec<u32> =
                                ip.iter().map(|&i| a.op.exponents()[i]).collect();
                            let eb: Vec<u32> =
                                ip.iter().map(|&i| b.op.exponents()[i]).collect();
                            ea.cmp(&eb)
                        })
                    })
                })
                .unwrap()
                .clone();
            if !out.contains(&best) {
                out.push(best);
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn heap(items: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(items, k - 1, out);
            if k % 2 == 0 {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(&mut items, n, &mut out);
    out
}

/// Order-bound check: the order of v does not exceed the minimum
/// generator order, and every supporting leader of each generator is a
/// derivative of a supporting leader of v.
pub fn check_order_bound(
    pres: &SubfieldPresentation,
    v: &DiffRationalFunction,
) -> OrderBoundReport {
    let generator_order = v.order();
    let min_generator_order = pres
        .generators
        .iter()
        .map(|g| g.order())
        .min()
        .unwrap_or(0);
    let sld_v = supporting_leaders(v, &pres.u_symbols);
    let mut sld_ok = true;
    for g in &pres.generators {
        for w in supporting_leaders(g, &pres.u_symbols) {
            if !sld_v.iter().any(|z| w.is_derivative_of(z)) {
                sld_ok = false;
            }
        }
    }
    OrderBoundReport {
        generator_order,
        min_generator_order,
        order_ok: generator_order <= min_generator_order,
        sld_generator: sld_v,
        sld_ok,
    }
}

/// Find (a, b, c, d) ∈ ℚ⁴ with ad − bc ≠ 0 and v₂ = (a·v₁ + b)/(c·v₁ + d),
/// by exact linear algebra on a·f₁g₂ + b·g₁g₂ − c·f₁f₂ − d·g₁f₂ = 0.
pub fn generators_equivalent(
    v1: &DiffRationalFunction,
    v2: &DiffRationalFunction,
) -> Option<(BigRational, BigRational, BigRational, BigRational)> {
    if v1.is_constant() || v2.is_constant() {
        return None;
    }
    let f1 = v1.numerator();
    let g1 = v1.denominator();
    let f2 = v2.numerator();
    let g2 = v2.denominator();
    let cols = [
        f1 * g2,          // a
        g1 * g2,          // b
        -&(f1 * f2),      // c
        -&(g1 * f2),      // d
    ];
    // collect all monomials
    let mut monos: BTreeSet<Monomial> = BTreeSet::new();
    for c in &cols {
        for (mono, _) in c.terms() {
            monos.insert(mono.clone());
        }
    }
    let mut matrix: Vec<Vec<BigRational>> = Vec::new();
    for mono in &monos {
        matrix.push(
            cols.iter()
                .map(|c| {
                    c.terms()
                        .find(|(m0, _)| *m0 == mono)
                        .map(|(_, coeff)| coeff.clone())
                        .unwrap_or_else(BigRational::zero)
                })
                .collect(),
        );
    }
    let basis = nullspace(matrix);
    let candidates: Vec<Vec<BigRational>> = match basis.len() {
        0 => return None,
        1 => basis,
        _ => {
            // generic combinations cover the rare higher-dimensional case
            let mut all = basis.clone();
            for i in 0..basis.len() {
                for j in (i + 1)..basis.len() {
                    all.push(
                        basis[i]
                            .iter()
                            .zip(&basis[j])
                            .map(|(a, b)| a + b)
                            .collect(),
                    );
                }
            }
            all
        }
    };
    for cand in candidates {
        let (a, b, c, d) = (&cand[0], &cand[1], &cand[2], &cand[3]);
        if !(a * d - b * c).is_zero() {
            return Some(normalize_flt(a, b, c, d));
        }
    }
    None
}

/// Scale the tuple to coprime integers with positive last nonzero entry.
fn normalize_flt(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    d: &BigRational,
) -> (BigRational, BigRational, BigRational, BigRational) {
    use num_bigint::BigInt;
    use num_integer::Integer;
    let mut den = BigInt::one();
    for x in [a, b, c, d] {
        den = den.lcm(x.denom());
    }
    let ints: Vec<BigInt> = [a, b, c, d]
        .iter()
        .map(|x| x.numer() * (&den / x.denom()))
        .collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = g.gcd(x);
    }
    if let Some(last) = ints.iter().rev().find(|x| !x.is_zero()) {
        if last.is_negative() {
            g = -g;
        }
    }
    let out: Vec<BigRational> = ints
        .iter()
        .map(|x| BigRational::from_integer(x / &g))
        .collect();
    (out[0].clone(), out[1].clone(), out[2].clone(), out[3].clone())
}

fn nullspace(mut mat: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    let cols = 4;
    let rows = mat.len();
    let mut pivot_cols = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let pv = mat[r][c].clone();
        for x in mat[r].iter_mut() {
            *x = &*x / &pv;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for cc in 0..cols {
                    let t = &mat[r][cc] * &f;
                    mat[i][cc] = &mat[i][cc] - &t;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::new();
    for &fc in &free_cols {
        let mut v = vec![BigRational::zero(); cols];
        v[fc] = BigRational::one();
        for (ri, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -mat[ri][fc].clone();
        }
        basis.push(v);
    }
    basis
}

/// Stairs of the induced charset of 𝕀_𝒢(u): the u-led leaders of the
/// certified component, grouped per u-variable; `n_free` is the number of
/// u-variables carrying no leader.
pub fn u_block_stairs(
    component: &DecompositionComponent,
    u_symbols: &[Symbol],
) -> (LeaderStairs, u32) {
    let u_leaders: Vec<DerivativeVariable> = component
        .charset
        .views()
        .iter()
        .map(|v| v.leader.clone())
        .filter(|l| u_symbols.contains(&l.symbol))
        .collect();
    let led: BTreeSet<Symbol> = u_leaders.iter().map(|l| l.symbol).collect();
    let n_free = (u_symbols.len() - led.len()) as u32;
    (LeaderStairs::from_leaders(&u_leaders), n_free)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::DerivativeOperator;
    use crate::poly::q;

    fn sym(s: &str) -> Symbol {
        Symbol::new(s)
    }

    fn pv(s: &str, exps: &[u32]) -> DiffPolynomial {
        DiffPolynomial::var(
            exps.len(),
            DerivativeVariable::new(sym(s), DerivativeOperator::new(exps.to_vec())),
        )
    }

    fn rf(p: DiffPolynomial) -> DiffRationalFunction {
        DiffRationalFunction::from_poly(p)
    }

    #[test]
    fn build_system_shapes() {
        // generators d1d2(u), d1(u)+d1d2^2(u): PS = {x1 - d1d2(u), ...}, DS = {1,1}
        let pres = SubfieldPresentation::new(
            vec![rf(pv("u", &[1, 1])), rf(&pv("u", &[1, 0]) + &pv("u", &[1, 2]))],
            vec![sym("u")],
        )
        .unwrap();
        let sys = build_system(&pres);
        assert_eq!(sys.ps.len(), 2);
        assert_eq!(sys.ds.len(), 2);
        assert_eq!(
            sys.ps[0],
            &DiffPolynomial::symbol(2, sys.x_symbols[0]) - &pv("u", &[1, 1])
        );
        assert!(sys.ds.iter().all(|d| d.is_constant()));

        // generators d1(u)/u, u+d1(u), d2(u): PS = {u x1 - d1(u), ...}, DS = {u,1,1}
        let pres = SubfieldPresentation::new(
            vec![
                DiffRationalFunction::new(pv("u", &[1, 0]), pv("u", &[0, 0])).unwrap(),
                rf(&pv("u", &[0, 0]) + &pv("u", &[1, 0])),
                rf(pv("u", &[0, 1])),
            ],
            vec![sym("u")],
        )
        .unwrap();
        let sys = build_system(&pres);
        assert_eq!(
            sys.ps[0],
            &(&DiffPolynomial::symbol(2, sys.x_symbols[0]) * &pv("u", &[0, 0]))
                - &pv("u", &[1, 0])
        );
        assert_eq!(sys.ds[0], pv("u", &[0, 0]));
    }

    #[test]
    fn constant_generators_rejected() {
        assert!(matches!(
            SubfieldPresentation::new(
                vec![DiffRationalFunction::constant(2, q(3))],
                vec![sym("u")]
            ),
            Err(Error::ConstantGenerator)
        ));
    }

    #[test]
    fn identity_presentation_has_generator() {
        let pres =
            SubfieldPresentation::new(vec![rf(pv("u", &[0, 0]))], vec![sym("u")]).unwrap();
        let out = luroth_decide(&pres, DEFAULT_SEED).unwrap();
        assert_eq!(out.decision, LurothDecision::HasGenerator);
        let v = out.generator.unwrap();
        // the generator is u up to a fractional linear map
        assert!(generators_equivalent(&v, &rf(pv("u", &[0, 0]))).is_some());
        assert!(check_order_bound(&pres, &v).passed());
    }

    /// (a v1 + b)/(c v1 + d) must equal v2 exactly.
    fn assert_flt_maps(
        t: &(BigRational, BigRational, BigRational, BigRational),
        v1: &DiffRationalFunction,
        v2: &DiffRationalFunction,
    ) {
        let m = v1.num_derivations();
        let (a, b, c, d) = t;
        let num = &(&DiffRationalFunction::constant(m, a.clone()) * v1)
            + &DiffRationalFunction::constant(m, b.clone());
        let den = &(&DiffRationalFunction::constant(m, c.clone()) * v1)
            + &DiffRationalFunction::constant(m, d.clone());
        assert_eq!(&(&num / &den), v2);
    }

    #[test]
    fn equivalence_examples() {
        let du = rf(pv("u", &[1, 0]));
        let neg = rf(pv("u", &[1, 0]).scale(&q(-1)));
        // v2 = -v1, proportional to (-1,0,0,1)
        let t = generators_equivalent(&du, &neg).unwrap();
        assert_flt_maps(&t, &du, &neg);
        assert_eq!(t, (q(-1), q(0), q(0), q(1)));
        // v1 = u, v2 = (2u+3)/(u-1): proportional to (2,3,1,-1)
        let u = pv("u", &[0, 0]);
        let v2 = DiffRationalFunction::new(
            &u.scale(&q(2)) + &DiffPolynomial::constant(2, q(3)),
            &u - &DiffPolynomial::one(2),
        )
        .unwrap();
        let t = generators_equivalent(&rf(u.clone()), &v2).unwrap();
        assert_flt_maps(&t, &rf(u.clone()), &v2);
        let (a, b, c, d) = &t;
        assert!((a * q(3) - b * q(2)).is_zero() && (c * q(-1) - d).is_zero());
        // degree obstruction
        assert_eq!(generators_equivalent(&rf(u.clone()), &rf(&u * &u)), None);
    }

    #[test]
    fn supporting_leader_family() {
        // Sld(d1(u) + d1d2^2(u)) = {d1d2^2(u)} for m=2 under both index orders
        let v = rf(&pv("u", &[1, 0]) + &pv("u", &[1, 2]));
        let sld = supporting_leaders(&v, &[sym("u")]);
        assert_eq!(sld, vec![DerivativeVariable::new(
            sym("u"),
            DerivativeOperator::new(vec![1, 2])
        )]);
        // Sld(d1(u)d2(u)) = {d1(u), d2(u)}: depends on the index permutation
        let w = rf(&pv("u", &[1, 0]) * &pv("u", &[0, 1]));
        let sld = supporting_leaders(&w, &[sym("u")]);
        assert_eq!(sld.len(), 2);
    }
}
