//! Properness of partial differential rational parametric equations and
//! proper re-parametrization of unirational differential curves.

use crate::decompose::{
    certify_component, select_component, zero_decompose_seeded, DecompositionComponent,
};
use crate::error::{Error, Result};
use crate::luroth::{
    build_system, fresh_symbol, fresh_symbols, luroth_decide, LurothDecision,
    ParametrizationSystem, SubfieldPresentation,
};
use crate::poly::DiffPolynomial;
use crate::ranking::Ranking;
use crate::ratfunc::{Bindings, DiffRationalFunction};
use crate::reduction::{ritt_reduce, AutoreducedSet};
use crate::symbol::Symbol;

/// A set of parametric equations xᵢ = Pᵢ(u₁)/Qᵢ(u₁) in one differential
/// parameter; each component is reduced-form and at least one is nonconstant.
#[derive(Clone, Debug)]
pub struct Pdrpe {
    components: Vec<DiffRationalFunction>,
    parameter: Symbol,
    m: usize,
}

impl Pdrpe {
    pub fn new(components: Vec<DiffRationalFunction>, parameter: Symbol) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::EmptyInput);
        }
        if components.iter().all(|c| c.is_constant()) {
            return Err(Error::ConstantGenerator);
        }
        let m = components[0].num_derivations();
        for c in &components {
            for s in c.numerator().symbols().union(&c.denominator().symbols()) {
                if *s != parameter {
                    return Err(Error::UnknownSymbol(*s));
                }
            }
        }
        Ok(Pdrpe {
            components,
            parameter,
            m,
        })
    }

    pub fn components(&self) -> &[DiffRationalFunction] {
        &self.components
    }

    pub fn parameter(&self) -> Symbol {
        self.parameter
    }

    pub fn num_derivations(&self) -> usize {
        self.m
    }
}

/// The parametrization system of a PDRPE with a caller-supplied x-block.
fn pdrpe_system(p: &Pdrpe, x_symbols: Vec<Symbol>) -> ParametrizationSystem {
    let m = p.m;
    let mut ps = Vec::new();
    let mut ds = Vec::new();
    let mut eta = Bindings::new();
    for (j, g) in p.components.iter().enumerate() {
        let x = DiffPolynomial::symbol(m, x_symbols[j]);
        ps.push(&(&x * g.denominator()) - g.numerator());
        ds.push(g.denominator().clone());
        eta.insert(x_symbols[j], g.clone());
    }
    ParametrizationSystem {
        ps,
        ds,
        x_symbols,
        eta,
    }
}

/// Properness report: the u₁-block of the certified characteristic set under
/// x₁ ≺ … ≺ xₙ ≺ u₁, with the inversion map when the equations are proper.
#[derive(Clone, Debug)]
pub struct PropernessReport {
    pub proper: bool,
    /// u₁ = inversion(x₁,…,xₙ) when proper
    pub inversion: Option<DiffRationalFunction>,
    /// number of elements in the u₁-block
    pub l1: usize,
    pub u_block: Vec<DiffPolynomial>,
    pub component: DecompositionComponent,
}

/// The certified component of 𝕍(S/DS) at the generic point of a PDRPE under
/// x ≺ u₁, plus the ranking used.
fn certified_pdrpe_component(
    p: &Pdrpe,
    system: &ParametrizationSystem,
    seed: u64,
) -> Result<DecompositionComponent> {
    let mut order = system.x_symbols.clone();
    order.push(p.parameter);
    let r = Ranking::elimination(order);
    let comps = zero_decompose_seeded(&system.ps, &system.ds, &r, seed)?;
    let selected = select_component(&comps, &system.eta)?.clone();
    let mut ref_order = vec![p.parameter];
    ref_order.extend_from_slice(&system.x_symbols);
    let reference = AutoreducedSet::new(system.ps.clone(), Ranking::elimination(ref_order))?;
    let cert = certify_component(&selected, &reference, &system.eta, seed)?;
    if !cert.passed() {
        return Err(Error::Certification(
            "parametrization component failed certification".into(),
        ));
    }
    Ok(selected)
}

/// Li's properness criterion: the u₁-block of the characteristic set is a
/// single polynomial I₁(x)u₁ − U₁(x) linear in u₁ itself.
pub fn is_proper(p: &Pdrpe, seed: u64) -> Result<PropernessReport> {
    let xs = fresh_symbols("x", p.components.len(), &[p.parameter]);
    let system = pdrpe_system(p, xs);
    let component = certified_pdrpe_component(p, &system, seed)?;
    let u_block: Vec<DiffPolynomial> = component
        .charset
        .elements()
        .iter()
        .zip(component.charset.views())
        .filter(|(_, v)| v.leader.symbol == p.parameter)
        .map(|(e, _)| e.clone())
        .collect();
    let l1 = u_block.len();
    let mut proper = false;
    let mut inversion = None;
    if l1 == 1 {
        let view = component
            .charset
            .views()
            .iter()
            .find(|v| v.leader.symbol == p.parameter)
            .unwrap();
        if view.leader.op.is_identity() && view.degree == 1 {
            proper = true;
            let u_var = view.leader.clone();
            let c1 = u_block[0].coeff_of_power(&u_var, 1);
            let c0 = u_block[0].coeff_of_power(&u_var, 0);
            inversion = Some(DiffRationalFunction::new(-&c0, c1)?);
        }
    }
    Ok(PropernessReport {
        proper,
        inversion,
        l1,
        u_block,
        component,
    })
}

#[derive(Clone, Debug)]
pub enum ReparamOutcome {
    AlreadyProper {
        inversion: DiffRationalFunction,
    },
    Reparametrized {
        /// the new parameter v = f(u₁)/g(u₁)
        parameter: DiffRationalFunction,
        /// proper equations xᵢ = Fᵢ(v)/Gᵢ(v)
        equations: Pdrpe,
    },
    /// l₁ > 1: no proper re-parametrization exists
    Impossible {
        l1: usize,
    },
}

/// Decide whether an improper PDRPE admits a proper re-parametrization and
/// construct one. Constant components are rejected.
pub fn reparametrize(p: &Pdrpe, seed: u64) -> Result<ReparamOutcome> {
    if p.components.iter().any(|c| c.is_constant()) {
        return Err(Error::ConstantGenerator);
    }
    let report = is_proper(p, seed)?;
    if report.proper {
        return Ok(ReparamOutcome::AlreadyProper {
            inversion: report.inversion.unwrap(),
        });
    }
    if report.l1 != 1 {
        return Ok(ReparamOutcome::Impossible { l1: report.l1 });
    }

    // A Lüroth generator exists exactly when l1 = 1; compute it.
    let pres = SubfieldPresentation::new(p.components.clone(), vec![p.parameter])?;
    let outcome = luroth_decide(&pres, seed)?;
    if outcome.decision != LurothDecision::HasGenerator {
        return Err(Error::Certification(
            "l1 = 1 but the Lüroth pipeline found no generator".into(),
        ));
    }
    let v = outcome.generator.unwrap();

    // C := {Q₁x₁−P₁, …, Qₙxₙ−Pₙ, g·y−f}; decompose under y ≺ x ≺ u₁.
    let system = build_system(&pres);
    let mut avoid = vec![p.parameter];
    avoid.extend_from_slice(&system.x_symbols);
    let y = fresh_symbol("y", &avoid);
    let y_poly = DiffPolynomial::symbol(p.m, y);
    let mut sys = system.ps.clone();
    sys.push(&(v.denominator() * &y_poly) - v.numerator());
    let mut ds = system.ds.clone();
    ds.push(v.denominator().clone());
    let mut eta = system.eta.clone();
    eta.insert(y, v.clone());

    let mut order = vec![y];
    order.extend_from_slice(&system.x_symbols);
    order.push(p.parameter);
    let comps = zero_decompose_seeded(&sys, &ds, &Ranking::elimination(order), seed)?;
    let selected = select_component(&comps, &eta)?;
    let mut ref_order = vec![p.parameter, y];
    ref_order.extend_from_slice(&system.x_symbols);
    let reference = AutoreducedSet::new(sys.clone(), Ranking::elimination(ref_order))?;
    let cert = certify_component(selected, &reference, &eta, seed)?;
    if !cert.passed() {
        return Err(Error::Certification(
            "re-parametrization component failed certification".into(),
        ));
    }

    // Read off xᵢ = Fᵢ(y)/Gᵢ(y) and rename y to the output parameter.
    let out_param = fresh_symbol("v", &avoid);
    let mut equations = Vec::with_capacity(system.x_symbols.len());
    for xj in &system.x_symbols {
        let mut found = None;
        for (e, view) in selected.charset.elements().iter().zip(selected.charset.views()) {
            if view.leader.symbol != *xj {
                continue;
            }
            if !view.leader.op.is_identity()
                || view.degree != 1
                || !e.symbols().iter().all(|s| *s == *xj || *s == y)
            {
                return Err(Error::Certification(format!(
                    "charset block for {xj} is not linear over the new parameter"
                )));
            }
            let c1 = e.coeff_of_power(&view.leader, 1);
            let c0 = e.coeff_of_power(&view.leader, 0);
            found = Some(DiffRationalFunction::new(-&c0, c1)?.rename_symbol(y, out_param));
            break;
        }
        match found {
            Some(f) => equations.push(f),
            None => {
                return Err(Error::Certification(format!(
                    "no charset element expresses {xj} over the new parameter"
                )))
            }
        }
    }
    Ok(ReparamOutcome::Reparametrized {
        parameter: v,
        equations: Pdrpe::new(equations, out_param)?,
    })
}

/// The characteristic set of the implicit ideal 𝕀(P) ∩ ℚ{x₁,…,xₙ}: the
/// x-only elements of the certified charset under x ≺ parameter.
fn implicit_charset(
    p: &Pdrpe,
    x_symbols: &[Symbol],
    seed: u64,
) -> Result<Vec<DiffPolynomial>> {
    let system = pdrpe_system(p, x_symbols.to_vec());
    let component = certified_pdrpe_component(p, &system, seed)?;
    Ok(component
        .charset
        .elements()
        .iter()
        .filter(|e| e.symbols().iter().all(|s| x_symbols.contains(s)))
        .cloned()
        .collect())
}

/// Do two parametrizations define the same implicit variety? Decided by
/// mutual zero-remainder reduction between the two certified implicit
/// characteristic sets.
pub fn same_implicit_variety(p: &Pdrpe, q: &Pdrpe, seed: u64) -> Result<bool> {
    assert_eq!(
        p.components.len(),
        q.components.len(),
        "parametrizations of different ambient dimension"
    );
    let xs = fresh_symbols("x", p.components.len(), &[p.parameter, q.parameter]);
    let cp = implicit_charset(p, &xs, seed)?;
    let cq = implicit_charset(q, &xs, seed)?;
    match (cp.is_empty(), cq.is_empty()) {
        (true, true) => return Ok(true),
        (true, false) | (false, true) => return Ok(false),
        _ => {}
    }
    let rx = Ranking::elimination(xs);
    let set_p = AutoreducedSet::new(cp.clone(), rx.clone())?;
    let set_q = AutoreducedSet::new(cq.clone(), rx)?;
    let p_in_q = cp
        .iter()
        .all(|f| ritt_reduce(f, &set_q).remainder.is_zero());
    let q_in_p = cq
        .iter()
        .all(|f| ritt_reduce(f, &set_p).remainder.is_zero());
    Ok(p_in_q && q_in_p)
}
