//! Wu–Ritt zero decomposition (strong form) into coherent, Δ-irreducible
//! autoreduced sets, with generic-point component selection and
//! certification.

use std::collections::BTreeSet;

use crate::algfactor::multivariate::factor;
use crate::algfactor::tower::is_delta_irreducible_seeded;
use crate::error::{Error, Result};
use crate::poly::DiffPolynomial;
use crate::ranking::Ranking;
use crate::ratfunc::{substitute, Bindings};
use crate::reduction::{basic_set, delta_pairs, is_coherent, ritt_reduce, ritt_remainder, AutoreducedSet};

/// One component of a decomposition: a coherent Δ-irreducible charset with
/// the inequations that cut out its quasi-variety (initials and separants of
/// the charset plus the inherited DS).
#[derive(Clone, Debug)]
pub struct DecompositionComponent {
    pub charset: AutoreducedSet,
    pub inequations: Vec<DiffPolynomial>,
}

const DEFAULT_SEED: u64 = 0x5EED_0001;

/// Wu–Ritt zero decomposition of 𝕍(Σ/D) under the given ranking:
/// the union of 𝕍(sat(𝒜ᵢ)/D) over the returned components equals 𝕍(Σ/D);
/// an empty list means the quasi-variety is empty.
pub fn zero_decompose(
    sigma: &[DiffPolynomial],
    ineqs: &[DiffPolynomial],
    ranking: &Ranking,
) -> Result<Vec<DecompositionComponent>> {
    zero_decompose_seeded(sigma, ineqs, ranking, DEFAULT_SEED)
}

pub fn zero_decompose_seeded(
    sigma: &[DiffPolynomial],
    ineqs: &[DiffPolynomial],
    ranking: &Ranking,
    seed: u64,
) -> Result<Vec<DecompositionComponent>> {
    if sigma.is_empty() {
        return Err(Error::EmptyInput);
    }
    for p in sigma.iter().chain(ineqs) {
        if p.is_zero() {
            return Err(Error::EmptyInput);
        }
    }
    let ds: Vec<DiffPolynomial> = ineqs
        .iter()
        .filter(|d| !d.is_constant())
        .map(|d| d.normalized())
        .collect();

    let mut components: Vec<DecompositionComponent> = Vec::new();
    let mut stack: Vec<Vec<DiffPolynomial>> = vec![normalize_system(sigma)];
    let mut seen: BTreeSet<Vec<DiffPolynomial>> = BTreeSet::new();

    while let Some(system) = stack.pop() {
        if !seen.insert(system.clone()) {
            continue;
        }
        // A nonzero constant means the branch carries no zeros.
        if system.iter().any(|p| p.is_constant() && !p.is_zero()) {
            continue;
        }
        if system.is_empty() {
            continue;
        }
        let basic = match basic_set(&system, ranking) {
            Ok(b) => b,
            Err(Error::InconsistentSystem) => continue,
            Err(e) => return Err(e),
        };

        // Split on reducible or non-squarefree basic-set elements: replace the
        // element by each of its irreducible factors on its own branch.
        let mut split = false;
        for (element, view) in basic.elements().iter().zip(basic.views()) {
            let Some(factors) = element_split_factors(element, view) else {
                continue;
            };
            for g in &factors {
                let mut branch: Vec<DiffPolynomial> =
                    system.iter().filter(|p| *p != element).cloned().collect();
                if !branch.contains(g) {
                    branch.push(g.clone());
                }
                branch.sort();
                stack.push(branch);
            }
            split = true;
            break;
        }
        if split {
            continue;
        }

        // Reduce the rest of the system and the Δ-pairs; nonzero remainders
        // vanish on all of 𝕍(system), so they extend the same branch.
        let mut remainders: Vec<DiffPolynomial> = Vec::new();
        let mut inconsistent = false;
        let mut to_reduce: Vec<DiffPolynomial> = system
            .iter()
            .filter(|p| !basic.elements().contains(p))
            .cloned()
            .collect();
        to_reduce.extend(delta_pairs(&basic));
        for f in &to_reduce {
            let rem = ritt_remainder(f, &basic);
            if rem.is_zero() {
                continue;
            }
            if rem.is_constant() {
                inconsistent = true;
                break;
            }
            let n = rem.normalized();
            if !system.contains(&n) && !remainders.contains(&n) {
                remainders.push(n);
            }
        }
        if inconsistent {
            continue;
        }
        if !remainders.is_empty() {
            let mut next = system.clone();
            next.extend(remainders);
            next.sort();
            next.dedup();
            stack.push(next);
            continue;
        }

        // The basic set is a candidate characteristic set here: coherent by
        // the zero Δ-pair remainders, ℚ-irreducible by the factor split.
        // Certify Δ-irreducibility over the tower; a failed tower check
        // splits on the discovered factors.
        match is_delta_irreducible_seeded(&basic, seed) {
            Ok(true) => {}
            Ok(false) => {
                if let Some(branches) = tower_split_branches(&system, &basic) {
                    stack.extend(branches);
                    continue;
                } else {
                    return Err(Error::UnsupportedTower(
                        "component failed tower irreducibility without a usable split".into(),
                    ));
                }
            }
            Err(e) => return Err(e),
        }

        // Branches where an initial or separant vanishes.
        for h in basic.initials_and_separants() {
            if system.contains(&h) {
                continue;
            }
            let mut branch = system.clone();
            branch.push(h);
            branch.sort();
            stack.push(branch);
        }

        // Drop the component when a DS element lies in sat(charset).
        let ds_alive = ds
            .iter()
            .all(|d| !ritt_remainder(d, &basic).is_zero());
        if !ds_alive {
            continue;
        }
        let mut inequations = basic.initials_and_separants();
        for d in &ds {
            if !inequations.contains(d) {
                inequations.push(d.clone());
            }
        }
        components.push(DecompositionComponent {
            charset: basic,
            inequations,
        });
    }

    // Canonical order and exact dedup.
    components.sort_by(|a, b| a.charset.elements().cmp(b.charset.elements()));
    components.dedup_by(|a, b| a.charset.elements() == b.charset.elements());
    Ok(components)
}

/// The distinct irreducible factors of a basic-set element when it is
/// reducible or non-squarefree, `None` when it is already irreducible.
/// Elements linear in their leader factor as (leader content)·(irreducible
/// primitive part), so only the content needs the full factorizer.
fn element_split_factors(
    element: &DiffPolynomial,
    view: &crate::ranking::RankedPolynomialView,
) -> Option<Vec<DiffPolynomial>> {
    use crate::algfactor::gcd::{content_in, exact_div};
    if view.degree == 1 {
        let content = content_in(element, &view.leader);
        if content.is_constant() {
            return None;
        }
        let primitive = exact_div(element, &content).unwrap().normalized();
        let mut out = vec![primitive];
        for (g, _) in factor(&content).factors {
            if !out.contains(&g) {
                out.push(g);
            }
        }
        return Some(out);
    }
    let fac = factor(element);
    if fac.factors.len() > 1 || fac.factors.iter().any(|(_, e)| *e > 1) {
        Some(fac.factors.into_iter().map(|(g, _)| g).collect())
    } else {
        None
    }
}

fn normalize_system(polys: &[DiffPolynomial]) -> Vec<DiffPolynomial> {
    let mut out: Vec<DiffPolynomial> = polys
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.normalized())
        .collect();
    out.sort();
    out.dedup();
    out
}

/// When an element of the basic set factors over the tower of its
/// predecessors, branch on the numerator factors of the substituted element.
/// Returns `None` when no element yields a usable split.
fn tower_split_branches(
    system: &[DiffPolynomial],
    basic: &AutoreducedSet,
) -> Option<Vec<Vec<DiffPolynomial>>> {
    // Rebuild the linear-tower substitution the irreducibility check uses,
    // and split the first element whose substituted numerator factors.
    let numerators = crate::algfactor::tower::substituted_numerators(basic).ok()?;
    for (k, numerator) in numerators.iter().enumerate() {
        let leader = &basic.views()[k].leader;
        let fac = factor(numerator);
        let leader_factor_count = fac
            .factors
            .iter()
            .filter(|(g, _)| g.contains_var(leader))
            .count();
        let multiple = leader_factor_count > 1
            || fac
                .factors
                .iter()
                .any(|(g, e)| g.contains_var(leader) && *e > 1);
        if !multiple {
            continue;
        }
        // The substituted numerator is an ideal combination of the element
        // and its predecessors, so it vanishes on all of 𝕍(system); branch
        // on every distinct irreducible factor to keep the union exact.
        let mut branches = Vec::new();
        for (g, _) in &fac.factors {
            let mut branch = system.to_vec();
            if !branch.contains(g) {
                branch.push(g.clone());
            }
            branch.sort();
            branches.push(branch);
        }
        return Some(branches);
    }
    None
}

/// The unique component whose charset vanishes at the point η while its
/// initials and separants do not.
pub fn select_component<'a>(
    components: &'a [DecompositionComponent],
    eta: &Bindings,
) -> Result<&'a DecompositionComponent> {
    let mut hits = Vec::new();
    for comp in components {
        if component_vanishes_at(comp, eta)? {
            hits.push(comp);
        }
    }
    match hits.len() {
        0 => Err(Error::Certification(
            "no component vanishes at the generic point".into(),
        )),
        1 => Ok(hits[0]),
        n => Err(Error::Certification(format!(
            "{n} components vanish at the generic point; expected exactly one"
        ))),
    }
}

fn component_vanishes_at(comp: &DecompositionComponent, eta: &Bindings) -> Result<bool> {
    for f in comp.charset.elements() {
        if !substitute(f, eta).is_zero() {
            return Ok(false);
        }
    }
    for h in comp.charset.initials_and_separants() {
        if substitute(&h, eta).is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A certification report for a selected component; `passed` requires all
/// four checks.
#[derive(Clone, Debug)]
pub struct ComponentCertificate {
    pub charset_in_reference_ideal: bool,
    pub reference_in_saturation: bool,
    pub multipliers_nonzero_at_point: bool,
    pub coherent: bool,
    pub delta_irreducible: bool,
    pub failing_witness: Option<DiffPolynomial>,
}

impl ComponentCertificate {
    pub fn passed(&self) -> bool {
        self.charset_in_reference_ideal
            && self.reference_in_saturation
            && self.multipliers_nonzero_at_point
            && self.coherent
            && self.delta_irreducible
    }
}

/// Certify a selected component against the defining system:
/// (a) charset ⊆ sat(reference) via zero remainders under the reference
/// ranking, (b) reference ⊆ sat(charset) via zero remainders under the
/// component ranking, (c) initials/separants nonzero at η, (d) coherence and
/// Δ-irreducibility.
pub fn certify_component(
    comp: &DecompositionComponent,
    reference: &AutoreducedSet,
    eta: &Bindings,
    seed: u64,
) -> Result<ComponentCertificate> {
    let mut witness = None;

    let mut charset_in_reference = true;
    for f in comp.charset.elements() {
        if !ritt_reduce(f, reference).remainder.is_zero() {
            charset_in_reference = false;
            witness.get_or_insert_with(|| f.clone());
        }
    }

    let mut reference_in_sat = true;
    for f in reference.elements() {
        if !ritt_reduce(f, &comp.charset).remainder.is_zero() {
            reference_in_sat = false;
            witness.get_or_insert_with(|| f.clone());
        }
    }

    let mut multipliers_ok = true;
    for h in comp.charset.initials_and_separants() {
        if substitute(&h, eta).is_zero() {
            multipliers_ok = false;
            witness.get_or_insert_with(|| h.clone());
        }
    }

    let coherent = is_coherent(&comp.charset);
    let delta_irreducible = is_delta_irreducible_seeded(&comp.charset, seed)?;

    Ok(ComponentCertificate {
        charset_in_reference_ideal: charset_in_reference,
        reference_in_saturation: reference_in_sat,
        multipliers_nonzero_at_point: multipliers_ok,
        coherent,
        delta_irreducible,
        failing_witness: witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::{DerivativeOperator, DerivativeVariable};
    use crate::ratfunc::DiffRationalFunction;
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

    fn r_x1_x2_u() -> Ranking {
        Ranking::elimination(vec![sym("x1"), sym("x2"), sym("u")])
    }

    #[test]
    fn kolchin_counterexample_decomposition() {
        // PS = {x1 - d1(u), x2 - d2(u)}: single component
        // {d1(x2)-d2(x1), d1(u)-x1, d2(u)-x2}
        let ps = vec![
            &pv("x1", &[0, 0]) - &pv("u", &[1, 0]),
            &pv("x2", &[0, 0]) - &pv("u", &[0, 1]),
        ];
        let comps = zero_decompose(&ps, &[], &r_x1_x2_u()).unwrap();
        assert_eq!(comps.len(), 1);
        let charset = comps[0].charset.elements();
        assert_eq!(charset.len(), 3);
        let expect = [
            (&pv("x2", &[1, 0]) - &pv("x1", &[0, 1])).normalized(),
            (&pv("u", &[1, 0]) - &pv("x1", &[0, 0])).normalized(),
            (&pv("u", &[0, 1]) - &pv("x2", &[0, 0])).normalized(),
        ];
        for e in &expect {
            assert!(charset.contains(e), "missing {e}");
        }
    }

    #[test]
    fn tower_reducible_systems_split() {
        // Σ = {x2^2 - x1, u^2 - x1}: over the tower x1 = x2^2 the second
        // element factors as (u - x2)(u + x2), so the decomposition splits.
        let x1 = pv("x1", &[0, 0]);
        let x2 = pv("x2", &[0, 0]);
        let u = pv("u", &[0, 0]);
        let sigma = vec![&(&x2 * &x2) - &x1, &(&u * &u) - &x1];
        let comps = zero_decompose(&sigma, &[], &r_x1_x2_u()).unwrap();
        assert_eq!(comps.len(), 3);
        for c in &comps {
            assert_eq!(
                crate::algfactor::tower::is_delta_irreducible(&c.charset),
                Ok(true)
            );
            for f in &sigma {
                assert!(ritt_reduce(f, &c.charset).remainder.is_zero());
            }
        }
        let charsets: Vec<_> = comps.iter().map(|c| c.charset.elements().to_vec()).collect();
        let a = (&u - &x2).normalized();
        let b = (&u + &x2).normalized();
        assert!(charsets.iter().any(|cs| cs.contains(&a)));
        assert!(charsets.iter().any(|cs| cs.contains(&b)));
        assert!(charsets
            .iter()
            .any(|cs| cs.contains(&u.normalized()) && cs.contains(&x1.normalized())));
    }

    #[test]
    fn contradiction_with_inequation_is_empty() {
        let u = pv("u", &[0, 0]);
        let comps = zero_decompose(&[u.clone()], &[u], &r_x1_x2_u()).unwrap();
        assert!(comps.is_empty());
    }

    #[test]
    fn certify_accepts_reference_against_itself_and_flags_bad_components() {
        // PS certified against PS passes trivially
        let u = pv("u", &[0, 0]);
        let ps = vec![
            &pv("x1", &[0, 0]) - &pv("u", &[1, 1]),
            &(&pv("x2", &[0, 0]) - &pv("u", &[1, 0])) - &pv("u", &[1, 2]),
        ];
        let r1 = Ranking::elimination(vec![sym("u"), sym("x1"), sym("x2")]);
        let reference = AutoreducedSet::new(ps.clone(), r1).unwrap();
        let mut eta = Bindings::new();
        eta.insert(sym("x1"), DiffRationalFunction::from_poly(pv("u", &[1, 1])));
        eta.insert(
            sym("x2"),
            DiffRationalFunction::from_poly(&pv("u", &[1, 0]) + &pv("u", &[1, 2])),
        );
        let comp = DecompositionComponent {
            charset: reference.clone(),
            inequations: vec![],
        };
        let cert = certify_component(&comp, &reference, &eta, 3).unwrap();
        assert!(cert.passed());

        // a component whose initial vanishes at η fails check (c):
        // (x1 - d1d2(u))·x2 - u has leader x2 under u<x1<x2 and its initial
        // x1 - d1d2(u) vanishes at η
        let bad = &(&(&pv("x1", &[0, 0]) - &pv("u", &[1, 1])) * &pv("x2", &[0, 0])) - &u;
        let r = Ranking::elimination(vec![sym("u"), sym("x1"), sym("x2")]);
        let charset = AutoreducedSet::new(vec![bad], r).unwrap();
        let comp_bad = DecompositionComponent {
            charset,
            inequations: vec![],
        };
        let cert = certify_component(&comp_bad, &reference, &eta, 3).unwrap();
        assert!(!cert.multipliers_nonzero_at_point);
        assert!(!cert.passed());
        assert!(cert.failing_witness.is_some());
    }

    #[test]
    fn select_unique_component() {
        // V(PS) for Example-5.5-style system; η = (u^2, d1(u)d2(u), u)
        let u = pv("u", &[0, 0]);
        let ps = vec![
            &pv("x1", &[0, 0]) - &(&u * &u),
            &pv("x2", &[0, 0]) - &(&pv("u", &[1, 0]) * &pv("u", &[0, 1])),
        ];
        let comps = zero_decompose(&ps, &[], &r_x1_x2_u()).unwrap();
        assert_eq!(comps.len(), 2);
        let mut eta = Bindings::new();
        eta.insert(sym("x1"), DiffRationalFunction::from_poly(&u * &u));
        eta.insert(
            sym("x2"),
            DiffRationalFunction::from_poly(&pv("u", &[1, 0]) * &pv("u", &[0, 1])),
        );
        let sel = select_component(&comps, &eta).unwrap();
        // the selected charset has two elements: 4x1x2 - d1(x1)d2(x1), u^2 - x1
        assert_eq!(sel.charset.len(), 2);
        let expect =
            (&(&pv("x1", &[0, 0]) * &pv("x2", &[0, 0])).scale(&crate::poly::q(4))
                - &(&pv("x1", &[1, 0]) * &pv("x1", &[0, 1])))
                .normalized();
        assert!(sel.charset.elements().contains(&expect));
    }
}
