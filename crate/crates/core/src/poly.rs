//! Sparse differential polynomials over ℚ with exact big-rational coefficients.
//!
//! A `DiffPolynomial` is a finite map from monomials in derivative variables
//! θ(y) to nonzero rational coefficients. The base field is ℚ with every
//! derivation acting as zero on constants.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::operator::{DerivativeOperator, DerivativeVariable};
use crate::symbol::Symbol;

/// A power product of derivative variables. Variables are stored sorted in
/// descending canonical order with strictly positive exponents; the empty
/// product is the constant monomial.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    vars: Vec<(DerivativeVariable, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { vars: Vec::new() }
    }

    pub fn var(v: DerivativeVariable) -> Self {
        Monomial { vars: vec![(v, 1)] }
    }

    pub fn from_powers(mut powers: Vec<(DerivativeVariable, u32)>) -> Self {
        powers.retain(|(_, e)| *e > 0);
        powers.sort_by(|a, b| b.0.cmp(&a.0));
        let mut vars: Vec<(DerivativeVariable, u32)> = Vec::with_capacity(powers.len());
        for (v, e) in powers {
            if let Some(last) = vars.last_mut() {
                if last.0 == v {
                    last.1 += e;
                    continue;
                }
            }
            vars.push((v, e));
        }
        Monomial { vars }
    }

    pub fn is_one(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.vars.iter().map(|(_, e)| e).sum()
    }

    pub fn powers(&self) -> &[(DerivativeVariable, u32)] {
        &self.vars
    }

    pub fn degree_in(&self, v: &DerivativeVariable) -> u32 {
        self.vars
            .iter()
            .find(|(w, _)| w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut powers = self.vars.clone();
        powers.extend(other.vars.iter().cloned());
        Monomial::from_powers(powers)
    }

    /// Remove `v^k` from the monomial; `k` must not exceed the stored power.
    pub fn without_power(&self, v: &DerivativeVariable, k: u32) -> Monomial {
        let mut vars = self.vars.clone();
        for entry in vars.iter_mut() {
            if &entry.0 == v {
                assert!(entry.1 >= k);
                entry.1 -= k;
            }
        }
        vars.retain(|(_, e)| *e > 0);
        Monomial { vars }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.vars
            .iter()
            .all(|(v, e)| other.degree_in(v) >= *e)
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let mut vars = self.vars.clone();
        for (v, e) in &other.vars {
            for entry in vars.iter_mut() {
                if &entry.0 == v {
                    entry.1 -= e;
                }
            }
        }
        vars.retain(|(_, e)| *e > 0);
        Some(Monomial { vars })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded-lexicographic order with respect to the canonical variable order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| {
                // Variables sorted descending; compare exponent sequences.
                let mut a = self.vars.iter();
                let mut b = other.vars.iter();
                loop {
                    match (a.next(), b.next()) {
                        (None, None) => return Ordering::Equal,
                        (None, Some(_)) => return Ordering::Less,
                        (Some(_), None) => return Ordering::Greater,
                        (Some((va, ea)), Some((vb, eb))) => {
                            match va.cmp(vb) {
                                // Bigger leading variable wins.
                                Ordering::Greater => return Ordering::Greater,
                                Ordering::Less => return Ordering::Less,
                                Ordering::Equal => match ea.cmp(eb) {
                                    Ordering::Equal => continue,
                                    // Same variable, higher exponent wins; the
                                    // remaining degree moves to smaller vars.
                                    ord => return ord,
                                },
                            }
                        }
                    }
                }
            })
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.vars {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A differential polynomial over ℚ in m commuting derivations.
#[derive(Clone, PartialEq, Eq)]
pub struct DiffPolynomial {
    m: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn qr(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl DiffPolynomial {
    pub fn zero(m: usize) -> Self {
        DiffPolynomial {
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(m: usize, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        DiffPolynomial { m, terms }
    }

    pub fn one(m: usize) -> Self {
        Self::constant(m, BigRational::one())
    }

    pub fn var(m: usize, v: DerivativeVariable) -> Self {
        assert_eq!(v.op.num_derivations(), m, "mismatched derivation count");
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(v), BigRational::one());
        DiffPolynomial { m, terms }
    }

    /// Base symbol as a polynomial, e.g. `u` itself.
    pub fn symbol(m: usize, s: Symbol) -> Self {
        Self::var(m, DerivativeVariable::base(s, m))
    }

    pub fn from_terms<I>(m: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = Self::zero(m);
        for (mono, c) in terms {
            p.add_term(mono, c);
        }
        p
    }

    pub fn num_derivations(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if self.terms.is_empty() {
            return Some(BigRational::zero());
        }
        if self.is_constant() {
            return Some(self.terms.values().next().unwrap().clone());
        }
        None
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, mono: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// Leading term under the canonical graded-lex monomial order.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// ord(f): the maximal operator order among occurring variables
    /// (0 for constants).
    pub fn order(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|mono| mono.powers().iter().map(|(v, _)| v.order()))
            .max()
            .unwrap_or(0)
    }

    pub fn variables(&self) -> BTreeSet<DerivativeVariable> {
        self.terms
            .keys()
            .flat_map(|mono| mono.powers().iter().map(|(v, _)| v.clone()))
            .collect()
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms
            .keys()
            .flat_map(|mono| mono.powers().iter().map(|(v, _)| v.symbol))
            .collect()
    }

    pub fn contains_var(&self, v: &DerivativeVariable) -> bool {
        self.terms.keys().any(|mono| mono.degree_in(v) > 0)
    }

    pub fn degree_in(&self, v: &DerivativeVariable) -> u32 {
        self.terms
            .keys()
            .map(|mono| mono.degree_in(v))
            .max()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|mono| mono.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.m);
        }
        DiffPolynomial {
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(mono, k)| (mono.clone(), k * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.m);
        }
        DiffPolynomial {
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(m0, k)| (m0.mul(mono), k * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.m);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// The coefficient of `v^k`, a polynomial free of `v`.
    pub fn coeff_of_power(&self, v: &DerivativeVariable, k: u32) -> Self {
        let mut out = Self::zero(self.m);
        for (mono, c) in &self.terms {
            if mono.degree_in(v) == k {
                out.add_term(mono.without_power(v, k), c.clone());
            }
        }
        out
    }

    /// Coefficients of `self` viewed as univariate in `v`; index = power of `v`.
    pub fn univariate_in(&self, v: &DerivativeVariable) -> Vec<DiffPolynomial> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![Self::zero(self.m); d + 1];
        for (mono, c) in &self.terms {
            let k = mono.degree_in(v);
            out[k as usize].add_term(mono.without_power(v, k), c.clone());
        }
        out
    }

    /// Formal partial derivative with respect to the derivative variable `v`
    /// (treating all derivative variables as independent indeterminates).
    pub fn partial_derivative(&self, v: &DerivativeVariable) -> Self {
        let mut out = Self::zero(self.m);
        for (mono, c) in &self.terms {
            let k = mono.degree_in(v);
            if k > 0 {
                out.add_term(mono.without_power(v, 1), c * q(k as i64));
            }
        }
        out
    }

    /// Apply the derivation δᵢ (1-based index) via the Leibniz rule;
    /// δᵢ vanishes on ℚ.
    pub fn differentiate(&self, index: usize) -> Self {
        assert!(
            index >= 1 && index <= self.m,
            "derivation index {index} out of range 1..={}",
            self.m
        );
        let mut out = Self::zero(self.m);
        for (mono, c) in &self.terms {
            for (pos, (v, e)) in mono.powers().iter().enumerate() {
                // d(v^e)/dδᵢ * rest = e·v^(e-1)·δᵢ(v)·rest
                let mut powers: Vec<(DerivativeVariable, u32)> = mono.powers().to_vec();
                powers[pos].1 -= 1;
                powers.push((DerivativeVariable::new(v.symbol, v.op.bump(index)), 1));
                out.add_term(Monomial::from_powers(powers), c * q(*e as i64));
            }
        }
        out
    }

    /// Apply θ = δ₁^{e₁}···δ_m^{e_m} by composing single derivations.
    pub fn apply_operator(&self, op: &DerivativeOperator) -> Self {
        assert_eq!(op.num_derivations(), self.m, "mismatched derivation count");
        let mut out = self.clone();
        for (i, &e) in op.exponents().iter().enumerate() {
            for _ in 0..e {
                out = out.differentiate(i + 1);
            }
        }
        out
    }

    /// Rename every occurrence of symbol `from` to `to`.
    pub fn rename_symbol(&self, from: Symbol, to: Symbol) -> Self {
        let mut out = Self::zero(self.m);
        for (mono, c) in &self.terms {
            let powers = mono
                .powers()
                .iter()
                .map(|(v, e)| {
                    let sym = if v.symbol == from { to } else { v.symbol };
                    (DerivativeVariable::new(sym, v.op.clone()), *e)
                })
                .collect();
            out.add_term(Monomial::from_powers(powers), c.clone());
        }
        out
    }

    /// Evaluate at a total assignment of the occurring variables.
    /// Panics if a variable is unbound.
    pub fn eval(&self, point: &BTreeMap<DerivativeVariable, BigRational>) -> BigRational {
        let mut acc = BigRational::zero();
        for (mono, c) in &self.terms {
            let mut term = c.clone();
            for (v, e) in mono.powers() {
                let val = point
                    .get(v)
                    .unwrap_or_else(|| panic!("unbound variable {v} in evaluation"));
                for _ in 0..*e {
                    term *= val;
                }
            }
            acc += term;
        }
        acc
    }

    /// Rational content: the positive rational c with `self = c · primitive`,
    /// where `primitive` has coprime integer coefficients and positive leading
    /// coefficient under the canonical monomial order. Returns (content with
    /// sign, primitive part); the zero polynomial yields (0, 0).
    pub fn content_and_primitive(&self) -> (BigRational, DiffPolynomial) {
        if self.is_zero() {
            return (BigRational::zero(), self.clone());
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_integer::Integer::gcd(&num_gcd, c.numer());
            den_lcm = num_integer::Integer::lcm(&den_lcm, c.denom());
        }
        let mut content = BigRational::new(num_gcd, den_lcm);
        let (_, lead) = self.leading_term().unwrap();
        if lead.is_negative() {
            content = -content;
        }
        let prim = self.scale(&content.recip());
        (content, prim)
    }

    /// Canonical representative of `self` modulo ℚ^×-scaling: coprime integer
    /// coefficients, positive leading coefficient.
    pub fn normalized(&self) -> DiffPolynomial {
        self.content_and_primitive().1
    }
}

impl Add for &DiffPolynomial {
    type Output = DiffPolynomial;
    fn add(self, rhs: &DiffPolynomial) -> DiffPolynomial {
        assert_eq!(self.m, rhs.m, "mismatched derivation count");
        let mut out = self.clone();
        for (mono, c) in &rhs.terms {
            out.add_term(mono.clone(), c.clone());
        }
        out
    }
}

impl Sub for &DiffPolynomial {
    type Output = DiffPolynomial;
    fn sub(self, rhs: &DiffPolynomial) -> DiffPolynomial {
        assert_eq!(self.m, rhs.m, "mismatched derivation count");
        let mut out = self.clone();
        for (mono, c) in &rhs.terms {
            out.add_term(mono.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &DiffPolynomial {
    type Output = DiffPolynomial;
    fn mul(self, rhs: &DiffPolynomial) -> DiffPolynomial {
        assert_eq!(self.m, rhs.m, "mismatched derivation count");
        let mut out = DiffPolynomial::zero(self.m);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &DiffPolynomial {
    type Output = DiffPolynomial;
    fn neg(self) -> DiffPolynomial {
        DiffPolynomial {
            m: self.m,
            terms: self
                .terms
                .iter()
                .map(|(mono, c)| (mono.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl PartialOrd for DiffPolynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical (ranking-independent) total order used only for deterministic
/// tie-breaking; compares term maps from the leading end.
impl Ord for DiffPolynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.terms.iter().rev();
        let mut b = other.terms.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some((ma, ca)), Some((mb, cb))) => {
                    match ma.cmp(mb).then_with(|| ca.cmp(cb)) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
            }
        }
    }
}

fn write_coeff(f: &mut fmt::Formatter<'_>, c: &BigRational) -> fmt::Result {
    if c.denom().is_one() {
        write!(f, "{}", c.numer())
    } else {
        write!(f, "{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for DiffPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, c) in self.terms.iter().rev() {
            let negative = c.is_negative();
            let abs = if negative { -c.clone() } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            if mono.is_one() {
                write_coeff(f, &abs)?;
            } else if abs.is_one() {
                write!(f, "{mono:?}")?;
            } else {
                write_coeff(f, &abs)?;
                write!(f, "*{mono:?}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DiffPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
