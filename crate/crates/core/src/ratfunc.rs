//! Differential rational functions P(u)/Q(u) in reduced form.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algfactor::gcd::reduce_fraction;
use crate::error::{Error, Result};
use crate::operator::{DerivativeOperator, DerivativeVariable};
use crate::poly::DiffPolynomial;
use crate::symbol::Symbol;

/// A quotient of differential polynomials kept in reduced form:
/// gcd(numerator, denominator) = 1 and the denominator has coprime integer
/// coefficients with positive leading coefficient.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct DiffRationalFunction {
    num: DiffPolynomial,
    den: DiffPolynomial,
}

/// Bindings from base symbols to rational functions, used by substitution.
pub type Bindings = BTreeMap<Symbol, DiffRationalFunction>;

impl DiffRationalFunction {
    pub fn new(num: DiffPolynomial, den: DiffPolynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        assert_eq!(
            num.num_derivations(),
            den.num_derivations(),
            "mismatched derivation count"
        );
        let (n, d) = reduce_fraction(&num, &den);
        Ok(DiffRationalFunction { num: n, den: d })
    }

    pub fn from_poly(p: DiffPolynomial) -> Self {
        let one = DiffPolynomial::one(p.num_derivations());
        Self::new(p, one).expect("denominator one is nonzero")
    }

    pub fn zero(m: usize) -> Self {
        Self::from_poly(DiffPolynomial::zero(m))
    }

    pub fn one(m: usize) -> Self {
        Self::from_poly(DiffPolynomial::one(m))
    }

    pub fn constant(m: usize, c: BigRational) -> Self {
        Self::from_poly(DiffPolynomial::constant(m, c))
    }

    pub fn numerator(&self) -> &DiffPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &DiffPolynomial {
        &self.den
    }

    pub fn num_derivations(&self) -> usize {
        self.num.num_derivations()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The order of P/Q: the higher of the orders of P and Q.
    pub fn order(&self) -> u32 {
        self.num.order().max(self.den.order())
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        match (self.num.as_constant(), self.den.as_constant()) {
            (Some(n), Some(d)) => Some(n / d),
            _ => None,
        }
    }

    /// The value as a polynomial when the denominator is constant.
    pub fn as_polynomial(&self) -> Option<DiffPolynomial> {
        let c = self.den.as_constant()?;
        Some(self.num.scale(&(BigRational::one() / c)))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    /// Quotient rule for δᵢ (1-based index).
    pub fn differentiate(&self, index: usize) -> Self {
        let dn = self.num.differentiate(index);
        let dd = self.den.differentiate(index);
        let num = &(&dn * &self.den) - &(&self.num * &dd);
        let den = &self.den * &self.den;
        Self::new(num, den).expect("denominator square is nonzero")
    }

    pub fn apply_operator(&self, op: &DerivativeOperator) -> Self {
        let mut out = self.clone();
        for (i, &e) in op.exponents().iter().enumerate() {
            for _ in 0..e {
                out = out.differentiate(i + 1);
            }
        }
        out
    }

    pub fn rename_symbol(&self, from: Symbol, to: Symbol) -> Self {
        DiffRationalFunction {
            num: self.num.rename_symbol(from, to),
            den: self.den.rename_symbol(from, to),
        }
    }

    pub fn variables(&self) -> std::collections::BTreeSet<DerivativeVariable> {
        let mut vars = self.num.variables();
        vars.extend(self.den.variables());
        vars
    }

    /// Evaluate at a rational point; `None` when the denominator vanishes.
    pub fn eval(&self, point: &BTreeMap<DerivativeVariable, BigRational>) -> Option<BigRational> {
        let d = self.den.eval(point);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(point) / d)
    }

    /// Substitute base symbols by rational functions. θ(s) is replaced by
    /// θ applied to the binding of `s`, computed in rational-function
    /// arithmetic; unbound symbols stay as themselves.
    pub fn substitute(&self, bindings: &Bindings) -> Result<Self> {
        let n = substitute(&self.num, bindings);
        let d = substitute(&self.den, bindings);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        n.checked_div(&d)
    }
}

/// Substitute base symbols by rational functions inside a polynomial.
/// This is a ring homomorphism into the rational function field; it cannot
/// divide by zero because denominators only get multiplied.
pub fn substitute(f: &DiffPolynomial, bindings: &Bindings) -> DiffRationalFunction {
    let m = f.num_derivations();
    // Cache θ(binding) per derivative variable.
    let mut cache: BTreeMap<DerivativeVariable, DiffRationalFunction> = BTreeMap::new();
    let mut acc = DiffRationalFunction::zero(m);
    for (mono, c) in f.terms() {
        let mut term = DiffRationalFunction::constant(m, c.clone());
        for (v, e) in mono.powers() {
            let value = cache.entry(v.clone()).or_insert_with(|| {
                match bindings.get(&v.symbol) {
                    Some(b) => b.apply_operator(&v.op),
                    None => DiffRationalFunction::from_poly(DiffPolynomial::var(m, v.clone())),
                }
            });
            for _ in 0..*e {
                term = &term * &*value;
            }
        }
        acc = &acc + &term;
    }
    acc
}

impl Add for &DiffRationalFunction {
    type Output = DiffRationalFunction;
    fn add(self, rhs: &DiffRationalFunction) -> DiffRationalFunction {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        DiffRationalFunction::new(num, den).expect("nonzero denominator")
    }
}

impl Sub for &DiffRationalFunction {
    type Output = DiffRationalFunction;
    fn sub(self, rhs: &DiffRationalFunction) -> DiffRationalFunction {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        DiffRationalFunction::new(num, den).expect("nonzero denominator")
    }
}

impl Mul for &DiffRationalFunction {
    type Output = DiffRationalFunction;
    fn mul(self, rhs: &DiffRationalFunction) -> DiffRationalFunction {
        let num = &self.num * &rhs.num;
        let den = &self.den * &rhs.den;
        DiffRationalFunction::new(num, den).expect("nonzero denominator")
    }
}

impl Div for &DiffRationalFunction {
    type Output = DiffRationalFunction;
    /// Panics on division by zero; use `checked_div` to handle it.
    fn div(self, rhs: &DiffRationalFunction) -> DiffRationalFunction {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &DiffRationalFunction {
    type Output = DiffRationalFunction;
    fn neg(self) -> DiffRationalFunction {
        DiffRationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for DiffRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.as_constant().map(|c| c.is_one()).unwrap_or(false) {
            return write!(f, "{}", self.num);
        }
        // Pull a leading minus sign out of the fraction.
        let lead_negative = self
            .num
            .leading_term()
            .map(|(_, c)| c.is_negative())
            .unwrap_or(false);
        if lead_negative {
            write!(f, "-({})/({})", -&self.num, self.den)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for DiffRationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
