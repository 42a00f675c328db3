//! Derivative operators θ = δ₁^{e₁}···δ_m^{e_m} and derivative variables θ(y).

use std::cmp::Ordering;
use std::fmt;

use crate::symbol::Symbol;

/// An element of the free commutative monoid Θ generated by the m derivations,
/// stored as its exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DerivativeOperator {
    exps: Vec<u32>,
}

impl DerivativeOperator {
    /// The identity operator on `m` derivations.
    pub fn identity(m: usize) -> Self {
        DerivativeOperator { exps: vec![0; m] }
    }

    pub fn new(exps: Vec<u32>) -> Self {
        DerivativeOperator { exps }
    }

    /// δᵢ as an operator, `index` is 1-based.
    pub fn single(m: usize, index: usize) -> Self {
        assert!(index >= 1 && index <= m, "derivation index out of range");
        let mut exps = vec![0; m];
        exps[index - 1] = 1;
        DerivativeOperator { exps }
    }

    pub fn num_derivations(&self) -> usize {
        self.exps.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// ord(θ) = Σᵢ eᵢ.
    pub fn order(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_identity(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Componentwise divisibility: θ₁ | θ₂ iff e₁ᵢ ≤ e₂ᵢ for all i.
    pub fn divides(&self, other: &Self) -> bool {
        assert_eq!(self.exps.len(), other.exps.len());
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// θ₁·θ₂ (componentwise sum).
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.exps.len(), other.exps.len());
        DerivativeOperator {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        }
    }

    /// Componentwise max.
    pub fn lcm(&self, other: &Self) -> Self {
        assert_eq!(self.exps.len(), other.exps.len());
        DerivativeOperator {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    /// θ/θ' with θ' | θ.
    pub fn quotient(&self, other: &Self) -> Self {
        assert!(other.divides(self), "operator quotient requires divisibility");
        DerivativeOperator {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
        }
    }

    /// Exponent incremented at derivation `index` (1-based).
    pub fn bump(&self, index: usize) -> Self {
        assert!(index >= 1 && index <= self.exps.len());
        let mut exps = self.exps.clone();
        exps[index - 1] += 1;
        DerivativeOperator { exps }
    }

    /// The canonical ranking ℛ₀ on operators: compare
    /// (Σkᵢ, k₁, …, k_m) lexicographically.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.exps.cmp(&other.exps))
    }

    /// All operators of order ≤ `bound` on `m` derivations, in ℛ₀ order.
    pub fn all_up_to_order(m: usize, bound: u32) -> Vec<DerivativeOperator> {
        fn exact(out: &mut Vec<DerivativeOperator>, cur: &mut Vec<u32>, pos: usize, left: u32) {
            if pos + 1 == cur.len() {
                cur[pos] = left;
                out.push(DerivativeOperator { exps: cur.clone() });
                cur[pos] = 0;
                return;
            }
            for e in 0..=left {
                cur[pos] = e;
                exact(out, cur, pos + 1, left - e);
            }
            cur[pos] = 0;
        }
        let mut out = Vec::new();
        let mut cur = vec![0u32; m];
        for ord in 0..=bound {
            let start = out.len();
            exact(&mut out, &mut cur, 0, ord);
            out[start..].sort_by(|a: &DerivativeOperator, b| a.canonical_cmp(b));
        }
        out
    }
}

impl fmt::Display for DerivativeOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "d{}", i + 1)?;
            } else {
                write!(f, "d{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DerivativeOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A derivative variable θ(y): a symbol together with the operator applied to it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DerivativeVariable {
    pub symbol: Symbol,
    pub op: DerivativeOperator,
}

impl DerivativeVariable {
    pub fn new(symbol: Symbol, op: DerivativeOperator) -> Self {
        DerivativeVariable { symbol, op }
    }

    pub fn base(symbol: Symbol, m: usize) -> Self {
        DerivativeVariable {
            symbol,
            op: DerivativeOperator::identity(m),
        }
    }

    pub fn order(&self) -> u32 {
        self.op.order()
    }

    /// True when `self` = θ'·`other` for a nontrivial θ'.
    pub fn is_proper_derivative_of(&self, other: &DerivativeVariable) -> bool {
        self.symbol == other.symbol && other.op.divides(&self.op) && self.op != other.op
    }

    /// True when `self` = θ'·`other` for some θ' (possibly the identity).
    pub fn is_derivative_of(&self, other: &DerivativeVariable) -> bool {
        self.symbol == other.symbol && other.op.divides(&self.op)
    }

    /// Canonical storage order: by symbol name, then ℛ₀ on the operator.
    /// This is fixed once and for all; rankings are layered on separately.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.symbol
            .cmp(&other.symbol)
            .then_with(|| self.op.canonical_cmp(&other.op))
    }
}

impl PartialOrd for DerivativeVariable {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DerivativeVariable {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

impl fmt::Display for DerivativeVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.op.is_identity() {
            write!(f, "{}", self.symbol)
        } else {
            write!(f, "{}({})", self.op, self.symbol)
        }
    }
}

impl fmt::Debug for DerivativeVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
