//! Differential dimension polynomials in the binomial basis, the Lüroth
//! shape test, and a Jacobian-based transcendence degree oracle.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::operator::{DerivativeOperator, DerivativeVariable};
use crate::poly::q;
use crate::ratfunc::DiffRationalFunction;

/// A numerical polynomial ω(t) = Σᵢ aᵢ·C(t+i, i) of degree ≤ m.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NumericalPolynomial {
    /// coefficients a₀..a_m in the binomial basis
    pub coeffs: Vec<BigRational>,
}

/// Binomial coefficient C(z, k) for an arbitrary integer z ≥ or < 0,
/// via the falling-factorial product formula.
pub fn binomial(z: &BigInt, k: u32) -> BigRational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= z - BigInt::from(i);
        den *= BigInt::from(i + 1);
    }
    BigRational::new(num, den)
}

impl NumericalPolynomial {
    pub fn zero(m: usize) -> Self {
        NumericalPolynomial {
            coeffs: vec![BigRational::zero(); m + 1],
        }
    }

    pub fn m(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Exact evaluation at an integer argument.
    pub fn eval(&self, t: i64) -> BigRational {
        let z = BigInt::from(t);
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, a)| a * binomial(&(&z + BigInt::from(i)), i as u32))
            .sum()
    }

    /// Fit the unique degree-≤m polynomial through the values at t = 0..=m,
    /// expressed in the binomial basis (exact Gaussian elimination).
    pub fn fit(m: usize, values: &[BigRational]) -> Self {
        assert_eq!(values.len(), m + 1);
        // matrix B[j][i] = C(j+i, i)
        let n = m + 1;
        let mut mat: Vec<Vec<BigRational>> = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| binomial(&BigInt::from(j as i64 + i as i64), i as u32))
                    .collect()
            })
            .collect();
        let mut rhs: Vec<BigRational> = values.to_vec();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !mat[r][col].is_zero()).expect("regular basis matrix");
            mat.swap(col, pivot);
            rhs.swap(col, pivot);
            let p = mat[col][col].clone();
            for r in 0..n {
                if r == col || mat[r][col].is_zero() {
                    continue;
                }
                let f = &mat[r][col] / &p;
                for c in col..n {
                    let t = &mat[col][c] * &f;
                    mat[r][c] = &mat[r][c] - &t;
                }
                let t = &rhs[col] * &f;
                rhs[r] = &rhs[r] - &t;
            }
        }
        let coeffs = (0..n).map(|i| &rhs[i] / &mat[i][i]).collect();
        NumericalPolynomial { coeffs }
    }

    /// The expansion of C(t+m−s, m) in the binomial basis.
    pub fn shifted_binomial(m: usize, s: u32) -> Self {
        let values: Vec<BigRational> = (0..=m as i64)
            .map(|t| binomial(&BigInt::from(t + m as i64 - s as i64), m as u32))
            .collect();
        Self::fit(m, &values)
    }

    /// n·C(t+m, m) for the free part.
    pub fn free(m: usize, n: u32) -> Self {
        let mut out = Self::zero(m);
        out.coeffs[m] = q(n as i64);
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.m(), other.m());
        NumericalPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.m(), other.m());
        NumericalPolynomial {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Coefficients in the power basis t^0..t^m (exact).
    pub fn power_coeffs(&self) -> Vec<BigRational> {
        // expand each C(t+i, i) = ∏_{j=1..i}(t+j)/i! by polynomial products
        let n = self.m() + 1;
        let mut out = vec![BigRational::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let mut poly = vec![BigRational::one()];
            for j in 1..=i {
                // multiply by (t + j)
                let mut next = vec![BigRational::zero(); poly.len() + 1];
                for (k, c) in poly.iter().enumerate() {
                    next[k + 1] = &next[k + 1] + c;
                    next[k] = &next[k] + &(c * q(j as i64));
                }
                poly = next;
            }
            let fact: BigRational = (1..=i).fold(BigRational::one(), |acc, j| acc * q(j as i64));
            for (k, c) in poly.iter().enumerate() {
                out[k] = &out[k] + &(a * c / &fact);
            }
        }
        out
    }

    /// Δ-dimension: the top binomial coefficient a_m.
    pub fn delta_dimension(&self) -> BigRational {
        self.coeffs[self.m()].clone()
    }
}

impl std::fmt::Display for NumericalPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, a) in self.coeffs.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if a.is_one() && i > 0 {
                write!(f, "C(t+{i},{i})")?;
            } else if i == 0 {
                write!(f, "{a}")?;
            } else {
                write!(f, "{a}*C(t+{i},{i})")?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// The leaders of a characteristic set, grouped per differential variable:
/// a finite antichain of exponent vectors for each leading variable.
#[derive(Clone, Debug, Default)]
pub struct LeaderStairs {
    /// one antichain per leading differential variable
    pub stairs: Vec<Vec<DerivativeOperator>>,
}

impl LeaderStairs {
    pub fn new(stairs: Vec<Vec<DerivativeOperator>>) -> Self {
        for chain in &stairs {
            for (i, a) in chain.iter().enumerate() {
                for (j, b) in chain.iter().enumerate() {
                    assert!(
                        i == j || !(a.divides(b) || b.divides(a)),
                        "stairs must form an antichain"
                    );
                }
            }
        }
        LeaderStairs { stairs }
    }

    /// Group leaders by symbol.
    pub fn from_leaders(leaders: &[DerivativeVariable]) -> Self {
        let mut map: BTreeMap<crate::symbol::Symbol, Vec<DerivativeOperator>> = BTreeMap::new();
        for l in leaders {
            map.entry(l.symbol).or_default().push(l.op.clone());
        }
        LeaderStairs::new(map.into_values().collect())
    }

    pub fn max_order(&self) -> u32 {
        self.stairs
            .iter()
            .flatten()
            .map(|op| op.order())
            .max()
            .unwrap_or(0)
    }

    /// Order of the join of all elements (upper bound for the exactness
    /// threshold of the closed form).
    pub fn max_join_order(&self) -> u32 {
        self.stairs
            .iter()
            .map(|chain| {
                chain
                    .iter()
                    .fold(None::<DerivativeOperator>, |acc, op| match acc {
                        None => Some(op.clone()),
                        Some(a) => Some(a.lcm(op)),
                    })
                    .map(|j| j.order())
                    .unwrap_or(0)
            })
            .max()
            .unwrap_or(0)
    }

    /// Direct lattice-point count: Σⱼ #{v ∈ ℕ^m : |v| ≤ t, v ≥ no element of
    /// chain j}. The independent oracle for `dimension_polynomial`.
    pub fn count_lattice(&self, m: usize, t: u32, n_free: u32) -> BigInt {
        let all = DerivativeOperator::all_up_to_order(m, t);
        let mut total = BigInt::from(n_free) * BigInt::from(all.len() as u64);
        for chain in &self.stairs {
            let cnt = all
                .iter()
                .filter(|v| !chain.iter().any(|e| e.divides(v)))
                .count();
            total += BigInt::from(cnt as u64);
        }
        total
    }
}

/// The differential dimension polynomial of the stairs: inclusion–exclusion
/// over componentwise joins, ω(t) = Σ_S (−1)^{|S|} C(t + m − |join S|, m),
/// plus n_free·C(t+m, m) for variables with empty stairs. Exact as a counting
/// function for t ≥ max join order − m.
pub fn dimension_polynomial(stairs: &LeaderStairs, m: usize, n_free: u32) -> NumericalPolynomial {
    let mut omega = NumericalPolynomial::free(m, n_free);
    for chain in &stairs.stairs {
        let k = chain.len();
        assert!(k <= 20, "antichain too large for inclusion-exclusion");
        for mask in 0..(1u32 << k) {
            let mut join: Option<DerivativeOperator> = None;
            for (i, op) in chain.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    join = Some(match join {
                        None => op.clone(),
                        Some(j) => j.lcm(op),
                    });
                }
            }
            let order = join.map(|j| j.order()).unwrap_or(0);
            let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
            let term = NumericalPolynomial::shifted_binomial(m, order);
            omega = if sign > 0 { omega.add(&term) } else { omega.sub(&term) };
        }
    }
    omega
}

/// Decide whether ω(t) = n·C(t+m,m) − C(t+m−s,m) for some s ∈ ℕ, returning
/// that s. The comparison is exact in the binomial basis.
pub fn is_luroth_shape(omega: &NumericalPolynomial, n: u32, m: usize) -> Option<u32> {
    let diff = NumericalPolynomial::free(m, n).sub(omega);
    if diff.is_zero() {
        return None;
    }
    // diff must equal C(t+m-s, m): solve s from the t^{m-1} power coefficient
    // Σ_{k=1..m}(k−s)/m! and verify exactly.
    let power = diff.power_coeffs();
    if m == 0 {
        return None;
    }
    let fact: BigRational = (1..=m).fold(BigRational::one(), |acc, j| acc * q(j as i64));
    // c = (m(m+1)/2 − m·s)/m!  ⟹  s = (m(m+1)/2 − c·m!)/m
    let c = &power[m - 1];
    let half = q((m as i64) * (m as i64 + 1) / 2);
    let s_rat = (half - c * fact) / q(m as i64);
    if !s_rat.denom().is_one() || s_rat.is_negative() {
        return None;
    }
    let s_int = s_rat.to_integer();
    let s: u32 = match s_int.try_into() {
        Ok(v) => v,
        Err(_) => return None,
    };
    if diff == NumericalPolynomial::shifted_binomial(m, s) {
        Some(s)
    } else {
        None
    }
}

/// Transcendence degree of ℚ({θ(gᵢ) : ord θ ≤ t}) over ℚ, computed as the
/// rank of the Jacobian with respect to all derivative variables at a random
/// rational point (two agreeing independent samples required).
///
/// Derivatives of g = P/Q are carried as polynomial pairs via
/// τ(P/Q) = P_τ/Q^{ord(τ)+1} with P_{δᵢτ} = δᵢ(P_τ)·Q − (ord(τ)+1)·P_τ·δᵢ(Q),
/// so no gcd reduction happens along the way.
pub fn trdeg_oracle(generators: &[DiffRationalFunction], t: u32, seed: u64) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    assert!(!generators.is_empty());
    let m = generators[0].num_derivations();
    let thetas = DerivativeOperator::all_up_to_order(m, t);

    // rows: (P_τ, Q, ord τ) per generator and operator
    let mut rows: Vec<(crate::poly::DiffPolynomial, crate::poly::DiffPolynomial, u32)> =
        Vec::new();
    for g in generators {
        let den = g.denominator().clone();
        let mut table: BTreeMap<DerivativeOperator, crate::poly::DiffPolynomial> =
            BTreeMap::new();
        table.insert(DerivativeOperator::identity(m), g.numerator().clone());
        // thetas are sorted by order, so a predecessor is always present
        for theta in &thetas {
            if theta.is_identity() {
                continue;
            }
            let i = theta
                .exponents()
                .iter()
                .position(|&e| e > 0)
                .expect("nonidentity operator");
            let mut prev = theta.exponents().to_vec();
            prev[i] -= 1;
            let prev_op = DerivativeOperator::new(prev);
            let k = prev_op.order();
            let p_prev = table.get(&prev_op).expect("predecessor computed").clone();
            let p_next = &(&p_prev.differentiate(i + 1) * &den)
                - &(&p_prev * &den.differentiate(i + 1)).scale(&q(k as i64 + 1));
            table.insert(theta.clone(), p_next);
        }
        for theta in &thetas {
            rows.push((table[theta].clone(), den.clone(), theta.order()));
        }
    }

    let mut vars: Vec<DerivativeVariable> = Vec::new();
    for (p, d, _) in &rows {
        for v in p.variables().into_iter().chain(d.variables()) {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
    }

    let sample = |rng: &mut ChaCha8Rng| -> usize {
        'resample: loop {
            let point: BTreeMap<DerivativeVariable, BigRational> = vars
                .iter()
                .map(|v| (v.clone(), q(rng.gen_range(-50i64..=50))))
                .collect();
            let mut matrix: Vec<Vec<BigRational>> = Vec::with_capacity(rows.len());
            for (p_tau, den, k) in &rows {
                let d = den.eval(&point);
                if d.is_zero() {
                    continue 'resample;
                }
                let p_val = p_tau.eval(&point);
                // ∂(P_τ/D^{k+1})/∂w = (∂P_τ·D − (k+1)·P_τ·∂D)/D^{k+2};
                // scaling a row by the nonzero D^{k+2} leaves the rank alone
                let mut row = Vec::with_capacity(vars.len());
                for v in &vars {
                    let dp = p_tau.partial_derivative(v).eval(&point);
                    let dd = den.partial_derivative(v).eval(&point);
                    row.push(&dp * &d - &p_val * &dd * q(*k as i64 + 1));
                }
                matrix.push(row);
            }
            return rank(matrix);
        }
    };
    loop {
        let a = sample(&mut rng);
        let b = sample(&mut rng);
        if a == b {
            return a;
        }
    }
}

fn rank(mut mat: Vec<Vec<BigRational>>) -> usize {
    if mat.is_empty() {
        return 0;
    }
    let cols = mat[0].len();
    let mut rank = 0usize;
    let mut row = 0usize;
    for col in 0..cols {
        let Some(p) = (row..mat.len()).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(row, p);
        let pivot = mat[row][col].clone();
        for r in (row + 1)..mat.len() {
            if mat[r][col].is_zero() {
                continue;
            }
            let f = &mat[r][col] / &pivot;
            for c in col..cols {
                let t = &mat[row][c] * &f;
                mat[r][c] = &mat[r][c] - &t;
            }
        }
        rank += 1;
        row += 1;
        if row == mat.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::DiffPolynomial;
    use crate::symbol::Symbol;

    fn op(exps: &[u32]) -> DerivativeOperator {
        DerivativeOperator::new(exps.to_vec())
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(&BigInt::from(4), 2), q(6));
        assert_eq!(binomial(&BigInt::from(1), 2), q(0));
        assert_eq!(binomial(&BigInt::from(-2), 2), q(3));
    }

    #[test]
    fn single_stairs_examples() {
        // stairs {(1,0)}: ω = C(t+2,2) − C(t+1,2) = t+1
        let stairs = LeaderStairs::new(vec![vec![op(&[1, 0])]]);
        let omega = dimension_polynomial(&stairs, 2, 0);
        for t in 0..=6 {
            assert_eq!(omega.eval(t), q(t + 1));
            assert_eq!(
                omega.eval(t),
                BigRational::from_integer(stairs.count_lattice(2, t as u32, 0))
            );
        }
        let expect = NumericalPolynomial::free(2, 1).sub(&NumericalPolynomial::shifted_binomial(2, 1));
        assert_eq!(omega, expect);

        // stairs {(1,1)}: ω = 2t+1, cross-checked against enumeration
        let stairs = LeaderStairs::new(vec![vec![op(&[1, 1])]]);
        let omega = dimension_polynomial(&stairs, 2, 0);
        for t in 0..=6 {
            assert_eq!(omega.eval(t), q(2 * t + 1));
        }

        // stairs {(1,0),(0,1)}: ω = 1
        let stairs = LeaderStairs::new(vec![vec![op(&[1, 0]), op(&[0, 1])]]);
        let omega = dimension_polynomial(&stairs, 2, 0);
        for t in 0..=6 {
            assert_eq!(omega.eval(t), q(1));
        }

        // no stairs, n variables: n·C(t+m,m)
        let stairs = LeaderStairs::new(vec![]);
        let omega = dimension_polynomial(&stairs, 2, 3);
        assert_eq!(omega, NumericalPolynomial::free(2, 3));
    }

    #[test]
    #[should_panic(expected = "antichain")]
    fn stairs_reject_comparable_elements() {
        LeaderStairs::new(vec![vec![op(&[1, 0]), op(&[1, 1])]]);
    }

    #[test]
    fn luroth_shape_detection() {
        // ω = C(t+2,2) − C(t+1,2): s = 1
        let omega =
            NumericalPolynomial::free(2, 1).sub(&NumericalPolynomial::shifted_binomial(2, 1));
        assert_eq!(is_luroth_shape(&omega, 1, 2), Some(1));
        // ω = 1: no s
        let mut one = NumericalPolynomial::zero(2);
        one.coeffs[0] = q(1);
        assert_eq!(is_luroth_shape(&one, 1, 2), None);
        // ω = n·C(t+m,m): no s (the difference is zero, not a binomial)
        assert_eq!(is_luroth_shape(&NumericalPolynomial::free(2, 2), 2, 2), None);
        // s = 0: ω = (n−1)·C(t+m,m)
        let omega = NumericalPolynomial::free(2, 2).sub(&NumericalPolynomial::shifted_binomial(2, 0));
        assert_eq!(is_luroth_shape(&omega, 2, 2), Some(0));
    }

    #[test]
    fn closed_form_matches_enumeration_above_threshold() {
        // stairs {(2,2)}: join order 4, exact for t ≥ 2
        let stairs = LeaderStairs::new(vec![vec![op(&[2, 2])]]);
        let omega = dimension_polynomial(&stairs, 2, 0);
        let threshold = stairs.max_join_order().saturating_sub(2);
        for t in threshold..=threshold + 5 {
            assert_eq!(
                omega.eval(t as i64),
                BigRational::from_integer(stairs.count_lattice(2, t, 0))
            );
        }
    }

    fn ratpoly(p: DiffPolynomial) -> DiffRationalFunction {
        DiffRationalFunction::from_poly(p)
    }

    fn pv(s: &str, exps: &[u32]) -> DiffPolynomial {
        DiffPolynomial::var(
            exps.len(),
            DerivativeVariable::new(Symbol::new(s), DerivativeOperator::new(exps.to_vec())),
        )
    }

    #[test]
    fn trdeg_examples() {
        // {d1d2(u), d1(u)+d1d2^2(u)} at t=0: rank 2
        let g1 = ratpoly(pv("u", &[1, 1]));
        let g2 = ratpoly(&pv("u", &[1, 0]) + &pv("u", &[1, 2]));
        assert_eq!(trdeg_oracle(&[g1, g2], 0, 7), 2);
        // {u} at t=1, m=2: u, d1(u), d2(u) independent
        let u = ratpoly(pv("u", &[0, 0]));
        assert_eq!(trdeg_oracle(&[u], 1, 7), 3);
        // {u^2} at t=0: 1
        let usq = ratpoly(&pv("u", &[0, 0]) * &pv("u", &[0, 0]));
        assert_eq!(trdeg_oracle(&[usq], 0, 7), 1);
    }
}
