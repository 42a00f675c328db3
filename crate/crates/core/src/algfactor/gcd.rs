//! Multivariate gcd, exact division, content and primitive parts.
//!
//! Polynomials live in ℚ[Θ(Y)]; gcds are computed up to units and returned
//! normalized (coprime integer coefficients, positive leading coefficient).
//! The variable recursion uses a primitive polynomial remainder sequence,
//! which is plenty at the problem sizes this kernel targets.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::operator::DerivativeVariable;
use crate::poly::DiffPolynomial;

/// Exact division: returns `f / g` when `g` divides `f`, `None` otherwise.
/// Panics if `g` is zero.
pub fn exact_div(f: &DiffPolynomial, g: &DiffPolynomial) -> Option<DiffPolynomial> {
    assert!(!g.is_zero(), "division by the zero polynomial");
    let m = f.num_derivations();
    let mut rem = f.clone();
    let mut quot = DiffPolynomial::zero(m);
    let (g_mono, g_coeff) = {
        let (mono, c) = g.leading_term().unwrap();
        (mono.clone(), c.clone())
    };
    while !rem.is_zero() {
        let (r_mono, r_coeff) = {
            let (mono, c) = rem.leading_term().unwrap();
            (mono.clone(), c.clone())
        };
        let q_mono = r_mono.div(&g_mono)?;
        let q_coeff = r_coeff / &g_coeff;
        let t = DiffPolynomial::from_terms(m, [(q_mono.clone(), q_coeff.clone())]);
        quot = &quot + &t;
        rem = &rem - &g.mul_monomial(&q_mono, &q_coeff);
    }
    Some(quot)
}

pub fn divides(g: &DiffPolynomial, f: &DiffPolynomial) -> bool {
    if g.is_zero() {
        return f.is_zero();
    }
    exact_div(f, g).is_some()
}

/// Pseudo-remainder of `a` by `b` in the variable `v`:
/// lc_v(b)^{deg a − deg b + 1} · a ≡ r  (mod b), deg_v(r) < deg_v(b).
pub fn pseudo_rem(a: &DiffPolynomial, b: &DiffPolynomial, v: &DerivativeVariable) -> DiffPolynomial {
    let db = b.degree_in(v);
    assert!(db > 0, "pseudo-division needs the variable in the divisor");
    let lead_b = b.coeff_of_power(v, db);
    let mut r = a.clone();
    loop {
        let dr = r.degree_in(v);
        if r.is_zero() || dr < db {
            return r;
        }
        let lead_r = r.coeff_of_power(v, dr);
        let shift = DiffPolynomial::var(a.num_derivations(), v.clone()).pow(dr - db);
        r = &(&lead_b * &r) - &(&(&lead_r * &shift) * b);
    }
}

/// Content of `f` with respect to `v`: the gcd of its `v`-coefficients.
pub fn content_in(f: &DiffPolynomial, v: &DerivativeVariable) -> DiffPolynomial {
    let coeffs = f.univariate_in(v);
    gcd_list(coeffs.iter().filter(|c| !c.is_zero()))
}

/// Primitive part of `f` with respect to `v` (content divided out).
pub fn primitive_in(f: &DiffPolynomial, v: &DerivativeVariable) -> DiffPolynomial {
    if f.is_zero() {
        return f.clone();
    }
    let c = content_in(f, v);
    exact_div(f, &c).expect("content divides the polynomial")
}

/// GCD of a nonempty collection of nonzero polynomials (or zero if empty).
pub fn gcd_list<'a, I>(polys: I) -> DiffPolynomial
where
    I: IntoIterator<Item = &'a DiffPolynomial>,
{
    let mut acc: Option<DiffPolynomial> = None;
    for p in polys {
        acc = Some(match acc {
            None => p.normalized(),
            Some(a) => gcd(&a, p),
        });
        // gcd 1 absorbs everything
        if let Some(a) = &acc {
            if a.as_constant().map(|c| c.is_one()).unwrap_or(false) {
                return a.clone();
            }
        }
    }
    acc.unwrap_or_else(|| DiffPolynomial::zero(0))
}

/// Greatest common divisor of multivariate polynomials over ℚ, normalized.
pub fn gcd(f: &DiffPolynomial, g: &DiffPolynomial) -> DiffPolynomial {
    assert!(
        !(f.is_zero() && g.is_zero()),
        "gcd of two zero polynomials is undefined"
    );
    let m = f.num_derivations();
    if f.is_zero() {
        return g.normalized();
    }
    if g.is_zero() {
        return f.normalized();
    }
    if f.is_constant() || g.is_constant() {
        return DiffPolynomial::one(m);
    }
    // Choose a common variable; disjoint supports have unit gcd.
    let vars_f = f.variables();
    let vars_g = g.variables();
    let common: Vec<&DerivativeVariable> = vars_f.intersection(&vars_g).collect();
    if common.is_empty() {
        return DiffPolynomial::one(m);
    }
    let v = common
        .into_iter()
        .min_by_key(|v| f.degree_in(v).min(g.degree_in(v)))
        .unwrap()
        .clone();

    let cont_f = content_in(f, &v);
    let cont_g = content_in(g, &v);
    let pp_f = exact_div(f, &cont_f).unwrap();
    let pp_g = exact_div(g, &cont_g).unwrap();
    let cont_gcd = gcd(&cont_f, &cont_g);

    // Primitive PRS in v.
    let (mut a, mut b) = if pp_f.degree_in(&v) >= pp_g.degree_in(&v) {
        (pp_f, pp_g)
    } else {
        (pp_g, pp_f)
    };
    loop {
        if b.is_zero() {
            break;
        }
        if b.degree_in(&v) == 0 {
            // coprime primitive parts
            return cont_gcd.normalized();
        }
        let r = pseudo_rem(&a, &b, &v);
        a = b;
        b = if r.is_zero() { r } else { primitive_in(&r, &v).normalized() };
    }
    let pp_gcd = primitive_in(&a, &v);
    (&cont_gcd * &pp_gcd).normalized()
}

/// Squarefree part of `f`: the product of its distinct irreducible factors.
pub fn squarefree_part(f: &DiffPolynomial) -> DiffPolynomial {
    if f.is_zero() || f.is_constant() {
        return f.normalized();
    }
    let mut result = f.normalized();
    for v in f.variables() {
        if result.degree_in(&v) == 0 {
            continue;
        }
        let d = result.partial_derivative(&v);
        if d.is_zero() {
            continue;
        }
        let g = gcd(&result, &d);
        if !g.is_constant() {
            result = exact_div(&result, &g).unwrap().normalized();
        }
    }
    result.normalized()
}

/// gcd of two positive rationals: gcd of numerators over lcm of denominators.
fn rational_gcd(a: &BigRational, b: &BigRational) -> BigRational {
    use num_bigint::BigInt;
    let n: BigInt = num_integer::Integer::gcd(
        &(a.numer() * b.denom()),
        &(b.numer() * a.denom()),
    );
    BigRational::new(n, a.denom() * b.denom())
}

/// Rational-function reduction: divide out gcd(num, den), then scale so both
/// parts have integer coefficients with joint content 1 and the denominator
/// has a positive leading coefficient.
pub fn reduce_fraction(
    num: &DiffPolynomial,
    den: &DiffPolynomial,
) -> (DiffPolynomial, DiffPolynomial) {
    if num.is_zero() {
        return (
            DiffPolynomial::zero(num.num_derivations()),
            DiffPolynomial::one(den.num_derivations()),
        );
    }
    let g = gcd(num, den);
    let n = exact_div(num, &g).unwrap();
    let d = exact_div(den, &g).unwrap();
    let (cn, _) = n.content_and_primitive();
    let (cd, _) = d.content_and_primitive();
    let mut scale = rational_gcd(&cn.abs(), &cd.abs());
    if cd < BigRational::zero() {
        scale = -scale;
    }
    let inv = BigRational::one() / scale;
    (n.scale(&inv), d.scale(&inv))
}
