//! Rational functions in one variable with integer numerator and
//! denominator, kept in lowest terms.

use super::poly::Polynomial;
use crate::{BigInt, IntPolynomial, Rat};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    /// The denominator vanishes at the requested point, e.g. an affine
    /// Poincaré series evaluated at a root of unity.
    #[error("denominator vanishes at the evaluation point")]
    PoleAtEvaluationPoint,
}

/// Quotient of two integer polynomials.
///
/// Invariants: the denominator is nonzero, numerator and denominator
/// share no nonconstant factor, and the denominator has positive
/// content (its leading coefficient is positive).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: IntPolynomial,
    den: IntPolynomial,
}

/// gcd of all coefficients, with the sign of the leading coefficient.
fn signed_content(p: &IntPolynomial) -> BigInt {
    let mut g = BigInt::zero();
    for c in p.coeffs() {
        g = g.gcd(c);
    }
    if p.leading().map(Signed::is_negative).unwrap_or(false) {
        g = -g;
    }
    g
}

fn divide_coeffs(p: &IntPolynomial, d: &BigInt) -> IntPolynomial {
    Polynomial::new(p.coeffs().iter().map(|c| c / d).collect())
}

fn primitive_part(p: &IntPolynomial) -> IntPolynomial {
    if p.is_zero() {
        return p.clone();
    }
    divide_coeffs(p, &signed_content(p))
}

/// Pseudo-remainder of `a` by `b`: the remainder of `lead(b)^k · a`
/// divided by `b`, which stays in integer coefficients.
fn pseudo_rem(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let db = b.degree().expect("pseudo_rem by zero");
    let lead = b.leading().unwrap().clone();
    let mut r = a.clone();
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        // r <- lead(b) * r - lead(r) * t^{dr-db} * b
        let lr = r.leading().unwrap().clone();
        let scaled: IntPolynomial =
            Polynomial::new(r.coeffs().iter().map(|c| c * &lead).collect());
        let shift = Polynomial::monomial(lr, dr - db);
        r = &scaled - &(&shift * b);
    }
    r
}

/// Primitive gcd of integer polynomials: the Euclidean scheme with every
/// remainder content-cleared, so coefficients never explode.  Result is
/// primitive with positive leading coefficient.
fn int_poly_gcd(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    if a.is_zero() {
        return primitive_part(b);
    }
    if b.is_zero() {
        return primitive_part(a);
    }
    let mut f = primitive_part(a);
    let mut g = primitive_part(b);
    if f.degree() < g.degree() {
        std::mem::swap(&mut f, &mut g);
    }
    loop {
        let r = pseudo_rem(&f, &g);
        if r.is_zero() {
            return primitive_part(&g);
        }
        f = g;
        g = primitive_part(&r);
    }
}

/// Exact division of integer polynomials; panics unless `b` divides `a`.
fn int_poly_exact_div(a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
    let (q, r) = a
        .map(|c| Rat::from_integer(c.clone()))
        .div_rem(&b.map(|c| Rat::from_integer(c.clone())));
    assert!(r.is_zero(), "inexact integer polynomial division");
    Polynomial::new(
        q.coeffs()
            .iter()
            .map(|c| {
                debug_assert!(c.denom() == &BigInt::from(1));
                c.to_integer()
            })
            .collect(),
    )
}

impl RationalFunction {
    /// Builds `num/den` and normalises: cancels the polynomial gcd
    /// (computed over the rationals, then content-cleared) and fixes the
    /// denominator's sign.
    ///
    /// Panics if `den` is zero.
    pub fn new(num: IntPolynomial, den: IntPolynomial) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RationalFunction {
                num,
                den: Polynomial::one(),
            };
        }
        let g = int_poly_gcd(&num, &den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (int_poly_exact_div(&num, &g), int_poly_exact_div(&den, &g))
        };
        // cancel integer content; keep the denominator's content positive
        let cn = signed_content(&num);
        let cd = signed_content(&den);
        let g = cn.gcd(&cd);
        if !g.is_zero() {
            let s = if cd.is_negative() { -g } else { g };
            num = divide_coeffs(&num, &s);
            den = divide_coeffs(&den, &s);
        }
        RationalFunction { num, den }
    }

    pub fn from_poly(p: IntPolynomial) -> Self {
        RationalFunction::new(p, Polynomial::one())
    }

    pub fn one() -> Self {
        RationalFunction::from_poly(Polynomial::one())
    }

    pub fn numerator(&self) -> &IntPolynomial {
        &self.num
    }

    pub fn denominator(&self) -> &IntPolynomial {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn mul(&self, rhs: &RationalFunction) -> RationalFunction {
        RationalFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    pub fn recip(&self) -> RationalFunction {
        assert!(!self.num.is_zero(), "reciprocal of zero");
        RationalFunction::new(self.den.clone(), self.num.clone())
    }

    /// Exact evaluation at a rational point.
    pub fn eval(&self, q: &Rat) -> Result<Rat, EvalError> {
        ratfun_eval(self, q)
    }
}

/// Exact value `f(q)`, or `PoleAtEvaluationPoint` if the denominator
/// vanishes there.
pub fn ratfun_eval(f: &RationalFunction, q: &Rat) -> Result<Rat, EvalError> {
    let den = f.den.map(|c| Rat::from_integer(c.clone())).eval(q);
    if den.is_zero() {
        return Err(EvalError::PoleAtEvaluationPoint);
    }
    let num = f.num.map(|c| Rat::from_integer(c.clone())).eval(q);
    Ok(num / den)
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() && self.den.coeff(0) == BigInt::from(1) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Serialises a rational as `"num/den"` in base 10, omitting the
/// denominator when it is 1.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses the `"num/den"` form accepted by [`rat_to_string`].
pub fn rat_from_string(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rat::new(n, d))
        }
        None => Some(Rat::from_integer(s.parse().ok()?)),
    }
}

/// Decimal approximation with 12 significant digits, for report output.
pub fn rat_to_decimal12(r: &Rat) -> String {
    let num = r.numer().to_string();
    let den = r.denom().to_string();
    let x = num.parse::<f64>().unwrap_or(f64::NAN) / den.parse::<f64>().unwrap_or(f64::NAN);
    format!("{x:.11e}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::geometric_sum_poly;
    use crate::{rat, rat_int};

    fn ipoly(cs: &[i64]) -> IntPolynomial {
        Polynomial::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn eval_constant() {
        let f = RationalFunction::one();
        assert_eq!(ratfun_eval(&f, &rat_int(7)), Ok(rat_int(1)));
    }

    #[test]
    fn eval_affine_a1_series_at_two() {
        // (1+t)/(1-t) at t = 2 is -3
        let f = RationalFunction::new(ipoly(&[1, 1]), ipoly(&[1, -1]));
        assert_eq!(ratfun_eval(&f, &rat_int(2)), Ok(rat_int(-3)));
    }

    #[test]
    fn eval_finite_a2_series_at_two() {
        // (1+t)(1+t+t^2) at t = 2 is 21
        let p = &geometric_sum_poly::<BigInt>(1) * &geometric_sum_poly::<BigInt>(2);
        let f = RationalFunction::from_poly(p);
        assert_eq!(ratfun_eval(&f, &rat_int(2)), Ok(rat_int(21)));
    }

    #[test]
    fn pole_detected() {
        let f = RationalFunction::new(ipoly(&[1]), ipoly(&[-1, 1]));
        assert_eq!(
            ratfun_eval(&f, &rat_int(1)),
            Err(EvalError::PoleAtEvaluationPoint)
        );
    }

    #[test]
    fn normalisation_cancels_common_factor() {
        // (t^2 - 1)/(t - 1) reduces to t + 1
        let f = RationalFunction::new(ipoly(&[-1, 0, 1]), ipoly(&[-1, 1]));
        assert_eq!(f.numerator(), &ipoly(&[1, 1]));
        assert_eq!(f.denominator(), &ipoly(&[1]));
    }

    #[test]
    fn normalisation_fixes_denominator_sign() {
        let f = RationalFunction::new(ipoly(&[2]), ipoly(&[-4]));
        assert_eq!(f.numerator(), &ipoly(&[-1]));
        assert_eq!(f.denominator(), &ipoly(&[2]));
    }

    #[test]
    fn rational_string_round_trip() {
        for r in [rat(3, 2), rat_int(-5), rat(-7, 3), rat_int(0)] {
            assert_eq!(rat_from_string(&rat_to_string(&r)), Some(r));
        }
        assert_eq!(rat_to_string(&rat(1, 3)), "1/3");
        assert_eq!(rat_to_string(&rat_int(4)), "4");
    }
}
