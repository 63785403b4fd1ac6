//! Univariate polynomials with exact coefficients.
//!
//! The coefficient type is generic over a commutative ring scalar from
//! `num-traits`; the crate instantiates it at `BigInt` (Poincaré series
//! numerators) and at `BigRational` (gcd computations, evaluation).

use num_traits::{One, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Dense univariate polynomial; `coeffs[k]` is the coefficient of `t^k`.
///
/// Invariant: the highest-degree coefficient is nonzero unless the
/// polynomial is zero, in which case `coeffs` is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial<T> {
    coeffs: Vec<T>,
}

impl<T: Zero + Clone> Polynomial<T> {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    /// Builds a polynomial, trimming trailing zero coefficients.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn constant(c: T) -> Self {
        Polynomial::new(vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Applies `f` to every coefficient (e.g. `BigInt -> BigRational`).
    pub fn map<S: Zero + Clone>(&self, f: impl Fn(&T) -> S) -> Polynomial<S> {
        Polynomial::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T> Polynomial<T>
where
    T: Zero + One + Clone,
{
    pub fn one() -> Self {
        Polynomial::new(vec![T::one()])
    }

    /// The monomial `c · t^k`.
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Polynomial::new(coeffs)
    }

    /// Horner evaluation at `x`.
    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }
}

/// The polynomial `1 + t + … + t^e`.
///
/// These are the factors of the Poincaré series of a finite Coxeter
/// system; for `e = 0` this is the constant `1`.
pub fn geometric_sum_poly<T: Zero + One + Clone>(e: usize) -> Polynomial<T> {
    Polynomial::new(vec![T::one(); e + 1])
}

impl<T> Add for &Polynomial<T>
where
    T: Zero + Clone + Add<Output = T>,
{
    type Output = Polynomial<T>;
    fn add(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Polynomial::new(coeffs)
    }
}

impl<T> Sub for &Polynomial<T>
where
    T: Zero + Clone + Sub<Output = T>,
{
    type Output = Polynomial<T>;
    fn sub(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        Polynomial::new(coeffs)
    }
}

impl<T> Neg for &Polynomial<T>
where
    T: Zero + Clone + Neg<Output = T>,
{
    type Output = Polynomial<T>;
    fn neg(self) -> Polynomial<T> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<T> Mul for &Polynomial<T>
where
    T: Zero + Clone + Mul<Output = T> + Add<Output = T>,
{
    type Output = Polynomial<T>;
    fn mul(self, rhs: &Polynomial<T>) -> Polynomial<T> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(coeffs)
    }
}

impl<T> Polynomial<T>
where
    T: Zero + One + Clone + Sub<Output = T> + Mul<Output = T> + Div<Output = T>,
{
    /// Euclidean division over a field scalar; returns `(quotient, remainder)`.
    ///
    /// Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &Polynomial<T>) -> (Polynomial<T>, Polynomial<T>) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let dd = divisor.coeffs.len();
        if self.coeffs.len() < dd {
            return (Polynomial::zero(), self.clone());
        }
        let lead = divisor.coeffs[dd - 1].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![T::zero(); rem.len() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = rem[k + dd - 1].clone();
            if c.is_zero() {
                continue;
            }
            let q = c / lead.clone();
            quot[k] = q.clone();
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = rem[k + j].clone() - q.clone() * d.clone();
            }
        }
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    /// Monic gcd by the Euclidean algorithm over a field scalar.
    pub fn gcd(&self, other: &Polynomial<T>) -> Polynomial<T> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        // normalise monic
        let lead = a.coeffs.last().unwrap().clone();
        Polynomial::new(a.coeffs.into_iter().map(|c| c / lead.clone()).collect())
    }
}

impl<T: fmt::Display + Zero> fmt::Display for Polynomial<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*t")?,
                _ => write!(f, "{c}*t^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat_int, BigInt, IntPolynomial, Rat};

    fn ipoly(cs: &[i64]) -> IntPolynomial {
        Polynomial::new(cs.iter().map(|&c| BigInt::from(c)).collect())
    }

    #[test]
    fn geometric_sum_edge_cases() {
        let p: IntPolynomial = geometric_sum_poly(0);
        assert_eq!(p, ipoly(&[1]));
        let p: IntPolynomial = geometric_sum_poly(2);
        assert_eq!(p, ipoly(&[1, 1, 1]));
    }

    #[test]
    fn geometric_sum_eval_at_two() {
        // 1 + 2 + 4 + 8 + 16 + 32 = 63
        let p: IntPolynomial = geometric_sum_poly(5);
        assert_eq!(p.eval(&BigInt::from(2)), BigInt::from(63));
    }

    #[test]
    fn geometric_sum_telescopes() {
        for e in 0..=40usize {
            let p: IntPolynomial = geometric_sum_poly(e);
            let t_minus_1 = ipoly(&[-1, 1]);
            let lhs = &p * &t_minus_1;
            let mut expect = vec![BigInt::from(0); e + 2];
            expect[0] = BigInt::from(-1);
            expect[e + 1] = BigInt::from(1);
            assert_eq!(lhs, Polynomial::new(expect));
        }
    }

    #[test]
    fn div_rem_reconstructs() {
        let a: Polynomial<Rat> = ipoly(&[2, 0, -3, 1, 4]).map(|c| Rat::from_integer(c.clone()));
        let b: Polynomial<Rat> = ipoly(&[1, 1]).map(|c| Rat::from_integer(c.clone()));
        let (q, r) = a.div_rem(&b);
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_of_common_factor() {
        let f = ipoly(&[-1, 1]).map(|c| Rat::from_integer(c.clone())); // t - 1
        let a = &f * &ipoly(&[1, 1]).map(|c| Rat::from_integer(c.clone()));
        let b = &f * &ipoly(&[3, 0, 1]).map(|c| Rat::from_integer(c.clone()));
        let g = a.gcd(&b);
        assert_eq!(g.coeffs(), &[-rat_int(1), rat_int(1)]);
    }
}
