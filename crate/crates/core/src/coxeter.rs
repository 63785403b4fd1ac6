//! Exponents, Poincaré series, Euler characteristics, L²-Betti numbers
//! and covolumes for finite and affine Coxeter/Chevalley data, plus the
//! Cayley–Abels and Morse bounds on low-degree L²-Betti numbers.
//!
//! All results are exact rationals.  With the Iwahori normalisation
//! ν(B) = 1 and thickness q, the quantities attached to an affine datum
//! of rank d with exponents e₁,…,e_d are
//!
//! ```text
//! ω(t)        = ∏ (1 + t + … + t^{e_i}) / (1 − t^{e_i})
//! χ           = 1/ω(q)
//! β_d^{(2)}   = ∏ (q^{e_i} − 1)/(1 + q + … + q^{e_i})       (group)
//! |B(F_q)|    = (q−1)^d · q^{e_1+…+e_d}
//! covol       = |B(F_q)|^{-1} · ∏ (1 − q^{-e_i})^{-1}        (lattice)
//! β_d^{(2)}   = ∏ (q^{e_i+1} − 1)^{-1}                       (lattice)
//! ```
//!
//! and the two consistency identities `χ = (−1)^d β_d` and
//! `lattice β_d = covol · β_d` hold with exact rational equality.

use crate::exactmath::{geometric_sum_poly, Polynomial, RationalFunction};
use crate::{rat_int, BigInt, IntPolynomial, Rat};
use num_traits::{One, Pow, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoxeterError {
    #[error("unsupported type {family:?} of rank {rank}")]
    UnsupportedType { family: Family, rank: usize },
    #[error("generating set is empty")]
    EmptyGeneratingSet,
    #[error("betti numbers do not cover dimensions 0..={needed}")]
    DimensionMismatch { needed: usize },
}

/// Irreducible families of the classification.  `A`–`D` take a rank
/// parameter; the exceptional families have it fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E6,
    E7,
    E8,
    F4,
    G2,
}

impl Family {
    pub fn parse(s: &str) -> Option<Family> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Some(Family::A),
            "B" => Some(Family::B),
            "C" => Some(Family::C),
            "D" => Some(Family::D),
            "E6" => Some(Family::E6),
            "E7" => Some(Family::E7),
            "E8" => Some(Family::E8),
            "F4" => Some(Family::F4),
            "G2" => Some(Family::G2),
            _ => None,
        }
    }
}

/// A finite or affine irreducible Coxeter datum with its exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterDatum {
    pub family: Family,
    pub rank: usize,
    pub affine: bool,
    /// Sorted ascending; `D_d`'s table row `1,3,…,2d−3,d−1` is reordered.
    pub exponents: Vec<usize>,
}

impl CoxeterDatum {
    pub fn new(family: Family, rank: usize, affine: bool) -> Result<Self, CoxeterError> {
        let exponents = exponents(family, rank)?;
        Ok(CoxeterDatum {
            family,
            rank,
            affine,
            exponents,
        })
    }

    /// Number of positive roots, `m = e₁ + … + e_d`.
    pub fn positive_roots(&self) -> usize {
        self.exponents.iter().sum()
    }
}

/// The exponent table.  Ranks accepted: A d≥1, B d≥2, C d≥2, D d≥3; the
/// exceptional families have fixed rank.
pub fn exponents(family: Family, rank: usize) -> Result<Vec<usize>, CoxeterError> {
    let err = || CoxeterError::UnsupportedType { family, rank };
    let mut e = match family {
        Family::A => {
            if rank < 1 {
                return Err(err());
            }
            (1..=rank).collect()
        }
        Family::B | Family::C => {
            if rank < 2 {
                return Err(err());
            }
            (0..rank).map(|i| 2 * i + 1).collect()
        }
        Family::D => {
            if rank < 3 {
                return Err(err());
            }
            let mut v: Vec<usize> = (0..rank - 1).map(|i| 2 * i + 1).collect();
            v.push(rank - 1);
            v
        }
        Family::E6 => {
            if rank != 6 {
                return Err(err());
            }
            vec![1, 4, 5, 7, 8, 11]
        }
        Family::E7 => {
            if rank != 7 {
                return Err(err());
            }
            vec![1, 5, 7, 9, 11, 13, 17]
        }
        Family::E8 => {
            if rank != 8 {
                return Err(err());
            }
            vec![1, 7, 11, 13, 17, 19, 23, 29]
        }
        Family::F4 => {
            if rank != 4 {
                return Err(err());
            }
            vec![1, 5, 7, 11]
        }
        Family::G2 => {
            if rank != 2 {
                return Err(err());
            }
            vec![1, 5]
        }
    };
    e.sort_unstable();
    Ok(e)
}

/// Poincaré series of the datum as an exact rational function of `t`.
///
/// Finite: `∏ (1 + t + … + t^{e_i})`.  Affine: each factor is divided
/// by `1 − t^{e_i}`.
pub fn poincare_series(datum: &CoxeterDatum) -> RationalFunction {
    let mut num: IntPolynomial = Polynomial::one();
    let mut den: IntPolynomial = Polynomial::one();
    for &e in &datum.exponents {
        num = &num * &geometric_sum_poly(e);
        if datum.affine {
            // 1 - t^{e}
            let mut coeffs = vec![BigInt::zero(); e + 1];
            coeffs[0] = BigInt::one();
            coeffs[e] = -BigInt::one();
            den = &den * &Polynomial::new(coeffs);
        }
    }
    RationalFunction::new(num, den)
}

/// Everything theorem-level about one affine datum at one thickness `q`.
#[derive(Clone, Debug)]
pub struct ChevalleyReport {
    pub datum: CoxeterDatum,
    pub q: u64,
    /// ω(q) of the affine series.
    pub omega_at_q: Rat,
    /// χ(G,ν) = 1/ω(q).
    pub euler: Rat,
    /// Top-degree L²-Betti number of the group.
    pub beta_top: Rat,
    /// |B(F_q)| = (q−1)^d q^m.
    pub borel_order: BigInt,
    /// Covolume of the `F_q[t]`-points lattice, Iwahori normalisation.
    pub covolume: Rat,
    /// Top-degree L²-Betti number of that lattice.
    pub lattice_beta_top: Rat,
    /// χ = (−1)^d · β_top, checked by exact comparison.
    pub euler_poincare_ok: bool,
    /// lattice β_top = covolume · β_top, checked by exact comparison.
    pub lattice_identity_ok: bool,
    /// q is a prime power (reported, never enforced).
    pub q_is_prime_power: bool,
    /// The minimal-covolume hypotheses of the classification result:
    /// classical type with d > 1 or type E6, and for non-A families
    /// q = p^a > 9 with p > 5.
    pub min_covolume_hypotheses_met: bool,
    /// Informational notes (e.g. D3 = A3).
    pub warnings: Vec<String>,
}

fn is_prime_power(q: u64) -> Option<u64> {
    if q < 2 {
        return None;
    }
    let mut n = q;
    let mut p = 0u64;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            p = d;
            while n % d == 0 {
                n /= d;
            }
            break;
        }
        d += 1;
    }
    if p == 0 {
        return Some(q); // q itself prime
    }
    if n == 1 {
        Some(p)
    } else {
        None
    }
}

fn big_pow(base: u64, exp: usize) -> BigInt {
    BigInt::from(base).pow(exp as u32)
}

/// Computes the full report for the affine datum `(family, rank)` at an
/// integer thickness `q ≥ 2`.  Prime-power-ness of `q` is reported, not
/// enforced: every formula is a rational identity in `q`.
pub fn chevalley_report(
    family: Family,
    rank: usize,
    q: u64,
) -> Result<ChevalleyReport, CoxeterError> {
    let datum = CoxeterDatum::new(family, rank, true)?;
    assert!(q >= 2, "thickness must be at least 2");
    let qr = Rat::from_integer(BigInt::from(q));

    let omega = poincare_series(&datum);
    let omega_at_q = omega
        .eval(&qr)
        .expect("affine omega has no pole at integer q >= 2");
    let euler = Rat::one() / omega_at_q.clone();

    let mut beta_top = Rat::one();
    let mut covol_product = Rat::one();
    let mut lattice_beta_top = Rat::one();
    for &e in &datum.exponents {
        let qe = Rat::from_integer(big_pow(q, e));
        let geom = geometric_sum_poly::<BigInt>(e).eval(&BigInt::from(q));
        beta_top = beta_top * (qe.clone() - Rat::one()) / Rat::from_integer(geom);
        covol_product = covol_product / (Rat::one() - qe.recip());
        lattice_beta_top =
            lattice_beta_top / (Rat::from_integer(big_pow(q, e + 1)) - Rat::one());
    }
    let d = datum.rank;
    let m = datum.positive_roots();
    let borel_order = BigInt::from(q - 1).pow(d as u32) * big_pow(q, m);
    let covolume = covol_product / Rat::from_integer(borel_order.clone());

    let sign = if d % 2 == 0 { Rat::one() } else { -Rat::one() };
    let euler_poincare_ok = euler == sign * beta_top.clone();
    let lattice_identity_ok = lattice_beta_top == covolume.clone() * beta_top.clone();

    let prime = is_prime_power(q);
    let min_covolume_hypotheses_met = {
        let type_ok = matches!(family, Family::A | Family::B | Family::C | Family::D) && d > 1
            || family == Family::E6;
        let q_ok = family == Family::A || matches!(prime, Some(p) if q > 9 && p > 5);
        type_ok && q_ok
    };

    let mut warnings = Vec::new();
    if family == Family::D && rank == 3 {
        warnings.push("D3 coincides with A3".to_string());
    }
    if prime.is_none() {
        warnings.push(format!("q = {q} is not a prime power"));
    }

    Ok(ChevalleyReport {
        datum,
        q,
        omega_at_q,
        euler,
        beta_top,
        borel_order,
        covolume,
        lattice_beta_top,
        euler_poincare_ok,
        lattice_identity_ok,
        q_is_prime_power: prime.is_some(),
        min_covolume_hypotheses_met,
        warnings,
    })
}

/// One G-cell of a cocompact topological model: its dimension and the
/// Haar measure of its stabiliser.
#[derive(Clone, Debug)]
pub struct CellDatum {
    pub dimension: usize,
    pub stabilizer_measure: Rat,
}

impl CellDatum {
    pub fn new(dimension: usize, stabilizer_measure: Rat) -> Self {
        assert!(
            stabilizer_measure.is_positive(),
            "stabiliser measure must be positive"
        );
        CellDatum {
            dimension,
            stabilizer_measure,
        }
    }
}

/// Euler characteristic from a cell list: `Σ_p (−1)^p Σ_U ν(U)^{-1}`.
pub fn euler_from_cells(cells: &[CellDatum]) -> Rat {
    let mut chi = Rat::zero();
    for cell in cells {
        let term = cell.stabilizer_measure.recip();
        if cell.dimension % 2 == 0 {
            chi = chi + term;
        } else {
            chi = chi - term;
        }
    }
    chi
}

/// Cayley–Abels bound: `β₁^{(2)} ≤ (Σ [K : K ∩ K^s] − 1)/ν(K)` where the
/// sum runs over the double cosets of a compact generating set.
pub fn morse_beta1_bound(nu_k: &Rat, indices: &[u64]) -> Result<Rat, CoxeterError> {
    if indices.is_empty() {
        return Err(CoxeterError::EmptyGeneratingSet);
    }
    assert!(nu_k.is_positive(), "nu(K) must be positive");
    let sum: u64 = indices.iter().sum();
    Ok((rat_int(sum as i64) - Rat::one()) / nu_k.clone())
}

/// Checks the Morse inequalities for every prefix `m ≤ n`:
/// `(−1)^m Σ_{i≤m} (−1)^i β_i ≤ (−1)^m Σ_{i≤m} (−1)^i c_i` with
/// `c_i = Σ_{U ∈ F_i} ν(U)^{-1}`.
pub fn morse_partial_sums(
    betti: &[Rat],
    cells: &[CellDatum],
    n: usize,
) -> Result<bool, CoxeterError> {
    if betti.len() <= n {
        return Err(CoxeterError::DimensionMismatch { needed: n });
    }
    let mut cell_sums = vec![Rat::zero(); n + 1];
    for cell in cells {
        if cell.dimension <= n {
            cell_sums[cell.dimension] =
                cell_sums[cell.dimension].clone() + cell.stabilizer_measure.recip();
        }
    }
    for m in 0..=n {
        let mut lhs = Rat::zero();
        let mut rhs = Rat::zero();
        for i in 0..=m {
            let sign = if (m - i) % 2 == 0 {
                Rat::one()
            } else {
                -Rat::one()
            };
            lhs = lhs + sign.clone() * betti[i].clone();
            rhs = rhs + sign * cell_sums[i].clone();
        }
        if lhs > rhs {
            return Ok(false);
        }
    }
    Ok(true)
}
