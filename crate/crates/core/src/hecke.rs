//! The integral Hecke algebra of the tree Hecke pair.
//!
//! For the full automorphism group of the (q+1)-regular tree and a
//! vertex stabiliser K, the double cosets KgK are in bijection with the
//! distances r = d(g·x₀, x₀); we write A_r for the indicator of the
//! radius-r class.  With the normalisation ν(K) = 1 the integral span
//! of the A_r is closed under convolution, and the product is pinned by
//! the radius recursion
//!
//! ```text
//! A₀ · A_r = A_r
//! A₁ · A₁ = A₂ + (q+1) A₀
//! A₁ · A_r = A_{r+1} + q A_{r−1}        (r ≥ 2)
//! ```
//!
//! General products A_r · A_s are reduced through the expansion of A_r
//! as a polynomial in A₁ (Chebyshev-style rewriting), and the whole
//! multiplication table is cross-checked against a brute-force count of
//! double-coset intersections on a finite tree ball
//! ([`structure_constants_oracle`]).
//!
//! The trace extracts the coefficient of A₀; it is positive, unital and
//! faithful, and agrees with the matrix coefficient ⟨π(T)1_K, 1_K⟩ of
//! the convolution representation on ℓ²(K\G), truncated here to a ball
//! ([`operator_on_ball`]).

use crate::Rat;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HeckeError {
    #[error("elements belong to different Hecke pairs (q mismatch)")]
    PairMismatch,
    #[error("matrix is not self-adjoint")]
    NotSelfAdjoint,
    #[error("ball radius {radius} too small; need at least {needed}")]
    InsufficientRadius { radius: usize, needed: usize },
    #[error("oracle count not constant on the {u}-sphere")]
    NonconstantOnSphere { u: usize },
    #[error("element has a non-integer coefficient")]
    NonIntegralCoefficient,
}

/// The Hecke pair of the (q+1)-regular tree, ν(K) = 1.
///
/// q = 1 (the line) is allowed as a degenerate desk-scale case; its
/// recursion is A₁A_r = A_{r+1} + A_{r−1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TreeHeckePair {
    pub q: u64,
}

impl TreeHeckePair {
    pub fn new(q: u64) -> Self {
        assert!(q >= 1, "tree thickness q must be at least 1");
        TreeHeckePair { q }
    }

    /// Number of vertices at distance r from a base vertex, which is
    /// also the Haar measure ν(A_r) of the radius-r double coset.
    pub fn sphere_size(&self, r: usize) -> u64 {
        match r {
            0 => 1,
            _ => (self.q + 1) * self.q.pow((r - 1) as u32),
        }
    }
}

/// Finitely supported combination of radius classes `Σ c_r · A_r`.
///
/// Zero coefficients are never stored.  Elements with integer
/// coefficients form the integral Hecke algebra, which is closed under
/// multiplication (the structure constants are nonnegative integers).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeElement {
    pair: TreeHeckePair,
    coeffs: BTreeMap<usize, Rat>,
}

impl HeckeElement {
    pub fn zero(pair: TreeHeckePair) -> Self {
        HeckeElement {
            pair,
            coeffs: BTreeMap::new(),
        }
    }

    /// The basis element A_r.
    pub fn basis(pair: TreeHeckePair, r: usize) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(r, Rat::one());
        HeckeElement { pair, coeffs }
    }

    pub fn from_coeffs(
        pair: TreeHeckePair,
        coeffs: impl IntoIterator<Item = (usize, Rat)>,
    ) -> Self {
        let mut map: BTreeMap<usize, Rat> = BTreeMap::new();
        for (r, c) in coeffs {
            if c.is_zero() {
                continue;
            }
            let entry = map.entry(r).or_insert_with(Rat::zero);
            *entry = entry.clone() + c;
        }
        map.retain(|_, c| !c.is_zero());
        HeckeElement { pair, coeffs: map }
    }

    pub fn pair(&self) -> TreeHeckePair {
        self.pair
    }

    pub fn coeff(&self, r: usize) -> Rat {
        self.coeffs.get(&r).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.coeffs.iter().map(|(&r, c)| (r, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest radius in the support, or `None` for the zero element.
    pub fn support_radius(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    /// ℓ¹ norm of the coefficient vector.
    pub fn l1_norm(&self) -> Rat {
        self.coeffs
            .values()
            .fold(Rat::zero(), |acc, c| acc + c.abs())
    }

    /// Row-sum bound of π of this element: Σ |c_r| · ν(A_r).
    pub fn operator_l1_bound(&self) -> Rat {
        self.coeffs.iter().fold(Rat::zero(), |acc, (&r, c)| {
            acc + c.abs() * Rat::from_integer(self.pair.sphere_size(r).into())
        })
    }

    pub fn add(&self, rhs: &HeckeElement) -> Result<HeckeElement, HeckeError> {
        if self.pair != rhs.pair {
            return Err(HeckeError::PairMismatch);
        }
        Ok(HeckeElement::from_coeffs(
            self.pair,
            self.coeffs()
                .map(|(r, c)| (r, c.clone()))
                .chain(rhs.coeffs().map(|(r, c)| (r, c.clone()))),
        ))
    }

    pub fn scale(&self, c: &Rat) -> HeckeElement {
        HeckeElement::from_coeffs(
            self.pair,
            self.coeffs().map(|(r, v)| (r, v.clone() * c.clone())),
        )
    }

    /// Parses the CLI element syntax, e.g. `"A0+3*A2"` or `"2*A1-A3"`.
    pub fn parse_str(pair: TreeHeckePair, s: &str) -> Option<HeckeElement> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut terms: Vec<(usize, Rat)> = Vec::new();
        let normalised = compact.replace('-', "+-");
        for term in normalised.split('+') {
            if term.is_empty() {
                continue;
            }
            let (coeff_str, radius_str) = match term.split_once('*') {
                Some((c, a)) => (c, a),
                None => {
                    if let Some(rest) = term.strip_prefix('-') {
                        ("-1", rest)
                    } else {
                        ("1", term)
                    }
                }
            };
            let radius: usize = radius_str.strip_prefix(['A', 'a'])?.parse().ok()?;
            let coeff = crate::exactmath::rat_from_string(coeff_str)?;
            terms.push((radius, coeff));
        }
        Some(HeckeElement::from_coeffs(pair, terms))
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (r, c) in &self.coeffs {
            if !first {
                write!(f, "+")?;
            }
            first = false;
            if c.is_one() {
                write!(f, "A{r}")?;
            } else {
                write!(f, "{}*A{r}", crate::exactmath::rat_to_string(c))?;
            }
        }
        Ok(())
    }
}

/// Multiplies by A₁ on the left using the radius recursion.
fn mul_by_a1(elem: &HeckeElement) -> HeckeElement {
    let q = Rat::from_integer(elem.pair.q.into());
    let q_plus_1 = Rat::from_integer((elem.pair.q + 1).into());
    let mut out: Vec<(usize, Rat)> = Vec::new();
    for (r, c) in elem.coeffs() {
        match r {
            0 => out.push((1, c.clone())),
            1 => {
                out.push((2, c.clone()));
                out.push((0, c.clone() * q_plus_1.clone()));
            }
            _ => {
                out.push((r + 1, c.clone()));
                out.push((r - 1, c.clone() * q.clone()));
            }
        }
    }
    HeckeElement::from_coeffs(elem.pair, out)
}

/// Integer coefficients of A_r as a polynomial in A₁:
/// p₀ = 1, p₁ = x, p₂ = x² − (q+1), p_{r+1} = x·p_r − q·p_{r−1}.
fn radius_in_a1_coeffs(q: u64, r: usize) -> Vec<Rat> {
    let mut p_prev: Vec<Rat> = vec![Rat::one()]; // p_0
    if r == 0 {
        return p_prev;
    }
    let mut p_cur: Vec<Rat> = vec![Rat::zero(), Rat::one()]; // p_1
    let qr = Rat::from_integer(q.into());
    for k in 1..r {
        // next = x * p_cur - c * p_prev, with c = q+1 at the first step
        let c = if k == 1 {
            Rat::from_integer((q + 1).into())
        } else {
            qr.clone()
        };
        let mut next = vec![Rat::zero(); p_cur.len() + 1];
        for (i, v) in p_cur.iter().enumerate() {
            next[i + 1] = next[i + 1].clone() + v.clone();
        }
        for (i, v) in p_prev.iter().enumerate() {
            next[i] = next[i].clone() - c.clone() * v.clone();
        }
        p_prev = p_cur;
        p_cur = next;
    }
    p_cur
}

/// Convolution product in the tree Hecke algebra, with exact rational
/// bookkeeping.
pub fn tree_mul(a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement, HeckeError> {
    if a.pair != b.pair {
        return Err(HeckeError::PairMismatch);
    }
    let mut result = HeckeElement::zero(a.pair);
    for (r, ca) in a.coeffs() {
        // A_r * b = Σ_k p_r[k] (A_1)^k b
        let poly = radius_in_a1_coeffs(a.pair.q, r);
        let mut power = b.clone(); // (A_1)^0 b
        let mut partial = HeckeElement::zero(a.pair);
        for (k, ck) in poly.iter().enumerate() {
            if k > 0 {
                power = mul_by_a1(&power);
            }
            if !ck.is_zero() {
                partial = partial.add(&power.scale(ck))?;
            }
        }
        result = result.add(&partial.scale(ca))?;
    }
    Ok(result)
}

/// Trace: the coefficient of A₀.
pub fn trace(a: &HeckeElement) -> Rat {
    a.coeff(0)
}

/// The involution `1_{KgK} ↦ 1_{Kg⁻¹K}`.  Every radius class is
/// self-inverse (d(g·x₀,x₀) = d(g⁻¹·x₀,x₀)) and coefficients are real,
/// so this is the identity map on elements.
pub fn involution(a: &HeckeElement) -> HeckeElement {
    a.clone()
}

/// Square matrix over the tree Hecke algebra (entries share one pair).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeMatrix {
    pair: TreeHeckePair,
    n: usize,
    entries: Vec<HeckeElement>, // row-major n*n
}

impl HeckeMatrix {
    pub fn new(
        pair: TreeHeckePair,
        n: usize,
        entries: Vec<HeckeElement>,
    ) -> Result<Self, HeckeError> {
        assert_eq!(entries.len(), n * n, "entry count must be n^2");
        if entries.iter().any(|e| e.pair != pair) {
            return Err(HeckeError::PairMismatch);
        }
        Ok(HeckeMatrix { pair, n, entries })
    }

    /// The 1×1 matrix wrapping a single element.
    pub fn scalar(elem: HeckeElement) -> Self {
        HeckeMatrix {
            pair: elem.pair,
            n: 1,
            entries: vec![elem],
        }
    }

    /// Diagonal matrix from the given elements.
    pub fn diagonal(pair: TreeHeckePair, diag: Vec<HeckeElement>) -> Result<Self, HeckeError> {
        let n = diag.len();
        let mut entries = vec![HeckeElement::zero(pair); n * n];
        for (i, e) in diag.into_iter().enumerate() {
            if e.pair != pair {
                return Err(HeckeError::PairMismatch);
            }
            entries[i * n + i] = e;
        }
        Ok(HeckeMatrix { pair, n, entries })
    }

    pub fn identity(pair: TreeHeckePair, n: usize) -> Self {
        Self::diagonal(pair, vec![HeckeElement::basis(pair, 0); n]).unwrap()
    }

    pub fn pair(&self) -> TreeHeckePair {
        self.pair
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &HeckeElement {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[HeckeElement] {
        &self.entries
    }

    /// Adjoint: involuted transpose.
    pub fn adjoint(&self) -> HeckeMatrix {
        let mut entries = Vec::with_capacity(self.n * self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                entries.push(involution(self.entry(j, i)));
            }
        }
        HeckeMatrix {
            pair: self.pair,
            n: self.n,
            entries,
        }
    }

    pub fn is_self_adjoint(&self) -> bool {
        *self == self.adjoint()
    }

    pub fn mul(&self, rhs: &HeckeMatrix) -> Result<HeckeMatrix, HeckeError> {
        if self.pair != rhs.pair || self.n != rhs.n {
            return Err(HeckeError::PairMismatch);
        }
        let mut entries = Vec::with_capacity(self.n * self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = HeckeElement::zero(self.pair);
                for k in 0..self.n {
                    acc = acc.add(&tree_mul(self.entry(i, k), rhs.entry(k, j))?)?;
                }
                entries.push(acc);
            }
        }
        Ok(HeckeMatrix {
            pair: self.pair,
            n: self.n,
            entries,
        })
    }

    /// Matrix trace composed with the Hecke trace.
    pub fn trace(&self) -> Rat {
        (0..self.n).fold(Rat::zero(), |acc, i| acc + trace(self.entry(i, i)))
    }

    /// Largest support radius over all entries (0 for the zero matrix).
    pub fn support_radius(&self) -> usize {
        self.entries
            .iter()
            .filter_map(HeckeElement::support_radius)
            .max()
            .unwrap_or(0)
    }

    /// Norm bound c = n² · max ℓ¹-norm of the entries; every spectral
    /// measure attached to this matrix is supported in [−c, c].
    pub fn norm_bound(&self) -> Rat {
        let max_l1 = self
            .entries
            .iter()
            .map(HeckeElement::l1_norm)
            .max()
            .unwrap_or_else(Rat::zero);
        max_l1 * Rat::from_integer(((self.n * self.n) as u64).into())
    }
}

/// Moment sequence `tr(T^j)` for `j = 0..=k_max`, computed by repeated
/// exact convolution.  Requires `T` self-adjoint.
pub fn moments(t: &HeckeMatrix, k_max: usize) -> Result<Vec<Rat>, HeckeError> {
    if !t.is_self_adjoint() {
        return Err(HeckeError::NotSelfAdjoint);
    }
    let mut out = Vec::with_capacity(k_max + 1);
    let mut power = HeckeMatrix::identity(t.pair, t.n);
    out.push(power.trace());
    for _ in 1..=k_max {
        power = power.mul(t)?;
        out.push(power.trace());
    }
    Ok(out)
}

/// Rooted (q+1)-regular tree truncated at a given depth, in BFS order.
pub struct TreeBall {
    pub q: u64,
    pub radius: usize,
    pub parent: Vec<u32>,
    pub depth: Vec<u32>,
    /// First vertex index of each depth level (`levels[d]..levels[d+1]`).
    pub levels: Vec<usize>,
}

impl TreeBall {
    pub fn new(q: u64, radius: usize) -> Self {
        let mut parent = vec![0u32];
        let mut depth = vec![0u32];
        let mut levels = vec![0usize, 1];
        for d in 1..=radius {
            let (start, end) = (levels[d - 1], levels[d]);
            for v in start..end {
                let children = if d == 1 { q + 1 } else { q };
                for _ in 0..children {
                    parent.push(v as u32);
                    depth.push(d as u32);
                }
            }
            levels.push(parent.len());
        }
        TreeBall {
            q,
            radius,
            parent,
            depth,
            levels,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn sphere(&self, d: usize) -> std::ops::Range<usize> {
        self.levels[d]..self.levels[d + 1]
    }

    /// Tree distance via the lowest common ancestor.
    pub fn dist(&self, mut a: usize, mut b: usize) -> usize {
        let mut total = 0usize;
        while self.depth[a] > self.depth[b] {
            a = self.parent[a] as usize;
            total += 1;
        }
        while self.depth[b] > self.depth[a] {
            b = self.parent[b] as usize;
            total += 1;
        }
        while a != b {
            a = self.parent[a] as usize;
            b = self.parent[b] as usize;
            total += 2;
        }
        total
    }
}

/// Brute-force structure constants `b_{r,s}^u` on a tree ball: for a
/// vertex w at distance u from the root, the number of vertices v with
/// d(root, v) = r and d(v, w) = s.  The count is verified constant over
/// each sphere (fully for small spheres, on a deterministic sample for
/// large ones) and returned as a map u → count with zeros omitted.
pub fn structure_constants_oracle(
    pair: TreeHeckePair,
    r: usize,
    s: usize,
    ball_radius: usize,
) -> Result<BTreeMap<usize, u64>, HeckeError> {
    if ball_radius < r + s {
        return Err(HeckeError::InsufficientRadius {
            radius: ball_radius,
            needed: r + s,
        });
    }
    let ball = TreeBall::new(pair.q, ball_radius);
    let r_sphere: Vec<usize> = ball.sphere(r).collect();
    let mut table = BTreeMap::new();
    for u in 0..=(r + s) {
        let sphere: Vec<usize> = ball.sphere(u).collect();
        let witnesses: Vec<usize> = if sphere.len() <= 256 {
            sphere
        } else {
            let stride = sphere.len() / 64;
            sphere.into_iter().step_by(stride.max(1)).take(64).collect()
        };
        let mut count: Option<u64> = None;
        for &w in &witnesses {
            let c = r_sphere.iter().filter(|&&v| ball.dist(v, w) == s).count() as u64;
            match count {
                None => count = Some(c),
                Some(prev) if prev != c => {
                    return Err(HeckeError::NonconstantOnSphere { u });
                }
                _ => {}
            }
        }
        let c = count.expect("sphere is nonempty within the ball");
        if c != 0 {
            table.insert(u, c);
        }
    }
    Ok(table)
}

/// π(T) truncated to a tree ball: an integer matrix over
/// (block index, ball vertex) pairs, flattened as `i * ball.len() + v`.
/// Rows whose vertex is too close to the ball boundary to see the full
/// support of T are marked incomplete.
pub struct BallOperator {
    pub n: usize,
    pub ball: TreeBall,
    pub matrix: Vec<Vec<i64>>,
    pub row_complete: Vec<bool>,
}

impl BallOperator {
    /// `Σ_i ⟨π(T)^k (1_K e_i), 1_K e_i⟩`, the root block-diagonal entry
    /// of the k-fold product; exact while k · support ≤ radius.
    pub fn root_trace_of_power(&self, k: usize) -> i64 {
        let size = self.matrix.len();
        let b = self.ball.len();
        let mut acc = 0i64;
        for i in 0..self.n {
            let root = i * b;
            let mut vec = vec![0i64; size];
            vec[root] = 1;
            for _ in 0..k {
                let mut next = vec![0i64; size];
                for (x, &c) in vec.iter().enumerate() {
                    if c == 0 {
                        continue;
                    }
                    for (y, &m) in self.matrix[x].iter().enumerate() {
                        if m != 0 {
                            next[y] += c * m;
                        }
                    }
                }
                vec = next;
            }
            acc += vec[root];
        }
        acc
    }
}

/// Matrix of π(T) restricted to the ball of radius R.
///
/// Requires `R ≥ max support radius + 1` and integer coefficients.
pub fn operator_on_ball(t: &HeckeMatrix, radius: usize) -> Result<BallOperator, HeckeError> {
    let support = t.support_radius();
    if radius < support + 1 {
        return Err(HeckeError::InsufficientRadius {
            radius,
            needed: support + 1,
        });
    }
    if t.entries.iter().any(|e| !e.is_integral()) {
        return Err(HeckeError::NonIntegralCoefficient);
    }
    let ball = TreeBall::new(t.pair.q, radius);
    let b = ball.len();
    let size = t.n * b;
    let mut matrix = vec![vec![0i64; size]; size];
    // π(A_r)[v, w] = [d(v, w) = r]; block (i, j) carries T_ij
    for v in 0..b {
        for w in 0..b {
            let d = ball.dist(v, w);
            if d > support {
                continue;
            }
            for i in 0..t.n {
                for j in 0..t.n {
                    let c = t.entry(i, j).coeff(d);
                    if !c.is_zero() {
                        matrix[i * b + v][j * b + w] = rat_to_i64(&c);
                    }
                }
            }
        }
    }
    let row_complete: Vec<bool> = (0..size)
        .map(|x| (ball.depth[x % b] as usize) + support <= radius)
        .collect();
    Ok(BallOperator {
        n: t.n,
        ball,
        matrix,
        row_complete,
    })
}

fn rat_to_i64(c: &Rat) -> i64 {
    debug_assert!(c.is_integer());
    let s = c.to_integer().to_string();
    s.parse().expect("coefficient fits in i64")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, rat_int};

    fn a(pair: TreeHeckePair, r: usize) -> HeckeElement {
        HeckeElement::basis(pair, r)
    }

    #[test]
    fn unit_acts_trivially() {
        let pair = TreeHeckePair::new(2);
        assert_eq!(tree_mul(&a(pair, 0), &a(pair, 3)).unwrap(), a(pair, 3));
        assert_eq!(tree_mul(&a(pair, 3), &a(pair, 0)).unwrap(), a(pair, 3));
    }

    #[test]
    fn a1_squared_at_q2() {
        let pair = TreeHeckePair::new(2);
        let prod = tree_mul(&a(pair, 1), &a(pair, 1)).unwrap();
        let expect = HeckeElement::from_coeffs(pair, [(2, rat_int(1)), (0, rat_int(3))]);
        assert_eq!(prod, expect);
    }

    #[test]
    fn a1_times_a2_at_q2() {
        let pair = TreeHeckePair::new(2);
        let prod = tree_mul(&a(pair, 1), &a(pair, 2)).unwrap();
        let expect = HeckeElement::from_coeffs(pair, [(3, rat_int(1)), (1, rat_int(2))]);
        assert_eq!(prod, expect);
    }

    #[test]
    fn q1_line_recursion() {
        let pair = TreeHeckePair::new(1);
        let prod = tree_mul(&a(pair, 1), &a(pair, 4)).unwrap();
        let expect = HeckeElement::from_coeffs(pair, [(5, rat_int(1)), (3, rat_int(1))]);
        assert_eq!(prod, expect);
    }

    #[test]
    fn pair_mismatch_rejected() {
        let p2 = TreeHeckePair::new(2);
        let p3 = TreeHeckePair::new(3);
        assert_eq!(tree_mul(&a(p2, 1), &a(p3, 1)), Err(HeckeError::PairMismatch));
    }

    #[test]
    fn oracle_small_cases() {
        let pair = TreeHeckePair::new(2);
        let t = structure_constants_oracle(pair, 1, 1, 4).unwrap();
        assert_eq!(t, BTreeMap::from([(0, 3), (2, 1)]));
        let t = structure_constants_oracle(pair, 0, 5, 6).unwrap();
        assert_eq!(t, BTreeMap::from([(5, 1)]));
        let t = structure_constants_oracle(pair, 1, 2, 4).unwrap();
        assert_eq!(t, BTreeMap::from([(1, 2), (3, 1)]));
    }

    #[test]
    fn oracle_rejects_small_ball() {
        let pair = TreeHeckePair::new(2);
        assert!(matches!(
            structure_constants_oracle(pair, 3, 3, 5),
            Err(HeckeError::InsufficientRadius { .. })
        ));
    }

    #[test]
    fn oracle_matches_tree_mul_sample() {
        for q in [1u64, 2] {
            let pair = TreeHeckePair::new(q);
            for r in 0..=3 {
                for s in 0..=3 {
                    let table = structure_constants_oracle(pair, r, s, r + s).unwrap();
                    let prod = tree_mul(&a(pair, r), &a(pair, s)).unwrap();
                    let from_mul: BTreeMap<usize, u64> = prod
                        .coeffs()
                        .map(|(u, c)| {
                            assert!(c.is_integer() && c.is_positive());
                            (u, u64::try_from(c.to_integer()).unwrap())
                        })
                        .collect();
                    assert_eq!(from_mul, table, "q={q} r={r} s={s}");
                }
            }
        }
    }

    #[test]
    fn trace_values() {
        let pair = TreeHeckePair::new(2);
        assert_eq!(trace(&a(pair, 0)), rat_int(1));
        assert_eq!(trace(&a(pair, 7)), rat_int(0));
        let prod = tree_mul(&a(pair, 1), &a(pair, 1)).unwrap();
        assert_eq!(trace(&prod), rat_int(3));
    }

    #[test]
    fn involution_fixes_elements() {
        let pair = TreeHeckePair::new(3);
        assert_eq!(involution(&a(pair, 3)), a(pair, 3));
        let e = HeckeElement::from_coeffs(pair, [(1, rat_int(2)), (2, rat_int(1))]);
        assert_eq!(involution(&e), e);
    }

    #[test]
    fn involution_antihomomorphism() {
        let pair = TreeHeckePair::new(2);
        let x = HeckeElement::from_coeffs(pair, [(1, rat_int(2)), (3, rat_int(-1))]);
        let y = HeckeElement::from_coeffs(pair, [(2, rat_int(1)), (0, rat_int(4))]);
        let lhs = involution(&tree_mul(&x, &y).unwrap());
        let rhs = tree_mul(&involution(&y), &involution(&x)).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn moments_single_a1() {
        let pair = TreeHeckePair::new(2);
        let t = HeckeMatrix::scalar(a(pair, 1));
        let m = moments(&t, 4).unwrap();
        assert_eq!(
            m,
            vec![rat_int(1), rat_int(0), rat_int(3), rat_int(0), rat_int(15)]
        );
    }

    #[test]
    fn moments_identity() {
        let pair = TreeHeckePair::new(3);
        let t = HeckeMatrix::scalar(a(pair, 0));
        assert_eq!(moments(&t, 3).unwrap(), vec![rat_int(1); 4]);
    }

    #[test]
    fn moments_diagonal_doubles() {
        let pair = TreeHeckePair::new(2);
        let t = HeckeMatrix::diagonal(pair, vec![a(pair, 1), a(pair, 1)]).unwrap();
        assert_eq!(
            moments(&t, 2).unwrap(),
            vec![rat_int(2), rat_int(0), rat_int(6)]
        );
    }

    #[test]
    fn moments_require_self_adjoint() {
        let pair = TreeHeckePair::new(2);
        let entries = vec![
            HeckeElement::zero(pair),
            a(pair, 1),
            HeckeElement::zero(pair),
            HeckeElement::zero(pair),
        ];
        let t = HeckeMatrix::new(pair, 2, entries).unwrap();
        assert_eq!(moments(&t, 2), Err(HeckeError::NotSelfAdjoint));
    }

    #[test]
    fn ball_operator_identity_and_adjacency() {
        let pair = TreeHeckePair::new(2);
        let id = operator_on_ball(&HeckeMatrix::scalar(a(pair, 0)), 1).unwrap();
        for (x, row) in id.matrix.iter().enumerate() {
            for (y, &v) in row.iter().enumerate() {
                assert_eq!(v, i64::from(x == y));
            }
        }
        let adj = operator_on_ball(&HeckeMatrix::scalar(a(pair, 1)), 1).unwrap();
        let root_row = &adj.matrix[0];
        assert_eq!(root_row.iter().sum::<i64>(), 3);
        assert_eq!(root_row[0], 0);
    }

    #[test]
    fn trace_equals_root_matrix_coefficient() {
        let pair = TreeHeckePair::new(2);
        let t = HeckeMatrix::scalar(a(pair, 1));
        let op = operator_on_ball(&t, 3).unwrap();
        // <pi(A1^2) 1_K, 1_K> = 3 = trace(A1 * A1)
        assert_eq!(op.root_trace_of_power(2), 3);
        let prod = tree_mul(&a(pair, 1), &a(pair, 1)).unwrap();
        assert_eq!(trace(&prod), rat_int(3));
    }

    #[test]
    fn parse_and_display_elements() {
        let pair = TreeHeckePair::new(2);
        let e = HeckeElement::parse_str(pair, "A0+3*A2").unwrap();
        assert_eq!(e.coeff(0), rat_int(1));
        assert_eq!(e.coeff(2), rat_int(3));
        let e = HeckeElement::parse_str(pair, "2*A1-A3").unwrap();
        assert_eq!(e.coeff(1), rat_int(2));
        assert_eq!(e.coeff(3), rat_int(-1));
        let e = HeckeElement::parse_str(pair, "1/2*A1").unwrap();
        assert_eq!(e.coeff(1), rat(1, 2));
        assert!(HeckeElement::parse_str(pair, "B2").is_none());
        let e = HeckeElement::from_coeffs(pair, [(0, rat_int(1)), (2, rat_int(3))]);
        assert_eq!(e.to_string(), "A0+3*A2");
    }

    #[test]
    fn norm_bound_formula() {
        let pair = TreeHeckePair::new(2);
        let e = HeckeElement::from_coeffs(pair, [(1, rat_int(2)), (2, rat_int(-1))]);
        let t = HeckeMatrix::scalar(e);
        assert_eq!(t.norm_bound(), rat_int(3));
        let t2 = HeckeMatrix::diagonal(
            pair,
            vec![a(pair, 1), HeckeElement::from_coeffs(pair, [(0, rat_int(5))])],
        )
        .unwrap();
        assert_eq!(t2.norm_bound(), rat_int(20)); // max l1 = 5, n^2 = 4
    }
}
