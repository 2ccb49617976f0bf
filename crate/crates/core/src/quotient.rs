//! Commutative quotient rings used as embedding codomains: the square-free
//! polynomial quotient `K[z1..zm]/(z1^2..zm^2)`, the truncated adjunction
//! `R[z]/(z^t)` over an arbitrary coefficient ring, and a degree-capped
//! multivariate polynomial ring used to host finite-order variable
//! permutations.

use std::fmt;

use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::ring::{sample_coeff, Ring};
use crate::terms::{self, Terms};

fn check_vars(m: u32) -> Result<()> {
    if (1..=16).contains(&m) {
        Ok(())
    } else {
        Err(Error::GeneratorCountOutOfRange(m, 16))
    }
}

/// An element of `K[z1..zm]/(z1^2, ..., zm^2)`: a square-free polynomial.
///
/// Same bitmask term map as a Grassmann element, with the sign rule replaced
/// by the constant +1; products of monomials sharing a variable vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareFreePoly {
    m: u32,
    terms: Terms,
}

impl SquareFreePoly {
    pub fn zero(m: u32) -> Result<Self> {
        check_vars(m)?;
        Ok(Self { m, terms: Vec::new() })
    }

    pub fn one(m: u32) -> Result<Self> {
        Self::scalar(m, Rational::one())
    }

    pub fn scalar(m: u32, c: Rational) -> Result<Self> {
        check_vars(m)?;
        let terms = if c.is_zero() { Vec::new() } else { vec![(0, c)] };
        Ok(Self { m, terms })
    }

    /// The variable `z_index`, 1-based.
    pub fn variable(m: u32, index: u32) -> Result<Self> {
        Self::monomial(m, 1 << (index - 1), Rational::one())
    }

    pub fn monomial(m: u32, mask: u32, coeff: Rational) -> Result<Self> {
        Self::from_terms(m, vec![(mask, coeff)])
    }

    pub fn from_terms(m: u32, raw: Vec<(u32, Rational)>) -> Result<Self> {
        check_vars(m)?;
        for (mask, _) in &raw {
            if mask >> m != 0 {
                return Err(Error::GeneratorCountOutOfRange(32 - mask.leading_zeros(), m));
            }
        }
        Ok(Self { m, terms: terms::normalize(raw) })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn terms(&self) -> &[(u32, Rational)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mask: u32) -> Rational {
        self.terms
            .binary_search_by_key(&mask, |(m, _)| *m)
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(0)
    }

    fn check_same_m(&self, other: &Self) -> Result<()> {
        if self.m == other.m {
            Ok(())
        } else {
            Err(Error::VariableCountMismatch(self.m, other.m))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_m(other)?;
        Ok(Self { m: self.m, terms: terms::add(&self.terms, &other.terms) })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self { m: self.m, terms: terms::neg(&self.terms) }
    }

    pub fn scalar_mul(&self, c: &Rational) -> Self {
        Self { m: self.m, terms: terms::scalar_mul(c, &self.terms) }
    }

    /// Commutative product; overlapping variable masks vanish, no signs.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_m(other)?;
        let terms = terms::mul(&self.terms, &other.terms, |a, b| {
            if a & b != 0 {
                None
            } else {
                Some((a | b, false))
            }
        });
        Ok(Self { m: self.m, terms })
    }

    /// Coercion into the quotient on `m2 >= m` variables.
    pub fn widen(&self, m2: u32) -> Result<Self> {
        check_vars(m2)?;
        if m2 < self.m {
            return Err(Error::VariableCountMismatch(self.m, m2));
        }
        Ok(Self { m: m2, terms: self.terms.clone() })
    }
}

impl fmt::Display for SquareFreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", terms::render(&self.terms, |i| format!("z{i}")))
    }
}

/// How a square-free ring names its variables when printing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VarStyle {
    /// `z1, z2, ...`
    Indexed,
    /// `x, y, z` for the first three variables (demo embedding of the
    /// 3-generator algebra).
    Xyz,
}

/// Ring descriptor for `K[z1..zm]/(z1^2, ..., zm^2)`.
#[derive(Debug, Clone, Copy, Eq)]
pub struct SquareFreeRing {
    m: u32,
    style: VarStyle,
}

/// The variable naming style is presentation only; two descriptors denote
/// the same ring whenever the variable counts agree.
impl PartialEq for SquareFreeRing {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m
    }
}

impl SquareFreeRing {
    pub fn new(m: u32) -> Result<Self> {
        check_vars(m)?;
        Ok(Self { m, style: VarStyle::Indexed })
    }

    pub fn new_xyz(m: u32) -> Result<Self> {
        if m > 3 {
            return Err(Error::GeneratorCountOutOfRange(m, 3));
        }
        check_vars(m)?;
        Ok(Self { m, style: VarStyle::Xyz })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn style(&self) -> VarStyle {
        self.style
    }

    pub fn variable(&self, index: u32) -> SquareFreePoly {
        SquareFreePoly::variable(self.m, index).expect("index validated by caller")
    }

    pub fn var_name(&self, index: u32) -> String {
        match (self.style, index) {
            (VarStyle::Xyz, 1) => "x".to_string(),
            (VarStyle::Xyz, 2) => "y".to_string(),
            (VarStyle::Xyz, 3) => "z".to_string(),
            _ => format!("z{index}"),
        }
    }

    /// The relabeling isomorphism
    /// `(K[z1..zm]/(zi^2))[z]/(z^2) -> K[z1..z(m+1)]/(zi^2)`, sending the
    /// adjoined `z` to `z_(m+1)`. Requires truncation order 2.
    pub fn flatten_adjunction(
        &self,
        p: &TruncatedPoly<SquareFreePoly>,
    ) -> Result<SquareFreePoly> {
        if p.coeffs.len() != 2 {
            return Err(Error::TruncationOrderMismatch(p.coeffs.len(), 2));
        }
        let wide = self.m + 1;
        let r = p.coeffs[0].widen(wide)?;
        let s = p.coeffs[1].widen(wide)?;
        let new_var = SquareFreePoly::variable(wide, wide)?;
        r.add(&s.mul(&new_var)?)
    }
}

impl Ring for SquareFreeRing {
    type Elem = SquareFreePoly;

    fn name(&self) -> String {
        format!("sqfree {}", self.m)
    }

    fn zero(&self) -> SquareFreePoly {
        SquareFreePoly { m: self.m, terms: Vec::new() }
    }

    fn one(&self) -> SquareFreePoly {
        SquareFreePoly { m: self.m, terms: vec![(0, Rational::one())] }
    }

    fn is_zero(&self, a: &SquareFreePoly) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &SquareFreePoly, b: &SquareFreePoly) -> SquareFreePoly {
        a.add(b).expect("ring elements share m")
    }

    fn neg(&self, a: &SquareFreePoly) -> SquareFreePoly {
        a.neg()
    }

    fn mul(&self, a: &SquareFreePoly, b: &SquareFreePoly) -> SquareFreePoly {
        a.mul(b).expect("ring elements share m")
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn contains(&self, a: &SquareFreePoly) -> bool {
        a.m == self.m
    }

    fn from_rational(&self, c: &Rational) -> SquareFreePoly {
        SquareFreePoly::scalar(self.m, c.clone()).expect("m validated at construction")
    }

    fn scalar_mul(&self, c: &Rational, a: &SquareFreePoly) -> SquareFreePoly {
        a.scalar_mul(c)
    }

    fn as_rational(&self, a: &SquareFreePoly) -> Option<Rational> {
        terms::as_scalar(&a.terms)
    }

    fn render(&self, a: &SquareFreePoly) -> String {
        terms::render(&a.terms, |i| self.var_name(i))
    }

    fn coeff_vector(&self, a: &SquareFreePoly) -> Vec<(u64, Rational)> {
        a.terms.iter().map(|(m, c)| (*m as u64, c.clone())).collect()
    }

    fn sample(&self, rng: &mut ChaCha8Rng, coeff_bound: i64) -> SquareFreePoly {
        let raw = (0..(1u32 << self.m))
            .map(|mask| (mask, Rational::from_integer(sample_coeff(rng, coeff_bound))))
            .collect();
        SquareFreePoly { m: self.m, terms: terms::normalize(raw) }
    }
}

/// A truncated polynomial `r_0 + r_1 z + ... + r_(t-1) z^(t-1)` over some
/// coefficient ring, with `z^t = 0` and `z` central. Always exactly `t`
/// stored coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedPoly<E> {
    coeffs: Vec<E>,
}

impl<E> TruncatedPoly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn t(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, k: usize) -> &E {
        &self.coeffs[k]
    }
}

/// Ring descriptor for `R[z]/(z^t)` over a coefficient ring `R`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedPolyRing<R: Ring> {
    base: R,
    t: usize,
}

impl<R: Ring> TruncatedPolyRing<R> {
    pub fn new(base: R, t: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::SizeLimit("truncation order must be >= 1".into()));
        }
        Ok(Self { base, t })
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Builds a polynomial from up to `t` coefficients, padding with zeros.
    pub fn poly(&self, mut coeffs: Vec<R::Elem>) -> Result<TruncatedPoly<R::Elem>> {
        if coeffs.len() > self.t {
            return Err(Error::TruncationOrderMismatch(coeffs.len(), self.t));
        }
        while coeffs.len() < self.t {
            coeffs.push(self.base.zero());
        }
        Ok(TruncatedPoly { coeffs })
    }

    /// The residue class of `z` (zero when `t = 1`).
    pub fn z(&self) -> TruncatedPoly<R::Elem> {
        let mut coeffs = vec![self.base.zero(); self.t];
        if self.t > 1 {
            coeffs[1] = self.base.one();
        }
        TruncatedPoly { coeffs }
    }

    pub fn constant(&self, c: R::Elem) -> TruncatedPoly<R::Elem> {
        let mut coeffs = vec![self.base.zero(); self.t];
        coeffs[0] = c;
        TruncatedPoly { coeffs }
    }

    /// `c * z^k`, zero when `k >= t`.
    pub fn monomial(&self, c: R::Elem, k: usize) -> TruncatedPoly<R::Elem> {
        let mut coeffs = vec![self.base.zero(); self.t];
        if k < self.t {
            coeffs[k] = c;
        }
        TruncatedPoly { coeffs }
    }
}

impl<R: Ring> Ring for TruncatedPolyRing<R> {
    type Elem = TruncatedPoly<R::Elem>;

    fn name(&self) -> String {
        format!("{}[z]/(z^{})", self.base.name(), self.t)
    }

    fn zero(&self) -> Self::Elem {
        TruncatedPoly { coeffs: vec![self.base.zero(); self.t] }
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.coeffs.iter().all(|c| self.base.is_zero(c))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        debug_assert_eq!(a.coeffs.len(), self.t);
        debug_assert_eq!(b.coeffs.len(), self.t);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| self.base.add(x, y))
            .collect();
        TruncatedPoly { coeffs }
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        TruncatedPoly { coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect() }
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let mut coeffs = vec![self.base.zero(); self.t];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if i + j >= self.t {
                    break;
                }
                if self.base.is_zero(y) {
                    continue;
                }
                coeffs[i + j] = self.base.add(&coeffs[i + j], &self.base.mul(x, y));
            }
        }
        TruncatedPoly { coeffs }
    }

    fn is_commutative(&self) -> bool {
        self.base.is_commutative()
    }

    fn contains(&self, a: &Self::Elem) -> bool {
        a.coeffs.len() == self.t && a.coeffs.iter().all(|c| self.base.contains(c))
    }

    fn from_rational(&self, c: &Rational) -> Self::Elem {
        self.constant(self.base.from_rational(c))
    }

    fn scalar_mul(&self, c: &Rational, a: &Self::Elem) -> Self::Elem {
        TruncatedPoly {
            coeffs: a.coeffs.iter().map(|x| self.base.scalar_mul(c, x)).collect(),
        }
    }

    fn as_rational(&self, a: &Self::Elem) -> Option<Rational> {
        for c in &a.coeffs[1..] {
            if !self.base.is_zero(c) {
                return None;
            }
        }
        self.base.as_rational(&a.coeffs[0])
    }

    fn render(&self, a: &Self::Elem) -> String {
        let mut parts = Vec::new();
        for (k, c) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(c) {
                continue;
            }
            let inner = format!("({})", self.base.render(c));
            parts.push(match k {
                0 => inner,
                1 => format!("{inner}*z"),
                _ => format!("{inner}*z^{k}"),
            });
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    fn coeff_vector(&self, a: &Self::Elem) -> Vec<(u64, Rational)> {
        let mut out = Vec::new();
        for (k, c) in a.coeffs.iter().enumerate() {
            for (key, coeff) in self.base.coeff_vector(c) {
                out.push(((k as u64) << 32 | key, coeff));
            }
        }
        out
    }

    fn sample(&self, rng: &mut ChaCha8Rng, coeff_bound: i64) -> Self::Elem {
        TruncatedPoly {
            coeffs: (0..self.t).map(|_| self.base.sample(rng, coeff_bound)).collect(),
        }
    }
}

/// Packed exponent vector: 8 bits per variable, variable 0 in the low byte.
fn total_degree(key: u64) -> u32 {
    key.to_le_bytes().iter().map(|b| *b as u32).sum()
}

/// An element of a degree-capped commutative polynomial ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CappedPoly {
    terms: Vec<(u64, Rational)>,
}

impl CappedPoly {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(u64, Rational)] {
        &self.terms
    }
}

/// `K[x_1..x_n]` with every monomial of total degree above `cap` identified
/// with zero (the quotient by the ideal those monomials span). Supports up
/// to 8 variables and cap <= 100, which keeps exponents one byte each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CappedPolyRing {
    nvars: u32,
    cap: u32,
    names: Vec<String>,
}

impl CappedPolyRing {
    pub fn new(names: &[&str], cap: u32) -> Result<Self> {
        let nvars = names.len() as u32;
        if !(1..=8).contains(&nvars) {
            return Err(Error::GeneratorCountOutOfRange(nvars, 8));
        }
        if cap > 100 {
            return Err(Error::SizeLimit(format!("degree cap {cap} exceeds 100")));
        }
        Ok(Self {
            nvars,
            cap,
            names: names.iter().map(|s| s.to_string()).collect(),
        })
    }

    pub fn nvars(&self) -> u32 {
        self.nvars
    }

    pub fn cap(&self) -> u32 {
        self.cap
    }

    /// The variable with the given 0-based index.
    pub fn var(&self, index: u32) -> CappedPoly {
        debug_assert!(index < self.nvars);
        CappedPoly { terms: vec![(1u64 << (8 * index), Rational::one())] }
    }

    /// Applies a permutation of the variables: exponent of variable `i`
    /// moves to variable `perm[i]`. Degree-preserving, hence a ring
    /// automorphism of the quotient.
    pub fn permute_vars(&self, perm: &[u32], a: &CappedPoly) -> CappedPoly {
        let terms = a
            .terms
            .iter()
            .map(|(key, c)| {
                let bytes = key.to_le_bytes();
                let mut out = [0u8; 8];
                for (i, &target) in perm.iter().enumerate() {
                    out[target as usize] = bytes[i];
                }
                (u64::from_le_bytes(out), c.clone())
            })
            .collect();
        CappedPoly { terms: terms::normalize(terms) }
    }
}

impl Ring for CappedPolyRing {
    type Elem = CappedPoly;

    fn name(&self) -> String {
        format!("poly[{}] cap {}", self.names.join(","), self.cap)
    }

    fn zero(&self) -> CappedPoly {
        CappedPoly { terms: Vec::new() }
    }

    fn one(&self) -> CappedPoly {
        CappedPoly { terms: vec![(0, Rational::one())] }
    }

    fn is_zero(&self, a: &CappedPoly) -> bool {
        a.terms.is_empty()
    }

    fn add(&self, a: &CappedPoly, b: &CappedPoly) -> CappedPoly {
        CappedPoly { terms: terms::add(&a.terms, &b.terms) }
    }

    fn neg(&self, a: &CappedPoly) -> CappedPoly {
        CappedPoly { terms: terms::neg(&a.terms) }
    }

    fn mul(&self, a: &CappedPoly, b: &CappedPoly) -> CappedPoly {
        let cap = self.cap;
        let terms = terms::mul(&a.terms, &b.terms, |x, y| {
            // Byte-wise exponent addition; per-variable degrees stay below
            // 2*cap <= 200 so bytes cannot carry.
            let sum = x + y;
            if total_degree(sum) > cap {
                None
            } else {
                Some((sum, false))
            }
        });
        CappedPoly { terms }
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn contains(&self, a: &CappedPoly) -> bool {
        a.terms.iter().all(|(key, _)| {
            key >> (8 * self.nvars) == 0 && total_degree(*key) <= self.cap
        })
    }

    fn from_rational(&self, c: &Rational) -> CappedPoly {
        if c.is_zero() {
            self.zero()
        } else {
            CappedPoly { terms: vec![(0, c.clone())] }
        }
    }

    fn scalar_mul(&self, c: &Rational, a: &CappedPoly) -> CappedPoly {
        CappedPoly { terms: terms::scalar_mul(c, &a.terms) }
    }

    fn as_rational(&self, a: &CappedPoly) -> Option<Rational> {
        terms::as_scalar(&a.terms)
    }

    fn render(&self, a: &CappedPoly) -> String {
        terms::render_with(&a.terms, |key| {
            let bytes = key.to_le_bytes();
            (0..self.nvars as usize)
                .filter(|i| bytes[*i] > 0)
                .map(|i| {
                    if bytes[i] == 1 {
                        self.names[i].clone()
                    } else {
                        format!("{}^{}", self.names[i], bytes[i])
                    }
                })
                .collect()
        })
    }

    fn coeff_vector(&self, a: &CappedPoly) -> Vec<(u64, Rational)> {
        a.terms.clone()
    }

    /// Independent coefficients on all monomials of total degree <= 1.
    fn sample(&self, rng: &mut ChaCha8Rng, coeff_bound: i64) -> CappedPoly {
        let mut raw = vec![(0u64, Rational::from_integer(sample_coeff(rng, coeff_bound)))];
        for v in 0..self.nvars {
            raw.push((
                1u64 << (8 * v),
                Rational::from_integer(sample_coeff(rng, coeff_bound)),
            ));
        }
        CappedPoly { terms: terms::normalize(raw) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RationalField as RationalFieldForTest;
    use rand::SeedableRng;

    fn z(m: u32, i: u32) -> SquareFreePoly {
        SquareFreePoly::variable(m, i).unwrap()
    }

    #[test]
    fn defining_relations() {
        let p = z(2, 1).mul(&z(2, 1)).unwrap();
        assert!(p.is_zero());
        let z1z2 = z(2, 1).mul(&z(2, 2)).unwrap();
        let z2z1 = z(2, 2).mul(&z(2, 1)).unwrap();
        assert_eq!(z1z2, z2z1);
        assert_eq!(z1z2, SquareFreePoly::monomial(2, 0b11, Rational::one()).unwrap());
    }

    #[test]
    fn geometric_cancellation() {
        // (1+z1)(1-z1) = 1 since z1^2 = 0.
        let one = SquareFreePoly::one(2).unwrap();
        let a = one.add(&z(2, 1)).unwrap();
        let b = one.sub(&z(2, 1)).unwrap();
        assert_eq!(a.mul(&b).unwrap(), one);
    }

    #[test]
    fn basis_size_is_2_to_m() {
        let ring = SquareFreeRing::new(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let s = ring.sample(&mut rng, 1_000_000);
        assert!(s.terms().len() <= 32);
    }

    #[test]
    fn truncated_degree2_products() {
        let ring = TruncatedPolyRing::new(RationalFieldForTest, 2).unwrap();
        let f = ring
            .poly(vec![Rational::from_integer(2), Rational::from_integer(3)])
            .unwrap();
        let g = ring
            .poly(vec![Rational::from_integer(5), Rational::from_integer(7)])
            .unwrap();
        // (2+3z)(5+7z) = 10 + (14+15)z, z^2 dropped
        let p = ring.mul(&f, &g);
        assert_eq!(
            p,
            ring.poly(vec![Rational::from_integer(10), Rational::from_integer(29)])
                .unwrap()
        );
        let zsq = ring.mul(&ring.z(), &ring.z());
        assert!(ring.is_zero(&zsq));
    }

    #[test]
    fn truncated_binomial_expansion() {
        // t=3 over Q: (1+z)^3 = 1 + 3z + 3z^2 with z^3 dropped.
        let ring = TruncatedPolyRing::new(RationalFieldForTest, 3).unwrap();
        let one_plus_z = ring.add(&ring.one(), &ring.z());
        let cube = ring.mul(&ring.mul(&one_plus_z, &one_plus_z), &one_plus_z);
        assert_eq!(
            cube,
            ring.poly(vec![
                Rational::from_integer(1),
                Rational::from_integer(3),
                Rational::from_integer(3),
            ])
            .unwrap()
        );
    }

    #[test]
    fn truncation_order_mismatch_checked() {
        let ring = TruncatedPolyRing::new(RationalFieldForTest, 2).unwrap();
        assert!(ring
            .poly(vec![Rational::zero(), Rational::zero(), Rational::one()])
            .is_err());
    }

    #[test]
    fn flatten_adjunction_is_multiplicative() {
        let base = SquareFreeRing::new(2).unwrap();
        let adj = TruncatedPolyRing::new(base, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let p = adj.sample(&mut rng, 4);
            let q = adj.sample(&mut rng, 4);
            let lhs = base.flatten_adjunction(&adj.mul(&p, &q)).unwrap();
            let rhs = base
                .flatten_adjunction(&p)
                .unwrap()
                .mul(&base.flatten_adjunction(&q).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
        // The relabeling hits the expected basis monomials.
        let p = adj.poly(vec![base.variable(1), base.variable(2)]).unwrap();
        let flat = base.flatten_adjunction(&p).unwrap();
        // z1 + z2*z3
        assert_eq!(
            flat,
            SquareFreePoly::from_terms(
                3,
                vec![(0b001, Rational::one()), (0b110, Rational::one())]
            )
            .unwrap()
        );
    }

    #[test]
    fn capped_poly_cyclic_shift_and_cap() {
        let ring = CappedPolyRing::new(&["a", "b", "c"], 3).unwrap();
        let a = ring.var(0);
        let b = ring.var(1);
        let shifted = ring.permute_vars(&[1, 2, 0], &a);
        assert_eq!(shifted, b);
        // a^2 * b * c has degree 4 > 3 and is identified with zero.
        let a2 = ring.mul(&a, &a);
        let abc = ring.mul(&ring.mul(&a, &b), &ring.var(2));
        assert!(ring.is_zero(&ring.mul(&a2, &ring.mul(&b, &ring.var(2)))));
        assert!(!ring.is_zero(&abc));
        assert_eq!(ring.render(&a2), "a^2");
    }

    #[test]
    fn squarefree_ring_equality_ignores_style() {
        let plain = SquareFreeRing::new(3).unwrap();
        let xyz = SquareFreeRing::new_xyz(3).unwrap();
        assert_eq!(plain, xyz);
        let p = SquareFreePoly::from_terms(3, vec![(0b111, Rational::from_integer(6))]).unwrap();
        assert_eq!(xyz.render(&p), "6*x*y*z");
        assert_eq!(plain.render(&p), "6*z1*z2*z3");
    }
}
