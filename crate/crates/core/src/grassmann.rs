//! The Grassmann (exterior) algebra on `m` anticommuting generators
//! `v1, ..., vm` with relations `vi*vj + vj*vi = 0` (so `vi*vi = 0`).
//!
//! Elements are K-linear combinations of square-free monomials
//! `v_{i1}*...*v_{ik}` with `i1 < ... < ik`, stored as a bitmask term map;
//! the algebra has dimension `2^m`.

use std::fmt;

use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::ring::{sample_coeff, Ring};
use crate::terms::{self, Terms};

/// Largest supported generator count; keeps basis sizes at desk scale.
pub const MAX_GENERATORS: u32 = 16;

fn check_m(m: u32) -> Result<()> {
    if (1..=MAX_GENERATORS).contains(&m) {
        Ok(())
    } else {
        Err(Error::GeneratorCountOutOfRange(m, MAX_GENERATORS))
    }
}

/// Sign of the basis product `v_A * v_B` for disjoint masks: negative iff
/// the number of pairs `(i, j)` with `i` in `A`, `j` in `B`, `i > j` is odd.
pub(crate) fn anticommute_sign(a: u32, b: u32) -> bool {
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    inversions % 2 == 1
}

/// An element of the Grassmann algebra on `m` generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrassmannElement {
    m: u32,
    terms: Terms,
}

impl GrassmannElement {
    pub fn zero(m: u32) -> Result<Self> {
        check_m(m)?;
        Ok(Self { m, terms: Vec::new() })
    }

    pub fn one(m: u32) -> Result<Self> {
        Self::scalar(m, Rational::one())
    }

    pub fn scalar(m: u32, c: Rational) -> Result<Self> {
        check_m(m)?;
        let terms = if c.is_zero() { Vec::new() } else { vec![(0, c)] };
        Ok(Self { m, terms })
    }

    /// The generator `v_index`, 1-based.
    pub fn generator(m: u32, index: u32) -> Result<Self> {
        Self::monomial(m, 1 << (index - 1), Rational::one())
    }

    /// `coeff * v_mask` where bit `i-1` of `mask` selects `v_i`.
    pub fn monomial(m: u32, mask: u32, coeff: Rational) -> Result<Self> {
        Self::from_terms(m, vec![(mask, coeff)])
    }

    /// Canonicalizes an arbitrary term list (merging duplicates, dropping
    /// zeros) after validating every mask against `m`.
    pub fn from_terms(m: u32, raw: Vec<(u32, Rational)>) -> Result<Self> {
        check_m(m)?;
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

    /// Coefficient of the basis monomial `v_mask` (zero when absent).
    pub fn coeff(&self, mask: u32) -> Rational {
        self.terms
            .binary_search_by_key(&mask, |(m, _)| *m)
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    /// Coefficient of 1.
    pub fn constant_term(&self) -> Rational {
        self.coeff(0)
    }

    fn check_same_m(&self, other: &Self) -> Result<()> {
        if self.m == other.m {
            Ok(())
        } else {
            Err(Error::GeneratorCountMismatch(self.m, other.m))
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

    /// Exact product with anticommutation signs.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same_m(other)?;
        let terms = terms::mul(&self.terms, &other.terms, |a, b| {
            if a & b != 0 {
                None
            } else {
                Some((a | b, anticommute_sign(a, b)))
            }
        });
        Ok(Self { m: self.m, terms })
    }

    /// Even/odd decomposition by monomial degree parity.
    pub fn grade_split(&self) -> GradedPair {
        let (even, odd): (Terms, Terms) = self
            .terms
            .iter()
            .cloned()
            .partition(|(mask, _)| mask.count_ones() % 2 == 0);
        GradedPair {
            even: Self { m: self.m, terms: even },
            odd: Self { m: self.m, terms: odd },
        }
    }

    /// The grading involution: negates the odd part.
    pub fn grading_involution(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(mask, c)| {
                if mask.count_ones() % 2 == 1 {
                    (*mask, -c)
                } else {
                    (*mask, c.clone())
                }
            })
            .collect();
        Self { m: self.m, terms }
    }

    /// Coercion into the algebra on `m2 >= m` generators (same terms).
    pub fn widen(&self, m2: u32) -> Result<Self> {
        check_m(m2)?;
        if m2 < self.m {
            return Err(Error::GeneratorCountMismatch(self.m, m2));
        }
        Ok(Self { m: m2, terms: self.terms.clone() })
    }
}

impl fmt::Display for GrassmannElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", terms::render(&self.terms, |i| format!("v{i}")))
    }
}

/// The unique decomposition of an element into its even and odd parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPair {
    pub even: GrassmannElement,
    pub odd: GrassmannElement,
}

/// All `2^m` basis masks in ascending order.
pub fn basis_enumerate(m: u32) -> Result<Vec<u32>> {
    check_m(m)?;
    Ok((0..(1u32 << m)).collect())
}

/// Ring descriptor for the Grassmann algebra on `m` generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrassmannRing {
    m: u32,
}

impl GrassmannRing {
    pub fn new(m: u32) -> Result<Self> {
        check_m(m)?;
        Ok(Self { m })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn generator(&self, index: u32) -> GrassmannElement {
        GrassmannElement::generator(self.m, index).expect("index validated by caller")
    }
}

impl Ring for GrassmannRing {
    type Elem = GrassmannElement;

    fn name(&self) -> String {
        format!("grassmann {}", self.m)
    }

    fn zero(&self) -> GrassmannElement {
        GrassmannElement { m: self.m, terms: Vec::new() }
    }

    fn one(&self) -> GrassmannElement {
        GrassmannElement { m: self.m, terms: vec![(0, Rational::one())] }
    }

    fn is_zero(&self, a: &GrassmannElement) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &GrassmannElement, b: &GrassmannElement) -> GrassmannElement {
        a.add(b).expect("ring elements share m")
    }

    fn neg(&self, a: &GrassmannElement) -> GrassmannElement {
        a.neg()
    }

    fn mul(&self, a: &GrassmannElement, b: &GrassmannElement) -> GrassmannElement {
        a.mul(b).expect("ring elements share m")
    }

    fn is_commutative(&self) -> bool {
        // Already noncommutative at m = 2; E^(1) is the commutative edge case.
        self.m == 1
    }

    fn contains(&self, a: &GrassmannElement) -> bool {
        a.m == self.m
    }

    fn from_rational(&self, c: &Rational) -> GrassmannElement {
        GrassmannElement::scalar(self.m, c.clone()).expect("m validated at construction")
    }

    fn scalar_mul(&self, c: &Rational, a: &GrassmannElement) -> GrassmannElement {
        a.scalar_mul(c)
    }

    fn as_rational(&self, a: &GrassmannElement) -> Option<Rational> {
        terms::as_scalar(&a.terms)
    }

    fn render(&self, a: &GrassmannElement) -> String {
        a.to_string()
    }

    fn coeff_vector(&self, a: &GrassmannElement) -> Vec<(u64, Rational)> {
        a.terms.iter().map(|(m, c)| (*m as u64, c.clone())).collect()
    }

    fn sample(&self, rng: &mut ChaCha8Rng, coeff_bound: i64) -> GrassmannElement {
        let raw = (0..(1u32 << self.m))
            .map(|mask| (mask, Rational::from_integer(sample_coeff(rng, coeff_bound))))
            .collect();
        GrassmannElement { m: self.m, terms: terms::normalize(raw) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn gen(m: u32, i: u32) -> GrassmannElement {
        GrassmannElement::generator(m, i).unwrap()
    }

    /// Independent sign oracle: concatenate the two index words and bubble
    /// sort, counting swaps; duplicated indices kill the product.
    fn bubble_sort_product(m: u32, a: u32, b: u32) -> GrassmannElement {
        let mut word: Vec<u32> = (0..m).filter(|i| a & (1 << i) != 0).collect();
        word.extend((0..m).filter(|i| b & (1 << i) != 0));
        let mut swaps = 0u64;
        let n = word.len();
        for _ in 0..n {
            for i in 1..n {
                if word[i - 1] > word[i] {
                    word.swap(i - 1, i);
                    swaps += 1;
                }
            }
        }
        if word.windows(2).any(|w| w[0] == w[1]) {
            return GrassmannElement::zero(m).unwrap();
        }
        let mask = word.iter().fold(0u32, |acc, i| acc | (1 << i));
        let sign = if swaps % 2 == 0 { 1 } else { -1 };
        GrassmannElement::monomial(m, mask, Rational::from_integer(sign)).unwrap()
    }

    #[test]
    fn sign_matches_bubble_sort_oracle_exhaustively() {
        for m in 1..=6u32 {
            for a in 0..(1u32 << m) {
                for b in 0..(1u32 << m) {
                    let via_mul = gen_monomial(m, a).mul(&gen_monomial(m, b)).unwrap();
                    assert_eq!(via_mul, bubble_sort_product(m, a, b), "m={m} a={a:b} b={b:b}");
                }
            }
        }
    }

    fn gen_monomial(m: u32, mask: u32) -> GrassmannElement {
        GrassmannElement::monomial(m, mask, Rational::one()).unwrap()
    }

    #[test]
    fn single_swap_cases() {
        // v2 * v1 = -v1*v2
        let p = gen(2, 2).mul(&gen(2, 1)).unwrap();
        assert_eq!(p, GrassmannElement::monomial(2, 0b11, Rational::from_integer(-1)).unwrap());
        // v1v3 * v2 = -v1v2v3
        let v1v3 = gen_monomial(3, 0b101);
        let p = v1v3.mul(&gen(3, 2)).unwrap();
        assert_eq!(p, GrassmannElement::monomial(3, 0b111, Rational::from_integer(-1)).unwrap());
    }

    #[test]
    fn squares_of_odd_elements_vanish() {
        let s = gen(2, 1).add(&gen(2, 2)).unwrap();
        assert!(s.mul(&s).unwrap().is_zero());
    }

    #[test]
    fn unit_products_expand() {
        // (1+v1)(1+v2) = 1 + v1 + v2 + v1v2
        let a = GrassmannElement::one(2).unwrap().add(&gen(2, 1)).unwrap();
        let b = GrassmannElement::one(2).unwrap().add(&gen(2, 2)).unwrap();
        let expected = GrassmannElement::from_terms(
            2,
            vec![
                (0, Rational::one()),
                (0b01, Rational::one()),
                (0b10, Rational::one()),
                (0b11, Rational::one()),
            ],
        )
        .unwrap();
        assert_eq!(a.mul(&b).unwrap(), expected);
    }

    #[test]
    fn mismatched_generator_counts_error() {
        let a = gen(2, 1);
        let b = gen(3, 1);
        assert_eq!(a.mul(&b), Err(Error::GeneratorCountMismatch(2, 3)));
        assert_eq!(a.add(&b), Err(Error::GeneratorCountMismatch(2, 3)));
    }

    #[test]
    fn grade_split_and_involution() {
        // 1 + v1 + v1v2 -> even 1 + v1v2, odd v1
        let g = GrassmannElement::from_terms(
            2,
            vec![(0, Rational::one()), (0b01, Rational::one()), (0b11, Rational::one())],
        )
        .unwrap();
        let pair = g.grade_split();
        assert_eq!(
            pair.even,
            GrassmannElement::from_terms(2, vec![(0, Rational::one()), (0b11, Rational::one())])
                .unwrap()
        );
        assert_eq!(pair.odd, gen(2, 1));
        assert_eq!(pair.even.add(&pair.odd).unwrap(), g);

        let sigma = g.grading_involution();
        assert_eq!(sigma, pair.even.sub(&pair.odd).unwrap());
        assert_eq!(GrassmannElement::zero(2).unwrap().grade_split().even.is_zero(), true);
    }

    #[test]
    fn basis_enumeration_sizes() {
        assert_eq!(basis_enumerate(1).unwrap(), vec![0, 1]);
        assert_eq!(basis_enumerate(2).unwrap(), vec![0, 1, 2, 3]);
        assert_eq!(basis_enumerate(5).unwrap().len(), 32);
        assert!(basis_enumerate(0).is_err());
        assert!(basis_enumerate(17).is_err());
    }

    #[test]
    fn top_monomial_is_nonzero() {
        for m in 1..=8u32 {
            let mut p = GrassmannElement::one(m).unwrap();
            for i in 1..=m {
                p = p.mul(&gen(m, i)).unwrap();
            }
            assert_eq!(p, gen_monomial(m, (1 << m) - 1));
        }
    }

    #[test]
    fn widen_keeps_terms_and_checks_direction() {
        let g = gen(2, 1);
        let w = g.widen(4).unwrap();
        assert_eq!(w.m(), 4);
        assert_eq!(w.terms(), g.terms());
        assert!(g.widen(1).is_err());
    }

    #[test]
    fn display_canonical_form() {
        let g = GrassmannElement::from_terms(
            3,
            vec![
                (0, Rational::one()),
                (0b011, Rational::from_ratio(-2, 3).unwrap()),
                (0b100, Rational::one()),
            ],
        )
        .unwrap();
        assert_eq!(g.to_string(), "1 - 2/3*v1*v2 + v3");
    }

    fn arb_element(m: u32) -> impl Strategy<Value = GrassmannElement> {
        proptest::collection::vec(-4i64..=4, 1 << m).prop_map(move |coeffs| {
            let raw = coeffs
                .into_iter()
                .enumerate()
                .map(|(mask, c)| (mask as u32, Rational::from_integer(c)))
                .collect();
            GrassmannElement::from_terms(m, raw).unwrap()
        })
    }

    proptest! {
        #[test]
        fn associativity(a in arb_element(3), b in arb_element(3), c in arb_element(3)) {
            let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
            let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(ab_c, a_bc);
        }

        #[test]
        fn involution_is_multiplicative(a in arb_element(3), b in arb_element(3)) {
            let lhs = a.mul(&b).unwrap().grading_involution();
            let rhs = a.grading_involution().mul(&b.grading_involution()).unwrap();
            prop_assert_eq!(lhs, rhs);
            prop_assert_eq!(a.grading_involution().grading_involution(), a);
        }

        #[test]
        fn distributivity(a in arb_element(3), b in arb_element(3), c in arb_element(3)) {
            let lhs = a.mul(&b.add(&c).unwrap()).unwrap();
            let rhs = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn anticommutation_relations_hold() {
        let m = 4;
        for i in 1..=m {
            for j in i..=m {
                let vi = gen(m, i);
                let vj = gen(m, j);
                let sum = vi.mul(&vj).unwrap().add(&vj.mul(&vi).unwrap()).unwrap();
                assert!(sum.is_zero(), "v{i}v{j} + v{j}v{i} != 0");
            }
        }
    }

    #[test]
    fn sampling_is_seed_deterministic() {
        let ring = GrassmannRing::new(3).unwrap();
        let mut rng1 = ChaCha8Rng::seed_from_u64(42);
        let mut rng2 = ChaCha8Rng::seed_from_u64(42);
        assert_eq!(ring.sample(&mut rng1, 3), ring.sample(&mut rng2, 3));
    }
}
