//! Truncated skew polynomial rings `R[w, sigma]/(w^t)` and their matrix
//! embeddings: left polynomials with the twisted multiplication
//! `w r = sigma(r) w`, the 2x2 embedding over `R[z]/(z^2)` for an
//! involution, the t x t embedding over `R[z]/(z^t)` for `sigma^t = 1`, the
//! induced constant-trace representation obtained by composing with a CT
//! representation of the coefficient ring, and the isomorphism
//! `E[w, sigma]/(w^2) = E'` that absorbs `w` as a fresh Grassmann
//! generator.

use std::fmt;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grassmann::{GrassmannElement, GrassmannRing};
use crate::matrix::{flatten_blocks, Matrix};
use crate::quotient::{CappedPolyRing, SquareFreeRing, TruncatedPolyRing};
use crate::rational::Rational;
use crate::rep::{is_ct, GrassmannRep};
use crate::ring::Ring;

/// A named ring endomorphism with a declared (finite) order.
pub trait RingEndomorphism<R: Ring>: Clone + PartialEq + fmt::Debug {
    fn name(&self) -> String;
    fn declared_order(&self) -> u32;
    fn apply(&self, ring: &R, x: &R::Elem) -> R::Elem;
}

/// The grading involution on the Grassmann algebra: negates the odd part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GradingInvolution;

impl RingEndomorphism<GrassmannRing> for GradingInvolution {
    fn name(&self) -> String {
        "grading involution".to_string()
    }

    fn declared_order(&self) -> u32 {
        2
    }

    fn apply(&self, _ring: &GrassmannRing, x: &GrassmannElement) -> GrassmannElement {
        x.grading_involution()
    }
}

/// The cyclic variable shift on a capped polynomial ring (variable `i` maps
/// to variable `i+1 mod n`); an automorphism whose order is the variable
/// count. The declared order is cross-checked against the ring on sample
/// elements when a skew ring is built over it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CyclicVarShift {
    order: u32,
}

impl CyclicVarShift {
    pub fn new(order: u32) -> Self {
        Self { order }
    }
}

impl RingEndomorphism<CappedPolyRing> for CyclicVarShift {
    fn name(&self) -> String {
        "cyclic variable shift".to_string()
    }

    fn declared_order(&self) -> u32 {
        self.order
    }

    fn apply(&self, ring: &CappedPolyRing, x: &crate::quotient::CappedPoly) -> crate::quotient::CappedPoly {
        let n = ring.nvars();
        let perm: Vec<u32> = (0..n).map(|i| (i + 1) % n).collect();
        ring.permute_vars(&perm, x)
    }
}

/// A left polynomial `r_0 + r_1 w + ... + r_(t-1) w^(t-1)` in the skew
/// quotient; always exactly `t` stored coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkewPoly<E> {
    coeffs: Vec<E>,
}

impl<E> SkewPoly<E> {
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

/// Ring descriptor for `R[w, sigma]/(w^t)`.
///
/// Construction verifies the endomorphism on random samples: it must fix 1,
/// preserve sums and products, and satisfy `sigma^d = id` for its declared
/// order `d`. The declared order is not trusted.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewPolyRing<R: Ring, S: RingEndomorphism<R>> {
    base: R,
    sigma: S,
    t: usize,
}

impl<R: Ring, S: RingEndomorphism<R>> SkewPolyRing<R, S> {
    pub fn new(base: R, sigma: S, t: usize) -> Result<Self> {
        if t == 0 {
            return Err(Error::SizeLimit("truncation order must be >= 1".into()));
        }
        let fail = |msg: &str| Err(Error::EndomorphismInvalid(sigma.name(), msg.to_string()));
        if !base.contains(&sigma.apply(&base, &base.one()))
            || sigma.apply(&base, &base.one()) != base.one()
        {
            return fail("does not fix 1");
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
        for _ in 0..8 {
            let a = base.sample(&mut rng, 4);
            let b = base.sample(&mut rng, 4);
            let product = sigma.apply(&base, &base.mul(&a, &b));
            let image_product = base.mul(&sigma.apply(&base, &a), &sigma.apply(&base, &b));
            if product != image_product {
                return fail("not multiplicative on samples");
            }
            let sum = sigma.apply(&base, &base.add(&a, &b));
            let image_sum = base.add(&sigma.apply(&base, &a), &sigma.apply(&base, &b));
            if sum != image_sum {
                return fail("not additive on samples");
            }
            let mut iterate = a.clone();
            for _ in 0..sigma.declared_order() {
                iterate = sigma.apply(&base, &iterate);
            }
            if iterate != a {
                return fail("declared order violated on samples");
            }
        }
        Ok(Self { base, sigma, t })
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn sigma(&self) -> &S {
        &self.sigma
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// `sigma^k(x)`, with the exponent reduced by the declared order.
    pub fn sigma_pow(&self, k: usize, x: &R::Elem) -> R::Elem {
        let reduced = k % self.sigma.declared_order() as usize;
        let mut out = x.clone();
        for _ in 0..reduced {
            out = self.sigma.apply(&self.base, &out);
        }
        out
    }

    /// Builds a left polynomial from up to `t` coefficients, zero-padded.
    pub fn poly(&self, mut coeffs: Vec<R::Elem>) -> Result<SkewPoly<R::Elem>> {
        if coeffs.len() > self.t {
            return Err(Error::TruncationOrderMismatch(coeffs.len(), self.t));
        }
        while coeffs.len() < self.t {
            coeffs.push(self.base.zero());
        }
        Ok(SkewPoly { coeffs })
    }

    /// The residue class of `w` (zero when `t = 1`).
    pub fn w(&self) -> SkewPoly<R::Elem> {
        let mut coeffs = vec![self.base.zero(); self.t];
        if self.t > 1 {
            coeffs[1] = self.base.one();
        }
        SkewPoly { coeffs }
    }

    pub fn constant(&self, r: R::Elem) -> SkewPoly<R::Elem> {
        let mut coeffs = vec![self.base.zero(); self.t];
        coeffs[0] = r;
        SkewPoly { coeffs }
    }

    /// The target ring `R[z]/(z^t)` of the matrix embeddings.
    pub fn adjunction_ring(&self) -> TruncatedPolyRing<R> {
        TruncatedPolyRing::new(self.base.clone(), self.t).expect("t >= 1")
    }

    /// The 2x2 matrix image `[[r, s z], [sigma(s) z, sigma(r)]]` of
    /// `r + s w` over `R[z]/(z^2)`. Requires `t = 2` and an involution.
    pub fn involution_matrix_rep(
        &self,
        f: &SkewPoly<R::Elem>,
    ) -> Result<Matrix<TruncatedPolyRing<R>>> {
        if self.t != 2 {
            return Err(Error::TruncationOrderMismatch(self.t, 2));
        }
        if self.sigma.declared_order() > 2 {
            return Err(Error::InvolutionRequired(
                self.sigma.name(),
                self.sigma.declared_order(),
            ));
        }
        let adj = self.adjunction_ring();
        let r = &f.coeffs[0];
        let s = &f.coeffs[1];
        let sigma_r = self.sigma.apply(&self.base, r);
        let sigma_s = self.sigma.apply(&self.base, s);
        Matrix::from_rows(
            adj.clone(),
            vec![
                vec![adj.constant(r.clone()), adj.monomial(s.clone(), 1)],
                vec![adj.monomial(sigma_s, 1), adj.constant(sigma_r)],
            ],
        )
    }

    /// The t x t matrix image over `R[z]/(z^t)` for `sigma^t = 1`: with
    /// 1-based indices the `(i, j)` entry is
    /// `sigma^(i-1)(r_(j-i)) z^(j-i)`, the difference `j - i` taken modulo
    /// `t`. Requires the declared order of sigma to divide `t`.
    pub fn cyclic_matrix_rep(
        &self,
        f: &SkewPoly<R::Elem>,
    ) -> Result<Matrix<TruncatedPolyRing<R>>> {
        let order = self.sigma.declared_order();
        if self.t % order as usize != 0 {
            return Err(Error::OrderDoesNotDivide { order, t: self.t });
        }
        let adj = self.adjunction_ring();
        let t = self.t;
        Ok(Matrix::from_fn(adj.clone(), t, |i, j| {
            let d = (j + t - i) % t;
            adj.monomial(self.sigma_pow(i, &f.coeffs[d]), d)
        }))
    }
}

impl<R: Ring, S: RingEndomorphism<R>> Ring for SkewPolyRing<R, S> {
    type Elem = SkewPoly<R::Elem>;

    fn name(&self) -> String {
        format!("{}[w,{}]/(w^{})", self.base.name(), self.sigma.name(), self.t)
    }

    fn zero(&self) -> Self::Elem {
        SkewPoly { coeffs: vec![self.base.zero(); self.t] }
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.coeffs.iter().all(|c| self.base.is_zero(c))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| self.base.add(x, y))
            .collect();
        SkewPoly { coeffs }
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        SkewPoly { coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect() }
    }

    /// `w^i r = sigma^i(r) w^i`: the coefficient of `w^k` in the product is
    /// the sum of `a_i * sigma^i(b_j)` over `i + j = k < t`.
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
                let twisted = self.sigma_pow(i, y);
                let term = self.base.mul(x, &twisted);
                coeffs[i + j] = self.base.add(&coeffs[i + j], &term);
            }
        }
        SkewPoly { coeffs }
    }

    fn is_commutative(&self) -> bool {
        false
    }

    fn contains(&self, a: &Self::Elem) -> bool {
        a.coeffs.len() == self.t && a.coeffs.iter().all(|c| self.base.contains(c))
    }

    fn from_rational(&self, c: &Rational) -> Self::Elem {
        self.constant(self.base.from_rational(c))
    }

    fn scalar_mul(&self, c: &Rational, a: &Self::Elem) -> Self::Elem {
        SkewPoly { coeffs: a.coeffs.iter().map(|x| self.base.scalar_mul(c, x)).collect() }
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
                1 => format!("{inner}*w"),
                _ => format!("{inner}*w^{k}"),
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
        SkewPoly {
            coeffs: (0..self.t).map(|_| self.base.sample(rng, coeff_bound)).collect(),
        }
    }
}

/// The skew quotient of the Grassmann algebra under its grading involution.
pub type GrassmannSkewRing = SkewPolyRing<GrassmannRing, GradingInvolution>;

/// Builds `E[w, sigma]/(w^2)` over the `m`-generator algebra with the
/// grading involution.
pub fn grassmann_skew_ring(m: u32) -> Result<GrassmannSkewRing> {
    SkewPolyRing::new(GrassmannRing::new(m)?, GradingInvolution, 2)
}

/// The isomorphism `E[w, sigma]/(w^2) -> E'` onto the Grassmann algebra
/// with one more generator: `g + h w` maps to `g + h * v_(m+1)`.
pub fn skew_to_grassmann(
    ring: &GrassmannSkewRing,
    f: &SkewPoly<GrassmannElement>,
) -> Result<GrassmannElement> {
    if ring.t() != 2 {
        return Err(Error::TruncationOrderMismatch(ring.t(), 2));
    }
    let m = ring.base().m();
    let wide = m + 1;
    let g = f.coeffs[0].widen(wide)?;
    let h = f.coeffs[1].widen(wide)?;
    let new_gen = GrassmannElement::generator(wide, wide)?;
    g.add(&h.mul(&new_gen)?)
}

/// The inverse of [`skew_to_grassmann`]: splits an element of the
/// `(m+1)`-generator algebra as `g + h * v_(m+1)` with `g, h` in the
/// `m`-generator subalgebra.
pub fn grassmann_to_skew(
    ring: &GrassmannSkewRing,
    g: &GrassmannElement,
) -> Result<SkewPoly<GrassmannElement>> {
    let m = ring.base().m();
    if g.m() != m + 1 {
        return Err(Error::GeneratorCountMismatch(g.m(), m + 1));
    }
    let top_bit = 1u32 << m;
    let mut low = Vec::new();
    let mut high = Vec::new();
    for (mask, c) in g.terms() {
        if mask & top_bit == 0 {
            low.push((*mask, c.clone()));
        } else {
            // v_B * v_(m+1) with v_(m+1) rightmost costs no sign flips, so
            // the coefficient carries over unchanged.
            high.push((mask & !top_bit, c.clone()));
        }
    }
    ring.poly(vec![
        GrassmannElement::from_terms(m, low)?,
        GrassmannElement::from_terms(m, high)?,
    ])
}

/// Composes the 2x2 skew embedding with a constant-trace representation of
/// the coefficient algebra: entries `r + s z` map to `rep(r) + rep(s) z`
/// over `M_t(sqfree)[z]/(z^2)` and the 2x2 grid of t x t blocks flattens to
/// a `2t x 2t` matrix over `sqfree[z]/(z^2)`. The result is again of
/// constant trace.
pub fn induced_ct_image(
    rep: &GrassmannRep<SquareFreeRing>,
    ring: &GrassmannSkewRing,
    f: &SkewPoly<GrassmannElement>,
) -> Result<Matrix<TruncatedPolyRing<SquareFreeRing>>> {
    if rep.m() != ring.base().m() {
        return Err(Error::GeneratorCountMismatch(rep.m(), ring.base().m()));
    }
    if !rep.ct_claimed() || !is_ct(rep, 0, 0)?.is_ct {
        return Err(Error::NonCtBase);
    }
    let mu = ring.involution_matrix_rep(f)?;
    let target = TruncatedPolyRing::new(*rep.target(), 2)?;
    let t = rep.size();
    let mut grid = Vec::with_capacity(2);
    for a in 0..2 {
        let mut row = Vec::with_capacity(2);
        for b in 0..2 {
            let entry = mu.entry(a, b);
            let const_image = rep.apply(&entry.coeffs()[0])?;
            let z_image = rep.apply(&entry.coeffs()[1])?;
            row.push(Matrix::from_fn(target.clone(), t, |i, j| {
                target
                    .poly(vec![
                        const_image.entry(i, j).clone(),
                        z_image.entry(i, j).clone(),
                    ])
                    .expect("two coefficients at t = 2")
            }));
        }
        grid.push(row);
    }
    flatten_blocks(&grid)
}
