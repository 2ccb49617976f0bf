//! Dense square matrices over an abstract ring: arithmetic, traces, block
//! composition, and characteristic polynomials via the Newton trace
//! recursion.

use std::collections::BTreeMap;
use std::fmt;

use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::ring::Ring;

/// A dense `n x n` matrix over the ring described by `ring`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix<R: Ring> {
    ring: R,
    n: usize,
    /// Row-major, length `n * n`.
    entries: Vec<R::Elem>,
}

impl<R: Ring> Matrix<R> {
    pub fn new(ring: R, n: usize, entries: Vec<R::Elem>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(entries.len(), n * n));
        }
        if !entries.iter().all(|e| ring.contains(e)) {
            return Err(Error::EntryOutsideRing(ring.name()));
        }
        Ok(Self { ring, n, entries })
    }

    pub fn from_rows(ring: R, rows: Vec<Vec<R::Elem>>) -> Result<Self> {
        let n = rows.len();
        for row in &rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch(row.len(), n));
            }
        }
        Self::new(ring, n, rows.into_iter().flatten().collect())
    }

    pub fn from_fn(ring: R, n: usize, mut f: impl FnMut(usize, usize) -> R::Elem) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self { ring, n, entries }
    }

    pub fn zero(ring: R, n: usize) -> Self {
        let entries = vec![ring.zero(); n * n];
        Self { ring, n, entries }
    }

    pub fn identity(ring: R, n: usize) -> Self {
        Self::scalar(ring, n, &Rational::one())
    }

    /// `c * I_n`.
    pub fn scalar(ring: R, n: usize, c: &Rational) -> Self {
        let elem = ring.from_rational(c);
        Self::from_fn(ring.clone(), n, |i, j| {
            if i == j {
                elem.clone()
            } else {
                ring.zero()
            }
        })
    }

    pub fn sample(ring: R, n: usize, rng: &mut ChaCha8Rng, coeff_bound: i64) -> Self {
        let entries = (0..n * n).map(|_| ring.sample(rng, coeff_bound)).collect();
        Self { ring, n, entries }
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> &R::Elem {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[R::Elem] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| self.ring.is_zero(e))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.name(), other.ring.name()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.ring.add(a, b))
            .collect();
        Ok(Self { ring: self.ring.clone(), n: self.n, entries })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        let entries = self.entries.iter().map(|a| self.ring.neg(a)).collect();
        Self { ring: self.ring.clone(), n: self.n, entries }
    }

    pub fn scalar_mul(&self, c: &Rational) -> Self {
        let entries = self.entries.iter().map(|a| self.ring.scalar_mul(c, a)).collect();
        Self { ring: self.ring.clone(), n: self.n, entries }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let n = self.n;
        let ring = &self.ring;
        let mut entries = vec![ring.zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entry(i, k);
                if ring.is_zero(a) {
                    continue;
                }
                for j in 0..n {
                    let b = other.entry(k, j);
                    if ring.is_zero(b) {
                        continue;
                    }
                    let prod = ring.mul(a, b);
                    entries[i * n + j] = ring.add(&entries[i * n + j], &prod);
                }
            }
        }
        Ok(Self { ring: self.ring.clone(), n, entries })
    }

    /// `A^k` by square-and-multiply; `A^0 = I`.
    pub fn pow(&self, k: u64) -> Self {
        let mut result = Self::identity(self.ring.clone(), self.n);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base).expect("same ring and dimension");
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base).expect("same ring and dimension");
            }
        }
        result
    }

    /// Sum of the diagonal entries.
    pub fn trace(&self) -> R::Elem {
        let mut t = self.ring.zero();
        for i in 0..self.n {
            t = self.ring.add(&t, self.entry(i, i));
        }
        t
    }

    /// Entrywise image in another ring.
    pub fn map<S: Ring>(&self, ring: S, f: impl Fn(&R::Elem) -> S::Elem) -> Result<Matrix<S>> {
        Matrix::new(ring, self.n, self.entries.iter().map(f).collect())
    }

    /// Sparse coordinates of the whole matrix over the canonical K-basis,
    /// keyed by (entry index, basis key).
    pub fn coeff_row(&self) -> BTreeMap<(u64, u64), Rational> {
        let mut row = BTreeMap::new();
        for (idx, e) in self.entries.iter().enumerate() {
            for (key, c) in self.ring.coeff_vector(e) {
                row.insert((idx as u64, key), c);
            }
        }
        row
    }
}

impl<R: Ring> fmt::Display for Matrix<R> {
    /// Matrix text format: header `n=<N> ring=<name>`, then N lines of N
    /// entries separated by ` ; `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={} ring={}", self.n, self.ring.name())?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n)
                .map(|j| self.ring.render(self.entry(i, j)))
                .collect();
            writeln!(f, "{}", row.join(" ; "))?;
        }
        Ok(())
    }
}

/// Composes a 2x2 arrangement of `t x t` blocks into a `2t x 2t` matrix.
pub fn block2x2<R: Ring>(
    a: &Matrix<R>,
    b: &Matrix<R>,
    c: &Matrix<R>,
    d: &Matrix<R>,
) -> Result<Matrix<R>> {
    flatten_blocks(&[vec![a.clone(), b.clone()], vec![c.clone(), d.clone()]])
}

/// Flattens an `n x n` grid of `t x t` blocks into a `tn x tn` matrix
/// (`M_n(M_t(R)) = M_tn(R)`).
pub fn flatten_blocks<R: Ring>(grid: &[Vec<Matrix<R>>]) -> Result<Matrix<R>> {
    let n = grid.len();
    if n == 0 {
        return Err(Error::DimensionMismatch(0, 1));
    }
    let first = &grid[0][0];
    let t = first.n;
    for row in grid {
        if row.len() != n {
            return Err(Error::DimensionMismatch(row.len(), n));
        }
        for block in row {
            if block.n != t {
                return Err(Error::DimensionMismatch(block.n, t));
            }
            if block.ring != first.ring {
                return Err(Error::RingMismatch(block.ring.name(), first.ring.name()));
            }
        }
    }
    let ring = first.ring.clone();
    Ok(Matrix::from_fn(ring, t * n, |i, j| {
        grid[i / t][j / t].entry(i % t, j % t).clone()
    }))
}

/// Ring descriptor for the full matrix ring `M_n(R)`, so matrix algebras
/// can serve as the ambient ring of identity checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixRing<R: Ring> {
    base: R,
    n: usize,
}

impl<R: Ring> MatrixRing<R> {
    pub fn new(base: R, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::DimensionMismatch(0, 1));
        }
        Ok(Self { base, n })
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

impl<R: Ring> Ring for MatrixRing<R> {
    type Elem = Matrix<R>;

    fn name(&self) -> String {
        format!("M_{}({})", self.n, self.base.name())
    }

    fn zero(&self) -> Matrix<R> {
        Matrix::zero(self.base.clone(), self.n)
    }

    fn one(&self) -> Matrix<R> {
        Matrix::identity(self.base.clone(), self.n)
    }

    fn is_zero(&self, a: &Matrix<R>) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &Matrix<R>, b: &Matrix<R>) -> Matrix<R> {
        a.add(b).expect("ring elements share dimension")
    }

    fn neg(&self, a: &Matrix<R>) -> Matrix<R> {
        a.neg()
    }

    fn mul(&self, a: &Matrix<R>, b: &Matrix<R>) -> Matrix<R> {
        a.mul(b).expect("ring elements share dimension")
    }

    fn is_commutative(&self) -> bool {
        self.n == 1 && self.base.is_commutative()
    }

    fn contains(&self, a: &Matrix<R>) -> bool {
        a.n == self.n && a.ring == self.base
    }

    fn from_rational(&self, c: &Rational) -> Matrix<R> {
        Matrix::scalar(self.base.clone(), self.n, c)
    }

    fn scalar_mul(&self, c: &Rational, a: &Matrix<R>) -> Matrix<R> {
        a.scalar_mul(c)
    }

    fn as_rational(&self, a: &Matrix<R>) -> Option<Rational> {
        let diag = self.base.as_rational(a.entry(0, 0))?;
        for i in 0..self.n {
            for j in 0..self.n {
                if i == j {
                    if *a.entry(i, j) != *a.entry(0, 0) {
                        return None;
                    }
                } else if !self.base.is_zero(a.entry(i, j)) {
                    return None;
                }
            }
        }
        Some(diag)
    }

    fn render(&self, a: &Matrix<R>) -> String {
        a.to_string()
    }

    fn coeff_vector(&self, a: &Matrix<R>) -> Vec<(u64, Rational)> {
        let mut out = Vec::new();
        for (idx, e) in a.entries.iter().enumerate() {
            for (key, c) in self.base.coeff_vector(e) {
                out.push(((idx as u64) << 48 | key, c));
            }
        }
        out
    }

    fn sample(&self, rng: &mut ChaCha8Rng, coeff_bound: i64) -> Matrix<R> {
        Matrix::sample(self.base.clone(), self.n, rng, coeff_bound)
    }
}

/// Monic characteristic-polynomial coefficients `c_0 = 1, c_1, ..., c_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPolyCoeffs {
    coeffs: Vec<Rational>,
}

impl CharPolyCoeffs {
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Evaluates `A^N + c_1 A^(N-1) + ... + c_N I` in the matrix ring of `a`
    /// by Horner's scheme.
    pub fn eval_at<R: Ring>(&self, a: &Matrix<R>) -> Result<Matrix<R>> {
        let mut acc = Matrix::identity(a.ring().clone(), a.n());
        for c in &self.coeffs[1..] {
            acc = acc.mul(a)?;
            let shift = Matrix::scalar(a.ring().clone(), a.n(), c);
            acc = acc.add(&shift)?;
        }
        Ok(acc)
    }
}

impl fmt::Display for CharPolyCoeffs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Characteristic polynomial of `b` by the Newton trace recursion
/// `c_0 = 1`, `c_k = -(1/k) * (c_(k-1) tr(B) + ... + c_0 tr(B^k))`.
///
/// Every power trace `tr(B^k)`, `1 <= k <= n`, must be a scalar (a rational
/// multiple of 1 in the entry ring); a non-scalar trace aborts with the
/// constant-trace failure error. Powers are computed incrementally, so the
/// whole run costs `n` matrix multiplications.
pub fn newton_charpoly<R: Ring>(b: &Matrix<R>) -> Result<CharPolyCoeffs> {
    let n = b.n();
    let ring = b.ring();
    let mut power_traces = Vec::with_capacity(n + 1);
    let mut power = Matrix::identity(ring.clone(), n);
    for k in 1..=n {
        power = power.mul(b)?;
        let t = power.trace();
        match ring.as_rational(&t) {
            Some(s) => power_traces.push(s),
            None => {
                return Err(Error::NonConstantTrace { power: k, trace: ring.render(&t) });
            }
        }
    }
    let mut coeffs = vec![Rational::one()];
    for k in 1..=n {
        let mut acc = Rational::zero();
        for j in 1..=k {
            acc = &acc + &(&coeffs[k - j] * &power_traces[j - 1]);
        }
        let minus_inv_k = Rational::from_ratio(-1, k as i64).expect("k >= 1");
        coeffs.push(&acc * &minus_inv_k);
    }
    Ok(CharPolyCoeffs { coeffs })
}

/// Rank over the rationals of a family of sparse vectors, by exact Gaussian
/// elimination.
pub fn sparse_rank<K: Ord + Clone>(mut rows: Vec<BTreeMap<K, Rational>>) -> usize {
    let mut rank = 0;
    loop {
        // Pivot on the row whose leading key is smallest.
        let mut pivot_idx: Option<usize> = None;
        for (i, row) in rows.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            match pivot_idx {
                None => pivot_idx = Some(i),
                Some(p) => {
                    let lead_p = rows[p].keys().next().unwrap();
                    let lead_i = row.keys().next().unwrap();
                    if lead_i < lead_p {
                        pivot_idx = Some(i);
                    }
                }
            }
        }
        let Some(p) = pivot_idx else {
            return rank;
        };
        rank += 1;
        let pivot = rows.swap_remove(p);
        let (lead_key, lead_coeff) = {
            let (k, c) = pivot.iter().next().unwrap();
            (k.clone(), c.clone())
        };
        for row in rows.iter_mut() {
            let Some(c) = row.get(&lead_key).cloned() else {
                continue;
            };
            let factor = c.checked_div(&lead_coeff).expect("pivot is nonzero");
            for (k, v) in &pivot {
                let delta = &factor * v;
                let updated = match row.get(k) {
                    Some(old) => old - &delta,
                    None => -&delta,
                };
                if updated.is_zero() {
                    row.remove(k);
                } else {
                    row.insert(k.clone(), updated);
                }
            }
        }
    }
}
