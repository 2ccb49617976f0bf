//! Scalar-coefficient Cayley-Hamilton identities for matrices over the
//! Grassmann algebra, standard polynomial evaluation and identity
//! verification, and the obstruction showing the 3-generator algebra admits
//! no monic quadratic identity with scalar coefficients.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grassmann::{basis_enumerate, GrassmannElement, GrassmannRing};
use crate::matrix::{newton_charpoly, sparse_rank, CharPolyCoeffs, Matrix};
use crate::rational::Rational;
use crate::rep::ct_representation;
use crate::ring::Ring;

/// Degree cap for standard polynomial evaluation (9! = 362880 products).
pub const MAX_STANDARD_DEGREE: usize = 9;

/// A derived Cayley-Hamilton identity for an `n x n` matrix over the
/// `m`-generator Grassmann algebra: monic of degree `2^(m-1) * n` with
/// rational coefficients, together with the outcome of evaluating it
/// natively back in the source matrix algebra.
#[derive(Debug, Clone)]
pub struct CayleyHamiltonCertificate {
    pub m: u32,
    pub n: usize,
    pub degree: usize,
    pub coeffs: CharPolyCoeffs,
    pub residual_is_zero: bool,
}

/// Derives the scalar-coefficient Cayley-Hamilton identity of `a` through
/// the constant-trace embedding: extends the embedding to `a`, runs the
/// Newton recursion on the `2^(m-1) n x 2^(m-1) n` image, then evaluates the
/// resulting monic polynomial at `a` itself inside the Grassmann matrix
/// algebra and records whether the residual vanishes exactly.
pub fn cayley_hamilton(a: &Matrix<GrassmannRing>) -> Result<CayleyHamiltonCertificate> {
    let m = a.ring().m();
    let n = a.n();
    if m > 6 {
        return Err(Error::SizeLimit(format!("m = {m} exceeds 6")));
    }
    let degree = (1usize << (m - 1)) * n;
    if degree > 64 {
        return Err(Error::SizeLimit(format!(
            "embedded size {degree} exceeds 64"
        )));
    }
    let rep = ct_representation(m)?;
    let embedded = rep.extend_to_matrices(a)?;
    let coeffs = newton_charpoly(&embedded)?;
    let residual = coeffs.eval_at(a)?;
    Ok(CayleyHamiltonCertificate {
        m,
        n,
        degree,
        coeffs,
        residual_is_zero: residual.is_zero(),
    })
}

/// Value of the standard polynomial `S_k`: the signed sum of the products
/// of the arguments over all `k!` orderings.
#[derive(Debug, Clone)]
pub struct StandardPolyResult<E> {
    pub degree: usize,
    pub value: E,
    pub permutation_count: u64,
}

/// Evaluates `S_k(args)` exactly. Permutations are enumerated by Heap's
/// algorithm, which moves between successive permutations with a single
/// transposition, so the sign flips once per step; each term is a
/// left-folded product.
pub fn standard_poly<R: Ring>(ring: &R, args: &[R::Elem]) -> Result<StandardPolyResult<R::Elem>> {
    let k = args.len();
    if k > MAX_STANDARD_DEGREE {
        return Err(Error::DegreeTooLarge(k, MAX_STANDARD_DEGREE));
    }
    if k == 0 {
        return Ok(StandardPolyResult { degree: 0, value: ring.one(), permutation_count: 1 });
    }
    let product = |perm: &[usize]| {
        let mut acc = args[perm[0]].clone();
        for &idx in &perm[1..] {
            acc = ring.mul(&acc, &args[idx]);
        }
        acc
    };
    let mut perm: Vec<usize> = (0..k).collect();
    let mut counters = vec![0usize; k];
    let mut positive = true;
    let mut acc = product(&perm);
    let mut count = 1u64;
    let mut i = 0;
    while i < k {
        if counters[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(counters[i], i);
            }
            positive = !positive;
            let term = product(&perm);
            acc = if positive { ring.add(&acc, &term) } else { ring.sub(&acc, &term) };
            count += 1;
            counters[i] += 1;
            i = 0;
        } else {
            counters[i] = 0;
            i += 1;
        }
    }
    Ok(StandardPolyResult { degree: k, value: acc, permutation_count: count })
}

/// Verdict of a randomized identity check.
#[derive(Debug, Clone)]
pub enum IdentityVerdict<E> {
    HoldsOnSamples { trials: u32 },
    Counterexample { trial: u32, args: Vec<E>, value: E },
}

impl<E> IdentityVerdict<E> {
    pub fn holds(&self) -> bool {
        matches!(self, IdentityVerdict::HoldsOnSamples { .. })
    }
}

/// Evaluates `S_k = 0` on `trials` pseudo-random tuples from the ambient
/// ring (coefficients in `[-coeff_bound, coeff_bound]`, all randomness from
/// the single ChaCha8 seed). Trials run in order and the first nonzero
/// value is returned as the counterexample, so verdicts are reproducible.
pub fn verify_standard_identity<R: Ring>(
    ring: &R,
    k: usize,
    trials: u32,
    seed: u64,
    coeff_bound: i64,
) -> Result<IdentityVerdict<R::Elem>> {
    if k > MAX_STANDARD_DEGREE {
        return Err(Error::DegreeTooLarge(k, MAX_STANDARD_DEGREE));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 0..trials {
        let args: Vec<R::Elem> = (0..k).map(|_| ring.sample(&mut rng, coeff_bound)).collect();
        let result = standard_poly(ring, &args)?;
        if !ring.is_zero(&result.value) {
            return Ok(IdentityVerdict::Counterexample { trial, args, value: result.value });
        }
    }
    Ok(IdentityVerdict::HoldsOnSamples { trials })
}

/// Exhaustive check of `S_k = 0` on every `k`-tuple of basis monomials of
/// the `m`-generator algebra. By multilinearity this is a complete proof of
/// the identity on the whole algebra. Returns the first failing tuple.
pub fn standard_identity_on_basis(
    m: u32,
    k: usize,
) -> Result<Option<(Vec<GrassmannElement>, GrassmannElement)>> {
    if k > MAX_STANDARD_DEGREE {
        return Err(Error::DegreeTooLarge(k, MAX_STANDARD_DEGREE));
    }
    let basis = basis_enumerate(m)?;
    let tuples = (basis.len() as u64).pow(k as u32);
    if tuples > 1 << 20 {
        return Err(Error::SizeLimit(format!("{tuples} basis tuples")));
    }
    let ring = GrassmannRing::new(m)?;
    let monomials: Vec<GrassmannElement> = basis
        .iter()
        .map(|mask| GrassmannElement::monomial(m, *mask, Rational::one()))
        .collect::<Result<_>>()?;
    let mut indices = vec![0usize; k];
    loop {
        let args: Vec<GrassmannElement> =
            indices.iter().map(|&i| monomials[i].clone()).collect();
        let value = standard_poly(&ring, &args)?.value;
        if !value.is_zero() {
            return Ok(Some((args, value)));
        }
        // Odometer over basis indices.
        let mut pos = 0;
        loop {
            if pos == k {
                return Ok(None);
            }
            indices[pos] += 1;
            if indices[pos] < monomials.len() {
                break;
            }
            indices[pos] = 0;
            pos += 1;
        }
    }
}

/// Smallest degree `k <= max_k` at which `S_k` vanishes on every sampled
/// tuple, or `None` if no degree up to `max_k` does. A sampling report only;
/// it proves nothing about minimality on the full algebra.
pub fn min_vanishing_degree_on_samples<R: Ring>(
    ring: &R,
    max_k: usize,
    trials: u32,
    seed: u64,
    coeff_bound: i64,
) -> Result<Option<usize>> {
    for k in 1..=max_k {
        if verify_standard_identity(ring, k, trials, seed, coeff_bound)?.holds() {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

/// One coefficient-wise equation `constant + c1_coeff * c1 + c2_coeff * c2
/// = 0` extracted at a basis monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionRow {
    pub mask: u32,
    pub constant: Rational,
    pub c1_coeff: Rational,
    pub c2_coeff: Rational,
}

/// The coefficient-wise linear system for a monic quadratic identity
/// `A^2 + c1 A + c2 = 0` at `A = v1 + v2*v3` in the 3-generator algebra,
/// together with its (un)solvability verdict.
#[derive(Debug, Clone)]
pub struct QuadraticObstruction {
    pub element: GrassmannElement,
    pub square: GrassmannElement,
    pub rows: Vec<ObstructionRow>,
    pub solvable: bool,
    /// A row with no unknowns and a nonzero constant, when one exists.
    pub inconsistent_row: Option<ObstructionRow>,
    /// Degree at which a scalar-coefficient identity does exist (`2^(m-1) n`
    /// with `m = 3`, `n = 1`).
    pub existing_identity_degree: usize,
}

/// Builds and solves the system showing that no monic degree-2 identity
/// with rational coefficients holds for `v1 + v2*v3`: the square is
/// `2*v1*v2*v3`, whose coefficient equation has no unknowns and a nonzero
/// constant.
pub fn quadratic_ch_obstruction() -> QuadraticObstruction {
    let m = 3;
    let v1 = GrassmannElement::generator(m, 1).expect("m = 3");
    let v2v3 = GrassmannElement::monomial(m, 0b110, Rational::one()).expect("m = 3");
    let element = v1.add(&v2v3).expect("same m");
    let square = element.mul(&element).expect("same m");

    let mut masks: Vec<u32> = Vec::new();
    for (mask, _) in square.terms().iter().chain(element.terms()) {
        if !masks.contains(mask) {
            masks.push(*mask);
        }
    }
    if !masks.contains(&0) {
        masks.push(0);
    }
    masks.sort_unstable();

    let rows: Vec<ObstructionRow> = masks
        .into_iter()
        .map(|mask| ObstructionRow {
            mask,
            constant: square.coeff(mask),
            c1_coeff: element.coeff(mask),
            c2_coeff: if mask == 0 { Rational::one() } else { Rational::zero() },
        })
        .collect();

    // Solvable iff the coefficient matrix and the augmented matrix have the
    // same rank over the rationals.
    let coeff_rows: Vec<_> = rows
        .iter()
        .map(|r| {
            let mut row = std::collections::BTreeMap::new();
            if !r.c1_coeff.is_zero() {
                row.insert(0u64, r.c1_coeff.clone());
            }
            if !r.c2_coeff.is_zero() {
                row.insert(1u64, r.c2_coeff.clone());
            }
            row
        })
        .collect();
    let augmented_rows: Vec<_> = rows
        .iter()
        .zip(&coeff_rows)
        .map(|(r, base)| {
            let mut row = base.clone();
            if !r.constant.is_zero() {
                row.insert(2u64, r.constant.clone());
            }
            row
        })
        .collect();
    let solvable = sparse_rank(coeff_rows) == sparse_rank(augmented_rows);
    let inconsistent_row = rows
        .iter()
        .find(|r| r.c1_coeff.is_zero() && r.c2_coeff.is_zero() && !r.constant.is_zero())
        .cloned();

    QuadraticObstruction {
        element,
        square,
        rows,
        solvable,
        inconsistent_row,
        existing_identity_degree: 4,
    }
}
