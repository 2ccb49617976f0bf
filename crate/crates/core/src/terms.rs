//! Shared term-map machinery for algebras whose canonical basis is indexed
//! by a sortable key (bitmasks of generators, packed exponent vectors).
//!
//! A term list is kept sorted by ascending key with no zero coefficients,
//! so structural equality is algebra equality. The Grassmann algebra and the
//! square-free polynomial quotient differ only in the sign rule they pass to
//! [`mul`].

use crate::rational::Rational;

/// Sorted by mask, no zero coefficients.
pub(crate) type Terms = Vec<(u32, Rational)>;

/// Canonicalize an unsorted list of (key, coeff) pairs.
pub(crate) fn normalize<K: Ord + Copy>(mut raw: Vec<(K, Rational)>) -> Vec<(K, Rational)> {
    raw.sort_unstable_by_key(|(key, _)| *key);
    let mut out: Vec<(K, Rational)> = Vec::with_capacity(raw.len());
    for (key, coeff) in raw {
        match out.last_mut() {
            Some((last, acc)) if *last == key => {
                *acc = &*acc + &coeff;
            }
            _ => out.push((key, coeff)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

pub(crate) fn add<K: Ord + Copy>(
    a: &[(K, Rational)],
    b: &[(K, Rational)],
) -> Vec<(K, Rational)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i].0 < b[j].0 {
            out.push(a[i].clone());
            i += 1;
        } else if a[i].0 > b[j].0 {
            out.push(b[j].clone());
            j += 1;
        } else {
            let sum = &a[i].1 + &b[j].1;
            if !sum.is_zero() {
                out.push((a[i].0, sum));
            }
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

pub(crate) fn neg<K: Ord + Copy>(a: &[(K, Rational)]) -> Vec<(K, Rational)> {
    a.iter().map(|(m, c)| (*m, -c)).collect()
}

pub(crate) fn scalar_mul<K: Ord + Copy>(c: &Rational, a: &[(K, Rational)]) -> Vec<(K, Rational)> {
    if c.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(m, x)| (*m, c * x)).collect()
}

/// Bilinear product. `combine` maps a pair of basis keys to the product
/// basis key and a negation flag, or `None` when the product vanishes.
pub(crate) fn mul<K: Ord + Copy>(
    a: &[(K, Rational)],
    b: &[(K, Rational)],
    combine: impl Fn(K, K) -> Option<(K, bool)>,
) -> Vec<(K, Rational)> {
    let mut raw = Vec::with_capacity(a.len() * b.len());
    for (ma, ca) in a {
        for (mb, cb) in b {
            if let Some((mask, negate)) = combine(*ma, *mb) {
                let c = ca * cb;
                raw.push((mask, if negate { -c } else { c }));
            }
        }
    }
    normalize(raw)
}

/// `Some(c)` when the list is `c * 1` (empty, or a single term whose key is
/// the identity key).
pub(crate) fn as_scalar<K: Ord + Copy + Default>(a: &[(K, Rational)]) -> Option<Rational> {
    match a {
        [] => Some(Rational::zero()),
        [(key, c)] if *key == K::default() => Some(c.clone()),
        _ => None,
    }
}

/// Canonical text form: terms by ascending mask, `+`/`-` separated,
/// coefficient 1 suppressed on non-constant monomials.
pub(crate) fn render(terms: &[(u32, Rational)], gen_name: impl Fn(u32) -> String) -> String {
    render_with(terms, |mask| {
        (0..32)
            .filter(|bit| mask & (1 << bit) != 0)
            .map(|bit| gen_name(bit + 1))
            .collect()
    })
}

/// As [`render`] but with an arbitrary key-to-factors expansion.
pub(crate) fn render_with<K: Copy>(
    terms: &[(K, Rational)],
    factors: impl Fn(K) -> Vec<String>,
) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (mask, coeff)) in terms.iter().enumerate() {
        let negative = coeff.is_negative();
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mag = coeff.abs();
        let gens = factors(*mask);
        if gens.is_empty() {
            out.push_str(&mag.to_string());
        } else {
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push('*');
            }
            out.push_str(&gens.join("*"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn normalize_merges_and_strips() {
        let t = normalize(vec![(2u32, r(1)), (0, r(3)), (2, r(-1)), (1, r(5))]);
        assert_eq!(t, vec![(0, r(3)), (1, r(5))]);
    }

    #[test]
    fn render_spacing_matches_grammar() {
        let t = vec![
            (0u32, r(1)),
            (0b11, Rational::from_ratio(-2, 3).unwrap()),
            (0b100, r(1)),
        ];
        assert_eq!(render(&t, |i| format!("v{i}")), "1 - 2/3*v1*v2 + v3");
        assert_eq!(render(&[], |i| format!("v{i}")), "0");
        assert_eq!(render(&[(1, r(-1))], |i| format!("v{i}")), "-v1");
    }
}
