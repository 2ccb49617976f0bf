//! Parser for the element grammar and the matrix text format.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! element := [sign] term { sign term }
//! term    := coeff { "*" gen } | gen { "*" gen }
//! coeff   := int [ "/" int ]
//! gen     := ("v" | "z" | "x" | "y") int?
//! sign    := "+" | "-"
//! ```
//!
//! `v<i>` names Grassmann generators, `z<i>` square-free variables; bare
//! `x`, `y`, `z` are aliases for `z1`, `z2`, `z3` in square-free rings.

use std::fmt;
use std::str::FromStr;

use grassmat::grassmann::{GrassmannElement, GrassmannRing};
use grassmat::matrix::Matrix;
use grassmat::quotient::{SquareFreePoly, SquareFreeRing};
use grassmat::ring::RationalField;
use grassmat::Rational;

/// A syntax or range error, with the byte offset it was detected at.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl ParseError {
    fn new(pos: usize, msg: impl Into<String>) -> Self {
        Self { pos, msg: msg.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at byte {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Slash,
    Int(String),
    Gen { letter: char, index: Option<u32> },
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\r' | '\n' => i += 1,
            '+' => {
                out.push(Token { tok: Tok::Plus, pos: i });
                i += 1;
            }
            '-' => {
                out.push(Token { tok: Tok::Minus, pos: i });
                i += 1;
            }
            '*' => {
                out.push(Token { tok: Tok::Star, pos: i });
                i += 1;
            }
            '/' => {
                out.push(Token { tok: Tok::Slash, pos: i });
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Token { tok: Tok::Int(text[start..i].to_string()), pos: start });
            }
            'v' | 'z' | 'x' | 'y' => {
                let start = i;
                i += 1;
                let digits_start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let index = if i > digits_start {
                    Some(text[digits_start..i].parse::<u32>().map_err(|_| {
                        ParseError::new(digits_start, "generator index too large")
                    })?)
                } else {
                    None
                };
                out.push(Token { tok: Tok::Gen { letter: c, index }, pos: start });
            }
            other => {
                return Err(ParseError::new(i, format!("unexpected character {other:?}")));
            }
        }
    }
    Ok(out)
}

/// One additive term of the grammar: accumulated sign, optional explicit
/// coefficient, and the generator factors in written order.
#[derive(Debug, Clone)]
struct RawTerm {
    negative: bool,
    coeff: Rational,
    gens: Vec<(char, Option<u32>, usize)>,
}

fn parse_terms(text: &str) -> Result<Vec<RawTerm>, ParseError> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(ParseError::new(0, "empty element"));
    }
    let mut terms = Vec::new();
    let mut i = 0;
    let mut negative = match toks[0].tok {
        Tok::Minus => {
            i += 1;
            true
        }
        Tok::Plus => {
            i += 1;
            false
        }
        _ => false,
    };
    loop {
        let Some(first) = toks.get(i) else {
            return Err(ParseError::new(text.len(), "expected a term"));
        };
        let mut coeff = Rational::one();
        let mut gens = Vec::new();
        match &first.tok {
            Tok::Int(numer) => {
                i += 1;
                let mut literal = numer.clone();
                if matches!(toks.get(i).map(|t| &t.tok), Some(Tok::Slash)) {
                    i += 1;
                    match toks.get(i) {
                        Some(Token { tok: Tok::Int(denom), pos }) => {
                            if denom.chars().all(|c| c == '0') {
                                return Err(ParseError::new(*pos, "zero denominator"));
                            }
                            literal.push('/');
                            literal.push_str(denom);
                            i += 1;
                        }
                        other => {
                            let pos = other.map(|t| t.pos).unwrap_or(text.len());
                            return Err(ParseError::new(pos, "expected integer after '/'"));
                        }
                    }
                }
                coeff = Rational::from_str(&literal)
                    .map_err(|e| ParseError::new(first.pos, e.to_string()))?;
            }
            Tok::Gen { letter, index } => {
                i += 1;
                gens.push((*letter, *index, first.pos));
            }
            _ => {
                return Err(ParseError::new(first.pos, "expected a coefficient or generator"));
            }
        }
        while matches!(toks.get(i).map(|t| &t.tok), Some(Tok::Star)) {
            i += 1;
            match toks.get(i) {
                Some(Token { tok: Tok::Gen { letter, index }, pos }) => {
                    gens.push((*letter, *index, *pos));
                    i += 1;
                }
                other => {
                    let pos = other.map(|t| t.pos).unwrap_or(text.len());
                    return Err(ParseError::new(pos, "expected generator after '*'"));
                }
            }
        }
        terms.push(RawTerm { negative, coeff, gens });
        match toks.get(i) {
            None => return Ok(terms),
            Some(Token { tok: Tok::Plus, .. }) => {
                negative = false;
                i += 1;
            }
            Some(Token { tok: Tok::Minus, .. }) => {
                negative = true;
                i += 1;
            }
            Some(t) => {
                return Err(ParseError::new(t.pos, "expected '+' or '-'"));
            }
        }
    }
}

fn signed(coeff: &Rational, negative: bool) -> Rational {
    if negative {
        -coeff
    } else {
        coeff.clone()
    }
}

/// Parses an element of the Grassmann algebra on `m` generators.
pub fn parse_grassmann(text: &str, m: u32) -> Result<GrassmannElement, ParseError> {
    let terms = parse_terms(text)?;
    let mut acc = GrassmannElement::zero(m).map_err(|e| ParseError::new(0, e.to_string()))?;
    for term in terms {
        let mut elem = GrassmannElement::scalar(m, signed(&term.coeff, term.negative))
            .map_err(|e| ParseError::new(0, e.to_string()))?;
        for (letter, index, pos) in &term.gens {
            let index = match (letter, index) {
                ('v', Some(i)) => *i,
                ('v', None) => {
                    return Err(ParseError::new(*pos, "generator index required after 'v'"));
                }
                (other, _) => {
                    return Err(ParseError::new(
                        *pos,
                        format!("generator '{other}' not valid here; use v<i>"),
                    ));
                }
            };
            if index == 0 || index > m {
                return Err(ParseError::new(
                    *pos,
                    format!("generator index out of range: v{index} (m = {m})"),
                ));
            }
            let gen = GrassmannElement::generator(m, index)
                .map_err(|e| ParseError::new(*pos, e.to_string()))?;
            elem = elem.mul(&gen).expect("same m");
        }
        acc = acc.add(&elem).expect("same m");
    }
    Ok(acc)
}

/// Parses an element of the square-free quotient on `m` variables. Bare
/// `x`, `y`, `z` alias `z1`, `z2`, `z3`.
pub fn parse_sqfree(text: &str, m: u32) -> Result<SquareFreePoly, ParseError> {
    let terms = parse_terms(text)?;
    let mut acc = SquareFreePoly::zero(m).map_err(|e| ParseError::new(0, e.to_string()))?;
    for term in terms {
        let mut elem = SquareFreePoly::scalar(m, signed(&term.coeff, term.negative))
            .map_err(|e| ParseError::new(0, e.to_string()))?;
        for (letter, index, pos) in &term.gens {
            let index = match (letter, index) {
                ('z', Some(i)) => *i,
                ('x', None) => 1,
                ('y', None) => 2,
                ('z', None) => 3,
                ('x' | 'y', Some(_)) => {
                    return Err(ParseError::new(
                        *pos,
                        format!("'{letter}' takes no index; it aliases a fixed variable"),
                    ));
                }
                (other, _) => {
                    return Err(ParseError::new(
                        *pos,
                        format!("generator '{other}' not valid here; use z<i>, x, y or z"),
                    ));
                }
            };
            if index == 0 || index > m {
                return Err(ParseError::new(
                    *pos,
                    format!("variable index out of range: z{index} (m = {m})"),
                ));
            }
            let var = SquareFreePoly::variable(m, index)
                .map_err(|e| ParseError::new(*pos, e.to_string()))?;
            elem = elem.mul(&var).expect("same m");
        }
        acc = acc.add(&elem).expect("same m");
    }
    Ok(acc)
}

/// Parses a rational scalar (sums of signed fractions, no generators).
pub fn parse_rational(text: &str) -> Result<Rational, ParseError> {
    let terms = parse_terms(text)?;
    let mut acc = Rational::zero();
    for term in terms {
        if let Some((letter, _, pos)) = term.gens.first() {
            return Err(ParseError::new(
                *pos,
                format!("generator '{letter}' not valid in a rational scalar"),
            ));
        }
        acc = &acc + &signed(&term.coeff, term.negative);
    }
    Ok(acc)
}

/// Parses a rational quaternion written `a + b*v1 + c*v2 + d*v3`
/// (`v1, v2, v3` standing for the quaternion units i, j, k).
pub fn parse_quaternion(text: &str) -> Result<[Rational; 4], ParseError> {
    let elem = parse_grassmann(text, 3)?;
    for (mask, _) in elem.terms() {
        if ![0b000, 0b001, 0b010, 0b100].contains(mask) {
            return Err(ParseError::new(
                0,
                "quaternions are spanned by 1, v1, v2, v3; products are not allowed",
            ));
        }
    }
    Ok([elem.coeff(0), elem.coeff(0b001), elem.coeff(0b010), elem.coeff(0b100)])
}

/// A matrix read from the text format, tagged by its entry ring.
#[derive(Debug, Clone)]
pub enum ParsedMatrix {
    Grassmann(Matrix<GrassmannRing>),
    SqFree(Matrix<SquareFreeRing>),
    Rational(Matrix<RationalField>),
}

/// Parses the matrix text format: a header `n=<N> ring=<grassmann m |
/// sqfree m | rational>` followed by `N` lines of `N` entries separated by
/// `;`.
pub fn parse_matrix(text: &str) -> Result<ParsedMatrix, ParseError> {
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| ParseError::new(0, "empty matrix file"))?;
    let mut fields = header.split_whitespace();
    let n: usize = fields
        .next()
        .and_then(|f| f.strip_prefix("n="))
        .and_then(|v| v.parse().ok())
        .ok_or_else(|| ParseError::new(0, "header must start with n=<N>"))?;
    let kind = fields
        .next()
        .and_then(|f| f.strip_prefix("ring="))
        .ok_or_else(|| ParseError::new(0, "header must contain ring=<kind>"))?;
    let ring_m = |fields: &mut dyn Iterator<Item = &str>| -> Result<u32, ParseError> {
        fields
            .next()
            .and_then(|v| v.parse().ok())
            .ok_or_else(|| ParseError::new(0, format!("ring {kind} needs a generator count")))
    };

    let mut rows: Vec<Vec<&str>> = Vec::new();
    for line in lines {
        if line.trim().is_empty() {
            continue;
        }
        rows.push(line.split(';').map(|e| e.trim()).collect());
    }
    if rows.len() != n {
        return Err(ParseError::new(0, format!("expected {n} rows, found {}", rows.len())));
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(ParseError::new(
                0,
                format!("row {} has {} entries, expected {n}", i + 1, row.len()),
            ));
        }
    }

    let entry_err = |i: usize, j: usize, e: ParseError| {
        ParseError::new(e.pos, format!("row {} entry {}: {}", i + 1, j + 1, e.msg))
    };
    match kind {
        "grassmann" => {
            let m = ring_m(&mut fields)?;
            let ring = GrassmannRing::new(m).map_err(|e| ParseError::new(0, e.to_string()))?;
            let mut parsed = Vec::with_capacity(n);
            for (i, row) in rows.iter().enumerate() {
                let mut out = Vec::with_capacity(n);
                for (j, entry) in row.iter().enumerate() {
                    out.push(parse_grassmann(entry, m).map_err(|e| entry_err(i, j, e))?);
                }
                parsed.push(out);
            }
            Ok(ParsedMatrix::Grassmann(
                Matrix::from_rows(ring, parsed).map_err(|e| ParseError::new(0, e.to_string()))?,
            ))
        }
        "sqfree" => {
            let m = ring_m(&mut fields)?;
            let ring = SquareFreeRing::new(m).map_err(|e| ParseError::new(0, e.to_string()))?;
            let mut parsed = Vec::with_capacity(n);
            for (i, row) in rows.iter().enumerate() {
                let mut out = Vec::with_capacity(n);
                for (j, entry) in row.iter().enumerate() {
                    out.push(parse_sqfree(entry, m).map_err(|e| entry_err(i, j, e))?);
                }
                parsed.push(out);
            }
            Ok(ParsedMatrix::SqFree(
                Matrix::from_rows(ring, parsed).map_err(|e| ParseError::new(0, e.to_string()))?,
            ))
        }
        "rational" => {
            let mut parsed = Vec::with_capacity(n);
            for (i, row) in rows.iter().enumerate() {
                let mut out = Vec::with_capacity(n);
                for (j, entry) in row.iter().enumerate() {
                    out.push(parse_rational(entry).map_err(|e| entry_err(i, j, e))?);
                }
                parsed.push(out);
            }
            Ok(ParsedMatrix::Rational(
                Matrix::from_rows(RationalField, parsed)
                    .map_err(|e| ParseError::new(0, e.to_string()))?,
            ))
        }
        other => Err(ParseError::new(0, format!("unknown ring kind {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grassmann_examples() {
        let e = parse_grassmann("1 - 2/3*v1*v2", 2).unwrap();
        assert_eq!(e.coeff(0), Rational::one());
        assert_eq!(e.coeff(0b11), Rational::from_ratio(-2, 3).unwrap());
        // Written-order products pick up anticommutation signs.
        let e = parse_grassmann("v2*v1", 2).unwrap();
        assert_eq!(e.coeff(0b11), Rational::from_integer(-1));
        // Repeated generators vanish by the defining relation.
        assert!(parse_grassmann("v1*v1", 2).unwrap().is_zero());
    }

    #[test]
    fn grassmann_range_and_syntax_errors() {
        let err = parse_grassmann("v3", 2).unwrap_err();
        assert!(err.msg.contains("generator index out of range"));
        assert_eq!(err.pos, 0);
        let err = parse_grassmann("1 + v1*", 2).unwrap_err();
        assert!(err.msg.contains("expected generator after '*'"));
        let err = parse_grassmann("2 & 3", 2).unwrap_err();
        assert_eq!(err.pos, 2);
        let err = parse_grassmann("z1", 2).unwrap_err();
        assert!(err.msg.contains("not valid here"));
        let err = parse_grassmann("1/0", 2).unwrap_err();
        assert!(err.msg.contains("zero denominator"));
    }

    #[test]
    fn sqfree_relation_and_aliases() {
        assert!(parse_sqfree("z1*z1", 2).unwrap().is_zero());
        let e = parse_sqfree("x*y - z", 3).unwrap();
        assert_eq!(e.coeff(0b011), Rational::one());
        assert_eq!(e.coeff(0b100), Rational::from_integer(-1));
        assert!(parse_sqfree("z", 2).is_err());
        assert!(parse_sqfree("x2", 3).is_err());
    }

    #[test]
    fn rational_sums() {
        assert_eq!(parse_rational("2/4").unwrap(), Rational::from_ratio(1, 2).unwrap());
        assert_eq!(parse_rational("-1 + 1/3").unwrap(), Rational::from_ratio(-2, 3).unwrap());
        assert!(parse_rational("v1").is_err());
    }

    #[test]
    fn quaternion_components() {
        let q = parse_quaternion("1 - 2*v1 + 1/2*v3").unwrap();
        assert_eq!(q[0], Rational::one());
        assert_eq!(q[1], Rational::from_integer(-2));
        assert_eq!(q[2], Rational::zero());
        assert_eq!(q[3], Rational::from_ratio(1, 2).unwrap());
        assert!(parse_quaternion("v1*v2").is_err());
    }

    #[test]
    fn matrix_round_trip() {
        let text = "n=2 ring=grassmann 2\n1 + v1 ; v2\n0 ; 1 - v1*v2\n";
        let ParsedMatrix::Grassmann(mat) = parse_matrix(text).unwrap() else {
            panic!("expected grassmann matrix");
        };
        assert_eq!(mat.to_string(), text);
        let again = parse_matrix(&mat.to_string()).unwrap();
        let ParsedMatrix::Grassmann(mat2) = again else { panic!() };
        assert_eq!(mat, mat2);
    }

    #[test]
    fn matrix_header_errors() {
        assert!(parse_matrix("").is_err());
        assert!(parse_matrix("n=2 ring=grassmann 2\n1 ; 0\n").is_err());
        assert!(parse_matrix("n=1 ring=widget\n1\n").is_err());
        assert!(parse_matrix("ring=rational n=1\n1\n").is_err());
    }

    #[test]
    fn canonical_print_parse_round_trip() {
        for text in ["0", "-v1", "1 - 2/3*v1*v2 + v3", "5/7"] {
            let e = parse_grassmann(text, 3).unwrap();
            assert_eq!(e.to_string(), text);
        }
    }
}
