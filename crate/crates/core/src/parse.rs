//! Surface syntax for elements:
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := [coeff] factor+
//! factor := 'b' | 'P' nat | '1'
//! coeff  := nat
//! ```
//!
//! Juxtaposition is the free product; nothing is normalized while parsing.
//! A term may also be a bare coefficient, standing for a multiple of the
//! unit, so every output of [`Element::to_text`] parses back.

use crate::error::ParseError;
use crate::modular::{Fp, Prime};
use crate::term::{Element, Generator, Monomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    Nat(u64),
    Beta,
    Power(u32),
    Plus,
    Minus,
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let digits = |mut j: usize| {
        while j < bytes.len() && bytes[j].is_ascii_digit() {
            j += 1;
        }
        j
    };
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            _ if c.is_ascii_whitespace() => i += 1,
            b'+' => {
                out.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                out.push((i, Tok::Minus));
                i += 1;
            }
            b'b' => {
                out.push((i, Tok::Beta));
                i += 1;
            }
            b'P' => {
                let end = digits(i + 1);
                let k = src[i + 1..end]
                    .parse::<u32>()
                    .map_err(|_| ParseError { position: i + 1, expected: vec!["power index"] })?;
                out.push((i, Tok::Power(k)));
                i = end;
            }
            b'0'..=b'9' => {
                let end = digits(i);
                let n = src[i..end]
                    .parse::<u64>()
                    .map_err(|_| ParseError { position: i, expected: vec!["coefficient"] })?;
                out.push((i, Tok::Nat(n)));
                i = end;
            }
            _ => {
                return Err(ParseError { position: i, expected: vec!["'b'", "'P'", "number", "'+'", "'-'"] });
            }
        }
    }
    Ok(out)
}

/// Parses an expression into a formal element with coefficients reduced
/// mod p.
pub fn parse_expression(src: &str, p: Prime) -> Result<Element, ParseError> {
    let toks = lex(src)?;
    let mut pos = 0;
    let mut out = Element::zero();
    let mut sign = Fp::ONE;
    // a leading sign is accepted as well
    if let Some((_, Tok::Minus)) = toks.first() {
        sign = p.neg(Fp::ONE);
        pos = 1;
    } else if let Some((_, Tok::Plus)) = toks.first() {
        pos = 1;
    }
    loop {
        let (coeff, word) = parse_term(src, &toks, &mut pos, p)?;
        out.add_term(p, word, p.mul(sign, coeff));
        match toks.get(pos) {
            None => return Ok(out),
            Some((_, Tok::Plus)) => sign = Fp::ONE,
            Some((_, Tok::Minus)) => sign = p.neg(Fp::ONE),
            Some((at, _)) => return Err(ParseError { position: *at, expected: vec!["'+'", "'-'", "end of input"] }),
        }
        pos += 1;
    }
}

fn parse_term(src: &str, toks: &[(usize, Tok)], pos: &mut usize, p: Prime) -> Result<(Fp, Monomial), ParseError> {
    let start = *pos;
    let mut coeff = Fp::ONE;
    let mut letters = Vec::new();
    if let Some(&(_, Tok::Nat(n))) = toks.get(*pos) {
        coeff = p.reduce((n % p.get() as u64) as i64);
        *pos += 1;
    }
    while let Some(&(at, tok)) = toks.get(*pos) {
        match tok {
            Tok::Beta => letters.push(Generator::Beta),
            Tok::Power(k) => letters.push(Generator::Power(k)),
            Tok::Nat(1) => {}
            Tok::Nat(_) => return Err(ParseError { position: at, expected: vec!["'b'", "'P'", "'1'"] }),
            Tok::Plus | Tok::Minus => break,
        }
        *pos += 1;
    }
    if *pos == start {
        let at = toks.get(*pos).map(|t| t.0).unwrap_or(src.len());
        return Err(ParseError { position: at, expected: vec!["'b'", "'P'", "number"] });
    }
    Ok((coeff, Monomial::new(letters)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Algebra;
    use Generator::*;

    fn p3() -> Prime {
        Prime::new(3).unwrap()
    }

    fn w(gs: &[Generator]) -> Monomial {
        Monomial::new(gs.to_vec())
    }

    #[test]
    fn examples() {
        let p = p3();
        assert_eq!(parse_expression("b b", p).unwrap(), Element::monomial(w(&[Beta, Beta])));
        let e = parse_expression("2 P2 P0 + b", p).unwrap();
        let want = Element::from_terms(p, [(w(&[Power(2), Power(0)]), p.reduce(2)), (w(&[Beta]), Fp::ONE)]);
        assert_eq!(e, want);
        let a = Algebra::new(p);
        let e = a.normalize(&parse_expression("P1 P1", p).unwrap()).unwrap();
        assert_eq!(e, Element::from_terms(p, [(w(&[Power(2), Power(0)]), p.reduce(2))]));
    }

    #[test]
    fn units_signs_and_reduction() {
        let p = p3();
        assert_eq!(parse_expression("1", p).unwrap(), Element::one());
        assert_eq!(parse_expression("2", p).unwrap(), Element::one().scale(p, p.reduce(2)));
        assert_eq!(parse_expression("1 b 1", p).unwrap(), Element::generator(Beta));
        assert_eq!(parse_expression("4 b", p).unwrap(), Element::generator(Beta));
        assert!(parse_expression("b - b", p).unwrap().is_zero());
        assert!(parse_expression("0", p).unwrap().is_zero());
        assert_eq!(parse_expression("-b", p).unwrap(), Element::generator(Beta).scale(p, p.reduce(2)));
        assert_eq!(parse_expression("bP0", p).unwrap(), Element::monomial(w(&[Beta, Power(0)])));
    }

    #[test]
    fn errors_carry_position() {
        let p = p3();
        let e = parse_expression("b + x", p).unwrap_err();
        assert_eq!(e.position, 4);
        let e = parse_expression("b +", p).unwrap_err();
        assert_eq!(e.position, 3);
        let e = parse_expression("P b", p).unwrap_err();
        assert_eq!(e.position, 1);
        let e = parse_expression("b 2", p).unwrap_err();
        assert_eq!(e.position, 2);
        assert!(parse_expression("", p).is_err());
    }
}
