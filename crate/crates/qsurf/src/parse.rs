//! Expression parsing for the command line.
//!
//! The grammar covers *-polynomials over one algebra's generators:
//!
//! ```text
//! expression := ['-'] term (('+' | '-') term)*
//! term       := factor (('*' | '/') factor)*
//! factor     := atom postfix*
//! postfix    := '\''                  adjoint
//!             | '^' ['-'] integer    power
//! atom       := number               decimal literal
//!             | name                 generator, or scalar q / c / i
//!             | '(' expression ')'
//! ```
//!
//! Negative powers and division require an invertible scalar operand.
//! Everything the element printer emits parses back to the same element,
//! so normal forms can be piped through the tool again.

use crate::algebra::{AlgebraId, Element};
use crate::error::{Error, Result};
use crate::scalar::Ring;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Name(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Prime,
    LParen,
    RParen,
}

struct Lexed {
    toks: Vec<(usize, Tok)>,
    end: usize,
}

fn lex(input: &str) -> Result<Lexed> {
    let bytes = input.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => i += 1,
            b'+' => {
                toks.push((i, Tok::Plus));
                i += 1;
            }
            b'-' => {
                toks.push((i, Tok::Minus));
                i += 1;
            }
            b'*' => {
                toks.push((i, Tok::Star));
                i += 1;
            }
            b'/' => {
                toks.push((i, Tok::Slash));
                i += 1;
            }
            b'^' => {
                toks.push((i, Tok::Caret));
                i += 1;
            }
            b'\'' => {
                toks.push((i, Tok::Prime));
                i += 1;
            }
            b'(' => {
                toks.push((i, Tok::LParen));
                i += 1;
            }
            b')' => {
                toks.push((i, Tok::RParen));
                i += 1;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if i < bytes.len() && bytes[i] == b'.' {
                    i += 1;
                    if i >= bytes.len() || !bytes[i].is_ascii_digit() {
                        return Err(Error::Parse {
                            offset: i,
                            message: "expected digits after decimal point".into(),
                        });
                    }
                    while i < bytes.len() && bytes[i].is_ascii_digit() {
                        i += 1;
                    }
                }
                toks.push((start, Tok::Num(input[start..i].to_string())));
            }
            _ if b.is_ascii_alphabetic() => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                    i += 1;
                }
                toks.push((start, Tok::Name(input[start..i].to_string())));
            }
            _ => {
                return Err(Error::Parse {
                    offset: i,
                    message: format!("unexpected character `{}`", &input[i..i + 1]),
                });
            }
        }
    }
    Ok(Lexed { toks, end: input.len() })
}

struct Parser<R: Ring> {
    toks: Vec<(usize, Tok)>,
    end: usize,
    pos: usize,
    ring: R,
    algebra: AlgebraId,
}

impl<R: Ring> Parser<R> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(o, _)| *o)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse { offset: self.offset(), message: message.into() })
    }

    fn expression(&mut self) -> Result<Element<R>> {
        let mut negate = false;
        if self.peek() == Some(&Tok::Minus) {
            self.bump();
            negate = true;
        }
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Element<R>> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(Tok::Slash) => {
                    let at = self.offset();
                    self.bump();
                    let f = self.factor()?;
                    let k = match self.as_constant(&f) {
                        Some(k) => k,
                        None => {
                            return Err(Error::Parse {
                                offset: at,
                                message: "division needs a scalar divisor".into(),
                            })
                        }
                    };
                    let inv = match self.ring.inv(&k) {
                        Some(v) => v,
                        None => {
                            return Err(Error::Parse {
                                offset: at,
                                message: "divisor is not invertible".into(),
                            })
                        }
                    };
                    acc = acc.scale(&inv);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Element<R>> {
        let mut acc = self.atom()?;
        loop {
            match self.peek() {
                Some(Tok::Prime) => {
                    self.bump();
                    acc = acc.star();
                }
                Some(Tok::Caret) => {
                    let at = self.offset();
                    self.bump();
                    let mut neg = false;
                    if self.peek() == Some(&Tok::Minus) {
                        self.bump();
                        neg = true;
                    }
                    let n = match self.bump() {
                        Some(Tok::Num(s)) if !s.contains('.') => {
                            s.parse::<u32>().map_err(|_| Error::Parse {
                                offset: at,
                                message: format!("exponent `{s}` out of range"),
                            })?
                        }
                        _ => {
                            return Err(Error::Parse {
                                offset: at,
                                message: "expected an integer exponent after `^`".into(),
                            })
                        }
                    };
                    if neg {
                        let base = match self.as_constant(&acc).and_then(|k| self.ring.inv(&k))
                        {
                            Some(v) => v,
                            None => {
                                return Err(Error::Parse {
                                    offset: at,
                                    message:
                                        "negative powers need an invertible scalar base".into(),
                                })
                            }
                        };
                        acc = Element::constant(self.ring.clone(), self.algebra, base).pow(n);
                    } else {
                        acc = acc.pow(n);
                    }
                }
                _ => return Ok(acc),
            }
        }
    }

    fn atom(&mut self) -> Result<Element<R>> {
        let at = self.offset();
        match self.bump() {
            Some(Tok::Num(s)) => {
                let k = self.literal(&s, at)?;
                Ok(Element::constant(self.ring.clone(), self.algebra, k))
            }
            Some(Tok::Name(name)) => {
                if let Some(g) = self.algebra.gen_index(&name) {
                    return Element::generator(self.ring.clone(), self.algebra, g);
                }
                let k = match name.as_str() {
                    "q" => self.ring.q_pow(1),
                    "i" => self.ring.i(),
                    "c" => match self.ring.c() {
                        Some(c) => c,
                        None => {
                            return Err(Error::Parse {
                                offset: at,
                                message: "the scalar `c` is not set in this context".into(),
                            })
                        }
                    },
                    _ => {
                        return Err(Error::Parse {
                            offset: at,
                            message: format!(
                                "unknown name `{name}` (generators of {}: {})",
                                self.algebra.name(),
                                self.algebra
                                    .gens()
                                    .iter()
                                    .map(|g| g.name)
                                    .collect::<Vec<_>>()
                                    .join(", ")
                            ),
                        })
                    }
                };
                Ok(Element::constant(self.ring.clone(), self.algebra, k))
            }
            Some(Tok::LParen) => {
                let e = self.expression()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(Error::Parse {
                        offset: self.toks.get(self.pos.saturating_sub(1)).map_or(self.end, |(o, _)| *o),
                        message: "expected `)`".into(),
                    }),
                }
            }
            Some(other) => Err(Error::Parse {
                offset: at,
                message: format!("expected a value, found `{other:?}`"),
            }),
            None => Err(Error::Parse {
                offset: self.end,
                message: "unexpected end of expression".into(),
            }),
        }
    }

    /// Decimal literals become exact ratios: `0.25` is `25/100`.
    fn literal(&self, s: &str, at: usize) -> Result<R::Elem> {
        let digits: String = s.chars().filter(|c| *c != '.').collect();
        if digits.len() > 18 {
            return Err(Error::Parse {
                offset: at,
                message: "numeric literal has too many digits".into(),
            });
        }
        let numer: i64 = digits.parse().map_err(|_| Error::Parse {
            offset: at,
            message: format!("bad numeric literal `{s}`"),
        })?;
        let frac_digits = s.split('.').nth(1).map_or(0, str::len) as u32;
        let denom = 10i64.pow(frac_digits);
        Ok(self.ring.from_ratio(numer, denom))
    }

    fn as_constant(&self, e: &Element<R>) -> Option<R::Elem> {
        let mut terms = e.terms();
        match terms.next() {
            None => Some(self.ring.zero()),
            Some((w, k)) if w.0.is_empty() && terms.next().is_none() => Some(k.clone()),
            _ => None,
        }
    }
}

/// Parse an expression over the generators of `algebra` with coefficients
/// in `ring`.
pub fn parse_expression<R: Ring>(
    input: &str,
    ring: R,
    algebra: AlgebraId,
) -> Result<Element<R>> {
    let Lexed { toks, end } = lex(input)?;
    if toks.is_empty() {
        return Err(Error::Parse { offset: 0, message: "empty expression".into() });
    }
    let mut p = Parser { toks, end, pos: 0, ring, algebra };
    let e = p.expression()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input after expression");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Exact, Floats, QcPoly};
    use crate::surfaces;

    fn exact(input: &str, algebra: AlgebraId) -> Result<Element<Exact>> {
        parse_expression(input, Exact, algebra)
    }

    #[test]
    fn structures_match_hand_built_elements() {
        let alg = AlgebraId::Equator;
        let a = Element::generator(Exact, alg, 0).unwrap();
        let b = Element::generator(Exact, alg, 1).unwrap();

        assert_eq!(exact("A*B", alg).unwrap(), &a * &b);
        assert_eq!(exact("A + B'", alg).unwrap(), &a + &b.star());
        assert_eq!(exact("-A", alg).unwrap(), -&a);
        assert_eq!(
            exact("q^2*B*A", alg).unwrap(),
            (&b * &a).scale(&QcPoly::q_pow(2))
        );
        assert_eq!(exact("A^3", alg).unwrap(), a.pow(3));
        assert_eq!(exact("B'^2", alg).unwrap(), b.star().pow(2));
        assert_eq!(exact("(A + B)^2", alg).unwrap(), (&a + &b).pow(2));
        assert_eq!(
            exact("1/2 + 3/4*i", alg).unwrap(),
            Element::constant(
                Exact,
                alg,
                QcPoly::from_ratio(1, 2).add(&QcPoly::from_ratio(3, 4).mul(&QcPoly::i()))
            )
        );
        assert_eq!(
            exact("0.25*A", alg).unwrap(),
            a.scale(&QcPoly::from_ratio(1, 4))
        );
        assert_eq!(
            exact("A/2", alg).unwrap(),
            a.scale(&QcPoly::from_ratio(1, 2))
        );
        assert_eq!(
            exact("c*x", AlgebraId::Disc).unwrap(),
            Element::generator(Exact, AlgebraId::Disc, 0)
                .unwrap()
                .scale(&QcPoly::c_sym())
        );
        assert_eq!(
            exact("P*T'*R^2", AlgebraId::Rp2).unwrap(),
            &(&Element::generator(Exact, AlgebraId::Rp2, 0).unwrap()
                * &Element::generator(Exact, AlgebraId::Rp2, 2).unwrap().star())
                * &Element::generator(Exact, AlgebraId::Rp2, 1).unwrap().pow(2)
        );
    }

    #[test]
    fn parsed_expression_reaches_known_normal_form() {
        let pres = surfaces::equator(Exact);
        let lhs = pres
            .normal_form(&exact("B'*A*B", AlgebraId::Equator).unwrap())
            .unwrap();
        let rhs = exact("q^-2*A - q^-2*A^3", AlgebraId::Equator).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn display_round_trips() {
        let alg = AlgebraId::Equator;
        let pres = surfaces::equator(Exact);
        let corpus = [
            "A",
            "B'",
            "A*B - q^2*B*A",
            "B'*A*B",
            "B*B' + q^4*A^2",
            "(1/2 + 3/4*i)*A^2*B'",
            "q^-4*A - c*B + i*B'",
            "1 - A^2",
            "-B - A",
            "(A + B)*(A - B)",
            "2/3*A*B^2",
            "0.125*B'^3",
        ];
        for src in corpus {
            let e = exact(src, alg).unwrap();
            let printed = e.to_string();
            let back = exact(&printed, alg).unwrap();
            assert_eq!(back, e, "round trip through `{printed}`");
            // Normal forms round trip too.
            let nf = pres.normal_form(&e).unwrap();
            let back = exact(&nf.to_string(), alg).unwrap();
            assert_eq!(back, nf, "normal form round trip through `{nf}`");
        }

        // Float backend: complex coefficients print in parseable form.
        let ring = Floats::new(0.5, 1e-10).unwrap();
        let b = Element::generator(ring, alg, 1).unwrap();
        let e = b.scale(&crate::scalar::C64::new(0.3, -0.4));
        let printed = e.to_string();
        let back = parse_expression(&printed, ring, alg).unwrap();
        assert!((&back - &e).max_abs() < 1e-15);
    }

    #[test]
    fn errors_carry_useful_offsets() {
        let alg = AlgebraId::Equator;
        match exact("A + + B", alg) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
        match exact("A @ B", alg) {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        match exact("A + Q", alg) {
            Err(Error::Parse { offset, message }) => {
                assert_eq!(offset, 4);
                assert!(message.contains("unknown name"), "{message}");
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(exact("B^-1", alg), Err(Error::Parse { .. })));
        assert!(matches!(exact("A / B", alg), Err(Error::Parse { .. })));
        assert!(matches!(exact("A / 0", alg), Err(Error::Parse { .. })));
        assert!(matches!(exact("(A + B", alg), Err(Error::Parse { .. })));
        assert!(matches!(exact("A B", alg), Err(Error::Parse { .. })));
        assert!(matches!(exact("", alg), Err(Error::Parse { .. })));
        assert!(matches!(exact("A^2.5", alg), Err(Error::Parse { .. })));
        assert!(matches!(
            exact("12345678901234567890", alg),
            Err(Error::Parse { .. })
        ));
        // `x` belongs to the disc, not the sphere.
        assert!(matches!(exact("x", alg), Err(Error::Parse { .. })));
        // `c` is undefined on a float backend without a sphere parameter.
        let ring = Floats::new(0.5, 1e-10).unwrap();
        assert!(matches!(
            parse_expression("c*A", ring, alg),
            Err(Error::Parse { .. })
        ));
    }
}
