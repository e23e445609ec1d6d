//! Text form of connected-sum expressions.
//!
//! ```text
//! Expr  := Term ('#' Term)*
//! Term  := [Nat '*'] Block
//! Block := 'CP2' | '~CP2' | 'S1xS3' | 'K3' | 'S4'
//!        | 'Chen(' Int ',' Int ')'
//!        | 'Custom(' Name ',' Int ',' Int ',' Nat ')'
//! ```
//!
//! Whitespace may appear between any two tokens. The parser is recursive
//! descent with one token of lookahead and never backtracks, so every error
//! carries the byte offset of the offending token.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::manifold::{AlgebraError, BuildingBlock, ManifoldExpr};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("connected_sum_parser: syntax error at byte {position}: expected {expected}, found {found}")]
    Syntax {
        position: usize,
        expected: String,
        found: String,
    },
    #[error("connected_sum_parser: unknown block {name:?} at byte {position}")]
    UnknownBlock { position: usize, name: String },
    #[error("connected_sum_parser: zero multiplicity at byte {position}")]
    ZeroMultiplicity { position: usize },
    #[error("connected_sum_parser: custom block at byte {position} has odd e + sigma (e = {e}, sigma = {sigma})")]
    ParityViolation {
        position: usize,
        e: BigInt,
        sigma: BigInt,
    },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            Self::Syntax { position, .. }
            | Self::UnknownBlock { position, .. }
            | Self::ZeroMultiplicity { position }
            | Self::ParityViolation { position, .. } => *position,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Hash,
    Star,
    Tilde,
    Minus,
    LParen,
    RParen,
    Comma,
    Num(String),
    Ident(String),
    Bad(char),
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Hash => f.write_str("'#'"),
            Tok::Star => f.write_str("'*'"),
            Tok::Tilde => f.write_str("'~'"),
            Tok::Minus => f.write_str("'-'"),
            Tok::LParen => f.write_str("'('"),
            Tok::RParen => f.write_str("')'"),
            Tok::Comma => f.write_str("','"),
            Tok::Num(n) => write!(f, "number {n}"),
            Tok::Ident(s) => write!(f, "identifier {s:?}"),
            Tok::Bad(c) => write!(f, "character {c:?}"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn next_token(&mut self) -> (usize, Tok) {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        let Some(c) = self.src[start..].chars().next() else {
            return (start, Tok::End);
        };
        let simple = match c {
            '#' => Some(Tok::Hash),
            '*' => Some(Tok::Star),
            '~' => Some(Tok::Tilde),
            '-' => Some(Tok::Minus),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            _ => None,
        };
        if let Some(t) = simple {
            self.pos += 1;
            return (start, t);
        }
        let take_while = |pos: &mut usize, pred: fn(u8) -> bool| {
            while *pos < bytes.len() && pred(bytes[*pos]) {
                *pos += 1;
            }
        };
        if c.is_ascii_digit() {
            take_while(&mut self.pos, |b| b.is_ascii_digit());
            (start, Tok::Num(self.src[start..self.pos].to_string()))
        } else if c.is_ascii_alphabetic() || c == '_' {
            take_while(&mut self.pos, |b| b.is_ascii_alphanumeric() || b == b'_');
            (start, Tok::Ident(self.src[start..self.pos].to_string()))
        } else {
            self.pos += c.len_utf8();
            (start, Tok::Bad(c))
        }
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    pos: usize,
    tok: Tok,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Self {
        let mut lexer = Lexer { src, pos: 0 };
        let (pos, tok) = lexer.next_token();
        Self { lexer, pos, tok }
    }

    fn bump(&mut self) -> (usize, Tok) {
        let (pos, tok) = self.lexer.next_token();
        let old_pos = std::mem::replace(&mut self.pos, pos);
        let old_tok = std::mem::replace(&mut self.tok, tok);
        (old_pos, old_tok)
    }

    fn unexpected<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            position: self.pos,
            expected: expected.to_string(),
            found: self.tok.to_string(),
        })
    }

    fn expect(&mut self, want: Tok) -> Result<(), ParseError> {
        if self.tok == want {
            self.bump();
            Ok(())
        } else {
            self.unexpected(&want.to_string())
        }
    }

    fn expr(&mut self) -> Result<ManifoldExpr, ParseError> {
        let mut summands = vec![self.term()?];
        loop {
            match self.tok {
                Tok::Hash => {
                    self.bump();
                    summands.push(self.term()?);
                }
                Tok::End => break,
                _ => return self.unexpected("'#' or end of input"),
            }
        }
        Ok(ManifoldExpr::new(summands).expect("parser yields nonempty positive summands"))
    }

    fn term(&mut self) -> Result<(BuildingBlock, u64), ParseError> {
        if let Tok::Num(digits) = &self.tok {
            let position = self.pos;
            let mult: u64 = match digits.parse() {
                Ok(m) => m,
                Err(_) => return self.unexpected("multiplicity below 2^64"),
            };
            self.bump();
            if mult == 0 {
                return Err(ParseError::ZeroMultiplicity { position });
            }
            self.expect(Tok::Star)?;
            Ok((self.block()?, mult))
        } else {
            Ok((self.block()?, 1))
        }
    }

    fn block(&mut self) -> Result<BuildingBlock, ParseError> {
        let position = self.pos;
        match self.tok.clone() {
            Tok::Tilde => {
                self.bump();
                match &self.tok {
                    Tok::Ident(s) if s == "CP2" => {
                        self.bump();
                        Ok(BuildingBlock::CP2Bar)
                    }
                    _ => self.unexpected("'CP2' after '~'"),
                }
            }
            Tok::Ident(name) => {
                self.bump();
                match name.as_str() {
                    "CP2" => Ok(BuildingBlock::CP2),
                    "S1xS3" => Ok(BuildingBlock::S1xS3),
                    "K3" => Ok(BuildingBlock::K3),
                    "S4" => Ok(BuildingBlock::S4),
                    "Chen" => {
                        self.expect(Tok::LParen)?;
                        let x = self.int()?;
                        self.expect(Tok::Comma)?;
                        let y = self.int()?;
                        self.expect(Tok::RParen)?;
                        Ok(BuildingBlock::chen(x, y))
                    }
                    "Custom" => {
                        self.expect(Tok::LParen)?;
                        let name = match self.bump() {
                            (_, Tok::Ident(n)) => n,
                            (p, t) => {
                                return Err(ParseError::Syntax {
                                    position: p,
                                    expected: "block name".into(),
                                    found: t.to_string(),
                                })
                            }
                        };
                        self.expect(Tok::Comma)?;
                        let e = self.int()?;
                        self.expect(Tok::Comma)?;
                        let sigma = self.int()?;
                        self.expect(Tok::Comma)?;
                        let b1 = self.nat()?;
                        self.expect(Tok::RParen)?;
                        BuildingBlock::custom(name, e, sigma, b1).map_err(|err| match err {
                            AlgebraError::ParityViolation { e, sigma } => {
                                ParseError::ParityViolation { position, e, sigma }
                            }
                            other => unreachable!("lexer admits only valid custom data: {other}"),
                        })
                    }
                    _ => Err(ParseError::UnknownBlock { position, name }),
                }
            }
            _ => self.unexpected("block"),
        }
    }

    fn nat(&mut self) -> Result<BigInt, ParseError> {
        match &self.tok {
            Tok::Num(d) => {
                let v = d.parse().expect("digits parse as BigInt");
                self.bump();
                Ok(v)
            }
            _ => self.unexpected("natural number"),
        }
    }

    fn int(&mut self) -> Result<BigInt, ParseError> {
        if self.tok == Tok::Minus {
            self.bump();
            match &self.tok {
                Tok::Num(_) => Ok(-self.nat()?),
                _ => self.unexpected("digits after '-'"),
            }
        } else {
            match &self.tok {
                Tok::Num(_) => self.nat(),
                _ => self.unexpected("integer"),
            }
        }
    }
}

/// Parses an expression such as `K3 # 3*~CP2 # 2*S1xS3`.
pub fn parse(src: &str) -> Result<ManifoldExpr, ParseError> {
    Parser::new(src).expr()
}

impl fmt::Display for BuildingBlock {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuildingBlock::Chen(s) => write!(f, "Chen({},{})", s.x(), s.y()),
            BuildingBlock::K3 => f.write_str("K3"),
            BuildingBlock::CP2 => f.write_str("CP2"),
            BuildingBlock::CP2Bar => f.write_str("~CP2"),
            BuildingBlock::S1xS3 => f.write_str("S1xS3"),
            BuildingBlock::S4 => f.write_str("S4"),
            BuildingBlock::Custom(c) => {
                write!(f, "Custom({},{},{},{})", c.name(), c.e(), c.sigma(), c.b1())
            }
        }
    }
}

/// Canonical text: equal blocks merged, fixed block order, `n*` prefix for
/// multiplicities above one.
pub fn format(expr: &ManifoldExpr) -> String {
    expr.summand_multiset()
        .into_iter()
        .map(|(b, m)| if m == 1 { b.to_string() } else { format!("{m}*{b}") })
        .collect::<Vec<_>>()
        .join(" # ")
}

impl fmt::Display for ManifoldExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_mixed_expression() {
        let e = parse("K3 # 3*~CP2 # 2*S1xS3").unwrap();
        assert_eq!(
            e.summands(),
            &[
                (BuildingBlock::K3, 1),
                (BuildingBlock::CP2Bar, 3),
                (BuildingBlock::S1xS3, 2)
            ]
        );
    }

    #[test]
    fn parses_chen_and_custom() {
        let e = parse("Chen(2000000,11000000)").unwrap();
        assert_eq!(e.summands(), &[(BuildingBlock::chen(2_000_000, 11_000_000), 1)]);
        let e = parse("Custom( Enriques , 12 , -8 , 0 ) # S4").unwrap();
        assert_eq!(
            e.summands()[0].0,
            BuildingBlock::custom("Enriques", 12, -8, 0).unwrap()
        );
        let e = parse("Chen(-1, -2)").unwrap();
        assert_eq!(e.summands()[0].0, BuildingBlock::chen(-1, -2));
    }

    #[test]
    fn double_hash_is_a_syntax_error_at_second_hash() {
        let err = parse("K3 ## CP2").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { position: 4, .. }), "{err:?}");
    }

    #[test]
    fn error_cases() {
        assert!(matches!(parse(""), Err(ParseError::Syntax { position: 0, .. })));
        assert!(matches!(
            parse("K3 # Foo"),
            Err(ParseError::UnknownBlock { position: 5, .. })
        ));
        assert!(matches!(
            parse("0*K3"),
            Err(ParseError::ZeroMultiplicity { position: 0 })
        ));
        assert!(matches!(
            parse("K3 # Custom(X,3,0,0)"),
            Err(ParseError::ParityViolation { position: 5, .. })
        ));
        assert!(matches!(parse("K3 CP2"), Err(ParseError::Syntax { position: 3, .. })));
        assert!(matches!(parse("~K3"), Err(ParseError::Syntax { position: 1, .. })));
        assert!(matches!(parse("Chen(1)"), Err(ParseError::Syntax { position: 6, .. })));
        assert!(matches!(
            parse("Custom(X,2,0,-1)"),
            Err(ParseError::Syntax { position: 13, .. })
        ));
        assert!(matches!(
            parse("99999999999999999999*K3"),
            Err(ParseError::Syntax { position: 0, .. })
        ));
        assert!(matches!(parse("K3 # é"), Err(ParseError::Syntax { position: 5, .. })));
        assert!(matches!(parse("3 K3"), Err(ParseError::Syntax { position: 2, .. })));
    }

    #[test]
    fn canonical_format() {
        let e = ManifoldExpr::new(vec![(BuildingBlock::CP2Bar, 3), (BuildingBlock::K3, 1)]).unwrap();
        assert_eq!(format(&e), "K3 # 3*~CP2");
        assert_eq!(format(&ManifoldExpr::single(BuildingBlock::S1xS3)), "S1xS3");
        let e = parse("S4 # ~CP2 # Custom(Z,0,0,2) # CP2 # Chen(5,9) # 2*~CP2").unwrap();
        assert_eq!(format(&e), "Chen(5,9) # CP2 # 3*~CP2 # S4 # Custom(Z,0,0,2)");
    }

    #[test]
    fn whitespace_is_insignificant() {
        let a = parse("2*K3#~CP2#Custom(A,2,0,1)").unwrap();
        let b = parse("  2 *  K3 #\t~ CP2 # Custom ( A , 2 , 0 , 1 )\n").unwrap();
        assert_eq!(a, b);
    }
}
