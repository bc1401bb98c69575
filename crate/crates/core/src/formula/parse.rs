use thiserror::Error;

use super::{Formula, MetaVar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("unknown operator {found:?} at byte {offset}")]
    UnknownOperator { offset: usize, found: String },
    #[error("unbalanced parenthesis at byte {offset}")]
    Unbalanced { offset: usize },
    #[error("expected {expected} at byte {offset}, found {found:?}")]
    Unexpected {
        offset: usize,
        expected: &'static str,
        found: String,
    },
    #[error("unexpected end of input at byte {offset}, expected {expected}")]
    UnexpectedEnd {
        offset: usize,
        expected: &'static str,
    },
}

impl ParseError {
    pub fn offset(&self) -> usize {
        match self {
            ParseError::UnknownOperator { offset, .. }
            | ParseError::Unbalanced { offset }
            | ParseError::Unexpected { offset, .. }
            | ParseError::UnexpectedEnd { offset, .. } => *offset,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Not,
    Or,
    And,
    Imp,
    Iff,
    Cond,
    Belief,
    Box,
    LParen,
    RParen,
    Top,
    Bottom,
    Ident(String),
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Not => "~".into(),
            Tok::Or => "|".into(),
            Tok::And => "&".into(),
            Tok::Imp => "->".into(),
            Tok::Iff => "<->".into(),
            Tok::Cond => ">".into(),
            Tok::Belief => "B".into(),
            Tok::Box => "[]".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::Top => "T".into(),
            Tok::Bottom => "F".into(),
            Tok::Ident(s) => s.clone(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'~' => Tok::Not,
            b'|' => Tok::Or,
            b'&' => Tok::And,
            b'>' => Tok::Cond,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Imp
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 2;
                Tok::Iff
            }
            b'[' if bytes.get(i + 1) == Some(&b']') => {
                i += 1;
                Tok::Box
            }
            b'a'..=b'z' => {
                let mut j = i + 1;
                while j < bytes.len()
                    && (bytes[j].is_ascii_lowercase()
                        || bytes[j].is_ascii_digit()
                        || bytes[j] == b'_')
                {
                    j += 1;
                }
                out.push((start, Tok::Ident(src[i..j].to_string())));
                i = j;
                continue;
            }
            b'A'..=b'Z' => {
                // `B` never glues to what follows, so `Bp` reads as `B p`.
                if c == b'B' {
                    Tok::Belief
                } else {
                    let mut j = i + 1;
                    while j < bytes.len() && bytes[j].is_ascii_uppercase() {
                        j += 1;
                    }
                    let word = &src[i..j];
                    let tok = match word {
                        "T" => Tok::Top,
                        "F" => Tok::Bottom,
                        _ if MetaVar::from_name(word).is_some() => Tok::Ident(word.to_string()),
                        _ => {
                            return Err(ParseError::UnknownOperator {
                                offset: start,
                                found: word.to_string(),
                            })
                        }
                    };
                    out.push((start, tok));
                    i = j;
                    continue;
                }
            }
            _ => {
                let ch = src[i..].chars().next().unwrap_or('?');
                return Err(ParseError::UnknownOperator {
                    offset: start,
                    found: ch.to_string(),
                });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(o, _)| *o).unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.imp()?;
        while self.eat(&Tok::Iff) {
            let rhs = self.imp()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    // `->` associates to the right.
    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.eat(&Tok::Imp) {
            let rhs = self.imp()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Or) {
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::And) {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let offset = self.offset();
        match self.bump() {
            Some(Tok::Not) => Ok(Formula::not(self.unary()?)),
            Some(Tok::Belief) => Ok(Formula::believes(self.unary()?)),
            Some(Tok::Box) => Ok(Formula::necessity(self.unary()?)),
            Some(Tok::Top) => Ok(Formula::top()),
            Some(Tok::Bottom) => Ok(Formula::bottom()),
            Some(Tok::Ident(name)) => Ok(Formula::Atom(name)),
            Some(Tok::LParen) => {
                let inner = self.iff()?;
                if self.eat(&Tok::Cond) {
                    let consequent = self.iff()?;
                    self.close(offset)?;
                    return Ok(Formula::cond(inner, consequent));
                }
                self.close(offset)?;
                Ok(inner)
            }
            Some(Tok::RParen) => Err(ParseError::Unbalanced { offset }),
            Some(other) => Err(ParseError::Unexpected {
                offset,
                expected: "a formula",
                found: other.text(),
            }),
            None => Err(ParseError::UnexpectedEnd {
                offset,
                expected: "a formula",
            }),
        }
    }

    fn close(&mut self, open: usize) -> Result<(), ParseError> {
        let offset = self.offset();
        match self.bump() {
            Some(Tok::RParen) => Ok(()),
            None => Err(ParseError::Unbalanced { offset: open }),
            Some(other) => Err(ParseError::Unexpected {
                offset,
                expected: "`)`",
                found: other.text(),
            }),
        }
    }
}

/// Parse the concrete syntax.
///
/// Precedence from loosest to tightest: `<->`, `->`, `|`, `&`, then the
/// prefix operators `~`, `B`, `[]`. `->` is right-associative, the others
/// left-associative. A conditional is always written `(a > b)`.
pub fn parse(src: &str) -> Result<Formula, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: src.len(),
    };
    let f = p.iff()?;
    let offset = p.offset();
    match p.bump() {
        None => Ok(f),
        Some(Tok::RParen) => Err(ParseError::Unbalanced { offset }),
        Some(other) => Err(ParseError::Unexpected {
            offset,
            expected: "end of input",
            found: other.text(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: &str) -> Formula {
        Formula::atom(n)
    }

    #[test]
    fn belief_of_conditional() {
        assert_eq!(
            parse("B(p > p)").unwrap(),
            Formula::believes(Formula::cond(a("p"), a("p")))
        );
    }

    #[test]
    fn atom() {
        assert_eq!(parse("p").unwrap(), a("p"));
        assert_eq!(parse("  x_1 ").unwrap(), a("x_1"));
    }

    #[test]
    fn possibility_expands_into_primitive_basis() {
        // hand expansion of p & q into ~(~p | ~q)
        let conj = Formula::Not(Box::new(Formula::Or(
            Box::new(Formula::Not(Box::new(a("p")))),
            Box::new(Formula::Not(Box::new(a("q")))),
        )));
        let expected = Formula::Not(Box::new(Formula::Necessity(Box::new(Formula::Not(
            Box::new(conj),
        )))));
        assert_eq!(parse("~[]~(p & q)").unwrap(), expected);
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse("p | q & r").unwrap(),
            Formula::or(a("p"), Formula::and(a("q"), a("r")))
        );
        assert_eq!(
            parse("p -> q -> r").unwrap(),
            Formula::implies(a("p"), Formula::implies(a("q"), a("r")))
        );
        assert_eq!(
            parse("p | q | r").unwrap(),
            Formula::or(Formula::or(a("p"), a("q")), a("r"))
        );
        assert_eq!(
            parse("p <-> q -> r").unwrap(),
            Formula::iff(a("p"), Formula::implies(a("q"), a("r")))
        );
        assert_eq!(
            parse("~p & B q").unwrap(),
            Formula::and(Formula::not(a("p")), Formula::believes(a("q")))
        );
    }

    #[test]
    fn belief_token_does_not_glue() {
        assert_eq!(parse("Bp").unwrap(), Formula::believes(a("p")));
        assert_eq!(
            parse("B~B p").unwrap(),
            Formula::believes(Formula::not(Formula::believes(a("p"))))
        );
    }

    #[test]
    fn constants_and_metavariables() {
        assert_eq!(parse("T").unwrap(), Formula::top());
        assert_eq!(parse("F").unwrap(), Formula::bottom());
        assert_eq!(parse("PHI").unwrap(), Formula::meta(MetaVar::Phi));
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(
            parse("p $ q").unwrap_err(),
            ParseError::UnknownOperator {
                offset: 2,
                found: "$".into()
            }
        );
        assert_eq!(
            parse("p & XYZ").unwrap_err(),
            ParseError::UnknownOperator {
                offset: 4,
                found: "XYZ".into()
            }
        );
        assert_eq!(
            parse("(p | q").unwrap_err(),
            ParseError::Unbalanced { offset: 0 }
        );
        assert_eq!(
            parse("p | q)").unwrap_err(),
            ParseError::Unbalanced { offset: 5 }
        );
        assert!(matches!(
            parse("p q").unwrap_err(),
            ParseError::Unexpected { offset: 2, .. }
        ));
        assert!(matches!(
            parse("p &").unwrap_err(),
            ParseError::UnexpectedEnd { offset: 3, .. }
        ));
        assert!(matches!(
            parse("p > q").unwrap_err(),
            ParseError::Unexpected { offset: 2, .. }
        ));
        assert!(matches!(
            parse("").unwrap_err(),
            ParseError::UnexpectedEnd { offset: 0, .. }
        ));
    }
}
