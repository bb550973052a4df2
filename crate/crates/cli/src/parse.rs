//! Parser for manifold and query expressions.
//!
//! ```text
//! atom    := "S^" INT | "RP^" INT | "CP^" INT | "HP^" INT | "R^" INT
//! product := atom (" x " atom)*
//! query   := "(" product "," INT ")" ("+" "(" product "," INT ")")*
//! ```

use std::fmt;

use regmap_core::bounds::Piece;
use regmap_core::manifold::ManifoldSpec;
use regmap_core::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Manifold(ManifoldSpec),
    Query(Vec<Piece>),
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Manifold(spec) => write!(f, "{spec}"),
            Expr::Query(pieces) => {
                for (i, p) in pieces.iter().enumerate() {
                    if i > 0 {
                        f.write_str("+")?;
                    }
                    write!(f, "{p}")?;
                }
                Ok(())
            }
        }
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax { position: self.pos, message: message.into() }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, lit: &str) -> bool {
        if self.src[self.pos..].starts_with(lit.as_bytes()) {
            self.pos += lit.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, lit: &str) -> Result<(), Error> {
        if self.eat(lit) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{lit}`")))
        }
    }

    fn int(&mut self) -> Result<u32, Error> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        digits.parse().map_err(|_| Error::Syntax {
            position: start,
            message: "integer out of range".into(),
        })
    }

    fn atom(&mut self) -> Result<ManifoldSpec, Error> {
        let start = self.pos;
        // longer prefixes first: "RP^" before "R^"
        let ctor: fn(u32) -> ManifoldSpec = if self.eat("S^") {
            ManifoldSpec::Sphere
        } else if self.eat("RP^") {
            ManifoldSpec::RealProj
        } else if self.eat("CP^") {
            ManifoldSpec::ComplexProj
        } else if self.eat("HP^") {
            ManifoldSpec::QuatProj
        } else if self.eat("R^") {
            ManifoldSpec::Euclid
        } else {
            return Err(self.error("expected one of S^, RP^, CP^, HP^, R^"));
        };
        let spec = ctor(self.int()?);
        spec.validate().map_err(|e| match e {
            Error::Semantic { atom, message } => Error::Semantic {
                atom: format!("{atom} at position {start}"),
                message,
            },
            other => other,
        })?;
        Ok(spec)
    }

    fn product(&mut self) -> Result<ManifoldSpec, Error> {
        let mut factors = vec![self.atom()?];
        while self.eat(" x ") {
            factors.push(self.atom()?);
        }
        Ok(ManifoldSpec::product(factors).expect("non-empty"))
    }

    fn piece(&mut self) -> Result<Piece, Error> {
        self.expect("(")?;
        let spec = self.product()?;
        self.expect(",")?;
        let start = self.pos;
        let points = self.int()?;
        if points < 2 {
            return Err(Error::Semantic {
                atom: format!("{spec} at position {start}"),
                message: "a piece needs at least 2 points".into(),
            });
        }
        self.expect(")")?;
        Ok(Piece::new(spec, points))
    }

    fn expr(&mut self) -> Result<Expr, Error> {
        let e = if self.peek() == Some(b'(') {
            let mut pieces = vec![self.piece()?];
            while self.eat("+") {
                pieces.push(self.piece()?);
            }
            Expr::Query(pieces)
        } else {
            Expr::Manifold(self.product()?)
        };
        if self.pos != self.src.len() {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(e)
    }
}

/// Parses a manifold product or a query. Syntax errors carry the byte
/// offset of the failure; dimension violations name the atom.
pub fn parse_expr(text: &str) -> Result<Expr, Error> {
    Parser { src: text.as_bytes(), pos: 0 }.expr()
}

pub fn parse_manifold(text: &str) -> Result<ManifoldSpec, Error> {
    match parse_expr(text)? {
        Expr::Manifold(spec) => Ok(spec),
        Expr::Query(_) => Err(Error::Syntax { position: 0, message: "expected a manifold, not a query".into() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product() {
        assert_eq!(
            parse_expr("S^3 x RP^5").unwrap(),
            Expr::Manifold(ManifoldSpec::Product(vec![ManifoldSpec::Sphere(3), ManifoldSpec::RealProj(5)]))
        );
    }

    #[test]
    fn query() {
        assert_eq!(
            parse_expr("(S^4,2)+(R^2,8)").unwrap(),
            Expr::Query(vec![
                Piece::new(ManifoldSpec::Sphere(4), 2),
                Piece::new(ManifoldSpec::Euclid(2), 8)
            ])
        );
    }

    #[test]
    fn semantic_errors_name_the_atom() {
        match parse_expr("S^3 x RP^1") {
            Err(Error::Semantic { atom, .. }) => assert_eq!(atom, "RP^1 at position 6"),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_expr("(S^3,1)"), Err(Error::Semantic { .. })));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let pos = |s: &str| match parse_expr(s) {
            Err(Error::Syntax { position, .. }) => position,
            other => panic!("{s}: {other:?}"),
        };
        assert_eq!(pos("S^3 X RP^5"), 3);
        assert_eq!(pos("S^"), 2);
        assert_eq!(pos("(S^4,2)+"), 8);
        assert_eq!(pos("(S^4, 2)"), 5);
        assert_eq!(pos("T^4"), 0);
        assert_eq!(pos("S^99999999999"), 2);
        assert_eq!(pos(""), 0);
    }
}
