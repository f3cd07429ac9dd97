use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::ast::*;
use super::lexer::{tokenize, Span, Tok, Token};
use crate::error::Result;
use crate::lie::Parity;
use crate::scalar::Rational;

/// Parses workbench source text. Stops at the first error, which carries a
/// line and column.
pub fn parse(src: &str) -> Result<WorkbenchFile> {
    let mut p = Parser {
        toks: tokenize(src)?,
        pos: 0,
    };
    let mut statements = Vec::new();
    while p.peek() != &Tok::Eof {
        statements.push(p.statement()?);
    }
    Ok(WorkbenchFile { statements })
}

/// Parses a single expression (used for `--assume` style inputs and tests).
pub fn parse_expr(src: &str) -> Result<Expr> {
    let mut p = Parser {
        toks: tokenize(src)?,
        pos: 0,
    };
    let e = p.sum()?;
    p.expect(Tok::Eof)?;
    Ok(e)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn span(&self) -> Span {
        self.toks[self.pos].span
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok) -> Result<Span> {
        if self.peek() == &t {
            Ok(self.bump().span)
        } else {
            Err(self.span().error(format!("expected {t}, found {}", self.peek())))
        }
    }

    fn name(&mut self) -> Result<Name> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Ident(text) => {
                self.bump();
                Ok(Name { text, span })
            }
            other => Err(span.error(format!("expected a name, found {other}"))),
        }
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == w)
    }

    fn keyword(&mut self, w: &str) -> Result<()> {
        if self.is_word(w) {
            self.bump();
            Ok(())
        } else {
            Err(self.span().error(format!("expected '{w}', found {}", self.peek())))
        }
    }

    fn small_int(&mut self) -> Result<u32> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                n.to_u32().ok_or_else(|| span.error("number too large"))
            }
            other => Err(span.error(format!("expected a number, found {other}"))),
        }
    }

    fn statement(&mut self) -> Result<Statement> {
        let span = self.span();
        let head = self.name()?;
        let s = match head.text.as_str() {
            "param" => {
                let mut names = Vec::new();
                while let Tok::Ident(_) = self.peek() {
                    names.push(self.name()?);
                }
                if names.is_empty() {
                    return Err(self.span().error("param needs at least one name"));
                }
                self.expect(Tok::Semi)?;
                Statement::Param(names)
            }
            "algebra" => self.algebra()?,
            "tensor" => {
                let name = self.name()?;
                let on = self.on_clause()?;
                self.expect(Tok::Eq)?;
                let value = self.sum()?;
                self.expect(Tok::Semi)?;
                Statement::Tensor { name, on, value }
            }
            "cochain" => {
                let name = self.name()?;
                self.keyword("on")?;
                let on = self.name()?;
                self.expect(Tok::LBrace)?;
                let mut images = Vec::new();
                while !self.eat(&Tok::RBrace) {
                    let x = self.name()?;
                    self.expect(Tok::Arrow)?;
                    let v = self.sum()?;
                    self.expect(Tok::Semi)?;
                    images.push((x, v));
                }
                Statement::Cochain { name, on, images }
            }
            "check" => {
                let check = self.check()?;
                self.expect(Tok::Semi)?;
                Statement::Check { check, span }
            }
            other => {
                return Err(head.span.error(format!(
                    "expected param, algebra, tensor, cochain or check, found {other}"
                )))
            }
        };
        Ok(s)
    }

    fn on_clause(&mut self) -> Result<Option<Name>> {
        if self.is_word("on") {
            self.bump();
            Ok(Some(self.name()?))
        } else {
            Ok(None)
        }
    }

    fn algebra(&mut self) -> Result<Statement> {
        let name = self.name()?;
        if self.eat(&Tok::Eq) {
            let other = self.name()?;
            self.expect(Tok::Semi)?;
            return Ok(Statement::Algebra {
                name,
                body: AlgebraBody::Alias(other),
            });
        }
        self.expect(Tok::LBrace)?;
        let mut basis = Vec::new();
        let mut brackets = Vec::new();
        while !self.eat(&Tok::RBrace) {
            let head = self.name()?;
            match head.text.as_str() {
                "basis" => {
                    while let Tok::Ident(_) = self.peek() {
                        let n = self.name()?;
                        self.expect(Tok::Colon)?;
                        let span = self.span();
                        let parity = match self.name()?.text.as_str() {
                            "even" => Parity::Even,
                            "odd" => Parity::Odd,
                            other => {
                                return Err(span.error(format!("parity must be even or odd, found {other}")))
                            }
                        };
                        basis.push((n, parity));
                    }
                    self.expect(Tok::Semi)?;
                }
                "bracket" => {
                    self.expect(Tok::LBracket)?;
                    let left = self.name()?;
                    self.expect(Tok::Comma)?;
                    let right = self.name()?;
                    self.expect(Tok::RBracket)?;
                    self.expect(Tok::Eq)?;
                    let value = self.sum()?;
                    self.expect(Tok::Semi)?;
                    brackets.push(BracketLine { left, right, value });
                }
                other => {
                    return Err(head
                        .span
                        .error(format!("expected basis or bracket, found {other}")))
                }
            }
        }
        Ok(Statement::Algebra {
            name,
            body: AlgebraBody::Block { basis, brackets },
        })
    }

    fn check(&mut self) -> Result<Check> {
        let kind = self.name()?;
        let c = match kind.text.as_str() {
            "jacobi" => Check::Jacobi {
                algebra: self.name()?,
            },
            "h2" => Check::H2 {
                algebra: self.name()?,
            },
            "cybe" | "mcybe" | "bialgebra" => {
                let tensor = self.name()?;
                let on = self.on_clause()?;
                match kind.text.as_str() {
                    "cybe" => Check::Cybe { tensor, on },
                    "mcybe" => Check::Mcybe { tensor, on },
                    _ => Check::Bialgebra { tensor, on },
                }
            }
            "decompose" => {
                let tensor = self.name()?;
                self.expect(Tok::Eq)?;
                let mut parts = vec![self.name()?];
                while self.eat(&Tok::Plus) {
                    parts.push(self.name()?);
                }
                let on = self.on_clause()?;
                Check::Decompose { tensor, parts, on }
            }
            "limit" => {
                let tensor = self.name()?;
                let param = self.name()?;
                self.expect(Tok::Arrow)?;
                let span = self.span();
                if self.small_int()? != 0 {
                    return Err(span.error("limit only supports -> 0"));
                }
                self.expect(Tok::Eq)?;
                let target = self.name()?;
                let on = self.on_clause()?;
                Check::Limit {
                    tensor,
                    param,
                    target,
                    on,
                }
            }
            "adjoint" => {
                let tensor = self.name()?;
                self.keyword("along")?;
                let along = self.name()?;
                self.expect(Tok::Eq)?;
                let target = self.name()?;
                let on = self.on_clause()?;
                Check::Adjoint {
                    tensor,
                    along,
                    target,
                    on,
                }
            }
            "dual" => {
                let tensor = self.name()?;
                let on = self.on_clause()?;
                self.expect(Tok::Eq)?;
                Check::Dual {
                    tensor,
                    on,
                    expected: self.name()?,
                }
            }
            "cocycle" => {
                let phi = self.name()?;
                self.keyword("over")?;
                Check::Cocycle {
                    phi,
                    over: self.name()?,
                }
            }
            "compatible" => Check::Compatible {
                first: self.name()?,
                second: self.name()?,
            },
            "coboundary" => {
                let phi = self.name()?;
                self.keyword("over")?;
                let over = self.name()?;
                let with = if self.is_word("with") {
                    self.bump();
                    Some(self.name()?)
                } else {
                    None
                };
                Check::Coboundary { phi, over, with }
            }
            "twist" => {
                let which = self.name()?;
                let kind = match which.text.as_str() {
                    "jordanian" => TwistKind::Jordanian,
                    "nontwist" => TwistKind::NonTwist,
                    "extended" => TwistKind::Extended(self.small_int()? as usize),
                    other => {
                        return Err(which.span.error(format!(
                            "expected jordanian, extended or nontwist, found {other}"
                        )))
                    }
                };
                Check::Twist {
                    kind,
                    order: self.order_clause()?,
                }
            }
            "factored" => Check::Factored {
                n: self.small_int()? as usize,
                order: self.order_clause()?,
            },
            "muprime" => Check::MuPrime {
                n: self.small_int()? as usize,
            },
            other => return Err(kind.span.error(format!("unknown check {other}"))),
        };
        Ok(c)
    }

    fn order_clause(&mut self) -> Result<Option<u32>> {
        if self.is_word("order") {
            self.bump();
            Ok(Some(self.small_int()?))
        } else {
            Ok(None)
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        if self.eat(&Tok::Minus) {
            return Ok(Expr::Neg(Box::new(self.term()?)));
        }
        let mut acc = self.tensor_factor()?;
        loop {
            let explicit = self.eat(&Tok::Star);
            let implicit = !explicit && matches!(self.peek(), Tok::Int(_) | Tok::Ident(_) | Tok::LParen);
            if !(explicit || implicit) {
                return Ok(acc);
            }
            acc = Expr::Mul(Box::new(acc), Box::new(self.tensor_factor()?));
        }
    }

    fn tensor_factor(&mut self) -> Result<Expr> {
        let left = self.power()?;
        let op = self.peek().clone();
        if !matches!(op, Tok::Otimes | Tok::Caret) {
            return Ok(left);
        }
        self.bump();
        let right = self.power()?;
        if matches!(self.peek(), Tok::Otimes | Tok::Caret) {
            return Err(self
                .span()
                .error("'(x)' and '^' do not chain; add parentheses"));
        }
        Ok(if op == Tok::Otimes {
            Expr::Tensor(Box::new(left), Box::new(right))
        } else {
            Expr::Wedge(Box::new(left), Box::new(right))
        })
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if self.eat(&Tok::StarStar) {
            let k = self.small_int()?;
            return Ok(Expr::Pow(Box::new(base), k));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr> {
        let span = self.span();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                let mut value = Rational::from_integer(n);
                if self.eat(&Tok::Slash) {
                    let dspan = self.span();
                    let Tok::Int(d) = self.peek().clone() else {
                        return Err(dspan.error("expected a denominator"));
                    };
                    self.bump();
                    if d == BigInt::from(0) {
                        return Err(dspan.error("zero denominator"));
                    }
                    value /= Rational::from_integer(d);
                }
                Ok(Expr::Num(value))
            }
            Tok::Ident(text) => {
                self.bump();
                Ok(Expr::Ident(Name { text, span }))
            }
            Tok::LParen => {
                self.bump();
                let e = self.sum()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            other => Err(span.error(format!("expected an expression, found {other}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn borel_block() {
        let f = parse("param h xi;\nalgebra B { basis h:even x:even; bracket [h,x] = 2 x; }\ncheck jacobi B;")
            .unwrap();
        assert_eq!(f.statements.len(), 3);
        assert_eq!(f.checks().count(), 1);
    }

    #[test]
    fn empty_file() {
        assert_eq!(parse("").unwrap(), WorkbenchFile::default());
        assert_eq!(parse("# only a comment\n").unwrap(), WorkbenchFile::default());
    }

    #[test]
    fn chained_tensor_operators_need_parentheses() {
        let e = parse("tensor t = a (x) b (x) c;").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, column: 20, .. }), "{e:?}");
        assert!(parse("tensor t = (a (x) b) (x) c;").is_ok());
    }

    #[test]
    fn star_binds_weaker_than_tensor() {
        let e = parse_expr("2 * a (x) b").unwrap();
        assert!(matches!(e, Expr::Mul(_, ref r) if matches!(**r, Expr::Tensor(..))));
    }

    #[test]
    fn error_positions() {
        let e = parse("param h;\ntensor r = ;").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                line: 2,
                column: 12,
                message: "expected an expression, found ';'".into()
            }
        );
    }

    #[test]
    fn render_round_trip() {
        let src = "param h xi;\nalgebra B {\n  basis h:even x:even;\n  bracket [h, x] = 2 * x;\n}\ntensor r on B = -xi * h ^ x + 1/2 * (h (x) x - x (x) h);\ncheck cybe r on B;\ncheck twist extended 3 order 2;\n";
        let f = parse(src).unwrap();
        assert_eq!(f.render(), src);
        assert_eq!(parse(&f.render()).unwrap(), f);
    }
}
