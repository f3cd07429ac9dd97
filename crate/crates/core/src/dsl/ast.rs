//! Syntax tree of workbench files and its rendering back to source.

use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};

use super::lexer::Span;
use crate::lie::{Parity, TensorElement};
use crate::scalar::{Poly, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Name {
    pub text: String,
    pub span: Span,
}

impl Name {
    pub fn new(text: impl Into<String>) -> Self {
        Self {
            text: text.into(),
            span: Span::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Nonnegative rational literal.
    Num(Rational),
    Ident(Name),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Tensor(Box<Expr>, Box<Expr>),
    Wedge(Box<Expr>, Box<Expr>),
}

impl Expr {
    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 0,
            Expr::Neg(_) => 1,
            Expr::Mul(..) => 2,
            Expr::Tensor(..) | Expr::Wedge(..) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(_) | Expr::Ident(_) => 5,
        }
    }

    fn write(&self, out: &mut String, min: u8) {
        let paren = self.precedence() < min;
        if paren {
            out.push('(');
        }
        match self {
            Expr::Num(r) => {
                let _ = write!(out, "{r}");
            }
            Expr::Ident(n) => out.push_str(&n.text),
            Expr::Neg(e) => {
                out.push('-');
                e.write(out, 1);
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                a.write(out, 0);
                out.push_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " });
                b.write(out, 1);
            }
            Expr::Mul(a, b) => {
                a.write(out, 2);
                out.push_str(" * ");
                b.write(out, 3);
            }
            Expr::Pow(a, k) => {
                a.write(out, 5);
                let _ = write!(out, "**{k}");
            }
            Expr::Tensor(a, b) | Expr::Wedge(a, b) => {
                a.write(out, 4);
                out.push_str(if matches!(self, Expr::Tensor(..)) { " (x) " } else { " ^ " });
                b.write(out, 4);
            }
        }
        if paren {
            out.push(')');
        }
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        self.write(&mut s, 0);
        s
    }

    fn ident(s: &str) -> Expr {
        Expr::Ident(Name::new(s))
    }

    fn sum(terms: Vec<(bool, Expr)>) -> Expr {
        let mut it = terms.into_iter();
        let Some((neg, first)) = it.next() else {
            return Expr::Num(Rational::zero());
        };
        let mut acc = if neg { Expr::Neg(Box::new(first)) } else { first };
        for (neg, t) in it {
            acc = if neg {
                Expr::Sub(Box::new(acc), Box::new(t))
            } else {
                Expr::Add(Box::new(acc), Box::new(t))
            };
        }
        acc
    }

    fn product(factors: Vec<Expr>) -> Expr {
        let mut it = factors.into_iter();
        let first = it.next().unwrap_or(Expr::Num(Rational::one()));
        it.fold(first, |a, b| Expr::Mul(Box::new(a), Box::new(b)))
    }

    /// Term list `(negated, |c|·monomial)` of a polynomial.
    fn poly_terms(p: &Poly) -> Vec<(bool, Vec<Expr>)> {
        p.terms()
            .iter()
            .map(|(m, c)| {
                let mut factors = Vec::new();
                let a = c.abs();
                if !a.is_one() || m.is_one() {
                    factors.push(Expr::Num(a));
                }
                for &(param, e) in m.factors() {
                    let base = Expr::ident(param.name());
                    factors.push(if e == 1 { base } else { Expr::Pow(Box::new(base), e) });
                }
                (c.is_negative(), factors)
            })
            .collect()
    }

    pub fn from_poly(p: &Poly) -> Expr {
        Expr::sum(
            Expr::poly_terms(p)
                .into_iter()
                .map(|(neg, f)| (neg, Expr::product(f)))
                .collect(),
        )
    }

    /// Linear combination of basis tensors, written with `(x)`.
    pub fn from_tensor(t: &TensorElement) -> Expr {
        let basis = t.basis();
        let mut terms = Vec::new();
        for (s, c) in t.terms() {
            let mut body = Expr::ident(basis.name(s[0]));
            for &i in &s[1..] {
                body = Expr::Tensor(Box::new(body), Box::new(Expr::ident(basis.name(i))));
            }
            if c.is_monomial() {
                let (neg, mut f) = Expr::poly_terms(c).remove(0);
                if matches!(f.as_slice(), [Expr::Num(n)] if n.is_one()) {
                    f.clear();
                }
                f.push(body);
                terms.push((neg, Expr::product(f)));
            } else {
                terms.push((false, Expr::Mul(Box::new(Expr::from_poly(c)), Box::new(body))));
            }
        }
        Expr::sum(terms)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketLine {
    pub left: Name,
    pub right: Name,
    pub value: Expr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraBody {
    Block {
        basis: Vec<(Name, Parity)>,
        brackets: Vec<BracketLine>,
    },
    /// `algebra NAME = OTHER;`
    Alias(Name),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TwistKind {
    Jordanian,
    Extended(usize),
    NonTwist,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Check {
    Jacobi { algebra: Name },
    Cybe { tensor: Name, on: Option<Name> },
    Mcybe { tensor: Name, on: Option<Name> },
    /// Cocycle and co-Jacobi conditions of the cobracket of an r-matrix.
    Bialgebra { tensor: Name, on: Option<Name> },
    Decompose { tensor: Name, parts: Vec<Name>, on: Option<Name> },
    Limit { tensor: Name, param: Name, target: Name, on: Option<Name> },
    /// `exp(ξ ad_X)` applied to a tensor; the change must be proportional
    /// to the target.
    Adjoint { tensor: Name, along: Name, target: Name, on: Option<Name> },
    Dual { tensor: Name, on: Option<Name>, expected: Name },
    Cocycle { phi: Name, over: Name },
    Compatible { first: Name, second: Name },
    Coboundary { phi: Name, over: Name, with: Option<Name> },
    H2 { algebra: Name },
    Twist { kind: TwistKind, order: Option<u32> },
    Factored { n: usize, order: Option<u32> },
    MuPrime { n: usize },
}

fn on_suffix(on: &Option<Name>) -> String {
    on.as_ref().map(|n| format!(" on {}", n.text)).unwrap_or_default()
}

fn order_suffix(order: &Option<u32>) -> String {
    order.map(|d| format!(" order {d}")).unwrap_or_default()
}

impl Check {
    pub fn keyword(&self) -> &'static str {
        match self {
            Check::Jacobi { .. } => "jacobi",
            Check::Cybe { .. } => "cybe",
            Check::Mcybe { .. } => "mcybe",
            Check::Bialgebra { .. } => "bialgebra",
            Check::Decompose { .. } => "decompose",
            Check::Limit { .. } => "limit",
            Check::Adjoint { .. } => "adjoint",
            Check::Dual { .. } => "dual",
            Check::Cocycle { .. } => "cocycle",
            Check::Compatible { .. } => "compatible",
            Check::Coboundary { .. } => "coboundary",
            Check::H2 { .. } => "h2",
            Check::Twist { .. } => "twist",
            Check::Factored { .. } => "factored",
            Check::MuPrime { .. } => "muprime",
        }
    }

    /// Source form without the leading `check` and trailing `;`.
    pub fn render(&self) -> String {
        let k = self.keyword();
        match self {
            Check::Jacobi { algebra } | Check::H2 { algebra } => format!("{k} {}", algebra.text),
            Check::Cybe { tensor, on } | Check::Mcybe { tensor, on } | Check::Bialgebra { tensor, on } => {
                format!("{k} {}{}", tensor.text, on_suffix(on))
            }
            Check::Decompose { tensor, parts, on } => {
                let parts: Vec<&str> = parts.iter().map(|p| p.text.as_str()).collect();
                format!("{k} {} = {}{}", tensor.text, parts.join(" + "), on_suffix(on))
            }
            Check::Limit { tensor, param, target, on } => format!(
                "{k} {} {} -> 0 = {}{}",
                tensor.text,
                param.text,
                target.text,
                on_suffix(on)
            ),
            Check::Adjoint { tensor, along, target, on } => format!(
                "{k} {} along {} = {}{}",
                tensor.text,
                along.text,
                target.text,
                on_suffix(on)
            ),
            Check::Dual { tensor, on, expected } => {
                format!("{k} {}{} = {}", tensor.text, on_suffix(on), expected.text)
            }
            Check::Cocycle { phi, over } => format!("{k} {} over {}", phi.text, over.text),
            Check::Compatible { first, second } => format!("{k} {} {}", first.text, second.text),
            Check::Coboundary { phi, over, with } => format!(
                "{k} {} over {}{}",
                phi.text,
                over.text,
                with.as_ref().map(|w| format!(" with {}", w.text)).unwrap_or_default()
            ),
            Check::Twist { kind, order } => {
                let what = match kind {
                    TwistKind::Jordanian => "jordanian".to_string(),
                    TwistKind::Extended(n) => format!("extended {n}"),
                    TwistKind::NonTwist => "nontwist".to_string(),
                };
                format!("{k} {what}{}", order_suffix(order))
            }
            Check::Factored { n, order } => format!("{k} {n}{}", order_suffix(order)),
            Check::MuPrime { n } => format!("{k} {n}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Statement {
    Param(Vec<Name>),
    Algebra { name: Name, body: AlgebraBody },
    Tensor { name: Name, on: Option<Name>, value: Expr },
    Cochain { name: Name, on: Name, images: Vec<(Name, Expr)> },
    Check { check: Check, span: Span },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WorkbenchFile {
    pub statements: Vec<Statement>,
}

impl WorkbenchFile {
    pub fn checks(&self) -> impl Iterator<Item = (&Check, Span)> {
        self.statements.iter().filter_map(|s| match s {
            Statement::Check { check, span } => Some((check, *span)),
            _ => None,
        })
    }

    /// Canonical source text; parsing it gives back an equal file.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for s in &self.statements {
            match s {
                Statement::Param(names) => {
                    let names: Vec<&str> = names.iter().map(|n| n.text.as_str()).collect();
                    let _ = writeln!(out, "param {};", names.join(" "));
                }
                Statement::Algebra { name, body } => match body {
                    AlgebraBody::Alias(other) => {
                        let _ = writeln!(out, "algebra {} = {};", name.text, other.text);
                    }
                    AlgebraBody::Block { basis, brackets } => {
                        let _ = writeln!(out, "algebra {} {{", name.text);
                        let items: Vec<String> = basis
                            .iter()
                            .map(|(n, p)| {
                                format!("{}:{}", n.text, if p.is_odd() { "odd" } else { "even" })
                            })
                            .collect();
                        let _ = writeln!(out, "  basis {};", items.join(" "));
                        for b in brackets {
                            let _ = writeln!(
                                out,
                                "  bracket [{}, {}] = {};",
                                b.left.text,
                                b.right.text,
                                b.value.render()
                            );
                        }
                        out.push_str("}\n");
                    }
                },
                Statement::Tensor { name, on, value } => {
                    let _ = writeln!(out, "tensor {}{} = {};", name.text, on_suffix(on), value.render());
                }
                Statement::Cochain { name, on, images } => {
                    let _ = writeln!(out, "cochain {} on {} {{", name.text, on.text);
                    for (x, v) in images {
                        let _ = writeln!(out, "  {} -> {};", x.text, v.render());
                    }
                    out.push_str("}\n");
                }
                Statement::Check { check, .. } => {
                    let _ = writeln!(out, "check {};", check.render());
                }
            }
        }
        out
    }
}
