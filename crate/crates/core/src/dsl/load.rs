//! Turns a parsed file into named objects, rejecting unknown names,
//! re-declarations and parity mismatches before any check runs.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::ast::*;
use super::lexer::Span;
use crate::catalog::{self, EntryKind};
use crate::cohomology::Cochain1;
use crate::error::{Error, Result};
use crate::lie::{lincomb_of, wedge, BracketTable, GradedBasis, LieSuperAlgebra, Parity, TensorElement};
use crate::scalar::{ParamSpace, Poly};

#[derive(Clone, Debug)]
enum Value {
    Scalar(Poly),
    Tensor(TensorElement),
}

/// Objects declared by a file, plus the catalog as fallback.
#[derive(Clone, Debug, Default)]
pub struct Session {
    pub params: ParamSpace,
    algebras: BTreeMap<String, LieSuperAlgebra>,
    tensors: BTreeMap<String, (TensorElement, String)>,
    cochains: BTreeMap<String, (Cochain1, String)>,
    checks: Vec<(Check, Span)>,
}

fn catalog_kind(name: &str) -> Option<EntryKind> {
    if catalog::sl_rank(name).is_some() {
        return Some(EntryKind::Algebra);
    }
    catalog::entry(name).map(|e| e.kind)
}

fn wrap(span: Span, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => span.error(other.to_string()),
    }
}

impl Session {
    pub fn checks(&self) -> &[(Check, Span)] {
        &self.checks
    }

    fn declared(&self, name: &str) -> bool {
        self.algebras.contains_key(name)
            || self.tensors.contains_key(name)
            || self.cochains.contains_key(name)
            || self.params.contains(name)
    }

    fn fresh(&self, name: &Name) -> Result<()> {
        if self.declared(&name.text) {
            return Err(name.span.error(format!("{} is already declared", name.text)));
        }
        Ok(())
    }

    pub fn algebra(&self, name: &Name) -> Result<LieSuperAlgebra> {
        if let Some(a) = self.algebras.get(&name.text) {
            return Ok(a.clone());
        }
        if catalog_kind(&name.text) == Some(EntryKind::Algebra) {
            return catalog::algebra(&name.text).map_err(|e| wrap(name.span, e));
        }
        Err(name.span.error(format!("unknown algebra {}", name.text)))
    }

    /// A tensor and the algebra it is checked over.
    pub fn tensor(&self, name: &Name, on: Option<&Name>) -> Result<(TensorElement, LieSuperAlgebra)> {
        let host_of = |t: &TensorElement, host: &Name| -> Result<LieSuperAlgebra> {
            let a = self.algebra(host)?;
            if **t.basis() != **a.basis() {
                return Err(host.span.error(format!(
                    "{} is not a tensor over {}",
                    name.text, host.text
                )));
            }
            Ok(a)
        };
        if let Some((t, host)) = self.tensors.get(&name.text) {
            let host = on.cloned().unwrap_or_else(|| Name {
                text: host.clone(),
                span: name.span,
            });
            return Ok((t.clone(), host_of(t, &host)?));
        }
        if catalog_kind(&name.text) != Some(EntryKind::Tensor) {
            return Err(name.span.error(format!("unknown tensor {}", name.text)));
        }
        match on {
            Some(host) if !self.algebras.contains_key(&host.text) => {
                let (t, _) = catalog::tensor(&name.text, Some(&host.text)).map_err(|e| wrap(host.span, e))?;
                Ok((t.clone(), host_of(&t, host)?))
            }
            Some(host) => {
                let (t, _) = catalog::tensor(&name.text, None).map_err(|e| wrap(name.span, e))?;
                Ok((t.clone(), host_of(&t, host)?))
            }
            None => {
                let (t, host) = catalog::tensor(&name.text, None).map_err(|e| wrap(name.span, e))?;
                let host = Name {
                    text: host,
                    span: name.span,
                };
                Ok((t.clone(), host_of(&t, &host)?))
            }
        }
    }

    pub fn cochain(&self, name: &Name) -> Result<(Cochain1, LieSuperAlgebra)> {
        let (c, host) = match self.cochains.get(&name.text) {
            Some(found) => found.clone(),
            None if catalog_kind(&name.text) == Some(EntryKind::Cochain) => {
                catalog::cochain(&name.text).map_err(|e| wrap(name.span, e))?
            }
            None => return Err(name.span.error(format!("unknown cochain {}", name.text))),
        };
        let host = self.algebra(&Name {
            text: host,
            span: name.span,
        })?;
        Ok((c, host))
    }

    fn expect_kind(&self, name: &Name, kind: EntryKind) -> Result<()> {
        let local = match kind {
            EntryKind::Algebra => self.algebras.contains_key(&name.text),
            EntryKind::Tensor => self.tensors.contains_key(&name.text),
            EntryKind::Cochain => self.cochains.contains_key(&name.text),
        };
        if local || catalog_kind(&name.text) == Some(kind) {
            return Ok(());
        }
        let what = match kind {
            EntryKind::Algebra => "algebra",
            EntryKind::Tensor => "tensor",
            EntryKind::Cochain => "cochain",
        };
        Err(name.span.error(format!("unknown {what} {}", name.text)))
    }

    fn validate(&self, check: &Check) -> Result<()> {
        use EntryKind::*;
        let need = |n: &Name, k| self.expect_kind(n, k);
        let on = |o: &Option<Name>| o.as_ref().map_or(Ok(()), |n| need(n, Algebra));
        match check {
            Check::Jacobi { algebra } | Check::H2 { algebra } => need(algebra, Algebra),
            Check::Cybe { tensor, on: o } | Check::Mcybe { tensor, on: o } | Check::Bialgebra { tensor, on: o } => {
                need(tensor, Tensor)?;
                on(o)
            }
            Check::Decompose { tensor, parts, on: o } => {
                need(tensor, Tensor)?;
                for p in parts {
                    need(p, Tensor)?;
                }
                on(o)
            }
            Check::Limit { tensor, target, on: o, .. } | Check::Adjoint { tensor, target, on: o, .. } => {
                need(tensor, Tensor)?;
                need(target, Tensor)?;
                on(o)
            }
            Check::Dual { tensor, on: o, expected } => {
                need(tensor, Tensor)?;
                need(expected, Algebra)?;
                on(o)
            }
            Check::Cocycle { phi, over } | Check::Coboundary { phi, over, with: None } => {
                need(phi, Algebra)?;
                need(over, Algebra)
            }
            Check::Coboundary { phi, over, with: Some(psi) } => {
                need(phi, Algebra)?;
                need(over, Algebra)?;
                need(psi, Cochain)
            }
            Check::Compatible { first, second } => {
                need(first, Algebra)?;
                need(second, Algebra)
            }
            Check::Twist { .. } | Check::Factored { .. } | Check::MuPrime { .. } => Ok(()),
        }
    }

    fn eval(&self, e: &Expr, basis: &Arc<GradedBasis>, host: &str) -> Result<Value> {
        let tensor_op = |a: &Expr, b: &Expr, wedge_op: bool| -> Result<Value> {
            let (Value::Tensor(x), Value::Tensor(y)) = (self.eval(a, basis, host)?, self.eval(b, basis, host)?) else {
                return Err(first_span(e).error("tensor operators need basis elements on both sides"));
            };
            if wedge_op {
                wedge(&x, &y).map_err(|err| wrap(first_span(e), err))
            } else {
                if x.degree() + y.degree() > 3 {
                    return Err(first_span(e).error("tensors above degree 3 are not supported"));
                }
                x.tensor(&y).map_err(|err| wrap(first_span(e), err))
            }
            .map(Value::Tensor)
        };
        Ok(match e {
            Expr::Num(r) => Value::Scalar(Poly::constant(r.clone())),
            Expr::Ident(n) => self.ident(n, basis, host)?,
            Expr::Neg(a) => match self.eval(a, basis, host)? {
                Value::Scalar(p) => Value::Scalar(-p),
                Value::Tensor(t) => Value::Tensor(t.neg()),
            },
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                let sub = matches!(e, Expr::Sub(..));
                match (self.eval(a, basis, host)?, self.eval(b, basis, host)?) {
                    (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(if sub { &x - &y } else { &x + &y }),
                    (Value::Tensor(x), Value::Tensor(y)) => {
                        let r = if sub { x.try_sub(&y) } else { x.try_add(&y) };
                        Value::Tensor(r.map_err(|err| wrap(first_span(e), err))?)
                    }
                    (Value::Scalar(z), Value::Tensor(t)) if z.is_zero() => Value::Tensor(if sub { t.neg() } else { t }),
                    (Value::Tensor(t), Value::Scalar(z)) if z.is_zero() => Value::Tensor(t),
                    _ => return Err(first_span(e).error("cannot add a scalar and a tensor")),
                }
            }
            Expr::Mul(a, b) => match (self.eval(a, basis, host)?, self.eval(b, basis, host)?) {
                (Value::Scalar(x), Value::Scalar(y)) => Value::Scalar(&x * &y),
                (Value::Scalar(c), Value::Tensor(t)) | (Value::Tensor(t), Value::Scalar(c)) => Value::Tensor(t.scale(&c)),
                _ => return Err(first_span(e).error("use (x) or ^ to multiply tensors")),
            },
            Expr::Pow(a, k) => match self.eval(a, basis, host)? {
                Value::Scalar(p) => Value::Scalar(p.pow(*k)),
                Value::Tensor(_) => return Err(first_span(e).error("powers apply to scalars only")),
            },
            Expr::Tensor(a, b) => tensor_op(a, b, false)?,
            Expr::Wedge(a, b) => tensor_op(a, b, true)?,
        })
    }

    fn ident(&self, n: &Name, basis: &Arc<GradedBasis>, host: &str) -> Result<Value> {
        if self.params.contains(&n.text) {
            return Ok(Value::Scalar(Poly::param(&n.text)));
        }
        if let Some(i) = basis.index_of(&n.text) {
            return Ok(Value::Tensor(TensorElement::basis_vector(basis.clone(), i)));
        }
        if self.tensors.contains_key(&n.text) || catalog_kind(&n.text) == Some(EntryKind::Tensor) {
            let on = Name {
                text: host.to_string(),
                span: n.span,
            };
            let (t, _) = self.tensor(n, Some(&on))?;
            return Ok(Value::Tensor(t));
        }
        Err(n.span.error(format!("unknown identifier {}", n.text)))
    }

    fn vector(&self, e: &Expr, basis: &Arc<GradedBasis>, host: &str) -> Result<TensorElement> {
        match self.eval(e, basis, host)? {
            Value::Tensor(t) if t.degree() == 1 => Ok(t),
            Value::Scalar(p) if p.is_zero() => Ok(TensorElement::zero(basis.clone(), 1)),
            _ => Err(first_span(e).error("expected a linear combination of basis elements")),
        }
    }

    fn declare_algebra(&mut self, name: &Name, body: &AlgebraBody) -> Result<()> {
        self.fresh(name)?;
        let a = match body {
            AlgebraBody::Alias(other) => self.algebra(other)?.with_name(name.text.clone()),
            AlgebraBody::Block { basis, brackets } => {
                for (n, _) in basis {
                    if self.params.contains(&n.text) {
                        return Err(n.span.error(format!("{} is already declared as a parameter", n.text)));
                    }
                }
                let items = basis.iter().map(|(n, p)| (n.text.clone(), *p));
                let b = GradedBasis::new(items).map_err(|e| wrap(name.span, e))?.shared();
                let mut table = BracketTable::new(b.clone(), Parity::Even);
                for line in brackets {
                    let idx = |n: &Name| {
                        b.index_of(&n.text)
                            .ok_or_else(|| n.span.error(format!("unknown identifier {}", n.text)))
                    };
                    let (i, j) = (idx(&line.left)?, idx(&line.right)?);
                    let v = self.vector(&line.value, &b, &name.text)?;
                    table
                        .set(i, j, lincomb_of(&v))
                        .map_err(|e| wrap(line.left.span, e))?;
                }
                LieSuperAlgebra::from_table(name.text.clone(), table).map_err(|e| wrap(name.span, e))?
            }
        };
        self.algebras.insert(name.text.clone(), a);
        Ok(())
    }

    fn declare_tensor(&mut self, name: &Name, on: Option<&Name>, value: &Expr, last: Option<&str>) -> Result<()> {
        self.fresh(name)?;
        let host = match (on, last) {
            (Some(h), _) => h.clone(),
            (None, Some(l)) => Name {
                text: l.to_string(),
                span: name.span,
            },
            (None, None) => return Err(name.span.error("tensor needs an algebra: add 'on NAME'")),
        };
        let a = self.algebra(&host)?;
        let t = match self.eval(value, a.basis(), &host.text)? {
            Value::Tensor(t) => t,
            Value::Scalar(p) if p.is_zero() => TensorElement::zero(a.basis().clone(), 2),
            Value::Scalar(_) => return Err(first_span(value).error("a tensor cannot be a bare scalar")),
        };
        self.tensors.insert(name.text.clone(), (t, host.text));
        Ok(())
    }

    fn declare_cochain(&mut self, name: &Name, on: &Name, images: &[(Name, Expr)]) -> Result<()> {
        self.fresh(name)?;
        let a = self.algebra(on)?;
        let b = a.basis().clone();
        let mut values = vec![Vec::new(); b.dim()];
        let mut parity = None;
        for (x, e) in images {
            let i = b
                .index_of(&x.text)
                .ok_or_else(|| x.span.error(format!("unknown identifier {}", x.text)))?;
            if !values[i].is_empty() {
                return Err(x.span.error(format!("{} is mapped twice", x.text)));
            }
            let v = lincomb_of(&self.vector(e, &b, &on.text)?);
            if let Some((k, _)) = v.first() {
                parity.get_or_insert(b.parity(i) + b.parity(*k));
            }
            values[i] = v;
        }
        let c = Cochain1::new(b, parity.unwrap_or(Parity::Even), values).map_err(|e| wrap(name.span, e))?;
        self.cochains.insert(name.text.clone(), (c, on.text.clone()));
        Ok(())
    }
}

fn first_span(e: &Expr) -> Span {
    match e {
        Expr::Ident(n) => n.span,
        Expr::Num(_) => Span::default(),
        Expr::Neg(a) | Expr::Pow(a, _) => first_span(a),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Tensor(a, b) | Expr::Wedge(a, b) => {
            let s = first_span(a);
            if s.line == 0 {
                first_span(b)
            } else {
                s
            }
        }
    }
}

/// Builds every declared object in order and validates every check.
pub fn load(file: &WorkbenchFile) -> Result<Session> {
    let mut s = Session::default();
    let mut last_algebra: Option<String> = None;
    for st in &file.statements {
        match st {
            Statement::Param(names) => {
                for n in names {
                    s.fresh(n)?;
                    s.params.declare(&n.text);
                }
            }
            Statement::Algebra { name, body } => {
                s.declare_algebra(name, body)?;
                last_algebra = Some(name.text.clone());
            }
            Statement::Tensor { name, on, value } => {
                s.declare_tensor(name, on.as_ref(), value, last_algebra.as_deref())?
            }
            Statement::Cochain { name, on, images } => s.declare_cochain(name, on, images)?,
            Statement::Check { check, span } => {
                s.validate(check)?;
                s.checks.push((check.clone(), *span));
            }
        }
    }
    Ok(s)
}
