//! Writes algebras, tensors and cochains back out as definition files.

use std::collections::BTreeSet;

use super::ast::*;
use crate::catalog::{self, CatalogObject};
use crate::cohomology::Cochain1;
use crate::error::{Error, Result};
use crate::lie::{LieSuperAlgebra, TensorElement};
use crate::scalar::Poly;

fn collect_params<'a>(coeffs: impl IntoIterator<Item = &'a Poly>, into: &mut BTreeSet<&'static str>) {
    for c in coeffs {
        into.extend(c.params().into_iter().map(|p| p.name()));
    }
}

fn algebra_params(a: &LieSuperAlgebra, into: &mut BTreeSet<&'static str>) {
    let t = a.table();
    for (i, j) in t.independent_pairs() {
        collect_params(t.get(i, j).iter().map(|(_, c)| c), into);
    }
}

pub fn algebra_statement(name: &str, a: &LieSuperAlgebra) -> Statement {
    let b = a.basis();
    let basis = (0..b.dim()).map(|i| (Name::new(b.name(i)), b.parity(i))).collect();
    let t = a.table();
    let brackets = t
        .independent_pairs()
        .filter(|&(i, j)| !t.get(i, j).is_empty())
        .map(|(i, j)| BracketLine {
            left: Name::new(b.name(i)),
            right: Name::new(b.name(j)),
            value: Expr::from_tensor(&t.value(i, j)),
        })
        .collect();
    Statement::Algebra {
        name: Name::new(name),
        body: AlgebraBody::Block { basis, brackets },
    }
}

pub fn tensor_statement(name: &str, host: &str, t: &TensorElement) -> Result<Statement> {
    if t.degree() > 2 {
        return Err(Error::unsupported("only tensors of degree 1 and 2 have a DSL form"));
    }
    Ok(Statement::Tensor {
        name: Name::new(name),
        on: Some(Name::new(host)),
        value: if t.is_zero() { Expr::Num(crate::scalar::int(0)) } else { Expr::from_tensor(t) },
    })
}

pub fn cochain_statement(name: &str, host: &str, c: &Cochain1) -> Statement {
    let b = c.basis();
    let images = (0..b.dim())
        .filter(|&i| !c.images()[i].is_empty())
        .map(|i| (Name::new(b.name(i)), Expr::from_tensor(&c.image(i))))
        .collect();
    Statement::Cochain {
        name: Name::new(name),
        on: Name::new(host),
        images,
    }
}

fn param_statement(params: BTreeSet<&'static str>) -> Option<Statement> {
    (!params.is_empty()).then(|| Statement::Param(params.into_iter().map(Name::new).collect()))
}

/// A self-contained file that rebuilds a catalog entry under its own name,
/// followed by a check exercising it.
pub fn catalog_file(entry: &str) -> Result<WorkbenchFile> {
    let mut params = BTreeSet::new();
    let mut body = Vec::new();
    match catalog::lookup(entry)? {
        CatalogObject::Algebra(a) => {
            algebra_params(&a, &mut params);
            body.push(algebra_statement(entry, &a));
            body.push(Statement::Check {
                check: Check::Jacobi {
                    algebra: Name::new(entry),
                },
                span: Default::default(),
            });
        }
        CatalogObject::Tensor(t, host) => {
            let a = catalog::algebra(&host)?;
            algebra_params(&a, &mut params);
            collect_params(t.terms().map(|(_, c)| c), &mut params);
            body.push(algebra_statement(&host, &a));
            body.push(tensor_statement(entry, &host, &t)?);
            body.push(Statement::Check {
                check: Check::Bialgebra {
                    tensor: Name::new(entry),
                    on: None,
                },
                span: Default::default(),
            });
        }
        CatalogObject::Cochain(c, host) => {
            let a = catalog::algebra(&host)?;
            algebra_params(&a, &mut params);
            for img in c.images() {
                collect_params(img.iter().map(|(_, p)| p), &mut params);
            }
            body.push(algebra_statement(&host, &a));
            body.push(cochain_statement(entry, &host, &c));
        }
    }
    let mut statements: Vec<Statement> = param_statement(params).into_iter().collect();
    statements.extend(body);
    Ok(WorkbenchFile { statements })
}
