//! Executes loaded checks. Checks are independent and run on the rayon
//! pool; results come back in declaration order.

use std::time::Instant;

use rayon::prelude::*;

use super::ast::{Check, TwistKind, WorkbenchFile};
use super::lexer::Span;
use super::load::{load, Session};
use super::parser::parse_expr;
use super::report::{CheckReport, Report, Status};
use crate::bialgebra::{
    adjoint_twist_r, check_cocycle_compat, check_cojacobi, check_cybe, check_mcybe,
    coefficient_tensor, dual_algebra, limit_r, proportionality, LieBialgebra,
};
use crate::catalog::{make_mu_prime, make_r_borel, make_rjordan};
use crate::cohomology::{compatible_pair, d1, h2_dim, is_cocycle2, solve_coboundary, CoboundaryResult, Cochain2};
use crate::error::{Error, Result};
use crate::lie::{JacobiReport, LieSuperAlgebra, TensorElement};
use crate::scalar::Poly;
use crate::uea::{
    build_extended_twist, build_jordanian_twist, build_non_twist, classical_limit, factored_r_compare,
    qybe_check, twist_cocycle_check, universal_r, TensorUea,
};

/// Highest truncation degree accepted for twist expansions.
pub const MAX_ORDER: u32 = 5;

/// Terms shown when rendering a residual.
const SHOWN_TERMS: usize = 8;

#[derive(Clone, Debug)]
pub struct RunOptions {
    /// Truncation degree in `xi` for twist checks without an explicit order.
    pub order: u32,
    /// Conditions such as `h != 0`, echoed in the report.
    pub assume: Vec<String>,
    /// Record wall time per check. Off by default so output is byte-stable.
    pub timing: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            order: 3,
            assume: Vec::new(),
            timing: false,
        }
    }
}

struct Outcome {
    status: Status,
    details: Vec<String>,
    assumptions: Vec<String>,
}

impl Outcome {
    fn new(passed: bool, details: Vec<String>) -> Self {
        Outcome {
            status: if passed { Status::Pass } else { Status::Fail },
            details,
            assumptions: Vec::new(),
        }
    }
}

fn nonzero(p: &Poly) -> String {
    format!("{p} != 0")
}

/// Validates `--assume` entries of the form `EXPR != 0` against the
/// declared parameters and returns them in canonical form.
fn parse_assumptions(session: &Session, assume: &[String]) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for a in assume {
        let (lhs, rhs) = a
            .split_once("!=")
            .ok_or_else(|| Error::usage(format!("assumption '{a}' is not of the form EXPR != 0")))?;
        if rhs.trim() != "0" {
            return Err(Error::usage(format!("assumption '{a}' must compare with 0")));
        }
        let e = parse_expr(lhs)?;
        let p = eval_scalar(session, &e).map_err(|_| Error::usage(format!("assumption '{a}' uses undeclared names")))?;
        if p.is_zero() {
            return Err(Error::usage(format!("assumption '{a}' is false")));
        }
        out.push(nonzero(&p));
    }
    Ok(out)
}

fn eval_scalar(session: &Session, e: &super::ast::Expr) -> Result<Poly> {
    use super::ast::Expr;
    Ok(match e {
        Expr::Num(r) => Poly::constant(r.clone()),
        Expr::Ident(n) if session.params.contains(&n.text) => Poly::param(&n.text),
        Expr::Neg(a) => -eval_scalar(session, a)?,
        Expr::Add(a, b) => eval_scalar(session, a)? + eval_scalar(session, b)?,
        Expr::Sub(a, b) => eval_scalar(session, a)? - eval_scalar(session, b)?,
        Expr::Mul(a, b) => eval_scalar(session, a)? * eval_scalar(session, b)?,
        Expr::Pow(a, k) => eval_scalar(session, a)?.pow(*k),
        _ => return Err(Error::usage("not a scalar")),
    })
}

/// Parses, loads and runs a file. Parse and load errors come back as `Err`.
pub fn run(src: &str, options: &RunOptions) -> Result<Report> {
    let file = super::parser::parse(src)?;
    run_file(&file, options)
}

pub fn run_file(file: &WorkbenchFile, options: &RunOptions) -> Result<Report> {
    if options.order == 0 || options.order > MAX_ORDER {
        return Err(Error::usage(format!("order must be between 1 and {MAX_ORDER}")));
    }
    let session = load(file)?;
    let assumptions = parse_assumptions(&session, &options.assume)?;
    let checks: Vec<CheckReport> = session
        .checks()
        .par_iter()
        .map(|(c, span)| run_check(&session, c, *span, options))
        .collect();
    Ok(Report::new(options.order, assumptions, checks))
}

/// Runs one check; errors inside the check become `unsupported`.
pub fn run_check(session: &Session, check: &Check, span: Span, options: &RunOptions) -> CheckReport {
    let start = Instant::now();
    let outcome = execute(session, check, options).unwrap_or_else(|e| Outcome {
        status: Status::Unsupported,
        details: vec![e.to_string()],
        assumptions: Vec::new(),
    });
    CheckReport {
        name: check.render(),
        line: span.line,
        status: outcome.status,
        details: outcome.details,
        assumptions: outcome.assumptions,
        wall_ms: options.timing.then(|| start.elapsed().as_millis() as u64),
    }
}

fn tensor_line(label: &str, t: &TensorElement) -> String {
    format!("{label} = {t}")
}

fn execute(s: &Session, check: &Check, options: &RunOptions) -> Result<Outcome> {
    let order_of = |o: &Option<u32>| -> Result<u32> {
        let d = o.unwrap_or(options.order);
        if d == 0 || d > MAX_ORDER {
            return Err(Error::unsupported(format!("order {d} outside 1..={MAX_ORDER}")));
        }
        Ok(d)
    };
    Ok(match check {
        Check::Jacobi { algebra } => match s.algebra(algebra)?.verify_jacobi() {
            JacobiReport::Pass => Outcome::new(true, vec![]),
            JacobiReport::Witness { triple: (a, b, c), residual } => {
                Outcome::new(false, vec![tensor_line(&format!("J({a}, {b}, {c})"), &residual)])
            }
        },
        Check::Cybe { tensor, on } => {
            let (r, a) = s.tensor(tensor, on.as_ref())?;
            let rep = check_cybe(&a, &r)?;
            Outcome::new(rep.passed(), vec![tensor_line("[[r, r]]", &rep.schouten)])
        }
        Check::Mcybe { tensor, on } => {
            let (r, a) = s.tensor(tensor, on.as_ref())?;
            let rep = check_mcybe(&a, &r)?;
            let mut details = vec![
                tensor_line("symmetric part", &rep.symmetric_part),
                tensor_line("[[r, r]]", &rep.schouten),
            ];
            for (label, inv) in [
                ("symmetric part", &rep.symmetric_invariance),
                ("[[r, r]]", &rep.schouten_invariance),
            ] {
                if let Some((x, moved)) = &inv.witness {
                    details.push(tensor_line(&format!("ad_{x} of {label}"), moved));
                }
            }
            Outcome::new(rep.passed(), details)
        }
        Check::Bialgebra { tensor, on } => {
            let (r, a) = s.tensor(tensor, on.as_ref())?;
            let bi = LieBialgebra::from_r(&a, &r)?;
            let mut details = Vec::new();
            let compat = check_cocycle_compat(&bi);
            let cojacobi = check_cojacobi(&bi);
            for (label, rep) in [("cocycle condition", &compat), ("co-Jacobi", &cojacobi)] {
                match &rep.witness {
                    None => details.push(format!("{label}: holds")),
                    Some((args, v)) => details.push(tensor_line(&format!("{label} at ({})", args.join(", ")), v)),
                }
            }
            Outcome::new(compat.passed() && cojacobi.passed(), details)
        }
        Check::Decompose { tensor, parts, on } => {
            let (r, a) = s.tensor(tensor, on.as_ref())?;
            let host = on.clone().unwrap_or_else(|| super::ast::Name::new(a.name()));
            let mut sum = TensorElement::zero(a.basis().clone(), r.degree());
            for p in parts {
                sum = sum.try_add(&s.tensor(p, Some(&host))?.0)?;
            }
            let diff = r.try_sub(&sum)?;
            Outcome::new(diff.is_zero(), vec![tensor_line("difference", &diff)])
        }
        Check::Limit { tensor, param, target, on } => {
            let (r, a) = s.tensor(tensor, on.as_ref())?;
            let host = on.clone().unwrap_or_else(|| super::ast::Name::new(a.name()));
            let (t, _) = s.tensor(target, Some(&host))?;
            let lim = limit_r(&r, &param.text);
            let diff = lim.try_sub(&t)?;
            Outcome::new(
                diff.is_zero(),
                vec![tensor_line(&format!("limit {} -> 0", param.text), &lim), tensor_line("difference", &diff)],
            )
        }
        Check::Adjoint { tensor, along, target, on } => {
            let (r, a) = s.tensor(tensor, on.as_ref())?;
            let host = on.clone().unwrap_or_else(|| super::ast::Name::new(a.name()));
            let (t, _) = s.tensor(target, Some(&host))?;
            let z = a
                .basis()
                .index_of(&along.text)
                .ok_or_else(|| Error::definition(format!("{} is not a basis element of {}", along.text, a.name())))?;
            let xi = Poly::param("xi");
            let change = adjoint_twist_r(&a, &r, z, &xi)?.try_sub(&r)?;
            // the first-order part, written with its factor of xi
            let first = coefficient_tensor(&change, "xi", 1).scale(&xi);
            let mut details = vec![tensor_line("first-order change", &first)];
            let c = proportionality(&first, &t).filter(|c| !c.is_zero());
            match &c {
                Some(c) => details.push(format!("first-order change = ({c}) * {}", target.text)),
                None => details.push(format!("first-order change is not a multiple of {}", target.text)),
            }
            Outcome::new(c.is_some(), details)
        }
        Check::Dual { tensor, on, expected } => {
            let (r, a) = s.tensor(tensor, on.as_ref())?;
            let d = dual_algebra(&LieBialgebra::from_r(&a, &r)?)?;
            let e = s.algebra(expected)?;
            if **d.basis() != **e.basis() {
                let names = d.basis().names().join(", ");
                return Ok(Outcome::new(false, vec![format!("dual basis {names} differs from the basis of {}", expected.text)]));
            }
            let diff = Cochain2::from_algebra(&d).try_sub(&Cochain2::from_algebra(&e))?;
            let mut details: Vec<String> = d.table().render_lines(false);
            details.extend(diff.render_lines().into_iter().map(|l| format!("difference {l}")));
            Outcome::new(diff.is_zero(), details)
        }
        Check::Cocycle { phi, over } => {
            let (phi, a) = (s.algebra(phi)?, s.algebra(over)?);
            let rep = is_cocycle2(&a, &Cochain2::from_algebra(&phi))?;
            match rep.witness {
                None => Outcome::new(true, vec![]),
                Some(((x, y, z), v)) => Outcome::new(false, vec![tensor_line(&format!("d2 phi({x}, {y}, {z})"), &v)]),
            }
        }
        Check::Compatible { first, second } => {
            let rep = compatible_pair(&s.algebra(first)?, &s.algebra(second)?)?;
            match rep.witness {
                None => Outcome::new(true, vec![]),
                Some(((x, y, z), v)) => {
                    Outcome::new(false, vec![tensor_line(&format!("mixed jacobiator ({x}, {y}, {z})"), &v)])
                }
            }
        }
        Check::Coboundary { phi, over, with } => {
            let (phi_alg, a) = (s.algebra(phi)?, s.algebra(over)?);
            let phi2 = Cochain2::from_algebra(&phi_alg);
            let mut out = coboundary(&a, &phi2)?;
            if let Some(psi) = with {
                let (given, host) = s.cochain(psi)?;
                if host != a {
                    return Err(Error::usage(format!("{} is not a cochain over {}", psi.text, over.text)));
                }
                out.details.extend(side_by_side(&a, &phi2, &given, &psi.text, &phi.text)?);
            }
            out
        }
        Check::H2 { algebra } => {
            let rep = h2_dim(&s.algebra(algebra)?)?;
            Outcome {
                status: Status::Pass,
                details: vec![
                    format!("dim C1 = {}, dim C2 = {}", rep.cochain1_dim, rep.cochain2_dim),
                    format!("dim Z2 = {}, dim B2 = {}, dim H2 = {}", rep.kernel_dim, rep.image_dim, rep.quotient_dim),
                    format!("derivations: {}", rep.derivations_dim),
                    format!("rank cross-check at random points: {}", rep.cross_checked),
                ],
                assumptions: rep.parameter_assumptions,
            }
        }
        Check::Twist { kind, order } => twist(*kind, order_of(order)?)?,
        Check::Factored { n, order } => {
            let cmp = factored_r_compare(*n, order_of(order)?)?;
            let mut details = Vec::new();
            if let Some(d) = cmp.failing_order {
                details.push(format!("sides differ at order {d}:"));
                details.extend(cmp.difference.iter().map(|l| format!("  {l}")));
            }
            Outcome::new(cmp.equal, details)
        }
        Check::MuPrime { n } => Outcome::new(true, make_mu_prime(*n)?.report.render_lines()),
    })
}

fn coboundary(a: &LieSuperAlgebra, phi: &Cochain2) -> Result<Outcome> {
    Ok(match solve_coboundary(a, phi)? {
        CoboundaryResult::Found {
            psi,
            denominator,
            assumptions,
            verified,
            cross_checked,
        } => {
            let mut details = vec![if denominator.is_one() {
                "coboundary: d1(psi) = phi with psi =".to_string()
            } else {
                format!("coboundary: d1(psi) = phi with psi = (1/({denominator})) * psi0, psi0 =")
            }];
            details.extend(psi.render_lines().into_iter().map(|l| format!("  {l}")));
            details.push(format!("d1 recomputation: {verified}, random-point cross-check: {cross_checked}"));
            let mut assume: Vec<String> = assumptions.iter().map(nonzero).collect();
            if !denominator.is_constant() {
                assume.push(nonzero(&denominator));
            }
            assume.sort();
            assume.dedup();
            Outcome {
                status: if verified { Status::Pass } else { Status::Fail },
                details,
                assumptions: assume,
            }
        }
        CoboundaryResult::None {
            rank,
            augmented_rank,
            assumptions,
            cocycle,
        } => Outcome {
            status: Status::Fail,
            details: vec![
                format!("no coboundary: rank d1 = {rank} < rank [d1 | phi] = {augmented_rank}"),
                format!("phi is a 2-cocycle: {cocycle}"),
            ],
            assumptions: assumptions.iter().map(nonzero).collect(),
        },
    })
}

/// `d1(ψ)` next to `φ` on each independent pair, flagging disagreements.
fn side_by_side(
    a: &LieSuperAlgebra,
    phi: &Cochain2,
    psi: &crate::cohomology::Cochain1,
    psi_name: &str,
    phi_name: &str,
) -> Result<Vec<String>> {
    let d = d1(a, psi)?;
    let b = a.basis();
    let mut out = vec![format!("d1({psi_name}) | {phi_name}")];
    let mut mismatches = 0;
    for (i, j) in phi.table().independent_pairs() {
        let (x, y) = (d.value(i, j), phi.value(i, j));
        if x.is_zero() && y.is_zero() {
            continue;
        }
        let mark = if x == y { "" } else { "   <- differs" };
        if x != y {
            mismatches += 1;
        }
        out.push(format!("  [{}, {}]: {x} | {y}{mark}", b.name(i), b.name(j)));
    }
    out.push(format!("{psi_name} as given: d1({psi_name}) differs from {phi_name} on {mismatches} pairs"));
    Ok(out)
}

fn residual_lines(label: &str, t: &TensorUea) -> Vec<String> {
    match t.low_degree() {
        None => vec![format!("{label}: 0")],
        Some(d) => {
            let mut out = vec![format!("{label}: nonzero from order {d}, lowest part:")];
            out.extend(t.homogeneous(d).render_lines(SHOWN_TERMS).into_iter().map(|l| format!("  {l}")));
            out
        }
    }
}

fn twist(kind: TwistKind, order: u32) -> Result<Outcome> {
    let f = match kind {
        TwistKind::Jordanian => build_jordanian_twist(order)?,
        TwistKind::Extended(n) => build_extended_twist(n, order)?,
        TwistKind::NonTwist => build_non_twist(order)?,
    };
    let cocycle = twist_cocycle_check(&f)?;
    let mut details = vec![format!("F has {} terms through order {order}", f.len())];
    details.extend(residual_lines("twist equation residual", &cocycle));
    if kind == TwistKind::NonTwist {
        return Ok(Outcome::new(cocycle.is_zero(), details));
    }
    let r = universal_r(&f)?;
    let qybe = qybe_check(&r)?;
    details.extend(residual_lines("QYBE residual", &qybe));
    let limit = classical_limit(&r)?;
    details.push(tensor_line("classical limit", &limit));
    let (reference, label) = match kind {
        TwistKind::Extended(n) => (make_rjordan(n, &Poly::param("xi"))?, "r.jordan"),
        _ => (make_r_borel(), "r.borel"),
    };
    let c = proportionality(&limit, &reference).filter(|c| !c.is_zero());
    match &c {
        Some(c) => details.push(format!("classical limit = ({c}) * {label}")),
        None => details.push(format!("classical limit is not a multiple of {label}")),
    }
    Ok(Outcome::new(cocycle.is_zero() && qybe.is_zero() && c.is_some(), details))
}
