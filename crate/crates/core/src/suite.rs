//! The acceptance battery: eleven exact criteria, each with a wall-clock
//! budget, and a one-page verdict.

use std::time::{Duration, Instant};

use crate::bialgebra::{
    adjoint_twist_r, check_cybe, check_mcybe, cobracket_from_r, coefficient_tensor, dual_algebra, limit_r,
    proportionality, LieBialgebra,
};
use crate::catalog::{self, make_mu_prime, make_psi, make_r_borel, make_rdj, make_rfull, make_rjordan, make_sl, SlLayout};
use crate::cohomology::{compatible_pair, d1, is_cocycle2, solve_coboundary, CoboundaryResult, Cochain2};
use crate::error::Result;
use crate::lie::{BracketTable, JacobiReport, LieSuperAlgebra, Parity};
use crate::scalar::{int, Assignment, Poly};
use crate::uea::{
    build_extended_twist, build_jordanian_twist, build_non_twist, classical_limit, factored_r_compare, qybe_check,
    twist_cocycle_check, universal_r,
};

#[derive(Clone, Debug)]
pub struct Criterion {
    pub id: u8,
    pub title: &'static str,
    pub budget: Duration,
    pub elapsed: Duration,
    /// The exact condition held (ignores the time budget).
    pub holds: bool,
    pub details: Vec<String>,
}

impl Criterion {
    pub fn within_budget(&self) -> bool {
        self.elapsed <= self.budget
    }

    pub fn passed(&self) -> bool {
        self.holds && self.within_budget()
    }

    /// `PASS [ 4] decomposition and limit (0.01 s, budget 5 s)`.
    pub fn line(&self) -> String {
        format!(
            "{} [{:>2}] {} ({:.2} s, budget {} s{})",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs(),
            if self.within_budget() { "" } else { ", over budget" }
        )
    }
}

struct Log {
    holds: bool,
    details: Vec<String>,
}

impl Log {
    fn new() -> Self {
        Log {
            holds: true,
            details: Vec::new(),
        }
    }

    /// Records one sub-check.
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        self.holds &= ok;
        self.details.push(format!("{} {}", if ok { "ok  " } else { "FAIL" }, what.into()));
    }

    fn note(&mut self, what: impl Into<String>) {
        self.details.push(format!("     {}", what.into()));
    }
}

fn timed(id: u8, title: &'static str, budget_secs: u64, body: impl FnOnce(&mut Log) -> Result<()>) -> Criterion {
    let start = Instant::now();
    let mut log = Log::new();
    if let Err(e) = body(&mut log) {
        log.check(false, format!("error: {e}"));
    }
    Criterion {
        id,
        title,
        budget: Duration::from_secs(budget_secs),
        elapsed: start.elapsed(),
        holds: log.holds,
        details: log.details,
    }
}

fn h() -> Poly {
    Poly::param("h")
}

fn xi() -> Poly {
    Poly::param("xi")
}

pub fn catalog_soundness() -> Criterion {
    timed(1, "catalog soundness: Jacobi identity", 10, |log| {
        for name in [
            "sl2",
            "sl3",
            "sl4",
            "gl3",
            "borel",
            "osp12",
            "double.g1",
            "double.g2",
            "double.g1dual",
            "double.g2dual",
            "double.pencil",
        ] {
            let report = catalog::algebra(name)?.verify_jacobi();
            log.check(report.passed(), format!("jacobi {name}"));
        }
        Ok(())
    })
}

pub fn jordanian_cybe() -> Criterion {
    timed(2, "jordanian r-matrices solve the CYBE", 10, |log| {
        for n in 2..=4 {
            let rep = check_cybe(&make_sl(n)?, &make_rjordan(n, &xi())?)?;
            log.check(rep.passed(), format!("cybe r.jordan on sl{n}"));
        }
        Ok(())
    })
}

pub fn standard_mcybe() -> Criterion {
    timed(3, "standard r-matrices: MCYBE holds, CYBE fails", 30, |log| {
        for n in 2..=3 {
            let (g, r) = (make_sl(n)?, make_rdj(n, &h())?);
            log.check(check_mcybe(&g, &r)?.passed(), format!("mcybe r.dj on sl{n}"));
            let cybe = check_cybe(&g, &r)?;
            log.check(!cybe.passed(), format!("cybe r.dj on sl{n} is false"));
            if cybe.passed() {
                log.note(format!("[[r, r]] = 0 on sl{n}: r.dj solves the CYBE"));
            }
        }
        Ok(())
    })
}

pub fn decomposition_and_limit() -> Criterion {
    timed(4, "decomposition r.full = r.dj + r.jordan and h -> 0 limit", 5, |log| {
        for n in 2..=4 {
            let (full, dj, jo) = (make_rfull(n, &h(), &xi())?, make_rdj(n, &h())?, make_rjordan(n, &xi())?);
            log.check(full == dj.try_add(&jo)?, format!("r.full = r.dj + r.jordan on sl{n}"));
            log.check(limit_r(&full, "h") == jo, format!("r.full at h = 0 is r.jordan on sl{n}"));
        }
        Ok(())
    })
}

pub fn adjoint_twist() -> Criterion {
    timed(5, "exp(xi ad E1N) turns r.dj into r.dj plus a multiple of r.jordan", 10, |log| {
        for n in 2..=3 {
            let g = make_sl(n)?;
            let dj = make_rdj(n, &h())?;
            let z = SlLayout::new(n).unit(1, n);
            let change = adjoint_twist_r(&g, &dj, z, &xi())?.try_sub(&dj)?;
            let first = coefficient_tensor(&change, "xi", 1).scale(&xi());
            let c = proportionality(&first, &make_rjordan(n, &xi())?).filter(|c| !c.is_zero());
            log.check(c.is_some(), format!("first-order change proportional to r.jordan on sl{n}"));
            if let Some(c) = c {
                log.note(format!("constant on sl{n}: {c}"));
            }
        }
        Ok(())
    })
}

pub fn quantum_double() -> Criterion {
    timed(6, "quantum double: pencil cobracket and dual pencil", 5, |log| {
        let p = catalog::make_double_pieces();
        let pencil = catalog::make_double_pencil();
        let (a1, a2) = (Poly::param("a1"), Poly::param("a2"));
        let delta = cobracket_from_r(&pencil, &p.r)?;
        let combined = cobracket_from_r(&p.g1, &p.r)?.combine(&a1, &cobracket_from_r(&p.g2, &p.r)?, &a2)?;
        log.check(delta.values() == combined.values(), "delta of the pencil = a1 delta1 + a2 delta2");
        let dual = dual_algebra(&LieBialgebra::from_r(&pencil, &p.r)?)?;
        log.check(
            dual == catalog::make_double_dual_pencil(),
            "dual algebra = a1 g1* + a2 g2*",
        );
        Ok(())
    })
}

pub fn mutual_cocycles() -> Criterion {
    timed(7, "mutual cocycles and compatibility", 10, |log| {
        let pairs = [
            ("dual.std", "dual.jordan"),
            ("mu1star", "mu2star"),
        ];
        for (x, y) in pairs {
            let (a, b) = (catalog::algebra(x)?, catalog::algebra(y)?);
            log.check(compatible_pair(&a, &b)?.passed(), format!("compatible {x} {y}"));
            log.check(
                is_cocycle2(&a, &Cochain2::from_algebra(&b))?.passed(),
                format!("{y} is a 2-cocycle over {x}"),
            );
            log.check(
                is_cocycle2(&b, &Cochain2::from_algebra(&a))?.passed(),
                format!("{x} is a 2-cocycle over {y}"),
            );
        }
        Ok(())
    })
}

pub fn coboundaries() -> Criterion {
    timed(8, "mu2* is a coboundary over mu1*; mu_h* is not one over the jordanian dual", 30, |log| {
        let (mu1, mu2) = (catalog::make_mu1star(), catalog::make_mu2star());
        let phi = Cochain2::from_algebra(&mu2);
        match solve_coboundary(&mu1, &phi)? {
            CoboundaryResult::Found { psi, denominator, verified, .. } => {
                log.check(verified, "solve_coboundary finds psi with d1(psi) = mu2* over mu1*");
                for l in psi.render_lines() {
                    log.note(format!("psi{}: {l}", if denominator.is_one() { String::new() } else { format!(" * ({denominator})") }));
                }
            }
            CoboundaryResult::None { rank, augmented_rank, .. } => {
                log.check(false, format!("mu2* over mu1*: no solution, ranks {rank} < {augmented_rank}"));
            }
        }
        let printed = d1(&mu1, &make_psi())?;
        let differing: Vec<String> = phi
            .table()
            .independent_pairs()
            .filter(|&(i, j)| printed.value(i, j) != phi.value(i, j))
            .map(|(i, j)| {
                let b = mu1.basis();
                format!("[{}, {}]: d1(psi) = {}, mu2* = {}", b.name(i), b.name(j), printed.value(i, j), phi.value(i, j))
            })
            .collect();
        log.note(format!("tabulated psi: d1(psi) differs from mu2* on {} pairs", differing.len()));
        for d in differing {
            log.note(d);
        }

        let (jordan, standard) = (catalog::algebra("dual.jordan")?, catalog::algebra("dual.std")?);
        let phi = Cochain2::from_algebra(&standard);
        match solve_coboundary(&jordan, &phi)? {
            CoboundaryResult::None { rank, augmented_rank, .. } => log.check(
                true,
                format!("dual.std over dual.jordan: NONE, rank d1 = {rank} < rank [d1 | phi] = {augmented_rank}"),
            ),
            CoboundaryResult::Found { psi, denominator, .. } => {
                log.check(false, "dual.std over dual.jordan returns NONE");
                log.note(format!("solver found psi with denominator {denominator}:"));
                for l in psi.render_lines() {
                    log.note(format!("  {l}"));
                }
                // over polynomials the class survives: at xi = 0 the bracket
                // vanishes and so does every d1(psi), while phi does not
                let at_zero = jordan.substitute(&Assignment::single("xi", int(0)));
                log.note(format!(
                    "at xi = 0 the jordanian dual is abelian: {}, phi nonzero: {}; no psi polynomial in xi exists",
                    at_zero.is_abelian(),
                    !phi.is_zero()
                ));
            }
        }
        Ok(())
    })
}

pub fn mu_prime_tables() -> Criterion {
    timed(9, "mu' transcription report, deterministic", 10, |log| {
        let first = make_mu_prime(3)?.report;
        let second = make_mu_prime(3)?.report;
        log.check(first == second, "two transcriptions agree");
        log.check(!first.lines.is_empty(), format!("{} table lines reported", first.lines.len()));
        for l in first.render_lines() {
            log.note(l);
        }
        Ok(())
    })
}

/// Jordanian twist through `max_order`, extended twist on sl(3) at order 2.
pub fn twist_engine(max_order: u32) -> Criterion {
    timed(10, "twist engine: twist equation, QYBE, classical limits, factored R", 300, |log| {
        let borel_r = make_r_borel();
        for d in 1..=max_order {
            let f = build_jordanian_twist(d)?;
            log.check(twist_cocycle_check(&f)?.is_zero(), format!("jordanian twist equation at order {d}"));
            let r = universal_r(&f)?;
            log.check(qybe_check(&r)?.is_zero(), format!("QYBE for the jordanian R at order {d}"));
            let limit = classical_limit(&r)?;
            let sign = if limit == borel_r.scale(&xi()) {
                Some("+")
            } else if limit == borel_r.scale(&-xi()) {
                Some("-")
            } else {
                None
            };
            log.check(sign.is_some(), format!("classical limit at order {d} is ±xi h^x"));
            if let Some(s) = sign {
                log.note(format!("sign: {s} (limit = {limit})"));
            }
        }
        let f = build_extended_twist(3, 2)?;
        log.check(twist_cocycle_check(&f)?.is_zero(), "extended twist equation on sl3 at order 2");
        let limit = classical_limit(&universal_r(&f)?)?;
        let c = proportionality(&limit, &make_rjordan(3, &xi())?).filter(|c| !c.is_zero());
        log.check(c.is_some(), "extended classical limit proportional to r.jordan on sl3");
        if let Some(c) = c {
            log.note(format!("constant: {c}"));
        }
        let cmp = factored_r_compare(3, 2)?;
        log.check(cmp.equal, "factored R equals F21 F^-1 on sl3 at order 2");
        for l in cmp.difference {
            log.note(l);
        }
        Ok(())
    })
}

/// sl(2) with `[E12, E21] = E12` in place of `H12`.
pub fn corrupted_sl2() -> Result<LieSuperAlgebra> {
    let b = make_sl(2)?.basis().clone();
    let two = Poly::from_int(2);
    LieSuperAlgebra::from_named(
        "sl2.corrupted",
        b,
        &[
            ("H12", "E12", &[("E12", two.clone())]),
            ("H12", "E21", &[("E21", -&two)]),
            ("E12", "E21", &[("E12", Poly::one())]),
        ],
    )
}

/// `φ(E12, E21) = E12` on sl(2), zero elsewhere.
pub fn non_cocycle() -> Result<(LieSuperAlgebra, Cochain2)> {
    let g = make_sl(2)?;
    let b = g.basis().clone();
    let mut t = BracketTable::new(b.clone(), Parity::Even);
    t.set(b.index("E12")?, b.index("E21")?, vec![(b.index("E12")?, Poly::one())])?;
    Ok((g, Cochain2::from_table(t)))
}

pub fn negative_controls() -> Criterion {
    timed(11, "negative controls fail with witnesses", 10, |log| {
        match corrupted_sl2()?.verify_jacobi() {
            JacobiReport::Witness { triple: (a, b, c), residual } => {
                log.check(true, format!("corrupted sl2 fails Jacobi: J({a}, {b}, {c}) = {residual}"))
            }
            JacobiReport::Pass => log.check(false, "corrupted sl2 fails Jacobi"),
        }
        let residual = twist_cocycle_check(&build_non_twist(2)?)?;
        log.check(!residual.is_zero(), "1 (x) 1 + xi x (x) x fails the twist equation");
        if let Some(d) = residual.low_degree() {
            log.note(format!("lowest order {d}: {}", residual.homogeneous(d).render()));
        }
        let (g, phi) = non_cocycle()?;
        match is_cocycle2(&g, &phi)?.witness {
            Some(((x, y, z), v)) => log.check(true, format!("non-cocycle: d2 phi({x}, {y}, {z}) = {v}")),
            None => log.check(false, "non-cocycle 2-cochain fails d2 phi = 0"),
        }
        Ok(())
    })
}

/// All criteria, in order. `order` is the highest jordanian twist degree.
pub fn run_all(order: u32) -> Vec<Criterion> {
    vec![
        catalog_soundness(),
        jordanian_cybe(),
        standard_mcybe(),
        decomposition_and_limit(),
        adjoint_twist(),
        quantum_double(),
        mutual_cocycles(),
        coboundaries(),
        mu_prime_tables(),
        twist_engine(order),
        negative_controls(),
    ]
}

pub struct Verdict {
    pub criteria: Vec<Criterion>,
}

impl Verdict {
    pub fn all_passed(&self) -> bool {
        self.criteria.iter().all(Criterion::passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.criteria {
            out.push_str(&c.line());
            out.push('\n');
            for d in &c.details {
                out.push_str("    ");
                out.push_str(d);
                out.push('\n');
            }
        }
        let passed = self.criteria.iter().filter(|c| c.passed()).count();
        out.push_str(&format!("verdict: {passed}/{} criteria pass\n", self.criteria.len()));
        out
    }
}

pub fn paper_suite(order: u32) -> Verdict {
    Verdict {
        criteria: run_all(order),
    }
}
