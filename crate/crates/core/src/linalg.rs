//! Dense matrices over the parameter polynomial ring, with fraction-free
//! (Bareiss) elimination. Ranks and solutions are generic: every pivot that
//! is not a constant is recorded as a non-vanishing assumption.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{Assignment, Param, Poly, Rational};

#[derive(Clone, PartialEq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Poly::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Poly>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let data: Vec<Poly> = rows.into_iter().flatten().collect();
        assert_eq!(data.len(), n * cols, "ragged rows");
        Self {
            rows: n,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Poly) {
        self.data[r * self.cols + c] = v;
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn substitute(&self, a: &Assignment) -> Self {
        self.map(|p| p.substitute(a))
    }

    /// `[self | b]`.
    pub fn augmented(&self, b: &[Poly]) -> Self {
        assert_eq!(b.len(), self.rows);
        let mut out = Self::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(r, c, self.get(r, c).clone());
            }
            out.set(r, self.cols, b[r].clone());
        }
        out
    }

    pub fn params(&self) -> std::collections::BTreeSet<Param> {
        self.data.iter().flat_map(|p| p.params()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

/// Row echelon form produced by [`eliminate`].
#[derive(Clone, Debug)]
pub struct Echelon {
    pub matrix: PolyMatrix,
    /// Pivot column of each of the first `rank` rows.
    pub pivots: Vec<usize>,
    /// Nonconstant pivots, assumed nonzero.
    pub assumptions: Vec<Poly>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Pivot preference: constants first, then fewer terms, then lower degree.
fn pivot_cost(p: &Poly) -> (bool, usize, u32) {
    (!p.is_constant(), p.terms().len(), p.total_degree())
}

fn monic(p: &Poly) -> Poly {
    match p.terms().last() {
        Some((_, lc)) => p.scale(&(Rational::from_integer(1.into()) / lc.clone())),
        None => p.clone(),
    }
}

/// Fraction-free elimination scanning columns `0..limit` in order.
/// Columns at or beyond `limit` are transformed but never pivoted on.
pub fn eliminate_columns(a: &PolyMatrix, limit: usize) -> Echelon {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut assumptions: Vec<Poly> = Vec::new();
    let mut prev = Poly::one();
    let mut row = 0;
    for col in 0..limit.min(m.cols) {
        if row == m.rows {
            break;
        }
        let best = (row..m.rows)
            .filter(|&r| !m.get(r, col).is_zero())
            .min_by_key(|&r| pivot_cost(m.get(r, col)));
        let Some(p) = best else { continue };
        m.swap_rows(row, p);
        let piv = m.get(row, col).clone();
        for r in row + 1..m.rows {
            let f = m.get(r, col).clone();
            for c in col + 1..m.cols {
                let v = &(&piv * m.get(r, c)) - &(&f * m.get(row, c));
                let v = if prev.is_one() {
                    v
                } else {
                    v.exact_div(&prev).expect("Bareiss step divides exactly")
                };
                m.set(r, c, v);
            }
            m.set(r, col, Poly::zero());
        }
        // Bareiss pivots are nested minors; the new condition is the ratio
        // to the previous pivot when it is polynomial.
        let fresh = piv.exact_div(&prev).unwrap_or_else(|| piv.clone());
        if !fresh.is_constant() {
            let fresh = monic(&fresh);
            if !assumptions.contains(&fresh) {
                assumptions.push(fresh);
            }
        }
        prev = piv;
        pivots.push(col);
        row += 1;
    }
    Echelon {
        matrix: m,
        pivots,
        assumptions,
    }
}

pub fn eliminate(a: &PolyMatrix) -> Echelon {
    eliminate_columns(a, a.cols)
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankResult {
    pub rank: usize,
    pub assumptions: Vec<Poly>,
}

pub fn rank(a: &PolyMatrix) -> RankResult {
    let e = eliminate(a);
    RankResult {
        rank: e.rank(),
        assumptions: e.assumptions,
    }
}

/// Vector of rational functions sharing one denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct RatVector {
    pub numerators: Vec<Poly>,
    pub denominator: Poly,
}

impl RatVector {
    /// Clears the denominator when it divides every numerator, or folds it
    /// in when it is a constant.
    pub fn simplify(mut self) -> Self {
        if let Some(c) = self.denominator.as_constant() {
            let inv = Rational::from_integer(1.into()) / c;
            self.numerators = self.numerators.iter().map(|p| p.scale(&inv)).collect();
            self.denominator = Poly::one();
            return self;
        }
        let divided: Option<Vec<Poly>> = self
            .numerators
            .iter()
            .map(|p| p.exact_div(&self.denominator))
            .collect();
        if let Some(d) = divided {
            self.numerators = d;
            self.denominator = Poly::one();
            return self;
        }
        // cancel the monomial factor shared by everything
        let mut common = self.denominator.monomial_content().0;
        for p in self.numerators.iter().filter(|p| !p.is_zero()) {
            common = common.gcd(&p.monomial_content().0);
        }
        if !common.is_one() {
            let g = Poly::monomial(common, Rational::from_integer(1.into()));
            let cancel = |p: &Poly| p.exact_div(&g).expect("monomial divides");
            self.numerators = self.numerators.iter().map(cancel).collect();
            self.denominator = cancel(&self.denominator);
            if self.denominator.is_constant() {
                return self.simplify();
            }
        }
        // normalize the leading coefficient of the denominator to 1
        if let Some((_, lc)) = self.denominator.terms().last() {
            let inv = Rational::from_integer(1.into()) / lc.clone();
            self.numerators = self.numerators.iter().map(|p| p.scale(&inv)).collect();
            self.denominator = self.denominator.scale(&inv);
        }
        self
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.is_one()
    }
}

#[derive(Clone, Debug)]
pub enum Solution {
    /// A solution with free coordinates set to zero.
    Solved {
        values: RatVector,
        free: Vec<usize>,
        assumptions: Vec<Poly>,
    },
    Inconsistent {
        rank: usize,
        augmented_rank: usize,
        assumptions: Vec<Poly>,
    },
}

impl Solution {
    /// Polynomial solution values, if consistent with a trivial denominator.
    pub fn into_values(self) -> Option<Vec<Poly>> {
        match self {
            Solution::Solved { values, .. } if values.is_polynomial() => Some(values.numerators),
            _ => None,
        }
    }

    pub fn assumptions(&self) -> &[Poly] {
        match self {
            Solution::Solved { assumptions, .. } | Solution::Inconsistent { assumptions, .. } => {
                assumptions
            }
        }
    }
}

/// Solves `a·y = b` generically. Unknowns are taken in column order; free
/// unknowns are zero.
pub fn solve(a: &PolyMatrix, b: &[Poly]) -> Solution {
    let n = a.cols();
    let e = eliminate_columns(&a.augmented(b), n);
    let r = e.rank();
    let m = &e.matrix;
    let inconsistent = (r..m.rows()).any(|row| !m.get(row, n).is_zero());
    if inconsistent {
        return Solution::Inconsistent {
            rank: r,
            augmented_rank: r + 1,
            assumptions: e.assumptions,
        };
    }
    // Cramer: the last pivot is the determinant of the pivot block, so
    // D·y is polynomial.
    let d = if r == 0 {
        Poly::one()
    } else {
        m.get(r - 1, e.pivots[r - 1]).clone()
    };
    let mut num = vec![Poly::zero(); n];
    for i in (0..r).rev() {
        let pc = e.pivots[i];
        let mut acc = &d * m.get(i, n);
        for &pj in &e.pivots[i + 1..] {
            acc -= &(m.get(i, pj) * &num[pj]);
        }
        num[pc] = acc
            .exact_div(m.get(i, pc))
            .expect("back substitution divides exactly");
    }
    let free = (0..n).filter(|c| !e.pivots.contains(c)).collect();
    Solution::Solved {
        values: RatVector {
            numerators: num,
            denominator: d,
        }
        .simplify(),
        free,
        assumptions: e.assumptions,
    }
}

/// Random rational point avoiding the zeros of `avoid`. Deterministic per seed.
pub fn random_point(
    params: &std::collections::BTreeSet<Param>,
    avoid: &[Poly],
    seed: u64,
) -> Assignment {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let pairs: Vec<(&str, Rational)> = params
            .iter()
            .map(|p| {
                let num: i64 = rng.gen_range(-97..=97);
                let den: i64 = rng.gen_range(1..=13);
                (p.name(), Rational::new(num.into(), den.into()))
            })
            .collect();
        let a = Assignment::new(pairs);
        if avoid.iter().all(|p| !p.substitute(&a).is_zero()) {
            return a;
        }
    }
}

/// Re-checks a symbolic rank at two random points where its assumptions hold.
pub fn rank_cross_check(a: &PolyMatrix, symbolic: &RankResult, seed: u64) -> bool {
    let params = a.params();
    if params.is_empty() {
        return true;
    }
    (0..2).all(|k| {
        let pt = random_point(&params, &symbolic.assumptions, seed.wrapping_add(k));
        rank(&a.substitute(&pt)).rank == symbolic.rank
    })
}
