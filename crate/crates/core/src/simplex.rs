//! A small dense two-phase simplex, generic over exact rationals and `f64`.
//!
//! Meant for the tiny path-packing programs built elsewhere in the crate, not as a general
//! solver: the tableau is dense and every pivot touches every entry.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arithmetic the tableau needs. `f64` treats magnitudes below `1e-9` as zero.
pub trait Scalar:
    Clone
    + Zero
    + One
    + PartialOrd
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Div<Output = Self>
    + std::ops::Neg<Output = Self>
{
    fn is_positive(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn is_null(&self) -> bool {
        !self.is_positive() && !self.is_negative()
    }
}

const F64_ZERO: f64 = 1e-9;

impl Scalar for f64 {
    fn is_positive(&self) -> bool {
        *self > F64_ZERO
    }
    fn is_negative(&self) -> bool {
        *self < -F64_ZERO
    }
}

impl Scalar for BigRational {
    fn is_positive(&self) -> bool {
        Signed::is_positive(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// Maximise `objective · x` subject to the constraints and `x >= 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearProgram<T> {
    pub objective: Vec<T>,
    pub constraints: Vec<(Vec<T>, Relation, T)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome<T> {
    Optimal { x: Vec<T>, value: T },
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SimplexError {
    #[error("no optimum after {0} pivots")]
    IterationLimit(usize),
}

const MAX_PIVOTS: usize = 100_000;
const DEGENERATE_LIMIT: usize = 50;

struct Tableau<T> {
    /// Constraint rows; the last entry of each row is the right-hand side.
    rows: Vec<Vec<T>>,
    basis: Vec<usize>,
    columns: usize,
}

enum Phase {
    Optimal,
    Unbounded,
}

impl<T: Scalar> Tableau<T> {
    fn rhs(&self, i: usize) -> &T {
        &self.rows[i][self.columns]
    }

    fn pivot(&mut self, r: usize, j: usize) {
        let p = self.rows[r][j].clone();
        for v in self.rows[r].iter_mut() {
            *v = v.clone() / p.clone();
        }
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[j].is_null() {
                continue;
            }
            let f = row[j].clone();
            for (v, pv) in row.iter_mut().zip(&pivot_row) {
                *v = v.clone() - f.clone() * pv.clone();
            }
        }
        self.basis[r] = j;
    }

    /// Reduced costs `c_B B⁻¹ A_j - c_j` for every column.
    fn reduced_costs(&self, cost: &[T]) -> Vec<T> {
        (0..self.columns)
            .map(|j| {
                let mut r = -cost[j].clone();
                for (i, row) in self.rows.iter().enumerate() {
                    if !row[j].is_null() {
                        r = r + cost[self.basis[i]].clone() * row[j].clone();
                    }
                }
                r
            })
            .collect()
    }

    /// Dantzig's rule (most negative reduced cost) while pivots make progress; after a run of
    /// degenerate pivots, Bland's rule (lowest index) until progress resumes, which rules out
    /// cycling.
    fn optimise(&mut self, cost: &[T], allowed: &[bool]) -> Result<Phase, SimplexError> {
        let mut reduced = self.reduced_costs(cost);
        let mut degenerate_run = 0;
        for _ in 0..MAX_PIVOTS {
            let bland = degenerate_run >= DEGENERATE_LIMIT;
            let mut entering: Option<usize> = None;
            for j in (0..self.columns).filter(|&j| allowed[j] && reduced[j].is_negative()) {
                match entering {
                    None => entering = Some(j),
                    Some(best) if !bland && reduced[j] < reduced[best] => entering = Some(j),
                    _ => {}
                }
                if bland {
                    break;
                }
            }
            let Some(j) = entering else {
                return Ok(Phase::Optimal);
            };
            // minimum ratio; among near-ties the largest pivot, or the lowest basic index under
            // Bland's rule
            let ratios: Vec<(usize, T)> = (0..self.rows.len())
                .filter(|&i| self.rows[i][j].is_positive())
                .map(|i| (i, self.rhs(i).clone() / self.rows[i][j].clone()))
                .collect();
            let mut leave: Option<(usize, T)> = None;
            if let Some(min) = ratios
                .iter()
                .map(|(_, q)| q.clone())
                .reduce(|a, b| if b < a { b } else { a })
            {
                for (i, q) in ratios {
                    if (q.clone() - min.clone()).is_positive() {
                        continue;
                    }
                    let better = match &leave {
                        None => true,
                        Some((k, _)) if bland => self.basis[i] < self.basis[*k],
                        Some((k, _)) => self.rows[i][j] > self.rows[*k][j],
                    };
                    if better {
                        leave = Some((i, q));
                    }
                }
            }
            let Some((r, ratio)) = leave else {
                return Ok(Phase::Unbounded);
            };
            degenerate_run = if ratio.is_null() { degenerate_run + 1 } else { 0 };
            self.pivot(r, j);
            let f = reduced[j].clone();
            for (k, rk) in reduced.iter_mut().enumerate() {
                let a = &self.rows[r][k];
                if !a.is_null() {
                    *rk = rk.clone() - f.clone() * a.clone();
                }
            }
        }
        Err(SimplexError::IterationLimit(MAX_PIVOTS))
    }

    fn value(&self, cost: &[T]) -> T {
        let mut v = T::zero();
        for (i, &b) in self.basis.iter().enumerate() {
            v = v + cost[b].clone() * self.rhs(i).clone();
        }
        v
    }
}

pub fn solve<T: Scalar>(lp: &LinearProgram<T>) -> Result<LpOutcome<T>, SimplexError> {
    let n = lp.objective.len();
    let m = lp.constraints.len();
    // normalise to non-negative right-hand sides
    let rows: Vec<(Vec<T>, Relation, T)> = lp
        .constraints
        .iter()
        .map(|(a, rel, b)| {
            if b.is_negative() {
                let flipped = match rel {
                    Relation::Le => Relation::Ge,
                    Relation::Ge => Relation::Le,
                    Relation::Eq => Relation::Eq,
                };
                (a.iter().map(|v| -v.clone()).collect(), flipped, -b.clone())
            } else {
                (a.clone(), *rel, b.clone())
            }
        })
        .collect();
    let slacks = rows.iter().filter(|r| r.1 != Relation::Eq).count();
    let artificials = rows.iter().filter(|r| r.1 != Relation::Le).count();
    let columns = n + slacks + artificials;
    let mut tableau = Tableau {
        rows: Vec::with_capacity(m),
        basis: Vec::with_capacity(m),
        columns,
    };
    let (mut next_slack, mut next_art) = (n, n + slacks);
    for (a, rel, b) in rows {
        let mut row = vec![T::zero(); columns + 1];
        for (j, v) in a.into_iter().enumerate() {
            row[j] = v;
        }
        row[columns] = b;
        match rel {
            Relation::Le => {
                row[next_slack] = T::one();
                tableau.basis.push(next_slack);
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = -T::one();
                next_slack += 1;
                row[next_art] = T::one();
                tableau.basis.push(next_art);
                next_art += 1;
            }
            Relation::Eq => {
                row[next_art] = T::one();
                tableau.basis.push(next_art);
                next_art += 1;
            }
        }
        tableau.rows.push(row);
    }

    if artificials > 0 {
        let phase_one: Vec<T> = (0..columns)
            .map(|j| if j >= n + slacks { -T::one() } else { T::zero() })
            .collect();
        let everything = vec![true; columns];
        tableau.optimise(&phase_one, &everything)?;
        if tableau.value(&phase_one).is_negative() {
            return Ok(LpOutcome::Infeasible);
        }
        // drive artificials out of the basis where possible; rows that cannot be cleared are
        // redundant and stay at zero
        for i in 0..m {
            if tableau.basis[i] >= n + slacks {
                if let Some(j) = (0..n + slacks).find(|&j| !tableau.rows[i][j].is_null()) {
                    tableau.pivot(i, j);
                }
            }
        }
    }

    let mut cost = lp.objective.clone();
    cost.resize(columns, T::zero());
    let allowed: Vec<bool> = (0..columns).map(|j| j < n + slacks).collect();
    match tableau.optimise(&cost, &allowed)? {
        Phase::Unbounded => Ok(LpOutcome::Unbounded),
        Phase::Optimal => {
            let mut x = vec![T::zero(); n];
            for (i, &b) in tableau.basis.iter().enumerate() {
                if b < n {
                    x[b] = tableau.rhs(i).clone();
                }
            }
            let value = tableau.value(&cost);
            Ok(LpOutcome::Optimal { x, value })
        }
    }
}
