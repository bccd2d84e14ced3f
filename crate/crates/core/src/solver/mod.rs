//! Exact minimum cost homomorphism solvers.
//!
//! * [`solve_bruteforce`]: branch and bound with forward checking, any target.
//! * [`solve_minmax`]: minimum cut, for targets with a Min-Max ordering.
//! * [`solve_cycle`]: rotation enumeration, for directed cycle targets.
//! * [`collapse_extension`]: reduces an extension of a loopless target back
//!   to the target it extends.

mod brute;
mod cycle;
mod extension;
mod mincut;

use std::fmt;

pub use brute::{solve_bruteforce, DEFAULT_NODE_BUDGET};
pub use cycle::solve_cycle;
pub use extension::{collapse_extension, Collapsed};
pub use mincut::solve_minmax;

use crate::digraph::{as_directed_cycle, Digraph};
use crate::error::{Error, Result};
use crate::minmax::{find_minmax, MINMAX_SEARCH_GUARD};

/// Dense cost table `c[u][i]`: the cost of sending input vertex `u` to target
/// vertex `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl CostMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CostMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for u in 0..rows {
            for i in 0..cols {
                data.push(f(u, i));
            }
        }
        CostMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::CostShape {
                expected_rows: rows.len(),
                expected_cols: cols,
                rows: rows.len(),
                cols: bad.len(),
            });
        }
        Ok(CostMatrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, u: usize, i: usize) -> i64 {
        self.data[u * self.cols + i]
    }

    pub fn set(&mut self, u: usize, i: usize, value: i64) {
        self.data[u * self.cols + i] = value;
    }

    pub fn row(&self, u: usize) -> &[i64] {
        &self.data[u * self.cols..(u + 1) * self.cols]
    }

    pub fn check_shape(&self, rows: usize, cols: usize) -> Result<()> {
        if self.rows != rows || self.cols != cols {
            return Err(Error::CostShape {
                expected_rows: rows,
                expected_cols: cols,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(())
    }

    /// Cost of a total map, with overflow detection.
    pub fn cost_of(&self, map: &[usize]) -> Result<i64> {
        map.iter()
            .enumerate()
            .try_fold(0i64, |acc, (u, &i)| acc.checked_add(self.get(u, i)))
            .ok_or(Error::Overflow("summing homomorphism cost"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    /// `map[u]` is the image of input vertex `u`.
    pub map: Vec<usize>,
    pub cost: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Bruteforce,
    MinMax,
    Cycle,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Bruteforce => "bruteforce",
            Method::MinMax => "minmax",
            Method::Cycle => "cycle",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Optimal(Homomorphism),
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub outcome: Outcome,
    pub method: Method,
}

impl SolveResult {
    pub fn optimal(&self) -> Option<&Homomorphism> {
        match &self.outcome {
            Outcome::Optimal(h) => Some(h),
            Outcome::Infeasible => None,
        }
    }

    pub fn cost(&self) -> Option<i64> {
        self.optimal().map(|h| h.cost)
    }

    pub fn is_feasible(&self) -> bool {
        self.optimal().is_some()
    }
}

/// Checks that every arc of `d` (loops included) lands on an arc of `h`.
pub fn is_homomorphism(d: &Digraph, h: &Digraph, map: &[usize]) -> Result<bool> {
    if map.len() != d.vertex_count() {
        return Err(Error::NotHomomorphism(format!(
            "map covers {} of {} input vertices",
            map.len(),
            d.vertex_count()
        )));
    }
    if let Some(&bad) = map.iter().find(|&&i| i >= h.vertex_count()) {
        return Err(Error::IndexOutOfRange(bad));
    }
    Ok(d.arcs().all(|(u, v)| h.has_arc(map[u], map[v])))
}

pub(crate) fn check_instance(d: &Digraph, h: &Digraph, costs: &CostMatrix) -> Result<()> {
    costs.check_shape(d.vertex_count(), h.vertex_count())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveLimits {
    pub minmax_guard: usize,
    pub node_budget: u64,
}

impl Default for SolveLimits {
    fn default() -> Self {
        SolveLimits {
            minmax_guard: MINMAX_SEARCH_GUARD,
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// Picks a solver: directed cycle targets go to [`solve_cycle`], targets with a
/// Min-Max ordering (found within the guard) to [`solve_minmax`], everything
/// else to [`solve_bruteforce`].
pub fn solve_auto(d: &Digraph, h: &Digraph, costs: &CostMatrix, limits: SolveLimits) -> Result<SolveResult> {
    check_instance(d, h, costs)?;
    if let Some(order) = as_directed_cycle(h) {
        // cycle position k holds target vertex order[k]
        let k = order.len();
        let shifted = CostMatrix::from_fn(d.vertex_count(), k, |u, pos| costs.get(u, order[pos]));
        let mut res = solve_cycle(d, k, &shifted)?;
        if let Outcome::Optimal(hom) = &mut res.outcome {
            for x in hom.map.iter_mut() {
                *x = order[*x];
            }
        }
        return Ok(res);
    }
    let mut fired = Vec::new();
    match find_minmax(h, limits.minmax_guard) {
        Ok(Some(ord)) => return solve_minmax(d, h, &ord, costs),
        Ok(None) => {}
        Err(Error::GuardExceeded { .. }) => fired.push(format!(
            "Min-Max search skipped (target has {} vertices, guard {})",
            h.vertex_count(),
            limits.minmax_guard
        )),
        Err(e) => return Err(e),
    }
    match solve_bruteforce(d, h, costs, limits.node_budget) {
        Ok(r) => Ok(r),
        Err(Error::BudgetExceeded(b)) => {
            fired.push(format!("brute force exceeded its budget of {b} nodes"));
            Err(Error::NoSolver(fired.join("; ")))
        }
        Err(e) => Err(e),
    }
}
