use super::{check_instance, CostMatrix, Homomorphism, Method, Outcome, SolveResult};
use crate::digraph::Digraph;
use crate::error::{Error, Result};

pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

struct Search<'a> {
    costs: &'a CostMatrix,
    target: Vec<Vec<bool>>,
    /// (neighbor, true when the arc leaves the vertex)
    nbrs: Vec<Vec<(usize, bool)>>,
    alive: Vec<Vec<bool>>,
    trail: Vec<(usize, usize)>,
    assignment: Vec<usize>,
    best: Option<(i128, Vec<usize>)>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn lower_bound(&self, from: usize) -> Option<i128> {
        let mut total = 0i128;
        for w in from..self.alive.len() {
            let m = self.alive[w]
                .iter()
                .enumerate()
                .filter(|(_, &a)| a)
                .map(|(i, _)| self.costs.get(w, i))
                .min()?;
            total += m as i128;
        }
        Some(total)
    }

    fn run(&mut self, u: usize, cost: i128) -> Result<()> {
        let n = self.alive.len();
        if u == n {
            if self.best.as_ref().is_none_or(|(b, _)| cost < *b) {
                self.best = Some((cost, self.assignment.clone()));
            }
            return Ok(());
        }
        let p = self.target.len();
        for i in 0..p {
            if !self.alive[u][i] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded(self.budget));
            }
            let here = cost + self.costs.get(u, i) as i128;
            let Some(rest) = self.lower_bound(u + 1) else {
                return Ok(());
            };
            if let Some((b, _)) = &self.best {
                if here + rest >= *b {
                    continue;
                }
            }
            let mark = self.trail.len();
            let mut wiped = false;
            for k in 0..self.nbrs[u].len() {
                let (w, outgoing) = self.nbrs[u][k];
                if w <= u {
                    continue;
                }
                for x in 0..p {
                    let ok = if outgoing { self.target[i][x] } else { self.target[x][i] };
                    if self.alive[w][x] && !ok {
                        self.alive[w][x] = false;
                        self.trail.push((w, x));
                    }
                }
                if !self.alive[w].iter().any(|&a| a) {
                    wiped = true;
                    break;
                }
            }
            if !wiped {
                self.assignment[u] = i;
                self.run(u + 1, here)?;
            }
            for (w, x) in self.trail.drain(mark..) {
                self.alive[w][x] = true;
            }
        }
        Ok(())
    }
}

/// Exact optimum by branch and bound over vertices in declaration order, with
/// forward checking on arcs. Returns the lexicographically smallest optimal
/// map. Fails with [`Error::BudgetExceeded`] after `node_budget` branches.
pub fn solve_bruteforce(d: &Digraph, h: &Digraph, costs: &CostMatrix, node_budget: u64) -> Result<SolveResult> {
    check_instance(d, h, costs)?;
    let n = d.vertex_count();
    let p = h.vertex_count();
    let target = h.adjacency_matrix();
    let row_nonempty: Vec<bool> = (0..p).map(|i| target[i].iter().any(|&b| b)).collect();
    let col_nonempty: Vec<bool> = (0..p).map(|j| (0..p).any(|i| target[i][j])).collect();

    let mut nbrs = vec![Vec::new(); n];
    let mut has_out = vec![false; n];
    let mut has_in = vec![false; n];
    let mut looped = vec![false; n];
    for (u, v) in d.arcs() {
        has_out[u] = true;
        has_in[v] = true;
        if u == v {
            looped[u] = true;
        } else {
            nbrs[u].push((v, true));
            nbrs[v].push((u, false));
        }
    }
    let alive: Vec<Vec<bool>> = (0..n)
        .map(|u| {
            (0..p)
                .map(|i| {
                    (!looped[u] || target[i][i])
                        && (!has_out[u] || row_nonempty[i])
                        && (!has_in[u] || col_nonempty[i])
                })
                .collect()
        })
        .collect();
    let infeasible = SolveResult {
        outcome: Outcome::Infeasible,
        method: Method::Bruteforce,
    };
    if alive.iter().any(|dom| !dom.iter().any(|&a| a)) {
        return Ok(infeasible);
    }
    let mut s = Search {
        costs,
        target,
        nbrs,
        alive,
        trail: Vec::new(),
        assignment: vec![0; n],
        best: None,
        nodes: 0,
        budget: node_budget,
    };
    s.run(0, 0)?;
    match s.best {
        None => Ok(infeasible),
        Some((_, map)) => {
            let cost = costs.cost_of(&map)?;
            Ok(SolveResult {
                outcome: Outcome::Optimal(Homomorphism { map, cost }),
                method: Method::Bruteforce,
            })
        }
    }
}
