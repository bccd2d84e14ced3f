use super::{CostMatrix, Homomorphism, Method, Outcome, SolveResult};
use crate::digraph::{components, Digraph};
use crate::error::{Error, Result};

/// MinHOM into the directed `k`-cycle `0 -> 1 -> ... -> k-1 -> 0`.
///
/// Every cycle vertex has exactly one out- and one in-neighbour, so within a
/// connected component of the input the image of one vertex fixes all others.
/// Each component therefore has at most `k` candidate maps; the cheapest
/// consistent one is kept.
pub fn solve_cycle(d: &Digraph, k: usize, costs: &CostMatrix) -> Result<SolveResult> {
    if k < 2 {
        return Err(Error::InvalidParameter("cycle length must be at least 2".into()));
    }
    let n = d.vertex_count();
    costs.check_shape(n, k)?;
    let infeasible = SolveResult {
        outcome: Outcome::Infeasible,
        method: Method::Cycle,
    };
    if d.loop_count() > 0 {
        return Ok(infeasible);
    }
    // (neighbor, offset to add modulo k)
    let mut nbrs = vec![Vec::new(); n];
    for (u, v) in d.arcs() {
        nbrs[u].push((v, 1));
        nbrs[v].push((u, k - 1));
    }
    let mut map = vec![0usize; n];
    for comp in components(d) {
        let root = comp[0];
        let mut best: Option<(i128, Vec<usize>)> = None;
        for start in 0..k {
            let mut image: Vec<Option<usize>> = vec![None; n];
            image[root] = Some(start);
            let mut stack = vec![root];
            let mut consistent = true;
            'walk: while let Some(u) = stack.pop() {
                let iu = image[u].expect("visited vertices have images");
                for &(w, off) in &nbrs[u] {
                    let want = (iu + off) % k;
                    match image[w] {
                        None => {
                            image[w] = Some(want);
                            stack.push(w);
                        }
                        Some(x) if x != want => {
                            consistent = false;
                            break 'walk;
                        }
                        Some(_) => {}
                    }
                }
            }
            if !consistent {
                continue;
            }
            let assigned: Vec<usize> = comp.iter().map(|&u| image[u].expect("component is connected")).collect();
            let cost: i128 = comp
                .iter()
                .zip(&assigned)
                .map(|(&u, &x)| costs.get(u, x) as i128)
                .sum();
            if best.as_ref().is_none_or(|(b, _)| cost < *b) {
                best = Some((cost, assigned));
            }
        }
        let Some((_, assigned)) = best else {
            return Ok(infeasible);
        };
        for (&u, x) in comp.iter().zip(assigned) {
            map[u] = x;
        }
    }
    let cost = costs.cost_of(&map)?;
    Ok(SolveResult {
        outcome: Outcome::Optimal(Homomorphism { map, cost }),
        method: Method::Cycle,
    })
}
