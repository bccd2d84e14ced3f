//! Minimum cut realization of MinHOM for targets with a Min-Max ordering.
//!
//! Target vertices are relabelled `0..p` by the ordering. Each input vertex `u`
//! gets threshold variables `x(u, i) = [label(u) >= i]` for `i = 1..p-1`,
//! realised as a chain `s -> x(u,1) -> ... -> x(u,p-1) -> t` whose `l`-th arc
//! costs the shifted cost of label `l`. Reverse chain arcs are uncuttable, so
//! exactly one chain arc is cut per vertex.
//!
//! The arc relation `R` of a Min-Max ordered target is closed under
//! coordinatewise min and max. On its nonempty rows the row minimum `m` and
//! row maximum `M` are nondecreasing, and every row is an interval of the
//! nonempty columns. Hence for an arc `u -> v` of the input,
//! `(label(u), label(v)) in R` is equivalent to the two families
//!
//! * `x(u, i) => x(v, m(first nonempty row >= i))`
//! * `x(v, j) => x(u, first nonempty row r with M(r) >= j)`
//!
//! together with the unary restriction of `u` to nonempty rows and of `v` to
//! nonempty columns. Unary restrictions cost `BIG`, implications are
//! uncuttable.

use super::{check_instance, CostMatrix, Homomorphism, Method, Outcome, SolveResult};
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::flow::FlowNetwork;
use crate::minmax::{find_violation, Ordering};

/// Row extents of a min-max closed relation, checked at construction.
struct Staircase {
    /// `(m, M)` for nonempty rows.
    rows: Vec<Option<(usize, usize)>>,
    col_nonempty: Vec<bool>,
}

impl Staircase {
    fn new(rel: &[Vec<bool>]) -> Result<Self> {
        let p = rel.len();
        let col_nonempty: Vec<bool> = (0..p).map(|j| (0..p).any(|i| rel[i][j])).collect();
        let row_nonempty: Vec<bool> = (0..p).map(|i| rel[i].iter().any(|&b| b)).collect();
        let rows: Vec<Option<(usize, usize)>> = rel
            .iter()
            .map(|r| {
                let lo = r.iter().position(|&b| b)?;
                let hi = r.iter().rposition(|&b| b)?;
                Some((lo, hi))
            })
            .collect();
        let mut prev: Option<(usize, usize)> = None;
        for (i, ext) in rows.iter().enumerate() {
            let Some((lo, hi)) = *ext else { continue };
            if let Some((plo, phi)) = prev {
                if lo < plo || hi < phi {
                    return Err(Error::Internal(format!(
                        "row extents are not monotone at row {i}"
                    )));
                }
            }
            prev = Some((lo, hi));
            if let Some(gap) = (lo..=hi).find(|&j| col_nonempty[j] && !rel[i][j]) {
                return Err(Error::Internal(format!("row {i} has a gap at column {gap}")));
            }
        }
        for j in (0..p).filter(|&j| col_nonempty[j]) {
            let lo = (0..p).position(|i| rel[i][j]).unwrap_or(0);
            let hi = (0..p).rposition(|i| rel[i][j]).unwrap_or(0);
            if let Some(gap) = (lo..=hi).find(|&i| row_nonempty[i] && !rel[i][j]) {
                return Err(Error::Internal(format!("column {j} has a gap at row {gap}")));
            }
        }
        Ok(Staircase { rows, col_nonempty })
    }

    fn row_nonempty(&self, i: usize) -> bool {
        self.rows[i].is_some()
    }

    /// Least admissible head label once the tail label is at least `i`;
    /// `p` when no nonempty row is at least `i`.
    fn lambda(&self, i: usize) -> usize {
        let p = self.rows.len();
        self.rows[i..].iter().flatten().next().map_or(p, |&(lo, _)| lo)
    }

    /// Least admissible tail label once the head label is at least `j`.
    fn mu(&self, j: usize) -> usize {
        let p = self.rows.len();
        self.rows
            .iter()
            .position(|ext| matches!(ext, Some((_, hi)) if *hi >= j))
            .unwrap_or(p)
    }
}

struct Layout {
    n: usize,
    p: usize,
}

impl Layout {
    const SOURCE: usize = 0;
    const SINK: usize = 1;

    fn nodes(&self) -> usize {
        2 + self.n * (self.p - 1)
    }

    /// Node standing for `label(u) >= i`, with `i = 0` the source (always
    /// true) and `i = p` the sink (never true).
    fn node(&self, u: usize, i: usize) -> usize {
        if i == 0 {
            Self::SOURCE
        } else if i >= self.p {
            Self::SINK
        } else {
            2 + u * (self.p - 1) + (i - 1)
        }
    }
}

fn checked_sum<I: IntoIterator<Item = i64>>(it: I, what: &'static str) -> Result<i64> {
    it.into_iter()
        .try_fold(0i64, |a, b| a.checked_add(b))
        .ok_or(Error::Overflow(what))
}

/// Exact optimum through a single minimum s-t cut. The ordering must be a
/// Min-Max ordering of `h`.
pub fn solve_minmax(d: &Digraph, h: &Digraph, ord: &Ordering, costs: &CostMatrix) -> Result<SolveResult> {
    check_instance(d, h, costs)?;
    if let Some(pair) = find_violation(h, ord)? {
        return Err(Error::NotMinMax(pair.to_string()));
    }
    let n = d.vertex_count();
    let p = h.vertex_count();
    let infeasible = SolveResult {
        outcome: Outcome::Infeasible,
        method: Method::MinMax,
    };
    if n == 0 {
        return Ok(SolveResult {
            outcome: Outcome::Optimal(Homomorphism { map: vec![], cost: 0 }),
            method: Method::MinMax,
        });
    }
    if p == 0 {
        return Ok(infeasible);
    }
    let seq = ord.sequence();
    let rel: Vec<Vec<bool>> = (0..p)
        .map(|i| (0..p).map(|j| h.has_arc(seq[i], seq[j])).collect())
        .collect();
    let stairs = Staircase::new(&rel)?;

    // label costs in ordering positions
    let c = |u: usize, l: usize| costs.get(u, seq[l]);

    let mut has_out = vec![false; n];
    let mut has_in = vec![false; n];
    let mut looped = vec![false; n];
    for (u, v) in d.arcs() {
        has_out[u] = true;
        has_in[v] = true;
        if u == v {
            looped[u] = true;
        }
    }
    let allowed: Vec<Vec<bool>> = (0..n)
        .map(|u| {
            (0..p)
                .map(|l| {
                    (!looped[u] || rel[l][l])
                        && (!has_out[u] || stairs.row_nonempty(l))
                        && (!has_in[u] || stairs.col_nonempty[l])
                })
                .collect()
        })
        .collect();
    if allowed.iter().any(|a| !a.iter().any(|&b| b)) {
        return Ok(infeasible);
    }

    let shift: Vec<i64> = (0..n)
        .map(|u| {
            let lo = (0..p).map(|l| c(u, l)).min().unwrap_or(0);
            lo.checked_neg().map(|x| x.max(0)).ok_or(Error::Overflow("shifting costs"))
        })
        .collect::<Result<_>>()?;
    let spans = (0..n)
        .map(|u| {
            let hi = (0..p).map(|l| c(u, l).max(0)).max().unwrap_or(0);
            shift[u].checked_add(hi).ok_or(Error::Overflow("bounding costs"))
        })
        .collect::<Result<Vec<_>>>()?;
    let big = checked_sum(spans, "computing BIG")?
        .checked_add(1)
        .ok_or(Error::Overflow("computing BIG"))?;
    let inf = big
        .checked_mul(n as i64 + 2)
        .ok_or(Error::Overflow("computing the uncuttable capacity"))?;

    let layout = Layout { n, p };
    let mut net = FlowNetwork::new(layout.nodes());
    let mut source_capacity: Vec<i64> = Vec::new();
    let mut add = |net: &mut FlowNetwork, a: usize, b: usize, cap: i64| {
        if a == b || a == Layout::SINK || b == Layout::SOURCE {
            return;
        }
        if a == Layout::SOURCE {
            source_capacity.push(cap);
        }
        net.add_edge(a, b, cap);
    };

    for u in 0..n {
        for (l, &ok) in allowed[u].iter().enumerate() {
            let cap = if ok {
                shift[u]
                    .checked_add(c(u, l))
                    .ok_or(Error::Overflow("shifting costs"))?
            } else {
                big
            };
            add(&mut net, layout.node(u, l), layout.node(u, l + 1), cap);
            if l >= 1 {
                add(&mut net, layout.node(u, l + 1), layout.node(u, l), inf);
            }
        }
    }
    for (u, v) in d.arcs() {
        if u == v {
            continue;
        }
        for i in 0..p {
            let j = stairs.lambda(i);
            if j > 0 {
                add(&mut net, layout.node(u, i), layout.node(v, j), inf);
            }
        }
        for j in 0..p {
            let i = stairs.mu(j);
            if i > 0 {
                add(&mut net, layout.node(v, j), layout.node(u, i), inf);
            }
        }
    }
    checked_sum(source_capacity, "bounding the flow value")?;

    let cut = net.max_flow(Layout::SOURCE, Layout::SINK);
    if cut >= big {
        return Ok(infeasible);
    }
    let side = net.source_side(Layout::SOURCE);
    let mut map = Vec::with_capacity(n);
    for u in 0..n {
        let level = (1..p).take_while(|&i| side[layout.node(u, i)]).count();
        if (level + 1..p).any(|i| side[layout.node(u, i)]) {
            return Err(Error::Internal(format!("threshold chain of vertex {u} is not monotone")));
        }
        map.push(seq[level]);
    }
    let cost = costs.cost_of(&map)?;
    let shifted_total = checked_sum(shift.iter().copied(), "shifting costs")?;
    if cost + shifted_total != cut || !d.arcs().all(|(a, b)| h.has_arc(map[a], map[b])) {
        return Err(Error::Internal(
            "minimum cut does not decode to an optimal homomorphism".into(),
        ));
    }
    Ok(SolveResult {
        outcome: Outcome::Optimal(Homomorphism { map, cost }),
        method: Method::MinMax,
    })
}
