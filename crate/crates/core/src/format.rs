//! Line-oriented text formats for digraphs, bipartite graphs, cost tables and
//! solutions. `#` starts a comment anywhere on a line; blank lines are ignored.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::birep::BipartiteGraph;
use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::solver::{CostMatrix, Outcome, SolveResult};

fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = body.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn at_line<T>(line: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => Error::parse(line, other.to_string()),
    })
}

/// Parses `v <name>` and `a <tail> <head>` lines. Arc endpoints not yet
/// declared are declared on first use.
pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let mut h = Digraph::new();
    for (line, tokens) in lines(text) {
        match tokens.as_slice() {
            ["v", name] => {
                at_line(line, h.add_vertex(name))?;
            }
            ["a", tail, head] => {
                for name in [tail, head] {
                    if h.vertices().get(name).is_none() {
                        at_line(line, h.add_vertex(name))?;
                    }
                }
                at_line(line, h.add_arc_by_name(tail, head))?;
            }
            _ => return Err(Error::parse(line, format!("expected `v <name>` or `a <tail> <head>`, got {:?}", tokens.join(" ")))),
        }
    }
    Ok(h)
}

pub fn write_digraph(h: &Digraph) -> String {
    let mut out = String::new();
    for name in h.names() {
        writeln!(out, "v {name}").unwrap();
    }
    let mut arcs: Vec<(&str, &str)> = h.arcs().map(|(u, v)| (h.name(u), h.name(v))).collect();
    arcs.sort_unstable();
    for (u, v) in arcs {
        writeln!(out, "a {u} {v}").unwrap();
    }
    out
}

/// Parses `p1 <name>`, `p2 <name>` and `e <u> <v>` lines. Edge endpoints
/// must be declared first, since their part is otherwise unknown.
pub fn parse_bipartite(text: &str) -> Result<BipartiteGraph> {
    let mut g = BipartiteGraph::new();
    for (line, tokens) in lines(text) {
        match tokens.as_slice() {
            ["p1", name] => {
                at_line(line, g.add_vertex(name, false))?;
            }
            ["p2", name] => {
                at_line(line, g.add_vertex(name, true))?;
            }
            ["e", a, b] => {
                at_line(line, g.add_edge_by_name(a, b))?;
            }
            _ => return Err(Error::parse(line, format!("expected `p1`, `p2` or `e` line, got {:?}", tokens.join(" ")))),
        }
    }
    Ok(g)
}

pub fn write_bipartite(g: &BipartiteGraph) -> String {
    let mut out = String::new();
    for name in g.part1() {
        writeln!(out, "p1 {name}").unwrap();
    }
    for name in g.part2() {
        writeln!(out, "p2 {name}").unwrap();
    }
    let mut edges: Vec<(&str, &str)> = g.edges().map(|(a, b)| (g.name(a), g.name(b))).collect();
    edges.sort_unstable();
    for (a, b) in edges {
        writeln!(out, "e {a} {b}").unwrap();
    }
    out
}

/// Parses `c <input vertex> <target vertex> <integer>` lines into a table
/// over `d` and `h`; entries not listed are 0.
pub fn parse_costs(text: &str, d: &Digraph, h: &Digraph) -> Result<CostMatrix> {
    let mut costs = CostMatrix::zeros(d.vertex_count(), h.vertex_count());
    let mut seen = HashSet::new();
    for (line, tokens) in lines(text) {
        let ["c", u, i, value] = tokens.as_slice() else {
            return Err(Error::parse(line, format!("expected `c <vertex> <target vertex> <integer>`, got {:?}", tokens.join(" "))));
        };
        let u = at_line(line, d.index_of(u))?;
        let i = at_line(line, h.index_of(i))?;
        let value: i64 = value
            .parse()
            .map_err(|_| Error::parse(line, format!("cost {value:?} is not a 64-bit integer")))?;
        if !seen.insert((u, i)) {
            return Err(Error::parse(
                line,
                format!("duplicate cost for {} -> {}", d.name(u), h.name(i)),
            ));
        }
        costs.set(u, i, value);
    }
    Ok(costs)
}

pub fn write_costs(costs: &CostMatrix, d: &Digraph, h: &Digraph) -> String {
    let mut out = String::new();
    for u in 0..costs.rows() {
        for i in 0..costs.cols() {
            let c = costs.get(u, i);
            if c != 0 {
                writeln!(out, "c {} {} {c}", d.name(u), h.name(i)).unwrap();
            }
        }
    }
    out
}

/// `cost <n>` followed by `map <u> <i>` in input declaration order, or the
/// single line `infeasible`.
pub fn write_solution(d: &Digraph, h: &Digraph, result: &SolveResult) -> String {
    match &result.outcome {
        Outcome::Infeasible => "infeasible\n".to_string(),
        Outcome::Optimal(hom) => {
            let mut out = format!("cost {}\n", hom.cost);
            for (u, &i) in hom.map.iter().enumerate() {
                writeln!(out, "map {} {}", d.name(u), h.name(i)).unwrap();
            }
            out
        }
    }
}
