//! Bipartite representations of digraphs and proper interval bigraph checks.
//!
//! `bg(H)` has two copies `v_1` (first part) and `v_2` (second part) of every
//! vertex, with `u_1 w_2` an edge iff `u -> w`. A loop at `x` gives `x_1 x_2`.
//!
//! A bipartite graph is a proper interval bigraph iff it has no induced cycle of
//! length at least six and no induced bipartite claw, net or tent. The three
//! small patterns use vertices `x1..x4, y1..y3` (pattern indices 0..=6):
//!
//! * claw: `x4-y1, y1-x1, x4-y2, y2-x2, x4-y3, y3-x3`
//! * net: 4-cycle `y1-x3-y2-x4-y1` with pendants `x1-y1, x2-y2, y3-x4`
//! * tent: 6-cycle `x1-y2-x4-y1-x2-y3-x1`, chord `x1-y1`, pendant `x3-y1`

use std::collections::{BTreeSet, HashMap};

use crate::digraph::{check_name, Digraph};
use crate::error::{Error, Result};
use crate::solver::{CostMatrix, Homomorphism};

pub const FORBIDDEN_SEARCH_GUARD: usize = 16;

const X1: usize = 0;
const X2: usize = 1;
const X3: usize = 2;
const X4: usize = 3;
const Y1: usize = 4;
const Y2: usize = 5;
const Y3: usize = 6;

pub const CLAW_EDGES: [(usize, usize); 6] = [(X4, Y1), (Y1, X1), (X4, Y2), (Y2, X2), (X4, Y3), (Y3, X3)];
pub const NET_EDGES: [(usize, usize); 7] = [
    (Y1, X3),
    (X3, Y2),
    (Y2, X4),
    (X4, Y1),
    (X1, Y1),
    (X2, Y2),
    (Y3, X4),
];
pub const TENT_EDGES: [(usize, usize); 8] = [
    (X1, Y2),
    (Y2, X4),
    (X4, Y1),
    (Y1, X2),
    (X2, Y3),
    (Y3, X1),
    (X1, Y1),
    (X3, Y1),
];

/// Bipartite graph with ordered parts. Vertices are addressed globally:
/// `0..part1.len()` is the first part, the rest the second.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BipartiteGraph {
    part1: Vec<String>,
    part2: Vec<String>,
    index: HashMap<String, usize>,
    /// (first-part local index, second-part local index)
    edges: BTreeSet<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, name: &str, second: bool) -> Result<usize> {
        check_name(name)?;
        if self.index.contains_key(name) {
            return Err(Error::DuplicateVertex(name.to_string()));
        }
        if second {
            self.part2.push(name.to_string());
        } else {
            // first-part ids shift every second-part id; rebuild the index
            self.part1.push(name.to_string());
        }
        self.reindex();
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::Internal("vertex vanished after insert".into()))
    }

    fn reindex(&mut self) {
        self.index.clear();
        for (i, n) in self.part1.iter().chain(self.part2.iter()).enumerate() {
            self.index.insert(n.clone(), i);
        }
    }

    /// Adds an edge between two vertices in different parts (either order).
    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<bool> {
        let n1 = self.part1.len();
        let n = self.vertex_count();
        if a >= n {
            return Err(Error::IndexOutOfRange(a));
        }
        if b >= n {
            return Err(Error::IndexOutOfRange(b));
        }
        let (p, q) = match (a < n1, b < n1) {
            (true, false) => (a, b - n1),
            (false, true) => (b, a - n1),
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "edge {}-{} does not cross the parts",
                    self.name(a),
                    self.name(b)
                )))
            }
        };
        Ok(self.edges.insert((p, q)))
    }

    pub fn add_edge_by_name(&mut self, a: &str, b: &str) -> Result<bool> {
        let a = self.lookup(a)?;
        let b = self.lookup(b)?;
        self.add_edge(a, b)
    }

    pub fn lookup(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn part1(&self) -> &[String] {
        &self.part1
    }

    pub fn part2(&self) -> &[String] {
        &self.part2
    }

    pub fn part1_len(&self) -> usize {
        self.part1.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.part1.len() + self.part2.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn in_first_part(&self, v: usize) -> bool {
        v < self.part1.len()
    }

    pub fn name(&self, v: usize) -> &str {
        let n1 = self.part1.len();
        if v < n1 {
            &self.part1[v]
        } else {
            &self.part2[v - n1]
        }
    }

    /// Edges as global (first-part id, second-part id) pairs.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n1 = self.part1.len();
        self.edges.iter().map(move |&(p, q)| (p, q + n1))
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let n1 = self.part1.len();
        match (a < n1, b < n1) {
            (true, false) => self.edges.contains(&(a, b - n1)),
            (false, true) => self.edges.contains(&(b, a - n1)),
            _ => false,
        }
    }

    pub fn adjacency_matrix(&self) -> Vec<Vec<bool>> {
        let n = self.vertex_count();
        let mut m = vec![vec![false; n]; n];
        for (a, b) in self.edges() {
            m[a][b] = true;
            m[b][a] = true;
        }
        m
    }

    /// Same graph with the parts exchanged.
    pub fn swapped(&self) -> BipartiteGraph {
        let mut g = BipartiteGraph {
            part1: self.part2.clone(),
            part2: self.part1.clone(),
            index: HashMap::new(),
            edges: self.edges.iter().map(|&(p, q)| (q, p)).collect(),
        };
        g.reindex();
        g
    }

    /// Induced subgraph on `subset` (global ids), keeping part membership and
    /// the relative order of vertices within each part.
    pub fn induced(&self, subset: &[usize]) -> Result<BipartiteGraph> {
        let mut sorted = subset.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut g = BipartiteGraph::new();
        for &v in &sorted {
            if v >= self.vertex_count() {
                return Err(Error::IndexOutOfRange(v));
            }
            g.add_vertex(self.name(v), !self.in_first_part(v))?;
        }
        for (a, b) in self.edges() {
            if sorted.binary_search(&a).is_ok() && sorted.binary_search(&b).is_ok() {
                g.add_edge_by_name(self.name(a), self.name(b))?;
            }
        }
        Ok(g)
    }

    /// Connected components as sorted lists of global ids, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.adjacency_matrix();
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for w in 0..n {
                    if adj[v][w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

pub fn first_copy_name(name: &str) -> String {
    format!("{name}_1")
}

pub fn second_copy_name(name: &str) -> String {
    format!("{name}_2")
}

/// Bipartite representation. Vertex `v` of `h` becomes global id `v` (first
/// copy) and `n + v` (second copy).
pub fn bg(h: &Digraph) -> BipartiteGraph {
    let n = h.vertex_count();
    let mut g = BipartiteGraph {
        part1: h.names().iter().map(|s| first_copy_name(s)).collect(),
        part2: h.names().iter().map(|s| second_copy_name(s)).collect(),
        index: HashMap::new(),
        edges: h.arcs().collect(),
    };
    g.reindex();
    debug_assert_eq!(g.vertex_count(), 2 * n);
    g
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ForbiddenKind {
    /// Induced cycle; the payload is its length (even, at least six).
    LongInducedCycle(usize),
    BipartiteClaw,
    BipartiteNet,
    BipartiteTent,
}

impl ForbiddenKind {
    pub fn tag(&self) -> &'static str {
        match self {
            ForbiddenKind::LongInducedCycle(_) => "long-induced-cycle",
            ForbiddenKind::BipartiteClaw => "bipartite-claw",
            ForbiddenKind::BipartiteNet => "bipartite-net",
            ForbiddenKind::BipartiteTent => "bipartite-tent",
        }
    }

    pub fn pattern_size(&self) -> usize {
        match self {
            ForbiddenKind::LongInducedCycle(len) => *len,
            _ => 7,
        }
    }

    /// Pattern edges over pattern indices `0..pattern_size()`.
    pub fn pattern_edges(&self) -> Vec<(usize, usize)> {
        match self {
            ForbiddenKind::LongInducedCycle(len) => (0..*len).map(|i| (i, (i + 1) % len)).collect(),
            ForbiddenKind::BipartiteClaw => CLAW_EDGES.to_vec(),
            ForbiddenKind::BipartiteNet => NET_EDGES.to_vec(),
            ForbiddenKind::BipartiteTent => TENT_EDGES.to_vec(),
        }
    }

    fn pattern_matrix(&self) -> Vec<Vec<bool>> {
        let k = self.pattern_size();
        let mut m = vec![vec![false; k]; k];
        for (a, b) in self.pattern_edges() {
            m[a][b] = true;
            m[b][a] = true;
        }
        m
    }
}

/// An induced copy of a forbidden pattern: `embedding[i]` is the host vertex
/// playing pattern vertex `i` (for cycles, the cycle in traversal order).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForbiddenStructure {
    pub kind: ForbiddenKind,
    pub embedding: Vec<usize>,
}

impl ForbiddenStructure {
    /// Re-checks injectivity and induced-subgraph equality inside `g`.
    pub fn validates_in(&self, g: &BipartiteGraph) -> bool {
        let k = self.kind.pattern_size();
        if self.embedding.len() != k {
            return false;
        }
        if let ForbiddenKind::LongInducedCycle(len) = self.kind {
            if len < 6 || len % 2 != 0 {
                return false;
            }
        }
        let n = g.vertex_count();
        let mut seen = BTreeSet::new();
        if !self.embedding.iter().all(|&v| v < n && seen.insert(v)) {
            return false;
        }
        let pm = self.kind.pattern_matrix();
        (0..k).all(|i| {
            (i + 1..k).all(|j| pm[i][j] == g.has_edge(self.embedding[i], self.embedding[j]))
        })
    }

    pub fn vertex_names(&self, g: &BipartiteGraph) -> Vec<String> {
        self.embedding.iter().map(|&v| g.name(v).to_string()).collect()
    }
}

fn check_guard(g: &BipartiteGraph, guard: usize) -> Result<()> {
    if g.vertex_count() > guard {
        return Err(Error::GuardExceeded {
            what: "forbidden structure search",
            size: g.vertex_count(),
            guard,
        });
    }
    Ok(())
}

/// First induced cycle of exactly `len` vertices, as the lexicographically
/// smallest vertex sequence (starting at its minimum vertex).
fn find_induced_cycle(adj: &[Vec<bool>], len: usize) -> Option<Vec<usize>> {
    fn grow(adj: &[Vec<bool>], len: usize, path: &mut Vec<usize>, on_path: &mut [bool]) -> bool {
        let n = adj.len();
        let last = *path.last().expect("path is never empty");
        let start = path[0];
        let k = path.len();
        for w in start + 1..n {
            if on_path[w] || !adj[last][w] {
                continue;
            }
            let closing = k == len - 1;
            // w must see only its predecessor, plus the start when it closes the cycle
            let chordless = path[..k - 1]
                .iter()
                .enumerate()
                .all(|(i, &p)| adj[w][p] == (closing && i == 0));
            if !chordless {
                continue;
            }
            if closing {
                if path[1] < w {
                    path.push(w);
                    return true;
                }
                continue;
            }
            path.push(w);
            on_path[w] = true;
            if grow(adj, len, path, on_path) {
                return true;
            }
            on_path[w] = false;
            path.pop();
        }
        false
    }

    let n = adj.len();
    if len > n {
        return None;
    }
    let mut on_path = vec![false; n];
    for s in 0..n {
        let mut path = vec![s];
        on_path[s] = true;
        if grow(adj, len, &mut path, &mut on_path) {
            return Some(path);
        }
        on_path[s] = false;
    }
    None
}

/// Lexicographically first induced embedding of a pattern graph.
fn find_induced_pattern(adj: &[Vec<bool>], pattern: &[Vec<bool>]) -> Option<Vec<usize>> {
    fn place(
        i: usize,
        adj: &[Vec<bool>],
        pattern: &[Vec<bool>],
        map: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        if i == pattern.len() {
            return true;
        }
        for v in 0..adj.len() {
            if used[v] {
                continue;
            }
            if !(0..i).all(|j| adj[v][map[j]] == pattern[i][j]) {
                continue;
            }
            map.push(v);
            used[v] = true;
            if place(i + 1, adj, pattern, map, used) {
                return true;
            }
            used[v] = false;
            map.pop();
        }
        false
    }

    let mut map = Vec::with_capacity(pattern.len());
    let mut used = vec![false; adj.len()];
    place(0, adj, pattern, &mut map, &mut used).then_some(map)
}

fn shortest_long_cycle(adj: &[Vec<bool>]) -> Option<ForbiddenStructure> {
    (6..=adj.len()).step_by(2).find_map(|len| {
        find_induced_cycle(adj, len).map(|cycle| ForbiddenStructure {
            kind: ForbiddenKind::LongInducedCycle(len),
            embedding: cycle,
        })
    })
}

fn pattern(adj: &[Vec<bool>], kind: ForbiddenKind) -> Option<ForbiddenStructure> {
    find_induced_pattern(adj, &kind.pattern_matrix()).map(|embedding| ForbiddenStructure { kind, embedding })
}

fn search(adj: &[Vec<bool>]) -> Option<ForbiddenStructure> {
    shortest_long_cycle(adj).or_else(|| {
        [
            ForbiddenKind::BipartiteClaw,
            ForbiddenKind::BipartiteNet,
            ForbiddenKind::BipartiteTent,
        ]
        .into_iter()
        .find_map(|kind| pattern(adj, kind))
    })
}

/// Shortest induced cycle on at least six vertices, lexicographically first.
pub fn find_long_induced_cycle(g: &BipartiteGraph, guard: usize) -> Result<Option<ForbiddenStructure>> {
    check_guard(g, guard)?;
    Ok(shortest_long_cycle(&g.adjacency_matrix()))
}

/// Lexicographically first induced copy of the claw, net or tent.
pub fn find_pattern(g: &BipartiteGraph, kind: ForbiddenKind, guard: usize) -> Result<Option<ForbiddenStructure>> {
    if matches!(kind, ForbiddenKind::LongInducedCycle(_)) {
        return Err(Error::InvalidParameter("use find_long_induced_cycle for cycles".into()));
    }
    check_guard(g, guard)?;
    Ok(pattern(&g.adjacency_matrix(), kind))
}

/// Searches for an induced forbidden structure: long cycles (shortest first),
/// then claw, net and tent.
pub fn find_forbidden(g: &BipartiteGraph, guard: usize) -> Result<Option<ForbiddenStructure>> {
    check_guard(g, guard)?;
    Ok(search(&g.adjacency_matrix()))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PibCheck {
    ProperIntervalBigraph,
    Forbidden(ForbiddenStructure),
}

impl PibCheck {
    pub fn is_pib(&self) -> bool {
        matches!(self, PibCheck::ProperIntervalBigraph)
    }
}

/// Proper interval bigraph test, component by component. The certificate on
/// failure uses global ids of `g`.
pub fn is_proper_interval_bigraph(g: &BipartiteGraph, guard: usize) -> Result<PibCheck> {
    check_guard(g, guard)?;
    let adj = g.adjacency_matrix();
    for comp in g.components() {
        let local: Vec<Vec<bool>> = comp
            .iter()
            .map(|&a| comp.iter().map(|&b| adj[a][b]).collect())
            .collect();
        if let Some(mut s) = search(&local) {
            for v in s.embedding.iter_mut() {
                *v = comp[*v];
            }
            return Ok(PibCheck::Forbidden(s));
        }
    }
    Ok(PibCheck::ProperIntervalBigraph)
}

/// A part-respecting map from an input bipartite graph into `bg(h)`:
/// `map[v]` is a global id of `bg(h)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteHomomorphism {
    pub map: Vec<usize>,
    pub cost: i64,
}

/// True when `map` sends first part to first part, second to second, and
/// every edge onto an edge.
pub fn is_part_respecting_homomorphism(g: &BipartiteGraph, target: &BipartiteGraph, map: &[usize]) -> bool {
    map.len() == g.vertex_count()
        && map.iter().all(|&x| x < target.vertex_count())
        && (0..g.vertex_count()).all(|v| g.in_first_part(v) == target.in_first_part(map[v]))
        && g.edges().all(|(a, b)| target.has_edge(map[a], map[b]))
}

pub fn bipartite_cost(costs: &CostMatrix, map: &[usize]) -> i64 {
    map.iter().enumerate().map(|(v, &x)| costs.get(v, x)).sum()
}

/// Orients every edge of `g` from the first part to the second and moves the
/// costs: assigning `x` to a first-part vertex costs what `x_1` cost, and to a
/// second-part vertex what `x_2` cost. `costs` is indexed by (global id of
/// `g`, global id of `bg(h)`); the returned digraph uses the same vertex order.
pub fn digraph_instance_from_bipartite(
    g: &BipartiteGraph,
    h: &Digraph,
    costs: &CostMatrix,
) -> Result<(Digraph, CostMatrix)> {
    let p = h.vertex_count();
    costs.check_shape(g.vertex_count(), 2 * p)?;
    let mut d = Digraph::new();
    for v in 0..g.vertex_count() {
        d.add_vertex(g.name(v))?;
    }
    for (a, b) in g.edges() {
        d.add_arc(a, b)?;
    }
    let moved = CostMatrix::from_fn(g.vertex_count(), p, |v, x| {
        if g.in_first_part(v) {
            costs.get(v, x)
        } else {
            costs.get(v, p + x)
        }
    });
    Ok((d, moved))
}

/// Lifts a homomorphism of the transformed digraph instance back to a
/// part-respecting homomorphism of `g` into `bg(h)` with the same cost.
pub fn lift_solution(
    g: &BipartiteGraph,
    h: &Digraph,
    costs: &CostMatrix,
    f: &Homomorphism,
) -> Result<BipartiteHomomorphism> {
    let p = h.vertex_count();
    costs.check_shape(g.vertex_count(), 2 * p)?;
    if f.map.len() != g.vertex_count() || f.map.iter().any(|&x| x >= p) {
        return Err(Error::NotHomomorphism("map is not total on the input".into()));
    }
    for (a, b) in g.edges() {
        if !h.has_arc(f.map[a], f.map[b]) {
            return Err(Error::NotHomomorphism(format!(
                "arc {}->{} maps to non-arc {}->{}",
                g.name(a),
                g.name(b),
                h.name(f.map[a]),
                h.name(f.map[b])
            )));
        }
    }
    let map: Vec<usize> = (0..g.vertex_count())
        .map(|v| if g.in_first_part(v) { f.map[v] } else { p + f.map[v] })
        .collect();
    let cost = bipartite_cost(costs, &map);
    Ok(BipartiteHomomorphism { map, cost })
}

/// Inverse of [`lift_solution`]: forgets which copy each image came from.
pub fn project_solution(
    g: &BipartiteGraph,
    h: &Digraph,
    costs: &CostMatrix,
    f: &BipartiteHomomorphism,
) -> Result<Homomorphism> {
    let p = h.vertex_count();
    costs.check_shape(g.vertex_count(), 2 * p)?;
    let target = bg(h);
    if !is_part_respecting_homomorphism(g, &target, &f.map) {
        return Err(Error::NotHomomorphism(
            "map does not respect the parts or loses an edge".into(),
        ));
    }
    let map: Vec<usize> = f.map.iter().map(|&x| x % p).collect();
    let cost = bipartite_cost(costs, &f.map);
    Ok(Homomorphism { map, cost })
}
