//! Digraphs with possible loops, the standard constructions on them and the
//! structural predicates the solvers and classifiers rely on.
//!
//! Vertices are addressed by dense indices in declaration order; names are
//! opaque tokens kept alongside for I/O. Every set-valued output is sorted by
//! declaration order so results are reproducible.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

/// Largest vertex count accepted by [`is_isomorphic`].
pub const ISOMORPHISM_GUARD: usize = 10;

pub(crate) fn check_name(name: &str) -> Result<()> {
    if name.is_empty() || name.chars().any(|c| c.is_whitespace() || c == ',') {
        return Err(Error::InvalidName(name.to_string()));
    }
    Ok(())
}

/// Ordered vertex names with a reverse lookup.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VertexSet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, name: &str) -> Result<usize> {
        check_name(name)?;
        if self.index.contains_key(name) {
            return Err(Error::DuplicateVertex(name.to_string()));
        }
        let id = self.names.len();
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), id);
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, id: usize) -> &str {
        &self.names[id]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn get(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn lookup(&self, name: &str) -> Result<usize> {
        self.get(name)
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }
}

/// A digraph with possible loops and no parallel arcs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Digraph {
    vertices: VertexSet,
    arcs: BTreeSet<(usize, usize)>,
}

impl Digraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Digraph on the given vertex names with no arcs.
    pub fn with_vertices<S: AsRef<str>>(names: &[S]) -> Result<Self> {
        let mut g = Self::new();
        for n in names {
            g.add_vertex(n.as_ref())?;
        }
        Ok(g)
    }

    /// Builds a digraph from names and named arcs. Arc endpoints must be declared.
    pub fn from_named_arcs<S: AsRef<str>>(names: &[S], arcs: &[(&str, &str)]) -> Result<Self> {
        let mut g = Self::with_vertices(names)?;
        for (t, h) in arcs {
            g.add_arc_by_name(t, h)?;
        }
        Ok(g)
    }

    /// Vertices named `1..=n`, arcs given as 1-based pairs.
    pub fn numbered(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let mut g = Self::with_vertices(&names)?;
        for &(t, h) in arcs {
            if t == 0 || h == 0 {
                return Err(Error::IndexOutOfRange(0));
            }
            g.add_arc(t - 1, h - 1)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, name: &str) -> Result<usize> {
        self.vertices.insert(name)
    }

    /// Adds an arc; returns false when it was already present.
    pub fn add_arc(&mut self, tail: usize, head: usize) -> Result<bool> {
        let n = self.vertex_count();
        if tail >= n {
            return Err(Error::IndexOutOfRange(tail));
        }
        if head >= n {
            return Err(Error::IndexOutOfRange(head));
        }
        Ok(self.arcs.insert((tail, head)))
    }

    pub fn add_arc_by_name(&mut self, tail: &str, head: &str) -> Result<bool> {
        let t = self.vertices.lookup(tail)?;
        let h = self.vertices.lookup(head)?;
        self.add_arc(t, h)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn name(&self, v: usize) -> &str {
        self.vertices.name(v)
    }

    pub fn names(&self) -> &[String] {
        self.vertices.names()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.vertices.lookup(name)
    }

    /// Arcs in lexicographic order of (tail index, head index).
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn has_arc(&self, tail: usize, head: usize) -> bool {
        self.arcs.contains(&(tail, head))
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.has_arc(v, v)
    }

    pub fn loop_count(&self) -> usize {
        self.arcs.iter().filter(|(t, h)| t == h).count()
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.vertex_count()).all(|v| self.has_loop(v))
    }

    pub fn is_loopless(&self) -> bool {
        self.loop_count() == 0
    }

    /// True when u and v are distinct and joined by an arc in either direction.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        u != v && (self.has_arc(u, v) || self.has_arc(v, u))
    }

    pub fn out_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arcs.range((v, 0)..=(v, usize::MAX)).map(|&(_, h)| h)
    }

    pub fn in_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arcs
            .iter()
            .filter(move |&&(_, h)| h == v)
            .map(|&(t, _)| t)
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_neighbors(v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_neighbors(v).count()
    }

    /// Dense adjacency matrix, `m[t][h]` set iff `t -> h`.
    pub fn adjacency_matrix(&self) -> Vec<Vec<bool>> {
        let n = self.vertex_count();
        let mut m = vec![vec![false; n]; n];
        for (t, h) in self.arcs() {
            m[t][h] = true;
        }
        m
    }

    /// The same digraph with loops removed.
    pub fn loopless_part(&self) -> Digraph {
        Digraph {
            vertices: self.vertices.clone(),
            arcs: self.arcs.iter().copied().filter(|(t, h)| t != h).collect(),
        }
    }
}

/// Graph without orientation; self-loops allowed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct UndirectedGraph {
    vertices: VertexSet,
    /// Stored as (min, max).
    edges: BTreeSet<(usize, usize)>,
}

impl UndirectedGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn name(&self, v: usize) -> &str {
        self.vertices.name(v)
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }
}

/// Partite sets of a multipartite tournament.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartiteStructure {
    /// Each part sorted by declaration order; parts sorted by (size, first member).
    pub parts: Vec<Vec<usize>>,
}

impl PartiteStructure {
    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    pub fn part_of(&self, v: usize) -> Option<usize> {
        self.parts.iter().position(|p| p.contains(&v))
    }
}

pub fn converse(h: &Digraph) -> Digraph {
    Digraph {
        vertices: h.vertices.clone(),
        arcs: h.arcs().map(|(t, hd)| (hd, t)).collect(),
    }
}

pub fn reflexive_closure(h: &Digraph) -> Digraph {
    let mut out = h.clone();
    for v in 0..h.vertex_count() {
        out.arcs.insert((v, v));
    }
    out
}

/// Subdigraph induced by `subset`; vertices keep the order given in `subset`.
pub fn induced(h: &Digraph, subset: &[usize]) -> Result<Digraph> {
    let mut out = Digraph::new();
    let mut local = HashMap::new();
    for &v in subset {
        if v >= h.vertex_count() {
            return Err(Error::IndexOutOfRange(v));
        }
        let id = out.add_vertex(h.name(v))?;
        local.insert(v, id);
    }
    for (t, hd) in h.arcs() {
        if let (Some(&a), Some(&b)) = (local.get(&t), local.get(&hd)) {
            out.arcs.insert((a, b));
        }
    }
    Ok(out)
}

pub fn induced_by_names<S: AsRef<str>>(h: &Digraph, names: &[S]) -> Result<Digraph> {
    let ids = names
        .iter()
        .map(|n| h.index_of(n.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    induced(h, &ids)
}

pub fn underlying_graph(h: &Digraph) -> UndirectedGraph {
    UndirectedGraph {
        vertices: h.vertices.clone(),
        edges: h.arcs().map(|(t, hd)| (t.min(hd), t.max(hd))).collect(),
    }
}

/// Connected components of the underlying graph. Each component is sorted and
/// components are ordered by their smallest member.
pub fn components(h: &Digraph) -> Vec<Vec<usize>> {
    let n = h.vertex_count();
    let mut nbrs = vec![Vec::new(); n];
    for (t, hd) in h.arcs() {
        if t != hd {
            nbrs[t].push(hd);
            nbrs[hd].push(t);
        }
    }
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &nbrs[v] {
                if !seen[w] {
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

/// Acyclic ordering of the loopless part (a loop is not a cycle), or `None`
/// when a directed cycle of length at least two exists. Among the vertices
/// available at each step the earliest declared one is taken.
pub fn acyclic_ordering(h: &Digraph) -> Option<Vec<usize>> {
    let n = h.vertex_count();
    let mut indeg = vec![0usize; n];
    for (t, hd) in h.arcs() {
        if t != hd {
            indeg[hd] += 1;
        }
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for w in h.out_neighbors(v) {
            if w != v {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.insert(w);
                }
            }
        }
    }
    (order.len() == n).then_some(order)
}

pub fn is_acyclic(h: &Digraph) -> bool {
    acyclic_ordering(h).is_some()
}

/// Recovers the partite sets of a multipartite tournament (loops ignored).
pub fn partite_structure(h: &Digraph) -> Result<PartiteStructure> {
    let n = h.vertex_count();
    for u in 0..n {
        for v in u + 1..n {
            if h.has_arc(u, v) && h.has_arc(v, u) {
                return Err(Error::NotMultipartiteTournament(format!(
                    "{} and {} are joined by arcs in both directions",
                    h.name(u),
                    h.name(v)
                )));
            }
        }
    }
    let mut part_of: Vec<Option<usize>> = vec![None; n];
    let mut parts: Vec<Vec<usize>> = Vec::new();
    for v in 0..n {
        if part_of[v].is_some() {
            continue;
        }
        let class: Vec<usize> = (v..n).filter(|&w| w == v || !h.adjacent(v, w)).collect();
        for &w in &class {
            if let Some(p) = part_of[w] {
                return Err(Error::NotMultipartiteTournament(format!(
                    "nonadjacency is not transitive ({} is nonadjacent to {} but lies in the part of {})",
                    h.name(w),
                    h.name(v),
                    h.name(parts[p][0])
                )));
            }
        }
        for (i, &a) in class.iter().enumerate() {
            for &b in &class[i + 1..] {
                if h.adjacent(a, b) {
                    return Err(Error::NotMultipartiteTournament(format!(
                        "nonadjacency is not transitive ({} and {} are both nonadjacent to {} but adjacent to each other)",
                        h.name(a),
                        h.name(b),
                        h.name(v)
                    )));
                }
            }
        }
        for &w in &class {
            part_of[w] = Some(parts.len());
        }
        parts.push(class);
    }
    parts.sort_by_key(|p| (p.len(), p[0]));
    Ok(PartiteStructure { parts })
}

pub fn make_tt(p: usize) -> Result<Digraph> {
    if p < 1 {
        return Err(Error::InvalidParameter(
            "transitive tournament needs p >= 1".into(),
        ));
    }
    let arcs: Vec<(usize, usize)> = (1..=p)
        .flat_map(|i| (i + 1..=p).map(move |j| (i, j)))
        .collect();
    Digraph::numbered(p, &arcs)
}

/// Transitive tournament without the arc from its source to its sink.
pub fn make_tt_minus(p: usize) -> Result<Digraph> {
    if p < 2 {
        return Err(Error::InvalidParameter(
            "transitive tournament minus an arc needs p >= 2".into(),
        ));
    }
    let arcs: Vec<(usize, usize)> = (1..=p)
        .flat_map(|i| (i + 1..=p).map(move |j| (i, j)))
        .filter(|&a| a != (1, p))
        .collect();
    Digraph::numbered(p, &arcs)
}

pub fn make_cycle(k: usize) -> Result<Digraph> {
    if k < 2 {
        return Err(Error::InvalidParameter("directed cycle needs k >= 2".into()));
    }
    let arcs: Vec<(usize, usize)> = (1..=k).map(|i| (i, i % k + 1)).collect();
    Digraph::numbered(k, &arcs)
}

/// Complete bipartite digraph with all arcs from the n-side (vertices 1..n)
/// to the m-side (vertices n+1..n+m).
pub fn make_oriented_kb(n: usize, m: usize) -> Result<Digraph> {
    if n < 1 || m < 1 {
        return Err(Error::InvalidParameter(
            "oriented complete bipartite digraph needs n, m >= 1".into(),
        ));
    }
    let arcs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (n + 1..=n + m).map(move |j| (i, j)))
        .collect();
    Digraph::numbered(n + m, &arcs)
}

/// Records which base vertex each vertex of an extension replaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub base_names: Vec<String>,
    /// `origin[w]` is the base vertex whose independent set contains `w`.
    pub origin: Vec<usize>,
}

impl Decomposition {
    pub fn base_count(&self) -> usize {
        self.base_names.len()
    }

    /// Members of each independent set, in order.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.base_count()];
        for (w, &b) in self.origin.iter().enumerate() {
            out[b].push(w);
        }
        out
    }
}

/// Replaces every vertex `u` by `sizes[u]` independent copies, with all arcs
/// between the copies of `u` and `v` whenever `u -> v`. Copies are named
/// `u.1, u.2, ...`; a vertex of size one keeps its name.
pub fn extend(h: &Digraph, sizes: &[usize]) -> Result<(Digraph, Decomposition)> {
    if sizes.len() != h.vertex_count() {
        return Err(Error::InvalidParameter(format!(
            "expected {} sizes, got {}",
            h.vertex_count(),
            sizes.len()
        )));
    }
    if let Some(v) = (0..h.vertex_count()).find(|&v| h.has_loop(v)) {
        return Err(Error::LoopInExtension(h.name(v).to_string()));
    }
    let mut out = Digraph::new();
    let mut origin = Vec::new();
    let mut classes = Vec::with_capacity(sizes.len());
    for (u, &s) in sizes.iter().enumerate() {
        if s == 0 {
            return Err(Error::InvalidParameter(format!(
                "size of {} must be positive",
                h.name(u)
            )));
        }
        let mut class = Vec::with_capacity(s);
        for k in 1..=s {
            let name = if s == 1 {
                h.name(u).to_string()
            } else {
                format!("{}.{}", h.name(u), k)
            };
            class.push(out.add_vertex(&name)?);
            origin.push(u);
        }
        classes.push(class);
    }
    for (t, hd) in h.arcs() {
        for &a in &classes[t] {
            for &b in &classes[hd] {
                out.arcs.insert((a, b));
            }
        }
    }
    let decomposition = Decomposition {
        base_names: h.names().to_vec(),
        origin,
    };
    Ok((out, decomposition))
}

/// Finds the lexicographically first bijection `phi` (indexed by vertices of
/// `a`) such that `x -> y` in `a` iff `phi[x] -> phi[y]` in `b`, loops included.
pub fn is_isomorphic(a: &Digraph, b: &Digraph) -> Result<Option<Vec<usize>>> {
    let n = a.vertex_count();
    if n > ISOMORPHISM_GUARD || b.vertex_count() > ISOMORPHISM_GUARD {
        return Err(Error::GuardExceeded {
            what: "isomorphism test",
            size: n.max(b.vertex_count()),
            guard: ISOMORPHISM_GUARD,
        });
    }
    if n != b.vertex_count() || a.arc_count() != b.arc_count() {
        return Ok(None);
    }
    let sig = |g: &Digraph, v: usize| {
        let loopy = g.has_loop(v) as usize;
        (g.out_degree(v) - loopy, g.in_degree(v) - loopy, loopy)
    };
    let sig_a: Vec<_> = (0..n).map(|v| sig(a, v)).collect();
    let sig_b: Vec<_> = (0..n).map(|v| sig(b, v)).collect();
    let mut sorted_a = sig_a.clone();
    let mut sorted_b = sig_b.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return Ok(None);
    }
    let ma = a.adjacency_matrix();
    let mb = b.adjacency_matrix();
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn extend_map(
        x: usize,
        phi: &mut [usize],
        used: &mut [bool],
        sig_a: &[(usize, usize, usize)],
        sig_b: &[(usize, usize, usize)],
        ma: &[Vec<bool>],
        mb: &[Vec<bool>],
    ) -> bool {
        let n = phi.len();
        if x == n {
            return true;
        }
        for y in 0..n {
            if used[y] || sig_a[x] != sig_b[y] || ma[x][x] != mb[y][y] {
                continue;
            }
            let consistent = (0..x).all(|z| ma[x][z] == mb[y][phi[z]] && ma[z][x] == mb[phi[z]][y]);
            if !consistent {
                continue;
            }
            phi[x] = y;
            used[y] = true;
            if extend_map(x + 1, phi, used, sig_a, sig_b, ma, mb) {
                return true;
            }
            used[y] = false;
        }
        false
    }

    Ok(extend_map(0, &mut phi, &mut used, &sig_a, &sig_b, &ma, &mb).then_some(phi))
}

/// When `h` is a single loopless directed cycle of length at least two,
/// returns its vertices in cycle order starting from vertex 0.
pub fn as_directed_cycle(h: &Digraph) -> Option<Vec<usize>> {
    let n = h.vertex_count();
    if n < 2 || h.arc_count() != n || !h.is_loopless() {
        return None;
    }
    let mut succ = vec![usize::MAX; n];
    for (t, hd) in h.arcs() {
        if succ[t] != usize::MAX {
            return None;
        }
        succ[t] = hd;
    }
    let mut order = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut v = 0;
    while !seen[v] {
        seen[v] = true;
        order.push(v);
        v = succ[v];
        if v == usize::MAX {
            return None;
        }
    }
    (v == 0 && order.len() == n).then_some(order)
}
