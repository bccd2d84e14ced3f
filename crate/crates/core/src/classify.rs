//! Complexity classification of target digraphs.
//!
//! Verdicts for the named families come from their known characterizations
//! (family membership, tournament acyclicity, the loop table of the
//! four-vertex digraph `TT_4 - 13`). Certificates are extracted separately: a
//! Min-Max ordering on the polynomial side and a [`Witness`] on the hard side.
//! A witness is either an induced directed cycle carrying a loop, or an
//! induced subdigraph on at most four vertices whose bipartite representation
//! contains a forbidden structure for proper interval bigraphs.

use std::fmt;

use crate::birep::{bg, find_long_induced_cycle, find_pattern, ForbiddenKind, ForbiddenStructure, FORBIDDEN_SEARCH_GUARD};
use crate::digraph::{acyclic_ordering, induced, is_isomorphic, partite_structure, reflexive_closure, Digraph};
use crate::error::{Error, Result};
use crate::minmax::{canonical_ordering, find_minmax, verify_minmax, Family, Ordering};

/// Induced subdigraphs searched for witnesses have at most this many vertices.
pub const WITNESS_SUBSET_LIMIT: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// Vertices of an induced directed cycle in cycle order, and one of them
    /// carrying a loop.
    ReflexiveCycle { cycle: Vec<usize>, looped: usize },
    /// `subset` induces a subdigraph whose bipartite representation contains
    /// `structure` (ids refer to `bg(induced(h, subset))`).
    BgForbidden {
        subset: Vec<usize>,
        structure: ForbiddenStructure,
    },
}

impl Witness {
    pub fn kind_tag(&self) -> &'static str {
        match self {
            Witness::ReflexiveCycle { .. } => "reflexive-cycle",
            Witness::BgForbidden { structure, .. } => structure.kind.tag(),
        }
    }

    /// Re-checks the witness against `h` from scratch.
    pub fn validates_in(&self, h: &Digraph) -> bool {
        match self {
            Witness::ReflexiveCycle { cycle, looped } => is_induced_cycle(h, cycle) && cycle.contains(looped) && h.has_loop(*looped),
            Witness::BgForbidden { subset, structure } => {
                let n = h.vertex_count();
                if subset.is_empty() || subset.len() > WITNESS_SUBSET_LIMIT || subset.iter().any(|&v| v >= n) {
                    return false;
                }
                let Ok(sub) = induced(h, subset) else {
                    return false;
                };
                let g = bg(&sub);
                if !structure.validates_in(&g) {
                    return false;
                }
                g.components()
                    .iter()
                    .any(|c| structure.embedding.iter().all(|v| c.binary_search(v).is_ok()))
            }
        }
    }

    /// Certificate line body: kind followed by vertex names.
    pub fn describe(&self, h: &Digraph) -> String {
        match self {
            Witness::ReflexiveCycle { cycle, .. } => {
                let names: Vec<&str> = cycle.iter().map(|&v| h.name(v)).collect();
                format!("{} {}", self.kind_tag(), names.join(" "))
            }
            Witness::BgForbidden { subset, structure } => {
                let g = induced(h, subset).map(|s| bg(&s)).unwrap_or_default();
                format!("{} {}", self.kind_tag(), structure.vertex_names(&g).join(" "))
            }
        }
    }
}

fn is_induced_cycle(h: &Digraph, cycle: &[usize]) -> bool {
    let len = cycle.len();
    let n = h.vertex_count();
    if len < 3 || cycle.iter().any(|&v| v >= n) {
        return false;
    }
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != len {
        return false;
    }
    (0..len).all(|i| {
        (0..len).all(|j| i == j || h.has_arc(cycle[i], cycle[j]) == (j == (i + 1) % len))
    })
}

fn find_reflexive_cycle(h: &Digraph, len: usize) -> Option<Witness> {
    fn grow(h: &Digraph, len: usize, path: &mut Vec<usize>) -> bool {
        let n = h.vertex_count();
        let start = path[0];
        let last = *path.last().expect("nonempty path");
        if path.len() == len {
            return h.has_arc(last, start) && is_induced_cycle(h, path) && path.iter().any(|&v| h.has_loop(v));
        }
        for w in start + 1..n {
            if path.contains(&w) || !h.has_arc(last, w) {
                continue;
            }
            path.push(w);
            if grow(h, len, path) {
                return true;
            }
            path.pop();
        }
        false
    }

    for s in 0..h.vertex_count() {
        let mut path = vec![s];
        if grow(h, len, &mut path) {
            let looped = *path.iter().find(|&&v| h.has_loop(v)).expect("checked above");
            return Some(Witness::ReflexiveCycle { cycle: path, looped });
        }
    }
    None
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            if n - v < k - cur.len() {
                break;
            }
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Pattern order inside one bipartite representation, after long cycles.
pub const WITNESS_PATTERN_ORDER: [ForbiddenKind; 3] =
    [ForbiddenKind::BipartiteClaw, ForbiddenKind::BipartiteTent, ForbiddenKind::BipartiteNet];

/// Deterministic witness search: induced directed cycles of length 3 and 4
/// carrying a loop first, then every vertex subset of size 3 and 4 (in
/// lexicographic order) whose bipartite representation contains a long
/// induced cycle or one of [`WITNESS_PATTERN_ORDER`].
pub fn find_witness(h: &Digraph) -> Option<Witness> {
    let n = h.vertex_count();
    let top = n.min(WITNESS_SUBSET_LIMIT);
    for len in 3..=top {
        if let Some(w) = find_reflexive_cycle(h, len) {
            return Some(w);
        }
    }
    for size in 3..=top {
        for subset in combinations(n, size) {
            let sub = induced(h, &subset).expect("subset of valid ids");
            let g = bg(&sub);
            let found = find_long_induced_cycle(&g, FORBIDDEN_SEARCH_GUARD).ok().flatten().or_else(|| {
                WITNESS_PATTERN_ORDER
                    .into_iter()
                    .find_map(|kind| find_pattern(&g, kind, FORBIDDEN_SEARCH_GUARD).ok().flatten())
            });
            if let Some(structure) = found {
                let w = Witness::BgForbidden { subset, structure };
                if w.validates_in(h) {
                    return Some(w);
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Poly,
    NpHard,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Poly => "poly",
            Verdict::NpHard => "np-hard",
            Verdict::Unknown => "unknown",
        })
    }
}

/// Which characterization or sufficient condition produced a verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    /// Reflexive multipartite tournaments: four polynomial families.
    ReflexiveMptDichotomy,
    /// Tournaments with possible loops: acyclic or the loopless 3-cycle.
    TournamentDichotomy,
    /// The loop table of `TT_4` without the arc `1 -> 3`.
    Tt4Minus13Table,
    /// An induced directed cycle with a loop.
    ReflexiveCycle,
    /// A Min-Max ordering exists.
    MinMax,
    /// A bipartite representation with a forbidden structure.
    BgForbidden,
    /// No sufficient condition applied.
    Inconclusive,
}

impl Rule {
    pub fn tag(&self) -> &'static str {
        match self {
            Rule::ReflexiveMptDichotomy => "thm4.1",
            Rule::TournamentDichotomy => "thm4.3",
            Rule::Tt4Minus13Table => "thm5.1",
            Rule::ReflexiveCycle => "lemma4.2",
            Rule::MinMax => "minmax",
            Rule::BgForbidden => "bg-forbidden",
            Rule::Inconclusive => "none",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Ordering(Ordering),
    Witness(Witness),
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub verdict: Verdict,
    pub certificate: Certificate,
    pub rule: Rule,
    pub notes: Vec<String>,
}

impl Classification {
    fn new(verdict: Verdict, rule: Rule, certificate: Certificate) -> Self {
        Classification {
            verdict,
            certificate,
            rule,
            notes: Vec::new(),
        }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.certificate {
            Certificate::Witness(w) => Some(w),
            _ => None,
        }
    }

    pub fn ordering(&self) -> Option<&Ordering> {
        match &self.certificate {
            Certificate::Ordering(o) => Some(o),
            _ => None,
        }
    }

    /// True when the certificate (if any) checks out and matches the verdict.
    pub fn certificate_is_sound(&self, h: &Digraph) -> bool {
        match (&self.certificate, self.verdict) {
            (Certificate::None, _) => true,
            (Certificate::Ordering(o), Verdict::Poly) => verify_minmax(h, o).unwrap_or(false),
            (Certificate::Witness(w), Verdict::NpHard) => w.validates_in(h),
            _ => false,
        }
    }

    /// Line-oriented report: verdict, rule, certificate, notes.
    pub fn report(&self, h: &Digraph) -> Vec<String> {
        let mut lines = vec![format!("verdict {}", self.verdict), format!("rule {}", self.rule.tag())];
        match &self.certificate {
            Certificate::Ordering(o) => lines.push(format!("ordering {}", o.display(h))),
            Certificate::Witness(w) => lines.push(format!("witness {}", w.describe(h))),
            Certificate::None => {}
        }
        lines.extend(self.notes.iter().map(|n| format!("note {n}")));
        lines
    }
}

fn hardness_certificate(h: &Digraph, verdict_rule: Rule) -> Classification {
    match find_witness(h) {
        Some(w) => Classification::new(Verdict::NpHard, verdict_rule, Certificate::Witness(w)),
        None => {
            let mut c = Classification::new(Verdict::NpHard, verdict_rule, Certificate::None);
            c.notes.push("no witness on at most four induced vertices".into());
            c
        }
    }
}

fn searched_ordering(h: &Digraph, notes: &mut Vec<String>) -> Certificate {
    match find_minmax(h, crate::minmax::MINMAX_SEARCH_GUARD) {
        Ok(Some(o)) => Certificate::Ordering(o),
        Ok(None) => {
            notes.push("no Min-Max ordering exists".into());
            Certificate::None
        }
        Err(e) => {
            notes.push(format!("Min-Max search skipped: {e}"));
            Certificate::None
        }
    }
}

/// Tournaments with possible loops: polynomial iff acyclic or the loopless
/// directed 3-cycle.
pub fn classify_tournament_wpl(h: &Digraph) -> Result<Classification> {
    let n = h.vertex_count();
    for u in 0..n {
        for v in u + 1..n {
            if h.has_arc(u, v) == h.has_arc(v, u) {
                return Err(Error::NotTournament(format!(
                    "{} and {} must be joined by exactly one arc",
                    h.name(u),
                    h.name(v)
                )));
            }
        }
    }
    if let Some(order) = acyclic_ordering(h) {
        let ord = Ordering::new(order)?;
        if verify_minmax(h, &ord)? {
            return Ok(Classification::new(Verdict::Poly, Rule::TournamentDichotomy, Certificate::Ordering(ord)));
        }
        let mut c = Classification::new(Verdict::Poly, Rule::TournamentDichotomy, Certificate::None);
        c.certificate = searched_ordering(h, &mut c.notes);
        return Ok(c);
    }
    if n == 3 && h.is_loopless() {
        let mut c = Classification::new(Verdict::Poly, Rule::TournamentDichotomy, Certificate::None);
        c.notes.push("directed 3-cycle; solved by rotation".into());
        return Ok(c);
    }
    Ok(hardness_certificate(h, Rule::TournamentDichotomy))
}

/// Reflexive multipartite tournaments with at least two partite sets:
/// polynomial iff isomorphic to `RC(TT_k)`, `RC(TT_{k+1}^-)`, `RC(K_{1,2})` or
/// `RC(K_{2,1})` (k the number of partite sets). Reflexive tournaments are
/// routed through [`classify_tournament_wpl`].
pub fn classify_reflexive_mpt(h: &Digraph) -> Result<Classification> {
    if let Some(v) = (0..h.vertex_count()).find(|&v| !h.has_loop(v)) {
        return Err(Error::NotReflexive(h.name(v).to_string()));
    }
    let parts = partite_structure(h)?;
    let n = h.vertex_count();
    let k = parts.part_count();
    if k < 2 {
        return Err(Error::NotMultipartiteTournament(format!(
            "needs at least two partite sets, found {k}"
        )));
    }
    if k == n {
        let mut c = classify_tournament_wpl(h)?;
        if c.verdict == Verdict::Poly && c.ordering().is_none() {
            c.certificate = Certificate::Ordering(Ordering::new(
                acyclic_ordering(h).ok_or_else(|| Error::Internal("polynomial tournament is cyclic".into()))?,
            )?);
        }
        return Ok(c);
    }
    let mut candidates = Vec::new();
    if n == k + 1 {
        candidates.push(Family::RcTtMinus(n));
    }
    if n == 3 && k == 2 {
        candidates.push(Family::RcK12);
        candidates.push(Family::RcK21);
    }
    for family in candidates {
        let (model, ord) = canonical_ordering(family)?;
        if let Some(phi) = is_isomorphic(&model, h)? {
            return Ok(Classification::new(
                Verdict::Poly,
                Rule::ReflexiveMptDichotomy,
                Certificate::Ordering(ord.transport(&phi)?),
            ));
        }
    }
    Ok(hardness_certificate(h, Rule::ReflexiveMptDichotomy))
}

/// Loop pattern `B` on the four vertices of `TT_4 - 13`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct LoopSet {
    loops: [bool; 4],
}

impl LoopSet {
    pub fn new(loops: [bool; 4]) -> Self {
        LoopSet { loops }
    }

    /// All sixteen loop sets, in increasing bitmask order.
    pub fn all() -> impl Iterator<Item = LoopSet> {
        (0u8..16).map(|m| LoopSet::new([m & 1 != 0, m & 2 != 0, m & 4 != 0, m & 8 != 0]))
    }

    pub fn has(&self, vertex: usize) -> bool {
        (1..=4).contains(&vertex) && self.loops[vertex - 1]
    }

    /// Parses lists like `11,33`; an empty string or `none` is the empty set.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let mut loops = [false; 4];
        if text.is_empty() || text == "none" {
            return Ok(LoopSet { loops });
        }
        for tok in text.split(',') {
            let idx = match tok.trim() {
                "11" => 0,
                "22" => 1,
                "33" => 2,
                "44" => 3,
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "loop {other:?} is not one of 11, 22, 33, 44"
                    )))
                }
            };
            loops[idx] = true;
        }
        Ok(LoopSet { loops })
    }

    /// Expected verdict: polynomial iff `{33} ⊆ B ⊆ {11, 22, 33}`.
    pub fn is_polynomial(&self) -> bool {
        self.loops[2] && !self.loops[3]
    }
}

impl fmt::Display for LoopSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = (0..4)
            .filter(|&i| self.loops[i])
            .map(|i| format!("{0}{0}", i + 1))
            .collect();
        if parts.is_empty() {
            f.write_str("none")
        } else {
            f.write_str(&parts.join(","))
        }
    }
}

/// `TT_4` without the arc `1 -> 3`, plus the loops in `b`: arcs 12, 23, 34,
/// 14, 24.
pub fn tt4_minus_13(b: LoopSet) -> Digraph {
    let mut arcs = vec![(1, 2), (2, 3), (3, 4), (1, 4), (2, 4)];
    arcs.extend((1..=4).filter(|&v| b.has(v)).map(|v| (v, v)));
    Digraph::numbered(4, &arcs).expect("fixed construction")
}

pub fn classify_tt4_minus_13(b: LoopSet) -> Classification {
    let h = tt4_minus_13(b);
    if b.is_polynomial() {
        let mut c = Classification::new(Verdict::Poly, Rule::Tt4Minus13Table, Certificate::None);
        c.certificate = searched_ordering(&h, &mut c.notes);
        c
    } else {
        hardness_certificate(&h, Rule::Tt4Minus13Table)
    }
}

/// Sufficient conditions only: a witness gives NP-hard, a Min-Max ordering
/// gives polynomial, otherwise unknown.
pub fn classify_general(h: &Digraph, minmax_guard: usize) -> Classification {
    if let Some(w) = find_witness(h) {
        let rule = match w {
            Witness::ReflexiveCycle { .. } => Rule::ReflexiveCycle,
            Witness::BgForbidden { .. } => Rule::BgForbidden,
        };
        return Classification::new(Verdict::NpHard, rule, Certificate::Witness(w));
    }
    match find_minmax(h, minmax_guard) {
        Ok(Some(o)) => Classification::new(Verdict::Poly, Rule::MinMax, Certificate::Ordering(o)),
        Ok(None) => Classification::new(Verdict::Unknown, Rule::Inconclusive, Certificate::None),
        Err(e) => {
            let mut c = Classification::new(Verdict::Unknown, Rule::Inconclusive, Certificate::None);
            c.notes.push(format!("Min-Max search skipped: {e}"));
            c
        }
    }
}

fn partitions(n: usize, max_part: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max_part.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// All reflexive multipartite tournaments on `n` vertices with at least two
/// partite sets, one representative per isomorphism class. Vertices are named
/// `1..n` and the partite sets are consecutive blocks.
pub fn enumerate_reflexive_mpts(n: usize) -> Result<Vec<Digraph>> {
    struct Rep {
        sizes: Vec<usize>,
        degrees: Vec<(usize, usize)>,
        h: Digraph,
    }
    let mut reps: Vec<Rep> = Vec::new();
    for sizes in partitions(n, n).into_iter().filter(|p| p.len() >= 2) {
        let mut block = Vec::with_capacity(n);
        for (i, &s) in sizes.iter().enumerate() {
            block.extend(std::iter::repeat_n(i, s));
        }
        let cross: Vec<(usize, usize)> = (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .filter(|&(a, b)| block[a] != block[b])
            .collect();
        for mask in 0u64..1 << cross.len() {
            let arcs: Vec<(usize, usize)> = cross
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| if mask >> i & 1 == 1 { (b + 1, a + 1) } else { (a + 1, b + 1) })
                .collect();
            let h = reflexive_closure(&Digraph::numbered(n, &arcs)?);
            let mut degrees: Vec<(usize, usize)> = (0..n).map(|v| (h.out_degree(v), h.in_degree(v))).collect();
            degrees.sort_unstable();
            let mut duplicate = false;
            for rep in &reps {
                if rep.sizes == sizes && rep.degrees == degrees && is_isomorphic(&rep.h, &h)?.is_some() {
                    duplicate = true;
                    break;
                }
            }
            if !duplicate {
                reps.push(Rep {
                    sizes: sizes.clone(),
                    degrees,
                    h,
                });
            }
        }
    }
    Ok(reps.into_iter().map(|r| r.h).collect())
}
