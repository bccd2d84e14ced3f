//! Min-Max orderings: verification, exhaustive search and the orderings of the
//! four polynomial families of reflexive multipartite tournaments.
//!
//! Under an ordering, arcs `e = (i, k)` and `f = (j, s)` (in positions) have
//! minimum `(min(i, j), min(k, s))` and maximum `(max(i, j), max(k, s))`. The
//! pair is non-trivial when `{min, max} != {e, f}`; the ordering is Min-Max
//! when every non-trivial pair has both its minimum and maximum among the arcs.

use std::fmt;

use crate::digraph::{converse, is_isomorphic, make_oriented_kb, make_tt, make_tt_minus, reflexive_closure, Digraph};
use crate::error::{Error, Result};

pub const MINMAX_SEARCH_GUARD: usize = 9;

/// A permutation of the vertices of a digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ordering {
    sequence: Vec<usize>,
    /// `rank[v]` is the 0-based position of `v`.
    rank: Vec<usize>,
}

impl Ordering {
    pub fn new(sequence: Vec<usize>) -> Result<Self> {
        let n = sequence.len();
        let mut rank = vec![usize::MAX; n];
        for (pos, &v) in sequence.iter().enumerate() {
            if v >= n || rank[v] != usize::MAX {
                return Err(Error::NotPermutation(format!("{sequence:?}")));
            }
            rank[v] = pos;
        }
        Ok(Ordering { sequence, rank })
    }

    pub fn identity(n: usize) -> Self {
        Ordering {
            sequence: (0..n).collect(),
            rank: (0..n).collect(),
        }
    }

    /// Parses a comma separated list of vertex names.
    pub fn parse(h: &Digraph, text: &str) -> Result<Self> {
        let text = text.trim();
        let seq = if text.is_empty() {
            Vec::new()
        } else {
            text.split(',')
                .map(|s| h.index_of(s.trim()))
                .collect::<Result<Vec<_>>>()?
        };
        if seq.len() != h.vertex_count() {
            return Err(Error::NotPermutation(format!(
                "expected {} vertices, got {}",
                h.vertex_count(),
                seq.len()
            )));
        }
        Ordering::new(seq)
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn sequence(&self) -> &[usize] {
        &self.sequence
    }

    pub fn rank(&self, v: usize) -> usize {
        self.rank[v]
    }

    pub fn reversed(&self) -> Ordering {
        let mut seq = self.sequence.clone();
        seq.reverse();
        Ordering::new(seq).expect("reversal of a permutation")
    }

    /// Moves the ordering along a vertex bijection `phi`.
    pub fn transport(&self, phi: &[usize]) -> Result<Ordering> {
        Ordering::new(self.sequence.iter().map(|&v| phi[v]).collect())
    }

    /// Comma separated names in sequence order.
    pub fn display(&self, h: &Digraph) -> String {
        self.sequence
            .iter()
            .map(|&v| h.name(v))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// A pair of arcs with its minimum and maximum in 1-based positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcPair {
    pub e: (usize, usize),
    pub f: (usize, usize),
    pub min_pair: (usize, usize),
    pub max_pair: (usize, usize),
    pub nontrivial: bool,
}

impl ArcPair {
    /// `e` and `f` are given as vertex pairs.
    pub fn new(ord: &Ordering, e: (usize, usize), f: (usize, usize)) -> Self {
        let pe = (ord.rank(e.0) + 1, ord.rank(e.1) + 1);
        let pf = (ord.rank(f.0) + 1, ord.rank(f.1) + 1);
        let min_pair = (pe.0.min(pf.0), pe.1.min(pf.1));
        let max_pair = (pe.0.max(pf.0), pe.1.max(pf.1));
        let nontrivial = !((min_pair == pe && max_pair == pf) || (min_pair == pf && max_pair == pe));
        ArcPair {
            e,
            f,
            min_pair,
            max_pair,
            nontrivial,
        }
    }
}

impl fmt::Display for ArcPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pair {:?},{:?} has min {:?} and max {:?} (positions)",
            self.e, self.f, self.min_pair, self.max_pair
        )
    }
}

fn arc_at_positions(h: &Digraph, ord: &Ordering, pos: (usize, usize)) -> bool {
    h.has_arc(ord.sequence[pos.0 - 1], ord.sequence[pos.1 - 1])
}

/// Lexicographically first violating pair (arcs compared by their position
/// pairs), or `None` when the ordering is Min-Max.
pub fn find_violation(h: &Digraph, ord: &Ordering) -> Result<Option<ArcPair>> {
    if ord.len() != h.vertex_count() {
        return Err(Error::NotPermutation(format!(
            "ordering has {} entries for {} vertices",
            ord.len(),
            h.vertex_count()
        )));
    }
    let mut arcs: Vec<(usize, usize)> = h.arcs().collect();
    arcs.sort_by_key(|&(t, hd)| (ord.rank(t), ord.rank(hd)));
    for (i, &e) in arcs.iter().enumerate() {
        for &f in &arcs[i + 1..] {
            let pair = ArcPair::new(ord, e, f);
            if pair.nontrivial
                && !(arc_at_positions(h, ord, pair.min_pair) && arc_at_positions(h, ord, pair.max_pair))
            {
                return Ok(Some(pair));
            }
        }
    }
    Ok(None)
}

pub fn verify_minmax(h: &Digraph, ord: &Ordering) -> Result<bool> {
    Ok(find_violation(h, ord)?.is_none())
}

/// Lexicographically first Min-Max ordering (by vertex declaration index),
/// found by depth-first placement with pruning on fully placed arc pairs.
pub fn find_minmax(h: &Digraph, guard: usize) -> Result<Option<Ordering>> {
    let n = h.vertex_count();
    if n > guard {
        return Err(Error::GuardExceeded {
            what: "Min-Max ordering search",
            size: n,
            guard,
        });
    }
    let adj = h.adjacency_matrix();

    struct Search<'a> {
        adj: &'a [Vec<bool>],
        seq: Vec<usize>,
        pos: Vec<Option<usize>>,
        placed_arcs: Vec<(usize, usize)>,
    }

    impl Search<'_> {
        fn arc_pos(&self, p: (usize, usize)) -> bool {
            self.adj[self.seq[p.0]][self.seq[p.1]]
        }

        fn pair_ok(&self, e: (usize, usize), f: (usize, usize)) -> bool {
            let mn = (e.0.min(f.0), e.1.min(f.1));
            let mx = (e.0.max(f.0), e.1.max(f.1));
            let trivial = (mn == e && mx == f) || (mn == f && mx == e);
            trivial || (self.arc_pos(mn) && self.arc_pos(mx))
        }

        fn run(&mut self) -> bool {
            let n = self.adj.len();
            let t = self.seq.len();
            if t == n {
                return true;
            }
            for v in 0..n {
                if self.pos[v].is_some() {
                    continue;
                }
                self.seq.push(v);
                self.pos[v] = Some(t);
                let before = self.placed_arcs.len();
                for w in 0..n {
                    if let Some(pw) = self.pos[w] {
                        if self.adj[v][w] {
                            self.placed_arcs.push((t, pw));
                        }
                        if w != v && self.adj[w][v] {
                            self.placed_arcs.push((pw, t));
                        }
                    }
                }
                let ok = (before..self.placed_arcs.len()).all(|i| {
                    let e = self.placed_arcs[i];
                    (0..i).all(|j| self.pair_ok(e, self.placed_arcs[j]))
                });
                if ok && self.run() {
                    return true;
                }
                self.placed_arcs.truncate(before);
                self.pos[v] = None;
                self.seq.pop();
            }
            false
        }
    }

    let mut s = Search {
        adj: &adj,
        seq: Vec::with_capacity(n),
        pos: vec![None; n],
        placed_arcs: Vec::new(),
    };
    if s.run() {
        Ok(Some(Ordering::new(s.seq)?))
    } else {
        Ok(None)
    }
}

/// The four polynomial families of reflexive multipartite tournaments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// Reflexive transitive tournament on p vertices.
    RcTt(usize),
    /// Reflexive transitive tournament on p vertices minus the arc 1 -> p.
    RcTtMinus(usize),
    /// One vertex dominating two nonadjacent ones, all loops.
    RcK12,
    /// Two nonadjacent vertices dominating a third, all loops.
    RcK21,
}

impl Family {
    pub fn digraph(&self) -> Result<Digraph> {
        Ok(reflexive_closure(&match *self {
            Family::RcTt(p) => make_tt(p)?,
            Family::RcTtMinus(p) => make_tt_minus(p)?,
            Family::RcK12 => make_oriented_kb(1, 2)?,
            Family::RcK21 => make_oriented_kb(2, 1)?,
        }))
    }
}

/// The family digraph together with a Min-Max ordering of it: the natural
/// order for both transitive families, `2,1,3` for the out-star, and for the
/// in-star the out-star ordering carried over by converse-then-isomorphism.
pub fn canonical_ordering(family: Family) -> Result<(Digraph, Ordering)> {
    let h = family.digraph()?;
    let ord = match family {
        Family::RcTt(_) | Family::RcTtMinus(_) => Ordering::identity(h.vertex_count()),
        Family::RcK12 => Ordering::new(vec![1, 0, 2])?,
        Family::RcK21 => {
            let (out_star, out_ord) = canonical_ordering(Family::RcK12)?;
            // reversing every arc keeps Min-Max orderings
            let phi = is_isomorphic(&converse(&out_star), &h)?
                .ok_or_else(|| Error::Internal("converse of the out-star is not the in-star".into()))?;
            out_ord.transport(&phi)?
        }
    };
    Ok((h, ord))
}
