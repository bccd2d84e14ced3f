//! Acceptance checks. Each criterion prints one PASS/FAIL line; the process
//! exits non-zero if any criterion fails.
//!
//! Ground truth here is computed by oracles written in this file (permutation
//! canonical forms, Min-Max checks straight from the definition, plain
//! enumeration of maps) wherever the library would otherwise check itself.

use std::collections::{BTreeSet, HashSet};
use std::process::Command;
use std::time::{Duration, Instant};

use minhom::birep::{
    bg, digraph_instance_from_bipartite, find_forbidden, is_proper_interval_bigraph, lift_solution,
    project_solution, BipartiteGraph, BipartiteHomomorphism, ForbiddenKind, PibCheck, FORBIDDEN_SEARCH_GUARD,
};
use minhom::classify::{
    classify_general, classify_reflexive_mpt, classify_tt4_minus_13, enumerate_reflexive_mpts, tt4_minus_13,
    LoopSet, Verdict, Witness,
};
use minhom::digraph::{
    converse, extend, induced, make_cycle, make_oriented_kb, make_tt, make_tt_minus, reflexive_closure, Digraph,
};
use minhom::format::{write_bipartite, write_costs, write_digraph};
use minhom::minmax::{canonical_ordering, find_minmax, verify_minmax, Family, Ordering, MINMAX_SEARCH_GUARD};
use minhom::solver::{
    collapse_extension, is_homomorphism, solve_bruteforce, solve_cycle, solve_minmax, CostMatrix, Homomorphism,
    DEFAULT_NODE_BUDGET,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------- oracles

/// Min-Max straight from the definition: for arcs uv and u'v', the arcs
/// min(u,u')min(v,v') and max(u,u')max(v,v') must exist (positions in `seq`).
fn oracle_is_minmax(h: &Digraph, seq: &[usize]) -> bool {
    let n = h.vertex_count();
    let mut pos = vec![usize::MAX; n];
    for (k, &v) in seq.iter().enumerate() {
        pos[v] = k;
    }
    if seq.len() != n || pos.contains(&usize::MAX) {
        return false;
    }
    let arcs: Vec<(usize, usize)> = h.arcs().map(|(u, v)| (pos[u], pos[v])).collect();
    let set: HashSet<(usize, usize)> = arcs.iter().copied().collect();
    arcs.iter().all(|&(a, b)| {
        arcs.iter()
            .all(|&(c, d)| set.contains(&(a.min(c), b.min(d))) && set.contains(&(a.max(c), b.max(d))))
    })
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Smallest relabelled arc list over all vertex permutations.
fn canonical_form(h: &Digraph, perms: &[Vec<usize>]) -> Vec<(usize, usize)> {
    perms
        .iter()
        .map(|p| {
            let mut arcs: Vec<(usize, usize)> = h.arcs().map(|(u, v)| (p[u], p[v])).collect();
            arcs.sort_unstable();
            arcs
        })
        .min()
        .unwrap_or_default()
}

/// Optimum over all maps by plain enumeration; `None` when infeasible.
fn oracle_optimum(d: &Digraph, h: &Digraph, costs: &CostMatrix) -> Option<i64> {
    let n = d.vertex_count();
    let p = h.vertex_count();
    let arcs: Vec<(usize, usize)> = d.arcs().collect();
    let mut map = vec![0usize; n];
    let mut best: Option<i64> = None;
    loop {
        if arcs.iter().all(|&(u, v)| h.has_arc(map[u], map[v])) {
            let c: i64 = (0..n).map(|u| costs.get(u, map[u])).sum();
            best = Some(best.map_or(c, |b| b.min(c)));
        }
        let mut k = 0;
        loop {
            if k == n {
                return best;
            }
            map[k] += 1;
            if map[k] < p {
                break;
            }
            map[k] = 0;
            k += 1;
        }
    }
}

fn random_digraph(rng: &mut ChaCha8Rng, n: usize, arc_p: f64, loop_p: f64) -> Digraph {
    let mut arcs = Vec::new();
    for u in 1..=n {
        for v in 1..=n {
            if rng.gen_bool(if u == v { loop_p } else { arc_p }) {
                arcs.push((u, v));
            }
        }
    }
    Digraph::numbered(n, &arcs).unwrap()
}

fn random_costs(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> CostMatrix {
    CostMatrix::from_fn(rows, cols, |_, _| rng.gen_range(-9..=9))
}

fn check_returned(d: &Digraph, h: &Digraph, costs: &CostMatrix, hom: &Homomorphism) -> std::result::Result<(), String> {
    ensure(is_homomorphism(d, h, &hom.map).unwrap_or(false), || format!("returned map {:?} is not a homomorphism", hom.map))?;
    let recomputed: i64 = hom.map.iter().enumerate().map(|(u, &i)| costs.get(u, i)).sum();
    ensure(recomputed == hom.cost, || format!("reported cost {} but map costs {recomputed}", hom.cost))
}

// ---------------------------------------------------------------- criteria

fn c1_canonical_orderings() -> Check {
    let mut checked = 0;
    for p in 1..=8 {
        let h = reflexive_closure(&make_tt(p).unwrap());
        let id: Vec<usize> = (0..p).collect();
        ensure(oracle_is_minmax(&h, &id), || format!("oracle rejects identity on RC(TT_{p})"))?;
        ensure(verify_minmax(&h, &Ordering::new(id.clone()).unwrap()).unwrap(), || format!("RC(TT_{p}) rejected"))?;
        checked += 1;
        if p >= 3 {
            let h = reflexive_closure(&make_tt_minus(p).unwrap());
            ensure(oracle_is_minmax(&h, &id), || format!("oracle rejects identity on RC(TT_{p}^-)"))?;
            ensure(verify_minmax(&h, &Ordering::new(id).unwrap()).unwrap(), || format!("RC(TT_{p}^-) rejected"))?;
            checked += 1;
        }
    }
    let k12 = reflexive_closure(&make_oriented_kb(1, 2).unwrap());
    let ord = Ordering::parse(&k12, "2,1,3").unwrap();
    ensure(oracle_is_minmax(&k12, ord.sequence()) && verify_minmax(&k12, &ord).unwrap(), || "RC(K12) with 2,1,3 rejected".into())?;

    // RC(K21) is RC(K12) reversed; the ordering is carried over by the isomorphism
    let k21 = reflexive_closure(&make_oriented_kb(2, 1).unwrap());
    let perms = permutations(3);
    let phi = perms
        .iter()
        .find(|p| {
            let conv = converse(&k12);
            conv.arcs().all(|(u, v)| k21.has_arc(p[u], p[v])) && conv.arc_count() == k21.arc_count()
        })
        .ok_or("no isomorphism from the converse of RC(K12) to RC(K21)")?;
    let carried: Vec<usize> = ord.sequence().iter().map(|&v| phi[v]).collect();
    ensure(oracle_is_minmax(&k21, &carried), || format!("oracle rejects {carried:?} on RC(K21)"))?;
    ensure(verify_minmax(&k21, &Ordering::new(carried.clone()).unwrap()).unwrap(), || "RC(K21) ordering rejected".into())?;
    let (lib_k21, lib_ord) = canonical_ordering(Family::RcK21).unwrap();
    ensure(lib_k21 == k21 && lib_ord.sequence() == carried.as_slice(), || {
        format!("library ordering {:?} differs from {carried:?}", lib_ord.sequence())
    })?;
    Ok(format!("{} orderings accepted", checked + 2))
}

fn c2_minmax_vs_bruteforce() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x2002);
    let mut instances = 0;
    let mut infeasible = 0;
    let mut oracle_checked = 0;
    while instances < 1200 {
        let p = rng.gen_range(1..=4);
        let h = random_digraph(&mut rng, p, 0.5, 0.6);
        let Some(ord) = find_minmax(&h, MINMAX_SEARCH_GUARD).unwrap() else {
            continue;
        };
        ensure(oracle_is_minmax(&h, ord.sequence()), || format!("found ordering {:?} is not Min-Max", ord.sequence()))?;
        for _ in 0..4 {
            let n = rng.gen_range(1..=8);
            let density = rng.gen_range(0.1..0.5);
            let d = random_digraph(&mut rng, n, density, 0.2);
            let costs = random_costs(&mut rng, n, p);
            let a = solve_minmax(&d, &h, &ord, &costs).map_err(|e| e.to_string())?;
            let b = solve_bruteforce(&d, &h, &costs, DEFAULT_NODE_BUDGET).map_err(|e| e.to_string())?;
            ensure(a.cost() == b.cost(), || {
                format!("instance {instances}: min cut {:?} vs brute force {:?}\n{}", a.cost(), b.cost(), write_digraph(&d))
            })?;
            if let Some(hom) = a.optimal() {
                check_returned(&d, &h, &costs, hom)?;
            } else {
                infeasible += 1;
            }
            if n <= 6 {
                ensure(oracle_optimum(&d, &h, &costs) == b.cost(), || format!("instance {instances}: enumeration disagrees"))?;
                oracle_checked += 1;
            }
            instances += 1;
        }
    }
    Ok(format!(
        "{instances} instances agree ({infeasible} infeasible, {oracle_checked} also enumerated)"
    ))
}

fn c3_cycle_vs_bruteforce() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x3003);
    let mut feasible = 0;
    let total = 600;
    for i in 0..total {
        let k = rng.gen_range(2..=5);
        let n = rng.gen_range(1..=8);
        let density = rng.gen_range(0.1..0.4);
        let d = random_digraph(&mut rng, n, density, 0.03);
        let costs = random_costs(&mut rng, n, k);
        let h = make_cycle(k).unwrap();
        let a = solve_cycle(&d, k, &costs).map_err(|e| e.to_string())?;
        let b = solve_bruteforce(&d, &h, &costs, DEFAULT_NODE_BUDGET).map_err(|e| e.to_string())?;
        ensure(a.cost() == b.cost(), || format!("instance {i}: cycle {:?} vs brute force {:?}", a.cost(), b.cost()))?;
        if let Some(hom) = a.optimal() {
            check_returned(&d, &h, &costs, hom)?;
            feasible += 1;
        }
    }
    Ok(format!("{total} instances agree ({feasible} feasible)"))
}

fn family_forms(n: usize, k: usize, perms: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    let mut out = Vec::new();
    if k == n {
        out.push(canonical_form(&reflexive_closure(&make_tt(n).unwrap()), perms));
    }
    if n >= 3 && k + 1 == n {
        out.push(canonical_form(&reflexive_closure(&make_tt_minus(n).unwrap()), perms));
    }
    if n == 3 && k == 2 {
        out.push(canonical_form(&reflexive_closure(&make_oriented_kb(1, 2).unwrap()), perms));
        out.push(canonical_form(&reflexive_closure(&make_oriented_kb(2, 1).unwrap()), perms));
    }
    out
}

/// All isomorphism classes of reflexive multipartite tournaments on `n`
/// vertices, by canonical form, together with their number of parts.
fn oracle_rmpt_classes(n: usize, perms: &[Vec<usize>]) -> BTreeSet<(usize, Vec<(usize, usize)>)> {
    let mut classes = BTreeSet::new();
    // part label per vertex, in restricted growth form
    let mut labels = vec![0usize; n];
    loop {
        let k = labels.iter().max().unwrap() + 1;
        if k >= 2 {
            let cross: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .filter(|&(a, b)| labels[a] != labels[b])
                .collect();
            for mask in 0u32..1 << cross.len() {
                let mut arcs: Vec<(usize, usize)> = (1..=n).map(|v| (v, v)).collect();
                for (i, &(a, b)) in cross.iter().enumerate() {
                    arcs.push(if mask >> i & 1 == 1 { (b + 1, a + 1) } else { (a + 1, b + 1) });
                }
                let h = Digraph::numbered(n, &arcs).unwrap();
                classes.insert((k, canonical_form(&h, perms)));
            }
        }
        // next restricted growth string
        let mut i = n;
        loop {
            if i <= 1 {
                return classes;
            }
            i -= 1;
            let limit = labels[..i].iter().max().unwrap() + 1;
            if labels[i] < limit {
                labels[i] += 1;
                for l in labels[i + 1..].iter_mut() {
                    *l = 0;
                }
                break;
            }
        }
    }
}

fn witness_is_admissible(h: &Digraph, w: &Witness) -> bool {
    if !w.validates_in(h) {
        return false;
    }
    match w {
        Witness::ReflexiveCycle { cycle, looped } => {
            let len = cycle.len();
            len >= 3
                && h.has_loop(*looped)
                && (0..len).all(|i| (0..len).all(|j| i == j || h.has_arc(cycle[i], cycle[j]) == (j == (i + 1) % len)))
        }
        Witness::BgForbidden { subset, structure } => {
            if subset.len() > 4 {
                return false;
            }
            let g = bg(&induced(h, subset).unwrap());
            let comps = g.components();
            structure.validates_in(&g)
                && comps.iter().any(|c| structure.embedding.iter().all(|v| c.contains(v)))
        }
    }
}

fn c4_reflexive_mpt_exhaustive() -> Check {
    let mut total = 0;
    let mut poly = 0;
    for n in 2..=5 {
        let perms = permutations(n);
        let oracle = oracle_rmpt_classes(n, &perms);
        let listed = enumerate_reflexive_mpts(n).map_err(|e| e.to_string())?;
        let forms: BTreeSet<Vec<(usize, usize)>> = listed.iter().map(|h| canonical_form(h, &perms)).collect();
        ensure(forms.len() == listed.len(), || format!("n={n}: enumeration repeats a class"))?;
        let oracle_forms: BTreeSet<Vec<(usize, usize)>> = oracle.iter().map(|(_, f)| f.clone()).collect();
        ensure(forms == oracle_forms, || format!("n={n}: {} classes listed, oracle has {}", forms.len(), oracle_forms.len()))?;
        for (k, form) in &oracle {
            let h = listed.iter().find(|h| canonical_form(h, &perms) == *form).unwrap();
            let expected_poly = family_forms(n, *k, &perms).contains(form);
            let c = classify_reflexive_mpt(h).map_err(|e| e.to_string())?;
            let show = || write_digraph(h);
            match c.verdict {
                Verdict::Poly => {
                    ensure(expected_poly, || format!("classified poly but not in a family:\n{}", show()))?;
                    let ord = c.ordering().ok_or_else(|| format!("poly without ordering:\n{}", show()))?;
                    ensure(oracle_is_minmax(h, ord.sequence()), || format!("ordering fails:\n{}", show()))?;
                    poly += 1;
                }
                Verdict::NpHard => {
                    ensure(!expected_poly, || format!("classified hard but in a family:\n{}", show()))?;
                    let w = c.witness().ok_or_else(|| format!("hard without witness:\n{}", show()))?;
                    ensure(witness_is_admissible(h, w), || format!("witness does not validate:\n{}", show()))?;
                }
                Verdict::Unknown => return Err(format!("unknown verdict:\n{}", show())),
            }
            let g = classify_general(h, MINMAX_SEARCH_GUARD);
            ensure(g.verdict == Verdict::Unknown || g.verdict == c.verdict, || format!("general classifier disagrees:\n{}", show()))?;
            total += 1;
        }
    }
    Ok(format!("{total} classes, {poly} polynomial, all certificates valid"))
}

fn c5_tt4_minus_13_table() -> Check {
    let poly_sets = ["33", "11,33", "22,33", "11,22,33"];
    let mut seen_poly = Vec::new();
    for b in LoopSet::all() {
        let c = classify_tt4_minus_13(b);
        let h = tt4_minus_13(b);
        let expected = poly_sets.iter().any(|s| LoopSet::parse(s).unwrap() == b);
        ensure((c.verdict == Verdict::Poly) == expected, || format!("B={b}: got {}", c.verdict))?;
        ensure(c.verdict != Verdict::Unknown, || format!("B={b}: unknown"))?;
        ensure(c.certificate_is_sound(&h), || format!("B={b}: unsound certificate"))?;
        if let Some(o) = c.ordering() {
            ensure(oracle_is_minmax(&h, o.sequence()), || format!("B={b}: ordering fails"))?;
        }
        if c.verdict == Verdict::Poly {
            seen_poly.push(b.to_string());
        }
    }
    let full = LoopSet::parse("11,22,33,44").unwrap();
    let c = classify_tt4_minus_13(full);
    let h = tt4_minus_13(full);
    let w = c.witness().ok_or("no witness for B={11,22,33,44}")?;
    ensure(w.kind_tag() == "bipartite-tent" && witness_is_admissible(&h, w), || {
        format!("B={{11,22,33,44}}: witness {}", w.describe(&h))
    })?;
    Ok(format!("poly exactly for {{{}}}; tent found for 11,22,33,44", seen_poly.join("} {")))
}

fn star_family(b: u8) -> Digraph {
    // z -> u, v, w; bits 0..3 put loops on u, v, w, z
    let names = ["u", "v", "w", "z"];
    let mut arcs = vec![("z", "u"), ("z", "v"), ("z", "w")];
    for (i, name) in names.iter().enumerate() {
        if b >> i & 1 == 1 {
            arcs.push((name, name));
        }
    }
    Digraph::from_named_arcs(&names, &arcs).unwrap()
}

fn c6_star_family() -> Check {
    let mut hard = 0;
    let mut ordered = 0;
    for b in 0u8..16 {
        let base = star_family(b);
        for h in [base.clone(), converse(&base)] {
            if b & 0b0111 == 0b0111 {
                let c = classify_general(&h, MINMAX_SEARCH_GUARD);
                let w = c.witness().ok_or_else(|| format!("B bits {b:04b}: no witness"))?;
                ensure(c.verdict == Verdict::NpHard && w.kind_tag() == "bipartite-claw", || {
                    format!("B bits {b:04b}: {} {}", c.verdict, w.describe(&h))
                })?;
                ensure(witness_is_admissible(&h, w), || format!("B bits {b:04b}: witness invalid"))?;
                hard += 1;
            } else {
                let ord = find_minmax(&h, MINMAX_SEARCH_GUARD)
                    .unwrap()
                    .ok_or_else(|| format!("B bits {b:04b}: no Min-Max ordering"))?;
                ensure(oracle_is_minmax(&h, ord.sequence()), || format!("B bits {b:04b}: ordering fails"))?;
                ordered += 1;
            }
        }
    }
    Ok(format!("{hard} claw witnesses, {ordered} Min-Max orderings"))
}

fn random_bipartite(rng: &mut ChaCha8Rng) -> BipartiteGraph {
    let mut g = BipartiteGraph::new();
    let s = rng.gen_range(1..=3);
    let t = rng.gen_range(1..=3);
    for i in 0..s {
        g.add_vertex(&format!("s{i}"), false).unwrap();
    }
    for j in 0..t {
        g.add_vertex(&format!("t{j}"), true).unwrap();
    }
    for a in 0..s {
        for b in s..s + t {
            if rng.gen_bool(0.5) {
                g.add_edge(a, b).unwrap();
            }
        }
    }
    g
}

/// Optimum over part-respecting maps of `g` into `target` by enumeration.
fn oracle_bipartite_optimum(g: &BipartiteGraph, target: &BipartiteGraph, costs: &CostMatrix) -> Option<i64> {
    let n = g.vertex_count();
    let m = target.vertex_count();
    let mut best: Option<i64> = None;
    let mut map = vec![0usize; n];
    loop {
        let respects = (0..n).all(|v| g.in_first_part(v) == target.in_first_part(map[v]))
            && g.edges().all(|(a, b)| target.has_edge(map[a], map[b]));
        if respects {
            let c: i64 = (0..n).map(|v| costs.get(v, map[v])).sum();
            best = Some(best.map_or(c, |x| x.min(c)));
        }
        let mut k = 0;
        loop {
            if k == n {
                return best;
            }
            map[k] += 1;
            if map[k] < m {
                break;
            }
            map[k] = 0;
            k += 1;
        }
    }
}

fn c7_bipartite_transformation() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7007);
    let total = 80;
    let mut round_trips = 0;
    for i in 0..total {
        let p = rng.gen_range(1..=3);
        let h = random_digraph(&mut rng, p, 0.5, 0.5);
        let g = random_bipartite(&mut rng);
        let costs = random_costs(&mut rng, g.vertex_count(), 2 * p);
        let target = bg(&h);
        let expected = oracle_bipartite_optimum(&g, &target, &costs);
        let (d, moved) = digraph_instance_from_bipartite(&g, &h, &costs).map_err(|e| e.to_string())?;
        let r = solve_bruteforce(&d, &h, &moved, DEFAULT_NODE_BUDGET).map_err(|e| e.to_string())?;
        ensure(r.cost() == expected, || format!("instance {i}: transformed {:?} vs bipartite {expected:?}", r.cost()))?;

        // every homomorphism of the transformed instance round-trips
        let n = d.vertex_count();
        let mut map = vec![0usize; n];
        'maps: loop {
            if is_homomorphism(&d, &h, &map).unwrap() {
                let f = Homomorphism {
                    cost: (0..n).map(|u| moved.get(u, map[u])).sum(),
                    map: map.clone(),
                };
                let lifted = lift_solution(&g, &h, &costs, &f).map_err(|e| e.to_string())?;
                ensure(lifted.cost == f.cost, || format!("instance {i}: lift changed the cost"))?;
                let back = project_solution(&g, &h, &costs, &lifted).map_err(|e| e.to_string())?;
                ensure(back == f, || format!("instance {i}: project(lift(f)) != f"))?;
                let again: BipartiteHomomorphism = lift_solution(&g, &h, &costs, &back).unwrap();
                ensure(again == lifted, || format!("instance {i}: lift(project(g)) != g"))?;
                round_trips += 1;
            }
            let mut k = 0;
            loop {
                if k == n {
                    break 'maps;
                }
                map[k] += 1;
                if map[k] < p {
                    break;
                }
                map[k] = 0;
                k += 1;
            }
        }
    }
    Ok(format!("{total} instances agree, {round_trips} round trips are identities"))
}

fn c8_extension_collapse() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x8008);
    let total = 250;
    for i in 0..total {
        let p = rng.gen_range(1..=3);
        let h = random_digraph(&mut rng, p, 0.5, 0.0);
        let sizes: Vec<usize> = (0..p).map(|_| rng.gen_range(1..=3)).collect();
        let (ext, dec) = extend(&h, &sizes).map_err(|e| e.to_string())?;
        let n = rng.gen_range(1..=5);
        let d = random_digraph(&mut rng, n, 0.3, 0.0);
        let costs = random_costs(&mut rng, n, ext.vertex_count());
        let collapsed = collapse_extension(&ext, &dec, &costs).map_err(|e| e.to_string())?;
        ensure(collapsed.base == h, || format!("instance {i}: collapsed target differs"))?;
        let over_ext = solve_bruteforce(&d, &ext, &costs, DEFAULT_NODE_BUDGET).map_err(|e| e.to_string())?;
        let over_base =
            solve_bruteforce(&d, &collapsed.base, &collapsed.costs, DEFAULT_NODE_BUDGET).map_err(|e| e.to_string())?;
        ensure(over_ext.cost() == over_base.cost(), || {
            format!("instance {i}: extension {:?} vs collapsed {:?}", over_ext.cost(), over_base.cost())
        })?;
        ensure(oracle_optimum(&d, &ext, &costs) == over_ext.cost(), || format!("instance {i}: enumeration disagrees"))?;
        if let Some(f) = over_base.optimal() {
            check_returned(&d, &ext, &costs, &collapsed.lift(f))?;
        }
    }
    Ok(format!("{total} instances agree"))
}

fn pattern_graph(kind: ForbiddenKind) -> BipartiteGraph {
    let mut g = BipartiteGraph::new();
    for x in ["x1", "x2", "x3", "x4"] {
        g.add_vertex(x, false).unwrap();
    }
    for y in ["y1", "y2", "y3"] {
        g.add_vertex(y, true).unwrap();
    }
    for (a, b) in kind.pattern_edges() {
        g.add_edge(a, b).unwrap();
    }
    g
}

fn c9_structure_goldens() -> Check {
    let g = bg(&reflexive_closure(&make_cycle(3).unwrap()));
    let adj = g.adjacency_matrix();
    let degrees_two = (0..6).all(|v| adj[v].iter().filter(|&&b| b).count() == 2);
    ensure(g.vertex_count() == 6 && g.edge_count() == 6 && degrees_two && g.components().len() == 1, || {
        format!("BG(RC(C3)) is not a 6-cycle:\n{}", write_bipartite(&g))
    })?;
    match is_proper_interval_bigraph(&g, FORBIDDEN_SEARCH_GUARD).unwrap() {
        PibCheck::Forbidden(s) if s.kind == ForbiddenKind::LongInducedCycle(6) && s.validates_in(&g) => {}
        other => return Err(format!("BG(RC(C3)): {other:?}")),
    }
    for kind in [ForbiddenKind::BipartiteClaw, ForbiddenKind::BipartiteNet, ForbiddenKind::BipartiteTent] {
        let g = pattern_graph(kind);
        let found = find_forbidden(&g, FORBIDDEN_SEARCH_GUARD).unwrap();
        ensure(matches!(&found, Some(s) if s.kind == kind && s.validates_in(&g)), || format!("{kind:?}: found {found:?}"))?;
        for mask in 0u32..(1 << 7) - 1 {
            let subset: Vec<usize> = (0..7).filter(|v| mask >> v & 1 == 1).collect();
            let sub = g.induced(&subset).unwrap();
            let hit = find_forbidden(&sub, FORBIDDEN_SEARCH_GUARD).unwrap();
            ensure(hit.is_none(), || format!("{kind:?}: proper subgraph {subset:?} contains {hit:?}"))?;
        }
    }
    Ok("6-cycle, claw, net and tent goldens hold".into())
}

fn cli_runs() -> Vec<Vec<String>> {
    let dir = std::env::temp_dir().join(format!("minhom-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let d = Digraph::from_named_arcs(&["u", "v"], &[("u", "v")]).unwrap();
    let h = reflexive_closure(&make_tt_minus(3).unwrap());
    let costs = CostMatrix::from_rows(vec![vec![0, 5, 9], vec![9, 5, 0]]).unwrap();
    let graph = dir.join("d.graph");
    let cost = dir.join("d.cost");
    let target = dir.join("h.graph");
    let bip = dir.join("c3.bip");
    std::fs::write(&graph, write_digraph(&d)).unwrap();
    std::fs::write(&cost, write_costs(&costs, &d, &h)).unwrap();
    std::fs::write(&target, write_digraph(&h)).unwrap();
    std::fs::write(&bip, write_bipartite(&bg(&reflexive_closure(&make_cycle(3).unwrap())))).unwrap();
    let (graph, cost, target, bip) = (
        graph.to_str().unwrap(),
        cost.to_str().unwrap(),
        target.to_str().unwrap(),
        bip.to_str().unwrap(),
    );
    let runs: Vec<Vec<&str>> = vec![
        vec!["solve", "--target", "rc_ttminus3", "--input", graph, "--costs", cost, "--method", "auto"],
        vec!["solve", "--target", target, "--input", graph, "--costs", cost, "--method", "minmax"],
        vec!["solve", "--target", "rc_ttminus3", "--input", graph, "--costs", cost, "--method", "brute"],
        vec!["solve", "--target", "cycle4", "--seed", "11", "--method", "cycle"],
        vec!["solve", "--target", "t5_33", "--seed", "12"],
        vec!["classify-rmpt", "--target", "rc_k21"],
        vec!["classify-tournament", "--target", "cycle3"],
        vec!["classify-t5", "--b", "11,22,33,44"],
        vec!["classify-general", "--target", "t5_3344", "--guard", "9"],
        vec!["bg", "--target", "rc_tt3"],
        vec!["pib-check", "--input", bip],
        vec!["minmax-verify", "--target", "rc_k12", "--ordering", "2,1,3"],
        vec!["minmax-find", "--target", "rc_ttminus4"],
        vec!["witness", "--target", "t5_11223344"],
        vec!["enumerate-rmpt", "--vertices", "4"],
    ];
    runs.into_iter().map(|r| r.into_iter().map(String::from).collect()).collect()
}

fn c10_cli_determinism() -> Check {
    let exe = env!("CARGO_BIN_EXE_minhom");
    let runs = cli_runs();
    for args in &runs {
        let first = Command::new(exe).args(args).output().map_err(|e| e.to_string())?;
        let second = Command::new(exe).args(args).output().map_err(|e| e.to_string())?;
        ensure(first.stdout == second.stdout && first.status.code() == second.status.code(), || {
            format!("`{}` differs between runs", args.join(" "))
        })?;
        ensure(matches!(first.status.code(), Some(0 | 2)) && !first.stdout.is_empty(), || {
            format!("`{}` failed: {}", args.join(" "), String::from_utf8_lossy(&first.stderr))
        })?;
    }
    let solved = Command::new(exe).args(&runs[0]).output().unwrap();
    ensure(String::from_utf8_lossy(&solved.stdout) == "cost 5\nmap u 1\nmap v 2\n", || {
        format!("unexpected solve output {:?}", String::from_utf8_lossy(&solved.stdout))
    })?;
    Ok(format!("{} commands byte-identical across two runs", runs.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("canonical Min-Max orderings", c1_canonical_orderings, Duration::from_secs(1)),
        ("min cut equals brute force", c2_minmax_vs_bruteforce, Duration::from_secs(60)),
        ("cycle solver equals brute force", c3_cycle_vs_bruteforce, Duration::from_secs(30)),
        ("reflexive multipartite tournaments up to 5 vertices", c4_reflexive_mpt_exhaustive, Duration::from_secs(300)),
        ("TT4 minus 13 loop table", c5_tt4_minus_13_table, Duration::from_secs(1)),
        ("out-star and in-star loop family", c6_star_family, Duration::from_secs(10)),
        ("bipartite to digraph transformation", c7_bipartite_transformation, Duration::from_secs(30)),
        ("extension collapse", c8_extension_collapse, Duration::from_secs(30)),
        ("forbidden structure goldens", c9_structure_goldens, Duration::from_secs(1)),
        ("CLI determinism", c10_cli_determinism, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(msg) if elapsed <= *budget => Ok(msg),
            Ok(msg) => Err(format!("{msg}, but took {elapsed:.2?} (limit {budget:?})")),
            Err(e) => Err(e),
        };
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS  {name}: {msg} [{elapsed:.2?}]", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {msg} [{elapsed:.2?}]", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
