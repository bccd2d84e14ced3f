use super::{CostMatrix, Homomorphism};
use crate::digraph::{Decomposition, Digraph};
use crate::error::{Error, Result};

/// A target collapsed from an extension, with the cheapest representative of
/// every independent set for every input vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collapsed {
    pub base: Digraph,
    pub costs: CostMatrix,
    /// `representative[u][v]`: the member of the set replacing `v` that is
    /// cheapest for input vertex `u` (first one on ties).
    pub representative: Vec<Vec<usize>>,
}

impl Collapsed {
    /// Turns a homomorphism into the base digraph into one into the extension
    /// with the same cost.
    pub fn lift(&self, f: &Homomorphism) -> Homomorphism {
        let map = f
            .map
            .iter()
            .enumerate()
            .map(|(u, &v)| self.representative[u][v])
            .collect();
        Homomorphism { map, cost: f.cost }
    }
}

/// Undoes an extension: the base digraph is recovered from the arcs between
/// the independent sets, and sending `u` to base vertex `v` costs the least
/// cost of sending it to any member of the set replacing `v`.
pub fn collapse_extension(extended: &Digraph, decomposition: &Decomposition, costs: &CostMatrix) -> Result<Collapsed> {
    let m = extended.vertex_count();
    if decomposition.origin.len() != m {
        return Err(Error::InconsistentDecomposition(format!(
            "decomposition covers {} of {} vertices",
            decomposition.origin.len(),
            m
        )));
    }
    let b = decomposition.base_count();
    if let Some(&bad) = decomposition.origin.iter().find(|&&v| v >= b) {
        return Err(Error::IndexOutOfRange(bad));
    }
    let classes = decomposition.classes();
    if let Some(v) = classes.iter().position(Vec::is_empty) {
        return Err(Error::InconsistentDecomposition(format!(
            "no vertex replaces {}",
            decomposition.base_names[v]
        )));
    }
    costs.check_shape(costs.rows(), m)?;

    let mut base = Digraph::with_vertices(&decomposition.base_names)?;
    for (x, y) in extended.arcs() {
        let (bx, by) = (decomposition.origin[x], decomposition.origin[y]);
        if bx == by {
            return Err(Error::InconsistentDecomposition(format!(
                "arc {}->{} lies inside one independent set",
                extended.name(x),
                extended.name(y)
            )));
        }
        base.add_arc(bx, by)?;
    }
    for (bx, by) in base.arcs() {
        for &x in &classes[bx] {
            for &y in &classes[by] {
                if !extended.has_arc(x, y) {
                    return Err(Error::InconsistentDecomposition(format!(
                        "arc {}->{} missing between replaced sets",
                        extended.name(x),
                        extended.name(y)
                    )));
                }
            }
        }
    }

    let rows = costs.rows();
    let mut representative = vec![vec![0usize; b]; rows];
    let mut collapsed = CostMatrix::zeros(rows, b);
    for (u, reps) in representative.iter_mut().enumerate() {
        for (v, class) in classes.iter().enumerate() {
            let &best = class
                .iter()
                .min_by_key(|&&w| costs.get(u, w))
                .expect("classes are nonempty");
            reps[v] = best;
            collapsed.set(u, v, costs.get(u, best));
        }
    }
    Ok(Collapsed {
        base,
        costs: collapsed,
        representative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{extend, make_cycle, make_tt};
    use crate::solver::{is_homomorphism, solve_bruteforce, DEFAULT_NODE_BUDGET};

    #[test]
    fn min_over_the_replacing_set() {
        let (ext, dec) = extend(&make_tt(2).unwrap(), &[2, 1]).unwrap();
        let costs = CostMatrix::from_rows(vec![vec![4, 2, 7]]).unwrap();
        let c = collapse_extension(&ext, &dec, &costs).unwrap();
        assert_eq!(c.costs.row(0), &[2, 7]);
        assert_eq!(c.representative[0], vec![1, 2]);
        assert_eq!(c.base, make_tt(2).unwrap());
    }

    #[test]
    fn singleton_decomposition_keeps_costs() {
        let h = make_cycle(3).unwrap();
        let (ext, dec) = extend(&h, &[1, 1, 1]).unwrap();
        let costs = CostMatrix::from_rows(vec![vec![1, 2, 3], vec![-4, 5, 0]]).unwrap();
        let c = collapse_extension(&ext, &dec, &costs).unwrap();
        assert_eq!(c.costs, costs);
    }

    #[test]
    fn lifted_optimum_is_valid() {
        let (ext, dec) = extend(&make_cycle(3).unwrap(), &[2, 1, 3]).unwrap();
        let d = Digraph::numbered(3, &[(1, 2), (2, 3)]).unwrap();
        let costs = CostMatrix::from_fn(3, 6, |u, w| ((u * 5 + w * 3) % 7) as i64 - 3);
        let c = collapse_extension(&ext, &dec, &costs).unwrap();
        let small = solve_bruteforce(&d, &c.base, &c.costs, DEFAULT_NODE_BUDGET).unwrap();
        let big = solve_bruteforce(&d, &ext, &costs, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(small.cost(), big.cost());
        let lifted = c.lift(small.optimal().unwrap());
        assert!(is_homomorphism(&d, &ext, &lifted.map).unwrap());
        assert_eq!(costs.cost_of(&lifted.map).unwrap(), lifted.cost);
    }

    #[test]
    fn inconsistent_decompositions() {
        let (ext, dec) = extend(&make_tt(2).unwrap(), &[2, 1]).unwrap();
        let costs = CostMatrix::zeros(1, 3);
        let mut bad = dec.clone();
        bad.origin = vec![0, 1, 1];
        assert!(matches!(
            collapse_extension(&ext, &bad, &costs),
            Err(Error::InconsistentDecomposition(_))
        ));
        // only one of the two arcs 1.x -> 2 present
        let partial = Digraph::from_named_arcs(ext.names(), &[("1.1", "2")]).unwrap();
        assert!(collapse_extension(&partial, &dec, &costs).is_err());
        let mut short = dec;
        short.origin.pop();
        assert!(collapse_extension(&ext, &short, &costs).is_err());
    }
}
