//! Canonical cuts, k-partitions, and cost evaluation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, Hypergraph, VertexId};

/// A set of hyperedge ids, kept sorted and deduplicated so that equality of
/// cuts is equality of the id lists.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cut {
    edge_ids: Vec<EdgeId>,
}

impl Cut {
    pub fn new(mut edge_ids: Vec<EdgeId>) -> Self {
        edge_ids.sort_unstable();
        edge_ids.dedup();
        Cut { edge_ids }
    }

    pub fn empty() -> Self {
        Cut::default()
    }

    pub fn edge_ids(&self) -> &[EdgeId] {
        &self.edge_ids
    }

    pub fn len(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edge_ids.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edge_ids.binary_search(&e).is_ok()
    }

    /// Builds a cut from already-sorted unique ids without re-sorting.
    pub(crate) fn from_sorted(edge_ids: Vec<EdgeId>) -> Self {
        debug_assert!(edge_ids.windows(2).all(|w| w[0] < w[1]));
        Cut { edge_ids }
    }

    pub fn check_in(&self, g: &Hypergraph) -> Result<()> {
        match self.edge_ids.last() {
            Some(&e) if e >= g.m() => Err(Error::input(format!(
                "edge id {e} out of range (m = {})",
                g.m()
            ))),
            _ => Ok(()),
        }
    }
}

impl FromIterator<EdgeId> for Cut {
    fn from_iter<I: IntoIterator<Item = EdgeId>>(iter: I) -> Self {
        Cut::new(iter.into_iter().collect())
    }
}

/// `c_i(F)`: exact total cost of a cut under one criterion.
pub fn cut_cost(g: &Hypergraph, cut: &Cut, criterion: usize) -> Result<u64> {
    g.check_cost_criterion(criterion)?;
    cut.check_in(g)?;
    // Totals fit in u64 by construction of the hypergraph.
    Ok(cut.edge_ids.iter().map(|&e| g.cost(e, criterion)).sum())
}

/// Costs of a cut under every criterion, in criterion order.
pub fn cost_vector(g: &Hypergraph, cut: &Cut) -> Result<Vec<u64>> {
    cut.check_in(g)?;
    let mut out = vec![0u64; g.t_costs()];
    for &e in &cut.edge_ids {
        for (acc, &c) in out.iter_mut().zip(&g.edge_costs()[e]) {
            *acc += c;
        }
    }
    Ok(out)
}

/// Edges crossing the bipartition given by `side` (indexed by original
/// vertex id). An empty or full side yields the empty cut.
pub fn delta_of_side(g: &Hypergraph, side: &[bool]) -> Cut {
    debug_assert_eq!(side.len(), g.n());
    let ids = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| {
            let first = side[e[0]];
            e.iter().any(|&v| side[v] != first)
        })
        .map(|(id, _)| id)
        .collect();
    Cut::from_sorted(ids)
}

/// A cut returned together with the vertex side `X` (indexed by original
/// vertex id) that produced it, so callers can tell `δ(∅)`/`δ(V)` apart from
/// a genuine empty cut and can audit the witness.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SidedCut {
    pub cut: Cut,
    pub side: Vec<bool>,
}

impl SidedCut {
    /// True when the side is a nonempty proper subset of the vertices.
    pub fn is_proper(&self) -> bool {
        self.side.iter().any(|&b| b) && self.side.iter().any(|&b| !b)
    }

    /// The cut, or `None` when the side was empty or everything.
    pub fn proper_cut(self) -> Option<Cut> {
        if self.is_proper() {
            Some(self.cut)
        } else {
            None
        }
    }
}

/// A labelling of every vertex with a part in `0..k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct KPartition {
    assignment: Vec<usize>,
    k: usize,
}

impl KPartition {
    pub fn new(assignment: Vec<usize>, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::input("k must be positive"));
        }
        if let Some(&bad) = assignment.iter().find(|&&l| l >= k) {
            return Err(Error::input(format!(
                "label {bad} out of range for k = {k}"
            )));
        }
        Ok(KPartition { assignment, k })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn label(&self, v: VertexId) -> usize {
        self.assignment[v]
    }

    /// A proper k-partition uses every label at least once.
    pub fn is_proper(&self) -> bool {
        let mut seen = vec![false; self.k];
        for &l in &self.assignment {
            seen[l] = true;
        }
        seen.into_iter().all(|s| s)
    }

    /// Total weight per part under one weight function.
    pub fn part_weights(&self, g: &Hypergraph, weight: usize) -> Vec<u64> {
        let mut out = vec![0u64; self.k];
        for (v, &l) in self.assignment.iter().enumerate() {
            out[l] += g.weight(v, weight);
        }
        out
    }
}

/// `δ(X)` of a k-partition: hyperedges whose vertices carry at least two labels.
pub fn delta_partition(g: &Hypergraph, x: &KPartition) -> Result<Cut> {
    if x.assignment.len() != g.n() {
        return Err(Error::input(format!(
            "partition labels {} vertices, hypergraph has {}",
            x.assignment.len(),
            g.n()
        )));
    }
    let ids = g
        .edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| {
            let l = x.assignment[e[0]];
            e.iter().any(|&v| x.assignment[v] != l)
        })
        .map(|(id, _)| id)
        .collect();
    Ok(Cut::from_sorted(ids))
}
