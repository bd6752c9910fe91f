//! Vertex-weighted hypergraphs with several hyperedge-cost functions.

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// An immutable hypergraph on vertices `0..n`.
///
/// Every hyperedge carries `t_costs` non-negative integer costs and every
/// vertex carries `t_weights` non-negative integer weights. Hyperedge ids are
/// positions in `edges` and never change; parallel hyperedges keep distinct
/// ids. Construction guarantees that the total cost of every criterion and the
/// total weight of every weight function fit in a `u64`, so every subset sum
/// does too.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph {
    n: usize,
    t_costs: usize,
    t_weights: usize,
    edges: Vec<Vec<VertexId>>,
    edge_costs: Vec<Vec<u64>>,
    vertex_weights: Vec<Vec<u64>>,
    rank: usize,
}

impl Hypergraph {
    /// Builds a hypergraph, validating every structural invariant.
    ///
    /// Member lists are sorted. Hyperedges with fewer than two distinct
    /// vertices are rejected here; [`crate::instance`] strips singletons
    /// before calling this.
    pub fn new(
        n: usize,
        edges: Vec<Vec<VertexId>>,
        edge_costs: Vec<Vec<u64>>,
        vertex_weights: Vec<Vec<u64>>,
    ) -> Result<Self> {
        if edges.len() != edge_costs.len() {
            return Err(Error::input(format!(
                "{} edges but {} cost vectors",
                edges.len(),
                edge_costs.len()
            )));
        }
        if vertex_weights.len() != n {
            return Err(Error::input(format!(
                "{} vertices but {} weight vectors",
                n,
                vertex_weights.len()
            )));
        }
        let t_costs = edge_costs.first().map_or(0, Vec::len);
        let t_weights = vertex_weights.first().map_or(0, Vec::len);
        Self::with_dims(n, t_costs, t_weights, edges, edge_costs, vertex_weights)
    }

    /// Like [`Hypergraph::new`] but with explicit criterion counts, which is
    /// needed when there are no edges (or no vertices) to infer them from.
    pub fn with_dims(
        n: usize,
        t_costs: usize,
        t_weights: usize,
        mut edges: Vec<Vec<VertexId>>,
        edge_costs: Vec<Vec<u64>>,
        vertex_weights: Vec<Vec<u64>>,
    ) -> Result<Self> {
        if edges.len() != edge_costs.len() {
            return Err(Error::input("edge and cost list lengths differ"));
        }
        if vertex_weights.len() != n {
            return Err(Error::input("vertex weight list length differs from n"));
        }
        let mut rank = 2;
        for (id, e) in edges.iter_mut().enumerate() {
            e.sort_unstable();
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::input(format!("edge {id} repeats a vertex")));
            }
            if e.len() < 2 {
                return Err(Error::input(format!(
                    "edge {id} has fewer than two vertices"
                )));
            }
            if let Some(&v) = e.last() {
                if v >= n {
                    return Err(Error::input(format!(
                        "edge {id} references unknown vertex {v}"
                    )));
                }
            }
            rank = rank.max(e.len());
        }
        let mut totals = vec![0u64; t_costs];
        for (id, c) in edge_costs.iter().enumerate() {
            if c.len() != t_costs {
                return Err(Error::input(format!(
                    "edge {id} has {} costs, expected {t_costs}",
                    c.len()
                )));
            }
            for (tot, &x) in totals.iter_mut().zip(c) {
                *tot = tot
                    .checked_add(x)
                    .ok_or_else(|| Error::input("total edge cost overflows u64"))?;
            }
        }
        let mut wtotals = vec![0u64; t_weights];
        for (v, w) in vertex_weights.iter().enumerate() {
            if w.len() != t_weights {
                return Err(Error::input(format!(
                    "vertex {v} has {} weights, expected {t_weights}",
                    w.len()
                )));
            }
            for (tot, &x) in wtotals.iter_mut().zip(w) {
                *tot = tot
                    .checked_add(x)
                    .ok_or_else(|| Error::input("total vertex weight overflows u64"))?;
            }
        }
        Ok(Hypergraph {
            n,
            t_costs,
            t_weights,
            edges,
            edge_costs,
            vertex_weights,
            rank,
        })
    }

    /// Hypergraph with unit costs (one criterion) and unit weights (one
    /// weight function). Handy in tests and examples.
    pub fn unit(n: usize, edges: Vec<Vec<VertexId>>) -> Result<Self> {
        let m = edges.len();
        Self::with_dims(n, 1, 1, edges, vec![vec![1]; m], vec![vec![1]; n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Size of the largest hyperedge; an edgeless hypergraph reports 2.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn t_costs(&self) -> usize {
        self.t_costs
    }

    pub fn t_weights(&self) -> usize {
        self.t_weights
    }

    pub fn edges(&self) -> &[Vec<VertexId>] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &[VertexId] {
        &self.edges[e]
    }

    pub fn edge_costs(&self) -> &[Vec<u64>] {
        &self.edge_costs
    }

    pub fn vertex_weights(&self) -> &[Vec<u64>] {
        &self.vertex_weights
    }

    #[inline]
    pub fn cost(&self, e: EdgeId, criterion: usize) -> u64 {
        self.edge_costs[e][criterion]
    }

    #[inline]
    pub fn weight(&self, v: VertexId, criterion: usize) -> u64 {
        self.vertex_weights[v][criterion]
    }

    /// Same structure and costs with a different vertex-weight annotation.
    pub fn with_vertex_weights(&self, vertex_weights: Vec<Vec<u64>>) -> Result<Self> {
        let t_weights = vertex_weights.first().map_or(0, Vec::len);
        Self::with_dims(
            self.n,
            self.t_costs,
            t_weights,
            self.edges.clone(),
            self.edge_costs.clone(),
            vertex_weights,
        )
    }

    pub(crate) fn check_cost_criterion(&self, i: usize) -> Result<()> {
        if i >= self.t_costs {
            return Err(Error::input(format!(
                "cost criterion {i} out of range (t_costs = {})",
                self.t_costs
            )));
        }
        Ok(())
    }

    pub(crate) fn check_weight_criterion(&self, i: usize) -> Result<()> {
        if i >= self.t_weights {
            return Err(Error::input(format!(
                "weight criterion {i} out of range (t_weights = {})",
                self.t_weights
            )));
        }
        Ok(())
    }
}
