//! Test-instance generators.

use rand::seq::index;
use rand::Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, Hypergraph, VertexId};
use crate::sampling::rng_from_seed;

/// Graph with hubs `u = 0`, `v = 1` joined by `t` internally disjoint paths.
#[derive(Debug, Clone)]
pub struct LowerBoundInstance {
    pub graph: Hypergraph,
    pub paths: Vec<Vec<EdgeId>>,
    pub u: VertexId,
    pub v: VertexId,
}

impl LowerBoundInstance {
    /// Number of cuts that take exactly one edge from every path.
    pub fn one_edge_per_path_count(&self) -> u128 {
        self.paths.iter().map(|p| p.len() as u128).product()
    }

    /// Every cut taking exactly one edge from each path, as sorted id lists.
    pub fn one_edge_per_path_cuts(&self) -> Vec<Vec<EdgeId>> {
        let mut out: Vec<Vec<EdgeId>> = vec![Vec::new()];
        for p in &self.paths {
            out = out
                .into_iter()
                .flat_map(|pre| {
                    p.iter().map(move |&e| {
                        let mut v = pre.clone();
                        v.push(e);
                        v
                    })
                })
                .collect();
        }
        for c in &mut out {
            c.sort_unstable();
        }
        out
    }
}

/// The many-pareto-cuts family on `n ≥ t + 2` vertices with `t` criteria.
///
/// The `n − 2` non-hub vertices are spread over `t` paths, so each path has at
/// least `⌊(n−2)/t⌋ + 1` edges. An edge on path `i` costs `t + 1` under
/// criterion `i` and `1` under every other criterion (the rational costs
/// `1` and `1/(t+1)` scaled by `t + 1`). No vertex weights are attached.
pub fn gen_lower_bound_instance(n: usize, t: usize) -> Result<LowerBoundInstance> {
    if t == 0 {
        return Err(Error::input("t must be positive"));
    }
    if n < t + 2 {
        return Err(Error::input(format!(
            "n = {n} must be at least t + 2 = {}",
            t + 2
        )));
    }
    let inner = n - 2;
    let base = inner / t;
    let extra = inner % t;
    let (u, v) = (0, 1);
    let mut next = 2;
    let mut edges = Vec::new();
    let mut costs = Vec::new();
    let mut paths = Vec::with_capacity(t);
    for i in 0..t {
        let len = base + usize::from(i < extra);
        let mut prev = u;
        let mut path = Vec::with_capacity(len + 1);
        for _ in 0..len {
            path.push(edges.len());
            edges.push(vec![prev, next]);
            prev = next;
            next += 1;
        }
        path.push(edges.len());
        edges.push(vec![prev, v]);
        let mut c = vec![1u64; t];
        c[i] = t as u64 + 1;
        costs.extend(std::iter::repeat_n(c, path.len()));
        paths.push(path);
    }
    let graph = Hypergraph::with_dims(n, t, 0, edges, costs, vec![vec![]; n])?;
    Ok(LowerBoundInstance { graph, paths, u, v })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomInstanceParams {
    pub n: usize,
    pub m: usize,
    pub rank: usize,
    pub t_costs: usize,
    pub t_weights: usize,
    pub max_cost: u64,
    pub max_weight: u64,
    /// Draw weights from `1..=max_weight` instead of `0..=max_weight`.
    pub positive_weights: bool,
}

impl Default for RandomInstanceParams {
    fn default() -> Self {
        RandomInstanceParams {
            n: 6,
            m: 8,
            rank: 2,
            t_costs: 2,
            t_weights: 0,
            max_cost: 8,
            max_weight: 4,
            positive_weights: false,
        }
    }
}

/// Random hypergraph: `m` hyperedges with sizes uniform in `2..=rank` over
/// distinct vertices; costs and weights uniform in their ranges. The result
/// may be disconnected.
pub fn gen_random_instance(p: &RandomInstanceParams, seed: u64) -> Result<Hypergraph> {
    if p.rank < 2 {
        return Err(Error::input("rank must be at least 2"));
    }
    if p.n < p.rank {
        return Err(Error::input(format!(
            "n = {} is smaller than rank = {}",
            p.n, p.rank
        )));
    }
    if p.positive_weights && p.t_weights > 0 && p.max_weight == 0 {
        return Err(Error::input("positive weights need max_weight >= 1"));
    }
    let mut rng = rng_from_seed(seed);
    let mut edges = Vec::with_capacity(p.m);
    let mut costs = Vec::with_capacity(p.m);
    for _ in 0..p.m {
        let size = rng.gen_range(2..=p.rank);
        edges.push(index::sample(&mut rng, p.n, size).into_vec());
        costs.push(
            (0..p.t_costs)
                .map(|_| rng.gen_range(0..=p.max_cost))
                .collect(),
        );
    }
    let lo = u64::from(p.positive_weights);
    let weights = (0..p.n)
        .map(|_| {
            (0..p.t_weights)
                .map(|_| rng.gen_range(lo..=p.max_weight))
                .collect()
        })
        .collect();
    Hypergraph::with_dims(p.n, p.t_costs, p.t_weights, edges, costs, weights)
}

/// Four vertices, two cost functions, with one pareto-optimal cut that is
/// not a parametric min-cut (costs (7,3), above the segment from (1,4) to
/// (8,1)) and one multiobjective min-cut that is not pareto-optimal (costs
/// (3,4), dominated by (1,4)).
pub fn containment_witness() -> Hypergraph {
    Hypergraph::with_dims(
        4,
        2,
        0,
        vec![vec![2, 3], vec![1, 3], vec![2, 3], vec![0, 3], vec![1, 2]],
        vec![vec![4, 0], vec![0, 3], vec![3, 0], vec![3, 4], vec![1, 1]],
        vec![vec![]; 4],
    )
    .expect("valid fixed instance")
}
