//! Contraction of vertex sets over an immutable base hypergraph.
//!
//! A [`ContractionState`] is the image of the base hypergraph under a
//! sequence of contractions `G / U`. Supervertices are identified by their
//! union-find root, which is always one of the original vertex ids. The base
//! hypergraph is borrowed, so cloning a state costs `O(n + m)` and never
//! copies edges.

use rand::Rng;

use crate::cut::{Cut, SidedCut};
use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, Hypergraph, VertexId};

#[derive(Debug, Clone)]
pub struct ContractionState<'g> {
    graph: &'g Hypergraph,
    parent: Vec<VertexId>,
    size: Vec<usize>,
    live: usize,
    // Indexed by vertex id; only meaningful at roots.
    merged_weight: Vec<Vec<u64>>,
    alive: Vec<bool>,
    alive_count: usize,
}

impl<'g> ContractionState<'g> {
    pub fn new(graph: &'g Hypergraph) -> Self {
        let n = graph.n();
        ContractionState {
            graph,
            parent: (0..n).collect(),
            size: vec![1; n],
            live: n,
            merged_weight: graph.vertex_weights().to_vec(),
            alive: vec![true; graph.m()],
            alive_count: graph.m(),
        }
    }

    pub fn graph(&self) -> &'g Hypergraph {
        self.graph
    }

    /// Number of supervertices.
    pub fn live_count(&self) -> usize {
        self.live
    }

    pub fn alive_count(&self) -> usize {
        self.alive_count
    }

    #[inline]
    pub fn is_alive(&self, e: EdgeId) -> bool {
        self.alive[e]
    }

    /// Supervertex containing `v`. Union by size keeps trees shallow, so no
    /// path compression is needed and lookups stay `&self`.
    #[inline]
    pub fn find(&self, mut v: VertexId) -> VertexId {
        while self.parent[v] != v {
            v = self.parent[v];
        }
        v
    }

    #[inline]
    pub fn is_root(&self, v: VertexId) -> bool {
        v < self.parent.len() && self.parent[v] == v
    }

    /// Live supervertices in increasing id order.
    pub fn supervertices(&self) -> Vec<VertexId> {
        (0..self.parent.len())
            .filter(|&v| self.parent[v] == v)
            .collect()
    }

    /// Merged weight vector of a supervertex.
    pub fn merged_weight(&self, root: VertexId) -> &[u64] {
        debug_assert!(self.is_root(root));
        &self.merged_weight[root]
    }

    /// Original vertices represented by `root`, sorted.
    pub fn members(&self, root: VertexId) -> Vec<VertexId> {
        (0..self.parent.len())
            .filter(|&v| self.find(v) == root)
            .collect()
    }

    /// Member lists of every supervertex, ordered by smallest member. Two
    /// states over the same base hypergraph have equal member lists iff they
    /// have the same supervertex partition.
    pub fn member_lists(&self) -> Vec<Vec<VertexId>> {
        let n = self.parent.len();
        let mut slot = vec![usize::MAX; n];
        let mut lists: Vec<Vec<VertexId>> = Vec::with_capacity(self.live);
        for v in 0..n {
            let r = self.find(v);
            if slot[r] == usize::MAX {
                slot[r] = lists.len();
                lists.push(Vec::new());
            }
            lists[slot[r]].push(v);
        }
        lists
    }

    /// Ids of hyperedges whose image still spans at least two supervertices.
    pub fn alive_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.alive
            .iter()
            .enumerate()
            .filter_map(|(e, &a)| a.then_some(e))
    }

    /// Distinct supervertices met by an edge, sorted.
    pub fn edge_image(&self, e: EdgeId) -> Vec<VertexId> {
        let mut img: Vec<VertexId> = self.graph.edge(e).iter().map(|&v| self.find(v)).collect();
        img.sort_unstable();
        img.dedup();
        img
    }

    /// `|e|` in the contracted hypergraph.
    pub fn image_size(&self, e: EdgeId) -> usize {
        self.edge_image(e).len()
    }

    /// Merges every supervertex meeting `vertices` into one. Returns the
    /// number of supervertices removed.
    pub fn contract(&mut self, vertices: &[VertexId]) -> Result<usize> {
        if vertices.is_empty() {
            return Err(Error::input("cannot contract an empty vertex set"));
        }
        if let Some(&v) = vertices.iter().find(|&&v| v >= self.parent.len()) {
            return Err(Error::input(format!("unknown vertex {v}")));
        }
        let mut roots: Vec<VertexId> = vertices.iter().map(|&v| self.find(v)).collect();
        roots.sort_unstable();
        roots.dedup();
        let removed = roots.len() - 1;
        if removed == 0 {
            return Ok(0);
        }
        let mut keep = roots[0];
        for &r in &roots[1..] {
            keep = self.union_roots(keep, r);
        }
        self.live -= removed;
        self.refresh_alive(keep);
        Ok(removed)
    }

    /// Contracts hyperedge `e`.
    pub fn contract_edge(&mut self, e: EdgeId) -> Result<usize> {
        if e >= self.graph.m() {
            return Err(Error::input(format!("unknown edge {e}")));
        }
        let members = self.graph.edge(e);
        self.contract(members)
    }

    fn union_roots(&mut self, a: VertexId, b: VertexId) -> VertexId {
        let (big, small) = if self.size[a] >= self.size[b] {
            (a, b)
        } else {
            (b, a)
        };
        self.parent[small] = big;
        self.size[big] += self.size[small];
        let moved = std::mem::take(&mut self.merged_weight[small]);
        for (acc, w) in self.merged_weight[big].iter_mut().zip(moved) {
            *acc += w;
        }
        big
    }

    fn refresh_alive(&mut self, merged: VertexId) {
        let graph = self.graph;
        for e in 0..graph.m() {
            if !self.alive[e] {
                continue;
            }
            let members = graph.edge(e);
            let first = self.find(members[0]);
            if first != merged && members.iter().all(|&v| self.find(v) != merged) {
                continue;
            }
            if members[1..].iter().all(|&v| self.find(v) == first) {
                self.alive[e] = false;
                self.alive_count -= 1;
            }
        }
    }

    /// `c_i(δ(v))` for every supervertex `v`, indexed by vertex id (zero at
    /// non-roots).
    pub fn degree_costs(&self, criterion: usize) -> Vec<u64> {
        let mut deg = vec![0u64; self.parent.len()];
        for e in self.alive_edges() {
            let c = self.graph.cost(e, criterion);
            for r in self.edge_image(e) {
                deg[r] += c;
            }
        }
        deg
    }

    /// Original-vertex indicator of the union of the given supervertices.
    pub fn side_mask(&self, side: &[VertexId]) -> Vec<bool> {
        let mut root_in = vec![false; self.parent.len()];
        for &r in side {
            root_in[self.find(r)] = true;
        }
        (0..self.parent.len())
            .map(|v| root_in[self.find(v)])
            .collect()
    }

    /// `δ(S)` for a nonempty proper subset `S` of the live supervertices.
    pub fn delta(&self, side: &[VertexId]) -> Result<Cut> {
        if side.is_empty() {
            return Err(Error::input("delta of the empty set"));
        }
        if let Some(&v) = side.iter().find(|&&v| !self.is_root(v)) {
            return Err(Error::input(format!("{v} is not a live supervertex")));
        }
        let mut distinct = side.to_vec();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() >= self.live {
            return Err(Error::input("delta of the whole vertex set"));
        }
        Ok(self.delta_lenient(&distinct))
    }

    /// `δ(S)` without the nonempty/proper checks; `δ(∅) = δ(V) = ∅`.
    pub fn delta_lenient(&self, side: &[VertexId]) -> Cut {
        let mut root_in = vec![false; self.parent.len()];
        for &r in side {
            root_in[self.find(r)] = true;
        }
        self.delta_by_root(&root_in)
    }

    /// `δ` of the side marked true in a root-indexed indicator.
    pub(crate) fn delta_by_root(&self, root_in: &[bool]) -> Cut {
        let ids = self
            .alive_edges()
            .filter(|&e| {
                let members = self.graph.edge(e);
                let first = root_in[self.find(members[0])];
                members[1..].iter().any(|&v| root_in[self.find(v)] != first)
            })
            .collect();
        Cut::from_sorted(ids)
    }

    /// All alive hyperedges as a cut.
    pub fn alive_cut(&self) -> Cut {
        Cut::from_sorted(self.alive_edges().collect())
    }

    /// `δ(S)` with its original-level witness side.
    pub fn sided(&self, side: &[VertexId]) -> SidedCut {
        SidedCut {
            cut: self.delta_lenient(side),
            side: self.side_mask(side),
        }
    }

    /// `δ(X)` for `X` uniform over all `2^|V|` subsets of the supervertices,
    /// including `∅` and `V`.
    pub fn random_subset_cut<R: Rng + ?Sized>(&self, rng: &mut R) -> SidedCut {
        let roots = self.supervertices();
        let pick = crate::sampling::random_subset(roots.len(), rng);
        let side: Vec<VertexId> = roots
            .into_iter()
            .zip(pick)
            .filter_map(|(r, p)| p.then_some(r))
            .collect();
        self.sided(&side)
    }

    /// `δ(X)` for `X` uniform over nonempty proper subsets of the
    /// supervertices. Needs at least two supervertices.
    pub fn random_proper_subset_cut<R: Rng + ?Sized>(&self, rng: &mut R) -> SidedCut {
        let roots = self.supervertices();
        let pick = crate::sampling::random_proper_subset(roots.len(), rng);
        let side: Vec<VertexId> = roots
            .into_iter()
            .zip(pick)
            .filter_map(|(r, p)| p.then_some(r))
            .collect();
        self.sided(&side)
    }

    /// Alive edge drawn with probability proportional to `weight(e)`.
    pub(crate) fn sample_alive_edge<R, F>(&self, rng: &mut R, mut weight: F) -> Option<EdgeId>
    where
        R: Rng + ?Sized,
        F: FnMut(EdgeId) -> u128,
    {
        let alive: Vec<EdgeId> = self.alive_edges().collect();
        let weights: Vec<u128> = alive.iter().map(|&e| weight(e)).collect();
        crate::sampling::sample_weighted(&weights, rng).map(|i| alive[i])
    }
}
