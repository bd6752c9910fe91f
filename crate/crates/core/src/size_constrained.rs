//! Size-constrained min-k-cut by weight-oblivious non-uniform contraction.
//!
//! The algorithm never reads vertex weights: a single run returns any fixed
//! `s`-size-constrained min-k-cut, for every vertex-weight function at once,
//! with probability at least [`success_floor_size`].

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::index::sample;
use rand::Rng;

use crate::analysis::binomial::{big_to_rational, binomial, reciprocal};
use crate::contraction::ContractionState;
use crate::cut::{Cut, KPartition};
use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, Hypergraph, VertexId};
use crate::sampling::sample_weighted_big;

/// Lower bounds `s_1 ≤ … ≤ s_k` on part weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SizeVector(Vec<u64>);

impl SizeVector {
    /// Sorts `sizes` into non-decreasing order. Needs `k ≥ 2` positive entries.
    pub fn new(mut sizes: Vec<u64>) -> Result<Self> {
        if sizes.len() < 2 {
            return Err(Error::input("k must be at least 2"));
        }
        if sizes.contains(&0) {
            return Err(Error::input("sizes must be positive"));
        }
        sizes.sort_unstable();
        Ok(SizeVector(sizes))
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn sizes(&self) -> &[u64] {
        &self.0
    }

    /// `σ_j = s_1 + … + s_j`; `σ_0 = 0`.
    pub fn sigma(&self, j: usize) -> u64 {
        self.0[..j].iter().sum()
    }

    /// `max(2σ_{k−1}, σ_k)`, the base-case size.
    pub fn base_size(&self) -> u64 {
        let k = self.k();
        (2 * self.sigma(k - 1)).max(self.sigma(k))
    }

    /// Whether the part weights of `x` meet the bounds in some order of
    /// the parts: sorted part weights dominate the sorted sizes entrywise.
    pub fn admits(&self, part_weights: &[u64]) -> bool {
        let mut w = part_weights.to_vec();
        w.sort_unstable();
        w.len() == self.0.len() && w.iter().zip(&self.0).all(|(a, b)| a >= b)
    }
}

/// `C(n−|e|, σ)/C(n, σ)`.
pub fn alpha_size(n: u64, edge_size: u64, sigma: u64) -> Result<BigRational> {
    if n < 2 || edge_size < 2 || edge_size > n || sigma == 0 {
        return Err(Error::input(format!(
            "alpha needs n >= 2, 2 <= |e| <= n, sigma >= 1 (got {n}, {edge_size}, {sigma})"
        )));
    }
    Ok(big_to_rational(&binomial(n - edge_size, sigma)) / big_to_rational(&binomial(n, sigma)))
}

/// `k^{−m}` for `n ≤ m`, else `(k^m · n · C(n, 2σ_{k−1}))^{-1}`, with
/// `m = max(2σ_{k−1}, σ_k)`.
pub fn success_floor_size(n: u64, s: &SizeVector) -> Result<BigRational> {
    let k = s.k() as u64;
    if n < k {
        return Err(Error::input(format!("n = {n} is smaller than k = {k}")));
    }
    let m = s.base_size();
    let km = BigUint::from(k).pow(m as u32);
    if n <= m {
        return Ok(reciprocal(&km));
    }
    Ok(reciprocal(&(km * n * binomial(n, 2 * s.sigma(s.k() - 1)))))
}

/// Single size vector covering several weight functions: the column-wise
/// maximum of the rows, sorted.
pub fn multi_weight_reduction(rows: &[Vec<u64>]) -> Result<SizeVector> {
    let first = rows
        .first()
        .ok_or_else(|| Error::input("no size rows given"))?;
    if rows.iter().any(|r| r.len() != first.len()) {
        return Err(Error::input("size rows differ in length"));
    }
    let cols = (0..first.len())
        .map(|i| rows.iter().map(|r| r[i]).max().unwrap_or(0))
        .collect();
    SizeVector::new(cols)
}

/// One contraction performed by [`size_constrained_min_k_cut`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceStep {
    pub edge: EdgeId,
    /// Supervertices before the contraction.
    pub live: usize,
    /// Supervertices the hyperedge touched.
    pub image_size: usize,
}

/// A returned k-cut. `partition` is the labelling it was read from, or
/// `None` when the cut is the whole alive edge set of some state. `trace`
/// lists the contractions that led to the returning state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KCutOutcome {
    pub cut: Cut,
    pub partition: Option<KPartition>,
    pub trace: Vec<TraceStep>,
}

fn labelled(
    state: &ContractionState<'_>,
    roots: &[VertexId],
    labels: &[usize],
    k: usize,
) -> KCutOutcome {
    let g = state.graph();
    let mut by_root = vec![0usize; g.n()];
    for (&r, &l) in roots.iter().zip(labels) {
        by_root[r] = l;
    }
    let assignment: Vec<usize> = (0..g.n()).map(|v| by_root[state.find(v)]).collect();
    let x = KPartition::new(assignment, k).expect("labels below k");
    let cut = crate::cut::delta_partition(g, &x).expect("full-length labelling");
    KCutOutcome {
        cut,
        partition: Some(x),
        trace: Vec::new(),
    }
}

/// One run of the size-constrained contraction.
///
/// With `n` live supervertices and `m = max(2σ_{k−1}, σ_k)`: if `n ≤ m`,
/// every supervertex gets an independent uniform label and `δ(X)` is
/// returned. Otherwise a uniform `2σ_{k−1}`-subset `S` gets random labels,
/// the rest joins the last part, and `R` is `δ(X)` if all labels occur or
/// the whole edge set if not. If every `α_e` is zero, `R` is returned;
/// otherwise `R` is returned with probability `1/n` and the algorithm
/// continues on `G/e` for `e` drawn proportionally to `α_e` (times `c(e)`
/// when `cost` is given).
pub fn size_constrained_min_k_cut<R: Rng + ?Sized>(
    g: &Hypergraph,
    s: &SizeVector,
    cost: Option<usize>,
    rng: &mut R,
) -> Result<KCutOutcome> {
    let k = s.k();
    if g.n() < k {
        return Err(Error::Infeasible(format!(
            "{} vertices cannot form {k} nonempty parts",
            g.n()
        )));
    }
    if let Some(c) = cost {
        g.check_cost_criterion(c)?;
    }
    let sigma = s.sigma(k - 1);
    let base = s.base_size();
    let mut state = ContractionState::new(g);
    let mut trace = Vec::new();
    loop {
        let n = state.live_count();
        let roots = state.supervertices();
        if n as u64 <= base {
            let labels: Vec<usize> = (0..n).map(|_| rng.gen_range(0..k)).collect();
            return Ok(KCutOutcome {
                trace,
                ..labelled(&state, &roots, &labels, k)
            });
        }
        let chosen = sample(rng, n, (2 * sigma) as usize);
        let mut labels = vec![k - 1; n];
        for i in chosen.iter() {
            labels[i] = rng.gen_range(0..k);
        }
        let mut used = vec![false; k];
        for &l in &labels {
            used[l] = true;
        }
        let mut r = if used.iter().all(|&u| u) {
            labelled(&state, &roots, &labels, k)
        } else {
            KCutOutcome {
                cut: state.alive_cut(),
                partition: None,
                trace: Vec::new(),
            }
        };
        let alive: Vec<_> = state.alive_edges().collect();
        let weights: Vec<BigUint> = alive
            .iter()
            .map(|&e| {
                let a = binomial((n - state.image_size(e)) as u64, sigma);
                match cost {
                    Some(c) => a * g.cost(e, c),
                    None => a,
                }
            })
            .collect();
        if weights.iter().all(Zero::is_zero) || rng.gen_range(0..n) == 0 {
            r.trace = trace;
            return Ok(r);
        }
        let pick = sample_weighted_big(&weights, rng).expect("positive mass");
        let e = alive[pick];
        trace.push(TraceStep {
            edge: e,
            live: n,
            image_size: state.image_size(e),
        });
        state.contract_edge(e).expect("edge of the base graph");
    }
}
