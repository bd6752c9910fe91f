//! Min-cuts under node-weight budgets.
//!
//! A vertex is feasible for `b` when `w_i(v) ≤ b_i` for every weight
//! function, and a set is feasible when its summed weights are. A cut is
//! admissible when it is `δ(X)` for a nonempty proper feasible `X`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use crate::analysis::binomial::{binomial, reciprocal};
use crate::contraction::ContractionState;
use crate::cut::{Cut, SidedCut};
use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, Hypergraph, VertexId};
use crate::sampling::weighted_permutation;

/// One budget per vertex-weight function.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NodeBudgetVector(Vec<u64>);

impl NodeBudgetVector {
    pub fn new(g: &Hypergraph, budgets: Vec<u64>) -> Result<Self> {
        if budgets.len() != g.t_weights() {
            return Err(Error::input(format!(
                "{} budgets given, expected one per weight function ({})",
                budgets.len(),
                g.t_weights()
            )));
        }
        Ok(NodeBudgetVector(budgets))
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    pub fn admits(&self, weights: &[u64]) -> bool {
        self.0.iter().zip(weights).all(|(b, w)| w <= b)
    }

    /// Whether the original vertices marked in `side` form a feasible set.
    pub fn admits_set(&self, g: &Hypergraph, side: &[bool]) -> bool {
        (0..self.0.len()).all(|i| {
            let total: u64 = (0..g.n())
                .filter(|&v| side[v])
                .map(|v| g.weight(v, i))
                .sum();
            total <= self.0[i]
        })
    }
}

/// Feasibility of the live supervertices of a contraction state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityView {
    /// Feasible supervertices (the set `U`).
    pub feasible: Vec<VertexId>,
    pub infeasible: Vec<VertexId>,
    /// Whether `U` itself is a feasible set.
    pub feasible_as_set: bool,
}

impl FeasibilityView {
    pub fn of(state: &ContractionState<'_>, b: &NodeBudgetVector) -> Self {
        let (feasible, infeasible): (Vec<_>, Vec<_>) = state
            .supervertices()
            .into_iter()
            .partition(|&v| b.admits(state.merged_weight(v)));
        let feasible_as_set = (0..b.0.len()).all(|i| {
            feasible
                .iter()
                .map(|&v| state.merged_weight(v)[i])
                .sum::<u64>()
                <= b.0[i]
        });
        FeasibilityView {
            feasible,
            infeasible,
            feasible_as_set,
        }
    }
}

/// Merges every infeasible supervertex into one. Returns whether anything
/// was merged.
pub fn contract_infeasible(state: &mut ContractionState<'_>, b: &NodeBudgetVector) -> bool {
    let view = FeasibilityView::of(state, b);
    if view.infeasible.len() < 2 {
        return false;
    }
    state
        .contract(&view.infeasible)
        .expect("roots of the same state");
    true
}

/// Contraction for constant rank: merge infeasible supervertices, stop at
/// `r+1` supervertices with a uniformly random subset cut, otherwise
/// contract an alive hyperedge drawn proportionally to `c`. With no alive
/// cost left the random-subset step happens right away.
pub fn nb_bmulti_constant_rank<R: Rng + ?Sized>(
    g: &Hypergraph,
    cost: usize,
    b: &NodeBudgetVector,
    rng: &mut R,
) -> Result<SidedCut> {
    g.check_cost_criterion(cost)?;
    let threshold = g.rank() + 1;
    let mut state = ContractionState::new(g);
    loop {
        contract_infeasible(&mut state, b);
        if state.live_count() <= threshold {
            return Ok(state.random_subset_cut(rng));
        }
        match state.sample_alive_edge(rng, |e| u128::from(g.cost(e, cost))) {
            Some(e) => {
                state.contract_edge(e).expect("edge of the base graph");
            }
            None => return Ok(state.random_subset_cut(rng)),
        }
    }
}

/// Distinct merged weights under each weight function, one list per function.
fn threshold_values(state: &ContractionState<'_>) -> Vec<Vec<u64>> {
    let roots = state.supervertices();
    (0..state.graph().t_weights())
        .map(|i| {
            let mut v: Vec<u64> = roots.iter().map(|&r| state.merged_weight(r)[i]).collect();
            v.sort_unstable();
            v.dedup();
            v
        })
        .collect()
}

fn for_each_tuple(lists: &[Vec<u64>], f: &mut impl FnMut(&[u64])) {
    fn rec(lists: &[Vec<u64>], cur: &mut Vec<u64>, f: &mut impl FnMut(&[u64])) {
        match lists.split_first() {
            None => f(cur),
            Some((head, tail)) => {
                for &x in head {
                    cur.push(x);
                    rec(tail, cur, f);
                    cur.pop();
                }
            }
        }
    }
    rec(lists, &mut Vec::new(), f);
}

/// Budget-free enumeration for constant rank. Returns at most `r·n^t` cuts
/// and contains any fixed node-budgeted multiobjective min-cut with
/// probability `Ω(2^{−r} n^{−2})`.
///
/// One cost-weighted permutation `π` of the hyperedges is drawn (zero-cost
/// hyperedges go last in random order). For each `n' = 2..n` the hypergraph
/// is contracted along `π` to at most `n'` supervertices; then for every
/// threshold tuple taken from the realised supervertex weights, all
/// supervertices exceeding a threshold are merged. A merged hypergraph with
/// between 2 and `r+1` supervertices that was not seen before contributes
/// the cut of a random nonempty proper subset of its supervertices.
pub fn nb_multi_enum_constant_rank<R: Rng + ?Sized>(
    g: &Hypergraph,
    cost: usize,
    rng: &mut R,
) -> Result<BTreeSet<Cut>> {
    g.check_cost_criterion(cost)?;
    let n = g.n();
    let r = g.rank();
    let items: Vec<EdgeId> = (0..g.m()).collect();
    let weights: Vec<u64> = items.iter().map(|&e| g.cost(e, cost)).collect();
    let pi = weighted_permutation(&items, &weights, rng);

    let mut snapshots = Vec::with_capacity(n);
    let mut state = ContractionState::new(g);
    let mut next = pi.iter();
    for target in (2..=n).rev() {
        while state.live_count() > target {
            match next.by_ref().find(|&&e| state.is_alive(e)) {
                Some(&e) => {
                    state.contract_edge(e).expect("edge of the base graph");
                }
                None => break,
            }
        }
        snapshots.push(state.clone());
    }
    snapshots.reverse();

    let mut seen: BTreeSet<Vec<Vec<VertexId>>> = BTreeSet::new();
    let mut out = BTreeSet::new();
    for g1 in &snapshots {
        let lists = threshold_values(g1);
        let roots = g1.supervertices();
        for_each_tuple(&lists, &mut |x| {
            let heavy: Vec<VertexId> = roots
                .iter()
                .copied()
                .filter(|&v| g1.merged_weight(v).iter().zip(x).any(|(w, xi)| w > xi))
                .collect();
            let mut g2 = g1.clone();
            if heavy.len() >= 2 {
                g2.contract(&heavy).expect("roots of the same state");
            }
            let live = g2.live_count();
            if live >= 2 && live <= r + 1 && seen.insert(g2.member_lists()) {
                out.insert(g2.random_proper_subset_cut(rng).cut);
            }
        });
    }
    Ok(out)
}

/// `⌈2^{r+1}·C(n,2)·ln n⌉` (at least 1) runs of
/// [`nb_multi_enum_constant_rank`].
pub fn default_nb_enum_repetitions(n: usize, r: usize) -> u64 {
    let nf = n as f64;
    let x = 2f64.powi(r as i32 + 1) * nf * (nf - 1.0) / 2.0 * nf.ln();
    if x.is_finite() && x < u64::MAX as f64 {
        x.ceil().max(1.0) as u64
    } else {
        u64::MAX
    }
}

/// Union of `repetitions` seeded runs of [`nb_multi_enum_constant_rank`].
pub fn enumerate_node_budgeted<R: Rng + ?Sized>(
    g: &Hypergraph,
    cost: usize,
    repetitions: u64,
    rng: &mut R,
) -> Result<BTreeSet<Cut>> {
    use rayon::prelude::*;
    if repetitions == 0 {
        return Err(Error::input("repetitions must be at least 1"));
    }
    g.check_cost_criterion(cost)?;
    let base: u64 = rng.gen();
    let sets: Vec<BTreeSet<Cut>> = (0..repetitions)
        .into_par_iter()
        .map(|i| nb_multi_enum_constant_rank(g, cost, &mut crate::sampling::trial_rng(base, i)))
        .collect::<Result<_>>()?;
    Ok(sets.into_iter().flatten().collect())
}

/// Non-uniform contraction for the unbudgeted min-cut: contract an alive
/// hyperedge drawn proportionally to `β_e = (|V|−|e|)/|V| · c(e)` until every
/// `β_e` is zero, then return all alive hyperedges. Any fixed min-cut comes
/// out with probability at least `1/C(n,2)`.
pub fn hypergraph_min_cut<R: Rng + ?Sized>(
    g: &Hypergraph,
    cost: usize,
    rng: &mut R,
) -> Result<SidedCut> {
    g.check_cost_criterion(cost)?;
    if g.n() < 2 {
        return Err(Error::input("min-cut needs at least two vertices"));
    }
    let mut state = ContractionState::new(g);
    Ok(hypergraph_min_cut_from(&mut state, cost, rng))
}

pub(crate) fn hypergraph_min_cut_from<R: Rng + ?Sized>(
    state: &mut ContractionState<'_>,
    cost: usize,
    rng: &mut R,
) -> SidedCut {
    let g = state.graph();
    loop {
        let live = state.live_count();
        let snapshot = &*state;
        let beta =
            |e: EdgeId| ((live - snapshot.image_size(e)) as u128) * u128::from(g.cost(e, cost));
        match state.sample_alive_edge(rng, beta) {
            Some(e) => {
                state.contract_edge(e).expect("edge of the base graph");
            }
            None => {
                // Every alive hyperedge with positive cost spans all
                // supervertices, so any single supervertex witnesses the
                // alive set up to zero-cost hyperedges.
                let roots = state.supervertices();
                let side = &roots[..roots.len().min(1)];
                let mut sided = state.sided(side);
                sided.cut = state.alive_cut();
                return sided;
            }
        }
    }
}

/// Result of [`nb_bmulti_arbitrary_rank`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NbOutcome {
    /// A cut with the side it was read from.
    Cut(SidedCut),
    /// Every alive hyperedge of a state in which all `α_e` vanished and the
    /// feasible vertices do not form a feasible set.
    AllEdges(Cut),
    /// No vertex satisfies the budgets.
    Infeasible,
}

impl NbOutcome {
    pub fn cut(&self) -> Option<&Cut> {
        match self {
            NbOutcome::Cut(s) => Some(&s.cut),
            NbOutcome::AllEdges(c) => Some(c),
            NbOutcome::Infeasible => None,
        }
    }

    pub fn is_infeasible(&self) -> bool {
        matches!(self, NbOutcome::Infeasible)
    }
}

fn alpha_numerators(
    state: &ContractionState<'_>,
    feasible: &[VertexId],
    cost: usize,
) -> Vec<(EdgeId, u128)> {
    let g = state.graph();
    let mut is_u = vec![false; g.n()];
    for &v in feasible {
        is_u[v] = true;
    }
    state
        .alive_edges()
        .map(|e| {
            let inside = state.edge_image(e).into_iter().filter(|&v| is_u[v]).count();
            (
                e,
                ((feasible.len() - inside) as u128) * u128::from(g.cost(e, cost)),
            )
        })
        .collect()
}

/// Contraction for arbitrary rank.
///
/// With `U` the feasible supervertices, hyperedges are drawn proportionally
/// to `α_e = |U∖e|/|U| · c(e)`, and infeasible supervertices are merged after
/// every step. Once `U` is a feasible set the remaining work is handed to
/// [`hypergraph_min_cut`]. When every `α_e` vanishes the result is `δ(U)` if
/// `U` is a feasible proper set, otherwise all alive hyperedges.
pub fn nb_bmulti_arbitrary_rank<R: Rng + ?Sized>(
    g: &Hypergraph,
    cost: usize,
    b: &NodeBudgetVector,
    rng: &mut R,
) -> Result<NbOutcome> {
    g.check_cost_criterion(cost)?;
    let mut state = ContractionState::new(g);
    loop {
        let view = FeasibilityView::of(&state, b);
        if view.feasible.is_empty() {
            return Ok(NbOutcome::Infeasible);
        }
        let alphas = alpha_numerators(&state, &view.feasible, cost);
        if alphas.iter().all(|&(_, a)| a == 0) {
            if view.feasible_as_set && !view.infeasible.is_empty() {
                return Ok(NbOutcome::Cut(state.sided(&view.feasible)));
            }
            return Ok(NbOutcome::AllEdges(state.alive_cut()));
        }
        if contract_infeasible(&mut state, b) {
            continue;
        }
        if view.feasible_as_set {
            return Ok(NbOutcome::Cut(hypergraph_min_cut_from(
                &mut state, cost, rng,
            )));
        }
        let weights: Vec<u128> = alphas.iter().map(|&(_, a)| a).collect();
        let pick = crate::sampling::sample_weighted(&weights, rng).expect("positive mass");
        state
            .contract_edge(alphas[pick].0)
            .expect("edge of the base graph");
    }
}

/// `Σ_e α_e` on `g` itself, as an exact rational. Infeasible instances
/// (no feasible vertex) give an error.
pub fn alpha_sum(g: &Hypergraph, cost: usize, b: &NodeBudgetVector) -> Result<BigRational> {
    g.check_cost_criterion(cost)?;
    let state = ContractionState::new(g);
    let view = FeasibilityView::of(&state, b);
    if view.feasible.is_empty() {
        return Err(Error::Infeasible("no vertex satisfies the budgets".into()));
    }
    let total: u128 = alpha_numerators(&state, &view.feasible, cost)
        .iter()
        .map(|&(_, a)| a)
        .sum();
    Ok(BigRational::new(
        BigInt::from(total),
        BigInt::from(view.feasible.len()),
    ))
}

/// `1/(2^{r+1}·C(n,2))`.
pub fn success_floor_node(n: u64, r: u64) -> Result<BigRational> {
    if n < 2 {
        return Err(Error::input("n must be at least 2"));
    }
    let den = (num_bigint::BigUint::from(1u8) << ((r + 1) as usize)) * binomial(n, 2);
    Ok(reciprocal(&den))
}

/// `1/C(n,2)`, the floor for [`hypergraph_min_cut`].
pub fn success_floor_min_cut(n: u64) -> Result<BigRational> {
    if n < 2 {
        return Err(Error::input("n must be at least 2"));
    }
    Ok(reciprocal(&binomial(n, 2)))
}

/// `1` for `n = 2`, else `(1/3)·C(n−1,2)^{-1}`.
pub fn success_floor_node_arbitrary(n: u64) -> Result<BigRational> {
    match n {
        0 | 1 => Err(Error::input("n must be at least 2")),
        2 => Ok(BigRational::from_integer(1.into())),
        _ => Ok(reciprocal(&(binomial(n - 1, 2) * 3u8))),
    }
}

/// `β_e` for a hyperedge of image size `e_size` in a state with `live`
/// supervertices.
pub fn beta(live: u64, e_size: u64, c: u64) -> BigRational {
    if live == 0 {
        return BigRational::zero();
    }
    BigRational::new(
        BigInt::from((live - e_size.min(live)) * c),
        BigInt::from(live),
    )
}

/// `α_e` for a hyperedge meeting `inside` of the `u` feasible supervertices.
pub fn alpha(u: u64, inside: u64, c: u64) -> BigRational {
    if u == 0 {
        return BigRational::zero();
    }
    BigRational::new(BigInt::from((u - inside.min(u)) * c), BigInt::from(u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::binomial::rational;
    use crate::sampling::rng_from_seed;

    fn weighted(n: usize, edges: Vec<Vec<usize>>, w: Vec<u64>) -> Hypergraph {
        let m = edges.len();
        Hypergraph::new(
            n,
            edges,
            vec![vec![1]; m],
            w.into_iter().map(|x| vec![x]).collect(),
        )
        .unwrap()
    }

    #[test]
    fn merge_infeasible() {
        let g = weighted(3, vec![vec![0, 1], vec![1, 2]], vec![5, 1, 7]);
        let b = NodeBudgetVector::new(&g, vec![4]).unwrap();
        let mut s = ContractionState::new(&g);
        assert!(contract_infeasible(&mut s, &b));
        assert_eq!(s.member_lists(), vec![vec![0, 2], vec![1]]);
        assert_eq!(s.merged_weight(s.find(0)), &[12]);
        assert!(!contract_infeasible(&mut s, &b));

        let mut all_ok = ContractionState::new(&g);
        let loose = NodeBudgetVector::new(&g, vec![10]).unwrap();
        assert!(!contract_infeasible(&mut all_ok, &loose));
        assert_eq!(all_ok.live_count(), 3);

        let one = NodeBudgetVector::new(&g, vec![6]).unwrap();
        let mut s1 = ContractionState::new(&g);
        assert!(!contract_infeasible(&mut s1, &one));
    }

    #[test]
    fn floors() {
        assert_eq!(success_floor_node(6, 3).unwrap(), rational(1, 240));
        assert_eq!(success_floor_node_arbitrary(2).unwrap(), rational(1, 1));
        assert_eq!(success_floor_node_arbitrary(3).unwrap(), rational(1, 3));
        assert_eq!(success_floor_node_arbitrary(6).unwrap(), rational(1, 30));
        assert_eq!(success_floor_min_cut(3).unwrap(), rational(1, 3));
        assert!(success_floor_node(1, 2).is_err());
        assert!(success_floor_node_arbitrary(1).is_err());
    }

    #[test]
    fn coefficient_arithmetic() {
        assert_eq!(beta(4, 2, 3), rational(3, 2));
        assert_eq!(alpha(4, 1, 2), rational(3, 2));
        assert_eq!(beta(5, 5, 9), rational(0, 1));
    }

    #[test]
    fn spanning_edge_returns_immediately() {
        let g = Hypergraph::unit(4, vec![vec![0, 1, 2, 3]]).unwrap();
        let mut rng = rng_from_seed(0);
        let out = hypergraph_min_cut(&g, 0, &mut rng).unwrap();
        assert_eq!(out.cut, Cut::new(vec![0]));
        assert!(out.is_proper());
    }

    #[test]
    fn everything_infeasible() {
        let g = weighted(3, vec![vec![0, 1], vec![1, 2]], vec![5, 6, 7]);
        let b = NodeBudgetVector::new(&g, vec![4]).unwrap();
        let mut rng = rng_from_seed(0);
        assert!(nb_bmulti_arbitrary_rank(&g, 0, &b, &mut rng)
            .unwrap()
            .is_infeasible());
        assert!(alpha_sum(&g, 0, &b).is_err());
    }

    #[test]
    fn two_vertex_base_case() {
        let g = weighted(2, vec![vec![0, 1]], vec![1, 1]);
        let b = NodeBudgetVector::new(&g, vec![1]).unwrap();
        let mut rng = rng_from_seed(5);
        let hits = (0..1000)
            .filter(|_| {
                nb_bmulti_constant_rank(&g, 0, &b, &mut rng).unwrap().cut == Cut::new(vec![0])
            })
            .count();
        assert!(hits >= 450, "{hits}");
    }

    #[test]
    fn enum_without_weights_is_small() {
        let g = crate::analysis::gen_random_instance(
            &crate::analysis::RandomInstanceParams {
                n: 7,
                m: 10,
                t_costs: 1,
                ..Default::default()
            },
            2,
        )
        .unwrap();
        let mut rng = rng_from_seed(1);
        let out = nb_multi_enum_constant_rank(&g, 0, &mut rng).unwrap();
        assert!(out.len() <= 7 * g.rank());
    }

    #[test]
    fn arbitrary_rank_delegates_when_all_feasible() {
        let g = weighted(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]], vec![1, 1, 1]);
        let b = NodeBudgetVector::new(&g, vec![3]).unwrap();
        let mut rng = rng_from_seed(2);
        for _ in 0..50 {
            match nb_bmulti_arbitrary_rank(&g, 0, &b, &mut rng).unwrap() {
                NbOutcome::Cut(s) => {
                    assert!(s.is_proper());
                    assert_eq!(s.cut.len(), 2);
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }
}
