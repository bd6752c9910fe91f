//! Multicriteria min-cuts under hyperedge-cost budgets.
//!
//! Criteria are passed as a [`Criteria`] list of cost-function indices into
//! the hypergraph; the last entry is the minimised objective and the others
//! carry budgets. Reordering the list is how the pareto verifier moves one
//! criterion to the objective slot.

use std::collections::BTreeSet;

use num_rational::BigRational;
use rand::Rng;
use rayon::prelude::*;

use crate::analysis::binomial::{binomial_i, rational, reciprocal};
use crate::contraction::ContractionState;
use crate::cut::{Cut, SidedCut};
use crate::error::{Error, Result};
use crate::hypergraph::{EdgeId, Hypergraph, VertexId};
use crate::sampling::{trial_rng, weighted_permutation};

/// Ordered, distinct cost-criterion indices; the last one is the objective.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Criteria(Vec<usize>);

impl Criteria {
    pub fn new(g: &Hypergraph, order: Vec<usize>) -> Result<Self> {
        if order.is_empty() {
            return Err(Error::input("at least one criterion is required"));
        }
        for &i in &order {
            g.check_cost_criterion(i)?;
        }
        let mut seen = order.clone();
        seen.sort_unstable();
        seen.dedup();
        if seen.len() != order.len() {
            return Err(Error::input("criteria must be distinct"));
        }
        Ok(Criteria(order))
    }

    /// All cost functions of `g` in their natural order.
    pub fn all(g: &Hypergraph) -> Result<Self> {
        Self::new(g, (0..g.t_costs()).collect())
    }

    pub fn t(&self) -> usize {
        self.0.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn objective(&self) -> usize {
        *self.0.last().expect("nonempty")
    }

    pub fn budgeted(&self) -> &[usize] {
        &self.0[..self.0.len() - 1]
    }

    /// Same criteria with the one at `pos` moved to the objective slot.
    pub fn rotated(&self, pos: usize) -> Criteria {
        let mut v = self.0.clone();
        let c = v.remove(pos);
        v.push(c);
        Criteria(v)
    }

    /// Cost vector of `cut` in this criterion order.
    pub fn costs(&self, g: &Hypergraph, cut: &Cut) -> Vec<u64> {
        self.0
            .iter()
            .map(|&i| cut.edge_ids().iter().map(|&e| g.cost(e, i)).sum())
            .collect()
    }
}

/// Budgets `b_1..b_{t−1}` for the budgeted criteria.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BudgetVector(Vec<u64>);

impl BudgetVector {
    pub fn new(criteria: &Criteria, budgets: Vec<u64>) -> Result<Self> {
        if budgets.len() + 1 != criteria.t() {
            return Err(Error::input(format!(
                "{} budgets given, expected t - 1 = {}",
                budgets.len(),
                criteria.t() - 1
            )));
        }
        Ok(BudgetVector(budgets))
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    /// `c_i(F) ≤ b_i` for every budgeted criterion.
    pub fn admits(&self, costs: &[u64]) -> bool {
        self.0.iter().zip(costs).all(|(b, c)| c <= b)
    }
}

/// Partition of the live supervertices into `U_1..U_t`: for `i < t`, `U_i`
/// takes the supervertices not yet classified whose degree cost under
/// criterion `i` exceeds `b_i`; `U_t` is the rest.
pub fn infeasible_classes(
    state: &ContractionState<'_>,
    criteria: &Criteria,
    budgets: &BudgetVector,
) -> Vec<Vec<VertexId>> {
    let t = criteria.t();
    let mut remaining = state.supervertices();
    let mut classes = Vec::with_capacity(t);
    for (&crit, &b) in criteria.budgeted().iter().zip(budgets.as_slice()) {
        let deg = state.degree_costs(crit);
        let (over, rest): (Vec<_>, Vec<_>) = remaining.into_iter().partition(|&v| deg[v] > b);
        classes.push(over);
        remaining = rest;
    }
    classes.push(remaining);
    classes
}

/// One run of the budgeted random contraction.
///
/// While more than `r·t` supervertices remain, pick the largest class `U_i`
/// (lowest index on ties), contract an alive hyperedge drawn with probability
/// `c_i(e)/c_i(E)`, and repeat. Then return `δ(X)` for a uniformly random
/// subset `X`. If the chosen criterion has no alive mass, the next-largest
/// class with positive mass is used; with no mass anywhere the random-subset
/// step happens immediately.
pub fn b_multiobjective_min_cut<R: Rng + ?Sized>(
    g: &Hypergraph,
    criteria: &Criteria,
    budgets: &BudgetVector,
    rng: &mut R,
) -> SidedCut {
    let t = criteria.t();
    let threshold = g.rank() * t;
    let mut state = ContractionState::new(g);
    loop {
        if state.live_count() <= threshold {
            return state.random_subset_cut(rng);
        }
        let classes = infeasible_classes(&state, criteria, budgets);
        let mut by_size: Vec<usize> = (0..t).collect();
        by_size.sort_by(|&a, &b| classes[b].len().cmp(&classes[a].len()).then(a.cmp(&b)));
        let picked = by_size.into_iter().find_map(|j| {
            let crit = criteria.indices()[j];
            state.sample_alive_edge(rng, |e| u128::from(g.cost(e, crit)))
        });
        match picked {
            Some(e) => {
                state
                    .contract_edge(e)
                    .expect("edge ids come from the base graph");
            }
            None => return state.random_subset_cut(rng),
        }
    }
}

/// Lower bound on the probability that [`b_multiobjective_min_cut`] returns
/// a fixed budgeted min-cut:
/// `1/2^{rt}` if `n ≤ rt`, else `(2t+1)/(2^{rt}(rt+1)) · C(n−t(r−2), 2t)^{-1}`.
pub fn success_floor_edge(n: u64, r: u64, t: u64) -> Result<BigRational> {
    if n == 0 || t == 0 || r < 2 {
        return Err(Error::input(format!(
            "need n, t >= 1 and r >= 2 (got n={n}, r={r}, t={t})"
        )));
    }
    let rt = r * t;
    let pow = num_bigint::BigUint::from(1u8) << (rt as usize);
    if n <= rt {
        return Ok(reciprocal(&pow));
    }
    // n > rt implies n − t(r−2) > 2t, so the binomial is at least 1.
    let top = n as i64 - (t * (r - 2)) as i64;
    let c = binomial_i(top, 2 * t);
    let den = pow * num_bigint::BigUint::from(rt + 1) * c;
    Ok(rational(2 * t + 1, num_bigint::BigInt::from(den)))
}

/// Every phase-target sequence `n ≥ n_1 ≥ … ≥ n_{t−1} ≥ n_t = rt`.
pub fn interleaving_schedules(n: usize, r: usize, t: usize) -> Vec<Vec<usize>> {
    let floor = r * t;
    let mut out = Vec::new();
    if n < floor || t == 0 {
        return out;
    }
    fn rec(hi: usize, lo: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            let mut s = cur.clone();
            s.push(lo);
            out.push(s);
            return;
        }
        for v in (lo..=hi).rev() {
            cur.push(v);
            rec(v, lo, left - 1, cur, out);
            cur.pop();
        }
    }
    rec(n, floor, t - 1, &mut Vec::new(), &mut out);
    out
}

fn criterion_permutations<R: Rng + ?Sized>(
    g: &Hypergraph,
    criteria: &Criteria,
    rng: &mut R,
) -> Vec<Vec<EdgeId>> {
    criteria
        .indices()
        .iter()
        .map(|&i| {
            let items: Vec<EdgeId> = (0..g.m()).filter(|&e| g.cost(e, i) > 0).collect();
            let weights: Vec<u64> = items.iter().map(|&e| g.cost(e, i)).collect();
            weighted_permutation(&items, &weights, rng)
        })
        .collect()
}

/// Collection of cuts that contains any fixed multiobjective min-cut with
/// probability at least [`success_floor_edge`], of size at most `n^{t−1}`.
///
/// One cost-weighted permutation per criterion is drawn up front; then for
/// every interleaving schedule the hypergraph is contracted phase by phase
/// along the permutations and a random subset cut is taken. Outputs whose
/// random side is `∅` or everything are not cuts and are discarded.
pub fn multiobjective_min_cut_enum<R: Rng + ?Sized>(
    g: &Hypergraph,
    criteria: &Criteria,
    rng: &mut R,
) -> BTreeSet<Cut> {
    let (n, r, t) = (g.n(), g.rank(), criteria.t());
    let mut out = BTreeSet::new();
    if n <= r * t {
        let state = ContractionState::new(g);
        out.extend(state.random_subset_cut(rng).proper_cut());
        return out;
    }
    let perms = criterion_permutations(g, criteria, rng);
    for schedule in interleaving_schedules(n, r, t) {
        let mut state = ContractionState::new(g);
        for (perm, &target) in perms.iter().zip(&schedule) {
            let mut next = perm.iter();
            while state.live_count() > target {
                match next.by_ref().find(|&&e| state.is_alive(e)) {
                    Some(&e) => {
                        state
                            .contract_edge(e)
                            .expect("edge ids come from the base graph");
                    }
                    None => break,
                }
            }
        }
        out.extend(state.random_subset_cut(rng).proper_cut());
    }
    out
}

/// Removes every cut `F` for which another cut `F'` in the collection has
/// `c_t(F') < c_t(F)` and `c_i(F') ≤ c_i(F)` for all budgeted `i`.
pub fn prune_multiobjective(
    g: &Hypergraph,
    criteria: &Criteria,
    cuts: &BTreeSet<Cut>,
) -> BTreeSet<Cut> {
    let costed: Vec<(&Cut, Vec<u64>)> = cuts.iter().map(|c| (c, criteria.costs(g, c))).collect();
    let t = criteria.t();
    costed
        .iter()
        .filter(|(_, cf)| {
            !costed.iter().any(|(_, co)| {
                co[t - 1] < cf[t - 1] && co[..t - 1].iter().zip(&cf[..t - 1]).all(|(a, b)| a <= b)
            })
        })
        .map(|(c, _)| (*c).clone())
        .collect()
}

fn ln_ceil(x: f64) -> u64 {
    if !x.is_finite() || x >= u64::MAX as f64 {
        u64::MAX
    } else {
        x.ceil().max(1.0) as u64
    }
}

/// `⌈r²·t·2^{rt}·n^{2t}·ln n⌉` (at least 1).
pub fn default_enum_repetitions(n: usize, r: usize, t: usize) -> u64 {
    let (nf, rf, tf) = (n as f64, r as f64, t as f64);
    ln_ceil(rf * rf * tf * 2f64.powf(rf * tf) * nf.powf(2.0 * tf) * nf.ln())
}

/// `⌈r·2^{rt}·n^{2t}·ln n⌉` (at least 1), per criterion.
pub fn default_verify_repetitions(n: usize, r: usize, t: usize) -> u64 {
    let (nf, rf, tf) = (n as f64, r as f64, t as f64);
    ln_ceil(rf * 2f64.powf(rf * tf) * nf.powf(2.0 * tf) * nf.ln())
}

/// Union of `repetitions` independent [`multiobjective_min_cut_enum`] runs,
/// pruned with [`prune_multiobjective`]. Runs are seeded from one draw of
/// `rng`, so the result does not depend on thread scheduling.
pub fn enumerate_multiobjective<R: Rng + ?Sized>(
    g: &Hypergraph,
    criteria: &Criteria,
    repetitions: u64,
    rng: &mut R,
) -> Result<BTreeSet<Cut>> {
    if repetitions == 0 {
        return Err(Error::input("repetitions must be at least 1"));
    }
    let base: u64 = rng.gen();
    let collection = (0..repetitions)
        .into_par_iter()
        .fold(BTreeSet::new, |mut acc, i| {
            let mut r = trial_rng(base, i);
            acc.extend(multiobjective_min_cut_enum(g, criteria, &mut r));
            acc
        })
        .reduce(BTreeSet::new, |mut a, b| {
            a.extend(b);
            a
        });
    Ok(prune_multiobjective(g, criteria, &collection))
}

/// One-sided pareto test for a cut `F`.
///
/// For each criterion `i`, moves `c_i` to the objective slot, budgets the
/// others at `F`'s costs, and runs [`b_multiobjective_min_cut`]
/// `repetitions_per_criterion` times. Returns `false` as soon as some run
/// yields a proper cut within those budgets with strictly smaller `c_i`
/// (a dominating witness); `true` otherwise. `true` is always returned for
/// pareto-optimal `F`.
pub fn verify_pareto_optimality<R: Rng + ?Sized>(
    g: &Hypergraph,
    criteria: &Criteria,
    cut: &Cut,
    repetitions_per_criterion: u64,
    rng: &mut R,
) -> Result<bool> {
    cut.check_in(g)?;
    Ok(find_dominating(g, criteria, cut, repetitions_per_criterion, rng).is_none())
}

/// The search behind [`verify_pareto_optimality`]; returns the witness.
pub fn find_dominating<R: Rng + ?Sized>(
    g: &Hypergraph,
    criteria: &Criteria,
    cut: &Cut,
    repetitions_per_criterion: u64,
    rng: &mut R,
) -> Option<Cut> {
    let costs = criteria.costs(g, cut);
    for pos in 0..criteria.t() {
        let rotated = criteria.rotated(pos);
        let mut b = costs.clone();
        let target = b.remove(pos);
        let budgets = BudgetVector::new(&rotated, b).expect("t - 1 budgets by construction");
        let base: u64 = rng.gen();
        let witness = (0..repetitions_per_criterion)
            .into_par_iter()
            .find_map_first(|j| {
                let mut r = trial_rng(base, j);
                let out = b_multiobjective_min_cut(g, &rotated, &budgets, &mut r).proper_cut()?;
                let oc = rotated.costs(g, &out);
                (budgets.admits(&oc) && oc[oc.len() - 1] < target).then_some(out)
            });
        if witness.is_some() {
            return witness;
        }
    }
    None
}

/// Repetition counts for the enumeration pipelines; `None` selects the
/// defaults of [`default_enum_repetitions`] / [`default_verify_repetitions`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PipelineReps {
    pub enumeration: Option<u64>,
    pub verification: Option<u64>,
}

impl PipelineReps {
    pub fn resolve(&self, g: &Hypergraph, t: usize) -> (u64, u64) {
        let (n, r) = (g.n(), g.rank());
        (
            self.enumeration
                .unwrap_or_else(|| default_enum_repetitions(n, r, t)),
            self.verification
                .unwrap_or_else(|| default_verify_repetitions(n, r, t)),
        )
    }
}

/// Pareto-optimal cuts: the multiobjective enumeration filtered by
/// [`verify_pareto_optimality`].
pub fn enumerate_pareto<R: Rng + ?Sized>(
    g: &Hypergraph,
    criteria: &Criteria,
    reps: PipelineReps,
    rng: &mut R,
) -> Result<BTreeSet<Cut>> {
    let (enum_reps, verify_reps) = reps.resolve(g, criteria.t());
    let multi = enumerate_multiobjective(g, criteria, enum_reps, rng)?;
    pareto_filter(g, criteria, &multi, verify_reps, rng)
}

/// Keeps the cuts of `multi` that pass the pareto verifier.
pub fn pareto_filter<R: Rng + ?Sized>(
    g: &Hypergraph,
    criteria: &Criteria,
    multi: &BTreeSet<Cut>,
    verify_reps: u64,
    rng: &mut R,
) -> Result<BTreeSet<Cut>> {
    let mut out = BTreeSet::new();
    for cut in multi {
        if verify_pareto_optimality(g, criteria, cut, verify_reps, rng)? {
            out.insert(cut.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sampling::rng_from_seed;

    fn path3() -> Hypergraph {
        // a=0, b=1, c=2; e1={a,b} c=(3,1), e2={b,c} c=(1,1)
        Hypergraph::with_dims(
            3,
            2,
            0,
            vec![vec![0, 1], vec![1, 2]],
            vec![vec![3, 1], vec![1, 1]],
            vec![vec![]; 3],
        )
        .unwrap()
    }

    #[test]
    fn classes_on_path() {
        let g = path3();
        let c = Criteria::all(&g).unwrap();
        let s = ContractionState::new(&g);
        let b = BudgetVector::new(&c, vec![3]).unwrap();
        assert_eq!(infeasible_classes(&s, &c, &b), vec![vec![1], vec![0, 2]]);
        let big = BudgetVector::new(&c, vec![100]).unwrap();
        assert_eq!(
            infeasible_classes(&s, &c, &big),
            vec![vec![], vec![0, 1, 2]]
        );
        let one = Criteria::new(&g, vec![0]).unwrap();
        let none = BudgetVector::new(&one, vec![]).unwrap();
        assert_eq!(infeasible_classes(&s, &one, &none), vec![vec![0, 1, 2]]);
    }

    #[test]
    fn budget_length_checked() {
        let g = path3();
        let c = Criteria::all(&g).unwrap();
        assert!(BudgetVector::new(&c, vec![]).is_err());
        assert!(Criteria::new(&g, vec![0, 0]).is_err());
        assert!(Criteria::new(&g, vec![2]).is_err());
    }

    #[test]
    fn floors() {
        assert_eq!(success_floor_edge(5, 2, 1).unwrap(), rational(1, 40));
        assert_eq!(success_floor_edge(4, 2, 2).unwrap(), rational(1, 16));
        // (6,3,2) has n <= rt, so the base-case branch applies.
        assert_eq!(success_floor_edge(6, 3, 2).unwrap(), rational(1, 64));
        assert_eq!(
            success_floor_edge(7, 3, 2).unwrap(),
            rational(5, 64 * 7 * 5)
        );
        assert_eq!(
            success_floor_edge(6, 2, 2).unwrap(),
            rational(5, 16 * 5 * 15)
        );
        assert!(success_floor_edge(5, 1, 1).is_err());
    }

    #[test]
    fn schedule_counts() {
        assert_eq!(
            interleaving_schedules(5, 2, 2),
            vec![vec![5, 4], vec![4, 4]]
        );
        assert_eq!(interleaving_schedules(9, 3, 1), vec![vec![3]]);
        // n = 8, r = 2, t = 3: pairs 8 >= a >= b >= 6 -> 6 schedules
        let s = interleaving_schedules(8, 2, 3);
        assert_eq!(s.len(), 6);
        assert!(s
            .iter()
            .all(|x| x.windows(2).all(|w| w[0] >= w[1]) && x[2] == 6));
    }

    #[test]
    fn pruning_rule() {
        // Four parallel-free single-edge cuts with chosen cost vectors.
        let g = Hypergraph::with_dims(
            2,
            2,
            0,
            vec![vec![0, 1]; 4],
            vec![vec![1, 5], vec![2, 2], vec![3, 1], vec![2, 3]],
            vec![vec![]; 2],
        )
        .unwrap();
        let c = Criteria::all(&g).unwrap();
        let all: BTreeSet<Cut> = (0..4).map(|e| Cut::new(vec![e])).collect();
        let kept = prune_multiobjective(&g, &c, &all);
        let expect: BTreeSet<Cut> = [0, 1, 2].iter().map(|&e| Cut::new(vec![e])).collect();
        assert_eq!(kept, expect);
        assert_eq!(prune_multiobjective(&g, &c, &kept), kept);
        let single: BTreeSet<Cut> = [Cut::new(vec![3])].into_iter().collect();
        assert_eq!(prune_multiobjective(&g, &c, &single), single);
    }

    #[test]
    fn two_vertex_base_case_distribution() {
        // Base case: X uniform over 4 subsets, two of which give {e0}.
        let g = Hypergraph::unit(2, vec![vec![0, 1]]).unwrap();
        let c = Criteria::all(&g).unwrap();
        let b = BudgetVector::new(&c, vec![]).unwrap();
        let mut rng = rng_from_seed(3);
        let hits = (0..1000)
            .filter(|_| b_multiobjective_min_cut(&g, &c, &b, &mut rng).cut == Cut::new(vec![0]))
            .count();
        assert!(hits >= 450, "hits {hits}");
    }

    #[test]
    fn enum_respects_size_bound() {
        let g = crate::analysis::gen_random_instance(
            &crate::analysis::RandomInstanceParams {
                n: 7,
                m: 12,
                ..Default::default()
            },
            4,
        )
        .unwrap();
        let c = Criteria::all(&g).unwrap();
        let mut rng = rng_from_seed(8);
        for _ in 0..50 {
            let out = multiobjective_min_cut_enum(&g, &c, &mut rng);
            assert!(out.len() <= 7);
        }
    }

    #[test]
    fn verify_t1_is_min_cut_test() {
        let g = Hypergraph::unit(
            4,
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0], vec![0, 2]],
        )
        .unwrap();
        let c = Criteria::all(&g).unwrap();
        let mut rng = rng_from_seed(1);
        // δ({1}) = {e0, e1} has value 2, the minimum.
        assert!(verify_pareto_optimality(&g, &c, &Cut::new(vec![0, 1]), 500, &mut rng).unwrap());
        // δ({0}) has value 3.
        assert!(
            !verify_pareto_optimality(&g, &c, &Cut::new(vec![0, 3, 4]), 500, &mut rng).unwrap()
        );
    }
}
