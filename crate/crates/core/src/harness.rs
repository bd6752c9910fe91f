//! Monte-Carlo checks of the success-probability floors.
//!
//! A trial succeeds when the algorithm's output lies in the oracle's optimal
//! set (or equals one designated optimum). A floor `Q` passes when the
//! empirical frequency is at least `Q − 3σ`, with `σ = sqrt(Q(1−Q)/trials)`.
//! Trial `i` uses [`trial_rng`]`(seed, i)`, so reports depend only on the
//! instance, the problem, the trial count and the seed.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::binomial::to_f64;
use crate::cut::Cut;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::instance::instance_digest;
use crate::multiobjective::{self, BudgetVector, Criteria, PipelineReps};
use crate::node_budget::{self, NbOutcome, NodeBudgetVector};
use crate::oracle;
use crate::sampling::{trial_rng, SeededRng};
use crate::size_constrained::{self, SizeVector};

/// An algorithm together with its problem parameters.
#[derive(Debug, Clone)]
pub enum Problem {
    BMulti {
        criteria: Criteria,
        budgets: BudgetVector,
    },
    NbConstantRank {
        cost: usize,
        budgets: NodeBudgetVector,
    },
    NbArbitraryRank {
        cost: usize,
        budgets: NodeBudgetVector,
    },
    MinCut {
        cost: usize,
    },
    KCut {
        sizes: SizeVector,
        weight: Option<usize>,
        cost: Option<usize>,
    },
}

impl Problem {
    pub fn id(&self) -> &'static str {
        match self {
            Problem::BMulti { .. } => "bmulti",
            Problem::NbConstantRank { .. } => "nb-bmulti-constant",
            Problem::NbArbitraryRank { .. } => "nb-bmulti-arbitrary",
            Problem::MinCut { .. } => "hmincut",
            Problem::KCut { .. } => "kcut",
        }
    }

    /// Proven lower bound on the probability of returning a fixed optimum.
    pub fn floor(&self, g: &Hypergraph) -> Result<BigRational> {
        let n = g.n() as u64;
        let r = g.rank() as u64;
        match self {
            Problem::BMulti { criteria, .. } => {
                multiobjective::success_floor_edge(n, r, criteria.t() as u64)
            }
            Problem::NbConstantRank { .. } => node_budget::success_floor_node(n, r),
            Problem::NbArbitraryRank { .. } => node_budget::success_floor_node_arbitrary(n),
            Problem::MinCut { .. } => node_budget::success_floor_min_cut(n),
            Problem::KCut { sizes, .. } => size_constrained::success_floor_size(n, sizes),
        }
    }

    /// The oracle's optimal cuts, or `None` when the instance is infeasible.
    pub fn optimal_set(&self, g: &Hypergraph) -> Result<Option<BTreeSet<Cut>>> {
        let infeasible = |r: Result<oracle::Optimum>| match r {
            Ok(o) => Ok(Some(o.cuts)),
            Err(Error::Infeasible(_)) => Ok(None),
            Err(e) => Err(e),
        };
        match self {
            Problem::BMulti { criteria, budgets } => {
                let set =
                    oracle::oracle_bmulti(&oracle::build_catalog(g)?, criteria, budgets.as_slice());
                Ok((!set.is_empty()).then_some(set))
            }
            Problem::NbConstantRank { cost, budgets }
            | Problem::NbArbitraryRank { cost, budgets } => {
                infeasible(oracle::oracle_nb_bmulti(g, *cost, budgets))
            }
            Problem::MinCut { cost } => {
                g.check_cost_criterion(*cost)?;
                Ok(Some(oracle::build_catalog(g)?.min_cuts(*cost)))
            }
            Problem::KCut {
                sizes,
                weight,
                cost,
            } => infeasible(oracle::oracle_kcut(g, *weight, sizes, *cost)),
        }
    }

    /// One run; `None` means the algorithm reported infeasibility.
    pub fn run(&self, g: &Hypergraph, rng: &mut SeededRng) -> Result<Option<Cut>> {
        Ok(match self {
            Problem::BMulti { criteria, budgets } => {
                Some(multiobjective::b_multiobjective_min_cut(g, criteria, budgets, rng).cut)
            }
            Problem::NbConstantRank { cost, budgets } => {
                Some(node_budget::nb_bmulti_constant_rank(g, *cost, budgets, rng)?.cut)
            }
            Problem::NbArbitraryRank { cost, budgets } => {
                match node_budget::nb_bmulti_arbitrary_rank(g, *cost, budgets, rng)? {
                    NbOutcome::Infeasible => None,
                    out => out.cut().cloned(),
                }
            }
            Problem::MinCut { cost } => Some(node_budget::hypergraph_min_cut(g, *cost, rng)?.cut),
            Problem::KCut { sizes, cost, .. } => {
                Some(size_constrained::size_constrained_min_k_cut(g, sizes, *cost, rng)?.cut)
            }
        })
    }

    fn can_report_infeasible(&self) -> bool {
        matches!(self, Problem::NbArbitraryRank { .. })
    }
}

/// Outcome of [`estimate`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialReport {
    pub algorithm: String,
    pub digest: String,
    pub seed: u64,
    pub trials: u64,
    pub successes: u64,
    pub frequency: f64,
    /// Exact floor as `p/q`.
    pub floor: String,
    pub floor_value: f64,
    pub sigma: f64,
    pub z_slack: f64,
    pub pass: bool,
    /// Size of the target set (1 with a fixed target).
    pub targets: usize,
    /// The oracle found the instance infeasible; successes count runs that
    /// reported infeasibility.
    pub infeasible: bool,
}

/// `max(1000, ⌈30/Q⌉)`.
pub fn default_trials(floor: &BigRational) -> u64 {
    let need = (BigRational::from_integer(30.into()) / floor)
        .ceil()
        .to_integer();
    need.to_u64().unwrap_or(u64::MAX).max(1000)
}

/// Pass rule and statistics for `successes` out of `trials` against `floor`.
pub fn score(successes: u64, trials: u64, floor: &BigRational) -> (f64, f64, f64, bool) {
    let q = to_f64(floor);
    let freq = successes as f64 / trials as f64;
    let sigma = (q * (1.0 - q) / trials as f64).sqrt();
    let z = if sigma > 0.0 { (freq - q) / sigma } else { 0.0 };
    (freq, sigma, z, freq >= q - 3.0 * sigma)
}

/// Runs `problem` for `trials` seeded trials (default [`default_trials`])
/// and compares the hit frequency with the floor. With `fixed_target`, only
/// that cut counts as a hit; it must be one of the oracle optima.
pub fn estimate(
    g: &Hypergraph,
    problem: &Problem,
    trials: Option<u64>,
    seed: u64,
    fixed_target: Option<&Cut>,
) -> Result<TrialReport> {
    let floor = problem.floor(g)?;
    let trials = trials.unwrap_or_else(|| default_trials(&floor));
    if trials == 0 {
        return Err(Error::input("trials must be at least 1"));
    }
    let optimal = problem.optimal_set(g)?;
    let target: Option<BTreeSet<Cut>> = match (optimal, fixed_target) {
        (None, _) if !problem.can_report_infeasible() => {
            return Err(Error::Infeasible(
                "the oracle finds no feasible solution".into(),
            ));
        }
        (None, _) => None,
        (Some(set), Some(t)) => {
            if !set.contains(t) {
                return Err(Error::input("the fixed target is not an optimal cut"));
            }
            Some([t.clone()].into_iter().collect())
        }
        (Some(set), None) => Some(set),
    };
    let successes = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(seed, i);
            let out = problem.run(g, &mut rng)?;
            Ok(u64::from(match (&target, out) {
                (None, out) => out.is_none(),
                (Some(set), Some(c)) => set.contains(&c),
                (Some(_), None) => false,
            }))
        })
        .sum::<Result<u64>>()?;
    let (frequency, sigma, z_slack, pass) = score(successes, trials, &floor);
    Ok(TrialReport {
        algorithm: problem.id().to_string(),
        digest: instance_digest(g),
        seed,
        trials,
        successes,
        frequency,
        floor: floor.to_string(),
        floor_value: to_f64(&floor),
        sigma,
        z_slack,
        pass,
        targets: target.as_ref().map_or(0, BTreeSet::len),
        infeasible: target.is_none(),
    })
}

/// Agreement of one pipeline run with the oracle families.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PipelineRun {
    pub multiobjective_equal: bool,
    pub pareto_equal: bool,
    pub multiobjective_found: usize,
    pub pareto_found: usize,
    /// Oracle multiobjective cuts the run missed.
    pub missed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PipelineReport {
    pub digest: String,
    pub seed: u64,
    pub runs: Vec<PipelineRun>,
    pub oracle_multiobjective: usize,
    pub oracle_pareto: usize,
    pub multiobjective_matches: usize,
    pub pareto_matches: usize,
}

/// Runs both enumeration pipelines `runs` times and compares each result
/// with the oracle sets. Run `j` draws from [`trial_rng`]`(seed, j)`.
pub fn pipeline_equivalence(
    g: &Hypergraph,
    criteria: &Criteria,
    seed: u64,
    runs: u64,
    reps: PipelineReps,
) -> Result<PipelineReport> {
    let catalog = oracle::build_catalog(g)?;
    let want_multi = oracle::oracle_multiobjective_for(&catalog, criteria);
    let want_pareto = oracle::oracle_pareto_for(&catalog, criteria);
    let (enum_reps, verify_reps) = reps.resolve(g, criteria.t());
    let mut out = Vec::new();
    for j in 0..runs {
        let mut rng = trial_rng(seed, j);
        let multi = multiobjective::enumerate_multiobjective(g, criteria, enum_reps, &mut rng)?;
        let pareto = multiobjective::pareto_filter(g, criteria, &multi, verify_reps, &mut rng)?;
        out.push(PipelineRun {
            multiobjective_equal: multi == want_multi,
            pareto_equal: pareto == want_pareto,
            multiobjective_found: multi.len(),
            pareto_found: pareto.len(),
            missed: want_multi.difference(&multi).count(),
        });
    }
    Ok(PipelineReport {
        digest: instance_digest(g),
        seed,
        oracle_multiobjective: want_multi.len(),
        oracle_pareto: want_pareto.len(),
        multiobjective_matches: out.iter().filter(|r| r.multiobjective_equal).count(),
        pareto_matches: out.iter().filter(|r| r.pareto_equal).count(),
        runs: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::binomial::rational;

    #[test]
    fn default_trial_counts() {
        assert_eq!(default_trials(&rational(1, 3)), 1000);
        assert_eq!(default_trials(&rational(1, 360)), 10800);
        assert_eq!(default_trials(&rational(2, 7)), 1000);
    }

    #[test]
    fn zero_trials_rejected() {
        let g = Hypergraph::unit(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let err = estimate(&g, &Problem::MinCut { cost: 0 }, Some(0), 1, None).unwrap_err();
        assert_eq!(err.kind(), "input");
    }

    #[test]
    fn triangle_min_cut_passes_and_is_reproducible() {
        let g = Hypergraph::unit(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let a = estimate(&g, &Problem::MinCut { cost: 0 }, Some(3000), 11, None).unwrap();
        assert!(a.pass, "{a:?}");
        assert_eq!(a.targets, 3);
        let b = estimate(&g, &Problem::MinCut { cost: 0 }, Some(3000), 11, None).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn single_cut_pipeline_is_exact() {
        let g = Hypergraph::with_dims(2, 2, 0, vec![vec![0, 1]], vec![vec![1, 2]], vec![vec![]; 2])
            .unwrap();
        let c = Criteria::all(&g).unwrap();
        let rep = pipeline_equivalence(&g, &c, 3, 5, PipelineReps::default()).unwrap();
        assert_eq!(rep.multiobjective_matches, 5);
        assert_eq!(rep.pareto_matches, 5);
    }
}
