use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use hypercut::analysis::{gen_lower_bound_instance, gen_random_instance, RandomInstanceParams};
use hypercut::contraction::ContractionState;
use hypercut::multiobjective::{
    b_multiobjective_min_cut, enumerate_multiobjective, multiobjective_min_cut_enum,
    prune_multiobjective,
};
use hypercut::node_budget::{
    alpha_sum, contract_infeasible, hypergraph_min_cut, nb_bmulti_arbitrary_rank, FeasibilityView,
};
use hypercut::oracle::{
    build_catalog, containment, oracle_bmulti, oracle_kcut, oracle_multiobjective,
    oracle_multiobjective_for, oracle_nb_bmulti, oracle_parametric_t2, oracle_pareto,
};
use hypercut::sampling::rng_from_seed;
use hypercut::size_constrained::{alpha_size, size_constrained_min_k_cut};
use hypercut::{
    delta_of_side, delta_partition, BudgetVector, Criteria, Cut, Hypergraph, NbOutcome,
    NodeBudgetVector, SizeVector,
};

fn instance(
    n: usize,
    m: usize,
    rank: usize,
    t_costs: usize,
    t_weights: usize,
    seed: u64,
) -> Hypergraph {
    gen_random_instance(
        &RandomInstanceParams {
            n,
            m,
            rank: rank.min(n),
            t_costs,
            t_weights,
            max_cost: 6,
            max_weight: 4,
            positive_weights: false,
        },
        seed,
    )
    .unwrap()
}

fn arb_instance(t_costs: usize, t_weights: usize) -> impl Strategy<Value = Hypergraph> {
    (3usize..=7, 1usize..=10, 2usize..=4, any::<u64>())
        .prop_map(move |(n, m, r, seed)| instance(n, m, r, t_costs, t_weights, seed))
}

fn scaled(g: &Hypergraph, k: u64) -> Hypergraph {
    let costs = g
        .edge_costs()
        .iter()
        .map(|c| c.iter().map(|x| x * k).collect())
        .collect();
    Hypergraph::with_dims(
        g.n(),
        g.t_costs(),
        g.t_weights(),
        g.edges().to_vec(),
        costs,
        g.vertex_weights().to_vec(),
    )
    .unwrap()
}

fn complement(side: &[bool]) -> Vec<bool> {
    side.iter().map(|b| !b).collect()
}

fn edge_sum(g: &Hypergraph, cost: usize, edges: impl Iterator<Item = usize>) -> BigRational {
    BigRational::from_integer(edges.map(|e| g.cost(e, cost)).sum::<u64>().into())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn enum_output_is_small_and_made_of_cuts(
        t in 1usize..=3,
        (n, m, r, gseed) in (3usize..=7, 1usize..=10, 2usize..=3, any::<u64>()),
        seed in any::<u64>(),
    ) {
        let g = instance(n, m, r, t, 0, gseed);
        let c = Criteria::all(&g).unwrap();
        let catalog = build_catalog(&g).unwrap().cuts();
        let out = multiobjective_min_cut_enum(&g, &c, &mut rng_from_seed(seed));
        prop_assert!(out.len() <= n.pow(t as u32 - 1));
        prop_assert!(out.is_subset(&catalog));
    }

    #[test]
    fn bmulti_output_is_delta_of_its_side(g in arb_instance(2, 0), b in 0u64..20, seed in any::<u64>()) {
        let c = Criteria::all(&g).unwrap();
        let budgets = BudgetVector::new(&c, vec![b]).unwrap();
        let out = b_multiobjective_min_cut(&g, &c, &budgets, &mut rng_from_seed(seed));
        prop_assert_eq!(&out.cut, &delta_of_side(&g, &out.side));
    }

    #[test]
    fn pruning_is_idempotent_and_incremental(g in arb_instance(2, 0), split in any::<u64>()) {
        let c = Criteria::all(&g).unwrap();
        let all: Vec<Cut> = build_catalog(&g).unwrap().cuts().into_iter().collect();
        let (a, b): (Vec<_>, Vec<_>) =
            all.iter().cloned().enumerate().partition(|(i, _)| split >> (i % 64) & 1 == 1);
        let a: BTreeSet<Cut> = a.into_iter().map(|(_, x)| x).collect();
        let b: BTreeSet<Cut> = b.into_iter().map(|(_, x)| x).collect();
        let whole: BTreeSet<Cut> = all.into_iter().collect();
        let once = prune_multiobjective(&g, &c, &whole);
        prop_assert_eq!(&prune_multiobjective(&g, &c, &once), &once);
        let staged: BTreeSet<Cut> = prune_multiobjective(&g, &c, &a).into_iter().chain(b).collect();
        prop_assert_eq!(&prune_multiobjective(&g, &c, &staged), &once);
    }

    #[test]
    fn oracle_families_nest(g in arb_instance(2, 0)) {
        let catalog = build_catalog(&g).unwrap();
        let fam = containment(&catalog).unwrap();
        prop_assert!(fam.parametric.is_subset(&fam.pareto));
        prop_assert!(fam.pareto.is_subset(&fam.multiobjective));
    }

    #[test]
    fn bmulti_at_own_costs_matches_multiobjective(t in 2usize..=3, (n, m, r, gseed) in (3usize..=6, 1usize..=8, 2usize..=3, any::<u64>())) {
        let g = instance(n, m, r, t, 0, gseed);
        let c = Criteria::all(&g).unwrap();
        let catalog = build_catalog(&g).unwrap();
        let multi = oracle_multiobjective_for(&catalog, &c);
        for entry in &catalog.entries {
            let hit = oracle_bmulti(&catalog, &c, &entry.costs[..t - 1]).contains(&entry.cut);
            prop_assert_eq!(hit, multi.contains(&entry.cut));
        }
    }

    #[test]
    fn oracle_sets_ignore_cost_scaling(g in arb_instance(2, 0), k in 2u64..6) {
        let a = build_catalog(&g).unwrap();
        let b = build_catalog(&scaled(&g, k)).unwrap();
        prop_assert_eq!(oracle_pareto(&a), oracle_pareto(&b));
        prop_assert_eq!(oracle_multiobjective(&a), oracle_multiobjective(&b));
        prop_assert_eq!(oracle_parametric_t2(&a).unwrap(), oracle_parametric_t2(&b).unwrap());
        prop_assert_eq!(a.min_cuts(0), b.min_cuts(0));
    }

    #[test]
    fn two_way_kcut_is_min_cut(g in arb_instance(1, 0)) {
        let s = SizeVector::new(vec![1, 1]).unwrap();
        let opt = oracle_kcut(&g, None, &s, Some(0)).unwrap();
        let catalog = build_catalog(&g).unwrap();
        prop_assert_eq!(Some(opt.value), catalog.min_cost(0));
        prop_assert_eq!(opt.cuts, catalog.min_cuts(0));
    }

    #[test]
    fn at_most_one_infeasible_after_merge(
        g in arb_instance(1, 2),
        b in (0u64..8, 0u64..8),
        picks in proptest::collection::vec(0usize..10, 0..4),
    ) {
        let budgets = NodeBudgetVector::new(&g, vec![b.0, b.1]).unwrap();
        let mut state = ContractionState::new(&g);
        for e in picks {
            if e < g.m() {
                state.contract_edge(e).unwrap();
            }
            contract_infeasible(&mut state, &budgets);
            prop_assert!(FeasibilityView::of(&state, &budgets).infeasible.len() <= 1);
        }
    }

    #[test]
    fn node_alpha_sum_bounded_by_uncut_cost(g in arb_instance(1, 2), b in (0u64..10, 0u64..10)) {
        let budgets = NodeBudgetVector::new(&g, vec![b.0, b.1]).unwrap();
        if let Ok(opt) = oracle_nb_bmulti(&g, 0, &budgets) {
            let a = alpha_sum(&g, 0, &budgets).unwrap();
            for f in &opt.cuts {
                let rest = edge_sum(&g, 0, (0..g.m()).filter(|&e| !f.contains(e)));
                prop_assert!(a <= rest, "{} > {}", a, rest);
            }
        }
    }

    #[test]
    fn arbitrary_rank_sides_are_feasible(g in arb_instance(1, 1), b in 0u64..10, seed in any::<u64>()) {
        let budgets = NodeBudgetVector::new(&g, vec![b]).unwrap();
        if let NbOutcome::Cut(out) = nb_bmulti_arbitrary_rank(&g, 0, &budgets, &mut rng_from_seed(seed)).unwrap() {
            prop_assert_eq!(&out.cut, &delta_of_side(&g, &out.side));
            prop_assert!(
                budgets.admits_set(&g, &out.side) || budgets.admits_set(&g, &complement(&out.side))
            );
        }
    }

    #[test]
    fn min_cut_output_is_a_cut(g in arb_instance(1, 0), seed in any::<u64>()) {
        let out = hypergraph_min_cut(&g, 0, &mut rng_from_seed(seed)).unwrap();
        let catalog = build_catalog(&g).unwrap().cuts();
        prop_assert!(catalog.contains(&out.cut));
        let connected = catalog.iter().all(|c| !c.is_empty());
        prop_assert!(!connected || !out.cut.is_empty());
    }

    #[test]
    fn size_alpha_sum_bounded_by_uncut_count(g in arb_instance(1, 0), k in 2usize..=3, big in 1u64..=2) {
        let mut sizes = vec![1; k];
        sizes[k - 1] = big;
        let s = SizeVector::new(sizes).unwrap();
        prop_assume!(g.n() as u64 > s.sigma(k));
        let n = g.n() as u64;
        let a: BigRational = g
            .edges()
            .iter()
            .map(|e| alpha_size(n, e.len() as u64, s.sigma(k - 1)).unwrap())
            .fold(BigRational::zero(), |x, y| x + y);
        for f in oracle_kcut(&g, None, &s, None).unwrap().cuts {
            let rest = BigRational::from_integer(((g.m() - f.len()) as u64).into());
            prop_assert!(a <= rest);
        }
    }

    #[test]
    fn size_trace_only_contracts_small_edges(g in arb_instance(1, 0), k in 2usize..=3, seed in any::<u64>()) {
        let s = SizeVector::new(vec![1; k]).unwrap();
        let out = size_constrained_min_k_cut(&g, &s, None, &mut rng_from_seed(seed)).unwrap();
        for step in &out.trace {
            prop_assert!(step.image_size >= 2);
            prop_assert!((step.image_size as u64) <= step.live as u64 - s.sigma(k - 1));
        }
        match &out.partition {
            Some(x) => prop_assert_eq!(&out.cut, &delta_partition(&g, x).unwrap()),
            None => prop_assert!(out.cut.check_in(&g).is_ok()),
        }
    }

    #[test]
    fn size_algorithm_ignores_weights(g in arb_instance(1, 1), seed in any::<u64>()) {
        let s = SizeVector::new(vec![1, 2]).unwrap();
        let other = g
            .with_vertex_weights(g.vertex_weights().iter().map(|w| vec![w[0] * 3 + 1]).collect())
            .unwrap();
        let a = size_constrained_min_k_cut(&g, &s, None, &mut rng_from_seed(seed)).unwrap();
        let b = size_constrained_min_k_cut(&other, &s, None, &mut rng_from_seed(seed)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn seeded_runs_replay(g in arb_instance(2, 0), seed in any::<u64>()) {
        let c = Criteria::all(&g).unwrap();
        let a = enumerate_multiobjective(&g, &c, 40, &mut rng_from_seed(seed)).unwrap();
        let b = enumerate_multiobjective(&g, &c, 40, &mut rng_from_seed(seed)).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn lower_bound_pareto_counts() {
    for t in 1..=3usize {
        for n in t + 2..=12 {
            let lb = gen_lower_bound_instance(n, t).unwrap();
            let g = &lb.graph;
            let catalog = build_catalog(g).unwrap();
            let bound = ((n - 2) as f64 / t as f64).powi(t as i32);
            let pareto = oracle_pareto(&catalog);
            assert!(
                pareto.len() as f64 >= bound,
                "n={n} t={t}: {}",
                pareto.len()
            );
            if t >= 2 {
                let c = Criteria::all(g).unwrap();
                let budget = vec![t as u64 * 2; t - 1];
                let opt = oracle_bmulti(&catalog, &c, &budget);
                assert!(opt.len() as f64 >= bound, "n={n} t={t}: {}", opt.len());
            }
        }
    }
}
