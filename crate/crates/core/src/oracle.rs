//! Exhaustive reference solvers for small instances.
//!
//! Every oracle enumerates vertex subsets or labellings outright, so sizes
//! are capped: `n ≤ 20` for subset scans and `n ≤ 12` for k-labellings.
//! The `_unguarded` variants skip the cap.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::cut::{Cut, KPartition};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::multiobjective::Criteria;
use crate::node_budget::NodeBudgetVector;
use crate::size_constrained::SizeVector;

pub const SUBSET_GUARD: usize = 20;
pub const LABEL_GUARD: usize = 12;

/// One distinct cut with its cost vector and a side that produces it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub cut: Cut,
    pub costs: Vec<u64>,
    pub side: Vec<bool>,
}

/// Every distinct `δ(X)` over nonempty proper `X`, sorted by cut.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutCatalog {
    pub t: usize,
    pub entries: Vec<CatalogEntry>,
}

impl CutCatalog {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, cut: &Cut) -> Option<&CatalogEntry> {
        self.entries
            .binary_search_by(|e| e.cut.cmp(cut))
            .ok()
            .map(|i| &self.entries[i])
    }

    pub fn cuts(&self) -> BTreeSet<Cut> {
        self.entries.iter().map(|e| e.cut.clone()).collect()
    }

    /// Minimum of criterion `i` over all cuts.
    pub fn min_cost(&self, i: usize) -> Option<u64> {
        self.entries.iter().map(|e| e.costs[i]).min()
    }

    /// Cuts attaining [`CutCatalog::min_cost`].
    pub fn min_cuts(&self, i: usize) -> BTreeSet<Cut> {
        let Some(best) = self.min_cost(i) else {
            return BTreeSet::new();
        };
        self.entries
            .iter()
            .filter(|e| e.costs[i] == best)
            .map(|e| e.cut.clone())
            .collect()
    }
}

fn edge_masks(g: &Hypergraph) -> Vec<u64> {
    g.edges()
        .iter()
        .map(|e| e.iter().fold(0u64, |m, &v| m | (1 << v)))
        .collect()
}

fn cut_of_mask(masks: &[u64], x: u64) -> Cut {
    masks
        .iter()
        .enumerate()
        .filter(|(_, &m)| m & x != 0 && m & !x != 0)
        .map(|(e, _)| e)
        .collect()
}

fn side_of_mask(n: usize, x: u64) -> Vec<bool> {
    (0..n).map(|v| x >> v & 1 == 1).collect()
}

fn guard(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::TooLarge(format!(
            "oracle scans are limited to n <= {cap} (got {n}); use the unguarded variant to override"
        )));
    }
    Ok(())
}

pub fn build_catalog(g: &Hypergraph) -> Result<CutCatalog> {
    guard(g.n(), SUBSET_GUARD)?;
    build_catalog_unguarded(g)
}

/// Scans the `2^{n−1}−1` bipartitions with the last vertex on the far side.
pub fn build_catalog_unguarded(g: &Hypergraph) -> Result<CutCatalog> {
    let n = g.n();
    if n >= 64 {
        return Err(Error::TooLarge("bitmask scan needs n < 64".into()));
    }
    let masks = edge_masks(g);
    let half: u64 = 1 << (n - 1);
    let found: BTreeMap<Cut, u64> = (1..half)
        .into_par_iter()
        .fold(BTreeMap::new, |mut acc: BTreeMap<Cut, u64>, x| {
            acc.entry(cut_of_mask(&masks, x)).or_insert(x);
            acc
        })
        .reduce(BTreeMap::new, |mut a, b| {
            for (c, x) in b {
                let slot = a.entry(c).or_insert(x);
                *slot = (*slot).min(x);
            }
            a
        });
    let entries = found
        .into_iter()
        .map(|(cut, x)| {
            let costs = (0..g.t_costs())
                .map(|i| cut.edge_ids().iter().map(|&e| g.cost(e, i)).sum())
                .collect();
            CatalogEntry {
                cut,
                costs,
                side: side_of_mask(n, x),
            }
        })
        .collect();
    Ok(CutCatalog {
        t: g.t_costs(),
        entries,
    })
}

/// `a` dominates `b`: no worse anywhere and strictly better somewhere.
pub fn dominates(a: &[u64], b: &[u64]) -> bool {
    a.len() == b.len()
        && a.iter().zip(b).all(|(x, y)| x <= y)
        && a.iter().zip(b).any(|(x, y)| x < y)
}

pub fn oracle_pareto(catalog: &CutCatalog) -> BTreeSet<Cut> {
    catalog
        .entries
        .iter()
        .filter(|f| {
            !catalog
                .entries
                .iter()
                .any(|o| dominates(&o.costs, &f.costs))
        })
        .map(|f| f.cut.clone())
        .collect()
}

/// Pareto-optimal cuts with respect to the listed criteria only.
pub fn oracle_pareto_for(catalog: &CutCatalog, criteria: &Criteria) -> BTreeSet<Cut> {
    let pick = |c: &[u64]| criteria.indices().iter().map(|&i| c[i]).collect::<Vec<_>>();
    catalog
        .entries
        .iter()
        .filter(|f| {
            let fc = pick(&f.costs);
            !catalog
                .entries
                .iter()
                .any(|o| dominates(&pick(&o.costs), &fc))
        })
        .map(|f| f.cut.clone())
        .collect()
}

/// Multiobjective min-cuts with the last cost function as objective.
pub fn oracle_multiobjective(catalog: &CutCatalog) -> BTreeSet<Cut> {
    let order: Vec<usize> = (0..catalog.t).collect();
    multiobjective_in_order(catalog, &order)
}

/// Multiobjective min-cuts for an explicit criterion order.
pub fn oracle_multiobjective_for(catalog: &CutCatalog, criteria: &Criteria) -> BTreeSet<Cut> {
    multiobjective_in_order(catalog, criteria.indices())
}

fn multiobjective_in_order(catalog: &CutCatalog, order: &[usize]) -> BTreeSet<Cut> {
    let (&obj, rest) = order.split_last().expect("at least one criterion");
    catalog
        .entries
        .iter()
        .filter(|f| {
            !catalog.entries.iter().any(|o| {
                o.costs[obj] < f.costs[obj] && rest.iter().all(|&i| o.costs[i] <= f.costs[i])
            })
        })
        .map(|f| f.cut.clone())
        .collect()
}

/// Minimisers of the objective among cuts within `budgets` on the budgeted
/// criteria; empty when no cut fits.
pub fn oracle_bmulti(catalog: &CutCatalog, criteria: &Criteria, budgets: &[u64]) -> BTreeSet<Cut> {
    let obj = criteria.objective();
    let fits: Vec<&CatalogEntry> = catalog
        .entries
        .iter()
        .filter(|e| {
            criteria
                .budgeted()
                .iter()
                .zip(budgets)
                .all(|(&i, &b)| e.costs[i] <= b)
        })
        .collect();
    let Some(best) = fits.iter().map(|e| e.costs[obj]).min() else {
        return BTreeSet::new();
    };
    fits.into_iter()
        .filter(|e| e.costs[obj] == best)
        .map(|e| e.cut.clone())
        .collect()
}

fn q(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Multipliers `λ ∈ (0,1)` at which the lower envelope of
/// `λ·c_1 + (1−λ)·c_2` can change, together with one interior point of
/// every gap between them.
pub fn parametric_candidates(catalog: &CutCatalog) -> Result<Vec<BigRational>> {
    if catalog.t != 2 {
        return Err(Error::Unsupported(format!(
            "parametric oracle needs t = 2 (got {})",
            catalog.t
        )));
    }
    let vecs: BTreeSet<(u64, u64)> = catalog
        .entries
        .iter()
        .map(|e| (e.costs[0], e.costs[1]))
        .collect();
    let vecs: Vec<(i64, i64)> = vecs
        .into_iter()
        .map(|(a, b)| (a as i64, b as i64))
        .collect();
    let mut crit = BTreeSet::new();
    let (zero, one) = (BigRational::zero(), BigRational::one());
    for (i, &(a1, b1)) in vecs.iter().enumerate() {
        for &(a2, b2) in &vecs[i + 1..] {
            // λ(a1−a2) + (1−λ)(b1−b2) = 0  ⇒  λ = (b2−b1)/((a1−a2)−(b1−b2))
            let den = (a1 - a2) - (b1 - b2);
            if den != 0 {
                let l = q(b2 - b1, den);
                if l > zero && l < one {
                    crit.insert(l);
                }
            }
        }
    }
    let mut points: Vec<BigRational> = vec![zero];
    points.extend(crit);
    points.push(one);
    let mut out = Vec::new();
    for w in points.windows(2) {
        out.push((&w[0] + &w[1]) / q(2, 1));
        if !w[1].is_one() {
            out.push(w[1].clone());
        }
    }
    Ok(out)
}

/// Cuts that minimise `λ·c_1 + (1−λ)·c_2` for some `λ ∈ (0,1)`.
pub fn oracle_parametric_t2(catalog: &CutCatalog) -> Result<BTreeSet<Cut>> {
    let mut out = BTreeSet::new();
    for l in parametric_candidates(catalog)? {
        out.extend(minimisers_at(catalog, &l));
    }
    Ok(out)
}

/// Cuts minimising `λ·c_1 + (1−λ)·c_2` at one multiplier.
pub fn minimisers_at(catalog: &CutCatalog, l: &BigRational) -> BTreeSet<Cut> {
    let one = BigRational::one();
    let val = |e: &CatalogEntry| {
        l * BigRational::from_integer(e.costs[0].into())
            + (&one - l) * BigRational::from_integer(e.costs[1].into())
    };
    let vals: Vec<BigRational> = catalog.entries.iter().map(val).collect();
    let Some(best) = vals.iter().min().cloned() else {
        return BTreeSet::new();
    };
    catalog
        .entries
        .iter()
        .zip(&vals)
        .filter(|(_, v)| **v == best)
        .map(|(e, _)| e.cut.clone())
        .collect()
}

/// The three nested solution families of a two-criteria instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Containment {
    pub parametric: BTreeSet<Cut>,
    pub pareto: BTreeSet<Cut>,
    pub multiobjective: BTreeSet<Cut>,
}

impl Containment {
    /// `parametric ⊆ pareto ⊆ multiobjective`.
    pub fn holds(&self) -> bool {
        self.parametric.is_subset(&self.pareto) && self.pareto.is_subset(&self.multiobjective)
    }

    pub fn pareto_strict(&self) -> bool {
        self.parametric.len() < self.pareto.len()
    }

    pub fn multiobjective_strict(&self) -> bool {
        self.pareto.len() < self.multiobjective.len()
    }
}

pub fn containment(catalog: &CutCatalog) -> Result<Containment> {
    Ok(Containment {
        parametric: oracle_parametric_t2(catalog)?,
        pareto: oracle_pareto(catalog),
        multiobjective: oracle_multiobjective(catalog),
    })
}

/// Optimum value with every cut attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Optimum {
    pub value: u64,
    pub cuts: BTreeSet<Cut>,
}

fn set_weights(g: &Hypergraph, x: u64, i: usize) -> u64 {
    (0..g.n())
        .filter(|&v| x >> v & 1 == 1)
        .map(|v| g.weight(v, i))
        .sum()
}

/// Node-budgeted optimum: minimum `c(δ(X))` over nonempty proper feasible `X`.
pub fn oracle_nb_bmulti(g: &Hypergraph, cost: usize, b: &NodeBudgetVector) -> Result<Optimum> {
    guard(g.n(), SUBSET_GUARD)?;
    g.check_cost_criterion(cost)?;
    let n = g.n();
    let masks = edge_masks(g);
    let full: u64 = (1 << n) - 1;
    let feasible: Vec<Cut> = (1..full)
        .into_par_iter()
        .filter(|&x| (0..g.t_weights()).all(|i| set_weights(g, x, i) <= b.as_slice()[i]))
        .map(|x| cut_of_mask(&masks, x))
        .collect();
    let price = |c: &Cut| c.edge_ids().iter().map(|&e| g.cost(e, cost)).sum::<u64>();
    let value = feasible
        .iter()
        .map(price)
        .min()
        .ok_or_else(|| Error::Infeasible("no nonempty proper feasible vertex set".into()))?;
    let cuts = feasible.into_iter().filter(|c| price(c) == value).collect();
    Ok(Optimum { value, cuts })
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Whether some matching of parts to bounds has `w(X_p) ≥ s_{π(p)}` for all parts.
pub fn some_matching_fits(part_weights: &[u64], sizes: &[u64]) -> bool {
    permutations(sizes.len())
        .iter()
        .any(|p| part_weights.iter().zip(p).all(|(w, &j)| *w >= sizes[j]))
}

/// Size-constrained min-k-cut by scanning all `k^n` labellings.
///
/// `weight = None` means unit vertex weights; `cost = None` counts
/// hyperedges. Zero vertex weights are rejected.
pub fn oracle_kcut(
    g: &Hypergraph,
    weight: Option<usize>,
    s: &SizeVector,
    cost: Option<usize>,
) -> Result<Optimum> {
    guard(g.n(), LABEL_GUARD)?;
    oracle_kcut_unguarded(g, weight, s, cost)
}

pub fn oracle_kcut_unguarded(
    g: &Hypergraph,
    weight: Option<usize>,
    s: &SizeVector,
    cost: Option<usize>,
) -> Result<Optimum> {
    let n = g.n();
    let k = s.k();
    if let Some(c) = cost {
        g.check_cost_criterion(c)?;
    }
    let w: Vec<u64> = match weight {
        Some(i) => {
            g.check_weight_criterion(i)?;
            (0..n).map(|v| g.weight(v, i)).collect()
        }
        None => vec![1; n],
    };
    if w.contains(&0) {
        return Err(Error::input(
            "size-constrained oracle needs positive vertex weights",
        ));
    }
    let total = (k as u64)
        .checked_pow(n as u32)
        .ok_or_else(|| Error::TooLarge("k^n overflows".into()))?;
    let perms = permutations(k);
    let price = |x: &KPartition| -> u64 {
        let cut = crate::cut::delta_partition(g, x).expect("full-length labelling");
        match cost {
            Some(c) => cut.edge_ids().iter().map(|&e| g.cost(e, c)).sum(),
            None => cut.len() as u64,
        }
    };
    let scored: Vec<(u64, Cut)> = (0..total)
        .into_par_iter()
        .filter_map(|code| {
            let mut labels = Vec::with_capacity(n);
            let mut c = code;
            for _ in 0..n {
                labels.push((c % k as u64) as usize);
                c /= k as u64;
            }
            let mut parts = vec![0u64; k];
            for (v, &l) in labels.iter().enumerate() {
                parts[l] += w[v];
            }
            if parts.contains(&0) {
                return None;
            }
            if !perms
                .iter()
                .any(|p| parts.iter().zip(p).all(|(pw, &j)| *pw >= s.sizes()[j]))
            {
                return None;
            }
            let x = KPartition::new(labels, k).expect("labels below k");
            let value = price(&x);
            Some((
                value,
                crate::cut::delta_partition(g, &x).expect("full-length labelling"),
            ))
        })
        .collect();
    let value = scored
        .iter()
        .map(|(v, _)| *v)
        .min()
        .ok_or_else(|| Error::Infeasible("no k-partition meets the size bounds".into()))?;
    let cuts = scored
        .into_iter()
        .filter(|(v, _)| *v == value)
        .map(|(_, c)| c)
        .collect();
    Ok(Optimum { value, cuts })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> Hypergraph {
        Hypergraph::unit(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    fn parallel(costs: &[(u64, u64)]) -> CutCatalog {
        CutCatalog {
            t: 2,
            entries: costs
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| CatalogEntry {
                    cut: Cut::new(vec![i]),
                    costs: vec![a, b],
                    side: vec![],
                })
                .collect(),
        }
    }

    #[test]
    fn catalog_examples() {
        let c = build_catalog(&triangle()).unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.entries.iter().all(|e| e.cut.len() == 2));
        let span = Hypergraph::unit(4, vec![vec![0, 1, 2, 3]]).unwrap();
        assert_eq!(
            build_catalog(&span).unwrap().cuts(),
            [Cut::new(vec![0])].into_iter().collect()
        );
        let two = Hypergraph::unit(2, vec![vec![0, 1]]).unwrap();
        assert_eq!(build_catalog(&two).unwrap().len(), 1);
    }

    #[test]
    fn guard_refuses_large() {
        let g = Hypergraph::unit(21, vec![vec![0, 1]]).unwrap();
        assert_eq!(build_catalog(&g).unwrap_err().kind(), "too_large");
    }

    #[test]
    fn dominance() {
        assert!(dominates(&[3, 4], &[3, 5]));
        assert!(!dominates(&[1, 5], &[2, 2]));
        assert!(!dominates(&[2, 2], &[1, 5]));
        assert!(!dominates(&[2, 2], &[2, 2]));
    }

    #[test]
    fn families_on_fixed_vectors() {
        let c = parallel(&[(1, 5), (2, 2), (3, 1), (2, 3)]);
        let first3: BTreeSet<Cut> = (0..3).map(|i| Cut::new(vec![i])).collect();
        assert_eq!(oracle_pareto(&c), first3);
        assert_eq!(oracle_multiobjective(&c), first3);
    }

    #[test]
    fn non_parametric_pareto_point() {
        // (4,5) is not dominated, but lies above the envelope of (2,6),(6,2).
        let c = parallel(&[(2, 6), (6, 2), (4, 5)]);
        assert_eq!(oracle_pareto(&c).len(), 3);
        let p = oracle_parametric_t2(&c).unwrap();
        assert!(!p.contains(&Cut::new(vec![2])));
        assert_eq!(p.len(), 2);
        // Ties at the breakpoint count.
        let tie = parallel(&[(1, 3), (3, 1), (2, 2)]);
        assert_eq!(oracle_parametric_t2(&tie).unwrap().len(), 3);
    }

    #[test]
    fn parametric_needs_two_criteria() {
        let c = build_catalog(&triangle()).unwrap();
        assert_eq!(oracle_parametric_t2(&c).unwrap_err().kind(), "unsupported");
    }

    #[test]
    fn bmulti_examples() {
        let c = parallel(&[(1, 5), (2, 2), (3, 1), (2, 3)]);
        let g = Hypergraph::with_dims(2, 2, 0, vec![vec![0, 1]], vec![vec![1, 1]], vec![vec![]; 2])
            .unwrap();
        let cr = Criteria::all(&g).unwrap();
        assert_eq!(
            oracle_bmulti(&c, &cr, &[2]),
            [Cut::new(vec![1])].into_iter().collect()
        );
        assert!(oracle_bmulti(&c, &cr, &[0]).is_empty());
    }

    #[test]
    fn node_oracle() {
        // Star centred at 0, heavy leaf 3.
        let g = Hypergraph::new(
            4,
            vec![vec![0, 1], vec![0, 2], vec![0, 3]],
            vec![vec![1]; 3],
            vec![vec![1], vec![1], vec![1], vec![5]],
        )
        .unwrap();
        let b = NodeBudgetVector::new(&g, vec![3]).unwrap();
        let opt = oracle_nb_bmulti(&g, 0, &b).unwrap();
        assert_eq!(opt.value, 1);
        // δ({3}) is still witnessed by its light complement {0,1,2}.
        assert_eq!(opt.cuts.len(), 3);
        let b2 = NodeBudgetVector::new(&g, vec![2]).unwrap();
        let opt2 = oracle_nb_bmulti(&g, 0, &b2).unwrap();
        assert_eq!(
            opt2.cuts,
            [Cut::new(vec![0]), Cut::new(vec![1])].into_iter().collect()
        );
        let tight = NodeBudgetVector::new(&g, vec![0]).unwrap();
        assert_eq!(
            oracle_nb_bmulti(&g, 0, &tight).unwrap_err().kind(),
            "infeasible"
        );
    }

    #[test]
    fn kcut_examples() {
        let s11 = SizeVector::new(vec![1, 1]).unwrap();
        assert_eq!(oracle_kcut(&triangle(), None, &s11, None).unwrap().value, 2);
        let h = Hypergraph::unit(3, vec![vec![0, 1, 2], vec![0, 1]]).unwrap();
        let s12 = SizeVector::new(vec![1, 2]).unwrap();
        let opt = oracle_kcut(&h, None, &s12, None).unwrap();
        assert_eq!(opt.value, 1);
        assert_eq!(opt.cuts, [Cut::new(vec![0])].into_iter().collect());
        let s111 = SizeVector::new(vec![1, 1, 1]).unwrap();
        assert_eq!(
            oracle_kcut(&triangle(), None, &s111, None).unwrap().value,
            3
        );
        let s22 = SizeVector::new(vec![2, 2]).unwrap();
        assert_eq!(
            oracle_kcut(&triangle(), None, &s22, None)
                .unwrap_err()
                .kind(),
            "infeasible"
        );
    }

    #[test]
    fn matching_is_order_free() {
        assert!(some_matching_fits(&[3, 1], &[1, 2]));
        assert!(!some_matching_fits(&[1, 1], &[1, 2]));
    }

    #[test]
    fn witness_has_strict_containments() {
        let g = crate::analysis::containment_witness();
        let ct = containment(&build_catalog(&g).unwrap()).unwrap();
        assert!(ct.holds());
        assert!(ct.pareto_strict());
        assert!(ct.multiobjective_strict());
        assert!(ct.pareto.contains(&Cut::new(vec![0, 1, 2])));
        assert!(!ct.parametric.contains(&Cut::new(vec![0, 1, 2])));
        assert!(ct.multiobjective.contains(&Cut::new(vec![3])));
        assert!(!ct.pareto.contains(&Cut::new(vec![3])));
    }
}
