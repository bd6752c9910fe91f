mod args;
mod report;

use std::fs;
use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use hypercut::analysis::{self, RandomInstanceParams};
use hypercut::harness::{self, Problem};
use hypercut::multiobjective::{self, PipelineReps};
use hypercut::node_budget;
use hypercut::oracle;
use hypercut::sampling::{rng_from_seed, trial_rng};
use hypercut::size_constrained;
use hypercut::{BudgetVector, Criteria, Cut, Error, Hypergraph, NodeBudgetVector, SizeVector};

use args::*;
use report::{Failure, Out};

type CliResult<T> = std::result::Result<T, Failure>;

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => return report::clap_failure(e),
    };
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global()
        {
            return Failure::usage(format!("cannot size the thread pool: {e}")).emit();
        }
    }
    let out = Out::new(cli.format);
    match run(&cli, &out) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => f.emit(),
    }
}

fn read_instance(path: &Path) -> CliResult<Hypergraph> {
    let bytes = fs::read(path).map_err(|e| Failure::io(path, e))?;
    Ok(hypercut::load_instance(&bytes)?)
}

fn write_instance(g: &Hypergraph, path: Option<&Path>, out: &Out) -> CliResult<()> {
    let bytes = hypercut::save_instance(g);
    match path {
        Some(p) => {
            fs::write(p, &bytes).map_err(|e| Failure::io(p, e))?;
            out.record(
                &json!({"written": p.display().to_string(), "n": g.n(), "m": g.m(), "digest": hypercut::instance_digest(g)}),
                &format!("written={} n={} m={} digest={}", p.display(), g.n(), g.m(), hypercut::instance_digest(g)),
            );
        }
        None => report::line(String::from_utf8_lossy(&bytes)),
    }
    Ok(())
}

fn parse_reps(s: &str) -> CliResult<Option<u64>> {
    if s == "auto" {
        return Ok(None);
    }
    match s.parse::<u64>() {
        Ok(0) | Err(_) => Err(Failure::usage(format!(
            "repetitions must be a positive integer or auto, got {s:?}"
        ))),
        Ok(v) => Ok(Some(v)),
    }
}

fn parse_cut(g: &Hypergraph, s: &str) -> CliResult<Cut> {
    let ids = s
        .split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<usize>()
                .map_err(|_| Failure::usage(format!("bad hyperedge id {t:?}")))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let cut = Cut::new(ids);
    cut.check_in(g)?;
    Ok(cut)
}

fn criteria(g: &Hypergraph, b: &EdgeBudgets) -> CliResult<(Criteria, BudgetVector)> {
    let c = match &b.criteria {
        Some(order) => Criteria::new(g, order.clone())?,
        None => Criteria::all(g)?,
    };
    let bv = BudgetVector::new(&c, b.budgets.clone())?;
    Ok((c, bv))
}

fn size_vector(k: &KCutArgs) -> CliResult<SizeVector> {
    if k.sizes.len() != k.k {
        return Err(Failure::usage(format!(
            "--k {} but {} sizes given",
            k.k,
            k.sizes.len()
        )));
    }
    Ok(SizeVector::new(k.sizes.clone())?)
}

fn kcut_cost(k: &KCutArgs) -> Option<usize> {
    k.weighted_costs.then_some(0)
}

fn run(cli: &Cli, out: &Out) -> CliResult<bool> {
    let seed = cli.seed;
    match &cli.command {
        Command::Gen(Gen::Lowerbound { n, t, out: path }) => {
            let inst = analysis::gen_lower_bound_instance(*n, *t)?;
            write_instance(&inst.graph, path.as_deref(), out)?;
        }
        Command::Gen(Gen::Random {
            n,
            m,
            rank,
            t_costs,
            t_weights,
            max_cost,
            max_weight,
            positive_weights,
            out: path,
        }) => {
            let p = RandomInstanceParams {
                n: *n,
                m: *m,
                rank: *rank,
                t_costs: *t_costs,
                t_weights: *t_weights,
                max_cost: *max_cost,
                max_weight: *max_weight,
                positive_weights: *positive_weights,
            };
            let g = analysis::gen_random_instance(&p, seed)?;
            write_instance(&g, path.as_deref(), out)?;
        }
        Command::Solve(s) => solve(s, seed, out)?,
        Command::Enumerate(e) => enumerate(e, seed, out)?,
        Command::Verify(Verify::Pareto { inst, cut, reps }) => {
            let g = read_instance(&inst.instance)?;
            let c = Criteria::all(&g)?;
            let f = parse_cut(&g, cut)?;
            let reps = parse_reps(reps)?.unwrap_or_else(|| {
                multiobjective::default_verify_repetitions(g.n(), g.rank(), c.t())
            });
            let mut rng = rng_from_seed(seed);
            let witness = multiobjective::find_dominating(&g, &c, &f, reps, &mut rng);
            let ok = witness.is_none();
            let wj = witness.as_ref().map(|w| report::cut_json(&g, w));
            out.record(
                &json!({"pareto": ok, "cut": report::cut_json(&g, &f), "witness": wj, "repetitions": reps}),
                &match &witness {
                    None => format!("pareto=true cut={} reps={reps}", report::ids(&f)),
                    Some(w) => format!("pareto=false cut={} witness={} reps={reps}", report::ids(&f), report::ids(w)),
                },
            );
            return Ok(ok);
        }
        Command::Oracle(o) => oracle_cmd(o, out)?,
        Command::Estimate(e) => return estimate(e, seed, out),
        Command::Check(c) => return check(c, seed, out),
    }
    Ok(true)
}

fn solve(s: &Solve, seed: u64, out: &Out) -> CliResult<()> {
    let mut rng = rng_from_seed(seed);
    match s {
        Solve::Bmulti {
            inst,
            budgets,
            trials,
        } => {
            let g = read_instance(&inst.instance)?;
            let (c, b) = criteria(&g, budgets)?;
            if *trials == 0 {
                return Err(Failure::usage("trials must be at least 1"));
            }
            let runs: Vec<_> = (0..*trials)
                .map(|i| {
                    multiobjective::b_multiobjective_min_cut(&g, &c, &b, &mut trial_rng(seed, i))
                })
                .collect();
            let admissible =
                |s: &&hypercut::SidedCut| s.is_proper() && b.admits(&c.costs(&g, &s.cut));
            let res = runs
                .iter()
                .filter(admissible)
                .min_by_key(|s| c.costs(&g, &s.cut)[c.t() - 1])
                .unwrap_or(&runs[0]);
            out.cut(&g, &res.cut, Some(&res.side));
        }
        Solve::NbBmulti {
            inst,
            budgets,
            rank_mode,
        } => {
            let g = read_instance(&inst.instance)?;
            let b = NodeBudgetVector::new(&g, budgets.budgets.clone())?;
            match rank_mode {
                RankMode::Constant => {
                    let res = node_budget::nb_bmulti_constant_rank(&g, budgets.cost, &b, &mut rng)?;
                    out.cut(&g, &res.cut, Some(&res.side));
                }
                RankMode::Arbitrary => {
                    match node_budget::nb_bmulti_arbitrary_rank(&g, budgets.cost, &b, &mut rng)? {
                        hypercut::NbOutcome::Infeasible => {
                            return Err(
                                Error::Infeasible("no vertex satisfies the budgets".into()).into()
                            )
                        }
                        hypercut::NbOutcome::Cut(sc) => out.cut(&g, &sc.cut, Some(&sc.side)),
                        hypercut::NbOutcome::AllEdges(cut) => out.cut(&g, &cut, None),
                    }
                }
            }
        }
        Solve::Hmincut { inst, trials, cost } => {
            let g = read_instance(&inst.instance)?;
            let n = g.n() as f64;
            let trials =
                trials.unwrap_or_else(|| (n * (n - 1.0) / 2.0 * n.ln()).ceil().max(1.0) as u64);
            if trials == 0 {
                return Err(Failure::usage("trials must be at least 1"));
            }
            let mut best: Option<(u64, hypercut::SidedCut)> = None;
            for i in 0..trials {
                let sc = node_budget::hypergraph_min_cut(&g, *cost, &mut trial_rng(seed, i))?;
                let v = hypercut::cut_cost(&g, &sc.cut, *cost)?;
                if best.as_ref().is_none_or(|(bv, _)| v < *bv) {
                    best = Some((v, sc));
                }
            }
            let (_, sc) = best.expect("at least one trial");
            out.cut(&g, &sc.cut, Some(&sc.side));
        }
        Solve::Kcut { inst, kcut, trials } => {
            let g = read_instance(&inst.instance)?;
            let s = size_vector(kcut)?;
            if *trials == 0 {
                return Err(Failure::usage("trials must be at least 1"));
            }
            let cost = kcut_cost(kcut);
            let mut best: Option<(u64, hypercut::KCutOutcome)> = None;
            for i in 0..*trials {
                let res = size_constrained::size_constrained_min_k_cut(
                    &g,
                    &s,
                    cost,
                    &mut trial_rng(seed, i),
                )?;
                let fits = match &res.partition {
                    Some(x) if x.is_proper() => {
                        let w = match kcut.weight {
                            Some(wi) => x.part_weights(&g, wi),
                            None => {
                                let mut c = vec![0u64; s.k()];
                                x.assignment().iter().for_each(|&l| c[l] += 1);
                                c
                            }
                        };
                        s.admits(&w)
                    }
                    _ => false,
                };
                if !fits {
                    continue;
                }
                let v = match cost {
                    Some(ci) => hypercut::cut_cost(&g, &res.cut, ci)?,
                    None => res.cut.len() as u64,
                };
                if best.as_ref().is_none_or(|(bv, _)| v < *bv) {
                    best = Some((v, res));
                }
            }
            let Some((v, res)) = best else {
                return Err(Error::Infeasible(
                    "no run produced a partition meeting the size bounds".into(),
                )
                .into());
            };
            let labels = res.partition.as_ref().map(|x| x.assignment().to_vec());
            out.record(
                &json!({"cut": report::cut_json(&g, &res.cut), "value": v, "labels": labels}),
                &format!(
                    "edges={} value={v} labels={}",
                    report::ids(&res.cut),
                    labels.map(|l| report::join(&l)).unwrap_or_default()
                ),
            );
        }
    }
    Ok(())
}

fn enumerate(e: &Enumerate, seed: u64, out: &Out) -> CliResult<()> {
    let mut rng = rng_from_seed(seed);
    match e {
        Enumerate::Multi { inst, reps } => {
            let g = read_instance(&inst.instance)?;
            let c = Criteria::all(&g)?;
            let reps = parse_reps(reps)?.unwrap_or_else(|| {
                multiobjective::default_enum_repetitions(g.n(), g.rank(), c.t())
            });
            let set = multiobjective::enumerate_multiobjective(&g, &c, reps, &mut rng)?;
            out.cuts(&g, &set);
        }
        Enumerate::Pareto {
            inst,
            reps,
            verify_reps,
        } => {
            let g = read_instance(&inst.instance)?;
            let c = Criteria::all(&g)?;
            let r = PipelineReps {
                enumeration: parse_reps(reps)?,
                verification: parse_reps(verify_reps)?,
            };
            let set = multiobjective::enumerate_pareto(&g, &c, r, &mut rng)?;
            out.cuts(&g, &set);
        }
        Enumerate::NbMulti { inst, reps, cost } => {
            let g = read_instance(&inst.instance)?;
            let reps = parse_reps(reps)?
                .unwrap_or_else(|| node_budget::default_nb_enum_repetitions(g.n(), g.rank()));
            let set = node_budget::enumerate_node_budgeted(&g, *cost, reps, &mut rng)?;
            out.cuts(&g, &set);
        }
    }
    Ok(())
}

fn oracle_cmd(o: &Oracle, out: &Out) -> CliResult<()> {
    match o {
        Oracle::Pareto(inst) => {
            let g = read_instance(&inst.instance)?;
            out.cuts(&g, &oracle::oracle_pareto(&oracle::build_catalog(&g)?));
        }
        Oracle::Multi(inst) => {
            let g = read_instance(&inst.instance)?;
            out.cuts(
                &g,
                &oracle::oracle_multiobjective(&oracle::build_catalog(&g)?),
            );
        }
        Oracle::Bmulti { inst, budgets } => {
            let g = read_instance(&inst.instance)?;
            let (c, b) = criteria(&g, budgets)?;
            let set = oracle::oracle_bmulti(&oracle::build_catalog(&g)?, &c, b.as_slice());
            if set.is_empty() {
                return Err(Error::Infeasible("no cut fits the budgets".into()).into());
            }
            out.cuts(&g, &set);
        }
        Oracle::Parametric(inst) => {
            let g = read_instance(&inst.instance)?;
            out.cuts(
                &g,
                &oracle::oracle_parametric_t2(&oracle::build_catalog(&g)?)?,
            );
        }
        Oracle::NbBmulti { inst, budgets } => {
            let g = read_instance(&inst.instance)?;
            let b = NodeBudgetVector::new(&g, budgets.budgets.clone())?;
            let opt = oracle::oracle_nb_bmulti(&g, budgets.cost, &b)?;
            out.optimum(&g, opt.value, &opt.cuts);
        }
        Oracle::Kcut { inst, kcut } => {
            let g = read_instance(&inst.instance)?;
            let s = size_vector(kcut)?;
            let opt = oracle::oracle_kcut(&g, kcut.weight, &s, kcut_cost(kcut))?;
            out.optimum(&g, opt.value, &opt.cuts);
        }
    }
    Ok(())
}

fn estimate(e: &Estimate, seed: u64, out: &Out) -> CliResult<bool> {
    let (g, problem, t) = match e {
        Estimate::Bmulti {
            inst,
            budgets,
            trials,
        } => {
            let g = read_instance(&inst.instance)?;
            let (criteria, budgets) = criteria(&g, budgets)?;
            (g, Problem::BMulti { criteria, budgets }, trials)
        }
        Estimate::NbBmulti {
            inst,
            budgets,
            rank_mode,
            trials,
        } => {
            let g = read_instance(&inst.instance)?;
            let b = NodeBudgetVector::new(&g, budgets.budgets.clone())?;
            let p = match rank_mode {
                RankMode::Constant => Problem::NbConstantRank {
                    cost: budgets.cost,
                    budgets: b,
                },
                RankMode::Arbitrary => Problem::NbArbitraryRank {
                    cost: budgets.cost,
                    budgets: b,
                },
            };
            (g, p, trials)
        }
        Estimate::Hmincut { inst, cost, trials } => (
            read_instance(&inst.instance)?,
            Problem::MinCut { cost: *cost },
            trials,
        ),
        Estimate::Kcut { inst, kcut, trials } => {
            let g = read_instance(&inst.instance)?;
            let sizes = size_vector(kcut)?;
            (
                g,
                Problem::KCut {
                    sizes,
                    weight: kcut.weight,
                    cost: kcut_cost(kcut),
                },
                trials,
            )
        }
    };
    let target = t
        .fixed_target
        .as_deref()
        .map(|s| parse_cut(&g, s))
        .transpose()?;
    let rep = harness::estimate(&g, &problem, t.trials, seed, target.as_ref())?;
    out.record(
        &serde_json::to_value(&rep).expect("report serializes"),
        &format!(
            "algorithm={} digest={} seed={} trials={} successes={} frequency={} floor={} sigma={} z_slack={} pass={} targets={} infeasible={}",
            rep.algorithm,
            rep.digest,
            rep.seed,
            rep.trials,
            rep.successes,
            rep.frequency,
            rep.floor,
            rep.sigma,
            rep.z_slack,
            rep.pass,
            rep.targets,
            rep.infeasible
        ),
    );
    Ok(rep.pass)
}

fn check(c: &Check, seed: u64, out: &Out) -> CliResult<bool> {
    match c {
        Check::LemmaLp { sweep } => {
            let mut rng = rng_from_seed(seed);
            let mut failures = Vec::new();
            for i in 0..*sweep {
                let inst = analysis::random_lp_instance(&mut rng);
                let closed = analysis::lp_closed_form(&inst)?;
                let brute = analysis::lp_bruteforce(&inst)?;
                if closed != brute {
                    failures.push(
                        json!({"index": i, "r": inst.r, "gamma": inst.gamma, "n": inst.n,
                        "closed_form": closed.to_string(), "bruteforce": brute.to_string()}),
                    );
                }
            }
            let ok = failures.is_empty();
            out.record(
                &json!({"check": "lemma-lp", "instances": sweep, "failures": failures, "pass": ok}),
                &format!(
                    "check=lemma-lp instances={sweep} failures={} pass={ok}",
                    failures.len()
                ),
            );
            Ok(ok)
        }
        Check::RatioIneq { max_n } => {
            let sweep = analysis::ratio_sweep(*max_n);
            let bad: Vec<_> = sweep
                .iter()
                .filter(|(_, ok)| !ok)
                .map(|(t, _)| *t)
                .collect();
            let ok = bad.is_empty();
            out.record(
                &json!({"check": "ratio-ineq", "max_n": max_n, "triples": sweep.len(), "failures": bad, "pass": ok}),
                &format!("check=ratio-ineq max_n={max_n} triples={} failures={} pass={ok}", sweep.len(), bad.len()),
            );
            Ok(ok)
        }
    }
}
