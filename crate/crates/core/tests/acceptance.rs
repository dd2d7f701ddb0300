//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Run with `cargo test -p shiftptas --test acceptance`.

mod common;

use std::collections::HashSet;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use common::facts::{self, td_valid};
use common::{counting_holds, within_ratio};
use num_rational::Ratio;
use rand::Rng;
use rayon::prelude::*;
use shiftptas::dp::{brute_force, solve_exact_tw};
use shiftptas::graph::{
    apex_over, clique_sum_of, complete, grid, k_tree, random_connected, random_planar_like, stacked_triangulation,
    ApexAttachment, Part,
};
use shiftptas::ltw::{local_treewidth, LtwMode};
use shiftptas::ptas::{parse_epsilon, ptas_cliquesum, ptas_local, PtasConfig};
use shiftptas::sqrt::{min_fill_inner, sqrt_bound, sqrt_decomposition, sqrt_decomposition_apex};
use shiftptas::treedecomp::{
    decompose_over_class, exact_treewidth, heuristic_decomposition, ClassOutcome, ClassPredicate,
    Strategy as Elimination, DEFAULT_NODE_BUDGET,
};
use shiftptas::{Graph, ProblemKind};

const KINDS: [ProblemKind; 3] = [ProblemKind::VertexCover, ProblemKind::DominatingSet, ProblemKind::IndependentSet];

type Outcome = Result<String, String>;
type Criterion = (&'static str, &'static str, fn() -> Outcome);

fn fail_if(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Err(msg())
    } else {
        Ok(())
    }
}

fn within(limit: Duration, took: Duration) -> Result<(), String> {
    fail_if(took > limit, || format!("took {:.1}s, limit {}s", took.as_secs_f64(), limit.as_secs()))
}

fn check_dp(g: &Graph) -> Result<(), String> {
    let td = heuristic_decomposition(g, Elimination::MinFill);
    for kind in KINDS {
        let dp = solve_exact_tw(g, &td, kind).map_err(|e| e.to_string())?;
        let brute = brute_force(g, kind, &[], &[], None).map_err(|e| e.to_string())?.unwrap();
        fail_if(dp.value != brute.value || !dp.feasible, || {
            format!("{kind:?} on {g:?}: dp {} brute {}", dp.value, brute.value)
        })?;
    }
    Ok(())
}

fn ac1() -> Outcome {
    let start = Instant::now();
    let trees: Vec<Graph> = (1..=7).flat_map(common::all_trees).collect();
    let randoms: Vec<Graph> = (0..500u64)
        .map(|seed| {
            let mut r = facts::rng(seed);
            random_connected(r.gen_range(1..=9), r.gen_range(0.1..0.8), seed)
        })
        .collect();
    trees.par_iter().chain(randoms.par_iter()).try_for_each(check_dp)?;
    within(Duration::from_secs(60), start.elapsed())?;
    Ok(format!("{} trees + {} random graphs, 3 problems each", trees.len(), randoms.len()))
}

struct RatioRow {
    name: String,
    kind: ProblemKind,
    eps: Ratio<u64>,
    k: usize,
    opt: usize,
    value: usize,
    feasible: bool,
    shift_sum: Option<usize>,
}

fn ratio_corpus() -> Vec<Graph> {
    let mut out = Vec::new();
    for a in 1..=4 {
        for b in a..=4 {
            out.push(grid(a, b));
        }
    }
    for seed in 0..200u64 {
        let n = facts::rng(seed).gen_range(4..=18);
        out.push(random_planar_like(n, seed));
    }
    out
}

fn ratio_rows() -> &'static (Vec<RatioRow>, Duration) {
    static ROWS: OnceLock<(Vec<RatioRow>, Duration)> = OnceLock::new();
    ROWS.get_or_init(|| {
        let start = Instant::now();
        let rows = ratio_corpus()
            .par_iter()
            .enumerate()
            .flat_map_iter(|(i, g)| {
                let mut rows = Vec::new();
                for kind in KINDS {
                    let opt = brute_force(g, kind, &[], &[], None).unwrap().unwrap().value;
                    for eps in ["1", "0.5", "0.34"] {
                        let cfg = PtasConfig::new(parse_epsilon(eps).unwrap()).unwrap();
                        let out = ptas_local(g, kind, &cfg).unwrap();
                        rows.push(RatioRow {
                            name: format!("#{i} n={}", g.n()),
                            kind,
                            eps: cfg.epsilon,
                            k: out.audit.k,
                            opt,
                            value: out.solution.value,
                            feasible: out.solution.feasible
                                && common::is_feasible(g, kind, common::mask(&out.solution.vertices)),
                            shift_sum: out.audit.shift_sum(),
                        });
                    }
                }
                rows
            })
            .collect();
        (rows, start.elapsed())
    })
}

fn ac2() -> Outcome {
    let (rows, took) = ratio_rows();
    for r in rows {
        fail_if(!r.feasible, || format!("{} {:?} eps {}: infeasible", r.name, r.kind, r.eps))?;
        fail_if(!within_ratio(r.kind, r.eps, r.value, r.opt), || {
            format!("{} {:?} eps {}: value {} opt {}", r.name, r.kind, r.eps, r.value, r.opt)
        })?;
    }
    within(Duration::from_secs(300), *took)?;
    Ok(format!("{} runs on {} graphs", rows.len(), ratio_corpus().len()))
}

fn ac3() -> Outcome {
    let (rows, _) = ratio_rows();
    for r in rows {
        let sum = r.shift_sum.ok_or_else(|| format!("{} {:?}: a shift was infeasible", r.name, r.kind))?;
        fail_if(!counting_holds(r.kind, r.k, sum, r.opt), || {
            format!("{} {:?} k={}: sum {} opt {}", r.name, r.kind, r.k, sum, r.opt)
        })?;
    }
    Ok(format!("{} shift sums", rows.len()))
}

fn ac4() -> Outcome {
    let mut strips: HashSet<(usize, Vec<usize>, usize)> = HashSet::new();
    for m in 1..=8 {
        let g = grid(m, m);
        for v in 0..g.n() {
            let layers = g.bfs_layers(v).unwrap();
            let depth = layers.levels.len() - 1;
            for i in 0..=depth {
                for j in i..=depth {
                    let set = g.level_interval(v, i as i64, j as i64).unwrap();
                    if set.len() > 25 {
                        break;
                    }
                    strips.insert((m, set, j - i + 1));
                }
            }
        }
    }
    let strips: Vec<_> = strips.into_iter().collect();
    strips.par_iter().try_for_each(|(m, set, levels)| {
        let (h, _) = grid(*m, *m).induced_subgraph(set).unwrap();
        let ex = exact_treewidth(&h, DEFAULT_NODE_BUDGET).map_err(|e| e.to_string())?;
        fail_if(!ex.exact, || format!("{m}x{m} strip {set:?}: search budget exhausted"))?;
        if h.n() <= 16 {
            fail_if(ex.width != common::treewidth(&h), || format!("{m}x{m} strip {set:?}: width disagrees with oracle"))?;
        }
        fail_if(ex.width > 3 * levels, || format!("{m}x{m} strip {set:?}: width {} > 3*{levels}", ex.width))
    })?;
    Ok(format!("{} distinct strips of at most 25 vertices", strips.len()))
}

fn ac5() -> Outcome {
    let mut corpus: Vec<(String, Graph)> = Vec::new();
    for a in 1..=6 {
        for b in a..=6 {
            corpus.push((format!("grid {a}x{b}"), grid(a, b)));
        }
    }
    for seed in 0..50u64 {
        let n = facts::rng(seed).gen_range(4..=18);
        corpus.push((format!("triangulation seed {seed}"), stacked_triangulation(n, seed)));
    }
    corpus.par_iter().try_for_each(|(name, g)| -> Result<(), String> {
        let p = local_treewidth(g, 3, LtwMode::Exact).map_err(|e| format!("{name}: {e}"))?;
        fail_if(!p.is_exact(), || format!("{name}: profile not exact"))?;
        for e in &p.entries {
            fail_if(e.value > 3 * e.radius, || format!("{name}: ltw({}) = {}", e.radius, e.value))?;
        }
        Ok(())
    })?;
    Ok(format!("{} graphs, r = 0..=3", corpus.len()))
}

fn ac6() -> Outcome {
    let mut widest = 0;
    for seed in 0..100 {
        let inst = facts::attach_instance(seed);
        let (w, _) = facts::check_attach(&inst).map_err(|e| format!("seed {seed}: {e}"))?;
        widest = widest.max(w);
    }
    Ok(format!("100 instances, widest output {widest}"))
}

fn ac7() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for m in 5..=20 {
        let g = grid(m, m);
        let (td, report) = sqrt_decomposition(&g, 3, 0, &min_fill_inner).map_err(|e| e.to_string())?;
        td_valid(&g, &td).map_err(|e| format!("{m}x{m}: {e}"))?;
        let bound = common::isqrt(27 * g.n() as u64) as usize;
        fail_if(report.bound != bound || td.width() > bound, || format!("{m}x{m}: width {} bound {bound}", td.width()))?;
        let mu = 1 + m % 3;
        let (ga, apex) = apex_over(&g, mu, ApexAttachment::Random, m as u64).unwrap();
        let (tda, _) = sqrt_decomposition_apex(&ga, 3, mu, &apex, 0, &min_fill_inner).map_err(|e| e.to_string())?;
        td_valid(&ga, &tda).map_err(|e| format!("{m}x{m} + {mu} apexes: {e}"))?;
        fail_if(tda.width() > td.width() + mu, || format!("{m}x{m} + {mu} apexes: width {}", tda.width()))?;
        fail_if(sqrt_bound(3, ga.n()) + mu < tda.width(), || format!("{m}x{m} + {mu} apexes over bound"))?;
        count += 2;
    }
    within(Duration::from_secs(30), start.elapsed())?;
    Ok(format!("{count} decompositions"))
}

fn ac8() -> Outcome {
    let results: Vec<Result<usize, String>> = (0..50u64)
        .into_par_iter()
        .map(|seed| {
            let (g, csd) = common::clique_sum_instance(seed);
            let td = heuristic_decomposition(&g, Elimination::MinFill);
            let mut runs = 0;
            for kind in KINDS {
                let opt = solve_exact_tw(&g, &td, kind).map_err(|e| e.to_string())?.value;
                for eps in ["1", "0.5"] {
                    let mut cfg = PtasConfig::new(parse_epsilon(eps).unwrap()).unwrap();
                    cfg.mu = 2;
                    let out = ptas_cliquesum(&g, &csd, kind, &cfg).map_err(|e| format!("seed {seed}: {e}"))?;
                    let s = &out.solution;
                    fail_if(!s.feasible || !kind.is_feasible(&g, &s.vertices), || format!("seed {seed} {kind:?}: infeasible"))?;
                    fail_if(!within_ratio(kind, cfg.epsilon, s.value, opt), || {
                        format!("seed {seed} {kind:?} eps {eps}: value {} opt {opt}", s.value)
                    })?;
                    runs += 1;
                }
            }
            Ok(runs)
        })
        .collect();
    let runs: usize = results.into_iter().sum::<Result<usize, String>>()?;
    Ok(format!("50 clique-sums, {runs} runs"))
}

fn ac9() -> Outcome {
    let pred = ClassPredicate::width_bound(2);
    let mut decomposed = 0;
    for seed in 0..30u64 {
        let mut r = facts::rng(seed);
        let parts: Vec<Part> = (0..r.gen_range(2..=4))
            .map(|i| k_tree(r.gen_range(3..=6), 2, seed * 10 + i).unwrap().into())
            .collect();
        let (g, _) = clique_sum_of(&parts, r.gen_range(1..=3), seed).unwrap();
        match decompose_over_class(&g, &pred).map_err(|e| e.to_string())? {
            ClassOutcome::Decomposed(td) => {
                td_valid(&g, &td).map_err(|e| format!("seed {seed}: {e}"))?;
                fail_if(td.adhesion() > pred.omega(), || format!("seed {seed}: adhesion {}", td.adhesion()))?;
                for t in 0..td.len() {
                    let (torso, _) = td.torso(&g, t).unwrap();
                    fail_if(common::treewidth(&torso) > 2, || format!("seed {seed}: torso {t} too wide"))?;
                }
                decomposed += 1;
            }
            ClassOutcome::Rejected { .. } => return Err(format!("seed {seed}: rejected a sum of 2-trees")),
        }
    }
    fail_if(!matches!(decompose_over_class(&complete(5), &pred).unwrap(), ClassOutcome::Rejected { .. }), || {
        "K5 accepted".into()
    })?;
    let mut agreed = 0;
    for seed in 0..60u64 {
        let mut r = facts::rng(seed + 5000);
        let g = random_connected(r.gen_range(4..=10), r.gen_range(0.15..0.7), seed);
        let lib = matches!(decompose_over_class(&g, &pred).unwrap(), ClassOutcome::Decomposed(_));
        fail_if(lib != common::decomposes(&g, 2, 3), || format!("seed {seed}: disagrees with separator search"))?;
        agreed += 1;
    }
    Ok(format!("{decomposed} sums decomposed, K5 rejected, {agreed} cross-checks"))
}

fn ac10() -> Outcome {
    for seed in 0..150 {
        facts::fact_cliques(seed).map_err(|e| format!("cliques seed {seed}: {e}"))?;
    }
    for seed in 0..60 {
        facts::fact_clique_sum(seed).map_err(|e| format!("clique-sum seed {seed}: {e}"))?;
    }
    for seed in 0..100 {
        facts::fact_apex(seed).map_err(|e| format!("apex seed {seed}: {e}"))?;
        facts::fact_minor(seed).map_err(|e| format!("minor seed {seed}: {e}"))?;
    }
    Ok("150 clique, 60 clique-sum, 100 deletion and 100 minor instances".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("AC1", "dp equals brute force", ac1),
        ("AC2", "local scheme ratio", ac2),
        ("AC3", "counting inequalities", ac3),
        ("AC4", "grid strip widths", ac4),
        ("AC5", "grid and triangulation local tree-width", ac5),
        ("AC6", "path attachment width", ac6),
        ("AC7", "sqrt decomposition width", ac7),
        ("AC8", "clique-sum scheme ratio", ac8),
        ("AC9", "class decomposition", ac9),
        ("AC10", "structural tree-width facts", ac10),
    ];
    let mut failed = 0;
    for (id, title, run) in criteria {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {id} {title}: {detail} ({secs:.2}s)"),
            Err(why) => {
                failed += 1;
                println!("FAIL {id} {title}: {why} ({secs:.2}s)");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
