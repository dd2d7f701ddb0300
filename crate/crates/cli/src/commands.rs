use std::fs;
use std::path::Path;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use num_rational::Ratio;
use shiftptas::dp::{brute_force_with_ceiling, solve_exact_tw, DEFAULT_BRUTE_FORCE_CEILING};
use shiftptas::graph::{parse_graph, serialize_graph, GraphFormat, GraphKind};
use shiftptas::ltw::{check_linear_bound_with, local_treewidth_with, LtwMode, LtwOptions, LtwProfile, RadiusCheck, Verdict};
use shiftptas::ptas::{
    parse_csd, parse_epsilon, ptas_apex, ptas_cliquesum, ptas_local, serialize_csd, shift_factor, PtasConfig,
};
use shiftptas::sqrt::{min_fill_inner, sqrt_decomposition, sqrt_decomposition_apex, IntervalKind, SqrtReport};
use shiftptas::treedecomp::{
    decompose_over_class, exact_treewidth_with_ceiling, heuristic_decomposition, serialize_td, ClassOutcome,
    ClassPredicate, Strategy, DEFAULT_EXACT_TW_CEILING, DEFAULT_NODE_BUDGET,
};
use shiftptas::{Graph, ProblemKind, Solution, TreeDecomposition, Vertex};

use crate::record::{opt, vertices, Record};
use crate::{DecomposeArgs, GenerateArgs, LtwArgs, SolveArgs};

pub const EXACT_TW_CEILING_VAR: &str = "SHIFTPTAS_EXACT_TW_CEILING";
pub const BRUTE_FORCE_CEILING_VAR: &str = "SHIFTPTAS_BRUTE_FORCE_CEILING";

pub fn ceiling(var: &str, default: usize) -> Result<usize> {
    match std::env::var(var) {
        Ok(s) => s.trim().parse().with_context(|| format!("{var}={s} is not a number")),
        Err(_) => Ok(default),
    }
}

pub fn read_graph(path: &Path) -> Result<(Graph, Vec<u8>)> {
    let bytes = fs::read(path).with_context(|| format!("cannot read {}", path.display()))?;
    let text = std::str::from_utf8(&bytes).with_context(|| format!("{} is not UTF-8", path.display()))?;
    let g = parse_graph(text, GraphFormat::detect(text)).with_context(|| format!("malformed graph {}", path.display()))?;
    Ok((g, bytes))
}

fn read_vertex_list(path: &Path, n: usize) -> Result<Vec<Vertex>> {
    let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let mut out = Vec::new();
    for line in text.lines().map(str::trim) {
        if line.starts_with('#') || line.starts_with('c') {
            continue;
        }
        for tok in line.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
            let v: usize = tok.parse().with_context(|| format!("{}: bad vertex `{tok}`", path.display()))?;
            if v == 0 || v > n {
                bail!("{}: vertex {v} out of range 1..={n}", path.display());
            }
            out.push(v - 1);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn write_out(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

/// `value ≤ (1+ε)·opt` for minimisation, `value ≥ (1−ε)·opt` otherwise.
pub fn within_ratio(kind: ProblemKind, eps: Ratio<u64>, value: usize, opt: usize) -> bool {
    let (p, q) = (*eps.numer() as u128, *eps.denom() as u128);
    let (v, o) = (value as u128, opt as u128);
    if kind.is_minimization() {
        v * q <= (q + p) * o
    } else {
        p >= q || v * q >= (q - p) * o
    }
}

pub fn ratio(value: usize, opt: usize) -> String {
    if opt == 0 {
        "-".into()
    } else {
        format!("{:.4}", value as f64 / opt as f64)
    }
}

pub fn solve(a: &SolveArgs) -> Result<u8> {
    let kind = a.problem;
    let started = Instant::now();
    let (g, bytes) = read_graph(&a.input)?;
    let mut rec = Record::new("solve");
    rec.input(&a.input, &bytes, &g);
    rec.push("problem", kind);
    rec.time("parse", started.elapsed());
    let started = Instant::now();
    let brute_ceiling = ceiling(BRUTE_FORCE_CEILING_VAR, DEFAULT_BRUTE_FORCE_CEILING)?;
    let oracle = |g: &Graph| -> Result<Solution> {
        brute_force_with_ceiling(g, kind, &[], &[], None, brute_ceiling)?.ok_or_else(|| anyhow!("no feasible solution"))
    };
    let mut eps = None;
    let sol = if a.exact {
        rec.push("mode", "exact");
        let td = heuristic_decomposition(&g, Strategy::MinFill);
        rec.push("td_width", td.width());
        solve_exact_tw(&g, &td, kind)?
    } else if a.oracle {
        rec.push("mode", "oracle");
        oracle(&g)?
    } else {
        let e = parse_epsilon(a.ptas.as_deref().unwrap())?;
        eps = Some(e);
        let mut cfg = PtasConfig::new(e)?;
        cfg.lambda = a.lambda;
        cfg.center = a.center.parse()?;
        cfg.exact_ceiling = ceiling(EXACT_TW_CEILING_VAR, DEFAULT_EXACT_TW_CEILING)?;
        let k = cfg.k(kind);
        rec.push("mode", "ptas");
        rec.push("epsilon", e);
        rec.push("k", k);
        rec.push("lambda", opt(a.lambda));
        rec.push("center", &a.center);
        let outcome = if let Some(p) = &a.csd_file {
            let text = fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))?;
            let (csd, n) = parse_csd(&text).with_context(|| format!("malformed decomposition {}", p.display()))?;
            if n != g.n() {
                bail!("decomposition declares {n} vertices, graph has {}", g.n());
            }
            cfg.mu = a.mu.unwrap_or_else(|| (0..csd.len()).map(|t| csd.apex(t).len()).max().unwrap_or(0));
            rec.push("variant", "cliquesum");
            rec.push("mu", cfg.mu);
            rec.push("csd_nodes", csd.len());
            ptas_cliquesum(&g, &csd, kind, &cfg)?
        } else if let Some(p) = &a.apex_file {
            let apex = read_vertex_list(p, g.n())?;
            cfg.mu = a.mu.unwrap_or(apex.len());
            rec.push("variant", "apex");
            rec.push("mu", cfg.mu);
            rec.push("apex", vertices(&apex));
            ptas_apex(&g, &apex, kind, &cfg)?
        } else {
            rec.push("variant", "local");
            ptas_local(&g, kind, &cfg)?
        };
        let au = &outcome.audit;
        rec.push("shift_factor", shift_factor(kind, k));
        rec.push("centers", vertices(&au.centers));
        rec.push(
            "chosen_shifts",
            au.chosen_shifts.iter().map(usize::to_string).collect::<Vec<_>>().join(" "),
        );
        rec.push(
            "shift_values",
            au.shift_values.iter().map(|v| opt(*v)).collect::<Vec<_>>().join(" "),
        );
        rec.push("shift_sum", opt(au.shift_sum()));
        rec.push("apex_subset", vertices(&au.apex_subset));
        rec.push("strips", au.strips.len());
        rec.push("max_strip_width", au.max_strip_width());
        rec.push("conditional", au.conditional());
        outcome.solution
    };
    rec.time("solve", started.elapsed());
    let feasible = kind.is_feasible(&g, &sol.vertices);
    rec.push("method", &sol.provenance.method);
    rec.push("value", sol.value);
    rec.push("vertices", vertices(&sol.vertices));
    rec.push("feasible", feasible);
    let mut code = if feasible { 0 } else { 2 };
    if a.oracle_compare {
        let started = Instant::now();
        let best = oracle(&g)?;
        rec.time("oracle", started.elapsed());
        let e = eps.expect("--oracle-compare requires --ptas");
        let ok = within_ratio(kind, e, sol.value, best.value);
        rec.push("opt", best.value);
        rec.push("ratio", ratio(sol.value, best.value));
        let one = Ratio::from_integer(1);
        rec.push("ratio_bound", if kind.is_minimization() { one + e } else if e < one { one - e } else { Ratio::from_integer(0) });
        rec.push("within_ratio", ok);
        if !ok {
            code = 2;
        }
    }
    print!("{rec}");
    if let Some(p) = &a.out {
        write_out(p, &rec.to_string())?;
    }
    Ok(code)
}

fn push_sqrt(rec: &mut Record, r: &SqrtReport) {
    rec.push("lambda", r.lambda);
    rec.push("mu", r.mu);
    rec.push("threshold_sq", r.split.threshold_sq);
    rec.push("threshold", format!("{:.3}", r.split.threshold()));
    rec.push(
        "levels",
        r.split.levels.iter().map(usize::to_string).collect::<Vec<_>>().join(" "),
    );
    let intervals: Vec<String> = r
        .split
        .intervals
        .iter()
        .map(|iv| {
            let tag = if iv.kind == IntervalKind::Sparse { 'S' } else { 'D' };
            format!("{tag}{}-{}", iv.start, iv.end)
        })
        .collect();
    rec.push("intervals", intervals.join(" "));
    rec.push(
        "interval_widths",
        r.interval_widths.iter().map(usize::to_string).collect::<Vec<_>>().join(" "),
    );
    rec.push("bound", r.bound);
    rec.push("within_bound", r.width <= r.bound);
}

pub fn decompose(a: &DecomposeArgs) -> Result<u8> {
    let started = Instant::now();
    let (g, bytes) = read_graph(&a.input)?;
    let mut rec = Record::new("decompose");
    rec.input(&a.input, &bytes, &g);
    rec.time("parse", started.elapsed());
    let started = Instant::now();
    let td: Option<TreeDecomposition> = if a.exact {
        rec.push("method", "exact");
        let c = ceiling(EXACT_TW_CEILING_VAR, DEFAULT_EXACT_TW_CEILING)?;
        let r = exact_treewidth_with_ceiling(&g, DEFAULT_NODE_BUDGET, c)?;
        rec.push("exact", r.exact);
        rec.push("lower_bound", r.lower_bound);
        rec.push("search_nodes", r.nodes);
        Some(r.decomposition)
    } else if a.heuristic {
        let s: Strategy = a.strategy.parse()?;
        rec.push("method", "heuristic");
        rec.push("strategy", &a.strategy);
        Some(heuristic_decomposition(&g, s))
    } else if let Some(lambda) = a.sqrt {
        g.check_vertex(a.center.wrapping_sub(1))?;
        let center = a.center - 1;
        rec.push("method", "sqrt");
        rec.push("center", a.center);
        let (td, report) = match &a.apex {
            Some(v) => {
                let mu: usize = v[0].parse().with_context(|| format!("bad apex bound `{}`", v[0]))?;
                let apex = read_vertex_list(Path::new(&v[1]), g.n())?;
                rec.push("apex", vertices(&apex));
                sqrt_decomposition_apex(&g, lambda, mu, &apex, center, &min_fill_inner)?
            }
            None => sqrt_decomposition(&g, lambda, center, &min_fill_inner)?,
        };
        push_sqrt(&mut rec, &report);
        Some(td)
    } else {
        let name = a.over_class.as_deref().unwrap();
        let pred: ClassPredicate = name.parse()?;
        rec.push("method", "over-class");
        rec.push("class", pred.name());
        rec.push("omega", pred.omega());
        match decompose_over_class(&g, &pred)? {
            ClassOutcome::Decomposed(td) => {
                rec.push("outcome", "decomposed");
                Some(td)
            }
            ClassOutcome::Rejected { instances, separators } => {
                rec.push("outcome", "rejected");
                rec.push("instances", instances);
                rec.push("separators", separators);
                None
            }
        }
    };
    rec.time("decompose", started.elapsed());
    let Some(td) = td else {
        print!("{rec}");
        return Ok(2);
    };
    let report = td.validate(&g);
    rec.push("nodes", td.len());
    rec.push("width", td.width());
    rec.push("adhesion", td.adhesion());
    rec.push("valid", report.is_valid());
    if !report.is_valid() {
        rec.push("violations", report.to_string().replace('\n', "; "));
    }
    let text = serialize_td(&td, g.n());
    print!("{rec}");
    match &a.out {
        Some(p) => write_out(p, &text)?,
        None => print!("\n{text}"),
    }
    Ok(if report.is_valid() { 0 } else { 2 })
}

fn verdict(v: Verdict) -> &'static str {
    match v {
        Verdict::Pass => "pass",
        Verdict::Fail => "fail",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn push_profile(rec: &mut Record, p: &LtwProfile) {
    for e in &p.entries {
        let r = e.radius;
        rec.push(format!("ltw.r{r}"), e.value);
        rec.push(format!("ltw.r{r}.lower"), e.lower);
        rec.push(format!("ltw.r{r}.exact"), e.exact);
        rec.push(format!("ltw.r{r}.witness"), opt(e.witness.map(|v| v + 1)));
    }
}

fn push_checks(rec: &mut Record, prefix: &str, checks: &[RadiusCheck]) {
    for c in checks {
        rec.push(format!("{prefix}.r{}", c.radius), format!("{} {}<={}", verdict(c.verdict), c.value, c.bound));
    }
}

pub fn ltw(a: &LtwArgs) -> Result<u8> {
    let started = Instant::now();
    let (g, bytes) = read_graph(&a.input)?;
    let mut rec = Record::new("ltw");
    rec.input(&a.input, &bytes, &g);
    rec.time("parse", started.elapsed());
    let opts = LtwOptions {
        mode: if a.exact { LtwMode::Exact } else { LtwMode::Upper },
        ceiling: ceiling(EXACT_TW_CEILING_VAR, DEFAULT_EXACT_TW_CEILING)?,
        minor_samples: a.samples,
        ..LtwOptions::default()
    };
    rec.push("mode", if a.exact { "exact" } else { "upper" });
    rec.push("rmax", a.rmax);
    let started = Instant::now();
    let code = match a.check {
        None => {
            let p = local_treewidth_with(&g, a.rmax, &opts)?;
            push_profile(&mut rec, &p);
            0
        }
        Some(lambda) => {
            let r = check_linear_bound_with(&g, lambda, a.rmax, &opts)?;
            push_profile(&mut rec, &r.profile);
            rec.push("lambda", lambda);
            push_checks(&mut rec, "check", &r.checks);
            for (i, m) in r.minors.iter().enumerate() {
                rec.push(format!("minor.{i}.center"), m.center + 1);
                rec.push(format!("minor.{i}.n"), m.n);
                match &m.skipped {
                    Some(why) => {
                        rec.push(format!("minor.{i}"), format!("skipped: {why}"));
                    }
                    None => push_checks(&mut rec, &format!("minor.{i}"), &m.checks),
                }
            }
            rec.push("scope", r.scope());
            let result = if r.failed() {
                "fail"
            } else if r.passed() {
                "pass"
            } else {
                "inconclusive"
            };
            rec.push("result", result);
            if r.failed() {
                2
            } else {
                0
            }
        }
    };
    rec.time("ltw", started.elapsed());
    print!("{rec}");
    Ok(code)
}

pub fn generate(a: &GenerateArgs) -> Result<u8> {
    let kind: GraphKind = a.family.parse()?;
    let (g, csd) = kind.generate(a.seed)?;
    let text = format!("c {} seed={}\n{}", a.family, a.seed, serialize_graph(&g));
    match &a.out {
        Some(p) => write_out(p, &text)?,
        None => print!("{text}"),
    }
    if let Some(p) = &a.csd_out {
        let csd = csd.ok_or_else(|| anyhow!("`{}` has no clique-sum decomposition", a.family))?;
        write_out(p, &serialize_csd(&csd, g.n()))?;
    }
    Ok(0)
}
