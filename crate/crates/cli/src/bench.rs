use std::fs;
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use shiftptas::dp::{brute_force_with_ceiling, solve_exact_tw, DEFAULT_BRUTE_FORCE_CEILING};
use shiftptas::graph::GraphKind;
use shiftptas::ltw::{check_linear_bound_with, LtwOptions};
use shiftptas::ptas::{parse_epsilon, ptas_local, PtasConfig};
use shiftptas::sqrt::{min_fill_inner, sqrt_decomposition};
use shiftptas::treedecomp::{heuristic_decomposition, Strategy, DEFAULT_EXACT_TW_CEILING};
use shiftptas::{Graph, ProblemKind};

use crate::commands::{ceiling, ratio, read_graph, within_ratio, BRUTE_FORCE_CEILING_VAR, EXACT_TW_CEILING_VAR};
use crate::record::Record;
use crate::BenchArgs;

const SUITES: [&str; 6] = ["ratio-vc", "ratio-ds", "ratio-is", "dp-oracle", "ltw", "sqrt"];

fn instances(a: &BenchArgs) -> Result<Vec<(String, Graph)>> {
    let dir = Path::new(&a.corpus);
    if dir.is_dir() {
        let mut paths: Vec<_> = fs::read_dir(dir)
            .with_context(|| format!("cannot list {}", dir.display()))?
            .map(|e| e.map(|e| e.path()))
            .collect::<std::io::Result<_>>()?;
        paths.retain(|p| p.is_file() && !p.file_name().is_some_and(|f| f.to_string_lossy().starts_with('.')));
        paths.sort();
        return paths
            .into_iter()
            .map(|p| {
                let (g, _) = read_graph(&p)?;
                Ok((p.file_name().unwrap().to_string_lossy().into_owned(), g))
            })
            .collect();
    }
    let family: GraphKind = a
        .corpus
        .parse()
        .with_context(|| format!("`{}` is neither a directory nor a generator family", a.corpus))?;
    (a.seed..a.seed + a.count)
        .map(|s| Ok((format!("{}#{s}", a.corpus), family.generate(s)?.0)))
        .collect()
}

fn exact_opt(g: &Graph, kind: ProblemKind) -> Result<usize> {
    let td = heuristic_decomposition(g, Strategy::MinFill);
    Ok(solve_exact_tw(g, &td, kind)?.value)
}

fn ratio_row(g: &Graph, kind: ProblemKind, cfg: &PtasConfig) -> Result<(String, bool)> {
    let opt = exact_opt(g, kind)?;
    let out = ptas_local(g, kind, cfg)?;
    let k = out.audit.k;
    let value = out.solution.value;
    let feasible = kind.is_feasible(g, &out.solution.vertices);
    let within = within_ratio(kind, cfg.epsilon, value, opt);
    let sum = out.audit.shift_sum();
    let counting = sum.is_some_and(|s| match kind {
        ProblemKind::VertexCover => s <= (k + 1) * opt,
        ProblemKind::DominatingSet => s <= (k + 2) * opt,
        ProblemKind::IndependentSet => s >= (k - 1) * opt,
    });
    let pass = feasible && within && counting;
    Ok((
        format!(
            "opt={opt} value={value} ratio={} k={k} shift_sum={} feasible={feasible} within_ratio={within} counting={counting}",
            ratio(value, opt),
            sum.map_or("-".into(), |s| s.to_string())
        ),
        pass,
    ))
}

pub fn run(a: &BenchArgs) -> Result<u8> {
    if !SUITES.contains(&a.suite.as_str()) {
        bail!("unknown suite `{}` (expected one of {})", a.suite, SUITES.join(", "));
    }
    let started = Instant::now();
    let list = instances(a)?;
    let mut rec = Record::new("bench");
    rec.push("corpus", &a.corpus);
    rec.push("suite", &a.suite);
    rec.push("seed", a.seed);
    rec.push("instances", list.len());
    let eps = parse_epsilon(&a.epsilon)?;
    let mut cfg = PtasConfig::new(eps)?;
    cfg.exact_ceiling = ceiling(EXACT_TW_CEILING_VAR, DEFAULT_EXACT_TW_CEILING)?;
    let brute = ceiling(BRUTE_FORCE_CEILING_VAR, DEFAULT_BRUTE_FORCE_CEILING)?;
    let ltw_opts = LtwOptions {
        ceiling: cfg.exact_ceiling,
        ..LtwOptions::default()
    };
    match a.suite.as_str() {
        "ratio-vc" | "ratio-ds" | "ratio-is" => {
            rec.push("epsilon", eps);
        }
        "ltw" | "sqrt" => {
            rec.push("lambda", a.lambda);
        }
        _ => {}
    }
    let mut failed = 0;
    for (i, (name, g)) in list.iter().enumerate() {
        let (detail, pass) = match a.suite.as_str() {
            "ratio-vc" => ratio_row(g, ProblemKind::VertexCover, &cfg)?,
            "ratio-ds" => ratio_row(g, ProblemKind::DominatingSet, &cfg)?,
            "ratio-is" => ratio_row(g, ProblemKind::IndependentSet, &cfg)?,
            "dp-oracle" => {
                let mut parts = Vec::new();
                let mut pass = true;
                for kind in ProblemKind::ALL {
                    let dp = exact_opt(g, kind)?;
                    let bf = brute_force_with_ceiling(g, kind, &[], &[], None, brute)?.map_or(0, |s| s.value);
                    pass &= dp == bf;
                    parts.push(format!("{kind}={dp}/{bf}"));
                }
                (parts.join(" "), pass)
            }
            "ltw" => {
                let r = check_linear_bound_with(g, a.lambda, 3, &ltw_opts)?;
                let values: Vec<String> = r.profile.values().iter().map(usize::to_string).collect();
                (format!("ltw={}", values.join(",")), r.passed())
            }
            _ => match sqrt_decomposition(g, a.lambda, 0, &min_fill_inner) {
                Ok((td, report)) => {
                    let valid = td.validate(g).is_valid();
                    (
                        format!("width={} bound={} valid={valid}", report.width, report.bound),
                        valid && report.width <= report.bound,
                    )
                }
                Err(e) => (format!("error={e}"), false),
            },
        };
        if !pass {
            failed += 1;
        }
        rec.push(
            format!("row.{i}"),
            format!("{name} n={} m={} {detail} pass={pass}", g.n(), g.m()),
        );
    }
    rec.push("passed", list.len() - failed);
    rec.push("failed", failed);
    rec.time("bench", started.elapsed());
    print!("{rec}");
    Ok(if failed == 0 { 0 } else { 2 })
}
