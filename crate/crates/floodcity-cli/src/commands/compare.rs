//! `floodcity compare`: runs (or loads) two configurations on the same
//! grid and tags each component's danger-zone pattern as
//! Similar/Inverted/Mixed.

use std::path::{Path, PathBuf};

use anyhow::Context;
use floodcity::analysis;
use floodcity::genome::CityGenotype;
use floodcity::hazard::HazardGrid;

use crate::config::{load_config, RunConfig};
use crate::error::{config_error, CliResult, ConfigContext, RuntimeContext};
use crate::report::{self, ComparisonDoc, ComparisonInputs, RunReportDoc};
use crate::CompareArgs;

pub fn execute(args: CompareArgs) -> CliResult<()> {
    match (&args.result_a, &args.result_b) {
        (Some(a), Some(b)) => saved_mode(a.clone(), b.clone(), args),
        (None, None) => run_mode(args),
        _ => Err(config_error(
            "--result-a and --result-b must be given together",
        )),
    }
}

struct Side {
    scheme: String,
    seed: u64,
    best_fitness: f64,
    city: CityGenotype,
}

fn compare_pair(
    grid: &HazardGrid,
    a: &Side,
    b: &Side,
    margin: f64,
    timestamp: Option<u64>,
) -> CliResult<ComparisonDoc> {
    let report = analysis::compare_schemes(&a.city, &b.city, grid, margin).runtime_err()?;
    Ok(report::comparison_doc(&ComparisonInputs {
        report: &report,
        scheme_a: &a.scheme,
        scheme_b: &b.scheme,
        seed_a: a.seed,
        seed_b: b.seed,
        best_fitness_a: a.best_fitness,
        best_fitness_b: b.best_fitness,
        timestamp,
    }))
}

fn write_comparison(dir: &Path, doc: &ComparisonDoc) -> CliResult<()> {
    report::write_json(&dir.join("comparison.json"), doc)?;
    report::write_text(&dir.join("comparison.txt"), &report::comparison_txt(doc))
}

fn run_mode(args: CompareArgs) -> CliResult<()> {
    let scheme_a = args.scheme_a.as_deref().or(if args.config_a.is_none() {
        Some("aspect")
    } else {
        None
    });
    let scheme_b = args.scheme_b.as_deref().or(if args.config_b.is_none() {
        Some("einarsson")
    } else {
        None
    });
    let config_a = load_config(args.config_a.as_deref())?.with_overrides(
        &args.seeds,
        args.out.as_deref(),
        scheme_a,
    );
    let config_b = load_config(args.config_b.as_deref())?.with_overrides(
        &args.seeds,
        args.out.as_deref(),
        scheme_b,
    );
    let problem_a = config_a.problem()?;
    let problem_b = config_b.problem()?;
    config_a.ga.validate().config_err()?;
    config_b.ga.validate().config_err()?;
    if problem_a.grid != problem_b.grid {
        return Err(config_error(
            "compared configurations must use the same hazard grid",
        ));
    }
    let margin = args.margin.unwrap_or_else(|| config_a.margin());
    let seeds = if args.seeds.is_empty() {
        config_a.seeds()
    } else {
        args.seeds.clone()
    };
    let timestamp = (!args.no_timestamp).then(report::now_unix);
    let out_dir = args
        .out
        .clone()
        .unwrap_or_else(|| config_a.out_dir())
        .join(format!(
            "compare-{}-vs-{}",
            problem_a.scheme.name(),
            problem_b.scheme.name()
        ));

    let mut per_seed = Vec::with_capacity(seeds.len());
    for seed in &seeds {
        let side_a = run_side(&config_a, *seed)?;
        let side_b = run_side(&config_b, *seed)?;
        let doc = compare_pair(&problem_a.grid, &side_a, &side_b, margin, timestamp)?;
        write_comparison(&out_dir.join(format!("seed{seed}")), &doc)?;
        print_tags(&doc);
        per_seed.push(doc);
    }
    let summary = report::summary_doc(&per_seed, &seeds, timestamp);
    report::write_json(&out_dir.join("summary.json"), &summary)?;
    report::write_text(&out_dir.join("summary.txt"), &report::summary_txt(&summary))?;
    println!("wrote {}", out_dir.display());
    Ok(())
}

fn run_side(config: &RunConfig, seed: u64) -> CliResult<Side> {
    let problem = config.problem()?;
    let (result, city, _) = super::run::run_problem(&problem, &config.ga, seed)?;
    Ok(Side {
        scheme: problem.scheme.name().to_string(),
        seed,
        best_fitness: result.best_fitness,
        city,
    })
}

fn saved_mode(dir_a: PathBuf, dir_b: PathBuf, args: CompareArgs) -> CliResult<()> {
    let (doc_a, side_a) = load_saved(&dir_a)?;
    let (doc_b, side_b) = load_saved(&dir_b)?;
    if doc_a.grid.rows != doc_b.grid.rows
        || doc_a.grid.cols != doc_b.grid.cols
        || doc_a.grid.multipliers != doc_b.grid.multipliers
    {
        return Err(config_error("saved results use different hazard grids"));
    }
    let grid = doc_a.grid.to_grid()?;
    let margin = args.margin.unwrap_or(analysis::DEFAULT_MARGIN);
    let timestamp = (!args.no_timestamp).then(report::now_unix);
    let doc = compare_pair(&grid, &side_a, &side_b, margin, timestamp)?;
    let out_dir = args.out.clone().unwrap_or_else(|| "out".into()).join(format!(
        "compare-{}-vs-{}-saved",
        doc.scheme_a, doc.scheme_b
    ));
    write_comparison(&out_dir, &doc)?;
    print_tags(&doc);
    println!("wrote {}", out_dir.display());
    Ok(())
}

fn load_saved(dir: &Path) -> CliResult<(RunReportDoc, Side)> {
    let path = dir.join("report.json");
    let text = std::fs::read_to_string(&path)
        .with_context(|| format!("cannot read saved result {}", path.display()))
        .config_err()?;
    let doc: RunReportDoc = serde_json::from_str(&text)
        .with_context(|| format!("invalid saved result {}", path.display()))
        .config_err()?;
    if doc.schema != report::RUN_SCHEMA {
        return Err(config_error(format!(
            "unexpected schema {:?} in {}",
            doc.schema,
            path.display()
        )));
    }
    let city = doc.grids.to_city(doc.grid.rows, doc.grid.cols)?;
    let side = Side {
        scheme: doc.scheme.clone(),
        seed: doc.seed,
        best_fitness: doc.best_fitness,
        city,
    };
    Ok((doc, side))
}

fn print_tags(doc: &ComparisonDoc) {
    let tags: Vec<String> = doc
        .danger_zone
        .iter()
        .map(|row| format!("{}={:?}", row.component, row.tag))
        .collect();
    println!("seed {}: {}", doc.seed_a, tags.join(" "));
}
