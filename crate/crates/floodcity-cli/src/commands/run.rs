//! `floodcity run`: one GA run per seed, each written as a report
//! directory (text + JSON + the seven component grid files).

use std::path::Path;

use floodcity::analysis::{self, ZoneStats};
use floodcity::ga::{self, GaConfig, RunResult};
use floodcity::genome::{render_component_grid, CityGenotype, ComponentId};
use floodcity::objective::{ObjectiveBreakdown, Problem};

use crate::config::load_config;
use crate::error::{CliResult, ConfigContext, RuntimeContext};
use crate::report::{self, RunArtifacts};
use crate::RunArgs;

pub fn execute(args: RunArgs) -> CliResult<()> {
    let config = load_config(args.config.as_deref())?.with_overrides(
        &args.seeds,
        args.out.as_deref(),
        args.scheme.as_deref(),
    );
    let problem = config.problem()?;
    config.ga.validate().config_err()?;
    let timestamp = (!args.no_timestamp).then(report::now_unix);
    let out_dir = config.out_dir();
    for seed in config.seeds() {
        let dir = out_dir.join(format!("{}-seed{}", problem.scheme.name(), seed));
        let (result, city, breakdown) = run_problem(&problem, &config.ga, seed)?;
        write_run_report(&problem, &result, &city, &breakdown, &dir, timestamp)?;
        println!(
            "seed {seed}: best fitness {:.9} -> {}",
            result.best_fitness,
            dir.display()
        );
    }
    Ok(())
}

/// Runs the GA with the given seed and decodes the winner.
pub fn run_problem(
    problem: &Problem,
    ga_config: &GaConfig,
    seed: u64,
) -> CliResult<(RunResult, CityGenotype, ObjectiveBreakdown)> {
    let cfg = GaConfig {
        rng_seed: seed,
        ..ga_config.clone()
    };
    let result = ga::run(problem, &cfg).runtime_err()?;
    let city = problem.decode_genome(&result.best_genome).runtime_err()?;
    let breakdown = problem.evaluate(&city).runtime_err()?;
    Ok((result, city, breakdown))
}

/// Computes both danger-zone readings for a city.
pub fn both_zone_stats(problem: &Problem, city: &CityGenotype) -> CliResult<(ZoneStats, ZoneStats)> {
    let danger = analysis::zone_stats(city, &problem.grid).runtime_err()?;
    let diagonal = analysis::main_anti_diagonal(problem.grid.rows(), problem.grid.cols());
    let anti = analysis::zone_stats_over(city, &diagonal).runtime_err()?;
    Ok((danger, anti))
}

/// Writes report.txt, report.json and grids/<component>.txt.
pub fn write_run_report(
    problem: &Problem,
    result: &RunResult,
    city: &CityGenotype,
    breakdown: &ObjectiveBreakdown,
    dir: &Path,
    timestamp: Option<u64>,
) -> CliResult<()> {
    let (danger_zone, anti_diagonal) = both_zone_stats(problem, city)?;
    let artifacts = RunArtifacts {
        result,
        city,
        breakdown,
        grid: &problem.grid,
        scheme: &problem.scheme,
        cost: &problem.cost,
        danger_zone: &danger_zone,
        anti_diagonal: &anti_diagonal,
        timestamp,
    };
    report::write_json(&dir.join("report.json"), &report::run_report_doc(&artifacts))?;
    report::write_text(&dir.join("report.txt"), &report::run_report_txt(&artifacts))?;
    for k in ComponentId::ALL {
        report::write_text(
            &dir.join("grids").join(format!("{}.txt", k.name())),
            &render_component_grid(city, k),
        )?;
    }
    Ok(())
}
