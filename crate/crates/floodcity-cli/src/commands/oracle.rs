//! `floodcity oracle`: exact optimum of a (possibly reduced) problem,
//! either by per-cell separable search (any grid size, parallelized over
//! cells) or by flat exhaustive enumeration (capped).

use rayon::prelude::*;

use floodcity::ga;
use floodcity::genome::{render_component_grid, CityGenotype, ComponentId};
use floodcity::oracle::{self, OracleResult, ReducedProblem};

use crate::config::load_config;
use crate::error::{config_error, CliResult, RuntimeContext};
use crate::OracleArgs;

pub fn execute(args: OracleArgs) -> CliResult<()> {
    let config = load_config(args.config.as_deref())?;
    let reduced = config.reduced_problem()?;
    let mode = args.mode.clone().unwrap_or_else(|| config.oracle.mode.clone());
    let result = match mode.as_str() {
        "separable" => separable_best_parallel(&reduced)?,
        "flat" => oracle::exhaustive_best(&reduced).runtime_err()?,
        other => return Err(config_error(format!("unknown oracle mode {other:?}"))),
    };
    print!("{}", render(&reduced, &mode, &result)?);

    if args.check_ga {
        config.ga.validate().map_err(|e| crate::error::CliError::Config(e.into()))?;
        let seed = args.seed.unwrap_or_else(|| config.seeds()[0]);
        let cfg = ga::GaConfig {
            rng_seed: seed,
            ..config.ga.clone()
        };
        let run = ga::run(&reduced, &cfg).runtime_err()?;
        let gap = (run.best_fitness - result.fitness) / result.fitness * 100.0;
        println!(
            "ga check: seed {seed}, ga best {}, oracle {}, gap {gap:.4}%",
            run.best_fitness, result.fitness
        );
    }
    Ok(())
}

/// Per-cell exact search fanned out over a thread pool; cells are
/// independent, so the result is identical at any thread count.
pub fn separable_best_parallel(p: &ReducedProblem) -> CliResult<OracleResult> {
    let cells: Vec<_> = (0..p.base().grid.cell_count())
        .into_par_iter()
        .map(|i| oracle::best_cell(p, i).cell)
        .collect();
    let city = CityGenotype::new(p.base().grid.rows(), p.base().grid.cols(), cells)
        .runtime_err()?;
    let fitness = p.base().evaluate_value(&city).runtime_err()?;
    Ok(OracleResult { city, fitness })
}

fn render(p: &ReducedProblem, mode: &str, result: &OracleResult) -> CliResult<String> {
    let breakdown = p.base().evaluate(&result.city).runtime_err()?;
    let mut out = format!(
        "oracle ({mode}) | grid {}x{} | scheme {} | {} active components | fixed level {}\n",
        p.base().grid.rows(),
        p.base().grid.cols(),
        p.base().scheme.name(),
        p.active().len(),
        p.fixed_level().get()
    );
    out.push_str(&format!("optimum fitness: {}\n", result.fitness));
    out.push_str(&format!(
        "vulnerability term: {}\ncost term: {}\n\n",
        breakdown.vulnerability_term, breakdown.cost_term
    ));
    for k in ComponentId::ALL {
        out.push_str(k.name());
        if !p.active().contains(&k) {
            out.push_str(" (fixed)");
        }
        out.push('\n');
        out.push_str(&render_component_grid(&result.city, k));
        out.push('\n');
    }
    Ok(out)
}
