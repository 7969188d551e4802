//! Run configuration: a single JSON document selecting the grid, the
//! weight scheme, cost parameters, GA parameters, seeds and output
//! directory. Every field has a default, so `{}` (or no config at all) is
//! a valid experiment.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::Deserialize;

use floodcity::genome::{ComponentId, Level};
use floodcity::ga::GaConfig;
use floodcity::hazard::HazardGrid;
use floodcity::objective::{CostParams, CurveKind, Problem};
use floodcity::oracle::ReducedProblem;
use floodcity::weights::{derive_totals, AspectWeights, RatingTable, WeightScheme};

use crate::error::{config_error, CliError, CliResult, ConfigContext};

pub const DEFAULT_OUT_DIR: &str = "out";

#[derive(Debug, Clone, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub grid: GridSource,
    pub scheme: SchemeSource,
    pub cost: CostBlock,
    pub ga: GaConfig,
    pub oracle: OracleBlock,
    pub out_dir: Option<PathBuf>,
    pub seeds: Vec<u64>,
    pub margin: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum GridSource {
    /// The literal string "builtin".
    Builtin(String),
    /// A plain-text multiplier matrix file.
    File { file: PathBuf },
}

impl Default for GridSource {
    fn default() -> Self {
        GridSource::Builtin("builtin".into())
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum SchemeSource {
    /// A built-in scheme name: "aspect" or "einarsson".
    Builtin(String),
    /// A scheme file: `{"name": ..., "weights": [7 numbers]}`, accepted
    /// unnormalized.
    File { file: PathBuf },
    /// A rating-table file; the scheme is derived and normalized from it.
    RatingTable { rating_table: PathBuf },
}

impl Default for SchemeSource {
    fn default() -> Self {
        SchemeSource::Builtin("aspect".into())
    }
}

/// Cost parameters with optional per-component curve overrides.
#[derive(Debug, Clone, Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
pub struct CostBlock {
    pub exp_base: Option<f64>,
    pub linear_slope: Option<f64>,
    pub quad_coeff: Option<f64>,
    pub interaction_coeff: Option<f64>,
    pub lambda: Option<f64>,
    pub curves: BTreeMap<ComponentId, CurveKind>,
}

impl CostBlock {
    pub fn resolve(&self) -> CostParams {
        let mut params = CostParams::default();
        if let Some(v) = self.exp_base {
            params.exp_base = v;
        }
        if let Some(v) = self.linear_slope {
            params.linear_slope = v;
        }
        if let Some(v) = self.quad_coeff {
            params.quad_coeff = v;
        }
        if let Some(v) = self.interaction_coeff {
            params.interaction_coeff = v;
        }
        if let Some(v) = self.lambda {
            params.lambda = v;
        }
        for (component, kind) in &self.curves {
            params.curves[component.index()] = *kind;
        }
        params
    }
}

/// Reduced-problem selection for the `oracle` command.
#[derive(Debug, Clone, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OracleBlock {
    /// Active component names; empty means all seven.
    pub active: Vec<String>,
    /// Level pinned on inactive components (0..=3).
    pub fixed_level: u8,
    /// "separable" (default) or "flat".
    pub mode: String,
}

impl Default for OracleBlock {
    fn default() -> Self {
        OracleBlock {
            active: Vec::new(),
            fixed_level: 3,
            mode: "separable".into(),
        }
    }
}

/// Scheme file schema.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SchemeFile {
    name: String,
    weights: [f64; ComponentId::COUNT],
}

/// Rating-table file schema.
#[derive(Debug, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RatingTableFile {
    pub name: Option<String>,
    pub aspect_weights: Option<[f64; 6]>,
    pub ratings: Vec<Vec<f64>>,
    /// Published row totals to check the derivation against; mismatches
    /// are flagged by `derive-weights`.
    pub published_totals: Option<[f64; ComponentId::COUNT]>,
}

impl Default for RatingTableFile {
    fn default() -> Self {
        RatingTableFile {
            name: None,
            aspect_weights: None,
            ratings: Vec::new(),
            published_totals: None,
        }
    }
}

impl RatingTableFile {
    pub fn aspect_weights(&self) -> CliResult<AspectWeights> {
        match self.aspect_weights {
            Some(w) => AspectWeights::new(w).config_err(),
            None => Ok(AspectWeights::default()),
        }
    }

    pub fn rating_table(&self) -> CliResult<RatingTable> {
        if self.ratings.len() != ComponentId::COUNT {
            return Err(config_error(format!(
                "rating table must have {} rows, got {}",
                ComponentId::COUNT,
                self.ratings.len()
            )));
        }
        let mut rows = [[0.0; 6]; ComponentId::COUNT];
        for (i, row) in self.ratings.iter().enumerate() {
            if row.len() != 6 {
                return Err(config_error(format!(
                    "rating row {} must have 6 entries, got {}",
                    ComponentId::ALL[i].name(),
                    row.len()
                )));
            }
            rows[i].copy_from_slice(row);
        }
        RatingTable::new(rows).config_err()
    }
}

pub fn load_config(path: Option<&Path>) -> CliResult<RunConfig> {
    match path {
        None => Ok(RunConfig::default()),
        Some(path) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("cannot read config {}", path.display()))
                .config_err()?;
            serde_json::from_str(&text)
                .with_context(|| format!("invalid config {}", path.display()))
                .config_err()
        }
    }
}

pub fn load_grid(source: &GridSource) -> CliResult<HazardGrid> {
    match source {
        GridSource::Builtin(name) if name == "builtin" => Ok(HazardGrid::default_grid()),
        GridSource::Builtin(name) => Err(config_error(format!(
            "unknown grid source {name:?}; use \"builtin\" or {{\"file\": PATH}}"
        ))),
        GridSource::File { file } => {
            let text = fs::read_to_string(file)
                .with_context(|| format!("cannot read grid {}", file.display()))
                .config_err()?;
            text.parse::<HazardGrid>()
                .with_context(|| format!("invalid grid {}", file.display()))
                .config_err()
        }
    }
}

pub fn load_rating_table_file(path: &Path) -> CliResult<RatingTableFile> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read rating table {}", path.display()))
        .config_err()?;
    serde_json::from_str(&text)
        .with_context(|| format!("invalid rating table {}", path.display()))
        .config_err()
}

pub fn load_scheme(source: &SchemeSource) -> CliResult<WeightScheme> {
    match source {
        SchemeSource::Builtin(name) => WeightScheme::builtin(name).ok_or_else(|| {
            config_error(format!(
                "unknown built-in scheme {name:?}; available: aspect, einarsson"
            ))
        }),
        SchemeSource::File { file } => {
            let text = fs::read_to_string(file)
                .with_context(|| format!("cannot read scheme {}", file.display()))
                .config_err()?;
            let parsed: SchemeFile = serde_json::from_str(&text)
                .with_context(|| format!("invalid scheme {}", file.display()))
                .config_err()?;
            WeightScheme::new(parsed.name, parsed.weights).config_err()
        }
        SchemeSource::RatingTable { rating_table } => {
            let file = load_rating_table_file(rating_table)?;
            let totals = derive_totals(&file.rating_table()?, &file.aspect_weights()?);
            let name = file.name.unwrap_or_else(|| "derived".into());
            WeightScheme::from_totals(name, totals).config_err()
        }
    }
}

impl RunConfig {
    /// Applies command-line overrides.
    pub fn with_overrides(
        mut self,
        seeds: &[u64],
        out: Option<&Path>,
        scheme: Option<&str>,
    ) -> RunConfig {
        if !seeds.is_empty() {
            self.seeds = seeds.to_vec();
        }
        if let Some(out) = out {
            self.out_dir = Some(out.to_path_buf());
        }
        if let Some(name) = scheme {
            self.scheme = SchemeSource::Builtin(name.into());
        }
        self
    }

    pub fn seeds(&self) -> Vec<u64> {
        if self.seeds.is_empty() {
            vec![0]
        } else {
            self.seeds.clone()
        }
    }

    pub fn out_dir(&self) -> PathBuf {
        self.out_dir.clone().unwrap_or_else(|| DEFAULT_OUT_DIR.into())
    }

    pub fn margin(&self) -> f64 {
        self.margin.unwrap_or(floodcity::analysis::DEFAULT_MARGIN)
    }

    /// Builds the full optimization problem this config describes.
    pub fn problem(&self) -> CliResult<Problem> {
        let grid = load_grid(&self.grid)?;
        let scheme = load_scheme(&self.scheme)?;
        Problem::new(grid, scheme, self.cost.resolve()).config_err()
    }

    /// Builds the reduced problem selected by the oracle block.
    pub fn reduced_problem(&self) -> CliResult<ReducedProblem> {
        let problem = self.problem()?;
        let fixed = Level::new(self.oracle.fixed_level)
            .map_err(|e| CliError::Config(e.into()))?;
        let active = if self.oracle.active.is_empty() {
            ComponentId::ALL.to_vec()
        } else {
            self.oracle
                .active
                .iter()
                .map(|name| {
                    ComponentId::from_name(name).ok_or_else(|| {
                        config_error(format!("unknown component {name:?} in oracle.active"))
                    })
                })
                .collect::<CliResult<Vec<_>>>()?
        };
        ReducedProblem::new(problem, &active, fixed).config_err()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cost_block_curve_overrides() {
        let block: CostBlock = serde_json::from_str(
            r#"{"lambda": 1.5, "curves": {"urbanization": "linear", "literacy": "quadratic"}}"#,
        )
        .unwrap();
        let params = block.resolve();
        assert_eq!(params.lambda, 1.5);
        assert_eq!(params.exp_base, 2.0);
        assert_eq!(
            params.curves[ComponentId::Urbanization.index()],
            CurveKind::Linear
        );
        assert_eq!(
            params.curves[ComponentId::Literacy.index()],
            CurveKind::Quadratic
        );
        // untouched components keep the default assignment
        assert_eq!(
            params.curves[ComponentId::Poverty.index()],
            CurveKind::Exponential
        );
        assert_eq!(
            params.curves[ComponentId::Mortality.index()],
            CurveKind::Quadratic
        );
    }

    #[test]
    fn empty_config_is_valid() {
        let config: RunConfig = serde_json::from_str("{}").unwrap();
        assert_eq!(config.seeds(), vec![0]);
        assert_eq!(config.out_dir(), PathBuf::from("out"));
        let problem = config.problem().unwrap();
        assert_eq!(problem.grid.dims(), (6, 6));
        assert_eq!(problem.scheme.name(), "aspect");
    }

    #[test]
    fn unknown_config_fields_are_rejected() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"grids": "builtin"}"#).is_err());
        assert!(serde_json::from_str::<RunConfig>(r#"{"ga": {"popsize": 3}}"#).is_err());
    }
}
