//! Report documents: machine-readable JSON side by side with plain text in
//! the same grid format as the published result figures. Field order is
//! fixed by struct declaration, so identical inputs serialize byte-
//! identically (timestamps can be omitted for reproducible output).

use std::fs;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use anyhow::Context;
use serde::{Deserialize, Serialize};

use floodcity::analysis::{ComparisonReport, PatternTag, ZoneStats};
use floodcity::ga::{GaConfig, GenerationStats, RunResult};
use floodcity::genome::{render_component_grid, CityGenotype, ComponentId};
use floodcity::hazard::HazardGrid;
use floodcity::objective::{CostParams, CurveKind, ObjectiveBreakdown};
use floodcity::weights::WeightScheme;

use crate::error::{CliResult, RuntimeContext};

pub const RUN_SCHEMA: &str = "floodcity-run-v1";
pub const COMPARE_SCHEMA: &str = "floodcity-compare-v1";
pub const COMPARE_SUMMARY_SCHEMA: &str = "floodcity-compare-summary-v1";

pub fn now_unix() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0)
}

/// Writes a string, creating parent directories.
pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)
            .with_context(|| format!("cannot create {}", parent.display()))
            .runtime_err()?;
    }
    fs::write(path, text)
        .with_context(|| format!("cannot write {}", path.display()))
        .runtime_err()
}

pub fn write_json<T: Serialize>(path: &Path, doc: &T) -> CliResult<()> {
    let mut text = serde_json::to_string_pretty(doc)
        .context("cannot serialize report")
        .runtime_err()?;
    text.push('\n');
    write_text(path, &text)
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GridDoc {
    pub rows: usize,
    pub cols: usize,
    pub multipliers: Vec<f64>,
}

impl GridDoc {
    pub fn of(grid: &HazardGrid) -> GridDoc {
        GridDoc {
            rows: grid.rows(),
            cols: grid.cols(),
            multipliers: grid.multipliers().to_vec(),
        }
    }

    pub fn to_grid(&self) -> CliResult<HazardGrid> {
        HazardGrid::new(self.rows, self.cols, self.multipliers.clone())
            .context("invalid grid in saved report")
            .runtime_err()
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CurveDoc {
    pub component: String,
    pub kind: CurveKind,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CostDoc {
    pub exp_base: f64,
    pub linear_slope: f64,
    pub quad_coeff: f64,
    pub interaction_coeff: f64,
    pub lambda: f64,
    pub curves: Vec<CurveDoc>,
}

impl CostDoc {
    pub fn of(params: &CostParams) -> CostDoc {
        CostDoc {
            exp_base: params.exp_base,
            linear_slope: params.linear_slope,
            quad_coeff: params.quad_coeff,
            interaction_coeff: params.interaction_coeff,
            lambda: params.lambda,
            curves: ComponentId::ALL
                .iter()
                .map(|k| CurveDoc {
                    component: k.name().into(),
                    kind: params.curves[k.index()],
                })
                .collect(),
        }
    }
}

/// The seven rendered component grids, in canonical order.
#[derive(Debug, Serialize, Deserialize)]
pub struct ComponentGridsDoc {
    pub urbanization: String,
    pub literacy: String,
    pub mortality: String,
    pub poverty: String,
    pub tv_radio: String,
    pub non_structural: String,
    pub structural: String,
}

impl ComponentGridsDoc {
    pub fn of(city: &CityGenotype) -> ComponentGridsDoc {
        let mut grids = ComponentId::ALL
            .iter()
            .map(|k| render_component_grid(city, *k));
        ComponentGridsDoc {
            urbanization: grids.next().unwrap(),
            literacy: grids.next().unwrap(),
            mortality: grids.next().unwrap(),
            poverty: grids.next().unwrap(),
            tv_radio: grids.next().unwrap(),
            non_structural: grids.next().unwrap(),
            structural: grids.next().unwrap(),
        }
    }

    pub fn get(&self, component: ComponentId) -> &str {
        match component {
            ComponentId::Urbanization => &self.urbanization,
            ComponentId::Literacy => &self.literacy,
            ComponentId::Mortality => &self.mortality,
            ComponentId::Poverty => &self.poverty,
            ComponentId::TvRadio => &self.tv_radio,
            ComponentId::NonStructural => &self.non_structural,
            ComponentId::Structural => &self.structural,
        }
    }

    pub fn to_city(&self, rows: usize, cols: usize) -> CliResult<CityGenotype> {
        let mut grids = Vec::with_capacity(ComponentId::COUNT);
        for k in ComponentId::ALL {
            grids.push(
                floodcity::genome::parse_component_grid(self.get(k), rows, cols)
                    .with_context(|| format!("invalid {} grid in saved report", k.name()))
                    .runtime_err()?,
            );
        }
        let grids: [Vec<floodcity::genome::Level>; ComponentId::COUNT] =
            grids.try_into().expect("seven grids");
        CityGenotype::from_component_grids(rows, cols, &grids)
            .context("inconsistent grids in saved report")
            .runtime_err()
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ZoneRowDoc {
    pub component: String,
    pub zone_hist: [u32; 4],
    pub zone_mean: f64,
    pub off_hist: [u32; 4],
    pub off_mean: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ZoneStatsDoc {
    pub zone_cells: usize,
    pub off_cells: usize,
    pub components: Vec<ZoneRowDoc>,
}

impl ZoneStatsDoc {
    pub fn of(stats: &ZoneStats) -> ZoneStatsDoc {
        ZoneStatsDoc {
            zone_cells: stats.zone_size,
            off_cells: stats.off_size,
            components: ComponentId::ALL
                .iter()
                .map(|k| {
                    let s = &stats.per_component[k.index()];
                    ZoneRowDoc {
                        component: k.name().into(),
                        zone_hist: s.zone_hist,
                        zone_mean: s.zone_mean,
                        off_hist: s.off_hist,
                        off_mean: s.off_mean,
                    }
                })
                .collect(),
        }
    }
}

/// Both danger-zone readings: all maximum-multiplier cells, and the narrow
/// main anti-diagonal.
#[derive(Debug, Serialize, Deserialize)]
pub struct ZoneStatsSection {
    pub danger_zone: ZoneStatsDoc,
    pub anti_diagonal: ZoneStatsDoc,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunReportDoc {
    pub schema: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timestamp: Option<u64>,
    pub scheme: String,
    pub scheme_weights: [f64; ComponentId::COUNT],
    pub seed: u64,
    pub rng_algo: String,
    pub grid: GridDoc,
    pub ga: GaConfig,
    pub cost: CostDoc,
    pub best_fitness: f64,
    pub vulnerability_term: f64,
    pub cost_term: f64,
    pub history: Vec<GenerationStats>,
    pub grids: ComponentGridsDoc,
    pub zone_stats: ZoneStatsSection,
}

pub struct RunArtifacts<'a> {
    pub result: &'a RunResult,
    pub city: &'a CityGenotype,
    pub breakdown: &'a ObjectiveBreakdown,
    pub grid: &'a HazardGrid,
    pub scheme: &'a WeightScheme,
    pub cost: &'a CostParams,
    pub danger_zone: &'a ZoneStats,
    pub anti_diagonal: &'a ZoneStats,
    pub timestamp: Option<u64>,
}

pub fn run_report_doc(a: &RunArtifacts) -> RunReportDoc {
    RunReportDoc {
        schema: RUN_SCHEMA.into(),
        timestamp: a.timestamp,
        scheme: a.scheme.name().into(),
        scheme_weights: *a.scheme.weights(),
        seed: a.result.seed,
        rng_algo: a.result.rng_algo.into(),
        grid: GridDoc::of(a.grid),
        ga: a.result.config.clone(),
        cost: CostDoc::of(a.cost),
        best_fitness: a.result.best_fitness,
        vulnerability_term: a.breakdown.vulnerability_term,
        cost_term: a.breakdown.cost_term,
        history: a.result.history.clone(),
        grids: ComponentGridsDoc::of(a.city),
        zone_stats: ZoneStatsSection {
            danger_zone: ZoneStatsDoc::of(a.danger_zone),
            anti_diagonal: ZoneStatsDoc::of(a.anti_diagonal),
        },
    }
}

const NAME_WIDTH: usize = 15;

fn zone_stats_table(title: &str, doc: &ZoneStatsDoc) -> String {
    let mut out = format!(
        "{title} ({} cells vs {} off-zone)\n{:<NAME_WIDTH$} {:>9} {:>9}  {:<11} {}\n",
        doc.zone_cells, doc.off_cells, "component", "zone mean", "off mean", "zone 0/1/2/3", "off 0/1/2/3"
    );
    for row in &doc.components {
        let zh = row.zone_hist.map(|c| c.to_string()).join("/");
        let oh = row.off_hist.map(|c| c.to_string()).join("/");
        out.push_str(&format!(
            "{:<NAME_WIDTH$} {:>9.4} {:>9.4}  {:<11} {}\n",
            row.component, row.zone_mean, row.off_mean, zh, oh
        ));
    }
    out
}

pub fn run_report_txt(a: &RunArtifacts) -> String {
    let doc_zone = ZoneStatsDoc::of(a.danger_zone);
    let doc_diag = ZoneStatsDoc::of(a.anti_diagonal);
    let ga = &a.result.config;
    let mutation = match ga.mutation_rate {
        Some(rate) => format!("{rate}"),
        None => format!("1/{}", a.grid.cell_count() * floodcity::genome::BITS_PER_CELL),
    };
    let mut out = String::new();
    out.push_str("floodcity run report\n");
    if let Some(ts) = a.timestamp {
        out.push_str(&format!("generated_at: {ts}\n"));
    }
    out.push_str(&format!("scheme: {}\n", a.scheme.name()));
    out.push_str(&format!("seed: {}\n", a.result.seed));
    out.push_str(&format!("rng: {}\n", a.result.rng_algo));
    out.push_str(&format!(
        "grid: {}x{} (danger zone {} cells)\n",
        a.grid.rows(),
        a.grid.cols(),
        a.danger_zone.zone_size
    ));
    out.push_str(&format!(
        "ga: pop {}, generations {}, crossover {:?} @ {}, mutation {}, tournament {}, elitism {}\n",
        ga.population_size,
        ga.generations,
        ga.crossover_kind,
        ga.crossover_rate,
        mutation,
        ga.tournament_size,
        ga.elitism_count
    ));
    out.push_str(&format!(
        "cost: lambda {}, exp_base {}, linear_slope {}, quad_coeff {}, interaction {}\n",
        a.cost.lambda, a.cost.exp_base, a.cost.linear_slope, a.cost.quad_coeff, a.cost.interaction_coeff
    ));
    out.push_str(&format!(
        "best fitness: {:.9} (vulnerability {:.9}, cost term {:.9})\n",
        a.result.best_fitness, a.breakdown.vulnerability_term, a.breakdown.cost_term
    ));
    out.push('\n');
    for k in ComponentId::ALL {
        out.push_str(k.name());
        out.push('\n');
        out.push_str(&render_component_grid(a.city, k));
        out.push('\n');
    }
    out.push_str(&zone_stats_table("danger-zone statistics", &doc_zone));
    out.push('\n');
    out.push_str(&zone_stats_table("anti-diagonal statistics", &doc_diag));
    out.push('\n');
    if let (Some(first), Some(last)) = (a.result.history.first(), a.result.history.last()) {
        out.push_str(&format!(
            "fitness history: {} generations, initial best {:.6}, final best {:.6} (full history in report.json)\n",
            a.result.history.len(),
            first.best,
            last.best
        ));
    }
    out
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ComparisonRowDoc {
    pub component: String,
    pub mean_a: f64,
    pub mean_b: f64,
    pub tag: PatternTag,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComparisonDoc {
    pub schema: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timestamp: Option<u64>,
    pub scheme_a: String,
    pub scheme_b: String,
    pub seed_a: u64,
    pub seed_b: u64,
    pub margin: f64,
    pub best_fitness_a: f64,
    pub best_fitness_b: f64,
    pub danger_zone: Vec<ComparisonRowDoc>,
    pub anti_diagonal: Vec<ComparisonRowDoc>,
}

fn comparison_rows(rows: &[floodcity::analysis::ComponentComparison]) -> Vec<ComparisonRowDoc> {
    ComponentId::ALL
        .iter()
        .map(|k| {
            let row = &rows[k.index()];
            ComparisonRowDoc {
                component: k.name().into(),
                mean_a: row.mean_a,
                mean_b: row.mean_b,
                tag: row.tag,
            }
        })
        .collect()
}

pub struct ComparisonInputs<'a> {
    pub report: &'a ComparisonReport,
    pub scheme_a: &'a str,
    pub scheme_b: &'a str,
    pub seed_a: u64,
    pub seed_b: u64,
    pub best_fitness_a: f64,
    pub best_fitness_b: f64,
    pub timestamp: Option<u64>,
}

pub fn comparison_doc(c: &ComparisonInputs) -> ComparisonDoc {
    ComparisonDoc {
        schema: COMPARE_SCHEMA.into(),
        timestamp: c.timestamp,
        scheme_a: c.scheme_a.into(),
        scheme_b: c.scheme_b.into(),
        seed_a: c.seed_a,
        seed_b: c.seed_b,
        margin: c.report.margin,
        best_fitness_a: c.best_fitness_a,
        best_fitness_b: c.best_fitness_b,
        danger_zone: comparison_rows(&c.report.danger_zone),
        anti_diagonal: comparison_rows(&c.report.anti_diagonal),
    }
}

fn tag_str(tag: PatternTag) -> &'static str {
    match tag {
        PatternTag::Similar => "Similar",
        PatternTag::Inverted => "Inverted",
        PatternTag::Mixed => "Mixed",
    }
}

fn comparison_table(title: &str, rows: &[ComparisonRowDoc], a: &str, b: &str) -> String {
    let col_a = format!("{a} mean");
    let col_b = format!("{b} mean");
    let wa = col_a.len().max(10);
    let wb = col_b.len().max(10);
    let mut out = format!("{title}\n{:<NAME_WIDTH$} {col_a:>wa$} {col_b:>wb$}  tag\n", "component");
    for row in rows {
        out.push_str(&format!(
            "{:<NAME_WIDTH$} {:>wa$.4} {:>wb$.4}  {}\n",
            row.component,
            row.mean_a,
            row.mean_b,
            tag_str(row.tag)
        ));
    }
    out
}

pub fn comparison_txt(doc: &ComparisonDoc) -> String {
    let mut out = String::new();
    out.push_str("floodcity scheme comparison\n");
    if let Some(ts) = doc.timestamp {
        out.push_str(&format!("generated_at: {ts}\n"));
    }
    out.push_str(&format!(
        "scheme A: {} (seed {}, best fitness {:.9})\n",
        doc.scheme_a, doc.seed_a, doc.best_fitness_a
    ));
    out.push_str(&format!(
        "scheme B: {} (seed {}, best fitness {:.9})\n",
        doc.scheme_b, doc.seed_b, doc.best_fitness_b
    ));
    out.push_str(&format!("margin: {}\n\n", doc.margin));
    out.push_str(&comparison_table(
        "danger-zone comparison",
        &doc.danger_zone,
        &doc.scheme_a,
        &doc.scheme_b,
    ));
    out.push('\n');
    out.push_str(&comparison_table(
        "anti-diagonal comparison",
        &doc.anti_diagonal,
        &doc.scheme_a,
        &doc.scheme_b,
    ));
    out
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SummaryRowDoc {
    pub component: String,
    pub tags: Vec<PatternTag>,
    pub similar: usize,
    pub inverted: usize,
    pub mixed: usize,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompareSummaryDoc {
    pub schema: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub timestamp: Option<u64>,
    pub scheme_a: String,
    pub scheme_b: String,
    pub margin: f64,
    pub seeds: Vec<u64>,
    pub components: Vec<SummaryRowDoc>,
}

pub fn summary_doc(
    per_seed: &[ComparisonDoc],
    seeds: &[u64],
    timestamp: Option<u64>,
) -> CompareSummaryDoc {
    let first = per_seed.first().expect("at least one comparison");
    let components = ComponentId::ALL
        .iter()
        .map(|k| {
            let tags: Vec<PatternTag> = per_seed
                .iter()
                .map(|doc| doc.danger_zone[k.index()].tag)
                .collect();
            SummaryRowDoc {
                component: k.name().into(),
                similar: tags.iter().filter(|t| **t == PatternTag::Similar).count(),
                inverted: tags.iter().filter(|t| **t == PatternTag::Inverted).count(),
                mixed: tags.iter().filter(|t| **t == PatternTag::Mixed).count(),
                tags,
            }
        })
        .collect();
    CompareSummaryDoc {
        schema: COMPARE_SUMMARY_SCHEMA.into(),
        timestamp,
        scheme_a: first.scheme_a.clone(),
        scheme_b: first.scheme_b.clone(),
        margin: first.margin,
        seeds: seeds.to_vec(),
        components,
    }
}

pub fn summary_txt(doc: &CompareSummaryDoc) -> String {
    let mut out = String::new();
    out.push_str("floodcity comparison summary\n");
    if let Some(ts) = doc.timestamp {
        out.push_str(&format!("generated_at: {ts}\n"));
    }
    out.push_str(&format!(
        "schemes: {} vs {} | margin {} | seeds {:?}\n\n",
        doc.scheme_a, doc.scheme_b, doc.margin, doc.seeds
    ));
    out.push_str(&format!(
        "{:<NAME_WIDTH$} {:>8} {:>9} {:>6}  per-seed tags\n",
        "component", "similar", "inverted", "mixed"
    ));
    for row in &doc.components {
        let tags: Vec<&str> = row.tags.iter().map(|t| tag_str(*t)).collect();
        out.push_str(&format!(
            "{:<NAME_WIDTH$} {:>8} {:>9} {:>6}  {}\n",
            row.component,
            row.similar,
            row.inverted,
            row.mixed,
            tags.join(" ")
        ));
    }
    out
}
