//! Result analysis: per-component level statistics over the danger zone
//! and two-scheme pattern comparison.
//!
//! Qualitative pattern claims ("more X on the flood plain", "the reverse
//! of...") are operationalized through mean levels: each component's
//! danger-zone mean under two schemes is classified [`PatternTag::Similar`]
//! when the means are within `margin` of each other, [`PatternTag::Inverted`]
//! when they are at least `margin` apart on opposite sides of the level
//! midpoint 1.5, and [`PatternTag::Mixed`] otherwise (clearly apart but on
//! the same side).

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::genome::{CityGenotype, ComponentId};
use crate::hazard::{danger_zone, HazardGrid};

/// Midpoint of the level range 0..=3.
pub const LEVEL_MIDPOINT: f64 = 1.5;

/// Default mean-separation margin for pattern classification.
pub const DEFAULT_MARGIN: f64 = 0.25;

/// Level histogram and mean of one component over a zone and its
/// complement.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ComponentZoneStats {
    /// Counts of levels 0..=3 inside the zone.
    pub zone_hist: [u32; 4],
    pub zone_mean: f64,
    /// Counts of levels 0..=3 outside the zone.
    pub off_hist: [u32; 4],
    pub off_mean: f64,
}

/// Per-component statistics of a city split into a cell zone and the rest.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ZoneStats {
    pub zone_size: usize,
    pub off_size: usize,
    /// In [`ComponentId`] order.
    pub per_component: [ComponentZoneStats; ComponentId::COUNT],
}

/// Statistics over a grid's danger zone (maximum-multiplier cells).
pub fn zone_stats(city: &CityGenotype, grid: &HazardGrid) -> Result<ZoneStats> {
    grid.check_dims(city)?;
    zone_stats_over(city, danger_zone(grid).cells())
}

/// Statistics over an arbitrary zone given as row-major cell indices.
pub fn zone_stats_over(city: &CityGenotype, zone: &[usize]) -> Result<ZoneStats> {
    let cell_count = city.cell_count();
    if zone.iter().any(|i| *i >= cell_count) {
        return Err(Error::Domain(alloc::format!(
            "zone cell index out of range for {} cells",
            cell_count
        )));
    }
    if zone.is_empty() {
        return Err(Error::Domain(alloc::string::String::from(
            "zone must be non-empty",
        )));
    }
    let mut in_zone = alloc::vec![false; cell_count];
    for i in zone {
        in_zone[*i] = true;
    }
    let per_component = core::array::from_fn(|ki| {
        let k = ComponentId::ALL[ki];
        let mut zone_hist = [0u32; 4];
        let mut off_hist = [0u32; 4];
        for (i, cell) in city.cells().iter().enumerate() {
            let hist = if in_zone[i] { &mut zone_hist } else { &mut off_hist };
            hist[cell.level(k).get() as usize] += 1;
        }
        ComponentZoneStats {
            zone_hist,
            zone_mean: hist_mean(&zone_hist),
            off_hist,
            off_mean: hist_mean(&off_hist),
        }
    });
    Ok(ZoneStats {
        zone_size: zone.len(),
        off_size: cell_count - zone.len(),
        per_component,
    })
}

/// Mean level of a histogram; 0 for an empty side (a zone covering the
/// whole grid leaves no off-zone cells).
fn hist_mean(hist: &[u32; 4]) -> f64 {
    let n: u32 = hist.iter().sum();
    if n == 0 {
        return 0.0;
    }
    let sum: u32 = hist.iter().enumerate().map(|(level, c)| level as u32 * c).sum();
    sum as f64 / n as f64
}

/// The main anti-diagonal cells `(r, cols-1-r)`: the narrow reading of the
/// flood-plain "diagonal", reported alongside the full danger zone.
pub fn main_anti_diagonal(rows: usize, cols: usize) -> Vec<usize> {
    (0..rows)
        .filter(|r| cols > *r)
        .map(|r| r * cols + (cols - 1 - r))
        .collect()
}

/// Pattern relation of one component between two schemes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum PatternTag {
    Similar,
    Inverted,
    Mixed,
}

/// Classifies a pair of zone means. Means closer than `margin` are
/// `Similar`; means at least `margin` apart and strictly straddling
/// [`LEVEL_MIDPOINT`] are `Inverted`; anything else is `Mixed`.
pub fn classify(mean_a: f64, mean_b: f64, margin: f64) -> PatternTag {
    let gap = (mean_a - mean_b).abs();
    if gap < margin {
        PatternTag::Similar
    } else if (mean_a - LEVEL_MIDPOINT) * (mean_b - LEVEL_MIDPOINT) < 0.0 {
        PatternTag::Inverted
    } else {
        PatternTag::Mixed
    }
}

/// One component's comparison row.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ComponentComparison {
    pub mean_a: f64,
    pub mean_b: f64,
    pub tag: PatternTag,
}

/// Two-scheme comparison over both danger-zone readings.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ComparisonReport {
    pub margin: f64,
    /// Rows in [`ComponentId`] order, over the full danger zone.
    pub danger_zone: [ComponentComparison; ComponentId::COUNT],
    /// Rows in [`ComponentId`] order, over the main anti-diagonal.
    pub anti_diagonal: [ComponentComparison; ComponentId::COUNT],
}

/// Compares the danger-zone patterns of two optimized cities on the same
/// grid.
pub fn compare_schemes(
    city_a: &CityGenotype,
    city_b: &CityGenotype,
    grid: &HazardGrid,
    margin: f64,
) -> Result<ComparisonReport> {
    if city_a.dims() != city_b.dims() {
        return Err(Error::dim_mismatch(city_a.dims(), city_b.dims()));
    }
    if !(margin.is_finite() && margin >= 0.0) {
        return Err(Error::Domain(alloc::format!(
            "margin must be finite and non-negative, got {margin}"
        )));
    }
    let rows = |stats_a: &ZoneStats, stats_b: &ZoneStats| {
        core::array::from_fn(|ki| {
            let mean_a = stats_a.per_component[ki].zone_mean;
            let mean_b = stats_b.per_component[ki].zone_mean;
            ComponentComparison {
                mean_a,
                mean_b,
                tag: classify(mean_a, mean_b, margin),
            }
        })
    };
    let zone = rows(&zone_stats(city_a, grid)?, &zone_stats(city_b, grid)?);
    let diag = main_anti_diagonal(grid.rows(), grid.cols());
    let anti = rows(
        &zone_stats_over(city_a, &diag)?,
        &zone_stats_over(city_b, &diag)?,
    );
    Ok(ComparisonReport {
        margin,
        danger_zone: zone,
        anti_diagonal: anti,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genome::{parse_component_grid, CellGenotype, Level};

    fn city_from_poverty_grid(text: &str) -> CityGenotype {
        let levels = parse_component_grid(text, 6, 6).unwrap();
        let cells = levels
            .iter()
            .map(|l| {
                let mut cell = CellGenotype::default();
                cell.set_level(ComponentId::Poverty, *l);
                cell
            })
            .collect();
        CityGenotype::new(6, 6, cells).unwrap()
    }

    #[test]
    fn all_zero_city_means_are_zero() {
        let city = CityGenotype::uniform(6, 6, Level::MIN).unwrap();
        let stats = zone_stats(&city, &HazardGrid::default_grid()).unwrap();
        assert_eq!(stats.zone_size, 16);
        assert_eq!(stats.off_size, 20);
        for s in &stats.per_component {
            assert_eq!(s.zone_mean, 0.0);
            assert_eq!(s.off_mean, 0.0);
            assert_eq!(s.zone_hist, [16, 0, 0, 0]);
            assert_eq!(s.off_hist, [20, 0, 0, 0]);
        }
    }

    #[test]
    fn uniform_level2_city_means_are_two() {
        let city = CityGenotype::uniform(6, 6, Level::new(2).unwrap()).unwrap();
        let stats = zone_stats(&city, &HazardGrid::default_grid()).unwrap();
        for s in &stats.per_component {
            assert_eq!(s.zone_mean, 2.0);
            assert_eq!(s.off_mean, 2.0);
        }
    }

    #[test]
    fn zone_and_off_means_combine_to_whole_mean() {
        let city = city_from_poverty_grid(
            "01 00 01 11 11 10\n10 00 01 01 11 11\n10 00 00 10 11 01\n10 01 00 01 00 11\n00 10 00 10 10 01\n10 10 10 10 11 00",
        );
        let stats = zone_stats(&city, &HazardGrid::default_grid()).unwrap();
        let s = &stats.per_component[ComponentId::Poverty.index()];
        let whole: f64 = city
            .cells()
            .iter()
            .map(|c| c.level(ComponentId::Poverty).get() as f64)
            .sum::<f64>()
            / 36.0;
        let combined = (16.0 * s.zone_mean + 20.0 * s.off_mean) / 36.0;
        assert!((combined - whole).abs() < 1e-12);
    }

    #[test]
    fn anti_diagonal_cells() {
        assert_eq!(main_anti_diagonal(6, 6), [5, 10, 15, 20, 25, 30]);
        assert_eq!(main_anti_diagonal(2, 2), [1, 2]);
    }

    #[test]
    fn published_mortality_grid_zone_below_off_zone() {
        // the published aspect-scheme mortality result puts low-mortality
        // cells on the flood plain: zone mean 15/16, off-zone mean 32/20
        let levels = parse_component_grid(
            "01 11 00 01 00 00\n10 01 00 11 10 00\n11 11 01 11 00 10\n00 01 01 10 11 10\n00 01 00 11 00 11\n00 01 01 00 01 11",
            6,
            6,
        )
        .unwrap();
        let cells = levels
            .iter()
            .map(|l| {
                let mut cell = CellGenotype::default();
                cell.set_level(ComponentId::Mortality, *l);
                cell
            })
            .collect();
        let city = CityGenotype::new(6, 6, cells).unwrap();
        let stats = zone_stats(&city, &HazardGrid::default_grid()).unwrap();
        let s = &stats.per_component[ComponentId::Mortality.index()];
        assert!((s.zone_mean - 15.0 / 16.0).abs() < 1e-12);
        assert!((s.off_mean - 32.0 / 20.0).abs() < 1e-12);
        assert!(s.zone_mean < s.off_mean);
    }

    #[test]
    fn classify_rule() {
        // nearly equal means are similar regardless of side
        assert_eq!(classify(1.5, 1.5, 0.25), PatternTag::Similar);
        assert_eq!(classify(0.2, 0.3, 0.25), PatternTag::Similar);
        // clearly apart across the midpoint
        assert_eq!(classify(1.0, 2.0, 0.25), PatternTag::Inverted);
        assert_eq!(classify(1.5625, 1.125, 0.25), PatternTag::Inverted);
        // clearly apart on the same side
        assert_eq!(classify(1.7, 2.9, 0.25), PatternTag::Mixed);
        assert_eq!(classify(0.1, 1.2, 0.25), PatternTag::Mixed);
        // a mean exactly on the midpoint never straddles it
        assert_eq!(classify(1.5, 2.5, 0.25), PatternTag::Mixed);
    }

    #[test]
    fn identical_cities_are_all_similar() {
        let city = city_from_poverty_grid(
            "01 00 01 11 11 10\n10 00 01 01 11 11\n10 00 00 10 11 01\n10 01 00 01 00 11\n00 10 00 10 10 01\n10 10 10 10 11 00",
        );
        let report =
            compare_schemes(&city, &city, &HazardGrid::default_grid(), DEFAULT_MARGIN).unwrap();
        for row in &report.danger_zone {
            assert_eq!(row.tag, PatternTag::Similar);
        }
        for row in &report.anti_diagonal {
            assert_eq!(row.tag, PatternTag::Similar);
        }
    }

    #[test]
    fn complemented_city_inverts_when_margin_met() {
        let city = CityGenotype::uniform(6, 6, Level::MIN).unwrap();
        let complemented = CityGenotype::uniform(6, 6, Level::MAX).unwrap();
        let report = compare_schemes(
            &city,
            &complemented,
            &HazardGrid::default_grid(),
            DEFAULT_MARGIN,
        )
        .unwrap();
        for row in &report.danger_zone {
            assert_eq!(row.tag, PatternTag::Inverted);
            assert!((row.mean_a - (3.0 - row.mean_b)).abs() < 1e-12);
        }
    }

    #[test]
    fn dim_mismatch_is_rejected() {
        let a = CityGenotype::uniform(6, 6, Level::MIN).unwrap();
        let b = CityGenotype::uniform(2, 2, Level::MIN).unwrap();
        assert!(matches!(
            compare_schemes(&a, &b, &HazardGrid::default_grid(), DEFAULT_MARGIN),
            Err(Error::DimMismatch { .. })
        ));
    }

    #[test]
    fn zone_stats_invariant_under_zone_permutation() {
        let city = city_from_poverty_grid(
            "01 00 01 11 11 10\n10 00 01 01 11 11\n10 00 00 10 11 01\n10 01 00 01 00 11\n00 10 00 10 10 01\n10 10 10 10 11 00",
        );
        let zone: Vec<usize> = danger_zone(&HazardGrid::default_grid()).cells().to_vec();
        let mut reversed = zone.clone();
        reversed.reverse();
        assert_eq!(
            zone_stats_over(&city, &zone).unwrap(),
            zone_stats_over(&city, &reversed).unwrap()
        );
    }
}
