//! The hazard-multiplier grid and its danger zone.
//!
//! Multipliers scale per-cell vulnerability by flood-plain proximity. The
//! built-in grid models a river running diagonally through a 6x6 city:
//! factor 2 on the flood plain, 1 on the surrounding rise, 1/2 farthest
//! away. The danger zone is the set of cells attaining the maximum
//! multiplier (16 cells in the built-in grid).

use alloc::string::ToString;
use alloc::vec::Vec;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::genome::CityGenotype;

/// An `rows x cols` grid of positive vulnerability multipliers.
#[derive(Debug, Clone, PartialEq)]
pub struct HazardGrid {
    rows: usize,
    cols: usize,
    mult: Vec<f64>,
}

/// The built-in 6x6 multiplier pattern.
const DEFAULT_MULT: [[f64; 6]; 6] = [
    [0.5, 0.5, 1.0, 1.0, 2.0, 2.0],
    [0.5, 1.0, 1.0, 2.0, 2.0, 2.0],
    [1.0, 1.0, 2.0, 2.0, 2.0, 1.0],
    [1.0, 2.0, 2.0, 2.0, 1.0, 1.0],
    [2.0, 2.0, 2.0, 1.0, 1.0, 0.5],
    [2.0, 2.0, 1.0, 1.0, 0.5, 0.5],
];

impl HazardGrid {
    /// Builds a grid from row-major multipliers, all of which must be
    /// positive and finite.
    pub fn new(rows: usize, cols: usize, mult: Vec<f64>) -> Result<HazardGrid> {
        if rows == 0 || cols == 0 || mult.len() != rows * cols {
            return Err(Error::Domain(alloc::format!(
                "expected {rows}x{cols} = {} multipliers, got {}",
                rows * cols,
                mult.len()
            )));
        }
        if let Some(bad) = mult.iter().find(|m| !(m.is_finite() && **m > 0.0)) {
            return Err(Error::Domain(alloc::format!(
                "hazard multipliers must be positive, got {bad}"
            )));
        }
        Ok(HazardGrid { rows, cols, mult })
    }

    /// The built-in 6x6 grid: factor-2 flood plain running diagonally from
    /// upper right to lower left, 1 beside it, 1/2 in the far corners.
    pub fn default_grid() -> HazardGrid {
        HazardGrid {
            rows: 6,
            cols: 6,
            mult: DEFAULT_MULT.iter().flatten().copied().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn cell_count(&self) -> usize {
        self.mult.len()
    }

    pub fn mult(&self, row: usize, col: usize) -> f64 {
        self.mult[row * self.cols + col]
    }

    /// Row-major multiplier slice.
    pub fn multipliers(&self) -> &[f64] {
        &self.mult
    }

    pub fn max_mult(&self) -> f64 {
        self.mult.iter().copied().fold(f64::MIN, f64::max)
    }

    /// Errors unless `city` has the same dimensions as this grid.
    pub fn check_dims(&self, city: &CityGenotype) -> Result<()> {
        if self.dims() == city.dims() {
            Ok(())
        } else {
            Err(Error::dim_mismatch(city.dims(), self.dims()))
        }
    }
}

impl Default for HazardGrid {
    fn default() -> Self {
        HazardGrid::default_grid()
    }
}

impl FromStr for HazardGrid {
    type Err = Error;

    /// Parses a whitespace-separated rectangular matrix. `0.5` and `1/2`
    /// are both accepted for one half.
    fn from_str(text: &str) -> Result<HazardGrid> {
        let mut mult = Vec::new();
        let mut cols = None;
        let mut rows = 0;
        for (line_idx, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let mut count = 0;
            for token in line.split_whitespace() {
                let column = token.as_ptr() as usize - line.as_ptr() as usize + 1;
                mult.push(parse_multiplier(token, line_idx + 1, column)?);
                count += 1;
            }
            if *cols.get_or_insert(count) != count {
                return Err(Error::Parse {
                    line: line_idx + 1,
                    column: 1,
                    message: alloc::format!(
                        "ragged matrix: row has {count} entries, expected {}",
                        cols.unwrap()
                    ),
                });
            }
            rows += 1;
        }
        let cols = cols.ok_or(Error::Parse {
            line: 1,
            column: 1,
            message: "empty hazard grid".to_string(),
        })?;
        HazardGrid::new(rows, cols, mult)
    }
}

fn parse_multiplier(token: &str, line: usize, column: usize) -> Result<f64> {
    let parse = |s: &str| -> Result<f64> {
        s.parse().map_err(|_| Error::Parse {
            line,
            column,
            message: alloc::format!("non-numeric multiplier {token:?}"),
        })
    };
    match token.split_once('/') {
        Some((num, den)) => Ok(parse(num)? / parse(den)?),
        None => parse(token),
    }
}

/// The cells attaining a grid's maximum multiplier, as sorted row-major
/// indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DangerZone {
    cells: Vec<usize>,
}

impl DangerZone {
    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn contains(&self, cell: usize) -> bool {
        self.cells.binary_search(&cell).is_ok()
    }
}

/// Computes the danger zone of a grid.
pub fn danger_zone(grid: &HazardGrid) -> DangerZone {
    let max = grid.max_mult();
    DangerZone {
        cells: grid
            .multipliers()
            .iter()
            .enumerate()
            .filter(|(_, m)| **m == max)
            .map(|(i, _)| i)
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_entries() {
        let g = HazardGrid::default_grid();
        assert_eq!(g.mult(0, 0), 0.5);
        assert_eq!(g.mult(0, 4), 2.0);
        assert_eq!(g.mult(2, 2), 2.0);
        assert_eq!(g.mult(5, 5), 0.5);
    }

    #[test]
    fn default_grid_sum_is_49() {
        let g = HazardGrid::default_grid();
        // halves are exact in binary, so the sum is exact
        assert_eq!(g.multipliers().iter().sum::<f64>(), 49.0);
    }

    #[test]
    fn default_grid_symmetric_under_180_rotation() {
        let g = HazardGrid::default_grid();
        for r in 0..6 {
            for c in 0..6 {
                assert_eq!(g.mult(r, c), g.mult(5 - r, 5 - c), "at ({r},{c})");
            }
        }
    }

    #[test]
    fn danger_zone_default_has_16_cells() {
        let z = danger_zone(&HazardGrid::default_grid());
        assert_eq!(z.len(), 16);
    }

    #[test]
    fn danger_zone_uniform_grid_is_everything() {
        let g = HazardGrid::new(2, 3, vec![1.0; 6]).unwrap();
        assert_eq!(danger_zone(&g).cells(), [0, 1, 2, 3, 4, 5]);
    }

    #[test]
    fn danger_zone_1x1() {
        let g = HazardGrid::new(1, 1, vec![0.5]).unwrap();
        assert_eq!(danger_zone(&g).cells(), [0]);
    }

    #[test]
    fn danger_zone_scale_invariant() {
        let g = HazardGrid::default_grid();
        let scaled = HazardGrid::new(
            6,
            6,
            g.multipliers().iter().map(|m| m * 7.25).collect(),
        )
        .unwrap();
        assert_eq!(danger_zone(&g), danger_zone(&scaled));
    }

    #[test]
    fn parse_default_grid_text() {
        let text = "\
            1/2 1/2 1 1 2 2\n\
            0.5 1 1 2 2 2\n\
            1 1 2 2 2 1\n\
            1 2 2 2 1 1\n\
            2 2 2 1 1 0.5\n\
            2 2 1 1 1/2 1/2\n";
        let g: HazardGrid = text.parse().unwrap();
        assert_eq!(g, HazardGrid::default_grid());
    }

    #[test]
    fn parse_uniform_2x2() {
        let g: HazardGrid = "1 1\n1 1".parse().unwrap();
        assert_eq!(g, HazardGrid::new(2, 2, vec![1.0; 4]).unwrap());
    }

    #[test]
    fn parse_rejects_non_positive() {
        match "1 -2".parse::<HazardGrid>() {
            Err(Error::Domain(_)) => (),
            other => panic!("expected Domain error, got {other:?}"),
        }
        assert!("0".parse::<HazardGrid>().is_err());
    }

    #[test]
    fn parse_rejects_garbage_and_ragged() {
        assert!(matches!("1 x".parse::<HazardGrid>(), Err(Error::Parse { .. })));
        assert!(matches!("1 2\n1".parse::<HazardGrid>(), Err(Error::Parse { .. })));
        assert!(matches!("".parse::<HazardGrid>(), Err(Error::Parse { .. })));
    }
}
