//! Chromosome encoding: per-cell component levels, the packed bitstring
//! form searched by the GA, and the text grid format used in reports.
//!
//! Layout is cell-major, component-minor, most-significant bit first: cell
//! `(r, c)` component `k` occupies bits `[(r*cols + c)*14 + 2k, +2)`, so
//! level 2 packs as `10`.

use alloc::string::String;
use alloc::vec::Vec;

use bitvec::prelude::*;

use crate::error::{Error, Result};

/// Bits per component level.
pub const BITS_PER_LEVEL: usize = 2;
/// Bits per cell (7 components x 2 bits).
pub const BITS_PER_CELL: usize = ComponentId::COUNT * BITS_PER_LEVEL;

/// The seven vulnerability components, in the fixed order used by every
/// module (weights, cost curves, reports).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum ComponentId {
    Urbanization,
    Literacy,
    Mortality,
    Poverty,
    TvRadio,
    NonStructural,
    Structural,
}

impl ComponentId {
    /// Number of components.
    pub const COUNT: usize = 7;

    /// All components in canonical order.
    pub const ALL: [ComponentId; 7] = [
        ComponentId::Urbanization,
        ComponentId::Literacy,
        ComponentId::Mortality,
        ComponentId::Poverty,
        ComponentId::TvRadio,
        ComponentId::NonStructural,
        ComponentId::Structural,
    ];

    /// Ordinal index, 0..7.
    pub const fn index(self) -> usize {
        self as usize
    }

    /// Snake-case name used in file names and JSON keys.
    pub const fn name(self) -> &'static str {
        match self {
            ComponentId::Urbanization => "urbanization",
            ComponentId::Literacy => "literacy",
            ComponentId::Mortality => "mortality",
            ComponentId::Poverty => "poverty",
            ComponentId::TvRadio => "tv_radio",
            ComponentId::NonStructural => "non_structural",
            ComponentId::Structural => "structural",
        }
    }

    /// Parses a snake-case component name.
    pub fn from_name(name: &str) -> Option<ComponentId> {
        ComponentId::ALL.into_iter().find(|c| c.name() == name)
    }
}

/// A 2-bit component level. Higher means more vulnerable for every
/// component (3 = highly urbanized / most illiterate / no measures, ...).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct Level(u8);

impl Level {
    pub const MIN: Level = Level(0);
    pub const MAX: Level = Level(3);

    /// Builds a level, rejecting values above 3.
    pub fn new(value: u8) -> Result<Level> {
        if value <= 3 {
            Ok(Level(value))
        } else {
            Err(Error::Domain(alloc::format!(
                "level {value} out of range 0..=3"
            )))
        }
    }

    pub const fn get(self) -> u8 {
        self.0
    }
}

/// The seven component levels of one grid cell, indexed by [`ComponentId`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct CellGenotype {
    levels: [Level; ComponentId::COUNT],
}

impl CellGenotype {
    pub fn new(levels: [Level; ComponentId::COUNT]) -> CellGenotype {
        CellGenotype { levels }
    }

    /// A cell with every component at the same level.
    pub fn uniform(level: Level) -> CellGenotype {
        CellGenotype {
            levels: [level; ComponentId::COUNT],
        }
    }

    pub fn level(&self, component: ComponentId) -> Level {
        self.levels[component.index()]
    }

    pub fn set_level(&mut self, component: ComponentId, level: Level) {
        self.levels[component.index()] = level;
    }

    pub fn levels(&self) -> &[Level; ComponentId::COUNT] {
        &self.levels
    }
}

/// An `rows x cols` grid of cells; the object the GA searches over.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CityGenotype {
    rows: usize,
    cols: usize,
    cells: Vec<CellGenotype>,
}

impl CityGenotype {
    /// Builds a city from row-major cells. `cells.len()` must equal
    /// `rows * cols` and both dimensions must be at least 1.
    pub fn new(rows: usize, cols: usize, cells: Vec<CellGenotype>) -> Result<CityGenotype> {
        if rows == 0 || cols == 0 {
            return Err(Error::Domain(alloc::format!(
                "city dimensions must be at least 1x1, got {rows}x{cols}"
            )));
        }
        if cells.len() != rows * cols {
            return Err(Error::Domain(alloc::format!(
                "expected {} cells for a {rows}x{cols} city, got {}",
                rows * cols,
                cells.len()
            )));
        }
        Ok(CityGenotype { rows, cols, cells })
    }

    /// A city with every component of every cell at the same level.
    pub fn uniform(rows: usize, cols: usize, level: Level) -> Result<CityGenotype> {
        CityGenotype::new(rows, cols, alloc::vec![CellGenotype::uniform(level); rows * cols])
    }

    /// Assembles a city from seven row-major component grids in
    /// [`ComponentId`] order, as produced by [`parse_component_grid`].
    pub fn from_component_grids(
        rows: usize,
        cols: usize,
        grids: &[Vec<Level>; ComponentId::COUNT],
    ) -> Result<CityGenotype> {
        for grid in grids {
            if grid.len() != rows * cols {
                return Err(Error::Domain(alloc::format!(
                    "component grid has {} entries, expected {}",
                    grid.len(),
                    rows * cols
                )));
            }
        }
        let cells = (0..rows * cols)
            .map(|i| {
                let mut cell = CellGenotype::default();
                for k in ComponentId::ALL {
                    cell.set_level(k, grids[k.index()][i]);
                }
                cell
            })
            .collect();
        CityGenotype::new(rows, cols, cells)
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
        self.cells.len()
    }

    pub fn cell(&self, row: usize, col: usize) -> &CellGenotype {
        &self.cells[row * self.cols + col]
    }

    pub fn cell_mut(&mut self, row: usize, col: usize) -> &mut CellGenotype {
        &mut self.cells[row * self.cols + col]
    }

    /// Row-major cell slice.
    pub fn cells(&self) -> &[CellGenotype] {
        &self.cells
    }

    /// Row-major levels of one component.
    pub fn component_grid(&self, component: ComponentId) -> Vec<Level> {
        self.cells.iter().map(|c| c.level(component)).collect()
    }
}

/// The packed bitstring form of a [`CityGenotype`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PackedGenome {
    rows: usize,
    cols: usize,
    bits: BitVec<u8, Msb0>,
}

impl PackedGenome {
    /// Wraps raw bits, checking that the length matches the dimensions.
    pub fn from_bits(rows: usize, cols: usize, bits: BitVec<u8, Msb0>) -> Result<PackedGenome> {
        let expected = rows * cols * BITS_PER_CELL;
        if bits.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                got: bits.len(),
            });
        }
        Ok(PackedGenome { rows, cols, bits })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn bits(&self) -> &BitSlice<u8, Msb0> {
        &self.bits
    }

    pub fn into_bits(self) -> BitVec<u8, Msb0> {
        self.bits
    }
}

/// Packs a city into its bitstring form.
pub fn encode(city: &CityGenotype) -> PackedGenome {
    let mut bits = BitVec::with_capacity(city.cell_count() * BITS_PER_CELL);
    for cell in city.cells() {
        for k in ComponentId::ALL {
            let v = cell.level(k).get();
            bits.push(v & 0b10 != 0);
            bits.push(v & 0b01 != 0);
        }
    }
    PackedGenome {
        rows: city.rows,
        cols: city.cols,
        bits,
    }
}

/// Unpacks a bitstring back into a city; exact inverse of [`encode`].
pub fn decode(genome: &PackedGenome) -> CityGenotype {
    let city = decode_bits(genome.rows, genome.cols, genome.bits());
    debug_assert!(city.is_ok(), "PackedGenome length is validated on construction");
    city.unwrap_or_else(|_| unreachable!())
}

/// Decodes raw bits with the standard full layout.
pub fn decode_bits(
    rows: usize,
    cols: usize,
    bits: &BitSlice<u8, Msb0>,
) -> Result<CityGenotype> {
    let expected = rows * cols * BITS_PER_CELL;
    if bits.len() != expected {
        return Err(Error::LengthMismatch {
            expected,
            got: bits.len(),
        });
    }
    let cells = bits
        .chunks_exact(BITS_PER_CELL)
        .map(|chunk| {
            let mut cell = CellGenotype::default();
            for k in ComponentId::ALL {
                let hi = chunk[k.index() * BITS_PER_LEVEL] as u8;
                let lo = chunk[k.index() * BITS_PER_LEVEL + 1] as u8;
                cell.set_level(k, Level(hi << 1 | lo));
            }
            cell
        })
        .collect();
    CityGenotype::new(rows, cols, cells)
}

/// Parses a text grid of 2-bit binary tokens (`00`, `01`, `10`, `11`),
/// whitespace separated, one grid row per line. Returns row-major levels.
pub fn parse_component_grid(text: &str, rows: usize, cols: usize) -> Result<Vec<Level>> {
    let mut levels = Vec::with_capacity(rows * cols);
    let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
    for row in 0..rows {
        let (line_idx, line) = lines.next().ok_or(Error::Parse {
            line: rows,
            column: 1,
            message: alloc::format!("expected {rows} grid rows, got {row}"),
        })?;
        let mut count = 0;
        for token in line.split_whitespace() {
            let column = token.as_ptr() as usize - line.as_ptr() as usize + 1;
            if count == cols {
                return Err(Error::Parse {
                    line: line_idx + 1,
                    column,
                    message: alloc::format!("expected {cols} tokens per row"),
                });
            }
            levels.push(parse_token(token, line_idx + 1, column)?);
            count += 1;
        }
        if count != cols {
            return Err(Error::Parse {
                line: line_idx + 1,
                column: line.len() + 1,
                message: alloc::format!("expected {cols} tokens per row, got {count}"),
            });
        }
    }
    if let Some((line_idx, _)) = lines.next() {
        return Err(Error::Parse {
            line: line_idx + 1,
            column: 1,
            message: alloc::format!("expected {rows} grid rows"),
        });
    }
    Ok(levels)
}

fn parse_token(token: &str, line: usize, column: usize) -> Result<Level> {
    let bits = token.as_bytes();
    if bits.len() == 2 && bits.iter().all(|b| *b == b'0' || *b == b'1') {
        Ok(Level((bits[0] - b'0') << 1 | (bits[1] - b'0')))
    } else {
        Err(Error::Parse {
            line,
            column,
            message: alloc::format!("malformed token {token:?}, expected two binary digits"),
        })
    }
}

/// Renders one component of a city in the text grid format accepted by
/// [`parse_component_grid`]: 2-bit tokens, space separated, one row per
/// line, newline terminated.
pub fn render_component_grid(city: &CityGenotype, component: ComponentId) -> String {
    let mut out = String::with_capacity(city.rows * (city.cols * 3 + 1));
    for r in 0..city.rows {
        for c in 0..city.cols {
            if c > 0 {
                out.push(' ');
            }
            let v = city.cell(r, c).level(component).get();
            out.push(if v & 0b10 != 0 { '1' } else { '0' });
            out.push(if v & 0b01 != 0 { '1' } else { '0' });
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn city_1x1(levels: [u8; 7]) -> CityGenotype {
        let levels = levels.map(|v| Level::new(v).unwrap());
        CityGenotype::new(1, 1, vec![CellGenotype::new(levels)]).unwrap()
    }

    #[test]
    fn component_order_is_fixed() {
        let names: Vec<_> = ComponentId::ALL.iter().map(|c| c.name()).collect();
        assert_eq!(
            names,
            [
                "urbanization",
                "literacy",
                "mortality",
                "poverty",
                "tv_radio",
                "non_structural",
                "structural"
            ]
        );
        for (i, c) in ComponentId::ALL.into_iter().enumerate() {
            assert_eq!(c.index(), i);
            assert_eq!(ComponentId::from_name(c.name()), Some(c));
        }
    }

    #[test]
    fn level_range_checked() {
        assert!(Level::new(3).is_ok());
        assert!(Level::new(4).is_err());
    }

    #[test]
    fn encode_all_zero_city() {
        let city = CityGenotype::uniform(6, 6, Level::MIN).unwrap();
        let g = encode(&city);
        assert_eq!(g.bits().len(), 504);
        assert!(g.bits().not_any());
    }

    #[test]
    fn encode_all_ones_cell() {
        let g = encode(&city_1x1([3; 7]));
        assert_eq!(g.bits().len(), 14);
        assert!(g.bits().all());
    }

    #[test]
    fn encode_layout_msb_first() {
        // level 2 in the first component packs as "10", rest zero
        let g = encode(&city_1x1([2, 0, 0, 0, 0, 0, 0]));
        let expected = [
            true, false, false, false, false, false, false, false, false, false, false, false,
            false, false,
        ];
        assert_eq!(g.bits().iter().by_vals().collect::<Vec<_>>(), expected);
    }

    #[test]
    fn decode_all_zero() {
        let bits = BitVec::repeat(false, 504);
        let g = PackedGenome::from_bits(6, 6, bits).unwrap();
        assert_eq!(decode(&g), CityGenotype::uniform(6, 6, Level::MIN).unwrap());
    }

    #[test]
    fn from_bits_rejects_wrong_length() {
        let bits = BitVec::repeat(false, 20);
        match PackedGenome::from_bits(1, 1, bits) {
            Err(Error::LengthMismatch { expected: 14, got: 20 }) => (),
            other => panic!("expected LengthMismatch, got {other:?}"),
        }
    }

    #[test]
    fn parse_grid_row() {
        let levels = parse_component_grid("00 10 01 10 00 00", 1, 6).unwrap();
        let got: Vec<u8> = levels.iter().map(|l| l.get()).collect();
        assert_eq!(got, [0, 2, 1, 2, 0, 0]);
    }

    #[test]
    fn parse_grid_all_threes() {
        let levels = parse_component_grid("11 11 11 11 11 11", 1, 6).unwrap();
        assert!(levels.iter().all(|l| l.get() == 3));
    }

    #[test]
    fn parse_rejects_bad_token() {
        let err = parse_component_grid("00 12", 1, 2).unwrap_err();
        match err {
            Error::Parse { line: 1, column: 4, .. } => (),
            other => panic!("expected Parse error at 1:4, got {other:?}"),
        }
    }

    #[test]
    fn parse_rejects_ragged_rows() {
        assert!(parse_component_grid("00 01\n00", 2, 2).is_err());
        assert!(parse_component_grid("00 01 11", 1, 2).is_err());
        assert!(parse_component_grid("00\n01", 1, 1).is_err());
    }

    #[test]
    fn render_all_zero() {
        let city = CityGenotype::uniform(6, 6, Level::MIN).unwrap();
        let text = render_component_grid(&city, ComponentId::Poverty);
        assert_eq!(text, "00 00 00 00 00 00\n".repeat(6));
    }

    #[test]
    fn render_1x1_level3() {
        let city = CityGenotype::uniform(1, 1, Level::MAX).unwrap();
        assert_eq!(render_component_grid(&city, ComponentId::Literacy), "11\n");
    }

    #[test]
    fn component_grids_round_trip() {
        let city = city_1x1([0, 1, 2, 3, 0, 1, 2]);
        let grids: [Vec<Level>; 7] =
            core::array::from_fn(|i| city.component_grid(ComponentId::ALL[i]));
        let rebuilt = CityGenotype::from_component_grids(1, 1, &grids).unwrap();
        assert_eq!(rebuilt, city);
    }
}
