//! Exact ground truth for small instances.
//!
//! [`exhaustive_best`] enumerates every genotype of a (possibly reduced)
//! problem, capped at [`MAX_SEARCH_BITS`]. Because the objective is a sum
//! of independent per-cell terms (interactions are within-cell only),
//! [`separable_best`] computes the exact global optimum of arbitrarily
//! large grids by enumerating each cell independently; agreement between
//! the two routes is checked by [`verify_separability`].

use alloc::vec::Vec;

use bitvec::prelude::*;

use crate::error::{Error, Result};
use crate::ga::GaProblem;
use crate::genome::{CellGenotype, CityGenotype, ComponentId, Level};
use crate::objective::{cell_cost, cell_vulnerability, max_cell_cost, Problem};

/// Cap on flat enumeration: at most 2^26 genotypes.
pub const MAX_SEARCH_BITS: usize = 26;

/// A problem restricted to a subset of components; inactive components are
/// pinned to a fixed level (default 3, which carries zero cost) and
/// excluded from the search space.
#[derive(Debug, Clone)]
pub struct ReducedProblem {
    base: Problem,
    active: Vec<ComponentId>,
    fixed_level: Level,
}

impl ReducedProblem {
    /// Restricts `base` to `active` components (deduplicated, kept in
    /// canonical order).
    pub fn new(base: Problem, active: &[ComponentId], fixed_level: Level) -> Result<ReducedProblem> {
        let active: Vec<ComponentId> = ComponentId::ALL
            .into_iter()
            .filter(|c| active.contains(c))
            .collect();
        if active.is_empty() {
            return Err(Error::Domain(alloc::string::String::from(
                "at least one component must be active",
            )));
        }
        Ok(ReducedProblem {
            base,
            active,
            fixed_level,
        })
    }

    /// The unreduced problem: all seven components active. Its genome
    /// layout coincides with the standard full encoding.
    pub fn full(base: Problem) -> ReducedProblem {
        ReducedProblem {
            base,
            active: ComponentId::ALL.to_vec(),
            fixed_level: Level::MAX,
        }
    }

    pub fn base(&self) -> &Problem {
        &self.base
    }

    pub fn active(&self) -> &[ComponentId] {
        &self.active
    }

    pub fn fixed_level(&self) -> Level {
        self.fixed_level
    }

    /// Search bits per cell: 2 per active component.
    pub fn cell_bits(&self) -> usize {
        2 * self.active.len()
    }

    /// Total search bits: `rows * cols * cell_bits`.
    pub fn search_bits(&self) -> usize {
        self.base.grid.cell_count() * self.cell_bits()
    }

    /// Builds a cell from a packed per-cell code: active components in
    /// canonical order, 2 bits each, most significant first.
    pub fn cell_from_code(&self, code: u32) -> CellGenotype {
        let mut cell = CellGenotype::uniform(self.fixed_level);
        for (j, k) in self.active.iter().enumerate() {
            let shift = 2 * (self.active.len() - 1 - j);
            let level = Level::new(((code >> shift) & 0b11) as u8).expect("2-bit value");
            cell.set_level(*k, level);
        }
        cell
    }

    /// Packed per-cell code of a cell (inverse of [`Self::cell_from_code`]
    /// on active components).
    pub fn cell_to_code(&self, cell: &CellGenotype) -> u32 {
        self.active.iter().fold(0u32, |code, k| {
            code << 2 | cell.level(*k).get() as u32
        })
    }

    /// Decodes a reduced-layout genome (cell-major, active components in
    /// canonical order, MSB first) into a city.
    pub fn decode_genome(&self, bits: &BitSlice<u8, Msb0>) -> Result<CityGenotype> {
        if bits.len() != self.search_bits() {
            return Err(Error::LengthMismatch {
                expected: self.search_bits(),
                got: bits.len(),
            });
        }
        let cells = bits
            .chunks_exact(self.cell_bits())
            .map(|chunk| {
                let code = chunk.iter().by_vals().fold(0u32, |c, b| c << 1 | b as u32);
                self.cell_from_code(code)
            })
            .collect();
        CityGenotype::new(self.base.grid.rows(), self.base.grid.cols(), cells)
    }
}

impl GaProblem for ReducedProblem {
    fn genome_bits(&self) -> usize {
        self.search_bits()
    }

    fn fitness(&self, genome: &BitSlice<u8, Msb0>) -> f64 {
        let city = self
            .decode_genome(genome)
            .expect("genome length matches the reduced layout");
        self.base.evaluate_value(&city).expect("validated problem evaluates")
    }

    fn scheme_name(&self) -> &str {
        self.base.scheme.name()
    }
}

/// An exact optimum with its recomputed fitness.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub city: CityGenotype,
    pub fitness: f64,
}

/// Per-cell-code `(vulnerability, cost / c_max)` lookup, shared by both
/// enumeration routes so their float streams match the objective exactly.
fn cell_tables(p: &ReducedProblem) -> (Vec<f64>, Vec<f64>) {
    let c_max = max_cell_cost(&p.base.cost);
    let n = 1usize << p.cell_bits();
    let mut vuln = Vec::with_capacity(n);
    let mut cost = Vec::with_capacity(n);
    for code in 0..n {
        let cell = p.cell_from_code(code as u32);
        vuln.push(cell_vulnerability(&cell, &p.base.scheme));
        cost.push(if p.base.cost.lambda == 0.0 && c_max == 0.0 {
            0.0
        } else {
            cell_cost(&cell, &p.base.cost) / c_max
        });
    }
    (vuln, cost)
}

/// Enumerates all `2^search_bits` genotypes and returns the minimum;
/// ties break toward the smallest genome read as an unsigned integer
/// (MSB first). Errors with `TooLarge` above [`MAX_SEARCH_BITS`].
pub fn exhaustive_best(p: &ReducedProblem) -> Result<OracleResult> {
    let bits = p.search_bits();
    if bits > MAX_SEARCH_BITS {
        return Err(Error::TooLarge {
            bits,
            cap: MAX_SEARCH_BITS,
        });
    }
    let (vuln, cost) = cell_tables(p);
    let cells = p.base.grid.cell_count();
    let cell_bits = p.cell_bits();
    let mask = (1u64 << cell_bits) - 1;
    let mults = p.base.grid.multipliers();
    let lambda = p.base.cost.lambda;

    let mut best_code = 0u64;
    let mut best_fitness = f64::INFINITY;
    for code in 0..(1u64 << bits) {
        let mut vulnerability_term = 0.0;
        let mut cost_term = 0.0;
        for (i, mult) in mults.iter().enumerate() {
            let cell_code = ((code >> (cell_bits * (cells - 1 - i))) & mask) as usize;
            vulnerability_term += mult * vuln[cell_code];
            cost_term += cost[cell_code];
        }
        let fitness = vulnerability_term + lambda * cost_term;
        if fitness < best_fitness {
            best_fitness = fitness;
            best_code = code;
        }
    }

    let cells: Vec<CellGenotype> = (0..cells)
        .map(|i| {
            let cell_code = ((best_code >> (cell_bits * (cells - 1 - i))) & mask) as u32;
            p.cell_from_code(cell_code)
        })
        .collect();
    let city = CityGenotype::new(p.base.grid.rows(), p.base.grid.cols(), cells)?;
    let fitness = p.base.evaluate_value(&city)?;
    debug_assert_eq!(fitness, best_fitness);
    Ok(OracleResult { city, fitness })
}

/// The optimal genotype of one cell and its objective contribution
/// `mult * vulnerability + lambda * cost / c_max`. Pure per cell, so
/// callers may fan cells out across threads; the result is
/// order-independent.
#[derive(Debug, Clone, PartialEq)]
pub struct CellOptimum {
    pub cell: CellGenotype,
    pub term: f64,
}

/// Exact per-cell optimum by enumeration of `2^cell_bits` genotypes; ties
/// break toward the smallest cell code.
pub fn best_cell(p: &ReducedProblem, cell_index: usize) -> CellOptimum {
    let mult = p.base.grid.multipliers()[cell_index];
    let c_max = max_cell_cost(&p.base.cost);
    let lambda = p.base.cost.lambda;
    let mut best_code = 0u32;
    let mut best_term = f64::INFINITY;
    for code in 0..(1u32 << p.cell_bits()) {
        let cell = p.cell_from_code(code);
        let cost = if lambda == 0.0 && c_max == 0.0 {
            0.0
        } else {
            cell_cost(&cell, &p.base.cost) / c_max
        };
        let term = mult * cell_vulnerability(&cell, &p.base.scheme) + lambda * cost;
        if term < best_term {
            best_term = term;
            best_code = code;
        }
    }
    CellOptimum {
        cell: p.cell_from_code(best_code),
        term: best_term,
    }
}

/// Exact global optimum via per-cell enumeration, valid because the
/// objective is cell-separable. Works at any grid size; fitness is
/// recomputed through the standard objective path.
pub fn separable_best(p: &ReducedProblem) -> Result<OracleResult> {
    let cells: Vec<CellGenotype> = (0..p.base.grid.cell_count())
        .map(|i| best_cell(p, i).cell)
        .collect();
    let city = CityGenotype::new(p.base.grid.rows(), p.base.grid.cols(), cells)?;
    let fitness = p.base.evaluate_value(&city)?;
    Ok(OracleResult { city, fitness })
}

/// Agreement report between the two exact routes.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparabilityReport {
    pub flat: OracleResult,
    pub separable: OracleResult,
    /// Exact fitness equality of the two routes.
    pub agree: bool,
}

/// Runs both [`exhaustive_best`] and [`separable_best`] and reports
/// whether they found the same optimum fitness. Disagreement signals an
/// objective implementation bug.
pub fn verify_separability(p: &ReducedProblem) -> Result<SeparabilityReport> {
    let flat = exhaustive_best(p)?;
    let separable = separable_best(p)?;
    let agree = flat.fitness == separable.fitness;
    Ok(SeparabilityReport {
        flat,
        separable,
        agree,
    })
}
