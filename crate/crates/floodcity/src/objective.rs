//! The minimization target: hazard-scaled weighted-sum vulnerability plus
//! a normalized improvement-cost penalty.
//!
//! Cost is driven by the three's complement of each level (`3 - level`,
//! the degree of improvement a cell has made): expensive activities grow
//! exponentially with the complement, mortality reduction quadratically,
//! the rest linearly, plus product interactions between poverty and
//! mortality and between literacy and TV/radio penetration. Per-cell cost
//! is normalized by the all-zero-cell maximum so the vulnerability term
//! (per-cell range [0, 3]) and the weighted cost term (per-cell range
//! [0, lambda]) stay on comparable scales.

use alloc::string::ToString;
use alloc::vec::Vec;

use bitvec::prelude::*;

use crate::error::{Error, Result};
use crate::genome::{self, CellGenotype, CityGenotype, ComponentId, Level};
use crate::hazard::HazardGrid;
use crate::weights::WeightScheme;

/// Penalty curve applied to a component's improvement complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum CurveKind {
    /// `base^c - 1`: zero at no improvement, steep for full improvement.
    Exponential,
    /// `slope * c`.
    Linear,
    /// `coeff * c^2`.
    Quadratic,
}

/// Cost-model parameters: per-component curve kinds, curve coefficients,
/// the interaction coefficient, and the vulnerability/cost trade-off.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct CostParams {
    /// Curve per component, in [`ComponentId`] order.
    pub curves: [CurveKind; ComponentId::COUNT],
    /// Base of the exponential curve; must exceed 1.
    pub exp_base: f64,
    /// Slope of linear curves.
    pub linear_slope: f64,
    /// Coefficient of quadratic curves.
    pub quad_coeff: f64,
    /// Coefficient of the poverty-mortality and literacy-TV/radio
    /// interaction terms.
    pub interaction_coeff: f64,
    /// Weight of the normalized cost term against the vulnerability term.
    pub lambda: f64,
}

impl Default for CostParams {
    /// Exponential for urbanization, poverty and structural measures,
    /// quadratic for mortality, linear for the rest; unit coefficients,
    /// interaction 0.25, lambda 3.
    fn default() -> Self {
        let mut curves = [CurveKind::Linear; ComponentId::COUNT];
        for k in [
            ComponentId::Urbanization,
            ComponentId::Poverty,
            ComponentId::Structural,
        ] {
            curves[k.index()] = CurveKind::Exponential;
        }
        curves[ComponentId::Mortality.index()] = CurveKind::Quadratic;
        CostParams {
            curves,
            exp_base: 2.0,
            linear_slope: 1.0,
            quad_coeff: 1.0,
            interaction_coeff: 0.25,
            lambda: 3.0,
        }
    }
}

impl CostParams {
    /// Checks coefficient domains: `exp_base > 1`, everything else finite
    /// and non-negative.
    pub fn validate(&self) -> Result<()> {
        if !(self.exp_base > 1.0 && self.exp_base.is_finite()) {
            return Err(Error::Domain("exp_base must be finite and > 1".to_string()));
        }
        for (name, v) in [
            ("linear_slope", self.linear_slope),
            ("quad_coeff", self.quad_coeff),
            ("interaction_coeff", self.interaction_coeff),
            ("lambda", self.lambda),
        ] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::Domain(alloc::format!(
                    "{name} must be finite and non-negative, got {v}"
                )));
            }
        }
        Ok(())
    }
}

/// The degree of improvement a level represents: `3 - level`.
pub fn complement(level: Level) -> u8 {
    3 - level.get()
}

/// Weighted-sum vulnerability of one cell; in [0, 3] for a normalized
/// scheme.
pub fn cell_vulnerability(cell: &CellGenotype, scheme: &WeightScheme) -> f64 {
    ComponentId::ALL
        .iter()
        .fold(0.0, |acc, k| acc + scheme.weight(*k) * cell.level(*k).get() as f64)
}

/// Hazard-scaled vulnerability summed over all cells.
pub fn city_vulnerability(
    city: &CityGenotype,
    grid: &HazardGrid,
    scheme: &WeightScheme,
) -> Result<f64> {
    grid.check_dims(city)?;
    Ok(city
        .cells()
        .iter()
        .zip(grid.multipliers())
        .fold(0.0, |acc, (cell, mult)| {
            acc + mult * cell_vulnerability(cell, scheme)
        }))
}

fn curve_value(kind: CurveKind, c: u8, p: &CostParams) -> f64 {
    match kind {
        // integer exponent 0..=3, computed by repeated multiplication
        CurveKind::Exponential => (0..c).fold(1.0, |acc, _| acc * p.exp_base) - 1.0,
        CurveKind::Linear => p.linear_slope * c as f64,
        CurveKind::Quadratic => p.quad_coeff * (c as u32 * c as u32) as f64,
    }
}

/// Improvement cost of one cell: per-component curve values of the
/// complements plus the two interaction terms. Monotone non-increasing in
/// every level; zero when every level is 3.
pub fn cell_cost(cell: &CellGenotype, params: &CostParams) -> f64 {
    let base = ComponentId::ALL.iter().fold(0.0, |acc, k| {
        acc + curve_value(params.curves[k.index()], complement(cell.level(*k)), params)
    });
    let c_poverty = complement(cell.level(ComponentId::Poverty)) as f64;
    let c_mortality = complement(cell.level(ComponentId::Mortality)) as f64;
    let c_literacy = complement(cell.level(ComponentId::Literacy)) as f64;
    let c_tv = complement(cell.level(ComponentId::TvRadio)) as f64;
    let interactions =
        params.interaction_coeff * (c_poverty * c_mortality + c_literacy * c_tv);
    base + interactions
}

/// Cost of the fully unimproved cell (all levels 0); the per-cell maximum,
/// used to normalize the cost term.
pub fn max_cell_cost(params: &CostParams) -> f64 {
    cell_cost(&CellGenotype::uniform(Level::MIN), params)
}

/// Both objective terms and their per-cell contributions. `total` is the
/// minimization target: `vulnerability_term + lambda * cost_term`.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ObjectiveBreakdown {
    pub vulnerability_term: f64,
    pub cost_term: f64,
    pub total: f64,
    pub per_cell_vulnerability: Vec<f64>,
    pub per_cell_cost: Vec<f64>,
}

/// Evaluates the full objective for a city.
pub fn total_fitness(
    city: &CityGenotype,
    grid: &HazardGrid,
    scheme: &WeightScheme,
    params: &CostParams,
) -> Result<ObjectiveBreakdown> {
    grid.check_dims(city)?;
    let c_max = max_cell_cost(params);
    if c_max == 0.0 && params.lambda > 0.0 {
        return Err(Error::Domain(
            "maximum cell cost is zero; cost term undefined for nonzero lambda".to_string(),
        ));
    }
    let per_cell_vulnerability: Vec<f64> = city
        .cells()
        .iter()
        .zip(grid.multipliers())
        .map(|(cell, mult)| mult * cell_vulnerability(cell, scheme))
        .collect();
    let per_cell_cost: Vec<f64> = if params.lambda == 0.0 && c_max == 0.0 {
        alloc::vec![0.0; city.cell_count()]
    } else {
        city.cells().iter().map(|c| cell_cost(c, params) / c_max).collect()
    };
    let vulnerability_term = per_cell_vulnerability.iter().fold(0.0, |a, v| a + v);
    let cost_term = per_cell_cost.iter().fold(0.0, |a, v| a + v);
    Ok(ObjectiveBreakdown {
        vulnerability_term,
        cost_term,
        total: vulnerability_term + params.lambda * cost_term,
        per_cell_vulnerability,
        per_cell_cost,
    })
}

/// A fully specified optimization problem over cities matching the grid's
/// dimensions.
#[derive(Debug, Clone)]
pub struct Problem {
    pub grid: HazardGrid,
    pub scheme: WeightScheme,
    pub cost: CostParams,
}

impl Problem {
    pub fn new(grid: HazardGrid, scheme: WeightScheme, cost: CostParams) -> Result<Problem> {
        cost.validate()?;
        if max_cell_cost(&cost) == 0.0 && cost.lambda > 0.0 {
            return Err(Error::Domain(
                "maximum cell cost is zero; cost term undefined for nonzero lambda".to_string(),
            ));
        }
        Ok(Problem { grid, scheme, cost })
    }

    pub fn dims(&self) -> (usize, usize) {
        self.grid.dims()
    }

    /// Genome length of the full 14-bits-per-cell encoding.
    pub fn genome_bits(&self) -> usize {
        self.grid.cell_count() * genome::BITS_PER_CELL
    }

    pub fn evaluate(&self, city: &CityGenotype) -> Result<ObjectiveBreakdown> {
        total_fitness(city, &self.grid, &self.scheme, &self.cost)
    }

    /// The objective total without the per-cell breakdown; same accumulation
    /// order as [`total_fitness`], so the value is bit-identical.
    pub fn evaluate_value(&self, city: &CityGenotype) -> Result<f64> {
        self.grid.check_dims(city)?;
        let c_max = max_cell_cost(&self.cost);
        let mut vulnerability_term = 0.0;
        let mut cost_term = 0.0;
        for (cell, mult) in city.cells().iter().zip(self.grid.multipliers()) {
            vulnerability_term += mult * cell_vulnerability(cell, &self.scheme);
            if !(self.cost.lambda == 0.0 && c_max == 0.0) {
                cost_term += cell_cost(cell, &self.cost) / c_max;
            }
        }
        Ok(vulnerability_term + self.cost.lambda * cost_term)
    }

    /// Decodes a full-layout genome into a city.
    pub fn decode_genome(&self, bits: &BitSlice<u8, Msb0>) -> Result<CityGenotype> {
        genome::decode_bits(self.grid.rows(), self.grid.cols(), bits)
    }
}
