//! Weight schemes for the seven vulnerability components.
//!
//! A scheme is a normalized prioritization (weights summing to 1). Two are
//! built in: one derived from a hazard-aspect rating table and one from an
//! Einarsson-Rausand style analysis. Custom schemes can be derived from any
//! rating table via [`derive_totals`] and [`WeightScheme::from_totals`].

use alloc::string::String;
use alloc::string::ToString;

use crate::error::{Error, Result};
use crate::genome::ComponentId;

/// Number of retained hazard aspects (table columns).
pub const ASPECT_COUNT: usize = 6;

/// The six retained hazard aspects, in table-column order: capacity for
/// physical damage, percent of population affected, potential casualties,
/// environmental impact, negative economic effects, public awareness.
pub const ASPECT_NAMES: [&str; ASPECT_COUNT] = [
    "physical_damage",
    "population_affected",
    "casualties",
    "environmental_impact",
    "economic_effects",
    "public_awareness",
];

/// Importance fractions for the six retained aspects.
#[derive(Debug, Clone, PartialEq)]
pub struct AspectWeights {
    w: [f64; ASPECT_COUNT],
}

impl AspectWeights {
    /// Builds aspect weights; each must be finite and non-negative and at
    /// least one must be positive.
    pub fn new(w: [f64; ASPECT_COUNT]) -> Result<AspectWeights> {
        if w.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::Domain(
                "aspect weights must be finite and non-negative".to_string(),
            ));
        }
        if w.iter().all(|x| *x == 0.0) {
            return Err(Error::Domain("aspect weights are all zero".to_string()));
        }
        Ok(AspectWeights { w })
    }

    pub fn get(&self) -> &[f64; ASPECT_COUNT] {
        &self.w
    }
}

impl Default for AspectWeights {
    /// 20% for each of the four critical aspects, 10% for the two
    /// secondary ones.
    fn default() -> Self {
        AspectWeights {
            w: [0.20, 0.20, 0.20, 0.20, 0.10, 0.10],
        }
    }
}

/// A 7x6 matrix of aspect ratings, rows in [`ComponentId`] order, each
/// rating in 1..=10.
#[derive(Debug, Clone, PartialEq)]
pub struct RatingTable {
    ratings: [[f64; ASPECT_COUNT]; ComponentId::COUNT],
}

impl RatingTable {
    pub fn new(ratings: [[f64; ASPECT_COUNT]; ComponentId::COUNT]) -> Result<RatingTable> {
        for (i, row) in ratings.iter().enumerate() {
            for r in row {
                if !(*r >= 1.0 && *r <= 10.0) {
                    return Err(Error::Domain(alloc::format!(
                        "rating {r} for {} out of range 1..=10",
                        ComponentId::ALL[i].name()
                    )));
                }
            }
        }
        Ok(RatingTable { ratings })
    }

    pub fn row(&self, component: ComponentId) -> &[f64; ASPECT_COUNT] {
        &self.ratings[component.index()]
    }
}

/// Weighted row totals: `total_i = sum_j ratings[i][j] * aspect_w[j]`.
pub fn derive_totals(table: &RatingTable, aspects: &AspectWeights) -> [f64; ComponentId::COUNT] {
    core::array::from_fn(|i| {
        table.ratings[i]
            .iter()
            .zip(aspects.w)
            .fold(0.0, |acc, (r, w)| acc + r * w)
    })
}

/// A named, normalized prioritization of the seven components.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct WeightScheme {
    name: String,
    weights: [f64; ComponentId::COUNT],
}

impl WeightScheme {
    /// Builds a scheme from raw weights, normalizing them to sum 1.
    /// Weights must be finite and non-negative, with at least one positive.
    pub fn new(name: impl Into<String>, weights: [f64; ComponentId::COUNT]) -> Result<WeightScheme> {
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::Domain(
                "scheme weights must be finite and non-negative".to_string(),
            ));
        }
        let sum: f64 = weights.iter().fold(0.0, |a, w| a + w);
        if sum <= 0.0 {
            return Err(Error::Domain("scheme weights are all zero".to_string()));
        }
        Ok(WeightScheme {
            name: name.into(),
            weights: weights.map(|w| w / sum),
        })
    }

    /// Builds a scheme from unnormalized component totals (e.g. rating-table
    /// row totals); alias of [`WeightScheme::new`] kept for clarity at call
    /// sites that pass derivation output.
    pub fn from_totals(
        name: impl Into<String>,
        totals: [f64; ComponentId::COUNT],
    ) -> Result<WeightScheme> {
        WeightScheme::new(name, totals)
    }

    /// The built-in scheme derived from the hazard-aspect rating table:
    /// totals (6.3, 4.9, 6.1, 5.0, 4.7, 3.8, 3.0) normalized by 33.8.
    pub fn aspect() -> WeightScheme {
        WeightScheme::from_totals("aspect", ASPECT_SCHEME_TOTALS)
            .expect("builtin scheme totals are valid")
    }

    /// The built-in Einarsson-Rausand style scheme: totals
    /// (3, 3, 3, 5, 5, 5, 2) normalized by 26.
    pub fn einarsson() -> WeightScheme {
        WeightScheme::from_totals("einarsson", [3.0, 3.0, 3.0, 5.0, 5.0, 5.0, 2.0])
            .expect("builtin scheme totals are valid")
    }

    /// Looks up a built-in scheme by name.
    pub fn builtin(name: &str) -> Option<WeightScheme> {
        match name {
            "aspect" => Some(WeightScheme::aspect()),
            "einarsson" => Some(WeightScheme::einarsson()),
            _ => None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn weight(&self, component: ComponentId) -> f64 {
        self.weights[component.index()]
    }

    pub fn weights(&self) -> &[f64; ComponentId::COUNT] {
        &self.weights
    }
}

/// Published totals behind the built-in aspect scheme, in [`ComponentId`]
/// order. The urbanization entry does not reproduce from
/// [`reference_rating_table`] (see [`derive_totals`]); the published value
/// is treated as canonical and the mismatch is surfaced by the
/// `derive-weights` command rather than reconciled.
pub const ASPECT_SCHEME_TOTALS: [f64; ComponentId::COUNT] = [6.3, 4.9, 6.1, 5.0, 4.7, 3.8, 3.0];

/// The rating table the aspect scheme totals were published from, rows in
/// [`ComponentId`] order.
pub fn reference_rating_table() -> RatingTable {
    RatingTable::new([
        [9.0, 7.0, 5.0, 4.0, 4.0, 5.0],  // urbanization
        [5.0, 4.0, 3.0, 6.0, 4.0, 9.0],  // literacy
        [4.0, 9.0, 7.0, 5.0, 6.0, 5.0],  // mortality
        [5.0, 6.0, 6.0, 4.0, 3.0, 5.0],  // poverty
        [5.0, 4.0, 3.0, 5.0, 3.0, 10.0], // tv_radio
        [5.0, 4.0, 3.0, 3.0, 2.0, 6.0],  // non_structural
        [2.0, 3.0, 2.0, 4.0, 3.0, 5.0],  // structural
    ])
    .expect("reference ratings are in range")
}
