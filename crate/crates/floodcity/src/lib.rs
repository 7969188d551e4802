//! Flood-vulnerability modelling and optimization for a gridded city.
//!
//! A city is an `R x C` grid of cells, each described by seven 2-bit
//! component levels (urbanization, literacy, mortality, poverty, TV/radio
//! penetration, non-structural and structural flood measures). Per-cell
//! vulnerability is a weighted sum of the levels, scaled by a hazard
//! multiplier; improving a cell below the worst level carries a penalty
//! cost. The crate provides:
//!
//! - [`genome`]: the chromosome encoding (packed bitstrings, text grids)
//! - [`hazard`]: the hazard-multiplier grid and its danger zone
//! - [`weights`]: weight schemes and their derivation from rating tables
//! - [`objective`]: the combined vulnerability + cost minimization target
//! - [`ga`]: a seeded, deterministic genetic-algorithm engine
//! - [`oracle`]: exhaustive and per-cell exact search for verification
//! - [`analysis`]: danger-zone statistics and two-scheme comparisons
//!
//! The crate is `no_std` (with `alloc`); all types are plain values and all
//! operations are pure, so evaluation can be shared across threads freely.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod analysis;
pub mod error;
pub mod ga;
pub mod genome;
pub mod hazard;
pub mod objective;
pub mod oracle;
pub mod weights;

pub use error::Error;
