//! Seeded, deterministic genetic-algorithm engine over packed bitstring
//! genomes, minimizing a problem's fitness.
//!
//! The whole run is a pure function of the problem and the config
//! (including `rng_seed`). Randomness comes from ChaCha12 through a small
//! fixed draw layer owned by this module, so identical seeds replay
//! identically regardless of upstream RNG-crate changes. Fitness
//! evaluation is pure and could be reordered or parallelized freely; the
//! engine consumes the fitness vector in fixed population order, so the
//! observable result is single-threaded.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use bitvec::prelude::*;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::objective::Problem;

/// Identifier of the generator and draw layer recorded in [`RunResult`].
pub const RNG_ALGO: &str = "chacha12";

/// A raw GA genome: a packed bit sequence.
pub type Genome = BitVec<u8, Msb0>;

/// Anything the engine can optimize: a fixed genome length and a pure
/// fitness function (lower is better).
pub trait GaProblem {
    fn genome_bits(&self) -> usize;
    fn fitness(&self, genome: &BitSlice<u8, Msb0>) -> f64;
    /// Weight-scheme label echoed into [`RunResult`].
    fn scheme_name(&self) -> &str;
}

impl GaProblem for Problem {
    fn genome_bits(&self) -> usize {
        Problem::genome_bits(self)
    }

    fn fitness(&self, genome: &BitSlice<u8, Msb0>) -> f64 {
        let city = self
            .decode_genome(genome)
            .expect("genome length matches problem dimensions");
        self.evaluate(&city).expect("validated problem evaluates").total
    }

    fn scheme_name(&self) -> &str {
        self.scheme.name()
    }
}

/// Crossover operator.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum CrossoverKind {
    /// One cut position uniform in `[1, L-1]`; children swap tails.
    #[default]
    SinglePoint,
    /// Each bit taken from either parent with probability 1/2.
    Uniform,
}

/// Engine parameters. All operators and defaults are conventional GA
/// settings; everything is configurable.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(default, deny_unknown_fields))]
pub struct GaConfig {
    pub population_size: usize,
    /// Number of evaluated generations (the initial random population is
    /// generation 0).
    pub generations: usize,
    pub crossover_rate: f64,
    /// Per-bit flip probability; `None` means `1 / genome_bits`.
    pub mutation_rate: Option<f64>,
    pub tournament_size: usize,
    pub elitism_count: usize,
    pub crossover_kind: CrossoverKind,
    pub rng_seed: u64,
    /// Stop early after this many generations without improvement of the
    /// best-ever fitness; `None` disables early stopping.
    pub stall_generations: Option<u32>,
}

impl Default for GaConfig {
    fn default() -> Self {
        GaConfig {
            population_size: 200,
            generations: 500,
            crossover_rate: 0.8,
            mutation_rate: None,
            tournament_size: 2,
            elitism_count: 2,
            crossover_kind: CrossoverKind::SinglePoint,
            rng_seed: 0,
            stall_generations: None,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        if self.population_size == 0 {
            return Err(Error::Config("population_size must be at least 1".to_string()));
        }
        if self.generations == 0 {
            return Err(Error::Config("generations must be at least 1".to_string()));
        }
        if !(0.0..=1.0).contains(&self.crossover_rate) {
            return Err(Error::Config(alloc::format!(
                "crossover_rate {} outside [0, 1]",
                self.crossover_rate
            )));
        }
        if let Some(rate) = self.mutation_rate {
            if !(0.0..=1.0).contains(&rate) {
                return Err(Error::Config(alloc::format!(
                    "mutation_rate {rate} outside [0, 1]"
                )));
            }
        }
        if self.tournament_size == 0 {
            return Err(Error::Config("tournament_size must be at least 1".to_string()));
        }
        if self.elitism_count >= self.population_size {
            return Err(Error::Config(alloc::format!(
                "elitism_count {} must be below population_size {}",
                self.elitism_count,
                self.population_size
            )));
        }
        Ok(())
    }
}

/// Best and mean fitness of one evaluated generation.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct GenerationStats {
    pub best: f64,
    pub mean: f64,
}

/// Outcome of a GA run, with full provenance for replay.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub best_genome: Genome,
    pub best_fitness: f64,
    pub history: Vec<GenerationStats>,
    pub config: GaConfig,
    pub scheme_name: String,
    pub seed: u64,
    pub rng_algo: &'static str,
}

// Draw layer: every random decision maps a `next_u64` (or a fixed number
// of them) onto the needed range, keeping the value stream stable.

fn draw_bit(rng: &mut impl RngCore) -> bool {
    rng.next_u64() & 1 == 1
}

/// Uniform in [0, 1) with 53 bits of precision.
fn draw_unit(rng: &mut impl RngCore) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform in `0..n` via 128-bit multiply (bias below n / 2^64).
fn draw_index(rng: &mut impl RngCore, n: usize) -> usize {
    debug_assert!(n > 0);
    ((rng.next_u64() as u128 * n as u128) >> 64) as usize
}

/// Generates `size` genomes of `bits` independently uniform bits.
pub fn random_population(size: usize, bits: usize, rng: &mut impl RngCore) -> Vec<Genome> {
    (0..size)
        .map(|_| (0..bits).map(|_| draw_bit(rng)).collect())
        .collect()
}

/// Draws `k` population indices uniformly with replacement and returns the
/// one with minimal fitness; ties break toward the lowest index.
pub fn tournament_select(fitnesses: &[f64], k: usize, rng: &mut impl RngCore) -> usize {
    debug_assert!(k >= 1 && !fitnesses.is_empty());
    let mut best = draw_index(rng, fitnesses.len());
    for _ in 1..k {
        let challenger = draw_index(rng, fitnesses.len());
        if fitnesses[challenger] < fitnesses[best]
            || (fitnesses[challenger] == fitnesses[best] && challenger < best)
        {
            best = challenger;
        }
    }
    best
}

/// Recombines two equal-length parents with probability
/// `cfg.crossover_rate`, otherwise returns copies. Genomes shorter than
/// two bits have no cut position and are always copied.
pub fn crossover(
    a: &BitSlice<u8, Msb0>,
    b: &BitSlice<u8, Msb0>,
    cfg: &GaConfig,
    rng: &mut impl RngCore,
) -> Result<(Genome, Genome)> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            got: b.len(),
        });
    }
    let len = a.len();
    if draw_unit(rng) >= cfg.crossover_rate || len < 2 {
        return Ok((a.to_bitvec(), b.to_bitvec()));
    }
    match cfg.crossover_kind {
        CrossoverKind::SinglePoint => {
            let cut = 1 + draw_index(rng, len - 1);
            let mut c1 = a.to_bitvec();
            let mut c2 = b.to_bitvec();
            c1[cut..].copy_from_bitslice(&b[cut..]);
            c2[cut..].copy_from_bitslice(&a[cut..]);
            Ok((c1, c2))
        }
        CrossoverKind::Uniform => {
            let mut c1 = BitVec::with_capacity(len);
            let mut c2 = BitVec::with_capacity(len);
            for i in 0..len {
                if draw_bit(rng) {
                    c1.push(a[i]);
                    c2.push(b[i]);
                } else {
                    c1.push(b[i]);
                    c2.push(a[i]);
                }
            }
            Ok((c1, c2))
        }
    }
}

/// Flips each bit independently with probability `rate`.
pub fn mutate(genome: &mut BitSlice<u8, Msb0>, rate: f64, rng: &mut impl RngCore) {
    for i in 0..genome.len() {
        if draw_unit(rng) < rate {
            let bit = genome[i];
            genome.set(i, !bit);
        }
    }
}

/// Runs the generational loop: evaluate, carry the elite unchanged, fill
/// the rest via tournament selection, crossover and mutation. Returns the
/// best genome ever evaluated.
pub fn run<P: GaProblem>(problem: &P, cfg: &GaConfig) -> Result<RunResult> {
    cfg.validate()?;
    let bits = problem.genome_bits();
    if bits == 0 {
        return Err(Error::Config("problem genome is empty".to_string()));
    }
    let mutation_rate = cfg.mutation_rate.unwrap_or(1.0 / bits as f64);

    let mut rng = ChaCha12Rng::seed_from_u64(cfg.rng_seed);
    let mut pop = random_population(cfg.population_size, bits, &mut rng);
    let mut history = Vec::with_capacity(cfg.generations);
    let mut best_genome = pop[0].clone();
    let mut best_fitness = f64::INFINITY;
    let mut stall = 0u32;

    for generation in 0..cfg.generations {
        let fitnesses: Vec<f64> = pop.iter().map(|g| problem.fitness(g)).collect();
        let gen_best = fitnesses
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.total_cmp(b))
            .map(|(i, _)| i)
            .expect("population is non-empty");
        let mean = fitnesses.iter().sum::<f64>() / fitnesses.len() as f64;
        history.push(GenerationStats {
            best: fitnesses[gen_best],
            mean,
        });
        if fitnesses[gen_best] < best_fitness {
            best_fitness = fitnesses[gen_best];
            best_genome = pop[gen_best].clone();
            stall = 0;
        } else {
            stall += 1;
        }
        if cfg.stall_generations.is_some_and(|s| stall >= s) {
            break;
        }
        if generation + 1 == cfg.generations {
            break;
        }

        let mut order: Vec<usize> = (0..pop.len()).collect();
        order.sort_by(|&i, &j| fitnesses[i].total_cmp(&fitnesses[j]).then(i.cmp(&j)));
        let mut next: Vec<Genome> = order
            .iter()
            .take(cfg.elitism_count)
            .map(|&i| pop[i].clone())
            .collect();
        while next.len() < cfg.population_size {
            let pa = tournament_select(&fitnesses, cfg.tournament_size, &mut rng);
            let pb = tournament_select(&fitnesses, cfg.tournament_size, &mut rng);
            let (mut c1, mut c2) = crossover(&pop[pa], &pop[pb], cfg, &mut rng)?;
            mutate(&mut c1, mutation_rate, &mut rng);
            mutate(&mut c2, mutation_rate, &mut rng);
            next.push(c1);
            if next.len() < cfg.population_size {
                next.push(c2);
            }
        }
        debug_assert_eq!(next.len(), cfg.population_size);
        debug_assert!(next.iter().all(|g| g.len() == bits));
        pop = next;
    }

    Ok(RunResult {
        best_genome,
        best_fitness,
        history,
        config: cfg.clone(),
        scheme_name: problem.scheme_name().to_string(),
        seed: cfg.rng_seed,
        rng_algo: RNG_ALGO,
    })
}
