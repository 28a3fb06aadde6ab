//! Exhaustive and random polarity search over FPQF and KQF forms.
//!
//! The exhaustive search walks a tree whose level `k` fixes the digit of
//! control `c_{k+1}`. A node holds the targets after its prefix of butterfly
//! columns, so siblings share every column above them. Leaves are visited
//! in lexicographic polarity order and their costs land in a vector indexed
//! by polarity ordinal; statistics are reduced from that vector in order,
//! which makes serial and parallel runs agree exactly.

use std::fmt;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cost::{multiplexer_cost, total_cost};
use crate::error::{Error, Result};
use crate::mux::{ActivationRule, Form, Multiplexer};
use crate::polarity::{Digit, Family, Polarity};
use crate::transform::{apply_kernel, forward_in_place, Kernel};
use crate::unitary::Unitary2;

pub const MAX_EXHAUSTIVE_FIXED: usize = 14;
pub const MAX_EXHAUSTIVE_KRONECKER: usize = 9;
pub const MAX_RANDOM_CONTROLS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SearchMode {
    Exhaustive,
    /// Uniform draws with replacement from a ChaCha8 stream seeded by `seed`.
    Random { samples: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub family: Family,
    pub mode: SearchMode,
    pub max_exhaustive_fixed: usize,
    pub max_exhaustive_kronecker: usize,
    pub max_random: usize,
    pub parallel: bool,
}

impl SearchConfig {
    pub fn exhaustive(family: Family) -> Self {
        SearchConfig {
            family,
            mode: SearchMode::Exhaustive,
            max_exhaustive_fixed: MAX_EXHAUSTIVE_FIXED,
            max_exhaustive_kronecker: MAX_EXHAUSTIVE_KRONECKER,
            max_random: MAX_RANDOM_CONTROLS,
            parallel: true,
        }
    }

    pub fn random(family: Family, samples: usize, seed: u64) -> Self {
        SearchConfig {
            mode: SearchMode::Random { samples, seed },
            ..Self::exhaustive(family)
        }
    }

    pub fn serial(mut self) -> Self {
        self.parallel = false;
        self
    }

    fn limit(&self) -> usize {
        match (self.mode, self.family) {
            (SearchMode::Random { .. }, _) => self.max_random,
            (SearchMode::Exhaustive, Family::Fixed) => self.max_exhaustive_fixed,
            (SearchMode::Exhaustive, Family::Kronecker) => self.max_exhaustive_kronecker,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolarityCost {
    pub polarity: Polarity,
    pub cost: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchReport {
    pub controls: usize,
    pub family: Family,
    pub mode: SearchMode,
    pub original_cost: u64,
    pub best: PolarityCost,
    pub worst: PolarityCost,
    pub average_cost: f64,
    pub polarities_evaluated: usize,
    pub elapsed_secs: f64,
}

impl SearchReport {
    /// Reduces `(polarity, cost)` pairs in the order given. Ties keep the
    /// lexicographically smallest polarity for both best and worst.
    pub fn summarize(
        controls: usize,
        family: Family,
        mode: SearchMode,
        original_cost: u64,
        evaluated: impl IntoIterator<Item = (Polarity, u64)>,
    ) -> Option<Self> {
        let mut iter = evaluated.into_iter();
        let (p0, c0) = iter.next()?;
        let mut best = PolarityCost { polarity: p0.clone(), cost: c0 };
        let mut worst = PolarityCost { polarity: p0, cost: c0 };
        let mut sum = c0 as u128;
        let mut count = 1usize;
        for (p, c) in iter {
            sum += c as u128;
            count += 1;
            if c < best.cost || (c == best.cost && p < best.polarity) {
                best = PolarityCost { polarity: p.clone(), cost: c };
            }
            if c > worst.cost || (c == worst.cost && p < worst.polarity) {
                worst = PolarityCost { polarity: p, cost: c };
            }
        }
        Some(SearchReport {
            controls,
            family,
            mode,
            original_cost,
            best,
            worst,
            average_cost: sum as f64 / count as f64,
            polarities_evaluated: count,
            elapsed_secs: 0.0,
        })
    }

    /// Average-case reduction relative to the original cost, in percent.
    pub fn reduction_pct(&self) -> f64 {
        if self.original_cost == 0 {
            0.0
        } else {
            100.0 * (self.original_cost as f64 - self.average_cost) / self.original_cost as f64
        }
    }

    /// Best-case reduction relative to the original cost, in percent.
    pub fn best_reduction_pct(&self) -> f64 {
        if self.original_cost == 0 {
            0.0
        } else {
            100.0 * (self.original_cost as f64 - self.best.cost as f64) / self.original_cost as f64
        }
    }

    /// Copy with the timing zeroed, for comparing runs.
    pub fn without_timing(&self) -> Self {
        SearchReport {
            elapsed_secs: 0.0,
            ..self.clone()
        }
    }

    pub const CSV_HEADER: &'static str =
        "controls,original,best,worst,average,reduction_pct,best_polarity,worst_polarity,evaluated";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{:.2},{:.1},{},{},{}",
            self.controls,
            self.original_cost,
            self.best.cost,
            self.worst.cost,
            self.average_cost,
            self.reduction_pct(),
            self.best.polarity,
            self.worst.polarity,
            self.polarities_evaluated
        )
    }
}

impl fmt::Display for SearchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "controls:       {}", self.controls)?;
        writeln!(f, "original cost:  {}", self.original_cost)?;
        writeln!(f, "best:           {} (cost {})", self.best.polarity, self.best.cost)?;
        writeln!(f, "worst:          {} (cost {})", self.worst.polarity, self.worst.cost)?;
        writeln!(f, "average cost:   {:.2}", self.average_cost)?;
        writeln!(f, "reduction:      {:.1}% average, {:.1}% best", self.reduction_pct(), self.best_reduction_pct())?;
        write!(f, "evaluated:      {} polarities in {:.3}s", self.polarities_evaluated, self.elapsed_secs)
    }
}

fn check(std: &Multiplexer, cfg: &SearchConfig) -> Result<()> {
    if *std.form() != Form::Standard {
        return Err(Error::FormMismatch {
            expected: "standard",
            found: std.form().to_string(),
        });
    }
    let limit = cfg.limit();
    if std.controls() > limit {
        return Err(Error::SizeLimitExceeded {
            what: "search controls",
            size: std.controls(),
            limit,
        });
    }
    Ok(())
}

fn digits_of(family: Family) -> &'static [Digit] {
    match family {
        Family::Fixed => &[Digit::Negative, Digit::Positive],
        Family::Kronecker => &[Digit::Negative, Digit::Positive, Digit::Mixed],
    }
}

/// Cost of every polarity of `family`, indexed by polarity ordinal.
pub fn exhaustive_costs(std: &Multiplexer, family: Family, parallel: bool) -> Vec<u64> {
    let m = std.controls();
    let radix = family.radix();
    let total = family.count(m).expect("bounded by search limits");
    let mut out = vec![0u64; total];

    // Subtrees below this depth run as independent tasks.
    let split = m.min(if family == Family::Fixed { 4 } else { 3 });
    let chunk = radix.pow((m - split) as u32);

    let run = |(prefix_ordinal, slot): (usize, &mut [u64])| {
        let prefix = Polarity::from_ordinal(family, split, prefix_ordinal);
        let mut levels = vec![std.targets().to_vec(); m - split + 1];
        let mut digits = prefix.digits().to_vec();
        for (k, &d) in prefix.digits().iter().enumerate() {
            if d != Digit::Mixed {
                apply_kernel(&mut levels[0], Kernel::Forward(d), m - 1 - k).expect("shape checked");
            }
        }
        descend(&mut levels, &mut digits, m, family, slot);
    };
    if parallel {
        out.par_chunks_mut(chunk).enumerate().for_each(run);
    } else {
        out.chunks_mut(chunk).enumerate().for_each(run);
    }
    out
}

// `levels[0]` holds the targets after the stages for `digits`; `out` covers
// every completion of that prefix in lexicographic order.
fn descend(
    levels: &mut [Vec<Unitary2>],
    digits: &mut Vec<Digit>,
    m: usize,
    family: Family,
    out: &mut [u64],
) {
    let depth = digits.len();
    if depth == m {
        let rule = ActivationRule::new(&Polarity::new(digits.clone()));
        out[0] = total_cost(&levels[0], rule);
        return;
    }
    let (parent, rest) = levels.split_first_mut().expect("one level per remaining digit");
    let span = out.len() / family.radix();
    for (i, &d) in digits_of(family).iter().enumerate() {
        let child = &mut rest[0];
        child.copy_from_slice(parent);
        if d != Digit::Mixed {
            apply_kernel(child, Kernel::Forward(d), m - 1 - depth).expect("shape checked");
        }
        digits.push(d);
        descend(rest, digits, m, family, &mut out[i * span..(i + 1) * span]);
        digits.pop();
    }
}

/// Evaluates every polarity of the configured family.
pub fn exhaustive_search(std: &Multiplexer, cfg: &SearchConfig) -> Result<SearchReport> {
    check(std, cfg)?;
    let start = Instant::now();
    let m = std.controls();
    let costs = exhaustive_costs(std, cfg.family, cfg.parallel);
    let original = multiplexer_cost(std).total;
    let mut report = SearchReport::summarize(
        m,
        cfg.family,
        SearchMode::Exhaustive,
        original,
        costs
            .iter()
            .enumerate()
            .map(|(i, &c)| (Polarity::from_ordinal(cfg.family, m, i), c)),
    )
    .expect("at least one polarity");
    report.elapsed_secs = start.elapsed().as_secs_f64();
    Ok(report)
}

/// The polarities a random search with this seed draws.
pub fn draw_polarities(family: Family, controls: usize, samples: usize, seed: u64) -> Vec<Polarity> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let choices = digits_of(family);
    (0..samples)
        .map(|_| {
            Polarity::new(
                (0..controls)
                    .map(|_| choices[rng.random_range(0..choices.len())])
                    .collect(),
            )
        })
        .collect()
}

/// Evaluates `samples` uniformly drawn polarities.
pub fn random_polarity_search(std: &Multiplexer, cfg: &SearchConfig) -> Result<SearchReport> {
    let SearchMode::Random { samples, seed } = cfg.mode else {
        return exhaustive_search(std, cfg);
    };
    check(std, cfg)?;
    if samples == 0 {
        return Err(Error::SizeLimitExceeded {
            what: "random samples (minimum 1)",
            size: 0,
            limit: 1,
        });
    }
    let start = Instant::now();
    let polarities = draw_polarities(cfg.family, std.controls(), samples, seed);
    let eval = |p: &Polarity| {
        let mut g = std.targets().to_vec();
        forward_in_place(&mut g, p);
        total_cost(&g, ActivationRule::new(p))
    };
    let costs: Vec<u64> = if cfg.parallel {
        polarities.par_iter().map(eval).collect()
    } else {
        polarities.iter().map(eval).collect()
    };
    let original = multiplexer_cost(std).total;
    let mut report = SearchReport::summarize(
        std.controls(),
        cfg.family,
        cfg.mode,
        original,
        polarities.into_iter().zip(costs),
    )
    .expect("at least one sample");
    report.elapsed_secs = start.elapsed().as_secs_f64();
    Ok(report)
}

/// Dispatches on the configured mode.
pub fn search(std: &Multiplexer, cfg: &SearchConfig) -> Result<SearchReport> {
    match cfg.mode {
        SearchMode::Exhaustive => exhaustive_search(std, cfg),
        SearchMode::Random { .. } => random_polarity_search(std, cfg),
    }
}
