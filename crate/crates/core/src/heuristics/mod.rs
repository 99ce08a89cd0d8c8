//! Solvers that turn an [`OrderPool`] into a demand-exact cutting schedule.
//!
//! * [`couple_orders`]: the wide/narrow coupling heuristic.
//! * [`first_fit`] and [`best_fit`]: classic online bin-packing baselines,
//!   fed one roll at a time in pool order.
//! * [`exact_min_reels`]: exhaustive search for tiny instances, used as an
//!   oracle in tests.
//!
//! Every solver is a pure function of the pool. Ties are always broken by
//! width (widest first) and then by pool position, so identical pools give
//! identical results.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use crate::error::SolveError;
use crate::model::{schedule_from_patterns, trim_loss, CutPattern, OrderPool, Schedule, ScheduleMetrics, Slot};

mod classify;
mod coupling;
mod exact;
mod fill;
mod online;

pub use classify::{classify_pool, classify_pool_with, ClassifiedPool, Threshold};
pub use coupling::{couple_orders, couple_orders_with};
pub use exact::{exact_min_reels, ExactSolution, DEFAULT_NODE_BUDGET, MAX_EXACT_ROLLS};
pub use online::{best_fit, first_fit};

/// Solver tag carried on results and schedule documents.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Coupling,
    FirstFit,
    BestFit,
    Exact,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Coupling,
        Algorithm::FirstFit,
        Algorithm::BestFit,
        Algorithm::Exact,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Algorithm::Coupling => "coupling",
            Algorithm::FirstFit => "first-fit",
            Algorithm::BestFit => "best-fit",
            Algorithm::Exact => "exact",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| format!("unknown algorithm {s:?}"))
    }
}

/// Output of any solver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    /// Patterns in construction order.
    pub patterns: Vec<CutPattern>,
    /// `schedule_from_patterns(patterns)`.
    pub schedule: Schedule,
    pub metrics: ScheduleMetrics,
    pub algorithm: Algorithm,
    pub trace: Option<Vec<String>>,
}

impl SolveResult {
    /// Assembles a result from patterns, expanding the schedule and
    /// recomputing every metric.
    pub fn from_patterns(
        patterns: Vec<CutPattern>,
        pool: &OrderPool,
        algorithm: Algorithm,
        trace: Option<Vec<String>>,
    ) -> Result<Self, SolveError> {
        let schedule = schedule_from_patterns(&patterns, pool)?;
        let metrics = trim_loss(&schedule, pool)?;
        Ok(SolveResult {
            patterns,
            schedule,
            metrics,
            algorithm,
            trace,
        })
    }

    pub fn used_reels(&self) -> u64 {
        self.metrics.used_reels
    }

    pub fn trim_loss(&self) -> u64 {
        self.metrics.trim_loss
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub trace: bool,
    /// Wide/narrow split rule for the coupling heuristic.
    pub threshold: Threshold,
    /// Node limit for the exact search.
    pub exact_budget: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            trace: false,
            threshold: Threshold::Strict,
            exact_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

/// Runs `algorithm` on `pool`.
pub fn solve(pool: &OrderPool, algorithm: Algorithm, options: &SolveOptions) -> Result<SolveResult, SolveError> {
    let mut result = match algorithm {
        Algorithm::Coupling => couple_orders_with(pool, options.threshold, options.trace)?,
        Algorithm::FirstFit => first_fit(pool)?,
        Algorithm::BestFit => best_fit(pool)?,
        Algorithm::Exact => {
            let solution = exact_min_reels(pool, options.exact_budget)?;
            let mut result = solution.result;
            if options.trace {
                result.trace = Some(vec![format!(
                    "{} search nodes, {}",
                    solution.nodes,
                    if solution.proven {
                        "optimal"
                    } else {
                        "budget exhausted, not proven optimal"
                    }
                )]);
            }
            result
        }
    };
    if !options.trace {
        result.trace = None;
    }
    Ok(result)
}

/// Common solver precondition: a non-empty pool whose orders all fit a reel.
fn check_pool(pool: &OrderPool) -> Result<(), SolveError> {
    if pool.is_empty() {
        return Err(SolveError::EmptyPool);
    }
    pool.ensure_satisfiable()?;
    Ok(())
}

/// Groups runs of identical consecutive reels into patterns.
fn patterns_from_slots(slots: &[Slot], pool: &OrderPool) -> Result<Vec<CutPattern>, SolveError> {
    let mut patterns = Vec::new();
    let mut i = 0;
    while i < slots.len() {
        let run = slots[i..].iter().take_while(|s| *s == &slots[i]).count();
        let composition = slots[i].rolls().iter().map(|(id, &n)| (id.clone(), n));
        patterns.push(CutPattern::new(composition, run as u32, pool)?);
        i += run;
    }
    Ok(patterns)
}
