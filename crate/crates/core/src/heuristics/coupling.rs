//! The wide/narrow coupling heuristic.
//!
//! Orders wider than half the reel can never share a reel with each other,
//! so each of them anchors its own pattern. The loop is:
//!
//! 1. Seed a pattern with the widest wide order that still has rolls.
//! 2. Fill the residual with narrow rolls giving the least waste
//!    (see [`best_fill`]).
//! 3. Repeat the pattern on as many reels as the participating orders allow:
//!    `min(remaining / multiplicity)`.
//! 4. Once the wide pool is exhausted, keep going with the narrow pool alone,
//!    seeding from the widest narrow order and filling from the narrow pool.
//! 5. If the narrow pool runs out first, the remaining wide orders are
//!    coupled among themselves where capacity allows, otherwise cut alone.
//!
//! Every iteration consumes at least one roll, so the loop runs at most
//! `total_rolls` times. Each fill is a bounded subset-sum over the current
//! partner pool.

use indexmap::IndexMap;

use super::classify::{split_positions, Threshold};
use super::fill::{best_fill, Candidate};
use super::{check_pool, Algorithm, SolveResult};
use crate::error::SolveError;
use crate::model::{CutPattern, OrderPool};

/// Runs the coupling heuristic with the strict wide/narrow threshold.
pub fn couple_orders(pool: &OrderPool) -> Result<SolveResult, SolveError> {
    couple_orders_with(pool, Threshold::Strict, false)
}

/// Runs the coupling heuristic with an explicit threshold, optionally
/// recording one trace line per pattern.
pub fn couple_orders_with(pool: &OrderPool, threshold: Threshold, trace: bool) -> Result<SolveResult, SolveError> {
    check_pool(pool)?;
    let orders = pool.orders();
    let effective_width = pool.effective_width();
    let (wide, narrow) = split_positions(pool, threshold);
    let mut remaining: Vec<u32> = orders.iter().map(|o| o.count).collect();
    let mut patterns = Vec::new();
    let mut lines = Vec::new();

    loop {
        let first_open = |list: &[usize]| list.iter().copied().find(|&i| remaining[i] > 0);
        let (seed, partners) = match (first_open(&wide), first_open(&narrow)) {
            (Some(seed), Some(_)) => (seed, &narrow),
            (None, Some(seed)) => (seed, &narrow),
            (Some(seed), None) => (seed, &wide),
            (None, None) => break,
        };

        let candidates: Vec<Candidate> = partners
            .iter()
            .map(|&i| Candidate {
                width: orders[i].width,
                bound: remaining[i] - u32::from(i == seed),
            })
            .collect();
        let take = best_fill(&candidates, effective_width - orders[seed].width);

        let mut composition: IndexMap<usize, u32> = IndexMap::new();
        composition.insert(seed, 1);
        for (&i, &m) in partners.iter().zip(&take) {
            if m > 0 {
                *composition.entry(i).or_insert(0) += m;
            }
        }
        let reels = composition
            .iter()
            .map(|(&i, &m)| remaining[i] / m)
            .min()
            .expect("composition holds the seed");
        debug_assert!(reels >= 1);
        for (&i, &m) in &composition {
            remaining[i] -= m * reels;
        }

        let pattern = CutPattern::new(
            composition.iter().map(|(&i, &m)| (orders[i].id.clone(), m)),
            reels,
            pool,
        )?;
        if trace {
            let parts: Vec<String> = composition
                .iter()
                .map(|(&i, &m)| format!("{}x{} ({})", orders[i].id, m, orders[i].width))
                .collect();
            lines.push(format!(
                "seed {}: {} on {} reel(s), waste {} per reel",
                orders[seed].id,
                parts.join(" + "),
                reels,
                pattern.waste_per_reel()
            ));
        }
        patterns.push(pattern);
    }

    SolveResult::from_patterns(patterns, pool, Algorithm::Coupling, trace.then_some(lines))
}
