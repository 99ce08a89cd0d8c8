//! First-fit and best-fit baselines.
//!
//! Each order is expanded into `count` identical rolls, taken in pool order,
//! and placed one at a time into the open reels. Runs of identical reels are
//! reported as one pattern.

use super::{check_pool, patterns_from_slots, Algorithm, SolveResult};
use crate::error::SolveError;
use crate::model::{OrderPool, Slot};

/// Places each roll in the lowest-indexed reel it fits.
pub fn first_fit(pool: &OrderPool) -> Result<SolveResult, SolveError> {
    pack(pool, Algorithm::FirstFit, |residuals, width| {
        residuals.iter().position(|&r| r >= width)
    })
}

/// Places each roll in the reel with the smallest residual that still fits
/// it; ties go to the lowest index.
pub fn best_fit(pool: &OrderPool) -> Result<SolveResult, SolveError> {
    pack(pool, Algorithm::BestFit, |residuals, width| {
        residuals
            .iter()
            .enumerate()
            .filter(|(_, &r)| r >= width)
            .min_by_key(|&(i, &r)| (r, i))
            .map(|(i, _)| i)
    })
}

fn pack(
    pool: &OrderPool,
    algorithm: Algorithm,
    choose: impl Fn(&[u64], u64) -> Option<usize>,
) -> Result<SolveResult, SolveError> {
    check_pool(pool)?;
    let effective_width = pool.effective_width();
    let mut residuals: Vec<u64> = Vec::new();
    let mut slots: Vec<Slot> = Vec::new();
    for order in pool.orders() {
        for _ in 0..order.count {
            let i = match choose(&residuals, order.width) {
                Some(i) => i,
                None => {
                    residuals.push(effective_width);
                    slots.push(Slot::new());
                    slots.len() - 1
                }
            };
            residuals[i] -= order.width;
            slots[i].add(order.id.clone(), 1);
        }
    }
    let patterns = patterns_from_slots(&slots, pool)?;
    SolveResult::from_patterns(patterns, pool, algorithm, None)
}
