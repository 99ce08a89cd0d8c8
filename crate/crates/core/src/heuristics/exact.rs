//! Exhaustive minimum-reel search for tiny instances.
//!
//! Depth-first over roll-to-reel assignments, widest roll first. Two
//! symmetries are broken: reels are opened strictly in index order, and
//! rolls of the same order take non-decreasing reel indices. A node is cut
//! when the open reels plus `ceil((unplaced width - free space) / width)`
//! cannot beat the incumbent. The incumbent starts as first-fit decreasing.
//!
//! For a demand-exact schedule trim loss is `reels * width - demand`, so the
//! fewest reels also gives the least trim loss.

use super::{check_pool, patterns_from_slots, Algorithm, SolveResult};
use crate::error::SolveError;
use crate::model::{OrderPool, Slot};

/// Largest total roll count accepted by [`exact_min_reels`].
pub const MAX_EXACT_ROLLS: u64 = 12;

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSolution {
    pub result: SolveResult,
    /// False when the node budget ran out before the search completed.
    pub proven: bool,
    pub nodes: u64,
}

struct Search {
    widths: Vec<u64>,
    owner: Vec<usize>,
    suffix_width: Vec<u64>,
    capacity: u64,
    residuals: Vec<u64>,
    assignment: Vec<usize>,
    best: Vec<usize>,
    best_reels: usize,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl Search {
    fn run(&mut self, k: usize) {
        if self.nodes >= self.budget {
            self.exhausted = true;
            return;
        }
        self.nodes += 1;
        let open = self.residuals.len();
        if k == self.widths.len() {
            if open < self.best_reels {
                self.best_reels = open;
                self.best.clone_from(&self.assignment);
            }
            return;
        }
        let free: u64 = self.residuals.iter().sum();
        let extra = self.suffix_width[k].saturating_sub(free).div_ceil(self.capacity) as usize;
        if open + extra >= self.best_reels {
            return;
        }

        let width = self.widths[k];
        let start = if k > 0 && self.owner[k] == self.owner[k - 1] {
            self.assignment[k - 1]
        } else {
            0
        };
        for i in start..open {
            if self.residuals[i] >= width {
                self.residuals[i] -= width;
                self.assignment[k] = i;
                self.run(k + 1);
                self.residuals[i] += width;
                if self.exhausted {
                    return;
                }
            }
        }
        if open + 1 < self.best_reels {
            self.residuals.push(self.capacity - width);
            self.assignment[k] = open;
            self.run(k + 1);
            self.residuals.pop();
        }
    }
}

/// Finds a schedule with the fewest reels by exhaustive search.
///
/// Pools with more than [`MAX_EXACT_ROLLS`] rolls are rejected. If `budget`
/// search nodes are spent first, the best schedule found so far is returned
/// with `proven == false`.
pub fn exact_min_reels(pool: &OrderPool, budget: u64) -> Result<ExactSolution, SolveError> {
    check_pool(pool)?;
    let rolls = pool.total_rolls();
    if rolls > MAX_EXACT_ROLLS {
        return Err(SolveError::InstanceTooLarge {
            rolls,
            limit: MAX_EXACT_ROLLS,
        });
    }
    if budget == 0 {
        return Err(SolveError::ZeroBudget);
    }

    let mut order: Vec<usize> = (0..pool.len()).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(pool.orders()[i].width));
    let owner: Vec<usize> = order
        .iter()
        .flat_map(|&i| std::iter::repeat_n(i, pool.orders()[i].count as usize))
        .collect();
    let widths: Vec<u64> = owner.iter().map(|&i| pool.orders()[i].width).collect();
    let mut suffix_width = vec![0; widths.len() + 1];
    for k in (0..widths.len()).rev() {
        suffix_width[k] = suffix_width[k + 1] + widths[k];
    }
    let capacity = pool.effective_width();

    // first-fit decreasing incumbent
    let mut residuals: Vec<u64> = Vec::new();
    let mut incumbent = Vec::with_capacity(widths.len());
    for &w in &widths {
        let i = match residuals.iter().position(|&r| r >= w) {
            Some(i) => i,
            None => {
                residuals.push(capacity);
                residuals.len() - 1
            }
        };
        residuals[i] -= w;
        incumbent.push(i);
    }

    let mut search = Search {
        assignment: vec![0; widths.len()],
        best_reels: residuals.len(),
        best: incumbent,
        widths,
        owner,
        suffix_width,
        capacity,
        residuals: Vec::new(),
        nodes: 0,
        budget,
        exhausted: false,
    };
    search.run(0);

    let mut slots = vec![Slot::new(); search.best_reels];
    for (k, &reel) in search.best.iter().enumerate() {
        slots[reel].add(pool.orders()[search.owner[k]].id.clone(), 1);
    }
    let patterns = patterns_from_slots(&slots, pool)?;
    Ok(ExactSolution {
        result: SolveResult::from_patterns(patterns, pool, Algorithm::Exact, None)?,
        proven: !search.exhausted,
        nodes: search.nodes,
    })
}
