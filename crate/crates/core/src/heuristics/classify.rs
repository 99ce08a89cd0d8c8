use crate::model::{OrderId, OrderPool};

/// Rule deciding which orders count as wide.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Threshold {
    /// Wide when `2 * width > effective_width`. Two wide rolls never share a reel.
    #[default]
    Strict,
    /// Wide when `2 * width >= effective_width`, so half-width orders are wide too.
    Inclusive,
}

impl Threshold {
    pub(crate) fn is_wide(self, width: u64, effective_width: u64) -> bool {
        match self {
            Threshold::Strict => 2 * width > effective_width,
            Threshold::Inclusive => 2 * width >= effective_width,
        }
    }
}

/// The pool split into wide and narrow sub-pools, each widest first with
/// ties kept in pool order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifiedPool {
    pub wide: Vec<(OrderId, u32)>,
    pub narrow: Vec<(OrderId, u32)>,
}

/// Classifies with the [`Threshold::Strict`] rule.
pub fn classify_pool(pool: &OrderPool) -> ClassifiedPool {
    classify_pool_with(pool, Threshold::Strict)
}

pub fn classify_pool_with(pool: &OrderPool, threshold: Threshold) -> ClassifiedPool {
    let (wide, narrow) = split_positions(pool, threshold);
    let entries = |positions: Vec<usize>| {
        positions
            .into_iter()
            .map(|i| {
                let o = &pool.orders()[i];
                (o.id.clone(), o.count)
            })
            .collect()
    };
    ClassifiedPool {
        wide: entries(wide),
        narrow: entries(narrow),
    }
}

/// Pool positions of the wide and narrow orders, each sorted widest first.
pub(crate) fn split_positions(pool: &OrderPool, threshold: Threshold) -> (Vec<usize>, Vec<usize>) {
    let effective_width = pool.effective_width();
    let mut order: Vec<usize> = (0..pool.len()).collect();
    // stable: equal widths keep pool order
    order.sort_by_key(|&i| std::cmp::Reverse(pool.orders()[i].width));
    order
        .into_iter()
        .partition(|&i| threshold.is_wide(pool.orders()[i].width, effective_width))
}
