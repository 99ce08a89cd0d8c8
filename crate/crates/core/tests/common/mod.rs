#![allow(dead_code)]

use std::path::PathBuf;

use rand::Rng;
use reelcut::io::{parse_pool, PoolFormat};
use reelcut::model::{DeckleSpec, Order, OrderPool, Unit};

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

pub fn read_data(name: &str) -> Vec<u8> {
    std::fs::read(data_path(name)).unwrap()
}

/// The ten-order pool on a 201 cm deckle with 1 cm trim allowance.
pub fn pool1() -> OrderPool {
    let deckle = DeckleSpec::new(201, 1, Unit::Cm).unwrap();
    parse_pool(&read_data("pool1.csv"), PoolFormat::Csv { deckle }).unwrap()
}

/// The eighteen-order pool on a 2500 mm deckle.
pub fn pool2() -> OrderPool {
    parse_pool(&read_data("pool2.json"), PoolFormat::Structured).unwrap()
}

/// (id, width, count) literals, kept independent of the fixture files.
pub const POOL1_ORDERS: [(&str, u64, u64); 10] = [
    ("D1", 55, 6),
    ("D2", 145, 6),
    ("D3", 50, 8),
    ("D4", 150, 2),
    ("D5", 135, 6),
    ("D6", 80, 12),
    ("D7", 105, 6),
    ("D8", 90, 5),
    ("D9", 100, 5),
    ("D10", 55, 24),
];

pub const POOL2_ORDERS: [(&str, u64, u64); 18] = [
    ("D1", 1470, 7),
    ("D2", 1030, 20),
    ("D3", 1450, 24),
    ("D4", 1050, 12),
    ("D5", 1080, 11),
    ("D6", 1410, 11),
    ("D7", 1400, 12),
    ("D8", 1100, 11),
    ("D9", 1370, 7),
    ("D10", 1120, 21),
    ("D11", 1150, 9),
    ("D12", 1350, 9),
    ("D13", 1330, 14),
    ("D14", 1180, 9),
    ("D15", 1300, 9),
    ("D16", 1250, 27),
    ("D17", 950, 17),
    ("D18", 1550, 17),
];

/// A schedule row: composition (id, multiplicity), reels, waste per reel.
pub type Row = (&'static [(&'static str, u32)], u32, u64);

/// The nine-row schedule for the ten-order pool, in construction order.
pub const POOL1_SCHEDULE: [Row; 9] = [
    (&[("D4", 1), ("D3", 1)], 2, 0),
    (&[("D2", 1), ("D1", 1)], 6, 0),
    (&[("D5", 1), ("D10", 1)], 6, 10),
    (&[("D7", 1), ("D8", 1)], 5, 5),
    (&[("D7", 1), ("D6", 1)], 1, 15),
    (&[("D9", 2)], 2, 0),
    (&[("D9", 1), ("D3", 2)], 1, 0),
    (&[("D6", 1), ("D10", 2)], 9, 10),
    (&[("D6", 1), ("D3", 2)], 2, 20),
];

/// The thirteen-row schedule for the eighteen-order pool with the reel and
/// waste columns made consistent: (D1+D2) on 7 reels, (D15+D14) on 9 reels
/// at 20, (D13+D10) on 14 reels at 50.
pub const POOL2_SCHEDULE: [Row; 13] = [
    (&[("D18", 1), ("D17", 1)], 17, 0),
    (&[("D1", 1), ("D2", 1)], 7, 0),
    (&[("D3", 1), ("D4", 1)], 12, 0),
    (&[("D3", 1), ("D2", 1)], 12, 20),
    (&[("D6", 1), ("D5", 1)], 11, 10),
    (&[("D7", 1), ("D8", 1)], 11, 0),
    (&[("D7", 1), ("D2", 1)], 1, 70),
    (&[("D9", 1), ("D10", 1)], 7, 10),
    (&[("D12", 1), ("D11", 1)], 9, 0),
    (&[("D15", 1), ("D14", 1)], 9, 20),
    (&[("D13", 1), ("D10", 1)], 14, 50),
    (&[("D16", 2)], 13, 0),
    (&[("D16", 1)], 1, 1250),
];

/// Owned form of [`Row`] for comparisons.
pub type OwnedRow = (Vec<(String, u32)>, u32, u64);

pub fn result_rows(result: &reelcut::heuristics::SolveResult) -> Vec<OwnedRow> {
    result
        .patterns
        .iter()
        .map(|p| {
            (
                p.composition().iter().map(|(id, &m)| (id.to_string(), m)).collect(),
                p.reels(),
                p.waste_per_reel(),
            )
        })
        .collect()
}

pub fn expected_rows(rows: &[Row]) -> Vec<OwnedRow> {
    rows.iter()
        .map(|(c, r, w)| (c.iter().map(|(id, m)| (id.to_string(), *m)).collect(), *r, *w))
        .collect()
}

/// Random pool with at most `max_rolls` rolls: widths uniform in
/// `[width/10, width]`, counts 1 to 3.
pub fn random_pool(rng: &mut impl Rng, width: u64, max_rolls: u32) -> OrderPool {
    let mut orders = Vec::new();
    let mut rolls = 0;
    loop {
        let count = rng.gen_range(1..=3u32);
        if rolls + count > max_rolls || (rolls > 0 && rng.gen_bool(0.15)) {
            break;
        }
        rolls += count;
        let w = rng.gen_range(width.div_ceil(10)..=width);
        orders.push(Order::new(format!("o{}", orders.len()), w, count));
    }
    OrderPool::new(orders, DeckleSpec::new(width, 0, Unit::Mm).unwrap()).unwrap()
}

/// Fewest reels by enumerating every set partition of the rolls
/// (restricted growth strings). Shares no code with the library search.
pub fn partition_min_reels(widths: &[u64], capacity: u64) -> usize {
    fn go(widths: &[u64], k: usize, blocks: &mut Vec<u64>, capacity: u64, best: &mut usize) {
        if blocks.len() >= *best {
            return;
        }
        if k == widths.len() {
            *best = blocks.len();
            return;
        }
        for b in 0..blocks.len() {
            if blocks[b] + widths[k] <= capacity {
                blocks[b] += widths[k];
                go(widths, k + 1, blocks, capacity, best);
                blocks[b] -= widths[k];
            }
        }
        blocks.push(widths[k]);
        go(widths, k + 1, blocks, capacity, best);
        blocks.pop();
    }
    let mut best = widths.len() + 1;
    go(widths, 0, &mut Vec::new(), capacity, &mut best);
    if widths.is_empty() {
        0
    } else {
        best
    }
}

/// Fewest reels by trying every assignment of rolls to `k` labelled reels
/// for increasing `k`. Exponential and independent of the partition walk.
pub fn assignment_min_reels(widths: &[u64], capacity: u64) -> usize {
    let n = widths.len();
    for k in 1..=n {
        let total = (k as u64).pow(n as u32);
        for code in 0..total {
            let mut load = vec![0u64; k];
            let mut c = code;
            for &w in widths {
                load[(c % k as u64) as usize] += w;
                c /= k as u64;
            }
            if load.iter().all(|&l| l <= capacity) {
                return k;
            }
        }
    }
    0
}

pub fn roll_widths(pool: &OrderPool) -> Vec<u64> {
    pool.orders()
        .iter()
        .flat_map(|o| std::iter::repeat_n(o.width, o.count as usize))
        .collect()
}
