//! Filling the residual of a reel with partner rolls.
//!
//! Given candidate widths (widest first) with an upper bound on how many
//! rolls of each may be used, [`best_fill`] picks multiplicities that
//! maximise the filled width without exceeding the residual. Among equally
//! good fills it returns the lexicographically greatest multiplicity vector,
//! i.e. the one a widest-first depth-first search would reach first.
//!
//! The search is a bounded subset-sum over suffixes of the candidate list:
//! `reach[k][c]` says whether exactly `c` can be filled using candidates
//! `k..`. Each row costs `O(capacity)` via a sliding window per residue
//! class, so a fill costs `O(candidates * capacity / g)` where `g` is the
//! gcd of the candidate widths.

/// Table cells beyond which the exact fill falls back to greedy largest-fit.
const MAX_CELLS: usize = 1 << 24;

/// One partner candidate: roll width and how many rolls may still be placed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Candidate {
    pub width: u64,
    pub bound: u32,
}

/// Multiplicities (parallel to `candidates`) of a minimum-waste fill of `capacity`.
pub(crate) fn best_fill(candidates: &[Candidate], capacity: u64) -> Vec<u32> {
    let usable: Vec<usize> = (0..candidates.len())
        .filter(|&i| candidates[i].bound > 0 && candidates[i].width <= capacity)
        .collect();
    let mut take = vec![0u32; candidates.len()];
    if usable.is_empty() {
        return take;
    }
    let g = usable.iter().fold(0, |g, &i| gcd(g, candidates[i].width));
    let cap = (capacity / g) as usize;
    if (usable.len() + 1).saturating_mul(cap + 1) > MAX_CELLS {
        return greedy_fill(candidates, capacity);
    }

    let widths: Vec<usize> = usable.iter().map(|&i| (candidates[i].width / g) as usize).collect();
    let bounds: Vec<usize> = usable
        .iter()
        .zip(&widths)
        .map(|(&i, &w)| (candidates[i].bound as usize).min(cap / w))
        .collect();

    let n = usable.len();
    let mut reach = vec![vec![false; cap + 1]; n + 1];
    reach[n][0] = true;
    for k in (0..n).rev() {
        let (w, b) = (widths[k], bounds[k]);
        let (head, tail) = reach.split_at_mut(k + 1);
        let (row, next) = (&mut head[k], &tail[0]);
        for residue in 0..w.min(cap + 1) {
            // count of true cells among next[c], next[c-w], ..., next[c-b*w]
            let mut window = 0usize;
            let mut steps = 0usize;
            let mut c = residue;
            while c <= cap {
                window += usize::from(next[c]);
                if steps > b {
                    window -= usize::from(next[c - (b + 1) * w]);
                }
                row[c] = window > 0;
                steps += 1;
                c += w;
            }
        }
    }

    let mut target = (0..=cap).rev().find(|&c| reach[0][c]).unwrap_or(0);
    for k in 0..n {
        let m = (0..=bounds[k].min(target / widths[k]))
            .rev()
            .find(|&m| reach[k + 1][target - m * widths[k]])
            .expect("reachable target must decompose");
        take[usable[k]] = m as u32;
        target -= m * widths[k];
    }
    take
}

/// Repeatedly adds the widest candidate that still fits.
pub(crate) fn greedy_fill(candidates: &[Candidate], mut capacity: u64) -> Vec<u32> {
    candidates
        .iter()
        .map(|c| {
            let m = capacity.checked_div(c.width).unwrap_or(0).min(u64::from(c.bound));
            capacity -= m * c.width;
            m as u32
        })
        .collect()
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
