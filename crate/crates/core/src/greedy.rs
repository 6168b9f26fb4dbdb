//! Greedy baseline: one edge per colour, taken in ascending colour order.
//!
//! When every colour class has at least `2n` edges (`n` colours), the previously chosen
//! `k < n` edges block at most `2k` edges of the next class, so greedy always succeeds.

use crate::graph::ColouredBipartiteMultigraph;
use crate::matching::RainbowMatching;

/// Scans colours by ascending id and takes the first edge of each class (input order) that is
/// disjoint from everything already chosen.
pub fn greedy_rainbow_matching(g: &ColouredBipartiteMultigraph) -> RainbowMatching {
    let mut used_left = vec![false; g.left_size()];
    let mut used_right = vec![false; g.right_size()];
    let mut m = RainbowMatching::empty();
    for c in 0..g.colour_count() {
        if let Some(e) = g.colour_class(c).find(|e| !used_left[e.x] && !used_right[e.y]) {
            used_left[e.x] = true;
            used_right[e.y] = true;
            m.push(e);
        }
    }
    m
}
