use crate::cut::{Cut, VertexSet, WeightedCut};
use crate::graph::{side_weight, Graph};

/// Deterministic global minimum cut (Stoer–Wagner, dense O(n³)).
///
/// Ties are broken towards lower super-vertex indices and earlier phases. The
/// returned weight is recomputed from the original graph so that it agrees
/// bit-for-bit with [`crate::graph::cut_weight`] on the same cut.
pub fn stoer_wagner_min_cut(g: &Graph) -> WeightedCut {
    let n = g.n();
    let mut w: Vec<f64> = g.matrix().to_vec();
    let mut groups: Vec<VertexSet> = (0..n).map(|v| VertexSet::singleton(n, v)).collect();
    let mut alive: Vec<usize> = (0..n).collect();

    let mut best: Option<(f64, VertexSet)> = None;
    let mut key = vec![0.0f64; n];
    let mut added = vec![false; n];

    while alive.len() > 1 {
        for &v in &alive {
            key[v] = 0.0;
            added[v] = false;
        }
        let mut prev = alive[0];
        added[prev] = true;
        for &v in &alive {
            key[v] = w[prev * n + v];
        }
        let mut last = prev;
        for _ in 1..alive.len() {
            let mut next = usize::MAX;
            for &v in &alive {
                if !added[v] && (next == usize::MAX || key[v] > key[next]) {
                    next = v;
                }
            }
            added[next] = true;
            prev = last;
            last = next;
            for &v in &alive {
                if !added[v] {
                    key[v] += w[next * n + v];
                }
            }
        }

        let phase_weight = key[last];
        if best.as_ref().is_none_or(|(bw, _)| phase_weight < *bw) {
            best = Some((phase_weight, groups[last].clone()));
        }

        // merge `last` into `prev`
        for &v in &alive {
            if v != prev && v != last {
                let merged = w[prev * n + v] + w[last * n + v];
                w[prev * n + v] = merged;
                w[v * n + prev] = merged;
            }
        }
        let moved = std::mem::replace(&mut groups[last], VertexSet::empty(n));
        groups[prev].union_with(&moved);
        alive.retain(|&v| v != last);
    }

    let (_, side) = best.expect("graph has at least two vertices");
    let weight = side_weight(g, &side);
    let cut = Cut::canonicalize(side).expect("phase cut separates a proper subset");
    WeightedCut { cut, weight }
}
