use crate::cut::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Multigraph produced by edge contractions, with parallel edges merged.
///
/// Super-vertices are indexed `0..count()`. Contracting `(u, v)` keeps the
/// merged super-vertex at `min(u, v)` and moves the last super-vertex into the
/// slot of `max(u, v)`.
#[derive(Clone, Debug)]
pub struct ContractionState {
    n: usize,
    count: usize,
    // Row-major, stride `n`; only the leading `count x count` block is live.
    weights: Vec<f64>,
    origins: Vec<VertexSet>,
}

impl ContractionState {
    pub fn new(g: &Graph) -> Self {
        let n = g.n();
        Self {
            n,
            count: n,
            weights: g.matrix().to_vec(),
            origins: (0..n).map(|v| VertexSet::singleton(n, v)).collect(),
        }
    }

    /// Number of original vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Current number of super-vertices.
    pub fn count(&self) -> usize {
        self.count
    }

    #[inline]
    pub fn weight(&self, u: usize, v: usize) -> f64 {
        self.weights[u * self.n + v]
    }

    /// Original vertices merged into super-vertex `u`.
    pub fn origin(&self, u: usize) -> &VertexSet {
        &self.origins[u]
    }

    pub fn origins(&self) -> &[VertexSet] {
        &self.origins[..self.count]
    }

    /// Sum of all inter-super-vertex weights.
    pub fn total_weight(&self) -> f64 {
        let mut total = 0.0;
        for i in 0..self.count {
            for j in (i + 1)..self.count {
                total += self.weight(i, j);
            }
        }
        total
    }

    /// Merges super-vertices `u` and `v`; the edge between them becomes a
    /// self-loop and is dropped.
    pub fn contract_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u == v {
            return Err(Error::InvalidArgument(format!(
                "cannot contract super-vertex {u} with itself"
            )));
        }
        if u >= self.count || v >= self.count {
            return Err(Error::InvalidArgument(format!(
                "super-vertex out of range ({u},{v}) with {} alive",
                self.count
            )));
        }
        let (keep, gone) = if u < v { (u, v) } else { (v, u) };
        let n = self.n;
        for x in 0..self.count {
            if x == keep || x == gone {
                continue;
            }
            let merged = self.weights[keep * n + x] + self.weights[gone * n + x];
            self.weights[keep * n + x] = merged;
            self.weights[x * n + keep] = merged;
        }
        let origin = std::mem::replace(&mut self.origins[gone], VertexSet::empty(n));
        self.origins[keep].union_with(&origin);

        let last = self.count - 1;
        if gone != last {
            for x in 0..self.count {
                let w = self.weights[last * n + x];
                self.weights[gone * n + x] = w;
                self.weights[x * n + gone] = w;
            }
            self.weights[gone * n + gone] = 0.0;
            self.origins.swap(gone, last);
        }
        for x in 0..self.count {
            self.weights[last * n + x] = 0.0;
            self.weights[x * n + last] = 0.0;
        }
        self.weights[keep * n + keep] = 0.0;
        self.count -= 1;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cut::Cut;
    use crate::graph::{cut_weight, fixtures::k3};
    use proptest::prelude::*;

    #[test]
    fn k3_contract_1_2() {
        let mut s = ContractionState::new(&k3());
        s.contract_edge(1, 2).unwrap();
        assert_eq!(s.count(), 2);
        assert_eq!(s.weight(0, 1), 3.0);
        assert_eq!(s.origin(1).to_bits(), "011");
    }

    #[test]
    fn k4_unit_contract_0_1() {
        let mut s = ContractionState::new(&Graph::complete(4).unwrap());
        s.contract_edge(0, 1).unwrap();
        assert_eq!(s.count(), 3);
        // super-vertex 0 = {0,1}; slot 1 now holds original vertex 3.
        assert_eq!(s.origin(0).to_bits(), "1100");
        assert_eq!(s.origin(1).to_bits(), "0001");
        assert_eq!(s.origin(2).to_bits(), "0010");
        assert_eq!(s.weight(0, 2), 2.0);
        assert_eq!(s.weight(0, 1), 2.0);
        assert_eq!(s.weight(1, 2), 1.0);
    }

    #[test]
    fn self_contraction_is_rejected() {
        let mut s = ContractionState::new(&k3());
        assert!(matches!(s.contract_edge(1, 1), Err(Error::InvalidArgument(_))));
    }

    fn induced_cut_weight(s: &ContractionState, side: &[bool]) -> f64 {
        let mut total = 0.0;
        for i in 0..s.count() {
            for j in (i + 1)..s.count() {
                if side[i] != side[j] {
                    total += s.weight(i, j);
                }
            }
        }
        total
    }

    proptest! {
        #[test]
        fn contraction_preserves_crossing_weights(
            n in 3usize..10,
            seed_weights in proptest::collection::vec(0u32..100, 45),
            pairs in proptest::collection::vec((0usize..10, 0usize..10), 0..8),
            side_bits in proptest::collection::vec(any::<bool>(), 10),
        ) {
            let mut it = seed_weights.into_iter();
            let g = Graph::from_fn(n, |_, _| it.next().unwrap() as f64).unwrap();
            let mut s = ContractionState::new(&g);
            let total_before = s.total_weight();
            let mut internal = 0.0;
            for (a, b) in pairs {
                if s.count() <= 2 { break; }
                let (a, b) = (a % s.count(), b % s.count());
                if a == b { continue; }
                internal += s.weight(a, b);
                s.contract_edge(a, b).unwrap();
            }
            prop_assert_eq!(s.total_weight() + internal, total_before);

            // origin sets partition the vertex set
            let mut seen = VertexSet::empty(n);
            for o in s.origins() {
                prop_assert!(o.intersection(&seen).is_empty());
                seen.union_with(o);
            }
            prop_assert!(seen.is_full());

            let side: Vec<bool> = side_bits[..s.count()].to_vec();
            prop_assume!(side.iter().any(|&b| b) && side.iter().any(|&b| !b));
            let mut verts = VertexSet::empty(n);
            for (i, &b) in side.iter().enumerate() {
                if b { verts.union_with(s.origin(i)); }
            }
            let cut = Cut::canonicalize(verts).unwrap();
            prop_assert_eq!(induced_cut_weight(&s, &side), cut_weight(&g, &cut).unwrap());
        }
    }
}
