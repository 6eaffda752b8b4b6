use crate::cut::{Cut, VertexSet, WeightedCut};
use crate::error::{Error, Result};

/// Complete undirected graph with a dense symmetric weight matrix.
///
/// Absent edges are edges of weight zero. The graph is immutable once built.
#[derive(Clone, Debug, PartialEq)]
pub struct Graph {
    n: usize,
    weights: Vec<f64>,
}

impl Graph {
    /// Builds a graph from a row-major `n x n` matrix.
    pub fn from_matrix(n: usize, weights: Vec<f64>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!(
                "a graph needs at least 2 vertices, got {n}"
            )));
        }
        if weights.len() != n * n {
            return Err(Error::InvalidArgument(format!(
                "expected {} matrix entries, got {}",
                n * n,
                weights.len()
            )));
        }
        for i in 0..n {
            if weights[i * n + i] != 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "diagonal entry ({i},{i}) must be zero"
                )));
            }
            for j in (i + 1)..n {
                let w = weights[i * n + j];
                if !w.is_finite() || w < 0.0 {
                    return Err(Error::InvalidArgument(format!(
                        "weight ({i},{j}) = {w} is not a finite non-negative number"
                    )));
                }
                if w != weights[j * n + i] {
                    return Err(Error::InvalidArgument(format!(
                        "weight matrix is not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(Self { n, weights })
    }

    /// Builds a graph from a weight function evaluated on pairs `i < j`.
    pub fn from_fn<F: FnMut(usize, usize) -> f64>(n: usize, mut f: F) -> Result<Self> {
        let mut weights = vec![0.0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let w = f(i, j);
                weights[i * n + j] = w;
                weights[j * n + i] = w;
            }
        }
        Self::from_matrix(n, weights)
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize, f64)>>(n: usize, edges: I) -> Result<Self> {
        let mut weights = vec![0.0; n * n];
        for (u, v, w) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::InvalidArgument(format!("invalid edge ({u},{v})")));
            }
            weights[u * n + v] = w;
            weights[v * n + u] = w;
        }
        Self::from_matrix(n, weights)
    }

    /// Unit-weight complete graph.
    pub fn complete(n: usize) -> Result<Self> {
        Self::from_fn(n, |_, _| 1.0)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    #[inline]
    pub fn weight(&self, u: usize, v: usize) -> f64 {
        self.weights[u * self.n + v]
    }

    pub fn row(&self, u: usize) -> &[f64] {
        &self.weights[u * self.n..(u + 1) * self.n]
    }

    pub fn matrix(&self) -> &[f64] {
        &self.weights
    }

    pub fn total_weight(&self) -> f64 {
        self.edges().map(|(_, _, w)| w).sum()
    }

    /// Iterates over all pairs `i < j` with their weights.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.n).flat_map(move |i| ((i + 1)..self.n).map(move |j| (i, j, self.weight(i, j))))
    }

    /// Edge-wise sum of two graphs over the same vertex set.
    pub fn sum(&self, other: &Graph) -> Result<Graph> {
        if self.n != other.n {
            return Err(Error::InvalidArgument(format!(
                "vertex counts differ: {} vs {}",
                self.n, other.n
            )));
        }
        let weights = self
            .weights
            .iter()
            .zip(other.weights.iter())
            .map(|(a, b)| a + b)
            .collect();
        Graph::from_matrix(self.n, weights)
    }

    pub fn map_weights<F: Fn(f64) -> f64>(&self, f: F) -> Result<Graph> {
        Graph::from_fn(self.n, |i, j| f(self.weight(i, j)))
    }

    /// Relabels vertices: vertex `v` of `self` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.n {
            return Err(Error::InvalidArgument("permutation has wrong length".into()));
        }
        let mut weights = vec![0.0; self.n * self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                weights[perm[i] * self.n + perm[j]] = self.weight(i, j);
            }
        }
        Graph::from_matrix(self.n, weights)
    }

    pub fn weighted(&self, cut: Cut) -> Result<WeightedCut> {
        let weight = cut_weight(self, &cut)?;
        Ok(WeightedCut { cut, weight })
    }
}

/// Sum of the weights of edges with exactly one endpoint on each side.
pub fn cut_weight(g: &Graph, c: &Cut) -> Result<f64> {
    if c.n() != g.n() {
        return Err(Error::InvalidArgument(format!(
            "cut over {} vertices evaluated on a graph with {}",
            c.n(),
            g.n()
        )));
    }
    Ok(side_weight(g, c.side()))
}

/// Crossing weight of an arbitrary vertex subset; the summation order is fixed
/// (ascending inside vertex, then ascending outside vertex), so equal subsets
/// always give bit-identical results.
pub(crate) fn side_weight(g: &Graph, side: &VertexSet) -> f64 {
    let outside = side.complement();
    let mut total = 0.0;
    for i in side.iter() {
        let row = g.row(i);
        for j in outside.iter() {
            total += row[j];
        }
    }
    total
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Graph;

    /// K3 with w(0,1)=1, w(0,2)=2, w(1,2)=3.
    pub fn k3() -> Graph {
        Graph::from_edges(3, [(0, 1, 1.0), (0, 2, 2.0), (1, 2, 3.0)]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::k3;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn k3_cut_weights() {
        let g = k3();
        assert_eq!(cut_weight(&g, &Cut::from_bits("010").unwrap()).unwrap(), 4.0);
        assert_eq!(cut_weight(&g, &Cut::from_bits("001").unwrap()).unwrap(), 5.0);
    }

    #[test]
    fn k4_unit_balanced_cut() {
        let g = Graph::complete(4).unwrap();
        assert_eq!(cut_weight(&g, &Cut::from_bits("0011").unwrap()).unwrap(), 4.0);
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let g = k3();
        let c = Cut::from_bits("0011").unwrap();
        assert!(matches!(cut_weight(&g, &c), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn matrix_validation() {
        assert!(Graph::from_matrix(1, vec![0.0]).is_err());
        assert!(Graph::from_matrix(2, vec![0.0, 1.0, 2.0, 0.0]).is_err());
        assert!(Graph::from_matrix(2, vec![0.0, -1.0, -1.0, 0.0]).is_err());
        assert!(Graph::from_matrix(2, vec![1.0, 1.0, 1.0, 0.0]).is_err());
        assert!(Graph::from_matrix(2, vec![0.0, f64::NAN, f64::NAN, 0.0]).is_err());
        assert!(Graph::from_matrix(2, vec![0.0, 5.0, 5.0, 0.0]).is_ok());
    }

    #[test]
    fn sum_and_permute() {
        let g = k3();
        let s = g.sum(&g).unwrap();
        assert_eq!(s.weight(1, 2), 6.0);
        let p = g.permuted(&[2, 0, 1]).unwrap();
        assert_eq!(p.weight(2, 0), 1.0);
        assert_eq!(p.weight(0, 1), 3.0);
    }

    fn graph_and_cut() -> impl Strategy<Value = (Graph, Cut)> {
        (2usize..12).prop_flat_map(|n| {
            (
                proptest::collection::vec(0u32..1000, n * (n - 1) / 2),
                proptest::collection::vec(any::<bool>(), n),
            )
                .prop_filter_map("trivial cut", move |(ws, bits)| {
                    let mut it = ws.into_iter();
                    let g = Graph::from_fn(n, |_, _| it.next().unwrap() as f64).ok()?;
                    let side = VertexSet::from_vertices(
                        n,
                        bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i),
                    )
                    .ok()?;
                    let cut = Cut::canonicalize(side).ok()?;
                    Some((g, cut))
                })
        })
    }

    proptest! {
        #[test]
        fn cut_weight_is_symmetric((g, c) in graph_and_cut()) {
            let direct = cut_weight(&g, &c).unwrap();
            prop_assert_eq!(direct, side_weight(&g, &c.side().complement()));
            let brute: f64 = g.edges().filter(|&(i, j, _)| c.separates(i, j)).map(|(_, _, w)| w).sum();
            prop_assert_eq!(direct, brute);
        }
    }
}
