use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::cut::{Cut, VertexSet};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::seed;

pub const DEFAULT_PLANTED_CUT_COUNT: usize = 3;

const SCALING_SWEEPS: usize = 10_000;
const SCALING_TOLERANCE: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    /// Every edge uniform in `weight_range`.
    UniformRandom,
    /// Edges crossing a planted cut redrawn from `small_range`.
    PlantedRange,
    /// Edges crossing planted cuts rescaled so each planted cut weighs
    /// `planted_cut_cost`.
    PlantedFixedCost,
}

/// Parameters of a random complete graph; also the experiment spec file
/// format (JSON).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    pub n: usize,
    pub weight_range: [u64; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub small_range: Option<[u64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub planted_cut_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub planted_cut_cost: Option<u64>,
    #[serde(default)]
    pub seed: u64,
}

impl GeneratorSpec {
    pub fn uniform(n: usize, weight_range: [u64; 2], seed: u64) -> Self {
        Self {
            kind: GeneratorKind::UniformRandom,
            n,
            weight_range,
            small_range: None,
            planted_cut_count: None,
            planted_cut_cost: None,
            seed,
        }
    }

    pub fn planted_range(n: usize, small_range: [u64; 2], weight_range: [u64; 2], seed: u64) -> Self {
        Self {
            kind: GeneratorKind::PlantedRange,
            small_range: Some(small_range),
            ..Self::uniform(n, weight_range, seed)
        }
    }

    pub fn planted_fixed_cost(n: usize, cost: u64, weight_range: [u64; 2], seed: u64) -> Self {
        Self {
            kind: GeneratorKind::PlantedFixedCost,
            planted_cut_cost: Some(cost),
            ..Self::uniform(n, weight_range, seed)
        }
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        Self { seed, ..self.clone() }
    }

    pub fn is_planted(&self) -> bool {
        self.kind != GeneratorKind::UniformRandom
    }

    pub fn planted_count(&self) -> usize {
        self.planted_cut_count.unwrap_or(DEFAULT_PLANTED_CUT_COUNT)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidArgument(msg));
        if self.n < 2 {
            return bad(format!("n must be at least 2, got {}", self.n));
        }
        let check_range = |name: &str, [lo, hi]: [u64; 2]| {
            if lo > hi {
                Err(Error::InvalidArgument(format!("{name} [{lo}, {hi}] is empty")))
            } else {
                Ok(())
            }
        };
        check_range("weight_range", self.weight_range)?;
        match self.kind {
            GeneratorKind::UniformRandom => {
                if self.small_range.is_some() || self.planted_cut_count.is_some() || self.planted_cut_cost.is_some() {
                    return bad("uniform-random takes no planted-cut parameters".into());
                }
            }
            GeneratorKind::PlantedRange => {
                let Some(small) = self.small_range else {
                    return bad("planted-range requires small_range".into());
                };
                check_range("small_range", small)?;
                if self.planted_cut_cost.is_some() {
                    return bad("planted-range takes no planted_cut_cost".into());
                }
            }
            GeneratorKind::PlantedFixedCost => {
                if self.planted_cut_cost.is_none() {
                    return bad("planted-fixed-cost requires planted_cut_cost".into());
                }
                if self.small_range.is_some() {
                    return bad("planted-fixed-cost takes no small_range".into());
                }
            }
        }
        if self.is_planted() && self.planted_count() == 0 {
            return bad("planted_cut_count must be at least 1".into());
        }
        Ok(())
    }
}

/// Uniformly random canonical cuts (vertex 0 outside, other side non-empty).
pub fn draw_planted_cuts<R: Rng + ?Sized>(n: usize, count: usize, rng: &mut R) -> Vec<Cut> {
    (0..count)
        .map(|_| loop {
            let side = VertexSet::from_vertices(n, (1..n).filter(|_| rng.gen::<bool>()))
                .expect("vertices in range");
            if let Ok(cut) = Cut::canonicalize(side) {
                break cut;
            }
        })
        .collect()
}

fn draw(rng: &mut (impl Rng + ?Sized), [lo, hi]: [u64; 2]) -> f64 {
    rng.gen_range(lo..=hi) as f64
}

/// Draws edge weights for a spec given the planted structure.
pub fn draw_weights<R: Rng + ?Sized>(spec: &GeneratorSpec, planted: &[Cut], rng: &mut R) -> Result<Graph> {
    let n = spec.n;
    let mut w = vec![0.0; n * n];
    let crosses_planted = |i: usize, j: usize| planted.iter().any(|c| c.separates(i, j));
    for i in 0..n {
        for j in (i + 1)..n {
            w[i * n + j] = draw(rng, spec.weight_range);
        }
    }
    match spec.kind {
        GeneratorKind::UniformRandom => {}
        GeneratorKind::PlantedRange => {
            let small = spec.small_range.expect("validated");
            for i in 0..n {
                for j in (i + 1)..n {
                    if crosses_planted(i, j) {
                        w[i * n + j] = draw(rng, small);
                    }
                }
            }
        }
        GeneratorKind::PlantedFixedCost => {
            let cost = spec.planted_cut_cost.expect("validated") as f64;
            scale_to_cost(n, &mut w, planted, cost, spec.weight_range[0])?;
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            w[j * n + i] = w[i * n + j];
        }
    }
    Graph::from_matrix(n, w)
}

/// Rescales crossing edges until every planted cut weighs `cost`
/// (iterative proportional scaling over the planted cuts).
fn scale_to_cost(n: usize, w: &mut [f64], planted: &[Cut], cost: f64, lo: u64) -> Result<()> {
    let crossing: Vec<Vec<usize>> = planted
        .iter()
        .map(|c| {
            (0..n)
                .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
                .filter(|&(i, j)| c.separates(i, j))
                .map(|(i, j)| i * n + j)
                .collect()
        })
        .collect();
    if cost == 0.0 {
        if lo > 0 {
            return Err(Error::Generation(
                "planted cut cost 0 is incompatible with positive edge weights".into(),
            ));
        }
        for idx in crossing.iter().flatten() {
            w[*idx] = 0.0;
        }
        return Ok(());
    }
    for _ in 0..SCALING_SWEEPS {
        let mut worst: f64 = 0.0;
        for edges in &crossing {
            let total: f64 = edges.iter().map(|&e| w[e]).sum();
            if total <= 0.0 {
                return Err(Error::Generation(
                    "a planted cut has no positive crossing weight to scale".into(),
                ));
            }
            worst = worst.max((total - cost).abs() / cost);
            let factor = cost / total;
            for &e in edges {
                w[e] *= factor;
            }
        }
        if worst <= SCALING_TOLERANCE {
            return Ok(());
        }
    }
    Err(Error::Generation(
        "planted cut costs could not be reached simultaneously".into(),
    ))
}

/// One graph; deterministic per `spec.seed`.
pub fn generate(spec: &GeneratorSpec) -> Result<Graph> {
    spec.validate()?;
    let mut rng = seed::rng(spec.seed);
    let planted = if spec.is_planted() {
        draw_planted_cuts(spec.n, spec.planted_count(), &mut rng)
    } else {
        Vec::new()
    };
    draw_weights(spec, &planted, &mut rng)
}

/// Three instances sharing one planted cut structure.
#[derive(Clone, Debug)]
pub struct SimilarTriple {
    pub graphs: [Graph; 3],
    pub planted: Vec<Cut>,
}

/// Draws the planted cuts once from `triple_seed`, then the weights of each
/// of the three graphs from its own stream.
pub fn generate_similar_triple(spec: &GeneratorSpec, triple_seed: u64) -> Result<SimilarTriple> {
    spec.validate()?;
    if !spec.is_planted() {
        return Err(Error::InvalidArgument(
            "similar triples need a planted generator kind".into(),
        ));
    }
    let planted = draw_planted_cuts(spec.n, spec.planted_count(), &mut seed::rng(seed::mix(triple_seed, 0)));
    let graph = |i: u64| draw_weights(spec, &planted, &mut seed::rng(seed::mix(triple_seed, i)));
    Ok(SimilarTriple {
        graphs: [graph(1)?, graph(2)?, graph(3)?],
        planted,
    })
}

/// The three instances of experiment triple `triple_seed`: a similar triple
/// for planted kinds, independent graphs otherwise.
pub fn generate_triple(spec: &GeneratorSpec, triple_seed: u64) -> Result<[Graph; 3]> {
    if spec.is_planted() {
        return Ok(generate_similar_triple(spec, triple_seed)?.graphs);
    }
    let graph = |i: u64| generate(&spec.with_seed(seed::mix(triple_seed, i)));
    Ok([graph(1)?, graph(2)?, graph(3)?])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::{brute_force_approximation_set, stoer_wagner_min_cut};
    use crate::graph::cut_weight;

    #[test]
    fn uniform_weights_in_range_with_expected_mean() {
        let mut total = 0.0;
        let mut count = 0usize;
        let mut s = 0;
        while count < 100_000 {
            let g = generate(&GeneratorSpec::uniform(15, [0, 255], s)).unwrap();
            for (_, _, w) in g.edges() {
                assert!((0.0..=255.0).contains(&w) && w.fract() == 0.0);
                total += w;
                count += 1;
            }
            s += 1;
        }
        let mean = total / count as f64;
        assert!((mean - 127.5).abs() <= 3.0, "mean {mean}");
    }

    #[test]
    fn planted_range_crossing_edges_are_small() {
        let spec = GeneratorSpec::planted_range(15, [0, 31], [0, 255], 9);
        let triple = generate_similar_triple(&spec, 4).unwrap();
        assert_eq!(triple.planted.len(), 3);
        for g in &triple.graphs {
            for (i, j, w) in g.edges() {
                if triple.planted.iter().any(|c| c.separates(i, j)) {
                    assert!(w <= 31.0);
                }
            }
        }
    }

    #[test]
    fn planted_fixed_cost_hits_the_cost() {
        for s in 0..20 {
            let spec = GeneratorSpec::planted_fixed_cost(15, 240, [0, 255], s);
            let triple = generate_similar_triple(&spec, s).unwrap();
            for g in &triple.graphs {
                for c in &triple.planted {
                    let w = cut_weight(g, c).unwrap();
                    assert!((w - 240.0).abs() <= 240.0 * 1e-9, "weight {w}");
                }
            }
        }
    }

    #[test]
    fn single_planted_cut_with_fixed_cost() {
        let spec = GeneratorSpec {
            planted_cut_count: Some(1),
            ..GeneratorSpec::planted_fixed_cost(10, 500, [1, 255], 3)
        };
        let mut rng = seed::rng(spec.seed);
        let planted = draw_planted_cuts(10, 1, &mut rng);
        let g = draw_weights(&spec, &planted, &mut rng).unwrap();
        assert!((cut_weight(&g, &planted[0]).unwrap() - 500.0).abs() < 1e-9);
    }

    #[test]
    fn triples_share_structure_but_not_weights() {
        let spec = GeneratorSpec::planted_range(12, [0, 31], [0, 255], 0);
        let a = generate_similar_triple(&spec, 17).unwrap();
        let b = generate_similar_triple(&spec, 17).unwrap();
        assert_eq!(a.planted, b.planted);
        assert_eq!(a.graphs, b.graphs);
        assert_ne!(a.graphs[0], a.graphs[1]);
        assert_ne!(a.graphs[1], a.graphs[2]);
    }

    #[test]
    fn planted_cuts_enter_every_approximation_set_at_their_breakpoint() {
        let spec = GeneratorSpec::planted_range(8, [0, 31], [0, 255], 0);
        for t in 0..10 {
            let triple = generate_similar_triple(&spec, t).unwrap();
            for g in &triple.graphs {
                let lambda = stoer_wagner_min_cut(g).weight;
                for c in &triple.planted {
                    let w = cut_weight(g, c).unwrap();
                    let rho = if lambda > 0.0 { (w / lambda).max(1.0) } else { continue };
                    let set = brute_force_approximation_set(g, rho).unwrap();
                    assert!(set.contains(c));
                }
            }
        }
    }

    #[test]
    fn impossible_specs_are_rejected() {
        let zero_cost = GeneratorSpec::planted_fixed_cost(6, 0, [5, 10], 0);
        assert!(matches!(generate(&zero_cost), Err(Error::Generation(_))));
        let all_zero = GeneratorSpec::planted_fixed_cost(6, 100, [0, 0], 0);
        assert!(matches!(generate(&all_zero), Err(Error::Generation(_))));
        assert!(generate(&GeneratorSpec::uniform(6, [9, 3], 0)).is_err());
        let mut spec = GeneratorSpec::planted_range(6, [0, 3], [0, 9], 0);
        spec.small_range = None;
        assert!(generate(&spec).is_err());
        let mut spec = GeneratorSpec::uniform(6, [0, 9], 0);
        spec.planted_cut_cost = Some(3);
        assert!(generate(&spec).is_err());
        assert!(generate_similar_triple(&GeneratorSpec::uniform(6, [0, 9], 0), 0).is_err());
    }

    #[test]
    fn zero_cost_with_zero_lower_bound() {
        let spec = GeneratorSpec::planted_fixed_cost(6, 0, [0, 10], 2);
        let triple = generate_similar_triple(&spec, 1).unwrap();
        for c in &triple.planted {
            assert_eq!(cut_weight(&triple.graphs[0], c).unwrap(), 0.0);
        }
    }

    #[test]
    fn spec_json_round_trip() {
        let spec = GeneratorSpec::planted_range(15, [0, 31], [0, 255], 42);
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(serde_json::from_str::<GeneratorSpec>(&text).unwrap(), spec);
        let parsed: GeneratorSpec = serde_json::from_str(
            r#"{"kind":"planted-fixed-cost","n":15,"weight_range":[0,255],"planted_cut_cost":240}"#,
        )
        .unwrap();
        assert_eq!(parsed.seed, 0);
        assert_eq!(parsed.planted_count(), 3);
    }
}
