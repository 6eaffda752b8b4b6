use crate::cut::{Cut, VertexSet};
use crate::enumerate::ApproximationSet;

/// The four composed sets `X∩Y`, `X−Y`, `Y−X`, `V−X−Y`. Any of them may
/// be empty.
pub fn composed_sets(a: &VertexSet, b: &VertexSet) -> [VertexSet; 4] {
    [
        a.intersection(b),
        a.difference(b),
        b.difference(a),
        a.union(b).complement(),
    ]
}

/// [`composed_sets`] of the canonical sides of `x` and `y`. Choosing the other
/// side of either cut permutes the four sets.
pub fn composed_cuts(x: &Cut, y: &Cut) -> [VertexSet; 4] {
    composed_sets(x.side(), y.side())
}

/// Whether all four composed sets are non-empty. The answer does not depend
/// on which side represents each cut.
pub fn crossing(x: &Cut, y: &Cut) -> bool {
    composed_cuts(x, y).iter().all(|z| !z.is_empty())
}

/// Crossing pairs of `set` with fewer than two composed cuts inside `set`.
pub fn crossing_closure_violations(set: &ApproximationSet) -> Vec<(Cut, Cut)> {
    let members: Vec<&Cut> = set.cuts().collect();
    let mut violations = Vec::new();
    for (i, x) in members.iter().enumerate() {
        for y in &members[i + 1..] {
            if !crossing(x, y) {
                continue;
            }
            let inside = composed_cuts(x, y)
                .into_iter()
                .filter(|z| Cut::canonicalize(z.clone()).is_ok_and(|c| set.contains(&c)))
                .count();
            if inside < 2 {
                violations.push(((*x).clone(), (*y).clone()));
            }
        }
    }
    violations
}
