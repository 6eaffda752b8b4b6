//! Exact expected intersection size of two random approximation sets.
//!
//! The random model counts families of `x` pairwise non-crossing cuts as set
//! partitions of the `n` vertices into `x + 1` blocks (`S(n, x+1)` of them).
//! For approximation-set families `F_k` and `F_l`,
//!
//! ```text
//! Es(k, l) = 1/(|F_k| |F_l|) · Σ_{s ∈ S} |{F ∈ F_k : s ∈ F}| · |{F ∈ F_l : s ∈ F}|
//! ```
//!
//! which evaluates to
//!
//! ```text
//!            Σ_{i=1}^{n-1} C(n,i) · I(i,k) · I(i,l)
//! ───────────────────────────────────────────────────────────────
//! S(n,k+1) · S(n,l+1) · (2^{k+1} - 2) · (2^{l+1} - 2)
//!
//! I(i,x) = Σ_{j=0}^{x-1} S(i, j+1) · S(n-i, x-j)
//! ```
//!
//! All arithmetic is exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest instance for which tables are built.
pub const MAX_TABLE_SIZE: usize = 10_000;

/// Which inner sum feeds the `l` factor.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EsVariant {
    /// `I(i,l)` with `S(i, j+1)`, mirroring the `k` factor.
    #[default]
    Symmetric,
    /// `Σ_j S(i, l+1) · S(n-i, l-j)`, taken literally.
    AsPrinted,
}

#[derive(Clone, Debug)]
pub struct CombinatoricsTables {
    n: usize,
    binomials: Vec<BigInt>,
    // stirling[a][b] for 0 <= b <= a <= n
    stirling: Vec<Vec<BigInt>>,
    // inner[i][x] for 1 <= i <= n-1, 1 <= x <= n (index 0 unused)
    inner: Vec<Vec<BigInt>>,
}

/// Binomials, Stirling numbers of the second kind, and the inner sums of the
/// expectation formula for instance size `n`.
pub fn build_tables(n: usize) -> Result<CombinatoricsTables> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("tables need n >= 2, got {n}")));
    }
    if n > MAX_TABLE_SIZE {
        return Err(Error::ResourceLimit(format!(
            "combinatorics tables for n = {n} exceed the limit of {MAX_TABLE_SIZE}"
        )));
    }

    let mut binomials = Vec::with_capacity(n + 1);
    binomials.push(BigInt::one());
    for i in 0..n {
        let next: BigInt = &binomials[i] * BigInt::from(n - i) / BigInt::from(i + 1);
        binomials.push(next);
    }

    let mut stirling: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    stirling.push(vec![BigInt::one()]);
    for a in 1..=n {
        let prev = &stirling[a - 1];
        let mut row = vec![BigInt::zero(); a + 1];
        for b in 1..=a {
            let carried = if b < a { &prev[b] * BigInt::from(b) } else { BigInt::zero() };
            row[b] = carried + &prev[b - 1];
        }
        stirling.push(row);
    }

    let zero = BigInt::zero();
    let mut inner = vec![Vec::new(); n];
    for (i, row) in inner.iter_mut().enumerate().skip(1) {
        *row = (0..=n)
            .map(|x| {
                (0..x)
                    .map(|j| stirling_at(&stirling, &zero, i, j + 1) * stirling_at(&stirling, &zero, n - i, x - j))
                    .fold(BigInt::zero(), |acc, t| acc + t)
            })
            .collect();
    }

    Ok(CombinatoricsTables {
        n,
        binomials,
        stirling,
        inner,
    })
}

fn stirling_at<'a>(table: &'a [Vec<BigInt>], zero: &'a BigInt, a: usize, b: usize) -> &'a BigInt {
    table[a].get(b).unwrap_or(zero)
}

/// An expected intersection size, flagged when the exact formula does not
/// apply and the `k·l / (2^{n-1} - 1)` ratio is used instead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub value: BigRational,
    pub fallback: bool,
}

impl CombinatoricsTables {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn binomial(&self, i: usize) -> BigInt {
        self.binomials.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// `S(a, b)` for `a <= n`.
    pub fn stirling(&self, a: usize, b: usize) -> BigInt {
        assert!(a <= self.n, "Stirling table holds rows up to {}", self.n);
        if b > a {
            BigInt::zero()
        } else {
            self.stirling[a][b].clone()
        }
    }

    /// `I(i, x)`.
    pub fn inner_sum(&self, i: usize, x: usize) -> BigInt {
        assert!((1..self.n).contains(&i) && x <= self.n);
        self.inner[i][x].clone()
    }

    /// Number of cuts of the complete graph, `2^{n-1} - 1`.
    pub fn cut_space_size(&self) -> BigInt {
        (BigInt::one() << (self.n - 1)) - 1
    }

    fn printed_inner_sum(&self, i: usize, l: usize) -> BigInt {
        let lead = self.stirling(i, l + 1);
        let tail = (0..l)
            .map(|j| self.stirling(self.n - i, l - j))
            .fold(BigInt::zero(), |acc, t| acc + t);
        lead * tail
    }

    /// `Es(k, l)`, with the lower-bound ratio when `k + 1 > n` or `l + 1 > n`.
    pub fn expected_intersection(&self, k: usize, l: usize) -> Result<Expectation> {
        self.expected_intersection_with(k, l, EsVariant::Symmetric)
    }

    pub fn expected_intersection_with(&self, k: usize, l: usize, variant: EsVariant) -> Result<Expectation> {
        if k == 0 || l == 0 {
            return Err(Error::InvalidArgument(format!(
                "approximation set sizes must be positive, got ({k}, {l})"
            )));
        }
        let n = self.n;
        if k + 1 > n || l + 1 > n {
            return Ok(Expectation {
                value: BigRational::new(BigInt::from(k) * BigInt::from(l), self.cut_space_size()),
                fallback: true,
            });
        }
        let mut numerator = BigInt::zero();
        for i in 1..n {
            let second = match variant {
                EsVariant::Symmetric => self.inner[i][l].clone(),
                EsVariant::AsPrinted => self.printed_inner_sum(i, l),
            };
            numerator += &self.binomials[i] * &self.inner[i][k] * second;
        }
        let ordering = |x: usize| (BigInt::one() << (x + 1)) - 2;
        let denominator =
            &self.stirling[n][k + 1] * &self.stirling[n][l + 1] * ordering(k) * ordering(l);
        Ok(Expectation {
            value: BigRational::new(numerator, denominator),
            fallback: false,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rational(num: i64, den: i64) -> BigRational {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    /// Counts set partitions of `n` labelled elements into `k` blocks via
    /// restricted growth strings.
    fn partitions_by_enumeration(n: usize, k: usize) -> u64 {
        fn go(pos: usize, n: usize, max_block: usize, k: usize, acc: &mut u64) {
            if pos == n {
                if max_block == k {
                    *acc += 1;
                }
                return;
            }
            if max_block + (n - pos) < k {
                return;
            }
            for b in 0..=max_block.min(k - 1) {
                let next_max = if b == max_block { max_block + 1 } else { max_block };
                go(pos + 1, n, next_max, k, acc);
            }
        }
        let mut acc = 0;
        if k > 0 {
            go(0, n, 0, k, &mut acc);
        }
        acc
    }

    #[test]
    fn stirling_values_against_partition_enumeration() {
        let t = build_tables(10).unwrap();
        assert_eq!(partitions_by_enumeration(4, 2), 7);
        assert_eq!(partitions_by_enumeration(10, 5), 42525);
        assert_eq!(t.stirling(4, 2), BigInt::from(7));
        assert_eq!(t.stirling(10, 5), BigInt::from(42525));
        for a in 1..=9 {
            for b in 1..=a {
                assert_eq!(t.stirling(a, b), BigInt::from(partitions_by_enumeration(a, b)));
            }
        }
    }

    #[test]
    fn stirling_boundary_values_and_recurrence() {
        let t = build_tables(25).unwrap();
        assert_eq!(t.stirling(0, 0), BigInt::one());
        for a in 1..=25 {
            assert_eq!(t.stirling(a, 0), BigInt::zero());
            assert_eq!(t.stirling(a, a), BigInt::one());
            assert_eq!(t.stirling(a, 1), BigInt::one());
            for b in 1..=a {
                assert_eq!(
                    t.stirling(a, b),
                    BigInt::from(b) * t.stirling(a - 1, b) + t.stirling(a - 1, b - 1)
                );
            }
        }
    }

    #[test]
    fn binomials() {
        let t = build_tables(5).unwrap();
        assert_eq!(t.binomial(2), BigInt::from(10));
        let t = build_tables(40).unwrap();
        for i in 0..40 {
            assert_eq!(t.binomial(i + 1) * BigInt::from(i + 1), t.binomial(i) * BigInt::from(40 - i));
        }
    }

    #[test]
    fn large_stirling_numbers_do_not_overflow() {
        let t = build_tables(50).unwrap();
        assert!(t.stirling(50, 25) > BigInt::from(u128::MAX));
    }

    #[test]
    fn es_one_one_for_four_vertices() {
        let t = build_tables(4).unwrap();
        let es = t.expected_intersection(1, 1).unwrap();
        assert_eq!(es.value, rational(1, 14));
        assert!(!es.fallback);
    }

    #[test]
    fn es_one_one_closed_form() {
        for n in 4..=12usize {
            let t = build_tables(n).unwrap();
            let expected = rational(1, 2 * ((1i64 << (n - 1)) - 1));
            assert_eq!(t.expected_intersection(1, 1).unwrap().value, expected, "n = {n}");
        }
    }

    #[test]
    fn fallback_beyond_table_range() {
        let t = build_tables(5).unwrap();
        let es = t.expected_intersection(5, 2).unwrap();
        assert!(es.fallback);
        assert_eq!(es.value, rational(10, 15));
        assert!(!t.expected_intersection(4, 4).unwrap().fallback);
    }

    #[test]
    fn empty_sets_are_rejected() {
        let t = build_tables(5).unwrap();
        assert!(t.expected_intersection(0, 2).is_err());
    }

    #[test]
    fn printed_variant_is_asymmetric() {
        let t = build_tables(8).unwrap();
        let a = t.expected_intersection_with(2, 3, EsVariant::AsPrinted).unwrap();
        let b = t.expected_intersection_with(3, 2, EsVariant::AsPrinted).unwrap();
        assert_ne!(a.value, b.value);
        let a = t.expected_intersection(2, 3).unwrap();
        let b = t.expected_intersection(3, 2).unwrap();
        assert_eq!(a.value, b.value);
    }

    #[test]
    fn table_guards() {
        assert!(matches!(build_tables(1), Err(Error::InvalidArgument(_))));
        assert!(matches!(build_tables(MAX_TABLE_SIZE + 1), Err(Error::ResourceLimit(_))));
    }
}
