//! Partitions in an `(n-k) × k` box and the partition form of the primed
//! q-binomial expansion.
//!
//! A word `ω ∈ Ω_{n,k}` maps to the partition whose parts are, for each
//! zero of `ω`, the number of ones to its left. This is the lattice-path
//! bijection with the box, and `|λ| = inv(ω)`.

use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::LaurentPoly;
use crate::words::{monomial_times_binomial_power, pair_word, word_stats, Word, WordStats};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts must be positive and weakly decreasing: {0:?}")]
    NotAPartition(Vec<u32>),
    #[error("partition {partition} does not fit in a {rows} x {cols} box")]
    OutsideBox { partition: String, rows: usize, cols: usize },
    #[error("need 0 <= k <= n, got n = {n}, k = {k}")]
    BadShape { n: usize, k: usize },
}

/// Weakly decreasing sequence of positive parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self, PartitionError> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if ok {
            Ok(Partition { parts })
        } else {
            Err(PartitionError::NotAPartition(parts))
        }
    }

    /// Sorts the parts and drops zeros.
    pub fn from_unsorted(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// `|λ|`.
    pub fn size(&self) -> u64 {
        self.parts.iter().map(|&p| p as u64).sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn fits_in_box(&self, rows: usize, cols: usize) -> bool {
        self.parts.len() <= rows && self.parts.first().is_none_or(|&p| p as usize <= cols)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width).map(|j| self.parts.iter().filter(|&&p| p >= j).count() as u32).collect();
        Partition { parts }
    }

    /// `n(λ) = Σ (i-1) λ_i`.
    pub fn n_of(&self) -> u64 {
        self.parts.iter().enumerate().map(|(i, &p)| i as u64 * p as u64).sum()
    }

    /// Multiplicity of the part value `v`.
    pub fn multiplicity(&self, v: u32) -> usize {
        self.parts.iter().filter(|&&p| p == v).count()
    }

    fn distinct_parts(&self) -> impl Iterator<Item = u32> + '_ {
        let mut last = None;
        self.parts.iter().copied().filter(move |&p| {
            let fresh = last != Some(p);
            last = Some(p);
            fresh
        })
    }
}

impl fmt::Display for Partition {
    /// `331` style when every part is a single digit, `(10,2)` otherwise,
    /// and `∅` for the empty partition.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("∅");
        }
        if self.parts.iter().all(|&p| p < 10) {
            for p in &self.parts {
                write!(f, "{p}")?;
            }
            Ok(())
        } else {
            let joined: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", joined.join(","))
        }
    }
}

/// The partition of `w`: one part per zero, equal to the number of ones
/// before that zero.
pub fn word_to_partition(w: &Word) -> Partition {
    let mut ones = 0u32;
    let mut parts = Vec::new();
    for &b in w.letters() {
        if b {
            ones += 1;
        } else {
            parts.push(ones);
        }
    }
    Partition::from_unsorted(parts)
}

/// Inverse of [`word_to_partition`] on the `(n-k) × k` box.
pub fn partition_to_word(lambda: &Partition, n: usize, k: usize) -> Result<Word, PartitionError> {
    if k > n {
        return Err(PartitionError::BadShape { n, k });
    }
    let rows = n - k;
    if !lambda.fits_in_box(rows, k) {
        return Err(PartitionError::OutsideBox { partition: lambda.to_string(), rows, cols: k });
    }
    let mut padded = lambda.parts.clone();
    padded.resize(rows, 0);
    let mut letters = Vec::with_capacity(n);
    let mut prev = 0u32;
    // zeros from left to right carry the parts from smallest to largest
    for &part in padded.iter().rev() {
        letters.extend(std::iter::repeat_n(true, (part - prev) as usize));
        letters.push(false);
        prev = part;
    }
    letters.extend(std::iter::repeat_n(true, k - prev as usize));
    Ok(Word::new(letters))
}

/// All partitions fitting in `rows × cols`, in reverse lexicographic order.
pub fn partitions_in_box(rows: usize, cols: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_box(rows, cols as u32, &mut current, &mut out);
    out
}

fn fill_box(rows_left: usize, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rows_left > 0 {
        for p in (1..=max_part).rev() {
            current.push(p);
            fill_box(rows_left - 1, p, current, out);
            current.pop();
        }
    }
    out.push(Partition { parts: current.clone() });
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fill_sum(n, n, &mut current, &mut out);
    out
}

fn fill_sum(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition { parts: current.clone() });
        return;
    }
    for p in (1..=max_part.min(remaining)).rev() {
        current.push(p);
        fill_sum(remaining - p, p, current, out);
        current.pop();
    }
}

/// The admissibility condition on a partition in the `(n-k) × k` box:
/// for even `k` every odd part has even multiplicity; for odd `k` every
/// even part has even multiplicity and the number of parts has the parity
/// of `n - k`.
pub fn is_admissible_partition(lambda: &Partition, n: usize, k: usize) -> bool {
    if k > n || !lambda.fits_in_box(n - k, k) {
        return false;
    }
    let k_parity = (k % 2) as u32;
    let multiplicities_ok =
        lambda.distinct_parts().filter(|v| v % 2 != k_parity).all(|v| lambda.multiplicity(v).is_multiple_of(2));
    if k.is_multiple_of(2) {
        multiplicities_ok
    } else {
        multiplicities_ok && lambda.len() % 2 == (n - k) % 2
    }
}

/// Partitions in the `(n-k) × k` box that correspond to admissible words.
pub fn admissible_partitions(n: usize, k: usize) -> Result<Vec<Partition>, PartitionError> {
    if k > n {
        return Err(PartitionError::BadShape { n, k });
    }
    Ok(partitions_in_box(n - k, k).into_iter().filter(|l| is_admissible_partition(l, n, k)).collect())
}

/// Number of special corner cells: one for each distinct part value with
/// the same parity as `k` (the last row carrying that value).
pub fn special_corner_count(lambda: &Partition, k: usize) -> u64 {
    let k_parity = (k % 2) as u32;
    lambda.distinct_parts().filter(|v| v % 2 == k_parity).count() as u64
}

/// Row indices (0-based) of the special corner cells.
pub fn special_rows(lambda: &Partition, k: usize) -> Vec<usize> {
    let k_parity = (k % 2) as u32;
    let parts = lambda.parts();
    (0..parts.len()).filter(|&i| parts[i] % 2 == k_parity && parts.get(i + 1) != Some(&parts[i])).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionStats {
    pub weight: u64,
    pub special_corners: u64,
    pub n_of_lambda: u64,
}

pub fn partition_stats(lambda: &Partition, k: usize) -> PartitionStats {
    PartitionStats {
        weight: lambda.size(),
        special_corners: special_corner_count(lambda, k),
        n_of_lambda: lambda.n_of(),
    }
}

/// `q^{|λ| - p(λ)} (q-1)^{p(λ)}`.
pub fn partition_weight(lambda: &Partition, k: usize) -> LaurentPoly {
    let p = special_corner_count(lambda, k);
    monomial_times_binomial_power(lambda.size() - p, p, -1)
}

/// `Σ_λ q^{|λ|-p(λ)} (q-1)^{p(λ)}` over admissible partitions.
pub fn partition_sum_poly(n: usize, k: usize) -> Result<LaurentPoly, PartitionError> {
    let mut acc = LaurentPoly::zero();
    for lambda in admissible_partitions(n, k)? {
        acc += &partition_weight(&lambda, k);
    }
    Ok(acc)
}

/// Row-by-row weight display used by the partition tables.
///
/// Within each block of equal parts `v` the special row comes first as
/// `q^{v-1}(q-1)`, the remaining rows follow as `q^v` each; a block of
/// non-special parts equal to 1 is merged into a single power of `q`.
pub fn weight_string(lambda: &Partition, k: usize) -> String {
    let k_parity = (k % 2) as u32;
    let qpow = |e: u64| match e {
        0 => String::new(),
        1 => "q".to_string(),
        e => format!("q^{e}"),
    };
    let mut out = String::new();
    for v in lambda.distinct_parts() {
        let mult = lambda.multiplicity(v) as u64;
        let mut rest = mult;
        if v % 2 == k_parity {
            out.push_str(&qpow(v as u64 - 1));
            out.push_str("(q-1)");
            rest -= 1;
        }
        if v == 1 {
            out.push_str(&qpow(rest));
        } else {
            for _ in 0..rest {
                out.push_str(&qpow(v as u64));
            }
        }
    }
    match out.as_str() {
        "" => "1".to_string(),
        "(q-1)" => "q-1".to_string(),
        _ => out,
    }
}

/// Hook lengths of every cell (row-major), with `n(λ)` and `n(λ')`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HookData {
    pub hooks: Vec<u32>,
    pub n_lambda: u64,
    pub n_conjugate: u64,
}

pub fn hooks_and_n(lambda: &Partition) -> HookData {
    let conj = lambda.conjugate();
    let mut hooks = Vec::with_capacity(lambda.size() as usize);
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row as usize {
            let arm = row as usize - j - 1;
            let leg = conj.parts()[j] as usize - i - 1;
            hooks.push((arm + leg + 1) as u32);
        }
    }
    HookData { hooks, n_lambda: lambda.n_of(), n_conjugate: conj.n_of() }
}

/// One output row of the partition listing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionRow {
    pub partition: String,
    pub parts: Vec<u32>,
    pub word: String,
    pub pairing: String,
    pub admissible: bool,
    pub size: u64,
    pub special_corners: Option<u64>,
    pub weight: Option<String>,
}

impl PartitionRow {
    pub fn new(lambda: &Partition, n: usize, k: usize) -> Result<Self, PartitionError> {
        let w = partition_to_word(lambda, n, k)?;
        let pw = pair_word(&w);
        let admissible = is_admissible_partition(lambda, n, k);
        Ok(PartitionRow {
            partition: lambda.to_string(),
            parts: lambda.parts().to_vec(),
            word: w.to_string(),
            pairing: pw.to_string(),
            admissible,
            size: lambda.size(),
            special_corners: admissible.then(|| special_corner_count(lambda, k)),
            weight: admissible.then(|| weight_string(lambda, k)),
        })
    }
}

/// Word statistics transported to the partition side, for cross-checks.
pub fn stats_via_word(lambda: &Partition, n: usize, k: usize) -> Result<Option<WordStats>, PartitionError> {
    let w = partition_to_word(lambda, n, k)?;
    Ok(word_stats(&pair_word(&w)).ok())
}

/// Value of the partition weight at an integer `q`.
pub fn weight_at(lambda: &Partition, k: usize, q: i64) -> BigInt {
    partition_weight(lambda, k).eval_i64(q).expect("polynomial weight")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        if s == "∅" {
            return Partition::empty();
        }
        Partition::new(s.chars().map(|c| c.to_digit(10).unwrap()).collect()).unwrap()
    }

    #[test]
    fn bijection_examples() {
        assert_eq!(word_to_partition(&Word::parse("11000").unwrap()), part("222"));
        assert_eq!(word_to_partition(&Word::zeros(5)), Partition::empty());
        assert_eq!(word_to_partition(&Word::parse("10010").unwrap()), part("211"));
        assert_eq!(partition_to_word(&part("211"), 5, 2).unwrap().to_string(), "10010");
        assert!(partition_to_word(&part("3"), 5, 2).is_err());
        assert!(partition_to_word(&part("1111"), 5, 2).is_err());
    }

    #[test]
    fn admissible_partition_tables() {
        let names = |n, k| -> Vec<String> {
            let mut v: Vec<String> = admissible_partitions(n, k).unwrap().iter().map(|l| l.to_string()).collect();
            v.sort();
            v
        };
        let sorted = |xs: &[&str]| {
            let mut v: Vec<String> = xs.iter().map(|s| s.to_string()).collect();
            v.sort();
            v
        };
        assert_eq!(names(5, 3), sorted(&["33", "22", "31", "11", "∅"]));
        assert_eq!(names(6, 3), sorted(&["333", "322", "331", "221", "311", "3", "111", "1"]));
        assert_eq!(names(5, 2), sorted(&["222", "22", "211", "2", "11", "∅"]));
        assert_eq!(names(4, 0), sorted(&["∅"]));
    }

    #[test]
    fn special_corners() {
        assert_eq!(special_corner_count(&part("31"), 3), 2);
        assert_eq!(special_corner_count(&part("221"), 3), 1);
        assert_eq!(special_corner_count(&Partition::empty(), 3), 0);
        assert_eq!(special_rows(&part("331"), 3), vec![1, 2]);
    }

    #[test]
    fn weight_strings_match_tables() {
        let cases = [
            (2, "222", "q(q-1)q^2q^2"),
            (2, "22", "q(q-1)q^2"),
            (2, "211", "q(q-1)q^2"),
            (2, "2", "q(q-1)"),
            (2, "11", "q^2"),
            (2, "∅", "1"),
            (3, "33", "q^2(q-1)q^3"),
            (3, "22", "q^2q^2"),
            (3, "31", "q^2(q-1)(q-1)"),
            (3, "11", "(q-1)q"),
            (3, "333", "q^2(q-1)q^3q^3"),
            (3, "322", "q^2(q-1)q^2q^2"),
            (3, "331", "q^2(q-1)q^3(q-1)"),
            (3, "221", "q^2q^2(q-1)"),
            (3, "311", "q^2(q-1)(q-1)q"),
            (3, "3", "q^2(q-1)"),
            (3, "111", "(q-1)q^2"),
            (3, "1", "q-1"),
        ];
        for (k, lam, expected) in cases {
            assert_eq!(weight_string(&part(lam), k), expected, "{lam}");
        }
    }

    #[test]
    fn partition_sum_for_five_two() {
        let p = partition_sum_poly(5, 2).unwrap();
        assert_eq!(p.to_string(), "q^6 - q^5 + 2q^4 - 2q^3 + 2q^2 - q + 1");
        assert!(partition_sum_poly(4, 4).unwrap().is_one());
    }

    #[test]
    fn hook_examples() {
        let h = hooks_and_n(&part("4"));
        assert_eq!(h.hooks, vec![4, 3, 2, 1]);
        assert_eq!((h.n_lambda, h.n_conjugate), (0, 6));
        let h = hooks_and_n(&part("21"));
        assert_eq!(h.hooks, vec![3, 1, 1]);
        assert_eq!(h.n_lambda, 1);
        let h = hooks_and_n(&part("1111"));
        let mut hooks = h.hooks.clone();
        hooks.sort();
        assert_eq!(hooks, vec![1, 2, 3, 4]);
        assert_eq!(h.n_lambda, 6);
    }

    #[test]
    fn rejects_bad_parts() {
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![2, 0]).is_err());
        assert_eq!(part("31").conjugate(), part("211"));
        assert_eq!(Partition::new(vec![12, 3]).unwrap().to_string(), "(12,3)");
    }

    #[test]
    fn enumeration_sizes() {
        // box counts are binomial coefficients
        assert_eq!(partitions_in_box(3, 2).len(), 10);
        assert_eq!(partitions_in_box(0, 4).len(), 1);
        assert_eq!(partitions_of(6).len(), 11);
        assert_eq!(partitions_of(0).len(), 1);
    }
}
