//! Binary words, the recursive pairing rule, and the weighted expansions of
//! the classical and primed q-binomials over admissible words.
//!
//! A word of length `n` with `k` ones is paired from the left: while the
//! remaining suffix has an odd number of ones its first two letters form a
//! pair, otherwise its first letter stays unpaired. A word is *admissible*
//! when no pair reads `01`. For admissible words `p` counts the `10` pairs
//! and `a = inv - p`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::LaurentPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("invalid letter {0:?}; words are written with 0 and 1")]
    InvalidLetter(char),
    #[error("word has a paired 01 and is not admissible")]
    NotAdmissible,
    #[error("need 0 <= k <= n, got n = {n}, k = {k}")]
    BadShape { n: usize, k: usize },
}

/// A word in `{0,1}^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<bool>,
}

impl Word {
    pub fn new(letters: Vec<bool>) -> Self {
        Word { letters }
    }

    /// Parses `0`/`1` letters, ignoring spaces, `|` and `_` so that the
    /// segmented form `01 1 00` is accepted.
    pub fn parse(s: &str) -> Result<Self, WordError> {
        let mut letters = Vec::with_capacity(s.len());
        for ch in s.chars() {
            match ch {
                '0' => letters.push(false),
                '1' => letters.push(true),
                ' ' | '|' | '_' => {}
                other => return Err(WordError::InvalidLetter(other)),
            }
        }
        Ok(Word { letters })
    }

    /// The all-zero word of length `n`.
    pub fn zeros(n: usize) -> Self {
        Word { letters: vec![false; n] }
    }

    pub fn n(&self) -> usize {
        self.letters.len()
    }

    /// Number of ones.
    pub fn k(&self) -> usize {
        self.letters.iter().filter(|b| **b).count()
    }

    pub fn letters(&self) -> &[bool] {
        &self.letters
    }

    /// Pairs `i < j` with a one at `i` and a zero at `j`.
    pub fn inv(&self) -> u64 {
        let mut ones_seen = 0u64;
        let mut inv = 0u64;
        for &b in &self.letters {
            if b {
                ones_seen += 1;
            } else {
                inv += ones_seen;
            }
        }
        inv
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.letters {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// One segment of a pairing; positions are 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Segment {
    Unpaired(usize),
    /// Positions `i` and `i + 1`.
    Paired(usize),
}

/// A word together with its pairing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairedWord {
    word: Word,
    segments: Vec<Segment>,
}

impl PairedWord {
    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    /// True iff no pair carries the letters `0,1`.
    pub fn is_admissible(&self) -> bool {
        self.paired_letters().all(|(x, y)| !(!x && y))
    }

    fn paired_letters(&self) -> impl Iterator<Item = (bool, bool)> + '_ {
        let l = self.word.letters();
        self.segments.iter().filter_map(move |s| match s {
            Segment::Paired(i) => Some((l[*i], l[i + 1])),
            Segment::Unpaired(_) => None,
        })
    }

    /// `[]` for each pair and `.` for each unpaired letter, aligned with
    /// the word's letters.
    pub fn mask(&self) -> String {
        self.segments
            .iter()
            .map(|s| match s {
                Segment::Paired(_) => "[]",
                Segment::Unpaired(_) => ".",
            })
            .collect()
    }
}

impl fmt::Display for PairedWord {
    /// Segments separated by spaces, e.g. `01 1 00 10 1 01`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.word.letters();
        let bit = |b: bool| if b { '1' } else { '0' };
        for (idx, s) in self.segments.iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            match *s {
                Segment::Unpaired(i) => write!(f, "{}", bit(l[i]))?,
                Segment::Paired(i) => write!(f, "{}{}", bit(l[i]), bit(l[i + 1]))?,
            }
        }
        Ok(())
    }
}

/// Runs the recursive pairing rule.
pub fn pair_word(w: &Word) -> PairedWord {
    let l = w.letters();
    let mut remaining_ones = w.k();
    let mut segments = Vec::new();
    let mut i = 0;
    while i < l.len() {
        let rest = l.len() - i;
        if rest >= 2 && remaining_ones % 2 == 1 {
            segments.push(Segment::Paired(i));
            remaining_ones -= l[i] as usize + l[i + 1] as usize;
            i += 2;
        } else {
            segments.push(Segment::Unpaired(i));
            remaining_ones -= l[i] as usize;
            i += 1;
        }
    }
    PairedWord { word: w.clone(), segments }
}

/// `inv`, `p` (paired `10` count) and `a = inv - p` of an admissible word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WordStats {
    pub inv: u64,
    pub a: u64,
    pub p: u64,
}

impl WordStats {
    /// `q^a (q-1)^p`.
    pub fn weight(&self) -> LaurentPoly {
        monomial_times_binomial_power(self.a, self.p, -1)
    }

    /// `q^a (q+1)^p`.
    pub fn plus_weight(&self) -> LaurentPoly {
        monomial_times_binomial_power(self.a, self.p, 1)
    }

    /// `q^a (q-1)^p` at an integer `q`.
    pub fn weight_at(&self, q: i64) -> BigInt {
        num_traits::pow(BigInt::from(q), self.a as usize) * num_traits::pow(BigInt::from(q - 1), self.p as usize)
    }

    /// The weight written the way the word tables print it: `q^3(q-1)`.
    pub fn weight_string(&self) -> String {
        self.format_weight('-')
    }

    /// `q^a (q+1)^p` in the same layout, e.g. `q^3(q+1)`.
    pub fn plus_weight_string(&self) -> String {
        self.format_weight('+')
    }

    fn format_weight(&self, sign: char) -> String {
        let mut s = String::new();
        match self.a {
            0 => {}
            1 => s.push('q'),
            a => s.push_str(&format!("q^{a}")),
        }
        match self.p {
            0 => {}
            1 => s.push_str(&format!("(q{sign}1)")),
            p => s.push_str(&format!("(q{sign}1)^{p}")),
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }
}

/// `q^a (q + c)^p` in the variable `q`.
pub(crate) fn monomial_times_binomial_power(a: u64, p: u64, c: i64) -> LaurentPoly {
    let base = LaurentPoly::from_terms([(0, c), (1, 1)]);
    base.pow(p as u32).shift(a as i64)
}

pub fn word_stats(pw: &PairedWord) -> Result<WordStats, WordError> {
    if !pw.is_admissible() {
        return Err(WordError::NotAdmissible);
    }
    let inv = pw.word.inv();
    let p = pw.paired_letters().filter(|&(x, y)| x && !y).count() as u64;
    Ok(WordStats { inv, a: inv - p, p })
}

/// All words of length `n` with `k` ones, in lexicographic order (`0 < 1`).
pub fn words(n: usize, k: usize) -> Result<WordIter, WordError> {
    if k > n {
        return Err(WordError::BadShape { n, k });
    }
    let mut first = vec![false; n];
    for b in first.iter_mut().skip(n - k) {
        *b = true;
    }
    Ok(WordIter { next: Some(first) })
}

/// Iterator behind [`words`].
pub struct WordIter {
    next: Option<Vec<bool>>,
}

impl Iterator for WordIter {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Word { letters: current })
    }
}

fn next_permutation(a: &mut [bool]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let Some(i) = (0..a.len() - 1).rev().find(|&i| !a[i] & a[i + 1]) else {
        return false;
    };
    let j = (i + 1..a.len()).rev().find(|&j| a[j] & !a[i]).expect("a[i+1] > a[i]");
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

/// Every admissible word of `Ω'_{n,k}` with its statistics, in lexicographic order.
pub fn enumerate_admissible(n: usize, k: usize) -> Result<impl Iterator<Item = (PairedWord, WordStats)>, WordError> {
    Ok(words(n, k)?.filter_map(|w| {
        let pw = pair_word(&w);
        word_stats(&pw).ok().map(|st| (pw, st))
    }))
}

fn stats_histogram(n: usize, k: usize) -> Result<BTreeMap<(u64, u64), u64>, WordError> {
    let mut hist = BTreeMap::new();
    for (_, st) in enumerate_admissible(n, k)? {
        *hist.entry((st.a, st.p)).or_insert(0) += 1;
    }
    Ok(hist)
}

fn weighted_sum(n: usize, k: usize, c: i64) -> Result<LaurentPoly, WordError> {
    let mut acc = LaurentPoly::zero();
    for ((a, p), count) in stats_histogram(n, k)? {
        acc += &monomial_times_binomial_power(a, p, c).scale(&BigInt::from(count));
    }
    Ok(acc)
}

/// `Σ_{ω ∈ Ω'_{n,k}} q^{a(ω)} (q-1)^{p(ω)}`.
pub fn primed_sum_poly(n: usize, k: usize) -> Result<LaurentPoly, WordError> {
    weighted_sum(n, k, -1)
}

/// `Σ_{ω ∈ Ω'_{n,k}} q^{a(ω)} (q+1)^{p(ω)}`.
pub fn plus_sum_poly(n: usize, k: usize) -> Result<LaurentPoly, WordError> {
    weighted_sum(n, k, 1)
}

/// `|Ω'_{n,k}|`.
pub fn admissible_count(n: usize, k: usize) -> Result<u64, WordError> {
    Ok(enumerate_admissible(n, k)?.count() as u64)
}

/// One output row of the word listing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WordRow {
    pub bits: String,
    pub pairing: String,
    pub mask: String,
    pub admissible: bool,
    pub inv: u64,
    pub a: Option<u64>,
    pub p: Option<u64>,
    pub weight: Option<String>,
}

impl WordRow {
    pub fn from_word(w: &Word) -> Self {
        let pw = pair_word(w);
        let stats = word_stats(&pw).ok();
        WordRow {
            bits: w.to_string(),
            pairing: pw.to_string(),
            mask: pw.mask(),
            admissible: stats.is_some(),
            inv: w.inv(),
            a: stats.map(|s| s.a),
            p: stats.map(|s| s.p),
            weight: stats.map(|s| s.weight_string()),
        }
    }
}
