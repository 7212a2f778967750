//! The verification suite behind `negq verify-all` and the acceptance test.
//!
//! Checks `C1`..`C13` follow the acceptance matrix; `S1`..`S5` are
//! supplementary. Every check stops at the first failure it meets while
//! scanning its range in increasing order, so the reported counterexample
//! is the smallest one.

use std::time::Duration;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::ennola::{degree_report, verify_index_identities};
use crate::gfq::{
    build_tower, check_form_axioms, count_fixed_subspaces, count_gl_brute, count_nondegenerate,
    count_special_entry_subspaces, count_unitary_brute, enumerate_subspaces, is_nondegenerate, is_nondegenerate_over,
    numbth_checks, special_entry_prediction, UnitaryCyclicGroup,
};
use crate::partitions::{
    is_admissible_partition, partition_to_word, special_corner_count, weight_string, word_to_partition, Partition,
};
use crate::qbinom::{
    check_pascal, lucas_at_negative_q, lucas_at_q, lucasnomial, omega_prime_count_series, primed_qbinomial, qbinomial,
};
use crate::qtbinom::{
    build_x, compare_signed_pair, evaluate_x_at_order, extreme_powers, predicted_extreme_powers, predicted_fixed_count,
    qt_binomial, verify_qt_recurrences, x_at_one_expected,
};
use crate::words::{
    admissible_count, enumerate_admissible, pair_word, plus_sum_poly, primed_sum_poly, word_stats, words,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub id: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub counterexample: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    /// Caps the `n` ranges of the scanning checks; `None` uses the full ranges.
    pub max_n: Option<usize>,
    pub seed: u64,
    pub budget: u64,
}

impl SuiteConfig {
    pub fn full(seed: u64, budget: u64) -> Self {
        SuiteConfig { max_n: None, seed, budget }
    }

    fn cap(&self, bound: usize) -> usize {
        self.max_n.map_or(bound, |m| m.min(bound))
    }
}

/// A check's id with its wall-clock time, kept out of the JSON report.
#[derive(Clone, Debug)]
pub struct Timed {
    pub outcome: CheckOutcome,
    pub elapsed: Duration,
}

type CheckFn = fn(&SuiteConfig) -> Result<String, (String, String)>;

const CHECKS: &[(&str, &str, CheckFn)] = &[
    ("C1", "word expansion of the primed q-binomial", c1),
    ("C2", "(q+1) expansion of the q-binomial", c2),
    ("C3", "parity of inv on admissible words", c3),
    ("C4", "partition reformulation and its tables", c4),
    ("C5", "(q,t)-binomial at negative q: sign, symmetry, extreme powers", c5),
    ("C6", "monotonicity fails at (4,2,4)", c6),
    ("C7", "nondegenerate subspace counts", c7),
    ("C8", "cyclic sieving for nondegenerate subspaces", c8),
    ("C9", "divisibility facts for orders dividing q^n+1", c9),
    ("C10", "special-entry subspace counts", c10),
    ("C11", "generating function for admissible word counts", c11),
    ("C12", "lucasnomial substitutions", c12),
    ("C13", "degree polynomials and index identities", c13),
    ("S1", "primed q-Pascal recurrences", s1),
    ("S2", "(q,t)-Pascal recurrences", s2),
    ("S3", "Hermitian form axioms (seeded)", s3),
    ("S4", "nondegeneracy under restriction of scalars", s4),
    ("S5", "group orders by matrix enumeration", s5),
];

pub fn check_ids() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.0).collect()
}

pub fn run_check(id: &str, cfg: &SuiteConfig) -> Option<Timed> {
    let &(id, name, f) = CHECKS.iter().find(|c| c.0.eq_ignore_ascii_case(id))?;
    let start = std::time::Instant::now();
    let result = f(cfg);
    let elapsed = start.elapsed();
    let outcome = match result {
        Ok(detail) => CheckOutcome { id: id.into(), name: name.into(), passed: true, detail, counterexample: None },
        Err((detail, cx)) => {
            CheckOutcome { id: id.into(), name: name.into(), passed: false, detail, counterexample: Some(cx) }
        }
    };
    Some(Timed { outcome, elapsed })
}

pub fn run_all(cfg: &SuiteConfig) -> Vec<Timed> {
    CHECKS.iter().filter_map(|c| run_check(c.0, cfg)).collect()
}

fn fail<T>(detail: impl Into<String>, cx: impl Into<String>) -> Result<T, (String, String)> {
    Err((detail.into(), cx.into()))
}

fn err<E: std::fmt::Display>(ctx: &str) -> impl Fn(E) -> (String, String) + '_ {
    move |e| (format!("error: {e}"), ctx.to_string())
}

const PRIMED_FIVE_TWO: &str = "q^6 - q^5 + 2q^4 - 2q^3 + 2q^2 - q + 1";

const WORD_TABLE_FIVE_TWO: [(&str, &str); 6] = [
    ("0 0 0 1 1", "1"),
    ("0 0 1 10", "q(q-1)"),
    ("0 1 00 1", "q^2"),
    ("0 1 10 0", "q^3(q-1)"),
    ("1 00 10", "q^3(q-1)"),
    ("1 10 0 0", "q^5(q-1)"),
];

fn c1(cfg: &SuiteConfig) -> Result<String, (String, String)> {
    let max = cfg.cap(14);
    for n in 0..=max {
        for k in 0..=n {
            let ctx = format!("(n,k) = ({n},{k})");
            let lhs = primed_sum_poly(n, k).map_err(err(&ctx))?;
            let rhs = primed_qbinomial(n, k).map_err(err(&ctx))?.poly;
            if lhs != rhs {
                return fail(format!("sum {lhs} != {rhs}"), ctx);
            }
        }
    }
    let p = primed_sum_poly(5, 2).map_err(err("(5,2)"))?;
    if p.to_string() != PRIMED_FIVE_TWO {
        return fail(format!("(5,2) gives {p}"), "(n,k) = (5,2)");
    }
    Ok(format!("identity for all 0 <= k <= n <= {max}; (5,2) = {p}"))
}

fn c2(cfg: &SuiteConfig) -> Result<String, (String, String)> {
    let max = cfg.cap(14);
    for n in 0..=max {
        for k in 0..=n {
            let ctx = format!("(n,k) = ({n},{k})");
            let lhs = plus_sum_poly(n, k).map_err(err(&ctx))?;
            if lhs != qbinomial(n, k).map_err(err(&ctx))?.poly {
                return fail("sum of q^a(q+1)^p differs from [n,k]_q", ctx);
            }
        }
    }
    let rows: Vec<(String, String)> = enumerate_admissible(5, 2)
        .map_err(err("(5,2)"))?
        .map(|(pw, st)| (pw.to_string(), st.plus_weight_string()))
        .collect();
    let expected: Vec<(String, String)> =
        WORD_TABLE_FIVE_TWO.iter().map(|(w, wt)| (w.to_string(), wt.replace("q-1", "q+1"))).collect();
    if rows != expected {
        return fail(format!("(5,2) table {rows:?}"), "(n,k) = (5,2)");
    }
    let minus: Vec<(String, String)> = enumerate_admissible(5, 2)
        .map_err(err("(5,2)"))?
        .map(|(pw, st)| (pw.to_string(), st.weight_string()))
        .collect();
    let expected: Vec<(String, String)> =
        WORD_TABLE_FIVE_TWO.iter().map(|(w, wt)| (w.to_string(), wt.to_string())).collect();
    if minus != expected {
        return fail(format!("(5,2) word table {minus:?}"), "(n,k) = (5,2)");
    }
    Ok(format!("identity for all 0 <= k <= n <= {max}; (5,2) tables match in all 6 rows"))
}

fn c3(cfg: &SuiteConfig) -> Result<String, (String, String)> {
    let max = cfg.cap(14);
    let mut checked = 0u64;
    for n in 0..=max {
        for k in 0..=n {
            for (pw, st) in enumerate_admissible(n, k).map_err(err("enumeration"))? {
                checked += 1;
                if st.inv % 2 != ((k * (n - k)) % 2) as u64 {
                    return fail("inv has the wrong parity", format!("(n,k) = ({n},{k}), word {pw}"));
                }
            }
        }
    }
    Ok(format!("{checked} admissible words with n <= {max}, no exceptions"))
}

/// `(partition, word, weight)` rows of one table.
pub type TableRows = &'static [(&'static str, &'static str, &'static str)];

/// The three partition tables, in the order printed.
pub const PARTITION_TABLES: [(usize, usize, TableRows); 3] = [
    (
        5,
        2,
        &[
            ("1 10 0 0", "222", "q(q-1)q^2q^2"),
            ("0 1 10 0", "22", "q(q-1)q^2"),
            ("1 00 10", "211", "q(q-1)q^2"),
            ("0 0 1 10", "2", "q(q-1)"),
            ("0 1 00 1", "11", "q^2"),
            ("0 0 0 1 1", "∅", "1"),
        ],
    ),
    (
        5,
        3,
        &[
            ("", "33", "q^2(q-1)q^3"),
            ("", "22", "q^2q^2"),
            ("", "31", "q^2(q-1)(q-1)"),
            ("", "11", "(q-1)q^1"),
            ("", "∅", "1"),
        ],
    ),
    (
        6,
        3,
        &[
            ("", "333", "q^2(q-1)q^3q^3"),
            ("", "322", "q^2(q-1)q^2q^2"),
            ("", "331", "q^2(q-1)q^3(q-1)"),
            ("", "221", "q^2q^2(q-1)"),
            ("", "311", "q^2(q-1)(q-1)q"),
            ("", "3", "q^2(q-1)"),
            ("", "111", "(q-1)q^2"),
            ("", "1", "q-1"),
        ],
    ),
];

fn parse_partition(s: &str) -> Partition {
    if s == "∅" {
        return Partition::empty();
    }
    Partition::from_unsorted(s.chars().filter_map(|c| c.to_digit(10)).collect())
}

fn c4(cfg: &SuiteConfig) -> Result<String, (String, String)> {
    let max = cfg.cap(14);
    for n in 0..=max {
        for k in 0..=n {
            for w in words(n, k).map_err(err("enumeration"))? {
                let ctx = format!("(n,k) = ({n},{k}), word {w}");
                let lam = word_to_partition(&w);
                if lam.size() != w.inv() || partition_to_word(&lam, n, k).ok().as_ref() != Some(&w) {
                    return fail("bijection fails", ctx);
                }
                let pw = pair_word(&w);
                if pw.is_admissible() != is_admissible_partition(&lam, n, k) {
                    return fail("admissibility characterisation fails", ctx);
                }
                if let Ok(st) = word_stats(&pw) {
                    if st.p != special_corner_count(&lam, k) {
                        return fail("p differs from the special corner count", ctx);
                    }
                }
            }
        }
    }
    for (n, k, table) in PARTITION_TABLES {
        let ctx = format!("table (n,k) = ({n},{k})");
        let admissible = admissible_count(n, k).map_err(err(&ctx))? as usize;
        if admissible != table.len() {
            return fail(format!("{admissible} admissible partitions, table lists {}", table.len()), ctx);
        }
        for &(word, lam, wt) in table {
            let lambda = parse_partition(lam);
            let row_ctx = format!("{ctx}, row {lam}");
            if !is_admissible_partition(&lambda, n, k) {
                return fail("row is not admissible", row_ctx);
            }
            let ours = weight_string(&lambda, k);
            if ours != wt.replace("q^1", "q") {
                return fail(format!("weight {ours}, table has {wt}"), row_ctx);
            }
            if !word.is_empty() {
                let w = partition_to_word(&lambda, n, k).map_err(err(&row_ctx))?;
                if pair_word(&w).to_string() != word {
                    return fail(format!("word {}", pair_word(&w)), row_ctx);
                }
            }
        }
    }
    Ok(format!("bijection, admissibility and p transport for n <= {max}; (5,2), (5,3), (6,3) tables reproduced"))
}

fn c5(cfg: &SuiteConfig) -> Result<String, (String, String)> {
    let max = cfg.cap(6);
    let mut count = 0;
    for q in [-2i64, -3] {
        for n in 0..=max {
            for k in 0..=n {
                let ctx = format!("(n,k,q) = ({n},{k},{q})");
                let b = qt_binomial(n, k, q).map_err(err(&ctx))?;
                if !b.has_uniform_sign() {
                    return fail("coefficient signs are not uniform", ctx);
                }
                if !b.is_symmetric() {
                    return fail("coefficients are not symmetric", ctx);
                }
                let e = extreme_powers(n, k, q).map_err(err(&ctx))?;
                let predicted = predicted_extreme_powers(n, k, q).map_err(err(&ctx))?;
                if (e.min_exponent, e.max_exponent) != predicted {
                    return fail(
                        format!(
                            "extreme powers ({}, {}), table predicts {predicted:?}",
                            e.min_exponent, e.max_exponent
                        ),
                        ctx,
                    );
                }
                let one = BigInt::from(1);
                if e.min_coeff.magnitude() != one.magnitude() || e.max_coeff.magnitude() != one.magnitude() {
                    return fail("extreme coefficients are not ±1", ctx);
                }
                count += 1;
            }
        }
    }
    Ok(format!("{count} Laurent polynomials with n <= {max}, q in {{-2,-3}}"))
}

fn c6(_: &SuiteConfig) -> Result<String, (String, String)> {
    let c = compare_signed_pair(4, 2, 4).map_err(err("(4,2,4)"))?;
    let ctx = "(n,k,q) = (4,2,4)";
    if !(c.plus_nonnegative && c.minus_nonnegative) {
        return fail("an object has a negative coefficient", ctx);
    }
    if (c.plus_degree, c.minus_degree) != (480, 480) {
        return fail(format!("degrees {} and {}", c.plus_degree, c.minus_degree), ctx);
    }
    if c.is_monotone() {
        return fail("difference has a single sign", ctx);
    }
    Ok("both in N[t] of degree 480; difference has coefficients of both signs".into())
}

fn c7(cfg: &SuiteConfig) -> Result<String, (String, String)> {
    let mut parts = Vec::new();
    for (q, n) in [(2u32, 3usize), (3, 3), (2, 5)] {
        let tower = build_tower(q, 1, n, cfg.budget).map_err(err("tower"))?;
        let mut counts = Vec::new();
        for k in 0..=n {
            let ctx = format!("(q,n,k) = ({q},{n},{k})");
            let got = count_nondegenerate(&tower, 1, k, cfg.budget).map_err(err(&ctx))?;
            let want = predicted_fixed_count(n, k, q as i64, 1).map_err(err(&ctx))?;
            if BigInt::from(got) != want {
                return fail(format!("counted {got}, formula gives {want}"), ctx);
            }
            counts.push(got.to_string());
        }
        parts.push(format!("({q},{n}): {}", counts.join(",")));
    }
    Ok(parts.join("; "))
}

fn c8(cfg: &SuiteConfig) -> Result<String, (String, String)> {
    let mut rows = 0;
    for (q, n) in [(2u32, 3usize), (3, 3)] {
        let tower = build_tower(q, 1, n, cfg.budget).map_err(err("tower"))?;
        let group = UnitaryCyclicGroup::new(&tower);
        for k in 0..=n {
            let ctx = format!("(q,n,k) = ({q},{n},{k})");
            let x = build_x(n, k, q as i64).map_err(err(&ctx))?;
            if x.at_one() != x_at_one_expected(n, k, q as i64).map_err(err(&ctx))? {
                return fail("X(1) identity fails", ctx);
            }
            if q % 2 == 1 && x.at_minus_one() != x.at_one() {
                return fail("X(-1) != X(1)", ctx);
            }
            for a in group.divisors() {
                let ctx = format!("{ctx}, order {a}");
                let c = group.element_of_order(&tower, a).map_err(err(&ctx))?;
                let fixed = count_fixed_subspaces(&tower, c, k, cfg.budget).map_err(err(&ctx))?;
                let value = evaluate_x_at_order(&x, a).map_err(err(&ctx))?;
                let predicted = predicted_fixed_count(n, k, q as i64, a).map_err(err(&ctx))?;
                if BigInt::from(fixed) != value || value != predicted {
                    return fail(format!("fixed {fixed}, X(ω) = {value}, formula {predicted}"), ctx);
                }
                rows += 1;
            }
        }
    }
    Ok(format!("{rows} (k, order) pairs: fixed counts = X(ω) = formula"))
}

fn c9(_: &SuiteConfig) -> Result<String, (String, String)> {
    let mut rows = 0;
    for q in [2u64, 3] {
        for n in [3usize, 5] {
            let modulus = q.pow(n as u32) + 1;
            for a in (3..=modulus).filter(|a| modulus % a == 0) {
                let ctx = format!("(q,n,A) = ({q},{n},{a})");
                let r = numbth_checks(q, n, a).map_err(err(&ctx))?;
                if !r.all() {
                    return fail(format!("{r:?}"), r.counterexample.map_or(ctx.clone(), |c| format!("{ctx}: {c}")));
                }
                rows += 1;
            }
        }
    }
    Ok(format!("{rows} orders, all four parts, s,t <= 4n"))
}

fn c10(cfg: &SuiteConfig) -> Result<String, (String, String)> {
    let max = cfg.cap(5);
    let mut rows = 0;
    for q in [2u64, 3] {
        for n in 0..=max {
            for k in 0..=n {
                let ctx = format!("(q,n,k) = ({q},{n},{k})");
                let got = count_special_entry_subspaces(q, n, k, cfg.budget).map_err(err(&ctx))?;
                let want = special_entry_prediction(q, n, k).map_err(err(&ctx))?;
                if BigInt::from(got) != want {
                    return fail(format!("counted {got}, primed q-binomial gives {want}"), ctx);
                }
                rows += 1;
            }
        }
    }
    let c = count_special_entry_subspaces(2, 5, 2, cfg.budget).map_err(err("(2,5,2)"))?;
    Ok(format!("{rows} cases with n <= {max}; (q,n,k) = (2,5,2) gives {c}"))
}

fn c11(cfg: &SuiteConfig) -> Result<String, (String, String)> {
    let max_n = cfg.cap(20);
    for k in 0..=8usize.min(max_n) {
        let series = omega_prime_count_series(k, max_n);
        for (i, coeff) in series.iter().enumerate() {
            let n = k + i;
            let ctx = format!("(n,k) = ({n},{k})");
            let count = admissible_count(n, k).map_err(err(&ctx))?;
            if *coeff != BigInt::from(count) {
                return fail(format!("series gives {coeff}, enumeration {count}"), ctx);
            }
        }
    }
    let c = omega_prime_count_series(2, 5)[3].clone();
    Ok(format!("all coefficients for n <= {max_n}, k <= 8; coefficient at (5,2) is {c}"))
}

fn c12(cfg: &SuiteConfig) -> Result<String, (String, String)> {
    let max = cfg.cap(8);
    for n in 0..=max {
        for k in 0..=n {
            let ctx = format!("(n,k) = ({n},{k})");
            let l = lucasnomial(n, k).map_err(err(&ctx))?;
            let b = qbinomial(n, k).map_err(err(&ctx))?.poly;
            if lucas_at_q(&l) != b {
                return fail("s = q+1, t = -q does not give [n,k]_q", ctx);
            }
            if lucas_at_negative_q(&l) != b.negate_var() {
                return fail("s = 1-q, t = q does not give [n,k]_{-q}", ctx);
            }
        }
    }
    Ok(format!("both substitutions for n <= {max}"))
}

fn c13(cfg: &SuiteConfig) -> Result<String, (String, String)> {
    let max = cfg.cap(8);
    for n in 0..=max {
        let r = degree_report(n).map_err(err("degrees"))?;
        if !r.all() {
            return fail(format!("{r:?}"), format!("n = {n}, λ = {}", r.counterexample.unwrap_or_default()));
        }
        for k in 0..=n {
            for q in [2i64, 3, 4, 5] {
                let ctx = format!("(n,k,q) = ({n},{k},{q})");
                let r = verify_index_identities(n, k, q).map_err(err(&ctx))?;
                if !r.all() {
                    return fail(format!("{r:?}"), ctx);
                }
            }
        }
    }
    Ok(format!("degree facts and index identities (numeric and symbolic) for n <= {max}"))
}

fn s1(cfg: &SuiteConfig) -> Result<String, (String, String)> {
    let max = cfg.cap(14);
    for n in 2..=max {
        for k in 0..=n {
            let ctx = format!("(n,k) = ({n},{k})");
            if !check_pascal(n, k).map_err(err(&ctx))?.all() {
                return fail("recurrence fails", ctx);
            }
        }
    }
    Ok(format!("plain, iterated and primed recurrences for 2 <= n <= {max}"))
}

fn s2(cfg: &SuiteConfig) -> Result<String, (String, String)> {
    let max = cfg.cap(5);
    for q in [-3i64, -2, 2, 3] {
        for n in 2..=max {
            for k in 0..=n {
                let ctx = format!("(n,k,q) = ({n},{k},{q})");
                let r = verify_qt_recurrences(n, k, q).map_err(err(&ctx))?;
                if !r.all() {
                    return fail(format!("{r:?}"), ctx);
                }
            }
        }
    }
    Ok(format!("both recurrences for 2 <= n <= {max}, q in {{-3,-2,2,3}}"))
}

fn s3(cfg: &SuiteConfig) -> Result<String, (String, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for (q, n) in [(2u32, 3usize), (3, 3), (2, 5)] {
        let tower = build_tower(q, 1, n, cfg.budget).map_err(err("tower"))?;
        for m in (1..=n).filter(|m| n % m == 0) {
            let ctx = format!("(q,n,m) = ({q},{n},{m})");
            let r = check_form_axioms(&tower, m, 100, &mut rng).map_err(err(&ctx))?;
            if !r.all() {
                return fail(format!("{r:?}"), ctx);
            }
            let coords = tower.coordinates(m, cfg.budget).map_err(err(&ctx))?;
            let form = tower.hermitian_form(m).map_err(err(&ctx))?;
            let full = enumerate_subspaces(&tower, &coords, n / m).map_err(err(&ctx))?.next();
            if !full.is_some_and(|w| is_nondegenerate(&tower, &w, &form)) {
                return fail("ambient form is degenerate", ctx);
            }
        }
    }
    Ok(format!("100 random triples per form, seed {}", cfg.seed))
}

fn s4(cfg: &SuiteConfig) -> Result<String, (String, String)> {
    let tower = build_tower(2, 1, 3, cfg.budget).map_err(err("tower"))?;
    let coords = tower.coordinates(3, cfg.budget).map_err(err("coordinates"))?;
    let form = tower.hermitian_form(3).map_err(err("form"))?;
    let mut seen = 0;
    for k in 0..=1 {
        for w in enumerate_subspaces(&tower, &coords, k).map_err(err("enumeration"))? {
            let big = is_nondegenerate(&tower, &w, &form);
            let small = is_nondegenerate_over(&tower, &w, 1).map_err(err("restriction"))?;
            if big != small {
                return fail("nondegeneracy depends on the base field", format!("k' = {k}, word {}", w.word()));
            }
            seen += 1;
        }
    }
    Ok(format!("(q,n) = (2,3), l = 1, m = 3: {seen} subspaces agree"))
}

fn s5(cfg: &SuiteConfig) -> Result<String, (String, String)> {
    for q in [2u64, 3] {
        for n in 0..=2usize {
            let ctx = format!("(n,q) = ({n},{q})");
            let orders = crate::ennola::group_orders(n, q as i64);
            let gl = count_gl_brute(n, q, cfg.budget).map_err(err(&ctx))?;
            let u = count_unitary_brute(n, q, cfg.budget).map_err(err(&ctx))?;
            if BigInt::from(gl) != orders.general_linear || BigInt::from(u) != orders.unitary {
                return fail(format!("GL {gl}, U {u}, formulas {orders:?}"), ctx);
            }
        }
    }
    Ok("|GL_n| and |U_n| for n <= 2, q in {2,3}".into())
}
