//! Command-line surface. [`run`] does all the work and returns the text
//! to print with an exit code, so the binary is a thin wrapper.
//!
//! Exit codes: 0 when everything requested was computed and every
//! comparison matched, 1 when a comparison failed, 2 for usage errors and
//! inputs outside an operation's domain.

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::ennola::{degree_report, hook_degree_poly, verify_index_identities};
use crate::gfq::{
    budget_from_env, build_tower, count_fixed_subspaces, count_nondegenerate, count_special_entry_subspaces,
    numbth_checks, special_entry_prediction, UnitaryCyclicGroup,
};
use crate::partitions::{partitions_in_box, PartitionRow};
use crate::qbinom::{primed_qbinomial, qbinomial};
use crate::qtbinom::{build_x, evaluate_x_at_order, predicted_fixed_count, qt_binomial, subfield_degree};
use crate::suite::{run_all, run_check, SuiteConfig};
use crate::words::{words, WordRow};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "negq", version, about = "The q-binomial at negative q: exact computation and verification")]
pub struct Cli {
    /// Emit JSON instead of plain text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized checks; recorded in JSON output.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Enumeration cap on field sizes and subspace counts [default: NEGQ_BUDGET or 10^7].
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Binary words, their pairings and statistics.
    #[command(subcommand)]
    Words(WordsCmd),
    /// Partitions in a box and their weights.
    #[command(subcommand)]
    Partitions(PartitionsCmd),
    /// The q-binomial or its primed version.
    Qbinom(QbinomArgs),
    /// The (q,t)-binomial and the sieving polynomial X(t).
    Qt(QtArgs),
    /// Finite-field enumerations.
    #[command(subcommand)]
    Gf(GfCmd),
    /// Unipotent degree polynomials and index identities.
    #[command(subcommand)]
    Ennola(EnnolaCmd),
    /// Run the verification suite.
    VerifyAll(VerifyArgs),
}

#[derive(Args, Debug, Clone, Copy)]
pub struct Shape {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
}

#[derive(Subcommand, Debug)]
pub enum WordsCmd {
    /// List the words with n letters and k ones in lexicographic order.
    Enumerate {
        #[command(flatten)]
        shape: Shape,
        /// Only the admissible words.
        #[arg(long)]
        admissible_only: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum PartitionsCmd {
    /// List partitions inside the (n-k) x k box.
    List {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        admissible_only: bool,
    },
}

#[derive(Args, Debug)]
pub struct QbinomArgs {
    #[command(flatten)]
    pub shape: Shape,
    /// Print (-1)^{k(n-k)} [n,k]_{-q} instead.
    #[arg(long)]
    pub primed: bool,
    /// Also evaluate at this integer.
    #[arg(long, allow_hyphen_values = true)]
    pub at: Option<i64>,
}

#[derive(Args, Debug)]
pub struct QtArgs {
    #[command(flatten)]
    pub shape: Shape,
    #[arg(long, allow_hyphen_values = true)]
    pub q: i64,
    /// Print X(t) (n odd, q a prime power).
    #[arg(long)]
    pub x_poly: bool,
    /// Evaluate X(t) at a primitive root of unity of this order.
    #[arg(long)]
    pub eval_order: Option<u64>,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct TowerArgs {
    #[arg(long)]
    pub p: u32,
    #[arg(long, default_value_t = 1)]
    pub e: u32,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
}

#[derive(Subcommand, Debug)]
pub enum GfCmd {
    /// Count nondegenerate k-dimensional GF(q^{2m})-subspaces of GF(q^{2n}).
    CountNondeg {
        #[command(flatten)]
        tower: TowerArgs,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Compare fixed-point counts with X(t) at roots of unity.
    Csp {
        #[command(flatten)]
        tower: TowerArgs,
        /// A single order; default is every divisor of q^n + 1.
        #[arg(long)]
        order: Option<u64>,
    },
    /// Count subspaces of GF(q)^n whose special entries are all nonzero.
    SpecialEntries {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        shape: Shape,
    },
    /// Divisibility facts for an order A dividing q^n + 1.
    Numbth {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        order: u64,
    },
}

#[derive(Subcommand, Debug)]
pub enum EnnolaCmd {
    /// The degree polynomial of every partition of n.
    Degrees {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        at: Option<i64>,
    },
    /// The three index identities.
    Verify {
        #[command(flatten)]
        shape: Shape,
        #[arg(long)]
        q: i64,
    },
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Cap on the n ranges of the scanning checks.
    #[arg(long)]
    pub max_n: Option<usize>,
    /// Run only these checks (e.g. C1 C7 S3).
    #[arg(long, num_args = 1..)]
    pub only: Vec<String>,
}

/// What to print and the exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output { stdout, stderr: String::new(), code: EXIT_OK }
    }

    fn checked(stdout: String, matched: bool, counterexample: Option<String>) -> Self {
        let stderr =
            if matched { String::new() } else { format!("mismatch: {}\n", counterexample.unwrap_or_default()) };
        Output { stdout, stderr, code: if matched { EXIT_OK } else { EXIT_MISMATCH } }
    }

    fn usage(msg: impl std::fmt::Display) -> Self {
        Output { stdout: String::new(), stderr: format!("error: {msg}\n"), code: EXIT_USAGE }
    }
}

fn envelope(cli: &Cli, command: &str, body: Value) -> String {
    let mut v = json!({ "command": command, "seed": cli.seed });
    if let (Value::Object(dst), Value::Object(src)) = (&mut v, body) {
        dst.extend(src);
    }
    let mut s = serde_json::to_string_pretty(&v).expect("serializable");
    s.push('\n');
    s
}

macro_rules! tryu {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return Output::usage(e),
        }
    };
}

pub fn run(cli: &Cli) -> Output {
    let budget = cli.budget.unwrap_or_else(budget_from_env);
    if budget == 0 {
        return Output::usage("budget must be positive");
    }
    match &cli.command {
        Command::Words(WordsCmd::Enumerate { shape, admissible_only }) => {
            let rows: Vec<WordRow> = tryu!(words(shape.n, shape.k))
                .map(|w| WordRow::from_word(&w))
                .filter(|r| r.admissible || !admissible_only)
                .collect();
            if cli.json {
                return Output::ok(envelope(cli, "words enumerate", json!({"n": shape.n, "k": shape.k, "rows": rows})));
            }
            let mut s = format!(
                "{:<w$}  {:<w2$}  adm  inv  a  p  weight\n",
                "word",
                "pairing",
                w = shape.n.max(4),
                w2 = (2 * shape.n).max(7)
            );
            for r in &rows {
                let opt = |x: Option<u64>| x.map_or("-".to_string(), |v| v.to_string());
                s += &format!(
                    "{:<w$}  {:<w2$}  {:<3}  {:<3}  {:<2} {:<2} {}\n",
                    r.bits,
                    r.pairing,
                    if r.admissible { "yes" } else { "no" },
                    r.inv,
                    opt(r.a),
                    opt(r.p),
                    r.weight.clone().unwrap_or_else(|| "-".into()),
                    w = shape.n.max(4),
                    w2 = (2 * shape.n).max(7)
                );
            }
            Output::ok(s)
        }
        Command::Partitions(PartitionsCmd::List { shape, admissible_only }) => {
            if shape.k > shape.n {
                return Output::usage(format!("need k <= n, got n = {}, k = {}", shape.n, shape.k));
            }
            let mut rows = Vec::new();
            for lam in partitions_in_box(shape.n - shape.k, shape.k) {
                let row = tryu!(PartitionRow::new(&lam, shape.n, shape.k));
                if row.admissible || !admissible_only {
                    rows.push(row);
                }
            }
            if cli.json {
                return Output::ok(envelope(cli, "partitions list", json!({"n": shape.n, "k": shape.k, "rows": rows})));
            }
            let mut s = String::from("partition  word  pairing  adm  corners  weight\n");
            for r in &rows {
                s += &format!(
                    "{}  {}  {}  {}  {}  {}\n",
                    r.partition,
                    r.word,
                    r.pairing,
                    if r.admissible { "yes" } else { "no" },
                    r.special_corners.map_or("-".into(), |c| c.to_string()),
                    r.weight.clone().unwrap_or_else(|| "-".into())
                );
            }
            Output::ok(s)
        }
        Command::Qbinom(a) => {
            let poly = if a.primed {
                tryu!(primed_qbinomial(a.shape.n, a.shape.k)).poly
            } else {
                tryu!(qbinomial(a.shape.n, a.shape.k)).poly
            };
            let value = a.at.map(|q| poly.eval_i64(q).expect("polynomial"));
            if cli.json {
                return Output::ok(envelope(
                    cli,
                    "qbinom",
                    json!({
                        "n": a.shape.n, "k": a.shape.k, "primed": a.primed,
                        "poly": poly.to_string(), "terms": poly,
                        "at": a.at, "value": value.map(|v| v.to_string()),
                    }),
                ));
            }
            let mut s = format!("{poly}\n");
            if let (Some(q), Some(v)) = (a.at, value) {
                s += &format!("at q = {q}: {v}\n");
            }
            Output::ok(s)
        }
        Command::Qt(a) => qt_command(cli, a),
        Command::Gf(cmd) => gf_command(cli, cmd, budget),
        Command::Ennola(EnnolaCmd::Degrees { n, at }) => {
            let mut rows = Vec::new();
            for lam in crate::partitions::partitions_of(*n as u32) {
                let f = tryu!(hook_degree_poly(&lam));
                let value = at.map(|q| f.at(q).to_string());
                rows.push(json!({"partition": f.partition, "poly": f.poly.to_string(), "value": value}));
            }
            let report = tryu!(degree_report(*n));
            if cli.json {
                return Output::checked(
                    envelope(cli, "ennola degrees", json!({"n": n, "at": at, "rows": rows, "report": report})),
                    report.all(),
                    report.counterexample.clone(),
                );
            }
            let mut s = String::new();
            for r in &rows {
                s += &format!("{}  {}", r["partition"].as_str().unwrap_or(""), r["poly"].as_str().unwrap_or(""));
                if let Some(v) = r["value"].as_str() {
                    s += &format!("  = {v}");
                }
                s.push('\n');
            }
            s += &format!("checks: {}\n", if report.all() { "ok" } else { "FAILED" });
            Output::checked(s, report.all(), report.counterexample.clone())
        }
        Command::Ennola(EnnolaCmd::Verify { shape, q }) => {
            if *q < 2 {
                return Output::usage(format!("q must be at least 2, got {q}"));
            }
            let r = tryu!(verify_index_identities(shape.n, shape.k, *q));
            let out = if cli.json {
                envelope(cli, "ennola verify", json!({"report": r}))
            } else {
                let yes = |b: bool| if b { "ok" } else { "FAILED" };
                format!(
                    "symmetric group index: {}\ngeneral linear index: {} (symbolic {})\nunitary index: {} (symbolic {})\n",
                    yes(r.symmetric),
                    yes(r.general_linear),
                    yes(r.general_linear_symbolic),
                    yes(r.unitary),
                    yes(r.unitary_symbolic)
                )
            };
            Output::checked(out, r.all(), Some(format!("(n,k,q) = ({},{},{q})", shape.n, shape.k)))
        }
        Command::VerifyAll(v) => verify_all(cli, v, budget),
    }
}

fn qt_command(cli: &Cli, a: &QtArgs) -> Output {
    let (n, k, q) = (a.shape.n, a.shape.k, a.q);
    let b = tryu!(qt_binomial(n, k, q));
    let mut body = json!({
        "n": n, "k": k, "q": q,
        "poly": b.poly.to_string(), "terms": b.poly,
        "uniform_sign": b.has_uniform_sign(), "symmetric": b.is_symmetric(),
    });
    let mut text = format!("[{n},{k}]_(q={q},t) = {}\n", b.poly);
    if a.x_poly || a.eval_order.is_some() {
        let x = tryu!(build_x(n, k, q));
        body["x"] = json!({"e": x.e, "poly": x.poly.to_string(), "terms": x.poly, "at_one": x.at_one().to_string()});
        if a.x_poly {
            text += &format!("E = {}\nX(t) = {}\nX(1) = {}\n", x.e, x.poly, x.at_one());
        }
        if let Some(order) = a.eval_order {
            let v = tryu!(evaluate_x_at_order(&x, order));
            body["eval"] = json!({"order": order, "value": v.to_string()});
            text += &format!("X(ω) for ω of order {order}: {v}\n");
        }
    }
    if cli.json {
        Output::ok(envelope(cli, "qt", body))
    } else {
        Output::ok(text)
    }
}

#[derive(Serialize)]
struct CspRow {
    order: u64,
    fixed_count: u64,
    x_eval: String,
    predicted: String,
    #[serde(rename = "match")]
    matched: bool,
}

fn gf_command(cli: &Cli, cmd: &GfCmd, budget: u64) -> Output {
    match cmd {
        GfCmd::CountNondeg { tower: t, m } => {
            let tower = tryu!(build_tower(t.p, t.e, t.n, budget));
            if *m == 0 || t.n % m != 0 {
                return Output::usage(format!("m = {m} does not divide n = {}", t.n));
            }
            let count = tryu!(count_nondegenerate(&tower, *m, t.k, budget));
            let big_q = (tower.q as i64).pow(*m as u32);
            let formula = tryu!(predicted_fixed_count(t.n / m, t.k, big_q, 1));
            let matched = BigInt::from(count) == formula;
            let out = if cli.json {
                envelope(
                    cli,
                    "gf count-nondeg",
                    json!({"p": t.p, "e": t.e, "q": tower.q, "n": t.n, "k": t.k, "m": m,
                           "count": count, "formula": formula.to_string(), "match": matched}),
                )
            } else {
                format!("nondegenerate {}-subspaces over GF({}^{}): {count}\nformula: {formula}\n", t.k, tower.q, 2 * m)
            };
            Output::checked(out, matched, Some(format!("(q,n,k,m) = ({},{},{},{m})", tower.q, t.n, t.k)))
        }
        GfCmd::Csp { tower: t, order } => {
            let tower = tryu!(build_tower(t.p, t.e, t.n, budget));
            let q = tower.q as i64;
            let x = tryu!(build_x(t.n, t.k, q));
            let group = UnitaryCyclicGroup::new(&tower);
            let orders = match order {
                Some(a) => vec![*a],
                None => group.divisors(),
            };
            let mut rows = Vec::new();
            for a in orders {
                let c = tryu!(group.element_of_order(&tower, a));
                let fixed_count = tryu!(count_fixed_subspaces(&tower, c, t.k, budget));
                let value = tryu!(evaluate_x_at_order(&x, a));
                let predicted = tryu!(predicted_fixed_count(t.n, t.k, q, a));
                let matched = BigInt::from(fixed_count) == value && value == predicted;
                rows.push(CspRow {
                    order: a,
                    fixed_count,
                    x_eval: value.to_string(),
                    predicted: predicted.to_string(),
                    matched,
                });
            }
            let all = rows.iter().all(|r| r.matched);
            let first_bad =
                rows.iter().find(|r| !r.matched).map(|r| format!("(q,n,k) = ({q},{},{}), order {}", t.n, t.k, r.order));
            let out = if cli.json {
                envelope(
                    cli,
                    "gf csp",
                    json!({"q": q, "n": t.n, "k": t.k, "x_poly": x.poly.to_string(), "rows": rows, "match": all}),
                )
            } else {
                let mut s = format!(
                    "X(t) = {}\n{:>6}  {:>5}  {:>11}  {:>8}  match\n",
                    x.poly, "order", "m", "fixed_count", "X(ω)"
                );
                for r in &rows {
                    s += &format!(
                        "{:>6}  {:>5}  {:>11}  {:>8}  {}\n",
                        r.order,
                        subfield_degree(t.n, q, r.order),
                        r.fixed_count,
                        r.x_eval,
                        if r.matched { "yes" } else { "NO" }
                    );
                }
                s
            };
            Output::checked(out, all, first_bad)
        }
        GfCmd::SpecialEntries { q, shape } => {
            let count = tryu!(count_special_entry_subspaces(*q, shape.n, shape.k, budget));
            let primed = tryu!(special_entry_prediction(*q, shape.n, shape.k));
            let matched = BigInt::from(count) == primed;
            let out = if cli.json {
                envelope(
                    cli,
                    "gf special-entries",
                    json!({"q": q, "n": shape.n, "k": shape.k, "count": count, "primed": primed.to_string(), "match": matched}),
                )
            } else {
                format!("subspaces with special entries nonzero: {count}\nprimed q-binomial at q = {q}: {primed}\n")
            };
            Output::checked(out, matched, Some(format!("(q,n,k) = ({q},{},{})", shape.n, shape.k)))
        }
        GfCmd::Numbth { q, n, order } => {
            let r = tryu!(numbth_checks(*q, *n, *order));
            let out = if cli.json {
                envelope(cli, "gf numbth", json!({"report": r}))
            } else {
                format!(
                    "m = {}\n(i) {}\n(ii) {}\n(iii) {}\n(iv) {}\n",
                    r.m, r.divides_qm_plus_one, r.m_is_minimal, r.plus_rule, r.minus_rule
                )
            };
            Output::checked(out, r.all(), r.counterexample.clone())
        }
    }
}

fn verify_all(cli: &Cli, v: &VerifyArgs, budget: u64) -> Output {
    let cfg = SuiteConfig { max_n: v.max_n, seed: cli.seed, budget };
    let results = if v.only.is_empty() {
        run_all(&cfg)
    } else {
        let mut out = Vec::new();
        for id in &v.only {
            match run_check(id, &cfg) {
                Some(t) => out.push(t),
                None => {
                    return Output::usage(format!("unknown check {id}; valid: {}", crate::suite::check_ids().join(" ")))
                }
            }
        }
        out
    };
    let passed = results.iter().all(|t| t.outcome.passed);
    let first_bad = results
        .iter()
        .find(|t| !t.outcome.passed)
        .map(|t| format!("{}: {}", t.outcome.id, t.outcome.counterexample.clone().unwrap_or_default()));
    let out = if cli.json {
        let checks: Vec<_> = results.iter().map(|t| &t.outcome).collect();
        envelope(cli, "verify-all", json!({"max_n": v.max_n, "budget": budget, "checks": checks, "passed": passed}))
    } else {
        let mut s = String::new();
        for t in &results {
            let o = &t.outcome;
            s += &format!(
                "{} {:<4} {} ({:.2?}): {}",
                if o.passed { "PASS" } else { "FAIL" },
                o.id,
                o.name,
                t.elapsed,
                o.detail
            );
            if let Some(cx) = &o.counterexample {
                s += &format!(" [counterexample: {cx}]");
            }
            s.push('\n');
        }
        s += &format!("{} of {} checks passed\n", results.iter().filter(|t| t.outcome.passed).count(), results.len());
        s
    };
    Output::checked(out, passed, first_bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mismatch_maps_to_exit_one() {
        let out = Output::checked("x\n".into(), false, Some("(n,k) = (1,0)".into()));
        assert_eq!(out.code, EXIT_MISMATCH);
        assert_eq!(out.stderr, "mismatch: (n,k) = (1,0)\n");
        assert_eq!(Output::checked(String::new(), true, None).code, EXIT_OK);
    }
}
