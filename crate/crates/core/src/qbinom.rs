//! Gaussian binomials `[n,k]_q`, the primed binomial
//! `[n,k]'_q = (-1)^{k(n-k)} [n,k]_{-q}`, their Pascal recurrences,
//! lucasnomials, and the series counting admissible words.

use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{BivarPoly, ExactError, LaurentPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QbinomError {
    #[error("need 0 <= k <= n, got n = {n}, k = {k}")]
    BadShape { n: usize, k: usize },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

fn check_shape(n: usize, k: usize) -> Result<(), QbinomError> {
    if k > n {
        Err(QbinomError::BadShape { n, k })
    } else {
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QBinomial {
    pub n: usize,
    pub k: usize,
    pub poly: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimedQBinomial {
    pub n: usize,
    pub k: usize,
    pub poly: LaurentPoly,
}

/// Rows of Pascal's q-triangle computed so far.
fn pascal_rows() -> &'static Mutex<Vec<Vec<LaurentPoly>>> {
    static ROWS: OnceLock<Mutex<Vec<Vec<LaurentPoly>>>> = OnceLock::new();
    ROWS.get_or_init(|| Mutex::new(vec![vec![LaurentPoly::one()]]))
}

/// `[n,k]_q` through the recurrence `[n,k] = [n-1,k] + q^{n-k} [n-1,k-1]`,
/// memoized across calls.
pub fn qbinomial(n: usize, k: usize) -> Result<QBinomial, QbinomError> {
    check_shape(n, k)?;
    let mut rows = pascal_rows().lock().unwrap_or_else(|e| e.into_inner());
    while rows.len() <= n {
        let m = rows.len();
        let prev = &rows[m - 1];
        let row: Vec<LaurentPoly> = (0..=m)
            .map(|j| {
                let mut entry = if j < m { prev[j].clone() } else { LaurentPoly::zero() };
                if j > 0 {
                    entry += &prev[j - 1].shift((m - j) as i64);
                }
                entry
            })
            .collect();
        rows.push(row);
    }
    Ok(QBinomial { n, k, poly: rows[n][k].clone() })
}

/// `[n,k]_q` as `Π_{i=1}^k (1 - q^{n-k+i}) / (1 - q^i)` by exact division.
/// Independent of the memoized recurrence.
pub fn qbinomial_product(n: usize, k: usize) -> Result<LaurentPoly, QbinomError> {
    check_shape(n, k)?;
    let num =
        LaurentPoly::product(&(1..=k).map(|i| LaurentPoly::one_minus_x_pow((n - k + i) as i64)).collect::<Vec<_>>());
    let mut quot = num;
    for i in 1..=k {
        quot = quot.div_exact(&LaurentPoly::one_minus_x_pow(i as i64))?;
    }
    Ok(quot)
}

/// `(-1)^{k(n-k)} [n,k]_{-q}`.
pub fn primed_qbinomial(n: usize, k: usize) -> Result<PrimedQBinomial, QbinomError> {
    let base = qbinomial(n, k)?;
    let flipped = base.poly.negate_var();
    let poly = if (k * (n - k)) % 2 == 1 { -flipped } else { flipped };
    Ok(PrimedQBinomial { n, k, poly })
}

/// `[n,k]_q` with the convention that it vanishes outside `0 <= k <= n`.
fn qbin_ext(n: i64, k: i64) -> LaurentPoly {
    if n < 0 || k < 0 || k > n {
        return LaurentPoly::zero();
    }
    qbinomial(n as usize, k as usize).expect("shape checked").poly
}

fn primed_ext(n: i64, k: i64) -> LaurentPoly {
    if n < 0 || k < 0 || k > n {
        return LaurentPoly::zero();
    }
    primed_qbinomial(n as usize, k as usize).expect("shape checked").poly
}

/// Outcome of the Pascal recurrence checks at one `(n, k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PascalReport {
    /// `[n,k] = [n-1,k] + q^{n-k}[n-1,k-1]`
    pub pascal: bool,
    /// `[n,k] = [n-2,k] + q^{n-k-1}(q+1)[n-2,k-1] + q^{2(n-k)}[n-2,k-2]`
    pub iterated: bool,
    /// The primed form: the one-step recurrence for even `k`, the
    /// two-step one with `(q-1)` for odd `k`.
    pub primed: bool,
}

impl PascalReport {
    pub fn all(&self) -> bool {
        self.pascal && self.iterated && self.primed
    }
}

/// Checks the q-Pascal recurrence, its iterate, and the matching primed
/// recurrence as exact polynomial identities. Requires `n >= 2`.
pub fn check_pascal(n: usize, k: usize) -> Result<PascalReport, QbinomError> {
    check_shape(n, k)?;
    if n < 2 {
        return Err(QbinomError::BadShape { n, k });
    }
    let (n, k) = (n as i64, k as i64);
    let q_plus_1 = LaurentPoly::from_terms([(0, 1), (1, 1)]);
    let q_minus_1 = LaurentPoly::from_terms([(0, -1), (1, 1)]);

    let lhs = qbin_ext(n, k);
    let pascal = lhs == &qbin_ext(n - 1, k) + &qbin_ext(n - 1, k - 1).shift(n - k);
    let iterated = lhs
        == &(&qbin_ext(n - 2, k) + &(&q_plus_1 * &qbin_ext(n - 2, k - 1)).shift(n - k - 1))
            + &qbin_ext(n - 2, k - 2).shift(2 * (n - k));

    let plhs = primed_ext(n, k);
    let primed = if k % 2 == 0 {
        plhs == &primed_ext(n - 1, k) + &primed_ext(n - 1, k - 1).shift(n - k)
    } else {
        plhs == &(&primed_ext(n - 2, k) + &(&q_minus_1 * &primed_ext(n - 2, k - 1)).shift(n - k - 1))
            + &primed_ext(n - 2, k - 2).shift(2 * (n - k))
    };
    Ok(PascalReport { pascal, iterated, primed })
}

/// Coefficients of `x^k, ..., x^N` in
/// `x^k / ((1-x)^{k+1} (1+x)^{⌊(k+1)/2⌋})`.
pub fn omega_prime_count_series(k: usize, max_n: usize) -> Vec<BigInt> {
    if max_n < k {
        return Vec::new();
    }
    let len = max_n - k + 1;
    let mut series = vec![BigInt::zero(); len];
    series[0] = BigInt::one();
    for _ in 0..=k {
        // multiply by 1/(1-x)
        for i in 1..len {
            let prev = series[i - 1].clone();
            series[i] += prev;
        }
    }
    for _ in 0..k.div_ceil(2) {
        // multiply by 1/(1+x)
        for i in 1..len {
            let prev = series[i - 1].clone();
            series[i] -= prev;
        }
    }
    series
}

/// The Lucas polynomial `{n}` with `{0} = 0`, `{1} = 1`,
/// `{n} = s{n-1} + t{n-2}`.
pub fn lucas_number(n: usize) -> BivarPoly {
    let (mut prev, mut cur) = (BivarPoly::zero(), BivarPoly::one());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &(&BivarPoly::s() * &cur) + &(&BivarPoly::t() * &prev);
        prev = cur;
        cur = next;
    }
    cur
}

/// `{n}! = {1}{2}...{n}`.
pub fn lucas_factorial(n: usize) -> BivarPoly {
    (1..=n).fold(BivarPoly::one(), |acc, i| &acc * &lucas_number(i))
}

/// `{n}! / ({k}! {n-k}!)` by exact division in `Z[s,t]`.
pub fn lucasnomial(n: usize, k: usize) -> Result<BivarPoly, QbinomError> {
    check_shape(n, k)?;
    let q = lucas_factorial(n).div_exact(&lucas_factorial(k))?;
    Ok(q.div_exact(&lucas_factorial(n - k))?)
}

/// Substitutes `s = q + 1`, `t = -q`.
pub fn lucas_at_q(b: &BivarPoly) -> LaurentPoly {
    b.substitute(&LaurentPoly::from_terms([(0, 1), (1, 1)]), &LaurentPoly::monomial(-1, 1))
}

/// Substitutes `s = -(q - 1)`, `t = q`.
pub fn lucas_at_negative_q(b: &BivarPoly) -> LaurentPoly {
    b.substitute(&LaurentPoly::from_terms([(0, 1), (1, -1)]), &LaurentPoly::x())
}

/// Observed sign `ε` with `lucas_at_negative_q({n,k}) = ε [n,k]'_q`, or
/// `None` when the two differ by more than a sign.
pub fn lucasnomial_primed_sign(n: usize, k: usize) -> Result<Option<i8>, QbinomError> {
    let sub = lucas_at_negative_q(&lucasnomial(n, k)?);
    let primed = primed_qbinomial(n, k)?.poly;
    Ok(if sub == primed {
        Some(1)
    } else if sub == -primed {
        Some(-1)
    } else {
        None
    })
}
