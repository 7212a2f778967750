//! The (q,t)-binomial
//! `[n,k]_{q,t} = Π_{i=1}^k (1 - t^{q^n - q^{i-1}}) / (1 - t^{q^k - q^{i-1}})`
//! for integers `|q| >= 2`, and the cyclic sieving polynomial `X(t)` for
//! nondegenerate unitary subspaces.
//!
//! For `q <= -2` the exponents go negative and the result is a Laurent
//! polynomial in `t` whose coefficients all carry the sign
//! `(-1)^{k(n-k)}`. Construction multiplies out the numerator and divides
//! by one denominator factor at a time; every intermediate quotient is a
//! Laurent polynomial because the remaining denominator factors still
//! divide the final answer.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{eval_at_primitive_root, ExactError, LaurentPoly};
use crate::qbinom::{qbinomial, QbinomError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QtError {
    #[error("need 0 <= k <= n, got n = {n}, k = {k}")]
    BadShape { n: usize, k: usize },
    #[error("q must satisfy |q| >= 2, got {0}")]
    BadQ(i64),
    #[error("q must be a negative integer here, got {0}")]
    NotNegative(i64),
    #[error("n must be odd, got {0}")]
    EvenN(usize),
    #[error("q must be a prime power, got {0}")]
    NotPrimePower(i64),
    #[error("order {order} does not divide q^n + 1 = {modulus}")]
    OrderNotDividing { order: u64, modulus: BigInt },
    #[error("X(t) has a negative coefficient at t^{exponent}")]
    NegativeCoefficient { exponent: i64 },
    #[error("exponent overflow computing {0}")]
    Overflow(String),
    #[error("L'Hopital limit needs r ≡ ±s (mod {order}), got r = {r}, s = {s}")]
    PreconditionViolated { r: i64, s: i64, order: u64 },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

impl From<QbinomError> for QtError {
    fn from(e: QbinomError) -> Self {
        match e {
            QbinomError::BadShape { n, k } => QtError::BadShape { n, k },
            QbinomError::Exact(x) => QtError::Exact(x),
        }
    }
}

fn ipow(base: i64, exp: usize) -> Result<i64, QtError> {
    base.checked_pow(exp as u32).ok_or_else(|| QtError::Overflow(format!("{base}^{exp}")))
}

fn validate(n: usize, k: usize, q: i64) -> Result<(), QtError> {
    if k > n {
        return Err(QtError::BadShape { n, k });
    }
    if q.abs() < 2 {
        return Err(QtError::BadQ(q));
    }
    Ok(())
}

/// True when `q` is a power of a prime.
pub fn is_prime_power(q: i64) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut r = q;
            while r % p == 0 {
                r /= p;
            }
            return r == 1;
        }
        p += 1;
    }
    true
}

/// `(1 - t^{q m}) / (1 - t^m)` written out as a finite geometric sum:
/// `1 + t^m + ... + t^{(q-1)m}` for `q >= 2` and
/// `-t^{qm} (1 + t^m + ... + t^{(-q-1)m})` for `q <= -2`.
pub fn geometric_ratio(m: i64, q: i64) -> LaurentPoly {
    let p =
        if q >= 1 { LaurentPoly::geometric(m, q as u64) } else { -LaurentPoly::geometric(m, (-q) as u64).shift(q * m) };
    p.with_var('t')
}

/// Multiplies the `(1 - t^a)` factors, then divides by each `(1 - t^b)`.
fn ratio_of_products(nums: &[i64], dens: &[i64]) -> Result<LaurentPoly, ExactError> {
    let factors: Vec<LaurentPoly> = nums.iter().map(|&a| LaurentPoly::one_minus_x_pow(a)).collect();
    let mut acc = LaurentPoly::product(&factors).with_var('t');
    for &b in dens {
        acc = acc.div_exact(&LaurentPoly::one_minus_x_pow(b))?;
    }
    Ok(acc.with_var('t'))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QtBinomial {
    pub n: usize,
    pub k: usize,
    pub q: i64,
    pub poly: LaurentPoly,
}

impl QtBinomial {
    /// `k (q^n - q^k)`, the centre of symmetry doubled.
    pub fn symmetry_degree(&self) -> i64 {
        symmetry_degree(self.n, self.k, self.q).expect("validated at construction")
    }

    /// `(-1)^{k(n-k)}`.
    pub fn expected_sign(&self) -> i64 {
        if (self.k * (self.n - self.k)).is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    /// All nonzero coefficients have sign `(-1)^{k(n-k)}`.
    pub fn has_uniform_sign(&self) -> bool {
        let s = self.expected_sign();
        self.poly.terms().all(|(_, c)| if s > 0 { c.is_positive() } else { c.is_negative() })
    }

    /// `t^{k(q^n-q^k)} p(1/t) = p`.
    pub fn is_symmetric(&self) -> bool {
        self.poly.reflect(self.symmetry_degree()) == self.poly
    }
}

fn symmetry_degree(n: usize, k: usize, q: i64) -> Result<i64, QtError> {
    let d = ipow(q, n)? - ipow(q, k)?;
    d.checked_mul(k as i64).ok_or_else(|| QtError::Overflow("k(q^n - q^k)".into()))
}

/// `[n,k]_{q,t}` as an exact Laurent polynomial in `t`.
pub fn qt_binomial(n: usize, k: usize, q: i64) -> Result<QtBinomial, QtError> {
    validate(n, k, q)?;
    let qn = ipow(q, n)?;
    let qk = ipow(q, k)?;
    let mut nums = Vec::with_capacity(k);
    let mut dens = Vec::with_capacity(k);
    for i in 1..=k {
        let qi = ipow(q, i - 1)?;
        nums.push(qn - qi);
        dens.push(qk - qi);
    }
    let poly = ratio_of_products(&nums, &dens)?;
    Ok(QtBinomial { n, k, q, poly })
}

/// `[n,k]_{q, t^sub}`, zero outside `0 <= k <= n`.
fn qt_ext(n: i64, k: i64, q: i64, sub: i64) -> Result<LaurentPoly, QtError> {
    if n < 0 || k < 0 || k > n {
        return Ok(LaurentPoly::zero());
    }
    Ok(qt_binomial(n as usize, k as usize, q)?.poly.substitute_power(sub))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct QtRecurrenceReport {
    /// One-step (q,t)-Pascal recurrence with `t ↦ t^q`.
    pub pascal: bool,
    /// Two-step recurrence `A + B + C + D` with `t ↦ t^{q^2}`.
    pub iterated: bool,
}

impl QtRecurrenceReport {
    pub fn all(&self) -> bool {
        self.pascal && self.iterated
    }
}

/// Checks the one- and two-step (q,t)-Pascal recurrences as identities of
/// Laurent polynomials. Requires `n >= 2`.
pub fn verify_qt_recurrences(n: usize, k: usize, q: i64) -> Result<QtRecurrenceReport, QtError> {
    validate(n, k, q)?;
    if n < 2 {
        return Err(QtError::BadShape { n, k });
    }
    let lhs = qt_binomial(n, k, q)?.poly;
    let (ni, ki) = (n as i64, k as i64);
    let p = |e: usize| ipow(q, e);
    let qk = p(k)?;

    // [n-1,k-1]_{t^q} + t^{q^k-1} Π_{i<k} R(q^k - q^i) [n-1,k]_{t^q}
    let mut prod = LaurentPoly::one();
    for i in 0..k {
        prod = &prod * &geometric_ratio(qk - p(i)?, q);
    }
    let pascal_rhs = &qt_ext(ni - 1, ki - 1, q, q)? + &(&prod * &qt_ext(ni - 1, ki, q, q)?).shift(qk - 1);
    let pascal = lhs == pascal_rhs;

    let q2 = q * q;
    let a = qt_ext(ni - 2, ki - 2, q, q2)?;
    let mut b = if k >= 1 { qt_ext(ni - 2, ki - 1, q, q2)?.shift(qk - q) } else { LaurentPoly::zero() };
    for i in 0..k.saturating_sub(1) {
        b = &b * &geometric_ratio(qk - p(i + 1)?, q);
    }
    let mut c = qt_ext(ni - 2, ki - 1, q, q2)?.shift(qk - 1);
    let mut d = qt_ext(ni - 2, ki, q, q2)?.shift(p(k + 1)? + qk - q - 1);
    for i in 0..k {
        let m = qk - p(i)?;
        c = &c * &geometric_ratio(m, q);
        d = &d * &geometric_ratio(m, q2);
    }
    let iterated = lhs == &(&(&a + &b) + &c) + &d;
    Ok(QtRecurrenceReport { pascal, iterated })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtremePowers {
    pub min_exponent: i64,
    pub max_exponent: i64,
    pub min_coeff: BigInt,
    pub max_coeff: BigInt,
}

/// Lowest and highest powers of `t` in `[n,k]_{q,t}` with their
/// coefficients, for negative `q`.
pub fn extreme_powers(n: usize, k: usize, q: i64) -> Result<ExtremePowers, QtError> {
    if q >= 0 {
        return Err(QtError::NotNegative(q));
    }
    let b = qt_binomial(n, k, q)?;
    let (Some(lo), Some(hi)) = (b.poly.min_degree(), b.poly.max_degree()) else {
        unreachable!("(q,t)-binomials are nonzero");
    };
    Ok(ExtremePowers { min_exponent: lo, max_exponent: hi, min_coeff: b.poly.coeff(lo), max_coeff: b.poly.coeff(hi) })
}

/// The lowest and highest exponents predicted by the parity case table
/// for `q <= -2`.
pub fn predicted_extreme_powers(n: usize, k: usize, q: i64) -> Result<(i64, i64), QtError> {
    validate(n, k, q)?;
    if q >= 0 {
        return Err(QtError::NotNegative(q));
    }
    let ki = k as i64;
    let qn = ipow(q, n)?;
    let qk = ipow(q, k)?;
    // (1 - q^k)/(1 - q) = 1 + q + ... + q^{k-1}
    let geo: i64 = (0..k).map(|i| ipow(q, i)).sum::<Result<i64, _>>()?;
    let full = ki * (qn - qk);
    Ok(match (n.is_multiple_of(2), k.is_multiple_of(2)) {
        (true, true) => (0, full),
        (false, false) => (full, 0),
        (false, true) => (ki * qn - geo, -ki * qk + geo),
        (true, false) => (-ki * qk + geo, ki * qn - geo),
    })
}

/// `Y(q,t) = Π_{i<k} (1 - t^{q^n - q^{n-k+i}})/(1 - t^{q^k - q^i}) · [n,k]_{q,t}`,
/// whose value at `t = 1` is `q^{k(n-k)} [n,k]_q`.
pub fn build_y(n: usize, k: usize, q: i64) -> Result<LaurentPoly, QtError> {
    validate(n, k, q)?;
    let qn = ipow(q, n)?;
    let qk = ipow(q, k)?;
    let mut nums = Vec::new();
    let mut dens = Vec::new();
    for i in 0..k {
        nums.push(qn - ipow(q, n - k + i)?);
        dens.push(qk - ipow(q, i)?);
    }
    let front = ratio_of_products(&nums, &dens)?;
    Ok(&front * &qt_binomial(n, k, q)?.poly)
}

/// The cyclic sieving polynomial `X(t)` for `n` odd and `q` a prime power.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CspPolynomial {
    pub n: usize,
    pub k: usize,
    pub q: i64,
    /// The `t^E` prefactor exponent.
    pub e: i64,
    pub poly: LaurentPoly,
}

impl CspPolynomial {
    /// `q^n + 1`, the order of the cyclic group.
    pub fn group_order(&self) -> BigInt {
        num_traits::pow(BigInt::from(self.q), self.n) + 1
    }

    pub fn at_one(&self) -> BigInt {
        self.poly.value_at_one()
    }

    pub fn at_minus_one(&self) -> BigInt {
        self.poly.eval_i64(-1).expect("X(t) is a polynomial")
    }
}

fn csp_exponent(k: usize, q: i64) -> Result<i64, QtError> {
    if k % 2 == 1 {
        return Ok(0);
    }
    let qk = ipow(q, k)?;
    let mut sum = 0i64;
    for i in 0..k {
        sum += qk - ipow(-q, i)?;
    }
    Ok(2 * sum)
}

/// Builds `X(t)` from its product form
/// `t^E Π_{i<k} (1 - t^{q^n + (-q)^{n-k+i}}) (1 - t^{q^n + (-q)^i})
///      / (1 - t^{q^k - (-1)^k (-q)^i})^2`.
pub fn build_x(n: usize, k: usize, q: i64) -> Result<CspPolynomial, QtError> {
    validate(n, k, q)?;
    if n.is_multiple_of(2) {
        return Err(QtError::EvenN(n));
    }
    if !is_prime_power(q) {
        return Err(QtError::NotPrimePower(q));
    }
    let qn = ipow(q, n)?;
    let qk = ipow(q, k)?;
    let sign_k = if k.is_multiple_of(2) { 1 } else { -1 };
    let mut nums = Vec::with_capacity(2 * k);
    let mut dens = Vec::with_capacity(2 * k);
    for i in 0..k {
        nums.push(qn + ipow(-q, n - k + i)?);
        nums.push(qn + ipow(-q, i)?);
        let den = qk - sign_k * ipow(-q, i)?;
        dens.push(den);
        dens.push(den);
    }
    let e = csp_exponent(k, q)?;
    let poly = ratio_of_products(&nums, &dens)?.shift(e);
    if let Some((exponent, _)) = poly.terms().find(|(_, c)| c.is_negative()) {
        return Err(QtError::NegativeCoefficient { exponent });
    }
    if poly.min_degree().is_some_and(|d| d < 0) {
        return Err(QtError::NegativeCoefficient { exponent: poly.min_degree().unwrap_or(0) });
    }
    Ok(CspPolynomial { n, k, q, e, poly })
}

/// `(-q)^{k(n-k)} [n,k]_{-q}`, the expected value of `X(1)`.
pub fn x_at_one_expected(n: usize, k: usize, q: i64) -> Result<BigInt, QtError> {
    let b = qbinomial(n, k)?.poly.eval_i64(-q)?;
    Ok(num_traits::pow(BigInt::from(-q), k * (n - k)) * b)
}

/// `X(ω)` for `ω` a primitive `A`-th root of unity, where `A` must divide
/// `q^n + 1`.
pub fn evaluate_x_at_order(x: &CspPolynomial, order: u64) -> Result<BigInt, QtError> {
    let modulus = x.group_order();
    if order == 0 || !(&modulus % BigInt::from(order)).is_zero() {
        return Err(QtError::OrderNotDividing { order, modulus });
    }
    Ok(eval_at_primitive_root(&x.poly, order)?)
}

/// The unique `m | n` with `F_{q^2}(c) = F_{q^{2m}}` for `c` of order
/// `A | q^n + 1`: the least divisor `d` of `n` with `A | q^{2d} - 1`.
pub fn subfield_degree(n: usize, q: i64, order: u64) -> usize {
    (1..=n)
        .filter(|d| n.is_multiple_of(*d))
        .find(|&d| {
            let m: BigInt = num_traits::pow(BigInt::from(q), 2 * d) - 1;
            (m % BigInt::from(order)).is_zero()
        })
        .unwrap_or(n)
}

/// The fixed-point count the sieving argument predicts:
/// `(-Q)^{k'(n'-k')} [n',k']_{-Q}` with `Q = q^m` when `m | k`, else 0.
pub fn predicted_fixed_count(n: usize, k: usize, q: i64, order: u64) -> Result<BigInt, QtError> {
    validate(n, k, q)?;
    let m = subfield_degree(n, q, order);
    if !k.is_multiple_of(m) {
        return Ok(BigInt::zero());
    }
    let (np, kp) = (n / m, k / m);
    let big_q = ipow(q, m)?;
    let b = qbinomial(np, kp)?.poly.eval_i64(-big_q)?;
    Ok(num_traits::pow(BigInt::from(-big_q), kp * (np - kp)) * b)
}

/// Limit of `(1 - t^r)/(1 - t^s)` as `t → ω`, `ω` a primitive `A`-th root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LimitValue {
    /// `r/s`, when `r ≡ s ≡ 0`.
    Ratio(BigRational),
    /// `1`, when `r ≡ s ≢ 0`.
    One,
    /// `-ω^{exponent}` with `exponent ≡ -s (mod A)`, when `r ≡ -s ≢ 0`.
    NegOmegaPow { exponent: u64 },
}

impl LimitValue {
    /// The value as a polynomial in `ω` (to be read modulo `Φ_A`).
    pub fn as_poly(&self) -> Option<LaurentPoly> {
        match self {
            LimitValue::Ratio(r) if r.is_integer() => Some(LaurentPoly::constant(r.to_integer())),
            LimitValue::Ratio(_) => None,
            LimitValue::One => Some(LaurentPoly::one()),
            LimitValue::NegOmegaPow { exponent } => Some(LaurentPoly::monomial(-1, *exponent as i64)),
        }
    }
}

pub fn lhopital_limit(r: i64, s: i64, order: u64) -> Result<LimitValue, QtError> {
    let a = order as i64;
    if a == 0 {
        return Err(QtError::PreconditionViolated { r, s, order });
    }
    let (rr, sr) = (r.rem_euclid(a), s.rem_euclid(a));
    if rr == 0 && sr == 0 {
        if s == 0 {
            return Err(QtError::PreconditionViolated { r, s, order });
        }
        return Ok(LimitValue::Ratio(BigRational::new(r.into(), s.into())));
    }
    if rr == sr {
        return Ok(LimitValue::One);
    }
    if (rr + sr) % a == 0 {
        return Ok(LimitValue::NegOmegaPow { exponent: (-s).rem_euclid(a) as u64 });
    }
    Err(QtError::PreconditionViolated { r, s, order })
}

/// Compares `[n,k]_{q,t}` with `(-1)^{k(n-k)} [n,k]_{-q,t}` for `q >= 2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonotonicityComparison {
    pub plus_degree: i64,
    pub minus_degree: i64,
    pub plus_nonnegative: bool,
    pub minus_nonnegative: bool,
    pub difference_has_positive: bool,
    pub difference_has_negative: bool,
}

impl MonotonicityComparison {
    /// The naive coefficientwise inequality holds in one direction.
    pub fn is_monotone(&self) -> bool {
        !(self.difference_has_positive && self.difference_has_negative)
    }
}

pub fn compare_signed_pair(n: usize, k: usize, q: i64) -> Result<MonotonicityComparison, QtError> {
    if q < 2 {
        return Err(QtError::BadQ(q));
    }
    let plus = qt_binomial(n, k, q)?;
    let minus = qt_binomial(n, k, -q)?;
    let minus_poly = minus.poly.scale(&BigInt::from(minus.expected_sign()));
    let diff = &plus.poly - &minus_poly;
    let nonneg = |p: &LaurentPoly| p.all_coeffs_nonnegative() && p.min_degree().unwrap_or(0) >= 0;
    let difference_has_positive = diff.terms().any(|(_, c)| c.is_positive());
    let difference_has_negative = diff.terms().any(|(_, c)| c.is_negative());
    Ok(MonotonicityComparison {
        plus_degree: plus.poly.max_degree().unwrap_or(0),
        minus_degree: minus_poly.max_degree().unwrap_or(0),
        plus_nonnegative: nonneg(&plus.poly),
        minus_nonnegative: nonneg(&minus_poly),
        difference_has_positive,
        difference_has_negative,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::reduce_mod_cyclotomic;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn small_qt_binomials() {
        assert!(qt_binomial(5, 0, -3).unwrap().poly.is_one());
        assert_eq!(qt_binomial(2, 1, 2).unwrap().poly, lp(&[(0, 1), (1, 1), (2, 1)]));
        // (1 - t^{4-1}) / (1 - t^{-2-1}) = -t^3
        assert_eq!(qt_binomial(2, 1, -2).unwrap().poly, lp(&[(3, -1)]));
        // (1 - t^{-9}) / (1 - t^{-3}) = 1 + t^-3 + t^-6
        assert_eq!(qt_binomial(3, 1, -2).unwrap().poly, lp(&[(0, 1), (-3, 1), (-6, 1)]));
        assert!(matches!(qt_binomial(3, 1, 1), Err(QtError::BadQ(1))));
        assert!(matches!(qt_binomial(1, 3, 2), Err(QtError::BadShape { .. })));
    }

    #[test]
    fn geometric_ratio_matches_division() {
        for q in [-4, -3, -2, 2, 3, 4] {
            for m in [-7, -2, 1, 3, 5] {
                let direct = LaurentPoly::one_minus_x_pow(q * m).div_exact(&LaurentPoly::one_minus_x_pow(m)).unwrap();
                assert_eq!(geometric_ratio(m, q), direct, "q={q} m={m}");
            }
        }
    }

    #[test]
    fn recurrences_small() {
        assert!(verify_qt_recurrences(3, 1, 2).unwrap().all());
        assert!(verify_qt_recurrences(3, 1, -2).unwrap().all());
        for q in [-3, -2, 2, 3] {
            assert!(verify_qt_recurrences(2, 1, q).unwrap().all());
        }
    }

    #[test]
    fn extreme_power_cases() {
        let e = extreme_powers(4, 2, -2).unwrap();
        assert_eq!((e.min_exponent, e.max_exponent), (0, 24));
        let e = extreme_powers(3, 1, -2).unwrap();
        assert_eq!((e.min_exponent, e.max_exponent), (-6, 0));
        assert_eq!(predicted_extreme_powers(3, 1, -2).unwrap(), (-6, 0));
        assert_eq!(predicted_extreme_powers(3, 2, -2).unwrap(), (-15, -9));
        assert_eq!(predicted_extreme_powers(2, 1, -2).unwrap(), (3, 3));
        assert!(extreme_powers(3, 1, 2).is_err());
    }

    #[test]
    fn x_polynomial_boundary_cases() {
        assert!(build_x(5, 0, 2).unwrap().poly.is_one());
        assert!(build_x(5, 5, 3).unwrap().poly.is_one());
        let x = build_x(3, 1, 2).unwrap();
        assert_eq!(x.at_one(), BigInt::from(12));
        assert_eq!(x_at_one_expected(3, 1, 2).unwrap(), BigInt::from(12));
        assert!(matches!(build_x(4, 1, 2), Err(QtError::EvenN(4))));
        assert!(matches!(build_x(3, 1, 6), Err(QtError::NotPrimePower(6))));
    }

    #[test]
    fn x_evaluation_orders() {
        let x = build_x(3, 1, 2).unwrap();
        assert_eq!(evaluate_x_at_order(&x, 1).unwrap(), BigInt::from(12));
        assert_eq!(evaluate_x_at_order(&x, 9).unwrap(), BigInt::zero());
        assert_eq!(evaluate_x_at_order(&x, 3).unwrap(), BigInt::from(12));
        assert!(matches!(evaluate_x_at_order(&x, 4), Err(QtError::OrderNotDividing { .. })));
        assert_eq!(predicted_fixed_count(3, 1, 2, 9).unwrap(), BigInt::zero());
        assert_eq!(predicted_fixed_count(3, 1, 2, 3).unwrap(), BigInt::from(12));
    }

    #[test]
    fn lhopital_cases() {
        assert_eq!(lhopital_limit(6, 3, 3).unwrap(), LimitValue::Ratio(BigRational::from_integer(2.into())));
        assert_eq!(lhopital_limit(4, 1, 3).unwrap(), LimitValue::One);
        assert_eq!(lhopital_limit(2, 1, 3).unwrap(), LimitValue::NegOmegaPow { exponent: 2 });
        assert!(matches!(lhopital_limit(1, 0, 3), Err(QtError::PreconditionViolated { .. })));
    }

    #[test]
    fn lhopital_values_hold_modulo_cyclotomic() {
        // (1 - t^r) - L (1 - t^s) vanishes at ω when the denominator does not,
        // and for r ≡ s ≡ 0 the polynomial quotient reduces to r/s.
        for a in 2..=12u64 {
            for r in 1..=30i64 {
                for s in 1..=30i64 {
                    let Ok(limit) = lhopital_limit(r, s, a) else { continue };
                    match limit {
                        LimitValue::Ratio(v) => {
                            if r % s == 0 {
                                let quot = LaurentPoly::one_minus_x_pow(r)
                                    .div_exact(&LaurentPoly::one_minus_x_pow(s))
                                    .unwrap();
                                let rem = reduce_mod_cyclotomic(&quot, a);
                                assert_eq!(rem, LaurentPoly::constant(v.to_integer()), "r={r} s={s} A={a}");
                            }
                        }
                        other => {
                            let l = other.as_poly().unwrap();
                            let diff = &LaurentPoly::one_minus_x_pow(r) - &(&l * &LaurentPoly::one_minus_x_pow(s));
                            assert!(reduce_mod_cyclotomic(&diff, a).is_zero(), "r={r} s={s} A={a}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn y_at_one() {
        for (n, k, q) in [(3, 1, 2), (4, 2, 2), (3, 2, -2), (4, 2, 3)] {
            let y = build_y(n, k, q).unwrap();
            let expected =
                num_traits::pow(BigInt::from(q), k * (n - k)) * qbinomial(n, k).unwrap().poly.eval_i64(q).unwrap();
            assert_eq!(y.value_at_one(), expected, "({n},{k},{q})");
        }
    }

    #[test]
    fn prime_powers() {
        let pp: Vec<i64> = (1..=16).filter(|&q| is_prime_power(q)).collect();
        assert_eq!(pp, vec![2, 3, 4, 5, 7, 8, 9, 11, 13, 16]);
    }

    #[test]
    fn sign_and_symmetry_sweep() {
        for q in [-3i64, -2, 2, 3] {
            for n in 0..=5usize {
                for k in 0..=n {
                    let b = qt_binomial(n, k, q).unwrap();
                    assert!(b.is_symmetric(), "symmetry ({n},{k},{q})");
                    if q > 0 {
                        assert!(b.poly.all_coeffs_nonnegative());
                        assert_eq!(b.poly.max_degree(), Some(b.symmetry_degree()));
                        assert_eq!(b.poly.min_degree(), Some(0));
                    } else {
                        assert!(b.has_uniform_sign(), "sign ({n},{k},{q})");
                        let e = extreme_powers(n, k, q).unwrap();
                        assert_eq!((e.min_exponent, e.max_exponent), predicted_extreme_powers(n, k, q).unwrap());
                        assert_eq!(e.min_coeff.magnitude(), &1u32.into());
                        assert_eq!(e.max_coeff.magnitude(), &1u32.into());
                    }
                    if n >= 2 {
                        assert!(verify_qt_recurrences(n, k, q).unwrap().all(), "recurrence ({n},{k},{q})");
                    }
                }
            }
        }
    }

    #[test]
    fn x_invariants() {
        for (n, q) in [(3usize, 2i64), (3, 3), (5, 2)] {
            for k in 0..=n {
                let x = build_x(n, k, q).unwrap();
                assert_eq!(x.at_one(), x_at_one_expected(n, k, q).unwrap());
                if q % 2 == 1 {
                    assert_eq!(x.at_minus_one(), x.at_one());
                }
            }
        }
    }

    #[test]
    fn negative_control_fails_monotonicity() {
        let c = compare_signed_pair(4, 2, 4).unwrap();
        assert_eq!((c.plus_degree, c.minus_degree), (480, 480));
        assert!(c.plus_nonnegative && c.minus_nonnegative);
        assert!(!c.is_monotone());
    }
}
