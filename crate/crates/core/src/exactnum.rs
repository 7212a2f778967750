//! Exact integer polynomial arithmetic.
//!
//! [`LaurentPoly`] is the value type for every q- and (q,t)-object in the
//! crate: a sparse map from (possibly negative) exponents to nonzero
//! [`BigInt`] coefficients. [`BivarPoly`] is the two-variable analogue used
//! by the lucasnomials. Cyclotomic polynomials and reduction modulo them
//! give exact evaluation at primitive roots of unity.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division is not exact (remainder {remainder})")]
    NotDivisible { remainder: String },
    #[error("remainder modulo cyclotomic polynomial of order {order} is not constant: {remainder}")]
    NonConstantRemainder { order: u64, remainder: LaurentPoly },
    #[error("cannot evaluate a Laurent polynomial with negative exponents at {at}")]
    NegativeExponent { at: BigInt },
}

/// Univariate Laurent polynomial with integer coefficients.
///
/// The variable name is a display tag only; it takes no part in equality.
#[derive(Clone, Debug)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
    var: char,
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for LaurentPoly {}

impl Default for LaurentPoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new(), var: 'q' }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * x^e`.
    pub fn monomial(c: impl Into<BigInt>, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, c.into());
        p
    }

    /// `x^e`.
    pub fn x_pow(e: i64) -> Self {
        Self::monomial(1, e)
    }

    /// The variable itself.
    pub fn x() -> Self {
        Self::x_pow(1)
    }

    /// `1 - x^e`.
    pub fn one_minus_x_pow(e: i64) -> Self {
        &Self::one() - &Self::x_pow(e)
    }

    /// `1 + x^m + x^{2m} + ... + x^{(count-1)m}`.
    pub fn geometric(m: i64, count: u64) -> Self {
        let mut p = Self::zero();
        for i in 0..count as i64 {
            p.add_term(i * m, BigInt::one());
        }
        p
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    /// Dense coefficients for exponents `0, 1, 2, ...`.
    pub fn from_coeffs<C: Into<BigInt> + Clone>(coeffs: &[C]) -> Self {
        Self::from_terms(coeffs.iter().cloned().enumerate().map(|(i, c)| (i as i64, c)))
    }

    pub fn with_var(mut self, var: char) -> Self {
        self.var = var;
        self
    }

    pub fn var(&self) -> char {
        self.var
    }

    fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The constant value, if the polynomial is constant (including zero).
    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn all_coeffs_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Sum of the coefficients, i.e. the value at `x = 1`.
    pub fn value_at_one(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Value at an integer point. Negative exponents are only allowed at `x = ±1`.
    pub fn eval(&self, x: &BigInt) -> Result<BigInt, ExactError> {
        if self.min_degree().is_some_and(|d| d < 0) && !(x.is_one() || (-x).is_one()) {
            return Err(ExactError::NegativeExponent { at: x.clone() });
        }
        let mut acc = BigInt::zero();
        for (e, c) in &self.terms {
            let power = if x.is_zero() {
                if *e == 0 {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            } else {
                // for x = ±1 the parity of |e| decides the sign
                num_traits::pow(x.clone(), e.unsigned_abs() as usize)
            };
            acc += c * power;
        }
        Ok(acc)
    }

    pub fn eval_i64(&self, x: i64) -> Result<BigInt, ExactError> {
        self.eval(&BigInt::from(x))
    }

    /// Value at a nonzero rational point.
    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (e, c) in &self.terms {
            let power = if *e >= 0 {
                num_traits::pow(x.clone(), *e as usize)
            } else {
                num_traits::pow(x.recip(), e.unsigned_abs() as usize)
            };
            acc += BigRational::from_integer(c.clone()) * power;
        }
        acc
    }

    /// `p(-x)`.
    pub fn negate_var(&self) -> Self {
        let mut out = Self::zero().with_var(self.var);
        for (e, c) in &self.terms {
            let c = if e.rem_euclid(2) == 1 { -c } else { c.clone() };
            out.terms.insert(*e, c);
        }
        out
    }

    /// `p(x^m)`. `m` may be negative; `m = 0` collapses to the constant `p(1)`.
    pub fn substitute_power(&self, m: i64) -> Self {
        let mut out = Self::zero().with_var(self.var);
        for (e, c) in &self.terms {
            out.add_term(e * m, c.clone());
        }
        out
    }

    /// `x^e * p`.
    pub fn shift(&self, e: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(k, c)| (k + e, c.clone())).collect(), var: self.var }
    }

    /// `x^d * p(1/x)`.
    pub fn reflect(&self, d: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(k, c)| (d - k, c.clone())).collect(), var: self.var }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero().with_var(self.var);
        }
        LaurentPoly { terms: self.terms.iter().map(|(k, v)| (*k, v * c)).collect(), var: self.var }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one().with_var(self.var);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient `self / den`.
    ///
    /// Both operands are first normalized by their lowest power of the
    /// variable, then ordinary long division runs on the resulting
    /// polynomials. Any nonzero remainder (or a non-integral quotient
    /// coefficient) yields [`ExactError::NotDivisible`].
    pub fn div_exact(&self, den: &LaurentPoly) -> Result<LaurentPoly, ExactError> {
        let (Some(den_lo), Some(den_hi)) = (den.min_degree(), den.max_degree()) else {
            return Err(ExactError::DivisionByZero);
        };
        let (Some(num_lo), Some(num_hi)) = (self.min_degree(), self.max_degree()) else {
            return Ok(Self::zero().with_var(self.var));
        };
        let num_deg = (num_hi - num_lo) as usize;
        let den_deg = (den_hi - den_lo) as usize;
        let not_divisible = |rem: &str| ExactError::NotDivisible { remainder: rem.to_string() };
        if num_deg < den_deg {
            return Err(not_divisible(&self.to_string()));
        }

        let mut rem: Vec<BigInt> = vec![BigInt::zero(); num_deg + 1];
        for (e, c) in &self.terms {
            rem[(e - num_lo) as usize] = c.clone();
        }
        let den_terms: Vec<(usize, &BigInt)> = den.terms.iter().map(|(e, c)| ((e - den_lo) as usize, c)).collect();
        let lead = &den.terms[&den_hi];

        let mut quot = Self::zero().with_var(self.var);
        for top in (den_deg..=num_deg).rev() {
            if rem[top].is_zero() {
                continue;
            }
            let (qc, r) = rem[top].div_rem(lead);
            if !r.is_zero() {
                return Err(not_divisible(&format!("non-integral quotient coefficient at degree {top}")));
            }
            let base = top - den_deg;
            for (e, dc) in &den_terms {
                let slot = &mut rem[base + e];
                *slot -= &qc * *dc;
            }
            quot.terms.insert(base as i64 + num_lo - den_lo, qc);
        }
        if rem.iter().any(|c| !c.is_zero()) {
            let r = LaurentPoly::from_terms(rem.into_iter().enumerate().map(|(i, c)| (i as i64 + num_lo, c)))
                .with_var(self.var);
            return Err(not_divisible(&r.to_string()));
        }
        Ok(quot)
    }

    /// Product of the given factors, multiplied left to right.
    pub fn product<'a, I: IntoIterator<Item = &'a LaurentPoly>>(factors: I) -> LaurentPoly {
        factors.into_iter().fold(LaurentPoly::one(), |acc, f| &acc * f)
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending powers, e.g. `q^6 - q^5 + 2q^4 - q + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit = mag.is_one();
            if *e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !unit {
                write!(f, "{mag}")?;
            }
            if *e == 1 {
                write!(f, "{}", self.var)?;
            } else {
                write!(f, "{}^{}", self.var, e)?;
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(i64, String)> = self.terms.iter().map(|(e, c)| (*e, c.to_string())).collect();
        pairs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let pairs: Vec<(i64, String)> = Vec::deserialize(deserializer)?;
        let mut p = LaurentPoly::zero();
        let mut last = None;
        for (e, c) in pairs {
            if last.is_some_and(|l| l >= e) {
                return Err(D::Error::custom("exponents must be strictly increasing"));
            }
            last = Some(e);
            let c: BigInt = c.parse().map_err(D::Error::custom)?;
            if c.is_zero() {
                return Err(D::Error::custom("zero coefficients are not stored"));
            }
            p.terms.insert(e, c);
        }
        Ok(p)
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c);
        }
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut acc: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                *acc.entry(ea + eb).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        LaurentPoly { terms: acc, var: self.var }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(), var: self.var }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $tr<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// The cyclotomic polynomial `Φ_A` in the variable `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyclotomic {
    pub order: u64,
    pub poly: LaurentPoly,
}

impl Cyclotomic {
    pub fn degree(&self) -> u64 {
        self.poly.max_degree().unwrap_or(0) as u64
    }
}

fn divisors(a: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= a {
        if a.is_multiple_of(d) {
            small.push(d);
            if d * d != a {
                large.push(a / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// `Φ_A`, by dividing `t^A - 1` by `Φ_d` for every proper divisor `d` of `A`.
///
/// # Panics
/// Panics if `order == 0`.
pub fn cyclotomic(order: u64) -> Cyclotomic {
    assert!(order >= 1, "cyclotomic order must be positive");
    let divs = divisors(order);
    let mut table: BTreeMap<u64, LaurentPoly> = BTreeMap::new();
    for &d in &divs {
        let mut poly = (&LaurentPoly::x_pow(d as i64) - &LaurentPoly::one()).with_var('t');
        for (e, phi) in &table {
            if d % e == 0 {
                poly = poly.div_exact(phi).expect("cyclotomic factors divide t^d - 1");
            }
        }
        table.insert(d, poly);
    }
    Cyclotomic { order, poly: table.remove(&order).expect("order is its own divisor") }
}

/// Remainder of `p` modulo `Φ_A`.
///
/// Exponents are first folded into `0..A` using `t^A ≡ 1`, which is valid
/// because `Φ_A` divides `t^A - 1`. The result has degree below `φ(A)`.
pub fn reduce_mod_cyclotomic(p: &LaurentPoly, order: u64) -> LaurentPoly {
    let phi = cyclotomic(order);
    reduce_with(p, &phi)
}

fn reduce_with(p: &LaurentPoly, phi: &Cyclotomic) -> LaurentPoly {
    let a = phi.order as i64;
    let mut dense = vec![BigInt::zero(); a as usize];
    for (e, c) in p.terms() {
        dense[e.rem_euclid(a) as usize] += c;
    }
    let deg = phi.degree() as usize;
    let phi_terms: Vec<(usize, &BigInt)> = phi.poly.terms().map(|(e, c)| (e as usize, c)).collect();
    // Φ_A is monic, so no divisibility condition arises here
    for top in (deg..dense.len()).rev() {
        if dense[top].is_zero() {
            continue;
        }
        let c = std::mem::take(&mut dense[top]);
        let base = top - deg;
        for (e, pc) in &phi_terms {
            if base + e != top {
                let slot = &mut dense[base + e];
                *slot -= &c * *pc;
            }
        }
    }
    dense.truncate(deg.max(1));
    LaurentPoly::from_terms(dense.into_iter().enumerate().map(|(i, c)| (i as i64, c))).with_var(p.var())
}

/// The common value `p(ω)` over all primitive `A`-th roots of unity `ω`,
/// provided the remainder modulo `Φ_A` is constant.
pub fn eval_at_primitive_root(p: &LaurentPoly, order: u64) -> Result<BigInt, ExactError> {
    let rem = reduce_mod_cyclotomic(p, order);
    rem.as_constant().ok_or(ExactError::NonConstantRemainder { order, remainder: rem })
}

/// Polynomial in two variables `s`, `t` with integer coefficients and
/// nonnegative exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    /// `c * s^i * t^j`.
    pub fn monomial(c: impl Into<BigInt>, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term((i, j), c.into());
        p
    }

    pub fn s() -> Self {
        Self::monomial(1, 1, 0)
    }

    pub fn t() -> Self {
        Self::monomial(1, 0, 1)
    }

    fn add_term(&mut self, key: (u32, u32), c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.terms.get(&(i, j)).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> + '_ {
        self.terms.iter().map(|(k, c)| (*k, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Exact quotient in `Z[s,t]`, dividing lexicographically leading terms.
    pub fn div_exact(&self, den: &BivarPoly) -> Result<BivarPoly, ExactError> {
        let Some((&(di, dj), dc)) = den.terms.last_key_value() else {
            return Err(ExactError::DivisionByZero);
        };
        let mut rem = self.clone();
        let mut quot = BivarPoly::zero();
        while let Some((&(ri, rj), rc)) = rem.terms.last_key_value() {
            if ri < di || rj < dj {
                return Err(ExactError::NotDivisible { remainder: rem.to_string() });
            }
            let (qc, r) = rc.div_rem(dc);
            if !r.is_zero() {
                return Err(ExactError::NotDivisible { remainder: rem.to_string() });
            }
            let mono = BivarPoly::monomial(qc, ri - di, rj - dj);
            rem = &rem - &(&mono * den);
            quot = &quot + &mono;
        }
        Ok(quot)
    }

    /// Evaluates `p(s_val, t_val)` in the Laurent polynomial ring.
    pub fn substitute(&self, s_val: &LaurentPoly, t_val: &LaurentPoly) -> LaurentPoly {
        let mut acc = LaurentPoly::zero().with_var(s_val.var());
        for ((i, j), c) in &self.terms {
            let term = &s_val.pow(*i) * &t_val.pow(*j);
            acc += &term.scale(c);
        }
        acc
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, ((i, j), c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (idx, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *i == 0 && *j == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            for (name, e) in [('s', *i), ('t', *j)] {
                match e {
                    0 => {}
                    1 => write!(f, "{name}")?,
                    _ => write!(f, "{name}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

impl Serialize for BivarPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows: Vec<(u32, u32, String)> = self.terms.iter().map(|((i, j), c)| (*i, *j, c.to_string())).collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for BivarPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let rows: Vec<(u32, u32, String)> = Vec::deserialize(deserializer)?;
        let mut p = BivarPoly::zero();
        for (i, j, c) in rows {
            let c: BigInt = c.parse().map_err(D::Error::custom)?;
            if c.is_zero() || p.terms.contains_key(&(i, j)) {
                return Err(D::Error::custom("duplicate or zero coefficient"));
            }
            p.terms.insert((i, j), c);
        }
        Ok(p)
    }
}

impl Add<&BivarPoly> for &BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub<&BivarPoly> for &BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c);
        }
        out
    }
}

impl Mul<&BivarPoly> for &BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for ((ai, aj), ac) in &self.terms {
            for ((bi, bj), bc) in &rhs.terms {
                out.add_term((ai + bi, aj + bj), ac * bc);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    #[test]
    fn arithmetic_examples() {
        let a = lp(&[(0, 1), (1, 1)]);
        let b = lp(&[(0, 1), (1, -1)]);
        assert_eq!(&a * &b, lp(&[(0, 1), (2, -1)]));
        assert_eq!(&LaurentPoly::x_pow(-1) * &LaurentPoly::x(), LaurentPoly::one());
        assert_eq!(&lp(&[(0, 1), (3, -1)]) + &lp(&[(3, 1)]), LaurentPoly::one());
    }

    #[test]
    fn zero_coefficients_are_pruned() {
        let p = &lp(&[(2, 3), (5, 1)]) - &lp(&[(2, 3)]);
        assert_eq!(p.len(), 1);
        assert_eq!(p.min_degree(), Some(5));
        assert!(lp(&[(4, 0)]).is_zero());
    }

    #[test]
    fn exact_division_examples() {
        let q = LaurentPoly::one_minus_x_pow(6).div_exact(&LaurentPoly::one_minus_x_pow(2)).unwrap();
        assert_eq!(q, lp(&[(0, 1), (2, 1), (4, 1)]));

        // (1 - t^{qm}) / (1 - t^m) at q = -2, m = 3
        let q = LaurentPoly::one_minus_x_pow(-6).div_exact(&LaurentPoly::one_minus_x_pow(3)).unwrap();
        assert_eq!(q, lp(&[(-6, -1), (-3, -1)]));

        let err = lp(&[(0, 1), (1, 1)]).div_exact(&lp(&[(0, 1), (1, -1)]));
        assert!(matches!(err, Err(ExactError::NotDivisible { .. })));
        assert_eq!(LaurentPoly::one().div_exact(&LaurentPoly::zero()), Err(ExactError::DivisionByZero));
    }

    #[test]
    fn division_rejects_non_integral_quotients() {
        let err = lp(&[(0, 1), (1, 1)]).div_exact(&lp(&[(0, 2)]));
        assert!(matches!(err, Err(ExactError::NotDivisible { .. })));
        assert_eq!(lp(&[(0, 4), (1, 6)]).div_exact(&lp(&[(0, 2)])).unwrap(), lp(&[(0, 2), (1, 3)]));
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic(1).poly, lp(&[(0, -1), (1, 1)]));
        assert_eq!(cyclotomic(2).poly, lp(&[(0, 1), (1, 1)]));
        // t^9 - 1 = Φ1 Φ3 Φ9 with Φ1 Φ3 = t^3 - 1
        let phi9 = (&LaurentPoly::x_pow(9) - &LaurentPoly::one())
            .div_exact(&(&LaurentPoly::x_pow(3) - &LaurentPoly::one()))
            .unwrap();
        assert_eq!(phi9, lp(&[(0, 1), (3, 1), (6, 1)]));
        assert_eq!(cyclotomic(9).poly, phi9);
        assert_eq!(cyclotomic(12).poly, lp(&[(0, 1), (2, -1), (4, 1)]));
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(reduce_mod_cyclotomic(&LaurentPoly::x_pow(9), 9), LaurentPoly::one());
        assert!(reduce_mod_cyclotomic(&lp(&[(0, 1), (1, 1), (2, 1)]), 3).is_zero());
        assert_eq!(eval_at_primitive_root(&LaurentPoly::x_pow(-3), 3).unwrap(), BigInt::one());
        assert_eq!(eval_at_primitive_root(&lp(&[(0, 5), (1, 2)]), 1).unwrap(), BigInt::from(7));
        assert_eq!(eval_at_primitive_root(&lp(&[(0, 5), (1, 2)]), 2).unwrap(), BigInt::from(3));
        let err = eval_at_primitive_root(&LaurentPoly::x(), 3).unwrap_err();
        assert!(matches!(err, ExactError::NonConstantRemainder { order: 3, .. }));
    }

    #[test]
    fn evaluation() {
        let p = lp(&[(-2, 1), (1, 3)]);
        assert_eq!(p.eval_i64(-1).unwrap(), BigInt::from(-2));
        assert!(p.eval_i64(2).is_err());
        let r = p.eval_rational(&BigRational::from_integer(BigInt::from(2)));
        assert_eq!(r, BigRational::new(BigInt::from(25), BigInt::from(4)));
        assert_eq!(lp(&[(0, 3), (2, 1)]).eval_i64(0).unwrap(), BigInt::from(3));
    }

    #[test]
    fn substitutions() {
        let p = lp(&[(0, 1), (1, 2), (3, -1)]);
        assert_eq!(p.negate_var(), lp(&[(0, 1), (1, -2), (3, 1)]));
        assert_eq!(p.substitute_power(-2), lp(&[(0, 1), (-2, 2), (-6, -1)]));
        assert_eq!(p.reflect(3), lp(&[(3, 1), (2, 2), (0, -1)]));
        assert_eq!(lp(&[(0, 1), (1, 1)]).pow(3), lp(&[(0, 1), (1, 3), (2, 3), (3, 1)]));
    }

    #[test]
    fn display_descends() {
        let p = lp(&[(0, 1), (1, -1), (2, 2), (6, 1), (5, -1)]);
        assert_eq!(p.to_string(), "q^6 - q^5 + 2q^2 - q + 1");
        assert_eq!(lp(&[(-6, -1), (-3, -1)]).with_var('t').to_string(), "-t^-3 - t^-6");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn laurent_json_schema() {
        let p = lp(&[(-1, -3), (4, 2)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"[[-1,"-3"],[4,"2"]]"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<LaurentPoly>(r#"[[1,"0"]]"#).is_err());
    }

    #[test]
    fn bivariate_division_and_substitution() {
        let s = BivarPoly::s();
        let t = BivarPoly::t();
        let a = &(&s * &s) + &t;
        let b = &s - &t;
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert!(matches!(a.div_exact(&b), Err(ExactError::NotDivisible { .. })));
        let v = a.substitute(&lp(&[(0, 1), (1, 1)]), &lp(&[(1, -1)]));
        assert_eq!(v, lp(&[(0, 1), (1, 1), (2, 1)]));
        let json = serde_json::to_string(&a).unwrap();
        assert_eq!(json, r#"[[0,1,"1"],[2,0,"1"]]"#);
        assert_eq!(serde_json::from_str::<BivarPoly>(&json).unwrap(), a);
        assert_eq!(a.to_string(), "s^2 + t");
    }
}
