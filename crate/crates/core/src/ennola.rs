//! Unipotent degree polynomials `f^λ(q)` from the hook formula, the orders
//! of `S_n`, `GL_n(F_q)` and `U_n(F_{q^2})`, and the index identities that
//! recover the binomial, the q-binomial and the q-binomial at `-q`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::exactnum::{ExactError, LaurentPoly};
use crate::partitions::{hooks_and_n, partitions_of, Partition};
use crate::qbinom::qbinomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreePolynomial {
    pub partition: String,
    pub n: u64,
    pub poly: LaurentPoly,
}

impl DegreePolynomial {
    /// `C(n,2) - n(λ)`.
    pub fn expected_degree(lambda: &Partition) -> i64 {
        let n = lambda.size() as i64;
        n * (n - 1) / 2 - lambda.n_of() as i64
    }

    pub fn at(&self, q: i64) -> BigInt {
        self.poly.eval_i64(q).expect("polynomial")
    }

    /// `(-1)^{deg} f(-q)`, the Ennola-dual degree polynomial.
    pub fn ennola_dual(&self) -> LaurentPoly {
        let d = self.poly.max_degree().unwrap_or(0);
        let p = self.poly.negate_var();
        if d % 2 == 0 {
            p
        } else {
            -p
        }
    }
}

fn q_pochhammer(n: u64) -> LaurentPoly {
    let factors: Vec<LaurentPoly> = (1..=n as i64).map(LaurentPoly::one_minus_x_pow).collect();
    LaurentPoly::product(&factors)
}

/// `f^λ(q) = q^{n(λ')} (q;q)_n / Π_{cells} (1 - q^{h})`.
pub fn hook_degree_poly(lambda: &Partition) -> Result<DegreePolynomial, ExactError> {
    let h = hooks_and_n(lambda);
    let mut poly = q_pochhammer(lambda.size());
    for &hook in &h.hooks {
        poly = poly.div_exact(&LaurentPoly::one_minus_x_pow(hook as i64))?;
    }
    Ok(DegreePolynomial { partition: lambda.to_string(), n: lambda.size(), poly: poly.shift(h.n_conjugate as i64) })
}

/// Standard Young tableaux of shape `λ`, by removing corners.
pub fn syt_count(lambda: &Partition) -> BigInt {
    fn go(parts: &mut Vec<u32>) -> BigInt {
        if parts.is_empty() {
            return BigInt::one();
        }
        let mut total = BigInt::zero();
        for i in 0..parts.len() {
            let last_row = i + 1 == parts.len();
            if last_row || parts[i + 1] < parts[i] {
                parts[i] -= 1;
                let popped = if parts[i] == 0 { parts.pop() } else { None };
                total += go(parts);
                if let Some(v) = popped {
                    parts.push(v);
                }
                parts[i] += 1;
            }
        }
        total
    }
    go(&mut lambda.parts().to_vec())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupOrders {
    pub symmetric: BigInt,
    pub general_linear: BigInt,
    pub unitary: BigInt,
}

/// `q^{C(n,2)} Π_{i=1}^n (q^i - 1)`.
pub fn gl_order_poly(n: usize) -> LaurentPoly {
    let factors: Vec<LaurentPoly> = (1..=n as i64).map(|i| -LaurentPoly::one_minus_x_pow(i)).collect();
    LaurentPoly::product(&factors).shift((n * n.saturating_sub(1) / 2) as i64)
}

/// `q^{C(n,2)} Π_{i=1}^n (q^i - (-1)^i)`.
pub fn unitary_order_poly(n: usize) -> LaurentPoly {
    let factors: Vec<LaurentPoly> = (1..=n as i64)
        .map(|i| &LaurentPoly::x_pow(i) - &LaurentPoly::constant(if i % 2 == 0 { 1 } else { -1 }))
        .collect();
    LaurentPoly::product(&factors).shift((n * n.saturating_sub(1) / 2) as i64)
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub fn group_orders(n: usize, q: i64) -> GroupOrders {
    GroupOrders {
        symmetric: factorial(n),
        general_linear: gl_order_poly(n).eval_i64(q).expect("polynomial"),
        unitary: unitary_order_poly(n).eval_i64(q).expect("polynomial"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexReport {
    pub n: usize,
    pub k: usize,
    pub q: i64,
    /// `C(n,k) = [S_n : S_k × S_{n-k}]`.
    pub symmetric: bool,
    /// `[n,k]_q = q^{-k(n-k)} [GL_n : GL_k × GL_{n-k}]` at the given `q`.
    pub general_linear: bool,
    /// `[n,k]_{-q} = (-q)^{-k(n-k)} [U_n : U_k × U_{n-k}]` at the given `q`.
    pub unitary: bool,
    /// The general linear row as a polynomial identity in `q`.
    pub general_linear_symbolic: bool,
    /// The unitary row as a polynomial identity in `q`.
    pub unitary_symbolic: bool,
}

impl IndexReport {
    pub fn all(&self) -> bool {
        self.symmetric && self.general_linear && self.unitary && self.general_linear_symbolic && self.unitary_symbolic
    }
}

pub fn verify_index_identities(n: usize, k: usize, q: i64) -> Result<IndexReport, crate::qbinom::QbinomError> {
    let b = qbinomial(n, k)?.poly;
    let e = k * (n - k);
    let (on, ok, onk) = (group_orders(n, q), group_orders(k, q), group_orders(n - k, q));

    let binom = b.value_at_one();
    let symmetric = BigRational::from(binom) == BigRational::new(on.symmetric, ok.symmetric * onk.symmetric);

    let index = |big: BigInt, a: BigInt, c: BigInt, base: i64| {
        let scale = BigRational::from(num_traits::pow(BigInt::from(base), e));
        BigRational::new(big, a * c) / scale
    };
    let general_linear =
        BigRational::from(b.eval_i64(q)?) == index(on.general_linear, ok.general_linear, onk.general_linear, q);
    let unitary = BigRational::from(b.eval_i64(-q)?) == index(on.unitary, ok.unitary, onk.unitary, -q);

    let gl_lhs = &(&b.shift(e as i64) * &gl_order_poly(k)) * &gl_order_poly(n - k);
    let general_linear_symbolic = gl_lhs == gl_order_poly(n);
    // (-q)^e [n,k]_{-q} as a polynomial in q
    let mut signed = b.negate_var().shift(e as i64);
    if e % 2 == 1 {
        signed = -signed;
    }
    let u_lhs = &(&signed * &unitary_order_poly(k)) * &unitary_order_poly(n - k);
    let unitary_symbolic = u_lhs == unitary_order_poly(n);

    Ok(IndexReport { n, k, q, symmetric, general_linear, unitary, general_linear_symbolic, unitary_symbolic })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeReport {
    pub n: usize,
    pub trivial_is_one: bool,
    pub top_is_power: bool,
    pub degrees_match: bool,
    pub values_at_one_are_syt: bool,
    pub sum_of_squares_is_factorial: bool,
    pub ennola_positive: bool,
    pub counterexample: Option<String>,
}

impl DegreeReport {
    pub fn all(&self) -> bool {
        self.trivial_is_one
            && self.top_is_power
            && self.degrees_match
            && self.values_at_one_are_syt
            && self.sum_of_squares_is_factorial
            && self.ennola_positive
    }
}

/// Checks every `λ ⊢ n`: `f^{(1^n)} = 1`, `f^{(n)} = q^{C(n,2)}`, degree
/// `C(n,2) - n(λ)`, `f^λ(1)` counts tableaux, `Σ f^λ(1)^2 = n!`, and the
/// Ennola dual is positive at `q = 2..=5`.
pub fn degree_report(n: usize) -> Result<DegreeReport, ExactError> {
    let mut r = DegreeReport {
        n,
        trivial_is_one: false,
        top_is_power: false,
        degrees_match: true,
        values_at_one_are_syt: true,
        sum_of_squares_is_factorial: false,
        ennola_positive: true,
        counterexample: None,
    };
    let mut squares = BigInt::zero();
    for lambda in partitions_of(n as u32) {
        let f = hook_degree_poly(&lambda)?;
        let at_one = f.poly.value_at_one();
        squares += &at_one * &at_one;
        if lambda.parts().iter().all(|&p| p == 1) {
            r.trivial_is_one = f.poly.is_one();
        }
        if lambda.len() <= 1 {
            r.top_is_power = f.poly == LaurentPoly::x_pow((n * n.saturating_sub(1) / 2) as i64);
        }
        let deg_ok = f.poly.max_degree() == Some(DegreePolynomial::expected_degree(&lambda));
        let syt_ok = at_one == syt_count(&lambda);
        let dual = f.ennola_dual();
        let pos_ok = (2..=5).all(|q| dual.eval_i64(q).expect("polynomial").is_positive());
        r.degrees_match &= deg_ok;
        r.values_at_one_are_syt &= syt_ok;
        r.ennola_positive &= pos_ok;
        if !(deg_ok && syt_ok && pos_ok) && r.counterexample.is_none() {
            r.counterexample = Some(lambda.to_string());
        }
    }
    r.sum_of_squares_is_factorial = squares == factorial(n);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn hook_examples() {
        assert!(hook_degree_poly(&part(&[1, 1, 1])).unwrap().poly.is_one());
        assert_eq!(hook_degree_poly(&part(&[3])).unwrap().poly, LaurentPoly::x_pow(3));
        let f = hook_degree_poly(&part(&[2, 1])).unwrap();
        assert_eq!(f.poly, LaurentPoly::from_terms([(1, 1), (2, 1)]));
        assert_eq!(f.poly.value_at_one(), BigInt::from(2));
        assert!(hook_degree_poly(&Partition::empty()).unwrap().poly.is_one());
    }

    #[test]
    fn orders() {
        let g = group_orders(2, 2);
        assert_eq!((g.symmetric, g.general_linear, g.unitary), (2.into(), 6.into(), 18.into()));
        let g = group_orders(0, 5);
        assert_eq!((g.symmetric, g.general_linear, g.unitary), (1.into(), 1.into(), 1.into()));
        assert_eq!(group_orders(3, 2).unitary, BigInt::from(648));
    }

    #[test]
    fn index_identities() {
        for (n, k, q) in [(3, 1, 2), (4, 0, 3), (4, 2, 3), (6, 3, 2)] {
            assert!(verify_index_identities(n, k, q).unwrap().all(), "({n},{k},{q})");
        }
    }

    #[test]
    fn degree_reports() {
        for n in 0..=6 {
            assert!(degree_report(n).unwrap().all(), "n = {n}");
        }
    }

    #[test]
    fn syt_small() {
        assert_eq!(syt_count(&part(&[2, 1])), BigInt::from(2));
        assert_eq!(syt_count(&part(&[3, 2])), BigInt::from(5));
        assert_eq!(syt_count(&part(&[2, 2, 2])), BigInt::from(5));
    }
}
