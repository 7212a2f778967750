//! Finite fields `GF(p^d)` with log/exp tables, the unitary space
//! `V = GF(q^{2n})` with its trace Hermitian forms, echelon enumeration of
//! subspaces, and the action of the cyclic group `C` of order `q^n + 1`.
//!
//! Elements are packed integers: `Σ c_i x^i` is stored as `Σ c_i p^i`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::qbinom::{primed_qbinomial, qbinomial};
use crate::words::{pair_word, words, Segment, Word};

pub type Elem = u32;

/// Default cap on field sizes and on the number of subspaces enumerated.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// The enumeration budget, overridable through `NEGQ_BUDGET`.
pub fn budget_from_env() -> u64 {
    std::env::var("NEGQ_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
        .filter(|&b| b > 0)
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("n must be odd, got {0}")]
    EvenN(usize),
    #[error("field degree must be positive")]
    ZeroDegree,
    #[error("{what} has size {size}, over the budget {budget} (set NEGQ_BUDGET to raise it)")]
    SizeBound { what: String, size: u128, budget: u64 },
    #[error("{m} does not divide {n}")]
    NotDivisor { m: usize, n: usize },
    #[error("need 0 <= k <= n, got n = {n}, k = {k}")]
    BadShape { n: usize, k: usize },
    #[error("order {order} does not divide {modulus}")]
    OrderNotDividing { order: u64, modulus: u128 },
    #[error("need an order of at least 3, got {0}")]
    OrderTooSmall(u64),
    #[error("no primitive polynomial found")]
    NoPrimitivePolynomial,
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// Splits `q = p^e`.
pub fn prime_power_parts(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut r, mut e) = (q, 0);
    while r % p == 0 {
        r /= p;
        e += 1;
    }
    (r == 1).then_some((p as u32, e))
}

fn check_size(what: impl Into<String>, size: u128, budget: u64) -> Result<(), GfError> {
    if size > budget as u128 {
        return Err(GfError::SizeBound { what: what.into(), size, budget });
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    degree: usize,
    size: u32,
    /// Low coefficients `c_0..c_{d-1}` of the monic modulus.
    modulus: Vec<u32>,
    exp: Vec<Elem>,
    log: Vec<u32>,
}

impl FiniteField {
    /// `GF(p^degree)` defined by the smallest monic polynomial (ordered by
    /// its packed low coefficients) whose root generates the unit group.
    pub fn new(p: u32, degree: usize, budget: u64) -> Result<Self, GfError> {
        if !is_prime(p as u64) {
            return Err(GfError::NotPrime(p));
        }
        if degree == 0 {
            return Err(GfError::ZeroDegree);
        }
        let size = (p as u128).pow(degree as u32);
        check_size(format!("GF({p}^{degree})"), size, budget.min(u32::MAX as u64))?;
        let size = size as u32;
        for packed in 0..size {
            if packed % p == 0 {
                continue;
            }
            let modulus = unpack(packed, p, degree);
            if let Some((exp, log)) = walk_powers(p, &modulus, size) {
                return Ok(FiniteField { p, degree, size, modulus, exp, log });
            }
        }
        Err(GfError::NoPrimitivePolynomial)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    /// Order of the unit group.
    pub fn unit_order(&self) -> u64 {
        self.size as u64 - 1
    }

    /// The modulus as a string in `x`, highest power first.
    pub fn modulus_string(&self) -> String {
        let mut s = format!("x^{}", self.degree);
        for (i, &c) in self.modulus.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            if c == 1 && i > 0 {
                s += &format!(" + {mono}");
            } else {
                s += &format!(" + {c}{mono}");
            }
        }
        s
    }

    /// The root of the modulus, a generator of the unit group.
    pub fn generator(&self) -> Elem {
        self.exp[1 % self.exp.len()]
    }

    pub fn exp(&self, i: u64) -> Elem {
        self.exp[(i % self.unit_order()) as usize]
    }

    pub fn log(&self, a: Elem) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return a ^ b;
        }
        let p = self.p;
        let (mut a, mut b, mut out, mut place) = (a, b, 0, 1);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let (mut a, mut out, mut place) = (a, 0, 1);
        while a > 0 {
            out += ((p - a % p) % p) * place;
            a /= p;
            place *= p;
        }
        out
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let o = self.unit_order();
        self.exp[((self.log[a as usize] as u64 + self.log[b as usize] as u64) % o) as usize]
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        let l = self.log(a)? as u64;
        Some(self.exp((self.unit_order() - l) % self.unit_order()))
    }

    pub fn pow(&self, a: Elem, e: u128) -> Elem {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let o = self.unit_order() as u128;
        self.exp[((self.log[a as usize] as u128 * (e % o)) % o) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, a: Elem) -> Option<u64> {
        let l = self.log(a)? as u64;
        let o = self.unit_order();
        Some(o / num_integer::gcd(o, l))
    }

    pub fn sum<I: IntoIterator<Item = Elem>>(&self, it: I) -> Elem {
        it.into_iter().fold(0, |acc, x| self.add(acc, x))
    }
}

fn unpack(mut v: u32, p: u32, d: usize) -> Vec<u32> {
    let mut out = vec![0; d];
    for c in out.iter_mut() {
        *c = v % p;
        v /= p;
    }
    out
}

fn pack(digits: &[u32], p: u32) -> u32 {
    digits.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Powers of `x` modulo the monic polynomial with low coefficients `f`,
/// provided `x` has order exactly `size - 1`.
fn walk_powers(p: u32, f: &[u32], size: u32) -> Option<(Vec<Elem>, Vec<u32>)> {
    let d = f.len();
    let order = (size - 1) as usize;
    let mut exp = vec![0; order];
    let mut log = vec![0; size as usize];
    let mut cur = vec![0u32; d];
    cur[0] = 1;
    for (i, slot) in exp.iter_mut().enumerate() {
        let v = pack(&cur, p);
        if i > 0 && (v == 1 || v == 0) {
            return None;
        }
        *slot = v;
        log[v as usize] = i as u32;
        let top = cur[d - 1];
        for j in (1..d).rev() {
            cur[j] = (cur[j - 1] + p * p - (top * f[j]) % p) % p;
        }
        cur[0] = (p * p - (top * f[0]) % p) % p;
    }
    (pack(&cur, p) == 1).then_some((exp, log))
}

fn invertible(field: &FiniteField, mut m: Vec<Vec<Elem>>) -> bool {
    let n = m.len();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| m[r][col] != 0) else {
            return false;
        };
        m.swap(col, piv);
        let inv = field.inv(m[col][col]).expect("nonzero pivot");
        let (top, rest) = m.split_at_mut(col + 1);
        let pivot = &top[col];
        for row in rest.iter_mut().filter(|row| row[col] != 0) {
            let factor = field.mul(row[col], inv);
            for (x, &y) in row[col..].iter_mut().zip(&pivot[col..]) {
                *x = field.sub(*x, field.mul(factor, y));
            }
        }
    }
    true
}

/// `V = GF(q^{2n})` over `GF(p)` with `q = p^e` and a fixed generator `γ`.
#[derive(Clone, Debug)]
pub struct FieldTower {
    pub p: u32,
    pub e: u32,
    pub q: u64,
    pub n: usize,
    field: FiniteField,
}

pub fn build_tower(p: u32, e: u32, n: usize, budget: u64) -> Result<FieldTower, GfError> {
    if n.is_multiple_of(2) {
        return Err(GfError::EvenN(n));
    }
    if e == 0 {
        return Err(GfError::ZeroDegree);
    }
    let field = FiniteField::new(p, 2 * n * e as usize, budget)?;
    Ok(FieldTower { p, e, q: (p as u64).pow(e), n, field })
}

impl FieldTower {
    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn gamma(&self) -> Elem {
        self.field.generator()
    }

    pub fn q_pow(&self, j: usize) -> u128 {
        (self.q as u128).pow(j as u32)
    }

    fn check_divisor(&self, m: usize) -> Result<(), GfError> {
        if m == 0 || !self.n.is_multiple_of(m) {
            return Err(GfError::NotDivisor { m, n: self.n });
        }
        Ok(())
    }

    /// `a ∈ GF(q^{2m})`, tested as `a^{q^{2m}} = a`.
    pub fn in_subfield(&self, a: Elem, m: usize) -> bool {
        self.field.pow(a, self.q_pow(2 * m)) == a
    }

    /// The elements of `GF(q^{2m})`, zero first, then `δ^0, δ^1, ...` for
    /// `δ = γ^{(q^{2n}-1)/(q^{2m}-1)}`.
    pub fn subfield_elements(&self, m: usize) -> Vec<Elem> {
        let small = self.q_pow(2 * m) - 1;
        let step = (self.q_pow(2 * self.n) - 1) / small;
        let mut out = vec![0];
        out.extend((0..small).map(|j| self.field.exp((j * step) as u64)));
        out
    }

    pub fn subfield_generator(&self, m: usize) -> Elem {
        self.subfield_elements(m)[2]
    }

    /// `Tr_{GF(q^{2n}) / GF(q^{2m})}(a)`.
    pub fn trace(&self, a: Elem, m: usize) -> Elem {
        self.field.sum((0..self.n / m).map(|i| self.field.pow(a, self.q_pow(2 * m * i))))
    }

    pub fn hermitian_form(&self, m: usize) -> Result<HermitianForm<'_>, GfError> {
        self.check_divisor(m)?;
        Ok(HermitianForm { tower: self, m })
    }

    pub fn coordinates(&self, m: usize, budget: u64) -> Result<Coordinates, GfError> {
        self.check_divisor(m)?;
        check_size("coordinate table", self.field.size as u128 * (self.n / m) as u128, budget.saturating_mul(8))?;
        Ok(Coordinates::new(self, m))
    }
}

/// `(α, β) = Tr_{GF(q^{2n})/GF(q^{2m})}(α β^{q^n})`.
#[derive(Clone, Copy, Debug)]
pub struct HermitianForm<'a> {
    tower: &'a FieldTower,
    pub m: usize,
}

impl HermitianForm<'_> {
    pub fn eval(&self, a: Elem, b: Elem) -> Elem {
        let f = &self.tower.field;
        let bq = f.pow(b, self.tower.q_pow(self.tower.n));
        self.tower.trace(f.mul(a, bq), self.m)
    }

    /// The involution `c ↦ c^{q^m}` of `GF(q^{2m})`.
    pub fn conj(&self, c: Elem) -> Elem {
        self.tower.field.pow(c, self.tower.q_pow(self.m))
    }
}

/// Coordinates of `V` over `K = GF(q^{2m})` in the basis `γ^0, ..., γ^{n'-1}`,
/// `n' = n/m`.
#[derive(Clone, Debug)]
pub struct Coordinates {
    pub m: usize,
    pub dim: usize,
    scalars: Vec<Elem>,
    basis: Vec<Elem>,
    table: Vec<Elem>,
}

impl Coordinates {
    fn new(tower: &FieldTower, m: usize) -> Self {
        let f = &tower.field;
        let dim = tower.n / m;
        let scalars = tower.subfield_elements(m);
        let basis: Vec<Elem> = (0..dim).map(|r| f.exp(r as u64)).collect();
        let mut table = vec![0; f.size as usize * dim];
        let mut digits = vec![0usize; dim];
        loop {
            let v = f.sum(digits.iter().zip(&basis).map(|(&d, &b)| f.mul(scalars[d], b)));
            for (r, &d) in digits.iter().enumerate() {
                table[v as usize * dim + r] = scalars[d];
            }
            if !odometer(&mut digits, scalars.len()) {
                break;
            }
        }
        Coordinates { m, dim, scalars, basis, table }
    }

    pub fn scalars(&self) -> &[Elem] {
        &self.scalars
    }

    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    pub fn of(&self, v: Elem) -> &[Elem] {
        let i = v as usize * self.dim;
        &self.table[i..i + self.dim]
    }
}

fn odometer(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

/// A matrix in column-echelon form. Row `r` (0-based, top first)
/// corresponds to word position `n - 1 - r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EchelonMatrix {
    pub word: String,
    pub rows: usize,
    pub cols: usize,
    /// Pivot row of each column, decreasing left to right.
    pub pivots: Vec<usize>,
    /// Row-major entries.
    pub entries: Vec<Elem>,
}

impl EchelonMatrix {
    pub fn get(&self, r: usize, c: usize) -> Elem {
        self.entries[r * self.cols + c]
    }

    /// Cells `(row, col)` of the special entries: for each paired `10` of
    /// the word, the cell directly above the pivot of the `1`. `None` when
    /// the word is not admissible.
    pub fn special_cells(&self) -> Option<Vec<(usize, usize)>> {
        let w = Word::parse(&self.word).expect("stored word is binary");
        let pw = pair_word(&w);
        if !pw.is_admissible() {
            return None;
        }
        let letters = w.letters();
        let mut out = Vec::new();
        for seg in pw.segments() {
            if let Segment::Paired(i) = *seg {
                if letters[i] && !letters[i + 1] {
                    let col = letters[..i].iter().filter(|&&b| b).count();
                    out.push((self.rows - 2 - i, col));
                }
            }
        }
        Some(out)
    }
}

struct EchelonState {
    word: Word,
    pivots: Vec<usize>,
    free: Vec<(usize, usize)>,
    counter: Vec<usize>,
    exhausted: bool,
}

/// All `k`-dimensional column-echelon matrices with free entries drawn
/// from `scalars` (which must list the field, zero first), one word at a
/// time in lex order.
pub struct EchelonIter<'a> {
    scalars: &'a [Elem],
    n: usize,
    k: usize,
    words: crate::words::WordIter,
    state: Option<EchelonState>,
}

pub fn echelon_matrices(n: usize, k: usize, scalars: &[Elem]) -> Result<EchelonIter<'_>, GfError> {
    let words = words(n, k).map_err(|_| GfError::BadShape { n, k })?;
    Ok(EchelonIter { scalars, n, k, words, state: None })
}

impl EchelonState {
    fn new(word: Word) -> Self {
        let n = word.n();
        let pivots: Vec<usize> =
            word.letters().iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| n - 1 - i).collect();
        let mut free = Vec::new();
        for (c, &pr) in pivots.iter().enumerate() {
            for r in 0..pr {
                if !pivots.contains(&r) {
                    free.push((r, c));
                }
            }
        }
        let counter = vec![0; free.len()];
        EchelonState { word, pivots, free, counter, exhausted: false }
    }
}

impl Iterator for EchelonIter<'_> {
    type Item = EchelonMatrix;

    fn next(&mut self) -> Option<EchelonMatrix> {
        if self.state.as_ref().is_none_or(|s| s.exhausted) {
            self.state = Some(EchelonState::new(self.words.next()?));
        }
        let st = self.state.as_mut().expect("state set above");
        let mut entries = vec![0; self.n * self.k];
        for (c, &r) in st.pivots.iter().enumerate() {
            entries[r * self.k + c] = 1;
        }
        for (&(r, c), &d) in st.free.iter().zip(&st.counter) {
            entries[r * self.k + c] = self.scalars[d];
        }
        let m =
            EchelonMatrix { word: st.word.to_string(), rows: self.n, cols: self.k, pivots: st.pivots.clone(), entries };
        st.exhausted = !odometer(&mut st.counter, self.scalars.len());
        Some(m)
    }
}

/// A `GF(q^{2m})`-subspace of `V`, given by an echelon matrix in the
/// coordinates of [`Coordinates`] together with its basis vectors in `V`.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub m: usize,
    pub matrix: EchelonMatrix,
    pub vectors: Vec<Elem>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn word(&self) -> &str {
        &self.matrix.word
    }

    /// Whether `v ∈ W`.
    pub fn contains(&self, field: &FiniteField, coords: &Coordinates, v: Elem) -> bool {
        let mut x = coords.of(v).to_vec();
        for (c, &pr) in self.matrix.pivots.iter().enumerate() {
            let a = x[pr];
            if a == 0 {
                continue;
            }
            for (r, xr) in x.iter_mut().enumerate() {
                let t = field.mul(a, self.matrix.get(r, c));
                *xr = field.sub(*xr, t);
            }
        }
        x.iter().all(|&e| e == 0)
    }
}

pub fn enumerate_subspaces<'a>(
    tower: &'a FieldTower,
    coords: &'a Coordinates,
    k: usize,
) -> Result<impl Iterator<Item = Subspace> + 'a, GfError> {
    let f = &tower.field;
    let iter = echelon_matrices(coords.dim, k, &coords.scalars)?;
    Ok(iter.map(move |matrix| {
        let vectors =
            (0..k).map(|c| f.sum((0..coords.dim).map(|r| f.mul(matrix.get(r, c), coords.basis[r])))).collect();
        Subspace { m: coords.m, matrix, vectors }
    }))
}

/// Gram matrix `[(b_i, b_j)]` invertible; the zero subspace counts as
/// nondegenerate.
pub fn is_nondegenerate(tower: &FieldTower, w: &Subspace, form: &HermitianForm) -> bool {
    gram_invertible(tower, &w.vectors, form)
}

pub fn gram_invertible(tower: &FieldTower, vectors: &[Elem], form: &HermitianForm) -> bool {
    let gram: Vec<Vec<Elem>> = vectors.iter().map(|&a| vectors.iter().map(|&b| form.eval(a, b)).collect()).collect();
    invertible(&tower.field, gram)
}

/// Nondegeneracy of `W` regarded as a `GF(q^{2l})`-subspace, `l | m`.
pub fn is_nondegenerate_over(tower: &FieldTower, w: &Subspace, l: usize) -> Result<bool, GfError> {
    if l == 0 || !w.m.is_multiple_of(l) {
        return Err(GfError::NotDivisor { m: l, n: w.m });
    }
    let f = &tower.field;
    let delta = tower.subfield_generator(w.m);
    let mut vectors = Vec::new();
    for &v in &w.vectors {
        for s in 0..w.m / l {
            vectors.push(f.mul(f.pow(delta, s as u128), v));
        }
    }
    Ok(gram_invertible(tower, &vectors, &tower.hermitian_form(l)?))
}

/// Number of `k'`-subspaces of `GF(q^{2m})^{n'}`, `[n',k']_{q^{2m}}`.
pub fn subspace_total(tower: &FieldTower, m: usize, k: usize) -> Result<BigInt, GfError> {
    let np = tower.n / m;
    let b = qbinomial(np, k).map_err(|_| GfError::BadShape { n: np, k })?;
    Ok(b.poly.eval(&BigInt::from(tower.q_pow(2 * m))).expect("polynomial"))
}

fn check_enumeration(tower: &FieldTower, m: usize, k: usize, budget: u64) -> Result<(), GfError> {
    let total = subspace_total(tower, m, k)?;
    check_size("subspace enumeration", total.to_u128().unwrap_or(u128::MAX), budget)
}

pub fn count_nondegenerate(tower: &FieldTower, m: usize, k: usize, budget: u64) -> Result<u64, GfError> {
    check_enumeration(tower, m, k, budget)?;
    let coords = tower.coordinates(m, budget)?;
    let form = tower.hermitian_form(m)?;
    let count = enumerate_subspaces(tower, &coords, k)?.filter(|w| is_nondegenerate(tower, w, &form)).count();
    Ok(count as u64)
}

/// The cyclic group `C = <γ^{q^n - 1}>` of order `q^n + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct UnitaryCyclicGroup {
    pub generator: Elem,
    pub order: u64,
}

impl UnitaryCyclicGroup {
    pub fn new(tower: &FieldTower) -> Self {
        let qn = tower.q_pow(tower.n);
        let generator = tower.field.exp((qn - 1) as u64);
        UnitaryCyclicGroup { generator, order: (qn + 1) as u64 }
    }

    /// `c_0^{(q^n+1)/A}`, an element of order exactly `A`.
    pub fn element_of_order(&self, tower: &FieldTower, a: u64) -> Result<Elem, GfError> {
        if a == 0 || !self.order.is_multiple_of(a) {
            return Err(GfError::OrderNotDividing { order: a, modulus: self.order as u128 });
        }
        Ok(tower.field.pow(self.generator, (self.order / a) as u128))
    }

    pub fn divisors(&self) -> Vec<u64> {
        (1..=self.order).filter(|d| self.order.is_multiple_of(*d)).collect()
    }
}

/// Nondegenerate `k`-dimensional `GF(q^2)`-subspaces `W` with `cW = W`.
pub fn count_fixed_subspaces(tower: &FieldTower, c: Elem, k: usize, budget: u64) -> Result<u64, GfError> {
    check_enumeration(tower, 1, k, budget)?;
    let coords = tower.coordinates(1, budget)?;
    let form = tower.hermitian_form(1)?;
    let f = &tower.field;
    let count = enumerate_subspaces(tower, &coords, k)?
        .filter(|w| is_nondegenerate(tower, w, &form))
        .filter(|w| w.vectors.iter().all(|&v| w.contains(f, &coords, f.mul(c, v))))
        .count();
    Ok(count as u64)
}

/// `k`-subspaces of `GF(q)^n` whose echelon word is admissible and whose
/// special entries are all nonzero.
pub fn count_special_entry_subspaces(q: u64, n: usize, k: usize, budget: u64) -> Result<u64, GfError> {
    let (p, e) = prime_power_parts(q).ok_or(GfError::NotPrimePower(q))?;
    if k > n {
        return Err(GfError::BadShape { n, k });
    }
    let total =
        qbinomial(n, k).map_err(|_| GfError::BadShape { n, k })?.poly.eval(&BigInt::from(q)).expect("polynomial");
    check_size("subspace enumeration", total.to_u128().unwrap_or(u128::MAX), budget)?;
    let field = FiniteField::new(p, e as usize, budget)?;
    let scalars: Vec<Elem> = (0..field.size()).collect();
    let mut count = 0;
    for a in echelon_matrices(n, k, &scalars)? {
        if let Some(cells) = a.special_cells() {
            if cells.iter().all(|&(r, c)| a.get(r, c) != 0) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// The primed q-binomial at `q`, the value the special-entry count should take.
pub fn special_entry_prediction(q: u64, n: usize, k: usize) -> Result<BigInt, GfError> {
    let b = primed_qbinomial(n, k).map_err(|_| GfError::BadShape { n, k })?;
    Ok(b.poly.eval(&BigInt::from(q)).expect("polynomial"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NumbthReport {
    pub q: u64,
    pub n: usize,
    pub order: u64,
    pub m: usize,
    /// `A | q^m + 1`.
    pub divides_qm_plus_one: bool,
    /// `m` is the least `d` with `A | q^d + 1`.
    pub m_is_minimal: bool,
    /// `A | q^s + q^t` iff `|s - t|` is an odd multiple of `m`.
    pub plus_rule: bool,
    /// `A | q^s - q^t` iff `|s - t|` is an even multiple of `m`.
    pub minus_rule: bool,
    pub counterexample: Option<String>,
}

impl NumbthReport {
    pub fn all(&self) -> bool {
        self.divides_qm_plus_one && self.m_is_minimal && self.plus_rule && self.minus_rule
    }
}

fn modpow(b: u64, e: u64, m: u64) -> u64 {
    let (mut r, mut b, mut e, m) = (1u128 % m as u128, b as u128 % m as u128, e, m as u128);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r as u64
}

/// Divisibility facts for an order `A >= 3` dividing `q^n + 1`, checked
/// over `0 <= s, t <= 4n`. Here `m` is the least `d` with `A | q^{2d} - 1`.
pub fn numbth_checks(q: u64, n: usize, a: u64) -> Result<NumbthReport, GfError> {
    if a < 3 {
        return Err(GfError::OrderTooSmall(a));
    }
    let modulus = (q as u128).pow(n as u32) + 1;
    if !modulus.is_multiple_of(a as u128) {
        return Err(GfError::OrderNotDividing { order: a, modulus });
    }
    let m = (1..=2 * n as u64).find(|&d| modpow(q, 2 * d, a) == 1).expect("q^{2n} ≡ 1") as usize;
    let divides_qm_plus_one = (modpow(q, m as u64, a) + 1).is_multiple_of(a);
    let least_plus = (1..=2 * n as u64).find(|&d| (modpow(q, d, a) + 1).is_multiple_of(a));
    let m_is_minimal = least_plus == Some(m as u64);
    let mut plus_rule = true;
    let mut minus_rule = true;
    let mut counterexample = None;
    let bound = 4 * n as u64;
    for s in 0..=bound {
        for t in 0..=bound {
            let (qs, qt) = (modpow(q, s, a), modpow(q, t, a));
            let diff = s.abs_diff(t);
            let multiple = diff % m as u64 == 0;
            let odd = multiple && (diff / m as u64) % 2 == 1;
            let even = multiple && (diff / m as u64).is_multiple_of(2);
            if ((qs + qt) % a == 0) != odd {
                plus_rule = false;
                counterexample.get_or_insert(format!("q^{s} + q^{t} mod {a}"));
            }
            if (qs + a - qt).is_multiple_of(a) != even {
                minus_rule = false;
                counterexample.get_or_insert(format!("q^{s} - q^{t} mod {a}"));
            }
        }
    }
    Ok(NumbthReport { q, n, order: a, m, divides_qm_plus_one, m_is_minimal, plus_rule, minus_rule, counterexample })
}

/// `|GL_n(GF(q))|` by enumerating all matrices.
pub fn count_gl_brute(n: usize, q: u64, budget: u64) -> Result<u64, GfError> {
    let (p, e) = prime_power_parts(q).ok_or(GfError::NotPrimePower(q))?;
    check_size("matrix enumeration", (q as u128).pow((n * n) as u32), budget)?;
    let f = FiniteField::new(p, e as usize, budget)?;
    let mut digits = vec![0usize; n * n];
    let mut count = 0;
    loop {
        let m: Vec<Vec<Elem>> = (0..n).map(|r| (0..n).map(|c| digits[r * n + c] as Elem).collect()).collect();
        if invertible(&f, m) {
            count += 1;
        }
        if !odometer(&mut digits, q as usize) {
            return Ok(count);
        }
    }
}

/// `|U_n(GF(q^2))|`: matrices `M` over `GF(q^2)` with `M^T conj(M) = I`,
/// where `conj(x) = x^q`.
pub fn count_unitary_brute(n: usize, q: u64, budget: u64) -> Result<u64, GfError> {
    let (p, e) = prime_power_parts(q).ok_or(GfError::NotPrimePower(q))?;
    let q2 = q * q;
    check_size("matrix enumeration", (q2 as u128).pow((n * n) as u32), budget)?;
    let f = FiniteField::new(p, 2 * e as usize, budget)?;
    let conj = |x: Elem| f.pow(x, q as u128);
    let mut digits = vec![0usize; n * n];
    let mut count = 0;
    loop {
        let m = |r: usize, c: usize| digits[r * n + c] as Elem;
        let unitary = (0..n).all(|i| {
            (0..n).all(|j| {
                let s = f.sum((0..n).map(|l| f.mul(m(l, i), conj(m(l, j)))));
                s == u32::from(i == j)
            })
        });
        if unitary {
            count += 1;
        }
        if !odometer(&mut digits, q2 as usize) {
            return Ok(count);
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FormAxiomReport {
    pub trials: usize,
    pub values_in_subfield: bool,
    pub additive: bool,
    pub linear_first: bool,
    pub sesquilinear_second: bool,
    pub conjugate_symmetric: bool,
    pub unitary_under_c: bool,
}

impl FormAxiomReport {
    pub fn all(&self) -> bool {
        self.values_in_subfield
            && self.additive
            && self.linear_first
            && self.sesquilinear_second
            && self.conjugate_symmetric
            && self.unitary_under_c
    }
}

/// Random spot checks of the form axioms for `(·,·)_m`.
pub fn check_form_axioms<R: Rng>(
    tower: &FieldTower,
    m: usize,
    trials: usize,
    rng: &mut R,
) -> Result<FormAxiomReport, GfError> {
    let form = tower.hermitian_form(m)?;
    let f = &tower.field;
    let k = tower.subfield_elements(m);
    let c0 = UnitaryCyclicGroup::new(tower).generator;
    let mut r = FormAxiomReport {
        trials,
        values_in_subfield: true,
        additive: true,
        linear_first: true,
        sesquilinear_second: true,
        conjugate_symmetric: true,
        unitary_under_c: true,
    };
    let size = f.size();
    for _ in 0..trials {
        let (a, a2, b, b2) =
            (rng.gen_range(0..size), rng.gen_range(0..size), rng.gen_range(0..size), rng.gen_range(0..size));
        let c = k[rng.gen_range(0..k.len())];
        let ab = form.eval(a, b);
        r.values_in_subfield &= tower.in_subfield(ab, m);
        r.additive &= form.eval(f.add(a, a2), b) == f.add(ab, form.eval(a2, b))
            && form.eval(a, f.add(b, b2)) == f.add(ab, form.eval(a, b2));
        r.linear_first &= form.eval(f.mul(c, a), b) == f.mul(c, ab);
        r.sesquilinear_second &= form.eval(a, f.mul(c, b)) == f.mul(form.conj(c), ab);
        r.conjugate_symmetric &= form.eval(b, a) == form.conj(ab);
        r.unitary_under_c &= form.eval(f.mul(c0, a), f.mul(c0, b)) == ab;
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    const B: u64 = DEFAULT_BUDGET;

    #[test]
    fn field_generators_have_full_order() {
        for (p, e, n, order) in [(2, 1, 3, 63u64), (3, 1, 3, 728), (2, 1, 1, 3)] {
            let t = build_tower(p, e, n, B).unwrap();
            let g = t.gamma();
            assert_eq!(t.field().order_of(g), Some(order));
            assert_eq!(t.field().pow(g, order as u128), 1);
        }
        assert!(matches!(build_tower(2, 1, 2, B), Err(GfError::EvenN(2))));
        assert!(matches!(build_tower(2, 1, 5, 100), Err(GfError::SizeBound { .. })));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = FiniteField::new(5, 1, B).unwrap();
        assert_eq!(f.add(3, 4), 2);
        assert_eq!(f.mul(3, 4), 2);
        assert_eq!(f.neg(2), 3);
        assert_eq!(f.inv(2), Some(3));
        let f = FiniteField::new(3, 2, B).unwrap();
        for a in 1..9 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
            assert_eq!(f.add(a, f.neg(a)), 0);
        }
    }

    #[test]
    fn full_field_form_is_product() {
        let t = build_tower(2, 1, 3, B).unwrap();
        let form = t.hermitian_form(3).unwrap();
        let g = t.gamma();
        assert_eq!(form.eval(g, g), t.field().exp(9));
    }

    #[test]
    fn subspace_counts_small() {
        let t = build_tower(2, 1, 3, B).unwrap();
        let coords = t.coordinates(1, B).unwrap();
        assert_eq!(enumerate_subspaces(&t, &coords, 1).unwrap().count(), 21);
        assert_eq!(enumerate_subspaces(&t, &coords, 0).unwrap().count(), 1);
        assert_eq!(enumerate_subspaces(&t, &coords, 3).unwrap().count(), 1);
        assert_eq!(count_nondegenerate(&t, 1, 1, B).unwrap(), 12);
        assert_eq!(count_nondegenerate(&t, 1, 2, B).unwrap(), 12);
        assert_eq!(count_nondegenerate(&t, 1, 3, B).unwrap(), 1);
        assert_eq!(count_nondegenerate(&t, 1, 0, B).unwrap(), 1);
    }

    #[test]
    fn fixed_counts_small() {
        let t = build_tower(2, 1, 3, B).unwrap();
        let g = UnitaryCyclicGroup::new(&t);
        assert_eq!(g.order, 9);
        assert_eq!(t.field().order_of(g.generator), Some(9));
        let c9 = g.element_of_order(&t, 9).unwrap();
        let c3 = g.element_of_order(&t, 3).unwrap();
        assert_eq!(count_fixed_subspaces(&t, c9, 1, B).unwrap(), 0);
        assert_eq!(count_fixed_subspaces(&t, c3, 1, B).unwrap(), 12);
        assert_eq!(count_fixed_subspaces(&t, 1, 1, B).unwrap(), 12);
    }

    #[test]
    fn special_entries() {
        assert_eq!(count_special_entry_subspaces(2, 5, 2, B).unwrap(), 55);
        assert_eq!(count_special_entry_subspaces(3, 4, 0, B).unwrap(), 1);
        assert_eq!(
            BigInt::from(count_special_entry_subspaces(2, 4, 2, B).unwrap()),
            special_entry_prediction(2, 4, 2).unwrap()
        );
    }

    #[test]
    fn number_theory() {
        let r = numbth_checks(2, 3, 9).unwrap();
        assert_eq!(r.m, 3);
        assert!(r.all());
        assert_eq!(numbth_checks(2, 3, 3).unwrap().m, 1);
        assert!(numbth_checks(2, 3, 2).is_err());
        assert!(numbth_checks(2, 3, 5).is_err());
    }

    #[test]
    fn group_orders_small() {
        assert_eq!(count_gl_brute(2, 2, B).unwrap(), 6);
        assert_eq!(count_unitary_brute(2, 2, B).unwrap(), 18);
        assert_eq!(count_unitary_brute(1, 3, B).unwrap(), 4);
    }

    #[test]
    fn form_axioms_hold() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let t = build_tower(2, 1, 3, B).unwrap();
        for m in [1, 3] {
            assert!(check_form_axioms(&t, m, 100, &mut rng).unwrap().all());
        }
    }
}
