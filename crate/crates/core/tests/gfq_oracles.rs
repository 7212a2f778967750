//! Brute-force oracles for the subspace counts: subspaces are built as
//! explicit span sets and nondegeneracy is tested through `W ∩ W^⊥`.

use std::collections::BTreeSet;

use negq::gfq::{
    build_tower, count_fixed_subspaces, count_nondegenerate, count_special_entry_subspaces, echelon_matrices,
    enumerate_subspaces, special_entry_prediction, subspace_total, Elem, FieldTower, FiniteField, UnitaryCyclicGroup,
    DEFAULT_BUDGET,
};
use negq::qbinom::qbinomial;
use negq::qtbinom::predicted_fixed_count;
use num_bigint::BigInt;

type Span = Vec<Elem>;

fn extend(f: &FiniteField, span: &[Elem], v: Elem, scalars: &[Elem]) -> Span {
    let mut out: BTreeSet<Elem> = BTreeSet::new();
    for &s in span {
        for &a in scalars {
            out.insert(f.add(s, f.mul(a, v)));
        }
    }
    out.into_iter().collect()
}

fn span_of(f: &FiniteField, vectors: &[Elem], scalars: &[Elem]) -> Span {
    vectors.iter().fold(vec![0], |s, &v| extend(f, &s, v, scalars))
}

/// Every `k`-dimensional `K`-subspace of `V`, as a sorted element list.
fn all_spans(tower: &FieldTower, m: usize, k: usize) -> BTreeSet<Span> {
    let f = tower.field();
    let scalars = tower.subfield_elements(m);
    let mut level: BTreeSet<Span> = BTreeSet::from([vec![0]]);
    for _ in 0..k {
        let mut next = BTreeSet::new();
        for s in &level {
            let mut covered = vec![false; f.size() as usize];
            for &x in s {
                covered[x as usize] = true;
            }
            for v in 1..f.size() {
                if !covered[v as usize] {
                    let bigger = extend(f, s, v, &scalars);
                    for &x in &bigger {
                        covered[x as usize] = true;
                    }
                    next.insert(bigger);
                }
            }
        }
        level = next;
    }
    level
}

fn nondegenerate(tower: &FieldTower, m: usize, span: &[Elem]) -> bool {
    let form = tower.hermitian_form(m).unwrap();
    span.iter().filter(|&&v| v != 0).all(|&v| span.iter().any(|&w| form.eval(v, w) != 0))
}

fn closed_under(f: &FiniteField, span: &[Elem], c: Elem) -> bool {
    span.iter().all(|&v| span.binary_search(&f.mul(c, v)).is_ok())
}

#[test]
fn echelon_subspaces_are_exactly_the_spans() {
    for (p, e, n, m) in [(2u32, 1u32, 3usize, 1usize), (2, 1, 3, 3), (3, 1, 3, 1), (2, 1, 5, 5)] {
        let tower = build_tower(p, e, n, DEFAULT_BUDGET).unwrap();
        let f = tower.field();
        let coords = tower.coordinates(m, DEFAULT_BUDGET).unwrap();
        let scalars = tower.subfield_elements(m);
        for k in 0..=n / m {
            let oracle = all_spans(&tower, m, k);
            assert_eq!(BigInt::from(oracle.len()), subspace_total(&tower, m, k).unwrap());
            let ours: BTreeSet<Span> =
                enumerate_subspaces(&tower, &coords, k).unwrap().map(|w| span_of(f, &w.vectors, &scalars)).collect();
            assert_eq!(ours, oracle, "q = {}, n = {n}, m = {m}, k = {k}", tower.q);
        }
    }
}

#[test]
fn nondegenerate_counts_agree_with_spans() {
    for (p, n) in [(2u32, 3usize), (3, 3)] {
        let tower = build_tower(p, 1, n, DEFAULT_BUDGET).unwrap();
        for k in 0..=n {
            let oracle = all_spans(&tower, 1, k).iter().filter(|s| nondegenerate(&tower, 1, s)).count() as u64;
            assert_eq!(count_nondegenerate(&tower, 1, k, DEFAULT_BUDGET).unwrap(), oracle, "q = {p}, k = {k}");
        }
    }
    let tower = build_tower(2, 1, 3, DEFAULT_BUDGET).unwrap();
    assert_eq!(count_nondegenerate(&tower, 1, 1, DEFAULT_BUDGET).unwrap(), 12);
    assert_eq!(count_nondegenerate(&tower, 1, 2, DEFAULT_BUDGET).unwrap(), 12);
}

#[test]
fn fixed_counts_agree_with_spans() {
    for (p, n) in [(2u32, 3usize), (3, 3)] {
        let tower = build_tower(p, 1, n, DEFAULT_BUDGET).unwrap();
        let f = tower.field();
        let group = UnitaryCyclicGroup::new(&tower);
        for k in 0..=n {
            let nondeg: Vec<Span> =
                all_spans(&tower, 1, k).into_iter().filter(|s| nondegenerate(&tower, 1, s)).collect();
            for a in group.divisors() {
                let c = group.element_of_order(&tower, a).unwrap();
                assert_eq!(f.order_of(c), Some(a));
                let oracle = nondeg.iter().filter(|s| closed_under(f, s, c)).count() as u64;
                let ours = count_fixed_subspaces(&tower, c, k, DEFAULT_BUDGET).unwrap();
                assert_eq!(ours, oracle, "q = {p}, k = {k}, order = {a}");
                let predicted = predicted_fixed_count(n, k, p as i64, a).unwrap();
                assert_eq!(BigInt::from(ours), predicted, "q = {p}, k = {k}, order = {a}");
            }
        }
    }
}

#[test]
fn echelon_matrices_are_distinct_and_complete() {
    for q in [2u32, 3] {
        let scalars: Vec<Elem> = (0..q).collect();
        for n in 0..=5 {
            for k in 0..=n {
                let all: Vec<_> = echelon_matrices(n, k, &scalars).unwrap().collect();
                let distinct: BTreeSet<Vec<Elem>> = all
                    .iter()
                    .map(|a| (0..n).flat_map(|r| (0..k).map(move |c| (r, c))).map(|(r, c)| a.get(r, c)).collect())
                    .collect();
                assert_eq!(distinct.len(), all.len());
                let expect = qbinomial(n, k).unwrap().poly.eval_i64(q as i64).unwrap();
                assert_eq!(BigInt::from(all.len()), expect, "q = {q}, n = {n}, k = {k}");
            }
        }
    }
}

#[test]
fn special_entry_counts_match_primed_values() {
    for q in [2u64, 3, 4] {
        for n in 0..=5 {
            for k in 0..=n {
                let count = count_special_entry_subspaces(q, n, k, DEFAULT_BUDGET).unwrap();
                assert_eq!(
                    BigInt::from(count),
                    special_entry_prediction(q, n, k).unwrap(),
                    "q = {q}, n = {n}, k = {k}"
                );
            }
        }
    }
}

#[test]
fn size_bound_is_enforced() {
    assert!(build_tower(2, 1, 3, 10).is_err());
    let tower = build_tower(2, 1, 5, DEFAULT_BUDGET).unwrap();
    assert!(count_nondegenerate(&tower, 1, 2, 100).is_err());
}
