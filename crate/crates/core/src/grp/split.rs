//! Deciding whether G splits over a normal subgroup N.
//!
//! A complement is generated by lifts of a generating set of G/N. For
//! each quotient generator q with representative r, the candidates are
//! r*n (n in N) whose order equals the order of q; every tuple of
//! candidates is closed with cap |G/N| and accepted if it meets N
//! trivially. The search is exhaustive, so "no complement" is a proof.

use rayon::prelude::*;
use serde::Serialize;

use super::{GroupOps, SmallGroup};

#[derive(Debug, Clone)]
pub enum SplitResult<E> {
    /// Generators of a complement.
    Split {
        complement: Vec<E>,
    },
    NonSplit,
    /// The tuple space exceeded the search budget.
    Inconclusive {
        tuples: u128,
    },
}

impl<E> SplitResult<E> {
    pub fn verdict(&self) -> SplitVerdict {
        match self {
            SplitResult::Split { .. } => SplitVerdict::Split,
            SplitResult::NonSplit => SplitVerdict::NonSplit,
            SplitResult::Inconclusive { .. } => SplitVerdict::Inconclusive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SplitVerdict {
    Split,
    NonSplit,
    Inconclusive,
}

pub const DEFAULT_BUDGET: u128 = 50_000_000;

pub fn split_extension<G: GroupOps>(g: &SmallGroup<G>, n: &SmallGroup<G>, budget: u128) -> SplitResult<G::Elem> {
    let ops = g.ops();
    let q = g.quotient(n);
    let k = q.order();
    if k == 1 {
        return SplitResult::Split { complement: Vec::new() };
    }
    if n.is_trivial() {
        return SplitResult::Split { complement: g.gens().to_vec() };
    }
    let qt = q.table().clone();
    let qgens: Vec<u16> = qt.clone().as_group().gens().to_vec();
    let candidates: Vec<Vec<G::Elem>> = qgens
        .iter()
        .map(|&qi| {
            let r = &q.reps()[qi as usize];
            let want = qt.elem_order(qi) as u64;
            n.elements().iter().map(|m| ops.mul(r, m)).filter(|x| ops.order_of(x) == want).collect()
        })
        .collect();
    let tuples: u128 = candidates.iter().map(|c| c.len() as u128).product();
    if tuples == 0 {
        return SplitResult::NonSplit;
    }
    if tuples > budget {
        return SplitResult::Inconclusive { tuples };
    }
    let radices: Vec<usize> = candidates.iter().map(|c| c.len()).collect();
    let found = (0..tuples as u64).into_par_iter().find_first(|&t| {
        let lifts = decode(t, &radices, &candidates);
        match SmallGroup::closure(ops, &lifts, k) {
            Ok(c) => c.order() == k && c.elements().iter().skip(1).all(|x| !n.contains(x)),
            Err(_) => false,
        }
    });
    match found {
        Some(t) => SplitResult::Split { complement: decode(t, &radices, &candidates) },
        None => SplitResult::NonSplit,
    }
}

fn decode<E: Clone>(mut t: u64, radices: &[usize], candidates: &[Vec<E>]) -> Vec<E> {
    radices
        .iter()
        .zip(candidates)
        .map(|(&r, c)| {
            let i = (t % r as u64) as usize;
            t /= r as u64;
            c[i].clone()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::reference::{agl23, cyclic, symmetric};
    use super::*;

    #[test]
    fn agl23_splits_over_translations() {
        let g = agl23();
        let v = g.p_core(3);
        match split_extension(&g, &v, DEFAULT_BUDGET) {
            SplitResult::Split { complement } => {
                let c = g.subgroup(&complement);
                assert_eq!(c.order(), 48);
                assert!(c.intersect(&v).is_trivial());
            }
            other => panic!("expected a split, got {:?}", other.verdict()),
        }
    }

    #[test]
    fn c9_does_not_split_over_c3() {
        let c9 = cyclic(9);
        let c3 = c9.power_subgroup(3);
        assert_eq!(c3.order(), 3);
        assert_eq!(split_extension(&c9, &c3, DEFAULT_BUDGET).verdict(), SplitVerdict::NonSplit);
    }

    #[test]
    fn sym4_splits_over_klein_four() {
        let s4 = symmetric(4);
        let v4 = s4.p_core(2);
        assert_eq!(split_extension(&s4, &v4, DEFAULT_BUDGET).verdict(), SplitVerdict::Split);
    }

    #[test]
    fn budget_is_respected() {
        let s4 = symmetric(4);
        let v4 = s4.p_core(2);
        assert_eq!(split_extension(&s4, &v4, 1).verdict(), SplitVerdict::Inconclusive);
    }
}
