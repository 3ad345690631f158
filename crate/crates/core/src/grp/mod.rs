//! Explicitly enumerated finite groups.
//!
//! A [`SmallGroup`] is a list of elements of some ambient group (anything
//! implementing [`GroupOps`]) closed under multiplication. All structural
//! queries work by exhaustive filtering or closure, which is fine for the
//! orders that occur here (at most a few thousand).

use std::collections::{HashMap, HashSet};
use std::fmt::Debug;
use std::hash::Hash;

use thiserror::Error;

pub mod iso;
pub mod perm;
pub mod reference;
pub mod split;
pub mod table;

pub use iso::{find_isomorphism, iso_check};
pub use perm::{Perm, PermOps};
pub use split::{split_extension, SplitResult, SplitVerdict};
pub use table::{CayleyTable, Quotient, TableOps};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("closure exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },
    #[error("empty generating set")]
    NoGenerators,
}

/// Multiplication in an ambient group. Implementations are cheap to clone
/// handles (field tables behind an `Arc`, a degree, ...).
pub trait GroupOps: Clone + Send + Sync {
    type Elem: Clone + Eq + Hash + Ord + Debug + Send + Sync;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;

    /// x^g = g^-1 x g
    fn conj(&self, x: &Self::Elem, g: &Self::Elem) -> Self::Elem {
        self.mul(&self.mul(&self.inv(g), x), g)
    }

    /// [x, y] = x^-1 y^-1 x y
    fn comm(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.mul(&self.inv(x), &self.conj(x, y))
    }

    fn pow(&self, x: &Self::Elem, n: u64) -> Self::Elem {
        let mut r = self.identity();
        for _ in 0..n {
            r = self.mul(&r, x);
        }
        r
    }

    fn order_of(&self, x: &Self::Elem) -> u64 {
        let id = self.identity();
        let mut y = x.clone();
        let mut k = 1;
        while y != id {
            y = self.mul(&y, x);
            k += 1;
        }
        k
    }
}

/// A finite group given by its full element list.
#[derive(Clone)]
pub struct SmallGroup<G: GroupOps> {
    ops: G,
    elements: Vec<G::Elem>,
    index: HashMap<G::Elem, u32>,
    gens: Vec<G::Elem>,
}

impl<G: GroupOps> Debug for SmallGroup<G> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SmallGroup").field("order", &self.order()).field("gens", &self.gens.len()).finish()
    }
}

/// Record of the standard structural predicates.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Structure {
    pub order: usize,
    pub exponent: u64,
    pub is_abelian: bool,
    pub is_cyclic: bool,
    pub is_elementary_abelian: bool,
    pub is_special: bool,
    pub is_extraspecial: bool,
    pub center_order: usize,
    pub derived_order: usize,
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn p_part(mut n: usize, p: usize) -> usize {
    let mut r = 1;
    while n.is_multiple_of(p) {
        n /= p;
        r *= p;
    }
    r
}

impl<G: GroupOps> SmallGroup<G> {
    /// Breadth-first closure of `gens`. Element order is deterministic:
    /// identity first, then words in the generators by length.
    pub fn closure(ops: &G, gens: &[G::Elem], cap: usize) -> Result<Self, GroupError> {
        let id = ops.identity();
        let gens: Vec<G::Elem> = gens.iter().filter(|g| **g != id).cloned().collect();
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0u32);
        let mut head = 0;
        while head < elements.len() {
            let x = elements[head].clone();
            head += 1;
            for g in &gens {
                let y = ops.mul(&x, g);
                if !index.contains_key(&y) {
                    if elements.len() >= cap {
                        return Err(GroupError::CapExceeded { cap });
                    }
                    index.insert(y.clone(), elements.len() as u32);
                    elements.push(y);
                }
            }
        }
        Ok(SmallGroup { ops: ops.clone(), elements, index, gens })
    }

    pub fn trivial(ops: &G) -> Self {
        Self::closure(ops, &[], 1).expect("trivial group")
    }

    /// Wraps an element set already known to be a subgroup, choosing a
    /// small generating set greedily (highest element order first).
    pub fn from_subgroup_elements(ops: &G, elems: Vec<G::Elem>) -> Self {
        let id = ops.identity();
        let mut elements = Vec::with_capacity(elems.len());
        elements.push(id.clone());
        elements.extend(elems.into_iter().filter(|x| *x != id));
        let index: HashMap<G::Elem, u32> = elements.iter().cloned().enumerate().map(|(i, x)| (x, i as u32)).collect();
        let mut grp = SmallGroup { ops: ops.clone(), elements, index, gens: Vec::new() };
        grp.gens = grp.generating_set();
        debug_assert!(grp.is_closed());
        grp
    }

    fn generating_set(&self) -> Vec<G::Elem> {
        let mut order: Vec<(u64, usize)> = self.elements.iter().enumerate().map(|(i, x)| (self.ops.order_of(x), i)).collect();
        order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let mut gens = Vec::new();
        let mut cur: HashSet<G::Elem> = HashSet::from([self.ops.identity()]);
        for (_, i) in order {
            if cur.len() == self.order() {
                break;
            }
            let x = &self.elements[i];
            if cur.contains(x) {
                continue;
            }
            gens.push(x.clone());
            let sub = SmallGroup::closure(&self.ops, &gens, self.order()).expect("subset of a group");
            cur = sub.elements.into_iter().collect();
        }
        gens
    }

    fn is_closed(&self) -> bool {
        self.gens.iter().all(|g| self.elements.iter().all(|x| self.contains(&self.ops.mul(x, g))))
    }

    pub fn ops(&self) -> &G {
        &self.ops
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[G::Elem] {
        &self.elements
    }

    pub fn gens(&self) -> &[G::Elem] {
        &self.gens
    }

    pub fn contains(&self, x: &G::Elem) -> bool {
        self.index.contains_key(x)
    }

    pub fn index_of(&self, x: &G::Elem) -> Option<usize> {
        self.index.get(x).map(|&i| i as usize)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Subgroup generated by `gens`, which must lie in `self`.
    pub fn subgroup(&self, gens: &[G::Elem]) -> SmallGroup<G> {
        debug_assert!(gens.iter().all(|g| self.contains(g)));
        SmallGroup::closure(&self.ops, gens, self.order()).expect("generators lie in the group")
    }

    /// Elements of `self` satisfying `pred`; the caller guarantees these
    /// form a subgroup.
    pub fn filter(&self, pred: impl Fn(&G::Elem) -> bool) -> SmallGroup<G> {
        let elems = self.elements.iter().filter(|x| pred(x)).cloned().collect();
        SmallGroup::from_subgroup_elements(&self.ops, elems)
    }

    pub fn is_subgroup_of(&self, other: &SmallGroup<G>) -> bool {
        self.elements.iter().all(|x| other.contains(x))
    }

    /// Equality as element sets.
    pub fn same_elements(&self, other: &SmallGroup<G>) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    pub fn intersect(&self, other: &SmallGroup<G>) -> SmallGroup<G> {
        let (small, big) = if self.order() <= other.order() { (self, other) } else { (other, self) };
        small.filter(|x| big.contains(x))
    }

    pub fn join(&self, other: &SmallGroup<G>, cap: usize) -> Result<SmallGroup<G>, GroupError> {
        let gens: Vec<G::Elem> = self.gens.iter().chain(other.gens.iter()).cloned().collect();
        SmallGroup::closure(&self.ops, &gens, cap)
    }

    pub fn element_order(&self, x: &G::Elem) -> u64 {
        self.ops.order_of(x)
    }

    pub fn exponent(&self) -> u64 {
        self.elements.iter().map(|x| self.ops.order_of(x)).fold(1, lcm)
    }

    pub fn is_abelian(&self) -> bool {
        self.gens.iter().enumerate().all(|(i, a)| self.gens[i + 1..].iter().all(|b| self.ops.mul(a, b) == self.ops.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order() as u64;
        self.elements.iter().any(|x| self.ops.order_of(x) == n)
    }

    pub fn is_p_group(&self, p: usize) -> bool {
        p_part(self.order(), p) == self.order()
    }

    /// Elements commuting with every element of `set`.
    pub fn centralizer_of(&self, set: &[G::Elem]) -> SmallGroup<G> {
        self.filter(|g| set.iter().all(|h| self.ops.mul(g, h) == self.ops.mul(h, g)))
    }

    pub fn centralizer(&self, h: &SmallGroup<G>) -> SmallGroup<G> {
        self.centralizer_of(&h.gens)
    }

    pub fn center(&self) -> SmallGroup<G> {
        self.centralizer_of(&self.gens)
    }

    pub fn normalizer(&self, h: &SmallGroup<G>) -> SmallGroup<G> {
        self.filter(|g| h.gens.iter().all(|x| h.contains(&self.ops.conj(x, g))))
    }

    pub fn normalizes(&self, g: &G::Elem, h: &SmallGroup<G>) -> bool {
        h.gens.iter().all(|x| h.contains(&self.ops.conj(x, g)))
    }

    /// Whether `n` (a subgroup of `self`) is normal in `self`.
    pub fn is_normal(&self, n: &SmallGroup<G>) -> bool {
        n.is_subgroup_of(self) && self.gens.iter().all(|g| self.normalizes(g, n))
    }

    /// H^g = g^-1 H g.
    pub fn conjugate(h: &SmallGroup<G>, g: &G::Elem) -> SmallGroup<G> {
        let ops = &h.ops;
        let elems: Vec<G::Elem> = h.elements.iter().map(|x| ops.conj(x, g)).collect();
        let gens: Vec<G::Elem> = h.gens.iter().map(|x| ops.conj(x, g)).collect();
        let index = elems.iter().cloned().enumerate().map(|(i, x)| (x, i as u32)).collect();
        SmallGroup { ops: ops.clone(), elements: elems, index, gens }
    }

    /// Smallest normal subgroup of `self` containing `set`.
    pub fn normal_closure_of(&self, set: &[G::Elem]) -> SmallGroup<G> {
        let mut gens: Vec<G::Elem> = set.to_vec();
        let mut h = self.subgroup(&gens);
        loop {
            let extra = self.gens.iter().find_map(|g| h.gens.iter().map(|x| self.ops.conj(x, g)).find(|y| !h.contains(y)));
            match extra {
                Some(y) => {
                    gens.push(y);
                    h = self.subgroup(&gens);
                }
                None => return h,
            }
        }
    }

    pub fn normal_closure(&self, x: &SmallGroup<G>) -> SmallGroup<G> {
        self.normal_closure_of(&x.gens)
    }

    /// Largest normal subgroup of `self` contained in `h`.
    pub fn core(&self, h: &SmallGroup<G>) -> SmallGroup<G> {
        let mut cur = h.clone();
        loop {
            let before = cur.order();
            for g in &self.gens {
                let conj = SmallGroup::conjugate(&cur, g);
                cur = cur.intersect(&conj);
            }
            if cur.order() == before {
                return cur;
            }
        }
    }

    /// [A, B], generated by all commutators [a, b].
    pub fn commutator_subgroup(&self, a: &SmallGroup<G>, b: &SmallGroup<G>) -> SmallGroup<G> {
        let mut comms: Vec<G::Elem> = Vec::new();
        let mut seen = HashSet::new();
        for x in a.elements() {
            for y in b.elements() {
                let c = self.ops.comm(x, y);
                if seen.insert(c.clone()) {
                    comms.push(c);
                }
            }
        }
        self.subgroup(&comms)
    }

    pub fn derived(&self) -> SmallGroup<G> {
        let comms: Vec<G::Elem> =
            self.gens.iter().flat_map(|a| self.gens.iter().map(move |b| (a, b))).map(|(a, b)| self.ops.comm(a, b)).collect();
        self.normal_closure_of(&comms)
    }

    /// Subgroup generated by all p-th powers.
    pub fn power_subgroup(&self, p: u64) -> SmallGroup<G> {
        let pows: Vec<G::Elem> = self.elements.iter().map(|x| self.ops.pow(x, p)).collect();
        self.subgroup(&pows)
    }

    /// Frattini subgroup of a p-group: derived subgroup times p-th powers.
    pub fn frattini_p(&self, p: u64) -> SmallGroup<G> {
        let d = self.derived();
        let pw = self.power_subgroup(p);
        let gens: Vec<G::Elem> = d.gens.iter().chain(pw.gens.iter()).cloned().collect();
        self.subgroup(&gens)
    }

    /// A Sylow p-subgroup, grown one factor of p at a time inside
    /// successive normalizers.
    pub fn sylow(&self, p: usize) -> SmallGroup<G> {
        let target = p_part(self.order(), p);
        let mut sub = SmallGroup::trivial(&self.ops);
        while sub.order() < target {
            let n = self.normalizer(&sub);
            let x = n
                .elements
                .iter()
                .find(|x| !sub.contains(x) && sub.contains(&self.ops.pow(x, p as u64)))
                .expect("a p-subgroup below Sylow order has a p-element in its normalizer")
                .clone();
            let mut gens = sub.gens.clone();
            gens.push(x);
            sub = self.subgroup(&gens);
        }
        sub
    }

    /// O_p: intersection of the conjugates of a Sylow p-subgroup.
    pub fn p_core(&self, p: usize) -> SmallGroup<G> {
        let syl = self.sylow(p);
        self.core(&syl)
    }

    pub fn is_elementary_abelian(&self, p: u64) -> bool {
        self.is_abelian() && self.elements.iter().all(|x| self.ops.pow(x, p) == self.ops.identity())
    }

    /// Z(G) = G' = Phi(G) for a p-group G, with G nonabelian.
    pub fn is_special(&self) -> bool {
        let ps = prime_factors(self.order());
        if ps.len() != 1 || self.is_abelian() {
            return false;
        }
        let z = self.center();
        z.same_elements(&self.derived()) && z.same_elements(&self.frattini_p(ps[0] as u64))
    }

    pub fn structure(&self) -> Structure {
        let ps = prime_factors(self.order());
        let elem_ab = ps.len() == 1 && self.is_elementary_abelian(ps[0] as u64);
        let special = self.is_special();
        let z = self.center();
        Structure {
            order: self.order(),
            exponent: self.exponent(),
            is_abelian: self.is_abelian(),
            is_cyclic: self.is_cyclic(),
            is_elementary_abelian: elem_ab || self.is_trivial(),
            is_special: special,
            is_extraspecial: special && z.order() == ps[0],
            center_order: z.order(),
            derived_order: self.derived().order(),
        }
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<G::Elem>> {
        let mut seen: HashSet<G::Elem> = HashSet::new();
        let mut classes = Vec::new();
        for x in &self.elements {
            if seen.contains(x) {
                continue;
            }
            let mut class: Vec<G::Elem> = Vec::new();
            for g in &self.elements {
                let y = self.ops.conj(x, g);
                if seen.insert(y.clone()) {
                    class.push(y);
                }
            }
            classes.push(class);
        }
        classes
    }

    /// Whether every element of `self` is a product a*b with a in `a`, b in `b`.
    pub fn is_product_of(&self, a: &SmallGroup<G>, b: &SmallGroup<G>) -> bool {
        let mut prod = HashSet::new();
        for x in a.elements() {
            for y in b.elements() {
                prod.insert(self.ops.mul(x, y));
            }
        }
        prod.len() == self.order() && prod.iter().all(|x| self.contains(x))
    }

    /// Elements acting trivially by conjugation on the section upper/lower:
    /// [u, g] in `lower` for every u in `upper`.
    pub fn centralizer_of_section(&self, upper: &SmallGroup<G>, lower: &SmallGroup<G>) -> SmallGroup<G> {
        self.filter(|g| upper.elements().iter().all(|u| lower.contains(&self.ops.comm(u, g))))
    }

    /// Quotient by a normal subgroup, as an explicit group of coset
    /// representatives.
    pub fn quotient(&self, n: &SmallGroup<G>) -> Quotient<G> {
        Quotient::new(self, n)
    }

    /// Cayley table in the current element order (identity at index 0).
    pub fn to_table(&self) -> CayleyTable {
        CayleyTable::from_group(self)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

#[cfg(test)]
mod tests {
    use super::reference::{cyclic, symmetric};
    use super::*;

    #[test]
    fn closure_of_identity_is_trivial() {
        let ops = PermOps::new(4);
        let g = SmallGroup::closure(&ops, &[ops.identity()], 10).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.exponent(), 1);
        assert!(g.structure().is_elementary_abelian);
    }

    #[test]
    fn closure_cap_is_enforced() {
        let s4 = symmetric(4);
        let r = SmallGroup::closure(s4.ops(), s4.gens(), 10);
        assert_eq!(r.unwrap_err(), GroupError::CapExceeded { cap: 10 });
    }

    #[test]
    fn basic_subgroups_of_sym4() {
        let s4 = symmetric(4);
        assert_eq!(s4.order(), 24);
        assert!(s4.center().is_trivial());
        assert_eq!(s4.derived().order(), 12);
        assert_eq!(s4.derived().derived().order(), 4);
        assert_eq!(s4.p_core(2).order(), 4);
        assert_eq!(s4.p_core(3).order(), 1);
        assert_eq!(s4.sylow(2).order(), 8);
        assert_eq!(s4.sylow(3).order(), 3);
        assert!(s4.normalizer(&s4).same_elements(&s4));
        let classes = s4.conjugacy_classes();
        let mut sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 3, 6, 6, 8]);
    }

    #[test]
    fn abelian_center_is_whole_group() {
        let c9 = cyclic(9);
        assert!(c9.center().same_elements(&c9));
        assert!(c9.is_cyclic());
        assert!(!c9.is_elementary_abelian(3));
    }

    #[test]
    fn core_and_normal_closure() {
        let s4 = symmetric(4);
        let s3 = s4.filter(|p| p.image(3) == 3);
        assert_eq!(s3.order(), 6);
        assert!(s4.core(&s3).is_trivial());
        let t = s4.subgroup(&[Perm::from_images(vec![1, 0, 2, 3])]);
        assert_eq!(s4.normal_closure(&t).order(), 24);
        let c = Perm::from_images(vec![1, 2, 0, 3]);
        assert_eq!(s4.normal_closure_of(&[c]).order(), 12);
    }

    #[test]
    fn lagrange_and_class_equation_on_sym4_subgroups() {
        let s4 = symmetric(4);
        for h in [s4.center(), s4.derived(), s4.sylow(2), s4.sylow(3), s4.p_core(2)] {
            assert_eq!(s4.order() % h.order(), 0);
            let z = h.center().order();
            let noncentral: usize = h.conjugacy_classes().iter().filter(|c| c.len() > 1).map(|c| c.len()).sum();
            assert_eq!(h.order(), z + noncentral);
        }
    }
}
