use std::collections::HashMap;
use std::sync::Arc;

use super::{GroupOps, SmallGroup};

/// A group on `0..n` given by its full multiplication table; 0 is the
/// identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CayleyTable {
    n: usize,
    mul: Vec<u16>,
    inv: Vec<u16>,
}

impl CayleyTable {
    pub fn from_group<G: GroupOps>(g: &SmallGroup<G>) -> Self {
        let ops = g.ops();
        let els = g.elements();
        let n = els.len();
        assert!(n <= u16::MAX as usize);
        debug_assert_eq!(els[0], ops.identity());
        let mut mul = vec![0u16; n * n];
        for (i, a) in els.iter().enumerate() {
            for (j, b) in els.iter().enumerate() {
                mul[i * n + j] = g.index_of(&ops.mul(a, b)).expect("group is closed") as u16;
            }
        }
        Self::from_mul(n, mul)
    }

    fn from_mul(n: usize, mul: Vec<u16>) -> Self {
        let mut inv = vec![0u16; n];
        for a in 0..n {
            inv[a] = (0..n).find(|&b| mul[a * n + b] == 0).expect("every element has an inverse") as u16;
        }
        CayleyTable { n, mul, inv }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.n + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    pub fn elem_order(&self, a: u16) -> u32 {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Direct product; the pair (a, b) is element a * |B| + b.
    pub fn direct_product(a: &CayleyTable, b: &CayleyTable) -> CayleyTable {
        let n = a.n * b.n;
        let mut mul = vec![0u16; n * n];
        for x in 0..n {
            let (xa, xb) = (x / b.n, x % b.n);
            for y in 0..n {
                let (ya, yb) = (y / b.n, y % b.n);
                mul[x * n + y] = (a.mul(xa as u16, ya as u16) as usize * b.n + b.mul(xb as u16, yb as u16) as usize) as u16;
            }
        }
        Self::from_mul(n, mul)
    }

    /// Size of the subgroup generated by `gens`, via a membership bitmap.
    pub fn closure(&self, gens: &[u16]) -> Vec<u16> {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut out = vec![0u16];
        let mut head = 0;
        while head < out.len() {
            let x = out[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
        }
        out
    }

    /// Conjugacy class index of every element, plus the class sizes.
    pub fn classes(&self) -> (Vec<u32>, Vec<usize>) {
        let mut class = vec![u32::MAX; self.n];
        let mut sizes = Vec::new();
        for x in 0..self.n {
            if class[x] != u32::MAX {
                continue;
            }
            let id = sizes.len() as u32;
            let mut size = 0;
            for g in 0..self.n as u16 {
                let y = self.mul(self.mul(self.inv(g), x as u16), g) as usize;
                if class[y] == u32::MAX {
                    class[y] = id;
                    size += 1;
                }
            }
            sizes.push(size);
        }
        (class, sizes)
    }

    pub fn center_order(&self) -> usize {
        (0..self.n as u16).filter(|&z| (0..self.n as u16).all(|g| self.mul(z, g) == self.mul(g, z))).count()
    }

    /// Order of the derived subgroup.
    pub fn derived_order(&self) -> usize {
        let mut comms: Vec<u16> = Vec::new();
        let mut seen = vec![false; self.n];
        for a in 0..self.n as u16 {
            for b in 0..self.n as u16 {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                if !seen[c as usize] {
                    seen[c as usize] = true;
                    comms.push(c);
                }
            }
        }
        self.closure(&comms).len()
    }

    pub fn as_group(self) -> SmallGroup<TableOps> {
        let ops = TableOps(Arc::new(self));
        let elems: Vec<u16> = (0..ops.0.n as u16).collect();
        SmallGroup::from_subgroup_elements(&ops, elems)
    }
}

/// [`GroupOps`] over a shared Cayley table.
#[derive(Clone, Debug)]
pub struct TableOps(pub Arc<CayleyTable>);

impl GroupOps for TableOps {
    type Elem = u16;

    fn identity(&self) -> u16 {
        0
    }

    fn mul(&self, a: &u16, b: &u16) -> u16 {
        self.0.mul(*a, *b)
    }

    fn inv(&self, a: &u16) -> u16 {
        self.0.inv(*a)
    }
}

/// G/N with canonical coset representatives (the first element of each
/// coset in G's enumeration order).
#[derive(Clone, Debug)]
pub struct Quotient<G: GroupOps> {
    reps: Vec<G::Elem>,
    coset_of: HashMap<G::Elem, u16>,
    table: CayleyTable,
}

impl<G: GroupOps> Quotient<G> {
    pub fn new(g: &SmallGroup<G>, n: &SmallGroup<G>) -> Self {
        debug_assert!(g.is_normal(n));
        let ops = g.ops();
        let mut coset_of: HashMap<G::Elem, u16> = HashMap::with_capacity(g.order());
        let mut reps = Vec::new();
        for x in g.elements() {
            if coset_of.contains_key(x) {
                continue;
            }
            let id = reps.len() as u16;
            for m in n.elements() {
                coset_of.insert(ops.mul(x, m), id);
            }
            reps.push(x.clone());
        }
        let k = reps.len();
        let mut mul = vec![0u16; k * k];
        for (i, a) in reps.iter().enumerate() {
            for (j, b) in reps.iter().enumerate() {
                mul[i * k + j] = coset_of[&ops.mul(a, b)];
            }
        }
        Quotient { reps, coset_of, table: CayleyTable::from_mul(k, mul) }
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[G::Elem] {
        &self.reps
    }

    /// Image of `x` under the quotient map.
    pub fn project(&self, x: &G::Elem) -> u16 {
        self.coset_of[x]
    }

    pub fn table(&self) -> &CayleyTable {
        &self.table
    }
}

#[cfg(test)]
mod tests {
    use super::super::reference::{cyclic, symmetric};
    use super::*;

    #[test]
    fn quotient_map_is_a_homomorphism() {
        let s4 = symmetric(4);
        let v4 = s4.p_core(2);
        let q = s4.quotient(&v4);
        assert_eq!(q.order(), 6);
        let ops = s4.ops();
        for a in s4.elements().iter().step_by(5) {
            for b in s4.elements().iter().step_by(7) {
                assert_eq!(q.project(&ops.mul(a, b)), q.table().mul(q.project(a), q.project(b)));
            }
        }
    }

    #[test]
    fn direct_product_orders() {
        let c3 = cyclic(3).to_table();
        let c2 = cyclic(2).to_table();
        let c6 = CayleyTable::direct_product(&c3, &c2);
        assert_eq!(c6.order(), 6);
        assert!((0..6).any(|x| c6.elem_order(x) == 6));
        assert_eq!(c6.center_order(), 6);
        assert_eq!(c6.derived_order(), 1);
    }

    #[test]
    fn table_group_round_trip() {
        let s4 = symmetric(4);
        let t = s4.to_table().as_group();
        assert_eq!(t.order(), 24);
        assert_eq!(t.derived().order(), 12);
    }
}
