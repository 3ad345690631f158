//! Isomorphism testing by backtracking over images of a generating set.
//!
//! Both groups are converted to Cayley tables. Candidate images are pruned
//! by an element invariant (order, class size, number of square and cube
//! roots); each partial assignment is extended along the Cayley graph of
//! the generators assigned so far and rejected at the first inconsistency.
//! The first generator only needs one candidate per conjugacy class of the
//! target, since composing with an inner automorphism preserves
//! isomorphisms.

use std::collections::HashMap;

use super::{CayleyTable, GroupOps, SmallGroup};

type Invariant = (u32, usize, u32, u32);

struct Profile {
    inv: Vec<Invariant>,
    class: Vec<u32>,
}

impl Profile {
    fn new(t: &CayleyTable) -> Self {
        let n = t.order();
        let (class, sizes) = t.classes();
        let mut sqrt = vec![0u32; n];
        let mut cbrt = vec![0u32; n];
        for x in 0..n as u16 {
            let x2 = t.mul(x, x);
            sqrt[x2 as usize] += 1;
            cbrt[t.mul(x2, x) as usize] += 1;
        }
        let inv = (0..n).map(|x| (t.elem_order(x as u16), sizes[class[x] as usize], sqrt[x], cbrt[x])).collect();
        Profile { inv, class }
    }

    fn histogram(&self) -> Vec<(Invariant, usize)> {
        let mut h: HashMap<Invariant, usize> = HashMap::new();
        for &i in &self.inv {
            *h.entry(i).or_default() += 1;
        }
        let mut v: Vec<_> = h.into_iter().collect();
        v.sort();
        v
    }
}

/// An isomorphism `a -> b` as an image table, if one exists.
pub fn find_isomorphism(a: &CayleyTable, b: &CayleyTable) -> Option<Vec<u16>> {
    let n = a.order();
    if n != b.order() {
        return None;
    }
    if n == 1 {
        return Some(vec![0]);
    }
    let pa = Profile::new(a);
    let pb = Profile::new(b);
    if pa.histogram() != pb.histogram() {
        return None;
    }
    if a.center_order() != b.center_order() || a.derived_order() != b.derived_order() {
        return None;
    }
    let mut by_inv: HashMap<Invariant, Vec<u16>> = HashMap::new();
    for x in 0..n as u16 {
        by_inv.entry(pb.inv[x as usize]).or_default().push(x);
    }
    let gens = choose_generators(a, &pa, &by_inv);
    let mut search = Search { a, b, pa: &pa, pb: &pb, by_inv: &by_inv, gens: &gens };
    let mut images = Vec::with_capacity(gens.len());
    search.descend(&mut images)
}

/// Greedy generating set: at each step the element enlarging the generated
/// subgroup most, ties broken by fewest candidate images.
fn choose_generators(a: &CayleyTable, pa: &Profile, by_inv: &HashMap<Invariant, Vec<u16>>) -> Vec<u16> {
    let n = a.order();
    let mut gens: Vec<u16> = Vec::new();
    let mut cur = vec![0u16];
    // one representative per class suffices when scoring
    let mut reps: Vec<u16> = Vec::new();
    let mut seen_class = vec![false; n];
    for x in 0..n {
        let c = pa.class[x] as usize;
        if !seen_class[c] {
            seen_class[c] = true;
            reps.push(x as u16);
        }
    }
    while cur.len() < n {
        let mut in_cur = vec![false; n];
        for &x in &cur {
            in_cur[x as usize] = true;
        }
        let pool: Vec<u16> = if gens.is_empty() { reps.clone() } else { (0..n as u16).collect() };
        let mut best: Option<(usize, usize, u16, Vec<u16>)> = None;
        for x in pool {
            if in_cur[x as usize] {
                continue;
            }
            let mut trial = gens.clone();
            trial.push(x);
            let sub = a.closure(&trial);
            let cands = by_inv[&pa.inv[x as usize]].len();
            let better = match &best {
                None => true,
                Some((size, c, _, _)) => sub.len() > *size || (sub.len() == *size && cands < *c),
            };
            if better {
                best = Some((sub.len(), cands, x, sub));
            }
        }
        let (_, _, x, sub) = best.expect("a proper subgroup misses some element");
        gens.push(x);
        cur = sub;
    }
    gens
}

struct Search<'a> {
    a: &'a CayleyTable,
    b: &'a CayleyTable,
    pa: &'a Profile,
    pb: &'a Profile,
    by_inv: &'a HashMap<Invariant, Vec<u16>>,
    gens: &'a [u16],
}

impl Search<'_> {
    fn descend(&mut self, images: &mut Vec<u16>) -> Option<Vec<u16>> {
        let level = images.len();
        let g = self.gens[level];
        let pool = &self.by_inv[&self.pa.inv[g as usize]];
        let mut first_class_seen = vec![false; self.b.order()];
        for &y in pool {
            if level == 0 {
                let c = self.pb.class[y as usize] as usize;
                if std::mem::replace(&mut first_class_seen[c], true) {
                    continue;
                }
            }
            images.push(y);
            if let Some(map) = self.extend(images) {
                if images.len() == self.gens.len() {
                    return Some(map);
                }
                if let Some(found) = self.descend(images) {
                    return Some(found);
                }
            }
            images.pop();
        }
        None
    }

    /// Extends generator images to the generated subgroup, failing on any
    /// inconsistency, collision or invariant mismatch.
    fn extend(&self, images: &[u16]) -> Option<Vec<u16>> {
        let n = self.a.order();
        let gens = &self.gens[..images.len()];
        let mut phi = vec![u16::MAX; n];
        let mut used = vec![false; n];
        phi[0] = 0;
        used[0] = true;
        let mut queue = vec![0u16];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for (&g, &h) in gens.iter().zip(images) {
                let y = self.a.mul(x, g);
                let fy = self.b.mul(phi[x as usize], h);
                match phi[y as usize] {
                    u16::MAX => {
                        if used[fy as usize] || self.pa.inv[y as usize] != self.pb.inv[fy as usize] {
                            return None;
                        }
                        phi[y as usize] = fy;
                        used[fy as usize] = true;
                        queue.push(y);
                    }
                    prev if prev != fy => return None,
                    _ => {}
                }
            }
        }
        Some(phi)
    }
}

/// Whether two enumerated groups (possibly over different element types)
/// are isomorphic.
pub fn iso_check<G1: GroupOps, G2: GroupOps>(a: &SmallGroup<G1>, b: &SmallGroup<G2>) -> bool {
    if a.order() != b.order() {
        return false;
    }
    find_isomorphism(&a.to_table(), &b.to_table()).is_some()
}

#[cfg(test)]
mod tests {
    use super::super::reference::{agl13, cyclic, dihedral, elementary_abelian_9, symmetric};
    use super::*;

    fn verify_hom(a: &CayleyTable, b: &CayleyTable, phi: &[u16]) {
        let n = a.order();
        let mut seen = vec![false; n];
        for x in 0..n {
            assert!(!std::mem::replace(&mut seen[phi[x] as usize], true));
            for y in 0..n {
                assert_eq!(phi[a.mul(x as u16, y as u16) as usize], b.mul(phi[x], phi[y]));
            }
        }
    }

    #[test]
    fn sym3_is_agl13() {
        let a = symmetric(3);
        let b = agl13();
        assert!(iso_check(&a, &b));
        let phi = find_isomorphism(&a.to_table(), &b.to_table()).unwrap();
        verify_hom(&a.to_table(), &b.to_table(), &phi);
    }

    #[test]
    fn c9_is_not_c3_squared() {
        assert!(!iso_check(&cyclic(9), &elementary_abelian_9()));
    }

    #[test]
    fn dih6_is_sym3_but_dih8_is_not_quaternion_like_c8() {
        assert!(iso_check(&dihedral(3), &symmetric(3)));
        assert!(!iso_check(&dihedral(4), &cyclic(8)));
    }

    #[test]
    fn reflexive_and_symmetric() {
        let groups = [symmetric(4).to_table(), dihedral(12).to_table(), cyclic(24).to_table()];
        for (i, a) in groups.iter().enumerate() {
            let phi = find_isomorphism(a, a).unwrap();
            verify_hom(a, a, &phi);
            for (j, b) in groups.iter().enumerate() {
                assert_eq!(find_isomorphism(a, b).is_some(), i == j);
                assert_eq!(find_isomorphism(b, a).is_some(), i == j);
            }
        }
    }
}
