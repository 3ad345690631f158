use std::fmt;

use super::GroupOps;

/// A permutation of `0..n`, stored as its image list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<u16>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u16).collect())
    }

    /// Panics if `images` is not a permutation.
    pub fn from_images(images: Vec<u16>) -> Self {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            assert!(!std::mem::replace(&mut seen[i as usize], true), "not a permutation: {images:?}");
        }
        Perm(images)
    }

    pub fn from_fn(n: usize, f: impl Fn(usize) -> usize) -> Self {
        Self::from_images((0..n).map(|i| f(i) as u16).collect())
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[u16]]) -> Self {
        let mut img: Vec<u16> = (0..n as u16).collect();
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                img[x as usize] = c[(k + 1) % c.len()];
            }
        }
        Self::from_images(img)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    pub fn images(&self) -> &[u16] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.0)
    }
}

/// Permutations of a fixed degree, composed left to right: `p * q` applies
/// `p` first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermOps {
    degree: usize,
}

impl PermOps {
    pub fn new(degree: usize) -> Self {
        PermOps { degree }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }
}

impl GroupOps for PermOps {
    type Elem = Perm;

    fn identity(&self) -> Perm {
        Perm::identity(self.degree)
    }

    fn mul(&self, a: &Perm, b: &Perm) -> Perm {
        Perm(a.0.iter().map(|&i| b.0[i as usize]).collect())
    }

    fn inv(&self, a: &Perm) -> Perm {
        let mut out = vec![0u16; a.0.len()];
        for (i, &x) in a.0.iter().enumerate() {
            out[x as usize] = i as u16;
        }
        Perm(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn composition_applies_left_factor_first() {
        let ops = PermOps::new(3);
        let a = Perm::from_cycles(3, &[&[0, 1]]);
        let b = Perm::from_cycles(3, &[&[1, 2]]);
        let ab = ops.mul(&a, &b);
        // 0 -> 1 -> 2
        assert_eq!(ab.image(0), 2);
        assert!(ops.mul(&ab, &ops.inv(&ab)).is_identity());
        assert_eq!(ops.order_of(&ab), 3);
    }

    #[test]
    #[should_panic]
    fn rejects_non_permutations() {
        Perm::from_images(vec![0, 0, 1]);
    }
}
