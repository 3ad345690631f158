//! The named subgroups of PGammaU(3,8) generated by the barred matrices.

use crate::grp::SmallGroup;
use crate::psu::{make_generators, Generators, GroupElement, Pgu, PsuError};

pub type ProjGroup = SmallGroup<Pgu>;

/// Generous closure cap: every named subgroup has order at most 1296, so
/// hitting this means a convention error rather than a large group.
const CAP: usize = 20_000;

/// Projective images of the generators and the derived elements used
/// throughout.
#[derive(Debug, Clone, Copy)]
pub struct Barred {
    pub a: GroupElement,
    pub b: GroupElement,
    pub c: GroupElement,
    pub d: GroupElement,
    pub e: GroupElement,
    pub f: GroupElement,
    pub sigma: GroupElement,
    pub sigma2: GroupElement,
    pub sigma3: GroupElement,
    /// F sigma^3
    pub f_sigma3: GroupElement,
}

impl Barred {
    pub fn new(pgu: &Pgu, g: &Generators) -> Self {
        let c = |x: &GroupElement| pgu.canonicalize(x);
        let sigma2 = pgu.canonicalize(&pgu.pow_exact(&g.sigma, 2));
        let sigma3 = pgu.canonicalize(&pgu.pow_exact(&g.sigma, 3));
        Barred {
            a: c(&g.a),
            b: c(&g.b),
            c: c(&g.c),
            d: c(&g.d),
            e: c(&g.e),
            f: c(&g.f),
            sigma: c(&g.sigma),
            sigma2,
            sigma3,
            f_sigma3: pgu.compose(&g.f, &sigma3),
        }
    }

    /// Generators of K, in a fixed order.
    pub fn k_generators(&self) -> Vec<(&'static str, GroupElement)> {
        vec![
            ("A", self.a),
            ("B", self.b),
            ("C", self.c),
            ("D", self.d),
            ("E", self.e),
            ("F", self.f),
            ("sigma^3", self.sigma3),
            ("sigma^2", self.sigma2),
        ]
    }

    /// Generators of H: those of K without sigma^2.
    pub fn h_generators(&self) -> Vec<(&'static str, GroupElement)> {
        self.k_generators().into_iter().filter(|(n, _)| *n != "sigma^2").collect()
    }
}

/// Membership in H = PSU(3,8) : <sigma^3>, valid for elements of K.
pub fn in_h(g: &GroupElement) -> bool {
    g.twist.is_multiple_of(3)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, serde::Serialize)]
pub enum Which {
    H,
    K,
}

impl Which {
    pub fn contains(self, g: &GroupElement) -> bool {
        match self {
            Which::H => in_h(g),
            Which::K => true,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Which::H => "H",
            Which::K => "K",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Subgroups {
    pub pgu: Pgu,
    pub gens: Generators,
    pub el: Barred,
    pub q1: ProjGroup,
    pub q2: ProjGroup,
    pub qstar: ProjGroup,
    pub s: ProjGroup,
    pub h1: ProjGroup,
    pub h2: ProjGroup,
    pub h12: ProjGroup,
    pub qhat1: ProjGroup,
    pub qhat2: ProjGroup,
    pub k1: ProjGroup,
    pub k2: ProjGroup,
    pub k12: ProjGroup,
}

fn gen(pgu: &Pgu, gens: &[GroupElement]) -> Result<ProjGroup, PsuError> {
    SmallGroup::closure(pgu, gens, CAP).map_err(|e| PsuError::Closure(e.to_string()))
}

impl Subgroups {
    pub fn build(pgu: &Pgu) -> Result<Self, PsuError> {
        let gens = make_generators(pgu)?;
        let el = Barred::new(pgu, &gens);
        let Barred { a, b, c, d, e, f, sigma3: s3, sigma2: s2, .. } = el;
        let h1 = gen(pgu, &[a, b, c, d, s3])?;
        let h2 = gen(pgu, &[a, b, c, e, f, s3])?;
        let k1 = gen(pgu, &[a, b, c, d, s3, s2])?;
        let k2 = gen(pgu, &[a, b, c, e, f, s3, s2])?;
        Ok(Subgroups {
            q1: gen(pgu, &[a, b])?,
            q2: gen(pgu, &[a, b, c])?,
            qstar: gen(pgu, &[b, c])?,
            s: gen(pgu, &[e, f, s3])?,
            qhat1: gen(pgu, &[a, b, s2])?,
            qhat2: gen(pgu, &[a, b, c, s2])?,
            h12: h1.intersect(&h2),
            k12: k1.intersect(&k2),
            h1,
            h2,
            k1,
            k2,
            pgu: pgu.clone(),
            gens,
            el,
        })
    }

    /// G_1, G_2 and G_12 for the chosen group.
    pub fn amalgam_of(&self, which: Which) -> (&ProjGroup, &ProjGroup, &ProjGroup) {
        match which {
            Which::H => (&self.h1, &self.h2, &self.h12),
            Which::K => (&self.k1, &self.k2, &self.k12),
        }
    }

    pub fn closure(&self, gens: &[GroupElement]) -> Result<ProjGroup, PsuError> {
        gen(&self.pgu, gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf64::DEFAULT_MODULUS;

    #[test]
    fn orders_of_named_subgroups() {
        let pgu = Pgu::new(DEFAULT_MODULUS).unwrap();
        let s = Subgroups::build(&pgu).unwrap();
        assert_eq!(s.q1.order(), 9);
        assert_eq!(s.q2.order(), 27);
        assert_eq!(s.qstar.order(), 9);
        assert_eq!(s.s.order(), 36);
        assert_eq!(s.h1.order(), 432);
        assert_eq!(s.h2.order(), 324);
        assert_eq!(s.h12.order(), 108);
        assert_eq!(s.k1.order(), 1296);
        assert_eq!(s.k2.order(), 972);
        assert_eq!(s.k12.order(), 324);
        assert!(s.h1.elements().iter().all(in_h));
        assert_eq!(s.k1.elements().iter().filter(|g| in_h(g)).count(), 432);
    }
}
