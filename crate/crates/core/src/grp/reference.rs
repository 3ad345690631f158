//! Concrete models of the named reference groups.
//!
//! Everything but the extraspecial group of exponent 9 is a permutation
//! group; that one is modelled on pairs in Z9 x Z3 with multiplication
//! (i, j)(k, l) = (i + 4^j k mod 9, j + l mod 3).

use serde::Serialize;

use super::{iso_check, GroupOps, Perm, PermOps, SmallGroup};

pub type PermGroup = SmallGroup<PermOps>;

pub fn symmetric(n: usize) -> PermGroup {
    let ops = PermOps::new(n);
    if n < 2 {
        return SmallGroup::trivial(&ops);
    }
    let t = Perm::from_cycles(n, &[&[0, 1]]);
    let cyc: Vec<u16> = (0..n as u16).collect();
    let c = Perm::from_cycles(n, &[&cyc[..]]);
    SmallGroup::closure(&ops, &[t, c], usize::MAX).unwrap()
}

pub fn cyclic(n: usize) -> PermGroup {
    let ops = PermOps::new(n);
    let c = Perm::from_fn(n, |i| (i + 1) % n);
    SmallGroup::closure(&ops, &[c], n).unwrap()
}

/// The dihedral group of order 2n acting on n points.
pub fn dihedral(n: usize) -> PermGroup {
    let ops = PermOps::new(n);
    let r = Perm::from_fn(n, |i| (i + 1) % n);
    let s = Perm::from_fn(n, |i| (n - i) % n);
    SmallGroup::closure(&ops, &[r, s], 2 * n).unwrap()
}

/// x -> a x + b on GF(3).
pub fn agl13() -> PermGroup {
    let ops = PermOps::new(3);
    let t = Perm::from_fn(3, |i| (i + 1) % 3);
    let m = Perm::from_fn(3, |i| (2 * i) % 3);
    SmallGroup::closure(&ops, &[t, m], 6).unwrap()
}

fn pt(x: usize, y: usize) -> usize {
    (x % 3) + 3 * (y % 3)
}

/// The affine map v -> M v + t on GF(3)^2 as a permutation of 9 points.
fn affine(m: [[usize; 2]; 2], t: [usize; 2]) -> Perm {
    Perm::from_fn(9, |p| {
        let (x, y) = (p % 3, p / 3);
        pt(m[0][0] * x + m[0][1] * y + t[0], m[1][0] * x + m[1][1] * y + t[1])
    })
}

const ID2: [[usize; 2]; 2] = [[1, 0], [0, 1]];
const GL23_GENS: [[[usize; 2]; 2]; 3] = [[[1, 1], [0, 1]], [[1, 0], [1, 1]], [[2, 0], [0, 1]]];

pub fn agl23() -> PermGroup {
    let mut gens = vec![affine(ID2, [1, 0]), affine(ID2, [0, 1])];
    gens.extend(GL23_GENS.iter().map(|&m| affine(m, [0, 0])));
    SmallGroup::closure(&PermOps::new(9), &gens, 432).unwrap()
}

pub fn elementary_abelian_9() -> PermGroup {
    SmallGroup::closure(&PermOps::new(9), &[affine(ID2, [1, 0]), affine(ID2, [0, 1])], 9).unwrap()
}

/// GL(2,3) acting on the eight nonzero vectors.
pub fn gl23() -> PermGroup {
    let nonzero: Vec<usize> = (1..9).collect();
    let gens: Vec<Perm> = GL23_GENS
        .iter()
        .map(|&m| {
            let a = affine(m, [0, 0]);
            Perm::from_fn(8, |i| nonzero.iter().position(|&q| q == a.image(nonzero[i])).unwrap())
        })
        .collect();
    SmallGroup::closure(&PermOps::new(8), &gens, 48).unwrap()
}

/// Direct product of permutation groups on the disjoint union of domains.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let (da, db) = (a.ops().degree(), b.ops().degree());
    let ops = PermOps::new(da + db);
    let lift_a = |p: &Perm| Perm::from_fn(da + db, |i| if i < da { p.image(i) } else { i });
    let lift_b = |p: &Perm| Perm::from_fn(da + db, |i| if i < da { i } else { da + p.image(i - da) });
    let gens: Vec<Perm> = a.gens().iter().map(lift_a).chain(b.gens().iter().map(lift_b)).collect();
    SmallGroup::closure(&ops, &gens, a.order() * b.order()).unwrap()
}

/// Pairs (i, j) in Z9 x Z3 with (i, j)(k, l) = (i + 4^j k, j + l).
#[derive(Clone, Debug, Default)]
pub struct Sp2Ops;

impl Sp2Ops {
    fn four_pow(j: u8) -> u8 {
        [1, 4, 7][j as usize % 3]
    }
}

impl GroupOps for Sp2Ops {
    type Elem = (u8, u8);

    fn identity(&self) -> (u8, u8) {
        (0, 0)
    }

    fn mul(&self, a: &(u8, u8), b: &(u8, u8)) -> (u8, u8) {
        ((a.0 + Self::four_pow(a.1) * b.0) % 9, (a.1 + b.1) % 3)
    }

    fn inv(&self, a: &(u8, u8)) -> (u8, u8) {
        let j = (3 - a.1) % 3;
        // (i, j)^-1 = (-4^-j i, -j)
        ((9 - (Self::four_pow(j) * a.0) % 9) % 9, j)
    }
}

pub fn sp2() -> SmallGroup<Sp2Ops> {
    SmallGroup::closure(&Sp2Ops, &[(1, 0), (0, 1)], 27).unwrap()
}

/// Index-2 subgroups of `g` that contain `s`.
fn index_two_over(g: &PermGroup, s: &PermGroup) -> Vec<PermGroup> {
    let mut found: Vec<PermGroup> = Vec::new();
    for t in g.elements() {
        if s.contains(t) {
            continue;
        }
        let mut gens = s.gens().to_vec();
        gens.push(t.clone());
        let h = g.subgroup(&gens);
        if h.order() * 2 == g.order() && !found.iter().any(|f| f.same_elements(&h)) {
            found.push(h);
        }
    }
    found
}

/// The affine groups around a Sylow 3-subgroup S of AGL(2,3).
#[derive(Clone, Debug)]
pub struct AffineFamily {
    pub agl23: PermGroup,
    pub sylow3: PermGroup,
    /// O_3(AGL(2,3)), the translations.
    pub v: PermGroup,
    /// C_V(S) = Z(S).
    pub v0: PermGroup,
    /// N(S), of order 108.
    pub agl23s: PermGroup,
    /// Index 2 in N(S): C_X(V/V0) = S and C_X(V0)/S of order 2.
    pub agl23s_sharp: PermGroup,
    /// Index 2 in N(S): C_Y(V0) = S and C_Y(V/V0)/S of order 2.
    pub agl23s_star: PermGroup,
}

#[derive(Debug, Clone, Serialize)]
pub struct SelfCheck {
    pub name: String,
    pub passed: bool,
}

impl AffineFamily {
    pub fn build() -> (Self, Vec<SelfCheck>) {
        let agl23 = agl23();
        let sylow3 = agl23.sylow(3);
        let v = agl23.p_core(3);
        let zs = sylow3.center();
        let v0 = v.centralizer(&sylow3);
        let agl23s = agl23.normalizer(&sylow3);
        let subs = index_two_over(&agl23s, &sylow3);
        let c2 = cyclic(2);
        let decompose = |x: &PermGroup| {
            let cv0 = x.centralizer(&v0);
            let cvv0 = x.centralizer_of_section(&v, &v0);
            (x.is_product_of(&cv0, &cvv0), cv0, cvv0)
        };
        let is_c2_over_s =
            |h: &PermGroup| h.order() == 2 * sylow3.order() && iso_check(&h.quotient(&sylow3).table().clone().as_group(), &c2);
        let sharp: Vec<&PermGroup> = subs
            .iter()
            .filter(|x| {
                let (prod, cv0, cvv0) = decompose(x);
                prod && cvv0.same_elements(&sylow3) && is_c2_over_s(&cv0)
            })
            .collect();
        let star: Vec<&PermGroup> = subs
            .iter()
            .filter(|y| {
                let (prod, cv0, cvv0) = decompose(y);
                prod && cv0.same_elements(&sylow3) && is_c2_over_s(&cvv0)
            })
            .collect();
        let checks = vec![
            SelfCheck { name: "|AGL(2,3)| = 432".into(), passed: agl23.order() == 432 },
            SelfCheck { name: "|S| = 27".into(), passed: sylow3.order() == 27 },
            SelfCheck { name: "|V| = 9 and V elementary abelian".into(), passed: v.order() == 9 && v.is_elementary_abelian(3) },
            SelfCheck { name: "C_V(S) = Z(S) of order 3".into(), passed: v0.same_elements(&zs) && v0.order() == 3 },
            SelfCheck { name: "|AGL(2,3,S)| = 108".into(), passed: agl23s.order() == 108 },
            SelfCheck { name: "N(S) has three index-2 subgroups over S".into(), passed: subs.len() == 3 },
            SelfCheck { name: "unique # subgroup".into(), passed: sharp.len() == 1 },
            SelfCheck { name: "unique * subgroup".into(), passed: star.len() == 1 },
        ];
        let fam = AffineFamily {
            agl23s_sharp: sharp.first().map(|x| (*x).clone()).unwrap_or_else(|| agl23s.clone()),
            agl23s_star: star.first().map(|x| (*x).clone()).unwrap_or_else(|| agl23s.clone()),
            agl23,
            sylow3,
            v,
            v0,
            agl23s,
        };
        (fam, checks)
    }
}

/// Every reference group used by the structural claims.
#[derive(Clone, Debug)]
pub struct ReferenceGroups {
    pub affine: AffineFamily,
    pub sym3: PermGroup,
    pub sym4: PermGroup,
    pub gl23: PermGroup,
    pub agl13: PermGroup,
    pub c2: PermGroup,
    pub c3: PermGroup,
    pub c9: PermGroup,
    pub e9: PermGroup,
    pub dih18: PermGroup,
    pub dih18_x_c2: PermGroup,
    pub sym3_x_c2: PermGroup,
    pub sp2: SmallGroup<Sp2Ops>,
    pub c3_x_agl23: PermGroup,
    pub c3_x_agl23s: PermGroup,
    pub c3_x_agl23s_sharp: PermGroup,
    pub self_checks: Vec<SelfCheck>,
}

impl ReferenceGroups {
    pub fn build() -> Self {
        let (affine, mut checks) = AffineFamily::build();
        let c2 = cyclic(2);
        let c3 = cyclic(3);
        let sym3 = symmetric(3);
        let dih18 = dihedral(9);
        let sp2 = sp2();
        let r = ReferenceGroups {
            sym4: symmetric(4),
            gl23: gl23(),
            agl13: agl13(),
            c9: cyclic(9),
            e9: elementary_abelian_9(),
            dih18_x_c2: direct_product(&dih18, &c2),
            sym3_x_c2: direct_product(&sym3, &c2),
            c3_x_agl23: direct_product(&c3, &affine.agl23),
            c3_x_agl23s: direct_product(&c3, &affine.agl23s),
            c3_x_agl23s_sharp: direct_product(&c3, &affine.agl23s_sharp),
            affine,
            sym3,
            dih18,
            c2,
            c3,
            sp2,
            self_checks: Vec::new(),
        };
        checks.extend([
            SelfCheck { name: "|GL(2,3)| = 48".into(), passed: r.gl23.order() == 48 },
            SelfCheck { name: "AGL(1,3) = Sym(3)".into(), passed: iso_check(&r.agl13, &r.sym3) },
            SelfCheck { name: "|Dih(18) x C2| = 36".into(), passed: r.dih18_x_c2.order() == 36 },
            SelfCheck {
                name: "SP2 has order 27, exponent 9, center of order 3".into(),
                passed: r.sp2.order() == 27 && r.sp2.exponent() == 9 && r.sp2.center().order() == 3,
            },
            SelfCheck { name: "E9 elementary abelian of order 9".into(), passed: r.e9.order() == 9 && r.e9.is_elementary_abelian(3) },
            SelfCheck { name: "|C9| = 9 and cyclic".into(), passed: r.c9.is_cyclic() && r.c9.order() == 9 },
        ]);
        ReferenceGroups { self_checks: checks, ..r }
    }

    pub fn all_self_checks_pass(&self) -> bool {
        self.self_checks.iter().all(|c| c.passed)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn affine_family_orders() {
        let (fam, checks) = AffineFamily::build();
        for c in &checks {
            assert!(c.passed, "{}", c.name);
        }
        assert_eq!(fam.agl23.order(), 432);
        assert_eq!(fam.agl23s.order(), 108);
        assert_eq!(fam.agl23s_sharp.order(), 54);
        assert_eq!(fam.agl23s_star.order(), 54);
        assert!(!fam.agl23s_sharp.same_elements(&fam.agl23s_star));
        assert!(fam.agl23s_sharp.centralizer(&fam.v0).same_elements(&fam.agl23s_sharp));
    }

    #[test]
    fn reference_self_checks() {
        let r = ReferenceGroups::build();
        assert!(r.all_self_checks_pass(), "{:?}", r.self_checks);
        assert_eq!(r.c3_x_agl23.order(), 1296);
        assert_eq!(r.sp2.exponent(), 9);
        assert!(r.sp2.structure().is_extraspecial);
    }

    #[test]
    fn pgl23_is_sym4_via_gl23_mod_center() {
        let g = gl23();
        let z = g.center();
        assert_eq!(z.order(), 2);
        let q = g.quotient(&z).table().clone().as_group();
        assert!(iso_check(&q, &symmetric(4)));
    }

    #[test]
    fn agl23_is_split_over_translations() {
        let g = agl23();
        let v = g.p_core(3);
        assert!(g.is_normal(&v));
        assert_eq!(g.quotient(&v).order(), 48);
    }
}
