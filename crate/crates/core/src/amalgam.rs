//! Amalgam invariants T1, T2, X and the shape predicates built on them.

use serde::Serialize;
use serde_json::json;

use crate::check::{all_pass, Check};
use crate::grp::reference::{symmetric, ReferenceGroups};
use crate::grp::{iso_check, GroupOps, Perm, PermOps, SmallGroup};
use crate::subgroups::{ProjGroup, Subgroups, Which};

/// H1 <- H12 -> H2, with H12 = H1 n H2.
#[derive(Clone, Debug)]
pub struct Amalgam<G: GroupOps> {
    pub g1: SmallGroup<G>,
    pub g2: SmallGroup<G>,
    pub g12: SmallGroup<G>,
    pub t1: SmallGroup<G>,
    pub t2: SmallGroup<G>,
    pub x: SmallGroup<G>,
}

/// Largest subgroup of `h12` normal in `hi`: intersect with conjugates
/// under the generators of `hi` until stable.
pub fn core_in<G: GroupOps>(h12: &SmallGroup<G>, hi: &SmallGroup<G>) -> SmallGroup<G> {
    let mut cur = h12.clone();
    loop {
        let next = hi.gens().iter().fold(cur.clone(), |acc, g| acc.intersect(&SmallGroup::conjugate(&cur, g)));
        if next.order() == cur.order() {
            return cur;
        }
        cur = next;
    }
}

/// Whether `x` satisfies x = H12 n <x^{H_i}> for the given side.
fn closed_in<G: GroupOps>(x: &SmallGroup<G>, h12: &SmallGroup<G>, hi: &SmallGroup<G>) -> bool {
    h12.intersect(&hi.normal_closure(x)).same_elements(x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Alternation {
    OneFirst,
    TwoFirst,
}

/// Least X >= T1 T2 with X = H12 n <X^{H_i}> for i = 1, 2, by monotone
/// iteration from <T1, T2>.
pub fn compute_x<G: GroupOps>(
    g1: &SmallGroup<G>,
    g2: &SmallGroup<G>,
    g12: &SmallGroup<G>,
    t1: &SmallGroup<G>,
    t2: &SmallGroup<G>,
    order: Alternation,
) -> SmallGroup<G> {
    let sides = match order {
        Alternation::OneFirst => [g1, g2],
        Alternation::TwoFirst => [g2, g1],
    };
    let mut x = g12.subgroup(&[t1.gens(), t2.gens()].concat());
    loop {
        let before = x.order();
        for hi in sides {
            x = g12.intersect(&hi.normal_closure(&x));
        }
        if x.order() == before {
            return x;
        }
    }
}

impl<G: GroupOps> Amalgam<G> {
    pub fn new(g1: SmallGroup<G>, g2: SmallGroup<G>) -> Self {
        let g12 = g1.intersect(&g2);
        let t1 = core_in(&g12, &g1);
        let t2 = core_in(&g12, &g2);
        let x = compute_x(&g1, &g2, &g12, &t1, &t2, Alternation::OneFirst);
        Amalgam { g1, g2, g12, t1, t2, x }
    }

    pub fn o3_x(&self) -> SmallGroup<G> {
        self.x.p_core(3)
    }

    pub fn z_o3_x(&self) -> SmallGroup<G> {
        self.o3_x().center()
    }

    /// Invariant checks on T1, T2 and X.
    pub fn invariant_checks(&self) -> Vec<Check> {
        let t1t2 = self.g12.subgroup(&[self.t1.gens(), self.t2.gens()].concat());
        let other = compute_x(&self.g1, &self.g2, &self.g12, &self.t1, &self.t2, Alternation::TwoFirst);
        vec![
            Check::new(
                "T1 normal in G1 and inside G12",
                self.g1.is_normal(&self.t1) && self.t1.is_subgroup_of(&self.g12),
                json!({ "order": self.t1.order() }),
            ),
            Check::new(
                "T2 normal in G2 and inside G12",
                self.g2.is_normal(&self.t2) && self.t2.is_subgroup_of(&self.g12),
                json!({ "order": self.t2.order() }),
            ),
            Check::new(
                "T1 and T2 agree with the normal core",
                self.t1.same_elements(&self.g1.core(&self.g12)) && self.t2.same_elements(&self.g2.core(&self.g12)),
                json!(null),
            ),
            Check::new(
                "T1 T2 <= X <= G12",
                t1t2.is_subgroup_of(&self.x) && self.x.is_subgroup_of(&self.g12),
                json!({ "order": self.x.order() }),
            ),
            Check::new(
                "X satisfies both closure conditions",
                closed_in(&self.x, &self.g12, &self.g1) && closed_in(&self.x, &self.g12, &self.g2),
                json!(null),
            ),
            Check::new("X does not depend on the alternation order", other.same_elements(&self.x), json!(null)),
            Check::new("no generator of X can be dropped", self.minimality_probe(&t1t2), json!({ "generators": self.x.gens().len() })),
        ]
    }

    /// Dropping any one generator of X gives a group that is X again,
    /// misses T1 T2, or fails a closure condition.
    fn minimality_probe(&self, t1t2: &SmallGroup<G>) -> bool {
        let gens = self.x.gens();
        (0..gens.len()).all(|i| {
            let rest: Vec<G::Elem> = gens.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, g)| g.clone()).collect();
            let y = if rest.is_empty() { SmallGroup::trivial(self.x.ops()) } else { self.x.subgroup(&rest) };
            y.same_elements(&self.x)
                || !t1t2.is_subgroup_of(&y)
                || !closed_in(&y, &self.g12, &self.g1)
                || !closed_in(&y, &self.g12, &self.g2)
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ShapeReport {
    pub shape: &'static str,
    pub holds: bool,
    pub items: Vec<Check>,
}

impl ShapeReport {
    fn new(shape: &'static str, items: Vec<Check>) -> Self {
        ShapeReport { shape, holds: all_pass(&items), items }
    }
}

/// (i) G12 = X; (ii) T2 = C_X(Z(O_3(X))) and G2/Z(O_3(X)) = AGL(2,3,S).
pub fn shape_agl23s<G: GroupOps>(a: &Amalgam<G>, refs: &ReferenceGroups) -> ShapeReport {
    let z = a.z_o3_x();
    let cz = a.x.centralizer(&z);
    let quotient_ok = !z.is_trivial() && a.g2.is_normal(&z) && {
        let q = a.g2.quotient(&z).table().clone().as_group();
        iso_check(&q, &refs.affine.agl23s)
    };
    ShapeReport::new(
        "AGL(2,3,S)",
        vec![
            Check::new("G12 = X", a.g12.same_elements(&a.x), json!({ "g12": a.g12.order(), "x": a.x.order() })),
            Check::new(
                "T2 = C_X(Z(O_3(X)))",
                !z.is_trivial() && a.t2.same_elements(&cz),
                json!({ "z_order": z.order(), "centralizer_order": cz.order(), "t2": a.t2.order() }),
            ),
            Check::new("G2 / Z(O_3(X)) = AGL(2,3,S)", quotient_ok, json!({ "g2": a.g2.order(), "z_order": z.order() })),
        ],
    )
}

/// G2 = O_3(X) . (C2 x AGL(1,3)): O_3(X) normal with that quotient.
fn extension_item<G: GroupOps>(a: &Amalgam<G>, refs: &ReferenceGroups) -> Check {
    let o = a.o3_x();
    let ok = a.g2.is_normal(&o) && iso_check(&a.g2.quotient(&o).table().clone().as_group(), &refs.sym3_x_c2);
    Check::new("G2 = O_3(X) . (C2 x AGL(1,3))", ok, json!({ "o3_x": o.order(), "g2": a.g2.order() }))
}

fn sylow2_centralizer<G: GroupOps>(a: &Amalgam<G>) -> (SmallGroup<G>, SmallGroup<G>) {
    let t = a.t2.sylow(2);
    let o = a.g2.p_core(3);
    (o.centralizer(&t), t)
}

fn iso_item<G1: GroupOps, G2: GroupOps>(name: &str, x: &SmallGroup<G1>, r: &SmallGroup<G2>) -> Check {
    Check::new(name, iso_check(x, r), json!({ "order": x.order(), "reference_order": r.order() }))
}

pub fn shape_d2<G: GroupOps>(a: &Amalgam<G>, refs: &ReferenceGroups) -> ShapeReport {
    let base = shape_agl23s(a, refs);
    let (c, t) = sylow2_centralizer(a);
    let mut items = vec![Check::new("shape AGL(2,3,S)", base.holds, json!(base.items))];
    items.push(iso_item("G1 = AGL(2,3)", &a.g1, &refs.affine.agl23));
    items.push(iso_item("G12 = AGL(2,3,S)", &a.g12, &refs.affine.agl23s));
    items.push(extension_item(a, refs));
    items.push(iso_item("T2 = AGL(2,3,S)^#", &a.t2, &refs.affine.agl23s_sharp));
    items.push(Check::new(
        "C_{O_3(G2)}(T) = C9 for T Sylow-2 in T2",
        iso_check(&c, &refs.c9),
        json!({ "t_order": t.order(), "order": c.order() }),
    ));
    ShapeReport::new("D2", items)
}

pub fn shape_e2<G: GroupOps>(a: &Amalgam<G>, refs: &ReferenceGroups) -> ShapeReport {
    let base = shape_agl23s(a, refs);
    let (c, t) = sylow2_centralizer(a);
    let (model, image_ok) = holomorph_model(a);
    let mut items = vec![Check::new("shape AGL(2,3,S)", base.holds, json!(base.items))];
    items.push(iso_item("G1 = C3 x AGL(2,3)", &a.g1, &refs.c3_x_agl23));
    items.push(iso_item("G12 = C3 x AGL(2,3,S)", &a.g12, &refs.c3_x_agl23s));
    items.push(extension_item(a, refs));
    items.push(iso_item("T2 = C3 x AGL(2,3,S)^#", &a.t2, &refs.c3_x_agl23s_sharp));
    items.push(Check::new(
        "Z(O_3(X)) : G2/C_G2(Z(O_3(X))) = AGL(2,3,S)^*",
        image_ok && iso_check(&model, &refs.affine.agl23s_star),
        json!({ "order": model.order(), "image_matches_quotient": image_ok }),
    ));
    items.push(Check::new(
        "C_{O_3(G2)}(T) = SP2 for T Sylow-2 in T2",
        iso_check(&c, &refs.sp2),
        json!({ "t_order": t.order(), "order": c.order() }),
    ));
    ShapeReport::new("E2", items)
}

/// Z(O_3(X)) : G2/C_G2(Z) as the affine permutations w -> z phi(w) of the
/// set Z, where phi runs over conjugation by G2. Returns it together
/// with whether |automorphism image| = |G2 / C_G2(Z)|.
pub fn holomorph_model<G: GroupOps>(a: &Amalgam<G>) -> (SmallGroup<PermOps>, bool) {
    let z = a.z_o3_x();
    let n = z.order();
    let ops = z.ops().clone();
    let idx = |x: &G::Elem| z.index_of(x).expect("conjugation preserves Z") as u16;
    let translations = z.gens().iter().map(|t| Perm::from_images(z.elements().iter().map(|w| idx(&ops.mul(t, w))).collect()));
    let autos: Vec<Perm> =
        a.g2.gens()
            .iter()
            .map(|g| {
                let gi = ops.inv(g);
                Perm::from_images(z.elements().iter().map(|w| idx(&ops.mul(&ops.mul(g, w), &gi))).collect())
            })
            .collect();
    let pops = PermOps::new(n);
    let image = SmallGroup::closure(&pops, &autos, usize::MAX).expect("no cap");
    let gens: Vec<Perm> = translations.chain(autos.iter().cloned()).collect();
    let model = SmallGroup::closure(&pops, &gens, usize::MAX).expect("no cap");
    let cz = a.g2.centralizer(&z);
    let image_ok = image.order() * cz.order() == a.g2.order() && model.order() == n * image.order();
    (model, image_ok)
}

/// The amalgam (Sym(3), Sym(3); C2) with the two copies meeting in a
/// transposition: Sym(3) on {0,1,2} and on {0,1,3} inside Sym(4).
pub fn weak_test_amalgam() -> Amalgam<PermOps> {
    let s4 = symmetric(4);
    let ops = s4.ops().clone();
    let t = |a: u16, b: u16| Perm::from_cycles(4, &[&[a, b][..]]);
    let g1 = SmallGroup::closure(&ops, &[t(0, 1), t(1, 2)], 24).unwrap();
    let g2 = SmallGroup::closure(&ops, &[t(0, 1), t(1, 3)], 24).unwrap();
    Amalgam::new(g1, g2)
}

/// The statements read off the explicit generators: T1, T2, X, O_3(X),
/// its centre, O_3(G2) and the centralizer of F sigma^3 there.
pub fn generator_identities(sg: &Subgroups, which: Which) -> Vec<Check> {
    let (g1, g2, _) = sg.amalgam_of(which);
    let a = Amalgam::new(g1.clone(), g2.clone());
    let e = &sg.el;
    let gens = |v: &[_]| sg.closure(v).expect("named subgroup");
    let extra: Vec<_> = match which {
        Which::H => vec![],
        Which::K => vec![e.sigma2],
    };
    let with = |v: &[crate::psu::GroupElement]| gens(&[&extra[..], v].concat());
    let g = which.name();
    let hat = if which == Which::K { "^" } else { "" };
    let set = |name: String, got: &ProjGroup, want: &ProjGroup| {
        Check::new(name, got.same_elements(want), json!({ "order": got.order(), "expected_order": want.order() }))
    };
    let fs3 = sg.closure(&[e.f_sigma3]).unwrap();
    let o3_g2 = a.g2.p_core(3);
    let mut out = vec![
        set(format!("{g}: T1 = <{}A,B,F>", if extra.is_empty() { "" } else { "sigma^2," }), &a.t1, &with(&[e.a, e.b, e.f])),
        set(
            format!("{g}: T2 = <{}A,B,C,F sigma^3>", if extra.is_empty() { "" } else { "sigma^2," }),
            &a.t2,
            &with(&[e.a, e.b, e.c, e.f_sigma3]),
        ),
        set(format!("{g}: <T1,T2> = X = {g}_12"), &a.x, &a.g12),
        set(format!("{g}: O_3(X) = Q{hat}2"), &a.o3_x(), if which == Which::K { &sg.qhat2 } else { &sg.q2 }),
        set(format!("{g}: Z(O_3(X)) = <{}B>", if extra.is_empty() { "" } else { "sigma^2," }), &a.z_o3_x(), &with(&[e.b])),
        set(format!("{g}: O_3({g}2) = <{}A,B,C,E>", if extra.is_empty() { "" } else { "sigma^2," }), &o3_g2, &with(&[e.a, e.b, e.c, e.e])),
        set(
            format!("{g}: C_{{O_3({g}2)}}(F sigma^3) = <{}E>", if extra.is_empty() { "" } else { "sigma^2," }),
            &o3_g2.centralizer(&fs3),
            &with(&[e.e]),
        ),
        Check::new(
            format!("{g}: <F sigma^3> is a Sylow 2-subgroup of T2"),
            a.t2.sylow(2).order() == 2 && fs3.order() == 2 && fs3.is_subgroup_of(&a.t2),
            json!(null),
        ),
    ];
    if which == Which::K {
        out.push(set("K: Z(T2) = <sigma^2,B>".into(), &a.t2.center(), &with(&[e.b])));
        let ef = gens(&[e.e, e.f]);
        let b = gens(&[e.b]);
        let ok =
            ef.is_normal(&b) && iso_check(&a.g2.quotient(&a.t2).table().clone().as_group(), &ef.quotient(&b).table().clone().as_group());
        out.push(Check::new("K: K2 / C_X(Z(O_3(X))) = <E,F>/<B>", ok, json!({ "ef_order": ef.order() })));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grp::reference::{agl23, cyclic};

    #[test]
    fn core_of_whole_group_is_itself() {
        let g = agl23();
        assert!(core_in(&g, &g).same_elements(&g));
    }

    #[test]
    fn weak_amalgam_is_not_agl23s() {
        let refs = ReferenceGroups::build();
        let a = weak_test_amalgam();
        assert_eq!(a.g12.order(), 2);
        assert!(a.t1.is_trivial() && a.t2.is_trivial());
        assert!(all_pass(&a.invariant_checks()));
        assert!(!shape_agl23s(&a, &refs).holds);
    }

    #[test]
    fn normal_edge_group_gives_x_equal_to_edge_group() {
        // C9 <- C3 -> C9 via its unique subgroups: G12 = C3 is normal in both.
        let g = cyclic(9);
        let a = Amalgam::new(g.clone(), g.clone());
        assert!(a.x.same_elements(&g));
        let c3 = g.power_subgroup(3);
        let b = Amalgam { g12: c3.clone(), t1: core_in(&c3, &g), t2: core_in(&c3, &g), x: c3.clone(), ..a };
        let x = compute_x(&b.g1, &b.g2, &b.g12, &b.t1, &b.t2, Alternation::TwoFirst);
        assert!(x.same_elements(&c3));
    }
}
