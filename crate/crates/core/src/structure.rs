//! Structure of the named subgroups: the statements that need only the
//! groups themselves, not the graph.

use serde_json::json;

use crate::check::Check;
use crate::grp::reference::ReferenceGroups;
use crate::grp::{iso_check, Perm, PermOps, SmallGroup};
use crate::psu::GroupElement;
use crate::subgroups::{ProjGroup, Subgroups};

/// |PSU(3,q)| = q^3 (q^3 + 1)(q^2 - 1) / gcd(3, q + 1).
pub fn psu3_order(q: u64) -> u64 {
    let g = if (q + 1).is_multiple_of(3) { 3 } else { 1 };
    q.pow(3) * (q.pow(3) + 1) * (q * q - 1) / g
}

fn set_check(name: impl Into<String>, got: &ProjGroup, want: &ProjGroup) -> Check {
    Check::new(name, got.same_elements(want), json!({ "order": got.order(), "expected_order": want.order() }))
}

fn quotient_iso<G2: crate::grp::GroupOps>(g: &ProjGroup, n: &ProjGroup, r: &SmallGroup<G2>) -> bool {
    g.is_normal(n) && iso_check(&g.quotient(n).table().clone().as_group(), r)
}

pub struct Named<'a> {
    sg: &'a Subgroups,
}

impl<'a> Named<'a> {
    pub fn new(sg: &'a Subgroups) -> Self {
        Named { sg }
    }

    pub fn gen(&self, gens: &[GroupElement]) -> ProjGroup {
        self.sg.closure(gens).expect("named subgroup")
    }

    /// The order-9 elementary abelian subgroups of Q2 other than Q*.
    pub fn lambda(&self) -> Vec<ProjGroup> {
        let q2 = &self.sg.q2;
        let mut out: Vec<ProjGroup> = Vec::new();
        for x in q2.elements() {
            for y in q2.elements() {
                let h = q2.subgroup(&[*x, *y]);
                if h.order() == 9
                    && h.is_elementary_abelian(3)
                    && !h.same_elements(&self.sg.qstar)
                    && !out.iter().any(|o| o.same_elements(&h))
                {
                    out.push(h);
                }
            }
        }
        out
    }
}

/// The "in particular" commutator statements following the relation tables.
pub fn commutator_consequences(sg: &Subgroups) -> Vec<Check> {
    let n = Named::new(sg);
    let e = &sg.el;
    let cd = n.gen(&[e.c, e.d]);
    let ge = n.gen(&[e.e]);
    let s2b = n.gen(&[e.sigma2, e.b]);
    let b = n.gen(&[e.b]);
    let comm = |x: &ProjGroup, y: &ProjGroup| {
        let j = x.join(y, 20_000).expect("small join");
        j.commutator_subgroup(x, y)
    };
    vec![
        set_check("[<C,D>, Q1] = Q1", &comm(&cd, &sg.q1), &sg.q1),
        set_check("[<E>, Q2] = Q*", &comm(&ge, &sg.q2), &sg.qstar),
        set_check("[<E>, <sigma^2,B>] = <B>", &comm(&ge, &s2b), &b),
    ]
}

/// Q1, Q*, Q2, their hatted versions, H1 and K1.
pub fn q_and_first_vertex_groups(sg: &Subgroups, refs: &ReferenceGroups) -> Vec<Check> {
    let n = Named::new(sg);
    let e = &sg.el;
    let b = n.gen(&[e.b]);
    let s2 = n.gen(&[e.sigma2]);
    let q1q = sg.q2.commutator_subgroup(&sg.q1, &sg.qstar);
    let q2s = sg.q2.structure();
    let abcd = n.gen(&[e.a, e.b, e.c, e.d]);
    let direct = |x: &ProjGroup, y: &ProjGroup, z: &ProjGroup| {
        z.is_product_of(x, y) && x.intersect(&s2).is_trivial() && z.centralizer(&s2).same_elements(z) && z.is_normal(x)
    };
    vec![
        Check::new(
            "Q1 and Q* are abelian of order 9",
            sg.q1.is_abelian() && sg.qstar.is_abelian() && sg.q1.order() == 9 && sg.qstar.order() == 9,
            json!({ "q1": sg.q1.order(), "qstar": sg.qstar.order() }),
        ),
        set_check("[Q1, Q*] = <B>", &q1q, &b),
        Check::new("Q2 = Q1 Q*", sg.q2.is_product_of(&sg.q1, &sg.qstar), json!(null)),
        Check::new("Q2 is special of order 27 and exponent 3", q2s.order == 27 && q2s.is_special && q2s.exponent == 3, json!(q2s)),
        set_check("Z(Q2) = <B>", &sg.q2.center(), &b),
        Check::new("H1 = AGL(2,3)", iso_check(&sg.h1, &refs.affine.agl23), json!({ "order": sg.h1.order() })),
        Check::new(
            "sigma^2 centralizes <A,B,C,D> of order 216",
            abcd.order() == 216 && abcd.centralizer_of(&[e.sigma2]).order() == 216,
            json!({ "order": abcd.order() }),
        ),
        set_check("O_3(H1) = Q1", &sg.h1.p_core(3), &sg.q1),
        Check::new("Q^1 = Q1 x <sigma^2>", direct(&sg.q1, &s2, &sg.qhat1), json!({ "order": sg.qhat1.order() })),
        Check::new("Q^2 = Q2 x <sigma^2>", direct(&sg.q2, &s2, &sg.qhat2), json!({ "order": sg.qhat2.order() })),
        Check::new("K1 = C3 x AGL(2,3)", iso_check(&sg.k1, &refs.c3_x_agl23), json!({ "order": sg.k1.order() })),
        set_check("O_3(K1) = Q^1", &sg.k1.p_core(3), &sg.qhat1),
        Check::new(
            "Z(Q2) <= Q1 and Z(Q^2) <= Q^1",
            sg.q2.center().is_subgroup_of(&sg.q1) && sg.qhat2.center().is_subgroup_of(&sg.qhat1),
            json!(null),
        ),
    ]
}

/// S, its action on Lambda, and the second vertex groups.
pub fn second_vertex_groups(sg: &Subgroups, refs: &ReferenceGroups) -> Vec<Check> {
    let n = Named::new(sg);
    let e = &sg.el;
    let ef = n.gen(&[e.e, e.f]);
    let fs3 = n.gen(&[e.f_sigma3]);
    let zq2 = sg.q2.center();
    let lambda = n.lambda();
    let s_dih = sg.s.is_product_of(&ef, &fs3) && ef.intersect(&fs3).is_trivial() && sg.s.is_normal(&ef) && sg.s.is_normal(&fs3);
    let normalizes = |x: &ProjGroup| sg.s.gens().iter().all(|g| sg.s.normalizes(g, x));
    let idx = |h: &ProjGroup| lambda.iter().position(|l| l.same_elements(h));
    let on_lambda = |g: &GroupElement| -> Option<Perm> {
        let imgs: Option<Vec<u16>> = lambda.iter().map(|l| idx(&ProjGroup::conjugate(l, g)).map(|i| i as u16)).collect();
        imgs.map(Perm::from_images)
    };
    let s_perms: Option<Vec<Perm>> = sg.s.gens().iter().map(on_lambda).collect();
    let s_lambda = s_perms.as_ref().map(|p| SmallGroup::closure(&PermOps::new(lambda.len()), p, usize::MAX).expect("no cap"));
    let fs3_trivial = on_lambda(&e.f_sigma3).is_some_and(|p| p.is_identity());
    vec![
        Check::new("|Lambda| = 3 and Q1 in Lambda", lambda.len() == 3 && idx(&sg.q1).is_some(), json!({ "size": lambda.len() })),
        Check::new("S = <E,F> x <F sigma^3>", s_dih, json!({ "ef": ef.order(), "fs3": fs3.order() })),
        Check::new("S = Dih(18) x C2", iso_check(&sg.s, &refs.dih18_x_c2) && iso_check(&ef, &refs.dih18), json!({ "order": sg.s.order() })),
        Check::new("S normalizes Q2 and Q^2", normalizes(&sg.q2) && normalizes(&sg.qhat2), json!(null)),
        set_check("S n Q2 = Z(Q2)", &sg.s.intersect(&sg.q2), &zq2),
        Check::new("S / Z(Q2) = Sym(3) x C2", quotient_iso(&sg.s, &zq2, &refs.sym3_x_c2), json!(null)),
        Check::new("S normalizes Q*", normalizes(&sg.qstar), json!(null)),
        Check::new("<F sigma^3> acts trivially on Lambda", fs3_trivial, json!(null)),
        Check::new(
            "S induces Sym(3) on Lambda",
            s_lambda.as_ref().is_some_and(|g| iso_check(g, &refs.sym3)),
            json!({ "order": s_lambda.as_ref().map(|g| g.order()) }),
        ),
        Check::new("H2 = Q2 . (AGL(1,3) x C2)", quotient_iso(&sg.h2, &sg.q2, &refs.sym3_x_c2), json!({ "order": sg.h2.order() })),
        Check::new("H2 / Z(Q2) = AGL(2,3,S)", quotient_iso(&sg.h2, &zq2, &refs.affine.agl23s), json!(null)),
        Check::new("K2 = Q^2 . (AGL(1,3) x C2)", quotient_iso(&sg.k2, &sg.qhat2, &refs.sym3_x_c2), json!({ "order": sg.k2.order() })),
        Check::new("K2 / Z(Q^2) = AGL(2,3,S)", quotient_iso(&sg.k2, &sg.qhat2.center(), &refs.affine.agl23s), json!(null)),
    ]
}

/// The edge groups and their generators.
pub fn edge_groups(sg: &Subgroups, refs: &ReferenceGroups) -> Vec<Check> {
    let n = Named::new(sg);
    let e = &sg.el;
    let j = n.gen(&[e.a, e.b, e.c, e.f, e.sigma3]);
    let jk = n.gen(&[e.a, e.b, e.c, e.f, e.sigma3, e.sigma2]);
    vec![
        set_check("H1 n H2 = <A,B,C,F,sigma^3>", &sg.h12, &j),
        Check::new("H1 n H2 = AGL(2,3,S)", iso_check(&sg.h12, &refs.affine.agl23s), json!({ "order": sg.h12.order() })),
        set_check("K1 n K2 = <A,B,C,F,sigma^3,sigma^2>", &sg.k12, &jk),
        Check::new("K1 n K2 = C3 x AGL(2,3,S)", iso_check(&sg.k12, &refs.c3_x_agl23s), json!({ "order": sg.k12.order() })),
    ]
}

/// The subgroup orders used as the entry point of everything else.
pub fn orders(sg: &Subgroups) -> Vec<Check> {
    [
        ("|Q1| = 9", sg.q1.order(), 9),
        ("|Q2| = 27", sg.q2.order(), 27),
        ("|S| = 36", sg.s.order(), 36),
        ("|H1| = 432", sg.h1.order(), 432),
        ("|H2| = 324", sg.h2.order(), 324),
        ("|H1 n H2| = 108", sg.h12.order(), 108),
        ("|K1| = 1296", sg.k1.order(), 1296),
        ("|K2| = 972", sg.k2.order(), 972),
        ("|K1 n K2| = 324", sg.k12.order(), 324),
    ]
    .into_iter()
    .map(|(n, got, want)| Check::eq(n, got, want))
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psu38_order() {
        assert_eq!(psu3_order(8), 5_515_776);
        assert_eq!(psu3_order(3), 6048);
        assert_eq!(psu3_order(2), 72);
    }
}
