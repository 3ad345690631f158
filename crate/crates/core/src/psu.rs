//! Semilinear unitary 3x3 transformations over GF(64).
//!
//! An element `(M, e)` acts on column vectors by `v -> M * rho^e(v)` where
//! `rho` is the Frobenius map applied entrywise, so
//! `(M, e) * (N, f) = (M * rho^e(N), e + f mod 6)`: the right factor is
//! applied first. Projective elements are stored in canonical form, the
//! least of `{M, aM, a^2 M}` (a = alpha) under the row-major serialization.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gf64::{Constants, FieldElement, FieldError, Gf64};
use crate::grp::GroupOps;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PsuError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error("generator {0} is not unitary")]
    NotUnitary(&'static str),
    #[error("generator {0} has determinant {1:?}, expected 1")]
    BadDeterminant(&'static str, FieldElement),
    #[error("conjugation by sigma does not act as the entrywise Frobenius on {0}")]
    SigmaMismatch(&'static str),
    #[error("relation table fails under both commutator conventions: {0}")]
    RelationsFailed(String),
    #[error("subgroup closure failed: {0}")]
    Closure(String),
}

/// A 3x3 matrix over GF(64), row-major.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Matrix3(pub [FieldElement; 9]);

impl Matrix3 {
    pub fn identity() -> Self {
        Self::diag(FieldElement::ONE, FieldElement::ONE, FieldElement::ONE)
    }

    pub fn diag(a: FieldElement, b: FieldElement, c: FieldElement) -> Self {
        let z = FieldElement::ZERO;
        Matrix3([a, z, z, z, b, z, z, z, c])
    }

    /// Builds a matrix from bit patterns.
    pub fn from_rows(rows: [[u8; 3]; 3]) -> Self {
        let mut m = [FieldElement::ZERO; 9];
        for i in 0..3 {
            for j in 0..3 {
                m[3 * i + j] = FieldElement::from_bits(rows[i][j]);
            }
        }
        Matrix3(m)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> FieldElement {
        self.0[3 * i + j]
    }

    pub fn transpose(&self) -> Self {
        let m = &self.0;
        Matrix3([m[0], m[3], m[6], m[1], m[4], m[7], m[2], m[5], m[8]])
    }
}

impl fmt::Debug for Matrix3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b: Vec<u8> = self.0.iter().map(|x| x.bits()).collect();
        write!(f, "[{:?} {:?} {:?}]", &b[0..3], &b[3..6], &b[6..9])
    }
}

/// A semilinear transformation: matrix plus a power of the Frobenius.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GroupElement {
    pub mat: Matrix3,
    pub twist: u8,
}

impl GroupElement {
    pub fn new(mat: Matrix3, twist: u8) -> Self {
        GroupElement { mat, twist: twist % 6 }
    }

    pub fn linear(mat: Matrix3) -> Self {
        GroupElement { mat, twist: 0 }
    }

    /// Fixed-width serialization: nine 6-bit entries row-major, then the
    /// 3-bit twist. Integer order equals the lexicographic order used for
    /// canonical forms.
    pub fn key(&self) -> u64 {
        let mut k: u64 = 0;
        for x in self.mat.0 {
            k = (k << 6) | x.bits() as u64;
        }
        (k << 3) | self.twist as u64
    }

    pub fn from_key(key: u64) -> Self {
        let twist = (key & 7) as u8;
        let mut k = key >> 3;
        let mut m = [FieldElement::ZERO; 9];
        for slot in m.iter_mut().rev() {
            *slot = FieldElement::from_bits((k & 0x3f) as u8);
            k >>= 6;
        }
        GroupElement::new(Matrix3(m), twist)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, s^{})", self.mat, self.twist)
    }
}

/// The ambient group: PGammaU(3,8) (projective) or GammaU(3,8) (exact) over
/// a fixed field.
#[derive(Clone, Debug)]
pub struct Pgu {
    field: Arc<Gf64>,
    constants: Constants,
}

impl Pgu {
    pub fn new(modulus: u32) -> Result<Self, PsuError> {
        let field = Gf64::new(modulus)?;
        let constants = field.constants()?;
        Ok(Pgu { field: Arc::new(field), constants })
    }

    pub fn field(&self) -> &Gf64 {
        &self.field
    }

    pub fn constants(&self) -> Constants {
        self.constants
    }

    #[inline]
    pub fn mat_mul(&self, a: &Matrix3, b: &Matrix3) -> Matrix3 {
        let f = &*self.field;
        let (a, b) = (&a.0, &b.0);
        let mut out = [FieldElement::ZERO; 9];
        for i in 0..3 {
            for j in 0..3 {
                let v = f.mul_bits(a[3 * i].bits(), b[j].bits())
                    ^ f.mul_bits(a[3 * i + 1].bits(), b[3 + j].bits())
                    ^ f.mul_bits(a[3 * i + 2].bits(), b[6 + j].bits());
                out[3 * i + j] = FieldElement::from_bits(v);
            }
        }
        Matrix3(out)
    }

    /// Entrywise rho^k.
    #[inline]
    pub fn mat_frob(&self, a: &Matrix3, k: u32) -> Matrix3 {
        if k.is_multiple_of(6) {
            return *a;
        }
        let mut out = a.0;
        for x in out.iter_mut() {
            *x = self.field.frobenius(*x, k);
        }
        Matrix3(out)
    }

    pub fn mat_scale(&self, s: FieldElement, a: &Matrix3) -> Matrix3 {
        let mut out = a.0;
        for x in out.iter_mut() {
            *x = self.field.mul(s, *x);
        }
        Matrix3(out)
    }

    /// Conjugate transpose with respect to x -> x^8.
    pub fn star(&self, a: &Matrix3) -> Matrix3 {
        self.mat_frob(&a.transpose(), 3)
    }

    pub fn det(&self, a: &Matrix3) -> FieldElement {
        let f = &*self.field;
        let m = |i, j| a.get(i, j);
        let t = |x: FieldElement, y: FieldElement, z: FieldElement| f.mul(f.mul(x, y), z);
        // characteristic 2: all signs are +
        t(m(0, 0), m(1, 1), m(2, 2))
            + t(m(0, 1), m(1, 2), m(2, 0))
            + t(m(0, 2), m(1, 0), m(2, 1))
            + t(m(0, 2), m(1, 1), m(2, 0))
            + t(m(0, 0), m(1, 2), m(2, 1))
            + t(m(0, 1), m(1, 0), m(2, 2))
    }

    /// M* M = I, i.e. M preserves the standard Hermitian form.
    pub fn is_unitary(&self, a: &Matrix3) -> bool {
        self.mat_mul(&self.star(a), a) == Matrix3::identity()
    }

    /// Gauss-Jordan inverse; `None` if singular.
    pub fn gauss_inverse(&self, a: &Matrix3) -> Option<Matrix3> {
        let f = &*self.field;
        let mut m = [[FieldElement::ZERO; 6]; 3];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().take(3).enumerate() {
                *x = a.get(i, j);
            }
            row[3 + i] = FieldElement::ONE;
        }
        for col in 0..3 {
            let pivot = (col..3).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, pivot);
            let inv = f.inv(m[col][col])?;
            for x in m[col].iter_mut() {
                *x = f.mul(*x, inv);
            }
            for r in 0..3 {
                if r != col && !m[r][col].is_zero() {
                    let c = m[r][col];
                    let row = m[col];
                    for (x, y) in m[r].iter_mut().zip(row) {
                        *x += f.mul(c, y);
                    }
                }
            }
        }
        let mut out = [FieldElement::ZERO; 9];
        for i in 0..3 {
            for j in 0..3 {
                out[3 * i + j] = m[i][3 + j];
            }
        }
        Some(Matrix3(out))
    }

    pub fn identity_elem(&self) -> GroupElement {
        GroupElement::linear(Matrix3::identity())
    }

    /// The field automorphism sigma = (I, 1).
    pub fn sigma(&self) -> GroupElement {
        GroupElement::new(Matrix3::identity(), 1)
    }

    /// Exact (non-projective) product.
    #[inline]
    pub fn compose_exact(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        let twisted = self.mat_frob(&h.mat, g.twist as u32);
        GroupElement::new(self.mat_mul(&g.mat, &twisted), g.twist + h.twist)
    }

    /// Exact inverse of an element with unitary matrix part.
    pub fn invert_exact(&self, g: &GroupElement) -> GroupElement {
        // (M, e)^-1 = (rho^-e(M^-1), -e) and M^-1 = M* for unitary M
        let back = (6 - g.twist as u32) % 6;
        GroupElement::new(self.mat_frob(&self.star(&g.mat), back), back as u8)
    }

    pub fn pow_exact(&self, g: &GroupElement, n: u32) -> GroupElement {
        let mut r = self.identity_elem();
        for _ in 0..n {
            r = self.compose_exact(&r, g);
        }
        r
    }

    /// Left-to-right product of exact elements.
    pub fn product_exact(&self, factors: &[GroupElement]) -> GroupElement {
        factors.iter().fold(self.identity_elem(), |acc, x| self.compose_exact(&acc, x))
    }

    /// Least of the three scalar multiples by powers of alpha.
    #[inline]
    pub fn canonicalize(&self, g: &GroupElement) -> GroupElement {
        let a = self.constants.alpha.bits();
        let a2 = self.field.mul_bits(a, a);
        // scaling by a nonzero scalar preserves the zero pattern, so the
        // first nonzero entry decides the order.
        let lead = g.mat.0.iter().position(|x| !x.is_zero()).expect("singular matrix");
        let v = g.mat.0[lead].bits();
        let c1 = self.field.mul_bits(v, a);
        let c2 = self.field.mul_bits(v, a2);
        let best = if v <= c1 && v <= c2 {
            return *g;
        } else if c1 < c2 {
            FieldElement::from_bits(a)
        } else {
            FieldElement::from_bits(a2)
        };
        GroupElement { mat: self.mat_scale(best, &g.mat), twist: g.twist }
    }

    pub fn compose(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        self.canonicalize(&self.compose_exact(g, h))
    }

    pub fn invert(&self, g: &GroupElement) -> GroupElement {
        self.canonicalize(&self.invert_exact(g))
    }

    /// Whether two exact elements have the same image in PGammaU(3,8).
    pub fn proj_eq(&self, g: &GroupElement, h: &GroupElement) -> bool {
        self.canonicalize(g) == self.canonicalize(h)
    }
}

impl GroupOps for Pgu {
    type Elem = GroupElement;

    fn identity(&self) -> GroupElement {
        self.identity_elem()
    }

    fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.compose(a, b)
    }

    fn inv(&self, a: &GroupElement) -> GroupElement {
        self.invert(a)
    }
}

/// The named generators, exact in GammaU(3,8).
#[derive(Debug, Clone)]
pub struct Generators {
    pub a: GroupElement,
    pub b: GroupElement,
    pub c: GroupElement,
    pub d: GroupElement,
    pub e: GroupElement,
    pub f: GroupElement,
    pub z: GroupElement,
    pub sigma: GroupElement,
}

impl Generators {
    pub fn named(&self) -> Vec<(&'static str, GroupElement)> {
        vec![("A", self.a), ("B", self.b), ("C", self.c), ("D", self.d), ("E", self.e), ("F", self.f), ("Z", self.z), ("sigma", self.sigma)]
    }
}

/// Builds A, B, C, D, E, F, Z and sigma from the field constants and checks
/// that the seven matrices lie in SU(3,8).
pub fn make_generators(pgu: &Pgu) -> Result<Generators, PsuError> {
    let fld = pgu.field();
    let Constants { beta, alpha, .. } = pgu.constants();
    let one = FieldElement::ONE;
    let zero = FieldElement::ZERO;
    let ainv = fld.inv(alpha).expect("alpha is nonzero");
    let binv = fld.inv(beta).expect("beta is nonzero");
    let b4 = fld.pow(beta, 4);
    let lin = GroupElement::linear;
    let gens = Generators {
        a: lin(Matrix3([zero, zero, one, one, zero, zero, zero, one, zero])),
        b: lin(Matrix3::diag(one, alpha, ainv)),
        c: lin(Matrix3::diag(beta, b4, b4)),
        d: lin(Matrix3([one, one, one, one, alpha, ainv, one, ainv, alpha])),
        e: lin(Matrix3::diag(one, beta, binv)),
        f: lin(Matrix3([one, zero, zero, zero, zero, one, zero, one, zero])),
        z: lin(Matrix3::diag(alpha, alpha, alpha)),
        sigma: pgu.sigma(),
    };
    for (name, g) in gens.named() {
        if name == "sigma" {
            continue;
        }
        if !pgu.is_unitary(&g.mat) {
            return Err(PsuError::NotUnitary(name));
        }
        let d = pgu.det(&g.mat);
        if d != one {
            return Err(PsuError::BadDeterminant(name, d));
        }
    }
    Ok(gens)
}

/// Which commutator formula a relation table was evaluated with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CommutatorConvention {
    /// [x, y] = x^-1 y^-1 x y
    InverseFirst,
    /// [x, y] = x y x^-1 y^-1
    InverseLast,
}

impl CommutatorConvention {
    pub fn apply(self, pgu: &Pgu, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let (xi, yi) = (pgu.invert_exact(x), pgu.invert_exact(y));
        match self {
            CommutatorConvention::InverseFirst => pgu.product_exact(&[xi, yi, *x, *y]),
            CommutatorConvention::InverseLast => pgu.product_exact(&[*x, *y, xi, yi]),
        }
    }
}

/// Which formula realizes "x conjugated by g".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConjugationConvention {
    /// x^g = g^-1 x g
    InverseFirst,
    /// x^g = g x g^-1
    InverseLast,
}

impl ConjugationConvention {
    pub fn apply(self, pgu: &Pgu, x: &GroupElement, g: &GroupElement) -> GroupElement {
        let gi = pgu.invert_exact(g);
        match self {
            ConjugationConvention::InverseFirst => pgu.product_exact(&[gi, *x, *g]),
            ConjugationConvention::InverseLast => pgu.product_exact(&[*g, *x, gi]),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationCheck {
    pub group: &'static str,
    pub relation: String,
    /// Verdict under each of the two conventions (commutator or conjugation,
    /// depending on the relation); powers have the same verdict twice.
    pub holds: [bool; 2],
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    pub commutator: Option<CommutatorConvention>,
    pub sigma_conjugation: Option<ConjugationConvention>,
    pub checks: Vec<RelationCheck>,
}

impl RelationReport {
    /// Verdict of one check under the selected conventions.
    pub fn verdict(&self, check: &RelationCheck) -> bool {
        match check.group {
            "power" => check.holds[0],
            "sigma" => self.sigma_conjugation.is_some_and(|c| check.holds[c as usize]),
            _ => self.commutator.is_some_and(|c| check.holds[c as usize]),
        }
    }

    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|r| self.verdict(r))
    }

    /// Checks whose relation text mentions any of `letters` on its left side.
    pub fn subset<'a>(&'a self, lhs_prefixes: &'a [&'a str]) -> impl Iterator<Item = &'a RelationCheck> + 'a {
        self.checks.iter().filter(move |r| lhs_prefixes.iter().any(|p| r.relation.starts_with(p)))
    }
}

/// Evaluates the defining relation tables exactly in SU(3,8) (scalars are
/// not quotiented out) under both commutator conventions, and the twisted
/// relations under both conjugation conventions.
pub fn check_relations(pgu: &Pgu, g: &Generators) -> RelationReport {
    let p = |xs: &[GroupElement]| pgu.product_exact(xs);
    let inv = |x: &GroupElement| pgu.invert_exact(x);
    let id = pgu.identity_elem();
    let (a, b, c, d, e, f, z) = (g.a, g.b, g.c, g.d, g.e, g.f, g.z);
    let commutators: Vec<(&'static str, &str, GroupElement, GroupElement, GroupElement)> = vec![
        ("abc", "[A,B] = Z^2", a, b, p(&[z, z])),
        ("abc", "[A,C] = B Z^2", a, c, p(&[b, z, z])),
        ("abc", "[B,C] = 1", b, c, id),
        ("d", "[D,A] = B A", d, a, p(&[b, a])),
        ("d", "[D,B] = A^2 B", d, b, p(&[a, a, b])),
        ("e", "[E,A] = B C", e, a, p(&[b, c])),
        ("e", "[E,B] = 1", e, b, id),
        ("e", "[E,C] = 1", e, c, id),
        ("f", "[F,A] = A^2", f, a, p(&[a, a])),
        ("f", "[F,B] = B^2", f, b, p(&[b, b])),
        ("f", "[F,C] = 1", f, c, id),
        ("f", "[F,E] = E^2", f, e, p(&[e, e])),
    ];
    let twisted: Vec<(&str, GroupElement, GroupElement)> = vec![
        ("A^sigma = A", a, a),
        ("B^sigma = B^-1", b, inv(&b)),
        ("C^sigma = C^2", c, p(&[c, c])),
        ("D^sigma = D^-1", d, inv(&d)),
        ("E^sigma = E^2", e, p(&[e, e])),
        ("F^sigma = F", f, f),
    ];
    let powers: Vec<(&str, GroupElement, u32, GroupElement)> = vec![("C^3 = Z", c, 3, z), ("D^2 = F", d, 2, f), ("E^3 = B", e, 3, b)];

    let mut checks = Vec::new();
    for (grp, name, x, y, target) in commutators {
        let holds = [CommutatorConvention::InverseFirst, CommutatorConvention::InverseLast].map(|conv| conv.apply(pgu, &x, &y) == target);
        checks.push(RelationCheck { group: grp, relation: name.to_string(), holds });
    }
    for (name, x, target) in twisted {
        let holds =
            [ConjugationConvention::InverseFirst, ConjugationConvention::InverseLast].map(|conv| conv.apply(pgu, &x, &g.sigma) == target);
        checks.push(RelationCheck { group: "sigma", relation: name.to_string(), holds });
    }
    for (name, x, n, target) in powers {
        let h = pgu.pow_exact(&x, n) == target;
        checks.push(RelationCheck { group: "power", relation: name.to_string(), holds: [h, h] });
    }

    let pick = |idx: usize, groups: &dyn Fn(&str) -> bool| checks.iter().filter(|r| groups(r.group)).all(|r| r.holds[idx]);
    let is_comm = |s: &str| s != "sigma" && s != "power";
    let commutator = if pick(0, &is_comm) {
        Some(CommutatorConvention::InverseFirst)
    } else if pick(1, &is_comm) {
        Some(CommutatorConvention::InverseLast)
    } else {
        None
    };
    let is_sigma = |s: &str| s == "sigma";
    let sigma_conjugation = if pick(0, &is_sigma) {
        Some(ConjugationConvention::InverseFirst)
    } else if pick(1, &is_sigma) {
        Some(ConjugationConvention::InverseLast)
    } else {
        None
    };
    RelationReport { commutator, sigma_conjugation, checks }
}

/// Asserts that conjugating by sigma under the composition law acts as the
/// entrywise Frobenius on every generator.
pub fn assert_sigma_is_frobenius(pgu: &Pgu, g: &Generators) -> Result<(), PsuError> {
    let s = g.sigma;
    let si = pgu.invert_exact(&s);
    for (name, x) in g.named() {
        let conj = pgu.product_exact(&[s, x, si]);
        if conj != GroupElement::linear(pgu.mat_frob(&x.mat, 1)) && name != "sigma" {
            return Err(PsuError::SigmaMismatch(name));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf64::DEFAULT_MODULUS;
    use proptest::prelude::*;

    fn setup() -> (Pgu, Generators) {
        let pgu = Pgu::new(DEFAULT_MODULUS).unwrap();
        let g = make_generators(&pgu).unwrap();
        (pgu, g)
    }

    fn gen_list(g: &Generators) -> Vec<GroupElement> {
        vec![g.a, g.b, g.c, g.d, g.e, g.f, g.z, g.sigma]
    }

    #[test]
    fn generators_are_special_unitary() {
        let (pgu, g) = setup();
        for (name, x) in g.named() {
            if name != "sigma" {
                assert!(pgu.is_unitary(&x.mat), "{name}");
                assert_eq!(pgu.det(&x.mat), FieldElement::ONE, "{name}");
            }
        }
    }

    #[test]
    fn d_rows_orthonormal_because_one_plus_alpha_plus_alpha_squared_vanishes() {
        let (pgu, _) = setup();
        let f = pgu.field();
        let a = pgu.constants().alpha;
        assert_eq!(FieldElement::ONE + a + f.mul(a, a), FieldElement::ZERO);
    }

    #[test]
    fn identity_and_powers() {
        let (pgu, g) = setup();
        let id = pgu.identity_elem();
        for x in gen_list(&g) {
            assert_eq!(pgu.compose_exact(&x, &id), x);
            assert_eq!(pgu.compose_exact(&id, &x), x);
        }
        let c3 = pgu.product_exact(&[g.c, g.c, g.c]);
        assert_eq!(c3, g.z);
        assert_eq!(pgu.canonicalize(&c3), id);
        assert_eq!(pgu.pow_exact(&g.sigma, 6), id);
        assert_ne!(pgu.pow_exact(&g.sigma, 3), id);
        assert_eq!(pgu.pow_exact(&g.e, 3), g.b);
    }

    #[test]
    fn inverse_examples() {
        let (pgu, g) = setup();
        let id = pgu.identity_elem();
        assert_eq!(pgu.invert(&id), id);
        assert_eq!(pgu.pow_exact(&g.a, 3), id);
        assert_eq!(pgu.invert_exact(&g.a), pgu.compose_exact(&g.a, &g.a));
        let di = pgu.invert(&g.d);
        assert_eq!(pgu.compose(&di, &di), pgu.invert(&g.f));
    }

    #[test]
    fn star_inverse_agrees_with_gauss_jordan() {
        let (pgu, g) = setup();
        for x in gen_list(&g) {
            assert_eq!(pgu.gauss_inverse(&x.mat), Some(pgu.star(&x.mat)));
        }
        let sing = Matrix3::from_rows([[1, 1, 0], [1, 1, 0], [0, 0, 1]]);
        assert_eq!(pgu.gauss_inverse(&sing), None);
    }

    #[test]
    fn canonical_form_absorbs_scalars() {
        let (pgu, g) = setup();
        let a = pgu.constants().alpha;
        let f = pgu.field();
        for x in gen_list(&g) {
            let zx = pgu.compose_exact(&g.z, &x);
            assert_eq!(pgu.canonicalize(&zx), pgu.canonicalize(&x));
            let a2x = GroupElement::new(pgu.mat_scale(f.mul(a, a), &x.mat), x.twist);
            assert_eq!(pgu.canonicalize(&a2x), pgu.canonicalize(&x));
            let c = pgu.canonicalize(&x);
            assert_eq!(pgu.canonicalize(&c), c);
            // canonical form is the least of the three multiples
            let m1 = GroupElement::new(pgu.mat_scale(a, &x.mat), x.twist);
            assert!(c.key() <= x.key().min(m1.key()).min(a2x.key()));
        }
        assert_eq!(pgu.canonicalize(&pgu.identity_elem()), pgu.identity_elem());
    }

    #[test]
    fn key_round_trip() {
        let (_, g) = setup();
        for x in gen_list(&g) {
            assert_eq!(GroupElement::from_key(x.key()), x);
        }
    }

    #[test]
    fn relation_table_selects_inverse_first_commutator() {
        let (pgu, g) = setup();
        let rep = check_relations(&pgu, &g);
        assert_eq!(rep.commutator, Some(CommutatorConvention::InverseFirst));
        assert_eq!(rep.sigma_conjugation, Some(ConjugationConvention::InverseLast));
        assert!(rep.all_hold(), "{:#?}", rep.checks);
        assert_sigma_is_frobenius(&pgu, &g).unwrap();
    }

    #[test]
    fn named_relation_examples() {
        let (pgu, g) = setup();
        let conv = CommutatorConvention::InverseFirst;
        assert_eq!(conv.apply(&pgu, &g.b, &g.c), pgu.identity_elem());
        assert_eq!(conv.apply(&pgu, &g.f, &g.e), pgu.compose_exact(&g.e, &g.e));
        let bs = ConjugationConvention::InverseLast.apply(&pgu, &g.b, &g.sigma);
        assert_eq!(bs, pgu.invert_exact(&g.b));
    }

    #[test]
    fn relations_hold_for_every_primitive_modulus() {
        for m in crate::gf64::primitive_moduli() {
            let pgu = Pgu::new(m).unwrap();
            let g = make_generators(&pgu).unwrap();
            assert!(check_relations(&pgu, &g).all_hold(), "modulus {m:#b}");
        }
    }

    fn word() -> impl Strategy<Value = Vec<usize>> {
        prop::collection::vec(0usize..8, 0..=20)
    }

    proptest! {
        #[test]
        fn products_stay_semilinear_unitary(w in word(), h in word()) {
            let (pgu, g) = setup();
            let gens = gen_list(&g);
            let x = pgu.product_exact(&w.iter().map(|&i| gens[i]).collect::<Vec<_>>());
            prop_assert!(pgu.is_unitary(&x.mat));
            prop_assert!(pgu.is_unitary(&pgu.invert_exact(&x).mat));
            let sig = w.iter().filter(|&&i| i == 7).count() % 6;
            prop_assert_eq!(x.twist as usize, sig);
            // inverse
            prop_assert_eq!(pgu.compose(&x, &pgu.invert(&x)), pgu.identity_elem());
            // projective equality is a congruence
            let y = pgu.product_exact(&h.iter().map(|&i| gens[i]).collect::<Vec<_>>());
            let zx = pgu.compose_exact(&g.z, &x);
            prop_assert_eq!(pgu.compose(&x, &y), pgu.compose(&zx, &y));
            let c = pgu.canonicalize(&x);
            prop_assert_eq!(pgu.canonicalize(&c), c);
        }
    }
}
