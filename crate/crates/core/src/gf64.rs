//! Arithmetic in GF(2^6).
//!
//! Elements are 6-bit coefficient vectors of polynomials over GF(2) reduced
//! modulo a primitive degree-6 polynomial. The class of `x` is the primitive
//! element `zeta`; multiplication goes through a 64x64 table built from the
//! log/antilog tables.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// x^6 + x^4 + x^3 + x + 1, the Conway polynomial of GF(2^6).
pub const DEFAULT_MODULUS: u32 = 0b101_1011;

/// Order of the multiplicative group.
pub const MULT_ORDER: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus {0:#b} is not a degree-6 polynomial")]
    BadDegree(u32),
    #[error("modulus {0:#b} is reducible over GF(2)")]
    Reducible(u32),
    #[error("modulus {0:#b} is irreducible but x is not a primitive element")]
    NotPrimitive(u32),
}

/// An element of GF(64), stored as its 6-bit coefficient vector.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct FieldElement(u8);

impl FieldElement {
    pub const ZERO: Self = FieldElement(0);
    pub const ONE: Self = FieldElement(1);

    /// Builds an element from the low six bits of `bits`.
    pub fn from_bits(bits: u8) -> Self {
        FieldElement(bits & 0x3f)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:06b}", self.0)
    }
}

// Addition in characteristic 2 is XOR.
#[allow(clippy::suspicious_arithmetic_impl)]
impl std::ops::Add for FieldElement {
    type Output = FieldElement;

    fn add(self, rhs: Self) -> Self {
        FieldElement(self.0 ^ rhs.0)
    }
}

#[allow(clippy::suspicious_op_assign_impl)]
impl std::ops::AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: Self) {
        self.0 ^= rhs.0;
    }
}

/// Carry-less multiplication of two 6-bit polynomials followed by reduction.
/// Independent of the tables; used to build and to cross-check them.
pub fn schoolbook_mul(a: u8, b: u8, modulus: u32) -> u8 {
    let mut prod: u32 = 0;
    for i in 0..6 {
        if (b >> i) & 1 == 1 {
            prod ^= (a as u32) << i;
        }
    }
    for bit in (6..11).rev() {
        if (prod >> bit) & 1 == 1 {
            prod ^= modulus << (bit - 6);
        }
    }
    prod as u8
}

fn poly_degree(p: u32) -> i32 {
    31 - p.leading_zeros() as i32
}

fn poly_mod(mut a: u32, m: u32) -> u32 {
    let dm = poly_degree(m);
    while a != 0 && poly_degree(a) >= dm {
        a ^= m << (poly_degree(a) - dm);
    }
    a
}

/// Trial division by every polynomial of degree 1..=3.
fn is_irreducible(modulus: u32) -> bool {
    (2u32..16).all(|d| poly_mod(modulus, d) != 0)
}

/// The field GF(64) for a fixed modulus, with precomputed tables.
#[derive(Clone)]
pub struct Gf64 {
    modulus: u32,
    exp: [u8; 2 * MULT_ORDER],
    log: [u8; 64],
    mul: Box<[[u8; 64]; 64]>,
    frob: [[u8; 64]; 6],
}

impl fmt::Debug for Gf64 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Gf64").field("modulus", &format_args!("{:#09b}", self.modulus)).finish()
    }
}

impl Gf64 {
    /// Builds the field tables. Fails unless `modulus` is a primitive
    /// polynomial of degree 6.
    pub fn new(modulus: u32) -> Result<Self, FieldError> {
        if poly_degree(modulus) != 6 {
            return Err(FieldError::BadDegree(modulus));
        }
        if !is_irreducible(modulus) {
            return Err(FieldError::Reducible(modulus));
        }
        let mut exp = [0u8; 2 * MULT_ORDER];
        let mut log = [0u8; 64];
        let mut x: u32 = 1;
        for (i, slot) in exp.iter_mut().enumerate().take(MULT_ORDER) {
            *slot = x as u8;
            if i > 0 && x == 1 {
                return Err(FieldError::NotPrimitive(modulus));
            }
            log[x as usize] = i as u8;
            x <<= 1;
            if x & 0x40 != 0 {
                x ^= modulus;
            }
        }
        if x != 1 {
            return Err(FieldError::NotPrimitive(modulus));
        }
        for i in MULT_ORDER..2 * MULT_ORDER {
            exp[i] = exp[i - MULT_ORDER];
        }
        let mut mul = Box::new([[0u8; 64]; 64]);
        for a in 1..64usize {
            for b in 1..64usize {
                mul[a][b] = exp[log[a] as usize + log[b] as usize];
            }
        }
        let mut frob = [[0u8; 64]; 6];
        for a in 0..64u8 {
            let mut y = a;
            for row in frob.iter_mut() {
                row[a as usize] = y;
                y = mul[y as usize][y as usize];
            }
        }
        Ok(Gf64 { modulus, exp, log, mul, frob })
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// The primitive element, the class of `x`.
    pub fn zeta(&self) -> FieldElement {
        FieldElement(2)
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul[a.0 as usize][b.0 as usize])
    }

    /// Raw table lookup on bit patterns, for the matrix kernels.
    #[inline(always)]
    pub(crate) fn mul_bits(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize][b as usize]
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        let l = self.log[a.0 as usize] as usize;
        Some(FieldElement(self.exp[(MULT_ORDER - l) % MULT_ORDER]))
    }

    pub fn pow(&self, a: FieldElement, n: u64) -> FieldElement {
        if a.is_zero() {
            return if n == 0 { FieldElement::ONE } else { FieldElement::ZERO };
        }
        let l = self.log[a.0 as usize] as u64;
        FieldElement(self.exp[((l * (n % MULT_ORDER as u64)) % MULT_ORDER as u64) as usize])
    }

    /// zeta^k.
    pub fn antilog(&self, k: u64) -> FieldElement {
        FieldElement(self.exp[(k % MULT_ORDER as u64) as usize])
    }

    /// Discrete log base zeta; `None` for zero.
    pub fn log(&self, a: FieldElement) -> Option<u8> {
        (!a.is_zero()).then(|| self.log[a.0 as usize])
    }

    /// a^(2^k).
    #[inline]
    pub fn frobenius(&self, a: FieldElement, k: u32) -> FieldElement {
        FieldElement(self.frob[(k % 6) as usize][a.0 as usize])
    }

    /// The involutory automorphism x -> x^8.
    pub fn conj(&self, a: FieldElement) -> FieldElement {
        self.frobenius(a, 3)
    }

    /// Multiplicative order; `None` for zero.
    pub fn order(&self, a: FieldElement) -> Option<u32> {
        let l = self.log(a)? as u32;
        Some(MULT_ORDER as u32 / gcd(MULT_ORDER as u32, l))
    }

    /// zeta, beta = zeta^7 and alpha = beta^3, after checking their orders.
    pub fn constants(&self) -> Result<Constants, FieldError> {
        let zeta = self.zeta();
        let beta = self.pow(zeta, 7);
        let alpha = self.pow(beta, 3);
        if self.order(zeta) != Some(63) || self.order(beta) != Some(9) || self.order(alpha) != Some(3) {
            return Err(FieldError::NotPrimitive(self.modulus));
        }
        Ok(Constants { zeta, beta, alpha })
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0u8..64).map(FieldElement)
    }

    /// The 63 antilog entries zeta^0, ..., zeta^62.
    pub fn antilog_table(&self) -> &[u8] {
        &self.exp[..MULT_ORDER]
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Constants {
    pub zeta: FieldElement,
    pub beta: FieldElement,
    pub alpha: FieldElement,
}

/// All primitive polynomials of degree 6, as bitmasks.
pub fn primitive_moduli() -> Vec<u32> {
    (64u32..128).filter(|&m| Gf64::new(m).is_ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field() -> Gf64 {
        Gf64::new(DEFAULT_MODULUS).unwrap()
    }

    #[test]
    fn table_mul_matches_schoolbook_exhaustively() {
        for m in primitive_moduli() {
            let f = Gf64::new(m).unwrap();
            for a in 0..64u8 {
                for b in 0..64u8 {
                    let t = f.mul(FieldElement(a), FieldElement(b)).bits();
                    assert_eq!(t, schoolbook_mul(a, b, m), "modulus {m:#b}: {a} * {b}");
                }
            }
        }
    }

    #[test]
    fn addition_examples() {
        let f = field();
        let zeta = f.zeta();
        let zeta2 = f.mul(zeta, zeta);
        for a in f.elements() {
            assert_eq!(a + FieldElement::ZERO, a);
            assert_eq!(a + a, FieldElement::ZERO);
        }
        // x + x^2 as coefficient vectors
        assert_eq!((zeta + zeta2).bits(), 0b110);
    }

    #[test]
    fn multiplication_examples() {
        let f = field();
        let z = f.zeta();
        assert_eq!(f.mul(f.pow(z, 7), f.pow(z, 56)), FieldElement::ONE);
        for x in f.elements() {
            assert_eq!(f.mul(FieldElement::ZERO, x), FieldElement::ZERO);
        }
        let c = f.constants().unwrap();
        assert_eq!(f.pow(c.beta, 9), FieldElement::ONE);
        assert_ne!(f.pow(c.beta, 3), FieldElement::ONE);
        assert_eq!(f.pow(c.alpha, 3), FieldElement::ONE);
    }

    #[test]
    fn constants_have_stated_orders() {
        for m in primitive_moduli() {
            let f = Gf64::new(m).unwrap();
            let c = f.constants().unwrap();
            assert_eq!(f.order(c.zeta), Some(63));
            assert_eq!(f.order(c.beta), Some(9));
            assert_eq!(f.order(c.alpha), Some(3));
            assert_eq!(f.mul(f.conj(c.beta), c.beta), FieldElement::ONE);
            assert_eq!(f.mul(f.conj(c.alpha), c.alpha), FieldElement::ONE);
        }
    }

    #[test]
    fn frobenius_laws() {
        let f = field();
        for a in f.elements() {
            assert_eq!(f.frobenius(a, 0), a);
            assert_eq!(f.frobenius(a, 6), a);
            assert_eq!(f.frobenius(a, 1), f.mul(a, a));
            assert_eq!(f.frobenius(a, 3), f.conj(a));
            assert_eq!(f.conj(f.conj(a)), a);
            for b in f.elements() {
                assert_eq!(f.frobenius(f.mul(a, b), 1), f.mul(f.frobenius(a, 1), f.frobenius(b, 1)));
                assert_eq!(f.frobenius(a + b, 1), f.frobenius(a, 1) + f.frobenius(b, 1));
            }
        }
    }

    #[test]
    fn inverses_and_group_order() {
        let f = field();
        for a in f.elements().filter(|a| !a.is_zero()) {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
            assert_eq!(f.pow(a, 63), FieldElement::ONE);
        }
        assert_eq!(f.inv(FieldElement::ZERO), None);
    }

    #[test]
    fn rejects_bad_moduli() {
        assert_eq!(Gf64::new(0b1011).unwrap_err(), FieldError::BadDegree(0b1011));
        // (x^3 + x + 1)^2 = x^6 + x^2 + 1
        assert_eq!(Gf64::new(0b100_0101).unwrap_err(), FieldError::Reducible(0b100_0101));
        // x^6 + x^4 + x^2 + x + 1 is irreducible with x of order 21
        assert_eq!(Gf64::new(0b101_0111).unwrap_err(), FieldError::NotPrimitive(0b101_0111));
    }

    #[test]
    fn there_are_six_primitive_sextics() {
        let ms = primitive_moduli();
        assert_eq!(ms.len(), 6);
        assert!(ms.contains(&DEFAULT_MODULUS));
        assert!(ms.contains(&0b100_0011));
    }

    #[test]
    fn antilog_table_has_63_distinct_entries() {
        let f = field();
        let mut t = f.antilog_table().to_vec();
        assert_eq!(t.len(), 63);
        t.sort();
        t.dedup();
        assert_eq!(t.len(), 63);
    }

    proptest::proptest! {
        #[test]
        fn field_axioms(mi in 0usize..6, a in 0u8..64, b in 0u8..64, c in 0u8..64) {
            let f = Gf64::new(primitive_moduli()[mi]).unwrap();
            let (a, b, c) = (FieldElement::from_bits(a), FieldElement::from_bits(b), FieldElement::from_bits(c));
            proptest::prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
            proptest::prop_assert_eq!(f.mul(a, b + c), f.mul(a, b) + f.mul(a, c));
            proptest::prop_assert_eq!(f.conj(f.mul(a, b)), f.mul(f.conj(a), f.conj(b)));
            proptest::prop_assert_eq!(f.conj(a + b), f.conj(a) + f.conj(b));
            if let Some(i) = f.inv(a) {
                proptest::prop_assert_eq!(f.mul(a, i), f.antilog(0));
            }
        }
    }
}
