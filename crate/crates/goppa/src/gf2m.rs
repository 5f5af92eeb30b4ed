//! Arithmetic in the binary extension field F_{2^m} (2 <= m <= 16).
//!
//! Elements are stored in the polynomial basis {1, α, ..., α^{m-1}}: bit i of
//! the integer encoding is the coordinate on α^i, where α is the class of x
//! modulo the reduction polynomial. Every supported reduction polynomial has x
//! primitive, so the whole multiplicative group is indexed by powers of α and
//! multiplication runs on exp/log tables.

use std::fmt;
use thiserror::Error;

/// Built-in primitive polynomials for m = 2..=16, bit i = coefficient of x^i.
/// Each has x primitive; construction re-verifies this by filling the tables.
const DEFAULT_POLYS: [u32; 15] = [
    0x7,     // m=2:  x^2 + x + 1
    0xb,     // m=3:  x^3 + x + 1
    0x13,    // m=4:  x^4 + x + 1
    0x25,    // m=5:  x^5 + x^2 + 1
    0x43,    // m=6:  x^6 + x + 1
    0x89,    // m=7:  x^7 + x^3 + 1
    0x11d,   // m=8:  x^8 + x^4 + x^3 + x^2 + 1
    0x211,   // m=9:  x^9 + x^4 + 1
    0x409,   // m=10: x^10 + x^3 + 1
    0x805,   // m=11: x^11 + x^2 + 1
    0x1053,  // m=12: x^12 + x^6 + x^4 + x + 1
    0x201b,  // m=13: x^13 + x^4 + x^3 + x + 1
    0x4443,  // m=14: x^14 + x^10 + x^6 + x + 1
    0x8003,  // m=15: x^15 + x + 1
    0x1100b, // m=16: x^16 + x^12 + x^3 + x + 1
];

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("extension degree m={0} outside supported range 2..=16")]
    DegreeOutOfRange(usize),
    #[error("reduction polynomial {0:#x} does not have degree {1}")]
    WrongDegree(u32, usize),
    #[error("reduction polynomial {0:#x} is reducible")]
    Reducible(u32),
    #[error("x is not primitive modulo {0:#x} (multiplicative order {1})")]
    NotPrimitive(u32, usize),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
}

/// An element of F_{2^m}, encoded as an integer in [0, 2^m).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct FieldElement(pub u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn value(self) -> u16 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Lowercase hex encoding, no prefix, no padding.
    pub fn to_hex(self) -> String {
        format!("{:x}", self.0)
    }

    pub fn from_hex(s: &str) -> Option<FieldElement> {
        u16::from_str_radix(s, 16).ok().map(FieldElement)
    }
}

// Addition is coefficient-wise over F_2, i.e. XOR; it needs no field context.
impl std::ops::Add for FieldElement {
    type Output = FieldElement;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: FieldElement) -> FieldElement {
        FieldElement(self.0 ^ rhs.0)
    }
}

impl std::ops::AddAssign for FieldElement {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: FieldElement) {
        self.0 ^= rhs.0;
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.0)
    }
}

/// F_{2^m} with exp/log tables and the trace-dual of the polynomial basis.
///
/// Immutable after construction; all operations are pure.
#[derive(Debug, Clone)]
pub struct Field {
    m: usize,
    reduction_poly: u32,
    exp: Vec<u16>,
    log: Vec<u16>,
    dual: Vec<FieldElement>,
}

impl Field {
    /// Builds the field, verifying that the polynomial is irreducible of
    /// degree m and that x is primitive (the exp table must run through all
    /// 2^m - 1 nonzero elements before returning to 1).
    pub fn new(m: usize, reduction_poly: Option<u32>) -> Result<Field, FieldError> {
        if !(2..=16).contains(&m) {
            return Err(FieldError::DegreeOutOfRange(m));
        }
        let poly = reduction_poly.unwrap_or(DEFAULT_POLYS[m - 2]);
        if poly >> m != 1 {
            return Err(FieldError::WrongDegree(poly, m));
        }
        if !binary_poly_irreducible(poly, m) {
            return Err(FieldError::Reducible(poly));
        }

        let order = (1usize << m) - 1;
        let mut exp = vec![0u16; order];
        let mut log = vec![0u16; 1 << m];
        let mut x: u32 = 1;
        for i in 0..order {
            if x == 1 && i > 0 {
                return Err(FieldError::NotPrimitive(poly, i));
            }
            exp[i] = x as u16;
            log[x as usize] = i as u16;
            x <<= 1;
            if x >> m == 1 {
                x ^= poly;
            }
        }
        debug_assert_eq!(
            x, 1,
            "alpha^(2^m-1) must be 1 for an irreducible polynomial"
        );

        let mut field = Field {
            m,
            reduction_poly: poly,
            exp,
            log,
            dual: Vec::new(),
        };
        field.dual = field.compute_dual_basis();
        Ok(field)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn reduction_poly(&self) -> u32 {
        self.reduction_poly
    }

    /// Number of field elements, 2^m.
    pub fn size(&self) -> usize {
        1 << self.m
    }

    /// Order of the multiplicative group, 2^m - 1.
    pub fn order(&self) -> usize {
        (1 << self.m) - 1
    }

    /// The primitive element α (the class of x).
    pub fn alpha(&self) -> FieldElement {
        FieldElement(2)
    }

    /// α^i for any signed exponent.
    pub fn alpha_pow(&self, i: i64) -> FieldElement {
        let n = self.order() as i64;
        FieldElement(self.exp[(i.rem_euclid(n)) as usize])
    }

    /// Wraps a raw value; panics if it is out of range for this field.
    pub fn element(&self, value: u32) -> FieldElement {
        assert!(
            (value as usize) < self.size(),
            "value {value} out of range for GF(2^{})",
            self.m
        );
        FieldElement(value as u16)
    }

    /// Discrete log of a nonzero element.
    pub fn log(&self, a: FieldElement) -> Option<usize> {
        if a.is_zero() {
            None
        } else {
            Some(self.log[a.0 as usize] as usize)
        }
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        a + b
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let la = self.log[a.0 as usize] as usize;
        let lb = self.log[b.0 as usize] as usize;
        FieldElement(self.exp[(la + lb) % self.order()])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            return Err(FieldError::ZeroInverse);
        }
        let la = self.log[a.0 as usize] as usize;
        Ok(FieldElement(self.exp[(self.order() - la) % self.order()]))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if a.is_zero() {
            return if e == 0 {
                FieldElement::ONE
            } else {
                FieldElement::ZERO
            };
        }
        let n = self.order() as u64;
        let la = self.log[a.0 as usize] as u64;
        FieldElement(self.exp[((la * (e % n)) % n) as usize])
    }

    /// The unique square root; squaring is a bijection in characteristic 2.
    pub fn sqrt(&self, a: FieldElement) -> FieldElement {
        self.pow(a, 1u64 << (self.m - 1))
    }

    /// Coordinates of `a` on the basis {1, α, ..., α^{m-1}}: plain bit extraction.
    pub fn coords(&self, a: FieldElement) -> Vec<u8> {
        (0..self.m).map(|i| ((a.0 >> i) & 1) as u8).collect()
    }

    /// Inverse of `coords`: a = Σ bits[i] · α^i.
    pub fn recombine(&self, bits: &[u8]) -> FieldElement {
        assert_eq!(bits.len(), self.m, "expected {} coordinate bits", self.m);
        let mut v = 0u16;
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v |= 1 << i;
            }
        }
        FieldElement(v)
    }

    /// Absolute trace F_{2^m} -> F_2.
    pub fn trace(&self, a: FieldElement) -> u8 {
        let mut acc = FieldElement::ZERO;
        let mut cur = a;
        for _ in 0..self.m {
            acc += cur;
            cur = self.mul(cur, cur);
        }
        debug_assert!(acc.0 <= 1, "trace must land in F_2");
        acc.0 as u8
    }

    /// Trace-dual basis {θ_1, ..., θ_m} of {1, α, ..., α^{m-1}}:
    /// Tr(θ_λ · α^{µ-1}) = δ_{λµ}, so bit λ-1 of z equals Tr(θ_λ · z).
    pub fn dual_basis(&self) -> &[FieldElement] {
        &self.dual
    }

    fn compute_dual_basis(&self) -> Vec<FieldElement> {
        let m = self.m;
        // Gram matrix of the trace form on the polynomial basis, over F_2,
        // inverted by elimination on rows augmented with the identity.
        let mut rows: Vec<u32> = (0..m)
            .map(|lam| {
                let mut g = 0u32;
                for mu in 0..m {
                    let t = self.trace(self.alpha_pow((lam + mu) as i64));
                    g |= (t as u32) << mu;
                }
                g | (1u32 << (m + lam))
            })
            .collect();
        for col in 0..m {
            let piv = (col..m)
                .find(|&r| rows[r] >> col & 1 == 1)
                .expect("trace form is non-degenerate");
            rows.swap(col, piv);
            for r in 0..m {
                if r != col && rows[r] >> col & 1 == 1 {
                    rows[r] ^= rows[col];
                }
            }
        }
        let dual: Vec<FieldElement> = (0..m)
            .map(|lam| {
                let mut theta = FieldElement::ZERO;
                for mu in 0..m {
                    if rows[mu] >> (m + lam) & 1 == 1 {
                        theta += self.alpha_pow(mu as i64);
                    }
                }
                theta
            })
            .collect();
        if cfg!(debug_assertions) {
            for (lam, &theta) in dual.iter().enumerate() {
                for mu in 0..m {
                    let t = self.trace(self.mul(theta, self.alpha_pow(mu as i64)));
                    debug_assert_eq!(t, (lam == mu) as u8);
                }
            }
        }
        dual
    }
}

/// Irreducibility of a binary polynomial of the given degree, by trial
/// division over F_2 against every polynomial of degree 1..=deg/2.
fn binary_poly_irreducible(poly: u32, deg: usize) -> bool {
    fn bdeg(p: u32) -> i32 {
        31 - p.leading_zeros() as i32
    }
    for d in 2u32..(2u32 << (deg / 2)) {
        if bdeg(d) < 1 {
            continue;
        }
        let mut rem = poly;
        while bdeg(rem) >= bdeg(d) {
            rem ^= d << (bdeg(rem) - bdeg(d));
        }
        if rem == 0 {
            return false;
        }
    }
    true
}
