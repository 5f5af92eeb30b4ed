//! Univariate polynomials over F_{2^m}: ring operations, the closed-form
//! inverse of (x - α) modulo g, irreducibility testing, and modular square
//! roots.
//!
//! Coefficients are stored dense, lowest degree first, trailing zeros trimmed;
//! the zero polynomial has an empty coefficient vector.

use crate::gf2m::{Field, FieldElement};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("g(alpha) = 0: alpha is a root of the modulus")]
    RootOfModulus,
    #[error("no square root exists modulo g")]
    NoSquareRoot,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    coeffs: Vec<FieldElement>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly {
            coeffs: vec![FieldElement::ONE],
        }
    }

    pub fn x() -> Poly {
        Poly {
            coeffs: vec![FieldElement::ZERO, FieldElement::ONE],
        }
    }

    /// x + c (equals x - c in characteristic 2).
    pub fn linear(c: FieldElement) -> Poly {
        Poly::from_coeffs(vec![c, FieldElement::ONE])
    }

    pub fn from_coeffs(coeffs: Vec<FieldElement>) -> Poly {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&FieldElement::ZERO) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of x^i (zero beyond the stored degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn mul(&self, other: &Poly, field: &Field) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![FieldElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += field.mul(a, b);
            }
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn mul_scalar(&self, c: FieldElement, field: &Field) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    pub fn div_rem(&self, divisor: &Poly, field: &Field) -> Result<(Poly, Poly), PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let dd = divisor.degree().unwrap();
        let lead_inv = field
            .inv(divisor.leading())
            .expect("trimmed leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![FieldElement::ZERO; self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let shift = rem.len() - 1 - dd;
            let factor = field.mul(*rem.last().unwrap(), lead_inv);
            if !factor.is_zero() {
                quot[shift] = factor;
                for (j, &c) in divisor.coeffs.iter().enumerate() {
                    rem[shift + j] += field.mul(factor, c);
                }
            }
            rem.pop();
            while rem.last() == Some(&FieldElement::ZERO) {
                rem.pop();
            }
        }
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    pub fn rem(&self, modulus: &Poly, field: &Field) -> Result<Poly, PolyError> {
        Ok(self.div_rem(modulus, field)?.1)
    }

    /// Monic greatest common divisor; gcd(a, 0) = monic(a).
    pub fn gcd(&self, other: &Poly, field: &Field) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, field).expect("b nonzero");
            a = b;
            b = r;
        }
        a.monic(field)
    }

    pub fn monic(&self, field: &Field) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = field
            .inv(self.leading())
            .expect("trimmed leading coefficient");
        self.mul_scalar(inv, field)
    }

    pub fn eval(&self, x: FieldElement, field: &Field) -> FieldElement {
        let mut acc = FieldElement::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = field.mul(acc, x) + c;
        }
        acc
    }

    /// Formal derivative: in characteristic 2 only odd-degree terms survive.
    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| if i % 2 == 1 { c } else { FieldElement::ZERO })
            .collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn square(&self, field: &Field) -> Poly {
        self.mul(self, field)
    }

    fn mul_mod(&self, other: &Poly, modulus: &Poly, field: &Field) -> Poly {
        self.mul(other, field)
            .rem(modulus, field)
            .expect("nonzero modulus")
    }

    /// Space-separated lowercase hex coefficients, lowest degree first.
    pub fn to_hex(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|c| c.to_hex())
            .collect::<Vec<_>>()
            .join(" ")
    }

    pub fn from_hex(s: &str) -> Option<Poly> {
        let coeffs = s
            .split_whitespace()
            .map(FieldElement::from_hex)
            .collect::<Option<Vec<_>>>()?;
        Some(Poly::from_coeffs(coeffs))
    }
}

/// Closed-form inverse of (x - alpha) modulo g:
/// (1/(x-α) mod g) has coefficient of x^i equal to g(α)^{-1} Σ_{k>i} g_k α^{k-1-i}.
/// Requires g(alpha) != 0.
pub fn inv_linear_mod_g(field: &Field, alpha: FieldElement, g: &Poly) -> Result<Poly, PolyError> {
    let g_alpha = g.eval(alpha, field);
    if g_alpha.is_zero() {
        return Err(PolyError::RootOfModulus);
    }
    let r = g.degree().expect("g nonzero");
    assert!(r >= 1, "modulus must have degree >= 1");
    let scale = field.inv(g_alpha).expect("checked nonzero");
    // Horner-style accumulation of the inner sums: h_i = g_{i+1} + α h_{i+1}.
    let mut coeffs = vec![FieldElement::ZERO; r];
    let mut h = FieldElement::ZERO;
    for i in (0..r).rev() {
        h = g.coeff(i + 1) + field.mul(alpha, h);
        coeffs[i] = field.mul(scale, h);
    }
    Ok(Poly::from_coeffs(coeffs))
}

/// Modular inverse of an arbitrary polynomial via the extended Euclidean
/// algorithm. Requires gcd(a, g) = 1.
pub fn inv_mod(field: &Field, a: &Poly, g: &Poly) -> Result<Poly, PolyError> {
    if g.is_zero() {
        return Err(PolyError::DivisionByZero);
    }
    let mut r_prev = g.clone();
    let mut r_cur = a.rem(g, field)?;
    let mut v_prev = Poly::zero();
    let mut v_cur = Poly::one();
    while !r_cur.is_zero() {
        let (q, r) = r_prev.div_rem(&r_cur, field)?;
        let v_next = v_prev.add(&q.mul(&v_cur, field));
        r_prev = r_cur;
        r_cur = r;
        v_prev = v_cur;
        v_cur = v_next;
    }
    if r_prev.degree() != Some(0) {
        return Err(PolyError::DivisionByZero);
    }
    let scale = field.inv(r_prev.coeff(0)).expect("nonzero gcd");
    v_prev.mul_scalar(scale, field).rem(g, field)
}

/// Irreducibility over F_{2^m}: g of degree r is irreducible iff
/// x^(q^r) = x mod g and gcd(x^(q^(r/p)) - x, g) = 1 for every prime p | r,
/// with q = 2^m. The q-th power map is m repeated squarings mod g.
pub fn is_irreducible(field: &Field, g: &Poly) -> bool {
    let r = match g.degree() {
        None | Some(0) => return false,
        Some(r) => r,
    };
    if r == 1 {
        return true;
    }
    let g = g.monic(field);
    let mut frob = Poly::x().rem(&g, field).expect("deg g >= 1");
    let x = Poly::x();
    let proper: Vec<usize> = prime_divisors(r).into_iter().map(|p| r / p).collect();
    for i in 1..=r {
        for _ in 0..field.m() {
            frob = frob.mul_mod(&frob, &g, field);
        }
        if i < r && proper.contains(&i) {
            let h = frob.add(&x);
            if g.gcd(&h, field).degree() != Some(0) {
                return false;
            }
        }
    }
    frob == x.rem(&g, field).unwrap()
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Uniformly random monic irreducible of exact degree r, deterministic per
/// seed. Expected O(r) attempts.
pub fn random_irreducible(field: &Field, r: usize, seed: u64) -> Poly {
    assert!(r >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut coeffs: Vec<FieldElement> = (0..r)
            .map(|_| field.element(rng.gen_range(0..field.size() as u32)))
            .collect();
        coeffs.push(FieldElement::ONE);
        let g = Poly::from_coeffs(coeffs);
        if is_irreducible(field, &g) {
            return g;
        }
    }
}

/// Square root modulo a square-free g: returns s with s^2 = p (mod g).
///
/// For irreducible g the residue ring is the field F_{2^(m·r)}, where
/// s = p^(2^(m·r - 1)). For square-free composite g, p splits into even/odd
/// parts p = E(x)^2 + x·O(x)^2 and s = E + sqrt(x)·O, with sqrt(x) found by
/// walking the Frobenius orbit of x (squaring is a bijection on the ring).
pub fn sqrt_mod(field: &Field, p: &Poly, g: &Poly) -> Result<Poly, PolyError> {
    let r = match g.degree() {
        None | Some(0) => return Err(PolyError::DivisionByZero),
        Some(r) => r,
    };
    let p = p.rem(g, field)?;
    let s = if is_irreducible(field, g) {
        let mut s = p.clone();
        for _ in 0..field.m() * r - 1 {
            s = s.mul_mod(&s, g, field);
        }
        s
    } else {
        let sqrt_x = sqrt_x_mod(field, g)?;
        sqrt_with_precomputed(field, &p, g, &sqrt_x)
    };
    if s.mul_mod(&s, g, field) == p {
        Ok(s)
    } else {
        Err(PolyError::NoSquareRoot)
    }
}

/// sqrt(x) mod g for square-free g: the predecessor of x on its Frobenius orbit.
pub fn sqrt_x_mod(field: &Field, g: &Poly) -> Result<Poly, PolyError> {
    let x = Poly::x().rem(g, field)?;
    let mut prev = x.clone();
    let mut cur = x.mul_mod(&x, g, field);
    while cur != x {
        prev = cur.clone();
        cur = cur.mul_mod(&cur, g, field);
    }
    Ok(prev)
}

/// Even/odd split square root using a precomputed sqrt(x) mod g.
pub fn sqrt_with_precomputed(field: &Field, p: &Poly, g: &Poly, sqrt_x: &Poly) -> Poly {
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for (i, &c) in p.coeffs().iter().enumerate() {
        let root = field.sqrt(c);
        if i % 2 == 0 {
            even.resize(i / 2, FieldElement::ZERO);
            even.push(root);
        } else {
            odd.resize(i / 2, FieldElement::ZERO);
            odd.push(root);
        }
    }
    let e = Poly::from_coeffs(even);
    let o = Poly::from_coeffs(odd);
    e.add(&sqrt_x.mul(&o, field))
        .rem(g, field)
        .expect("deg g >= 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_poly(field: &Field, max_deg: usize, rng: &mut ChaCha8Rng) -> Poly {
        let deg = rng.gen_range(0..=max_deg);
        Poly::from_coeffs(
            (0..=deg)
                .map(|_| field.element(rng.gen_range(0..field.size() as u32)))
                .collect(),
        )
    }

    #[test]
    fn gcd_with_zero_is_monic() {
        let f = Field::new(3, None).unwrap();
        let g = Poly::from_coeffs(vec![f.element(3), f.element(5)]);
        let expected = g.monic(&f);
        assert_eq!(g.gcd(&Poly::zero(), &f), expected);
        assert_eq!(Poly::zero().gcd(&g, &f), expected);
    }

    #[test]
    fn char2_square_of_x_plus_one() {
        let f = Field::new(4, None).unwrap();
        let p = Poly::linear(FieldElement::ONE);
        let sq = p.square(&f);
        // (x+1)^2 = x^2 + 1: cross terms cancel
        assert_eq!(
            sq.coeffs(),
            &[FieldElement::ONE, FieldElement::ZERO, FieldElement::ONE]
        );
    }

    #[test]
    fn eval_cancellation() {
        let f = Field::new(3, None).unwrap();
        let a = f.alpha();
        // x^2 + a x + 1 at x = a: a^2 + a^2 + 1 = 1
        let p = Poly::from_coeffs(vec![FieldElement::ONE, a, FieldElement::ONE]);
        assert_eq!(p.eval(a, &f), FieldElement::ONE);
    }

    #[test]
    fn derivative_examples() {
        let f = Field::new(3, None).unwrap();
        let x2 = Poly::from_coeffs(vec![
            FieldElement::ZERO,
            FieldElement::ZERO,
            FieldElement::ONE,
        ]);
        assert!(x2.derivative().is_zero());
        let p = Poly::from_coeffs(vec![FieldElement::ONE; 4]); // x^3+x^2+x+1
        let d = p.derivative();
        assert_eq!(
            d.coeffs(),
            &[FieldElement::ONE, FieldElement::ZERO, FieldElement::ONE]
        ); // x^2+1
        let _ = f;
    }

    #[test]
    fn derivative_is_a_perfect_square() {
        let f = Field::new(4, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..50 {
            let p = random_poly(&f, 9, &mut rng);
            let d = p.derivative();
            // Extract the square root coefficient-wise from even powers.
            let root = Poly::from_coeffs(
                (0..=d.degree().unwrap_or(0) / 2)
                    .map(|i| f.sqrt(d.coeff(2 * i)))
                    .collect(),
            );
            assert_eq!(root.square(&f), d, "derivative of {p:?}");
        }
    }

    #[test]
    fn div_rem_reconstructs() {
        let f = Field::new(4, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let a = random_poly(&f, 8, &mut rng);
            let mut b = random_poly(&f, 4, &mut rng);
            if b.is_zero() {
                b = Poly::one();
            }
            let (q, r) = a.div_rem(&b, &f).unwrap();
            assert_eq!(q.mul(&b, &f).add(&r), a);
            assert!(r.degree().map_or(true, |d| d < b.degree().unwrap()));
        }
        assert_eq!(
            Poly::one().div_rem(&Poly::zero(), &f),
            Err(PolyError::DivisionByZero)
        );
    }

    #[test]
    fn mul_degree_adds_and_distributes() {
        let f = Field::new(5, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let a = random_poly(&f, 6, &mut rng);
            let b = random_poly(&f, 6, &mut rng);
            let c = random_poly(&f, 6, &mut rng);
            let mut g = random_poly(&f, 3, &mut rng);
            if g.is_zero() {
                g = Poly::x();
            }
            if !a.is_zero() && !b.is_zero() {
                assert_eq!(
                    a.mul(&b, &f).degree(),
                    Some(a.degree().unwrap() + b.degree().unwrap())
                );
            }
            // (a+b)c mod g = (ac mod g) + (bc mod g)
            let lhs = a.add(&b).mul(&c, &f).rem(&g, &f).unwrap();
            let rhs = a
                .mul(&c, &f)
                .rem(&g, &f)
                .unwrap()
                .add(&b.mul(&c, &f).rem(&g, &f).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn leibniz_rule() {
        let f = Field::new(4, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let a = random_poly(&f, 5, &mut rng);
            let b = random_poly(&f, 5, &mut rng);
            let lhs = a.mul(&b, &f).derivative();
            let rhs = a.derivative().mul(&b, &f).add(&a.mul(&b.derivative(), &f));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn inv_linear_degree_one_modulus() {
        let f = Field::new(4, None).unwrap();
        let c = f.element(5);
        let alpha = f.element(9);
        let g = Poly::linear(c);
        let u = inv_linear_mod_g(&f, alpha, &g).unwrap();
        assert_eq!(u, Poly::from_coeffs(vec![f.inv(alpha + c).unwrap()]));
    }

    #[test]
    fn inv_linear_defining_identity() {
        let f = Field::new(4, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut checked = 0;
        while checked < 100 {
            let mut g = random_poly(&f, 5, &mut rng);
            if g.degree().unwrap_or(0) < 1 {
                continue;
            }
            g = g.monic(&f);
            let alpha = f.element(rng.gen_range(0..16));
            if g.eval(alpha, &f).is_zero() {
                assert_eq!(
                    inv_linear_mod_g(&f, alpha, &g),
                    Err(PolyError::RootOfModulus)
                );
                continue;
            }
            let u = inv_linear_mod_g(&f, alpha, &g).unwrap();
            assert!(u.degree().map_or(true, |d| d < g.degree().unwrap()));
            let prod = u.mul(&Poly::linear(alpha), &f).rem(&g, &f).unwrap();
            assert_eq!(
                prod,
                Poly::one(),
                "defining identity for alpha={alpha:?} g={g:?}"
            );
            // Independent route: generic extended-Euclid inversion.
            let via_eea = inv_mod(&f, &Poly::linear(alpha), &g).unwrap();
            assert_eq!(u, via_eea);
            checked += 1;
        }
    }

    #[test]
    fn irreducibility_basics() {
        let f = Field::new(2, None).unwrap();
        let x2 = Poly::x().square(&f);
        assert!(!is_irreducible(&f, &x2));
        assert!(is_irreducible(&f, &Poly::x()));
        // Over GF(4), a quadratic is irreducible iff it has no roots.
        for c0 in 0..4u32 {
            for c1 in 0..4u32 {
                let g = Poly::from_coeffs(vec![f.element(c0), f.element(c1), FieldElement::ONE]);
                let has_root = (0..4u32).any(|v| g.eval(f.element(v), &f).is_zero());
                assert_eq!(is_irreducible(&f, &g), !has_root, "{g:?}");
            }
        }
    }

    #[test]
    fn random_irreducible_properties() {
        let f = Field::new(4, None).unwrap();
        for r in 1..=4 {
            let g = random_irreducible(&f, r, 99);
            assert_eq!(g.degree(), Some(r));
            assert_eq!(g.leading(), FieldElement::ONE);
            if r > 1 {
                for v in 0..f.size() {
                    assert!(!g.eval(f.element(v as u32), &f).is_zero());
                }
            }
            assert_eq!(g, random_irreducible(&f, r, 99), "deterministic per seed");
        }
    }

    #[test]
    fn square_free_gcd_with_derivative() {
        let f = Field::new(4, None).unwrap();
        for r in 1..=4 {
            let g = random_irreducible(&f, r, 5 + r as u64);
            assert_eq!(g.gcd(&g.derivative(), &f), Poly::one());
        }
        let sq = random_irreducible(&f, 2, 1).square(&f);
        assert_ne!(sq.gcd(&sq.derivative(), &f), Poly::one());
    }

    #[test]
    fn sqrt_mod_roundtrip() {
        let f = Field::new(3, None).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        // Irreducible modulus.
        let g = random_irreducible(&f, 3, 17);
        assert_eq!(sqrt_mod(&f, &Poly::one(), &g).unwrap(), Poly::one());
        for _ in 0..30 {
            let s = random_poly(&f, 2, &mut rng);
            let p = s.mul(&s, &f).rem(&g, &f).unwrap();
            let root = sqrt_mod(&f, &p, &g).unwrap();
            assert_eq!(root.mul(&root, &f).rem(&g, &f).unwrap(), p);
        }
        // Square-free composite modulus: distinct-degree irreducibles are coprime.
        let g1 = random_irreducible(&f, 1, 2);
        let g2 = random_irreducible(&f, 2, 3);
        let g = g1.mul(&g2, &f);
        assert_eq!(g.gcd(&g.derivative(), &f), Poly::one());
        for _ in 0..30 {
            let s = random_poly(&f, 2, &mut rng);
            let p = s.mul(&s, &f).rem(&g, &f).unwrap();
            let root = sqrt_mod(&f, &p, &g).unwrap();
            assert_eq!(root.mul(&root, &f).rem(&g, &f).unwrap(), p);
        }
        // x^2 mod g has x (among others) as a square root.
        let x2 = Poly::x().square(&f).rem(&g, &f).unwrap();
        let root = sqrt_mod(&f, &x2, &g).unwrap();
        assert_eq!(root.mul(&root, &f).rem(&g, &f).unwrap(), x2);
    }

    #[test]
    fn hex_roundtrip_and_format() {
        let f = Field::new(5, None).unwrap();
        let p = Poly::from_coeffs(vec![f.element(0xa), f.element(1), f.element(0x1f)]);
        assert_eq!(p.to_hex(), "a 1 1f");
        assert_eq!(Poly::from_hex("a 1 1f"), Some(p));
        assert_eq!(Poly::zero().to_hex(), "0");
        assert_eq!(Poly::from_hex("0"), Some(Poly::zero()));
    }
}
