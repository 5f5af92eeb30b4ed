//! Binary Goppa codes Γ(L, g): construction, the control matrix and its
//! binary expansion, encoding, membership tests, and the text file format.
//!
//! The support L is a sequence of distinct nonzero field elements with
//! g(α_i) != 0. A word a is in Γ(L, g) when Σ a_i (1/(x-α_i) mod g) = 0;
//! equivalently H a^t = 0 for the control matrix H[j][i] = α_i^j / g(α_i),
//! or g divides the derivative of σ_a(x) = Π_{a_i=1} (x - α_i).
//!
//! When g is square-free, Γ(L, g) = Γ(L, g^2), which raises the guaranteed
//! correction capacity from floor(r/2) to r; decoding machinery therefore
//! works against g^2 in that case. The stored generator matrix is the
//! canonical reduced-row-echelon null-space basis of the binary expansion of
//! that control matrix.

use crate::binmat::BinMatrix;
use crate::gf2m::{Field, FieldElement};
use crate::poly::{self, Poly};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CodeError {
    #[error("support contains duplicate elements")]
    DuplicateSupport,
    #[error("support contains zero")]
    ZeroInSupport,
    #[error("g vanishes on support element {0}")]
    GoppaRootInSupport(usize),
    #[error("goppa polynomial degree {r} outside 1..={max}")]
    DegreeOutOfRange { r: usize, max: usize },
    #[error("code has binary dimension 0")]
    Degenerate,
    #[error("expected length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("brute-force enumeration needs k <= {max}, code has k = {k}")]
    DimensionTooLarge { k: usize, max: usize },
    #[error("only {available} support candidates for n = {needed}")]
    SupportTooSmall { needed: usize, available: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FileError {
    #[error("missing or malformed line: {0}")]
    MalformedLine(&'static str),
    #[error("bad field element {0:?}")]
    BadElement(String),
    #[error("stored generator matrix does not match the code parameters")]
    GeneratorMismatch,
    #[error(transparent)]
    Field(#[from] crate::gf2m::FieldError),
    #[error(transparent)]
    Code(#[from] CodeError),
}

/// Which of the three equivalent membership characterizations to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MembershipTest {
    /// Σ a_i (1/(x-α_i) mod g) = 0 as a polynomial.
    SumFractions,
    /// H a^t = 0 over the field.
    ControlMatrix,
    /// g divides dσ_a/dx with σ_a = Π_{a_i=1} (x - α_i).
    Derivative,
}

#[derive(Debug, Clone)]
pub struct GoppaCode {
    field: Field,
    support: Vec<FieldElement>,
    g: Poly,
    square_free: bool,
    g_irreducible: bool,
    /// g^2 when g is square-free, else g; the polynomial the decoder works against.
    decode_poly: Poly,
    /// 1 / decode_poly(α_i), cached per support position.
    support_inv: Vec<FieldElement>,
    /// r x n control matrix of Γ(L, g) over the field.
    h: Vec<Vec<FieldElement>>,
    /// Binary expansion of the control matrix of Γ(L, decode_poly):
    /// m * deg(decode_poly) rows, blocks ordered by basis index, then power.
    h_bin: BinMatrix,
    /// k x n generator matrix: canonical RREF null-space basis of h_bin.
    gen: BinMatrix,
    /// Free columns of h_bin's RREF; codeword bits there equal the message.
    free_cols: Vec<usize>,
    k: usize,
    t: usize,
    sqrt_x: Option<Poly>,
}

impl GoppaCode {
    pub fn build(
        field: Field,
        support: Vec<FieldElement>,
        g: Poly,
    ) -> Result<GoppaCode, CodeError> {
        let n = support.len();
        let r = g.degree().unwrap_or(0);
        if r < 1 || n < 2 || r > n - 1 {
            return Err(CodeError::DegreeOutOfRange {
                r,
                max: n.saturating_sub(1),
            });
        }
        if support.iter().any(|a| a.is_zero()) {
            return Err(CodeError::ZeroInSupport);
        }
        if support.iter().collect::<HashSet<_>>().len() != n {
            return Err(CodeError::DuplicateSupport);
        }
        for (i, &a) in support.iter().enumerate() {
            if g.eval(a, &field).is_zero() {
                return Err(CodeError::GoppaRootInSupport(i));
            }
        }

        let square_free = {
            let d = g.derivative();
            !d.is_zero() && g.gcd(&d, &field) == Poly::one()
        };
        let g_irreducible = r == 1 || poly::is_irreducible(&field, &g);
        let (decode_poly, t) = if square_free {
            (g.square(&field), r)
        } else {
            (g.clone(), r / 2)
        };

        let h = control_matrix(&field, &support, &g);
        let h_dp = control_matrix(&field, &support, &decode_poly);
        let h_bin = binary_expansion(&field, &h_dp);
        let (gen, free_cols) = h_bin.null_space();
        let k = gen.rows();
        if k == 0 {
            return Err(CodeError::Degenerate);
        }
        let support_inv = support
            .iter()
            .map(|&a| {
                field
                    .inv(decode_poly.eval(a, &field))
                    .expect("checked g(a) != 0")
            })
            .collect();
        let sqrt_x = if g_irreducible {
            poly::sqrt_x_mod(&field, &g).ok()
        } else {
            None
        };

        Ok(GoppaCode {
            field,
            support,
            g,
            square_free,
            g_irreducible,
            decode_poly,
            support_inv,
            h,
            h_bin,
            gen,
            free_cols,
            k,
            t,
            sqrt_x,
        })
    }

    /// Deterministic random code: a random monic irreducible g of degree r and
    /// a random size-n support among the nonzero non-roots of g.
    pub fn random(m: usize, r: usize, n: usize, seed: u64) -> Result<GoppaCode, CodeError> {
        let field = Field::new(m, None).expect("supported m");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut available = 0;
        let mut saw_degenerate = false;
        // Retries matter mostly for r = 1 with a nearly full support, where
        // only polynomials whose root lies outside the support qualify.
        for _ in 0..32 * field.size() {
            let g = poly::random_irreducible(&field, r, rng.gen());
            let mut pool: Vec<FieldElement> = (0..field.order() as i64)
                .map(|i| field.alpha_pow(i))
                .filter(|&a| !g.eval(a, &field).is_zero())
                .collect();
            available = available.max(pool.len());
            if pool.len() < n {
                continue;
            }
            pool.shuffle(&mut rng);
            pool.truncate(n);
            match GoppaCode::build(field.clone(), pool, g) {
                Ok(code) => return Ok(code),
                Err(CodeError::Degenerate) => saw_degenerate = true,
                Err(e) => return Err(e),
            }
        }
        if saw_degenerate {
            Err(CodeError::Degenerate)
        } else {
            Err(CodeError::SupportTooSmall {
                needed: n,
                available,
            })
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn support(&self) -> &[FieldElement] {
        &self.support
    }

    pub fn goppa_poly(&self) -> &Poly {
        &self.g
    }

    pub fn n(&self) -> usize {
        self.support.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn r(&self) -> usize {
        self.g.degree().unwrap()
    }

    /// Guaranteed correction capacity: r for square-free g, floor(r/2) otherwise.
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn is_square_free(&self) -> bool {
        self.square_free
    }

    pub fn is_irreducible(&self) -> bool {
        self.g_irreducible
    }

    pub fn decode_poly(&self) -> &Poly {
        &self.decode_poly
    }

    pub fn support_inv(&self) -> &[FieldElement] {
        &self.support_inv
    }

    pub fn control_matrix(&self) -> &[Vec<FieldElement>] {
        &self.h
    }

    pub fn binary_control_matrix(&self) -> &BinMatrix {
        &self.h_bin
    }

    pub fn generator(&self) -> &BinMatrix {
        &self.gen
    }

    pub fn free_columns(&self) -> &[usize] {
        &self.free_cols
    }

    pub(crate) fn sqrt_x_mod_g(&self) -> Option<&Poly> {
        self.sqrt_x.as_ref()
    }

    pub fn encode(&self, message: &[u8]) -> Result<Vec<u8>, CodeError> {
        if message.len() != self.k {
            return Err(CodeError::LengthMismatch {
                expected: self.k,
                got: message.len(),
            });
        }
        Ok(self.gen.row_vec_mul(message))
    }

    /// Binary syndrome against the expanded control matrix; zero iff codeword.
    pub fn binary_syndrome(&self, word: &[u8]) -> Result<Vec<u8>, CodeError> {
        if word.len() != self.n() {
            return Err(CodeError::LengthMismatch {
                expected: self.n(),
                got: word.len(),
            });
        }
        Ok(self.h_bin.mul_vec(word))
    }

    /// Reads the message back off a codeword: the generator's RREF null-space
    /// form makes codeword bits at the free columns equal the message bits.
    pub fn message_from_codeword(&self, codeword: &[u8]) -> Result<Vec<u8>, CodeError> {
        if codeword.len() != self.n() {
            return Err(CodeError::LengthMismatch {
                expected: self.n(),
                got: codeword.len(),
            });
        }
        let msg: Vec<u8> = self.free_cols.iter().map(|&c| codeword[c]).collect();
        debug_assert_eq!(self.gen.row_vec_mul(&msg), codeword);
        Ok(msg)
    }

    pub fn is_codeword(&self, word: &[u8], method: MembershipTest) -> Result<bool, CodeError> {
        if word.len() != self.n() {
            return Err(CodeError::LengthMismatch {
                expected: self.n(),
                got: word.len(),
            });
        }
        Ok(match method {
            MembershipTest::SumFractions => {
                let mut acc = Poly::zero();
                for (i, &b) in word.iter().enumerate() {
                    if b != 0 {
                        let u = poly::inv_linear_mod_g(&self.field, self.support[i], &self.g)
                            .expect("g(a) != 0 on support");
                        acc = acc.add(&u);
                    }
                }
                acc.is_zero()
            }
            MembershipTest::ControlMatrix => self.h.iter().all(|row| {
                let mut s = FieldElement::ZERO;
                for (i, &b) in word.iter().enumerate() {
                    if b != 0 {
                        s += row[i];
                    }
                }
                s.is_zero()
            }),
            MembershipTest::Derivative => {
                let mut sigma = Poly::one();
                for (i, &b) in word.iter().enumerate() {
                    if b != 0 {
                        sigma = sigma.mul(&Poly::linear(self.support[i]), &self.field);
                    }
                }
                sigma
                    .derivative()
                    .rem(&self.g, &self.field)
                    .expect("deg g >= 1")
                    .is_zero()
            }
        })
    }

    /// Exact minimum distance by enumerating all 2^k codewords (Gray-code walk).
    pub fn min_distance_bruteforce(&self) -> Result<usize, CodeError> {
        const MAX_K: usize = 20;
        if self.k > MAX_K {
            return Err(CodeError::DimensionTooLarge {
                k: self.k,
                max: MAX_K,
            });
        }
        let mut word = vec![0u8; self.n()];
        let mut best = usize::MAX;
        for counter in 1u64..1 << self.k {
            let flip = counter.trailing_zeros() as usize;
            for (w, &g) in word.iter_mut().zip(self.gen.row(flip)) {
                *w ^= g;
            }
            best = best.min(word.iter().filter(|&&b| b != 0).count());
        }
        Ok(best)
    }

    /// Serializes to the line-oriented text format. Reading it back and
    /// rewriting is byte-identical.
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "goppa m={} n={} r={} fieldpoly={:x}\n",
            self.field.m(),
            self.n(),
            self.r(),
            self.field.reduction_poly()
        ));
        out.push_str(&format!("g= {}\n", self.g.to_hex()));
        let support: Vec<String> = self.support.iter().map(|a| a.to_hex()).collect();
        out.push_str(&format!("L= {}\n", support.join(" ")));
        out.push_str("G:\n");
        for i in 0..self.gen.rows() {
            let row: String = self
                .gen
                .row(i)
                .iter()
                .map(|&b| if b == 1 { '1' } else { '0' })
                .collect();
            out.push_str(&row);
            out.push('\n');
        }
        out
    }

    pub fn from_file_string(text: &str) -> Result<GoppaCode, FileError> {
        let mut lines = text.lines();
        let header = lines.next().ok_or(FileError::MalformedLine("header"))?;
        let mut m = None;
        let mut n = None;
        let mut r = None;
        let mut fieldpoly = None;
        let mut parts = header.split_whitespace();
        if parts.next() != Some("goppa") {
            return Err(FileError::MalformedLine("header"));
        }
        for part in parts {
            let (key, value) = part
                .split_once('=')
                .ok_or(FileError::MalformedLine("header"))?;
            match key {
                "m" => m = value.parse::<usize>().ok(),
                "n" => n = value.parse::<usize>().ok(),
                "r" => r = value.parse::<usize>().ok(),
                "fieldpoly" => fieldpoly = u32::from_str_radix(value, 16).ok(),
                _ => return Err(FileError::MalformedLine("header")),
            }
        }
        let (m, n, r, fieldpoly) = match (m, n, r, fieldpoly) {
            (Some(m), Some(n), Some(r), Some(p)) => (m, n, r, p),
            _ => return Err(FileError::MalformedLine("header")),
        };
        let field = Field::new(m, Some(fieldpoly))?;

        let g_line = lines.next().ok_or(FileError::MalformedLine("g="))?;
        let g_body = g_line
            .strip_prefix("g= ")
            .ok_or(FileError::MalformedLine("g="))?;
        let g = Poly::from_hex(g_body).ok_or_else(|| FileError::BadElement(g_body.to_string()))?;
        if g.degree() != Some(r) {
            return Err(FileError::MalformedLine("g="));
        }

        let l_line = lines.next().ok_or(FileError::MalformedLine("L="))?;
        let l_body = l_line
            .strip_prefix("L= ")
            .ok_or(FileError::MalformedLine("L="))?;
        let support: Vec<FieldElement> = l_body
            .split_whitespace()
            .map(|s| {
                FieldElement::from_hex(s)
                    .filter(|e| (e.value() as usize) < field.size())
                    .ok_or_else(|| FileError::BadElement(s.to_string()))
            })
            .collect::<Result<_, _>>()?;
        if support.len() != n {
            return Err(FileError::MalformedLine("L="));
        }

        if lines.next() != Some("G:") {
            return Err(FileError::MalformedLine("G:"));
        }
        let mut stored = Vec::new();
        for line in lines {
            let row: Vec<u8> = line
                .chars()
                .map(|c| match c {
                    '0' => Ok(0),
                    '1' => Ok(1),
                    _ => Err(FileError::BadElement(line.to_string())),
                })
                .collect::<Result<_, _>>()?;
            if row.len() != n {
                return Err(FileError::MalformedLine("G row"));
            }
            stored.push(row);
        }

        let code = GoppaCode::build(field, support, g)?;
        if stored.len() != code.gen.rows()
            || (0..stored.len()).any(|i| stored[i] != code.gen.row(i))
        {
            return Err(FileError::GeneratorMismatch);
        }
        Ok(code)
    }
}

fn control_matrix(field: &Field, support: &[FieldElement], g: &Poly) -> Vec<Vec<FieldElement>> {
    let r = g.degree().unwrap();
    let invs: Vec<FieldElement> = support
        .iter()
        .map(|&a| field.inv(g.eval(a, field)).expect("g(a) != 0"))
        .collect();
    let mut rows = Vec::with_capacity(r);
    let mut powers = invs;
    for _ in 0..r {
        rows.push(powers.clone());
        for (p, &a) in powers.iter_mut().zip(support) {
            *p = field.mul(*p, a);
        }
    }
    rows
}

/// Expands a field matrix into binary rows: block λ holds coordinate λ of
/// every entry, blocks ordered by basis index then by power.
fn binary_expansion(field: &Field, h: &[Vec<FieldElement>]) -> BinMatrix {
    let d = h.len();
    let n = h[0].len();
    let m = field.m();
    let mut out = BinMatrix::zeros(m * d, n);
    for (j, row) in h.iter().enumerate() {
        for (i, &entry) in row.iter().enumerate() {
            for (lambda, &bit) in field.coords(entry).iter().enumerate() {
                out.set(lambda * d + j, i, bit);
            }
        }
    }
    out
}
