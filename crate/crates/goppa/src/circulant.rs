//! Circulant matrices over F_{2^m} and their spectral structure.
//!
//! A circulant of size n is determined by its first row; each later row is
//! the cyclic right-shift of the one above. Writing C(x) = Σ c_j x^j for the
//! first row, C = C(A) where A is the elementary circulant, and when
//! n = 2^m - 1 the Fourier matrix P = (α^{ij}) diagonalizes A, so the
//! eigenvalues of C are C(α^i) and rank(C) counts the nonzero ones. The
//! syndrome circulant C_S of an extended syndrome sequence has rank equal to
//! the error weight and is annihilated by (0, ..., 0, 1, σ_1, ..., σ_k)^t.

use crate::gf2m::{Field, FieldElement};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CirculantError {
    #[error("spectral operations need size 2^m - 1, got {got} for m = {m}")]
    SizeMismatch { got: usize, m: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("materialization is capped at size {max}, got {got}")]
    TooLarge { got: usize, max: usize },
}

/// Maximum size for on-demand materialization; full storage is test scale.
const MAX_MATERIALIZE: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Circulant {
    first_row: Vec<FieldElement>,
}

impl Circulant {
    pub fn new(first_row: Vec<FieldElement>) -> Circulant {
        assert!(!first_row.is_empty());
        Circulant { first_row }
    }

    /// The elementary circulant A: first row (0, 1, 0, ..., 0); the identity
    /// for n = 1.
    pub fn elementary(n: usize) -> Circulant {
        let mut row = vec![FieldElement::ZERO; n];
        row[1 % n] = FieldElement::ONE;
        Circulant { first_row: row }
    }

    pub fn n(&self) -> usize {
        self.first_row.len()
    }

    pub fn first_row(&self) -> &[FieldElement] {
        &self.first_row
    }

    /// Row i: entry j is first_row[(j - i) mod n].
    pub fn row(&self, i: usize) -> Vec<FieldElement> {
        let n = self.n();
        (0..n)
            .map(|j| self.first_row[(j + n - i % n) % n])
            .collect()
    }

    pub fn materialize(&self) -> Result<Vec<Vec<FieldElement>>, CirculantError> {
        if self.n() > MAX_MATERIALIZE {
            return Err(CirculantError::TooLarge {
                got: self.n(),
                max: MAX_MATERIALIZE,
            });
        }
        Ok((0..self.n()).map(|i| self.row(i)).collect())
    }

    /// C · v.
    pub fn apply(
        &self,
        v: &[FieldElement],
        field: &Field,
    ) -> Result<Vec<FieldElement>, CirculantError> {
        let n = self.n();
        if v.len() != n {
            return Err(CirculantError::DimensionMismatch(n, v.len()));
        }
        Ok((0..n)
            .map(|i| {
                let mut s = FieldElement::ZERO;
                for j in 0..n {
                    s += field.mul(self.first_row[(j + n - i % n) % n], v[j]);
                }
                s
            })
            .collect())
    }

    /// Coefficients (c_0, ..., c_{n-1}) of the decomposition C = Σ c_i A^i.
    pub fn as_poly_in_a(&self) -> &[FieldElement] {
        &self.first_row
    }

    /// Eigenvalues C(α^i) for i = 0..n-1; requires n = 2^m - 1.
    pub fn eigenvalues(&self, field: &Field) -> Result<Vec<FieldElement>, CirculantError> {
        let n = self.n();
        if n != field.order() {
            return Err(CirculantError::SizeMismatch {
                got: n,
                m: field.m(),
            });
        }
        Ok((0..n as i64)
            .map(|i| {
                let x = field.alpha_pow(i);
                let mut acc = FieldElement::ZERO;
                for &c in self.first_row.iter().rev() {
                    acc = field.mul(acc, x) + c;
                }
                acc
            })
            .collect())
    }

    /// Rank = number of nonzero eigenvalues.
    pub fn rank(&self, field: &Field) -> Result<usize, CirculantError> {
        Ok(self
            .eigenvalues(field)?
            .iter()
            .filter(|v| !v.is_zero())
            .count())
    }
}

/// The Fourier matrix P[i][j] = α^{ij} and its inverse P^{-1}[i][j] = α^{-ij}
/// of size 2^m - 1.
#[derive(Debug, Clone)]
pub struct FourierPair {
    pub p: Vec<Vec<FieldElement>>,
    pub p_inv: Vec<Vec<FieldElement>>,
}

impl FourierPair {
    pub fn new(field: &Field) -> FourierPair {
        let n = field.order() as i64;
        let p = (0..n)
            .map(|i| (0..n).map(|j| field.alpha_pow(i * j)).collect())
            .collect();
        let p_inv = (0..n)
            .map(|i| (0..n).map(|j| field.alpha_pow(-i * j)).collect())
            .collect();
        FourierPair { p, p_inv }
    }
}

/// The syndrome circulant C_S: first row (S_{2^m-2}, S_{2^m-3}, ..., S_0).
pub fn build_syndrome_circulant(
    extended: &[FieldElement],
    field: &Field,
) -> Result<Circulant, CirculantError> {
    if extended.len() != field.order() {
        return Err(CirculantError::SizeMismatch {
            got: extended.len(),
            m: field.m(),
        });
    }
    Ok(Circulant::new(extended.iter().rev().copied().collect()))
}

/// The kernel vector (0, ..., 0, 1, σ_1, ..., σ_k)^t of length n that the
/// syndrome circulant annihilates.
pub fn sigma_kernel_vector(sigma: &crate::poly::Poly, k: usize, n: usize) -> Vec<FieldElement> {
    assert!(k < n);
    let mut v = vec![FieldElement::ZERO; n];
    v[n - 1 - k] = FieldElement::ONE;
    for j in 1..=k {
        v[n - 1 - k + j] = sigma.coeff(k - j);
    }
    v
}
