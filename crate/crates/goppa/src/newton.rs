//! Syndrome decoding through Newton identities.
//!
//! The pipeline, per received word:
//!
//! 1. `syndromes`: S_j = Σ_i r_i · α_i^j / p(α_i) for j = 0..2t-1, where p is
//!    g^2 for square-free g (capacity t = r) and g otherwise. The sequence
//!    depends only on the error coset.
//! 2. `solve_sigma` on S: the t x t Hankel matrix [S_{i+j}] has rank equal to
//!    the number of error positions, and the leading k x k system
//!    [S_{i+j}] · (σ_k, ..., σ_1)^t = (S_k, ..., S_{2k-1})^t has the error
//!    locator σ(x) = Π (x - α_i) as its unique solution.
//! 3. `extend_syndromes`: the recurrence S_i = Σ_j σ_j S_{i-j} (i >= k)
//!    continues the sequence over the full period 2^m - 1.
//! 4. `split_components`: the extended sequence decomposes as
//!    S_j = Σ_λ S^λ_j · α^{λ-1}, where S^λ is the power-sum sequence of the
//!    binary vector picking out positions whose coset coefficient has
//!    coordinate λ set. With {θ_λ} the trace-dual basis,
//!    S^λ_j = Σ_s (θ_λ · S_{j·2^{m-s} mod 2^m-1})^{2^s}.
//! 5. Per component: `solve_sigma` again (degree k_λ), `extend_syndromes`,
//!    `build_q` (coefficients are the reversed extended sequence), and
//!    `locate_errors_q` / `locate_errors_sigma` — Q^λ(α_i) != 0 exactly where
//!    σ^λ(α_i) = 0. A position is in error iff any component flags it.
//!
//! Every arithmetic step is routed through an operation counter. With
//! `Profile::Fixed`, all loops run to bounds that depend only on (m, n, r):
//! eliminations always perform t pivot steps over the full system (rank-
//! deficient steps use a unit dummy pivot and multiply through by zeros),
//! extensions always apply a t-term recurrence, and polynomial evaluations
//! always process the full coefficient range. The counter totals are then
//! identical for every error weight 0..=t. `Profile::Adaptive` skips the dead
//! work; both profiles produce bit-identical results.

use crate::code::GoppaCode;
use crate::gf2m::{Field, FieldElement};
use crate::poly::Poly;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DecodeError {
    #[error("word length {got} does not match code length {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("syndrome system is inconsistent: error weight exceeds capacity")]
    Inconsistent,
    #[error("corrected word failed the parity check")]
    VerificationFailed,
    #[error("q-mode and sigma-mode located different error positions")]
    ModeDisagreement,
    #[error("no error pattern of weight <= {t} matches the syndrome")]
    BeyondCapacity { t: usize },
}

/// Counts of field multiplications, field inversions, and elementary row
/// operations performed during a decode.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct OpCounter {
    pub field_mults: u64,
    pub field_invs: u64,
    pub row_ops: u64,
}

impl OpCounter {
    pub fn total(&self) -> u64 {
        self.field_mults + self.field_invs + self.row_ops
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodeMode {
    /// Locate errors by Q^λ(α_i) != 0.
    Q,
    /// Locate errors by σ^λ(α_i) = 0.
    Sigma,
    /// Run both and require agreement.
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    /// Skip work that cannot contribute; cost varies with error weight.
    Adaptive,
    /// Weight-independent operation counts for a given (m, n, r).
    Fixed,
}

/// Ordinary or extended syndrome values S_0, S_1, ...
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyndromeSequence {
    pub values: Vec<FieldElement>,
}

/// One sequence per basis coordinate λ = 1..m, recombining to the original:
/// S_j = Σ_λ components[λ-1][j] · α^{λ-1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentSyndromes {
    pub components: Vec<Vec<FieldElement>>,
}

/// Monic error locator σ(x) = Π (x - α_i) of degree `weight`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErrorLocator {
    pub sigma: Poly,
    pub weight: usize,
}

#[derive(Debug, Clone)]
pub struct DecodeResult {
    pub error: Vec<u8>,
    pub codeword: Vec<u8>,
    pub message: Vec<u8>,
    pub ops: OpCounter,
    /// Per basis coordinate λ: component weight k_λ and locator σ^λ.
    pub per_component: Vec<(usize, Poly)>,
}

/// Counting wrapper around field arithmetic. Calls are tallied whether or not
/// an operand is zero, so counts reflect loop structure, not data.
struct Ctx<'a> {
    field: &'a Field,
    ops: OpCounter,
    fixed: bool,
}

impl<'a> Ctx<'a> {
    fn new(field: &'a Field, profile: Profile) -> Ctx<'a> {
        Ctx {
            field,
            ops: OpCounter::default(),
            fixed: profile == Profile::Fixed,
        }
    }

    fn mul(&mut self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.ops.field_mults += 1;
        self.field.mul(a, b)
    }

    fn inv(&mut self, a: FieldElement) -> FieldElement {
        self.ops.field_invs += 1;
        self.field
            .inv(a)
            .expect("inverting a checked nonzero element")
    }

    fn row_op(&mut self) {
        self.ops.row_ops += 1;
    }
}

/// Syndromes of the received word against the code's decoding polynomial,
/// S_j for j = 0..2t-1. Depends only on the error coset.
pub fn syndromes(code: &GoppaCode, received: &[u8]) -> Result<SyndromeSequence, DecodeError> {
    let mut ctx = Ctx::new(code.field(), Profile::Adaptive);
    syndromes_ctx(&mut ctx, code, received)
}

fn syndromes_ctx(
    ctx: &mut Ctx,
    code: &GoppaCode,
    received: &[u8],
) -> Result<SyndromeSequence, DecodeError> {
    let n = code.n();
    if received.len() != n {
        return Err(DecodeError::LengthMismatch {
            expected: n,
            got: received.len(),
        });
    }
    let count = 2 * code.t();
    let support = code.support();
    let mut powers = code.support_inv().to_vec();
    let bits: Vec<FieldElement> = received
        .iter()
        .map(|&b| {
            if b != 0 {
                FieldElement::ONE
            } else {
                FieldElement::ZERO
            }
        })
        .collect();
    let mut values = Vec::with_capacity(count);
    for _ in 0..count {
        let mut s = FieldElement::ZERO;
        if ctx.fixed {
            for i in 0..n {
                s += ctx.mul(bits[i], powers[i]);
            }
            for i in 0..n {
                powers[i] = ctx.mul(powers[i], support[i]);
            }
        } else {
            for i in 0..n {
                if received[i] != 0 {
                    s += powers[i];
                    powers[i] = ctx.mul(powers[i], support[i]);
                }
            }
        }
        values.push(s);
    }
    Ok(SyndromeSequence { values })
}

/// Splits a full-period sequence into its m component power-sum sequences.
/// Requires the extended sequence (length 2^m - 1); the decomposition is not
/// local in the ordinary syndromes.
pub fn split_components(
    field: &Field,
    s: &SyndromeSequence,
) -> Result<ComponentSyndromes, DecodeError> {
    let mut ctx = Ctx::new(field, Profile::Adaptive);
    split_components_ctx(&mut ctx, &s.values)
}

fn split_components_ctx(
    ctx: &mut Ctx,
    ext: &[FieldElement],
) -> Result<ComponentSyndromes, DecodeError> {
    let field = ctx.field;
    let m = field.m();
    let period = field.order();
    if ext.len() != period {
        return Err(DecodeError::LengthMismatch {
            expected: period,
            got: ext.len(),
        });
    }
    // theta[lam][s] = θ_λ^(2^s)
    let dual = field.dual_basis().to_vec();
    let mut theta = vec![vec![FieldElement::ZERO; m]; m];
    for (lam, row) in theta.iter_mut().enumerate() {
        row[0] = dual[lam];
        for s in 1..m {
            row[s] = ctx.mul(row[s - 1], row[s - 1]);
        }
    }
    // stride[s] = 2^((m-s) mod m) mod period  (the inverse of 2^s)
    let stride: Vec<usize> = (0..m).map(|s| (1usize << ((m - s) % m)) % period).collect();
    let mut components = vec![Vec::with_capacity(period); m];
    let mut twisted = vec![FieldElement::ZERO; m];
    for j in 0..period {
        for s in 0..m {
            let mut y = ext[(j * stride[s]) % period];
            for _ in 0..s {
                y = ctx.mul(y, y);
            }
            twisted[s] = y;
        }
        for lam in 0..m {
            let mut acc = FieldElement::ZERO;
            for s in 0..m {
                acc += ctx.mul(theta[lam][s], twisted[s]);
            }
            components[lam].push(acc);
        }
    }
    Ok(ComponentSyndromes { components })
}

/// Recombines component sequences: S_j = Σ_λ S^λ_j · α^{λ-1}.
pub fn recombine_components(field: &Field, comps: &ComponentSyndromes) -> SyndromeSequence {
    let len = comps.components.first().map_or(0, |c| c.len());
    let mut values = vec![FieldElement::ZERO; len];
    for (lam, comp) in comps.components.iter().enumerate() {
        let w = field.alpha_pow(lam as i64);
        for (v, &c) in values.iter_mut().zip(comp) {
            *v += field.mul(w, c);
        }
    }
    SyndromeSequence { values }
}

/// Recovers the error locator from 2t consecutive syndromes: the weight k is
/// the rank of the t x t Hankel matrix (full-pivot elimination), and σ solves
/// the leading k x k system. k = 0 yields σ = 1.
pub fn solve_sigma(
    field: &Field,
    values: &[FieldElement],
    t: usize,
) -> Result<ErrorLocator, DecodeError> {
    let mut ctx = Ctx::new(field, Profile::Adaptive);
    solve_sigma_ctx(&mut ctx, values, t)
}

fn solve_sigma_ctx(
    ctx: &mut Ctx,
    vals: &[FieldElement],
    t: usize,
) -> Result<ErrorLocator, DecodeError> {
    assert!(vals.len() >= 2 * t, "need 2t syndromes");
    assert!(t >= 1);

    let k = hankel_rank_ctx(ctx, vals, t);

    // Forward elimination of the t x (t+1) system N[i][j] = S_{i+j}; columns
    // 0..k-1 carry the unknowns, column k is the right-hand side.
    let mut n_mat: Vec<Vec<FieldElement>> = (0..t)
        .map(|i| (0..=t).map(|j| vals[i + j]).collect())
        .collect();
    let mut pivot_rows = 0usize;
    for p in 0..t {
        let found = (p..t).find(|&i| !n_mat[i][p].is_zero());
        if ctx.fixed {
            let pivot = match found {
                Some(i) => {
                    n_mat.swap(p, i);
                    pivot_rows += 1;
                    n_mat[p][p]
                }
                // Rank exhausted: remaining rows are zero, so a unit dummy
                // pivot eliminates with zero factors and changes nothing.
                None => FieldElement::ONE,
            };
            let pivot_inv = ctx.inv(pivot);
            let pivot_row = n_mat[p].clone();
            for i in p + 1..t {
                let factor = ctx.mul(n_mat[i][p], pivot_inv);
                ctx.row_op();
                for j in p..=t {
                    let delta = ctx.mul(factor, pivot_row[j]);
                    n_mat[i][j] += delta;
                }
            }
        } else if let Some(i) = found {
            n_mat.swap(p, i);
            pivot_rows += 1;
            let pivot_inv = ctx.inv(n_mat[p][p]);
            let pivot_row = n_mat[p].clone();
            for i in p + 1..t {
                if n_mat[i][p].is_zero() {
                    continue;
                }
                let factor = ctx.mul(n_mat[i][p], pivot_inv);
                ctx.row_op();
                for j in p..=t {
                    let delta = ctx.mul(factor, pivot_row[j]);
                    n_mat[i][j] += delta;
                }
            }
        }
    }
    if pivot_rows != k {
        // The Hankel rank and the elimination disagree only when the sequence
        // is not a power-sum sequence of weight <= t.
        return Err(DecodeError::Inconsistent);
    }
    for row in n_mat.iter().skip(k) {
        if row.iter().any(|c| !c.is_zero()) {
            return Err(DecodeError::Inconsistent);
        }
    }

    // Back substitution; unknown y_j multiplies column j, rhs is column k,
    // and y_j = 0 for j >= k (their rows are zero).
    let mut y = vec![FieldElement::ZERO; t];
    if ctx.fixed {
        for i in (0..t).rev() {
            let mut acc = n_mat[i][k];
            for j in i + 1..t {
                acc += ctx.mul(n_mat[i][j], y[j]);
            }
            let diag = n_mat[i][i];
            let pivot = if diag.is_zero() {
                FieldElement::ONE
            } else {
                diag
            };
            let inv = ctx.inv(pivot);
            y[i] = ctx.mul(acc, inv);
        }
    } else {
        for i in (0..k).rev() {
            let mut acc = n_mat[i][k];
            for j in i + 1..k {
                acc += ctx.mul(n_mat[i][j], y[j]);
            }
            let inv = ctx.inv(n_mat[i][i]);
            y[i] = ctx.mul(acc, inv);
        }
    }

    // y_j = σ_{k-j}, so ascending coefficients are [y_0, ..., y_{k-1}, 1].
    let mut coeffs = y[..k].to_vec();
    coeffs.push(FieldElement::ONE);
    Ok(ErrorLocator {
        sigma: Poly::from_coeffs(coeffs),
        weight: k,
    })
}

/// Rank of the t x t Hankel matrix [S_{i+j}] by Gaussian elimination with
/// full pivoting; equals the weight of the underlying power-sum vector.
fn hankel_rank_ctx(ctx: &mut Ctx, vals: &[FieldElement], t: usize) -> usize {
    let mut m: Vec<Vec<FieldElement>> = (0..t)
        .map(|i| (0..t).map(|j| vals[i + j]).collect())
        .collect();
    let mut rank = 0usize;
    for p in 0..t {
        let mut found = None;
        'search: for i in p..t {
            for j in p..t {
                if !m[i][j].is_zero() {
                    found = Some((i, j));
                    break 'search;
                }
            }
        }
        if ctx.fixed {
            let pivot = match found {
                Some((i, j)) => {
                    m.swap(p, i);
                    for row in m.iter_mut() {
                        row.swap(p, j);
                    }
                    rank += 1;
                    m[p][p]
                }
                None => FieldElement::ONE,
            };
            let pivot_inv = ctx.inv(pivot);
            let pivot_row = m[p].clone();
            for i in p + 1..t {
                let factor = ctx.mul(m[i][p], pivot_inv);
                ctx.row_op();
                for j in p..t {
                    let delta = ctx.mul(factor, pivot_row[j]);
                    m[i][j] += delta;
                }
            }
        } else {
            let Some((i, j)) = found else { break };
            m.swap(p, i);
            for row in m.iter_mut() {
                row.swap(p, j);
            }
            rank += 1;
            let pivot_inv = ctx.inv(m[p][p]);
            let pivot_row = m[p].clone();
            for i in p + 1..t {
                if m[i][p].is_zero() {
                    continue;
                }
                let factor = ctx.mul(m[i][p], pivot_inv);
                ctx.row_op();
                for j in p..t {
                    let delta = ctx.mul(factor, pivot_row[j]);
                    m[i][j] += delta;
                }
            }
        }
    }
    rank
}

/// Continues a syndrome prefix over the full period 2^m - 1 with the locator
/// recurrence S_i = Σ_{j=1..k} σ_j S_{i-j}. The result is periodic: the
/// recurrence also holds with indices taken mod 2^m - 1.
pub fn extend_syndromes(
    field: &Field,
    locator: &ErrorLocator,
    prefix: &[FieldElement],
) -> Vec<FieldElement> {
    let mut ctx = Ctx::new(field, Profile::Adaptive);
    extend_syndromes_ctx(&mut ctx, locator, prefix, locator.weight)
}

fn extend_syndromes_ctx(
    ctx: &mut Ctx,
    locator: &ErrorLocator,
    prefix: &[FieldElement],
    padded_terms: usize,
) -> Vec<FieldElement> {
    let period = ctx.field.order();
    let k = locator.weight;
    assert!(prefix.len() >= k, "prefix must cover the recurrence order");
    assert!(prefix.len() <= period);
    let terms = if ctx.fixed { padded_terms } else { k };
    assert!(prefix.len() >= terms);
    // σ_j (the coefficient of x^{k-j}), padded with zeros beyond degree k.
    let taps: Vec<FieldElement> = (1..=terms)
        .map(|j| {
            if j <= k {
                locator.sigma.coeff(k - j)
            } else {
                FieldElement::ZERO
            }
        })
        .collect();
    let mut out = prefix.to_vec();
    for i in prefix.len()..period {
        let mut s = FieldElement::ZERO;
        for (j, &tap) in taps.iter().enumerate() {
            s += ctx.mul(tap, out[i - 1 - j]);
        }
        out.push(s);
    }
    out
}

/// Q(x) = S_{2^m-2} + S_{2^m-3} x + ... + S_0 x^{2^m-2}: the coefficient of
/// x^j is the extended syndrome S_{2^m-2-j}.
pub fn build_q(field: &Field, extended: &[FieldElement]) -> Result<Poly, DecodeError> {
    if extended.len() != field.order() {
        return Err(DecodeError::LengthMismatch {
            expected: field.order(),
            got: extended.len(),
        });
    }
    Ok(Poly::from_coeffs(extended.iter().rev().copied().collect()))
}

/// Error positions flagged where Q does not vanish on the support.
pub fn locate_errors_q(field: &Field, q: &Poly, support: &[FieldElement]) -> Vec<u8> {
    support
        .iter()
        .map(|&a| (!q.eval(a, field).is_zero()) as u8)
        .collect()
}

/// Error positions flagged where σ vanishes on the support.
pub fn locate_errors_sigma(field: &Field, sigma: &Poly, support: &[FieldElement]) -> Vec<u8> {
    support
        .iter()
        .map(|&a| sigma.eval(a, field).is_zero() as u8)
        .collect()
}

/// Horner evaluation of the polynomial whose coefficient of x^j is
/// ext[len-1-j]; processing the sequence front-to-back is exactly Q.
fn eval_reversed_ctx(ctx: &mut Ctx, ext: &[FieldElement], x: FieldElement) -> FieldElement {
    let start = if ctx.fixed {
        0
    } else {
        ext.iter().position(|c| !c.is_zero()).unwrap_or(ext.len())
    };
    let mut acc = FieldElement::ZERO;
    for &c in &ext[start..] {
        acc = ctx.mul(acc, x) + c;
    }
    acc
}

fn eval_sigma_ctx(
    ctx: &mut Ctx,
    locator: &ErrorLocator,
    x: FieldElement,
    padded_degree: usize,
) -> FieldElement {
    let top = if ctx.fixed {
        padded_degree
    } else {
        locator.weight
    };
    let mut acc = FieldElement::ZERO;
    for j in (0..=top).rev() {
        let c = if j <= locator.weight {
            locator.sigma.coeff(j)
        } else {
            FieldElement::ZERO
        };
        acc = ctx.mul(acc, x) + c;
    }
    acc
}

/// Full decode. Verifies the corrected word against the parity check before
/// returning; inconsistent syndrome systems or failed verification signal an
/// error weight beyond the capacity.
pub fn decode(
    code: &GoppaCode,
    received: &[u8],
    mode: DecodeMode,
    profile: Profile,
) -> Result<DecodeResult, DecodeError> {
    let field = code.field();
    let n = code.n();
    let t = code.t();
    let mut ctx = Ctx::new(field, profile);

    let syn = syndromes_ctx(&mut ctx, code, received)?;
    let global = solve_sigma_ctx(&mut ctx, &syn.values, t)?;
    let extended = extend_syndromes_ctx(&mut ctx, &global, &syn.values, t);
    let comps = split_components_ctx(&mut ctx, &extended)?;

    let mut per_component = Vec::with_capacity(field.m());
    let mut error_q = vec![0u8; n];
    let mut error_s = vec![0u8; n];
    for comp in &comps.components {
        let prefix = &comp[..2 * t];
        let locator = solve_sigma_ctx(&mut ctx, prefix, t)?;
        if matches!(mode, DecodeMode::Q | DecodeMode::Both) {
            let comp_ext = extend_syndromes_ctx(&mut ctx, &locator, prefix, t);
            // For any coset of weight <= t the recurrence regenerates the
            // component exactly; divergence means the received word is beyond
            // capacity.
            if comp_ext != *comp {
                return Err(DecodeError::Inconsistent);
            }
            for (i, &a) in code.support().iter().enumerate() {
                if !eval_reversed_ctx(&mut ctx, &comp_ext, a).is_zero() {
                    error_q[i] = 1;
                }
            }
        }
        if matches!(mode, DecodeMode::Sigma | DecodeMode::Both) {
            for (i, &a) in code.support().iter().enumerate() {
                if eval_sigma_ctx(&mut ctx, &locator, a, t).is_zero() {
                    error_s[i] = 1;
                }
            }
        }
        per_component.push((locator.weight, locator.sigma));
    }

    let error = match mode {
        DecodeMode::Q => error_q,
        DecodeMode::Sigma => error_s,
        DecodeMode::Both => {
            if error_q != error_s {
                return Err(DecodeError::ModeDisagreement);
            }
            error_q
        }
    };

    if error.iter().filter(|&&b| b != 0).count() > t {
        return Err(DecodeError::VerificationFailed);
    }
    let codeword: Vec<u8> = received.iter().zip(&error).map(|(&r, &e)| r ^ e).collect();
    let check = code.binary_syndrome(&codeword).expect("length checked");
    for _ in 0..code.binary_control_matrix().rows() {
        ctx.row_op();
    }
    if check.iter().any(|&b| b != 0) {
        return Err(DecodeError::VerificationFailed);
    }
    let message = code
        .message_from_codeword(&codeword)
        .expect("length checked");
    for _ in 0..code.k() {
        ctx.row_op();
    }

    Ok(DecodeResult {
        error,
        codeword,
        message,
        ops: ctx.ops,
        per_component,
    })
}

/// Oracle decoder: tries every error pattern of weight 0..=t, lowest weight
/// first, against the binary syndrome. Desk scale only.
pub fn decode_bruteforce(code: &GoppaCode, received: &[u8]) -> Result<DecodeResult, DecodeError> {
    let n = code.n();
    let t = code.t();
    assert!(n <= 24 && t <= 3, "brute force is desk scale only");
    if received.len() != n {
        return Err(DecodeError::LengthMismatch {
            expected: n,
            got: received.len(),
        });
    }
    let target = code.binary_syndrome(received).expect("length checked");

    // Weights in increasing order so the minimal pattern is found first.
    let mut pattern = vec![0u8; n];
    let error = (0..=t).find_map(|w| search_exact_weight(code, &target, &mut pattern, 0, w));
    if let Some(error) = error {
        let codeword: Vec<u8> = received.iter().zip(&error).map(|(&r, &e)| r ^ e).collect();
        let message = code
            .message_from_codeword(&codeword)
            .expect("length checked");
        Ok(DecodeResult {
            error,
            codeword,
            message,
            ops: OpCounter::default(),
            per_component: Vec::new(),
        })
    } else {
        Err(DecodeError::BeyondCapacity { t })
    }
}

fn search_exact_weight(
    code: &GoppaCode,
    target: &[u8],
    pattern: &mut Vec<u8>,
    start: usize,
    remaining: usize,
) -> Option<Vec<u8>> {
    if remaining == 0 {
        let syn = code.binary_syndrome(pattern).expect("length ok");
        return if syn == target {
            Some(pattern.clone())
        } else {
            None
        };
    }
    for i in start..=code.n() - remaining {
        pattern[i] = 1;
        if let Some(found) = search_exact_weight(code, target, pattern, i + 1, remaining - 1) {
            pattern[i] = 0;
            return Some(found);
        }
        pattern[i] = 0;
    }
    None
}
