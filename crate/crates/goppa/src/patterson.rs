//! Patterson decoding for irreducible g, used as an independent reference.
//!
//! Pipeline: syndrome polynomial s(x) = Σ r_i (1/(x-α_i) mod g), then
//! T = s^{-1} mod g, τ = sqrt(T + x) mod g, a partial extended Euclidean run
//! splitting τ ≡ a/b (mod g) with deg a <= r/2 and deg b <= (r-1)/2, and
//! finally σ = a^2 + x·b^2 whose roots on the support locate the errors.
//!
//! The trace records how many Euclidean division steps ran and the remainder
//! degrees along the way; unlike the fixed-profile Newton decoder, that count
//! varies with the error weight.

use crate::code::GoppaCode;
use crate::newton::{DecodeError, DecodeResult, OpCounter};
use crate::poly::{self, Poly};

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PattersonTrace {
    /// Number of division steps in the partial extended Euclidean algorithm.
    pub eea_iterations: usize,
    /// (remainder degree, multiplier degree) after each step; the remainder
    /// side strictly decreases.
    pub degrees: Vec<(usize, usize)>,
}

/// Decodes up to r errors for a code with irreducible g.
pub fn patterson_decode(
    code: &GoppaCode,
    received: &[u8],
) -> Result<(DecodeResult, PattersonTrace), DecodeError> {
    assert!(
        code.is_irreducible(),
        "patterson requires an irreducible goppa polynomial"
    );
    let field = code.field();
    let n = code.n();
    if received.len() != n {
        return Err(DecodeError::LengthMismatch {
            expected: n,
            got: received.len(),
        });
    }
    let g = code.goppa_poly();
    let r = code.r();

    let mut s = Poly::zero();
    for (i, &bit) in received.iter().enumerate() {
        if bit != 0 {
            let u =
                poly::inv_linear_mod_g(field, code.support()[i], g).expect("g(a) != 0 on support");
            s = s.add(&u);
        }
    }

    let mut trace = PattersonTrace::default();
    if s.is_zero() {
        let message = code
            .message_from_codeword(received)
            .expect("length checked");
        let result = DecodeResult {
            error: vec![0; n],
            codeword: received.to_vec(),
            message,
            ops: OpCounter::default(),
            per_component: Vec::new(),
        };
        return Ok((result, trace));
    }

    // T = s^{-1}; gcd(s, g) = 1 since g is irreducible and deg s < deg g.
    let t_poly = poly::inv_mod(field, &s, g).map_err(|_| DecodeError::VerificationFailed)?;
    let radicand = t_poly.add(&Poly::x()).rem(g, field).expect("deg g >= 1");
    let sqrt_x = code.sqrt_x_mod_g().expect("cached for irreducible g");
    let tau = poly::sqrt_with_precomputed(field, &radicand, g, sqrt_x);

    let (a, b) = partial_eea(code, &tau, r, &mut trace);
    let sigma = a.square(field).add(&Poly::x().mul(&b.square(field), field));
    if sigma.is_zero() {
        return Err(DecodeError::VerificationFailed);
    }

    let error: Vec<u8> = code
        .support()
        .iter()
        .map(|&alpha| sigma.eval(alpha, field).is_zero() as u8)
        .collect();
    let weight = error.iter().filter(|&&b| b != 0).count();
    if weight == 0 || weight > code.t() {
        return Err(DecodeError::VerificationFailed);
    }
    let codeword: Vec<u8> = received.iter().zip(&error).map(|(&x, &e)| x ^ e).collect();
    let check = code.binary_syndrome(&codeword).expect("length checked");
    if check.iter().any(|&b| b != 0) {
        return Err(DecodeError::VerificationFailed);
    }
    let message = code
        .message_from_codeword(&codeword)
        .expect("length checked");

    let result = DecodeResult {
        error,
        codeword,
        message,
        ops: OpCounter::default(),
        per_component: Vec::new(),
    };
    Ok((result, trace))
}

/// Runs the extended Euclidean algorithm on (g, τ), stopping at the first
/// remainder of degree <= r/2. Returns (a, b) with b·τ = a (mod g).
fn partial_eea(code: &GoppaCode, tau: &Poly, r: usize, trace: &mut PattersonTrace) -> (Poly, Poly) {
    let field = code.field();
    let g = code.goppa_poly();
    let stop = r / 2;
    let mut r_prev = g.clone();
    let mut r_cur = tau.clone();
    let mut b_prev = Poly::zero();
    let mut b_cur = Poly::one();
    while r_cur.degree().map_or(false, |d| d > stop) {
        let (q, rem) = r_prev.div_rem(&r_cur, field).expect("r_cur nonzero");
        let b_next = b_prev.add(&q.mul(&b_cur, field));
        r_prev = r_cur;
        r_cur = rem;
        b_prev = b_cur;
        b_cur = b_next;
        trace.eea_iterations += 1;
        trace
            .degrees
            .push((r_cur.degree().unwrap_or(0), b_cur.degree().unwrap_or(0)));
    }
    (r_cur, b_cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2m::{Field, FieldElement};
    use crate::newton::{decode, decode_bruteforce, DecodeMode, Profile};
    use rand::seq::SliceRandom;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tiny_code() -> GoppaCode {
        let field = Field::new(3, None).unwrap();
        let support: Vec<FieldElement> = (0..7).map(|i| field.alpha_pow(i)).collect();
        GoppaCode::build(field, support, Poly::x()).unwrap()
    }

    fn random_error(n: usize, weight: usize, rng: &mut ChaCha8Rng) -> Vec<u8> {
        let mut idx: Vec<usize> = (0..n).collect();
        idx.shuffle(rng);
        let mut e = vec![0u8; n];
        for &i in idx.iter().take(weight) {
            e[i] = 1;
        }
        e
    }

    #[test]
    fn clean_word_takes_zero_iterations() {
        let code = tiny_code();
        let zero = vec![0u8; code.n()];
        let (res, trace) = patterson_decode(&code, &zero).unwrap();
        assert!(res.error.iter().all(|&b| b == 0));
        assert_eq!(trace.eea_iterations, 0);
    }

    #[test]
    fn agrees_with_bruteforce_exhaustively() {
        let code = tiny_code();
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for _ in 0..5 {
            let msg: Vec<u8> = (0..code.k()).map(|_| rng.gen_range(0..2u8)).collect();
            let cw = code.encode(&msg).unwrap();
            let mut patterns = vec![vec![0u8; code.n()]];
            for i in 0..code.n() {
                let mut e = vec![0u8; code.n()];
                e[i] = 1;
                patterns.push(e);
            }
            for e in patterns {
                let received: Vec<u8> = cw.iter().zip(&e).map(|(&c, &x)| c ^ x).collect();
                let (pat, _) = patterson_decode(&code, &received).unwrap();
                let bf = decode_bruteforce(&code, &received).unwrap();
                assert_eq!(pat.error, bf.error);
                assert_eq!(pat.message, bf.message);
            }
        }
    }

    #[test]
    fn agrees_with_newton_on_random_instances() {
        for (m, r, seed) in [(4usize, 1usize, 67u64), (5, 2, 71), (5, 3, 73)] {
            let n = (1 << m) - 1;
            let code = GoppaCode::random(m, r, n, seed).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed + 1);
            for _ in 0..500 {
                let msg: Vec<u8> = (0..code.k()).map(|_| rng.gen_range(0..2u8)).collect();
                let e = random_error(code.n(), rng.gen_range(0..=code.t()), &mut rng);
                let cw = code.encode(&msg).unwrap();
                let received: Vec<u8> = cw.iter().zip(&e).map(|(&c, &x)| c ^ x).collect();
                let (pat, trace) = patterson_decode(&code, &received).unwrap();
                let newt = decode(&code, &received, DecodeMode::Both, Profile::Adaptive).unwrap();
                assert_eq!(pat.error, newt.error, "m={m} r={r}");
                assert_eq!(pat.message, newt.message);
                assert_eq!(pat.error, e);
                assert_eq!(trace.degrees.len(), trace.eea_iterations);
                // Remainder degrees strictly decrease along the run.
                for pair in trace.degrees.windows(2) {
                    assert!(
                        pair[1].0 < pair[0].0,
                        "remainder degrees must drop: {trace:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn iteration_count_varies_with_weight() {
        // Existential: for some pair of weights the multiset of EEA iteration
        // counts differs, while the fixed-profile Newton cost does not.
        let code = GoppaCode::random(5, 3, 31, 79).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(83);
        let mut iter_sets: Vec<Vec<usize>> = Vec::new();
        let mut newton_costs = Vec::new();
        for w in 0..=code.t() {
            let mut iters = Vec::new();
            for _ in 0..200 {
                let msg: Vec<u8> = (0..code.k()).map(|_| rng.gen_range(0..2u8)).collect();
                let e = random_error(code.n(), w, &mut rng);
                let cw = code.encode(&msg).unwrap();
                let received: Vec<u8> = cw.iter().zip(&e).map(|(&c, &x)| c ^ x).collect();
                let (_, trace) = patterson_decode(&code, &received).unwrap();
                iters.push(trace.eea_iterations);
                let fixed = decode(&code, &received, DecodeMode::Both, Profile::Fixed).unwrap();
                newton_costs.push(fixed.ops);
            }
            iters.sort_unstable();
            iter_sets.push(iters);
        }
        assert!(
            iter_sets.windows(2).any(|w| w[0] != w[1]),
            "EEA iterations should vary across weights: {iter_sets:?}"
        );
        assert!(newton_costs.windows(2).all(|w| w[0] == w[1]));
    }
}
