//! Desk-scale McEliece wrapper around the Newton decoder. Demonstration
//! only: toy parameters, no padding, no security claims.
//!
//! Keys: G' = S·G·P with S a random invertible k x k binary matrix and P a
//! random n x n permutation. Encryption adds a random weight-t error;
//! decryption unpermutes, decodes with the fixed profile (so the work done is
//! independent of the actual error weight), and unscrambles the message.

use crate::binmat::{xor_words, BinMatrix};
use crate::code::{CodeError, FileError, GoppaCode};
use crate::newton::{decode, DecodeError, DecodeMode, OpCounter, Profile};
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MAX_TOY_M: usize = 8;

#[derive(Debug, Clone)]
pub struct PublicKey {
    /// Scrambled generator matrix G' = S·G·P.
    pub g_pub: BinMatrix,
    /// Public error weight.
    pub t: usize,
}

#[derive(Debug, Clone)]
pub struct PrivateKey {
    pub code: GoppaCode,
    pub s: BinMatrix,
    pub s_inv: BinMatrix,
    /// Permutation as a vector: position i of the plain word moves to
    /// position perm[i] of the ciphertext word.
    pub perm: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct KeyPair {
    pub public: PublicKey,
    pub private: PrivateKey,
}

impl KeyPair {
    /// Deterministic key generation. Builds a random irreducible code at
    /// (m, r, n), a random invertible scrambler, and a random permutation.
    pub fn generate(m: usize, r: usize, n: usize, seed: u64) -> Result<KeyPair, CodeError> {
        assert!(m <= MAX_TOY_M, "toy parameters only (m <= {MAX_TOY_M})");
        let code = GoppaCode::random(m, r, n, seed)?;
        let k = code.k();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6d63_656c_6965_6365);

        let (s, s_inv) = loop {
            let cand = BinMatrix::from_rows(
                (0..k)
                    .map(|_| (0..k).map(|_| rng.gen_range(0..2u8)).collect())
                    .collect(),
            );
            if let Some(inv) = cand.inverse() {
                break (cand, inv);
            }
        };
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut rng);

        let sg = s.mul(code.generator());
        let mut g_pub = BinMatrix::zeros(k, n);
        for i in 0..k {
            for j in 0..n {
                g_pub.set(i, perm[j], sg.get(i, j));
            }
        }
        debug_assert_eq!(g_pub.rank(), k);

        Ok(KeyPair {
            public: PublicKey { g_pub, t: code.t() },
            private: PrivateKey {
                code,
                s,
                s_inv,
                perm,
            },
        })
    }
}

impl PublicKey {
    pub fn k(&self) -> usize {
        self.g_pub.rows()
    }

    pub fn n(&self) -> usize {
        self.g_pub.cols()
    }

    /// c = msg·G' + e with e a random weight-t pattern drawn from error_seed.
    pub fn encrypt(&self, msg: &[u8], error_seed: u64) -> Result<Vec<u8>, CodeError> {
        let e = random_weight_pattern(self.n(), self.t, error_seed);
        self.encrypt_with_error(msg, &e)
    }

    pub fn encrypt_with_error(&self, msg: &[u8], error: &[u8]) -> Result<Vec<u8>, CodeError> {
        if msg.len() != self.k() {
            return Err(CodeError::LengthMismatch {
                expected: self.k(),
                got: msg.len(),
            });
        }
        if error.len() != self.n() {
            return Err(CodeError::LengthMismatch {
                expected: self.n(),
                got: error.len(),
            });
        }
        Ok(xor_words(&self.g_pub.row_vec_mul(msg), error))
    }
}

impl PrivateKey {
    pub fn decrypt(&self, ciphertext: &[u8]) -> Result<Vec<u8>, DecodeError> {
        Ok(self.decrypt_with_ops(ciphertext)?.0)
    }

    /// Decrypts and reports the decoder's operation counts; with the fixed
    /// profile these are independent of the injected error weight.
    pub fn decrypt_with_ops(&self, ciphertext: &[u8]) -> Result<(Vec<u8>, OpCounter), DecodeError> {
        let n = self.code.n();
        if ciphertext.len() != n {
            return Err(DecodeError::LengthMismatch {
                expected: n,
                got: ciphertext.len(),
            });
        }
        // Undo the permutation: plain position i came from ciphertext perm[i].
        let unpermuted: Vec<u8> = (0..n).map(|i| ciphertext[self.perm[i]]).collect();
        // The decoder verifies the corrected word and caps the error weight at
        // t, so a ciphertext further than t from every codeword cannot slip
        // through silently.
        let result = decode(&self.code, &unpermuted, DecodeMode::Both, Profile::Fixed)?;
        let msg = self.s_inv.row_vec_mul(&result.message);
        debug_assert_eq!(self.s.row_vec_mul(&msg), result.message);
        Ok((msg, result.ops))
    }
}

/// Deterministic weight-w error pattern.
pub fn random_weight_pattern(n: usize, w: usize, seed: u64) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(&mut rng);
    let mut e = vec![0u8; n];
    for &i in idx.iter().take(w) {
        e[i] = 1;
    }
    e
}

/// Key file: the code file format followed by `S:` and `P:` binary blocks.
pub fn keypair_to_file_string(kp: &KeyPair) -> String {
    let mut out = kp.private.code.to_file_string();
    out.push_str("S:\n");
    for i in 0..kp.private.s.rows() {
        let row: String = kp
            .private
            .s
            .row(i)
            .iter()
            .map(|&b| if b == 1 { '1' } else { '0' })
            .collect();
        out.push_str(&row);
        out.push('\n');
    }
    out.push_str("P:\n");
    let n = kp.private.perm.len();
    for i in 0..n {
        let mut row = vec!['0'; n];
        row[kp.private.perm[i]] = '1';
        out.push_str(&row.iter().collect::<String>());
        out.push('\n');
    }
    out
}

pub fn keypair_from_file_string(text: &str) -> Result<KeyPair, FileError> {
    let s_start = text.find("\nS:\n").ok_or(FileError::MalformedLine("S:"))?;
    let code_part = &text[..s_start + 1];
    let rest = &text[s_start + 4..];
    let p_start = rest.find("P:\n").ok_or(FileError::MalformedLine("P:"))?;
    let s_part = &rest[..p_start];
    let p_part = &rest[p_start + 3..];

    let code = GoppaCode::from_file_string(code_part)?;
    let parse_block = |block: &str, cols: usize| -> Result<Vec<Vec<u8>>, FileError> {
        block
            .lines()
            .map(|line| {
                let row: Vec<u8> = line
                    .chars()
                    .map(|c| match c {
                        '0' => Ok(0u8),
                        '1' => Ok(1u8),
                        _ => Err(FileError::BadElement(line.to_string())),
                    })
                    .collect::<Result<_, _>>()?;
                if row.len() != cols {
                    return Err(FileError::MalformedLine("matrix row"));
                }
                Ok(row)
            })
            .collect()
    };

    let s_rows = parse_block(s_part, code.k())?;
    if s_rows.len() != code.k() {
        return Err(FileError::MalformedLine("S block"));
    }
    let s = BinMatrix::from_rows(s_rows);
    let s_inv = s
        .inverse()
        .ok_or(FileError::MalformedLine("S block (singular)"))?;

    let p_rows = parse_block(p_part, code.n())?;
    if p_rows.len() != code.n() {
        return Err(FileError::MalformedLine("P block"));
    }
    let mut perm = vec![0usize; code.n()];
    let mut seen = vec![false; code.n()];
    for (i, row) in p_rows.iter().enumerate() {
        let ones: Vec<usize> = row
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == 1)
            .map(|(j, _)| j)
            .collect();
        if ones.len() != 1 || seen[ones[0]] {
            return Err(FileError::MalformedLine("P block (not a permutation)"));
        }
        perm[i] = ones[0];
        seen[ones[0]] = true;
    }

    let k = code.k();
    let sg = s.mul(code.generator());
    let mut g_pub = BinMatrix::zeros(k, code.n());
    for i in 0..k {
        for j in 0..code.n() {
            g_pub.set(i, perm[j], sg.get(i, j));
        }
    }
    let t = code.t();
    Ok(KeyPair {
        public: PublicKey { g_pub, t },
        private: PrivateKey {
            code,
            s,
            s_inv,
            perm,
        },
    })
}
