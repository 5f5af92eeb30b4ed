//! Binary Goppa codes with a Newton-identity decoder.
//!
//! The library builds irreducible binary Goppa codes Γ(L, g) over F_{2^m},
//! decodes them by solving the Newton-identity Hankel system per basis
//! component and reading error positions off the Q polynomial of the extended
//! syndrome sequence, and cross-validates against a Patterson decoder and a
//! brute-force oracle. Decoding work is instrumented with an operation
//! counter; the fixed profile performs the same number of field operations
//! for every error weight up to capacity, in contrast to Patterson's
//! weight-dependent Euclidean iteration count. A toy McEliece wrapper shows
//! the decoder in its usual context.
//!
//! ```
//! use goppa::{GoppaCode, decode, DecodeMode, Profile};
//!
//! let code = GoppaCode::random(6, 3, 63, 9).unwrap();
//! let msg = vec![1u8; code.k()];
//! let mut word = code.encode(&msg).unwrap();
//! word[5] ^= 1;
//! word[40] ^= 1;
//! let res = decode(&code, &word, DecodeMode::Both, Profile::Fixed).unwrap();
//! assert_eq!(res.message, msg);
//! assert_eq!(res.error.iter().filter(|&&b| b != 0).count(), 2);
//! ```

pub mod binmat;
pub mod circulant;
pub mod code;
pub mod gf2m;
pub mod mceliece;
pub mod newton;
pub mod patterson;
pub mod poly;

pub use code::{CodeError, GoppaCode, MembershipTest};
pub use gf2m::{Field, FieldElement};
pub use newton::{decode, DecodeError, DecodeMode, DecodeResult, OpCounter, Profile};
pub use poly::Poly;
