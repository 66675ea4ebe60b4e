//! Right-to-left multiword division by one- and two-word divisors.
//!
//! Remainders come from a carry chain that consumes the dividend from its
//! least significant word upwards using only low- and high-half products,
//! followed by one Montgomery multiply by a radix power. Quotients come from
//! a second pass seeded with that remainder. Both passes can be split into
//! 1, 2 or 4 interleaved chains.
//!
//! ```
//! use montdiv::{div_rem, BigUint, DivisorSpec};
//!
//! let x: BigUint = "1000000000000000000000000000007".parse().unwrap();
//! let d = DivisorSpec::new(&BigUint::from_u64(1_000_003)).unwrap();
//! let (q, r) = div_rem(&x, &d).unwrap();
//! assert_eq!(q.to_string(), "999997000008999973000080");
//! assert_eq!(r.to_string(), "999767");
//! ```

pub mod bench;
pub mod biguint;
pub mod divisor;
pub mod error;
pub mod inverse;
pub mod limbfile;
pub mod mont;
pub mod oracle;
pub mod pow2;
pub mod quotient;
pub mod radix_power;
pub mod remainder;
pub mod word;

pub use biguint::{BigUint, ParseBigUintError};
pub use divisor::DivisorSpec;
pub use error::{Error, Result};
pub use inverse::{make_ctx, AnyCtx};
pub use mont::MontCtx;
pub use pow2::{fermat_has_factor, mersenne_has_factor, neg_pow2_mod, pos_pow2_mod};
pub use quotient::{div_rem, div_rem_folded, quotient};
pub use radix_power::{radix_power, Census};
pub use remainder::{divides, is_div, remainder, remainder_folded, Fold};
pub use word::Word;

/// 64-bit machine word, radix `2^64`.
pub type Word64 = u64;
/// 128-bit machine word, radix `2^128`.
pub type Word128 = u128;
pub type MontCtx64 = MontCtx<Word64>;
pub type MontCtx128 = MontCtx<Word128>;
