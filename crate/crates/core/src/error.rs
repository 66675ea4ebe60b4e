use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus must be odd")]
    EvenModulus,
    #[error("modulus must be at least 3")]
    ModulusTooSmall,
    #[error("divisor must be at least 2")]
    DivisorTooSmall,
    #[error("odd part of the divisor exceeds 128 bits")]
    UnsupportedWidth,
    #[error("unsupported folding factor {0}; expected 1, 2 or 4")]
    UnsupportedFold(usize),
    #[error("low inverse word does not satisfy q_lo * qinv_lo = 1 (mod 2^64)")]
    InverseMismatch,
    #[error("remainder is inconsistent with the dividend (final carry {carry:#x})")]
    InconsistentRemainder { carry: u128 },
    #[error("exponent {exponent} too large for {bits}-bit arithmetic")]
    ExponentTooLarge { exponent: u64, bits: u32 },
    #[error("word count {0} exceeds the powering bitmap capacity")]
    WordCountTooLarge(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
