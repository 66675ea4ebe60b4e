//! Radix powers `R^n (mod q)` in `O(lg n)` Montgomery operations.
//!
//! The schedule is found by working backwards from `n`: each step roughly
//! halves the power (halving plus one, because every Montgomery multiply
//! consumes one factor of `R`), and the parity of the power picks between a
//! plain square (`2p - 1`) and a downshift followed by a multiply (`2p - 2`).
//! The bits are replayed forwards from `R^2`.

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::mont::{mmul_one, mod_add, mont_mul, mont_sqr, MontCtx};
use crate::word::Word;

/// `R^2 mod q`.
///
/// `R mod q` comes from one native remainder; `b/2` modular doublings lift it
/// to `R^(3/2)` and a single Montgomery square lands on `R^2`.
pub fn r2_mod_q<W: Word>(ctx: &MontCtx<W>) -> W {
    let q = ctx.q();
    let mut s = ctx.r_mod_q();
    for _ in 0..W::BITS / 2 {
        s = mod_add(s, s, q);
    }
    mont_sqr(s, ctx)
}

/// Squaring/downshift schedule for [`radix_power`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PoweringBitmap {
    /// Bit `i` set means step `i` is a downshift-multiply (`2p - 2`).
    pub bits: u32,
    /// Number of meaningful bits.
    pub len: u32,
    /// Power reached by the special-cased prologue, 4 or 5.
    pub p_final: u32,
}

impl PoweringBitmap {
    pub fn set_bits(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn bit(&self, i: u32) -> bool {
        self.bits >> i & 1 == 1
    }
}

/// Builds the schedule for `R^n`, `n >= 4`.
pub fn build_bitmap(n: u64) -> Result<PoweringBitmap> {
    assert!(n >= 4, "powering bitmap needs n >= 4");
    if n > u32::MAX as u64 {
        return Err(Error::WordCountTooLarge(n));
    }
    let mut p = n;
    let mut bits = 0u32;
    let mut len = 0u32;
    while p > 5 {
        if p.is_multiple_of(2) {
            bits |= 1 << len;
        }
        p = p / 2 + 1;
        len += 1;
    }
    Ok(PoweringBitmap {
        bits,
        len,
        p_final: p as u32,
    })
}

/// Low-level Montgomery kernel invoked by a powering step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MontCall {
    MontSqr,
    MontMul,
    MmulOne,
}

/// One step of the radix-powering sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerStep {
    pub pow_in: u64,
    /// Bitmap bit driving this step; `None` for the prologue.
    pub bit: Option<bool>,
    pub calls: Vec<MontCall>,
    pub pow_out: u64,
}

/// `R^n mod q`.
pub fn radix_power<W: Word>(n: u64, ctx: &MontCtx<W>) -> Result<W> {
    radix_power_with(n, ctx, |_| {})
}

/// [`radix_power`] together with the sequence of steps it performed.
/// The bootstrap of `R^2` is not part of the trace.
pub fn radix_power_traced<W: Word>(n: u64, ctx: &MontCtx<W>) -> Result<(W, Vec<PowerStep>)> {
    let mut steps = Vec::new();
    let v = radix_power_with(n, ctx, |s| steps.push(s))?;
    Ok((v, steps))
}

fn radix_power_with<W: Word, F: FnMut(PowerStep)>(
    n: u64,
    ctx: &MontCtx<W>,
    mut sink: F,
) -> Result<W> {
    let q = ctx.q();
    match n {
        0 => return Ok(W::one() % q),
        1 => return Ok(ctx.r_mod_q()),
        2 => return Ok(r2_mod_q(ctx)),
        _ => {}
    }
    let r2 = r2_mod_q(ctx);
    let r3 = mont_sqr(r2, ctx);
    sink(PowerStep {
        pow_in: 2,
        bit: None,
        calls: vec![MontCall::MontSqr],
        pow_out: 3,
    });
    if n == 3 {
        return Ok(r3);
    }

    let bm = build_bitmap(n)?;
    let mut pow;
    let mut p;
    if bm.p_final == 4 {
        pow = mont_mul(r2, r3, ctx);
        p = 4;
        sink(PowerStep {
            pow_in: 3,
            bit: None,
            calls: vec![MontCall::MontMul],
            pow_out: 4,
        });
    } else {
        pow = mont_sqr(r3, ctx);
        p = 5;
        sink(PowerStep {
            pow_in: 3,
            bit: None,
            calls: vec![MontCall::MontSqr],
            pow_out: 5,
        });
    }

    for i in (0..bm.len).rev() {
        let down = bm.bit(i);
        let pow_in = p;
        if down {
            let ptmp = mmul_one(pow, ctx);
            pow = mont_mul(ptmp, pow, ctx);
            p = 2 * p - 2;
        } else {
            pow = mont_sqr(pow, ctx);
            p = 2 * p - 1;
        }
        sink(PowerStep {
            pow_in,
            bit: Some(down),
            calls: if down {
                vec![MontCall::MmulOne, MontCall::MontMul]
            } else {
                vec![MontCall::MontSqr]
            },
            pow_out: p,
        });
    }
    debug_assert_eq!(p, n);
    Ok(pow)
}

/// Which scaled-remainder loop to run for an `n`-word dividend.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Carry-chain loop, scaled by `R^(n+1)`.
    UseA,
    /// Low-word loop, scaled by `R^n`.
    UseB,
}

/// Picks the loop whose radix power needs fewer downshift-multiplies.
///
/// The A loop runs one extra iteration, charged as one unit; ties go to B.
pub fn choose_variant(n: u64) -> Variant {
    if n <= 3 {
        return Variant::UseB;
    }
    match (build_bitmap(n + 1), build_bitmap(n)) {
        (Ok(a), Ok(b)) if a.set_bits() + 1 < b.set_bits() => Variant::UseA,
        _ => Variant::UseB,
    }
}

/// Statistics over adjacent bitmap pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Census {
    /// Sum of `|popcount(bm(n+1)) - popcount(bm(n))|`.
    pub total_abs_diff: u64,
    /// Sum of the signed differences.
    pub total_signed_diff: i64,
    pub pairs: u64,
    pub max_diff: u32,
}

impl Census {
    /// Exact mean absolute difference.
    pub fn mean(&self) -> Ratio<u64> {
        Ratio::new(self.total_abs_diff, self.pairs)
    }

    pub fn mean_f64(&self) -> f64 {
        self.total_abs_diff as f64 / self.pairs as f64
    }
}

/// Compares the bitmap set-bit counts of `n` and `n + 1` for every `n` in
/// the inclusive range `[n_min, n_max]`.
pub fn bitmap_census(n_min: u64, n_max: u64) -> Result<Census> {
    assert!(
        6 <= n_min && n_min < n_max,
        "census range must satisfy 6 <= n_min < n_max"
    );
    let mut census = Census {
        total_abs_diff: 0,
        total_signed_diff: 0,
        pairs: 0,
        max_diff: 0,
    };
    let mut prev = build_bitmap(n_min)?.set_bits();
    for n in n_min..=n_max {
        let next = build_bitmap(n + 1)?.set_bits();
        let d = next as i64 - prev as i64;
        census.total_abs_diff += d.unsigned_abs();
        census.total_signed_diff += d;
        census.max_diff = census.max_diff.max(d.unsigned_abs() as u32);
        census.pairs += 1;
        prev = next;
    }
    Ok(census)
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: u64 = 16357897499336320049;

    fn ctx() -> MontCtx<u64> {
        MontCtx::new(Q).unwrap()
    }

    #[test]
    fn r2_values() {
        assert_eq!(r2_mod_q(&ctx()), 5575771501247148520);
        assert_eq!(r2_mod_q(&MontCtx::new(3u64).unwrap()), 1);
        let c = MontCtx::new(u64::MAX - 58).unwrap();
        // R = 2^64 = 59 (mod 2^64 - 59)
        assert_eq!(r2_mod_q(&c), 59 * 59);
    }

    #[test]
    fn bitmaps() {
        assert_eq!(
            build_bitmap(16).unwrap(),
            PoweringBitmap {
                bits: 0b01,
                len: 2,
                p_final: 5
            }
        );
        assert_eq!(
            build_bitmap(17).unwrap(),
            PoweringBitmap {
                bits: 0b00,
                len: 2,
                p_final: 5
            }
        );
        assert_eq!(build_bitmap(4).unwrap().len, 0);
        assert_eq!(build_bitmap(5).unwrap().p_final, 5);
        assert_eq!(
            build_bitmap(1 << 33),
            Err(Error::WordCountTooLarge(1 << 33))
        );
    }

    #[test]
    fn worst_case_pairs() {
        let a = build_bitmap(1025).unwrap();
        assert_eq!((a.bits, a.len), (0, 8));
        let b = build_bitmap(1026).unwrap();
        assert_eq!((b.bits, b.len), (0x1ff, 9));
    }

    #[test]
    fn small_powers() {
        let c = ctx();
        assert_eq!(radix_power(0, &c).unwrap(), 1);
        assert_eq!(radix_power(1, &c).unwrap(), c.r_mod_q());
        assert_eq!(radix_power(16, &c).unwrap(), 1547775041475743422);
        assert_eq!(radix_power(17, &c).unwrap(), 8502984233828494641);
    }

    #[test]
    fn variant_choice() {
        assert_eq!(choose_variant(1), Variant::UseB);
        assert_eq!(choose_variant(16), Variant::UseB);
        assert_eq!(choose_variant(1025), Variant::UseB);
        // bm(1027) has 8 set bits against 9 for bm(1026): a wash, so B.
        assert_eq!(choose_variant(1026), Variant::UseB);
    }

    #[test]
    fn tiny_census() {
        // bm(6) = 1, bm(7) = 0, bm(8) = 1 (one bit each step)
        let c = bitmap_census(6, 7).unwrap();
        assert_eq!(c.pairs, 2);
        assert_eq!(c.total_abs_diff, 2);
        assert_eq!(c.mean(), Ratio::from_integer(1));
    }
}
