//! Slow schoolbook arithmetic for cross-checking the fast paths.
//!
//! Nothing here touches the Montgomery code: values are split into 32-bit
//! digits and handled with textbook long multiplication and long division.
//! Meant for tests and for generating reference values, not for production.

use crate::biguint::BigUint;

fn to_digits(x: &BigUint) -> Vec<u32> {
    let mut d: Vec<u32> = x
        .words()
        .iter()
        .flat_map(|&w| [w as u32, (w >> 32) as u32])
        .collect();
    trim(&mut d);
    d
}

fn from_digits(d: &[u32]) -> BigUint {
    let words: Vec<u64> = d
        .chunks(2)
        .map(|c| c[0] as u64 | (*c.get(1).unwrap_or(&0) as u64) << 32)
        .collect();
    if words.is_empty() {
        BigUint::zero()
    } else {
        BigUint::from_words(words)
    }
}

fn trim(d: &mut Vec<u32>) {
    while d.last() == Some(&0) {
        d.pop();
    }
}

fn mul_digits(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = vec![0u32; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        let mut carry = 0u64;
        for (j, &bj) in b.iter().enumerate() {
            let t = ai as u64 * bj as u64 + out[i + j] as u64 + carry;
            out[i + j] = t as u32;
            carry = t >> 32;
        }
        out[i + b.len()] = carry as u32;
    }
    trim(&mut out);
    out
}

/// Long division of `u` by `v` (`v` non-empty, top digit non-zero).
fn divmod_digits(u: &[u32], v: &[u32]) -> (Vec<u32>, Vec<u32>) {
    if u.len() < v.len() {
        return (Vec::new(), u.to_vec());
    }
    if v.len() == 1 {
        let d = v[0] as u64;
        let mut q = vec![0u32; u.len()];
        let mut rem = 0u64;
        for i in (0..u.len()).rev() {
            let cur = rem << 32 | u[i] as u64;
            q[i] = (cur / d) as u32;
            rem = cur % d;
        }
        trim(&mut q);
        let mut r = vec![rem as u32];
        trim(&mut r);
        return (q, r);
    }
    // Normalize so the divisor's top digit has its high bit set.
    let s = v[v.len() - 1].leading_zeros();
    let shl = |x: &[u32], extra: bool| -> Vec<u32> {
        let mut out = Vec::with_capacity(x.len() + 1);
        let mut carry = 0u32;
        for &d in x {
            out.push(if s == 0 { d } else { d << s | carry });
            carry = if s == 0 { 0 } else { d >> (32 - s) };
        }
        if extra {
            out.push(carry);
        }
        out
    };
    let vn = shl(v, false);
    let mut un = shl(u, true);
    let n = vn.len();
    let m = u.len() - n;
    let b = 1u64 << 32;
    let mut q = vec![0u32; m + 1];
    for j in (0..=m).rev() {
        let num = (un[j + n] as u64) << 32 | un[j + n - 1] as u64;
        let mut qhat = num / vn[n - 1] as u64;
        let mut rhat = num % vn[n - 1] as u64;
        while qhat >= b || qhat * vn[n - 2] as u64 > (rhat << 32 | un[j + n - 2] as u64) {
            qhat -= 1;
            rhat += vn[n - 1] as u64;
            if rhat >= b {
                break;
            }
        }
        let mut borrow = 0i64;
        let mut carry = 0u64;
        for i in 0..n {
            let p = qhat * vn[i] as u64 + carry;
            carry = p >> 32;
            let t = un[i + j] as i64 - borrow - (p & 0xffff_ffff) as i64;
            un[i + j] = t as u32;
            borrow = if t < 0 { 1 } else { 0 };
        }
        let t = un[j + n] as i64 - borrow - carry as i64;
        un[j + n] = t as u32;
        if t < 0 {
            qhat -= 1;
            let mut c = 0u64;
            for i in 0..n {
                let s = un[i + j] as u64 + vn[i] as u64 + c;
                un[i + j] = s as u32;
                c = s >> 32;
            }
            un[j + n] = un[j + n].wrapping_add(c as u32);
        }
        q[j] = qhat as u32;
    }
    let mut r: Vec<u32> = (0..n)
        .map(|i| {
            if s == 0 {
                un[i]
            } else {
                un[i] >> s | un[i + 1] << (32 - s)
            }
        })
        .collect();
    trim(&mut q);
    trim(&mut r);
    (q, r)
}

/// Exact product.
pub fn oracle_mul(x: &BigUint, y: &BigUint) -> BigUint {
    from_digits(&mul_digits(&to_digits(x), &to_digits(y)))
}

/// `(x / d, x % d)`. Panics if `d` is zero.
pub fn oracle_divmod(x: &BigUint, d: &BigUint) -> (BigUint, BigUint) {
    let dv = to_digits(d);
    assert!(!dv.is_empty(), "division by zero");
    let (q, r) = divmod_digits(&to_digits(x), &dv);
    (from_digits(&q), from_digits(&r))
}

/// `base^exp mod m` by square-and-multiply. Panics if `m` is zero.
pub fn oracle_powmod(base: &BigUint, exp: &BigUint, m: &BigUint) -> BigUint {
    let md = to_digits(m);
    assert!(!md.is_empty(), "zero modulus");
    let reduce = |x: &[u32]| divmod_digits(x, &md).1;
    let mut acc = reduce(&[1]);
    let b = reduce(&to_digits(base));
    let e = to_digits(exp);
    for &digit in e.iter().rev() {
        for bit in (0..32).rev() {
            acc = reduce(&mul_digits(&acc, &acc));
            if digit >> bit & 1 == 1 {
                acc = reduce(&mul_digits(&acc, &b));
            }
        }
    }
    from_digits(&acc)
}
