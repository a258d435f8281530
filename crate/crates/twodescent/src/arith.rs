//! Exact integer primitives: deterministic primality for 64-bit inputs,
//! Legendre symbols via the Jacobi reciprocity iteration, and least positive
//! residues mod 8.

use crate::Error;

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (a as u128 * b as u128 % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Witnesses proving primality for every `m < 3.3 · 10²⁴`, so for all of u64.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller–Rabin primality test, exact for all 64-bit inputs.
pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    for p in MR_WITNESSES {
        if m.is_multiple_of(p) {
            return m == p;
        }
    }
    let s = (m - 1).trailing_zeros();
    let d = (m - 1) >> s;
    'witness: for a in MR_WITNESSES {
        let mut x = pow_mod(a, d, m);
        if x == 1 || x == m - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, m);
            if x == m - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Legendre symbol (a/p) for an odd prime p: +1 for a nonzero square mod p,
/// −1 for a nonsquare, 0 when p | a. Computed by the Jacobi reciprocity
/// iteration, so no modular exponentiation is needed.
pub fn legendre(a: i64, p: u64) -> i32 {
    debug_assert!(p > 2 && p % 2 == 1, "p must be an odd prime");
    let mut a = a.rem_euclid(p as i64) as u64;
    if a == 0 {
        return 0;
    }
    let mut b = p;
    let mut sign = 1i32;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            // second supplement: (2/b) = −1 iff b ≡ ±3 (mod 8)
            if matches!(b % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut b);
        // reciprocity flips the sign iff both are ≡ 3 (mod 4)
        if a % 4 == 3 && b % 4 == 3 {
            sign = -sign;
        }
        a %= b;
    }
    if b == 1 {
        sign
    } else {
        0
    }
}

/// Least positive residue of an odd integer modulo 8, i.e. a value in
/// {1, 3, 5, 7}; negative inputs are reduced into the same range.
pub fn mod8(m: i64) -> Result<u8, Error> {
    if m % 2 == 0 {
        return Err(Error::EvenValue(m));
    }
    Ok(m.rem_euclid(8) as u8)
}
