//! The finite square-class group Q(S,2) = ⟨−1, 2, p₁, …, pₙ⟩ ⊆ Q×/Q×²
//! attached to D = p₁^{e₁}···pₙ^{eₙ}, together with its two distinguished
//! subgroups Q_{2D} = ⟨pᵢ⟩ (odd positive classes) and Q_{−2D} = ⟨−1, pᵢ⟩
//! (odd classes). Exponents 1 and 3 collapse to the same classes, so every
//! computation downstream is automatically invariant under eᵢ ∈ {1, 3}.

use crate::arith;
use crate::Error;
use num_bigint::BigInt;

/// Hard cap on the number of prime factors: a subset mask must fit in u64.
pub const MAX_PRIMES: usize = 64;

/// Largest n for which a full subgroup enumeration (2ⁿ⁺² classes at most) is
/// permitted.
pub const ENUM_BOUND: usize = 20;

/// D as an ordered list of distinct odd primes with exponents in {1, 3}.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FactoredD {
    primes: Vec<u64>,
    exponents: Vec<u8>,
}

impl FactoredD {
    /// Validates and builds a factorization. Primes must be strictly
    /// increasing odd primes; every exponent must be 1 or 3.
    pub fn new(primes: Vec<u64>, exponents: Vec<u8>) -> Result<Self, Error> {
        if primes.is_empty() {
            return Err(Error::EmptyFactorization);
        }
        if primes.len() > MAX_PRIMES {
            return Err(Error::TooManyPrimes {
                n: primes.len(),
                limit: MAX_PRIMES,
            });
        }
        if exponents.len() != primes.len() {
            return Err(Error::LengthMismatch {
                expected: primes.len(),
                got: exponents.len(),
            });
        }
        let mut last = 0u64;
        for &p in &primes {
            if p < 3 || p % 2 == 0 || !arith::is_prime(p) {
                return Err(Error::NotOddPrime(p));
            }
            if p <= last {
                return Err(Error::PrimesOutOfOrder(p));
            }
            last = p;
        }
        for &e in &exponents {
            if e != 1 && e != 3 {
                return Err(Error::BadExponent(e));
            }
        }
        Ok(FactoredD { primes, exponents })
    }

    /// Builds the squarefree D with the given primes (all exponents 1).
    pub fn squarefree(primes: Vec<u64>) -> Result<Self, Error> {
        let exps = vec![1; primes.len()];
        FactoredD::new(primes, exps)
    }

    pub fn n(&self) -> usize {
        self.primes.len()
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn exponents(&self) -> &[u8] {
        &self.exponents
    }

    /// The integer D = ∏ pᵢ^{eᵢ}; may exceed machine width, hence a bigint.
    pub fn d_value(&self) -> BigInt {
        let mut d = BigInt::from(1);
        for (&p, &e) in self.primes.iter().zip(&self.exponents) {
            for _ in 0..e {
                d *= p;
            }
        }
        d
    }

    /// Mask selecting every prime factor. Since all exponents are odd, this
    /// is also the prime part of the class of D (and of ±2D).
    pub fn full_mask(&self) -> u64 {
        if self.n() == 64 {
            u64::MAX
        } else {
            (1u64 << self.n()) - 1
        }
    }

    /// The class of 2D.
    pub fn two_d(&self) -> SquareClass {
        SquareClass {
            sign: false,
            two: true,
            mask: self.full_mask(),
        }
    }

    /// The class of −2D.
    pub fn minus_two_d(&self) -> SquareClass {
        SquareClass {
            sign: true,
            two: true,
            mask: self.full_mask(),
        }
    }
}

/// An element of Q(S,2) in canonical form: a sign bit (factor −1), a two bit
/// (factor 2), and a subset mask over the context primes. The group law is
/// bitwise XOR, making every element its own inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SquareClass {
    pub sign: bool,
    pub two: bool,
    pub mask: u64,
}

/// The three subgroups a computation may range over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassSubgroup {
    /// Q_{2D} = ⟨p₁, …, pₙ⟩: positive odd classes (2ⁿ of them).
    OddPositive,
    /// Q_{−2D} = ⟨−1, p₁, …, pₙ⟩: odd classes of either sign (2ⁿ⁺¹).
    Odd,
    /// All of Q(S,2) (2ⁿ⁺²).
    Full,
}

impl SquareClass {
    pub const IDENTITY: SquareClass = SquareClass {
        sign: false,
        two: false,
        mask: 0,
    };

    /// Group law of Q×/Q×²: XOR of all three fields.
    pub fn multiply(self, other: SquareClass) -> SquareClass {
        SquareClass {
            sign: self.sign ^ other.sign,
            two: self.two ^ other.two,
            mask: self.mask ^ other.mask,
        }
    }

    pub fn is_identity(self) -> bool {
        self == SquareClass::IDENTITY
    }

    /// Membership in one of the distinguished subgroups.
    pub fn lies_in(self, which: ClassSubgroup) -> bool {
        match which {
            ClassSubgroup::OddPositive => !self.sign && !self.two,
            ClassSubgroup::Odd => !self.two,
            ClassSubgroup::Full => true,
        }
    }

    /// Deterministic ordering key: sign·2^{n+1} + two·2ⁿ + mask, ascending.
    /// Lists the positive odd classes first, matching the canonical member
    /// order used in all output.
    pub fn ord_key(self, n: usize) -> u128 {
        debug_assert!(n <= MAX_PRIMES);
        ((self.sign as u128) << (n + 1)) | ((self.two as u128) << n) | self.mask as u128
    }

    /// Canonical signed integer representative (−1)^sign · 2^two · ∏ pᵢ.
    pub fn representative(self, ctx: &FactoredD) -> BigInt {
        let mut v = BigInt::from(if self.two { 2 } else { 1 });
        for (i, &p) in ctx.primes().iter().enumerate() {
            if self.mask >> i & 1 == 1 {
                v *= p;
            }
        }
        if self.sign {
            -v
        } else {
            v
        }
    }

    /// Residue of the canonical representative mod 8, computed generator-wise
    /// (no big integers): odd classes land in {1,3,5,7}, even ones in {2,6}.
    pub fn mod8(self, ctx: &FactoredD) -> u8 {
        let mut r: u8 = if self.sign { 7 } else { 1 };
        for (i, &p) in ctx.primes().iter().enumerate() {
            if self.mask >> i & 1 == 1 {
                r = (r * (p % 8) as u8) % 8;
            }
        }
        if self.two {
            r = (2 * r) % 8;
        }
        r
    }

    /// Legendre symbol of the representative at an odd prime p, evaluated as
    /// the product of the generators' symbols. Returns 0 iff p divides the
    /// representative (p in the mask).
    pub fn legendre_at(self, p: u64, ctx: &FactoredD) -> i32 {
        let mut r = 1i32;
        if self.sign {
            r *= arith::legendre(-1, p);
        }
        if self.two {
            r *= arith::legendre(2, p);
        }
        for (i, &q) in ctx.primes().iter().enumerate() {
            if self.mask >> i & 1 == 1 {
                r *= arith::legendre(q as i64, p);
            }
        }
        r
    }
}

/// Canonicalizes a nonzero integer whose odd prime support lies inside the
/// context: square parts vanish, so e.g. 27 ↦ the class of 3.
pub fn class_of(value: i64, ctx: &FactoredD) -> Result<SquareClass, Error> {
    if value == 0 {
        return Err(Error::SupportOutsideContext(0));
    }
    let sign = value < 0;
    let mut v = value.unsigned_abs();
    let mut two = false;
    while v.is_multiple_of(2) {
        two = !two;
        v /= 2;
    }
    let mut mask = 0u64;
    for (i, &p) in ctx.primes().iter().enumerate() {
        while v.is_multiple_of(p) {
            mask ^= 1 << i;
            v /= p;
        }
    }
    if v != 1 {
        return Err(Error::SupportOutsideContext(value));
    }
    Ok(SquareClass { sign, two, mask })
}

/// Union of a set of classes with its translate by `multiplier`, in canonical
/// order. When the multiplier lies outside the input subgroup (the only way
/// the descent uses this), the output has exactly twice the input size.
pub fn coset_expand(
    ctx: &FactoredD,
    members: &[SquareClass],
    multiplier: SquareClass,
) -> Vec<SquareClass> {
    let mut out: Vec<SquareClass> = members
        .iter()
        .flat_map(|&m| [m, m.multiply(multiplier)])
        .collect();
    out.sort_by_key(|c| c.ord_key(ctx.n()));
    out.dedup();
    out
}

/// All classes of the chosen subgroup in canonical ascending order.
pub fn enumerate_subgroup(
    ctx: &FactoredD,
    which: ClassSubgroup,
) -> Result<Vec<SquareClass>, Error> {
    let n = ctx.n();
    if n > ENUM_BOUND {
        return Err(Error::BoundExceeded {
            n,
            bound: ENUM_BOUND,
        });
    }
    let signs: &[bool] = match which {
        ClassSubgroup::OddPositive => &[false],
        _ => &[false, true],
    };
    let twos: &[bool] = match which {
        ClassSubgroup::Full => &[false, true],
        _ => &[false],
    };
    let mut out = Vec::with_capacity((signs.len() * twos.len()) << n);
    for &sign in signs {
        for &two in twos {
            for mask in 0..1u64 << n {
                out.push(SquareClass { sign, two, mask });
            }
        }
    }
    Ok(out)
}
