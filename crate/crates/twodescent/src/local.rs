//! Local solvability for the quartic spaces attached to the four curves
//!
//! ```text
//!   y² = x³ − 2Dx   and its 2-isogenous partner   y² = x³ + 8Dx
//!   y² = x³ + 2Dx   and its 2-isogenous partner   y² = x³ − 8Dx
//! ```
//!
//! A square class d is a Selmer member iff the quartic
//! W² = d·U⁴ + tail·Z⁴, tail = tail_sign·(tail_scale·D)/d, has points over
//! R, Q₂ and every Q_p with p | D. This module provides closed-form residue
//! predicates for those conditions, a brute subgroup scan built from them
//! (the reference oracle), and an independent p-adic search that certifies
//! solvability without any residue shortcuts.

use crate::arith;
use crate::squareclass::{coset_expand, enumerate_subgroup, ClassSubgroup, FactoredD, SquareClass};
use crate::Error;
use num_bigint::BigInt;

/// Largest n the exhaustive subgroup scan accepts (2ⁿ⁺¹ classes, four
/// families: beyond this the scan stops being a practical cross-check).
pub const ORACLE_BOUND: usize = 16;

/// Whether a curve is the base of the 2-isogeny (coefficient ±2D) or its
/// image (coefficient ∓8D).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Base,
    Isogenous,
}

/// One of the four curves, identified by the sign of its base coefficient
/// and its role under the 2-isogeny.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CurveFamily {
    pub sigma: i8,
    pub role: Role,
}

/// y² = x³ − 2Dx.
pub const MINUS: CurveFamily = CurveFamily {
    sigma: -1,
    role: Role::Base,
};
/// y² = x³ + 8Dx, isogenous to `MINUS`.
pub const MINUS_PRIME: CurveFamily = CurveFamily {
    sigma: -1,
    role: Role::Isogenous,
};
/// y² = x³ + 2Dx.
pub const PLUS: CurveFamily = CurveFamily {
    sigma: 1,
    role: Role::Base,
};
/// y² = x³ − 8Dx, isogenous to `PLUS`.
pub const PLUS_PRIME: CurveFamily = CurveFamily {
    sigma: 1,
    role: Role::Isogenous,
};

/// Canonical processing order.
pub const ALL_FAMILIES: [CurveFamily; 4] = [MINUS, MINUS_PRIME, PLUS, PLUS_PRIME];

impl CurveFamily {
    /// Sign of the Z⁴ coefficient of the quartic space.
    pub fn tail_sign(self) -> i32 {
        match self.role {
            Role::Base => -self.sigma as i32,
            Role::Isogenous => self.sigma as i32,
        }
    }

    /// Magnitude scale of the Z⁴ coefficient: 8D/d on base curves, 2D/d on
    /// isogenous ones.
    pub fn tail_scale(self) -> u64 {
        match self.role {
            Role::Base => 8,
            Role::Isogenous => 2,
        }
    }

    /// The subgroup the descent classes range over before coset expansion:
    /// positive tails force d > 0, negative tails allow either sign.
    pub fn restricted_subgroup(self) -> ClassSubgroup {
        if self.tail_sign() > 0 {
            ClassSubgroup::OddPositive
        } else {
            ClassSubgroup::Odd
        }
    }

    /// The full Selmer group is the restricted part times this class
    /// (always a member, never inside the restricted subgroup).
    pub fn coset_multiplier(self, ctx: &FactoredD) -> SquareClass {
        if self.tail_sign() > 0 {
            ctx.two_d()
        } else {
            ctx.minus_two_d()
        }
    }

    pub fn label(self) -> &'static str {
        match (self.sigma, self.role) {
            (-1, Role::Base) => "S(E-)",
            (-1, Role::Isogenous) => "S(E-')",
            (1, Role::Base) => "S(E+)",
            _ => "S(E+')",
        }
    }
}

/// Real solvability of W² = dU⁴ + tail·Z⁴: fails only when both
/// coefficients are negative.
pub fn locally_solvable_at_infinity(family: CurveFamily, d: SquareClass) -> bool {
    family.tail_sign() < 0 || !d.sign
}

/// Solvability over Q₂ for an odd class d. Base curves need d ≡ 1 (mod 8);
/// isogenous curves also admit d whose residue combines with the even class
/// 2D·d to 1 (mod 8).
pub fn locally_solvable_at_2(
    family: CurveFamily,
    d: SquareClass,
    ctx: &FactoredD,
) -> Result<bool, Error> {
    if d.two {
        return Err(Error::OutsideSubgroup);
    }
    let m = d.mod8(ctx) as i32;
    if m == 1 {
        return Ok(true);
    }
    if family.role == Role::Base {
        return Ok(false);
    }
    let r2 = ctx.two_d().multiply(d).mod8(ctx) as i32;
    Ok((m + family.tail_sign() * r2).rem_euclid(8) == 1)
}

/// Solvability over Q_p at the `index`-th context prime: d must be a square
/// mod p when p ∤ d, and the cofactor class (±2D)·d must be when p | d.
pub fn locally_solvable_at_p(
    family: CurveFamily,
    d: SquareClass,
    index: usize,
    ctx: &FactoredD,
) -> bool {
    debug_assert!(!d.two);
    let p = ctx.primes()[index];
    if d.mask >> index & 1 == 0 {
        d.legendre_at(p, ctx) == 1
    } else {
        family.coset_multiplier(ctx).multiply(d).legendre_at(p, ctx) == 1
    }
}

/// A computed Selmer group (or its restricted part): members in canonical
/// ascending order, with dim = log₂ of the size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelmerGroup {
    pub family: CurveFamily,
    pub ctx: FactoredD,
    pub members: Vec<SquareClass>,
    pub dim: u32,
}

impl SelmerGroup {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, c: SquareClass) -> bool {
        let n = self.ctx.n();
        self.members
            .binary_search_by_key(&c.ord_key(n), |m| m.ord_key(n))
            .is_ok()
    }

    /// Canonical integer representatives, in member order.
    pub fn representatives(&self) -> Vec<BigInt> {
        self.members
            .iter()
            .map(|c| c.representative(&self.ctx))
            .collect()
    }

    /// The full group: the restricted part united with its translate by the
    /// family's coset class.
    pub fn expand_full(&self) -> SelmerGroup {
        let members = coset_expand(
            &self.ctx,
            &self.members,
            self.family.coset_multiplier(&self.ctx),
        );
        debug_assert_eq!(members.len(), 2 * self.members.len());
        SelmerGroup {
            family: self.family,
            ctx: self.ctx.clone(),
            members,
            dim: self.dim + 1,
        }
    }

    /// Exhaustive closure check (identity, products); every element is its
    /// own inverse, so this certifies a subgroup.
    pub fn verify_group_axioms(&self) -> bool {
        if !self.contains(SquareClass::IDENTITY) {
            return false;
        }
        self.members
            .iter()
            .all(|&a| self.members.iter().all(|&b| self.contains(a.multiply(b))))
    }
}

/// Restricted Selmer part by brute force: scan the whole subgroup and keep
/// the classes passing every local test. Quadratic in the subgroup size, so
/// capped at `ORACLE_BOUND` primes.
pub fn oracle_subgroup_selmer(family: CurveFamily, ctx: &FactoredD) -> Result<SelmerGroup, Error> {
    if ctx.n() > ORACLE_BOUND {
        return Err(Error::BoundExceeded {
            n: ctx.n(),
            bound: ORACLE_BOUND,
        });
    }
    let mut members = Vec::new();
    for d in enumerate_subgroup(ctx, family.restricted_subgroup())? {
        if locally_solvable_at_infinity(family, d)
            && locally_solvable_at_2(family, d, ctx)?
            && (0..ctx.n()).all(|i| locally_solvable_at_p(family, d, i, ctx))
        {
            members.push(d);
        }
    }
    if !members.len().is_power_of_two() {
        return Err(Error::InvariantViolation(format!(
            "{} local scan produced {} classes, not a 2-power",
            family.label(),
            members.len()
        )));
    }
    let dim = members.len().trailing_zeros();
    Ok(SelmerGroup {
        family,
        ctx: ctx.clone(),
        members,
        dim,
    })
}

/// Full Selmer group by brute force (restricted scan + coset expansion).
pub fn oracle_full_selmer(family: CurveFamily, ctx: &FactoredD) -> Result<SelmerGroup, Error> {
    Ok(oracle_subgroup_selmer(family, ctx)?.expand_full())
}

fn reduce_big(v: &BigInt, m: u64) -> u64 {
    let mm = BigInt::from(m);
    let r = ((v % &mm) + &mm) % &mm;
    u64::try_from(r).expect("residue fits u64")
}

fn valuation(mut s: u64, p: u64) -> u32 {
    debug_assert!(s != 0);
    let mut e = 0;
    while s.is_multiple_of(p) {
        s /= p;
        e += 1;
    }
    e
}

fn add_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 + b as u128) % m as u128) as u64
}

/// Decides solvability of t² = a·u⁴ + b over Z_p for u ≡ u0 (mod p^k), by
/// examining residues mod p^k and splitting the disc when inconclusive.
fn branch_solvable(
    a: &BigInt,
    b: &BigInt,
    p: u64,
    u0: u64,
    k: u32,
    cap: u32,
) -> Result<bool, Error> {
    let too_small = Error::PrecisionTooSmall {
        place: p,
        precision: cap,
    };
    let Some(m) = p.checked_pow(k) else {
        return Err(too_small);
    };
    let am = reduce_big(a, m);
    let bm = reduce_big(b, m);
    let u2 = arith::mul_mod(u0, u0, m);
    let u4 = arith::mul_mod(u2, u2, m);
    let s = add_mod(arith::mul_mod(am, u4, m), bm, m);
    if s != 0 {
        let e = valuation(s, p);
        let decidable = if p == 2 { e + 3 <= k } else { e < k };
        if decidable {
            // the value's valuation and square-class of its unit part are
            // both pinned down: t exists iff the value is a p-adic square
            if e % 2 == 1 {
                return Ok(false);
            }
            let unit = s / p.pow(e);
            return Ok(if p == 2 {
                unit % 8 == 1
            } else {
                arith::legendre((unit % p) as i64, p) == 1
            });
        }
    }
    // Newton escape: a root of a·u⁴ + b near u0 yields a point with t = 0
    let fp = arith::mul_mod(arith::mul_mod(4, am, m), arith::mul_mod(u2, u0, m), m);
    if fp != 0 {
        let vs = if s == 0 { k } else { valuation(s, p) };
        if vs > 2 * valuation(fp, p) {
            return Ok(true);
        }
    }
    if k >= cap || p.checked_pow(k + 1).is_none() {
        return Err(too_small);
    }
    for j in 0..p {
        if branch_solvable(a, b, p, u0 + j * m, k + 1, cap)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Z_p-solvability of t² = a·u⁴ + b, all u0 branches.
fn chart_solvable(a: &BigInt, b: &BigInt, p: u64, cap: u32) -> Result<bool, Error> {
    let k0 = if p == 2 { 4 } else { 1 };
    let m0 = p.pow(k0);
    for u0 in 0..m0 {
        if branch_solvable(a, b, p, u0, k0, cap)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Independent local solvability check for the quartic space of class d at
/// a finite place (2 or a prime factor of D): direct search for p-adic
/// points on both affine charts, escalating the working precision up to
/// p^precision before giving up. Shares no logic with the residue
/// predicates above, which it exists to corroborate.
pub fn deep_local_check(
    family: CurveFamily,
    d: SquareClass,
    ctx: &FactoredD,
    place: u64,
    precision: u32,
) -> Result<bool, Error> {
    if d.two {
        return Err(Error::OutsideSubgroup);
    }
    if place != 2 && !ctx.primes().contains(&place) {
        return Err(Error::UnknownPlace(place));
    }
    let needed = if place == 2 { 4 } else { 2 };
    if precision < needed {
        return Err(Error::PrecisionTooSmall { place, precision });
    }
    let d_int = d.representative(ctx);
    let tail = BigInt::from(family.tail_sign() as i64 * family.tail_scale() as i64) * ctx.d_value()
        / &d_int;
    // W² = d·U⁴ + tail·Z⁴: chart Z = 1 and chart U = 1
    Ok(chart_solvable(&d_int, &tail, place, precision)?
        || chart_solvable(&tail, &d_int, place, precision)?)
}
