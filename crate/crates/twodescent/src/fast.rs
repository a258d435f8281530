//! Matrix form of the descent: two GF(2) symbol tables X (n×n) and
//! Y ((n+1)×n) built from Legendre symbols of the context primes encode
//! every local condition at once. Membership in each restricted Selmer part
//! becomes a linear criterion on X or Y, group sizes and Mordell–Weil data
//! drop out of the two ranks, and none of it needs the subgroup scans of
//! [`crate::local`] (which exist to corroborate this module).

use crate::gf2::{BitMatrix, BitVec};
use crate::local::{CurveFamily, Role, SelmerGroup};
use crate::squareclass::{FactoredD, SquareClass, ENUM_BOUND};
use crate::Error;
use std::fmt;

/// Symbol vector of d: bit i encodes the Legendre symbol at pᵢ of d itself
/// when pᵢ ∤ d, and of (cofactor·d) when pᵢ | d (0 ↔ +1, 1 ↔ −1).
fn symbol_vector(d: SquareClass, cofactor: SquareClass, ctx: &FactoredD) -> BitVec {
    let mut v = BitVec::zeros(ctx.n());
    for (i, &p) in ctx.primes().iter().enumerate() {
        let sym = if d.mask >> i & 1 == 0 {
            d.legendre_at(p, ctx)
        } else {
            cofactor.multiply(d).legendre_at(p, ctx)
        };
        debug_assert!(sym != 0);
        v.set(i, sym == -1);
    }
    v
}

/// Additive symbol vector on Q_{2D} (cofactor 2D on the primes dividing d).
pub fn g_map(d: SquareClass, ctx: &FactoredD) -> Result<BitVec, Error> {
    if d.sign || d.two {
        return Err(Error::OutsideSubgroup);
    }
    Ok(symbol_vector(d, ctx.two_d(), ctx))
}

/// Additive symbol vector on Q_{−2D} (cofactor −2D on the primes dividing d).
pub fn f_map(d: SquareClass, ctx: &FactoredD) -> Result<BitVec, Error> {
    if d.two {
        return Err(Error::OutsideSubgroup);
    }
    Ok(symbol_vector(d, ctx.minus_two_d(), ctx))
}

fn prime_class(i: usize) -> SquareClass {
    SquareClass {
        sign: false,
        two: false,
        mask: 1 << i,
    }
}

/// X: row i is the symbol vector of pᵢ on Q_{2D}; entry (i,j) is the bit of
/// (pᵢ/p_j) off the diagonal and of ((2D/pᵢ)/pᵢ) on it.
pub fn build_x(ctx: &FactoredD) -> BitMatrix {
    let n = ctx.n();
    let rows: Vec<BitVec> = (0..n)
        .map(|i| g_map(prime_class(i), ctx).expect("prime class lies in Q_{2D}"))
        .collect();
    BitMatrix::from_fn(n, n, |i, j| rows[i].get(j))
}

/// Y: rows 0..n are the symbol vectors of the pᵢ on Q_{−2D} (diagonal bit
/// from (−2D/pᵢ)/pᵢ), row n is the symbol vector of −1, i.e. the (−1/p_j)
/// bits.
pub fn build_y(ctx: &FactoredD) -> BitMatrix {
    let n = ctx.n();
    let minus_one = SquareClass {
        sign: true,
        two: false,
        mask: 0,
    };
    let rows: Vec<BitVec> = (0..n)
        .map(prime_class)
        .chain([minus_one])
        .map(|c| f_map(c, ctx).expect("odd class lies in Q_{-2D}"))
        .collect();
    BitMatrix::from_fn(n + 1, n, |i, j| rows[i].get(j))
}

/// The two symbol matrices of a context, built once and shared by every
/// membership query and aggregate; immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolTables {
    ctx: FactoredD,
    x: BitMatrix,
    y: BitMatrix,
}

impl SymbolTables {
    pub fn new(ctx: &FactoredD) -> Self {
        SymbolTables {
            ctx: ctx.clone(),
            x: build_x(ctx),
            y: build_y(ctx),
        }
    }

    pub fn ctx(&self) -> &FactoredD {
        &self.ctx
    }

    pub fn x(&self) -> &BitMatrix {
        &self.x
    }

    pub fn y(&self) -> &BitMatrix {
        &self.y
    }

    /// δ(d): XOR of the (−1/pᵢ) bits over the primes dividing d. Vanishes
    /// exactly when the positive odd part of d is 1 or 5 mod 8.
    pub fn delta(&self, d: SquareClass) -> bool {
        let n = self.ctx.n();
        self.y.row(n).dot(&BitVec::from_mask(n, d.mask))
    }
}

fn mask_vec(d: SquareClass, n: usize) -> BitVec {
    BitVec::from_mask(n, d.mask)
}

/// d ∈ s_−: the Y-columns picked by the primes of d sum to zero across all
/// n+1 rows. Only positive odd d qualify.
pub fn fast_member_s_minus(d: SquareClass, tables: &SymbolTables) -> Result<bool, Error> {
    if d.sign || d.two {
        return Err(Error::OutsideSubgroup);
    }
    Ok(tables.y.mul_vec(&mask_vec(d, tables.ctx.n())).is_zero())
}

/// d ∈ s′_−: the Y-rows picked by the generators of d (row n for the sign)
/// sum to the zero row. Any odd d qualifies.
pub fn fast_member_s_minus_prime(d: SquareClass, tables: &SymbolTables) -> Result<bool, Error> {
    if d.two {
        return Err(Error::OutsideSubgroup);
    }
    let n = tables.ctx.n();
    let mut sel = BitVec::zeros(n + 1);
    for i in 0..n {
        if d.mask >> i & 1 == 1 {
            sel.set(i, true);
        }
    }
    sel.set(n, d.sign);
    Ok(tables.y.combine_rows(&sel).is_zero())
}

fn sigma_for(d1: SquareClass, ctx: &FactoredD) -> Result<i8, Error> {
    match d1.mod8(ctx) {
        1 => Ok(1),
        7 => Ok(-1),
        m => Err(Error::InvariantViolation(format!(
            "class {} passed the s+ column criterion with residue {m} (mod 8)",
            d1.representative(ctx)
        ))),
    }
}

/// Exactly one of ±d₁ lies in s₊ iff the X-columns picked by the primes of
/// d₁ sum to zero; the member's sign is +1 for d₁ ≡ 1 and −1 for d₁ ≡ 7
/// (mod 8), the only residues compatible with the criterion.
pub fn fast_member_s_plus_pair(
    d1: SquareClass,
    tables: &SymbolTables,
) -> Result<Option<i8>, Error> {
    if d1.sign || d1.two {
        return Err(Error::OutsideSubgroup);
    }
    if !tables.x.mul_vec(&mask_vec(d1, tables.ctx.n())).is_zero() {
        return Ok(None);
    }
    sigma_for(d1, &tables.ctx).map(Some)
}

/// d ∈ s′₊: the X-rows picked by the primes of d sum to the zero row. Only
/// positive odd d qualify.
pub fn fast_member_s_plus_prime(d: SquareClass, tables: &SymbolTables) -> Result<bool, Error> {
    if d.sign || d.two {
        return Err(Error::OutsideSubgroup);
    }
    Ok(tables
        .x
        .combine_rows(&mask_vec(d, tables.ctx.n()))
        .is_zero())
}

/// Restricted Selmer part from the appropriate nullspace: solutions of the
/// linear criterion span the group, so enumerating the span reproduces the
/// member list without any local computation.
pub fn fast_subgroup_selmer(
    family: CurveFamily,
    tables: &SymbolTables,
) -> Result<SelmerGroup, Error> {
    let ctx = &tables.ctx;
    let n = ctx.n();
    let basis = match (family.sigma, family.role) {
        (-1, Role::Base) => tables.y.column_nullspace_basis(),
        (-1, Role::Isogenous) => tables.y.row_nullspace_basis(),
        (_, Role::Base) => tables.x.column_nullspace_basis(),
        _ => tables.x.row_nullspace_basis(),
    };
    let k = basis.len();
    if k > ENUM_BOUND {
        return Err(Error::BoundExceeded {
            n: k,
            bound: ENUM_BOUND,
        });
    }
    let mut members = Vec::with_capacity(1 << k);
    for code in 0..1u64 << k {
        let mut mask = 0u64;
        let mut sign_bit = false;
        for (b, v) in basis.iter().enumerate() {
            if code >> b & 1 == 1 {
                for i in v.iter_ones() {
                    if i < n {
                        mask ^= 1 << i;
                    } else {
                        sign_bit = !sign_bit;
                    }
                }
            }
        }
        let cls = match (family.sigma, family.role) {
            (-1, Role::Isogenous) => SquareClass {
                sign: sign_bit,
                two: false,
                mask,
            },
            (1, Role::Base) => {
                let d1 = SquareClass {
                    sign: false,
                    two: false,
                    mask,
                };
                SquareClass {
                    sign: sigma_for(d1, ctx)? < 0,
                    two: false,
                    mask,
                }
            }
            _ => SquareClass {
                sign: false,
                two: false,
                mask,
            },
        };
        members.push(cls);
    }
    members.sort_by_key(|c| c.ord_key(n));
    debug_assert_eq!(members.len(), 1 << k);
    Ok(SelmerGroup {
        family,
        ctx: ctx.clone(),
        members,
        dim: k as u32,
    })
}

/// Full Selmer group from the fast path (restricted span + coset).
pub fn fast_full_selmer(family: CurveFamily, tables: &SymbolTables) -> Result<SelmerGroup, Error> {
    Ok(fast_subgroup_selmer(family, tables)?.expand_full())
}

/// The four full Selmer group orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelmerSizes {
    pub s_minus: u128,
    pub s_minus_prime: u128,
    pub s_plus: u128,
    pub s_plus_prime: u128,
}

/// Group orders from the two ranks: |S(E_−)| = 2^{n+1−rank Y},
/// |S(E′_−)| = 2^{n+2−rank Y}, |S(E₊)| = |S(E′₊)| = 2^{n+1−rank X}.
pub fn selmer_sizes(n: usize, rank_x: usize, rank_y: usize) -> SelmerSizes {
    assert!(rank_x <= n && rank_y <= n);
    SelmerSizes {
        s_minus: 1 << (n + 1 - rank_y),
        s_minus_prime: 1 << (n + 2 - rank_y),
        s_plus: 1 << (n + 1 - rank_x),
        s_plus_prime: 1 << (n + 1 - rank_x),
    }
}

/// An exact nonnegative rational in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fraction {
    pub num: u128,
    pub den: u128,
}

impl Fraction {
    /// Ratio of two powers of two, reduced.
    fn of_two_powers(num: u128, den: u128) -> Fraction {
        debug_assert!(num.is_power_of_two() && den.is_power_of_two());
        let k = num.trailing_zeros().min(den.trailing_zeros());
        Fraction {
            num: num >> k,
            den: den >> k,
        }
    }

    pub const HALF: Fraction = Fraction { num: 1, den: 2 };
    pub const ONE: Fraction = Fraction { num: 1, den: 1 };
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Size ratios |S(E_−)|/|S(E′_−)| and |S(E₊)|/|S(E′₊)| with numerator and
/// denominator derived from independent rank computations (the matrix and
/// its transpose), so the constancy of the result is a genuine check: any
/// deviation from (1/2, 1) is reported as a violated invariant.
fn tamagawa_from_tables(tables: &SymbolTables) -> Result<(Fraction, Fraction), Error> {
    let n = tables.ctx.n();
    let minus = Fraction::of_two_powers(
        1 << (n + 1 - tables.y.rank()),
        1 << (n + 2 - tables.y.transpose().rank()),
    );
    let plus = Fraction::of_two_powers(
        1 << (n + 1 - tables.x.rank()),
        1 << (n + 1 - tables.x.transpose().rank()),
    );
    if minus != Fraction::HALF || plus != Fraction::ONE {
        return Err(Error::InvariantViolation(format!(
            "size ratios ({minus}, {plus}) instead of (1/2, 1) for D = {}",
            tables.ctx.d_value()
        )));
    }
    Ok((minus, plus))
}

/// See [`tamagawa_from_tables`]; builds the tables for `ctx` first.
pub fn tamagawa_ratios(ctx: &FactoredD) -> Result<(Fraction, Fraction), Error> {
    tamagawa_from_tables(&SymbolTables::new(ctx))
}

fn dimension_sums_from(n: usize, rank_x: usize, rank_y: usize) -> (u32, u32) {
    ((2 * n + 1 - 2 * rank_y) as u32, (2 * n - 2 * rank_x) as u32)
}

/// (dim s_− + dim s′_−, dim s₊ + dim s′₊) = (2n+1−2·rank Y, 2n−2·rank X);
/// the first is always odd, the second always even.
pub fn rank_dimension_sums(ctx: &FactoredD) -> (u32, u32) {
    let tables = SymbolTables::new(ctx);
    dimension_sums_from(ctx.n(), tables.x.rank(), tables.y.rank())
}

fn flags_from(n: usize, rank_x: usize, rank_y: usize) -> (bool, bool) {
    (rank_x == n, rank_y == n)
}

/// (rank0, rank1_conditional): full rank of X pins the Mordell–Weil rank of
/// y² = x³ + 2Dx to 0 outright; full rank of Y pins y² = x³ − 2Dx to rank 1
/// under the parity conjecture, hence the flag stays conditional.
pub fn sieve_flags(ctx: &FactoredD) -> (bool, bool) {
    let tables = SymbolTables::new(ctx);
    flags_from(ctx.n(), tables.x.rank(), tables.y.rank())
}

/// Everything the descent yields for one D.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentReport {
    pub ctx: FactoredD,
    pub rank_x: usize,
    pub rank_y: usize,
    pub sizes: SelmerSizes,
    pub tamagawa_minus: Fraction,
    pub tamagawa_plus: Fraction,
    pub dimsum_minus: u32,
    pub dimsum_plus: u32,
    pub rank0: bool,
    pub rank1_conditional: bool,
}

impl DescentReport {
    pub fn from_tables(tables: &SymbolTables) -> Result<Self, Error> {
        let ctx = tables.ctx.clone();
        let n = ctx.n();
        let (tamagawa_minus, tamagawa_plus) = tamagawa_from_tables(tables)?;
        let rank_x = tables.x.rank();
        let rank_y = tables.y.rank();
        let sizes = selmer_sizes(n, rank_x, rank_y);
        let (dimsum_minus, dimsum_plus) = dimension_sums_from(n, rank_x, rank_y);
        let (rank0, rank1_conditional) = flags_from(n, rank_x, rank_y);
        if dimsum_minus % 2 != 1
            || dimsum_plus % 2 != 0
            || sizes.s_minus_prime != 2 * sizes.s_minus
            || sizes.s_plus_prime != sizes.s_plus
        {
            return Err(Error::InvariantViolation(format!(
                "inconsistent descent data for D = {}",
                ctx.d_value()
            )));
        }
        Ok(DescentReport {
            ctx,
            rank_x,
            rank_y,
            sizes,
            tamagawa_minus,
            tamagawa_plus,
            dimsum_minus,
            dimsum_plus,
            rank0,
            rank1_conditional,
        })
    }

    pub fn compute(ctx: &FactoredD) -> Result<Self, Error> {
        Self::from_tables(&SymbolTables::new(ctx))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::local::{
        oracle_full_selmer, oracle_subgroup_selmer, ALL_FAMILIES, MINUS, MINUS_PRIME, PLUS,
        PLUS_PRIME,
    };
    use crate::squareclass::{class_of, enumerate_subgroup, ClassSubgroup};

    fn ctx(primes: &[u64]) -> FactoredD {
        FactoredD::squarefree(primes.to_vec()).unwrap()
    }

    fn bits(m: &BitMatrix) -> Vec<Vec<u8>> {
        (0..m.rows())
            .map(|i| (0..m.cols()).map(|j| m.get(i, j) as u8).collect())
            .collect()
    }

    #[test]
    fn symbol_map_examples() {
        let d3 = ctx(&[3]);
        assert_eq!(g_map(SquareClass::IDENTITY, &d3).unwrap().as_mask(), 0);
        assert_eq!(g_map(class_of(3, &d3).unwrap(), &d3).unwrap().as_mask(), 1);
        let d15 = ctx(&[3, 5]);
        // p = 3 divides d: (2·15·3/3·…) ~ (10/3) = (1/3) → 0; p = 5: (3/5) = −1 → 1
        assert_eq!(
            g_map(class_of(3, &d15).unwrap(), &d15).unwrap().as_mask(),
            0b10
        );
        let d17 = ctx(&[17]);
        assert_eq!(
            f_map(class_of(-1, &d17).unwrap(), &d17).unwrap().as_mask(),
            0
        );
        assert_eq!(f_map(class_of(-1, &d3).unwrap(), &d3).unwrap().as_mask(), 1);
        assert_eq!(
            f_map(class_of(17, &d17).unwrap(), &d17).unwrap().as_mask(),
            0
        );
        // domain checks
        assert_eq!(
            g_map(class_of(-1, &d3).unwrap(), &d3),
            Err(Error::OutsideSubgroup)
        );
        assert_eq!(f_map(d3.two_d(), &d3), Err(Error::OutsideSubgroup));
    }

    #[test]
    fn symbol_maps_are_homomorphisms() {
        let d = ctx(&[3, 5, 7]);
        for a in enumerate_subgroup(&d, ClassSubgroup::Odd).unwrap() {
            for b in enumerate_subgroup(&d, ClassSubgroup::Odd).unwrap() {
                let mut sum = f_map(a, &d).unwrap();
                sum.xor_assign(&f_map(b, &d).unwrap());
                assert_eq!(sum, f_map(a.multiply(b), &d).unwrap());
                if !a.sign && !b.sign {
                    let mut sum = g_map(a, &d).unwrap();
                    sum.xor_assign(&g_map(b, &d).unwrap());
                    assert_eq!(sum, g_map(a.multiply(b), &d).unwrap());
                }
            }
        }
    }

    #[test]
    fn frozen_matrices() {
        assert_eq!(bits(&build_x(&ctx(&[3]))), vec![vec![1]]);
        assert_eq!(bits(&build_y(&ctx(&[3]))), vec![vec![0], vec![1]]);
        assert_eq!(bits(&build_x(&ctx(&[17]))), vec![vec![0]]);
        assert_eq!(bits(&build_y(&ctx(&[17]))), vec![vec![0], vec![0]]);
        // 33 = 3·11 gives the asymmetric X
        let d33 = ctx(&[3, 11]);
        assert_eq!(bits(&build_x(&d33)), vec![vec![0, 0], vec![1, 1]]);
        assert_eq!(
            bits(&build_y(&d33)),
            vec![vec![1, 0], vec![1, 0], vec![1, 1]]
        );
        assert_eq!(build_x(&d33).rank(), 1);
        assert_eq!(build_y(&d33).rank(), 2);
        let d51 = ctx(&[3, 17]);
        assert_eq!(build_x(&d51).rank(), 2);
        assert_eq!(build_y(&d51).rank(), 2);
    }

    #[test]
    fn table_symmetry_identities() {
        for primes in [
            vec![3u64, 5, 7],
            vec![3, 17],
            vec![3, 11],
            vec![11, 13],
            vec![5, 7, 11],
        ] {
            let d = ctx(&primes);
            let t = SymbolTables::new(&d);
            let n = d.n();
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        // off-diagonal X and Y entries coincide…
                        assert_eq!(t.x().get(i, j), t.y().get(i, j));
                        // …and reciprocity ties (i,j) to (j,i) via the sign row
                        assert_eq!(
                            t.x().get(i, j) ^ t.x().get(j, i),
                            t.y().get(n, i) & t.y().get(n, j)
                        );
                    } else {
                        // diagonals differ exactly by the sign-row bit
                        assert_eq!(t.x().get(i, i) ^ t.y().get(i, i), t.y().get(n, i));
                    }
                }
            }
        }
    }

    #[test]
    fn delta_matches_mod8() {
        for primes in [vec![3u64, 5, 7], vec![5, 17], vec![3, 11, 13]] {
            let d = ctx(&primes);
            let t = SymbolTables::new(&d);
            for c in enumerate_subgroup(&d, ClassSubgroup::OddPositive).unwrap() {
                let m = c.mod8(&d);
                assert_eq!(
                    !t.delta(c),
                    m == 1 || m == 5,
                    "delta of {}",
                    c.representative(&d)
                );
            }
        }
    }

    #[test]
    fn membership_examples() {
        let d17 = ctx(&[17]);
        let t17 = SymbolTables::new(&d17);
        let seventeen = class_of(17, &d17).unwrap();
        assert_eq!(fast_member_s_minus(seventeen, &t17), Ok(true));
        assert_eq!(
            fast_member_s_minus_prime(class_of(-1, &d17).unwrap(), &t17),
            Ok(true)
        );
        assert_eq!(fast_member_s_plus_pair(seventeen, &t17), Ok(Some(1)));
        assert_eq!(fast_member_s_plus_prime(seventeen, &t17), Ok(true));

        let d51 = ctx(&[3, 17]);
        let t51 = SymbolTables::new(&d51);
        let fifty_one = class_of(51, &d51).unwrap();
        assert_eq!(fast_member_s_minus(SquareClass::IDENTITY, &t51), Ok(true));
        assert_eq!(fast_member_s_minus(fifty_one, &t51), Ok(false));
        assert_eq!(fast_member_s_minus_prime(fifty_one, &t51), Ok(true));
        assert_eq!(fast_member_s_plus_pair(fifty_one, &t51), Ok(None));
        assert_eq!(
            fast_member_s_plus_pair(SquareClass::IDENTITY, &t51),
            Ok(Some(1))
        );

        let d3 = ctx(&[3]);
        let t3 = SymbolTables::new(&d3);
        assert_eq!(
            fast_member_s_plus_prime(class_of(3, &d3).unwrap(), &t3),
            Ok(false)
        );

        // D ≡ 7 (mod 8): the criterion passes and selects the negative twin
        let d119 = ctx(&[7, 17]);
        let t119 = SymbolTables::new(&d119);
        let full = class_of(119, &d119).unwrap();
        assert_eq!(fast_member_s_plus_pair(full, &t119), Ok(Some(-1)));
        assert!(oracle_subgroup_selmer(PLUS, &d119)
            .unwrap()
            .contains(class_of(-119, &d119).unwrap()));

        // domain checks
        let neg = class_of(-1, &d3).unwrap();
        assert_eq!(fast_member_s_minus(neg, &t3), Err(Error::OutsideSubgroup));
        assert_eq!(
            fast_member_s_plus_pair(neg, &t3),
            Err(Error::OutsideSubgroup)
        );
        assert_eq!(
            fast_member_s_plus_prime(neg, &t3),
            Err(Error::OutsideSubgroup)
        );
        assert_eq!(
            fast_member_s_minus_prime(d3.two_d(), &t3),
            Err(Error::OutsideSubgroup)
        );
    }

    #[test]
    fn fast_sets_match_oracle() {
        for primes in [
            vec![3u64],
            vec![17],
            vec![3, 5],
            vec![3, 17],
            vec![3, 11],
            vec![7, 17],
            vec![3, 5, 7],
        ] {
            let d = ctx(&primes);
            let t = SymbolTables::new(&d);
            for fam in ALL_FAMILIES {
                let fast = fast_subgroup_selmer(fam, &t).unwrap();
                let oracle = oracle_subgroup_selmer(fam, &d).unwrap();
                assert_eq!(
                    fast,
                    oracle,
                    "{} restricted, D = {}",
                    fam.label(),
                    d.d_value()
                );
                assert_eq!(
                    fast_full_selmer(fam, &t).unwrap(),
                    oracle_full_selmer(fam, &d).unwrap()
                );
            }
        }
    }

    #[test]
    fn membership_predicates_match_oracle() {
        for primes in [vec![3u64, 11], vec![7, 17], vec![3, 5, 7]] {
            let d = ctx(&primes);
            let t = SymbolTables::new(&d);
            let s_minus = oracle_subgroup_selmer(MINUS, &d).unwrap();
            let s_minus_prime = oracle_subgroup_selmer(MINUS_PRIME, &d).unwrap();
            let s_plus = oracle_subgroup_selmer(PLUS, &d).unwrap();
            let s_plus_prime = oracle_subgroup_selmer(PLUS_PRIME, &d).unwrap();
            for d1 in enumerate_subgroup(&d, ClassSubgroup::OddPositive).unwrap() {
                assert_eq!(fast_member_s_minus(d1, &t).unwrap(), s_minus.contains(d1));
                assert_eq!(
                    fast_member_s_plus_prime(d1, &t).unwrap(),
                    s_plus_prime.contains(d1)
                );
                let neg = d1.multiply(class_of(-1, &d).unwrap());
                match fast_member_s_plus_pair(d1, &t).unwrap() {
                    Some(1) => assert!(s_plus.contains(d1) && !s_plus.contains(neg)),
                    Some(_) => assert!(s_plus.contains(neg) && !s_plus.contains(d1)),
                    None => assert!(!s_plus.contains(d1) && !s_plus.contains(neg)),
                }
            }
            for c in enumerate_subgroup(&d, ClassSubgroup::Odd).unwrap() {
                assert_eq!(
                    fast_member_s_minus_prime(c, &t).unwrap(),
                    s_minus_prime.contains(c)
                );
            }
        }
    }

    #[test]
    fn sizes_and_sums() {
        let s = selmer_sizes(1, 0, 0);
        assert_eq!(
            (s.s_minus, s.s_minus_prime, s.s_plus, s.s_plus_prime),
            (4, 8, 4, 4)
        );
        let s = selmer_sizes(2, 2, 2);
        assert_eq!(
            (s.s_minus, s.s_minus_prime, s.s_plus, s.s_plus_prime),
            (2, 4, 2, 2)
        );
        assert_eq!(selmer_sizes(5, 5, 3).s_plus, 2);
        // the widest case must not overflow
        let s = selmer_sizes(64, 0, 0);
        assert_eq!(s.s_minus_prime, 1 << 66);

        assert_eq!(rank_dimension_sums(&ctx(&[17])), (3, 2));
        assert_eq!(rank_dimension_sums(&ctx(&[3])), (1, 0));
        assert_eq!(rank_dimension_sums(&ctx(&[3, 17])), (1, 0));
    }

    #[test]
    fn ratios_and_flags() {
        for primes in [vec![3u64], vec![17], vec![3, 17], vec![3, 5, 7]] {
            let d = ctx(&primes);
            assert_eq!(tamagawa_ratios(&d), Ok((Fraction::HALF, Fraction::ONE)));
        }
        assert_eq!(format!("{}", Fraction::HALF), "1/2");
        assert_eq!(format!("{}", Fraction::ONE), "1");
        assert_eq!(sieve_flags(&ctx(&[3])), (true, true));
        assert_eq!(sieve_flags(&ctx(&[17])), (false, false));
        assert_eq!(sieve_flags(&ctx(&[3, 17])), (true, true));
        assert_eq!(sieve_flags(&ctx(&[3, 11])), (false, true));
    }

    #[test]
    fn report_examples() {
        let r = DescentReport::compute(&ctx(&[3, 17])).unwrap();
        assert_eq!((r.rank_x, r.rank_y), (2, 2));
        assert_eq!(r.sizes.s_minus, 2);
        assert_eq!((r.dimsum_minus, r.dimsum_plus), (1, 0));
        assert!(r.rank0 && r.rank1_conditional);

        let r = DescentReport::compute(&ctx(&[17])).unwrap();
        assert_eq!((r.rank_x, r.rank_y), (0, 0));
        assert_eq!(r.sizes.s_minus_prime, 8);
        assert!(!r.rank0 && !r.rank1_conditional);
        assert_eq!(r.tamagawa_minus, Fraction::HALF);
        assert_eq!(r.tamagawa_plus, Fraction::ONE);

        // exponents only move D by a square: identical report apart from ctx
        let flat = DescentReport::compute(&ctx(&[3, 5])).unwrap();
        let cubed =
            DescentReport::compute(&FactoredD::new(vec![3, 5], vec![1, 3]).unwrap()).unwrap();
        assert_eq!((flat.rank_x, flat.rank_y), (cubed.rank_x, cubed.rank_y));
        assert_eq!(flat.sizes, cubed.sizes);
    }

    #[test]
    fn fast_set_sizes_match_formulas() {
        for primes in [vec![3u64, 5], vec![3, 11], vec![7, 17], vec![3, 5, 7]] {
            let d = ctx(&primes);
            let t = SymbolTables::new(&d);
            let sizes = selmer_sizes(d.n(), t.x().rank(), t.y().rank());
            assert_eq!(
                fast_full_selmer(MINUS, &t).unwrap().size() as u128,
                sizes.s_minus
            );
            assert_eq!(
                fast_full_selmer(MINUS_PRIME, &t).unwrap().size() as u128,
                sizes.s_minus_prime
            );
            assert_eq!(
                fast_full_selmer(PLUS, &t).unwrap().size() as u128,
                sizes.s_plus
            );
            assert_eq!(
                fast_full_selmer(PLUS_PRIME, &t).unwrap().size() as u128,
                sizes.s_plus_prime
            );
        }
    }
}
