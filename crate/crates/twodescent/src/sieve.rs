//! Batch processing: enumerate the valid D below a bound, compute a report
//! (and optionally the member lists) for each, and cross-check the matrix
//! fast path against the brute-force local oracle. Work fans out over a
//! configurable number of rayon workers when the `parallel` feature is on;
//! output order is ascending in D either way.

use crate::arith;
use crate::fast::{
    fast_member_s_minus, fast_member_s_minus_prime, fast_member_s_plus_pair,
    fast_member_s_plus_prime, fast_subgroup_selmer, selmer_sizes, DescentReport, SymbolTables,
};
use crate::local::{oracle_subgroup_selmer, CurveFamily, Role, ALL_FAMILIES, ORACLE_BOUND};
use crate::squareclass::{enumerate_subgroup, FactoredD, SquareClass};
use crate::Error;
use itertools::Itertools;
use num_bigint::BigInt;

/// Report plus (on request) the four full member lists, in family order
/// S(E−), S(E−′), S(E+), S(E+′).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveRecord {
    pub report: DescentReport,
    pub members: Option<[Vec<SquareClass>; 4]>,
}

/// Full descent for one D. Member lists come from the fast path and are
/// cross-checked against the rank-derived sizes before being returned.
pub fn analyze(ctx: &FactoredD, emit_members: bool) -> Result<SieveRecord, Error> {
    let tables = SymbolTables::new(ctx);
    let report = DescentReport::from_tables(&tables)?;
    let members = if emit_members {
        let expected = [
            report.sizes.s_minus,
            report.sizes.s_minus_prime,
            report.sizes.s_plus,
            report.sizes.s_plus_prime,
        ];
        let mut lists = Vec::with_capacity(4);
        for (fam, want) in ALL_FAMILIES.into_iter().zip(expected) {
            let group = fast_subgroup_selmer(fam, &tables)?.expand_full();
            if group.size() as u128 != want {
                return Err(Error::InvariantViolation(format!(
                    "{} has {} members but rank arithmetic says {want}",
                    fam.label(),
                    group.size()
                )));
            }
            lists.push(group.members);
        }
        Some(lists.try_into().expect("exactly four families"))
    } else {
        None
    };
    Ok(SieveRecord { report, members })
}

/// All products of 1..=n_max distinct odd primes below `prime_bound`, as
/// factor lists in ascending order of the product.
pub fn enumerate_d(prime_bound: u64, n_max: usize) -> Vec<Vec<u64>> {
    let primes: Vec<u64> = (3..prime_bound)
        .filter(|&p| p % 2 == 1 && arith::is_prime(p))
        .collect();
    let mut out: Vec<Vec<u64>> = (1..=n_max.min(primes.len()))
        .flat_map(|k| primes.iter().copied().combinations(k))
        .collect();
    out.sort_by_cached_key(|c| c.iter().map(|&p| BigInt::from(p)).product::<BigInt>());
    out
}

/// Order-preserving map over `items`, fanned out across `workers` threads
/// when the `parallel` feature is enabled and workers > 1.
#[cfg(feature = "parallel")]
fn map_ordered<T, R, F>(items: Vec<T>, workers: usize, f: F) -> Result<Vec<R>, Error>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Send + Sync,
{
    if workers <= 1 {
        return Ok(items.into_iter().map(f).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Parallelism(e.to_string()))?;
    Ok(pool.install(|| {
        use rayon::prelude::*;
        items.into_par_iter().map(f).collect()
    }))
}

#[cfg(not(feature = "parallel"))]
fn map_ordered<T, R, F>(items: Vec<T>, _workers: usize, f: F) -> Result<Vec<R>, Error>
where
    F: Fn(T) -> R,
{
    Ok(items.into_iter().map(f).collect())
}

/// Reports for every D below the bounds, ascending in D.
pub fn run(prime_bound: u64, n_max: usize, workers: usize) -> Result<Vec<SieveRecord>, Error> {
    let ds = enumerate_d(prime_bound, n_max);
    map_ordered(ds, workers, |primes| {
        analyze(&FactoredD::squarefree(primes)?, false)
    })?
    .into_iter()
    .collect()
}

/// First disagreement found between fast path and oracle, if any.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscheckMismatch {
    pub primes: Vec<u64>,
    pub family: &'static str,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrosscheckOutcome {
    pub tested: usize,
    pub mismatch: Option<CrosscheckMismatch>,
}

fn family_mismatch(
    ctx: &FactoredD,
    family: CurveFamily,
    tables: &SymbolTables,
    expected_full: u128,
) -> Result<Option<String>, Error> {
    let fast = fast_subgroup_selmer(family, tables)?;
    let oracle = oracle_subgroup_selmer(family, ctx)?;
    if fast.members != oracle.members {
        return Ok(Some(format!(
            "restricted sets differ: fast {:?}, oracle {:?}",
            fast.representatives(),
            oracle.representatives()
        )));
    }
    let full = fast.expand_full();
    if full.members != oracle.expand_full().members {
        return Ok(Some("full sets differ after coset expansion".into()));
    }
    if full.size() as u128 != expected_full {
        return Ok(Some(format!(
            "rank arithmetic predicts {expected_full} members, sets have {}",
            full.size()
        )));
    }
    // element-by-element: each membership predicate against the local scan
    for d in enumerate_subgroup(ctx, family.restricted_subgroup())? {
        let agree = match (family.sigma, family.role) {
            (-1, Role::Base) => fast_member_s_minus(d, tables)? == oracle.contains(d),
            (-1, Role::Isogenous) => fast_member_s_minus_prime(d, tables)? == oracle.contains(d),
            (_, Role::Isogenous) => fast_member_s_plus_prime(d, tables)? == oracle.contains(d),
            _ => {
                // the pair criterion only sees positive classes
                if d.sign {
                    continue;
                }
                let neg = SquareClass { sign: true, ..d };
                match fast_member_s_plus_pair(d, tables)? {
                    Some(1) => oracle.contains(d) && !oracle.contains(neg),
                    Some(_) => oracle.contains(neg) && !oracle.contains(d),
                    None => !oracle.contains(d) && !oracle.contains(neg),
                }
            }
        };
        if !agree {
            return Ok(Some(format!(
                "membership of d = {} disagrees with the local scan",
                d.representative(ctx)
            )));
        }
    }
    Ok(None)
}

fn crosscheck_one(primes: Vec<u64>) -> Result<Option<CrosscheckMismatch>, Error> {
    let ctx = FactoredD::squarefree(primes.clone())?;
    let tables = SymbolTables::new(&ctx);
    let sizes = selmer_sizes(ctx.n(), tables.x().rank(), tables.y().rank());
    let expected = [
        sizes.s_minus,
        sizes.s_minus_prime,
        sizes.s_plus,
        sizes.s_plus_prime,
    ];
    for (fam, want) in ALL_FAMILIES.into_iter().zip(expected) {
        if let Some(detail) = family_mismatch(&ctx, fam, &tables, want)? {
            return Ok(Some(CrosscheckMismatch {
                primes,
                family: fam.label(),
                detail,
            }));
        }
    }
    Ok(None)
}

/// Compares fast path and oracle for every D below the bounds: member sets,
/// coset expansions, rank-derived sizes, and each membership predicate per
/// element. Stops at the first mismatch in ascending-D order.
pub fn crosscheck(
    prime_bound: u64,
    n_max: usize,
    workers: usize,
) -> Result<CrosscheckOutcome, Error> {
    if n_max > ORACLE_BOUND {
        return Err(Error::BoundExceeded {
            n: n_max,
            bound: ORACLE_BOUND,
        });
    }
    let ds = enumerate_d(prime_bound, n_max);
    let tested = ds.len();
    for result in map_ordered(ds, workers, crosscheck_one)? {
        if let Some(mismatch) = result? {
            return Ok(CrosscheckOutcome {
                tested,
                mismatch: Some(mismatch),
            });
        }
    }
    Ok(CrosscheckOutcome {
        tested,
        mismatch: None,
    })
}
