//! Rendering of sieve records as CSV, newline-delimited JSON, or aligned text.
//!
//! The CSV schema is fixed so downstream tooling can rely on column order;
//! `--emit-members` appends four extra columns rather than reshaping the
//! base schema. JSON output mirrors the CSV fields as keys, one object per
//! line, with an optional `members` object. Integers that exceed the i64
//! range are emitted as decimal strings to stay safely parseable.

use std::io::{self, Write};

use num_bigint::BigInt;
use serde_json::{Map, Value};
use twodescent::fast::{DescentReport, Fraction};
use twodescent::local::ALL_FAMILIES;
use twodescent::sieve::SieveRecord;
use twodescent::squareclass::{FactoredD, SquareClass};

/// Output encodings shared by `analyze` and `sieve`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

/// Fixed CSV schema (16 columns); member columns are appended after `notes`
/// only when members are requested.
pub const CSV_HEADER: &str = "D,n,primes,rank_X,rank_Y,size_S_minus,size_Sprime_minus,\
size_S_plus,size_Sprime_plus,t_minus,t_plus,dimsum_minus,dimsum_plus,rank0,\
rank1_conditional,notes";

/// Extra header columns used with `--emit-members`, in the same group order
/// as the size columns.
pub const CSV_MEMBER_COLUMNS: [&str; 4] = [
    "members_S_minus",
    "members_Sprime_minus",
    "members_S_plus",
    "members_Sprime_plus",
];

/// JSON keys for the four member lists, matching the CSV column naming.
const MEMBER_KEYS: [&str; 4] = ["S_minus", "Sprime_minus", "S_plus", "Sprime_plus"];

/// The integer t with T = 2^(-t) for a ratio that is a power of two.
pub fn tamagawa_exponent(ratio: &Fraction) -> u32 {
    debug_assert!(ratio.num > 0 && ratio.den.is_multiple_of(ratio.num));
    (ratio.den / ratio.num).trailing_zeros()
}

fn notes(report: &DescentReport) -> &'static str {
    if report.rank1_conditional {
        "conditional-BSD"
    } else {
        ""
    }
}

fn join_representatives(set: &[SquareClass], ctx: &FactoredD, sep: &str) -> String {
    set.iter()
        .map(|c| c.representative(ctx).to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

fn big_to_value(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(x) => Value::from(x),
        Err(_) => Value::String(v.to_string()),
    }
}

fn u128_to_value(v: u128) -> Value {
    match i64::try_from(v) {
        Ok(x) => Value::from(x),
        Err(_) => Value::String(v.to_string()),
    }
}

/// Render `records` in the chosen format. `with_members` controls only the
/// CSV header shape; JSON and text include members whenever a record carries
/// them.
pub fn write_records(
    out: &mut dyn Write,
    records: &[SieveRecord],
    format: Format,
    with_members: bool,
) -> io::Result<()> {
    match format {
        Format::Csv => write_csv(out, records, with_members),
        Format::Json => write_json(out, records),
        Format::Text => write_text(out, records),
    }
}

fn write_csv(out: &mut dyn Write, records: &[SieveRecord], with_members: bool) -> io::Result<()> {
    let mut header = String::from(CSV_HEADER);
    if with_members {
        for column in CSV_MEMBER_COLUMNS {
            header.push(',');
            header.push_str(column);
        }
    }
    writeln!(out, "{header}")?;
    for record in records {
        writeln!(out, "{}", csv_row(record, with_members))?;
    }
    Ok(())
}

fn csv_row(record: &SieveRecord, with_members: bool) -> String {
    let r = &record.report;
    let primes = r
        .ctx
        .primes()
        .iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(";");
    let mut row = format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.ctx.d_value(),
        r.ctx.n(),
        primes,
        r.rank_x,
        r.rank_y,
        r.sizes.s_minus,
        r.sizes.s_minus_prime,
        r.sizes.s_plus,
        r.sizes.s_plus_prime,
        tamagawa_exponent(&r.tamagawa_minus),
        tamagawa_exponent(&r.tamagawa_plus),
        r.dimsum_minus,
        r.dimsum_plus,
        r.rank0,
        r.rank1_conditional,
        notes(r),
    );
    if with_members {
        match &record.members {
            Some(sets) => {
                for set in sets {
                    row.push(',');
                    row.push_str(&join_representatives(set, &r.ctx, ";"));
                }
            }
            None => row.push_str(",,,,"),
        }
    }
    row
}

fn write_json(out: &mut dyn Write, records: &[SieveRecord]) -> io::Result<()> {
    for record in records {
        let value = json_record(record);
        serde_json::to_writer(&mut *out, &value)?;
        writeln!(out)?;
    }
    Ok(())
}

fn json_record(record: &SieveRecord) -> Value {
    let r = &record.report;
    let mut obj = Map::new();
    obj.insert("D".into(), big_to_value(&r.ctx.d_value()));
    obj.insert("n".into(), Value::from(r.ctx.n() as u64));
    obj.insert(
        "primes".into(),
        Value::Array(r.ctx.primes().iter().map(|&p| Value::from(p)).collect()),
    );
    obj.insert("rank_X".into(), Value::from(r.rank_x as u64));
    obj.insert("rank_Y".into(), Value::from(r.rank_y as u64));
    obj.insert("size_S_minus".into(), u128_to_value(r.sizes.s_minus));
    obj.insert(
        "size_Sprime_minus".into(),
        u128_to_value(r.sizes.s_minus_prime),
    );
    obj.insert("size_S_plus".into(), u128_to_value(r.sizes.s_plus));
    obj.insert(
        "size_Sprime_plus".into(),
        u128_to_value(r.sizes.s_plus_prime),
    );
    obj.insert(
        "t_minus".into(),
        Value::from(tamagawa_exponent(&r.tamagawa_minus)),
    );
    obj.insert(
        "t_plus".into(),
        Value::from(tamagawa_exponent(&r.tamagawa_plus)),
    );
    obj.insert("dimsum_minus".into(), Value::from(r.dimsum_minus));
    obj.insert("dimsum_plus".into(), Value::from(r.dimsum_plus));
    obj.insert("rank0".into(), Value::Bool(r.rank0));
    obj.insert("rank1_conditional".into(), Value::Bool(r.rank1_conditional));
    obj.insert("notes".into(), Value::String(notes(r).to_string()));
    if let Some(sets) = &record.members {
        let mut members = Map::new();
        for (key, set) in MEMBER_KEYS.iter().zip(sets.iter()) {
            members.insert(
                (*key).into(),
                Value::Array(
                    set.iter()
                        .map(|c| big_to_value(&c.representative(&r.ctx)))
                        .collect(),
                ),
            );
        }
        obj.insert("members".into(), Value::Object(members));
    }
    Value::Object(obj)
}

fn write_text(out: &mut dyn Write, records: &[SieveRecord]) -> io::Result<()> {
    for (i, record) in records.iter().enumerate() {
        if i > 0 {
            writeln!(out)?;
        }
        let r = &record.report;
        let factorization = r
            .ctx
            .primes()
            .iter()
            .zip(r.ctx.exponents())
            .map(|(p, e)| {
                if *e == 1 {
                    p.to_string()
                } else {
                    format!("{p}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" * ");
        writeln!(
            out,
            "D = {} = {}  (n = {})",
            r.ctx.d_value(),
            factorization,
            r.ctx.n()
        )?;
        writeln!(out, "  rank_X = {}  rank_Y = {}", r.rank_x, r.rank_y)?;
        writeln!(
            out,
            "  sizes: |S(E-)| = {}  |S(E-')| = {}  |S(E+)| = {}  |S(E+')| = {}",
            r.sizes.s_minus, r.sizes.s_minus_prime, r.sizes.s_plus, r.sizes.s_plus_prime
        )?;
        writeln!(
            out,
            "  Tamagawa ratios: T_minus = {} (t = {})  T_plus = {} (t = {})",
            r.tamagawa_minus,
            tamagawa_exponent(&r.tamagawa_minus),
            r.tamagawa_plus,
            tamagawa_exponent(&r.tamagawa_plus)
        )?;
        writeln!(
            out,
            "  dimension sums: minus = {}  plus = {}",
            r.dimsum_minus, r.dimsum_plus
        )?;
        let marker = if r.rank1_conditional {
            "  [conditional-BSD]"
        } else {
            ""
        };
        writeln!(
            out,
            "  flags: rank0 = {}  rank1_conditional = {}{}",
            r.rank0, r.rank1_conditional, marker
        )?;
        if let Some(sets) = &record.members {
            writeln!(out, "  members:")?;
            for (family, set) in ALL_FAMILIES.iter().zip(sets.iter()) {
                writeln!(
                    out,
                    "    {:<7} = {{{}}}",
                    family.label(),
                    join_representatives(set, &r.ctx, ", ")
                )?;
            }
        }
    }
    Ok(())
}
