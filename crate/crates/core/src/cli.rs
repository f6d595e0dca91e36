//! Command-line front end.
//!
//! Exit status: 0 when everything checks out, 1 on a mathematical
//! mismatch, 2 on a usage error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::classification::{class_records, class_table, count_classes, CountMode};
use crate::embedding::embeds_in;
use crate::fpgroup::{todd_coxeter, DEFAULT_MAX_COSETS};
use crate::hyperelliptic::{
    catalog_json, count_maximal_classes, lift_catalog, verify_lift, ClassCountMode, LiftRecord,
};
use crate::permgroup::{canonical_name_list, GroupName};
use crate::sphere_actions::{
    enumerate_descriptors, extension_chain, is_maximal, maximal_extension, maximal_types, order_n_element_exists,
    realize, MaximalMode, RotationType,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest `r` at which verify-range runs the relabeling search.
pub const EMBEDDING_R_MAX: usize = 30;

#[derive(Parser, Debug)]
#[command(name = "mcg", about = "Finite subgroups of sphere and hyperelliptic mapping class groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Derived,
    Congruence,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Isomorphism types of maximal finite subgroups at r marked points
    Classify {
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..))]
        r: u64,
        #[arg(long, value_enum, default_value = "derived")]
        mode: Mode,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Every feasible action descriptor at r
    Descriptors {
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..))]
        r: u64,
        /// Restrict to one rotation group, e.g. Z5, D6, A4, octahedral
        #[arg(long = "type")]
        kind: Option<String>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Conjugacy classes at r
    Conjugacy {
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..))]
        r: u64,
        #[arg(long)]
        iso: Option<String>,
        /// Print class counts (enumerated and closed form) instead of the table
        #[arg(long)]
        counts: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Maximal finite subgroups of the hyperelliptic mapping class group
    Hyperelliptic {
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        g: u32,
        /// Enumerate each lift and check its central quotient
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run every consistency sweep over ranges of r and g
    VerifyRange {
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..))]
        r_min: u64,
        #[arg(long, value_parser = clap::value_parser!(u64).range(3..))]
        r_max: u64,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        g_min: u32,
        #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
        g_max: u32,
        /// Treat the r = 3 divergence as a failure
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

/// Coset limit, overridable through `MCG_MAX_COSETS`.
pub fn max_cosets_from_env() -> Result<usize, String> {
    match std::env::var("MCG_MAX_COSETS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| format!("MCG_MAX_COSETS must be a positive integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_MAX_COSETS),
    }
}

fn parse_rotation(text: &str) -> Result<RotationType, String> {
    let name: GroupName = text.parse().map_err(|e| format!("{e}"))?;
    RotationType::from_group_name(&name).ok_or_else(|| format!("{text} is not a finite rotation group"))
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{text}") } else { write!(out, "{text}") };
            return code;
        }
    };
    let result = match cli.command {
        Command::Classify { r, mode, format } => classify(r as usize, mode, format, out),
        Command::Descriptors { r, kind, format } => descriptors(r as usize, kind.as_deref(), format, out),
        Command::Conjugacy { r, iso, counts, format } => conjugacy(r as usize, iso.as_deref(), counts, format, out),
        Command::Hyperelliptic { g, verify, format } => hyperelliptic(g, verify, format, out),
        Command::VerifyRange {
            r_min,
            r_max,
            g_min,
            g_max,
            strict,
            format,
        } => verify_range_command(r_min as usize..=r_max as usize, g_min..=g_max, strict, format, out),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
    }
}

type CmdResult = Result<i32, String>;

fn classify(r: usize, mode: Mode, format: Format, out: &mut dyn Write) -> CmdResult {
    let mode = match mode {
        Mode::Derived => MaximalMode::Derived,
        Mode::Congruence => MaximalMode::Congruence,
    };
    let names = maximal_types(r, mode);
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                r: usize,
                maximal: Vec<String>,
            }
            let labels = names.iter().map(GroupName::label).collect();
            writeln!(out, "{}", json(&Out { r, maximal: labels })).ok();
        }
        Format::Table => {
            writeln!(out, "{:<10} {:>6}", "group", "order").ok();
            for n in &names {
                writeln!(out, "{:<10} {:>6}", n.label(), n.order()).ok();
            }
        }
    }
    Ok(EXIT_OK)
}

fn descriptors(r: usize, kind: Option<&str>, format: Format, out: &mut dyn Write) -> CmdResult {
    let rot = kind.map(parse_rotation).transpose()?;
    let list = enumerate_descriptors(r, rot);
    match format {
        Format::Json => {
            let records: Vec<_> = list.iter().map(|d| d.to_record()).collect();
            writeln!(out, "{}", json(&records)).ok();
        }
        Format::Table => {
            writeln!(out, "{:<8} {:>5} {:<24} {:>4} {:>4} {:<7}", "group", "order", "marked", "k", "row", "maximal").ok();
            for d in &list {
                let marked: Vec<&str> = d.marked_slots().map(|s| s.kind.name()).collect();
                writeln!(
                    out,
                    "{:<8} {:>5} {:<24} {:>4} {:>4} {:<7}",
                    d.rotation().to_string(),
                    d.group_order(),
                    marked.join(","),
                    d.free_orbits(),
                    d.table_row().map(String::from).unwrap_or_else(|| "-".into()),
                    is_maximal(d)
                )
                .ok();
            }
        }
    }
    Ok(EXIT_OK)
}

#[derive(Serialize)]
struct CountRow {
    iso: String,
    enumerative: usize,
    closed_form: usize,
}

fn conjugacy(r: usize, iso: Option<&str>, counts: bool, format: Format, out: &mut dyn Write) -> CmdResult {
    let rot = iso.map(parse_rotation).transpose()?;
    if counts {
        let types: Vec<GroupName> = match rot {
            Some(t) => vec![t.group_name()],
            None => canonical_name_list(enumerate_descriptors(r, None).iter().map(|d| d.rotation().group_name()).collect()),
        };
        let rows: Vec<CountRow> = types
            .iter()
            .map(|t| CountRow {
                iso: t.label(),
                enumerative: count_classes(r, t, CountMode::Enumerative),
                closed_form: count_classes(r, t, CountMode::ClosedForm),
            })
            .collect();
        let agree = rows.iter().all(|c| c.enumerative == c.closed_form);
        match format {
            Format::Json => {
                #[derive(Serialize)]
                struct Out {
                    r: usize,
                    counts: Vec<CountRow>,
                }
                writeln!(out, "{}", json(&Out { r, counts: rows })).ok();
            }
            Format::Table => {
                writeln!(out, "{:<10} {:>11} {:>11}", "group", "enumerative", "closed_form").ok();
                for c in &rows {
                    writeln!(out, "{:<10} {:>11} {:>11}", c.iso, c.enumerative, c.closed_form).ok();
                }
            }
        }
        return Ok(if agree { EXIT_OK } else { EXIT_MISMATCH });
    }
    match format {
        Format::Json => {
            writeln!(out, "{}", json(&class_records(r, rot))).ok();
        }
        Format::Table => {
            writeln!(out, "{:>5} {:<36} {:<7} representative", "class", "invariant", "maximal").ok();
            for (i, row) in class_table(r)
                .iter()
                .filter(|row| rot.is_none_or(|t| row.representative.rotation() == t))
                .enumerate()
            {
                writeln!(out, "{:>5} {:<36} {:<7} {}", i, row.invariant.to_string(), row.maximal, row.representative).ok();
            }
        }
    }
    Ok(EXIT_OK)
}

fn hyperelliptic(g: u32, verify: bool, format: Format, out: &mut dyn Write) -> CmdResult {
    let max_cosets = max_cosets_from_env()?;
    let mut records = lift_catalog(g);
    let mut failures = Vec::new();
    if verify {
        for rec in records.iter_mut() {
            match verify_lift(rec.name, g, max_cosets) {
                Ok(checked) => *rec = checked,
                Err(e) => failures.push(format!("{}: {e}", rec.name)),
            }
        }
    }
    match format {
        Format::Json => {
            writeln!(out, "{}", json(&catalog_json(g, &records))).ok();
        }
        Format::Table => {
            writeln!(out, "{:<6} {:<6} {:>6} {:<9} presentation", "name", "base", "order", "verified").ok();
            for rec in &records {
                writeln!(
                    out,
                    "{:<6} {:<6} {:>6} {:<9} {}",
                    rec.name.tag(),
                    rec.base.label(),
                    rec.expected_order,
                    rec.verification.is_some(),
                    rec.presentation_text
                )
                .ok();
            }
        }
    }
    for f in &failures {
        writeln!(out, "FAIL {f}").ok();
    }
    Ok(if failures.is_empty() { EXIT_OK } else { EXIT_MISMATCH })
}

/// A failed or annotated check. `key` orders findings deterministically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Finding {
    pub check: &'static str,
    pub key: (u8, usize),
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepReport {
    pub checks: BTreeMap<&'static str, usize>,
    pub warnings: Vec<Finding>,
    pub mismatches: Vec<Finding>,
}

impl SweepReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }

    fn absorb(&mut self, other: SweepReport) {
        for (k, v) in other.checks {
            *self.checks.entry(k).or_default() += v;
        }
        self.warnings.extend(other.warnings);
        self.mismatches.extend(other.mismatches);
    }

    fn count(&mut self, check: &'static str) {
        *self.checks.entry(check).or_default() += 1;
    }

    fn fail(&mut self, check: &'static str, key: (u8, usize), detail: String) {
        self.mismatches.push(Finding { check, key, detail });
    }
}

fn labels(names: &[GroupName]) -> String {
    let l: Vec<String> = names.iter().map(GroupName::label).collect();
    format!("{{{}}}", l.join(", "))
}

fn sweep_r(r: usize, strict: bool) -> SweepReport {
    let mut rep = SweepReport::default();
    let key = (0, r);

    let derived = maximal_types(r, MaximalMode::Derived);
    let congruence = maximal_types(r, MaximalMode::Congruence);
    rep.count("maximal_types");
    if derived != congruence {
        let detail = format!("r = {r}: derived {} vs congruence {}", labels(&derived), labels(&congruence));
        if r == 3 && !strict {
            rep.warnings.push(Finding { check: "maximal_types", key, detail });
        } else {
            rep.fail("maximal_types", key, detail);
        }
    }

    let descriptors = enumerate_descriptors(r, None);
    let types = canonical_name_list(descriptors.iter().map(|d| d.rotation().group_name()).collect());
    for t in &types {
        rep.count("class_counts");
        let e = count_classes(r, t, CountMode::Enumerative);
        let c = count_classes(r, t, CountMode::ClosedForm);
        if e != c {
            rep.fail("class_counts", key, format!("r = {r}, {t}: enumerated {e}, closed form {c}"));
        }
    }

    let maximal: Vec<GroupName> = class_table(r).into_iter().filter(|row| row.maximal).map(|row| row.invariant.iso_label).collect();
    rep.count("maximal_classes_distinct");
    if canonical_name_list(maximal.clone()).len() != maximal.len() {
        rep.fail("maximal_classes_distinct", key, format!("r = {r}: {}", labels(&maximal)));
    }

    for n in 2..=r {
        rep.count("element_orders");
        let predicate = r.is_multiple_of(n) || (r - 1).is_multiple_of(n) || (r - 2).is_multiple_of(n);
        if order_n_element_exists(r, n) != predicate {
            rep.fail("element_orders", key, format!("r = {r}, n = {n}"));
        }
    }

    for d in &descriptors {
        rep.count("extension_chains");
        let chain = extension_chain(d);
        let mut prev = d.group_order();
        let grows = chain.iter().all(|x| {
            let ok = x.group_order() > prev && x.r() == r;
            prev = x.group_order();
            ok
        });
        if !grows || !chain.last().is_none_or(is_maximal) {
            rep.fail("extension_chains", key, format!("{d}"));
        }
        if r <= EMBEDDING_R_MAX {
            if let Some(top) = maximal_extension(d) {
                rep.count("embeddings");
                let embedded = match (realize(d), realize(&top)) {
                    (Ok(a), Ok(b)) => embeds_in(&a.group, &b.group),
                    _ => false,
                };
                if !embedded {
                    rep.fail("embeddings", key, format!("{d} into {top}"));
                }
            }
        }
    }
    rep
}

fn sweep_g(g: u32, max_cosets: usize) -> SweepReport {
    let mut rep = SweepReport::default();
    let key = (1, g as usize);
    rep.count("lift_counts");
    let catalog = count_maximal_classes(g, ClassCountMode::Catalog);
    let closed = count_maximal_classes(g, ClassCountMode::ClosedForm);
    if catalog != closed {
        rep.fail("lift_counts", key, format!("g = {g}: catalog {catalog}, closed form {closed}"));
    }

    let records = lift_catalog(g);
    rep.count("lift_bases");
    let bases = canonical_name_list(records.iter().map(|rec| rec.base.clone()).collect());
    // at g = 2 (r = 6) D4 is not maximal and U2g is absent on both sides
    let expected = maximal_types(2 * g as usize + 2, MaximalMode::Congruence);
    if bases != expected {
        rep.fail("lift_bases", key, format!("g = {g}: lifts over {}, maximal {}", labels(&bases), labels(&expected)));
    }

    for rec in &records {
        rep.count("lift_orders");
        check_order(rec, max_cosets, key, &mut rep);
        if rec.name.smallest_admissible_genus() == g {
            rep.count("lift_structure");
            if let Err(e) = verify_lift(rec.name, g, max_cosets) {
                rep.fail("lift_structure", key, e.to_string());
            }
        }
    }
    rep
}

fn check_order(rec: &LiftRecord, max_cosets: usize, key: (u8, usize), rep: &mut SweepReport) {
    match todd_coxeter(&rec.presentation, max_cosets) {
        Ok((order, _)) if order == rec.expected_order => {}
        Ok((order, _)) => rep.fail(
            "lift_orders",
            key,
            format!("{} at g = {}: order {order}, expected {}", rec.name, rec.g, rec.expected_order),
        ),
        Err(e) => rep.fail("lift_orders", key, format!("{} at g = {}: {e}", rec.name, rec.g)),
    }
}

/// All sweeps over `rs` and `gs`, gathered in a deterministic order.
pub fn verify_range(
    rs: std::ops::RangeInclusive<usize>,
    gs: std::ops::RangeInclusive<u32>,
    strict: bool,
    max_cosets: usize,
) -> SweepReport {
    let by_r: Vec<SweepReport> = rs.into_par_iter().map(|r| sweep_r(r, strict)).collect();
    let by_g: Vec<SweepReport> = gs.into_par_iter().map(|g| sweep_g(g, max_cosets)).collect();
    let mut report = SweepReport::default();
    for part in by_r.into_iter().chain(by_g) {
        report.absorb(part);
    }
    report.warnings.sort();
    report.mismatches.sort();
    report
}

fn verify_range_command(
    rs: std::ops::RangeInclusive<usize>,
    gs: std::ops::RangeInclusive<u32>,
    strict: bool,
    format: Format,
    out: &mut dyn Write,
) -> CmdResult {
    if rs.is_empty() || gs.is_empty() {
        return Err("empty range: minimum exceeds maximum".into());
    }
    let max_cosets = max_cosets_from_env()?;
    let report = verify_range(rs, gs, strict, max_cosets);
    match format {
        Format::Json => {
            writeln!(out, "{}", json(&report)).ok();
        }
        Format::Table => {
            for (check, n) in &report.checks {
                writeln!(out, "{check:<26} {n:>8} checked").ok();
            }
            for w in &report.warnings {
                writeln!(out, "warning [{}] {}", w.check, w.detail).ok();
            }
            match report.mismatches.first() {
                Some(m) => {
                    writeln!(out, "MISMATCH [{}] {} ({} total)", m.check, m.detail, report.mismatches.len()).ok();
                }
                None => {
                    writeln!(out, "all checks passed").ok();
                }
            }
        }
    }
    Ok(if report.ok() { EXIT_OK } else { EXIT_MISMATCH })
}
