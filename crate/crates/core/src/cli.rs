//! The `grs` command line.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::bounds::{
    identities_suite, inequality_suite, nestor_cecilia_check, report_json, verify_generic_bound,
    verify_rs_bounds_from, verify_rs_lower_bounds_from, BoundVerdict, PeakSeries,
};
use crate::correlation;
use crate::error::{Error, Result};
use crate::exactnum::{decimal_approx, QAlpha};
use crate::fast::{abgd, streaming_peaks, GeoffEvaluator, PeakReport, TABLE1_SHIFTS, TABLE2_INDICES};
use crate::scalar::{display_complex, display_rational};
use crate::seq::{grs_pair, Budget, SeedPair, Sequence};

/// Exit status of a run whose report contains a false verdict.
pub const EXIT_VERIFY_FAILED: i32 = 1;
/// Exit status for bad arguments or unreadable input.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "grs", version, about = "Golay-Rudin-Shapiro pairs: correlations, peak scans and exact bound checks")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Write to this file instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Memory cap in bytes (overrides GRS_BUDGET_BYTES).
    #[arg(long, global = true)]
    pub budget: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Rs,
    Generic,
    Inequalities,
    Identities,
}

#[derive(Debug, Clone, Args)]
pub struct SeedSource {
    /// Use the Rudin–Shapiro seed x0 = y0 = 1 (the default).
    #[arg(long, conflicts_with = "seed")]
    pub rs: bool,
    /// Seed pair file: two sequence records.
    #[arg(long)]
    pub seed: Option<PathBuf>,
}

impl SeedSource {
    fn load(&self) -> Result<SeedPair> {
        match &self.seed {
            Some(path) => SeedPair::parse(&read(path)?),
            None => Ok(SeedPair::rudin_shapiro()),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the level-n pair (x_n, y_n).
    Gen {
        #[command(flatten)]
        source: SeedSource,
        #[arg(long)]
        n: u32,
    },
    /// One correlation value, or a summary of peaks and demerit factors.
    Corr {
        /// File with one or two sequence records (f, then g; g defaults to f).
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        shift: Option<i64>,
        /// Periodic correlation modulo this period instead of aperiodic.
        #[arg(long)]
        period: Option<i64>,
    },
    /// Every nonzero aperiodic correlation value of (f, g).
    Spectrum {
        #[arg(long)]
        input: PathBuf,
    },
    /// PCC of (x_n, y_n) and PSL of x_{n+1} by streaming.
    Peaks {
        #[command(flatten)]
        source: SeedSource,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        t_split: Option<u32>,
    },
    /// Regenerate table 1, 2, 3 or 4 (CSV unless --format json).
    Tables {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        which: u8,
        #[arg(long)]
        max: Option<u32>,
    },
    /// Exact verdicts for a suite of bounds or identities.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
        /// Largest level (defaults: rs 26, generic 12).
        #[arg(long)]
        max: Option<u32>,
        /// Seed for the generic suite; defaults to the three corpus seeds.
        #[arg(long)]
        seed: Option<PathBuf>,
    },
    /// Decimal interval of width 10^-digits around an element "p q r" of Q(α0).
    Approx {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        #[arg(long, default_value_t = 12)]
        digits: u32,
    },
}

fn read(path: &Path) -> Result<String> {
    Ok(fs::read_to_string(path)?)
}

fn read_pair(path: &Path) -> Result<(Sequence, Sequence)> {
    let text = read(path)?;
    let mut lines = text.lines().peekable();
    let f = Sequence::parse_record(&mut lines)?;
    while lines.peek().is_some_and(|l| l.trim().is_empty()) {
        lines.next();
    }
    let g = if lines.peek().is_some() { Sequence::parse_record(&mut lines)? } else { f.clone() };
    Ok((f, g))
}

fn json_text(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json") + "\n"
}

fn csv_text(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Error::Io(io::Error::other(e));
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(io::Error::other(e.to_string())))?;
    Ok(String::from_utf8(bytes).expect("ascii csv"))
}

fn rows_json(header: &[&str], rows: &[Vec<String>]) -> serde_json::Value {
    rows.iter()
        .map(|r| header.iter().zip(r).map(|(k, v)| ((*k).to_string(), json!(v))).collect::<serde_json::Map<_, _>>())
        .collect::<Vec<_>>()
        .into()
}

fn report_rows(report: &PeakReport, n: u32) -> Vec<Vec<String>> {
    report.witnesses.iter().map(|w| vec![n.to_string(), w.shift.to_string(), display_complex(&w.value)]).collect()
}

/// Rows `n,shift,value` (table 1, 3, 4) or `t,j,A,B,Gamma,Delta` (table 2).
pub fn table_rows(which: u8, max: Option<u32>, budget: &Budget) -> Result<(Vec<&'static str>, Vec<Vec<String>>)> {
    let nv = ["n", "shift", "value"].to_vec();
    match which {
        1 => {
            let max = max.unwrap_or(10);
            if max as usize >= TABLE1_SHIFTS.len() {
                return Err(Error::Parse(format!("table 1 lists shifts for n <= {}", TABLE1_SHIFTS.len() - 1)));
            }
            let mut geoff = GeoffEvaluator::new();
            let rows = (0..=max)
                .flat_map(|n| TABLE1_SHIFTS[n as usize].iter().map(move |&s| (n, s)))
                .map(|(n, s)| vec![n.to_string(), s.to_string(), geoff.value(n, s).to_string()])
                .collect();
            Ok((nv, rows))
        }
        2 => {
            let max = max.unwrap_or(10);
            if max == 0 || max as usize > TABLE2_INDICES.len() {
                return Err(Error::Parse(format!("table 2 lists t in 1..={}", TABLE2_INDICES.len())));
            }
            let mut rows = Vec::new();
            for t in 1..=max {
                let table = abgd(t);
                for &j in TABLE2_INDICES[t as usize - 1] {
                    let e = table.get(j);
                    rows.push([t as i64, j, e.a, e.b, e.g, e.d].iter().map(i64::to_string).collect());
                }
            }
            Ok((["t", "j", "A", "B", "Gamma", "Delta"].to_vec(), rows))
        }
        3 => {
            let seed = SeedPair::rudin_shapiro();
            let mut rows = Vec::new();
            for n in 0..=max.unwrap_or(26) {
                rows.extend(report_rows(&streaming_peaks(&seed, n, None, budget)?.pcc, n));
            }
            Ok((nv, rows))
        }
        4 => {
            let seed = SeedPair::rudin_shapiro();
            let mut rows = vec![vec!["0".into(), "all".into(), "0".into()]];
            for n in 1..=max.unwrap_or(26) {
                rows.extend(report_rows(&streaming_peaks(&seed, n - 1, None, budget)?.psl_next, n));
            }
            Ok((nv, rows))
        }
        _ => Err(Error::Parse(format!("no table {which}"))),
    }
}

/// The verdicts of one suite, in a fixed order.
pub fn suite_verdicts(suite: Suite, max: Option<u32>, seed: Option<&Path>, budget: &Budget) -> Result<Vec<BoundVerdict>> {
    Ok(match suite {
        Suite::Rs => {
            let series = PeakSeries::compute(&SeedPair::rudin_shapiro(), max.unwrap_or(26), budget)?;
            let mut v = verify_rs_bounds_from(&series)?;
            v.extend(verify_rs_lower_bounds_from(&series)?);
            v
        }
        Suite::Generic => {
            let seeds = match seed {
                Some(p) => vec![SeedPair::parse(&read(p)?)?],
                None => SeedPair::corpus(),
            };
            let mut out = Vec::new();
            for (i, s) in seeds.iter().enumerate() {
                for mut v in verify_generic_bound(s, max.unwrap_or(12), budget)? {
                    v.claim_id = format!("seed{i}-{}", v.claim_id);
                    out.push(v);
                }
            }
            out
        }
        Suite::Inequalities => inequality_suite(),
        Suite::Identities => {
            let mut out = identities_suite();
            for (i, s) in SeedPair::corpus().iter().enumerate() {
                for mut v in nestor_cecilia_check(s, 0, max.unwrap_or(10), budget)? {
                    v.claim_id = format!("seed{i}-{}", v.claim_id);
                    out.push(v);
                }
            }
            out
        }
    })
}

/// Runs one command and returns the text to emit and the exit status.
pub fn render(cfg: &RunConfig) -> Result<(String, i32)> {
    let budget = cfg.budget.map(Budget::from_bytes).unwrap_or_else(Budget::from_env);
    let format = cfg.format;
    let json_or = |v: serde_json::Value, csv: &dyn Fn() -> Result<String>| -> Result<String> {
        match format.unwrap_or(Format::Json) {
            Format::Json => Ok(json_text(&v)),
            Format::Csv => csv(),
        }
    };
    let text = match &cfg.command {
        Command::Gen { source, n } => {
            let p = grs_pair(&source.load()?, *n, &budget)?;
            p.x.to_file_string() + &p.y.to_file_string()
        }
        Command::Corr { input, shift, period } => {
            let (f, g) = read_pair(input)?;
            match (shift, period) {
                (Some(s), None) => {
                    let v = correlation::crosscorr(&f, &g, *s);
                    let v = display_complex(&v);
                    json_or(json!({"shift": s.to_string(), "value": v}), &|| {
                        csv_text(&["shift", "value"], &[vec![s.to_string(), v.clone()]])
                    })?
                }
                (Some(s), Some(k)) => {
                    let v = display_complex(&correlation::periodic_corr(&f, &g, *k, *s)?);
                    json_or(json!({"shift": s.to_string(), "period": k.to_string(), "value": v}), &|| {
                        csv_text(&["shift", "period", "value"], &[vec![s.to_string(), k.to_string(), v.clone()]])
                    })?
                }
                (None, Some(_)) => return Err(Error::Parse("--period needs --shift".into())),
                (None, None) => {
                    let summary = json!({
                        "pcc": correlation::pcc(&f, &g).to_json(),
                        "psl": correlation::psl(&f)?.to_json(),
                        "demerit_auto": display_rational(&correlation::demerit_auto(&f)?),
                        "demerit_cross": display_rational(&correlation::demerit_cross(&f, &g)?),
                    });
                    json_text(&summary)
                }
            }
        }
        Command::Spectrum { input } => {
            let (f, g) = read_pair(input)?;
            let sp = correlation::checked_spectrum(&f, &g, &budget)?;
            json_or(sp.to_json(), &|| {
                let mut buf = Vec::new();
                sp.write_csv(&mut buf)?;
                Ok(String::from_utf8(buf).expect("ascii csv"))
            })?
        }
        Command::Peaks { source, n, t_split } => {
            let r = streaming_peaks(&source.load()?, *n, *t_split, &budget)?;
            json_or(json!({"pcc": r.pcc.to_json("pcc"), "psl_next": r.psl_next.to_json("psl")}), &|| {
                let mut rows: Vec<Vec<String>> = Vec::new();
                for (kind, rep) in [("pcc", &r.pcc), ("psl", &r.psl_next)] {
                    for row in report_rows(rep, rep.n) {
                        rows.push(std::iter::once(kind.to_string()).chain(row).collect());
                    }
                }
                csv_text(&["kind", "n", "shift", "value"], &rows)
            })?
        }
        Command::Tables { which, max } => {
            let (header, rows) = table_rows(*which, *max, &budget)?;
            match format.unwrap_or(Format::Csv) {
                Format::Csv => csv_text(&header, &rows)?,
                Format::Json => json_text(&rows_json(&header, &rows)),
            }
        }
        Command::Verify { suite, max, seed } => {
            let verdicts = suite_verdicts(*suite, *max, seed.as_deref(), &budget)?;
            let code = if verdicts.iter().all(|v| v.holds) { 0 } else { EXIT_VERIFY_FAILED };
            let text = json_or(report_json(&verdicts), &|| {
                let rows: Vec<Vec<String>> = verdicts
                    .iter()
                    .map(|v| {
                        vec![
                            v.claim_id.clone(),
                            v.relation.symbol().into(),
                            v.lhs.render(),
                            v.rhs.render(),
                            v.holds.to_string(),
                            v.witness.clone().unwrap_or_default(),
                        ]
                    })
                    .collect();
                csv_text(&["claim_id", "relation", "lhs", "rhs", "holds", "witness"], &rows)
            })?;
            return Ok((text, code));
        }
        Command::Approx { expr, digits } => {
            let v = QAlpha::parse(expr)?;
            let interval = decimal_approx(&v, *digits);
            json_or(json!({"expr": v.serialize(), "digits": digits, "interval": interval}), &|| {
                Ok(interval.clone() + "\n")
            })?
        }
    };
    Ok((text, 0))
}

/// Runs one command, writing its output; returns the exit status.
pub fn run(cfg: &RunConfig) -> Result<i32> {
    let (text, code) = render(cfg)?;
    match &cfg.output {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(code)
}

/// Parses `args` (program name first) and runs; usage and input errors
/// are reported on stderr with status 2.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    match run(&cfg) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("grs: {e}");
            EXIT_USAGE
        }
    }
}
