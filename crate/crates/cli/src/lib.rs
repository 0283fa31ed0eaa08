//! Command implementations behind the `simuorb` binary, split out so the
//! integration tests can exercise report construction directly.

pub mod report;
pub mod svg;

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use simuorb_core::oracle;
use simuorb_core::orbits::{compute, Options};
use simuorb_core::refdata;
use simuorb_core::Error as CoreError;

use report::{
    arrangement_report, summary_csv_header, summary_csv_row, summary_report, ArrangementReport,
    RegionFilter, SummaryReport,
};

/// Exit codes: 0 pass, 2 usage error, 3 numerical ambiguity, 4 mismatch.
#[derive(Debug)]
pub struct CmdError {
    pub code: i32,
    pub message: String,
}

impl CmdError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn mismatch(message: impl Into<String>) -> Self {
        Self {
            code: 4,
            message: message.into(),
        }
    }
}

impl From<CoreError> for CmdError {
    fn from(err: CoreError) -> Self {
        let code = match err {
            CoreError::InvalidArgument(_) => 2,
            CoreError::AmbiguousGrouping { .. } | CoreError::MultiplicityBound { .. } => 3,
            _ => 3,
        };
        Self {
            code,
            message: err.to_string(),
        }
    }
}

impl From<std::io::Error> for CmdError {
    fn from(err: std::io::Error) -> Self {
        Self {
            code: 2,
            message: err.to_string(),
        }
    }
}

pub type CmdResult<T> = Result<T, CmdError>;

/// Parse `--n` values: a single order `12` or an inclusive range `3..10`.
pub fn parse_order_range(spec: &str) -> CmdResult<RangeInclusive<u32>> {
    let parse_one = |s: &str| {
        s.trim()
            .parse::<u32>()
            .map_err(|_| CmdError::usage(format!("invalid order {s:?}")))
    };
    let range = match spec.split_once("..") {
        Some((a, b)) => parse_one(a)?..=parse_one(b)?,
        None => {
            let n = parse_one(spec)?;
            n..=n
        }
    };
    if range.is_empty() {
        return Err(CmdError::usage(format!("empty order range {spec:?}")));
    }
    if *range.start() < 3 {
        return Err(CmdError::usage(format!(
            "orders start at 3, got {}",
            range.start()
        )));
    }
    Ok(range)
}

pub fn parse_region(spec: &str) -> CmdResult<RegionFilter> {
    match spec {
        "interior" => Ok(RegionFilter::Interior),
        "exterior" => Ok(RegionFilter::Exterior),
        "all" => Ok(RegionFilter::All),
        other => Err(CmdError::usage(format!(
            "region must be interior, exterior or all, got {other:?}"
        ))),
    }
}

/// Assemble pipeline options from the tolerance flags.
pub fn build_options(radius_tol: Option<f64>, shift_tol: Option<f64>) -> CmdResult<Options> {
    let mut opts = Options::default();
    if let Some(tol) = radius_tol {
        if tol.is_nan() || tol <= 0.0 {
            return Err(CmdError::usage("--radius-tol must be positive"));
        }
        opts.radius_tol = tol;
    }
    if let Some(tol) = shift_tol {
        if tol.is_nan() || tol <= 0.0 {
            return Err(CmdError::usage("--shift-tol must be positive"));
        }
        opts.shift_tol = tol;
    }
    Ok(opts)
}

pub fn orbits_report(n: u32, filter: RegionFilter, opts: &Options) -> CmdResult<ArrangementReport> {
    let arr = compute(n, opts)?;
    Ok(arrangement_report(&arr, filter))
}

pub enum OrbitsFormat {
    Text,
    Csv,
    Json,
}

pub fn run_orbits(
    n: u32,
    filter: RegionFilter,
    format: OrbitsFormat,
    opts: &Options,
) -> CmdResult<String> {
    let report = orbits_report(n, filter, opts)?;
    Ok(match format {
        OrbitsFormat::Text => report::orbits_text(&report),
        OrbitsFormat::Csv => report::orbits_csv(&report),
        OrbitsFormat::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
    })
}

pub struct SummaryOutcome {
    pub output: String,
    pub warnings: Vec<String>,
    pub mismatches: Vec<String>,
}

fn check_against_reference(s: &SummaryReport) -> Vec<String> {
    let Some(r) = refdata::reference(s.n) else {
        return Vec::new();
    };
    let mut bad = Vec::new();
    let mut cell = |name: &str, got: u64, want: u64| {
        if got != want {
            bad.push(format!("n={}: {name} computed {got}, reference {want}", s.n));
        }
    };
    cell("N_int", s.interior_points, r.interior_points);
    cell("N_ext", s.exterior_points, r.exterior_points);
    cell("N_total", s.total_points, r.total_points);
    cell("M_int", s.interior_orbits, r.interior_orbits);
    cell("M_ext", s.exterior_orbits, r.exterior_orbits);
    cell("M_total", s.total_orbits, r.total_orbits);
    for k in 2..=7u32 {
        cell(
            &format!("a_{k}"),
            s.interior_hist.get(&k).copied().unwrap_or(0),
            r.interior_hist[(k - 2) as usize],
        );
        cell(
            &format!("at_{k}"),
            s.exterior_hist.get(&k).copied().unwrap_or(0),
            r.exterior_hist[(k - 2) as usize],
        );
    }
    bad
}

pub fn run_summary(
    range: RangeInclusive<u32>,
    check: bool,
    json: bool,
    opts: &Options,
) -> CmdResult<SummaryOutcome> {
    let mut rows = Vec::new();
    let mut warnings = Vec::new();
    let mut mismatches = Vec::new();
    for n in range {
        let arr = compute(n, opts)?;
        let s = summary_report(&arr.summary);
        if check {
            if refdata::reference(n).is_some() {
                mismatches.extend(check_against_reference(&s));
            } else {
                warnings.push(format!("n={n}: outside the reference table, check skipped"));
            }
        }
        rows.push(s);
    }
    let output = if json {
        let mut s = serde_json::to_string_pretty(&rows).expect("rows serialize");
        s.push('\n');
        s
    } else {
        let mut out = String::new();
        writeln!(out, "{}", summary_csv_header()).unwrap();
        for row in &rows {
            writeln!(out, "{}", summary_csv_row(row)).unwrap();
        }
        out
    };
    Ok(SummaryOutcome {
        output,
        warnings,
        mismatches,
    })
}

pub struct ValidateOutcome {
    pub output: String,
    pub clean: bool,
}

pub fn run_validate(range: RangeInclusive<u32>, opts: &Options) -> CmdResult<ValidateOutcome> {
    if *range.end() > 30 {
        return Err(CmdError::usage(format!(
            "the brute-force oracle covers 3 <= n <= 30, got {}",
            range.end()
        )));
    }
    let mut output = String::new();
    let mut clean = true;
    for n in range {
        let arr = compute(n, opts)?;
        let report = oracle::compare(&arr)?;
        clean &= report.is_empty();
        write!(output, "{report}").unwrap();
        if report.is_empty() {
            output.push('\n');
        }
    }
    Ok(ValidateOutcome { output, clean })
}

pub struct BenchRow {
    pub n: u32,
    pub points: u64,
    pub exterior_seconds: f64,
    pub interior_seconds: f64,
    pub total_seconds: f64,
}

pub fn run_bench(range: RangeInclusive<u32>, opts: &Options) -> CmdResult<Vec<BenchRow>> {
    let mut rows = Vec::new();
    for n in range {
        let start = std::time::Instant::now();
        let arr = compute(n, opts)?;
        let wall = start.elapsed().as_secs_f64();
        rows.push(BenchRow {
            n,
            points: arr.summary.total_points,
            exterior_seconds: arr.timings.exterior().as_secs_f64(),
            interior_seconds: arr.timings.interior().as_secs_f64(),
            total_seconds: wall,
        });
    }
    Ok(rows)
}

pub fn bench_text(rows: &[BenchRow]) -> String {
    let mut out = format!(
        "{:>5} {:>12} {:>12} {:>12} {:>12} {:>14}\n",
        "n", "points", "time_ext_s", "time_int_s", "time_s", "points_per_s"
    );
    for row in rows {
        writeln!(
            out,
            "{:>5} {:>12} {:>12.4} {:>12.4} {:>12.4} {:>14.0}",
            row.n,
            row.points,
            row.exterior_seconds,
            row.interior_seconds,
            row.total_seconds,
            row.points as f64 / row.total_seconds
        )
        .unwrap();
    }
    out
}

pub fn bench_json(rows: &[BenchRow]) -> String {
    let entries: Vec<serde_json::Value> = rows
        .iter()
        .map(|row| {
            serde_json::json!({
                "n": row.n,
                "points": row.points,
                "time_ext_s": row.exterior_seconds,
                "time_int_s": row.interior_seconds,
                "time_s": row.total_seconds,
                "points_per_second": row.points as f64 / row.total_seconds,
            })
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&entries).expect("bench rows serialize");
    s.push('\n');
    s
}

pub fn run_plot(
    n: u32,
    filter: RegionFilter,
    highlight_radius: Option<f64>,
    opts: &Options,
) -> CmdResult<String> {
    let arr = compute(n, opts)?;
    Ok(svg::render(
        &arr,
        &svg::PlotConfig {
            filter,
            highlight_radius,
        },
    ))
}
