//! Embedded ground-truth table of point and orbit counts for 3 <= n <= 30,
//! plus the closed formula for exterior counts at odd n. The table is a
//! checked-in CSV guarded by a checksum so the CLI `--check` mode and the
//! test suites share one source.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// One reference row. Histogram slots cover multiplicities 2..=7; absent
/// cells in the source table are zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReferenceRow {
    pub n: u32,
    pub interior_points: u64,
    pub exterior_points: u64,
    pub total_points: u64,
    pub interior_orbits: u64,
    pub exterior_orbits: u64,
    pub total_orbits: u64,
    /// Interior points (center excluded) with exactly k lines, k = 2..=7.
    pub interior_hist: [u64; 6],
    /// Exterior points with exactly k lines, k = 2..=7.
    pub exterior_hist: [u64; 6],
}

impl ReferenceRow {
    /// Whether the arrangement has a center point (two or more diameters).
    pub fn has_center(&self) -> bool {
        self.n.is_multiple_of(2) && self.n >= 4
    }
}

static TABLE_CSV: &str = include_str!("../data/reference.csv");

/// FNV-1a of the embedded CSV, pinned so silent edits are caught.
const TABLE_CHECKSUM: u64 = 0x5d0df5c416250055;

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut h: u64 = 0xcbf29ce484222325;
    for &b in bytes {
        h ^= u64::from(b);
        h = h.wrapping_mul(0x100000001b3);
    }
    h
}

fn parse_table() -> Result<Vec<ReferenceRow>> {
    if fnv1a(TABLE_CSV.as_bytes()) != TABLE_CHECKSUM {
        return Err(Error::CorruptReferenceData(format!(
            "checksum mismatch: {:#x}",
            fnv1a(TABLE_CSV.as_bytes())
        )));
    }
    let mut rows = Vec::new();
    for (lineno, line) in TABLE_CSV.lines().enumerate() {
        if lineno == 0 || line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 19 {
            return Err(Error::CorruptReferenceData(format!(
                "line {} has {} fields, expected 19",
                lineno + 1,
                fields.len()
            )));
        }
        let num = |idx: usize| -> Result<u64> {
            let f = fields[idx].trim();
            if f.is_empty() {
                return Ok(0);
            }
            f.parse().map_err(|_| {
                Error::CorruptReferenceData(format!("bad number {f:?} on line {}", lineno + 1))
            })
        };
        let mut interior_hist = [0u64; 6];
        let mut exterior_hist = [0u64; 6];
        for k in 0..6 {
            interior_hist[k] = num(7 + k)?;
            exterior_hist[k] = num(13 + k)?;
        }
        let row = ReferenceRow {
            n: num(0)? as u32,
            interior_points: num(1)?,
            exterior_points: num(2)?,
            total_points: num(3)?,
            interior_orbits: num(4)?,
            exterior_orbits: num(5)?,
            total_orbits: num(6)?,
            interior_hist,
            exterior_hist,
        };
        // Internal consistency of the shipped data. The center point counts
        // toward interior totals but is excluded from the histograms.
        let center = u64::from(row.has_center());
        let consistent = row.interior_hist.iter().sum::<u64>() + center == row.interior_points
            && row.exterior_hist.iter().sum::<u64>() == row.exterior_points
            && u64::from(row.n) + row.interior_points + row.exterior_points == row.total_points
            && 1 + row.interior_orbits + row.exterior_orbits == row.total_orbits;
        if !consistent {
            return Err(Error::CorruptReferenceData(format!(
                "row n={} is internally inconsistent",
                row.n
            )));
        }
        rows.push(row);
    }
    Ok(rows)
}

fn table() -> &'static [ReferenceRow] {
    static TABLE: OnceLock<Vec<ReferenceRow>> = OnceLock::new();
    TABLE.get_or_init(|| parse_table().expect("embedded reference table must parse"))
}

/// Reference counts for one arrangement order, when embedded (3 <= n <= 30).
pub fn reference(n: u32) -> Option<&'static ReferenceRow> {
    table().iter().find(|row| row.n == n)
}

/// All embedded rows, ascending in n.
pub fn all_rows() -> &'static [ReferenceRow] {
    table()
}

/// Exact number of exterior intersection points for odd n:
/// n(2n³ − 15n² + 34n − 21)/24. No closed form is known for even n.
pub fn exterior_closed_form(n: u32) -> Result<u64> {
    if n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "closed form only covers odd orders, got n={n}"
        )));
    }
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "order must be at least 3, got n={n}"
        )));
    }
    let n = i128::from(n);
    let poly = 2 * n * n * n - 15 * n * n + 34 * n - 21;
    let num = n * poly;
    debug_assert_eq!(num % 24, 0);
    Ok((num / 24) as u64)
}
