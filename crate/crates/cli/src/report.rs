//! Serializable report shapes shared by the JSON and CSV outputs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use simuorb_core::orbits::{Arrangement, ArrangementSummary, Orbit, Region};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShiftEntry {
    pub triplet: [i64; 3],
    pub rho: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub anchor: [i64; 3],
    pub shifts: Vec<ShiftEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub sqrt_radius: f64,
    pub region: String,
    pub classes: Vec<ClassReport>,
    pub cardinality: u64,
    pub mult_histogram: BTreeMap<u32, u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryReport {
    pub n: u32,
    pub interior_points: u64,
    pub exterior_points: u64,
    pub total_points: u64,
    pub interior_orbits: u64,
    pub exterior_orbits: u64,
    pub total_orbits: u64,
    pub interior_hist: BTreeMap<u32, u64>,
    pub exterior_hist: BTreeMap<u32, u64>,
}

/// Top-level report of the `orbits` command.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ArrangementReport {
    pub n: u32,
    pub orbits: Vec<OrbitReport>,
    pub summary: SummaryReport,
}

pub fn orbit_report(orbit: &Orbit) -> OrbitReport {
    OrbitReport {
        sqrt_radius: orbit.sqrt_radius,
        region: orbit.region.as_str().to_owned(),
        classes: orbit
            .classes
            .iter()
            .map(|c| ClassReport {
                anchor: [
                    i64::from(c.anchor.p()),
                    i64::from(c.anchor.q()),
                    c.anchor.r(),
                ],
                shifts: c
                    .members
                    .iter()
                    .map(|m| ShiftEntry {
                        triplet: [i64::from(m.triplet.p()), i64::from(m.triplet.q()), m.triplet.r()],
                        rho: m.shift,
                    })
                    .collect(),
            })
            .collect(),
        cardinality: orbit.cardinality,
        mult_histogram: orbit.mult_histogram.clone(),
    }
}

/// Synthetic row for the unit circle itself: n vertices, each met by the
/// n−1 chords through it. Counted in the orbit totals, so reports list it.
pub fn vertex_orbit_report(n: u32) -> OrbitReport {
    OrbitReport {
        sqrt_radius: 1.0,
        region: "vertices".to_owned(),
        classes: Vec::new(),
        cardinality: u64::from(n),
        mult_histogram: [(n - 1, u64::from(n))].into_iter().collect(),
    }
}

pub fn summary_report(s: &ArrangementSummary) -> SummaryReport {
    SummaryReport {
        n: s.n,
        interior_points: s.interior_points,
        exterior_points: s.exterior_points,
        total_points: s.total_points,
        interior_orbits: s.interior_orbits,
        exterior_orbits: s.exterior_orbits,
        total_orbits: s.total_orbits,
        interior_hist: s.interior_hist.clone(),
        exterior_hist: s.exterior_hist.clone(),
    }
}

/// Region filter for the `orbits` and `plot` commands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionFilter {
    Interior,
    Exterior,
    All,
}

impl RegionFilter {
    pub fn keeps(self, region: Region) -> bool {
        match self {
            RegionFilter::All => true,
            RegionFilter::Interior => matches!(region, Region::Interior | Region::Center),
            RegionFilter::Exterior => region == Region::Exterior,
        }
    }
}

/// Full per-arrangement report: orbits sorted by decreasing radius with the
/// vertex row spliced in when no region filter applies.
pub fn arrangement_report(arr: &Arrangement, filter: RegionFilter) -> ArrangementReport {
    let mut orbits: Vec<OrbitReport> = arr
        .orbits
        .iter()
        .filter(|o| filter.keeps(o.region))
        .map(orbit_report)
        .collect();
    if filter == RegionFilter::All {
        orbits.push(vertex_orbit_report(arr.n));
    }
    orbits.sort_by(|a, b| {
        b.sqrt_radius
            .total_cmp(&a.sqrt_radius)
            .then_with(|| a.region.cmp(&b.region))
    });
    ArrangementReport {
        n: arr.n,
        orbits,
        summary: summary_report(&arr.summary),
    }
}

fn hist_cell(map: &BTreeMap<u32, u64>) -> String {
    map.iter()
        .map(|(k, v)| format!("{k}:{v}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// CSV rows for the `orbits` command, one orbit per line.
pub fn orbits_csv(report: &ArrangementReport) -> String {
    let mut out = String::from(
        "sqrt_radius,region,classes,cardinality,max_multiplicity,mult_histogram,members\n",
    );
    for orbit in &report.orbits {
        let max_mult = orbit.mult_histogram.keys().max().copied().unwrap_or(0);
        let members = orbit
            .classes
            .iter()
            .map(|c| {
                c.shifts
                    .iter()
                    .map(|s| {
                        format!("({},{},{})@{}", s.triplet[0], s.triplet[1], s.triplet[2], s.rho)
                    })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("|");
        out.push_str(&format!(
            "{:.12},{},{},{},{},{},{}\n",
            orbit.sqrt_radius,
            orbit.region,
            orbit.classes.len(),
            orbit.cardinality,
            max_mult,
            hist_cell(&orbit.mult_histogram),
            members
        ));
    }
    out
}

/// Aligned text table for the `orbits` command.
pub fn orbits_text(report: &ArrangementReport) -> String {
    let mut out = format!(
        "n = {}: {} orbits, {} points\n{:>16}  {:<9} {:>7} {:>11}  histogram\n",
        report.n,
        report.summary.total_orbits,
        report.summary.total_points,
        "sqrt_radius",
        "region",
        "classes",
        "cardinality"
    );
    for orbit in &report.orbits {
        out.push_str(&format!(
            "{:>16.12}  {:<9} {:>7} {:>11}  {}\n",
            orbit.sqrt_radius,
            orbit.region,
            orbit.classes.len(),
            orbit.cardinality,
            hist_cell(&orbit.mult_histogram)
        ));
    }
    out
}

/// One summary line per order, same columns as the embedded reference table.
pub fn summary_csv_header() -> &'static str {
    "n,N_int,N_ext,N_total,M_int,M_ext,M_total,a_2,a_3,a_4,a_5,a_6,a_7,at_2,at_3,at_4,at_5,at_6,at_7"
}

pub fn summary_csv_row(s: &SummaryReport) -> String {
    let cell = |map: &BTreeMap<u32, u64>, k: u32| {
        map.get(&k).map(|v| v.to_string()).unwrap_or_default()
    };
    let mut cols = vec![
        s.n.to_string(),
        s.interior_points.to_string(),
        s.exterior_points.to_string(),
        s.total_points.to_string(),
        s.interior_orbits.to_string(),
        s.exterior_orbits.to_string(),
        s.total_orbits.to_string(),
    ];
    for k in 2..=7 {
        cols.push(cell(&s.interior_hist, k));
    }
    for k in 2..=7 {
        cols.push(cell(&s.exterior_hist, k));
    }
    cols.join(",")
}
