//! Brute-force ground truth: build every chord, intersect every pair of
//! chords, cluster coincident points, and read radii, cardinalities and
//! multiplicities straight off the coordinates. No shape descriptors and no
//! radius formula are used anywhere here; independence from the orbit
//! pipeline is the entire point.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::geometry::{vertex_point, PlanePoint};
use crate::orbits::{Arrangement, Region};

/// Euclidean merge radius for coincident intersection points.
pub const MERGE_EPS: f64 = 1e-9;
/// Two distinct clusters closer than this make the run unreliable.
pub const SUSPECT_EPS: f64 = 1e-7;
/// Radius tolerance when matching oracle radii against pipeline radii.
pub const MATCH_EPS: f64 = 1e-9;

const MAX_ORDER: u32 = 30;

/// One merged intersection point with the set of chords through it.
#[derive(Debug, Clone)]
pub struct OraclePoint {
    pub coords: PlanePoint,
    /// Incident chords as vertex-index pairs; the multiplicity is the count.
    pub incident_lines: BTreeSet<(u32, u32)>,
    pub radius: f64,
}

impl OraclePoint {
    pub fn multiplicity(&self) -> u32 {
        self.incident_lines.len() as u32
    }
}

/// Radii of one region grouped into orbits, cardinalities and histograms.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleOrbit {
    pub radius: f64,
    pub cardinality: u64,
    pub mult_histogram: BTreeMap<u32, u64>,
}

/// Result of one brute-force run.
#[derive(Debug, Clone)]
pub struct OracleRun {
    pub n: u32,
    pub points: Vec<OraclePoint>,
    /// Orbits with radius < 1, descending, center (radius 0) included.
    pub interior: Vec<OracleOrbit>,
    /// Orbits with radius > 1, descending.
    pub exterior: Vec<OracleOrbit>,
    /// False when two clusters sit suspiciously close to the merge radius.
    pub reliable: bool,
    /// Smallest observed gap between cluster centers (exact below 1e-4,
    /// infinity when every gap is larger).
    pub min_center_gap: f64,
}

impl OracleRun {
    pub fn interior_points(&self) -> u64 {
        self.interior.iter().map(|o| o.cardinality).sum()
    }

    pub fn exterior_points(&self) -> u64 {
        self.exterior.iter().map(|o| o.cardinality).sum()
    }
}

struct Cluster {
    coords: PlanePoint,
    lines: BTreeSet<(u32, u32)>,
}

/// Spatial hash of cluster centers on a fixed grid.
struct ClusterIndex {
    cell: f64,
    grid: HashMap<(i64, i64), Vec<usize>>,
    clusters: Vec<Cluster>,
}

impl ClusterIndex {
    fn new(cell: f64) -> Self {
        Self {
            cell,
            grid: HashMap::new(),
            clusters: Vec::new(),
        }
    }

    fn cell_of(&self, p: &PlanePoint) -> (i64, i64) {
        (
            (p.x / self.cell).floor() as i64,
            (p.y / self.cell).floor() as i64,
        )
    }

    fn nearest_within(&self, p: &PlanePoint, eps: f64) -> Option<(usize, f64)> {
        let (cx, cy) = self.cell_of(p);
        let reach = (eps / self.cell).ceil() as i64;
        let mut best: Option<(usize, f64)> = None;
        for dx in -reach..=reach {
            for dy in -reach..=reach {
                if let Some(bucket) = self.grid.get(&(cx + dx, cy + dy)) {
                    for &idx in bucket {
                        let d = self.clusters[idx].coords.dist(p);
                        if d <= eps && best.is_none_or(|(_, bd)| d < bd) {
                            best = Some((idx, d));
                        }
                    }
                }
            }
        }
        best
    }

    fn insert(&mut self, p: PlanePoint, line1: (u32, u32), line2: (u32, u32)) {
        match self.nearest_within(&p, MERGE_EPS) {
            Some((idx, _)) => {
                self.clusters[idx].lines.insert(line1);
                self.clusters[idx].lines.insert(line2);
            }
            None => {
                let key = self.cell_of(&p);
                let idx = self.clusters.len();
                self.clusters.push(Cluster {
                    coords: p,
                    lines: [line1, line2].into_iter().collect(),
                });
                self.grid.entry(key).or_default().push(idx);
            }
        }
    }

    /// Smallest pairwise center gap, exact up to `limit`. Runs on a coarse
    /// throwaway grid so the scan stays linear in the cluster count.
    fn min_gap(&self, limit: f64) -> f64 {
        let mut coarse: HashMap<(i64, i64), Vec<usize>> = HashMap::new();
        let key = |p: &PlanePoint| {
            (
                (p.x / limit).floor() as i64,
                (p.y / limit).floor() as i64,
            )
        };
        for (idx, c) in self.clusters.iter().enumerate() {
            coarse.entry(key(&c.coords)).or_default().push(idx);
        }
        let mut min = f64::INFINITY;
        for (idx, c) in self.clusters.iter().enumerate() {
            let (cx, cy) = key(&c.coords);
            for dx in -1..=1 {
                for dy in -1..=1 {
                    if let Some(bucket) = coarse.get(&(cx + dx, cy + dy)) {
                        for &other in bucket {
                            if other > idx {
                                min = min.min(c.coords.dist(&self.clusters[other].coords));
                            }
                        }
                    }
                }
            }
        }
        min
    }
}

fn intersect_chords(a: PlanePoint, b: PlanePoint, c: PlanePoint, d: PlanePoint) -> Option<PlanePoint> {
    let d1 = (b.x - a.x, b.y - a.y);
    let d2 = (d.x - c.x, d.y - c.y);
    let det = d1.0 * d2.1 - d1.1 * d2.0;
    if det.abs() < 1e-12 {
        return None;
    }
    let rhs = (c.x - a.x, c.y - a.y);
    let t = (rhs.0 * d2.1 - rhs.1 * d2.0) / det;
    Some(PlanePoint {
        x: a.x + t * d1.0,
        y: a.y + t * d1.1,
    })
}

/// Intersect every pair of chords of the order-n arrangement and cluster the
/// results. Costs grow with the fourth power of n; capped at n = 30.
pub fn brute_force(n: u32) -> Result<OracleRun> {
    if !(3..=MAX_ORDER).contains(&n) {
        return Err(Error::InvalidArgument(format!(
            "oracle supports 3 <= n <= {MAX_ORDER}, got {n}"
        )));
    }
    let vertices: Vec<PlanePoint> = (0..n).map(|m| vertex_point(m, n)).collect();
    let mut lines: Vec<(u32, u32)> = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            lines.push((a, b));
        }
    }
    let mut index = ClusterIndex::new(1e-6);
    for (i, &(a, b)) in lines.iter().enumerate() {
        for &(c, d) in &lines[i + 1..] {
            // Chords sharing a vertex meet on the circle, never at an
            // arrangement point.
            if a == c || a == d || b == c || b == d {
                continue;
            }
            if let Some(p) = intersect_chords(
                vertices[a as usize],
                vertices[b as usize],
                vertices[c as usize],
                vertices[d as usize],
            ) {
                debug_assert!((p.norm() - 1.0).abs() > MERGE_EPS);
                index.insert(p, (a, b), (c, d));
            }
        }
    }

    let min_center_gap = index.min_gap(1e-4);
    let reliable = min_center_gap > SUSPECT_EPS;

    let mut points: Vec<OraclePoint> = index
        .clusters
        .into_iter()
        .map(|c| OraclePoint {
            radius: c.coords.norm(),
            coords: c.coords,
            incident_lines: c.lines,
        })
        .collect();
    points.sort_by(|a, b| b.radius.total_cmp(&a.radius));

    let mut interior = derive_orbits(points.iter().filter(|p| p.radius < 1.0 - MATCH_EPS));
    let exterior = derive_orbits(points.iter().filter(|p| p.radius > 1.0 + MATCH_EPS));
    interior.sort_by(|a, b| b.radius.total_cmp(&a.radius));
    let mut exterior = exterior;
    exterior.sort_by(|a, b| b.radius.total_cmp(&a.radius));

    Ok(OracleRun {
        n,
        points,
        interior,
        exterior,
        reliable,
        min_center_gap,
    })
}

/// Group already-sorted points into orbits with the same gap rule as the
/// descriptor pipeline.
fn derive_orbits<'a>(points: impl Iterator<Item = &'a OraclePoint>) -> Vec<OracleOrbit> {
    let mut orbits: Vec<OracleOrbit> = Vec::new();
    let mut current: Vec<&OraclePoint> = Vec::new();
    let flush = |current: &mut Vec<&OraclePoint>, orbits: &mut Vec<OracleOrbit>| {
        if current.is_empty() {
            return;
        }
        let radius = current.iter().map(|p| p.radius).sum::<f64>() / current.len() as f64;
        let mut hist: BTreeMap<u32, u64> = BTreeMap::new();
        for p in current.iter() {
            *hist.entry(p.multiplicity()).or_insert(0) += 1;
        }
        orbits.push(OracleOrbit {
            radius,
            cardinality: current.len() as u64,
            mult_histogram: hist,
        });
        current.clear();
    };
    for p in points {
        if let Some(last) = current.last() {
            if (last.radius - p.radius).abs() > 1e-9 * last.radius.max(1.0) {
                flush(&mut current, &mut orbits);
            }
        }
        current.push(p);
    }
    flush(&mut current, &mut orbits);
    orbits
}

/// One difference between the pipeline and the oracle.
#[derive(Debug, Clone, PartialEq)]
pub enum Discrepancy {
    OrbitCount {
        region: Region,
        pipeline: u64,
        oracle: u64,
    },
    RadiusOnlyInPipeline {
        region: Region,
        sqrt_radius: f64,
    },
    RadiusOnlyInOracle {
        region: Region,
        radius: f64,
    },
    Cardinality {
        region: Region,
        sqrt_radius: f64,
        pipeline: u64,
        oracle: u64,
    },
    Histogram {
        region: Region,
        sqrt_radius: f64,
        pipeline: BTreeMap<u32, u64>,
        oracle: BTreeMap<u32, u64>,
    },
    UnreliableOracle {
        min_center_gap: f64,
    },
}

impl std::fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Discrepancy::OrbitCount {
                region,
                pipeline,
                oracle,
            } => write!(
                f,
                "{} orbit count: pipeline {pipeline}, oracle {oracle}",
                region.as_str()
            ),
            Discrepancy::RadiusOnlyInPipeline {
                region,
                sqrt_radius,
            } => write!(
                f,
                "{} radius {sqrt_radius:.12} has no oracle match",
                region.as_str()
            ),
            Discrepancy::RadiusOnlyInOracle { region, radius } => write!(
                f,
                "oracle {} radius {radius:.12} has no pipeline match",
                region.as_str()
            ),
            Discrepancy::Cardinality {
                region,
                sqrt_radius,
                pipeline,
                oracle,
            } => write!(
                f,
                "{} radius {sqrt_radius:.12}: cardinality {pipeline} vs oracle {oracle}",
                region.as_str()
            ),
            Discrepancy::Histogram {
                region,
                sqrt_radius,
                pipeline,
                oracle,
            } => write!(
                f,
                "{} radius {sqrt_radius:.12}: multiplicities {pipeline:?} vs oracle {oracle:?}",
                region.as_str()
            ),
            Discrepancy::UnreliableOracle { min_center_gap } => write!(
                f,
                "oracle clustering unreliable (min center gap {min_center_gap:e})"
            ),
        }
    }
}

/// Outcome of a pipeline-vs-oracle comparison; empty means full agreement.
#[derive(Debug, Clone, Default)]
pub struct ComparisonReport {
    pub n: u32,
    pub discrepancies: Vec<Discrepancy>,
}

impl ComparisonReport {
    pub fn is_empty(&self) -> bool {
        self.discrepancies.is_empty()
    }
}

impl std::fmt::Display for ComparisonReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            return write!(f, "n={}: ok", self.n);
        }
        writeln!(f, "n={}: {} discrepancies", self.n, self.discrepancies.len())?;
        for d in &self.discrepancies {
            writeln!(f, "  {d}")?;
        }
        Ok(())
    }
}

fn compare_region(
    region: Region,
    pipeline: &[(f64, u64, BTreeMap<u32, u64>)],
    oracle: &[OracleOrbit],
    out: &mut Vec<Discrepancy>,
) {
    if pipeline.len() != oracle.len() {
        out.push(Discrepancy::OrbitCount {
            region,
            pipeline: pipeline.len() as u64,
            oracle: oracle.len() as u64,
        });
    }
    // Both descending; walk in lockstep with tolerance.
    let mut i = 0;
    let mut j = 0;
    while i < pipeline.len() && j < oracle.len() {
        let (pr, pc, ph) = &pipeline[i];
        let or = &oracle[j];
        if (pr - or.radius).abs() <= MATCH_EPS * pr.max(1.0) {
            if *pc != or.cardinality {
                out.push(Discrepancy::Cardinality {
                    region,
                    sqrt_radius: *pr,
                    pipeline: *pc,
                    oracle: or.cardinality,
                });
            }
            if ph != &or.mult_histogram {
                out.push(Discrepancy::Histogram {
                    region,
                    sqrt_radius: *pr,
                    pipeline: ph.clone(),
                    oracle: or.mult_histogram.clone(),
                });
            }
            i += 1;
            j += 1;
        } else if *pr > or.radius {
            out.push(Discrepancy::RadiusOnlyInPipeline {
                region,
                sqrt_radius: *pr,
            });
            i += 1;
        } else {
            out.push(Discrepancy::RadiusOnlyInOracle {
                region,
                radius: or.radius,
            });
            j += 1;
        }
    }
    for (pr, _, _) in &pipeline[i..] {
        out.push(Discrepancy::RadiusOnlyInPipeline {
            region,
            sqrt_radius: *pr,
        });
    }
    for or in &oracle[j..] {
        out.push(Discrepancy::RadiusOnlyInOracle {
            region,
            radius: or.radius,
        });
    }
}

/// Run the oracle for `arrangement.n` and diff radii, cardinalities and
/// multiplicity histograms. Discrepancies are data, not errors.
pub fn compare(arrangement: &Arrangement) -> Result<ComparisonReport> {
    let run = brute_force(arrangement.n)?;
    let mut report = ComparisonReport {
        n: arrangement.n,
        discrepancies: Vec::new(),
    };
    if !run.reliable {
        report.discrepancies.push(Discrepancy::UnreliableOracle {
            min_center_gap: run.min_center_gap,
        });
    }
    let collect = |region: Region| -> Vec<(f64, u64, BTreeMap<u32, u64>)> {
        arrangement
            .orbits
            .iter()
            .filter(|o| o.region == region)
            .map(|o| (o.sqrt_radius, o.cardinality, o.mult_histogram.clone()))
            .collect()
    };
    let mut interior = collect(Region::Interior);
    // The center orbit is an interior orbit for comparison purposes.
    interior.extend(collect(Region::Center));
    compare_region(Region::Interior, &interior, &run.interior, &mut report.discrepancies);
    compare_region(
        Region::Exterior,
        &collect(Region::Exterior),
        &run.exterior,
        &mut report.discrepancies,
    );
    Ok(report)
}

/// Squared distance from the center to the intersection of the chords
/// (z_A, z_B) and (z_C, z_D) of a circle of radius `big_r`, the four points
/// sitting at arbitrary polar angles. Reduces to the lattice radius function
/// when the angles are the 2πm/n vertex angles and big_r = 1.
pub fn cocyclic_radius_sq(alpha: [f64; 4], big_r: f64) -> Result<f64> {
    let [a, b, c, d] = alpha;
    let half_sum = (a + b - c - d) / 2.0;
    let st = half_sum.sin();
    if st.abs() < 1e-12 {
        return Err(Error::ParallelLines { n: 0 });
    }
    let cab = ((a - b) / 2.0).cos();
    let ccd = ((c - d) / 2.0).cos();
    let ct = half_sum.cos();
    Ok(big_r * big_r * (cab * cab + ccd * ccd - 2.0 * cab * ccd * ct) / (st * st))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{radius_sq, Quadruplet, Triplet};
    use crate::geometry::radius_sq_quadruplet;
    use crate::orbits::{compute, Options};
    use std::f64::consts::TAU;

    #[test]
    fn triangle_has_no_points() {
        let run = brute_force(3).unwrap();
        assert!(run.points.is_empty());
        assert!(run.reliable);
    }

    #[test]
    fn pentagon_counts() {
        let run = brute_force(5).unwrap();
        assert_eq!(run.interior_points(), 5);
        assert_eq!(run.exterior_points(), 5);
        assert_eq!(run.interior.len(), 1);
        assert_eq!(run.exterior.len(), 1);
    }

    #[test]
    fn order_out_of_range() {
        assert!(brute_force(2).is_err());
        assert!(brute_force(31).is_err());
    }

    #[test]
    fn twelve_gon_histograms() {
        let run = brute_force(12).unwrap();
        assert_eq!(run.interior_points(), 301);
        assert_eq!(run.exterior_points(), 588);
        let mut interior: BTreeMap<u32, u64> = BTreeMap::new();
        for orbit in &run.interior {
            for (&k, &v) in &orbit.mult_histogram {
                *interior.entry(k).or_insert(0) += v;
            }
        }
        // One center point where 6 diameters meet, excluded from the
        // published histograms but present here.
        assert_eq!(interior.remove(&6), Some(1));
        let expect: BTreeMap<u32, u64> = [(2, 228), (3, 60), (4, 12)].into_iter().collect();
        assert_eq!(interior, expect);
    }

    #[test]
    fn comparison_is_clean_for_small_orders() {
        for n in [5u32, 7, 9, 12] {
            let arr = compute(n, &Options::default()).unwrap();
            let report = compare(&arr).unwrap();
            assert!(report.is_empty(), "{report}");
        }
    }

    #[test]
    fn eighteen_gon_agreement_including_fivefold_points() {
        let run = brute_force(18).unwrap();
        let fivefold: u64 = run
            .interior
            .iter()
            .map(|o| o.mult_histogram.get(&5).copied().unwrap_or(0))
            .sum();
        assert_eq!(fivefold, 54);
        let arr = compute(18, &Options::default()).unwrap();
        let report = compare(&arr).unwrap();
        assert!(report.is_empty(), "{report}");
    }

    #[test]
    fn cluster_gap_stays_wide() {
        for n in [12u32, 16] {
            let run = brute_force(n).unwrap();
            assert!(run.min_center_gap > 1e-5, "n={n}: {}", run.min_center_gap);
        }
    }

    #[test]
    fn cocyclic_regular_positions() {
        let q = Quadruplet::new(12, [3, 4, 5, 7]).unwrap();
        let alpha = [3.0, 4.0, 5.0, 7.0].map(|m| m * TAU / 12.0);
        let j = cocyclic_radius_sq(alpha, 1.0).unwrap();
        let want = radius_sq(&Triplet::new(12, 1, 2, 1).unwrap()).value();
        assert!((j - want).abs() <= 1e-10 * want.max(1.0));
        let via_idx = radius_sq_quadruplet(&q).unwrap().value();
        assert!((j - via_idx).abs() <= 1e-10 * want.max(1.0));
    }

    #[test]
    fn cocyclic_diameters_meet_at_center() {
        use std::f64::consts::PI;
        let j = cocyclic_radius_sq([0.3, 0.3 + PI, 1.1, 1.1 + PI], 2.5).unwrap();
        assert!(j.abs() < 1e-12);
    }

    #[test]
    fn cocyclic_matches_coordinate_solve() {
        // Splitmix-style generator; no external randomness.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state = state.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            (z ^ (z >> 31)) as f64 / u64::MAX as f64
        };
        let mut trials = 0;
        while trials < 100 {
            let alpha = [next() * TAU, next() * TAU, next() * TAU, next() * TAU];
            let big_r = 0.5 + 2.0 * next();
            let pt = |a: f64| PlanePoint {
                x: big_r * a.cos(),
                y: big_r * a.sin(),
            };
            let Some(meet) = intersect_chords(pt(alpha[0]), pt(alpha[1]), pt(alpha[2]), pt(alpha[3]))
            else {
                continue;
            };
            let Ok(j) = cocyclic_radius_sq(alpha, big_r) else {
                continue;
            };
            // Skip poorly conditioned near-parallel draws.
            if ((alpha[0] + alpha[1] - alpha[2] - alpha[3]) / 2.0).sin().abs() < 1e-3 {
                continue;
            }
            let want = meet.norm_sq();
            assert!(
                (j - want).abs() <= 1e-8 * want.max(1.0),
                "j={j}, |P|^2={want}, alpha={alpha:?}"
            );
            trials += 1;
        }
    }
}
