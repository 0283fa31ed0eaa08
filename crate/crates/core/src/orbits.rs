//! Grouping of shape descriptors into orbits, partition of each orbit into
//! equivalence classes, and the per-arrangement summary.
//!
//! Descriptors sharing a radius live on one circle but may still describe
//! different n-point families. Two descriptors are equivalent exactly when
//! their anchor points differ by an integer number of 2π/n steps; the shift
//! is the witness. Closed-form equivalences (chord swap, the self-crossing
//! involution family, half-chord identities, and the sporadic relations of
//! orders divisible by 12) are applied first; any pair they miss falls back
//! to the generic arc-distance test, so correctness never depends on the
//! closed-form table being complete.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::enumerate::{self, TripletRecord};
use crate::error::{Error, Result};
use crate::geometry::{
    check_equivalent_with, point_coords, quadruplet_of, PlanePoint, Triplet, RADIUS_TOL, SHIFT_TOL,
};

/// Where an orbit sits relative to the unit circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    Interior,
    Exterior,
    Center,
}

impl Region {
    pub fn as_str(self) -> &'static str {
        match self {
            Region::Interior => "interior",
            Region::Exterior => "exterior",
            Region::Center => "center",
        }
    }
}

/// Tunable tolerances and switches for the orbit pipeline.
#[derive(Debug, Clone)]
pub struct Options {
    /// Relative tolerance when comparing radii.
    pub radius_tol: f64,
    /// Tolerance on the fractional part of a normalized shift.
    pub shift_tol: f64,
    /// Relative gap that separates two radius groups.
    pub gap_tol: f64,
    /// Apply the closed-form equivalence filter before the generic test.
    pub use_known_equivalences: bool,
}

impl Default for Options {
    fn default() -> Self {
        Self {
            radius_tol: RADIUS_TOL,
            shift_tol: SHIFT_TOL,
            // Within one orbit the evaluations agree to ~1e-13 relative;
            // distinct radii stay >= ~1e-9 apart through n ~ 100. 1e-11
            // splits with two orders of margin on both sides.
            gap_tol: 1e-11,
            use_known_equivalences: true,
        }
    }
}

/// Descriptors sharing one orbit radius.
#[derive(Debug, Clone)]
pub struct RadiusGroup {
    /// Canonical radius of the group (mean over members).
    pub sqrt_radius: f64,
    pub records: Vec<TripletRecord>,
}

/// One member of an equivalence class with its shift relative to the class
/// anchor, reduced to [0, n).
#[derive(Debug, Clone, Copy)]
pub struct ClassMember {
    pub triplet: Triplet,
    pub shift: i64,
}

/// A maximal set of descriptors generating one n-point family.
#[derive(Debug, Clone)]
pub struct EquivalenceClass {
    pub label: usize,
    /// Lexicographically smallest (p,q,r) of the class; its shift is 0.
    pub anchor: Triplet,
    pub members: Vec<ClassMember>,
}

/// One circle of intersection points.
#[derive(Debug, Clone)]
pub struct Orbit {
    pub sqrt_radius: f64,
    pub region: Region,
    pub classes: Vec<EquivalenceClass>,
    pub cardinality: u64,
    /// Largest number of lines through any point of the orbit.
    pub multiplicity: u32,
    /// Points per multiplicity on this orbit.
    pub mult_histogram: BTreeMap<u32, u64>,
}

/// Point and orbit totals of one arrangement. Interior totals include the
/// center point/orbit (even n); the histograms exclude it, matching the
/// published counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArrangementSummary {
    pub n: u32,
    pub interior_points: u64,
    pub exterior_points: u64,
    /// n + interior + exterior.
    pub total_points: u64,
    pub interior_orbits: u64,
    pub exterior_orbits: u64,
    /// 1 (unit circle) + interior + exterior.
    pub total_orbits: u64,
    /// Interior points (center excluded) with exactly k incident lines.
    pub interior_hist: BTreeMap<u32, u64>,
    /// Exterior points with exactly k incident lines.
    pub exterior_hist: BTreeMap<u32, u64>,
}

/// Wall-clock split of a full computation.
#[derive(Debug, Clone, Copy, Default)]
pub struct Timings {
    pub generate_exterior: Duration,
    pub classify_exterior: Duration,
    pub generate_interior: Duration,
    pub classify_interior: Duration,
}

impl Timings {
    pub fn generation(&self) -> Duration {
        self.generate_exterior + self.generate_interior
    }

    pub fn exterior(&self) -> Duration {
        self.generate_exterior + self.classify_exterior
    }

    pub fn interior(&self) -> Duration {
        self.generate_interior + self.classify_interior
    }

    pub fn total(&self) -> Duration {
        self.exterior() + self.interior()
    }
}

/// Full result of the orbit pipeline: every orbit (exterior first, then
/// interior, radius descending, center last) plus the summary.
#[derive(Debug, Clone)]
pub struct Arrangement {
    pub n: u32,
    pub orbits: Vec<Orbit>,
    pub summary: ArrangementSummary,
    pub timings: Timings,
}

/// Split records (sorted by decreasing radius) wherever the gap between
/// consecutive radii exceeds gap_tol·max(1, radius). A gap that is clearly
/// above accumulated rounding yet below the split threshold is reported as
/// ambiguous rather than silently merged.
pub fn group_by_radius(records: Vec<TripletRecord>, opts: &Options) -> Result<Vec<RadiusGroup>> {
    let mut groups: Vec<RadiusGroup> = Vec::new();
    let mut current: Vec<TripletRecord> = Vec::new();
    for rec in records {
        match current.last() {
            None => current.push(rec),
            Some(prev) => {
                debug_assert!(prev.sqrt_radius >= rec.sqrt_radius, "input must be sorted");
                let gap = prev.sqrt_radius - rec.sqrt_radius;
                if gap > opts.gap_tol * prev.sqrt_radius.max(1.0) {
                    groups.push(seal_group(std::mem::take(&mut current), opts)?);
                    current.push(rec);
                } else {
                    current.push(rec);
                }
            }
        }
    }
    if !current.is_empty() {
        groups.push(seal_group(current, opts)?);
    }
    Ok(groups)
}

fn seal_group(records: Vec<TripletRecord>, opts: &Options) -> Result<RadiusGroup> {
    let first = records.first().expect("group is never empty").sqrt_radius;
    let last = records.last().expect("group is never empty").sqrt_radius;
    let spread = first - last;
    // Members of one orbit agree to near machine precision; a spread that
    // approaches the split threshold means two radii were chained together.
    if spread > 0.5 * opts.gap_tol * first.max(1.0) {
        return Err(Error::AmbiguousGrouping {
            sqrt_radius: first,
            gap: spread,
        });
    }
    let mean = records.iter().map(|r| r.sqrt_radius).sum::<f64>() / records.len() as f64;
    Ok(RadiusGroup {
        sqrt_radius: mean,
        records,
    })
}

/// Canonical descriptor key (p, q, r mod n).
type TripletKey = (u32, u32, u32);

/// A precomputed equivalence between two group members.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct KnownLink {
    pub a: usize,
    pub b: usize,
    /// Shift such that member `a` is member `b` rotated by `shift` steps.
    pub shift: i64,
}

/// Closed-form images of one descriptor: (p', q', r', shift), meaning the
/// descriptor is equivalent to (p', q', r') with that shift.
fn closed_form_images(t: &Triplet) -> Vec<(i64, i64, i64, i64)> {
    let n = i64::from(t.n());
    let p = i64::from(t.p());
    let q = i64::from(t.q());
    let r = t.r();
    let s = t.s();
    let mut images = vec![(q, p, s, p + r)];
    if t.is_complex() {
        images.push((q, n - p, -q - r, p + r));
        images.push((n - p, n - q, p + q + r - n, p));
        images.push((n - q, p, -p - r, p + q + r));
    }
    if n % 2 == 0 && q == n / 2 {
        images.push((n / 2, p, r, p + r - n / 2));
        images.push((p, n / 2, r + n / 2, 0));
        images.push((p, p, 2 * r, 0));
    }
    if n % 12 == 0 {
        let u = n / 12;
        type Lattice = (i64, i64, i64);
        // Sporadic relations for orders divisible by 12, in units of n/12:
        // each row is (lhs, rhs, shift).
        const SPORADIC: [(Lattice, Lattice, i64); 14] = [
            ((1, 5, 2), (7, 2, 1), -4),
            ((1, 5, 2), (1, 2, 3), 0),
            ((1, 2, 2), (1, 7, 1), 0),
            ((1, 2, 2), (2, 5, 4), 3),
            ((1, 1, 3), (1, 4, 2), 0),
            ((1, 1, 3), (1, 8, 1), 0),
            ((1, 1, 3), (4, 4, 1), -2),
            ((4, 4, -1), (4, 3, -2), 0),
            ((4, 4, -1), (3, 4, -2), 2),
            ((7, 7, -3), (8, 8, -7), 1),
            ((7, 7, -3), (5, 8, -2), -1),
            ((7, 7, -3), (8, 5, -2), 1),
            ((7, 7, -3), (7, 8, -5), 0),
            ((7, 7, -3), (8, 7, -5), 1),
        ];
        let key = (p, q, r.rem_euclid(n));
        for ((lp, lq, lr), (rp, rq, rr), shift) in SPORADIC {
            let lhs = (lp * u, lq * u, (lr * u).rem_euclid(n));
            let rhs = (rp * u, rq * u, (rr * u).rem_euclid(n));
            if key == lhs {
                images.push((rhs.0, rhs.1, rhs.2, shift * u));
            }
            if key == rhs {
                images.push((lhs.0, lhs.1, lhs.2, -shift * u));
            }
        }
    }
    images
}

/// Links between group members implied by the closed-form equivalences.
pub fn known_equivalence_filter(group: &RadiusGroup) -> Vec<KnownLink> {
    let Some(first) = group.records.first() else {
        return Vec::new();
    };
    let n = i64::from(first.triplet.n());
    // Canonical-key index over the group members.
    let index: BTreeMap<TripletKey, usize> = group
        .records
        .iter()
        .enumerate()
        .map(|(i, rec)| (rec.triplet.key(), i))
        .collect();
    let mut links = Vec::new();
    for (a, rec) in group.records.iter().enumerate() {
        for (p, q, r, shift) in closed_form_images(&rec.triplet) {
            if !(1..n).contains(&p) || !(1..n).contains(&q) {
                continue;
            }
            let key = (p as u32, q as u32, r.rem_euclid(n) as u32);
            if let Some(&b) = index.get(&key) {
                if b != a {
                    links.push(KnownLink {
                        a,
                        b,
                        shift: shift.rem_euclid(n),
                    });
                }
            }
        }
    }
    links
}

/// Union-find over group members carrying the shift to the parent.
struct ShiftForest {
    parent: Vec<usize>,
    /// rel(node, parent): the node's family is the parent's shifted by this.
    shift: Vec<i64>,
    n: i64,
}

impl ShiftForest {
    fn new(len: usize, n: i64) -> Self {
        Self {
            parent: (0..len).collect(),
            shift: vec![0; len],
            n,
        }
    }

    /// Returns (root, rel(x, root)).
    fn find(&mut self, x: usize) -> (usize, i64) {
        if self.parent[x] == x {
            return (x, 0);
        }
        let (root, parent_shift) = self.find(self.parent[x]);
        self.parent[x] = root;
        self.shift[x] = (self.shift[x] + parent_shift).rem_euclid(self.n);
        (root, self.shift[x])
    }

    /// Record rel(a, b) = shift.
    fn union(&mut self, a: usize, b: usize, shift: i64) {
        let (ra, sa) = self.find(a);
        let (rb, sb) = self.find(b);
        if ra == rb {
            return;
        }
        // rel(ra, rb) = rel(ra,a) + rel(a,b) + rel(b,rb) = -sa + shift + sb.
        self.parent[ra] = rb;
        self.shift[ra] = (-sa + shift + sb).rem_euclid(self.n);
    }
}

/// Partition one radius group into equivalence classes with shifts relative
/// to each class anchor (the lexicographically smallest member).
pub fn partition_classes(group: &RadiusGroup, opts: &Options) -> Vec<EquivalenceClass> {
    let len = group.records.len();
    if len == 0 {
        return Vec::new();
    }
    let n = i64::from(group.records[0].triplet.n());
    let mut forest = ShiftForest::new(len, n);
    if opts.use_known_equivalences {
        for link in known_equivalence_filter(group) {
            forest.union(link.a, link.b, link.shift);
        }
    }
    // Generic fallback over every pair not already linked: each remaining
    // pair is either proven equivalent (and merged with its shift) or proven
    // to belong to different families.
    for a in 0..len {
        for b in a + 1..len {
            if forest.find(a).0 == forest.find(b).0 {
                continue;
            }
            let ta = group.records[a].triplet;
            let tb = group.records[b].triplet;
            if let Some(rho) = check_equivalent_with(&ta, &tb, opts.radius_tol, opts.shift_tol) {
                forest.union(a, b, rho);
            }
        }
    }
    // Gather classes keyed by root.
    let mut by_root: BTreeMap<usize, Vec<(usize, i64)>> = BTreeMap::new();
    for i in 0..len {
        let (root, shift) = forest.find(i);
        by_root.entry(root).or_default().push((i, shift));
    }
    let mut classes: Vec<EquivalenceClass> = Vec::new();
    for (_, mut members) in by_root {
        // Anchor: lexicographically smallest (p, q, r).
        let anchor_pos = members
            .iter()
            .enumerate()
            .min_by_key(|(_, (i, _))| {
                let t = group.records[*i].triplet;
                (t.p(), t.q(), t.r())
            })
            .map(|(pos, _)| pos)
            .expect("class is never empty");
        let (anchor_idx, anchor_shift) = members[anchor_pos];
        let anchor = group.records[anchor_idx].triplet;
        // rel(anchor, m) = rel(anchor, root) + rel(root, m).
        for (_, shift) in members.iter_mut() {
            *shift = (anchor_shift - *shift).rem_euclid(n);
        }
        let mut class_members: Vec<ClassMember> = members
            .into_iter()
            .map(|(i, shift)| ClassMember {
                triplet: group.records[i].triplet,
                shift,
            })
            .collect();
        class_members.sort_by_key(|m| (m.triplet.p(), m.triplet.q(), m.triplet.r()));
        // Every stored shift must reproduce the anchor point exactly; the
        // multiplicity derivation depends on it, so this check always runs.
        let anchor_pt = point_coords(&quadruplet_of(0, &anchor))
            .expect("class anchors never describe parallel chords");
        let tol = 1e-6 * anchor_pt.norm().max(1.0);
        for m in &class_members {
            let pt = point_coords(&quadruplet_of(m.shift as u32, &m.triplet))
                .expect("class members never describe parallel chords");
            assert!(
                anchor_pt.dist(&pt) <= tol,
                "shift {} of {} does not land on the anchor {} (n={})",
                m.shift,
                m.triplet.display(),
                anchor.display(),
                anchor.n(),
            );
        }
        classes.push(EquivalenceClass {
            label: 0,
            anchor,
            members: class_members,
        });
    }
    classes.sort_by_key(|c| (c.anchor.p(), c.anchor.q(), c.anchor.r()));
    for (label, class) in classes.iter_mut().enumerate() {
        class.label = label;
    }
    classes
}

/// Number of distinct lines through each point of the class: every member
/// contributes its two chords, re-anchored by its shift.
pub fn class_multiplicity(class: &EquivalenceClass, n: u32) -> u32 {
    let nn = i64::from(n);
    let mut lines: std::collections::BTreeSet<(u32, u32)> = std::collections::BTreeSet::new();
    for m in &class.members {
        let p = i64::from(m.triplet.p());
        let q = i64::from(m.triplet.q());
        let r = m.triplet.r();
        let rho = m.shift;
        for (a, b) in [(rho, rho + p), (rho + p + r, rho + p + q + r)] {
            let a = a.rem_euclid(nn) as u32;
            let b = b.rem_euclid(nn) as u32;
            lines.insert((a.min(b), a.max(b)));
        }
    }
    lines.len() as u32
}

/// Assemble one orbit from a partitioned radius group.
fn build_orbit(group: &RadiusGroup, classes: Vec<EquivalenceClass>, n: u32) -> Result<Orbit> {
    let region = if group.sqrt_radius > 1.0 {
        Region::Exterior
    } else {
        Region::Interior
    };
    let mut mult_histogram: BTreeMap<u32, u64> = BTreeMap::new();
    let mut multiplicity = 0u32;
    for class in &classes {
        let mult = class_multiplicity(class, n);
        if region == Region::Interior && mult > 7 {
            return Err(Error::MultiplicityBound {
                multiplicity: mult,
                sqrt_radius: group.sqrt_radius,
            });
        }
        multiplicity = multiplicity.max(mult);
        *mult_histogram.entry(mult).or_insert(0) += u64::from(n);
    }
    let cardinality = u64::from(n) * classes.len() as u64;
    Ok(Orbit {
        sqrt_radius: group.sqrt_radius,
        region,
        classes,
        cardinality,
        multiplicity,
        mult_histogram,
    })
}

/// All points of an orbit: each class contributes the n rotations of its
/// anchor point. The center orbit materializes as the origin alone.
pub fn materialize_points(orbit: &Orbit, n: u32) -> Result<Vec<PlanePoint>> {
    if orbit.region == Region::Center {
        return Ok(vec![PlanePoint { x: 0.0, y: 0.0 }]);
    }
    let mut points = Vec::with_capacity(orbit.classes.len() * n as usize);
    for class in &orbit.classes {
        for i in 0..n {
            points.push(point_coords(&quadruplet_of(i, &class.anchor))?);
        }
    }
    Ok(points)
}

fn orbits_for_region(records: Vec<TripletRecord>, n: u32, opts: &Options) -> Result<Vec<Orbit>> {
    let groups = group_by_radius(records, opts)?;
    groups
        .par_iter()
        .map(|group| {
            let classes = partition_classes(group, opts);
            build_orbit(group, classes, n)
        })
        .collect()
}

/// Run the whole pipeline for one arrangement order.
pub fn compute(n: u32, opts: &Options) -> Result<Arrangement> {
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "arrangement order must be at least 3, got {n}"
        )));
    }
    let mut timings = Timings::default();
    let mut orbits: Vec<Orbit> = Vec::new();
    // Orders 3 and 4 sit below the generator ranges: a triangle has no
    // intersections at all and a square only the center.
    if n >= 5 {
        // The generation phase is the triple-loop traversal (with inline
        // dedup); sorting belongs to the gather step of classification.
        let start = Instant::now();
        let ext = enumerate::exterior_records_unsorted(n)?;
        timings.generate_exterior = start.elapsed();
        let start = Instant::now();
        let ext = enumerate::sort_by_radius_desc(ext);
        orbits.extend(orbits_for_region(ext, n, opts)?);
        timings.classify_exterior = start.elapsed();

        let start = Instant::now();
        let int = enumerate::interior_records_unsorted(n)?;
        timings.generate_interior = start.elapsed();
        let start = Instant::now();
        let int = enumerate::sort_by_radius_desc(int);
        orbits.extend(orbits_for_region(int, n, opts)?);
        timings.classify_interior = start.elapsed();
    }
    orbits.extend(enumerate::center_orbit(n));

    let mut interior_points = 0u64;
    let mut exterior_points = 0u64;
    let mut interior_orbits = 0u64;
    let mut exterior_orbits = 0u64;
    let mut interior_hist: BTreeMap<u32, u64> = BTreeMap::new();
    let mut exterior_hist: BTreeMap<u32, u64> = BTreeMap::new();
    for orbit in &orbits {
        match orbit.region {
            Region::Exterior => {
                exterior_points += orbit.cardinality;
                exterior_orbits += 1;
                for (&k, &v) in &orbit.mult_histogram {
                    *exterior_hist.entry(k).or_insert(0) += v;
                }
            }
            Region::Interior => {
                interior_points += orbit.cardinality;
                interior_orbits += 1;
                for (&k, &v) in &orbit.mult_histogram {
                    *interior_hist.entry(k).or_insert(0) += v;
                }
            }
            // The center point joins the interior totals but stays out of
            // the histograms, matching the published convention.
            Region::Center => {
                interior_points += orbit.cardinality;
                interior_orbits += 1;
            }
        }
    }
    let summary = ArrangementSummary {
        n,
        interior_points,
        exterior_points,
        total_points: u64::from(n) + interior_points + exterior_points,
        interior_orbits,
        exterior_orbits,
        total_orbits: 1 + interior_orbits + exterior_orbits,
        interior_hist,
        exterior_hist,
    };
    Ok(Arrangement {
        n,
        orbits,
        summary,
        timings,
    })
}

/// Point and orbit totals for one arrangement order, default options.
pub fn summarize(n: u32) -> Result<ArrangementSummary> {
    Ok(compute(n, &Options::default())?.summary)
}
