//! Triple-loop generation of every valid shape descriptor of an arrangement.
//!
//! Five loop families cover the geometric configurations: one for simple
//! (exterior) shapes and four for self-crossing ones, split by where the
//! second chord's endpoints sit relative to the first. Loop bounds follow the
//! combinatorial ranges of the shape parameters; the interval written in
//! descending order for some branches is read as an unordered integer range.
//! Parallel combinations (p + q + 2r ≡ 0 mod n) are skipped everywhere, and
//! the interior loops skip p = q = n/2 since the center is handled on its own.

use rustc_hash::FxHashSet;

use crate::error::{Error, Result};
use crate::geometry::{cos_frac, sin_frac, Triplet};
use crate::orbits::{Orbit, Region};

/// Which loop family produced a descriptor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorCase {
    /// Simple shape, exterior intersection.
    ExtSimple,
    /// Self-crossing, exterior, second chord beyond the first (zero-arc).
    ExtComplexA,
    /// Self-crossing, exterior, second chord inside the first arc (two-arc).
    ExtComplexB,
    /// Self-crossing, interior, third vertex inside the arc of the first chord.
    IntA,
    /// Self-crossing, interior, third vertex on the complementary arc.
    IntB,
}

impl GeneratorCase {
    pub fn region(self) -> Region {
        match self {
            GeneratorCase::ExtSimple | GeneratorCase::ExtComplexA | GeneratorCase::ExtComplexB => {
                Region::Exterior
            }
            GeneratorCase::IntA | GeneratorCase::IntB => Region::Interior,
        }
    }
}

/// A generated descriptor with its orbit radius.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripletRecord {
    pub triplet: Triplet,
    pub sqrt_radius: f64,
    pub case: GeneratorCase,
}

fn check_order(n: u32) -> Result<i64> {
    if n < 5 {
        return Err(Error::InvalidArgument(format!(
            "generators require n >= 5, got {n}"
        )));
    }
    Ok(i64::from(n))
}

/// Ascending integer range as a set; empty when lo > hi.
fn span(lo: i64, hi: i64) -> std::ops::RangeInclusive<i64> {
    lo..=hi
}

/// Tabulated cos(kπ/n) and sin(kπ/n) for one arrangement order, so the
/// triple loops evaluate radii by lookup. Entries come from the same
/// reduction as the scalar path, keeping results bit-identical to it.
struct TrigTable {
    n: i64,
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl TrigTable {
    fn new(n: u32) -> Self {
        let period = 2 * n as usize;
        Self {
            n: i64::from(n),
            cos: (0..period).map(|k| cos_frac(k as i64, n)).collect(),
            sin: (0..period).map(|k| sin_frac(k as i64, n)).collect(),
        }
    }

    #[inline]
    fn sqrt_radius(&self, p: i64, q: i64, r: i64) -> f64 {
        let theta = (p + q + 2 * r).rem_euclid(2 * self.n) as usize;
        let cp = self.cos[p as usize];
        let cq = self.cos[q as usize];
        let ct = self.cos[theta];
        let st = self.sin[theta];
        ((cp * cp + cq * cq - 2.0 * cp * cq * ct) / (st * st)).sqrt()
    }
}

/// Membership set over the n³ possible (p, q, r mod n) keys: a flat bitset
/// while it stays cache-friendly, a hash set for very large orders.
enum KeySet {
    Bits(Vec<u64>),
    Hash(FxHashSet<u64>),
}

impl KeySet {
    fn new(n: i64, capacity: usize) -> Self {
        let cube = (n * n * n) as usize;
        if cube <= 1 << 27 {
            KeySet::Bits(vec![0u64; cube / 64 + 1])
        } else {
            KeySet::Hash(FxHashSet::with_capacity_and_hasher(
                capacity,
                Default::default(),
            ))
        }
    }

    /// Inserts and reports whether the key was new.
    fn insert(&mut self, key: u64) -> bool {
        match self {
            KeySet::Bits(words) => {
                let (word, bit) = ((key / 64) as usize, key % 64);
                let fresh = words[word] & (1 << bit) == 0;
                words[word] |= 1 << bit;
                fresh
            }
            KeySet::Hash(set) => set.insert(key),
        }
    }
}

/// Shared sink for the triple loops: evaluates radii by table lookup and
/// drops duplicate shapes on arrival (same p, q and congruent r mod n).
struct Emitter {
    table: TrigTable,
    seen: KeySet,
    out: Vec<TripletRecord>,
}

impl Emitter {
    fn new(n: u32, capacity: usize) -> Self {
        Self {
            table: TrigTable::new(n),
            seen: KeySet::new(i64::from(n), capacity),
            out: Vec::with_capacity(capacity),
        }
    }

    fn emit(&mut self, p: i64, q: i64, r: i64, case: GeneratorCase) {
        let nn = self.table.n;
        if (p + q + 2 * r).rem_euclid(nn) == 0 {
            return;
        }
        // Canonical representative for the half-turn gap.
        let r = if nn % 2 == 0 && r == -nn / 2 { nn / 2 } else { r };
        let key = ((p * nn) + q) as u64 * nn as u64 + r.rem_euclid(nn) as u64;
        if !self.seen.insert(key) {
            return;
        }
        // The loop ranges guarantee the remaining descriptor invariants.
        let triplet = Triplet::new_unchecked(nn as u32, p as u32, q as u32, r);
        self.out.push(TripletRecord {
            triplet,
            sqrt_radius: self.table.sqrt_radius(p, q, r),
            case,
        });
    }
}

fn ext_simple_into(nn: i64, sink: &mut Emitter) {
    for p in 1..=nn - 3 {
        for r in 1..=nn - p - 2 {
            for q in 1..=nn - p - r - 1 {
                sink.emit(p, q, r, GeneratorCase::ExtSimple);
            }
        }
    }
}

/// Simple shapes: all four path lengths positive and summing to n.
/// p in [1, n−3], r in [1, n−p−2], q in [1, n−p−r−1].
pub fn gen_exterior_simple(n: u32) -> Result<Vec<TripletRecord>> {
    let nn = check_order(n)?;
    let mut sink = Emitter::new(n, (nn * nn * nn / 6) as usize + 1);
    ext_simple_into(nn, &mut sink);
    Ok(sort_by_radius_desc(sink.out))
}

fn ext_complex_a_into(nn: i64, sink: &mut Emitter) {
    let half = nn / 2;
    let half_up = (nn - 1) / 2;
    for p in 1..=nn - 3 {
        let r_candidates: Vec<i64> = if p >= half_up {
            span(2, nn - p - 1).collect()
        } else {
            span(-half_up, -p - 1).chain(span(2, half)).collect()
        };
        for r in r_candidates {
            let (q_lo, q_hi) = if r > 0 { (nn - r + 1, nn - 1) } else { (-r + 1, nn - 1) };
            for q in span(q_lo.max(1), q_hi.min(nn - 1)) {
                sink.emit(p, q, r, GeneratorCase::ExtComplexA);
            }
        }
    }
}

/// Self-crossing exterior shapes whose second chord lies entirely beyond the
/// first one (the arc of the first chord contains neither endpoint).
pub fn gen_exterior_complex_a(n: u32) -> Result<Vec<TripletRecord>> {
    let nn = check_order(n)?;
    let mut sink = Emitter::new(n, (nn * nn * nn / 8) as usize + 1);
    ext_complex_a_into(nn, &mut sink);
    Ok(sort_by_radius_desc(sink.out))
}

fn ext_complex_b_into(nn: i64, sink: &mut Emitter) {
    let half = nn / 2;
    let half_up = (nn - 1) / 2;
    for p in 3..=nn - 1 {
        let r_candidates: Vec<i64> = if p <= half + 1 {
            span(-p + 1, -2).collect()
        } else {
            span(-half, -2).chain(span(nn - p + 1, half_up)).collect()
        };
        for r in r_candidates {
            let (q_lo, q_hi) = if r < 0 { (1, -r - 1) } else { (1, nn - r - 1) };
            for q in span(q_lo.max(1), q_hi.min(nn - 1)) {
                sink.emit(p, q, r, GeneratorCase::ExtComplexB);
            }
        }
    }
}

/// Self-crossing exterior shapes whose second chord sits inside the arc of
/// the first one (the arc contains both endpoints).
pub fn gen_exterior_complex_b(n: u32) -> Result<Vec<TripletRecord>> {
    let nn = check_order(n)?;
    let mut sink = Emitter::new(n, (nn * nn * nn / 8) as usize + 1);
    ext_complex_b_into(nn, &mut sink);
    Ok(sort_by_radius_desc(sink.out))
}

fn gen_interior_into(nn: i64, case: GeneratorCase, sink: &mut Emitter) {
    let half = nn / 2;
    let half_up = (nn - 1) / 2;
    for p in 2..=nn - 2 {
        let r_candidates: Vec<i64> = match case {
            // Third vertex inside the arc of the first chord.
            GeneratorCase::IntA => {
                if p <= half + 1 {
                    span(-p + 1, -1).collect()
                } else {
                    span(-half, -1).chain(span(nn - p + 1, half_up)).collect()
                }
            }
            // Third vertex on the complementary arc.
            GeneratorCase::IntB => {
                if p >= half_up {
                    span(1, nn - p - 1).collect()
                } else {
                    span(1, half).chain(span(-half_up, -p - 1)).collect()
                }
            }
            _ => unreachable!("interior generator invoked with an exterior case"),
        };
        for r in r_candidates {
            let (q_lo, q_hi) = match case {
                GeneratorCase::IntA => {
                    if r < 0 {
                        (-r + 1, nn - r - p - 1)
                    } else {
                        (nn - r + 1, 2 * nn - r - p - 1)
                    }
                }
                GeneratorCase::IntB => {
                    if r < 0 {
                        (-r - p + 1, -r - 1)
                    } else {
                        (nn - p - r + 1, nn - r - 1)
                    }
                }
                _ => unreachable!(),
            };
            for q in span(q_lo.max(1), q_hi.min(nn - 1)) {
                // Two diameters meet at the center, which is its own orbit.
                if nn % 2 == 0 && p == half && q == half {
                    continue;
                }
                sink.emit(p, q, r, case);
            }
        }
    }
}

fn gen_interior(n: u32, case: GeneratorCase) -> Result<Vec<TripletRecord>> {
    let nn = check_order(n)?;
    let mut sink = Emitter::new(n, (nn * nn * nn / 8) as usize + 1);
    gen_interior_into(nn, case, &mut sink);
    Ok(sort_by_radius_desc(sink.out))
}

/// Interior shapes with the third vertex inside the arc of the first chord.
pub fn gen_interior_a(n: u32) -> Result<Vec<TripletRecord>> {
    gen_interior(n, GeneratorCase::IntA)
}

/// Interior shapes with the third vertex on the complementary arc.
pub fn gen_interior_b(n: u32) -> Result<Vec<TripletRecord>> {
    gen_interior(n, GeneratorCase::IntB)
}

/// The orbit of the center for even n: one point where the n/2 diameters
/// meet. Odd orders have no diameters and no center point.
pub fn center_orbit(n: u32) -> Option<Orbit> {
    if n < 4 || !n.is_multiple_of(2) {
        return None;
    }
    let diameters = n / 2;
    Some(Orbit {
        sqrt_radius: 0.0,
        region: Region::Center,
        classes: Vec::new(),
        cardinality: 1,
        multiplicity: diameters,
        mult_histogram: [(diameters, 1u64)].into_iter().collect(),
    })
}

/// Sort records by decreasing radius, ties broken lexicographically on
/// (p, q, r). Radii are positive, so the inverted IEEE bit patterns order
/// them descending; a 16-bit LSD radix pass over those keys is stable and
/// deterministic, and equal-radius runs (one orbit each) are tiny.
pub(crate) fn sort_by_radius_desc(records: Vec<TripletRecord>) -> Vec<TripletRecord> {
    let len = records.len();
    let mut keys: Vec<(u64, u32)> = records
        .iter()
        .enumerate()
        .map(|(i, rec)| (!rec.sqrt_radius.to_bits(), i as u32))
        .collect();
    let mut scratch = vec![(0u64, 0u32); len];
    let mut counts = vec![0usize; 1 << 16];
    for pass in 0..4 {
        let shift = 16 * pass;
        counts.fill(0);
        for &(k, _) in &keys {
            counts[((k >> shift) & 0xffff) as usize] += 1;
        }
        // A pass whose digit is constant would only copy; skip it.
        if counts.contains(&len) {
            continue;
        }
        let mut offset = 0;
        for c in counts.iter_mut() {
            let next = offset + *c;
            *c = offset;
            offset = next;
        }
        for &(k, i) in &keys {
            let digit = ((k >> shift) & 0xffff) as usize;
            scratch[counts[digit]] = (k, i);
            counts[digit] += 1;
        }
        std::mem::swap(&mut keys, &mut scratch);
    }
    let tie = |i: u32| {
        let t = records[i as usize].triplet;
        (u64::from(t.p()) << 42) | (u64::from(t.q()) << 21) | (t.r() + i64::from(t.n())) as u64
    };
    let mut start = 0;
    while start < len {
        let mut end = start + 1;
        while end < len && keys[end].0 == keys[start].0 {
            end += 1;
        }
        if end - start > 1 {
            keys[start..end].sort_unstable_by_key(|&(_, i)| tie(i));
        }
        start = end;
    }
    keys.into_iter()
        .map(|(_, i)| records[i as usize])
        .collect()
}

/// Run the three exterior loop families into one deduplicated, unsorted
/// batch. The orbit pipeline sorts as part of its gather step.
pub(crate) fn exterior_records_unsorted(n: u32) -> Result<Vec<TripletRecord>> {
    let nn = check_order(n)?;
    let mut sink = Emitter::new(n, (nn * nn * nn / 2) as usize + 1);
    ext_simple_into(nn, &mut sink);
    ext_complex_a_into(nn, &mut sink);
    ext_complex_b_into(nn, &mut sink);
    Ok(sink.out)
}

/// Both interior loop families into one deduplicated, unsorted batch.
pub(crate) fn interior_records_unsorted(n: u32) -> Result<Vec<TripletRecord>> {
    let nn = check_order(n)?;
    let mut sink = Emitter::new(n, (nn * nn * nn / 4) as usize + 1);
    gen_interior_into(nn, GeneratorCase::IntA, &mut sink);
    gen_interior_into(nn, GeneratorCase::IntB, &mut sink);
    Ok(sink.out)
}

/// All exterior shape descriptors, deduplicated across the three loop
/// families and sorted. Identical regardless of evaluation order.
pub fn exterior_records(n: u32) -> Result<Vec<TripletRecord>> {
    Ok(sort_by_radius_desc(exterior_records_unsorted(n)?))
}

/// All interior shape descriptors, deduplicated across both loop families
/// and sorted.
pub fn interior_records(n: u32) -> Result<Vec<TripletRecord>> {
    Ok(sort_by_radius_desc(interior_records_unsorted(n)?))
}
