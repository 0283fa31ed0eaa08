//! Integer combinatorics of inscribed quadrilaterals and the floating-point
//! radius / arc-length kernel.
//!
//! Vertices of the regular n-gon are indexed 0..n on the unit circle, vertex m
//! sitting at angle 2πm/n. A chord pair is described either by the four vertex
//! indices ([`Quadruplet`]) or by the shape descriptor ([`Triplet`]): the two
//! chord path lengths p and q plus the signed gap r between them, with
//! s = n − (p + q + r) derived. The squared distance from the origin to the
//! intersection point depends on the shape only, which is what makes counting
//! without building the graph possible.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Default relative tolerance when comparing two radii.
pub const RADIUS_TOL: f64 = 1e-10;
/// Default tolerance on the fractional part of a normalized shift.
pub const SHIFT_TOL: f64 = 1e-7;
/// Determinant cutoff for the 2x2 intersection solve.
pub const PARALLEL_DET_TOL: f64 = 1e-12;

/// cos(k·π/n) with k an exact integer. Angles are never accumulated; the
/// argument is reduced modulo 2n first so results are reproducible.
#[inline]
pub(crate) fn cos_frac(k: i64, n: u32) -> f64 {
    let k = k.rem_euclid(2 * i64::from(n));
    (k as f64 * PI / f64::from(n)).cos()
}

/// sin(k·π/n), same conventions as [`cos_frac`].
#[inline]
pub(crate) fn sin_frac(k: i64, n: u32) -> f64 {
    let k = k.rem_euclid(2 * i64::from(n));
    (k as f64 * PI / f64::from(n)).sin()
}

fn check_vertex(m: u32, n: u32) -> Result<()> {
    if m >= n {
        return Err(Error::InvalidArgument(format!(
            "vertex index {m} out of range for n={n}"
        )));
    }
    Ok(())
}

/// Directed path length from vertex `i` to vertex `j` along the polygon,
/// always in [1, n−1]. Satisfies delta(i,j) + delta(j,i) = n.
pub fn delta(i: u32, j: u32, n: u32) -> Result<u32> {
    check_vertex(i, n)?;
    check_vertex(j, n)?;
    if i == j {
        return Err(Error::InvalidArgument(format!(
            "path length undefined for i=j={i}"
        )));
    }
    Ok(if i < j { j - i } else { n + j - i })
}

/// Signed path length of smallest magnitude between `i` and `j`: the member
/// of {delta(i,j), −delta(j,i)} closer to zero. The half-turn tie (n even,
/// delta = n/2) resolves to +n/2 so outputs stay canonical.
pub fn signed_delta(i: u32, j: u32, n: u32) -> Result<i64> {
    let d = i64::from(delta(i, j, n)?);
    let n = i64::from(n);
    Ok(if 2 * d <= n { d } else { d - n })
}

/// Four distinct vertex indices of an arrangement of order `n`, ordered so
/// that the first two and last two each span one chord.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Quadruplet {
    n: u32,
    idx: [u32; 4],
}

/// How an ordered quadruplet sits on the circle, and therefore on which side
/// of it the chord intersection falls.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadKind {
    /// Non-self-crossing boundary; the chords meet outside the unit circle.
    Simple,
    /// Self-crossing with mismatched arc counts; the meet is outside.
    ComplexExterior,
    /// Each chord separates the other's endpoints; the meet is inside.
    ComplexInterior,
}

/// Classification of a quadruplet together with its wrap set: the consecutive
/// pairs (a,b) of the cycle (i,j,k,l,i) whose directed arc passes vertex 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub kind: QuadKind,
    pub wraps: Vec<(u32, u32)>,
}

impl Quadruplet {
    pub fn new(n: u32, idx: [u32; 4]) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!(
                "arrangement order must be at least 3, got {n}"
            )));
        }
        for &m in &idx {
            check_vertex(m, n)?;
        }
        for a in 0..4 {
            for b in a + 1..4 {
                if idx[a] == idx[b] {
                    return Err(Error::InvalidArgument(format!(
                        "vertex indices must be pairwise distinct, got {idx:?}"
                    )));
                }
            }
        }
        Ok(Self { n, idx })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn indices(&self) -> [u32; 4] {
        self.idx
    }

    /// True when vertex `x` lies strictly inside the directed arc a -> b.
    fn inside_arc(&self, a: u32, b: u32, x: u32) -> bool {
        // All three distinct by construction of the callers.
        delta(a, x, self.n).unwrap() < delta(a, b, self.n).unwrap()
    }

    /// Classify via the arc-membership counts, which work for every ordering
    /// of four distinct vertices, and report the wrap set.
    pub fn classify(&self) -> Classification {
        let [i, j, k, l] = self.idx;
        let c1 = [k, l].iter().filter(|&&x| self.inside_arc(i, j, x)).count();
        let c2 = [i, j].iter().filter(|&&x| self.inside_arc(k, l, x)).count();
        let kind = if c1 == 1 && c2 == 1 {
            QuadKind::ComplexInterior
        } else if c1 != c2 {
            QuadKind::ComplexExterior
        } else {
            QuadKind::Simple
        };
        let wraps = [(i, j), (j, k), (k, l), (l, i)]
            .into_iter()
            .filter(|&(a, b)| b < a)
            .collect();
        Classification { kind, wraps }
    }

    /// Arc-membership counts (#(arc i->j ∩ {k,l}), #(arc k->l ∩ {i,j})).
    fn arc_counts(&self) -> (usize, usize) {
        let [i, j, k, l] = self.idx;
        let c1 = [k, l].iter().filter(|&&x| self.inside_arc(i, j, x)).count();
        let c2 = [i, j].iter().filter(|&&x| self.inside_arc(k, l, x)).count();
        (c1, c2)
    }
}

/// Classify a quadruplet and report its wrap set.
pub fn classify_quadruplet(q: &Quadruplet) -> Classification {
    q.classify()
}

/// Shape descriptor of a chord pair: chord path lengths `p`, `q` in [1, n−1]
/// and the signed gap `r` between them; `s = n − (p + q + r)` is derived.
///
/// Simple shapes have r > 0 and s > 0; self-crossing ones have r·s < 0.
/// `r` is kept exactly as extracted (simple shapes may carry r > n/2); two
/// descriptors with equal p, q and congruent r (mod n) describe the same
/// point family, which [`Triplet::key`] captures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Triplet {
    n: u32,
    p: u32,
    q: u32,
    r: i64,
}

impl Triplet {
    pub fn new(n: u32, p: u32, q: u32, r: i64) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!(
                "arrangement order must be at least 3, got {n}"
            )));
        }
        let nn = i64::from(n);
        if p == 0 || q == 0 || u64::from(p) >= u64::from(n) || u64::from(q) >= u64::from(n) {
            return Err(Error::InvalidArgument(format!(
                "path lengths must lie in [1, n-1], got p={p}, q={q} for n={n}"
            )));
        }
        if r == 0 || r.abs() >= nn {
            return Err(Error::InvalidArgument(format!(
                "gap must satisfy 1 <= |r| <= n-1, got r={r} for n={n}"
            )));
        }
        let p64 = i64::from(p);
        let q64 = i64::from(q);
        // Reconstructed vertices (i, i+p, i+p+r, i+p+q+r) must stay distinct.
        if (p64 + r).rem_euclid(nn) == 0
            || (q64 + r).rem_euclid(nn) == 0
            || (p64 + q64 + r).rem_euclid(nn) == 0
        {
            return Err(Error::DegenerateTriplet { n, p, q, r });
        }
        if (p64 + q64 + 2 * r).rem_euclid(nn) == 0 {
            return Err(Error::ParallelLines { n });
        }
        Ok(Self { n, p, q, r })
    }

    /// Constructor for callers whose loop ranges already guarantee validity;
    /// the full checks still run in debug builds.
    pub(crate) fn new_unchecked(n: u32, p: u32, q: u32, r: i64) -> Self {
        debug_assert!(Self::new(n, p, q, r).is_ok(), "({p},{q},{r}) n={n}");
        Self { n, p, q, r }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn r(&self) -> i64 {
        self.r
    }

    /// Derived fourth path length, may be negative for self-crossing shapes.
    pub fn s(&self) -> i64 {
        i64::from(self.n) - i64::from(self.p) - i64::from(self.q) - self.r
    }

    /// Dedup key: descriptors with congruent r (mod n) span identical vertex
    /// quadruplets, so they are the same shape.
    pub fn key(&self) -> (u32, u32, u32) {
        (self.p, self.q, self.r.rem_euclid(i64::from(self.n)) as u32)
    }

    pub fn is_simple(&self) -> bool {
        self.r > 0 && self.s() > 0
    }

    pub fn is_complex(&self) -> bool {
        self.r * self.s() < 0
    }

    /// Display form `(p,q,r)`.
    pub fn display(&self) -> String {
        format!("({},{},{})", self.p, self.q, self.r)
    }
}

/// Extract the shape descriptor of an admissible quadruplet.
///
/// Simple quadruplets must be admissible (arc counts 0/0); every ordering of
/// a self-crossing quadrilateral is accepted. The gap is the plain path
/// length for simple shapes and the signed minimal one otherwise.
pub fn triplet_of(q: &Quadruplet) -> Result<Triplet> {
    let [i, j, k, l] = q.indices();
    let n = q.n();
    let cls = q.classify();
    let p = delta(i, j, n)?;
    let qq = delta(k, l, n)?;
    let r = match cls.kind {
        QuadKind::Simple => {
            let (c1, c2) = q.arc_counts();
            if c1 != 0 || c2 != 0 {
                return Err(Error::NotAdmissible);
            }
            i64::from(delta(j, k, n)?)
        }
        QuadKind::ComplexExterior | QuadKind::ComplexInterior => signed_delta(j, k, n)?,
    };
    Triplet::new(n, p, qq, r)
}

/// Rebuild the vertex quadruplet anchored at `i`: (i, i+p, i+p+r, i+p+q+r),
/// indices reduced mod n.
pub fn quadruplet_of(i: u32, t: &Triplet) -> Quadruplet {
    let n = i64::from(t.n());
    let i = i64::from(i);
    let p = i64::from(t.p());
    let q = i64::from(t.q());
    let r = t.r();
    let idx = [i, i + p, i + p + r, i + p + q + r].map(|v| v.rem_euclid(n) as u32);
    Quadruplet::new(t.n(), idx).expect("valid descriptor reconstructs distinct vertices")
}

/// Squared distance from the origin to an orbit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadiusSq {
    value: f64,
}

impl RadiusSq {
    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "squared radius must be finite and nonnegative, got {value}"
            )));
        }
        Ok(Self { value })
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn sqrt(&self) -> f64 {
        self.value.sqrt()
    }
}

/// Raw evaluation of the squared-radius function on integer parameters,
/// without descriptor validation. Errors only when the chords are parallel.
pub fn radius_sq_raw(n: u32, p: i64, q: i64, r: i64) -> Result<f64> {
    let pq2r = p + q + 2 * r;
    if pq2r.rem_euclid(i64::from(n)) == 0 {
        return Err(Error::ParallelLines { n });
    }
    let cp = cos_frac(p, n);
    let cq = cos_frac(q, n);
    let ct = cos_frac(pq2r, n);
    let st = sin_frac(pq2r, n);
    Ok((cp * cp + cq * cq - 2.0 * cp * cq * ct) / (st * st))
}

/// Squared orbit radius of a shape descriptor.
pub fn radius_sq(t: &Triplet) -> RadiusSq {
    let value = radius_sq_raw(t.n(), i64::from(t.p()), i64::from(t.q()), t.r())
        .expect("descriptor construction rejects parallel chords");
    RadiusSq::new(value).expect("squared radius is a finite nonnegative number")
}

/// Squared orbit radius straight from the four vertex indices.
///
/// Uses the index form of the radius function; when the first chord is
/// vertical (i + j ≡ 0 mod n) the dedicated variant takes over.
pub fn radius_sq_quadruplet(q: &Quadruplet) -> Result<RadiusSq> {
    let n = q.n();
    let [i, j, k, l] = q.indices().map(i64::from);
    let nn = i64::from(n);
    let theta = i + j - k - l;
    if theta.rem_euclid(nn) == 0 {
        return Err(Error::ParallelLines { n });
    }
    let value = if (i + j).rem_euclid(nn) == 0 && (k + l).rem_euclid(nn) != 0 {
        let cii = cos_frac(2 * i, n);
        let ckl = cos_frac(k - l, n);
        let ckl_plus = cos_frac(k + l, n);
        let skl_plus = sin_frac(k + l, n);
        (cii * cii + ckl * ckl - 2.0 * cii * ckl * ckl_plus) / (skl_plus * skl_plus)
    } else {
        let cij = cos_frac(i - j, n);
        let ckl = cos_frac(k - l, n);
        let ct = cos_frac(theta, n);
        let st = sin_frac(theta, n);
        (cij * cij + ckl * ckl - 2.0 * cij * ckl * ct) / (st * st)
    };
    RadiusSq::new(value)
}

/// A point of the plane, usually an intersection of two chords.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlanePoint {
    pub x: f64,
    pub y: f64,
}

impl PlanePoint {
    pub fn norm_sq(&self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn dist(&self, other: &PlanePoint) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        (dx * dx + dy * dy).sqrt()
    }
}

/// Coordinates of vertex m of the n-gon.
#[inline]
pub fn vertex_point(m: u32, n: u32) -> PlanePoint {
    PlanePoint {
        x: cos_frac(2 * i64::from(m), n),
        y: sin_frac(2 * i64::from(m), n),
    }
}

/// Intersection of the chord through (z_i, z_j) with the chord through
/// (z_k, z_l), via a 2x2 solve on the endpoint coordinates. Handles vertical
/// chords; only genuinely parallel pairs are rejected.
pub fn point_coords(q: &Quadruplet) -> Result<PlanePoint> {
    let n = q.n();
    let [i, j, k, l] = q.indices();
    let a = vertex_point(i, n);
    let b = vertex_point(j, n);
    let c = vertex_point(k, n);
    let d = vertex_point(l, n);
    let d1 = (b.x - a.x, b.y - a.y);
    let d2 = (d.x - c.x, d.y - c.y);
    let det = d1.0 * d2.1 - d1.1 * d2.0;
    if det.abs() < PARALLEL_DET_TOL {
        return Err(Error::ParallelLines { n });
    }
    let rhs = (c.x - a.x, c.y - a.y);
    let t = (rhs.0 * d2.1 - rhs.1 * d2.0) / det;
    Ok(PlanePoint {
        x: a.x + t * d1.0,
        y: a.y + t * d1.1,
    })
}

/// Circular arc length between the anchor points of two cocyclic descriptors,
/// plus the shift normalized to units of 2π/n.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcDistance {
    /// Arc length along the shared orbit.
    pub length: f64,
    /// length / (sqrt(J) · 2π/n), in [0, n/2]. An integer value (within
    /// tolerance) witnesses equivalence of the two descriptors.
    pub shift_real: f64,
}

/// Unsigned shift between the anchor points, from the closed matrix formula.
/// Loses precision only when the arccos argument approaches ±1, i.e. when
/// the true shift is near 0 or n/2.
fn matrix_shift_real(t1: &Triplet, t2: &Triplet, j: f64) -> f64 {
    let n = t1.n();
    let (p1, q1, r1) = (i64::from(t1.p()), i64::from(t1.q()), t1.r());
    let (p2, q2, r2) = (i64::from(t2.p()), i64::from(t2.q()), t2.r());
    let s1 = sin_frac(p1 + q1 + 2 * r1, n);
    let s2 = sin_frac(p2 + q2 + 2 * r2, n);
    // Pairing matrix of the two anchored quadruplets.
    let a11 = cos_frac(2 * (p1 - p2) + (q1 - q2) + 2 * (r1 - r2), n);
    let a12 = -cos_frac(p1 - (2 * p2 + q2 + 2 * r2), n);
    let a21 = -cos_frac(2 * p1 + q1 + 2 * r1 - p2, n);
    let a22 = cos_frac(p1 - p2, n);
    let v1 = (cos_frac(p1, n), cos_frac(q1, n));
    let v2 = (cos_frac(p2, n), cos_frac(q2, n));
    let bilinear = v2.0 * (a11 * v1.0 + a12 * v1.1) + v2.1 * (a21 * v1.0 + a22 * v1.1);
    let arg = (bilinear / (j * s1 * s2)).clamp(-1.0, 1.0);
    arg.acos() * f64::from(n) / (2.0 * PI)
}

/// Arc length between the two anchor intersection points (both descriptors
/// anchored at vertex 0), evaluated with the closed matrix formula.
pub fn arc_distance(t1: &Triplet, t2: &Triplet) -> Result<ArcDistance> {
    let j1 = radius_sq(t1).value();
    let j2 = radius_sq(t2).value();
    let scale = j1.sqrt().max(1.0);
    if (j1.sqrt() - j2.sqrt()).abs() > RADIUS_TOL * scale {
        return Err(Error::NotCocyclic {
            left: j1.sqrt(),
            right: j2.sqrt(),
        });
    }
    let shift_real = matrix_shift_real(t1, t2, j1);
    Ok(ArcDistance {
        length: j1.sqrt() * shift_real * 2.0 * PI / f64::from(t1.n()),
        shift_real,
    })
}

/// Signed shift candidate from the anchor-point polar angles. Matches the
/// arc-length route but stays uniformly precise near shift 0 and n/2, and
/// carries the sign.
fn signed_shift_real(t1: &Triplet, t2: &Triplet) -> Result<f64> {
    let p1 = point_coords(&quadruplet_of(0, t1))?;
    let p2 = point_coords(&quadruplet_of(0, t2))?;
    let diff = p1.y.atan2(p1.x) - p2.y.atan2(p2.x);
    Ok(diff * f64::from(t1.n()) / (2.0 * PI))
}

/// How far the matrix-formula shift may sit from an integer before the pair
/// is rejected without consulting coordinates. The matrix route is accurate
/// to ~1e-4 shift units in the worst (near-parallel) case, so candidates are
/// never lost; everything inside the band is decided exactly on coordinates.
const MATRIX_PREFILTER_BAND: f64 = 0.01;

/// Decide whether two descriptors generate the same n-point family, and if so
/// return the witnessing shift ρ: rotating the family of `t2` by ρ steps of
/// 2π/n lands it on the family of `t1`. ρ is reported in (−n/2, n/2].
///
/// Absence of equivalence is a normal result, not an error.
pub fn check_equivalent(t1: &Triplet, t2: &Triplet) -> Option<i64> {
    check_equivalent_with(t1, t2, RADIUS_TOL, SHIFT_TOL)
}

/// [`check_equivalent`] with explicit tolerances.
pub fn check_equivalent_with(
    t1: &Triplet,
    t2: &Triplet,
    radius_tol: f64,
    shift_tol: f64,
) -> Option<i64> {
    if t1.n() != t2.n() {
        return None;
    }
    let n = i64::from(t1.n());
    let j1 = radius_sq(t1);
    let s1 = j1.sqrt();
    let s2 = radius_sq(t2).sqrt();
    if (s1 - s2).abs() > radius_tol * s1.max(1.0) {
        return None;
    }
    // Diameter pairs meet at the center, where families degenerate to a
    // single point and no shift is defined; the center is handled on its own.
    if s1 < 1e-9 {
        return None;
    }
    // Closed-formula prefilter: most pairs on a shared radius are far from
    // any integer shift and are rejected here.
    let coarse = matrix_shift_real(t1, t2, j1.value());
    if (coarse - coarse.round()).abs() >= MATRIX_PREFILTER_BAND {
        return None;
    }
    let rho_real = signed_shift_real(t1, t2).ok()?;
    let rho = rho_real.round();
    if (rho_real - rho).abs() >= shift_tol {
        return None;
    }
    let rho = (rho as i64).rem_euclid(n);
    // Confirm on coordinates: the anchor point of t2 shifted by ρ must be the
    // anchor point of t1.
    let anchor = point_coords(&quadruplet_of(0, t1)).ok()?;
    let shifted = point_coords(&quadruplet_of(rho as u32, t2)).ok()?;
    if anchor.dist(&shifted) > 1e-6 * s1.max(1.0) {
        return None;
    }
    // Report in (−n/2, n/2].
    Some(if 2 * rho > n { rho - n } else { rho })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quad(n: u32, idx: [u32; 4]) -> Quadruplet {
        Quadruplet::new(n, idx).unwrap()
    }

    fn trip(n: u32, p: u32, q: u32, r: i64) -> Triplet {
        Triplet::new(n, p, q, r).unwrap()
    }

    #[test]
    fn delta_basics() {
        assert_eq!(delta(0, 3, 8).unwrap(), 3);
        assert_eq!(delta(5, 2, 8).unwrap(), 5);
        assert_eq!(delta(4, 7, 12).unwrap(), 3);
        assert_eq!(delta(7, 3, 12).unwrap(), 8);
        assert!(delta(3, 3, 8).is_err());
        assert!(delta(0, 9, 8).is_err());
    }

    #[test]
    fn delta_sum_is_n() {
        for n in [5u32, 8, 13] {
            for i in 0..n {
                for j in 0..n {
                    if i != j {
                        assert_eq!(delta(i, j, n).unwrap() + delta(j, i, n).unwrap(), n);
                    }
                }
            }
        }
    }

    #[test]
    fn signed_delta_basics() {
        assert_eq!(signed_delta(0, 3, 8).unwrap(), 3);
        assert_eq!(signed_delta(0, 5, 8).unwrap(), -3);
        assert_eq!(signed_delta(7, 3, 12).unwrap(), -4);
        // Half turn resolves positive.
        assert_eq!(signed_delta(0, 4, 8).unwrap(), 4);
        assert_eq!(signed_delta(4, 0, 8).unwrap(), 4);
    }

    #[test]
    fn classify_examples() {
        let c = quad(12, [3, 4, 5, 7]).classify();
        assert_eq!(c.kind, QuadKind::Simple);
        assert_eq!(c.wraps.len(), 1);

        let c = quad(12, [4, 7, 3, 5]).classify();
        assert_eq!(c.kind, QuadKind::ComplexInterior);
        assert_eq!(c.wraps.len(), 2);

        let c = quad(8, [0, 1, 2, 3]).classify();
        assert_eq!(c.kind, QuadKind::Simple);
        assert_eq!(c.wraps, vec![(3, 0)]);

        // Exterior self-crossing ordering from the octagon.
        let c = quad(8, [2, 1, 4, 7]).classify();
        assert_eq!(c.kind, QuadKind::ComplexExterior);
    }

    #[test]
    fn triplet_extraction_examples() {
        let t = triplet_of(&quad(12, [3, 4, 5, 7])).unwrap();
        assert_eq!((t.p(), t.q(), t.r(), t.s()), (1, 2, 1, 8));
        assert!(t.is_simple());

        let t = triplet_of(&quad(12, [4, 7, 3, 5])).unwrap();
        assert_eq!((t.p(), t.q(), t.r(), t.s()), (3, 2, -4, 11));
        assert!(t.is_complex());

        // Parallel chords of the square.
        assert_eq!(
            triplet_of(&quad(4, [0, 1, 2, 3])),
            Err(Error::ParallelLines { n: 4 })
        );

        // Simple but traversed backwards: not admissible.
        assert_eq!(triplet_of(&quad(12, [7, 5, 4, 3])), Err(Error::NotAdmissible));
    }

    #[test]
    fn octagon_extraction_lands_on_the_same_orbits() {
        // The direct extraction for these octagon quadruplets gives (2,2,3)
        // and (3,5,-2); both lie on the same orbits as their swapped forms
        // (2,2,1) and (3,3,-1).
        let t = triplet_of(&quad(8, [2, 4, 7, 1])).unwrap();
        assert_eq!((t.p(), t.q(), t.r()), (2, 2, 3));
        let swapped = trip(8, 2, 2, 1);
        assert!((radius_sq(&t).value() - radius_sq(&swapped).value()).abs() < 1e-14);
        assert!(check_equivalent(&t, &swapped).is_some());

        let t = triplet_of(&quad(8, [1, 4, 2, 7])).unwrap();
        assert_eq!((t.p(), t.q(), t.r()), (3, 5, -2));
        let named = trip(8, 3, 3, -1);
        assert!((radius_sq(&t).value() - radius_sq(&named).value()).abs() < 1e-14);
        assert!(check_equivalent(&t, &named).is_some());

        // The remaining orderings of the octagon example pair the chords
        // {1,2} and {4,7}, which are parallel (extractions (7,3,3) and
        // (1,5,-3) both have p+q+2r ≡ 0 mod 8).
        assert_eq!(
            triplet_of(&quad(8, [2, 1, 4, 7])),
            Err(Error::ParallelLines { n: 8 })
        );
        assert_eq!(
            triplet_of(&quad(8, [1, 2, 7, 4])),
            Err(Error::ParallelLines { n: 8 })
        );
    }

    #[test]
    fn reconstruction_examples() {
        assert_eq!(
            quadruplet_of(0, &trip(12, 1, 2, 1)).indices(),
            [0, 1, 2, 4]
        );
        assert_eq!(
            quadruplet_of(3, &trip(12, 1, 2, 1)).indices(),
            [3, 4, 5, 7]
        );
        assert_eq!(
            quadruplet_of(0, &trip(12, 3, 2, -4)).indices(),
            [0, 3, 11, 1]
        );
    }

    #[test]
    fn triplet_validation() {
        assert!(matches!(
            Triplet::new(4, 1, 1, 1),
            Err(Error::ParallelLines { n: 4 })
        ));
        assert!(matches!(
            Triplet::new(12, 3, 2, -3),
            Err(Error::DegenerateTriplet { .. })
        ));
        assert!(Triplet::new(12, 3, 2, 0).is_err());
        assert!(Triplet::new(4, 2, 2, 1).is_ok());
    }

    #[test]
    fn radius_examples() {
        // Exact value 4 + sqrt(3).
        let j = radius_sq(&trip(12, 1, 5, 2)).value();
        let expect = 4.0 + 3f64.sqrt();
        assert!((j - expect).abs() <= 1e-12 * expect);

        assert!((radius_sq(&trip(20, 1, 2, 8)).sqrt() - 12.3551).abs() < 5e-4);
        assert!((radius_sq(&trip(20, 9, 9, -8)).sqrt() - 0.1584).abs() < 5e-4);

        // Concurrent diameters of the square meet at the center.
        assert!(radius_sq(&trip(4, 2, 2, 1)).value().abs() < 1e-15);
    }

    #[test]
    fn radius_from_indices_matches_descriptor_route() {
        for (n, idx) in [
            (12u32, [3u32, 4, 5, 7]),
            (12, [4, 7, 3, 5]),
            (6, [0, 2, 1, 3]),
            (8, [2, 4, 7, 1]),
        ] {
            let q = quad(n, idx);
            let by_idx = radius_sq_quadruplet(&q).unwrap().value();
            let by_t = radius_sq(&triplet_of(&q).unwrap()).value();
            let scale = by_t.max(1.0);
            assert!((by_idx - by_t).abs() <= 1e-10 * scale, "mismatch on {idx:?}");
        }
    }

    #[test]
    fn radius_vertical_chord_branch() {
        // i + j ≡ 0 (mod n) exercises the dedicated variant.
        let q = quad(6, [1, 5, 0, 2]);
        let j = radius_sq_quadruplet(&q).unwrap().value();
        assert!((j - 1.0 / 3.0).abs() < 1e-14);
        let t = triplet_of(&q).unwrap();
        assert!((radius_sq(&t).value() - j).abs() < 1e-14);
    }

    #[test]
    fn radius_parallel_rejected() {
        let q = quad(8, [0, 1, 4, 5]);
        assert_eq!(
            radius_sq_quadruplet(&q),
            Err(Error::ParallelLines { n: 8 })
        );
    }

    #[test]
    fn point_examples() {
        let p = point_coords(&quad(4, [0, 2, 1, 3])).unwrap();
        assert!(p.x.abs() < 1e-15 && p.y.abs() < 1e-15);

        let p = point_coords(&quad(12, [3, 4, 5, 7])).unwrap();
        let j = radius_sq(&trip(12, 1, 2, 1)).value();
        assert!((p.norm_sq() - j).abs() <= 1e-9);

        assert_eq!(
            point_coords(&quad(4, [0, 1, 2, 3])),
            Err(Error::ParallelLines { n: 4 })
        );
    }

    #[test]
    fn arc_distance_examples() {
        let t = trip(12, 1, 2, 1);
        let d = arc_distance(&t, &t).unwrap();
        assert!(d.length.abs() < 1e-9 && d.shift_real.abs() < 1e-6);

        // Swap of the two chord lengths shifts by p + r.
        for (n, p, q, r) in [(12u32, 1u32, 2u32, 1i64), (20, 1, 2, 8), (9, 3, 2, -1)] {
            let t1 = trip(n, p, q, r);
            let s = t1.s();
            let t2 = trip(n, q, p, s);
            let d = arc_distance(&t1, &t2).unwrap();
            let expect = (i64::from(p) + r).rem_euclid(i64::from(n)) as f64;
            let folded = expect.min(f64::from(n) - expect);
            assert!(
                (d.shift_real - folded).abs() < 1e-7,
                "shift {} vs {} for ({p},{q},{r}) n={n}",
                d.shift_real,
                folded
            );
        }

        // Sporadic equivalence of the 12-gon at shift 4.
        let d = arc_distance(&trip(12, 1, 5, 2), &trip(12, 7, 2, 1)).unwrap();
        assert!((d.shift_real - 4.0).abs() < 1e-7);

        let err = arc_distance(&trip(12, 1, 5, 2), &trip(12, 1, 1, 1));
        assert!(matches!(err, Err(Error::NotCocyclic { .. })));
    }

    #[test]
    fn equivalence_examples() {
        // The four descriptors of the largest 20-gon radius split into two
        // mirror families: chord-swap pairs are equivalent, the mirror pair
        // is not (anchor offset is not an integer number of steps).
        let a = trip(20, 1, 2, 8);
        assert_eq!(check_equivalent(&a, &trip(20, 2, 1, 9)), Some(9));
        assert!(check_equivalent(&trip(20, 1, 2, 9), &trip(20, 2, 1, 8)).is_some());
        assert_eq!(check_equivalent(&a, &trip(20, 1, 2, 9)), None);
        assert_eq!(check_equivalent(&a, &trip(20, 2, 1, 8)), None);
        assert_eq!(check_equivalent(&a, &trip(20, 2, 2, -1)), None);

        // Out-of-range gap representative of the same family.
        assert!(check_equivalent(&trip(20, 2, 2, -1), &trip(20, 18, 18, -17)).is_some());

        // Equal radii, distinct families.
        assert_eq!(check_equivalent(&trip(9, 3, 2, -1), &trip(9, 2, 3, -1)), None);

        // Sign and value of the sporadic shift.
        assert_eq!(check_equivalent(&trip(12, 1, 5, 2), &trip(12, 7, 2, 1)), Some(-4));
    }

    #[test]
    fn shift_composes() {
        // Three descriptors of one 12-gon family, linked by the sporadic
        // equivalences of orders divisible by 12.
        let a = trip(12, 1, 5, 2);
        let b = trip(12, 7, 2, 1);
        let c = trip(12, 1, 2, 3);
        let ab = check_equivalent(&a, &b).unwrap();
        let bc = check_equivalent(&b, &c).unwrap();
        let ac = check_equivalent(&a, &c).unwrap();
        assert_eq!(ab, -4);
        assert_eq!(ac, 0);
        let n = 12i64;
        assert_eq!((ab + bc).rem_euclid(n), ac.rem_euclid(n));
        assert_eq!(
            check_equivalent(&b, &a).unwrap().rem_euclid(n),
            (-ab).rem_euclid(n)
        );
    }
}
