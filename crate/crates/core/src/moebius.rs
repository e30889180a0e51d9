//! Möbius transformations of the Riemann sphere.
//!
//! Transformations are stored as `SL(2,C)` matrices, renormalized on
//! construction. A matrix and its negative denote the same map, so equality
//! is projective (see [`MoebiusTransform::projectively_eq`]).

use std::f64::consts::PI;
use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::group_type::GroupType;

pub type C64 = Complex64;

/// Max-entry distance below which two normalized matrices are the same map.
pub const PROJECTIVE_TOL: f64 = 1e-9;

/// Default bound for [`MoebiusTransform::element_order`].
pub const DEFAULT_ORDER_CAP: usize = 120;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MoebiusError {
    #[error("PoleEvaluation: derivative requested at the pole z = {0}")]
    PoleEvaluation(C64),
    #[error("DegenerateTriple: the three prescribed points are not pairwise distinct")]
    DegenerateTriple,
    #[error("UnsupportedType: no standard generators for {0}")]
    UnsupportedType(GroupType),
    #[error("SingularMatrix: ad - bc = 0")]
    SingularMatrix,
}

/// A point of the Riemann sphere `C ∪ {∞}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SpherePoint {
    Finite(C64),
    Infinity,
}

impl SpherePoint {
    pub fn finite(re: f64, im: f64) -> Self {
        SpherePoint::Finite(C64::new(re, im))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, SpherePoint::Infinity)
    }

    /// A representative `(x, y)` with `z = x / y`.
    pub fn homogeneous(&self) -> (C64, C64) {
        match *self {
            SpherePoint::Finite(z) => (z, C64::new(1.0, 0.0)),
            SpherePoint::Infinity => (C64::new(1.0, 0.0), C64::new(0.0, 0.0)),
        }
    }

    pub fn from_homogeneous(x: C64, y: C64) -> Self {
        if y == C64::new(0.0, 0.0) {
            SpherePoint::Infinity
        } else {
            SpherePoint::Finite(x / y)
        }
    }

    /// Chordal distance between the images on the unit sphere.
    pub fn chordal_distance(&self, other: &SpherePoint) -> f64 {
        match (*self, *other) {
            (SpherePoint::Infinity, SpherePoint::Infinity) => 0.0,
            (SpherePoint::Finite(z), SpherePoint::Infinity)
            | (SpherePoint::Infinity, SpherePoint::Finite(z)) => 2.0 / (1.0 + z.norm_sqr()).sqrt(),
            (SpherePoint::Finite(z), SpherePoint::Finite(w)) => {
                2.0 * (z - w).norm() / ((1.0 + z.norm_sqr()) * (1.0 + w.norm_sqr())).sqrt()
            }
        }
    }
}

impl fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpherePoint::Finite(z) => write!(f, "{z}"),
            SpherePoint::Infinity => f.write_str("∞"),
        }
    }
}

/// Serialized as `[re, im]`, or the string `"inf"`.
impl Serialize for SpherePoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            SpherePoint::Finite(z) => [z.re, z.im].serialize(s),
            SpherePoint::Infinity => s.serialize_str("inf"),
        }
    }
}

/// A point `(z, t)` of the unit sphere in `C × R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EuclideanSpherePoint {
    pub z: C64,
    pub t: f64,
}

impl EuclideanSpherePoint {
    /// Projects `(z, t)` radially onto the sphere; `None` at the origin.
    pub fn new(z: C64, t: f64) -> Option<Self> {
        let r = (z.norm_sqr() + t * t).sqrt();
        (r > 0.0 && r.is_finite()).then(|| EuclideanSpherePoint { z: z / r, t: t / r })
    }

    pub fn norm_defect(&self) -> f64 {
        (self.z.norm_sqr() + self.t * self.t - 1.0).abs()
    }

    pub fn distance(&self, other: &EuclideanSpherePoint) -> f64 {
        ((self.z - other.z).norm_sqr() + (self.t - other.t).powi(2)).sqrt()
    }
}

/// Stereographic projection from the north pole `(0, 1)`: `(z, t) ↦ z / (1 − t)`.
pub fn stereographic(p: &EuclideanSpherePoint) -> SpherePoint {
    if p.t >= 1.0 {
        return SpherePoint::Infinity;
    }
    // z/(1-t) loses accuracy near the north pole; (1+t) z / |z|² is the same
    // quantity on the sphere.
    if p.t > 0.0 {
        let r2 = p.z.norm_sqr();
        if r2 == 0.0 {
            return SpherePoint::Infinity;
        }
        return SpherePoint::Finite(p.z * (1.0 + p.t) / r2);
    }
    SpherePoint::Finite(p.z / (1.0 - p.t))
}

pub fn stereographic_inverse(q: &SpherePoint) -> EuclideanSpherePoint {
    match *q {
        SpherePoint::Infinity => EuclideanSpherePoint {
            z: C64::new(0.0, 0.0),
            t: 1.0,
        },
        SpherePoint::Finite(z) => {
            let r2 = z.norm_sqr();
            if r2 > 1.0 {
                // written in u = 1/z to stay accurate near ∞
                let u = z.inv();
                let s = 1.0 + u.norm_sqr();
                EuclideanSpherePoint {
                    z: u.conj() * 2.0 / s,
                    t: (1.0 - u.norm_sqr()) / s,
                }
            } else {
                EuclideanSpherePoint {
                    z: z * 2.0 / (r2 + 1.0),
                    t: (r2 - 1.0) / (r2 + 1.0),
                }
            }
        }
    }
}

/// `z ↦ (az + b)/(cz + d)` with `ad − bc = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoebiusTransform {
    a: C64,
    b: C64,
    c: C64,
    d: C64,
}

/// Square root with non-negative real part; ties broken towards non-negative
/// imaginary part.
fn canonical_sqrt(w: C64) -> C64 {
    let s = w.sqrt();
    if s.re < 0.0 || (s.re == 0.0 && s.im < 0.0) {
        -s
    } else {
        s
    }
}

fn max_abs(entries: [C64; 4]) -> f64 {
    entries.iter().map(|e| e.norm()).fold(0.0, f64::max)
}

impl MoebiusTransform {
    /// Normalizes an arbitrary invertible matrix.
    pub fn new(a: C64, b: C64, c: C64, d: C64) -> Result<Self, MoebiusError> {
        let det = a * d - b * c;
        if det.norm() == 0.0 || !det.is_finite() {
            return Err(MoebiusError::SingularMatrix);
        }
        let s = canonical_sqrt(det);
        Ok(MoebiusTransform {
            a: a / s,
            b: b / s,
            c: c / s,
            d: d / s,
        })
    }

    /// Convenience constructor from real-coefficient pairs.
    pub fn from_entries(e: [[f64; 2]; 4]) -> Result<Self, MoebiusError> {
        let c = |p: [f64; 2]| C64::new(p[0], p[1]);
        MoebiusTransform::new(c(e[0]), c(e[1]), c(e[2]), c(e[3]))
    }

    pub fn identity() -> Self {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        MoebiusTransform {
            a: one,
            b: zero,
            c: zero,
            d: one,
        }
    }

    /// `z ↦ λ z`.
    pub fn scaling(lambda: C64) -> Self {
        MoebiusTransform::new(
            lambda,
            C64::new(0.0, 0.0),
            C64::new(0.0, 0.0),
            C64::new(1.0, 0.0),
        )
        .expect("nonzero scaling")
    }

    /// `z ↦ z + t`.
    pub fn translation(t: C64) -> Self {
        let one = C64::new(1.0, 0.0);
        MoebiusTransform::new(one, t, C64::new(0.0, 0.0), one).expect("unimodular")
    }

    /// `z ↦ 1/z`.
    pub fn inversion() -> Self {
        let one = C64::new(1.0, 0.0);
        let zero = C64::new(0.0, 0.0);
        MoebiusTransform::new(zero, one, one, zero).expect("invertible")
    }

    pub fn entries(&self) -> [C64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn a(&self) -> C64 {
        self.a
    }
    pub fn b(&self) -> C64 {
        self.b
    }
    pub fn c(&self) -> C64 {
        self.c
    }
    pub fn d(&self) -> C64 {
        self.d
    }

    pub fn apply(&self, p: &SpherePoint) -> SpherePoint {
        let (x, y) = p.homogeneous();
        SpherePoint::from_homogeneous(self.a * x + self.b * y, self.c * x + self.d * y)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &MoebiusTransform) -> MoebiusTransform {
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let (e, f, g, h) = (other.a, other.b, other.c, other.d);
        MoebiusTransform::new(a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)
            .expect("product of invertible matrices")
    }

    pub fn inverse(&self) -> MoebiusTransform {
        // the adjugate of an SL(2) matrix is its inverse
        MoebiusTransform {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// `g ∘ self ∘ g⁻¹`.
    pub fn conjugate_by(&self, g: &MoebiusTransform) -> MoebiusTransform {
        g.compose(self).compose(&g.inverse())
    }

    pub fn pow(&self, n: usize) -> MoebiusTransform {
        let mut acc = MoebiusTransform::identity();
        for _ in 0..n {
            acc = self.compose(&acc);
        }
        acc
    }

    /// `min(‖M − N‖, ‖M + N‖)` in the max-entry norm.
    pub fn projective_distance(&self, other: &MoebiusTransform) -> f64 {
        let m = self.entries();
        let n = other.entries();
        let minus = max_abs([m[0] - n[0], m[1] - n[1], m[2] - n[2], m[3] - n[3]]);
        let plus = max_abs([m[0] + n[0], m[1] + n[1], m[2] + n[2], m[3] + n[3]]);
        minus.min(plus)
    }

    pub fn projectively_eq(&self, other: &MoebiusTransform) -> bool {
        self.projective_distance(other) < PROJECTIVE_TOL
    }

    pub fn is_identity(&self) -> bool {
        self.projectively_eq(&MoebiusTransform::identity())
    }

    /// `‖UᴴU − I‖` in the max-entry norm; zero exactly for `SU(2)` lifts.
    pub fn unitarity_defect(&self) -> f64 {
        let [a, b, c, d] = self.entries();
        let h11 = a.norm_sqr() + c.norm_sqr() - 1.0;
        let h22 = b.norm_sqr() + d.norm_sqr() - 1.0;
        let h12 = a.conj() * b + c.conj() * d;
        h11.abs().max(h22.abs()).max(h12.norm())
    }

    /// `m′(z) = 1/(cz + d)²`.
    pub fn derivative(&self, z: C64) -> Result<C64, MoebiusError> {
        let den = self.c * z + self.d;
        if den.norm() <= 1e-15 * (self.c.norm() * z.norm() + self.d.norm()) {
            return Err(MoebiusError::PoleEvaluation(z));
        }
        Ok((den * den).inv())
    }

    /// The unique map with `m(0) = p0`, `m(1) = p1`, `m(∞) = pinf`.
    pub fn from_triple(
        p0: &SpherePoint,
        p1: &SpherePoint,
        pinf: &SpherePoint,
    ) -> Result<MoebiusTransform, MoebiusError> {
        const MIN_SEPARATION: f64 = 1e-12;
        if p0.chordal_distance(p1) < MIN_SEPARATION
            || p0.chordal_distance(pinf) < MIN_SEPARATION
            || p1.chordal_distance(pinf) < MIN_SEPARATION
        {
            return Err(MoebiusError::DegenerateTriple);
        }
        // Columns are multiples of the images of [1:0] and [0:1]; their sum
        // must represent the image of [1:1].
        let (cx, cy) = pinf.homogeneous();
        let (ax, ay) = p0.homogeneous();
        let (bx, by) = p1.homogeneous();
        let det = cx * ay - ax * cy;
        let lambda = (bx * ay - ax * by) / det;
        let mu = (cx * by - bx * cy) / det;
        MoebiusTransform::new(lambda * cx, mu * ax, lambda * cy, mu * ay)
            .map_err(|_| MoebiusError::DegenerateTriple)
    }

    /// Smallest `n ≤ cap` with `mⁿ = id`, or `None` if there is none.
    pub fn element_order(&self, cap: usize) -> Option<usize> {
        let mut acc = *self;
        for n in 1..=cap.max(1) {
            if acc.is_identity() {
                return Some(n);
            }
            acc = self.compose(&acc);
        }
        None
    }

    /// Fixed points: roots of `cz² + (d − a)z − b = 0` on the sphere.
    pub fn fixed_points(&self) -> FixedPoints {
        if self.is_identity() {
            return FixedPoints::All;
        }
        let (a, b, c, d) = (self.a, self.b, self.c, self.d);
        let zero = C64::new(0.0, 0.0);
        let scale = max_abs([a, b, c, d]);
        let tiny = 1e-14 * scale;
        let disc = (a + d) * (a + d) - 4.0;
        let p = d - a;
        if c.norm() <= tiny {
            // ∞ is fixed; the other root solves (d − a) z = b
            if p.norm() <= 1e-12 * scale {
                return FixedPoints::Points(vec![SpherePoint::Infinity]);
            }
            return FixedPoints::Points(vec![SpherePoint::Infinity, SpherePoint::Finite(b / p)]);
        }
        if disc.norm() <= 1e-12 * scale * scale {
            // parabolic: double root
            return FixedPoints::Points(vec![SpherePoint::from_homogeneous(-p, 2.0 * c)]);
        }
        // stable quadratic roots in homogeneous form: z1 = q/c, z2 = -b/q
        let sq = disc.sqrt();
        let q1 = -0.5 * (p + sq);
        let q2 = -0.5 * (p - sq);
        let q = if q1.norm() >= q2.norm() { q1 } else { q2 };
        let first = SpherePoint::from_homogeneous(q, c);
        let second = if q == zero {
            SpherePoint::Finite(zero)
        } else {
            SpherePoint::from_homogeneous(-b, q)
        };
        FixedPoints::Points(vec![first, second])
    }

    /// Trace of the normalized lift, up to sign.
    pub fn trace(&self) -> C64 {
        self.a + self.d
    }
}

impl Mul for MoebiusTransform {
    type Output = MoebiusTransform;

    fn mul(self, rhs: MoebiusTransform) -> MoebiusTransform {
        self.compose(&rhs)
    }
}

impl fmt::Display for MoebiusTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "z -> ({} z + {}) / ({} z + {})",
            self.a, self.b, self.c, self.d
        )
    }
}

/// Serialized as `[[re,im],[re,im],[re,im],[re,im]]` for `(a, b, c, d)`.
impl Serialize for MoebiusTransform {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let e: Vec<[f64; 2]> = self.entries().iter().map(|z| [z.re, z.im]).collect();
        e.serialize(s)
    }
}

impl<'de> Deserialize<'de> for MoebiusTransform {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let e = <[[f64; 2]; 4]>::deserialize(d)?;
        MoebiusTransform::from_entries(e).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum FixedPoints {
    /// Every point is fixed (the identity).
    All,
    Points(Vec<SpherePoint>),
}

/// `exp(2πi k / n)`.
pub fn root_of_unity(n: usize, k: usize) -> C64 {
    C64::from_polar(1.0, 2.0 * PI * k as f64 / n as f64)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Standard generators with `ζ = exp(2πi/n)` for the cyclic and dihedral
/// families.
pub fn standard_generators(t: GroupType) -> Result<Vec<MoebiusTransform>, MoebiusError> {
    standard_generators_with_root(t, 1)
}

/// Standard generators, all of them unitary (inside SO(3)):
///
/// - `Cn = <z ↦ ζz>` and `Dn = <z ↦ ζz, z ↦ 1/z>` with `ζ = exp(2πik/n)`;
/// - `A4 = <z ↦ jz, z ↦ (z + √2)/(√2 z − 1)>`, `j = exp(2πi/3)`;
/// - `S4 = <z ↦ iz, z ↦ (z + 1)/(z − 1)>`;
/// - `A5 = <z ↦ δz, z ↦ (z + Δ)/(Δz − 1)>`, `δ = exp(2πi/5)` and
///   `Δ² = 1 − δ − 1/δ`.
///
/// `root_index` must be prime to `n` for the cyclic and dihedral families and
/// is ignored otherwise.
pub fn standard_generators_with_root(
    t: GroupType,
    root_index: usize,
) -> Result<Vec<MoebiusTransform>, MoebiusError> {
    let one = C64::new(1.0, 0.0);
    match t {
        GroupType::Cyclic(n) | GroupType::Dihedral(n) => {
            if n == 0 || gcd(root_index % n, n) != 1 {
                return Err(MoebiusError::UnsupportedType(t));
            }
            let rot = MoebiusTransform::scaling(root_of_unity(n, root_index));
            if matches!(t, GroupType::Cyclic(_)) {
                Ok(vec![rot])
            } else {
                Ok(vec![rot, MoebiusTransform::inversion()])
            }
        }
        GroupType::A4 => {
            let r2 = C64::new(2f64.sqrt(), 0.0);
            Ok(vec![
                MoebiusTransform::scaling(root_of_unity(3, 1)),
                MoebiusTransform::new(one, r2, r2, -one)?,
            ])
        }
        GroupType::S4 => Ok(vec![
            MoebiusTransform::scaling(C64::new(0.0, 1.0)),
            MoebiusTransform::new(one, one, one, -one)?,
        ]),
        GroupType::A5 => Ok(a5_generators()),
        GroupType::Other { .. } => Err(MoebiusError::UnsupportedType(t)),
    }
}

/// The icosahedral pair, keeping the branch of `Δ` whose closure has 60
/// elements.
fn a5_generators() -> Vec<MoebiusTransform> {
    let one = C64::new(1.0, 0.0);
    let delta = root_of_unity(5, 1);
    let big_delta = (one - delta - delta.inv()).sqrt();
    let rot = MoebiusTransform::scaling(delta);
    for branch in [big_delta, -big_delta] {
        let inv = MoebiusTransform::new(one, branch, branch, -one).expect("invertible");
        if closure_size(&[rot, inv], 61) == Some(60) {
            return vec![rot, inv];
        }
    }
    unreachable!("one branch of Δ generates the icosahedral group")
}

/// Size of the generated group, or `None` past `cap` elements.
pub(crate) fn closure_size(gens: &[MoebiusTransform], cap: usize) -> Option<usize> {
    let mut els = vec![MoebiusTransform::identity()];
    let mut i = 0;
    while i < els.len() {
        for g in gens {
            let p = g.compose(&els[i]);
            if !els.iter().any(|e| e.projectively_eq(&p)) {
                els.push(p);
                if els.len() > cap {
                    return None;
                }
            }
        }
        i += 1;
    }
    Some(els.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn cayley() -> MoebiusTransform {
        // z -> (z+1)/(z-1)
        MoebiusTransform::new(c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)).unwrap()
    }

    fn finite(p: SpherePoint) -> C64 {
        match p {
            SpherePoint::Finite(z) => z,
            SpherePoint::Infinity => panic!("expected a finite point"),
        }
    }

    #[test]
    fn normalization_rule() {
        let m = MoebiusTransform::new(c(2.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)).unwrap();
        assert_abs_diff_eq!(m.a().re, 1.0, epsilon = 1e-15);
        let inv = MoebiusTransform::inversion();
        // sqrt(-1) = i is the root with Re = 0, Im ≥ 0
        assert_abs_diff_eq!((inv.b() - c(0.0, -1.0)).norm(), 0.0, epsilon = 1e-15);
        assert!(MoebiusTransform::new(c(1.0, 0.0), c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0)).is_err());
    }

    #[test]
    fn apply_examples() {
        let m = cayley();
        assert!(m.apply(&SpherePoint::finite(1.0, 0.0)).is_infinity());
        let w = finite(m.apply(&SpherePoint::finite(0.0, 1.0)));
        assert_abs_diff_eq!((w - c(0.0, -1.0)).norm(), 0.0, epsilon = 1e-15);
        assert!(MoebiusTransform::identity()
            .apply(&SpherePoint::Infinity)
            .is_infinity());
        assert_abs_diff_eq!(
            finite(m.apply(&SpherePoint::Infinity)).re,
            1.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn compose_and_inverse() {
        let m = cayley();
        assert!(MoebiusTransform::identity().compose(&m).projectively_eq(&m));
        assert!(m.compose(&m).is_identity());
        let zeta = root_of_unity(7, 2);
        let r = MoebiusTransform::scaling(zeta);
        assert!(r
            .inverse()
            .projectively_eq(&MoebiusTransform::scaling(zeta.inv())));
        assert!(r.compose(&r.inverse()).is_identity());
    }

    #[test]
    fn derivative_examples() {
        let z = c(0.3, -1.7);
        assert_abs_diff_eq!(
            (MoebiusTransform::identity().derivative(z).unwrap() - 1.0).norm(),
            0.0
        );
        let zeta = root_of_unity(5, 1);
        let d = MoebiusTransform::scaling(zeta).derivative(z).unwrap();
        assert_abs_diff_eq!((d - zeta).norm(), 0.0, epsilon = 1e-15);
        let d = MoebiusTransform::inversion()
            .derivative(c(2.0, 0.0))
            .unwrap();
        assert_abs_diff_eq!((d - c(-0.25, 0.0)).norm(), 0.0, epsilon = 1e-15);
        assert!(matches!(
            cayley().derivative(c(1.0, 0.0)),
            Err(MoebiusError::PoleEvaluation(_))
        ));
        // sign of the representative does not matter
        let m = cayley();
        let neg = MoebiusTransform {
            a: -m.a,
            b: -m.b,
            c: -m.c,
            d: -m.d,
        };
        assert_eq!(m.derivative(z).unwrap(), neg.derivative(z).unwrap());
    }

    #[test]
    fn from_triple_examples() {
        let zero = SpherePoint::finite(0.0, 0.0);
        let one = SpherePoint::finite(1.0, 0.0);
        let inf = SpherePoint::Infinity;
        assert!(MoebiusTransform::from_triple(&zero, &one, &inf)
            .unwrap()
            .is_identity());
        let flip = MoebiusTransform::from_triple(&one, &zero, &inf).unwrap();
        let expected =
            MoebiusTransform::new(c(-1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!(flip.projectively_eq(&expected));
        assert_eq!(
            MoebiusTransform::from_triple(&one, &one, &inf),
            Err(MoebiusError::DegenerateTriple)
        );
        // ∞ as first or second target
        let m = MoebiusTransform::from_triple(&inf, &zero, &one).unwrap();
        assert!(m.apply(&zero).is_infinity());
        assert_abs_diff_eq!(finite(m.apply(&one)).norm(), 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!((finite(m.apply(&inf)) - 1.0).norm(), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn stereographic_examples() {
        let north = EuclideanSpherePoint {
            z: c(0.0, 0.0),
            t: 1.0,
        };
        assert!(stereographic(&north).is_infinity());
        let south = EuclideanSpherePoint {
            z: c(0.0, 0.0),
            t: -1.0,
        };
        assert_eq!(stereographic(&south), SpherePoint::finite(0.0, 0.0));
        let eq = EuclideanSpherePoint {
            z: c(1.0, 0.0),
            t: 0.0,
        };
        assert_eq!(stereographic(&eq), SpherePoint::finite(1.0, 0.0));
        let back = stereographic_inverse(&SpherePoint::Infinity);
        assert_eq!(back, north);
    }

    #[test]
    fn orders() {
        assert_eq!(
            MoebiusTransform::scaling(c(0.0, 1.0)).element_order(DEFAULT_ORDER_CAP),
            Some(4)
        );
        assert_eq!(cayley().element_order(DEFAULT_ORDER_CAP), Some(2));
        assert_eq!(
            MoebiusTransform::translation(c(1.0, 0.0)).element_order(100),
            None
        );
        assert_eq!(MoebiusTransform::identity().element_order(1), Some(1));
    }

    #[test]
    fn fixed_point_examples() {
        let rot = MoebiusTransform::scaling(root_of_unity(5, 1));
        assert_eq!(
            rot.fixed_points(),
            FixedPoints::Points(vec![SpherePoint::Infinity, SpherePoint::finite(0.0, 0.0)])
        );
        let FixedPoints::Points(pts) = MoebiusTransform::inversion().fixed_points() else {
            panic!()
        };
        let mut re: Vec<f64> = pts.iter().map(|p| finite(*p).re).collect();
        re.sort_by(f64::total_cmp);
        assert_abs_diff_eq!(re[0], -1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(re[1], 1.0, epsilon = 1e-15);
        assert_eq!(
            MoebiusTransform::translation(c(1.0, 0.0)).fixed_points(),
            FixedPoints::Points(vec![SpherePoint::Infinity])
        );
        assert_eq!(
            MoebiusTransform::identity().fixed_points(),
            FixedPoints::All
        );
        // parabolic with finite fixed point: conjugate of z+1 by 1/z is z/(z+1)
        let par =
            MoebiusTransform::translation(c(1.0, 0.0)).conjugate_by(&MoebiusTransform::inversion());
        let FixedPoints::Points(pts) = par.fixed_points() else {
            panic!()
        };
        assert_eq!(pts.len(), 1);
        assert_abs_diff_eq!(finite(pts[0]).norm(), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn standard_generator_closures() {
        let g = standard_generators(GroupType::Cyclic(6)).unwrap();
        assert_eq!(g.len(), 1);
        assert_eq!(g[0].element_order(DEFAULT_ORDER_CAP), Some(6));
        for (t, n) in [
            (GroupType::Cyclic(5), 5),
            (GroupType::Dihedral(3), 6),
            (GroupType::A4, 12),
            (GroupType::S4, 24),
            (GroupType::A5, 60),
        ] {
            let gens = standard_generators(t).unwrap();
            assert_eq!(closure_size(&gens, 200), Some(n), "{t}");
            assert!(gens.iter().all(|g| g.unitarity_defect() < 1e-14), "{t}");
        }
        assert!(standard_generators(GroupType::Other { order: 8 }).is_err());
        assert!(standard_generators_with_root(GroupType::Cyclic(6), 2).is_err());
        let alt = standard_generators_with_root(GroupType::Cyclic(5), 2).unwrap();
        assert_eq!(alt[0].element_order(DEFAULT_ORDER_CAP), Some(5));
    }

    #[test]
    fn a5_with_an_order_four_rotation_is_not_finite() {
        // z ↦ iz together with the icosahedral involution generates an
        // infinite group, since A5 has no element of order 4.
        let gens = a5_generators();
        let i_rot = MoebiusTransform::scaling(c(0.0, 1.0));
        assert_eq!(closure_size(&[i_rot, gens[1]], 200), None);
    }

    #[test]
    fn serde_round_trip() {
        let m = cayley();
        let s = serde_json::to_string(&m).unwrap();
        let back: MoebiusTransform = serde_json::from_str(&s).unwrap();
        assert!(back.projectively_eq(&m));
        assert!(serde_json::from_str::<MoebiusTransform>("[[0,0],[0,0],[0,0],[0,0]]").is_err());
    }
}
