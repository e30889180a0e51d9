//! The Schwarz–Christoffel map from the upper half-plane onto a 30-60-90
//! triangle, and the butterfly Belyi map glued from it.
//!
//! `F(z) = A ∫₀^z t^{-1/2} (t + 1)^{-2/3} dt` sends the prevertices `0, −1, ∞`
//! to vertices with interior angles `π/2, π/3, π/6`. `A` is fixed so that
//! `F(0) = 0` and `F(−1) = 1`; the third vertex is then `−i√3` and the image
//! triangle lies below the real axis.
//!
//! The endpoint singularities are removed by substitution before
//! quadrature: `t = u² z` near 0, `t = −1 + u³ (z + 1)` near −1 and
//! `t = z / w⁶` on rays to ∞.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64 as C64;

use crate::moebius::SpherePoint;
use crate::quadrature::integrate;

const QUAD_TOL: f64 = 1e-14;
/// Beyond this modulus `F` is computed from the vertex at ∞.
const FAR_RADIUS: f64 = 4.0;
const NEWTON_MAX_ITER: usize = 100;
const NEWTON_RESIDUAL: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScError {
    #[error("BranchViolation: {0} lies in the open lower half-plane")]
    BranchViolation(C64),
    #[error("NoConvergence: Newton iteration failed for w = {0}")]
    NoConvergence(C64),
    #[error("OutsideTriangle: {0} is not in the image triangle")]
    OutsideTriangle(C64),
    #[error("OutsideButterfly: {0} is not in the butterfly")]
    OutsideButterfly(C64),
    #[error("the vertex at {0} is the image of the prevertex at infinity")]
    VertexAtInfinity(C64),
}

/// Closed upper half-plane representative: a zero imaginary part is read as
/// `+0` so that the negative real axis takes the limit from above.
fn uhp(z: C64) -> C64 {
    if z.im <= 0.0 {
        C64::new(z.re, 0.0)
    } else {
        z
    }
}

/// `z^p` with `arg z ∈ [0, π]`.
fn upow(z: C64, p: f64) -> C64 {
    let z = uhp(z);
    if z.norm() == 0.0 {
        return C64::new(0.0, 0.0);
    }
    C64::from_polar(z.norm().powf(p), z.im.atan2(z.re) * p)
}

/// `∫₀^z t^{-1/2}(t+1)^{-2/3} dt` along the segment, with `t = u² z`.
fn from_zero(z: C64) -> C64 {
    let root = upow(z, 0.5);
    integrate(
        |u| root * 2.0 * upow(z * (u * u) + 1.0, -2.0 / 3.0),
        0.0,
        1.0,
        QUAD_TOL,
    )
}

/// `∫₋₁^z`, with `t = −1 + u³ (z + 1)`.
fn from_minus_one(z: C64) -> C64 {
    let zp = uhp(z) + 1.0;
    let cube = upow(zp, 1.0 / 3.0);
    integrate(
        |u| cube * 3.0 * upow(zp * (u * u * u) - 1.0, -0.5),
        0.0,
        1.0,
        QUAD_TOL,
    )
}

/// `∫_z^∞` along the ray through `z`, with `t = z / w⁶`.
fn to_infinity(z: C64) -> C64 {
    let z = uhp(z);
    let root = upow(z, 0.5);
    integrate(
        |w| root * 6.0 * upow(z + w.powi(6), -2.0 / 3.0),
        0.0,
        1.0,
        QUAD_TOL,
    )
}

/// The half-plane to triangle map with its normalization constants.
#[derive(Debug, Clone)]
pub struct TriangleMap {
    /// Normalization constant `A`.
    scale: C64,
    /// Unnormalized `∫₀^{−1}`.
    raw_minus_one: C64,
    /// Unnormalized `∫₀^∞`.
    raw_infinity: C64,
    /// Images of the prevertices `0`, `−1`, `∞`.
    vertices: [C64; 3],
}

impl TriangleMap {
    pub fn new() -> Self {
        let mid = C64::new(-0.5, 0.0);
        let raw_minus_one = from_zero(mid) - from_minus_one(mid);
        let two = C64::new(2.0, 0.0);
        let raw_infinity = from_zero(two) + to_infinity(two);
        let scale = raw_minus_one.inv();
        TriangleMap {
            scale,
            raw_minus_one,
            raw_infinity,
            vertices: [C64::new(0.0, 0.0), C64::new(1.0, 0.0), scale * raw_infinity],
        }
    }

    /// Shared instance; the constants cost a few quadratures.
    pub fn standard() -> &'static TriangleMap {
        static MAP: OnceLock<TriangleMap> = OnceLock::new();
        MAP.get_or_init(TriangleMap::new)
    }

    pub fn scale(&self) -> C64 {
        self.scale
    }

    /// Images of `0`, `−1` and `∞`: the right-angle vertex, the `π/3`
    /// vertex and the `π/6` vertex.
    pub fn vertices(&self) -> [C64; 3] {
        self.vertices
    }

    pub fn forward(&self, z: C64) -> Result<C64, ScError> {
        if z.im < 0.0 {
            return Err(ScError::BranchViolation(z));
        }
        if z.norm() == 0.0 {
            return Ok(self.vertices[0]);
        }
        if z == C64::new(-1.0, 0.0) || (z + 1.0).norm() == 0.0 {
            return Ok(self.vertices[1]);
        }
        let raw = if z.norm() > FAR_RADIUS {
            self.raw_infinity - to_infinity(z)
        } else if z.norm() <= (z + 1.0).norm() {
            from_zero(z)
        } else {
            self.raw_minus_one + from_minus_one(z)
        };
        Ok(self.scale * raw)
    }

    /// `F′(z) = A z^{-1/2} (z + 1)^{-2/3}`.
    pub fn derivative(&self, z: C64) -> C64 {
        self.scale * upow(z, -0.5) * upow(z + 1.0, -2.0 / 3.0)
    }

    /// Barycentric membership test with slack `tol`.
    pub fn contains(&self, w: C64, tol: f64) -> bool {
        let [a, b, c] = self.vertices;
        let cross = |p: C64, q: C64, r: C64| (q - p).re * (r - p).im - (q - p).im * (r - p).re;
        let area = cross(a, b, c);
        let l0 = cross(w, b, c) / area;
        let l1 = cross(a, w, c) / area;
        let l2 = cross(a, b, w) / area;
        l0 >= -tol && l1 >= -tol && l2 >= -tol
    }

    /// Interior angles at the three vertices, measured from the images of
    /// boundary points on either side of each prevertex.
    pub fn measured_vertex_angles(&self) -> [f64; 3] {
        let angle = |v: C64, p: C64, q: C64| {
            let (u, w) = (p - v, q - v);
            (u.conj() * w).arg().abs()
        };
        let f = |x: f64| self.forward(C64::new(x, 0.0)).expect("real axis");
        let [v0, v1, v2] = self.vertices;
        [
            angle(v0, f(-0.25), f(0.25)),
            angle(v1, f(-1.25), f(-0.75)),
            angle(v2, f(-1e3), f(1e3)),
        ]
    }

    fn initial_guesses(&self, w: C64) -> Vec<C64> {
        let [_, v1, v2] = self.vertices;
        let a = self.scale;
        // leading terms of F at the prevertices
        let near_zero = {
            let s = w / (a * 2.0);
            s * s
        };
        // F ≈ 1 + 3A(z+1)^{1/3}(−1)^{−1/2} = 1 − 3iA (z+1)^{1/3}
        let near_minus_one = {
            let s = (w - v1) / (a * C64::new(0.0, -3.0));
            s * s * s - 1.0
        };
        // F ≈ F(∞) − 6A z^{−1/6}
        let near_infinity = {
            let s = (v2 - w) / (a * 6.0);
            if s.norm() > 0.0 {
                s.powf(-6.0)
            } else {
                C64::new(0.0, 1e12)
            }
        };
        let mut starts = vec![
            near_zero,
            near_minus_one,
            near_infinity,
            C64::new(0.0, 1.0),
            C64::new(0.0, 0.5),
            C64::new(-0.5, 0.5),
            C64::new(-1.0, 1.0),
            C64::new(0.0, 2.0),
        ];
        for s in &mut starts {
            if !s.is_finite() {
                *s = C64::new(0.0, 1.0);
            }
            if s.im < 0.0 {
                *s = s.conj();
            }
        }
        starts
    }

    /// Inverse map by damped Newton iteration on [`TriangleMap::forward`].
    ///
    /// Starts from the best of a small start set (vertex asymptotics plus
    /// fixed interior points) and retries from the others before failing.
    pub fn inverse(&self, w: C64) -> Result<C64, ScError> {
        if !self.contains(w, 1e-9) {
            return Err(ScError::OutsideTriangle(w));
        }
        let [v0, v1, v2] = self.vertices;
        if (w - v0).norm() < 1e-15 {
            return Ok(C64::new(0.0, 0.0));
        }
        if (w - v1).norm() < 1e-15 {
            return Ok(C64::new(-1.0, 0.0));
        }
        if (w - v2).norm() < 1e-15 {
            return Err(ScError::VertexAtInfinity(w));
        }
        let mut starts: Vec<(f64, C64)> = self
            .initial_guesses(w)
            .into_iter()
            .filter_map(|z| self.forward(z).ok().map(|f| ((f - w).norm(), z)))
            .collect();
        starts.sort_by(|a, b| a.0.total_cmp(&b.0));
        for (_, z0) in starts.into_iter().take(5) {
            if let Some(z) = self.newton(w, z0) {
                return Ok(z);
            }
        }
        Err(ScError::NoConvergence(w))
    }

    fn newton(&self, w: C64, mut z: C64) -> Option<C64> {
        let mut res = (self.forward(z).ok()? - w).norm();
        for _ in 0..NEWTON_MAX_ITER {
            if res < NEWTON_RESIDUAL {
                return Some(z);
            }
            let d = self.derivative(z);
            if !d.is_finite() || d.norm() == 0.0 {
                return None;
            }
            let step = (self.forward(z).ok()? - w) / d;
            let mut lambda = 1.0;
            loop {
                let mut cand = z - step * lambda;
                if cand.im < 0.0 {
                    cand.im = 0.0;
                }
                let r = (self.forward(cand).ok()? - w).norm();
                if r < res {
                    z = cand;
                    res = r;
                    break;
                }
                lambda /= 2.0;
                if lambda < 1e-12 {
                    // no descent: accept if we are already at rounding level
                    return (res < 1e-11).then_some(z);
                }
            }
        }
        (res < NEWTON_RESIDUAL).then_some(z)
    }
}

impl Default for TriangleMap {
    fn default() -> Self {
        TriangleMap::new()
    }
}

pub fn sc_forward(z: C64) -> Result<C64, ScError> {
    TriangleMap::standard().forward(z)
}

pub fn sc_inverse(w: C64) -> Result<C64, ScError> {
    TriangleMap::standard().inverse(w)
}

/// The labelled corners of the butterfly `t⁺ ∪ t⁻`.
///
/// `t⁺` is the image triangle (below the real axis) with white at the right
/// angle, black at the `π/6` corner and the face center at the `π/3` corner;
/// `t⁻` is its mirror image across the shared white–center edge `[0, 1]`.
#[derive(Debug, Clone, Copy)]
pub struct Butterfly {
    pub white: C64,
    pub center: C64,
    pub black_plus: C64,
    pub black_minus: C64,
}

pub fn butterfly() -> Butterfly {
    let [v0, v1, v2] = TriangleMap::standard().vertices();
    Butterfly {
        white: v0,
        center: v1,
        black_plus: v2,
        black_minus: v2.conj(),
    }
}

/// Half-plane normalization `ζ ↦ ζ / (ζ + 1)`: sends the prevertices
/// `0, ∞, −1` (white, black, center) to `0, 1, ∞`.
fn normalize(zeta: C64) -> SpherePoint {
    let den = zeta + 1.0;
    if den.norm() == 0.0 {
        SpherePoint::Infinity
    } else {
        SpherePoint::Finite(zeta / den)
    }
}

/// Belyi map of one butterfly: `t⁺` onto the upper half-plane and `t⁻`
/// onto the lower one (Schwarz reflection), with white, black and center
/// going to `0`, `1` and `∞`.
pub fn butterfly_belyi(p: C64) -> Result<SpherePoint, ScError> {
    const VERTEX_TOL: f64 = 1e-12;
    let map = TriangleMap::standard();
    let b = butterfly();
    if (p - b.white).norm() < VERTEX_TOL {
        return Ok(SpherePoint::finite(0.0, 0.0));
    }
    if (p - b.black_plus).norm() < VERTEX_TOL || (p - b.black_minus).norm() < VERTEX_TOL {
        return Ok(SpherePoint::finite(1.0, 0.0));
    }
    if (p - b.center).norm() < VERTEX_TOL {
        return Ok(SpherePoint::Infinity);
    }
    if p.im <= 0.0 && map.contains(p, 1e-9) {
        return Ok(normalize(map.inverse(p)?));
    }
    if p.im > 0.0 && map.contains(p.conj(), 1e-9) {
        return Ok(match normalize(map.inverse(p.conj())?) {
            SpherePoint::Finite(z) => SpherePoint::Finite(z.conj()),
            SpherePoint::Infinity => SpherePoint::Infinity,
        });
    }
    Err(ScError::OutsideButterfly(p))
}

/// Right angle, `π/3`, `π/6`.
pub const EXPECTED_ANGLES: [f64; 3] = [PI / 2.0, PI / 3.0, PI / 6.0];
