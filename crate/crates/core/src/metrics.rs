//! Conformal metrics `ρ(z)|dz|²` on the Riemann sphere.
//!
//! A metric carries its conformal factor in both standard charts: `z` and
//! `u = 1/z`. Evaluation at a point picks the chart in which the point lies
//! in the closed unit disc, so nothing is ever evaluated near a chart's
//! point at infinity.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex64 as C64;
use serde::Serialize;

use crate::group_type::GroupType;
use crate::groups::{FiniteMoebiusGroup, GroupError};
use crate::moebius::{MoebiusTransform, SpherePoint};

/// Default finite-difference step for [`curvature`].
pub const DEFAULT_STEP: f64 = 1e-3;
/// Default sample count for the sphere diagnostics.
pub const DEFAULT_SAMPLES: usize = 200;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum MetricError {
    #[error("StencilOutOfDomain: the conformal factor is not positive and finite near {0}")]
    StencilOutOfDomain(C64),
    #[error("CyclicGroupUnsupported: {0} is cyclic; no canonical conjugator exists")]
    CyclicGroupUnsupported(GroupType),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// One of the two standard charts of the sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Chart {
    /// The coordinate `z`.
    #[serde(rename = "z")]
    Finite,
    /// The coordinate `u = 1/z`.
    #[serde(rename = "u")]
    Infinity,
}

impl Chart {
    /// The chart in which `p` has modulus at most one, and its coordinate
    /// there.
    pub fn locate(p: &SpherePoint) -> (Chart, C64) {
        match *p {
            SpherePoint::Infinity => (Chart::Infinity, C64::new(0.0, 0.0)),
            SpherePoint::Finite(z) if z.norm() <= 1.0 => (Chart::Finite, z),
            SpherePoint::Finite(z) => (Chart::Infinity, z.inv()),
        }
    }

    pub fn point(self, coord: C64) -> SpherePoint {
        match self {
            Chart::Finite => SpherePoint::Finite(coord),
            Chart::Infinity if coord.norm() == 0.0 => SpherePoint::Infinity,
            Chart::Infinity => SpherePoint::Finite(coord.inv()),
        }
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Chart::Finite => "z",
            Chart::Infinity => "u",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    Round,
    Flat,
    Pullback,
    Scaled,
    Averaged,
    Conjugated,
    Hermitian,
    OrbitTriple,
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Construction::Round => "round",
            Construction::Flat => "flat",
            Construction::Pullback => "pullback",
            Construction::Scaled => "scaled",
            Construction::Averaged => "averaged",
            Construction::Conjugated => "conjugated",
            Construction::Hermitian => "hermitian",
            Construction::OrbitTriple => "orbit_triple",
        })
    }
}

/// Which construction produced a metric, and for which group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub construction: Construction,
    pub group: Option<GroupType>,
}

type Factor = Arc<dyn Fn(C64) -> f64 + Send + Sync>;

/// The metric `ρ(z)|dz|²`, given by its factor in the `z` and `u = 1/z`
/// charts: `ρ(z) = ρ∞(1/z) / |z|⁴`.
#[derive(Clone)]
pub struct ConformalMetric {
    rho: Factor,
    rho_inf: Factor,
    provenance: Provenance,
}

impl fmt::Debug for ConformalMetric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ConformalMetric")
            .field("provenance", &self.provenance)
            .finish_non_exhaustive()
    }
}

impl ConformalMetric {
    pub fn new<F, G>(rho: F, rho_at_infinity: G, provenance: Provenance) -> Self
    where
        F: Fn(C64) -> f64 + Send + Sync + 'static,
        G: Fn(C64) -> f64 + Send + Sync + 'static,
    {
        ConformalMetric {
            rho: Arc::new(rho),
            rho_inf: Arc::new(rho_at_infinity),
            provenance,
        }
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Factor in the `z` chart.
    pub fn rho(&self, z: C64) -> f64 {
        (self.rho)(z)
    }

    /// Factor in the `u = 1/z` chart.
    pub fn rho_at_infinity(&self, u: C64) -> f64 {
        (self.rho_inf)(u)
    }

    pub fn rho_in(&self, chart: Chart, coord: C64) -> f64 {
        match chart {
            Chart::Finite => self.rho(coord),
            Chart::Infinity => self.rho_at_infinity(coord),
        }
    }

    /// Factor at `p` in the chart returned by [`Chart::locate`].
    pub fn rho_at(&self, p: &SpherePoint) -> (Chart, C64, f64) {
        let (chart, coord) = Chart::locate(p);
        (chart, coord, self.rho_in(chart, coord))
    }

    /// `c · ρ`.
    pub fn scaled(&self, c: f64) -> ConformalMetric {
        let (r, ri) = (self.rho.clone(), self.rho_inf.clone());
        ConformalMetric::new(
            move |z| c * r(z),
            move |u| c * ri(u),
            Provenance {
                construction: Construction::Scaled,
                group: self.provenance.group,
            },
        )
    }
}

pub fn round_metric() -> ConformalMetric {
    let f = |z: C64| 4.0 / (1.0 + z.norm_sqr()).powi(2);
    ConformalMetric::new(
        f,
        f,
        Provenance {
            construction: Construction::Round,
            group: None,
        },
    )
}

/// `ρ ≡ 1` in the `z` chart (singular at ∞).
pub fn flat_metric() -> ConformalMetric {
    ConformalMetric::new(
        |_| 1.0,
        |u: C64| u.norm_sqr().powi(2).recip(),
        Provenance {
            construction: Construction::Flat,
            group: None,
        },
    )
}

/// `m*g` at a chart coordinate, where `[a, b; c, d]` already expresses `m`
/// from that chart: `ρ(m(z))|m′(z)|²` evaluated through whichever chart of
/// the target contains `m(z)`.
fn pullback_factor(g: &ConformalMetric, e: [C64; 4], z: C64) -> f64 {
    let [a, b, c, d] = e;
    let det = (a * d - b * c).norm_sqr();
    let (p, q) = (a * z + b, c * z + d);
    if p.norm() <= q.norm() {
        g.rho(p / q) * det / q.norm_sqr().powi(2)
    } else {
        g.rho_at_infinity(q / p) * det / p.norm_sqr().powi(2)
    }
}

/// The matrix of `m` written from the `u` chart: `u ↦ m(1/u)`.
fn from_infinity_chart(e: [C64; 4]) -> [C64; 4] {
    let [a, b, c, d] = e;
    [b, a, d, c]
}

/// `m*g`, so that `m` is an isometry from `m*g` to `g`.
pub fn pullback(m: &MoebiusTransform, g: &ConformalMetric) -> ConformalMetric {
    let e = m.entries();
    let ei = from_infinity_chart(e);
    let (g1, g2) = (g.clone(), g.clone());
    ConformalMetric::new(
        move |z| pullback_factor(&g1, e, z),
        move |u| pullback_factor(&g2, ei, u),
        Provenance {
            construction: Construction::Pullback,
            group: g.provenance.group,
        },
    )
}

/// Mean of `n*round` over a list of maps `n`, in closed form:
/// `4 / (|az + b|² + |cz + d|²)²` for a normalized matrix.
fn mean_round_pullback(maps: &[MoebiusTransform], provenance: Provenance) -> ConformalMetric {
    let finite: Arc<[[C64; 4]]> = maps.iter().map(|m| m.entries()).collect();
    let infinite: Arc<[[C64; 4]]> = finite.iter().map(|&e| from_infinity_chart(e)).collect();
    let eval = |mats: &[[C64; 4]], z: C64| {
        let sum: f64 = mats
            .iter()
            .map(|[a, b, c, d]| 4.0 / ((a * z + b).norm_sqr() + (c * z + d).norm_sqr()).powi(2))
            .sum();
        sum / mats.len() as f64
    };
    ConformalMetric::new(
        move |z| eval(&finite, z),
        move |u| eval(&infinite, u),
        provenance,
    )
}

/// The group average of the round metric.
pub fn averaged_metric(g: &FiniteMoebiusGroup) -> ConformalMetric {
    mean_round_pullback(
        g.elements(),
        Provenance {
            construction: Construction::Averaged,
            group: Some(g.type_tag()),
        },
    )
}

/// `φ*round` for the unitarizing conjugator `φ` of a non-cyclic group.
pub fn conjugated_metric(g: &FiniteMoebiusGroup) -> Result<ConformalMetric, MetricError> {
    if g.type_tag().is_cyclic() {
        return Err(MetricError::CyclicGroupUnsupported(g.type_tag()));
    }
    Ok(metric_from_conjugator(&g.unitarize().phi, g.type_tag()))
}

/// `φ*round`, tagged as the conjugated construction for `group`.
pub fn metric_from_conjugator(phi: &MoebiusTransform, group: GroupType) -> ConformalMetric {
    mean_round_pullback(
        std::slice::from_ref(phi),
        Provenance {
            construction: Construction::Conjugated,
            group: Some(group),
        },
    )
}

/// Conformal part of `Re H(de·, de·)` for the unit sphere `e(Ĉ)` inside
/// `C × R ⊂ C²`, given the tangent images `(ξ_x, T_x)` and `(ξ_y, T_y)`.
fn hermitian_trace(h: [C64; 4], tx: (C64, f64), ty: (C64, f64)) -> f64 {
    let [h11, h12, _, h22] = h;
    let q = |(xi, t): (C64, f64)| {
        h11.re * xi.norm_sqr() + 2.0 * (h12 * xi.conj()).re * t + h22.re * t * t
    };
    0.5 * (q(tx) + q(ty))
}

/// The metric induced on the embedded sphere by the Hermitian form `H`,
/// reduced to its conformal part. Equals the round metric for `H = I`.
pub fn hermitian_form_metric(h: [C64; 4], group: Option<GroupType>) -> ConformalMetric {
    // e(z) = (2z/s, (|z|² − 1)/s), s = 1 + |z|²
    let finite = move |z: C64| {
        let s = 1.0 + z.norm_sqr();
        let s2 = s * s;
        let tx = (
            C64::new(2.0 / s, 0.0) - z * (4.0 * z.re / s2),
            4.0 * z.re / s2,
        );
        let ty = (
            C64::new(0.0, 2.0 / s) - z * (4.0 * z.im / s2),
            4.0 * z.im / s2,
        );
        hermitian_trace(h, tx, ty)
    };
    // e(1/u) = (2ū/s, (1 − |u|²)/s), s = 1 + |u|²
    let infinite = move |u: C64| {
        let s = 1.0 + u.norm_sqr();
        let s2 = s * s;
        let ub = u.conj();
        let tx = (
            C64::new(2.0 / s, 0.0) - ub * (4.0 * u.re / s2),
            -4.0 * u.re / s2,
        );
        let ty = (
            C64::new(0.0, -2.0 / s) - ub * (4.0 * u.im / s2),
            -4.0 * u.im / s2,
        );
        hermitian_trace(h, tx, ty)
    };
    ConformalMetric::new(
        finite,
        infinite,
        Provenance {
            construction: Construction::Hermitian,
            group,
        },
    )
}

/// Mean of `h*base` over the elements of `g`.
fn group_mean(
    g: &FiniteMoebiusGroup,
    base: &ConformalMetric,
    provenance: Provenance,
) -> ConformalMetric {
    let finite: Arc<[[C64; 4]]> = g.elements().iter().map(|m| m.entries()).collect();
    let infinite: Arc<[[C64; 4]]> = finite.iter().map(|&e| from_infinity_chart(e)).collect();
    let (b1, b2) = (base.clone(), base.clone());
    let n = g.order() as f64;
    ConformalMetric::new(
        move |z| {
            finite
                .iter()
                .map(|&e| pullback_factor(&b1, e, z))
                .sum::<f64>()
                / n
        },
        move |u| {
            infinite
                .iter()
                .map(|&e| pullback_factor(&b2, e, u))
                .sum::<f64>()
                / n
        },
        provenance,
    )
}

/// The averaged Hermitian form of `g` restricted to the embedded sphere,
/// then averaged over `g` so that the result is invariant.
pub fn hermitian_metric(g: &FiniteMoebiusGroup) -> ConformalMetric {
    let base = hermitian_form_metric(g.averaged_hermitian_form(), Some(g.type_tag()));
    group_mean(
        g,
        &base,
        Provenance {
            construction: Construction::Hermitian,
            group: Some(g.type_tag()),
        },
    )
}

/// Average of `h⁻¹*round` over the maps `h` with `h(0) = a₁`, `h(1) = a₂`,
/// `h(∞) = a₃` for all `aᵢ` in the `i`-th fixed-point orbit, smallest orbit
/// first. Orbits of equal size are also averaged over their role swaps.
/// Pulling back by `h⁻¹` rather than `h` keeps the metric on the sphere the
/// group acts on. Cyclic groups get the round metric.
pub fn orbit_triple_metric(g: &FiniteMoebiusGroup) -> Result<ConformalMetric, MetricError> {
    let provenance = Provenance {
        construction: Construction::OrbitTriple,
        group: Some(g.type_tag()),
    };
    if g.type_tag().is_cyclic() {
        let mut m = round_metric();
        m.provenance = provenance;
        return Ok(m);
    }
    let mut orbits = g.orbit_analysis()?.orbits;
    orbits.reverse();
    if orbits.len() != 3 {
        return Err(GroupError::OrbitMismatch(format!(
            "expected three fixed-point orbits, found {}",
            orbits.len()
        ))
        .into());
    }
    let maps = orbit_triple_maps(&orbits.iter().map(|o| o.points.clone()).collect::<Vec<_>>())?;
    Ok(mean_round_pullback(&maps, provenance))
}

/// The normalizing maps `h⁻¹` for every triple and every size-preserving
/// role assignment of the three orbits.
fn orbit_triple_maps(orbits: &[Vec<SpherePoint>]) -> Result<Vec<MoebiusTransform>, MetricError> {
    const ROLES: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
    let mut maps = Vec::new();
    for perm in ROLES
        .iter()
        .filter(|p| (0..3).all(|i| sizes[p[i]] == sizes[i]))
    {
        let (o0, o1, o2) = (&orbits[perm[0]], &orbits[perm[1]], &orbits[perm[2]]);
        for a1 in o0 {
            for a2 in o1 {
                for a3 in o2 {
                    let h = MoebiusTransform::from_triple(a1, a2, a3).map_err(GroupError::from)?;
                    maps.push(h.inverse());
                }
            }
        }
    }
    Ok(maps)
}

/// Gaussian curvature `K = −Δ log ρ / (2ρ)` by the five-point Laplacian,
/// in the `u` chart when `|z| > 1`.
pub fn curvature(g: &ConformalMetric, z: C64, h: f64) -> Result<f64, MetricError> {
    let (chart, coord) = Chart::locate(&SpherePoint::Finite(z));
    curvature_in(g, chart, coord, h)
}

pub fn curvature_in(g: &ConformalMetric, chart: Chart, w: C64, h: f64) -> Result<f64, MetricError> {
    let log_rho = |p: C64| {
        let r = g.rho_in(chart, p);
        if r.is_finite() && r > 0.0 {
            Ok(r.ln())
        } else {
            Err(MetricError::StencilOutOfDomain(w))
        }
    };
    let c = log_rho(w)?;
    let lap = (log_rho(w + h)?
        + log_rho(w - h)?
        + log_rho(w + C64::new(0.0, h))?
        + log_rho(w - C64::new(0.0, h))?
        - 4.0 * c)
        / (h * h);
    Ok(-lap / (2.0 * c.exp()))
}

/// Richardson extrapolation of [`curvature_in`] from steps `h` and `h/2`.
pub fn curvature_richardson(
    g: &ConformalMetric,
    chart: Chart,
    w: C64,
    h: f64,
) -> Result<f64, MetricError> {
    let k1 = curvature_in(g, chart, w, h)?;
    let k2 = curvature_in(g, chart, w, h / 2.0)?;
    Ok((4.0 * k2 - k1) / 3.0)
}

/// `n × n` polar grid in the closed unit disc of each chart: radii
/// `(i + ½)/n`, angles `2πj/n`. Finite-chart points come first.
pub fn grid_points(n: usize) -> Vec<(Chart, C64)> {
    let mut pts = Vec::with_capacity(2 * n * n);
    for chart in [Chart::Finite, Chart::Infinity] {
        for i in 0..n {
            let r = (i as f64 + 0.5) / n as f64;
            for j in 0..n {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / n as f64;
                pts.push((chart, C64::from_polar(r, theta)));
            }
        }
    }
    pts
}

/// Low-discrepancy points on the sphere (Fibonacci lattice), never at a
/// pole.
pub fn sphere_samples(n: usize) -> Vec<SpherePoint> {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|k| {
            let t = 1.0 - (2.0 * k as f64 + 1.0) / n as f64;
            let r = (1.0 - t * t).sqrt();
            let theta = golden * k as f64;
            // inverse stereographic projection from the north pole
            SpherePoint::Finite(C64::from_polar(r / (1.0 - t), theta))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureSample {
    pub chart: Chart,
    pub coord: C64,
    pub rho: f64,
    pub curvature: f64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CurvatureReport {
    pub samples: Vec<CurvatureSample>,
}

impl CurvatureReport {
    pub fn max_deviation_from(&self, c: f64) -> f64 {
        self.samples
            .iter()
            .map(|s| (s.curvature - c).abs())
            .fold(0.0, f64::max)
    }

    pub fn min(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| s.curvature)
            .fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.samples
            .iter()
            .map(|s| s.curvature)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn spread(&self) -> f64 {
        self.max() - self.min()
    }
}

/// Factor and curvature at one chart point; curvature is Richardson
/// extrapolated from steps `h` and `h/2`.
pub fn sample_at(
    g: &ConformalMetric,
    chart: Chart,
    coord: C64,
    h: f64,
) -> Result<CurvatureSample, MetricError> {
    Ok(CurvatureSample {
        chart,
        coord,
        rho: g.rho_in(chart, coord),
        curvature: curvature_richardson(g, chart, coord, h)?,
    })
}

/// Curvature on the `n × n` grid of [`grid_points`].
pub fn curvature_report(
    g: &ConformalMetric,
    n: usize,
    h: f64,
) -> Result<CurvatureReport, MetricError> {
    let samples = grid_points(n)
        .into_iter()
        .map(|(chart, w)| sample_at(g, chart, w, h))
        .collect::<Result<_, _>>()?;
    Ok(CurvatureReport { samples })
}

/// `sup |ρ(h(z))|h′(z)|² − ρ(z)| / ρ(z)` over sphere samples and `h ∈ grp`.
pub fn invariance_defect(g: &ConformalMetric, grp: &FiniteMoebiusGroup, samples: usize) -> f64 {
    let pts = sphere_samples(samples);
    let mut worst: f64 = 0.0;
    for h in grp.elements() {
        let moved = pullback(h, g);
        for p in &pts {
            let (chart, w, r) = g.rho_at(p);
            let r2 = moved.rho_in(chart, w);
            worst = worst.max((r2 - r).abs() / r);
        }
    }
    worst
}

/// `sup |ρ₁ − ρ₂| / ρ₂` over sphere samples, chart by chart.
pub fn metric_distance(g1: &ConformalMetric, g2: &ConformalMetric, samples: usize) -> f64 {
    sphere_samples(samples)
        .iter()
        .map(|p| {
            let (chart, w, r2) = g2.rho_at(p);
            (g1.rho_in(chart, w) - r2).abs() / r2
        })
        .fold(0.0, f64::max)
}

/// `sup |ρ(z) − ρ∞(1/z)/|z|⁴| / ρ(z)` over `n` points on each of the
/// circles of radius 0.5, 1 and 2.
pub fn chart_compatibility_defect(g: &ConformalMetric, n: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for r in [0.5, 1.0, 2.0] {
        for j in 0..n {
            let z = C64::from_polar(r, 2.0 * std::f64::consts::PI * (j as f64 + 0.25) / n as f64);
            let a = g.rho(z);
            let b = g.rho_at_infinity(z.inv()) / z.norm_sqr().powi(2);
            worst = worst.max((a - b).abs() / a);
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{closure, standard_group};

    fn involution_group() -> FiniteMoebiusGroup {
        let inv = MoebiusTransform::new(
            C64::new(0.0, 0.0),
            C64::new(1.0, 0.0),
            C64::new(4.0, 0.0),
            C64::new(0.0, 0.0),
        )
        .unwrap();
        closure(&[inv], 10).unwrap()
    }

    #[test]
    fn round_metric_values() {
        let g = round_metric();
        assert_eq!(g.rho(C64::new(0.0, 0.0)), 4.0);
        assert_eq!(g.rho(C64::new(1.0, 0.0)), 1.0);
        assert!(chart_compatibility_defect(&g, 16) < 1e-14);
    }

    #[test]
    fn pullback_by_scaling() {
        let m = MoebiusTransform::scaling(C64::new(2.0, 0.0));
        let g = pullback(&m, &round_metric());
        assert!((g.rho(C64::new(1.0, 0.0)) - 16.0 / 25.0).abs() < 1e-15);
        assert!(chart_compatibility_defect(&g, 16) < 1e-12);
    }

    #[test]
    fn curvature_examples() {
        let k = curvature(&round_metric(), C64::new(0.3, 0.2), DEFAULT_STEP).unwrap();
        assert!((k - 1.0).abs() < 1e-4);
        let k = curvature(&flat_metric(), C64::new(0.3, 0.2), DEFAULT_STEP).unwrap();
        assert!(k.abs() < 1e-8);
        let bad = ConformalMetric::new(|_| -1.0, |_| -1.0, round_metric().provenance());
        assert!(matches!(
            curvature(&bad, C64::new(0.0, 0.0), DEFAULT_STEP),
            Err(MetricError::StencilOutOfDomain(_))
        ));
    }

    #[test]
    fn curvature_scales_inversely() {
        let g = pullback(
            &MoebiusTransform::new(
                C64::new(1.0, 0.0),
                C64::new(0.5, 0.0),
                C64::new(0.0, 0.3),
                C64::new(1.0, 0.0),
            )
            .unwrap(),
            &round_metric(),
        );
        let g4 = g.scaled(4.0);
        for z in [C64::new(0.1, 0.4), C64::new(-1.5, 0.7)] {
            let k = curvature(&g, z, DEFAULT_STEP).unwrap();
            let k4 = curvature(&g4, z, DEFAULT_STEP).unwrap();
            assert!((k4 - k / 4.0).abs() < 1e-10);
        }
    }

    #[test]
    fn averaged_metric_examples() {
        let d4 = standard_group(GroupType::Dihedral(4)).unwrap();
        assert!(metric_distance(&averaged_metric(&d4), &round_metric(), 100) < 1e-10);
        let inv = involution_group();
        let avg = averaged_metric(&inv);
        assert!(invariance_defect(&avg, &inv, DEFAULT_SAMPLES) < 1e-9);
        assert!(metric_distance(&round_metric(), &avg, DEFAULT_SAMPLES) > 0.01);
        assert!(invariance_defect(&round_metric(), &inv, DEFAULT_SAMPLES) > 0.01);
    }

    #[test]
    fn conjugated_metric_examples() {
        let s4 = standard_group(GroupType::S4).unwrap();
        assert!(metric_distance(&conjugated_metric(&s4).unwrap(), &round_metric(), 100) < 1e-10);
        let c3 = standard_group(GroupType::Cyclic(3)).unwrap();
        assert!(matches!(
            conjugated_metric(&c3),
            Err(MetricError::CyclicGroupUnsupported(GroupType::Cyclic(3)))
        ));
        let m = MoebiusTransform::translation(C64::new(1.0, 1.0));
        let g = standard_group(GroupType::A4)
            .unwrap()
            .conjugate_by(&m.inverse());
        let metric = conjugated_metric(&g).unwrap();
        assert!(invariance_defect(&metric, &g, DEFAULT_SAMPLES) < 1e-8);
        assert!(
            curvature_report(&metric, 40, DEFAULT_STEP)
                .unwrap()
                .max_deviation_from(1.0)
                < 1e-4
        );
    }

    #[test]
    fn hermitian_metric_examples() {
        let trivial = closure(&[MoebiusTransform::identity()], 10).unwrap();
        assert!(metric_distance(&hermitian_metric(&trivial), &round_metric(), 100) < 1e-14);
        let a5 = standard_group(GroupType::A5).unwrap();
        assert!(metric_distance(&hermitian_metric(&a5), &round_metric(), 100) < 1e-9);
        let inv = involution_group();
        let herm = hermitian_metric(&inv);
        assert!(invariance_defect(&herm, &inv, DEFAULT_SAMPLES) < 1e-9);
        assert!(chart_compatibility_defect(&herm, 16) < 1e-9);
        assert!(curvature_report(&herm, 40, DEFAULT_STEP).unwrap().spread() > 1e-3);
    }

    #[test]
    fn orbit_triple_examples() {
        let c7 = standard_group(GroupType::Cyclic(7)).unwrap();
        let m = orbit_triple_metric(&c7).unwrap();
        assert!(metric_distance(&m, &round_metric(), 50) == 0.0);
        let a4 = standard_group(GroupType::A4).unwrap();
        let orbits = a4.orbit_analysis().unwrap().orbits;
        let pts: Vec<_> = orbits.into_iter().map(|o| o.points).collect();
        assert_eq!(orbit_triple_maps(&pts).unwrap().len(), 2 * 96);
        let m = orbit_triple_metric(&a4).unwrap();
        assert!(grid_points(20).iter().all(|&(c, w)| m.rho_in(c, w) > 0.0));
        let s4 = standard_group(GroupType::S4).unwrap();
        let m = orbit_triple_metric(&s4).unwrap();
        assert!(curvature_report(&m, 40, DEFAULT_STEP).unwrap().spread() > 1e-3);
    }

    #[test]
    fn samples_cover_both_charts() {
        let pts = sphere_samples(DEFAULT_SAMPLES);
        let inner = pts
            .iter()
            .filter(|p| Chart::locate(p).0 == Chart::Finite)
            .count();
        assert!(inner > 80 && inner < 120);
        assert_eq!(grid_points(40).len(), 3200);
    }
}
