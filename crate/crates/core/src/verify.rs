//! The acceptance properties, one function per criterion.
//!
//! Each check recomputes everything it reports. Randomness comes from a
//! ChaCha stream seeded by [`VerifyOptions::seed`], so a run is reproducible.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_complex::Complex64 as C64;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dessin::{Dessin, Perm};
use crate::group_type::GroupType;
use crate::groups::{
    closure, conjugator_well_defined, random_moebius, FiniteMoebiusGroup, GroupError,
    DEFAULT_CLOSURE_CAP, MAX_CONJUGATOR_CONDITION,
};
use crate::metrics::{
    averaged_metric, conjugated_metric, curvature_report, hermitian_metric, invariance_defect,
    metric_distance, round_metric, DEFAULT_SAMPLES, DEFAULT_STEP,
};
use crate::moebius::{standard_generators, MoebiusTransform, SpherePoint};
use crate::schwarz_christoffel::{butterfly, butterfly_belyi, TriangleMap, EXPECTED_ANGLES};

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Groups,
    Metrics,
    Sc,
    Dessins,
    All,
}

impl FromStr for Scope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "groups" => Ok(Scope::Groups),
            "metrics" => Ok(Scope::Metrics),
            "sc" => Ok(Scope::Sc),
            "dessins" => Ok(Scope::Dessins),
            "all" => Ok(Scope::All),
            _ => Err(format!("unknown scope {s:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Scale one entry of the first standard generator of every group by
    /// 1.001; every group-based check should then fail.
    pub perturb: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: DEFAULT_SEED,
            perturb: false,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub criterion: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:>2} {:<22} {} ({:.2}s)",
            if self.passed { "PASS" } else { "FAIL" },
            self.criterion,
            self.name,
            self.detail,
            self.seconds
        )
    }
}

fn timed(criterion: u8, name: &'static str, f: impl FnOnce() -> Result<String, String>) -> Check {
    let start = Instant::now();
    let (passed, detail) = match f() {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Check {
        criterion,
        name,
        passed,
        detail,
        seconds: start.elapsed().as_secs_f64(),
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// The standard group of type `t`, honouring the perturbation hook.
pub fn group(t: GroupType, opts: &VerifyOptions) -> Result<FiniteMoebiusGroup, GroupError> {
    let mut gens = standard_generators(t)?;
    if opts.perturb {
        let [a, b, c, d] = gens[0].entries();
        gens[0] = MoebiusTransform::new(a * 1.001, b, c, d)?;
    }
    closure(&gens, DEFAULT_CLOSURE_CAP)
}

fn group_or_err(t: GroupType, opts: &VerifyOptions) -> Result<FiniteMoebiusGroup, String> {
    group(t, opts).map_err(|e| format!("{t}: {e}"))
}

const NON_CYCLIC: [GroupType; 7] = [
    GroupType::Dihedral(2),
    GroupType::Dihedral(3),
    GroupType::Dihedral(4),
    GroupType::Dihedral(6),
    GroupType::A4,
    GroupType::S4,
    GroupType::A5,
];

pub fn check_group_orders(opts: &VerifyOptions) -> Check {
    timed(1, "group orders", || {
        let mut cases: Vec<(GroupType, usize)> = Vec::new();
        for n in [2, 3, 5, 6] {
            cases.push((GroupType::Cyclic(n), n));
        }
        for n in [2, 3, 6] {
            cases.push((GroupType::Dihedral(n), 2 * n));
        }
        cases.extend([
            (GroupType::A4, 12),
            (GroupType::S4, 24),
            (GroupType::A5, 60),
        ]);
        for &(t, n) in &cases {
            let g = group_or_err(t, opts)?;
            ensure(g.order() == n && g.type_tag() == t, || {
                format!("{t}: order {} classified {}", g.order(), g.type_tag())
            })?;
        }
        Ok(format!("{} groups, orders exact", cases.len()))
    })
}

pub fn check_orbit_signatures(opts: &VerifyOptions) -> Check {
    timed(2, "orbit signatures", || {
        let cases = [
            (GroupType::Dihedral(2), vec![2, 2, 2]),
            (GroupType::Dihedral(3), vec![3, 3, 2]),
            (GroupType::Dihedral(6), vec![6, 6, 2]),
            (GroupType::A4, vec![6, 4, 4]),
            (GroupType::S4, vec![12, 8, 6]),
            (GroupType::A5, vec![30, 20, 12]),
        ];
        for (t, want) in &cases {
            let data = group_or_err(*t, opts)?
                .orbit_analysis()
                .map_err(|e| format!("{t}: {e}"))?;
            ensure(&data.sizes() == want, || {
                format!("{t}: sizes {:?}", data.sizes())
            })?;
            ensure(data.class_formula_holds() && data.burnside_holds(), || {
                format!("{t}: class formula or Burnside sum fails")
            })?;
        }
        Ok(format!("{} groups, class formula exact", cases.len()))
    })
}

pub fn check_unitarization(opts: &VerifyOptions) -> Check {
    timed(3, "unitarization", || {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let mut worst: f64 = 0.0;
        for t in [
            GroupType::Dihedral(4),
            GroupType::A4,
            GroupType::S4,
            GroupType::A5,
        ] {
            let g = group_or_err(t, opts)?;
            for _ in 0..3 {
                let m = random_moebius(&mut rng, MAX_CONJUGATOR_CONDITION);
                let conj = g.conjugate_by(&m);
                let unit = conj.conjugate_by(&conj.unitarize().phi);
                worst = worst.max(unit.max_unitarity_defect());
                ensure(unit.is_in_so3(1e-8), || {
                    format!("{t}: unitarity defect {:.2e}", unit.max_unitarity_defect())
                })?;
            }
        }
        Ok(format!("12 conjugates, max defect {worst:.2e}"))
    })
}

pub fn check_curvature(opts: &VerifyOptions) -> Check {
    timed(4, "curvature", || {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(4));
        let mut worst: f64 = 0.0;
        let mut count = 0;
        for t in NON_CYCLIC {
            let g = group_or_err(t, opts)?;
            let mut groups = vec![g.clone()];
            for _ in 0..3 {
                groups.push(g.conjugate_by(&random_moebius(&mut rng, MAX_CONJUGATOR_CONDITION)));
            }
            for grp in &groups {
                let metric = conjugated_metric(grp).map_err(|e| format!("{t}: {e}"))?;
                let dev = curvature_report(&metric, 40, DEFAULT_STEP)
                    .map_err(|e| format!("{t}: {e}"))?
                    .max_deviation_from(1.0);
                worst = worst.max(dev);
                count += 1;
                ensure(dev < 1e-4, || format!("{t}: |K - 1| = {dev:.2e}"))?;
            }
        }
        Ok(format!(
            "{count} metrics on 40x40 grids, max |K - 1| {worst:.2e}"
        ))
    })
}

pub fn check_invariance(opts: &VerifyOptions) -> Check {
    timed(5, "invariance", || {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(5));
        let (mut w_conj, mut w_avg, mut w_herm): (f64, f64, f64) = (0.0, 0.0, 0.0);
        let types = [
            GroupType::Cyclic(5),
            GroupType::Dihedral(3),
            GroupType::Dihedral(4),
            GroupType::A4,
            GroupType::S4,
            GroupType::A5,
        ];
        for t in types {
            let g = group_or_err(t, opts)?;
            let m = random_moebius(&mut rng, MAX_CONJUGATOR_CONDITION);
            for grp in [g.clone(), g.conjugate_by(&m)] {
                if !t.is_cyclic() {
                    let metric = conjugated_metric(&grp).map_err(|e| format!("{t}: {e}"))?;
                    let d = invariance_defect(&metric, &grp, DEFAULT_SAMPLES);
                    w_conj = w_conj.max(d);
                    ensure(d < 1e-8, || format!("{t}: conjugated defect {d:.2e}"))?;
                }
                let d = invariance_defect(&averaged_metric(&grp), &grp, DEFAULT_SAMPLES);
                w_avg = w_avg.max(d);
                ensure(d < 1e-9, || format!("{t}: averaged defect {d:.2e}"))?;
                let d = invariance_defect(&hermitian_metric(&grp), &grp, DEFAULT_SAMPLES);
                w_herm = w_herm.max(d);
                ensure(d < 1e-9, || format!("{t}: hermitian defect {d:.2e}"))?;
            }
        }
        Ok(format!(
            "max defects: conjugated {w_conj:.2e}, averaged {w_avg:.2e}, hermitian {w_herm:.2e}"
        ))
    })
}

pub fn check_well_definedness(opts: &VerifyOptions) -> Check {
    timed(6, "well-definedness", || {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(6));
        let mut worst: f64 = 0.0;
        for t in [GroupType::A4, GroupType::S4, GroupType::Dihedral(3)] {
            let g = group_or_err(t, opts)?;
            let d = conjugator_well_defined(&g, 3, &mut rng).map_err(|e| format!("{t}: {e}"))?;
            worst = worst.max(d);
            ensure(d < 1e-6, || format!("{t}: spread {d:.2e}"))?;
        }
        let c5 = group_or_err(GroupType::Cyclic(5), opts)?;
        match conjugator_well_defined(&c5, 3, &mut rng) {
            Err(GroupError::CyclicGroupUnsupported(_)) => {}
            other => {
                return Err(format!(
                    "C5: expected CyclicGroupUnsupported, got {other:?}"
                ))
            }
        }
        Ok(format!("max spread {worst:.2e}; C5 rejected"))
    })
}

pub fn check_so3_coincidence(opts: &VerifyOptions) -> Check {
    timed(7, "SO(3) coincidence", || {
        let round = round_metric();
        let mut worst: f64 = 0.0;
        let mut types = vec![
            GroupType::Cyclic(2),
            GroupType::Cyclic(3),
            GroupType::Cyclic(5),
        ];
        types.extend(NON_CYCLIC);
        let mut tested = 0;
        for t in types {
            let g = group_or_err(t, opts)?;
            ensure(g.is_in_so3(1e-8), || format!("{t}: not in SO(3)"))?;
            tested += 1;
            let mut metrics = vec![
                ("averaged", averaged_metric(&g)),
                ("hermitian", hermitian_metric(&g)),
            ];
            if !t.is_cyclic() {
                metrics.push((
                    "conjugated",
                    conjugated_metric(&g).map_err(|e| e.to_string())?,
                ));
            }
            for (name, m) in metrics {
                let d = metric_distance(&m, &round, DEFAULT_SAMPLES);
                worst = worst.max(d);
                ensure(d < 1e-9, || format!("{t} {name}: distance {d:.2e}"))?;
            }
        }
        Ok(format!(
            "{tested} groups, max distance to round {worst:.2e}"
        ))
    })
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Permutations commuting with both of the dessin's permutations, by
/// exhaustive search.
pub fn brute_force_automorphisms(d: &Dessin) -> Vec<Perm> {
    let (w, b) = (d.sigma_white(), d.sigma_black());
    all_perms(d.dart_count())
        .into_iter()
        .filter_map(Perm::from_images)
        .filter(|p| p.compose(w) == w.compose(p) && p.compose(b) == b.compose(p))
        .collect()
}

/// `count` random transitive dessins with between 1 and `max_darts` darts.
pub fn random_dessins(rng: &mut ChaCha8Rng, count: usize, max_darts: usize) -> Vec<Dessin> {
    use rand::Rng;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(1..=max_darts);
        let mut w: Vec<usize> = (0..n).collect();
        let mut b: Vec<usize> = (0..n).collect();
        w.shuffle(rng);
        b.shuffle(rng);
        let (w, b) = (Perm::from_images(w).unwrap(), Perm::from_images(b).unwrap());
        if let Ok(d) = Dessin::new(w, b) {
            out.push(d);
        }
    }
    out
}

fn riemann_hurwitz_holds(d: &Dessin) -> bool {
    let p = d.passport();
    let ramification: usize = [&p.white_degrees, &p.black_degrees, &p.face_half_degrees]
        .iter()
        .flat_map(|v| v.iter())
        .map(|e| e - 1)
        .sum();
    2 - 2 * d.genus() as i64 == 2 * p.degree as i64 - ramification as i64
}

pub fn check_dessin_topology(opts: &VerifyOptions) -> Check {
    timed(8, "dessin topology", || {
        // (dessin, genus, degree, white, black, faces, triangles, butterflies)
        type Row = (
            Dessin,
            usize,
            usize,
            Vec<usize>,
            Vec<usize>,
            Vec<usize>,
            usize,
            usize,
        );
        let mk = |n, w: &[Vec<usize>], b: &[Vec<usize>]| {
            Dessin::from_cycles(n, w, b).map_err(|e| e.to_string())
        };
        let refs: Vec<Row> = vec![
            (
                mk(2, &[vec![1, 2]], &[vec![1, 2]])?,
                0,
                2,
                vec![2],
                vec![2],
                vec![1, 1],
                4,
                2,
            ),
            (mk(1, &[], &[])?, 0, 1, vec![1], vec![1], vec![1], 2, 1),
            (
                mk(4, &[vec![1, 2, 3, 4]], &[vec![1, 2, 3, 4]])?,
                1,
                4,
                vec![4],
                vec![4],
                vec![2, 2],
                8,
                4,
            ),
        ];
        for (i, (d, g, deg, w, b, f, tri, bf)) in refs.iter().enumerate() {
            let p = d.passport();
            let t = d.triangulate();
            let got = (
                d.genus(),
                p.degree,
                &p.white_degrees,
                &p.black_degrees,
                &p.face_half_degrees,
            );
            ensure(got == (*g, *deg, w, b, f), || {
                format!("reference {i}: {got:?}")
            })?;
            ensure(
                t.triangle_count() == *tri && t.butterfly_count() == *bf,
                || format!("reference {i}: {} triangles", t.triangle_count()),
            )?;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(8));
        let corpus = random_dessins(&mut rng, 20, 10);
        for d in &corpus {
            ensure(riemann_hurwitz_holds(d), || {
                "Riemann-Hurwitz fails".to_string()
            })?;
        }
        let small = random_dessins(&mut rng, 20, 7);
        for d in refs.iter().map(|r| &r.0).chain(&small) {
            let mut fast: Vec<Vec<usize>> = d
                .automorphisms()
                .elements()
                .iter()
                .map(|p| p.images().to_vec())
                .collect();
            let mut slow: Vec<Vec<usize>> = brute_force_automorphisms(d)
                .iter()
                .map(|p| p.images().to_vec())
                .collect();
            fast.sort();
            slow.sort();
            ensure(fast == slow, || {
                format!(
                    "automorphisms differ on {} darts: {} vs {}",
                    d.dart_count(),
                    fast.len(),
                    slow.len()
                )
            })?;
        }
        Ok(format!(
            "3 references; Riemann-Hurwitz on {} random dessins; automorphisms on {}",
            corpus.len(),
            small.len() + refs.len()
        ))
    })
}

/// Interior sample of the half-plane, spread in modulus and argument.
pub fn half_plane_samples(n: usize) -> Vec<C64> {
    (0..n)
        .map(|k| {
            let r = 10f64.powf(-1.3 + 2.6 * (k as f64 + 0.5) / n as f64);
            let theta = 0.05 + (PI - 0.1) * ((k * 7 % n) as f64 + 0.5) / n as f64;
            C64::from_polar(r, theta)
        })
        .collect()
}

/// Interior sample of the image triangle by barycentric weights bounded
/// below by 0.02.
pub fn triangle_samples(n: usize) -> Vec<C64> {
    let [a, b, c] = TriangleMap::standard().vertices();
    (0..n)
        .map(|k| {
            let s = 0.02 + 0.96 * ((k as f64 + 0.5) / n as f64);
            let t = 0.02 + 0.96 * (((k * 17) % n) as f64 + 0.5) / n as f64;
            // fold the unit square onto the simplex, keeping weights ≥ 0.02
            let (l1, l2) = if s + t > 0.98 {
                (1.0 - s, 1.0 - t)
            } else {
                (s, t)
            };
            let (l1, l2) = (l1.max(0.02), l2.max(0.02));
            let l0 = (1.0 - l1 - l2).max(0.02);
            let sum = l0 + l1 + l2;
            (a * l0 + b * l1 + c * l2) / sum
        })
        .collect()
}

pub fn check_schwarz_christoffel(_opts: &VerifyOptions) -> Check {
    timed(9, "Schwarz-Christoffel", || {
        let map = TriangleMap::standard();
        let belyi = |p: C64| butterfly_belyi(p).map_err(|e| e.to_string());
        let angles = map.measured_vertex_angles();
        for (g, e) in angles.iter().zip(EXPECTED_ANGLES) {
            ensure((g - e).abs() < 1e-6, || format!("vertex angles {angles:?}"))?;
        }
        let mut worst_rt: f64 = 0.0;
        for z in half_plane_samples(50) {
            let w = map.forward(z).map_err(|e| e.to_string())?;
            let back = map.inverse(w).map_err(|e| e.to_string())?;
            worst_rt = worst_rt.max((back - z).norm() / z.norm().max(1.0));
        }
        for w in triangle_samples(50) {
            let z = map.inverse(w).map_err(|e| e.to_string())?;
            worst_rt = worst_rt.max((map.forward(z).map_err(|e| e.to_string())? - w).norm());
        }
        ensure(worst_rt < 1e-9, || {
            format!("round trip error {worst_rt:.2e}")
        })?;
        // continuity: off-edge images against the image of the edge point,
        // and the two half-maps agree on the edge itself
        let mut worst_gap: f64 = 0.0;
        let mut worst_seam: f64 = 0.0;
        for k in 0..20 {
            let x = 0.025 + 0.95 * k as f64 / 19.0;
            let on = belyi(C64::new(x, 0.0))?;
            if let SpherePoint::Finite(v) = on {
                worst_seam = worst_seam.max(v.im.abs());
            }
            for off in [-1e-4, 1e-4] {
                worst_gap = worst_gap.max(belyi(C64::new(x, off))?.chordal_distance(&on));
            }
        }
        ensure(worst_seam < 1e-8, || {
            format!("half-maps disagree on the edge by {worst_seam:.2e}")
        })?;
        ensure(worst_gap < 1e-3, || format!("gluing gap {worst_gap:.2e}"))?;
        let b = butterfly();
        let corners = [
            (b.white, SpherePoint::finite(0.0, 0.0)),
            (b.black_plus, SpherePoint::finite(1.0, 0.0)),
            (b.black_minus, SpherePoint::finite(1.0, 0.0)),
            (b.center, SpherePoint::Infinity),
        ];
        for (p, want) in corners {
            let got = belyi(p)?;
            ensure(got == want, || format!("corner {p} maps to {got}"))?;
        }
        Ok(format!(
            "angle error {:.1e}; round trip {worst_rt:.1e}; gluing gap {worst_gap:.1e}, seam {worst_seam:.1e}",
            angles
                .iter()
                .zip(EXPECTED_ANGLES)
                .map(|(g, e)| (g - e).abs())
                .fold(0.0, f64::max)
        ))
    })
}

/// The checks in `scope`, in criterion order.
pub fn run(scope: Scope, opts: &VerifyOptions) -> Vec<Check> {
    type CheckFn = fn(&VerifyOptions) -> Check;
    let suites: [(Scope, CheckFn); 9] = [
        (Scope::Groups, check_group_orders),
        (Scope::Groups, check_orbit_signatures),
        (Scope::Groups, check_unitarization),
        (Scope::Metrics, check_curvature),
        (Scope::Metrics, check_invariance),
        (Scope::Metrics, check_well_definedness),
        (Scope::Metrics, check_so3_coincidence),
        (Scope::Dessins, check_dessin_topology),
        (Scope::Sc, check_schwarz_christoffel),
    ];
    suites
        .iter()
        .filter(|(s, _)| scope == Scope::All || *s == scope)
        .map(|(_, f)| f(opts))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_matches_known_groups() {
        let star = Dessin::from_cycles(5, &[vec![1, 2, 3, 4, 5]], &[]).unwrap();
        assert_eq!(brute_force_automorphisms(&star).len(), 5);
        assert_eq!(all_perms(4).len(), 24);
    }

    #[test]
    fn perturbation_breaks_group_checks() {
        let opts = VerifyOptions {
            perturb: true,
            ..VerifyOptions::default()
        };
        assert!(!check_group_orders(&opts).passed);
    }

    #[test]
    fn samples_stay_inside() {
        let map = TriangleMap::standard();
        assert!(triangle_samples(50).iter().all(|&w| map.contains(w, 0.0)));
        assert!(half_plane_samples(50).iter().all(|z| z.im > 0.0));
    }
}
