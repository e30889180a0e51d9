//! Finite Möbius groups as explicit element lists.

use std::cmp::Ordering;

use num_complex::Complex64 as C64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::group_type::{CayleyTable, GroupType};
use crate::metrics::{self, metric_distance};
use crate::moebius::{
    self, stereographic_inverse, FixedPoints, MoebiusError, MoebiusTransform, SpherePoint,
    PROJECTIVE_TOL,
};

/// Default bound on the number of elements produced by [`closure`].
pub const DEFAULT_CLOSURE_CAP: usize = 200;

/// Chordal distance under which two fixed points are the same point.
pub const FIXED_POINT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GroupError {
    #[error("InfiniteGroup: closure exceeded {0} elements")]
    InfiniteGroup(usize),
    #[error("NumericalAmbiguity: two elements at projective distance {0:e}")]
    NumericalAmbiguity(f64),
    #[error("TrivialGroup: the one-element group has no fixed-point orbits")]
    TrivialGroup,
    #[error("CyclicGroupUnsupported: {0} is cyclic; its normalizer is not finite")]
    CyclicGroupUnsupported(GroupType),
    #[error("OrbitMismatch: {0}")]
    OrbitMismatch(String),
    #[error(transparent)]
    Moebius(#[from] MoebiusError),
}

/// A finite group of Möbius transformations; `elements[0]` is the identity.
#[derive(Debug, Clone, Serialize)]
pub struct FiniteMoebiusGroup {
    #[serde(rename = "type")]
    type_tag: GroupType,
    elements: Vec<MoebiusTransform>,
}

/// Wire form: `{"type": "S4", "elements": [[[re,im],..],..]}`.
#[derive(Deserialize)]
struct GroupFile {
    elements: Vec<MoebiusTransform>,
}

impl<'de> Deserialize<'de> for FiniteMoebiusGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let f = GroupFile::deserialize(d)?;
        closure(&f.elements, DEFAULT_CLOSURE_CAP).map_err(serde::de::Error::custom)
    }
}

/// Breadth-first closure of `generators` under composition.
pub fn closure(
    generators: &[MoebiusTransform],
    cap: usize,
) -> Result<FiniteMoebiusGroup, GroupError> {
    let mut elements = vec![MoebiusTransform::identity()];
    let mut i = 0;
    while i < elements.len() {
        for g in generators {
            let p = g.compose(&elements[i]);
            let nearest = elements
                .iter()
                .map(|e| e.projective_distance(&p))
                .fold(f64::INFINITY, f64::min);
            if nearest < PROJECTIVE_TOL {
                continue;
            }
            if nearest < 10.0 * PROJECTIVE_TOL {
                return Err(GroupError::NumericalAmbiguity(nearest));
            }
            elements.push(p);
            if elements.len() > cap {
                return Err(GroupError::InfiniteGroup(cap));
            }
        }
        i += 1;
    }
    let table = CayleyTable::build(&elements, |a, b| a.compose(b), |a, b| a.projectively_eq(b))
        .ok_or(GroupError::NumericalAmbiguity(PROJECTIVE_TOL))?;
    Ok(FiniteMoebiusGroup {
        type_tag: table.classify(),
        elements,
    })
}

/// The closure of the standard generators of `t`.
pub fn standard_group(t: GroupType) -> Result<FiniteMoebiusGroup, GroupError> {
    closure(&moebius::standard_generators(t)?, DEFAULT_CLOSURE_CAP)
}

/// A map `φ` with `φ G φ⁻¹` inside the unitary lifts of SO(3).
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Conjugator {
    pub phi: MoebiusTransform,
}

#[derive(Debug, Clone, Serialize)]
pub struct Orbit {
    pub points: Vec<SpherePoint>,
    pub stabilizer_order: usize,
}

/// The fixed-point set of nonidentity elements, split into orbits, largest
/// orbit first.
#[derive(Debug, Clone, Serialize)]
pub struct OrbitData {
    pub orbits: Vec<Orbit>,
    pub group_order: usize,
}

impl OrbitData {
    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.points.len()).collect()
    }

    /// `|orbit| · |stabilizer| = |G|` for every orbit.
    pub fn class_formula_holds(&self) -> bool {
        self.orbits
            .iter()
            .all(|o| o.points.len() * o.stabilizer_order == self.group_order)
    }

    /// `Σ 1/εᵢ = k − 2 + 2/|G|`, checked in integers after scaling by `|G|`.
    pub fn burnside_holds(&self) -> bool {
        let n = self.group_order as i64;
        let k = self.orbits.len() as i64;
        let lhs: i64 = self.orbits.iter().map(|o| (o.points.len()) as i64).sum();
        lhs == (k - 2) * n + 2
    }
}

impl FiniteMoebiusGroup {
    pub fn elements(&self) -> &[MoebiusTransform] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn type_tag(&self) -> GroupType {
        self.type_tag
    }

    pub fn cayley_table(&self) -> CayleyTable {
        CayleyTable::build(
            &self.elements,
            |a, b| a.compose(b),
            |a, b| a.projectively_eq(b),
        )
        .expect("closure produced a group")
    }

    /// `{ m h m⁻¹ : h ∈ G }`, in the same element order.
    pub fn conjugate_by(&self, m: &MoebiusTransform) -> FiniteMoebiusGroup {
        FiniteMoebiusGroup {
            type_tag: self.type_tag,
            elements: self.elements.iter().map(|h| h.conjugate_by(m)).collect(),
        }
    }

    pub fn contains(&self, m: &MoebiusTransform) -> bool {
        self.elements.iter().any(|e| e.projectively_eq(m))
    }

    /// Largest unitarity defect over the elements.
    pub fn max_unitarity_defect(&self) -> f64 {
        self.elements
            .iter()
            .map(MoebiusTransform::unitarity_defect)
            .fold(0.0, f64::max)
    }

    /// Every normalized lift is unitary to within `tol` (the group lies in
    /// the copy of SO(3) inside PSL(2,C)).
    pub fn is_in_so3(&self, tol: f64) -> bool {
        self.max_unitarity_defect() < tol
    }

    /// `H = (1/|G|) Σ AᴴA` over normalized lifts. Entries `[h11, h12, h21, h22]`.
    pub fn averaged_hermitian_form(&self) -> [C64; 4] {
        let mut h = [C64::new(0.0, 0.0); 4];
        for m in &self.elements {
            let [a, b, c, d] = m.entries();
            h[0] += a.conj() * a + c.conj() * c;
            h[1] += a.conj() * b + c.conj() * d;
            h[2] += b.conj() * a + d.conj() * c;
            h[3] += b.conj() * b + d.conj() * d;
        }
        let n = self.order() as f64;
        h.map(|x| x / n)
    }

    /// Conjugator into SO(3) from the averaged Hermitian form.
    ///
    /// `H` is invariant (`AᴴHA = H`) and positive definite. With the
    /// Cholesky factor `H = LLᴴ` and `P = Lᴴ`, every `PAP⁻¹` is unitary.
    pub fn unitarize(&self) -> Conjugator {
        let [h11, h12, _h21, h22] = self.averaged_hermitian_form();
        let l11 = h11.re.sqrt();
        let l21 = h12.conj() / l11;
        let l22 = (h22.re - l21.norm_sqr()).sqrt();
        let phi = MoebiusTransform::new(
            C64::new(l11, 0.0),
            l21.conj(),
            C64::new(0.0, 0.0),
            C64::new(l22, 0.0),
        )
        .expect("averaged form is positive definite");
        Conjugator { phi }
    }

    /// Fixed points of nonidentity elements grouped into orbits.
    pub fn orbit_analysis(&self) -> Result<OrbitData, GroupError> {
        if self.order() == 1 {
            return Err(GroupError::TrivialGroup);
        }
        let mut points: Vec<SpherePoint> = Vec::new();
        let same = |p: &SpherePoint, q: &SpherePoint| p.chordal_distance(q) < FIXED_POINT_TOL;
        for h in &self.elements {
            if let FixedPoints::Points(fp) = h.fixed_points() {
                for p in fp {
                    if !points.iter().any(|q| same(q, &p)) {
                        points.push(p);
                    }
                }
            }
        }
        let mut assigned = vec![false; points.len()];
        let mut orbits = Vec::new();
        for i in 0..points.len() {
            if assigned[i] {
                continue;
            }
            let mut orbit = Vec::new();
            for h in &self.elements {
                let img = h.apply(&points[i]);
                let j = points.iter().position(|q| same(q, &img)).ok_or_else(|| {
                    GroupError::OrbitMismatch(format!("image {img} of a fixed point is not fixed"))
                })?;
                if !assigned[j] {
                    assigned[j] = true;
                    orbit.push(points[j]);
                }
            }
            let stabilizer_order = self
                .elements
                .iter()
                .filter(|h| same(&h.apply(&points[i]), &points[i]))
                .count();
            orbit.sort_by(sphere_point_order);
            orbits.push(Orbit {
                points: orbit,
                stabilizer_order,
            });
        }
        orbits.sort_by(|a, b| {
            b.points
                .len()
                .cmp(&a.points.len())
                .then_with(|| sphere_point_order(&a.points[0], &b.points[0]))
        });
        let data = OrbitData {
            orbits,
            group_order: self.order(),
        };
        if !data.class_formula_holds() {
            return Err(GroupError::OrbitMismatch(format!(
                "class formula fails for orbit sizes {:?}",
                data.sizes()
            )));
        }
        Ok(data)
    }
}

/// Deterministic order on sphere points: by height on the sphere, then angle.
pub(crate) fn sphere_point_order(p: &SpherePoint, q: &SpherePoint) -> Ordering {
    let (ep, eq) = (stereographic_inverse(p), stereographic_inverse(q));
    let key = |e: &crate::moebius::EuclideanSpherePoint| {
        // quantize so that rounding noise does not reorder coincident heights
        let t = (e.t * 1e9).round();
        let ang = if e.z.norm() < 1e-9 {
            0.0
        } else {
            (e.z.arg() * 1e9).round()
        };
        (t, ang)
    };
    let (kp, kq) = (key(&ep), key(&eq));
    kp.0.total_cmp(&kq.0).then(kp.1.total_cmp(&kq.1))
}

/// Random Möbius map with entries uniform in the unit disc and condition
/// number at most `max_condition`.
pub fn random_moebius<R: Rng + ?Sized>(rng: &mut R, max_condition: f64) -> MoebiusTransform {
    loop {
        let mut entry = || loop {
            let (x, y): (f64, f64) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            if x * x + y * y <= 1.0 {
                break C64::new(x, y);
            }
        };
        let (a, b, c, d) = (entry(), entry(), entry(), entry());
        if condition_number([a, b, c, d]) > max_condition {
            continue;
        }
        if let Ok(m) = MoebiusTransform::new(a, b, c, d) {
            return m;
        }
    }
}

/// Ratio of singular values of a 2×2 complex matrix.
pub fn condition_number(m: [C64; 4]) -> f64 {
    let [a, b, c, d] = m;
    let fro2 = a.norm_sqr() + b.norm_sqr() + c.norm_sqr() + d.norm_sqr();
    let det = (a * d - b * c).norm();
    if det == 0.0 {
        return f64::INFINITY;
    }
    // σ1² + σ2² = ‖M‖²_F and σ1 σ2 = |det|
    let disc = (fro2 * fro2 - 4.0 * det * det).max(0.0).sqrt();
    let s1 = ((fro2 + disc) / 2.0).sqrt();
    let s2 = det / s1;
    s1 / s2
}

/// Largest condition number accepted for random pre-conjugators.
pub const MAX_CONJUGATOR_CONDITION: f64 = 100.0;

/// Spread of the conjugated metric over random choices of conjugator.
///
/// Each trial conjugates `g` by a random `m`, unitarizes `m g m⁻¹` by `φ′`
/// and transports `φ′*round` back with `m`, giving the metric
/// `(φ′ ∘ m)*round`. Returns the largest pairwise [`metric_distance`].
pub fn conjugator_well_defined<R: Rng + ?Sized>(
    g: &FiniteMoebiusGroup,
    trials: usize,
    rng: &mut R,
) -> Result<f64, GroupError> {
    if g.type_tag().is_cyclic() {
        return Err(GroupError::CyclicGroupUnsupported(g.type_tag()));
    }
    let metrics: Vec<_> = (0..trials.max(2))
        .map(|_| {
            let m = random_moebius(rng, MAX_CONJUGATOR_CONDITION);
            let phi = g.conjugate_by(&m).unitarize().phi.compose(&m);
            metrics::metric_from_conjugator(&phi, g.type_tag())
        })
        .collect();
    let mut worst: f64 = 0.0;
    for (i, a) in metrics.iter().enumerate() {
        for b in &metrics[i + 1..] {
            worst = worst.max(metric_distance(a, b, metrics::DEFAULT_SAMPLES));
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn closure_examples() {
        let s4 = standard_group(GroupType::S4).unwrap();
        assert_eq!((s4.order(), s4.type_tag()), (24, GroupType::S4));
        let lox = MoebiusTransform::scaling(c(2.0, 0.0));
        assert_eq!(
            closure(&[lox], 200).unwrap_err(),
            GroupError::InfiniteGroup(200)
        );
        let triv = closure(&[MoebiusTransform::identity()], 200).unwrap();
        assert_eq!((triv.order(), triv.type_tag()), (1, GroupType::Cyclic(1)));
    }

    #[test]
    fn closure_flags_near_coincident_elements() {
        // rotation by a hair less than 2π/5: its fifth power is 2.5e-9 away
        // from the identity, inside the ambiguity band [1e-9, 1e-8)
        let angle = 2.0 * std::f64::consts::PI / 5.0 - 1e-9;
        let m = MoebiusTransform::scaling(C64::from_polar(1.0, angle));
        assert!(matches!(
            closure(&[m], 200),
            Err(GroupError::NumericalAmbiguity(_))
        ));
    }

    #[test]
    fn types_of_standard_groups() {
        for t in [
            GroupType::Cyclic(2),
            GroupType::Cyclic(3),
            GroupType::Dihedral(2),
            GroupType::Dihedral(3),
            GroupType::Dihedral(6),
            GroupType::A4,
            GroupType::A5,
        ] {
            let g = standard_group(t).unwrap();
            assert_eq!(g.type_tag(), t);
            assert_eq!(g.order(), t.order());
        }
    }

    #[test]
    fn unitarize_identity_for_so3() {
        let g = standard_group(GroupType::S4).unwrap();
        assert!(g.is_in_so3(1e-12));
        let phi = g.unitarize().phi;
        assert!(phi.is_identity());
    }

    #[test]
    fn unitarize_translated_c4() {
        let m = MoebiusTransform::translation(c(3.0, 0.0));
        // m⁻¹ C4 m
        let g = standard_group(GroupType::Cyclic(4))
            .unwrap()
            .conjugate_by(&m.inverse());
        assert!(!g.is_in_so3(1e-8));
        let phi = g.unitarize().phi;
        let k = g.conjugate_by(&phi);
        assert!(
            k.max_unitarity_defect() < 1e-10,
            "{}",
            k.max_unitarity_defect()
        );
    }

    #[test]
    fn unitarize_scaled_s4() {
        let m = MoebiusTransform::scaling(c(2.0, 0.0));
        let gens: Vec<_> = moebius::standard_generators(GroupType::S4)
            .unwrap()
            .iter()
            .map(|g| g.conjugate_by(&m.inverse()))
            .collect();
        let g = closure(&gens, 200).unwrap();
        assert_eq!(g.order(), 24);
        let k = g.conjugate_by(&g.unitarize().phi);
        assert!(k.is_in_so3(1e-8));
        assert_eq!(k.cayley_table().census(), g.cayley_table().census());
    }

    #[test]
    fn so3_membership_examples() {
        let triv = closure(&[], 10).unwrap();
        assert!(triv.is_in_so3(1e-12));
        let c4 = standard_group(GroupType::Cyclic(4)).unwrap();
        let off = c4.conjugate_by(&MoebiusTransform::translation(c(3.0, 0.0)));
        assert!(!off.is_in_so3(1e-8));
    }

    #[test]
    fn orbit_examples() {
        let sizes = |t| standard_group(t).unwrap().orbit_analysis().unwrap().sizes();
        assert_eq!(sizes(GroupType::S4), vec![12, 8, 6]);
        assert_eq!(sizes(GroupType::Dihedral(6)), vec![6, 6, 2]);
        assert_eq!(sizes(GroupType::A4), vec![6, 4, 4]);
        assert_eq!(sizes(GroupType::A5), vec![30, 20, 12]);
        assert_eq!(sizes(GroupType::Cyclic(5)), vec![1, 1]);
        assert_eq!(sizes(GroupType::Dihedral(2)), vec![2, 2, 2]);
        let triv = closure(&[], 10).unwrap();
        assert_eq!(triv.orbit_analysis().unwrap_err(), GroupError::TrivialGroup);
    }

    #[test]
    fn orbit_stabilizers_and_burnside() {
        for t in [
            GroupType::Cyclic(3),
            GroupType::Dihedral(4),
            GroupType::A4,
            GroupType::S4,
            GroupType::A5,
        ] {
            let o = standard_group(t).unwrap().orbit_analysis().unwrap();
            assert!(o.class_formula_holds() && o.burnside_holds(), "{t}");
        }
    }

    #[test]
    fn condition_numbers() {
        assert!(
            (condition_number([c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]) - 1.0).abs()
                < 1e-12
        );
        assert!(
            (condition_number([c(4.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.5, 0.0)]) - 8.0).abs()
                < 1e-12
        );
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let m = random_moebius(&mut rng, 100.0);
            assert!(condition_number(m.entries()) <= 100.0 * (1.0 + 1e-9));
        }
    }

    #[test]
    fn group_serde() {
        let g = standard_group(GroupType::A4).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        assert!(s.starts_with(r#"{"type":"A4","elements":[["#));
        let back: FiniteMoebiusGroup = serde_json::from_str(&s).unwrap();
        assert_eq!((back.order(), back.type_tag()), (12, GroupType::A4));
    }
}
