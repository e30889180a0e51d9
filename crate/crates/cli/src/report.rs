use dessin_core::{Dessin, GroupType, Passport};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct DessinSummary {
    pub darts: usize,
    pub genus: usize,
    pub passport: Passport,
    pub triangles: usize,
    pub butterflies: usize,
    pub automorphism_order: usize,
    pub group_type: GroupType,
}

impl DessinSummary {
    pub fn of(d: &Dessin) -> Self {
        let tri = d.triangulate();
        let aut = d.automorphisms();
        DessinSummary {
            darts: d.dart_count(),
            genus: d.genus(),
            passport: d.passport(),
            triangles: tri.triangle_count(),
            butterflies: tri.butterfly_count(),
            automorphism_order: aut.order(),
            group_type: dessin_core::dessin::classify_perm_group(&aut),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupSummary {
    #[serde(rename = "type")]
    pub type_tag: GroupType,
    pub order: usize,
    pub in_so3: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GridSummary {
    pub n: usize,
    pub points: usize,
    pub step: f64,
    pub format: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct Diagnostics {
    pub invariance_defect: f64,
    pub curvature_min: f64,
    pub curvature_max: f64,
    pub curvature_spread: f64,
    pub distance_to_round: f64,
    pub chart_compatibility: f64,
    /// Spread over random conjugators; only for the conjugated construction.
    pub well_definedness: Option<f64>,
}

/// Everything `dessin metric` measured in one run. Field order is the JSON
/// key order.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub dessin: Option<DessinSummary>,
    pub group: GroupSummary,
    pub construction: &'static str,
    pub seed: u64,
    pub grid: GridSummary,
    pub diagnostics: Diagnostics,
    pub notes: Vec<String>,
    pub warnings: Vec<String>,
}
