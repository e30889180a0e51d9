//! Group input: a type tag, a generator file, or a dessin with generators.

use std::fs;
use std::path::Path;

use dessin_core::groups::{closure, standard_group, DEFAULT_CLOSURE_CAP};
use dessin_core::{Dessin, FiniteMoebiusGroup, GroupType, MoebiusTransform};
use serde::Deserialize;

use crate::report::DessinSummary;
use crate::Failure;

/// Where the group came from, for the report.
pub struct GroupInput {
    pub group: FiniteMoebiusGroup,
    pub dessin: Option<DessinSummary>,
    pub warnings: Vec<String>,
}

pub fn read_dessin(path: &Path) -> Result<Dessin, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    Dessin::parse(&text).map_err(|e| Failure::input(e.to_string()))
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GeneratorFile {
    List(Vec<MoebiusTransform>),
    Generators { generators: Vec<MoebiusTransform> },
    Elements { elements: Vec<MoebiusTransform> },
}

/// Reads matrices `[[re, im] × 4]` as a bare list, or under a `generators`
/// or `elements` key, and closes them into a finite group.
pub fn read_generators(path: &Path) -> Result<FiniteMoebiusGroup, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    let file: GeneratorFile = serde_json::from_str(&text).map_err(|e| {
        Failure::input(format!(
            "{}: expected a list of [[re,im],[re,im],[re,im],[re,im]] matrices: {e}",
            path.display()
        ))
    })?;
    let gens = match file {
        GeneratorFile::List(g)
        | GeneratorFile::Generators { generators: g }
        | GeneratorFile::Elements { elements: g } => g,
    };
    if gens.is_empty() {
        return Err(Failure::input("no generators given".into()));
    }
    closure(&gens, DEFAULT_CLOSURE_CAP).map_err(|e| Failure::input(e.to_string()))
}

pub fn resolve(
    group: Option<&str>,
    generators: Option<&Path>,
    dessin: Option<&Path>,
) -> Result<GroupInput, Failure> {
    let mut warnings = Vec::new();
    let summary = match dessin {
        Some(path) => {
            let d = read_dessin(path)?;
            let s = DessinSummary::of(&d);
            if s.genus != 0 {
                return Err(Failure::genus(format!(
                    "the dessin has genus {}; metric constructions need genus 0",
                    s.genus
                )));
            }
            Some(s)
        }
        None => None,
    };
    let group = match (group, generators, &summary) {
        (Some(tag), None, None) => {
            let t: GroupType =
                tag.parse()
                    .map_err(|e: dessin_core::group_type::ParseGroupTypeError| {
                        Failure::input(e.to_string())
                    })?;
            standard_group(t).map_err(|e| Failure::input(e.to_string()))?
        }
        (None, Some(path), _) => read_generators(path)?,
        (None, None, Some(s)) => {
            warnings.push(format!(
                "no generators given; using the standard realization of {}, so the metric is defined up to a Möbius change of coordinates",
                s.group_type
            ));
            standard_group(s.group_type).map_err(|e| Failure::input(e.to_string()))?
        }
        (None, None, None) => {
            return Err(Failure::input(
                "give --group, --generators or --dessin".into(),
            ))
        }
        (Some(_), _, _) => {
            return Err(Failure::input(
                "--group cannot be combined with --generators or --dessin".into(),
            ))
        }
    };
    if let Some(s) = &summary {
        if group.order() != s.automorphism_order || group.type_tag() != s.group_type {
            return Err(Failure::input(format!(
                "the generators give {} of order {}, but the dessin's automorphism group is {} of order {}",
                group.type_tag(),
                group.order(),
                s.group_type,
                s.automorphism_order
            )));
        }
    }
    Ok(GroupInput {
        group,
        dessin: summary,
        warnings,
    })
}
