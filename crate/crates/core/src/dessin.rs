//! Combinatorial dessins d'enfants.
//!
//! A dessin with `N` edges is stored as two permutations of the darts
//! `0..N` (one dart per edge): `sigma_white` rotates counterclockwise around
//! white vertices and `sigma_black` around black vertices. Faces are the
//! cycles of `phi = sigma_white ∘ sigma_black` (`sigma_black` applied
//! first). The file format and all user-facing output use 1-based darts.

use std::collections::VecDeque;

use serde::Deserialize;

use crate::group_type::{CayleyTable, GroupType};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DessinError {
    #[error("MalformedInput: {0}")]
    MalformedInput(String),
    #[error("NotAPermutation: {0}")]
    NotAPermutation(String),
    #[error("Disconnected: the two permutations do not act transitively on the darts")]
    Disconnected,
}

/// A permutation of `0..n`, stored as its image table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n).collect())
    }

    /// Checks that `images` is a bijection of `0..images.len()`.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        Some(Perm(images))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: applies `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// Cycles in order of their smallest element, fixed points included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                c.push(x);
                x = self.0[x];
            }
            out.push(c);
        }
        out
    }

    /// For each point, the index of its cycle in [`Perm::cycles`].
    pub fn cycle_index(&self) -> Vec<usize> {
        let mut idx = vec![0; self.0.len()];
        for (k, c) in self.cycles().iter().enumerate() {
            for &x in c {
                idx[x] = k;
            }
        }
        idx
    }

    /// 1-based cycle notation with fixed points omitted; `()` for the identity.
    pub fn cycle_notation(&self) -> String {
        let s: String = self
            .cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| {
                let inner: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
                format!("({})", inner.join(" "))
            })
            .collect();
        if s.is_empty() {
            "()".to_string()
        } else {
            s
        }
    }
}

/// Multisets of ramification indices over 0, 1 and ∞, sorted decreasingly.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Passport {
    pub white_degrees: Vec<usize>,
    pub black_degrees: Vec<usize>,
    pub face_half_degrees: Vec<usize>,
    pub degree: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

/// One triangle of the white/black/center triangulation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct Triangle {
    pub white: usize,
    pub black: usize,
    pub face: usize,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct TriangulatedMap {
    pub triangles: Vec<Triangle>,
    /// `(plus triangle, minus triangle)` glued along a white-center edge.
    pub butterfly_pairs: Vec<(usize, usize)>,
}

impl TriangulatedMap {
    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn butterfly_count(&self) -> usize {
        self.butterfly_pairs.len()
    }
}

/// A group of permutations of darts, listed explicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    elements: Vec<Perm>,
}

impl PermGroup {
    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn cayley_table(&self) -> CayleyTable {
        CayleyTable::build(&self.elements, |a, b| a.compose(b), |a, b| a == b)
            .expect("automorphism list is a group")
    }
}

pub fn classify_perm_group(g: &PermGroup) -> GroupType {
    g.cayley_table().classify()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dessin {
    sigma_white: Perm,
    sigma_black: Perm,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DessinFile {
    darts: usize,
    sigma_white: Vec<Vec<usize>>,
    sigma_black: Vec<Vec<usize>>,
}

fn perm_from_cycles(n: usize, cycles: &[Vec<usize>], name: &str) -> Result<Perm, DessinError> {
    let mut images: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    for c in cycles {
        for &x in c {
            if x == 0 || x > n {
                return Err(DessinError::NotAPermutation(format!(
                    "{name}: dart {x} outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut used[x - 1], true) {
                return Err(DessinError::NotAPermutation(format!(
                    "{name}: dart {x} appears more than once"
                )));
            }
        }
        for w in 0..c.len() {
            images[c[w] - 1] = Some(c[(w + 1) % c.len()] - 1);
        }
    }
    let images = images
        .into_iter()
        .enumerate()
        .map(|(i, im)| im.unwrap_or(i))
        .collect();
    Perm::from_images(images)
        .ok_or_else(|| DessinError::NotAPermutation(format!("{name} is not a bijection")))
}

impl Dessin {
    /// Validates a pair of permutations of the same size.
    pub fn new(sigma_white: Perm, sigma_black: Perm) -> Result<Self, DessinError> {
        if sigma_white.is_empty() {
            return Err(DessinError::MalformedInput(
                "a dessin needs at least one dart".into(),
            ));
        }
        if sigma_white.len() != sigma_black.len() {
            return Err(DessinError::NotAPermutation(format!(
                "permutations act on {} and {} darts",
                sigma_white.len(),
                sigma_black.len()
            )));
        }
        let d = Dessin {
            sigma_white,
            sigma_black,
        };
        if !d.is_transitive() {
            return Err(DessinError::Disconnected);
        }
        Ok(d)
    }

    /// Builds a dessin from 1-based cycle lists.
    pub fn from_cycles(
        darts: usize,
        sigma_white: &[Vec<usize>],
        sigma_black: &[Vec<usize>],
    ) -> Result<Self, DessinError> {
        if darts == 0 {
            return Err(DessinError::MalformedInput("darts must be positive".into()));
        }
        let w = perm_from_cycles(darts, sigma_white, "sigma_white")?;
        let b = perm_from_cycles(darts, sigma_black, "sigma_black")?;
        Dessin::new(w, b)
    }

    /// Parses the JSON dessin format
    /// `{"darts": N, "sigma_white": [[..],..], "sigma_black": [[..],..]}`.
    pub fn parse(text: &str) -> Result<Self, DessinError> {
        let f: DessinFile =
            serde_json::from_str(text).map_err(|e| DessinError::MalformedInput(e.to_string()))?;
        Dessin::from_cycles(f.darts, &f.sigma_white, &f.sigma_black)
    }

    pub fn dart_count(&self) -> usize {
        self.sigma_white.len()
    }

    pub fn sigma_white(&self) -> &Perm {
        &self.sigma_white
    }

    pub fn sigma_black(&self) -> &Perm {
        &self.sigma_black
    }

    /// Face permutation `sigma_white ∘ sigma_black`.
    pub fn phi(&self) -> Perm {
        self.sigma_white.compose(&self.sigma_black)
    }

    fn is_transitive(&self) -> bool {
        let n = self.dart_count();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for y in [self.sigma_white.apply(x), self.sigma_black.apply(x)] {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        count == n
    }

    /// `V - E + F` with `V` the vertex count of both colors.
    pub fn euler_characteristic(&self) -> i64 {
        let v = self.sigma_white.cycles().len() + self.sigma_black.cycles().len();
        let f = self.phi().cycles().len();
        v as i64 + f as i64 - self.dart_count() as i64
    }

    pub fn genus(&self) -> usize {
        let chi = self.euler_characteristic();
        debug_assert!(chi <= 2 && chi % 2 == 0);
        ((2 - chi) / 2) as usize
    }

    pub fn passport(&self) -> Passport {
        let lens = |p: &Perm| {
            let mut v: Vec<usize> = p.cycles().iter().map(Vec::len).collect();
            v.sort_unstable_by(|a, b| b.cmp(a));
            v
        };
        Passport {
            white_degrees: lens(&self.sigma_white),
            black_degrees: lens(&self.sigma_black),
            face_half_degrees: lens(&self.phi()),
            degree: self.dart_count(),
        }
    }

    /// Triangulation by face centers.
    ///
    /// Dart `d` bounds two triangles: the plus triangle lies in the face of
    /// `d` (corners `(σw⁻¹d, d)` at white and `(d, σb d)` at black), the minus
    /// triangle in the face of `σw d`. The plus triangle of `d` shares its
    /// white-center edge with the minus triangle of `σw⁻¹ d`.
    /// Triangle `2d` is plus and `2d + 1` is minus.
    pub fn triangulate(&self) -> TriangulatedMap {
        let white = self.sigma_white.cycle_index();
        let black = self.sigma_black.cycle_index();
        let face = self.phi().cycle_index();
        let w_inv = self.sigma_white.inverse();
        let n = self.dart_count();
        let mut triangles = Vec::with_capacity(2 * n);
        for d in 0..n {
            triangles.push(Triangle {
                white: white[d],
                black: black[d],
                face: face[d],
                sign: Sign::Plus,
            });
            triangles.push(Triangle {
                white: white[d],
                black: black[d],
                face: face[self.sigma_white.apply(d)],
                sign: Sign::Minus,
            });
        }
        let butterfly_pairs = (0..n).map(|d| (2 * d, 2 * w_inv.apply(d) + 1)).collect();
        TriangulatedMap {
            triangles,
            butterfly_pairs,
        }
    }

    /// The centralizer of `<σw, σb>` in the symmetric group on darts.
    ///
    /// The action is transitive, so an automorphism is fixed by the image of
    /// dart 0; each candidate image is propagated along both permutations and
    /// kept if it yields a consistent bijection.
    pub fn automorphisms(&self) -> PermGroup {
        let n = self.dart_count();
        let gens = [&self.sigma_white, &self.sigma_black];
        let mut elements = Vec::new();
        'target: for t in 0..n {
            let mut map: Vec<Option<usize>> = vec![None; n];
            map[0] = Some(t);
            let mut queue = VecDeque::from([0]);
            while let Some(x) = queue.pop_front() {
                let fx = map[x].expect("queued darts are mapped");
                for g in gens {
                    let (y, fy) = (g.apply(x), g.apply(fx));
                    match map[y] {
                        Some(v) if v != fy => continue 'target,
                        Some(_) => {}
                        None => {
                            map[y] = Some(fy);
                            queue.push_back(y);
                        }
                    }
                }
            }
            let images: Vec<usize> = map.into_iter().map(|m| m.expect("transitive")).collect();
            if let Some(p) = Perm::from_images(images) {
                elements.push(p);
            }
        }
        elements.sort();
        PermGroup { elements }
    }
}
