//! Recognition of the finite groups acting on the Riemann sphere.
//!
//! Both permutation groups (dessin automorphisms) and Möbius groups are
//! reduced to a [`CayleyTable`] and classified by the same decision table:
//! order, element-order census, and the structure of the complement of a
//! cyclic subgroup of index two.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Isomorphism type of a finite group, as far as the sphere cares.
///
/// `Dihedral(n)` has `2n` elements. A group of order two is always reported
/// as `Cyclic(2)`, never `Dihedral(1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupType {
    Cyclic(usize),
    Dihedral(usize),
    A4,
    S4,
    A5,
    Other { order: usize },
}

impl GroupType {
    pub fn order(&self) -> usize {
        match *self {
            GroupType::Cyclic(n) => n,
            GroupType::Dihedral(n) => 2 * n,
            GroupType::A4 => 12,
            GroupType::S4 => 24,
            GroupType::A5 => 60,
            GroupType::Other { order } => order,
        }
    }

    pub fn is_cyclic(&self) -> bool {
        matches!(self, GroupType::Cyclic(_))
    }

    /// Orbit sizes of the fixed-point set of nonidentity elements, largest
    /// first. `None` for the trivial group and for `Other`.
    pub fn orbit_signature(&self) -> Option<Vec<usize>> {
        match *self {
            GroupType::Cyclic(1) => None,
            GroupType::Cyclic(_) => Some(vec![1, 1]),
            GroupType::Dihedral(n) => {
                let mut v = vec![n, n, 2];
                v.sort_unstable_by(|a, b| b.cmp(a));
                Some(v)
            }
            GroupType::A4 => Some(vec![6, 4, 4]),
            GroupType::S4 => Some(vec![12, 8, 6]),
            GroupType::A5 => Some(vec![30, 20, 12]),
            GroupType::Other { .. } => None,
        }
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupType::Cyclic(n) => write!(f, "C{n}"),
            GroupType::Dihedral(n) => write!(f, "D{n}"),
            GroupType::A4 => f.write_str("A4"),
            GroupType::S4 => f.write_str("S4"),
            GroupType::A5 => f.write_str("A5"),
            GroupType::Other { .. } => f.write_str("Other"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown group tag {0:?} (expected Cn, Dn, A4, S4 or A5)")]
pub struct ParseGroupTypeError(pub String);

impl FromStr for GroupType {
    type Err = ParseGroupTypeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseGroupTypeError(s.to_string());
        let t = s.trim();
        match t {
            "A4" => return Ok(GroupType::A4),
            "S4" => return Ok(GroupType::S4),
            "A5" => return Ok(GroupType::A5),
            _ => {}
        }
        let (head, tail) = t.split_at(t.char_indices().nth(1).map(|(i, _)| i).unwrap_or(t.len()));
        let n: usize = tail.parse().map_err(|_| err())?;
        if n == 0 {
            return Err(err());
        }
        match head {
            "C" => Ok(GroupType::Cyclic(n)),
            "D" => Ok(GroupType::Dihedral(n)),
            _ => Err(err()),
        }
    }
}

impl Serialize for GroupType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GroupType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Multiplication table of a finite group on indices `0..order`.
#[derive(Debug, Clone)]
pub struct CayleyTable {
    order: usize,
    identity: usize,
    product: Vec<usize>,
}

impl CayleyTable {
    /// Builds the table from an element list, a product and an equality test.
    ///
    /// Returns `None` if the list is not closed under the product or has no
    /// identity.
    pub fn build<T>(
        elements: &[T],
        mul: impl Fn(&T, &T) -> T,
        eq: impl Fn(&T, &T) -> bool,
    ) -> Option<Self> {
        let order = elements.len();
        let find = |x: &T| elements.iter().position(|e| eq(e, x));
        let mut product = Vec::with_capacity(order * order);
        for a in elements {
            for b in elements {
                product.push(find(&mul(a, b))?);
            }
        }
        let identity = (0..order).find(|&e| (0..order).all(|x| product[e * order + x] == x))?;
        Some(CayleyTable {
            order,
            identity,
            product,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.product[a * self.order + b]
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Number of elements of each order.
    pub fn census(&self) -> BTreeMap<usize, usize> {
        let mut c = BTreeMap::new();
        for a in 0..self.order {
            *c.entry(self.element_order(a)).or_insert(0) += 1;
        }
        c
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    fn powers(&self, a: usize) -> Vec<usize> {
        let mut out = vec![self.identity];
        let mut x = a;
        while x != self.identity {
            out.push(x);
            x = self.mul(x, a);
        }
        out
    }

    /// Dihedral test: some element `r` of order `n = |G|/2` such that every
    /// element outside `<r>` is an involution.
    fn is_dihedral(&self) -> bool {
        if self.order < 4 || self.order % 2 == 1 {
            return false;
        }
        let n = self.order / 2;
        (0..self.order)
            .filter(|&r| self.element_order(r) == n)
            .any(|r| {
                let sub = self.powers(r);
                (0..self.order)
                    .filter(|x| !sub.contains(x))
                    .all(|x| self.element_order(x) == 2)
            })
    }

    pub fn classify(&self) -> GroupType {
        let order = self.order;
        if (0..order).any(|a| self.element_order(a) == order) {
            return GroupType::Cyclic(order);
        }
        if self.is_dihedral() {
            return GroupType::Dihedral(order / 2);
        }
        let census = self.census();
        let matches = |expected: &[(usize, usize)]| {
            census.len() == expected.len() && expected.iter().all(|(k, v)| census.get(k) == Some(v))
        };
        match order {
            12 if matches(&[(1, 1), (2, 3), (3, 8)]) => GroupType::A4,
            24 if matches(&[(1, 1), (2, 9), (3, 8), (4, 6)]) => GroupType::S4,
            60 if matches(&[(1, 1), (2, 15), (3, 20), (5, 24)]) => GroupType::A5,
            _ => GroupType::Other { order },
        }
    }
}
