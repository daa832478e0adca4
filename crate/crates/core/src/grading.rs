//! Elementary gradings on subalgebras of `M_n` spanned by matrix units.
//!
//! All matrix indices are 1-based, matching the `e_{ij}` notation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Deserialize;
use thiserror::Error;

use crate::group::{Group, GroupElement, GroupError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GradingError {
    #[error("matrix unit ({i},{j}) is out of range for n = {n}")]
    IndexOutOfRange { i: usize, j: usize, n: usize },
    #[error("block shape is empty or has a zero-sized block")]
    EmptyShape,
    #[error("tuple entries at positions {first} and {second} coincide")]
    NonDistinctTuple { first: usize, second: usize },
    #[error("tuple has length {found}, expected {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("{0} is not an element of the grading group")]
    ForeignElement(String),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A multiplicatively closed set of matrix units `e_{ij}` of `M_n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UnitSet {
    n: usize,
    pairs: BTreeSet<(usize, usize)>,
}

impl UnitSet {
    /// Smallest multiplicatively closed set containing `pairs`.
    pub fn close(pairs: &[(usize, usize)], n: usize) -> Result<UnitSet, GradingError> {
        let mut set = BTreeSet::new();
        for &(i, j) in pairs {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(GradingError::IndexOutOfRange { i, j, n });
            }
            set.insert((i, j));
        }
        // Transitive closure of the relation i -> j.
        loop {
            let mut added = Vec::new();
            for &(i, j) in &set {
                for &(_, k) in set.range((j, 0)..=(j, usize::MAX)) {
                    if !set.contains(&(i, k)) {
                        added.push((i, k));
                    }
                }
            }
            if added.is_empty() {
                break;
            }
            set.extend(added);
        }
        Ok(UnitSet { n, pairs: set })
    }

    /// Units of the upper block-triangular algebra `UT(d_1,…,d_k)`.
    pub fn block_triangular(blocks: &[usize]) -> Result<UnitSet, GradingError> {
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(GradingError::EmptyShape);
        }
        let mut block_of = Vec::new();
        for (b, &d) in blocks.iter().enumerate() {
            block_of.extend(std::iter::repeat_n(b, d));
        }
        let n = block_of.len();
        let pairs = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| (i, j)))
            .filter(|&(i, j)| block_of[i - 1] <= block_of[j - 1])
            .collect();
        Ok(UnitSet { n, pairs })
    }

    /// All of `M_n`.
    pub fn full(n: usize) -> UnitSet {
        let pairs = (1..=n).flat_map(|i| (1..=n).map(move |j| (i, j))).collect();
        UnitSet { n, pairs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.pairs.contains(&(i, j))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn is_subset_of(&self, other: &UnitSet) -> bool {
        self.n == other.n && self.pairs.is_subset(&other.pairs)
    }
}

/// Unit specification as it appears in configuration files.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum UnitSpec {
    Blocks(Vec<usize>),
    Pairs(Vec<[usize; 2]>),
}

impl UnitSpec {
    /// `n` is needed only for explicit pair lists.
    pub fn build(&self, n: usize) -> Result<UnitSet, GradingError> {
        match self {
            UnitSpec::Blocks(blocks) => UnitSet::block_triangular(blocks),
            UnitSpec::Pairs(pairs) => {
                let pairs: Vec<(usize, usize)> = pairs.iter().map(|p| (p[0], p[1])).collect();
                UnitSet::close(&pairs, n)
            }
        }
    }
}

/// Partial function on `{1,…,n}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialMap {
    values: Vec<Option<usize>>,
}

impl PartialMap {
    pub fn empty(n: usize) -> PartialMap {
        PartialMap {
            values: vec![None; n],
        }
    }

    pub fn identity(n: usize) -> PartialMap {
        PartialMap {
            values: (1..=n).map(Some).collect(),
        }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> PartialMap {
        let mut map = PartialMap::empty(n);
        for (i, j) in pairs {
            map.values[i - 1] = Some(j);
        }
        map
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn get(&self, i: usize) -> Option<usize> {
        self.values.get(i.wrapping_sub(1)).copied().flatten()
    }

    pub fn domain(&self) -> Vec<usize> {
        self.iter().map(|(i, _)| i).collect()
    }

    pub fn domain_size(&self) -> usize {
        self.values.iter().filter(|v| v.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.values.iter().all(Option::is_none)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.values
            .iter()
            .enumerate()
            .filter_map(|(pos, v)| v.map(|j| (pos + 1, j)))
    }

    /// `next ∘ self`: first apply `self`, then `next`.
    pub fn then(&self, next: &PartialMap) -> PartialMap {
        PartialMap {
            values: self
                .values
                .iter()
                .map(|v| v.and_then(|j| next.get(j)))
                .collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.iter().all(|(_, j)| seen.insert(j))
    }
}

impl fmt::Debug for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.iter()).finish()
    }
}

impl fmt::Display for PartialMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (pos, (i, j)) in self.iter().enumerate() {
            if pos > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{i}->{j}")?;
        }
        f.write_str("}")
    }
}

/// A matrix-unit subalgebra `B ⊆ M_n` with the elementary grading induced by
/// a tuple of pairwise distinct group elements.
#[derive(Debug, Clone)]
pub struct GradedSubalgebra {
    group: Group,
    tuple: Vec<GroupElement>,
    units: UnitSet,
    degrees: BTreeMap<(usize, usize), GroupElement>,
    support: Vec<GroupElement>,
    maps: BTreeMap<GroupElement, PartialMap>,
}

/// Builds the grading `deg e_{ij} = g_i^{-1} g_j` on `units`.
pub fn induce_grading(
    group: &Group,
    tuple: &[GroupElement],
    units: &UnitSet,
) -> Result<GradedSubalgebra, GradingError> {
    if tuple.len() != units.n() {
        return Err(GradingError::SizeMismatch {
            expected: units.n(),
            found: tuple.len(),
        });
    }
    for g in tuple {
        if !group.contains(g) {
            return Err(GradingError::ForeignElement(format!("{g:?}")));
        }
    }
    for second in 0..tuple.len() {
        if let Some(first) = tuple[..second].iter().position(|g| *g == tuple[second]) {
            return Err(GradingError::NonDistinctTuple {
                first: first + 1,
                second: second + 1,
            });
        }
    }

    let n = units.n();
    let mut degrees = BTreeMap::new();
    let mut rows: BTreeMap<GroupElement, Vec<(usize, usize)>> = BTreeMap::new();
    for (i, j) in units.iter() {
        let deg = group.op(&group.inv(&tuple[i - 1]), &tuple[j - 1]);
        rows.entry(deg.clone()).or_default().push((i, j));
        degrees.insert((i, j), deg);
    }
    let mut maps = BTreeMap::new();
    for (deg, pairs) in rows {
        // Distinct tuple entries force at most one column per row and degree.
        debug_assert!({
            let mut seen = BTreeSet::new();
            pairs.iter().all(|&(i, _)| seen.insert(i))
        });
        maps.insert(deg, PartialMap::from_pairs(n, pairs));
    }
    let support = maps.keys().cloned().collect();

    Ok(GradedSubalgebra {
        group: group.clone(),
        tuple: tuple.to_vec(),
        units: units.clone(),
        degrees,
        support,
        maps,
    })
}

impl GradedSubalgebra {
    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn tuple(&self) -> &[GroupElement] {
        &self.tuple
    }

    pub fn units(&self) -> &UnitSet {
        &self.units
    }

    pub fn n(&self) -> usize {
        self.units.n()
    }

    /// The support `G_0`, in canonical element order.
    pub fn support(&self) -> &[GroupElement] {
        &self.support
    }

    pub fn in_support(&self, g: &GroupElement) -> bool {
        self.maps.contains_key(g)
    }

    pub fn degree(&self, i: usize, j: usize) -> Option<&GroupElement> {
        self.degrees.get(&(i, j))
    }

    pub fn degrees(&self) -> impl Iterator<Item = ((usize, usize), &GroupElement)> {
        self.degrees.iter().map(|(k, v)| (*k, v))
    }

    fn check_member(&self, g: &GroupElement) -> Result<(), GradingError> {
        if self.group.contains(g) {
            Ok(())
        } else {
            Err(GradingError::ForeignElement(format!("{g:?}")))
        }
    }

    /// The partial map `ĝ`; empty when `g ∉ G_0`.
    pub fn hat(&self, g: &GroupElement) -> Result<PartialMap, GradingError> {
        self.check_member(g)?;
        Ok(self
            .hat_ref(g)
            .cloned()
            .unwrap_or_else(|| PartialMap::empty(self.n())))
    }

    pub(crate) fn hat_ref(&self, g: &GroupElement) -> Option<&PartialMap> {
        self.maps.get(g)
    }

    /// Units spanning `B_g`, sorted by row.
    pub fn component_basis(&self, g: &GroupElement) -> Result<Vec<(usize, usize)>, GradingError> {
        self.check_member(g)?;
        Ok(self
            .hat_ref(g)
            .map(|m| m.iter().collect())
            .unwrap_or_default())
    }

    pub fn component_dim(&self, g: &GroupElement) -> usize {
        self.hat_ref(g).map_or(0, PartialMap::domain_size)
    }

    /// The full matrix algebra `A = M_n` with the same tuple.
    pub fn ambient(&self) -> GradedSubalgebra {
        induce_grading(&self.group, &self.tuple, &UnitSet::full(self.n()))
            .expect("tuple already validated")
    }

    pub fn display(&self, g: &GroupElement) -> String {
        self.group.display(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u64) -> Group {
        Group::cyclic(m).unwrap()
    }

    fn r(v: u64) -> GroupElement {
        GroupElement::Residue(v)
    }

    fn set(pairs: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
        pairs.iter().copied().collect()
    }

    #[test]
    fn closure_adds_products() {
        let u = UnitSet::close(&[(1, 2), (2, 3)], 3).unwrap();
        assert_eq!(u.pairs, set(&[(1, 2), (2, 3), (1, 3)]));
        let ut = UnitSet::close(&[(1, 1), (1, 2), (2, 2)], 2).unwrap();
        assert_eq!(ut.pairs, set(&[(1, 1), (1, 2), (2, 2)]));
        let m2 = UnitSet::close(&[(1, 2), (2, 1)], 2).unwrap();
        assert_eq!(m2, UnitSet::full(2));
    }

    #[test]
    fn closure_rejects_out_of_range() {
        assert_eq!(
            UnitSet::close(&[(0, 1)], 2),
            Err(GradingError::IndexOutOfRange { i: 0, j: 1, n: 2 })
        );
        assert!(UnitSet::close(&[(1, 3)], 2).is_err());
    }

    #[test]
    fn block_shapes() {
        assert_eq!(
            UnitSet::block_triangular(&[1, 1]).unwrap().pairs,
            set(&[(1, 1), (1, 2), (2, 2)])
        );
        // Enumerated by block membership: rows 1-2 form block 0, row 3 block 1.
        assert_eq!(
            UnitSet::block_triangular(&[2, 1]).unwrap().pairs,
            set(&[(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (2, 3), (3, 3)])
        );
        assert_eq!(UnitSet::block_triangular(&[3]).unwrap(), UnitSet::full(3));
        assert_eq!(
            UnitSet::block_triangular(&[]),
            Err(GradingError::EmptyShape)
        );
        assert_eq!(
            UnitSet::block_triangular(&[2, 0]),
            Err(GradingError::EmptyShape)
        );
    }

    #[test]
    fn full_m3_grading() {
        let b = induce_grading(&z(3), &[r(0), r(1), r(2)], &UnitSet::full(3)).unwrap();
        assert_eq!(b.support(), &[r(0), r(1), r(2)]);
        for g in 0..3 {
            assert_eq!(b.component_dim(&r(g)), 3);
        }
        assert_eq!(
            b.component_basis(&r(1)).unwrap(),
            vec![(1, 2), (2, 3), (3, 1)]
        );
    }

    #[test]
    fn ut11_components() {
        let units = UnitSet::block_triangular(&[1, 1]).unwrap();
        let b = induce_grading(&z(2), &[r(0), r(1)], &units).unwrap();
        assert_eq!(b.support(), &[r(0), r(1)]);
        assert_eq!(b.component_basis(&r(0)).unwrap(), vec![(1, 1), (2, 2)]);
        assert_eq!(b.component_basis(&r(1)).unwrap(), vec![(1, 2)]);
        let hat = b.hat(&r(1)).unwrap();
        assert_eq!(hat.domain(), vec![1]);
        assert_eq!(hat.get(1), Some(2));
    }

    #[test]
    fn component_outside_support_is_empty() {
        let units = UnitSet::block_triangular(&[1, 1]).unwrap();
        let b = induce_grading(&z(4), &[r(0), r(1)], &units).unwrap();
        assert!(b.component_basis(&r(3)).unwrap().is_empty());
        assert!(b.hat(&r(3)).unwrap().is_empty());
        assert!(matches!(
            b.component_basis(&r(9)),
            Err(GradingError::ForeignElement(_))
        ));
    }

    #[test]
    fn non_distinct_tuple() {
        let err = induce_grading(&z(2), &[r(0), r(0)], &UnitSet::full(2)).unwrap_err();
        assert_eq!(
            err,
            GradingError::NonDistinctTuple {
                first: 1,
                second: 2
            }
        );
        let err = induce_grading(&z(2), &[r(0)], &UnitSet::full(2)).unwrap_err();
        assert_eq!(
            err,
            GradingError::SizeMismatch {
                expected: 2,
                found: 1
            }
        );
    }

    #[test]
    fn identity_component_is_diagonal_on_block_shapes() {
        let units = UnitSet::block_triangular(&[2, 1]).unwrap();
        let b = induce_grading(&z(3), &[r(0), r(1), r(2)], &units).unwrap();
        assert_eq!(
            b.component_basis(&r(0)).unwrap(),
            vec![(1, 1), (2, 2), (3, 3)]
        );
    }

    #[test]
    fn degree_map_is_multiplicative() {
        let units = UnitSet::block_triangular(&[2, 2]).unwrap();
        let g = z(5);
        let b = induce_grading(&g, &[r(0), r(3), r(1), r(4)], &units).unwrap();
        for ((i, j), d1) in b.degrees() {
            for k in 1..=b.n() {
                if let (Some(d2), Some(d3)) = (b.degree(j, k), b.degree(i, k)) {
                    assert_eq!(g.op(d1, d2), *d3);
                }
            }
        }
    }

    #[test]
    fn partial_map_composition() {
        let a = PartialMap::from_pairs(3, [(1, 2), (2, 3)]);
        let b = PartialMap::from_pairs(3, [(2, 1)]);
        let c = a.then(&b);
        assert_eq!(c.domain(), vec![1]);
        assert_eq!(c.get(1), Some(1));
        assert_eq!(PartialMap::identity(3).then(&a), a);
    }

    #[test]
    fn unit_spec_json() {
        let spec: UnitSpec = serde_json::from_str(r#"{"blocks":[2,1]}"#).unwrap();
        assert_eq!(spec.build(0).unwrap().n(), 3);
        let spec: UnitSpec = serde_json::from_str(r#"{"pairs":[[1,2],[2,1]]}"#).unwrap();
        assert_eq!(spec.build(2).unwrap(), UnitSet::full(2));
    }
}
