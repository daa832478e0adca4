//! Monomial identities through composition of the partial maps `ĝ`.
//!
//! A degree word `(h_1,…,h_p)` is a graded monomial identity exactly when the
//! composition `ĥ_p ∘ … ∘ ĥ_1` has empty domain. Every identity word reduces,
//! through the two moves below, to one of length at most `2n-1`:
//!
//! * `R1`: a proper contiguous subword is already an identity;
//! * `R2`: two adjacent letters `a, b` merge into `ab ∈ G_0` and the shorter
//!   word is still an identity (substitution `x_{ab} ↦ x_a x_b`).

use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::grading::{GradedSubalgebra, GradingError, PartialMap};
use crate::group::{Group, GroupElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonomialError {
    #[error("degree sequence must be non-empty")]
    EmptySequence,
    #[error("{0} is not a monomial identity")]
    NotAnIdentity(String),
    #[error("strongness quantifies over every group element; the group is infinite")]
    InfiniteGroupStrongnessCheck,
    #[error(transparent)]
    Grading(#[from] GradingError),
}

/// Degree word of a monomial; variable superscripts do not matter here.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeSequence(Vec<GroupElement>);

impl DegreeSequence {
    pub fn new(degrees: Vec<GroupElement>) -> Result<DegreeSequence, MonomialError> {
        if degrees.is_empty() {
            return Err(MonomialError::EmptySequence);
        }
        Ok(DegreeSequence(degrees))
    }

    pub fn as_slice(&self) -> &[GroupElement] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<GroupElement> {
        self.0
    }

    pub fn display(&self, group: &Group) -> String {
        let parts: Vec<String> = self.0.iter().map(|g| group.display(g)).collect();
        format!("({})", parts.join(","))
    }

    /// The multilinear monomial `x[h_1,1]x[h_2,2]…` as text.
    pub fn display_monomial(&self, group: &Group) -> String {
        self.0
            .iter()
            .enumerate()
            .map(|(pos, g)| format!("x[{},{}]", group.display(g), pos + 1))
            .collect()
    }
}

/// Ordering used for every reported list: shorter words first, then
/// lexicographic by canonical element order.
pub fn shortlex(a: &DegreeSequence, b: &DegreeSequence) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.0.cmp(&b.0))
}

/// `ν = ĥ_p ∘ … ∘ ĥ_1`.
pub fn compose_maps(
    b: &GradedSubalgebra,
    seq: &[GroupElement],
) -> Result<PartialMap, GradingError> {
    let mut map = PartialMap::identity(b.n());
    for h in seq {
        map = map.then(&b.hat(h)?);
    }
    Ok(map)
}

/// Domains `D_1 ⊇ D_2 ⊇ …` of all prefix compositions.
pub fn prefix_domains(
    b: &GradedSubalgebra,
    seq: &[GroupElement],
) -> Result<Vec<Vec<usize>>, GradingError> {
    let mut map = PartialMap::identity(b.n());
    let mut out = Vec::with_capacity(seq.len());
    for h in seq {
        map = map.then(&b.hat(h)?);
        out.push(map.domain());
    }
    Ok(out)
}

pub fn is_monomial_identity(
    b: &GradedSubalgebra,
    seq: &[GroupElement],
) -> Result<bool, GradingError> {
    Ok(compose_maps(b, seq)?.is_empty())
}

/// Identity test for words already known to consist of group elements.
fn vanishes(b: &GradedSubalgebra, seq: &[GroupElement]) -> bool {
    let mut map = PartialMap::identity(b.n());
    for h in seq {
        match b.hat_ref(h) {
            Some(hat) => map = map.then(hat),
            None => return true,
        }
        if map.is_empty() {
            return true;
        }
    }
    false
}

fn collect_words(
    b: &GradedSubalgebra,
    prefix: &mut Vec<GroupElement>,
    map: &PartialMap,
    max_deg: usize,
    out: &mut Vec<DegreeSequence>,
) {
    for h in b.support() {
        let next = map.then(b.hat_ref(h).expect("support letter"));
        prefix.push(h.clone());
        if next.is_empty() {
            out.push(DegreeSequence(prefix.clone()));
        }
        if prefix.len() < max_deg {
            collect_words(b, prefix, &next, max_deg, out);
        }
        prefix.pop();
    }
}

/// All identity words over the alphabet `G_0` of length `≤ max_deg`, in
/// shortlex order. Letters outside the support are reported separately by
/// [`zero_components`].
pub fn enumerate_monomial_identities(b: &GradedSubalgebra, max_deg: usize) -> Vec<DegreeSequence> {
    if max_deg == 0 {
        return Vec::new();
    }
    let mut words: Vec<DegreeSequence> = b
        .support()
        .par_iter()
        .flat_map_iter(|h| {
            let start = b.hat_ref(h).expect("support letter").clone();
            let mut prefix = vec![h.clone()];
            let mut out = Vec::new();
            if start.is_empty() {
                out.push(DegreeSequence(prefix.clone()));
            }
            if max_deg > 1 {
                collect_words(b, &mut prefix, &start, max_deg, &mut out);
            }
            out
        })
        .collect();
    words.sort_by(shortlex);
    words
}

/// Degrees `g` of `universe` with `B_g = 0` (the type-(5) identities `x_g`).
pub fn zero_components(b: &GradedSubalgebra, universe: &[GroupElement]) -> Vec<GroupElement> {
    let mut out: Vec<GroupElement> = universe
        .iter()
        .filter(|g| !b.in_support(g))
        .cloned()
        .collect();
    out.sort();
    out.dedup();
    out
}

/// A single reduction move. Positions are 1-based and inclusive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ReductionStep {
    /// `R1`: the subword `start..=end` is an identity.
    Subword { start: usize, end: usize },
    /// `R2`: letters `at` and `at+1` merged into `merged`.
    Merge { at: usize, merged: GroupElement },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub source: DegreeSequence,
    /// Each move together with the identity word it produces.
    pub steps: Vec<(ReductionStep, DegreeSequence)>,
}

impl ReductionCertificate {
    pub fn target(&self) -> &DegreeSequence {
        self.steps.last().map(|(_, w)| w).unwrap_or(&self.source)
    }

    pub fn to_json(&self, group: &Group) -> serde_json::Value {
        serde_json::Value::Array(
            self.steps
                .iter()
                .map(|(step, _)| step_json(step, group))
                .collect(),
        )
    }
}

fn step_json(step: &ReductionStep, group: &Group) -> serde_json::Value {
    match step {
        ReductionStep::Subword { start, end } => {
            serde_json::json!({"move": "R1", "span": [start, end]})
        }
        ReductionStep::Merge { at, merged } => {
            serde_json::json!({"move": "R2", "at": at, "merged": group.display(merged)})
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reduction {
    Certificate(ReductionCertificate),
    Irreducible,
}

/// First applicable move: `R1` subwords by (start, length), then `R2` merges
/// by position.
pub fn find_move(
    b: &GradedSubalgebra,
    seq: &[GroupElement],
) -> Option<(ReductionStep, Vec<GroupElement>)> {
    let p = seq.len();
    for start in 0..p {
        for len in 1..=(p - start) {
            if len == p {
                continue;
            }
            let sub = &seq[start..start + len];
            if vanishes(b, sub) {
                return Some((
                    ReductionStep::Subword {
                        start: start + 1,
                        end: start + len,
                    },
                    sub.to_vec(),
                ));
            }
        }
    }
    let group = b.group();
    for at in 0..p.saturating_sub(1) {
        let merged = group.op(&seq[at], &seq[at + 1]);
        if !b.in_support(&merged) {
            continue;
        }
        let mut shorter = Vec::with_capacity(p - 1);
        shorter.extend_from_slice(&seq[..at]);
        shorter.push(merged.clone());
        shorter.extend_from_slice(&seq[at + 2..]);
        if vanishes(b, &shorter) {
            return Some((ReductionStep::Merge { at: at + 1, merged }, shorter));
        }
    }
    None
}

/// Reduces an identity word by repeated first moves until none applies.
pub fn reduce_monomial(
    b: &GradedSubalgebra,
    seq: &DegreeSequence,
) -> Result<Reduction, MonomialError> {
    if !is_monomial_identity(b, seq.as_slice())? {
        return Err(MonomialError::NotAnIdentity(seq.display(b.group())));
    }
    let mut steps = Vec::new();
    let mut current = seq.as_slice().to_vec();
    while let Some((step, next)) = find_move(b, &current) {
        steps.push((step, DegreeSequence(next.clone())));
        current = next;
    }
    if steps.is_empty() {
        Ok(Reduction::Irreducible)
    } else {
        Ok(Reduction::Certificate(ReductionCertificate {
            source: seq.clone(),
            steps,
        }))
    }
}

/// Independent check that every step of a certificate is sound.
pub fn certificate_is_sound(b: &GradedSubalgebra, cert: &ReductionCertificate) -> bool {
    let group = b.group();
    let mut current = cert.source.as_slice().to_vec();
    if !vanishes(b, &current) {
        return false;
    }
    for (step, produced) in &cert.steps {
        let expected = match step {
            ReductionStep::Subword { start, end } => {
                if *start < 1
                    || end < start
                    || *end > current.len()
                    || end - start + 1 == current.len()
                {
                    return false;
                }
                current[start - 1..*end].to_vec()
            }
            ReductionStep::Merge { at, merged } => {
                if *at < 1
                    || *at >= current.len()
                    || group.op(&current[at - 1], &current[*at]) != *merged
                {
                    return false;
                }
                let mut w = current[..at - 1].to_vec();
                w.push(merged.clone());
                w.extend_from_slice(&current[at + 1..]);
                w
            }
        };
        if expected != produced.as_slice() || !vanishes(b, &expected) {
            return false;
        }
        current = expected;
    }
    true
}

/// The `R1`/`R2`-irreducible identity words over `G_0` of length at most
/// `2n-1`, in shortlex order.
pub fn minimal_monomial_basis(b: &GradedSubalgebra) -> Vec<DegreeSequence> {
    let bound = 2 * b.n() - 1;
    let mut basis: Vec<DegreeSequence> = enumerate_monomial_identities(b, bound)
        .into_par_iter()
        .filter(|w| find_move(b, w.as_slice()).is_none())
        .collect();
    basis.sort_by(shortlex);
    basis
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Nondegenerate,
    Degenerate(DegreeSequence),
}

/// Searches identity words over `G_0` up to length `2n-1`; by the length
/// bound on monomial identities this decides degeneracy.
pub fn classify_grading(b: &GradedSubalgebra) -> Classification {
    let bound = 2 * b.n() - 1;
    match enumerate_monomial_identities(b, bound).into_iter().next() {
        Some(w) => Classification::Degenerate(w),
        None => Classification::Nondegenerate,
    }
}

/// A pair `(g, h)` with `span(B_g B_h) ≠ B_{gh}`, or `None` when the grading
/// is strong.
pub fn strongness_witness(
    b: &GradedSubalgebra,
) -> Result<Option<(GroupElement, GroupElement)>, MonomialError> {
    let group = b.group();
    let elements = group
        .elements()
        .ok_or(MonomialError::InfiniteGroupStrongnessCheck)?;
    for g in &elements {
        for h in &elements {
            let gh = group.op(g, h);
            let products = match (b.hat_ref(g), b.hat_ref(h)) {
                (Some(hg), Some(hh)) => hg.then(hh).domain_size(),
                _ => 0,
            };
            if products != b.component_dim(&gh) {
                return Ok(Some((g.clone(), h.clone())));
            }
        }
    }
    Ok(None)
}

pub fn is_strong(b: &GradedSubalgebra) -> Result<bool, MonomialError> {
    Ok(strongness_witness(b)?.is_none())
}

impl fmt::Display for ReductionStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReductionStep::Subword { start, end } => write!(f, "R1[{start}..{end}]"),
            ReductionStep::Merge { at, merged } => write!(f, "R2@{at}->{merged:?}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::{induce_grading, UnitSet};

    fn r(v: u64) -> GroupElement {
        GroupElement::Residue(v)
    }

    fn word(v: &[u64]) -> Vec<GroupElement> {
        v.iter().map(|&x| r(x)).collect()
    }

    fn seq(v: &[u64]) -> DegreeSequence {
        DegreeSequence::new(word(v)).unwrap()
    }

    fn algebra(m: u64, tuple: &[u64], units: UnitSet) -> GradedSubalgebra {
        induce_grading(&Group::cyclic(m).unwrap(), &word(tuple), &units).unwrap()
    }

    fn ut11() -> GradedSubalgebra {
        algebra(2, &[0, 1], UnitSet::block_triangular(&[1, 1]).unwrap())
    }

    fn ut3() -> GradedSubalgebra {
        algebra(
            3,
            &[0, 1, 2],
            UnitSet::block_triangular(&[1, 1, 1]).unwrap(),
        )
    }

    fn m(n: u64) -> GradedSubalgebra {
        let tuple: Vec<u64> = (0..n).collect();
        algebra(n, &tuple, UnitSet::full(n as usize))
    }

    /// Product of one unit from each component is zero for every choice.
    fn unit_oracle(b: &GradedSubalgebra, w: &[GroupElement]) -> bool {
        fn go(b: &GradedSubalgebra, w: &[GroupElement], row: Option<usize>) -> bool {
            if w.is_empty() {
                return false;
            }
            let units = b.component_basis(&w[0]).unwrap();
            units
                .iter()
                .all(|&(i, j)| row.is_some_and(|r| r != i) || go(b, &w[1..], Some(j)))
        }
        go(b, w, None)
    }

    #[test]
    fn composition_examples() {
        let m2 = m(2);
        assert_eq!(
            compose_maps(&m2, &word(&[1, 1])).unwrap(),
            PartialMap::identity(2)
        );
        let comp = compose_maps(&ut3(), &word(&[2, 1])).unwrap();
        assert!(comp.is_empty());
        let wide = algebra(4, &[0, 1], UnitSet::block_triangular(&[1, 1]).unwrap());
        assert!(compose_maps(&wide, &word(&[3])).unwrap().is_empty());
    }

    #[test]
    fn identity_examples() {
        assert!(is_monomial_identity(&ut11(), &word(&[1, 1])).unwrap());
        assert!(!is_monomial_identity(&m(2), &word(&[1, 1])).unwrap());
        let wide = algebra(4, &[0, 1], UnitSet::block_triangular(&[1, 1]).unwrap());
        assert!(is_monomial_identity(&wide, &word(&[2])).unwrap());
        assert!(matches!(
            is_monomial_identity(&ut11(), &word(&[5])),
            Err(GradingError::ForeignElement(_))
        ));
    }

    #[test]
    fn enumeration_examples() {
        assert!(enumerate_monomial_identities(&m(3), 5).is_empty());
        assert_eq!(
            enumerate_monomial_identities(&ut11(), 2),
            vec![seq(&[1, 1])]
        );

        let ut = ut3();
        let found = enumerate_monomial_identities(&ut, 3);
        // Exhaustive oracle over all 3^p words.
        let mut expected = Vec::new();
        for p in 1..=3u32 {
            for code in 0..3u64.pow(p) {
                let w: Vec<u64> = (0..p).map(|t| (code / 3u64.pow(p - 1 - t)) % 3).collect();
                if unit_oracle(&ut, &word(&w)) {
                    expected.push(seq(&w));
                }
            }
        }
        assert_eq!(found, expected);
        for w in [&[1, 2][..], &[2, 1], &[2, 2], &[1, 1, 1]] {
            assert!(found.contains(&seq(w)));
        }
    }

    #[test]
    fn reduction_examples() {
        let ut = ut3();
        match reduce_monomial(&ut, &seq(&[1, 1, 1])).unwrap() {
            Reduction::Certificate(cert) => {
                assert_eq!(
                    cert.steps[0].0,
                    ReductionStep::Merge {
                        at: 1,
                        merged: r(2)
                    }
                );
                assert_eq!(cert.steps[0].1, seq(&[2, 1]));
                assert!(certificate_is_sound(&ut, &cert));
            }
            Reduction::Irreducible => panic!("expected a certificate"),
        }

        let ut = ut11();
        match reduce_monomial(&ut, &seq(&[1, 0, 1, 1])).unwrap() {
            Reduction::Certificate(cert) => {
                assert_eq!(cert.steps[0].0, ReductionStep::Subword { start: 1, end: 3 });
                assert!(certificate_is_sound(&ut, &cert));
            }
            Reduction::Irreducible => panic!("expected a certificate"),
        }
        assert_eq!(
            reduce_monomial(&ut, &seq(&[1, 1])).unwrap(),
            Reduction::Irreducible
        );
        assert!(matches!(
            reduce_monomial(&ut, &seq(&[0, 1])),
            Err(MonomialError::NotAnIdentity(_))
        ));
    }

    #[test]
    fn certificate_json_shape() {
        let ut = ut3();
        let Reduction::Certificate(cert) = reduce_monomial(&ut, &seq(&[1, 1, 1])).unwrap() else {
            panic!()
        };
        let json = cert.to_json(ut.group());
        assert_eq!(
            json[0],
            serde_json::json!({"move":"R2","at":1,"merged":"2"})
        );
    }

    #[test]
    fn minimal_bases() {
        assert_eq!(
            minimal_monomial_basis(&ut3()),
            vec![seq(&[1, 2]), seq(&[2, 1]), seq(&[2, 2])]
        );
        assert!(minimal_monomial_basis(&m(3)).is_empty());
        assert_eq!(minimal_monomial_basis(&ut11()), vec![seq(&[1, 1])]);
    }

    #[test]
    fn classification() {
        assert_eq!(classify_grading(&m(3)), Classification::Nondegenerate);
        assert!(is_strong(&m(3)).unwrap());
        assert_eq!(
            classify_grading(&ut11()),
            Classification::Degenerate(seq(&[1, 1]))
        );
        assert_eq!(strongness_witness(&ut11()).unwrap(), Some((r(1), r(1))));
        for blocks in [&[1, 2][..], &[2, 1], &[1, 1, 1], &[2, 2]] {
            let n: usize = blocks.iter().sum();
            let tuple: Vec<u64> = (0..n as u64).collect();
            let b = algebra(
                n as u64 + 1,
                &tuple,
                UnitSet::block_triangular(blocks).unwrap(),
            );
            assert!(matches!(
                classify_grading(&b),
                Classification::Degenerate(_)
            ));
        }
    }

    #[test]
    fn strongness_needs_finite_group() {
        let b = induce_grading(
            &Group::Integers,
            &[
                GroupElement::Integer(0.into()),
                GroupElement::Integer(1.into()),
            ],
            &UnitSet::full(2),
        )
        .unwrap();
        assert_eq!(
            is_strong(&b),
            Err(MonomialError::InfiniteGroupStrongnessCheck)
        );
        // e21 * e21 = 0
        let minus = GroupElement::Integer((-1).into());
        assert_eq!(
            classify_grading(&b),
            Classification::Degenerate(DegreeSequence::new(vec![minus.clone(), minus]).unwrap())
        );
    }

    #[test]
    fn oracle_agreement_small() {
        for b in [ut11(), ut3(), m(2), m(3)] {
            let letters: Vec<u64> = match b.group() {
                Group::Cyclic(k) => (0..*k).collect(),
                _ => unreachable!(),
            };
            let k = letters.len() as u64;
            for p in 1..=4u32 {
                for code in 0..k.pow(p) {
                    let w: Vec<u64> = (0..p).map(|t| (code / k.pow(p - 1 - t)) % k).collect();
                    assert_eq!(
                        is_monomial_identity(&b, &word(&w)).unwrap(),
                        unit_oracle(&b, &word(&w)),
                        "word {w:?}"
                    );
                }
            }
        }
    }
}
