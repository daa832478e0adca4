use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{BetaTable, BicharacterViolation, GrassmannModel, TensorError};
use crate::grading::GradedSubalgebra;
use crate::group::{Group, GroupElement};

type Vector = BTreeMap<usize, BigRational>;

/// An `H`-graded algebra given by a homogeneous basis and rational
/// structure constants `b_s b_t = Σ c_u b_u`.
#[derive(Debug, Clone)]
pub struct GradedStructure {
    h: Group,
    degrees: Vec<GroupElement>,
    products: Vec<Vec<Vector>>,
}

impl GradedStructure {
    pub fn new(
        h: Group,
        degrees: Vec<GroupElement>,
        products: Vec<Vec<Vec<(usize, BigRational)>>>,
    ) -> Result<GradedStructure, TensorError> {
        if !h.is_finite() {
            return Err(TensorError::InfiniteH);
        }
        if !h.is_abelian() {
            return Err(TensorError::NonAbelianH);
        }
        let d = degrees.len();
        if let Some(x) = degrees.iter().find(|x| !h.contains(x)) {
            return Err(TensorError::ForeignDegree(format!("{x:?}")));
        }
        if products.len() != d || products.iter().any(|row| row.len() != d) {
            return Err(TensorError::MalformedStructure(format!(
                "product table must be {d}×{d}"
            )));
        }
        let mut table = Vec::with_capacity(d);
        for (s, row) in products.into_iter().enumerate() {
            let mut out_row = Vec::with_capacity(d);
            for (t, combo) in row.into_iter().enumerate() {
                let target = h.op(&degrees[s], &degrees[t]);
                let mut v = Vector::new();
                for (u, c) in combo {
                    if u >= d {
                        return Err(TensorError::MalformedStructure(format!(
                            "basis index {u} out of range"
                        )));
                    }
                    if c.is_zero() {
                        continue;
                    }
                    if degrees[u] != target {
                        return Err(TensorError::MalformedStructure(format!(
                            "product of basis elements {s} and {t} is not homogeneous"
                        )));
                    }
                    *v.entry(u).or_insert_with(BigRational::zero) += c;
                }
                v.retain(|_, c| !c.is_zero());
                out_row.push(v);
            }
            table.push(out_row);
        }
        Ok(GradedStructure {
            h,
            degrees,
            products: table,
        })
    }

    /// A matrix-unit subalgebra, graded by its own group.
    pub fn from_subalgebra(b: &GradedSubalgebra) -> Result<GradedStructure, TensorError> {
        let units: Vec<(usize, usize)> = b.units().iter().collect();
        let degrees = units
            .iter()
            .map(|&(i, j)| b.degree(i, j).expect("unit").clone())
            .collect();
        let index: BTreeMap<(usize, usize), usize> =
            units.iter().enumerate().map(|(s, u)| (*u, s)).collect();
        let products = units
            .iter()
            .map(|&(i, j)| {
                units
                    .iter()
                    .map(|&(k, l)| {
                        if j == k {
                            vec![(index[&(i, l)], BigRational::one())]
                        } else {
                            Vec::new()
                        }
                    })
                    .collect()
            })
            .collect();
        GradedStructure::new(b.group().clone(), degrees, products)
    }

    /// The Grassmann algebra on `k` generators, graded by word length mod 2.
    pub fn grassmann(model: &GrassmannModel) -> GradedStructure {
        let all = 1u32 << model.generators();
        let degrees = (0..all)
            .map(|w| GroupElement::Residue(u64::from(w.count_ones() % 2)))
            .collect();
        let products = (0..all)
            .map(|a| {
                (0..all)
                    .map(|b| match GrassmannModel::product(a, b) {
                        Some((w, neg)) => {
                            let c = if neg {
                                -BigRational::one()
                            } else {
                                BigRational::one()
                            };
                            vec![(w as usize, c)]
                        }
                        None => Vec::new(),
                    })
                    .collect()
            })
            .collect();
        GradedStructure::new(Group::Cyclic(2), degrees, products).expect("homogeneous products")
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    fn component(&self, h: &GroupElement) -> Vec<usize> {
        (0..self.degrees.len())
            .filter(|&s| self.degrees[s] == *h)
            .collect()
    }

    fn times_basis(&self, v: &Vector, t: usize) -> Vector {
        let mut out = Vector::new();
        for (s, c) in v {
            for (u, d) in &self.products[*s][t] {
                *out.entry(*u).or_insert_with(BigRational::zero) += c * d;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegularityPolicy {
    /// Every component must have dimension at most one.
    OneDimensional,
    /// Components of any dimension; condition 1 is checked over all basis
    /// choices.
    Any,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Regularity {
    /// Both conditions hold up to the length bound; `theta` is the
    /// commutation factor, with values `±1` written as exponents of `-1`.
    Regular { theta: BetaTable },
    /// No choice of homogeneous elements of these degrees has a nonzero product.
    FailsCondition1 { word: Vec<GroupElement> },
    /// No scalar `θ(g,h)` with `ab = θ(g,h)ba` for all `a ∈ A_g`, `b ∈ A_h`.
    FailsCondition2 { g: GroupElement, h: GroupElement },
    /// The commutation factor is not a skew-symmetric bicharacter.
    ThetaNotBicharacter { detail: String },
}

fn nonzero_product(s: &GradedStructure, bases: &[Vec<usize>]) -> bool {
    fn go(s: &GradedStructure, bases: &[Vec<usize>], acc: &Vector) -> bool {
        match bases.split_first() {
            None => !acc.is_empty(),
            Some((first, rest)) => first.iter().any(|&t| {
                let next = s.times_basis(acc, t);
                !next.is_empty() && go(s, rest, &next)
            }),
        }
    }
    match bases.split_first() {
        None => false,
        Some((first, rest)) => first.iter().any(|&t| {
            let start: Vector = [(t, BigRational::one())].into_iter().collect();
            go(s, rest, &start)
        }),
    }
}

/// Checks the two regularity conditions: every word of degrees of length
/// `≤ length_bound` is realized by a nonzero product, and homogeneous
/// elements commute up to a scalar `θ(g,h)`. When both hold, `θ` is checked
/// to be a skew-symmetric bicharacter.
pub fn check_regular(
    s: &GradedStructure,
    length_bound: usize,
    policy: RegularityPolicy,
) -> Result<Regularity, TensorError> {
    if length_bound < 2 {
        return Err(TensorError::LengthBoundTooSmall);
    }
    let elements = s.h.elements().expect("finite H");
    let components: Vec<Vec<usize>> = elements.iter().map(|h| s.component(h)).collect();
    if policy == RegularityPolicy::OneDimensional {
        if let Some((h, c)) = elements.iter().zip(&components).find(|(_, c)| c.len() > 1) {
            return Err(TensorError::ComponentTooBig {
                degree: s.h.display(h),
                dim: c.len(),
            });
        }
    }

    // Condition 1, words in length then lexicographic order.
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..length_bound {
        let mut next = Vec::new();
        for prefix in &frontier {
            for x in 0..elements.len() {
                let mut word = prefix.clone();
                word.push(x);
                let bases: Vec<Vec<usize>> = word.iter().map(|&i| components[i].clone()).collect();
                if !nonzero_product(s, &bases) {
                    return Ok(Regularity::FailsCondition1 {
                        word: word.iter().map(|&i| elements[i].clone()).collect(),
                    });
                }
                next.push(word);
            }
        }
        frontier = next;
    }

    // Condition 2.
    let n = elements.len();
    let mut theta = vec![vec![0i64; n]; n];
    for (gi, g) in elements.iter().enumerate() {
        for (hi, h) in elements.iter().enumerate() {
            let mut ratio: Option<BigRational> = None;
            for &a in &components[gi] {
                for &b in &components[hi] {
                    let ab = &s.products[a][b];
                    let ba = &s.products[b][a];
                    if ab.is_empty() && ba.is_empty() {
                        continue;
                    }
                    let fail = || Regularity::FailsCondition2 {
                        g: g.clone(),
                        h: h.clone(),
                    };
                    let Some((u, c)) = ba.iter().next() else {
                        return Ok(fail());
                    };
                    let Some(num) = ab.get(u) else {
                        return Ok(fail());
                    };
                    let r = num / c;
                    let consistent = ab.len() == ba.len()
                        && ba.iter().all(|(k, v)| ab.get(k) == Some(&(v * &r)));
                    if !consistent || ratio.as_ref().is_some_and(|q| *q != r) {
                        return Ok(fail());
                    }
                    ratio = Some(r);
                }
            }
            let r = ratio.unwrap_or_else(BigRational::one);
            theta[gi][hi] = if r.is_one() {
                0
            } else if r == -BigRational::one() {
                1
            } else {
                return Ok(Regularity::ThetaNotBicharacter {
                    detail: format!("θ({},{}) = {r}", s.h.display(g), s.h.display(h)),
                });
            };
        }
    }
    let table = BetaTable::new(s.h.clone(), 2, theta)?;
    match table.first_violation()? {
        Some(v) => Ok(Regularity::ThetaNotBicharacter {
            detail: describe(&v),
        }),
        None => Ok(Regularity::Regular { theta: table }),
    }
}

fn describe(v: &BicharacterViolation) -> String {
    format!("violates {v}")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grading::{induce_grading, UnitSet};

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn r(v: u64) -> GroupElement {
        GroupElement::Residue(v)
    }

    #[test]
    fn dual_numbers_fail_condition_one() {
        // span{I, e12}: I has degree 0, e12 degree 1, e12^2 = 0.
        let s = GradedStructure::new(
            Group::Cyclic(2),
            vec![r(0), r(1)],
            vec![
                vec![vec![(0, q(1))], vec![(1, q(1))]],
                vec![vec![(1, q(1))], vec![]],
            ],
        )
        .unwrap();
        assert_eq!(
            check_regular(&s, 3, RegularityPolicy::OneDimensional).unwrap(),
            Regularity::FailsCondition1 {
                word: vec![r(1), r(1)]
            }
        );
    }

    #[test]
    fn ut11_components_too_big() {
        let g = Group::Cyclic(2);
        let b = induce_grading(
            &g,
            &[r(0), r(1)],
            &UnitSet::block_triangular(&[1, 1]).unwrap(),
        )
        .unwrap();
        let s = GradedStructure::from_subalgebra(&b).unwrap();
        assert_eq!(
            check_regular(&s, 2, RegularityPolicy::OneDimensional),
            Err(TensorError::ComponentTooBig {
                degree: "0".into(),
                dim: 2
            })
        );
    }

    #[test]
    fn grassmann_is_regular() {
        let s = GradedStructure::grassmann(&GrassmannModel::new(3));
        match check_regular(&s, 3, RegularityPolicy::Any).unwrap() {
            Regularity::Regular { theta } => assert!(theta.is_grassmann()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_inhomogeneous_products() {
        let err = GradedStructure::new(
            Group::Cyclic(2),
            vec![r(0), r(1)],
            vec![vec![vec![(1, q(1))], vec![]], vec![vec![], vec![]]],
        );
        assert!(matches!(err, Err(TensorError::MalformedStructure(_))));
    }
}
