//! Generators of `T_G(B)`: the identities (3), (4), (5) and the minimal
//! monomial identities.

use std::fmt;

use num_rational::BigRational;
use num_traits::One;
use thiserror::Error;

use crate::free::{GradedPolynomial, GradedVariable};
use crate::grading::GradedSubalgebra;
use crate::group::GroupElement;
use crate::monomial::{minimal_monomial_basis, zero_components, DegreeSequence};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BasisError {
    #[error("degree universe does not contain the support element {0}")]
    UniverseTooSmall(String),
}

/// Which family a generator belongs to.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum GeneratorKind {
    /// `x_e^{(1)}x_e^{(2)} - x_e^{(2)}x_e^{(1)}`.
    Commutator,
    /// `x_g^{(1)}x_{g^{-1}}^{(2)}x_g^{(3)} - x_g^{(3)}x_{g^{-1}}^{(2)}x_g^{(1)}`.
    Swap(GroupElement),
    /// `x_g^{(1)}` for a zero component.
    Zero(GroupElement),
    /// A minimal monomial identity.
    Monomial(DegreeSequence),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisGenerator {
    pub kind: GeneratorKind,
    pub polynomial: GradedPolynomial,
}

impl BasisGenerator {
    /// `(3)`, `(4:g)`, `(5:g)` or `(mon)`.
    pub fn tag(&self, b: &GradedSubalgebra) -> String {
        match &self.kind {
            GeneratorKind::Commutator => "(3)".into(),
            GeneratorKind::Swap(g) => format!("(4:{})", b.display(g)),
            GeneratorKind::Zero(g) => format!("(5:{})", b.display(g)),
            GeneratorKind::Monomial(_) => "(mon)".into(),
        }
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorKind::Commutator => f.write_str("commutator"),
            GeneratorKind::Swap(g) => write!(f, "swap {g:?}"),
            GeneratorKind::Zero(g) => write!(f, "zero {g:?}"),
            GeneratorKind::Monomial(s) => write!(f, "monomial {s:?}"),
        }
    }
}

fn word(vars: &[(&GroupElement, u32)]) -> Vec<GradedVariable> {
    vars.iter()
        .map(|(g, i)| GradedVariable::new((*g).clone(), *i))
        .collect()
}

fn binomial(plus: Vec<GradedVariable>, minus: Vec<GradedVariable>) -> GradedPolynomial {
    let one = BigRational::one();
    let mut p = GradedPolynomial::monomial(plus, one.clone()).expect("non-empty word");
    p.add_term(minus, -one).expect("non-empty word");
    p
}

pub fn commutator_identity(e: &GroupElement) -> GradedPolynomial {
    binomial(word(&[(e, 1), (e, 2)]), word(&[(e, 2), (e, 1)]))
}

pub fn swap_identity(g: &GroupElement, g_inv: &GroupElement) -> GradedPolynomial {
    binomial(
        word(&[(g, 1), (g_inv, 2), (g, 3)]),
        word(&[(g, 3), (g_inv, 2), (g, 1)]),
    )
}

/// `{e} ∪ S ∪ S·S` with `S = G_0 ∪ G_0^{-1}`, in canonical order.
pub fn default_universe(b: &GradedSubalgebra) -> Vec<GroupElement> {
    let group = b.group();
    let mut s: Vec<GroupElement> = b.support().to_vec();
    s.extend(b.support().iter().map(|g| group.inv(g)));
    let mut out = vec![group.identity()];
    out.extend(s.iter().cloned());
    for a in &s {
        for c in &s {
            out.push(group.op(a, c));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The generating set: (3) if `e ∈ G_0`, (4) for each `g ≠ e` in `G_0`,
/// (5) for each `g` of `universe` with `B_g = 0`, and the minimal monomial
/// identities written with fresh indices `1..p`.
pub fn basis_generators(
    b: &GradedSubalgebra,
    universe: &[GroupElement],
) -> Result<Vec<BasisGenerator>, BasisError> {
    if let Some(missing) = b.support().iter().find(|g| !universe.contains(g)) {
        return Err(BasisError::UniverseTooSmall(b.display(missing)));
    }
    let group = b.group();
    let e = group.identity();
    let mut out = Vec::new();
    if b.in_support(&e) {
        out.push(BasisGenerator {
            kind: GeneratorKind::Commutator,
            polynomial: commutator_identity(&e),
        });
    }
    for g in b.support().iter().filter(|g| **g != e) {
        out.push(BasisGenerator {
            kind: GeneratorKind::Swap(g.clone()),
            polynomial: swap_identity(g, &group.inv(g)),
        });
    }
    for g in zero_components(b, universe) {
        let polynomial =
            GradedPolynomial::multilinear_word(std::slice::from_ref(&g)).expect("non-empty");
        out.push(BasisGenerator {
            kind: GeneratorKind::Zero(g),
            polynomial,
        });
    }
    for seq in minimal_monomial_basis(b) {
        let polynomial = GradedPolynomial::multilinear_word(seq.as_slice()).expect("non-empty");
        out.push(BasisGenerator {
            kind: GeneratorKind::Monomial(seq),
            polynomial,
        });
    }
    Ok(out)
}
