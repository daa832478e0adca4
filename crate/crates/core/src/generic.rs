//! Generic graded matrices and the exact identity oracle.
//!
//! `ξ_g^{(k)} = Σ_{i ∈ D_ĝ} ξ_{i ĝ(i)}^{(k)} e_{i ĝ(i)}`. Substituting these for
//! `x_g^{(k)}` realizes the relatively free algebra, so a polynomial is a graded
//! identity iff its evaluation is the zero matrix.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::free::{multidegree, GradedPolynomial, GradedVariable, Word};
use crate::grading::{GradedSubalgebra, GradingError};
use crate::omega::{
    CoeffMode, CoefficientError, GenericMatrix, OmegaMonomial, OmegaPolynomial, OmegaVariable,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenericError {
    #[error("copy index must be at least 1")]
    ZeroCopyIndex,
    #[error("monomials have different multidegrees")]
    MultidegreeMismatch,
    #[error("polynomial is not multihomogeneous")]
    NotMultihomogeneous,
    #[error("polynomial is not multilinear")]
    NotMultilinear,
    #[error(transparent)]
    Grading(#[from] GradingError),
    #[error(transparent)]
    Coefficient(#[from] CoefficientError),
}

pub fn generic_element(
    b: &GradedSubalgebra,
    g: &crate::group::GroupElement,
    k: u32,
    mode: CoeffMode,
) -> Result<GenericMatrix, GenericError> {
    if k == 0 {
        return Err(GenericError::ZeroCopyIndex);
    }
    let mut out = GenericMatrix::zero(b.n(), mode);
    for (i, j) in b.component_basis(g)? {
        let v = OmegaVariable { k, i, j };
        out.set(
            i,
            j,
            OmegaPolynomial::monomial(mode, OmegaMonomial::var(v), BigRational::one()),
        );
    }
    Ok(out)
}

fn evaluate_word(
    b: &GradedSubalgebra,
    word: &[GradedVariable],
    mode: CoeffMode,
) -> Result<GenericMatrix, GenericError> {
    let mut acc: Option<GenericMatrix> = None;
    for v in word {
        let m = generic_element(b, &v.degree, v.index, mode)?;
        acc = Some(match acc {
            None => m,
            Some(a) => a.mul(&m),
        });
        if acc.as_ref().is_some_and(GenericMatrix::is_zero) {
            // Remaining letters still have to be valid group elements.
            for rest in word {
                b.hat(&rest.degree)?;
            }
            break;
        }
    }
    Ok(acc.unwrap_or_else(|| GenericMatrix::zero(b.n(), mode)))
}

/// Substitutes generic elements into `f` and multiplies out.
pub fn evaluate(
    b: &GradedSubalgebra,
    f: &GradedPolynomial,
    mode: CoeffMode,
) -> Result<GenericMatrix, GenericError> {
    let mut out = GenericMatrix::zero(b.n(), mode);
    for (word, coeff) in f.terms() {
        let c = mode.reduce(coeff)?;
        if c.is_zero() {
            continue;
        }
        out.add_assign(&evaluate_word(b, word, mode)?.scale(&c));
    }
    Ok(out)
}

/// Exact membership test for `T_G(B)`.
pub fn is_graded_identity(
    b: &GradedSubalgebra,
    f: &GradedPolynomial,
    mode: CoeffMode,
) -> Result<bool, GenericError> {
    Ok(evaluate(b, f, mode)?.is_zero())
}

/// Nonzero entries of the generic evaluation of a monomial, one per row.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint(Vec<(usize, usize, OmegaMonomial)>);

impl Fingerprint {
    pub fn entries(&self) -> &[(usize, usize, OmegaMonomial)] {
        &self.0
    }

    pub fn shares_entry_with(&self, other: &Fingerprint) -> bool {
        self.0.iter().any(|t| other.0.contains(t))
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (pos, (i, j, m)) in self.0.iter().enumerate() {
            if pos > 0 {
                f.write_str("\n")?;
            }
            write!(f, "({i},{j}): {m}")?;
        }
        Ok(())
    }
}

/// Walks the path of every row through the maps `ĥ`; `None` when the
/// monomial is an identity.
pub fn fingerprint(
    b: &GradedSubalgebra,
    word: &[GradedVariable],
) -> Result<Option<Fingerprint>, GenericError> {
    let maps = word
        .iter()
        .map(|v| {
            if v.index == 0 {
                Err(GenericError::ZeroCopyIndex)
            } else {
                Ok((v.index, b.hat(&v.degree)?))
            }
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut entries = Vec::new();
    'rows: for row in 1..=b.n() {
        let mut cur = row;
        let mut vars = Vec::with_capacity(word.len());
        for (k, map) in &maps {
            match map.get(cur) {
                Some(next) => {
                    vars.push(OmegaVariable {
                        k: *k,
                        i: cur,
                        j: next,
                    });
                    cur = next;
                }
                None => continue 'rows,
            }
        }
        entries.push((row, cur, OmegaMonomial::from_variables(vars)));
    }
    Ok(if entries.is_empty() || word.is_empty() {
        None
    } else {
        Some(Fingerprint(entries))
    })
}

/// Whether two monomials of equal multidegree agree modulo `T_G(B)`.
pub fn congruent_mod_u(
    b: &GradedSubalgebra,
    m1: &[GradedVariable],
    m2: &[GradedVariable],
) -> Result<bool, GenericError> {
    if multidegree(m1) != multidegree(m2) {
        return Err(GenericError::MultidegreeMismatch);
    }
    match (fingerprint(b, m1)?, fingerprint(b, m2)?) {
        (Some(a), Some(c)) => Ok(a.shares_entry_with(&c)),
        _ => Ok(false),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FingerprintClass {
    pub fingerprint: Fingerprint,
    pub coefficient_sum: BigRational,
    pub members: Vec<Word>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub classes: Vec<FingerprintClass>,
    pub identity_monomials: Vec<Word>,
}

impl CanonicalForm {
    pub fn is_identity(&self) -> bool {
        self.classes.iter().all(|c| c.coefficient_sum.is_zero())
    }
}

/// Groups the monomials of a multihomogeneous polynomial by fingerprint.
pub fn canonical_form(
    b: &GradedSubalgebra,
    f: &GradedPolynomial,
    mode: CoeffMode,
) -> Result<CanonicalForm, GenericError> {
    if !f.is_multihomogeneous() {
        return Err(GenericError::NotMultihomogeneous);
    }
    let mut classes: BTreeMap<Fingerprint, (BigRational, Vec<Word>)> = BTreeMap::new();
    let mut identity_monomials = Vec::new();
    for (word, coeff) in f.terms() {
        let c = mode.reduce(coeff)?;
        match fingerprint(b, word)? {
            None => identity_monomials.push(word.clone()),
            Some(fp) => {
                let entry = classes
                    .entry(fp)
                    .or_insert_with(|| (BigRational::zero(), Vec::new()));
                entry.0 = mode.reduce(&(&entry.0 + c))?;
                entry.1.push(word.clone());
            }
        }
    }
    Ok(CanonicalForm {
        classes: classes
            .into_iter()
            .map(
                |(fingerprint, (coefficient_sum, members))| FingerprintClass {
                    fingerprint,
                    coefficient_sum,
                    members,
                },
            )
            .collect(),
        identity_monomials,
    })
}

/// `Θ`: sends `ξ_{ij}^{(k,A)}` to zero when `e_{ij} ∉ B`.
pub fn project_to_subalgebra(m: &GenericMatrix, b: &GradedSubalgebra) -> GenericMatrix {
    let units = b.units();
    m.map_entries(|p| {
        p.retain_monomials(|mono| mono.factors().iter().all(|(v, _)| units.contains(v.i, v.j)))
    })
}

/// A matrix unit chosen for each variable.
pub type Witness = Vec<(GradedVariable, (usize, usize))>;

/// Substitutes matrix units exhaustively. Returns the first substitution
/// (units in variable order) that leaves a nonzero value.
pub fn brute_force_witness(
    b: &GradedSubalgebra,
    f: &GradedPolynomial,
    mode: CoeffMode,
) -> Result<Option<Witness>, GenericError> {
    if !f.is_multilinear() {
        return Err(GenericError::NotMultilinear);
    }
    let vars: Vec<GradedVariable> = f.variables().into_iter().collect();
    let bases = vars
        .iter()
        .map(|v| b.component_basis(&v.degree))
        .collect::<Result<Vec<_>, _>>()?;
    let terms = f
        .terms()
        .map(|(w, c)| {
            let slots: Vec<usize> = w
                .iter()
                .map(|v| vars.binary_search(v).expect("variable of f"))
                .collect();
            Ok((slots, mode.reduce(c)?))
        })
        .collect::<Result<Vec<_>, GenericError>>()?;
    if vars.is_empty() || bases.iter().any(Vec::is_empty) {
        return Ok(None);
    }

    let mut choice = vec![0usize; vars.len()];
    loop {
        let units: Vec<(usize, usize)> = choice.iter().zip(&bases).map(|(&c, b)| b[c]).collect();
        let mut value: BTreeMap<(usize, usize), BigRational> = BTreeMap::new();
        for (slots, c) in &terms {
            if let Some(pos) = unit_product(slots.iter().map(|&s| units[s])) {
                let e = value.entry(pos).or_insert_with(BigRational::zero);
                *e = mode.reduce(&(&*e + c))?;
            }
        }
        if value.values().any(|c| !c.is_zero()) {
            return Ok(Some(vars.iter().cloned().zip(units).collect()));
        }
        // Odometer over basis choices.
        let mut slot = vars.len();
        loop {
            if slot == 0 {
                return Ok(None);
            }
            slot -= 1;
            choice[slot] += 1;
            if choice[slot] < bases[slot].len() {
                break;
            }
            choice[slot] = 0;
        }
    }
}

pub fn brute_force_multilinear_check(
    b: &GradedSubalgebra,
    f: &GradedPolynomial,
    mode: CoeffMode,
) -> Result<bool, GenericError> {
    Ok(brute_force_witness(b, f, mode)?.is_none())
}

/// `e_{i_1 j_1} ⋯ e_{i_p j_p}` as a position, or `None` when it vanishes.
pub(crate) fn unit_product(
    units: impl IntoIterator<Item = (usize, usize)>,
) -> Option<(usize, usize)> {
    let mut it = units.into_iter();
    let (first, mut last) = it.next()?;
    for (i, j) in it {
        if i != last {
            return None;
        }
        last = j;
    }
    Some((first, last))
}
