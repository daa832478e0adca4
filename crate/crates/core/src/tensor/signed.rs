use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{BetaTable, TensorError};
use crate::cyclo::Cyclotomic;
use crate::free::{render_terms, render_word, GradedPolynomial, GradedVariable, Notation, Word};
use crate::group::{Group, GroupElement};

/// Polynomial over `G × H` with coefficients in `Q(ζ_m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPolynomial {
    group: Group,
    m: u32,
    terms: BTreeMap<Word, Cyclotomic>,
}

impl SignedPolynomial {
    pub fn zero(group: Group, m: u32) -> SignedPolynomial {
        SignedPolynomial {
            group,
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn group(&self) -> &Group {
        &self.group
    }

    pub fn root_order(&self) -> u32 {
        self.m
    }

    pub fn add_term(&mut self, word: Word, coeff: Cyclotomic) {
        let coeff = if coeff.order() == self.m {
            coeff
        } else {
            coeff.lift(self.m)
        };
        let entry = self
            .terms
            .entry(word.clone())
            .or_insert_with(|| Cyclotomic::zero(self.m));
        *entry = entry.add(&coeff);
        if entry.is_zero() {
            self.terms.remove(&word);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn variables(&self) -> BTreeSet<GradedVariable> {
        self.terms.keys().flat_map(|w| w.iter().cloned()).collect()
    }

    pub fn arity(&self) -> usize {
        self.variables().len()
    }

    pub fn is_multilinear(&self) -> bool {
        let vars = self.variables();
        self.terms
            .keys()
            .all(|w| w.len() == vars.len() && w.iter().collect::<BTreeSet<_>>().len() == w.len())
    }

    /// Parity notation is used when `H = Z_2`.
    pub fn notation(&self) -> Notation {
        match &self.group {
            Group::Product(f) if f.len() == 2 && f[1] == Group::Cyclic(2) => Notation::Parity,
            _ => Notation::Plain,
        }
    }

    /// Terms are listed by their sequence of variable indices, so a
    /// permuted product follows the product it was permuted from.
    pub fn pretty(&self) -> String {
        let notation = self.notation();
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(w, _)| w.iter().map(|v| v.index).collect::<Vec<_>>());
        render_terms(terms.into_iter(), Cyclotomic::coefficient_text, |w| {
            render_word(w, &self.group, notation)
        })
    }

    /// Representative up to variable relabeling and a nonzero scalar: some
    /// term is taken as leader, variables are renumbered `1, 2, …` in order
    /// of first occurrence in it, and its coefficient is scaled to 1. The
    /// smallest result over all leaders is returned.
    pub fn canonical(&self) -> SignedPolynomial {
        let mut best: Option<SignedPolynomial> = None;
        for (leader, lead_coeff) in &self.terms {
            let mut relabel: BTreeMap<&GradedVariable, u32> = BTreeMap::new();
            for v in leader {
                let next = relabel.len() as u32 + 1;
                relabel.entry(v).or_insert(next);
            }
            // Variables absent from the leader follow in their natural order.
            for v in self
                .terms
                .keys()
                .flat_map(|w| w.iter())
                .collect::<BTreeSet<_>>()
            {
                let next = relabel.len() as u32 + 1;
                relabel.entry(v).or_insert(next);
            }
            let inverse = invert(lead_coeff);
            let mut out = SignedPolynomial::zero(self.group.clone(), self.m);
            for (w, c) in &self.terms {
                let word = w
                    .iter()
                    .map(|v| GradedVariable::new(v.degree.clone(), relabel[v]))
                    .collect();
                out.add_term(word, c.mul(&inverse));
            }
            if best.as_ref().is_none_or(|b| out.key() < b.key()) {
                best = Some(out);
            }
        }
        best.unwrap_or_else(|| self.clone())
    }

    fn key(&self) -> Vec<(&Word, &Cyclotomic)> {
        self.terms.iter().collect()
    }
}

/// Inverse of a nonzero coefficient. Coefficients produced here are always
/// rational multiples of roots of unity.
fn invert(c: &Cyclotomic) -> Cyclotomic {
    let (q, e) = c
        .as_scaled_root()
        .expect("coefficient is a scaled root of unity");
    let m = c.order();
    Cyclotomic::root(m, (m - e % m) % m).scale(&(BigRational::one() / q))
}

fn check_multilinear(f: &GradedPolynomial) -> Result<Vec<u32>, TensorError> {
    if !f.is_multilinear() {
        return Err(TensorError::NotMultilinear);
    }
    let vars = f.variables();
    let indices: BTreeSet<u32> = vars.iter().map(|v| v.index).collect();
    if indices.len() != vars.len() {
        return Err(TensorError::DuplicateIndex);
    }
    Ok(indices.into_iter().collect())
}

/// `λ` for the word whose `t`-th letter is the variable with index
/// `sigma[t]` (1-based): the product over inversions `a > b`, `a` written
/// before `b`, of `β(h_b, h_a)`. Computed by bubble sort.
pub fn lambda_sigma(
    beta: &BetaTable,
    h: &[GroupElement],
    sigma: &[usize],
) -> Result<u32, TensorError> {
    if h.len() != sigma.len() {
        return Err(TensorError::LengthMismatch {
            expected: h.len(),
            found: sigma.len(),
        });
    }
    let mut seen = vec![false; sigma.len()];
    for &s in sigma {
        if s == 0 || s > sigma.len() || std::mem::replace(&mut seen[s - 1], true) {
            return Err(TensorError::NotAPermutation(sigma.to_vec()));
        }
    }
    let mut word = sigma.to_vec();
    let mut exp = 0u32;
    let m = beta.m();
    loop {
        let mut swapped = false;
        for t in 0..word.len().saturating_sub(1) {
            let (a, b) = (word[t], word[t + 1]);
            if a > b {
                exp = (exp + beta.exponent(&h[b - 1], &h[a - 1])?) % m;
                word.swap(t, t + 1);
                swapped = true;
            }
        }
        if !swapped {
            return Ok(exp);
        }
    }
}

fn product_group(g: &Group, h: &Group) -> Group {
    Group::Product(vec![g.clone(), h.clone()])
}

fn pair(g: &GroupElement, h: &GroupElement) -> GroupElement {
    GroupElement::Tuple(vec![g.clone(), h.clone()])
}

/// `ζ_J`: variables with index in `J` become odd and each monomial is
/// multiplied by the sign of the order in which its odd variables occur.
pub fn zeta_j(
    g: &Group,
    f: &GradedPolynomial,
    j: &BTreeSet<u32>,
) -> Result<SignedPolynomial, TensorError> {
    check_multilinear(f)?;
    let mut out = SignedPolynomial::zero(product_group(g, &Group::Cyclic(2)), 2);
    for (word, c) in f.terms() {
        let odd: Vec<u32> = word
            .iter()
            .map(|v| v.index)
            .filter(|i| j.contains(i))
            .collect();
        let inversions = (0..odd.len())
            .flat_map(|a| (a + 1..odd.len()).map(move |b| (a, b)))
            .filter(|&(a, b)| odd[a] > odd[b])
            .count();
        let sign = if inversions % 2 == 0 {
            c.clone()
        } else {
            -c.clone()
        };
        let new_word = word
            .iter()
            .map(|v| {
                let parity = GroupElement::Residue(u64::from(j.contains(&v.index)));
                GradedVariable::new(pair(&v.degree, &parity), v.index)
            })
            .collect();
        out.add_term(new_word, Cyclotomic::from_rational(2, sign));
    }
    Ok(out)
}

/// `φ_h`: the variable of index `i` gets degree `(g, h_i)` and each monomial
/// is multiplied by its reordering scalar `λ`. `h` is indexed by variable
/// index, so `h[i-1]` belongs to `x^{(i)}`.
pub fn phi_h(
    g: &Group,
    f: &GradedPolynomial,
    h: &[GroupElement],
    beta: &BetaTable,
) -> Result<SignedPolynomial, TensorError> {
    let indices = check_multilinear(f)?;
    if let Some(&max) = indices.last() {
        if max as usize > h.len() {
            return Err(TensorError::LengthMismatch {
                expected: max as usize,
                found: h.len(),
            });
        }
    }
    for x in h {
        if !beta.h().contains(x) {
            return Err(TensorError::ForeignDegree(format!("{x:?}")));
        }
    }
    let m = beta.m();
    let mut out = SignedPolynomial::zero(product_group(g, beta.h()), m);
    // Positions of the used indices; λ only depends on their relative order.
    let rank: BTreeMap<u32, usize> = indices
        .iter()
        .enumerate()
        .map(|(r, &i)| (i, r + 1))
        .collect();
    let local_h: Vec<GroupElement> = indices.iter().map(|&i| h[i as usize - 1].clone()).collect();
    for (word, c) in f.terms() {
        let sigma: Vec<usize> = word.iter().map(|v| rank[&v.index]).collect();
        let lambda = lambda_sigma(beta, &local_h, &sigma)?;
        let new_word = word
            .iter()
            .map(|v| GradedVariable::new(pair(&v.degree, &h[v.index as usize - 1]), v.index))
            .collect();
        out.add_term(new_word, Cyclotomic::root(m, lambda).scale(c));
    }
    Ok(out)
}

impl SignedPolynomial {
    /// Lifts a rational polynomial unchanged.
    pub fn from_graded(group: Group, f: &GradedPolynomial) -> SignedPolynomial {
        let mut out = SignedPolynomial::zero(group, 1);
        for (w, c) in f.terms() {
            if !c.is_zero() {
                out.add_term(w.clone(), Cyclotomic::from_rational(1, c.clone()));
            }
        }
        out
    }
}
