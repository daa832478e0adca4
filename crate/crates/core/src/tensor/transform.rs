use num_rational::BigRational;

use super::{phi_h, Bicharacter, SignedPolynomial, TensorError};
use crate::basis::{basis_generators, BasisGenerator, GeneratorKind};
use crate::cyclo::Cyclotomic;
use crate::free::GradedVariable;
use crate::grading::GradedSubalgebra;
use crate::group::{Group, GroupElement};

/// One image `φ_h(f)` of a basis generator, in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformedIdentity {
    pub tag: String,
    pub source: String,
    pub h: Vec<GroupElement>,
    /// Display form: the listed template when one matches, otherwise the
    /// canonical form.
    pub polynomial: SignedPolynomial,
    /// Representative up to relabeling and scalar, used for deduplication.
    pub canonical: SignedPolynomial,
}

type Letter<'a> = (&'a GroupElement, u64, u32);

fn template(group: &Group, terms: &[(i64, Vec<Letter<'_>>)]) -> SignedPolynomial {
    let mut p = SignedPolynomial::zero(group.clone(), 2);
    for (sign, letters) in terms {
        let word = letters
            .iter()
            .map(|(g, parity, i)| {
                GradedVariable::new(
                    GroupElement::Tuple(vec![(*g).clone(), GroupElement::Residue(*parity)]),
                    *i,
                )
            })
            .collect();
        p.add_term(
            word,
            Cyclotomic::from_rational(2, BigRational::from_integer((*sign).into())),
        );
    }
    p
}

/// The list (7)–(13) over `G × Z_2` for the support of `b`, as
/// `(tag, polynomial, canonical form)`.
/// (7) appears for `z = x` and `z = y`, as does (9); (9)–(13) are repeated
/// for every `g ≠ e` in the support.
pub fn grassmann_templates(
    b: &GradedSubalgebra,
) -> Vec<(String, SignedPolynomial, SignedPolynomial)> {
    let group = b.group();
    let pg = Group::Product(vec![group.clone(), Group::Cyclic(2)]);
    let e = group.identity();
    let mut out = Vec::new();
    if b.in_support(&e) {
        for z in [0, 1] {
            out.push((
                "(7)".to_string(),
                template(
                    &pg,
                    &[
                        (1, vec![(&e, 0, 1), (&e, z, 2)]),
                        (-1, vec![(&e, z, 2), (&e, 0, 1)]),
                    ],
                ),
            ));
        }
        out.push((
            "(8)".to_string(),
            template(
                &pg,
                &[
                    (1, vec![(&e, 1, 1), (&e, 1, 2)]),
                    (1, vec![(&e, 1, 2), (&e, 1, 1)]),
                ],
            ),
        ));
    }
    for g in b.support().iter().filter(|g| **g != e) {
        let gi = group.inv(g);
        let name = b.display(g);
        // (tag, parities of x_g^{(1)}, x_{g^-1}^{(2)}, x_g^{(3)}, sign of the second term)
        let rows: [(&str, [u64; 3], i64); 6] = [
            ("9", [0, 0, 0], -1),
            ("9", [1, 0, 0], -1),
            ("10", [0, 1, 0], -1),
            ("11", [1, 1, 0], 1),
            ("12", [1, 0, 1], 1),
            ("13", [1, 1, 1], 1),
        ];
        for (tag, [p1, p2, p3], sign) in rows {
            out.push((
                format!("({tag}:{name})"),
                template(
                    &pg,
                    &[
                        (1, vec![(g, p1, 1), (&gi, p2, 2), (g, p3, 3)]),
                        (sign, vec![(g, p3, 3), (&gi, p2, 2), (g, p1, 1)]),
                    ],
                ),
            ));
        }
    }
    out.into_iter()
        .map(|(t, p)| {
            let c = p.canonical();
            (t, p, c)
        })
        .collect()
}

fn tuples(elements: &[GroupElement], k: usize) -> Vec<Vec<GroupElement>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                elements.iter().map(move |x| {
                    let mut p = prefix.clone();
                    p.push(x.clone());
                    p
                })
            })
            .collect();
    }
    out
}

fn fallback_tag(
    b: &GradedSubalgebra,
    beta: &Bicharacter,
    gen: &BasisGenerator,
    h: &[GroupElement],
) -> String {
    let hg = beta.h();
    let sep = if *hg == Group::Cyclic(2) { "" } else { "," };
    let hs: Vec<String> = h.iter().map(|x| hg.display(x)).collect();
    let hs = hs.join(sep);
    match &gen.kind {
        GeneratorKind::Monomial(_) => format!("(mon:{hs})"),
        GeneratorKind::Zero(g) => format!("(5:{}:{hs})", b.display(g)),
        _ => format!("{}[{hs}]", gen.tag(b)),
    }
}

/// All canonical images `φ_h(f)` for `f` among the basis generators of `b`
/// and `h ∈ H^{arity(f)}`, without repetitions, in generation order.
pub fn transform_basis(
    b: &GradedSubalgebra,
    beta: &Bicharacter,
    universe: &[GroupElement],
) -> Result<Vec<TransformedIdentity>, TensorError> {
    let generators = basis_generators(b, universe)?;
    let templates = if beta.is_grassmann() {
        grassmann_templates(b)
    } else {
        Vec::new()
    };
    let mut out: Vec<TransformedIdentity> = Vec::new();
    for gen in &generators {
        let arity = gen.polynomial.arity();
        for h in tuples(beta.elements(), arity) {
            let canonical = phi_h(b.group(), &gen.polynomial, &h, beta)?.canonical();
            if out.iter().any(|t| t.canonical == canonical) {
                continue;
            }
            let (tag, polynomial) = match templates.iter().find(|(_, _, c)| *c == canonical) {
                Some((t, p, _)) => (t.clone(), p.clone()),
                None => (fallback_tag(b, beta, gen, &h), canonical.clone()),
            };
            out.push(TransformedIdentity {
                tag,
                source: gen.tag(b),
                h,
                polynomial,
                canonical,
            });
        }
    }
    Ok(out)
}
