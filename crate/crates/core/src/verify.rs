//! Randomized and exhaustive invariant checks against one graded algebra.
//!
//! Every check draws its inputs from a ChaCha stream seeded by the caller, so
//! a run is reproducible; the checks themselves run in parallel and are
//! collected in input order.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::basis::basis_generators;
use crate::free::{multidegree, GradedPolynomial, GradedVariable, Word};
use crate::generic::{
    brute_force_multilinear_check, congruent_mod_u, evaluate, fingerprint, is_graded_identity,
    project_to_subalgebra,
};
use crate::grading::GradedSubalgebra;
use crate::group::GroupElement;
use crate::monomial::{
    certificate_is_sound, compose_maps, enumerate_monomial_identities, minimal_monomial_basis,
    reduce_monomial, DegreeSequence, Reduction,
};
use crate::omega::CoeffMode;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    /// Descriptions of failing cases, in input order.
    pub failures: Vec<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub seed: u64,
    /// Random cases per randomized check.
    pub samples: usize,
    /// Length bound for the exhaustive certificate check.
    pub max_deg: usize,
}

impl VerifyOptions {
    pub fn for_algebra(b: &GradedSubalgebra) -> VerifyOptions {
        VerifyOptions {
            seed: 0,
            samples: 200,
            max_deg: 2 * b.n() + 2,
        }
    }
}

/// Random inputs over a fixed algebra.
pub struct Sampler<'a> {
    b: &'a GradedSubalgebra,
    universe: &'a [GroupElement],
    rng: ChaCha8Rng,
}

impl<'a> Sampler<'a> {
    pub fn new(b: &'a GradedSubalgebra, universe: &'a [GroupElement], seed: u64) -> Sampler<'a> {
        Sampler {
            b,
            universe,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A support element most of the time, otherwise any universe element.
    pub fn degree(&mut self) -> GroupElement {
        let support = self.b.support();
        if self.universe.is_empty() || (!support.is_empty() && self.rng.gen_bool(0.9)) {
            support
                .choose(&mut self.rng)
                .expect("non-empty support")
                .clone()
        } else {
            self.universe
                .choose(&mut self.rng)
                .expect("non-empty")
                .clone()
        }
    }

    /// A word of length `1..=max_len` with copy indices in `1..=copies`.
    pub fn monomial(&mut self, max_len: usize, copies: u32) -> Word {
        let len = self.rng.gen_range(1..=max_len);
        (0..len)
            .map(|_| {
                let degree = self.degree();
                GradedVariable::new(degree, self.rng.gen_range(1..=copies))
            })
            .collect()
    }

    fn coefficient(&mut self) -> BigRational {
        let mut c = 0i64;
        while c == 0 {
            c = self.rng.gen_range(-3..=3);
        }
        BigRational::from_integer(BigInt::from(c))
    }

    /// A multilinear polynomial of arity `1..=max_arity`. Half of the samples
    /// have coefficients summing to zero on every fingerprint class, which
    /// makes identities common enough to exercise both verdicts.
    pub fn multilinear(&mut self, max_arity: usize) -> GradedPolynomial {
        let arity = self.rng.gen_range(1..=max_arity);
        let vars: Vec<GradedVariable> = (1..=arity as u32)
            .map(|i| GradedVariable::new(self.degree(), i))
            .collect();
        let mut words = permutations(&vars);
        words.shuffle(&mut self.rng);
        let balanced = self.rng.gen_bool(0.5);
        let take = self.rng.gen_range(1..=words.len().min(4));
        let mut f = GradedPolynomial::zero();
        if !balanced {
            for w in words.into_iter().take(take) {
                let c = self.coefficient();
                f.add_term(w, c).expect("non-empty word");
            }
            return f;
        }
        let mut groups: Vec<(Option<_>, Vec<Word>)> = Vec::new();
        for w in words.into_iter().take(take.max(2)) {
            let fp = fingerprint(self.b, &w).expect("valid degrees");
            match groups.iter_mut().find(|(k, _)| *k == fp) {
                Some((_, members)) => members.push(w),
                None => groups.push((fp, vec![w])),
            }
        }
        for (fp, members) in groups {
            let mut sum = BigRational::zero();
            let last = members.len() - 1;
            for (pos, w) in members.into_iter().enumerate() {
                let c = if fp.is_some() && pos == last {
                    -sum.clone()
                } else {
                    self.coefficient()
                };
                sum += &c;
                f.add_term(w, c).expect("non-empty word");
            }
        }
        f
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

fn permutations(vars: &[GradedVariable]) -> Vec<Word> {
    if vars.len() <= 1 {
        return vec![vars.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..vars.len() {
        let mut rest = vars.to_vec();
        let first = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, first.clone());
            out.push(tail);
        }
    }
    out
}

fn outcome(name: &'static str, results: Vec<Option<String>>) -> CheckOutcome {
    CheckOutcome {
        name,
        cases: results.len(),
        failures: results.into_iter().flatten().collect(),
    }
}

fn show(b: &GradedSubalgebra, w: &[GradedVariable]) -> String {
    crate::free::render_word(w, b.group(), crate::free::Notation::Plain)
}

/// Every identity word over `G_0` up to `max_deg` reduces, by sound moves,
/// to an element of the minimal monomial basis.
pub fn check_certificates(b: &GradedSubalgebra, max_deg: usize) -> CheckOutcome {
    let basis = minimal_monomial_basis(b);
    let words = enumerate_monomial_identities(b, max_deg);
    let group = b.group();
    let results = words
        .par_iter()
        .map(|w| {
            let target: DegreeSequence = match reduce_monomial(b, w) {
                Err(e) => return Some(format!("{}: {e}", w.display(group))),
                Ok(Reduction::Irreducible) => w.clone(),
                Ok(Reduction::Certificate(cert)) => {
                    if !certificate_is_sound(b, &cert) {
                        return Some(format!("{}: unsound certificate", w.display(group)));
                    }
                    cert.target().clone()
                }
            };
            (!basis.contains(&target)).then(|| {
                format!(
                    "{}: reduces to {} outside the minimal basis",
                    w.display(group),
                    target.display(group)
                )
            })
        })
        .collect();
    outcome("certificates", results)
}

pub fn check_basis_identities(
    b: &GradedSubalgebra,
    universe: &[GroupElement],
    mode: CoeffMode,
) -> CheckOutcome {
    let generators = match basis_generators(b, universe) {
        Ok(g) => g,
        Err(e) => {
            return CheckOutcome {
                name: "basis identities",
                cases: 0,
                failures: vec![e.to_string()],
            }
        }
    };
    let results = generators
        .par_iter()
        .map(|g| match is_graded_identity(b, &g.polynomial, mode) {
            Ok(true) => None,
            Ok(false) => Some(format!("{} is not an identity", g.tag(b))),
            Err(e) => Some(format!("{}: {e}", g.tag(b))),
        })
        .collect();
    outcome("basis identities", results)
}

/// The generic oracle and exhaustive unit substitution agree on
/// multilinear polynomials.
pub fn check_oracle_equivalence(
    b: &GradedSubalgebra,
    mode: CoeffMode,
    samples: &[GradedPolynomial],
) -> CheckOutcome {
    let results = samples
        .par_iter()
        .map(|f| {
            let generic = is_graded_identity(b, f, mode);
            let brute = brute_force_multilinear_check(b, f, mode);
            match (generic, brute) {
                (Ok(x), Ok(y)) if x == y => None,
                (x, y) => Some(format!(
                    "{}: generic {x:?}, substitution {y:?}",
                    f.pretty(b.group(), crate::free::Notation::Plain)
                )),
            }
        })
        .collect();
    outcome("oracle equivalence", results)
}

/// The generic evaluation of a monomial has at most one entry per row, each
/// a monomial with coefficient 1, on exactly the rows of the composed
/// domain, in column `ν(i)`; the path-walk fingerprint agrees with it.
pub fn check_evaluation_lines(
    b: &GradedSubalgebra,
    mode: CoeffMode,
    samples: &[Word],
) -> CheckOutcome {
    let results = samples
        .par_iter()
        .map(|w| lines_failure(b, mode, w).map(|why| format!("{}: {why}", show(b, w))))
        .collect();
    outcome("evaluation lines", results)
}

fn lines_failure(b: &GradedSubalgebra, mode: CoeffMode, w: &Word) -> Option<String> {
    let degrees: Vec<GroupElement> = w.iter().map(|v| v.degree.clone()).collect();
    let nu = match compose_maps(b, &degrees) {
        Ok(m) => m,
        Err(e) => return Some(e.to_string()),
    };
    let f = GradedPolynomial::monomial(w.clone(), BigRational::one()).expect("non-empty");
    let m = match evaluate(b, &f, mode) {
        Ok(m) => m,
        Err(e) => return Some(e.to_string()),
    };
    let mut entries = Vec::new();
    for ((i, j), p) in m.entries() {
        if nu.get(i) != Some(j) {
            return Some(format!("entry ({i},{j}) off the path"));
        }
        let terms: Vec<_> = p.terms().collect();
        if terms.len() != 1 || !terms[0].1.is_one() {
            return Some(format!("entry ({i},{j}) is not a unit monomial"));
        }
        entries.push((i, j, terms[0].0.clone()));
    }
    if entries.len() != nu.domain_size() {
        return Some("nonzero rows differ from the composed domain".into());
    }
    let fast = match fingerprint(b, w) {
        Ok(fp) => fp,
        Err(e) => return Some(e.to_string()),
    };
    let agrees = match &fast {
        None => entries.is_empty(),
        Some(fp) => fp.entries() == entries.as_slice(),
    };
    (!agrees).then(|| "fingerprint differs from the evaluation".into())
}

/// For monomials of equal multidegree: sharing one fingerprint entry,
/// full fingerprint equality, and `evaluate(m1 - m2) = 0` coincide.
pub fn check_congruence(
    b: &GradedSubalgebra,
    mode: CoeffMode,
    pairs: &[(Word, Word)],
) -> CheckOutcome {
    let results = pairs
        .par_iter()
        .map(|(m1, m2)| {
            let shared = congruent_mod_u(b, m1, m2).ok()?;
            let (f1, f2) = (fingerprint(b, m1).ok()?, fingerprint(b, m2).ok()?);
            let equal = f1.is_some() && f1 == f2;
            let one = BigRational::one();
            let diff = GradedPolynomial::monomial(m1.clone(), one.clone())
                .expect("non-empty")
                .sub(&GradedPolynomial::monomial(m2.clone(), one).expect("non-empty"));
            let both_zero = f1.is_none() && f2.is_none();
            let vanishes = is_graded_identity(b, &diff, mode).ok()?;
            // Two identity monomials are trivially congruent.
            let consistent = (shared == equal) && (equal || both_zero) == vanishes;
            (!consistent).then(|| {
                format!(
                    "{} vs {}: shared {shared}, equal {equal}, difference vanishes {vanishes}",
                    show(b, m1),
                    show(b, m2)
                )
            })
        })
        .collect();
    outcome("congruence", results)
}

/// `Θ(evaluate_A(m)) = evaluate_B(m)` with `A` the full matrix algebra.
pub fn check_projection(b: &GradedSubalgebra, mode: CoeffMode, samples: &[Word]) -> CheckOutcome {
    let a = b.ambient();
    let results = samples
        .par_iter()
        .map(|w| {
            let f = GradedPolynomial::monomial(w.clone(), BigRational::one()).expect("non-empty");
            match (evaluate(&a, &f, mode), evaluate(b, &f, mode)) {
                (Ok(ma), Ok(mb)) if project_to_subalgebra(&ma, b) == mb => None,
                (Ok(_), Ok(_)) => Some(format!("{}: projection differs", show(b, w))),
                (x, y) => Some(format!("{}: {:?} / {:?}", show(b, w), x.err(), y.err())),
            }
        })
        .collect();
    outcome("projection", results)
}

/// Runs every check. Inputs are drawn sequentially from one stream, so the
/// result does not depend on the worker count.
pub fn run_suite(
    b: &GradedSubalgebra,
    universe: &[GroupElement],
    mode: CoeffMode,
    opts: &VerifyOptions,
) -> Vec<CheckOutcome> {
    let mut sampler = Sampler::new(b, universe, opts.seed);
    let polys: Vec<GradedPolynomial> = (0..opts.samples).map(|_| sampler.multilinear(4)).collect();
    let monomials: Vec<Word> = (0..opts.samples).map(|_| sampler.monomial(6, 3)).collect();
    let pairs: Vec<(Word, Word)> = (0..opts.samples)
        .map(|_| {
            let m1 = sampler.monomial(4, 2);
            let mut m2 = m1.clone();
            m2.shuffle(sampler.rng());
            debug_assert_eq!(multidegree(&m1), multidegree(&m2));
            (m1, m2)
        })
        .collect();
    let ambient = b.ambient();
    let ambient_words: Vec<Word> = {
        let mut s = Sampler::new(&ambient, &[], opts.seed.wrapping_add(1));
        (0..opts.samples).map(|_| s.monomial(6, 2)).collect()
    };
    vec![
        check_certificates(b, opts.max_deg),
        check_basis_identities(b, universe, mode),
        check_oracle_equivalence(b, mode, &polys),
        check_evaluation_lines(b, mode, &monomials),
        check_congruence(b, mode, &pairs),
        check_projection(b, mode, &ambient_words),
    ]
}
