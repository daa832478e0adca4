use std::collections::BTreeMap;

use num_integer::Integer;
use rayon::prelude::*;

use super::{Bicharacter, SignedPolynomial, TensorError};
use crate::cyclo::Cyclotomic;
use crate::free::{GradedVariable, Word};
use crate::generic::unit_product;
use crate::grading::GradedSubalgebra;
use crate::group::{Group, GroupElement};

/// A finite-dimensional stand-in for `E` or `C`: a basis of words, graded by
/// `H`, with products `a·b = ζ_m^e · w` or zero.
pub trait Model: Sync {
    type Word: Clone + Ord + Send + Sync;

    fn h_group(&self) -> &Group;

    fn root_order(&self) -> u32;

    /// Independent generators available in each non-neutral degree.
    fn capacity(&self) -> usize;

    fn words(&self, h: &GroupElement) -> Vec<Self::Word>;

    fn multiply(&self, a: &Self::Word, b: &Self::Word) -> Option<(Self::Word, u32)>;
}

/// Grassmann algebra on `k` generators; words are bit masks.
#[derive(Debug, Clone)]
pub struct GrassmannModel {
    k: u32,
}

impl GrassmannModel {
    pub fn new(k: u32) -> GrassmannModel {
        assert!(k <= 16, "Grassmann truncation too large");
        let model = GrassmannModel { k };
        if k <= 4 {
            debug_assert!(model.is_associative());
        }
        model
    }

    pub fn generators(&self) -> u32 {
        self.k
    }

    /// `e_a e_b` for masks; the sign counts pairs `i ∈ a`, `j ∈ b`, `i > j`.
    pub fn product(a: u32, b: u32) -> Option<(u32, bool)> {
        if a & b != 0 {
            return None;
        }
        let mut swaps = 0u32;
        let mut rest = b;
        while rest != 0 {
            let j = rest.trailing_zeros();
            swaps += (a >> (j + 1)).count_ones();
            rest &= rest - 1;
        }
        Some((a | b, swaps % 2 == 1))
    }

    fn is_associative(&self) -> bool {
        let all = 1u32 << self.k;
        let mul = |x: Option<(u32, bool)>, y: u32| {
            x.and_then(|(w, s)| GrassmannModel::product(w, y).map(|(w2, s2)| (w2, s ^ s2)))
        };
        (0..all).all(|a| {
            (0..all).all(|b| {
                (0..all).all(|c| {
                    let left = mul(GrassmannModel::product(a, b), c);
                    let right = GrassmannModel::product(b, c).and_then(|(bc, s)| {
                        GrassmannModel::product(a, bc).map(|(w, s2)| (w, s ^ s2))
                    });
                    left == right
                })
            })
        })
    }
}

impl Model for GrassmannModel {
    type Word = u32;

    fn h_group(&self) -> &Group {
        static Z2: Group = Group::Cyclic(2);
        &Z2
    }

    fn root_order(&self) -> u32 {
        2
    }

    fn capacity(&self) -> usize {
        self.k as usize
    }

    fn words(&self, h: &GroupElement) -> Vec<u32> {
        let parity = match h {
            GroupElement::Residue(p) if *p < 2 => *p as u32,
            _ => return Vec::new(),
        };
        (0..1u32 << self.k)
            .filter(|w| w.count_ones() % 2 == parity)
            .collect()
    }

    fn multiply(&self, a: &u32, b: &u32) -> Option<(u32, u32)> {
        GrassmannModel::product(*a, *b).map(|(w, neg)| (w, u32::from(neg)))
    }
}

/// Free `β`-commutative algebra on `copies` generators per non-neutral
/// degree of `H`, with substitution words of length at most `max_len`.
/// Generators with `β(h,h) = -1` square to zero. Products are computed in
/// the untruncated algebra.
#[derive(Debug, Clone)]
pub struct ColorModel {
    beta: Bicharacter,
    copies: usize,
    max_len: usize,
    degrees: Vec<GroupElement>,
    odd: Vec<bool>,
    words: BTreeMap<GroupElement, Vec<Vec<u32>>>,
}

impl ColorModel {
    pub fn new(
        beta: Bicharacter,
        copies: usize,
        max_len: usize,
    ) -> Result<ColorModel, TensorError> {
        let h = beta.h().clone();
        let zero = h.identity();
        let mut degrees = Vec::new();
        let mut odd = Vec::new();
        for x in beta.elements().iter().filter(|x| **x != zero) {
            for _ in 0..copies {
                degrees.push(x.clone());
                odd.push(beta.is_odd(x)?);
            }
        }
        let mut model = ColorModel {
            beta,
            copies,
            max_len,
            degrees,
            odd,
            words: BTreeMap::new(),
        };
        let mut words: BTreeMap<GroupElement, Vec<Vec<u32>>> = BTreeMap::new();
        let mut current = Vec::new();
        model.collect_words(0, &mut current, &mut words);
        model.words = words;
        Ok(model)
    }

    pub fn beta(&self) -> &Bicharacter {
        &self.beta
    }

    fn degree_of(&self, word: &[u32]) -> GroupElement {
        let h = self.beta.h();
        word.iter().fold(h.identity(), |acc, &g| {
            h.op(&acc, &self.degrees[g as usize])
        })
    }

    fn collect_words(
        &self,
        from: u32,
        current: &mut Vec<u32>,
        out: &mut BTreeMap<GroupElement, Vec<Vec<u32>>>,
    ) {
        out.entry(self.degree_of(current))
            .or_default()
            .push(current.clone());
        if current.len() == self.max_len {
            return;
        }
        for g in from..self.degrees.len() as u32 {
            if self.odd[g as usize] && current.last() == Some(&g) {
                continue;
            }
            current.push(g);
            let next = if self.odd[g as usize] { g + 1 } else { g };
            self.collect_words(next, current, out);
            current.pop();
        }
    }
}

impl Model for ColorModel {
    type Word = Vec<u32>;

    fn h_group(&self) -> &Group {
        self.beta.h()
    }

    fn root_order(&self) -> u32 {
        self.beta.m()
    }

    fn capacity(&self) -> usize {
        self.copies
    }

    fn words(&self, h: &GroupElement) -> Vec<Vec<u32>> {
        self.words.get(h).cloned().unwrap_or_default()
    }

    /// Moving `y` left past `x` uses `xy = β(deg x, deg y) yx`.
    fn multiply(&self, a: &Vec<u32>, b: &Vec<u32>) -> Option<(Vec<u32>, u32)> {
        let m = self.beta.m();
        let mut exp = 0u32;
        for &y in b {
            if self.odd[y as usize] && a.contains(&y) {
                return None;
            }
            for &x in a.iter().filter(|&&x| x > y) {
                let e = self
                    .beta
                    .exponent(&self.degrees[x as usize], &self.degrees[y as usize])
                    .expect("degree of H");
                exp = (exp + e) % m;
            }
        }
        let mut w = a.clone();
        w.extend_from_slice(b);
        w.sort_unstable();
        Some((w, exp))
    }
}

fn split(v: &GradedVariable) -> Result<(&GroupElement, &GroupElement), TensorError> {
    match &v.degree {
        GroupElement::Tuple(items) if items.len() == 2 => Ok((&items[0], &items[1])),
        other => Err(TensorError::ForeignDegree(format!("{other:?}"))),
    }
}

/// Exhaustive multilinear substitution of `e_{ij} ⊗ w` for every variable of
/// degree `(g,h)`, with `e_{ij}` a unit of `B_g` and `w` a model word of degree
/// `h`. True iff every substitution gives zero.
pub fn tensor_evaluate<M: Model>(
    b: &GradedSubalgebra,
    model: &M,
    f: &SignedPolynomial,
) -> Result<bool, TensorError> {
    if !f.is_multilinear() {
        return Err(TensorError::NotMultilinear);
    }
    let vars: Vec<GradedVariable> = f.variables().into_iter().collect();
    if vars.len() > model.capacity() {
        return Err(TensorError::TruncationTooSmall {
            needed: vars.len(),
            available: model.capacity(),
        });
    }
    let mut choices = Vec::with_capacity(vars.len());
    for v in &vars {
        let (g, h) = split(v)?;
        if !model.h_group().contains(h) {
            return Err(TensorError::ForeignDegree(format!("{h:?}")));
        }
        let units = b.component_basis(g)?;
        let words = model.words(h);
        let options: Vec<((usize, usize), M::Word)> = units
            .iter()
            .flat_map(|u| words.iter().map(move |w| (*u, w.clone())))
            .collect();
        choices.push(options);
    }
    if vars.is_empty() || choices.iter().any(Vec::is_empty) {
        return Ok(true);
    }
    let order = f.root_order().lcm(&model.root_order());
    let terms: Vec<(Vec<usize>, Cyclotomic)> = f
        .terms()
        .map(|(w, c)| (slots(&vars, w), c.lift(order)))
        .collect();
    let model_step = order / model.root_order();

    let nonzero = (0..choices[0].len()).into_par_iter().any(|first| {
        let mut pick = vec![0usize; vars.len()];
        pick[0] = first;
        loop {
            let mut value: BTreeMap<((usize, usize), M::Word), Cyclotomic> = BTreeMap::new();
            for (slots, c) in &terms {
                let Some(pos) = unit_product(slots.iter().map(|&s| choices[s][pick[s]].0)) else {
                    continue;
                };
                let mut word = choices[slots[0]][pick[slots[0]]].1.clone();
                let mut exp = 0u32;
                let mut alive = true;
                for &s in &slots[1..] {
                    match model.multiply(&word, &choices[s][pick[s]].1) {
                        Some((w, e)) => {
                            word = w;
                            exp += e;
                        }
                        None => {
                            alive = false;
                            break;
                        }
                    }
                }
                if alive {
                    let term = c.mul_root(exp * model_step % order);
                    let entry = value
                        .entry((pos, word))
                        .or_insert_with(|| Cyclotomic::zero(order));
                    *entry = entry.add(&term);
                }
            }
            if value.values().any(|v| !v.is_zero()) {
                return true;
            }
            let mut slot = vars.len();
            loop {
                slot -= 1;
                if slot == 0 {
                    return false;
                }
                pick[slot] += 1;
                if pick[slot] < choices[slot].len() {
                    break;
                }
                pick[slot] = 0;
            }
        }
    });
    Ok(!nonzero)
}

fn slots(vars: &[GradedVariable], word: &Word) -> Vec<usize> {
    word.iter()
        .map(|v| vars.binary_search(v).expect("variable of f"))
        .collect()
}
