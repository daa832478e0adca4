//! Shared helpers: fixture loading and an oracle that works with explicit
//! matrix units over cyclic groups, without going through generic matrices.

#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use gradpi::config::{Job, JobConfig, Overrides};
use gradpi::free::GradedPolynomial;
use gradpi::{induce_grading, GradedSubalgebra, Group, GroupElement, UnitSet};
use num_rational::BigRational;
use num_traits::Zero;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn fixture(name: &str) -> Job {
    let path = fixture_path(name);
    JobConfig::load(&path)
        .unwrap()
        .build(&Overrides::default(), path.parent())
        .unwrap()
}

pub fn r(v: u64) -> GroupElement {
    GroupElement::Residue(v)
}

/// `B ⊆ M_n` over `Z_m` with tuple `(0, 1, …, n-1)`; `blocks = None` gives
/// the full matrix algebra.
pub fn cyclic_algebra(m: u64, n: usize, blocks: Option<&[usize]>) -> GradedSubalgebra {
    let g = Group::cyclic(m).unwrap();
    let tuple: Vec<GroupElement> = (0..n as u64).map(r).collect();
    let units = match blocks {
        Some(b) => UnitSet::block_triangular(b).unwrap(),
        None => UnitSet::full(n),
    };
    induce_grading(&g, &tuple, &units).unwrap()
}

/// Matrix units of a subalgebra over `Z_m`, graded by `t_j - t_i mod m`.
#[derive(Debug, Clone)]
pub struct UnitOracle {
    pub m: u64,
    pub tuple: Vec<u64>,
    pub units: Vec<(usize, usize)>,
}

impl UnitOracle {
    pub fn new(m: u64, tuple: Vec<u64>, units: Vec<(usize, usize)>) -> UnitOracle {
        UnitOracle { m, tuple, units }
    }

    /// Upper block triangular units for the given block sizes.
    pub fn blocks(m: u64, tuple: Vec<u64>, blocks: &[usize]) -> UnitOracle {
        let mut block_of = Vec::new();
        for (k, &size) in blocks.iter().enumerate() {
            block_of.extend(std::iter::repeat_n(k, size));
        }
        let n = block_of.len();
        let units = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| (i, j)))
            .filter(|&(i, j)| block_of[i - 1] <= block_of[j - 1])
            .collect();
        UnitOracle::new(m, tuple, units)
    }

    pub fn full(m: u64, tuple: Vec<u64>) -> UnitOracle {
        let n = tuple.len();
        UnitOracle::blocks(m, tuple, &[n])
    }

    pub fn degree(&self, i: usize, j: usize) -> u64 {
        (self.tuple[j - 1] + self.m - self.tuple[i - 1]) % self.m
    }

    pub fn units_of(&self, g: u64) -> Vec<(usize, usize)> {
        self.units
            .iter()
            .copied()
            .filter(|&(i, j)| self.degree(i, j) == g)
            .collect()
    }

    /// Whether a product of matrix units of the given degrees can be nonzero.
    pub fn monomial_vanishes(&self, degrees: &[u64]) -> bool {
        let n = self.tuple.len();
        // Reachable (start, current) pairs.
        let mut live: Vec<(usize, usize)> = (1..=n).map(|i| (i, i)).collect();
        for &g in degrees {
            let units = self.units_of(g);
            live = live
                .into_iter()
                .flat_map(|(s, c)| {
                    units
                        .iter()
                        .filter(move |(i, _)| *i == c)
                        .map(move |&(_, j)| (s, j))
                })
                .collect();
        }
        live.is_empty()
    }

    /// Substitutes every choice of matrix units into a multilinear
    /// polynomial with residue degrees; true iff all values vanish.
    pub fn multilinear_identity(&self, f: &GradedPolynomial) -> bool {
        let vars: Vec<_> = f.variables().into_iter().collect();
        let options: Vec<Vec<(usize, usize)>> = vars
            .iter()
            .map(|v| match v.degree {
                GroupElement::Residue(g) => self.units_of(g),
                _ => panic!("residue degrees only"),
            })
            .collect();
        if options.iter().any(Vec::is_empty) {
            return true;
        }
        let mut pick = vec![0usize; vars.len()];
        loop {
            let mut value: BTreeMap<(usize, usize), BigRational> = BTreeMap::new();
            for (w, c) in f.terms() {
                let mut pos: Option<(usize, usize)> = None;
                let mut alive = true;
                for v in w {
                    let k = vars.iter().position(|x| x == v).unwrap();
                    let (i, j) = options[k][pick[k]];
                    pos = match pos {
                        None => Some((i, j)),
                        Some((a, b)) if b == i => Some((a, j)),
                        Some(_) => {
                            alive = false;
                            break;
                        }
                    };
                }
                if alive {
                    *value.entry(pos.unwrap()).or_insert_with(BigRational::zero) += c;
                }
            }
            if value.values().any(|c| !c.is_zero()) {
                return false;
            }
            let mut k = vars.len();
            loop {
                if k == 0 {
                    return true;
                }
                k -= 1;
                pick[k] += 1;
                if pick[k] < options[k].len() {
                    break;
                }
                pick[k] = 0;
            }
        }
    }
}
