use std::fmt;

use serde::{Deserialize, Serialize};

use super::TensorError;
use crate::cyclo::Cyclotomic;
use crate::group::{make_group, Group, GroupElement, GroupSpec};

/// Raw table of `β(g,h) = ζ_m^{e(g,h)}`, rows and columns in the canonical
/// element order of `H`. Not necessarily a bicharacter; see
/// [`Bicharacter::new`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaTable {
    h: Group,
    elements: Vec<GroupElement>,
    m: u32,
    table: Vec<Vec<u32>>,
}

/// File format: `{"H": group, "m": order, "beta": [[exponent]]}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BetaSpec {
    #[serde(rename = "H")]
    pub h: GroupSpec,
    pub m: u32,
    pub beta: Vec<Vec<i64>>,
}

impl BetaTable {
    pub fn new(h: Group, m: u32, table: Vec<Vec<i64>>) -> Result<BetaTable, TensorError> {
        if m == 0 {
            return Err(TensorError::ZeroRootOrder);
        }
        let elements = h.elements().ok_or(TensorError::InfiniteH)?;
        let n = elements.len();
        if table.len() != n || table.iter().any(|row| row.len() != n) {
            return Err(TensorError::MalformedTable { expected: n });
        }
        let table = table
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|e| e.rem_euclid(i64::from(m)) as u32)
                    .collect()
            })
            .collect();
        Ok(BetaTable {
            h,
            elements,
            m,
            table,
        })
    }

    pub fn from_spec(spec: &BetaSpec) -> Result<BetaTable, TensorError> {
        BetaTable::new(make_group(&spec.h)?, spec.m, spec.beta.clone())
    }

    pub fn to_spec(&self, h: GroupSpec) -> BetaSpec {
        BetaSpec {
            h,
            m: self.m,
            beta: self
                .table
                .iter()
                .map(|row| row.iter().map(|&e| i64::from(e)).collect())
                .collect(),
        }
    }

    /// `β(g,h) = (-1)^{gh}` on `Z_2`.
    pub fn grassmann() -> BetaTable {
        BetaTable::new(Group::Cyclic(2), 2, vec![vec![0, 0], vec![0, 1]]).expect("valid shape")
    }

    /// `β ≡ 1`.
    pub fn trivial(h: Group) -> Result<BetaTable, TensorError> {
        let n = h.order().ok_or(TensorError::InfiniteH)?;
        BetaTable::new(h, 1, vec![vec![0; n]; n])
    }

    pub fn h(&self) -> &Group {
        &self.h
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.table
    }

    pub fn is_grassmann(&self) -> bool {
        self.h == Group::Cyclic(2) && self.m == 2 && self.table == vec![vec![0, 0], vec![0, 1]]
    }

    fn index(&self, a: &GroupElement) -> Result<usize, TensorError> {
        self.h
            .index_of(a)
            .ok_or_else(|| TensorError::ForeignDegree(format!("{a:?}")))
    }

    /// Exponent of `β(a,b)`.
    pub fn exponent(&self, a: &GroupElement, b: &GroupElement) -> Result<u32, TensorError> {
        Ok(self.table[self.index(a)?][self.index(b)?])
    }

    pub fn value(&self, a: &GroupElement, b: &GroupElement) -> Result<Cyclotomic, TensorError> {
        Ok(Cyclotomic::root(self.m, self.exponent(a, b)?))
    }

    /// Replaces one entry; rows and columns are canonical element positions.
    pub fn set_exponent(&mut self, row: usize, col: usize, e: u32) {
        self.table[row][col] = e % self.m;
    }

    /// First violated axiom, scanning `g, h, k` in canonical order and
    /// checking left additivity, right additivity, then skew symmetry.
    pub fn first_violation(&self) -> Result<Option<BicharacterViolation>, TensorError> {
        if !self.h.is_abelian() {
            return Err(TensorError::NonAbelianH);
        }
        let n = self.elements.len();
        let m = self.m;
        let idx = |a: &GroupElement| self.h.index_of(a).expect("element of H");
        let e = |a: usize, b: usize| self.table[a][b];
        let sum: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| idx(&self.h.op(&self.elements[a], &self.elements[b])))
                    .collect()
            })
            .collect();
        let name = |a: usize| self.h.display(&self.elements[a]);
        for g in 0..n {
            for h in 0..n {
                for k in 0..n {
                    if e(sum[g][h], k) != (e(g, k) + e(h, k)) % m {
                        return Ok(Some(BicharacterViolation::LeftAdditive {
                            g: name(g),
                            h: name(h),
                            k: name(k),
                        }));
                    }
                    if e(g, sum[h][k]) != (e(g, h) + e(g, k)) % m {
                        return Ok(Some(BicharacterViolation::RightAdditive {
                            g: name(g),
                            h: name(h),
                            k: name(k),
                        }));
                    }
                }
                if (e(g, h) + e(h, g)) % m != 0 {
                    return Ok(Some(BicharacterViolation::SkewSymmetric {
                        g: name(g),
                        h: name(h),
                    }));
                }
            }
        }
        Ok(None)
    }
}

/// A failed bicharacter axiom, with element names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BicharacterViolation {
    /// `β(g+h,k) ≠ β(g,k)β(h,k)`.
    LeftAdditive { g: String, h: String, k: String },
    /// `β(g,h+k) ≠ β(g,h)β(g,k)`.
    RightAdditive { g: String, h: String, k: String },
    /// `β(g,h)β(h,g) ≠ 1`.
    SkewSymmetric { g: String, h: String },
}

impl fmt::Display for BicharacterViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BicharacterViolation::LeftAdditive { g, h, k } => {
                write!(f, "β({g}+{h},{k}) = β({g},{k})β({h},{k})")
            }
            BicharacterViolation::RightAdditive { g, h, k } => {
                write!(f, "β({g},{h}+{k}) = β({g},{h})β({g},{k})")
            }
            BicharacterViolation::SkewSymmetric { g, h } => write!(f, "β({g},{h}) = β({h},{g})^-1"),
        }
    }
}

/// A validated skew-symmetric bicharacter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bicharacter(BetaTable);

impl Bicharacter {
    pub fn new(table: BetaTable) -> Result<Bicharacter, TensorError> {
        match table.first_violation()? {
            None => Ok(Bicharacter(table)),
            Some(v) => Err(TensorError::NotABicharacter(v)),
        }
    }

    pub fn grassmann() -> Bicharacter {
        Bicharacter(BetaTable::grassmann())
    }

    pub fn table(&self) -> &BetaTable {
        &self.0
    }

    /// Whether `β(h,h) = -1`.
    pub fn is_odd(&self, h: &GroupElement) -> Result<bool, TensorError> {
        let e = self.0.exponent(h, h)?;
        Ok(e != 0)
    }
}

impl std::ops::Deref for Bicharacter {
    type Target = BetaTable;

    fn deref(&self) -> &BetaTable {
        &self.0
    }
}
