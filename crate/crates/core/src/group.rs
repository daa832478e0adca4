//! Grading groups: cyclic groups, the infinite cyclic group, groups given by a
//! Cayley table, and finite direct products of these.
//!
//! Elements are plain values ([`GroupElement`]); all arithmetic goes through the
//! owning [`Group`], which checks membership.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("malformed Cayley table: {0}")]
    MalformedTable(String),
    #[error("cyclic group order must be at least 1")]
    InvalidOrder,
    #[error("product group needs at least one factor")]
    EmptyProduct,
    #[error("table has no two-sided identity")]
    NoIdentity,
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: String },
    #[error("operation is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: String, b: String, c: String },
    #[error("element {element} does not belong to the group")]
    MixedGroups { element: String },
    #[error("unknown group element `{0}`")]
    UnknownElement(String),
}

/// Description of a group as it appears in configuration files.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum GroupSpec {
    Cyclic {
        order: u64,
    },
    Integers,
    Table {
        elements: Vec<String>,
        table: Vec<Vec<usize>>,
    },
    Product {
        factors: Vec<GroupSpec>,
    },
}

/// An element of some [`Group`]. Equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    /// Residue in `[0, m)` of a cyclic group of order `m`.
    Residue(u64),
    /// Element of the infinite cyclic group.
    Integer(BigInt),
    /// Index into the element list of a table group.
    Index(usize),
    /// Element of a direct product, one component per factor.
    Tuple(Vec<GroupElement>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTable {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
}

impl CayleyTable {
    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }
}

/// A validated group. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Group {
    Cyclic(u64),
    Integers,
    Table(CayleyTable),
    Product(Vec<Group>),
}

/// A parsed degree literal, before it is resolved against a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DegreeLiteral {
    Int(BigInt),
    Name(String),
    Tuple(Vec<DegreeLiteral>),
}

impl fmt::Display for DegreeLiteral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DegreeLiteral::Int(v) => write!(f, "{v}"),
            DegreeLiteral::Name(s) => f.write_str(s),
            DegreeLiteral::Tuple(items) => {
                f.write_str("(")?;
                for (pos, item) in items.iter().enumerate() {
                    if pos > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{item}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl DegreeLiteral {
    /// Reads a literal from a JSON value: numbers, strings, or arrays of those.
    pub fn from_json(value: &serde_json::Value) -> Option<DegreeLiteral> {
        match value {
            serde_json::Value::Number(n) => n.as_i64().map(|v| DegreeLiteral::Int(v.into())),
            serde_json::Value::String(s) => {
                if let Ok(v) = s.parse::<BigInt>() {
                    Some(DegreeLiteral::Int(v))
                } else {
                    Some(DegreeLiteral::Name(s.clone()))
                }
            }
            serde_json::Value::Array(items) => items
                .iter()
                .map(DegreeLiteral::from_json)
                .collect::<Option<Vec<_>>>()
                .map(DegreeLiteral::Tuple),
            _ => None,
        }
    }
}

/// Builds and validates a group from its description.
pub fn make_group(spec: &GroupSpec) -> Result<Group, GroupError> {
    match spec {
        GroupSpec::Cyclic { order } => Group::cyclic(*order),
        GroupSpec::Integers => Ok(Group::Integers),
        GroupSpec::Table { elements, table } => Group::from_table(elements.clone(), table.clone()),
        GroupSpec::Product { factors } => {
            let groups = factors
                .iter()
                .map(make_group)
                .collect::<Result<Vec<_>, _>>()?;
            Group::product(groups)
        }
    }
}

impl Group {
    pub fn cyclic(order: u64) -> Result<Group, GroupError> {
        if order == 0 {
            return Err(GroupError::InvalidOrder);
        }
        Ok(Group::Cyclic(order))
    }

    pub fn product(factors: Vec<Group>) -> Result<Group, GroupError> {
        if factors.is_empty() {
            return Err(GroupError::EmptyProduct);
        }
        Ok(Group::Product(factors))
    }

    /// Validates a Cayley table given in row-major index form:
    /// `table[a][b]` is the index of `a*b`.
    pub fn from_table(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<Group, GroupError> {
        let size = names.len();
        if size == 0 {
            return Err(GroupError::MalformedTable("no elements".into()));
        }
        if table.len() != size {
            return Err(GroupError::MalformedTable(format!(
                "expected {size} rows, found {}",
                table.len()
            )));
        }
        for (row_idx, row) in table.iter().enumerate() {
            if row.len() != size {
                return Err(GroupError::MalformedTable(format!(
                    "row {row_idx} has {} entries, expected {size}",
                    row.len()
                )));
            }
            if let Some(bad) = row.iter().find(|&&v| v >= size) {
                return Err(GroupError::MalformedTable(format!(
                    "row {row_idx} contains out-of-range index {bad}"
                )));
            }
        }
        for (pos, name) in names.iter().enumerate() {
            if names[..pos].contains(name) {
                return Err(GroupError::MalformedTable(format!(
                    "duplicate element name `{name}`"
                )));
            }
        }

        let identity = (0..size)
            .find(|&e| (0..size).all(|a| table[e][a] == a && table[a][e] == a))
            .ok_or(GroupError::NoIdentity)?;

        let mut inverses = Vec::with_capacity(size);
        for a in 0..size {
            let inv = (0..size)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or_else(|| GroupError::NoInverse {
                    element: names[a].clone(),
                })?;
            inverses.push(inv);
        }

        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(GroupError::NotAssociative {
                            a: names[a].clone(),
                            b: names[b].clone(),
                            c: names[c].clone(),
                        });
                    }
                }
            }
        }

        Ok(Group::Table(CayleyTable {
            names,
            table,
            identity,
            inverses,
        }))
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            Group::Cyclic(_) => GroupElement::Residue(0),
            Group::Integers => GroupElement::Integer(BigInt::zero()),
            Group::Table(t) => GroupElement::Index(t.identity),
            Group::Product(factors) => {
                GroupElement::Tuple(factors.iter().map(Group::identity).collect())
            }
        }
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        match (self, a) {
            (Group::Cyclic(m), GroupElement::Residue(r)) => r < m,
            (Group::Integers, GroupElement::Integer(_)) => true,
            (Group::Table(t), GroupElement::Index(i)) => *i < t.order(),
            (Group::Product(factors), GroupElement::Tuple(items)) => {
                factors.len() == items.len()
                    && factors.iter().zip(items).all(|(g, x)| g.contains(x))
            }
            _ => false,
        }
    }

    fn check(&self, a: &GroupElement) -> Result<(), GroupError> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(GroupError::MixedGroups {
                element: format!("{a:?}"),
            })
        }
    }

    pub fn multiply(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.op(a, b))
    }

    pub fn inverse(&self, a: &GroupElement) -> Result<GroupElement, GroupError> {
        self.check(a)?;
        Ok(self.inv(a))
    }

    /// Unchecked product; both arguments must belong to `self`.
    pub(crate) fn op(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        match (self, a, b) {
            (Group::Cyclic(m), GroupElement::Residue(x), GroupElement::Residue(y)) => {
                GroupElement::Residue(((*x as u128 + *y as u128) % *m as u128) as u64)
            }
            (Group::Integers, GroupElement::Integer(x), GroupElement::Integer(y)) => {
                GroupElement::Integer(x + y)
            }
            (Group::Table(t), GroupElement::Index(x), GroupElement::Index(y)) => {
                GroupElement::Index(t.table[*x][*y])
            }
            (Group::Product(factors), GroupElement::Tuple(xs), GroupElement::Tuple(ys)) => {
                GroupElement::Tuple(
                    factors
                        .iter()
                        .zip(xs.iter().zip(ys))
                        .map(|(g, (x, y))| g.op(x, y))
                        .collect(),
                )
            }
            _ => unreachable!("element kind does not match group kind"),
        }
    }

    pub(crate) fn inv(&self, a: &GroupElement) -> GroupElement {
        match (self, a) {
            (Group::Cyclic(m), GroupElement::Residue(x)) => GroupElement::Residue((m - x) % m),
            (Group::Integers, GroupElement::Integer(x)) => GroupElement::Integer(-x),
            (Group::Table(t), GroupElement::Index(x)) => GroupElement::Index(t.inverses[*x]),
            (Group::Product(factors), GroupElement::Tuple(xs)) => {
                GroupElement::Tuple(factors.iter().zip(xs).map(|(g, x)| g.inv(x)).collect())
            }
            _ => unreachable!("element kind does not match group kind"),
        }
    }

    pub fn is_finite(&self) -> bool {
        match self {
            Group::Integers => false,
            Group::Product(factors) => factors.iter().all(Group::is_finite),
            _ => true,
        }
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            Group::Cyclic(m) => usize::try_from(*m).ok(),
            Group::Integers => None,
            Group::Table(t) => Some(t.order()),
            Group::Product(factors) => factors
                .iter()
                .try_fold(1usize, |acc, g| g.order().and_then(|o| acc.checked_mul(o))),
        }
    }

    /// All elements in canonical order, or `None` for infinite groups.
    pub fn elements(&self) -> Option<Vec<GroupElement>> {
        match self {
            Group::Cyclic(m) => Some((0..*m).map(GroupElement::Residue).collect()),
            Group::Integers => None,
            Group::Table(t) => Some((0..t.order()).map(GroupElement::Index).collect()),
            Group::Product(factors) => {
                let mut acc: Vec<Vec<GroupElement>> = vec![Vec::new()];
                for factor in factors {
                    let elems = factor.elements()?;
                    acc = acc
                        .into_iter()
                        .flat_map(|prefix| {
                            elems.iter().map(move |e| {
                                let mut next = prefix.clone();
                                next.push(e.clone());
                                next
                            })
                        })
                        .collect();
                }
                Some(acc.into_iter().map(GroupElement::Tuple).collect())
            }
        }
    }

    /// Commutativity; exhaustive for table groups.
    pub fn is_abelian(&self) -> bool {
        match self {
            Group::Cyclic(_) | Group::Integers => true,
            Group::Table(t) => {
                (0..t.order()).all(|a| (0..t.order()).all(|b| t.table[a][b] == t.table[b][a]))
            }
            Group::Product(factors) => factors.iter().all(Group::is_abelian),
        }
    }

    /// Resolves a literal. With `modular` set, integer literals for cyclic
    /// groups are reduced modulo the order instead of being rejected.
    pub fn element_from_literal(
        &self,
        lit: &DegreeLiteral,
        modular: bool,
    ) -> Result<GroupElement, GroupError> {
        let unknown = || GroupError::UnknownElement(lit.to_string());
        match (self, lit) {
            (Group::Cyclic(m), DegreeLiteral::Int(v)) => {
                let modulus = BigInt::from(*m);
                if modular {
                    let r = ((v % &modulus) + &modulus) % &modulus;
                    Ok(GroupElement::Residue(r.to_u64().ok_or_else(unknown)?))
                } else if !v.is_negative() && v < &modulus {
                    Ok(GroupElement::Residue(v.to_u64().ok_or_else(unknown)?))
                } else {
                    Err(unknown())
                }
            }
            (Group::Integers, DegreeLiteral::Int(v)) => Ok(GroupElement::Integer(v.clone())),
            (Group::Table(t), DegreeLiteral::Name(name)) => t
                .names
                .iter()
                .position(|n| n == name)
                .map(GroupElement::Index)
                .ok_or_else(unknown),
            (Group::Table(t), DegreeLiteral::Int(v)) => {
                let text = v.to_string();
                t.names
                    .iter()
                    .position(|n| *n == text)
                    .map(GroupElement::Index)
                    .ok_or_else(unknown)
            }
            (Group::Product(factors), DegreeLiteral::Tuple(items))
                if items.len() == factors.len() =>
            {
                factors
                    .iter()
                    .zip(items)
                    .map(|(g, item)| g.element_from_literal(item, modular))
                    .collect::<Result<Vec<_>, _>>()
                    .map(GroupElement::Tuple)
            }
            _ => Err(unknown()),
        }
    }

    /// Presentation form of an element; round-trips through
    /// [`Group::element_from_literal`].
    pub fn display(&self, a: &GroupElement) -> String {
        match (self, a) {
            (Group::Cyclic(_), GroupElement::Residue(r)) => r.to_string(),
            (Group::Integers, GroupElement::Integer(v)) => v.to_string(),
            (Group::Table(t), GroupElement::Index(i)) => {
                t.names.get(*i).cloned().unwrap_or_else(|| format!("#{i}"))
            }
            (Group::Product(factors), GroupElement::Tuple(items)) => {
                let parts: Vec<String> = factors
                    .iter()
                    .zip(items)
                    .map(|(g, x)| g.display(x))
                    .collect();
                format!("({})", parts.join(","))
            }
            _ => format!("{a:?}"),
        }
    }

    /// Position of an element in [`Group::elements`] for finite groups.
    pub fn index_of(&self, a: &GroupElement) -> Option<usize> {
        match (self, a) {
            (Group::Cyclic(m), GroupElement::Residue(r)) if r < m => usize::try_from(*r).ok(),
            (Group::Table(t), GroupElement::Index(i)) if *i < t.order() => Some(*i),
            (Group::Product(factors), GroupElement::Tuple(items))
                if items.len() == factors.len() =>
            {
                let mut idx = 0usize;
                for (g, x) in factors.iter().zip(items) {
                    idx = idx * g.order()? + g.index_of(x)?;
                }
                Some(idx)
            }
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein() -> Result<Group, GroupError> {
        Group::from_table(
            vec!["e".into(), "a".into(), "b".into(), "c".into()],
            vec![
                vec![0, 1, 2, 3],
                vec![1, 0, 3, 2],
                vec![2, 3, 0, 1],
                vec![3, 2, 1, 0],
            ],
        )
    }

    fn brute_force_axioms(g: &Group) -> bool {
        let elems = g.elements().unwrap();
        let e = g.identity();
        elems.iter().all(|a| {
            g.op(a, &e) == *a
                && g.op(&e, a) == *a
                && g.op(a, &g.inv(a)) == e
                && elems.iter().all(|b| {
                    elems
                        .iter()
                        .all(|c| g.op(&g.op(a, b), c) == g.op(a, &g.op(b, c)))
                })
        })
    }

    #[test]
    fn cyclic_three() {
        let g = Group::cyclic(3).unwrap();
        assert_eq!(g.identity(), GroupElement::Residue(0));
        let two = GroupElement::Residue(2);
        assert_eq!(g.multiply(&two, &two).unwrap(), GroupElement::Residue(1));
        assert!(brute_force_axioms(&g));
    }

    #[test]
    fn cyclic_order_zero_rejected() {
        assert_eq!(Group::cyclic(0), Err(GroupError::InvalidOrder));
    }

    #[test]
    fn klein_accepted() {
        let g = klein().unwrap();
        assert_eq!(g.order(), Some(4));
        assert!(g.is_abelian());
        assert!(brute_force_axioms(&g));
    }

    #[test]
    fn non_group_table_rejected() {
        let err = Group::from_table(vec!["0".into(), "1".into()], vec![vec![0, 1], vec![1, 1]])
            .unwrap_err();
        assert!(matches!(
            err,
            GroupError::NoInverse { .. } | GroupError::NotAssociative { .. }
        ));
    }

    #[test]
    fn non_associative_witness() {
        // Latin square with identity 0 but no associativity.
        let names: Vec<String> = (0..5).map(|i| i.to_string()).collect();
        let table = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = Group::from_table(names, table).unwrap_err();
        assert!(matches!(err, GroupError::NotAssociative { .. }), "{err}");
    }

    #[test]
    fn malformed_tables() {
        assert!(matches!(
            Group::from_table(vec!["e".into()], vec![vec![0, 0]]),
            Err(GroupError::MalformedTable(_))
        ));
        assert!(matches!(
            Group::from_table(vec!["e".into(), "a".into()], vec![vec![0, 1], vec![1, 5]]),
            Err(GroupError::MalformedTable(_))
        ));
        assert!(matches!(
            Group::from_table(vec!["e".into(), "a".into()], vec![vec![1, 1], vec![1, 1]]),
            Err(GroupError::NoIdentity)
        ));
    }

    #[test]
    fn integers_inverse() {
        let g = Group::Integers;
        let five = GroupElement::Integer(5.into());
        assert_eq!(
            g.inverse(&five).unwrap(),
            GroupElement::Integer((-5).into())
        );
        assert!(!g.is_finite());
        assert!(g.elements().is_none());
    }

    #[test]
    fn product_componentwise() {
        let g = Group::product(vec![Group::cyclic(2).unwrap(), Group::cyclic(3).unwrap()]).unwrap();
        let x = GroupElement::Tuple(vec![GroupElement::Residue(1), GroupElement::Residue(2)]);
        let want = GroupElement::Tuple(vec![GroupElement::Residue(0), GroupElement::Residue(1)]);
        assert_eq!(g.multiply(&x, &x).unwrap(), want);
        assert!(brute_force_axioms(&g));
        assert_eq!(g.elements().unwrap().len(), 6);
        for (pos, el) in g.elements().unwrap().iter().enumerate() {
            assert_eq!(g.index_of(el), Some(pos));
        }
    }

    #[test]
    fn mixed_groups_rejected() {
        let g = Group::cyclic(3).unwrap();
        let err = g
            .multiply(&GroupElement::Residue(1), &GroupElement::Residue(7))
            .unwrap_err();
        assert!(matches!(err, GroupError::MixedGroups { .. }));
        assert!(g.inverse(&GroupElement::Integer(1.into())).is_err());
    }

    #[test]
    fn literal_resolution() {
        let z3 = Group::cyclic(3).unwrap();
        let five = DegreeLiteral::Int(5.into());
        assert!(matches!(
            z3.element_from_literal(&five, false),
            Err(GroupError::UnknownElement(_))
        ));
        assert_eq!(
            z3.element_from_literal(&five, true).unwrap(),
            GroupElement::Residue(2)
        );
        assert_eq!(
            z3.element_from_literal(&DegreeLiteral::Int((-1).into()), true)
                .unwrap(),
            GroupElement::Residue(2)
        );
        let k = klein().unwrap();
        let a = k
            .element_from_literal(&DegreeLiteral::Name("a".into()), false)
            .unwrap();
        assert_eq!(k.display(&a), "a");
    }

    #[test]
    fn spec_deserializes() {
        let spec: GroupSpec = serde_json::from_str(
            r#"{"type":"product","factors":[{"type":"cyclic","order":2},{"type":"integers"}]}"#,
        )
        .unwrap();
        let g = make_group(&spec).unwrap();
        assert!(!g.is_finite());
        assert!(g.is_abelian());
    }
}
