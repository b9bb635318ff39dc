//! Sparse integer vectors over the lex-table bases of symmetric (∨e_S)
//! and alternating (∧e_T) weight spaces.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{Table, WeightTuple};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Space {
    Sym,
    Alt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    space: Space,
    weight: WeightTuple,
    terms: BTreeMap<Table, BigInt>,
}

impl Expansion {
    pub fn zero(space: Space, weight: WeightTuple) -> Expansion {
        Expansion { space, weight, terms: BTreeMap::new() }
    }

    /// The scalar 1 in degree 0.
    pub fn one(space: Space, d: usize) -> Expansion {
        let weight = WeightTuple::from_compositions(vec![Vec::new(); d]).expect("d >= 1");
        let mut terms = BTreeMap::new();
        terms.insert(Table::empty(d), BigInt::one());
        Expansion { space, weight, terms }
    }

    /// ∨e_X or ∧e_X for an arbitrary (not necessarily lex) table X.
    pub fn basis(space: Space, x: &Table) -> Expansion {
        let mut e = Expansion::zero(space, x.weight());
        let n = x.lex_normalize();
        match space {
            Space::Sym => e.add_term(n.table, BigInt::one()),
            Space::Alt if n.has_duplicates => {}
            Space::Alt => e.add_term(n.table, BigInt::from(n.sign)),
        }
        e
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn weight(&self) -> &WeightTuple {
        &self.weight
    }

    pub fn d(&self) -> usize {
        self.weight.d()
    }

    pub fn terms(&self) -> &BTreeMap<Table, BigInt> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds c times the basis vector of the lex table x.
    pub fn add_term(&mut self, x: Table, c: BigInt) {
        debug_assert!(x.is_lex(), "index {x} is not lex-normalized");
        debug_assert!(self.space == Space::Sym || !x.has_duplicate_columns());
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(x) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// The coefficient at the basis vector of x (0 if absent).
    pub fn pair(&self, x: &Table) -> BigInt {
        self.terms.get(x).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &BigInt) -> Expansion {
        let mut e = Expansion::zero(self.space, self.weight.clone());
        for (x, v) in &self.terms {
            e.add_term(x.clone(), v * c);
        }
        e
    }

    pub fn add(&self, other: &Expansion) -> Expansion {
        assert_eq!(self.space, other.space, "adding expansions of different spaces");
        let mut e = self.clone();
        if e.is_zero() {
            e.weight = other.weight.clone();
        }
        for (x, v) in &other.terms {
            e.add_term(x.clone(), v.clone());
        }
        e
    }

    pub fn sub(&self, other: &Expansion) -> Expansion {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    /// ∨ product (monomial multiplication) or ∧ product (wedge).
    pub fn product(&self, other: &Expansion) -> Expansion {
        assert_eq!(self.space, other.space, "product of expansions of different spaces");
        assert_eq!(self.d(), other.d(), "product of expansions of different d");
        let rows = self
            .weight
            .rows()
            .iter()
            .zip(other.weight.rows())
            .map(|(a, b)| {
                let mut r = vec![0; a.len().max(b.len())];
                for (i, x) in a.iter().enumerate() {
                    r[i] += x;
                }
                for (i, x) in b.iter().enumerate() {
                    r[i] += x;
                }
                r
            })
            .collect();
        let weight = WeightTuple::from_compositions(rows).expect("sizes add up");
        let mut e = Expansion::zero(self.space, weight);
        for (x, u) in &self.terms {
            for (y, v) in &other.terms {
                let n = x.append_columns(y).lex_normalize();
                match self.space {
                    Space::Sym => e.add_term(n.table, u * v),
                    Space::Alt if n.has_duplicates => {}
                    Space::Alt => e.add_term(n.table, u * v * n.sign),
                }
            }
        }
        e
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("expansions serialize")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Expansion> {
        Expansion::deserialize(v).map_err(|e| Error::Invalid(e.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    index: Table,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct ExpansionJson {
    space: Space,
    weight: WeightTuple,
    terms: Vec<TermJson>,
}

impl Serialize for Expansion {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ExpansionJson {
            space: self.space,
            weight: self.weight.clone(),
            terms: self
                .terms
                .iter()
                .map(|(x, c)| TermJson { index: x.clone(), coeff: c.to_string() })
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Expansion {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = ExpansionJson::deserialize(de)?;
        let mut e = Expansion::zero(j.space, j.weight);
        for t in j.terms {
            let c: BigInt = t.coeff.parse().map_err(|_| D::Error::custom(format!("bad coefficient {:?}", t.coeff)))?;
            if !t.index.is_lex() {
                return Err(D::Error::custom(format!("index {} is not lex-normalized", t.index)));
            }
            if t.index.weight() != e.weight {
                return Err(D::Error::custom(format!("index {} has the wrong weight", t.index)));
            }
            if e.space == Space::Alt && t.index.has_duplicate_columns() {
                return Err(D::Error::custom(format!("alternating index {} has duplicate columns", t.index)));
            }
            e.add_term(t.index, c);
        }
        Ok(e)
    }
}
