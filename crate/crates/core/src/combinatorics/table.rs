use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::partition::{inv_sign, word_weight, WeightTuple};
use crate::error::{Error, Result};

pub type Letter = u16;

/// A d x m array of positive letters, stored row-major.
///
/// The derived ordering compares the row-major flattening, which is the
/// order used for enumeration output and expansion terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Table {
    d: usize,
    m: usize,
    data: Vec<Letter>,
}

/// Result of sorting the columns of a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub table: Table,
    pub sign: i32,
    pub has_duplicates: bool,
}

impl Table {
    pub fn new(rows: Vec<Vec<Letter>>) -> Result<Table> {
        let d = rows.len();
        if d == 0 {
            return Err(Error::EmptyTuple);
        }
        let m = rows[0].len();
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::RaggedTable);
        }
        if let Some(r) = rows.iter().position(|r| r.contains(&0)) {
            return Err(Error::ZeroLetter(r));
        }
        Ok(Table { d, m, data: rows.concat() })
    }

    pub fn empty(d: usize) -> Table {
        Table { d, m: 0, data: Vec::new() }
    }

    pub fn from_columns<C: AsRef<[Letter]>>(d: usize, cols: &[C]) -> Table {
        let m = cols.len();
        let mut data = vec![0; d * m];
        for (c, col) in cols.iter().enumerate() {
            let col = col.as_ref();
            assert_eq!(col.len(), d, "column length");
            for r in 0..d {
                data[r * m + c] = col[r];
            }
        }
        Table { d, m, data }
    }

    /// Parses "1122/1212" (or "1,1,10/1,2,3" when letters exceed 9).
    pub fn parse_shorthand(s: &str) -> Result<Table> {
        let rows = s
            .split('/')
            .map(|row| {
                let row = row.trim();
                if row.contains(',') {
                    row.split(',')
                        .map(|x| x.trim().parse::<Letter>().map_err(|e| Error::Invalid(format!("bad table {s:?}: {e}"))))
                        .collect::<Result<Vec<_>>>()
                } else {
                    row.chars()
                        .map(|c| {
                            c.to_digit(10)
                                .map(|x| x as Letter)
                                .ok_or_else(|| Error::Invalid(format!("bad table {s:?}")))
                        })
                        .collect()
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Table::new(rows)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn row(&self, r: usize) -> &[Letter] {
        &self.data[r * self.m..(r + 1) * self.m]
    }

    pub fn rows(&self) -> Vec<Vec<Letter>> {
        (0..self.d).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn get(&self, r: usize, c: usize) -> Letter {
        self.data[r * self.m + c]
    }

    pub fn column(&self, c: usize) -> Vec<Letter> {
        (0..self.d).map(|r| self.get(r, c)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Letter>> {
        (0..self.m).map(|c| self.column(c)).collect()
    }

    pub fn row_weight(&self, r: usize) -> Vec<usize> {
        word_weight(self.row(r))
    }

    pub fn weight(&self) -> WeightTuple {
        WeightTuple::from_compositions((0..self.d).map(|r| self.row_weight(r)).collect())
            .expect("rows share the length m")
    }

    /// (-1)^T, the product of the row inversion signs.
    pub fn sign(&self) -> i32 {
        (0..self.d).map(|r| inv_sign(self.row(r))).product()
    }

    fn sorting_permutation(&self) -> Vec<usize> {
        let cols = self.columns();
        let mut idx: Vec<usize> = (0..self.m).collect();
        idx.sort_by(|&a, &b| cols[a].cmp(&cols[b]));
        idx
    }

    pub fn lex_normalize(&self) -> Normalized {
        let perm = self.sorting_permutation();
        let table = self.permute_columns(&perm);
        let has_duplicates = (1..self.m).any(|c| (0..self.d).all(|r| table.get(r, c) == table.get(r, c - 1)));
        let sign = perm_sign(&perm);
        Normalized { table, sign, has_duplicates }
    }

    pub fn is_lex(&self) -> bool {
        let cols = self.columns();
        cols.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn has_duplicate_columns(&self) -> bool {
        let mut cols = self.columns();
        cols.sort();
        cols.windows(2).any(|w| w[0] == w[1])
    }

    /// Product over distinct columns of (multiplicity)!.
    pub fn stabilizer_size(&self) -> u128 {
        let mut counts: BTreeMap<Vec<Letter>, u128> = BTreeMap::new();
        for c in self.columns() {
            *counts.entry(c).or_default() += 1;
        }
        counts.values().map(|&k| (1..=k).product::<u128>()).product()
    }

    /// Column p of the result is column perm[p] of self.
    pub fn permute_columns(&self, perm: &[usize]) -> Table {
        assert_eq!(perm.len(), self.m);
        let mut data = vec![0; self.data.len()];
        for r in 0..self.d {
            for (p, &c) in perm.iter().enumerate() {
                data[r * self.m + p] = self.data[r * self.m + c];
            }
        }
        Table { d: self.d, m: self.m, data }
    }

    /// Applies `f` to every letter of row r.
    pub fn map_row(&self, r: usize, f: impl Fn(Letter) -> Letter) -> Table {
        let mut t = self.clone();
        for c in 0..self.m {
            t.data[r * self.m + c] = f(self.data[r * self.m + c]);
        }
        t
    }

    pub fn set(&mut self, r: usize, c: usize, x: Letter) {
        self.data[r * self.m + c] = x;
    }

    /// Row-wise p.(q + l), l the number of letters in the weight of p's row.
    pub fn concat(&self, other: &Table) -> Result<Table> {
        if self.d != other.d {
            return Err(Error::Shape(format!("concat of d={} and d={}", self.d, other.d)));
        }
        let rows = (0..self.d)
            .map(|r| {
                let shift = self.row(r).iter().copied().max().unwrap_or(0);
                let mut row = self.row(r).to_vec();
                row.extend(other.row(r).iter().map(|&x| x + shift));
                row
            })
            .collect();
        Table::new(rows)
    }

    /// Appends the columns of `other` without shifting.
    pub fn append_columns(&self, other: &Table) -> Table {
        assert_eq!(self.d, other.d);
        let rows: Vec<Vec<Letter>> = (0..self.d).map(|r| [self.row(r), other.row(r)].concat()).collect();
        Table { d: self.d, m: self.m + other.m, data: rows.concat() }
    }
}

/// Sign of a permutation of 0..n given in one-line notation.
pub fn perm_sign(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut parity = 0;
    for s in 0..perm.len() {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut i = s;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        parity += len - 1;
    }
    if parity % 2 == 0 {
        1
    } else {
        -1
    }
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.data.iter().any(|&x| x > 9);
        for r in 0..self.d {
            if r > 0 {
                write!(f, "/")?;
            }
            let parts: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            write!(f, "{}", parts.join(if wide { "," } else { "" }))?;
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TableJson {
    d: usize,
    m: usize,
    rows: Vec<Vec<Letter>>,
}

impl Serialize for Table {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        TableJson { d: self.d, m: self.m, rows: self.rows() }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Table {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let j = TableJson::deserialize(de)?;
        if j.d == 0 || j.rows.len() != j.d {
            return Err(serde::de::Error::custom(format!("declared d={} but {} rows", j.d, j.rows.len())));
        }
        if j.rows.iter().any(|r| r.len() != j.m) {
            return Err(serde::de::Error::custom(format!("rows must all have length m={}", j.m)));
        }
        Table::new(j.rows).map_err(serde::de::Error::custom)
    }
}

/// Sparse nonnegative hypermatrix; zero entries are absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypermatrix {
    d: usize,
    entries: BTreeMap<Vec<Letter>, usize>,
}

impl Hypermatrix {
    pub fn new(d: usize, entries: BTreeMap<Vec<Letter>, usize>) -> Result<Hypermatrix> {
        if entries.keys().any(|k| k.len() != d || k.contains(&0)) {
            return Err(Error::Shape(format!("hypermatrix indices must be {d} positive coordinates")));
        }
        let entries = entries.into_iter().filter(|&(_, v)| v > 0).collect();
        Ok(Hypermatrix { d, entries })
    }

    pub fn from_table(t: &Table) -> Hypermatrix {
        let mut entries = BTreeMap::new();
        for c in t.columns() {
            *entries.entry(c).or_insert(0) += 1;
        }
        Hypermatrix { d: t.d(), entries }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn entries(&self) -> &BTreeMap<Vec<Letter>, usize> {
        &self.entries
    }

    pub fn size(&self) -> usize {
        self.entries.values().sum()
    }

    /// d-line notation: columns in lex order, each repeated by its value.
    pub fn dline(&self) -> Table {
        let cols: Vec<&Vec<Letter>> =
            self.entries.iter().flat_map(|(k, &v)| std::iter::repeat_n(k, v)).collect();
        Table::from_columns(self.d, &cols)
    }

    /// Slice sums in direction l.
    pub fn marginal(&self, l: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (k, &v) in &self.entries {
            let i = k[l] as usize - 1;
            if out.len() <= i {
                out.resize(i + 1, 0);
            }
            out[i] += v;
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct EntryJson {
    idx: Vec<Letter>,
    val: usize,
}

#[derive(Serialize, Deserialize)]
struct HyperJson {
    d: usize,
    entries: Vec<EntryJson>,
}

impl Serialize for Hypermatrix {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        HyperJson {
            d: self.d,
            entries: self.entries.iter().map(|(k, &v)| EntryJson { idx: k.clone(), val: v }).collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Hypermatrix {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let j = HyperJson::deserialize(de)?;
        let mut entries = BTreeMap::new();
        for e in j.entries {
            if entries.insert(e.idx, e.val).is_some() {
                return Err(serde::de::Error::custom("repeated hypermatrix index"));
            }
        }
        Hypermatrix::new(j.d, entries).map_err(serde::de::Error::custom)
    }
}

pub fn dline(h: &Hypermatrix) -> Table {
    h.dline()
}

pub fn table_to_hyper(t: &Table) -> Hypermatrix {
    Hypermatrix::from_table(t)
}
