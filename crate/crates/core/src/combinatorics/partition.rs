use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts));
        }
        Ok(Partition(parts))
    }

    /// Sorts a composition and drops its zero parts.
    pub fn from_composition(parts: &[usize]) -> Self {
        let mut v: Vec<usize> = parts.iter().copied().filter(|&p| p > 0).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Partition(v)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.0.first().copied().unwrap_or(0);
        Partition((1..=first).map(|j| self.0.iter().filter(|&&p| p >= j).count()).collect())
    }

    /// (-1)^w for the canonical word 1 2 .. λ1 1 2 .. λ2 ...
    pub fn sign(&self) -> i32 {
        // Inversions between row a and a later row b: pairs x in row a, y in row b with x > y.
        let mut inv = 0usize;
        for (a, &la) in self.0.iter().enumerate() {
            for &lb in &self.0[a + 1..] {
                // for each y in 1..=lb, count x in 1..=la with x > y
                inv += (1..=lb).map(|y| la.saturating_sub(y)).sum::<usize>();
            }
        }
        if inv % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// The canonical word 1 2 .. λ1 1 2 .. λ2 ...
    pub fn canonical_word(&self) -> Vec<u16> {
        self.0.iter().flat_map(|&p| 1..=p as u16).collect()
    }

    /// All partitions of `m`, in decreasing lexicographic order.
    pub fn all(m: usize) -> Vec<Partition> {
        fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(m, m, &mut Vec::new(), &mut out);
        out
    }

    pub fn rectangle(rows: usize, cols: usize) -> Partition {
        if cols == 0 {
            return Partition::default();
        }
        Partition(vec![cols; rows])
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(de)?;
        Partition::new(v).map_err(serde::de::Error::custom)
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

pub fn conjugate(lambda: &Partition) -> Partition {
    lambda.conjugate()
}

/// A d-tuple of compositions of a common size m.
///
/// Most callers build these from partitions; compositions (unsorted rows,
/// possibly with zeros) show up as weights of boundary tables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightTuple {
    m: usize,
    rows: Vec<Vec<usize>>,
}

impl WeightTuple {
    pub fn new(parts: Vec<Partition>) -> Result<Self> {
        Self::from_compositions(parts.into_iter().map(|p| p.0).collect())
    }

    pub fn from_compositions(mut rows: Vec<Vec<usize>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::EmptyTuple);
        }
        for r in rows.iter_mut() {
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        let sizes: Vec<usize> = rows.iter().map(|r| r.iter().sum()).collect();
        if sizes.iter().any(|&s| s != sizes[0]) {
            return Err(Error::SizeMismatch(sizes));
        }
        Ok(WeightTuple { m: sizes[0], rows })
    }

    /// Parses the shorthand "2,2|2,2|2,2".
    pub fn parse_shorthand(s: &str) -> Result<Self> {
        let mut parts = Vec::new();
        for row in s.split('|') {
            let row = row.trim();
            let v: Vec<usize> = if row.is_empty() {
                Vec::new()
            } else {
                row.split(',')
                    .map(|x| x.trim().parse::<usize>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|e| Error::Invalid(format!("bad weight shorthand {s:?}: {e}")))?
            };
            parts.push(Partition::new(v)?);
        }
        WeightTuple::new(parts)
    }

    pub fn uniform(d: usize, lambda: &Partition) -> Self {
        WeightTuple { m: lambda.size(), rows: vec![lambda.0.clone(); d] }
    }

    pub fn d(&self) -> usize {
        self.rows.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn is_partition_tuple(&self) -> bool {
        self.rows.iter().all(|r| r.iter().all(|&p| p > 0) && r.windows(2).all(|w| w[0] >= w[1]))
    }

    /// Rows sorted into partitions.
    pub fn sorted(&self) -> Vec<Partition> {
        self.rows.iter().map(|r| Partition::from_composition(r)).collect()
    }

    pub fn partitions(&self) -> Option<Vec<Partition>> {
        self.is_partition_tuple().then(|| self.rows.iter().map(|r| Partition(r.clone())).collect())
    }

    /// Row-wise conjugate of the sorted rows.
    pub fn conjugate(&self) -> WeightTuple {
        WeightTuple {
            m: self.m,
            rows: self.sorted().iter().map(|p| p.conjugate().0).collect(),
        }
    }

    pub fn sign(&self) -> i32 {
        self.sorted().iter().map(Partition::sign).product()
    }

    /// All d-tuples of partitions of m.
    pub fn all(d: usize, m: usize) -> Vec<WeightTuple> {
        let ps = Partition::all(m);
        let mut out = vec![Vec::new()];
        for _ in 0..d {
            out = out
                .into_iter()
                .flat_map(|pre: Vec<Partition>| {
                    ps.iter().map(move |p| {
                        let mut v = pre.clone();
                        v.push(p.clone());
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(|v| WeightTuple::new(v).expect("common size")).collect()
    }

    /// Replaces one row.
    pub fn with_row(&self, l: usize, row: Vec<usize>) -> Result<WeightTuple> {
        let mut rows = self.rows.clone();
        rows[l] = row;
        WeightTuple::from_compositions(rows)
    }
}

impl std::fmt::Display for WeightTuple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .collect();
        write!(f, "{}", s.join("|"))
    }
}

#[derive(Serialize, Deserialize)]
struct WeightJson {
    m: usize,
    partitions: Vec<Vec<usize>>,
}

impl Serialize for WeightTuple {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        WeightJson { m: self.m, partitions: self.rows.clone() }.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for WeightTuple {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let j = WeightJson::deserialize(de)?;
        let w = WeightTuple::from_compositions(j.partitions).map_err(serde::de::Error::custom)?;
        if w.m != j.m {
            return Err(serde::de::Error::custom(format!("declared m={} but rows sum to {}", j.m, w.m)));
        }
        Ok(w)
    }
}

pub fn tuple_sign(w: &WeightTuple) -> i32 {
    w.sign()
}

/// (-1)^(number of inversions).
pub fn inv_sign(w: &[u16]) -> i32 {
    let mut inv = 0usize;
    for i in 0..w.len() {
        for j in i + 1..w.len() {
            if w[i] > w[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Letter multiplicities; entry i counts letter i+1.
pub fn word_weight(w: &[u16]) -> Vec<usize> {
    let n = w.iter().copied().max().unwrap_or(0) as usize;
    let mut c = vec![0; n];
    for &x in w {
        c[x as usize - 1] += 1;
    }
    c
}

pub fn is_lattice(w: &[u16]) -> bool {
    let mut c: Vec<usize> = Vec::new();
    for &x in w {
        let i = x as usize - 1;
        if c.len() <= i {
            c.resize(i + 1, 0);
        }
        c[i] += 1;
        if i > 0 && c[i] > c[i - 1] {
            return false;
        }
    }
    true
}

/// Lattice words of weight λ, in lexicographic order.
pub fn lattice_words(lambda: &Partition) -> Vec<Vec<u16>> {
    fn rec(rem: &mut Vec<usize>, lam: &[usize], cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if rem.iter().all(|&r| r == 0) {
            out.push(cur.clone());
            return;
        }
        for i in 0..rem.len() {
            // used_i = lam_i - rem_i must stay <= used_{i-1}
            if rem[i] == 0 || (i > 0 && lam[i] - rem[i] + 1 > lam[i - 1] - rem[i - 1]) {
                continue;
            }
            rem[i] -= 1;
            cur.push(i as u16 + 1);
            rec(rem, lam, cur, out);
            cur.pop();
            rem[i] += 1;
        }
    }
    let mut out = Vec::new();
    rec(&mut lambda.0.clone(), &lambda.0, &mut Vec::new(), &mut out);
    out
}
