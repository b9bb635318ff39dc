//! Partial Latin hypercubes on a zero-one support and Alon–Tarsi numbers.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::combinatorics::{fundamental_table, inv_sign, Letter, Table};
use crate::error::{Error, Result};

/// Values in [n] on the cells (columns) of a support table such that every
/// slice, read in lex order of its cells, is a permutation of [n].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialLatinHypercube {
    support: Table,
    n: usize,
    entries: Vec<Letter>,
}

impl PartialLatinHypercube {
    pub fn new(support: Table, n: usize, entries: Vec<Letter>) -> Result<PartialLatinHypercube> {
        let l = PartialLatinHypercube { support, n, entries };
        if l.entries.len() != l.support.m() || !l.support.is_lex() || l.slices().iter().any(|s| !is_perm(s, n)) {
            return Err(Error::Invalid("not a partial Latin hypercube".into()));
        }
        Ok(l)
    }

    pub fn support(&self) -> &Table {
        &self.support
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry at each support column, in column order.
    pub fn entries(&self) -> &[Letter] {
        &self.entries
    }

    /// Every slice's values in lex order of its cells.
    pub fn slices(&self) -> Vec<Vec<Letter>> {
        let t = &self.support;
        let mut out = Vec::new();
        for r in 0..t.d() {
            let levels = t.row(r).iter().copied().max().unwrap_or(0);
            for level in 1..=levels {
                out.push((0..t.m()).filter(|&c| t.get(r, c) == level).map(|c| self.entries[c]).collect());
            }
        }
        out
    }
}

fn is_perm(s: &[Letter], n: usize) -> bool {
    let mut v: Vec<usize> = s.iter().map(|&x| x as usize).collect();
    v.sort_unstable();
    v == (1..=n).collect::<Vec<_>>()
}

/// Product of the signs of all slice permutations.
pub fn latin_sign(l: &PartialLatinHypercube) -> i32 {
    l.slices().iter().map(|s| inv_sign(s)).product()
}

/// Checks that T is duplicate-free with every row of weight (n, ..., n);
/// returns T in lex order.
fn prepare(t: &Table, n: usize) -> Result<Table> {
    if t.has_duplicate_columns() {
        return Err(Error::DuplicateColumns);
    }
    if n == 0 || n > 127 {
        return Err(Error::Invalid(format!("slice size n={n} must be in 1..=127")));
    }
    for r in 0..t.d() {
        if t.row_weight(r).iter().any(|&c| c != n) {
            return Err(Error::Invalid(format!("row {} of the support does not have every letter {n} times", r + 1)));
        }
    }
    Ok(t.lex_normalize().table)
}

/// Slice size n of a rectangular support (each letter occurs n times).
pub fn slice_size(t: &Table) -> Result<usize> {
    t.row_weight(0)
        .first()
        .copied()
        .ok_or_else(|| Error::Invalid("empty support".into()))
}

struct Search {
    d: usize,
    n: usize,
    // slot[c * d + r]: index of the slice (r, level) holding cell c
    slot: Vec<usize>,
    used: Vec<u128>,
    cells: usize,
    entries: Vec<Letter>,
}

impl Search {
    fn new(t: &Table, n: usize) -> Search {
        let d = t.d();
        let mut offsets = vec![0; d + 1];
        for r in 0..d {
            offsets[r + 1] = offsets[r] + t.row(r).iter().copied().max().unwrap_or(0) as usize;
        }
        let mut slot = vec![0; t.m() * d];
        for c in 0..t.m() {
            for r in 0..d {
                slot[c * d + r] = offsets[r] + t.get(r, c) as usize - 1;
            }
        }
        Search { d, n, slot, used: vec![0; offsets[d]], cells: t.m(), entries: vec![0; t.m()] }
    }

    fn free(&self, c: usize) -> u128 {
        let full: u128 = if self.n == 127 { !0 << 1 } else { ((1u128 << (self.n + 1)) - 1) & !1 };
        let taken = self.slot[c * self.d..(c + 1) * self.d].iter().fold(0, |acc, &s| acc | self.used[s]);
        full & !taken
    }

    /// Places v at cell c; returns the parity of the inversions it adds.
    fn place(&mut self, c: usize, v: usize) -> u32 {
        let mut parity = 0;
        for r in 0..self.d {
            let s = self.slot[c * self.d + r];
            parity += (self.used[s] >> (v + 1)).count_ones();
            self.used[s] |= 1 << v;
        }
        self.entries[c] = v as Letter;
        parity
    }

    fn unplace(&mut self, c: usize, v: usize) {
        for r in 0..self.d {
            let s = self.slot[c * self.d + r];
            self.used[s] &= !(1 << v);
        }
    }

    fn run(&mut self, c: usize, parity: u32, f: &mut dyn FnMut(&[Letter], i32)) {
        if c == self.cells {
            f(&self.entries, if parity % 2 == 0 { 1 } else { -1 });
            return;
        }
        let mut free = self.free(c);
        while free != 0 {
            let v = free.trailing_zeros() as usize;
            free &= free - 1;
            let p = self.place(c, v);
            self.run(c + 1, parity + p, f);
            self.unplace(c, v);
        }
    }

    /// Assignments of the first `depth` cells, with their parities.
    fn prefixes(&mut self, depth: usize) -> Vec<(Vec<usize>, u32)> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(s: &mut Search, c: usize, depth: usize, parity: u32, cur: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, u32)>) {
            if c == depth {
                out.push((cur.clone(), parity));
                return;
            }
            let mut free = s.free(c);
            while free != 0 {
                let v = free.trailing_zeros() as usize;
                free &= free - 1;
                let p = s.place(c, v);
                cur.push(v);
                rec(s, c + 1, depth, parity + p, cur, out);
                cur.pop();
                s.unplace(c, v);
            }
        }
        rec(self, 0, depth.min(self.cells), 0, &mut cur, &mut out);
        out
    }
}

/// Calls f(entries, sign) for every partial Latin hypercube on T, in
/// lexicographic order of the entry vectors.
pub fn visit_latin(t: &Table, n: usize, mut f: impl FnMut(&[Letter], i32)) -> Result<()> {
    let t = prepare(t, n)?;
    Search::new(&t, n).run(0, 0, &mut f);
    Ok(())
}

pub fn enumerate_latin(t: &Table, n: usize) -> Result<Vec<PartialLatinHypercube>> {
    let support = prepare(t, n)?;
    let mut out = Vec::new();
    visit_latin(&support, n, |e, _| {
        out.push(PartialLatinHypercube { support: support.clone(), n, entries: e.to_vec() })
    })?;
    Ok(out)
}

/// (number of hypercubes, signed count). The first two cells split the
/// search into independent subtrees that run in parallel.
pub fn count_latin(t: &Table, n: usize) -> Result<(BigInt, BigInt)> {
    let t = prepare(t, n)?;
    let mut root = Search::new(&t, n);
    let prefixes = root.prefixes(2);
    let (count, signed) = prefixes
        .into_par_iter()
        .map(|(vals, parity)| {
            let mut s = Search::new(&t, n);
            let mut parity0 = 0;
            for (c, &v) in vals.iter().enumerate() {
                parity0 += s.place(c, v);
            }
            debug_assert_eq!(parity0 % 2, parity % 2);
            let (mut count, mut signed) = (0i128, 0i128);
            s.run(vals.len(), parity0, &mut |_, sign| {
                count += 1;
                signed += sign as i128;
            });
            (count, signed)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok((BigInt::from(count), BigInt::from(signed)))
}

/// AT(T) = Σ signs over the partial Latin hypercubes on T.
pub fn alon_tarsi(t: &Table) -> Result<BigInt> {
    let n = slice_size(t)?;
    Ok(count_latin(t, n)?.1)
}

/// AT_d(k), on the full support [k]^d.
pub fn alon_tarsi_dk(d: usize, k: usize) -> BigInt {
    let n = k.pow(d as u32 - 1);
    count_latin(&fundamental_table(d, k), n).expect("full support is valid").1
}

/// |L_d(k)|.
pub fn latin_count(d: usize, k: usize) -> BigInt {
    let n = k.pow(d as u32 - 1);
    count_latin(&fundamental_table(d, k), n).expect("full support is valid").0
}

/// One line per hypercube: the entries in support-column order, then the sign.
pub fn latin_csv(t: &Table, n: usize) -> Result<String> {
    let mut out = String::new();
    visit_latin(t, n, |e, sign| {
        let vals: Vec<String> = e.iter().map(|x| x.to_string()).collect();
        out.push_str(&vals.join(","));
        out.push_str(&format!(",{sign}\n"));
    })?;
    Ok(out)
}
