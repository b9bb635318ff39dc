//! The coefficients a(T,S) = <Δ_T, ∨e_S> and b(S,T) = <∇_S, ∧e_T>.
//!
//! Two independent routes: the literal sum over all m! column
//! permutations, and a backtracking enumeration of fillings that assigns
//! columns of one table to the cells of the other with per-slice pruning.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use num_bigint::BigInt;

use crate::combinatorics::{Letter, Partition, Table};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Oracle,
    Fillings,
    Auto,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Method> {
        match s {
            "oracle" => Ok(Method::Oracle),
            "fillings" => Ok(Method::Fillings),
            "auto" => Ok(Method::Auto),
            _ => Err(Error::Invalid(format!("unknown method {s:?} (oracle|fillings|auto)"))),
        }
    }
}

static ORACLE_MAX_M: AtomicUsize = AtomicUsize::new(7);

/// Largest m for which `Method::Auto` uses the permutation oracle.
pub fn set_auto_threshold(m: usize) {
    ORACLE_MAX_M.store(m, Ordering::Relaxed);
}

pub fn auto_threshold() -> usize {
    ORACLE_MAX_M.load(Ordering::Relaxed)
}

fn resolve(method: Method, m: usize) -> Method {
    match method {
        Method::Auto if m <= auto_threshold() => Method::Oracle,
        Method::Auto => Method::Fillings,
        other => other,
    }
}

/// Block layout of the rows of the table whose blocks are tested.
struct Blocks {
    d: usize,
    m: usize,
    // block[r * m + p]: offset of the block holding position p of row r
    block: Vec<usize>,
    // size of each block, indexed by offset
    size: Vec<u32>,
}

impl Blocks {
    fn new(t: &Table) -> Blocks {
        let (d, m) = (t.d(), t.m());
        assert!(m < 64, "tables with 64 or more columns are not supported");
        let mut block = vec![0; d * m];
        let mut size = Vec::new();
        for r in 0..d {
            let w = t.row_weight(r);
            let base = size.len();
            size.extend(w.iter().map(|&x| x as u32));
            for p in 0..m {
                block[r * m + p] = base + t.get(r, p) as usize - 1;
            }
        }
        Blocks { d, m, block, size }
    }
}

/// True when sgn_T(S) can be nonzero: each row of S has the conjugate
/// weight of the corresponding row of T.
pub fn compatible(t: &Table, s: &Table) -> bool {
    t.d() == s.d()
        && t.m() == s.m()
        && (0..t.d()).all(|r| {
            let conj = Partition::from_composition(&t.row_weight(r)).conjugate();
            s.row_weight(r) == conj.parts()
        })
}

fn exact_div(num: i128, den: u128, what: &str) -> i128 {
    let den = den as i128;
    assert!(num % den == 0, "{what}: {num} is not divisible by {den}");
    num / den
}

/// a(T, S). Returns 0 when the weights are not conjugate.
pub fn coeff_a(t: &Table, s: &Table, method: Method) -> BigInt {
    BigInt::from(coeff_a_i128(t, s, method))
}

pub fn coeff_a_i128(t: &Table, s: &Table, method: Method) -> i128 {
    if !compatible(t, s) {
        return 0;
    }
    let raw = match resolve(method, t.m()) {
        Method::Oracle => exact_div(oracle_sum(t, s, false), t.stabilizer_size() * s.stabilizer_size(), "a(T,S) oracle"),
        _ => exact_div(fillings_a(t, s), t.stabilizer_size(), "a(T,S) fillings"),
    };
    t.sign() as i128 * raw
}

/// b(S, T); T must not have duplicate columns.
pub fn coeff_b(s: &Table, t: &Table, method: Method) -> Result<BigInt> {
    coeff_b_i128(s, t, method).map(BigInt::from)
}

pub fn coeff_b_i128(s: &Table, t: &Table, method: Method) -> Result<i128> {
    if s.d() != t.d() || s.m() != t.m() {
        return Err(Error::Shape(format!("b(S,T) of a {}x{} and a {}x{} table", s.d(), s.m(), t.d(), t.m())));
    }
    if t.has_duplicate_columns() {
        return Err(Error::DuplicateColumns);
    }
    if !compatible(s, t) {
        return Ok(0);
    }
    let raw = match resolve(method, s.m()) {
        Method::Oracle => exact_div(oracle_sum(s, t, true), s.stabilizer_size(), "b(S,T) oracle"),
        _ => exact_div(fillings_b(s, t), s.stabilizer_size(), "b(S,T) fillings"),
    };
    Ok(s.sign() as i128 * raw)
}

/// Σ over all m! column permutations π of sgn_T(π X), times sgn(π) when
/// `signed`. A prefix that already repeats a value inside a block of T can
/// only lead to vanishing terms, so those subtrees are skipped. Each
/// surviving permutation is evaluated from scratch by counting, row by row,
/// the inversions between positions of T that share a letter.
fn oracle_sum(t: &Table, x: &Table, signed: bool) -> i128 {
    let (d, m) = (t.d(), t.m());
    let cols = x.columns();
    let blocks = Blocks::new(t);
    let used = vec![0u64; blocks.size.len()];
    let mut f = Filler { blocks, used, cols: &cols };
    let mut same = Vec::new();
    for r in 0..d {
        for p in 0..m {
            for q in p + 1..m {
                if t.get(r, p) == t.get(r, q) {
                    same.push((r, p, q));
                }
            }
        }
    }
    let leaf = Leaf { x, same, signed };
    let mut perm = Vec::with_capacity(m);

    fn rec(f: &mut Filler, leaf: &Leaf, perm: &mut Vec<usize>, taken: u64) -> i128 {
        let m = f.blocks.m;
        if perm.len() == m {
            return leaf.value(perm);
        }
        let p = perm.len();
        let mut sum = 0;
        for c in 0..m {
            if taken & (1 << c) != 0 {
                continue;
            }
            let col = &f.cols[c];
            if f.place(p, col).is_some() {
                perm.push(c);
                sum += rec(f, leaf, perm, taken | 1 << c);
                perm.pop();
                f.unplace(p, col);
            }
        }
        sum
    }
    rec(&mut f, &leaf, &mut perm, 0)
}

struct Leaf<'a> {
    x: &'a Table,
    // (row, p, q) with p < q and T[row][p] = T[row][q]
    same: Vec<(usize, usize, usize)>,
    signed: bool,
}

impl Leaf<'_> {
    /// sgn_T(π X) (times sgn π) for a π whose blocks all hold permutations.
    fn value(&self, perm: &[usize]) -> i128 {
        let mut inversions = 0;
        for &(r, p, q) in &self.same {
            if self.x.get(r, perm[p]) > self.x.get(r, perm[q]) {
                inversions += 1;
            }
        }
        if self.signed {
            for p in 0..perm.len() {
                for q in p + 1..perm.len() {
                    if perm[p] > perm[q] {
                        inversions += 1;
                    }
                }
            }
        }
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }
}

struct Filler<'a> {
    blocks: Blocks,
    used: Vec<u64>,
    cols: &'a [Vec<Letter>],
}

impl Filler<'_> {
    /// Tries to place `col` at position p; returns the inversion parity
    /// added, or None if some block would repeat or overflow a value.
    fn place(&mut self, p: usize, col: &[Letter]) -> Option<u32> {
        let m = self.blocks.m;
        let mut parity = 0;
        for r in 0..self.blocks.d {
            let b = self.blocks.block[r * m + p];
            let v = col[r] as u32;
            if v > self.blocks.size[b] || self.used[b] & (1 << v) != 0 {
                for q in 0..r {
                    let b = self.blocks.block[q * m + p];
                    self.used[b] &= !(1 << col[q]);
                }
                return None;
            }
            parity += (self.used[b] >> v).count_ones();
            self.used[b] |= 1 << v;
        }
        Some(parity)
    }

    fn unplace(&mut self, p: usize, col: &[Letter]) {
        let m = self.blocks.m;
        for r in 0..self.blocks.d {
            let b = self.blocks.block[r * m + p];
            self.used[b] &= !(1 << col[r]);
        }
    }
}

/// Sum of sgn_T(X) over the distinct arrangements X of the columns of S.
fn fillings_a(t: &Table, s: &Table) -> i128 {
    let mut mult: BTreeMap<Vec<Letter>, usize> = BTreeMap::new();
    for c in s.columns() {
        *mult.entry(c).or_default() += 1;
    }
    let cols: Vec<Vec<Letter>> = mult.keys().cloned().collect();
    let mut left: Vec<usize> = mult.values().copied().collect();
    let blocks = Blocks::new(t);
    let used = vec![0u64; blocks.size.len()];
    let mut f = Filler { blocks, used, cols: &cols };

    fn rec(f: &mut Filler, left: &mut [usize], p: usize, parity: u32) -> i128 {
        if p == f.blocks.m {
            return if parity % 2 == 0 { 1 } else { -1 };
        }
        let mut sum = 0;
        for c in 0..f.cols.len() {
            if left[c] == 0 {
                continue;
            }
            let col = &f.cols[c];
            if let Some(dp) = f.place(p, col) {
                left[c] -= 1;
                sum += rec(f, left, p + 1, parity + dp);
                left[c] += 1;
                f.unplace(p, col);
            }
        }
        sum
    }
    rec(&mut f, &mut left, 0, 0)
}

/// Sum of sign(π) sgn_S(πT) over all arrangements of the distinct columns of T.
fn fillings_b(s: &Table, t: &Table) -> i128 {
    let cols = t.columns();
    let blocks = Blocks::new(s);
    let used = vec![0u64; blocks.size.len()];
    let mut f = Filler { blocks, used, cols: &cols };

    fn rec(f: &mut Filler, taken: u64, p: usize, parity: u32) -> i128 {
        if p == f.blocks.m {
            return if parity % 2 == 0 { 1 } else { -1 };
        }
        let mut sum = 0;
        for c in 0..f.cols.len() {
            if taken & (1 << c) != 0 {
                continue;
            }
            let col = &f.cols[c];
            if let Some(dp) = f.place(p, col) {
                let perm_inv = (taken >> c).count_ones();
                sum += rec(f, taken | 1 << c, p + 1, parity + dp + perm_inv);
                f.unplace(p, col);
            }
        }
        sum
    }
    rec(&mut f, 0, 0, 0)
}
