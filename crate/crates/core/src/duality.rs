//! Coefficient matrices {a(T,S)} and {b(S,T)}, their ranks, and the
//! duality and isomorphism checks.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use crate::coeff::{coeff_a_i128, coeff_b_i128, Method};
use crate::combinatorics::{lex_tables, Kind, Table, WeightTuple};
use crate::kronecker::kron;
use crate::linalg::exact_rank;
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    A,
    B,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffMatrix {
    pub kind: MatrixKind,
    pub weight: WeightTuple,
    pub row_index: Vec<Table>,
    pub col_index: Vec<Table>,
    pub entries: Vec<Vec<BigInt>>,
}

/// Row and column index sets of the matrix of the given kind for weight λ.
pub fn index_sets(w: &WeightTuple, kind: MatrixKind) -> (Vec<Table>, Vec<Table>) {
    let conj = w.conjugate();
    let odd = w.d() % 2 == 1;
    match kind {
        MatrixKind::A => {
            let rows = lex_tables(&conj, if odd { Kind::ZeroOne } else { Kind::Natural });
            (rows, lex_tables(w, Kind::Natural))
        }
        MatrixKind::B => {
            let rows = lex_tables(&conj, if odd { Kind::Natural } else { Kind::ZeroOne });
            (rows, lex_tables(w, Kind::ZeroOne))
        }
    }
}

pub fn coeff_matrix(w: &WeightTuple, kind: MatrixKind) -> CoeffMatrix {
    coeff_matrix_with(w, kind, Method::Auto)
}

pub fn coeff_matrix_with(w: &WeightTuple, kind: MatrixKind, method: Method) -> CoeffMatrix {
    let (row_index, col_index) = index_sets(w, kind);
    let entries = row_index
        .par_iter()
        .map(|r| {
            col_index
                .iter()
                .map(|c| {
                    BigInt::from(match kind {
                        MatrixKind::A => coeff_a_i128(r, c, method),
                        MatrixKind::B => coeff_b_i128(r, c, method).expect("columns are zero-one tables"),
                    })
                })
                .collect()
        })
        .collect();
    CoeffMatrix { kind, weight: w.clone(), row_index, col_index, entries }
}

impl CoeffMatrix {
    pub fn rank(&self) -> usize {
        exact_rank(&self.entries)
    }

    pub fn transpose(&self) -> Vec<Vec<BigInt>> {
        (0..self.col_index.len())
            .map(|c| self.entries.iter().map(|row| row[c].clone()).collect())
            .collect()
    }

    /// Header row of column indices, then one line per row index.
    pub fn to_csv(&self) -> String {
        let quote = |t: &Table| {
            let s = t.to_string();
            if s.contains(',') {
                format!("\"{s}\"")
            } else {
                s
            }
        };
        let mut out = String::from("index");
        for c in &self.col_index {
            write!(out, ",{}", quote(c)).unwrap();
        }
        out.push('\n');
        for (r, row) in self.row_index.iter().zip(&self.entries) {
            out.push_str(&quote(r));
            for x in row {
                write!(out, ",{x}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

pub fn exact_rank_of(m: &CoeffMatrix) -> usize {
    m.rank()
}

/// The weight (λ^(1)', λ^(2), ..., λ^(d)) whose Kronecker coefficient is
/// the dimension of the alternating highest weight space of weight λ.
pub fn alt_partner(w: &WeightTuple) -> WeightTuple {
    let mut parts = w.sorted();
    parts[0] = parts[0].conjugate();
    WeightTuple::new(parts).expect("conjugation preserves size")
}

/// Odd d: a(T,S) = (-1)^λ b(S,T). Even d: a(T,S) = (-1)^λ a(S,T) and
/// b(S,T) = (-1)^λ b(T,S).
pub fn check_duality(w: &WeightTuple) -> Report {
    let sign = w.sign() as i128;
    let conj = w.conjugate();
    let mut report = Report::new(format!("duality for {w}"));
    let check_pairs = |report: &mut Report, ts: &[Table], ss: &[Table], f: &(dyn Fn(&Table, &Table) -> (i128, i128) + Sync)| {
        let bad: Vec<(u64, Vec<String>)> = ts
            .par_iter()
            .map(|t| {
                let mut n = 0;
                let mut bad = Vec::new();
                for s in ss {
                    n += 1;
                    let (x, y) = f(t, s);
                    if x != sign * y {
                        bad.push(format!("T={t} S={s}: {x} vs {}", sign * y));
                    }
                }
                (n, bad)
            })
            .collect();
        for (n, b) in bad {
            report.checked += n - b.len() as u64;
            for v in b {
                report.check(false, || v);
            }
        }
    };
    if w.d() % 2 == 1 {
        let ts = lex_tables(&conj, Kind::ZeroOne);
        let ss = lex_tables(w, Kind::Natural);
        check_pairs(&mut report, &ts, &ss, &|t, s| {
            (coeff_a_i128(t, s, Method::Auto), coeff_b_i128(s, t, Method::Auto).expect("zero-one"))
        });
    } else {
        let ts = lex_tables(&conj, Kind::Natural);
        let ss = lex_tables(w, Kind::Natural);
        check_pairs(&mut report, &ts, &ss, &|t, s| (coeff_a_i128(t, s, Method::Auto), coeff_a_i128(s, t, Method::Auto)));
        let ss = lex_tables(&conj, Kind::ZeroOne);
        let ts = lex_tables(w, Kind::ZeroOne);
        check_pairs(&mut report, &ss, &ts, &|s, t| {
            (coeff_b_i128(s, t, Method::Auto).expect("zero-one"), coeff_b_i128(t, s, Method::Auto).expect("zero-one"))
        });
    }
    report.finish()
}

/// Ranks of the a- and b-matrices against the Kronecker coefficients of
/// the symmetric and alternating sides, plus the transpose relations
/// between the matrices of λ and λ'.
pub fn check_isomorphism(w: &WeightTuple) -> Report {
    let mut report = Report::new(format!("isomorphism for {w}"));
    let g_sym = kron(w);
    let g_alt = kron(&alt_partner(w));
    let a = coeff_matrix(w, MatrixKind::A);
    let b = coeff_matrix(w, MatrixKind::B);
    let (ra, rb) = (a.rank(), b.rank());
    report.check(BigInt::from(ra) == g_sym, || format!("rank of a-matrix {ra} != g = {g_sym}"));
    report.check(BigInt::from(rb) == g_alt, || format!("rank of b-matrix {rb} != g = {g_alt}"));

    let conj = w.conjugate();
    let sign = BigInt::from(w.sign());
    let mut compare = |name: &str, m: &CoeffMatrix, other: &CoeffMatrix| {
        let t = other.transpose();
        let ok = m.row_index == other.col_index
            && m.col_index == other.row_index
            && m.entries.iter().zip(&t).all(|(x, y)| x.iter().zip(y).all(|(u, v)| *u == &sign * v));
        report.check(ok, || format!("{name} is not (-1)^λ times the transpose"));
        let r = m.rank();
        report.check(r == other.rank(), || format!("{name} has rank {r}, transpose partner differs"));
    };
    if w.d() % 2 == 1 {
        compare("b-matrix of λ'", &coeff_matrix(&conj, MatrixKind::B), &a);
    } else {
        compare("a-matrix of λ'", &coeff_matrix(&conj, MatrixKind::A), &a);
        compare("b-matrix of λ'", &coeff_matrix(&conj, MatrixKind::B), &b);
    }
    report.finish()
}

/// rank of the a-matrix and the Kronecker coefficient, for sweeps.
pub fn rank_vs_kron(w: &WeightTuple) -> (usize, u64) {
    let g = kron(w).to_u64().expect("small Kronecker coefficient");
    (coeff_matrix(w, MatrixKind::A).rank(), g)
}
