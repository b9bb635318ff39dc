//! Boundary tables, raising operators E^(l)_{ij}, the highest weight test,
//! and the boundary relations among the Δ and ∇ spanning sets.
//!
//! Directions `l` are 0-based here; letters are 1-based.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::combinatorics::{lex_tables, Kind, Letter, Table, WeightTuple};
use crate::duality::alt_partner;
use crate::error::{Error, Result};
use crate::expansion::{Expansion, Space};
use crate::hwv::{delta_expansion, nabla_expansion};
use crate::kronecker::kron;
use crate::linalg::exact_rank;
use crate::report::Report;

/// E^(l)_{ij} with i < j.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RaisingIndex {
    pub l: usize,
    pub i: Letter,
    pub j: Letter,
}

impl RaisingIndex {
    pub fn new(l: usize, i: Letter, j: Letter) -> Result<RaisingIndex> {
        if i == 0 || i >= j {
            return Err(Error::Invalid(format!("raising index needs 1 <= i < j, got i={i} j={j}")));
        }
        Ok(RaisingIndex { l, i, j })
    }
}

/// Tables obtained by replacing one occurrence of j by i in row l, one per
/// occurrence, column order preserved.
pub fn boundary(s: &Table, l: usize, i: Letter, j: Letter) -> Vec<Table> {
    (0..s.m())
        .filter(|&c| s.get(l, c) == j)
        .map(|c| {
            let mut t = s.clone();
            t.set(l, c, i);
            t
        })
        .collect()
}

/// The weight α^(l)_{ij} w: one more i and one fewer j in row l.
pub fn shifted_weight(w: &WeightTuple, l: usize, i: Letter, j: Letter) -> Option<WeightTuple> {
    let mut row = w.rows()[l].clone();
    let (i, j) = (i as usize - 1, j as usize - 1);
    if row.get(j).copied().unwrap_or(0) == 0 {
        return None;
    }
    if row.len() <= i {
        row.resize(i + 1, 0);
    }
    row[i] += 1;
    row[j] -= 1;
    w.with_row(l, row).ok()
}

/// Applies E^(l)_{ij} term by term.
pub fn raising_apply(e: &Expansion, l: usize, i: Letter, j: Letter) -> Expansion {
    assert!(i < j, "raising operators need i < j");
    let weight = shifted_weight(e.weight(), l, i, j).unwrap_or_else(|| e.weight().clone());
    let mut out = Expansion::zero(e.space(), weight);
    for (x, c) in e.terms() {
        for y in boundary(x, l, i, j) {
            let n = y.lex_normalize();
            match e.space() {
                Space::Sym => out.add_term(n.table, c.clone()),
                Space::Alt if n.has_duplicates => {}
                Space::Alt => out.add_term(n.table, c * n.sign),
            }
        }
    }
    out
}

fn letters_in_row(e: &Expansion, l: usize) -> Letter {
    e.terms().keys().flat_map(|x| x.row(l).iter().copied()).max().unwrap_or(0)
}

/// True iff every Chevalley raising operator E^(l)_{i,i+1} kills e.
pub fn is_hwv(e: &Expansion) -> bool {
    (0..e.d()).all(|l| (1..letters_in_row(e, l)).all(|i| raising_apply(e, l, i, i + 1).is_zero()))
}

/// Same test over all pairs i < j.
pub fn is_hwv_all_pairs(e: &Expansion) -> bool {
    (0..e.d()).all(|l| {
        let n = letters_in_row(e, l);
        (1..n).all(|i| (i + 1..=n).all(|j| raising_apply(e, l, i, j).is_zero()))
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelationForm {
    /// Σ_T ‖T‖ Δ_T = 0: each boundary table weighted by its stabilizer size.
    Weighted,
    /// Σ_T Δ_T = 0 with unit weights.
    Unit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RelationOptions {
    pub all_pairs: bool,
    pub form: RelationForm,
}

impl Default for RelationOptions {
    fn default() -> Self {
        RelationOptions { all_pairs: false, form: RelationForm::Weighted }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Δ relations (symmetric image).
    Sym,
    /// ∇ relations (alternating image).
    Alt,
}

fn raising_indices(conj: &WeightTuple, all_pairs: bool) -> Vec<RaisingIndex> {
    let mut out = Vec::new();
    for l in 0..conj.d() {
        let n = conj.rows()[l].len() as Letter;
        for i in 1..n {
            let top = if all_pairs { n } else { i + 1 };
            for j in i + 1..=top {
                out.push(RaisingIndex { l, i, j });
            }
        }
    }
    out
}

/// Index family of the relations: B for Δ at odd d and for ∇ at even d,
/// A otherwise. The same family indexes the domain of the map.
fn family(side: Side, d: usize) -> Kind {
    match (side, d % 2 == 1) {
        (Side::Sym, true) | (Side::Alt, false) => Kind::ZeroOne,
        _ => Kind::Natural,
    }
}

/// All (index, X) pairs together with ∂^(l)_{ji}(X).
fn relations(w: &WeightTuple, side: Side, all_pairs: bool) -> Vec<(RaisingIndex, Table, Vec<Table>)> {
    let conj = w.conjugate();
    let kind = family(side, w.d());
    let mut out = Vec::new();
    for idx in raising_indices(&conj, all_pairs) {
        let Some(shifted) = shifted_weight(&conj, idx.l, idx.i, idx.j) else { continue };
        for x in lex_tables(&shifted, kind) {
            let b = boundary(&x, idx.l, idx.j, idx.i);
            out.push((idx, x, b));
        }
    }
    out
}

/// Σ_{T ∈ ∂^(l)_{ji}(X)} w_T Δ_T = 0 (side Sym) or the ∇ analogue (side
/// Alt), for every raising index and every X of weight α^(l)_{ij} λ'.
pub fn check_relations_side(w: &WeightTuple, side: Side, opts: RelationOptions) -> Report {
    let name = match side {
        Side::Sym => "Δ",
        Side::Alt => "∇",
    };
    let form = match opts.form {
        RelationForm::Weighted => "stabilizer-weighted",
        RelationForm::Unit => "unit-weight",
    };
    let mut report = Report::new(format!("{name} boundary relations ({form}) for {w}"));
    let d = w.d();
    let rels = relations(w, side, opts.all_pairs);

    let needed: BTreeSet<Table> =
        rels.iter().flat_map(|(_, _, b)| b.iter().map(|t| t.lex_normalize().table)).collect();
    let cache: HashMap<Table, Expansion> = needed
        .into_par_iter()
        .map(|t| {
            let e = match side {
                Side::Sym => delta_expansion(&t),
                Side::Alt => nabla_expansion(&t),
            };
            (t, e)
        })
        .collect();
    let zero = Expansion::zero(
        match side {
            Side::Sym => Space::Sym,
            Side::Alt => Space::Alt,
        },
        w.clone(),
    );

    for (idx, x, b) in &rels {
        let mut sum = zero.clone();
        for t in b {
            let n = t.lex_normalize();
            // column swap rule: Δ picks up sign^d, ∇ picks up sign^(d+1)
            let power = match side {
                Side::Sym => d,
                Side::Alt => d + 1,
            };
            let sign = if power % 2 == 0 { 1 } else { n.sign };
            let weight = match opts.form {
                RelationForm::Weighted => t.stabilizer_size(),
                RelationForm::Unit => 1,
            };
            sum = sum.add(&cache[&n.table].scale(&BigInt::from(sign as i128 * weight as i128)));
        }
        report.check(sum.is_zero(), || {
            format!("l={} i={} j={} X={x}: sum has {} nonzero terms", idx.l + 1, idx.i, idx.j, sum.len())
        });
    }
    report.finish()
}

/// Both Δ and ∇ relations.
pub fn check_relations(w: &WeightTuple, opts: RelationOptions) -> Report {
    let mut report = Report::new(format!("boundary relations for {w}"));
    report.absorb(check_relations_side(w, Side::Sym, opts));
    report.absorb(check_relations_side(w, Side::Alt, opts));
    report.finish()
}

/// Rank r of the span of E^(l)_{ji} applied to the basis vectors of the
/// relation family, compared with dim(domain) - g.
pub fn kernel_dimension(w: &WeightTuple, side: Side, opts: RelationOptions) -> Report {
    let d = w.d();
    let conj = w.conjugate();
    let kind = family(side, d);
    let domain = lex_tables(&conj, kind);
    let position: HashMap<&Table, usize> = domain.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut rows = Vec::new();
    for (_, _, b) in relations(w, side, opts.all_pairs) {
        let mut v = vec![BigInt::default(); domain.len()];
        for t in b {
            let n = t.lex_normalize();
            match kind {
                Kind::ZeroOne if n.has_duplicates => {}
                Kind::ZeroOne => v[position[&n.table]] += n.sign,
                Kind::Natural => v[position[&n.table]] += 1,
            }
        }
        rows.push(v);
    }
    let r = exact_rank(&rows);
    let g = match side {
        Side::Sym => kron(w),
        Side::Alt => kron(&alt_partner(w)),
    };
    let name = match side {
        Side::Sym => "sym",
        Side::Alt => "alt",
    };
    let mut report = Report::new(format!("kernel dimension ({name}) for {w}"));
    let dim = domain.len();
    report.check(BigInt::from(r) + &g == BigInt::from(dim), || {
        format!("rank of boundary span {r} + g {g} != domain dimension {dim}")
    });
    report.finish()
}
