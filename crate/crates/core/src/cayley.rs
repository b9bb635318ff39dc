//! The Cayley form ω (odd d), Cayley's first hyperdeterminant δ (even d)
//! and their powers ω^n = ∇_{I_{n,k}}, δ^n = Δ_{I_{n,k}}.

use num_bigint::BigInt;

use crate::coeff::{coeff_a, Method};
use crate::combinatorics::{
    fundamental_table, identity_table, lex_tables, perm_sign, Kind, Partition, Table, WeightTuple,
};
use crate::error::{Error, Result};
use crate::expansion::{Expansion, Space};
use crate::hwv::{delta_expansion, eval_unit, nabla_expansion};
use crate::latin::{alon_tarsi_dk, latin_count};
use crate::report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CanonicalKind {
    /// I_{n,k}: every row is 1^k 2^k ... n^k.
    Identity,
    /// F_{d,k}: all of [k]^d as columns, in lex order.
    Fundamental,
}

pub fn canonical_table(kind: CanonicalKind, d: usize, n: usize, k: usize) -> Table {
    match kind {
        CanonicalKind::Identity => identity_table(d, n, k),
        CanonicalKind::Fundamental => fundamental_table(d, k),
    }
}

/// An expansion together with the report of the checks run on it.
#[derive(Clone, Debug)]
pub struct PowerExpansion {
    pub expansion: Expansion,
    pub report: Report,
}

/// (1/k!) Σ_{π_1..π_d ∈ S_k} sgn(π_1)...sgn(π_d) times the product of the
/// basis vectors e_{π_1(i),...,π_d(i)}, i = 1..k.
pub fn direct_form(space: Space, d: usize, k: usize) -> Expansion {
    let perms = permutations(k);
    let mut total = Expansion::zero(space, WeightTuple::uniform(d, &Partition::rectangle(k, 1)));
    let mut idx = vec![0usize; d];
    loop {
        let cols: Vec<Vec<u16>> =
            (0..k).map(|i| idx.iter().map(|&p| perms[p][i] as u16 + 1).collect()).collect();
        let sign: i32 = idx.iter().map(|&p| perm_sign(&perms[p])).product();
        let term = Expansion::basis(space, &Table::from_columns(d, &cols));
        total = total.add(&term.scale(&BigInt::from(sign)));
        let mut r = d;
        loop {
            if r == 0 {
                let kf: BigInt = (1..=k).product::<usize>().into();
                let mut out = Expansion::zero(space, total.weight().clone());
                for (x, c) in total.terms() {
                    assert!((c % &kf) == BigInt::from(0), "direct formula is not divisible by k!");
                    out.add_term(x.clone(), c / &kf);
                }
                return out;
            }
            r -= 1;
            idx[r] += 1;
            if idx[r] < perms.len() {
                break;
            }
            idx[r] = 0;
        }
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for x in 0..k {
        out = out
            .into_iter()
            .flat_map(|p: Vec<usize>| {
                (0..=p.len()).map(move |i| {
                    let mut q = p.clone();
                    q.insert(i, x);
                    q
                })
            })
            .collect();
    }
    out.sort();
    out
}

fn rect_weight(d: usize, rows: usize, cols: usize) -> WeightTuple {
    WeightTuple::uniform(d, &Partition::rectangle(rows, cols))
}

/// ω^n = ∇_{I_{n,k}} for odd d, checked coefficient by coefficient against
/// (-1)^{(n×k)^d} Δ_T(I_n).
pub fn omega_power(d: usize, k: usize, n: usize) -> Result<PowerExpansion> {
    if d % 2 == 0 || k == 0 || n == 0 {
        return Err(Error::Invalid(format!("omega_power needs odd d and k, n >= 1 (got d={d} k={k} n={n})")));
    }
    let e = nabla_expansion(&identity_table(d, n, k));
    let mut report = Report::new(format!("omega power d={d} k={k} n={n}"));
    let sign = rect_weight(d, n, k).sign();
    let single = Partition::rectangle(n, k).sign();
    report.check(sign == single, || format!("tuple sign {sign} differs from the rectangle sign {single}"));
    let top = k.pow(d as u32 - 1);
    if n > top {
        report.check(e.is_zero(), || format!("expected zero, found {} terms", e.len()));
    } else {
        for t in lex_tables(&rect_weight(d, k, n), Kind::ZeroOne) {
            let expected = eval_unit(&t, n) * sign;
            let got = e.pair(&t);
            report.check(got == expected, || format!("T={t}: coefficient {got}, expected {expected}"));
        }
        if n == top {
            let f = fundamental_table(d, k);
            let expected = alon_tarsi_dk(d, k) * f.sign() * sign;
            report.check(e.len() <= 1 && e.pair(&f) == expected, || {
                format!("expected the single term {expected} at F, found {} terms", e.len())
            });
        }
    }
    Ok(PowerExpansion { expansion: e, report: report.finish() })
}

/// δ^n = Δ_{I_{n,k}} for even d, checked against Σ_S Δ_S(I_n) ∨e_S.
pub fn delta_power(d: usize, k: usize, n: usize) -> Result<PowerExpansion> {
    if d % 2 == 1 || d == 0 || k == 0 || n == 0 {
        return Err(Error::Invalid(format!("delta_power needs even d >= 2 and k, n >= 1 (got d={d} k={k} n={n})")));
    }
    let e = delta_expansion(&identity_table(d, n, k));
    let mut report = Report::new(format!("hyperdeterminant power d={d} k={k} n={n}"));
    for s in lex_tables(&rect_weight(d, k, n), Kind::Natural) {
        let expected = eval_unit(&s, n);
        let got = e.pair(&s);
        report.check(got == expected, || format!("S={s}: coefficient {got}, expected {expected}"));
    }
    if n == k.pow(d as u32 - 1) {
        let f = fundamental_table(d, k);
        let expected = alon_tarsi_dk(d, k) * f.sign();
        let got = e.pair(&f);
        report.check(got == expected, || format!("full support: coefficient {got}, expected {expected}"));
    }
    Ok(PowerExpansion { expansion: e, report: report.finish() })
}

/// F_{c,k} on top, then further copies of F_{c,k} (`copies` in total),
/// then rows equal to the last row of F_{c,k} up to d rows.
fn stacked(d: usize, c: usize, k: usize, copies: usize) -> Table {
    let f = fundamental_table(c, k);
    let mut rows = Vec::new();
    for _ in 0..copies {
        rows.extend(f.rows());
    }
    while rows.len() < d {
        rows.push(f.row(c - 1).to_vec());
    }
    Table::new(rows).expect("equal lengths")
}

pub fn t_odd(d: usize, c: usize, k: usize) -> Table {
    stacked(d, c, k, 1)
}

pub fn t_even(d: usize, c: usize, k: usize) -> Table {
    stacked(d, c, k, 2)
}

/// Coefficients of δ^{k^{c-1}} at T_even (when 2c <= d) and at T_odd.
pub fn even_coefficients(d: usize, c: usize, k: usize) -> Result<(Option<BigInt>, BigInt)> {
    if d % 2 == 1 || c % 2 == 1 || c < 2 || c > d || k == 0 {
        return Err(Error::Invalid(format!("need even d, even c in [2, d] and k >= 1 (got d={d} c={c} k={k})")));
    }
    let i = identity_table(d, k.pow(c as u32 - 1), k);
    let even = (2 * c <= d).then(|| coeff_a(&i, &t_even(d, c, k), Method::Auto));
    Ok((even, coeff_a(&i, &t_odd(d, c, k), Method::Auto)))
}

/// T_even has coefficient |L_c(k)|, T_odd has coefficient (-1)^F AT_c(k),
/// F = F_{c,k}.
pub fn check_even_coeff_props(d: usize, c: usize, k: usize) -> Result<Report> {
    let (even, odd) = even_coefficients(d, c, k)?;
    let mut report = Report::new(format!("T_even/T_odd coefficients d={d} c={c} k={k}"));
    if let Some(even) = even {
        let count = latin_count(c, k);
        report.check(even == count, || format!("T_even coefficient {even}, expected |L| = {count}"));
    }
    let at = alon_tarsi_dk(c, k) * fundamental_table(c, k).sign();
    report.check(odd == at, || format!("T_odd coefficient {odd}, expected {at}"));
    Ok(report.finish())
}
