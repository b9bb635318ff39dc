//! Δ_T and ∇_S in the lex bases, evaluation at unit tensors, and a dense
//! brute-force projector used to cross-check both.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::coeff::{coeff_a_i128, coeff_b_i128, Method};
use crate::combinatorics::{identity_table, lex_tables, Kind, Letter, Table};
use crate::error::{Error, Result};
use crate::expansion::{Expansion, Space};
use crate::signature::BlockStructure;

pub const DEFAULT_DENSE_BUDGET: u128 = 1_000_000;

pub fn delta_expansion(t: &Table) -> Expansion {
    delta_expansion_with(t, Method::Auto)
}

/// Δ_T = Σ_{S ∈ A^lex(λ)} a(T,S) ∨e_S, λ the conjugate weight of T.
pub fn delta_expansion_with(t: &Table, method: Method) -> Expansion {
    let weight = t.weight().conjugate();
    let coeffs: Vec<(Table, i128)> = lex_tables(&weight, Kind::Natural)
        .into_par_iter()
        .map(|s| {
            let c = coeff_a_i128(t, &s, method);
            (s, c)
        })
        .filter(|(_, c)| *c != 0)
        .collect();
    let mut e = Expansion::zero(Space::Sym, weight);
    for (s, c) in coeffs {
        e.add_term(s, BigInt::from(c));
    }
    e
}

pub fn nabla_expansion(s: &Table) -> Expansion {
    nabla_expansion_with(s, Method::Auto)
}

/// ∇_S = Σ_{T ∈ B^lex(λ)} b(S,T) ∧e_T, λ the conjugate weight of S.
pub fn nabla_expansion_with(s: &Table, method: Method) -> Expansion {
    let weight = s.weight().conjugate();
    let coeffs: Vec<(Table, i128)> = lex_tables(&weight, Kind::ZeroOne)
        .into_par_iter()
        .map(|t| {
            let c = coeff_b_i128(s, &t, method).expect("zero-one tables have distinct columns");
            (t, c)
        })
        .filter(|(_, c)| *c != 0)
        .collect();
    let mut e = Expansion::zero(Space::Alt, weight);
    for (t, c) in coeffs {
        e.add_term(t, BigInt::from(c));
    }
    e
}

pub fn pair(e: &Expansion, x: &Table) -> BigInt {
    e.pair(x)
}

pub fn product(a: &Expansion, b: &Expansion) -> Expansion {
    a.product(b)
}

/// Δ_T evaluated at the unit tensor of size n, i.e. a(T, I_{n,k}) with
/// k = m/n; 0 when the weights do not fit.
pub fn eval_unit(t: &Table, n: usize) -> BigInt {
    if n == 0 || t.m() % n != 0 {
        return BigInt::default();
    }
    let i = identity_table(t.d(), n, t.m() / n);
    BigInt::from(coeff_a_i128(t, &i, Method::Auto))
}

/// Builds P_X = Σ_S sgn_X(S) e_S as a dense vector over all sequences of m
/// columns in [n]^d, symmetrizes (or alternates) it by summing over all
/// column permutations, and reads off the coefficients in the lex basis,
/// divided by ‖X‖ (-1)^X.
pub fn tensor_oracle(x: &Table, space: Space, n: usize, budget: u128) -> Result<Expansion> {
    let (d, m) = (x.d(), x.m());
    let weight = x.weight().conjugate();
    let letters = weight.rows().iter().map(Vec::len).max().unwrap_or(0);
    if letters > n {
        return Err(Error::Invalid(format!(
            "weight {weight} needs {letters} letters but the ambient dimension is {n}"
        )));
    }
    let base = (n as u128).checked_pow(d as u32).ok_or(Error::Budget { needed: u128::MAX, budget })?;
    let size = base.checked_pow(m as u32).ok_or(Error::Budget { needed: u128::MAX, budget })?;
    if size > budget {
        return Err(Error::Budget { needed: size, budget });
    }
    let (base, size) = (base as usize, size as usize);
    let decode = |idx: usize| -> Vec<Vec<Letter>> {
        let mut cols = Vec::with_capacity(m);
        let mut rest = idx;
        for _ in 0..m {
            let mut c = rest % base;
            rest /= base;
            let mut col = vec![0; d];
            for r in (0..d).rev() {
                col[r] = (c % n) as Letter + 1;
                c /= n;
            }
            cols.push(col);
        }
        cols
    };
    let encode = |cols: &[&Vec<Letter>]| -> usize {
        let mut idx = 0;
        for col in cols.iter().rev() {
            let c = col.iter().fold(0, |acc, &l| acc * n + (l as usize - 1));
            idx = idx * base + c;
        }
        idx
    };

    let blocks: Vec<BlockStructure> = (0..d).map(|r| BlockStructure::new(x.row(r))).collect();
    let dense: Vec<i8> = (0..size)
        .into_par_iter()
        .map(|idx| {
            let s = Table::from_columns(d, &decode(idx));
            let mut sign = 1;
            for (r, b) in blocks.iter().enumerate() {
                sign *= b.signature(s.row(r));
                if sign == 0 {
                    break;
                }
            }
            sign as i8
        })
        .collect();

    let perms = permutations(m);
    let denom = x.stabilizer_size() as i128 * x.sign() as i128;
    let mut e = Expansion::zero(space, weight.clone());
    for idx in 0..size {
        let cols = decode(idx);
        if cols.windows(2).any(|w| w[0] > w[1] || (space == Space::Alt && w[0] == w[1])) {
            continue;
        }
        let s = Table::from_columns(d, &cols);
        if s.weight() != weight {
            continue;
        }
        let mut w = 0i128;
        for (p, odd) in &perms {
            let permuted: Vec<&Vec<Letter>> = p.iter().map(|&i| &cols[i]).collect();
            let v = dense[encode(&permuted)] as i128;
            w += if space == Space::Alt && *odd { -v } else { v };
        }
        if space == Space::Sym {
            let stab = s.stabilizer_size() as i128;
            assert!(w % stab == 0, "dense symmetrization is not divisible by ‖S‖");
            w /= stab;
        }
        assert!(w % denom == 0, "dense projection is not divisible by ‖X‖");
        e.add_term(s, BigInt::from(w / denom));
    }
    Ok(e)
}

fn permutations(m: usize) -> Vec<(Vec<usize>, bool)> {
    let mut out = vec![(Vec::new(), false)];
    for k in 0..m {
        let mut next = Vec::new();
        for (p, odd) in out {
            for i in 0..=p.len() {
                let mut q = p.clone();
                q.insert(i, k);
                // inserting the largest element at i creates k - i inversions
                next.push((q, odd ^ ((k - i) % 2 == 1)));
            }
        }
        out = next;
    }
    out
}
