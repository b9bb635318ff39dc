use super::partition::{lattice_words, Partition, WeightTuple};
use super::table::{Letter, Table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Kind {
    Natural,
    ZeroOne,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Form {
    Lex,
    Lattice,
}

/// All tables of weight `w` of the given kind and form, sorted.
pub fn enumerate_tables(w: &WeightTuple, kind: Kind, form: Form) -> Vec<Table> {
    match form {
        Form::Lex => lex_tables(w, kind),
        Form::Lattice => lattice_tables(w, kind),
    }
}

struct Cells {
    coords: Vec<Vec<Letter>>,
    // rem_after[k][r]: cells after k sharing coordinate r with cell k
    rem_after: Vec<Vec<usize>>,
}

fn cells(w: &WeightTuple) -> Cells {
    let d = w.d();
    let mut coords: Vec<Vec<Letter>> = vec![Vec::new()];
    for r in 0..d {
        let letters: Vec<Letter> =
            (0..w.rows()[r].len()).filter(|&i| w.rows()[r][i] > 0).map(|i| i as Letter + 1).collect();
        coords = coords
            .into_iter()
            .flat_map(|c| {
                letters.iter().map(move |&x| {
                    let mut c = c.clone();
                    c.push(x);
                    c
                })
            })
            .collect();
    }
    let n = coords.len();
    let mut rem_after = vec![vec![0; d]; n];
    for r in 0..d {
        let mut seen = std::collections::HashMap::<Letter, usize>::new();
        for k in (0..n).rev() {
            let e = seen.entry(coords[k][r]).or_insert(0);
            rem_after[k][r] = *e;
            *e += 1;
        }
    }
    Cells { coords, rem_after }
}

/// Calls `f` once per lex-table of weight `w` (in no particular order).
pub fn visit_lex_tables(w: &WeightTuple, kind: Kind, mut f: impl FnMut(Table)) {
    let d = w.d();
    if w.m() == 0 {
        f(Table::empty(d));
        return;
    }
    let cells = cells(w);
    let mut res: Vec<Vec<usize>> = w.rows().to_vec();
    let mut cols: Vec<Vec<Letter>> = Vec::with_capacity(w.m());
    rec(&cells, kind, 0, &mut res, &mut cols, d, &mut f);

    fn rec(
        cells: &Cells,
        kind: Kind,
        k: usize,
        res: &mut [Vec<usize>],
        cols: &mut Vec<Vec<Letter>>,
        d: usize,
        f: &mut impl FnMut(Table),
    ) {
        if k == cells.coords.len() {
            if res[0].iter().all(|&x| x == 0) {
                f(Table::from_columns(d, cols));
            }
            return;
        }
        let c = &cells.coords[k];
        let mut hi = usize::MAX;
        let mut lo = 0;
        for r in 0..d {
            let x = res[r][c[r] as usize - 1];
            hi = hi.min(x);
            let after = cells.rem_after[k][r];
            let need = match kind {
                Kind::ZeroOne => x.saturating_sub(after),
                Kind::Natural if after == 0 => x,
                Kind::Natural => 0,
            };
            lo = lo.max(need);
        }
        if kind == Kind::ZeroOne {
            hi = hi.min(1);
        }
        if lo > hi {
            return;
        }
        for v in lo..=hi {
            for r in 0..d {
                res[r][c[r] as usize - 1] -= v;
            }
            for _ in 0..v {
                cols.push(c.clone());
            }
            rec(cells, kind, k + 1, res, cols, d, f);
            cols.truncate(cols.len() - v);
            for r in 0..d {
                res[r][c[r] as usize - 1] += v;
            }
        }
    }
}

/// A^lex(w) (natural) or B^lex(w) (zero-one), sorted.
pub fn lex_tables(w: &WeightTuple, kind: Kind) -> Vec<Table> {
    let mut out = Vec::new();
    visit_lex_tables(w, kind, |t| out.push(t));
    out.sort_unstable();
    out
}

/// A+(w) or B+(w): tuples of lattice words, sorted.
pub fn lattice_tables(w: &WeightTuple, kind: Kind) -> Vec<Table> {
    let Some(parts) = w.partitions() else {
        return Vec::new();
    };
    let per_row: Vec<Vec<Vec<Letter>>> = parts.iter().map(lattice_words).collect();
    let mut out: Vec<Vec<Vec<Letter>>> = vec![Vec::new()];
    for words in &per_row {
        out = out
            .into_iter()
            .flat_map(|pre| {
                words.iter().map(move |wd| {
                    let mut v = pre.clone();
                    v.push(wd.clone());
                    v
                })
            })
            .collect();
    }
    out.into_iter()
        .map(|rows| Table::new(rows).expect("equal lengths"))
        .filter(|t| kind == Kind::Natural || !t.has_duplicate_columns())
        .collect()
}

/// The weight obtained from λ' by conjugating every row.
pub fn conjugate_weight(w: &WeightTuple) -> WeightTuple {
    w.conjugate()
}

/// Identity table I_{n,k}: every row is 1^k 2^k ... n^k.
pub fn identity_table(d: usize, n: usize, k: usize) -> Table {
    let row: Vec<Letter> = (1..=n as Letter).flat_map(|i| std::iter::repeat_n(i, k)).collect();
    if row.is_empty() {
        return Table::empty(d);
    }
    Table::new(vec![row; d]).expect("rectangular")
}

/// F_{d,k}: the columns are all of [k]^d in lex order.
pub fn fundamental_table(d: usize, k: usize) -> Table {
    let w = WeightTuple::uniform(d, &Partition::rectangle(k, k.pow(d as u32 - 1)));
    let mut cols: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..d {
        cols = cols
            .into_iter()
            .flat_map(|c| {
                (1..=k as Letter).map(move |x| {
                    let mut c = c.clone();
                    c.push(x);
                    c
                })
            })
            .collect();
    }
    let t = Table::from_columns(d, &cols);
    debug_assert!(k == 0 || t.weight() == w);
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn w(s: &str) -> WeightTuple {
        WeightTuple::parse_shorthand(s).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(lex_tables(&w("2,2|2,2"), Kind::Natural).len(), 3);
        let b = lex_tables(&w("2,2|2,2"), Kind::ZeroOne);
        assert_eq!(b, vec![Table::parse_shorthand("1122/1212").unwrap()]);
        let l = lattice_tables(&w("2,1"), Kind::Natural);
        assert_eq!(l, vec![Table::parse_shorthand("112").unwrap(), Table::parse_shorthand("121").unwrap()]);
    }

    #[test]
    fn empty_and_infeasible() {
        assert_eq!(lex_tables(&w("|"), Kind::Natural), vec![Table::empty(2)]);
        assert!(lex_tables(&w("2|2|2"), Kind::ZeroOne).is_empty());
        assert_eq!(lex_tables(&w("2|1,1|1,1"), Kind::ZeroOne).len(), 2);
        assert!(lex_tables(&w("3|3"), Kind::ZeroOne).is_empty());
    }

    // Brute force: every word tuple of weight w, collapsed by sorting columns.
    fn brute_lex(w: &WeightTuple) -> BTreeSet<Table> {
        let parts = w.sorted();
        let mut words: Vec<Vec<Vec<Letter>>> = Vec::new();
        for p in &parts {
            let base: Vec<Letter> =
                p.parts().iter().enumerate().flat_map(|(i, &c)| std::iter::repeat_n(i as Letter + 1, c)).collect();
            let mut all = BTreeSet::new();
            permutations(&base, &mut all);
            words.push(all.into_iter().collect());
        }
        let mut out = BTreeSet::new();
        let mut idx = vec![0usize; parts.len()];
        // fix row 0 up to column permutation: only its sorted word is needed
        let first = &words[0][0];
        loop {
            let mut rows = vec![first.clone()];
            for r in 1..parts.len() {
                rows.push(words[r][idx[r]].clone());
            }
            out.insert(Table::new(rows).unwrap().lex_normalize().table);
            let mut r = parts.len();
            loop {
                if r <= 1 {
                    return out;
                }
                r -= 1;
                idx[r] += 1;
                if idx[r] < words[r].len() {
                    break;
                }
                idx[r] = 0;
            }
        }
    }

    fn permutations(base: &[Letter], out: &mut BTreeSet<Vec<Letter>>) {
        fn rec(rest: &mut Vec<Letter>, cur: &mut Vec<Letter>, out: &mut BTreeSet<Vec<Letter>>) {
            if rest.is_empty() {
                out.insert(cur.clone());
                return;
            }
            for i in 0..rest.len() {
                let x = rest.remove(i);
                cur.push(x);
                rec(rest, cur, out);
                cur.pop();
                rest.insert(i, x);
            }
        }
        rec(&mut base.to_vec(), &mut Vec::new(), out);
    }

    #[test]
    fn lex_matches_brute_force() {
        for d in 1..=3 {
            for m in 0..=4 {
                for wt in WeightTuple::all(d, m) {
                    let fast = lex_tables(&wt, Kind::Natural);
                    let brute: Vec<Table> = brute_lex(&wt).into_iter().collect();
                    assert_eq!(fast, brute, "{wt}");
                    let zo: Vec<Table> = brute.into_iter().filter(|t| !t.has_duplicate_columns()).collect();
                    assert_eq!(lex_tables(&wt, Kind::ZeroOne), zo, "{wt}");
                }
            }
        }
    }

    #[test]
    fn lex_matches_brute_force_m5_d3_sample() {
        for s in ["3,2|2,2,1|3,1,1", "2,2,1|2,2,1|2,2,1", "5|3,2|2,1,1,1", "1,1,1,1,1|2,2,1|4,1"] {
            let wt = w(s);
            let brute: Vec<Table> = brute_lex(&wt).into_iter().collect();
            assert_eq!(lex_tables(&wt, Kind::Natural), brute, "{s}");
        }
    }

    #[test]
    fn dline_roundtrip_on_enumerated() {
        use super::super::table::Hypermatrix;
        for wt in WeightTuple::all(2, 6).into_iter().chain(WeightTuple::all(3, 4)) {
            for t in lex_tables(&wt, Kind::Natural) {
                assert_eq!(Hypermatrix::from_table(&t).dline(), t);
                let perm: Vec<usize> = (0..t.m()).rev().collect();
                assert_eq!(Hypermatrix::from_table(&t.permute_columns(&perm)).dline(), t);
            }
        }
    }

    #[test]
    fn lattice_count_is_product_of_dimensions() {
        for wt in WeightTuple::all(2, 5) {
            let expected: usize = wt.sorted().iter().map(|p| lattice_words(p).len()).product();
            assert_eq!(lattice_tables(&wt, Kind::Natural).len(), expected);
        }
    }

    #[test]
    fn lex_output_is_sorted_and_lex() {
        let ts = lex_tables(&w("2,1,1|2,2|3,1"), Kind::Natural);
        assert!(ts.windows(2).all(|p| p[0] < p[1]));
        assert!(ts.iter().all(Table::is_lex));
    }

    #[test]
    fn composition_weights() {
        // a zero in the middle of a row: letter 2 never appears
        let wt = WeightTuple::from_compositions(vec![vec![1, 0, 1], vec![2]]).unwrap();
        assert_eq!(lex_tables(&wt, Kind::Natural), vec![Table::parse_shorthand("13/11").unwrap()]);
    }

    #[test]
    fn canonical_tables() {
        assert_eq!(identity_table(3, 1, 2), Table::parse_shorthand("11/11/11").unwrap());
        assert_eq!(identity_table(2, 2, 2), Table::parse_shorthand("1122/1122").unwrap());
        assert_eq!(
            fundamental_table(3, 2),
            Table::parse_shorthand("11112222/11221122/12121212").unwrap()
        );
    }
}
