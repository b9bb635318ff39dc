//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use kronhwv::cayley::{check_even_coeff_props, delta_power, even_coefficients, omega_power};
use kronhwv::coeff::{coeff_a_i128, Method};
use kronhwv::combinatorics::*;
use kronhwv::duality::{check_duality, coeff_matrix, rank_vs_kron, MatrixKind};
use kronhwv::expansion::{Expansion, Space};
use kronhwv::hwv::{delta_expansion, eval_unit, nabla_expansion, tensor_oracle, DEFAULT_DENSE_BUDGET};
use kronhwv::kronecker::{dim_irrep, factorial, kron, mn_character};
use kronhwv::latin::{alon_tarsi, alon_tarsi_dk, latin_count};
use kronhwv::relations::{check_relations, kernel_dimension, RelationForm, RelationOptions, Side};
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

fn w(s: &str) -> WeightTuple {
    WeightTuple::parse_shorthand(s).unwrap()
}

fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

fn within(start: Instant, limit: Duration, what: &str) {
    let t = start.elapsed();
    assert!(t <= limit, "{what} took {t:?}, limit {limit:?}");
}

/// Latin hypercubes by plain backtracking: cells of [k]^d in lex order,
/// values in [k^(d-1)], every axis-parallel slice a permutation. Returns
/// the count and the sum of the products of the slice signs.
fn brute_latin(d: usize, k: usize) -> (i64, i64) {
    let n = k.pow(d as u32 - 1);
    let cells: Vec<Vec<usize>> = (0..k.pow(d as u32))
        .map(|mut c| {
            let mut v = vec![0; d];
            for x in v.iter_mut().rev() {
                *x = c % k;
                c /= k;
            }
            v
        })
        .collect();
    let mut fill = vec![0usize; cells.len()];
    let mut out = (0, 0);
    fn sign_of(values: &[usize]) -> i64 {
        let mut s = 1;
        for i in 0..values.len() {
            for j in i + 1..values.len() {
                if values[i] > values[j] {
                    s = -s;
                }
            }
        }
        s
    }
    fn go(pos: usize, cells: &[Vec<usize>], fill: &mut Vec<usize>, n: usize, d: usize, k: usize, out: &mut (i64, i64)) {
        if pos == cells.len() {
            let mut s = 1;
            for l in 0..d {
                for level in 0..k {
                    let slice: Vec<usize> =
                        (0..cells.len()).filter(|&c| cells[c][l] == level).map(|c| fill[c]).collect();
                    s *= sign_of(&slice);
                }
            }
            out.0 += 1;
            out.1 += s;
            return;
        }
        for v in 0..n {
            let clash = (0..pos).any(|c| fill[c] == v && (0..d).any(|l| cells[c][l] == cells[pos][l]));
            if !clash {
                fill[pos] = v;
                go(pos + 1, cells, fill, n, d, k, out);
            }
        }
    }
    go(0, &cells, &mut fill, n, d, k, &mut out);
    out
}

fn slice_class(t: &Table) -> BTreeSet<Table> {
    let mut seen = BTreeSet::from([t.clone()]);
    let mut todo = vec![t.clone()];
    while let Some(x) = todo.pop() {
        for l in 0..x.d() {
            let y = x.map_row(l, |a| 3 - a).lex_normalize().table;
            if seen.insert(y.clone()) {
                todo.push(y);
            }
        }
    }
    seen
}

fn same_up_to_sign(a: &Expansion, b: &Expansion) -> bool {
    a == b || *a == b.scale(&int(-1))
}

fn criterion_1() {
    let start = Instant::now();
    let lambda = w("2,2|2,2|2,2");
    let index = lex_tables(&lambda, Kind::ZeroOne);
    let mut classes: Vec<BTreeSet<Table>> = Vec::new();
    for t in &index {
        if !classes.iter().any(|c| c.contains(t)) {
            classes.push(slice_class(t));
        }
    }
    assert_eq!(classes.len(), 4, "slice-symmetry classes");
    // X is the tetrahedron: any two of its points differ in at least two coordinates
    let is_x = |t: &Table| {
        let cols = t.columns();
        cols.iter().enumerate().all(|(i, a)| cols[i + 1..].iter().all(|b| a.iter().zip(b).filter(|(x, y)| x != y).count() >= 2))
    };
    let (x, abc): (Vec<_>, Vec<_>) = classes.into_iter().partition(|c| c.iter().all(is_x));
    assert_eq!(x.len(), 1);
    for t in &x[0] {
        assert!(delta_expansion(t).is_zero(), "Δ_X for {t}");
    }
    let reference = delta_expansion(abc[0].iter().next().unwrap());
    assert!(!reference.is_zero());
    for class in &abc {
        for t in class {
            assert!(same_up_to_sign(&delta_expansion(t), &reference), "Δ_{t} is not ±Δ_A");
        }
    }
    let rank = coeff_matrix(&lambda, MatrixKind::A).rank();
    assert_eq!(rank, 1);
    assert_eq!(BigInt::from(rank), kron(&lambda));
    within(start, Duration::from_secs(5), "criterion 1");
}

fn criterion_2() {
    let start = Instant::now();
    let mut weights: Vec<WeightTuple> = Vec::new();
    for d in 2..=4 {
        for m in 1..=4 {
            weights.extend(WeightTuple::all(d, m));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let m5 = WeightTuple::all(3, 5);
    weights.extend(m5.choose_multiple(&mut rng, 50).cloned());
    for lambda in &weights {
        let r = check_duality(lambda);
        assert!(r.pass, "{lambda}: {:?}", r.violations);
    }
    within(start, Duration::from_secs(600), "criterion 2");
}

fn criterion_3() {
    let start = Instant::now();
    let weights: Vec<WeightTuple> = (1..=5)
        .flat_map(|m| WeightTuple::all(3, m))
        .chain((1..=4).flat_map(|m| WeightTuple::all(4, m)))
        .collect();
    for lambda in &weights {
        let (rank, g) = rank_vs_kron(lambda);
        assert_eq!(rank as u64, g, "{lambda}");
        assert_eq!(BigInt::from(g), kron(lambda));
    }
    within(start, Duration::from_secs(1800), "criterion 3");
}

fn criterion_4() {
    let start = Instant::now();
    for d in 2..=3 {
        for m in 1..=4 {
            for lambda in WeightTuple::all(d, m) {
                for all_pairs in [false, true] {
                    let opts = RelationOptions { all_pairs, form: RelationForm::Weighted };
                    let r = check_relations(&lambda, opts);
                    assert!(r.pass, "{lambda} all_pairs={all_pairs}: {:?}", r.violations);
                    for side in [Side::Sym, Side::Alt] {
                        let r = kernel_dimension(&lambda, side, opts);
                        assert!(r.pass, "{lambda} {side:?} all_pairs={all_pairs}: {:?}", r.violations);
                    }
                }
            }
        }
    }
    within(start, Duration::from_secs(600), "criterion 4");
}

fn criterion_5() {
    for d in 1..=3 {
        for m in 1..=3 {
            for lambda in WeightTuple::all(d, m) {
                // letters needed by the tables and by their expansions
                let n = [&lambda, &lambda.conjugate()]
                    .iter()
                    .flat_map(|w| w.rows().iter().map(Vec::len))
                    .max()
                    .unwrap()
                    .max(2);
                for x in lex_tables(&lambda, Kind::Natural) {
                    let sym = tensor_oracle(&x, Space::Sym, n, DEFAULT_DENSE_BUDGET).unwrap();
                    assert_eq!(sym, delta_expansion(&x), "Δ {x} n={n}");
                    let alt = tensor_oracle(&x, Space::Alt, n, DEFAULT_DENSE_BUDGET).unwrap();
                    assert_eq!(alt, nabla_expansion(&x), "∇ {x} n={n}");
                }
            }
        }
    }
    for d in 1..=3 {
        for m in 1..=6 {
            for lambda in WeightTuple::all(d, m) {
                let ss = lex_tables(&lambda, Kind::Natural);
                lex_tables(&lambda.conjugate(), Kind::Natural).par_iter().for_each(|t| {
                    for s in &ss {
                        let a = coeff_a_i128(t, s, Method::Oracle);
                        let b = coeff_a_i128(t, s, Method::Fillings);
                        assert_eq!(a, b, "a({t}, {s})");
                    }
                });
            }
        }
    }
}

fn criterion_6() {
    let start = Instant::now();
    let (count, signed) = brute_latin(3, 2);
    assert_eq!(BigInt::from(signed), alon_tarsi_dk(3, 2));
    assert_eq!(BigInt::from(count), latin_count(3, 2));
    for n in 1..=4 {
        let p = omega_power(3, 2, n).unwrap();
        assert!(p.report.pass, "n={n}: {:?}", p.report.violations);
        assert!(p.report.checked > 0);
    }
    let top = omega_power(3, 2, 4).unwrap().expansion;
    let f = fundamental_table(3, 2);
    assert_eq!(top.len(), 1);
    let c = top.pair(&f);
    assert!(c == int(signed) || c == int(-signed), "coefficient {c}, AT {signed}");
    assert!(omega_power(3, 2, 5).unwrap().expansion.is_zero());
    within(start, Duration::from_secs(60), "criterion 6");
}

fn criterion_7() {
    let start = Instant::now();
    let (_, at22) = brute_latin(2, 2);
    let p = delta_power(2, 2, 2).unwrap();
    assert!(p.report.pass, "{:?}", p.report.violations);
    let c = p.expansion.pair(&fundamental_table(2, 2));
    assert_eq!(c, int(-2));
    let k: i64 = 2;
    assert_eq!(c, int(at22 * (-1i64).pow((k / 2) as u32)));
    let (_, at23) = brute_latin(2, 3);
    assert_eq!(at23, 0);
    let p = delta_power(2, 3, 3).unwrap();
    assert!(p.report.pass, "{:?}", p.report.violations);
    assert_eq!(p.expansion.pair(&fundamental_table(2, 3)), int(0));
    let r = check_even_coeff_props(4, 2, 2).unwrap();
    assert!(r.pass, "{:?}", r.violations);
    let (even, odd) = even_coefficients(4, 2, 2).unwrap();
    assert_eq!(even, Some(int(2)));
    assert_eq!(even.unwrap(), int(brute_latin(2, 2).0));
    assert!(odd == int(2) || odd == int(-2), "T_odd coefficient {odd}");
    within(start, Duration::from_secs(300), "criterion 7");
}

fn criterion_8() {
    let start = Instant::now();
    // values from a separate enumeration script
    for (k, expected) in [(2, 2), (3, 12), (4, 576)] {
        assert_eq!(latin_count(2, k), int(expected), "|L_2({k})|");
        assert_eq!(brute_latin(2, k).0, expected);
    }
    for d in 2..=3 {
        for k in 1..=3 {
            for n in 1..=3 {
                let lambda = WeightTuple::uniform(d, &Partition::rectangle(k, n));
                for t in lex_tables(&lambda, Kind::ZeroOne) {
                    let at = alon_tarsi(&t).unwrap();
                    assert_eq!(eval_unit(&t, n), at.clone() * t.sign(), "{t} n={n}");
                    if k % 2 == 1 && k > 1 && n == k.pow(d as u32 - 1) {
                        assert_eq!(at, int(0), "odd k, full support: {t}");
                    }
                }
            }
        }
    }
    for (d, k) in [(2, 2), (2, 3), (2, 4), (3, 2)] {
        assert!(latin_count(d, k) >= alon_tarsi_dk(d, k).magnitude().clone().into());
    }
    within(start, Duration::from_secs(600), "criterion 8");
}

fn criterion_9() {
    let start = Instant::now();
    for m in 0..=8 {
        for lambda in Partition::all(m) {
            assert_eq!(dim_irrep(&lambda), mn_character(&lambda, &Partition::rectangle(m, 1)), "{lambda}");
        }
    }
    for m in 0..=10 {
        let s: BigInt = Partition::all(m).iter().map(|l| dim_irrep(l).pow(2)).sum();
        assert_eq!(s, factorial(m), "m={m}");
    }
    for m in 1..=6 {
        for a in Partition::all(m) {
            for b in Partition::all(m) {
                let g = kron(&WeightTuple::new(vec![a.clone(), b.clone()]).unwrap());
                assert_eq!(g, int((a == b) as i64), "{a} {b}");
            }
        }
    }
    for m in 1..=5 {
        for lambda in WeightTuple::all(3, m) {
            let ps = lambda.sorted();
            let g = kron(&lambda);
            let perms = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
            for p in perms {
                let q = WeightTuple::new(p.iter().map(|&i| ps[i].clone()).collect()).unwrap();
                assert_eq!(kron(&q), g, "{lambda} permuted");
            }
            for skip in 0..3 {
                let q: Vec<Partition> =
                    (0..3).map(|i| if i == skip { ps[i].clone() } else { ps[i].conjugate() }).collect();
                assert_eq!(kron(&WeightTuple::new(q).unwrap()), g, "{lambda} conjugated");
            }
        }
    }
    within(start, Duration::from_secs(300), "criterion 9");
}

fn run_cli(args: &[&str], threads: usize, cache: Option<(&std::path::Path, bool)>) -> (i32, Vec<u8>) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_kronhwv"));
    cmd.env_remove("KRONHWV_CACHE").args(args).arg("--threads").arg(threads.to_string());
    match cache {
        Some((dir, true)) => {
            cmd.env("KRONHWV_CACHE", dir).arg("--cache-dir").arg(dir.join("ignored"));
        }
        Some((dir, false)) => {
            cmd.arg("--cache-dir").arg(dir).arg("--verify-cache");
        }
        None => {}
    }
    let out = cmd.output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_10() {
    let invocations: Vec<Vec<&str>> = vec![
        vec!["tables", "--weight", "2,2|2,2|2,2", "--kind", "zero-one"],
        vec!["rank", "--weight", "2,2|2,2|2,2", "--format", "csv"],
        vec!["kron", "--weight", r#"{"m":4,"partitions":[[2,2],[2,2],[2,2]]}"#, "--method", "char"],
        vec!["kron", "--weight", "2,2|2,2|2,2", "--method", "rank"],
        vec!["verify", "isomorphism", "--weight", "2,2|2,2|2,2"],
        vec!["cayley", "omega", "--d", "3", "--k", "2", "--power", "2"],
        vec!["cayley", "omega", "--d", "3", "--k", "2", "--power", "4"],
        vec!["verify", "omega", "--d", "3", "--k", "2"],
        vec!["cayley", "delta", "--d", "2", "--k", "2", "--power", "2"],
        vec!["cayley", "delta", "--d", "2", "--k", "3", "--power", "3", "--format", "csv"],
        vec!["verify", "evenprops", "--d", "4", "--c", "2", "--k", "2"],
    ];
    let dir = tempfile::tempdir().unwrap();
    for args in &invocations {
        let (code, base) = run_cli(args, 1, None);
        assert_eq!(code, 0, "{args:?}");
        assert!(!base.is_empty());
        let runs = [
            run_cli(args, 2, None),
            run_cli(args, 4, None),
            run_cli(args, 3, Some((dir.path(), true))),
            run_cli(args, 1, Some((dir.path(), true))),
            run_cli(args, 2, Some((dir.path(), false))),
        ];
        for (i, (c, out)) in runs.iter().enumerate() {
            assert_eq!(*c, 0, "{args:?} run {i}");
            assert!(*out == base, "{args:?} run {i} differs");
        }
    }
    assert!(std::fs::read_dir(dir.path()).unwrap().count() >= invocations.len());
}

fn main() {
    let criteria: [(&str, fn()); 10] = [
        ("2x2x2 example: slice classes, vanishing X, rank 1", criterion_1),
        ("duality sweep", criterion_2),
        ("rank of the a-matrix equals the Kronecker coefficient", criterion_3),
        ("relations and kernel dimension", criterion_4),
        ("oracle equivalence", criterion_5),
        ("Cayley form powers", criterion_6),
        ("hyperdeterminant powers and T_even/T_odd", criterion_7),
        ("Latin counts and the unit tensor bridge", criterion_8),
        ("character oracle sanity", criterion_9),
        ("CLI determinism and cache transparency", criterion_10),
    ];
    let only: Option<usize> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if only.is_some_and(|n| n != i + 1) {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(f));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({secs:.1}s)", i + 1),
            Err(e) => {
                failed += 1;
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                println!("criterion {:>2} FAIL  {name} ({secs:.1}s): {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
