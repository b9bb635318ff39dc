//! Symmetric-group characters (Murnaghan–Nakayama) and generalized
//! Kronecker coefficients from the character inner product.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::combinatorics::{Partition, WeightTuple};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub cycle_type: Partition,
    pub class_size: BigInt,
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// z_μ = Π j^{m_j} m_j!.
pub fn z(mu: &Partition) -> BigInt {
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for &p in mu.parts() {
        *counts.entry(p).or_default() += 1;
    }
    counts.iter().fold(BigInt::one(), |acc, (&j, &mj)| acc * BigInt::from(j).pow(mj as u32) * factorial(mj))
}

pub fn conjugacy_classes(m: usize) -> Vec<ConjugacyClass> {
    let mf = factorial(m);
    Partition::all(m)
        .into_iter()
        .map(|mu| {
            let class_size = &mf / z(&mu);
            ConjugacyClass { cycle_type: mu, class_size }
        })
        .collect()
}

type Key = (Vec<usize>, Vec<usize>);

fn cache() -> &'static Mutex<HashMap<Key, i128>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, i128>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// χ^λ(μ).
pub fn mn_character(lambda: &Partition, mu: &Partition) -> BigInt {
    assert_eq!(lambda.size(), mu.size(), "character of a partition of a different size");
    BigInt::from(character(lambda.parts(), mu.parts()))
}

fn character(lambda: &[usize], mu: &[usize]) -> i128 {
    if mu.is_empty() {
        return 1;
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(&v) = cache().lock().unwrap().get(&key) {
        return v;
    }
    // Beta set of λ; removing a rim hook of length r moves one bead from
    // b to b - r, with sign (-1)^(beads strictly between).
    let l = lambda.len();
    let beta: Vec<usize> = lambda.iter().enumerate().map(|(i, &p)| p + (l - 1 - i)).collect();
    let r = mu[0];
    let rest = &mu[1..];
    let mut total = 0i128;
    for (i, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&x| x > b - r && x < b).count();
        let mut nb = beta.clone();
        nb[i] = b - r;
        nb.sort_unstable_by(|a, b| b.cmp(a));
        let n = nb.len();
        let shape: Vec<usize> =
            nb.iter().enumerate().map(|(j, &x)| x - (n - 1 - j)).filter(|&p| p > 0).collect();
        let chi = character(&shape, rest);
        total += if between % 2 == 0 { chi } else { -chi };
    }
    cache().lock().unwrap().insert(key, total);
    total
}

/// f^λ by the hook-length formula.
pub fn dim_irrep(lambda: &Partition) -> BigInt {
    let conj = lambda.conjugate();
    let mut hooks = BigInt::one();
    for (i, &row) in lambda.parts().iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = conj.parts()[j] - i - 1;
            hooks *= arm + leg + 1;
        }
    }
    factorial(lambda.size()) / hooks
}

/// g(λ^(1), ..., λ^(d)) = (1/m!) Σ_μ |C_μ| Π_i χ^{λ^(i)}(μ).
pub fn kron(w: &WeightTuple) -> BigInt {
    let parts = w.sorted();
    let m = w.m();
    let sum: BigInt = conjugacy_classes(m)
        .par_iter()
        .map(|c| {
            let mut prod = c.class_size.clone();
            for p in &parts {
                let chi = character(p.parts(), c.cycle_type.parts());
                if chi == 0 {
                    return BigInt::zero();
                }
                prod *= chi;
            }
            prod
        })
        .reduce(BigInt::zero, |a, b| a + b);
    let (g, rem) = sum.div_rem(&factorial(m));
    assert!(rem.is_zero(), "character sum for {w} is not divisible by m!");
    assert!(!g.is_negative(), "negative Kronecker coefficient for {w}");
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    fn w(s: &str) -> WeightTuple {
        WeightTuple::parse_shorthand(s).unwrap()
    }

    #[test]
    fn characters() {
        for m in 1..=6 {
            for mu in Partition::all(m) {
                assert_eq!(mn_character(&p(&[m]), &mu), BigInt::one());
                let sign = if (m - mu.len()) % 2 == 0 { 1 } else { -1 };
                assert_eq!(mn_character(&Partition::rectangle(m, 1), &mu), BigInt::from(sign));
            }
        }
        assert_eq!(mn_character(&p(&[2, 1]), &p(&[1, 1, 1])), BigInt::from(2));
        assert_eq!(mn_character(&p(&[2, 1]), &p(&[3])), BigInt::from(-1));
        assert_eq!(mn_character(&p(&[2, 2]), &p(&[2, 2])), BigInt::from(2));
        assert_eq!(mn_character(&p(&[3, 2]), &p(&[4, 1])), BigInt::from(-1));
    }

    #[test]
    fn dims() {
        assert_eq!(dim_irrep(&p(&[5])), BigInt::one());
        assert_eq!(dim_irrep(&p(&[2, 1])), BigInt::from(2));
        assert_eq!(dim_irrep(&p(&[3, 2])), BigInt::from(5));
        assert_eq!(dim_irrep(&p(&[])), BigInt::one());
    }

    #[test]
    fn column_orthogonality() {
        // Σ_λ χ^λ(μ)^2 = z_μ
        for m in 1..=7 {
            for mu in Partition::all(m) {
                let s: BigInt = Partition::all(m).iter().map(|l| mn_character(l, &mu).pow(2)).sum();
                assert_eq!(s, z(&mu));
            }
        }
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for m in 0..=8 {
            let s: BigInt = conjugacy_classes(m).iter().map(|c| c.class_size.clone()).sum();
            assert_eq!(s, factorial(m));
        }
    }

    #[test]
    fn kron_examples() {
        assert_eq!(kron(&w("2,2|2,2|2,2")), BigInt::one());
        assert_eq!(kron(&w("3|2,1|2,1")), BigInt::one());
        assert_eq!(kron(&w("2|1,1")), BigInt::zero());
        assert_eq!(kron(&w("2,1|2,1|2,1")), BigInt::one());
        assert_eq!(kron(&w("3,3|3,3|3,3")), BigInt::zero());
        assert_eq!(kron(&w("4,4|4,4|4,4")), BigInt::one());
        assert_eq!(kron(&w("4|4")), BigInt::one());
        assert_eq!(kron(&w("")), BigInt::one());
    }
}
