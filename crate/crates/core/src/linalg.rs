//! Exact rank by fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Rank over Q of an integer matrix given by rows.
///
/// Bareiss elimination with column skipping: every entry stays a minor of
/// the input, so each division is exact. The pivot is the nonzero entry of
/// smallest magnitude in the current column.
pub fn exact_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut a: Vec<Vec<BigInt>> = rows.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    if a.is_empty() {
        return 0;
    }
    let cols = a[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == a.len() {
            break;
        }
        let pivot = (rank..a.len()).filter(|&i| !a[i][c].is_zero()).min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
        let Some(p) = pivot else { continue };
        a.swap(rank, p);
        let (top, rest) = a.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            if row[c].is_zero() {
                // entries still need the Bareiss scaling to stay minors
                for j in c + 1..cols {
                    if !row[j].is_zero() {
                        row[j] = &row[j] * &prow[c] / &prev;
                    }
                }
                continue;
            }
            let f = row[c].clone();
            for j in c + 1..cols {
                let v = &row[j] * &prow[c] - &f * &prow[j];
                debug_assert!((&v % &prev).is_zero());
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn small_cases() {
        assert_eq!(exact_rank(&m(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(exact_rank(&m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])), 3);
        assert_eq!(exact_rank(&m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]])), 2);
        assert_eq!(exact_rank(&m(&[&[0, 2, 4], &[0, 3, 6]])), 1);
        assert_eq!(exact_rank(&[]), 0);
        assert_eq!(exact_rank(&m(&[&[], &[]])), 0);
    }

    #[test]
    fn skipped_columns_stay_exact() {
        // first column is zero below the pivot in some rows only
        let a = m(&[&[2, 1, 0, 3], &[0, 0, 5, 1], &[4, 2, 1, 7], &[0, 0, 10, 2], &[6, 3, 6, 11]]);
        assert_eq!(exact_rank(&a), 3);
    }

    // Rank over Q computed with fractions, as an oracle.
    fn rational_rank(rows: &[Vec<BigInt>]) -> usize {
        use fractions::Frac;
        let mut a: Vec<Vec<Frac>> = rows.iter().map(|r| r.iter().map(|x| Frac::from(x.clone())).collect()).collect();
        let mut rank = 0;
        let cols = a.first().map_or(0, Vec::len);
        for c in 0..cols {
            let Some(p) = (rank..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
            a.swap(rank, p);
            for i in 0..a.len() {
                if i != rank && !a[i][c].is_zero() {
                    let f = a[i][c].div(&a[rank][c]);
                    for j in 0..cols {
                        let v = a[i][j].sub(&f.mul(&a[rank][j]));
                        a[i][j] = v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    mod fractions {
        use num_bigint::BigInt;
        use num_integer::Integer;
        use num_traits::{One, Zero};

        #[derive(Clone)]
        pub struct Frac(BigInt, BigInt);

        impl Frac {
            fn norm(n: BigInt, d: BigInt) -> Frac {
                let g = n.gcd(&d);
                let (mut n, mut d) = if g.is_zero() { (n, d) } else { (n / &g, d / &g) };
                if d < BigInt::zero() {
                    n = -n;
                    d = -d;
                }
                Frac(n, d)
            }
            pub fn from(x: BigInt) -> Frac {
                Frac(x, BigInt::one())
            }
            pub fn is_zero(&self) -> bool {
                self.0.is_zero()
            }
            pub fn mul(&self, o: &Frac) -> Frac {
                Frac::norm(&self.0 * &o.0, &self.1 * &o.1)
            }
            pub fn div(&self, o: &Frac) -> Frac {
                Frac::norm(&self.0 * &o.1, &self.1 * &o.0)
            }
            pub fn sub(&self, o: &Frac) -> Frac {
                Frac::norm(&self.0 * &o.1 - &o.0 * &self.1, &self.1 * &o.1)
            }
        }
    }

    #[test]
    fn random_matrices_match_rational_elimination() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let r = rng.gen_range(1..7);
            let c = rng.gen_range(1..7);
            let k = rng.gen_range(1..4);
            // low-rank product plus sparse zeros
            let u: Vec<Vec<i64>> = (0..r).map(|_| (0..k).map(|_| rng.gen_range(-3..4)).collect()).collect();
            let v: Vec<Vec<i64>> = (0..k).map(|_| (0..c).map(|_| rng.gen_range(-3..4)).collect()).collect();
            let a: Vec<Vec<BigInt>> = (0..r)
                .map(|i| (0..c).map(|j| BigInt::from((0..k).map(|t| u[i][t] * v[t][j]).sum::<i64>())).collect())
                .collect();
            assert_eq!(exact_rank(&a), rational_rank(&a));
        }
    }
}
