//! A deliberately naive Smith normal form used only as a test oracle:
//! textbook gcd elimination with the first nonzero entry as pivot, then a
//! final pass that enforces the divisibility chain with gcd/lcm swaps.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Nonzero invariant factors of `m`, ascending, positive.
#[allow(clippy::needless_range_loop)]
pub fn oracle_invariant_factors(m: &[Vec<i64>]) -> Vec<BigInt> {
    let mut a: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    let nr = a.len();
    let nc = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    for t in 0..nr.min(nc) {
        let Some((pi, pj)) = (t..nr)
            .flat_map(|i| (t..nc).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero())
        else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        // Alternate Euclid steps on column t and row t until both are clear.
        loop {
            let mut changed = false;
            for i in t + 1..nr {
                while !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..nc {
                        let d = &q * &a[t][j];
                        a[i][j] -= d;
                    }
                    if !a[i][t].is_zero() {
                        a.swap(t, i);
                    }
                    changed = true;
                }
            }
            for j in t + 1..nc {
                while !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().skip(t) {
                        let d = &q * &row[t];
                        row[j] -= d;
                    }
                    if !a[t][j].is_zero() {
                        for row in a.iter_mut() {
                            row.swap(t, j);
                        }
                    }
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        diag.push(a[t][t].abs());
    }
    // Diagonal to invariant factors: repeatedly replace (x, y) with
    // (gcd, lcm) until the chain divides.
    let n = diag.len();
    for i in 0..n {
        for j in i + 1..n {
            let (g, l) = (diag[i].gcd(&diag[j]), diag[i].lcm(&diag[j]));
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}

/// A random matrix up to `max` × `max`: sparse small entries, or a product
/// of two such matrices to produce rank deficiency and torsion.
pub fn random_matrix(r: &mut ChaCha8Rng, max: usize) -> Vec<Vec<i64>> {
    let nr = r.gen_range(1..=max);
    let nc = r.gen_range(1..=max);
    let gen = |a: usize, b: usize, r: &mut ChaCha8Rng| -> Vec<Vec<i64>> {
        let density = r.gen_range(0.1..0.9);
        (0..a)
            .map(|_| {
                (0..b)
                    .map(|_| if r.gen_bool(density) { r.gen_range(-4..=4) } else { 0 })
                    .collect()
            })
            .collect()
    };
    if r.gen_bool(0.5) {
        gen(nr, nc, r)
    } else {
        let k = r.gen_range(1..=max);
        let (x, y) = (gen(nr, k, r), gen(k, nc, r));
        (0..nr)
            .map(|i| (0..nc).map(|j| (0..k).map(|t| x[i][t] * y[t][j]).sum()).collect())
            .collect()
    }
}
