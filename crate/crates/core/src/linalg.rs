//! Exact inertia of symmetric integer matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Positive minus negative eigenvalue count, by rational congruence
/// diagonalization.
///
/// # Panics
/// If `m` is not square and symmetric.
pub fn symmetric_signature(m: &[Vec<BigInt>]) -> i64 {
    let n = m.len();
    for (i, row) in m.iter().enumerate() {
        assert_eq!(row.len(), n, "matrix must be square");
        for j in 0..i {
            assert_eq!(row[j], m[j][i], "matrix must be symmetric");
        }
    }
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect()
        })
        .collect();
    let mut sig = 0i64;
    while !a.is_empty() {
        let k = match (0..a.len()).find(|&k| !a[k][k].is_zero()) {
            Some(k) => k,
            None => {
                let Some((i, j)) = (0..a.len())
                    .flat_map(|i| (0..a.len()).map(move |j| (i, j)))
                    .find(|&(i, j)| !a[i][j].is_zero())
                else {
                    break;
                };
                // the diagonals vanish, so row i + row j has a[i][i] = 2a[i][j]
                let row_j = a[j].clone();
                for (x, v) in a[i].iter_mut().zip(row_j) {
                    *x += v;
                }
                for r in a.iter_mut() {
                    let v = r[j].clone();
                    r[i] += v;
                }
                i
            }
        };
        let p = a[k][k].clone();
        sig += if p.is_positive() { 1 } else { -1 };
        let row = a.remove(k);
        let col: Vec<BigRational> = a.iter_mut().map(|r| r.remove(k)).collect();
        for (r, ci) in a.iter_mut().zip(&col) {
            if ci.is_zero() {
                continue;
            }
            let f = ci / &p;
            let rest = row
                .iter()
                .enumerate()
                .filter(|&(c, _)| c != k)
                .map(|(_, x)| x);
            for (x, rk) in r.iter_mut().zip(rest) {
                *x -= &f * rk;
            }
        }
    }
    sig
}
