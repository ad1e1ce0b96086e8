//! Exact integer determinants by fraction-free (Bareiss) elimination.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Determinant of a square integer matrix given as rows.
///
/// Every intermediate entry is a minor of the input, so each division by the
/// previous pivot is exact.
pub(crate) fn determinant(mut rows: Vec<Vec<BigInt>>) -> BigInt {
    let size = rows.len();
    debug_assert!(rows.iter().all(|r| r.len() == size));
    if size == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut previous = BigInt::one();
    for k in 0..size - 1 {
        if rows[k][k].is_zero() {
            match (k + 1..size).find(|&i| !rows[i][k].is_zero()) {
                Some(i) => {
                    rows.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let value = &rows[i][j] * &rows[k][k] - &rows[i][k] * &rows[k][j];
                rows[i][j] = value / &previous;
            }
            rows[i][k] = BigInt::zero();
        }
        previous = rows[k][k].clone();
    }
    let det = rows[size - 1][size - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    /// Cofactor expansion along the first row.
    fn laplace(rows: &[Vec<i64>]) -> i64 {
        if rows.is_empty() {
            return 1;
        }
        (0..rows.len())
            .map(|c| {
                let minor: Vec<Vec<i64>> = rows[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(j, _)| j != c)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if c % 2 == 0 { 1 } else { -1 };
                sign * rows[0][c] * laplace(&minor)
            })
            .sum()
    }

    #[test]
    fn small_matrices() {
        assert_eq!(determinant(vec![]), BigInt::one());
        assert_eq!(determinant(m(&[&[7]])), BigInt::from(7));
        assert_eq!(determinant(m(&[&[1, 2], &[3, 4]])), BigInt::from(-2));
        assert_eq!(determinant(m(&[&[0, 1], &[1, 0]])), BigInt::from(-1));
        assert_eq!(
            determinant(m(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]])),
            BigInt::zero()
        );
    }

    #[test]
    fn agrees_with_cofactor_expansion() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for size in 1..=6 {
            for _ in 0..20 {
                let rows: Vec<Vec<i64>> = (0..size)
                    .map(|_| (0..size).map(|_| rng.gen_range(-4..=4)).collect())
                    .collect();
                let big = rows
                    .iter()
                    .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                    .collect();
                assert_eq!(determinant(big), BigInt::from(laplace(&rows)));
            }
        }
    }
}
