//! Exact rank over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::lincomb::Rational;

/// Dense matrix of exact rationals, row-major.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RationalMatrix {
    pub rows: Vec<Vec<Rational>>,
    pub ncols: usize,
}

impl RationalMatrix {
    pub fn new(rows: Vec<Vec<Rational>>, ncols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        RationalMatrix { rows, ncols }
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        RationalMatrix { rows: vec![vec![Rational::zero(); ncols]; nrows], ncols }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = Rational::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rank(&self) -> usize {
        rank(self)
    }
}

/// Rank by fraction-free (Bareiss) elimination on the integer matrix
/// obtained by clearing each row's denominators.
pub fn rank(m: &RationalMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = m.rows.iter().map(|r| clear_denominators(r)).collect();
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut r = 0;
    for col in 0..m.ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pivot = a[r][col].clone();
        let (top, below) = a.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in below.iter_mut() {
            let factor = row[col].clone();
            for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                let v = &pivot * &*x - &factor * p;
                debug_assert!((&v % &prev).is_zero());
                *x = v / &prev;
            }
            row[..col].fill(BigInt::zero());
        }
        prev = pivot;
        r += 1;
    }
    r
}

fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lincomb::{int, rat};
    use proptest::prelude::*;

    // Plain Gauss-Jordan over Q, kept independent of the fraction-free path.
    fn rank_oracle(m: &RationalMatrix) -> usize {
        let mut a = m.rows.clone();
        let mut r = 0;
        for col in 0..m.ncols {
            let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else { continue };
            a.swap(r, p);
            let inv = a[r][col].recip();
            let pivot_row: Vec<Rational> = a[r].iter().map(|x| x * &inv).collect();
            for (i, row) in a.iter_mut().enumerate() {
                if i != r && !row[col].is_zero() {
                    let f = row[col].clone();
                    for j in 0..m.ncols {
                        row[j] -= &f * &pivot_row[j];
                    }
                }
            }
            a[r] = pivot_row;
            r += 1;
        }
        r
    }

    #[test]
    fn small_cases() {
        assert_eq!(rank(&RationalMatrix::zeros(3, 4)), 0);
        assert_eq!(rank(&RationalMatrix::identity(3)), 3);
        assert_eq!(rank(&RationalMatrix::new(vec![vec![int(1), int(0), int(0), int(-4)]], 4)), 1);
        let m = RationalMatrix::new(
            vec![
                vec![rat(1, 2), rat(1, 3), int(1)],
                vec![int(3), int(2), int(6)],
                vec![int(0), int(1), int(5)],
            ],
            3,
        );
        assert_eq!(rank(&m), 2);
        assert_eq!(rank(&RationalMatrix::new(vec![], 5)), 0);
    }

    proptest! {
        #[test]
        fn matches_gauss_jordan(
            cells in prop::collection::vec((-3i64..=3, 1i64..=4), 20),
            nrows in 1usize..=5,
        ) {
            let ncols = 4;
            let rows: Vec<Vec<Rational>> = (0..nrows)
                .map(|i| (0..ncols).map(|j| {
                    let (n, d) = cells[(i * ncols + j) % cells.len()];
                    rat(n, d)
                }).collect())
                .collect();
            let m = RationalMatrix::new(rows, ncols);
            prop_assert_eq!(rank(&m), rank_oracle(&m));
        }
    }
}
