//! Exact row reduction over a [`Field`].

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::field::Field;

/// Reduced row echelon form of a row space.
///
/// Pivots are chosen left to right, so the leftmost columns become pivots
/// whenever possible. Rows are normalized to a leading 1 and every pivot
/// column is cleared in all other rows.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize, rows: Vec<Vec<F::Elem>>) -> Self {
        let mut rows = rows;
        rows.retain(|r| r.iter().any(|x| !field.is_zero(x)));
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..ncols {
            if rank == rows.len() {
                break;
            }
            let Some(sel) = (rank..rows.len()).find(|&r| !field.is_zero(&rows[r][col])) else {
                continue;
            };
            rows.swap(rank, sel);
            let inv = field.inv(&rows[rank][col]).expect("nonzero pivot");
            for x in rows[rank].iter_mut() {
                *x = field.mul(x, &inv);
            }
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == rank || field.is_zero(&row[col]) {
                    continue;
                }
                let factor = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                    if !field.is_zero(p) {
                        *x = field.sub(x, &field.mul(&factor, p));
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
        rows.truncate(rank);
        Self { field, ncols, rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Columns that are not pivots, in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ncols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ncols).filter(|&c| !is_pivot[c]).collect()
    }

    /// Reduces `v` modulo the row space; the result vanishes on every pivot
    /// column and is zero exactly when `v` lies in the row space.
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.ncols, "vector length");
        let f = &self.field;
        let mut out = v.to_vec();
        for (row, &col) in self.rows.iter().zip(&self.pivots) {
            if f.is_zero(&out[col]) {
                continue;
            }
            let factor = out[col].clone();
            for (x, p) in out.iter_mut().zip(row) {
                if !f.is_zero(p) {
                    *x = f.sub(x, &f.mul(&factor, p));
                }
            }
        }
        out
    }
}

pub fn rank<F: Field>(field: &F, ncols: usize, rows: Vec<Vec<F::Elem>>) -> usize {
    Echelon::new(field.clone(), ncols, rows).rank()
}

/// Rank of an integer matrix by fraction-free (Bareiss) elimination. Every
/// intermediate entry is a minor of the input, so nothing leaves `Z`.
pub fn bareiss_rank(mut rows: Vec<Vec<BigInt>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        for r in rank + 1..rows.len() {
            for c in col + 1..ncols {
                let v = &rows[rank][col] * &rows[r][c] - &rows[r][col] * &rows[rank][c];
                rows[r][c] = v / &prev;
            }
            rows[r][col] = BigInt::zero();
        }
        prev = rows[rank][col].clone();
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn q(rows: &[&[i64]]) -> Vec<Vec<num_rational::BigRational>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| Rationals.from_i64(x)).collect())
            .collect()
    }

    #[test]
    fn rank_and_pivots() {
        let e = Echelon::new(Rationals, 3, q(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]));
        assert_eq!(e.rank(), 2);
        assert_eq!(e.pivots(), &[0, 1]);
        assert_eq!(e.free_columns(), vec![2]);
    }

    #[test]
    fn reduce_detects_membership() {
        let e = Echelon::new(Rationals, 3, q(&[&[1, 1, 0], &[0, 1, 1]]));
        let inside = q(&[&[2, 5, 3]]).remove(0);
        assert!(e.reduce(&inside).iter().all(|x| Rationals.is_zero(x)));
        let outside = q(&[&[0, 0, 1]]).remove(0);
        assert!(!e.reduce(&outside).iter().all(|x| Rationals.is_zero(x)));
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // det = 2, singular mod 2
        let f2 = PrimeField::two();
        let rows = vec![vec![f2.from_i64(1), f2.from_i64(1)], vec![f2.from_i64(1), f2.from_i64(-1)]];
        assert_eq!(rank(&f2, 2, rows), 1);
        assert_eq!(rank(&Rationals, 2, q(&[&[1, 1], &[1, -1]])), 2);
    }

    #[test]
    fn bareiss_matches_rational_elimination() {
        let m: &[&[i64]] = &[&[2, 4, 6, 1], &[1, 2, 3, 0], &[0, 0, 0, 5], &[3, 1, 4, 1]];
        let ints = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        assert_eq!(bareiss_rank(ints), rank(&Rationals, 4, q(m)));
        let zero = vec![vec![BigInt::zero(); 3]; 2];
        assert_eq!(bareiss_rank(zero), 0);
        let wide: &[&[i64]] = &[&[0, 1, 2, 3, 4], &[0, 2, 4, 6, 8]];
        let ints = wide.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        assert_eq!(bareiss_rank(ints), 1);
    }
}
