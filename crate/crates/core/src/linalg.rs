//! Dense Gaussian elimination over F_p.

use crate::arith::{inv_mod, mul_mod};

/// Row-reduces `rows` in place and returns the rank.
///
/// Pivots are taken column by column, using the first row with a nonzero
/// entry in that column. All entries must already be reduced mod `p`.
pub(crate) fn rank_mod_p(rows: &mut [Vec<u64>], p: u64) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        if rank == rows.len() {
            break;
        }
        let Some(pivot) = (rank..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_mod(rows[rank][col], p);
        for x in rows[rank][col..].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        let (head, tail) = rows.split_at_mut(rank + 1);
        let pivot_row = &head[rank];
        for row in tail.iter_mut() {
            let factor = row[col];
            if factor == 0 {
                continue;
            }
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = (*x + p - mul_mod(factor, y, p)) % p;
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant of a square matrix over F_p. The empty matrix has determinant 1.
pub(crate) fn det_mod_p(mut m: Vec<Vec<u64>>, p: u64) -> u64 {
    let n = m.len();
    let mut det = 1 % p;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&i| m[i][col] != 0) else {
            return 0;
        };
        if pivot != col {
            m.swap(pivot, col);
            det = (p - det) % p;
        }
        det = mul_mod(det, m[col][col], p);
        let inv = inv_mod(m[col][col], p);
        let (top, rest) = m.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in rest {
            let factor = mul_mod(row[col], inv, p);
            if factor == 0 {
                continue;
            }
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = (*x + p - mul_mod(factor, y, p)) % p;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_small_cases() {
        let mut m = vec![vec![1, 2], vec![2, 4]];
        assert_eq!(rank_mod_p(&mut m, 7), 1);
        let mut m = vec![vec![1, 2], vec![2, 4]];
        assert_eq!(rank_mod_p(&mut m, 2), 1);
        let mut m = vec![vec![1, 1], vec![1, 2]];
        assert_eq!(rank_mod_p(&mut m, 5), 2);
        let mut m: Vec<Vec<u64>> = vec![];
        assert_eq!(rank_mod_p(&mut m, 5), 0);
        let mut m = vec![vec![0, 0, 0]];
        assert_eq!(rank_mod_p(&mut m, 3), 0);
    }

    #[test]
    fn det_small_cases() {
        assert_eq!(det_mod_p(vec![], 3), 1);
        assert_eq!(det_mod_p(vec![vec![2]], 3), 2);
        // [[0,1],[1,0]] has determinant -1
        assert_eq!(det_mod_p(vec![vec![0, 1], vec![1, 0]], 7), 6);
        // [[2,3],[1,4]] = 5
        assert_eq!(det_mod_p(vec![vec![2, 3], vec![1, 4]], 7), 5);
        assert_eq!(det_mod_p(vec![vec![2, 3], vec![1, 4]], 5), 0);
    }
}
