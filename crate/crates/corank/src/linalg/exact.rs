//! Exact integer rank by fraction-free (Bareiss) elimination.
//!
//! Small matrices take an i128 fast path (entries of a 0/1 matrix stay below
//! the Hadamard bound n^{n/2}, comfortably inside i128 for n <= 20); larger
//! ones use arbitrary-precision integers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

fn bareiss_rank_i128(matrix: &[Vec<u8>]) -> usize {
    let rows = matrix.len();
    let cols = if rows == 0 { 0 } else { matrix[0].len() };
    let mut m: Vec<Vec<i128>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let mut rank = 0;
    let mut prev: i128 = 1;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let (top, rest) = m.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            for c in (col + 1)..cols {
                row[c] = (prow[col] * row[c] - row[col] * prow[c]) / prev;
            }
            row[col] = 0;
        }
        prev = m[rank][col];
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn bareiss_rank_bigint(matrix: &[Vec<u8>]) -> usize {
    let rows = matrix.len();
    let cols = if rows == 0 { 0 } else { matrix[0].len() };
    let mut m: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut rank = 0;
    let mut prev = BigInt::one();
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let (top, rest) = m.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            for c in (col + 1)..cols {
                row[c] = (&prow[col] * &row[c] - &row[col] * &prow[c]) / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Exact rank of a 0/1 matrix over the integers (equivalently over R).
pub fn rank_exact(matrix: &[Vec<u8>]) -> usize {
    let dim = matrix.len().max(matrix.first().map_or(0, Vec::len));
    if dim <= 20 {
        bareiss_rank_i128(matrix)
    } else {
        bareiss_rank_bigint(matrix)
    }
}

/// Exact determinant, used only by tests as an independent cross-check.
pub fn det_exact(matrix: &[Vec<u8>]) -> BigInt {
    let n = matrix.len();
    assert!(matrix.iter().all(|r| r.len() == n));
    let mut m: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut prev = BigInt::one();
    let mut sign = 1i32;
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return BigInt::zero();
        };
        if pivot != col {
            m.swap(col, pivot);
            sign = -sign;
        }
        let (top, rest) = m.split_at_mut(col + 1);
        let prow = &top[col];
        for row in rest.iter_mut() {
            for c in (col + 1)..n {
                row[c] = (&prow[col] * &row[c] - &row[col] * &prow[c]) / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = m[col][col].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    #[test]
    fn k3_det_and_rank() {
        let k3 = vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]];
        assert_eq!(rank_exact(&k3), 3);
        assert_eq!(det_exact(&k3), BigInt::from(2));
    }

    #[test]
    fn rectangular_and_zero() {
        assert_eq!(rank_exact(&[vec![0, 0, 0], vec![0, 0, 0]]), 0);
        assert_eq!(rank_exact(&[vec![1, 1], vec![1, 1], vec![0, 1]]), 2);
    }

    #[test]
    fn i128_and_bigint_paths_agree() {
        let mut x = 99u64;
        for _ in 0..50 {
            let n = 6 + (x % 5) as usize;
            let mut m = vec![vec![0u8; n]; n];
            for i in 0..n {
                for j in (i + 1)..n {
                    x = x.wrapping_mul(6364136223846793005).wrapping_add(1);
                    let bit = ((x >> 33) & 1) as u8;
                    m[i][j] = bit;
                    m[j][i] = bit;
                }
            }
            assert_eq!(bareiss_rank_i128(&m), bareiss_rank_bigint(&m));
        }
    }

    #[test]
    fn det_abs_bounded_by_hadamard() {
        let k5 = crate::graph::complete(5);
        let m = crate::linalg::adjacency_matrix(&k5);
        assert!(det_exact(&m).abs() <= BigInt::from(5u32.pow(3)));
    }
}
