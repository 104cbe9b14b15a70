//! Rank over GF(p) by Gaussian elimination.
//!
//! Production primes are ~2^62, so the inner loop uses Montgomery
//! multiplication (odd moduli). Small moduli (including p = 2) take a plain
//! `u128 %` path, which is only used in tests.

use crate::error::{Error, Result};

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, a);
            }
            a = mul(a, a);
            e >>= 1;
        }
        r
    };
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Montgomery arithmetic mod an odd prime p < 2^63, with R = 2^64.
#[derive(Clone, Copy)]
struct Montgomery {
    p: u64,
    /// -p^{-1} mod 2^64
    neg_inv: u64,
    /// R mod p (the Montgomery form of 1)
    one: u64,
}

impl Montgomery {
    fn new(p: u64) -> Self {
        debug_assert!(p % 2 == 1 && p < (1 << 63));
        // Newton iteration for p^{-1} mod 2^64.
        let mut inv = p;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let one = (u64::MAX % p) + 1; // 2^64 mod p; p does not divide 2^64
        Montgomery { p, neg_inv: inv.wrapping_neg(), one }
    }

    #[inline(always)]
    fn mul(self, a: u64, b: u64) -> u64 {
        let t = a as u128 * b as u128;
        let m = (t as u64).wrapping_mul(self.neg_inv);
        let r = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }

    #[inline(always)]
    fn sub(self, a: u64, b: u64) -> u64 {
        let (d, borrow) = a.overflowing_sub(b);
        if borrow {
            d.wrapping_add(self.p)
        } else {
            d
        }
    }

    fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = self.one;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }
}

fn rank_montgomery(matrix: &[Vec<u8>], p: u64) -> usize {
    let mont = Montgomery::new(p);
    let rows = matrix.len();
    let cols = if rows == 0 { 0 } else { matrix[0].len() };
    let mut m: Vec<Vec<u64>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| if x == 0 { 0 } else { mont.one }).collect())
        .collect();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = mont.inv(m[rank][col]);
        let (top, rest) = m.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            if row[col] == 0 {
                continue;
            }
            let factor = mont.mul(inv, row[col]);
            for (x, &pv) in row[col..].iter_mut().zip(&prow[col..]) {
                *x = mont.sub(*x, mont.mul(factor, pv));
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

fn rank_small_prime(matrix: &[Vec<u8>], p: u64) -> usize {
    let rows = matrix.len();
    let cols = if rows == 0 { 0 } else { matrix[0].len() };
    let mut m: Vec<Vec<u64>> = matrix
        .iter()
        .map(|row| row.iter().map(|&x| x as u64 % p).collect())
        .collect();
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % p as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = powmod(m[rank][col], p - 2);
        let (top, rest) = m.split_at_mut(rank + 1);
        let prow = &top[rank];
        for row in rest.iter_mut() {
            if row[col] == 0 {
                continue;
            }
            let factor = mulmod(inv, row[col]);
            for c in col..cols {
                row[c] = (row[c] + p - mulmod(factor, prow[c])) % p;
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}

/// Rank of a 0/1 matrix over GF(p). Always a lower bound on the real rank.
pub fn rank_mod_prime(matrix: &[Vec<u8>], p: u64) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p % 2 == 1 && p < (1 << 63) && p > (1 << 32) {
        Ok(rank_montgomery(matrix, p))
    } else {
        Ok(rank_small_prime(matrix, p))
    }
}
