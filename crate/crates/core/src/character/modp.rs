//! Arithmetic and linear algebra over `GF(p)` for word-sized primes.

use crate::error::{Error, Result};
use crate::group::is_prime;

/// Primes are searched below this bound so that products fit in `u64`.
pub const PRIME_SEARCH_BOUND: u64 = 1 << 31;

#[inline]
pub(crate) fn add(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub(crate) fn mul(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub(crate) fn pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, a, p);
        }
        a = mul(a, a, p);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0, "inverting zero mod {p}");
    pow(a, p - 2, p)
}

/// Symmetric lift of a residue to an integer in `(-p/2, p/2]`.
pub(crate) fn lift(a: u64, p: u64) -> i64 {
    if a > p / 2 {
        a as i64 - p as i64
    } else {
        a as i64
    }
}

#[cfg(test)]
pub(crate) fn residue(x: i64, p: u64) -> u64 {
    x.rem_euclid(p as i64) as u64
}

/// Smallest prime `p > 2 * order` with `p = 1 (mod exponent)`.
pub fn suitable_prime(exponent: u64, order: u64) -> Result<u64> {
    let exponent = exponent.max(1);
    let floor = 2 * order + 1;
    let mut p = floor + (exponent + 1 - floor % exponent) % exponent;
    while p < PRIME_SEARCH_BOUND {
        if is_prime(p) {
            return Ok(p);
        }
        p += exponent;
    }
    Err(Error::PrimeSearchFailure {
        exponent,
        order,
        bound: PRIME_SEARCH_BOUND,
    })
}

/// Reduced row echelon form in place; returns the pivot columns.
pub(crate) fn rref(rows: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pr);
        let iv = inv(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = mul(*x, iv, p);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = sub(*x, mul(f, y, p), p);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Basis of the right null space `{y : A y = 0}`.
pub(crate) fn nullspace(a: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let n = a.first().map_or(0, Vec::len);
    let mut rows = a.to_vec();
    let pivots = rref(&mut rows, p);
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut y = vec![0u64; n];
            y[f] = 1;
            for (row, &pc) in rows.iter().zip(&pivots) {
                y[pc] = sub(0, row[f], p);
            }
            y
        })
        .collect()
}

/// Characteristic polynomial `det(x I - A)`, coefficients from the constant
/// term upwards, via reduction to Hessenberg form.
pub(crate) fn charpoly(a: &[Vec<u64>], p: u64) -> Vec<u64> {
    let n = a.len();
    let mut h = a.to_vec();
    for j in 0..n.saturating_sub(2) {
        let Some(i) = (j + 1..n).find(|&i| h[i][j] != 0) else {
            continue;
        };
        if i != j + 1 {
            h.swap(i, j + 1);
            for row in h.iter_mut() {
                row.swap(i, j + 1);
            }
        }
        let iv = inv(h[j + 1][j], p);
        for k in j + 2..n {
            let u = mul(h[k][j], iv, p);
            if u == 0 {
                continue;
            }
            for c in 0..n {
                let t = mul(u, h[j + 1][c], p);
                h[k][c] = sub(h[k][c], t, p);
            }
            for row in h.iter_mut() {
                let t = mul(u, row[k], p);
                row[j + 1] = add(row[j + 1], t, p);
            }
        }
    }
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for m in 1..=n {
        let prev = &polys[m - 1];
        let mut pm = vec![0u64; m + 1];
        for (d, &c) in prev.iter().enumerate() {
            pm[d + 1] = add(pm[d + 1], c, p);
            pm[d] = sub(pm[d], mul(h[m - 1][m - 1], c, p), p);
        }
        let mut t = 1u64;
        for i in 1..m {
            t = mul(t, h[m - i][m - i - 1], p);
            let coef = mul(t, h[m - i - 1][m - 1], p);
            if coef == 0 {
                continue;
            }
            for (d, &c) in polys[m - i - 1].iter().enumerate() {
                pm[d] = sub(pm[d], mul(coef, c, p), p);
            }
        }
        polys.push(pm);
    }
    polys.pop().unwrap_or_else(|| vec![1])
}

/// Distinct roots in `GF(p)` by exhaustive evaluation.
pub(crate) fn roots(poly: &[u64], p: u64) -> Vec<u64> {
    let degree = poly.len().saturating_sub(1);
    let mut out = Vec::new();
    for x in 0..p {
        let v = poly.iter().rev().fold(0u64, |acc, &c| add(mul(acc, x, p), c, p));
        if v == 0 {
            out.push(x);
            if out.len() == degree {
                break;
            }
        }
    }
    out
}
