//! Arithmetic modulo the Mersenne prime 2^61 - 1, used for evaluation-based
//! shortcuts whose conclusions are either certified exactly afterwards or
//! are one-sided (a nonzero image proves a nonzero original).

use super::Rational;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

pub const P: u64 = (1 << 61) - 1;

#[inline]
pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

#[inline]
pub fn mul(a: u64, b: u64) -> u64 {
    let p = (a as u128) * (b as u128);
    let lo = (p as u64) & P;
    let hi = (p >> 61) as u64;
    add(lo, hi)
}

pub fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

pub fn inv(a: u64) -> u64 {
    debug_assert!(a != 0);
    pow(a, P - 2)
}

pub fn from_bigint(n: &BigInt) -> u64 {
    let p = BigInt::from(P);
    let mut r = n % &p;
    if r < BigInt::zero() {
        r += &p;
    }
    r.to_u64().expect("residue fits in u64")
}

pub fn from_i64(n: i64) -> u64 {
    n.rem_euclid(P as i64) as u64
}

/// Image of a rational, or `None` when the denominator vanishes mod P.
pub fn from_rational(q: &Rational) -> Option<u64> {
    let d = from_bigint(q.denom());
    if d == 0 {
        return None;
    }
    Some(mul(from_bigint(q.numer()), inv(d)))
}

/// Degree of the monic gcd of two univariate polynomials (coefficients
/// indexed by degree). Both inputs must be nonzero.
pub fn univariate_gcd_degree(a: &[u64], b: &[u64]) -> usize {
    let mut a = trim(a.to_vec());
    let mut b = trim(b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b);
        a = b;
        b = r;
    }
    a.len().saturating_sub(1)
}

fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn rem(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lc_inv = inv(b[db]);
    while r.len() > db {
        let top = r.len() - 1;
        let c = mul(r[top], lc_inv);
        let shift = top - db;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] = sub(r[shift + i], mul(c, bi));
        }
        r = trim(r);
    }
    r
}

/// Row echelon reduction of a dense matrix mod P. Returns the pivot
/// positions `(row, col)` of a maximal nonsingular submatrix, chosen
/// greedily: rows in their given order, each row contributing at most one pivot.
pub fn pivots(rows: &[Vec<u64>]) -> Vec<(usize, usize)> {
    let mut basis: Vec<(usize, Vec<u64>)> = Vec::new(); // (pivot column, normalized row)
    let mut out = Vec::new();
    for (ri, row) in rows.iter().enumerate() {
        let mut v = row.clone();
        reduce(&basis, &mut v);
        if let Some(pc) = v.iter().position(|&x| x != 0) {
            let s = inv(v[pc]);
            for x in v.iter_mut() {
                *x = mul(*x, s);
            }
            basis.push((pc, v));
            out.push((ri, pc));
        }
    }
    out
}

fn reduce(basis: &[(usize, Vec<u64>)], v: &mut [u64]) {
    for (pc, b) in basis {
        let c = v[*pc];
        if c != 0 {
            for (x, y) in v.iter_mut().zip(b) {
                *x = sub(*x, mul(c, *y));
            }
        }
    }
}

/// Incremental rank test: a growing set of vectors kept in echelon form.
#[derive(Default, Clone)]
pub struct Echelon {
    basis: Vec<(usize, Vec<u64>)>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Inserts `v`; returns whether it was independent of the current span.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        let mut v = v.to_vec();
        reduce(&self.basis, &mut v);
        match v.iter().position(|&x| x != 0) {
            Some(pc) => {
                let s = inv(v[pc]);
                for x in v.iter_mut() {
                    *x = mul(*x, s);
                }
                self.basis.push((pc, v));
                true
            }
            None => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let a = 123456789012345;
        assert_eq!(mul(a, inv(a)), 1);
        assert_eq!(sub(3, 5), P - 2);
        assert_eq!(from_i64(-1), P - 1);
        assert_eq!(mul(P - 1, P - 1), 1);
    }

    #[test]
    fn gcd_degree() {
        // (x-1)(x-2) and (x-1)(x-3)
        let f = [2, sub(0, 3), 1];
        let g = [3, sub(0, 4), 1];
        assert_eq!(univariate_gcd_degree(&f, &g), 1);
        assert_eq!(univariate_gcd_degree(&[1, 1], &[2, 1]), 0);
    }

    #[test]
    fn pivot_rank() {
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]];
        let pv = pivots(&rows);
        assert_eq!(pv.len(), 2);
        assert_eq!(pv[0].0, 0);
        assert_eq!(pv[1].0, 2);
    }
}
