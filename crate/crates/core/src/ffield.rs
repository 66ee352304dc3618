//! Arithmetic in the prime field F_p and a little dense linear algebra on top
//! of it.
//!
//! Residues are plain `u32` values carried next to a validated [`Prime`]; no
//! modulus lives in global state, so scans over many primes can run side by
//! side.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};

/// Exact rational numbers used by interpolation.
pub type Rational = BigRational;

/// Largest modulus accepted by [`Prime::new`].
pub const MAX_PRIME: u64 = 1 << 31;

/// A prime `p <= 2^31`, checked by trial division at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p > MAX_PRIME {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, z: i64) -> u32 {
        z.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.0 as u64) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (a as u64 + self.0 as u64 - b as u64) as u32
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    /// `a + b*c`
    #[inline]
    pub fn mul_add(self, a: u32, b: u32, c: u32) -> u32 {
        ((a as u64 + b as u64 * c as u64) % self.0 as u64) as u32
    }

    /// Inverse by the extended Euclidean algorithm; `None` for zero.
    pub fn inv(self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.0 as i64, a as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.reduce(s0))
    }

    pub fn pow(self, base: u32, mut exp: u64) -> u32 {
        let mut acc = 1 % self.0;
        let mut b = base % self.0;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            exp >>= 1;
        }
        acc
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// All primes in `[lo, hi]`, ascending.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..=hi).filter(|&n| is_prime(n)).collect()
}

/// An element of F_p together with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldElem {
    value: u32,
    prime: Prime,
}

impl FieldElem {
    pub fn new(z: i64, prime: Prime) -> Self {
        FieldElem { value: prime.reduce(z), prime }
    }

    pub fn zero(prime: Prime) -> Self {
        FieldElem { value: 0, prime }
    }

    pub fn one(prime: Prime) -> Self {
        FieldElem { value: 1 % prime.get(), prime }
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn prime(self) -> Prime {
        self.prime
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn inverse(self) -> Result<Self> {
        let value = self.prime.inv(self.value).ok_or(Error::ZeroInverse(self.prime.get()))?;
        Ok(FieldElem { value, prime: self.prime })
    }

    fn check(self, other: Self) {
        assert_eq!(self.prime, other.prime, "mixed moduli in field arithmetic");
    }
}

/// `z mod p` as a field element.
pub fn reduce(z: i64, prime: Prime) -> FieldElem {
    FieldElem::new(z, prime)
}

/// `z mod p` for an arbitrary-precision integer.
pub fn reduce_big(z: &BigInt, prime: Prime) -> FieldElem {
    let p = BigInt::from(prime.get());
    let r = ((z % &p) + &p) % &p;
    let value = u32::try_from(&r).expect("residue fits in u32");
    FieldElem { value, prime }
}

impl Add for FieldElem {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.check(rhs);
        FieldElem { value: self.prime.add(self.value, rhs.value), prime: self.prime }
    }
}

impl Sub for FieldElem {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.check(rhs);
        FieldElem { value: self.prime.sub(self.value, rhs.value), prime: self.prime }
    }
}

impl Mul for FieldElem {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.check(rhs);
        FieldElem { value: self.prime.mul(self.value, rhs.value), prime: self.prime }
    }
}

impl Neg for FieldElem {
    type Output = Self;
    fn neg(self) -> Self {
        FieldElem { value: self.prime.neg(self.value), prime: self.prime }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.prime)
    }
}

/// Dense row operations over F_p.
pub mod linalg {
    use super::Prime;

    /// Bring `rows` to reduced row echelon form in place, dropping zero rows.
    /// Returns the pivot column of each surviving row.
    pub fn rref(rows: &mut Vec<Vec<u32>>, p: Prime) -> Vec<usize> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..ncols {
            let Some(sel) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
                continue;
            };
            rows.swap(r, sel);
            let inv = p.inv(rows[r][col]).expect("nonzero pivot");
            for x in rows[r].iter_mut() {
                *x = p.mul(*x, inv);
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && row[col] != 0 {
                    let f = p.neg(row[col]);
                    for (x, &y) in row.iter_mut().zip(&pivot_row) {
                        *x = p.mul_add(*x, f, y);
                    }
                }
            }
            pivots.push(col);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        pivots
    }

    pub fn rank(rows: &[Vec<u32>], p: Prime) -> usize {
        let mut m = rows.to_vec();
        rref(&mut m, p).len()
    }

    /// Reduce `v` against an RREF basis with the given pivots; the residue is
    /// zero on every pivot column and vanishes iff `v` lies in the span.
    pub fn reduce_against(v: &mut [u32], basis: &[Vec<u32>], pivots: &[usize], p: Prime) {
        for (row, &c) in basis.iter().zip(pivots) {
            let f = v[c];
            if f != 0 {
                let f = p.neg(f);
                for (x, &y) in v.iter_mut().zip(row) {
                    *x = p.mul_add(*x, f, y);
                }
            }
        }
    }
}
