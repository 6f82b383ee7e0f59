//! Arithmetic in GF(r^k).
//!
//! Elements are encoded as integers `c_0 + c_1 r + … + c_{k-1} r^{k-1}`,
//! the residues `c_0 + c_1 x + …` modulo a fixed monic irreducible
//! polynomial. Multiplication goes through discrete log tables built from
//! the smallest primitive element.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Largest field the constructor accepts.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

#[derive(Clone, PartialEq, Eq)]
pub struct FieldSpec {
    r: u32,
    k: u32,
    q: u32,
    /// Monic, lowest coefficient first, length `k + 1`.
    modulus: Vec<u32>,
    primitive: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.r, self.k, self.modulus)
    }
}

impl FieldSpec {
    /// GF(r^k) with the smallest monic irreducible modulus in coefficient
    /// order `(c_{k-1}, …, c_0)`.
    pub fn new(r: u64, k: u32) -> Result<Self> {
        if !is_prime(r) {
            return Err(Error::NotPrime(r));
        }
        let q = (r as u128).checked_pow(k).unwrap_or(u128::MAX);
        if k == 0 || q > MAX_FIELD_SIZE as u128 {
            return Err(Error::InvalidField(q.min(u64::MAX as u128) as u64));
        }
        let (r, q) = (r as u32, q as u32);
        let modulus = (0..q)
            .map(|code| {
                let mut m = digits(code, r, k);
                m.push(1);
                m
            })
            .find(|m| is_irreducible(m, r))
            .expect("an irreducible polynomial of every degree exists");

        let mut field = FieldSpec {
            r,
            k,
            q,
            modulus,
            primitive: 0,
            exp: Vec::new(),
            log: Vec::new(),
        };
        field.build_tables();
        Ok(field)
    }

    fn build_tables(&mut self) {
        let n = (self.q - 1) as usize;
        for cand in 1..self.q {
            let mut exp = Vec::with_capacity(n);
            let mut x = 1u32;
            loop {
                exp.push(x);
                x = self.slow_mul(x, cand);
                if x == 1 || exp.len() > n {
                    break;
                }
            }
            if exp.len() == n {
                let mut log = vec![0u32; self.q as usize];
                for (i, &e) in exp.iter().enumerate() {
                    log[e as usize] = i as u32;
                }
                self.primitive = cand;
                self.exp = exp;
                self.log = log;
                return;
            }
        }
        unreachable!("multiplicative group of a finite field is cyclic");
    }

    /// Schoolbook product modulo the modulus, independent of the tables.
    pub fn slow_mul(&self, a: u32, b: u32) -> u32 {
        let (r, k) = (self.r, self.k as usize);
        let da = digits(a, r, self.k);
        let db = digits(b, r, self.k);
        let mut prod = vec![0u32; 2 * k];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % r;
            }
        }
        for d in (k..2 * k).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            for (i, &m) in self.modulus.iter().enumerate() {
                let t = &mut prod[d - k + i];
                *t = (*t + r - (c * m) % r) % r;
            }
        }
        undigits(&prod[..k], r)
    }

    pub fn characteristic(&self) -> u32 {
        self.r
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn size(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The multiplicative generator used for the log tables.
    pub fn primitive(&self) -> u32 {
        self.primitive
    }

    pub fn element(&self, value: u32) -> FieldElement<'_> {
        assert!(value < self.q, "value {value} outside GF({})", self.q);
        FieldElement { field: self, value }
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement<'_>> {
        (0..self.q).map(move |v| FieldElement {
            field: self,
            value: v,
        })
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            return (a + b) % self.r;
        }
        let (r, mut a, mut b) = (self.r, a, b);
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.k {
            out += ((a % r + b % r) % r) * place;
            a /= r;
            b /= r;
            place *= r;
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        let (r, mut a) = (self.r, a);
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.k {
            out += ((r - a % r) % r) * place;
            a /= r;
            place *= r;
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q - 1;
        let s = (self.log[a as usize] + self.log[b as usize]) % n;
        self.exp[s as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let n = self.q - 1;
        Some(self.exp[((n - self.log[a as usize]) % n) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let n = (self.q - 1) as u64;
        let s = (self.log[a as usize] as u64 * (e % n)) % n;
        self.exp[s as usize]
    }

    /// `a^r`, the generator of Gal(GF(r^k)/GF(r)).
    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.r as u64)
    }

    pub fn multiplicative_order(&self, a: u32) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let n = (self.q - 1) as u64;
        let l = self.log[a as usize] as u64;
        Some(n / num_integer::gcd(n, l))
    }

    pub fn is_square(&self, a: u32) -> bool {
        a == 0 || self.r == 2 || self.log[a as usize] % 2 == 0
    }
}

/// A field element tied to its field, with operator overloads.
#[derive(Clone, Copy)]
pub struct FieldElement<'f> {
    field: &'f FieldSpec,
    value: u32,
}

impl<'f> FieldElement<'f> {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field(self) -> &'f FieldSpec {
        self.field
    }

    /// Residue coefficients, lowest degree first.
    pub fn coeffs(self) -> Vec<u32> {
        digits(self.value, self.field.r, self.field.k)
    }

    pub fn inv(self) -> Option<Self> {
        self.field.inv(self.value).map(|v| self.with(v))
    }

    pub fn pow(self, e: u64) -> Self {
        self.with(self.field.pow(self.value, e))
    }

    pub fn frobenius(self) -> Self {
        self.with(self.field.frobenius(self.value))
    }

    fn with(self, value: u32) -> Self {
        FieldElement {
            field: self.field,
            value,
        }
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        core::ptr::eq(self.field, other.field) && self.value == other.value
    }
}

impl Eq for FieldElement<'_> {}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs())
    }
}

impl Add for FieldElement<'_> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.with(self.field.add(self.value, rhs.value))
    }
}

impl Sub for FieldElement<'_> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.with(self.field.sub(self.value, rhs.value))
    }
}

impl Mul for FieldElement<'_> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.with(self.field.mul(self.value, rhs.value))
    }
}

impl Neg for FieldElement<'_> {
    type Output = Self;
    fn neg(self) -> Self {
        self.with(self.field.neg(self.value))
    }
}

fn digits(mut v: u32, r: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = v % r;
            v /= r;
            d
        })
        .collect()
}

fn undigits(d: &[u32], r: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * r + c)
}

/// Remainder of `a` modulo monic `m` over GF(r); coefficient lists low first.
fn poly_rem(a: &[u32], m: &[u32], r: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let dm = m.len() - 1;
    while a.len() > dm {
        let c = *a.last().unwrap();
        let shift = a.len() - 1 - dm;
        if c != 0 {
            for (i, &mi) in m.iter().enumerate() {
                let t = &mut a[shift + i];
                *t = (*t + r - (c * mi) % r) % r;
            }
        }
        a.pop();
    }
    a
}

fn is_irreducible(m: &[u32], r: u32) -> bool {
    let k = (m.len() - 1) as u32;
    for d in 1..=k / 2 {
        for code in 0..r.pow(d) {
            let mut f = digits(code, r, d);
            f.push(1);
            if poly_rem(m, &f, r).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}
