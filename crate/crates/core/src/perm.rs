//! Permutations of a finite point set `{0, …, degree-1}`.
//!
//! Products are read left to right: `a * b` applies `a` first, then `b`.
//! This is the right-action convention used throughout the crate, so that
//! coset actions and stabilizer chains compose without inversions.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::arith::{is_prime, is_prime_power_of};
use crate::error::{Error, Result};

/// A point of a permutation domain.
pub type Point = u32;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<Point>,
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm {
            images: (0..degree as Point).collect(),
        }
    }

    /// Builds a permutation from its image list, rejecting non-bijections.
    pub fn from_images(images: Vec<Point>) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::EmptyDomain);
        }
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::NotBijection);
            }
            seen[x] = true;
        }
        Ok(Perm { images })
    }

    /// Builds a permutation of the given degree from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[Point]]) -> Result<Self> {
        let mut images: Vec<Point> = (0..degree as Point).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let x_us = x as usize;
                if x_us >= degree {
                    return Err(Error::PointOutOfRange { point: x, degree });
                }
                if touched[x_us] {
                    return Err(Error::NotBijection);
                }
                touched[x_us] = true;
                images[x_us] = cycle[(i + 1) % cycle.len()];
            }
        }
        Ok(Perm { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<Point>) -> Self {
        debug_assert!(Perm::from_images(images.clone()).is_ok());
        Perm { images }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: Point) -> Point {
        self.images[x as usize]
    }

    pub fn images(&self) -> &[Point] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as Point == x)
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as Point;
        }
        Perm { images: inv }
    }

    /// `self * other`, panicking on a degree mismatch.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in product");
        Perm {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn try_compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: other.degree(),
            });
        }
        Ok(self.compose(other))
    }

    /// Writes `self * other` into `out` without allocating.
    #[inline]
    pub(crate) fn compose_into(&self, other: &Perm, out: &mut Perm) {
        for (o, &x) in out.images.iter_mut().zip(&self.images) {
            *o = other.images[x as usize];
        }
    }

    pub fn pow(&self, mut e: u64) -> Perm {
        let mut base = self.clone();
        let mut acc = Perm::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&base);
            }
            base = base.compose(&base);
            e >>= 1;
        }
        acc
    }

    /// `h^-1 * self * h`.
    pub fn conjugate_by(&self, h: &Perm) -> Perm {
        h.inverse().compose(self).compose(h)
    }

    /// `self^-1 * other^-1 * self * other`.
    pub fn commutator(&self, other: &Perm) -> Perm {
        self.inverse()
            .compose(&other.inverse())
            .compose(self)
            .compose(other)
    }

    pub fn cycles(&self) -> Vec<Vec<Point>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as Point);
                x = self.images[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    /// Lengths of all cycles, fixed points included.
    pub fn cycle_lengths(&self) -> Vec<u64> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.images[x] as usize;
            }
            out.push(len);
        }
        out
    }

    /// Order as the lcm of cycle lengths.
    pub fn order(&self) -> BigUint {
        self.cycle_lengths()
            .into_iter()
            .fold(BigUint::from(1u32), |acc, l| acc.lcm(&BigUint::from(l)))
    }

    /// Order as a machine integer, `None` on overflow.
    pub fn order_u64(&self) -> Option<u64> {
        let mut acc = 1u64;
        for l in self.cycle_lengths() {
            let g = acc.gcd(&l);
            acc = acc.checked_mul(l / g)?;
        }
        Some(acc)
    }

    /// Whether the order is a power of `prime`; the identity counts.
    pub fn is_p_element(&self, prime: u64) -> Result<bool> {
        if !is_prime(prime) {
            return Err(Error::NotPrime(prime));
        }
        Ok(self.is_p_element_unchecked(prime))
    }

    /// Same as [`Perm::is_p_element`] for callers that validated `prime`.
    pub(crate) fn is_p_element_unchecked(&self, prime: u64) -> bool {
        let n = self.degree();
        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u64;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.images[x] as usize;
            }
            if !is_prime_power_of(len, prime) {
                return false;
            }
        }
        true
    }

    pub fn is_even(&self) -> bool {
        self.cycle_lengths().iter().filter(|&&l| l % 2 == 0).count() % 2 == 0
    }

    /// Smallest point moved, if any.
    pub fn first_moved(&self) -> Option<Point> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i as Point != x)
            .map(|(i, _)| i as Point)
    }

    /// Extends the permutation to a larger degree by fixing the new points.
    pub fn pad(&self, degree: usize) -> Result<Perm> {
        if degree < self.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: degree,
            });
        }
        let mut images = self.images.clone();
        images.extend(self.degree() as Point..degree as Point);
        Ok(Perm { images })
    }

    /// Conjugates the action onto the points `offset..offset+degree` of a
    /// domain of size `total`.
    pub fn shift(&self, offset: usize, total: usize) -> Perm {
        assert!(offset + self.degree() <= total);
        let mut images: Vec<Point> = (0..total as Point).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = x + offset as Point;
        }
        Perm { images }
    }

    /// Parses cycle notation such as `(0 1 2)(3 4)`; `()` is the identity.
    pub fn parse_cycles(degree: usize, s: &str) -> Result<Perm> {
        let mut cycles: Vec<Vec<Point>> = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let Some(stripped) = rest.strip_prefix('(') else {
                return Err(Error::BadCycleNotation(String::from(s)));
            };
            let Some(end) = stripped.find(')') else {
                return Err(Error::BadCycleNotation(String::from(s)));
            };
            let body = &stripped[..end];
            let mut cycle = Vec::new();
            for tok in body.split(|c: char| c == ',' || c.is_whitespace()) {
                if tok.is_empty() {
                    continue;
                }
                let x: Point = tok
                    .parse()
                    .map_err(|_| Error::BadCycleNotation(String::from(s)))?;
                cycle.push(x);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = stripped[end + 1..].trim_start();
        }
        let refs: Vec<&[Point]> = cycles.iter().map(|c| c.as_slice()).collect();
        Perm::from_cycles(degree, &refs)
    }
}

impl Mul for &Perm {
    type Output = Perm;
    fn mul(self, rhs: &Perm) -> Perm {
        self.compose(rhs)
    }
}

impl Mul for Perm {
    type Output = Perm;
    fn mul(self, rhs: Perm) -> Perm {
        self.compose(&rhs)
    }
}

/// Cycle notation, omitting fixed points; the identity prints as `()`.
impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut any = false;
        for cycle in self.cycles() {
            if cycle.len() < 2 {
                continue;
            }
            any = true;
            f.write_str("(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p(n: usize, s: &str) -> Perm {
        Perm::parse_cycles(n, s).unwrap()
    }

    #[test]
    fn order_examples() {
        assert_eq!(Perm::identity(5).order(), BigUint::from(1u32));
        assert_eq!(p(5, "(0 1 2)").order(), BigUint::from(3u32));
        assert_eq!(p(5, "(0 1 2)(3 4)").order(), BigUint::from(6u32));
    }

    #[test]
    fn order_by_powering() {
        let g = p(5, "(0 1 2)(3 4)");
        let mut acc = g.clone();
        let mut m = 1;
        while !acc.is_identity() {
            acc = acc.compose(&g);
            m += 1;
        }
        assert_eq!(m, 6);
    }

    #[test]
    fn p_element_examples() {
        assert!(Perm::identity(5).is_p_element(2).unwrap());
        assert!(!p(5, "(0 1 2)(3 4)").is_p_element(2).unwrap());
        assert!(p(6, "(0 1)(2 3 4 5)").is_p_element(2).unwrap());
        assert_eq!(
            Perm::identity(3).is_p_element(6),
            Err(Error::NotPrime(6))
        );
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(Perm::from_images(vec![0, 0]), Err(Error::NotBijection));
        assert!(Perm::from_cycles(3, &[&[0, 3]]).is_err());
        assert!(Perm::from_cycles(3, &[&[0, 1], &[1, 2]]).is_err());
        assert!(Perm::parse_cycles(3, "(0 1").is_err());
        assert!(Perm::parse_cycles(3, "0 1)").is_err());
    }

    #[test]
    fn display_round_trip() {
        let g = p(7, "(0 4 2)(3 6)");
        assert_eq!(g.to_string(), "(0 4 2)(3 6)");
        assert_eq!(Perm::identity(4).to_string(), "()");
        assert_eq!(p(7, &g.to_string()), g);
    }

    #[test]
    fn product_is_left_to_right() {
        let a = p(3, "(0 1)");
        let b = p(3, "(1 2)");
        // 0 -a-> 1 -b-> 2
        assert_eq!((&a * &b).apply(0), 2);
        assert_eq!(a.commutator(&b).order(), BigUint::from(3u32));
    }

    #[test]
    fn shift_and_pad() {
        let g = p(2, "(0 1)");
        assert_eq!(g.shift(2, 5).to_string(), "(2 3)");
        assert_eq!(g.pad(4).unwrap().to_string(), "(0 1)");
    }
}
