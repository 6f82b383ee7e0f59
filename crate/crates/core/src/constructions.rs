//! Standard families and the product constructions: direct powers, the
//! index-2 subdirect powers `X_t`, the wreath towers `Y_t` and the affine
//! metacyclic groups `(Z/q^m) ⋊ C_{p^n}`.
//!
//! Block layouts place block `i` on points `i*d .. (i+1)*d` where `d` is the
//! degree of the component group.

use alloc::format;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

use crate::arith::{is_prime, pow_u, prime_divisors, ratio, Rational};
use crate::error::{cap_exceeded, Error, Result};
use crate::group::{GroupHandle, Structure};
use crate::perm::{Perm, Point};

/// Degree cap for block constructions.
pub const MAX_BLOCK_DEGREE: usize = 1024;
/// Domain cap for the affine groups.
pub const MAX_AFFINE_DEGREE: u64 = 1 << 16;

pub fn symmetric(n: usize) -> Result<GroupHandle> {
    let n = n.max(1);
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Perm::from_cycles(n, &[&[0, 1]])?);
    }
    if n >= 3 {
        let cycle: Vec<Point> = (0..n as Point).collect();
        gens.push(Perm::from_cycles(n, &[&cycle])?);
    }
    if gens.is_empty() {
        gens.push(Perm::identity(n));
    }
    GroupHandle::new(gens)
}

pub fn alternating(n: usize) -> Result<GroupHandle> {
    let n = n.max(1);
    if n < 3 {
        return GroupHandle::new(alloc::vec![Perm::identity(n)]);
    }
    let gens = (2..n as Point)
        .map(|i| Perm::from_cycles(n, &[&[0, 1, i]]))
        .collect::<Result<Vec<_>>>()?;
    GroupHandle::new(gens)
}

fn check_degree(degree: usize) -> Result<()> {
    if degree > MAX_BLOCK_DEGREE {
        return Err(cap_exceeded("degree", degree, MAX_BLOCK_DEGREE as u64));
    }
    Ok(())
}

/// Plants every generator of `g` in each of `blocks` blocks.
fn planted(g: &GroupHandle, blocks: usize) -> Vec<Perm> {
    let d = g.degree();
    let total = d * blocks;
    (0..blocks)
        .flat_map(|b| g.generators().iter().map(move |x| x.shift(b * d, total)))
        .filter(|x| !x.is_identity())
        .collect()
}

/// The same element in every block.
pub fn diagonal(x: &Perm, blocks: usize) -> Perm {
    let d = x.degree();
    let images = (0..blocks)
        .flat_map(|b| x.images().iter().map(move |&y| y + (b * d) as Point))
        .collect();
    Perm::from_images_unchecked(images)
}

/// Places `parts[i]` in block `i`.
pub fn tuple(parts: &[Perm]) -> Perm {
    let images = parts
        .iter()
        .scan(0usize, |off, p| {
            let o = *off;
            *off += p.degree();
            Some(p.images().iter().map(move |&y| y + o as Point))
        })
        .flatten()
        .collect();
    Perm::from_images_unchecked(images)
}

/// Splits a block-preserving permutation into its components.
pub fn components(x: &Perm, block: usize) -> Vec<Perm> {
    x.images()
        .chunks(block)
        .enumerate()
        .map(|(b, chunk)| {
            Perm::from_images_unchecked(
                chunk.iter().map(|&y| y - (b * block) as Point).collect(),
            )
        })
        .collect()
}

/// `G^t` on `t` disjoint blocks.
pub fn direct_power(g: &GroupHandle, t: u32) -> Result<GroupHandle> {
    if t == 0 {
        return Err(Error::InvalidParameter("direct power needs t >= 1".into()));
    }
    check_degree(g.degree() * t as usize)?;
    let mut gens = planted(g, t as usize);
    if gens.is_empty() {
        gens.push(Perm::identity(g.degree() * t as usize));
    }
    Ok(GroupHandle::new(gens)?.with_structure(Structure::DirectPower {
        base: g.clone(),
        t,
    }))
}

/// `A × B` with `A` on the first points and `B` after it.
pub fn direct_product(a: &GroupHandle, b: &GroupHandle) -> Result<GroupHandle> {
    let total = a.degree() + b.degree();
    check_degree(total)?;
    let mut gens: Vec<Perm> = a
        .generators()
        .iter()
        .map(|x| x.shift(0, total))
        .chain(b.generators().iter().map(|x| x.shift(a.degree(), total)))
        .filter(|x| !x.is_identity())
        .collect();
    if gens.is_empty() {
        gens.push(Perm::identity(total));
    }
    GroupHandle::new(gens)
}

/// First generator of `x` lying outside `s`.
fn outer_generator(x: &GroupHandle, s: &GroupHandle) -> Option<Perm> {
    x.generators().iter().find(|g| !s.has(g)).cloned()
}

fn check_index_two(x: &GroupHandle, s: &GroupHandle) -> Result<()> {
    if !s.is_subgroup_of(x) {
        return Err(Error::InvalidParameter("S is not a subgroup of X".into()));
    }
    if x.order() != &(s.order() * 2u32) {
        let index = x.order() / s.order();
        return Err(Error::IndexNotTwo(format!("{index}")));
    }
    Ok(())
}

/// `X_t = {(x_1, …, x_t) ∈ X^t : x_1 ≡ … ≡ x_t mod S}` for `S` of index 2.
pub fn subdirect_x_t(x: &GroupHandle, s: &GroupHandle, t: u32) -> Result<GroupHandle> {
    if t == 0 {
        return Err(Error::InvalidParameter("X_t needs t >= 1".into()));
    }
    check_index_two(x, s)?;
    check_degree(x.degree() * t as usize)?;
    let a = outer_generator(x, s).expect("index 2 implies an outer generator");
    let mut gens = planted(s, t as usize);
    gens.push(diagonal(&a, t as usize));
    Ok(GroupHandle::new(gens)?.with_structure(Structure::Subdirect {
        top: x.clone(),
        socle: s.clone(),
        t,
    }))
}

/// `(a, 1, …, 1)·σ` on `n` blocks, with `σ` moving block `i` to `i+1`.
pub fn wreath_top(a: &Perm, n: usize) -> Perm {
    let d = a.degree();
    let mut images = Vec::with_capacity(n * d);
    for i in 0..n {
        let next = ((i + 1) % n) * d;
        for x in 0..d as Point {
            let y = if i == 0 { a.apply(x) } else { x };
            images.push(next as Point + y);
        }
    }
    Perm::from_images_unchecked(images)
}

/// `Y_t = ⟨S^n, (a,1,…,1)σ⟩` with `n = 2^t` and `σ` an `n`-cycle on blocks.
pub fn wreath_y_t(s: &GroupHandle, a: &Perm, t: u32) -> Result<GroupHandle> {
    if s.contains(a)? {
        return Err(Error::InvalidParameter("a must lie outside S".into()));
    }
    if !s.generators().iter().all(|g| s.has(&g.conjugate_by(a))) {
        return Err(Error::InvalidParameter("a does not normalize S".into()));
    }
    let n = 1usize
        .checked_shl(t)
        .ok_or_else(|| cap_exceeded("wreath depth", t, 20))?;
    check_degree(n.saturating_mul(s.degree()))?;
    let mut gens = planted(s, n);
    gens.push(wreath_top(a, n));
    GroupHandle::new(gens)
}

/// The base `N = S^n` of `Y_t`, on the same points.
pub fn wreath_base(s: &GroupHandle, t: u32) -> Result<GroupHandle> {
    let n = 1u32
        .checked_shl(t)
        .ok_or_else(|| cap_exceeded("wreath depth", t, 20))?;
    direct_power(s, n)
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Smallest primitive root modulo `q^m` for an odd prime `q`.
pub fn primitive_root(q: u64, m: u32) -> u64 {
    let modulus = q.pow(m);
    let phi = q.pow(m - 1) * (q - 1);
    let primes = prime_divisors(&BigUint::from(phi));
    (2..modulus)
        .find(|&g| g % q != 0 && primes.iter().all(|&l| mod_pow(g, phi / l, modulus) != 1))
        .unwrap_or(1)
}

/// Affine maps `x -> u x + b` on `Z/q^m`, `u` ranging over the subgroup of
/// order `p^n` of the units.
pub fn metacyclic_affine(q: u64, m: u32, p: u64, n: u32) -> Result<GroupHandle> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if m == 0 {
        return Err(Error::InvalidParameter("meta needs m >= 1".into()));
    }
    let pn = p
        .checked_pow(n)
        .ok_or_else(|| Error::InvalidParameter(format!("{p}^{n} overflows")))?;
    if (q - 1) % pn != 0 {
        return Err(Error::InvalidParameter(format!(
            "{p}^{n} = {pn} does not divide {q} - 1"
        )));
    }
    let modulus = q
        .checked_pow(m)
        .filter(|&qm| qm <= MAX_AFFINE_DEGREE)
        .ok_or_else(|| cap_exceeded("affine domain", format!("{q}^{m}"), MAX_AFFINE_DEGREE))?;
    let phi = q.pow(m - 1) * (q - 1);
    let u = mod_pow(primitive_root(q, m), phi / pn, modulus);
    let translate: Vec<Point> = (0..modulus).map(|x| ((x + 1) % modulus) as Point).collect();
    let scale: Vec<Point> = (0..modulus).map(|x| (x * u % modulus) as Point).collect();
    GroupHandle::new(alloc::vec![
        Perm::from_images(translate)?,
        Perm::from_images(scale)?,
    ])
}

/// The translation subgroup `Z/q^m` of [`metacyclic_affine`].
pub fn metacyclic_kernel(q: u64, m: u32) -> Result<GroupHandle> {
    let modulus = q
        .checked_pow(m)
        .filter(|&qm| qm <= MAX_AFFINE_DEGREE)
        .ok_or_else(|| cap_exceeded("affine domain", format!("{q}^{m}"), MAX_AFFINE_DEGREE))?;
    let translate: Vec<Point> = (0..modulus).map(|x| ((x + 1) % modulus) as Point).collect();
    GroupHandle::new(alloc::vec![Perm::from_images(translate)?])
}

/// The towers whose 2-element proportions have closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TowerFamily {
    /// `G_t = X_t` for `X = M10`: `(136^t + 360^t) / (2·360^t)`.
    Gt,
    /// Lower bound `(2^{t+1} - 1) / 2^{t+1}` for `P_2(Y_t)`.
    Yt,
    /// Truncations `∏_{t=u}^{u+T-1} (1 - 2^{-(t+1)})` of the `X_u` bound.
    Xu { u: u32 },
    /// `((p^n - 1) q^m + 1) / (p^n q^m)` for `(Z/q^m) ⋊ C_{p^n}`.
    Metacyclic { q: u64, p: u64, n: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TowerSpec {
    pub family: TowerFamily,
}

impl TowerSpec {
    pub fn new(family: TowerFamily) -> Self {
        TowerSpec { family }
    }

    /// Exact value at `depth`: `t` for Gt and Yt, the truncation length for
    /// Xu, and `m` for the metacyclic family.
    pub fn closed_form(&self, depth: u32) -> Rational {
        match self.family {
            TowerFamily::Gt => {
                let top = pow_u(360, depth);
                ratio(pow_u(136, depth) + &top, top * 2u32)
            }
            TowerFamily::Yt => {
                let n = pow_u(2, depth + 1);
                ratio(&n - 1u32, n)
            }
            TowerFamily::Xu { u } => (u..u + depth).fold(Rational::one(), |acc, t| {
                let d = pow_u(2, t + 1);
                acc * ratio(&d - 1u32, d)
            }),
            TowerFamily::Metacyclic { q, p, n } => {
                let pn = pow_u(p, n);
                let qm = pow_u(q, depth);
                ratio((&pn - 1u32) * &qm + 1u32, pn * qm)
            }
        }
    }

    /// Exact limit as the depth grows, where it is rational.
    pub fn limit(&self) -> Option<Rational> {
        match self.family {
            TowerFamily::Gt => Some(ratio(1u32, 2u32)),
            TowerFamily::Yt => Some(Rational::one()),
            TowerFamily::Xu { .. } => None,
            TowerFamily::Metacyclic { p, n, .. } => {
                let pn = pow_u(p, n);
                Some(ratio(&pn - 1u32, pn))
            }
        }
    }

    /// True when the values increase with depth, false when they decrease.
    pub fn increasing(&self) -> bool {
        matches!(self.family, TowerFamily::Yt)
    }

    pub fn first_depth(&self) -> u32 {
        match self.family {
            TowerFamily::Yt | TowerFamily::Xu { .. } => 0,
            _ => 1,
        }
    }
}

/// `|Y_t|` from the semidirect structure: `2^{t+1} |S|^{2^t}`.
pub fn wreath_order(socle_order: &BigUint, t: u32) -> BigUint {
    pow_u(2, t + 1) * num_traits::pow(socle_order.clone(), 1usize << t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::m10;
    use crate::group::Limits;
    use hashbrown::HashSet;

    fn count_two_elements(g: &GroupHandle) -> usize {
        g.elements(Limits::default().enumeration)
            .unwrap()
            .filter(|x| x.is_p_element_unchecked(2))
            .count()
    }

    #[test]
    fn standard_families() {
        assert_eq!(symmetric(4).unwrap().order(), &BigUint::from(24u32));
        assert_eq!(alternating(6).unwrap().order(), &BigUint::from(360u32));
        assert_eq!(alternating(2).unwrap().order(), &BigUint::one());
        assert_eq!(symmetric(1).unwrap().order(), &BigUint::one());
    }

    #[test]
    fn direct_power_examples() {
        let s3 = symmetric(3).unwrap();
        let s3sq = direct_power(&s3, 2).unwrap();
        assert_eq!(s3sq.order(), &BigUint::from(36u32));
        assert_eq!(s3sq.degree(), 6);
        let x = tuple(&[
            Perm::parse_cycles(3, "(0 1)").unwrap(),
            Perm::parse_cycles(3, "(0 1 2)").unwrap(),
        ]);
        assert!(s3sq.has(&x));
        assert_eq!(x.order_u64(), Some(6));
        assert_eq!(components(&x, 3)[1].order_u64(), Some(3));
    }

    #[test]
    fn alt6_squared_two_elements() {
        let a6 = alternating(6).unwrap();
        let sq = direct_power(&a6, 2).unwrap();
        assert_eq!(count_two_elements(&sq), 136 * 136);
    }

    #[test]
    fn x_t_orders_and_cosets() {
        let m = m10().unwrap();
        let x1 = subdirect_x_t(&m.group, &m.socle, 1).unwrap();
        assert!(x1.same_group(&m.group));
        let x2 = subdirect_x_t(&m.group, &m.socle, 2).unwrap();
        assert_eq!(x2.order(), &BigUint::from(259200u32));
        let socle2 = direct_power(&m.socle, 2).unwrap();
        let a = m.outer.clone();
        for g in x2.generators() {
            let parts = components(g, 10);
            let outer: Vec<bool> = parts.iter().map(|c| !m.socle.has(c)).collect();
            assert!(outer.iter().all(|&o| o == outer[0]));
        }
        assert!(socle2.is_subgroup_of(&x2));
        assert!(x2.has(&diagonal(&a, 2)));
        let x8 = subdirect_x_t(&m.group, &m.socle, 8).unwrap();
        assert_eq!(x8.order(), &(pow_u(360, 8) * 2u32));
    }

    #[test]
    fn x_t_rejects_wrong_index() {
        let s4 = symmetric(4).unwrap();
        let v4 = GroupHandle::new(alloc::vec![
            Perm::parse_cycles(4, "(0 1)(2 3)").unwrap(),
            Perm::parse_cycles(4, "(0 2)(1 3)").unwrap(),
        ])
        .unwrap();
        assert!(matches!(subdirect_x_t(&s4, &v4, 2), Err(Error::IndexNotTwo(_))));
    }

    #[test]
    fn y_t_orders() {
        let m = m10().unwrap();
        let y0 = wreath_y_t(&m.socle, &m.outer, 0).unwrap();
        assert_eq!(y0.order(), &BigUint::from(720u32));
        let y1 = wreath_y_t(&m.socle, &m.outer, 1).unwrap();
        assert_eq!(y1.degree(), 20);
        assert_eq!(y1.order(), &BigUint::from(518400u32));
        assert_eq!(y1.order(), &wreath_order(m.socle.order(), 1));
        let y2 = wreath_y_t(&m.socle, &m.outer, 2).unwrap();
        assert_eq!(y2.order(), &wreath_order(m.socle.order(), 2));
        assert!(wreath_y_t(&m.socle, &m.socle.generators()[0], 1).is_err());
        assert!(wreath_base(&m.socle, 1).unwrap().is_normal_in(&y1));
    }

    #[test]
    fn metacyclic_examples() {
        let s3 = metacyclic_affine(3, 1, 2, 1).unwrap();
        assert!(s3.same_group(&symmetric(3).unwrap()));
        let f21 = metacyclic_affine(7, 1, 3, 1).unwrap();
        assert_eq!(f21.order(), &BigUint::from(21u32));
        let threes = f21
            .elements(100)
            .unwrap()
            .filter(|x| x.is_p_element_unchecked(3))
            .count();
        assert_eq!(threes, 15);
        assert!(matches!(
            metacyclic_affine(5, 1, 2, 3),
            Err(Error::InvalidParameter(_))
        ));
        assert!(metacyclic_affine(6, 1, 2, 1).is_err());
    }

    #[test]
    fn metacyclic_census_brute_force() {
        for (q, m, p, n) in [(3, 2, 2, 1), (5, 2, 2, 2), (7, 1, 2, 1), (13, 1, 3, 1), (3, 4, 2, 1)] {
            let g = metacyclic_affine(q, m, p, n).unwrap();
            let pn = p.pow(n);
            let qm = q.pow(m);
            assert_eq!(g.order(), &BigUint::from(pn * qm));
            let kernel = metacyclic_kernel(q, m).unwrap();
            let mut count = 0u64;
            let mut outside: HashSet<bool> = HashSet::new();
            for x in g.elements(1 << 20).unwrap() {
                if x.is_p_element_unchecked(p) {
                    count += 1;
                    if !x.is_identity() {
                        outside.insert(kernel.has(&x));
                    }
                }
            }
            assert_eq!(count, (pn - 1) * qm + 1);
            assert!(!outside.contains(&true));
        }
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root(3, 1), 2);
        assert_eq!(primitive_root(7, 1), 3);
        assert_eq!(primitive_root(3, 3), 2);
    }

    #[test]
    fn tower_closed_forms() {
        let gt = TowerSpec::new(TowerFamily::Gt);
        assert_eq!(gt.closed_form(1), ratio(496u32, 720u32));
        assert_eq!(gt.closed_form(2), ratio(148096u32, 259200u32));
        let meta = TowerSpec::new(TowerFamily::Metacyclic { q: 3, p: 2, n: 1 });
        assert_eq!(meta.closed_form(1), ratio(2u32, 3u32));
        assert_eq!(meta.limit(), Some(ratio(1u32, 2u32)));
        let yt = TowerSpec::new(TowerFamily::Yt);
        assert_eq!(yt.closed_form(1), ratio(3u32, 4u32));
        let xu = TowerSpec::new(TowerFamily::Xu { u: 1 });
        assert_eq!(xu.closed_form(2), ratio(3u32 * 7, 4u32 * 8));
    }
}
