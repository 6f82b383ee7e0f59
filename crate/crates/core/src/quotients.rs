//! Normal structure: normal closures, coset-action quotients, conjugacy
//! classes, chief series, solvability and `O_p`.

use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use num_bigint::BigUint;
use num_traits::One;

use crate::arith::{big_is_prime_power_of, is_prime};
use crate::census::sylow;
use crate::error::{cap_exceeded, Error, Result};
use crate::group::{GroupBuilder, GroupHandle, Limits};
use crate::perm::{Perm, Point};

/// Smallest normal subgroup of `g` containing `seeds`.
pub fn normal_closure(g: &GroupHandle, seeds: &[Perm]) -> Result<GroupHandle> {
    for s in seeds {
        if !g.contains(s)? {
            return Err(Error::NotMember);
        }
    }
    let mut b = GroupBuilder::new(g.degree());
    for s in seeds {
        b.push(s)?;
    }
    let mut i = 0;
    while i < b.generators().len() {
        let h = b.generators()[i].clone();
        for a in g.generators() {
            b.push(&h.conjugate_by(a))?;
        }
        i += 1;
    }
    Ok(b.finish())
}

/// `[G, G]`.
pub fn derived_subgroup(g: &GroupHandle) -> Result<GroupHandle> {
    let gens = g.generators();
    let mut seeds = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = a.commutator(b);
            if !c.is_identity() {
                seeds.push(c);
            }
        }
    }
    normal_closure(g, &seeds)
}

pub fn is_solvable(g: &GroupHandle) -> Result<bool> {
    let mut d = g.clone();
    loop {
        if d.is_trivial() {
            return Ok(true);
        }
        let next = derived_subgroup(&d)?;
        if next.order() == d.order() {
            return Ok(false);
        }
        d = next;
    }
}

/// `G/N` realized as the action of `G` on the right cosets of `N`.
#[derive(Debug, Clone)]
pub struct QuotientMap {
    source: GroupHandle,
    kernel: GroupHandle,
    image: GroupHandle,
    /// Canonical coset representatives; entry 0 is the kernel itself.
    reps: Vec<Perm>,
    lookup: HashMap<Perm, usize>,
}

impl QuotientMap {
    pub fn source(&self) -> &GroupHandle {
        &self.source
    }

    pub fn kernel(&self) -> &GroupHandle {
        &self.kernel
    }

    pub fn image(&self) -> &GroupHandle {
        &self.image
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    pub fn coset_reps(&self) -> &[Perm] {
        &self.reps
    }

    /// Which coset `x` lies in.
    pub fn coset_of(&self, x: &Perm) -> usize {
        self.lookup[&self.kernel.coset_canonical(x)]
    }

    pub fn project(&self, x: &Perm) -> Perm {
        let images = self
            .reps
            .iter()
            .map(|r| self.coset_of(&r.compose(x)) as Point)
            .collect();
        Perm::from_images_unchecked(images)
    }

    /// A preimage of an element of the image group.
    pub fn lift(&self, y: &Perm) -> Perm {
        self.reps[y.apply(0) as usize].clone()
    }
}

pub fn quotient_by(g: &GroupHandle, n: &GroupHandle, limits: &Limits) -> Result<QuotientMap> {
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal);
    }
    let index = g.order() / n.order();
    if index > BigUint::from(limits.quotient_index) {
        return Err(cap_exceeded("quotient index", index, limits.quotient_index));
    }
    let start = n.coset_canonical(&g.identity());
    let mut reps = vec![start.clone()];
    let mut lookup = HashMap::new();
    lookup.insert(start, 0usize);
    let mut actions: Vec<Vec<Point>> = vec![Vec::new(); g.generators().len()];
    let mut i = 0;
    while i < reps.len() {
        for (gi, a) in g.generators().iter().enumerate() {
            let c = n.coset_canonical(&reps[i].compose(a));
            let j = match lookup.get(&c) {
                Some(&j) => j,
                None => {
                    let j = reps.len();
                    lookup.insert(c.clone(), j);
                    reps.push(c);
                    j
                }
            };
            actions[gi].push(j as Point);
        }
        i += 1;
    }
    let gens = actions
        .into_iter()
        .map(Perm::from_images)
        .collect::<Result<Vec<_>>>()?;
    let image = GroupHandle::new(gens)?;
    Ok(QuotientMap {
        source: g.clone(),
        kernel: n.clone(),
        image,
        reps,
        lookup,
    })
}

/// A conjugacy class: its first element in enumeration order and its size.
#[derive(Debug, Clone)]
pub struct ConjugacyClass {
    pub rep: Perm,
    pub size: u64,
}

/// All conjugacy classes, by orbits of conjugation on element ranks.
pub fn conjugacy_classes(g: &GroupHandle, limits: &Limits) -> Result<Vec<ConjugacyClass>> {
    let order = g
        .order_u64()
        .filter(|&o| o <= limits.classes)
        .ok_or_else(|| cap_exceeded("class listing", g.order(), limits.classes))?;
    let mut seen = vec![false; order as usize];
    let mut classes = Vec::new();
    for x in g.elements(limits.classes)? {
        let r = g.rank(&x).expect("member") as usize;
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let mut size = 1u64;
        let mut stack = vec![x.clone()];
        while let Some(y) = stack.pop() {
            for a in g.generators() {
                let z = y.conjugate_by(a);
                let rz = g.rank(&z).expect("member") as usize;
                if !seen[rz] {
                    seen[rz] = true;
                    size += 1;
                    stack.push(z);
                }
            }
        }
        classes.push(ConjugacyClass { rep: x, size });
    }
    Ok(classes)
}

/// A minimal normal subgroup: the smallest normal closure of a prime-order
/// class representative.
pub fn minimal_normal_subgroup(g: &GroupHandle, limits: &Limits) -> Result<Option<GroupHandle>> {
    let mut best: Option<GroupHandle> = None;
    for class in conjugacy_classes(g, limits)? {
        let is_prime_order = class
            .rep
            .order_u64()
            .is_some_and(|o| o > 1 && is_prime(o));
        if !is_prime_order {
            continue;
        }
        if let Some(b) = &best {
            // the closure has order at least that of its seed
            if b.order() == &BigUint::from(class.rep.order_u64().unwrap()) {
                continue;
            }
        }
        let m = normal_closure(g, core::slice::from_ref(&class.rep))?;
        if best.as_ref().is_none_or(|b| m.order() < b.order()) {
            best = Some(m);
        }
    }
    Ok(best)
}

/// One factor `upper / lower` of a chief series.
#[derive(Debug, Clone)]
pub struct ChiefSeriesStep {
    pub upper: GroupHandle,
    pub lower: GroupHandle,
    pub factor_order: BigUint,
    pub is_abelian: bool,
}

impl ChiefSeriesStep {
    pub fn is_p_coprime(&self, p: u64) -> bool {
        &self.factor_order % p != BigUint::ZERO
    }

    /// Whether `g` acts trivially on the factor by conjugation.
    pub fn centralized_by(&self, g: &Perm) -> bool {
        self.upper
            .generators()
            .iter()
            .all(|x| self.lower.has(&x.commutator(g)))
    }
}

/// A chief series from `G` down to 1, listed top first.
pub fn chief_series(g: &GroupHandle, limits: &Limits) -> Result<Vec<ChiefSeriesStep>> {
    if g.order() > &BigUint::from(limits.classes) {
        return Err(cap_exceeded("chief series group", g.order(), limits.classes));
    }
    let mut steps = Vec::new();
    let mut lower = GroupHandle::trivial(g.degree());
    while lower.order() != g.order() {
        let upper = if lower.is_trivial() {
            minimal_normal_subgroup(g, limits)?.expect("nontrivial group")
        } else {
            let q = quotient_by(g, &lower, limits)?;
            let m = minimal_normal_subgroup(q.image(), limits)?.expect("nontrivial quotient");
            let lifts: Vec<Perm> = m.generators().iter().map(|y| q.lift(y)).collect();
            lower.join(&lifts)?
        };
        let is_abelian = upper.generators().iter().enumerate().all(|(i, a)| {
            upper.generators()[i + 1..]
                .iter()
                .all(|b| lower.has(&a.commutator(b)))
        });
        steps.push(ChiefSeriesStep {
            factor_order: upper.order() / lower.order(),
            upper: upper.clone(),
            lower,
            is_abelian,
        });
        lower = upper;
    }
    steps.reverse();
    Ok(steps)
}

/// Number of non-abelian chief factors.
pub fn nonabelian_chief_factors(g: &GroupHandle, limits: &Limits) -> Result<usize> {
    Ok(chief_series(g, limits)?
        .iter()
        .filter(|s| !s.is_abelian)
        .count())
}

/// `H ∩ H^a` for a small `H`, by listing `H`.
fn intersect_with_conjugate(h: &GroupHandle, a: &Perm, limits: &Limits) -> Result<GroupHandle> {
    let a_inv = a.inverse();
    let mut b = GroupBuilder::new(h.degree());
    for x in h.elements(limits.enumeration)? {
        if !b.contains(&x) && h.has(&x.conjugate_by(&a_inv)) {
            b.push(&x)?;
        }
    }
    Ok(b.finish())
}

/// The largest normal p-subgroup: the core of a Sylow p-subgroup.
pub fn o_p(g: &GroupHandle, p: u64, limits: &Limits) -> Result<GroupHandle> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if &(g.order() % p) != &BigUint::ZERO {
        return Ok(GroupHandle::trivial(g.degree()));
    }
    let mut core = sylow(g, p, limits)?;
    loop {
        let mut shrank = false;
        for a in g.generators() {
            let next = intersect_with_conjugate(&core, a, limits)?;
            if next.order() < core.order() {
                core = next;
                shrank = true;
            }
        }
        if !shrank {
            debug_assert!(big_is_prime_power_of(core.order(), p) || core.order().is_one());
            return Ok(core);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::m10;
    use crate::constructions::{alternating, subdirect_x_t, symmetric};
    use crate::perm::Perm;

    fn p(n: usize, s: &str) -> Perm {
        Perm::parse_cycles(n, s).unwrap()
    }

    fn orders(steps: &[ChiefSeriesStep]) -> Vec<u64> {
        steps
            .iter()
            .map(|s| u64::try_from(&s.factor_order).unwrap())
            .collect()
    }

    #[test]
    fn normal_closure_examples() {
        let s3 = symmetric(3).unwrap();
        let c = normal_closure(&s3, &[p(3, "(0 1 2)")]).unwrap();
        assert_eq!(c.order(), &BigUint::from(3u32));
        let s4 = symmetric(4).unwrap();
        let v = normal_closure(&s4, &[p(4, "(0 1)(2 3)")]).unwrap();
        assert_eq!(v.order(), &BigUint::from(4u32));
        let m = m10().unwrap();
        let x = m.socle.generators()[0].clone();
        let c = normal_closure(&m.group, &[x]).unwrap();
        assert!(c.same_group(&m.socle));
        assert!(normal_closure(&s3, &[p(3, "()")]).unwrap().is_trivial());
        assert_eq!(
            normal_closure(&alternating(4).unwrap(), &[p(4, "(0 1)")]).unwrap_err(),
            Error::NotMember
        );
    }

    #[test]
    fn quotient_examples() {
        let limits = Limits::default();
        let m = m10().unwrap();
        let q = quotient_by(&m.group, &m.socle, &limits).unwrap();
        assert_eq!(q.image().order(), &BigUint::from(2u32));
        let s4 = symmetric(4).unwrap();
        let v4 = normal_closure(&s4, &[p(4, "(0 1)(2 3)")]).unwrap();
        let q = quotient_by(&s4, &v4, &limits).unwrap();
        assert_eq!(q.image().order(), &BigUint::from(6u32));
        assert_eq!(q.image().degree(), 6);
        let q = quotient_by(&s4, &s4, &limits).unwrap();
        assert_eq!(q.image().degree(), 1);
        assert!(q.image().is_trivial());
        let c3 = GroupHandle::new(alloc::vec![p(4, "(0 1 2)")]).unwrap();
        assert_eq!(quotient_by(&s4, &c3, &limits).unwrap_err(), Error::NotNormal);
    }

    #[test]
    fn projection_is_a_homomorphism() {
        let limits = Limits::default();
        let s4 = symmetric(4).unwrap();
        let v4 = normal_closure(&s4, &[p(4, "(0 1)(2 3)")]).unwrap();
        let q = quotient_by(&s4, &v4, &limits).unwrap();
        let all: Vec<Perm> = s4.elements(100).unwrap().collect();
        for a in &all {
            if v4.has(a) {
                assert!(q.project(a).is_identity());
            }
            assert!(q.image().has(&q.project(a)));
            assert_eq!(q.coset_of(&q.lift(&q.project(a))), q.coset_of(a));
            for b in &all {
                assert_eq!(q.project(&a.compose(b)), q.project(a).compose(&q.project(b)));
            }
        }
    }

    #[test]
    fn chief_series_examples() {
        let limits = Limits::default();
        let s4 = chief_series(&symmetric(4).unwrap(), &limits).unwrap();
        assert_eq!(orders(&s4), [2, 3, 4]);
        assert!(s4.iter().all(|s| s.is_abelian));
        let m = chief_series(&m10().unwrap().group, &limits).unwrap();
        assert_eq!(orders(&m), [2, 360]);
        assert_eq!(m.iter().filter(|s| !s.is_abelian).count(), 1);
        let a5 = chief_series(&alternating(5).unwrap(), &limits).unwrap();
        assert_eq!(orders(&a5), [60]);
        assert!(!a5[0].is_abelian);
    }

    #[test]
    fn o_p_examples() {
        let limits = Limits::default();
        let s4 = symmetric(4).unwrap();
        assert_eq!(o_p(&s4, 2, &limits).unwrap().order(), &BigUint::from(4u32));
        let s3 = symmetric(3).unwrap();
        let o3 = o_p(&s3, 3, &limits).unwrap();
        assert!(o3.same_group(&alternating(3).unwrap()));
        assert!(o_p(&m10().unwrap().group, 2, &limits).unwrap().is_trivial());
        assert!(o_p(&s3, 5, &limits).unwrap().is_trivial());
    }

    #[test]
    fn solvability() {
        assert!(is_solvable(&symmetric(4).unwrap()).unwrap());
        assert!(!is_solvable(&alternating(5).unwrap()).unwrap());
        let m = m10().unwrap();
        let x2 = subdirect_x_t(&m.group, &m.socle, 2).unwrap();
        assert!(!is_solvable(&x2).unwrap());
        assert!(is_solvable(&GroupHandle::trivial(3)).unwrap());
    }

    #[test]
    fn class_sizes_sum_to_order() {
        let limits = Limits::default();
        let m = m10().unwrap();
        let classes = conjugacy_classes(&m.group, &limits).unwrap();
        assert_eq!(classes.iter().map(|c| c.size).sum::<u64>(), 720);
        let s5 = conjugacy_classes(&symmetric(5).unwrap(), &limits).unwrap();
        assert_eq!(s5.len(), 7);
    }
}
