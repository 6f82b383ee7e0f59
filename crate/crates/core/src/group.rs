//! Deterministic Schreier–Sims stabilizer chains and the shared group handle.
//!
//! A chain stores, for each base point `b_l`, the orbit of `b_l` under the
//! pointwise stabilizer of `b_0, …, b_{l-1}` together with explicit coset
//! representatives `u` with `b_l * u = b`. Every group element factors
//! uniquely as `u_{k-1} * … * u_1 * u_0`, which drives membership, ranking,
//! enumeration and exactly uniform sampling.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rand_core::RngCore;

use crate::error::{cap_exceeded, Error, Result};
use crate::perm::{Perm, Point};

const NONE: u32 = u32::MAX;

/// Resource caps for the brute-force parts of the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest group or coset that may be listed element by element.
    pub enumeration: u64,
    /// Largest group on which pair statistics are computed.
    pub pairs: u64,
    /// Largest index of a quotient realized as a coset action.
    pub quotient_index: u64,
    /// Largest group scanned when computing a normalizer.
    pub normalizer: u64,
    /// Largest group whose conjugacy classes are listed.
    pub classes: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration: 1 << 28,
            pairs: 5_000,
            quotient_index: 10_000,
            normalizer: 1 << 21,
            classes: 1_000_000,
        }
    }
}

#[derive(Clone)]
struct Level {
    base: Point,
    gens: Vec<Perm>,
    orbit: Vec<Point>,
    /// Orbit position per point, or `NONE`.
    position: Vec<u32>,
    reps: Vec<Perm>,
    inv_reps: Vec<Perm>,
    /// Per orbit point: how many generators have been applied to it.
    scanned: Vec<usize>,
    /// Per orbit point: how many Schreier generators are known to sift.
    checked: Vec<usize>,
}

impl Level {
    fn new(base: Point, degree: usize) -> Self {
        let mut position = vec![NONE; degree];
        position[base as usize] = 0;
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            position,
            reps: vec![Perm::identity(degree)],
            inv_reps: vec![Perm::identity(degree)],
            scanned: vec![0],
            checked: vec![0],
        }
    }

    fn add_gen(&mut self, g: Perm) {
        self.gens.push(g);
        let mut i = 0;
        while i < self.orbit.len() {
            while self.scanned[i] < self.gens.len() {
                let s = &self.gens[self.scanned[i]];
                let img = s.apply(self.orbit[i]);
                if self.position[img as usize] == NONE {
                    let u = self.reps[i].compose(s);
                    self.position[img as usize] = self.orbit.len() as u32;
                    self.orbit.push(img);
                    self.inv_reps.push(u.inverse());
                    self.reps.push(u);
                    self.scanned.push(0);
                    self.checked.push(0);
                }
                self.scanned[i] += 1;
            }
            i += 1;
        }
    }
}

#[derive(Clone)]
pub(crate) struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    fn empty(degree: usize) -> Self {
        StabChain {
            degree,
            levels: Vec::new(),
        }
    }

    /// Strips `g` through levels `from..`; returns the residue and the level
    /// at which stripping stopped (`levels.len()` when it went all the way).
    fn sift_from(&self, g: &Perm, from: usize) -> (Perm, usize) {
        let mut h = g.clone();
        let mut scratch = Perm::identity(self.degree);
        for (l, lv) in self.levels.iter().enumerate().skip(from) {
            let pos = lv.position[h.apply(lv.base) as usize];
            if pos == NONE {
                return (h, l);
            }
            h.compose_into(&lv.inv_reps[pos as usize], &mut scratch);
            core::mem::swap(&mut h, &mut scratch);
        }
        (h, self.levels.len())
    }

    fn contains(&self, g: &Perm) -> bool {
        let (h, _) = self.sift_from(g, 0);
        h.is_identity()
    }

    fn insert(&mut self, h: Perm, from: usize, to: usize) {
        for l in from..=to {
            if l == self.levels.len() {
                let b = h.first_moved().expect("inserting the identity");
                self.levels.push(Level::new(b, self.degree));
            }
            self.levels[l].add_gen(h.clone());
        }
    }

    /// Adds `g` to the strong generators and restores the chain invariant.
    /// Returns false when `g` was already a member.
    fn extend(&mut self, g: &Perm) -> bool {
        if self.contains(g) {
            return false;
        }
        let fixed = self
            .levels
            .iter()
            .take_while(|lv| g.apply(lv.base) == lv.base)
            .count();
        self.insert(g.clone(), 0, fixed);
        self.complete();
        true
    }

    fn complete(&mut self) {
        let mut i = self.levels.len();
        'outer: while i > 0 {
            let l = i - 1;
            let mut oi = 0;
            while oi < self.levels[l].orbit.len() {
                while self.levels[l].checked[oi] < self.levels[l].gens.len() {
                    let lv = &self.levels[l];
                    let s = &lv.gens[lv.checked[oi]];
                    let img = s.apply(lv.orbit[oi]);
                    let back = &lv.inv_reps[lv.position[img as usize] as usize];
                    let schreier = lv.reps[oi].compose(s).compose(back);
                    let (h, j) = self.sift_from(&schreier, l + 1);
                    if !h.is_identity() {
                        self.insert(h, l + 1, j);
                        i = j + 1;
                        continue 'outer;
                    }
                    self.levels[l].checked[oi] += 1;
                }
                oi += 1;
            }
            i -= 1;
        }
    }

    fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::one(), |acc, lv| acc * BigUint::from(lv.orbit.len()))
    }
}

/// Structural metadata that lets censuses count componentwise instead of
/// enumerating.
#[derive(Clone, Debug)]
pub enum Structure {
    /// `base^t` acting on `t` disjoint blocks.
    DirectPower { base: GroupHandle, t: u32 },
    /// Tuples of `top` congruent modulo the index-2 subgroup `socle`.
    Subdirect {
        top: GroupHandle,
        socle: GroupHandle,
        t: u32,
    },
}

struct Inner {
    degree: usize,
    generators: Vec<Perm>,
    chain: StabChain,
    order: BigUint,
    structure: Option<Structure>,
}

/// An immutable finite permutation group with a complete stabilizer chain.
/// Cloning is cheap; handles may be shared across threads.
#[derive(Clone)]
pub struct GroupHandle(Arc<Inner>);

impl fmt::Debug for GroupHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupHandle")
            .field("degree", &self.degree())
            .field("order", &self.0.order)
            .field("generators", &self.0.generators.len())
            .finish()
    }
}

impl GroupHandle {
    /// Runs Schreier–Sims on `generators`.
    pub fn new(generators: Vec<Perm>) -> Result<Self> {
        let degree = generators.first().ok_or(Error::NoGenerators)?.degree();
        let mut builder = GroupBuilder::new(degree);
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
            builder.push_unchecked(g);
        }
        Ok(builder.finish_with_generators(generators))
    }

    pub fn trivial(degree: usize) -> Self {
        GroupBuilder::new(degree).finish()
    }

    pub fn with_structure(self, structure: Structure) -> Self {
        let inner = &*self.0;
        GroupHandle(Arc::new(Inner {
            degree: inner.degree,
            generators: inner.generators.clone(),
            chain: inner.chain.clone(),
            order: inner.order.clone(),
            structure: Some(structure),
        }))
    }

    pub fn structure(&self) -> Option<&Structure> {
        self.0.structure.as_ref()
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.0.generators
    }

    pub fn order(&self) -> &BigUint {
        &self.0.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        u64::try_from(&self.0.order).ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.0.chain.levels.is_empty()
    }

    pub fn base(&self) -> Vec<Point> {
        self.0.chain.levels.iter().map(|lv| lv.base).collect()
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.0.chain.levels.iter().map(|lv| lv.orbit.len()).collect()
    }

    pub fn identity(&self) -> Perm {
        Perm::identity(self.degree())
    }

    pub fn contains(&self, g: &Perm) -> Result<bool> {
        self.check_degree(g)?;
        Ok(self.0.chain.contains(g))
    }

    /// Membership for callers that already know the degrees agree.
    pub fn has(&self, g: &Perm) -> bool {
        debug_assert_eq!(g.degree(), self.degree());
        self.0.chain.contains(g)
    }

    fn check_degree(&self, g: &Perm) -> Result<()> {
        if g.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                expected: self.degree(),
                found: g.degree(),
            });
        }
        Ok(())
    }

    pub fn is_subgroup_of(&self, other: &GroupHandle) -> bool {
        self.degree() == other.degree() && self.generators().iter().all(|g| other.has(g))
    }

    /// Same set of elements.
    pub fn same_group(&self, other: &GroupHandle) -> bool {
        self.order() == other.order() && self.is_subgroup_of(other)
    }

    /// Whether `self` is normalized by every generator of `ambient`.
    pub fn is_normal_in(&self, ambient: &GroupHandle) -> bool {
        self.is_subgroup_of(ambient)
            && ambient.generators().iter().all(|a| {
                self.generators()
                    .iter()
                    .all(|h| self.has(&h.conjugate_by(a)))
            })
    }

    /// Position of `g` in enumeration order, `None` for non-members.
    pub fn rank(&self, g: &Perm) -> Option<u64> {
        let chain = &self.0.chain;
        let mut h = g.clone();
        let mut rank = 0u64;
        let mut radix = 1u64;
        for lv in &chain.levels {
            let pos = lv.position[h.apply(lv.base) as usize];
            if pos == NONE {
                return None;
            }
            rank = rank.checked_add((pos as u64).checked_mul(radix)?)?;
            radix = radix.checked_mul(lv.orbit.len() as u64)?;
            h = h.compose(&lv.inv_reps[pos as usize]);
        }
        h.is_identity().then_some(rank)
    }

    /// Inverse of [`GroupHandle::rank`].
    pub fn unrank(&self, mut rank: u64) -> Option<Perm> {
        let levels = &self.0.chain.levels;
        let mut idx = Vec::with_capacity(levels.len());
        for lv in levels {
            let n = lv.orbit.len() as u64;
            idx.push((rank % n) as usize);
            rank /= n;
        }
        if rank != 0 {
            return None;
        }
        let mut g = self.identity();
        for (lv, &i) in levels.iter().zip(&idx).rev() {
            g = g.compose(&lv.reps[i]);
        }
        Some(g)
    }

    /// Lists every element once, refusing groups larger than `cap`.
    pub fn elements(&self, cap: u64) -> Result<Elements<'_>> {
        if self.order() > &BigUint::from(cap) {
            return Err(cap_exceeded("group", self.order(), cap));
        }
        Ok(Elements::new(self))
    }

    /// One exactly uniform element: an independent uniform transversal pick
    /// per level.
    pub fn random_element<R: RngCore + ?Sized>(&self, rng: &mut R) -> Perm {
        let mut g = self.identity();
        let mut scratch = self.identity();
        for lv in self.0.chain.levels.iter().rev() {
            let i = uniform_index(rng, lv.orbit.len() as u64) as usize;
            g.compose_into(&lv.reps[i], &mut scratch);
            core::mem::swap(&mut g, &mut scratch);
        }
        g
    }

    /// Canonical representative of the right coset `self * x`: the element
    /// whose base images are lexicographically least.
    pub fn coset_canonical(&self, x: &Perm) -> Perm {
        let mut y = x.clone();
        for lv in &self.0.chain.levels {
            let best = (0..lv.orbit.len())
                .min_by_key(|&i| y.apply(lv.orbit[i]))
                .expect("orbits are nonempty");
            y = lv.reps[best].compose(&y);
        }
        y
    }

    /// `⟨self, extra⟩`.
    pub fn join(&self, extra: &[Perm]) -> Result<GroupHandle> {
        let mut b = GroupBuilder::from_group(self);
        for g in extra {
            b.push(g)?;
        }
        Ok(b.finish())
    }

    pub fn conjugate(&self, h: &Perm) -> Result<GroupHandle> {
        GroupHandle::new(
            self.generators()
                .iter()
                .map(|g| g.conjugate_by(h))
                .collect(),
        )
    }
}

/// Uniform integer in `0..n` by rejection, so no modulo bias.
pub(crate) fn uniform_index<R: RngCore + ?Sized>(rng: &mut R, n: u64) -> u64 {
    debug_assert!(n > 0);
    let zone = u64::MAX - (u64::MAX % n);
    loop {
        let x = rng.next_u64();
        if x < zone {
            return x % n;
        }
    }
}

/// Incremental subgroup construction: push generators, then freeze.
pub struct GroupBuilder {
    degree: usize,
    generators: Vec<Perm>,
    chain: StabChain,
}

impl GroupBuilder {
    pub fn new(degree: usize) -> Self {
        GroupBuilder {
            degree,
            generators: Vec::new(),
            chain: StabChain::empty(degree),
        }
    }

    pub fn from_group(g: &GroupHandle) -> Self {
        GroupBuilder {
            degree: g.degree(),
            generators: g.generators().to_vec(),
            chain: g.0.chain.clone(),
        }
    }

    /// Adds `g`; returns whether the group grew.
    pub fn push(&mut self, g: &Perm) -> Result<bool> {
        if g.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: g.degree(),
            });
        }
        Ok(self.push_unchecked(g))
    }

    fn push_unchecked(&mut self, g: &Perm) -> bool {
        let grew = self.chain.extend(g);
        if grew {
            self.generators.push(g.clone());
        }
        grew
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.chain.contains(g)
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn order(&self) -> BigUint {
        self.chain.order()
    }

    pub fn finish(mut self) -> GroupHandle {
        if self.generators.is_empty() {
            self.generators.push(Perm::identity(self.degree));
        }
        let gens = core::mem::take(&mut self.generators);
        self.finish_with_generators(gens)
    }

    fn finish_with_generators(self, generators: Vec<Perm>) -> GroupHandle {
        let order = self.chain.order();
        GroupHandle(Arc::new(Inner {
            degree: self.degree,
            generators,
            chain: self.chain,
            order,
            structure: None,
        }))
    }
}

/// Iterator over all elements, in rank order.
pub struct Elements<'a> {
    group: &'a GroupHandle,
    idx: Vec<usize>,
    /// `partial[l] = u_{k-1} * … * u_l`; `partial[k]` is the identity.
    partial: Vec<Perm>,
    done: bool,
}

impl<'a> Elements<'a> {
    fn new(group: &'a GroupHandle) -> Self {
        let levels = &group.0.chain.levels;
        let k = levels.len();
        let partial = vec![group.identity(); k + 1];
        Elements {
            group,
            idx: vec![0; k],
            partial,
            done: false,
        }
    }
}

impl Iterator for Elements<'_> {
    type Item = Perm;

    fn next(&mut self) -> Option<Perm> {
        if self.done {
            return None;
        }
        let out = self.partial[0].clone();
        let levels = &self.group.0.chain.levels;
        let k = levels.len();
        let mut l = 0;
        loop {
            if l == k {
                self.done = true;
                return Some(out);
            }
            self.idx[l] += 1;
            if self.idx[l] < levels[l].orbit.len() {
                break;
            }
            self.idx[l] = 0;
            l += 1;
        }
        for m in (0..=l).rev() {
            let (lo, hi) = self.partial.split_at_mut(m + 1);
            hi[0].compose_into(&levels[m].reps[self.idx[m]], &mut lo[m]);
        }
        Some(out)
    }
}
