//! Exact counting of p-elements, Sylow data, pairwise p-generation, chief
//! factor weights and the Monte Carlo estimator.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{big_is_prime_power_of, is_prime, p_part, ratio, Rational};
use crate::classical::LabeledCoset;
use crate::error::{cap_exceeded, Error, Result};
use crate::group::{GroupBuilder, GroupHandle, Limits, Structure};
use crate::perm::Perm;
use crate::quotients::{chief_series, o_p, quotient_by};

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// Exact count of p-elements in a group or coset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub group: String,
    pub prime: u64,
    pub order: BigUint,
    pub count: BigUint,
    pub probability: Rational,
    /// Per-coset counts `(representative, count)` when requested.
    pub cosets: Option<Vec<(Perm, BigUint)>>,
}

impl CensusReport {
    fn new(prime: u64, order: BigUint, count: BigUint) -> Self {
        let probability = Rational::new(count.clone(), order.clone());
        CensusReport {
            group: String::new(),
            prime,
            order,
            count,
            probability,
            cosets: None,
        }
    }

    pub fn labeled(mut self, group: impl Into<String>) -> Self {
        self.group = group.into();
        self
    }
}

fn count_p_elements(it: impl Iterator<Item = Perm>, p: u64) -> BigUint {
    BigUint::from(it.filter(|x| x.is_p_element_unchecked(p)).count())
}

/// Number of p-elements of `g`, counted componentwise for direct and
/// subdirect powers and by enumeration otherwise.
fn p_count(g: &GroupHandle, p: u64, limits: &Limits) -> Result<BigUint> {
    match g.structure() {
        Some(Structure::DirectPower { base, t }) => {
            Ok(num_traits::pow(p_count(base, p, limits)?, *t as usize))
        }
        Some(Structure::Subdirect { top, socle, t }) => {
            let inner = p_count(socle, p, limits)?;
            let outer = p_count(top, p, limits)? - &inner;
            Ok(num_traits::pow(inner, *t as usize) + num_traits::pow(outer, *t as usize))
        }
        None => Ok(count_p_elements(g.elements(limits.enumeration)?, p)),
    }
}

pub fn p_census(g: &GroupHandle, p: u64, limits: &Limits) -> Result<CensusReport> {
    check_prime(p)?;
    Ok(CensusReport::new(p, g.order().clone(), p_count(g, p, limits)?))
}

/// [`p_census`] by listing every element, ignoring structural shortcuts.
pub fn p_census_enumerated(g: &GroupHandle, p: u64, limits: &Limits) -> Result<CensusReport> {
    check_prime(p)?;
    let count = count_p_elements(g.elements(limits.enumeration)?, p);
    Ok(CensusReport::new(p, g.order().clone(), count))
}

pub fn coset_p_census(c: &LabeledCoset, p: u64, limits: &Limits) -> Result<CensusReport> {
    check_prime(p)?;
    let count = count_p_elements(c.elements(limits.enumeration)?, p);
    Ok(CensusReport::new(p, c.size().clone(), count))
}

/// Census of `g` with the per-coset breakdown over the normal subgroup `n`.
pub fn p_census_by_cosets(
    g: &GroupHandle,
    n: &GroupHandle,
    p: u64,
    limits: &Limits,
) -> Result<CensusReport> {
    check_prime(p)?;
    let q = quotient_by(g, n, limits)?;
    let mut total = BigUint::zero();
    let mut cosets = Vec::with_capacity(q.index());
    for rep in q.coset_reps() {
        let c = LabeledCoset::new(g.clone(), n.clone(), rep.clone())?;
        let count = coset_p_census(&c, p, limits)?.count;
        total += &count;
        cosets.push((rep.clone(), count));
    }
    let mut report = CensusReport::new(p, g.order().clone(), total);
    report.cosets = Some(cosets);
    Ok(report)
}

fn normalizes(x: &Perm, h: &GroupHandle) -> bool {
    h.generators().iter().all(|a| h.has(&a.conjugate_by(x)))
}

/// A Sylow p-subgroup by normalizer ascent: starting from the trivial
/// group, repeatedly adjoin the first p-element (in enumeration order) that
/// normalizes the current p-subgroup without lying in it.
pub fn sylow(g: &GroupHandle, p: u64, limits: &Limits) -> Result<GroupHandle> {
    check_prime(p)?;
    if (g.order() % p).is_zero() {
        let target = p_part(g.order(), p);
        let mut current = GroupHandle::trivial(g.degree());
        while current.order() < &target {
            let x = g
                .elements(limits.enumeration)?
                .find(|x| {
                    x.is_p_element_unchecked(p) && !current.has(x) && normalizes(x, &current)
                })
                .expect("a p-subgroup below the Sylow order has a p-element in its normalizer");
            current = current.join(&[x])?;
        }
        Ok(current)
    } else {
        Err(Error::PrimeNotDividing(p))
    }
}

/// `N_G(H)` by a full scan of `G`.
pub fn normalizer(g: &GroupHandle, h: &GroupHandle, limits: &Limits) -> Result<GroupHandle> {
    if g.order() > &BigUint::from(limits.normalizer) {
        return Err(cap_exceeded("normalizer scan", g.order(), limits.normalizer));
    }
    let mut b = GroupBuilder::new(g.degree());
    if h.is_subgroup_of(g) {
        for x in h.generators() {
            b.push(x)?;
        }
    }
    for x in g.elements(limits.normalizer)? {
        if &b.order() == g.order() {
            break;
        }
        if !b.contains(&x) && normalizes(&x, h) {
            b.push(&x)?;
        }
    }
    Ok(b.finish())
}

/// Data behind the bound `P_p(G) <= |P| / |N_G(P)|`.
#[derive(Debug, Clone)]
pub struct SylowBound {
    pub census: CensusReport,
    pub sylow_order: BigUint,
    pub normalizer_order: BigUint,
    pub bound: Rational,
    pub holds: bool,
}

pub fn sylow_bound(g: &GroupHandle, p: u64, limits: &Limits) -> Result<SylowBound> {
    let census = p_census(g, p, limits)?;
    let s = sylow(g, p, limits)?;
    let n = normalizer(g, &s, limits)?;
    let bound = Rational::new(s.order().clone(), n.order().clone());
    let holds = census.probability <= bound;
    Ok(SylowBound {
        census,
        sylow_order: s.order().clone(),
        normalizer_order: n.order().clone(),
        bound,
        holds,
    })
}

/// Counts of partners `y` with `⟨g, y⟩` a p-group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairReport {
    pub group: String,
    pub prime: u64,
    pub element: Option<Perm>,
    pub count: BigUint,
    /// `|G|` for a fixed element, `|G|^2` for the pair probability.
    pub total: BigUint,
    pub probability: Rational,
}

impl PairReport {
    pub fn labeled(mut self, group: impl Into<String>) -> Self {
        self.group = group.into();
        self
    }
}

/// Whether `⟨gens⟩` is a p-group.
pub fn generates_p_group(gens: &[Perm], p: u64) -> bool {
    if !gens.iter().all(|g| g.is_p_element_unchecked(p)) {
        return false;
    }
    let Some(first) = gens.first() else {
        return true;
    };
    let mut b = GroupBuilder::new(first.degree());
    for g in gens {
        b.push(g).expect("equal degrees");
        if !big_is_prime_power_of(&b.order(), p) {
            return false;
        }
    }
    true
}

fn check_pair_cap(g: &GroupHandle, limits: &Limits) -> Result<()> {
    if g.order() > &BigUint::from(limits.pairs) {
        return Err(cap_exceeded("pair scan", g.order(), limits.pairs));
    }
    Ok(())
}

/// `Ω_p(g, G)` as a membership mask indexed by rank.
fn omega_pair_mask(g: &GroupHandle, x: &Perm, p: u64, limits: &Limits) -> Result<Vec<bool>> {
    check_pair_cap(g, limits)?;
    let all: Vec<Perm> = g.elements(limits.pairs)?.collect();
    if !x.is_p_element_unchecked(p) {
        return Ok(vec![false; all.len()]);
    }
    Ok(all
        .iter()
        .map(|y| {
            y.is_p_element_unchecked(p)
                && x.compose(y).is_p_element_unchecked(p)
                && generates_p_group(&[x.clone(), y.clone()], p)
        })
        .collect())
}

/// The elements of `Ω_p(g, G)`, in enumeration order.
pub fn omega_pair_elements(g: &GroupHandle, x: &Perm, p: u64, limits: &Limits) -> Result<Vec<Perm>> {
    check_prime(p)?;
    if !g.contains(x)? {
        return Err(Error::NotMember);
    }
    let mask = omega_pair_mask(g, x, p, limits)?;
    Ok(g
        .elements(limits.pairs)?
        .zip(mask)
        .filter_map(|(y, keep)| keep.then_some(y))
        .collect())
}

pub fn omega_pair_set(g: &GroupHandle, x: &Perm, p: u64, limits: &Limits) -> Result<PairReport> {
    let count = BigUint::from(omega_pair_elements(g, x, p, limits)?.len());
    Ok(PairReport {
        group: String::new(),
        prime: p,
        element: Some(x.clone()),
        probability: Rational::new(count.clone(), g.order().clone()),
        count,
        total: g.order().clone(),
    })
}

/// `P_p(G,G) = Σ_{g ∈ Ω_p(G)} |Ω_p(g,G)| / |G|^2`.
pub fn pair_probability(g: &GroupHandle, p: u64, limits: &Limits) -> Result<PairReport> {
    check_prime(p)?;
    check_pair_cap(g, limits)?;
    let mut count = BigUint::zero();
    for x in g.elements(limits.pairs)? {
        if x.is_p_element_unchecked(p) {
            count += omega_pair_mask(g, &x, p, limits)?
                .iter()
                .filter(|&&b| b)
                .count();
        }
    }
    let total = g.order() * g.order();
    Ok(PairReport {
        group: String::new(),
        prime: p,
        element: None,
        probability: Rational::new(count.clone(), total.clone()),
        count,
        total,
    })
}

/// Number of abelian chief factors of order prime to `p` that `x` does not
/// centralize, over one chief series.
pub fn omega_weight(g: &GroupHandle, x: &Perm, p: u64, limits: &Limits) -> Result<usize> {
    check_prime(p)?;
    if !g.contains(x)? {
        return Err(Error::NotMember);
    }
    if !x.is_p_element_unchecked(p) {
        return Err(Error::InvalidParameter("weight needs a p-element".into()));
    }
    Ok(chief_series(g, limits)?
        .iter()
        .filter(|s| s.is_abelian && s.is_p_coprime(p) && !s.centralized_by(x))
        .count())
}

/// `⋂_{g ∈ Ω_p(G)} Ω_p(g, G)` compared against `O_p(G)`.
#[derive(Debug, Clone)]
pub struct BaerReport {
    pub intersection: GroupHandle,
    pub o_p: GroupHandle,
    pub equals_o_p: bool,
    /// `|intersection| / |G|`.
    pub measure: Rational,
}

pub fn baer_intersection(g: &GroupHandle, p: u64, limits: &Limits) -> Result<BaerReport> {
    check_prime(p)?;
    check_pair_cap(g, limits)?;
    let all: Vec<Perm> = g.elements(limits.pairs)?.collect();
    let mut keep = vec![true; all.len()];
    for x in all.iter().filter(|x| x.is_p_element_unchecked(p)) {
        let mask = omega_pair_mask(g, x, p, limits)?;
        for (k, m) in keep.iter_mut().zip(mask) {
            *k &= m;
        }
    }
    let members: Vec<&Perm> = all.iter().zip(&keep).filter_map(|(x, &k)| k.then_some(x)).collect();
    let mut b = GroupBuilder::new(g.degree());
    for x in &members {
        b.push(x)?;
    }
    let intersection = b.finish();
    let is_subgroup = intersection.order() == &BigUint::from(members.len());
    let op = o_p(g, p, limits)?;
    let equals_o_p = is_subgroup && intersection.same_group(&op);
    Ok(BaerReport {
        measure: Rational::new(BigUint::from(members.len()), g.order().clone()),
        intersection,
        o_p: op,
        equals_o_p,
    })
}

/// 2-element ratios of the cosets of `S` in `overgroup`.
#[derive(Debug, Clone)]
pub struct GammaReport {
    pub identity_ratio: Rational,
    /// `(coset representative, ratio)` for each nontrivial coset.
    pub outer: Vec<(Perm, Rational)>,
    /// Largest nontrivial-coset ratio; `None` when `S = overgroup`.
    pub outer_max: Option<Rational>,
}

pub fn gamma_simple(s: &GroupHandle, overgroup: &GroupHandle, limits: &Limits) -> Result<GammaReport> {
    let q = quotient_by(overgroup, s, limits)?;
    let identity_ratio = p_census(s, 2, limits)?.probability;
    let mut outer = Vec::new();
    for rep in &q.coset_reps()[1..] {
        let c = LabeledCoset::new(overgroup.clone(), s.clone(), rep.clone())?;
        outer.push((rep.clone(), coset_p_census(&c, 2, limits)?.probability));
    }
    let outer_max = outer.iter().map(|(_, r)| r.clone()).max();
    Ok(GammaReport {
        identity_ratio,
        outer,
        outer_max,
    })
}

/// Exact 2-element proportions in `S_n`, `A_n` and `S_n ∖ A_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnProportion {
    pub n: u32,
    pub even_count: BigUint,
    pub odd_count: BigUint,
    pub symmetric: Rational,
    pub alternating: Rational,
    pub odd_coset: Rational,
}

/// Sums `n! / ∏ (c_j! j^{c_j})` over cycle types whose parts are powers of 2.
pub fn sn_two_proportion(n: u32) -> Result<SnProportion> {
    if !(2..=60).contains(&n) {
        return Err(Error::InvalidParameter(alloc::format!(
            "n must lie in 2..=60, got {n}"
        )));
    }
    let factorial = |m: u32| (1..=m).fold(BigUint::one(), |acc, i| acc * i);
    let parts: Vec<u32> = (0..).map(|e| 1u32 << e).take_while(|&j| j <= n).collect();
    let n_fact = factorial(n);
    let mut even = BigUint::zero();
    let mut odd = BigUint::zero();
    // (index of next part size, remaining points, denominator, #even cycles)
    let mut stack = vec![(0usize, n, BigUint::one(), 0u32)];
    while let Some((i, rest, denom, even_cycles)) = stack.pop() {
        if rest == 0 {
            let count = &n_fact / &denom;
            if even_cycles % 2 == 0 {
                even += count;
            } else {
                odd += count;
            }
            continue;
        }
        if i == parts.len() {
            continue;
        }
        let j = parts[i];
        let mut c = 0u32;
        while c * j <= rest {
            let d = &denom * factorial(c) * num_traits::pow(BigUint::from(j), c as usize);
            let ev = even_cycles + if j % 2 == 0 { c } else { 0 };
            stack.push((i + 1, rest - c * j, d, ev));
            c += 1;
        }
    }
    let half = &n_fact / 2u32;
    Ok(SnProportion {
        n,
        symmetric: Rational::new(&even + &odd, n_fact),
        alternating: Rational::new(even.clone(), half.clone()),
        odd_coset: Rational::new(odd.clone(), half),
        even_count: even,
        odd_count: odd,
    })
}

/// A proportion estimate with its 95% Wilson interval.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateReport {
    pub prime: u64,
    pub samples: u64,
    pub hits: u64,
    pub seed: u64,
    pub estimate: f64,
    pub low: f64,
    pub high: f64,
}

impl EstimateReport {
    pub fn contains(&self, x: f64) -> bool {
        self.low <= x && x <= self.high
    }

    pub fn contains_exact(&self, x: &Rational) -> bool {
        let v = x.numer().to_f64().unwrap_or(f64::NAN) / x.denom().to_f64().unwrap_or(f64::NAN);
        self.contains(v)
    }
}

/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

/// Wilson score interval for `hits` successes out of `n`.
pub fn wilson_interval(hits: u64, n: u64) -> (f64, f64) {
    let n_f = n as f64;
    let phat = hits as f64 / n_f;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n_f;
    let center = (phat + z2 / (2.0 * n_f)) / denom;
    let half = Z95 * libm::sqrt(phat * (1.0 - phat) / n_f + z2 / (4.0 * n_f * n_f)) / denom;
    // the exact endpoints at 0 and n hits are 0 and 1
    let low = if hits == 0 { 0.0 } else { (center - half).max(0.0) };
    let high = if hits == n { 1.0 } else { (center + half).min(1.0) };
    (low, high)
}

/// What the estimator samples from.
#[derive(Debug, Clone, Copy)]
pub enum SampleTarget<'a> {
    Group(&'a GroupHandle),
    Coset(&'a LabeledCoset),
}

/// Seed for worker `index` derived from `root` (SplitMix64 finalizer).
pub fn derive_seed(root: u64, index: u64) -> u64 {
    let mut z = root.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn mc_estimate(target: SampleTarget<'_>, p: u64, samples: u64, seed: u64) -> Result<EstimateReport> {
    check_prime(p)?;
    if samples == 0 {
        return Err(Error::InvalidParameter("samples must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0u64;
    for _ in 0..samples {
        let x = match target {
            SampleTarget::Group(g) => g.random_element(&mut rng),
            SampleTarget::Coset(c) => c.rep.compose(&c.socle.random_element(&mut rng)),
        };
        if x.is_p_element_unchecked(p) {
            hits += 1;
        }
    }
    let (low, high) = wilson_interval(hits, samples);
    Ok(EstimateReport {
        prime: p,
        samples,
        hits,
        seed,
        estimate: hits as f64 / samples as f64,
        low,
        high,
    })
}

/// `p/(2(p-1)) · P_p(G/N)`, the right-hand side of the non-solvable bound.
pub fn podd_bound(p: u64, quotient_probability: &Rational) -> Rational {
    ratio(p, 2 * (p - 1)) * quotient_probability
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{m10, outer_coset, psl_frobenius, OuterKind};
    use crate::constructions::{alternating, direct_power, subdirect_x_t, symmetric};
    use crate::quotients::normal_closure;

    fn p(n: usize, s: &str) -> Perm {
        Perm::parse_cycles(n, s).unwrap()
    }

    fn lim() -> Limits {
        Limits::default()
    }

    /// Every pair `(x, y)` tested directly, no filters.
    fn brute_pair_count(g: &GroupHandle, p: u64) -> u64 {
        let all: Vec<Perm> = g.elements(10_000).unwrap().collect();
        let mut n = 0;
        for x in &all {
            for y in &all {
                let mut b = GroupBuilder::new(g.degree());
                b.push(x).unwrap();
                b.push(y).unwrap();
                if big_is_prime_power_of(&b.order(), p) {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn census_examples() {
        let m = m10().unwrap();
        let c = p_census(&m.group, 2, &lim()).unwrap();
        assert_eq!((c.count, c.probability), (BigUint::from(496u32), ratio(31u32, 45u32)));
        let c = p_census(&symmetric(4).unwrap(), 2, &lim()).unwrap();
        assert_eq!(c.probability, ratio(16u32, 24u32));
        let c = p_census(&alternating(5).unwrap(), 3, &lim()).unwrap();
        assert_eq!(c.count, BigUint::from(21u32));
        assert_eq!(p_census(&m.group, 4, &lim()).unwrap_err(), Error::NotPrime(4));
    }

    #[test]
    fn structural_counts_match_enumeration() {
        let m = m10().unwrap();
        let x2 = subdirect_x_t(&m.group, &m.socle, 2).unwrap();
        let fast = p_census(&x2, 2, &lim()).unwrap();
        let slow = p_census_enumerated(&x2, 2, &lim()).unwrap();
        assert_eq!(fast, slow);
        assert_eq!(fast.count, BigUint::from(136u32 * 136 + 360 * 360));
        let a6 = alternating(6).unwrap();
        let sq = direct_power(&a6, 2).unwrap();
        assert_eq!(p_census(&sq, 2, &lim()).unwrap().count, BigUint::from(136u32 * 136));
    }

    #[test]
    fn coset_census_examples() {
        let c = outer_coset(OuterKind::Frob, 27).unwrap();
        let r = coset_p_census(&c, 3, &lim()).unwrap();
        assert_eq!(r.count, BigUint::from(7371u32));
        assert_eq!(r.probability, ratio(3u32, 4u32));
        let m = m10().unwrap();
        let c = LabeledCoset::new(m.group.clone(), m.socle.clone(), m.outer.clone()).unwrap();
        assert_eq!(coset_p_census(&c, 2, &lim()).unwrap().count, BigUint::from(360u32));
        let s5 = symmetric(5).unwrap();
        let c = LabeledCoset::new(s5, alternating(5).unwrap(), p(5, "(0 1)")).unwrap();
        assert!(coset_p_census(&c, 3, &lim()).unwrap().count.is_zero());
    }

    #[test]
    fn coset_partition_identity() {
        let m = m10().unwrap();
        let by = p_census_by_cosets(&m.group, &m.socle, 2, &lim()).unwrap();
        assert_eq!(by.count, BigUint::from(496u32));
        assert_eq!(by.cosets.unwrap().len(), 2);
    }

    #[test]
    fn sylow_examples() {
        let s4 = symmetric(4).unwrap();
        let s = sylow(&s4, 2, &lim()).unwrap();
        assert_eq!(s.order(), &BigUint::from(8u32));
        assert_eq!(normalizer(&s4, &s, &lim()).unwrap().order(), &BigUint::from(8u32));
        let m = m10().unwrap();
        assert_eq!(sylow(&m.group, 2, &lim()).unwrap().order(), &BigUint::from(16u32));
        assert_eq!(sylow(&s4, 5, &lim()).unwrap_err(), Error::PrimeNotDividing(5));
    }

    #[test]
    fn psl27_sylow_is_elementary_abelian() {
        let psl = crate::classical::classical_group(crate::ClassicalKind::Psl2, 27).unwrap();
        let s = sylow(&psl, 3, &lim()).unwrap();
        assert_eq!(s.order(), &BigUint::from(27u32));
        let all: Vec<Perm> = s.elements(100).unwrap().collect();
        assert!(all.iter().all(|x| x.pow(3).is_identity()));
        assert!(all.iter().all(|x| all.iter().all(|y| x.compose(y) == y.compose(x))));
    }

    #[test]
    fn normalizer_of_normal_subgroup_is_everything() {
        let s3 = symmetric(3).unwrap();
        let c3 = GroupHandle::new(alloc::vec![p(3, "(0 1 2)")]).unwrap();
        assert!(normalizer(&s3, &c3, &lim()).unwrap().same_group(&s3));
    }

    #[test]
    fn sylow_three_self_normalizing_with_frobenius() {
        let g = psl_frobenius(27).unwrap();
        assert_eq!(g.order(), &BigUint::from(29484u32));
        let s = sylow(&g, 3, &lim()).unwrap();
        assert_eq!(s.order(), &BigUint::from(81u32));
        assert!(normalizer(&g, &s, &lim()).unwrap().same_group(&s));
    }

    #[test]
    fn pgammal27_normalizers() {
        let g = crate::classical::classical_group(crate::ClassicalKind::PGammaL2, 27).unwrap();
        let s = sylow(&g, 3, &lim()).unwrap();
        let n = normalizer(&g, &s, &lim()).unwrap();
        assert_eq!((s.order(), n.order()), (&BigUint::from(81u32), &BigUint::from(162u32)));
        // elementwise oracle: x with s^x ⊆ s for every element s
        let members: Vec<Perm> = s.elements(100).unwrap().collect();
        let brute = g
            .elements(100_000)
            .unwrap()
            .filter(|x| members.iter().all(|m| s.has(&m.conjugate_by(x))))
            .count();
        assert_eq!(brute, 162);
        let h = psl_frobenius(27).unwrap();
        let psl = crate::classical::classical_group(crate::ClassicalKind::Psl2, 27).unwrap();
        let u = sylow(&psl, 3, &lim()).unwrap();
        assert_eq!(normalizer(&h, &u, &lim()).unwrap().order(), &BigUint::from(1053u32));
    }

    #[test]
    fn sylow_bound_examples() {
        let b = sylow_bound(&symmetric(4).unwrap(), 2, &lim()).unwrap();
        assert!(b.holds && b.bound == Rational::one());
        let b = sylow_bound(&alternating(5).unwrap(), 3, &lim()).unwrap();
        assert_eq!(b.normalizer_order, BigUint::from(6u32));
        assert_eq!(b.census.probability, ratio(7u32, 20u32));
        assert!(b.holds);
        let d8 = sylow(&symmetric(4).unwrap(), 2, &lim()).unwrap();
        let b = sylow_bound(&d8, 2, &lim()).unwrap();
        assert!(b.holds && b.census.probability == Rational::one());
    }

    #[test]
    fn omega_pair_examples() {
        let s3 = symmetric(3).unwrap();
        let r = omega_pair_set(&s3, &p(3, "(0 1)"), 2, &lim()).unwrap();
        assert_eq!(r.probability, ratio(1u32, 3u32));
        let a4 = alternating(4).unwrap();
        let r = omega_pair_set(&a4, &p(4, "(0 1 2)"), 3, &lim()).unwrap();
        assert_eq!(r.probability, ratio(1u32, 4u32));
        let s4 = symmetric(4).unwrap();
        let r = omega_pair_set(&s4, &s4.identity(), 2, &lim()).unwrap();
        assert_eq!(r.probability, p_census(&s4, 2, &lim()).unwrap().probability);
        let r = omega_pair_set(&s3, &p(3, "(0 1 2)"), 2, &lim()).unwrap();
        assert!(r.count.is_zero());
    }

    #[test]
    fn pair_probability_examples() {
        let s3 = symmetric(3).unwrap();
        assert_eq!(pair_probability(&s3, 2, &lim()).unwrap().probability, ratio(5u32, 18u32));
        assert_eq!(pair_probability(&s3, 3, &lim()).unwrap().probability, ratio(1u32, 4u32));
        let d8 = sylow(&symmetric(4).unwrap(), 2, &lim()).unwrap();
        assert_eq!(pair_probability(&d8, 2, &lim()).unwrap().probability, Rational::one());
        for (g, q) in [(symmetric(4).unwrap(), 2), (alternating(4).unwrap(), 3)] {
            let r = pair_probability(&g, q, &lim()).unwrap();
            assert_eq!(r.count, BigUint::from(brute_pair_count(&g, q)));
        }
    }

    #[test]
    fn omega_weight_examples() {
        let s3 = symmetric(3).unwrap();
        assert_eq!(omega_weight(&s3, &p(3, "(0 1)"), 2, &lim()).unwrap(), 1);
        let s4 = symmetric(4).unwrap();
        assert_eq!(omega_weight(&s4, &p(4, "(0 1)(2 3)"), 2, &lim()).unwrap(), 0);
        assert_eq!(omega_weight(&s4, &p(4, "(0 1)"), 2, &lim()).unwrap(), 1);
        let d8 = sylow(&s4, 2, &lim()).unwrap();
        for x in d8.elements(10).unwrap() {
            assert_eq!(omega_weight(&d8, &x, 2, &lim()).unwrap(), 0);
        }
        assert!(omega_weight(&s3, &p(3, "(0 1 2)"), 2, &lim()).is_err());
    }

    #[test]
    fn baer_examples() {
        let s4 = symmetric(4).unwrap();
        let b = baer_intersection(&s4, 2, &lim()).unwrap();
        assert!(b.equals_o_p);
        assert_eq!(b.measure, ratio(1u32, 6u32));
        let b = baer_intersection(&symmetric(3).unwrap(), 3, &lim()).unwrap();
        assert!(b.equals_o_p);
        assert_eq!(b.measure, ratio(1u32, 2u32));
        let m = m10().unwrap();
        let b = baer_intersection(&m.group, 2, &lim()).unwrap();
        assert!(b.equals_o_p && b.intersection.is_trivial());
        assert_eq!(b.measure, ratio(1u32, 720u32));
    }

    #[test]
    fn gamma_examples() {
        let m = m10().unwrap();
        let g = gamma_simple(&m.socle, &m.group, &lim()).unwrap();
        assert_eq!(g.outer_max, Some(Rational::one()));
        assert_eq!(g.identity_ratio, ratio(136u32, 360u32));
        let g = gamma_simple(&alternating(5).unwrap(), &symmetric(5).unwrap(), &lim()).unwrap();
        assert_eq!(g.outer_max, Some(ratio(2u32, 3u32)));
        let psl = crate::classical::classical_group(crate::ClassicalKind::Psl2, 7).unwrap();
        let pgl = crate::classical::classical_group(crate::ClassicalKind::Pgl2, 7).unwrap();
        let g = gamma_simple(&psl, &pgl, &lim()).unwrap();
        assert!(g.outer_max.unwrap() < Rational::one());
    }

    #[test]
    fn sn_proportion_examples() {
        assert_eq!(sn_two_proportion(4).unwrap().symmetric, ratio(2u32, 3u32));
        assert_eq!(sn_two_proportion(3).unwrap().symmetric, ratio(2u32, 3u32));
        assert_eq!(sn_two_proportion(6).unwrap().alternating, ratio(136u32, 360u32));
        assert!(sn_two_proportion(61).is_err());
        assert!(sn_two_proportion(60).is_ok());
    }

    #[test]
    fn sn_proportion_matches_enumeration() {
        for n in 2..=7usize {
            let s = symmetric(n).unwrap();
            let a = alternating(n).unwrap();
            let sp = sn_two_proportion(n as u32).unwrap();
            assert_eq!(sp.symmetric, p_census(&s, 2, &lim()).unwrap().probability);
            assert_eq!(sp.alternating, p_census(&a, 2, &lim()).unwrap().probability);
        }
    }

    #[test]
    fn estimates() {
        let m = m10().unwrap();
        let e = mc_estimate(SampleTarget::Group(&m.group), 2, 100_000, 1).unwrap();
        assert!(e.contains_exact(&ratio(496u32, 720u32)));
        let again = mc_estimate(SampleTarget::Group(&m.group), 2, 100_000, 1).unwrap();
        assert_eq!(e, again);
        let d8 = sylow(&symmetric(4).unwrap(), 2, &lim()).unwrap();
        let e = mc_estimate(SampleTarget::Group(&d8), 2, 500, 9).unwrap();
        assert_eq!((e.estimate, e.high), (1.0, 1.0));
        assert!(mc_estimate(SampleTarget::Group(&d8), 2, 0, 9).is_err());
    }

    #[test]
    fn wilson_interval_is_inside_unit_interval() {
        for (k, n) in [(0, 10), (10, 10), (3, 10), (1, 1)] {
            let (lo, hi) = wilson_interval(k, n);
            assert!(0.0 <= lo && lo <= hi && hi <= 1.0);
        }
        assert_eq!(wilson_interval(0, 10).0, 0.0);
        assert_eq!(wilson_interval(10, 10).1, 1.0);
    }

    #[test]
    fn normal_closure_feeds_quotient() {
        let s4 = symmetric(4).unwrap();
        let v4 = normal_closure(&s4, &[p(4, "(0 1)(2 3)")]).unwrap();
        let by = p_census_by_cosets(&s4, &v4, 2, &lim()).unwrap();
        assert_eq!(by.count, BigUint::from(16u32));
    }
}

