use num_bigint::BigUint;
use num_traits::{One, Zero};
use pel_core::census::{omega_pair_set, p_census, p_census_by_cosets, wilson_interval};
use pel_core::classical::{m10, outer_coset, OuterKind};
use pel_core::constructions::{alternating, symmetric};
use pel_core::field::FieldSpec;
use pel_core::{GroupHandle, Limits, Perm, Point};
use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n as Point).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

fn perms(n: usize) -> impl Strategy<Value = Vec<Perm>> {
    prop::collection::vec(perm(n), 1..4)
}

fn order_by_powering(p: &Perm) -> u64 {
    let mut x = p.clone();
    let mut k = 1;
    while !x.is_identity() {
        x = x.compose(p);
        k += 1;
    }
    k
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_cancels(p in perm(9)) {
        prop_assert!(p.compose(&p.inverse()).is_identity());
        prop_assert!(p.inverse().compose(&p).is_identity());
    }

    #[test]
    fn order_is_least_power(p in perm(10)) {
        prop_assert_eq!(p.order(), BigUint::from(order_by_powering(&p)));
    }

    #[test]
    fn p_element_iff_order_is_prime_power(p in perm(10), prime in prop::sample::select(vec![2u64, 3, 5, 7])) {
        let mut n = order_by_powering(&p);
        while n % prime == 0 {
            n /= prime;
        }
        prop_assert_eq!(p.is_p_element(prime).unwrap(), n == 1);
    }

    #[test]
    fn cycle_notation_round_trips(p in perm(8)) {
        prop_assert_eq!(Perm::parse_cycles(8, &p.to_string()).unwrap(), p);
    }

    #[test]
    fn chain_invariants(gens in perms(7), seed in any::<u64>()) {
        let g = GroupHandle::new(gens.clone()).unwrap();
        let product: BigUint = g.transversal_sizes().iter().map(|&s| BigUint::from(s)).product();
        prop_assert_eq!(&product, g.order());
        for x in &gens {
            prop_assert!(g.has(x));
        }
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..8 {
            let x = g.random_element(&mut rng);
            prop_assert!(g.has(&x));
            prop_assert!((g.order() % x.order()).is_zero());
            let r = g.rank(&x).unwrap();
            prop_assert_eq!(g.unrank(r).unwrap(), x);
        }
    }

    #[test]
    fn enumeration_matches_order(gens in perms(6)) {
        let g = GroupHandle::new(gens).unwrap();
        let all: std::collections::HashSet<Perm> = g.elements(1000).unwrap().collect();
        prop_assert_eq!(BigUint::from(all.len()), g.order().clone());
    }

    #[test]
    fn coset_canonical_is_constant_on_cosets(x in perm(5), h in perm(5)) {
        let a5 = alternating(5).unwrap();
        if a5.has(&h) {
            prop_assert_eq!(a5.coset_canonical(&h.compose(&x)), a5.coset_canonical(&x));
        } else {
            prop_assert_ne!(a5.coset_canonical(&h.compose(&x)), a5.coset_canonical(&x));
        }
    }

    #[test]
    fn wilson_interval_in_unit_interval(n in 1u64..100_000, frac in 0.0f64..=1.0) {
        let k = ((n as f64) * frac) as u64;
        let (lo, hi) = wilson_interval(k, n);
        prop_assert!(0.0 <= lo && lo <= hi && hi <= 1.0);
        let p = k as f64 / n as f64;
        prop_assert!(lo <= p + 1e-12 && p <= hi + 1e-12);
    }

    #[test]
    fn field_axioms(a in 0u32..81, b in 0u32..81, c in 0u32..81) {
        let f = FieldSpec::new(3, 4).unwrap();
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(a, b), f.slow_mul(a, b));
        if a != 0 {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        prop_assert_eq!(f.frobenius(f.mul(a, b)), f.mul(f.frobenius(a), f.frobenius(b)));
    }

    #[test]
    fn omega_pairs_are_conjugation_equivariant(gi in 0u64..120, hi in 0u64..120) {
        let s5 = symmetric(5).unwrap();
        let g = s5.unrank(gi).unwrap();
        let h = s5.unrank(hi).unwrap();
        let lim = Limits::default();
        for p in [2u64, 3] {
            let a = omega_pair_set(&s5, &g, p, &lim).unwrap();
            let b = omega_pair_set(&s5, &g.conjugate_by(&h), p, &lim).unwrap();
            prop_assert_eq!(a.count, b.count);
        }
    }
}

#[test]
fn census_partitions_over_cosets() {
    let lim = Limits::default();
    let m = m10().unwrap();
    let by = p_census_by_cosets(&m.group, &m.socle, 2, &lim).unwrap();
    let sum: BigUint = by.cosets.as_ref().unwrap().iter().map(|(_, c)| c.clone()).sum();
    assert_eq!(sum, p_census(&m.group, 2, &lim).unwrap().count);

    let c = outer_coset(OuterKind::Frob, 27).unwrap();
    let pgl = pel_core::classical::classical_group(pel_core::ClassicalKind::PGammaL2, 27).unwrap();
    let by = p_census_by_cosets(&pgl, &c.socle, 3, &lim).unwrap();
    assert_eq!(by.cosets.as_ref().unwrap().len(), 6);
    assert_eq!(by.count, p_census(&pgl, 3, &lim).unwrap().count);
}

#[test]
fn p_group_census_is_one() {
    let lim = Limits::default();
    let d8 = GroupHandle::new(vec![
        Perm::parse_cycles(4, "(0 1 2 3)").unwrap(),
        Perm::parse_cycles(4, "(0 2)").unwrap(),
    ])
    .unwrap();
    assert!(p_census(&d8, 2, &lim).unwrap().probability.is_one());
    assert!(!p_census(&symmetric(4).unwrap(), 2, &lim).unwrap().probability.is_one());
}
