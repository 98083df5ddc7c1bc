use proptest::prelude::*;

use grpops::covering::{characteristic_subobject, construct_cover, lift_operations};
use grpops::equivalence::{delta_on_covering, eta, iso_delta_eta, iso_eta_delta};
use grpops::internal::check_internal_groupoid;
use grpops::io::generators::{
    gen_cyclic_group, gen_cyclic_ring, gen_dihedral, gen_module, gen_one_object,
    gen_pair_groupoid,
};
use grpops::io::{parse, serialize, Structure};
use grpops::omega::{check_morphism, check_omega_group, enumerate_subobjects, OmegaGroup, OmegaMorphism};
use grpops::xmod::{check_crossed_module, CrossedModule};

fn small_group() -> impl Strategy<Value = OmegaGroup> {
    prop_oneof![
        (1usize..=12).prop_map(gen_cyclic_group),
        (1usize..=12).prop_map(gen_cyclic_ring),
        (1usize..=5).prop_map(gen_dihedral),
        (1usize..=4, 1usize..=6).prop_map(|(m, n)| gen_module(m, n)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generated_groups_pass(g in small_group()) {
        prop_assert!(check_omega_group(&g).is_ok());
    }

    // An associative table with two-sided identity and inverses is a group,
    // so its rows are permutations; changing one entry breaks that.
    #[test]
    fn any_single_change_to_addition_is_caught(n in 2usize..=8, a in 0usize..8, b in 0usize..8, shift in 1usize..8) {
        let (a, b) = (a % n, b % n);
        let g = gen_cyclic_group(n);
        let mut add = g.add_table().clone();
        add.set(a, b, (add.get(a, b) + shift % (n - 1) + 1) % n);
        let broken = OmegaGroup::new("groups", add, g.neg_table().to_vec(), vec![], vec![]).unwrap();
        prop_assert!(!check_omega_group(&broken).is_ok());
    }

    #[test]
    fn scaling_maps(n in 1usize..=12, k in 0usize..12) {
        let k = k % n;
        let (zg, zr) = (gen_cyclic_group(n), gen_cyclic_ring(n));
        let map: Vec<usize> = (0..n).map(|a| k * a % n).collect();
        let fg = OmegaMorphism::new(zg.clone(), zg, map.clone()).unwrap();
        prop_assert!(check_morphism(&fg).unwrap().is_ok());
        // multiplication by k preserves products exactly when k^2 = k
        let fr = OmegaMorphism::new(zr.clone(), zr, map).unwrap();
        prop_assert_eq!(check_morphism(&fr).unwrap().is_ok(), k * k % n == k);
    }

    #[test]
    fn serialization_round_trips(g in small_group(), wrap in 0u8..3) {
        let s = match wrap {
            0 => Structure::from(g),
            1 => Structure::from(gen_one_object(&g)),
            _ => Structure::from(gen_pair_groupoid(&g)),
        };
        let text = serialize(&s);
        let back = parse(&text).unwrap();
        prop_assert_eq!(serialize(&back), text);
        prop_assert_eq!(back, s);
    }

    // One object: the interchange law forces + to be commutative and every
    // product to vanish.
    #[test]
    fn one_object_internal_iff_abelian_with_zero_products(g in small_group()) {
        let zero_products = (0..g.signature().binary_ops().len())
            .all(|op| g.elements().all(|a| g.elements().all(|b| g.binary(op, a, b) == 0)));
        let expected = g.is_abelian() && zero_products;
        prop_assert_eq!(check_internal_groupoid(&gen_one_object(&g)).is_ok(), expected);
    }

    #[test]
    fn pair_groupoids_are_internal_and_round_trip(g in small_group()) {
        prop_assume!(g.order() <= 6);
        let pg = gen_pair_groupoid(&g);
        prop_assert!(check_internal_groupoid(&pg).is_ok());
        prop_assert!(iso_eta_delta(&pg).unwrap().is_ok());
    }

    #[test]
    fn ideal_inclusions(n in 1usize..=12, d in 1usize..=12) {
        prop_assume!(n % d == 0);
        let ideal: Vec<usize> = (0..n).filter(|a| a % d == 0).collect();
        let x = CrossedModule::ideal_inclusion(&gen_cyclic_ring(n), &ideal).unwrap();
        prop_assert!(check_crossed_module(&x).unwrap().is_ok());
        let g = eta(&x).unwrap();
        prop_assert_eq!(g.groupoid().n_morphisms(), n * ideal.len());
        prop_assert!(iso_delta_eta(&x).unwrap().is_ok());
    }

    #[test]
    fn coset_covers_of_cyclic_groups(n in 1usize..=12, d in 1usize..=12) {
        prop_assume!(n % d == 0);
        let s: Vec<usize> = (0..n).filter(|a| a % d == 0).collect();
        let g = gen_one_object(&gen_cyclic_group(n));
        let c = construct_cover(g.groupoid(), &s).unwrap();
        prop_assert_eq!(c.index() * s.len(), n);
        prop_assert_eq!(characteristic_subobject(&c), s.clone());
        let l = lift_operations(&g, &s).unwrap();
        prop_assert!(l.report.is_ok());
        let (m, r) = delta_on_covering(&l.projection).unwrap();
        prop_assert!(r.is_ok());
        prop_assert!(m.kernel_map().is_bijective());
    }

    #[test]
    fn subgroups_of_cyclic_groups_match_divisors(n in 1usize..=12) {
        let subs = enumerate_subobjects(&gen_cyclic_group(n));
        prop_assert_eq!(subs.len(), (1..=n).filter(|d| n % d == 0).count());
    }
}
