use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use strata_core::acyccat::{random_category, EnrichedCat};
use strata_core::exitpath::{cover, inner_horns, is_exit_simplex, ExitSimplex};
use strata_core::morse::{
    classify_flow, flow_category, has_closed_vpath, hasse_cycle, morse_complex, random_acyclic_matching, Matching, MorseError,
};
use strata_core::poset::face_poset;
use strata_core::simpset::{cone, find_isomorphism, homology, join, product, standard_simplex, ChainComplex};
use strata_core::stellar::{
    lower_star, roundtrip, salvetti_check, unstable_stratification, upper_star, verify_stratum_equals_star, Side,
};
use strata_core::strat::{implications_harness, join_law, random_labelled_complex, simplicial_stratification};
use strata_core::{AcycCat, FinPoset, RegComplex, Simplex};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn simplicial_identities_and_boundary_squared(seed in any::<u64>()) {
        let x = random_labelled_complex(&mut rng(seed), 30);
        prop_assert!(x.space().validate().is_ok());
        let cc = ChainComplex::normalized(x.space());
        prop_assert!(cc.is_complex());
        let h = homology(x.space());
        prop_assert_eq!(h.rational_euler(), x.space().euler_characteristic());
    }

    #[test]
    fn cone_is_contractible(seed in any::<u64>()) {
        let x = random_labelled_complex(&mut rng(seed), 20);
        let (c, _) = cone(x.space());
        prop_assert!(homology(&c).is_point());
        prop_assert!(c.validate().is_ok());
    }

    #[test]
    fn join_euler_law(a in any::<u64>(), b in any::<u64>()) {
        let x = random_labelled_complex(&mut rng(a), 12);
        let y = random_labelled_complex(&mut rng(b), 12);
        let (j, _) = join(x.space(), y.space());
        let reduced = |e: i64| e - 1;
        prop_assert_eq!(
            reduced(j.euler_characteristic()),
            -reduced(x.space().euler_characteristic()) * reduced(y.space().euler_characteristic())
        );
        prop_assert!(ChainComplex::normalized(&j).is_complex());
    }

    #[test]
    fn product_is_unital(seed in any::<u64>()) {
        let x = random_labelled_complex(&mut rng(seed), 15);
        let (p, _) = product(x.space(), &standard_simplex(0));
        prop_assert!(find_isomorphism(&p, x.space()).is_some());
    }

    #[test]
    fn order_complex_counts(seed in any::<u64>(), n in 1usize..=8) {
        let p = FinPoset::random(n, 0.35, &mut rng(seed));
        let (oc, _) = p.order_complex();
        let chains = p.chains();
        let alternating: i64 = chains.iter().enumerate().map(|(k, c)| if k % 2 == 0 { c.len() as i64 } else { -(c.len() as i64) }).sum();
        prop_assert_eq!(oc.euler_characteristic(), alternating);
        let longest = (0..p.len()).map(|x| p.height(x)).max().unwrap();
        prop_assert_eq!(oc.dim(), Some(longest));
        // BC of a poset is its order complex
        let (bc, _) = AcycCat::from_poset(&p).classifying_space();
        prop_assert!(find_isomorphism(&bc, &oc).is_some());
    }

    #[test]
    fn face_poset_of_order_complex_is_chain_poset(seed in any::<u64>(), n in 1usize..=6) {
        let p = FinPoset::random(n, 0.4, &mut rng(seed));
        let (oc, _) = p.order_complex();
        let (fp, _) = face_poset(&simplicial_stratification(&oc)).unwrap();
        let chains: Vec<Vec<usize>> = p.chains().into_iter().flatten().collect();
        let subset = |a: &Vec<usize>, b: &Vec<usize>| a.iter().all(|x| b.contains(x));
        let mut rels = Vec::new();
        for (i, a) in chains.iter().enumerate() {
            for (j, b) in chains.iter().enumerate() {
                if i != j && subset(a, b) {
                    rels.push((i, j));
                }
            }
        }
        let names = (0..chains.len()).map(|i| format!("c{i}")).collect();
        let chain_poset = FinPoset::from_relations(names, &rels).unwrap();
        prop_assert!(fp.isomorphism(&chain_poset).is_some());
    }

    #[test]
    fn nerve_counts_match_brute_force(seed in any::<u64>()) {
        let c = random_category(&mut rng(seed));
        let (bc, _) = c.classifying_space();
        // k-chains of non-identity arrows, by depth-first extension
        let n = c.objects().len();
        let mut chains: Vec<Vec<usize>> = (0..c.arrows().len()).map(|a| vec![a]).collect();
        let mut by_length = vec![n];
        while !chains.is_empty() {
            by_length.push(chains.len());
            let mut longer = Vec::new();
            for ch in &chains {
                let end = c.arrows()[*ch.last().unwrap()].target;
                for (a, arrow) in c.arrows().iter().enumerate() {
                    if arrow.source == end {
                        let mut e = ch.clone();
                        e.push(a);
                        longer.push(e);
                    }
                }
            }
            chains = longer;
        }
        prop_assert_eq!(bc.f_vector(), by_length);
    }

    #[test]
    fn enriched_tier_agrees_with_discrete(seed in any::<u64>()) {
        let c = random_category(&mut rng(seed));
        let (bc, _) = c.classifying_space();
        let (diag, _) = EnrichedCat::from_discrete(&c).classifying_space().unwrap();
        prop_assert!(find_isomorphism(&bc, &diag).is_some());
    }

    #[test]
    fn join_of_stratifications(a in any::<u64>(), b in any::<u64>()) {
        let x = random_labelled_complex(&mut rng(a), 10);
        let y = random_labelled_complex(&mut rng(b), 10);
        let ok = |s: &strata_core::StratSpace| {
            let r = s.check_conditions();
            r.continuous.pass && r.open.pass
        };
        prop_assume!(ok(&x) && ok(&y));
        let (_, r) = join_law(&x, &y).unwrap();
        prop_assert!(r.stratification);
        prop_assert!(r.pass());
    }

    #[test]
    fn simplicial_stratification_passes_everything(seed in any::<u64>()) {
        let x = random_labelled_complex(&mut rng(seed), 30);
        let s = simplicial_stratification(x.space());
        prop_assert!(s.check_conditions().all_pass());
    }

    #[test]
    fn failing_verdicts_carry_witnesses(seed in any::<u64>()) {
        let x = random_labelled_complex(&mut rng(seed), 12);
        let r = x.check_conditions();
        for (_, v) in r.conditions() {
            prop_assert_eq!(v.pass, v.witness.is_none());
        }
    }

    #[test]
    fn harness_is_clean_and_deterministic(seed in any::<u64>()) {
        let a = implications_harness(40, seed);
        prop_assert!(a.pass(), "{:?}", a.violations);
        prop_assert_eq!(a, implications_harness(40, seed));
    }

    #[test]
    fn stars_and_round_trip(seed in any::<u64>()) {
        let c = random_category(&mut rng(seed));
        for x in 0..c.objects().len() {
            prop_assert!(lower_star(&c, x).unwrap().h_is_isomorphism());
            prop_assert!(upper_star(&c, x).unwrap().h_is_isomorphism());
            prop_assert!(verify_stratum_equals_star(&c, x, Side::Lower).unwrap().pass());
            prop_assert!(verify_stratum_equals_star(&c, x, Side::Upper).unwrap().pass());
        }
        prop_assert!(roundtrip(&c).unwrap().pass());
    }

    #[test]
    fn salvetti_on_random_complexes(seed in any::<u64>()) {
        let x = random_labelled_complex(&mut rng(seed), 25);
        prop_assert!(salvetti_check(x.space()).unwrap().pass());
    }

    #[test]
    fn exit_paths_and_charts(seed in any::<u64>()) {
        let c = random_category(&mut rng(seed));
        let s = unstable_stratification(&c);
        for id in s.space().ids() {
            prop_assert!(is_exit_simplex(&s, &ExitSimplex::from_simplex(&Simplex::nondegenerate(id))).unwrap());
        }
        prop_assert!(cover(&c).unwrap().pass());
    }

    #[test]
    fn morse_homology_and_acyclicity(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_labelled_complex(&mut r, 50);
        let c = RegComplex::from_simplicial(x.space()).unwrap();
        let m = random_acyclic_matching(&c, &mut r);
        prop_assert!(morse_complex(&c, &m).is_ok());
        // arbitrary matchings: both acyclicity tests agree
        let mut covers: Vec<(usize, usize)> = (0..c.len()).flat_map(|b| c.faces(b).iter().map(move |&(a, _)| (a, b))).collect();
        use rand::seq::SliceRandom;
        covers.shuffle(&mut r);
        let mut used = vec![false; c.len()];
        let mut pairs = Vec::new();
        for (a, b) in covers {
            if !used[a] && !used[b] {
                used[a] = true;
                used[b] = true;
                pairs.push((a, b));
            }
        }
        let partner = Matching { pairs }.partners(&c).unwrap();
        prop_assert_eq!(hasse_cycle(&c, &partner).is_some(), has_closed_vpath(&c, &partner));
    }

    #[test]
    fn flow_strata_are_critical_cells(seed in any::<u64>()) {
        let mut r = rng(seed);
        let x = random_labelled_complex(&mut r, 30);
        let c = RegComplex::from_simplicial(x.space()).unwrap();
        let m = random_acyclic_matching(&c, &mut r);
        match flow_category(&c, &m, None) {
            Ok(fc) => {
                let (_, report) = classify_flow(&fc).unwrap();
                prop_assert_eq!(report.strata, m.critical(&c).unwrap().len());
                prop_assert!(report.pass());
            }
            Err(MorseError::MissingHom(..)) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn inner_horns_fill(seed in any::<u64>()) {
        let c = random_category(&mut rng(seed));
        prop_assume!(c.objects().len() <= 4 && (0..c.objects().len()).all(|x| (0..c.objects().len()).all(|y| c.hom(x, y).len() <= 2)));
        let s = unstable_stratification(&c);
        for n in 2..=3 {
            for h in inner_horns(&s, n).unwrap() {
                prop_assert_eq!(h.filled, h.horns);
            }
        }
    }
}
