//! Property tests over generated instances.

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use shaperec::eval::{is_faithful, is_total};
use shaperec::scl::{fragment_of, well_formed};
use shaperec::semantics::validate_with;
use shaperec::testkit::{fresh_predicate_triple, random_instance, GenConfig, Instance};
use shaperec::{monotone_extension_check, render, translate, SemanticsMode};

fn instance(seed: u64, config: &GenConfig) -> Instance {
    random_instance(&mut ChaCha8Rng::seed_from_u64(seed), config)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn translation_is_well_formed_and_stable(seed in any::<u64>()) {
        let inst = instance(seed, &GenConfig::default());
        let s = translate(&inst.document);
        prop_assert!(well_formed(&s));
        prop_assert_eq!(fragment_of(&s), inst.document.fragment_letters());
        prop_assert_eq!(render(&s), render(&translate(&inst.document.clone())));
    }

    #[test]
    fn witnesses_are_faithful(seed in any::<u64>()) {
        let inst = instance(seed, &GenConfig::default());
        let (g, d) = (&inst.graph, &inst.document);
        for mode in SemanticsMode::ALL {
            if mode == SemanticsMode::Standard && d.is_recursive() {
                continue;
            }
            let r = validate_with(g, d, mode, 12).unwrap();
            if let Some(w) = &r.witness {
                prop_assert!(is_faithful(g, w, d));
                prop_assert!(!mode.is_total() || is_total(w, g, d));
            }
            prop_assert_eq!(r.valid, r.violations.is_empty());
        }
    }

    #[test]
    fn unmentioned_predicates_keep_validity(seed in any::<u64>()) {
        let config = GenConfig { allow_closed: false, max_pairs: 10, ..GenConfig::default() };
        let inst = instance(seed, &config);
        let (g, d) = (&inst.graph, &inst.document);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xF00D);
        let t = fresh_predicate_triple(&mut rng, g, d);
        prop_assert!(monotone_extension_check(g, d, &t));
        let mut bigger = g.clone();
        bigger.insert(t);
        for mode in SemanticsMode::ALL {
            let skip = (mode == SemanticsMode::Standard || mode.is_total()) && d.is_recursive();
            if skip {
                continue;
            }
            let before = validate_with(g, d, mode, 24).unwrap().valid;
            if before {
                prop_assert!(validate_with(&bigger, d, mode, 24).unwrap().valid, "{}", mode);
            }
        }
    }
}
