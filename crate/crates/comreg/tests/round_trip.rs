use comreg::expr::{parse_and_eval, Alphabet};
use comreg::{json, render};
use comreg_core::dfa::grids_equivalent;
use comreg_core::sample::{random_grid, Family, SampleParams};
use comreg_core::GridAutomaton;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn grid() -> impl Strategy<Value = GridAutomaton> {
    let family = prop_oneof![
        Just(Family::General),
        Just(Family::Group),
        Just(Family::Aperiodic)
    ];
    (any::<u64>(), 1usize..=3, family).prop_map(|(seed, k, f)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        random_grid(&mut rng, k, f, &SampleParams::default())
    })
}

fn alphabet(k: usize) -> Alphabet {
    Alphabet::new(&"abc"[..k]).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rendered_expressions_evaluate_back(g in grid()) {
        let sigma = alphabet(g.alphabet_size());
        let text = render::render(&g, &sigma);
        let back = parse_and_eval(&text, &sigma).unwrap();
        prop_assert!(grids_equivalent(&back, &g).unwrap(), "{}", text);
        prop_assert_eq!(back, g);
    }

    #[test]
    fn json_round_trips(g in grid()) {
        let sigma = alphabet(g.alphabet_size());
        let (back, letters) = json::from_str(&json::to_string(&g, &sigma)).unwrap();
        prop_assert_eq!(back, g);
        prop_assert_eq!(letters, sigma);
    }

    #[test]
    fn operators_match_the_library(a in grid(), b in grid()) {
        prop_assume!(a.alphabet_size() == b.alphabet_size());
        let sigma = alphabet(a.alphabet_size());
        let (ta, tb) = (render::render(&a, &sigma), render::render(&b, &sigma));
        let eval = |t: String| parse_and_eval(&t, &sigma).unwrap();
        prop_assert_eq!(eval(format!("({ta}) <> ({tb})")), a.shuffle(&b).unwrap());
        prop_assert_eq!(eval(format!("({ta}) | ({tb})")), a.union(&b).unwrap());
        prop_assert_eq!(eval(format!("({ta}) & !({tb})")), a.intersection(&b.complement()).unwrap());
        prop_assert_eq!(eval(format!("down({ta})")), a.downward_closure());
        prop_assert_eq!(eval(format!("upint({ta})")), a.upward_interior());
    }
}
