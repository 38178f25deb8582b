use gpat_core::closed_form::catalan;
use gpat_core::enumerate::{distribution, generate_avoiders};
use gpat_core::{GeneralizedPattern, Series, Window};
use num_bigint::BigUint;
use num_rational::BigRational;
use proptest::prelude::*;

fn permutation(max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    (0..=max_len).prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())
}

/// Letters of a random pattern of length 1..=4 and the glue flag before each letter.
fn pattern() -> impl Strategy<Value = (Vec<u32>, Vec<bool>)> {
    (1usize..=4).prop_flat_map(|k| {
        (
            Just((1..=k as u32).collect::<Vec<_>>()).prop_shuffle(),
            proptest::collection::vec(any::<bool>(), k),
        )
    })
}

fn build(letters: &[u32], glue: &[bool]) -> GeneralizedPattern {
    let mut blocks: Vec<Vec<u32>> = Vec::new();
    for (i, &l) in letters.iter().enumerate() {
        match blocks.last_mut() {
            Some(b) if glue[i] => b.push(l),
            _ => blocks.push(vec![l]),
        }
    }
    GeneralizedPattern::from_blocks(&blocks).unwrap()
}

/// Index subsets in increasing order, checked directly.
fn oracle_count(values: &[u32], letters: &[u32], glue: &[bool]) -> u64 {
    fn rec(
        values: &[u32],
        letters: &[u32],
        glue: &[bool],
        chosen: &mut Vec<usize>,
        count: &mut u64,
    ) {
        let j = chosen.len();
        if j == letters.len() {
            let ok = (0..j).all(|a| {
                (0..j).all(|b| (letters[a] < letters[b]) == (values[chosen[a]] < values[chosen[b]]))
            });
            let adjacent = (1..j).all(|a| !glue[a] || chosen[a] == chosen[a - 1] + 1);
            if ok && adjacent {
                *count += 1;
            }
            return;
        }
        let from = chosen.last().map_or(0, |&i| i + 1);
        for i in from..values.len() {
            chosen.push(i);
            rec(values, letters, glue, chosen, count);
            chosen.pop();
        }
    }
    let mut count = 0;
    rec(values, letters, glue, &mut Vec::new(), &mut count);
    count
}

fn random_series(terms: Vec<(usize, usize, i64)>, w: Window) -> Series {
    Series::from_terms(
        terms
            .into_iter()
            .filter(|&(a, b, _)| (a, b) != (0, 0))
            .map(|(a, b, c)| (a, b, BigRational::from_integer(c.into())))
            .chain([(0, 0, BigRational::from_integer(1.into()))]),
        w,
    )
}

proptest! {
    #[test]
    fn occurrence_count_matches_subset_oracle(values in permutation(8), (letters, glue) in pattern()) {
        let pat = build(&letters, &glue);
        prop_assert_eq!(pat.count_in(&values), oracle_count(&values, &letters, &glue));
    }

    #[test]
    fn gluing_never_adds_occurrences(values in permutation(8), (letters, glue) in pattern(), j in 1usize..4) {
        let pat = build(&letters, &glue);
        if let Some(tighter) = pat.glue_at(j) {
            prop_assert!(tighter.count_in(&values) <= pat.count_in(&values));
        }
    }

    #[test]
    fn ascents_plus_descents(n in 1usize..=8, pick in any::<prop::sample::Index>()) {
        let avoiders = generate_avoiders(n);
        let p = &avoiders[pick.index(avoiders.len())];
        let up: GeneralizedPattern = "12".parse().unwrap();
        let down: GeneralizedPattern = "21".parse().unwrap();
        prop_assert_eq!(up.count_in(p.values()) + down.count_in(p.values()), n as u64 - 1);
    }

    #[test]
    fn distribution_totals_are_catalan(n in 0usize..=7, (letters, glue) in pattern()) {
        let total: BigUint = distribution(&build(&letters, &glue), n).values().sum();
        prop_assert_eq!(total, catalan(n as u64));
    }

    #[test]
    fn reciprocal_round_trip(terms in proptest::collection::vec((0usize..=5, 0usize..=3, -5i64..=5), 0..15)) {
        let w = Window::new(5, 3);
        let s = random_series(terms, w);
        prop_assert_eq!(&s * &s.reciprocal().unwrap(), Series::one(w));
    }

    #[test]
    fn sqrt_round_trip(terms in proptest::collection::vec((0usize..=5, 0usize..=3, -5i64..=5), 0..15)) {
        let w = Window::new(5, 3);
        let s = random_series(terms, w);
        let root = s.sqrt_unit().unwrap();
        prop_assert_eq!(root.constant_term(), &BigRational::from_integer(1.into()));
        prop_assert_eq!(&root * &root, s);
    }

    #[test]
    fn float_reciprocal_tracks_exact(terms in proptest::collection::vec((0usize..=4, 0usize..=2, -3i64..=3), 0..10)) {
        let w = Window::new(4, 2);
        let exact = random_series(terms.clone(), w).reciprocal().unwrap();
        let float = gpat_core::SeriesF64::from_terms(
            terms
                .into_iter()
                .filter(|&(a, b, _)| (a, b) != (0, 0))
                .map(|(a, b, c)| (a, b, c as f64))
                .chain([(0, 0, 1.0)]),
            w,
        )
        .reciprocal()
        .unwrap();
        for (a, b, c) in exact.terms() {
            let want: f64 = c.to_string().parse().unwrap();
            let got = float.coefficient(a, b).unwrap();
            prop_assert!((got - want).abs() <= 1e-9 * want.abs().max(1.0));
        }
    }
}
