mod common;

use std::collections::BTreeSet;

use common::{bin, TAU_3_4};
use multishift::frobenius::RepresentabilityAutomaton;
use multishift::{
    build_instance, frobenius_number, is_representable, longest_nonrepresentable, theorem_language,
    unrank, FrobeniusInstance, Limits, Word,
};
use rand::{Rng, SeedableRng};

/// Instances with generated `τ`: (a, m, n).
const GENERATED: [(u32, usize, usize); 6] = [
    (2, 2, 3),
    (2, 2, 5),
    (2, 3, 4),
    (2, 3, 5),
    (2, 4, 5),
    (3, 2, 3),
];

fn instances() -> Vec<FrobeniusInstance> {
    let mut out: Vec<FrobeniusInstance> = GENERATED
        .iter()
        .map(|&(a, m, n)| build_instance(a, m, n, None).unwrap())
        .collect();
    out.push(build_instance(2, 3, 7, Some(bin(TAU_3_4))).unwrap());
    out.push(build_instance(2, 3, 7, None).unwrap());
    out
}

fn label(inst: &FrobeniusInstance) -> String {
    format!(
        "a={} m={} n={} tau={}",
        inst.alphabet(),
        inst.short_len(),
        inst.long_len(),
        inst.tau().render(inst.alphabet())
    )
}

#[test]
fn longest_words_match_prediction() {
    for inst in instances() {
        let longest = longest_nonrepresentable(&inst).unwrap();
        let g = frobenius_number(inst.short_len() as u64, inst.l()).unwrap();
        assert!(longest.finite, "{}", label(&inst));
        assert_eq!(longest.max_length, Some(g), "{}", label(&inst));
        let found: BTreeSet<Word> = longest.words.unwrap().into_iter().collect();
        let predicted: BTreeSet<Word> = theorem_language(&inst).unwrap().into_iter().collect();
        assert_eq!(found, predicted, "{}", label(&inst));
    }
}

#[test]
fn predicted_words_have_the_frobenius_length_and_are_rejected() {
    for inst in instances() {
        let g = inst.predicted_longest().unwrap();
        for w in theorem_language(&inst).unwrap() {
            assert_eq!(w.len() as u64, g);
            assert!(!is_representable(&w, &inst).unwrap(), "{}", label(&inst));
        }
    }
}

#[test]
fn language_length_identity() {
    // (m − 1)|τ| + (m − 2)m = ml − m − l with |τ| = l − m
    for m in 2..6u64 {
        for l in m + 1..m + 12 {
            let tau = l - m;
            assert_eq!((m - 1) * tau + (m - 2) * m, m * l - m - l);
        }
    }
}

/// Every other word of the maximal length is representable: random samples
/// plus all single-letter changes of the predicted words.
#[test]
fn other_words_of_maximal_length_are_representable() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(5);
    for inst in instances() {
        let a = inst.alphabet();
        let g = inst.predicted_longest().unwrap() as usize;
        let predicted: BTreeSet<Word> = theorem_language(&inst).unwrap().into_iter().collect();
        let mut candidates: Vec<Word> = (0..1000)
            .map(|_| Word::new((0..g).map(|_| rng.gen_range(0..a)).collect()))
            .collect();
        for w in &predicted {
            for i in 0..g {
                for c in 0..a {
                    if c != w.symbols()[i] {
                        let mut v = w.symbols().to_vec();
                        v[i] = c;
                        candidates.push(Word::new(v));
                    }
                }
            }
        }
        for w in candidates.iter().filter(|w| !predicted.contains(*w)) {
            assert!(
                is_representable(w, &inst).unwrap(),
                "{} {}",
                label(&inst),
                w.render(a)
            );
        }
    }
}

#[test]
fn longer_words_are_representable() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(6);
    for inst in instances() {
        let a = inst.alphabet();
        let g = inst.predicted_longest().unwrap() as usize;
        for len in g + 1..=g + 2 * inst.long_len() {
            for _ in 0..200 {
                let w = Word::new((0..len).map(|_| rng.gen_range(0..a)).collect());
                assert!(is_representable(&w, &inst).unwrap(), "{}", label(&inst));
            }
        }
    }
}

#[test]
fn multiples_of_the_short_length_are_representable() {
    let mut rng = rand::rngs::StdRng::seed_from_u64(7);
    for inst in instances() {
        let a = inst.alphabet();
        for k in 0..12 {
            let len = k * inst.short_len();
            let w = Word::new((0..len).map(|_| rng.gen_range(0..a)).collect());
            assert!(is_representable(&w, &inst).unwrap());
        }
    }
}

#[test]
fn excluded_set_size() {
    for inst in instances() {
        let expected =
            (inst.alphabet() as u64).pow((inst.long_len() - inst.short_len()) as u32) - 1;
        assert_eq!(inst.excluded().len() as u64, expected);
    }
}

#[test]
fn automaton_agrees_with_dp_exhaustively() {
    for inst in instances().into_iter().take(4) {
        let a = inst.alphabet();
        let auto = RepresentabilityAutomaton::build(&inst, &Limits::default()).unwrap();
        for len in 0..=12usize {
            let total = (a as u64).pow(len as u32);
            for x in 0..total {
                let w = unrank(x, len, a).unwrap();
                assert_eq!(auto.accepts(&w), is_representable(&w, &inst).unwrap());
            }
        }
    }
}

#[test]
fn brute_force_complement_for_the_smallest_instances() {
    // all words up to a little past the bound, decided by the DP alone
    for &(a, m, n) in &GENERATED[..3] {
        let inst = build_instance(a, m, n, None).unwrap();
        let g = inst.predicted_longest().unwrap() as usize;
        let mut longest = 0;
        let mut at_max = BTreeSet::new();
        for len in 0..=(g + 3).min(20) {
            for x in 0..(a as u64).pow(len as u32) {
                let w = unrank(x, len, a).unwrap();
                if !is_representable(&w, &inst).unwrap() {
                    if len > longest {
                        longest = len;
                        at_max.clear();
                    }
                    if len == longest {
                        at_max.insert(w);
                    }
                }
            }
        }
        assert_eq!(longest, g);
        let predicted: BTreeSet<Word> = theorem_language(&inst).unwrap().into_iter().collect();
        assert_eq!(at_max, predicted);
    }
}
