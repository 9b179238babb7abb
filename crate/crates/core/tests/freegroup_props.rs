use proptest::prelude::*;

use sl2char::freegroup::{canonical_trace_key, concat, cyclic_reduce, free_reduce, invert, length};
use sl2char::{parse_word, Generator, Rank, Symbol, Word};

fn symbols(rank: Rank, max_len: usize) -> impl Strategy<Value = Vec<Symbol>> {
    let n = rank.count();
    prop::collection::vec((0..n, any::<bool>()), 0..=max_len).prop_map(move |raw| {
        raw.into_iter()
            .map(|(g, inverse)| Symbol { generator: rank.generators()[g], inverse })
            .collect()
    })
}

fn word(rank: Rank, max_len: usize) -> impl Strategy<Value = Word> {
    symbols(rank, max_len).prop_map(move |s| free_reduce(rank, &s).unwrap())
}

fn rank() -> impl Strategy<Value = Rank> {
    prop_oneof![Just(Rank::Two), Just(Rank::Three)]
}

fn ranked_word(max_len: usize) -> impl Strategy<Value = Word> {
    rank().prop_flat_map(move |r| word(r, max_len))
}

proptest! {
    #[test]
    fn reduced_words_have_no_cancelling_neighbours(w in ranked_word(20)) {
        prop_assert!(w.symbols().windows(2).all(|p| !p[0].cancels(p[1])));
        prop_assert_eq!(free_reduce(w.rank(), w.symbols()).unwrap(), w);
    }

    #[test]
    fn display_parses_back(w in ranked_word(20)) {
        prop_assert_eq!(parse_word(&w.to_string(), w.rank()).unwrap(), w);
    }

    #[test]
    fn inverse_is_involutive_and_cancels(w in ranked_word(20)) {
        prop_assert_eq!(invert(&invert(&w)), w.clone());
        prop_assert!(concat(&w, &invert(&w)).unwrap().is_empty());
        prop_assert_eq!(length(&invert(&w)), length(&w));
    }

    #[test]
    fn concat_is_associative_and_length_subadditive(
        (u, v, x) in rank().prop_flat_map(|r| (word(r, 10), word(r, 10), word(r, 10)))
    ) {
        let left = concat(&concat(&u, &v).unwrap(), &x).unwrap();
        let right = concat(&u, &concat(&v, &x).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        prop_assert!(length(&concat(&u, &v).unwrap()) <= u.len() + v.len());
    }

    #[test]
    fn cyclic_core_conjugates_back(w in ranked_word(20)) {
        let (core, c) = cyclic_reduce(&w);
        prop_assert!(core.is_cyclically_reduced());
        let rebuilt = concat(&concat(&c, &core).unwrap(), &invert(&c)).unwrap();
        prop_assert_eq!(rebuilt, w);
    }

    #[test]
    fn trace_key_is_a_class_invariant(w in ranked_word(16), k in 0usize..16, flip in any::<bool>()) {
        let key = canonical_trace_key(&w);
        let (core, _) = cyclic_reduce(&w);
        let mut other = if core.is_empty() { core.clone() } else { core.rotate(k % core.len()) };
        if flip {
            other = invert(&other);
        }
        prop_assert_eq!(canonical_trace_key(&other), key.clone());
        prop_assert_eq!(canonical_trace_key(&key), key);
    }

    #[test]
    fn conjugation_preserves_trace_key(
        (w, c) in rank().prop_flat_map(|r| (word(r, 12), word(r, 6)))
    ) {
        let conj = concat(&concat(&c, &w).unwrap(), &invert(&c)).unwrap();
        prop_assert_eq!(canonical_trace_key(&conj), canonical_trace_key(&w));
    }
}

#[test]
fn rank_two_rejects_z() {
    assert!(parse_word("XZ", Rank::Two).is_err());
    assert!(Word::generator(Rank::Two, Generator::Z).is_err());
    let a = parse_word("X", Rank::Two).unwrap();
    let b = parse_word("Z", Rank::Three).unwrap();
    assert!(concat(&a, &b).is_err());
}

#[test]
fn malformed_words_are_rejected() {
    for bad in ["X^", "X^0", "Q", "X^-", "^2", "X^1000000"] {
        assert!(parse_word(bad, Rank::Three).is_err(), "{bad}");
    }
}
