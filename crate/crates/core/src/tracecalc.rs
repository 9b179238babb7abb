//! Trace polynomials of rank-two words and the rank-three Fricke relations.
//!
//! For a word `w(X, Y)` the trace polynomial `f_w ∈ ℤ[x, y, z]` satisfies
//! `tr w(ξ, η) = f_w(tr ξ, tr η, tr ξη)` for every pair in SL(2,ℂ). It is
//! computed by the recursion below. Every step uses one of two rewrites of the
//! identity `tr(AB) + tr(AB⁻¹) = tr A · tr B`.
//!
//! 1. Cyclically reduce and replace the word by its canonical key
//!    ([`canonical_trace_key`]). Conjugate and inverse words share a key.
//! 2. Words of length at most two come from a fixed table.
//! 3. If an inverse symbol is present, orient the key so that it has at most
//!    half of its symbols inverted. Taking the inverse here does not change
//!    the trace. Rotate so the first inverse symbol `S⁻¹` is last, giving
//!    `w ~ vS⁻¹`. Then `t(vS⁻¹) = t(v)·t(S) − t(vS)`. `v` is shorter, and
//!    `vS` is no longer and has one fewer inverse symbol.
//! 4. Otherwise the word is positive of length ≥ 3, so some generator occurs
//!    twice. Take the first such generator in the order X, Y, and rotate so
//!    the word splits as `u₁u₂`, each factor ending in that generator. Then
//!    `t(u₁u₂) = t(u₁)·t(u₂) − t(u₁u₂⁻¹)`. The last word cancels at the
//!    junction, so all three are shorter.
//!
//! The recursion terminates on the lexicographic measure (length, number of
//! inverse symbols in the better orientation). Step 3 keeps the length and
//! lowers the inverse count, or shortens the word. Step 4 always shortens it.
//! Orientation is what makes step 3 decrease: without it, a word with mostly
//! inverse symbols could be canonicalized back to a representative with more
//! of them.

use std::collections::HashMap;

use thiserror::Error;

use crate::freegroup::{canonical_trace_key, concat, invert, Generator, Rank, Symbol, Word};
use crate::polyring::{poly_parse, TracePoly, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("trace polynomials are only computed for rank-2 words (got rank {0}); general rank-3 reduction is not supported")]
    UnsupportedRank(Rank),
}

/// Memo of trace polynomials keyed by [`canonical_trace_key`].
///
/// A table is plain owned state: use one per thread, or wrap it in a lock.
/// Results never depend on what is already cached.
#[derive(Debug, Clone, Default)]
pub struct TraceTable {
    memo: HashMap<Word, TracePoly>,
    cap: Option<usize>,
    disabled: bool,
}

impl TraceTable {
    pub fn new() -> TraceTable {
        TraceTable::default()
    }

    /// A table that stops inserting once it holds `cap` entries.
    pub fn with_cap(cap: usize) -> TraceTable {
        TraceTable { cap: Some(cap), ..TraceTable::default() }
    }

    /// A table that never stores anything; every call recomputes from scratch.
    pub fn disabled() -> TraceTable {
        TraceTable { disabled: true, ..TraceTable::default() }
    }

    pub fn len(&self) -> usize {
        self.memo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.memo.is_empty()
    }

    pub fn get(&self, key: &Word) -> Option<&TracePoly> {
        self.memo.get(key)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Word, &TracePoly)> {
        self.memo.iter()
    }

    pub fn clear(&mut self) {
        self.memo.clear();
    }

    pub fn trace_poly(&mut self, w: &Word) -> Result<TracePoly, TraceError> {
        if w.rank() != Rank::Two {
            return Err(TraceError::UnsupportedRank(w.rank()));
        }
        Ok(self.of_word(w))
    }

    fn of_word(&mut self, w: &Word) -> TracePoly {
        let key = canonical_trace_key(w);
        self.of_key(&key)
    }

    fn of_key(&mut self, key: &Word) -> TracePoly {
        if let Some(p) = self.memo.get(key) {
            return p.clone();
        }
        let p = if key.len() <= 2 {
            base_case(key)
        } else if key.inverse_count() > 0 {
            self.eliminate_inverse(key)
        } else {
            self.split_positive(key)
        };
        if !self.disabled && self.cap.is_none_or(|cap| self.memo.len() < cap) {
            self.memo.insert(key.clone(), p.clone());
        }
        p
    }

    fn eliminate_inverse(&mut self, key: &Word) -> TracePoly {
        let n = key.len();
        let oriented = if 2 * key.inverse_count() > n { invert(key) } else { key.clone() };
        let syms = oriented.symbols();
        let i = syms.iter().position(|s| s.inverse).expect("has an inverse symbol");
        let s = Symbol::pos(syms[i].generator);
        let v: Vec<Symbol> = syms[i + 1..].iter().chain(&syms[..i]).copied().collect();
        let v = word(key.rank(), &v);
        let vs = concat(&v, &word(key.rank(), &[s])).expect("same rank");
        let t_s = TracePoly::var(generator_var(s.generator));
        let t_v = self.of_word(&v);
        let t_vs = self.of_word(&vs);
        &(&t_v * &t_s) - &t_vs
    }

    fn split_positive(&mut self, key: &Word) -> TracePoly {
        let syms = key.symbols();
        let (p1, p2) = [Generator::X, Generator::Y]
            .iter()
            .find_map(|&g| {
                let mut hits = syms.iter().enumerate().filter(|(_, s)| s.generator == g).map(|(i, _)| i);
                Some((hits.next()?, hits.next()?))
            })
            .expect("a positive rank-2 word of length >= 3 repeats a generator");
        let u1 = word(key.rank(), &syms[p1 + 1..=p2]);
        let u2: Vec<Symbol> = syms[p2 + 1..].iter().chain(&syms[..=p1]).copied().collect();
        let u2 = word(key.rank(), &u2);
        let cross = concat(&u1, &invert(&u2)).expect("same rank");
        let t1 = self.of_word(&u1);
        let t2 = self.of_word(&u2);
        let t3 = self.of_word(&cross);
        &(&t1 * &t2) - &t3
    }
}

fn word(rank: Rank, syms: &[Symbol]) -> Word {
    crate::freegroup::free_reduce(rank, syms).expect("symbols come from a word of this rank")
}

fn generator_var(g: Generator) -> Var {
    match g {
        Generator::X => Var::X,
        Generator::Y => Var::Y,
        Generator::Z => Var::Z,
    }
}

/// Traces of the canonical keys of length at most two.
fn base_case(key: &Word) -> TracePoly {
    use Generator::{X, Y};
    let x = TracePoly::var(Var::X);
    let y = TracePoly::var(Var::Y);
    let z = TracePoly::var(Var::Z);
    let two = TracePoly::constant(2);
    match key.symbols() {
        [] => two,
        [s] if s.generator == X => x,
        [s] if s.generator == Y => y,
        [a, b] if *a == Symbol::pos(X) && *b == Symbol::pos(X) => &(&x * &x) - &two,
        [a, b] if *a == Symbol::pos(Y) && *b == Symbol::pos(Y) => &(&y * &y) - &two,
        [a, b] if *a == Symbol::pos(X) && *b == Symbol::pos(Y) => z,
        [a, b] if *a == Symbol::pos(X) && *b == Symbol::neg(Y) => &(&x * &y) - &z,
        other => unreachable!("{other:?} is not a canonical key of length <= 2"),
    }
}

/// `f_w` with a fresh memo table.
pub fn trace_poly(w: &Word) -> Result<TracePoly, TraceError> {
    TraceTable::new().trace_poly(w)
}

/// `κ = x² + y² + z² − xyz − 2`, the trace of the commutator `XYX⁻¹Y⁻¹`.
pub fn kappa_poly() -> TracePoly {
    poly_parse("x^2 + y^2 + z^2 - x*y*z - 2").expect("valid literal")
}

/// `t123 + t132 = t12·t3 + t23·t1 + t13·t2 − t1·t2·t3`.
pub fn fricke_sum_rhs() -> TracePoly {
    poly_parse("t12*t3 + t23*t1 + t13*t2 - t1*t2*t3").expect("valid literal")
}

/// `t123 · t132 = t1² + t2² + t3² + t12² + t23² + t13² − t1·t2·t12 − t2·t3·t23 − t3·t1·t13 + t12·t23·t13 − 4`.
pub fn fricke_product_rhs() -> TracePoly {
    poly_parse(
        "t1^2 + t2^2 + t3^2 + t12^2 + t23^2 + t13^2 \
         - t1*t2*t12 - t2*t3*t23 - t3*t1*t13 + t12*t23*t13 - 4",
    )
    .expect("valid literal")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::parse_word;

    fn tp(s: &str) -> TracePoly {
        trace_poly(&parse_word(s, Rank::Two).unwrap()).unwrap()
    }

    fn p(s: &str) -> TracePoly {
        poly_parse(s).unwrap()
    }

    #[test]
    fn short_word_table() {
        assert_eq!(tp(""), p("2"));
        assert_eq!(tp("X"), p("x"));
        assert_eq!(tp("X^-1"), p("x"));
        assert_eq!(tp("Y"), p("y"));
        assert_eq!(tp("Y^-1"), p("y"));
        assert_eq!(tp("XY"), p("z"));
        assert_eq!(tp("YX"), p("z"));
        assert_eq!(tp("Y^-1X^-1"), p("z"));
        assert_eq!(tp("X^2"), p("x^2 - 2"));
        assert_eq!(tp("X^-2"), p("x^2 - 2"));
        assert_eq!(tp("Y^2"), p("y^2 - 2"));
        assert_eq!(tp("XY^-1"), p("x*y - z"));
        assert_eq!(tp("YX^-1"), p("x*y - z"));
        assert_eq!(tp("X^-1Y"), p("x*y - z"));
    }

    #[test]
    fn printed_identities() {
        assert_eq!(tp("XYX^-1Y"), p("2 - x^2 - z^2 + x*y*z"));
        assert_eq!(tp("XYX^-1Y^-1"), kappa_poly());
        assert_eq!(tp("XYXY"), p("z^2 - 2"));
        // t(Xⁿ) = x·t(Xⁿ⁻¹) − t(Xⁿ⁻²) from t(1) = 2, t(X) = x
        assert_eq!(tp("X^5"), p("x^5 - 5*x^3 + 5*x"));
    }

    #[test]
    fn fifth_power_matches_matrices() {
        use crate::sl2::companion;
        use num_complex::Complex64;
        let f = tp("X^5");
        for t in [Complex64::new(0.7, -1.3), Complex64::new(2.5, 0.0), Complex64::new(-1.1, 0.4)] {
            let direct = companion(t).pow(5).trace();
            let poly = f.eval_xyz(t, 0.0.into(), 0.0.into()).unwrap();
            assert!((direct - poly).norm() <= 1e-12 * (1.0 + direct.norm()));
        }
    }

    #[test]
    fn rank_three_rejected() {
        let w = parse_word("XYZ", Rank::Three).unwrap();
        assert_eq!(trace_poly(&w), Err(TraceError::UnsupportedRank(Rank::Three)));
    }

    #[test]
    fn mostly_inverse_words_terminate() {
        assert_eq!(tp("X^-3"), tp("X^3"));
        assert_eq!(tp("X^-2Y^-1X"), tp("X^-1YX^2"));
        assert_eq!(tp("X^-1Y^-1X^-1Y^-1X^-1Y"), tp("YXYXY^-1X"));
    }

    #[test]
    fn memo_cap_and_disabled() {
        let w = parse_word("XYX^-1Y^2XY^-3", Rank::Two).unwrap();
        let mut full = TraceTable::new();
        let mut capped = TraceTable::with_cap(3);
        let mut off = TraceTable::disabled();
        let a = full.trace_poly(&w).unwrap();
        assert_eq!(capped.trace_poly(&w).unwrap(), a);
        assert_eq!(off.trace_poly(&w).unwrap(), a);
        assert!(full.len() > 3);
        assert_eq!(capped.len(), 3);
        assert!(off.is_empty());
    }

    #[test]
    fn fricke_at_special_points() {
        use num_complex::Complex64;
        let twos = [Complex64::new(2.0, 0.0); 6];
        assert_eq!(fricke_sum_rhs().eval_six(&twos).unwrap(), Complex64::new(4.0, 0.0));
        assert_eq!(fricke_product_rhs().eval_six(&twos).unwrap(), Complex64::new(4.0, 0.0));
        let zeros = [Complex64::new(0.0, 0.0); 6];
        assert_eq!(fricke_sum_rhs().eval_six(&zeros).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(fricke_product_rhs().eval_six(&zeros).unwrap(), Complex64::new(-4.0, 0.0));
    }
}
