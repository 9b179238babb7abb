//! Random inputs for property checks: words, complex scalars, matrix pairs and
//! coordinate tuples.

use num_bigint::BigInt;
use num_complex::Complex64;
use rand::Rng;

use crate::charvar::{is_irreducible, CharTriple};
use crate::charvar3::SixTuple;
use crate::freegroup::{Generator, Rank, Symbol, Word};
use crate::polyring::{LaurentPoly, TracePoly};
use crate::sl2::{random_sl2, Mat2, RepPair};

/// A uniformly random reduced word whose length is uniform in `0..=max_len`.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, rank: Rank, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    let alphabet: Vec<Symbol> = rank
        .generators()
        .iter()
        .flat_map(|&g| [Symbol::pos(g), Symbol::neg(g)])
        .collect();
    let mut syms: Vec<Symbol> = Vec::with_capacity(len);
    while syms.len() < len {
        let s = alphabet[rng.gen_range(0..alphabet.len())];
        if syms.last().is_some_and(|last| last.cancels(s)) {
            continue;
        }
        syms.push(s);
    }
    Word::from_reduced(rank, syms)
}

/// A random symbol of the given rank.
pub fn random_symbol<R: Rng + ?Sized>(rng: &mut R, rank: Rank) -> Symbol {
    let g: Generator = rank.generators()[rng.gen_range(0..rank.count())];
    Symbol { generator: g, inverse: rng.gen_bool(0.5) }
}

/// Uniform in the square `[−r, r] × [−r, r]`.
pub fn random_complex<R: Rng + ?Sized>(rng: &mut R, r: f64) -> Complex64 {
    Complex64::new(rng.gen_range(-r..=r), rng.gen_range(-r..=r))
}

/// A nonzero complex number with modulus in `[lo, hi]` and uniform argument.
pub fn random_annulus<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64) -> Complex64 {
    Complex64::from_polar(rng.gen_range(lo..=hi), rng.gen_range(0.0..std::f64::consts::TAU))
}

pub fn random_pair<R: Rng + ?Sized>(rng: &mut R) -> RepPair {
    RepPair { xi: random_sl2(rng), eta: random_sl2(rng) }
}

/// A random pair with `|κ − 2| > margin`.
pub fn random_irreducible_pair<R: Rng + ?Sized>(rng: &mut R, margin: f64) -> RepPair {
    loop {
        let p = random_pair(rng);
        if is_irreducible(&p, margin) {
            return p;
        }
    }
}

/// Two upper-triangular SL(2) matrices with diagonal moduli in `[0.5, 2]`.
pub fn random_upper_triangular_pair<R: Rng + ?Sized>(rng: &mut R) -> RepPair {
    let mut upper = || {
        let a = random_annulus(rng, 0.5, 2.0);
        Mat2::new(a, random_complex(rng, 1.0), Complex64::new(0.0, 0.0), 1.0 / a)
    };
    RepPair { xi: upper(), eta: upper() }
}

pub fn random_char_triple<R: Rng + ?Sized>(rng: &mut R, r: f64) -> CharTriple {
    CharTriple::new(random_complex(rng, r), random_complex(rng, r), random_complex(rng, r))
}

pub fn random_six_tuple<R: Rng + ?Sized>(rng: &mut R, r: f64) -> SixTuple {
    SixTuple(std::array::from_fn(|_| random_complex(rng, r)))
}

/// A six-tuple with `t12 = ±2`.
pub fn random_six_tuple_t12_pm2<R: Rng + ?Sized>(rng: &mut R, r: f64) -> SixTuple {
    let mut s = random_six_tuple(rng, r);
    s.0[3] = Complex64::new(if rng.gen_bool(0.5) { 2.0 } else { -2.0 }, 0.0);
    s
}

/// A six-tuple with `κ(t1, t2, t12) = 2`, i.e. the traces of a reducible pair.
///
/// `t12` takes the both-plus or the plus-minus form at random.
pub fn random_six_tuple_reducible<R: Rng + ?Sized>(rng: &mut R, r: f64) -> SixTuple {
    let a1 = random_annulus(rng, 0.5, 2.0);
    let a2 = random_annulus(rng, 0.5, 2.0);
    let t12 = if rng.gen_bool(0.5) { a1 * a2 + 1.0 / (a1 * a2) } else { a1 / a2 + a2 / a1 };
    let mut s = random_six_tuple(rng, r);
    s.0[0] = a1 + 1.0 / a1;
    s.0[1] = a2 + 1.0 / a2;
    s.0[3] = t12;
    s
}

/// A random `ζ ↔ ζ⁻¹` invariant Laurent polynomial with integer coefficients
/// bounded by `coeff` and exponents bounded by `max_exp`.
pub fn random_symmetric_laurent<R: Rng + ?Sized>(rng: &mut R, max_exp: i64, coeff: i64) -> LaurentPoly {
    let mut terms = Vec::new();
    terms.push((0, TracePoly::constant(BigInt::from(rng.gen_range(-coeff..=coeff)))));
    for e in 1..=max_exp {
        let c = TracePoly::constant(BigInt::from(rng.gen_range(-coeff..=coeff)));
        terms.push((e, c.clone()));
        terms.push((-e, c));
    }
    LaurentPoly::from_terms(terms)
}
