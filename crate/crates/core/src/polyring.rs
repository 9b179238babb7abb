//! Exact multivariate polynomials with big-integer coefficients over a fixed
//! alphabet of trace variables, and one-variable Laurent polynomials over them.
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose order is
//! graded-lexicographic: total degree first, then exponents compared in the
//! variable order `x < y < z < u < t1 < t2 < t3 < t12 < t23 < t13 < t123 < t132`
//! (an earlier variable with a larger exponent wins). Zero coefficients are
//! never stored, so structural equality is polynomial equality. Text output
//! lists terms from the largest monomial down.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub const NVARS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    X,
    Y,
    Z,
    /// The symmetric coordinate `ζ + ζ⁻¹` produced by Laurent symmetrization.
    U,
    T1,
    T2,
    T3,
    T12,
    T23,
    T13,
    T123,
    T132,
}

impl Var {
    pub const ALL: [Var; NVARS] = [
        Var::X,
        Var::Y,
        Var::Z,
        Var::U,
        Var::T1,
        Var::T2,
        Var::T3,
        Var::T12,
        Var::T23,
        Var::T13,
        Var::T123,
        Var::T132,
    ];

    /// The six rank-three coordinates the Fricke relations are written in.
    pub const SIX: [Var; 6] = [Var::T1, Var::T2, Var::T3, Var::T12, Var::T23, Var::T13];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::Y => "y",
            Var::Z => "z",
            Var::U => "u",
            Var::T1 => "t1",
            Var::T2 => "t2",
            Var::T3 => "t3",
            Var::T12 => "t12",
            Var::T23 => "t23",
            Var::T13 => "t13",
            Var::T123 => "t123",
            Var::T132 => "t132",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("no value bound for variable {0}")]
    Unbound(Var),
    #[error("Laurent polynomial is not invariant under zeta -> 1/zeta")]
    NotSymmetric,
    #[error("Laurent coefficients may not use the variable u")]
    ReservedVariable,
}

/// Exponent vector indexed by [`Var::index`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial([u32; NVARS]);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(v: Var) -> Monomial {
        let mut m = Monomial::default();
        m.0[v.index()] = 1;
        m
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        for (a, b) in out.0.iter_mut().zip(other.0.iter()) {
            *a += b;
        }
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for v in Var::ALL {
            let e = self.exponent(v);
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A polynomial with integer coefficients in the trace variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct TracePoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl TracePoly {
    pub fn zero() -> TracePoly {
        TracePoly::default()
    }

    pub fn one() -> TracePoly {
        TracePoly::constant(1)
    }

    pub fn constant(c: impl Into<BigInt>) -> TracePoly {
        TracePoly::monomial(c, Monomial::one())
    }

    pub fn var(v: Var) -> TracePoly {
        TracePoly::monomial(1, Monomial::var(v))
    }

    pub fn monomial(c: impl Into<BigInt>, m: Monomial) -> TracePoly {
        let mut p = TracePoly::zero();
        p.add_term(m, c.into());
        p
    }

    /// Build from `(coefficient, [(var, exponent)])` pairs; repeated monomials add up.
    pub fn from_terms<I, C>(terms: I) -> TracePoly
    where
        I: IntoIterator<Item = (C, Vec<(Var, u32)>)>,
        C: Into<BigInt>,
    {
        let mut p = TracePoly::zero();
        for (c, vars) in terms {
            let mut m = Monomial::one();
            for (v, e) in vars {
                m.0[v.index()] += e;
            }
            p.add_term(m, c.into());
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Total degree; the zero polynomial has degree 0.
    pub fn degree(&self) -> u32 {
        self.terms.keys().next_back().map_or(0, |m| m.degree())
    }

    pub fn variables(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|v| self.terms.keys().any(|m| m.exponent(*v) > 0))
            .collect()
    }

    pub fn max_coefficient_bits(&self) -> u64 {
        self.terms.values().map(|c| c.bits()).max().unwrap_or(0)
    }

    pub fn scale(&self, k: &BigInt) -> TracePoly {
        if k.is_zero() {
            return TracePoly::zero();
        }
        TracePoly { terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect() }
    }

    pub fn pow(&self, n: u32) -> TracePoly {
        let mut acc = TracePoly::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluate term by term in ascending monomial order.
    ///
    /// The summation order is fixed, so equal inputs give bit-identical results.
    pub fn eval<F>(&self, value: F) -> Result<Complex64, PolyError>
    where
        F: Fn(Var) -> Option<Complex64>,
    {
        let mut bound = [None; NVARS];
        for v in self.variables() {
            bound[v.index()] = Some(value(v).ok_or(PolyError::Unbound(v))?);
        }
        let mut sum = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
            for v in Var::ALL {
                let e = m.exponent(v);
                if e > 0 {
                    t *= bound[v.index()].expect("bound above").powu(e);
                }
            }
            sum += t;
        }
        Ok(sum)
    }

    /// Evaluate a rank-two trace polynomial at `(x, y, z)`.
    pub fn eval_xyz(&self, x: Complex64, y: Complex64, z: Complex64) -> Result<Complex64, PolyError> {
        self.eval(|v| match v {
            Var::X => Some(x),
            Var::Y => Some(y),
            Var::Z => Some(z),
            _ => None,
        })
    }

    /// Evaluate at the six rank-three coordinates `(t1, t2, t3, t12, t23, t13)`.
    pub fn eval_six(&self, t: &[Complex64; 6]) -> Result<Complex64, PolyError> {
        self.eval(|v| Var::SIX.iter().position(|&s| s == v).map(|i| t[i]))
    }
}

impl fmt::Display for TracePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for TracePoly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        poly_parse(s)
    }
}

impl AddAssign<&TracePoly> for TracePoly {
    fn add_assign(&mut self, rhs: &TracePoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&TracePoly> for TracePoly {
    fn sub_assign(&mut self, rhs: &TracePoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Add for &TracePoly {
    type Output = TracePoly;
    fn add(self, rhs: &TracePoly) -> TracePoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &TracePoly {
    type Output = TracePoly;
    fn sub(self, rhs: &TracePoly) -> TracePoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul for &TracePoly {
    type Output = TracePoly;
    fn mul(self, rhs: &TracePoly) -> TracePoly {
        let mut out = TracePoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &TracePoly {
    type Output = TracePoly;
    fn neg(self) -> TracePoly {
        TracePoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for TracePoly {
            type Output = TracePoly;
            fn $f(self, rhs: TracePoly) -> TracePoly { (&self).$f(&rhs) }
        }
        impl $tr<&TracePoly> for TracePoly {
            type Output = TracePoly;
            fn $f(self, rhs: &TracePoly) -> TracePoly { (&self).$f(rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for TracePoly {
    type Output = TracePoly;
    fn neg(self) -> TracePoly {
        -&self
    }
}

pub fn poly_format(p: &TracePoly) -> String {
    p.to_string()
}

/// Parse the text form written by [`poly_format`].
///
/// Terms are joined by `+`/`-`; within a term, integer and variable factors
/// are multiplied, with `*` optional. Powers use `^`.
pub fn poly_parse(text: &str) -> Result<TracePoly, PolyError> {
    Parser { src: text, bytes: text.as_bytes(), pos: 0 }.polynomial()
}

struct Parser<'a> {
    src: &'a str,
    bytes: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, PolyError> {
        Err(PolyError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn polynomial(&mut self) -> Result<TracePoly, PolyError> {
        let mut out = TracePoly::zero();
        self.skip_ws();
        if self.peek().is_none() {
            return self.err("empty polynomial");
        }
        let mut negative = false;
        if let Some(c @ (b'+' | b'-')) = self.peek() {
            negative = c == b'-';
            self.pos += 1;
            self.skip_ws();
        }
        loop {
            let t = self.term()?;
            if negative {
                out -= &t;
            } else {
                out += &t;
            }
            self.skip_ws();
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(c) => return self.err(format!("unexpected {:?}", c as char)),
            }
            self.pos += 1;
            self.skip_ws();
        }
    }

    fn term(&mut self) -> Result<TracePoly, PolyError> {
        let mut coeff = BigInt::one();
        let mut mono = Monomial::one();
        let mut factors = 0;
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    coeff *= self.integer()?;
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let v = self.variable()?;
                    let e = if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.integer()?.to_u32().ok_or(PolyError::Syntax {
                            pos: self.pos,
                            msg: "exponent out of range".into(),
                        })?
                    } else {
                        1
                    };
                    mono.0[v.index()] += e;
                }
                _ if factors == 0 => return self.err("expected a coefficient or variable"),
                _ => return self.err("dangling '*'"),
            }
            factors += 1;
            self.skip_ws();
            match self.peek() {
                Some(b'*') => self.pos += 1,
                Some(c) if c.is_ascii_alphanumeric() => {}
                _ => return Ok(TracePoly::monomial(coeff, mono)),
            }
        }
    }

    fn integer(&mut self) -> Result<BigInt, PolyError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(self.src[start..self.pos].parse().expect("digits parse"))
    }

    fn variable(&mut self) -> Result<Var, PolyError> {
        // longest name first so that t123 is not read as t12 followed by 3
        let rest = &self.src[self.pos..];
        let mut best: Option<Var> = None;
        for v in Var::ALL {
            if rest.starts_with(v.name()) && best.is_none_or(|b| v.name().len() > b.name().len()) {
                best = Some(v);
            }
        }
        match best {
            Some(v) => {
                self.pos += v.name().len();
                Ok(v)
            }
            None => self.err("unknown variable"),
        }
    }
}

/// A Laurent polynomial in `ζ` with [`TracePoly`] coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, TracePoly>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    /// `coeff · ζ^exp`.
    pub fn term(exp: i64, coeff: TracePoly) -> LaurentPoly {
        let mut l = LaurentPoly::zero();
        l.add_term(exp, &coeff);
        l
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, TracePoly)>) -> LaurentPoly {
        let mut l = LaurentPoly::zero();
        for (e, c) in terms {
            l.add_term(e, &c);
        }
        l
    }

    fn add_term(&mut self, exp: i64, coeff: &TracePoly) {
        let slot = self.terms.entry(exp).or_default();
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &TracePoly)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coefficient(&self, exp: i64) -> TracePoly {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    /// Image under `ζ ↦ ζ⁻¹`.
    pub fn flip(&self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.flip()
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c);
        }
        out
    }

    /// Expand `h(ζ + ζ⁻¹)` for a polynomial `h` in `u` (other variables stay
    /// in the coefficients).
    pub fn expand_symmetric(h: &TracePoly) -> LaurentPoly {
        let u_plus = LaurentPoly::from_terms([(1, TracePoly::one()), (-1, TracePoly::one())]);
        let max_e = h.terms().map(|(m, _)| m.exponent(Var::U)).max().unwrap_or(0);
        let mut powers = vec![LaurentPoly::term(0, TracePoly::one())];
        for k in 1..=max_e as usize {
            powers.push(powers[k - 1].mul(&u_plus));
        }
        let mut out = LaurentPoly::zero();
        for (m, c) in h.terms() {
            let e = m.exponent(Var::U);
            let mut rest = *m;
            rest.0[Var::U.index()] = 0;
            let coeff = TracePoly::monomial(c.clone(), rest);
            for (pe, pc) in powers[e as usize].terms() {
                out.add_term(pe, &(pc * &coeff));
            }
        }
        out
    }

    /// Numeric value at `ζ`, with coefficient variables bound by `value`.
    pub fn eval<F>(&self, zeta: Complex64, value: F) -> Result<Complex64, PolyError>
    where
        F: Fn(Var) -> Option<Complex64> + Copy,
    {
        let mut sum = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            sum += c.eval(value)? * zeta.powi(*e as i32);
        }
        Ok(sum)
    }
}

/// `ζⁿ + ζ⁻ⁿ` as a polynomial in `u = ζ + ζ⁻¹`, for `n = 0..=max`.
///
/// `p₀ = 2`, `p₁ = u`, `pₙ = u·pₙ₋₁ − pₙ₋₂`.
pub fn power_sums(max: usize) -> Vec<TracePoly> {
    let u = TracePoly::var(Var::U);
    let mut out = vec![TracePoly::constant(2), u.clone()];
    for n in 2..=max {
        let next = &(&u * &out[n - 1]) - &out[n - 2];
        out.push(next);
    }
    out.truncate(max + 1);
    out
}

/// Rewrite a `ζ ↔ ζ⁻¹` invariant Laurent polynomial as a polynomial in `u = ζ + ζ⁻¹`.
pub fn symmetrize_laurent(f: &LaurentPoly) -> Result<TracePoly, PolyError> {
    if f.terms().any(|(_, c)| c.variables().contains(&Var::U)) {
        return Err(PolyError::ReservedVariable);
    }
    if !f.is_symmetric() {
        return Err(PolyError::NotSymmetric);
    }
    let top = f.terms().map(|(e, _)| e).max().unwrap_or(0).max(0) as usize;
    let p = power_sums(top);
    let mut h = f.coefficient(0);
    for (e, c) in f.terms().filter(|(e, _)| *e > 0) {
        h += &(c * &p[e as usize]);
    }
    Ok(h)
}
