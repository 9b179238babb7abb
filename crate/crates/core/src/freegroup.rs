//! Words in the free group on two or three generators.
//!
//! A [`Word`] is always freely reduced. Every operation returns a new word;
//! words are plain values and can be shared freely across threads.

use std::fmt;

use thiserror::Error;

/// Largest absolute exponent accepted by [`parse_word`] for a single token.
pub const MAX_TOKEN_EXPONENT: i64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    X,
    Y,
    Z,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::X, Generator::Y, Generator::Z];

    pub fn index(self) -> usize {
        match self {
            Generator::X => 0,
            Generator::Y => 1,
            Generator::Z => 2,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Generator::X => 'X',
            Generator::Y => 'Y',
            Generator::Z => 'Z',
        }
    }

    fn from_letter(c: char) -> Option<Generator> {
        match c.to_ascii_uppercase() {
            'X' => Some(Generator::X),
            'Y' => Some(Generator::Y),
            'Z' => Some(Generator::Z),
            _ => None,
        }
    }
}

/// Number of free generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rank {
    Two,
    Three,
}

impl Rank {
    pub fn count(self) -> usize {
        match self {
            Rank::Two => 2,
            Rank::Three => 3,
        }
    }

    pub fn from_count(n: usize) -> Option<Rank> {
        match n {
            2 => Some(Rank::Two),
            3 => Some(Rank::Three),
            _ => None,
        }
    }

    pub fn contains(self, g: Generator) -> bool {
        g.index() < self.count()
    }

    pub fn generators(self) -> &'static [Generator] {
        &Generator::ALL[..self.count()]
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.count())
    }
}

/// A generator or its inverse.
///
/// The derived order is the canonicalization order `X < X^-1 < Y < Y^-1 < Z < Z^-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Symbol {
    pub generator: Generator,
    pub inverse: bool,
}

impl Symbol {
    pub const fn pos(generator: Generator) -> Symbol {
        Symbol { generator, inverse: false }
    }

    pub const fn neg(generator: Generator) -> Symbol {
        Symbol { generator, inverse: true }
    }

    pub fn inv(self) -> Symbol {
        Symbol { generator: self.generator, inverse: !self.inverse }
    }

    pub fn cancels(self, other: Symbol) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inverse {
            write!(f, "{}^-1", self.generator.letter())
        } else {
            write!(f, "{}", self.generator.letter())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("zero exponent at position {pos}")]
    ZeroExponent { pos: usize },
    #[error("exponent at position {pos} exceeds {MAX_TOKEN_EXPONENT} in magnitude")]
    ExponentTooLarge { pos: usize },
    #[error("generator {generator:?} is not available in rank {rank}")]
    RankViolation { generator: Generator, rank: Rank },
    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: Rank, right: Rank },
}

/// A freely reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    rank: Rank,
    symbols: Vec<Symbol>,
}

impl Word {
    pub fn identity(rank: Rank) -> Word {
        Word { rank, symbols: Vec::new() }
    }

    /// The word consisting of a single generator.
    pub fn generator(rank: Rank, g: Generator) -> Result<Word, WordError> {
        free_reduce(rank, &[Symbol::pos(g)])
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn inverse_count(&self) -> usize {
        self.symbols.iter().filter(|s| s.inverse).count()
    }

    /// Move the first `k` symbols (mod length) to the end.
    ///
    /// Only meaningful up to conjugation; the result is reduced again, so a
    /// word that is not cyclically reduced may shorten.
    pub fn rotate(&self, k: usize) -> Word {
        if self.symbols.is_empty() {
            return self.clone();
        }
        let k = k % self.symbols.len();
        let mut out = Vec::with_capacity(self.symbols.len());
        out.extend_from_slice(&self.symbols[k..]);
        out.extend_from_slice(&self.symbols[..k]);
        reduce_unchecked(self.rank, out)
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.symbols.first(), self.symbols.last()) {
            (Some(a), Some(b)) if self.symbols.len() > 1 => !a.cancels(*b),
            _ => true,
        }
    }

    pub(crate) fn from_reduced(rank: Rank, symbols: Vec<Symbol>) -> Word {
        debug_assert!(symbols.windows(2).all(|p| !p[0].cancels(p[1])));
        Word { rank, symbols }
    }
}

impl fmt::Display for Word {
    /// Run-length grouped form such as `X^2Y^-1`; the identity prints as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.symbols.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        while i < self.symbols.len() {
            let s = self.symbols[i];
            let mut run = 1;
            while i + run < self.symbols.len() && self.symbols[i + run] == s {
                run += 1;
            }
            let exp = if s.inverse { -(run as i64) } else { run as i64 };
            if exp == 1 {
                write!(f, "{}", s.generator.letter())?;
            } else {
                write!(f, "{}^{}", s.generator.letter(), exp)?;
            }
            i += run;
        }
        Ok(())
    }
}

fn reduce_unchecked(rank: Rank, symbols: impl IntoIterator<Item = Symbol>) -> Word {
    let mut stack: Vec<Symbol> = Vec::new();
    for s in symbols {
        match stack.last() {
            Some(top) if top.cancels(s) => {
                stack.pop();
            }
            _ => stack.push(s),
        }
    }
    Word { rank, symbols: stack }
}

/// Freely reduce a symbol sequence.
pub fn free_reduce(rank: Rank, symbols: &[Symbol]) -> Result<Word, WordError> {
    if let Some(bad) = symbols.iter().find(|s| !rank.contains(s.generator)) {
        return Err(WordError::RankViolation { generator: bad.generator, rank });
    }
    Ok(reduce_unchecked(rank, symbols.iter().copied()))
}

/// Parse a word such as `XY^-1`, `X^2Y'X` or `x y x' y'`.
///
/// Letters are case-insensitive; `'` is shorthand for `^-1`. Empty input (or
/// the lone token `1`) is the identity.
pub fn parse_word(text: &str, rank: Rank) -> Result<Word, WordError> {
    if text.trim() == "1" {
        return Ok(Word::identity(rank));
    }
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut expanded = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let generator = Generator::from_letter(c).ok_or_else(|| WordError::Syntax {
            pos,
            msg: format!("expected a generator letter, found {c:?}"),
        })?;
        if !rank.contains(generator) {
            return Err(WordError::RankViolation { generator, rank });
        }
        i += 1;
        let mut exponent: i64 = 1;
        match chars.get(i) {
            Some(&(_, '\'')) => {
                exponent = -1;
                i += 1;
            }
            Some(&(caret, '^')) => {
                i += 1;
                let start = i;
                if let Some(&(_, '-' | '+')) = chars.get(i) {
                    i += 1;
                }
                let digits_start = i;
                while let Some(&(_, d)) = chars.get(i) {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    i += 1;
                }
                if digits_start == i {
                    let at = chars.get(i).map_or(text.len(), |&(p, _)| p);
                    return Err(WordError::Syntax { pos: at, msg: "expected an integer exponent".into() });
                }
                let lit: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                exponent = match lit.parse::<i64>() {
                    Ok(e) if e.abs() > MAX_TOKEN_EXPONENT => return Err(WordError::ExponentTooLarge { pos: caret }),
                    Ok(e) => e,
                    Err(_) => return Err(WordError::ExponentTooLarge { pos: caret }),
                };
                if exponent == 0 {
                    return Err(WordError::ZeroExponent { pos: caret });
                }
            }
            _ => {}
        }
        let sym = Symbol { generator, inverse: exponent < 0 };
        expanded.extend(std::iter::repeat_n(sym, exponent.unsigned_abs() as usize));
    }
    Ok(reduce_unchecked(rank, expanded))
}

pub fn invert(w: &Word) -> Word {
    Word::from_reduced(w.rank, w.symbols.iter().rev().map(|s| s.inv()).collect())
}

/// Product `u·v`, freely reduced.
pub fn concat(u: &Word, v: &Word) -> Result<Word, WordError> {
    if u.rank != v.rank {
        return Err(WordError::RankMismatch { left: u.rank, right: v.rank });
    }
    Ok(reduce_unchecked(u.rank, u.symbols.iter().chain(v.symbols.iter()).copied()))
}

pub fn length(w: &Word) -> usize {
    w.len()
}

/// Split `w = conjugator · core · conjugator⁻¹` with `core` cyclically reduced.
pub fn cyclic_reduce(w: &Word) -> (Word, Word) {
    let s = &w.symbols;
    let mut k = 0;
    while s.len() >= 2 * k + 2 && s[k].cancels(s[s.len() - 1 - k]) {
        k += 1;
    }
    let core = Word::from_reduced(w.rank, s[k..s.len() - k].to_vec());
    let conjugator = Word::from_reduced(w.rank, s[..k].to_vec());
    (core, conjugator)
}

/// Lexicographically least rotation of the cyclic core or of its inverse.
///
/// Words that are conjugate by a cyclic rotation, or inverse to one another,
/// share a key and therefore have the same trace.
fn rotation(src: &[Symbol], k: usize) -> impl Iterator<Item = Symbol> + '_ {
    src[k..].iter().chain(src[..k].iter()).copied()
}

pub fn canonical_trace_key(w: &Word) -> Word {
    let (core, _) = cyclic_reduce(w);
    let n = core.symbols.len();
    if n <= 1 {
        // a single symbol and its inverse share a key; take the positive one
        return Word::from_reduced(core.rank, core.symbols.iter().map(|s| Symbol::pos(s.generator)).collect());
    }
    let inv: Vec<Symbol> = core.symbols.iter().rev().map(|s| s.inv()).collect();
    let mut best: Option<(usize, bool)> = None;
    for (src, flipped) in [(&core.symbols[..], false), (&inv[..], true)] {
        for k in 0..n {
            let better = match best {
                None => true,
                Some((bk, bf)) => {
                    let cur = if bf { &inv[..] } else { &core.symbols[..] };
                    rotation(src, k).lt(rotation(cur, bk))
                }
            };
            if better {
                best = Some((k, flipped));
            }
        }
    }
    let (k, flipped) = best.expect("nonempty core");
    let src = if flipped { &inv[..] } else { &core.symbols[..] };
    Word::from_reduced(core.rank, rotation(src, k).collect())
}
