//! Numeric 2×2 complex matrices.
//!
//! Everything symbolic in this crate is checked against this layer, so it is
//! kept deliberately direct: entries are written out, no general linear
//! algebra is involved.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::charvar::CharTriple;
use crate::charvar3::RankThreeChar;
use crate::freegroup::{Rank, Word};

pub type ComplexScalar = Complex64;

pub const DEFAULT_DET_TOL: f64 = 1e-9;
pub const DEFAULT_ORACLE_TOL: f64 = 1e-8;
/// `|det|` at or below this is treated as singular.
pub const SINGULAR_DET: f64 = 1e-300;
/// Entrywise distance from `±𝕀` below which an element counts as central.
pub const CENTRAL_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Sl2Error {
    #[error("matrix is singular")]
    Singular,
    #[error("matrix is ±I; no conjugate companion form")]
    CentralElement,
    #[error("non-finite matrix entry")]
    NonFinite,
    #[error("|det - 1| = {0:e} exceeds tolerance")]
    NotSl2(f64),
    #[error("word of rank {rank} needs {rank} generator matrices, got {got}")]
    MissingGenerator { rank: Rank, got: usize },
}

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `[[a, b], [c, d]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[[[f64; 2]; 2]; 2]", into = "[[[f64; 2]; 2]; 2]")]
pub struct Mat2 {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl Mat2 {
    pub const fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Mat2 {
        Mat2 { a, b, c, d }
    }

    pub fn real(a: f64, b: f64, c_: f64, d: f64) -> Mat2 {
        Mat2::new(c(a), c(b), c(c_), c(d))
    }

    pub fn identity() -> Mat2 {
        Mat2::real(1.0, 0.0, 0.0, 1.0)
    }

    pub fn zero() -> Mat2 {
        Mat2::real(0.0, 0.0, 0.0, 0.0)
    }

    pub fn scalar(s: Complex64) -> Mat2 {
        Mat2::new(s, c(0.0), c(0.0), s)
    }

    pub fn diag(p: Complex64, q: Complex64) -> Mat2 {
        Mat2::new(p, c(0.0), c(0.0), q)
    }

    pub fn entries(&self) -> [Complex64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn from_entries(e: [Complex64; 4]) -> Mat2 {
        Mat2::new(e[0], e[1], e[2], e[3])
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    pub fn is_finite(&self) -> bool {
        self.entries().iter().all(|z| z.is_finite())
    }

    pub fn check_finite(self) -> Result<Mat2, Sl2Error> {
        if self.is_finite() {
            Ok(self)
        } else {
            Err(Sl2Error::NonFinite)
        }
    }

    /// Finite with `|det − 1| ≤ det_tol`.
    pub fn certify(self, det_tol: f64) -> Result<Mat2, Sl2Error> {
        let m = self.check_finite()?;
        let dev = (m.det() - 1.0).norm();
        if dev <= det_tol {
            Ok(m)
        } else {
            Err(Sl2Error::NotSl2(dev))
        }
    }

    /// Adjugate `[[d, −b], [−c, a]]`, the inverse of a determinant-one matrix.
    pub fn adjugate(&self) -> Mat2 {
        Mat2::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn inverse(&self) -> Result<Mat2, Sl2Error> {
        let det = self.det();
        if det.norm() <= SINGULAR_DET {
            return Err(Sl2Error::Singular);
        }
        Ok(self.adjugate().scale(1.0 / det))
    }

    pub fn scale(&self, s: Complex64) -> Mat2 {
        Mat2::new(self.a * s, self.b * s, self.c * s, self.d * s)
    }

    /// Largest entry modulus.
    pub fn max_norm(&self) -> f64 {
        self.entries().iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn dist(&self, other: &Mat2) -> f64 {
        (*self - *other).max_norm()
    }

    pub fn pow(&self, n: u32) -> Mat2 {
        (0..n).fold(Mat2::identity(), |acc, _| acc * *self)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

impl Neg for Mat2 {
    type Output = Mat2;
    fn neg(self) -> Mat2 {
        Mat2::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl TryFrom<[[[f64; 2]; 2]; 2]> for Mat2 {
    type Error = Sl2Error;
    fn try_from(m: [[[f64; 2]; 2]; 2]) -> Result<Mat2, Sl2Error> {
        let z = |p: [f64; 2]| Complex64::new(p[0], p[1]);
        Mat2::new(z(m[0][0]), z(m[0][1]), z(m[1][0]), z(m[1][1])).check_finite()
    }
}

impl From<Mat2> for [[[f64; 2]; 2]; 2] {
    fn from(m: Mat2) -> Self {
        let p = |z: Complex64| [z.re, z.im];
        [[p(m.a), p(m.b)], [p(m.c), p(m.d)]]
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::json::mat2(self))
    }
}

pub fn identity() -> Mat2 {
    Mat2::identity()
}

/// `AB − BA`.
pub fn commutator_bracket(a: &Mat2, b: &Mat2) -> Mat2 {
    *a * *b - *b * *a
}

/// A pair of determinant-one matrices `(ξ, η)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[Mat2; 2]", into = "[Mat2; 2]")]
pub struct RepPair {
    pub xi: Mat2,
    pub eta: Mat2,
}

impl RepPair {
    pub fn new(xi: Mat2, eta: Mat2, det_tol: f64) -> Result<RepPair, Sl2Error> {
        Ok(RepPair { xi: xi.certify(det_tol)?, eta: eta.certify(det_tol)? })
    }

    /// Conjugate both components: `(hξh⁻¹, hηh⁻¹)`.
    pub fn conjugated_by(&self, h: &Mat2) -> Result<RepPair, Sl2Error> {
        let hi = h.inverse()?;
        Ok(RepPair { xi: *h * self.xi * hi, eta: *h * self.eta * hi })
    }

    pub fn as_slice(&self) -> [Mat2; 2] {
        [self.xi, self.eta]
    }
}

impl TryFrom<[Mat2; 2]> for RepPair {
    type Error = Sl2Error;
    fn try_from(m: [Mat2; 2]) -> Result<RepPair, Sl2Error> {
        RepPair::new(m[0], m[1], DEFAULT_DET_TOL)
    }
}

impl From<RepPair> for [Mat2; 2] {
    fn from(p: RepPair) -> Self {
        p.as_slice()
    }
}

/// Three determinant-one matrices `(A₁, A₂, A₃)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[Mat2; 3]", into = "[Mat2; 3]")]
pub struct RepTriple(pub [Mat2; 3]);

impl RepTriple {
    pub fn new(a1: Mat2, a2: Mat2, a3: Mat2, det_tol: f64) -> Result<RepTriple, Sl2Error> {
        Ok(RepTriple([a1.certify(det_tol)?, a2.certify(det_tol)?, a3.certify(det_tol)?]))
    }
}

impl TryFrom<[Mat2; 3]> for RepTriple {
    type Error = Sl2Error;
    fn try_from(m: [Mat2; 3]) -> Result<RepTriple, Sl2Error> {
        RepTriple::new(m[0], m[1], m[2], DEFAULT_DET_TOL)
    }
}

impl From<RepTriple> for [Mat2; 3] {
    fn from(t: RepTriple) -> Self {
        t.0
    }
}

/// Left-to-right product of the generator images (or their inverses).
///
/// `generators[i]` is the image of the i-th generator; at least `rank` of them
/// must be supplied.
pub fn evaluate_word(w: &Word, generators: &[Mat2]) -> Result<Mat2, Sl2Error> {
    let n = w.rank().count();
    if generators.len() < n {
        return Err(Sl2Error::MissingGenerator { rank: w.rank(), got: generators.len() });
    }
    let inverses = generators[..n].iter().map(|g| g.inverse()).collect::<Result<Vec<_>, _>>()?;
    Ok(w.symbols().iter().fold(Mat2::identity(), |acc, s| {
        let i = s.generator.index();
        acc * if s.inverse { inverses[i] } else { generators[i] }
    }))
}

/// `(tr ξ, tr η, tr ξη)`.
pub fn tau(xi: &Mat2, eta: &Mat2) -> CharTriple {
    CharTriple::new(xi.trace(), eta.trace(), (*xi * *eta).trace())
}

/// The eight rank-three trace coordinates `(t1, t2, t3, t12, t23, t13, t123, t132)`.
pub fn char8(a1: &Mat2, a2: &Mat2, a3: &Mat2) -> RankThreeChar {
    RankThreeChar([
        a1.trace(),
        a2.trace(),
        a3.trace(),
        (*a1 * *a2).trace(),
        (*a2 * *a3).trace(),
        (*a1 * *a3).trace(),
        (*a1 * *a2 * *a3).trace(),
        (*a1 * *a3 * *a2).trace(),
    ])
}

fn uniform_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0))
}

/// Random element of SL(2,ℂ): `a, b, c` uniform in the unit box, `d = (1 + bc)/a`.
pub fn random_sl2<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    let mut a = uniform_complex(rng);
    while a.norm() < 1e-3 {
        a = uniform_complex(rng);
    }
    let b = uniform_complex(rng);
    let c_ = uniform_complex(rng);
    Mat2::new(a, b, c_, (1.0 + b * c_) / a)
}

/// `ξ_t = [[t, −1], [1, 0]]`.
pub fn companion(t: Complex64) -> Mat2 {
    Mat2::new(t, c(-1.0), c(1.0), c(0.0))
}

pub fn is_central(g: &Mat2) -> bool {
    g.dist(&Mat2::identity()) <= CENTRAL_TOL || g.dist(&-Mat2::identity()) <= CENTRAL_TOL
}

/// Find `h` with `h g h⁻¹ = companion(tr g)`.
///
/// In the basis `(gv, −v)`, with `v` any non-eigenvector, `g` acts as the
/// companion matrix by Cayley–Hamilton; `h` is the inverse basis change.
pub fn conjugate_to_companion(g: &Mat2) -> Result<Mat2, Sl2Error> {
    let g = g.check_finite()?;
    if is_central(&g) {
        return Err(Sl2Error::CentralElement);
    }
    let candidates = [(c(1.0), c(0.0)), (c(0.0), c(1.0)), (c(1.0), c(1.0))];
    let basis = |v: (Complex64, Complex64)| {
        let gv = (g.a * v.0 + g.b * v.1, g.c * v.0 + g.d * v.1);
        Mat2::new(gv.0, -v.0, gv.1, -v.1)
    };
    let p = candidates
        .iter()
        .map(|&v| basis(v))
        .max_by(|x, y| x.det().norm().total_cmp(&y.det().norm()))
        .expect("three candidates");
    let det = p.det();
    if det.norm() <= SINGULAR_DET {
        return Err(Sl2Error::Singular);
    }
    let p = p.scale(1.0 / det.sqrt());
    p.inverse()
}

/// Coefficients `(c₀, c₁, c₂)` with `det(W₀ + sK) = c₀ + c₁ s + c₂ s²`.
pub fn det_pencil(w0: &Mat2, k: &Mat2) -> [Complex64; 3] {
    [w0.det(), w0.trace() * k.trace() - (*w0 * *k).trace(), k.det()]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegroup::{parse_word, Rank};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn unipotent_pair() -> (Mat2, Mat2) {
        (Mat2::real(1.0, 1.0, 0.0, 1.0), Mat2::real(1.0, 0.0, 1.0, 1.0))
    }

    #[test]
    fn identity_basics() {
        assert_eq!(Mat2::identity().trace(), c(2.0));
        assert_eq!(Mat2::identity().det(), c(1.0));
    }

    #[test]
    fn bracket_of_unipotents() {
        let (xi, eta) = unipotent_pair();
        assert_eq!(commutator_bracket(&xi, &eta), Mat2::real(1.0, 0.0, 0.0, -1.0));
    }

    #[test]
    fn inverse_law_and_singular() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let m = random_sl2(&mut rng);
            assert!((m * m.inverse().unwrap()).dist(&Mat2::identity()) <= 1e-12 * m.max_norm().max(1.0).powi(2));
        }
        assert_eq!(Mat2::real(1.0, 2.0, 2.0, 4.0).inverse(), Err(Sl2Error::Singular));
    }

    #[test]
    fn evaluate_word_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let xi = random_sl2(&mut rng);
        let w = parse_word("XY^-1", Rank::Two).unwrap();
        assert!(evaluate_word(&w, &[xi, xi]).unwrap().dist(&Mat2::identity()) <= 1e-12);

        let (a, b) = unipotent_pair();
        let comm = parse_word("XYX^-1Y^-1", Rank::Two).unwrap();
        assert_eq!(evaluate_word(&comm, &[a, b]).unwrap().trace(), c(3.0));

        let sq = parse_word("X^2", Rank::Two).unwrap();
        assert_eq!(evaluate_word(&sq, &[companion(c(3.0)), a]).unwrap().trace(), c(7.0));

        assert_eq!(evaluate_word(&Word::identity(Rank::Two), &[a, b]).unwrap(), Mat2::identity());
        assert!(matches!(evaluate_word(&sq, &[a]), Err(Sl2Error::MissingGenerator { .. })));
    }

    #[test]
    fn tau_and_char8_examples() {
        let id = Mat2::identity();
        assert_eq!(tau(&id, &id), CharTriple::new(c(2.0), c(2.0), c(2.0)));
        let (a, b) = unipotent_pair();
        assert_eq!(tau(&a, &b), CharTriple::new(c(2.0), c(2.0), c(3.0)));

        let i = Complex64::i();
        let a1 = Mat2::diag(i, -i);
        let a2 = Mat2::real(0.0, 1.0, -1.0, 0.0);
        let a3 = Mat2::new(c(0.0), i, i, c(0.0));
        let t = char8(&a1, &a2, &a3);
        let want = [0.0, 0.0, 0.0, 0.0, 0.0, 0.0, -2.0, 2.0];
        for (got, w) in t.0.iter().zip(want) {
            assert!((got - c(w)).norm() < 1e-15, "{t:?}");
        }
    }

    #[test]
    fn random_sl2_contract() {
        let a = random_sl2(&mut ChaCha8Rng::seed_from_u64(99));
        let b = random_sl2(&mut ChaCha8Rng::seed_from_u64(99));
        let other = random_sl2(&mut ChaCha8Rng::seed_from_u64(100));
        assert_eq!(a, b);
        assert_ne!(a, other);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10_000 {
            let m = random_sl2(&mut rng);
            assert!((m.det() - 1.0).norm() <= 1e-12, "{m:?}");
        }
    }

    #[test]
    fn companion_examples() {
        assert_eq!(companion(c(0.0)), Mat2::real(0.0, -1.0, 1.0, 0.0));
        let t = Complex64::new(0.3, -1.7);
        assert_eq!(companion(t).trace(), t);
        assert_eq!(companion(t).det(), c(1.0));
        // companion(2) − 𝕀 is nonzero nilpotent: single eigenvalue 1, one Jordan block
        let n = companion(c(2.0)) - Mat2::identity();
        assert_eq!(n * n, Mat2::zero());
        assert_ne!(n, Mat2::zero());
    }

    #[test]
    fn conjugate_to_companion_examples() {
        let g = companion(c(5.0));
        let h = conjugate_to_companion(&g).unwrap();
        assert!((h * g * h.inverse().unwrap()).dist(&g) <= 1e-8);

        let g = Mat2::diag(c(2.0), c(0.5));
        let h = conjugate_to_companion(&g).unwrap();
        assert!((h.det() - 1.0).norm() <= 1e-12);
        assert!((h * g * h.inverse().unwrap()).dist(&companion(c(2.5))) <= 1e-8);

        assert_eq!(conjugate_to_companion(&Mat2::identity()), Err(Sl2Error::CentralElement));
        assert_eq!(conjugate_to_companion(&-Mat2::identity()), Err(Sl2Error::CentralElement));

        // parabolic, trace 2 but not central
        let p = Mat2::real(1.0, 3.0, 0.0, 1.0);
        let h = conjugate_to_companion(&p).unwrap();
        assert!((h * p * h.inverse().unwrap()).dist(&companion(c(2.0))) <= 1e-8);
    }

    #[test]
    fn det_pencil_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let w0 = random_sl2(&mut rng);
        assert_eq!(det_pencil(&w0, &Mat2::zero()), [w0.det(), c(0.0), c(0.0)]);
        assert_eq!(det_pencil(&Mat2::identity(), &Mat2::identity()), [c(1.0), c(2.0), c(1.0)]);
    }

    #[test]
    fn json_shape() {
        let m = Mat2::new(Complex64::new(1.5, -2.0), c(0.0), c(3.0), Complex64::new(0.0, 1.0));
        let v = serde_json::to_value(m).unwrap();
        assert_eq!(v, serde_json::json!([[[1.5, -2.0], [0.0, 0.0]], [[3.0, 0.0], [0.0, 1.0]]]));
        let back: Mat2 = serde_json::from_value(v).unwrap();
        assert_eq!(back, m);
        let bad = serde_json::from_str::<RepPair>("[[[[2,0],[0,0]],[[0,0],[2,0]]], [[[1,0],[0,0]],[[0,0],[1,0]]]]");
        assert!(bad.is_err());
    }
}
