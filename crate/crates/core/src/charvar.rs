//! Rank-two character variety: the commutator trace κ, irreducibility, explicit
//! lifts of trace triples to matrix pairs, the inverting involution, and
//! recovery of the conjugator between two pairs with equal characters.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sl2::{commutator_bracket, companion, tau, Mat2, RepPair, Sl2Error};

pub const DEFAULT_IRR_TOL: f64 = 1e-8;
/// `|det [ξ, η]|` at or below this means the pair is reducible.
pub const REDUCIBLE_DET: f64 = 1e-12;
pub const CONJUGATOR_TRACE_TOL: f64 = 1e-8;
pub const CONJUGATOR_ACTION_TOL: f64 = 1e-7;
/// Entries smaller than this are skipped when fixing the sign of a conjugator.
pub const SIGN_THRESHOLD: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CharVarError {
    #[error("pair is reducible (kappa = 2)")]
    ReduciblePair,
    #[error("pairs are not conjugate")]
    NotConjugate,
    #[error(transparent)]
    Matrix(#[from] Sl2Error),
}

/// `(tr ξ, tr η, tr ξη)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[[f64; 2]; 3]", into = "[[f64; 2]; 3]")]
pub struct CharTriple {
    pub x: Complex64,
    pub y: Complex64,
    pub z: Complex64,
}

impl CharTriple {
    pub fn new(x: Complex64, y: Complex64, z: Complex64) -> CharTriple {
        CharTriple { x, y, z }
    }

    pub fn real(x: f64, y: f64, z: f64) -> CharTriple {
        CharTriple::new(x.into(), y.into(), z.into())
    }

    pub fn as_array(&self) -> [Complex64; 3] {
        [self.x, self.y, self.z]
    }

    /// Largest coordinate difference.
    pub fn dist(&self, other: &CharTriple) -> f64 {
        self.as_array().iter().zip(other.as_array()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

impl TryFrom<[[f64; 2]; 3]> for CharTriple {
    type Error = Sl2Error;
    fn try_from(v: [[f64; 2]; 3]) -> Result<CharTriple, Sl2Error> {
        if v.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Sl2Error::NonFinite);
        }
        let z = |p: [f64; 2]| Complex64::new(p[0], p[1]);
        Ok(CharTriple::new(z(v[0]), z(v[1]), z(v[2])))
    }
}

impl From<CharTriple> for [[f64; 2]; 3] {
    fn from(c: CharTriple) -> Self {
        c.as_array().map(|z| [z.re, z.im])
    }
}

/// `x² + y² + z² − xyz − 2`.
pub fn kappa_value(c: &CharTriple) -> Complex64 {
    c.x * c.x + c.y * c.y + c.z * c.z - c.x * c.y * c.z - 2.0
}

/// The root `ζ` of `ζ + ζ⁻¹ = t` with `|ζ| ≥ 1`, principal branch otherwise.
pub(crate) fn unit_root(t: Complex64) -> Complex64 {
    let disc = (t * t - 4.0).sqrt();
    let zeta = (t + disc) / 2.0;
    if zeta.norm() < 1.0 {
        (t - disc) / 2.0
    } else {
        zeta
    }
}

/// The slice matrix `[[0, ζ], [−ζ⁻¹, t]]` with `ζ + ζ⁻¹ = s`.
///
/// Paired with `companion(x)` it has `tr(companion(x) · slice) = s`.
pub(crate) fn slice_matrix(t: Complex64, s: Complex64) -> Mat2 {
    let zeta = unit_root(s);
    Mat2::new(0.0.into(), zeta, -1.0 / zeta, t)
}

/// An explicit pair with `τ(ξ, η) = c`.
///
/// `ξ = [[x, −1], [1, 0]]`, `η = [[0, ζ], [−ζ⁻¹, y]]` with `ζ + ζ⁻¹ = z`.
pub fn lift_char(c: &CharTriple) -> RepPair {
    RepPair { xi: companion(c.x), eta: slice_matrix(c.y, c.z) }
}

pub fn is_irreducible_char(c: &CharTriple, irr_tol: f64) -> bool {
    (kappa_value(c) - 2.0).norm() > irr_tol
}

pub fn is_irreducible(p: &RepPair, irr_tol: f64) -> bool {
    is_irreducible_char(&tau(&p.xi, &p.eta), irr_tol)
}

/// `g ∈ SL(2,ℂ)` conjugating `(ξ, η)` to `(ξ⁻¹, η⁻¹)`.
///
/// `g = μ[ξ, η]` with `μ² det[ξ, η] = 1`; `g` has trace zero, so `g² = −𝕀`.
pub fn inverting_element(p: &RepPair) -> Result<Mat2, CharVarError> {
    let l = commutator_bracket(&p.xi, &p.eta);
    let det = l.det();
    if det.norm() <= REDUCIBLE_DET {
        return Err(CharVarError::ReduciblePair);
    }
    let mu = (1.0 / det).sqrt();
    Ok(l.scale(mu))
}

/// Flip the overall sign so the first entry above [`SIGN_THRESHOLD`] has
/// nonnegative real part (nonnegative imaginary part when the real part is 0).
pub fn normalize_sign(g: Mat2) -> Mat2 {
    let lead = g.entries().into_iter().find(|z| z.norm() > SIGN_THRESHOLD);
    match lead {
        Some(z) if z.re < 0.0 || (z.re == 0.0 && z.im < 0.0) => -g,
        _ => g,
    }
}

/// Rows of the linear map `g ↦ (gA − Bg)` on the entries `(g11, g12, g21, g22)`.
fn commutation_rows(a: &Mat2, b: &Mat2, out: &mut DMatrix<Complex64>, row0: usize) {
    let a = [[a.a, a.b], [a.c, a.d]];
    let b = [[b.a, b.b], [b.c, b.d]];
    for i in 0..2 {
        for j in 0..2 {
            let r = row0 + 2 * i + j;
            for k in 0..2 {
                out[(r, 2 * i + k)] += a[k][j];
                out[(r, 2 * k + j)] -= b[i][k];
            }
        }
    }
}

/// Find `g ∈ SL(2,ℂ)` with `g·p = q`, i.e. `gξg⁻¹ = ξ′` and `gηg⁻¹ = η′`.
///
/// Solves the homogeneous system `gξ − ξ′g = 0`, `gη − η′g = 0` by taking its
/// smallest singular direction, then rescales to determinant one. For an
/// irreducible `p` the answer is unique up to sign; see [`normalize_sign`].
pub fn conjugator(p: &RepPair, q: &RepPair, irr_tol: f64) -> Result<Mat2, CharVarError> {
    if !is_irreducible(p, irr_tol) {
        return Err(CharVarError::ReduciblePair);
    }
    let tp = tau(&p.xi, &p.eta);
    let tq = tau(&q.xi, &q.eta);
    let scale = 1.0 + tp.as_array().iter().map(|z| z.norm()).fold(0.0, f64::max);
    if tp.dist(&tq) > CONJUGATOR_TRACE_TOL * scale {
        return Err(CharVarError::NotConjugate);
    }

    let mut system = DMatrix::<Complex64>::zeros(8, 4);
    commutation_rows(&p.xi, &q.xi, &mut system, 0);
    commutation_rows(&p.eta, &q.eta, &mut system, 4);
    let svd = system.svd(false, true);
    let v_t = svd.v_t.as_ref().expect("requested V^H");
    let smallest = (0..svd.singular_values.len())
        .min_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j]))
        .expect("four singular values");
    // rows of V^H are conjugated right singular vectors
    let v: Vec<Complex64> = (0..4).map(|k| v_t[(smallest, k)].conj()).collect();
    let g = Mat2::new(v[0], v[1], v[2], v[3]);
    let det = g.det();
    if det.norm() <= crate::sl2::SINGULAR_DET {
        return Err(CharVarError::NotConjugate);
    }
    let g = normalize_sign(g.scale(1.0 / det.sqrt()));

    let gi = g.adjugate();
    let residual = (g * p.xi * gi).dist(&q.xi).max((g * p.eta * gi).dist(&q.eta));
    if residual > CONJUGATOR_ACTION_TOL {
        return Err(CharVarError::NotConjugate);
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2::random_sl2;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn unipotent() -> RepPair {
        RepPair { xi: Mat2::real(1.0, 1.0, 0.0, 1.0), eta: Mat2::real(1.0, 0.0, 1.0, 1.0) }
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa_value(&CharTriple::real(2.0, 2.0, 2.0)), c(2.0));
        assert_eq!(kappa_value(&CharTriple::real(0.0, 0.0, 0.0)), c(-2.0));
        assert_eq!(kappa_value(&CharTriple::real(2.0, 2.0, 3.0)), c(3.0));
    }

    #[test]
    fn lift_examples() {
        let p = lift_char(&CharTriple::real(2.0, 2.0, 2.0));
        assert_eq!(p.xi, Mat2::real(2.0, -1.0, 1.0, 0.0));
        assert_eq!(p.eta, Mat2::real(0.0, 1.0, -1.0, 2.0));
        assert_eq!(p.xi * p.eta, Mat2::identity());

        let p = lift_char(&CharTriple::real(0.0, 0.0, 0.0));
        assert!((p.eta.b - Complex64::i()).norm() < 1e-15);
        assert!(tau(&p.xi, &p.eta).dist(&CharTriple::real(0.0, 0.0, 0.0)) <= 1e-12);
        assert!((p.eta.det() - 1.0).norm() <= 1e-12);
    }

    #[test]
    fn irreducibility_examples() {
        let (a, b) = (2.0, 3.0);
        let upper = RepPair { xi: Mat2::real(a, 1.0, 0.0, 1.0 / a), eta: Mat2::real(b, 1.0, 0.0, 1.0 / b) };
        assert!(!is_irreducible(&upper, DEFAULT_IRR_TOL));
        let t = CharTriple::real(a + 1.0 / a, b + 1.0 / b, a * b + 1.0 / (a * b));
        assert!((kappa_value(&t) - 2.0).norm() <= 1e-12);
        assert!(is_irreducible(&unipotent(), DEFAULT_IRR_TOL));
        let id = RepPair { xi: Mat2::identity(), eta: Mat2::identity() };
        assert!(!is_irreducible(&id, DEFAULT_IRR_TOL));
    }

    #[test]
    fn inverting_element_examples() {
        let p = unipotent();
        let g = inverting_element(&p).unwrap();
        let i = Complex64::i();
        assert!(g.dist(&Mat2::diag(i, -i)) < 1e-15);
        let conj = g * p.xi * g.inverse().unwrap();
        assert!(conj.dist(&Mat2::real(1.0, -1.0, 0.0, 1.0)) < 1e-15);

        let xi = random_sl2(&mut ChaCha8Rng::seed_from_u64(3));
        let commuting = RepPair { xi, eta: xi.inverse().unwrap() };
        assert_eq!(inverting_element(&commuting), Err(CharVarError::ReduciblePair));
    }

    #[test]
    fn conjugator_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let p = RepPair { xi: random_sl2(&mut rng), eta: random_sl2(&mut rng) };
        assert!(conjugator(&p, &p, DEFAULT_IRR_TOL).unwrap().dist(&Mat2::identity()) <= 1e-9);

        let h = random_sl2(&mut rng);
        let q = p.conjugated_by(&h).unwrap();
        let g = conjugator(&p, &q, DEFAULT_IRR_TOL).unwrap();
        assert!(g.dist(&h).min(g.dist(&-h)) <= 1e-6);

        let other = RepPair { xi: random_sl2(&mut rng), eta: random_sl2(&mut rng) };
        assert_eq!(conjugator(&p, &other, DEFAULT_IRR_TOL), Err(CharVarError::NotConjugate));

        let id = RepPair { xi: Mat2::identity(), eta: Mat2::identity() };
        assert_eq!(conjugator(&id, &id, DEFAULT_IRR_TOL), Err(CharVarError::ReduciblePair));
    }

    #[test]
    fn sign_normalization() {
        let g = Mat2::real(-1.0, 2.0, 0.0, -1.0);
        assert_eq!(normalize_sign(g), -g);
        let g = Mat2::new(c(1e-12), Complex64::new(0.0, -1.0), c(0.0), c(1.0));
        assert_eq!(normalize_sign(g), -g);
        let g = Mat2::identity();
        assert_eq!(normalize_sign(g), g);
    }
}
