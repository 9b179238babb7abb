//! Rank-three trace coordinates: the Fricke sum and product relations, the
//! quadratic satisfied by `t123`, and an explicit lift of any six-tuple
//! `(t1, t2, t3, t12, t23, t13)` to a matrix triple.

use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::charvar::{kappa_value, lift_char, CharTriple};
use crate::polyring::TracePoly;
use crate::sl2::{commutator_bracket, companion, det_pencil, Mat2, RepTriple, Sl2Error};
use crate::tracecalc::{fricke_product_rhs, fricke_sum_rhs};

/// `(t1, t2, t3, t12, t23, t13, t123, t132)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[[f64; 2]; 8]", into = "[[f64; 2]; 8]")]
pub struct RankThreeChar(pub [Complex64; 8]);

/// `(t1, t2, t3, t12, t23, t13)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[[f64; 2]; 6]", into = "[[f64; 2]; 6]")]
pub struct SixTuple(pub [Complex64; 6]);

macro_rules! complex_array_serde {
    ($ty:ident, $n:literal) => {
        impl TryFrom<[[f64; 2]; $n]> for $ty {
            type Error = Sl2Error;
            fn try_from(v: [[f64; 2]; $n]) -> Result<$ty, Sl2Error> {
                if v.iter().flatten().any(|x| !x.is_finite()) {
                    return Err(Sl2Error::NonFinite);
                }
                Ok($ty(v.map(|p| Complex64::new(p[0], p[1]))))
            }
        }
        impl From<$ty> for [[f64; 2]; $n] {
            fn from(t: $ty) -> Self {
                t.0.map(|z| [z.re, z.im])
            }
        }
    };
}
complex_array_serde!(RankThreeChar, 8);
complex_array_serde!(SixTuple, 6);

impl RankThreeChar {
    pub fn six(&self) -> SixTuple {
        let t = self.0;
        SixTuple([t[0], t[1], t[2], t[3], t[4], t[5]])
    }

    pub fn t123(&self) -> Complex64 {
        self.0[6]
    }

    pub fn t132(&self) -> Complex64 {
        self.0[7]
    }

    /// `1 + max|tᵢ|⁴`, the scale the Fricke residuals are measured against.
    pub fn residual_scale(&self) -> f64 {
        1.0 + self.0.iter().map(|z| z.norm()).fold(0.0, f64::max).powi(4)
    }
}

impl SixTuple {
    pub fn real(t: [f64; 6]) -> SixTuple {
        SixTuple(t.map(Complex64::from))
    }

    pub fn t1(&self) -> Complex64 {
        self.0[0]
    }
    pub fn t2(&self) -> Complex64 {
        self.0[1]
    }
    pub fn t3(&self) -> Complex64 {
        self.0[2]
    }
    pub fn t12(&self) -> Complex64 {
        self.0[3]
    }
    pub fn t23(&self) -> Complex64 {
        self.0[4]
    }
    pub fn t13(&self) -> Complex64 {
        self.0[5]
    }

    /// Largest coordinate difference.
    pub fn dist(&self, other: &SixTuple) -> f64 {
        self.0.iter().zip(other.0).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    pub fn with_roots(&self, t123: Complex64, t132: Complex64) -> RankThreeChar {
        let t = self.0;
        RankThreeChar([t[0], t[1], t[2], t[3], t[4], t[5], t123, t132])
    }
}

fn sum_poly() -> &'static TracePoly {
    static P: OnceLock<TracePoly> = OnceLock::new();
    P.get_or_init(fricke_sum_rhs)
}

fn product_poly() -> &'static TracePoly {
    static Q: OnceLock<TracePoly> = OnceLock::new();
    Q.get_or_init(fricke_product_rhs)
}

/// `P(s)`, the value `t123 + t132` must take.
pub fn fricke_sum(s: &SixTuple) -> Complex64 {
    sum_poly().eval_six(&s.0).expect("six variables bound")
}

/// `Q(s)`, the value `t123 · t132` must take.
pub fn fricke_product(s: &SixTuple) -> Complex64 {
    product_poly().eval_six(&s.0).expect("six variables bound")
}

/// `(t123 + t132 − P, t123·t132 − Q)`.
pub fn verify_fricke(c: &RankThreeChar) -> (Complex64, Complex64) {
    let s = c.six();
    (c.t123() + c.t132() - fricke_sum(&s), c.t123() * c.t132() - fricke_product(&s))
}

/// Order by real part, then imaginary part, largest first.
fn descending(a: Complex64, b: Complex64) -> (Complex64, Complex64) {
    if (a.re, a.im) >= (b.re, b.im) {
        (a, b)
    } else {
        (b, a)
    }
}

/// Roots of `λ² − bλ + c`, cancellation-free.
fn monic_roots(b: Complex64, c: Complex64) -> (Complex64, Complex64) {
    let disc = (b * b - 4.0 * c).sqrt();
    // pick the sign that adds magnitudes
    let big = if (b.conj() * disc).re >= 0.0 { (b + disc) / 2.0 } else { (b - disc) / 2.0 };
    if big == Complex64::new(0.0, 0.0) {
        return (big, big);
    }
    (big, c / big)
}

/// The two possible values of `t123` over a six-tuple, largest first.
pub fn t123_roots(s: &SixTuple) -> (Complex64, Complex64) {
    let (a, b) = monic_roots(fricke_sum(s), fricke_product(s));
    descending(a, b)
}

/// Which construction [`lift_char3`] used.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LiftBranch {
    /// `κ(t1, t2, t12) ≠ 2`: slice pair plus a determinant-one point on the
    /// affine line of solutions for `A₃`.
    Irreducible,
    /// Reducible, `t12 = a₁a₂ + (a₁a₂)⁻¹`.
    ReducibleBothPlus,
    /// Reducible, `t12 = a₁a₂⁻¹ + a₁⁻¹a₂`.
    ReduciblePlusMinus,
}

impl LiftBranch {
    pub fn name(self) -> &'static str {
        match self {
            LiftBranch::Irreducible => "irreducible",
            LiftBranch::ReducibleBothPlus => "reducible_both_plus",
            LiftBranch::ReduciblePlusMinus => "reducible_plus_minus",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lift3 {
    pub triple: RepTriple,
    pub branch: LiftBranch,
}

/// Pieces of the irreducible-branch construction, exposed for testing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PencilLift {
    pub a1: Mat2,
    pub a2: Mat2,
    /// A particular solution of the three trace conditions.
    pub w0: Mat2,
    /// `[A₁, A₂]`, spanning the solution directions.
    pub kernel: Mat2,
    pub pencil: [Complex64; 3],
    pub s: Complex64,
}

/// The linear functionals `W ↦ tr W`, `tr(A₂W)`, `tr(A₁W)` on the entries of `W`.
fn trace_conditions(a1: &Mat2, a2: &Mat2) -> [[Complex64; 4]; 3] {
    // tr(AW) = a·w11 + b·w21 + c·w12 + d·w22
    let row = |m: &Mat2| [m.a, m.c, m.b, m.d];
    [row(&Mat2::identity()), row(a2), row(a1)]
}

/// One solution of an underdetermined 3×4 system by Gaussian elimination,
/// pivoting on the largest remaining entry. Free unknowns are set to zero.
fn particular_solution(mut m: [[Complex64; 4]; 3], mut rhs: [Complex64; 3]) -> Option<[Complex64; 4]> {
    let mut pivot_col = [0usize; 3];
    let mut used = [false; 4];
    for r in 0..3 {
        let mut best = (0.0, r, 0);
        for (i, row) in m.iter().enumerate().skip(r) {
            for (j, v) in row.iter().enumerate() {
                if !used[j] && v.norm() > best.0 {
                    best = (v.norm(), i, j);
                }
            }
        }
        let (mag, pr, pc) = best;
        if mag == 0.0 {
            return None;
        }
        m.swap(r, pr);
        rhs.swap(r, pr);
        used[pc] = true;
        pivot_col[r] = pc;
        for i in 0..3 {
            if i != r {
                let f = m[i][pc] / m[r][pc];
                let pivot_row = m[r];
                for (dst, src) in m[i].iter_mut().zip(pivot_row) {
                    *dst -= f * src;
                }
                rhs[i] -= f * rhs[r];
            }
        }
    }
    let mut w = [Complex64::new(0.0, 0.0); 4];
    for r in 0..3 {
        w[pivot_col[r]] = rhs[r] / m[r][pivot_col[r]];
    }
    Some(w)
}

/// Smaller-magnitude root of `c₂s² + c₁s + c₀ = 0` (`c₂ ≠ 0`); ties go to the
/// larger real part, then the larger imaginary part.
fn small_root(c0: Complex64, c1: Complex64, c2: Complex64) -> Complex64 {
    let (r1, r2) = monic_roots(-c1 / c2, c0 / c2);
    let key = |z: Complex64| (z.norm(), -z.re, -z.im);
    if key(r1) <= key(r2) {
        r1
    } else {
        r2
    }
}

/// The irreducible-branch construction; `None` if the trace conditions are
/// dependent or the pencil is degenerate.
pub fn pencil_lift(s: &SixTuple) -> Option<PencilLift> {
    let slice = lift_char(&CharTriple::new(s.t1(), s.t2(), s.t12()));
    let (a1, a2) = (slice.xi, slice.eta);
    let w = particular_solution(trace_conditions(&a1, &a2), [s.t3(), s.t23(), s.t13()])?;
    let w0 = Mat2::new(w[0], w[1], w[2], w[3]);
    let kernel = commutator_bracket(&a1, &a2);
    let pencil = det_pencil(&w0, &kernel);
    if pencil[2] == Complex64::new(0.0, 0.0) {
        return None;
    }
    let root = small_root(pencil[0] - 1.0, pencil[1], pencil[2]);
    Some(PencilLift { a1, a2, w0, kernel, pencil, s: root })
}

/// `a` with `a + a⁻¹ = t`, principal branch.
fn eigen_root(t: Complex64) -> Complex64 {
    (t + (t * t - 4.0).sqrt()) / 2.0
}

fn reducible_lift(s: &SixTuple) -> (RepTriple, LiftBranch) {
    let a1 = eigen_root(s.t1());
    let a2 = eigen_root(s.t2());
    let both_plus = (s.t12() - (a1 * a2 + 1.0 / (a1 * a2))).norm();
    let plus_minus = (s.t12() - (a1 / a2 + a2 / a1)).norm();
    let m2 = Mat2::new(a2, s.t23() - a2 * s.t3(), 0.0.into(), 1.0 / a2);
    let m3 = companion(s.t3());
    if both_plus <= plus_minus {
        let m1 = Mat2::new(a1, s.t13() - a1 * s.t3(), 0.0.into(), 1.0 / a1);
        (RepTriple([m1, m2, m3]), LiftBranch::ReducibleBothPlus)
    } else {
        let m1 = Mat2::new(1.0 / a1, s.t13() - s.t3() / a1, 0.0.into(), a1);
        (RepTriple([m1, m2, m3]), LiftBranch::ReduciblePlusMinus)
    }
}

/// A triple `(A₁, A₂, A₃)` whose six short traces are `s`.
///
/// If `|κ(t1, t2, t12) − 2| > irr_tol`, `(A₁, A₂)` is the rank-two slice lift
/// and `A₃ = W₀ + s[A₁, A₂]`. Here `W₀` solves the three linear trace
/// conditions, and `s` is the smaller root of `det(W₀ + s[A₁, A₂]) = 1`.
/// Otherwise an explicit upper-triangular triple is returned.
pub fn lift_char3(s: &SixTuple, irr_tol: f64) -> Lift3 {
    let kappa = kappa_value(&CharTriple::new(s.t1(), s.t2(), s.t12()));
    if (kappa - 2.0).norm() > irr_tol {
        if let Some(p) = pencil_lift(s) {
            let a3 = p.w0 + p.kernel.scale(p.s);
            return Lift3 { triple: RepTriple([p.a1, p.a2, a3]), branch: LiftBranch::Irreducible };
        }
    }
    let (triple, branch) = reducible_lift(s);
    Lift3 { triple, branch }
}
