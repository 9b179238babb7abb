//! Trace calculus for SL(2,ℂ) character varieties.
//!
//! * [`freegroup`]: reduced words in free groups of rank 2 and 3.
//! * [`polyring`]: exact integer polynomials in trace variables.
//! * [`tracecalc`]: trace polynomials of rank-2 words, κ, and the Fricke relations.
//! * [`sl2`]: numeric 2×2 complex matrices, the oracle for everything symbolic.
//! * [`charvar`]: rank-2 lifts, irreducibility, the inverting involution, conjugators.
//! * [`charvar3`]: rank-3 Fricke checks, `t123` roots and lifts.

pub mod charvar;
pub mod charvar3;
pub mod freegroup;
pub mod json;
pub mod polyring;
pub mod sampling;
pub mod sl2;
pub mod tracecalc;
pub mod verify;

pub use charvar::{CharTriple, CharVarError};
pub use charvar3::{LiftBranch, RankThreeChar, SixTuple};
pub use freegroup::{parse_word, Generator, Rank, Symbol, Word, WordError};
pub use polyring::{poly_format, poly_parse, LaurentPoly, PolyError, TracePoly, Var};
pub use sl2::{Mat2, RepPair, RepTriple, Sl2Error};
pub use tracecalc::{trace_poly, TraceError, TraceTable};

/// Numeric tolerances shared by the oracle checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Allowed `|det − 1|` for a matrix to count as SL(2).
    pub det_tol: f64,
    /// Relative tolerance for symbolic-vs-numeric comparisons.
    pub oracle_tol: f64,
    /// `|κ − 2|` at or below this is treated as reducible.
    pub irr_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            det_tol: sl2::DEFAULT_DET_TOL,
            oracle_tol: sl2::DEFAULT_ORACLE_TOL,
            irr_tol: charvar::DEFAULT_IRR_TOL,
        }
    }
}
