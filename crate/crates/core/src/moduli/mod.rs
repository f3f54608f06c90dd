//! The two discriminant pipelines — bidegree-(a,b) codimension-two
//! complete intersections and equidegree complete intersections of m
//! degree-d hypersurfaces — with their divisor classes, Chow-ring
//! relation lists, Picard presentations, and the genus 3/4/5 reports.

mod fab;
mod gdmn;
mod genus;

pub use fab::{
    f_closed_form, f_closed_form_variant, f_divisor_class, f_relations, f_singular_class, fab_ring,
    FClosedForm,
};
pub use gdmn::{
    alpha_factor, g_closed_form, g_divisor_class, g_pushforward_raw, g_relations, g_singular_class,
    gdmn_ring,
};
pub use genus::{
    divisor_multiple, genus_pipeline, quadric_discriminant_class, DivisorMultiple, GeneratorInfo,
    PicardReport, AXIOM_CODIMENSION_TWO, AXIOM_HODGE_IDENTIFICATION, AXIOM_LAMBDA1_NONTORSION,
    ERRATUM_CLOSED_FORM, ERRATUM_QUADRIC_CLASS,
};

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::abgroup::{GroupError, GroupPresentation, IntMatrix};
use crate::chern::ChernError;
use crate::gring::{Poly, Ring, RingError};
use crate::push::PushError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModuliError {
    #[error("requires 0 < a < b, got a = {a}, b = {b}")]
    InvalidBidegree { a: u32, b: u32 },
    #[error("requires n > 2, got n = {n}")]
    AmbientTooSmall { n: u32 },
    #[error("requires d > 0")]
    InvalidDegree,
    #[error("requires 0 < m < n, got m = {m}, n = {n}")]
    InvalidCodimension { m: u32, n: u32 },
    #[error("characteristic must be 0 or a prime, got {0}")]
    InvalidCharacteristic(u64),
    #[error("torsor `{torsor}` does not apply to the {family} family")]
    TorsorMismatch {
        torsor: &'static str,
        family: &'static str,
    },
    #[error(
        "relation list unsound for these parameters: truncation degree {needed} exceeds the \
         free-variable bound {bound} ({detail})"
    )]
    RelationRangeUnsound {
        needed: u32,
        bound: BigInt,
        detail: String,
    },
    #[error("pushforward `{class}` is not exactly divisible by alpha = {alpha}")]
    NonExactAlphaDivision { alpha: u8, class: String },
    #[error("divisor class must be zero or homogeneous of degree 1, got `{0}`")]
    NotDegreeOne(String),
    #[error("divisor class `{class}` involves `{var}`, which is not a presentation generator")]
    NotInGeneratorSpan { class: String, var: String },
    #[error("quotient is not free of rank one")]
    NotFreeRankOne,
    #[error("the image of c1 does not generate the quotient")]
    GeneratorNotPrimitive,
    #[error("expected a finite cyclic quotient generated by c1")]
    NotCyclicOnC1,
    #[error("unsupported genus {0}: the pipelines cover genus 3, 4 and 5")]
    UnsupportedGenus(u8),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Chern(#[from] ChernError),
    #[error(transparent)]
    Push(#[from] PushError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut f = 3u64;
    while f.saturating_mul(f) <= p {
        if p.is_multiple_of(f) {
            return false;
        }
        f += 2;
    }
    true
}

fn validate_characteristic(c: u64) -> Result<(), ModuliError> {
    if c == 0 || is_prime(c) {
        Ok(())
    } else {
        Err(ModuliError::InvalidCharacteristic(c))
    }
}

/// Parameters of the bidegree family: complete intersections of
/// hypersurfaces of degrees `a < b` in projective n-space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FabSetup {
    a: u32,
    b: u32,
    n: u32,
}

impl FabSetup {
    pub fn new(a: u32, b: u32, n: u32) -> Result<Self, ModuliError> {
        if a == 0 || a >= b {
            return Err(ModuliError::InvalidBidegree { a, b });
        }
        if n <= 2 {
            return Err(ModuliError::AmbientTooSmall { n });
        }
        Ok(FabSetup { a, b, n })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn n(&self) -> u32 {
        self.n
    }
}

/// Parameters of the equidegree family: complete intersections of `m`
/// hypersurfaces of degree `d` in projective n-space, over a base field
/// whose characteristic only matters through equality with 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GdmnSetup {
    d: u32,
    m: u32,
    n: u32,
    characteristic: u64,
}

impl GdmnSetup {
    pub fn new(d: u32, m: u32, n: u32, characteristic: u64) -> Result<Self, ModuliError> {
        if d == 0 {
            return Err(ModuliError::InvalidDegree);
        }
        if m == 0 || m >= n {
            return Err(ModuliError::InvalidCodimension { m, n });
        }
        validate_characteristic(characteristic)?;
        Ok(GdmnSetup {
            d,
            m,
            n,
            characteristic,
        })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    /// Codimension of the singular locus inside the fiber direction:
    /// `e = n - m + 1`, always at least 2.
    pub fn e(&self) -> u32 {
        self.n - self.m + 1
    }
}

/// Generator roster for divisor classes of the bidegree family. The
/// variable order fixes the canonical print order `u, v, c1`.
pub fn fab_pic_ring() -> Ring {
    Ring::new(&[("u", 1), ("v", 1), ("c1", 1)], 1).expect("valid roster")
}

/// Generator roster for divisor classes of the equidegree family, printed
/// in the order `s1, c1`.
pub fn gdmn_pic_ring() -> Ring {
    Ring::new(&[("s1", 1), ("c1", 1)], 1).expect("valid roster")
}

/// A degree-1 class over a small generator roster; the shape of every
/// divisor class this crate reports.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClassExpr {
    poly: Poly,
}

impl DivisorClassExpr {
    pub fn from_poly(poly: Poly) -> Result<Self, ModuliError> {
        if !poly.is_homogeneous_of(1) {
            return Err(ModuliError::NotDegreeOne(poly.to_string()));
        }
        Ok(DivisorClassExpr { poly })
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn coefficient(&self, var: &str) -> Result<BigInt, ModuliError> {
        Ok(self.poly.coefficient(&[(var, 1)])?)
    }

    /// Coefficients as a map of generator name to value (zeros omitted).
    pub fn coefficients(&self) -> BTreeMap<String, BigInt> {
        self.poly.linear_coefficients()
    }

    /// Coefficient vector aligned with `generators`; errors if the class
    /// involves a variable outside the list.
    pub fn vector(&self, generators: &[String]) -> Result<Vec<BigInt>, ModuliError> {
        let coeffs = self.coefficients();
        for var in coeffs.keys() {
            if !generators.iter().any(|g| g == var) {
                return Err(ModuliError::NotInGeneratorSpan {
                    class: self.poly.to_string(),
                    var: var.clone(),
                });
            }
        }
        Ok(generators
            .iter()
            .map(|g| coeffs.get(g).cloned().unwrap_or_else(BigInt::zero))
            .collect())
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }
}

impl fmt::Display for DivisorClassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// Which torsor quotient to apply on top of a family presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Torsor {
    /// The plain family presentation.
    None,
    /// Canonical-polarization torsor over the bidegree family: adds the
    /// relation `c1 - u - v`.
    Q,
    /// Canonical-polarization torsor over the equidegree family: adds the
    /// relation `c1 - s1`.
    P,
}

impl Torsor {
    pub fn label(&self) -> &'static str {
        match self {
            Torsor::None => "none",
            Torsor::Q => "Q",
            Torsor::P => "P",
        }
    }
}

/// Presentation of the Picard group of the bidegree family on the
/// generators `(c1, u, v)`, optionally quotiented by the Q-torsor
/// relation `c1 - u - v`.
pub fn picard_presentation_fab(
    s: &FabSetup,
    torsor: Torsor,
) -> Result<GroupPresentation, ModuliError> {
    if torsor == Torsor::P {
        return Err(ModuliError::TorsorMismatch {
            torsor: "P",
            family: "bidegree",
        });
    }
    let generators: Vec<String> = vec!["c1".into(), "u".into(), "v".into()];
    let divisor = f_divisor_class(s)?;
    let mut rows = divisor.vector(&generators)?;
    let mut nrows = 1;
    if torsor == Torsor::Q {
        rows.extend([BigInt::from(1), BigInt::from(-1), BigInt::from(-1)]);
        nrows += 1;
    }
    let relations = IntMatrix::new(nrows, generators.len(), rows)?;
    Ok(GroupPresentation::new(generators, relations)?)
}

/// Presentation of the Picard group of the equidegree family on the
/// generators `(c1, s1)`, optionally quotiented by the P-torsor relation
/// `c1 - s1`.
pub fn picard_presentation_gdmn(
    s: &GdmnSetup,
    torsor: Torsor,
) -> Result<GroupPresentation, ModuliError> {
    if torsor == Torsor::Q {
        return Err(ModuliError::TorsorMismatch {
            torsor: "Q",
            family: "equidegree",
        });
    }
    let generators: Vec<String> = vec!["c1".into(), "s1".into()];
    let divisor = g_divisor_class(s)?;
    let mut rows = divisor.vector(&generators)?;
    let mut nrows = 1;
    if torsor == Torsor::P {
        rows.extend([BigInt::from(1), BigInt::from(-1)]);
        nrows += 1;
    }
    let relations = IntMatrix::new(nrows, generators.len(), rows)?;
    Ok(GroupPresentation::new(generators, relations)?)
}
