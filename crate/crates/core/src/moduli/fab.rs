//! The bidegree pipeline: class of the relative singular locus, its
//! pushforward to the discriminant divisor class, the closed form of
//! that class, and the Chow-ring relation list.

use num_bigint::BigInt;
use num_traits::Zero;

use super::{fab_pic_ring, DivisorClassExpr, FabSetup, ModuliError};
use crate::chern::{binomial, chern_of_difference, euler_omega_twist, KClassRep};
use crate::gring::{Poly, Ring};
use crate::push::{pushforward_t, relation_coefficients, BundleRelation, RelationList};

fn ambient_ring(n: usize) -> Ring {
    let names: Vec<String> = (1..=n + 1).map(|i| format!("c{i}")).collect();
    let mut vars: Vec<(&str, u32)> = vec![("u", 1), ("v", 1), ("t", 1)];
    vars.extend(
        names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), (i + 1) as u32)),
    );
    Ring::new(&vars, (n + 1) as u32).expect("valid roster")
}

/// Ambient ring for the bidegree family: hyperplane classes `u` (degree-a
/// linear system), `v` (fiber of the forms bundle), `t` (projective
/// space), and the classes `c1..c{n+1}` of the standard representation.
/// Truncation `n+1`, the codimension of the singular locus.
pub fn fab_ring(s: &FabSetup) -> Ring {
    ambient_ring(s.n() as usize)
}

fn singular_class_for(a: u32, b: u32, n: u32) -> Result<Poly, ModuliError> {
    let n = n as usize;
    let ring = ambient_ring(n);
    let u = ring.var("u")?;
    let v = ring.var("v")?;
    let t = ring.var("t")?;
    let line_a = &u + &t.scale_i64(a as i64);
    let line_b = &v + &t.scale_i64(b as i64);
    let one = ring.one();
    // Conormal data of the two defining line bundles, rank 2.
    let conormal = KClassRep::new(2, &(&one - &line_a) * &(&one - &line_b))?;
    let omega = KClassRep::new(n as i64, euler_omega_twist(n)?.map_to_ring(&ring)?)?;
    let difference_part = chern_of_difference(&omega, &conormal, (n - 1) as u32)?;
    Ok(&(&line_a * &line_b) * &difference_part)
}

/// Class of the relative singular locus: the product of the complete
/// intersection class `(u+at)(v+bt)` with the degree-(n-1) Chern class of
/// the virtual difference "cotangent minus conormal". Homogeneous of
/// degree `n+1`.
pub fn f_singular_class(s: &FabSetup) -> Result<Poly, ModuliError> {
    singular_class_for(s.a(), s.b(), s.n())
}

fn pushforward_to_divisor(class: &Poly, n: usize) -> Result<DivisorClassExpr, ModuliError> {
    let rel = BundleRelation::standard(n, class.ring(), "t")?;
    let pushed = pushforward_t(class, &rel)?;
    DivisorClassExpr::from_poly(pushed.map_to_ring(&fab_pic_ring())?)
}

/// The discriminant divisor class `r_{a,b,n}(c1, u, v)`: pushforward of
/// the singular-locus class along the projective-space factor.
pub fn f_divisor_class(s: &FabSetup) -> Result<DivisorClassExpr, ModuliError> {
    divisor_class_for(s.a(), s.b(), s.n())
}

pub(super) fn divisor_class_for(a: u32, b: u32, n: u32) -> Result<DivisorClassExpr, ModuliError> {
    let class = singular_class_for(a, b, n)?;
    pushforward_to_divisor(&class, n as usize)
}

/// Which variant of the closed form to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FClosedForm {
    /// The corrected form: linear sums over `i+j+k = n-2` and a negated
    /// c1 part. This is the variant that matches the symbolic pipeline
    /// and is what [`f_closed_form`] evaluates.
    Corrected,
    /// The variant with linear sums over `i+j+k = n-1` and a positive
    /// c1 part; kept to document that it does not agree with the
    /// pipeline.
    Literal,
}

fn triple_sum(
    degree: i64,
    binom_top: i64,
    a: u32,
    b: u32,
    weight: impl Fn(i64, i64) -> BigInt,
) -> BigInt {
    let mut acc = BigInt::zero();
    if degree < 0 {
        return acc;
    }
    for k in 0..=degree {
        for i in 0..=degree - k {
            let j = degree - k - i;
            let sign = if k % 2 == 0 { 1 } else { -1 };
            let term = binomial(binom_top, k)
                * BigInt::from(a).pow(i as u32)
                * BigInt::from(b).pow(j as u32)
                * weight(i, j)
                * BigInt::from(sign);
            acc += term;
        }
    }
    acc
}

/// Closed form of the divisor class:
/// `(av + bu) F0 + ab (F1u u + F1v v + (F1c - F0) c1)`, with the F-sums
/// running over triples `i+j+k` of the indicated total. Identical to
/// [`f_divisor_class`] for the `Corrected` variant.
pub fn f_closed_form_variant(
    s: &FabSetup,
    variant: FClosedForm,
) -> Result<DivisorClassExpr, ModuliError> {
    let (a, b, n) = (s.a(), s.b(), i64::from(s.n()));
    let np1 = n + 1;
    let f0 = triple_sum(n - 1, np1, a, b, |_, _| BigInt::from(1));
    let linear_degree = match variant {
        FClosedForm::Corrected => n - 2,
        FClosedForm::Literal => n - 1,
    };
    let f1u = triple_sum(linear_degree, np1, a, b, |i, _| BigInt::from(i + 1));
    let f1v = triple_sum(linear_degree, np1, a, b, |_, j| BigInt::from(j + 1));
    let f1c_magnitude = triple_sum(linear_degree, n, a, b, |_, _| BigInt::from(1));
    let f1c = match variant {
        FClosedForm::Corrected => -f1c_magnitude,
        FClosedForm::Literal => f1c_magnitude,
    };

    let ab = BigInt::from(a) * BigInt::from(b);
    let coeff_u = BigInt::from(b) * &f0 + &ab * &f1u;
    let coeff_v = BigInt::from(a) * &f0 + &ab * &f1v;
    let coeff_c1 = &ab * (&f1c - &f0);

    let ring = fab_pic_ring();
    let poly = &(&ring.var("u")?.scale(&coeff_u) + &ring.var("v")?.scale(&coeff_v))
        + &ring.var("c1")?.scale(&coeff_c1);
    DivisorClassExpr::from_poly(poly)
}

/// The corrected closed form; pinned equal to the symbolic pipeline.
pub fn f_closed_form(s: &FabSetup) -> Result<DivisorClassExpr, ModuliError> {
    f_closed_form_variant(s, FClosedForm::Corrected)
}

/// Faithful-degree bound for the free variables `u` and `v`: powers of a
/// hyperplane class are only honest up to the dimension of the ambient
/// projective space, so full relation lists require
/// `n+1 <= min(dim P(W_a), rank V_{a,b} - 1)`.
fn fab_soundness_bound(s: &FabSetup) -> (BigInt, String) {
    let (a, b, n) = (i64::from(s.a()), i64::from(s.b()), i64::from(s.n()));
    let dim_pwa = binomial(n + a, a) - 1;
    let rank_v = binomial(n + b, b) - binomial(n + b - a, b - a);
    let fiber_dim = rank_v - 1;
    if dim_pwa <= fiber_dim {
        let detail = format!("dim of the degree-{a} linear system = {dim_pwa}");
        (dim_pwa, detail)
    } else {
        let detail = format!("fiber dimension of the forms bundle = {fiber_dim}");
        (fiber_dim, detail)
    }
}

/// The full list `xi_1..xi_{n+1}` of t-coefficients of the canonicalized
/// singular-locus class; the first `n` entries are Chow-ring relations.
pub fn f_relations(s: &FabSetup) -> Result<RelationList, ModuliError> {
    let needed = s.n() + 1;
    let (bound, detail) = fab_soundness_bound(s);
    if BigInt::from(needed) > bound {
        return Err(ModuliError::RelationRangeUnsound {
            needed,
            bound,
            detail,
        });
    }
    let class = f_singular_class(s)?;
    let rel = BundleRelation::standard(s.n() as usize, class.ring(), "t")?;
    Ok(relation_coefficients(&class, &rel)?)
}
