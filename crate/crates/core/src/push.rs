//! Canonical reduction modulo the projective-bundle relation
//! `sum_{i=0}^{n+1} c_i t^{n+1-i} = 0` and pushforward along the
//! projective-space factor (reading off the `t^n` coefficient).

use thiserror::Error;

use crate::gring::{Poly, Ring, RingError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PushError {
    #[error("class must be homogeneous of total degree {expected}")]
    NotHomogeneous { expected: u32 },
    #[error("relation needs {expected} Chern entries (c_0..c_{top}), got {found}")]
    WrongChernCount {
        expected: usize,
        top: usize,
        found: usize,
    },
    #[error("relation entries must share one ring")]
    MixedRings,
    #[error("leading Chern entry c_0 must be 1")]
    BadLeadingEntry,
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// The data of a rank-(n+1) projective bundle: fiber dimension `n`,
/// Chern entries `c_0 = 1, c_1, ..., c_{n+1}`, and the name of the fiber
/// hyperplane variable. The defining relation is
/// `sum_i c_i t^{n+1-i} = 0`.
#[derive(Debug, Clone)]
pub struct BundleRelation {
    n: usize,
    chern: Vec<Poly>,
    tvar: String,
}

impl BundleRelation {
    pub fn new(n: usize, chern: Vec<Poly>, tvar: &str) -> Result<Self, PushError> {
        if chern.len() != n + 2 {
            return Err(PushError::WrongChernCount {
                expected: n + 2,
                top: n + 1,
                found: chern.len(),
            });
        }
        let ring = chern[0].ring().clone();
        if chern.iter().any(|c| c.ring() != &ring) {
            return Err(PushError::MixedRings);
        }
        if !chern[0].is_one() {
            return Err(PushError::BadLeadingEntry);
        }
        ring.index_of(tvar)
            .ok_or_else(|| RingError::UnknownVariable(tvar.to_string()))?;
        Ok(BundleRelation {
            n,
            chern,
            tvar: tvar.to_string(),
        })
    }

    /// The generic relation where `c_i` is the ring variable `c{i}`.
    pub fn standard(n: usize, ring: &Ring, tvar: &str) -> Result<Self, PushError> {
        let mut chern = vec![ring.one()];
        for i in 1..=n + 1 {
            chern.push(ring.var(&format!("c{i}"))?);
        }
        BundleRelation::new(n, chern, tvar)
    }

    pub fn fiber_dim(&self) -> usize {
        self.n
    }

    pub fn tvar(&self) -> &str {
        &self.tvar
    }

    /// `sum_{i=0}^{n+1} c_i t^{n+1-i}`, which is zero in the Chow ring of
    /// the bundle.
    pub fn defining_poly(&self) -> Result<Poly, PushError> {
        let ring = self.chern[0].ring().clone();
        let t = ring.var(&self.tvar)?;
        let mut out = ring.zero();
        for (i, ci) in self.chern.iter().enumerate() {
            out = &out + &(ci * &t.pow((self.n + 1 - i) as u32));
        }
        Ok(out)
    }
}

/// Reduce `t`-powers above the fiber dimension, returning the canonical
/// representative together with the quotient `q` such that
/// `x = q * defining_poly + canonical(x)` exactly.
fn canonicalize_with_quotient(x: &Poly, rel: &BundleRelation) -> Result<(Poly, Poly), PushError> {
    let ring = x.ring().clone();
    let t = ring.var(&rel.tvar)?;
    let top = rel.n + 1;
    // t^{n+1} = -(c_1 t^n + ... + c_{n+1})
    let mut reducer = ring.zero();
    for (i, ci) in rel.chern.iter().enumerate().skip(1) {
        let ci = ci.map_to_ring(&ring)?;
        reducer = &reducer - &(&ci * &t.pow((top - i) as u32));
    }
    let mut current = x.clone();
    let mut quotient = ring.zero();
    loop {
        let k = current.degree_in(&rel.tvar)? as usize;
        if k < top {
            break;
        }
        let lead = current.coeff_of_power(&rel.tvar, k as u32)?;
        let shift = t.pow((k - top) as u32);
        let lead_shift = &lead * &shift;
        // subtract lead * t^k, add lead * t^{k-top} * reducer
        current = &(&current - &(&lead_shift * &t.pow(top as u32))) + &(&lead_shift * &reducer);
        quotient = &quotient + &lead_shift;
    }
    Ok((current, quotient))
}

/// Unique representative with `t`-degree at most `n`; the difference from
/// the input lies in the ideal generated by the defining relation.
pub fn t_canonicalize(x: &Poly, rel: &BundleRelation) -> Result<Poly, PushError> {
    Ok(canonicalize_with_quotient(x, rel)?.0)
}

/// Quotient witness for the exact-division invariant:
/// `x - t_canonicalize(x) = quotient * defining_poly`.
pub fn t_reduction_quotient(x: &Poly, rel: &BundleRelation) -> Result<Poly, PushError> {
    Ok(canonicalize_with_quotient(x, rel)?.1)
}

/// Pushforward along the projective-space factor: the coefficient of
/// `t^n` after canonical reduction.
pub fn pushforward_t(x: &Poly, rel: &BundleRelation) -> Result<Poly, PushError> {
    let canonical = t_canonicalize(x, rel)?;
    Ok(canonical.coeff_of_power(&rel.tvar, rel.n as u32)?)
}

/// Second route to the pushforward for classes of `t`-degree at most
/// `n+1`: with raw coefficients `x = sum_q xi_q t^q`, the pushforward is
/// `xi_n - xi_{n+1} c_1`. Pinned equal to [`pushforward_t`] in tests.
pub fn pushforward_t_from_top(x: &Poly, rel: &BundleRelation) -> Result<Poly, PushError> {
    let xi_n = x.coeff_of_power(&rel.tvar, rel.n as u32)?;
    let xi_top = x.coeff_of_power(&rel.tvar, (rel.n + 1) as u32)?;
    let c1 = rel.chern[1].map_to_ring(x.ring())?;
    Ok(&xi_n - &(&xi_top * &c1))
}

/// Coefficients `xi_1..xi_{n+1}` of the canonicalized class, descending in
/// `t`: `xi_q` multiplies `t^{n+1-q}`. For a class of total degree `n+1`,
/// `xi_q` is homogeneous of degree `q` and `xi_1..xi_n` are the Chow-ring
/// relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationList {
    xi: Vec<Poly>,
}

impl RelationList {
    /// `xi_q` (1-indexed, descending convention).
    pub fn xi(&self, q: usize) -> &Poly {
        &self.xi[q - 1]
    }

    /// All of `xi_1..xi_{n+1}` in descending order.
    pub fn descending(&self) -> &[Poly] {
        &self.xi
    }

    /// The same coefficients re-indexed ascending in `t`:
    /// `zeta_i` multiplies `t^i`, for `i = 0..n`.
    pub fn ascending(&self) -> Vec<Poly> {
        self.xi.iter().rev().cloned().collect()
    }

    pub fn len(&self) -> usize {
        self.xi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xi.is_empty()
    }

    /// The first `n` entries, which vanish in the Chow ring of the open
    /// complement of the discriminant.
    pub fn chow_relations(&self) -> &[Poly] {
        &self.xi[..self.xi.len() - 1]
    }
}

/// Extract the full list `xi_1..xi_{n+1}` from a class homogeneous of
/// total degree `n+1` (the codimension of the singular locus).
pub fn relation_coefficients(x: &Poly, rel: &BundleRelation) -> Result<RelationList, PushError> {
    let expected = (rel.n + 1) as u32;
    if !x.is_homogeneous_of(expected) {
        return Err(PushError::NotHomogeneous { expected });
    }
    let canonical = t_canonicalize(x, rel)?;
    let mut xi = Vec::with_capacity(rel.n + 1);
    for q in 1..=rel.n + 1 {
        xi.push(canonical.coeff_of_power(&rel.tvar, (rel.n + 1 - q) as u32)?);
    }
    Ok(RelationList { xi })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gring::Ring;

    fn ring_n(n: usize) -> Ring {
        let names: Vec<String> = (1..=n + 1).map(|i| format!("c{i}")).collect();
        let mut vars: Vec<(&str, u32)> = vec![("u", 1), ("t", 1)];
        vars.extend(
            names
                .iter()
                .enumerate()
                .map(|(i, s)| (s.as_str(), (i + 1) as u32)),
        );
        Ring::new(&vars, (n + 2) as u32).unwrap()
    }

    #[test]
    fn trivial_bundle_kills_top_power() {
        let n = 2;
        let ring = ring_n(n);
        let mut chern = vec![ring.one()];
        for _ in 1..=n + 1 {
            chern.push(ring.zero());
        }
        let rel = BundleRelation::new(n, chern, "t").unwrap();
        let t3 = ring.parse("t^3").unwrap();
        assert!(t_canonicalize(&t3, &rel).unwrap().is_zero());
    }

    #[test]
    fn defining_relation_reduces_to_zero() {
        let n = 3;
        let ring = ring_n(n);
        let rel = BundleRelation::standard(n, &ring, "t").unwrap();
        let defining = rel.defining_poly().unwrap();
        assert!(t_canonicalize(&defining, &rel).unwrap().is_zero());
    }

    #[test]
    fn top_power_reduces_to_lower_chern_terms() {
        let n = 3;
        let ring = ring_n(n);
        let rel = BundleRelation::standard(n, &ring, "t").unwrap();
        let reduced = t_canonicalize(&ring.parse("t^4").unwrap(), &rel).unwrap();
        assert_eq!(reduced, ring.parse("-c1*t^3 - c2*t^2 - c3*t - c4").unwrap());
    }

    #[test]
    fn canonicalize_is_idempotent() {
        let n = 2;
        let ring = ring_n(n);
        let rel = BundleRelation::standard(n, &ring, "t").unwrap();
        let x = ring.parse("t^4 + u*t^3 + c1*t^2 + 5*t + u").unwrap();
        let once = t_canonicalize(&x, &rel).unwrap();
        let twice = t_canonicalize(&once, &rel).unwrap();
        assert_eq!(once, twice);
        assert!(once.degree_in("t").unwrap() <= n as u32);
    }

    #[test]
    fn reduction_difference_is_exact_multiple() {
        let n = 2;
        let ring = ring_n(n);
        let rel = BundleRelation::standard(n, &ring, "t").unwrap();
        let x = ring.parse("t^4 + u*t^3 + c1*t^2 + 5*t + u").unwrap();
        let canonical = t_canonicalize(&x, &rel).unwrap();
        let quotient = t_reduction_quotient(&x, &rel).unwrap();
        let defining = rel.defining_poly().unwrap();
        assert_eq!(&x - &canonical, &quotient * &defining);
    }

    #[test]
    fn pushforward_degree_bookkeeping() {
        let n = 3;
        let ring = ring_n(n);
        let rel = BundleRelation::standard(n, &ring, "t").unwrap();
        for k in 0..n {
            let x = ring.var("t").unwrap().pow(k as u32);
            assert!(pushforward_t(&x, &rel).unwrap().is_zero(), "t^{k}");
        }
        let tn = ring.var("t").unwrap().pow(n as u32);
        assert!(pushforward_t(&tn, &rel).unwrap().is_one());
    }

    #[test]
    fn pushforward_projection_formula() {
        let n = 2;
        let ring = ring_n(n);
        let rel = BundleRelation::standard(n, &ring, "t").unwrap();
        let x = ring.parse("t^3 + u*t^2 + c1*t + 1").unwrap();
        let beta = ring.parse("u + 3").unwrap();
        let lhs = pushforward_t(&(&beta * &x), &rel).unwrap();
        let rhs = &beta * &pushforward_t(&x, &rel).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn pushforward_routes_agree() {
        let n = 2;
        let ring = ring_n(n);
        let rel = BundleRelation::standard(n, &ring, "t").unwrap();
        for text in [
            "t^3",
            "u*t^3 + c1*t^2",
            "t^3 + 2*t^2 + 3*t + 4",
            "c1*t^3 + u^2*t^2 - 5*u*t + c2",
            "u",
        ] {
            let x = ring.parse(text).unwrap();
            assert_eq!(
                pushforward_t(&x, &rel).unwrap(),
                pushforward_t_from_top(&x, &rel).unwrap(),
                "{text}"
            );
        }
    }

    #[test]
    fn relation_coefficients_shape() {
        let n = 2;
        let ring = ring_n(n);
        let rel = BundleRelation::standard(n, &ring, "t").unwrap();
        // homogeneous of degree n+1 = 3
        let x = ring.parse("t^3 + u*t^2 + u^2*t + c1*t^2 + c3").unwrap();
        let list = relation_coefficients(&x, &rel).unwrap();
        assert_eq!(list.len(), n + 1);
        assert_eq!(list.chow_relations().len(), n);
        for q in 1..=n + 1 {
            assert!(
                list.xi(q).is_homogeneous_of(q as u32),
                "xi_{q} must be homogeneous of degree {q}"
            );
        }
        // ascending view is the exact reversal
        let asc = list.ascending();
        for (i, z) in asc.iter().enumerate() {
            assert_eq!(z, list.xi(n + 1 - i));
        }
    }

    #[test]
    fn relation_coefficients_reject_inhomogeneous() {
        let n = 2;
        let ring = ring_n(n);
        let rel = BundleRelation::standard(n, &ring, "t").unwrap();
        let x = ring.parse("t^3 + t").unwrap();
        assert!(matches!(
            relation_coefficients(&x, &rel),
            Err(PushError::NotHomogeneous { expected: 3 })
        ));
    }
}
