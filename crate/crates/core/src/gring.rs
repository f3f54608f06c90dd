//! Sparse multivariate polynomials over arbitrary-precision integers, with
//! a graded variable roster and truncation by total degree.
//!
//! Every cycle class in this crate is carried by a [`Poly`]. A [`Ring`]
//! fixes the variable roster (one weight per variable), the variable order
//! and the truncation degree; polynomials refuse to mix rings.
//!
//! Invariants:
//! - no zero coefficients are stored;
//! - no monomial of weighted degree above the ring truncation is stored
//!   (arithmetic silently drops such terms, i.e. we work in the quotient
//!   by the ideal of high-degree terms);
//! - term order is graded lexicographic: ascending total degree, then
//!   descending lexicographic in the declared variable order. Printing is
//!   therefore deterministic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("polynomials belong to different rings")]
    RingMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid variable name `{0}`")]
    InvalidVariableName(String),
    #[error("duplicate variable `{0}` in ring declaration")]
    DuplicateVariable(String),
    #[error("variable `{0}` must have degree >= 1")]
    InvalidDegree(String),
    #[error("truncation degree must be >= 1")]
    InvalidTruncation,
    #[error("series inverse requires constant term +1 or -1, found {0}")]
    NonUnitConstantTerm(BigInt),
    #[error("variable `{name}` has degree {found} here but degree {expected} in the target ring")]
    DegreeMismatch {
        name: String,
        expected: u32,
        found: u32,
    },
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

/// The declaration of a graded polynomial ring: ordered variables with
/// their weights, plus the total-degree truncation.
#[derive(Debug, PartialEq, Eq)]
pub struct RingSpec {
    vars: Vec<(String, u32)>,
    truncation: u32,
}

/// Cheap-to-clone handle to a [`RingSpec`]. Two handles compare equal when
/// their specs agree, even if they were built independently.
#[derive(Debug, Clone)]
pub struct Ring(Arc<RingSpec>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Ring {}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new(vars: &[(&str, u32)], truncation: u32) -> Result<Ring, RingError> {
        if truncation == 0 {
            return Err(RingError::InvalidTruncation);
        }
        let mut seen = std::collections::BTreeSet::new();
        for (name, degree) in vars {
            if !valid_name(name) {
                return Err(RingError::InvalidVariableName(name.to_string()));
            }
            if *degree == 0 {
                return Err(RingError::InvalidDegree(name.to_string()));
            }
            if !seen.insert(*name) {
                return Err(RingError::DuplicateVariable(name.to_string()));
            }
        }
        Ok(Ring(Arc::new(RingSpec {
            vars: vars.iter().map(|(n, d)| (n.to_string(), *d)).collect(),
            truncation,
        })))
    }

    pub fn variables(&self) -> &[(String, u32)] {
        &self.0.vars
    }

    pub fn len(&self) -> usize {
        self.0.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.vars.is_empty()
    }

    pub fn truncation(&self) -> u32 {
        self.0.truncation
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|(n, _)| n == name)
    }

    pub fn degree_of(&self, name: &str) -> Option<u32> {
        self.0.vars.iter().find(|(n, _)| n == name).map(|(_, d)| *d)
    }

    /// Same roster, different truncation degree.
    pub fn with_truncation(&self, truncation: u32) -> Result<Ring, RingError> {
        if truncation == 0 {
            return Err(RingError::InvalidTruncation);
        }
        Ok(Ring(Arc::new(RingSpec {
            vars: self.0.vars.clone(),
            truncation,
        })))
    }

    pub fn zero(&self) -> Poly {
        Poly {
            ring: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> Poly {
        self.constant(1)
    }

    pub fn constant(&self, value: impl Into<BigInt>) -> Poly {
        let value = value.into();
        let mut terms = BTreeMap::new();
        if !value.is_zero() {
            terms.insert(self.unit_monomial(), value);
        }
        Poly {
            ring: self.clone(),
            terms,
        }
    }

    pub fn var(&self, name: &str) -> Result<Poly, RingError> {
        self.monomial(&[(name, 1)], 1)
    }

    /// The single term `coeff * prod(var^exp)`. Terms above the truncation
    /// degree collapse to zero, consistent with the ring arithmetic.
    pub fn monomial(
        &self,
        powers: &[(&str, u32)],
        coeff: impl Into<BigInt>,
    ) -> Result<Poly, RingError> {
        let coeff = coeff.into();
        let mut exps = vec![0u32; self.len()];
        for (name, e) in powers {
            let idx = self
                .index_of(name)
                .ok_or_else(|| RingError::UnknownVariable(name.to_string()))?;
            exps[idx] += e;
        }
        let mono = self.make_monomial(exps);
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() && mono.degree <= self.truncation() {
            terms.insert(mono, coeff);
        }
        Ok(Poly {
            ring: self.clone(),
            terms,
        })
    }

    fn unit_monomial(&self) -> Monomial {
        Monomial {
            degree: 0,
            exps: vec![0u32; self.len()].into(),
        }
    }

    fn make_monomial(&self, exps: Vec<u32>) -> Monomial {
        let degree = exps.iter().zip(&self.0.vars).map(|(e, (_, d))| e * d).sum();
        Monomial {
            degree,
            exps: exps.into(),
        }
    }

    /// Parse the canonical textual form, e.g. `33*u + 34*v - 42*c1`.
    pub fn parse(&self, input: &str) -> Result<Poly, RingError> {
        parse_poly(self, input)
    }
}

/// Exponent vector aligned with the ring's variable order, together with
/// its weighted total degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    degree: u32,
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn is_unit(&self) -> bool {
        self.degree == 0
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // Ascending total degree, then descending lexicographic, so that
        // BTreeMap iteration yields the canonical print order.
        self.degree
            .cmp(&other.degree)
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial: finite map from monomials to nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    ring: Ring,
    terms: BTreeMap<Monomial, BigInt>,
}

fn insert_term(terms: &mut BTreeMap<Monomial, BigInt>, mono: Monomial, coeff: BigInt) {
    if coeff.is_zero() {
        return;
    }
    match terms.entry(mono) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(coeff);
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += coeff;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl Poly {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .map(|(m, c)| m.is_unit() && c.is_one())
                .unwrap_or(false)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms
            .iter()
            .next()
            .filter(|(m, _)| m.is_unit())
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigInt::zero)
    }

    /// Highest weighted degree among stored terms; `None` for the zero
    /// polynomial (the degree of 0 is undefined).
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree)
    }

    /// All stored terms have weighted degree exactly `d` (vacuously true
    /// for the zero polynomial).
    pub fn is_homogeneous_of(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.degree == d)
    }

    /// `Some(d)` when nonzero and concentrated in a single degree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.terms.keys().next()?.degree;
        self.is_homogeneous_of(d).then_some(d)
    }

    pub fn graded_part(&self, d: u32) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    fn check_ring(&self, other: &Poly) -> Result<(), RingError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(RingError::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, RingError> {
        self.check_ring(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            insert_term(&mut terms, m.clone(), c.clone());
        }
        Ok(Poly {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, RingError> {
        self.check_ring(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            insert_term(&mut terms, m.clone(), -c.clone());
        }
        Ok(Poly {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, RingError> {
        self.check_ring(other)?;
        let trunc = self.ring.truncation();
        let mut terms = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let degree = ma.degree + mb.degree;
                if degree > trunc {
                    continue;
                }
                let exps: Vec<u32> = ma
                    .exps
                    .iter()
                    .zip(mb.exps.iter())
                    .map(|(a, b)| a + b)
                    .collect();
                insert_term(
                    &mut terms,
                    Monomial {
                        degree,
                        exps: exps.into(),
                    },
                    ca * cb,
                );
            }
        }
        Ok(Poly {
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        if k.is_zero() {
            return self.ring.zero();
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect(),
        }
    }

    pub fn scale_i64(&self, k: i64) -> Poly {
        self.scale(&BigInt::from(k))
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Series inverse: `y` with `self * y = 1` up to the truncation degree.
    /// Requires constant term +1 or -1.
    pub fn unit_series_inverse(&self) -> Result<Poly, RingError> {
        let c0 = self.constant_term();
        if !c0.is_one() && c0 != BigInt::from(-1) {
            return Err(RingError::NonUnitConstantTerm(c0));
        }
        let trunc = self.ring.truncation();
        let parts: Vec<Poly> = (0..=trunc).map(|d| self.graded_part(d)).collect();
        let mut inv_parts: Vec<Poly> = Vec::with_capacity(trunc as usize + 1);
        inv_parts.push(self.ring.constant(c0.clone()));
        for d in 1..=trunc {
            let mut acc = self.ring.zero();
            for i in 1..=d {
                let x = &parts[i as usize];
                let y = &inv_parts[(d - i) as usize];
                if x.is_zero() || y.is_zero() {
                    continue;
                }
                acc = &acc + &x.try_mul(y)?;
            }
            inv_parts.push(acc.scale(&-c0.clone()));
        }
        let mut out = self.ring.zero();
        for p in inv_parts {
            out = &out + &p;
        }
        Ok(out)
    }

    /// The polynomial multiplying `var^k`, with `var` deleted from the
    /// result's support.
    pub fn coeff_of_power(&self, var: &str, k: u32) -> Result<Poly, RingError> {
        let idx = self
            .ring
            .index_of(var)
            .ok_or_else(|| RingError::UnknownVariable(var.to_string()))?;
        let vdeg = self.ring.variables()[idx].1;
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.exps[idx] != k {
                continue;
            }
            let mut exps = m.exps.to_vec();
            exps[idx] = 0;
            insert_term(
                &mut terms,
                Monomial {
                    degree: m.degree - k * vdeg,
                    exps: exps.into(),
                },
                c.clone(),
            );
        }
        Ok(Poly {
            ring: self.ring.clone(),
            terms,
        })
    }

    /// Highest power of `var` occurring in the support (0 for polynomials
    /// free of `var`, including 0 itself).
    pub fn degree_in(&self, var: &str) -> Result<u32, RingError> {
        let idx = self
            .ring
            .index_of(var)
            .ok_or_else(|| RingError::UnknownVariable(var.to_string()))?;
        Ok(self.terms.keys().map(|m| m.exps[idx]).max().unwrap_or(0))
    }

    /// Replace `var` by `value` and re-truncate. `value` may live in any
    /// ring whose shared variables carry the same degrees. When no value
    /// exceeds the degree of its variable, successive substitutions of
    /// distinct variables commute; degree-raising values are re-truncated
    /// and then the order of substitutions matters.
    pub fn substitute(&self, var: &str, value: &Poly) -> Result<Poly, RingError> {
        let idx = self
            .ring
            .index_of(var)
            .ok_or_else(|| RingError::UnknownVariable(var.to_string()))?;
        let value = value.map_to_ring(&self.ring)?;
        let mut powers: Vec<Poly> = vec![self.ring.one()];
        let mut out = self.ring.zero();
        for (m, c) in &self.terms {
            let e = m.exps[idx] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap().try_mul(&value)?;
                powers.push(next);
            }
            let mut exps = m.exps.to_vec();
            exps[idx] = 0;
            let vdeg = self.ring.variables()[idx].1;
            let base = Poly {
                ring: self.ring.clone(),
                terms: {
                    let mut t = BTreeMap::new();
                    t.insert(
                        Monomial {
                            degree: m.degree - m.exps[idx] * vdeg,
                            exps: exps.into(),
                        },
                        c.clone(),
                    );
                    t
                },
            };
            out = &out + &base.try_mul(&powers[e])?;
        }
        Ok(out)
    }

    /// Transport into another ring, matching variables by name. Every
    /// variable actually used must exist in the target with the same
    /// degree; terms above the target truncation are dropped.
    pub fn map_to_ring(&self, target: &Ring) -> Result<Poly, RingError> {
        if self.ring == *target {
            return Ok(Poly {
                ring: target.clone(),
                terms: self.terms.clone(),
            });
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.len()];
            let mut degree = 0u32;
            for (i, e) in m.exps.iter().enumerate() {
                if *e == 0 {
                    continue;
                }
                let (name, vdeg) = &self.ring.variables()[i];
                let j = target
                    .index_of(name)
                    .ok_or_else(|| RingError::UnknownVariable(name.clone()))?;
                let tdeg = target.variables()[j].1;
                if tdeg != *vdeg {
                    return Err(RingError::DegreeMismatch {
                        name: name.clone(),
                        expected: tdeg,
                        found: *vdeg,
                    });
                }
                exps[j] = *e;
                degree += e * tdeg;
            }
            if degree > target.truncation() {
                continue;
            }
            insert_term(
                &mut terms,
                Monomial {
                    degree,
                    exps: exps.into(),
                },
                c.clone(),
            );
        }
        Ok(Poly {
            ring: target.clone(),
            terms,
        })
    }

    /// Coefficient of the exact monomial described by `powers` (variables
    /// not listed must have exponent zero).
    pub fn coefficient(&self, powers: &[(&str, u32)]) -> Result<BigInt, RingError> {
        let mut exps = vec![0u32; self.ring.len()];
        for (name, e) in powers {
            let idx = self
                .ring
                .index_of(name)
                .ok_or_else(|| RingError::UnknownVariable(name.to_string()))?;
            exps[idx] += e;
        }
        let mono = self.ring.make_monomial(exps);
        Ok(self.terms.get(&mono).cloned().unwrap_or_else(BigInt::zero))
    }

    /// For a degree-1 homogeneous polynomial: map variable name -> coefficient.
    pub fn linear_coefficients(&self) -> BTreeMap<String, BigInt> {
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.degree != 1 {
                continue;
            }
            if let Some(i) = m.exps.iter().position(|e| *e == 1) {
                out.insert(self.ring.variables()[i].0.clone(), c.clone());
            }
        }
        out
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$try(rhs).expect("ring mismatch")
            }
        }
        impl $trait<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$try(&rhs).expect("ring mismatch")
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$try(rhs).expect("ring mismatch")
            }
        }
        impl $trait<Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                self.$try(&rhs).expect("ring mismatch")
            }
        }
    };
}

impl_binop!(Add, add, try_add);
impl_binop!(Sub, sub, try_sub);
impl_binop!(Mul, mul, try_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&BigInt::from(-1))
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mono, coeff) in &self.terms {
            let negative = coeff.is_negative();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = coeff.abs();
            let vars: Vec<String> = mono
                .exps
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| {
                    let name = &self.ring.variables()[i].0;
                    if *e == 1 {
                        name.clone()
                    } else {
                        format!("{name}^{e}")
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", mag, vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
}

fn tokenize(input: &str) -> Result<Vec<Token>, RingError> {
    let mut tokens = Vec::new();
    let mut chars = input.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                chars.next();
            }
            '+' => {
                chars.next();
                tokens.push(Token::Plus);
            }
            '-' => {
                chars.next();
                tokens.push(Token::Minus);
            }
            '*' => {
                chars.next();
                tokens.push(Token::Star);
            }
            '^' => {
                chars.next();
                tokens.push(Token::Caret);
            }
            '0'..='9' => {
                let mut digits = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        digits.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                let n: BigInt = digits
                    .parse()
                    .map_err(|_| RingError::Parse(format!("bad integer `{digits}`")))?;
                tokens.push(Token::Num(n));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut ident = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_alphanumeric() || d == '_' {
                        ident.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                tokens.push(Token::Ident(ident));
            }
            other => {
                return Err(RingError::Parse(format!("unexpected character `{other}`")));
            }
        }
    }
    Ok(tokens)
}

fn parse_poly(ring: &Ring, input: &str) -> Result<Poly, RingError> {
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err(RingError::Parse("empty input".into()));
    }
    let mut result = ring.zero();
    let mut pos = 0;
    loop {
        let mut sign = BigInt::one();
        while pos < tokens.len() {
            match tokens[pos] {
                Token::Plus => pos += 1,
                Token::Minus => {
                    sign = -sign;
                    pos += 1;
                }
                _ => break,
            }
        }
        let mut coeff = sign;
        let mut powers: Vec<(String, u32)> = Vec::new();
        loop {
            match tokens.get(pos) {
                Some(Token::Num(n)) => {
                    coeff *= n;
                    pos += 1;
                }
                Some(Token::Ident(name)) => {
                    pos += 1;
                    let mut exp = 1u32;
                    if let Some(Token::Caret) = tokens.get(pos) {
                        pos += 1;
                        match tokens.get(pos) {
                            Some(Token::Num(n)) => {
                                exp = u32::try_from(n.clone()).map_err(|_| {
                                    RingError::Parse(format!("exponent out of range: {n}"))
                                })?;
                                pos += 1;
                            }
                            _ => {
                                return Err(RingError::Parse(
                                    "expected integer exponent after `^`".into(),
                                ))
                            }
                        }
                    }
                    powers.push((name.clone(), exp));
                }
                _ => {
                    return Err(RingError::Parse(
                        "expected a number or variable in term".into(),
                    ))
                }
            }
            if let Some(Token::Star) = tokens.get(pos) {
                pos += 1;
                continue;
            }
            break;
        }
        let pairs: Vec<(&str, u32)> = powers.iter().map(|(n, e)| (n.as_str(), *e)).collect();
        result = &result + &ring.monomial(&pairs, coeff)?;
        if pos == tokens.len() {
            break;
        }
        match tokens[pos] {
            Token::Plus | Token::Minus => {}
            _ => {
                return Err(RingError::Parse("expected `+` or `-` between terms".into()));
            }
        }
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uvt_ring() -> Ring {
        Ring::new(&[("u", 1), ("v", 1), ("t", 1), ("c1", 1)], 4).unwrap()
    }

    #[test]
    fn add_inverse_cancels() {
        let r = uvt_ring();
        let u = r.var("u").unwrap();
        assert!((&u + &-&u).is_zero());
    }

    #[test]
    fn add_disjoint_supports() {
        let r = uvt_ring();
        let u = r.var("u").unwrap();
        let v = r.var("v").unwrap();
        let t = r.var("t").unwrap();
        let s = &(&u + &v) + &t;
        assert_eq!(s, r.parse("u + v + t").unwrap());
    }

    #[test]
    fn add_coefficients() {
        let r = uvt_ring();
        let u = r.var("u").unwrap();
        assert_eq!(&u.scale_i64(2) + &u.scale_i64(3), u.scale_i64(5));
    }

    #[test]
    fn mul_distributes_bilinear_shape() {
        let r = uvt_ring();
        let u = r.var("u").unwrap();
        let v = r.var("v").unwrap();
        let t = r.var("t").unwrap();
        let lhs = &(&u + &t.scale_i64(2)) * &(&v + &t.scale_i64(3));
        assert_eq!(lhs, r.parse("u*v + 3*u*t + 2*v*t + 6*t^2").unwrap());
    }

    #[test]
    fn mul_truncates() {
        let r = Ring::new(&[("u", 1)], 1).unwrap();
        let u = r.var("u").unwrap();
        let one = r.one();
        let prod = &(&one + &u) * &(&one - &u);
        assert!(prod.is_one());
    }

    #[test]
    fn mul_by_zero_annihilates() {
        let r = uvt_ring();
        let x = r.parse("3*u*v - t + 7").unwrap();
        assert!((&x * &r.zero()).is_zero());
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let r1 = uvt_ring();
        let r2 = Ring::new(&[("u", 1)], 4).unwrap();
        let a = r1.var("u").unwrap();
        let b = r2.var("u").unwrap();
        assert_eq!(a.try_add(&b), Err(RingError::RingMismatch));
        assert_eq!(a.try_mul(&b), Err(RingError::RingMismatch));
    }

    #[test]
    fn independently_built_equal_rings_are_compatible() {
        let r1 = uvt_ring();
        let r2 = uvt_ring();
        let a = r1.var("u").unwrap();
        let b = r2.var("u").unwrap();
        assert_eq!(&a + &b, a.scale_i64(2));
    }

    #[test]
    fn series_inverse_geometric() {
        let r = Ring::new(&[("c1", 1), ("c2", 2)], 3).unwrap();
        let x = r.parse("1 + c1").unwrap();
        let inv = x.unit_series_inverse().unwrap();
        assert_eq!(inv, r.parse("1 - c1 + c1^2 - c1^3").unwrap());
        assert!((&x * &inv).is_one());
    }

    #[test]
    fn series_inverse_of_one() {
        let r = uvt_ring();
        assert!(r.one().unit_series_inverse().unwrap().is_one());
    }

    #[test]
    fn series_inverse_two_terms() {
        let r = Ring::new(&[("c1", 1), ("c2", 2)], 2).unwrap();
        let x = r.parse("1 + c1 + c2").unwrap();
        let inv = x.unit_series_inverse().unwrap();
        assert_eq!(inv, r.parse("1 - c1 + c1^2 - c2").unwrap());
    }

    #[test]
    fn series_inverse_requires_unit() {
        let r = uvt_ring();
        assert_eq!(
            r.parse("2 + u").unwrap().unit_series_inverse(),
            Err(RingError::NonUnitConstantTerm(BigInt::from(2)))
        );
        assert_eq!(
            r.var("u").unwrap().unit_series_inverse(),
            Err(RingError::NonUnitConstantTerm(BigInt::zero()))
        );
    }

    #[test]
    fn coeff_of_power_reads_coefficients() {
        let r = uvt_ring();
        let x = r.parse("u*v + 3*u*t + 2*v*t + 6*t^2").unwrap();
        assert_eq!(
            x.coeff_of_power("t", 1).unwrap(),
            r.parse("3*u + 2*v").unwrap()
        );
        let u = r.var("u").unwrap();
        assert_eq!(u.coeff_of_power("t", 0).unwrap(), u);
        let t2 = r.parse("t^2").unwrap();
        assert!(t2.coeff_of_power("t", 3).unwrap().is_zero());
        assert_eq!(
            t2.coeff_of_power("w", 1),
            Err(RingError::UnknownVariable("w".into()))
        );
    }

    #[test]
    fn substitute_self_elimination() {
        let r = uvt_ring();
        let x = r.parse("c1 - u - v").unwrap();
        let value = r.parse("c1 - u").unwrap();
        assert!(x.substitute("v", &value).unwrap().is_zero());
    }

    #[test]
    fn substitute_divisor_class_reduction() {
        let r = uvt_ring();
        let x = r.parse("33*u + 34*v - 42*c1").unwrap();
        let value = r.parse("c1 - u").unwrap();
        // Independent route: expand 33u + 34(c1-u) - 42c1 with plain ring ops.
        let expected = &(&r.var("u").unwrap().scale_i64(33) + &value.scale_i64(34))
            - &r.var("c1").unwrap().scale_i64(42);
        let got = x.substitute("v", &value).unwrap();
        assert_eq!(got, expected);
        assert_eq!(got, r.parse("-u - 8*c1").unwrap());
    }

    #[test]
    fn substitute_var_by_zero() {
        let r = uvt_ring();
        let t = r.var("t").unwrap();
        assert!(t.substitute("t", &r.zero()).unwrap().is_zero());
    }

    #[test]
    fn canonical_print_order() {
        let r = uvt_ring();
        let x = r.parse("-42*c1 + 34*v + 33*u").unwrap();
        assert_eq!(x.to_string(), "33*u + 34*v - 42*c1");
        let y = r.parse("6*t^2 + u*v + 2*v*t + 3*u*t + 1").unwrap();
        assert_eq!(y.to_string(), "1 + u*v + 3*u*t + 2*v*t + 6*t^2");
        assert_eq!(r.zero().to_string(), "0");
    }

    #[test]
    fn map_to_ring_respects_truncation() {
        let big = Ring::new(&[("u", 1), ("v", 1)], 5).unwrap();
        let small = Ring::new(&[("u", 1), ("v", 1)], 2).unwrap();
        let x = big.parse("1 + u + u^2*v + v^2").unwrap();
        let y = x.map_to_ring(&small).unwrap();
        assert_eq!(y, small.parse("1 + u + v^2").unwrap());
    }

    #[test]
    fn map_to_ring_checks_degrees() {
        let a = Ring::new(&[("x", 1)], 3).unwrap();
        let b = Ring::new(&[("x", 2)], 3).unwrap();
        let x = a.var("x").unwrap();
        assert!(matches!(
            x.map_to_ring(&b),
            Err(RingError::DegreeMismatch { .. })
        ));
    }

    #[test]
    fn ring_validation() {
        assert_eq!(
            Ring::new(&[("x", 1), ("x", 1)], 2),
            Err(RingError::DuplicateVariable("x".into()))
        );
        assert_eq!(
            Ring::new(&[("x", 0)], 2),
            Err(RingError::InvalidDegree("x".into()))
        );
        assert_eq!(Ring::new(&[("x", 1)], 0), Err(RingError::InvalidTruncation));
        assert_eq!(
            Ring::new(&[("2x", 1)], 1),
            Err(RingError::InvalidVariableName("2x".into()))
        );
    }

    #[test]
    fn parse_rejects_garbage() {
        let r = uvt_ring();
        assert!(matches!(r.parse("u + "), Err(RingError::Parse(_))));
        assert!(matches!(r.parse("u ^"), Err(RingError::Parse(_))));
        assert!(matches!(
            r.parse("w + 1"),
            Err(RingError::UnknownVariable(_))
        ));
        assert!(matches!(r.parse(""), Err(RingError::Parse(_))));
    }
}
