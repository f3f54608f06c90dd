//! Chern-root arithmetic: elementary symmetric polynomials and the
//! rewriting of symmetric root expressions in terms of Chern classes.
//!
//! This is the second, independent route to the equivariant Chern class
//! of the cotangent bundle of projective space; the twist-formula route
//! lives in [`crate::chern`] and the two are pinned equal in tests.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::chern::omega_ring;
use crate::gring::{Poly, Ring, RingError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SymError {
    #[error("need at least two Chern roots (n >= 1), got n = {0}")]
    TooFewRoots(usize),
    #[error("symmetric-function index {k} out of range 0..={max}")]
    IndexOutOfRange { k: usize, max: usize },
    #[error("input is not symmetric: swapping {0} and {1} changes it")]
    NotSymmetric(String, String),
    #[error("input does not live in the root ring of this context")]
    ForeignRing,
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// Roots `l1..l{n+1}` (degree 1) with target classes `c1..c{n+1}`
/// (degree i), sharing a list of untouched auxiliary variables.
#[derive(Debug, Clone)]
pub struct RootContext {
    n: usize,
    root_ring: Ring,
    chern_ring: Ring,
}

impl RootContext {
    pub fn new(n: usize, aux: &[(&str, u32)], truncation: u32) -> Result<Self, SymError> {
        if n < 1 {
            return Err(SymError::TooFewRoots(n));
        }
        let root_names: Vec<String> = (1..=n + 1).map(|i| format!("l{i}")).collect();
        let chern_names: Vec<String> = (1..=n + 1).map(|i| format!("c{i}")).collect();
        let mut root_vars: Vec<(&str, u32)> = root_names.iter().map(|s| (s.as_str(), 1)).collect();
        let mut chern_vars: Vec<(&str, u32)> = chern_names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), (i + 1) as u32))
            .collect();
        root_vars.extend_from_slice(aux);
        chern_vars.extend_from_slice(aux);
        Ok(RootContext {
            n,
            root_ring: Ring::new(&root_vars, truncation)?,
            chern_ring: Ring::new(&chern_vars, truncation)?,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root_count(&self) -> usize {
        self.n + 1
    }

    pub fn root_ring(&self) -> &Ring {
        &self.root_ring
    }

    pub fn chern_ring(&self) -> &Ring {
        &self.chern_ring
    }

    pub fn root(&self, i: usize) -> Result<Poly, SymError> {
        if i == 0 || i > self.root_count() {
            return Err(SymError::IndexOutOfRange {
                k: i,
                max: self.root_count(),
            });
        }
        Ok(self.root_ring.var(&format!("l{i}"))?)
    }

    /// All elementary symmetric polynomials `e_0..e_{n+1}` of the roots,
    /// via the product expansion of `prod(1 + l_i z)`.
    fn elementary_all(&self) -> Vec<Poly> {
        let count = self.root_count();
        let mut e: Vec<Poly> = Vec::with_capacity(count + 1);
        e.push(self.root_ring.one());
        for _ in 0..count {
            e.push(self.root_ring.zero());
        }
        for i in 1..=count {
            let root = self
                .root_ring
                .var(&format!("l{i}"))
                .expect("root variable exists");
            for j in (1..=i).rev() {
                let bump = &e[j - 1] * &root;
                e[j] = &e[j] + &bump;
            }
        }
        e
    }
}

/// `e_k(l_1, ..., l_{n+1})` as a polynomial in the root variables.
pub fn elementary_symmetric(k: usize, ctx: &RootContext) -> Result<Poly, SymError> {
    if k > ctx.root_count() {
        return Err(SymError::IndexOutOfRange {
            k,
            max: ctx.root_count(),
        });
    }
    Ok(ctx.elementary_all()[k].clone())
}

fn split_monomial(exps: &[u32], roots: usize) -> (Vec<u32>, Vec<u32>) {
    (exps[..roots].to_vec(), exps[roots..].to_vec())
}

/// Rewrite a symmetric polynomial in the roots as a polynomial in the
/// Chern classes `c_i = e_i(l)`. Auxiliary variables pass through
/// untouched. Symmetry is verified first; a non-symmetric input is a
/// hard error rather than a silent wrong answer.
pub fn symmetrize_to_chern(x: &Poly, ctx: &RootContext) -> Result<Poly, SymError> {
    if x.ring() != ctx.root_ring() {
        return Err(SymError::ForeignRing);
    }
    let roots = ctx.root_count();

    // Adjacent transpositions generate the symmetric group, so checking
    // them is enough.
    for i in 0..roots - 1 {
        let swapped = swap_vars(x, i, i + 1);
        if &swapped != x {
            return Err(SymError::NotSymmetric(
                format!("l{}", i + 1),
                format!("l{}", i + 2),
            ));
        }
    }

    let e = ctx.elementary_all();

    // Group terms by their auxiliary part; each group is symmetric in the
    // roots and is reduced independently.
    let mut groups: BTreeMap<Vec<u32>, BTreeMap<Vec<u32>, BigInt>> = BTreeMap::new();
    for (mono, coeff) in x.terms() {
        let (root_part, aux_part) = split_monomial(mono.exponents(), roots);
        *groups
            .entry(aux_part)
            .or_default()
            .entry(root_part)
            .or_insert_with(BigInt::zero) += coeff.clone();
    }

    let mut out = ctx.chern_ring.zero();
    for (aux_part, mut root_terms) in groups {
        root_terms.retain(|_, c| !c.is_zero());
        // Classical leading-term reduction: subtract the elementary
        // product matching the lex-greatest root monomial, iterate.
        // Terminates by lex descent within each graded piece.
        while let Some((lead, coeff)) = lex_greatest(&root_terms) {
            debug_assert!(
                lead.windows(2).all(|w| w[0] >= w[1]),
                "leading exponents of a symmetric polynomial must descend"
            );
            let mut e_product = ctx.root_ring.one();
            let mut c_powers: Vec<(String, u32)> = Vec::new();
            for i in 0..roots {
                let next = if i + 1 < roots { lead[i + 1] } else { 0 };
                let mult = lead[i] - next;
                if mult == 0 {
                    continue;
                }
                e_product = &e_product * &e[i + 1].pow(mult);
                c_powers.push((format!("c{}", i + 1), mult));
            }
            let pairs: Vec<(&str, u32)> = c_powers.iter().map(|(n, m)| (n.as_str(), *m)).collect();
            let c_mono = ctx.chern_ring.monomial(&pairs, coeff.clone())?;
            let aux_pairs: Vec<(String, u32)> = aux_part
                .iter()
                .enumerate()
                .filter(|(_, e)| **e > 0)
                .map(|(i, e)| (ctx.chern_ring.variables()[roots + i].0.clone(), *e))
                .collect();
            let aux_refs: Vec<(&str, u32)> =
                aux_pairs.iter().map(|(n, e)| (n.as_str(), *e)).collect();
            let aux_mono = ctx.chern_ring.monomial(&aux_refs, 1)?;
            out = &out + &(&c_mono * &aux_mono);

            // Subtract coeff * prod e_i^mult from the group.
            for (mono, c) in e_product.scale(&coeff).terms() {
                let (rp, ap) = split_monomial(mono.exponents(), roots);
                debug_assert!(ap.iter().all(|v| *v == 0));
                let new_val = match root_terms.get(&rp) {
                    Some(old) => old - c,
                    None => -c.clone(),
                };
                if new_val.is_zero() {
                    root_terms.remove(&rp);
                } else {
                    root_terms.insert(rp, new_val);
                }
            }
        }
    }
    Ok(out)
}

fn lex_greatest(terms: &BTreeMap<Vec<u32>, BigInt>) -> Option<(Vec<u32>, BigInt)> {
    terms
        .iter()
        .max_by(|a, b| a.0.cmp(b.0))
        .map(|(m, c)| (m.clone(), c.clone()))
}

fn swap_vars(x: &Poly, i: usize, j: usize) -> Poly {
    let ring = x.ring().clone();
    let mut out = ring.zero();
    for (mono, coeff) in x.terms() {
        let mut exps = mono.exponents().to_vec();
        exps.swap(i, j);
        let pairs: Vec<(String, u32)> = exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(k, e)| (ring.variables()[k].0.clone(), *e))
            .collect();
        let refs: Vec<(&str, u32)> = pairs.iter().map(|(n, e)| (n.as_str(), *e)).collect();
        out = &out
            + &ring
                .monomial(&refs, coeff.clone())
                .expect("swap stays in ring");
    }
    out
}

/// Total equivariant Chern class of the cotangent bundle of `P^n`,
/// computed as the symmetrization of `prod_i (1 - l_i - t)`.
pub fn omega_chern_via_roots(n: usize) -> Result<Poly, SymError> {
    let ctx = RootContext::new(n, &[("t", 1)], (n + 1) as u32)?;
    let t = ctx.root_ring.var("t")?;
    let one = ctx.root_ring.one();
    let mut product = ctx.root_ring.one();
    for i in 1..=n + 1 {
        let factor = &(&one - &ctx.root(i)?) - &t;
        product = &product * &factor;
    }
    let rewritten = symmetrize_to_chern(&product, &ctx)?;
    // Land in the shared ring used by the twist route, so the two
    // results are directly comparable.
    Ok(rewritten.map_to_ring(&omega_ring(n)?)?)
}
