//! Characteristic-class calculus on formal bundle classes: total
//! Chern/Segre classes, twists by a line class, Schur determinants, and
//! the twist-formula route to the equivariant Chern class of the
//! cotangent bundle of projective space.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::gring::{Poly, Ring, RingError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChernError {
    #[error("total Chern class must have constant term 1, found {0}")]
    BadConstantTerm(BigInt),
    #[error("twist requires rank >= 1, got {0}")]
    RankTooSmall(i64),
    #[error("twist class must be homogeneous of degree 1")]
    TwistNotLinear,
    #[error("class has a nonzero part in degree {degree} above the declared rank {rank}")]
    ClassAboveRank { degree: u32, rank: i64 },
    #[error("graded class list entries live in different rings")]
    MixedRings,
    #[error("graded class list is empty")]
    EmptyClassList,
    #[error(transparent)]
    Ring(#[from] RingError),
}

/// `binom(x, y)` with the silent-vanishing convention: zero whenever
/// `y < 0` or `y > x` (for `x >= 0`). All the degeneracy-locus sums rely
/// on this convention.
pub fn binomial(x: i64, y: i64) -> BigInt {
    if y < 0 || y > x || x < 0 {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..y {
        acc = acc * BigInt::from(x - i) / BigInt::from(i + 1);
    }
    acc
}

/// A vector bundle or formal difference of bundles, recorded as a rank
/// (possibly negative) and a total Chern class with constant term 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KClassRep {
    rank: i64,
    total_chern: Poly,
}

impl KClassRep {
    pub fn new(rank: i64, total_chern: Poly) -> Result<Self, ChernError> {
        if !total_chern.constant_term().is_one() {
            return Err(ChernError::BadConstantTerm(total_chern.constant_term()));
        }
        Ok(KClassRep { rank, total_chern })
    }

    /// The rank-0 trivial class `1`.
    pub fn trivial(ring: &Ring) -> Self {
        KClassRep {
            rank: 0,
            total_chern: ring.one(),
        }
    }

    pub fn rank(&self) -> i64 {
        self.rank
    }

    pub fn total_chern(&self) -> &Poly {
        &self.total_chern
    }

    pub fn ring(&self) -> &Ring {
        self.total_chern.ring()
    }

    /// `c_i`, the degree-`i` graded part of the total Chern class.
    pub fn chern_part(&self, i: u32) -> Poly {
        self.total_chern.graded_part(i)
    }
}

/// Series inverse of the total Chern class; `s_k` are its graded parts.
pub fn total_segre(x: &KClassRep) -> Result<Poly, ChernError> {
    Ok(x.total_chern.unit_series_inverse()?)
}

fn check_twist_weight(weight: &Poly) -> Result<(), ChernError> {
    if weight.is_zero() || weight.is_homogeneous_of(1) {
        Ok(())
    } else {
        Err(ChernError::TwistNotLinear)
    }
}

/// Total Chern class of `E (x) L` for `E` an honest bundle of rank `r`
/// and `L` a line class with first Chern class `weight`:
/// `c_i(E(x)L) = sum_j binom(r - j, i - j) c_j(E) weight^(i-j)`.
pub fn twist_chern(r: i64, x: &KClassRep, weight: &Poly) -> Result<KClassRep, ChernError> {
    if r < 1 {
        return Err(ChernError::RankTooSmall(r));
    }
    check_twist_weight(weight)?;
    let ring = x.ring().clone();
    let trunc = ring.truncation();
    if let Some(max) = x.total_chern.max_degree() {
        if i64::from(max) > r {
            return Err(ChernError::ClassAboveRank {
                degree: max,
                rank: r,
            });
        }
    }
    let weight = weight.map_to_ring(&ring)?;
    let top = trunc.min(r.unsigned_abs().try_into().unwrap_or(u32::MAX));
    let mut weight_pows: Vec<Poly> = vec![ring.one()];
    for _ in 0..top {
        weight_pows.push(weight_pows.last().unwrap() * &weight);
    }
    let mut total = ring.zero();
    for i in 0..=top {
        for j in 0..=i {
            let cj = x.chern_part(j);
            if cj.is_zero() {
                continue;
            }
            let b = binomial(r - i64::from(j), i64::from(i - j));
            if b.is_zero() {
                continue;
            }
            total = &total + &(&cj * &weight_pows[(i - j) as usize]).scale(&b);
        }
    }
    KClassRep::new(r, total)
}

/// `s_p(E (x) L)` by the tensor-product formula for Segre classes:
/// `sum_k binom(m - 1 + p, m - 1 + k) s_k(E) (-weight)^(p-k)` for `E` of
/// rank `m`. Independent of the series-inversion route through
/// [`twist_chern`]; the two are pinned equal in tests.
pub fn twist_segre(x: &KClassRep, weight: &Poly, p: u32) -> Result<Poly, ChernError> {
    let m = x.rank();
    if m < 1 {
        return Err(ChernError::RankTooSmall(m));
    }
    check_twist_weight(weight)?;
    let ring = x.ring().clone();
    let weight = weight.map_to_ring(&ring)?;
    let segre = total_segre(x)?;
    let neg = -&weight;
    let mut neg_pows: Vec<Poly> = vec![ring.one()];
    for _ in 0..p {
        neg_pows.push(neg_pows.last().unwrap() * &neg);
    }
    let mut out = ring.zero();
    for k in 0..=p {
        let sk = segre.graded_part(k);
        if sk.is_zero() {
            continue;
        }
        let b = binomial(m - 1 + i64::from(p), m - 1 + i64::from(k));
        if b.is_zero() {
            continue;
        }
        out = &out + &(&sk * &neg_pows[(p - k) as usize]).scale(&b);
    }
    Ok(out)
}

/// Degree-`e` part of `c(a) * s(b)`, the Chern class of the formal
/// difference `[a] - [b]`.
pub fn chern_of_difference(a: &KClassRep, b: &KClassRep, e: u32) -> Result<Poly, ChernError> {
    if a.ring() != b.ring() {
        return Err(ChernError::Ring(RingError::RingMismatch));
    }
    let segre = total_segre(b)?;
    let mut out = a.ring().zero();
    for i in 0..=e {
        let ci = a.chern_part(i);
        if ci.is_zero() {
            continue;
        }
        let sj = segre.graded_part(e - i);
        if sj.is_zero() {
            continue;
        }
        out = &out + &(&ci * &sj);
    }
    Ok(out)
}

/// Schur determinant `det(c_{q+j-i})` of size `p x p`, with `c_0` the
/// first list entry and `c_k = 0` for `k < 0` or beyond the list.
pub fn schur_delta(p: u32, q: u32, cls: &[Poly]) -> Result<Poly, ChernError> {
    if cls.is_empty() {
        return Err(ChernError::EmptyClassList);
    }
    let ring = cls[0].ring().clone();
    if cls.iter().any(|c| c.ring() != &ring) {
        return Err(ChernError::MixedRings);
    }
    let entry = |i: i64, j: i64| -> Poly {
        let idx = i64::from(q) + j - i;
        if idx < 0 {
            return ring.zero();
        }
        cls.get(idx as usize)
            .cloned()
            .unwrap_or_else(|| ring.zero())
    };
    let n = p as usize;
    let matrix: Vec<Vec<Poly>> = (1..=n as i64)
        .map(|i| (1..=n as i64).map(|j| entry(i, j)).collect())
        .collect();
    Ok(determinant(&matrix, &ring))
}

fn determinant(m: &[Vec<Poly>], ring: &Ring) -> Poly {
    let n = m.len();
    if n == 0 {
        return ring.one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut det = ring.zero();
    for (i, row) in m.iter().enumerate() {
        if row[0].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Poly>> = m
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, r)| r[1..].to_vec())
            .collect();
        let cofactor = &row[0] * &determinant(&minor, ring);
        det = if i % 2 == 0 {
            &det + &cofactor
        } else {
            &det - &cofactor
        };
    }
    det
}

/// The shared ambient ring for both routes to the Chern class of the
/// cotangent bundle: classes `c1..c{n+1}` of the standard rank-(n+1)
/// representation, degree-1 fiber class `t`, truncation `n+1`.
pub fn omega_ring(n: usize) -> Result<Ring, RingError> {
    let names: Vec<String> = (1..=n + 1).map(|i| format!("c{i}")).collect();
    let mut vars: Vec<(&str, u32)> = names
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_str(), (i + 1) as u32))
        .collect();
    vars.push(("t", 1));
    Ring::new(&vars, (n + 1) as u32)
}

/// Chern class of the dual standard representation, `sum (-1)^j c_j`.
pub fn dual_standard_class(ring: &Ring, n: usize) -> Result<KClassRep, ChernError> {
    let mut total = ring.one();
    for j in 1..=n + 1 {
        let cj = ring.var(&format!("c{j}"))?;
        total = if j % 2 == 1 {
            &total - &cj
        } else {
            &total + &cj
        };
    }
    KClassRep::new((n + 1) as i64, total)
}

/// Total equivariant Chern class of the cotangent bundle of `P^n`,
/// computed purely by twisting the dual standard bundle by `-t`
/// (no Chern roots involved).
pub fn euler_omega_twist(n: usize) -> Result<Poly, ChernError> {
    let ring = omega_ring(n)?;
    let dual = dual_standard_class(&ring, n)?;
    let minus_t = -&ring.var("t")?;
    let twisted = twist_chern((n + 1) as i64, &dual, &minus_t)?;
    Ok(twisted.total_chern().clone())
}
