//! The equidegree pipeline: class of the relative singular locus over the
//! Grassmannian parameter space, its pushforward, the alpha multiplicity
//! in characteristic two, the closed form, and the relation list.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{gdmn_pic_ring, DivisorClassExpr, GdmnSetup, ModuliError};
use crate::chern::{binomial, chern_of_difference, euler_omega_twist, twist_chern, KClassRep};
use crate::gring::{Poly, Ring};
use crate::push::{pushforward_t, relation_coefficients, BundleRelation};

/// Ambient ring for the equidegree family: the fiber hyperplane `t`, the
/// classes `tau1..tau{m}` of the rank-m tautological subsheaf (degree p
/// each), and `c1..c{n+1}` of the standard representation. Truncation
/// `n+1`.
pub fn gdmn_ring(s: &GdmnSetup) -> Ring {
    let m = s.m() as usize;
    let n = s.n() as usize;
    let tau_names: Vec<String> = (1..=m).map(|p| format!("tau{p}")).collect();
    let c_names: Vec<String> = (1..=n + 1).map(|i| format!("c{i}")).collect();
    let mut vars: Vec<(&str, u32)> = vec![("t", 1)];
    vars.extend(
        tau_names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), (i + 1) as u32)),
    );
    vars.extend(
        c_names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), (i + 1) as u32)),
    );
    Ring::new(&vars, (n + 1) as u32).expect("valid roster")
}

fn tautological_subsheaf(s: &GdmnSetup, ring: &Ring) -> Result<KClassRep, ModuliError> {
    let mut total = ring.one();
    for p in 1..=s.m() {
        total = &total + &ring.var(&format!("tau{p}"))?;
    }
    Ok(KClassRep::new(i64::from(s.m()), total)?)
}

/// Class of the universal complete intersection:
/// `[X] = sum_l (-1)^(m-l) d^l t^l c_{m-l}(T)`.
fn intersection_class(s: &GdmnSetup, ring: &Ring) -> Result<Poly, ModuliError> {
    let t = ring.var("t")?;
    let mut out = ring.zero();
    for l in 0..=s.m() {
        let tau_index = s.m() - l;
        let tau = if tau_index == 0 {
            ring.one()
        } else {
            ring.var(&format!("tau{tau_index}"))?
        };
        let sign = if tau_index.is_multiple_of(2) { 1 } else { -1 };
        let coeff = BigInt::from(s.d()).pow(l) * BigInt::from(sign);
        out = &out + &(&tau * &t.pow(l)).scale(&coeff);
    }
    Ok(out)
}

/// Class of the relative singular locus: `[X]` times the degree-e Chern
/// class of the virtual difference "cotangent minus twisted tautological
/// subsheaf", with Segre classes of the subsheaf produced by series
/// inversion. Homogeneous of degree `n+1`.
pub fn g_singular_class(s: &GdmnSetup) -> Result<Poly, ModuliError> {
    let ring = gdmn_ring(s);
    let n = s.n() as usize;
    let class_x = intersection_class(s, &ring)?;
    let taut = tautological_subsheaf(s, &ring)?;
    let minus_dt = ring.var("t")?.scale_i64(-i64::from(s.d()));
    let twisted = twist_chern(i64::from(s.m()), &taut, &minus_dt)?;
    let omega = KClassRep::new(n as i64, euler_omega_twist(n)?.map_to_ring(&ring)?)?;
    let difference_part = chern_of_difference(&omega, &twisted, s.e())?;
    Ok(&class_x * &difference_part)
}

/// Multiplicity of the singular-locus scheme over the discriminant: 2 in
/// characteristic two with `n - m` even, 1 otherwise.
pub fn alpha_factor(s: &GdmnSetup) -> u8 {
    if s.characteristic() == 2 && (s.n() - s.m()).is_multiple_of(2) {
        2
    } else {
        1
    }
}

/// Pushforward of the singular-locus class before dividing by alpha,
/// with the degree-1 tautological class rewritten as `-s1`.
pub fn g_pushforward_raw(s: &GdmnSetup) -> Result<DivisorClassExpr, ModuliError> {
    let class = g_singular_class(s)?;
    let rel = BundleRelation::standard(s.n() as usize, class.ring(), "t")?;
    let pushed = pushforward_t(&class, &rel)?;
    // Degree-1 support is tau1 and c1 only; land on (c1, s1) via
    // c1(T) = -s1.
    let c1_coeff = pushed.coefficient(&[("c1", 1)])?;
    let tau1_coeff = pushed.coefficient(&[("tau1", 1)])?;
    let ambient = pushed.ring().clone();
    let reconstructed =
        &ambient.var("c1")?.scale(&c1_coeff) + &ambient.var("tau1")?.scale(&tau1_coeff);
    assert_eq!(
        pushed, reconstructed,
        "pushforward of a degree-(n+1) class must be linear in c1 and tau1"
    );
    let ring = gdmn_pic_ring();
    let expr = &ring.var("c1")?.scale(&c1_coeff) + &ring.var("s1")?.scale(&-tau1_coeff);
    DivisorClassExpr::from_poly(expr)
}

fn divide_exactly(expr: &DivisorClassExpr, alpha: u8) -> Result<DivisorClassExpr, ModuliError> {
    if alpha == 1 {
        return Ok(expr.clone());
    }
    let ring = gdmn_pic_ring();
    let big_alpha = BigInt::from(alpha);
    let mut out = ring.zero();
    for (name, coeff) in expr.coefficients() {
        let (q, r) = coeff.div_rem(&big_alpha);
        if !r.is_zero() {
            return Err(ModuliError::NonExactAlphaDivision {
                alpha,
                class: expr.to_string(),
            });
        }
        out = &out + &ring.var(&name)?.scale(&q);
    }
    DivisorClassExpr::from_poly(out)
}

/// The discriminant divisor class `r_{d,m,n}(c1, s1)`: alpha-exact
/// division of the raw pushforward.
pub fn g_divisor_class(s: &GdmnSetup) -> Result<DivisorClassExpr, ModuliError> {
    divide_exactly(&g_pushforward_raw(s)?, alpha_factor(s))
}

/// Closed form of the divisor class: the two alternating binomial sums
/// over `0 <= i <= e`, divided by alpha. Pinned equal to
/// [`g_divisor_class`].
pub fn g_closed_form(s: &GdmnSetup) -> Result<DivisorClassExpr, ModuliError> {
    let (d, m, n) = (i64::from(s.d()), i64::from(s.m()), i64::from(s.n()));
    let e = i64::from(s.e());
    let mut s1_sum = BigInt::zero();
    let mut c1_sum = BigInt::zero();
    for i in 0..=e {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        s1_sum += binomial(n + 1, i)
            * binomial(n + 1 - i, m)
            * BigInt::from(d).pow((n - i) as u32)
            * BigInt::from(sign);
        c1_sum += binomial(n, i)
            * binomial(n - i, m - 1)
            * BigInt::from(d).pow((n + 1 - i) as u32)
            * BigInt::from(-sign);
    }
    let ring = gdmn_pic_ring();
    let expr = DivisorClassExpr::from_poly(
        &ring.var("s1")?.scale(&s1_sum) + &ring.var("c1")?.scale(&c1_sum),
    )?;
    divide_exactly(&expr, alpha_factor(s))
}

/// Faithful-degree bound for the tautological classes: Schubert
/// relations on the Grassmannian of m-planes in the space of degree-d
/// forms start in degree `N - m + 1` with `N = binom(n+d, d)`, so full
/// relation lists require `n + 1 <= N - m`.
fn gdmn_soundness_bound(s: &GdmnSetup) -> (BigInt, String) {
    let capacity = binomial(i64::from(s.n()) + i64::from(s.d()), i64::from(s.d()));
    let bound = capacity.clone() - BigInt::from(s.m());
    (
        bound.clone(),
        format!(
            "Schubert-free degree of the Grassmannian of {}-planes in a {}-dimensional form space = {}",
            s.m(),
            capacity,
            bound
        ),
    )
}

/// Relation list in the ascending convention: entry `i` multiplies `t^i`
/// in the canonicalized singular-locus class, `i = 0..=n`; entries
/// `1..=n` are the Chow-ring relations.
pub fn g_relations(s: &GdmnSetup) -> Result<Vec<Poly>, ModuliError> {
    let needed = s.n() + 1;
    let (bound, detail) = gdmn_soundness_bound(s);
    if BigInt::from(needed) > bound {
        return Err(ModuliError::RelationRangeUnsound {
            needed,
            bound,
            detail,
        });
    }
    let class = g_singular_class(s)?;
    let rel = BundleRelation::standard(s.n() as usize, class.ring(), "t")?;
    Ok(relation_coefficients(&class, &rel)?.ascending())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intersection_class_for_one_hypersurface() {
        // m = 1: [X] = d t - tau1.
        let s = GdmnSetup::new(2, 1, 2, 0).unwrap();
        let ring = gdmn_ring(&s);
        let x = intersection_class(&s, &ring).unwrap();
        assert_eq!(x, ring.parse("2*t - tau1").unwrap());
    }

    #[test]
    fn singular_class_homogeneous_of_codimension() {
        for (d, m, n) in [(2u32, 1u32, 2u32), (4, 1, 2), (2, 3, 4), (3, 2, 4)] {
            let s = GdmnSetup::new(d, m, n, 0).unwrap();
            let class = g_singular_class(&s).unwrap();
            assert!(class.is_homogeneous_of(n + 1), "({d},{m},{n})");
        }
    }

    #[test]
    fn singular_class_212_matches_hand_expansion() {
        // Hand expansion of (2t - tau1) * (t^2 - tau1 t + tau1^2 + c1 tau1 + c2):
        let s = GdmnSetup::new(2, 1, 2, 0).unwrap();
        let got = g_singular_class(&s).unwrap();
        let expected = gdmn_ring(&s)
            .parse(
                "2*t^3 - 3*tau1*t^2 + 3*tau1^2*t + 2*c1*tau1*t + 2*c2*t \
                 - tau1^3 - c1*tau1^2 - c2*tau1",
            )
            .unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn divisor_class_412_anchor() {
        let s = GdmnSetup::new(4, 1, 2, 0).unwrap();
        let d = g_divisor_class(&s).unwrap();
        assert_eq!(d.poly(), &gdmn_pic_ring().parse("-36*c1 + 27*s1").unwrap());
        assert_eq!(g_closed_form(&s).unwrap(), d);
    }

    #[test]
    fn divisor_class_234_anchor() {
        let s = GdmnSetup::new(2, 3, 4, 0).unwrap();
        let d = g_divisor_class(&s).unwrap();
        assert_eq!(d.poly(), &gdmn_pic_ring().parse("-48*c1 + 40*s1").unwrap());
        assert_eq!(g_closed_form(&s).unwrap(), d);
    }

    #[test]
    fn divisor_class_212_from_hand_reduction() {
        // Reducing the hand expansion by t^3 = -(c1 t^2 + c2 t + c3)
        // leaves (-2c1 - 3tau1) t^2 + ..., so the class is 3 s1 - 2 c1.
        let s = GdmnSetup::new(2, 1, 2, 0).unwrap();
        let d = g_divisor_class(&s).unwrap();
        assert_eq!(d.poly(), &gdmn_pic_ring().parse("-2*c1 + 3*s1").unwrap());
    }

    #[test]
    fn alpha_factor_cases() {
        assert_eq!(alpha_factor(&GdmnSetup::new(2, 1, 3, 2).unwrap()), 2);
        assert_eq!(alpha_factor(&GdmnSetup::new(2, 1, 3, 0).unwrap()), 1);
        assert_eq!(alpha_factor(&GdmnSetup::new(2, 1, 3, 3).unwrap()), 1);
        assert_eq!(alpha_factor(&GdmnSetup::new(2, 1, 2, 2).unwrap()), 1);
        assert_eq!(alpha_factor(&GdmnSetup::new(2, 2, 4, 2).unwrap()), 2);
    }

    #[test]
    fn alpha_halving_is_exact_for_213_char2() {
        let even = GdmnSetup::new(2, 1, 3, 2).unwrap();
        let raw = g_pushforward_raw(&even).unwrap();
        assert_eq!(raw.poly(), &gdmn_pic_ring().parse("-2*c1 + 4*s1").unwrap());
        let halved = g_divisor_class(&even).unwrap();
        assert_eq!(halved.poly(), &gdmn_pic_ring().parse("-c1 + 2*s1").unwrap());
        // alpha = 1 regimes leave the class unchanged.
        let odd_char = GdmnSetup::new(2, 1, 3, 3).unwrap();
        assert_eq!(g_divisor_class(&odd_char).unwrap(), raw);
    }

    #[test]
    fn hyperplanes_have_empty_discriminant() {
        let s = GdmnSetup::new(1, 1, 3, 0).unwrap();
        assert!(g_divisor_class(&s).unwrap().is_zero());
        assert!(g_closed_form(&s).unwrap().is_zero());
    }

    #[test]
    fn relations_212_match_hand_values() {
        // From the hand reduction in `singular_class_212_matches_hand_expansion`:
        // zeta_0 = -(tau1^3 + c1 tau1^2 + c2 tau1 + 2 c3)
        // zeta_1 = 3 tau1^2 + 2 c1 tau1
        // zeta_2 = -3 tau1 - 2 c1
        let s = GdmnSetup::new(2, 1, 2, 0).unwrap();
        let ring = gdmn_ring(&s);
        let zetas = g_relations(&s).unwrap();
        assert_eq!(zetas.len(), 3);
        assert_eq!(
            zetas[0],
            ring.parse("-tau1^3 - c1*tau1^2 - c2*tau1 - 2*c3").unwrap()
        );
        assert_eq!(zetas[1], ring.parse("3*tau1^2 + 2*c1*tau1").unwrap());
        assert_eq!(zetas[2], ring.parse("-3*tau1 - 2*c1").unwrap());
    }

    #[test]
    fn top_relation_entry_is_alpha_times_divisor_class() {
        for characteristic in [0u64, 2] {
            let s = GdmnSetup::new(2, 1, 3, characteristic).unwrap();
            let zetas = g_relations(&s).unwrap();
            let ring = gdmn_ring(&s);
            let top = zetas.last().unwrap();
            let divisor = g_divisor_class(&s).unwrap();
            // map c1 -> c1, s1 -> -tau1 back into the ambient ring
            let c1 = divisor.coefficient("c1").unwrap();
            let s1 = divisor.coefficient("s1").unwrap();
            let alpha = BigInt::from(alpha_factor(&s));
            let expected = (&ring.var("c1").unwrap().scale(&c1)
                + &ring.var("tau1").unwrap().scale(&-s1))
                .scale(&alpha);
            assert_eq!(top, &expected, "char {characteristic}");
        }
    }

    #[test]
    fn relations_guard_rejects_degree_one_forms() {
        // d = 1: the form space has dimension n+1 and the Schubert-free
        // range n+1-m is below the needed n+1.
        let s = GdmnSetup::new(1, 1, 2, 0).unwrap();
        assert!(matches!(
            g_relations(&s),
            Err(ModuliError::RelationRangeUnsound { .. })
        ));
    }
}
