//! Acceptance suite: one test per criterion, every comparison exact
//! (integer arithmetic, tolerance zero). Each test prints a PASS line;
//! run with `cargo test -p equichow-cli --test acceptance -- --nocapture`
//! to see them.

use std::collections::HashSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use equichow::chern::euler_omega_twist;
use equichow::moduli::{
    f_closed_form, f_divisor_class, fab_pic_ring, g_closed_form, g_divisor_class,
    g_pushforward_raw, genus_pipeline, picard_presentation_gdmn, quadric_discriminant_class,
    FabSetup, GdmnSetup, Torsor,
};
use equichow::symcalc::omega_chern_via_roots;
use equichow::{quotient_structure, smith_normal_form, IntMatrix};

fn assert_under(elapsed: Duration, budget: Duration, what: &str) {
    assert!(
        elapsed < budget,
        "{what} took {elapsed:?}, budget {budget:?}"
    );
}

#[test]
fn criterion_01_f_family_anchor() {
    let start = Instant::now();
    let s = FabSetup::new(2, 3, 3).unwrap();
    let expected = fab_pic_ring().parse("33*u + 34*v - 42*c1").unwrap();
    let pipeline = f_divisor_class(&s).unwrap();
    let closed = f_closed_form(&s).unwrap();
    assert_eq!(pipeline.poly(), &expected);
    assert_eq!(closed.poly(), &expected);
    assert_under(start.elapsed(), Duration::from_secs(1), "criterion 1");
    println!("ACCEPTANCE 01 PASS: divisor class and closed form at (2,3,3) are 33u+34v-42c1");
}

#[test]
fn criterion_02_genus_three() {
    let start = Instant::now();
    let report = genus_pipeline(3, 0).unwrap();
    // Pic of the open locus is Z/9, cyclic on c1.
    assert_eq!(report.structure.free_rank(), 0);
    assert_eq!(report.structure.invariant_factors(), &[BigInt::from(9)]);
    assert_eq!(report.open_locus_order, Some(BigInt::from(9)));
    // Independent check that the image of c1 generates: its residue is a
    // unit mod 9.
    let pres = picard_presentation_gdmn(&GdmnSetup::new(4, 1, 2, 0).unwrap(), Torsor::P).unwrap();
    let structure = quotient_structure(&pres);
    let c1 = [BigInt::one(), BigInt::zero()];
    let coords = structure.coordinates(&c1).unwrap();
    assert_eq!(coords.torsion.len(), 1);
    assert!(coords.torsion[0].gcd(&BigInt::from(9)).is_one());
    // Pic of the moduli stack: free of rank 1, hyperelliptic multiple 9.
    assert_eq!(report.moduli_free_rank, 1);
    assert!(report.moduli_torsion.is_empty());
    assert_eq!(report.divisor_multiples["H3"].absolute, BigInt::from(9));
    assert_under(start.elapsed(), Duration::from_secs(1), "criterion 2");
    println!("ACCEPTANCE 02 PASS: genus 3 gives Z/9 on c1 and [H3] = 9 lambda1");
}

#[test]
fn criterion_03_genus_five() {
    let start = Instant::now();
    let report = genus_pipeline(5, 0).unwrap();
    assert_eq!(report.structure.free_rank(), 0);
    assert_eq!(report.structure.invariant_factors(), &[BigInt::from(8)]);
    assert_eq!(report.open_locus_order, Some(BigInt::from(8)));
    assert_eq!(report.moduli_free_rank, 1);
    assert!(report.moduli_torsion.is_empty());
    assert_eq!(report.divisor_multiples["T5"].absolute, BigInt::from(8));
    assert_under(start.elapsed(), Duration::from_secs(1), "criterion 3");
    println!("ACCEPTANCE 03 PASS: genus 5 gives Z/8 on c1 and [T5] = 8 lambda1");
}

#[test]
fn criterion_04_genus_four() {
    let start = Instant::now();
    let report = genus_pipeline(4, 0).unwrap();
    assert!(report.structure.is_free_of_rank(1));
    assert_eq!(report.moduli_free_rank, 1);
    assert!(report.moduli_torsion.is_empty());
    // The shipped discriminant-of-quadrics class is (n+1)u - 2c1.
    let delta = quadric_discriminant_class(3).unwrap();
    assert_eq!(delta.poly(), &fab_pic_ring().parse("4*u - 2*c1").unwrap());
    assert_eq!(report.divisor_multiples["M4ev"].absolute, BigInt::from(34));
    assert_under(start.elapsed(), Duration::from_secs(1), "criterion 4");
    println!("ACCEPTANCE 04 PASS: genus 4 is free of rank 1 and [M4ev] = 34 lambda1");
}

#[test]
fn criterion_05_closed_form_grids() {
    let start = Instant::now();
    let mut checked = 0usize;
    for a in 1..=4u32 {
        for b in a + 1..=4 {
            for n in 3..=5u32 {
                let s = FabSetup::new(a, b, n).unwrap();
                assert_eq!(
                    f_closed_form(&s).unwrap(),
                    f_divisor_class(&s).unwrap(),
                    "bidegree ({a},{b},{n})"
                );
                checked += 1;
            }
        }
    }
    for d in 1..=4u32 {
        for m in 1..5u32 {
            for n in m + 1..=5 {
                for characteristic in [0u64, 2] {
                    let s = GdmnSetup::new(d, m, n, characteristic).unwrap();
                    assert_eq!(
                        g_closed_form(&s).unwrap(),
                        g_divisor_class(&s).unwrap(),
                        "equidegree ({d},{m},{n}) char {characteristic}"
                    );
                    checked += 1;
                }
            }
        }
    }
    assert_eq!(checked, 18 + 80);
    assert_under(start.elapsed(), Duration::from_secs(30), "criterion 5");
    println!("ACCEPTANCE 05 PASS: closed forms match pipelines on {checked} grid points");
}

#[test]
fn criterion_06_dual_route_chern_oracle() {
    let start = Instant::now();
    for n in 1..=6usize {
        assert_eq!(
            omega_chern_via_roots(n).unwrap(),
            euler_omega_twist(n).unwrap(),
            "n = {n}"
        );
    }
    assert_under(start.elapsed(), Duration::from_secs(10), "criterion 6");
    println!("ACCEPTANCE 06 PASS: root route equals twist route for n = 1..=6");
}

#[test]
fn criterion_07_classical_discriminant_degree() {
    for d in 1..=5u32 {
        for n in 2..=5u32 {
            let s = GdmnSetup::new(d, 1, n, 0).unwrap();
            let s1 = g_divisor_class(&s).unwrap().coefficient("s1").unwrap();
            let expected = BigInt::from(n + 1) * BigInt::from(d as i64 - 1).pow(n);
            assert_eq!(s1, expected, "(d,m,n) = ({d},1,{n})");
        }
    }
    println!("ACCEPTANCE 07 PASS: m=1 s1-coefficient equals (n+1)(d-1)^n for d<=5, n<=5");
}

#[test]
fn criterion_08_alpha_regime() {
    // (2,1,3) in characteristic 2 has n-m even: every raw coefficient is
    // even and halving is exact.
    let even = GdmnSetup::new(2, 1, 3, 2).unwrap();
    let raw = g_pushforward_raw(&even).unwrap();
    let two = BigInt::from(2);
    for (name, coeff) in raw.coefficients() {
        assert!(
            coeff.mod_floor(&two).is_zero(),
            "raw {name} coefficient {coeff} must be even"
        );
    }
    let halved = g_divisor_class(&even).unwrap();
    for (name, coeff) in halved.coefficients() {
        assert_eq!(&coeff * &two, raw.coefficient(&name).unwrap());
    }
    // alpha = 1 regimes leave classes unchanged.
    for characteristic in [0u64, 3, 5] {
        let s = GdmnSetup::new(2, 1, 3, characteristic).unwrap();
        assert_eq!(g_divisor_class(&s).unwrap(), raw);
    }
    let odd = GdmnSetup::new(2, 1, 2, 2).unwrap(); // n-m odd, char 2
    assert_eq!(
        g_divisor_class(&odd).unwrap(),
        g_pushforward_raw(&odd).unwrap()
    );
    println!("ACCEPTANCE 08 PASS: alpha=2 halving exact at (2,1,3) char 2; alpha=1 unchanged");
}

/// Determinant by cofactor expansion, independent of the library.
fn det_cofactor(m: &[Vec<i64>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    if n == 1 {
        return BigInt::from(m[0][0]);
    }
    let mut det = BigInt::zero();
    for i in 0..n {
        if m[i][0] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != i)
            .map(|(_, row)| row[1..].to_vec())
            .collect();
        let term = BigInt::from(m[i][0]) * det_cofactor(&minor);
        if i % 2 == 0 {
            det += term;
        } else {
            det -= term;
        }
    }
    det
}

/// Order of `(Z/n)^c / <rows>` by explicit closure of the subgroup the
/// rows generate: when the quotient exponent divides `n`, the quotient
/// order is `n^c / |subgroup|`. Elements are packed into u32 keys
/// (c <= 4, residues < 256).
fn order_by_coset_enumeration(rows: &[Vec<i64>], cols: usize, n: u64) -> Option<BigInt> {
    assert!(cols <= 4 && n <= 200);
    let reduce = |x: i64| -> u8 { (x.rem_euclid(n as i64)) as u8 };
    let pack = |e: &[u8; 4]| -> u32 { u32::from_le_bytes(*e) };
    let gens: Vec<[u8; 4]> = rows
        .iter()
        .map(|r| {
            let mut g = [0u8; 4];
            for (i, &x) in r.iter().enumerate() {
                g[i] = reduce(x);
            }
            g
        })
        .collect();
    let mut seen: HashSet<u32> = HashSet::new();
    let mut queue: Vec<[u8; 4]> = vec![[0u8; 4]];
    seen.insert(0);
    while let Some(elem) = queue.pop() {
        for g in &gens {
            let mut next = [0u8; 4];
            for i in 0..cols {
                next[i] = (((elem[i] as u64) + (g[i] as u64)) % n) as u8;
            }
            if seen.insert(pack(&next)) {
                queue.push(next);
            }
        }
    }
    let total = BigInt::from(n).pow(cols as u32);
    let subgroup = BigInt::from(seen.len());
    let (order, rem) = total.div_rem(&subgroup);
    if rem.is_zero() {
        Some(order)
    } else {
        None
    }
}

#[test]
fn criterion_09_snf_property_suite() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_5eed);
    let mut enumerated = 0usize;
    let mut square_checked = 0usize;
    for case in 0..200 {
        let rows = rng.gen_range(1..=4usize);
        let cols = rng.gen_range(1..=4usize);
        let entries: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(-10..=10i64)).collect())
            .collect();
        let flat: Vec<i64> = entries.iter().flatten().copied().collect();
        let a = IntMatrix::from_i64(rows, cols, &flat);
        let snf = smith_normal_form(&a);

        // U * A * V = D with unimodular U, V.
        assert_eq!(snf.u.mul(&a).mul(&snf.v), snf.d, "case {case}: UAV != D");
        assert!(snf.u.det().abs().is_one(), "case {case}: U not unimodular");
        assert!(snf.v.det().abs().is_one(), "case {case}: V not unimodular");

        // Diagonal, non-negative, divisibility chain.
        let diag = snf.diagonal();
        for i in 0..rows {
            for j in 0..cols {
                if i != j {
                    assert!(snf.d[(i, j)].is_zero(), "case {case}: off-diagonal");
                }
            }
        }
        for i in 0..diag.len() {
            assert!(!diag[i].is_negative());
            if i + 1 < diag.len() {
                if diag[i].is_zero() {
                    assert!(diag[i + 1].is_zero(), "case {case}: chain order");
                } else {
                    assert!(
                        diag[i + 1].mod_floor(&diag[i]).is_zero(),
                        "case {case}: {} does not divide {}",
                        diag[i],
                        diag[i + 1]
                    );
                }
            }
        }

        // Square nonsingular: invariant-factor product equals |det| by an
        // independent cofactor expansion.
        if rows == cols {
            let det = det_cofactor(&entries);
            if !det.is_zero() {
                let product: BigInt = diag.iter().product();
                assert_eq!(product, det.abs(), "case {case}: factor product");
                square_checked += 1;
            }
        }

        // Finite quotients of order <= 200: verify the order by coset
        // enumeration.
        let gens = cols;
        let nonzero = diag.iter().filter(|d| !d.is_zero()).count();
        if nonzero == gens {
            let order: BigInt = diag.iter().product();
            if order <= BigInt::from(200) && order >= BigInt::one() {
                let n: u64 = order.to_string().parse().unwrap();
                let enumerated_order = order_by_coset_enumeration(&entries, cols, n)
                    .expect("subgroup size must divide the box");
                assert_eq!(enumerated_order, order, "case {case}: coset count");
                enumerated += 1;
            }
        }
    }
    assert!(square_checked > 10, "want many nonsingular square cases");
    assert!(enumerated > 5, "want several enumerable finite quotients");
    println!(
        "ACCEPTANCE 09 PASS: 200 random SNF cases ({square_checked} determinant checks, \
         {enumerated} coset enumerations)"
    );
}

#[test]
fn criterion_10_deterministic_json() {
    let binary = env!("CARGO_BIN_EXE_equichow");
    let run = || {
        Command::new(binary)
            .args(["genus", "4", "--format", "json"])
            .output()
            .expect("binary runs")
    };
    let first = run();
    let second = run();
    assert!(first.status.success());
    assert!(second.status.success());
    assert!(!first.stdout.is_empty());
    assert_eq!(first.stdout, second.stdout, "output must be byte-identical");
    println!("ACCEPTANCE 10 PASS: `genus 4 --format json` is byte-identical across runs");
}
