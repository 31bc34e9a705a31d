//! One test per acceptance criterion; each prints a PASS/FAIL line.

use bourbakikit::algebra::{gcd_of_list, Monomial, Polynomial};
use bourbakikit::bourbaki::{
    bourbaki_number, check_bourbaki_map, e1_from_resolution, extract_bourbaki_ideal,
    generic_bourbaki_search, hilbert_burch, taylor_presentation, IdealGens, DEFAULT_ATTEMPTS,
    DEFAULT_SEED,
};
use bourbakikit::catalog::{
    cofactor_minors, multigraded_exhaustive_search, multigraded_obstruction, n6_z3_bad_configuration,
    n6_z3_explicit, z2, z_nminus2, z_nminus2_stated_witness, z_top, DEFAULT_BUDGET,
};
use bourbakikit::combin::binomial;
use bourbakikit::koszul::{cycle_rank, differential, truncated_resolution};
use bourbakikit::linalg::{minors_gcd, rank_over_fraction_field};
use bourbakikit::rees::{
    canonical_generators, f1, f2, interior_reduction_check, normality_check, Classification,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::{Duration, Instant};

fn report(id: u32, title: &str, ok: bool, detail: &str) {
    let verdict = if ok { "PASS" } else { "FAIL" };
    println!("criterion {id:>2} [{verdict}] {title}: {detail}");
    assert!(ok, "criterion {id} failed: {detail}");
}

fn p(n: usize, s: &str) -> Polynomial {
    Polynomial::parse(n, s).unwrap()
}

fn b(n: i64, k: i64) -> i64 {
    binomial(n, k) as i64
}

#[test]
fn criterion_01_koszul_complex() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut checked = 0;
    for n in 2..=8 {
        for k in 1..n {
            let lo = differential(n, k).unwrap().matrix;
            let hi = differential(n, k + 1).unwrap().matrix;
            if !lo.mul(&hi).unwrap().is_zero() {
                bad.push((n, k));
            }
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    report(
        1,
        "d_k d_(k+1) = 0 for 1 <= k < n <= 8",
        bad.is_empty() && elapsed < Duration::from_secs(10),
        &format!("{checked} products, nonzero at {bad:?}, {elapsed:.2?}"),
    );
}

#[test]
fn criterion_02_rank_law() {
    let mut bad = Vec::new();
    for n in 3..=7 {
        for i in 2..n {
            let r = rank_over_fraction_field(&differential(n, i).unwrap().matrix).unwrap();
            if r.rank as u128 != binomial(n as i64 - 1, i as i64 - 1) {
                bad.push((n, i, r.rank));
            }
        }
    }
    report(2, "rank d_i = C(n-1, i-1), n <= 7", bad.is_empty(), &format!("mismatches {bad:?}"));
}

#[test]
fn criterion_03_z_top() {
    let mut bad = Vec::new();
    let mut count = 0;
    for n in 3..=7 {
        for i in 1..=n {
            for j in i + 1..=n {
                let bundle = z_top(n, i, j).unwrap();
                let want = IdealGens::new(n, [Polynomial::var(n, i - 1), Polynomial::var(n, j - 1)]);
                if !(bundle.certificate.verdict && bundle.ideal.same_generators(&want)) {
                    bad.push((n, i, j));
                }
                count += 1;
            }
        }
    }
    report(3, "Z_(n-1): ideal (x_i, x_j)", bad.is_empty(), &format!("{count} pairs, failures {bad:?}"));
}

#[test]
fn criterion_04_z_nminus2() {
    let mut failures = Vec::new();
    let mut witness_notes = Vec::new();
    for n in 3..=7 {
        let bundle = z_nminus2(n).unwrap();
        if !bundle.certificate.verdict {
            failures.push(format!("n={n}: certificate false"));
        }
        if bundle.ideal_matches() != Some(true) {
            failures.push(format!("n={n}: ideal {:?}", bundle.ideal.gens));
        }
        // The displayed witness must be one of the (r-1)-minors of the map.
        let stated = z_nminus2_stated_witness(n);
        let block = &bundle.witness.as_ref().unwrap().value;
        let minor_degree = cycle_rank(n, n - 2) as u64 - 1;
        let stated_degree = stated.total_degree().unwrap();
        if block != &stated {
            failures.push(format!(
                "n={n}: block minor {block} (degree {}), stated {stated} (degree {stated_degree}); \
                 every {minor_degree}-minor of a linear matrix has degree {minor_degree}",
                block.total_degree().unwrap_or(0)
            ));
        }
        witness_notes.push(format!("n={n}: {block}"));
    }
    report(
        4,
        "Z_(n-2): circular monomials and witness minor",
        failures.is_empty(),
        &format!("{} | block minors {}", failures.join("; "), witness_notes.join(", ")),
    );
}

#[test]
fn criterion_05_z2() {
    let mut failures = Vec::new();
    let five = z2(5).unwrap();
    if five.ideal_matches() != Some(true) {
        failures.push(format!("n=5 generators {:?}", five.ideal.gens));
    }
    if five.extraction.divisor != p(5, "x2^2*x3") {
        failures.push(format!("n=5 divisor {}", five.extraction.divisor));
    }
    for n in 3..=6 {
        let bundle = z2(n).unwrap();
        if !bundle.certificate.verdict {
            failures.push(format!("n={n}: certificate false"));
        }
        let deg = n as u64 - 2;
        if !bundle.ideal.gens.iter().all(|g| g.is_homogeneous() && g.total_degree() == Some(deg)) {
            failures.push(format!("n={n}: degrees"));
        }
    }
    report(5, "Z_2 extraction", failures.is_empty(), &format!("{failures:?}"));
}

#[test]
fn criterion_06_n6_z3() {
    let explicit = n6_z3_explicit().unwrap();
    let g = gcd_of_list(&cofactor_minors(&explicit).unwrap()).unwrap();
    let bad = n6_z3_bad_configuration().unwrap();
    let divisible = bad.gcd_witness.div_exact(&p(6, "x2*x4*x6")).is_ok();
    let ok = explicit.certificate.verdict && g == p(6, "x1^4") && !bad.verdict && divisible;
    report(
        6,
        "n = 6, Z_3",
        ok,
        &format!(
            "explicit verdict {}, cofactor gcd {g}, bad verdict {}, bad witness {}",
            explicit.certificate.verdict, bad.verdict, bad.gcd_witness
        ),
    );
}

#[test]
fn criterion_07_multigraded() {
    let mut failures = Vec::new();
    for n in 3..=30 {
        for i in 2..n {
            let holds = multigraded_obstruction(n, i).unwrap();
            let excluded = (i == 2 && n >= 5) || (n >= 8 && i == n - 3);
            if excluded && holds {
                failures.push(format!("({n},{i}) should fail"));
            }
            if (i == n - 2 || i == n - 1) && !holds {
                failures.push(format!("({n},{i}) should hold"));
            }
        }
    }
    let mut searches = Vec::new();
    for (n, i) in [(5, 2), (6, 2), (6, 3)] {
        let start = Instant::now();
        let r = multigraded_exhaustive_search(n, i, DEFAULT_BUDGET).unwrap();
        let elapsed = start.elapsed();
        if !r.complete || r.passing != 0 {
            failures.push(format!("search ({n},{i}): complete {} passing {}", r.complete, r.passing));
        }
        if elapsed > Duration::from_secs(30 * 60) {
            failures.push(format!("search ({n},{i}) took {elapsed:.2?}"));
        }
        searches.push(format!(
            "({n},{i}) total {} pruned {} failing {} in {elapsed:.2?}",
            r.total, r.pruned, r.failing
        ));
    }
    report(7, "multigraded obstruction", failures.is_empty(), &format!("{failures:?} {searches:?}"));
}

#[test]
fn criterion_08_bourbaki_numbers() {
    let mut failures = Vec::new();
    for n in 3..=8usize {
        for i in 2..n {
            let (ni, ii) = (n as i64, i as i64);
            let r = b(ni - 1, ii - 1);
            let e1 = e1_from_resolution(&truncated_resolution(n, i).unwrap());
            let m = bourbaki_number(ii, r, e1);
            let want = ii * r - ni * b(ni - 2, ii - 2) - ii;
            if m != want {
                failures.push(format!("({n},{i}): {m} vs {want}"));
            }
            if i == n - 1 {
                let a = vec![ni - 1; n];
                let hb = hilbert_burch(&a, &[ni], ni - 1).unwrap();
                if hb.m != m {
                    failures.push(format!("({n},{i}): Hilbert-Burch {} vs {m}", hb.m));
                }
            }
        }
    }
    report(8, "Bourbaki numbers", failures.is_empty(), &format!("{failures:?}"));
}

fn random_monomial_ideal(rng: &mut ChaCha8Rng) -> (usize, Vec<Polynomial>) {
    loop {
        let n = rng.gen_range(2..=6);
        let count = rng.gen_range(2..=6);
        let mut gens: Vec<Monomial> = Vec::new();
        for _ in 0..count * 4 {
            if gens.len() == count {
                break;
            }
            let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
            let m = Monomial::from_exponents(&e);
            if m.is_one() || gens.iter().any(|g| g.divides(&m) || m.divides(g)) {
                continue;
            }
            gens.push(m);
        }
        if gens.len() < 2 {
            continue;
        }
        let polys: Vec<Polynomial> = gens.into_iter().map(Polynomial::monomial).collect();
        if gcd_of_list(&polys).unwrap().is_one() {
            return (n, polys);
        }
    }
}

#[test]
fn criterion_09_extraction_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut failures = Vec::new();
    for k in 0..100 {
        let (n, gens) = random_monomial_ideal(&mut rng);
        let want = IdealGens::new(n, gens.clone());
        let got = extract_bourbaki_ideal(&taylor_presentation(&gens).unwrap()).unwrap();
        if !got.ideal.same_generators(&want) {
            failures.push(format!("#{k}: {:?}", want.gens));
        }
    }
    report(9, "extraction round trip", failures.is_empty(), &format!("100 ideals, failures {failures:?}"));
}

#[test]
fn criterion_10_rees_normality() {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for n in 3..=6usize {
        let start = Instant::now();
        let r = normality_check(n, 3, 3 * n as i64).unwrap();
        let elapsed = start.elapsed();
        if !r.passed() || elapsed > Duration::from_secs(300) {
            failures.push(format!("n={n}: {} counterexamples, {elapsed:.2?}", r.counterexample_count));
        }
        notes.push(format!("n={n}: {} cone points in {elapsed:.2?}", r.boundary + r.interior));
    }
    report(10, "Rees normality", failures.is_empty(), &format!("{failures:?} {notes:?}"));
}

#[test]
fn criterion_11_canonical_module() {
    let mut failures = Vec::new();
    for n in 3..=6usize {
        let bx = 3 * n as i64;
        let c = canonical_generators(n, 3, bx).unwrap();
        let (want, class) = match f2(n) {
            Some(f) => (vec![f1(n), f], Classification::TypeTwo),
            None => (vec![f1(n)], Classification::Gorenstein),
        };
        if c.generators != want || c.classification != class {
            failures.push(format!("n={n}: {:?} {:?}", c.generators, c.classification));
        }
        let red = interior_reduction_check(n, 3, bx).unwrap();
        if !red.passed() {
            failures.push(format!("n={n}: {} reduction violations", red.violation_count));
        }
    }
    report(11, "canonical module generators", failures.is_empty(), &format!("{failures:?}"));
}

#[test]
fn criterion_12_generic_search() {
    let mut failures = Vec::new();
    let mut notes = Vec::new();
    for n in 3..=5usize {
        for i in 2..n {
            let a = differential(n, i).unwrap().matrix;
            let r = cycle_rank(n, i) as usize;
            let rep = generic_bourbaki_search(&a, a.cols(), r, DEFAULT_SEED, DEFAULT_ATTEMPTS).unwrap();
            let ok = rep.success
                && rep.attempts <= 5
                && rep.certificate.as_ref().is_some_and(|c| {
                    let again = check_bourbaki_map(&c.matrix_used, r - 1).unwrap();
                    again.verdict && minors_gcd(&c.matrix_used, r - 1).is_one()
                });
            if !ok {
                failures.push(format!("Z_{i}, n={n}: success {} after {}", rep.success, rep.attempts));
            }
            notes.push(format!("({n},{i}):{}", rep.attempts));
        }
    }
    report(12, "generic search", failures.is_empty(), &format!("{failures:?} attempts {notes:?}"));
}
