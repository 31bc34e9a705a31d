use bourbakikit::algebra::{gcd, Monomial, Polynomial, Rational};
use bourbakikit::bourbaki::{extract_bourbaki_ideal, generic_bourbaki_search, taylor_presentation};
use bourbakikit::koszul::{cycle_rank, differential};
use bourbakikit::linalg::{
    bareiss, laplace, minors_gcd, minors_gcd_by_enumeration, signed_maximal_minors, PolyMatrix,
};
use bourbakikit::rees::{cone_membership, semigroup_generators, semigroup_membership, ConeStatus, LatticeVector};
use num_bigint::BigInt;
use proptest::prelude::*;

const N: usize = 3;

fn poly(max_terms: usize, max_exp: u32) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0..=max_exp, N), -4i64..=4), 0..=max_terms)
        .prop_map(|terms| {
            Polynomial::from_terms(
                N,
                terms.into_iter().map(|(e, c)| {
                    (Monomial::from_exponents(&e), Rational::from_integer(BigInt::from(c)))
                }),
            )
        })
}

fn matrix(rows: usize, cols: usize, terms: usize) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(prop::collection::vec(poly(terms, 2), cols), rows)
        .prop_map(move |r| PolyMatrix::from_rows(N, r).unwrap())
}

/// Entries that are 0 or ± a monomial, the shape Koszul-type maps have.
fn monomial_matrix(rows: usize, cols: usize) -> impl Strategy<Value = PolyMatrix> {
    prop::collection::vec(prop::collection::vec(poly(1, 2), cols), rows).prop_map(move |r| {
        let r = r
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|p| match p.leading_monomial() {
                        Some(m) if p.leading_coeff().unwrap() > &Rational::from_integer(0.into()) => {
                            Polynomial::monomial(m.clone())
                        }
                        Some(m) => -Polynomial::monomial(m.clone()),
                        None => p,
                    })
                    .collect()
            })
            .collect();
        PolyMatrix::from_rows(N, r).unwrap()
    })
}

fn divides(d: &Polynomial, f: &Polynomial) -> bool {
    f.is_zero() || f.div_exact(d).is_ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn gcd_divides_both(f in poly(4, 3), g in poly(4, 3), h in poly(3, 2)) {
        let fh = &f * &h;
        let gh = &g * &h;
        let d = gcd(&fh, &gh);
        if !d.is_zero() {
            prop_assert!(d.is_normalized());
            prop_assert!(divides(&d, &fh));
            prop_assert!(divides(&d, &gh));
            if !h.is_zero() {
                prop_assert!(divides(&h.normalized(), &d));
            }
        } else {
            prop_assert!(fh.is_zero() && gh.is_zero());
        }
    }

    #[test]
    fn gcd_is_symmetric(f in poly(4, 3), g in poly(4, 3)) {
        prop_assert_eq!(gcd(&f, &g), gcd(&g, &f));
    }

    #[test]
    fn laplace_agrees_with_bareiss(m in (1usize..=4).prop_flat_map(|k| matrix(k, k, 2))) {
        prop_assert_eq!(laplace(&m).unwrap(), bareiss(&m).unwrap());
    }

    #[test]
    fn signed_minors_annihilate(c in (1usize..=3).prop_flat_map(|s| matrix(s + 1, s, 2))) {
        let f = signed_maximal_minors(&c).unwrap();
        for j in 0..c.cols() {
            let mut acc = Polynomial::zero(N);
            for (i, fi) in f.iter().enumerate() {
                acc = &acc + &(fi * c.get(i, j));
            }
            prop_assert!(acc.is_zero());
        }
    }

    #[test]
    fn minors_gcd_matches_enumeration(
        m in (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| matrix(r, c, 2)),
        t in 1usize..=4,
    ) {
        prop_assert_eq!(minors_gcd(&m, t), minors_gcd_by_enumeration(&m, t));
    }

    #[test]
    fn graded_minors_gcd_matches_enumeration(
        m in (1usize..=4, 1usize..=5).prop_flat_map(|(r, c)| monomial_matrix(r, c)),
        t in 1usize..=5,
    ) {
        prop_assert_eq!(minors_gcd(&m, t), minors_gcd_by_enumeration(&m, t));
    }

    #[test]
    fn minors_gcd_ignores_column_order(m in matrix(3, 4, 2), t in 1usize..=3, rot in 0usize..4) {
        let cols: Vec<usize> = (0..4).map(|j| (j + rot) % 4).collect();
        prop_assert_eq!(minors_gcd(&m, t), minors_gcd(&m.select_columns(&cols), t));
    }

    #[test]
    fn polynomial_json_and_text_round_trip(f in poly(5, 3)) {
        let j = serde_json::to_string(&f).unwrap();
        prop_assert_eq!(&serde_json::from_str::<Polynomial>(&j).unwrap(), &f);
        prop_assert_eq!(&Polynomial::parse(N, &f.to_string()).unwrap(), &f);
    }

    #[test]
    fn matrix_json_round_trip(m in matrix(2, 3, 3)) {
        let j = serde_json::to_string(&m).unwrap();
        let back: PolyMatrix = serde_json::from_str(&j).unwrap();
        prop_assert_eq!(back.fingerprint(), m.fingerprint());
    }

    #[test]
    fn extraction_from_monomial_ideals(
        gens in prop::collection::vec(prop::collection::vec(0u32..=2, N), 2..=4),
    ) {
        let mut mons: Vec<Monomial> = gens.iter().map(|e| Monomial::from_exponents(e)).collect();
        mons.sort();
        mons.dedup();
        // Keep a minimal generating set.
        let minimal: Vec<Polynomial> = mons
            .iter()
            .filter(|m| !mons.iter().any(|o| o != *m && o.divides(m)))
            .map(|m| Polynomial::monomial(m.clone()))
            .collect();
        let common = mons.iter().skip(1).fold(mons[0].clone(), |g, m| g.gcd(m));
        prop_assume!(minimal.len() >= 2 && common.is_one());
        let b = taylor_presentation(&minimal).unwrap();
        let e = extract_bourbaki_ideal(&b).unwrap();
        // C^T f = 0 for the recovered generators.
        for j in 0..e.submatrix.cols() {
            let mut acc = Polynomial::zero(N);
            for (i, fi) in e.signed_minors.iter().enumerate() {
                acc = &acc + &(fi * e.submatrix.get(i, j));
            }
            prop_assert!(acc.is_zero());
        }
        // f = divisor * (generators up to sign).
        for (fi, gi) in e.signed_minors.iter().zip(&minimal) {
            let q = fi.div_exact(&e.divisor).unwrap();
            prop_assert!(q == *gi || q == -gi);
        }
    }

    #[test]
    fn koszul_differentials_compose_to_zero(n in 2usize..=5, k in 2usize..=5) {
        prop_assume!(k <= n);
        let a = differential(n, k - 1).unwrap().matrix;
        let b = differential(n, k).unwrap().matrix;
        let ab = a.mul(&b).unwrap();
        for i in 0..ab.rows() {
            prop_assert!(ab.row(i).iter().all(|p| p.is_zero()));
        }
        prop_assert_eq!(b.exact_rank() as u128, cycle_rank(n, k));
    }

    #[test]
    fn semigroup_elements_lie_in_cone(
        n in 3usize..=6,
        coeffs in prop::collection::vec(0i64..=3, 12),
    ) {
        let (e, f) = semigroup_generators(n).unwrap();
        let mut v = vec![0i64; n + 1];
        for (g, c) in e.iter().chain(&f).zip(&coeffs) {
            for (x, y) in v.iter_mut().zip(g.coords()) {
                *x += c * y;
            }
        }
        let v = LatticeVector::new(v);
        prop_assert_ne!(cone_membership(&v, n).unwrap(), ConeStatus::Outside);
        let d = semigroup_membership(&v, n);
        prop_assert!(d.is_some());
        prop_assert_eq!(d.unwrap().reconstruct(n), v);
    }

    #[test]
    fn decompositions_reconstruct(n in 3usize..=6, a in prop::collection::vec(-1i64..=6, 7)) {
        let v = LatticeVector::new(a[..=n].to_vec());
        let status = cone_membership(&v, n).unwrap();
        match semigroup_membership(&v, n) {
            Some(d) => {
                prop_assert_ne!(status, ConeStatus::Outside);
                prop_assert!(d.r.iter().chain(&d.s).all(|&c| c >= 0));
                prop_assert_eq!(d.reconstruct(n), v);
            }
            // Normality: every cone point decomposes.
            None => prop_assert_eq!(status, ConeStatus::Outside),
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn generic_search_is_reproducible(seed in any::<u64>(), (n, i) in prop_oneof![Just((4, 2)), Just((4, 3)), Just((5, 3))]) {
        let a = differential(n, i).unwrap().matrix;
        let r = cycle_rank(n, i) as usize;
        let x = generic_bourbaki_search(&a, a.cols(), r, seed, 3).unwrap();
        let y = generic_bourbaki_search(&a, a.cols(), r, seed, 3).unwrap();
        prop_assert_eq!(serde_json::to_string(&x).unwrap(), serde_json::to_string(&y).unwrap());
        prop_assert!(x.success);
    }
}
