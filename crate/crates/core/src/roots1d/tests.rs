use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn int(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

fn tol(pow10: u32) -> BigRational {
    BigRational::new(BigInt::from(1), BigInt::from(10u64).pow(pow10))
}

/// Dense-sampling Riemann oracle: measure of {|P| <= t} by midpoint counting.
fn riemann_measure(p: &UnivariateSlice, interval: &Interval, t: f64, n: usize) -> f64 {
    let lo = interval.lo().to_f64().unwrap();
    let hi = interval.hi().to_f64().unwrap();
    let coeffs = p.coefficients_f64();
    let h = (hi - lo) / n as f64;
    let mut hits = 0u64;
    for k in 0..n {
        let s = lo + (k as f64 + 0.5) * h;
        let mut v = 0.0;
        for c in coeffs.iter().rev() {
            v = v * s + c;
        }
        if v.abs() <= t {
            hits += 1;
        }
    }
    hits as f64 * h
}

fn random_slice(rng: &mut ChaCha8Rng, max_deg: usize) -> UnivariateSlice {
    let d = rng.gen_range(1..=max_deg);
    let mut coeffs: Vec<BigRational> = (0..=d)
        .map(|_| rat(rng.gen_range(-5..=5), rng.gen_range(1..=3)))
        .collect();
    if coeffs[d].is_zero() {
        coeffs[d] = int(1);
    }
    UnivariateSlice::new(coeffs)
}

#[test]
fn isolates_simple_pair() {
    // s^2 - 1 on [-2, 2]
    let p = UnivariateSlice::from_integers(&[-1, 0, 1]);
    let i = Interval::from_integers(-2, 2);
    let roots = isolate_real_roots(&p, &i, &tol(12)).unwrap();
    assert_eq!(roots.len(), 2);
    assert!(roots[0].enclosure.contains(&int(-1)));
    assert!(roots[1].enclosure.contains(&int(1)));
    assert!(roots.iter().all(|r| r.multiplicity == 1));
}

#[test]
fn isolates_double_root() {
    // s^2 on [-1, 1]: one root at 0 with multiplicity 2
    let p = UnivariateSlice::from_integers(&[0, 0, 1]);
    let i = Interval::from_integers(-1, 1);
    let roots = isolate_real_roots(&p, &i, &tol(12)).unwrap();
    assert_eq!(roots.len(), 1);
    assert!(roots[0].enclosure.contains(&int(0)));
    assert_eq!(roots[0].multiplicity, 2);
}

#[test]
fn isolates_sqrt2_to_tolerance() {
    // s^3 - 2s on [0, 2]: roots 0 (interval endpoint) and sqrt(2)
    let p = UnivariateSlice::from_integers(&[0, -2, 0, 1]);
    let i = Interval::from_integers(0, 2);
    let roots = isolate_real_roots(&p, &i, &tol(12)).unwrap();
    assert_eq!(roots.len(), 2);
    assert!(roots[0].enclosure.contains(&int(0)));
    // bisection oracle for sqrt(2) on the sign change of s^2 - 2
    let (mut a, mut b) = (1.0f64, 2.0f64);
    for _ in 0..60 {
        let m = 0.5 * (a + b);
        if m * m - 2.0 > 0.0 {
            b = m;
        } else {
            a = m;
        }
    }
    let sqrt2 = 0.5 * (a + b);
    let lo = roots[1].enclosure.lo().to_f64().unwrap();
    let hi = roots[1].enclosure.hi().to_f64().unwrap();
    assert!(hi - lo <= 1e-12);
    assert!(lo - 1e-12 <= sqrt2 && sqrt2 <= hi + 1e-12);
}

#[test]
fn zero_polynomial_is_rejected() {
    let z = UnivariateSlice::from_integers(&[0]);
    let i = Interval::from_integers(-1, 1);
    assert!(matches!(
        isolate_real_roots(&z, &i, &tol(9)),
        Err(crate::Error::ZeroPolynomial)
    ));
}

#[test]
fn root_count_bounded_by_degree() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let i = Interval::from_integers(-4, 4);
    for _ in 0..40 {
        let p = random_slice(&mut rng, 6);
        let roots = isolate_real_roots(&p, &i, &tol(9)).unwrap();
        let d = p.degree().unwrap();
        assert!(roots.len() <= d);
        let total_mult: u32 = roots.iter().map(|r| r.multiplicity).sum();
        assert!(total_mult as usize <= d);
        // enclosures sorted and pairwise disjoint
        for w in roots.windows(2) {
            assert!(w[0].enclosure.hi() < w[1].enclosure.lo());
        }
    }
}

#[test]
fn pure_power_measure_is_exact() {
    // P = s^d on [-1,1]: measure {|s^d| <= t} = 2 t^(1/d)
    for d in 1..=8usize {
        let mut coeffs = vec![int(0); d + 1];
        coeffs[d] = int(1);
        let p = UnivariateSlice::new(coeffs);
        let i = Interval::from_integers(-1, 1);
        for k in 1..=20 {
            let t = k as f64 / 21.0;
            let t_exact = BigRational::from_float(t).unwrap();
            let m = sublevel_measure_1d(&p, &i, &t_exact, &tol(14)).unwrap();
            let expected = 2.0 * t.powf(1.0 / d as f64);
            assert!(
                (m.to_f64().unwrap() - expected).abs() <= 1e-9,
                "d={d} t={t}: got {} want {expected}",
                m.to_f64().unwrap()
            );
        }
    }
}

#[test]
fn linear_measure_is_exact() {
    // P = s on [0,1], t = 1/2 -> 1/2
    let p = UnivariateSlice::from_integers(&[0, 1]);
    let i = Interval::from_integers(0, 1);
    let m = sublevel_measure_1d(&p, &i, &rat(1, 2), &tol(14)).unwrap();
    assert!((m - rat(1, 2)).abs() < tol(12));
}

#[test]
fn two_band_measure_matches_closed_form_and_riemann() {
    // P = s^2 - 1/4 on [-1,1], t = 1/8: two bands around +-1/2,
    // closed form 2(sqrt(3/8) - sqrt(1/8))
    let p = UnivariateSlice::new(vec![rat(-1, 4), int(0), int(1)]);
    let i = Interval::from_integers(-1, 1);
    let m = sublevel_measure_1d(&p, &i, &rat(1, 8), &tol(14))
        .unwrap()
        .to_f64()
        .unwrap();
    let closed = 2.0 * ((3.0f64 / 8.0).sqrt() - (1.0f64 / 8.0).sqrt());
    assert!((m - closed).abs() <= 1e-12);
    let oracle = riemann_measure(&p, &i, 0.125, 10_000_000);
    assert!((m - oracle).abs() <= 1e-6);
}

#[test]
fn constant_polynomial_measure() {
    let p = UnivariateSlice::new(vec![rat(1, 3)]);
    let i = Interval::from_integers(-2, 2);
    assert_eq!(
        sublevel_measure_1d(&p, &i, &rat(1, 2), &tol(9)).unwrap(),
        int(4)
    );
    assert_eq!(
        sublevel_measure_1d(&p, &i, &rat(1, 4), &tol(9)).unwrap(),
        int(0)
    );
}

#[test]
fn measure_monotone_in_threshold() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let i = Interval::from_integers(-2, 2);
    for _ in 0..25 {
        let p = random_slice(&mut rng, 6);
        let mut prev = BigRational::zero();
        for k in 1..=12 {
            let t = rat(k * k, 37);
            let m = sublevel_measure_1d(&p, &i, &t, &tol(24)).unwrap();
            assert!(m >= prev, "measure decreased at t={t} for {:?}", p.coefficients());
            prev = m;
        }
    }
}

#[test]
fn measure_agrees_with_riemann_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let i = Interval::from_integers(-2, 2);
    for _ in 0..25 {
        let p = random_slice(&mut rng, 6);
        let t = rng.gen_range(0.05..2.0);
        let t_exact = BigRational::from_float(t).unwrap();
        let m = sublevel_measure_1d(&p, &i, &t_exact, &tol(12))
            .unwrap()
            .to_f64()
            .unwrap();
        let n = 1_000_000;
        let oracle = riemann_measure(&p, &i, t, n);
        let budget = 10.0 * i.length().to_f64().unwrap() / n as f64;
        assert!(
            (m - oracle).abs() <= budget,
            "p={:?} t={t}: exact {m} riemann {oracle}",
            p.coefficients()
        );
    }
}

#[test]
fn measure_scale_invariance_exact() {
    // {|cP| <= ct} = {|P| <= t} for c > 0, exactly
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let i = Interval::from_integers(-2, 2);
    for _ in 0..10 {
        let p = random_slice(&mut rng, 5);
        let c = rat(rng.gen_range(1..=9), rng.gen_range(1..=4));
        let t = rat(rng.gen_range(1..=20), 7);
        let lhs = sublevel_measure_1d(&p.scale(&c), &i, &(&t * &c), &tol(12)).unwrap();
        let rhs = sublevel_measure_1d(&p, &i, &t, &tol(12)).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn ratio_sweep_closed_forms() {
    // P = s^2, p = 2, lambda = 2 on [-1,1]: ratio = 2 sqrt(2) for small t
    let p = UnivariateSlice::from_integers(&[0, 0, 1]);
    let i = Interval::from_integers(-1, 1);
    let ts: Vec<f64> = (1..=10).map(|k| 0.9f64.powi(k) * 0.5).collect();
    let ratios = lemma1_ratio_sweep(&p, &i, &int(2), 2, &ts).unwrap();
    for r in &ratios {
        assert!((r - 2.0 * 2.0f64.sqrt()).abs() <= 1e-8, "ratio {r}");
    }

    // P = s, p = 1, lambda = 1 on [0,1]: measure = min(2t, ... ) truncated at 1;
    // for t in (0, 1/2] the measure is t (half band inside [0,1]) -> ratio 1
    let q = UnivariateSlice::from_integers(&[0, 1]);
    let i01 = Interval::from_integers(0, 1);
    let ts: Vec<f64> = (1..=8).map(|k| k as f64 / 20.0).collect();
    let ratios = lemma1_ratio_sweep(&q, &i01, &int(1), 1, &ts).unwrap();
    for (k, r) in ratios.iter().enumerate() {
        let t = (k + 1) as f64 / 20.0;
        let expected = t.min(1.0) / t; // measure/t
        assert!((r - expected).abs() <= 1e-9);
        assert!(*r <= 2.0 + 1e-12);
    }
}

#[test]
fn ratio_sweep_rejects_vanishing_derivative() {
    // P = s^2 with p = 1: derivative 2s vanishes at 0
    let p = UnivariateSlice::from_integers(&[0, 0, 1]);
    let i = Interval::from_integers(-1, 1);
    match lemma1_ratio_sweep(&p, &i, &int(1), 1, &[0.1]) {
        Err(crate::Error::HypothesisViolation { name, .. }) => {
            assert_eq!(name, "derivative-floor");
        }
        other => panic!("expected hypothesis violation, got {other:?}"),
    }
}

#[test]
fn constant_case_examples() {
    // P = 1 + s^2/8 on [-1,1], lambda = 3/4
    let p = UnivariateSlice::new(vec![int(1), int(0), rat(1, 8)]);
    let i = Interval::from_integers(-1, 1);
    let m = lemma1_constant_case(&p, &i, &rat(1, 2), &rat(3, 4)).unwrap();
    assert!(m.is_zero());

    let m2 = lemma1_constant_case(&p, &i, &int(2), &rat(3, 4)).unwrap();
    assert_eq!(m2, int(2)); // whole interval; bound 2*(2/(3/4))^(1/2) ~ 3.27 holds

    // P = s on [0,1]: a_0 = 0, hypothesis fails for every lambda
    let q = UnivariateSlice::from_integers(&[0, 1]);
    let i01 = Interval::from_integers(0, 1);
    assert!(matches!(
        lemma1_constant_case(&q, &i01, &rat(1, 2), &rat(1, 10)),
        Err(crate::Error::HypothesisViolation { .. })
    ));
}

#[test]
fn exact_sign_predicates() {
    let i = Interval::from_integers(-1, 1);
    // s^2 + 1/4 >= 1/4 everywhere, dips below 1/2 near 0
    let p = UnivariateSlice::new(vec![rat(1, 4), int(0), int(1)]);
    assert!(poly_abs_at_least(&p, &i, &rat(1, 4)));
    assert!(!poly_abs_at_least(&p, &i, &rat(1, 2)));
    let w = find_abs_below(&p, &i, &rat(1, 2)).unwrap();
    assert!(p.eval(&w).abs() < rat(1, 2));

    // tangential touch: (s^2 + 1)  has |.| >= 1 with equality at 0
    let touch = UnivariateSlice::from_integers(&[1, 0, 1]);
    assert!(poly_abs_at_least(&touch, &i, &int(1)));

    assert!(poly_nonnegative_on(&touch, &i));
    assert!(!poly_nonpositive_on(&touch, &i));
    // s^2(s^2 - 2) <= 0 on [-1,1] with a double root at 0
    let neg = UnivariateSlice::from_integers(&[0, 0, -2, 0, 1]);
    assert!(poly_nonpositive_on(&neg, &i));
}
