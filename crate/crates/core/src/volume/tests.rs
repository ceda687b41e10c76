use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::*;
use crate::domain::Domain;
use crate::parse_poly;
use crate::roots1d::{sublevel_measure_1d, Interval};

fn mc(seed: u64, n: u64) -> Method {
    Method::MonteCarlo { seed, n_samples: n }
}

#[test]
fn disk_estimate_matches_closed_form() {
    // V(t) = pi * t for the squared radius on the unit disk, t <= 1
    let p = parse_poly("x^2 + y^2", None).unwrap();
    let dom = Domain::unit_ball(2);
    let (est, ci) = estimate_volume(&p, &dom, 0.25, &mc(5, 200_000)).unwrap();
    let exact = std::f64::consts::PI * 0.25;
    assert!((est - exact).abs() <= ci, "est {est} exact {exact} ci {ci}");
    assert!(ci < 0.02);
}

#[test]
fn saturated_threshold_gives_exact_domain_volume() {
    // t above sup |p| on the domain: every sample passes, no noise
    let p = parse_poly("x^2 + y^2", None).unwrap();
    let dom = Domain::unit_box(2);
    let (est, ci) = estimate_volume(&p, &dom, 3.0, &mc(5, 50_000)).unwrap();
    assert_eq!(est, dom.volume());
    // all 50k samples hit; the Wilson interval is tiny but not zero
    assert!(ci < 1e-3);
}

#[test]
fn dimension_one_cross_checks_exact_measure() {
    let p = parse_poly("x", None).unwrap();
    let dom = Domain::unit_box(1);
    let (est, ci) = estimate_volume(&p, &dom, 1.0 / 3.0, &mc(17, 100_000)).unwrap();
    let i = Interval::from_integers(0, 1);
    let sl = p
        .line_restriction(
            &[BigRational::from(BigInt::from(0))],
            &[BigRational::from(BigInt::from(1))],
        )
        .unwrap();
    let t = BigRational::from_float(1.0 / 3.0).unwrap();
    let tol = BigRational::new(BigInt::from(1), BigInt::from(10u64).pow(12));
    let exact = sublevel_measure_1d(&sl, &i, &t, &tol).unwrap().to_f64().unwrap();
    assert!((est - exact).abs() <= ci);
}

#[test]
fn sweep_is_monotone_and_bounded() {
    let p = parse_poly("x^4*y^2 + x^2*y^4", None).unwrap();
    let dom = Domain::unit_box(2);
    let curve = volume_sweep(&p, &dom, 1e-6, 1e-1, 24, &mc(3, 50_000)).unwrap();
    for w in curve.estimates.windows(2) {
        assert!(w[0] <= w[1]);
    }
    for &e in &curve.estimates {
        assert!((0.0..=curve.domain_volume).contains(&e));
    }
}

#[test]
fn sweep_scale_invariance_with_dyadic_factor() {
    // {|c f| <= c t} = {|f| <= t}; with c a power of two both evaluation and
    // thresholds scale exactly in binary floating point.
    let p = parse_poly("x^4*y^2 + x^2*y^4", None).unwrap();
    let c = BigRational::from(BigInt::from(4));
    let scaled = p.scale(&c);
    let dom = Domain::unit_box(2);
    let grid = log_grid(1e-5, 1e-1, 16).unwrap();
    let grid4: Vec<f64> = grid.iter().map(|t| 4.0 * t).collect();
    let a = volume_sweep_at(&p, &dom, &grid, &mc(9, 50_000)).unwrap();
    let b = volume_sweep_at(&scaled, &dom, &grid4, &mc(9, 50_000)).unwrap();
    assert_eq!(a.estimates, b.estimates);
}

#[test]
fn grid_method_close_to_monte_carlo() {
    let p = parse_poly("x^2 + y^2", None).unwrap();
    let dom = Domain::unit_box(2);
    let g = estimate_volume(&p, &dom, 0.5, &Method::Grid { resolution: 256 }).unwrap();
    let m = estimate_volume(&p, &dom, 0.5, &mc(2, 400_000)).unwrap();
    assert!((g.0 - m.0).abs() < 0.01, "grid {} mc {}", g.0, m.0);
    assert_eq!(g.1, 0.0);
}

#[test]
fn parameter_validation() {
    let p = parse_poly("x^2 + y^2", None).unwrap();
    let dom = Domain::unit_box(2);
    assert!(estimate_volume(&p, &dom, -1.0, &mc(1, 50_000)).is_err());
    assert!(estimate_volume(&p, &dom, 0.5, &mc(1, 100)).is_err());
    assert!(estimate_volume(&p, &dom, 0.5, &Method::Grid { resolution: 8 }).is_err());
    assert!(volume_sweep(&p, &dom, 0.1, 0.01, 10, &mc(1, 50_000)).is_err());
    assert!(volume_sweep(&p, &dom, 0.01, 0.1, 4, &mc(1, 50_000)).is_err());
}

fn synthetic_curve(c: f64, alpha: f64, t_min: f64, t_max: f64, n: usize) -> VolumeCurve {
    let t = log_grid(t_min, t_max, n).unwrap();
    let est: Vec<f64> = t.iter().map(|&t| c * t.powf(alpha)).collect();
    VolumeCurve {
        ci_half_widths: vec![0.0; t.len()],
        t_values: t,
        estimates: est,
        method: Method::Grid { resolution: 64 },
        domain_volume: f64::INFINITY,
    }
}

#[test]
fn fit_recovers_exact_power_law() {
    let curve = synthetic_curve(3.0, 1.0 / 3.0, 1e-8, 1e-2, 40);
    let fit = fit_power_law(&curve, None).unwrap();
    assert!((fit.alpha_hat - 1.0 / 3.0).abs() < 1e-9);
    assert!((fit.log_c_hat - 3.0f64.ln()).abs() < 1e-9);
    assert!((fit.r_squared - 1.0).abs() < 1e-12);
    assert!(fit.stderr_alpha < 1e-9);
}

#[test]
fn fit_requires_enough_points() {
    let curve = synthetic_curve(1.0, 0.5, 1e-4, 1e-3, 4);
    assert!(matches!(
        fit_power_law(&curve, None),
        Err(Error::InsufficientData(_))
    ));
}

#[test]
fn default_window_is_lowest_two_decades() {
    let curve = synthetic_curve(1.0, 0.5, 1e-8, 1e-1, 50);
    let fit = fit_power_law(&curve, None).unwrap();
    assert!(fit.window.1 <= 1e-6 * (1.0 + 1e-9));
}

#[test]
fn bracket_examples() {
    // f = x^4 y^2 + x^2 y^4 on [0,1]^2 with d' = 2, k' = 1 -> [1/6, 1/2]
    let f = parse_poly("x^4*y^2 + x^2*y^4", None).unwrap();
    let dom = Domain::unit_box(2);
    let b = theorem1_bracket(&f, &dom, 2, 1, false).unwrap();
    assert_eq!(b.upper_exp, BigRational::new(BigInt::from(1), BigInt::from(6)));
    assert_eq!(b.lower_exp, BigRational::new(BigInt::from(1), BigInt::from(2)));
    assert_eq!(b.upper_from, UpperBoundSource::Degree);
    assert_eq!(b.lower_from, LowerBoundSource::Stratum);
    assert!(!b.is_pinned());

    // g = x^2 + y^2 on the unit disk, star certified, d' = 2, k' = 0 -> [1, 1]
    let g = parse_poly("x^2 + y^2", None).unwrap();
    let disk = Domain::unit_ball(2);
    let b = theorem1_bracket(&g, &disk, 2, 0, true).unwrap();
    assert_eq!(b.upper_exp, BigRational::from(BigInt::from(1)));
    assert_eq!(b.lower_exp, BigRational::from(BigInt::from(1)));
    assert_eq!(b.upper_from, UpperBoundSource::StarShape);
    assert_eq!(b.lower_from, LowerBoundSource::PointOrder);
    assert!(b.is_pinned());

    // f = x on [0,1] -> [1, 1]
    let h = parse_poly("x", None).unwrap();
    let seg = Domain::unit_box(1);
    let b = theorem1_bracket(&h, &seg, 1, 0, false).unwrap();
    assert!(b.is_pinned());
    assert_eq!(b.upper_exp, BigRational::from(BigInt::from(1)));
}

#[test]
fn bracket_rejects_bad_parameters() {
    let f = parse_poly("x^4*y^2 + x^2*y^4", None).unwrap();
    let dom = Domain::unit_box(2);
    assert!(theorem1_bracket(&f, &dom, 0, 0, false).is_err());
    assert!(theorem1_bracket(&f, &dom, 7, 0, false).is_err());
    assert!(theorem1_bracket(&f, &dom, 1, 2, false).is_err());
    // star-certified with k' = 1 makes n/d = 1/3 > (n-k')/d' with d' = 6? 1/6 < 1/3: inconsistent
    assert!(theorem1_bracket(&f, &dom, 6, 1, true).is_err());
}

#[test]
fn verify_bracket_negative_control() {
    // synthetic V = t^2 against the pinned bracket [1,1] must be flagged
    let curve = synthetic_curve(1.0, 2.0, 1e-6, 1e-1, 30);
    let fit = fit_power_law(&curve, None).unwrap();
    let g = parse_poly("x^2 + y^2", None).unwrap();
    let disk = Domain::unit_ball(2);
    let bracket = theorem1_bracket(&g, &disk, 2, 0, true).unwrap();
    let report = verify_bracket(&curve, &fit, &bracket, 0.02);
    assert!(!report.alpha_within);
    assert!(!report.pass);
}

#[test]
fn csv_output_is_stable() {
    let p = parse_poly("x^2 + y^2", None).unwrap();
    let dom = Domain::unit_box(2);
    let curve = volume_sweep(&p, &dom, 1e-3, 1e-1, 8, &mc(4, 20_000)).unwrap();
    let mut a = Vec::new();
    write_curve_csv(&curve, &mut a).unwrap();
    let mut b = Vec::new();
    let curve2 = volume_sweep(&p, &dom, 1e-3, 1e-1, 8, &mc(4, 20_000)).unwrap();
    write_curve_csv(&curve2, &mut b).unwrap();
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    assert!(text.starts_with("t,volume,ci_half_width,method,seed\n"));
    assert_eq!(text.lines().count(), 9);
}

#[cfg(feature = "parallel")]
#[test]
fn parallel_and_sequential_counts_agree_exactly() {
    let p = parse_poly("x^4*y^2 + x^2*y^4", None).unwrap();
    let dom = Domain::unit_box(2);
    let grid = log_grid(1e-6, 1e-1, 20).unwrap();
    let seq = mc_hit_counts(&p, &dom, &grid, 123, 300_000);
    let par = par_mc_hit_counts(&p, &dom, &grid, 123, 300_000);
    assert_eq!(seq, par);
}
