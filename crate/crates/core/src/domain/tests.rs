use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::*;
use crate::parse_poly;

fn int(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn box_volume_exact() {
    assert_eq!(Domain::unit_box(2).volume_rational().unwrap(), int(1));
    let d = Domain::Box {
        intervals: vec![
            Interval::new(rat(-1, 2), rat(3, 2)).unwrap(),
            Interval::from_integers(0, 3),
        ],
    };
    assert_eq!(d.volume_rational().unwrap(), int(6));
}

#[test]
fn ball_volume_closed_form() {
    // n=2 r=1 -> pi
    assert!((Domain::unit_ball(2).volume() - std::f64::consts::PI).abs() < 1e-14);
    // n=3 r=2 -> 32 pi / 3
    let b = Domain::Ball {
        center: vec![int(0), int(0), int(0)],
        radius: int(2),
    };
    let expected = 32.0 * std::f64::consts::PI / 3.0;
    assert!((b.volume() - expected).abs() < 1e-12 * expected);
}

#[test]
fn sampling_is_deterministic_and_in_domain() {
    for dom in [Domain::unit_box(2), Domain::unit_ball(3)] {
        let a = dom.sample(42, 5000);
        let b = dom.sample(42, 5000);
        assert_eq!(a, b);
        assert!(a.iter().all(|x| dom.contains_f64(x)));
        let c = dom.sample(43, 5000);
        assert_ne!(a, c);
    }
}

#[test]
fn sample_mean_matches_uniform_law() {
    let dom = Domain::unit_box(2);
    let k = 1_000_000;
    let pts = dom.sample(7, k);
    let mut mean = [0.0f64; 2];
    for p in &pts {
        mean[0] += p[0];
        mean[1] += p[1];
    }
    mean[0] /= k as f64;
    mean[1] /= k as f64;
    // 3 sigma / sqrt(k) with sigma = 1/sqrt(12)
    let budget = 3.0 / (12.0f64).sqrt() / (k as f64).sqrt();
    assert!((mean[0] - 0.5).abs() <= budget.max(0.002));
    assert!((mean[1] - 0.5).abs() <= budget.max(0.002));
}

#[test]
fn json_round_trip() {
    let b = Domain::Box {
        intervals: vec![
            Interval::new(rat(-1, 4), rat(1, 3)).unwrap(),
            Interval::from_integers(0, 1),
        ],
    };
    let back = Domain::from_json(&b.to_json()).unwrap();
    assert_eq!(b, back);

    let s = r#"{"kind":"ball","center":["0","0.5"],"radius":"2"}"#;
    let ball = Domain::from_json_str(s).unwrap();
    assert_eq!(
        ball,
        Domain::Ball {
            center: vec![int(0), rat(1, 2)],
            radius: int(2)
        }
    );
    assert_eq!(Domain::from_json(&ball.to_json()).unwrap(), ball);

    assert!(Domain::from_json_str(r#"{"kind":"cone"}"#).is_err());
    assert!(Domain::from_json_str(r#"{"kind":"ball","center":["0"],"radius":"-1"}"#).is_err());
}

#[test]
fn good_direction_examples() {
    // x^2 + y^2: first axis works, f_2(1,0) = 1
    let p = parse_poly("x^2 + y^2", None).unwrap();
    let g = find_good_direction(&p, 1).unwrap();
    assert_eq!(g.rational, vec![int(1), int(0)]);
    assert_eq!(g.certificate, int(1));

    // xy: both axes rejected, (1,1) accepted
    let q = parse_poly("x*y", None).unwrap();
    let g = find_good_direction(&q, 1).unwrap();
    assert_eq!(g.rational, vec![int(1), int(1)]);

    // x^4 y^2 + x^2 y^4: any direction off both axes
    let f = parse_poly("x^4*y^2 + x^2*y^4", None).unwrap();
    let g = find_good_direction(&f, 1).unwrap();
    assert!(!g.rational[0].is_zero() && !g.rational[1].is_zero());
}

#[test]
fn good_direction_certificate_is_leading_coefficient() {
    let f = parse_poly("x^4*y^2 + x^2*y^4", None).unwrap();
    let g = find_good_direction(&f, 5).unwrap();
    let mut rng_state = 0x12345u64;
    for _ in 0..100 {
        rng_state = crate::exec::splitmix64(rng_state);
        let bx = rat((rng_state % 17) as i64 - 8, 4);
        rng_state = crate::exec::splitmix64(rng_state);
        let by = rat((rng_state % 17) as i64 - 8, 4);
        let slice = f.line_restriction(&[bx, by], &g.rational).unwrap();
        let coeffs = slice.coefficients();
        assert_eq!(coeffs[g.top_degree as usize], g.certificate);
    }
}

#[test]
fn star_shape_examples() {
    let names: Vec<String> = vec!["x".into(), "y".into()];
    let p = parse_poly("x^2 + y^2", Some(&names)).unwrap();
    let v = star_shape_check(&p, &int(1), 9, 20_000).unwrap();
    assert_eq!(v, StarShapeVerdict::PassesSampled);

    // radial derivative 2x^2 - 2y^2 changes sign across y = +-x
    let q = parse_poly("x^2 - y^2", Some(&names)).unwrap();
    let v = star_shape_check(&q, &int(1), 9, 20_000).unwrap();
    assert!(matches!(v, StarShapeVerdict::FailsAt(_)), "got {v:?}");

    // homogeneous with isolated zero: passes for any eps0
    let h = parse_poly("x^4 + y^4", Some(&names)).unwrap();
    for eps0 in [rat(1, 2), int(3)] {
        let v = star_shape_check(&h, &eps0, 11, 20_000).unwrap();
        assert_eq!(v, StarShapeVerdict::PassesSampled);
    }

    // p(0) != 0: vacuous, reported
    let c = parse_poly("x^2 + 1", Some(&names)).unwrap();
    let v = star_shape_check(&c, &int(1), 9, 20_000).unwrap();
    assert_eq!(v, StarShapeVerdict::NotVanishingAtOrigin);
}

#[test]
fn star_shape_deterministic() {
    let names: Vec<String> = vec!["x".into(), "y".into()];
    let q = parse_poly("x^2 - y^2", Some(&names)).unwrap();
    let a = star_shape_check(&q, &int(1), 33, 20_000).unwrap();
    let b = star_shape_check(&q, &int(1), 33, 20_000).unwrap();
    assert_eq!(a, b);
}

#[test]
fn euler_check_examples() {
    let p = parse_poly("x^2 + y^2", None).unwrap();
    assert!(euler_identity_check(&p).unwrap());

    let f = parse_poly("x^4*y^2 + x^2*y^4", None).unwrap();
    assert!(euler_identity_check(&f).unwrap());

    let bad = parse_poly("x^2 + x", None).unwrap();
    assert!(matches!(
        euler_identity_check(&bad),
        Err(Error::NotHomogeneous { .. })
    ));
}
