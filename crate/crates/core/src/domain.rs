//! Bounded domains (axis-aligned boxes and closed balls), uniform samplers,
//! and the geometric certificates used by the volume bounds: a good
//! direction for the zero set, the star-shape test, and the Euler identity.
//!
//! Domain geometry is stored exactly (rational endpoints, center, radius);
//! sampling and membership for Monte Carlo run in f64.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::exec;
use crate::numfmt::{parse_rational, rational_string, rational_to_f64};
use crate::poly::{CompiledPoly, Polynomial};
use crate::roots1d::Interval;
use crate::{Error, Result};

/// A bounded region of R^n.
#[derive(Clone, Debug, PartialEq)]
pub enum Domain {
    Box { intervals: Vec<Interval> },
    Ball { center: Vec<BigRational>, radius: BigRational },
}

/// Volume of the unit n-ball: V_0 = 1, V_1 = 2, V_n = V_(n-2) * 2 pi / n.
pub fn unit_ball_volume(n: usize) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0,
        _ => unit_ball_volume(n - 2) * 2.0 * std::f64::consts::PI / n as f64,
    }
}

impl Domain {
    pub fn unit_box(n: usize) -> Domain {
        Domain::Box {
            intervals: (0..n).map(|_| Interval::from_integers(0, 1)).collect(),
        }
    }

    pub fn symmetric_box(n: usize, half_width: i64) -> Domain {
        Domain::Box {
            intervals: (0..n)
                .map(|_| Interval::from_integers(-half_width, half_width))
                .collect(),
        }
    }

    pub fn unit_ball(n: usize) -> Domain {
        Domain::Ball {
            center: vec![BigRational::zero(); n],
            radius: BigRational::one(),
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Domain::Box { intervals } => intervals.len(),
            Domain::Ball { center, .. } => center.len(),
        }
    }

    /// Exact volume when one exists (boxes). Balls have transcendental volume.
    pub fn volume_rational(&self) -> Option<BigRational> {
        match self {
            Domain::Box { intervals } => {
                let mut v = BigRational::one();
                for i in intervals {
                    v *= i.length();
                }
                Some(v)
            }
            Domain::Ball { .. } => None,
        }
    }

    pub fn volume(&self) -> f64 {
        match self {
            Domain::Box { .. } => rational_to_f64(&self.volume_rational().expect("box volume")),
            Domain::Ball { center, radius } => {
                let n = center.len();
                unit_ball_volume(n) * rational_to_f64(radius).powi(n as i32)
            }
        }
    }

    /// Per-axis bounds `[lo, hi]` of the smallest enclosing box.
    pub fn bounding_box(&self) -> Vec<(f64, f64)> {
        match self {
            Domain::Box { intervals } => intervals
                .iter()
                .map(|i| (rational_to_f64(i.lo()), rational_to_f64(i.hi())))
                .collect(),
            Domain::Ball { center, radius } => {
                let r = rational_to_f64(radius);
                center
                    .iter()
                    .map(|c| {
                        let c = rational_to_f64(c);
                        (c - r, c + r)
                    })
                    .collect()
            }
        }
    }

    pub fn diameter(&self) -> f64 {
        match self {
            Domain::Box { .. } => self
                .bounding_box()
                .iter()
                .map(|(lo, hi)| (hi - lo) * (hi - lo))
                .sum::<f64>()
                .sqrt(),
            Domain::Ball { radius, .. } => 2.0 * rational_to_f64(radius),
        }
    }

    pub fn contains_f64(&self, x: &[f64]) -> bool {
        match self {
            Domain::Box { intervals } => intervals
                .iter()
                .zip(x)
                .all(|(i, &xi)| xi >= rational_to_f64(i.lo()) && xi <= rational_to_f64(i.hi())),
            Domain::Ball { center, radius } => {
                let r = rational_to_f64(radius);
                let d2: f64 = center
                    .iter()
                    .zip(x)
                    .map(|(c, &xi)| {
                        let d = xi - rational_to_f64(c);
                        d * d
                    })
                    .sum();
                d2 <= r * r
            }
        }
    }

    /// Whether the origin lies in the interior, and if so the radius of the
    /// largest origin-centered ball inside the domain.
    pub fn interior_radius_at_origin(&self) -> Option<f64> {
        match self {
            Domain::Box { intervals } => {
                let mut r = f64::INFINITY;
                for i in intervals {
                    let lo = rational_to_f64(i.lo());
                    let hi = rational_to_f64(i.hi());
                    if lo >= 0.0 || hi <= 0.0 {
                        return None;
                    }
                    r = r.min(-lo).min(hi);
                }
                Some(r)
            }
            Domain::Ball { center, radius } => {
                let r = rational_to_f64(radius);
                let d: f64 = center
                    .iter()
                    .map(|c| {
                        let c = rational_to_f64(c);
                        c * c
                    })
                    .sum::<f64>()
                    .sqrt();
                if d < r {
                    Some(r - d)
                } else {
                    None
                }
            }
        }
    }

    /// One deterministic batch of uniform samples, flat row-major
    /// (`len * dim` coordinates). Batch `index` of a stream seeded with
    /// `seed`; ball sampling rejects from the bounding box.
    pub fn sample_batch_flat(&self, seed: u64, index: u64, len: usize) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(exec::batch_seed(seed, index));
        let n = self.dim();
        let mut out = Vec::with_capacity(len * n);
        match self {
            Domain::Box { intervals } => {
                let bounds: Vec<(f64, f64)> = intervals
                    .iter()
                    .map(|i| (rational_to_f64(i.lo()), rational_to_f64(i.hi())))
                    .collect();
                for _ in 0..len {
                    for &(lo, hi) in &bounds {
                        out.push(rng.gen_range(lo..=hi));
                    }
                }
            }
            Domain::Ball { center, radius } => {
                let r = rational_to_f64(radius);
                let c: Vec<f64> = center.iter().map(rational_to_f64).collect();
                let mut u = vec![0.0f64; n];
                for _ in 0..len {
                    loop {
                        let mut norm2 = 0.0;
                        for ui in u.iter_mut() {
                            *ui = rng.gen_range(-1.0f64..=1.0);
                            norm2 += *ui * *ui;
                        }
                        if norm2 <= 1.0 {
                            for (ui, ci) in u.iter().zip(&c) {
                                out.push(ci + r * ui);
                            }
                            break;
                        }
                    }
                }
            }
        }
        out
    }

    /// `k` i.i.d. uniform points, deterministic in `seed` and identical to
    /// the stream the estimators consume.
    pub fn sample(&self, seed: u64, k: usize) -> Vec<Vec<f64>> {
        let n = self.dim();
        let n_batches = exec::batch_count(k as u64);
        let mut out = Vec::with_capacity(k);
        for b in 0..n_batches {
            let len = exec::batch_len(k as u64, b);
            let flat = self.sample_batch_flat(seed, b, len);
            for chunk in flat.chunks_exact(n) {
                out.push(chunk.to_vec());
            }
        }
        out
    }

    /// JSON encoding with exact numbers as strings.
    pub fn to_json(&self) -> Value {
        match self {
            Domain::Box { intervals } => json!({
                "kind": "box",
                "intervals": intervals
                    .iter()
                    .map(|i| json!([rational_string(i.lo()), rational_string(i.hi())]))
                    .collect::<Vec<_>>(),
            }),
            Domain::Ball { center, radius } => json!({
                "kind": "ball",
                "center": center.iter().map(|c| rational_string(c)).collect::<Vec<_>>(),
                "radius": rational_string(radius),
            }),
        }
    }

    pub fn from_json(v: &Value) -> Result<Domain> {
        let kind = v
            .get("kind")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::InvalidDomain("missing `kind`".into()))?;
        match kind {
            "box" => {
                let arr = v
                    .get("intervals")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::InvalidDomain("box needs `intervals`".into()))?;
                if arr.is_empty() {
                    return Err(Error::InvalidDomain("box needs at least one axis".into()));
                }
                let mut intervals = Vec::with_capacity(arr.len());
                for pair in arr {
                    let ends = pair
                        .as_array()
                        .filter(|p| p.len() == 2)
                        .ok_or_else(|| Error::InvalidDomain("interval must be [lo, hi]".into()))?;
                    let lo = parse_rational(json_num(&ends[0])?)?;
                    let hi = parse_rational(json_num(&ends[1])?)?;
                    intervals.push(Interval::new(lo, hi).map_err(|_| {
                        Error::InvalidDomain("interval endpoints out of order".into())
                    })?);
                }
                Ok(Domain::Box { intervals })
            }
            "ball" => {
                let center_arr = v
                    .get("center")
                    .and_then(Value::as_array)
                    .ok_or_else(|| Error::InvalidDomain("ball needs `center`".into()))?;
                if center_arr.is_empty() {
                    return Err(Error::InvalidDomain("ball center must be nonempty".into()));
                }
                let mut center = Vec::with_capacity(center_arr.len());
                for c in center_arr {
                    center.push(parse_rational(json_num(c)?)?);
                }
                let radius = parse_rational(json_num(
                    v.get("radius")
                        .ok_or_else(|| Error::InvalidDomain("ball needs `radius`".into()))?,
                )?)?;
                if !radius.is_positive() {
                    return Err(Error::InvalidDomain("radius must be positive".into()));
                }
                Ok(Domain::Ball { center, radius })
            }
            other => Err(Error::InvalidDomain(format!("unknown kind `{other}`"))),
        }
    }

    pub fn from_json_str(s: &str) -> Result<Domain> {
        let v: Value =
            serde_json::from_str(s).map_err(|e| Error::InvalidDomain(format!("bad JSON: {e}")))?;
        Domain::from_json(&v)
    }
}

fn json_num(v: &Value) -> Result<&str> {
    v.as_str()
        .ok_or_else(|| Error::InvalidDomain("numbers must be decimal strings".into()))
}

/// A direction along which every line meets the zero set in finitely many
/// points, certified by a nonzero top homogeneous form at a rational
/// direction: the leading coefficient of every line restriction in this
/// direction is the same nonzero constant.
#[derive(Clone, Debug)]
pub struct GoodDirection {
    /// Rational direction the certificate was evaluated at.
    pub rational: Vec<BigRational>,
    /// The same direction normalized to unit length.
    pub unit: Vec<f64>,
    /// Degree of the top homogeneous component.
    pub top_degree: u32,
    /// Exact nonzero value of the top component at `rational`.
    pub certificate: BigRational,
}

pub fn find_good_direction(p: &Polynomial, seed: u64) -> Result<GoodDirection> {
    let (d, top) = p.top_component()?;
    if d == 0 {
        return Err(Error::InvalidParameter(
            "good direction needs degree >= 1".into(),
        ));
    }
    let n = p.n_vars();
    let mut candidates: Vec<Vec<BigRational>> = Vec::new();
    for i in 0..n {
        let mut e = vec![BigRational::zero(); n];
        e[i] = BigRational::one();
        candidates.push(e);
    }
    candidates.push(vec![BigRational::one(); n]);
    let mut rng = ChaCha8Rng::seed_from_u64(exec::splitmix64(seed));
    const MAX_TRIES: usize = 200;
    for tries in 0..MAX_TRIES {
        let cand = if tries < candidates.len() {
            candidates[tries].clone()
        } else {
            let c: Vec<BigRational> = (0..n)
                .map(|_| BigRational::from(BigInt::from(rng.gen_range(-9i64..=9))))
                .collect();
            if c.iter().all(|x| x.is_zero()) {
                continue;
            }
            c
        };
        let value = top.eval_rational(&cand)?;
        if !value.is_zero() {
            let norm: f64 = cand
                .iter()
                .map(|c| {
                    let c = rational_to_f64(c);
                    c * c
                })
                .sum::<f64>()
                .sqrt();
            let unit = cand.iter().map(|c| rational_to_f64(c) / norm).collect();
            return Ok(GoodDirection {
                rational: cand,
                unit,
                top_degree: d,
                certificate: value,
            });
        }
    }
    Err(Error::Exhausted {
        what: "rational direction with nonzero top form".into(),
        tried: MAX_TRIES,
    })
}

/// Outcome of the sampled star-shape test. The test is a falsifier, not a
/// decision procedure: a pass certifies only the sampled points.
#[derive(Clone, Debug, PartialEq)]
pub enum StarShapeVerdict {
    /// Radial derivative had one strict sign at every sampled point.
    PassesSampled,
    /// Witness where the radial derivative vanishes (to tolerance) or flips
    /// sign against earlier samples.
    FailsAt(Vec<f64>),
    /// Witness where the polynomial itself vanishes away from the origin, so
    /// the zero at the origin is not isolated.
    ZeroNotIsolatedAt(Vec<f64>),
    /// `p(0) != 0`: the hypothesis is about a zero at the origin, so the
    /// check is vacuous; reported rather than silently passed.
    NotVanishingAtOrigin,
}

impl StarShapeVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            StarShapeVerdict::PassesSampled => "PassesSampled",
            StarShapeVerdict::FailsAt(_) => "FailsAt",
            StarShapeVerdict::ZeroNotIsolatedAt(_) => "ZeroNotIsolatedAt",
            StarShapeVerdict::NotVanishingAtOrigin => "NotVanishingAtOrigin",
        }
    }
}

/// Sample the punctured ball `B(0, eps0) \ {0}` and test that
/// `<grad p(x), x>` keeps one strict sign, which makes every sub-level set
/// in the ball star-shaped around the origin.
pub fn star_shape_check(
    p: &Polynomial,
    eps0: &BigRational,
    seed: u64,
    n_samples: usize,
) -> Result<StarShapeVerdict> {
    if !eps0.is_positive() {
        return Err(Error::InvalidParameter("eps0 must be positive".into()));
    }
    if n_samples < 10_000 {
        return Err(Error::InvalidParameter("need at least 10^4 samples".into()));
    }
    let n = p.n_vars();
    let origin = vec![BigRational::zero(); n];
    if !p.eval_rational(&origin)?.is_zero() {
        return Ok(StarShapeVerdict::NotVanishingAtOrigin);
    }
    let rd = p.radial_derivative();
    if rd.is_zero() {
        return Ok(StarShapeVerdict::FailsAt(vec![0.0; n]));
    }
    let r = rational_to_f64(eps0);
    let ball = Domain::Ball {
        center: origin,
        radius: eps0.clone(),
    };
    let scale = |q: &Polynomial| -> f64 {
        let deg = match q.degree() {
            crate::poly::Degree::Finite(d) => d as i32,
            crate::poly::Degree::MinusInfinity => 0,
        };
        rational_to_f64(&q.coeff_one_norm()) * r.max(1.0).powi(deg)
    };
    let tol_p = 1e-12 * scale(p);
    let tol_rd = 1e-12 * scale(&rd);
    let cp = CompiledPoly::new(p);
    let crd = CompiledPoly::new(&rd);

    let mut sign = 0.0f64;
    let mut produced = 0usize;
    let mut batch_index = 0u64;
    while produced < n_samples {
        let len = exec::batch_len(n_samples as u64, batch_index);
        let flat = ball.sample_batch_flat(seed, batch_index, len);
        for x in flat.chunks_exact(n) {
            let norm2: f64 = x.iter().map(|v| v * v).sum();
            if norm2 < 1e-18 {
                continue; // excluded core around the origin
            }
            let pv = cp.eval(x);
            if pv.abs() <= tol_p {
                return Ok(StarShapeVerdict::ZeroNotIsolatedAt(x.to_vec()));
            }
            let rv = crd.eval(x);
            if rv.abs() <= tol_rd {
                return Ok(StarShapeVerdict::FailsAt(x.to_vec()));
            }
            if sign == 0.0 {
                sign = rv.signum();
            } else if rv.signum() != sign {
                return Ok(StarShapeVerdict::FailsAt(x.to_vec()));
            }
        }
        produced += len;
        batch_index += 1;
    }
    Ok(StarShapeVerdict::PassesSampled)
}

/// Exact symbolic truth of the Euler identity `<grad p, x> = d * p` for a
/// homogeneous `p` of degree `d`. Errors on non-homogeneous input.
pub fn euler_identity_check(p: &Polynomial) -> Result<bool> {
    let comps = p.homogeneous_components();
    if comps.len() > 1 {
        return Err(Error::NotHomogeneous {
            degrees: comps.keys().copied().collect(),
        });
    }
    let Some((&d, _)) = comps.iter().next() else {
        return Ok(true); // zero polynomial, identity holds for every d
    };
    let lhs = p.radial_derivative();
    let rhs = p.scale(&BigRational::from(BigInt::from(d)));
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests;
