//! Exact real-root isolation and the one-dimensional sub-level measure.
//!
//! Roots are isolated by square-free decomposition followed by Descartes'
//! rule bisection, entirely in rational arithmetic; enclosures are refined by
//! bisection to a requested width. On top of the isolation sit exact sign
//! predicates (`is |P| >= lambda on I`?) used to certify lemma hypotheses,
//! and the measure of `{s in I : |P(s)| <= t}`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::univariate::UnivariateSlice;
use crate::{Error, Result};

/// Closed rational interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidParameter(format!(
                "interval endpoints out of order: [{lo}, {hi}]"
            )));
        }
        Ok(Interval { lo, hi })
    }

    pub fn from_integers(lo: i64, hi: i64) -> Self {
        Interval::new(
            BigRational::from(BigInt::from(lo)),
            BigRational::from(BigInt::from(hi)),
        )
        .expect("ordered endpoints")
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn length(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from(BigInt::from(2))
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        *x >= self.lo && *x <= self.hi
    }
}

/// One isolated real root: an enclosure of width at most the requested
/// tolerance containing exactly one distinct root, with its multiplicity.
#[derive(Clone, Debug)]
pub struct IsolatedRoot {
    pub enclosure: Interval,
    pub multiplicity: u32,
}

/// Sorted, pairwise-disjoint isolated roots.
pub type RootList = Vec<IsolatedRoot>;

/// Working enclosure during isolation: the square-free factor it belongs to,
/// whether the root is known exactly, and the current bracket.
#[derive(Clone, Debug)]
struct Work {
    factor: UnivariateSlice,
    lo: BigRational,
    hi: BigRational,
    exact: bool,
    multiplicity: u32,
}

impl Work {
    fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// Halve the bracket, keeping the half with the sign change. Exact roots
    /// do not move.
    fn refine_once(&mut self) {
        if self.exact {
            return;
        }
        let mid = (&self.lo + &self.hi) / BigRational::from(BigInt::from(2));
        let vm = self.factor.eval(&mid);
        if vm.is_zero() {
            self.lo = mid.clone();
            self.hi = mid;
            self.exact = true;
            return;
        }
        let vl = self.factor.eval(&self.lo);
        debug_assert!(!vl.is_zero(), "sign-change bracket endpoint became a root");
        if vl.is_positive() != vm.is_positive() {
            self.hi = mid;
        } else {
            self.lo = mid;
        }
    }

    fn refine_to(&mut self, tol: &BigRational) {
        while !self.exact && self.width() > *tol {
            self.refine_once();
        }
    }
}

/// Descartes bound on the number of roots of `q` in the open interval (a, b).
fn descartes_count(q: &UnivariateSlice, a: &BigRational, b: &BigRational) -> usize {
    let mapped = q.shift_by(a).scale_argument(&(b - a)); // q(a + (b-a)x), roots sought in (0,1)
    let d = mapped.degree().expect("nonzero polynomial");
    mapped
        .reversed(d + 1)
        .shift_by(&BigRational::one())
        .sign_variations()
}

/// Isolate the distinct real roots of a square-free `q` in the closed
/// interval `[lo, hi]`. Multiplicity is attached by the caller.
fn isolate_squarefree(q: &UnivariateSlice, lo: &BigRational, hi: &BigRational, mult: u32) -> Vec<Work> {
    let mut out = Vec::new();
    let mut q = q.trimmed();
    if q.degree().unwrap_or(0) == 0 {
        return out;
    }
    if lo == hi {
        if q.eval(lo).is_zero() {
            out.push(Work {
                factor: q,
                lo: lo.clone(),
                hi: hi.clone(),
                exact: true,
                multiplicity: mult,
            });
        }
        return out;
    }
    // Peel off exact roots at the interval endpoints so the interior count
    // works on open intervals with nonvanishing boundary values.
    for endpoint in [lo, hi] {
        if q.eval(endpoint).is_zero() {
            let linear = UnivariateSlice::new(vec![-endpoint.clone(), BigRational::one()]);
            let (quot, rem) = q.div_rem(&linear);
            debug_assert!(rem.is_zero());
            q = quot.trimmed();
            out.push(Work {
                factor: q.clone(),
                lo: endpoint.clone(),
                hi: endpoint.clone(),
                exact: true,
                multiplicity: mult,
            });
        }
    }
    if q.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        let count = descartes_count(&q, &a, &b);
        match count {
            0 => {}
            1 => out.push(Work {
                factor: q.clone(),
                lo: a,
                hi: b,
                exact: false,
                multiplicity: mult,
            }),
            _ => {
                let mid = split_point(&q, &a, &b);
                stack.push((a, mid.clone()));
                stack.push((mid, b));
            }
        }
    }
    out
}

/// A subdivision point in `(a, b)` where `q` does not vanish, so stack
/// interval endpoints never sit on a root and count==1 brackets always carry
/// a strict sign change. A square-free `q` of degree `d` has at most `d`
/// roots, so one of `d + 1` distinct candidates works.
fn split_point(q: &UnivariateSlice, a: &BigRational, b: &BigRational) -> BigRational {
    let width = b - a;
    let half = a + &width / BigRational::from(BigInt::from(2));
    if !q.eval(&half).is_zero() {
        return half;
    }
    let d = q.degree().expect("nonzero polynomial");
    let den = BigRational::from(BigInt::from(d as u32 + 2));
    for j in 1..=(d as u32 + 1) {
        let cand = a + &width * BigRational::from(BigInt::from(j)) / &den;
        if !q.eval(&cand).is_zero() {
            return cand;
        }
    }
    unreachable!("more roots than the degree allows");
}

/// Sort enclosures and refine until pairwise disjoint (strictly separated).
/// Requires that the underlying factors are pairwise coprime, so no two
/// enclosures share a root and the loop terminates.
fn disjointify(mut works: Vec<Work>) -> Vec<Work> {
    loop {
        works.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
        let mut all_disjoint = true;
        for i in 0..works.len().saturating_sub(1) {
            if works[i].hi >= works[i + 1].lo && !(works[i].exact && works[i + 1].exact) {
                all_disjoint = false;
                works[i].refine_once();
                works[i + 1].refine_once();
            }
        }
        if all_disjoint {
            return works;
        }
    }
}

fn refine_all(works: &mut [Work], tol: &BigRational) {
    for w in works.iter_mut() {
        w.refine_to(tol);
    }
}

/// Isolate every real root of `p` in `interval`, with multiplicities from the
/// square-free decomposition and enclosures of width at most `tol`.
pub fn isolate_real_roots(
    p: &UnivariateSlice,
    interval: &Interval,
    tol: &BigRational,
) -> Result<RootList> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !tol.is_positive() {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }
    if p.is_constant() {
        return Ok(Vec::new());
    }
    let mut works = Vec::new();
    for (factor, mult) in p.square_free_decomposition() {
        works.extend(isolate_squarefree(&factor, interval.lo(), interval.hi(), mult));
    }
    refine_all(&mut works, tol);
    let mut works = disjointify(works);
    refine_all(&mut works, tol);
    let works = disjointify(works);
    Ok(works
        .into_iter()
        .map(|w| IsolatedRoot {
            enclosure: Interval::new(w.lo, w.hi).expect("ordered bracket"),
            multiplicity: w.multiplicity,
        })
        .collect())
}

/// Rational sample points that determine the sign pattern of every
/// polynomial in `polys` on `interval`: the interval endpoints, all root
/// enclosure endpoints, and the midpoints of the root-free gaps.
///
/// The polynomials' square-free parts must be pairwise coprime (true for
/// `P - t` versus `P + t` with `t > 0`, the only way this is used).
fn sign_sample_points(polys: &[&UnivariateSlice], interval: &Interval) -> Vec<BigRational> {
    let mut works = Vec::new();
    for p in polys {
        if p.is_constant() {
            continue;
        }
        let sf = p.square_free_part();
        works.extend(isolate_squarefree(&sf, interval.lo(), interval.hi(), 1));
    }
    let works = disjointify(works);
    let mut pts = vec![interval.lo().clone(), interval.hi().clone()];
    let two = BigRational::from(BigInt::from(2));
    let mut prev_hi = interval.lo().clone();
    for w in &works {
        pts.push((&prev_hi + &w.lo) / &two);
        pts.push(w.lo.clone());
        pts.push(w.hi.clone());
        prev_hi = w.hi.clone();
    }
    pts.push((&prev_hi + interval.hi()) / &two);
    pts.sort();
    pts.dedup();
    pts
}

/// Exact decision: does `|q(s)| < bound` hold anywhere on the interval?
/// Returns a witness point if so.
pub fn find_abs_below(
    q: &UnivariateSlice,
    interval: &Interval,
    bound: &BigRational,
) -> Option<BigRational> {
    debug_assert!(bound.is_positive());
    let low = q.sub(&UnivariateSlice::new(vec![bound.clone()])); // q - bound
    let high = q.add_constant(bound); // q + bound
    for pt in sign_sample_points(&[&low, &high], interval) {
        if low.eval(&pt).is_negative() && high.eval(&pt).is_positive() {
            return Some(pt);
        }
    }
    None
}

/// Exact decision: `|q(s)| >= bound` for every `s` in the interval.
pub fn poly_abs_at_least(q: &UnivariateSlice, interval: &Interval, bound: &BigRational) -> bool {
    find_abs_below(q, interval, bound).is_none()
}

/// Exact decision: `q(s) <= 0` for every `s` in the interval.
pub fn poly_nonpositive_on(q: &UnivariateSlice, interval: &Interval) -> bool {
    if q.is_zero() {
        return true;
    }
    sign_sample_points(&[q], interval)
        .iter()
        .all(|pt| !q.eval(pt).is_positive())
}

/// Exact decision: `q(s) >= 0` for every `s` in the interval.
pub fn poly_nonnegative_on(q: &UnivariateSlice, interval: &Interval) -> bool {
    poly_nonpositive_on(&q.negate(), interval)
}

/// Exact Lebesgue measure of `{s in I : |P(s)| <= t}` up to breakpoint
/// location error at most `(number of level crossings) * tol / 2`.
///
/// Breakpoints are the roots of `P - t` and `P + t`; the indicator is
/// decided exactly at a rational sample point strictly inside each
/// root-free gap, and the returned value sums exact gap lengths between
/// enclosure midpoints.
pub fn sublevel_measure_1d(
    p: &UnivariateSlice,
    interval: &Interval,
    t: &BigRational,
    tol: &BigRational,
) -> Result<BigRational> {
    if t.is_negative() {
        return Err(Error::InvalidParameter("threshold t must be non-negative".into()));
    }
    if !tol.is_positive() {
        return Err(Error::InvalidParameter("tolerance must be positive".into()));
    }
    if p.is_constant() {
        return Ok(if p.constant_coefficient().abs() <= *t {
            interval.length()
        } else {
            BigRational::zero()
        });
    }
    let minus = p.sub(&UnivariateSlice::new(vec![t.clone()]));
    let plus = p.add_constant(t);
    let mut works = Vec::new();
    for q in [&minus, &plus] {
        for (factor, mult) in q.square_free_decomposition() {
            works.extend(isolate_squarefree(&factor, interval.lo(), interval.hi(), mult));
        }
    }
    refine_all(&mut works, tol);
    let mut works = disjointify(works);
    refine_all(&mut works, tol);
    let works = disjointify(works);

    let two = BigRational::from(BigInt::from(2));
    // Segment boundaries (enclosure midpoints) and guaranteed-sign sample
    // points (strictly between consecutive enclosures).
    let mut breaks = vec![interval.lo().clone()];
    let mut samples = Vec::new();
    let mut prev_hi = interval.lo().clone();
    for w in &works {
        samples.push((&prev_hi + &w.lo) / &two);
        breaks.push((&w.lo + &w.hi) / &two);
        prev_hi = w.hi.clone();
    }
    samples.push((&prev_hi + interval.hi()) / &two);
    breaks.push(interval.hi().clone());

    let mut measure = BigRational::zero();
    for (k, sample) in samples.iter().enumerate() {
        if p.eval(sample).abs() <= *t {
            let len = &breaks[k + 1] - &breaks[k];
            if len.is_positive() {
                measure += len;
            }
        }
    }
    Ok(measure)
}

/// Ratios `Vol{|P| <= t} / (t/lambda)^(1/p)` over a threshold grid, after
/// certifying the derivative floor `|P^(p)| >= lambda` on the interval
/// exactly. The constant these ratios stay below exists but is not pinned to
/// a specific value; callers assert empirical boundedness.
pub fn lemma1_ratio_sweep(
    p: &UnivariateSlice,
    interval: &Interval,
    lambda: &BigRational,
    deriv_order: u32,
    t_grid: &[f64],
) -> Result<Vec<f64>> {
    if deriv_order < 1 {
        return Err(Error::InvalidParameter("derivative order must be >= 1".into()));
    }
    if !lambda.is_positive() {
        return Err(Error::InvalidParameter("lambda must be positive".into()));
    }
    let deriv = p.derivative_n(deriv_order);
    if let Some(witness) = find_abs_below(&deriv, interval, lambda) {
        return Err(Error::HypothesisViolation {
            name: "derivative-floor".into(),
            detail: format!(
                "|P^({deriv_order})| < {lambda} at s = {witness}",
            ),
        });
    }
    let tol = BigRational::new(BigInt::from(1), BigInt::from(10u64).pow(14));
    let lambda_f = lambda.to_f64().unwrap();
    let mut out = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        if t <= 0.0 {
            return Err(Error::InvalidParameter("t grid must be positive".into()));
        }
        let t_exact = BigRational::from_float(t).expect("finite t");
        let measure = sublevel_measure_1d(p, interval, &t_exact, &tol)?;
        let denom = (t / lambda_f).powf(1.0 / deriv_order as f64);
        out.push(measure.to_f64().unwrap() / denom);
    }
    Ok(out)
}

/// Lemma: if the constant coefficient dominates (`|a_0| - sup_I |P - a_0| >=
/// lambda`), the sub-level measure vanishes for `t < lambda` and is bounded
/// by `Vol(I) (t/lambda)^(1/d)` afterwards. The domination hypothesis is
/// certified exactly; returns the measure.
pub fn lemma1_constant_case(
    p: &UnivariateSlice,
    interval: &Interval,
    t: &BigRational,
    lambda: &BigRational,
) -> Result<BigRational> {
    if !lambda.is_positive() {
        return Err(Error::InvalidParameter("lambda must be positive".into()));
    }
    let a0 = p.constant_coefficient().clone();
    let slack = a0.abs() - lambda;
    // Hypothesis: sup_I |P - a_0| <= |a_0| - lambda, exactly.
    let centered = p.add_constant(&-a0);
    let holds = !slack.is_negative() && poly_abs_bounded_by(&centered, interval, &slack);
    if !holds {
        return Err(Error::HypothesisViolation {
            name: "constant-domination".into(),
            detail: format!("|a_0| - sup_I |P - a_0| < {lambda}"),
        });
    }
    if *t < *lambda {
        return Ok(BigRational::zero());
    }
    let tol = BigRational::new(BigInt::from(1), BigInt::from(10u64).pow(14));
    let measure = sublevel_measure_1d(p, interval, t, &tol)?;
    let d = p.degree().unwrap_or(1).max(1) as f64;
    let bound = interval.length().to_f64().unwrap()
        * (t.to_f64().unwrap() / lambda.to_f64().unwrap()).powf(1.0 / d);
    debug_assert!(
        measure.to_f64().unwrap() <= bound + 1e-12,
        "constant-case bound must hold when the hypothesis does"
    );
    Ok(measure)
}

/// Exact decision: `|q(s)| <= bound` for every `s` in the interval.
pub fn poly_abs_bounded_by(q: &UnivariateSlice, interval: &Interval, bound: &BigRational) -> bool {
    let upper = q.sub(&UnivariateSlice::new(vec![bound.clone()]));
    let lower = q.add_constant(bound);
    poly_nonpositive_on(&upper, interval) && poly_nonnegative_on(&lower, interval)
}

#[cfg(test)]
mod tests;
