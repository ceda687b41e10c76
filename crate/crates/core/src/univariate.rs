//! Dense univariate polynomials over exact rationals.
//!
//! [`UnivariateSlice`] is the restriction of a multivariate polynomial to a
//! line (coefficients indexed by the power of the line parameter), and the
//! input type for all one-dimensional root and measure computations.
//! Trailing zero coefficients are permitted and ignored by the algebra.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Coefficients `a_0..a_d` of a univariate rational polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariateSlice {
    coeffs: Vec<BigRational>,
}

impl UnivariateSlice {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        assert!(!coeffs.is_empty(), "coefficient list must be nonempty");
        UnivariateSlice { coeffs }
    }

    pub fn from_integers(coeffs: &[i64]) -> Self {
        UnivariateSlice::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from(BigInt::from(c)))
                .collect(),
        )
    }

    /// Raw coefficients including any trailing zeros.
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coefficients_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// Degree after trimming trailing zeros; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.degree().is_none()
    }

    /// True if the polynomial is a constant (degree <= 0).
    pub fn is_constant(&self) -> bool {
        self.degree().unwrap_or(0) == 0
    }

    pub fn constant_coefficient(&self) -> &BigRational {
        &self.coeffs[0]
    }

    pub fn leading_coefficient(&self) -> BigRational {
        match self.degree() {
            Some(d) => self.coeffs[d].clone(),
            None => BigRational::zero(),
        }
    }

    /// Trimmed copy without trailing zeros (zero polynomial keeps one slot).
    pub fn trimmed(&self) -> UnivariateSlice {
        let d = self.degree().unwrap_or(0);
        UnivariateSlice::new(self.coeffs[..=d].to_vec())
    }

    pub fn eval(&self, s: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * s + c;
        }
        acc
    }

    pub fn eval_f64(&self, s: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * s + c.to_f64().unwrap_or(f64::NAN);
        }
        acc
    }

    pub fn derivative(&self) -> UnivariateSlice {
        if self.coeffs.len() <= 1 {
            return UnivariateSlice::new(vec![BigRational::zero()]);
        }
        UnivariateSlice::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(k, c)| c * BigRational::from(BigInt::from(k as u64 + 1)))
                .collect(),
        )
    }

    /// `n`-th derivative.
    pub fn derivative_n(&self, n: u32) -> UnivariateSlice {
        let mut p = self.clone();
        for _ in 0..n {
            p = p.derivative();
        }
        p
    }

    /// `p + c` (shift the constant coefficient).
    pub fn add_constant(&self, c: &BigRational) -> UnivariateSlice {
        let mut coeffs = self.coeffs.clone();
        coeffs[0] += c;
        UnivariateSlice::new(coeffs)
    }

    pub fn scale(&self, c: &BigRational) -> UnivariateSlice {
        UnivariateSlice::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn negate(&self) -> UnivariateSlice {
        UnivariateSlice::new(self.coeffs.iter().map(|a| -a).collect())
    }

    pub fn add(&self, other: &UnivariateSlice) -> UnivariateSlice {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = vec![BigRational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[k] += c;
        }
        for (k, c) in other.coeffs.iter().enumerate() {
            out[k] += c;
        }
        UnivariateSlice::new(out)
    }

    pub fn sub(&self, other: &UnivariateSlice) -> UnivariateSlice {
        self.add(&other.negate())
    }

    pub fn mul(&self, other: &UnivariateSlice) -> UnivariateSlice {
        if self.is_zero() || other.is_zero() {
            return UnivariateSlice::new(vec![BigRational::zero()]);
        }
        let (a, b) = (self.trimmed(), other.trimmed());
        let mut out = vec![BigRational::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, ca) in a.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.coeffs.iter().enumerate() {
                if !cb.is_zero() {
                    out[i + j] += ca * cb;
                }
            }
        }
        UnivariateSlice::new(out)
    }

    /// Quotient and remainder of exact polynomial division.
    pub fn div_rem(&self, divisor: &UnivariateSlice) -> (UnivariateSlice, UnivariateSlice) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.coeffs[dd].clone();
        if self.is_zero() {
            return (
                UnivariateSlice::new(vec![BigRational::zero()]),
                UnivariateSlice::new(vec![BigRational::zero()]),
            );
        }
        let mut rem = self.trimmed().coeffs;
        if rem.len() < dd + 1 {
            return (UnivariateSlice::new(vec![BigRational::zero()]), UnivariateSlice::new(rem));
        }
        let qlen = rem.len() - dd;
        let mut quot = vec![BigRational::zero(); qlen];
        for k in (0..qlen).rev() {
            let q = &rem[k + dd] / &lead;
            if q.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs[..=dd].iter().enumerate() {
                let delta = &q * c;
                rem[k + j] -= delta;
            }
            quot[k] = q;
        }
        rem.truncate(dd.max(1));
        (UnivariateSlice::new(quot), UnivariateSlice::new(rem))
    }

    /// Monic gcd by the Euclidean remainder sequence.
    pub fn gcd(&self, other: &UnivariateSlice) -> UnivariateSlice {
        let mut a = self.trimmed();
        let mut b = other.trimmed();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.trimmed();
        }
        if a.is_zero() {
            return a;
        }
        let lead = a.leading_coefficient();
        a.scale(&(BigRational::one() / lead))
    }

    /// Square-free part `p / gcd(p, p')`, monic up to the leading coefficient
    /// of the quotient.
    pub fn square_free_part(&self) -> UnivariateSlice {
        let g = self.gcd(&self.derivative());
        if g.degree() == Some(0) {
            return self.trimmed();
        }
        let (q, r) = self.div_rem(&g);
        debug_assert!(r.is_zero(), "gcd must divide exactly");
        q
    }

    /// Yun's square-free decomposition: returns `(factor, multiplicity)` with
    /// `p = lc * prod factor_i^multiplicity_i`, factors pairwise coprime and
    /// square-free.
    pub fn square_free_decomposition(&self) -> Vec<(UnivariateSlice, u32)> {
        let p = self.trimmed();
        let d = p.degree().expect("zero polynomial has no square-free decomposition");
        if d == 0 {
            return Vec::new();
        }
        let dp = p.derivative();
        let mut out = Vec::new();
        let mut g = p.gcd(&dp);
        if g.degree() == Some(0) {
            out.push((p, 1));
            return out;
        }
        let (mut w, _) = p.div_rem(&g);
        let (mut y, _) = dp.div_rem(&g);
        let mut mult = 1u32;
        loop {
            let z = y.sub(&w.derivative()).trimmed();
            if z.is_zero() {
                if w.degree().unwrap_or(0) > 0 {
                    out.push((w, mult));
                }
                break;
            }
            g = w.gcd(&z);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), mult));
            }
            let (w2, _) = w.div_rem(&g);
            let (y2, _) = z.div_rem(&g);
            w = w2;
            y = y2;
            mult += 1;
            if w.degree().unwrap_or(0) == 0 {
                break;
            }
        }
        out
    }

    /// Exact Taylor shift: coefficients of `s -> p(s + a)`.
    pub fn shift_by(&self, a: &BigRational) -> UnivariateSlice {
        let p = self.trimmed();
        let mut acc = vec![p.coeffs[p.coeffs.len() - 1].clone()];
        for c in p.coeffs.iter().rev().skip(1) {
            // acc = acc * (x + a) + c
            let mut next = vec![BigRational::zero(); acc.len() + 1];
            for (k, v) in acc.iter().enumerate() {
                next[k + 1] += v;
                next[k] += v * a;
            }
            next[0] += c;
            acc = next;
        }
        UnivariateSlice::new(acc)
    }

    /// Coefficients of `s -> p(c * s)`.
    pub fn scale_argument(&self, c: &BigRational) -> UnivariateSlice {
        let mut pow = BigRational::one();
        UnivariateSlice::new(
            self.coeffs
                .iter()
                .map(|a| {
                    let v = a * &pow;
                    pow *= c;
                    v
                })
                .collect(),
        )
    }

    /// Coefficient reversal to a fixed length: `x^(len-1) * p(1/x)`.
    pub fn reversed(&self, len: usize) -> UnivariateSlice {
        assert!(len >= self.trimmed().coeffs.len());
        let mut coeffs = self.trimmed().coeffs;
        coeffs.resize(len, BigRational::zero());
        coeffs.reverse();
        UnivariateSlice::new(coeffs)
    }

    /// Number of sign changes in the coefficient sequence (Descartes).
    pub fn sign_variations(&self) -> usize {
        let mut last = 0i8;
        let mut vars = 0;
        for c in &self.coeffs {
            let s = if c.is_zero() {
                0
            } else if c.is_positive() {
                1
            } else {
                -1
            };
            if s != 0 {
                if last != 0 && s != last {
                    vars += 1;
                }
                last = s;
            }
        }
        vars
    }

    /// One-norm of the coefficients.
    pub fn coeff_one_norm(&self) -> BigRational {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn division_round_trips() {
        // (s^2 - 1) = (s - 1)(s + 1)
        let p = UnivariateSlice::from_integers(&[-1, 0, 1]);
        let d = UnivariateSlice::from_integers(&[-1, 1]);
        let (q, r) = p.div_rem(&d);
        assert!(r.is_zero());
        assert_eq!(q.trimmed(), UnivariateSlice::from_integers(&[1, 1]));
    }

    #[test]
    fn gcd_finds_common_factor() {
        let a = UnivariateSlice::from_integers(&[-1, 0, 1]); // (s-1)(s+1)
        let b = UnivariateSlice::from_integers(&[-2, 1, 1]); // (s-1)(s+2)
        let g = a.gcd(&b);
        assert_eq!(g.trimmed(), UnivariateSlice::from_integers(&[-1, 1]));
    }

    #[test]
    fn square_free_decomposition_recovers_multiplicities() {
        // p = (s-1)^2 * (s+2)^3
        let f1 = UnivariateSlice::from_integers(&[-1, 1]);
        let f2 = UnivariateSlice::from_integers(&[2, 1]);
        let p = f1.mul(&f1).mul(&f2.mul(&f2).mul(&f2));
        let dec = p.square_free_decomposition();
        assert_eq!(dec.len(), 2);
        let mults: Vec<u32> = dec.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, vec![2, 3]);
        // reconstruct
        let mut rebuilt = UnivariateSlice::from_integers(&[1]);
        for (f, m) in &dec {
            for _ in 0..*m {
                rebuilt = rebuilt.mul(f);
            }
        }
        let lead = p.leading_coefficient() / rebuilt.leading_coefficient();
        assert_eq!(rebuilt.scale(&lead).trimmed(), p.trimmed());
    }

    #[test]
    fn shift_matches_evaluation() {
        let p = UnivariateSlice::from_integers(&[3, -2, 0, 5]);
        let a = rat(7, 3);
        let shifted = p.shift_by(&a);
        for k in -4..=4 {
            let s = rat(k, 2);
            assert_eq!(shifted.eval(&s), p.eval(&(&s + &a)));
        }
    }

    #[test]
    fn sign_variations_counts_descartes() {
        // s^3 - s: signs (0, -, 0, +) -> 1 variation
        let p = UnivariateSlice::from_integers(&[0, -1, 0, 1]);
        assert_eq!(p.sign_variations(), 1);
    }
}
