//! Exact sparse multivariate polynomials over arbitrary-precision rationals.
//!
//! Coefficients are `BigRational` throughout; every symbolic operation here
//! (differentiation, Taylor shift, restriction to a line) is exact. Floating
//! point enters only at the explicit evaluation boundary.

mod compiled;
mod parse;
mod print;

pub use compiled::CompiledPoly;
pub use parse::parse_poly;
pub use print::default_var_names;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::univariate::UnivariateSlice;
use crate::{Error, Result};

/// Exponent vector of one term. Ordered graded-lexicographically: total
/// degree first, then lexicographic on the exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total degree with a dedicated sentinel for the zero polynomial, so the
/// sentinel can never leak into an exponent formula as an ordinary integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Degree {
    MinusInfinity,
    Finite(u32),
}

impl Degree {
    /// The finite degree, or an error for the zero polynomial.
    pub fn finite(self) -> Result<u32> {
        match self {
            Degree::Finite(d) => Ok(d),
            Degree::MinusInfinity => Err(Error::ZeroPolynomial),
        }
    }
}

/// Order of vanishing at a point: minimal total degree in the Taylor
/// expansion there. `Infinite` identifies the zero polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VanishingOrder {
    Finite(u32),
    Infinite,
}

/// Sparse multivariate polynomial with exact rational coefficients.
///
/// Invariants: no stored coefficient is zero (the zero polynomial is the
/// empty term map) and every exponent vector has length `n_vars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    n_vars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl Polynomial {
    /// The zero polynomial in `n_vars` variables.
    pub fn zero(n_vars: usize) -> Self {
        Polynomial {
            n_vars,
            terms: BTreeMap::new(),
        }
    }

    /// Constant polynomial.
    pub fn constant(n_vars: usize, c: BigRational) -> Self {
        let mut p = Polynomial::zero(n_vars);
        if !c.is_zero() {
            p.terms.insert(Monomial(vec![0; n_vars]), c);
        }
        p
    }

    /// The variable `x_index` as a polynomial.
    pub fn var(n_vars: usize, index: usize) -> Self {
        assert!(index < n_vars, "variable index {index} out of range");
        let mut exps = vec![0; n_vars];
        exps[index] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(exps), BigRational::one());
        Polynomial { n_vars, terms }
    }

    /// Build from raw `(exponents, coefficient)` pairs; duplicates are summed
    /// and zero coefficients dropped.
    pub fn from_terms<I>(n_vars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Vec<u32>, BigRational)>,
    {
        let mut p = Polynomial::zero(n_vars);
        for (exps, c) in terms {
            assert_eq!(exps.len(), n_vars, "exponent vector length mismatch");
            p.add_term(Monomial(exps), c);
        }
        p
    }

    /// Integer-coefficient convenience constructor for tests and fixtures.
    pub fn from_int_terms(n_vars: usize, terms: &[(&[u32], i64)]) -> Self {
        Polynomial::from_terms(
            n_vars,
            terms
                .iter()
                .map(|(e, c)| (e.to_vec(), BigRational::from(BigInt::from(*c)))),
        )
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn degree(&self) -> Degree {
        match self.terms.keys().next_back() {
            Some(m) => Degree::Finite(m.total_degree()),
            None => Degree::MinusInfinity,
        }
    }

    /// Minimal total degree over the stored terms (`None` for zero).
    pub fn min_total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.total_degree()).min()
    }

    pub fn constant_coefficient(&self) -> BigRational {
        self.terms
            .get(&Monomial(vec![0; self.n_vars]))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.n_vars);
        }
        Polynomial {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(self.n_vars, BigRational::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Exact partial derivative with respect to `x_index`.
    pub fn partial_derivative(&self, index: usize) -> Polynomial {
        assert!(index < self.n_vars, "variable index out of range");
        let mut out = Polynomial::zero(self.n_vars);
        for (m, c) in &self.terms {
            let e = m.0[index];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[index] = e - 1;
            out.add_term(Monomial(exps), c * BigRational::from(BigInt::from(e)));
        }
        out
    }

    /// Exact gradient, one partial per variable.
    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.n_vars).map(|i| self.partial_derivative(i)).collect()
    }

    /// The polynomial `<grad p(x), x> = sum_i x_i dp/dx_i`, exactly.
    pub fn radial_derivative(&self) -> Polynomial {
        let mut out = Polynomial::zero(self.n_vars);
        for (i, d) in self.gradient().into_iter().enumerate() {
            out = &out + &(&Polynomial::var(self.n_vars, i) * &d);
        }
        out
    }

    /// Split into homogeneous components, keyed by total degree.
    /// Components sum back to the polynomial exactly.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.total_degree())
                .or_insert_with(|| Polynomial::zero(self.n_vars))
                .add_term(m.clone(), c.clone());
        }
        out
    }

    /// Whether all terms share one total degree. The zero polynomial counts
    /// as homogeneous (of every degree).
    pub fn is_homogeneous(&self) -> bool {
        self.homogeneous_components().len() <= 1
    }

    /// The top-degree homogeneous component, or an error for zero.
    pub fn top_component(&self) -> Result<(u32, Polynomial)> {
        let d = self.degree().finite()?;
        let comp = self
            .homogeneous_components()
            .remove(&d)
            .expect("top component present for nonzero polynomial");
        Ok((d, comp))
    }

    /// Exact substitution `x -> x + a` (Taylor shift), one variable at a time
    /// through the binomial theorem.
    pub fn taylor_shift(&self, a: &[BigRational]) -> Result<Polynomial> {
        if a.len() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                got: a.len(),
            });
        }
        let mut current = self.clone();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            let mut next = Polynomial::zero(self.n_vars);
            for (m, c) in &current.terms {
                let e = m.0[i];
                // x_i^e -> sum_k C(e,k) a_i^(e-k) x_i^k
                let mut a_pow = BigRational::one();
                for k in (0..=e).rev() {
                    let bin = binomial(BigInt::from(e), BigInt::from(k));
                    let mut exps = m.0.clone();
                    exps[i] = k;
                    next.add_term(Monomial(exps), c * BigRational::from(bin) * &a_pow);
                    a_pow *= ai;
                }
            }
            current = next;
        }
        Ok(current)
    }

    /// Order of vanishing at `a`: the minimal total degree with a nonzero
    /// coefficient after the exact shift `x -> a + y`.
    pub fn order_at(&self, a: &[BigRational]) -> Result<VanishingOrder> {
        let shifted = self.taylor_shift(a)?;
        Ok(match shifted.min_total_degree() {
            Some(d) => VanishingOrder::Finite(d),
            None => VanishingOrder::Infinite,
        })
    }

    /// Coefficients of `s -> p(base + s * direction)`, exact over rationals.
    /// The output always has `deg(p) + 1` coefficient slots (trailing zeros
    /// permitted); the slice of the zero polynomial is a single zero.
    pub fn line_restriction(&self, base: &[BigRational], direction: &[BigRational]) -> Result<UnivariateSlice> {
        if base.len() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                got: base.len(),
            });
        }
        if direction.len() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                got: direction.len(),
            });
        }
        if direction.iter().all(|d| d.is_zero()) {
            return Err(Error::ZeroDirection);
        }
        let deg = match self.degree() {
            Degree::Finite(d) => d as usize,
            Degree::MinusInfinity => 0,
        };
        let mut out = vec![BigRational::zero(); deg + 1];
        for (m, c) in &self.terms {
            // product over i of (base_i + dir_i s)^(e_i)
            let mut prod = vec![c.clone()];
            for i in 0..self.n_vars {
                for _ in 0..m.0[i] {
                    prod = mul_linear(&prod, &base[i], &direction[i]);
                }
            }
            for (k, v) in prod.into_iter().enumerate() {
                out[k] += v;
            }
        }
        Ok(UnivariateSlice::new(out))
    }

    /// Exact evaluation at a rational point, Horner along the last variable
    /// of the sorted-term stream.
    pub fn eval_rational(&self, x: &[BigRational]) -> Result<BigRational> {
        if x.len() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                got: x.len(),
            });
        }
        let terms: Vec<(&[u32], &BigRational)> =
            self.terms.iter().map(|(m, c)| (m.0.as_slice(), c)).collect();
        Ok(eval_horner_rational(&terms, self.n_vars, x))
    }

    /// Floating evaluation with the same Horner scheme. For hot loops build a
    /// [`CompiledPoly`] once instead.
    pub fn eval_f64(&self, x: &[f64]) -> Result<f64> {
        if x.len() != self.n_vars {
            return Err(Error::DimensionMismatch {
                expected: self.n_vars,
                got: x.len(),
            });
        }
        Ok(CompiledPoly::new(self).eval(x))
    }

    /// One-norm of the coefficients.
    pub fn coeff_one_norm(&self) -> BigRational {
        let mut s = BigRational::zero();
        for c in self.terms.values() {
            s += c.abs();
        }
        s
    }
}

/// Multiply a dense univariate coefficient vector by `(b + d s)`.
fn mul_linear(coeffs: &[BigRational], b: &BigRational, d: &BigRational) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); coeffs.len() + 1];
    for (k, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        out[k] += c * b;
        out[k + 1] += c * d;
    }
    out
}

fn eval_horner_rational(
    terms: &[(&[u32], &BigRational)],
    n_vars: usize,
    x: &[BigRational],
) -> BigRational {
    if terms.is_empty() {
        return BigRational::zero();
    }
    if n_vars == 0 {
        return terms[0].1.clone();
    }
    // Group by the exponent of the last variable.
    let mut groups: BTreeMap<u32, Vec<(&[u32], &BigRational)>> = BTreeMap::new();
    for &(exps, c) in terms {
        groups
            .entry(exps[n_vars - 1])
            .or_default()
            .push((&exps[..n_vars - 1], c));
    }
    let xv = &x[n_vars - 1];
    let mut acc = BigRational::zero();
    let mut prev_exp: Option<u32> = None;
    for (&e, sub) in groups.iter().rev() {
        let val = eval_horner_rational(sub, n_vars - 1, x);
        match prev_exp {
            None => acc = val,
            Some(pe) => {
                for _ in 0..(pe - e) {
                    acc *= xv;
                }
                acc += val;
            }
        }
        prev_exp = Some(e);
    }
    if let Some(e) = prev_exp {
        for _ in 0..e {
            acc *= xv;
        }
    }
    acc
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.n_vars, rhs.n_vars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.n_vars, rhs.n_vars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            n_vars: self.n_vars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.n_vars, rhs.n_vars, "variable count mismatch");
        let mut out = Polynomial::zero(self.n_vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}
