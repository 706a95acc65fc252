//! Truncated formal power series over exact rationals, and the generating
//! functions of the central sequences.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series has zero constant term and is not invertible")]
    NonInvertible,
    #[error("constant term {0} is not the square of a positive rational")]
    NonSquareLeadingTerm(BigRational),
}

pub type Result<T> = std::result::Result<T, SeriesError>;

/// Which square-root algorithm to use.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SqrtMethod {
    /// `s_n = (c_n − Σ_{0<i<n} s_i s_{n−i}) / (2 s_0)`.
    #[default]
    Recursion,
    /// `s ← (s + p/s)/2`, doubling the correct order each pass.
    Newton,
}

/// `Σ_{i=0..=order} c_i tⁱ + O(t^{order+1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

fn rat(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl PowerSeries {
    /// Pads or truncates `coeffs` to exactly `order + 1` terms.
    pub fn new(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        PowerSeries { coeffs }
    }

    /// A polynomial given by integer coefficients, viewed to `order`.
    pub fn from_i64s(coeffs: &[i64], order: usize) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::from_i64s(&[1], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.coeffs[..=order.min(self.order())].to_vec(), order)
    }

    /// Coefficients as integers, if every denominator is 1.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        Self::new(coeffs, order)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let coeffs = (0..=order).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect();
        Self::new(coeffs, order)
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect(), self.order())
    }

    /// Multiplies by `t`, keeping the order.
    pub fn shift_up(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(BigRational::zero());
        coeffs.extend_from_slice(&self.coeffs[..self.order()]);
        Self::new(coeffs, self.order())
    }

    /// Divides by `t`; the constant term must be zero. The order drops by one.
    pub fn shift_down(&self) -> Option<Self> {
        if !self.coeffs[0].is_zero() || self.order() == 0 {
            return None;
        }
        Some(Self::new(self.coeffs[1..].to_vec(), self.order() - 1))
    }
}

/// Rationals `nums[i] / den` over one shared denominator, so that
/// convolutions run on integers and normalize once per coefficient.
struct CommonDenominator {
    den: BigInt,
    nums: Vec<BigInt>,
}

impl CommonDenominator {
    fn new() -> Self {
        CommonDenominator {
            den: BigInt::one(),
            nums: Vec::new(),
        }
    }

    fn from_slice(values: &[BigRational]) -> Self {
        let mut out = Self::new();
        out.den = values.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        out.nums = values
            .iter()
            .map(|v| v.numer() * (&out.den / v.denom()))
            .collect();
        out
    }

    fn push(&mut self, v: &BigRational) {
        if !(&self.den % v.denom()).is_zero() {
            let den = self.den.lcm(v.denom());
            let factor = &den / &self.den;
            for x in &mut self.nums {
                *x *= &factor;
            }
            self.den = den;
        }
        self.nums.push(v.numer() * (&self.den / v.denom()));
    }

    /// `Σ_{i ∈ range} self_i · other_{n−i}` as an unnormalized numerator over
    /// `self.den · other.den`.
    fn convolve_at(&self, other: &Self, n: usize, range: std::ops::RangeInclusive<usize>) -> BigInt {
        range
            .filter(|&i| !self.nums[i].is_zero() && !other.nums[n - i].is_zero())
            .map(|i| &self.nums[i] * &other.nums[n - i])
            .sum()
    }
}

/// Product truncated to `min(order p, order q)`.
pub fn series_mul(p: &PowerSeries, q: &PowerSeries) -> PowerSeries {
    let order = p.order().min(q.order());
    let lp = CommonDenominator::from_slice(&p.coeffs[..=order]);
    let lq = CommonDenominator::from_slice(&q.coeffs[..=order]);
    let den = &lp.den * &lq.den;
    let coeffs = (0..=order)
        .map(|n| BigRational::new(lp.convolve_at(&lq, n, 0..=n), den.clone()))
        .collect();
    PowerSeries::new(coeffs, order)
}

/// Multiplicative inverse; needs a nonzero constant term.
pub fn series_inverse(p: &PowerSeries) -> Result<PowerSeries> {
    let c0 = &p.coeffs[0];
    if c0.is_zero() {
        return Err(SeriesError::NonInvertible);
    }
    let inv0 = c0.recip();
    let lp = CommonDenominator::from_slice(&p.coeffs);
    let mut acc_out = CommonDenominator::new();
    let mut out: Vec<BigRational> = Vec::with_capacity(p.coeffs.len());
    acc_out.push(&inv0);
    out.push(inv0.clone());
    for n in 1..=p.order() {
        let sum = lp.convolve_at(&acc_out, n, 1..=n);
        let next = -BigRational::new(sum, &lp.den * &acc_out.den) * &inv0;
        acc_out.push(&next);
        out.push(next);
    }
    Ok(PowerSeries::new(out, p.order()))
}

fn exact_sqrt(x: &BigInt) -> Option<BigInt> {
    if x.is_negative() {
        return None;
    }
    let r = x.sqrt();
    (&r * &r == *x).then_some(r)
}

fn rational_sqrt(c: &BigRational) -> Result<BigRational> {
    let err = || SeriesError::NonSquareLeadingTerm(c.clone());
    if !c.is_positive() {
        return Err(err());
    }
    let num = exact_sqrt(c.numer()).ok_or_else(err)?;
    let den = exact_sqrt(c.denom()).ok_or_else(err)?;
    Ok(BigRational::new(num, den))
}

/// Square root with positive constant term, by the chosen method.
pub fn series_sqrt_with(p: &PowerSeries, method: SqrtMethod) -> Result<PowerSeries> {
    let s0 = rational_sqrt(&p.coeffs[0])?;
    match method {
        SqrtMethod::Recursion => Ok(sqrt_recursion(p, s0)),
        SqrtMethod::Newton => sqrt_newton(p, s0),
    }
}

pub fn series_sqrt(p: &PowerSeries) -> Result<PowerSeries> {
    series_sqrt_with(p, SqrtMethod::default())
}

fn sqrt_recursion(p: &PowerSeries, s0: BigRational) -> PowerSeries {
    let two_s0_inv = (&s0 * rat(2)).recip();
    let mut scaled = CommonDenominator::new();
    scaled.push(&s0);
    let mut s: Vec<BigRational> = Vec::with_capacity(p.coeffs.len());
    s.push(s0);
    for n in 1..=p.order() {
        let cross = BigRational::new(
            scaled.convolve_at(&scaled, n, 1..=n - 1),
            &scaled.den * &scaled.den,
        );
        let next = (&p.coeffs[n] - cross) * &two_s0_inv;
        scaled.push(&next);
        s.push(next);
    }
    PowerSeries::new(s, p.order())
}

fn sqrt_newton(p: &PowerSeries, s0: BigRational) -> Result<PowerSeries> {
    let target = p.order();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut s = PowerSeries::new(vec![s0], 0);
    let mut known = 0usize;
    while known < target {
        // correct through t^known now; one pass gives 2·known + 1
        let next = (2 * known + 1).min(target);
        let s_ext = s.truncate(next);
        let quotient = series_mul(&p.truncate(next), &series_inverse(&s_ext)?);
        s = s_ext.add(&quotient).scale(&half);
        known = next;
    }
    Ok(s)
}

/// `F(t) = (1 − 2t − 3t²)^{-1/2}` to `order`.
pub fn f_series(order: usize) -> PowerSeries {
    f_series_with(order, SqrtMethod::default())
}

pub fn f_series_with(order: usize, method: SqrtMethod) -> PowerSeries {
    let base = PowerSeries::from_i64s(&[1, -2, -3], order);
    let root = series_sqrt_with(&base, method).expect("constant term is 1");
    series_inverse(&root).expect("constant term is 1")
}

/// `G(t) = (1/(2t)) (1 − √(1−3t)/√(1+t))` to `order`.
pub fn g_series(order: usize) -> PowerSeries {
    g_series_with(order, SqrtMethod::default())
}

pub fn g_series_with(order: usize, method: SqrtMethod) -> PowerSeries {
    let n = order + 1;
    let top = series_sqrt_with(&PowerSeries::from_i64s(&[1, -3], n), method).expect("c0 = 1");
    let bottom = series_sqrt_with(&PowerSeries::from_i64s(&[1, 1], n), method).expect("c0 = 1");
    let ratio = series_mul(&top, &series_inverse(&bottom).expect("c0 = 1"));
    let numerator = PowerSeries::one(n).sub(&ratio);
    assert!(numerator.coeff(0).is_zero(), "numerator of G must vanish at t = 0");
    numerator
        .shift_down()
        .expect("zero constant term")
        .scale(&BigRational::new(BigInt::one(), BigInt::from(2)))
}

/// Checks `2t·G(t) = 1 + (3t − 1)·F(t)` coefficientwise through `t^order`.
pub fn g_from_f_identity_with(f: &PowerSeries, g: &PowerSeries, order: usize) -> bool {
    if f.order() < order || g.order() < order {
        return false;
    }
    let f = f.truncate(order);
    let lhs = g.truncate(order).shift_up().scale(&rat(2));
    let rhs = PowerSeries::one(order).add(&series_mul(&PowerSeries::from_i64s(&[-1, 3], order), &f));
    lhs == rhs
}

pub fn g_from_f_identity(order: usize) -> bool {
    g_from_f_identity_with(&f_series(order), &g_series(order), order)
}
