//! The polynomials `Q_k(n)` with `a_n^{(n−k)} = Q_k(n) / k!`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QPolyError {
    #[error("Q_{k}({n}) = {value} is not divisible by {k}!")]
    NonIntegerResult { n: usize, k: usize, value: BigRational },
    #[error("edge entry needs k <= n, got n={n}, k={k}")]
    OutOfRange { n: usize, k: usize },
    #[error("no printed factorization for k={0}")]
    NoPrintedForm(usize),
}

/// Dense polynomial in one variable, constant term first, degree tight.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPolynomial {
    coeffs: Vec<BigRational>,
}

impl RationalPolynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RationalPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn constant(c: i64) -> Self {
        Self::from_i64s(&[c])
    }

    /// `a·n + b`.
    pub fn linear(a: i64, b: i64) -> Self {
        Self::from_i64s(&[b, a])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(BigRational::is_integer)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let zero = BigRational::zero();
        Self::new(
            (0..len)
                .map(|i| self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero))
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(vec![]);
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, n: i64) -> BigRational {
        self.eval(&BigRational::from_integer(n.into()))
    }
}

impl fmt::Display for RationalPolynomial {
    /// Expanded form in the variable `n`, highest power first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (p, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let show_coeff = p == 0 || !mag.is_one();
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match p {
                0 => {}
                1 => write!(f, "n")?,
                _ => write!(f, "n^{p}")?,
            }
        }
        Ok(())
    }
}

/// `Q_0..=Q_K` from `Q_{k+1} = (n−k) Q_k + k(2n−k+1) Q_{k−1}`, `Q_0 = 1`, `Q_1 = n`.
pub fn q_family(max_k: usize) -> Vec<RationalPolynomial> {
    let mut family = vec![RationalPolynomial::constant(1), RationalPolynomial::linear(1, 0)];
    for k in 1..max_k {
        let ki = k as i64;
        let next = RationalPolynomial::linear(1, -ki)
            .mul(&family[k])
            .add(&RationalPolynomial::linear(2 * ki, ki * (1 - ki)).mul(&family[k - 1]));
        family.push(next);
    }
    family.truncate(max_k + 1);
    family
}

fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * i)
}

/// `Q_k(n) / k!` with `q` the precomputed `Q_k`.
pub fn q_edge_entry_with(q: &RationalPolynomial, n: usize, k: usize) -> Result<BigInt, QPolyError> {
    if k > n {
        return Err(QPolyError::OutOfRange { n, k });
    }
    let value = q.eval_int(n as i64) / BigRational::from_integer(factorial(k));
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(QPolyError::NonIntegerResult { n, k, value })
    }
}

/// The triangle entry `a_n^{(n−k)}` as `Q_k(n) / k!`.
pub fn q_edge_entry(n: usize, k: usize) -> Result<BigInt, QPolyError> {
    let family = q_family(k);
    q_edge_entry_with(&family[k], n, k)
}

/// Factored forms of `Q_0..Q_10`, each factor an integer coefficient list
/// with the constant term first.
pub const PRINTED_FACTORIZATIONS: [&[&[i64]]; 11] = [
    &[],
    &[&[0, 1]],
    &[&[0, 1], &[1, 1]],
    &[&[-1, 1], &[0, 1], &[4, 1]],
    &[&[-1, 1], &[0, 1], &[-6, 7, 1]],
    &[&[-2, 1], &[-1, 1], &[0, 1], &[1, 1], &[12, 1]],
    &[&[-2, 1], &[-1, 1], &[0, 1], &[-120, 17, 18, 1]],
    &[&[-3, 1], &[-2, 1], &[-1, 1], &[0, 1], &[-120, 116, 27, 1]],
    &[
        &[-3, 1],
        &[-2, 1],
        &[-1, 1],
        &[0, 1],
        &[1, 1],
        &[10, 1],
        &[-84, 23, 1],
    ],
    &[
        &[0, 1],
        &[-1, 1],
        &[-2, 1],
        &[-3, 1],
        &[-4, 1],
        &[-3360, 86, 467, 46, 1],
    ],
    &[
        &[0, 1],
        &[-1, 1],
        &[-2, 1],
        &[-3, 1],
        &[-4, 1],
        &[15120, -16626, -895, 665, 55, 1],
    ],
];

/// Product of the printed factors of `Q_k`.
pub fn expand_printed(k: usize) -> Result<RationalPolynomial, QPolyError> {
    let factors = PRINTED_FACTORIZATIONS
        .get(k)
        .ok_or(QPolyError::NoPrintedForm(k))?;
    Ok(factors
        .iter()
        .fold(RationalPolynomial::constant(1), |acc, f| {
            acc.mul(&RationalPolynomial::from_i64s(f))
        }))
}

/// Whether the printed factored form of `Q_k` expands to the recurrence's `Q_k`.
pub fn q_factorization_check(k: usize) -> bool {
    match expand_printed(k) {
        Ok(printed) => q_family(k)[k] == printed,
        Err(_) => false,
    }
}
