//! Symmetric Laurent polynomials in `x = e^{iθ}` and the A1 character ring.
//!
//! A symmetric Laurent polynomial `c_0 + Σ_{m≥1} c_m (x^m + x^{-m})` is a
//! real trigonometric polynomial `c_0 + 2 Σ c_m cos(mθ)`. The adjoint
//! character is `X = 1 + x + x^{-1}`, so `Xⁿ` holds the trinomial
//! coefficients `a_n^{(k)}` at index `k`. Characters `χ_k = Σ_{|m|≤k} x^m`
//! form a basis; [`decompose`] expresses any symmetric polynomial in it.
//!
//! Only indices `m ≥ 0` are stored, so symmetry holds by construction.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `c_0 + Σ_{m=1..d} c_m (x^m + x^{-m})` with integer coefficients.
///
/// The coefficient vector is always trimmed so that `c_d ≠ 0`; the zero
/// polynomial is stored as `[0]` with degree 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymmetricLaurentPoly {
    coeffs: Vec<BigInt>,
}

impl SymmetricLaurentPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(BigInt::zero());
        }
        SymmetricLaurentPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::new(vec![])
    }

    pub fn one() -> Self {
        Self::new(vec![BigInt::one()])
    }

    /// The adjoint character `X = 1 + x + x^{-1}`.
    pub fn adjoint() -> Self {
        Self::from_i64s(&[1, 1])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    /// Coefficients `c_0..c_d`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^m` for any signed `m`.
    pub fn coeff(&self, m: i64) -> BigInt {
        self.coeffs
            .get(m.unsigned_abs() as usize)
            .cloned()
            .unwrap_or_default()
    }

    fn coeff_ref(&self, m: i64) -> Option<&BigInt> {
        self.coeffs.get(m.unsigned_abs() as usize)
    }

    /// Value at `x = 1` (θ = 0): `c_0 + 2 Σ_{m≥1} c_m`.
    pub fn eval_at_one(&self) -> BigInt {
        let tail: BigInt = self.coeffs[1..].iter().sum();
        &self.coeffs[0] + tail * 2
    }

    /// Full coefficient list for exponents `-d..=d`.
    pub fn to_full(&self) -> Vec<BigInt> {
        let d = self.degree();
        let mut full = Vec::with_capacity(2 * d + 1);
        full.extend(self.coeffs.iter().rev().cloned());
        full.extend(self.coeffs[1..].iter().cloned());
        full
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|m| {
                let a = self.coeffs.get(m).cloned().unwrap_or_default();
                match other.coeffs.get(m) {
                    Some(b) => a + b,
                    None => a,
                }
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn scale(&self, factor: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * factor).collect())
    }
}

impl fmt::Display for SymmetricLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl Mul for &SymmetricLaurentPoly {
    type Output = SymmetricLaurentPoly;

    fn mul(self, rhs: &SymmetricLaurentPoly) -> SymmetricLaurentPoly {
        laurent_mul(self, rhs)
    }
}

/// Multiplicities `b_0..b_n` of the characters `χ_k` in a decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplicityVector {
    pub entries: Vec<BigInt>,
}

impl MultiplicityVector {
    pub fn is_non_negative(&self) -> bool {
        self.entries.iter().all(|b| b >= &BigInt::zero())
    }

    /// Total dimension `Σ b_k (2k+1)`.
    pub fn dimension(&self) -> BigInt {
        self.entries
            .iter()
            .enumerate()
            .map(|(k, b)| b * (2 * k + 1))
            .sum()
    }
}

/// Product of two symmetric Laurent polynomials.
///
/// The result's `c_m` is the full signed-index convolution
/// `Σ_{i+j=m} p_i q_j`; only `m ≥ 0` is computed.
pub fn laurent_mul(p: &SymmetricLaurentPoly, q: &SymmetricLaurentPoly) -> SymmetricLaurentPoly {
    let dp = p.degree() as i64;
    let dq = q.degree() as i64;
    let coeffs = (0..=dp + dq)
        .map(|m| {
            let lo = (m - dq).max(-dp);
            let hi = (m + dq).min(dp);
            let mut acc = BigInt::zero();
            for i in lo..=hi {
                if let (Some(a), Some(b)) = (p.coeff_ref(i), q.coeff_ref(m - i)) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
            }
            acc
        })
        .collect();
    SymmetricLaurentPoly::new(coeffs)
}

/// `Xⁿ` by `n` successive multiplications by `X`.
pub fn trinomial_power(n: usize) -> SymmetricLaurentPoly {
    let x = SymmetricLaurentPoly::adjoint();
    (0..n).fold(SymmetricLaurentPoly::one(), |acc, _| laurent_mul(&acc, &x))
}

/// Every power `X⁰..=Xⁿ`; the iterated product yields them all at once.
pub fn trinomial_powers(n: usize) -> Vec<SymmetricLaurentPoly> {
    let x = SymmetricLaurentPoly::adjoint();
    let mut out = Vec::with_capacity(n + 1);
    out.push(SymmetricLaurentPoly::one());
    for i in 0..n {
        let next = laurent_mul(&out[i], &x);
        out.push(next);
    }
    out
}

/// `Xⁿ` by binary powering.
pub fn trinomial_power_binary(n: usize) -> SymmetricLaurentPoly {
    let mut result = SymmetricLaurentPoly::one();
    let mut base = SymmetricLaurentPoly::adjoint();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            result = laurent_mul(&result, &base);
        }
        e >>= 1;
        if e > 0 {
            base = laurent_mul(&base, &base);
        }
    }
    result
}

/// Ordinary coefficients of `(1 + x + x²)ⁿ` for `x^0..x^{2n}`, expanded with
/// no use of symmetry.
pub fn trinomial_expansion_dense(n: usize) -> Vec<BigInt> {
    trinomial_expansions_dense()
        .nth(n)
        .expect("iterator is unbounded")
}

/// `(1 + x + x²)⁰, (1 + x + x²)¹, …` as plain dense polynomials.
pub fn trinomial_expansions_dense() -> impl Iterator<Item = Vec<BigInt>> {
    std::iter::successors(Some(vec![BigInt::one()]), |p| {
        let mut q = vec![BigInt::zero(); p.len() + 2];
        for (i, c) in p.iter().enumerate() {
            q[i] += c;
            q[i + 1] += c;
            q[i + 2] += c;
        }
        Some(q)
    })
}

/// The irreducible character `χ_k = Σ_{m=-k..k} x^m`.
pub fn character(k: usize) -> SymmetricLaurentPoly {
    SymmetricLaurentPoly::new(vec![BigInt::one(); k + 1])
}

/// Expresses `p` as `Σ b_k χ_k` by peeling off the leading character.
///
/// Subtracting `b_d χ_d` lowers every `c_m` with `m ≤ d` by `b_d`, so the
/// subtraction is carried as a running offset rather than applied eagerly.
pub fn decompose(p: &SymmetricLaurentPoly) -> MultiplicityVector {
    let c = p.coeffs();
    let mut entries = vec![BigInt::zero(); c.len()];
    let mut peeled = BigInt::zero();
    for d in (0..c.len()).rev() {
        let b = &c[d] - &peeled;
        peeled += &b;
        entries[d] = b;
    }
    for (k, b) in entries.iter().enumerate() {
        let next = c.get(k + 1).cloned().unwrap_or_default();
        assert_eq!(*b, &c[k] - next, "peeling disagrees with c_k - c_(k+1) at k={k}");
    }
    MultiplicityVector { entries }
}

/// `Σ b_k χ_k`.
pub fn synthesize(m: &MultiplicityVector) -> SymmetricLaurentPoly {
    let mut coeffs = vec![BigInt::zero(); m.entries.len()];
    let mut acc = BigInt::zero();
    for k in (0..m.entries.len()).rev() {
        acc += &m.entries[k];
        coeffs[k] = acc.clone();
    }
    SymmetricLaurentPoly::new(coeffs)
}

/// Coefficient of `x^m` in `p · q`, summing in machine integers while the
/// inputs fit and falling back to `BigInt` otherwise.
fn product_coeff(p: &SymmetricLaurentPoly, q: &SymmetricLaurentPoly, m: i64) -> BigInt {
    let dp = p.degree() as i64;
    let dq = q.degree() as i64;
    let range = (m - dq).max(-dp)..=(m + dq).min(dp);
    let small = |v: &SymmetricLaurentPoly| v.coeffs.iter().map(i64::try_from).collect::<Result<Vec<_>, _>>();
    if let (Ok(ps), Ok(qs)) = (small(p), small(q)) {
        let fast = range.clone().try_fold(0i128, |acc, i| {
            let a = ps[i.unsigned_abs() as usize] as i128;
            let b = qs[(m - i).unsigned_abs() as usize] as i128;
            acc.checked_add(a * b)
        });
        if let Some(v) = fast {
            return BigInt::from(v);
        }
    }
    range
        .filter_map(|i| Some(p.coeff_ref(i)? * q.coeff_ref(m - i)?))
        .sum()
}

/// Constant term of `p · q · w` where `w` is a rational symmetric weight
/// given as `(index, coefficient)` pairs over signed indices.
fn weighted_constant_term(
    p: &SymmetricLaurentPoly,
    q: &SymmetricLaurentPoly,
    weight: &[(i64, BigRational)],
) -> BigRational {
    // p·q is symmetric, so x^j and x^{-j} of the weight see the same coefficient.
    let mut by_index: Vec<(u64, BigRational)> = Vec::new();
    for (j, w) in weight {
        match by_index.iter_mut().find(|(m, _)| *m == j.unsigned_abs()) {
            Some((_, acc)) => *acc += w,
            None => by_index.push((j.unsigned_abs(), w.clone())),
        }
    }
    by_index
        .into_iter()
        .filter(|(_, w)| !w.is_zero())
        .map(|(m, w)| w * BigRational::from_integer(product_coeff(p, q, m as i64)))
        .fold(BigRational::zero(), |acc, x| acc + x)
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// `(1/π) ∫₀^π p q (1 − cos θ) dθ`, evaluated as the constant term of
/// `p · q · (1 − (x + x^{-1})/2)`.
pub fn inner_product(p: &SymmetricLaurentPoly, q: &SymmetricLaurentPoly) -> BigRational {
    let weight = [
        (0, BigRational::one()),
        (1, -half()),
        (-1, -half()),
    ];
    weighted_constant_term(p, q, &weight)
}

/// `(1/π) ∫₀^π p (cos kθ − cos (k+1)θ) dθ`, the multiplicity of `χ_k` in `p`.
pub fn multiplicity_functional(p: &SymmetricLaurentPoly, k: usize) -> BigRational {
    let k = k as i64;
    let weight = [
        (k, half()),
        (-k, half()),
        (k + 1, -half()),
        (-k - 1, -half()),
    ];
    weighted_constant_term(p, &SymmetricLaurentPoly::one(), &weight)
}

/// `(1/π) ∫₀^π p dθ`: the constant term.
pub fn mean_value(p: &SymmetricLaurentPoly) -> BigInt {
    p.coeff(0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn naive_full_mul(p: &[BigInt], q: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); p.len() + q.len() - 1];
        for (i, a) in p.iter().enumerate() {
            for (j, b) in q.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        out
    }

    #[test]
    fn adjoint_squared() {
        let x = SymmetricLaurentPoly::adjoint();
        assert_eq!(laurent_mul(&x, &x).coeffs(), &ints(&[3, 2, 1])[..]);
    }

    #[test]
    fn identity_and_zero() {
        let p = SymmetricLaurentPoly::from_i64s(&[4, -2, 7]);
        assert_eq!(&p * &SymmetricLaurentPoly::one(), p);
        assert!((&p * &SymmetricLaurentPoly::zero()).is_zero());
        assert_eq!(SymmetricLaurentPoly::from_i64s(&[1, 0, 0]).degree(), 0);
    }

    #[test]
    fn cube_times_square_is_row_five() {
        let p = &trinomial_power(3) * &trinomial_power(2);
        assert_eq!(p.coeffs(), &ints(&[51, 45, 30, 15, 5, 1])[..]);
    }

    #[test]
    fn powers() {
        assert_eq!(trinomial_power(0), SymmetricLaurentPoly::one());
        assert_eq!(trinomial_power(4).coeffs(), &ints(&[19, 16, 10, 4, 1])[..]);
        assert_eq!(trinomial_power(11).coeffs()[0], BigInt::from(25653));
        assert_eq!(trinomial_power(11).degree(), 11);
    }

    #[test]
    fn binary_powering_matches_iterated() {
        let iterated = trinomial_powers(64);
        for (n, p) in iterated.iter().enumerate() {
            assert_eq!(&trinomial_power_binary(n), p, "n={n}");
        }
    }

    #[test]
    fn power_sum_is_three_to_the_n() {
        for (n, p) in trinomial_powers(60).iter().enumerate() {
            assert_eq!(p.eval_at_one(), BigInt::from(3).pow(n as u32));
        }
    }

    #[test]
    fn dense_expansion_is_palindromic_and_matches() {
        for n in 0..40 {
            let dense = trinomial_expansion_dense(n);
            let rev: Vec<_> = dense.iter().rev().cloned().collect();
            assert_eq!(dense, rev);
            assert_eq!(dense, trinomial_power(n).to_full());
        }
    }

    #[test]
    fn characters() {
        assert_eq!(character(0), SymmetricLaurentPoly::one());
        assert_eq!(character(1), SymmetricLaurentPoly::adjoint());
        for k in 0..20 {
            assert_eq!(character(k).eval_at_one(), BigInt::from(2 * k + 1));
        }
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(
            decompose(&trinomial_power(6)).entries,
            ints(&[15, 36, 40, 29, 15, 5, 1])
        );
        for k in 0..8 {
            let mut e = vec![BigInt::zero(); k + 1];
            e[k] = BigInt::one();
            assert_eq!(decompose(&character(k)).entries, e);
        }
        assert_eq!(decompose(&trinomial_power(11)).entries[0], BigInt::from(1585));
    }

    #[test]
    fn decompose_allows_negative_multiplicities() {
        let p = SymmetricLaurentPoly::from_i64s(&[0, 1]);
        assert_eq!(decompose(&p).entries, ints(&[-1, 1]));
    }

    #[test]
    fn inner_products() {
        assert_eq!(inner_product(&character(2), &character(2)), BigRational::one());
        assert_eq!(inner_product(&character(1), &character(3)), BigRational::zero());
        let x4 = trinomial_power(4);
        assert_eq!(multiplicity_functional(&x4, 2), BigRational::from_integer(6.into()));
        assert_eq!(inner_product(&x4, &character(2)), BigRational::from_integer(6.into()));
        assert_eq!(mean_value(&x4), BigInt::from(19));
    }

    #[test]
    fn inner_product_matches_full_product_route() {
        // constant term of (p·q)·(1 - (x + 1/x)/2) through an explicit product
        for (k, l) in [(0, 0), (3, 5), (4, 4), (7, 2)] {
            let pq = laurent_mul(&trinomial_power(k), &character(l));
            let expected = BigRational::from_integer(pq.coeff(0))
                - BigRational::from_integer(pq.coeff(1) + pq.coeff(-1)) * half();
            assert_eq!(inner_product(&trinomial_power(k), &character(l)), expected);
        }
    }

    #[test]
    fn orthonormal_characters() {
        for k in 0..25 {
            for l in 0..25 {
                let expected = if k == l { BigRational::one() } else { BigRational::zero() };
                assert_eq!(inner_product(&character(k), &character(l)), expected);
            }
        }
    }

    fn arb_poly() -> impl Strategy<Value = SymmetricLaurentPoly> {
        prop::collection::vec(-1000i64..1000, 1..12).prop_map(|v| SymmetricLaurentPoly::from_i64s(&v))
    }

    proptest! {
        #[test]
        fn mul_matches_full_convolution(p in arb_poly(), q in arb_poly()) {
            let full = naive_full_mul(&p.to_full(), &q.to_full());
            let prod = laurent_mul(&p, &q);
            // full has length 2(dp+dq)+1 and is centred at index dp+dq
            let centre = p.degree() + q.degree();
            for (m, c) in prod.coeffs().iter().enumerate() {
                prop_assert_eq!(c, &full[centre + m]);
            }
            prop_assert_eq!(laurent_mul(&q, &p), prod);
        }

        #[test]
        fn decompose_round_trip(p in arb_poly()) {
            prop_assert_eq!(synthesize(&decompose(&p)), p);
        }

        #[test]
        fn eval_at_one_is_multiplicative(p in arb_poly(), q in arb_poly()) {
            prop_assert_eq!(laurent_mul(&p, &q).eval_at_one(), p.eval_at_one() * q.eval_at_one());
        }
    }
}
