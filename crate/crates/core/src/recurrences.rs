//! Independent recurrence routes for the trinomial triangle `a_n^{(k)}` and
//! the decomposition triangle `b_n^{(k)}`.
//!
//! Every route seeds itself; nothing is shared between routes so that their
//! agreement means something. Divisions are exact integer divisions and a
//! nonzero remainder is reported as [`RecurrenceError::InexactDivision`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecurrenceError {
    #[error("inexact division in {route} at n={n}, k={k}: {numerator} / {divisor}")]
    InexactDivision {
        route: &'static str,
        n: usize,
        k: usize,
        numerator: BigInt,
        divisor: BigInt,
    },
    #[error("central differences are tabulated only for k <= 4, got k={0}")]
    UnsupportedK(usize),
    #[error("{route}: cannot step at n={n}, k={k}: {reason}")]
    InvalidRange {
        route: &'static str,
        n: usize,
        k: usize,
        reason: &'static str,
    },
    #[error("{route}: central sequence has {len} terms, need index {needed}")]
    ShortSequence {
        route: &'static str,
        len: usize,
        needed: usize,
    },
}

pub type Result<T> = std::result::Result<T, RecurrenceError>;

/// `numerator / divisor`, failing unless the remainder is zero.
pub(crate) fn exact_div(
    numerator: BigInt,
    divisor: &BigInt,
    route: &'static str,
    n: usize,
    k: usize,
) -> Result<BigInt> {
    let (q, r) = numerator.div_rem(divisor);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(RecurrenceError::InexactDivision {
            route,
            n,
            k,
            numerator,
            divisor: divisor.clone(),
        })
    }
}

fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum TriangleKind {
    /// Weight multiplicities `a_n^{(k)}`.
    A,
    /// Decomposition multiplicities `b_n^{(k)}`.
    B,
}

/// Rows `0..=N`; row `n` holds `k = 0..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triangle {
    pub kind: TriangleKind,
    pub rows: Vec<Vec<BigInt>>,
}

impl Triangle {
    pub fn new(kind: TriangleKind, rows: Vec<Vec<BigInt>>) -> Self {
        for (n, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n + 1, "row {n} must have {} entries", n + 1);
        }
        Triangle { kind, rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }

    /// Entry `(n, k)` with the finite-support convention: zero for `k > n`,
    /// and for kind A the reflection `a_n^{(-k)} = a_n^{(k)}`.
    pub fn get(&self, n: usize, k: i64) -> BigInt {
        let k = match (self.kind, k < 0) {
            (TriangleKind::A, true) => -k,
            (TriangleKind::B, true) => return BigInt::zero(),
            _ => k,
        } as usize;
        self.rows
            .get(n)
            .and_then(|row| row.get(k))
            .cloned()
            .unwrap_or_default()
    }

    /// Column `k = 0`.
    pub fn central(&self) -> CentralSequence {
        CentralSequence {
            kind: self.kind,
            values: self.rows.iter().map(|r| r[0].clone()).collect(),
        }
    }
}

/// `a_n = a_n^{(0)}` or `b_n = b_n^{(0)}` for `n = 0..`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralSequence {
    pub kind: TriangleKind,
    pub values: Vec<BigInt>,
}

impl CentralSequence {
    fn at(&self, i: usize, route: &'static str) -> Result<&BigInt> {
        self.values.get(i).ok_or(RecurrenceError::ShortSequence {
            route,
            len: self.values.len(),
            needed: i,
        })
    }
}

/// Rows `0..=max_n` of the a-triangle from
/// `a_{n+1}^{(k)} = a_n^{(k-1)} + a_n^{(k)} + a_n^{(k+1)}`.
pub fn a_triangle_pascal(max_n: usize) -> Triangle {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_n + 1);
    rows.push(vec![BigInt::one()]);
    for n in 0..max_n {
        let prev = &rows[n];
        let at = |k: i64| -> BigInt {
            prev.get(k.unsigned_abs() as usize).cloned().unwrap_or_default()
        };
        let next = (0..=n as i64 + 1)
            .map(|k| at(k - 1) + at(k) + at(k + 1))
            .collect();
        rows.push(next);
    }
    Triangle::new(TriangleKind::A, rows)
}

/// `a_0..=a_{max_n}` from `n a_n = (2n−1) a_{n−1} + 3(n−1) a_{n−2}`.
pub fn a_central_two_term(max_n: usize) -> Result<CentralSequence> {
    let mut values = vec![BigInt::one(), BigInt::one()];
    for n in 2..=max_n {
        let num = int(2 * n as i64 - 1) * &values[n - 1] + int(3 * (n as i64 - 1)) * &values[n - 2];
        values.push(exact_div(num, &int(n as i64), "a_central_two_term", n, 0)?);
    }
    values.truncate(max_n + 1);
    Ok(CentralSequence {
        kind: TriangleKind::A,
        values,
    })
}

/// `a_n^{(k)}` for `n = k..=max_n` from
/// `(n²−k²) a_n^{(k)} = n(2n−1) a_{n−1}^{(k)} + 3n(n−1) a_{n−2}^{(k)}`.
///
/// Seeds `a_k^{(k)} = 1` and `a_{k+1}^{(k)} = k+1`; the leading coefficient
/// vanishes at `n = k`, so stepping starts at `n = k + 2`.
pub fn a_column_two_term(k: usize, max_n: usize) -> Result<Vec<BigInt>> {
    if k > max_n {
        return Err(RecurrenceError::InvalidRange {
            route: "a_column_two_term",
            n: max_n,
            k,
            reason: "column starts at n = k",
        });
    }
    let mut col = vec![BigInt::one(), int(k as i64 + 1)];
    let ki = k as i64;
    for n in k + 2..=max_n {
        let ni = n as i64;
        let i = n - k;
        let num = int(ni * (2 * ni - 1)) * &col[i - 1] + int(3 * ni * (ni - 1)) * &col[i - 2];
        col.push(exact_div(num, &int(ni * ni - ki * ki), "a_column_two_term", n, k)?);
    }
    col.truncate(max_n - k + 1);
    Ok(col)
}

/// Full row `a_n^{(0..=n)}` from the two central values `a_n`, `a_{n+1}`.
///
/// `a_n^{(1)} = (a_{n+1} − a_n)/2`, then
/// `a_n^{(k+1)} = [(n−k+1) a_n^{(k−1)} − k a_n^{(k)}] / (n+k+1)` for `k ≥ 1`.
pub fn a_row_descending(n: usize, a_n: &BigInt, a_n1: &BigInt) -> Result<Vec<BigInt>> {
    const ROUTE: &str = "a_row_descending";
    let mut row = vec![a_n.clone()];
    if n == 0 {
        return Ok(row);
    }
    row.push(exact_div(a_n1 - a_n, &int(2), ROUTE, n, 1)?);
    let ni = n as i64;
    for k in 1..n {
        let ki = k as i64;
        let num = int(ni - ki + 1) * &row[k - 1] - int(ki) * &row[k];
        row.push(exact_div(num, &int(ni + ki + 1), ROUTE, n, k + 1)?);
    }
    Ok(row)
}

/// Checks the four two-term identities linking rows `n` and `n+1` at `k`.
pub fn check_theorem2_family(tri: &Triangle, n: usize, k: usize) -> bool {
    if tri.kind != TriangleKind::A || k == 0 || n + 1 > tri.max_n() {
        return false;
    }
    let (ni, ki) = (n as i64, k as i64);
    let a = |m: usize, j: i64| tri.get(m, j);
    let (lo, mid, hi) = (a(n, ki - 1), a(n, ki), a(n, ki + 1));
    let up = a(n + 1, ki);

    let e13 = int(ni + 1) * (&lo - &hi) == int(ki) * &up;
    let e14 = int(ni - ki + 1) * &lo == int(ki) * &mid + int(ni + ki + 1) * &hi;
    let e15 = int(ni - ki + 1) * &up == int(ni + 1) * (&mid + &hi * 2);
    let e16 = int(ni + ki + 1) * &up == int(ni + 1) * (&mid + &lo * 2);
    e13 && e14 && e15 && e16
}

/// `a_n^{(k)}` for `k ≤ 4` from central values `a_n..a_{n+k}`.
pub fn a_from_central_differences(n: usize, k: usize, central: &CentralSequence) -> Result<BigInt> {
    const ROUTE: &str = "a_from_central_differences";
    if k > 4 {
        return Err(RecurrenceError::UnsupportedK(k));
    }
    let c = |i: usize| central.at(n + i, ROUTE).cloned();
    let doubled = match k {
        0 => return c(0),
        1 => c(1)? - c(0)?,
        2 => c(2)? - c(1)? * 2 - c(0)?,
        3 => c(3)? - c(2)? * 3 + c(0)? * 2,
        _ => c(4)? - c(3)? * 4 + c(2)? * 2 + c(1)? * 4 - c(0)?,
    };
    exact_div(doubled, &int(2), ROUTE, n, k)
}

/// `b_n^{(k)} = a_n^{(k)} − a_n^{(k+1)}` with `a_n^{(n+1)} = 0`.
pub fn b_from_a(a_row: &[BigInt]) -> Vec<BigInt> {
    a_row
        .iter()
        .enumerate()
        .map(|(k, a)| match a_row.get(k + 1) {
            Some(next) => a - next,
            None => a.clone(),
        })
        .collect()
}

/// Rows `0..=max_n` of the b-triangle.
///
/// Rows 0 to 2 are seeded. Beyond that, `k ≥ 1` follows the three-term rule
/// `b_{n+1}^{(k)} = b_n^{(k-1)} + b_n^{(k)} + b_n^{(k+1)}` and the `k = 0`
/// column follows `b_{n+1}^{(0)} = b_n^{(1)}`.
pub fn b_triangle_pascal(max_n: usize) -> Triangle {
    let seeds: [&[i64]; 3] = [&[1], &[0, 1], &[1, 1, 1]];
    let mut rows: Vec<Vec<BigInt>> = seeds
        .iter()
        .take(max_n + 1)
        .map(|r| r.iter().map(|&v| int(v)).collect())
        .collect();
    for n in 2..max_n {
        let prev = &rows[n];
        let at = |k: usize| prev.get(k).cloned().unwrap_or_default();
        let mut next = Vec::with_capacity(n + 2);
        next.push(at(1));
        for k in 1..=n + 1 {
            next.push(at(k - 1) + at(k) + at(k + 1));
        }
        rows.push(next);
    }
    Triangle::new(TriangleKind::B, rows)
}

/// `b_n = (3 a_n − a_{n+1}) / 2`.
pub fn b_central_from_a(n: usize, central: &CentralSequence) -> Result<BigInt> {
    const ROUTE: &str = "b_central_from_a";
    let num = central.at(n, ROUTE)? * 3 - central.at(n + 1, ROUTE)?;
    exact_div(num, &int(2), ROUTE, n, 0)
}

/// `b_0..=b_{max_n}` from `(n+1) b_n = (n−1)(2 b_{n−1} + 3 b_{n−2})`.
pub fn b_central_two_term(max_n: usize) -> Result<CentralSequence> {
    let mut values = vec![BigInt::one(), BigInt::zero()];
    for n in 2..=max_n {
        let num = int(n as i64 - 1) * (&values[n - 1] * 2 + &values[n - 2] * 3);
        values.push(exact_div(num, &int(n as i64 + 1), "b_central_two_term", n, 0)?);
    }
    values.truncate(max_n + 1);
    Ok(CentralSequence {
        kind: TriangleKind::B,
        values,
    })
}

/// `b_n` for `k ≤ 4` from the central b-values; `k = 4` uses
/// `b_{n+4} − 3 b_{n+3} + 3 b_{n+1}`.
pub fn b_from_central_differences(n: usize, k: usize, central: &CentralSequence) -> Result<BigInt> {
    const ROUTE: &str = "b_from_central_differences";
    let c = |i: usize| central.at(n + i, ROUTE).cloned();
    Ok(match k {
        0 => c(0)?,
        1 => c(1)?,
        2 => c(2)? - c(1)? - c(0)?,
        3 => c(3)? - c(2)? * 2 - c(1)? + c(0)?,
        4 => c(4)? - c(3)? * 3 + c(1)? * 3,
        _ => return Err(RecurrenceError::UnsupportedK(k)),
    })
}

/// Polynomial coefficients `[A, B, C, D, E]` of the four-term column
/// recurrence at `(n, k)`.
pub fn four_term_coefficients(n: usize, k: usize) -> [BigInt; 5] {
    let n = int(n as i64);
    let k = int(k as i64);
    let one = BigInt::one();
    let nn = &n * &n;
    let a = (&nn - (&k + &one) * (&k + &one)) * (&nn - &k * &k);
    let b = int(-2) * &n * (&n * 2 - 1) * (&n + &k) * (&n - &k - 1);
    let c = int(-2) * &n * (&n - 1) * (&nn - &n * 2 + 3 - int(3) * &k * (&k + 1));
    let d = int(6) * &n * (&n - 1) * (&n - 2) * (&n * 2 - 3);
    let e = int(9) * &n * (&n - 1) * (&n - 2) * (&n - 3);
    [a, b, c, d, e]
}

/// One step of the four-term recurrence: `b_n^{(k)}` from
/// `prev = [b_{n−1}, b_{n−2}, b_{n−3}, b_{n−4}]` (all at label `k`).
pub fn b_four_term_step(n: usize, k: usize, prev: [&BigInt; 4]) -> Result<BigInt> {
    let [a, b, c, d, e] = four_term_coefficients(n, k);
    if a.is_zero() {
        return Err(RecurrenceError::InvalidRange {
            route: "b_column_four_term",
            n,
            k,
            reason: "leading coefficient vanishes",
        });
    }
    let rest = b * prev[0] + c * prev[1] + d * prev[2] + e * prev[3];
    exact_div(-rest, &a, "b_column_four_term", n, k)
}

/// `b_n^{(k)}` for `n = first_n..=max_n`, stepping the four-term recurrence
/// from four seeds `b_{first_n}..b_{first_n+3}`.
pub fn b_column_four_term(
    k: usize,
    first_n: usize,
    seeds: [BigInt; 4],
    max_n: usize,
) -> Result<Vec<BigInt>> {
    if first_n < k {
        return Err(RecurrenceError::InvalidRange {
            route: "b_column_four_term",
            n: first_n,
            k,
            reason: "seeds must start at n >= k",
        });
    }
    let mut col: Vec<BigInt> = seeds.into_iter().collect();
    for n in first_n + 4..=max_n {
        let i = n - first_n;
        let next = b_four_term_step(n, k, [&col[i - 1], &col[i - 2], &col[i - 3], &col[i - 4]])?;
        col.push(next);
    }
    col.truncate((max_n + 1).saturating_sub(first_n));
    Ok(col)
}

/// Full row `b_n^{(0..=n)}` from the top down using only `n`.
///
/// Starts from `b_n^{(n)} = 1`, `b_n^{(n+1)} = 0` and solves
/// `(k+1)(n+1−k) b_n^{(k−1)} = (k(k+1)−n−1) b_n^{(k)} + k(n+k+2) b_n^{(k+1)}`.
pub fn b_row_descending(n: usize) -> Result<Vec<BigInt>> {
    let mut row = vec![BigInt::zero(); n + 2];
    row[n] = BigInt::one();
    let ni = n as i64;
    for k in (1..=n).rev() {
        let ki = k as i64;
        let num = int(ki * (ki + 1) - ni - 1) * &row[k] + int(ki * (ni + ki + 2)) * &row[k + 1];
        row[k - 1] = exact_div(num, &int((ki + 1) * (ni + 1 - ki)), "b_row_descending", n, k - 1)?;
    }
    row.truncate(n + 1);
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| int(x)).collect()
    }

    fn a_central(n: usize) -> CentralSequence {
        a_central_two_term(n).unwrap()
    }

    #[test]
    fn pascal_a() {
        assert_eq!(a_triangle_pascal(3).row(3), &ints(&[7, 6, 3, 1])[..]);
        assert_eq!(a_triangle_pascal(0).rows, vec![ints(&[1])]);
        assert_eq!(a_triangle_pascal(11).get(11, 0), int(25653));
        let t = a_triangle_pascal(20);
        for n in 1..=20 {
            assert_eq!(t.get(n, n as i64 - 1), int(n as i64));
            assert_eq!(t.get(n, n as i64), int(1));
            assert_eq!(t.get(n, -1), t.get(n, 1));
        }
    }

    #[test]
    fn central_a() {
        assert_eq!(a_central(10).values.last(), Some(&int(8953)));
        assert_eq!(a_central(1).values, ints(&[1, 1]));
        assert_eq!(a_central(0).values, ints(&[1]));
        assert_eq!(a_central(12).values[12], int(73789));
        assert_eq!(a_central(4).values, ints(&[1, 1, 3, 7, 19]));
    }

    #[test]
    fn column_a() {
        assert_eq!(a_column_two_term(2, 6).unwrap()[6 - 2], int(90));
        assert_eq!(a_column_two_term(5, 5).unwrap(), ints(&[1]));
        assert_eq!(a_column_two_term(1, 11).unwrap()[10], int(24068));
        assert!(a_column_two_term(4, 3).is_err());
    }

    #[test]
    fn row_descending_a() {
        assert_eq!(
            a_row_descending(5, &int(51), &int(141)).unwrap(),
            ints(&[51, 45, 30, 15, 5, 1])
        );
        assert_eq!(a_row_descending(0, &int(1), &int(1)).unwrap(), ints(&[1]));
        let c = a_central(12);
        assert_eq!(
            a_row_descending(11, &c.values[11], &c.values[12]).unwrap(),
            ints(&[25653, 24068, 19855, 14355, 9042, 4917, 2277, 880, 275, 66, 11, 1])
        );
    }

    #[test]
    fn row_descending_a_flags_bad_seed() {
        let err = a_row_descending(5, &int(51), &int(140)).unwrap_err();
        assert!(matches!(err, RecurrenceError::InexactDivision { n: 5, k: 1, .. }));
    }

    #[test]
    fn two_term_identity_family() {
        let t = a_triangle_pascal(12);
        assert!(check_theorem2_family(&t, 4, 1));
        assert!(check_theorem2_family(&t, 1, 1));
        for n in 1..12 {
            for k in 1..=n {
                assert!(check_theorem2_family(&t, n, k), "n={n} k={k}");
            }
        }
        let mut bad = t.clone();
        bad.rows[5][2] += 1;
        assert!(!check_theorem2_family(&bad, 4, 2));
        assert!(!check_theorem2_family(&bad, 5, 1));
    }

    #[test]
    fn central_differences_a() {
        let c = a_central(12);
        assert_eq!(a_from_central_differences(4, 2, &c).unwrap(), int(10));
        assert_eq!(a_from_central_differences(3, 3, &c).unwrap(), int(1));
        assert_eq!(a_from_central_differences(0, 1, &c).unwrap(), int(0));
        assert_eq!(a_from_central_differences(2, 4, &c).unwrap(), int(0));
        assert_eq!(
            a_from_central_differences(0, 5, &c),
            Err(RecurrenceError::UnsupportedK(5))
        );
        assert!(matches!(
            a_from_central_differences(10, 4, &c),
            Err(RecurrenceError::ShortSequence { needed: 14, .. })
        ));
    }

    #[test]
    fn b_from_a_rows() {
        assert_eq!(b_from_a(&ints(&[19, 16, 10, 4, 1])), ints(&[3, 6, 6, 3, 1]));
        assert_eq!(b_from_a(&ints(&[1, 1])), ints(&[0, 1]));
        let t = a_triangle_pascal(11);
        assert_eq!(
            b_from_a(t.row(11)),
            ints(&[1585, 4213, 5500, 5313, 4125, 2640, 1397, 605, 209, 55, 10, 1])
        );
    }

    #[test]
    fn pascal_b() {
        assert_eq!(
            b_triangle_pascal(7).row(7),
            &ints(&[36, 91, 105, 84, 49, 21, 6, 1])[..]
        );
        assert_eq!(
            b_triangle_pascal(2).rows,
            vec![ints(&[1]), ints(&[0, 1]), ints(&[1, 1, 1])]
        );
        assert_eq!(b_triangle_pascal(0).rows, vec![ints(&[1])]);
        assert_eq!(b_triangle_pascal(11).get(11, 0), int(1585));
    }

    #[test]
    fn central_b() {
        let a = a_central(12);
        assert_eq!(b_central_from_a(6, &a).unwrap(), int(15));
        assert_eq!(b_central_from_a(1, &a).unwrap(), int(0));
        assert_eq!(b_central_from_a(11, &a).unwrap(), int(1585));
        let b = b_central_two_term(12).unwrap();
        assert_eq!(b.values[10], int(603));
        assert_eq!(b.values[2], int(1));
        assert_eq!(b.values[12], int(4213));
        assert_eq!(b_central_two_term(0).unwrap().values, ints(&[1]));
    }

    #[test]
    fn four_term_column() {
        let col = b_column_four_term(0, 2, [int(1), int(1), int(3), int(6)], 6).unwrap();
        assert_eq!(col.last(), Some(&int(15)));

        let b = b_triangle_pascal(12);
        let seeds = |k: usize| std::array::from_fn(|i| b.get(k + i, k as i64));
        let col3 = b_column_four_term(3, 3, seeds(3), 7).unwrap();
        assert_eq!(col3[7 - 3], int(84));
        let col0 = b_column_four_term(0, 0, seeds(0), 12).unwrap();
        assert_eq!(col0[12], int(4213));
        assert_eq!(col0, b_central_two_term(12).unwrap().values);
    }

    #[test]
    fn four_term_rejects_vanishing_leading_coefficient() {
        let z = BigInt::zero();
        for n in [3, 4] {
            assert!(matches!(
                b_four_term_step(n, 3, [&z, &z, &z, &z]),
                Err(RecurrenceError::InvalidRange { .. })
            ));
        }
        assert!(b_column_four_term(5, 4, Default::default(), 10).is_err());
    }

    #[test]
    fn row_descending_b() {
        assert_eq!(b_row_descending(4).unwrap(), ints(&[3, 6, 6, 3, 1]));
        assert_eq!(b_row_descending(0).unwrap(), ints(&[1]));
        assert_eq!(
            b_row_descending(11).unwrap(),
            ints(&[1585, 4213, 5500, 5313, 4125, 2640, 1397, 605, 209, 55, 10, 1])
        );
    }

    #[test]
    fn central_differences_b() {
        let b = b_central_two_term(20).unwrap();
        let t = b_triangle_pascal(16);
        for n in 0..=16 {
            for k in 0..=4 {
                assert_eq!(
                    b_from_central_differences(n, k, &b).unwrap(),
                    t.get(n, k as i64),
                    "n={n} k={k}"
                );
            }
        }
    }
}
