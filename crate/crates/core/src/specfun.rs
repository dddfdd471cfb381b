//! Generalized Laguerre polynomials and the confluent hypergeometric series.
//!
//! [`laguerre`] is the production path (upward three-term recurrence).
//! [`laguerre_rodrigues_oracle`] expands the Rodrigues formula with exact
//! integer coefficients and exists to check the recurrence independently.

use serde::{Deserialize, Serialize};

use crate::error::{ensure_finite, Error, Result};

/// Largest degree accepted by [`laguerre_rodrigues_oracle`].
pub const RODRIGUES_MAX_DEGREE: usize = 12;

/// Degree `m` and superscript `beta` of `L_m^(beta)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PolyIndex {
    pub m: usize,
    pub beta: f64,
}

impl PolyIndex {
    pub fn new(m: usize, beta: f64) -> Result<Self> {
        let idx = Self { m, beta };
        idx.validate()?;
        Ok(idx)
    }

    pub fn validate(&self) -> Result<()> {
        if self.beta.is_nan() || self.beta <= -1.0 || self.beta.is_infinite() {
            return Err(Error::OutOfDomain {
                name: "beta",
                value: self.beta,
                domain: "(-1, inf)".into(),
            });
        }
        Ok(())
    }
}

/// Parameters of a truncated Kummer `M(a, b, x)` evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KummerParams {
    pub a: f64,
    pub b: f64,
    pub x: f64,
    pub max_terms: usize,
    pub series_tol: f64,
}

impl KummerParams {
    /// Parameters with a 500-term budget and machine-precision stopping rule.
    pub fn new(a: f64, b: f64, x: f64) -> Self {
        Self {
            a,
            b,
            x,
            max_terms: 500,
            series_tol: f64::EPSILON,
        }
    }

    pub fn validate(&self) -> Result<()> {
        ensure_finite("a", self.a)?;
        ensure_finite("b", self.b)?;
        ensure_finite("x", self.x)?;
        if self.b <= 0.0 && self.b.fract() == 0.0 {
            return Err(Error::OutOfDomain {
                name: "b",
                value: self.b,
                domain: "reals excluding 0, -1, -2, ...".into(),
            });
        }
        if self.max_terms == 0 {
            return Err(Error::InvalidArgument("max_terms must be >= 1".into()));
        }
        if self.series_tol.is_nan() || self.series_tol <= 0.0 {
            return Err(Error::OutOfDomain {
                name: "series_tol",
                value: self.series_tol,
                domain: "(0, inf)".into(),
            });
        }
        Ok(())
    }
}

/// `L_m^(beta)(x)` by upward recurrence
/// `(k+1) L_{k+1} = (2k+1+beta-x) L_k - (k+beta) L_{k-1}`.
pub fn laguerre(idx: PolyIndex, x: f64) -> Result<f64> {
    idx.validate()?;
    ensure_finite("x", x)?;
    Ok(laguerre_unchecked(idx.m, idx.beta, x))
}

#[inline]
pub(crate) fn laguerre_unchecked(m: usize, beta: f64, x: f64) -> f64 {
    let mut prev = 1.0;
    if m == 0 {
        return prev;
    }
    let mut cur = 1.0 + beta - x;
    for k in 1..m {
        let k = k as f64;
        let next = ((2.0 * k + 1.0 + beta - x) * cur - (k + beta) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `d/dx L_m^(beta)(x) = -L_{m-1}^(beta+1)(x)`, zero for `m = 0`.
pub fn laguerre_derivative(idx: PolyIndex, x: f64) -> Result<f64> {
    idx.validate()?;
    ensure_finite("x", x)?;
    Ok(laguerre_derivative_unchecked(idx.m, idx.beta, x))
}

#[inline]
pub(crate) fn laguerre_derivative_unchecked(m: usize, beta: f64, x: f64) -> f64 {
    if m == 0 {
        0.0
    } else {
        -laguerre_unchecked(m - 1, beta + 1.0, x)
    }
}

/// Evaluates `L_m^(beta)(x) = x^-beta e^x / m! * d^m/dx^m (e^-x x^(m+beta))`
/// for integer `beta >= 0`.
///
/// The Leibniz rule gives `d^m/dx^m (e^-x x^(m+beta)) = e^-x * P(x)` where
/// `P` has integer coefficients and a factor `x^beta`; the exponentials cancel
/// and the factor is divided out symbolically before evaluation.
pub fn laguerre_rodrigues_oracle(idx: PolyIndex, x: f64) -> Result<f64> {
    idx.validate()?;
    ensure_finite("x", x)?;
    if idx.beta < 0.0 || idx.beta.fract() != 0.0 {
        return Err(Error::OutOfDomain {
            name: "beta",
            value: idx.beta,
            domain: "nonnegative integers".into(),
        });
    }
    if idx.m > RODRIGUES_MAX_DEGREE {
        return Err(Error::DegreeTooLarge {
            degree: idx.m,
            max: RODRIGUES_MAX_DEGREE,
        });
    }
    let m = idx.m;
    let beta = idx.beta as usize;
    let power = m + beta;

    // P(x) = sum_k C(m,k) (-1)^(m-k) [power!/(power-k)!] x^(power-k)
    let mut coeffs = vec![0_i128; power + 1];
    for k in 0..=m {
        let sign = if (m - k).is_multiple_of(2) { 1 } else { -1 };
        let falling: i128 = ((power - k + 1)..=power).map(|j| j as i128).product();
        coeffs[power - k] += sign * binomial(m, k) * falling;
    }
    debug_assert!(coeffs[..beta].iter().all(|&c| c == 0));

    let m_factorial: i128 = (1..=m as i128).product();
    let value = coeffs[beta..]
        .iter()
        .rev()
        .fold(0.0, |acc, &c| acc * x + c as f64);
    Ok(value / m_factorial as f64)
}

pub(crate) fn binomial(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1_i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// Truncated series `M(a, b, x) = sum_k (a)_k / (b)_k x^k / k!`.
///
/// Stops when a Pochhammer factor of `a` vanishes (nonpositive integer `a`)
/// or when a term drops below `series_tol * |sum|`.
pub fn kummer_m(params: KummerParams) -> Result<f64> {
    params.validate()?;
    let KummerParams {
        a,
        b,
        x,
        max_terms,
        series_tol,
    } = params;

    let mut term = 1.0;
    let mut sum = 1.0;
    for k in 0..max_terms {
        let k = k as f64;
        if a + k == 0.0 {
            return Ok(sum);
        }
        term *= (a + k) / (b + k) * x / (k + 1.0);
        sum += term;
        if term.abs() <= series_tol * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::SeriesNotConverged {
        terms: max_terms,
        last_term: term,
        sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn idx(m: usize, beta: f64) -> PolyIndex {
        PolyIndex::new(m, beta).unwrap()
    }

    #[test]
    fn laguerre_examples() {
        assert_eq!(laguerre(idx(0, 1.0), 3.7).unwrap(), 1.0);
        assert_abs_diff_eq!(laguerre(idx(1, 1.0), 2.0).unwrap(), 0.0);
        assert_abs_diff_eq!(laguerre(idx(2, 1.0), 0.0).unwrap(), 3.0, epsilon = 1e-15);
    }

    #[test]
    fn rodrigues_examples() {
        assert_eq!(laguerre_rodrigues_oracle(idx(0, 1.0), 5.0).unwrap(), 1.0);
        assert_eq!(laguerre_rodrigues_oracle(idx(1, 1.0), 0.0).unwrap(), 2.0);
        let oracle = laguerre_rodrigues_oracle(idx(3, 1.0), 1.0).unwrap();
        let rec = laguerre(idx(3, 1.0), 1.0).unwrap();
        assert!((oracle - rec).abs() <= 1e-12 * rec.abs());
    }

    #[test]
    fn rodrigues_rejects_large_degree_and_fractional_beta() {
        assert_eq!(
            laguerre_rodrigues_oracle(idx(13, 1.0), 1.0),
            Err(Error::DegreeTooLarge {
                degree: 13,
                max: 12
            })
        );
        assert!(laguerre_rodrigues_oracle(idx(2, 0.5), 1.0).is_err());
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(PolyIndex::new(2, -1.0).is_err());
        assert!(laguerre(idx(2, 1.0), f64::NAN).is_err());
        assert!(laguerre(idx(2, 1.0), f64::INFINITY).is_err());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(laguerre_derivative(idx(0, 1.0), 2.0).unwrap(), 0.0);
        assert_eq!(laguerre_derivative(idx(1, 1.0), 0.7).unwrap(), -1.0);
        let h = 1e-5;
        let fd = (laguerre(idx(2, 1.0), 1.5 + h).unwrap()
            - laguerre(idx(2, 1.0), 1.5 - h).unwrap())
            / (2.0 * h);
        assert_abs_diff_eq!(
            laguerre_derivative(idx(2, 1.0), 1.5).unwrap(),
            fd,
            epsilon = 1e-8
        );
    }

    #[test]
    fn derivative_identity_shares_code_path() {
        for m in 1..15 {
            for &x in &[0.0, 0.3, 2.5, 11.0] {
                assert_eq!(
                    laguerre_derivative(idx(m, 1.0), x).unwrap(),
                    -laguerre(idx(m - 1, 2.0), x).unwrap()
                );
            }
        }
    }

    #[test]
    fn special_values_at_origin() {
        for m in 0..20 {
            for beta in 0..4 {
                let expected = binomial(m + beta, m) as f64;
                let got = laguerre(idx(m, beta as f64), 0.0).unwrap();
                assert!(
                    (got - expected).abs() <= 1e-12 * expected,
                    "m={m} beta={beta}"
                );
            }
        }
    }

    #[test]
    fn kummer_examples() {
        assert_eq!(kummer_m(KummerParams::new(0.0, 2.0, 4.2)).unwrap(), 1.0);
        assert_eq!(kummer_m(KummerParams::new(-1.0, 2.0, 2.0)).unwrap(), 0.0);
        let n = 3.0;
        let lhs = n * kummer_m(KummerParams::new(1.0 - n, 2.0, 1.0)).unwrap();
        let rhs = laguerre(idx(2, 1.0), 1.0).unwrap();
        assert_abs_diff_eq!(lhs, rhs, epsilon = 1e-14);
    }

    #[test]
    fn kummer_series_matches_exponential() {
        // M(b, b, x) = e^x
        for &x in &[-3.0, 0.5, 4.0, 10.0] {
            let v = kummer_m(KummerParams::new(2.0, 2.0, x)).unwrap();
            assert!((v - f64::exp(x)).abs() <= 1e-13 * f64::exp(x));
        }
    }

    #[test]
    fn kummer_errors() {
        let mut p = KummerParams::new(0.5, 2.0, 30.0);
        p.max_terms = 5;
        assert!(matches!(kummer_m(p), Err(Error::SeriesNotConverged { .. })));
        assert!(kummer_m(KummerParams::new(0.5, -2.0, 1.0)).is_err());
        assert!(kummer_m(KummerParams::new(0.5, 0.0, 1.0)).is_err());
        let mut p = KummerParams::new(0.5, 2.0, 1.0);
        p.series_tol = 0.0;
        assert!(kummer_m(p).is_err());
    }
}
