//! Truncated power series in `q` with exact `i64` coefficients.
//!
//! Every arithmetic step is checked; a coefficient that leaves the `i64`
//! range is reported as [`Error::Overflow`] instead of wrapping.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{check_range, FineParams};

/// Coefficients of `q^0 ..= q^order`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PowerSeries {
    coeffs: Vec<i64>,
}

/// The factor `(1 - q^stride)^exponent`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProductFactor {
    stride: usize,
    exponent: i32,
}

impl ProductFactor {
    pub fn new(stride: usize, exponent: i32) -> Result<Self> {
        if stride == 0 {
            return Err(Error::InvalidParams("factor stride must be at least 1".into()));
        }
        Ok(Self { stride, exponent })
    }

    pub fn stride(&self) -> usize {
        self.stride
    }

    pub fn exponent(&self) -> i32 {
        self.exponent
    }
}

impl PowerSeries {
    pub fn constant(c: i64, order: usize) -> Self {
        let mut coeffs = vec![0; order + 1];
        coeffs[0] = c;
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::constant(0, order)
    }

    /// Builds a series whose order is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidParams("a series needs at least one coefficient".into()));
        }
        Ok(Self { coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<i64> {
        self.coeffs
    }

    /// Coefficient of `q^n`, or `None` past the truncation order.
    pub fn coeff(&self, n: usize) -> Option<i64> {
        self.coeffs.get(n).copied()
    }

    /// Drops every coefficient above `order`.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: order });
        }
        Ok(Self { coeffs: self.coeffs[..=order].to_vec() })
    }

    /// Cauchy product truncated to the shared order.
    pub fn multiply(&self, other: &PowerSeries) -> Result<Self> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch { left: self.order(), right: other.order() });
        }
        let a = &self.coeffs;
        let b = &other.coeffs;
        let mut out = vec![0i64; a.len()];
        for (n, slot) in out.iter_mut().enumerate() {
            let mut acc: i64 = 0;
            for (i, &ai) in a[..=n].iter().enumerate() {
                if ai == 0 {
                    continue;
                }
                let term = ai.checked_mul(b[n - i]).ok_or(Error::Overflow("multiply"))?;
                acc = acc.checked_add(term).ok_or(Error::Overflow("multiply"))?;
            }
            *slot = acc;
        }
        Ok(Self { coeffs: out })
    }

    pub fn square(&self) -> Result<Self> {
        self.multiply(self)
    }

    /// Multiplies by `(1 - q^a)^e`, one linear pass per unit of `|e|`.
    pub fn apply_factor(&self, factor: ProductFactor) -> Result<Self> {
        let mut out = self.clone();
        out.apply_factor_in_place(factor)?;
        Ok(out)
    }

    pub(crate) fn apply_factor_in_place(&mut self, factor: ProductFactor) -> Result<()> {
        let a = factor.stride;
        let c = &mut self.coeffs;
        if a >= c.len() {
            return Ok(());
        }
        for _ in 0..factor.exponent.unsigned_abs() {
            if factor.exponent < 0 {
                // c'_n = c_n + c'_{n-a}
                for n in a..c.len() {
                    c[n] = c[n].checked_add(c[n - a]).ok_or(Error::Overflow("apply_factor"))?;
                }
            } else {
                // c'_n = c_n - c_{n-a}, walked downward so c_{n-a} is still the old value
                for n in (a..c.len()).rev() {
                    c[n] = c[n].checked_sub(c[n - a]).ok_or(Error::Overflow("apply_factor"))?;
                }
            }
        }
        Ok(())
    }

    /// Multiplies by `q^r`.
    pub fn shift(&self, r: usize) -> Result<Self> {
        if r > self.order() {
            return Err(Error::ShiftTooLarge { shift: r, order: self.order() });
        }
        let mut coeffs = vec![0; self.coeffs.len()];
        coeffs[r..].copy_from_slice(&self.coeffs[..self.coeffs.len() - r]);
        Ok(Self { coeffs })
    }
}

/// The factors of the Fine product with stride at most `order`.
pub fn fine_factors(p: u32, r: u32, order: usize) -> Vec<ProductFactor> {
    let (p, r) = (p as usize, r as usize);
    let mut factors = Vec::new();
    for n in 1.. {
        let lowest = (p * n - p + r).min(p * n - r);
        if lowest > order {
            break;
        }
        for (stride, exponent) in [(p * n, 2), (p * n - r, -1), (p * n - p + r, -1)] {
            if stride <= order {
                factors.push(ProductFactor { stride, exponent });
            }
        }
    }
    factors
}

/// Expansion of `prod_{n>=1} (1-q^{pn})^2 / ((1-q^{pn-r})(1-q^{pn-p+r}))`
/// to `q^order`.
pub fn fine_product(params: &FineParams, order: usize) -> Result<PowerSeries> {
    formal_product(params.p(), params.r(), order)
}

/// Same product for any `0 < r < p`, with no coprimality requirement.
///
/// Factors are applied in increasing stride order on a 128-bit scratch
/// buffer. Partial products grow much faster than the final coefficients
/// (for p = 2 they reach ~1e11 at order 2000), so only the result is
/// narrowed back to `i64`, with a check.
pub fn formal_product(p: u32, r: u32, order: usize) -> Result<PowerSeries> {
    check_range(p, r)?;
    let mut factors = fine_factors(p, r, order);
    factors.sort_by_key(|f| (f.stride, f.exponent < 0));
    let mut c = vec![0i128; order + 1];
    c[0] = 1;
    for f in factors {
        let a = f.stride;
        for _ in 0..f.exponent.unsigned_abs() {
            if f.exponent < 0 {
                for n in a..c.len() {
                    c[n] = c[n].checked_add(c[n - a]).ok_or(Error::Overflow("fine_product"))?;
                }
            } else {
                for n in (a..c.len()).rev() {
                    c[n] = c[n].checked_sub(c[n - a]).ok_or(Error::Overflow("fine_product"))?;
                }
            }
        }
    }
    let coeffs = c
        .into_iter()
        .map(|v| i64::try_from(v).map_err(|_| Error::Overflow("fine_product")))
        .collect::<Result<Vec<_>>>()?;
    PowerSeries::from_coeffs(coeffs)
}

/// `q^r` times the square of the Fine product.
pub fn fine_product_squared_shifted(params: &FineParams, order: usize) -> Result<PowerSeries> {
    fine_product(params, order)?.square()?.shift(params.r() as usize)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn series(c: &[i64]) -> PowerSeries {
        PowerSeries::from_coeffs(c.to_vec()).unwrap()
    }

    // Schoolbook expansion of a finite product of polynomials, no recurrences.
    fn naive_product(p: usize, r: usize, order: usize) -> Vec<i64> {
        let mut acc = vec![0i64; order + 1];
        acc[0] = 1;
        let mul = |acc: &Vec<i64>, poly: &[(usize, i64)]| {
            let mut out = vec![0i64; order + 1];
            for (i, &a) in acc.iter().enumerate() {
                for &(d, c) in poly {
                    if i + d <= order {
                        out[i + d] += a * c;
                    }
                }
            }
            out
        };
        let geometric = |a: usize| -> Vec<(usize, i64)> { (0..=order / a).map(|j| (j * a, 1)).collect() };
        for n in 1..=order {
            let num = p * n;
            if num <= order {
                acc = mul(&acc, &[(0, 1), (num, -1)]);
                acc = mul(&acc, &[(0, 1), (num, -1)]);
            }
            for a in [p * n - r, p * n - p + r] {
                if a <= order {
                    acc = mul(&acc, &geometric(a));
                }
            }
        }
        acc
    }

    #[test]
    fn constants() {
        assert_eq!(PowerSeries::constant(1, 4).coeffs(), &[1, 0, 0, 0, 0]);
        assert_eq!(PowerSeries::constant(0, 2).coeffs(), &[0, 0, 0]);
        assert_eq!(PowerSeries::constant(-3, 0).coeffs(), &[-3]);
    }

    #[test]
    fn multiply_examples() {
        let f = series(&[1, 1, 2, 0, 2]);
        assert_eq!(f.square().unwrap().coeffs(), &[1, 2, 5, 4, 8]);
        assert_eq!(f.multiply(&PowerSeries::constant(1, 4)).unwrap(), f);
        assert_eq!(series(&[0, 1]).square().unwrap().coeffs(), &[0, 0]);
        assert!(matches!(
            f.multiply(&PowerSeries::constant(1, 3)),
            Err(Error::OrderMismatch { .. })
        ));
    }

    #[test]
    fn multiply_overflow_is_loud() {
        let big = series(&[i64::MAX / 2 + 1, 0]);
        assert_eq!(big.square(), Err(Error::Overflow("multiply")));
        let s = series(&[i64::MAX, i64::MAX]);
        assert!(s.apply_factor(ProductFactor::new(1, -1).unwrap()).is_err());
    }

    #[test]
    fn apply_factor_examples() {
        let geo = series(&[1, 0, 0, 0]).apply_factor(ProductFactor::new(1, -1).unwrap()).unwrap();
        assert_eq!(geo.coeffs(), &[1, 1, 1, 1]);
        let back = geo.apply_factor(ProductFactor::new(1, 1).unwrap()).unwrap();
        assert_eq!(back.coeffs(), &[1, 0, 0, 0]);
        let sq = series(&[1, 0, 0, 0, 0]).apply_factor(ProductFactor::new(3, 2).unwrap()).unwrap();
        assert_eq!(sq.coeffs(), &[1, 0, 0, -2, 0]);
        assert!(ProductFactor::new(0, 1).is_err());
    }

    #[test]
    fn shift_examples() {
        assert_eq!(series(&[1, 2, 5]).shift(1).unwrap().coeffs(), &[0, 1, 2]);
        let s = series(&[3, 1, 4]);
        assert_eq!(s.shift(0).unwrap(), s);
        let sq = series(&[1, 1, 2, 0, 2]).square().unwrap();
        assert_eq!(sq.shift(1).unwrap().coeffs(), &[0, 1, 2, 5, 4]);
        assert_eq!(s.shift(3), Err(Error::ShiftTooLarge { shift: 3, order: 2 }));
    }

    #[test]
    fn fine_product_prefix() {
        let params = FineParams::new(3, 1).unwrap();
        assert_eq!(fine_product(&params, 4).unwrap().coeffs(), &[1, 1, 2, 0, 2]);
        assert_eq!(fine_product(&params, 2).unwrap().coeffs(), &[1, 1, 2]);
        assert_eq!(fine_product(&params, 0).unwrap().coeffs(), &[1]);
    }

    #[test]
    fn fine_product_matches_schoolbook() {
        for p in 2..=9u32 {
            for r in 1..p {
                let fast = formal_product(p, r, 40).unwrap();
                assert_eq!(fast.coeffs(), naive_product(p as usize, r as usize, 40), "p={p} r={r}");
            }
        }
    }

    #[test]
    fn product_survives_large_intermediates() {
        let params = FineParams::new(2, 1).unwrap();
        let s = fine_product(&params, 5000).unwrap();
        assert!(s.coeffs().iter().all(|c| c.abs() < 100));
    }

    #[test]
    fn formal_product_rejects_bad_range() {
        assert!(formal_product(3, 0, 5).is_err());
        assert!(formal_product(3, 3, 5).is_err());
        assert!(formal_product(4, 2, 5).is_ok());
    }

    fn small_series(order: usize) -> impl Strategy<Value = PowerSeries> {
        prop::collection::vec(-50i64..50, order + 1).prop_map(|c| PowerSeries::from_coeffs(c).unwrap())
    }

    proptest! {
        #[test]
        fn factor_round_trip(
            s in (0usize..200).prop_flat_map(small_series),
            stride in 1usize..=20,
        ) {
            let down = s.apply_factor(ProductFactor::new(stride, -1).unwrap()).unwrap();
            let up = down.apply_factor(ProductFactor::new(stride, 1).unwrap()).unwrap();
            prop_assert_eq!(up, s);
        }

        #[test]
        fn ring_laws(
            (a, b, c) in (0usize..40).prop_flat_map(|n| (small_series(n), small_series(n), small_series(n)))
        ) {
            prop_assert_eq!(a.multiply(&b).unwrap(), b.multiply(&a).unwrap());
            prop_assert_eq!(
                a.multiply(&b).unwrap().multiply(&c).unwrap(),
                a.multiply(&b.multiply(&c).unwrap()).unwrap()
            );
        }
    }
}
