//! Series in `q` (truncated) and `z` (Laurent, windowed) for the two-variable
//! product/double-sum expansion that specializes to the Fine product.
//!
//! The pure-`z` factor `1/(1 - z^-1)` is expanded as `sum_{j>=0} z^-j`. Every
//! other `z`-step costs at least one power of `q`, so at `q`-order `N` window
//! truncation can only disturb exponents within `N` of either edge; those
//! with `|e| <= L - N` are exact.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BivariateSeries {
    q_order: usize,
    half_width: usize,
    trusted_half_width: usize,
    /// Row-major: row `i` holds `z^-L ..= z^L` for `q^i`.
    coeffs: Vec<i64>,
}

impl BivariateSeries {
    fn zero(q_order: usize, half_width: usize) -> Self {
        Self {
            q_order,
            half_width,
            trusted_half_width: half_width - q_order,
            coeffs: vec![0; (q_order + 1) * (2 * half_width + 1)],
        }
    }

    pub fn q_order(&self) -> usize {
        self.q_order
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    /// Largest `|z`-exponent| whose coefficients are certified exact.
    pub fn trusted_half_width(&self) -> usize {
        self.trusted_half_width
    }

    fn width(&self) -> usize {
        2 * self.half_width + 1
    }

    fn index(&self, q_deg: usize, z_exp: i64) -> Option<usize> {
        let slot = z_exp + self.half_width as i64;
        if q_deg > self.q_order || slot < 0 || slot as usize >= self.width() {
            return None;
        }
        Some(q_deg * self.width() + slot as usize)
    }

    /// Coefficient of `q^q_deg z^z_exp`; `None` outside the stored window.
    pub fn coeff(&self, q_deg: usize, z_exp: i64) -> Option<i64> {
        self.index(q_deg, z_exp).map(|i| self.coeffs[i])
    }

    fn add(&mut self, q_deg: usize, z_exp: i64, v: i64) -> Result<()> {
        if let Some(i) = self.index(q_deg, z_exp) {
            self.coeffs[i] = self.coeffs[i].checked_add(v).ok_or(Error::Overflow("bivariate"))?;
        }
        Ok(())
    }

    /// Multiplies by `(1 - q^a)`.
    fn mul_q_binomial(&mut self, a: usize) -> Result<()> {
        let w = self.width();
        for i in (a..=self.q_order).rev() {
            for j in 0..w {
                let prev = self.coeffs[(i - a) * w + j];
                let cur = &mut self.coeffs[i * w + j];
                *cur = cur.checked_sub(prev).ok_or(Error::Overflow("bivariate"))?;
            }
        }
        Ok(())
    }

    /// Divides by `(1 - z^dz q^a)` with `a >= 1`, `dz = ±1`; contributions
    /// leaving the window are dropped.
    fn div_mixed(&mut self, a: usize, dz: i64) -> Result<()> {
        let w = self.width() as i64;
        for i in a..=self.q_order {
            for j in 0..w {
                let from = j - dz;
                if from < 0 || from >= w {
                    continue;
                }
                let prev = self.coeffs[(i - a) * w as usize + from as usize];
                let cur = &mut self.coeffs[i * w as usize + j as usize];
                *cur = cur.checked_add(prev).ok_or(Error::Overflow("bivariate"))?;
            }
        }
        Ok(())
    }
}

fn check_window(order: usize, half_width: usize) -> Result<()> {
    let required = 2 * order + 2;
    if half_width < required {
        return Err(Error::WindowTooSmall { order, half_width, required });
    }
    Ok(())
}

/// `prod_{n>=1} (1-q^n)^2 / ((1 - z q^n)(1 - z^-1 q^(n-1)))` to `q^order`,
/// `z`-window `-half_width ..= half_width`.
pub fn andrews_product(order: usize, half_width: usize) -> Result<BivariateSeries> {
    check_window(order, half_width)?;
    let mut s = BivariateSeries::zero(order, half_width);
    // 1/(1 - z^-1) applied to 1 first, so the only truncation so far is at z^-L.
    for j in 0..=half_width as i64 {
        s.add(0, -j, 1)?;
    }
    for n in 1..=order {
        s.mul_q_binomial(n)?;
        s.mul_q_binomial(n)?;
        s.div_mixed(n, 1)?;
        s.div_mixed(n, -1)?;
    }
    Ok(s)
}

/// `sum_{k >= |l|} (-1)^(k+l) z^l q^((k^2 - l^2)/2 + (k+l)/2)` on the same
/// truncation. The sum is finite per window, so the only cut is `|l| <= L`.
pub fn andrews_sum(order: usize, half_width: usize) -> Result<BivariateSeries> {
    check_window(order, half_width)?;
    let mut out = BivariateSeries::zero(order, half_width);
    let limit = 2 * order as u64;
    let l_max = half_width as i64;
    // q-exponent is s(t+1)/2, z-exponent (s - t)/2, with s = k + l, t = k - l
    let mut s = 0u64;
    while s <= limit {
        let sign = if s.is_multiple_of(2) { 1 } else { -1 };
        let mut t = s % 2;
        loop {
            let twice_exp = s * (t + 1);
            let l = (s as i64 - t as i64) / 2;
            if twice_exp > limit || l < -l_max {
                break;
            }
            if l <= l_max {
                out.add((twice_exp / 2) as usize, l, sign)?;
            }
            t += 2;
        }
        s += 1;
    }
    Ok(out)
}
