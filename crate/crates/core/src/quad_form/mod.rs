//! The indefinite form `Q(k, l) = p(k^2 - l^2)/2 + p(k + l)/2 - l*r` on the
//! cone `k >= |l|`.
//!
//! Enumeration works in cone coordinates `s = k + l`, `t = k - l`, which map
//! the cone onto same-parity pairs `s, t >= 0`. There
//! `2Q = s(pt + p - r) + t*r`, increasing in both coordinates.

mod bivariate;

pub use bivariate::{andrews_product, andrews_sum, BivariateSeries};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{check_range, FineParams};
use crate::series::PowerSeries;

/// A point of the cone with its weight `(-1)^(k+l)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Representation {
    pub k: i64,
    pub l: i64,
    pub sign: i8,
}

impl Representation {
    fn from_cone(s: u64, t: u64) -> Self {
        let (k, l) = from_cone(s, t).expect("same-parity cone coordinates");
        Self { k, l, sign: if s.is_multiple_of(2) { 1 } else { -1 } }
    }
}

/// Representations split by the parity of `k + l`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityCounts {
    pub even: u64,
    pub odd: u64,
}

impl ParityCounts {
    pub fn total(&self) -> u64 {
        self.even + self.odd
    }

    /// `even - odd`, the signed representation count.
    pub fn signed(&self) -> i64 {
        self.even as i64 - self.odd as i64
    }
}

/// `(k, l) -> (k + l, k - l)`; `None` off the cone.
pub fn to_cone(k: i64, l: i64) -> Option<(u64, u64)> {
    if k < l.abs() {
        return None;
    }
    Some(((k + l) as u64, (k - l) as u64))
}

/// Inverse of [`to_cone`]; `None` when `s` and `t` differ in parity.
pub fn from_cone(s: u64, t: u64) -> Option<(i64, i64)> {
    if !(s + t).is_multiple_of(2) {
        return None;
    }
    let (s, t) = (s as i64, t as i64);
    Some(((s + t) / 2, (s - t) / 2))
}

/// `2Q` in cone coordinates.
pub fn twice_q_cone(params: &FineParams, s: u64, t: u64) -> u64 {
    twice_q(params.p() as u64, params.r() as u64, s, t)
}

#[inline]
fn twice_q(p: u64, r: u64, s: u64, t: u64) -> u64 {
    s * (p * t + p - r) + t * r
}

/// `Q_{r,p}(k, l)` at any integer point, on the cone or not.
pub fn q_value(params: &FineParams, k: i64, l: i64) -> Result<i64> {
    let (p, r) = (params.p() as i128, params.r() as i128);
    let (k, l) = (k as i128, l as i128);
    let twice = p * (k * k - l * l) + p * (k + l) - 2 * l * r;
    if twice % 2 != 0 {
        return Err(Error::Invariant(format!("2Q = {twice} is odd")));
    }
    i64::try_from(twice / 2).map_err(|_| Error::Overflow("q_value"))
}

/// Every cone point with `Q = n`, sorted by `(k, l)`.
pub fn representations(params: &FineParams, n: u64) -> Vec<Representation> {
    representations_raw(params.p(), params.r(), n)
}

fn representations_raw(p: u32, r: u32, n: u64) -> Vec<Representation> {
    let (p, r) = (p as u64, r as u64);
    let target = 2 * n;
    let s_max = target / (p - r);
    let t_max = target / r;
    let mut out = Vec::new();
    for s in 0..=s_max {
        let mut t = s % 2;
        while t <= t_max {
            let v = twice_q(p, r, s, t);
            if v > target {
                break;
            }
            if v == target {
                out.push(Representation::from_cone(s, t));
            }
            t += 2;
        }
    }
    out.sort();
    out
}

pub fn parity_counts(params: &FineParams, n: u64) -> ParityCounts {
    tally(&representations(params, n))
}

fn tally(reps: &[Representation]) -> ParityCounts {
    reps.iter().fold(ParityCounts::default(), |mut acc, rep| {
        if rep.sign > 0 {
            acc.even += 1;
        } else {
            acc.odd += 1;
        }
        acc
    })
}

/// `sum (-1)^(k+l) q^Q(k,l)` over the cone, truncated at `q^order`.
pub fn signed_series(params: &FineParams, order: usize) -> Result<PowerSeries> {
    formal_signed_series(params.p(), params.r(), order)
}

/// [`signed_series`] for any `0 < r < p`.
pub fn formal_signed_series(p: u32, r: u32, order: usize) -> Result<PowerSeries> {
    check_range(p, r)?;
    let (p, r) = (p as u64, r as u64);
    let limit = 2 * order as u64;
    let mut coeffs = vec![0i64; order + 1];
    let mut s = 0u64;
    // both parities of s start above s(p - r)
    while s * (p - r) <= limit {
        let sign = if s.is_multiple_of(2) { 1 } else { -1 };
        let mut t = s % 2;
        loop {
            let v = twice_q(p, r, s, t);
            if v > limit {
                break;
            }
            debug_assert!(v.is_multiple_of(2));
            coeffs[(v / 2) as usize] += sign;
            t += 2;
        }
        s += 1;
    }
    PowerSeries::from_coeffs(coeffs)
}

/// `q^r` times the square of [`signed_series`], i.e. the signed count of
/// quadruples for every `n <= order`.
pub fn quaternary_series(params: &FineParams, order: usize) -> Result<PowerSeries> {
    let r = params.r() as usize;
    if order < r {
        return Ok(PowerSeries::zero(order));
    }
    signed_series(params, order)?.square()?.shift(r)
}

/// Signed count of `(k1, l1, k2, l2)` on the cone with
/// `Q(k1, l1) + Q(k2, l2) + r = n`, through the series square.
pub fn quaternary_signed_count(params: &FineParams, n: u64) -> Result<i64> {
    if n < params.r() as u64 {
        return Ok(0);
    }
    let s = quaternary_series(params, n as usize)?;
    Ok(s.coeff(n as usize).expect("order is n"))
}

/// Same count by listing every pair of representations. Quadratic in the
/// number of cone points, so intended for small `n`.
pub fn quaternary_signed_count_direct(params: &FineParams, n: u64) -> i64 {
    let r = params.r() as u64;
    if n < r {
        return 0;
    }
    let target = n - r;
    let by_value: Vec<Vec<Representation>> =
        (0..=target).map(|m| representations(params, m)).collect();
    let mut total = 0i64;
    for m in 0..=target {
        for a in &by_value[m as usize] {
            for b in &by_value[(target - m) as usize] {
                total += (a.sign * b.sign) as i64;
            }
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{fine_product, formal_product};

    fn p31() -> FineParams {
        FineParams::new(3, 1).unwrap()
    }

    fn rep(k: i64, l: i64, sign: i8) -> Representation {
        Representation { k, l, sign }
    }

    // Raw (k, l) box search, independent of cone coordinates.
    fn box_representations(params: &FineParams, n: i64) -> Vec<Representation> {
        let mut out = Vec::new();
        for k in 0..=2 * n + 1 {
            for l in -k..=k {
                if q_value(params, k, l).unwrap() == n {
                    out.push(rep(k, l, if (k + l) % 2 == 0 { 1 } else { -1 }));
                }
            }
        }
        out
    }

    #[test]
    fn q_value_examples() {
        assert_eq!(q_value(&p31(), 0, 0).unwrap(), 0);
        assert_eq!(q_value(&p31(), 1, -1).unwrap(), 1);
        assert_eq!(q_value(&p31(), 1, 0).unwrap(), 3);
        // off the cone the form is indefinite
        assert!(q_value(&p31(), 0, 3).unwrap() < 0);
    }

    #[test]
    fn cone_bijection_and_linearization() {
        let params = FineParams::new(7, 3).unwrap();
        for k in -50i64..=50 {
            for l in -50i64..=50 {
                match to_cone(k, l) {
                    Some((s, t)) => {
                        assert!(k >= l.abs());
                        assert_eq!((s + t) % 2, 0);
                        assert_eq!(from_cone(s, t), Some((k, l)));
                        let q = q_value(&params, k, l).unwrap();
                        assert!(q >= 0);
                        assert_eq!(2 * q as u64, twice_q_cone(&params, s, t));
                    }
                    None => assert!(k < l.abs()),
                }
            }
        }
        for s in 0..=100u64 {
            for t in 0..=100u64 {
                match from_cone(s, t) {
                    Some((k, l)) => assert_eq!(to_cone(k, l), Some((s, t))),
                    None => assert_eq!((s + t) % 2, 1),
                }
            }
        }
    }

    #[test]
    fn representation_examples() {
        assert_eq!(representations(&p31(), 0), vec![rep(0, 0, 1)]);
        assert_eq!(representations(&p31(), 3), vec![rep(1, 0, -1), rep(3, -3, 1)]);
        assert_eq!(representations(&p31(), 4), vec![rep(2, 2, 1), rep(4, -4, 1)]);
    }

    #[test]
    fn representations_match_box_search() {
        for params in FineParams::grid(7) {
            for n in 0..=25 {
                assert_eq!(
                    representations(&params, n),
                    box_representations(&params, n as i64),
                    "{params} n={n}"
                );
            }
        }
    }

    #[test]
    fn parity_examples() {
        assert_eq!(parity_counts(&p31(), 3), ParityCounts { even: 1, odd: 1 });
        assert_eq!(parity_counts(&p31(), 4), ParityCounts { even: 2, odd: 0 });
        assert_eq!(parity_counts(&p31(), 0), ParityCounts { even: 1, odd: 0 });
    }

    #[test]
    fn signed_series_examples() {
        assert_eq!(signed_series(&p31(), 4).unwrap().coeffs(), &[1, 1, 2, 0, 2]);
        let p53 = FineParams::new(5, 3).unwrap();
        assert_eq!(signed_series(&p53, 0).unwrap().coeffs(), &[1]);
        for params in FineParams::grid(12) {
            assert_eq!(signed_series(&params, 10).unwrap().coeff(0), Some(1));
        }
    }

    #[test]
    fn signed_series_matches_per_n_counts() {
        for params in FineParams::grid(9) {
            let s = signed_series(&params, 80).unwrap();
            for n in 0..=80 {
                assert_eq!(s.coeff(n), Some(parity_counts(&params, n as u64).signed()));
            }
        }
    }

    #[test]
    fn signed_series_equals_product() {
        for params in FineParams::grid(12) {
            assert_eq!(signed_series(&params, 300).unwrap(), fine_product(&params, 300).unwrap());
        }
    }

    #[test]
    fn specialization_holds_without_coprimality() {
        for (p, r) in [(4, 2), (6, 3), (6, 4), (9, 6), (10, 5)] {
            assert_eq!(
                formal_signed_series(p, r, 200).unwrap(),
                formal_product(p, r, 200).unwrap(),
                "p={p} r={r}"
            );
        }
    }

    #[test]
    fn quaternary_examples() {
        assert_eq!(quaternary_signed_count(&p31(), 1).unwrap(), 1);
        assert_eq!(quaternary_signed_count(&p31(), 3).unwrap(), 5);
        let p53 = FineParams::new(5, 3).unwrap();
        assert_eq!(quaternary_signed_count(&p53, 1).unwrap(), 0);
        assert_eq!(quaternary_signed_count_direct(&p31(), 1), 1);
        assert_eq!(quaternary_signed_count_direct(&p31(), 3), 5);
        assert_eq!(quaternary_signed_count_direct(&p53, 1), 0);
    }

    #[test]
    fn quaternary_routes_agree() {
        for params in FineParams::grid(8) {
            let series = quaternary_series(&params, 60).unwrap();
            for n in 0..=60u64 {
                assert_eq!(
                    series.coeff(n as usize).unwrap(),
                    quaternary_signed_count_direct(&params, n),
                    "{params} n={n}"
                );
            }
        }
    }
}
