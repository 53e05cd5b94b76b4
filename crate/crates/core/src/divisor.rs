//! Divisor-class counts `D_{r,m}(n)`, the excess `E_r(n; m)`, and the
//! divisor-side coefficient formulas for the single and squared Fine
//! products.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::{FineParams, Level};

/// Positive divisors of `n` in ascending order, by trial division.
pub fn divisors(n: u64) -> Result<Vec<u64>> {
    if n < 1 {
        return Err(Error::InvalidQuery("n must be positive".into()));
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// "How many divisors of `n` are congruent to `residue` mod `modulus`?"
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorClassQuery {
    n: u64,
    residue: i64,
    modulus: u64,
}

impl DivisorClassQuery {
    pub fn new(n: u64, residue: i64, modulus: u64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidQuery(format!("n = {n} must be positive")));
        }
        if modulus < 1 {
            return Err(Error::InvalidQuery("modulus must be at least 1".into()));
        }
        Ok(Self { n, residue, modulus })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// The residue reduced into `0..modulus`.
    pub fn normalized_residue(&self) -> u64 {
        normalize(self.residue, self.modulus)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

fn normalize(residue: i64, modulus: u64) -> u64 {
    residue.rem_euclid(modulus as i64) as u64
}

/// `D_{r,m}(n)`: number of positive divisors of `n` congruent to `r` mod `m`.
pub fn class_count(query: &DivisorClassQuery) -> u64 {
    let target = query.normalized_residue();
    divisors(query.n)
        .expect("query validated n >= 1")
        .into_iter()
        .filter(|d| d % query.modulus == target)
        .count() as u64
}

/// `E_r(n; m) = D_{r,m}(n) - D_{-r,m}(n)`.
pub fn excess(n: u64, r: i64, m: u64) -> Result<i64> {
    let plus = class_count(&DivisorClassQuery::new(n, r, m)?);
    let minus = class_count(&DivisorClassQuery::new(n, -r, m)?);
    Ok(plus as i64 - minus as i64)
}

fn excess_over(divs: &[u64], r: i64, m: u64) -> i64 {
    let plus = normalize(r, m);
    let minus = normalize(-r, m);
    divs.iter()
        .map(|d| {
            let c = d % m;
            (c == plus) as i64 - (c == minus) as i64
        })
        .sum()
}

/// Smallest-prime-factor table, used for divisor enumeration over ranges.
#[derive(Debug, Clone)]
pub struct DivisorSieve {
    spf: Vec<u32>,
}

impl DivisorSieve {
    /// Covers every `n <= limit`.
    pub fn new(limit: u64) -> Self {
        let limit = limit as usize;
        let mut spf = vec![0u32; limit + 1];
        for i in 2..=limit {
            if spf[i] == 0 {
                let mut j = i;
                while j <= limit {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        Self { spf }
    }

    pub fn limit(&self) -> u64 {
        (self.spf.len() - 1) as u64
    }

    /// Prime factorization as `(prime, exponent)` pairs, ascending.
    pub fn factorize(&self, mut n: u64) -> Vec<(u64, u32)> {
        assert!(n >= 1 && n <= self.limit(), "n = {n} outside sieve range");
        let mut out: Vec<(u64, u32)> = Vec::new();
        while n > 1 {
            let p = self.spf[n as usize] as u64;
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
            n /= p;
        }
        out
    }

    /// Ascending positive divisors of `n`, built from the factorization.
    pub fn divisors(&self, n: u64) -> Vec<u64> {
        let mut divs = vec![1u64];
        for (p, e) in self.factorize(n) {
            let len = divs.len();
            let mut pk = 1;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }

    pub fn excess(&self, n: u64, r: i64, m: u64) -> i64 {
        excess_over(&self.divisors(n), r, m)
    }
}

/// The argument `2pn + r(p - r)` at which the excess is evaluated.
pub fn fine1_argument(params: &FineParams, n: u64) -> u64 {
    let (p, r) = (params.p() as u64, params.r() as u64);
    2 * p * n + r * (p - r)
}

/// Coefficient of `q^n` in the single Fine product, from the divisor side:
/// `E_r(2pn + r(p-r); 2p)`.
pub fn fine1_coefficient(params: &FineParams, n: u64) -> Result<i64> {
    params.require(Level::Strong)?;
    excess(fine1_argument(params, n), params.r() as i64, 2 * params.p() as u64)
}

/// `fine1_coefficient` for every `n <= order`, through a shared sieve.
pub fn fine1_sequence(params: &FineParams, order: usize) -> Result<Vec<i64>> {
    params.require(Level::Strong)?;
    let sieve = DivisorSieve::new(fine1_argument(params, order as u64));
    let m = 2 * params.p() as u64;
    Ok((0..=order as u64)
        .map(|n| sieve.excess(fine1_argument(params, n), params.r() as i64, m))
        .collect())
}

/// One summand `d + delta` with `d * delta = pn - r^2`, `d > 0`, `d ≡ r (mod p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fine2Term {
    pub d: i64,
    pub delta: i64,
}

impl Fine2Term {
    pub fn value(&self) -> i64 {
        self.d + self.delta
    }
}

/// `p*n - r^2`. Never zero when gcd(r, p) = 1 and p >= 2.
pub fn fine2_discriminant(params: &FineParams, n: u64) -> Result<i64> {
    let (p, r) = (params.p() as i64, params.r() as i64);
    let disc = p
        .checked_mul(n as i64)
        .and_then(|pn| pn.checked_sub(r * r))
        .ok_or(Error::Overflow("fine2_discriminant"))?;
    if disc == 0 {
        return Err(Error::Invariant(format!("p*n - r^2 = 0 at {params}, n = {n}")));
    }
    Ok(disc)
}

/// Every summand of the squared-product divisor sum at `n`. Positive `d`
/// only; `delta` carries the sign of `pn - r^2`.
pub fn fine2_terms(params: &FineParams, n: u64) -> Result<Vec<Fine2Term>> {
    if n < 1 {
        return Err(Error::InvalidQuery("n must be positive".into()));
    }
    let disc = fine2_discriminant(params, n)?;
    let p = params.p() as u64;
    let r = params.r() as u64;
    Ok(divisors(disc.unsigned_abs())?
        .into_iter()
        .filter(|d| d % p == r)
        .map(|d| Fine2Term { d: d as i64, delta: disc / d as i64 })
        .collect())
}

/// Coefficient of `q^n` in `q^r` times the squared product, from the divisor
/// side: `(1/p) * sum (d + (pn - r^2)/d)`.
///
/// Each summand must be strictly positive and the total must be a multiple
/// of `p`; either failing is reported as [`Error::Invariant`].
pub fn fine2_coefficient(params: &FineParams, n: u64) -> Result<i64> {
    let terms = fine2_terms(params, n)?;
    let mut total: i64 = 0;
    for t in &terms {
        if t.value() <= 0 {
            return Err(Error::Invariant(format!(
                "non-positive summand d + delta = {} + {} at {params}, n = {n}",
                t.d, t.delta
            )));
        }
        total = total.checked_add(t.value()).ok_or(Error::Overflow("fine2_coefficient"))?;
    }
    let p = params.p() as i64;
    if total % p != 0 {
        return Err(Error::Invariant(format!(
            "divisor sum {total} not divisible by p at {params}, n = {n}"
        )));
    }
    Ok(total / p)
}

/// `fine2_coefficient` aligned with series indices: entry 0 is 0.
pub fn fine2_sequence(params: &FineParams, order: usize) -> Result<Vec<i64>> {
    let mut out = Vec::with_capacity(order + 1);
    out.push(0);
    for n in 1..=order as u64 {
        out.push(fine2_coefficient(params, n)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::formal_product;
    use proptest::prelude::*;

    fn brute_divisors(n: u64) -> Vec<u64> {
        (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
    }

    #[test]
    fn divisor_examples() {
        assert_eq!(divisors(14).unwrap(), vec![1, 2, 7, 14]);
        assert_eq!(divisors(1).unwrap(), vec![1]);
        assert_eq!(divisors(8).unwrap(), vec![1, 2, 4, 8]);
        assert_eq!(divisors(36).unwrap(), vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
        assert!(divisors(0).is_err());
    }

    #[test]
    fn class_count_examples() {
        assert_eq!(class_count(&DivisorClassQuery::new(14, 1, 6).unwrap()), 2);
        assert_eq!(class_count(&DivisorClassQuery::new(14, 5, 6).unwrap()), 0);
        assert_eq!(class_count(&DivisorClassQuery::new(1, 1, 1).unwrap()), 1);
        // -1 and 5 are the same class mod 6
        assert_eq!(class_count(&DivisorClassQuery::new(20, -1, 6).unwrap()), 1);
        assert!(DivisorClassQuery::new(0, 1, 6).is_err());
        assert!(DivisorClassQuery::new(5, 1, 0).is_err());
    }

    #[test]
    fn excess_examples() {
        assert_eq!(excess(2, 1, 6).unwrap(), 1);
        assert_eq!(excess(20, 1, 6).unwrap(), 0);
        assert_eq!(excess(14, 1, 6).unwrap(), 2);
    }

    #[test]
    fn fine1_examples() {
        let params = FineParams::new(3, 1).unwrap();
        assert_eq!(fine1_coefficient(&params, 0).unwrap(), 1);
        assert_eq!(fine1_coefficient(&params, 2).unwrap(), 2);
        assert_eq!(fine1_coefficient(&params, 3).unwrap(), 0);
        let weak = FineParams::new(3, 2).unwrap();
        assert!(matches!(fine1_coefficient(&weak, 0), Err(Error::InvalidParams(_))));
        assert!(fine1_sequence(&weak, 3).is_err());
    }

    #[test]
    fn fine1_sequence_matches_pointwise() {
        for params in FineParams::grid(12).into_iter().filter(|f| f.level() == Level::Strong) {
            let seq = fine1_sequence(&params, 120).unwrap();
            for (n, &v) in seq.iter().enumerate() {
                assert_eq!(v, fine1_coefficient(&params, n as u64).unwrap(), "{params} n={n}");
            }
        }
    }

    #[test]
    fn fine2_examples() {
        let p31 = FineParams::new(3, 1).unwrap();
        assert_eq!(fine2_coefficient(&p31, 1).unwrap(), 1);
        assert_eq!(fine2_coefficient(&p31, 3).unwrap(), 5);
        let p53 = FineParams::new(5, 3).unwrap();
        assert_eq!(fine2_coefficient(&p53, 1).unwrap(), 0);
        assert!(fine2_terms(&p53, 1).unwrap().is_empty());
        assert_eq!(fine2_discriminant(&p53, 1).unwrap(), -4);
        assert!(fine2_coefficient(&p31, 0).is_err());
        assert_eq!(fine2_sequence(&p31, 3).unwrap(), vec![0, 1, 2, 5]);
    }

    #[test]
    fn fine2_terms_are_positive() {
        for params in FineParams::grid(12) {
            for n in 1..=300 {
                for t in fine2_terms(&params, n).unwrap() {
                    assert!(t.value() > 0, "{params} n={n} {t:?}");
                    assert_eq!(t.d % params.p() as i64, params.r() as i64);
                }
            }
        }
    }

    #[test]
    fn fine_product_bounded_by_divisor_count() {
        for params in FineParams::grid(12).into_iter().filter(|f| f.level() == Level::Strong) {
            let s = formal_product(params.p(), params.r(), 200).unwrap();
            assert_eq!(s.coeff(0), Some(1));
            for (n, &c) in s.coeffs().iter().enumerate() {
                let bound = divisors(fine1_argument(&params, n as u64)).unwrap().len() as i64;
                assert!(c.abs() <= bound, "{params} n={n}");
            }
        }
    }

    proptest! {
        #[test]
        fn trial_division_matches_brute_force(n in 1u64..3000) {
            prop_assert_eq!(divisors(n).unwrap(), brute_divisors(n));
        }

        #[test]
        fn sieve_matches_trial_division(n in 1u64..20000) {
            let sieve = DivisorSieve::new(20000);
            prop_assert_eq!(sieve.divisors(n), divisors(n).unwrap());
        }

        #[test]
        fn excess_is_antisymmetric(n in 1u64..5000, m in 2u64..40, r in 1i64..40) {
            let r = 1 + (r - 1) % (m as i64 - 1);
            let e = excess(n, r, m).unwrap();
            prop_assert_eq!(e, -excess(n, m as i64 - r, m).unwrap());
            prop_assert!(e.unsigned_abs() as usize <= divisors(n).unwrap().len());
        }
    }
}
