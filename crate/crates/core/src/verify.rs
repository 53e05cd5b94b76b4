//! Multi-route verification over finite ranges.
//!
//! Each `verify_*` function evaluates the same quantity along independent
//! code paths and compares them exactly. A mismatch is recorded and the
//! sweep continues, so a report carries the total failure count and the
//! first counterexample. Errors (`Err`) are reserved for bad parameters and
//! internal invariant breaches.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::divisor::{fine1_coefficient, fine1_sequence, fine2_coefficient, fine2_terms};
use crate::error::{Error, Result};
use crate::params::{FineParams, Level};
use crate::quad_form::{
    andrews_product, andrews_sum, parity_counts, quaternary_series, quaternary_signed_count_direct,
    representations, signed_series, ParityCounts,
};
use crate::series::{fine_product, PowerSeries};

/// Largest `n` at which [`verify_thm2`] also runs the pairwise enumeration.
pub const DIRECT_ORACLE_LIMIT: u64 = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IdentityId {
    Fine1,
    Fine2,
    Thm1,
    Thm2,
    Cor1,
    Cor2,
    Andrews,
}

impl IdentityId {
    pub fn as_str(&self) -> &'static str {
        match self {
            IdentityId::Fine1 => "fine1",
            IdentityId::Fine2 => "fine2",
            IdentityId::Thm1 => "thm1",
            IdentityId::Thm2 => "thm2",
            IdentityId::Cor1 => "cor1",
            IdentityId::Cor2 => "cor2",
            IdentityId::Andrews => "andrews",
        }
    }
}

/// What a report is about: one `(p, r)` pair, or the two-variable expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Subject {
    Params(FineParams),
    Bivariate,
}

impl Serialize for Subject {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Subject::Params(p) => p.serialize(serializer),
            Subject::Bivariate => serializer.serialize_str("bivariate"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CheckRange {
    pub n_min: u64,
    pub n_max: u64,
    /// Truncation order of the series involved.
    pub order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_half_width: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RouteValue {
    pub route: &'static str,
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub n: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z_exp: Option<i64>,
    pub routes: Vec<RouteValue>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub identity: IdentityId,
    pub subject: Subject,
    pub range: CheckRange,
    pub status: Status,
    pub checked_count: u64,
    pub failure_count: u64,
    pub first_failure: Option<Failure>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

struct Recorder {
    identity: IdentityId,
    subject: Subject,
    range: CheckRange,
    checked: u64,
    failures: u64,
    first: Option<Failure>,
    notes: Vec<String>,
}

impl Recorder {
    fn new(identity: IdentityId, subject: Subject, range: CheckRange) -> Self {
        Self { identity, subject, range, checked: 0, failures: 0, first: None, notes: Vec::new() }
    }

    fn record(&mut self, n: u64, z_exp: Option<i64>, ok: bool, routes: &[(&'static str, i64)]) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(Failure {
                    n,
                    z_exp,
                    routes: routes.iter().map(|&(route, value)| RouteValue { route, value }).collect(),
                });
            }
        }
    }

    /// Passes when every route gives the same value.
    fn equal(&mut self, n: u64, routes: &[(&'static str, i64)]) {
        let ok = routes.windows(2).all(|w| w[0].1 == w[1].1);
        self.record(n, None, ok, routes);
    }

    fn finish(self) -> VerificationReport {
        VerificationReport {
            identity: self.identity,
            subject: self.subject,
            range: self.range,
            status: if self.failures == 0 { Status::Pass } else { Status::Fail },
            checked_count: self.checked,
            failure_count: self.failures,
            first_failure: self.first,
            notes: self.notes,
        }
    }
}

fn range(n_min: u64, order: usize) -> CheckRange {
    CheckRange { n_min, n_max: order as u64, order, z_half_width: None }
}

fn coeff(s: &PowerSeries, n: u64) -> i64 {
    s.coeff(n as usize).expect("n within series order")
}

/// Product expansion against `E_r(2pn + r(p-r); 2p)` for `0 <= n <= order`.
pub fn verify_fine1(params: &FineParams, order: usize) -> Result<VerificationReport> {
    params.require(Level::Strong)?;
    let product = fine_product(params, order)?;
    let divisor = fine1_sequence(params, order)?;
    let mut rec = Recorder::new(IdentityId::Fine1, Subject::Params(*params), range(0, order));
    for n in 0..=order as u64 {
        rec.equal(n, &[("product", coeff(&product, n)), ("divisor", divisor[n as usize])]);
    }
    Ok(rec.finish())
}

/// Three-way check: divisor excess, signed cone count, product expansion.
pub fn verify_thm1(params: &FineParams, order: usize) -> Result<VerificationReport> {
    params.require(Level::Strong)?;
    let product = fine_product(params, order)?;
    let cone = signed_series(params, order)?;
    let mut rec = Recorder::new(IdentityId::Thm1, Subject::Params(*params), range(0, order));
    for n in 0..=order as u64 {
        rec.equal(
            n,
            &[
                ("divisor", fine1_coefficient(params, n)?),
                ("cone", coeff(&cone, n)),
                ("product", coeff(&product, n)),
            ],
        );
    }
    Ok(rec.finish())
}

/// Squared-product divisor sum against `q^r F^2` and the quadruple count,
/// for `1 <= n <= order`.
///
/// For `n <= DIRECT_ORACLE_LIMIT` the pairwise enumeration is added as a
/// fourth route. At the strong level the self-convolution of the
/// single-product divisor sequence is added as well.
pub fn verify_thm2(params: &FineParams, order: usize) -> Result<VerificationReport> {
    verify_squared(IdentityId::Thm2, params, order)
}

/// [`verify_thm2`] reported under the squared-product identity id.
pub fn verify_fine2(params: &FineParams, order: usize) -> Result<VerificationReport> {
    verify_squared(IdentityId::Fine2, params, order)
}

fn verify_squared(id: IdentityId, params: &FineParams, order: usize) -> Result<VerificationReport> {
    let r = params.r() as usize;
    if order < r {
        return Err(Error::InvalidParams(format!("n-max {order} must be at least r = {r}")));
    }
    let product_side = fine_product(params, order)?.square()?.shift(r)?;
    let cone_side = quaternary_series(params, order)?;
    let convolved = if params.level() == Level::Strong {
        let seq = PowerSeries::from_coeffs(fine1_sequence(params, order)?)?;
        Some(seq.square()?.shift(r)?)
    } else {
        None
    };

    let mut rec = Recorder::new(id, Subject::Params(*params), range(1, order));
    let mut ambiguous = Vec::new();
    for n in 1..=order as u64 {
        let divisor = fine2_coefficient(params, n)?;
        if (params.p() as u64 * n) < (r * r) as u64 && divisor != 0 {
            ambiguous.push(n);
        }
        let mut routes = vec![
            ("divisor", divisor),
            ("product_squared", coeff(&product_side, n)),
            ("quaternary", coeff(&cone_side, n)),
        ];
        if n <= DIRECT_ORACLE_LIMIT {
            routes.push(("quaternary_direct", quaternary_signed_count_direct(params, n)));
        }
        if let Some(c) = &convolved {
            routes.push(("divisor_convolution", coeff(c, n)));
        }
        rec.equal(n, &routes);
    }
    // Below r^2/p the sum has negative delta; a reading restricted to
    // positive (d, delta) would give 0 there.
    if !ambiguous.is_empty() {
        rec.notes.push(format!("negative p*n - r^2 with nonzero divisor sum at n = {ambiguous:?}"));
    }
    Ok(rec.finish())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Balanced,
    Positive,
    Negative,
}

impl Verdict {
    fn of(value: i64) -> Self {
        match value.signum() {
            0 => Verdict::Balanced,
            1 => Verdict::Positive,
            _ => Verdict::Negative,
        }
    }
}

/// Whether `D_{r,2p}` exceeds, equals or trails `D_{-r,2p}` at the
/// argument `2pn + r(p-r)`, with the cone parity counts that decide it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub n: u64,
    pub parity: ParityCounts,
    pub excess_value: i64,
    pub verdict: Verdict,
}

pub fn classify(params: &FineParams, n: u64) -> Result<Classification> {
    params.require(Level::Strong)?;
    let parity = parity_counts(params, n);
    let excess_value = fine1_coefficient(params, n)?;
    if parity.signed() != excess_value {
        return Err(Error::Invariant(format!(
            "parity {parity:?} disagrees with excess {excess_value} at {params}, n = {n}"
        )));
    }
    Ok(Classification { n, parity, excess_value, verdict: Verdict::of(excess_value) })
}

/// Classifier coherence for `0 <= n <= order`: verdict, parity difference
/// and excess share a sign, and `Balanced` happens exactly when there are
/// no representations or they split evenly.
pub fn verify_cor1(params: &FineParams, order: usize) -> Result<VerificationReport> {
    params.require(Level::Strong)?;
    let excesses = fine1_sequence(params, order)?;
    let mut rec = Recorder::new(IdentityId::Cor1, Subject::Params(*params), range(0, order));
    for n in 0..=order as u64 {
        let reps = representations(params, n);
        let even = reps.iter().filter(|r| r.sign > 0).count() as i64;
        let odd = reps.len() as i64 - even;
        let excess = excesses[n as usize];
        let verdict = match classify(params, n) {
            Ok(c) => c.verdict,
            Err(Error::Invariant(_)) => {
                rec.record(n, None, false, &[("parity", even - odd), ("excess", excess)]);
                continue;
            }
            Err(e) => return Err(e),
        };
        let balanced_by_reps = reps.is_empty() || even == odd;
        let ok = Verdict::of(even - odd) == verdict
            && Verdict::of(excess) == verdict
            && (verdict == Verdict::Balanced) == balanced_by_reps;
        rec.record(n, None, ok, &[("parity", even - odd), ("excess", excess)]);
    }
    Ok(rec.finish())
}

/// Non-negativity of the quadruple count for `1 <= n <= order`, and strict
/// positivity of every summand `d + delta` of the divisor sum.
pub fn verify_cor2(params: &FineParams, order: usize) -> Result<VerificationReport> {
    let counts = quaternary_series(params, order)?;
    let mut rec = Recorder::new(IdentityId::Cor2, Subject::Params(*params), range(1, order));
    for n in 1..=order as u64 {
        let count = coeff(&counts, n);
        let min_summand = fine2_terms(params, n)?.iter().map(|t| t.value()).min();
        let ok = count >= 0 && min_summand.is_none_or(|m| m > 0);
        let mut routes = vec![("quaternary", count)];
        if let Some(m) = min_summand {
            routes.push(("min_summand", m));
        }
        rec.record(n, None, ok, &routes);
    }
    Ok(rec.finish())
}

/// Product and double-sum sides of the two-variable expansion on every
/// certified coefficient.
pub fn verify_andrews(order: usize, half_width: usize) -> Result<VerificationReport> {
    let product = andrews_product(order, half_width)?;
    let sum = andrews_sum(order, half_width)?;
    let trusted = product.trusted_half_width().min(sum.trusted_half_width()) as i64;
    let mut rec = Recorder::new(
        IdentityId::Andrews,
        Subject::Bivariate,
        CheckRange { n_min: 0, n_max: order as u64, order, z_half_width: Some(half_width) },
    );
    for q in 0..=order {
        for e in -trusted..=trusted {
            let a = product.coeff(q, e).expect("trusted window");
            let b = sum.coeff(q, e).expect("trusted window");
            rec.record(q as u64, Some(e), a == b, &[("product", a), ("sum", b)]);
        }
    }
    rec.notes.push(format!("z-exponents checked: |e| <= {trusted}"));
    Ok(rec.finish())
}

/// Every identity over every valid `(p, r)` with `p <= p_max`.
#[derive(Debug, Clone, Serialize)]
pub struct SweepReport {
    pub p_max: u32,
    pub n_max: usize,
    pub status: Status,
    pub cells: usize,
    pub failed_cells: usize,
    pub reports: Vec<VerificationReport>,
}

/// Runs the sweep; cells are evaluated in parallel and keyed, so the output
/// order does not depend on scheduling. The two-variable check runs once at
/// `q`-order `min(n_max, 20)`.
pub fn sweep(p_max: u32, n_max: usize) -> Result<SweepReport> {
    let mut cells: Vec<(IdentityId, Option<FineParams>)> = Vec::new();
    for params in FineParams::grid(p_max) {
        if params.level() == Level::Strong {
            cells.push((IdentityId::Fine1, Some(params)));
            cells.push((IdentityId::Thm1, Some(params)));
            cells.push((IdentityId::Cor1, Some(params)));
        }
        if n_max >= params.r() as usize {
            cells.push((IdentityId::Thm2, Some(params)));
        }
        cells.push((IdentityId::Cor2, Some(params)));
    }
    cells.push((IdentityId::Andrews, None));

    let results: BTreeMap<(IdentityId, Option<FineParams>), Result<VerificationReport>> = cells
        .into_par_iter()
        .map(|(id, params)| {
            let report = match (id, params) {
                (IdentityId::Andrews, _) => {
                    let order = n_max.min(20);
                    verify_andrews(order, 2 * order + 2)
                }
                (id, Some(p)) => verify_one(id, &p, n_max),
                (_, None) => unreachable!("only the bivariate cell has no params"),
            };
            ((id, params), report)
        })
        .collect();

    let mut reports = Vec::with_capacity(results.len());
    for (_, report) in results {
        reports.push(report?);
    }
    let failed_cells = reports.iter().filter(|r| !r.passed()).count();
    Ok(SweepReport {
        p_max,
        n_max,
        status: if failed_cells == 0 { Status::Pass } else { Status::Fail },
        cells: reports.len(),
        failed_cells,
        reports,
    })
}

/// Dispatches a single `(identity, params)` cell.
pub fn verify_one(id: IdentityId, params: &FineParams, order: usize) -> Result<VerificationReport> {
    match id {
        IdentityId::Fine1 => verify_fine1(params, order),
        IdentityId::Fine2 => verify_fine2(params, order),
        IdentityId::Thm1 => verify_thm1(params, order),
        IdentityId::Thm2 => verify_thm2(params, order),
        IdentityId::Cor1 => verify_cor1(params, order),
        IdentityId::Cor2 => verify_cor2(params, order),
        IdentityId::Andrews => Err(Error::InvalidParams("andrews takes no (p, r)".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: u32, r: u32) -> FineParams {
        FineParams::new(p, r).unwrap()
    }

    fn assert_clean(report: &VerificationReport, expected_count: u64) {
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.failure_count, 0);
        assert!(report.first_failure.is_none());
        assert_eq!(report.checked_count, expected_count);
    }

    #[test]
    fn fine1_reports() {
        assert_clean(&verify_fine1(&params(3, 1), 500).unwrap(), 501);
        assert_clean(&verify_fine1(&params(5, 3), 500).unwrap(), 501);
        assert!(FineParams::new(4, 2).is_err());
        assert!(matches!(verify_fine1(&params(3, 2), 10), Err(Error::InvalidParams(_))));
    }

    #[test]
    fn thm1_reports() {
        assert_clean(&verify_thm1(&params(3, 1), 500).unwrap(), 501);
        assert_eq!(fine1_coefficient(&params(3, 1), 3).unwrap(), 0);
        assert_clean(&verify_thm1(&params(9, 5), 200).unwrap(), 201);
        assert_clean(&verify_thm1(&params(2, 1), 500).unwrap(), 501);
    }

    #[test]
    fn thm2_reports() {
        assert_clean(&verify_thm2(&params(3, 1), 500).unwrap(), 500);
        let seq = quaternary_series(&params(3, 1), 3).unwrap();
        assert_eq!(&seq.coeffs()[1..], &[1, 2, 5]);
        assert_clean(&verify_thm2(&params(3, 2), 300).unwrap(), 300);
        assert_clean(&verify_thm2(&params(5, 3), 300).unwrap(), 300);
        let seq = quaternary_series(&params(5, 3), 3).unwrap();
        assert_eq!(&seq.coeffs()[1..], &[0, 0, 1]);
        assert!(verify_thm2(&params(7, 5), 4).is_err());
    }

    #[test]
    fn classify_examples() {
        let c = classify(&params(3, 1), 3).unwrap();
        assert_eq!((c.verdict, c.parity, c.excess_value), (Verdict::Balanced, ParityCounts { even: 1, odd: 1 }, 0));
        let c = classify(&params(3, 1), 4).unwrap();
        assert_eq!((c.verdict, c.parity, c.excess_value), (Verdict::Positive, ParityCounts { even: 2, odd: 0 }, 2));
        let c = classify(&params(3, 1), 0).unwrap();
        assert_eq!((c.verdict, c.parity, c.excess_value), (Verdict::Positive, ParityCounts { even: 1, odd: 0 }, 1));
        assert!(classify(&params(3, 2), 0).is_err());
    }

    #[test]
    fn negative_verdicts_occur() {
        let p = params(5, 1);
        let found = (0..200).any(|n| classify(&p, n).unwrap().verdict == Verdict::Negative);
        assert!(found);
    }

    #[test]
    fn cor2_reports() {
        assert_clean(&verify_cor2(&params(3, 1), 1000).unwrap(), 1000);
        assert_clean(&verify_cor2(&params(7, 4), 1000).unwrap(), 1000);
        assert_clean(&verify_cor2(&params(5, 3), 1000).unwrap(), 1000);
    }

    #[test]
    fn andrews_reports() {
        let r = verify_andrews(20, 42).unwrap();
        assert_clean(&r, 21 * 45);
        assert_clean(&verify_andrews(0, 2).unwrap(), 5);
        assert!(matches!(verify_andrews(5, 5), Err(Error::WindowTooSmall { .. })));
    }

    #[test]
    fn recorder_keeps_first_failure_and_continues() {
        let mut rec = Recorder::new(IdentityId::Fine1, Subject::Bivariate, range(0, 3));
        rec.equal(0, &[("a", 1), ("b", 1)]);
        rec.equal(1, &[("a", 1), ("b", 2)]);
        rec.equal(2, &[("a", 5), ("b", 4)]);
        let report = rec.finish();
        assert_eq!(report.status, Status::Fail);
        assert_eq!(report.failure_count, 2);
        assert_eq!(report.checked_count, 3);
        assert_eq!(report.first_failure.unwrap().n, 1);
    }

    #[test]
    fn sweep_is_deterministic() {
        let a = sweep(7, 60).unwrap();
        let b = sweep(7, 60).unwrap();
        assert_eq!(a.reports, b.reports);
        assert_eq!(a.status, Status::Pass);
        assert_eq!(a.failed_cells, 0);
    }
}
