//! Parameter sweeps and certified infinite subfamilies.
//!
//! A sweep classifies every knot in an n-range of one family and attaches
//! certificates to the rows where a closed-form argument proves the
//! obstruction without any square-root search: a 3-adic valuation argument
//! for the positive-clasp family (`3` divides exactly one of `8n` and `p`,
//! forcing odd valuation in `3(8n-p^2)`), and a primality argument for the
//! `Km1` family (`2n+p^2` prime exceeds `2n+1`, so it appears to odd
//! multiplicity in the product). Each certificate is a finite witness of the
//! corresponding infinite-subfamily claim: multiples of 3, respectively
//! primes in an arithmetic progression, keep producing certified rows for
//! arbitrarily large n.

use crate::exactmath::is_prime;
use crate::knotmodel::{FamilySpec, KnotModelError};
use crate::obstruction::{classify, Classification, VerdictStatus};
use rayon::prelude::*;
use thiserror::Error;

/// Reports hold all rows in memory; larger scans should shard the range.
pub const MAX_SWEEP_SPAN: i64 = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error(transparent)]
    Model(#[from] KnotModelError),
    #[error("empty range: n_min = {n_min} exceeds n_max = {n_max}")]
    EmptyRange { n_min: i64, n_max: i64 },
    #[error("range spans {span} values, above the in-memory report cap {MAX_SWEEP_SPAN}")]
    RangeTooLarge { span: u64 },
    #[error("the Km1 condition requires n >= 1, got n_min = {0}")]
    TwistOutOfDomain(i64),
    #[error("no certificate predicate exists for the negative-clasp family")]
    CertifyUnsupported,
    #[error("certification for Km1 requires p != ±1 (those members are torus knots)")]
    CertifyTorusCable,
    #[error("3-adic certificate requires 8n - p^2 > 0, got n = {n}, p = {p}")]
    WrongSignForThreeAdic { n: i64, p: i64 },
}

/// Families a sweep can range over (cables have no free n).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchFamily {
    K4,
    K4Neg,
    Km1,
}

impl SearchFamily {
    fn spec_for(self, n: i64, p: i64) -> Result<FamilySpec, KnotModelError> {
        match self {
            SearchFamily::K4 => FamilySpec::k4(n, p),
            SearchFamily::K4Neg => FamilySpec::k4neg(n, p),
            SearchFamily::Km1 => FamilySpec::km1(n, p),
        }
    }
}

/// A validated sweep request: family, odd p, inclusive n-range, and whether
/// to keep only certified rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchQuery {
    pub family: SearchFamily,
    pub p: i64,
    pub n_min: i64,
    pub n_max: i64,
    pub certify_only: bool,
}

impl SearchQuery {
    pub fn new(
        family: SearchFamily,
        p: i64,
        n_min: i64,
        n_max: i64,
        certify_only: bool,
    ) -> Result<Self, SearchError> {
        if n_min > n_max {
            return Err(SearchError::EmptyRange { n_min, n_max });
        }
        // Delegates p-oddity and magnitude checks to the family constructors.
        family.spec_for(n_min, p)?;
        family.spec_for(n_max, p)?;
        let span = n_max.abs_diff(n_min) + 1;
        if span > MAX_SWEEP_SPAN as u64 {
            return Err(SearchError::RangeTooLarge { span });
        }
        if family == SearchFamily::Km1 && n_min < 1 {
            return Err(SearchError::TwistOutOfDomain(n_min));
        }
        if certify_only {
            match family {
                SearchFamily::K4Neg => return Err(SearchError::CertifyUnsupported),
                SearchFamily::Km1 if p.abs() == 1 => return Err(SearchError::CertifyTorusCable),
                _ => {}
            }
        }
        Ok(Self {
            family,
            p,
            n_min,
            n_max,
            certify_only,
        })
    }
}

/// Closed-form obstruction certificates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    /// `3(8n-p^2)` has odd 3-adic valuation, so it is never a square.
    ThreeAdic,
    /// `2n+p^2` is prime and exceeds `2n+1`, so the product is never a square.
    PrimeDet,
}

/// 3-adic certificate for the positive-clasp family.
///
/// Requires `8n - p^2 > 0` (the branch whose condition carries the factor
/// 3). True iff 3 divides exactly one of `8n` and `p`; then
/// `v_3(3(8n-p^2)) = 1`, which is odd, so the square condition fails for
/// this n — and keeps failing on the whole arithmetic progression.
pub fn certify_k4(p: i64, n: i64) -> Result<bool, SearchError> {
    let (ni, pi) = (n as i128, p as i128);
    if 8 * ni - pi * pi <= 0 {
        return Err(SearchError::WrongSignForThreeAdic { n, p });
    }
    // 3 | 8n iff 3 | n.
    Ok((n % 3 == 0) != (p % 3 == 0))
}

/// Primality certificate for the `Km1` family.
///
/// Requires `n >= 1` and `p != ±1`. True iff `2n + p^2` is prime; the prime
/// is larger than the cofactor `2n + 1` (since `p^2 > 1`), so it divides the
/// product exactly once and the product cannot be a square.
pub fn certify_km1(p: i64, n: i64) -> Result<bool, SearchError> {
    if p.abs() == 1 {
        return Err(SearchError::CertifyTorusCable);
    }
    if n < 1 {
        return Err(SearchError::TwistOutOfDomain(n));
    }
    Ok(is_prime(2 * n + p * p))
}

/// One sweep row: the classification of the family member at this n,
/// plus its certificate when a closed-form argument applies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchRow {
    pub n: i64,
    pub classification: Classification,
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchCounts {
    pub total: u64,
    pub obstructed: u64,
    pub certified: u64,
    pub not_obstructed: u64,
    pub out_of_domain: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub query: SearchQuery,
    pub rows: Vec<SearchRow>,
    pub counts: SearchCounts,
}

/// The certificate a knot earns, when its family's closed-form argument
/// applies and fires. Single source of truth for sweeps and one-off
/// classification alike.
pub fn certificate_for(spec: FamilySpec) -> Option<Certificate> {
    match spec {
        FamilySpec::K4 { n, p } => {
            let (ni, pi) = (n as i128, p as i128);
            if 8 * ni - pi * pi > 0 && certify_k4(p, n).unwrap() {
                return Some(Certificate::ThreeAdic);
            }
            None
        }
        FamilySpec::Km1 { n, p } if n >= 1 && p.abs() != 1 => {
            certify_km1(p, n).unwrap().then_some(Certificate::PrimeDet)
        }
        _ => None,
    }
}

fn build_row(query: &SearchQuery, n: i64) -> SearchRow {
    let spec = query
        .family
        .spec_for(n, query.p)
        .expect("query validation covers the whole range");
    SearchRow {
        n,
        classification: classify(spec),
        certificate: certificate_for(spec),
    }
}

/// Classifies every n in the query's range, in ascending order.
///
/// Row computations are pure and run in parallel; the ordered collect makes
/// the report — and anything serialized from it — independent of the thread
/// count.
pub fn sweep(query: &SearchQuery) -> SearchReport {
    let ns: Vec<i64> = (query.n_min..=query.n_max).collect();
    let rows: Vec<SearchRow> = ns
        .par_iter()
        .filter_map(|&n| {
            let row = build_row(query, n);
            (!query.certify_only || row.certificate.is_some()).then_some(row)
        })
        .collect();
    let mut counts = SearchCounts {
        total: rows.len() as u64,
        ..SearchCounts::default()
    };
    for row in &rows {
        match row.classification.verdict.status {
            VerdictStatus::Obstructed => counts.obstructed += 1,
            VerdictStatus::NotObstructed => counts.not_obstructed += 1,
            VerdictStatus::OutOfTheoremDomain => counts.out_of_domain += 1,
        }
        if row.certificate.is_some() {
            counts.certified += 1;
        }
    }
    SearchReport {
        query: *query,
        rows,
        counts,
    }
}

/// Headline numbers of a report, exact: counts, obstructed density as a
/// (numerator, denominator) pair, and the certified frontier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchSummary {
    pub counts: SearchCounts,
    pub obstructed_density: (u64, u64),
    pub first_certified_n: Option<i64>,
    pub last_certified_n: Option<i64>,
}

pub fn summarize(report: &SearchReport) -> SearchSummary {
    let certified = |row: &&SearchRow| row.certificate.is_some();
    SearchSummary {
        counts: report.counts,
        obstructed_density: (report.counts.obstructed, report.counts.total),
        first_certified_n: report.rows.iter().find(certified).map(|r| r.n),
        last_certified_n: report.rows.iter().rev().find(certified).map(|r| r.n),
    }
}
