//! The flat output record and its serializers. One record per knot; the
//! CSV column order is fixed by the field order here and must not change —
//! downstream diffing relies on byte-stable output.

use crosscap_core::familysearch::{Certificate, SearchReport, SearchSummary};
use crosscap_core::knotmodel::{goeritz_of, FamilySpec};
use crosscap_core::obstruction::{Classification, VerdictStatus};
use serde::{Deserialize, Serialize};

/// Flat, serialization-ready view of one classified knot.
///
/// For cable records the free parameter q rides in the `p` column and `n`
/// is 0 (cables have no twist pair). `certificate` is `three_adic` or
/// `prime_det` for certified obstructions, `l=<root>` for a passing square
/// witness, `-` otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub family: String,
    pub n: i64,
    pub p: i64,
    pub pretzel: String,
    pub det: i64,
    pub sigma: i64,
    pub euler: i64,
    pub gamma4_lo: u8,
    pub gamma4_hi: u8,
    pub verdict: String,
    pub gammac_lo: u8,
    pub gammac_hi: u8,
    pub certificate: String,
}

pub fn verdict_label(status: VerdictStatus) -> &'static str {
    match status {
        VerdictStatus::Obstructed => "obstructed",
        VerdictStatus::NotObstructed => "not_obstructed",
        VerdictStatus::OutOfTheoremDomain => "out_of_domain",
    }
}

pub fn certificate_label(
    certificate: Option<Certificate>,
    classification: &Classification,
) -> String {
    match (certificate, classification.verdict.witness) {
        (Some(Certificate::ThreeAdic), _) => "three_adic".to_string(),
        (Some(Certificate::PrimeDet), _) => "prime_det".to_string(),
        (None, Some(l)) => format!("l={l}"),
        (None, None) => "-".to_string(),
    }
}

impl OutputRecord {
    pub fn new(classification: &Classification, certificate: Option<Certificate>) -> Self {
        let inv = &classification.invariants;
        let (n, p) = match inv.spec {
            FamilySpec::K4 { n, p } | FamilySpec::K4Neg { n, p } | FamilySpec::Km1 { n, p } => {
                (n, p)
            }
            FamilySpec::Cable2 { q } => (0, q),
        };
        OutputRecord {
            family: inv.spec.family_name().to_string(),
            n,
            p,
            pretzel: inv
                .pretzel
                .map_or_else(|| "-".to_string(), |pr| pr.to_string()),
            det: inv.determinant,
            sigma: inv.signature,
            euler: goeritz_of(inv.spec).euler,
            gamma4_lo: inv.gamma4_lower,
            gamma4_hi: inv.gamma4_upper,
            verdict: verdict_label(classification.verdict.status).to_string(),
            gammac_lo: classification.gammac_lower,
            gammac_hi: classification.gammac_upper,
            certificate: certificate_label(certificate, classification),
        }
    }
}

pub fn records_of(report: &SearchReport) -> Vec<OutputRecord> {
    report
        .rows
        .iter()
        .map(|row| OutputRecord::new(&row.classification, row.certificate))
        .collect()
}

/// CSV with the pinned header, one newline-terminated row per record.
pub fn to_csv(records: &[OutputRecord]) -> Result<Vec<u8>, csv::Error> {
    let mut wtr = csv::Writer::from_writer(Vec::new());
    for r in records {
        wtr.serialize(r)?;
    }
    wtr.into_inner().map_err(|e| e.into_error().into())
}

/// Mirror of the summary for JSON reports.
#[derive(Debug, Serialize)]
pub struct JsonSummary {
    pub total: u64,
    pub obstructed: u64,
    pub certified: u64,
    pub not_obstructed: u64,
    pub out_of_domain: u64,
    pub obstructed_density: [u64; 2],
    pub first_certified_n: Option<i64>,
    pub last_certified_n: Option<i64>,
}

impl From<&SearchSummary> for JsonSummary {
    fn from(s: &SearchSummary) -> Self {
        JsonSummary {
            total: s.counts.total,
            obstructed: s.counts.obstructed,
            certified: s.counts.certified,
            not_obstructed: s.counts.not_obstructed,
            out_of_domain: s.counts.out_of_domain,
            obstructed_density: [s.obstructed_density.0, s.obstructed_density.1],
            first_certified_n: s.first_certified_n,
            last_certified_n: s.last_certified_n,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crosscap_core::familysearch::certificate_for;
    use crosscap_core::obstruction::classify;

    fn record_for(spec: FamilySpec) -> OutputRecord {
        OutputRecord::new(&classify(spec), certificate_for(spec))
    }

    fn from_csv(bytes: &[u8]) -> Result<Vec<OutputRecord>, csv::Error> {
        csv::Reader::from_reader(bytes).deserialize().collect()
    }

    #[test]
    fn seven_four_record() {
        let r = record_for(FamilySpec::k4neg(-2, -1).unwrap());
        assert_eq!(r.family, "k4neg");
        assert_eq!((r.n, r.p), (-2, -1));
        assert_eq!(r.pretzel, "P(-3,-1,-3)");
        assert_eq!((r.det, r.sigma, r.euler), (15, -2, 0));
        assert_eq!((r.gamma4_lo, r.gamma4_hi), (1, 1));
        assert_eq!(r.verdict, "obstructed");
        assert_eq!((r.gammac_lo, r.gammac_hi), (2, 3));
        assert_eq!(r.certificate, "-");
    }

    #[test]
    fn witness_and_certificate_labels() {
        let r = record_for(FamilySpec::km1(1, 1).unwrap());
        assert_eq!(r.verdict, "not_obstructed");
        assert_eq!(r.certificate, "l=3");

        let r = record_for(FamilySpec::km1(1, 3).unwrap());
        assert_eq!(r.certificate, "prime_det");

        let r = record_for(FamilySpec::k4(3, 1).unwrap());
        assert_eq!(r.certificate, "three_adic");

        let r = record_for(FamilySpec::km1(0, 3).unwrap());
        assert_eq!(r.verdict, "out_of_domain");
        assert_eq!(r.certificate, "-");

        let r = record_for(FamilySpec::cable2(-7).unwrap());
        assert_eq!((r.n, r.p), (0, -7));
        assert_eq!(r.pretzel, "-");
        assert_eq!(r.certificate, "l=7");
    }

    #[test]
    fn csv_header_is_pinned() {
        let records = vec![record_for(FamilySpec::k4(3, 1).unwrap())];
        let bytes = to_csv(&records).unwrap();
        let text = String::from_utf8(bytes).unwrap();
        let header = text.lines().next().unwrap();
        assert_eq!(
            header,
            "family,n,p,pretzel,det,sigma,euler,gamma4_lo,gamma4_hi,verdict,gammac_lo,gammac_hi,certificate"
        );
        assert!(text.ends_with('\n'));
    }

    #[test]
    fn csv_round_trips() {
        let records: Vec<OutputRecord> = [
            FamilySpec::k4(3, 1).unwrap(),
            FamilySpec::k4neg(-2, -1).unwrap(),
            FamilySpec::km1(1, 3).unwrap(),
            FamilySpec::km1(0, 3).unwrap(),
            FamilySpec::cable2(5).unwrap(),
        ]
        .iter()
        .map(|&s| record_for(s))
        .collect();
        let bytes = to_csv(&records).unwrap();
        let parsed = from_csv(&bytes).unwrap();
        assert_eq!(parsed, records);
    }
}
