//! The concordance-crosscap-1 obstruction.
//!
//! A knot concordant to a crosscap-number-1 knot is concordant to some (2,q)
//! cable, which forces two concordance invariants to match: the signature
//! pins down the admissible q (`sign(q) - q = sigma`), and the Fox–Milnor
//! determinant condition then requires `|q| * det(K)` to be an odd perfect
//! square. [`gc1_verdict`] runs that pipeline; when every admissible product
//! fails the square test the knot is `Obstructed`, certifying that its
//! concordance crosscap number is at least 2. [`theorem_condition`] evaluates
//! the equivalent closed-form conditions straight from the twist parameters
//! as an independent oracle, and [`classify`] assembles invariants, verdict,
//! and concordance-crosscap bounds into one record.

use crate::exactmath::odd_square_root;
use crate::knotmodel::{crosscap_of_pretzel, invariants_of, FamilySpec, KnotInvariants};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ObstructionError {
    #[error("signature {0} is odd; these families only realize even signatures")]
    OddSignature(i64),
    #[error("determinant {0} must be odd")]
    EvenDeterminant(i64),
    #[error("determinant {0} must be positive")]
    NonPositiveDeterminant(i64),
}

/// All odd q with `sign(q) - q = sigma`: the cable parameters a concordant
/// crosscap-1 knot could have.
///
/// `sigma = 0` admits both unknot parameters ±1; otherwise the solution is
/// unique (`1 - sigma` for negative signatures, `-1 - sigma` for positive).
pub fn cable_candidates(sigma: i64) -> Result<Vec<i64>, ObstructionError> {
    if sigma % 2 != 0 {
        return Err(ObstructionError::OddSignature(sigma));
    }
    Ok(match sigma.signum() {
        0 => vec![1, -1],
        -1 => vec![1 - sigma],
        _ => vec![-1 - sigma],
    })
}

/// Fox–Milnor determinant condition for a slice connected sum: if two knots
/// are concordant, the product of their determinants is an odd perfect
/// square. Returns the odd root when the product passes, `None` when the
/// condition obstructs.
pub fn fox_milnor_det_test(d1: i64, d2: i64) -> Result<Option<i64>, ObstructionError> {
    for d in [d1, d2] {
        if d <= 0 {
            return Err(ObstructionError::NonPositiveDeterminant(d));
        }
        if d % 2 == 0 {
            return Err(ObstructionError::EvenDeterminant(d));
        }
    }
    Ok(odd_square_root(d1 as i128 * d2 as i128).map(|r| r as i64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictStatus {
    /// Every admissible cable product fails the square test: the knot's
    /// concordance crosscap number is at least 2.
    Obstructed,
    /// Some admissible product is an odd square; concordance crosscap
    /// number 1 stays possible (the condition is necessary, not sufficient).
    NotObstructed,
    /// The condition is not formulated for these parameters.
    OutOfTheoremDomain,
}

/// One admissible cable parameter and its determinant-product test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CandidateCheck {
    pub q: i64,
    /// `|q| * det(K)` — always odd and positive.
    pub product: i128,
    /// The odd square root of `product`, when it is a perfect square.
    pub root: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionVerdict {
    pub status: VerdictStatus,
    pub candidates: Vec<CandidateCheck>,
    /// The first passing root, when any candidate passes.
    pub witness: Option<i64>,
}

/// Decides the obstruction for one knot.
///
/// Domain: the twist families for any n except `Km1` with `n <= 0` (the
/// condition is only formulated for positive twisting there, and the mirror
/// reduction is deliberately not attempted); cables are their own admissible
/// candidate, so they always come out `NotObstructed`.
pub fn gc1_verdict(inv: &KnotInvariants) -> ObstructionVerdict {
    if let FamilySpec::Km1 { n, .. } = inv.spec {
        if n <= 0 {
            return ObstructionVerdict {
                status: VerdictStatus::OutOfTheoremDomain,
                candidates: Vec::new(),
                witness: None,
            };
        }
    }
    let qs = cable_candidates(inv.signature)
        .expect("family signatures are even by the Goeritz computation");
    let mut candidates = Vec::with_capacity(qs.len());
    let mut witness = None;
    for q in qs {
        let product = q.unsigned_abs() as i128 * inv.determinant as i128;
        let root = odd_square_root(product).map(|r| r as i64);
        if witness.is_none() {
            witness = root;
        }
        candidates.push(CandidateCheck { q, product, root });
    }
    let status = if witness.is_some() {
        VerdictStatus::NotObstructed
    } else {
        VerdictStatus::Obstructed
    };
    ObstructionVerdict {
        status,
        candidates,
        witness,
    }
}

/// The closed-form square conditions evaluated literally from the twist
/// parameters, bypassing signatures and determinants entirely. Serves as an
/// independent oracle for [`gc1_verdict`]: `Some(true)` iff the condition is
/// satisfiable, `None` where no closed form applies (the negative-clasp
/// family, cables, and `Km1` with `n <= 0`).
pub fn theorem_condition(spec: FamilySpec) -> Option<bool> {
    match spec {
        FamilySpec::K4 { n, p } => {
            let (n, p) = (n as i128, p as i128);
            let d = 8 * n - p * p;
            let target = if d < 0 { -d } else { 3 * d };
            Some(odd_square_root(target).is_some())
        }
        FamilySpec::Km1 { n, p } if n >= 1 => {
            let (n, p) = (n as i128, p as i128);
            Some(odd_square_root((2 * n + p * p) * (2 * n + 1)).is_some())
        }
        _ => None,
    }
}

/// Invariants, verdict, and concordance-crosscap bounds for one knot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub invariants: KnotInvariants,
    pub verdict: ObstructionVerdict,
    pub gammac_lower: u8,
    pub gammac_upper: u8,
    /// Where each bound comes from, for report output.
    pub notes: Vec<String>,
}

/// Full classification of one knot.
///
/// Lower bound: 1 when the signature obstructs sliceness, 2 when the cable
/// condition obstructs. Upper bound: the crosscap number of the pretzel
/// presentation (3 with all twists odd, 2 with exactly one even), or the
/// Möbius-band bound 1 for cables (0 for the unknotted ones).
pub fn classify(spec: FamilySpec) -> Classification {
    let invariants = invariants_of(spec).expect("parameter bounds keep determinants inside i64");
    let verdict = gc1_verdict(&invariants);
    let mut notes = Vec::new();

    let mut lower = 0u8;
    if invariants.signature != 0 {
        lower = 1;
        notes.push(format!(
            "nonzero signature {} rules out sliceness, so the concordance crosscap number is at least 1",
            invariants.signature
        ));
    }
    if verdict.status == VerdictStatus::Obstructed {
        lower = 2;
        notes.push(
            "every admissible cable determinant product fails the odd-square test, \
             so the concordance crosscap number is at least 2"
                .to_string(),
        );
    }

    let upper = match (invariants.pretzel.and_then(crosscap_of_pretzel), spec) {
        (Some(g), _) => {
            notes.push(format!(
                "pretzel crosscap number {g} (by twist parities) bounds the concordance crosscap number above"
            ));
            g
        }
        (None, FamilySpec::Cable2 { q }) => {
            if q.abs() == 1 {
                notes.push("unknotted cable: every crosscap-style invariant is 0".to_string());
                0
            } else {
                notes.push(
                    "a (2,q) cable bounds a Möbius band, so all bounds collapse to 1".to_string(),
                );
                1
            }
        }
        (None, _) => unreachable!("every pretzel member has defined twist parities"),
    };

    if matches!(spec, FamilySpec::K4Neg { .. }) {
        notes.push(
            "no closed-form condition for this family; verdict from the generalized \
             signature/cable/determinant pipeline"
                .to_string(),
        );
    }
    if matches!(spec, FamilySpec::Km1 { n, .. } if n <= 0) {
        notes.push("cable condition formulated only for n >= 1; verdict left open".to_string());
    }

    debug_assert!(lower <= upper, "bounds crossed for {spec:?}");
    debug_assert!(lower >= invariants.gamma4_lower);
    Classification {
        invariants,
        verdict,
        gammac_lower: lower,
        gammac_upper: upper,
        notes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verdict_of(spec: FamilySpec) -> ObstructionVerdict {
        gc1_verdict(&invariants_of(spec).unwrap())
    }

    #[test]
    fn cable_candidates_solve_the_signature_equation() {
        assert_eq!(cable_candidates(0).unwrap(), vec![1, -1]);
        assert_eq!(cable_candidates(-2).unwrap(), vec![3]);
        assert_eq!(cable_candidates(2).unwrap(), vec![-3]);
        assert_eq!(cable_candidates(-4).unwrap(), vec![5]);
        assert_eq!(cable_candidates(-2000).unwrap(), vec![2001]);
        assert_eq!(cable_candidates(3), Err(ObstructionError::OddSignature(3)));
        for sigma in (-40..=40).step_by(2) {
            for q in cable_candidates(sigma).unwrap() {
                assert_eq!(q.signum() - q, sigma, "sigma={sigma} q={q}");
                assert!(q % 2 != 0, "q={q}");
            }
        }
    }

    #[test]
    fn fox_milnor_examples() {
        assert_eq!(fox_milnor_det_test(3, 3).unwrap(), Some(3));
        assert_eq!(fox_milnor_det_test(3, 7).unwrap(), None);
        assert_eq!(fox_milnor_det_test(3, 11).unwrap(), None);
        assert_eq!(fox_milnor_det_test(1, 1).unwrap(), Some(1));
        assert_eq!(
            fox_milnor_det_test(4, 3),
            Err(ObstructionError::EvenDeterminant(4))
        );
        assert_eq!(
            fox_milnor_det_test(3, -5),
            Err(ObstructionError::NonPositiveDeterminant(-5))
        );
    }

    #[test]
    fn verdict_examples() {
        // Torus knot T(2,3): product 3*3 = 9 = 3^2.
        let v = verdict_of(FamilySpec::km1(1, 1).unwrap());
        assert_eq!(v.status, VerdictStatus::NotObstructed);
        assert_eq!(v.witness, Some(3));
        assert_eq!(
            v.candidates,
            vec![CandidateCheck {
                q: 3,
                product: 9,
                root: Some(3)
            }]
        );

        // Product 3*11 = 33 strictly between 5^2 and 6^2.
        let v = verdict_of(FamilySpec::km1(1, 3).unwrap());
        assert_eq!(v.status, VerdictStatus::Obstructed);
        assert_eq!(v.witness, None);
        assert_eq!(
            v.candidates,
            vec![CandidateCheck {
                q: 3,
                product: 33,
                root: None
            }]
        );

        // sigma = 0: both unknot candidates, product 9 passes.
        let v = verdict_of(FamilySpec::k4(0, 3).unwrap());
        assert_eq!(v.status, VerdictStatus::NotObstructed);
        assert_eq!(v.witness, Some(3));
        assert_eq!(v.candidates.len(), 2);
        assert_eq!(
            v.candidates[0],
            CandidateCheck {
                q: 1,
                product: 9,
                root: Some(3)
            }
        );

        // sigma = 2: candidate q = -3, product 3*23 = 69, non-square.
        let v = verdict_of(FamilySpec::k4(3, 1).unwrap());
        assert_eq!(v.status, VerdictStatus::Obstructed);
        assert_eq!(
            v.candidates,
            vec![CandidateCheck {
                q: -3,
                product: 69,
                root: None
            }]
        );

        let v = verdict_of(FamilySpec::km1(0, 3).unwrap());
        assert_eq!(v.status, VerdictStatus::OutOfTheoremDomain);
        assert!(v.candidates.is_empty());
        assert_eq!(v.witness, None);
    }

    #[test]
    fn seven_four_is_obstructed_through_candidate_three() {
        let v = verdict_of(FamilySpec::k4neg(-2, -1).unwrap());
        assert_eq!(v.status, VerdictStatus::Obstructed);
        assert_eq!(
            v.candidates,
            vec![CandidateCheck {
                q: 3,
                product: 45,
                root: None
            }]
        );
    }

    #[test]
    fn cables_are_their_own_witnesses() {
        for q in [-9i64, -3, -1, 1, 3, 5, 11, 999] {
            let v = verdict_of(FamilySpec::cable2(q).unwrap());
            assert_eq!(v.status, VerdictStatus::NotObstructed, "q={q}");
            assert_eq!(v.witness, Some(q.abs()), "q={q}");
        }
    }

    #[test]
    fn theorem_condition_examples() {
        // p^2 - 8n = 25 - 16 = 9 = 3^2.
        assert_eq!(theorem_condition(FamilySpec::k4(2, 5).unwrap()), Some(true));
        // (8+9)(8+1) = 153 between 12^2 and 13^2.
        assert_eq!(
            theorem_condition(FamilySpec::km1(4, 3).unwrap()),
            Some(false)
        );
        assert_eq!(theorem_condition(FamilySpec::cable2(7).unwrap()), None);
        assert_eq!(theorem_condition(FamilySpec::km1(0, 3).unwrap()), None);
        assert_eq!(theorem_condition(FamilySpec::k4neg(-2, -1).unwrap()), None);
    }

    #[test]
    fn verdict_agrees_with_literal_conditions_on_a_grid() {
        for p in (-19..=19i64).step_by(2) {
            for n in -200..=200i64 {
                let spec = FamilySpec::k4(n, p).unwrap();
                let v = verdict_of(spec);
                let satisfiable = v.status == VerdictStatus::NotObstructed;
                assert_eq!(
                    theorem_condition(spec),
                    Some(satisfiable),
                    "K4 n={n} p={p} verdict={v:?}"
                );
            }
            for n in 1..=200i64 {
                let spec = FamilySpec::km1(n, p).unwrap();
                let v = verdict_of(spec);
                let satisfiable = v.status == VerdictStatus::NotObstructed;
                assert_eq!(
                    theorem_condition(spec),
                    Some(satisfiable),
                    "Km1 n={n} p={p} verdict={v:?}"
                );
            }
        }
    }

    #[test]
    fn candidate_products_are_odd_positive_and_witnessed() {
        let specs = (-50..=50i64)
            .flat_map(|n| {
                [-7i64, -3, -1, 1, 3, 7].into_iter().flat_map(move |p| {
                    [
                        FamilySpec::k4(n, p).unwrap(),
                        FamilySpec::k4neg(n, p).unwrap(),
                        FamilySpec::km1(n, p).unwrap(),
                    ]
                })
            })
            .chain(
                [-15i64, -1, 1, 15]
                    .into_iter()
                    .map(|q| FamilySpec::cable2(q).unwrap()),
            );
        for spec in specs {
            let v = verdict_of(spec);
            for c in &v.candidates {
                assert!(c.product > 0 && c.product % 2 == 1, "spec={spec:?} c={c:?}");
                if let Some(r) = c.root {
                    assert_eq!(r as i128 * r as i128, c.product, "spec={spec:?}");
                    assert_eq!(r % 2, 1, "spec={spec:?}");
                }
            }
            let any_root = v.candidates.iter().any(|c| c.root.is_some());
            match v.status {
                VerdictStatus::NotObstructed => {
                    assert!(any_root);
                    let w = v.witness.unwrap();
                    assert!(v.candidates.iter().any(|c| c.root == Some(w)));
                }
                VerdictStatus::Obstructed => {
                    assert!(!any_root && !v.candidates.is_empty());
                    assert_eq!(v.witness, None);
                }
                VerdictStatus::OutOfTheoremDomain => {
                    assert!(v.candidates.is_empty());
                }
            }
        }
    }

    #[test]
    fn torus_knots_pass_with_the_expected_witness() {
        for n in 1..=500i64 {
            for p in [1i64, -1] {
                let v = verdict_of(FamilySpec::km1(n, p).unwrap());
                assert_eq!(v.status, VerdictStatus::NotObstructed, "n={n} p={p}");
                assert_eq!(v.witness, Some(2 * n + 1), "n={n} p={p}");
            }
        }
    }

    #[test]
    fn classification_examples() {
        let c = classify(FamilySpec::k4neg(-2, -1).unwrap());
        assert_eq!(c.invariants.determinant, 15);
        assert_eq!(c.invariants.signature, -2);
        assert_eq!(c.verdict.status, VerdictStatus::Obstructed);
        assert_eq!(
            (c.invariants.gamma4_lower, c.invariants.gamma4_upper),
            (1, 1)
        );
        assert_eq!((c.gammac_lower, c.gammac_upper), (2, 3));

        let c = classify(FamilySpec::km1(1, 3).unwrap());
        assert_eq!((c.gammac_lower, c.gammac_upper), (2, 2));

        let c = classify(FamilySpec::cable2(7).unwrap());
        assert_eq!(c.verdict.status, VerdictStatus::NotObstructed);
        assert_eq!((c.gammac_lower, c.gammac_upper), (1, 1));

        for q in [1i64, -1] {
            let c = classify(FamilySpec::cable2(q).unwrap());
            assert_eq!((c.gammac_lower, c.gammac_upper), (0, 0));
        }

        let c = classify(FamilySpec::km1(0, 3).unwrap());
        assert_eq!(c.verdict.status, VerdictStatus::OutOfTheoremDomain);
        assert_eq!((c.gammac_lower, c.gammac_upper), (0, 2));
    }

    #[test]
    fn classification_bounds_are_ordered_on_a_grid() {
        for n in -40..=40i64 {
            for p in [-9i64, -3, -1, 1, 3, 9] {
                for spec in [
                    FamilySpec::k4(n, p).unwrap(),
                    FamilySpec::k4neg(n, p).unwrap(),
                    FamilySpec::km1(n, p).unwrap(),
                ] {
                    let c = classify(spec);
                    assert!(
                        c.invariants.gamma4_lower <= c.invariants.gamma4_upper,
                        "spec={spec:?}"
                    );
                    assert!(c.invariants.gamma4_upper <= c.gammac_upper, "spec={spec:?}");
                    assert!(c.gammac_lower <= c.gammac_upper, "spec={spec:?}");
                    assert!(c.gammac_lower >= c.invariants.gamma4_lower, "spec={spec:?}");
                    if c.verdict.status == VerdictStatus::Obstructed {
                        assert!(c.gammac_lower >= 2, "spec={spec:?}");
                    }
                    assert!(!c.notes.is_empty(), "spec={spec:?}");
                }
            }
        }
    }

    #[test]
    fn sigma_zero_square_determinants_pass() {
        // Whenever sigma = 0 and det is an odd square the q = 1 candidate
        // passes immediately.
        for spec in [
            FamilySpec::k4(0, 3).unwrap(),  // det 9
            FamilySpec::k4(0, 5).unwrap(),  // det 25
            FamilySpec::k4(-2, 3).unwrap(), // det 25
            FamilySpec::k4(2, 5).unwrap(),  // det 9
        ] {
            let v = verdict_of(spec);
            assert_eq!(v.status, VerdictStatus::NotObstructed, "spec={spec:?}");
        }
    }
}
