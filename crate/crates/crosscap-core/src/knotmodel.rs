//! Knot families, their spanning-surface presentations, and invariants.
//!
//! Three one-parameter pretzel families and the (2,q) cable family are
//! modelled by small symmetric Goeritz matrices together with the normal
//! Euler number of the presenting surface. Signatures come from the
//! Gordon–Litherland formula `sigma = sign(G) + e/2`, determinants from the
//! exact Goeritz determinant, and four-ball genus-style bounds from the
//! signature. Everything downstream (obstruction verdicts, sweeps) consumes
//! the [`KnotInvariants`] produced here.

use crate::exactmath::{det_exact, inertia, SymMatrix};
use num_traits::{Signed, ToPrimitive};
use std::fmt;
use thiserror::Error;

/// Twist counts stay far below these bounds in practice; enforcing them
/// keeps every derived quantity (matrix entries, determinants, candidate
/// products) inside `i64`/`i128` with room to spare.
pub const MAX_N: i64 = 1_000_000_000_000;
pub const MAX_ODD_PARAM: i64 = 1_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum KnotModelError {
    #[error("parameter {name} = {value} must be odd")]
    EvenParameter { name: &'static str, value: i64 },
    #[error("parameter {name} = {value} exceeds |{name}| <= {bound}")]
    ParameterOutOfRange {
        name: &'static str,
        value: i64,
        bound: i64,
    },
    #[error("determinant {0} does not fit the invariant record")]
    DeterminantOverflow(String),
}

/// One knot, named by its family and twist parameters.
///
/// `K4 { n, p }` is the pretzel presented by clasp twists (4, 2n) and band
/// parameter p; `K4Neg` is its mirror-clasp variant with leading twist -4;
/// `Km1` has leading twist -1 and a non-orientable presenting surface;
/// `Cable2 { q }` is the (2,q) cable of the unknot bounded by a Möbius band.
/// `p` and `q` must be odd (evenness changes the link type, so it is
/// rejected rather than normalized).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    K4 { n: i64, p: i64 },
    K4Neg { n: i64, p: i64 },
    Km1 { n: i64, p: i64 },
    Cable2 { q: i64 },
}

fn check_odd(name: &'static str, value: i64) -> Result<(), KnotModelError> {
    if value % 2 == 0 {
        return Err(KnotModelError::EvenParameter { name, value });
    }
    if value.abs() > MAX_ODD_PARAM {
        return Err(KnotModelError::ParameterOutOfRange {
            name,
            value,
            bound: MAX_ODD_PARAM,
        });
    }
    Ok(())
}

fn check_n(n: i64) -> Result<(), KnotModelError> {
    if n.abs() > MAX_N {
        return Err(KnotModelError::ParameterOutOfRange {
            name: "n",
            value: n,
            bound: MAX_N,
        });
    }
    Ok(())
}

impl FamilySpec {
    pub fn k4(n: i64, p: i64) -> Result<Self, KnotModelError> {
        check_n(n)?;
        check_odd("p", p)?;
        Ok(FamilySpec::K4 { n, p })
    }

    pub fn k4neg(n: i64, p: i64) -> Result<Self, KnotModelError> {
        check_n(n)?;
        check_odd("p", p)?;
        Ok(FamilySpec::K4Neg { n, p })
    }

    pub fn km1(n: i64, p: i64) -> Result<Self, KnotModelError> {
        check_n(n)?;
        check_odd("p", p)?;
        Ok(FamilySpec::Km1 { n, p })
    }

    pub fn cable2(q: i64) -> Result<Self, KnotModelError> {
        check_odd("q", q)?;
        Ok(FamilySpec::Cable2 { q })
    }

    /// Family tag as used in output records.
    pub fn family_name(&self) -> &'static str {
        match self {
            FamilySpec::K4 { .. } => "k4",
            FamilySpec::K4Neg { .. } => "k4neg",
            FamilySpec::Km1 { .. } => "km1",
            FamilySpec::Cable2 { .. } => "cable2",
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::K4 { n, p } => write!(f, "K(4,2n,p) with n={n}, p={p}"),
            FamilySpec::K4Neg { n, p } => write!(f, "K(-4,2n,p) with n={n}, p={p}"),
            FamilySpec::Km1 { n, p } => write!(f, "K(-1,2n,p) with n={n}, p={p}"),
            FamilySpec::Cable2 { q } => write!(f, "(2,{q}) cable"),
        }
    }
}

/// Standard three-strand pretzel parameters `P(q1,q2,q3)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PretzelParams {
    pub q1: i64,
    pub q2: i64,
    pub q3: i64,
}

impl fmt::Display for PretzelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({},{},{})", self.q1, self.q2, self.q3)
    }
}

/// A Goeritz matrix together with the surface data the signature formula
/// needs: the normal Euler number `e` and whether the checkerboard surface
/// is orientable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoeritzPresentation {
    pub matrix: SymMatrix,
    pub euler: i64,
    pub orientable: bool,
}

/// Computed invariants of one knot, the unit every sweep row is built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnotInvariants {
    pub spec: FamilySpec,
    pub pretzel: Option<PretzelParams>,
    /// Knot determinant: |det| of the Goeritz matrix. Positive and odd for
    /// every knot here.
    pub determinant: i64,
    /// Gordon–Litherland signature.
    pub signature: i64,
    pub gamma4_lower: u8,
    pub gamma4_upper: u8,
}

/// The Goeritz presentation of the family's standard checkerboard surface.
///
/// The pretzel families share the shape `[[a, -p], [-p, 2n]]` with `a` the
/// leading clasp twist. For `a = 4` and `a = -4` the surface is orientable
/// and `e = 0`; for `a = -1` it is a once-punctured Klein-bottle piece with
/// `e = -4n`. The (2,q) cable is bounded by a Möbius band whose Goeritz
/// matrix is the 1x1 `(q)` with `e = -2q`.
pub fn goeritz_of(spec: FamilySpec) -> GoeritzPresentation {
    match spec {
        FamilySpec::K4 { n, p } => GoeritzPresentation {
            matrix: SymMatrix::from_rows(&[vec![4, -p], vec![-p, 2 * n]]).unwrap(),
            euler: 0,
            orientable: true,
        },
        FamilySpec::K4Neg { n, p } => GoeritzPresentation {
            matrix: SymMatrix::from_rows(&[vec![-4, -p], vec![-p, 2 * n]]).unwrap(),
            euler: 0,
            orientable: true,
        },
        FamilySpec::Km1 { n, p } => GoeritzPresentation {
            matrix: SymMatrix::from_rows(&[vec![-1, -p], vec![-p, 2 * n]]).unwrap(),
            euler: -4 * n,
            orientable: false,
        },
        FamilySpec::Cable2 { q } => GoeritzPresentation {
            matrix: SymMatrix::from_rows(&[vec![q]]).unwrap(),
            euler: -2 * q,
            orientable: false,
        },
    }
}

/// Standard pretzel parameters for the families that are pretzel knots.
///
/// `K(a,2n,p)` with leading clasp twist `a` is the three-strand pretzel
/// `P(a-p, p, 2n-p)`; the (2,q) cable is not one, so it has none. Sanity
/// check: the pretzel determinant `|q1 q2 + q1 q3 + q2 q3|` reproduces the
/// absolute Goeritz determinant (`|8n - p^2|`, `|8n + p^2|`, `|2n + p^2|`
/// for a = 4, -4, -1).
pub fn pretzel_of(spec: FamilySpec) -> Option<PretzelParams> {
    let (a, n, p) = match spec {
        FamilySpec::K4 { n, p } => (4, n, p),
        FamilySpec::K4Neg { n, p } => (-4, n, p),
        FamilySpec::Km1 { n, p } => (-1, n, p),
        FamilySpec::Cable2 { .. } => return None,
    };
    Some(PretzelParams {
        q1: a - p,
        q2: p,
        q3: 2 * n - p,
    })
}

/// Gordon–Litherland signature: `sign(G_F) + e(F)/2`, exact.
pub fn signature_of(spec: FamilySpec) -> i64 {
    let g = goeritz_of(spec);
    debug_assert_eq!(g.euler % 2, 0);
    inertia(&g.matrix).signature() + g.euler / 2
}

/// Knot determinant: absolute Goeritz determinant, exact.
pub fn determinant_of(spec: FamilySpec) -> Result<i64, KnotModelError> {
    let d = det_exact(&goeritz_of(spec).matrix).abs();
    d.to_i64()
        .ok_or_else(|| KnotModelError::DeterminantOverflow(d.to_string()))
}

/// Bounds on the four-ball (concordance) crosscap number.
///
/// Every family member bounds a Möbius band or once-punctured Klein bottle
/// in the four-ball, so the upper bound is 1 except for the unknotted
/// cables `q = ±1`, which bound a disk. A nonzero signature obstructs
/// sliceness, forcing the lower bound to 1.
pub fn gamma4_bounds(spec: FamilySpec, signature: i64) -> (u8, u8) {
    let upper = match spec {
        FamilySpec::Cable2 { q } if q.abs() == 1 => 0,
        _ => 1,
    };
    let lower = u8::from(signature != 0).min(upper);
    (lower, upper)
}

/// Classical crosscap number of a three-strand pretzel knot, when the strand
/// parities pin it down: 3 when all three twists are odd, 2 when exactly one
/// is even. Mixed cases with two or three even twists are links, not knots.
pub fn crosscap_of_pretzel(p: PretzelParams) -> Option<u8> {
    let evens = [p.q1, p.q2, p.q3].iter().filter(|q| *q % 2 == 0).count();
    match evens {
        0 => Some(3),
        1 => Some(2),
        _ => None,
    }
}

/// Full invariant record for one knot.
pub fn invariants_of(spec: FamilySpec) -> Result<KnotInvariants, KnotModelError> {
    let determinant = determinant_of(spec)?;
    let signature = signature_of(spec);
    let (gamma4_lower, gamma4_upper) = gamma4_bounds(spec, signature);
    Ok(KnotInvariants {
        spec,
        pretzel: pretzel_of(spec),
        determinant,
        signature,
        gamma4_lower,
        gamma4_upper,
    })
}
