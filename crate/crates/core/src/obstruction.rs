//! Einstein-metric obstruction predicates.
//!
//! Each rule returns a [`Verdict`] carrying the exact inequality instance it
//! evaluated. Rational thresholds are compared by integer cross-multiplication,
//! and the one irrational constant (π² in Gromov's bound) is handled with
//! certified interval enclosures.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::interval::{pi_enclosure, RatInterval};
use crate::json;
use crate::manifold::{block_invariants, connected_sum_invariants, BuildingBlock, Invariants, ManifoldExpr};
use crate::spinc::{SpinCDescriptor, SwStatus};

/// Working precision at which Gromov comparisons start, in bits.
pub const GROMOV_START_BITS: u32 = 64;
/// Precision cap for Gromov comparisons, in bits.
pub const GROMOV_CAP_BITS: u32 = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ObstructionError {
    #[error("einstein_obstructions/{rule}: hypothesis unmet: {reason}")]
    HypothesisUnmet { rule: Rule, reason: String },
    #[error("einstein_obstructions/Gromov: comparison undecided at {bits} bits")]
    PrecisionExhausted { bits: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Rule {
    HitchinThorpe,
    Gromov,
    LeBrun,
    LeBrunGeneralized,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum VerdictStatus {
    /// No Einstein metric exists.
    Obstructed,
    NotDetermined,
    /// Hitchin–Thorpe equality: obstructed unless flat, K3, Enriques or an
    /// Enriques quotient, none of which can be tested here.
    BorderlineException,
    /// The rule's hypotheses are not met by the inputs.
    HypothesisUnmet,
}

impl fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Less,
    #[serde(rename = "<=")]
    LessEq,
    #[serde(rename = "=")]
    Equal,
    #[serde(rename = ">")]
    Greater,
    #[serde(rename = ">=")]
    GreaterEq,
}

impl Relation {
    fn admits(self, ord: Ordering) -> bool {
        match self {
            Relation::Less => ord == Ordering::Less,
            Relation::LessEq => ord != Ordering::Greater,
            Relation::Equal => ord == Ordering::Equal,
            Relation::Greater => ord == Ordering::Greater,
            Relation::GreaterEq => ord != Ordering::Less,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            Relation::Less => "<",
            Relation::LessEq => "<=",
            Relation::Equal => "=",
            Relation::Greater => ">",
            Relation::GreaterEq => ">=",
        }
    }

    fn from_ordering(ord: Ordering) -> Self {
        match ord {
            Ordering::Less => Relation::Less,
            Ordering::Equal => Relation::Equal,
            Ordering::Greater => Relation::Greater,
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// An exact value or a certified enclosure of one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Quantity {
    Exact(BigRational),
    Enclosure(RatInterval),
}

impl Quantity {
    fn int(v: BigInt) -> Self {
        Quantity::Exact(BigRational::from_integer(v))
    }

    fn bounds(&self) -> (&BigRational, &BigRational) {
        match self {
            Quantity::Exact(v) => (v, v),
            Quantity::Enclosure(i) => (i.lo(), i.hi()),
        }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Quantity::Exact(v) => write!(f, "{v}"),
            Quantity::Enclosure(i) => write!(
                f,
                "[{}, {}]",
                crate::interval::decimal_string(i.lo(), 12),
                crate::interval::decimal_string(i.hi(), 12)
            ),
        }
    }
}

impl Serialize for Quantity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        match self {
            Quantity::Exact(v) => json::Rat(v).serialize(s),
            Quantity::Enclosure(i) => {
                let mut st = s.serialize_struct("Enclosure", 2)?;
                st.serialize_field("lo", &json::Rat(i.lo()))?;
                st.serialize_field("hi", &json::Rat(i.hi()))?;
                st.end()
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Term {
    pub label: String,
    pub value: Quantity,
}

impl Term {
    fn new(label: impl Into<String>, value: Quantity) -> Self {
        Self {
            label: label.into(),
            value,
        }
    }
}

/// `lhs relation rhs`, with the evaluated numbers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub lhs: Term,
    pub relation: Relation,
    pub rhs: Term,
}

impl Certificate {
    /// Re-evaluates the inequality from the recorded numbers. Enclosures must
    /// satisfy the relation at every point.
    pub fn holds(&self) -> bool {
        let (l_lo, l_hi) = self.lhs.value.bounds();
        let (r_lo, r_hi) = self.rhs.value.bounds();
        // every pair (a, b) in the boxes must satisfy a rel b: check extremes
        [(l_lo, r_lo), (l_lo, r_hi), (l_hi, r_lo), (l_hi, r_hi)]
            .iter()
            .all(|(a, b)| self.relation.admits(a.cmp(b)))
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} = {} {} {} = {}",
            self.lhs.label, self.lhs.value, self.relation, self.rhs.label, self.rhs.value
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub rule: Rule,
    pub status: VerdictStatus,
    pub certificate: Option<Certificate>,
    pub notes: String,
}

impl Verdict {
    fn unmet(rule: Rule, reason: impl Into<String>) -> Self {
        Self {
            rule,
            status: VerdictStatus::HypothesisUnmet,
            certificate: None,
            notes: reason.into(),
        }
    }
}

impl From<ObstructionError> for Verdict {
    fn from(err: ObstructionError) -> Self {
        match err {
            ObstructionError::HypothesisUnmet { rule, reason } => Verdict::unmet(rule, reason),
            ObstructionError::PrecisionExhausted { bits } => Verdict {
                rule: Rule::Gromov,
                status: VerdictStatus::NotDetermined,
                certificate: None,
                notes: format!("comparison undecided at {bits} bits"),
            },
        }
    }
}

/// Hitchin–Thorpe: `2e < 3|σ|` rules out Einstein metrics.
pub fn hitchin_thorpe(inv: &Invariants) -> Verdict {
    let lhs = BigInt::from(2) * inv.e();
    let rhs = BigInt::from(3) * inv.sigma().abs();
    let ord = lhs.cmp(&rhs);
    let (status, notes) = match ord {
        Ordering::Less => (VerdictStatus::Obstructed, "e < (3/2)|sigma|: no Einstein metric"),
        // The usual statement prints "e(M)=3/2|σ(M)" with a missing bar; it is
        // the equality case.
        Ordering::Equal => (
            VerdictStatus::BorderlineException,
            "e = (3/2)|sigma|: no Einstein metric unless M is flat, a K3 surface, \
             an Enriques surface, or an Enriques surface modulo a free antiholomorphic involution",
        ),
        Ordering::Greater => (VerdictStatus::NotDetermined, "e > (3/2)|sigma|: inequality satisfied"),
    };
    Verdict {
        rule: Rule::HitchinThorpe,
        status,
        certificate: Some(Certificate {
            lhs: Term::new("2e", Quantity::int(lhs)),
            relation: Relation::from_ordering(ord),
            rhs: Term::new("3|sigma|", Quantity::int(rhs)),
        }),
        notes: notes.into(),
    }
}

/// One Gromov comparison at a fixed precision; `None` when the enclosure
/// straddles the threshold.
pub fn gromov_at_precision(
    inv: &Invariants,
    simplicial_volume: &BigRational,
    bits: u32,
) -> Option<Verdict> {
    let pi = pi_enclosure(bits);
    let pi_sq = pi.square_nonneg();
    let factor = BigRational::from_integer(BigInt::from(2592) * inv.e());
    let lhs = pi_sq.scale(&factor);
    let (status, relation) = if lhs.hi() < simplicial_volume {
        (VerdictStatus::Obstructed, Relation::Less)
    } else if lhs.lo() >= simplicial_volume {
        (VerdictStatus::NotDetermined, Relation::GreaterEq)
    } else {
        return None;
    };
    let notes = match status {
        VerdictStatus::Obstructed => format!("e < ||M||/(2592 pi^2): no Einstein metric (decided at {bits} bits)"),
        _ => format!("e >= ||M||/(2592 pi^2) (decided at {bits} bits)"),
    };
    let value = if lhs.is_exact() {
        Quantity::Exact(lhs.lo().clone())
    } else {
        Quantity::Enclosure(lhs)
    };
    Some(Verdict {
        rule: Rule::Gromov,
        status,
        certificate: Some(Certificate {
            lhs: Term::new("2592 pi^2 e", value),
            relation,
            rhs: Term::new("||M||", Quantity::Exact(simplicial_volume.clone())),
        }),
        notes,
    })
}

/// Gromov: `e < ‖M‖/(2592π²)` rules out Einstein metrics. Precision doubles
/// from [`GROMOV_START_BITS`] to [`GROMOV_CAP_BITS`].
pub fn gromov(inv: &Invariants, simplicial_volume: &BigRational) -> Result<Verdict, ObstructionError> {
    if simplicial_volume.is_negative() {
        return Err(ObstructionError::HypothesisUnmet {
            rule: Rule::Gromov,
            reason: format!("simplicial volume must be non-negative, got {simplicial_volume}"),
        });
    }
    let mut bits = GROMOV_START_BITS;
    loop {
        if let Some(v) = gromov_at_precision(inv, simplicial_volume, bits) {
            return Ok(v);
        }
        if bits >= GROMOV_CAP_BITS {
            return Err(ObstructionError::PrecisionExhausted { bits });
        }
        bits = (bits * 2).min(GROMOV_CAP_BITS);
    }
}

fn lebrun_hypotheses(rule: Rule, base_inv: &Invariants, base_status: SwStatus) -> Result<BigInt, ObstructionError> {
    let c = base_inv.two_e_plus_3sigma();
    if !c.is_positive() {
        return Err(ObstructionError::HypothesisUnmet {
            rule,
            reason: format!("needs 2e+3sigma > 0 on the base, got {c}"),
        });
    }
    if !base_status.is_b_class() {
        return Err(ObstructionError::HypothesisUnmet {
            rule,
            reason: "base spin^c class is neither an SW class nor a B-class".into(),
        });
    }
    Ok(c)
}

fn threshold_verdict(rule: Rule, lhs_label: &str, lhs: BigInt, c: &BigInt, notes: &str) -> Verdict {
    let rhs = BigInt::from(25) * c;
    let obstructed = lhs >= rhs;
    Verdict {
        rule,
        status: if obstructed {
            VerdictStatus::Obstructed
        } else {
            VerdictStatus::NotDetermined
        },
        certificate: Some(Certificate {
            lhs: Term::new(lhs_label, Quantity::int(lhs)),
            relation: if obstructed { Relation::GreaterEq } else { Relation::Less },
            rhs: Term::new("25(2e+3sigma)", Quantity::int(rhs)),
        }),
        notes: if obstructed {
            format!("{notes}: no Einstein metric")
        } else {
            format!("{notes}: threshold not reached")
        },
    }
}

/// LeBrun: for a base with `2e + 3σ > 0` carrying an SW class or B-class,
/// `M # k·~CP2` has no Einstein metric once `57k ≥ 25(2e + 3σ)`.
pub fn lebrun(base_inv: &Invariants, base_status: SwStatus, k: u64) -> Result<Verdict, ObstructionError> {
    let c = lebrun_hypotheses(Rule::LeBrun, base_inv, base_status)?;
    Ok(threshold_verdict(
        Rule::LeBrun,
        "57k",
        BigInt::from(57) * BigInt::from(k),
        &c,
        &format!("k = {k}"),
    ))
}

/// Generalised rule for `M # k·~CP2 # l(S¹×S³)` over a Kähler base whose class
/// is a B-class: obstructed once `57(k + 4l) ≥ 25(2e + 3σ)`.
pub fn lebrun_generalized(
    base_inv: &Invariants,
    base_status: SwStatus,
    k: u64,
    l: u64,
) -> Result<Verdict, ObstructionError> {
    let c = lebrun_hypotheses(Rule::LeBrunGeneralized, base_inv, base_status)?;
    let weight = BigInt::from(k) + BigInt::from(4) * BigInt::from(l);
    Ok(threshold_verdict(
        Rule::LeBrunGeneralized,
        "57(k+4l)",
        BigInt::from(57) * weight,
        &c,
        &format!("k = {k}, l = {l}"),
    ))
}

/// Splits `expr` as `M # k·~CP2 # l(S¹×S³)` (S⁴ summands ignored) when exactly
/// one other block remains.
pub fn kahler_decomposition(expr: &ManifoldExpr) -> Option<(BuildingBlock, u64, u64)> {
    let mut base = None;
    let (mut k, mut l) = (0u64, 0u64);
    for (block, m) in expr.summands() {
        match block {
            BuildingBlock::CP2Bar => k = k.checked_add(*m)?,
            BuildingBlock::S1xS3 => l = l.checked_add(*m)?,
            BuildingBlock::S4 => {}
            other => {
                if base.is_some() || *m != 1 {
                    return None;
                }
                base = Some(other.clone());
            }
        }
    }
    base.map(|b| (b, k, l))
}

/// Runs every rule. Rules whose inputs are missing come back as
/// `HypothesisUnmet` verdicts with an explanatory note.
///
/// `spinc` describes the base of the decomposition `M # k·~CP2 # l(S¹×S³)`.
/// Without it, a Chen base is given its canonical class: a minimal surface of
/// general type has `deg K > 0`.
pub fn evaluate_all(
    expr: &ManifoldExpr,
    spinc: Option<&SpinCDescriptor>,
    simplicial_volume: Option<&BigRational>,
) -> Vec<Verdict> {
    let inv = connected_sum_invariants(expr);
    let mut out = vec![hitchin_thorpe(&inv)];

    out.push(match simplicial_volume {
        Some(v) => gromov(&inv, v).unwrap_or_else(Verdict::from),
        None => Verdict::unmet(Rule::Gromov, "simplicial volume not supplied"),
    });

    let Some((base, k, l)) = kahler_decomposition(expr) else {
        let reason = "expression is not of the form M # k*~CP2 # l*S1xS3 with a single base block";
        out.push(Verdict::unmet(Rule::LeBrun, reason));
        out.push(Verdict::unmet(Rule::LeBrunGeneralized, reason));
        return out;
    };
    let base_inv = block_invariants(&base);
    let status = match (spinc, &base) {
        (Some(d), _) => d.status(),
        (None, BuildingBlock::Chen(_)) => SwStatus::NontrivialSW,
        (None, _) => SwStatus::Unknown,
    };

    out.push(if l == 0 {
        lebrun(&base_inv, status, k).unwrap_or_else(Verdict::from)
    } else {
        Verdict::unmet(
            Rule::LeBrun,
            format!("{l} S1xS3 summand(s): plain rule covers M # k*~CP2 only"),
        )
    });
    out.push(lebrun_generalized(&base_inv, status, k, l).unwrap_or_else(Verdict::from));
    out
}
