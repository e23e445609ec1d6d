//! Spin^c descriptors and their status under blow-up and S¹×S³ sums.
//!
//! Only c₁² and the Seiberg–Witten / B-class status are tracked. Status moves
//! through a conservative lattice: the rules below can upgrade `Unknown`
//! (starting from a Kähler canonical class) but never downgrade.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::json;
use crate::manifold::{mkl_invariants, Invariants};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SwError {
    #[error("sw_structures: c1^2 = {c1_sq} is not congruent to 2e+3sigma = {two_e_plus_3sigma} mod 4, formal dimension is not an integer")]
    NonIntegralDimension {
        c1_sq: BigInt,
        two_e_plus_3sigma: BigInt,
    },
    #[error("sw_structures: canonical class needs c1^2 = 2e+3sigma = {expected}, got {c1_sq}")]
    CanonicalMismatch { c1_sq: BigInt, expected: BigInt },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum SwStatus {
    Unknown,
    /// Non-trivial Seiberg–Witten invariant.
    NontrivialSW,
    /// Moduli space represents a non-trivial bordism class.
    BClass,
    /// B-class whose Seiberg–Witten invariant vanishes.
    BClassTrivialSW,
}

impl SwStatus {
    /// Whether the LeBrun-type estimates apply (SW class or B-class).
    pub fn is_b_class(self) -> bool {
        !matches!(self, SwStatus::Unknown)
    }
}

impl fmt::Display for SwStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `d = (c₁² − (2e + 3σ))/4`.
pub fn formal_dimension(c1_sq: &BigInt, inv: &Invariants) -> Result<BigInt, SwError> {
    let two_e_plus_3sigma = inv.two_e_plus_3sigma();
    let (q, r) = (c1_sq - &two_e_plus_3sigma).div_rem(&BigInt::from(4));
    if !r.is_zero() {
        return Err(SwError::NonIntegralDimension {
            c1_sq: c1_sq.clone(),
            two_e_plus_3sigma,
        });
    }
    Ok(q)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinCDescriptor {
    c1_sq: BigInt,
    dimension: BigInt,
    status: SwStatus,
    provenance: Vec<String>,
    holonomy_count: Option<i64>,
    // S¹×S³ summands added since the class was a non-trivial SW class.
    sums_since_sw: Option<u64>,
}

impl SpinCDescriptor {
    /// A class about which nothing is known beyond c₁².
    pub fn unknown(c1_sq: impl Into<BigInt>, inv: &Invariants) -> Result<Self, SwError> {
        let c1_sq = c1_sq.into();
        let dimension = formal_dimension(&c1_sq, inv)?;
        Ok(Self {
            c1_sq,
            dimension,
            status: SwStatus::Unknown,
            provenance: vec!["declared: no Seiberg-Witten information".into()],
            holonomy_count: None,
            sums_since_sw: None,
        })
    }

    pub fn c1_sq(&self) -> &BigInt {
        &self.c1_sq
    }

    /// Formal dimension on the manifold this descriptor was last moved to.
    pub fn dimension(&self) -> &BigInt {
        &self.dimension
    }

    pub fn status(&self) -> SwStatus {
        self.status
    }

    pub fn provenance(&self) -> &[String] {
        &self.provenance
    }

    pub fn holonomy_count(&self) -> Option<i64> {
        self.holonomy_count
    }
}

impl Serialize for SpinCDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SpinCDescriptor", 5)?;
        st.serialize_field("c1_sq", &json::Int(&self.c1_sq))?;
        st.serialize_field("status", &self.status)?;
        st.serialize_field("d", &json::Int(&self.dimension))?;
        st.serialize_field("provenance", &self.provenance)?;
        if let Some(h) = self.holonomy_count {
            st.serialize_field("holonomy_count", &h)?;
        } else {
            st.skip_field("holonomy_count")?;
        }
        st.end()
    }
}

/// Canonical spin^c structure of a Kähler surface.
///
/// With `deg K > 0` the perturbed equations have exactly one solution, so the
/// class has non-trivial SW invariant. Otherwise only reducible solutions
/// exist and nothing is concluded.
pub fn canonical_spinc_of_kahler(
    inv: &Invariants,
    c1_sq: &BigInt,
    deg_k_positive: bool,
) -> Result<SpinCDescriptor, SwError> {
    let expected = inv.two_e_plus_3sigma();
    if *c1_sq != expected {
        return Err(SwError::CanonicalMismatch {
            c1_sq: c1_sq.clone(),
            expected,
        });
    }
    let (status, note, sums) = if deg_k_positive {
        (
            SwStatus::NontrivialSW,
            "canonical class, deg K>0, #M=1: non-trivial SW invariant",
            Some(0),
        )
    } else {
        (
            SwStatus::Unknown,
            "canonical class, deg K<=0: only reducible solutions, no conclusion",
            None,
        )
    };
    Ok(SpinCDescriptor {
        c1_sq: c1_sq.clone(),
        dimension: BigInt::zero(),
        status,
        provenance: vec![note.into()],
        holonomy_count: None,
        sums_since_sw: sums,
    })
}

/// Blow up `k` times: `c₁ ↦ c₁ + E₁ + … + E_k`, so c₁² drops by `k` while d is
/// unchanged. Status carries over.
pub fn blow_up(d: &SpinCDescriptor, inv: &Invariants, k: u64) -> (SpinCDescriptor, Invariants) {
    if k == 0 {
        return (d.clone(), inv.clone());
    }
    let mut out = d.clone();
    out.c1_sq -= BigInt::from(k);
    let new_inv = mkl_invariants(inv, k, 0);
    let mut note = format!("blow-up x{k}: c1 += E_1+...+E_{k}, c1^2 -= {k}");
    if d.status != SwStatus::Unknown {
        note.push_str("; status kept (Kahler base asserted by caller)");
    }
    out.provenance.push(note);
    (out, new_inv)
}

/// Connected sum with `l` copies of S¹×S³: c₁² unchanged, d grows by `l`.
///
/// Starting from a non-trivial SW class, one summand gives a B-class with
/// holonomy count 1, two summands a B-class with vanishing SW invariant, and
/// three or more a B-class by iterating the one-summand gluing. `l = 0` is the
/// identity.
pub fn s1s3_sum(d: &SpinCDescriptor, inv: &Invariants, l: u64) -> (SpinCDescriptor, Invariants) {
    if l == 0 {
        return (d.clone(), inv.clone());
    }
    let mut out = d.clone();
    out.dimension += BigInt::from(l);
    let new_inv = mkl_invariants(inv, 0, l);
    out.provenance
        .push(format!("S1xS3 sum x{l}: c1^2 unchanged, d += {l}"));
    if let Some(prev) = d.sums_since_sw {
        let total = prev + l;
        out.sums_since_sw = Some(total);
        let (status, hol, note) = match total {
            1 => (
                SwStatus::BClass,
                Some(1),
                "one S1xS3 summand on an SW class: B-class, SW_theta = 1 for every theta",
            ),
            2 => (
                SwStatus::BClassTrivialSW,
                None,
                "two S1xS3 summands on an SW class: B-class with trivial SW invariant",
            ),
            _ => (
                SwStatus::BClass,
                None,
                "l>=3: B-class by iterated S1xS3 gluing, SW invariant unspecified",
            ),
        };
        if d.status != SwStatus::NontrivialSW {
            out.provenance
                .push(format!("B-class input kept as B-class ({} summands in total)", total));
        }
        out.status = status;
        out.holonomy_count = hol;
        out.provenance.push(note.into());
    }
    (out, new_inv)
}

/// Lower bound `(c₁⁺(𝔠_{k,l}))² ≥ (2e + 3σ)(M)` for any blow-up / S¹×S³ sum
/// of the Kähler base `M`. The value of (c₁⁺)² itself depends on the metric
/// and is never computed.
pub fn c1plus_sq_lower_bound(base_inv: &Invariants) -> BigInt {
    base_inv.two_e_plus_3sigma()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::manifold::{block_invariants, BuildingBlock};

    fn k3() -> Invariants {
        block_invariants(&BuildingBlock::K3)
    }

    #[test]
    fn formal_dimension_examples() {
        assert_eq!(formal_dimension(&0.into(), &k3()).unwrap(), BigInt::zero());
        let chen = block_invariants(&BuildingBlock::chen(7, 50));
        assert_eq!(formal_dimension(&50.into(), &chen).unwrap(), BigInt::zero());
        // 2e+3σ = −4 with e = 4, σ = −4
        let inv = Invariants::new(4, -4, 0).unwrap();
        assert_eq!(inv.two_e_plus_3sigma(), BigInt::from(-4));
        assert_eq!(formal_dimension(&0.into(), &inv).unwrap(), BigInt::from(1));
        assert!(matches!(
            formal_dimension(&1.into(), &k3()),
            Err(SwError::NonIntegralDimension { .. })
        ));
    }

    #[test]
    fn canonical_classes() {
        let chen = block_invariants(&BuildingBlock::chen(2_000_000, 11_000_000));
        let d = canonical_spinc_of_kahler(&chen, &11_000_000.into(), true).unwrap();
        assert_eq!(d.status(), SwStatus::NontrivialSW);
        assert_eq!(d.dimension(), &BigInt::zero());
        assert!(d.provenance()[0].contains("#M=1"));

        let d = canonical_spinc_of_kahler(&k3(), &0.into(), false).unwrap();
        assert_eq!(d.status(), SwStatus::Unknown);

        assert!(matches!(
            canonical_spinc_of_kahler(&k3(), &4.into(), true),
            Err(SwError::CanonicalMismatch { .. })
        ));
    }

    #[test]
    fn blow_up_examples() {
        let base = canonical_spinc_of_kahler(&k3(), &0.into(), true).unwrap();
        let (same, inv) = blow_up(&base, &k3(), 0);
        assert_eq!((same, inv), (base.clone(), k3()));

        let (d, inv) = blow_up(&base, &k3(), 5);
        assert_eq!(d.c1_sq(), &BigInt::from(-5));
        assert_eq!(formal_dimension(d.c1_sq(), &inv).unwrap(), BigInt::zero());
        assert_eq!(d.status(), SwStatus::NontrivialSW);

        let chen = block_invariants(&BuildingBlock::chen(10, 90));
        let c = canonical_spinc_of_kahler(&chen, &90.into(), true).unwrap();
        let (d, inv) = blow_up(&c, &chen, 3);
        assert_eq!(d.c1_sq(), &BigInt::from(87));
        assert_eq!(formal_dimension(d.c1_sq(), &inv).unwrap(), BigInt::zero());
    }

    #[test]
    fn s1s3_status_rules() {
        let base = canonical_spinc_of_kahler(&k3(), &0.into(), true).unwrap();

        let (one, inv1) = s1s3_sum(&base, &k3(), 1);
        assert_eq!(one.status(), SwStatus::BClass);
        assert_eq!(one.holonomy_count(), Some(1));
        assert_eq!(one.dimension(), &BigInt::from(1));
        assert_eq!(formal_dimension(one.c1_sq(), &inv1).unwrap(), BigInt::from(1));

        let (two, _) = s1s3_sum(&base, &k3(), 2);
        assert_eq!(two.status(), SwStatus::BClassTrivialSW);
        assert_eq!(two.dimension(), &BigInt::from(2));
        assert_eq!(two.holonomy_count(), None);

        let (three, _) = s1s3_sum(&base, &k3(), 3);
        assert_eq!(three.status(), SwStatus::BClass);
        assert_eq!(three.holonomy_count(), None);

        let unknown = SpinCDescriptor::unknown(0, &k3()).unwrap();
        let (u, _) = s1s3_sum(&unknown, &k3(), 1);
        assert_eq!(u.status(), SwStatus::Unknown);
        assert_eq!(u.dimension(), &BigInt::from(1));
    }

    #[test]
    fn iterated_sums_match_single_sum() {
        let base = canonical_spinc_of_kahler(&k3(), &0.into(), true).unwrap();
        let (a, ia) = s1s3_sum(&base, &k3(), 1);
        let (b, ib) = s1s3_sum(&a, &ia, 1);
        let (c, ic) = s1s3_sum(&base, &k3(), 2);
        assert_eq!(ib, ic);
        assert_eq!(b.c1_sq(), c.c1_sq());
        assert_eq!(b.dimension(), c.dimension());
        assert_eq!(b.status(), SwStatus::BClassTrivialSW);
        assert_eq!(c.status(), SwStatus::BClassTrivialSW);
    }

    #[test]
    fn lower_bound_for_c1plus() {
        assert_eq!(c1plus_sq_lower_bound(&k3()), BigInt::zero());
        let chen = block_invariants(&BuildingBlock::chen(2_000_000, 11_000_000));
        assert_eq!(c1plus_sq_lower_bound(&chen), BigInt::from(11_000_000));
        // e = 21, σ = 5: 42 + 15 = 57
        let inv = Invariants::new(21, 5, 0).unwrap();
        assert_eq!(c1plus_sq_lower_bound(&inv), BigInt::from(57));
    }

    #[test]
    fn descriptor_json_shape() {
        let base = canonical_spinc_of_kahler(&k3(), &0.into(), true).unwrap();
        let (one, _) = s1s3_sum(&base, &k3(), 1);
        let v: serde_json::Value = serde_json::to_value(&one).unwrap();
        assert_eq!(v["status"], "BClass");
        assert_eq!(v["d"].to_string(), "1");
        assert_eq!(v["holonomy_count"].to_string(), "1");
        assert!(v["provenance"].as_array().unwrap().len() >= 2);
        let v: serde_json::Value = serde_json::to_value(&base).unwrap();
        assert!(v.get("holonomy_count").is_none());
    }
}
