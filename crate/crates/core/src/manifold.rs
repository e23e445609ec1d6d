//! Characteristic numbers of building blocks and their connected sums.
//!
//! Every quantity is an exact integer. The connected sum of `n` blocks has
//! `e = Σ eᵢ − 2(n − 1)`, while σ and b₁ are additive.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::json;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("manifold_algebra: a connected-sum expression needs at least one summand")]
    EmptyExpression,
    #[error("manifold_algebra: summand multiplicity must be positive")]
    ZeroMultiplicity,
    #[error("manifold_algebra: e + sigma must be even (got e = {e}, sigma = {sigma})")]
    ParityViolation { e: BigInt, sigma: BigInt },
    #[error("manifold_algebra: b1 must be non-negative (got {0})")]
    NegativeB1(BigInt),
    #[error("manifold_algebra: custom block name {0:?} is not an identifier")]
    InvalidName(String),
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Euler characteristic, signature and first Betti number.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Invariants {
    e: BigInt,
    sigma: BigInt,
    b1: BigInt,
}

impl Invariants {
    pub fn new(
        e: impl Into<BigInt>,
        sigma: impl Into<BigInt>,
        b1: impl Into<BigInt>,
    ) -> Result<Self, AlgebraError> {
        let (e, sigma, b1) = (e.into(), sigma.into(), b1.into());
        if (&e + &sigma).is_odd() {
            return Err(AlgebraError::ParityViolation { e, sigma });
        }
        if b1.is_negative() {
            return Err(AlgebraError::NegativeB1(b1));
        }
        Ok(Self { e, sigma, b1 })
    }

    pub fn e(&self) -> &BigInt {
        &self.e
    }

    pub fn sigma(&self) -> &BigInt {
        &self.sigma
    }

    pub fn b1(&self) -> &BigInt {
        &self.b1
    }

    /// `2e + 3σ`; equals c₁² of the canonical class on a complex surface.
    pub fn two_e_plus_3sigma(&self) -> BigInt {
        BigInt::from(2) * &self.e + BigInt::from(3) * &self.sigma
    }

    /// Holomorphic Euler characteristic `(e + σ)/4` from Noether's formula.
    pub fn chi_h(&self) -> BigRational {
        BigRational::new(&self.e + &self.sigma, BigInt::from(4))
    }
}

impl fmt::Display for Invariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e={}, sigma={}, b1={}", self.e, self.sigma, self.b1)
    }
}

impl Serialize for Invariants {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Invariants", 5)?;
        st.serialize_field("e", &json::Int(&self.e))?;
        st.serialize_field("sigma", &json::Int(&self.sigma))?;
        st.serialize_field("b1", &json::Int(&self.b1))?;
        st.serialize_field("two_e_plus_3sigma", &json::Int(&self.two_e_plus_3sigma()))?;
        st.serialize_field("chi_h", &json::Rat(&self.chi_h()))?;
        st.end()
    }
}

/// A minimal surface of general type with `χ_h = x` and `c₁² = y`.
///
/// Any integer pair is accepted. `region_checked` is set only by
/// [`Region::check_surface`](crate::geography::Region::check_surface) when the
/// pair was certified inside the region; it does not take part in equality or
/// ordering.
#[derive(Debug, Clone)]
pub struct ChenSurface {
    x: BigInt,
    y: BigInt,
    region_checked: bool,
}

impl ChenSurface {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        Self {
            x: x.into(),
            y: y.into(),
            region_checked: false,
        }
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    pub fn region_checked(&self) -> bool {
        self.region_checked
    }

    pub(crate) fn with_region_checked(mut self, checked: bool) -> Self {
        self.region_checked = checked;
        self
    }
}

impl PartialEq for ChenSurface {
    fn eq(&self, other: &Self) -> bool {
        self.x == other.x && self.y == other.y
    }
}

impl Eq for ChenSurface {}

impl Hash for ChenSurface {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.x.hash(state);
        self.y.hash(state);
    }
}

impl PartialOrd for ChenSurface {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ChenSurface {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.x, &self.y).cmp(&(&other.x, &other.y))
    }
}

/// A user-declared block. Only `(e, σ, b₁)` are known.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CustomBlock {
    name: String,
    e: BigInt,
    sigma: BigInt,
    b1: BigInt,
}

impl CustomBlock {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn e(&self) -> &BigInt {
        &self.e
    }

    pub fn sigma(&self) -> &BigInt {
        &self.sigma
    }

    pub fn b1(&self) -> &BigInt {
        &self.b1
    }
}

/// Closed oriented 4-manifold atoms.
///
/// Variant order is the canonical print order used by [`crate::parser::format`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BuildingBlock {
    Chen(ChenSurface),
    K3,
    CP2,
    /// CP² with reversed orientation (one blow-up).
    CP2Bar,
    S1xS3,
    S4,
    Custom(CustomBlock),
}

impl BuildingBlock {
    pub fn chen(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        Self::Chen(ChenSurface::new(x, y))
    }

    pub fn custom(
        name: impl Into<String>,
        e: impl Into<BigInt>,
        sigma: impl Into<BigInt>,
        b1: impl Into<BigInt>,
    ) -> Result<Self, AlgebraError> {
        let name = name.into();
        if !is_identifier(&name) {
            return Err(AlgebraError::InvalidName(name));
        }
        let inv = Invariants::new(e, sigma, b1)?;
        Ok(Self::Custom(CustomBlock {
            name,
            e: inv.e,
            sigma: inv.sigma,
            b1: inv.b1,
        }))
    }

    /// `(b₂⁺, b₂⁻)` for catalogue blocks with `b₁ = 0`. Custom blocks and
    /// S¹×S³ report `None`.
    pub fn b2_split(&self) -> Option<(BigInt, BigInt)> {
        if matches!(self, Self::Custom(_) | Self::S1xS3) {
            return None;
        }
        let inv = block_invariants(self);
        let b2 = inv.e() - 2;
        let plus = (&b2 + inv.sigma()) / 2;
        let minus = (&b2 - inv.sigma()) / 2;
        Some((plus, minus))
    }
}

/// Exact invariants of a single block.
pub fn block_invariants(block: &BuildingBlock) -> Invariants {
    let (e, sigma, b1) = match block {
        // e = 12χ − c₁², σ = c₁² − 8χ, from c₁² = 2e + 3σ and χ = (e + σ)/4.
        BuildingBlock::Chen(s) => (
            BigInt::from(12) * &s.x - &s.y,
            &s.y - BigInt::from(8) * &s.x,
            BigInt::zero(),
        ),
        BuildingBlock::K3 => (24.into(), (-16).into(), 0.into()),
        BuildingBlock::CP2 => (3.into(), 1.into(), 0.into()),
        BuildingBlock::CP2Bar => (3.into(), (-1).into(), 0.into()),
        BuildingBlock::S1xS3 => (0.into(), 0.into(), 1.into()),
        BuildingBlock::S4 => (2.into(), 0.into(), 0.into()),
        BuildingBlock::Custom(c) => (c.e.clone(), c.sigma.clone(), c.b1.clone()),
    };
    Invariants { e, sigma, b1 }
}

/// A connected sum `B₁^{#m₁} # … # B_r^{#m_r}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifoldExpr {
    summands: Vec<(BuildingBlock, u64)>,
}

impl ManifoldExpr {
    pub fn new(summands: Vec<(BuildingBlock, u64)>) -> Result<Self, AlgebraError> {
        if summands.is_empty() {
            return Err(AlgebraError::EmptyExpression);
        }
        if summands.iter().any(|(_, m)| *m == 0) {
            return Err(AlgebraError::ZeroMultiplicity);
        }
        Ok(Self { summands })
    }

    pub fn single(block: BuildingBlock) -> Self {
        Self {
            summands: vec![(block, 1)],
        }
    }

    /// `M # k·~CP2 # l·(S1xS3)`, omitting empty summands.
    pub fn mkl(base: BuildingBlock, k: u64, l: u64) -> Self {
        let mut summands = vec![(base, 1)];
        if k > 0 {
            summands.push((BuildingBlock::CP2Bar, k));
        }
        if l > 0 {
            summands.push((BuildingBlock::S1xS3, l));
        }
        Self { summands }
    }

    pub fn summands(&self) -> &[(BuildingBlock, u64)] {
        &self.summands
    }

    /// Total number of blocks, counted with multiplicity.
    pub fn block_count(&self) -> BigInt {
        self.summands.iter().map(|(_, m)| BigInt::from(*m)).sum()
    }

    /// Blocks with their total multiplicity; equal blocks are merged.
    pub fn summand_multiset(&self) -> BTreeMap<BuildingBlock, u64> {
        let mut out = BTreeMap::new();
        for (b, m) in &self.summands {
            *out.entry(b.clone()).or_insert(0u64) += m;
        }
        out
    }

    /// Betti split, only for a lone catalogue block.
    pub fn b2_split(&self) -> Option<(BigInt, BigInt)> {
        match self.summands.as_slice() {
            [(b, 1)] => b.b2_split(),
            _ => None,
        }
    }
}

/// Invariants of a connected sum.
pub fn connected_sum_invariants(expr: &ManifoldExpr) -> Invariants {
    let mut e = BigInt::zero();
    let mut sigma = BigInt::zero();
    let mut b1 = BigInt::zero();
    for (block, mult) in expr.summands() {
        let inv = block_invariants(block);
        let m = BigInt::from(*mult);
        e += &m * inv.e();
        sigma += &m * inv.sigma();
        b1 += &m * inv.b1();
    }
    e -= BigInt::from(2) * (expr.block_count() - 1);
    Invariants { e, sigma, b1 }
}

/// `(m, n)` is realised as `(e, σ)` by some closed oriented 4-manifold iff `m ≡ n (mod 2)`.
pub fn is_admissible(m: &BigInt, n: &BigInt) -> bool {
    (m - n).is_even()
}

/// Invariants of `M # k·~CP2 # l·(S1xS3)` in closed form.
pub fn mkl_invariants(base: &Invariants, k: u64, l: u64) -> Invariants {
    let (k, l) = (BigInt::from(k), BigInt::from(l));
    Invariants {
        e: &base.e + &k - BigInt::from(2) * &l,
        sigma: &base.sigma - &k,
        b1: &base.b1 + &l,
    }
}
