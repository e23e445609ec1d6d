//! Exact bookkeeping for Einstein-metric obstructions on closed oriented 4-manifolds.
//!
//! The crate is organised bottom-up:
//!
//! * [`manifold`] evaluates Euler characteristic, signature and b₁ of
//!   connected-sum expressions built from a small catalogue of blocks.
//! * [`parser`] reads and prints the textual expression language
//!   (`K3 # 3*~CP2 # 2*S1xS3`).
//! * [`spinc`] tracks spin^c descriptors (c₁², formal dimension and
//!   Seiberg–Witten / B-class status) through blow-ups and S¹×S³ sums.
//! * [`obstruction`] evaluates the Hitchin–Thorpe, Gromov and LeBrun-type
//!   predicates with exact certificates.
//! * [`geography`] decides membership in Chen's region of minimal surfaces of
//!   general type using rational interval enclosures.
//! * [`witness`] constructs certified families of non-Einstein manifolds with
//!   prescribed Euler characteristic and signature.
//!
//! All arithmetic on topological quantities is exact (`BigInt`/`BigRational`).

pub mod geography;
pub mod interval;
mod json;
pub mod manifold;
pub mod obstruction;
pub mod parser;
pub mod spinc;
pub mod witness;

pub use geography::{ChenParams, GeographyError, PlotFormat, Region, RegionDecision, YWindow};
pub use manifold::{
    block_invariants, connected_sum_invariants, is_admissible, mkl_invariants, AlgebraError,
    BuildingBlock, ChenSurface, CustomBlock, Invariants, ManifoldExpr,
};
pub use obstruction::{
    evaluate_all, gromov, hitchin_thorpe, lebrun, lebrun_generalized, Certificate,
    ObstructionError, Relation, Rule, Verdict, VerdictStatus,
};
pub use parser::{format, parse, ParseError};
pub use spinc::{
    blow_up, c1plus_sq_lower_bound, canonical_spinc_of_kahler, formal_dimension, s1s3_sum,
    SpinCDescriptor, SwError, SwStatus,
};
pub use witness::{feasible_l_start, solve, verify, SolveError, Verification, Witness};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
