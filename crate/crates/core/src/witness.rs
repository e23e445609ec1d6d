//! Certified families of non-Einstein manifolds with prescribed `(e, σ)`.
//!
//! For an admissible target `(m, n)` the witnesses are
//! `M_{k,l} = M # k·~CP2 # l(S¹×S³)` where `M` is a Chen surface with
//! `χ_h = x`, `c₁² = y`. Expanding the invariants exactly gives
//!
//! ```text
//! e = 12x − y + k − 2l = m,   σ = y − 8x − k = n
//! ⇒ x = (x'₀ + l)/2 with x'₀ = (m + n)/2,   k = y − 8x − n,   k + 4l = y − (2m + 3n)
//! ```
//!
//! so only `(l, y)` are searched, and the generalised LeBrun hypothesis
//! `57(k + 4l) ≥ 25y` reduces to `32y ≥ 57(2m + 3n)`. The hypothesis is still
//! checked directly on the computed invariants of every witness.
//!
//! Distinct witnesses of one query have distinct `l = b₁`, so they are pairwise
//! non-homeomorphic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::geography::{ChenParams, Region, RegionDecision};
use crate::json;
use crate::manifold::{
    block_invariants, connected_sum_invariants, is_admissible, mkl_invariants, BuildingBlock,
    Invariants, ManifoldExpr,
};
use crate::obstruction::{hitchin_thorpe, lebrun_generalized, Rule, Verdict, VerdictStatus};
use crate::parser::{format, parse};
use crate::spinc::{blow_up, canonical_spinc_of_kahler, s1s3_sum, SwStatus};

/// Exact `(x, y)` probes allowed per query.
pub const PROBE_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("witness_solver: (e, sigma) = ({m}, {n}) is not admissible: e and sigma differ in parity")]
    NotAdmissible { m: BigInt, n: BigInt },
    #[error("witness_solver: search exhausted after {probes} probes (cap {cap}){}", last_l.as_ref().map(|l| format!(", last l tried = {l}")).unwrap_or_default())]
    SearchExhausted {
        cap: u64,
        probes: u64,
        last_l: Option<BigInt>,
    },
    #[error("witness_solver: multiplicity {0} does not fit in 64 bits")]
    MultiplicityOverflow(BigInt),
    #[error("witness_solver: constructed witness failed verification: {}", .0.join("; "))]
    Rejected(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub chen_x: BigInt,
    pub chen_y: BigInt,
    pub k: u64,
    pub l: u64,
    pub expr: ManifoldExpr,
    pub invariants: Invariants,
    pub verdicts: Vec<Verdict>,
    pub chen_c_used: BigInt,
}

impl Witness {
    /// The `b₁ = l` certificate separating witnesses of one query.
    pub fn distinctness(&self) -> String {
        format!("b1 = l = {}", self.l)
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Witness", 10)?;
        st.serialize_field("expr", &format(&self.expr))?;
        st.serialize_field("chen_x", &json::Int(&self.chen_x))?;
        st.serialize_field("chen_y", &json::Int(&self.chen_y))?;
        st.serialize_field("k", &self.k)?;
        st.serialize_field("l", &self.l)?;
        st.serialize_field("e", &json::Int(self.invariants.e()))?;
        st.serialize_field("sigma", &json::Int(self.invariants.sigma()))?;
        st.serialize_field("b1", &json::Int(self.invariants.b1()))?;
        st.serialize_field("verdicts", &self.verdicts)?;
        st.serialize_field("chen_C_used", &json::Int(&self.chen_c_used))?;
        st.end()
    }
}

/// Outcome of [`verify`]: empty `reasons` means every check passed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Verification {
    pub reasons: Vec<String>,
}

impl Verification {
    pub fn is_valid(&self) -> bool {
        self.reasons.is_empty()
    }

    fn check(&mut self, ok: bool, reason: impl FnOnce() -> String) {
        if !ok {
            self.reasons.push(reason());
        }
    }
}

/// `a·x + b·x^{2/3} + c > 0`, decided exactly for integer `x ≥ 1`.
#[derive(Debug, Clone)]
struct Constraint {
    a: BigRational,
    b: BigRational,
    c: BigRational,
}

impl Constraint {
    fn holds(&self, x: &BigInt) -> bool {
        let xr = BigRational::from_integer(x.clone());
        // sign of u + b·s with s = x^{2/3} > 0, by comparing u³ against (b·s)³ = b³x²
        let u = &self.a * &xr + &self.c;
        let v3 = &self.b * &self.b * &self.b * &xr * &xr;
        let u3 = &u * &u * &u;
        u3 + v3 > BigRational::zero()
    }

    /// Whether the constraint holds for all large `x`.
    fn holds_eventually(&self) -> bool {
        if !self.a.is_zero() {
            self.a.is_positive()
        } else if !self.b.is_zero() {
            self.b.is_positive()
        } else {
            self.c.is_positive()
        }
    }

    /// Integer `x` where `d/dt` of `a t³ + b t² + c` changes sign (`t = x^{1/3}`).
    fn turning_point(&self) -> Option<BigInt> {
        if self.a.is_zero() {
            return None;
        }
        let t = -(BigRational::from_integer(2.into()) * &self.b)
            / (BigRational::from_integer(3.into()) * &self.a);
        t.is_positive().then(|| (&t * &t * &t).floor().to_integer())
    }

    /// Maximal integer runs `[s, e]` (`e = None` for unbounded) in `[from, ∞)`
    /// on which the constraint holds.
    fn runs_from(&self, from: &BigInt) -> Vec<(BigInt, Option<BigInt>)> {
        let mut segments = Vec::new();
        match self.turning_point() {
            Some(tp) if &tp >= from => {
                segments.push((from.clone(), Some(tp.clone())));
                segments.push((tp + 1, None));
            }
            _ => segments.push((from.clone(), None)),
        }
        let mut runs: Vec<(BigInt, Option<BigInt>)> = Vec::new();
        for (s, e) in segments {
            for (rs, re) in self.monotone_runs(&s, e.as_ref()) {
                if let Some((_, last_end @ Some(_))) = runs.last_mut() {
                    if last_end.as_ref().map(|v| v + 1) == Some(rs.clone()) {
                        *last_end = re;
                        continue;
                    }
                }
                runs.push((rs, re));
            }
        }
        runs
    }

    /// Runs on a segment where the predicate is monotone.
    fn monotone_runs(&self, s: &BigInt, e: Option<&BigInt>) -> Vec<(BigInt, Option<BigInt>)> {
        let at_start = self.holds(s);
        let (end, at_end) = match e {
            Some(e) => (e.clone(), self.holds(e)),
            None => {
                let eventually = self.holds_eventually();
                if at_start == eventually {
                    return if at_start { vec![(s.clone(), None)] } else { vec![] };
                }
                // double until the predicate flips
                let mut step = BigInt::one();
                let mut probe = s + &step;
                while self.holds(&probe) == at_start {
                    step *= 2;
                    probe = s + &step;
                }
                (probe, eventually)
            }
        };
        if at_start == at_end {
            return if at_start { vec![(s.clone(), e.cloned())] } else { vec![] };
        }
        // first index in (s, end] where the predicate equals at_end
        let (mut lo, mut hi) = (s.clone(), end);
        while &hi - &lo > BigInt::one() {
            let mid: BigInt = (&lo + &hi) >> 1;
            if self.holds(&mid) == at_start {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if at_start {
            vec![(s.clone(), Some(lo))]
        } else {
            vec![(hi, e.cloned())]
        }
    }
}

fn intersect(
    a: &[(BigInt, Option<BigInt>)],
    b: &[(BigInt, Option<BigInt>)],
) -> Vec<(BigInt, Option<BigInt>)> {
    let mut out = Vec::new();
    for (s1, e1) in a {
        for (s2, e2) in b {
            let s = s1.max(s2).clone();
            let e = match (e1, e2) {
                (None, None) => None,
                (Some(x), None) | (None, Some(x)) => Some(x.clone()),
                (Some(x), Some(y)) => Some(x.min(y).clone()),
            };
            if e.as_ref().is_none_or(|e| &s <= e) {
                out.push((s, e));
            }
        }
    }
    out.sort_by(|p, q| p.0.cmp(&q.0));
    out
}

/// Search state for one target `(m, n)` over a region.
struct Search<'a> {
    region: &'a Region,
    params: &'a ChenParams,
    n: BigInt,
    x_prime0: BigInt,
    y_floor: BigInt,
    runs: Vec<(BigInt, Option<BigInt>)>,
    run_idx: usize,
    next_x: Option<BigInt>,
    probes: u64,
    last_l: Option<BigInt>,
}

impl<'a> Search<'a> {
    fn new(region: &'a Region, params: &'a ChenParams, m: &BigInt, n: &BigInt) -> Result<Self, SolveError> {
        if !is_admissible(m, n) {
            return Err(SolveError::NotAdmissible {
                m: m.clone(),
                n: n.clone(),
            });
        }
        let x_prime0: BigInt = (m + n) / 2;
        let y0 = BigInt::from(2) * m + BigInt::from(3) * n;
        let y_floor = (BigInt::from(57) * &y0).div_ceil(&BigInt::from(32));

        // x > C, x ≥ 1 and l = 2x − x'₀ ≥ 0
        let x_floor = (params.threshold() + BigInt::one())
            .max(BigInt::one())
            .max(x_prime0.div_ceil(&BigInt::from(2)));

        let rat = |v: BigInt| BigRational::from_integer(v);
        let (lower, upper) = (region.lower(), region.upper());
        // Necessary conditions on x for a y with lower < y < upper, y ≥ 8x + n, 32y ≥ 57y₀.
        let constraints = [
            Constraint {
                a: upper.linear() - lower.linear(),
                b: upper.root() - lower.root(),
                c: BigRational::zero(),
            },
            Constraint {
                a: upper.linear() - rat(8.into()),
                b: upper.root().clone(),
                c: -rat(n.clone()),
            },
            Constraint {
                a: upper.linear().clone(),
                b: upper.root().clone(),
                c: -(rat(57.into()) * rat(y0)) / rat(32.into()),
            },
        ];
        let mut runs = vec![(x_floor.clone(), None)];
        for c in &constraints {
            runs = intersect(&runs, &c.runs_from(&x_floor));
        }
        let next_x = runs.first().map(|r| r.0.clone());
        Ok(Self {
            region,
            params,
            n: n.clone(),
            x_prime0,
            y_floor,
            runs,
            run_idx: 0,
            next_x,
            probes: 0,
            last_l: None,
        })
    }

    /// Smallest admissible `y` at `x`, if any.
    fn probe(&mut self, x: &BigInt) -> Option<BigInt> {
        self.probes += 1;
        self.last_l = Some(BigInt::from(2) * x - &self.x_prime0);
        let w = self.region.y_window(x, self.params)?;
        let y = w
            .min
            .clone()
            .max(BigInt::from(8) * x + &self.n)
            .max(self.y_floor.clone());
        (y <= w.max).then_some(y)
    }

    fn exhausted(&self) -> SolveError {
        SolveError::SearchExhausted {
            cap: PROBE_CAP,
            probes: self.probes,
            last_l: self.last_l.clone(),
        }
    }

    /// Next feasible `(x, y)` in increasing `x`.
    fn next_point(&mut self) -> Result<(BigInt, BigInt), SolveError> {
        loop {
            let Some(x) = self.next_x.take() else {
                return Err(self.exhausted());
            };
            if self.probes >= PROBE_CAP {
                return Err(self.exhausted());
            }
            let found = self.probe(&x);
            let candidate = &x + 1;
            let (_, end) = &self.runs[self.run_idx];
            self.next_x = if end.as_ref().is_none_or(|e| &candidate <= e) {
                Some(candidate)
            } else {
                self.run_idx += 1;
                self.runs.get(self.run_idx).map(|r| r.0.clone())
            };
            if let Some(y) = found {
                return Ok((x, y));
            }
        }
    }

    fn l_of(&self, x: &BigInt) -> BigInt {
        BigInt::from(2) * x - &self.x_prime0
    }
}

fn to_u64(v: &BigInt) -> Result<u64, SolveError> {
    v.to_u64().ok_or_else(|| SolveError::MultiplicityOverflow(v.clone()))
}

/// Least parity-correct `l` whose sub-window is nonempty for `(m, n)`.
pub fn feasible_l_start(m: &BigInt, n: &BigInt, p: &ChenParams) -> Result<BigInt, SolveError> {
    feasible_l_start_in(&Region::chen(), m, n, p)
}

pub fn feasible_l_start_in(region: &Region, m: &BigInt, n: &BigInt, p: &ChenParams) -> Result<BigInt, SolveError> {
    let mut search = Search::new(region, p, m, n)?;
    let (x, _) = search.next_point()?;
    Ok(search.l_of(&x))
}

/// `count` witnesses realising `(e, σ) = (m, n)` with strictly increasing `l`.
pub fn solve(m: &BigInt, n: &BigInt, count: usize, p: &ChenParams) -> Result<Vec<Witness>, SolveError> {
    solve_in(&Region::chen(), m, n, count, p)
}

pub fn solve_in(
    region: &Region,
    m: &BigInt,
    n: &BigInt,
    count: usize,
    p: &ChenParams,
) -> Result<Vec<Witness>, SolveError> {
    let mut search = Search::new(region, p, m, n)?;
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let (x, y) = search.next_point()?;
        let k = to_u64(&(&y - BigInt::from(8) * &x - n))?;
        let l = to_u64(&search.l_of(&x))?;
        let w = build_witness(x, y, k, l, p);
        let check = verify_in(region, &w, m, n, p);
        if !check.is_valid() {
            return Err(SolveError::Rejected(check.reasons));
        }
        out.push(w);
    }
    Ok(out)
}

fn build_witness(x: BigInt, y: BigInt, k: u64, l: u64, p: &ChenParams) -> Witness {
    let base = BuildingBlock::chen(x.clone(), y.clone());
    let base_inv = block_invariants(&base);
    let invariants = mkl_invariants(&base_inv, k, l);
    let generalized = lebrun_generalized(&base_inv, SwStatus::NontrivialSW, k, l)
        .unwrap_or_else(Verdict::from);
    Witness {
        chen_x: x,
        chen_y: y,
        k,
        l,
        expr: ManifoldExpr::mkl(base, k, l),
        verdicts: vec![hitchin_thorpe(&invariants), generalized],
        invariants,
        chen_c_used: p.threshold().clone(),
    }
}

/// Re-derives every claim about `w` from its expression text and the region.
pub fn verify(w: &Witness, m: &BigInt, n: &BigInt, p: &ChenParams) -> Verification {
    verify_in(&Region::chen(), w, m, n, p)
}

pub fn verify_in(region: &Region, w: &Witness, m: &BigInt, n: &BigInt, p: &ChenParams) -> Verification {
    let mut v = Verification::default();

    // Expression shape, read back from its text form.
    let expr = match parse(&format(&w.expr)) {
        Ok(e) => e,
        Err(err) => {
            v.reasons.push(format!("expression does not re-parse: {err}"));
            return v;
        }
    };
    let mut chen = None;
    let (mut k, mut l) = (0u64, 0u64);
    for (block, mult) in expr.summands() {
        match block {
            BuildingBlock::Chen(s) if *mult == 1 && chen.is_none() => chen = Some(s.clone()),
            BuildingBlock::CP2Bar => k += mult,
            BuildingBlock::S1xS3 => l += mult,
            other => v.reasons.push(format!("unexpected summand {mult}*{other}")),
        }
    }
    let Some(chen) = chen else {
        v.reasons.push("no Chen surface base".into());
        return v;
    };
    v.check(chen.x() == &w.chen_x && chen.y() == &w.chen_y, || {
        format!("base Chen({},{}) differs from recorded ({}, {})", chen.x(), chen.y(), w.chen_x, w.chen_y)
    });
    v.check(k == w.k, || format!("expression has k = {k}, recorded {}", w.k));
    v.check(l == w.l, || format!("expression has l = {l}, recorded {}", w.l));

    // Invariants by summation over the expression.
    let inv = connected_sum_invariants(&expr);
    v.check(inv.e() == m, || format!("e = {} but target is {m}", inv.e()));
    v.check(inv.sigma() == n, || format!("sigma = {} but target is {n}", inv.sigma()));
    v.check(inv.b1() == &BigInt::from(l), || format!("b1 = {} differs from l = {l}", inv.b1()));
    v.check(inv == w.invariants, || "recorded invariants differ from recomputation".into());

    // Substitution identities.
    let (x, y) = (chen.x(), chen.y());
    let lb = BigInt::from(l);
    let kb = BigInt::from(k);
    v.check(BigInt::from(2) * x == (m + n) / 2 + &lb && (m + n).is_even(), || {
        "x != (x'0 + l)/2".into()
    });
    v.check(&kb + BigInt::from(4) * &lb == y - (BigInt::from(2) * m + BigInt::from(3) * n), || {
        "k + 4l != y - (2m + 3n)".into()
    });

    // Region membership at the recorded threshold.
    v.check(&w.chen_c_used == p.threshold(), || {
        format!("witness built with C = {} but checked with C = {}", w.chen_c_used, p.threshold())
    });
    let decision = region.in_region(x, y, p);
    v.check(decision == RegionDecision::Inside, || {
        format!("Chen({x},{y}) not certified inside the region: {decision:?}")
    });

    // Spin^c chain: canonical class → k blow-ups → l S¹×S³ sums.
    let base_inv = block_invariants(&BuildingBlock::Chen(chen.clone()));
    match canonical_spinc_of_kahler(&base_inv, &base_inv.two_e_plus_3sigma(), true) {
        Ok(canonical) => {
            let (blown, blown_inv) = blow_up(&canonical, &base_inv, k);
            let (summed, summed_inv) = s1s3_sum(&blown, &blown_inv, l);
            v.check(summed_inv == inv, || "spin^c chain reached different invariants".into());
            v.check(summed.dimension() == &lb, || {
                format!("formal dimension {} != l = {l}", summed.dimension())
            });
            let expected_status = if l == 0 { SwStatus::NontrivialSW } else { summed.status() };
            v.check(
                summed.status().is_b_class() && summed.status() == expected_status,
                || format!("summed class has status {}", summed.status()),
            );
            if l > 0 {
                v.check(summed.status() != SwStatus::NontrivialSW, || "status did not move to a B-class".into());
            }

            // Obstruction predicate on the base, from scratch.
            match lebrun_generalized(&base_inv, canonical.status(), k, l) {
                Ok(verdict) => {
                    v.check(verdict.status == VerdictStatus::Obstructed, || {
                        "generalised LeBrun rule does not obstruct".into()
                    });
                    v.check(verdict.certificate.as_ref().is_some_and(|c| c.holds()), || {
                        "generalised LeBrun certificate does not hold".into()
                    });
                }
                Err(err) => v.reasons.push(err.to_string()),
            }
        }
        Err(err) => v.reasons.push(err.to_string()),
    }
    v.check(
        BigInt::from(57) * (&kb + BigInt::from(4) * &lb) >= BigInt::from(25) * y,
        || "57(k+4l) < 25y".into(),
    );

    // Recorded verdicts.
    let recorded = w.verdicts.iter().find(|vd| vd.rule == Rule::LeBrunGeneralized);
    v.check(
        recorded.is_some_and(|vd| {
            vd.status == VerdictStatus::Obstructed && vd.certificate.as_ref().is_some_and(|c| c.holds())
        }),
        || "recorded generalised LeBrun verdict missing or not obstructed".into(),
    );
    v
}
