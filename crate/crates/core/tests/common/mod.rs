#![allow(dead_code)]

use nonein::geography::Boundary;
use nonein::{BigInt, BigRational, BuildingBlock, ChenParams, Invariants, ManifoldExpr, Region, RegionDecision};
use proptest::prelude::*;

pub fn block() -> impl Strategy<Value = BuildingBlock> {
    prop_oneof![
        (1i64..2_000_000_000, -4_000_000_000i64..4_000_000_000).prop_map(|(x, y)| BuildingBlock::chen(x, y)),
        Just(BuildingBlock::K3),
        Just(BuildingBlock::CP2),
        Just(BuildingBlock::CP2Bar),
        Just(BuildingBlock::S1xS3),
        Just(BuildingBlock::S4),
        ("[A-Za-z_][A-Za-z0-9_]{0,7}", -500i64..500, -250i64..250, 0i64..40).prop_map(|(name, e, half, b1)| {
            let sigma = 2 * half + e.rem_euclid(2);
            BuildingBlock::custom(&name, e, sigma, b1).expect("parity holds by construction")
        }),
    ]
}

pub fn expr() -> impl Strategy<Value = ManifoldExpr> {
    prop::collection::vec((block(), prop_oneof![3 => 1u64..4, 1 => 4u64..10_000]), 1..8)
        .prop_map(|s| ManifoldExpr::new(s).expect("non-empty with positive multiplicities"))
}

/// Invariants with `e + σ` even.
pub fn invariants() -> impl Strategy<Value = Invariants> {
    (-1_000_000i64..1_000_000, -500_000i64..500_000, 0i64..1000).prop_map(|(e, half, b1)| {
        let sigma = 2 * half + e.rem_euclid(2);
        Invariants::new(e, sigma, b1).unwrap()
    })
}

/// `(c₁², invariants)` with `c₁² ≡ 2e + 3σ (mod 4)`.
pub fn spinc_case() -> impl Strategy<Value = (BigInt, Invariants)> {
    (invariants(), -100_000i64..100_000).prop_map(|(inv, t)| (inv.two_e_plus_3sigma() + BigInt::from(4 * t), inv))
}

/// Splits `s` at every boundary where whitespace is allowed, i.e. between two
/// characters that are not both part of one word or number.
pub fn token_gaps(s: &str) -> Vec<usize> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let word = |c: char| c.is_ascii_alphanumeric() || c == '_';
    let mut gaps = vec![0, s.len()];
    for w in chars.windows(2) {
        let ((_, a), (i, b)) = (w[0], w[1]);
        if !(word(a) && word(b)) && !a.is_whitespace() && !b.is_whitespace() {
            gaps.push(i);
        }
    }
    gaps.sort_unstable();
    gaps.dedup();
    gaps
}

/// Inserts `pads[i]` at gap `i` (cycling through `pads`).
pub fn pad(s: &str, pads: &[String]) -> String {
    let gaps = token_gaps(s);
    let mut out = String::with_capacity(s.len() * 2);
    let mut last = 0;
    for (j, &g) in gaps.iter().enumerate() {
        out.push_str(&s[last..g]);
        out.push_str(&pads[j % pads.len()]);
        last = g;
    }
    out.push_str(&s[last..]);
    out
}

pub fn whitespace() -> impl Strategy<Value = Vec<String>> {
    prop::collection::vec("[ \t\n\r]{0,3}", 1..12)
}

/// Lower boundary `4x + 2x^{2/3}`, upper boundary `9x − 3x^{2/3}`.
pub fn synthetic() -> Region {
    let rat = |n: i64| BigRational::from_integer(n.into());
    Region::new(Boundary::new(rat(4), rat(2)), Boundary::new(rat(9), rat(-3)))
}

/// First `(l, y)` with every witness condition checked directly, scanning
/// `l ≤ limit` and all `y` between the boundaries.
pub fn brute_force(region: &Region, m: i64, n: i64, p: &ChenParams, limit: i64) -> Option<(i64, i64)> {
    let x0 = (m + n) / 2;
    let y0 = 2 * m + 3 * n;
    for l in 0..=limit {
        if (x0 + l) % 2 != 0 {
            continue;
        }
        let x = (x0 + l) / 2;
        if x < 1 || BigInt::from(x) <= *p.threshold() {
            continue;
        }
        let lo = region.lower().eval_f64(x as f64).floor() as i64 - 2;
        let hi = region.upper().eval_f64(x as f64).ceil() as i64 + 2;
        for y in lo..=hi {
            let k = y - 8 * x - n;
            if k < 0 || y <= 0 || 57 * (y - y0) < 25 * y {
                continue;
            }
            if region.in_region(&x.into(), &y.into(), p) == RegionDecision::Inside {
                return Some((l, y));
            }
        }
    }
    None
}

/// f64 bisection for a sign change of `f` on `[lo, hi]`.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    assert!(f(lo) < 0.0 && f(hi) > 0.0);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}
