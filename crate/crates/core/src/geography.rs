//! Chen's geography region for simply connected minimal surfaces of general type.
//!
//! A pair `(x, y) = (χ_h, c₁²)` with `x > C` is realised when
//!
//! ```text
//! (352/89)·x + 140.2·x^{2/3} < y < (18644/2129)·x − 365.7·x^{2/3}
//! ```
//!
//! Decimal coefficients are read as the exact rationals 701/5 and 3657/10.
//! Bounds are enclosed in rational intervals; decisions refine the working
//! precision by doubling until they are certified or the cap is reached.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::interval::{decimal_string, two_thirds_power, RatInterval};
use crate::manifold::ChenSurface;

const CHEN_LOWER_LINEAR: (i64, i64) = (352, 89);
const CHEN_LOWER_ROOT: (i64, i64) = (701, 5);
const CHEN_UPPER_LINEAR: (i64, i64) = (18644, 2129);
const CHEN_UPPER_ROOT: (i64, i64) = (-3657, 10);

/// Probe budget for the upward scan in [`Region::min_feasible_x`].
const MIN_X_SCAN_CAP: u64 = 1_000_000;

#[derive(Debug, Error)]
pub enum GeographyError {
    #[error("chen_geography: invalid parameters: {0}")]
    InvalidParams(String),
    #[error("chen_geography: invalid range: {0}")]
    InvalidRange(String),
    #[error("chen_geography: write failed: {0}")]
    Io(#[from] std::io::Error),
}

/// Threshold `C` and interval-arithmetic precision settings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChenParams {
    threshold: BigInt,
    precision_bits: u32,
    precision_cap: u32,
}

impl Default for ChenParams {
    fn default() -> Self {
        Self {
            threshold: BigInt::one(),
            precision_bits: 64,
            precision_cap: 4096,
        }
    }
}

impl ChenParams {
    pub fn new(
        threshold: impl Into<BigInt>,
        precision_bits: u32,
        precision_cap: u32,
    ) -> Result<Self, GeographyError> {
        let threshold = threshold.into();
        if threshold.is_negative() {
            return Err(GeographyError::InvalidParams(format!(
                "C must be non-negative, got {threshold}"
            )));
        }
        if precision_bits == 0 || precision_bits > precision_cap {
            return Err(GeographyError::InvalidParams(format!(
                "need 0 < precision_bits <= precision_cap, got {precision_bits} and {precision_cap}"
            )));
        }
        Ok(Self {
            threshold,
            precision_bits,
            precision_cap,
        })
    }

    /// The constant `C`; only `x > C` is admitted.
    pub fn threshold(&self) -> &BigInt {
        &self.threshold
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn precision_cap(&self) -> u32 {
        self.precision_cap
    }

    fn precisions(&self) -> impl Iterator<Item = u32> + '_ {
        let cap = self.precision_cap;
        std::iter::successors(Some(self.precision_bits), move |&b| {
            (b < cap).then(|| b.saturating_mul(2).min(cap))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RegionDecision {
    Inside,
    Outside,
    /// Undecided at the precision cap.
    Indeterminate { precision_reached: u32 },
}

/// Integer `y` range `[min, max]`, both ends inclusive and nonempty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YWindow {
    pub min: BigInt,
    pub max: BigInt,
}

impl YWindow {
    pub fn len(&self) -> BigInt {
        &self.max - &self.min + 1
    }

    pub fn contains(&self, y: &BigInt) -> bool {
        &self.min <= y && y <= &self.max
    }
}

/// A curve `y = linear·x + root·x^{2/3}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Boundary {
    linear: BigRational,
    root: BigRational,
}

impl Boundary {
    pub fn new(linear: BigRational, root: BigRational) -> Self {
        Self { linear, root }
    }

    fn from_pairs(linear: (i64, i64), root: (i64, i64)) -> Self {
        let r = |(n, d): (i64, i64)| BigRational::new(n.into(), d.into());
        Self::new(r(linear), r(root))
    }

    pub fn linear(&self) -> &BigRational {
        &self.linear
    }

    pub fn root(&self) -> &BigRational {
        &self.root
    }

    /// Enclosure of the curve at `x ≥ 0`.
    pub fn eval(&self, x: &BigInt, bits: u32) -> RatInterval {
        two_thirds_power(x, bits)
            .scale(&self.root)
            .shift(&(&self.linear * BigRational::from_integer(x.clone())))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let f = |r: &BigRational| r.to_f64().unwrap_or(f64::NAN);
        f(&self.linear) * x + f(&self.root) * x.cbrt().powi(2)
    }
}

/// Region between two boundary curves. [`Region::chen`] is the production
/// region; tests may build smaller synthetic ones with [`Region::new`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    lower: Boundary,
    upper: Boundary,
}

impl Region {
    pub fn chen() -> Self {
        Self {
            lower: Boundary::from_pairs(CHEN_LOWER_LINEAR, CHEN_LOWER_ROOT),
            upper: Boundary::from_pairs(CHEN_UPPER_LINEAR, CHEN_UPPER_ROOT),
        }
    }

    pub fn new(lower: Boundary, upper: Boundary) -> Self {
        Self { lower, upper }
    }

    pub fn lower(&self) -> &Boundary {
        &self.lower
    }

    pub fn upper(&self) -> &Boundary {
        &self.upper
    }

    /// Enclosures of the lower and upper bound at `x ≥ 1`, at `bits` of precision.
    pub fn bounds_at(&self, x: &BigInt, bits: u32) -> (RatInterval, RatInterval) {
        (self.lower.eval(x, bits), self.upper.eval(x, bits))
    }

    pub fn bounds(&self, x: &BigInt, p: &ChenParams) -> (RatInterval, RatInterval) {
        self.bounds_at(x, p.precision_bits)
    }

    fn admits_x(&self, x: &BigInt, p: &ChenParams) -> bool {
        x > p.threshold() && x.is_positive()
    }

    /// Decision at one fixed precision, `None` if the enclosures straddle `y`.
    pub fn decide_at(&self, x: &BigInt, y: &BigInt, bits: u32) -> Option<RegionDecision> {
        let y = BigRational::from_integer(y.clone());
        let (lo, hi) = self.bounds_at(x, bits);
        if &y <= lo.lo() || &y >= hi.hi() {
            Some(RegionDecision::Outside)
        } else if lo.hi() < &y && &y < hi.lo() {
            Some(RegionDecision::Inside)
        } else {
            None
        }
    }

    pub fn in_region(&self, x: &BigInt, y: &BigInt, p: &ChenParams) -> RegionDecision {
        if !self.admits_x(x, p) {
            return RegionDecision::Outside;
        }
        for bits in p.precisions() {
            if let Some(d) = self.decide_at(x, y, bits) {
                return d;
            }
        }
        RegionDecision::Indeterminate {
            precision_reached: p.precision_cap,
        }
    }

    /// Integers strictly between the bounds at `x`. Endpoints are exact unless
    /// the cap is hit, in which case they are pulled inwards.
    pub fn y_window(&self, x: &BigInt, p: &ChenParams) -> Option<YWindow> {
        if !self.admits_x(x, p) {
            return None;
        }
        let mut min = None;
        let mut max = None;
        for bits in p.precisions() {
            let (lo, hi) = self.bounds_at(x, bits);
            if min.is_none() {
                let (a, b) = (lo.lo().floor(), lo.hi().floor());
                if a == b {
                    min = Some(a.to_integer() + 1);
                } else if bits == p.precision_cap {
                    min = Some(b.to_integer() + 1);
                }
            }
            if max.is_none() {
                let (a, b) = (hi.lo().ceil(), hi.hi().ceil());
                if a == b {
                    max = Some(b.to_integer() - 1);
                } else if bits == p.precision_cap {
                    max = Some(a.to_integer() - 1);
                }
            }
            if min.is_some() && max.is_some() {
                break;
            }
        }
        let (min, max) = (min?, max?);
        (min <= max).then_some(YWindow { min, max })
    }

    /// Least `x > C` whose integer window is nonempty. `None` if the region
    /// never opens or the scan budget runs out.
    pub fn min_feasible_x(&self, p: &ChenParams) -> Option<BigInt> {
        let width_linear = &self.upper.linear - &self.lower.linear;
        let width_root = &self.upper.root - &self.lower.root;
        let floor_x = (p.threshold() + BigInt::one()).max(BigInt::one());
        // Real window is open iff width_linear·t + width_root > 0 with t = x^{1/3}.
        let (start, end) = if width_linear.is_positive() {
            if width_root.is_negative() {
                let t = -&width_root / &width_linear;
                (floor_x.clone().max((&t * &t * &t).floor().to_integer()), None)
            } else {
                (floor_x.clone(), None)
            }
        } else if width_root.is_positive() {
            if width_linear.is_zero() {
                (floor_x.clone(), None)
            } else {
                let t = &width_root / -&width_linear;
                (floor_x.clone(), Some((&t * &t * &t).ceil().to_integer()))
            }
        } else {
            return None;
        };
        let mut x = start;
        for _ in 0..MIN_X_SCAN_CAP {
            if end.as_ref().is_some_and(|e| &x > e) {
                return None;
            }
            if self.y_window(&x, p).is_some() {
                return Some(x);
            }
            x += 1;
        }
        None
    }

    /// Returns the surface with `region_checked` set when it is certified inside.
    pub fn check_surface(&self, s: &ChenSurface, p: &ChenParams) -> (ChenSurface, RegionDecision) {
        let d = self.in_region(s.x(), s.y(), p);
        (s.clone().with_region_checked(d == RegionDecision::Inside), d)
    }

    /// Geography table or plot over `x_min, x_min + step, …, ≤ x_max`.
    pub fn emit_geography(
        &self,
        x_min: &BigInt,
        x_max: &BigInt,
        step: &BigInt,
        format: PlotFormat,
        p: &ChenParams,
    ) -> Result<String, GeographyError> {
        if x_min > x_max {
            return Err(GeographyError::InvalidRange(format!("x_min {x_min} > x_max {x_max}")));
        }
        if !x_min.is_positive() {
            return Err(GeographyError::InvalidRange(format!("x_min must be positive, got {x_min}")));
        }
        if !step.is_positive() {
            return Err(GeographyError::InvalidRange(format!("step must be positive, got {step}")));
        }
        let xs: Vec<BigInt> =
            std::iter::successors(Some(x_min.clone()), |x| Some(x + step).filter(|n| n <= x_max)).collect();
        let render_bits = p.precision_bits.max(128);
        let rows: Vec<GeographyRow> = xs
            .into_par_iter()
            .map(|x| {
                let (lo, hi) = self.bounds_at(&x, render_bits);
                let window_nonempty = self.y_window(&x, p).is_some();
                GeographyRow {
                    lower: lo.midpoint(),
                    upper: hi.midpoint(),
                    window_nonempty,
                    x,
                }
            })
            .collect();
        Ok(match format {
            PlotFormat::Csv => render_csv(&rows),
            PlotFormat::Svg => render_svg(&rows, p),
        })
    }

    pub fn write_geography(
        &self,
        path: &Path,
        x_min: &BigInt,
        x_max: &BigInt,
        step: &BigInt,
        format: PlotFormat,
        p: &ChenParams,
    ) -> Result<(), GeographyError> {
        let doc = self.emit_geography(x_min, x_max, step, format, p)?;
        std::fs::write(path, doc)?;
        Ok(())
    }
}

/// Chen bounds at `x`.
pub fn bounds(x: &BigInt, p: &ChenParams) -> (RatInterval, RatInterval) {
    Region::chen().bounds(x, p)
}

pub fn in_region(x: &BigInt, y: &BigInt, p: &ChenParams) -> RegionDecision {
    Region::chen().in_region(x, y, p)
}

pub fn y_window(x: &BigInt, p: &ChenParams) -> Option<YWindow> {
    Region::chen().y_window(x, p)
}

pub fn min_feasible_x(p: &ChenParams) -> Option<BigInt> {
    Region::chen().min_feasible_x(p)
}

pub fn emit_geography(
    x_min: &BigInt,
    x_max: &BigInt,
    step: &BigInt,
    format: PlotFormat,
    p: &ChenParams,
) -> Result<String, GeographyError> {
    Region::chen().emit_geography(x_min, x_max, step, format, p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotFormat {
    Csv,
    Svg,
}

impl FromStr for PlotFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(PlotFormat::Csv),
            "svg" => Ok(PlotFormat::Svg),
            other => Err(format!("unknown format {other:?}, expected csv or svg")),
        }
    }
}

struct GeographyRow {
    x: BigInt,
    lower: BigRational,
    upper: BigRational,
    window_nonempty: bool,
}

const SIG_DIGITS: usize = 20;

fn render_csv(rows: &[GeographyRow]) -> String {
    let mut out = String::from("x,lower,upper,window_nonempty\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.x,
            decimal_string(&r.lower, SIG_DIGITS),
            decimal_string(&r.upper, SIG_DIGITS),
            r.window_nonempty
        );
    }
    out
}

fn render_svg(rows: &[GeographyRow], p: &ChenParams) -> String {
    const W: f64 = 800.0;
    const H: f64 = 500.0;
    const M: f64 = 60.0;
    let f = |r: &BigRational| r.to_f64().unwrap_or(0.0);
    let xs: Vec<f64> = rows.iter().map(|r| r.x.to_f64().unwrap_or(0.0)).collect();
    let lows: Vec<f64> = rows.iter().map(|r| f(&r.lower)).collect();
    let highs: Vec<f64> = rows.iter().map(|r| f(&r.upper)).collect();
    let (x0, x1) = (xs[0], xs[xs.len() - 1]);
    let y0 = lows.iter().chain(&highs).cloned().fold(f64::INFINITY, f64::min);
    let y1 = lows.iter().chain(&highs).cloned().fold(f64::NEG_INFINITY, f64::max);
    let span = |a: f64, b: f64| if b > a { b - a } else { 1.0 };
    let px = |x: f64| M + (x - x0) / span(x0, x1) * (W - 2.0 * M);
    let py = |y: f64| H - M - (y - y0) / span(y0, y1) * (H - 2.0 * M);
    let polyline = |ys: &[f64]| {
        xs.iter()
            .zip(ys)
            .map(|(&x, &y)| format!("{:.2},{:.2}", px(x), py(y)))
            .collect::<Vec<_>>()
            .join(" ")
    };

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(out, r#"  <rect x="0" y="0" width="{W}" height="{H}" fill="white"/>"#);

    // Shade each maximal run of rows where the integer window is nonempty.
    let mut i = 0;
    while i < rows.len() {
        if !rows[i].window_nonempty {
            i += 1;
            continue;
        }
        let start = i;
        while i < rows.len() && rows[i].window_nonempty {
            i += 1;
        }
        let run = start..i;
        let mut pts: Vec<String> = run
            .clone()
            .map(|j| format!("{:.2},{:.2}", px(xs[j]), py(lows[j])))
            .collect();
        pts.extend(run.rev().map(|j| format!("{:.2},{:.2}", px(xs[j]), py(highs[j]))));
        let _ = writeln!(
            out,
            r##"  <polygon class="region" points="{}" fill="#9ecae1" fill-opacity="0.5" stroke="none"/>"##,
            pts.join(" ")
        );
    }

    let _ = writeln!(
        out,
        r##"  <polyline class="lower" points="{}" fill="none" stroke="#08519c" stroke-width="1.5"/>"##,
        polyline(&lows)
    );
    let _ = writeln!(
        out,
        r##"  <polyline class="upper" points="{}" fill="none" stroke="#a50f15" stroke-width="1.5"/>"##,
        polyline(&highs)
    );
    let _ = writeln!(
        out,
        r#"  <line x1="{M}" y1="{b}" x2="{r}" y2="{b}" stroke="black"/>"#,
        b = H - M,
        r = W - M
    );
    let _ = writeln!(out, r#"  <line x1="{M}" y1="{M}" x2="{M}" y2="{b}" stroke="black"/>"#, b = H - M);
    let _ = writeln!(
        out,
        r#"  <text x="{cx}" y="{ty}" text-anchor="middle" font-size="14">x = chi_h (C = {c})</text>"#,
        cx = W / 2.0,
        ty = H - 15.0,
        c = p.threshold()
    );
    let _ = writeln!(
        out,
        r#"  <text x="15" y="{cy}" font-size="14" transform="rotate(-90 15 {cy})" text-anchor="middle">y = c1^2</text>"#,
        cy = H / 2.0
    );
    let _ = writeln!(
        out,
        r#"  <text x="{M}" y="{ty}" font-size="11">{x0} .. {x1}</text>"#,
        ty = H - M + 15.0,
        x0 = rows[0].x,
        x1 = rows[rows.len() - 1].x
    );
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> ChenParams {
        ChenParams::default()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    // Exact oracle: y > a·x + b·x^{2/3} ⟺ (y − a·x)³ > b³·x² when b > 0, by
    // monotonicity of cubing.
    fn above_lower(x: i64, y: i64) -> bool {
        let (a, b) = (rat(352, 89), rat(701, 5));
        let xr = rat(x, 1);
        let d = rat(y, 1) - &a * &xr;
        d.is_positive() && &d * &d * &d > &b * &b * &b * &xr * &xr
    }

    fn below_upper(x: i64, y: i64) -> bool {
        let (a, b) = (rat(18644, 2129), rat(3657, 10));
        let xr = rat(x, 1);
        let d = &a * &xr - rat(y, 1);
        d.is_positive() && &d * &d * &d > &b * &b * &b * &xr * &xr
    }

    #[test]
    fn bounds_at_one_and_at_a_cube() {
        let (lo, hi) = bounds(&1.into(), &p());
        assert!(lo.is_exact() && hi.is_exact());
        assert_eq!(lo.lo(), &(rat(352, 89) + rat(701, 5)));
        assert_eq!(hi.lo(), &(rat(18644, 2129) - rat(3657, 10)));
        assert_eq!(decimal_string(lo.lo(), 6), "144.155");
        assert_eq!(decimal_string(hi.lo(), 6), "-356.943");

        let (lo, _) = bounds(&8.into(), &p());
        assert!(lo.is_exact());
        assert_eq!(lo.lo(), &(rat(352 * 8, 89) + rat(701 * 4, 5)));
    }

    #[test]
    fn bounds_at_two_million() {
        let (lo, hi) = bounds(&2_000_000.into(), &p());
        // mpmath at 60 digits: 10135648.634409977280888, 11709200.327588274034320
        assert_eq!(decimal_string(&lo.midpoint(), 15), "10135648.6344100");
        assert_eq!(decimal_string(&hi.midpoint(), 15), "11709200.3275883");
        assert!(lo.width() < rat(1, 1 << 40));
    }

    #[test]
    fn region_decisions() {
        let c0 = ChenParams::new(0, 64, 4096).unwrap();
        assert_eq!(in_region(&100.into(), &5000.into(), &c0), RegionDecision::Outside);
        assert_eq!(
            in_region(&2_000_000.into(), &11_000_000.into(), &c0),
            RegionDecision::Inside
        );
        assert_eq!(
            in_region(&2_000_000.into(), &3_000_000.into(), &c0),
            RegionDecision::Outside
        );
        let big_c = ChenParams::new(2_000_000, 64, 4096).unwrap();
        assert_eq!(
            in_region(&2_000_000.into(), &11_000_000.into(), &big_c),
            RegionDecision::Outside
        );
    }

    #[test]
    fn window_endpoints_match_cube_oracle() {
        let w = y_window(&2_000_000.into(), &p()).unwrap();
        assert_eq!(w.min, BigInt::from(10_135_649));
        assert_eq!(w.max, BigInt::from(11_709_200));
        assert!(above_lower(2_000_000, 10_135_649) && !above_lower(2_000_000, 10_135_648));
        assert!(below_upper(2_000_000, 11_709_200) && !below_upper(2_000_000, 11_709_201));
        assert_eq!(y_window(&8.into(), &p()), None);
        assert_eq!(y_window(&1.into(), &p()), None);
    }

    #[test]
    fn window_endpoints_are_exact_over_a_sample() {
        for x in (1_169_000i64..1_400_000).step_by(7919) {
            let w = y_window(&x.into(), &p());
            match w {
                Some(w) => {
                    let (a, b) = (w.min.to_i64().unwrap(), w.max.to_i64().unwrap());
                    assert!(above_lower(x, a) && !above_lower(x, a - 1), "x={x}");
                    assert!(below_upper(x, b) && !below_upper(x, b + 1), "x={x}");
                }
                None => {
                    // no integer strictly between: check the neighbourhood of the lower bound
                    let (lo, _) = bounds(&x.into(), &p());
                    let f = lo.lo().floor().to_integer().to_i64().unwrap();
                    assert!(!(above_lower(x, f + 1) && below_upper(x, f + 1)), "x={x}");
                }
            }
        }
    }

    #[test]
    fn min_feasible_x_value() {
        let r = min_feasible_x(&p()).unwrap();
        assert_eq!(r, BigInt::from(1_169_227));
        assert!(y_window(&r, &p()).is_some());
        assert!(y_window(&(&r - 1), &p()).is_none());

        let high_c = ChenParams::new(2_000_000, 64, 4096).unwrap();
        assert_eq!(min_feasible_x(&high_c).unwrap(), BigInt::from(2_000_001));
    }

    #[test]
    fn precision_cap_yields_indeterminate_or_conservative_window() {
        // At 1 bit the enclosure of the lower bound is wider than 100.
        let tight = ChenParams::new(0, 1, 1).unwrap();
        let (lo, _) = bounds(&2_000_000.into(), &tight);
        let y = lo.lo().floor().to_integer() + 1;
        assert_eq!(
            in_region(&2_000_000.into(), &y, &tight),
            RegionDecision::Indeterminate { precision_reached: 1 }
        );
        let w = y_window(&2_000_000.into(), &tight).unwrap();
        assert!(w.min > BigInt::from(10_135_649));
        assert!(w.max < BigInt::from(11_709_200));
    }

    #[test]
    fn params_validation() {
        assert!(ChenParams::new(-1, 64, 4096).is_err());
        assert!(ChenParams::new(1, 128, 64).is_err());
        assert!(ChenParams::new(1, 0, 64).is_err());
    }

    #[test]
    fn check_surface_sets_flag() {
        let (s, d) = Region::chen().check_surface(&ChenSurface::new(2_000_000, 11_000_000), &p());
        assert_eq!(d, RegionDecision::Inside);
        assert!(s.region_checked());
        let (s, _) = Region::chen().check_surface(&ChenSurface::new(100, 5000), &p());
        assert!(!s.region_checked());
    }

    #[test]
    fn csv_single_row() {
        let doc = emit_geography(&8.into(), &8.into(), &1.into(), PlotFormat::Csv, &p()).unwrap();
        let lines: Vec<_> = doc.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], "x,lower,upper,window_nonempty");
        // x = 8: 2816/89 + 2804/5 and 149152/2129 − 14628/10, both exact
        assert_eq!(lines[1], "8,592.44044943820224719,-1392.7426961014560827,false");
    }

    #[test]
    fn invalid_ranges() {
        let one = BigInt::one();
        assert!(emit_geography(&5.into(), &4.into(), &one, PlotFormat::Csv, &p()).is_err());
        assert!(emit_geography(&0.into(), &4.into(), &one, PlotFormat::Csv, &p()).is_err());
        assert!(emit_geography(&1.into(), &4.into(), &0.into(), PlotFormat::Csv, &p()).is_err());
    }
}
