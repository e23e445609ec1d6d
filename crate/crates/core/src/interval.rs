//! Rational interval enclosures with outward (directed) rounding.
//!
//! Irrational quantities (x^{2/3}, π) are enclosed between two rationals with
//! dyadic denominators. Every enclosure is guaranteed to contain the true
//! value; widening the working precision only shrinks it.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Closed interval `[lo, hi]` with rational endpoints.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatInterval {
    lo: BigRational,
    hi: BigRational,
}

impl RatInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Self { lo, hi }
    }

    pub fn point(v: BigRational) -> Self {
        Self {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(2.into())
    }

    /// `self · c` for an exact rational `c`.
    pub fn scale(&self, c: &BigRational) -> Self {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if c.is_negative() {
            Self { lo: b, hi: a }
        } else {
            Self { lo: a, hi: b }
        }
    }

    /// `self + c` for an exact rational `c`.
    pub fn shift(&self, c: &BigRational) -> Self {
        Self {
            lo: &self.lo + c,
            hi: &self.hi + c,
        }
    }

    /// Square of an interval contained in `[0, ∞)`.
    pub fn square_nonneg(&self) -> Self {
        assert!(!self.lo.is_negative());
        Self {
            lo: &self.lo * &self.lo,
            hi: &self.hi * &self.hi,
        }
    }

    /// Certified comparison against an exact value: `Some` only when every
    /// point of the interval compares the same way.
    pub fn cmp_exact(&self, v: &BigRational) -> Option<Ordering> {
        if &self.hi < v {
            Some(Ordering::Less)
        } else if &self.lo > v {
            Some(Ordering::Greater)
        } else if self.is_exact() {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

fn dyadic(num: BigInt, bits: u32) -> BigRational {
    BigRational::new(num, BigInt::one() << bits as usize)
}

/// Enclosure of `x^{2/3}` for `x ≥ 0` at `bits` fractional bits.
///
/// Perfect cubes come back as exact points.
pub fn two_thirds_power(x: &BigInt, bits: u32) -> RatInterval {
    assert!(!x.is_negative(), "two_thirds_power of a negative number");
    let c = x.cbrt();
    if &(&c * &c * &c) == x {
        return RatInterval::point(BigRational::from_integer(&c * &c));
    }
    let scaled: BigInt = (x * x) << (3 * bits as usize);
    let r = scaled.cbrt();
    if &r * &r * &r == scaled {
        return RatInterval::point(dyadic(r, bits));
    }
    RatInterval {
        lo: dyadic(r.clone(), bits),
        hi: dyadic(r + 1, bits),
    }
}

/// `arctan(1/q) · 2^s`, truncated term-by-term, together with the number of
/// summed terms. The absolute error is at most `2·terms + 1` units.
fn arctan_inv_scaled(q: u32, s: u32) -> (BigInt, u64) {
    let q = BigInt::from(q);
    let q2 = &q * &q;
    let mut power = (BigInt::one() << s as usize) / &q;
    let mut sum = BigInt::zero();
    let mut k: u64 = 0;
    while !power.is_zero() {
        let term = &power / BigInt::from(2 * k + 1);
        if k.is_even() {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &q2;
        k += 1;
    }
    (sum, k)
}

/// Enclosure of π of width about `2^{-bits}` (Machin's formula in fixed point).
pub fn pi_enclosure(bits: u32) -> RatInterval {
    let s = bits + 16;
    let (a5, n5) = arctan_inv_scaled(5, s);
    let (a239, n239) = arctan_inv_scaled(239, s);
    let approx = BigInt::from(16) * a5 - BigInt::from(4) * a239;
    let err = BigInt::from(16 * (2 * n5 + 1) + 4 * (2 * n239 + 1));
    RatInterval {
        lo: dyadic(&approx - &err, s),
        hi: dyadic(approx + err, s),
    }
}

/// Decimal rendering rounded (half away from zero) to `sig` significant
/// digits, never in scientific notation.
pub fn decimal_string(v: &BigRational, sig: usize) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    let neg = v.is_negative();
    let a = v.abs();
    // Find exponent p with 10^p ≤ a < 10^{p+1}.
    let ten = BigRational::from_integer(10.into());
    let int_digits = a.to_integer().to_string();
    let mut p: i64 = if a >= BigRational::one() {
        int_digits.len() as i64 - 1
    } else {
        let mut p = -1;
        let mut t = &a * &ten;
        while t < BigRational::one() {
            t *= &ten;
            p -= 1;
        }
        p
    };
    let shift = sig as i64 - 1 - p;
    let mut scaled_int = round_half_away(&scale_pow10(&a, shift));
    if scaled_int.to_string().len() > sig {
        // rounding carried into a new digit, e.g. 9.99 → 10.0
        p += 1;
        let shift = sig as i64 - 1 - p;
        scaled_int = round_half_away(&scale_pow10(&a, shift));
    }
    let shift = sig as i64 - 1 - p;
    let digits = scaled_int.to_string();
    let body = if shift <= 0 {
        let zeros = "0".repeat((-shift) as usize);
        format!("{digits}{zeros}")
    } else {
        let shift = shift as usize;
        if digits.len() > shift {
            let (i, f) = digits.split_at(digits.len() - shift);
            format!("{i}.{f}")
        } else {
            format!("0.{}{}", "0".repeat(shift - digits.len()), digits)
        }
    };
    if neg {
        format!("-{body}")
    } else {
        body
    }
}

fn scale_pow10(a: &BigRational, shift: i64) -> BigRational {
    let p = BigInt::from(10).pow(shift.unsigned_abs() as u32);
    if shift >= 0 {
        a * BigRational::from_integer(p)
    } else {
        a / BigRational::from_integer(p)
    }
}

fn round_half_away(a: &BigRational) -> BigInt {
    let (q, r) = a.numer().div_rem(a.denom());
    if BigInt::from(2) * r.abs() >= *a.denom() {
        q + a.numer().signum()
    } else {
        q
    }
}
