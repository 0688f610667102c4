//! Correctly rounded binary floating-point values of arbitrary precision.
//!
//! Only what the fractional Helly fractions need: rounding a rational to a
//! given number of mantissa bits, and `1 - y^(1/k)` for rational `y`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

pub const DEFAULT_PRECISION: u32 = 64;

/// `mantissa * 2^exponent`, with `|mantissa|` holding exactly `precision`
/// significant bits unless the value is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Real {
    mantissa: BigInt,
    exponent: i64,
    precision: u32,
}

impl Real {
    pub fn zero(precision: u32) -> Self {
        Real {
            mantissa: BigInt::zero(),
            exponent: 0,
            precision,
        }
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.mantissa
    }

    pub fn exponent(&self) -> i64 {
        self.exponent
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }

    /// Nearest representable value, ties to even.
    pub fn from_rational(q: &BigRational, precision: u32) -> Self {
        assert!(precision >= 2, "precision must be at least two bits");
        if q.is_zero() {
            return Real::zero(precision);
        }
        let negative = q.is_negative();
        let q = q.abs();
        let (num, den) = (q.numer().clone(), q.denom().clone());
        // choose e with 2^(p-1) <= q / 2^e < 2^p
        let mut e = num.bits() as i64 - den.bits() as i64 - precision as i64;
        loop {
            let scaled = scale(&num, &den, e);
            let lower = BigRational::from_integer(BigInt::one() << (precision - 1));
            let upper = BigRational::from_integer(BigInt::one() << precision);
            if scaled < lower {
                e -= 1;
            } else if scaled >= upper {
                e += 1;
            } else {
                let mut m = round_half_even(&scaled);
                if m == BigInt::one() << precision {
                    m >>= 1;
                    e += 1;
                }
                if negative {
                    m = -m;
                }
                return Real {
                    mantissa: m,
                    exponent: e,
                    precision,
                };
            }
        }
    }

    pub fn to_rational(&self) -> BigRational {
        let m = BigRational::from_integer(self.mantissa.clone());
        if self.exponent >= 0 {
            m * BigRational::from_integer(BigInt::one() << self.exponent as usize)
        } else {
            m / BigRational::from_integer(BigInt::one() << (-self.exponent) as usize)
        }
    }

    /// Unit in the last place.
    pub fn ulp(&self) -> BigRational {
        pow2(self.exponent)
    }

    pub fn to_f64(&self) -> f64 {
        let q = self.to_rational();
        q.numer().to_f64().unwrap_or(f64::NAN) / q.denom().to_f64().unwrap_or(f64::NAN)
    }

    /// `|self - other|` is at most `ulps` units in the last place of the
    /// larger-magnitude operand (or of `self` if both are zero).
    pub fn within_ulps(&self, other: &Real, ulps: u32) -> bool {
        let diff = (self.to_rational() - other.to_rational()).abs();
        let unit = match self.abs_cmp(other) {
            Ordering::Less => other.ulp(),
            _ => self.ulp(),
        };
        diff <= unit * BigRational::from_integer(ulps.into())
    }

    fn abs_cmp(&self, other: &Real) -> Ordering {
        self.to_rational().abs().cmp(&other.to_rational().abs())
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // 20 significant decimals is more than 64 bits need
        let q = self.to_rational();
        write!(f, "{}", decimal(&q, 20))
    }
}

impl Serialize for Real {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Real", 4)?;
        s.serialize_field("mantissa", &self.mantissa.to_string())?;
        s.serialize_field("exponent", &self.exponent)?;
        s.serialize_field("precision", &self.precision)?;
        s.serialize_field("decimal", &self.to_string())?;
        s.end()
    }
}

fn pow2(e: i64) -> BigRational {
    if e >= 0 {
        BigRational::from_integer(BigInt::one() << e as usize)
    } else {
        BigRational::new(BigInt::one(), BigInt::one() << (-e) as usize)
    }
}

/// `num / den / 2^e` as a rational.
fn scale(num: &BigInt, den: &BigInt, e: i64) -> BigRational {
    if e >= 0 {
        BigRational::new(num.clone(), den << e as usize)
    } else {
        BigRational::new(num << (-e) as usize, den.clone())
    }
}

fn round_half_even(q: &BigRational) -> BigInt {
    let (fl, rem): (BigInt, BigInt) = q.numer().div_mod_floor(q.denom());
    let twice: BigInt = rem * 2;
    match twice.cmp(q.denom()) {
        Ordering::Less => fl,
        Ordering::Greater => fl + 1,
        Ordering::Equal => {
            if fl.is_even() {
                fl
            } else {
                fl + 1
            }
        }
    }
}

fn decimal(q: &BigRational, digits: usize) -> String {
    if q.is_zero() {
        return "0".into();
    }
    let sign = if q.is_negative() { "-" } else { "" };
    let q = q.abs();
    let int = q.numer() / q.denom();
    let mut rem = q.numer() % q.denom();
    let mut out = format!("{sign}{int}");
    if !rem.is_zero() {
        out.push('.');
        for _ in 0..digits {
            rem *= 10;
            let (dgt, r): (BigInt, BigInt) = rem.div_rem(q.denom());
            out.push_str(&dgt.to_string());
            rem = r;
            if rem.is_zero() {
                break;
            }
        }
    }
    out
}

/// `1 - y^(1/k)` for rational `0 <= y <= 1`, correctly rounded.
pub fn one_minus_root(y: &BigRational, k: u32, precision: u32) -> Real {
    assert!(k >= 1);
    assert!(!y.is_negative() && *y <= BigRational::one());
    if y.is_zero() {
        return Real::from_rational(&BigRational::one(), precision);
    }
    if y.is_one() {
        return Real::zero(precision);
    }
    let one = BigRational::one();
    let mut bits = precision as usize + 64;
    loop {
        // r = floor(y^(1/k) * 2^bits) = floor(floor(y * 2^(bits k))^(1/k))
        let shifted = y.numer() << (bits * k as usize);
        let (floor, rem) = shifted.div_rem(y.denom());
        let r = floor.nth_root(k);
        let scale = pow2(bits as i64);
        if rem.is_zero() && num_traits::pow(r.clone(), k as usize) == floor {
            let root = BigRational::from_integer(r) * &scale.recip();
            return Real::from_rational(&(&one - root), precision);
        }
        // y^(1/k) lies strictly between r and r + 1 (scaled)
        let hi = &one - BigRational::from_integer(r.clone()) * scale.recip();
        let lo = &one - BigRational::from_integer(r + 1) * scale.recip();
        let (a, b) = (
            Real::from_rational(&lo, precision),
            Real::from_rational(&hi, precision),
        );
        if a == b || bits > 1 << 16 {
            return b;
        }
        bits *= 2;
    }
}
