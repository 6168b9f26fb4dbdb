//! Explicit size thresholds as exact rationals, with a flag for whether each is small enough to
//! reach on a desk.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("ε must lie in (0, 1], got {0}")]
    Epsilon(String),
    #[error("cannot parse {0:?} as a number")]
    Parse(String),
    #[error("{0} must be at least 1")]
    NonPositive(&'static str),
}

/// Largest value still considered reachable at desk scale.
pub const DESK_SCALE: u64 = 1_000_000;

/// An exact value, or its decimal logarithm when the exponent is not an integer.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundValue {
    Exact(BigRational),
    Log10(f64),
}

impl BoundValue {
    pub fn log10(&self) -> f64 {
        match self {
            BoundValue::Exact(q) => rational_log10(q),
            BoundValue::Log10(l) => *l,
        }
    }

    pub fn exact(&self) -> Option<&BigRational> {
        match self {
            BoundValue::Exact(q) => Some(q),
            BoundValue::Log10(_) => None,
        }
    }

    pub fn at_most(&self, bound: u64) -> bool {
        match self {
            BoundValue::Exact(q) => *q <= BigRational::from_integer(bound.into()),
            BoundValue::Log10(l) => *l <= (bound as f64).log10(),
        }
    }

    pub fn below_one(&self) -> bool {
        match self {
            BoundValue::Exact(q) => *q < BigRational::one(),
            BoundValue::Log10(l) => *l < 0.0,
        }
    }
}

impl fmt::Display for BoundValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundValue::Exact(q) if q.is_integer() && q.numer().bits() <= 64 => write!(f, "{}", q.numer()),
            BoundValue::Exact(q) if q.is_integer() && is_power_of_ten(q.numer()) => {
                write!(f, "1e{}", q.numer().to_string().len() - 1)
            }
            BoundValue::Exact(q) if q.numer().is_one() && is_power_of_ten(q.denom()) => {
                write!(f, "1e-{}", q.denom().to_string().len() - 1)
            }
            BoundValue::Exact(q) if q.numer().bits() <= 64 && q.denom().bits() <= 64 => write!(f, "{q}"),
            other => write!(f, "~1e{:.3}", other.log10()),
        }
    }
}

impl Serialize for BoundValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BoundValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if let Some(l) = s.strip_prefix("~1e") {
            return l.parse().map(BoundValue::Log10).map_err(serde::de::Error::custom);
        }
        parse_rational(&s)
            .map(BoundValue::Exact)
            .map_err(serde::de::Error::custom)
    }
}

fn is_power_of_ten(n: &BigInt) -> bool {
    let s = n.to_string();
    s.starts_with('1') && s[1..].bytes().all(|b| b == b'0')
}

fn rational_log10(q: &BigRational) -> f64 {
    // digit counts keep the logarithm finite for values far outside f64 range
    fn big_log10(n: &BigInt) -> f64 {
        let s = n.abs().to_string();
        let lead: f64 = s[..s.len().min(17)].parse().unwrap_or(0.0);
        lead.log10() + (s.len() - s.len().min(17)) as f64
    }
    big_log10(q.numer()) - big_log10(q.denom())
}

/// Parses a decimal (`0.25`, `1e-3`) or a fraction (`1/3`) exactly.
pub fn parse_rational(s: &str) -> Result<BigRational, DomainError> {
    let s = s.trim();
    let err = || DomainError::Parse(s.to_string());
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| err())?;
        let d: BigInt = d.trim().parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exponent) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().map_err(|_| err())?),
        None => (s, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(err());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| err())?;
    let scale = exponent - frac.len() as i32;
    let ten = BigRational::from_integer(BigInt::from(10));
    Ok(BigRational::from_integer(digits) * Pow::pow(&ten, scale))
}

/// Parses an arbitrarily large integer, accepting `1e10` style powers of ten.
pub fn parse_integer(s: &str) -> Result<BigInt, DomainError> {
    let q = parse_rational(s)?;
    if q.is_integer() {
        Ok(q.to_integer())
    } else {
        Err(DomainError::Parse(s.to_string()))
    }
}

pub fn parse_epsilon(s: &str) -> Result<BigRational, DomainError> {
    let e = parse_rational(s)?;
    check_epsilon(&e)?;
    Ok(e)
}

fn check_epsilon(e: &BigRational) -> Result<(), DomainError> {
    if e.is_positive() && *e <= BigRational::one() {
        Ok(())
    } else {
        Err(DomainError::Epsilon(e.to_string()))
    }
}

fn int(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

/// `base^exponent`, exact when the exponent is an integer.
fn power(base: &BigRational, exponent: &BigRational) -> BoundValue {
    if exponent.is_integer() {
        if let Some(e) = exponent.to_integer().to_i32() {
            return BoundValue::Exact(Pow::pow(base, e));
        }
    }
    BoundValue::Log10(exponent.to_f64().unwrap_or(f64::NAN) * rational_log10(base))
}

fn times(factor: &BigRational, v: BoundValue) -> BoundValue {
    match v {
        BoundValue::Exact(q) => BoundValue::Exact(q * factor),
        BoundValue::Log10(l) => BoundValue::Log10(l + rational_log10(factor)),
    }
}

/// `10^20 · ε^(-16/ε)`.
pub fn main_theorem_n(epsilon: &BigRational) -> Result<BoundValue, DomainError> {
    check_epsilon(epsilon)?;
    let inv = epsilon.recip();
    Ok(times(
        &int(BigInt::from(10).pow(20u32)),
        power(&inv, &(int(16) * &inv)),
    ))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub name: String,
    pub formula: String,
    pub value: BoundValue,
    /// Value at most [`DESK_SCALE`].
    pub feasible: bool,
    /// Set when the value is below one, which the formula does not anticipate.
    pub below_one: bool,
}

impl ThresholdReport {
    fn new(name: &str, formula: &str, value: BoundValue) -> Self {
        ThresholdReport {
            name: name.into(),
            formula: formula.into(),
            feasible: value.at_most(DESK_SCALE),
            below_one: value.below_one(),
            value,
        }
    }
}

/// Every threshold at the given parameters. `epsilon` doubles as `ε₀` in the increment step.
pub fn threshold_table(
    epsilon: &BigRational,
    m: usize,
    k: usize,
    k1: &BigInt,
) -> Result<Vec<ThresholdReport>, DomainError> {
    check_epsilon(epsilon)?;
    if m == 0 {
        return Err(DomainError::NonPositive("m"));
    }
    if k == 0 {
        return Err(DomainError::NonPositive("k"));
    }
    if !k1.is_positive() {
        return Err(DomainError::NonPositive("k1"));
    }
    let inv = epsilon.recip();
    let inv2 = &inv * &inv;
    let exact = |q: BigRational| BoundValue::Exact(q);
    let coloured_d = int(1280) * &inv2;
    let million_inv = BigRational::new(BigInt::one(), BigInt::from(1_000_000));
    Ok(vec![
        ThresholdReport::new("main_theorem_n", "10^20 ε^(-16/ε)", main_theorem_n(epsilon)?),
        ThresholdReport::new("dm_min_order", "(5m + 4) / ε²", exact(int(5 * m + 4) * &inv2)),
        ThresholdReport::new("close_subgraph_min_order", "2 / ε²", exact(int(2) * &inv2)),
        ThresholdReport::new("kd_length", "40 / ε²", exact(int(40) * &inv2)),
        ThresholdReport::new("kd_min_order", "32k / ε²", exact(int(32 * k) * &inv2)),
        ThresholdReport::new("rainbow_kd_length", "1280 / ε²", exact(coloured_d.clone())),
        ThresholdReport::new(
            "rainbow_kd_min_order",
            "1800k / ε⁴",
            exact(int(1800 * k) * &inv2 * &inv2),
        ),
        ThresholdReport::new(
            "lift_multiplicity",
            "9d + 3k, d = 1280 / ε²",
            exact(int(9) * coloured_d + int(3 * k)),
        ),
        ThresholdReport::new(
            "increment_k2",
            "10^-6 ε² k1",
            exact(&million_inv * epsilon * epsilon * int(k1.clone())),
        ),
        ThresholdReport::new("increment_tail_growth", "30 / ε", exact(int(30) * &inv)),
        ThresholdReport::new("increment_min_k1", "20 / ε", exact(int(20) * &inv)),
        ThresholdReport::new(
            "increment_min_order",
            "10^20 ε^-8 k1",
            exact(int(BigInt::from(10).pow(20u32)) * Pow::pow(&inv, 8i32) * int(k1.clone())),
        ),
        ThresholdReport::new(
            "k0",
            "(10^-6 ε^-2)^(2/ε)",
            power(&(million_inv * &inv2), &(int(2) * &inv)),
        ),
    ])
}
