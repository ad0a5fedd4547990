//! Exact edge costs: non-negative rationals extended with a symbolic `+inf`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Sub};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

pub type Rational = Ratio<i128>;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub enum Cost {
    Finite(Rational),
    Infinite,
}

impl Cost {
    pub const ZERO: Cost = Cost::Finite(Ratio::new_raw(0, 1));
    pub const ONE: Cost = Cost::Finite(Ratio::new_raw(1, 1));

    pub fn int(v: i128) -> Cost {
        Cost::Finite(Rational::from_integer(v))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, Cost::Infinite)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Cost::Finite(r) if r.is_zero())
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Cost::Finite(r) if r.is_negative())
    }

    pub fn finite(&self) -> Option<Rational> {
        match self {
            Cost::Finite(r) => Some(*r),
            Cost::Infinite => None,
        }
    }

    pub fn min(self, other: Cost) -> Cost {
        if self <= other {
            self
        } else {
            other
        }
    }
}

impl Ord for Cost {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Cost::Infinite, Cost::Infinite) => Ordering::Equal,
            (Cost::Infinite, _) => Ordering::Greater,
            (_, Cost::Infinite) => Ordering::Less,
            (Cost::Finite(a), Cost::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Cost {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Cost {
    type Output = Cost;
    fn add(self, rhs: Cost) -> Cost {
        match (self, rhs) {
            (Cost::Finite(a), Cost::Finite(b)) => Cost::Finite(a + b),
            _ => Cost::Infinite,
        }
    }
}

impl AddAssign for Cost {
    fn add_assign(&mut self, rhs: Cost) {
        *self = *self + rhs;
    }
}

/// `inf - x = inf` for finite `x`. Subtracting infinity is a logic error.
impl Sub for Cost {
    type Output = Cost;
    fn sub(self, rhs: Cost) -> Cost {
        match (self, rhs) {
            (Cost::Finite(a), Cost::Finite(b)) => Cost::Finite(a - b),
            (Cost::Infinite, Cost::Finite(_)) => Cost::Infinite,
            (_, Cost::Infinite) => panic!("cannot subtract an infinite cost"),
        }
    }
}

impl std::iter::Sum for Cost {
    fn sum<I: Iterator<Item = Cost>>(iter: I) -> Cost {
        iter.fold(Cost::ZERO, |a, b| a + b)
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cost::Infinite => f.write_str("inf"),
            Cost::Finite(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Cost::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse cost {0:?}: expected an integer, a decimal, p/q or \"inf\"")]
pub struct ParseCostError(pub String);

/// Accepts `inf`, integers, decimals such as `2.25` and fractions `p/q`.
impl FromStr for Cost {
    type Err = ParseCostError;

    fn from_str(s: &str) -> Result<Cost, ParseCostError> {
        let err = || ParseCostError(s.to_string());
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t.eq_ignore_ascii_case("infinity") {
            return Ok(Cost::Infinite);
        }
        if let Some((p, q)) = t.split_once('/') {
            let p: i128 = p.trim().parse().map_err(|_| err())?;
            let q: i128 = q.trim().parse().map_err(|_| err())?;
            if q == 0 {
                return Err(err());
            }
            return Ok(Cost::Finite(Rational::new(p, q)));
        }
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t),
        };
        let (int, frac) = body.split_once('.').unwrap_or((body, ""));
        if int.is_empty() && frac.is_empty() {
            return Err(err());
        }
        if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) || frac.len() > 30 {
            return Err(err());
        }
        let digits = format!("{int}{frac}");
        let numer: i128 = if digits.is_empty() { 0 } else { digits.parse().map_err(|_| err())? };
        let denom = 10i128.checked_pow(frac.len() as u32).ok_or_else(err)?;
        let r = Rational::new(numer, denom);
        Ok(Cost::Finite(if neg { -r } else { r }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn saturating_arithmetic() {
        assert_eq!(Cost::int(3) + Cost::Infinite, Cost::Infinite);
        assert_eq!(Cost::Infinite - Cost::int(2), Cost::Infinite);
        assert!(Cost::int(1_000_000) < Cost::Infinite);
        assert_eq!(Cost::int(2) + Cost::int(3), Cost::int(5));
    }

    #[test]
    fn parsing() {
        assert_eq!("inf".parse::<Cost>().unwrap(), Cost::Infinite);
        assert_eq!("2.25".parse::<Cost>().unwrap(), Cost::Finite(Rational::new(9, 4)));
        assert_eq!("3/6".parse::<Cost>().unwrap(), Cost::Finite(Rational::new(1, 2)));
        assert_eq!("7".parse::<Cost>().unwrap(), Cost::int(7));
        assert!("abc".parse::<Cost>().is_err());
        assert!("1/0".parse::<Cost>().is_err());
        assert_eq!(Cost::Finite(Rational::new(1, 2)).to_string(), "1/2");
    }
}
