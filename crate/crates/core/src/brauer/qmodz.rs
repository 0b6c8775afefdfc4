use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An element of Q/Z stored as `r/s` with `gcd(r, s) = 1` and `0 <= r < s`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QmodZ {
    num: BigInt,
    den: BigInt,
}

impl QmodZ {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let num = num.into();
        let den = den.into();
        if den.is_zero() {
            return Err(Error::BadFraction("zero denominator".into()));
        }
        let (num, den) = if den.is_negative() {
            (-num, -den)
        } else {
            (num, den)
        };
        let r = num.mod_floor(&den);
        let g = r.gcd(&den);
        if r.is_zero() {
            return Ok(QmodZ::zero());
        }
        Ok(QmodZ {
            num: r / &g,
            den: den / g,
        })
    }

    pub fn zero() -> Self {
        QmodZ {
            num: BigInt::zero(),
            den: BigInt::one(),
        }
    }

    pub fn half() -> Self {
        QmodZ {
            num: BigInt::one(),
            den: BigInt::from(2),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_half(&self) -> bool {
        self.num.is_one() && self.den == BigInt::from(2)
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    /// Order in Q/Z.
    pub fn order(&self) -> BigInt {
        self.den.clone()
    }

    pub fn add(&self, other: &Self) -> Self {
        QmodZ::new(
            &self.num * &other.den + &other.num * &self.den,
            &self.den * &other.den,
        )
        .expect("nonzero denominator")
    }

    pub fn neg(&self) -> Self {
        QmodZ::new(-&self.num, self.den.clone()).expect("nonzero denominator")
    }

    /// Multiplication by an integer (a local degree).
    pub fn scale(&self, k: impl Into<BigInt>) -> Self {
        QmodZ::new(&self.num * k.into(), self.den.clone()).expect("nonzero denominator")
    }
}

impl Default for QmodZ {
    fn default() -> Self {
        QmodZ::zero()
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for QmodZ {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::BadFraction(s.to_string());
        match s.split_once('/') {
            Some((n, d)) => QmodZ::new(
                BigInt::from_str(n.trim()).map_err(|_| bad())?,
                BigInt::from_str(d.trim()).map_err(|_| bad())?,
            ),
            None => QmodZ::new(BigInt::from_str(s).map_err(|_| bad())?, 1),
        }
    }
}

impl Serialize for QmodZ {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QmodZ {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_representatives() {
        let a: QmodZ = "5/3".parse().unwrap();
        assert_eq!(a.to_string(), "2/3");
        let b: QmodZ = "-1/3".parse().unwrap();
        assert_eq!(b, a);
        assert_eq!("4/2".parse::<QmodZ>().unwrap(), QmodZ::zero());
        assert_eq!("2/-4".parse::<QmodZ>().unwrap(), QmodZ::half());
        assert!("1/0".parse::<QmodZ>().is_err());
        assert!("x".parse::<QmodZ>().is_err());
    }

    #[test]
    fn arithmetic() {
        let third: QmodZ = "1/3".parse().unwrap();
        let two_thirds: QmodZ = "2/3".parse().unwrap();
        assert!(third.add(&two_thirds).is_zero());
        assert_eq!(third.scale(2), two_thirds);
        assert!(QmodZ::half().scale(2).is_zero());
        assert_eq!(third.neg(), two_thirds);
        assert_eq!(serde_json::to_string(&third).unwrap(), "\"1/3\"");
    }
}
