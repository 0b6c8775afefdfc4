use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// A place of a number field.
///
/// Finite places are indexed by the canonical factor order of the defining
/// polynomial modulo `p`; real places by ascending root; complex places by
/// conjugate pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Place {
    Finite {
        p: u64,
        idx: usize,
    },
    #[serde(alias = "infinite")]
    Real {
        #[serde(default)]
        idx: usize,
    },
    Complex {
        idx: usize,
    },
}

impl Place {
    pub fn finite(p: u64, idx: usize) -> Self {
        Place::Finite { p, idx }
    }

    pub fn real(idx: usize) -> Self {
        Place::Real { idx }
    }

    /// The rational prime below a finite place.
    pub fn prime(&self) -> Option<u64> {
        match *self {
            Place::Finite { p, .. } => Some(p),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Place::Finite { .. })
    }

    pub fn is_real(&self) -> bool {
        matches!(self, Place::Real { .. })
    }

    pub fn is_complex(&self) -> bool {
        matches!(self, Place::Complex { .. })
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite { p, idx } => write!(f, "P{p}.{idx}"),
            Place::Real { idx } => write!(f, "real.{idx}"),
            Place::Complex { idx } => write!(f, "complex.{idx}"),
        }
    }
}

/// Accepts `P7.0`, `7` (first place above 7), `real.0`, `inf` (first real
/// place) and `complex.0`.
impl std::str::FromStr for Place {
    type Err = crate::error::Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || crate::error::Error::BadPlace(s.to_string());
        let s = s.trim();
        let index = |t: &str| t.parse::<usize>().map_err(|_| bad());
        if s == "inf" || s == "infinity" {
            return Ok(Place::real(0));
        }
        if let Some(rest) = s.strip_prefix("real.") {
            return Ok(Place::real(index(rest)?));
        }
        if let Some(rest) = s.strip_prefix("complex.") {
            return Ok(Place::Complex { idx: index(rest)? });
        }
        let body = s
            .strip_prefix('P')
            .or_else(|| s.strip_prefix('p'))
            .unwrap_or(s);
        let (p, idx) = match body.split_once('.') {
            Some((p, i)) => (p, index(i)?),
            None => (body, 0),
        };
        let p = p.parse::<u64>().map_err(|_| bad())?;
        Ok(Place::finite(p, idx))
    }
}

/// Ramification index and inertia degree of one prime above `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LocalFactor {
    pub e: usize,
    pub f: usize,
}

impl LocalFactor {
    /// The local degree `e * f`.
    pub fn degree(&self) -> usize {
        self.e * self.f
    }
}

/// Primes above `p` in canonical factor order (this order defines
/// `Place::Finite` indices).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeDecomposition {
    pub p: u64,
    pub factors: Vec<LocalFactor>,
}

impl PrimeDecomposition {
    pub fn splitting_type(&self) -> SplittingType {
        let mut pairs: Vec<(usize, usize)> = self.factors.iter().map(|lf| (lf.e, lf.f)).collect();
        pairs.sort_unstable();
        SplittingType { p: self.p, pairs }
    }

    pub fn places(&self) -> impl Iterator<Item = (Place, LocalFactor)> + '_ {
        self.factors
            .iter()
            .enumerate()
            .map(move |(idx, lf)| (Place::finite(self.p, idx), *lf))
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }
}

/// Sorted multiset of `(e, f)` pairs describing how `p` factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SplittingType {
    pub p: u64,
    pub pairs: Vec<(usize, usize)>,
}

impl SplittingType {
    pub fn degree(&self) -> usize {
        self.pairs.iter().map(|&(e, f)| e * f).sum()
    }

    /// gcd of the inertia degrees.
    pub fn inertia_gcd(&self) -> usize {
        self.pairs.iter().fold(0, |g, &(_, f)| g.gcd(&f))
    }

    pub fn predicates(&self) -> SplitPredicates {
        SplitPredicates {
            splits_completely: self.pairs.iter().all(|&pair| pair == (1, 1)),
            has_degree_one_factor: self.pairs.iter().any(|&(_, f)| f == 1),
            unramified: self.pairs.iter().all(|&(e, _)| e == 1),
        }
    }

    /// All pairs identical, as for a Galois extension.
    pub fn is_uniform(&self) -> bool {
        self.pairs.windows(2).all(|w| w[0] == w[1])
    }
}

impl fmt::Display for SplittingType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pairs
            .iter()
            .map(|(e, f)| format!("({e},{f})"))
            .collect();
        write!(f, "{}: [{}]", self.p, parts.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitPredicates {
    pub splits_completely: bool,
    pub has_degree_one_factor: bool,
    pub unramified: bool,
}
