//! Univariate polynomials with arbitrary-precision integer coefficients.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modp::{PolyModP, PrimeModulus};
use crate::error::{Error, Result};

/// Integer polynomial, coefficients low-to-high, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut coeffs = coeffs;
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn derivative(&self) -> Self {
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Division by a monic divisor: quotient and remainder over Z.
    pub fn div_rem_monic(&self, divisor: &Self) -> (Self, Self) {
        assert!(divisor.is_monic(), "divisor must be monic");
        let dd = divisor.deg();
        if self.coeffs.len() <= dd {
            return (IntPoly::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * d;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (IntPoly::new(quot), IntPoly::new(rem))
    }

    /// Coefficient-wise division by an integer; `None` unless exact.
    pub fn div_scalar_exact(&self, d: &BigInt) -> Option<Self> {
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(IntPoly::new(out))
    }

    pub fn reduce_mod(&self, p: PrimeModulus) -> PolyModP {
        let pb = BigInt::from(p.get());
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits in u64"))
            .collect();
        PolyModP::new(p, coeffs)
    }

    /// Lift residues in `[0,p)` to integers.
    pub fn lift(poly: &PolyModP) -> Self {
        IntPoly::new(poly.coeffs().iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Squared Euclidean norm of the coefficient vector.
    pub fn norm2_squared(&self) -> BigInt {
        self.coeffs.iter().map(|c| c * c).sum()
    }

    /// `c^n * f(x / c)`: substitutes `x -> x / c` and clears the denominator.
    pub fn scale_root(&self, c: &BigInt) -> Self {
        let n = self.deg();
        IntPoly::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, a)| a * num_traits::pow(c.clone(), n - i))
                .collect(),
        )
    }

    /// Low-to-high coefficient list form, e.g. `[6561,0,0,0,0,0,0,0,1]`.
    pub fn to_list_string(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}]", parts.join(","))
    }

    /// Parses either a coefficient list `[a0,a1,...]` or an expression such
    /// as `x^8+6561` or `x^3 - x - 1`.
    pub fn parse(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with('[') {
            parse_list(t)
        } else {
            parse_expr(t)
        }
    }
}

fn parse_list(t: &str) -> Result<IntPoly> {
    let inner = t
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("unbalanced brackets in {t:?}")))?;
    if inner.trim().is_empty() {
        return Err(Error::Parse("empty coefficient list".into()));
    }
    let coeffs = inner
        .split(',')
        .map(|part| {
            BigInt::from_str(part.trim())
                .map_err(|_| Error::Parse(format!("bad coefficient {:?}", part.trim())))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IntPoly::new(coeffs))
}

fn parse_expr(t: &str) -> Result<IntPoly> {
    let compact: String = t.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    if let Some(bad) = compact
        .chars()
        .find(|c| !(c.is_ascii_digit() || matches!(c, 'x' | '^' | '+' | '-' | '*')))
    {
        return Err(Error::Parse(format!("unexpected character {bad:?}")));
    }
    // split into signed terms
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut current = String::new();
    let mut negative = false;
    for (i, ch) in compact.chars().enumerate() {
        if ch == '+' || ch == '-' {
            if current.is_empty() {
                if i == 0 {
                    negative = ch == '-';
                    continue;
                }
                return Err(Error::Parse(format!("dangling sign in {t:?}")));
            }
            terms.push((negative, std::mem::take(&mut current)));
            negative = ch == '-';
        } else {
            current.push(ch);
        }
    }
    if current.is_empty() {
        return Err(Error::Parse(format!("dangling sign in {t:?}")));
    }
    terms.push((negative, current));

    let mut coeffs: Vec<BigInt> = Vec::new();
    for (neg, term) in terms {
        let (coef, exp) = parse_term(&term)?;
        if exp > 4096 {
            return Err(Error::Parse(format!("degree {exp} too large")));
        }
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, BigInt::zero());
        }
        if neg {
            coeffs[exp] -= coef;
        } else {
            coeffs[exp] += coef;
        }
    }
    Ok(IntPoly::new(coeffs))
}

fn parse_term(term: &str) -> Result<(BigInt, usize)> {
    let bad = || Error::Parse(format!("bad term {term:?}"));
    match term.find('x') {
        None => Ok((BigInt::from_str(term).map_err(|_| bad())?, 0)),
        Some(pos) => {
            let (head, tail) = term.split_at(pos);
            let coef = match head {
                "" => BigInt::one(),
                h => BigInt::from_str(h.strip_suffix('*').ok_or_else(bad)?).map_err(|_| bad())?,
            };
            let rest = &tail[1..];
            let exp = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^')
                    .ok_or_else(bad)?
                    .parse::<usize>()
                    .map_err(|_| bad())?
            };
            Ok((coef, exp))
        }
    }
}

impl FromStr for IntPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        IntPoly::parse(s)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms_agree() {
        let a = IntPoly::parse("x^8+6561").unwrap();
        let b = IntPoly::parse("[6561,0,0,0,0,0,0,0,1]").unwrap();
        assert_eq!(a, b);
        assert_eq!(
            IntPoly::parse("x^3 - x - 1").unwrap(),
            IntPoly::from_i64(&[-1, -1, 0, 1])
        );
        assert_eq!(
            IntPoly::parse("-x^2+2*x").unwrap(),
            IntPoly::from_i64(&[0, 2, -1])
        );
        assert_eq!(IntPoly::parse("x").unwrap(), IntPoly::from_i64(&[0, 1]));
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in [
            "", "x^", "x^8+", "y^2+1", "[1,2", "[]", "x^2++1", "3*", "x^99999",
        ] {
            assert!(IntPoly::parse(s).is_err(), "{s:?} should fail");
        }
    }

    #[test]
    fn display_roundtrips() {
        for s in ["x^8+6561", "x^3-x-1", "-x^2+2*x", "x^8-48", "x"] {
            let p = IntPoly::parse(s).unwrap();
            assert_eq!(p.to_string(), s);
            assert_eq!(IntPoly::parse(&p.to_string()).unwrap(), p);
        }
    }

    #[test]
    fn monic_division() {
        let f = IntPoly::from_i64(&[-1, 0, 0, 1]);
        let g = IntPoly::from_i64(&[-1, 1]);
        let (q, r) = f.div_rem_monic(&g);
        assert_eq!(q, IntPoly::from_i64(&[1, 1, 1]));
        assert!(r.is_zero());
    }
}
