//! Bounded-prime sweeps: split-set containment, splitting equivalence,
//! uniformity (Galois) evidence and the Galois fingerprint.
//!
//! Every result here is evidence up to a stated bound, never a proof.

use rayon::prelude::*;
use serde::Serialize;

use super::field::NumberField;
use super::place::{PrimeDecomposition, SplittingType};
use crate::error::{Error, Result};
use crate::fppoly::primes_up_to;

/// Default prime bound for sweeps.
pub const DEFAULT_PRIME_BOUND: u64 = 10_000;

/// Decompositions of every prime up to `bound`, in ascending order of `p`.
pub fn sweep(k: &NumberField, bound: u64) -> Vec<(u64, Result<PrimeDecomposition>)> {
    primes_up_to(bound)
        .into_par_iter()
        .map(|p| (p, k.decomposition(p)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContainmentReport {
    pub bound: u64,
    pub holds_up_to_bound: bool,
    pub exceptions: Vec<u64>,
    pub primes_tested: usize,
    pub skipped_primes: Vec<u64>,
}

/// Tests `splits_completely(A, p) => splits_completely(B, p)` at every prime
/// `p <= bound` good for both fields.
pub fn split_set_contained(
    a: &NumberField,
    b: &NumberField,
    bound: u64,
) -> Result<ContainmentReport> {
    if bound < 100 {
        return Err(Error::InvalidArgument(format!(
            "bound {bound} must be at least 100"
        )));
    }
    let rows: Vec<(u64, Option<bool>)> = primes_up_to(bound)
        .into_par_iter()
        .map(|p| match (a.split_predicates(p), b.split_predicates(p)) {
            (Ok(pa), Ok(pb)) => (p, Some(!pa.splits_completely || pb.splits_completely)),
            _ => (p, None),
        })
        .collect();
    let mut report = ContainmentReport {
        bound,
        holds_up_to_bound: true,
        exceptions: Vec::new(),
        primes_tested: 0,
        skipped_primes: Vec::new(),
    };
    for (p, row) in rows {
        match row {
            Some(ok) => {
                report.primes_tested += 1;
                if !ok {
                    report.exceptions.push(p);
                }
            }
            None => report.skipped_primes.push(p),
        }
    }
    report.holds_up_to_bound = report.exceptions.is_empty();
    Ok(report)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeMismatch {
    pub p: u64,
    pub first: SplittingType,
    pub second: SplittingType,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub bound: u64,
    pub splitting_types_agree: bool,
    pub inertia_gcds_agree: bool,
    pub primes_tested: usize,
    pub excluded_primes: Vec<u64>,
    pub type_mismatches: Vec<TypeMismatch>,
    pub gcd_mismatches: Vec<u64>,
}

impl EquivalenceReport {
    pub fn holds(&self) -> bool {
        self.splitting_types_agree && self.inertia_gcds_agree
    }
}

/// Compares splitting-type multisets and inertia gcds at every prime
/// `p <= bound` good for both fields.
pub fn splitting_equivalence(a: &NumberField, b: &NumberField, bound: u64) -> EquivalenceReport {
    let rows: Vec<(u64, Option<(SplittingType, SplittingType)>)> = primes_up_to(bound)
        .into_par_iter()
        .map(|p| match (a.splitting_type(p), b.splitting_type(p)) {
            (Ok(sa), Ok(sb)) => (p, Some((sa, sb))),
            _ => (p, None),
        })
        .collect();
    let mut report = EquivalenceReport {
        bound,
        splitting_types_agree: true,
        inertia_gcds_agree: true,
        primes_tested: 0,
        excluded_primes: Vec::new(),
        type_mismatches: Vec::new(),
        gcd_mismatches: Vec::new(),
    };
    for (p, row) in rows {
        let Some((sa, sb)) = row else {
            report.excluded_primes.push(p);
            continue;
        };
        report.primes_tested += 1;
        if sa.inertia_gcd() != sb.inertia_gcd() {
            report.gcd_mismatches.push(p);
        }
        if sa.pairs != sb.pairs {
            report.type_mismatches.push(TypeMismatch {
                p,
                first: sa,
                second: sb,
            });
        }
    }
    report.splitting_types_agree = report.type_mismatches.is_empty();
    report.inertia_gcds_agree = report.gcd_mismatches.is_empty();
    report
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniformityReport {
    pub bound: u64,
    pub uniform: bool,
    pub primes_tested: usize,
    pub excluded_primes: Vec<u64>,
    pub non_uniform_primes: Vec<u64>,
}

/// Checks that all `(e, f)` pairs agree at every good prime up to `bound`
/// and at each of `extra` primes (necessary for a Galois extension of Q).
pub fn uniformity_evidence(k: &NumberField, bound: u64, extra: &[u64]) -> UniformityReport {
    let mut primes = primes_up_to(bound);
    primes.extend(extra.iter().copied().filter(|&p| p > bound));
    primes.sort_unstable();
    primes.dedup();
    let rows: Vec<(u64, Option<bool>)> = primes
        .into_par_iter()
        .map(|p| (p, k.splitting_type(p).ok().map(|st| st.is_uniform())))
        .collect();
    let mut report = UniformityReport {
        bound,
        uniform: true,
        primes_tested: 0,
        excluded_primes: Vec::new(),
        non_uniform_primes: Vec::new(),
    };
    for (p, row) in rows {
        match row {
            Some(true) => report.primes_tested += 1,
            Some(false) => {
                report.primes_tested += 1;
                report.non_uniform_primes.push(p);
            }
            None => report.excluded_primes.push(p),
        }
    }
    report.uniform = report.non_uniform_primes.is_empty();
    report
}

/// Catalog fields with closed-form splitting laws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CatalogField {
    Quadratic { d: i64 },
    Cyclotomic { m: u64 },
}

impl CatalogField {
    pub fn label(&self) -> String {
        match *self {
            CatalogField::Quadratic { d: -1 } => "Q(i)".into(),
            CatalogField::Quadratic { d } => format!("Q(sqrt({d}))"),
            CatalogField::Cyclotomic { m } => format!("Q(zeta_{m})"),
        }
    }

    pub fn degree(&self) -> u64 {
        match *self {
            CatalogField::Quadratic { .. } => 2,
            CatalogField::Cyclotomic { m } => euler_phi(m),
        }
    }

    /// Whether `p` splits completely.
    pub fn splits_completely(&self, p: u64) -> bool {
        match *self {
            CatalogField::Quadratic { d } => quadratic_splits(d, p),
            CatalogField::Cyclotomic { m } => m % p != 0 && p % m == 1 % m,
        }
    }
}

fn quadratic_splits(d: i64, p: u64) -> bool {
    if p == 2 {
        return d.rem_euclid(8) == 1;
    }
    let r = d.rem_euclid(p as i64) as u64;
    if r == 0 {
        return false;
    }
    mod_pow(r, (p - 1) / 2, p) == 1
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % m as u128) as u64;
        }
        b = ((b as u128 * b as u128) % m as u128) as u64;
        e >>= 1;
    }
    acc
}

pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut out = m;
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            while n.is_multiple_of(q) {
                n /= q;
            }
            out -= out / q;
        }
        q += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

fn is_squarefree_int(d: i64) -> bool {
    let mut n = d.unsigned_abs();
    let mut q = 2u64;
    while q * q <= n {
        if n.is_multiple_of(q * q) {
            return false;
        }
        if n.is_multiple_of(q) {
            n /= q;
        }
        q += 1;
    }
    true
}

/// Quadratic fields `Q(sqrt(d))`, `|d| <= d_max`, and cyclotomic fields
/// `Q(zeta_m)`, `5 <= m <= m_max`, `m` not 2 mod 4 (smaller ones are quadratic).
pub fn catalog(d_max: i64, m_max: u64) -> Vec<CatalogField> {
    let mut out: Vec<CatalogField> = (-d_max..=d_max)
        .filter(|&d| d != 0 && d != 1 && is_squarefree_int(d))
        .map(|d| CatalogField::Quadratic { d })
        .collect();
    out.extend(
        (5..=m_max)
            .filter(|m| m % 4 != 2 && *m != 6)
            .map(|m| CatalogField::Cyclotomic { m }),
    );
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GaloisFingerprint {
    pub bound: u64,
    pub rou_order: u64,
    pub contained_catalog_fields: Vec<String>,
    pub catalog: Vec<CatalogField>,
    pub primes_used: usize,
    pub excluded_primes: Vec<u64>,
    pub label: String,
}

/// Roots-of-unity order and catalog subfields, as evidence up to `bound`.
pub fn galois_fingerprint(
    k: &NumberField,
    bound: u64,
    d_max: i64,
    m_max: u64,
) -> Result<GaloisFingerprint> {
    if bound < 1000 {
        return Err(Error::InvalidArgument(format!(
            "bound {bound} must be at least 1000"
        )));
    }
    let n = k.degree() as u64;
    let mut split_completely = Vec::new();
    let mut degree_one = Vec::new();
    let mut excluded = Vec::new();
    let mut used = 0;
    for (p, dec) in sweep(k, bound) {
        match dec {
            Ok(dec) => {
                let pred = dec.splitting_type().predicates();
                if !pred.unramified {
                    continue;
                }
                used += 1;
                if pred.splits_completely {
                    split_completely.push(p);
                }
                if pred.has_degree_one_factor {
                    degree_one.push(p);
                }
            }
            Err(_) => excluded.push(p),
        }
    }
    let rou_order = (2..=m_max.max(2))
        .rev()
        .filter(|m| m % 2 == 0 && n.is_multiple_of(euler_phi(*m)))
        .find(|&m| {
            degree_one
                .iter()
                .filter(|&&p| m % p != 0)
                .all(|&p| p % m == 1)
        })
        .unwrap_or(2);
    let contained: Vec<CatalogField> = catalog(d_max, m_max)
        .into_iter()
        .filter(|c| n.is_multiple_of(c.degree()))
        .filter(|c| split_completely.iter().all(|&p| c.splits_completely(p)))
        .collect();
    Ok(GaloisFingerprint {
        bound,
        rou_order,
        contained_catalog_fields: contained.iter().map(CatalogField::label).collect(),
        catalog: contained,
        primes_used: used,
        excluded_primes: excluded,
        label: format!("evidence up to bound {bound}"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_values() {
        let got: Vec<u64> = (1..=16).map(euler_phi).collect();
        assert_eq!(got, vec![1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4, 12, 6, 8, 8]);
    }

    #[test]
    fn quadratic_laws() {
        assert!(quadratic_splits(-1, 5));
        assert!(!quadratic_splits(-1, 7));
        assert!(quadratic_splits(2, 7));
        assert!(quadratic_splits(-7, 2));
        assert!(!quadratic_splits(-5, 13));
        assert!(!quadratic_splits(-5, 5));
    }

    #[test]
    fn catalog_skips_duplicates() {
        let c = catalog(3, 16);
        let labels: Vec<String> = c.iter().map(CatalogField::label).collect();
        assert!(labels.contains(&"Q(i)".to_string()));
        assert!(labels.contains(&"Q(zeta_16)".to_string()));
        assert!(!labels.contains(&"Q(zeta_6)".to_string()));
        assert!(!labels.contains(&"Q(zeta_10)".to_string()));
        assert!(!labels.contains(&"Q(sqrt(1))".to_string()));
    }
}
