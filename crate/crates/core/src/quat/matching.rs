//! Which quaternion algebras over Q become a given algebra after base change.
//!
//! For a prime `p`, base change keeps exactly the places above `p` of odd
//! local degree. Call `p` *visible* when such places exist and *invisible*
//! otherwise. The set of matching `B` is then a family
//!
//! ```text
//! { forced ∪ S : S ⊆ free, |forced ∪ S| even }
//! ```
//!
//! where invisible places are free and visible ones are forced in or out by
//! the ramification of the target algebra. Families are compared
//! symbolically, never by listing subsets.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::algebra::{tensor_matches, QuaternionAlgebra};
use crate::error::Result;
use crate::fppoly::primes_up_to;
use crate::numfield::{NumberField, Place, PrimeDecomposition};

/// Maximum ramification-set size listed by enumeration.
pub const MAX_RAM_PLACES: usize = 16;
/// Maximum number of algebras listed by enumeration.
pub const MAX_LISTED: usize = 1 << 16;

/// A place of Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RationalPlace {
    Prime(u64),
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PrimeClass {
    Visible,
    Invisible,
    Excluded,
}

/// `{ forced ∪ S : S ⊆ free, |forced ∪ S| even }`, or empty.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchingFamily {
    pub nonempty: bool,
    pub forced: BTreeSet<RationalPlace>,
    pub free: BTreeSet<RationalPlace>,
}

impl MatchingFamily {
    pub fn empty() -> Self {
        MatchingFamily {
            nonempty: false,
            forced: BTreeSet::new(),
            free: BTreeSet::new(),
        }
    }

    /// Canonical form: empty families have no data, and a single free place
    /// is absorbed by the parity constraint.
    pub fn normalized(mut self) -> Self {
        if !self.nonempty {
            return MatchingFamily::empty();
        }
        match self.free.len() {
            0 => {
                if self.forced.len() % 2 == 1 {
                    return MatchingFamily::empty();
                }
            }
            1 => {
                if self.forced.len() % 2 == 1 {
                    let only = *self.free.iter().next().unwrap();
                    self.forced.insert(only);
                }
                self.free.clear();
            }
            _ => {}
        }
        self
    }

    pub fn contains(&self, ram: &BTreeSet<RationalPlace>) -> bool {
        self.nonempty
            && ram.len().is_multiple_of(2)
            && self.forced.is_subset(ram)
            && ram.difference(&self.forced).all(|x| self.free.contains(x))
    }

    /// Exact number of members.
    pub fn count(&self) -> BigUint {
        let fam = self.clone().normalized();
        if !fam.nonempty {
            BigUint::zero()
        } else if fam.free.is_empty() {
            BigUint::one()
        } else {
            BigUint::one() << (fam.free.len() - 1)
        }
    }

    /// Restricts to members whose places all lie in `universe`.
    pub fn restrict_to(&self, universe: &BTreeSet<RationalPlace>) -> Self {
        if !self.nonempty || !self.forced.is_subset(universe) {
            return MatchingFamily::empty();
        }
        MatchingFamily {
            nonempty: true,
            forced: self.forced.clone(),
            free: self.free.intersection(universe).copied().collect(),
        }
        .normalized()
    }

    /// Some member, preferring to include `with` and exclude `without`.
    fn member(
        &self,
        with: Option<RationalPlace>,
        without: Option<RationalPlace>,
    ) -> BTreeSet<RationalPlace> {
        let mut ram = self.forced.clone();
        if let Some(x) = with {
            ram.insert(x);
        }
        if ram.len() % 2 == 1 {
            let filler = self
                .free
                .iter()
                .find(|y| !ram.contains(y) && Some(**y) != without)
                .copied()
                .expect("normalized family has a parity filler");
            ram.insert(filler);
        }
        ram
    }

    /// A member of `self` that is not a member of `other`.
    pub fn witness_not_in(&self, other: &MatchingFamily) -> Option<BTreeSet<RationalPlace>> {
        let a = self.clone().normalized();
        let b = other.clone().normalized();
        if !a.nonempty {
            return None;
        }
        if !b.nonempty {
            return Some(a.member(None, None));
        }
        let b_union: BTreeSet<RationalPlace> = b.forced.union(&b.free).copied().collect();
        if a.forced.iter().any(|x| !b_union.contains(x)) {
            return Some(a.member(None, None));
        }
        let loose: Vec<RationalPlace> = a
            .free
            .iter()
            .filter(|x| !b_union.contains(x))
            .copied()
            .collect();
        if loose.len() >= 2 && a.forced.len().is_multiple_of(2) {
            // two places b cannot use at all: the smallest such member
            let mut ram = a.forced.clone();
            ram.extend(&loose[..2]);
            return Some(ram);
        }
        if let Some(&x) = loose.first() {
            return Some(a.member(Some(x), None));
        }
        if let Some(&y) = b.forced.iter().find(|y| !a.forced.contains(y)) {
            return Some(a.member(None, Some(y)));
        }
        None
    }

    /// Members in canonical order (size, then lexicographic), capped.
    pub fn enumerate(
        &self,
        max_places: usize,
        max_items: usize,
    ) -> (Vec<BTreeSet<RationalPlace>>, bool) {
        let fam = self.clone().normalized();
        let mut out = Vec::new();
        if !fam.nonempty {
            return (out, false);
        }
        let free: Vec<RationalPlace> = fam.free.iter().copied().collect();
        let base = fam.forced.len();
        let mut truncated = false;
        let mut k = base % 2;
        while k <= free.len() {
            if base + k > max_places {
                truncated = true;
                break;
            }
            let mut idx: Vec<usize> = (0..k).collect();
            loop {
                if out.len() >= max_items {
                    return (out, true);
                }
                let mut ram = fam.forced.clone();
                ram.extend(idx.iter().map(|&i| free[i]));
                out.push(ram);
                // next k-combination of free indices
                let mut i = k;
                while i > 0 && idx[i - 1] == free.len() - k + i - 1 {
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                idx[i - 1] += 1;
                for j in i..k {
                    idx[j] = idx[j - 1] + 1;
                }
            }
            k += 2;
        }
        (out, truncated)
    }
}

/// Classification of primes for a target algebra plus its matching family.
#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub bound: u64,
    pub require_indefinite: bool,
    pub primes: BTreeMap<u64, PrimeClass>,
    pub infinity: PrimeClass,
    pub excluded_primes: Vec<u64>,
    /// Ramified places of the target that no algebra over Q within the bound can produce.
    pub obstructions: Vec<String>,
    pub family: MatchingFamily,
}

impl Classification {
    pub fn visible(&self) -> Vec<u64> {
        self.with_class(PrimeClass::Visible)
    }

    pub fn invisible(&self) -> Vec<u64> {
        self.with_class(PrimeClass::Invisible)
    }

    fn with_class(&self, c: PrimeClass) -> Vec<u64> {
        self.primes
            .iter()
            .filter(|(_, &v)| v == c)
            .map(|(&p, _)| p)
            .collect()
    }

    /// Places of Q that can be tested: good primes up to the bound and ∞.
    pub fn universe(&self) -> BTreeSet<RationalPlace> {
        let mut u: BTreeSet<RationalPlace> = self
            .primes
            .iter()
            .filter(|(_, &c)| c != PrimeClass::Excluded)
            .map(|(&p, _)| RationalPlace::Prime(p))
            .collect();
        u.insert(RationalPlace::Infinity);
        u
    }
}

fn classify_prime(dec: &PrimeDecomposition, ram: &BTreeSet<Place>) -> (PrimeClass, Option<bool>) {
    let odd: BTreeSet<Place> = dec
        .places()
        .filter(|(_, lf)| lf.degree() % 2 == 1)
        .map(|(pl, _)| pl)
        .collect();
    let here: BTreeSet<Place> = ram
        .iter()
        .filter(|pl| pl.prime() == Some(dec.p))
        .copied()
        .collect();
    if odd.is_empty() {
        // invisible: free iff nothing ramifies here
        (PrimeClass::Invisible, here.is_empty().then_some(false))
    } else if here.is_empty() {
        (PrimeClass::Visible, Some(false))
    } else if here == odd {
        (PrimeClass::Visible, Some(true))
    } else {
        (PrimeClass::Visible, None)
    }
}

/// Visible/invisible classification of every prime up to `bound` and the
/// family of algebras over Q whose base change is `target`.
pub fn classify(
    target: &QuaternionAlgebra,
    bound: u64,
    require_indefinite: bool,
) -> Classification {
    let field = target.field();
    let ram = target.ram();
    type Row = (u64, Option<(PrimeClass, Option<bool>)>);
    let rows: Vec<Row> = primes_up_to(bound)
        .into_par_iter()
        .map(|p| {
            (
                p,
                field
                    .decomposition(p)
                    .ok()
                    .map(|dec| classify_prime(&dec, ram)),
            )
        })
        .collect();

    let mut primes = BTreeMap::new();
    let mut excluded = Vec::new();
    let mut obstructions = Vec::new();
    let mut forced = BTreeSet::new();
    let mut free = BTreeSet::new();
    for (p, row) in rows {
        match row {
            None => {
                primes.insert(p, PrimeClass::Excluded);
                excluded.push(p);
            }
            Some((class, decision)) => {
                primes.insert(p, class);
                match (class, decision) {
                    (PrimeClass::Invisible, Some(_)) => {
                        free.insert(RationalPlace::Prime(p));
                    }
                    (PrimeClass::Visible, Some(true)) => {
                        forced.insert(RationalPlace::Prime(p));
                    }
                    (PrimeClass::Visible, Some(false)) => {}
                    (_, None) => obstructions.push(format!(
                        "ramification above {p} is not the base change of any local algebra"
                    )),
                    (PrimeClass::Excluded, _) => unreachable!(),
                }
            }
        }
    }
    for pl in ram
        .iter()
        .filter(|pl| pl.prime().is_some_and(|p| p > bound))
    {
        obstructions.push(format!("{pl} lies above a prime beyond the bound {bound}"));
    }

    let r1 = field.real_place_count();
    let real_ram = target.ramified_real_places();
    let infinity = if r1 == 0 {
        PrimeClass::Invisible
    } else {
        PrimeClass::Visible
    };
    if r1 == 0 {
        if !require_indefinite {
            free.insert(RationalPlace::Infinity);
        }
    } else if real_ram == r1 {
        if require_indefinite {
            obstructions.push("all real places ramify but B must be indefinite".into());
        } else {
            forced.insert(RationalPlace::Infinity);
        }
    } else if real_ram != 0 {
        obstructions.push(format!("{real_ram} of {r1} real places ramify"));
    }

    let family = MatchingFamily {
        nonempty: obstructions.is_empty(),
        forced,
        free,
    }
    .normalized();
    Classification {
        bound,
        require_indefinite,
        primes,
        infinity,
        excluded_primes: excluded,
        obstructions,
        family,
    }
}

/// Algebra over Q with the given ramification.
pub fn algebra_from_places(q: &NumberField, ram: &BTreeSet<RationalPlace>) -> QuaternionAlgebra {
    let primes: Vec<u64> = ram
        .iter()
        .filter_map(|x| match x {
            RationalPlace::Prime(p) => Some(*p),
            RationalPlace::Infinity => None,
        })
        .collect();
    QuaternionAlgebra::rational_over(q, &primes, ram.contains(&RationalPlace::Infinity))
        .expect("members have even cardinality")
}

#[derive(Debug, Clone, Serialize)]
pub struct EnumerationReport {
    pub bound: u64,
    pub require_indefinite: bool,
    pub total_count: String,
    pub listed: usize,
    pub truncated: bool,
    pub visible: Vec<u64>,
    pub invisible: Vec<u64>,
    pub excluded_primes: Vec<u64>,
    pub obstructions: Vec<String>,
}

/// Every algebra `B` over Q with ramification among ∞ and the primes up to
/// `bound` such that `B ⊗ K ≅ target`.
pub fn enumerate_matching(
    target: &QuaternionAlgebra,
    bound: u64,
    require_indefinite: bool,
) -> (Vec<QuaternionAlgebra>, EnumerationReport) {
    let cls = classify(target, bound, require_indefinite);
    let q = NumberField::rationals();
    let (sets, truncated) = cls.family.enumerate(MAX_RAM_PLACES, MAX_LISTED);
    let algebras: Vec<QuaternionAlgebra> =
        sets.iter().map(|s| algebra_from_places(&q, s)).collect();
    let report = EnumerationReport {
        bound,
        require_indefinite,
        total_count: cls.family.count().to_string(),
        listed: algebras.len(),
        truncated,
        visible: cls.visible(),
        invisible: cls.invisible(),
        excluded_primes: cls.excluded_primes.clone(),
        obstructions: cls.obstructions.clone(),
    };
    (algebras, report)
}

/// Verdict of a bounded comparison.
#[derive(Debug, Clone)]
#[allow(clippy::large_enum_variant)]
pub enum Verdict {
    Agree { bound: u64 },
    Witness { algebra: QuaternionAlgebra },
}

#[derive(Debug, Clone)]
pub struct MatchReport {
    pub verdict: Verdict,
    pub primes_tested: usize,
    pub excluded_primes: Vec<u64>,
}

/// Compares the families of `a1` and `a2` on the places both fields can test
/// and returns a witness in their symmetric difference, if any.
pub fn compare_families(
    c1: &Classification,
    c2: &Classification,
) -> (
    Option<BTreeSet<RationalPlace>>,
    BTreeSet<RationalPlace>,
    Vec<u64>,
) {
    let universe: BTreeSet<RationalPlace> = c1
        .universe()
        .intersection(&c2.universe())
        .copied()
        .collect();
    let f1 = c1.family.restrict_to(&universe);
    let f2 = c2.family.restrict_to(&universe);
    let witness = f1.witness_not_in(&f2).or_else(|| f2.witness_not_in(&f1));
    let mut excluded: BTreeSet<u64> = c1.excluded_primes.iter().copied().collect();
    excluded.extend(c2.excluded_primes.iter().copied());
    (witness, universe, excluded.into_iter().collect())
}

/// For every `B` over Q with ramification among ∞ and the primes up to
/// `bound` (good for both fields): `B ⊗ K1 ≅ a1` iff `B ⊗ K2 ≅ a2`?
pub fn same_subalgebra_report(
    a1: &QuaternionAlgebra,
    a2: &QuaternionAlgebra,
    bound: u64,
) -> Result<MatchReport> {
    let c1 = classify(a1, bound, false);
    let c2 = classify(a2, bound, false);
    let (witness, universe, excluded) = compare_families(&c1, &c2);
    let primes_tested = universe
        .iter()
        .filter(|x| matches!(x, RationalPlace::Prime(_)))
        .count();
    let verdict = match witness {
        None => Verdict::Agree { bound },
        Some(ram) => {
            let b = algebra_from_places(&NumberField::rationals(), &ram);
            debug_assert!(tensor_matches(&b, a1)? != tensor_matches(&b, a2)?);
            Verdict::Witness { algebra: b }
        }
    };
    Ok(MatchReport {
        verdict,
        primes_tested,
        excluded_primes: excluded,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quat::quat_make;

    fn places(v: &[u64]) -> BTreeSet<RationalPlace> {
        v.iter().map(|&p| RationalPlace::Prime(p)).collect()
    }

    #[test]
    fn family_membership_and_count() {
        let fam = MatchingFamily {
            nonempty: true,
            forced: places(&[5]),
            free: places(&[2, 3, 7]),
        };
        assert!(fam.contains(&places(&[5, 2])));
        assert!(!fam.contains(&places(&[2, 3])));
        assert!(!fam.contains(&places(&[5, 2, 3])));
        assert_eq!(fam.count(), BigUint::from(4u32));
        let (all, truncated) = fam.enumerate(16, 100);
        assert_eq!(all.len(), 4);
        assert!(!truncated);
        assert!(all.iter().all(|s| fam.contains(s)));
    }

    #[test]
    fn normalization() {
        let single = MatchingFamily {
            nonempty: true,
            forced: places(&[5]),
            free: places(&[2]),
        }
        .normalized();
        assert_eq!(single.forced, places(&[2, 5]));
        assert!(single.free.is_empty());
        let odd = MatchingFamily {
            nonempty: true,
            forced: places(&[5]),
            free: BTreeSet::new(),
        }
        .normalized();
        assert!(!odd.nonempty);
    }

    #[test]
    fn witnesses_are_genuine() {
        let a = MatchingFamily {
            nonempty: true,
            forced: BTreeSet::new(),
            free: places(&[2, 3, 7]),
        };
        let b = MatchingFamily {
            nonempty: true,
            forced: BTreeSet::new(),
            free: places(&[2, 3, 11]),
        };
        let w = a.witness_not_in(&b).unwrap();
        assert!(a.contains(&w) && !b.contains(&w));
        let w = b.witness_not_in(&a).unwrap();
        assert!(b.contains(&w) && !a.contains(&w));
        assert!(a.witness_not_in(&a).is_none());
        let c = MatchingFamily {
            nonempty: true,
            forced: places(&[3, 7]),
            free: BTreeSet::new(),
        };
        assert!(c.witness_not_in(&a).is_none());
        let w = a.witness_not_in(&c).unwrap();
        assert!(!c.contains(&w));
    }

    #[test]
    fn gaussian_census_to_ten() {
        let gi = NumberField::parse("x^2+1").unwrap();
        let m2 = quat_make(&gi, &[]).unwrap();
        let (algs, report) = enumerate_matching(&m2, 10, true);
        let names: Vec<String> = algs.iter().map(|b| b.to_string()).collect();
        assert_eq!(names, vec!["B{}", "B{2,3}", "B{2,7}", "B{3,7}"]);
        assert_eq!(report.invisible, vec![2, 3, 7]);
        assert_eq!(report.visible, vec![5]);
    }

    #[test]
    fn uncovered_visible_ramification() {
        // a place above 5 (split in Q(i)) ramifies alone: no B over Q produces it
        let gi = NumberField::parse("x^2+1").unwrap();
        let a = quat_make(&gi, &[Place::finite(5, 0), Place::finite(13, 0)]).unwrap();
        let (algs, report) = enumerate_matching(&a, 50, true);
        assert!(algs.is_empty());
        assert!(!report.obstructions.is_empty());
        // both places above 13 ramify; 13 lies beyond the bound
        let a = quat_make(&gi, &[Place::finite(13, 0), Place::finite(13, 1)]).unwrap();
        let (algs, _) = enumerate_matching(&a, 10, true);
        assert!(algs.is_empty());
        let (algs, _) = enumerate_matching(&a, 20, true);
        assert!(!algs.is_empty());
        for b in &algs {
            assert!(tensor_matches(b, &a).unwrap());
        }
    }
}
