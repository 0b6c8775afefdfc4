//! Acceptance suite: one line per criterion, nonzero exit on any failure.

mod common;

use std::collections::BTreeSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use brauer_core::brauer::{class_index, make_class, restrict_from_q, BrauerClass, QmodZ};
use brauer_core::fppoly::primes_up_to;
use brauer_core::fppoly::{count_real_roots, factor_mod_p, IntPoly};
use brauer_core::geo::{audit_pair, compare_surface_sets, paper_k1k2, CommClass, SurfaceVerdict};
use brauer_core::numfield::splitting_equivalence;
use brauer_core::numfield::{BuildOptions, NumberField, Place, TrustedFlags};
use brauer_core::quat::{
    base_change, distinguisher_search, enumerate_matching, quat_make, QuaternionAlgebra,
};
use common::*;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn field(s: &str) -> NumberField {
    NumberField::parse(s).unwrap()
}

fn flagged(coeffs: &[i64]) -> NumberField {
    NumberField::from_coeffs(coeffs, BuildOptions::with_flags(TrustedFlags::all())).unwrap()
}

fn split(k: &NumberField) -> QuaternionAlgebra {
    quat_make(k, &[]).unwrap()
}

fn signature_and_degree() -> Outcome {
    for poly in ["x^8+6561", "x^8+104976"] {
        let k = field(poly);
        ensure(k.degree() == 8 && k.signature() == (0, 4), || {
            format!(
                "{poly}: degree {} signature {:?}",
                k.degree(),
                k.signature()
            )
        })?;
    }
    Ok("degree 8, signature (0,4) for both".into())
}

fn paper_pair_audit() -> Outcome {
    let audit = audit_pair(&paper_k1k2(), 1000).map_err(|e| e.to_string())?;
    let notes = &audit.discrepancies;
    ensure(
        notes
            .iter()
            .any(|n| n.contains("x^8+6561 reduces to x^8+1")),
        || "reduction not reported".into(),
    )?;
    ensure(notes.iter().any(|n| n.contains("Galois")), || {
        "Galois discrepancy not reported".into()
    })?;
    ensure(audit.fields[1].reduced == "x^8+16", || {
        format!("K2 reduced to {}", audit.fields[1].reduced)
    })?;
    Ok(format!("{} discrepancies reported", notes.len()))
}

/// Roots of x^8 - a in F_p, by exhaustive search.
fn brute_root_count(a: u64, p: u64) -> usize {
    (0..p)
        .filter(|&x| (0..8).fold(1u64, |acc, _| acc * x % p) == a % p)
        .count()
}

fn arithmetic_equivalence_sweep() -> Outcome {
    let (a, b) = (field("x^8-3"), field("x^8-48"));
    let r = splitting_equivalence(&a, &b, 10_000);
    ensure(r.holds(), || {
        format!(
            "mismatch: types {:?} gcds {:?}",
            r.type_mismatches.first(),
            r.gcd_mismatches
        )
    })?;
    // independent check of the degree-one part: roots mod p
    for p in primes_up_to(10_000).into_iter().filter(|&p| p > 3) {
        let (ra, rb) = (brute_root_count(3, p), brute_root_count(48, p));
        let ones = |k: &NumberField| {
            k.splitting_type(p)
                .unwrap()
                .pairs
                .iter()
                .filter(|&&ef| ef == (1, 1))
                .count()
        };
        ensure(ra == ones(&a) && rb == ones(&b) && ra == rb, || {
            format!("root count mismatch at {p}")
        })?;
    }
    Ok(format!(
        "{} good primes agree, excluded {:?}",
        r.primes_tested, r.excluded_primes
    ))
}

/// Expected number of ramified places above `p` after base change to a
/// catalog field, from Legendre symbols or multiplicative orders.
fn expected_places(kind: &(char, i64), p: u64) -> Option<usize> {
    match *kind {
        ('q', d) => {
            if p == 2 {
                return None;
            }
            match legendre(d, p) {
                1 => Some(2),
                -1 => Some(0),
                _ => None,
            }
        }
        (_, m) => {
            let m = m as u64;
            if m.is_multiple_of(p) {
                return None;
            }
            let f = (1..)
                .find(|&j| (0..j).fold(1u64, |acc, _| acc * p % m) == 1)
                .unwrap();
            let phi = (1..=m).filter(|&j| num_integer::gcd(j, m) == 1).count() as u64;
            Some(if f % 2 == 1 { (phi / f) as usize } else { 0 })
        }
    }
}

fn restriction_consistency() -> Outcome {
    let kinds: Vec<(char, i64)> = vec![
        ('q', -1),
        ('q', -2),
        ('q', -5),
        ('q', 2),
        ('q', 5),
        ('q', -15),
        ('c', 5),
        ('c', 8),
        ('c', 12),
        ('c', 16),
    ];
    let fields: Vec<NumberField> = kinds
        .iter()
        .map(|&(t, v)| {
            let coeffs = if t == 'q' {
                quadratic_poly(v)
            } else {
                cyclotomic(v as u64)
            };
            NumberField::from_coeffs(&coeffs, BuildOptions::default()).unwrap()
        })
        .collect();
    let q = NumberField::rationals();
    let primes = small_primes(100);
    let mut rng = ChaCha8Rng::seed_from_u64(401);
    let (mut done, mut skipped) = (0, 0);
    while done < 500 {
        let mut ram: BTreeSet<u64> = BTreeSet::new();
        for _ in 0..rng.gen_range(0..6) {
            ram.insert(primes[rng.gen_range(0..primes.len())]);
        }
        let inf = ram.len() % 2 == 1;
        let mut assignments: Vec<(Place, QmodZ)> = ram
            .iter()
            .map(|&p| (Place::finite(p, 0), QmodZ::half()))
            .collect();
        if inf {
            assignments.push((Place::real(0), QmodZ::half()));
        }
        let class = make_class(&q, &assignments).map_err(|e| e.to_string())?;
        let i = rng.gen_range(0..fields.len());
        let k = &fields[i];
        let res = match restrict_from_q(&class, k) {
            Ok(r) => r,
            Err(_) => {
                skipped += 1;
                continue;
            }
        };
        let total = res
            .support()
            .values()
            .fold(QmodZ::zero(), |acc, v| acc.add(v));
        ensure(total.is_zero(), || {
            format!("reciprocity fails for {class} over {k}")
        })?;
        let ram_list: Vec<u64> = ram.iter().copied().collect();
        let b = QuaternionAlgebra::rational(&ram_list, inf).map_err(|e| e.to_string())?;
        let bc = base_change(&b, k).map_err(|e| e.to_string())?;
        let halves: BTreeSet<Place> = res
            .support()
            .iter()
            .filter(|(_, v)| v.is_half())
            .map(|(p, _)| *p)
            .collect();
        ensure(
            &halves == bc.ram() && halves.len() == res.support().len(),
            || format!("{b} over {k}"),
        )?;
        for &p in &ram {
            if let Some(n) = expected_places(&kinds[i], p) {
                let got = halves.iter().filter(|pl| pl.prime() == Some(p)).count();
                ensure(got == n, || {
                    format!("{b} over {k}: {got} places above {p}, oracle says {n}")
                })?;
            }
        }
        done += 1;
    }
    Ok(format!(
        "500 pairs consistent ({skipped} skipped at index primes)"
    ))
}

fn distinguisher_instance() -> Outcome {
    let q = NumberField::rationals();
    let (k1, k2) = (field("x^2+1"), field("x^2+5"));
    let d = distinguisher_search(&split(&q), &k1, &k2, 50)
        .map_err(|e| e.to_string())?
        .ok_or("no distinguisher")?;
    let primes: Vec<u64> = d.algebra.finite_ram_primes().into_iter().collect();
    ensure(
        primes == [3, 7] && d.algebra.ramified_real_places() == 0,
        || format!("found {}", d.algebra),
    )?;
    ensure(d.transcript.verified() && d.b_over_k1.is_split(), || {
        "transcript does not verify".into()
    })?;
    ensure(d.b_over_k2.ram().len() == 4, || {
        format!("{} places over Q(sqrt(-5))", d.b_over_k2.ram().len())
    })?;
    Ok("B = {3,7}, split over Q(i), 4 places over Q(sqrt(-5))".into())
}

fn surface_instances() -> Outcome {
    let a = CommClass::split(&field("x^8-3").with_flags(TrustedFlags::all()))
        .map_err(|e| e.to_string())?;
    let b = CommClass::split(&field("x^8-48").with_flags(TrustedFlags::all()))
        .map_err(|e| e.to_string())?;
    let cmp = compare_surface_sets(&a, &b, 1000).map_err(|e| e.to_string())?;
    ensure(cmp.agrees(), || "x^8-3 vs x^8-48 gave a witness".into())?;
    let (algebras, report) = enumerate_matching(&split(&field("x^8+1")), 20, true);
    ensure(algebras.len() == 64, || {
        format!("{} algebras", algebras.len())
    })?;
    ensure(report.invisible == [2, 3, 5, 7, 11, 13, 19], || {
        format!("invisible {:?}", report.invisible)
    })?;
    Ok(format!(
        "agree at 1000 over {} primes; 64 algebras over x^8+1",
        cmp.primes_tested
    ))
}

fn imaginary_quadratic_probe() -> Outcome {
    let ds: Vec<i64> = (1..=50).filter(|&d| is_squarefree(d)).collect();
    let classes: Vec<(i64, CommClass)> = ds
        .iter()
        .map(|&d| (d, CommClass::split(&flagged(&quadratic_poly(-d))).unwrap()))
        .collect();
    let mut pairs = 0;
    for (i, (d1, m1)) in classes.iter().enumerate() {
        for (d2, m2) in &classes[i + 1..] {
            let cmp = compare_surface_sets(m1, m2, 200).map_err(|e| e.to_string())?;
            ensure(
                matches!(cmp.verdict, SurfaceVerdict::Witness { .. }),
                || format!("d = {d1}, {d2} agree"),
            )?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs, all with a witness"))
}

fn oracle_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(801);
    let prime_pool = small_primes(1000);
    for _ in 0..10_000 {
        let p = if rng.gen_bool(0.5) {
            [2, 3, 5, 7][rng.gen_range(0..4)]
        } else {
            prime_pool[rng.gen_range(0..prime_pool.len())]
        };
        let d = rng.gen_range(1..=10);
        let f = random_poly_mod(&mut rng, d, p);
        let ip = IntPoly::new(f.iter().map(|&c| BigInt::from(c)).collect());
        let factors = factor_mod_p(&ip, p).map_err(|e| e.to_string())?;
        let prod = factors.iter().fold(vec![1u64], |acc, fac| {
            mul_mod(
                &acc,
                &pow_poly_mod(fac.poly.coeffs(), fac.multiplicity, p),
                p,
            )
        });
        ensure(prod == f, || {
            format!("{f:?} mod {p} does not multiply back")
        })?;
    }

    let mut calls = 0;
    let mut fields = 0;
    while fields < 60 {
        let n = rng.gen_range(2..=8);
        let mut f: Vec<i64> = (0..n).map(|_| rng.gen_range(-20..=20)).collect();
        f.push(1);
        let Ok(k) = NumberField::from_coeffs(&f, BuildOptions::default()) else {
            continue;
        };
        fields += 1;
        for p in small_primes(400) {
            if let Ok(dec) = k.decomposition(p) {
                calls += 1;
                let total: usize = dec.factors.iter().map(|lf| lf.e * lf.f).sum();
                ensure(total == k.degree(), || format!("{f:?} at {p}: sum {total}"))?;
            }
        }
    }

    let mut sturm = 0;
    while sturm < 1000 {
        let d = rng.gen_range(3..=4);
        let mut f: Vec<i64> = (0..d).map(|_| rng.gen_range(-40..=40)).collect();
        f.push(rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 });
        if oracle_discriminant(&f) == BigInt::from(0) {
            continue;
        }
        let got = count_real_roots(&IntPoly::from_i64(&f)).map_err(|e| e.to_string())?;
        ensure(got == descartes_real_roots(&f), || {
            format!("{f:?}: sturm {got}")
        })?;
        sturm += 1;
    }
    Ok(format!(
        "10000 factorizations, {calls} decompositions, 1000 Sturm counts"
    ))
}

fn random_class<R: Rng>(rng: &mut R, k: &NumberField, primes: &[u64]) -> BrauerClass {
    let mut assignments: Vec<(Place, QmodZ)> = Vec::new();
    let mut total = QmodZ::zero();
    let mut places: Vec<Place> = primes
        .iter()
        .flat_map(|&p| k.places_over(p).unwrap().into_iter().map(|(pl, _)| pl))
        .collect();
    let balance = places.pop().unwrap();
    for place in places {
        if rng.gen_bool(0.4) {
            let den: i64 = [2, 3, 4, 6, 8, 9, 10, 12, 30][rng.gen_range(0..9)];
            let v = QmodZ::new(rng.gen_range(1..den), den).unwrap();
            total = total.add(&v);
            assignments.push((place, v));
        }
    }
    if !k.real_places().is_empty() && rng.gen_bool(0.5) {
        total = total.add(&QmodZ::half());
        assignments.push((k.real_places()[0], QmodZ::half()));
    }
    assignments.push((balance, total.neg()));
    make_class(k, &assignments).unwrap()
}

fn index_equals_exponent() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(901);
    let fields = [NumberField::rationals(), field("x^2+1"), field("x^2-2")];
    for i in 0..100 {
        let k = &fields[i % fields.len()];
        let c = random_class(&mut rng, k, &[3, 5, 7, 11, 13, 17, 23]);
        let mut acc = c.clone();
        let mut order = 1u64;
        while !acc.is_trivial() {
            acc = acc.add(&c).map_err(|e| e.to_string())?;
            order += 1;
        }
        ensure(class_index(&c) == BigInt::from(order), || {
            format!("{c}: index {} order {order}", class_index(&c))
        })?;
    }
    Ok("100 classes".into())
}

type Criterion = (u32, &'static str, Option<Duration>, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        (
            1,
            "signature and degree",
            Some(Duration::from_secs(1)),
            signature_and_degree,
        ),
        (
            2,
            "paper pair audit",
            Some(Duration::from_secs(1)),
            paper_pair_audit,
        ),
        (
            3,
            "arithmetic equivalence sweep",
            Some(Duration::from_secs(60)),
            arithmetic_equivalence_sweep,
        ),
        (
            4,
            "restriction consistency",
            Some(Duration::from_secs(30)),
            restriction_consistency,
        ),
        (
            5,
            "distinguisher instance",
            Some(Duration::from_secs(1)),
            distinguisher_instance,
        ),
        (
            6,
            "surface census and comparison",
            Some(Duration::from_secs(60)),
            surface_instances,
        ),
        (
            7,
            "imaginary quadratic probe",
            Some(Duration::from_secs(120)),
            imaginary_quadratic_probe,
        ),
        (8, "oracle suites", None, oracle_suites),
        (9, "index equals exponent", None, index_equals_exponent),
    ];
    let mut failed = 0;
    for (n, name, limit, run) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or(e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default())
        });
        let elapsed = start.elapsed();
        let timing = match limit {
            Some(l) => format!("{:.2} s, limit {} s", elapsed.as_secs_f64(), l.as_secs()),
            None => format!("{:.2} s", elapsed.as_secs_f64()),
        };
        let in_time = limit.is_none_or(|l| elapsed <= l);
        match outcome {
            Ok(detail) if in_time => println!("criterion {n}: PASS {name}: {detail} ({timing})"),
            Ok(detail) => {
                failed += 1;
                println!("criterion {n}: FAIL {name}: too slow: {detail} ({timing})");
            }
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL {name}: {why} ({timing})");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
