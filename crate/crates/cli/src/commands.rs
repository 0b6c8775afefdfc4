use std::collections::BTreeMap;

use serde_json::{json, Value};

use brauer_core::brauer::{
    class_index, make_class, restrict_from_q, restrict_relative, transport_phi, BrauerClass, QmodZ,
};
use brauer_core::fppoly::primes_up_to;
use brauer_core::geo::{
    audit_pair, commensurable, compare_surface_sets, paper_k1k2, surface_classes, CommClass,
    SurfaceClass,
};
use brauer_core::numfield::{
    galois_fingerprint, split_set_contained, splitting_equivalence, NumberField, Place, SplitCache,
};
use brauer_core::quat::{
    base_change, distinguisher_search, enumerate_matching, quat_make, same_subalgebra_report,
    QuaternionAlgebra, Verdict,
};
use brauer_core::Error;

use crate::context::Context;
use crate::{
    BrauerCmd, CacheCmd, Command, EquivCmd, FieldCmd, Preset, QuatCmd, Status, SurfacesCmd,
};

pub enum Failure {
    Core(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Out = Result<(Value, Status), Failure>;

fn ok(v: Value) -> Out {
    Ok((v, Status::Definite))
}

pub fn dispatch(ctx: &mut Context, cmd: &Command) -> Out {
    match cmd {
        Command::Field(c) => field(ctx, c),
        Command::Brauer(c) => brauer(ctx, c),
        Command::Quat(c) => quat(ctx, c),
        Command::Equiv(c) => equiv(ctx, c),
        Command::Surfaces(c) => surfaces(ctx, c),
        Command::Cache(c) => cache(ctx, c),
    }
}

fn parse_places(text: &str) -> Result<Vec<Place>, Failure> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<Place>().map_err(Failure::from))
        .collect()
}

fn parse_invariants(items: &[String]) -> Result<Vec<(Place, QmodZ)>, Failure> {
    items
        .iter()
        .map(|item| {
            let (place, value) = item
                .split_once('=')
                .ok_or_else(|| Failure::Usage(format!("expected PLACE=VALUE, got {item:?}")))?;
            let value: QmodZ = value.trim().parse()?;
            Ok((place.parse::<Place>()?, value))
        })
        .collect()
}

fn field_json(k: &NumberField) -> Value {
    json!({
        "poly": k.poly().to_string(),
        "coefficients": k.poly().to_list_string(),
        "hash": k.hash(),
        "degree": k.degree(),
        "signature": k.signature(),
        "discriminant": k.poly_discriminant().to_string(),
        "reduction": k.reduction(),
        "irreducibility": k.irreducibility(),
        "irreducibility_note": k.irreducibility().describe(),
        "trusted_flags": k.flags().names(),
    })
}

fn class_json(c: &BrauerClass) -> Value {
    let support: BTreeMap<String, String> = c
        .support()
        .iter()
        .map(|(p, v)| (p.to_string(), v.to_string()))
        .collect();
    json!({
        "field": c.field().poly().to_string(),
        "class": c.to_json(),
        "support": support,
        "index": class_index(c).to_string(),
        "trivial": c.is_trivial(),
    })
}

fn algebra_json(a: &QuaternionAlgebra) -> Value {
    json!({
        "label": a.to_string(),
        "algebra": a.to_json(),
        "ram": a.ram().iter().map(Place::to_string).collect::<Vec<_>>(),
    })
}

fn surface_json(s: &SurfaceClass) -> Value {
    serde_json::to_value(s.to_json()).expect("serializes")
}

fn rational_algebra(text: &str) -> Result<QuaternionAlgebra, Failure> {
    let q = NumberField::rationals();
    Ok(quat_make(&q, &parse_places(text)?)?)
}

fn field(ctx: &mut Context, cmd: &FieldCmd) -> Out {
    match cmd {
        FieldCmd::Info(a) => {
            let k = ctx.field(&a.poly)?;
            ok(field_json(&k))
        }
        FieldCmd::Split(a) => {
            let k = ctx.field(&a.poly)?;
            match a.prime {
                Some(p) => match k.decomposition(p) {
                    Ok(dec) => {
                        let places: Vec<Value> = dec
                            .places()
                            .map(|(pl, lf)| json!({"place": pl.to_string(), "e": lf.e, "f": lf.f}))
                            .collect();
                        let st = dec.splitting_type();
                        ok(json!({
                            "field": k.poly().to_string(),
                            "p": p,
                            "places": places,
                            "splitting_type": st.pairs,
                            "predicates": st.predicates(),
                        }))
                    }
                    Err(Error::IndexPrime { .. }) => Ok((
                        json!({"field": k.poly().to_string(), "p": p, "index_prime": true}),
                        Status::Unknown,
                    )),
                    Err(e) => Err(e.into()),
                },
                None => {
                    let bound = ctx.bound();
                    let mut rows = Vec::new();
                    let mut excluded = Vec::new();
                    for p in primes_up_to(bound) {
                        match k.splitting_type(p) {
                            Ok(st) => rows.push(json!({"p": p, "pairs": st.pairs})),
                            Err(_) => excluded.push(p),
                        }
                    }
                    ok(
                        json!({"field": k.poly().to_string(), "bound": bound, "primes": rows, "excluded_primes": excluded}),
                    )
                }
            }
        }
        FieldCmd::Gcd(a) => {
            let k = ctx.field(&a.poly)?;
            match a.prime {
                Some(p) => match k.inertia_gcd(p) {
                    Ok(g) => ok(json!({"field": k.poly().to_string(), "p": p, "inertia_gcd": g})),
                    Err(Error::IndexPrime { .. }) => Ok((
                        json!({"field": k.poly().to_string(), "p": p, "index_prime": true}),
                        Status::Unknown,
                    )),
                    Err(e) => Err(e.into()),
                },
                None => {
                    let bound = ctx.bound();
                    let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
                    let mut excluded = Vec::new();
                    for p in primes_up_to(bound) {
                        match k.inertia_gcd(p) {
                            Ok(g) => *counts.entry(g).or_default() += 1,
                            Err(_) => excluded.push(p),
                        }
                    }
                    let counts: BTreeMap<String, usize> = counts
                        .into_iter()
                        .map(|(g, c)| (g.to_string(), c))
                        .collect();
                    ok(
                        json!({"field": k.poly().to_string(), "bound": bound, "gcd_counts": counts, "excluded_primes": excluded}),
                    )
                }
            }
        }
    }
}

fn brauer(ctx: &mut Context, cmd: &BrauerCmd) -> Out {
    match cmd {
        BrauerCmd::Make(a) | BrauerCmd::Index(a) => {
            let k = ctx.field(&a.poly)?;
            let class = make_class(&k, &parse_invariants(&a.inv)?)?;
            ok(class_json(&class))
        }
        BrauerCmd::Restrict(a) => {
            let k = ctx.field(&a.class.poly)?;
            let target = ctx.field(&a.to)?;
            let class = make_class(&k, &parse_invariants(&a.class.inv)?)?;
            let (out, matching) = if k.is_rational() {
                (restrict_from_q(&class, &target)?, "exact")
            } else {
                let bound = ctx.bound();
                (
                    restrict_relative(&class, &target, bound)?,
                    "canonical block matching",
                )
            };
            ok(
                json!({"source": class_json(&class), "restricted": class_json(&out), "place_matching": matching}),
            )
        }
        BrauerCmd::Transport(a) => {
            let k = ctx.field(&a.class.poly)?;
            let target = ctx.field(&a.to)?;
            let class = make_class(&k, &parse_invariants(&a.class.inv)?)?;
            let bound = ctx.bound();
            let out = transport_phi(&class, &target, bound)?;
            ok(json!({
                "source": class_json(&class),
                "transported": class_json(&out),
                "place_matching": "canonical block matching",
            }))
        }
    }
}

fn quat(ctx: &mut Context, cmd: &QuatCmd) -> Out {
    match cmd {
        QuatCmd::Basechange { ram, to } => {
            let b = rational_algebra(ram)?;
            let k = ctx.field(to)?;
            let out = base_change(&b, &k)?;
            ok(
                json!({"b": algebra_json(&b), "base_change": algebra_json(&out), "split": out.is_split()}),
            )
        }
        QuatCmd::Match(a) => {
            let k1 = ctx.field(&a.poly1)?;
            let k2 = ctx.field(&a.poly2)?;
            let a1 = quat_make(&k1, &parse_places(&a.ram1)?)?;
            let a2 = quat_make(&k2, &parse_places(&a.ram2)?)?;
            let bound = ctx.bound();
            let report = same_subalgebra_report(&a1, &a2, bound)?;
            let (verdict, witness) = match &report.verdict {
                Verdict::Agree { .. } => ("agree", Value::Null),
                Verdict::Witness { algebra } => ("witness", algebra_json(algebra)),
            };
            ok(json!({
                "verdict": verdict,
                "bound": bound,
                "witness": witness,
                "primes_tested": report.primes_tested,
                "excluded_primes": report.excluded_primes,
            }))
        }
        QuatCmd::Enumerate {
            algebra,
            indefinite,
        } => {
            let k = ctx.field(&algebra.poly)?;
            let a = quat_make(&k, &parse_places(&algebra.ram)?)?;
            let bound = ctx.bound();
            let (algebras, report) = enumerate_matching(&a, bound, *indefinite);
            let listed: Vec<Value> = algebras.iter().map(algebra_json).collect();
            ok(json!({"target": algebra_json(&a), "report": report, "algebras": listed}))
        }
        QuatCmd::Distinguish { b0, k1, k2 } => {
            let b0 = rational_algebra(b0)?;
            let k1 = ctx.field(k1)?;
            let k2 = ctx.field(k2)?;
            let bound = ctx.bound();
            match distinguisher_search(&b0, &k1, &k2, bound)? {
                Some(d) => ok(json!({
                    "found": true,
                    "algebra": algebra_json(&d.algebra),
                    "b_over_k1": algebra_json(&d.b_over_k1),
                    "b_over_k2": algebra_json(&d.b_over_k2),
                    "verified": d.transcript.verified(),
                    "transcript": d.transcript,
                })),
                None => ok(json!({"found": false, "bound": bound})),
            }
        }
    }
}

fn equiv(ctx: &mut Context, cmd: &EquivCmd) -> Out {
    match cmd {
        EquivCmd::GcdCheck(a) => {
            let k1 = ctx.field(&a.f1)?;
            let k2 = ctx.field(&a.f2)?;
            let bound = ctx.bound();
            let report = splitting_equivalence(&k1, &k2, bound);
            ok(json!({"holds_up_to_bound": report.holds(), "report": report}))
        }
        EquivCmd::Splitcheck(a) => {
            let k1 = ctx.field(&a.f1)?;
            let k2 = ctx.field(&a.f2)?;
            let bound = ctx.bound();
            ok(serde_json::to_value(split_set_contained(&k1, &k2, bound)?).expect("serializes"))
        }
        EquivCmd::Fingerprint { poly, d_max, m_max } => {
            let k = ctx.field(poly)?;
            let bound = ctx.bound();
            let fp = galois_fingerprint(&k, bound, *d_max, *m_max)?;
            ok(json!({
                "bound": fp.bound,
                "rou_order": fp.rou_order,
                "contained_catalog_fields": fp.contained_catalog_fields,
                "primes_used": fp.primes_used,
                "excluded_primes": fp.excluded_primes,
                "label": fp.label,
            }))
        }
    }
}

/// Audit bound for presets: the Galois fingerprint needs at least 1000.
const MIN_AUDIT_BOUND: u64 = 1000;

fn preset_classes(ctx: &mut Context, preset: Preset) -> Result<(Value, [CommClass; 2]), Failure> {
    let Preset::PaperK1k2 = preset;
    let p = paper_k1k2();
    let bound = ctx.bound();
    let audit = audit_pair(&p, bound.max(MIN_AUDIT_BOUND))?;
    let [k1, k2] = [
        ctx.build(p.polys[0], p.flags, false)?,
        ctx.build(p.polys[1], p.flags, false)?,
    ];
    let audit = json!({"preset": p, "audit": audit});
    Ok((audit, [CommClass::split(&k1)?, CommClass::split(&k2)?]))
}

fn comm_class(ctx: &mut Context, poly: &str, ram: &str) -> Result<CommClass, Failure> {
    let k = ctx.field(poly)?;
    Ok(CommClass::new(quat_make(&k, &parse_places(ram)?)?)?)
}

const SURFACE_FLAGS: [&str; 2] = [
    "claimed_narrow_class_number_one",
    "claimed_only_totally_real_subfield_is_q",
];

fn surfaces(ctx: &mut Context, cmd: &SurfacesCmd) -> Out {
    match cmd {
        SurfacesCmd::List { poly, ram, preset } => {
            let (audit, classes) = match (preset, poly) {
                (Some(p), _) => {
                    let (audit, [m1, m2]) = preset_classes(ctx, *p)?;
                    (audit, vec![m1, m2])
                }
                (None, Some(poly)) => (Value::Null, vec![comm_class(ctx, poly, ram)?]),
                (None, None) => {
                    return Err(Failure::Usage("--poly or --preset is required".into()))
                }
            };
            let bound = ctx.bound();
            let mut out = Vec::new();
            for m in &classes {
                let (list, report) = surface_classes(m, bound)?;
                out.push(json!({
                    "field": m.field().poly().to_string(),
                    "algebra": algebra_json(m.algebra()),
                    "shape": m.shape(),
                    "surfaces": list.iter().map(surface_json).collect::<Vec<_>>(),
                    "report": report,
                }));
            }
            ctx.use_flags(&SURFACE_FLAGS);
            ok(json!({"bound": bound, "classes": out, "preset_audit": audit}))
        }
        SurfacesCmd::Compare {
            poly1,
            ram1,
            poly2,
            ram2,
            preset,
        } => {
            let (audit, [m1, m2]) = match (preset, poly1, poly2) {
                (Some(p), _, _) => preset_classes(ctx, *p)?,
                (None, Some(a), Some(b)) => (
                    Value::Null,
                    [comm_class(ctx, a, ram1)?, comm_class(ctx, b, ram2)?],
                ),
                _ => {
                    return Err(Failure::Usage(
                        "--poly1 and --poly2, or --preset, are required".into(),
                    ))
                }
            };
            let bound = ctx.bound();
            let cmp = compare_surface_sets(&m1, &m2, bound)?;
            ctx.use_flags(&cmp.trusted_flags_used);
            let mut result = serde_json::to_value(cmp.to_json()).expect("serializes");
            let extra = result.as_object_mut().expect("object");
            extra.insert("primes_tested".into(), json!(cmp.primes_tested));
            extra.insert("commensurable".into(), json!(commensurable(&m1, &m2)));
            extra.insert("shapes".into(), json!([m1.shape(), m2.shape()]));
            extra.insert("preset_audit".into(), audit);
            ok(result)
        }
    }
}

fn cache(ctx: &mut Context, cmd: &CacheCmd) -> Out {
    let path = ctx
        .cache_path()
        .cloned()
        .ok_or_else(|| Failure::Usage("no cache path (caching disabled)".into()))?;
    match cmd {
        CacheCmd::Stats => {
            let cache = SplitCache::load(&path)?;
            ok(json!({"path": path.display().to_string(), "entries": cache.len()}))
        }
        CacheCmd::Clear => {
            // an unreadable cache file is cleared too
            let cleared = SplitCache::load(&path).map(|c| c.len()).unwrap_or(0);
            SplitCache::new().save(&path)?;
            ok(json!({"path": path.display().to_string(), "cleared_entries": cleared}))
        }
    }
}
