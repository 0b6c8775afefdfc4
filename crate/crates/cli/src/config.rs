//! `key = value` configuration files.
//!
//! ```text
//! bound = 1000
//! cache = /tmp/brauer-cache.txt
//! field.k1 = x^8-3
//! field.k1.flags = claimed_narrow_class_number_one, claimed_only_totally_real_subfield_is_q
//! field.k1.trust_irreducible = true
//! ```

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use brauer_core::numfield::TrustedFlags;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct FieldDef {
    pub poly: String,
    pub flags: TrustedFlags,
    pub trust_irreducible: bool,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    pub bound: Option<u64>,
    pub cache: Option<PathBuf>,
    pub no_cache: bool,
    pub fields: BTreeMap<String, FieldDef>,
}

pub fn set_flag(flags: &mut TrustedFlags, name: &str) -> Result<(), String> {
    match name {
        "claimed_narrow_class_number_one" | "narrow-class-number-one" => {
            flags.claimed_narrow_class_number_one = true
        }
        "claimed_primitive" | "primitive" => flags.claimed_primitive = true,
        "claimed_only_totally_real_subfield_is_q" | "only-totally-real-subfield-q" => {
            flags.claimed_only_totally_real_subfield_is_q = true
        }
        other => return Err(format!("unknown trusted flag {other:?}")),
    }
    Ok(())
}

fn parse_bool(v: &str) -> Result<bool, String> {
    match v {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(format!("expected a boolean, got {v:?}")),
    }
}

pub fn parse_config(text: &str) -> Result<Config, String> {
    let mut cfg = Config::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |m: String| format!("config line {}: {m}", lineno + 1);
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err("expected key = value".into()))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "bound" => {
                cfg.bound = Some(
                    value
                        .parse()
                        .map_err(|_| err(format!("bad bound {value:?}")))?,
                )
            }
            "cache" => cfg.cache = Some(PathBuf::from(value)),
            "no_cache" => cfg.no_cache = parse_bool(value).map_err(err)?,
            _ => {
                let rest = key
                    .strip_prefix("field.")
                    .ok_or_else(|| err(format!("unknown key {key:?}")))?;
                let (name, attr) = match rest.split_once('.') {
                    Some((n, a)) => (n, Some(a)),
                    None => (rest, None),
                };
                if name.is_empty() {
                    return Err(err("empty field name".into()));
                }
                let def = cfg.fields.entry(name.to_string()).or_default();
                match attr {
                    None => def.poly = value.to_string(),
                    Some("flags") => {
                        for flag in value.split(',').map(str::trim).filter(|f| !f.is_empty()) {
                            set_flag(&mut def.flags, flag).map_err(err)?;
                        }
                    }
                    Some("trust_irreducible") => {
                        def.trust_irreducible = parse_bool(value).map_err(err)?
                    }
                    Some(a) => return Err(err(format!("unknown field attribute {a:?}"))),
                }
            }
        }
    }
    if let Some((name, _)) = cfg.fields.iter().find(|(_, d)| d.poly.is_empty()) {
        return Err(format!("config: field {name:?} has no polynomial"));
    }
    Ok(cfg)
}

pub fn load_config(path: &Path) -> Result<Config, String> {
    let text =
        std::fs::read_to_string(path).map_err(|e| format!("config {}: {e}", path.display()))?;
    parse_config(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fields_and_globals() {
        let cfg = parse_config(
            "bound = 500\n# comment\nfield.k = x^8-3\nfield.k.flags = claimed_primitive, narrow-class-number-one\n",
        )
        .unwrap();
        assert_eq!(cfg.bound, Some(500));
        let k = &cfg.fields["k"];
        assert_eq!(k.poly, "x^8-3");
        assert!(k.flags.claimed_primitive && k.flags.claimed_narrow_class_number_one);
        assert!(!k.flags.claimed_only_totally_real_subfield_is_q);
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_config("bound 5").is_err());
        assert!(parse_config("colour = red").is_err());
        assert!(parse_config("field.k.flags = claimed_nothing").is_err());
        assert!(parse_config("field.k.flags = claimed_primitive").is_err());
    }
}
