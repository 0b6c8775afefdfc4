use std::collections::BTreeSet;
use std::path::PathBuf;
use std::sync::Arc;

use brauer_core::fppoly::IntPoly;
use brauer_core::numfield::{
    BuildOptions, IrreducibilityEvidence, NumberField, SplitCache, TrustedFlags,
};

use crate::commands::Failure;
use crate::config::{load_config, Config};
use crate::{Claim, GlobalArgs};

/// Fallback prime bound.
pub const DEFAULT_BOUND: u64 = 10_000;
const BOUND_ENV: &str = "BRAUER_PRIME_BOUND";

/// Per-invocation state: resolved settings, the cache and flag bookkeeping.
pub struct Context {
    config: Config,
    claims: TrustedFlags,
    trust_irreducible: bool,
    bound: u64,
    bound_used: bool,
    cache_path: Option<PathBuf>,
    cache: Option<(Arc<SplitCache>, usize)>,
    given: BTreeSet<&'static str>,
    used: BTreeSet<&'static str>,
}

fn default_cache_path() -> Option<PathBuf> {
    dirs::data_dir().map(|d| d.join("brauer").join("split-cache.txt"))
}

impl Context {
    pub fn new(global: &GlobalArgs) -> Result<Self, String> {
        let config = match &global.config {
            Some(path) => load_config(path)?,
            None => Config::default(),
        };
        let env_bound = match std::env::var(BOUND_ENV) {
            Ok(v) => Some(
                v.trim()
                    .parse::<u64>()
                    .map_err(|_| format!("{BOUND_ENV}={v:?} is not a bound"))?,
            ),
            Err(_) => None,
        };
        let bound = global
            .bound
            .or(config.bound)
            .or(env_bound)
            .unwrap_or(DEFAULT_BOUND);
        if bound < 2 {
            return Err(format!("bound {bound} is below 2"));
        }
        let mut claims = TrustedFlags::default();
        for c in &global.claims {
            match c {
                Claim::NarrowClassNumberOne => claims.claimed_narrow_class_number_one = true,
                Claim::Primitive => claims.claimed_primitive = true,
                Claim::OnlyTotallyRealSubfieldQ => {
                    claims.claimed_only_totally_real_subfield_is_q = true
                }
            }
        }
        let cache_path = if global.no_cache || config.no_cache {
            None
        } else {
            global
                .cache
                .clone()
                .or_else(|| config.cache.clone())
                .or_else(default_cache_path)
        };
        Ok(Context {
            config,
            claims,
            trust_irreducible: global.trust_irreducible,
            bound,
            bound_used: false,
            cache_path,
            cache: None,
            given: BTreeSet::new(),
            used: BTreeSet::new(),
        })
    }

    pub fn bound(&mut self) -> u64 {
        self.bound_used = true;
        self.bound
    }

    pub fn bound_used(&self) -> Option<u64> {
        self.bound_used.then_some(self.bound)
    }

    pub fn cache_path(&self) -> Option<&PathBuf> {
        self.cache_path.as_ref()
    }

    fn cache(&mut self) -> Result<Option<Arc<SplitCache>>, Failure> {
        if self.cache.is_none() {
            if let Some(path) = &self.cache_path {
                let loaded = SplitCache::load(path)?;
                let len = loaded.len();
                self.cache = Some((Arc::new(loaded), len));
            }
        }
        Ok(self.cache.as_ref().map(|(c, _)| c.clone()))
    }

    /// Builds a field from a polynomial or a `@name` config entry; the CLI
    /// claims are added to any flags from the config.
    pub fn field(&mut self, spec: &str) -> Result<NumberField, Failure> {
        let (poly, mut flags, trust) = match spec.strip_prefix('@') {
            Some(name) => {
                let def = self.config.fields.get(name).ok_or_else(|| {
                    Failure::Usage(format!("no field named {name:?} in the config"))
                })?;
                (def.poly.clone(), def.flags, def.trust_irreducible)
            }
            None => (spec.to_string(), TrustedFlags::default(), false),
        };
        flags.claimed_narrow_class_number_one |= self.claims.claimed_narrow_class_number_one;
        flags.claimed_primitive |= self.claims.claimed_primitive;
        flags.claimed_only_totally_real_subfield_is_q |=
            self.claims.claimed_only_totally_real_subfield_is_q;
        self.build(&poly, flags, trust || self.trust_irreducible)
    }

    pub fn build(
        &mut self,
        poly: &str,
        flags: TrustedFlags,
        trust: bool,
    ) -> Result<NumberField, Failure> {
        let poly = IntPoly::parse(poly)?;
        let options = BuildOptions {
            flags,
            trust_irreducible: trust,
            cache: self.cache()?,
        };
        let field = NumberField::build(&poly, options)?;
        self.given.extend(flags.names());
        if field.irreducibility() == &IrreducibilityEvidence::Trusted {
            self.used.insert("trust_irreducible");
        }
        Ok(field)
    }

    pub fn use_flags(&mut self, names: &[&'static str]) {
        self.used.extend(names.iter().copied());
    }

    pub fn flags_given(&self) -> Vec<&'static str> {
        self.given.iter().copied().collect()
    }

    pub fn flags_used(&self) -> Vec<&'static str> {
        self.used.iter().copied().collect()
    }

    /// Persists new cache records; returns a warning on failure.
    pub fn finish(&self) -> Option<String> {
        let (cache, loaded) = self.cache.as_ref()?;
        let path = self.cache_path.as_ref()?;
        if cache.len() == *loaded {
            return None;
        }
        cache
            .save(path)
            .err()
            .map(|e| format!("warning: cache not saved: {e}\n"))
    }
}
