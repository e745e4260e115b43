//! Short names for modules and complexes: `S2`, `M`, `P3`, `I4[-1]`, `nu(S2)[-1]`, `[2,3]`.

use crate::algebra::{AlgebraSpec, IntervalModule};
use crate::complex::descriptor::{self, parse_interval};
use crate::complex::Complex;
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::homalg::Direction;

pub fn with_shift(name: &str, t: i32) -> String {
    if t == 0 {
        name.to_string()
    } else {
        format!("{name}[{t}]")
    }
}

/// Accepts `[a,b]`, a preset name such as `M`, or `P<i>`, `I<i>`, `S<i>`.
pub fn parse_module(alg: &AlgebraSpec, s: &str) -> Result<IntervalModule> {
    let s = s.trim();
    if s.starts_with('[') {
        let m = parse_interval(s)?;
        alg.check(&m)?;
        return Ok(m);
    }
    if let Some((_, m)) = alg.named_modules().iter().find(|(name, _)| name == s) {
        return Ok(*m);
    }
    let mut chars = s.chars();
    let letter = chars.next().ok_or_else(|| Error::Parse("empty module name".into()))?;
    let i: usize = chars.as_str().parse().map_err(|_| Error::Parse(format!("unknown module `{s}`")))?;
    if !matches!(letter, 'P' | 'I' | 'S') {
        return Err(Error::Parse(format!("unknown module `{s}`")));
    }
    if i < 1 || i > alg.n() {
        return Err(Error::IndexOutOfRange(format!("module {s} out of range for n = {}", alg.n())));
    }
    Ok(match letter {
        'P' => alg.proj(i),
        'I' => alg.inj(i),
        _ => IntervalModule::new(i, i),
    })
}

/// Splits a trailing integer shift `[k]` off an expression.
fn split_shift(s: &str) -> (&str, i32) {
    if let Some(body) = s.strip_suffix(']') {
        if let Some(open) = body.rfind('[') {
            if let Ok(k) = body[open + 1..].trim().parse::<i32>() {
                return (&s[..open], k);
            }
        }
    }
    (s, 0)
}

fn call<'a>(s: &'a str, f: &str) -> Option<&'a str> {
    s.strip_prefix(f)?.strip_prefix('(')?.strip_suffix(')')
}

/// Parses an expression into a minimal complex of projectives. Besides module names this
/// understands `nu(..)`, `nu^-1(..)`, `tau(..)`, `tau^-1(..)`, shifts `[k]` and full descriptors.
pub fn parse_complex(engine: &Engine, s: &str) -> Result<Complex> {
    let s = s.trim();
    if s.contains(':') || s == "0" {
        return engine.as_projective(&engine.parse(s)?);
    }
    let (base, t) = split_shift(s);
    let base = base.trim();
    let x = if let Some(inner) = call(base, "nu^-1") {
        let i = engine.injectivize(&parse_complex(engine, inner)?)?;
        engine.as_projective(&engine.nu_inv(&i)?)?
    } else if let Some(inner) = call(base, "nu") {
        engine.projectivize(&engine.nu(&parse_complex(engine, inner)?)?)?
    } else if let Some(inner) = call(base, "tau^-1") {
        engine.tau(&parse_complex(engine, inner)?, Direction::Inverse)?
    } else if let Some(inner) = call(base, "tau") {
        engine.tau(&parse_complex(engine, inner)?, Direction::Forward)?
    } else if let Some(inner) = call(base, "p") {
        engine.p(&parse_module(engine.alg(), inner)?)
    } else {
        engine.p(&parse_module(engine.alg(), base)?)
    };
    Ok(x.shift(t))
}

/// Names complexes by comparing against stalks and the Nakayama images of modules.
pub struct Namer<'a> {
    engine: &'a Engine,
    candidates: Vec<(String, Complex, i32)>,
}

impl<'a> Namer<'a> {
    pub fn new(engine: &'a Engine) -> Self {
        let alg = engine.alg();
        let mut candidates = Vec::new();
        for m in alg.indecomposables() {
            let name = alg.module_alias(&m);
            let p = engine.p(&m);
            if let Ok(y) = engine.projectivize(&engine.nu(&p).expect("p(M) is projective")) {
                let (r, t) = engine.normalize_shift(&y);
                candidates.push((format!("nu({name})"), r, t));
            }
            if let Ok(y) = engine.injectivize(&p).and_then(|i| engine.nu_inv(&i)) {
                let (r, t) = engine.normalize_shift(&engine.minimize(&y));
                candidates.push((format!("nu^-1({name})"), r, t));
            }
        }
        Namer { engine, candidates }
    }

    pub fn name(&self, x: &Complex) -> String {
        let e = self.engine;
        let Ok(x) = e.as_projective(x) else {
            return descriptor::format(x);
        };
        if x.is_zero() {
            return "0".into();
        }
        let h = e.homology(&x);
        if h.len() == 1 {
            let (k, ms) = h.iter().next().unwrap();
            if ms.len() == 1 {
                return with_shift(&e.alg().module_alias(&ms[0]), -k);
            }
        }
        let (r, t) = e.normalize_shift(&x);
        for (name, y, s) in &self.candidates {
            if y.summand_multiset() == r.summand_multiset() && e.is_isomorphic(y, &r) {
                return with_shift(name, t - s);
            }
        }
        descriptor::format(&x)
    }
}

/// One-off name for a complex; build a [`Namer`] when naming many.
pub fn alias(engine: &Engine, x: &Complex) -> String {
    Namer::new(engine).name(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modules() {
        let a = AlgebraSpec::a4gamma();
        assert_eq!(parse_module(&a, "M").unwrap(), IntervalModule::new(2, 3));
        assert_eq!(parse_module(&a, "P3").unwrap(), IntervalModule::new(1, 3));
        assert_eq!(parse_module(&a, "I3").unwrap(), IntervalModule::new(3, 4));
        assert_eq!(parse_module(&a, "[1,2]").unwrap(), IntervalModule::new(1, 2));
        assert!(matches!(parse_module(&a, "S9"), Err(Error::IndexOutOfRange(_))));
        assert!(matches!(parse_module(&a, "[1,4]"), Err(Error::InvalidModule(_))));
        assert!(matches!(parse_module(&a, "Q1"), Err(Error::Parse(_))));
    }

    #[test]
    fn expressions_and_names() {
        let e = Engine::new(AlgebraSpec::a4gamma());
        let x = parse_complex(&e, "I4[-1]").unwrap();
        assert_eq!(e.homology(&x).get(&1), Some(&vec![IntervalModule::new(4, 4)]));
        assert_eq!(alias(&e, &x), "I4[-1]");
        let y = parse_complex(&e, "nu(S2)[-1]").unwrap();
        let z = parse_complex(&e, "nu^-1(S3)").unwrap();
        assert!(e.is_isomorphic(&y, &z));
        let n = alias(&e, &y);
        assert!(n == "nu(S2)[-1]" || n == "nu^-1(S3)", "{n}");
        assert!(e.is_isomorphic(&parse_complex(&e, "tau(S3)").unwrap(), &parse_complex(&e, "S2").unwrap()));
        assert_eq!(alias(&e, &parse_complex(&e, "[2,3][1]").unwrap()), "M[1]");
        let d = parse_complex(&e, "0:{P1} 1:{P3} d0=[1]").unwrap();
        assert_eq!(alias(&e, &d), "M[-1]");
    }
}
