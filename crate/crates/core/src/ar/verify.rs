//! Scripted checks of the component structure for the three algebra families.
//!
//! Each verifier returns every individual assertion so callers can print the first failure.

use serde::Serialize;

use super::component::{build_component, component_report, Component, ComponentReport, TreeClass};
use crate::algebra::AlgebraSpec;
use crate::complex::Complex;
use crate::engine::Engine;
use crate::error::Result;
use crate::expr::{parse_complex, Namer};
use crate::homalg;

pub const DEFAULT_BUDGET: usize = 400;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub name: String,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&Check> {
        self.checks.iter().find(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Checker<'a> {
    engine: &'a Engine,
    namer: Namer<'a>,
    checks: Vec<Check>,
}

impl<'a> Checker<'a> {
    fn new(engine: &'a Engine) -> Self {
        Checker { engine, namer: Namer::new(engine), checks: Vec::new() }
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }

    fn expr(&self, s: &str) -> Result<Complex> {
        parse_complex(self.engine, s)
    }

    /// `lhs ~ rhs` in the homotopy category, both given as expressions.
    fn iso(&mut self, lhs: &str, rhs: &str) -> Result<()> {
        let (x, y) = (self.expr(lhs)?, self.expr(rhs)?);
        let ok = self.engine.is_isomorphic(&x, &y);
        let detail = if ok { String::new() } else { format!("got {}", self.namer.name(&x)) };
        self.push(format!("{lhs} = {rhs}"), ok, detail);
        Ok(())
    }

    /// The triangle ending in `end` has the given start and middle summands, up to isomorphism.
    fn triangle(&mut self, end: &str, start: &str, middle: &[&str]) -> Result<()> {
        let tri = self.engine.ar_triangle_ending(&self.expr(end)?)?;
        let got: Vec<Complex> = tri
            .middle
            .iter()
            .flat_map(|(c, k)| std::iter::repeat_n(c.clone(), *k))
            .collect();
        let want = middle.iter().map(|m| self.expr(m)).collect::<Result<Vec<_>>>()?;
        let start_ok = self.engine.is_isomorphic(&tri.start, &self.expr(start)?);
        let middle_ok = matches_multiset(self.engine, &got, &want);
        let names: Vec<String> = got.iter().map(|c| self.namer.name(c)).collect();
        self.push(
            format!("triangle {start} -> {} -> {end}", middle.join(" (+) ")),
            start_ok && middle_ok && self.engine.has_ar_property(&tri),
            format!("computed start {}, middle {}", self.namer.name(&tri.start), names.join(" (+) ")),
        );
        Ok(())
    }

    fn finish(self, name: String) -> VerifyReport {
        VerifyReport { name, checks: self.checks }
    }
}

/// Pairs every expected complex with a distinct isomorphic computed one.
pub fn matches_multiset(engine: &Engine, got: &[Complex], want: &[Complex]) -> bool {
    if got.len() != want.len() {
        return false;
    }
    let mut used = vec![false; got.len()];
    want.iter().all(|w| {
        let hit = (0..got.len()).find(|&i| !used[i] && engine.is_isomorphic(&got[i], w));
        hit.map(|i| used[i] = true).is_some()
    })
}

/// Knits from `start` and analyses the result.
pub fn knit(engine: &Engine, start: &str, budget: usize) -> Result<(Component, ComponentReport)> {
    let c = build_component(engine, &parse_complex(engine, start)?, budget)?;
    let r = component_report(engine, &c);
    Ok((c, r))
}

/// Orbit index of an expression inside a knitted component.
fn orbit(engine: &Engine, c: &Component, r: &ComponentReport, s: &str) -> Result<Option<usize>> {
    let x = parse_complex(engine, s)?;
    Ok(c.locate(engine, &x)?.and_then(|(v, t)| r.orbit_of(v, t)))
}

fn component_checks(ch: &mut Checker<'_>, r: &ComponentReport, n: usize, want: TreeClass) {
    ch.push("component closes", r.closed, format!("{} triangles", r.triangles));
    ch.push(format!("{n} tau-orbits"), r.orbit_count() == n, format!("found {}", r.orbit_count()));
    ch.push(format!("verdict {want}"), r.verdict == want, format!("found {}", r.verdict));
}

/// The four-vertex example with relation `[1,4]`.
pub fn verify_example_d4(seed: u64) -> Result<VerifyReport> {
    let engine = Engine::with_seed(AlgebraSpec::a4gamma(), seed);
    let alg = engine.alg();
    let mut ch = Checker::new(&engine);
    let mods = alg.indecomposables();
    ch.push("9 indecomposable modules", mods.len() == 9, format!("found {}", mods.len()));
    ch.push("P3 = I1", alg.proj(3) == alg.inj(1), "");
    ch.push("P4 = I2", alg.proj(4) == alg.inj(2), "");
    let p4 = alg.proj(4);
    ch.push("I3 = P4/S2", alg.inj(3).lo == p4.lo + 1 && alg.inj(3).hi == p4.hi, "");
    ch.push("I4 = S4", alg.inj(4).is_simple() && alg.inj(4).lo == 4, "");

    ch.triangle("P1", "P3[-1]", &["M[-1]"])?;
    ch.triangle("P2", "P4[-1]", &["nu^-1(M)"])?;
    ch.triangle("P3", "I3[-1]", &["nu(M)[-1]"])?;
    ch.triangle("P4", "I4[-1]", &["M"])?;
    ch.triangle("M", "nu(M)[-1]", &["I4[-1]", "P3", "S2"])?;
    ch.triangle("S2", "nu^-1(S3)", &["nu(M)[-1]"])?;
    ch.triangle("S3", "S2", &["M"])?;
    ch.iso("nu^-1(S3)", "nu(S2)[-1]")?;

    let (_, r) = knit(&engine, "P1", DEFAULT_BUDGET)?;
    component_checks(&mut ch, &r, 4, TreeClass::D(4));
    let observed = match r.minus_one_as_tau {
        Some(k) => format!("observed [-1] = tau^{k}"),
        None => "[-1] is not a power of tau".to_string(),
    };
    ch.push("[-1] acts as tau^4", r.minus_one_as_tau == Some(4), observed);
    Ok(ch.finish("example-d4".into()))
}

/// Radical-square-zero algebra on `n` vertices.
pub fn verify_zan(n: usize, seed: u64) -> Result<VerifyReport> {
    if n < 2 {
        return Err(crate::error::Error::NotApplicable(format!("zan needs at least 2 vertices, got {n}")));
    }
    let engine = Engine::with_seed(AlgebraSpec::rad_square(n)?, seed);
    let mut ch = Checker::new(&engine);
    let gl = homalg::gldim(engine.alg());
    ch.push(format!("gldim = {}", n - 1), gl + 1 == n, format!("found {gl}"));

    let (c, r) = knit(&engine, "S1", DEFAULT_BUDGET)?;
    component_checks(&mut ch, &r, n, TreeClass::A(n));

    let s1 = ch.expr("S1")?;
    let mut cur = s1;
    for s in 1..=n {
        cur = engine.tau_pow(&cur, 1)?;
        let want = ch.expr(&format!("I{s}[{}]", -(s as i32)))?;
        let ok = engine.is_isomorphic(&cur, &want);
        let detail = if ok { String::new() } else { format!("got {}", ch.namer.name(&cur)) };
        ch.push(format!("tau^{s}(S1) = I{s}[-{s}]"), ok, detail);
    }
    for i in 1..=n {
        let x = ch.expr(&format!("S{i}"))?;
        let t = engine.tau_pow(&x, n as i32 + 1)?;
        let ok = engine.is_isomorphic(&t, &ch.expr(&format!("S{i}[-2]"))?);
        ch.push(format!("tau^{}(S{i}) = S{i}[-2]", n + 1), ok, ch.namer.name(&t));
        let j = n - i + 1;
        let shift = -(n as i32) + 2 * i as i32 - 2;
        let t = engine.tau_pow(&x, j as i32)?;
        let ok = engine.is_isomorphic(&t, &ch.expr(&format!("S{j}[{shift}]"))?);
        ch.push(format!("tau^{j}(S{i}) = S{j}[{shift}]"), ok, ch.namer.name(&t));
    }

    let mut path_ok = true;
    let mut missing = Vec::new();
    for k in 1..n {
        let from = format!("S{}[{}]", k + 1, -(k as i32));
        let to = format!("S{k}[{}]", 1 - k as i32);
        let a = c.locate(&engine, &ch.expr(&from)?)?;
        let b = c.locate(&engine, &ch.expr(&to)?)?;
        if !matches!((a, b), (Some(a), Some(b)) if c.has_arrow(a, b)) {
            path_ok = false;
            missing.push(format!("{from} -> {to}"));
        }
        if k + 1 < n {
            let far = ch.expr(&format!("S{}[{}]", k + 2, -(k as i32) - 1))?;
            if engine.is_isomorphic(&ch.expr(&to)?, &engine.tau_pow(&far, 1)?) {
                path_ok = false;
                missing.push(format!("{to} = tau of S{}", k + 2));
            }
        }
    }
    ch.push(format!("sectional path S{n}[{}] -> ... -> S1", 1 - n as i32), path_ok, missing.join(", "));
    Ok(ch.finish(format!("zan:{n}")))
}

/// Algebra with the single relation `[1,n]`.
pub fn verify_zdn(n: usize, seed: u64) -> Result<VerifyReport> {
    if n < 4 {
        return Err(crate::error::Error::NotApplicable(format!("zdn needs at least 4 vertices, got {n}")));
    }
    let engine = Engine::with_seed(AlgebraSpec::long_relation(n)?, seed);
    let mut ch = Checker::new(&engine);
    let (c, r) = knit(&engine, "S1", DEFAULT_BUDGET)?;
    component_checks(&mut ch, &r, n, TreeClass::D(n));

    for i in 3..n {
        ch.iso(&format!("tau(S{i})"), &format!("S{}", i - 1))?;
    }
    ch.iso("tau(tau(S2))", &format!("S{}[-1]", n - 1))?;
    for i in 3..=n {
        ch.iso(&format!("tau(I{i})"), &format!("P{}[1]", i - 2))?;
    }

    let m = |s: usize| format!("[2,{s}]");
    let s_n = format!("S{n}[-1]");
    let before = m(n - 2);
    ch.triangle(&m(n - 1), &format!("tau({})", m(n - 1)), &[&s_n, "tau(S1[1])", &before])?;
    for s in 3..n - 1 {
        let tri = engine.ar_triangle_ending(&ch.expr(&m(s))?)?;
        ch.push(format!("M{s} has 2 predecessors"), tri.middle_count() == 2, format!("found {}", tri.middle_count()));
    }
    ch.triangle("S1", "tau(S1)", &[&format!("{}[-1]", m(n - 1))])?;

    let o1 = orbit(&engine, &c, &r, "S1")?;
    let on = orbit(&engine, &c, &r, &format!("S{n}"))?;
    let action = &r.shift_action;
    if n.is_multiple_of(2) {
        let fixed = !action.is_empty() && action.iter().enumerate().all(|(i, j)| i == *j);
        ch.push("[-1] fixes every orbit", fixed, format!("{action:?}"));
    } else {
        let swapped = match (o1, on) {
            (Some(a), Some(b)) => a != b && action.get(a) == Some(&b) && action.get(b) == Some(&a),
            _ => false,
        };
        ch.push("[-1] swaps the orbits of S1 and Sn", swapped, format!("{action:?}"));
    }
    Ok(ch.finish(format!("zdn:{n}")))
}

/// Runs a verifier named `example-d4`, `zan:n` or `zdn:n`.
pub fn run_named(name: &str, seed: u64) -> Result<VerifyReport> {
    let bad = || crate::error::Error::Parse(format!("unknown verifier `{name}`"));
    if name == "example-d4" {
        return verify_example_d4(seed);
    }
    let (kind, n) = name.split_once(':').ok_or_else(bad)?;
    let n: usize = n.parse().map_err(|_| bad())?;
    match kind {
        "zan" => verify_zan(n, seed),
        "zdn" => verify_zdn(n, seed),
        _ => Err(bad()),
    }
}
