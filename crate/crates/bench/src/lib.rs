//! Shared fixtures for the benchmarks.

use arq_core::{AlgebraSpec, Complex, Engine};

/// Engines for the preset families at size `n`, labelled by preset name.
pub fn engines(n: usize) -> Vec<(String, Engine)> {
    ["radsquare", "longrel", "hereditary"]
        .iter()
        .map(|f| format!("{f}:{n}"))
        .chain(std::iter::once("a4gamma".to_string()))
        .filter_map(|name| AlgebraSpec::preset(&name).ok().map(|a| (name, Engine::new(a))))
        .collect()
}

/// Projective resolutions of every indecomposable module.
pub fn indecomposable_objects(e: &Engine) -> Vec<Complex> {
    e.alg().indecomposables().iter().map(|m| e.p(m)).collect()
}
