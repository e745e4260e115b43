#![allow(dead_code)]

use arq_core::{AlgebraSpec, Engine};

/// Every admissible relation set on `n` vertices.
pub fn all_algebras(n: usize) -> Vec<AlgebraSpec> {
    let cands: Vec<(usize, usize)> = (1..=n).flat_map(|u| (u + 2..=n).map(move |v| (u, v))).collect();
    (0u32..1 << cands.len())
        .filter_map(|mask| {
            let rels: Vec<(usize, usize)> =
                (0..cands.len()).filter(|i| mask >> i & 1 == 1).map(|i| cands[i]).collect();
            AlgebraSpec::new(n, &rels).ok()
        })
        .collect()
}

pub fn all_algebras_up_to(n: usize) -> Vec<AlgebraSpec> {
    (1..=n).flat_map(all_algebras).collect()
}

/// The named families on at most `n` vertices: a4gamma, radical square zero,
/// one long relation, and the hereditary path algebras.
pub fn families(n: usize) -> Vec<(String, AlgebraSpec)> {
    let mut out = vec![("a4gamma".to_string(), AlgebraSpec::a4gamma())];
    for k in 2..=n {
        out.push((format!("radsquare:{k}"), AlgebraSpec::rad_square(k).unwrap()));
    }
    for k in 3..=n {
        out.push((format!("longrel:{k}"), AlgebraSpec::long_relation(k).unwrap()));
    }
    for k in 1..=n {
        out.push((format!("hereditary:{k}"), AlgebraSpec::hereditary(k).unwrap()));
    }
    out
}

pub fn engine(alg: &AlgebraSpec) -> Engine {
    Engine::new(alg.clone())
}

/// True when the relations are exactly all paths of length two.
pub fn is_rad_square(alg: &AlgebraSpec) -> bool {
    let n = alg.n();
    n >= 3 && alg.relations().len() == n - 2 && alg.relations().iter().all(|r| r.hi == r.lo + 2)
}
