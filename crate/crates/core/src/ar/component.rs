//! Knitting an AR component modulo shift, and reading off its tree class.
//!
//! Every vertex stores a representative `R` whose lowest homology sits in degree 0; any object
//! of the component is `R[m]` for a vertex `R` and an integer `m`. Arrows and translates carry
//! the shift needed to land on the stored representative.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use crate::complex::descriptor;
use crate::complex::Complex;
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::expr::{with_shift, Namer};
use crate::homalg::Direction;

#[derive(Clone, Debug, Serialize)]
pub struct Vertex {
    pub descriptor: String,
    pub l_p: usize,
    pub generation: usize,
    #[serde(skip)]
    pub rep: Complex,
}

/// An irreducible map `R_from[shift] -> R_to`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub from: usize,
    pub shift: i32,
    pub to: usize,
    pub multiplicity: usize,
}

/// `tau R_from = R_to[shift]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TauEdge {
    pub from: usize,
    pub to: usize,
    pub shift: i32,
}

/// What the minimization of the middle term removed, per triangle.
#[derive(Clone, Debug, Serialize)]
pub struct TriangleRecord {
    pub end: usize,
    pub l_p_start: usize,
    pub l_p_middle: usize,
    pub l_p_end: usize,
    pub stripped: Vec<(i32, String)>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Component {
    pub vertices: Vec<Vertex>,
    pub arrows: Vec<Arrow>,
    pub tau_edges: Vec<TauEdge>,
    pub records: Vec<TriangleRecord>,
    pub triangles: usize,
    pub closed: bool,
}

impl Component {
    /// `(v, t)` with `x = R_v[t]`, if `x` is already a vertex up to shift.
    pub fn locate(&self, engine: &Engine, x: &Complex) -> Result<Option<(usize, i32)>> {
        let x = engine.as_projective(x)?;
        let (r, t) = engine.normalize_shift(&x);
        let r = engine.canonical(&r);
        let d = descriptor::format(&r);
        if let Some(v) = self.vertices.iter().position(|v| v.descriptor == d) {
            return Ok(Some((v, t)));
        }
        let ms = r.summand_multiset();
        Ok(self
            .vertices
            .iter()
            .position(|v| v.rep.summand_multiset() == ms && engine.is_isomorphic(&v.rep, &r))
            .map(|v| (v, t)))
    }

    fn locate_or_insert(&mut self, engine: &Engine, x: &Complex, generation: usize) -> Result<(usize, i32)> {
        if let Some(hit) = self.locate(engine, x)? {
            return Ok(hit);
        }
        let x = engine.as_projective(x)?;
        let (r, t) = engine.normalize_shift(&x);
        let rep = engine.canonical(&r);
        self.vertices.push(Vertex { descriptor: descriptor::format(&rep), l_p: rep.summand_count(), generation, rep });
        Ok((self.vertices.len() - 1, t))
    }

    /// Sum of arrow multiplicities ending at `v`.
    pub fn in_degree(&self, v: usize) -> usize {
        self.arrows.iter().filter(|a| a.to == v).map(|a| a.multiplicity).sum()
    }

    pub fn tau_of(&self, v: usize) -> Option<&TauEdge> {
        self.tau_edges.iter().find(|e| e.from == v)
    }

    /// Whether there is an arrow `R_u[a] -> R_v[b]`.
    pub fn has_arrow(&self, (u, a): (usize, i32), (v, b): (usize, i32)) -> bool {
        self.arrows.iter().any(|x| x.from == u && x.to == v && x.shift == a - b)
    }
}

/// Knits the component containing `start` until it closes or `budget` triangles have been computed.
pub fn build_component(engine: &Engine, start: &Complex, budget: usize) -> Result<Component> {
    let mut c = Component::default();
    c.locate_or_insert(engine, start, 0)?;
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        if c.triangles >= budget {
            return Err(Error::BudgetExceeded(Box::new(c)));
        }
        let tri = engine.ar_triangle_ending(&c.vertices[v].rep)?;
        c.triangles += 1;
        let generation = c.vertices[v].generation + 1;
        let mut discover = |c: &mut Component, x: &Complex| -> Result<(usize, i32)> {
            let before = c.vertices.len();
            let hit = c.locate_or_insert(engine, x, generation)?;
            if c.vertices.len() > before {
                queue.push_back(hit.0);
            }
            Ok(hit)
        };
        for (m, k) in &tri.middle {
            let (u, s) = discover(&mut c, m)?;
            c.arrows.push(Arrow { from: u, shift: s, to: v, multiplicity: *k });
        }
        let (u, s) = discover(&mut c, &tri.start)?;
        c.tau_edges.push(TauEdge { from: v, to: u, shift: s });
        let succ = engine.tau(&c.vertices[v].rep, Direction::Inverse)?;
        discover(&mut c, &succ)?;
        c.records.push(TriangleRecord {
            end: v,
            l_p_start: tri.start.summand_count(),
            l_p_middle: tri.middle_complex.summand_count(),
            l_p_end: tri.end.summand_count(),
            stripped: tri
                .stripped
                .iter()
                .map(|s| (s.degree, descriptor::summand_name(tri.middle_complex.kind(), &s.summand)))
                .collect(),
        });
    }
    c.closed = true;
    Ok(c)
}

/// A cycle of `tau` on vertices: `tau^len R_{v_0} = R_{v_0}[shift]`.
#[derive(Clone, Debug, Serialize)]
pub struct TauCycle {
    pub vertices: Vec<usize>,
    pub shift: i32,
}

#[derive(Clone, Debug, Serialize)]
pub struct Orbit {
    pub cycle: usize,
    pub residue: i32,
    pub representative: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum TreeClass {
    A(usize),
    D(usize),
    E(usize),
    Inconclusive,
}

impl std::fmt::Display for TreeClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TreeClass::A(n) => write!(f, "Z[A_{n}]"),
            TreeClass::D(n) => write!(f, "Z[D_{n}]"),
            TreeClass::E(n) => write!(f, "Z[E_{n}]"),
            TreeClass::Inconclusive => write!(f, "inconclusive"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ComponentReport {
    pub closed: bool,
    pub triangles: usize,
    pub vertices: Vec<(String, String)>,
    pub cycles: Vec<TauCycle>,
    /// `beta[v]`: the residue offset placing `R_v[m]` in orbit `(cycle, m - beta[v])`.
    pub beta: Vec<i32>,
    pub cycle_of: Vec<usize>,
    pub orbits: Vec<Orbit>,
    pub orbit_edges: Vec<(usize, usize)>,
    pub verdict: TreeClass,
    /// Image of each orbit under `[-1]`.
    pub shift_action: Vec<usize>,
    /// `k` with `[-1] = tau^k` on every object, when such `k` exists.
    pub minus_one_as_tau: Option<i32>,
    pub max_l_p: usize,
    pub stripped_total: usize,
}

impl ComponentReport {
    pub fn orbit_count(&self) -> usize {
        self.orbits.len()
    }

    fn orbit_index(&self, cycle: usize, residue: i32) -> usize {
        self.orbits.iter().position(|o| o.cycle == cycle && o.residue == residue).unwrap()
    }

    /// Orbit of `R_v[m]`.
    pub fn orbit_of(&self, v: usize, m: i32) -> Option<usize> {
        let c = *self.cycle_of.get(v)?;
        let s = self.cycles[c].shift.abs();
        (s != 0).then(|| self.orbit_index(c, (m - self.beta[v]).rem_euclid(s)))
    }
}

fn gcd(a: i32, b: i32) -> i32 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Tree class of a graph on `k` nodes given by undirected edges.
fn classify(k: usize, edges: &BTreeSet<(usize, usize)>) -> TreeClass {
    if k == 0 || edges.len() + 1 != k || edges.iter().any(|(a, b)| a == b) {
        return TreeClass::Inconclusive;
    }
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; k];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return TreeClass::Inconclusive;
    }
    let branch: Vec<usize> = (0..k).filter(|&x| adj[x].len() > 2).collect();
    match branch.as_slice() {
        [] => TreeClass::A(k),
        [b] if adj[*b].len() == 3 => {
            let mut arms: Vec<usize> = adj[*b]
                .iter()
                .map(|&first| {
                    let (mut prev, mut cur, mut len) = (*b, first, 1);
                    while let Some(&next) = adj[cur].iter().find(|&&y| y != prev) {
                        (prev, cur, len) = (cur, next, len + 1);
                    }
                    len
                })
                .collect();
            arms.sort();
            match arms.as_slice() {
                [1, 1, _] => TreeClass::D(k),
                [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => TreeClass::E(k),
                _ => TreeClass::Inconclusive,
            }
        }
        _ => TreeClass::Inconclusive,
    }
}

pub fn component_report(engine: &Engine, c: &Component) -> ComponentReport {
    let namer = Namer::new(engine);
    let nv = c.vertices.len();
    let vertices = c.vertices.iter().map(|v| (v.descriptor.clone(), namer.name(&v.rep))).collect();
    let tau: BTreeMap<usize, (usize, i32)> = c.tau_edges.iter().map(|e| (e.from, (e.to, e.shift))).collect();

    let mut cycles: Vec<TauCycle> = Vec::new();
    let mut cycle_of = vec![usize::MAX; nv];
    let mut beta = vec![0i32; nv];
    let mut consistent = c.closed && tau.len() == nv;
    for v0 in 0..nv {
        if !consistent || cycle_of[v0] != usize::MAX {
            continue;
        }
        let (mut path, mut shift, mut cur) = (vec![v0], 0i32, v0);
        loop {
            let Some(&(next, t)) = tau.get(&cur) else {
                consistent = false;
                break;
            };
            shift += t;
            if next == v0 {
                break;
            }
            if path.contains(&next) || cycle_of[next] != usize::MAX {
                consistent = false;
                break;
            }
            beta[next] = beta[cur] + t;
            path.push(next);
            cur = next;
        }
        if consistent {
            for &v in &path {
                cycle_of[v] = cycles.len();
            }
            cycles.push(TauCycle { vertices: path, shift });
        }
    }
    let consistent = consistent && cycles.iter().all(|c| c.shift != 0);

    let mut orbits = Vec::new();
    if consistent {
        for (ci, cyc) in cycles.iter().enumerate() {
            let v0 = cyc.vertices[0];
            for r in 0..cyc.shift.abs() {
                let representative = with_shift(&vertices_name(&namer, c, v0), r);
                orbits.push(Orbit { cycle: ci, residue: r, representative });
            }
        }
    }
    let mut report = ComponentReport {
        closed: c.closed,
        triangles: c.triangles,
        vertices,
        cycles,
        beta,
        cycle_of,
        orbits,
        orbit_edges: Vec::new(),
        verdict: TreeClass::Inconclusive,
        shift_action: Vec::new(),
        minus_one_as_tau: None,
        max_l_p: c.vertices.iter().map(|v| v.l_p).max().unwrap_or(0),
        stripped_total: c.records.iter().map(|r| r.stripped.len()).sum(),
    };
    if !consistent {
        return report;
    }

    let mut edges = BTreeSet::new();
    for a in &c.arrows {
        let su = report.cycles[report.cycle_of[a.from]].shift.abs();
        let sv = report.cycles[report.cycle_of[a.to]].shift.abs();
        let l = su / gcd(su, sv) * sv;
        for m in 0..l {
            let x = report.orbit_of(a.from, a.shift + m).unwrap();
            let y = report.orbit_of(a.to, m).unwrap();
            edges.insert((x.min(y), x.max(y)));
        }
    }
    report.verdict = classify(report.orbits.len(), &edges);
    report.orbit_edges = edges.into_iter().collect();
    report.shift_action = report
        .orbits
        .iter()
        .map(|o| {
            let s = report.cycles[o.cycle].shift.abs();
            report.orbit_index(o.cycle, (o.residue - 1).rem_euclid(s))
        })
        .collect();
    let powers: BTreeSet<i32> = report
        .cycles
        .iter()
        .map(|cy| match cy.shift {
            -1 => Some(cy.vertices.len() as i32),
            1 => Some(-(cy.vertices.len() as i32)),
            _ => None,
        })
        .collect::<Option<_>>()
        .unwrap_or_default();
    if powers.len() == 1 {
        report.minus_one_as_tau = powers.into_iter().next();
    }
    report
}

fn vertices_name(namer: &Namer<'_>, c: &Component, v: usize) -> String {
    namer.name(&c.vertices[v].rep)
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Graphviz rendering: solid arrows for irreducible maps, dashed ones for the translate.
pub fn to_dot(c: &Component, report: &ComponentReport) -> String {
    let mut out = String::from("digraph component {\n  rankdir=LR;\n  node [shape=box, fontsize=10];\n");
    for (i, v) in c.vertices.iter().enumerate() {
        let alias = report.vertices.get(i).map(|x| x.1.as_str()).unwrap_or("");
        out.push_str(&format!(
            "  v{i} [label=\"{}\\n{}\", descriptor=\"{}\"];\n",
            dot_escape(alias),
            dot_escape(&v.descriptor),
            dot_escape(&v.descriptor)
        ));
    }
    for a in &c.arrows {
        let mut label = String::new();
        if a.shift != 0 {
            label.push_str(&format!("[{}]", a.shift));
        }
        if a.multiplicity > 1 {
            label.push_str(&format!(" x{}", a.multiplicity));
        }
        out.push_str(&format!("  v{} -> v{} [label=\"{}\"];\n", a.from, a.to, label.trim()));
    }
    for e in &c.tau_edges {
        out.push_str(&format!("  v{} -> v{} [style=dashed, label=\"tau [{}]\"];\n", e.from, e.to, e.shift));
    }
    out.push_str("}\n");
    out
}

/// Structured export of the component together with its analysis.
pub fn to_json(engine: &Engine, c: &Component, report: &ComponentReport) -> serde_json::Value {
    serde_json::json!({
        "algebra": {"n": engine.alg().n(), "relations": engine.alg().relations()},
        "seed": engine.seed(),
        "component": c,
        "report": report,
        "verdict": report.verdict.to_string(),
        "orbit_count": report.orbit_count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;

    fn edges(list: &[(usize, usize)]) -> BTreeSet<(usize, usize)> {
        list.iter().copied().collect()
    }

    #[test]
    fn tree_classes() {
        assert_eq!(classify(3, &edges(&[(0, 1), (1, 2)])), TreeClass::A(3));
        assert_eq!(classify(4, &edges(&[(0, 1), (0, 2), (0, 3)])), TreeClass::D(4));
        assert_eq!(classify(6, &edges(&[(0, 1), (1, 2), (2, 3), (3, 4), (2, 5)])), TreeClass::E(6));
        assert_eq!(classify(5, &edges(&[(0, 1), (1, 2), (2, 3), (1, 4)])), TreeClass::D(5));
        assert_eq!(classify(3, &edges(&[(0, 1), (1, 2), (0, 2)])), TreeClass::Inconclusive);
        assert_eq!(classify(4, &edges(&[(0, 1), (2, 3)])), TreeClass::Inconclusive);
    }

    #[test]
    fn budget_is_reported() {
        let e = Engine::new(AlgebraSpec::a4gamma());
        let s1 = e.p(&e.module(1, 1).unwrap());
        match build_component(&e, &s1, 2) {
            Err(Error::BudgetExceeded(c)) => {
                assert_eq!(c.triangles, 2);
                assert!(!c.closed);
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn a2_component() {
        let e = Engine::new(AlgebraSpec::hereditary(2).unwrap());
        let c = build_component(&e, &e.p(&e.module(1, 1).unwrap()), 50).unwrap();
        let r = component_report(&e, &c);
        assert_eq!(r.verdict, TreeClass::A(2));
        assert_eq!(r.orbit_count(), 2);
    }
}
