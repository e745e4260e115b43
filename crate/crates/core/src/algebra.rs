//! Linear Nakayama algebras `kA_n/I` and their interval modules.
//!
//! Vertex `i` carries the projective `P_i = [i - c_i + 1, i]` (top `S_i`, composition
//! factors descending) and the injective `I_i = [i, i + r_i - 1]` (socle `S_i`). An
//! indecomposable module is an interval `[lo, hi]` with socle at `lo` and top at `hi`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Q;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct IntervalModule {
    pub lo: usize,
    pub hi: usize,
}

impl IntervalModule {
    pub fn new(lo: usize, hi: usize) -> Self {
        assert!(lo >= 1 && lo <= hi, "empty interval [{lo},{hi}]");
        IntervalModule { lo, hi }
    }

    /// `[lo, hi]`, or the zero module when the interval is empty.
    pub fn try_new(lo: usize, hi: usize) -> Option<Self> {
        (lo >= 1 && lo <= hi).then_some(IntervalModule { lo, hi })
    }

    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: usize) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn is_simple(&self) -> bool {
        self.lo == self.hi
    }
}

impl fmt::Display for IntervalModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// `dim Hom(m, n)` for interval modules: 1 iff `m.lo <= n.lo <= m.hi <= n.hi`.
pub fn hom_interval(m: &IntervalModule, n: &IntervalModule) -> usize {
    usize::from(m.lo <= n.lo && n.lo <= m.hi && m.hi <= n.hi)
}

/// Zero-aware version of [`hom_interval`].
pub fn hom_opt(m: Option<&IntervalModule>, n: Option<&IntervalModule>) -> usize {
    match (m, n) {
        (Some(m), Some(n)) => hom_interval(m, n),
        _ => 0,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModuleKind {
    Projective,
    Injective,
    Simple,
    /// `P_i / rad^t P_i`
    Quotient(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraSpec {
    n: usize,
    relations: Vec<IntervalModule>,
    proj_len: Vec<usize>,
    inj_len: Vec<usize>,
    /// Optional display name for a single non-systematic module (such as `M` in `a4gamma`).
    named: Vec<(String, IntervalModule)>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct AlgebraFile {
    n: usize,
    relations: Vec<[usize; 2]>,
}

impl AlgebraSpec {
    /// Builds `kA_n/I` with `I` generated by the zero paths spanning each relation interval.
    pub fn new(n: usize, relations: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::IndexOutOfRange(format!("vertex count must be positive, got {n}")));
        }
        let mut rels = Vec::with_capacity(relations.len());
        for &(u, v) in relations {
            if u < 1 || v > n || u > v {
                return Err(Error::RelationOutOfRange { u, v, n });
            }
            if v - u < 2 {
                return Err(Error::RelationTooShort { u, v });
            }
            rels.push(IntervalModule::new(u, v));
        }
        for (i, a) in rels.iter().enumerate() {
            for b in &rels[i + 1..] {
                if (a.lo <= b.lo && b.hi <= a.hi) || (b.lo <= a.lo && a.hi <= b.hi) {
                    return Err(Error::RedundantRelation { outer: *a.max(b), inner: *a.min(b) });
                }
            }
        }
        rels.sort();
        let covers = |lo: usize, hi: usize| rels.iter().any(|r| lo <= r.lo && r.hi <= hi);
        let proj_len = (1..=n).map(|i| (1..=i).take_while(|&t| !covers(i + 1 - t, i)).count()).collect();
        let inj_len = (1..=n).map(|i| (1..=n + 1 - i).take_while(|&t| !covers(i, i + t - 1)).count()).collect();
        Ok(AlgebraSpec { n, relations: rels, proj_len, inj_len, named: Vec::new() })
    }

    /// Parses the structured algebra file `{ "n": 4, "relations": [[1, 4]] }`.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: AlgebraFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let rels: Vec<(usize, usize)> = file.relations.iter().map(|r| (r[0], r[1])).collect();
        AlgebraSpec::new(file.n, &rels)
    }

    pub fn to_json(&self) -> String {
        let file = AlgebraFile { n: self.n, relations: self.relations.iter().map(|r| [r.lo, r.hi]).collect() };
        serde_json::to_string(&file).expect("algebra serialises")
    }

    /// The `a4gamma` algebra: `A_4` with the single relation spanning all four vertices.
    pub fn a4gamma() -> Self {
        let mut a = AlgebraSpec::new(4, &[(1, 4)]).expect("valid preset");
        a.named.push(("M".into(), IntervalModule::new(2, 3)));
        a
    }

    /// All paths of length two are zero.
    pub fn rad_square(n: usize) -> Result<Self> {
        let rels: Vec<(usize, usize)> = (1..=n.saturating_sub(2)).map(|i| (i, i + 2)).collect();
        AlgebraSpec::new(n, &rels)
    }

    /// The single relation is the path of length `n - 1`.
    pub fn long_relation(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::RelationTooShort { u: 1, v: n });
        }
        AlgebraSpec::new(n, &[(1, n)])
    }

    pub fn hereditary(n: usize) -> Result<Self> {
        AlgebraSpec::new(n, &[])
    }

    /// Preset names: `a4gamma`, `radsquare:N`, `longrel:N`, `hereditary:N`.
    pub fn preset(name: &str) -> Result<Self> {
        if name == "a4gamma" {
            return Ok(AlgebraSpec::a4gamma());
        }
        let (family, arg) = name.split_once(':').ok_or_else(|| Error::Parse(format!("unknown preset `{name}`")))?;
        let n: usize = arg.parse().map_err(|_| Error::Parse(format!("bad preset size `{arg}`")))?;
        match family {
            "radsquare" => AlgebraSpec::rad_square(n),
            "longrel" => AlgebraSpec::long_relation(n),
            "hereditary" => AlgebraSpec::hereditary(n),
            _ => Err(Error::Parse(format!("unknown preset family `{family}`"))),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn relations(&self) -> &[IntervalModule] {
        &self.relations
    }

    /// Loewy length `c_i` of `P_i`.
    pub fn proj_len(&self, i: usize) -> usize {
        self.proj_len[i - 1]
    }

    /// Loewy length `r_i` of `I_i`.
    pub fn inj_len(&self, i: usize) -> usize {
        self.inj_len[i - 1]
    }

    pub fn proj_lens(&self) -> &[usize] {
        &self.proj_len
    }

    pub fn inj_lens(&self) -> &[usize] {
        &self.inj_len
    }

    pub fn named_modules(&self) -> &[(String, IntervalModule)] {
        &self.named
    }

    pub fn proj(&self, i: usize) -> IntervalModule {
        IntervalModule::new(i + 1 - self.proj_len(i), i)
    }

    pub fn inj(&self, i: usize) -> IntervalModule {
        IntervalModule::new(i, i + self.inj_len(i) - 1)
    }

    pub fn is_valid(&self, m: &IntervalModule) -> bool {
        m.lo >= 1 && m.hi <= self.n && m.lo <= m.hi && !self.relations.iter().any(|r| m.lo <= r.lo && r.hi <= m.hi)
    }

    pub fn check(&self, m: &IntervalModule) -> Result<()> {
        if m.hi > self.n || m.lo < 1 {
            return Err(Error::IndexOutOfRange(format!("module {m} out of range for n = {}", self.n)));
        }
        if !self.is_valid(m) {
            return Err(Error::InvalidModule(format!("{m} contains a zero relation")));
        }
        Ok(())
    }

    pub fn is_projective(&self, m: &IntervalModule) -> bool {
        self.proj(m.hi) == *m
    }

    pub fn is_injective(&self, m: &IntervalModule) -> bool {
        self.inj(m.lo) == *m
    }

    /// Every indecomposable module, ordered by top then socle.
    pub fn indecomposables(&self) -> Vec<IntervalModule> {
        (1..=self.n)
            .flat_map(|hi| {
                let c = self.proj_len(hi);
                (1..=c).map(move |t| IntervalModule::new(hi + 1 - t, hi))
            })
            .collect()
    }

    pub fn interval_module(&self, kind: ModuleKind, i: usize) -> Result<IntervalModule> {
        if i < 1 || i > self.n {
            return Err(Error::IndexOutOfRange(format!("vertex {i} out of range 1..={}", self.n)));
        }
        Ok(match kind {
            ModuleKind::Projective => self.proj(i),
            ModuleKind::Injective => self.inj(i),
            ModuleKind::Simple => IntervalModule::new(i, i),
            ModuleKind::Quotient(t) => {
                if t == 0 || t > self.proj_len(i) {
                    return Err(Error::QuotientTooLong { i, t, max: self.proj_len(i) });
                }
                IntervalModule::new(i + 1 - t, i)
            }
        })
    }

    /// `(radical, socle, top)`; the radical is `None` for a simple module.
    pub fn module_parts(
        &self,
        m: Option<&IntervalModule>,
    ) -> Result<(Option<IntervalModule>, IntervalModule, IntervalModule)> {
        let m = m.ok_or(Error::ZeroModule)?;
        self.check(m)?;
        Ok((IntervalModule::try_new(m.lo, m.hi - 1), IntervalModule::new(m.lo, m.lo), IntervalModule::new(m.hi, m.hi)))
    }

    pub fn hom_dim(&self, m: Option<&IntervalModule>, n: Option<&IntervalModule>) -> Result<usize> {
        for x in [m, n].into_iter().flatten() {
            self.check(x)?;
        }
        Ok(hom_opt(m, n))
    }

    /// The opposite algebra, with vertices reflected `v -> n + 1 - v`.
    pub fn opposite(&self) -> AlgebraSpec {
        let rels: Vec<(usize, usize)> = self.relations.iter().map(|r| (self.n + 1 - r.hi, self.n + 1 - r.lo)).collect();
        AlgebraSpec::new(self.n, &rels).expect("reflection preserves admissibility")
    }

    pub fn reflect(&self, m: &IntervalModule) -> IntervalModule {
        IntervalModule::new(self.n + 1 - m.hi, self.n + 1 - m.lo)
    }

    /// Human name: `P<i>` for projectives, then `I<i>`, `S<i>`, preset names, else `[a,b]`.
    pub fn module_alias(&self, m: &IntervalModule) -> String {
        if self.is_projective(m) {
            format!("P{}", m.hi)
        } else if self.is_injective(m) {
            format!("I{}", m.lo)
        } else if m.is_simple() {
            format!("S{}", m.lo)
        } else if let Some((name, _)) = self.named.iter().find(|(_, x)| x == m) {
            name.clone()
        } else {
            m.to_string()
        }
    }
}

/// A scalar multiple of the canonical basis map between two interval modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalMap {
    pub src: IntervalModule,
    pub dst: IntervalModule,
    pub scalar: Q,
}

impl CanonicalMap {
    pub fn new(src: IntervalModule, dst: IntervalModule, scalar: Q) -> Result<Self> {
        use num_traits::Zero;
        if !scalar.is_zero() && hom_interval(&src, &dst) == 0 {
            return Err(Error::HomViolation(format!("no nonzero map {src} -> {dst}")));
        }
        Ok(CanonicalMap { src, dst, scalar })
    }

    pub fn identity(m: IntervalModule) -> Self {
        use num_traits::One;
        CanonicalMap { src: m, dst: m, scalar: Q::one() }
    }
}

/// `g o f` for `f: X -> Y`, `g: Y -> Z`; the structure constant is `dim Hom(X, Z)`.
pub fn compose_scalar(f: &CanonicalMap, g: &CanonicalMap) -> Result<CanonicalMap> {
    use num_traits::Zero;
    if f.dst != g.src {
        return Err(Error::NonComposable(format!("{} -> {} then {} -> {}", f.src, f.dst, g.src, g.dst)));
    }
    let eps = hom_interval(&f.src, &g.dst);
    let scalar = if eps == 1 { &f.scalar * &g.scalar } else { Q::zero() };
    Ok(CanonicalMap { src: f.src, dst: g.dst, scalar })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn iv(a: usize, b: usize) -> IntervalModule {
        IntervalModule::new(a, b)
    }

    #[test]
    fn a4gamma_kupisch_data() {
        let a = AlgebraSpec::a4gamma();
        assert_eq!(a.proj_lens(), &[1, 2, 3, 3]);
        assert_eq!(a.inj_lens(), &[3, 3, 2, 1]);
        assert_eq!(a.proj(1), iv(1, 1));
        assert_eq!(a.proj(3), a.inj(1));
        assert_eq!(a.proj(4), a.inj(2));
        assert_eq!(a.inj(4), iv(4, 4));
        assert_eq!(a.indecomposables().len(), 9);
    }

    #[test]
    fn hereditary_is_full() {
        let a = AlgebraSpec::hereditary(4).unwrap();
        assert_eq!(a.proj_lens(), &[1, 2, 3, 4]);
        assert_eq!(a.inj_lens(), &[4, 3, 2, 1]);
    }

    #[test]
    fn relation_errors() {
        assert!(matches!(AlgebraSpec::new(4, &[(1, 2)]), Err(Error::RelationTooShort { .. })));
        assert!(matches!(AlgebraSpec::new(4, &[(2, 5)]), Err(Error::RelationOutOfRange { .. })));
        assert!(matches!(AlgebraSpec::new(5, &[(1, 4), (2, 4)]), Err(Error::RedundantRelation { .. })));
        assert!(matches!(AlgebraSpec::new(5, &[(1, 3), (1, 3)]), Err(Error::RedundantRelation { .. })));
    }

    #[test]
    fn interval_module_examples() {
        let a = AlgebraSpec::a4gamma();
        assert_eq!(a.interval_module(ModuleKind::Projective, 3).unwrap(), iv(1, 3));
        assert_eq!(a.interval_module(ModuleKind::Injective, 1).unwrap(), iv(1, 3));
        assert_eq!(a.interval_module(ModuleKind::Injective, 4).unwrap(), iv(4, 4));
        assert_eq!(a.interval_module(ModuleKind::Quotient(2), 3).unwrap(), iv(2, 3));
        assert!(matches!(a.interval_module(ModuleKind::Quotient(4), 3), Err(Error::QuotientTooLong { .. })));
        assert!(matches!(a.interval_module(ModuleKind::Simple, 5), Err(Error::IndexOutOfRange(_))));
    }

    #[test]
    fn hom_examples() {
        let a = AlgebraSpec::a4gamma();
        assert_eq!(a.hom_dim(Some(&iv(1, 2)), Some(&iv(2, 3))).unwrap(), 1);
        assert_eq!(a.hom_dim(Some(&iv(1, 2)), Some(&iv(4, 4))).unwrap(), 0);
        assert_eq!(a.hom_dim(Some(&iv(2, 3)), Some(&iv(2, 3))).unwrap(), 1);
        assert_eq!(a.hom_dim(Some(&iv(2, 3)), None).unwrap(), 0);
        assert!(matches!(a.hom_dim(Some(&iv(1, 4)), None), Err(Error::InvalidModule(_))));
    }

    #[test]
    fn composition_examples() {
        let a = AlgebraSpec::a4gamma();
        let f = CanonicalMap::new(iv(1, 2), iv(2, 3), q(1)).unwrap();
        let g = CanonicalMap::new(iv(2, 3), iv(3, 4), q(1)).unwrap();
        assert_eq!(compose_scalar(&f, &g).unwrap().scalar, q(0));
        assert_eq!(compose_scalar(&f, &CanonicalMap::identity(f.dst)).unwrap(), f);
        let d12 = CanonicalMap::new(a.inj(1), a.inj(2), q(1)).unwrap();
        let d23 = CanonicalMap::new(a.inj(2), a.inj(3), q(1)).unwrap();
        let d13 = compose_scalar(&d12, &d23).unwrap();
        assert_eq!((d13.src, d13.dst, d13.scalar), (a.inj(1), a.inj(3), q(1)));
        assert!(matches!(compose_scalar(&g, &f), Err(Error::NonComposable(_))));
    }

    #[test]
    fn module_parts_examples() {
        let a = AlgebraSpec::a4gamma();
        assert_eq!(a.module_parts(Some(&iv(2, 4))).unwrap().0, Some(iv(2, 3)));
        assert_eq!(a.module_parts(Some(&iv(1, 3))).unwrap().1, iv(1, 1));
        assert_eq!(a.module_parts(Some(&iv(2, 3))).unwrap().2, iv(3, 3));
        assert!(matches!(a.module_parts(None), Err(Error::ZeroModule)));
    }

    #[test]
    fn file_format() {
        let a = AlgebraSpec::from_json(r#"{ "n": 4, "relations": [[1, 4]] }"#).unwrap();
        assert_eq!(a.proj_lens(), &[1, 2, 3, 3]);
        assert!(matches!(AlgebraSpec::from_json(r#"{ "n": 4, "relations": [], "x": 1 }"#), Err(Error::Parse(_))));
        assert_eq!(AlgebraSpec::from_json(&a.to_json()).unwrap(), AlgebraSpec::new(4, &[(1, 4)]).unwrap());
    }

    #[test]
    fn aliases() {
        let a = AlgebraSpec::a4gamma();
        let names: Vec<String> = a.indecomposables().iter().map(|m| a.module_alias(m)).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(sorted, vec!["I3", "I4", "M", "P1", "P2", "P3", "P4", "S2", "S3"]);
    }
}
