//! Bounded complexes whose terms are finite sums of interval modules.
//!
//! Each differential `d^k` is a rational matrix whose `(r, c)` entry scales the canonical
//! map from summand `c` of degree `k` to summand `r` of degree `k + 1`. Products of such
//! matrices are always *masked*: a composite of canonical maps is the canonical map when
//! the outer pair still has a nonzero hom, and zero otherwise.

pub mod descriptor;
pub mod endo;
pub mod hom;
pub mod homology;
pub mod iso;
pub mod minimize;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::{hom_interval, AlgebraSpec, IntervalModule};
use crate::error::{Error, Result};
use crate::linalg::{Mat, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Projective,
    Injective,
    /// Arbitrary interval modules, e.g. the stalk complex of a module.
    Module,
}

impl Kind {
    pub fn letter(self) -> &'static str {
        match self {
            Kind::Projective => "P",
            Kind::Injective => "I",
            Kind::Module => "",
        }
    }

    pub fn dual(self) -> Kind {
        match self {
            Kind::Projective => Kind::Injective,
            Kind::Injective => Kind::Projective,
            Kind::Module => Kind::Module,
        }
    }
}

/// Vertex index naming a summand: `P_i` is labelled by its top, `I_i` by its socle.
pub fn label(kind: Kind, m: &IntervalModule) -> usize {
    match kind {
        Kind::Injective => m.lo,
        _ => m.hi,
    }
}

/// `b o a` for `a: src -> mid`, `b: mid -> dst`, with the hom mask applied.
pub fn mcompose(a: &Mat, b: &Mat, src: &[IntervalModule], dst: &[IntervalModule]) -> Mat {
    let mut m = b.mul(a);
    mask(&mut m, src, dst);
    m
}

/// Zeroes every entry outside the hom support.
pub fn mask(m: &mut Mat, src: &[IntervalModule], dst: &[IntervalModule]) {
    for (r, d) in dst.iter().enumerate() {
        for (c, s) in src.iter().enumerate() {
            if hom_interval(s, d) == 0 && !m.get(r, c).is_zero() {
                m.set(r, c, Q::zero());
            }
        }
    }
}

pub fn respects_mask(m: &Mat, src: &[IntervalModule], dst: &[IntervalModule]) -> bool {
    dst.iter()
        .enumerate()
        .all(|(r, d)| src.iter().enumerate().all(|(c, s)| hom_interval(s, d) == 1 || m.get(r, c).is_zero()))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Complex {
    kind: Kind,
    start: i32,
    terms: Vec<Vec<IntervalModule>>,
    diffs: Vec<Mat>,
}

impl std::fmt::Debug for Complex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", descriptor::format(self))
    }
}

impl Complex {
    pub fn zero(kind: Kind) -> Self {
        Complex { kind, start: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    /// Assembles a complex without validation, trimming empty terms at both ends.
    pub(crate) fn raw(kind: Kind, start: i32, terms: Vec<Vec<IntervalModule>>, diffs: Vec<Mat>) -> Self {
        debug_assert_eq!(diffs.len() + 1, terms.len().max(1));
        let first = terms.iter().position(|t| !t.is_empty());
        let Some(first) = first else {
            return Complex::zero(kind);
        };
        let last = terms.iter().rposition(|t| !t.is_empty()).unwrap();
        let terms = terms[first..=last].to_vec();
        let diffs = diffs[first..last].to_vec();
        Complex { kind, start: start + first as i32, terms, diffs }
    }

    pub(crate) fn from_maps(
        kind: Kind,
        degrees: &BTreeMap<i32, Vec<IntervalModule>>,
        diffs: &BTreeMap<i32, Mat>,
    ) -> Self {
        let (Some(&lo), Some(&hi)) = (degrees.keys().next(), degrees.keys().next_back()) else {
            return Complex::zero(kind);
        };
        let terms: Vec<Vec<IntervalModule>> = (lo..=hi).map(|k| degrees.get(&k).cloned().unwrap_or_default()).collect();
        let ds = (lo..hi)
            .map(|k| {
                let (s, t) = (terms[(k - lo) as usize].len(), terms[(k + 1 - lo) as usize].len());
                match diffs.get(&k) {
                    Some(m) if m.rows() == t && m.cols() == s => m.clone(),
                    _ => Mat::zeros(t, s),
                }
            })
            .collect();
        Complex::raw(kind, lo, terms, ds)
    }

    /// A single term placed in degree `deg`.
    pub fn stalk(kind: Kind, deg: i32, summands: Vec<IntervalModule>) -> Self {
        Complex::raw(kind, deg, vec![summands], Vec::new())
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub(crate) fn with_kind(mut self, kind: Kind) -> Self {
        self.kind = kind;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest and highest nonzero degree.
    pub fn range(&self) -> Option<(i32, i32)> {
        (!self.is_zero()).then(|| (self.start, self.start + self.terms.len() as i32 - 1))
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.range().into_iter().flat_map(|(a, b)| a..=b)
    }

    pub fn term(&self, k: i32) -> &[IntervalModule] {
        let j = k - self.start;
        if j < 0 {
            return &[];
        }
        self.terms.get(j as usize).map_or(&[], Vec::as_slice)
    }

    /// `d^k`, of shape `|X^{k+1}| x |X^k|`.
    pub fn diff(&self, k: i32) -> Mat {
        let j = k - self.start;
        if j >= 0 {
            if let Some(d) = self.diffs.get(j as usize) {
                return d.clone();
            }
        }
        Mat::zeros(self.term(k + 1).len(), self.term(k).len())
    }

    pub fn diff_ref(&self, k: i32) -> Option<&Mat> {
        let j = k - self.start;
        (j >= 0).then(|| self.diffs.get(j as usize)).flatten()
    }

    pub fn summand_count(&self) -> usize {
        self.terms.iter().map(Vec::len).sum()
    }

    /// Terms keyed by degree, empty degrees omitted.
    pub fn term_map(&self) -> BTreeMap<i32, Vec<IntervalModule>> {
        self.degrees().filter(|&k| !self.term(k).is_empty()).map(|k| (k, self.term(k).to_vec())).collect()
    }

    /// Multiset of `(degree, summand)`, sorted.
    pub fn summand_multiset(&self) -> Vec<(i32, IntervalModule)> {
        let mut v: Vec<(i32, IntervalModule)> =
            self.degrees().flat_map(|k| self.term(k).iter().map(move |m| (k, *m))).collect();
        v.sort();
        v
    }

    /// Every differential entry is radical: no nonzero scalar between equal summands.
    pub fn is_minimal(&self) -> bool {
        self.degrees().all(|k| {
            let d = self.diff(k);
            let (src, dst) = (self.term(k), self.term(k + 1));
            dst.iter()
                .enumerate()
                .all(|(r, t)| src.iter().enumerate().all(|(c, s)| s != t || d.get(r, c).is_zero()))
        })
    }

    /// Checks hom support, summand validity and kind, and `d o d = 0`.
    pub fn validate(&self, alg: &AlgebraSpec) -> Result<()> {
        for k in self.degrees() {
            for m in self.term(k) {
                alg.check(m)?;
                let ok = match self.kind {
                    Kind::Projective => alg.is_projective(m),
                    Kind::Injective => alg.is_injective(m),
                    Kind::Module => true,
                };
                if !ok {
                    return Err(Error::WrongKind(format!("{m} in degree {k} is not {:?}", self.kind)));
                }
            }
            let d = self.diff(k);
            if !respects_mask(&d, self.term(k), self.term(k + 1)) {
                return Err(Error::HomViolation(format!("differential d{k}")));
            }
        }
        if let Some(k) = self.square_zero_failure() {
            return Err(Error::NotSquareZero(k));
        }
        Ok(())
    }

    fn square_zero_failure(&self) -> Option<i32> {
        self.degrees().find(|&k| {
            !mcompose(&self.diff(k), &self.diff(k + 1), self.term(k), self.term(k + 2)).is_zero()
        })
    }

    pub fn is_square_zero(&self) -> bool {
        self.square_zero_failure().is_none()
    }

    /// `X[s]` with `X[s]^k = X^{k+s}` and differential `(-1)^s d`.
    pub fn shift(&self, s: i32) -> Complex {
        let diffs = if s.rem_euclid(2) == 1 { self.diffs.iter().map(Mat::neg).collect() } else { self.diffs.clone() };
        Complex { kind: self.kind, start: self.start - s, terms: self.terms.clone(), diffs }
    }

    /// Brutal truncation keeping degrees `<= n`.
    pub fn truncate_le(&self, n: i32) -> Complex {
        self.restrict(i32::MIN, n)
    }

    /// Brutal truncation keeping degrees `>= n`.
    pub fn truncate_ge(&self, n: i32) -> Complex {
        self.restrict(n, i32::MAX)
    }

    fn restrict(&self, lo: i32, hi: i32) -> Complex {
        let degrees: BTreeMap<i32, Vec<IntervalModule>> =
            self.term_map().into_iter().filter(|(k, _)| *k >= lo && *k <= hi).collect();
        let diffs: BTreeMap<i32, Mat> = self.degrees().filter(|&k| k >= lo && k < hi).map(|k| (k, self.diff(k))).collect();
        Complex::from_maps(self.kind, &degrees, &diffs)
    }

    pub fn direct_sum(&self, other: &Complex) -> Result<Complex> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.kind != other.kind {
            return Err(Error::KindMismatch(format!("{:?} (+) {:?}", self.kind, other.kind)));
        }
        let (a0, a1) = self.range().unwrap();
        let (b0, b1) = other.range().unwrap();
        let (lo, hi) = (a0.min(b0), a1.max(b1));
        let terms: Vec<Vec<IntervalModule>> =
            (lo..=hi).map(|k| [self.term(k), other.term(k)].concat()).collect();
        let diffs = (lo..hi).map(|k| crate::rep::block_diag(&self.diff(k), &other.diff(k))).collect();
        Ok(Complex::raw(self.kind, lo, terms, diffs))
    }

    pub fn direct_sum_all<'a>(kind: Kind, parts: impl IntoIterator<Item = &'a Complex>) -> Result<Complex> {
        parts.into_iter().try_fold(Complex::zero(kind), |acc, x| acc.direct_sum(x))
    }

    /// Applies `f` to every summand, keeping the scalars.
    pub fn map_summands(&self, kind: Kind, f: impl Fn(&IntervalModule) -> IntervalModule) -> Complex {
        let terms = self.terms.iter().map(|t| t.iter().map(&f).collect()).collect();
        Complex { kind, start: self.start, terms, diffs: self.diffs.clone() }
    }

    /// Permutes and rescales summands: in degree `k`, new summand `i` is `scale * old[perm[i]]`.
    pub(crate) fn rebase(&self, perm: &BTreeMap<i32, Vec<usize>>, scales: &BTreeMap<i32, Vec<Q>>) -> Complex {
        let mut out = self.clone();
        for (j, k) in self.degrees().enumerate() {
            let p = &perm[&k];
            out.terms[j] = p.iter().map(|&i| self.terms[j][i]).collect();
        }
        for (j, k) in self.degrees().enumerate().take(self.diffs.len()) {
            let (ps, pt) = (&perm[&k], &perm[&(k + 1)]);
            let (ss, st) = (&scales[&k], &scales[&(k + 1)]);
            let d = &self.diffs[j];
            let mut nd = Mat::zeros(pt.len(), ps.len());
            for (r, &or) in pt.iter().enumerate() {
                for (c, &oc) in ps.iter().enumerate() {
                    let v = d.get(or, oc);
                    if !v.is_zero() {
                        nd.set(r, c, v * &ss[c] / &st[r]);
                    }
                }
            }
            out.diffs[j] = nd;
        }
        out
    }
}

/// A degree-preserving map of complexes with per-degree masked matrices.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub src: Arc<Complex>,
    pub dst: Arc<Complex>,
    comps: BTreeMap<i32, Mat>,
}

impl ChainMap {
    /// Components outside the common support are ignored.
    pub fn new(src: Arc<Complex>, dst: Arc<Complex>, comps: BTreeMap<i32, Mat>) -> Self {
        let comps = comps
            .into_iter()
            .filter(|(k, m)| {
                !src.term(*k).is_empty() && !dst.term(*k).is_empty() && {
                    debug_assert_eq!((m.rows(), m.cols()), (dst.term(*k).len(), src.term(*k).len()));
                    true
                }
            })
            .collect();
        ChainMap { src, dst, comps }
    }

    pub fn zero(src: Arc<Complex>, dst: Arc<Complex>) -> Self {
        ChainMap { src, dst, comps: BTreeMap::new() }
    }

    pub fn identity(x: Arc<Complex>) -> Self {
        let comps = x.degrees().map(|k| (k, Mat::identity(x.term(k).len()))).collect();
        ChainMap::new(x.clone(), x, comps)
    }

    pub fn comp(&self, k: i32) -> Mat {
        self.comps.get(&k).cloned().unwrap_or_else(|| Mat::zeros(self.dst.term(k).len(), self.src.term(k).len()))
    }

    pub fn comps(&self) -> &BTreeMap<i32, Mat> {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(Mat::is_zero)
    }

    /// `g o self`.
    pub fn then(&self, g: &ChainMap) -> ChainMap {
        let comps = self
            .src
            .degrees()
            .map(|k| (k, mcompose(&self.comp(k), &g.comp(k), self.src.term(k), g.dst.term(k))))
            .collect();
        ChainMap::new(self.src.clone(), g.dst.clone(), comps)
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        let comps = self.src.degrees().map(|k| (k, self.comp(k).add(&other.comp(k)))).collect();
        ChainMap::new(self.src.clone(), self.dst.clone(), comps)
    }

    pub fn scale(&self, s: &Q) -> ChainMap {
        let comps = self.comps.iter().map(|(k, m)| (*k, m.scale(s))).collect();
        ChainMap::new(self.src.clone(), self.dst.clone(), comps)
    }

    pub fn sub(&self, other: &ChainMap) -> ChainMap {
        self.add(&other.scale(&-Q::one()))
    }

    /// `d f - f d == 0` in every degree.
    pub fn is_chain_map(&self) -> bool {
        let (x, y) = (&self.src, &self.dst);
        let lo = x.range().map_or(0, |r| r.0).min(y.range().map_or(0, |r| r.0)) - 1;
        let hi = x.range().map_or(0, |r| r.1).max(y.range().map_or(0, |r| r.1)) + 1;
        (lo..=hi).all(|k| {
            let df = mcompose(&self.comp(k), &y.diff(k), x.term(k), y.term(k + 1));
            let fd = mcompose(&x.diff(k), &self.comp(k + 1), x.term(k), y.term(k + 1));
            df == fd
        })
    }

    /// The same map viewed between `X[s]` and `Y[s]`.
    pub fn shift(&self, s: i32) -> ChainMap {
        let comps = self.comps.iter().map(|(k, m)| (k - s, m.clone())).collect();
        ChainMap::new(Arc::new(self.src.shift(s)), Arc::new(self.dst.shift(s)), comps)
    }
}

/// `cone(f)^k = X^{k+1} (+) Y^k` with differential `[[-d_X, 0], [f, d_Y]]`.
pub fn cone(f: &ChainMap) -> Result<Complex> {
    let (x, y) = (&*f.src, &*f.dst);
    if !x.is_zero() && !y.is_zero() && x.kind() != y.kind() {
        return Err(Error::KindMismatch(format!("cone of {:?} -> {:?}", x.kind(), y.kind())));
    }
    let kind = if x.is_zero() { y.kind() } else { x.kind() };
    let lo = x.range().map_or(i32::MAX, |r| r.0 - 1).min(y.range().map_or(i32::MAX, |r| r.0));
    let hi = x.range().map_or(i32::MIN, |r| r.1 - 1).max(y.range().map_or(i32::MIN, |r| r.1));
    if lo > hi {
        return Ok(Complex::zero(kind));
    }
    let terms: Vec<Vec<IntervalModule>> = (lo..=hi).map(|k| [x.term(k + 1), y.term(k)].concat()).collect();
    let diffs = (lo..hi)
        .map(|k| {
            let (xs, ys) = (x.term(k + 1).len(), y.term(k).len());
            let (xt, yt) = (x.term(k + 2).len(), y.term(k + 1).len());
            let mut m = Mat::zeros(xt + yt, xs + ys);
            let dx = x.diff(k + 1);
            let fk = f.comp(k + 1);
            let dy = y.diff(k);
            for r in 0..xt {
                for c in 0..xs {
                    m.set(r, c, -dx.get(r, c).clone());
                }
            }
            for r in 0..yt {
                for c in 0..xs {
                    m.set(xt + r, c, fk.get(r, c).clone());
                }
                for c in 0..ys {
                    m.set(xt + r, xs + c, dy.get(r, c).clone());
                }
            }
            m
        })
        .collect();
    Ok(Complex::raw(kind, lo, terms, diffs))
}

/// Validated constructor from a degree map and differentials.
pub fn build_complex(
    alg: &AlgebraSpec,
    kind: Kind,
    degrees: &BTreeMap<i32, Vec<IntervalModule>>,
    diffs: &BTreeMap<i32, Mat>,
) -> Result<Complex> {
    for (k, m) in diffs {
        let (s, t) = (degrees.get(k).map_or(0, Vec::len), degrees.get(&(k + 1)).map_or(0, Vec::len));
        if m.rows() != t || m.cols() != s {
            return Err(Error::Parse(format!("d{k} has shape {}x{}, expected {t}x{s}", m.rows(), m.cols())));
        }
    }
    let x = Complex::from_maps(kind, degrees, diffs);
    x.validate(alg)?;
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg() -> AlgebraSpec {
        AlgebraSpec::a4gamma()
    }

    fn pk(alg: &AlgebraSpec, terms: &[(i32, &[usize])], diffs: &[(i32, Mat)]) -> Result<Complex> {
        let degrees = terms.iter().map(|(k, v)| (*k, v.iter().map(|&i| alg.proj(i)).collect())).collect();
        let diffs = diffs.iter().cloned().collect();
        build_complex(alg, Kind::Projective, &degrees, &diffs)
    }

    #[test]
    fn build_examples() {
        let a = alg();
        let x = pk(&a, &[(0, &[1]), (1, &[3])], &[(0, Mat::from_i64(1, 1, &[1]))]).unwrap();
        assert!(x.is_minimal());
        let y = pk(&a, &[(-2, &[1]), (-1, &[2]), (0, &[4])], &[(-2, Mat::from_i64(1, 1, &[1])), (-1, Mat::from_i64(1, 1, &[1]))])
            .unwrap();
        assert_eq!(y.range(), Some((-2, 0)));
        let z = pk(&a, &[(0, &[3]), (1, &[3])], &[(0, Mat::from_i64(1, 1, &[1]))]).unwrap();
        assert!(!z.is_minimal());
        // P3 -> P1 has no canonical map
        let bad = pk(&a, &[(0, &[3]), (1, &[1])], &[(0, Mat::from_i64(1, 1, &[1]))]);
        assert!(matches!(bad, Err(Error::HomViolation(_))));
        // P1 -> P2 -> P3 composes to the nonzero P1 -> P3
        let bad = pk(&a, &[(0, &[1]), (1, &[2]), (2, &[3])], &[(0, Mat::from_i64(1, 1, &[1])), (1, Mat::from_i64(1, 1, &[1]))]);
        assert!(matches!(bad, Err(Error::NotSquareZero(0))));
    }

    #[test]
    fn elementary_ops() {
        let a = alg();
        let p1 = Complex::stalk(Kind::Projective, 0, vec![a.proj(1)]);
        assert_eq!(p1.shift(1).range(), Some((-1, -1)));
        let y = pk(&a, &[(-2, &[1]), (-1, &[2]), (0, &[4])], &[(-2, Mat::from_i64(1, 1, &[1])), (-1, Mat::from_i64(1, 1, &[1]))])
            .unwrap();
        let t = y.truncate_ge(-1);
        assert_eq!(t.range(), Some((-1, 0)));
        assert_eq!(t.term(-1), &[a.proj(2)]);
        assert_eq!(y.truncate_le(-2).summand_count(), 1);
        let s = p1.direct_sum(&p1).unwrap();
        assert_eq!(s.term(0), &[a.proj(1), a.proj(1)]);
        let i = Complex::stalk(Kind::Injective, 0, vec![a.inj(4)]);
        assert!(matches!(p1.direct_sum(&i), Err(Error::KindMismatch(_))));
        let sh = y.shift(1);
        assert_eq!(sh.diff(-3), Mat::from_i64(1, 1, &[-1]));
    }

    #[test]
    fn cone_blocks() {
        let a = alg();
        let x = Arc::new(Complex::stalk(Kind::Projective, 0, vec![a.proj(1)]));
        let y = Arc::new(Complex::stalk(Kind::Projective, 0, vec![a.proj(3)]));
        let f = ChainMap::new(x.clone(), y.clone(), [(0, Mat::from_i64(1, 1, &[1]))].into());
        assert!(f.is_chain_map());
        let c = cone(&f).unwrap();
        assert_eq!(c.range(), Some((-1, 0)));
        assert_eq!(c.diff(-1), Mat::from_i64(1, 1, &[1]));
        let z = cone(&ChainMap::zero(x.clone(), y.clone())).unwrap();
        assert_eq!(z, x.shift(1).direct_sum(&y).unwrap());
        let id = cone(&ChainMap::identity(y.clone())).unwrap();
        assert_eq!(id.diff(-1), Mat::identity(1));
        assert!(id.is_square_zero());
    }
}
