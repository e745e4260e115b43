//! Brute-force linear representations of the linear quiver, used as an oracle.
//!
//! Arrows run from vertex `v + 1` to vertex `v`, so an interval `[a, b]` has its top at `b`
//! and its socle at `a`. `maps[v - 1]` is the matrix of `V_{v+1} -> V_v`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{AlgebraSpec, IntervalModule};
use crate::error::{Error, Result};
use crate::linalg::{Mat, Q};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearRepresentation {
    pub dims: Vec<usize>,
    pub maps: Vec<Mat>,
}

impl LinearRepresentation {
    pub fn zero(n: usize) -> Self {
        LinearRepresentation { dims: vec![0; n], maps: (1..n).map(|_| Mat::zeros(0, 0)).collect() }
    }

    pub fn n(&self) -> usize {
        self.dims.len()
    }

    pub fn new(dims: Vec<usize>, maps: Vec<Mat>) -> Result<Self> {
        let rep = LinearRepresentation { dims, maps };
        rep.check()?;
        Ok(rep)
    }

    fn check(&self) -> Result<()> {
        if self.maps.len() + 1 != self.dims.len().max(1) {
            return Err(Error::InconsistentRep(format!(
                "{} vertices need {} arrow maps, got {}",
                self.dims.len(),
                self.dims.len().saturating_sub(1),
                self.maps.len()
            )));
        }
        for (i, m) in self.maps.iter().enumerate() {
            if m.rows() != self.dims[i] || m.cols() != self.dims[i + 1] {
                return Err(Error::InconsistentRep(format!(
                    "arrow {} -> {} has shape {}x{}, expected {}x{}",
                    i + 2,
                    i + 1,
                    m.rows(),
                    m.cols(),
                    self.dims[i],
                    self.dims[i + 1]
                )));
            }
        }
        Ok(())
    }

    /// Composite `V_b -> V_a` for `a <= b`.
    pub fn path_map(&self, a: usize, b: usize) -> Mat {
        let mut m = Mat::identity(self.dims[b - 1]);
        for v in (a..b).rev() {
            m = self.maps[v - 1].mul(&m);
        }
        m
    }

    /// `r(a, b)`: rank of the path map from `b` down to `a`, zero outside `1..=n`.
    pub fn path_rank(&self, a: usize, b: usize) -> usize {
        if a == 0 || b > self.n() || a > b {
            return 0;
        }
        self.path_map(a, b).rank()
    }

    /// Whether every zero relation acts as zero.
    pub fn satisfies(&self, alg: &AlgebraSpec) -> bool {
        alg.relations().iter().all(|r| self.path_map(r.lo, r.hi).is_zero())
    }

    pub fn direct_sum(&self, other: &LinearRepresentation) -> LinearRepresentation {
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self.maps.iter().zip(&other.maps).map(|(a, b)| block_diag(a, b)).collect();
        LinearRepresentation { dims, maps }
    }
}

pub(crate) fn block_diag(a: &Mat, b: &Mat) -> Mat {
    let mut m = Mat::zeros(a.rows() + b.rows(), a.cols() + b.cols());
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            m.set(r, c, a.get(r, c).clone());
        }
    }
    for r in 0..b.rows() {
        for c in 0..b.cols() {
            m.set(a.rows() + r, a.cols() + c, b.get(r, c).clone());
        }
    }
    m
}

/// The interval representation of `m`, or the zero representation.
pub fn rep_oracle(alg: &AlgebraSpec, m: Option<&IntervalModule>) -> LinearRepresentation {
    rep_of_sum(alg.n(), m.into_iter().copied())
}

/// Representation of a direct sum of intervals, summands in the given order.
pub fn rep_of_sum(n: usize, summands: impl IntoIterator<Item = IntervalModule>) -> LinearRepresentation {
    let summands: Vec<IntervalModule> = summands.into_iter().collect();
    let idx = |v: usize| -> Vec<usize> { (0..summands.len()).filter(|&s| summands[s].contains(v)).collect() };
    let dims = (1..=n).map(|v| idx(v).len()).collect();
    let maps = (1..n)
        .map(|v| {
            let (lower, upper) = (idx(v), idx(v + 1));
            let mut m = Mat::zeros(lower.len(), upper.len());
            for (c, s) in upper.iter().enumerate() {
                if let Some(r) = lower.iter().position(|x| x == s) {
                    m.set(r, c, Q::from_integer(1.into()));
                }
            }
            m
        })
        .collect();
    LinearRepresentation { dims, maps }
}

/// Interval multiplicities by rank counting.
pub fn decompose_rep(rep: &LinearRepresentation) -> Result<Vec<IntervalModule>> {
    rep.check()?;
    let n = rep.n();
    let mut ranks = BTreeMap::new();
    let mut r = |a: usize, b: usize| -> usize {
        if a == 0 || b > n || a > b {
            return 0;
        }
        *ranks.entry((a, b)).or_insert_with(|| rep.path_rank(a, b))
    };
    let mut out = Vec::new();
    for a in 1..=n {
        for b in a..=n {
            let m = r(a, b) as i64 - r(a - 1, b) as i64 - r(a, b + 1) as i64 + r(a - 1, b + 1) as i64;
            if m < 0 {
                return Err(Error::InconsistentRep(format!("negative multiplicity for [{a},{b}]")));
            }
            out.extend(std::iter::repeat_n(IntervalModule::new(a, b), m as usize));
        }
    }
    Ok(out)
}

/// Dimension of the space of representation morphisms `M -> N`, by solving the commuting
/// squares directly.
pub fn rep_hom_dim(m: &LinearRepresentation, n: &LinearRepresentation) -> usize {
    // unknowns: phi_v, a dims_n[v] x dims_m[v] block per vertex, row-major
    let mut offsets = Vec::with_capacity(m.n() + 1);
    let mut total = 0;
    for v in 0..m.n() {
        offsets.push(total);
        total += n.dims[v] * m.dims[v];
    }
    if total == 0 {
        return 0;
    }
    let var = |v: usize, r: usize, c: usize| offsets[v] + r * m.dims[v] + c;
    let mut eqs: Vec<Vec<Q>> = Vec::new();
    // phi_v * mA_v = nA_v * phi_{v+1}, as maps M_{v+1} -> N_v
    for v in 0..m.n().saturating_sub(1) {
        let (ma, na) = (&m.maps[v], &n.maps[v]);
        for r in 0..n.dims[v] {
            for c in 0..m.dims[v + 1] {
                let mut row = vec![Q::zero(); total];
                for j in 0..m.dims[v] {
                    row[var(v, r, j)] += ma.get(j, c);
                }
                for j in 0..n.dims[v + 1] {
                    row[var(v + 1, j, c)] -= na.get(r, j);
                }
                eqs.push(row);
            }
        }
    }
    if eqs.is_empty() {
        return total;
    }
    total - Mat::from_rows(eqs).rank()
}

/// A bounded complex of representations: `terms[j]` sits in degree `start + j` and
/// `diffs[j][v - 1]` is the differential at vertex `v` from term `j` to term `j + 1`.
#[derive(Clone, Debug)]
pub struct ComplexRep {
    pub start: i32,
    pub terms: Vec<LinearRepresentation>,
    pub diffs: Vec<Vec<Mat>>,
}

impl ComplexRep {
    /// Homology per degree, as interval multisets; degrees with zero homology are omitted.
    pub fn homology(&self) -> BTreeMap<i32, Vec<IntervalModule>> {
        let mut out = BTreeMap::new();
        for (j, term) in self.terms.iter().enumerate() {
            let n = term.n();
            let kernels: Vec<Mat> = (1..=n)
                .map(|v| {
                    let d = self.diffs.get(j).map(|d| d[v - 1].clone());
                    match d {
                        Some(d) => Mat::from_columns(term.dims[v - 1], &d.kernel()),
                        None => Mat::identity(term.dims[v - 1]),
                    }
                })
                .collect();
            let images: Vec<Mat> = (1..=n)
                .map(|v| match j.checked_sub(1) {
                    Some(p) => self.diffs[p][v - 1].clone(),
                    None => Mat::zeros(term.dims[v - 1], 0),
                })
                .collect();
            let img_rank: Vec<usize> = images.iter().map(Mat::rank).collect();
            let r = |a: usize, b: usize| -> usize {
                if a == 0 || b > n || a > b {
                    return 0;
                }
                let pushed = term.path_map(a, b).mul(&kernels[b - 1]);
                Mat::hstack(&[&pushed, &images[a - 1]]).rank() - img_rank[a - 1]
            };
            let mut hs = Vec::new();
            for a in 1..=n {
                for b in a..=n {
                    let m = r(a, b) as i64 - r(a - 1, b) as i64 - r(a, b + 1) as i64 + r(a - 1, b + 1) as i64;
                    debug_assert!(m >= 0);
                    hs.extend(std::iter::repeat_n(IntervalModule::new(a, b), m.max(0) as usize));
                }
            }
            if !hs.is_empty() {
                out.insert(self.start + j as i32, hs);
            }
        }
        out
    }

    /// Alternating sum of dimensions per vertex.
    pub fn euler(&self, n: usize) -> Vec<i64> {
        let mut chi = vec![0i64; n];
        for (j, t) in self.terms.iter().enumerate() {
            let sign = if (self.start + j as i32).rem_euclid(2) == 0 { 1 } else { -1 };
            for v in 0..n {
                chi[v] += sign * t.dims[v] as i64;
            }
        }
        chi
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::hom_interval;
    use crate::linalg::q;

    fn iv(a: usize, b: usize) -> IntervalModule {
        IntervalModule::new(a, b)
    }

    #[test]
    fn interval_reps() {
        let a = AlgebraSpec::a4gamma();
        let r = rep_oracle(&a, Some(&iv(1, 3)));
        assert_eq!(r.dims, vec![1, 1, 1, 0]);
        assert_eq!(r.maps[0], Mat::identity(1));
        assert_eq!(r.maps[1], Mat::identity(1));
        assert_eq!(rep_oracle(&a, None).dims, vec![0; 4]);
        assert_eq!(rep_oracle(&a, Some(&iv(2, 4))).dims, vec![0, 1, 1, 1]);
        assert!(r.satisfies(&a));
    }

    #[test]
    fn decompose_examples() {
        let a = AlgebraSpec::a4gamma();
        assert_eq!(decompose_rep(&rep_oracle(&a, Some(&iv(1, 3)))).unwrap(), vec![iv(1, 3)]);
        let rep = LinearRepresentation::new(
            vec![1, 2, 0, 0],
            vec![Mat::from_rows(vec![vec![q(1), q(0)]]), Mat::zeros(2, 0), Mat::zeros(0, 0)],
        )
        .unwrap();
        assert_eq!(decompose_rep(&rep).unwrap(), vec![iv(1, 2), iv(2, 2)]);
        let rep = LinearRepresentation::new(
            vec![0, 1, 1, 0],
            vec![Mat::zeros(0, 1), Mat::identity(1), Mat::zeros(1, 0)],
        )
        .unwrap();
        assert_eq!(decompose_rep(&rep).unwrap(), vec![iv(2, 3)]);
        assert!(LinearRepresentation::new(vec![1, 1], vec![Mat::zeros(2, 2)]).is_err());
    }

    #[test]
    fn hom_oracle_matches_formula_a4gamma() {
        let a = AlgebraSpec::a4gamma();
        let mods = a.indecomposables();
        for m in &mods {
            for n in &mods {
                let d = rep_hom_dim(&rep_oracle(&a, Some(m)), &rep_oracle(&a, Some(n)));
                assert_eq!(d, hom_interval(m, n), "{m} -> {n}");
            }
        }
    }
}
