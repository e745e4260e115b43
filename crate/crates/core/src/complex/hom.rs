//! Graded hom spaces, chain maps, null-homotopic maps and homotopy classes.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{ChainMap, Complex};
use crate::algebra::hom_interval;
use crate::linalg::{extend_basis, independent_columns, Mat, Q};

/// Coordinates of the graded maps `X^k -> Y^{k+p}` supported on nonzero homs.
#[derive(Clone, Debug)]
pub struct Graded {
    pub p: i32,
    coords: Vec<(i32, usize, usize)>,
    index: HashMap<(i32, usize, usize), usize>,
}

impl Graded {
    pub fn new(x: &Complex, y: &Complex, p: i32) -> Self {
        let mut coords = Vec::new();
        for k in x.degrees() {
            let (src, dst) = (x.term(k), y.term(k + p));
            for (r, t) in dst.iter().enumerate() {
                for (c, s) in src.iter().enumerate() {
                    if hom_interval(s, t) == 1 {
                        coords.push((k, r, c));
                    }
                }
            }
        }
        let index = coords.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        Graded { p, coords, index }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn to_maps(&self, x: &Complex, y: &Complex, v: &[Q]) -> BTreeMap<i32, Mat> {
        let mut out: BTreeMap<i32, Mat> = BTreeMap::new();
        for (i, &(k, r, c)) in self.coords.iter().enumerate() {
            if v[i].is_zero() {
                continue;
            }
            out.entry(k)
                .or_insert_with(|| Mat::zeros(y.term(k + self.p).len(), x.term(k).len()))
                .set(r, c, v[i].clone());
        }
        out
    }

    pub fn from_maps(&self, maps: &BTreeMap<i32, Mat>) -> Vec<Q> {
        self.coords
            .iter()
            .map(|(k, r, c)| maps.get(k).map_or_else(Q::zero, |m| m.get(*r, *c).clone()))
            .collect()
    }

    /// Matrix of `f -> d_Y f - (-1)^p f d_X`, from degree-`p` coordinates to degree-`p+1`.
    pub fn differential(&self, x: &Complex, y: &Complex, target: &Graded) -> Mat {
        assert_eq!(target.p, self.p + 1);
        let p = self.p;
        let sign = if p.rem_euclid(2) == 0 { Q::from_integer((-1).into()) } else { Q::from_integer(1.into()) };
        let mut m = Mat::zeros(target.len(), self.len());
        let dx: BTreeMap<i32, Mat> = x.degrees().map(|k| (k, x.diff(k))).collect();
        for (col, &(k, r, c)) in self.coords.iter().enumerate() {
            // d_Y^{k+p} f^k
            let dy = y.diff(k + p);
            for r2 in 0..dy.rows() {
                let v = dy.get(r2, r);
                if v.is_zero() {
                    continue;
                }
                if let Some(&row) = target.index.get(&(k, r2, c)) {
                    *m.entry_mut(row, col) += v;
                }
            }
            // -(-1)^p f^k d_X^{k-1}
            if let Some(d) = dx.get(&(k - 1)) {
                for c2 in 0..d.cols() {
                    let v = d.get(c, c2);
                    if v.is_zero() {
                        continue;
                    }
                    if let Some(&row) = target.index.get(&(k - 1, r, c2)) {
                        *m.entry_mut(row, col) += &sign * v;
                    }
                }
            }
        }
        m
    }
}

/// `Hom` between two complexes: chain maps, null-homotopic maps and a basis of classes.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub src: Arc<Complex>,
    pub dst: Arc<Complex>,
    coords: Graded,
    pub cycles: Vec<Vec<Q>>,
    pub boundaries: Vec<Vec<Q>>,
    pub classes: Vec<Vec<Q>>,
    reducer: Mat,
}

impl HomSpace {
    pub fn new(src: Arc<Complex>, dst: Arc<Complex>) -> Self {
        let (x, y) = (&*src, &*dst);
        let g0 = Graded::new(x, y, 0);
        let g1 = Graded::new(x, y, 1);
        let gm = Graded::new(x, y, -1);
        let n = g0.len();
        let cycles = if g1.is_empty() { identity_basis(n) } else { g0.differential(x, y, &g1).kernel() };
        let boundaries = if gm.is_empty() {
            Vec::new()
        } else {
            let dm = gm.differential(x, y, &g0);
            independent_columns(&dm).into_iter().map(|c| dm.column(c)).collect()
        };
        let bmat = Mat::from_columns(n, &boundaries);
        let zmat = Mat::from_columns(n, &cycles);
        let classes: Vec<Vec<Q>> = extend_basis(&bmat, &zmat).into_iter().map(|c| cycles[c].clone()).collect();
        let reducer = if classes.is_empty() {
            Mat::zeros(0, n)
        } else {
            let all: Vec<Vec<Q>> = boundaries.iter().chain(&classes).cloned().collect();
            let left = Mat::from_columns(n, &all).left_inverse().expect("independent basis");
            let rows: Vec<usize> = (boundaries.len()..all.len()).collect();
            left.select(&rows, &(0..n).collect::<Vec<_>>())
        };
        HomSpace { src, dst, coords: g0, cycles, boundaries, classes, reducer }
    }

    /// Dimension of the space of homotopy classes.
    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    pub fn coords_of(&self, f: &ChainMap) -> Vec<Q> {
        self.coords.from_maps(f.comps())
    }

    pub fn map_of(&self, v: &[Q]) -> ChainMap {
        ChainMap::new(self.src.clone(), self.dst.clone(), self.coords.to_maps(&self.src, &self.dst, v))
    }

    pub fn class_map(&self, i: usize) -> ChainMap {
        self.map_of(&self.classes[i])
    }

    /// Combination `sum x_i class_i`.
    pub fn combine(&self, x: &[Q]) -> ChainMap {
        let n = self.coords.len();
        let mut v = vec![Q::zero(); n];
        for (xi, b) in x.iter().zip(&self.classes) {
            if xi.is_zero() {
                continue;
            }
            for (vj, bj) in v.iter_mut().zip(b) {
                *vj += xi * bj;
            }
        }
        self.map_of(&v)
    }

    pub fn cycle_combine(&self, x: &[Q]) -> ChainMap {
        let n = self.coords.len();
        let mut v = vec![Q::zero(); n];
        for (xi, b) in x.iter().zip(&self.cycles) {
            if xi.is_zero() {
                continue;
            }
            for (vj, bj) in v.iter_mut().zip(b) {
                *vj += xi * bj;
            }
        }
        self.map_of(&v)
    }

    /// Coordinates of the class of a chain map in the class basis.
    pub fn class_of(&self, f: &ChainMap) -> Vec<Q> {
        self.reducer.mul_vec(&self.coords_of(f))
    }

    pub fn is_null_homotopic(&self, f: &ChainMap) -> bool {
        self.class_of(f).iter().all(Zero::is_zero)
    }
}

fn identity_basis(n: usize) -> Vec<Vec<Q>> {
    (0..n)
        .map(|i| {
            let mut v = vec![Q::zero(); n];
            v[i] = Q::one();
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;
    use crate::complex::Kind;

    #[test]
    fn stalk_homs() {
        let a = AlgebraSpec::a4gamma();
        let p1 = Arc::new(Complex::stalk(Kind::Projective, 0, vec![a.proj(1)]));
        let p3 = Arc::new(Complex::stalk(Kind::Projective, 0, vec![a.proj(3)]));
        let h = HomSpace::new(p1.clone(), p3.clone());
        assert_eq!(h.dim(), 1);
        assert!(h.class_map(0).is_chain_map());
        assert_eq!(HomSpace::new(p3.clone(), p1.clone()).dim(), 0);
        assert_eq!(HomSpace::new(p1.clone(), Arc::new(p3.shift(1))).dim(), 0);
    }

    #[test]
    fn contractible_has_no_classes() {
        let a = AlgebraSpec::a4gamma();
        let p3 = Arc::new(Complex::stalk(Kind::Projective, 0, vec![a.proj(3)]));
        let c = Arc::new(crate::complex::cone(&ChainMap::identity(p3)).unwrap());
        let h = HomSpace::new(c.clone(), c.clone());
        assert_eq!(h.dim(), 0);
        assert_eq!(h.cycles.len(), h.boundaries.len());
        let id = ChainMap::identity(c);
        assert!(h.is_null_homotopic(&id));
    }
}
