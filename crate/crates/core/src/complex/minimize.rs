//! Gaussian elimination of invertible differential entries.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{mcompose, ChainMap, Complex};
use crate::algebra::{hom_interval, IntervalModule};
use crate::linalg::{Mat, Q};

/// A contractible `M -> M` removed from degrees `degree`, `degree + 1`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Strip {
    pub degree: i32,
    pub summand: IntervalModule,
}

#[derive(Clone, Debug)]
pub struct Minimized {
    pub complex: Complex,
    pub stripped: Vec<Strip>,
    /// `X_min -> X`
    pub inclusion: Option<ChainMap>,
    /// `X -> X_min`
    pub projection: Option<ChainMap>,
}

struct Work {
    start: i32,
    terms: Vec<Vec<IntervalModule>>,
    diffs: Vec<Mat>,
}

impl Work {
    fn find_pivot(&self) -> Option<(usize, usize, usize)> {
        for (j, d) in self.diffs.iter().enumerate() {
            for (r, t) in self.terms[j + 1].iter().enumerate() {
                for (c, s) in self.terms[j].iter().enumerate() {
                    if s == t && !d.get(r, c).is_zero() {
                        return Some((j, r, c));
                    }
                }
            }
        }
        None
    }
}

pub fn minimize(x: &Complex) -> Minimized {
    run(x, false)
}

pub fn minimize_with_maps(x: &Complex) -> Minimized {
    run(x, true)
}

fn run(x: &Complex, track: bool) -> Minimized {
    let Some((lo, _)) = x.range() else {
        return Minimized {
            complex: x.clone(),
            stripped: Vec::new(),
            inclusion: track.then(|| ChainMap::identity(Arc::new(x.clone()))),
            projection: track.then(|| ChainMap::identity(Arc::new(x.clone()))),
        };
    };
    let mut w = Work {
        start: lo,
        terms: x.degrees().map(|k| x.term(k).to_vec()).collect(),
        diffs: x.degrees().take(x.terms.len() - 1).map(|k| x.diff(k)).collect(),
    };
    let len = w.terms.len();
    // incl[j]: current term j -> original term j; proj[j]: original -> current
    let mut incl: Vec<Mat> = w.terms.iter().map(|t| Mat::identity(t.len())).collect();
    let mut proj: Vec<Mat> = incl.clone();
    let mut stripped = Vec::new();

    while let Some((j, r, c)) = w.find_pivot() {
        let d = w.diffs[j].clone();
        let alpha = d.get(r, c).clone();
        let src = w.terms[j].clone();
        let dst = w.terms[j + 1].clone();
        stripped.push(Strip { degree: w.start + j as i32, summand: src[c] });
        let b_idx: Vec<usize> = (0..src.len()).filter(|&i| i != c).collect();
        let d_idx: Vec<usize> = (0..dst.len()).filter(|&i| i != r).collect();
        let new_src: Vec<IntervalModule> = b_idx.iter().map(|&i| src[i]).collect();
        let new_dst: Vec<IntervalModule> = d_idx.iter().map(|&i| dst[i]).collect();

        // delta - gamma alpha^-1 beta
        let mut nd = Mat::zeros(d_idx.len(), b_idx.len());
        for (ri, &rr) in d_idx.iter().enumerate() {
            let gamma = d.get(rr, c);
            for (ci, &cc) in b_idx.iter().enumerate() {
                let mut v = d.get(rr, cc).clone();
                if !gamma.is_zero() && hom_interval(&src[cc], &dst[rr]) == 1 {
                    let beta = d.get(r, cc);
                    if !beta.is_zero() {
                        v -= gamma * beta / &alpha;
                    }
                }
                nd.set(ri, ci, v);
            }
        }

        if track {
            // f^j = [-alpha^-1 beta ; 1] : B -> A (+) B, f^{j+1} = [0 ; 1] : D -> C (+) D
            let mut fj = Mat::zeros(src.len(), b_idx.len());
            for (ci, &cc) in b_idx.iter().enumerate() {
                fj.set(c, ci, -d.get(r, cc) / &alpha);
                fj.set(cc, ci, Q::one());
            }
            let mut fj1 = Mat::zeros(dst.len(), d_idx.len());
            for (ri, &rr) in d_idx.iter().enumerate() {
                fj1.set(rr, ri, Q::one());
            }
            // g^j = [0, 1] : A (+) B -> B, g^{j+1} = [-gamma alpha^-1, 1] : C (+) D -> D
            let mut gj = Mat::zeros(b_idx.len(), src.len());
            for (ci, &cc) in b_idx.iter().enumerate() {
                gj.set(ci, cc, Q::one());
            }
            let mut gj1 = Mat::zeros(d_idx.len(), dst.len());
            for (ri, &rr) in d_idx.iter().enumerate() {
                gj1.set(ri, r, -d.get(rr, c) / &alpha);
                gj1.set(ri, rr, Q::one());
            }
            let orig_j = x.term(w.start + j as i32);
            let orig_j1 = x.term(w.start + j as i32 + 1);
            incl[j] = mcompose(&fj, &incl[j], &new_src, orig_j);
            incl[j + 1] = mcompose(&fj1, &incl[j + 1], &new_dst, orig_j1);
            proj[j] = mcompose(&proj[j], &gj, orig_j, &new_src);
            proj[j + 1] = mcompose(&proj[j + 1], &gj1, orig_j1, &new_dst);
        }

        if j > 0 {
            let prev = &w.diffs[j - 1];
            w.diffs[j - 1] = prev.select(&b_idx, &(0..prev.cols()).collect::<Vec<_>>());
        }
        if j + 1 < w.diffs.len() {
            let next = &w.diffs[j + 1];
            w.diffs[j + 1] = next.select(&(0..next.rows()).collect::<Vec<_>>(), &d_idx);
        }
        w.diffs[j] = nd;
        w.terms[j] = new_src;
        w.terms[j + 1] = new_dst;
    }

    let complex = Complex::raw(x.kind(), w.start, w.terms.clone(), w.diffs);
    let (inclusion, projection) = if track {
        let xa = Arc::new(x.clone());
        let ma = Arc::new(complex.clone());
        let mut ic = BTreeMap::new();
        let mut pc = BTreeMap::new();
        for j in 0..len {
            let k = w.start + j as i32;
            if !w.terms[j].is_empty() {
                ic.insert(k, incl[j].clone());
                pc.insert(k, proj[j].clone());
            }
        }
        (Some(ChainMap::new(ma.clone(), xa.clone(), ic)), Some(ChainMap::new(xa, ma, pc)))
    } else {
        (None, None)
    };
    Minimized { complex, stripped, inclusion, projection }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;
    use crate::complex::{build_complex, Kind};

    #[test]
    fn contractible_vanishes() {
        let a = AlgebraSpec::a4gamma();
        let x = build_complex(
            &a,
            Kind::Projective,
            &[(0, vec![a.proj(3)]), (1, vec![a.proj(3)])].into(),
            &[(0, Mat::from_i64(1, 1, &[1]))].into(),
        )
        .unwrap();
        let m = minimize(&x);
        assert!(m.complex.is_zero());
        assert_eq!(m.stripped, vec![Strip { degree: 0, summand: a.proj(3) }]);
    }

    #[test]
    fn partial_strip_with_maps() {
        let a = AlgebraSpec::a4gamma();
        let x = build_complex(
            &a,
            Kind::Projective,
            &[(0, vec![a.proj(1), a.proj(3)]), (1, vec![a.proj(3)])].into(),
            &[(0, Mat::from_i64(1, 2, &[1, 1]))].into(),
        )
        .unwrap();
        let m = minimize_with_maps(&x);
        assert_eq!(m.complex.summand_multiset(), vec![(0, a.proj(1))]);
        assert_eq!(m.stripped.len(), 1);
        let (i, p) = (m.inclusion.unwrap(), m.projection.unwrap());
        assert!(i.is_chain_map());
        assert!(p.is_chain_map());
        let id = i.then(&p);
        assert_eq!(id.comp(0), Mat::identity(1));
    }

    #[test]
    fn minimal_is_fixed_point() {
        let a = AlgebraSpec::a4gamma();
        let x = build_complex(
            &a,
            Kind::Projective,
            &[(0, vec![a.proj(1)]), (1, vec![a.proj(3)])].into(),
            &[(0, Mat::from_i64(1, 1, &[1]))].into(),
        )
        .unwrap();
        let m = minimize(&x);
        assert_eq!(m.complex, x);
        assert!(m.stripped.is_empty());
    }
}
