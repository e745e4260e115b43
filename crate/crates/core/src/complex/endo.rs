//! Endomorphism algebras up to homotopy, their radicals, and splitting by idempotents.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand_chacha::ChaCha8Rng;

use super::hom::HomSpace;
use super::iso::random_coeffs;
use super::{mcompose, ChainMap, Complex};
use crate::algebra::{hom_interval, IntervalModule};
use crate::error::{Error, Result};
use crate::linalg::{independent_columns, Mat, Q};
use crate::poly::Poly;

/// `End_K(X)` in the basis of homotopy-class representatives.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub hom: HomSpace,
    /// `table[i][j]` holds the coordinates of `b_i o b_j`.
    pub table: Vec<Vec<Vec<Q>>>,
    pub unit: Vec<Q>,
    pub radical: Vec<Vec<Q>>,
}

impl EndAlgebra {
    pub fn new(x: Arc<Complex>) -> Self {
        let hom = HomSpace::new(x.clone(), x.clone());
        let n = hom.dim();
        let basis: Vec<ChainMap> = (0..n).map(|i| hom.class_map(i)).collect();
        let table = (0..n)
            .map(|i| (0..n).map(|j| hom.class_of(&basis[j].then(&basis[i]))).collect())
            .collect();
        let unit = hom.class_of(&ChainMap::identity(x));
        let mut e = EndAlgebra { hom, table, unit, radical: Vec::new() };
        e.radical = e.compute_radical();
        e
    }

    pub fn dim(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut out = vec![Q::zero(); n];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let c = ai * bj;
                for (o, t) in out.iter_mut().zip(&self.table[i][j]) {
                    if !t.is_zero() {
                        *o += &c * t;
                    }
                }
            }
        }
        out
    }

    /// Matrix of `y -> x y`.
    pub fn left_mul(&self, x: &[Q]) -> Mat {
        let n = self.dim();
        let cols: Vec<Vec<Q>> = (0..n)
            .map(|j| {
                let mut e = vec![Q::zero(); n];
                e[j] = Q::one();
                self.mul(x, &e)
            })
            .collect();
        Mat::from_columns(n, &cols)
    }

    fn compute_radical(&self) -> Vec<Vec<Q>> {
        let n = self.dim();
        if n == 0 {
            return Vec::new();
        }
        let ls: Vec<Mat> = (0..n)
            .map(|i| {
                let mut e = vec![Q::zero(); n];
                e[i] = Q::one();
                self.left_mul(&e)
            })
            .collect();
        let gram = Mat::from_rows((0..n).map(|i| (0..n).map(|j| ls[i].mul(&ls[j]).trace()).collect()).collect());
        gram.kernel()
    }

    /// Every radical basis element acts nilpotently.
    pub fn radical_is_nilpotent(&self) -> bool {
        let n = self.dim();
        self.radical.iter().all(|r| {
            let l = self.left_mul(r);
            let mut p = l.clone();
            for _ in 0..n {
                p = p.mul(&l);
            }
            p.is_zero()
        })
    }

    pub fn is_local(&self) -> bool {
        self.dim() - self.radical.len() == 1
    }

    pub fn element(&self, x: &[Q]) -> ChainMap {
        self.hom.combine(x)
    }

    /// Minimal polynomial of `x`, from the first linear relation among its powers.
    pub fn min_poly(&self, x: &[Q]) -> Poly {
        let n = self.dim();
        let mut powers: Vec<Vec<Q>> = vec![self.unit.clone()];
        loop {
            let next = self.mul(x, powers.last().unwrap());
            let m = Mat::from_columns(n, &powers);
            if let Some(c) = m.solve(&next) {
                let mut coeffs: Vec<Q> = c.into_iter().map(|v| -v).collect();
                coeffs.push(Q::one());
                return Poly::new(coeffs);
            }
            powers.push(next);
        }
    }

    pub fn eval(&self, p: &Poly, x: &[Q]) -> Vec<Q> {
        let n = self.dim();
        let mut acc = vec![Q::zero(); n];
        for c in p.coeffs().iter().rev() {
            acc = self.mul(x, &acc);
            for (a, u) in acc.iter_mut().zip(&self.unit) {
                *a += c * u;
            }
        }
        acc
    }

    /// A nontrivial idempotent from a coprime split of some element's minimal polynomial.
    pub fn find_idempotent(&self, rng: &mut ChaCha8Rng) -> Option<Vec<Q>> {
        if self.is_local() || self.dim() == 0 {
            return None;
        }
        let n = self.dim();
        let unit_vec = |i: usize| {
            let mut e = vec![Q::zero(); n];
            e[i] = Q::one();
            e
        };
        let mut candidates: Vec<Vec<Q>> = (0..n).map(unit_vec).collect();
        for i in 0..n {
            for j in i + 1..n {
                candidates.push(unit_vec(i).iter().zip(unit_vec(j)).map(|(a, b)| a + b).collect());
            }
        }
        for _ in 0..64 {
            candidates.push(random_coeffs(rng, n, 3));
        }
        candidates.into_iter().find_map(|x| self.split_element(&x))
    }

    fn split_element(&self, x: &[Q]) -> Option<Vec<Q>> {
        let mu = self.min_poly(x);
        let (a, b) = coprime_split(&mu)?;
        let (g, s, _) = Poly::ext_gcd(&a, &b);
        debug_assert_eq!(g, Poly::one());
        let e = self.eval(&s.mul(&a), x);
        let one_minus: Vec<Q> = self.unit.iter().zip(&e).map(|(u, v)| u - v).collect();
        let trivial = |v: &[Q]| v.iter().all(Zero::is_zero);
        (!trivial(&e) && !trivial(&one_minus)).then_some(e)
    }
}

/// `mu = a * b` with `gcd(a, b) = 1` and both factors nonconstant.
fn coprime_split(mu: &Poly) -> Option<(Poly, Poly)> {
    let factors = mu.squarefree_factors();
    let split_off = |a: Poly| {
        let b = mu.monic().div_rem(&a).0;
        (b.degree().unwrap_or(0) > 0).then_some((a, b))
    };
    if factors.len() >= 2 {
        let (f, m) = &factors[0];
        return split_off(f.pow(*m));
    }
    let (f, m) = factors.first()?;
    if f.degree()? < 2 {
        return None;
    }
    let r = f.rational_roots().into_iter().next()?;
    split_off(Poly::linear(r).pow(*m))
}

/// Turns an idempotent up to homotopy into a strict one by `e <- 3e^2 - 2e^3`.
pub fn lift_idempotent(e: &ChainMap) -> Result<ChainMap> {
    let three = Q::from_integer(3.into());
    let two = Q::from_integer(2.into());
    let mut e = e.clone();
    for _ in 0..64 {
        let e2 = e.then(&e);
        if e2.comps() == e.comps() || e2.sub(&e).is_zero() {
            return Ok(e);
        }
        let e3 = e2.then(&e);
        e = e2.scale(&three).sub(&e3.scale(&two));
    }
    Err(Error::DecompositionFailure("idempotent lifting did not converge".into()))
}

/// The image of a strict idempotent `e` on `X`, with `iota: Y -> X`, `pi: X -> Y`,
/// `pi iota = 1` and `iota pi = e`.
pub fn split_image(x: &Arc<Complex>, e: &ChainMap) -> Result<(Complex, ChainMap, ChainMap)> {
    let mut terms: BTreeMap<i32, Vec<IntervalModule>> = BTreeMap::new();
    let mut iotas: BTreeMap<i32, Mat> = BTreeMap::new();
    let mut pis: BTreeMap<i32, Mat> = BTreeMap::new();
    for k in x.degrees() {
        let src = x.term(k);
        let ek = e.comp(k);
        let mut chosen = Vec::new();
        let mut labels: Vec<IntervalModule> = src.to_vec();
        labels.sort();
        labels.dedup();
        for l in &labels {
            let idx: Vec<usize> = (0..src.len()).filter(|&i| src[i] == *l).collect();
            let block = ek.select(&idx, &idx);
            chosen.extend(independent_columns(&block).into_iter().map(|c| idx[c]));
        }
        chosen.sort_unstable();
        let ys: Vec<IntervalModule> = chosen.iter().map(|&i| src[i]).collect();
        let iota = ek.select(&(0..src.len()).collect::<Vec<_>>(), &chosen);
        let left = masked_left_inverse(&iota, &ys, src)
            .ok_or_else(|| Error::DecompositionFailure(format!("no retraction in degree {k}")))?;
        let pi = mcompose(&ek, &left, src, &ys);
        terms.insert(k, ys);
        iotas.insert(k, iota);
        pis.insert(k, pi);
    }
    let mut diffs = BTreeMap::new();
    for k in x.degrees() {
        let (Some(i), Some(p)) = (iotas.get(&k), pis.get(&(k + 1))) else { continue };
        let (ys, yt) = (&terms[&k], &terms[&(k + 1)]);
        let d = mcompose(i, &x.diff(k), ys, x.term(k + 1));
        diffs.insert(k, mcompose(&d, p, ys, yt));
    }
    let terms: BTreeMap<i32, Vec<IntervalModule>> = terms.into_iter().filter(|(_, t)| !t.is_empty()).collect();
    let y = Arc::new(Complex::from_maps(x.kind(), &terms, &diffs));
    let iota = ChainMap::new(y.clone(), x.clone(), iotas);
    let pi = ChainMap::new(x.clone(), y.clone(), pis);
    Ok(((*y).clone(), iota, pi))
}

/// Masked `L: X -> Y` with `L o iota = 1_Y`.
fn masked_left_inverse(iota: &Mat, ys: &[IntervalModule], xs: &[IntervalModule]) -> Option<Mat> {
    let unknowns: Vec<(usize, usize)> = (0..ys.len())
        .flat_map(|a| (0..xs.len()).map(move |i| (a, i)))
        .filter(|&(a, i)| hom_interval(&xs[i], &ys[a]) == 1)
        .collect();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for a in 0..ys.len() {
        for b in 0..ys.len() {
            if hom_interval(&ys[b], &ys[a]) == 0 {
                continue;
            }
            let row: Vec<Q> = unknowns
                .iter()
                .map(|&(ua, i)| if ua == a { iota.get(i, b).clone() } else { Q::zero() })
                .collect();
            rows.push(row);
            rhs.push(if a == b { Q::one() } else { Q::zero() });
        }
    }
    let mut l = Mat::zeros(ys.len(), xs.len());
    if unknowns.is_empty() {
        return ys.is_empty().then_some(l);
    }
    let sol = Mat::from_rows(rows).solve(&rhs)?;
    for (&(a, i), v) in unknowns.iter().zip(sol) {
        l.set(a, i, v);
    }
    Some(l)
}

/// Fast path: single-summand terms on a contiguous support joined by nonzero differentials.
pub fn is_string_indecomposable(x: &Complex) -> bool {
    let Some((lo, hi)) = x.range() else {
        return false;
    };
    (lo..=hi).all(|k| x.term(k).len() == 1) && (lo..hi).all(|k| !x.diff(k).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;
    use crate::complex::Kind;

    fn stalk(a: &AlgebraSpec, vs: &[usize]) -> Arc<Complex> {
        Arc::new(Complex::stalk(Kind::Projective, 0, vs.iter().map(|&i| a.proj(i)).collect()))
    }

    #[test]
    fn end_examples() {
        let a = AlgebraSpec::a4gamma();
        let e = EndAlgebra::new(stalk(&a, &[3]));
        assert_eq!((e.dim(), e.radical.len()), (1, 0));
        let e = EndAlgebra::new(stalk(&a, &[3, 3]));
        assert_eq!((e.dim(), e.radical.len()), (4, 0));
        let e = EndAlgebra::new(stalk(&a, &[2, 3]));
        assert_eq!((e.dim(), e.radical.len()), (3, 1));
        assert!(e.radical_is_nilpotent());
    }

    #[test]
    fn split_matrix_algebra() {
        use rand::SeedableRng;
        let a = AlgebraSpec::a4gamma();
        let x = stalk(&a, &[3, 3]);
        let e = EndAlgebra::new(x.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let idem = e.find_idempotent(&mut rng).unwrap();
        let f = lift_idempotent(&e.element(&idem)).unwrap();
        let (y, iota, pi) = split_image(&x, &f).unwrap();
        assert_eq!(y.summand_count(), 1);
        assert_eq!(iota.then(&pi).comp(0), Mat::identity(1));
    }

    #[test]
    fn coprime_split_cases() {
        use crate::linalg::q;
        let p = |c: &[i64]| Poly::new(c.iter().map(|&x| q(x)).collect());
        // t (t - 1)
        assert!(coprime_split(&p(&[0, -1, 1])).is_some());
        // t^2
        assert!(coprime_split(&p(&[0, 0, 1])).is_none());
        // t^2 + 1
        assert!(coprime_split(&p(&[1, 0, 1])).is_none());
    }
}
