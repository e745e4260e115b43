//! Isomorphism testing between minimal complexes.

use std::sync::Arc;

use num_bigint::BigInt;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::hom::HomSpace;
use super::minimize::minimize;
use super::{ChainMap, Complex};
use crate::linalg::{Mat, Q};

const SAMPLES: usize = 4;
const SPREAD: i64 = 1_000_000;

/// A chain map between minimal complexes is an isomorphism iff, in every degree, the block
/// between equal summands is invertible.
pub fn is_invertible(f: &ChainMap) -> bool {
    let (x, y) = (&f.src, &f.dst);
    if x.summand_multiset() != y.summand_multiset() {
        return false;
    }
    x.degrees().all(|k| {
        let (src, dst) = (x.term(k), y.term(k));
        let m = f.comp(k);
        let mut labels: Vec<_> = src.to_vec();
        labels.sort();
        labels.dedup();
        labels.iter().all(|l| {
            let rows: Vec<usize> = (0..dst.len()).filter(|&i| dst[i] == *l).collect();
            let cols: Vec<usize> = (0..src.len()).filter(|&i| src[i] == *l).collect();
            rows.len() == cols.len() && m.select(&rows, &cols).rank() == rows.len()
        })
    })
}

pub(crate) fn random_coeffs(rng: &mut ChaCha8Rng, n: usize, spread: i64) -> Vec<Q> {
    (0..n).map(|_| Q::from_integer(BigInt::from(rng.gen_range(-spread..=spread)))).collect()
}

/// Searches for an isomorphism `X -> Y` after minimizing both; returns it when found.
pub fn find_isomorphism(x: &Complex, y: &Complex, rng: &mut ChaCha8Rng) -> Option<ChainMap> {
    let xm = Arc::new(minimize(x).complex);
    let ym = Arc::new(minimize(y).complex);
    find_isomorphism_minimal(xm, ym, rng)
}

pub(crate) fn find_isomorphism_minimal(x: Arc<Complex>, y: Arc<Complex>, rng: &mut ChaCha8Rng) -> Option<ChainMap> {
    if x.is_zero() || y.is_zero() {
        return (x.is_zero() && y.is_zero()).then(|| ChainMap::zero(x.clone(), y.clone()));
    }
    if x.kind() != y.kind() || x.summand_multiset() != y.summand_multiset() {
        return None;
    }
    let h = HomSpace::new(x, y);
    if h.cycles.is_empty() {
        return None;
    }
    for _ in 0..SAMPLES {
        let c = random_coeffs(rng, h.cycles.len(), SPREAD);
        let f = h.cycle_combine(&c);
        if is_invertible(&f) {
            return Some(f);
        }
    }
    None
}

/// Inverse of an invertible chain map, solved degreewise in the masked algebra.
pub fn invert(f: &ChainMap) -> Option<ChainMap> {
    let h = HomSpace::new(f.dst.clone(), f.src.clone());
    // g o f = id, solved over the chain-map space
    let id = ChainMap::identity(f.src.clone());
    let target = HomSpace::new(f.src.clone(), f.src.clone());
    let want = target.coords_of(&id);
    let cols: Vec<Vec<Q>> = h.cycles.iter().map(|c| target.coords_of(&f.then(&h.map_of(c)))).collect();
    let m = Mat::from_columns(want.len(), &cols);
    let x = m.solve(&want)?;
    Some(h.cycle_combine(&x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;
    use crate::complex::descriptor::parse;
    use rand::SeedableRng;

    #[test]
    fn rescaled_complexes_are_isomorphic() {
        let a = AlgebraSpec::a4gamma();
        let x = parse(&a, "0:{P1} 1:{P3} d0=[1]").unwrap();
        let y = parse(&a, "0:{P1} 1:{P3} d0=[-5/3]").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f = find_isomorphism(&x, &y, &mut rng).unwrap();
        let g = invert(&f).unwrap();
        assert_eq!(f.then(&g).comp(0), Mat::identity(1));
        assert!(find_isomorphism(&x, &x.shift(1), &mut rng).is_none());
        let s2 = parse(&a, "0:{P2}").unwrap();
        let s3 = parse(&a, "0:{P3}").unwrap();
        assert!(find_isomorphism(&s2, &s3, &mut rng).is_none());
    }
}
