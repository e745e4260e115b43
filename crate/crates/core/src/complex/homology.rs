//! Homology through the representation oracle.

use std::collections::BTreeMap;

use super::Complex;
use crate::algebra::IntervalModule;
use crate::linalg::Mat;
use crate::rep::{rep_of_sum, ComplexRep};

/// Expands every term into a representation of the linear quiver on `n` vertices.
pub fn to_rep(x: &Complex, n: usize) -> ComplexRep {
    let Some((lo, hi)) = x.range() else {
        return ComplexRep { start: 0, terms: Vec::new(), diffs: Vec::new() };
    };
    let terms = (lo..=hi).map(|k| rep_of_sum(n, x.term(k).iter().copied())).collect();
    let diffs = (lo..hi)
        .map(|k| {
            let (src, dst) = (x.term(k), x.term(k + 1));
            let d = x.diff(k);
            (1..=n)
                .map(|v| {
                    let rows: Vec<usize> = (0..dst.len()).filter(|&i| dst[i].contains(v)).collect();
                    let cols: Vec<usize> = (0..src.len()).filter(|&i| src[i].contains(v)).collect();
                    d.select(&rows, &cols)
                })
                .collect::<Vec<Mat>>()
        })
        .collect();
    ComplexRep { start: lo, terms, diffs }
}

/// Per-degree homology as interval multisets; zero degrees are omitted.
pub fn homology(x: &Complex, n: usize) -> BTreeMap<i32, Vec<IntervalModule>> {
    to_rep(x, n).homology()
}

/// Lowest degree carrying nonzero homology.
pub fn lowest_homology_degree(x: &Complex, n: usize) -> Option<i32> {
    homology(x, n).keys().next().copied()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;
    use crate::complex::{build_complex, Kind};

    #[test]
    fn middle_of_p2_triangle() {
        let a = AlgebraSpec::a4gamma();
        let x = build_complex(
            &a,
            Kind::Projective,
            &[(0, vec![a.proj(2)]), (1, vec![a.proj(4)])].into(),
            &[(0, Mat::from_i64(1, 1, &[1]))].into(),
        )
        .unwrap();
        let h = homology(&x, 4);
        assert_eq!(h.get(&0), Some(&vec![IntervalModule::new(1, 1)]));
        assert_eq!(h.get(&1), Some(&vec![IntervalModule::new(3, 4)]));
        assert_eq!(h.len(), 2);
    }

    #[test]
    fn stalk_and_contractible() {
        let a = AlgebraSpec::a4gamma();
        let p = Complex::stalk(Kind::Projective, 0, vec![a.proj(3)]);
        assert_eq!(homology(&p, 4), [(0, vec![a.proj(3)])].into());
        let c = build_complex(
            &a,
            Kind::Projective,
            &[(0, vec![a.proj(3)]), (1, vec![a.proj(3)])].into(),
            &[(0, Mat::from_i64(1, 1, &[1]))].into(),
        )
        .unwrap();
        assert!(homology(&c, 4).is_empty());
    }
}
