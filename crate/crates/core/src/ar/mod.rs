//! Auslander-Reiten triangles, translates, predecessor predictions and components.

pub mod component;
pub mod predict;
pub mod verify;

use std::sync::Arc;

pub use component::{build_component, component_report, Component, ComponentReport, TreeClass};
pub use predict::{p_irreducible, pre_conditions, predecessor_info, PreConditions, Predecessors, Which};

use crate::complex::endo::EndAlgebra;
use crate::complex::hom::HomSpace;
use crate::complex::minimize::{minimize, Strip};
use crate::complex::{cone, ChainMap, Complex, Kind};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::homalg::Direction;
use crate::linalg::{Mat, Q};

/// `tau Z -> middle -> Z -> (tau Z)[1]`.
#[derive(Clone, Debug)]
pub struct ArTriangle {
    pub end: Complex,
    /// The connecting map `Z -> nu(Z)`, with `nu(Z)` in projective form.
    pub w: ChainMap,
    pub start: Complex,
    pub middle_complex: Complex,
    pub middle: Vec<(Complex, usize)>,
    pub stripped: Vec<Strip>,
}

impl ArTriangle {
    pub fn middle_count(&self) -> usize {
        self.middle.iter().map(|(_, k)| k).sum()
    }
}

impl Engine {
    /// Minimal complex of projectives representing `x`.
    pub fn as_projective(&self, x: &Complex) -> Result<Complex> {
        match x.kind() {
            Kind::Projective => Ok(minimize(x).complex),
            _ => self.projectivize(x),
        }
    }

    /// The unique (up to scalar) class `w: Z -> T` killing the radical of `End(Z)`.
    fn socle_map(&self, z: &Arc<Complex>, t: &Arc<Complex>) -> Result<ChainMap> {
        let end = EndAlgebra::new(z.clone());
        if !end.is_local() {
            return Err(Error::NotIndecomposable);
        }
        let hom = HomSpace::new(z.clone(), t.clone());
        let radical: Vec<ChainMap> = end.radical.iter().map(|r| end.element(r)).collect();
        let n = hom.dim();
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for f in &radical {
            let cols: Vec<Vec<Q>> = (0..n).map(|i| hom.class_of(&f.then(&hom.class_map(i)))).collect();
            let m = Mat::from_columns(n, &cols);
            rows.extend((0..m.rows()).map(|r| m.row(r)));
        }
        let kernel = if rows.is_empty() {
            let id = Mat::identity(n);
            (0..n).map(|i| id.column(i)).collect()
        } else {
            Mat::from_rows(rows).kernel()
        };
        if kernel.len() != 1 {
            return Err(Error::SocleDimensionError(kernel.len()));
        }
        let mut x = kernel.into_iter().next().unwrap();
        crate::linalg::normalize_vec(&mut x);
        Ok(hom.combine(&x))
    }

    /// The connecting map `w: Z -> nu(Z)` of the triangle ending in `Z`.
    pub fn connecting_map(&self, z: &Complex) -> Result<ChainMap> {
        let z = self.as_projective(z)?;
        if z.is_zero() {
            return Err(Error::NotIndecomposable);
        }
        let t = self.nu(&z)?;
        self.socle_map(&Arc::new(z), &Arc::new(t))
    }

    pub fn ar_triangle_ending(&self, z: &Complex) -> Result<ArTriangle> {
        let z = self.as_projective(z)?;
        if z.is_zero() {
            return Err(Error::NotIndecomposable);
        }
        let za = Arc::new(z.clone());
        let t = Arc::new(self.projectivize(&self.nu(&z)?)?);
        let w = self.socle_map(&za, &t)?;
        let c = cone(&w)?.shift(-1);
        let m = minimize(&c);
        let middle = self.decompose(&m.complex)?;
        Ok(ArTriangle { end: z, w, start: t.shift(-1), middle_complex: m.complex, middle, stripped: m.stripped })
    }

    /// `w o f` is null-homotopic for every radical endomorphism `f` of `Z`.
    pub fn has_ar_property(&self, tri: &ArTriangle) -> bool {
        let end = EndAlgebra::new(tri.w.src.clone());
        let hom = HomSpace::new(tri.w.src.clone(), tri.w.dst.clone());
        !hom.is_null_homotopic(&tri.w)
            && end.radical.iter().all(|r| hom.is_null_homotopic(&end.element(r).then(&tri.w)))
    }

    /// `tau = nu[-1]` and its inverse, on minimal complexes of projectives.
    pub fn tau(&self, x: &Complex, dir: Direction) -> Result<Complex> {
        let x = self.as_projective(x)?;
        match dir {
            Direction::Forward => Ok(minimize(&self.projectivize(&self.nu(&x)?)?.shift(-1)).complex),
            Direction::Inverse => {
                let i = self.injectivize(&x)?;
                Ok(minimize(&self.nu_inv(&i)?.shift(1)).complex)
            }
        }
    }

    pub fn tau_pow(&self, x: &Complex, k: i32) -> Result<Complex> {
        let dir = if k >= 0 { Direction::Forward } else { Direction::Inverse };
        let mut cur = self.as_projective(x)?;
        for _ in 0..k.unsigned_abs() {
            cur = self.tau(&cur, dir)?;
        }
        Ok(cur)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AlgebraSpec;

    fn eng() -> Engine {
        Engine::new(AlgebraSpec::a4gamma())
    }

    #[test]
    fn connecting_maps() {
        let e = eng();
        let a = e.alg().clone();
        let p1 = e.p(&a.proj(1));
        let w = e.connecting_map(&p1).unwrap();
        assert_eq!(w.dst.term(0), &[a.inj(1)]);
        assert_eq!(Engine::single_scalar(&w), Some(Q::from_integer(1.into())));
        let w3 = e.connecting_map(&e.p(&a.proj(3))).unwrap();
        assert_eq!(w3.dst.term(0), &[a.inj(3)]);
        assert!(!w3.is_zero());
        let pm = e.p(&e.module(2, 3).unwrap());
        assert!(e.connecting_map(&pm).is_ok());
    }

    #[test]
    fn triangle_at_m() {
        let e = eng();
        let m = e.p(&e.module(2, 3).unwrap());
        let t = e.ar_triangle_ending(&m).unwrap();
        assert!(e.has_ar_property(&t));
        assert_eq!(t.middle_count(), 3);
    }

    #[test]
    fn tau_of_s3_is_s2() {
        let e = eng();
        let s3 = e.p(&e.module(3, 3).unwrap());
        let s2 = e.p(&e.module(2, 2).unwrap());
        let t = e.tau(&s3, Direction::Forward).unwrap();
        assert!(e.is_isomorphic(&t, &s2));
        let back = e.tau(&t, Direction::Inverse).unwrap();
        assert!(e.is_isomorphic(&back, &s3));
    }
}
