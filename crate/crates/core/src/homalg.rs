//! Minimal resolutions, syzygies, homological dimensions and the Nakayama functor on modules.

use crate::algebra::{AlgebraSpec, IntervalModule};
use crate::complex::{Complex, Kind};
use crate::error::{Error, Result};
use crate::linalg::Mat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Kernel of the projective cover (`Forward`) or cokernel of the injective envelope.
pub fn syzygy(alg: &AlgebraSpec, m: &IntervalModule, dir: Direction) -> Option<IntervalModule> {
    match dir {
        Direction::Forward => {
            let p = alg.proj(m.hi);
            IntervalModule::try_new(p.lo, m.lo - 1)
        }
        Direction::Inverse => {
            let i = alg.inj(m.lo);
            IntervalModule::try_new(m.hi + 1, i.hi)
        }
    }
}

/// Projective terms of the minimal resolution, degree 0 first.
pub fn proj_terms(alg: &AlgebraSpec, m: &IntervalModule) -> Vec<IntervalModule> {
    let mut out = vec![alg.proj(m.hi)];
    let mut cur = *m;
    while let Some(k) = syzygy(alg, &cur, Direction::Forward) {
        out.push(alg.proj(k.hi));
        cur = k;
    }
    out
}

/// Injective terms of the minimal coresolution, degree 0 first.
pub fn inj_terms(alg: &AlgebraSpec, m: &IntervalModule) -> Vec<IntervalModule> {
    let mut out = vec![alg.inj(m.lo)];
    let mut cur = *m;
    while let Some(c) = syzygy(alg, &cur, Direction::Inverse) {
        out.push(alg.inj(c.lo));
        cur = c;
    }
    out
}

fn chain(kind: Kind, start: i32, terms: Vec<IntervalModule>) -> Complex {
    let diffs = (1..terms.len()).map(|_| Mat::identity(1)).collect();
    Complex::raw(kind, start, terms.into_iter().map(|t| vec![t]).collect(), diffs)
}

/// `pM`, concentrated in degrees `<= 0`.
pub fn proj_resolution(alg: &AlgebraSpec, m: Option<&IntervalModule>) -> Result<Complex> {
    let m = m.ok_or(Error::ZeroModule)?;
    alg.check(m)?;
    let mut terms = proj_terms(alg, m);
    terms.reverse();
    let start = 1 - terms.len() as i32;
    Ok(chain(Kind::Projective, start, terms))
}

/// `iM`, concentrated in degrees `>= 0`.
pub fn inj_resolution(alg: &AlgebraSpec, m: Option<&IntervalModule>) -> Result<Complex> {
    let m = m.ok_or(Error::ZeroModule)?;
    alg.check(m)?;
    Ok(chain(Kind::Injective, 0, inj_terms(alg, m)))
}

pub fn pdim(alg: &AlgebraSpec, m: &IntervalModule) -> usize {
    proj_terms(alg, m).len() - 1
}

pub fn idim(alg: &AlgebraSpec, m: &IntervalModule) -> usize {
    inj_terms(alg, m).len() - 1
}

/// `(pdim, idim)` of a module.
pub fn homological_dims(alg: &AlgebraSpec, m: &IntervalModule) -> Result<(usize, usize)> {
    alg.check(m)?;
    Ok((pdim(alg, m), idim(alg, m)))
}

pub fn gldim(alg: &AlgebraSpec) -> usize {
    alg.indecomposables().iter().map(|m| pdim(alg, m)).max().unwrap_or(0)
}

/// Relations sharing at least one arrow.
pub fn relations_overlap(a: &IntervalModule, b: &IntervalModule) -> bool {
    a.lo.max(b.lo) < a.hi.min(b.hi)
}

/// One more than the largest set of relations in which each member overlaps another,
/// with a lone relation counting as a set of size one.
pub fn gdim_bound(alg: &AlgebraSpec) -> usize {
    let rels = alg.relations();
    if rels.is_empty() {
        return 1;
    }
    let linked = rels
        .iter()
        .enumerate()
        .filter(|(i, a)| rels.iter().enumerate().any(|(j, b)| *i != j && relations_overlap(a, b)))
        .count();
    linked.max(1) + 1
}

/// `nu(P_i) = I_i` and `nu^-1(I_i) = P_i`.
pub fn nakayama_module(alg: &AlgebraSpec, m: &IntervalModule, dir: Direction) -> Result<IntervalModule> {
    match dir {
        Direction::Forward if alg.is_projective(m) => Ok(alg.inj(m.hi)),
        Direction::Inverse if alg.is_injective(m) => Ok(alg.proj(m.lo)),
        Direction::Forward => Err(Error::WrongKind(format!("{m} is not projective"))),
        Direction::Inverse => Err(Error::WrongKind(format!("{m} is not injective"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::descriptor::format;

    fn iv(a: usize, b: usize) -> IntervalModule {
        IntervalModule::new(a, b)
    }

    #[test]
    fn resolutions_a4gamma() {
        let a = AlgebraSpec::a4gamma();
        assert_eq!(format(&proj_resolution(&a, Some(&iv(2, 3))).unwrap()), "-1:{P1} 0:{P3} d-1=[1]");
        assert_eq!(format(&proj_resolution(&a, Some(&iv(3, 4))).unwrap()), "-2:{P1} -1:{P2} 0:{P4} d-2=[1] d-1=[1]");
        assert_eq!(format(&proj_resolution(&a, Some(&a.proj(2))).unwrap()), "0:{P2}");
        assert_eq!(format(&inj_resolution(&a, Some(&iv(2, 3))).unwrap()), "0:{I2} 1:{I4} d0=[1]");
        assert_eq!(format(&inj_resolution(&a, Some(&iv(1, 1))).unwrap()), "0:{I1} 1:{I2} 2:{I4} d0=[1] d1=[1]");
        assert_eq!(format(&inj_resolution(&a, Some(&a.inj(3))).unwrap()), "0:{I3}");
        assert!(matches!(proj_resolution(&a, None), Err(Error::ZeroModule)));
    }

    #[test]
    fn dimensions() {
        assert_eq!(gldim(&AlgebraSpec::a4gamma()), 2);
        assert_eq!(gldim(&AlgebraSpec::rad_square(5).unwrap()), 4);
        assert_eq!(gldim(&AlgebraSpec::hereditary(4).unwrap()), 1);
        assert_eq!(gdim_bound(&AlgebraSpec::rad_square(5).unwrap()), 4);
        assert_eq!(gdim_bound(&AlgebraSpec::a4gamma()), 2);
        assert_eq!(gdim_bound(&AlgebraSpec::hereditary(4).unwrap()), 1);
    }

    #[test]
    fn nakayama_and_syzygy() {
        let a = AlgebraSpec::a4gamma();
        assert_eq!(nakayama_module(&a, &a.proj(2), Direction::Forward).unwrap(), iv(2, 4));
        assert_eq!(nakayama_module(&a, &a.proj(1), Direction::Forward).unwrap(), a.proj(3));
        for i in 1..=4 {
            let p = a.proj(i);
            let back = nakayama_module(&a, &nakayama_module(&a, &p, Direction::Forward).unwrap(), Direction::Inverse);
            assert_eq!(back.unwrap(), p);
        }
        assert!(matches!(nakayama_module(&a, &iv(2, 3), Direction::Forward), Err(Error::WrongKind(_))));
        assert_eq!(syzygy(&a, &iv(2, 3), Direction::Forward), Some(a.proj(1)));
        assert_eq!(syzygy(&a, &iv(2, 3), Direction::Inverse), Some(a.inj(4)));
        assert_eq!(syzygy(&a, &a.proj(3), Direction::Forward), None);
    }
}
