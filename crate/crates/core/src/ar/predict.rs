//! Closed-form predictions for middle terms and predecessors, checked against the computed triangles.

use crate::algebra::{hom_interval, AlgebraSpec, CanonicalMap, IntervalModule};
use crate::complex::{Complex, Kind};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::homalg::{self, Direction};
use crate::linalg::Mat;

/// The three vanishing conditions attached to a module, with the middle-term summands they predict.
#[derive(Clone, Debug)]
pub struct PreConditions {
    pub c1: bool,
    pub c2: bool,
    pub c3: bool,
    /// Named summands that survive, each paired with a short description.
    pub predicted: Vec<(String, Complex)>,
    /// Number of further summands expected beyond the named ones.
    pub remainder: usize,
}

impl PreConditions {
    pub fn flags(&self) -> (bool, bool, bool) {
        (self.c1, self.c2, self.c3)
    }

    pub fn expected_count(&self) -> usize {
        self.predicted.len() + self.remainder
    }
}

/// `dim Hom(I_a, I_b)`, taken as 0 when an index falls outside `1..=n`.
fn inj_hom(alg: &AlgebraSpec, a: isize, b: isize) -> usize {
    let n = alg.n() as isize;
    if a < 1 || b < 1 || a > n || b > n {
        return 0;
    }
    hom_interval(&alg.inj(a as usize), &alg.inj(b as usize))
}

pub fn pre_conditions(engine: &Engine, m: &IntervalModule) -> Result<PreConditions> {
    let alg = engine.alg();
    alg.check(m)?;
    let (pd, id) = homalg::homological_dims(alg, m)?;
    let i = m.hi as isize;
    let t = m.len() as isize;
    let l = alg.proj_len(m.hi) as isize;
    let lbar = alg.inj_len(m.lo) as isize;
    let c1 = pd <= 1 || inj_hom(alg, i - l, i - t + 1) == 0;
    let c2 = id <= 1 || inj_hom(alg, i, i + lbar - t + 1) == 0;
    let c3 = pd == 0 || id == 0 || inj_hom(alg, i - t, i + 1) == 0;

    let mut candidates: Vec<(String, Complex)> = Vec::new();
    if c1 && c3 {
        if let Some(k) = homalg::syzygy(alg, m, Direction::Forward) {
            let x = engine.projectivize(&engine.nu(&engine.p(&k))?)?;
            candidates.push((format!("nu(p({}))", alg.module_alias(&k)), x));
        }
    }
    if c2 && c3 {
        if let Some(c) = homalg::syzygy(alg, m, Direction::Inverse) {
            candidates.push((format!("{}[-1]", alg.module_alias(&c)), engine.p(&c).shift(-1)));
        }
    }
    if c1 && c2 {
        let (a, b) = (alg.inj(m.lo), alg.inj(m.hi));
        let x = Complex::raw(Kind::Injective, 0, vec![vec![a], vec![b]], vec![Mat::identity(1)]);
        candidates.push((format!("I{} -> I{}", m.lo, m.hi), engine.projectivize(&x)?));
    }
    let predicted = candidates.into_iter().filter(|(_, x)| !engine.is_zero_in_k(x)).collect();
    let remainder = usize::from(!(c1 && c2 && c3));
    Ok(PreConditions { c1, c2, c3, predicted, remainder })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    Simple(usize),
    Projective(usize),
}

/// Predicted predecessors: their number and, where known, the complexes themselves.
#[derive(Clone, Debug)]
pub struct Predecessors {
    pub count: usize,
    pub predicted: Vec<(String, Complex)>,
}

pub fn predecessor_info(engine: &Engine, which: Which) -> Result<Predecessors> {
    let alg = engine.alg();
    let n = alg.n();
    match which {
        Which::Simple(i) => {
            if i < 1 || i > n {
                return Err(Error::IndexOutOfRange(format!("simple {i} of {n}")));
            }
            if i == 1 || i == n {
                return Err(Error::NotApplicable(format!("S{i} lies at the boundary of the quiver")));
            }
            if inj_hom(alg, i as isize - 1, i as isize + 1) != 0 {
                return Ok(Predecessors { count: 1, predicted: Vec::new() });
            }
            let p = alg.proj(i);
            let mut predicted = Vec::new();
            if let Some(rad) = IntervalModule::try_new(p.lo, i - 1) {
                let x = engine.projectivize(&engine.nu(&engine.p(&rad))?)?;
                predicted.push((format!("nu(p({}))", alg.module_alias(&rad)), x));
            }
            let inj = alg.inj(i);
            if let Some(q) = IntervalModule::try_new(i + 1, inj.hi) {
                predicted.push((format!("{}[-1]", alg.module_alias(&q)), engine.p(&q).shift(-1)));
            }
            Ok(Predecessors { count: 2, predicted })
        }
        Which::Projective(i) => {
            if i < 1 || i > n {
                return Err(Error::IndexOutOfRange(format!("projective {i} of {n}")));
            }
            let p = alg.proj(i);
            let nu = alg.inj(i);
            if !alg.is_projective(&nu) && !alg.is_injective(&p) {
                return Err(Error::NotApplicable(format!("P{i} is not injective and nu(P{i}) is not projective")));
            }
            let x = Complex::raw(Kind::Module, 0, vec![vec![p], vec![nu]], vec![Mat::identity(1)]);
            let x = engine.projectivize(&x)?;
            if x.is_zero() {
                return Ok(Predecessors { count: 0, predicted: Vec::new() });
            }
            Ok(Predecessors { count: 1, predicted: vec![(format!("P{i} -> nu(P{i})"), x)] })
        }
    }
}

/// Whether a nonzero map between indecomposable projectives is irreducible among projectives.
pub fn p_irreducible(alg: &AlgebraSpec, f: &CanonicalMap) -> Result<bool> {
    for m in [&f.src, &f.dst] {
        alg.check(m)?;
        if !alg.is_projective(m) {
            return Err(Error::WrongKind(format!("{m} is not projective")));
        }
    }
    if num_traits::Zero::is_zero(&f.scalar) {
        return Err(Error::ZeroMap);
    }
    let (a, b) = (f.src.hi, f.dst.hi);
    Ok(a + 1 == b && !f.dst.is_simple())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn flags_on_examples() {
        let e = Engine::new(AlgebraSpec::a4gamma());
        let s2 = e.module(2, 2).unwrap();
        assert_eq!(pre_conditions(&e, &s2).unwrap().flags(), (true, true, false));
        let m = e.module(2, 3).unwrap();
        let pc = pre_conditions(&e, &m).unwrap();
        assert_eq!(pc.flags(), (true, true, true));
        assert_eq!(pc.expected_count(), 3);
        let l = Engine::new(AlgebraSpec::long_relation(5).unwrap());
        assert_eq!(pre_conditions(&l, &l.module(2, 4).unwrap()).unwrap().flags(), (true, true, true));
    }

    #[test]
    fn predecessors() {
        let e = Engine::new(AlgebraSpec::a4gamma());
        let p4 = predecessor_info(&e, Which::Projective(4)).unwrap();
        assert_eq!(p4.count, 1);
        let m = e.p(&e.module(2, 3).unwrap());
        assert!(e.is_isomorphic(&p4.predicted[0].1, &m));
        assert!(matches!(predecessor_info(&e, Which::Simple(1)), Err(Error::NotApplicable(_))));
        assert_eq!(predecessor_info(&e, Which::Simple(3)).unwrap().count, 1);
    }

    #[test]
    fn irreducible_maps_between_projectives() {
        let a = AlgebraSpec::a4gamma();
        let f = |s: usize, t: usize, k: i64| CanonicalMap::new(a.proj(s), a.proj(t), q(k)).unwrap();
        assert!(p_irreducible(&a, &f(3, 4, 1)).unwrap());
        assert!(p_irreducible(&a, &f(1, 2, 1)).unwrap());
        assert!(!p_irreducible(&a, &f(2, 4, 1)).unwrap());
        assert!(!p_irreducible(&a, &f(3, 3, 1)).unwrap());
        assert!(matches!(p_irreducible(&a, &f(1, 2, 0)), Err(Error::ZeroMap)));
    }
}
