//! Algebra-aware operations on complexes: the Nakayama functor, duality, changes of
//! representation, isomorphism testing, decomposition and `l_p`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraSpec, IntervalModule};
use crate::complex::endo::{is_string_indecomposable, lift_idempotent, split_image, EndAlgebra};
use crate::complex::hom::{Graded, HomSpace};
use crate::complex::homology::homology;
use crate::complex::iso::find_isomorphism_minimal;
use crate::complex::minimize::{minimize, minimize_with_maps, Minimized};
use crate::complex::{cone, descriptor, ChainMap, Complex, Kind};
use crate::error::{Error, Result};
use crate::homalg;
use crate::linalg::{Mat, Q};

pub const DEFAULT_SEED: u64 = 0x5eed_a11e;

#[derive(Clone, Debug)]
pub struct Engine {
    alg: Arc<AlgebraSpec>,
    seed: u64,
}

impl Engine {
    pub fn new(alg: AlgebraSpec) -> Self {
        Engine::with_seed(alg, DEFAULT_SEED)
    }

    pub fn with_seed(alg: AlgebraSpec, seed: u64) -> Self {
        Engine { alg: Arc::new(alg), seed }
    }

    pub fn alg(&self) -> &AlgebraSpec {
        &self.alg
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub(crate) fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    pub fn opposite(&self) -> Engine {
        Engine { alg: Arc::new(self.alg.opposite()), seed: self.seed }
    }

    // ---- construction helpers ----

    pub fn module(&self, lo: usize, hi: usize) -> Result<IntervalModule> {
        let m = IntervalModule::try_new(lo, hi).ok_or_else(|| Error::InvalidModule(format!("[{lo},{hi}]")))?;
        self.alg.check(&m)?;
        Ok(m)
    }

    /// The stalk complex of `M` in degree 0, as a complex of modules.
    pub fn stalk(&self, m: &IntervalModule) -> Complex {
        Complex::stalk(Kind::Module, 0, vec![*m])
    }

    /// The minimal projective resolution `pM`.
    pub fn p(&self, m: &IntervalModule) -> Complex {
        homalg::proj_resolution(&self.alg, Some(m)).expect("valid module")
    }

    pub fn i(&self, m: &IntervalModule) -> Complex {
        homalg::inj_resolution(&self.alg, Some(m)).expect("valid module")
    }

    pub fn homology(&self, x: &Complex) -> BTreeMap<i32, Vec<IntervalModule>> {
        homology(x, self.alg.n())
    }

    pub fn minimize(&self, x: &Complex) -> Complex {
        minimize(x).complex
    }

    pub fn minimize_full(&self, x: &Complex) -> Minimized {
        minimize(x)
    }

    pub fn describe(&self, x: &Complex) -> String {
        descriptor::format(x)
    }

    pub fn parse(&self, text: &str) -> Result<Complex> {
        descriptor::parse(&self.alg, text)
    }

    pub fn canonical(&self, x: &Complex) -> Complex {
        descriptor::canonical(x)
    }

    // ---- Nakayama functor and duality ----

    pub fn nu(&self, x: &Complex) -> Result<Complex> {
        if x.kind() != Kind::Projective && !x.is_zero() {
            return Err(Error::WrongKind("the Nakayama functor needs a complex of projectives".into()));
        }
        Ok(x.map_summands(Kind::Injective, |m| self.alg.inj(m.hi)))
    }

    pub fn nu_inv(&self, x: &Complex) -> Result<Complex> {
        if x.kind() != Kind::Injective && !x.is_zero() {
            return Err(Error::WrongKind("the inverse Nakayama functor needs a complex of injectives".into()));
        }
        Ok(x.map_summands(Kind::Projective, |m| self.alg.proj(m.lo)))
    }

    /// `D X`, a complex over the opposite algebra: `(DX)^k = D(X^{-k})`, transposed maps.
    pub fn dual(&self, x: &Complex) -> Complex {
        let Some((lo, hi)) = x.range() else {
            return Complex::zero(x.kind().dual());
        };
        let degrees = (lo..=hi).map(|k| (-k, x.term(k).iter().map(|m| self.alg.reflect(m)).collect())).collect();
        let diffs = (lo..hi).map(|k| (-k - 1, x.diff(k).transpose())).collect();
        Complex::from_maps(x.kind().dual(), &degrees, &diffs)
    }

    /// `D f: D Y -> D X` for `f: X -> Y`, given the dual complexes.
    fn dual_map(&self, f: &ChainMap, dy: Arc<Complex>, dx: Arc<Complex>) -> ChainMap {
        let comps = f.comps().iter().map(|(k, m)| (-k, m.transpose())).collect();
        ChainMap::new(dy, dx, comps)
    }

    // ---- changes of representation ----

    pub fn projectivize(&self, x: &Complex) -> Result<Complex> {
        Ok(self.projectivize_with_map(x)?.0)
    }

    /// A minimal complex of projectives `P` with a quasi-isomorphism `P -> X`.
    pub fn projectivize_with_map(&self, x: &Complex) -> Result<(Complex, ChainMap)> {
        if x.kind() == Kind::Projective || x.is_zero() {
            let m = minimize_with_maps(x);
            return Ok((m.complex, m.inclusion.unwrap()));
        }
        if x.degrees().all(|k| x.term(k).iter().all(|m| self.alg.is_projective(m))) {
            let p = x.clone().with_kind(Kind::Projective);
            let m = minimize_with_maps(&p);
            let q = retarget(&m.inclusion.unwrap(), Arc::new(x.clone()));
            return Ok((m.complex, q));
        }
        let (c, phi) = self.resolve(x)?;
        let m = minimize_with_maps(&c);
        let q = m.inclusion.unwrap().then(&phi);
        debug_assert!(q.is_chain_map());
        Ok((m.complex, q))
    }

    pub fn injectivize(&self, x: &Complex) -> Result<Complex> {
        Ok(self.injectivize_with_map(x)?.0)
    }

    /// A minimal complex of injectives `I` with a quasi-isomorphism `X -> I`.
    pub fn injectivize_with_map(&self, x: &Complex) -> Result<(Complex, ChainMap)> {
        if x.kind() == Kind::Injective || x.is_zero() {
            let m = minimize_with_maps(x);
            return Ok((m.complex, m.projection.unwrap()));
        }
        let opp = self.opposite();
        let dx = self.dual(x);
        let (p, q) = opp.projectivize_with_map(&dx)?;
        let i = opp.dual(&p);
        let map = opp.dual_map(&q, Arc::new(x.clone()), Arc::new(i.clone()));
        Ok((i, map))
    }

    /// Resolution by induction on the number of degrees: `X = cone(S[-1] -> X')` where `S`
    /// is the lowest term and `X'` the rest.
    fn resolve(&self, x: &Complex) -> Result<(Complex, ChainMap)> {
        let (lo, hi) = x.range().expect("nonzero complex");
        let xa = Arc::new(x.clone());
        if lo == hi {
            return Ok(self.resolve_stalk(lo, x.term(lo), xa));
        }
        let rest = Arc::new(x.truncate_ge(lo + 1));
        let s = Arc::new(x.truncate_le(lo).shift(-1));
        let (pr, qr) = self.resolve(&rest)?;
        let (ps, eps) = self.resolve_stalk(lo, x.term(lo), Arc::new(x.truncate_le(lo)));
        let a = Arc::new(ps.shift(-1));
        let pr = Arc::new(pr);
        let eps = ChainMap::new(a.clone(), s.clone(), eps.shift(-1).comps().clone());
        let g = ChainMap::new(s.clone(), rest.clone(), [(lo + 1, x.diff(lo))].into());

        // unknowns: gt in Hom^0(A, P'), h in Hom^{-1}(A, X')
        let c0 = Graded::new(&a, &pr, 0);
        let c1 = Graded::new(&a, &pr, 1);
        let h0 = Graded::new(&a, &rest, -1);
        let t0 = Graded::new(&a, &rest, 0);
        let (n1, n2) = (c0.len(), h0.len());
        let mut rows: Vec<Vec<Q>> = Vec::new();
        let mut rhs: Vec<Q> = Vec::new();
        if !c1.is_empty() && n1 > 0 {
            let d = c0.differential(&a, &pr, &c1);
            for r in 0..d.rows() {
                let mut row = d.row(r);
                row.extend(std::iter::repeat_n(Q::zero(), n2));
                rows.push(row);
                rhs.push(Q::zero());
            }
        }
        // q' gt - (d h + h d) = g eps
        let mut block = Mat::zeros(t0.len(), n1 + n2);
        for i in 0..n1 {
            let mut u = vec![Q::zero(); n1];
            u[i] = Q::from_integer(1.into());
            let f = ChainMap::new(a.clone(), pr.clone(), c0.to_maps(&a, &pr, &u));
            let col = t0.from_maps(f.then(&qr).comps());
            for (r, v) in col.into_iter().enumerate() {
                block.set(r, i, v);
            }
        }
        if n2 > 0 {
            let dh = h0.differential(&a, &rest, &t0);
            for r in 0..t0.len() {
                for j in 0..n2 {
                    block.set(r, n1 + j, -dh.get(r, j).clone());
                }
            }
        }
        let target = t0.from_maps(eps.then(&g).comps());
        for r in 0..block.rows() {
            rows.push(block.row(r));
            rhs.push(target[r].clone());
        }
        let sol = if rows.is_empty() {
            vec![Q::zero(); n1 + n2]
        } else {
            Mat::from_rows(rows)
                .solve(&rhs)
                .ok_or_else(|| Error::DecompositionFailure("no lift of the attaching map".into()))?
        };
        let gt = ChainMap::new(a.clone(), pr.clone(), c0.to_maps(&a, &pr, &sol[..n1]));
        let h = h0.to_maps(&a, &rest, &sol[n1..]);
        let c = cone(&gt)?;

        // phi^j = [[eps^{j+1}, 0], [h^{j+1}, q'^j]] : A^{j+1} (+) P'^j -> S[-1]^{j+1} (+) X'^j
        let mut comps = BTreeMap::new();
        for j in c.degrees() {
            let (na, np) = (a.term(j + 1).len(), pr.term(j).len());
            let (ns, nx) = (s.term(j + 1).len(), rest.term(j).len());
            let mut m = Mat::zeros(ns + nx, na + np);
            let e = eps.comp(j + 1);
            let hj = h.get(&(j + 1)).cloned().unwrap_or_else(|| Mat::zeros(nx, na));
            let qj = qr.comp(j);
            for r in 0..ns {
                for cc in 0..na {
                    m.set(r, cc, e.get(r, cc).clone());
                }
            }
            for r in 0..nx {
                for cc in 0..na {
                    m.set(ns + r, cc, hj.get(r, cc).clone());
                }
                for cc in 0..np {
                    m.set(ns + r, na + cc, qj.get(r, cc).clone());
                }
            }
            comps.insert(j, m);
        }
        let phi = ChainMap::new(Arc::new(c.clone()), xa, comps);
        debug_assert!(phi.is_chain_map());
        Ok((c, phi))
    }

    /// Direct sum of the resolutions of the summands of a single term in degree `k`.
    fn resolve_stalk(&self, k: i32, summands: &[IntervalModule], target: Arc<Complex>) -> (Complex, ChainMap) {
        let parts: Vec<Complex> = summands.iter().map(|m| self.p(m).shift(-k)).collect();
        let p = Complex::direct_sum_all(Kind::Projective, &parts).expect("same kind");
        let mut e = Mat::zeros(summands.len(), summands.len());
        for i in 0..summands.len() {
            e.set(i, i, Q::from_integer(1.into()));
        }
        let p = Arc::new(p);
        let map = ChainMap::new(p.clone(), target, [(k, e)].into());
        ((*p).clone(), map)
    }

    // ---- homs, isomorphism, decomposition ----

    pub fn hom(&self, x: &Complex, y: &Complex) -> HomSpace {
        HomSpace::new(Arc::new(x.clone()), Arc::new(y.clone()))
    }

    pub fn is_isomorphic(&self, x: &Complex, y: &Complex) -> bool {
        self.find_isomorphism(x, y).is_some()
    }

    /// An isomorphism between the minimal forms of `x` and `y`.
    pub fn find_isomorphism(&self, x: &Complex, y: &Complex) -> Option<ChainMap> {
        let xm = minimize(x).complex;
        let ym = minimize(y).complex;
        if xm.is_zero() || ym.is_zero() {
            return (xm.is_zero() && ym.is_zero()).then(|| ChainMap::zero(Arc::new(xm), Arc::new(ym)));
        }
        if xm.kind() != ym.kind() || xm.summand_multiset() != ym.summand_multiset() {
            return None;
        }
        if self.homology(&xm) != self.homology(&ym) {
            return None;
        }
        find_isomorphism_minimal(Arc::new(xm), Arc::new(ym), &mut self.rng())
    }

    pub fn end_algebra(&self, x: &Complex) -> EndAlgebra {
        EndAlgebra::new(Arc::new(minimize(x).complex))
    }

    pub fn is_indecomposable(&self, x: &Complex) -> bool {
        let m = minimize(x).complex;
        !m.is_zero() && (is_string_indecomposable(&m) || EndAlgebra::new(Arc::new(m)).is_local())
    }

    /// Indecomposable summands of `X` with multiplicities, in canonical form.
    pub fn decompose(&self, x: &Complex) -> Result<Vec<(Complex, usize)>> {
        let m = minimize(x).complex;
        let mut rng = self.rng();
        let mut parts = Vec::new();
        self.split_rec(m.clone(), &mut rng, &mut parts, 0)?;
        let total = Complex::direct_sum_all(m.kind(), &parts)?;
        if !self.is_isomorphic(&total, &m) {
            return Err(Error::DecompositionFailure("summands do not reassemble the complex".into()));
        }
        let mut grouped: Vec<(Complex, usize)> = Vec::new();
        for p in parts {
            match grouped.iter_mut().find(|(q, _)| self.is_isomorphic(q, &p)) {
                Some(entry) => entry.1 += 1,
                None => grouped.push((descriptor::canonical(&p), 1)),
            }
        }
        grouped.sort_by_key(|(c, _)| descriptor::format(c));
        Ok(grouped)
    }

    /// Summands without multiplicities, each repeated.
    pub fn summands(&self, x: &Complex) -> Result<Vec<Complex>> {
        Ok(self.decompose(x)?.into_iter().flat_map(|(c, k)| std::iter::repeat_n(c, k)).collect())
    }

    fn split_rec(&self, x: Complex, rng: &mut ChaCha8Rng, out: &mut Vec<Complex>, depth: usize) -> Result<()> {
        if x.is_zero() {
            return Ok(());
        }
        if is_string_indecomposable(&x) {
            out.push(x);
            return Ok(());
        }
        let xa = Arc::new(x);
        let end = EndAlgebra::new(xa.clone());
        if end.dim() == 0 {
            return Err(Error::DecompositionFailure("nonzero complex with zero endomorphism ring".into()));
        }
        if end.is_local() {
            out.push((*xa).clone());
            return Ok(());
        }
        if depth > 64 {
            return Err(Error::DecompositionFailure("recursion too deep".into()));
        }
        let idem = end
            .find_idempotent(rng)
            .ok_or_else(|| Error::DecompositionFailure("no idempotent found in a non-local ring".into()))?;
        let e = lift_idempotent(&end.element(&idem))?;
        let one_minus = ChainMap::identity(xa.clone()).sub(&e);
        let (y, _, _) = split_image(&xa, &e)?;
        let (z, _, _) = split_image(&xa, &one_minus)?;
        if y.summand_count() + z.summand_count() != xa.summand_count() {
            return Err(Error::DecompositionFailure("image and kernel do not fill the complex".into()));
        }
        self.split_rec(minimize(&y).complex, rng, out, depth + 1)?;
        self.split_rec(minimize(&z).complex, rng, out, depth + 1)
    }

    pub fn l_p(&self, x: &Complex) -> Result<usize> {
        if x.kind() != Kind::Projective && !x.is_zero() {
            return Err(Error::WrongKind("l_p is defined on complexes of projectives".into()));
        }
        Ok(minimize(x).complex.summand_count())
    }

    /// `X ~ R[t]` with the lowest homology of `R` in degree 0; returns `(R, t)`.
    pub fn normalize_shift(&self, x: &Complex) -> (Complex, i32) {
        match self.homology(x).keys().next() {
            Some(&h) => (x.shift(h), -h),
            None => (x.clone(), 0),
        }
    }

    /// Euler characteristic per vertex.
    pub fn euler(&self, x: &Complex) -> Vec<i64> {
        crate::complex::homology::to_rep(x, self.alg.n()).euler(self.alg.n())
    }

    pub fn is_zero_in_k(&self, x: &Complex) -> bool {
        minimize(x).complex.is_zero()
    }

    /// The scalar of a chain map between two stalks with one summand each.
    pub fn single_scalar(f: &ChainMap) -> Option<Q> {
        let nz: Vec<&Mat> = f.comps().values().filter(|m| !m.is_zero()).collect();
        (nz.len() == 1 && nz[0].rows() == 1 && nz[0].cols() == 1).then(|| nz[0].get(0, 0).clone())
    }
}

/// The same components with a different target complex of identical shape.
fn retarget(f: &ChainMap, dst: Arc<Complex>) -> ChainMap {
    ChainMap::new(f.src.clone(), dst, f.comps().clone())
}
