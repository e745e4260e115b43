mod common;

use arq_core::algebra::{compose_scalar, hom_interval};
use arq_core::ar::{build_component, Which};
use arq_core::complex::descriptor::{format, parse};
use arq_core::homalg::{gdim_bound, gldim};
use arq_core::linalg::q;
use arq_core::rep::{rep_hom_dim, rep_of_sum};
use arq_core::{
    cone, decompose_rep, AlgebraSpec, CanonicalMap, ChainMap, Complex, Direction, Engine, IntervalModule, Kind,
    LinearRepresentation, Mat,
};
use proptest::prelude::*;

use common::{all_algebras_up_to, engine, families};

fn algebra(max_n: usize) -> impl Strategy<Value = AlgebraSpec> {
    (1..=max_n, any::<u32>()).prop_filter_map("redundant relation set", |(n, mask)| {
        let cands: Vec<(usize, usize)> = (1..=n).flat_map(|u| (u + 2..=n).map(move |v| (u, v))).collect();
        let rels: Vec<(usize, usize)> = (0..cands.len()).filter(|i| mask >> i & 1 == 1).map(|i| cands[i]).collect();
        AlgebraSpec::new(n, &rels).ok()
    })
}

/// An algebra together with indices selecting indecomposables of it.
fn algebra_with_picks(max_n: usize, picks: usize) -> impl Strategy<Value = (AlgebraSpec, Vec<IntervalModule>)> {
    (algebra(max_n), proptest::collection::vec(any::<prop::sample::Index>(), picks)).prop_map(|(a, idx)| {
        let mods = a.indecomposables();
        let chosen = idx.iter().map(|i| mods[i.index(mods.len())]).collect();
        (a, chosen)
    })
}

fn sum(parts: &[Complex]) -> Complex {
    Complex::direct_sum_all(Kind::Projective, parts).unwrap()
}

/// A chain map from the hom space basis with the given coefficients, cycled as needed.
fn map_with(e: &Engine, x: &Complex, y: &Complex, coeffs: &[i64]) -> ChainMap {
    let h = e.hom(x, y);
    let c: Vec<_> = (0..h.cycles.len()).map(|i| q(coeffs[i % coeffs.len()])).collect();
    h.cycle_combine(&c)
}

fn random_cone(e: &Engine, mods: &[IntervalModule], shifts: &[i32], coeffs: &[i64]) -> Complex {
    let x = sum(&[e.p(&mods[0]), e.p(&mods[1])]);
    let y = sum(&[e.p(&mods[2]).shift(shifts[0]), e.p(&mods[3]).shift(shifts[1]), e.p(&mods[0])]);
    cone(&map_with(e, &x, &y, coeffs)).unwrap()
}

/// Conjugates every arrow map by random invertible triangular base changes.
fn scramble(rep: &LinearRepresentation, seeds: &[i64]) -> LinearRepresentation {
    let mut k = 0;
    let mut next = || {
        k += 1;
        seeds[k % seeds.len()]
    };
    let changes: Vec<Mat> = rep
        .dims
        .iter()
        .map(|&d| {
            let mut g = Mat::identity(d);
            for r in 0..d {
                for c in r + 1..d {
                    g.set(r, c, q(next()));
                }
            }
            g
        })
        .collect();
    let maps = rep
        .maps
        .iter()
        .enumerate()
        .map(|(i, m)| changes[i].mul(m).mul(&changes[i + 1].inverse().unwrap()))
        .collect();
    LinearRepresentation::new(rep.dims.clone(), maps).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn composition_is_associative((a, ms) in algebra_with_picks(6, 4), k in proptest::collection::vec(-3i64..=3, 3)) {
        let maps = [(ms[0], ms[1], k[0]), (ms[1], ms[2], k[1]), (ms[2], ms[3], k[2])];
        prop_assume!(maps.iter().all(|(s, t, _)| hom_interval(s, t) == 1));
        let [f, g, h] = maps.map(|(s, t, c)| CanonicalMap::new(s, t, q(c)).unwrap());
        let left = compose_scalar(&compose_scalar(&f, &g).unwrap(), &h).unwrap();
        let right = compose_scalar(&f, &compose_scalar(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert!(a.n() >= 1);
    }

    #[test]
    fn hom_formula_matches_oracle((a, ms) in algebra_with_picks(6, 2)) {
        let oracle = rep_hom_dim(&rep_of_sum(a.n(), [ms[0]]), &rep_of_sum(a.n(), [ms[1]]));
        prop_assert_eq!(oracle, hom_interval(&ms[0], &ms[1]));
    }

    #[test]
    fn rep_decomposition_round_trips((a, mut ms) in algebra_with_picks(6, 5), seeds in proptest::collection::vec(-4i64..=4, 1..8)) {
        let rep = scramble(&rep_of_sum(a.n(), ms.iter().copied()), &seeds);
        let mut got = decompose_rep(&rep).unwrap();
        got.sort();
        ms.sort();
        prop_assert_eq!(got, ms);
    }

    #[test]
    fn minimize_is_idempotent_and_keeps_homology(
        (a, ms) in algebra_with_picks(5, 4),
        shifts in proptest::collection::vec(-1i32..=1, 2),
        coeffs in proptest::collection::vec(-2i64..=2, 1..5),
    ) {
        let e = engine(&a);
        let c = random_cone(&e, &ms, &shifts, &coeffs);
        let m = e.minimize_full(&c);
        prop_assert!(m.complex.is_minimal());
        prop_assert_eq!(e.homology(&m.complex), e.homology(&c));
        prop_assert_eq!(e.euler(&m.complex), e.euler(&c));
        let again = e.minimize_full(&m.complex);
        prop_assert!(again.stripped.is_empty());
        prop_assert_eq!(format(&again.complex), format(&m.complex));
        prop_assert_eq!(m.complex.summand_count() + 2 * m.stripped.len(), c.summand_count());
    }

    #[test]
    fn decomposition_reassembles(
        (a, ms) in algebra_with_picks(5, 4),
        shifts in proptest::collection::vec(-1i32..=1, 2),
        coeffs in proptest::collection::vec(-2i64..=2, 1..5),
    ) {
        let e = engine(&a);
        let c = e.minimize(&random_cone(&e, &ms, &shifts, &coeffs));
        let parts = e.decompose(&c).unwrap();
        let all: Vec<Complex> = parts.iter().flat_map(|(p, k)| std::iter::repeat_n(p.clone(), *k)).collect();
        prop_assert!(all.iter().all(|p| e.is_indecomposable(p)));
        prop_assert!(e.is_isomorphic(&sum(&all), &c));
    }

    #[test]
    fn changes_of_representation_keep_homology(
        (a, ms) in algebra_with_picks(5, 4),
        shifts in proptest::collection::vec(-1i32..=1, 2),
        coeffs in proptest::collection::vec(-2i64..=2, 1..5),
    ) {
        let e = engine(&a);
        let c = random_cone(&e, &ms, &shifts, &coeffs);
        let i = e.injectivize(&c).unwrap();
        prop_assert_eq!(e.homology(&i), e.homology(&c));
        let p = e.projectivize(&i).unwrap();
        prop_assert!(e.is_isomorphic(&p, &c));
        let dd = e.opposite().dual(&e.dual(&c));
        prop_assert_eq!(format(&dd), format(&c));
    }

    #[test]
    fn descriptors_round_trip(
        (a, ms) in algebra_with_picks(5, 4),
        shifts in proptest::collection::vec(-1i32..=1, 2),
        coeffs in proptest::collection::vec(-2i64..=2, 1..5),
    ) {
        let e = engine(&a);
        let c = random_cone(&e, &ms, &shifts, &coeffs);
        let back = parse(&a, &format(&c)).unwrap();
        prop_assert_eq!(format(&back), format(&c));
    }

    #[test]
    fn serre_duality_dimensions((a, ms) in algebra_with_picks(6, 2), k in -2i32..=2) {
        let e = engine(&a);
        let x = e.p(&ms[0]);
        let y = e.p(&ms[1]).shift(k);
        let nx = e.nu(&x).unwrap();
        prop_assert_eq!(e.hom(&x, &y).dim(), e.hom(&y, &nx).dim());
    }

    #[test]
    fn gdim_bounds_gldim(a in algebra(7)) {
        prop_assert!(gdim_bound(&a) >= gldim(&a));
    }
}

#[test]
fn rad_square_is_the_only_maximal_gldim() {
    for a in all_algebras_up_to(6).into_iter().filter(|a| a.n() >= 3) {
        let all_short = a.relations().len() == a.n() - 2 && a.relations().iter().all(|r| r.len() == 3);
        assert_eq!(gldim(&a) == a.n() - 1, all_short, "{:?}", a.relations());
    }
}

#[test]
fn knitted_triangles_have_the_ar_property_and_tau_inverts() {
    for (name, alg) in families(5) {
        if alg.n() < 2 {
            continue;
        }
        let e = engine(&alg);
        let comp = build_component(&e, &e.p(&IntervalModule::new(1, 1)), 400).unwrap();
        assert!(comp.closed, "{name}");
        for v in &comp.vertices {
            let tri = e.ar_triangle_ending(&v.rep).unwrap();
            assert!(e.has_ar_property(&tri), "{name}: {}", v.descriptor);
            let down = e.tau(&v.rep, Direction::Forward).unwrap();
            assert!(e.is_isomorphic(&e.tau(&down, Direction::Inverse).unwrap(), &v.rep), "{name}");
            let up = e.tau(&v.rep, Direction::Inverse).unwrap();
            assert!(e.is_isomorphic(&e.tau(&up, Direction::Forward).unwrap(), &v.rep), "{name}");
            let l_p = |x: &Complex| e.l_p(x).unwrap();
            let mid = tri.middle_complex.summand_count();
            assert!(mid <= l_p(&tri.start) + l_p(&tri.end));
        }
    }
}

#[test]
fn projective_predecessors_when_defined() {
    for (name, alg) in families(6) {
        let e = engine(&alg);
        for i in 1..=alg.n() {
            let Ok(info) = arq_core::ar::predecessor_info(&e, Which::Projective(i)) else {
                continue;
            };
            let tri = e.ar_triangle_ending(&e.p(&alg.proj(i))).unwrap();
            assert_eq!(tri.middle_count(), info.count, "{name} P{i}");
            if info.count == 1 {
                assert!(e.is_isomorphic(&tri.middle[0].0, &info.predicted[0].1), "{name} P{i}");
            }
        }
    }
}
