use std::f64::consts::PI;

use coxfold_core::affine::{affine_reflection, dihedral_affine_labels, FractionalLabel};
use coxfold_core::folding::{fold_d6_to_h3, fold_e8_to_h4, folded_group_order};
use coxfold_core::group::{
    dihedral_generators, element_order, enumerate_group, order_by_orbit_stabilizer, orbit, simple_reflections,
    DEFAULT_CAP,
};
use coxfold_core::lattice::{lattice_ball, LatticeSpec};
use coxfold_core::project::{coxeter_plane_basis, h_parallel_basis, planar_angle};
use coxfold_core::rootsys::{build_root_system, catalog, DiagramType, RootSystem};
use coxfold_core::{GoldenNumber, Rational, Vector};
use nalgebra::{DMatrix, SymmetricEigen};
use num_bigint::BigUint;
use proptest::prelude::*;

fn sys(s: &str) -> RootSystem {
    build_root_system(&s.parse().unwrap()).unwrap()
}

/// `|W| = Π(mᵢ + 1)` with exponents read off the spectrum of the Coxeter element.
fn order_from_exponents(s: &RootSystem) -> u64 {
    let c = dihedral_generators(s).unwrap().coxeter_element();
    let h = s.coxeter_number as f64;
    let n = c.rows();
    let m = DMatrix::from_fn(n, n, |i, j| c[(i, j)].to_f64());
    let eig = SymmetricEigen::new(&m + m.transpose());
    let mut halves: Vec<u64> = eig
        .eigenvalues
        .iter()
        .map(|l| ((l / 2.0).clamp(-1.0, 1.0).acos() * h / (2.0 * PI)).round() as u64)
        .filter(|&k| k > 0)
        .collect();
    halves.sort();
    let hh = s.coxeter_number;
    let mut exps = Vec::new();
    let mut i = 0;
    while i < halves.len() {
        let k = halves[i];
        if 2 * k == hh {
            exps.push(k);
            i += 1;
        } else {
            exps.push(k);
            exps.push(hh - k);
            i += 2;
        }
    }
    assert_eq!(exps.len(), s.rank(), "{}", s.diagram);
    exps.iter().map(|e| e + 1).product()
}

#[test]
fn group_orders_agree_with_exponent_oracle() {
    for name in ["A4", "B3", "D4", "F4", "G2", "H3", "H4", "E6", "E7", "E8"] {
        let s = sys(name);
        let oracle = BigUint::from(order_from_exponents(&s));
        assert_eq!(catalog(&s.diagram).1, oracle, "{name}");
        assert_eq!(order_by_orbit_stabilizer(&s.simple_roots, &s.ambient), oracle, "{name}");
    }
}

#[test]
fn folded_h_orders_match_oracle() {
    assert_eq!(folded_group_order(&fold_d6_to_h3().unwrap(), DEFAULT_CAP).unwrap(), BigUint::from(120u32));
    assert_eq!(order_from_exponents(&sys("H3")), 120);
    assert_eq!(order_from_exponents(&sys("H4")), 14400);
}

#[test]
fn symmetric_group_orders() {
    let mut fact = 1u64;
    for n in 1..=5usize {
        fact *= n as u64 + 1;
        let order = enumerate_group(&simple_reflections(&sys(&format!("A{n}"))).unwrap(), DEFAULT_CAP).unwrap();
        assert_eq!(order, BigUint::from(fact));
    }
}

#[test]
fn coxeter_element_order_matches_catalog() {
    for name in ["A2", "A7", "B4", "C5", "D5", "D7", "E6", "E7", "E8", "F4", "G2", "H3", "H4", "I2(5)", "H2"] {
        let s = sys(name);
        let c = dihedral_generators(&s).unwrap().coxeter_element();
        assert_eq!(element_order(&c, 100), Some(catalog(&s.diagram).0), "{name}");
    }
}

#[test]
fn projected_root_shells_are_one_plus_minus_inverse_sqrt5() {
    let lo = 1.0 - 1.0 / 5f64.sqrt();
    let hi = 1.0 + 1.0 / 5f64.sqrt();
    for map in [fold_d6_to_h3().unwrap(), fold_e8_to_h4().unwrap()] {
        let basis = h_parallel_basis(&map).unwrap();
        let roots = orbit(&simple_reflections(&map.source).unwrap(), &map.source.simple_roots[0], DEFAULT_CAP).unwrap();
        let (mut n_lo, mut n_hi) = (0, 0);
        for r in &roots.points {
            let par: f64 = basis.image(r).iter().map(|x| x * x).sum();
            let perp = r.dot(r).to_f64() - par;
            if (par - lo).abs() < 1e-12 && (perp - hi).abs() < 1e-12 {
                n_lo += 1;
            } else if (par - hi).abs() < 1e-12 && (perp - lo).abs() < 1e-12 {
                n_hi += 1;
            } else {
                panic!("{}: unexpected parallel norm {par}", map.name());
            }
        }
        assert_eq!(n_lo, n_hi);
        assert_eq!(n_lo + n_hi, roots.len());
    }
}

#[test]
fn a3_image_has_four_fold_symmetry() {
    let a3 = lattice_ball(&LatticeSpec::ARoot(3), &Rational::from_i64(6), DEFAULT_CAP).unwrap();
    let basis = coxeter_plane_basis(&sys("A3")).unwrap();
    let img = coxfold_core::project::project(&a3, &basis, 1e-8).unwrap();
    assert!(coxfold_core::project::rotation_invariance_check(&img, 4, 1e-9));
    assert!(!coxfold_core::project::rotation_invariance_check(&img, 3, 1e-9));
}

#[test]
fn label_candidates_are_reduced() {
    for h in 3..=60 {
        let l = dihedral_affine_labels(h).unwrap();
        for x in [l.minus, l.plus, l.double] {
            let (p, q) = (x.p(), x.q());
            assert!(p >= 2 && q >= 1 && q < p);
            assert_eq!(num_integer::gcd(p, q), 1);
        }
        assert_eq!(l.minus.p() * (h - 2), 2 * h * l.minus.q());
        assert_eq!(l.double.p() * (h - 1), 2 * h * l.double.q());
    }
    assert!(FractionalLabel::new(1, 1).is_err());
}

fn int_vec(dim: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, dim)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn orbit_independent_of_generator_order(seed in int_vec(5), perm in Just((0..5usize).collect::<Vec<_>>()).prop_shuffle()) {
        let s = sys("D5");
        let gens = simple_reflections(&s).unwrap();
        let shuffled: Vec<_> = perm.iter().map(|&i| gens[i].clone()).collect();
        let v = Vector::from_ints(&seed);
        let a = orbit(&gens, &v, DEFAULT_CAP).unwrap();
        let b = orbit(&shuffled, &v, DEFAULT_CAP).unwrap();
        prop_assert_eq!(a.points, b.points);
    }

    #[test]
    fn affine_reflection_is_isometric_involution(alpha in int_vec(4), lambda in int_vec(4), mu in int_vec(4), n in -3i64..=3) {
        let alpha = Vector::from_ints(&alpha);
        prop_assume!(!alpha.is_zero());
        let ambient = coxfold_core::rootsys::Ambient::Euclidean(4);
        let r = affine_reflection(&alpha, n, &ambient).unwrap();
        let (l, m) = (Vector::from_ints(&lambda), Vector::from_ints(&mu));
        prop_assert_eq!(r.apply(&r.apply(&l)), l.clone());
        let d = &l - &m;
        let e = &r.apply(&l) - &r.apply(&m);
        prop_assert_eq!(d.dot(&d), e.dot(&e));
        // points on the hyperplane (λ,α) = n stay put
        let shift = GoldenNumber::int(n) - l.dot(&alpha);
        let on = &l + &alpha.scale(&(shift * alpha.dot(&alpha).inverse().unwrap()));
        prop_assert_eq!(r.apply(&on), on);
    }

    #[test]
    fn projection_intertwines_coxeter_element(coords in int_vec(8)) {
        let s = sys("E8");
        let basis = coxeter_plane_basis(&s).unwrap();
        let c = dihedral_generators(&s).unwrap().coxeter_element();
        let v = Vector::from_ints(&coords);
        let pv = basis.image(&v);
        let pcv = basis.image(&c.apply(&v));
        let theta = planar_angle(&basis.restrict(&c));
        let (sn, cs) = theta.sin_cos();
        prop_assert!((pcv[0] - (cs * pv[0] - sn * pv[1])).abs() < 1e-9);
        prop_assert!((pcv[1] - (sn * pv[0] + cs * pv[1])).abs() < 1e-9);
    }
}

#[test]
fn group_action_preserves_lattice_ball() {
    let s = sys("E8");
    let ball = lattice_ball(&LatticeSpec::Root(DiagramType::e(8)), &Rational::from_i64(4), DEFAULT_CAP).unwrap();
    assert_eq!(ball.len(), 1 + 240 + 2160);
    assert!(ball.is_invariant(&simple_reflections(&s).unwrap()));
}
