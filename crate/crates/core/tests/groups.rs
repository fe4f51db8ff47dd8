use hamrep::groups::cover::{cover_product, spin_matrices, su2_axis_angle, su2_defect};
use hamrep::groups::{
    cocycle, cocycle_defect, factorize, from_matrix, inverse, matrix_log_generators, product, rational_matmul,
    random_su2, su2_project, to_matrix, wigner_d, CoverParams, GroupParams, WhElement,
};
use hamrep::liealg::{builtin_algebra, Family, Rational};
use nalgebra::{DMatrix, DVector, Matrix2};
use num_complex::Complex64;
use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn v1(x: f64) -> DVector<f64> {
    DVector::from_vec(vec![x])
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn boost_then_time_translation() {
    let mut a = GroupParams::identity(1);
    a.v = v1(1.0);
    let mut b = GroupParams::identity(1);
    b.t = 1.0;
    let g = product(&a, &b).unwrap();
    let mut want = GroupParams::identity(1);
    want.v = v1(1.0);
    want.t = 1.0;
    want.q = v1(1.0);
    want.s = 0.5;
    assert!(g.max_deviation(&want) < 1e-15, "{g:?}");
}

#[test]
fn force_then_time_translation() {
    let mut a = GroupParams::identity(1);
    a.f = v1(1.0);
    let mut b = GroupParams::identity(1);
    b.t = 1.0;
    let g = product(&a, &b).unwrap();
    let mut want = GroupParams::identity(1);
    want.f = v1(1.0);
    want.t = 1.0;
    want.p = v1(1.0);
    want.u = 0.5;
    assert!(g.max_deviation(&want) < 1e-15, "{g:?}");
}

#[test]
fn identity_is_neutral_and_dimensions_checked() {
    let mut r = rng(1);
    let x = GroupParams::random(3, &mut r);
    let e = GroupParams::identity(3);
    assert!(product(&e, &x).unwrap().max_deviation(&x) < 1e-15);
    assert!(product(&x, &e).unwrap().max_deviation(&x) < 1e-15);
    assert!(product(&x, &GroupParams::identity(2)).is_err());
}

#[test]
fn inverse_examples() {
    let mut a = GroupParams::identity(2);
    a.t = 0.7;
    let ai = inverse(&a);
    assert_eq!(ai.t, -0.7);
    assert!(inverse(&GroupParams::identity(2)).max_deviation(&GroupParams::identity(2)) == 0.0);
    let mut b = GroupParams::identity(1);
    b.v = v1(1.0);
    b.t = 1.0;
    b.q = v1(0.3);
    b.s = 0.2;
    let bi = inverse(&b);
    assert!((bi.q[0] - (-0.3 + 1.0)).abs() < 1e-15);
    assert!((bi.s - (-0.2 + 0.3 - 0.5)).abs() < 1e-15);
}

#[test]
fn inverse_is_two_sided() {
    let mut r = rng(2);
    for n in 1..=3 {
        for _ in 0..200 {
            let x = GroupParams::random(n, &mut r);
            let e = GroupParams::identity(n);
            assert!(product(&inverse(&x), &x).unwrap().max_deviation(&e) < 1e-12);
            assert!(product(&x, &inverse(&x)).unwrap().max_deviation(&e) < 1e-12);
        }
    }
}

#[test]
fn product_is_associative() {
    let mut r = rng(3);
    for n in 1..=3 {
        for _ in 0..1000 {
            let (a, b, c) = (GroupParams::random(n, &mut r), GroupParams::random(n, &mut r), GroupParams::random(n, &mut r));
            let lhs = product(&product(&a, &b).unwrap(), &c).unwrap();
            let rhs = product(&a, &product(&b, &c).unwrap()).unwrap();
            assert!(lhs.max_deviation(&rhs) <= 1e-9);
        }
    }
}

#[test]
fn matrix_realization_intertwines_product() {
    let mut r = rng(4);
    for n in 1..=3 {
        for _ in 0..1000 {
            let (a, b) = (GroupParams::random(n, &mut r), GroupParams::random(n, &mut r));
            let lhs = to_matrix(&product(&a, &b).unwrap());
            let rhs = to_matrix(&a) * to_matrix(&b);
            assert!((lhs - rhs).amax() <= 1e-10);
        }
    }
}

#[test]
fn matrix_inverse_matches_closed_form() {
    let mut r = rng(5);
    let a = GroupParams::random(3, &mut r);
    let m = to_matrix(&a).try_inverse().unwrap();
    assert!((m - to_matrix(&inverse(&a))).amax() < 1e-12);
    assert!(from_matrix(&to_matrix(&a)).unwrap().max_deviation(&a) < 1e-15);
}

#[test]
fn matrix_examples() {
    for n in 1..=3 {
        let id = to_matrix(&GroupParams::identity(n));
        assert_eq!(id, DMatrix::identity(2 * n + 6, 2 * n + 6));
        let g = GroupParams::central(n, 1.0, 0.0, 0.0);
        let m = to_matrix(&g);
        let mut want = DMatrix::identity(2 * n + 6, 2 * n + 6);
        want[(2 * n + 4, 2 * n + 5)] = 2.0;
        assert_eq!(m, want);
    }
}

#[test]
fn generators_reproduce_structure_constants() {
    for n in 1..=3 {
        let gens = matrix_log_generators(n).unwrap();
        let alg = builtin_algebra(Family::QuantumHamilton, n).unwrap();
        assert_eq!(gens.len(), alg.dim());
        let size = 2 * n + 6;
        for a in 0..alg.dim() {
            for b in 0..alg.dim() {
                let ab = rational_matmul(&gens[a].1, &gens[b].1);
                let ba = rational_matmul(&gens[b].1, &gens[a].1);
                let mut rhs = vec![vec![Rational::zero(); size]; size];
                for (k, c) in alg.bracket_basis(a, b) {
                    for i in 0..size {
                        for j in 0..size {
                            rhs[i][j] += &c * &gens[k].1[i][j];
                        }
                    }
                }
                for i in 0..size {
                    for j in 0..size {
                        assert_eq!(&ab[i][j] - &ba[i][j], rhs[i][j], "{} {}", alg.basis[a], alg.basis[b]);
                    }
                }
            }
        }
    }
}

#[test]
fn generators_are_derivatives_of_the_realization() {
    use hamrep::liealg::Gen;
    use num_traits::ToPrimitive;
    let n = 3;
    let h = 1e-6;
    for (g, m) in matrix_log_generators(n).unwrap() {
        let at = |x: f64| {
            let mut e = GroupParams::identity(n);
            match g {
                Gen::J(i, j) => {
                    let mut l = DMatrix::zeros(n, n);
                    l[(i, j)] = x;
                    l[(j, i)] = -x;
                    e.rot = l.exp();
                }
                Gen::G(i) => e.v[i] = x,
                Gen::F(i) => e.f[i] = x,
                Gen::R => e.r = 2.0 * x,
                Gen::P(i) => e.q[i] = x,
                Gen::Q(i) => e.p[i] = x,
                Gen::T => e.eps = x,
                Gen::E => e.t = x,
                Gen::M => e.s = x,
                Gen::A => e.u = x,
                Gen::I => e.iota = x,
            }
            to_matrix(&e)
        };
        let fd = (at(h) - at(-h)) / (2.0 * h);
        let exact = DMatrix::from_fn(2 * n + 6, 2 * n + 6, |i, j| m[i][j].to_f64().unwrap());
        assert!((fd - exact).amax() < 1e-8, "{g}");
    }
}

#[test]
fn factorization_examples() {
    let mut r = rng(6);
    let mut rot = GroupParams::identity(3);
    rot.rot = hamrep::groups::random_rotation(3, &mut r);
    let f = factorize(&rot);
    assert_eq!(f.upsilon, GroupParams::identity(3));
    assert_eq!(f.a2, GroupParams::identity(3));
    assert_eq!(f.upsilon_tilde, GroupParams::identity(3));
    assert_eq!(f.rotation, rot);

    let ups = GroupParams::upsilon(DVector::from_vec(vec![1.0, 2.0, 3.0]), 0.5, DVector::from_vec(vec![-1.0, 0.0, 1.0]), 0.3, 0.2);
    let f = factorize(&ups);
    assert_eq!(f.upsilon, ups);
    assert_eq!(f.rotation, GroupParams::identity(3));

    for n in 1..=3 {
        for _ in 0..200 {
            let x = GroupParams::random(n, &mut r);
            assert!(factorize(&x).reassemble().unwrap().max_deviation(&x) < 1e-12);
        }
    }
}

#[test]
fn cocycle_examples() {
    let mut r = rng(7);
    let x = GroupParams::random(2, &mut r).without_center();
    assert_eq!(cocycle(&x, &GroupParams::identity(2)).unwrap(), [0.0, 0.0, 0.0]);
    let mut a = GroupParams::identity(1);
    a.v = v1(1.0);
    let mut b = GroupParams::identity(1);
    b.t = 1.0;
    assert_eq!(cocycle(&a, &b).unwrap(), [0.0, 0.5, 0.0]);
    for _ in 0..200 {
        let (x1, x2, x3) = (GroupParams::random(3, &mut r), GroupParams::random(3, &mut r), GroupParams::random(3, &mut r));
        assert!(cocycle_defect(&x1, &x2, &x3).unwrap() <= 1e-10);
    }
}

#[test]
fn heisenberg_embedding_matches_its_product() {
    let mut r = rng(8);
    for _ in 0..100 {
        let g = GroupParams::random(3, &mut r);
        let h = GroupParams::random(3, &mut r);
        let (a, b) = (WhElement::from_params(&g), WhElement::from_params(&h));
        let via_group = product(&a.embed(), &b.embed()).unwrap();
        assert!(via_group.max_deviation(&a.product(&b).embed()) < 1e-12);
    }
}

#[test]
fn subgroups_close() {
    let mut r = rng(9);
    for family in [Family::Hamilton, Family::Galilei, Family::GalileiConjugate, Family::WeylHeisenberg, Family::Euclidean] {
        for _ in 0..50 {
            let a = GroupParams::random(3, &mut r).restrict(family);
            let b = GroupParams::random(3, &mut r).restrict(family);
            let ab = product(&a, &b).unwrap();
            assert!(ab.max_deviation(&ab.restrict(family)) < 1e-12, "{family}");
        }
    }
}

#[test]
fn json_round_trip() {
    let mut r = rng(10);
    let g = GroupParams::random(3, &mut r);
    let s = g.to_json().unwrap();
    assert!(s.contains("\"R\"") && s.contains("\"eps\"") && s.contains("\"iota\""));
    let back = GroupParams::from_json(&s).unwrap();
    assert!(back.max_deviation(&g) == 0.0);
    let bad = s.replace("\"n\":3", "\"n\":2");
    assert!(GroupParams::from_json(&bad).is_err());
}

fn cmax(m: &DMatrix<Complex64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

#[test]
fn su2_projection_examples() {
    let id = su2_project(&Matrix2::identity()).unwrap();
    assert!((id - nalgebra::Matrix3::identity()).amax() < 1e-15);
    let minus = su2_project(&(-Matrix2::<Complex64>::identity())).unwrap();
    assert!((minus - nalgebra::Matrix3::identity()).amax() < 1e-15);
    let rbar = Matrix2::new(
        Complex64::from_polar(1.0, -std::f64::consts::FRAC_PI_4),
        Complex64::zero(),
        Complex64::zero(),
        Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4),
    );
    let rz = su2_project(&rbar).unwrap();
    let want = nalgebra::Matrix3::new(0.0, -1.0, 0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0);
    assert!((rz - want).amax() < 1e-15);
    assert!(su2_project(&(Matrix2::identity() * Complex64::new(2.0, 0.0))).is_err());
}

#[test]
fn su2_projection_is_a_two_to_one_homomorphism() {
    let mut r = rng(11);
    for _ in 0..200 {
        let (a, b) = (random_su2(&mut r), random_su2(&mut r));
        let lhs = su2_project(&(a * b)).unwrap();
        let rhs = su2_project(&a).unwrap() * su2_project(&b).unwrap();
        assert!((lhs - rhs).amax() <= 1e-10);
        assert!((su2_project(&-a).unwrap() - su2_project(&a).unwrap()).amax() <= 1e-14);
        let p = su2_project(&a).unwrap();
        assert!((p.transpose() * p - nalgebra::Matrix3::identity()).amax() < 1e-12);
        assert!((p.determinant() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn wigner_d_properties() {
    let mut r = rng(12);
    let a = random_su2(&mut r);
    let d = wigner_d(0.5, &a).unwrap();
    assert!((d - DMatrix::from_fn(2, 2, |i, j| a[(i, j)])).iter().all(|z| z.norm() < 1e-15));
    for tj in 0..=6 {
        let j = tj as f64 / 2.0;
        let id = wigner_d(j, &Matrix2::identity()).unwrap();
        assert!(cmax(&(id - DMatrix::identity(tj + 1, tj + 1))) < 1e-14);
        let sign = if tj % 2 == 0 { 1.0 } else { -1.0 };
        let minus = wigner_d(j, &(-Matrix2::<Complex64>::identity())).unwrap();
        assert!(cmax(&(minus - DMatrix::identity(tj + 1, tj + 1) * Complex64::new(sign, 0.0))) < 1e-14);
        for _ in 0..20 {
            let (x, y) = (random_su2(&mut r), random_su2(&mut r));
            let lhs = wigner_d(j, &(x * y)).unwrap();
            let rhs = wigner_d(j, &x).unwrap() * wigner_d(j, &y).unwrap();
            assert!(cmax(&(lhs - rhs)) <= 1e-10);
            let dx = wigner_d(j, &x).unwrap();
            assert!(cmax(&(dx.adjoint() * &dx - DMatrix::identity(tj + 1, tj + 1))) <= 1e-10);
        }
    }
    assert!(wigner_d(0.3, &a).is_err());
    assert!(wigner_d(-0.5, &a).is_err());
}

/// Spin-1 is the rotation representation up to a fixed change of basis: find the
/// intertwiner from two random elements and check it on others.
#[test]
fn spin_one_is_conjugate_to_the_rotation() {
    let mut r = rng(13);
    let samples: Vec<Matrix2<Complex64>> = (0..2).map(|_| random_su2(&mut r)).collect();
    // D U - U R = 0 as a linear system on the 9 entries of U
    let mut rows = Vec::new();
    for s in &samples {
        let d = wigner_d(1.0, s).unwrap();
        let rot = su2_project(s).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let mut row = vec![Complex64::zero(); 9];
                for k in 0..3 {
                    row[k * 3 + j] += d[(i, k)];
                    row[i * 3 + k] -= Complex64::new(rot[(k, j)], 0.0);
                }
                rows.push(row);
            }
        }
    }
    let sys = DMatrix::from_fn(rows.len(), 9, |i, j| rows[i][j]);
    let svd = sys.svd(false, true);
    let vt = svd.v_t.unwrap();
    let (k, smallest) = svd.singular_values.iter().enumerate().fold((0, f64::MAX), |acc, (k, s)| if *s < acc.1 { (k, *s) } else { acc });
    assert!(smallest < 1e-10);
    let u = DMatrix::from_fn(3, 3, |i, j| vt[(k, i * 3 + j)].conj());
    assert!(u.determinant().norm() > 1e-6);
    let ui = u.clone().try_inverse().unwrap();
    for _ in 0..50 {
        let s = random_su2(&mut r);
        let rot = su2_project(&s).unwrap().map(|x| Complex64::new(x, 0.0));
        let rot = DMatrix::from_fn(3, 3, |i, j| rot[(i, j)]);
        let lhs = wigner_d(1.0, &s).unwrap();
        assert!(cmax(&(lhs - &u * rot * &ui)) < 1e-10);
    }
}

#[test]
fn spin_matrices_generate_wigner_d() {
    for tj in 0..=4 {
        let j = tj as f64 / 2.0;
        let s = spin_matrices(j).unwrap();
        for (k, sk) in s.iter().enumerate() {
            assert!(cmax(&(sk.adjoint() - sk)) < 1e-14);
            let mut axis = [0.0; 3];
            axis[k] = 1.0;
            let theta = 0.7;
            let lhs = wigner_d(j, &su2_axis_angle(axis, theta)).unwrap();
            let rhs = (sk * Complex64::new(0.0, -theta)).exp();
            assert!(cmax(&(lhs - rhs)) < 1e-10, "j={j} k={k}");
        }
        // [S_1, S_2] = i S_3
        let comm = &s[0] * &s[1] - &s[1] * &s[0];
        assert!(cmax(&(comm - &s[2] * Complex64::new(0.0, 1.0))) < 1e-12);
    }
}

#[test]
fn cover_elements() {
    let mut r = rng(14);
    for _ in 0..50 {
        let a = CoverParams::random(&mut r);
        let b = CoverParams::random(&mut r);
        let ab = cover_product(&a, &b).unwrap();
        let plain = product(&a.params, &b.params).unwrap();
        assert!(ab.params.max_deviation(&plain) < 1e-12);
        assert!(su2_defect(&ab.rbar) < 1e-12);
        let lifted = CoverParams::lift(&a.params).unwrap();
        assert!(lifted.params.max_deviation(&a.params) < 1e-12);
        assert!((lifted.rbar - a.rbar).iter().all(|z| z.norm() < 1e-9) || (lifted.rbar + a.rbar).iter().all(|z| z.norm() < 1e-9));
    }
}

