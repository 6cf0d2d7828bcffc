use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rug::ops::Pow;
use rug::{Complex, Float, Rational};
use waring_core::apolarity::apolar_pairings;
use waring_core::decompose::separation_bound;
use waring_core::linalg::random_prime_62;
use waring_core::oracle::jacobian_check;
use waring_core::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::from((n, d))
}

fn arb_form(max_d: usize) -> impl Strategy<Value = BinaryForm> {
    (0..=max_d).prop_flat_map(|d| {
        prop::collection::vec((-9i64..=9, 1i64..=4), d + 1).prop_map(move |cs| {
            BinaryForm::new(d, cs.into_iter().map(|(n, m)| q(n, m)).collect()).unwrap()
        })
    })
}

fn arb_nonzero_form(min_d: usize, max_d: usize) -> impl Strategy<Value = BinaryForm> {
    (min_d..=max_d).prop_flat_map(|d| {
        prop::collection::vec(-9i64..=9, d + 1).prop_filter_map("zero form", move |cs| {
            let f = BinaryForm::from_ints(&cs);
            (!f.is_zero()).then_some(f)
        })
    })
}

fn arb_invertible() -> impl Strategy<Value = [[Rational; 2]; 2]> {
    prop::array::uniform4(-5i64..=5)
        .prop_filter("singular", |a| a[0] * a[3] - a[1] * a[2] != 0)
        .prop_map(|a| [[q(a[0], 1), q(a[1], 1)], [q(a[2], 1), q(a[3], 1)]])
}

fn inverse(a: &[[Rational; 2]; 2]) -> [[Rational; 2]; 2] {
    let det = Rational::from(&a[0][0] * &a[1][1]) - Rational::from(&a[0][1] * &a[1][0]);
    [
        [Rational::from(&a[1][1] / &det), -Rational::from(&a[0][1] / &det)],
        [-Rational::from(&a[1][0] / &det), Rational::from(&a[0][0] / &det)],
    ]
}

fn arb_matrix() -> impl Strategy<Value = RationalMatrix> {
    (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| {
        prop::collection::vec(-3i64..=3, r * c)
            .prop_map(move |e| RationalMatrix::new(r, c, e.into_iter().map(Rational::from).collect()).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dual_coordinates_invert(f in arb_form(12)) {
        prop_assert_eq!(f.dual_coords().to_form(), f);
    }

    #[test]
    fn substitution_by_inverse_is_identity(f in arb_form(8), a in arb_invertible()) {
        prop_assert_eq!(f.apply_gl2(&a).apply_gl2(&inverse(&a)), f);
    }

    #[test]
    fn evaluation_is_homogeneous(f in arb_form(8), c in (-6i64..=6, 1i64..=5), t in -5i64..=5, u in -5i64..=5) {
        let c = q(c.0, c.1);
        let lhs = f.evaluate(&Rational::from(&c * t), &Rational::from(&c * u));
        let rhs = Rational::from((&c).pow(f.degree() as u32)) * f.evaluate(&q(t, 1), &q(u, 1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rank_of_transpose(m in arb_matrix()) {
        prop_assert_eq!(rank_exact(&m), rank_exact(&m.transpose()));
    }

    #[test]
    fn rank_nullity_and_kernel(m in arb_matrix()) {
        let kernel = nullspace(&m);
        prop_assert_eq!(rank_exact(&m) + kernel.len(), m.cols());
        for v in &kernel {
            prop_assert!(m.mul_vec(v).iter().all(|x| *x == 0));
        }
    }

    #[test]
    fn modular_rank_agrees(m in arb_matrix(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let primes = [random_prime_62(&mut rng), random_prime_62(&mut rng)];
        prop_assert_eq!(rank_modular(&m, &primes).unwrap(), rank_exact(&m));
    }

    #[test]
    fn catalecticant_transpose_symmetry(f in arb_form(10)) {
        let z = f.dual_coords();
        let d = f.degree();
        for s in 0..=d {
            prop_assert_eq!(
                rank_exact(&catalecticant(&z, s).unwrap()),
                rank_exact(&catalecticant(&z, d - s).unwrap())
            );
        }
    }

    #[test]
    fn apolar_space_annihilates(f in arb_nonzero_form(1, 9), s in 0usize..=9) {
        prop_assume!(s <= f.degree());
        let basis = apolar_space(&f, s).unwrap();
        for g in &basis.basis {
            prop_assert!(apolar_pairings(&f, g).unwrap().iter().all(|p| *p == 0));
        }
    }

    #[test]
    fn generator_is_apolar(f in arb_nonzero_form(1, 10)) {
        let r = waring_rank(&f).unwrap();
        if let Some(g) = &r.apolar {
            prop_assert_eq!(g.degree(), r.border_rank);
            prop_assert!(apolar_pairings(&f, g).unwrap().iter().all(|p| *p == 0));
        }
    }

    #[test]
    fn squarefree_iff_discriminant(f in arb_nonzero_form(2, 10)) {
        prop_assert_eq!(is_squarefree(&f).unwrap(), discriminant(&f).unwrap() != 0);
    }

    #[test]
    fn rank_dichotomy_and_bound(f in arb_nonzero_form(1, 12)) {
        let r = waring_rank(&f).unwrap();
        let (d, b) = (f.degree(), r.border_rank);
        prop_assert!(r.rank == b || r.rank + b == d + 2);
        prop_assert!(r.rank <= d);
        prop_assert_eq!(b, border_rank(&f).unwrap());
    }

    #[test]
    fn rank_invariant_under_substitution_and_scaling(
        f in arb_nonzero_form(1, 10),
        a in arb_invertible(),
        c in (-7i64..=7, 1i64..=5),
    ) {
        prop_assume!(c.0 != 0);
        let r = waring_rank(&f).unwrap().rank;
        prop_assert_eq!(waring_rank(&f.apply_gl2(&a)).unwrap().rank, r);
        prop_assert_eq!(waring_rank(&f.scale(&q(c.0, c.1))).unwrap().rank, r);
    }

    #[test]
    fn closure_sets_contain_one_and_r(d in 1usize..=12, r in 1usize..=12) {
        prop_assume!(r <= d);
        let set = closure_ranks(d, r).unwrap();
        prop_assert!(set.contains(&1) && set.contains(&r));
        let full = set.len() == d;
        prop_assert_eq!(full, r + 1 >= d - r + 2);
    }

    #[test]
    fn jacobian_matches_differences(seed in any::<u64>(), d in 1usize..=8, r in 1usize..=4) {
        use rand_distr::{Distribution, StandardNormal};
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let params: Vec<num_complex::Complex64> = (0..2 * r)
            .map(|_| {
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                num_complex::Complex64::new(re, im) * 0.7
            })
            .collect();
        prop_assert!(jacobian_check(d, &params) < 1e-6);
    }
}

#[test]
fn hankel_rank_profile_of_generic_forms() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for d in 2..=10 {
        for r in 1..=d / 2 + 1 {
            let f = sample_generic_rank(d, r, &mut rng).unwrap();
            let b = border_rank(&f).unwrap();
            let z = f.dual_coords();
            for s in 1..d {
                let got = rank_exact(&catalecticant(&z, s).unwrap());
                assert_eq!(got, b.min(s + 1).min(d - s + 1), "d={d} r={r} s={s}");
            }
        }
    }
}

#[test]
fn samplers_hit_their_strata() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for d in 1..=12 {
        for r in 1..=d / 2 + 1 {
            let f = sample_generic_rank(d, r, &mut rng).unwrap();
            let res = waring_rank(&f).unwrap();
            assert_eq!((res.rank, res.border_rank), (r, r), "generic d={d} r={r}");
        }
        for k in 1..=(d.saturating_sub(1)) / 2 {
            let f = sample_degenerate(d, k, &mut rng).unwrap();
            let res = waring_rank(&f).unwrap();
            assert_eq!((res.rank, res.border_rank), (d - k + 1, k + 1), "degenerate d={d} k={k}");
        }
    }
}

fn eval_complex(f: &BinaryForm, p: &ComplexPoint, prec: u32) -> (Complex, Float) {
    let d = f.degree();
    let mut acc = Complex::new(prec);
    let mut scale = Float::new(prec);
    let mut tp = vec![Complex::with_val(prec, 1)];
    let mut up = vec![Complex::with_val(prec, 1)];
    for i in 1..=d {
        tp.push(Complex::with_val(prec, &tp[i - 1] * p.t()));
        up.push(Complex::with_val(prec, &up[i - 1] * p.u()));
    }
    for (i, c) in f.coeffs().iter().enumerate() {
        let term = Complex::with_val(prec, &tp[d - i] * &up[i]) * c;
        scale += Float::with_val(prec, c).abs();
        acc += term;
    }
    (acc, scale)
}

#[test]
fn roots_are_accurate_and_separated() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let bits = 256;
    for d in 2..=12 {
        let f = sample_generic_rank(d, d.div_ceil(2), &mut rng).unwrap();
        let g = waring_rank(&f).unwrap().apolar.unwrap();
        let roots = projective_roots(&g, bits).unwrap();
        assert_eq!(roots.len(), g.degree());
        for p in &roots {
            let (v, scale) = eval_complex(&g, p, bits + 64);
            let rel = Float::with_val(bits + 64, v.abs_ref()) / scale;
            assert!(rel < Float::with_val(64, 2).pow(-(bits as i32) / 2), "d={d}");
        }
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                assert!(roots[i].chordal_distance(&roots[j]) > separation_bound(bits));
            }
        }
    }
}

#[test]
fn weight_solve_is_consistent_on_true_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for bits in [128u32, 256, 512] {
        let limit = 10f64.powf(-0.3 * f64::from(bits));
        for d in 2..=12 {
            let f = sample_generic_rank(d, d.div_ceil(2), &mut rng).unwrap();
            let g = waring_rank(&f).unwrap().apolar.unwrap();
            let roots = projective_roots(&g, bits).unwrap();
            let (_, residual) = solve_weights(&f.dual_coords(), &roots, bits).unwrap();
            assert!(residual.to_f64() <= limit, "bits={bits} d={d} residual={residual}");
        }
    }
}

#[test]
fn doubling_precision_never_hurts() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for i in 0..50 {
        let d = 2 + i % 9;
        let f = if i % 2 == 0 {
            sample_generic_rank(d, 1 + i % (d / 2 + 1), &mut rng).unwrap()
        } else if d >= 3 {
            sample_degenerate(d, 1 + i % ((d - 1) / 2), &mut rng).unwrap()
        } else {
            BinaryForm::monomial(1, 1)
        };
        let seed = i as u64;
        let lo = decompose(&f, 128, seed).unwrap();
        let hi = decompose(&f, 256, seed).unwrap();
        let e_lo = verify_decomposition(&f, &lo, 1e-20).max_relative_error;
        let e_hi = verify_decomposition(&f, &hi, 1e-20).max_relative_error;
        // a low-precision run can round to an exact zero; allow the finer run its own ulp floor
        let floor = Float::with_val(64, 2).pow(-256i32);
        assert!(e_hi <= e_lo || e_hi <= floor, "sample {i}: {e_hi} > {e_lo}");
    }
}

#[test]
fn verified_decompositions_reproduce_coefficients() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for d in 1..=9 {
        let f = sample_generic_rank(d, d / 2 + 1, &mut rng).unwrap();
        let dec = decompose(&f, 200, 1).unwrap();
        let report = verify_decomposition(&f, &dec, 1e-30);
        assert!(report.passed());
        let prec = 264;
        let coeffs = expand_power_sum(d, &dec.terms, prec);
        let scale = f.coeffs().iter().map(|c| c.clone().abs()).max().unwrap();
        for (got, want) in coeffs.iter().zip(f.coeffs()) {
            let diff = Complex::with_val(prec, got - want);
            let rel = Float::with_val(prec, diff.abs_ref()) / &scale;
            assert!(rel <= dec.residual.clone() * 2 + Float::with_val(prec, 1e-70));
        }
    }
}

#[test]
fn oracle_residual_is_monotone_in_terms() {
    for f in [
        BinaryForm::monomial(2, 1),
        BinaryForm::monomial(3, 2),
        BinaryForm::from_ints(&[1, -2, 0, 3, 1]),
    ] {
        let mut last = f64::INFINITY;
        for r in 1..=f.degree() {
            let fit = numeric_fit(&f, r, 8, 4);
            assert!(fit.best_residual <= last, "{f}: r={r}");
            last = fit.best_residual;
        }
    }
}

#[test]
fn oracle_agrees_on_generic_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for d in 2..=6 {
        for r in 1..=d / 2 + 1 {
            let f = sample_generic_rank(d, r, &mut rng).unwrap();
            assert_eq!(oracle_rank_upper(&f, 1e-9, 0), r, "{f}");
        }
    }
}

#[test]
fn oracle_reaches_degenerate_ranks() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for d in 3..=6 {
        for k in 1..=(d - 1) / 2 {
            let f = sample_degenerate(d, k, &mut rng).unwrap();
            let rank = d - k + 1;
            assert!(numeric_fit(&f, rank, 64, 0).best_residual < 1e-9, "{f}");
            assert!(oracle_rank_upper(&f, 1e-9, 0) <= rank);
        }
    }
}
