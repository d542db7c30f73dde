use proptest::prelude::*;
use tractorcalc::model::{eps_tilde, iota_tilde, Space, WeightedForm};
use tractorcalc::num::{q, qr, Exp, Q};
use tractorcalc::poly::Poly;
use tractorcalc::random::SectionRng;
use tractorcalc::sl2core::log_constant;
use tractorcalc::solver::{
    apply_first_kind, gl_left, gl_right, gl_solution, gl_step, product_solution, regime_of,
    Backend, BoundaryData, Order, Problem, ProblemJson, Regime, SeriesSolution, SolutionJson,
};
use tractorcalc::tractor::insert::{q_plain, q_west, q_west_special};
use tractorcalc::tractor::projector::{pi, pi_hat_tau};
use tractorcalc::tractor::robin::laplace_robin;
use tractorcalc::tractor::TractorForm;
use tractorcalc::Error;

fn exp(n: i64) -> Exp {
    Exp::from_integer(n)
}

fn boundary_form(n: usize, w: Q, idx: &[usize], f: Poly) -> WeightedForm {
    WeightedForm::monomial(Space::boundary(n), w, idx, f).unwrap()
}

fn pow(a: usize, e: u32) -> Poly {
    (0..e).fold(Poly::one(), |acc, _| &acc * &Poly::x(a))
}

fn random_data(seed: u64, d: usize, k: i32, w0: &Q) -> WeightedForm {
    let mut rng = SectionRng::with_shape(seed, 6, 3);
    rng.form(Space::boundary(d - 1), k, w0 + q(k as i64))
}

fn problem(d: usize, k: i32, w0: Q, order: usize, a: WeightedForm) -> Problem {
    Problem::new(d, k, w0, order, BoundaryData::Form(a)).unwrap()
}

#[test]
fn constant_data_is_an_exact_solution() {
    let w0 = qr(-1, 3);
    let a = boundary_form(4, &w0 + q(1), &[1], Poly::one());
    let sol = problem(5, 1, w0, 6, a.clone()).solve().unwrap();
    assert_eq!(sol.regime, Regime::Generic);
    assert!(sol.report().all_infinite(), "{sol}");
    let coeffs = sol.coeffs();
    assert_eq!(coeffs[0].west(), &a.extend());
    assert!(coeffs[1..].iter().all(|c| c.is_zero()));

    let product = product_solution(&a.extend(), 6).unwrap();
    assert_eq!(product, a.extend());
}

#[test]
fn closed_and_recursive_backends_agree() {
    let w0 = qr(-1, 3);
    let a = boundary_form(4, &w0 + q(1), &[2], Poly::x(1));
    let p = problem(5, 1, w0, 5, a);
    let closed = p.solve().unwrap();
    let recursive = p.solve_with(Backend::Recursive).unwrap();
    assert_eq!(closed.coeffs(), recursive.coeffs());
    assert!(closed.meets_order());
}

#[test]
fn gl_step_reproduces_the_first_product_coefficient() {
    let w0 = qr(-1, 3);
    let a0 = boundary_form(4, &w0 + q(1), &[2], &pow(1, 3) * &Poly::x(3)).extend();
    let start = product_solution(&a0, 0).unwrap();
    assert_eq!(
        gl_step(&start, 0).unwrap(),
        product_solution(&a0, 1).unwrap()
    );
}

#[test]
fn backends_agree_on_random_data() {
    let cut = exp(6);
    for d in [5, 6] {
        for k in [1, 2] {
            let mut rng = SectionRng::new(100 + d as u64 * 10 + k as u64);
            let w0 = rng.weight(&[]);
            let a = random_data(d as u64 * 7 + k as u64, d, k, &w0);
            let p = problem(d, k, w0.clone(), 5, a);
            let tractor = p.solve().unwrap();
            assert!(tractor.meets_order(), "{tractor}");
            let report = tractor.report();
            for o in [report.iota_i, report.d_hat_star, report.x_star] {
                assert_eq!(o, Order::Infinite, "d = {d}, k = {k}");
            }

            let a0 = p.extended_form();
            let product = product_solution(&a0, 5).unwrap();
            assert_eq!(&product.truncate_below(cut), tractor.section.west());
            assert_eq!(gl_solution(&a0, 5).unwrap(), product);

            // the untruncated product is exactly the west insertion of Π K A0
            let full = pi(&apply_first_kind(&p.extension().unwrap(), 5).unwrap()).unwrap();
            assert_eq!(q_west(&product).unwrap(), full);

            let oracle = p.solve_with(Backend::Recursive).unwrap();
            assert_eq!(oracle.section, tractor.section);
        }
    }
}

#[test]
fn projector_on_west_insertions() {
    let mut rng = SectionRng::with_shape(9, 4, 3);
    for k in 0..4 {
        let w = rng.weight(&[]);
        let a = rng.form(Space::bulk(5), k, &w + q(k as i64));
        let m = (&w + q(k as i64)) * (q(4) + &w - q(k as i64));
        let ie = iota_tilde(&eps_tilde(&a));
        let lhs = pi(&q_west(&a).unwrap()).unwrap();
        assert_eq!(lhs, q_west(&ie.scale(&m.recip())).unwrap());

        // x y q_W(ι̃ε̃A) = q_W[(ι̃ε̃ − m)ι̃ε̃A]
        let t = q_west(&ie).unwrap();
        let shifted = iota_tilde(&eps_tilde(&ie)).sub(&ie.scale(&m));
        assert_eq!(laplace_robin(&t).mul_sigma(), q_west(&shifted).unwrap());
    }
}

#[test]
fn extension_choice_does_not_matter() {
    let mut rng = SectionRng::with_shape(21, 5, 3);
    let w0 = qr(-2, 7);
    let a = random_data(4, 5, 2, &w0);
    let a0 = q_west(&a.extend()).unwrap();
    let shift = rng.tractor(Space::bulk(5), 2, &w0 - q(1)).mul_sigma();
    let order = 4;
    let cut = exp(order as i64 + 1);
    let base = pi(&apply_first_kind(&a0, order).unwrap()).unwrap();
    let moved = pi(&apply_first_kind(&a0.add(&shift), order).unwrap()).unwrap();
    assert_eq!(base.truncate_below(cut), moved.truncate_below(cut));
}

#[test]
fn corrupted_coefficient_lowers_the_y_order() {
    let w0 = qr(-1, 3);
    let sol = problem(5, 1, w0.clone(), 6, random_data(3, 5, 1, &w0))
        .solve()
        .unwrap();
    let bump =
        q_plain(&WeightedForm::monomial(Space::bulk(5), &w0 - q(2), &[1], Poly::x(2)).unwrap());
    let corrupted = SeriesSolution {
        section: sol.section.add(&bump.mul_sigma_pow(exp(3))),
        ..sol
    };
    assert_eq!(corrupted.report().y, Order::Finite(exp(2)));
    assert!(!corrupted.meets_order());
}

#[test]
fn zero_data_gives_infinite_orders() {
    let w0 = qr(1, 5);
    let zero = WeightedForm::zero(Space::boundary(4), 2, &w0 + q(2));
    let sol = problem(5, 2, w0, 4, zero).solve().unwrap();
    assert!(sol.section.is_zero());
    assert!(sol.report().all_infinite());
}

#[test]
fn true_form_log_coefficient() {
    let a = boundary_form(4, q(0), &[1], pow(2, 4));
    let p = problem(5, 1, q(-1), 5, a.clone());
    assert_eq!(p.regime().unwrap(), Regime::TrueForm);
    let sol = p.solve().unwrap();
    assert!(sol.meets_order(), "{sol}");
    let logs = sol.log_coeffs();
    assert!(!logs.is_empty() && !logs[0].is_zero());

    // first log coefficient = C · y² of the west insertion, C = −1/(2!·1!)
    let direct = laplace_robin(&laplace_robin(&q_west(&a.extend()).unwrap()));
    let expected = direct
        .coeff(exp(0), 0)
        .restrict()
        .unwrap()
        .scale_by(&log_constant(3));
    let got = sol.obstruction().unwrap().restrict().unwrap();
    assert_eq!(got.west(), expected.west());
    assert_eq!(got.south(), expected.south());
}

#[test]
fn true_form_log_coefficient_without_coclosed_data() {
    let a = boundary_form(4, q(0), &[1], &Poly::x(1) * &Poly::x(2));
    let got = problem(5, 1, q(-1), 4, a.clone())
        .solve()
        .unwrap()
        .obstruction()
        .unwrap()
        .restrict()
        .unwrap();
    let at_zero = |t: TractorForm| {
        laplace_robin(&laplace_robin(&t))
            .coeff(exp(0), 0)
            .restrict()
            .unwrap()
            .scale_by(&log_constant(3))
    };
    let projected = at_zero(pi_hat_tau(&a.extend()).unwrap());
    assert_eq!(got.west(), projected.west());
    assert_eq!(got.south(), projected.south());
    // δA ≠ 0, so the plain west insertion is not the leading term
    let plain = at_zero(q_west(&a.extend()).unwrap());
    assert_ne!(got.west(), plain.west());
}

#[test]
fn log_regime_meets_order() {
    for (k, w0, seed) in [(1, q(0), 1), (2, q(0), 2), (1, qr(-1, 2), 3)] {
        let sol = problem(5, k, w0.clone(), 5, random_data(seed, 5, k, &w0))
            .solve()
            .unwrap();
        assert_eq!(sol.regime, Regime::Log);
        assert!(sol.meets_order(), "{sol}");
    }
    let a = boundary_form(4, q(1), &[2], pow(1, 8));
    let sol = problem(5, 1, q(0), 5, a).solve().unwrap();
    assert!(!sol.obstruction().unwrap().is_zero());
}

#[test]
fn second_kind_and_true_form_above_middle_degree() {
    let sol = problem(5, 1, q(-2), 4, random_data(5, 5, 1, &q(-2)))
        .solve()
        .unwrap();
    assert_eq!(sol.regime, Regime::SecondKind);
    assert!(sol.meets_order(), "{sol}");

    let sol = problem(5, 3, q(-3), 4, random_data(6, 5, 3, &q(-3)))
        .solve()
        .unwrap();
    assert_eq!(sol.regime, Regime::TrueForm);
    assert!(sol.meets_order(), "{sol}");
    assert!(sol.log_coeffs().is_empty());
}

#[test]
fn dual_true_form_pair() {
    let a = boundary_form(4, q(-2), &[1], Poly::x(2));
    let phi = WeightedForm::scalar(Space::boundary(4), q(-4), Poly::x(3));
    let p = Problem::new(
        5,
        1,
        q(-3),
        4,
        BoundaryData::Pair {
            a: a.clone(),
            phi: phi.clone(),
        },
    )
    .unwrap();
    let sol = p.solve().unwrap();
    assert_eq!(sol.regime, Regime::DualTrueForm);
    assert!(sol.meets_order(), "{sol}");
    let along = sol.coeffs()[0].restrict().unwrap();
    assert_eq!(along, q_west_special(&a, &phi).unwrap());

    let constant = boundary_form(4, q(-2), &[1], Poly::one());
    let zero = WeightedForm::zero(Space::boundary(4), 0, q(-4));
    let p = Problem::new(
        5,
        1,
        q(-3),
        4,
        BoundaryData::Pair {
            a: constant.clone(),
            phi: zero,
        },
    )
    .unwrap();
    let sol = p.solve().unwrap();
    assert!(sol.report().all_infinite());
    assert_eq!(sol.coeffs()[0].west(), &constant.extend());
    assert!(sol.coeffs()[1..].iter().all(|c| c.is_zero()));
}

#[test]
fn scale_duality() {
    let (d, k) = (5, 1);
    let w0 = qr(-1, 3);
    let dual_w = -&w0 - q(4);
    let h0 = q(d as i64) + q(2) * &w0;
    let sol = problem(d, k, dual_w.clone(), 5, random_data(8, d, k, &dual_w))
        .solve()
        .unwrap();
    assert!(sol.meets_order());

    let swapped = sol.dual().unwrap();
    assert_eq!(swapped.w0, w0);
    assert_eq!(swapped.alpha, Exp::new(10, 3));
    let bound = Exp::new(10, 3) + exp(5);
    assert!(swapped.report().y.at_least(bound), "{swapped}");
    assert!(swapped.meets_order(), "{swapped}");
    assert_eq!(swapped.section.h(), h0);

    let back = swapped.dual().unwrap();
    let diff = back.section.sub(&sol.section);
    assert!(diff.order().is_none_or(|o| o > exp(5)));
}

#[test]
fn duality_of_the_constant_solution() {
    let dual_w = qr(1, 3) - q(4);
    let a = boundary_form(4, &dual_w + q(1), &[1], Poly::one());
    let sol = problem(5, 1, dual_w, 5, a.clone()).solve().unwrap();
    let swapped = sol.dual().unwrap();
    assert!(swapped.report().all_infinite());
    let lead = swapped.coeffs()[0].clone();
    assert_eq!(lead.west(), &a.extend());
    assert_eq!(
        swapped.section,
        q_plain(&a.extend()).mul_sigma_pow(Exp::new(10, 3))
    );
}

#[test]
fn regime_dispatch() {
    let cells = [
        (5, 1, qr(-1, 3), Ok(Regime::Generic)),
        (5, 1, q(-2), Ok(Regime::SecondKind)),
        (5, 1, q(0), Ok(Regime::Log)),
        (5, 1, q(-1), Ok(Regime::TrueForm)),
        (5, 3, q(-3), Ok(Regime::TrueForm)),
        (5, 1, q(-3), Ok(Regime::DualTrueForm)),
        (5, 3, q(-1), Err(())),
        (5, 2, q(-2), Err(())),
    ];
    for (d, k, w0, expected) in cells {
        let got = regime_of(d, k, &w0);
        match expected {
            Ok(r) => assert_eq!(got.unwrap(), r, "d = {d}, k = {k}"),
            Err(()) => assert!(matches!(got, Err(Error::Unsupported(_)))),
        }
    }
}

#[test]
fn bad_problems_are_rejected() {
    let a = boundary_form(4, q(1), &[1], Poly::one());
    assert!(Problem::new(5, 1, qr(1, 3), 3, BoundaryData::Form(a.clone())).is_err());
    assert!(Problem::new(6, 1, q(0), 3, BoundaryData::Form(a.clone())).is_err());
    let phi = WeightedForm::zero(Space::boundary(4), 0, q(-1));
    let pair = Problem::new(5, 1, q(0), 3, BoundaryData::Pair { a, phi }).unwrap();
    assert!(matches!(pair.regime(), Err(Error::Precondition { .. })));
}

#[test]
fn json_round_trip() {
    let text = r#"{"d": 5, "k": 1, "w0": "-1/3", "order": 4,
        "data": {"dim": 4, "boundary": true, "degree": 1, "weight": "2/3",
                 "components": {"x2": "x1^3*x3 - 2*x4^2"}}}"#;
    let input: ProblemJson = serde_json::from_str(text).unwrap();
    assert_eq!(input.regime, "auto");
    let p = input.to_problem().unwrap();
    assert_eq!(ProblemJson::from(&p).to_problem().unwrap(), p);

    let sol = p.solve().unwrap();
    let out = serde_json::to_string(&SolutionJson::from(&sol)).unwrap();
    let back: SolutionJson = serde_json::from_str(&out).unwrap();
    let reread = SeriesSolution::try_from(&back).unwrap();
    assert_eq!(reread, sol);
    assert_eq!(reread.report(), back.report);
    assert_eq!(
        serde_json::to_string(&SolutionJson::from(&reread)).unwrap(),
        out
    );

    let mut wrong = input.clone();
    wrong.regime = "log".into();
    assert!(wrong.to_problem().is_err());
}

#[test]
fn log_solutions_survive_json() {
    let a = boundary_form(4, q(0), &[1], pow(2, 4));
    let sol = problem(5, 1, q(-1), 4, a).solve().unwrap();
    let out = serde_json::to_string(&SolutionJson::from(&sol)).unwrap();
    let back: SolutionJson = serde_json::from_str(&out).unwrap();
    assert_eq!(SeriesSolution::try_from(&back).unwrap(), sol);
    assert!(!back.log_coeffs.is_empty());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn split_operators_are_minus_the_normals(seed in 0u64..1000, d in 4usize..7, k in 0i32..4) {
        let mut rng = SectionRng::with_shape(seed, 3, 3);
        let w = rng.weight(&[]);
        let a = rng.form(Space::bulk(d), k, w);
        prop_assert_eq!(gl_right(&a), eps_tilde(&a).neg());
        let b = eps_tilde(&a);
        prop_assert_eq!(gl_left(&b), iota_tilde(&b).neg());
        prop_assert_eq!(gl_left(&gl_right(&a)), iota_tilde(&eps_tilde(&a)));
    }

    #[test]
    fn second_kind_law(seed in 0u64..1000, k in 0i32..4) {
        let mut rng = SectionRng::with_shape(seed, 4, 3);
        let w = rng.weight(&[]);
        let g = rng.tractor(Space::bulk(5), k, w);
        let power = Exp::new(1, 1) - tractorcalc::num::q_to_exp(&g.h()).unwrap();
        let lhs = laplace_robin(&g.mul_sigma_pow(power));
        prop_assert_eq!(lhs, laplace_robin(&g).mul_sigma_pow(power));
    }

    #[test]
    fn generic_solutions_meet_their_order(seed in 0u64..1000, k in 0i32..4) {
        let mut rng = SectionRng::new(seed);
        let w0 = rng.weight(&[]);
        let a = random_data(seed, 5, k, &w0);
        let sol = problem(5, k, w0, 3, a).solve().unwrap();
        prop_assert!(sol.meets_order(), "{}", sol);
    }
}
