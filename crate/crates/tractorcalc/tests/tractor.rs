use proptest::prelude::*;
use tractorcalc::model::{Space, WeightedForm};
use tractorcalc::num::{q, qr, Q};
use tractorcalc::poly::Poly;
use tractorcalc::random::SectionRng;
use tractorcalc::tractor::algebraic::{iota_i, x, x_star};
use tractorcalc::tractor::insert::{q_north, q_plain, q_south, q_star, q_west};
use tractorcalc::tractor::projector::{pi, pi_hat_tau};
use tractorcalc::tractor::robin::laplace_robin;
use tractorcalc::tractor::structure::{connection, scale_tractor, transform, transform_by};
use tractorcalc::tractor::thomas::{d_hat, thomas_d, thomas_d_star};
use tractorcalc::tractor::{TractorForm, TractorJson, TractorOp};
use tractorcalc::verify::{registry, run, Tier};
use tractorcalc::Error;

fn mono(space: Space, w: Q, idx: &[usize], f: Poly) -> WeightedForm {
    WeightedForm::monomial(space, w, idx, f).unwrap()
}

fn dx(space: Space, w: Q, a: usize) -> WeightedForm {
    mono(space, w, &[a], Poly::one())
}

#[test]
fn thomas_d_on_a_west_section() {
    let s = Space::bulk(5);
    let a = q_plain(&mono(s, q(1), &[2], Poly::x(2)));
    assert_eq!((a.degree(), a.weight().clone()), (1, q(0)));

    let out = thomas_d(&a);
    assert_eq!((out.degree(), out.weight().clone()), (2, q(-1)));
    assert_eq!(out.north(), &mono(s, q(1), &[2], Poly::x(2).scale(&q(3))));
    assert!(out.west().is_zero());
    assert_eq!(
        out.east(),
        &WeightedForm::scalar(s, q(-1), Poly::constant(q(-2)))
    );
    assert!(out.south().is_zero());
}

#[test]
fn x_kills_south_and_y_kills_constants() {
    let s = Space::bulk(5);
    let south = q_south(&mono(s, q(2), &[1, 3], Poly::x(4)));
    assert!(x(&south).is_zero());

    let west = q_plain(&dx(s, q(1), 1));
    assert!(laplace_robin(&west).is_zero());
}

#[test]
fn insertion_round_trips() {
    let s = Space::bulk(6);
    let a = mono(s, qr(2, 7), &[1, 2], &Poly::x(3) * &Poly::r());
    let west = q_west(&a).unwrap();
    assert_eq!(q_star(&west).unwrap(), a);
    assert!(x_star(&west).is_zero());

    let n = q_north(&a).unwrap();
    assert!(thomas_d(&n).is_zero());
    assert!(thomas_d_star(&n).is_zero());
}

#[test]
fn pi_hat_tau_restricts_to_boundary_west() {
    let s = Space::bulk(5);
    let a = dx(s, q(0), 1);
    let lifted = pi_hat_tau(&a).unwrap();
    let along = lifted.restrict().unwrap();
    let expected = q_west(&a.restrict().unwrap()).unwrap();
    assert_eq!(along, expected);
}

#[test]
fn transform_by_zero_is_identity() {
    let mut rng = SectionRng::new(3);
    let t = rng.tractor(Space::bulk(5), 2, qr(1, 3));
    assert_eq!(transform(&t, &[q(0), q(0)]), t);
    assert_eq!(transform_by(&t, &Poly::constant(q(4))).unwrap(), t);
    assert!(transform_by(&t, &(&Poly::x(1) * &Poly::x(1))).is_err());
}

#[test]
fn scale_tractor_is_parallel() {
    let i = scale_tractor(Space::bulk(4));
    let v = [q(1), q(-2), q(0), q(3)];
    assert!(connection(&i, &v).is_zero());
}

#[test]
fn mixed_scales_do_not_add() {
    let mut rng = SectionRng::new(5);
    let t = rng.tractor(Space::bulk(4), 1, q(0));
    let moved = transform(&t, &[q(1)]);
    assert!(matches!(t.try_add(&moved), Err(Error::ScaleMismatch(_))));
}

#[test]
fn special_weights_raise_typed_errors() {
    let s = Space::bulk(4);
    // h = 0 and outside ker X
    let t = q_plain(&dx(s, q(-1), 1));
    assert!(matches!(d_hat(&t), Err(Error::Precondition { .. })));

    // q_W at w = k - d
    let a = dx(s, q(-2), 1);
    assert!(matches!(q_west(&a), Err(Error::ExcludedWeight { .. })));

    // Π at w = -k
    let t = q_plain(&dx(s, q(0), 2));
    assert!(matches!(pi(&t), Err(Error::ExcludedWeight { .. })));
}

#[test]
fn json_round_trip() {
    let mut rng = SectionRng::new(17);
    let t = transform(
        &rng.tractor(Space::bulk(5), 2, qr(-3, 4)),
        &[q(2), qr(1, 2)],
    );
    let j = TractorJson::from(&t);
    let text = serde_json::to_string(&j).unwrap();
    let back: TractorJson = serde_json::from_str(&text).unwrap();
    assert_eq!(TractorForm::try_from(&back).unwrap(), t);
}

#[test]
fn operator_names_parse() {
    for op in TractorOp::all() {
        assert_eq!(op.name().parse::<TractorOp>().unwrap(), op);
    }
    assert!("Dsharp".parse::<TractorOp>().is_err());
}

#[test]
fn quick_tier_passes() {
    let tractor: Vec<_> = registry()
        .into_iter()
        .filter(|i| i.family == "tractor")
        .collect();
    let report = run(&tractor, &Tier::quick(), 7);
    assert!(report.passed(), "{}", report.table());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn declared_shifts_hold(seed in 0u64..1000, d in 4usize..7, k in 0i32..4) {
        let mut rng = SectionRng::new(seed);
        let w = rng.weight(&[]);
        let t = rng.tractor(Space::bulk(d), k, w.clone());
        for op in TractorOp::all() {
            let Ok(out) = op.apply(&t) else { continue };
            match op.shift() {
                Some((dk, dw)) => {
                    prop_assert_eq!(out.degree(), k + dk, "{}", op);
                    prop_assert_eq!(out.weight(), &(&w + dw), "{}", op);
                }
                None => prop_assert_eq!(out.degree(), d as i32 + 2 - k),
            }
        }
    }

    #[test]
    fn iota_i_anticommutes_with_x_to_sigma(seed in 0u64..1000, k in 0i32..5) {
        let mut rng = SectionRng::new(seed);
        let w = rng.weight(&[]);
        let t = rng.tractor(Space::bulk(5), k, w);
        let lhs = iota_i(&x(&t)).add(&x(&iota_i(&t)));
        prop_assert_eq!(lhs, t.mul_sigma());
    }
}
