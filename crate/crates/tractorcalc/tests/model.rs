use proptest::prelude::*;
use tractorcalc::model::*;
use tractorcalc::num::{q, qr, Exp, Q};
use tractorcalc::poly::Poly;
use tractorcalc::random::SectionRng;

fn x(i: usize) -> Poly {
    Poly::x(i)
}

fn mono(space: Space, w: Q, idx: &[usize], f: Poly) -> WeightedForm {
    WeightedForm::monomial(space, w, idx, f).unwrap()
}

#[test]
fn exterior_examples() {
    let s = Space::bulk(5);
    let a = mono(s, q(0), &[2], x(1));
    assert_eq!(a.d(), mono(s, q(0), &[1, 2], Poly::one()));

    let b = mono(s, q(0), &[2], x(2));
    let div = b.codiff();
    assert_eq!(div, WeightedForm::scalar(s, q(-2), Poly::one()));

    let c = mono(s, q(0), &[1], &x(2) * &x(2));
    assert_eq!(c.laplacian(), mono(s, q(-2), &[1], Poly::constant(q(2))));
}

#[test]
fn antisymmetric_storage() {
    let s = Space::bulk(4);
    let a = mono(s, q(0), &[2, 1], Poly::one());
    let b = mono(s, q(0), &[1, 2], Poly::one());
    assert_eq!(a, b.neg());
    assert!(mono(s, q(0), &[1, 1], Poly::one()).is_zero());
}

#[test]
fn holographic_normal_examples() {
    let s = Space::bulk(5);
    // W = w + k with tractor weight w = −1, k = 1
    let a = mono(s, q(0), &[0], x(1));
    assert_eq!(
        iota_tilde(&a),
        WeightedForm::scalar(s, q(-1), x(1).scale(&q(3)))
    );

    let w = qr(2, 7);
    let one = WeightedForm::scalar(s, w.clone(), Poly::one());
    assert_eq!(
        eps_tilde(&one),
        mono(s, &w + q(1), &[0], Poly::constant(w.clone()))
    );

    for w0 in [qr(-1, 3), q(2), qr(5, 4)] {
        let dx1 = mono(s, &w0 + q(1), &[1], Poly::one());
        let got = iota_tilde(&eps_tilde(&dx1));
        let c = (&w0 + q(1)) * (&w0 + q(3));
        assert_eq!(got, dx1.scale(&c));
    }
}

#[test]
fn l_hat_is_anticommutator_at_weight_zero() {
    let mut rng = SectionRng::new(11);
    for d in 4..=6 {
        let s = Space::bulk(d);
        for k in 0..=d as i32 {
            let a = rng.form(s, k, q(0));
            let lhs = l_hat(&a);
            let rhs = iota_tilde(&eps_tilde(&a)).add(&eps_tilde(&iota_tilde(&a)));
            assert_eq!(lhs, rhs, "d = {d}, k = {k}");
        }
    }
}

fn zeta(a: &WeightedForm) -> WeightedForm {
    iota_tilde(&eps_tilde(a))
}

fn big_l(a: &WeightedForm) -> WeightedForm {
    zeta(a).add(&eps_tilde(&iota_tilde(a)))
}

/// `P(op)` for a polynomial with coefficients `cs` (lowest first).
fn poly_of(op: fn(&WeightedForm) -> WeightedForm, cs: &[Q], a: &WeightedForm) -> WeightedForm {
    let mut acc = a.scale(&q(0));
    let mut power = a.clone();
    for c in cs {
        acc = acc.add(&power.scale(c));
        power = op(&power);
    }
    acc
}

fn strategy() -> impl Strategy<Value = (u64, usize, i32)> {
    (any::<u64>(), 4usize..=7, 0i32..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn exterior_calculus_identities((seed, d, k) in strategy()) {
        let mut rng = SectionRng::new(seed);
        let s = Space::bulk(d);
        let w = rng.weight(&[]);
        let a = rng.form(s, k, w);
        prop_assert!(a.d().d().is_zero());
        prop_assert!(a.codiff().codiff().is_zero());
        prop_assert_eq!(a.laplacian().d(), a.d().laplacian());
        prop_assert_eq!(a.laplacian().codiff(), a.codiff().laplacian());
        prop_assert_eq!(a.d().codiff().add(&a.codiff().d()), a.laplacian());
    }

    #[test]
    fn tilde_algebra((seed, d, k) in strategy()) {
        let mut rng = SectionRng::new(seed);
        let s = Space::bulk(d);
        let w = rng.weight(&[]);
        let a = rng.form(s, k, w);
        prop_assert!(iota_tilde(&iota_tilde(&a)).is_zero());
        prop_assert!(eps_tilde(&eps_tilde(&a)).is_zero());
        prop_assert_eq!(iota_tilde(&a.mul_sigma()), iota_tilde(&a).mul_sigma());
        prop_assert_eq!(eps_tilde(&a.mul_sigma()), eps_tilde(&a).mul_sigma());
    }

    #[test]
    fn zeta_polynomial_identity((seed, d, k) in strategy()) {
        let mut rng = SectionRng::new(seed);
        let s = Space::bulk(d);
        let w = rng.weight(&[]);
        let a = rng.form(s, k, w);
        let cs: Vec<Q> = (0..4).map(|_| q(rng.int(-3, 3))).collect();
        let lhs = zeta(&poly_of(zeta, &cs, &a));
        let rhs = iota_tilde(&poly_of(big_l, &cs, &eps_tilde(&a)));
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn extension_of_constant_form_is_trivial() {
    let b = Space::boundary(4);
    let dx1 = mono(b, q(0), &[1], Poly::one());
    for method in [ExtensionMethod::Recursive, ExtensionMethod::Projector] {
        let ext = divergence_extend(&dx1, &qr(-1, 3), 6, method).unwrap();
        assert_eq!(ext, dx1.extend().with_weight(qr(2, 3)));
    }
}

#[test]
fn recursive_extension_relaxed_at_zero() {
    // d + w − k = 0: no constraint at i = 0, and i ≥ 1 never divides by zero
    let b = Space::boundary(4);
    let a = mono(b, q(0), &[2], x(2));
    let ext = divergence_extend(&a, &q(-4), 4, ExtensionMethod::Recursive).unwrap();
    assert!(iota_tilde(&ext).is_zero() || iota_tilde(&ext).order() >= Some(Exp::from_integer(4)));
}

#[test]
fn recursive_extension_obstruction_is_reported() {
    // d + w − k = 1 with δA ≠ 0
    let b = Space::boundary(4);
    let a = mono(b, q(0), &[2], x(2));
    let err = divergence_extend(&a, &q(-3), 3, ExtensionMethod::Recursive).unwrap_err();
    assert!(matches!(err, tractorcalc::Error::ExcludedWeight { .. }));
}

#[test]
fn extensions_solve_and_agree() {
    let mut rng = SectionRng::new(3);
    for n in 3..=5 {
        let b = Space::boundary(n);
        for k in 0..=2 {
            let w = rng.weight(&[]);
            let a = rng.form(b, k, &w + q(k as i64));
            let rec = divergence_extend(&a, &w, 6, ExtensionMethod::Recursive).unwrap();
            let proj = divergence_extend(&a, &w, 6, ExtensionMethod::Projector).unwrap();
            assert!(iota_tilde(&proj).is_zero());
            let res = iota_tilde(&rec);
            assert!(res.is_zero() || res.order().unwrap() >= Exp::from_integer(6));
            let diff = rec.sub(&proj);
            assert!(diff.is_zero() || diff.order().unwrap() >= Exp::from_integer(2));
            assert_eq!(
                proj.restrict().unwrap(),
                a.clone().with_weight(a.weight().clone())
            );
        }
    }
}

#[test]
fn json_round_trip() {
    let mut rng = SectionRng::new(5);
    let s = Space::bulk(5);
    let a = rng.form(s, 2, qr(-4, 3));
    let j = FormJson::from(&a);
    let text = serde_json::to_string(&j).unwrap();
    let back: FormJson = serde_json::from_str(&text).unwrap();
    assert_eq!(WeightedForm::try_from(&back).unwrap(), a);

    let frac = a.mul_r_pow(Exp::new(3, 2));
    let j = FormJson::from(&frac);
    assert_eq!(j.offset, "3/2");
    assert_eq!(WeightedForm::try_from(&j).unwrap(), frac);
}
