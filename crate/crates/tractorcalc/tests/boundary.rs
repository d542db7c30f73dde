use tractorcalc::boundary::{
    detour, detour_with, factor_check, gamma, gauge, gauge_with, q_operator, q_operator_with,
    BoundaryOp, BoundaryRequest, ProbeSet,
};
use tractorcalc::model::{FormJson, Space, WeightedForm};
use tractorcalc::num::{q, Exp, Q};
use tractorcalc::poly::Poly;
use tractorcalc::random::SectionRng;
use tractorcalc::Error;

fn probes() -> ProbeSet {
    serde_json::from_str(include_str!("../../../fixtures/boundary_probes_n4_k1.json")).unwrap()
}

fn one_form(f: Poly, a: usize) -> WeightedForm {
    WeightedForm::monomial(Space::boundary(4), q(0), &[a], f).unwrap()
}

fn x2_squared() -> Poly {
    &Poly::x(2) * &Poly::x(2)
}

/// The constant `c` in `L₁ = c δd`, read off from `(x²)²dx¹`.
fn maxwell_constant() -> Q {
    let a = one_form(x2_squared(), 1);
    let l = detour(&a, 1).unwrap();
    let dd = a.d().codiff();
    let dx1 = one_form(Poly::one(), 1);
    let unit = dd.component(2).terms().next().unwrap().1.clone();
    assert_eq!(dd, dx1.with_weight(q(-2)).scale(&unit));
    let c = l.component(2).terms().next().unwrap().1.clone() / unit;
    assert_eq!(l, dd.scale(&c));
    c
}

#[test]
fn detour_kills_constant_forms() {
    let l = detour(&one_form(Poly::one(), 1), 1).unwrap();
    assert!(l.is_zero());
    assert_eq!(l.weight(), &q(-2));
}

#[test]
fn detour_is_a_multiple_of_maxwell() {
    let c = maxwell_constant();
    assert_eq!(c, q(8));
    let set = probes();
    assert!(set.forms.len() >= 10);
    for a in set.forms().unwrap() {
        assert_eq!(detour(&a, 1).unwrap(), a.d().codiff().scale(&c), "{a:?}");
    }
}

#[test]
fn factorization_through_q() {
    assert_eq!(gamma(4, 1), q(-8));
    for a in probes().forms().unwrap() {
        let f = factor_check(&a).unwrap();
        assert!(f.holds(), "{a:?}");
    }
}

#[test]
fn detour_complex() {
    let set = probes();
    for f in set.functions().unwrap() {
        assert!(detour(&f.d(), 1).unwrap().is_zero());
    }
    for a in set.forms().unwrap() {
        assert!(detour(&a, 1).unwrap().codiff().is_zero());
    }
}

#[test]
fn operators_ignore_the_extension() {
    let mut rng = SectionRng::with_shape(11, 3, 3);
    for a in probes().forms().unwrap().into_iter().take(5) {
        let b = rng.form(Space::bulk(5), 1, q(0));
        let moved = a.extend().add(&b.mul_r_pow(Exp::from_integer(1)));
        assert_eq!(
            detour_with(&a, 1, Some(&moved)).unwrap(),
            detour(&a, 1).unwrap()
        );
        assert_eq!(gauge_with(&a, Some(&moved)).unwrap(), gauge(&a).unwrap());
        assert_eq!(
            q_operator_with(&a, Some(&moved)).unwrap(),
            q_operator(&a).unwrap()
        );
    }
}

#[test]
fn output_weights() {
    let a = one_form(&x2_squared() * &Poly::x(3), 2);
    assert_eq!(q_operator(&a).unwrap().weight(), &q(-2));
    assert_eq!(q_operator(&a.d()).unwrap().weight(), &q(0));
    let shifted = WeightedForm::monomial(Space::boundary(4), q(1), &[1], x2_squared()).unwrap();
    let l2 = detour(&shifted, 2).unwrap();
    assert_eq!(l2.weight(), &q(-3));
}

#[test]
fn gates() {
    let odd = WeightedForm::monomial(Space::boundary(5), q(0), &[1], Poly::x(2)).unwrap();
    assert!(matches!(gauge(&odd), Err(Error::Unsupported(_))));
    assert!(matches!(q_operator(&odd), Err(Error::Unsupported(_))));
    assert!(matches!(factor_check(&odd), Err(Error::Unsupported(_))));

    let wrong = WeightedForm::monomial(Space::boundary(4), q(1), &[1], Poly::x(2)).unwrap();
    assert!(matches!(
        detour(&wrong, 1),
        Err(Error::ExcludedWeight { .. })
    ));
    assert!(matches!(gauge(&wrong), Err(Error::ExcludedWeight { .. })));

    let two = WeightedForm::monomial(Space::boundary(4), q(0), &[1, 2], Poly::x(3)).unwrap();
    assert!(matches!(gauge(&two), Err(Error::Precondition { .. })));
    assert!(q_operator(&two).is_ok());
}

#[test]
fn json_request() {
    let a = one_form(&x2_squared() * &x2_squared(), 1);
    let req = BoundaryRequest {
        op: BoundaryOp::Factor,
        n: 4,
        k: 1,
        l: None,
        probe: FormJson::from(&a),
    };
    let text = serde_json::to_string(&req).unwrap();
    assert!(text.contains(r#""op":"factor""#));
    let back: BoundaryRequest = serde_json::from_str(&text).unwrap();
    let resp = back.evaluate().unwrap();
    assert_eq!(resp.verdict, "pass");
    assert_eq!(
        WeightedForm::try_from(&resp.result).unwrap(),
        detour(&a, 1).unwrap()
    );
}
