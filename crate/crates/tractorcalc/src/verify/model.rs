//! Weighted-form identities.

use super::{all, expect, same_form, Cell, Identity, Scope};
use crate::model::{
    divergence_extend, eps_tilde, iota_tilde, ExtensionMethod, Space, WeightedForm,
};
use crate::num::{q, Exp, Q};
use crate::random::SectionRng;

fn form(cell: &Cell, rng: &mut SectionRng) -> WeightedForm {
    rng.form(Space::bulk(cell.d), cell.k, cell.w.clone())
}

fn zeta(a: &WeightedForm) -> WeightedForm {
    iota_tilde(&eps_tilde(a))
}

fn big_l(a: &WeightedForm) -> WeightedForm {
    zeta(a).add(&eps_tilde(&iota_tilde(a)))
}

fn poly_of(op: fn(&WeightedForm) -> WeightedForm, cs: &[Q], a: &WeightedForm) -> WeightedForm {
    let mut acc = a.scale(&q(0));
    let mut power = a.clone();
    for c in cs {
        acc = acc.add(&power.scale(c));
        power = op(&power);
    }
    acc
}

macro_rules! identity {
    ($name:expr, $f:expr) => {
        Identity {
            family: "model",
            name: $name,
            scope: Scope::Cells,
            check: $f,
        }
    };
}

pub(super) fn identities() -> Vec<Identity> {
    vec![
        identity!(
            "d^2 = 0, delta^2 = 0, [Lap, d] = 0 = [delta, Lap]",
            |c, r| {
                let a = form(c, r);
                Ok(all([
                    expect(a.d().d().is_zero(), || "d^2".into()),
                    expect(a.codiff().codiff().is_zero(), || "delta^2".into()),
                    same_form(&a.laplacian().d(), &a.d().laplacian()),
                    same_form(&a.laplacian().codiff(), &a.codiff().laplacian()),
                    same_form(&a.d().codiff().add(&a.codiff().d()), &a.laplacian()),
                ]))
            }
        ),
        identity!(
            "iota~^2 = 0 = eps~^2, [sigma, iota~] = 0 = [eps~, sigma]",
            |c, r| {
                let a = form(c, r);
                Ok(all([
                    expect(iota_tilde(&iota_tilde(&a)).is_zero(), || "iota~^2".into()),
                    expect(eps_tilde(&eps_tilde(&a)).is_zero(), || "eps~^2".into()),
                    same_form(&iota_tilde(&a.mul_sigma()), &iota_tilde(&a).mul_sigma()),
                    same_form(&eps_tilde(&a.mul_sigma()), &eps_tilde(&a).mul_sigma()),
                ]))
            }
        ),
        identity!("zeta P(zeta) = iota~ P(L) eps~, deg P <= 3", |c, r| {
            let a = form(c, r);
            let cs: Vec<Q> = (0..4).map(|_| q(r.int(-3, 3))).collect();
            let lhs = zeta(&poly_of(zeta, &cs, &a));
            let rhs = iota_tilde(&poly_of(big_l, &cs, &eps_tilde(&a)));
            Ok(same_form(&lhs, &rhs))
        }),
        identity!(
            "recursive and projector extensions agree to the order",
            |c, r| {
                let order = 4;
                let b = r.form(Space::boundary(c.d - 1), c.k, &c.w + q(c.k as i64));
                let rec = divergence_extend(&b, &c.w, order, ExtensionMethod::Recursive)?;
                let proj = divergence_extend(&b, &c.w, order, ExtensionMethod::Projector)?;
                let bound = Exp::from_integer(order as i64);
                let res = iota_tilde(&rec);
                let diff = rec.sub(&proj);
                Ok(all([
                    expect(iota_tilde(&proj).is_zero(), || "projector residual".into()),
                    expect(res.order().is_none_or(|o| o >= bound), || {
                        "recursive residual".into()
                    }),
                    expect(
                        diff.order().is_none_or(|o| o >= Exp::from_integer(2)),
                        || format!("difference {diff}"),
                    ),
                ]))
            }
        ),
    ]
}
