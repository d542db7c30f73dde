//! Solver and boundary-operator checks.

use super::{all, expect, same, same_form, Cell, Identity, Scope};
use crate::boundary::{detour, factor_check};
use crate::model::{eps_tilde, iota_tilde, Space, WeightedForm};
use crate::num::{q, Exp};
use crate::random::SectionRng;
use crate::solver::{gl_left, gl_right, gl_solution, product_solution, BoundaryData, Problem};
use crate::tractor::insert::q_west;
use crate::tractor::projector::pi;
use crate::tractor::robin::laplace_robin;

fn zeta(a: &WeightedForm) -> WeightedForm {
    iota_tilde(&eps_tilde(a))
}

/// A `k`-form whose west insertion has tractor weight `w` of the cell.
fn west_form(cell: &Cell, rng: &mut SectionRng) -> WeightedForm {
    rng.form(Space::bulk(cell.d), cell.k, &cell.w + q(cell.k as i64))
}

fn mass(cell: &Cell) -> crate::num::Q {
    let k = q(cell.k as i64);
    (&cell.w + &k) * (q(cell.d as i64 - 1) + &cell.w - k)
}

pub(super) fn identities() -> Vec<Identity> {
    vec![
        Identity {
            family: "solver",
            name: "split operators: L R = iota~ eps~",
            scope: Scope::Cells,
            check: |c, r| {
                let a = r.form(Space::bulk(c.d), c.k, c.w.clone());
                Ok(same_form(&gl_left(&gl_right(&a)), &zeta(&a)))
            },
        },
        Identity {
            family: "solver",
            name: "Pi q_W A = q_W(iota~ eps~ A)/m, x y q_W(zeta A) = q_W((zeta - m) zeta A)",
            scope: Scope::Cells,
            check: |c, r| {
                let a = west_form(c, r);
                let m = mass(c);
                let z = zeta(&a);
                let lhs = pi(&q_west(&a)?)?;
                let t = q_west(&z)?;
                let shifted = zeta(&z).sub(&z.scale(&m));
                Ok(all([
                    same(&lhs, &q_west(&z.scale(&m.recip()))?),
                    same(&laplace_robin(&t).mul_sigma(), &q_west(&shifted)?),
                ]))
            },
        },
        Identity {
            family: "solver",
            name: "generic solve, d = 5, k = 1: tractor, product and GL agree to order 4",
            scope: Scope::Once,
            check: |_, r| {
                let order = 4;
                let w0 = r.weight(&[]);
                let boundary = Space::boundary(4);
                let a = SectionRng::with_shape(r.int(0, 1 << 30) as u64, 6, 3).form(
                    boundary,
                    1,
                    &w0 + q(1),
                );
                let p = Problem::new(5, 1, w0, order, BoundaryData::Form(a))?;
                let sol = p.solve()?;
                let a0 = p.extended_form();
                let product = product_solution(&a0, order)?;
                let cut = Exp::from_integer(order as i64 + 1);
                Ok(all([
                    expect(sol.meets_order(), || format!("residuals {sol}")),
                    same_form(&product.truncate_below(cut), sol.section.west()),
                    same_form(&gl_solution(&a0, order)?, &product),
                ]))
            },
        },
        Identity {
            family: "boundary",
            name: "n = 4, k = 1: L = -8 delta Q d = 8 delta d, L d = 0, delta L = 0",
            scope: Scope::Once,
            check: |_, r| {
                let boundary = Space::boundary(4);
                let a = r.form(boundary, 1, q(0));
                let f = r.form(boundary, 0, q(0));
                let factor = factor_check(&a)?;
                let l = detour(&a, 1)?;
                Ok(all([
                    expect(factor.holds(), || {
                        format!("{} vs {}", factor.detour, factor.through_q)
                    }),
                    same_form(&l, &a.d().codiff().scale(&q(8))),
                    expect(detour(&f.d(), 1)?.is_zero(), || "L d".into()),
                    expect(l.codiff().is_zero(), || "delta L".into()),
                ]))
            },
        },
    ]
}
