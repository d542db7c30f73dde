//! Tractor operator identities.

use num_traits::{One, Zero};

use super::{
    all, expect, same, same_along, same_form, vanishes, vanishes_along, Cell, Identity, Outcome,
    Scope,
};
use crate::model::{eps_tilde, iota_tilde, Space, WeightedForm};
use crate::num::{q, qr, Q};
use crate::random::SectionRng;
use crate::tractor::algebraic::{eps_i, eps_y, iota_i, iota_y, x, x_star};
use crate::tractor::insert::{q_east, q_north, q_plain, q_south, q_star, q_west};
use crate::tractor::projector::{pi, pi_west};
use crate::tractor::robin::laplace_robin as y;
use crate::tractor::structure::{connection, scale_tractor, star, transform, wedge};
use crate::tractor::tangential::{d_bar, d_bar_star, d_star_tangential, d_tangential};
use crate::tractor::thomas::{
    d_hat, d_hat_star, d_tilde, d_tilde_star, double_d, double_d_star, thomas_d as dd,
    thomas_d_star as dds, triple_d, triple_d_star,
};
use crate::tractor::TractorForm;

fn section(cell: &Cell, rng: &mut SectionRng) -> TractorForm {
    rng.tractor(Space::bulk(cell.d), cell.k, cell.w.clone())
}

fn form(cell: &Cell, rng: &mut SectionRng, degree: i32, weight: Q) -> WeightedForm {
    rng.form(Space::bulk(cell.d), degree, weight)
}

fn sigma(t: &TractorForm) -> TractorForm {
    t.mul_sigma()
}

fn ys(t: &TractorForm, m: usize) -> TractorForm {
    (0..m).fold(t.clone(), |acc, _| y(&acc))
}

fn dq(cell: &Cell) -> Q {
    q(cell.d as i64)
}

fn kq(cell: &Cell) -> Q {
    q(cell.k as i64)
}

fn nq(cell: &Cell) -> Q {
    q(cell.d as i64 - 1)
}

fn h_of(t: &TractorForm) -> Q {
    t.h()
}

macro_rules! identity {
    ($name:expr, $f:expr) => {
        Identity {
            family: "tractor",
            name: $name,
            scope: Scope::Cells,
            check: $f,
        }
    };
}

pub(super) fn identities() -> Vec<Identity> {
    vec![
        identity!("D^2 = 0", |c, r| {
            let a = section(c, r);
            Ok(vanishes(&dd(&dd(&a))))
        }),
        identity!("D*^2 = 0", |c, r| {
            let a = section(c, r);
            Ok(vanishes(&dds(&dds(&a))))
        }),
        identity!("{D, D*} = 0", |c, r| {
            let a = section(c, r);
            Ok(vanishes(&dd(&dds(&a)).add(&dds(&dd(&a)))))
        }),
        identity!("X^2 = 0, X*^2 = 0, {X, X*} = 0", |c, r| {
            let a = section(c, r);
            Ok(all([
                vanishes(&x(&x(&a))),
                vanishes(&x_star(&x_star(&a))),
                vanishes(&x(&x_star(&a)).add(&x_star(&x(&a)))),
            ]))
        }),
        identity!("{iota I, X} = sigma = {eps I, X*}", |c, r| {
            let a = section(c, r);
            Ok(all([
                same(&iota_i(&x(&a)).add(&x(&iota_i(&a))), &sigma(&a)),
                same(&eps_i(&x_star(&a)).add(&x_star(&eps_i(&a))), &sigma(&a)),
            ]))
        }),
        identity!("{X*, eps Y} = 1 = {X, iota Y}", |c, r| {
            let a = section(c, r);
            Ok(all([
                same(&x_star(&eps_y(&a)).add(&eps_y(&x_star(&a))), &a),
                same(&x(&iota_y(&a)).add(&iota_y(&x(&a))), &a),
            ]))
        }),
        identity!("{eps I, D} = 0 = {iota I, D*}", |c, r| {
            let a = section(c, r);
            Ok(all([
                vanishes(&eps_i(&dd(&a)).add(&dd(&eps_i(&a)))),
                vanishes(&iota_i(&dds(&a)).add(&dds(&iota_i(&a)))),
            ]))
        }),
        identity!("{iota I, D} = -y = {eps I, D*}", |c, r| {
            let a = section(c, r);
            let minus_y = y(&a).neg();
            Ok(all([
                same(&iota_i(&dd(&a)).add(&dd(&iota_i(&a))), &minus_y),
                same(&eps_i(&dds(&a)).add(&dds(&eps_i(&a))), &minus_y),
            ]))
        }),
        identity!("[D, y] = [eps I, y] = [iota I, y] = [D*, y] = 0", |c, r| {
            let a = section(c, r);
            Ok(all([
                same(&dd(&y(&a)), &y(&dd(&a))),
                same(&eps_i(&y(&a)), &y(&eps_i(&a))),
                same(&iota_i(&y(&a)), &y(&iota_i(&a))),
                same(&dds(&y(&a)), &y(&dds(&a))),
            ]))
        }),
        identity!("(h-2) D X + (h+2) X D = 0 and starred", |c, r| {
            let a = section(c, r);
            let h = h_of(&a);
            Ok(all([
                vanishes(
                    &dd(&x(&a))
                        .scale_by(&(&h - q(2)))
                        .add(&x(&dd(&a)).scale_by(&(&h + q(2)))),
                ),
                vanishes(
                    &dds(&x_star(&a))
                        .scale_by(&(&h - q(2)))
                        .add(&x_star(&dds(&a)).scale_by(&(&h + q(2)))),
                ),
            ]))
        }),
        identity!(
            "h X D* + (h-2) D* X + 2 X* D = ((d+h)/2 - N + 2) h (h-2)",
            |c, r| {
                let a = section(c, r);
                let h = h_of(&a);
                let lhs = x(&dds(&a))
                    .scale_by(&h)
                    .add(&dds(&x(&a)).scale_by(&(&h - q(2))))
                    .add(&x_star(&dd(&a)).scale_by(&q(2)));
                let c0 = (dq(c) + &h) / q(2) - kq(c) + q(2);
                Ok(same(&lhs, &a.scale_by(&(c0 * &h * (&h - q(2))))))
            }
        ),
        identity!(
            "h X* D + (h-2) D X* + 2 X D* = -((d-h)/2 - N) h (h-2)",
            |c, r| {
                let a = section(c, r);
                let h = h_of(&a);
                let lhs = x_star(&dd(&a))
                    .scale_by(&h)
                    .add(&dd(&x_star(&a)).scale_by(&(&h - q(2))))
                    .add(&x(&dds(&a)).scale_by(&q(2)));
                let c0 = (dq(c) - &h) / q(2) - kq(c);
                Ok(same(&lhs, &a.scale_by(&(-c0 * &h * (&h - q(2))))))
            }
        ),
        identity!("[x, y] = h", |c, r| {
            let a = section(c, r);
            Ok(same(
                &sigma(&y(&a)).sub(&y(&sigma(&a))),
                &a.scale_by(&h_of(&a)),
            ))
        }),
        identity!("(h-2) D* x - h x D* = 2 X* y + h (h-2) iota I", |c, r| {
            let a = section(c, r);
            let h = h_of(&a);
            let lhs = dds(&sigma(&a))
                .scale_by(&(&h - q(2)))
                .sub(&sigma(&dds(&a)).scale_by(&h));
            let rhs = x_star(&y(&a))
                .scale_by(&q(2))
                .add(&iota_i(&a).scale_by(&(&h * (&h - q(2)))));
            Ok(same(&lhs, &rhs))
        }),
        identity!("(h-2) D x - h x D = 2 X y + h (h-2) eps I", |c, r| {
            let a = section(c, r);
            let h = h_of(&a);
            let lhs = dd(&sigma(&a))
                .scale_by(&(&h - q(2)))
                .sub(&sigma(&dd(&a)).scale_by(&h));
            let rhs = x(&y(&a))
                .scale_by(&q(2))
                .add(&eps_i(&a).scale_by(&(&h * (&h - q(2)))));
            Ok(same(&lhs, &rhs))
        }),
        identity!("(h-2) y X - h X y = 2 x D - h (h-2) eps I", |c, r| {
            let a = section(c, r);
            let h = h_of(&a);
            let lhs = y(&x(&a))
                .scale_by(&(&h - q(2)))
                .sub(&x(&y(&a)).scale_by(&h));
            let rhs = sigma(&dd(&a))
                .scale_by(&q(2))
                .sub(&eps_i(&a).scale_by(&(&h * (&h - q(2)))));
            Ok(same(&lhs, &rhs))
        }),
        identity!("(h-2) y X* - h X* y = 2 x D* - h (h-2) iota I", |c, r| {
            let a = section(c, r);
            let h = h_of(&a);
            let lhs = y(&x_star(&a))
                .scale_by(&(&h - q(2)))
                .sub(&x_star(&y(&a)).scale_by(&h));
            let rhs = sigma(&dds(&a))
                .scale_by(&q(2))
                .sub(&iota_i(&a).scale_by(&(&h * (&h - q(2)))));
            Ok(same(&lhs, &rhs))
        }),
        identity!("Dhat X + X Dtilde = 0 = Dhat* X* + X* Dtilde*", |c, r| {
            let a = section(c, r);
            Ok(all([
                vanishes(&d_hat(&x(&a))?.add(&x(&d_tilde(&a)))),
                vanishes(&d_hat_star(&x_star(&a))?.add(&x_star(&d_tilde_star(&a)))),
            ]))
        }),
        identity!(
            "X* Dtilde = (w+k), Dhat* X = (d+w-k) on ker(Dhat*, X*)",
            |c, r| {
                let a = q_west(&form(c, r, c.k, &c.w + kq(c)))?;
                let wk = &c.w + kq(c);
                let dwk = dq(c) + &c.w - kq(c);
                Ok(all([
                    vanishes(&d_hat_star(&a)?),
                    vanishes(&x_star(&a)),
                    same(&x_star(&d_tilde(&a)), &a.scale_by(&wk)),
                    same(&d_hat_star(&x(&a))?, &a.scale_by(&dwk)),
                ]))
            }
        ),
        identity!("[D2, X*] = -((h-d)/2 + N - 2) X", |c, r| {
            let a = section(c, r);
            let lhs = double_d(&x_star(&a)).sub(&x_star(&double_d(&a)));
            let c0 = (lhs.h() - dq(c)) / q(2) + q(lhs.degree() as i64) - q(2);
            Ok(same(&lhs, &x(&a).scale_by(&-c0)))
        }),
        identity!("[D2*, D] = ((h-d)/2 + N) D*", |c, r| {
            let a = section(c, r);
            let lhs = double_d_star(&dd(&a)).sub(&dd(&double_d_star(&a)));
            let c0 = (lhs.h() - dq(c)) / q(2) + q(lhs.degree() as i64);
            Ok(same(&lhs, &dds(&a).scale_by(&c0)))
        }),
        identity!("[D2, D*] = ((h+d)/2 - N + 2) D", |c, r| {
            let a = section(c, r);
            let lhs = double_d(&dds(&a)).sub(&dds(&double_d(&a)));
            let c0 = (lhs.h() + dq(c)) / q(2) - q(lhs.degree() as i64) + q(2);
            Ok(same(&lhs, &dd(&a).scale_by(&c0)))
        }),
        identity!("[D2*, X] = -((h+d)/2 - N) X*", |c, r| {
            let a = section(c, r);
            let lhs = double_d_star(&x(&a)).sub(&x(&double_d_star(&a)));
            let c0 = (lhs.h() + dq(c)) / q(2) - q(lhs.degree() as i64);
            Ok(same(&lhs, &x_star(&a).scale_by(&-c0)))
        }),
        identity!(
            "D2 = Dhat X, D2* = Dhat* X*, D3 = D2 eps I, D3* = D2* iota I",
            |c, r| {
                let a = section(c, r);
                Ok(all([
                    same(&double_d(&a), &d_hat(&x(&a))?),
                    same(&double_d_star(&a), &d_hat_star(&x_star(&a))?),
                    same(&triple_d(&a), &double_d(&eps_i(&a))),
                    same(&triple_d_star(&a), &double_d_star(&iota_i(&a))),
                ]))
            }
        ),
        identity!("[x, D3] = [x, D3*] = [y, D3] = [y, D3*] = 0", |c, r| {
            let a = section(c, r);
            Ok(all([
                same(&triple_d(&sigma(&a)), &sigma(&triple_d(&a))),
                same(&triple_d_star(&sigma(&a)), &sigma(&triple_d_star(&a))),
                same(&triple_d(&y(&a)), &y(&triple_d(&a))),
                same(&triple_d_star(&y(&a)), &y(&triple_d_star(&a))),
            ]))
        }),
        identity!(
            "D3* D3 = (w+k)(n+w-k) + x y on ker(iota I, Dhat*, X*)",
            |c, r| {
                let a0 = form(c, r, c.k, &c.w + kq(c));
                let a = q_west(&iota_tilde(&eps_tilde(&a0)))?;
                let c0 = (&c.w + kq(c)) * (nq(c) + &c.w - kq(c));
                Ok(all([
                    vanishes(&iota_i(&a)),
                    vanishes(&d_hat_star(&a)?),
                    vanishes(&x_star(&a)),
                    same(
                        &triple_d_star(&triple_d(&a)),
                        &a.scale_by(&c0).add(&sigma(&y(&a))),
                    ),
                ]))
            }
        ),
        identity!(
            "exactness: D X* (1 + 2 X Dtilde*/((h+2)(w+k-2))) F / (h (w+k)) = F, F = D B",
            |c, r| {
                let b = r.tractor(Space::bulk(c.d), c.k - 1, &c.w + Q::one());
                let f = dd(&b);
                let h = f.h();
                let wk = &c.w + kq(c);
                let inner =
                    f.add(&x(&d_tilde_star(&f)).scale_by(&(q(2) / ((&h + q(2)) * (&wk - q(2))))));
                let lhs = dd(&x_star(&inner)).scale_by(&(&h * &wk).recip());
                Ok(same(&lhs, &f))
            }
        ),
        identity!("south reconstruction on ker(X, X*)", |c, r| {
            let s = form(c, r, c.k - 1, &c.w + kq(c) - q(2));
            let a = q_south(&s);
            let c0 = (&c.w + kq(c) - q(2)) * (dq(c) + &c.w - kq(c));
            let rhs = x_star(&x(&d_tilde(&d_hat_star(&a)?))).scale_by(&-c0.recip());
            Ok(all([
                vanishes(&x(&a)),
                vanishes(&x_star(&a)),
                same(&a, &rhs),
            ]))
        }),
        identity!("north reconstruction on ker(D, D*)", |c, r| {
            let n0 = form(c, r, c.k - 1, &c.w + kq(c));
            let f = q_north(&n0)?;
            let h = f.h();
            let c0 = &h * (&c.w + kq(c)) * (dq(c) + &c.w - kq(c) + q(2));
            let rhs = dds(&d_hat(&x(&x_star(&f)))?).scale_by(&-c0.recip());
            Ok(all([vanishes(&dd(&f)), vanishes(&dds(&f)), same(&f, &rhs)]))
        }),
        identity!("insertions land in their kernels", |c, r| {
            let wk = &c.w + kq(c);
            let aw = form(c, r, c.k, wk.clone());
            let qw = q_west(&aw)?;
            let ae = form(c, r, c.k - 2, &wk - q(2));
            let qe = q_east(&ae)?;
            let an = form(c, r, c.k - 1, wk.clone());
            let qn = q_north(&an)?;
            let as_ = form(c, r, c.k - 1, &wk - q(2));
            let qs = q_south(&as_);
            Ok(all([
                vanishes(&dds(&qw)),
                vanishes(&x_star(&qw)),
                same_form(&q_star(&qw)?, &aw),
                vanishes(&d_hat(&qe)?),
                vanishes(&x(&qe)),
                vanishes(&dd(&qn)),
                vanishes(&dds(&qn)),
                vanishes(&x(&qs)),
                vanishes(&x_star(&qs)),
            ]))
        }),
        identity!(
            "Pi_W^2 = Pi_W, Pi^2 = Pi on ker(iota I, Dhat*, X*) image",
            |c, r| {
                let a = section(c, r);
                let pw = pi_west(&a)?;
                let p = pi(&a)?;
                Ok(all([
                    same(&pi_west(&pw)?, &pw),
                    vanishes(&iota_i(&p)),
                    vanishes(&d_hat_star(&p)?),
                    vanishes(&x_star(&p)),
                ]))
            }
        ),
        identity!("Pi q_W A = q_W(iota~ eps~ A)/((w+k)(n+w-k))", |c, r| {
            let a0 = form(c, r, c.k, &c.w + kq(c));
            let c0 = (&c.w + kq(c)) * (nq(c) + &c.w - kq(c));
            let lhs = pi(&q_west(&a0)?)?;
            let rhs = q_west(&iota_tilde(&eps_tilde(&a0)))?.scale_by(&c0.recip());
            Ok(same(&lhs, &rhs))
        }),
        identity!(
            "y Pi = Pi y up to normalization: y D3* D3 = D3* D3 y",
            |c, r| {
                let a = section(c, r);
                Ok(same(
                    &y(&triple_d_star(&triple_d(&a))),
                    &triple_d_star(&triple_d(&y(&a))),
                ))
            }
        ),
        identity!(
            "tangential: DT, DT*, Dbar, Dbar* map sigma A to sigma B",
            |c, r| {
                let a = sigma(&section(c, r));
                Ok(all([
                    vanishes_along(&d_tangential(&a)?),
                    vanishes_along(&d_star_tangential(&a)?),
                    vanishes_along(&d_bar(&a)?),
                    vanishes_along(&d_bar_star(&a)?),
                    vanishes_along(&triple_d(&a)),
                    vanishes_along(&triple_d_star(&a)),
                ]))
            }
        ),
        identity!("Dbar, Dbar* restrict to the boundary D, D*", |c, r| {
            let b = r.tractor(Space::boundary(c.d - 1), c.k, c.w.clone());
            let a = b.extend();
            let along = |bulk: TractorForm, bdry: TractorForm| match bulk.restrict() {
                Ok(res) => same(&res, &bdry),
                Err(e) => Outcome::Fail(format!("restriction failed: {e}")),
            };
            Ok(all([
                along(d_bar(&a)?, dd(&b)),
                along(d_bar_star(&a)?, dds(&b)),
            ]))
        }),
        identity!("DT restricts to h/(h-1) times the boundary D", |c, r| {
            let b = r.tractor(Space::boundary(c.d - 1), c.k, c.w.clone());
            let a = b.extend();
            let h = a.h() - q(2);
            let factor = &h / (&h - Q::one());
            let res = d_tangential(&a)?.restrict();
            Ok(match res {
                Ok(res) => same(&res, &dd(&b).scale_by(&factor)),
                Err(e) => Outcome::Fail(format!("restriction failed: {e}")),
            })
        }),
        identity!("star star = (-1)^(k(d+2-k)+1)", |c, r| {
            let a = section(c, r);
            let k = c.k as i64;
            let d = c.d as i64;
            let sign = if (k * (d + 2 - k) + 1) % 2 == 0 {
                q(1)
            } else {
                q(-1)
            };
            Ok(same(&star(&star(&a)), &a.scale_by(&sign)))
        }),
        identity!(
            "transform: T(u) T(-u) = 1, X T = T X, T wedge = wedge T",
            |c, r| {
                let a = section(c, r);
                let b = r.tractor(Space::bulk(c.d), 1, qr(1, 3));
                let u: Vec<Q> = (0..c.d).map(|_| q(r.int(-2, 2))).collect();
                let minus: Vec<Q> = u.iter().map(|v| -v).collect();
                let tu = transform(&a, &u);
                let back = transform(&tu, &minus);
                let xt = x(&tu);
                let tx = transform(&x(&a), &u);
                let wedged = transform(&wedge(&a, &b)?, &u);
                let split = wedge(&tu, &transform(&b, &u))?;
                Ok(all([
                    same(&back, &a),
                    expect(back.scale().is_flat(), || "scale tag not restored".into()),
                    same(&xt, &tx),
                    same(&wedged, &split),
                    same(&transform(&a, &[]), &a),
                ]))
            }
        ),
        identity!("connection: Leibniz over wedge, I parallel", |c, r| {
            let a = section(c, r);
            let b = r.tractor(Space::bulk(c.d), 1, qr(2, 5));
            let v: Vec<Q> = (0..c.d).map(|_| q(r.int(-2, 2))).collect();
            let lhs = connection(&wedge(&a, &b)?, &v);
            let rhs = wedge(&connection(&a, &v), &b)?.add(&wedge(&a, &connection(&b, &v))?);
            Ok(all([
                same(&lhs, &rhs),
                vanishes(&connection(&scale_tractor(Space::bulk(c.d)), &v)),
            ]))
        }),
        identity!("superlemma, l = 1, 2, 3", |c, r| {
            let a = section(c, r);
            let mut out = Vec::new();
            for l in 1..=3usize {
                let lq = q(l as i64);
                let lhs = x(&ys(&a, l));
                let h = lhs.h();
                let da = dd(&a);
                let mut inner = ys(&x(&a), l).scale_by(&(&h - q(2)));
                if l >= 2 {
                    inner = inner
                        .add(&ys(&da, l - 2).scale_by(&(&lq * (&lq - Q::one()) * (&h - q(2)))));
                }
                inner = inner.sub(&sigma(&ys(&da, l - 1)).scale_by(&(q(2) * &lq)));
                let rhs = inner
                    .scale_by(&(&h + q(2) * &lq - q(2)).recip())
                    .add(&eps_i(&ys(&a, l - 1)).scale_by(&(&lq * (&h - q(2)))));
                out.push(same(&lhs, &rhs));
            }
            Ok(all(out))
        }),
        identity!(
            "trumpet: [X DtildeT, Y] = 0 = [X* Dtilde*T, Y*] along the boundary",
            |c, r| {
                let a = section(c, r);
                let xdt = |t: &TractorForm| {
                    let hout = t.h() - q(2);
                    x(&dd(t).add(&eps_i(&y(t)))).scale_by(&hout.recip())
                };
                let xdts = |t: &TractorForm| {
                    let hout = t.h() - q(2);
                    x_star(&dds(t).add(&iota_i(&y(t)))).scale_by(&hout.recip())
                };
                Ok(all([
                    same_along(&xdt(&eps_y(&a)), &eps_y(&xdt(&a))),
                    same_along(&xdts(&iota_y(&a)), &iota_y(&xdts(&a))),
                ]))
            }
        ),
        identity!(
            "boondoggled: X DtildeT q A = X q d A along the boundary",
            |c, r| {
                let bs = Space::boundary(c.d - 1);
                let a_sigma = r.form(bs, c.k, Q::zero());
                let a = a_sigma.extend();
                let qa = q_plain(&a);
                let hout = qa.h() - q(2);
                if hout.is_zero() {
                    return Ok(Outcome::Skip);
                }
                let bulk = x(&dd(&qa).add(&eps_i(&y(&qa)))).scale_by(&hout.recip());
                let bdry = x(&q_plain(&a_sigma.d()));
                Ok(match bulk.restrict() {
                    Ok(res) => same(&res, &bdry),
                    Err(e) => Outcome::Fail(format!("restriction failed: {e}")),
                })
            }
        ),
        identity!(
            "fun: four identities along the boundary, h0 = 3, 5",
            |c, r| {
                let mut out = Vec::new();
                for h0 in [3i64, 5] {
                    let w0 = qr(h0 - c.d as i64, 2);
                    let a = r.tractor(Space::bulk(c.d), c.k, w0.clone());
                    let f = r.tractor(Space::bulk(c.d), c.k, w0 - Q::one());
                    let m = (h0 - 1) as usize;
                    let cst = -q((h0 - 2) * (h0 - 2));
                    out.push(same_along(
                        &x(&ys(&a, m)),
                        &ys(&d_bar(&a)?, m - 2).scale_by(&cst),
                    ));
                    out.push(same_along(
                        &x_star(&ys(&a, m)),
                        &ys(&d_bar_star(&a)?, m - 2).scale_by(&cst),
                    ));
                    out.push(same_along(
                        &ys(&x(&f), m),
                        &d_bar(&ys(&f, m - 2))?.scale_by(&cst),
                    ));
                    out.push(same_along(
                        &ys(&x_star(&f), m),
                        &d_bar_star(&ys(&f, m - 2))?.scale_by(&cst),
                    ));
                }
                Ok(all(out))
            }
        ),
    ]
}
