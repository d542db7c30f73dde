//! Enveloping-algebra and special-function identities.

use num_traits::Zero;

use super::{all, expect, Identity, Scope};
use crate::num::{q, qr, Exp, Q};
use crate::sl2core::{
    bessel, casimir_products, casimir_products_closed, frobenius, normal_order,
    normal_order_by_rewriting, Generator, HPoly, NOSeries,
};

const MAX_L: usize = 6;

fn word(a: usize, b: usize) -> NOSeries {
    NOSeries::word(Exp::from_integer(a as i64), b as u32, HPoly::one())
}

pub(super) fn identities() -> Vec<Identity> {
    vec![
        Identity {
            family: "sl2core",
            name: "product of Casimir shifts = Pochhammer sum, l <= 6",
            scope: Scope::Once,
            check: |_, _| {
                Ok(all((0..=MAX_L).map(|l| {
                    expect(casimir_products(l) == casimir_products_closed(l), || {
                        format!("l = {l}")
                    })
                })))
            },
        },
        Identity {
            family: "sl2core",
            name: "y C_l = x^l y^(l+1), l <= 6",
            scope: Scope::Once,
            check: |_, _| {
                let y = NOSeries::generator(&Generator::Y);
                let mut out = Vec::new();
                for l in 0..=MAX_L {
                    let left = y.mul(&casimir_products(l))?;
                    out.push(expect(left == word(l, l + 1), || {
                        format!("l = {l}: {left}")
                    }));
                }
                Ok(all(out))
            },
        },
        Identity {
            family: "sl2core",
            name: "C_l x = x^(l+1) y^l, l <= 6",
            scope: Scope::Once,
            check: |_, _| {
                let x = NOSeries::generator(&Generator::X);
                let mut out = Vec::new();
                for l in 0..=MAX_L {
                    let right = casimir_products(l).mul(&x)?;
                    out.push(expect(right == word(l + 1, l), || {
                        format!("l = {l}: {right}")
                    }));
                }
                Ok(all(out))
            },
        },
        Identity {
            family: "sl2core",
            name: "normal ordering agrees with rewriting on random words",
            scope: Scope::Once,
            check: |_, rng| {
                let gens = [Generator::X, Generator::Y, Generator::H];
                let mut out = Vec::new();
                for _ in 0..10 {
                    let len = rng.int(1, 7) as usize;
                    let w: Vec<Generator> = (0..len).map(|_| rng.choose(&gens).clone()).collect();
                    let fast = normal_order(&w)?;
                    let slow = normal_order_by_rewriting(&w)?;
                    out.push(expect(fast == slow, || format!("{w:?}: {fast} vs {slow}")));
                }
                Ok(all(out))
            },
        },
        Identity {
            family: "sl2core",
            name: "Frobenius residual vanishes, random and integer h0",
            scope: Scope::Once,
            check: |_, rng| {
                let mut h0s: Vec<Q> = (2..=8).map(q).collect();
                for _ in 0..20 {
                    h0s.push(rng.weight(&[]));
                }
                Ok(all(h0s.into_iter().map(|h0| {
                    let pair = frobenius(&h0, 8);
                    expect(pair.residual_vanishes(), || format!("h0 = {h0}"))
                })))
            },
        },
        Identity {
            family: "sl2core",
            name: "Bessel = Frobenius regular part; log part at h0 = 3, 5",
            scope: Scope::Once,
            check: |_, _| {
                let mut out = Vec::new();
                for h0 in [qr(5, 2), qr(7, 2), qr(13, 3), q(7)] {
                    let pair = frobenius(&h0, 8);
                    if h0.is_integer() {
                        continue;
                    }
                    let b = bessel(&h0, 8)?;
                    out.push(expect(pair.regular == b, || format!("h0 = {h0}")));
                }
                for h0 in [3, 5] {
                    let pair = frobenius(&q(h0), 8);
                    out.push(expect(
                        pair.residual_vanishes() && pair.log_part.iter().any(|c| !c.is_zero()),
                        || format!("h0 = {h0}"),
                    ));
                }
                Ok(all(out))
            },
        },
    ]
}
