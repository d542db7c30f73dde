//! Seeded random sections for identity checks.
//!
//! By default coefficient functions are polynomials of total degree at most
//! two in `(r, x1, .., xn)` with integer coefficients in `−3..=3`.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::model::{Space, WeightedForm};
use crate::num::{q, qr, Exp, Q};
use crate::poly::{Monomial, Poly};
use crate::tractor::TractorForm;

pub struct SectionRng {
    rng: ChaCha8Rng,
    max_degree: u32,
    terms: usize,
}

impl SectionRng {
    pub fn new(seed: u64) -> Self {
        SectionRng {
            rng: ChaCha8Rng::seed_from_u64(seed),
            max_degree: 2,
            terms: 3,
        }
    }

    /// Same stream, allowing polynomials up to `max_degree` with `terms`
    /// monomials each.
    pub fn with_shape(seed: u64, max_degree: u32, terms: usize) -> Self {
        SectionRng {
            max_degree,
            terms,
            ..SectionRng::new(seed)
        }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen_bool(0.5)
    }

    pub fn choose<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        items.choose(&mut self.rng).expect("nonempty choice")
    }

    /// A rational with small numerator and denominator in `{2, 3, 5, 7}`,
    /// never an integer or half-integer unless `avoid` is empty.
    pub fn weight(&mut self, avoid: &[Q]) -> Q {
        loop {
            let den = *self.choose(&[3i64, 5, 7]);
            let num = self.int(-4 * den, 4 * den);
            let w = qr(num, den);
            if !w.is_integer() && !avoid.contains(&w) {
                return w;
            }
        }
    }

    pub fn poly(&mut self, space: Space, bulk_r: bool) -> Poly {
        let coords: Vec<usize> = space.coords().filter(|&a| a != 0 || bulk_r).collect();
        let mut out = Poly::zero();
        for _ in 0..self.terms {
            let deg = self.int(0, self.max_degree as i64) as u32;
            let mut r = 0i64;
            let mut x = Vec::new();
            for _ in 0..deg {
                let a = *self.choose(&coords);
                if a == 0 {
                    r += 1;
                } else {
                    if x.len() < a {
                        x.resize(a, 0);
                    }
                    x[a - 1] += 1;
                }
            }
            let c = self.int(-3, 3);
            out.add_term(Monomial::new(Exp::from_integer(r), 0, x), q(c));
        }
        out
    }

    /// Random form with about two nonzero components.
    pub fn form(&mut self, space: Space, degree: i32, weight: Q) -> WeightedForm {
        let dim = space.coords().count();
        let mut out = WeightedForm::zero(space, degree, weight.clone());
        if degree < 0 || degree as usize > dim {
            return out;
        }
        let coords: Vec<usize> = space.coords().collect();
        for _ in 0..2 {
            let mut idx = coords.clone();
            idx.shuffle(&mut self.rng);
            idx.truncate(degree as usize);
            let f = self.poly(space, space.is_bulk());
            let piece = WeightedForm::monomial(space, weight.clone(), &idx, f)
                .expect("coordinates drawn from the space");
            out = out.add(&piece);
        }
        out
    }

    /// Random tractor `k`-form of weight `w` in the flat scale.
    pub fn tractor(&mut self, space: Space, k: i32, w: Q) -> TractorForm {
        let shape = TractorForm::zero(space, k, w.clone());
        let slots = [0, 1, 2, 3].map(|i| {
            let s = shape.slot(i);
            self.form(space, s.degree(), s.weight().clone())
        });
        TractorForm::from_slots(space, k, w, slots)
    }
}
