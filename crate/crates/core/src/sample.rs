//! Random field elements and differential polynomials for tests and the
//! self-test harness. All functions are deterministic given the RNG state.

use rand::Rng;

use crate::diffpoly::{DerivVar, DiffPoly, Monomial, Ring};
use crate::field::{Field, RationalFunction};

/// Shape limits for random polynomials over `K`.
#[derive(Clone, Copy, Debug)]
pub struct FieldShape {
    pub max_degree: u32,
    pub max_terms: usize,
}

impl Default for FieldShape {
    fn default() -> Self {
        FieldShape {
            max_degree: 2,
            max_terms: 3,
        }
    }
}

fn random_exps<R: Rng>(
    rng: &mut R,
    n: usize,
    max_degree: u32,
    t_step: Option<(usize, u32)>,
) -> Vec<u32> {
    let mut e = vec![0u32; n];
    let mut budget = rng.gen_range(0..=max_degree);
    while budget > 0 && n > 0 {
        let k = rng.gen_range(0..n);
        e[k] += 1;
        budget -= 1;
    }
    if let Some((slot, p)) = t_step {
        e[slot] *= p;
    }
    e
}

fn random_poly_with<R: Rng>(
    field: &Field,
    rng: &mut R,
    shape: FieldShape,
    t_step: Option<(usize, u32)>,
) -> RationalFunction {
    let p = field.characteristic();
    let n = field.num_gens();
    let terms = rng.gen_range(1..=shape.max_terms.max(1));
    let mut acc = RationalFunction::zero(field);
    for _ in 0..terms {
        let e = random_exps(rng, n, shape.max_degree, t_step);
        let c = rng.gen_range(1..p);
        acc = &acc + &RationalFunction::monomial(field, &e, c);
    }
    acc
}

/// A random polynomial in the generators (may be zero).
pub fn random_polynomial<R: Rng>(
    field: &Field,
    rng: &mut R,
    shape: FieldShape,
) -> RationalFunction {
    random_poly_with(field, rng, shape, None)
}

/// A random nonzero polynomial.
pub fn random_nonzero_polynomial<R: Rng>(
    field: &Field,
    rng: &mut R,
    shape: FieldShape,
) -> RationalFunction {
    loop {
        let a = random_polynomial(field, rng, shape);
        if !a.is_zero() {
            return a;
        }
    }
}

/// A random element of `K`, a quotient of random polynomials about half
/// the time.
pub fn random_element<R: Rng>(field: &Field, rng: &mut R, shape: FieldShape) -> RationalFunction {
    let num = random_polynomial(field, rng, shape);
    if rng.gen_bool(0.5) {
        num
    } else {
        &num / &random_nonzero_polynomial(field, rng, shape)
    }
}

pub fn random_nonzero_element<R: Rng>(
    field: &Field,
    rng: &mut R,
    shape: FieldShape,
) -> RationalFunction {
    loop {
        let a = random_element(field, rng, shape);
        if !a.is_zero() {
            return a;
        }
    }
}

/// A random constant: `t` occurs only through `t^p`.
pub fn random_constant<R: Rng>(field: &Field, rng: &mut R, shape: FieldShape) -> RationalFunction {
    let step = field.diff_gen_index().map(|i| (i, field.characteristic()));
    let num = random_poly_with(field, rng, shape, step);
    if rng.gen_bool(0.5) {
        return num;
    }
    loop {
        let den = random_poly_with(field, rng, shape, step);
        if !den.is_zero() {
            return &num / &den;
        }
    }
}

/// A random element with nonzero derivative. Requires a presentation with `t`.
pub fn random_nonconstant<R: Rng>(
    field: &Field,
    rng: &mut R,
    shape: FieldShape,
) -> RationalFunction {
    assert!(field.has_diff_gen(), "every element is constant without t");
    loop {
        let a = random_element(field, rng, shape);
        if !a.is_constant() {
            return a;
        }
    }
}

/// Shape limits for random differential polynomials.
#[derive(Clone, Copy, Debug)]
pub struct DiffShape {
    pub max_order: u32,
    pub max_degree: u32,
    pub max_terms: usize,
    pub coeff: FieldShape,
    /// Restricts coefficients to polynomials when false.
    pub rational_coeffs: bool,
}

impl Default for DiffShape {
    fn default() -> Self {
        DiffShape {
            max_order: 3,
            max_degree: 3,
            max_terms: 4,
            coeff: FieldShape::default(),
            rational_coeffs: false,
        }
    }
}

fn random_monomial<R: Rng>(ring: &Ring, rng: &mut R, shape: &DiffShape) -> Monomial {
    let mut m = Monomial::one();
    let degree = rng.gen_range(0..=shape.max_degree);
    for _ in 0..degree {
        let v = DerivVar::new(
            rng.gen_range(0..ring.arity() as u32),
            rng.gen_range(0..=shape.max_order),
        );
        m = m.mul(&Monomial::var(v, 1));
    }
    m
}

fn random_coeff<R: Rng>(field: &Field, rng: &mut R, shape: &DiffShape) -> RationalFunction {
    if shape.rational_coeffs {
        random_nonzero_element(field, rng, shape.coeff)
    } else {
        random_nonzero_polynomial(field, rng, shape.coeff)
    }
}

/// A random differential polynomial (may be zero).
pub fn random_dpoly<R: Rng>(ring: &Ring, rng: &mut R, shape: &DiffShape) -> DiffPoly {
    let terms = rng.gen_range(1..=shape.max_terms.max(1));
    let mut acc = DiffPoly::zero(ring);
    for _ in 0..terms {
        let m = random_monomial(ring, rng, shape);
        let c = random_coeff(ring.field(), rng, shape);
        acc = &acc + &DiffPoly::term(ring, m, c);
    }
    acc
}

/// A random differential polynomial outside `K` with nonzero separant.
pub fn random_separable<R: Rng>(ring: &Ring, rng: &mut R, shape: &DiffShape) -> DiffPoly {
    loop {
        let f = random_dpoly(ring, rng, shape);
        if f.is_zero() || f.is_in_k() {
            continue;
        }
        if f.separant().is_ok_and(|s| !s.is_zero()) {
            return f;
        }
    }
}

/// A random polynomial in the order-0 variables only.
pub fn random_algebraic<R: Rng>(ring: &Ring, rng: &mut R, shape: &DiffShape) -> DiffPoly {
    let flat = DiffShape {
        max_order: 0,
        ..*shape
    };
    random_dpoly(ring, rng, &flat)
}
