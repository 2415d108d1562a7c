//! Deterministic search for points of `K` where a differential polynomial
//! does not vanish.
//!
//! Candidate order: the scalars `0..p` ascending; then, for each level
//! `D = 1, 2, ...`, the polynomials in `t` of degree exactly `D` (leading
//! coefficient first, coefficient vectors ascending), followed by each
//! constant-generator monomial of total degree `D` multiplied by a nonzero
//! scalar or by a polynomial in `t` of degree `1..=D`.

use super::DiffPoly;
use crate::error::{Error, Result};
use crate::field::poly::Exps;
use crate::field::{Field, RationalFunction};

pub const DEFAULT_WITNESS_BUDGET: usize = 10_000;

fn t_poly(field: &Field, t: usize, degree: u32, mut code: u64) -> RationalFunction {
    // code enumerates (a_D in 1..p, a_{D-1}..a_0 in 0..p), a_0 fastest
    let p = field.characteristic() as u64;
    let mut coeffs = vec![0u32; degree as usize + 1];
    for c in coeffs.iter_mut() {
        *c = (code % p) as u32;
        code /= p;
    }
    coeffs[degree as usize] = (code + 1) as u32;
    let n = field.num_gens();
    let mut acc = RationalFunction::zero(field);
    for (k, &c) in coeffs.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let mut e = vec![0u32; n];
        e[t] = k as u32;
        acc = &acc + &RationalFunction::monomial(field, &e, c);
    }
    acc
}

fn t_polys_of_degree(field: &Field, t: usize, d: u32) -> impl Iterator<Item = RationalFunction> {
    let p = field.characteristic() as u64;
    let count = (p - 1).saturating_mul(p.saturating_pow(d));
    let field = field.clone();
    (0..count).map(move |code| t_poly(&field, t, d, code))
}

/// Exponent vectors over `m` slots with total degree exactly `d`, ascending.
fn constant_monomials(m: usize, d: u32) -> Vec<Exps> {
    fn rec(m: usize, d: u32, prefix: &mut Exps, out: &mut Vec<Exps>) {
        if prefix.len() + 1 == m {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=d {
            prefix.push(e);
            rec(m, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if m > 0 {
        rec(m, d, &mut Exps::new(), &mut out);
    }
    out
}

/// The infinite (or, for `GF(p)` itself, finite) candidate sequence.
pub fn witness_candidates(field: &Field) -> Box<dyn Iterator<Item = RationalFunction>> {
    let p = field.characteristic();
    let m = field.num_constants();
    let t = field.diff_gen_index();
    let n = field.num_gens();
    let f0 = field.clone();
    let scalars = (0..p as i64).map(move |c| RationalFunction::scalar(&f0, c));
    if n == 0 {
        return Box::new(scalars);
    }
    let f1 = field.clone();
    let levels = (1u32..).flat_map(move |d| {
        let field = f1.clone();
        let pure_t: Box<dyn Iterator<Item = RationalFunction>> = match t {
            Some(t) => Box::new(t_polys_of_degree(&field, t, d)),
            None => Box::new(std::iter::empty()),
        };
        let f2 = field.clone();
        let mixed = constant_monomials(m, d).into_iter().flat_map(move |ce| {
            let mut e = vec![0u32; n];
            e[..m].copy_from_slice(&ce);
            let mu = RationalFunction::monomial(&f2, &e, 1);
            let f3 = f2.clone();
            let mu2 = mu.clone();
            let scal = (1..p as i64).map(move |c| &mu * &RationalFunction::scalar(&f3, c));
            let f4 = f2.clone();
            let with_t: Box<dyn Iterator<Item = RationalFunction>> = match t {
                Some(t) => Box::new((1..=d).flat_map(move |k| {
                    t_polys_of_degree(&f4, t, k).map({
                        let mu = mu2.clone();
                        move |q| &mu * &q
                    })
                })),
                None => Box::new(std::iter::empty()),
            };
            scal.chain(with_t)
        });
        pure_t.chain(mixed)
    });
    Box::new(scalars.chain(levels))
}

/// Odometer step over `[0, max]^n`; false once exhausted.
fn next_tuple(idx: &mut [usize], max: usize) -> bool {
    for k in (0..idx.len()).rev() {
        if idx[k] < max {
            idx[k] += 1;
            for x in idx.iter_mut().skip(k + 1) {
                *x = 0;
            }
            return true;
        }
    }
    false
}

/// Finds `a ∈ K^n` with `g(a) ≠ 0`, trying at most `budget` candidate points.
///
/// For several indeterminates, tuples of candidates are visited in shells of
/// increasing maximal candidate index, lexicographically within a shell.
pub fn nonvanishing_witness(g: &DiffPoly, budget: usize) -> Result<Vec<RationalFunction>> {
    if g.is_zero() {
        return Err(Error::ZeroInput);
    }
    let n = g.ring().arity();
    if n == 0 {
        // g is a nonzero element of K
        return Ok(Vec::new());
    }
    let mut source = witness_candidates(g.field());
    let mut pool: Vec<RationalFunction> = Vec::new();
    let mut tried = 0usize;
    let mut shell = 0usize;
    loop {
        if pool.len() <= shell {
            match source.next() {
                Some(c) => pool.push(c),
                None => return Err(Error::Exhausted(tried)),
            }
        }
        // all index tuples in [0, shell]^n with at least one entry == shell
        let mut idx = vec![0usize; n];
        loop {
            if idx.contains(&shell) {
                if tried == budget {
                    return Err(Error::Exhausted(budget));
                }
                tried += 1;
                let point: Vec<RationalFunction> = idx.iter().map(|&i| pool[i].clone()).collect();
                if !g.evaluate(&point)?.is_zero() {
                    return Ok(point);
                }
            }
            if !next_tuple(&mut idx, shell) {
                break;
            }
        }
        shell += 1;
    }
}
