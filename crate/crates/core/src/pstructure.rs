//! p-monomials, differential p-independence and p-bases, the λ-functions,
//! and the two presentation extensions (new constants, p-th roots).

use std::fmt;

use crate::error::{Error, Result};
use crate::field::poly::{Exps, Poly};
use crate::field::{
    independent_over_pth_powers, make_presentation, p_coordinates, solve_over_pth_powers, Field,
    PCoordinates, RationalFunction, DIFF_GEN,
};

/// The products `a1^i1 ··· an^in` with `0 <= ik < p`, exponent vectors in
/// lexicographic order with the first entry most significant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PMonomialSet {
    pub source: Vec<RationalFunction>,
    pub exponents: Vec<Exps>,
    pub monomials: Vec<RationalFunction>,
}

impl PMonomialSet {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }
}

pub fn p_monomials(field: &Field, a: &[RationalFunction]) -> PMonomialSet {
    let p = field.characteristic();
    let exponents = crate::field::pcoords::residue_vectors(p, a.len());
    // powers[k][i] = a_k^i
    let powers: Vec<Vec<RationalFunction>> = a
        .iter()
        .map(|x| {
            let mut v = vec![RationalFunction::one(field)];
            for i in 1..p as usize {
                let next = &v[i - 1] * x;
                v.push(next);
            }
            v
        })
        .collect();
    let monomials = exponents
        .iter()
        .map(|e| {
            e.iter()
                .enumerate()
                .fold(RationalFunction::one(field), |acc, (k, &i)| {
                    if i == 0 {
                        acc
                    } else {
                        &acc * &powers[k][i as usize]
                    }
                })
        })
        .collect();
    PMonomialSet {
        source: a.to_vec(),
        exponents,
        monomials,
    }
}

fn coordinates(set: &PMonomialSet) -> Vec<PCoordinates> {
    set.monomials.iter().map(p_coordinates).collect()
}

fn dimension(field: &Field) -> usize {
    (field.characteristic() as usize).saturating_pow(field.num_gens() as u32)
}

/// Whether the p-monomials of `a` are linearly independent over `K^p`.
pub fn is_p_independent(field: &Field, a: &[RationalFunction]) -> bool {
    let p = field.characteristic() as usize;
    let count = match p.checked_pow(a.len() as u32) {
        Some(c) => c,
        None => return false,
    };
    // constants span only C_K, of dimension p^m over K^p
    let bound = if field.has_diff_gen() && a.iter().all(RationalFunction::is_constant) {
        p.saturating_pow(field.num_constants() as u32)
    } else {
        dimension(field)
    };
    if count > bound {
        return false;
    }
    let set = p_monomials(field, a);
    independent_over_pth_powers(&coordinates(&set))
}

/// Constants whose p-monomials are independent over `K^p`.
pub fn is_diff_p_independent(field: &Field, a: &[RationalFunction]) -> bool {
    a.iter().all(RationalFunction::is_constant) && is_p_independent(field, a)
}

/// `(ε, e)` with `[C_K : K^p] = p^ε` and `[K : K^p] = p^e`.
pub fn degree_of_imperfection(field: &Field) -> (usize, usize) {
    let m = field.num_constants();
    if field.has_diff_gen() {
        (m, m + 1)
    } else {
        (m, m)
    }
}

/// The constant generators; `C_K = GF(p)(c̄)(t^p)` makes them a basis.
pub fn differential_p_basis(field: &Field) -> Vec<RationalFunction> {
    (0..field.num_constants())
        .map(|i| RationalFunction::generator(field, i))
        .collect()
}

/// Which defining clause of a λ-function applied.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LambdaCase {
    NonConstant,
    Dependent,
    Independent,
    Solved,
}

impl LambdaCase {
    pub fn tag(self) -> &'static str {
        match self {
            LambdaCase::NonConstant => "non-constant",
            LambdaCase::Dependent => "dependent",
            LambdaCase::Independent => "independent",
            LambdaCase::Solved => "solved",
        }
    }
}

impl fmt::Display for LambdaCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaResult {
    pub values: Vec<RationalFunction>,
    pub monomials: PMonomialSet,
    pub case: LambdaCase,
}

impl LambdaResult {
    /// `Σ ℓ_i^p · m_i`.
    pub fn reconstruct(&self, field: &Field) -> RationalFunction {
        self.values.iter().zip(&self.monomials.monomials).fold(
            RationalFunction::zero(field),
            |acc, (l, m)| {
                if l.is_zero() {
                    acc
                } else {
                    &acc + &(&l.frobenius() * m)
                }
            },
        )
    }

    /// Whether `Σ ℓ_i^p · m_i = b`, decided by cross-multiplication so
    /// that no gcd of the (possibly large) unreduced sum is needed.
    pub fn reconstructs(&self, b: &RationalFunction) -> bool {
        let mut acc: Option<(Poly, Poly)> = None;
        for (l, m) in self.values.iter().zip(&self.monomials.monomials) {
            if l.is_zero() {
                continue;
            }
            let lp = l.frobenius();
            let (n, d) = (
                lp.numerator().mul(m.numerator()),
                lp.denominator().mul(m.denominator()),
            );
            acc = Some(match acc {
                None => (n, d),
                Some((an, ad)) => add_unreduced(an, ad, n, d),
            });
        }
        match acc {
            None => b.is_zero(),
            Some((n, d)) => n.mul(b.denominator()) == b.numerator().mul(&d),
        }
    }

    pub fn to_record(&self) -> Vec<(String, String)> {
        let mut out = vec![("case".to_string(), self.case.to_string())];
        for (i, v) in self.values.iter().enumerate() {
            out.push((format!("lambda[{i}]"), v.to_string()));
        }
        out
    }
}

fn zero_result(field: &Field, set: PMonomialSet, case: LambdaCase) -> LambdaResult {
    LambdaResult {
        values: vec![RationalFunction::zero(field); set.len()],
        monomials: set,
        case,
    }
}

/// Writes `b` over the p-monomials of `set` with coefficients in `K^p` and
/// takes p-th roots, when such an expression exists.
fn solve_pth(set: &PMonomialSet, b: &RationalFunction) -> Option<Vec<RationalFunction>> {
    let sol = solve_over_pth_powers(&coordinates(set), &p_coordinates(b)).solution?;
    sol.iter().map(RationalFunction::pth_root).collect()
}

fn add_unreduced(an: Poly, ad: Poly, n: Poly, d: Poly) -> (Poly, Poly) {
    if ad == d {
        return (an.add(&n), ad);
    }
    if let Some(q) = d.div_exact(&ad) {
        return (an.mul(&q).add(&n), d);
    }
    if let Some(q) = ad.div_exact(&d) {
        return (an.add(&n.mul(&q)), ad);
    }
    (an.mul(&d).add(&n.mul(&ad)), ad.mul(&d))
}

/// The λ-functions for the differential p-basis of the presentation.
pub fn lambda_finite(field: &Field, b: &RationalFunction) -> LambdaResult {
    let set = p_monomials(field, &differential_p_basis(field));
    if !b.is_constant() {
        return zero_result(field, set, LambdaCase::NonConstant);
    }
    let values = solve_pth(&set, b).expect("the constant generators span C_K over K^p");
    LambdaResult {
        values,
        monomials: set,
        case: LambdaCase::Solved,
    }
}

/// `ℓ_{n,i}(a1..an; b)`.
pub fn lambda_infinite(
    field: &Field,
    a: &[RationalFunction],
    b: &RationalFunction,
) -> LambdaResult {
    let set = p_monomials(field, a);
    if !b.is_constant() || !a.iter().all(RationalFunction::is_constant) {
        return zero_result(field, set, LambdaCase::NonConstant);
    }
    if !is_p_independent(field, a) {
        return zero_result(field, set, LambdaCase::Dependent);
    }
    let mut ab = a.to_vec();
    ab.push(b.clone());
    if is_p_independent(field, &ab) {
        return zero_result(field, set, LambdaCase::Independent);
    }
    // a independent and (a, b) dependent: b lies in the K^p-span of the p-monomials of a
    let values = solve_pth(&set, b).expect("dependent extension is solvable");
    LambdaResult {
        values,
        monomials: set,
        case: LambdaCase::Solved,
    }
}

/// Rewrites `a` into a presentation that contains all of its generator names.
pub fn embed(a: &RationalFunction, target: &Field) -> Result<RationalFunction> {
    let source = a.field();
    if source.characteristic() != target.characteristic() {
        return Err(Error::FieldMismatch);
    }
    let slots = source
        .gen_names()
        .iter()
        .map(|n| target.gen_index(n).ok_or(Error::FieldMismatch))
        .collect::<Result<Vec<_>>>()?;
    if source.has_diff_gen() != target.has_diff_gen() {
        return Err(Error::FieldMismatch);
    }
    let n = target.num_gens();
    Ok(a.map_exponents(target, |e| {
        let mut out = Exps::from_elem(0, n);
        for (k, &x) in e.iter().enumerate() {
            out[slots[k]] = x;
        }
        out
    }))
}

/// Appends new constant generators.
pub fn extend_with_constants(field: &Field, names: &[impl AsRef<str>]) -> Result<Field> {
    let mut all: Vec<String> = field.constant_gens().to_vec();
    all.extend(names.iter().map(|n| n.as_ref().to_string()));
    make_presentation(field.characteristic() as u64, &all, field.has_diff_gen())
}

/// The embedding `K → K'` sending the replaced generator `c` to `r^p`.
#[derive(Clone, Debug)]
pub struct RootEmbedding {
    pub source: Field,
    pub target: Field,
    pub slot: usize,
}

impl RootEmbedding {
    pub fn apply(&self, a: &RationalFunction) -> Result<RationalFunction> {
        if a.field() != &self.source {
            return Err(Error::FieldMismatch);
        }
        let p = self.source.characteristic();
        let slot = self.slot;
        Ok(a.map_exponents(&self.target, |e| {
            let mut out = Exps::from_slice(e);
            out[slot] *= p;
            out
        }))
    }

    pub fn root_name(&self) -> &str {
        &self.target.constant_gens()[self.slot]
    }

    pub fn replaced_name(&self) -> &str {
        &self.source.constant_gens()[self.slot]
    }
}

fn fresh_name(field: &Field) -> String {
    let taken = |n: &str| field.gen_index(n).is_some() || n == DIFF_GEN;
    if !taken("r") {
        return "r".to_string();
    }
    (1..)
        .map(|k| format!("r{k}"))
        .find(|n| !taken(n))
        .expect("unbounded supply of names")
}

/// Replaces the constant generator `target` by a fresh `r` with `r^p = c`.
pub fn adjoin_pth_root(
    field: &Field,
    target: &str,
    new_name: Option<&str>,
) -> Result<(Field, RootEmbedding)> {
    let slot = field
        .constant_gens()
        .iter()
        .position(|c| c == target)
        .ok_or_else(|| Error::NotAConstantGenerator(target.to_string()))?;
    let name = match new_name {
        Some(n) => {
            if n != target && field.gen_index(n).is_some() {
                return Err(Error::DuplicateGeneratorName(n.to_string()));
            }
            n.to_string()
        }
        None => fresh_name(field),
    };
    let mut names = field.constant_gens().to_vec();
    names[slot] = name;
    let new = make_presentation(field.characteristic() as u64, &names, field.has_diff_gen())?;
    let emb = RootEmbedding {
        source: field.clone(),
        target: new.clone(),
        slot,
    };
    Ok((new, emb))
}
