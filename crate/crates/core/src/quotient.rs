//! The field `L = Frac(K{x}/P)` for `P = [f]:s_f^∞`, and the construction of
//! a generic solution of `f = 0 ∧ g ≠ 0` inside it.
//!
//! Elements are fractions of raw differential polynomials. Equality is
//! semantic: `n1/d1 = n2/d2` iff `n1·d2 − n2·d1 ∈ P`.

use std::fmt;
use std::sync::Arc;

use crate::diffpoly::DiffPoly;
use crate::error::{Error, Result};
use crate::reduction::{full_reduce, make_satideal, Provenance, SatIdeal};

#[derive(Clone, Debug)]
pub struct QuotientElement {
    ideal: Arc<SatIdeal>,
    num: DiffPoly,
    den: DiffPoly,
}

fn decide(ideal: &SatIdeal, g: &DiffPoly) -> bool {
    ideal
        .contains(g)
        .expect("operands live in the ring of a validated ideal")
}

/// The class of `g` in `L`.
pub fn image(g: &DiffPoly, ideal: &Arc<SatIdeal>) -> Result<QuotientElement> {
    if g.ring() != ideal.generator().ring() {
        return Err(Error::FieldMismatch);
    }
    Ok(QuotientElement {
        ideal: ideal.clone(),
        num: g.clone(),
        den: DiffPoly::one(g.ring()),
    })
}

/// `a = x + P`.
pub fn generic_point(ideal: &Arc<SatIdeal>) -> QuotientElement {
    let x = DiffPoly::x(ideal.generator().ring(), 0);
    image(&x, ideal).expect("x lives in the ideal's ring")
}

impl QuotientElement {
    pub fn ideal(&self) -> &Arc<SatIdeal> {
        &self.ideal
    }

    pub fn numerator(&self) -> &DiffPoly {
        &self.num
    }

    pub fn denominator(&self) -> &DiffPoly {
        &self.den
    }

    fn same_ideal(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ideal, &other.ideal)
            || self.ideal.generator() == other.ideal.generator()
        {
            Ok(())
        } else {
            Err(Error::MixedIdeals)
        }
    }

    fn with(&self, num: DiffPoly, den: DiffPoly) -> Self {
        QuotientElement {
            ideal: self.ideal.clone(),
            num,
            den,
        }
    }

    pub fn is_zero(&self) -> bool {
        decide(&self.ideal, &self.num)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ideal(other)?;
        if self.den == other.den {
            return Ok(self.with(&self.num + &other.num, self.den.clone()));
        }
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        Ok(self.with(num, &self.den * &other.den))
    }

    pub fn neg(&self) -> Self {
        self.with(-&self.num, self.den.clone())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ideal(other)?;
        Ok(self.with(&self.num * &other.num, &self.den * &other.den))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZeroClass);
        }
        Ok(self.with(self.den.clone(), self.num.clone()))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv()?)
    }

    pub fn eq_class(&self, other: &Self) -> Result<bool> {
        self.same_ideal(other)?;
        let diff = &(&self.num * &other.den) - &(&other.num * &self.den);
        Ok(decide(&self.ideal, &diff))
    }

    /// The derivation of `L`, by the quotient rule.
    pub fn delta(&self) -> Self {
        if self.den.is_in_k() {
            let d = self.den.as_k_element().expect("element of K");
            if d.is_one() {
                return self.with(self.num.delta(), self.den.clone());
            }
        }
        let num = &(&self.num.delta() * &self.den) - &(&self.num * &self.den.delta());
        self.with(num, &self.den * &self.den)
    }

    /// An equal fraction whose parts are reduction remainders of rank below
    /// the generator, with the separant/initial powers moved across.
    pub fn representative(&self) -> (DiffPoly, DiffPoly) {
        let f = self.ideal.generator();
        let s = self.ideal.separant();
        let i = f.initial().expect("generator is not in K");
        let rn = full_reduce(&self.num, f).expect("validated ideal");
        let rd = full_reduce(&self.den, f).expect("validated ideal");
        // num ≡ g0n / (i^mn s^nn), den ≡ g0d / (i^md s^nd)
        let num = &(&rn.remainder * &i.pow(rd.m)) * &s.pow(rd.n);
        let den = &(&rd.remainder * &i.pow(rn.m)) * &s.pow(rn.n);
        if let Some(c) = den.as_k_element() {
            let inv = c.inv().expect("denominator class is nonzero");
            return (num.scale(&inv), DiffPoly::one(f.ring()));
        }
        (num, den)
    }
}

impl fmt::Display for QuotientElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.representative();
        if d.as_k_element().is_some_and(|c| c.is_one()) {
            write!(f, "{n}")
        } else {
            write!(f, "({n})/({d})")
        }
    }
}

/// Free-function forms of the field operations.
pub fn q_add(a: &QuotientElement, b: &QuotientElement) -> Result<QuotientElement> {
    a.add(b)
}

pub fn q_mul(a: &QuotientElement, b: &QuotientElement) -> Result<QuotientElement> {
    a.mul(b)
}

pub fn q_neg(a: &QuotientElement) -> QuotientElement {
    a.neg()
}

pub fn q_inv(a: &QuotientElement) -> Result<QuotientElement> {
    a.inv()
}

pub fn q_is_zero(a: &QuotientElement) -> bool {
    a.is_zero()
}

pub fn q_eq(a: &QuotientElement, b: &QuotientElement) -> Result<bool> {
    a.eq_class(b)
}

pub fn q_delta(a: &QuotientElement) -> QuotientElement {
    a.delta()
}

/// `s_f(a) ≠ 0` at the generic point, i.e. the separant is not in `P`.
pub fn separating_basis_check(ideal: &SatIdeal) -> bool {
    !decide(ideal, ideal.separant())
}

/// A solution of `f = 0 ∧ g ≠ 0` in `L`, with the data to re-check it.
#[derive(Clone, Debug)]
pub struct WitnessReport {
    pub ideal: Arc<SatIdeal>,
    pub inequation: DiffPoly,
    pub generic_point: QuotientElement,
    pub f_value_zero: bool,
    pub g_value_nonzero: bool,
    pub separability_flag: bool,
    pub precondition_log: Vec<String>,
}

impl WitnessReport {
    pub fn is_valid(&self) -> bool {
        self.f_value_zero && self.g_value_nonzero && self.separability_flag
    }

    /// Recomputes the flags from the stored ideal and polynomials.
    pub fn recheck(&self) -> bool {
        let f = self.ideal.generator();
        decide(&self.ideal, f) == self.f_value_zero
            && !decide(&self.ideal, &self.inequation) == self.g_value_nonzero
            && separating_basis_check(&self.ideal) == self.separability_flag
    }

    pub fn to_record(&self) -> Vec<(String, String)> {
        let flag = |zero: bool| if zero { "0" } else { "nonzero" };
        let mut out = vec![
            ("ideal.f".to_string(), self.ideal.generator().to_string()),
            ("g".to_string(), self.inequation.to_string()),
            ("generic_point".to_string(), self.generic_point.to_string()),
            ("f_at_a".to_string(), flag(self.f_value_zero).to_string()),
            (
                "g_at_a".to_string(),
                flag(!self.g_value_nonzero).to_string(),
            ),
            (
                "separant_nonzero".to_string(),
                self.separability_flag.to_string(),
            ),
            (
                "irreducibility".to_string(),
                self.ideal.provenance().to_string(),
            ),
        ];
        for (k, line) in self.precondition_log.iter().enumerate() {
            out.push((format!("precondition[{k}]"), line.clone()));
        }
        out
    }
}

/// Builds the generic point of `[f]:s_f^∞`, which satisfies `f = 0` and
/// `g ≠ 0` whenever `g` ranks below `f`.
///
/// `g` must have lower order than `f`, or at least lower rank (a nonzero
/// element of lower rank is never in `P`). Irreducibility of `f` must be
/// provable by the heuristic or asserted by the caller, who is otherwise
/// expected to pass the irreducible factor carrying the nonzero separant.
pub fn sdcf_witness(f: &DiffPoly, g: &DiffPoly, assert_irreducible: bool) -> Result<WitnessReport> {
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroInput);
    }
    if f.ring() != g.ring() {
        return Err(Error::FieldMismatch);
    }
    if f.ring().arity() != 1 {
        return Err(Error::MultivariateInput);
    }
    if f.separant()?.is_zero() {
        return Err(Error::ZeroSeparant);
    }
    let mut log = vec![format!("separant = {} is nonzero", f.separant()?)];
    let (of, og) = (f.order()?, g.order()?);
    if og < of {
        log.push(format!("ord g = {og} < ord f = {of}"));
    } else {
        match (g.rank(), f.rank()) {
            (Ok(rg), Ok(rf)) if rg < rf => log.push(format!(
                "rank g = {rg} < rank f = {rf} (ord g = {og} not below ord f)"
            )),
            _ => return Err(Error::OrderNotLower),
        }
    }
    let ideal = Arc::new(make_satideal(f, assert_irreducible)?);
    log.push(match ideal.provenance() {
        Provenance::VerifiedHeuristic => "f irreducible by sufficient criterion".to_string(),
        Provenance::AssertedByCaller => "f irreducible by caller assertion".to_string(),
    });
    let a = generic_point(&ideal);
    let f_value_zero = image(f, &ideal)?.is_zero();
    let g_value_nonzero = !image(g, &ideal)?.is_zero();
    let separability_flag = separating_basis_check(&ideal);
    Ok(WitnessReport {
        ideal,
        inequation: g.clone(),
        generic_point: a,
        f_value_zero,
        g_value_nonzero,
        separability_flag,
        precondition_log: log,
    })
}
