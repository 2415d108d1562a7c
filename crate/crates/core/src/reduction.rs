//! Ritt reduction in `K{x}` with certificates, and membership in the
//! saturated ideal `P = [f]:s_f^∞`.
//!
//! For `f` with nonzero separant `s_f` and initial `i_f`, [`full_reduce`]
//! produces exponents `n, m`, cofactors `h_j`, a quotient `q` and a
//! remainder `g0` with
//!
//! ```text
//! i_f^m · s_f^n · g = i_f^m · Σ_{j≥1} h_j·δ^j f + q·f + g0,   rank g0 < rank f.
//! ```
//!
//! When `f` is irreducible, `g ∈ P` exactly when `g0 = 0`.

use std::collections::BTreeMap;
use std::fmt;

use crate::diffpoly::{DerivVar, DiffPoly, Monomial};
use crate::error::{Error, Result};

fn require_univariate(f: &DiffPoly) -> Result<()> {
    if f.ring().arity() != 1 {
        return Err(Error::MultivariateInput);
    }
    Ok(())
}

fn check_divisor(f: &DiffPoly) -> Result<DiffPoly> {
    require_univariate(f)?;
    let s = f.separant()?;
    if s.is_zero() {
        return Err(Error::ZeroSeparant);
    }
    Ok(s)
}

fn check_same_ring(g: &DiffPoly, f: &DiffPoly) -> Result<()> {
    if g.ring() != f.ring() {
        return Err(Error::FieldMismatch);
    }
    Ok(())
}

/// `s_f^n · g = Σ_{j≥1} h_j·δ^j f + remainder`, `ord remainder ≤ ord f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialRemainder {
    pub separant_power: u32,
    pub remainder: DiffPoly,
    pub cofactors: BTreeMap<u32, DiffPoly>,
}

/// `i_f^m · h = quotient·f + remainder`, `rank remainder < rank f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoRemainder {
    pub initial_power: u32,
    pub quotient: DiffPoly,
    pub remainder: DiffPoly,
}

/// Eliminates derivatives above the order of `f`.
///
/// Each step rewrites the top derivative `x_{r+k}` through
/// `δ^k f = s_f·x_{r+k} + (lower)`, multiplying by `s_f` unless the separant
/// is an element of `K`, in which case it is inverted instead.
pub fn partial_remainder(g: &DiffPoly, f: &DiffPoly) -> Result<PartialRemainder> {
    let s = check_divisor(f)?;
    check_same_ring(g, f)?;
    let r = f.order()?;
    let s_inv = s.as_k_element().and_then(|c| c.inv());
    let mut derivs: Vec<DiffPoly> = vec![f.clone()];
    let mut cur = g.clone();
    let mut n = 0u32;
    let mut cofactors: BTreeMap<u32, DiffPoly> = BTreeMap::new();
    while let Some(top) = cur.max_order().filter(|&o| o > r) {
        let k = top - r;
        while derivs.len() <= k as usize {
            let next = derivs.last().expect("nonempty").delta();
            derivs.push(next);
        }
        let v = DerivVar::x(top);
        let d = cur.degree_in(v);
        let mut lead = cur.coeff_in(v, d).mul_monomial(&Monomial::var(v, d - 1));
        let dkf = &derivs[k as usize];
        match &s_inv {
            Some(inv) => {
                lead = lead.scale(inv);
                cur = &cur - &(&lead * dkf);
            }
            None => {
                cur = &(&s * &cur) - &(&lead * dkf);
                for h in cofactors.values_mut() {
                    *h = &s * &*h;
                }
                n += 1;
            }
        }
        let slot = cofactors
            .entry(k)
            .or_insert_with(|| DiffPoly::zero(f.ring()));
        *slot = &*slot + &lead;
    }
    cofactors.retain(|_, h| !h.is_zero());
    Ok(PartialRemainder {
        separant_power: n,
        remainder: cur,
        cofactors,
    })
}

/// Algebraic pseudo-division by `f` in its leader.
pub fn pseudo_remainder(h: &DiffPoly, f: &DiffPoly) -> Result<PseudoRemainder> {
    require_univariate(f)?;
    check_same_ring(h, f)?;
    let v = f.leader()?;
    let df = f.degree_in(v);
    let init = f.initial()?;
    if h.max_order().is_some_and(|o| o > v.order) {
        return Err(Error::OrderTooHigh);
    }
    let init_inv = init.as_k_element().and_then(|c| c.inv());
    let mut cur = h.clone();
    let mut q = DiffPoly::zero(f.ring());
    let mut m = 0u32;
    while !cur.is_zero() && cur.degree_in(v) >= df {
        let e = cur.degree_in(v);
        let mut lead = cur.coeff_in(v, e).mul_monomial(&Monomial::var(v, e - df));
        match &init_inv {
            Some(inv) => {
                lead = lead.scale(inv);
                cur = &cur - &(&lead * f);
                q = &q + &lead;
            }
            None => {
                cur = &(&init * &cur) - &(&lead * f);
                q = &(&init * &q) + &lead;
                m += 1;
            }
        }
    }
    Ok(PseudoRemainder {
        initial_power: m,
        quotient: q,
        remainder: cur,
    })
}

/// Evidence for `i_f^m·s_f^n·g ≡ remainder` modulo `[f]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCertificate {
    /// Exponent of the separant.
    pub n: u32,
    /// Exponent of the initial.
    pub m: u32,
    /// `j ↦ h_j`, the multiplier of `δ^j f` (`j ≥ 1`).
    pub cofactors: BTreeMap<u32, DiffPoly>,
    pub quotient: DiffPoly,
    pub remainder: DiffPoly,
}

impl ReductionCertificate {
    /// `key = value` lines: `n`, `m`, `cofactor[j]`, `quotient`, `remainder`.
    pub fn to_record(&self) -> Vec<(String, String)> {
        let mut out = vec![
            ("n".to_string(), self.n.to_string()),
            ("m".to_string(), self.m.to_string()),
        ];
        for (j, h) in &self.cofactors {
            out.push((format!("cofactor[{j}]"), h.to_string()));
        }
        out.push(("quotient".into(), self.quotient.to_string()));
        out.push(("remainder".into(), self.remainder.to_string()));
        out
    }
}

impl fmt::Display for ReductionCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.to_record() {
            writeln!(f, "{k} = {v}")?;
        }
        Ok(())
    }
}

/// Partial reduction followed by pseudo-division.
pub fn full_reduce(g: &DiffPoly, f: &DiffPoly) -> Result<ReductionCertificate> {
    let pr = partial_remainder(g, f)?;
    let ps = pseudo_remainder(&pr.remainder, f)?;
    Ok(ReductionCertificate {
        n: pr.separant_power,
        m: ps.initial_power,
        cofactors: pr.cofactors,
        quotient: ps.quotient,
        remainder: ps.remainder,
    })
}

/// Checks the certificate identity by full expansion.
pub fn verify_certificate(cert: &ReductionCertificate, g: &DiffPoly, f: &DiffPoly) -> bool {
    if g.ring() != f.ring() || cert.cofactors.contains_key(&0) {
        return false;
    }
    let (Ok(s), Ok(i)) = (f.separant(), f.initial()) else {
        return false;
    };
    let parts = std::iter::once(&cert.quotient)
        .chain(cert.cofactors.values())
        .chain(std::iter::once(&cert.remainder));
    if parts.into_iter().any(|h| h.ring() != f.ring()) {
        return false;
    }
    let im = i.pow(cert.m);
    let lhs = &(&im * &s.pow(cert.n)) * g;
    let mut combo = DiffPoly::zero(f.ring());
    let mut dj = f.clone();
    let top = cert.cofactors.keys().last().copied().unwrap_or(0);
    for j in 1..=top {
        dj = dj.delta();
        if let Some(h) = cert.cofactors.get(&j) {
            combo = &combo + &(h * &dj);
        }
    }
    let rhs = &(&(&im * &combo) + &(&cert.quotient * f)) + &cert.remainder;
    lhs == rhs
}

/// How irreducibility of the generator was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Provenance {
    VerifiedHeuristic,
    AssertedByCaller,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Provenance::VerifiedHeuristic => "verified-heuristic",
            Provenance::AssertedByCaller => "asserted",
        })
    }
}

/// Outcome of [`check_irreducible_heuristic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Irreducibility {
    /// Proven by the named sufficient criterion.
    Irreducible(&'static str),
    /// A proper factor was found.
    Reducible(DiffPoly),
    Unknown,
}

/// Sound but incomplete irreducibility test over `K`.
///
/// Reducible: some variable divides every term and `f` is not that variable
/// times a unit. Irreducible: `f` is linear in some variable `v` with
/// coefficient `a` that is a unit of `K`, or a single monomial coprime to the
/// rest of `f` (no monomial content remains at that point).
pub fn check_irreducible_heuristic(f: &DiffPoly) -> Irreducibility {
    let vars = f.variables();
    if vars.is_empty() {
        return Irreducibility::Unknown;
    }
    if f.num_terms() == 1 && f.total_degree() == 1 {
        return Irreducibility::Irreducible("total degree 1");
    }
    for &v in &vars {
        if f.terms().all(|(m, _)| m.exponent(v) > 0) {
            return Irreducibility::Reducible(DiffPoly::var(f.ring(), v));
        }
    }
    if f.total_degree() == 1 {
        return Irreducibility::Irreducible("total degree 1");
    }
    for &v in vars.iter().rev() {
        if f.degree_in(v) != 1 {
            continue;
        }
        let a = f.coeff_in(v, 1);
        if a.is_in_k() {
            return Irreducibility::Irreducible("linear in a variable with unit coefficient");
        }
        if a.num_terms() == 1 && !f.coeff_in(v, 0).is_zero() {
            // a = unit·μ; any common factor of a and f − a·v would be a
            // variable of μ dividing every term of f, ruled out above
            return Irreducibility::Irreducible("linear in a variable with monomial coefficient");
        }
    }
    Irreducibility::Unknown
}

/// `P = [f]:s_f^∞` for an irreducible `f` with nonzero separant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatIdeal {
    f: DiffPoly,
    separant: DiffPoly,
    provenance: Provenance,
}

/// Validates `f` and records how its irreducibility is known.
pub fn make_satideal(f: &DiffPoly, assert_irreducible: bool) -> Result<SatIdeal> {
    if f.is_zero() {
        return Err(Error::ZeroInput);
    }
    let separant = check_divisor(f)?;
    let provenance = match check_irreducible_heuristic(f) {
        Irreducibility::Irreducible(_) => Provenance::VerifiedHeuristic,
        Irreducibility::Reducible(w) => return Err(Error::Reducible(w.to_string())),
        Irreducibility::Unknown if assert_irreducible => Provenance::AssertedByCaller,
        Irreducibility::Unknown => return Err(Error::IrreducibilityUnknown),
    };
    Ok(SatIdeal {
        f: f.clone(),
        separant,
        provenance,
    })
}

impl SatIdeal {
    pub fn generator(&self) -> &DiffPoly {
        &self.f
    }

    pub fn separant(&self) -> &DiffPoly {
        &self.separant
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Membership together with the certificate that decides it.
    pub fn reduce(&self, g: &DiffPoly) -> Result<ReductionCertificate> {
        full_reduce(g, &self.f)
    }

    pub fn contains(&self, g: &DiffPoly) -> Result<bool> {
        Ok(self.reduce(g)?.remainder.is_zero())
    }

    #[cfg(test)]
    pub(crate) fn with_corrupted_separant(mut self, s: DiffPoly) -> Self {
        self.separant = s;
        self
    }
}

/// `g ∈ [f]:s_f^∞`, decided by a zero remainder.
pub fn member(g: &DiffPoly, ideal: &SatIdeal) -> Result<bool> {
    ideal.contains(g)
}
