//! The differential polynomial ring `K{x1,...,xn}`.
//!
//! A [`DiffPoly`] is a sparse polynomial over [`RationalFunction`] in the
//! derivative variables `δ^j x_i`, represented by [`DerivVar`]. Besides ring
//! arithmetic this module provides the total derivative, the rank calculus
//! (order, leader, degree, separant, initial) and evaluation at points of `K`.

mod witness;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::field::{validate_name, Field, RationalFunction};

pub use witness::{nonvanishing_witness, witness_candidates, DEFAULT_WITNESS_BUDGET};

/// The derivative `δ^order x_var`. Ordered by `(order, var)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DerivVar {
    pub order: u32,
    pub var: u32,
}

impl DerivVar {
    pub fn new(var: u32, order: u32) -> Self {
        DerivVar { order, var }
    }

    /// `δ^order x` in a one-variable ring.
    pub fn x(order: u32) -> Self {
        DerivVar { order, var: 0 }
    }

    pub fn derivative(self) -> Self {
        DerivVar {
            order: self.order + 1,
            var: self.var,
        }
    }
}

/// The ring `K{x1..xn}`: coefficient field plus names of the indeterminates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiffRing {
    field: Field,
    names: Vec<String>,
}

pub type Ring = Arc<DiffRing>;

impl DiffRing {
    pub fn new(field: &Field, names: &[impl AsRef<str>]) -> Result<Ring> {
        let mut out: Vec<String> = Vec::new();
        for n in names {
            let n = n.as_ref();
            validate_name(n)?;
            if field.gen_index(n).is_some() {
                return Err(Error::ReservedName(n.to_string()));
            }
            if out.iter().any(|m| m == n) {
                return Err(Error::DuplicateGeneratorName(n.to_string()));
            }
            out.push(n.to_string());
        }
        Ok(Arc::new(DiffRing {
            field: field.clone(),
            names: out,
        }))
    }

    /// `K{x}` with the single indeterminate `x`.
    ///
    /// Panics if the presentation has a generator named `x`; use
    /// [`DiffRing::new`] for untrusted presentations.
    pub fn univariate(field: &Field) -> Ring {
        Self::new(field, &["x"]).expect("presentation has a generator named x")
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn var_index(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|n| n == name).map(|i| i as u32)
    }
}

/// A monomial: `(variable, exponent)` pairs sorted by variable, exponents > 0.
///
/// Compared lexicographically with the highest variable most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(DerivVar, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: DerivVar, e: u32) -> Self {
        if e == 0 {
            Self::one()
        } else {
            Monomial(smallvec::smallvec![(v, e)])
        }
    }

    pub fn factors(&self) -> &[(DerivVar, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: DerivVar) -> u32 {
        self.0
            .iter()
            .find(|(w, _)| *w == v)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn highest(&self) -> Option<DerivVar> {
        self.0.last().map(|(v, _)| *v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = SmallVec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            let (a, ea) = self.0[i];
            let (b, eb) = other.0[j];
            if a == b {
                out.push((a, ea + eb));
                i += 1;
                j += 1;
            } else if a < b {
                out.push((a, ea));
                i += 1;
            } else {
                out.push((b, eb));
                j += 1;
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// Replaces the exponent of `v` (removing it when `e == 0`).
    pub fn with_exponent(&self, v: DerivVar, e: u32) -> Monomial {
        let mut out: SmallVec<[(DerivVar, u32); 4]> =
            self.0.iter().copied().filter(|(w, _)| *w != v).collect();
        if e > 0 {
            let pos = out.iter().position(|(w, _)| *w > v).unwrap_or(out.len());
            out.insert(pos, (v, e));
        }
        Monomial(out)
    }

    fn from_unsorted(mut pairs: Vec<(DerivVar, u32)>) -> Monomial {
        pairs.sort();
        let mut out: SmallVec<[(DerivVar, u32); 4]> = SmallVec::new();
        for (v, e) in pairs {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some((w, f)) if *w == v => *f += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        let mut a = self.0.iter().rev();
        let mut b = other.0.iter().rev();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Equal,
                (None, Some(_)) => return Less,
                (Some(_), None) => return Greater,
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb).then(ea.cmp(eb)) {
                    Equal => continue,
                    o => return o,
                },
            }
        }
    }
}

/// `rank f = (ord f, deg f)`, compared lexicographically.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rank {
    pub order: u32,
    pub degree: u32,
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.order, self.degree)
    }
}

/// An element of `K{x1..xn}`.
#[derive(Clone, PartialEq, Eq)]
pub struct DiffPoly {
    ring: Ring,
    terms: BTreeMap<Monomial, RationalFunction>,
}

impl DiffPoly {
    pub fn zero(ring: &Ring) -> Self {
        DiffPoly {
            ring: ring.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, RationalFunction::one(ring.field()))
    }

    pub fn constant(ring: &Ring, c: RationalFunction) -> Self {
        Self::term(ring, Monomial::one(), c)
    }

    pub fn scalar(ring: &Ring, c: i64) -> Self {
        Self::constant(ring, RationalFunction::scalar(ring.field(), c))
    }

    pub fn term(ring: &Ring, m: Monomial, c: RationalFunction) -> Self {
        let mut out = Self::zero(ring);
        if !c.is_zero() {
            out.terms.insert(m, c);
        }
        out
    }

    pub fn var(ring: &Ring, v: DerivVar) -> Self {
        assert!(
            (v.var as usize) < ring.arity(),
            "variable index out of range"
        );
        Self::term(
            ring,
            Monomial::var(v, 1),
            RationalFunction::one(ring.field()),
        )
    }

    /// `δ^order x` of a one-variable ring.
    pub fn x(ring: &Ring, order: u32) -> Self {
        Self::var(ring, DerivVar::x(order))
    }

    /// Builds from `(monomial, coefficient)` pairs, merging duplicates.
    pub fn from_terms(
        ring: &Ring,
        terms: impl IntoIterator<Item = (Vec<(DerivVar, u32)>, RationalFunction)>,
    ) -> Self {
        let mut out = Self::zero(ring);
        for (m, c) in terms {
            out.add_term(Monomial::from_unsorted(m), c);
        }
        out
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        self.ring.field()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &RationalFunction)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when `self` is an element of `K` (including zero).
    pub fn is_in_k(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn as_k_element(&self) -> Option<RationalFunction> {
        if !self.is_in_k() {
            return None;
        }
        Some(
            self.terms
                .get(&Monomial::one())
                .cloned()
                .unwrap_or_else(|| RationalFunction::zero(self.field())),
        )
    }

    fn add_term(&mut self, m: Monomial, c: RationalFunction) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    fn check_ring(&self, other: &DiffPoly) {
        assert!(
            self.ring == other.ring,
            "mixing differential polynomials of different rings"
        );
    }

    pub fn scale(&self, c: &RationalFunction) -> DiffPoly {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        DiffPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> DiffPoly {
        DiffPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(n, a)| (n.mul(m), a.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> DiffPoly {
        let mut acc = Self::one(&self.ring);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Every derivative variable occurring in `self`.
    pub fn variables(&self) -> BTreeSet<DerivVar> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(v, _)| *v))
            .collect()
    }

    pub fn max_order(&self) -> Option<u32> {
        self.variables().iter().map(|v| v.order).max()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(Monomial::total_degree)
            .max()
            .unwrap_or(0)
    }

    /// Highest derivative order present; nonzero elements of `K` have order 0.
    pub fn order(&self) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.max_order().unwrap_or(0))
    }

    /// The highest derivative variable under the `(order, var)` ranking.
    pub fn leader(&self) -> Result<DerivVar> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        self.variables().last().copied().ok_or(Error::ElementOfK)
    }

    pub fn degree_in(&self, v: DerivVar) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    /// Degree in the leader.
    pub fn degree(&self) -> Result<u32> {
        let l = self.leader()?;
        Ok(self.degree_in(l))
    }

    pub fn rank(&self) -> Result<Rank> {
        let l = self.leader()?;
        Ok(Rank {
            order: l.order,
            degree: self.degree_in(l),
        })
    }

    /// Coefficient of `v^k`, as a polynomial free of `v`.
    pub fn coeff_in(&self, v: DerivVar, k: u32) -> DiffPoly {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            if m.exponent(v) == k {
                out.terms.insert(m.with_exponent(v, 0), c.clone());
            }
        }
        out
    }

    /// Coefficients in `v`, indexed by power.
    pub fn coeffs_in(&self, v: DerivVar) -> Vec<DiffPoly> {
        let d = self.degree_in(v) as usize;
        let mut out = vec![Self::zero(&self.ring); d + 1];
        for (m, c) in &self.terms {
            let k = m.exponent(v) as usize;
            out[k].terms.insert(m.with_exponent(v, 0), c.clone());
        }
        out
    }

    /// `∂f/∂(leader)`.
    pub fn separant(&self) -> Result<DiffPoly> {
        let l = self.leader()?;
        Ok(self.partial(l))
    }

    /// Leading coefficient of `f` as a polynomial in its leader.
    pub fn initial(&self) -> Result<DiffPoly> {
        let l = self.leader()?;
        Ok(self.coeff_in(l, self.degree_in(l)))
    }

    /// Formal partial derivative.
    pub fn partial(&self, v: DerivVar) -> DiffPoly {
        let p = self.field().characteristic();
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e % p == 0 {
                continue;
            }
            let k = RationalFunction::scalar(self.field(), e as i64);
            out.add_term(m.with_exponent(v, e - 1), c * &k);
        }
        out
    }

    /// `f^δ`: the derivation applied to every coefficient.
    pub fn coefficient_derivative(&self) -> DiffPoly {
        let mut out = Self::zero(&self.ring);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.derive());
        }
        out
    }

    /// The total derivative `δf = f^δ + Σ (∂f/∂v)·δv`.
    pub fn delta(&self) -> DiffPoly {
        let p = self.field().characteristic();
        let mut out = self.coefficient_derivative();
        for (m, c) in &self.terms {
            for &(v, e) in m.factors() {
                if e % p == 0 {
                    continue;
                }
                let k = RationalFunction::scalar(self.field(), e as i64);
                let base = m.with_exponent(v, e - 1);
                let dv = v.derivative();
                let nm = base.with_exponent(dv, base.exponent(dv) + 1);
                out.add_term(nm, c * &k);
            }
        }
        out
    }

    /// `δ^k f`.
    pub fn delta_n(&self, k: u32) -> DiffPoly {
        (0..k).fold(self.clone(), |acc, _| acc.delta())
    }

    /// Evaluates at a point of `K^n`, using `δ^j a_i` for the derivatives.
    pub fn evaluate(&self, point: &[RationalFunction]) -> Result<RationalFunction> {
        if point.len() != self.ring.arity() {
            return Err(Error::ArityMismatch {
                expected: self.ring.arity(),
                found: point.len(),
            });
        }
        let field = self.field();
        if point.iter().any(|a| a.field() != field) {
            return Err(Error::FieldMismatch);
        }
        let mut derivs: Vec<Vec<RationalFunction>> =
            point.iter().map(|a| vec![a.clone()]).collect();
        for v in self.variables() {
            let chain = &mut derivs[v.var as usize];
            while chain.len() <= v.order as usize {
                let next = chain.last().expect("nonempty").derive();
                chain.push(next);
            }
        }
        let mut acc = RationalFunction::zero(field);
        for (m, c) in &self.terms {
            let mut val = c.clone();
            for &(v, e) in m.factors() {
                val = &val * &derivs[v.var as usize][v.order as usize].pow(e as u64);
            }
            acc = &acc + &val;
        }
        Ok(acc)
    }

    /// Renames variables into another ring over the same field.
    pub fn map_vars(&self, target: &Ring, f: impl Fn(DerivVar) -> DerivVar) -> DiffPoly {
        assert_eq!(target.field(), self.field());
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let pairs = m.factors().iter().map(|&(v, e)| (f(v), e)).collect();
            out.add_term(Monomial::from_unsorted(pairs), c.clone());
        }
        out
    }

    /// Moves the polynomial into a ring with the same field and more
    /// indeterminates; variable indices are kept.
    pub fn embed(&self, target: &Ring) -> DiffPoly {
        assert!(target.arity() >= self.ring.arity());
        self.map_vars(target, |v| v)
    }
}

impl fmt::Debug for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Prints `δ^k x` as `x`, `x'`, `x''`, `x'''`, then `d(x,k)`.
pub fn format_deriv_var(ring: &DiffRing, v: DerivVar) -> String {
    let name = &ring.names[v.var as usize];
    match v.order {
        0..=3 => format!("{}{}", name, "'".repeat(v.order as usize)),
        k => format!("d({name},{k})"),
    }
}

fn format_monomial(ring: &DiffRing, m: &Monomial) -> String {
    m.factors()
        .iter()
        .rev()
        .map(|&(v, e)| {
            let s = format_deriv_var(ring, v);
            if e == 1 {
                s
            } else {
                format!("{s}^{e}")
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{c}")?;
                continue;
            }
            let mono = format_monomial(&self.ring, m);
            if c.is_one() {
                write!(f, "{mono}")?;
            } else if c.prints_as_product() {
                write!(f, "{c}*{mono}")?;
            } else {
                write!(f, "({c})*{mono}")?;
            }
        }
        Ok(())
    }
}

impl Add for &DiffPoly {
    type Output = DiffPoly;
    fn add(self, rhs: &DiffPoly) -> DiffPoly {
        self.check_ring(rhs);
        let (mut big, small) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }
}

impl Neg for &DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        DiffPoly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Sub for &DiffPoly {
    type Output = DiffPoly;
    fn sub(self, rhs: &DiffPoly) -> DiffPoly {
        self + &(-rhs)
    }
}

impl Mul for &DiffPoly {
    type Output = DiffPoly;
    fn mul(self, rhs: &DiffPoly) -> DiffPoly {
        self.check_ring(rhs);
        let mut out = DiffPoly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for DiffPoly {
            type Output = DiffPoly;
            fn $m(self, rhs: DiffPoly) -> DiffPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&DiffPoly> for DiffPoly {
            type Output = DiffPoly;
            fn $m(self, rhs: &DiffPoly) -> DiffPoly {
                (&self).$m(rhs)
            }
        }
        impl $tr<DiffPoly> for &DiffPoly {
            type Output = DiffPoly;
            fn $m(self, rhs: DiffPoly) -> DiffPoly {
                self.$m(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for DiffPoly {
    type Output = DiffPoly;
    fn neg(self) -> DiffPoly {
        -&self
    }
}
