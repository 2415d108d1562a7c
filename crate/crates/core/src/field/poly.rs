//! Sparse multivariate polynomials over GF(p).
//!
//! Terms are kept sorted in descending graded-lexicographic order, where the
//! lexicographic tie-break treats the *last* generator as most significant
//! (so `c1 < ... < cm < t`). Coefficients are least nonnegative residues.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use smallvec::SmallVec;

pub type Exps = SmallVec<[u32; 4]>;

/// Graded lex comparison with the highest-index generator most significant.
pub fn cmp_grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().rev().zip(b.iter().rev()) {
            match x.cmp(y) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    })
}

/// Exponent vector ordered by [`cmp_grlex`].
#[derive(Clone, PartialEq, Eq)]
struct GrKey(Exps);

impl PartialOrd for GrKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GrKey {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_grlex(&self.0, &other.0)
    }
}

pub fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + b as u64) % p as u64) as u32
}

pub fn neg_mod(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn pow_mod(mut base: u32, mut exp: u64, p: u32) -> u32 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo the prime `p`.
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(a % p != 0, "inverse of zero residue");
    pow_mod(a, p as u64 - 2, p)
}

pub fn reduce_i64(v: i64, p: u32) -> u32 {
    v.rem_euclid(p as i64) as u32
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    p: u32,
    nvars: usize,
    terms: Vec<(Exps, u32)>,
}

impl Poly {
    pub fn zero(p: u32, nvars: usize) -> Self {
        Poly {
            p,
            nvars,
            terms: Vec::new(),
        }
    }

    pub fn constant(p: u32, nvars: usize, c: u32) -> Self {
        let c = c % p;
        let mut out = Self::zero(p, nvars);
        if c != 0 {
            out.terms.push((Exps::from_elem(0, nvars), c));
        }
        out
    }

    pub fn one(p: u32, nvars: usize) -> Self {
        Self::constant(p, nvars, 1)
    }

    pub fn monomial(p: u32, exps: Exps, c: u32) -> Self {
        let nvars = exps.len();
        let c = c % p;
        let mut out = Self::zero(p, nvars);
        if c != 0 {
            out.terms.push((exps, c));
        }
        out
    }

    pub fn var(p: u32, nvars: usize, i: usize) -> Self {
        let mut e = Exps::from_elem(0, nvars);
        e[i] = 1;
        Self::monomial(p, e, 1)
    }

    /// Builds a polynomial from unsorted terms, merging duplicates.
    pub fn from_terms(p: u32, nvars: usize, mut raw: Vec<(Exps, u32)>) -> Self {
        raw.sort_by(|a, b| cmp_grlex(&b.0, &a.0));
        let mut terms: Vec<(Exps, u32)> = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            let c = c % p;
            match terms.last_mut() {
                Some((le, lc)) if *le == e => *lc = add_mod(*lc, c, p),
                _ => terms.push((e, c)),
            }
        }
        terms.retain(|(_, c)| *c != 0);
        Poly { p, nvars, terms }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Exps, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(e, _)| e.iter().all(|&x| x == 0))
    }

    pub fn is_one(&self) -> bool {
        self.is_constant() && self.constant_value() == 1
    }

    /// Constant term value when the polynomial is constant.
    pub fn constant_value(&self) -> u32 {
        self.terms
            .iter()
            .find(|(e, _)| e.iter().all(|&x| x == 0))
            .map(|(_, c)| *c)
            .unwrap_or(0)
    }

    pub fn leading(&self) -> Option<&(Exps, u32)> {
        self.terms.first()
    }

    pub fn leading_coeff(&self) -> u32 {
        self.terms.first().map(|(_, c)| *c).unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .iter()
            .map(|(e, _)| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.iter().map(|(e, _)| e[v]).max().unwrap_or(0)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert_eq!(self.p, other.p);
        let p = self.p;
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ea, ca) = &self.terms[i];
            let (eb, cb) = &other.terms[j];
            match cmp_grlex(ea, eb) {
                Ordering::Greater => {
                    terms.push((ea.clone(), *ca));
                    i += 1;
                }
                Ordering::Less => {
                    terms.push((eb.clone(), *cb));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = add_mod(*ca, *cb, p);
                    if c != 0 {
                        terms.push((ea.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend_from_slice(&self.terms[i..]);
        terms.extend_from_slice(&other.terms[j..]);
        Poly {
            p,
            nvars: self.nvars,
            terms,
        }
    }

    pub fn neg(&self) -> Poly {
        let p = self.p;
        Poly {
            p,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), neg_mod(*c, p)))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: u32) -> Poly {
        let p = self.p;
        let c = c % p;
        if c == 0 {
            return Poly::zero(p, self.nvars);
        }
        Poly {
            p,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, a)| (e.clone(), mul_mod(*a, c, p)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, exps: &[u32], c: u32) -> Poly {
        let p = self.p;
        let c = c % p;
        if c == 0 {
            return Poly::zero(p, self.nvars);
        }
        // multiplying by a monomial preserves the order
        Poly {
            p,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, a)| {
                    let ne: Exps = e.iter().zip(exps).map(|(x, y)| x + y).collect();
                    (ne, mul_mod(*a, c, p))
                })
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.p, self.nvars);
        }
        if other.terms.len() == 1 {
            let (e, c) = &other.terms[0];
            return self.mul_monomial(e, *c);
        }
        if self.terms.len() == 1 {
            let (e, c) = &self.terms[0];
            return other.mul_monomial(e, *c);
        }
        let p = self.p;
        let mut acc: HashMap<Exps, u32> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exps = ea.iter().zip(eb.iter()).map(|(x, y)| x + y).collect();
                let c = mul_mod(*ca, *cb, p);
                let slot = acc.entry(e).or_insert(0);
                *slot = add_mod(*slot, c, p);
            }
        }
        let mut terms: Vec<(Exps, u32)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        terms.sort_unstable_by(|a, b| cmp_grlex(&b.0, &a.0));
        Poly {
            p,
            nvars: self.nvars,
            terms,
        }
    }

    pub fn pow(&self, mut n: u64) -> Poly {
        let mut acc = Poly::one(self.p, self.nvars);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Scales so that the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) if *c == 1 => self.clone(),
            Some((_, c)) => self.scale(inv_mod(*c, self.p)),
        }
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        if divisor.is_constant() {
            return Some(self.scale(inv_mod(divisor.constant_value(), self.p)));
        }
        let p = self.p;
        let (lde, ldc) = divisor.terms[0].clone();
        let inv = inv_mod(ldc, p);
        let mut rem: BTreeMap<GrKey, u32> = self
            .terms
            .iter()
            .map(|(e, c)| (GrKey(e.clone()), *c))
            .collect();
        let mut quot = Vec::new();
        while let Some((GrKey(re), rc)) = rem.pop_last() {
            if re.iter().zip(lde.iter()).any(|(a, b)| a < b) {
                return None;
            }
            let qe: Exps = re.iter().zip(lde.iter()).map(|(a, b)| a - b).collect();
            let qc = mul_mod(rc, inv, p);
            for (de, dc) in &divisor.terms[1..] {
                let e: Exps = de.iter().zip(&qe).map(|(a, b)| a + b).collect();
                let sub = mul_mod(*dc, qc, p);
                match rem.entry(GrKey(e)) {
                    Entry::Occupied(mut o) => {
                        let c = add_mod(*o.get(), neg_mod(sub, p), p);
                        if c == 0 {
                            o.remove();
                        } else {
                            *o.get_mut() = c;
                        }
                    }
                    Entry::Vacant(v) => {
                        v.insert(neg_mod(sub, p));
                    }
                }
            }
            quot.push((qe, qc));
        }
        // quotient terms were produced in descending order
        Some(Poly {
            p,
            nvars: self.nvars,
            terms: quot,
        })
    }

    /// Coefficients with respect to generator `v`, indexed by power of `v`.
    pub fn coeffs_in(&self, v: usize) -> Vec<Poly> {
        let d = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Exps, u32)>> = vec![Vec::new(); d + 1];
        for (e, c) in &self.terms {
            let k = e[v] as usize;
            let mut ne = e.clone();
            ne[v] = 0;
            buckets[k].push((ne, *c));
        }
        buckets
            .into_iter()
            .map(|ts| Poly::from_terms(self.p, self.nvars, ts))
            .collect()
    }

    pub fn coeff_in(&self, v: usize, k: u32) -> Poly {
        let ts = self
            .terms
            .iter()
            .filter(|(e, _)| e[v] == k)
            .map(|(e, c)| {
                let mut ne = e.clone();
                ne[v] = 0;
                (ne, *c)
            })
            .collect();
        // filtering preserves order except for the zeroed slot; re-sort
        Poly::from_terms(self.p, self.nvars, ts)
    }

    fn highest_var(&self) -> Option<usize> {
        (0..self.nvars).rev().find(|&v| self.degree_in(v) > 0)
    }

    /// Gcd of the coefficients of `self` viewed as a polynomial in `v`.
    pub fn content_in(&self, v: usize) -> Poly {
        let mut g = Poly::zero(self.p, self.nvars);
        for c in self.coeffs_in(v) {
            if c.is_zero() {
                continue;
            }
            g = gcd(&g, &c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn primitive_in(&self, v: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content_in(v);
        self.div_exact(&c).expect("content divides")
    }

    /// Pseudo-remainder `lc^(deg self - deg divisor + 1)·self mod divisor`
    /// as polynomials in `v`; requires `deg self >= deg divisor`.
    fn prem(&self, divisor: &Poly, v: usize) -> Poly {
        let dd = divisor.degree_in(v);
        let lc = divisor.coeff_in(v, dd);
        let mut steps = self.degree_in(v) + 1 - dd;
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(v) >= dd {
            let dr = r.degree_in(v);
            let lr = r.coeff_in(v, dr);
            let mut shift = Exps::from_elem(0, self.nvars);
            shift[v] = dr - dd;
            r = r.mul(&lc).sub(&lr.mul(divisor).mul_monomial(&shift, 1));
            steps -= 1;
        }
        if steps > 0 && !r.is_zero() {
            r = r.mul(&lc.pow(u64::from(steps)));
        }
        r
    }

    /// Formal partial derivative with respect to generator `v`.
    pub fn partial(&self, v: usize) -> Poly {
        let p = self.p;
        let raw = self
            .terms
            .iter()
            .filter(|(e, _)| e[v] > 0)
            .filter_map(|(e, c)| {
                let k = e[v] % p;
                if k == 0 {
                    return None;
                }
                let mut ne = e.clone();
                ne[v] -= 1;
                Some((ne, mul_mod(*c, k, p)))
            })
            .collect();
        Poly::from_terms(p, self.nvars, raw)
    }

    /// `self^p`: exponents scale by p, GF(p) coefficients are fixed.
    pub fn frobenius(&self) -> Poly {
        let p = self.p;
        Poly {
            p,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| x * p).collect(), *c))
                .collect(),
        }
    }

    pub fn pth_root(&self) -> Option<Poly> {
        let p = self.p;
        if self.terms.iter().any(|(e, _)| e.iter().any(|x| x % p != 0)) {
            return None;
        }
        Some(Poly {
            p,
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().map(|x| x / p).collect(), *c))
                .collect(),
        })
    }

    /// Applies an exponent map to every term and re-normalizes.
    pub fn map_exponents(&self, nvars: usize, f: impl Fn(&[u32]) -> Exps) -> Poly {
        let raw = self.terms.iter().map(|(e, c)| (f(e), *c)).collect();
        Poly::from_terms(self.p, nvars, raw)
    }
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd_u32(b, a % b)
    }
}

/// Monic gcd of two polynomials over GF(p); `gcd(0, 0) = 0`.
///
/// Subresultant remainder sequence in the highest generator present, with
/// contents handled recursively in the remaining generators.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(a.p, a.nvars);
    }
    if a == b {
        return a.monic();
    }
    for v in 0..a.nvars {
        match (a.degree_in(v), b.degree_in(v)) {
            (0, 0) => {}
            (_, 0) => return gcd(&a.content_in(v), b),
            (0, _) => return gcd(a, &b.content_in(v)),
            _ => {}
        }
    }
    // gcd(f(v^k), g(v^k)) = gcd(f, g)(v^k); p-th powers make this common
    let steps: Exps = (0..a.nvars)
        .map(|v| {
            a.terms
                .iter()
                .chain(&b.terms)
                .fold(0u32, |k, (e, _)| gcd_u32(k, e[v]))
                .max(1)
        })
        .collect();
    if steps.iter().any(|&k| k > 1) {
        let down = |x: &Poly| {
            x.map_exponents(x.nvars, |e| {
                e.iter().zip(&steps).map(|(a, k)| a / k).collect()
            })
        };
        let h = gcd(&down(a), &down(b));
        return h.map_exponents(h.nvars, |e| {
            e.iter().zip(&steps).map(|(a, k)| a * k).collect()
        });
    }
    let v = a
        .highest_var()
        .expect("non-constant polynomials have a variable");
    let ca = a.content_in(v);
    let cb = b.content_in(v);
    let content = gcd(&ca, &cb);
    let mut f = a.div_exact(&ca).expect("content divides");
    let mut g = b.div_exact(&cb).expect("content divides");
    if f.degree_in(v) < g.degree_in(v) {
        std::mem::swap(&mut f, &mut g);
    }
    // subresultant remainder sequence: exact divisions keep coefficient
    // growth polynomial without a content computation per step
    let mut g_lc = Poly::one(a.p, a.nvars);
    let mut h = Poly::one(a.p, a.nvars);
    let prim = loop {
        let delta = f.degree_in(v) - g.degree_in(v);
        let r = f.prem(&g, v);
        if r.is_zero() {
            break g.primitive_in(v);
        }
        if r.degree_in(v) == 0 {
            break Poly::one(a.p, a.nvars);
        }
        let divisor = g_lc.mul(&h.pow(u64::from(delta)));
        f = g;
        g = r
            .div_exact(&divisor)
            .expect("subresultant division is exact");
        g_lc = f.coeff_in(v, f.degree_in(v));
        h = if delta == 0 {
            h
        } else {
            g_lc.pow(u64::from(delta))
                .div_exact(&h.pow(u64::from(delta - 1)))
                .expect("subresultant division is exact")
        };
    };
    content.mul(&prim).monic()
}

/// Writes a polynomial using the given generator names.
pub fn write_poly(f: &mut fmt::Formatter<'_>, poly: &Poly, names: &[String]) -> fmt::Result {
    if poly.is_zero() {
        return write!(f, "0");
    }
    for (k, (e, c)) in poly.terms.iter().enumerate() {
        if k > 0 {
            write!(f, " + ")?;
        }
        let mut factors: Vec<String> = Vec::new();
        let is_unit_monomial = e.iter().any(|&x| x > 0);
        if *c != 1 || !is_unit_monomial {
            factors.push(c.to_string());
        }
        // most significant generator first
        for (i, &x) in e.iter().enumerate().rev() {
            match x {
                0 => {}
                1 => factors.push(names[i].clone()),
                _ => factors.push(format!("{}^{}", names[i], x)),
            }
        }
        write!(f, "{}", factors.join("*"))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(p: u32, n: usize, i: usize) -> Poly {
        Poly::var(p, n, i)
    }

    #[test]
    fn grlex_puts_last_generator_first() {
        // c < t with [c, t]
        assert_eq!(cmp_grlex(&[0, 1], &[1, 0]), Ordering::Greater);
        assert_eq!(cmp_grlex(&[2, 0], &[0, 1]), Ordering::Greater);
    }

    #[test]
    fn gcd_univariate() {
        let p = 5;
        let t = v(p, 1, 0);
        let one = Poly::one(p, 1);
        let a = t.mul(&t).sub(&one); // (t-1)(t+1)
        let b = t.sub(&one).mul(&t.add(&one.scale(2)));
        let g = gcd(&a, &b);
        assert_eq!(g, t.sub(&one));
    }

    #[test]
    fn gcd_bivariate_shares_factor() {
        let p = 3;
        let c = v(p, 2, 0);
        let t = v(p, 2, 1);
        let common = c.mul(&t).add(&Poly::one(p, 2));
        let a = common.mul(&c.add(&t));
        let b = common.mul(&t.mul(&t).add(&c));
        assert_eq!(gcd(&a, &b), common.monic());
        assert!(gcd(&c.add(&t), &t.mul(&t).add(&c)).is_one());
    }

    #[test]
    fn gcd_with_monomial_content() {
        let p = 5;
        let c = v(p, 2, 0);
        let t = v(p, 2, 1);
        let a = c.mul(&t).mul(&t);
        let b = c.mul(&c).mul(&t);
        assert_eq!(gcd(&a, &b), c.mul(&t));
    }

    #[test]
    fn exact_division_detects_non_divisors() {
        let p = 7;
        let t = v(p, 1, 0);
        let one = Poly::one(p, 1);
        let a = t.mul(&t).sub(&one);
        assert_eq!(a.div_exact(&t.sub(&one)), Some(t.add(&one)));
        assert_eq!(a.div_exact(&t), None);
    }

    #[test]
    fn frobenius_is_pth_power() {
        let p = 3;
        let c = v(p, 2, 0);
        let t = v(p, 2, 1);
        let a = c.mul(&t).add(&t.scale(2)).add(&Poly::one(p, 2));
        assert_eq!(a.frobenius(), a.pow(3));
        assert_eq!(a.frobenius().pth_root(), Some(a.clone()));
        assert_eq!(a.pth_root(), None);
    }
}
