use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::poly::{self, write_poly, Exps, Poly};
use super::presentation::Field;

/// An element of the coefficient field `K`, stored as a reduced fraction.
///
/// Invariants: the denominator is nonzero and monic in graded lex order,
/// numerator and denominator are coprime, and zero is `0/1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    field: Field,
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    /// Normalizes `num/den` into canonical form. Panics if `den` is zero.
    pub fn new(field: &Field, num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let (p, n) = (field.characteristic(), field.num_gens());
        if num.is_zero() {
            return Self::zero(field);
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = poly::gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        let lc = den.leading_coeff();
        let (num, den) = if lc == 1 {
            (num, den)
        } else {
            let inv = poly::inv_mod(lc, p);
            (num.scale(inv), den.scale(inv))
        };
        debug_assert_eq!(den.nvars(), n);
        RationalFunction {
            field: field.clone(),
            num,
            den,
        }
    }

    /// `num/den` already coprime: only the denominator is made monic.
    fn coprime(field: &Field, num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Self::zero(field);
        }
        let lc = den.leading_coeff();
        let (num, den) = if lc == 1 {
            (num, den)
        } else {
            let inv = poly::inv_mod(lc, field.characteristic());
            (num.scale(inv), den.scale(inv))
        };
        RationalFunction {
            field: field.clone(),
            num,
            den,
        }
    }

    pub fn from_poly(field: &Field, num: Poly) -> Self {
        let den = Poly::one(field.characteristic(), field.num_gens());
        RationalFunction {
            field: field.clone(),
            num,
            den,
        }
    }

    pub fn zero(field: &Field) -> Self {
        Self::from_poly(field, Poly::zero(field.characteristic(), field.num_gens()))
    }

    pub fn one(field: &Field) -> Self {
        Self::scalar(field, 1)
    }

    pub fn scalar(field: &Field, c: i64) -> Self {
        let p = field.characteristic();
        Self::from_poly(
            field,
            Poly::constant(p, field.num_gens(), poly::reduce_i64(c, p)),
        )
    }

    /// The generator with index `i` (constants first, then `t`).
    pub fn generator(field: &Field, i: usize) -> Self {
        Self::from_poly(
            field,
            Poly::var(field.characteristic(), field.num_gens(), i),
        )
    }

    pub fn named(field: &Field, name: &str) -> Option<Self> {
        field.gen_index(name).map(|i| Self::generator(field, i))
    }

    /// A monomial `coeff * gens^exps`.
    pub fn monomial(field: &Field, exps: &[u32], coeff: u32) -> Self {
        Self::from_poly(
            field,
            Poly::monomial(field.characteristic(), Exps::from_slice(exps), coeff),
        )
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True for elements of the prime field GF(p).
    pub fn is_scalar(&self) -> bool {
        self.num.is_constant() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    fn same_field(&self, other: &Self) {
        assert!(
            self.field == other.field,
            "mixing elements of {} and {}",
            self.field,
            other.field
        );
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::new(&self.field, self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, n: u64) -> Self {
        if n == 0 {
            return Self::one(&self.field);
        }
        // coprime stays coprime under powers; only re-monic is needed
        let num = self.num.pow(n);
        let den = self.den.pow(n);
        RationalFunction {
            field: self.field.clone(),
            num,
            den,
        }
    }

    /// The derivation of the presentation: `δt = 1`, `δci = 0`.
    pub fn derive(&self) -> Self {
        let Some(t) = self.field.diff_gen_index() else {
            return Self::zero(&self.field);
        };
        let dn = self.num.partial(t);
        let dd = self.den.partial(t);
        if dd.is_zero() {
            return Self::new(&self.field, dn, self.den.clone());
        }
        let num = dn.mul(&self.den).sub(&self.num.mul(&dd));
        Self::new(&self.field, num, self.den.mul(&self.den))
    }

    /// `δa = 0`. With the fraction reduced this holds exactly when every
    /// exponent of `t` in numerator and denominator is divisible by `p`.
    pub fn is_constant(&self) -> bool {
        let Some(t) = self.field.diff_gen_index() else {
            return true;
        };
        let p = self.field.characteristic();
        [&self.num, &self.den]
            .iter()
            .all(|q| q.terms().iter().all(|(e, _)| e[t] % p == 0))
    }

    pub fn frobenius(&self) -> Self {
        RationalFunction {
            field: self.field.clone(),
            num: self.num.frobenius(),
            den: self.den.frobenius(),
        }
    }

    /// True iff `self` lies in `K^p`.
    pub fn is_pth_power(&self) -> bool {
        self.pth_root().is_some()
    }

    /// The unique `b` with `b^p = self`, when it exists in `K`.
    pub fn pth_root(&self) -> Option<Self> {
        Some(RationalFunction {
            field: self.field.clone(),
            num: self.num.pth_root()?,
            den: self.den.pth_root()?,
        })
    }

    /// Applies a ring map on generators given as an exponent rewrite into
    /// another presentation with the same characteristic.
    pub fn map_exponents(&self, target: &Field, f: impl Fn(&[u32]) -> Exps) -> Self {
        let n = target.num_gens();
        Self::new(
            target,
            self.num.map_exponents(n, &f),
            self.den.map_exponents(n, &f),
        )
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct PolyDisplay<'a>(&'a Poly, &'a [String]);

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.0, self.1)
    }
}

/// A numerator reads back unparenthesized before `/` when it is one term.
fn bare_numerator(p: &Poly) -> bool {
    p.terms().len() <= 1
}

/// A denominator reads back unparenthesized after `/` when it is a single
/// power `g^k` or a constant.
fn bare_denominator(p: &Poly) -> bool {
    match p.terms() {
        [] => true,
        [(e, c)] => {
            let vars = e.iter().filter(|&&x| x > 0).count();
            vars == 0 || (vars == 1 && *c == 1)
        }
        _ => false,
    }
}

impl RationalFunction {
    /// True when the printed form needs no parentheses inside a product.
    pub fn prints_as_product(&self) -> bool {
        self.den.is_one() && self.num.terms().len() <= 1
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.field.gen_names();
        if self.den.is_one() {
            return write_poly(f, &self.num, &names);
        }
        let wrap = |p: &Poly, bare: bool| {
            let s = PolyDisplay(p, &names).to_string();
            if bare {
                s
            } else {
                format!("({s})")
            }
        };
        write!(
            f,
            "{}/{}",
            wrap(&self.num, bare_numerator(&self.num)),
            wrap(&self.den, bare_denominator(&self.den))
        )
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        self.same_field(rhs);
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            let num = self.num.add(&rhs.num);
            if self.den.is_one() {
                return RationalFunction::from_poly(&self.field, num);
            }
            return RationalFunction::new(&self.field, num, self.den.clone());
        }
        // a/b + c/d with g = gcd(b, d): only factors of g can cancel
        let g = poly::gcd(&self.den, &rhs.den);
        let b1 = self.den.div_exact(&g).expect("gcd divides");
        let d1 = rhs.den.div_exact(&g).expect("gcd divides");
        let num = self.num.mul(&d1).add(&rhs.num.mul(&b1));
        let den = self.den.mul(&d1);
        if g.is_one() {
            return RationalFunction::coprime(&self.field, num, den);
        }
        let h = poly::gcd(&num, &g);
        if h.is_one() {
            return RationalFunction::coprime(&self.field, num, den);
        }
        RationalFunction::coprime(
            &self.field,
            num.div_exact(&h).expect("gcd divides"),
            den.div_exact(&h).expect("gcd divides"),
        )
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            field: self.field.clone(),
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        self.same_field(rhs);
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero(&self.field);
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_poly(&self.field, self.num.mul(&rhs.num));
        }
        if rhs.is_scalar() {
            return RationalFunction {
                field: self.field.clone(),
                num: self.num.scale(rhs.num.constant_value()),
                den: self.den.clone(),
            };
        }
        if self.is_scalar() {
            return rhs * self;
        }
        // (a/b)(c/d): cancel gcd(a, d) and gcd(c, b) before multiplying
        let g1 = poly::gcd(&self.num, &rhs.den);
        let g2 = poly::gcd(&rhs.num, &self.den);
        let cut = |x: &Poly, g: &Poly| {
            if g.is_one() {
                x.clone()
            } else {
                x.div_exact(g).expect("gcd divides")
            }
        };
        RationalFunction::coprime(
            &self.field,
            cut(&self.num, &g1).mul(&cut(&rhs.num, &g2)),
            cut(&self.den, &g2).mul(&cut(&rhs.den, &g1)),
        )
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    /// Panics on division by zero.
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self * &rhs.inv().expect("division by zero in K")
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: &RationalFunction) -> RationalFunction {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}
