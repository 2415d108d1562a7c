//! Prolongation equations `τV` of an algebraic system and the point lift
//! `a ↦ (a, δa)`.

use crate::diffpoly::{DerivVar, DiffPoly, DiffRing, Ring};
use crate::error::{Error, Result};
use crate::field::RationalFunction;

/// Polynomials in `K[x1..xn]`, i.e. differential polynomials of order 0.
#[derive(Clone, Debug)]
pub struct AlgebraicSystem {
    ring: Ring,
    equations: Vec<DiffPoly>,
}

impl AlgebraicSystem {
    pub fn new(ring: &Ring, equations: Vec<DiffPoly>) -> Result<Self> {
        for f in &equations {
            if f.ring() != ring {
                return Err(Error::FieldMismatch);
            }
            if f.variables().iter().any(|v| v.order > 0) {
                return Err(Error::DerivativeVariablePresent);
            }
        }
        Ok(AlgebraicSystem {
            ring: ring.clone(),
            equations,
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn arity(&self) -> usize {
        self.ring.arity()
    }

    pub fn equations(&self) -> &[DiffPoly] {
        &self.equations
    }
}

/// Pairs `(f, Df)` over the variables `x1..xn, y1..yn`.
#[derive(Clone, Debug)]
pub struct ProlongedSystem {
    base: Ring,
    ring: Ring,
    pairs: Vec<(DiffPoly, DiffPoly)>,
}

impl ProlongedSystem {
    pub fn base_ring(&self) -> &Ring {
        &self.base
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn pairs(&self) -> &[(DiffPoly, DiffPoly)] {
        &self.pairs
    }

    /// Index of `y_i` in the prolonged ring.
    pub fn y(&self, i: usize) -> DerivVar {
        DerivVar::new((self.base.arity() + i) as u32, 0)
    }

    /// Replaces each `y_i` by the first derivative of `x_i`, landing in the
    /// differential ring of the original system.
    pub fn substitute_derivatives(&self, g: &DiffPoly) -> DiffPoly {
        let n = self.base.arity() as u32;
        g.map_vars(&self.base, |v| {
            if v.var >= n {
                DerivVar::new(v.var - n, 1)
            } else {
                v
            }
        })
    }

    pub fn to_record(&self) -> Vec<(String, String)> {
        let mut out = vec![(
            "vars".to_string(),
            format!("({})", self.ring.names().join(", ")),
        )];
        for (i, (f, df)) in self.pairs.iter().enumerate() {
            out.push((format!("equation[{i}]"), f.to_string()));
            out.push((format!("prolonged[{i}]"), df.to_string()));
        }
        out
    }
}

/// `Df = Σ ∂f/∂x_i · y_i + f^δ` for every equation.
pub fn prolong(sys: &AlgebraicSystem) -> Result<ProlongedSystem> {
    let base = sys.ring().clone();
    let n = base.arity();
    let mut names: Vec<String> = base.names().to_vec();
    names.extend((1..=n).map(|i| format!("y{i}")));
    let ring = DiffRing::new(base.field(), &names)?;
    let pairs = sys
        .equations()
        .iter()
        .map(|f| {
            let mut df = f.coefficient_derivative().embed(&ring);
            for i in 0..n {
                let xi = DerivVar::new(i as u32, 0);
                let d = f.partial(xi);
                if d.is_zero() {
                    continue;
                }
                let yi = DiffPoly::var(&ring, DerivVar::new((n + i) as u32, 0));
                df = &df + &(&d.embed(&ring) * &yi);
            }
            (f.embed(&ring), df)
        })
        .collect();
    Ok(ProlongedSystem { base, ring, pairs })
}

/// `(a1..an, δa1..δan)`.
pub fn lift_point(a: &[RationalFunction]) -> Vec<RationalFunction> {
    let mut out = a.to_vec();
    out.extend(a.iter().map(RationalFunction::derive));
    out
}

/// Whether every equation of `tau` vanishes at `point ∈ K^{2n}`.
pub fn check_membership(point: &[RationalFunction], tau: &ProlongedSystem) -> Result<bool> {
    let expected = tau.ring().arity();
    if point.len() != expected {
        return Err(Error::ArityMismatch {
            expected,
            found: point.len(),
        });
    }
    for (f, df) in tau.pairs() {
        if !f.evaluate(point)?.is_zero() || !df.evaluate(point)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}
