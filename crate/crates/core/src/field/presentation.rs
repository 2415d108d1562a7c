use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Name of the distinguished generator with `δt = 1`.
pub const DIFF_GEN: &str = "t";

/// A computable differential field `GF(p)(c1,...,cm)(t)`.
///
/// The constants `ci` satisfy `δci = 0`. When `has_diff_gen` is set the
/// extra generator `t` has `δt = 1`; otherwise the derivation is zero.
/// Generators are indexed `c1..cm` then `t`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldPresentation {
    p: u32,
    constant_gens: Vec<String>,
    has_diff_gen: bool,
}

/// Shared handle to a presentation; field elements carry one.
pub type Field = Arc<FieldPresentation>;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn validate_name(name: &str) -> Result<()> {
    let mut chars = name.chars();
    let ok = match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => chars.all(|c| c.is_ascii_alphanumeric() || c == '_'),
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidName(name.to_string()))
    }
}

/// Validates and builds a presentation.
pub fn make_presentation(
    p: u64,
    constant_gens: &[impl AsRef<str>],
    has_diff_gen: bool,
) -> Result<Field> {
    if !is_prime(p) || p > u32::MAX as u64 / 2 {
        return Err(Error::NonPrimeCharacteristic(p));
    }
    let mut names: Vec<String> = Vec::with_capacity(constant_gens.len());
    for g in constant_gens {
        let g = g.as_ref();
        if g == DIFF_GEN {
            return Err(Error::ReservedName(g.to_string()));
        }
        validate_name(g)?;
        if names.iter().any(|n| n == g) {
            return Err(Error::DuplicateGeneratorName(g.to_string()));
        }
        names.push(g.to_string());
    }
    Ok(Arc::new(FieldPresentation {
        p: p as u32,
        constant_gens: names,
        has_diff_gen,
    }))
}

impl FieldPresentation {
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn constant_gens(&self) -> &[String] {
        &self.constant_gens
    }

    /// Number of constant generators, `m`.
    pub fn num_constants(&self) -> usize {
        self.constant_gens.len()
    }

    pub fn has_diff_gen(&self) -> bool {
        self.has_diff_gen
    }

    /// Total number of generators including `t`.
    pub fn num_gens(&self) -> usize {
        self.constant_gens.len() + usize::from(self.has_diff_gen)
    }

    /// Index of `t` among the generators.
    pub fn diff_gen_index(&self) -> Option<usize> {
        self.has_diff_gen.then_some(self.constant_gens.len())
    }

    pub fn gen_names(&self) -> Vec<String> {
        let mut v = self.constant_gens.clone();
        if self.has_diff_gen {
            v.push(DIFF_GEN.to_string());
        }
        v
    }

    pub fn gen_index(&self, name: &str) -> Option<usize> {
        if name == DIFF_GEN {
            return self.diff_gen_index();
        }
        self.constant_gens.iter().position(|n| n == name)
    }
}

impl fmt::Display for FieldPresentation {
    /// Prints in the presentation grammar, e.g. `GF(3)(c;t)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})({}", self.p, self.constant_gens.join(","))?;
        if self.has_diff_gen {
            write!(f, ";t")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_presentation() {
        let k = make_presentation(5, &[] as &[&str], true).unwrap();
        assert_eq!(k.num_constants(), 0);
        assert_eq!(k.to_string(), "GF(5)(;t)");
    }

    #[test]
    fn constants_and_t() {
        let k = make_presentation(3, &["c"], true).unwrap();
        assert_eq!(k.num_constants(), 1);
        assert_eq!(k.gen_index("t"), Some(1));
        assert_eq!(k.to_string(), "GF(3)(c;t)");
    }

    #[test]
    fn trivial_derivation() {
        let k = make_presentation(2, &["t1", "t2"], false).unwrap();
        assert_eq!(k.num_gens(), 2);
        assert_eq!(k.diff_gen_index(), None);
        assert_eq!(k.to_string(), "GF(2)(t1,t2)");
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            make_presentation(4, &["c"], true).unwrap_err(),
            Error::NonPrimeCharacteristic(4)
        );
        assert_eq!(
            make_presentation(1, &[] as &[&str], true).unwrap_err(),
            Error::NonPrimeCharacteristic(1)
        );
        assert_eq!(
            make_presentation(3, &["c", "c"], true).unwrap_err(),
            Error::DuplicateGeneratorName("c".into())
        );
        assert_eq!(
            make_presentation(3, &["t"], false).unwrap_err(),
            Error::ReservedName("t".into())
        );
        assert!(matches!(
            make_presentation(3, &[""], false),
            Err(Error::InvalidName(_))
        ));
    }
}
