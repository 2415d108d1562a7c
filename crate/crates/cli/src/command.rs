//! Subcommand dispatch.

use sepdiff_core::diffpoly::{format_deriv_var, nonvanishing_witness, DiffPoly, DiffRing, Ring};
use sepdiff_core::field::{p_coordinates, Field, RationalFunction};
use sepdiff_core::prolongation::{check_membership, lift_point, prolong, AlgebraicSystem};
use sepdiff_core::pstructure::{
    adjoin_pth_root, degree_of_imperfection, differential_p_basis, is_diff_p_independent,
    is_p_independent, lambda_finite, lambda_infinite, p_monomials,
};
use sepdiff_core::quotient::sdcf_witness;
use sepdiff_core::reduction::{full_reduce, make_satideal, verify_certificate};
use sepdiff_core::Error;

use crate::parse::{parse_dpoly, parse_element, parse_field, parse_tuple, split_list, ParseError};
use crate::report::{certificate_from_record, parse_record, Report, EXIT_INTERNAL};
use crate::selftest;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Field {
        field: String,
        elem: Option<String>,
    },
    Dpoly {
        field: String,
        vars: Option<String>,
        poly: String,
        point: Option<String>,
    },
    Delta {
        field: String,
        vars: Option<String>,
        poly: String,
        times: u32,
    },
    Reduce {
        field: String,
        ideal: String,
        poly: String,
    },
    Member {
        field: String,
        ideal: String,
        poly: String,
        assert_irreducible: bool,
    },
    Witness {
        field: String,
        f: Option<String>,
        g: String,
        assert_irreducible: bool,
        budget: usize,
    },
    Lambda {
        field: String,
        b: String,
        tuple: Option<String>,
    },
    Pindep {
        field: String,
        tuple: String,
    },
    Basis {
        field: String,
    },
    Prolong {
        field: String,
        vars: Option<String>,
        polys: Vec<String>,
        point: Option<String>,
    },
    Adjoin {
        field: String,
        root: String,
        name: Option<String>,
        elem: Option<String>,
    },
    Selftest {
        seed: u64,
        cases: usize,
    },
}

enum Failure {
    Parse(ParseError, String),
    Kernel(Error),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Kernel(e)
    }
}

type Outcome = std::result::Result<Report, Failure>;

fn field_arg(text: &str) -> Result<Field, Failure> {
    parse_field(text).map_err(|e| Failure::Parse(e, text.to_string()))
}

fn ring_arg(field: &Field, vars: Option<&str>) -> Result<Ring, Failure> {
    let text = vars.unwrap_or("x");
    let names: Vec<&str> = split_list(text)
        .into_iter()
        .map(|(s, _)| s.trim())
        .collect();
    DiffRing::new(field, &names).map_err(|e| match e {
        Error::InvalidName(_) | Error::ReservedName(_) | Error::DuplicateGeneratorName(_) => {
            Failure::Parse(
                ParseError {
                    kind: e.name(),
                    position: 0,
                    message: e.to_string(),
                },
                text.to_string(),
            )
        }
        other => Failure::Kernel(other),
    })
}

fn poly_arg(text: &str, ring: &Ring) -> Result<DiffPoly, Failure> {
    parse_dpoly(text, ring).map_err(|e| Failure::Parse(e, text.to_string()))
}

fn elem_arg(text: &str, field: &Field) -> Result<RationalFunction, Failure> {
    parse_element(text, field).map_err(|e| Failure::Parse(e, text.to_string()))
}

fn tuple_arg(text: &str, field: &Field) -> Result<Vec<RationalFunction>, Failure> {
    parse_tuple(text, field).map_err(|e| Failure::Parse(e, text.to_string()))
}

fn show_tuple<T: ToString>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Runs one command and produces its report.
pub fn run(cmd: &Command) -> Report {
    match dispatch(cmd) {
        Ok(r) => r,
        Err(Failure::Parse(e, input)) => Report::parse_error(&e, &input),
        Err(Failure::Kernel(e)) => Report::error(&e),
        Err(Failure::Internal(msg)) => {
            let mut r = Report::new();
            r.push("error", "InternalInvariant");
            r.push("message", msg);
            r.code = EXIT_INTERNAL;
            r
        }
    }
}

fn dispatch(cmd: &Command) -> Outcome {
    match cmd {
        Command::Field { field, elem } => cmd_field(field, elem.as_deref()),
        Command::Dpoly {
            field,
            vars,
            poly,
            point,
        } => cmd_dpoly(field, vars.as_deref(), poly, point.as_deref()),
        Command::Delta {
            field,
            vars,
            poly,
            times,
        } => cmd_delta(field, vars.as_deref(), poly, *times),
        Command::Reduce { field, ideal, poly } => cmd_reduce(field, ideal, poly),
        Command::Member {
            field,
            ideal,
            poly,
            assert_irreducible,
        } => cmd_member(field, ideal, poly, *assert_irreducible),
        Command::Witness {
            field,
            f,
            g,
            assert_irreducible,
            budget,
        } => cmd_witness(field, f.as_deref(), g, *assert_irreducible, *budget),
        Command::Lambda { field, b, tuple } => cmd_lambda(field, b, tuple.as_deref()),
        Command::Pindep { field, tuple } => cmd_pindep(field, tuple),
        Command::Basis { field } => cmd_basis(field),
        Command::Prolong {
            field,
            vars,
            polys,
            point,
        } => cmd_prolong(field, vars.as_deref(), polys, point.as_deref()),
        Command::Adjoin {
            field,
            root,
            name,
            elem,
        } => cmd_adjoin(field, root, name.as_deref(), elem.as_deref()),
        Command::Selftest { seed, cases } => Ok(selftest::run(*seed, *cases)),
    }
}

fn cmd_field(text: &str, elem: Option<&str>) -> Outcome {
    let k = field_arg(text)?;
    let mut r = Report::new();
    r.push("field", &k);
    r.push("characteristic", k.characteristic());
    r.push("constants", show_tuple(k.constant_gens()));
    r.push(
        "derivation",
        if k.has_diff_gen() { "d/dt" } else { "trivial" },
    );
    if let Some(e) = elem {
        let a = elem_arg(e, &k)?;
        r.push("elem", &a);
        r.push("derivative", a.derive());
        r.push("constant", a.is_constant());
        r.push("frobenius", a.frobenius());
        match a.pth_root() {
            Some(b) => r.push("pth_root", b),
            None => r.push("pth_root", "none"),
        }
        let pc = p_coordinates(&a);
        for (i, c) in pc.entries().iter().enumerate() {
            if !c.is_zero() {
                r.push(format!("pcoord[{i}]"), c);
            }
        }
        if pc.reconstruct() != a {
            return Err(Failure::Internal(
                "p-coordinates do not reconstruct the element".into(),
            ));
        }
    }
    Ok(r)
}

fn rank_info(r: &mut Report, prefix: &str, g: &DiffPoly) {
    let key = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    if g.is_zero() {
        r.push(key("rank"), "zero");
    } else if g.is_in_k() {
        r.push(key("rank"), "in-k");
    } else {
        r.push(key("rank"), g.rank().expect("g is outside K"));
    }
}

fn cmd_dpoly(field: &str, vars: Option<&str>, poly: &str, point: Option<&str>) -> Outcome {
    let k = field_arg(field)?;
    let ring = ring_arg(&k, vars)?;
    let f = poly_arg(poly, &ring)?;
    let mut r = Report::new();
    r.push("poly", &f);
    r.push("in_k", f.is_in_k());
    r.push("order", f.order()?);
    if !f.is_in_k() {
        r.push("leader", format_deriv_var(&ring, f.leader()?));
        r.push("degree", f.degree()?);
        r.push("rank", f.rank()?);
        r.push("separant", f.separant()?);
        r.push("initial", f.initial()?);
    }
    if let Some(pt) = point {
        let a = tuple_arg(pt, &k)?;
        r.push("point", show_tuple(&a));
        r.push("value", f.evaluate(&a)?);
    }
    Ok(r)
}

fn cmd_delta(field: &str, vars: Option<&str>, poly: &str, times: u32) -> Outcome {
    let k = field_arg(field)?;
    let ring = ring_arg(&k, vars)?;
    let f = poly_arg(poly, &ring)?;
    let mut r = Report::new();
    r.push("poly", &f);
    r.push("times", times);
    r.push("delta", f.delta_n(times));
    Ok(r)
}

fn certificate_lines(
    r: &mut Report,
    g: &DiffPoly,
    f: &DiffPoly,
) -> std::result::Result<sepdiff_core::reduction::ReductionCertificate, Failure> {
    let cert = full_reduce(g, f)?;
    let lines = cert.to_record();
    // re-verify what was printed, not the in-memory value
    let printed: String = lines.iter().map(|(k, v)| format!("{k} = {v}\n")).collect();
    let reparsed = parse_record(&printed)
        .and_then(|l| certificate_from_record(&l, f.ring()))
        .map_err(Failure::Internal)?;
    r.extend(lines);
    rank_info(r, "remainder", &cert.remainder);
    if !verify_certificate(&reparsed, g, f) {
        return Err(Failure::Internal("certificate failed verification".into()));
    }
    r.push("verified", true);
    Ok(cert)
}

fn cmd_reduce(field: &str, ideal: &str, poly: &str) -> Outcome {
    let k = field_arg(field)?;
    let ring = ring_arg(&k, None)?;
    let f = poly_arg(ideal, &ring)?;
    let g = poly_arg(poly, &ring)?;
    let mut r = Report::new();
    r.push("ideal.f", &f);
    r.push("g", &g);
    rank_info(&mut r, "ideal", &f);
    certificate_lines(&mut r, &g, &f)?;
    Ok(r)
}

fn cmd_member(field: &str, ideal: &str, poly: &str, assert_irreducible: bool) -> Outcome {
    let k = field_arg(field)?;
    let ring = ring_arg(&k, None)?;
    let f = poly_arg(ideal, &ring)?;
    let g = poly_arg(poly, &ring)?;
    let p = make_satideal(&f, assert_irreducible)?;
    let mut r = Report::new();
    r.push("ideal.f", &f);
    r.push("g", &g);
    r.push("irreducibility", p.provenance());
    let cert = {
        let mut tmp = Report::new();
        let cert = certificate_lines(&mut tmp, &g, &f)?;
        r.push("member", cert.remainder.is_zero());
        r.extend(tmp.lines);
        cert
    };
    debug_assert_eq!(cert.remainder.is_zero(), p.contains(&g)?);
    Ok(r)
}

fn cmd_witness(
    field: &str,
    f: Option<&str>,
    g: &str,
    assert_irreducible: bool,
    budget: usize,
) -> Outcome {
    let k = field_arg(field)?;
    let ring = ring_arg(&k, None)?;
    let gp = poly_arg(g, &ring)?;
    let mut r = Report::new();
    let Some(f) = f else {
        r.push("mode", "base-field");
        r.push("g", &gp);
        r.push("budget", budget);
        let a = nonvanishing_witness(&gp, budget)?;
        for (i, x) in a.iter().enumerate() {
            r.push(format!("point[{i}]"), x);
        }
        let v = gp.evaluate(&a)?;
        if v.is_zero() {
            return Err(Failure::Internal(
                "witness point does not certify g != 0".into(),
            ));
        }
        r.push("g_at_point", v);
        return Ok(r);
    };
    let fp = poly_arg(f, &ring)?;
    let rep = sdcf_witness(&fp, &gp, assert_irreducible)?;
    r.push("mode", "generic-point");
    r.extend(rep.to_record());
    if !(rep.is_valid() && rep.recheck()) {
        return Err(Failure::Internal(
            "witness report failed re-verification".into(),
        ));
    }
    r.push("valid", true);
    Ok(r)
}

fn cmd_lambda(field: &str, b: &str, tuple: Option<&str>) -> Outcome {
    let k = field_arg(field)?;
    let bv = elem_arg(b, &k)?;
    let mut r = Report::new();
    r.push("b", &bv);
    let res = match tuple {
        None => {
            r.push("form", "finite");
            r.push("basis", show_tuple(&differential_p_basis(&k)));
            lambda_finite(&k, &bv)
        }
        Some(t) => {
            let a = tuple_arg(t, &k)?;
            r.push("form", "infinite");
            r.push("tuple", show_tuple(&a));
            lambda_infinite(&k, &a, &bv)
        }
    };
    r.push("monomials", show_tuple(&res.monomials.monomials));
    r.extend(res.to_record());
    if res.case == sepdiff_core::pstructure::LambdaCase::Solved && !res.reconstructs(&bv) {
        return Err(Failure::Internal(
            "lambda values do not reconstruct b".into(),
        ));
    }
    Ok(r)
}

fn cmd_pindep(field: &str, tuple: &str) -> Outcome {
    let k = field_arg(field)?;
    let a = tuple_arg(tuple, &k)?;
    let mut r = Report::new();
    r.push("tuple", show_tuple(&a));
    r.push("monomials", show_tuple(&p_monomials(&k, &a).monomials));
    r.push("constant", a.iter().all(RationalFunction::is_constant));
    r.push("p_independent", is_p_independent(&k, &a));
    r.push("diff_p_independent", is_diff_p_independent(&k, &a));
    Ok(r)
}

fn cmd_basis(field: &str) -> Outcome {
    let k = field_arg(field)?;
    let (eps, e) = degree_of_imperfection(&k);
    let basis = differential_p_basis(&k);
    let mut r = Report::new();
    r.push("field", &k);
    r.push("epsilon", eps);
    r.push("e", e);
    r.push("basis", show_tuple(&basis));
    r.push("basis_independent", is_diff_p_independent(&k, &basis));
    Ok(r)
}

fn cmd_prolong(field: &str, vars: Option<&str>, polys: &[String], point: Option<&str>) -> Outcome {
    let k = field_arg(field)?;
    let ring = ring_arg(&k, vars)?;
    let eqs = polys
        .iter()
        .map(|p| poly_arg(p, &ring))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let sys = AlgebraicSystem::new(&ring, eqs)?;
    let tau = prolong(&sys)?;
    let mut r = Report::new();
    r.extend(tau.to_record());
    if let Some(pt) = point {
        let a = tuple_arg(pt, &k)?;
        if a.len() != ring.arity() {
            return Err(Error::ArityMismatch {
                expected: ring.arity(),
                found: a.len(),
            }
            .into());
        }
        let lifted = lift_point(&a);
        r.push("point", show_tuple(&a));
        r.push("lifted", show_tuple(&lifted));
        let on_v = sys
            .equations()
            .iter()
            .map(|f| f.evaluate(&a).map(|v| v.is_zero()))
            .collect::<std::result::Result<Vec<_>, _>>()?
            .into_iter()
            .all(|z| z);
        r.push("on_variety", on_v);
        r.push("on_prolongation", check_membership(&lifted, &tau)?);
    }
    Ok(r)
}

fn cmd_adjoin(field: &str, root: &str, name: Option<&str>, elem: Option<&str>) -> Outcome {
    let k = field_arg(field)?;
    let (nk, emb) = adjoin_pth_root(&k, root, name)?;
    let mut r = Report::new();
    r.push("field", &k);
    r.push("target", emb.replaced_name());
    r.push("root", emb.root_name());
    r.push("new_field", &nk);
    r.push(
        "map",
        format!(
            "{} -> {}^{}",
            emb.replaced_name(),
            emb.root_name(),
            k.characteristic()
        ),
    );
    r.push("epsilon_before", degree_of_imperfection(&k).0);
    r.push("epsilon_after", degree_of_imperfection(&nk).0);
    if let Some(e) = elem {
        let a = elem_arg(e, &k)?;
        r.push("elem", &a);
        r.push("image", emb.apply(&a)?);
    }
    Ok(r)
}
