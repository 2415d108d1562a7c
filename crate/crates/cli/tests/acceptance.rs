//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Set `SEPDIFF_BLESS=1` to rewrite the golden corpus output instead of
//! comparing against it.

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sepdiff_cli::app::main_with;
use sepdiff_core::diffpoly::{DerivVar, DiffPoly, DiffRing, Monomial, Ring};
use sepdiff_core::field::{make_presentation, p_coordinates, Field, RationalFunction};
use sepdiff_core::prolongation::{check_membership, lift_point, prolong, AlgebraicSystem};
use sepdiff_core::pstructure::{
    adjoin_pth_root, degree_of_imperfection, extend_with_constants, lambda_finite, lambda_infinite,
    LambdaCase,
};
use sepdiff_core::quotient::sdcf_witness;
use sepdiff_core::reduction::{full_reduce, make_satideal, member, verify_certificate, SatIdeal};
use sepdiff_core::sample::{
    random_algebraic, random_constant, random_dpoly, random_element, random_nonconstant,
    random_polynomial, random_separable, DiffShape, FieldShape,
};
use sepdiff_core::Error;

type Outcome = Result<String, String>;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gf5t() -> Ring {
    DiffRing::univariate(&make_presentation(5, &[] as &[&str], true).unwrap())
}

fn riccati(r: &Ring) -> DiffPoly {
    &DiffPoly::x(r, 1).pow(2) - &DiffPoly::x(r, 0)
}

fn small() -> DiffShape {
    DiffShape {
        max_order: 2,
        max_degree: 2,
        max_terms: 3,
        coeff: FieldShape {
            max_degree: 1,
            max_terms: 2,
        },
        rational_coeffs: false,
    }
}

// ---------------------------------------------------------------- oracles

/// Term-by-term derivation: coefficient derivatives plus the chain rule on
/// every factor `v^e`, with `δv` the next derivative of the same variable.
fn oracle_delta(f: &DiffPoly) -> DiffPoly {
    let r = f.ring();
    let mut acc = DiffPoly::zero(r);
    for (m, c) in f.terms() {
        acc = &acc + &DiffPoly::term(r, m.clone(), c.derive());
        for &(v, e) in m.factors() {
            let rest = m
                .with_exponent(v, e - 1)
                .mul(&Monomial::var(v.derivative(), 1));
            let k = RationalFunction::scalar(r.field(), i64::from(e));
            acc = &acc + &DiffPoly::term(r, rest, c * &k);
        }
    }
    acc
}

fn oracle_partial(f: &DiffPoly, v: DerivVar) -> DiffPoly {
    let r = f.ring();
    let mut acc = DiffPoly::zero(r);
    for (m, c) in f.terms() {
        let e = m.exponent(v);
        if e > 0 {
            let k = RationalFunction::scalar(r.field(), i64::from(e));
            acc = &acc + &DiffPoly::term(r, m.with_exponent(v, e - 1), c * &k);
        }
    }
    acc
}

/// `∂a/∂g` for the generator with index `j`.
fn gen_partial(a: &RationalFunction, j: usize) -> RationalFunction {
    let (n, d) = (a.numerator(), a.denominator());
    let num = n.partial(j).mul(d).sub(&n.mul(&d.partial(j)));
    RationalFunction::new(a.field(), num, d.mul(d))
}

/// p-independence of at most two elements through the rank of their
/// Jacobian with respect to all generators.
fn jacobian_independent(a: &[RationalFunction]) -> bool {
    let Some(first) = a.first() else {
        return true;
    };
    let n = first.field().num_gens();
    let rows: Vec<Vec<RationalFunction>> = a
        .iter()
        .map(|x| (0..n).map(|j| gen_partial(x, j)).collect())
        .collect();
    match rows.len() {
        1 => rows[0].iter().any(|x| !x.is_zero()),
        2 => (0..n).any(|i| {
            (i + 1..n)
                .any(|j| !(&(&rows[0][i] * &rows[1][j]) - &(&rows[0][j] * &rows[1][i])).is_zero())
        }),
        _ => unreachable!("oracle handles at most two elements"),
    }
}

/// The p-monomials of `a` with the first entry most significant.
fn oracle_monomials(a: &[RationalFunction], p: u32) -> Vec<RationalFunction> {
    let mut out = vec![RationalFunction::one(a[0].field())];
    for x in a {
        out = out
            .iter()
            .flat_map(|m| (0..p).map(move |i| m * &x.pow(u64::from(i))))
            .collect();
    }
    out
}

fn oracle_sum(values: &[RationalFunction], monomials: &[RationalFunction]) -> RationalFunction {
    let p = u64::from(values[0].field().characteristic());
    values
        .iter()
        .zip(monomials)
        .fold(RationalFunction::zero(values[0].field()), |acc, (l, m)| {
            &acc + &(&l.pow(p) * m)
        })
}

/// `Σ values_i^p · monomials_i == b`, compared as cross-multiplied
/// polynomials so the large intermediate sum is never reduced.
fn oracle_sum_is(
    values: &[RationalFunction],
    monomials: &[RationalFunction],
    b: &RationalFunction,
) -> bool {
    let p = u64::from(b.field().characteristic());
    let mut num: Vec<_> = Vec::new();
    let mut den: Vec<_> = Vec::new();
    for (l, m) in values.iter().zip(monomials) {
        let x = &l.pow(p) * m;
        num.push(x.numerator().clone());
        den.push(x.denominator().clone());
    }
    // Σ n_i/d_i = b  ⇔  Σ n_i·Π_{j≠i} d_j·B = A·Π d_j, with duplicates merged
    let mut distinct: Vec<_> = Vec::new();
    for d in &den {
        if !distinct.contains(d) {
            distinct.push(d.clone());
        }
    }
    let total = distinct
        .iter()
        .skip(1)
        .fold(distinct[0].clone(), |acc, d| acc.mul(d));
    let mut lhs = RationalFunction::zero(b.field()).numerator().clone();
    for (n, d) in num.iter().zip(&den) {
        lhs = lhs.add(&n.mul(&total.div_exact(d).expect("factor of the product")));
    }
    lhs.mul(b.denominator()) == b.numerator().mul(&total)
}

/// `[K : K^p]`-basis of residue monomials, first generator most significant.
fn oracle_basis(field: &Field) -> Vec<RationalFunction> {
    let gens: Vec<RationalFunction> = (0..field.num_gens())
        .map(|i| RationalFunction::generator(field, i))
        .collect();
    if gens.is_empty() {
        return vec![RationalFunction::one(field)];
    }
    oracle_monomials(&gens, field.characteristic())
}

// --------------------------------------------------------------- criteria

fn c1_partial_identity() -> Outcome {
    let r = gf5t();
    let mut g = rng(1);
    let shape = DiffShape {
        max_order: 3,
        max_degree: 3,
        max_terms: 4,
        coeff: FieldShape {
            max_degree: 2,
            max_terms: 3,
        },
        rational_coeffs: false,
    };
    let mut checks = 0;
    for case in 0..200 {
        let f = random_dpoly(&r, &mut g, &shape);
        let df = f.delta();
        ensure(df == oracle_delta(&f), || {
            format!("case {case}: delta of {f} disagrees with the term-wise oracle")
        })?;
        for i in 0..=4 {
            let xi = DerivVar::x(i);
            let lhs = oracle_partial(&df, xi);
            let mut rhs = oracle_delta(&oracle_partial(&f, xi));
            if i > 0 {
                rhs = &rhs + &oracle_partial(&f, DerivVar::x(i - 1));
            }
            ensure(lhs == rhs, || {
                format!("case {case}, i = {i}: identity fails for {f}")
            })?;
            ensure(df.partial(xi) == lhs, || {
                format!("case {case}: library partial disagrees")
            })?;
            checks += 1;
        }
    }
    Ok(format!("200 polynomials, {checks} identities"))
}

fn c2_certificates() -> Outcome {
    let r = gf5t();
    let mut g = rng(2);
    for case in 0..200 {
        let f = random_separable(&r, &mut g, &small());
        let h = random_dpoly(&r, &mut g, &DiffShape::default());
        let cert = full_reduce(&h, &f).map_err(|e| format!("case {case}: {e}"))?;
        ensure(verify_certificate(&cert, &h, &f), || {
            format!("case {case}: certificate for {h} mod {f} fails")
        })?;
        // independent recomputation of i^m s^n h = Σ c_j δ^j f + q f + r
        let lhs = &(&f.initial().unwrap().pow(cert.m) * &f.separant().unwrap().pow(cert.n)) * &h;
        let im = f.initial().unwrap().pow(cert.m);
        let mut rhs = &(&cert.quotient * &f) + &cert.remainder;
        for (&j, c) in &cert.cofactors {
            let mut dj = f.clone();
            for _ in 0..j {
                dj = oracle_delta(&dj);
            }
            rhs = &rhs + &(&(&im * c) * &dj);
        }
        ensure(lhs == rhs, || {
            format!("case {case}: certificate identity fails on recomputation")
        })?;
        let rem = &cert.remainder;
        if !rem.is_zero() && !rem.is_in_k() {
            ensure(rem.rank().unwrap() < f.rank().unwrap(), || {
                format!("case {case}: remainder {rem} does not have lower rank than {f}")
            })?;
        }
    }
    Ok("200 pairs".into())
}

fn c3_membership() -> Outcome {
    let r = gf5t();
    let f = riccati(&r);
    let ideal = make_satideal(&f, false).map_err(|e| e.to_string())?;
    let mut g = rng(3);
    let derivs = [f.clone(), f.delta(), f.delta_n(2)];
    for case in 0..100 {
        let comb = derivs.iter().fold(DiffPoly::zero(&r), |acc, d| {
            &acc + &(&random_dpoly(&r, &mut g, &small()) * d)
        });
        ensure(member(&comb, &ideal).map_err(|e| e.to_string())?, || {
            format!("member case {case}: {comb}")
        })?;
    }
    let low_shape = DiffShape {
        max_order: 1,
        max_degree: 3,
        ..small()
    };
    let mut done = 0;
    while done < 100 {
        let h = random_dpoly(&r, &mut g, &low_shape);
        let low = DiffPoly::from_terms(
            &r,
            h.terms()
                .filter(|(m, _)| m.exponent(DerivVar::x(1)) < 2)
                .map(|(m, c)| (m.factors().to_vec(), c.clone())),
        );
        if low.is_zero() {
            continue;
        }
        if !low.is_in_k() {
            ensure(low.rank().unwrap() < f.rank().unwrap(), || {
                "sampler produced rank >= rank f".into()
            })?;
        }
        ensure(!member(&low, &ideal).map_err(|e| e.to_string())?, || {
            format!("non-member case {done}: {low}")
        })?;
        done += 1;
    }
    Ok("100 members, 100 lower-rank non-members".into())
}

fn c4_primality() -> Outcome {
    let r = gf5t();
    let f = riccati(&r);
    let ideal = make_satideal(&f, false).map_err(|e| e.to_string())?;
    let mut g = rng(4);
    let mut in_ideal = 0;
    for case in 0..100 {
        let a = random_dpoly(&r, &mut g, &small());
        let mut b = random_dpoly(&r, &mut g, &small());
        if case % 2 == 0 {
            b = &b * &f.delta_n(g.gen_range(0..3));
        }
        let is = |x: &DiffPoly| member(x, &ideal).map_err(|e| e.to_string());
        if is(&(&a * &b))? {
            in_ideal += 1;
            ensure(is(&a)? || is(&b)?, || {
                format!("case {case}: product in ideal, neither factor is")
            })?;
        }
    }
    ensure(in_ideal >= 40, || {
        format!("only {in_ideal} products landed in the ideal")
    })?;
    Ok(format!("100 pairs, {in_ideal} products in the ideal"))
}

fn c5_lambda() -> Outcome {
    let k = make_presentation(3, &["c"], true).unwrap();
    let c = RationalFunction::generator(&k, 0);
    let monos = oracle_monomials(&[c], 3);
    let mut g = rng(5);
    for case in 0..200 {
        let b = random_constant(&k, &mut g, FieldShape::default());
        let res = lambda_finite(&k, &b);
        ensure(res.case == LambdaCase::Solved, || {
            format!("constant case {case}: {}", res.case)
        })?;
        ensure(res.monomials.monomials == monos, || {
            "p-monomial order differs".into()
        })?;
        ensure(oracle_sum_is(&res.values, &monos, &b), || {
            format!("constant case {case}: reconstruction of {b} fails")
        })?;
        let nb = random_nonconstant(&k, &mut g, FieldShape::default());
        let res = lambda_finite(&k, &nb);
        ensure(
            res.case == LambdaCase::NonConstant && res.values.iter().all(RationalFunction::is_zero),
            || format!("non-constant case {case}: {nb} gives non-zero values"),
        )?;
    }
    // the three clauses of the infinite form over a presentation with two constants
    let k2 = make_presentation(3, &["c", "d"], true).unwrap();
    let mut seen = [0usize; 4];
    for case in 0..200 {
        let n = g.gen_range(1..3);
        let pick = |g: &mut ChaCha8Rng| {
            if g.gen_ratio(1, 6) {
                random_element(&k2, g, FieldShape::default())
            } else {
                random_constant(&k2, g, FieldShape::default())
            }
        };
        let mut a: Vec<RationalFunction> = (0..n).map(|_| pick(&mut g)).collect();
        if case % 4 == 1 {
            // force a dependent tuple
            a = vec![a[0].clone(), a[0].pow(2)];
        }
        let b = if case % 3 == 0 && a.iter().all(RationalFunction::is_constant) {
            // b in the span of the p-monomials of a
            let shape = FieldShape {
                max_degree: 1,
                max_terms: 2,
            };
            let coeffs: Vec<RationalFunction> = (0..3usize.pow(n as u32))
                .map(|_| random_polynomial(&k2, &mut g, shape))
                .collect();
            oracle_sum(&coeffs, &oracle_monomials(&a, 3))
        } else {
            pick(&mut g)
        };
        let res = lambda_infinite(&k2, &a, &b);
        let constant = b.derive().is_zero() && a.iter().all(|x| x.derive().is_zero());
        let mut ab = a.clone();
        ab.push(b.clone());
        let expected = if !constant {
            LambdaCase::NonConstant
        } else if !jacobian_independent(&a) {
            LambdaCase::Dependent
        } else if ab.len() <= 2 && jacobian_independent(&ab) {
            LambdaCase::Independent
        } else {
            // three constants of GF(3)(c,d)(t) are always dependent
            LambdaCase::Solved
        };
        ensure(res.case == expected, || {
            format!(
                "infinite case {case}: got {}, expected {expected}",
                res.case
            )
        })?;
        match res.case {
            LambdaCase::Solved => {
                ensure(
                    oracle_sum_is(&res.values, &oracle_monomials(&a, 3), &b),
                    || format!("infinite case {case}: reconstruction fails"),
                )?;
            }
            _ => ensure(res.values.iter().all(RationalFunction::is_zero), || {
                format!("infinite case {case}: zero clause violated")
            })?,
        }
        seen[expected as usize] += 1;
    }
    ensure(seen.iter().all(|&s| s > 0), || {
        format!("case coverage {seen:?}")
    })?;
    Ok(format!(
        "200 constants, 200 non-constants, infinite form cases {seen:?}"
    ))
}

fn c6_degrees() -> Outcome {
    let mut checked = 0;
    for p in [2u64, 3, 5] {
        for m in 0..4usize {
            let names: Vec<String> = (0..m).map(|i| format!("c{i}")).collect();
            for t in [true, false] {
                let k = make_presentation(p, &names, t).unwrap();
                let (eps, _) = degree_of_imperfection(&k);
                ensure(eps == m, || {
                    format!("GF({p}) m = {m} t = {t}: epsilon {eps}")
                })?;
                for name in &names {
                    let (nk, _) = adjoin_pth_root(&k, name, None).map_err(|e| e.to_string())?;
                    ensure(degree_of_imperfection(&nk).0 == m, || {
                        format!("adjoining a root of {name} changed epsilon")
                    })?;
                }
                for added in 1..3usize {
                    let extra: Vec<String> = (0..added).map(|i| format!("u{i}")).collect();
                    let ek = extend_with_constants(&k, &extra).map_err(|e| e.to_string())?;
                    ensure(degree_of_imperfection(&ek).0 == m + added, || {
                        format!(
                            "extending by {added} gave epsilon {}",
                            degree_of_imperfection(&ek).0
                        )
                    })?;
                }
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} presentations"))
}

fn witness_ok(f: &DiffPoly, g: &DiffPoly) -> Result<(), String> {
    let rep = sdcf_witness(f, g, false).map_err(|e| format!("witness for {f}, {g}: {e}"))?;
    ensure(rep.is_valid() && rep.recheck(), || {
        format!("report for {f}, {g} does not recheck")
    })?;
    let ideal: &Arc<SatIdeal> = &rep.ideal;
    ensure(member(f, ideal).map_err(|e| e.to_string())?, || {
        format!("{f} not in its own ideal")
    })?;
    ensure(!member(g, ideal).map_err(|e| e.to_string())?, || {
        format!("{g} vanishes at the generic point of {f}")
    })
}

fn c7_witnesses() -> Outcome {
    let r = gf5t();
    let t = DiffPoly::constant(&r, RationalFunction::named(r.field(), "t").unwrap());
    let mut count = 0;
    for m in 0..=2u32 {
        let f = DiffPoly::x(&r, m + 1);
        let gs = [
            DiffPoly::x(&r, m),
            &DiffPoly::x(&r, m).pow(2) + &(&t * &DiffPoly::x(&r, 0)),
            &(&t * &DiffPoly::x(&r, m)) - &DiffPoly::one(&r),
        ];
        for g in &gs {
            witness_ok(&f, g)?;
            count += 1;
        }
    }
    let f = riccati(&r);
    for g in [DiffPoly::x(&r, 0), DiffPoly::x(&r, 1), t.clone()] {
        witness_ok(&f, &g)?;
        count += 1;
    }
    let bad = &DiffPoly::x(&r, 1).pow(5) - &DiffPoly::x(&r, 0);
    match sdcf_witness(&bad, &DiffPoly::x(&r, 0), false) {
        Err(Error::ZeroSeparant) => {}
        other => return Err(format!("zero separant input gave {other:?}")),
    }
    Ok(format!("{count} witnesses, zero separant rejected"))
}

fn c8_prolongation() -> Outcome {
    let k = make_presentation(5, &["c"], true).unwrap();
    let r = DiffRing::new(&k, &["x1", "x2"]).unwrap();
    let mut g = rng(8);
    for case in 0..100 {
        let eqs: Vec<DiffPoly> = (0..2)
            .map(|_| random_algebraic(&r, &mut g, &DiffShape::default()))
            .collect();
        let tau = prolong(&AlgebraicSystem::new(&r, eqs.clone()).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        for ((_, df), f) in tau.pairs().iter().zip(&eqs) {
            ensure(tau.substitute_derivatives(df) == oracle_delta(f), || {
                format!("system {case}: {f}")
            })?;
        }
    }
    for case in 0..50 {
        let a: Vec<RationalFunction> = (0..2)
            .map(|_| random_element(&k, &mut g, FieldShape::default()))
            .collect();
        let eqs: Vec<DiffPoly> = (0..2)
            .map(|_| {
                let h = random_algebraic(&r, &mut g, &DiffShape::default());
                let v = h.evaluate(&a).unwrap();
                &h - &DiffPoly::constant(&r, v)
            })
            .collect();
        let tau = prolong(&AlgebraicSystem::new(&r, eqs).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let lifted = lift_point(&a);
        let direct = tau.pairs().iter().all(|(f, df)| {
            f.evaluate(&lifted).unwrap().is_zero() && df.evaluate(&lifted).unwrap().is_zero()
        });
        ensure(direct, || {
            format!("point case {case}: lifted point off the prolongation")
        })?;
        ensure(
            check_membership(&lifted, &tau).map_err(|e| e.to_string())?,
            || format!("point case {case}: check_membership disagrees"),
        )?;
    }
    Ok("100 systems, 50 lifted points".into())
}

fn c9_frobenius() -> Outcome {
    let fields = [
        make_presentation(5, &[] as &[&str], true).unwrap(),
        make_presentation(3, &["c"], true).unwrap(),
        make_presentation(2, &["c", "d"], true).unwrap(),
        make_presentation(3, &["a", "b"], false).unwrap(),
    ];
    let mut g = rng(9);
    for case in 0..500 {
        let k = &fields[case % fields.len()];
        let p = u64::from(k.characteristic());
        let a = random_element(k, &mut g, FieldShape::default());
        let fa = a.frobenius();
        ensure(fa == a.pow(p), || {
            format!("case {case}: frobenius of {a} is not a^p")
        })?;
        ensure(fa.pth_root().as_ref() == Some(&a), || {
            format!("case {case}: root of frobenius of {a}")
        })?;
        let pc = p_coordinates(&a);
        ensure(pc.reconstruct() == a, || {
            format!("case {case}: coordinates of {a} do not reconstruct")
        })?;
        let basis = oracle_basis(k);
        ensure(pc.len() == basis.len(), || {
            format!("case {case}: {} coordinates", pc.len())
        })?;
        let sum = pc
            .entries()
            .iter()
            .zip(&basis)
            .fold(RationalFunction::zero(k), |acc, (x, m)| &acc + &(x * m));
        ensure(sum == a, || {
            format!("case {case}: oracle basis sum differs")
        })?;
        ensure(
            pc.entries().iter().all(RationalFunction::is_pth_power),
            || format!("case {case}: a coordinate of {a} is not a p-th power"),
        )?;
    }
    Ok("500 elements".into())
}

// ------------------------------------------------------------ golden corpus

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

/// Splits a corpus line on spaces, keeping double-quoted runs together.
fn split_args(line: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut any = false;
    for ch in line.chars() {
        match ch {
            '"' => {
                quoted = !quoted;
                any = true;
            }
            ' ' if !quoted => {
                if any {
                    out.push(std::mem::take(&mut cur));
                    any = false;
                }
            }
            _ => {
                cur.push(ch);
                any = true;
            }
        }
    }
    if any {
        out.push(cur);
    }
    out
}

fn corpus() -> Result<Vec<String>, String> {
    let text =
        std::fs::read_to_string(golden_dir().join("commands.txt")).map_err(|e| e.to_string())?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(String::from)
        .collect())
}

fn transcript(run: impl Fn(&[String]) -> (String, i32), commands: &[String]) -> String {
    let mut out = String::new();
    for cmd in commands {
        let (stdout, code) = run(&split_args(cmd));
        out.push_str(&format!("$ sepdiff {cmd}\n{stdout}exit = {code}\n\n"));
    }
    out
}

fn in_process(args: &[String]) -> (String, i32) {
    let inv = main_with(std::iter::once("sepdiff".to_string()).chain(args.iter().cloned()));
    (inv.stdout, inv.code)
}

fn via_binary(args: &[String]) -> (String, i32) {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_sepdiff"))
        .args(args)
        .env_remove("SEPDIFF_BUDGET")
        .output()
        .expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("utf-8 output"),
        out.status.code().unwrap_or(-1),
    )
}

fn c10_golden() -> Outcome {
    let commands = corpus()?;
    ensure(commands.len() >= 20, || {
        format!("corpus has only {} commands", commands.len())
    })?;
    let first = transcript(in_process, &commands);
    let second = transcript(in_process, &commands);
    ensure(first == second, || "two in-process runs differ".into())?;
    let binary = transcript(via_binary, &commands);
    ensure(first == binary, || {
        "binary output differs from in-process output".into()
    })?;
    let path = golden_dir().join("expected.txt");
    if std::env::var_os("SEPDIFF_BLESS").is_some() {
        std::fs::write(&path, &first).map_err(|e| e.to_string())?;
        return Ok(format!(
            "{} commands, golden file rewritten",
            commands.len()
        ));
    }
    let expected =
        std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
    if expected != first {
        let line = expected
            .lines()
            .zip(first.lines())
            .position(|(a, b)| a != b)
            .unwrap_or_else(|| expected.lines().count().min(first.lines().count()));
        return Err(format!("golden mismatch at line {}", line + 1));
    }
    Ok(format!(
        "{} commands, byte-identical over 3 runs",
        commands.len()
    ))
}

// ------------------------------------------------------------------ driver

type Criterion = (u32, &'static str, u64, fn() -> Outcome);

const CRITERIA: &[Criterion] = &[
    (
        1,
        "partial derivative of the derivation",
        5,
        c1_partial_identity,
    ),
    (2, "reduction certificates", 30, c2_certificates),
    (3, "membership algebra", 30, c3_membership),
    (4, "primality probe", 30, c4_primality),
    (5, "lambda reconstruction", 10, c5_lambda),
    (6, "degree bookkeeping", 5, c6_degrees),
    (7, "generic point witnesses", 10, c7_witnesses),
    (8, "prolongation compatibility", 10, c8_prolongation),
    (9, "frobenius and p-coordinates", 5, c9_frobenius),
    (10, "CLI golden corpus", 5, c10_golden),
];

fn main() -> ExitCode {
    let mut failures = 0;
    for &(id, name, limit, check) in CRITERIA {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let limit_d = Duration::from_secs(limit);
        let (tag, detail) = match outcome {
            Ok(d) if elapsed < limit_d => ("PASS", d),
            Ok(d) => ("FAIL", format!("{d}; too slow")),
            Err(e) => ("FAIL", e),
        };
        if tag == "FAIL" {
            failures += 1;
        }
        println!(
            "{tag} {id:>2} {name}: {detail} ({:.2} s, limit {limit} s)",
            elapsed.as_secs_f64()
        );
    }
    println!(
        "{} of {} criteria passed",
        CRITERIA.len() - failures,
        CRITERIA.len()
    );
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
