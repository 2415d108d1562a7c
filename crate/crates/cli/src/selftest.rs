//! Seeded property checks runnable from the command line.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sepdiff_core::diffpoly::{DiffPoly, DiffRing};
use sepdiff_core::field::{make_presentation, p_coordinates, Field};
use sepdiff_core::prolongation::{prolong, AlgebraicSystem};
use sepdiff_core::pstructure::{lambda_finite, LambdaCase};
use sepdiff_core::reduction::{full_reduce, make_satideal, member, verify_certificate};
use sepdiff_core::sample::{
    random_algebraic, random_constant, random_dpoly, random_element, random_separable, DiffShape,
    FieldShape,
};

use crate::report::{Report, EXIT_INTERNAL};

type Check = fn(&mut ChaCha8Rng) -> bool;

fn field(p: u64, consts: &[&str]) -> Field {
    make_presentation(p, consts, true).expect("valid presentation")
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

fn leibniz(g: &mut ChaCha8Rng) -> bool {
    let k = field(5, &["c"]);
    let a = random_element(&k, g, FieldShape::default());
    let b = random_element(&k, g, FieldShape::default());
    (&a * &b).derive() == &(&a.derive() * &b) + &(&a * &b.derive())
}

fn frobenius(g: &mut ChaCha8Rng) -> bool {
    let k = field(3, &["c"]);
    let a = random_element(&k, g, FieldShape::default());
    a.frobenius().pth_root().as_ref() == Some(&a)
}

fn pcoords(g: &mut ChaCha8Rng) -> bool {
    let k = field(2, &["c", "d"]);
    let a = random_element(&k, g, FieldShape::default());
    p_coordinates(&a).reconstruct() == a
}

fn dpoly_derivation(g: &mut ChaCha8Rng) -> bool {
    let r = DiffRing::univariate(&field(5, &[]));
    let a = random_dpoly(&r, g, &small());
    let b = random_dpoly(&r, g, &small());
    (&a * &b).delta() == &(&a.delta() * &b) + &(&a * &b.delta())
}

fn certificate(g: &mut ChaCha8Rng) -> bool {
    let r = DiffRing::univariate(&field(5, &[]));
    let f = random_separable(&r, g, &small());
    let h = random_dpoly(&r, g, &DiffShape::default());
    full_reduce(&h, &f).is_ok_and(|c| verify_certificate(&c, &h, &f))
}

fn membership(g: &mut ChaCha8Rng) -> bool {
    let r = DiffRing::univariate(&field(5, &[]));
    let f = &DiffPoly::x(&r, 1).pow(2) - &DiffPoly::x(&r, 0);
    let ideal = make_satideal(&f, false).expect("riccati generator");
    let h = random_dpoly(&r, g, &small());
    let comb = &(&h * &f) + &(&random_dpoly(&r, g, &small()) * &f.delta());
    member(&comb, &ideal).unwrap_or(false)
}

fn lambda(g: &mut ChaCha8Rng) -> bool {
    let k = field(3, &["c"]);
    let b = random_constant(&k, g, FieldShape::default());
    let res = lambda_finite(&k, &b);
    res.case == LambdaCase::Solved && res.reconstruct(&k) == b
}

fn prolongation(g: &mut ChaCha8Rng) -> bool {
    let k = field(5, &["c"]);
    let r = DiffRing::new(&k, &["x1", "x2"]).expect("valid names");
    let eqs: Vec<DiffPoly> = (0..2)
        .map(|_| random_algebraic(&r, g, &DiffShape::default()))
        .collect();
    let Ok(sys) = AlgebraicSystem::new(&r, eqs.clone()) else {
        return false;
    };
    let Ok(tau) = prolong(&sys) else {
        return false;
    };
    tau.pairs()
        .iter()
        .zip(&eqs)
        .all(|((_, df), f)| tau.substitute_derivatives(df) == f.delta())
}

pub const SUITES: &[(&str, Check)] = &[
    ("field.leibniz", leibniz),
    ("field.frobenius", frobenius),
    ("field.p_coordinates", pcoords),
    ("dpoly.leibniz", dpoly_derivation),
    ("reduce.certificate", certificate),
    ("ideal.membership", membership),
    ("lambda.reconstruct", lambda),
    ("prolong.substitution", prolongation),
];

/// Runs every suite for `cases` iterations from `seed`.
pub fn run(seed: u64, cases: usize) -> Report {
    let mut r = Report::new();
    r.push("seed", seed);
    r.push("cases", cases);
    let mut failed = 0usize;
    for (i, (name, check)) in SUITES.iter().enumerate() {
        let mut g = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i as u64));
        let passed = (0..cases).filter(|_| check(&mut g)).count();
        failed += cases - passed;
        r.push(format!("suite.{name}"), format!("{passed}/{cases}"));
    }
    r.push("failed", failed);
    if failed > 0 {
        r.code = EXIT_INTERNAL;
    }
    r
}
