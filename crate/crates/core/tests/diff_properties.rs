use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sepdiff_core::diffpoly::{DerivVar, DiffPoly, DiffRing, Ring};
use sepdiff_core::field::make_presentation;
use sepdiff_core::reduction::{full_reduce, make_satideal, member, verify_certificate};
use sepdiff_core::sample::{random_dpoly, random_element, random_separable, DiffShape, FieldShape};

fn ring(p: u64) -> Ring {
    DiffRing::univariate(&make_presentation(p, &[] as &[&str], true).unwrap())
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

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 64,
        rng_seed: RngSeed::Fixed(0x5eed),
        ..ProptestConfig::default()
    })]

    #[test]
    fn delta_is_a_derivation(seed: u64) {
        let r = ring(5);
        let mut g = rng(seed);
        let shape = DiffShape { rational_coeffs: true, ..DiffShape::default() };
        let a = random_dpoly(&r, &mut g, &shape);
        let b = random_dpoly(&r, &mut g, &shape);
        prop_assert_eq!((&a + &b).delta(), &a.delta() + &b.delta());
        prop_assert_eq!((&a * &b).delta(), &(&a.delta() * &b) + &(&a * &b.delta()));
    }

    #[test]
    fn partial_of_delta_identity(seed: u64) {
        let r = ring(5);
        let mut g = rng(seed);
        let f = random_dpoly(&r, &mut g, &DiffShape::default());
        let top = f.max_order().unwrap_or(0) + 1;
        for i in 0..=top {
            let xi = DerivVar::x(i);
            let lhs = f.delta().partial(xi);
            let mut rhs = f.partial(xi).delta();
            if i > 0 {
                rhs = &rhs + &f.partial(DerivVar::x(i - 1));
            }
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn evaluation_commutes_with_derivation(seed: u64) {
        let r = ring(3);
        let mut g = rng(seed);
        let f = random_dpoly(&r, &mut g, &small());
        let a = random_element(r.field(), &mut g, FieldShape::default());
        let lhs = f.delta().evaluate(std::slice::from_ref(&a)).unwrap();
        let rhs = f.evaluate(&[a]).unwrap().derive();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn derivative_is_linear_in_new_leader(seed: u64) {
        let r = ring(5);
        let mut g = rng(seed);
        let f = random_separable(&r, &mut g, &small());
        let df = f.delta();
        prop_assert_eq!(df.order().unwrap(), f.order().unwrap() + 1);
        prop_assert_eq!(df.degree().unwrap(), 1);
        prop_assert_eq!(df.separant().unwrap(), f.separant().unwrap());
        prop_assert_eq!(df.initial().unwrap(), f.separant().unwrap());
    }

    #[test]
    fn certificates_verify(seed: u64) {
        let r = ring(5);
        let mut g = rng(seed);
        let f = random_separable(&r, &mut g, &small());
        let h = random_dpoly(&r, &mut g, &DiffShape::default());
        let cert = full_reduce(&h, &f).unwrap();
        prop_assert!(verify_certificate(&cert, &h, &f));
        let rem = &cert.remainder;
        if !rem.is_zero() && !rem.is_in_k() {
            prop_assert!(rem.rank().unwrap() < f.rank().unwrap()
                || rem.degree_in(f.leader().unwrap()) < f.degree().unwrap());
            for v in rem.variables() {
                prop_assert!(v <= f.leader().unwrap());
            }
        }
    }

    #[test]
    fn combinations_are_members(seed: u64) {
        let r = ring(5);
        let mut g = rng(seed);
        let f = &DiffPoly::x(&r, 1).pow(2) - &DiffPoly::x(&r, 0);
        let ideal = make_satideal(&f, false).unwrap();
        let mut comb = DiffPoly::zero(&r);
        for j in 0..3 {
            let h = random_dpoly(&r, &mut g, &small());
            comb = &comb + &(&h * &f.delta_n(j));
        }
        prop_assert!(member(&comb, &ideal).unwrap());
    }

    #[test]
    fn lower_rank_is_never_a_member(seed: u64) {
        let r = ring(5);
        let mut g = rng(seed);
        let f = &DiffPoly::x(&r, 1).pow(2) - &DiffPoly::x(&r, 0);
        let ideal = make_satideal(&f, false).unwrap();
        let shape = DiffShape { max_order: 1, max_degree: 3, ..small() };
        let h = random_dpoly(&r, &mut g, &shape);
        let low = DiffPoly::from_terms(
            &r,
            h.terms()
                .filter(|(m, _)| m.exponent(DerivVar::x(1)) < 2)
                .map(|(m, c)| (m.factors().to_vec(), c.clone())),
        );
        prop_assume!(!low.is_zero());
        prop_assert!(!member(&low, &ideal).unwrap());
    }

    #[test]
    fn primality_on_products(seed: u64) {
        let r = ring(5);
        let mut g = rng(seed);
        let f = &DiffPoly::x(&r, 1).pow(2) - &DiffPoly::x(&r, 0);
        let ideal = make_satideal(&f, false).unwrap();
        let a = random_dpoly(&r, &mut g, &small());
        let mut b = random_dpoly(&r, &mut g, &small());
        if g.gen_bool(0.5) {
            b = &b * &f.delta_n(g.gen_range(0..3));
        }
        let prod = &a * &b;
        if member(&prod, &ideal).unwrap() {
            prop_assert!(member(&a, &ideal).unwrap() || member(&b, &ideal).unwrap());
        }
    }
}
