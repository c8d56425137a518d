use proptest::prelude::*;

use ecompat::algebroid::LieAlgebroid;
use ecompat::graded::GradedElement;
use ecompat::poly::vars;
use ecompat::sample::Sampler;
use ecompat::symplectic::PhaseSpace;

fn sign(e: i32) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Momenta are `p, y, s` and the degree-0 variable `b`.
fn twist_space() -> PhaseSpace {
    PhaseSpace::new(2, &[("x", 0, "p", 2), ("q", 1, "y", 1), ("r", 1, "s", 1), ("a", 2, "b", 0)], &[]).unwrap()
}

fn momentum_free(ps: &PhaseSpace, f: &GradedElement) -> GradedElement {
    let ctx = ps.ctx();
    let killed: Vec<usize> = ["p", "y", "s"].iter().map(|m| ctx.gen_index(m).unwrap()).collect();
    let b = ctx.var_index("b").unwrap();
    f.kill_generators(&killed).map_coefficients(|c| c.substitute_zero(&[b]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_laws(seed in any::<u64>()) {
        let v = vars(["x", "y", "z"]);
        let mut rng = Sampler::new(seed);
        let (a, b, c) = (rng.poly(&v, 3), rng.poly(&v, 3), rng.poly(&v, 3));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        let d = (&a * &b).partial_derivative(0);
        prop_assert_eq!(d, &(&a.partial_derivative(0) * &b) + &(&a * &b.partial_derivative(0)));
    }

    #[test]
    fn graded_commutativity_and_associativity(seed in any::<u64>(), da in -1i32..4, db in -1i32..4) {
        let ps = PhaseSpace::new(3, &[("x", 0, "p", 3), ("q", 1, "y", 2), ("u", -1, "w", 4)], &[]).unwrap();
        let ctx = ps.ctx();
        let mut rng = Sampler::new(seed);
        let f = rng.graded(ctx, da, 3, 2);
        let g = rng.graded(ctx, db, 3, 2);
        let h = rng.graded(ctx, 1, 3, 2);
        prop_assert_eq!(&f * &g, (&g * &f).scale_int(sign(da * db)));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert!((&h * &h).is_zero());
    }

    #[test]
    fn twist_is_a_poisson_map(seed in any::<u64>(), da in 0i32..4, db in 0i32..4) {
        let ps = twist_space();
        let ctx = ps.ctx();
        let mut rng = Sampler::new(seed);
        let phi = momentum_free(&ps, &rng.graded(ctx, 2, 3, 2));
        prop_assert!(ps.is_momentum_free(&phi));
        let f = rng.graded(ctx, da, 3, 1);
        let g = rng.graded(ctx, db, 3, 1);
        prop_assume!(!phi.is_zero() && !f.is_zero() && !g.is_zero());
        let tw = |e: &GradedElement| ps.twist(&phi, e).unwrap();
        let br = |a: &GradedElement, b: &GradedElement| ps.poisson_bracket(a, b).unwrap();
        let lhs = tw(&br(&f, &g));
        prop_assert_eq!(&lhs, &br(&tw(&f), &tw(&g)));
        prop_assert_eq!(tw(&(&f * &g)), &tw(&f) * &tw(&g));
    }

    #[test]
    fn e_differential_squares_to_zero(seed in any::<u64>(), k in 0usize..3) {
        let v = vars(["x", "y", "z"]);
        let alg = LieAlgebroid::tangent(&v);
        let mut rng = Sampler::new(seed);
        let a = rng.alt(&v, 3, k, 3);
        let d = alg.e_differential(&a).unwrap();
        prop_assert!(alg.e_differential(&d).unwrap().is_zero());
    }
}
