mod common;

use caustica::catalog::{all, Params};
use caustica::coset::{
    coefficient_table, coset_rep_rational, euler_trace, invert_mod, newton_sums_coset, newton_sums_recursive,
    reduce_mod,
};
use caustica::poly::{discriminant, interpolate, rational, resultant};
use caustica::sampling::{draw_exact, trial_rng};
use caustica::{Polynomial, Rational, RationalFunc};
use common::P;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn coeffs(max_deg: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-9i64..=9, 1..=max_deg + 1)
}

/// Polynomial of exact degree in `min..=max`.
fn poly(min: usize, max: usize) -> impl Strategy<Value = P> {
    (min..=max).prop_flat_map(|d| {
        (prop::collection::vec(-9i64..=9, d), prop_oneof![-9i64..=-1, 1i64..=9]).prop_map(|(mut c, lead)| {
            c.push(lead);
            P::from_i64(&c)
        })
    })
}

fn squarefree(min: usize, max: usize) -> impl Strategy<Value = P> {
    poly(min, max).prop_filter("squarefree", |p| p.gcd(&p.derivative()).value.deg() == Some(0))
}

/// `Σ g(x_i)` over the roots of `φ`, from the recursive power sums.
fn sum_over_roots(phi: &P, g: &P) -> Rational {
    let sums = newton_sums_recursive(phi, g.deg().unwrap_or(0)).unwrap();
    g.coeffs().iter().zip(&sums.values).map(|(c, n)| c * n).sum()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn divmod_reconstructs(a in coeffs(8), b in poly(0, 5)) {
        let a = P::from_i64(&a);
        let (q, r) = a.divmod(&b).unwrap();
        prop_assert_eq!(&(&q * &b) + &r, a);
        prop_assert!(r.degree() < b.degree());
    }

    #[test]
    fn interpolation_reproduces_polynomial(p in poly(0, 6), start in -5i64..5) {
        let n = p.deg().unwrap() + 1;
        let pts: Vec<_> = (0..n as i64)
            .map(|i| {
                let t = rational(start + 2 * i, 3);
                let v = p.eval(&t);
                (t, v)
            })
            .collect();
        prop_assert_eq!(interpolate(&pts).unwrap(), p);
    }

    #[test]
    fn discriminant_vanishes_iff_common_factor(p in poly(2, 6)) {
        let d = discriminant(&p).unwrap();
        let repeated = p.gcd(&p.derivative()).value.deg() != Some(0);
        prop_assert_eq!(d.is_zero(), repeated);
    }

    #[test]
    fn squared_factor_has_zero_discriminant(p in poly(1, 3), q in poly(0, 2)) {
        let r = &(&p * &p) * &q;
        prop_assert!(discriminant(&r).unwrap().is_zero());
    }

    #[test]
    fn resultant_antisymmetry(p in poly(1, 5), q in poly(1, 5)) {
        let m = p.deg().unwrap();
        let n = q.deg().unwrap();
        let sign = if (m * n) % 2 == 0 { Rational::one() } else { -Rational::one() };
        prop_assert_eq!(resultant(&p, &q).unwrap(), sign * resultant(&q, &p).unwrap());
    }

    #[test]
    fn reduce_mod_is_idempotent(g in coeffs(10), phi in poly(1, 6)) {
        let once = reduce_mod(&P::from_i64(&g), &phi).unwrap();
        prop_assert!(once.rep().degree() < phi.degree());
        let twice = reduce_mod(once.rep(), &phi).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn inverse_times_element_is_one(phi in squarefree(1, 6), q in poly(0, 5)) {
        prop_assume!(q.gcd(&phi).value.deg() == Some(0));
        let inv = invert_mod(&q, &phi).unwrap();
        let prod = reduce_mod(&(&q * inv.rep()), &phi).unwrap();
        prop_assert_eq!(prod.rep(), &P::one());
    }

    #[test]
    fn table_columns_are_reductions(phi in poly(1, 7)) {
        let table = coefficient_table(&phi).unwrap();
        let n = phi.deg().unwrap();
        for k in 0..n {
            let direct = reduce_mod(&phi.derivative().shift(k), &phi).unwrap();
            prop_assert_eq!(&table.column(k), direct.rep());
        }
    }

    #[test]
    fn coset_newton_sums_match_recursion(phi in poly(1, 7), upto in 0usize..16) {
        let a = newton_sums_coset(&phi, upto).unwrap();
        let b = newton_sums_recursive(&phi, upto).unwrap();
        prop_assert_eq!(a.values, b.values);
    }

    #[test]
    fn trace_of_polynomial_is_power_sum_combination(phi in squarefree(1, 6), h in coeffs(9)) {
        let h = P::from_i64(&h);
        let t = euler_trace(&RationalFunc::from_poly(h.clone()), &phi).unwrap();
        prop_assert_eq!(t, sum_over_roots(&phi, &h));
    }

    #[test]
    fn trace_matches_product_representative(phi in squarefree(1, 6), p in poly(0, 4), q in poly(0, 3)) {
        prop_assume!(q.gcd(&phi).value.deg() == Some(0));
        let h = RationalFunc::new(p, q).unwrap();
        let t = euler_trace(&h, &phi).unwrap();
        let h_star = coset_rep_rational(&h, &phi).unwrap();
        prop_assert_eq!(t, sum_over_roots(&phi, h_star.rep()));
    }

    #[test]
    fn trace_is_linear(phi in squarefree(1, 5), a in coeffs(6), b in coeffs(6), k in -4i64..=4) {
        let ha = P::from_i64(&a);
        let hb = P::from_i64(&b);
        let tr = |h: &P| euler_trace(&RationalFunc::from_poly(h.clone()), &phi).unwrap();
        let combined = &ha.scale(&rational(k, 1)) + &hb;
        prop_assert_eq!(tr(&combined), tr(&ha) * rational(k, 1) + tr(&hb));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn catalog_identities_on_random_draws(seed in any::<u64>()) {
        for def in all() {
            let mut rng = trial_rng(seed, def.id as u64);
            let d = draw_exact(def, &mut rng).unwrap();
            let p: &Params<Rational> = &d.params;
            let phi = def.build_phi(p).unwrap();
            prop_assert_eq!(phi.deg(), Some(def.id.n_images()));
            let lambda = def.verify_phi_vs_resultant(p).unwrap();
            prop_assert!(!lambda.is_zero());
            def.verify_multiplier_identity(p).unwrap();
            let mag = def.magnification(p).unwrap();
            prop_assert!(euler_trace(&mag, &phi).unwrap().is_zero(), "{}", def.id);
            // m = φ'·𝔐 mod φ for the multiplier m
            let rep = coset_rep_rational(&mag, &phi).unwrap();
            let reduced = reduce_mod(&(&phi.derivative() * rep.rep()), &phi).unwrap();
            let m: Polynomial<Rational> = def.multiplier(p);
            prop_assert_eq!(reduced.rep(), &m, "{}", def.id);
        }
    }
}
