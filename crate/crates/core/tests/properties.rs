use folia_core::deformation::{
    deform_operator, eigen_perturbation_space, relcohom_operator, SubspaceBasis,
};
use folia_core::exactalg::{Poly, Scalar};
use folia_core::extcalc::{cartan_check, differential, radial_contraction, Form, VectorField};
use folia_core::foliations::{
    integrating_factor, integration_lemma_decompose, is_integrable, mu_closed_form, mu_of, FoliationSpec,
};
use folia_core::projective::{dehomogenize, descends, projectivize, projectivized_log_parameters};
use folia_core::sampling::{gaussian_poly, homogeneous_form, homogeneous_poly, logarithmic_spec, rational_spec};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn sign(k: usize) -> Scalar {
    Scalar::from_int(if k.is_multiple_of(2) { 1 } else { -1 })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn polynomial_ring_axioms(seed in any::<u64>(), n in 2usize..5) {
        let mut r = rng(seed);
        let a = gaussian_poly(&mut r, n, 2, 4);
        let b = gaussian_poly(&mut r, n, 3, 4);
        let c = homogeneous_poly(&mut r, n, 2, 4);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a + &c) - &c, a.clone());
        prop_assert_eq!((&a * &b).exact_divide(&b).unwrap(), Some(a.clone()));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn scalar_field_axioms(p in -50i64..50, q in 1i64..50, re in -9i64..9, im in 1i64..9) {
        let a = Scalar::frac(p, q);
        let z = &Scalar::from_int(re) + &(&Scalar::i() * &Scalar::from_int(im));
        prop_assert_eq!(&(&a / &z) * &z, a.clone());
        prop_assert_eq!(&(&a + &z) - &z, a.clone());
        prop_assert_eq!(&z * &z.inv().unwrap(), Scalar::from_int(1));
    }

    #[test]
    fn d_squared_vanishes(seed in any::<u64>(), n in 3usize..5, k in 0usize..3, e in 3u32..6) {
        let a = homogeneous_form(&mut rng(seed), n, k, e, 4);
        prop_assert!(a.d().d().is_zero());
    }

    #[test]
    fn leibniz_rule(seed in any::<u64>(), n in 3usize..5, k in 0usize..2, l in 0usize..2) {
        let mut r = rng(seed);
        let a = homogeneous_form(&mut r, n, k, k as u32 + 2, 3);
        let b = homogeneous_form(&mut r, n, l, l as u32 + 2, 3);
        let lhs = a.wedge(&b).unwrap().d();
        let rhs = &a.d().wedge(&b).unwrap() + &a.wedge(&b.d()).unwrap().scale(&sign(k));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn contraction_is_antiderivation(seed in any::<u64>(), n in 3usize..5, k in 1usize..3) {
        let mut r = rng(seed);
        let a = homogeneous_form(&mut r, n, k, k as u32 + 1, 3);
        let b = homogeneous_form(&mut r, n, 1, 2, 3);
        let x = VectorField::new((0..n).map(|_| homogeneous_poly(&mut r, n, 1, 2)).collect()).unwrap();
        let lhs = a.wedge(&b).unwrap().contract(&x).unwrap();
        let rhs = &a.contract(&x).unwrap().wedge(&b).unwrap()
            + &a.wedge(&b.contract(&x).unwrap()).unwrap().scale(&sign(k));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_and_cartan(seed in any::<u64>(), n in 3usize..5, k in 0usize..3, e in 2u32..6) {
        let mut r = rng(seed);
        let h = homogeneous_poly(&mut r, n, e, 4);
        let euler = radial_contraction(&differential(&h)).unwrap();
        prop_assert_eq!(euler, h.scale(&Scalar::from_int(e as i64)));
        let a = homogeneous_form(&mut r, n, k, e.max(k as u32), 4);
        prop_assert!(cartan_check(&a, e.max(k as u32)).unwrap());
    }

    #[test]
    fn integrating_factor_and_mu(seed in any::<u64>(), logarithmic in any::<bool>()) {
        let mut r = rng(seed);
        let spec = if logarithmic { logarithmic_spec(&mut r, 3, 3, 2) } else { rational_spec(&mut r, 3, 3) };
        let omega = spec.realize().unwrap();
        prop_assert!(is_integrable(&omega).unwrap());
        let (f, ok) = integrating_factor(&spec).unwrap();
        prop_assert!(ok);
        let mu = mu_of(&spec).unwrap();
        prop_assert_eq!(&mu, &mu_closed_form(&spec).unwrap());
        prop_assert_eq!(radial_contraction(&omega).unwrap(), f.scale(&mu));
    }

    #[test]
    fn integration_lemma_inverts_realize(seed in any::<u64>(), s in 2usize..4) {
        let mut r = rng(seed);
        let factors: Vec<Poly> = (0..s).map(|_| homogeneous_poly(&mut r, 3, 1, 3)).collect();
        let lambda: Vec<Scalar> = (0..s).map(|_| Scalar::from_int(r.gen_range(1..9))).collect();
        let spec = FoliationSpec::logarithmic(factors.clone(), lambda.clone()).unwrap();
        // distinct lines through distinct points keep the F_i df_i independent
        prop_assume!(eigen_perturbation_space(&spec, false).unwrap().dim() == s);
        let d = integration_lemma_decompose(&spec.realize().unwrap(), &factors, &vec![1; s]).unwrap();
        prop_assert!(d.residual_ok);
        prop_assert_eq!(d.lambda, lambda);
        prop_assert!(d.g.is_zero());
    }

    #[test]
    fn operators_are_linear(seed in any::<u64>()) {
        let mut r = rng(seed);
        let spec = rational_spec(&mut r, 3, 2);
        let omega = spec.realize().unwrap();
        let (f, _) = integrating_factor(&spec).unwrap();
        let a = homogeneous_form(&mut r, 3, 1, 3, 3);
        let b = homogeneous_form(&mut r, 3, 1, 3, 3);
        let c = Scalar::frac(r.gen_range(-9..9), r.gen_range(1..9));
        let combo = &a + &b.scale(&c);
        prop_assert_eq!(
            deform_operator(&omega, &combo).unwrap(),
            &deform_operator(&omega, &a).unwrap() + &deform_operator(&omega, &b).unwrap().scale(&c)
        );
        prop_assert_eq!(
            relcohom_operator(&omega, &f, &combo).unwrap(),
            &relcohom_operator(&omega, &f, &a).unwrap() + &relcohom_operator(&omega, &f, &b).unwrap().scale(&c)
        );
        prop_assert!(deform_operator(&omega, &omega).unwrap().is_zero());
    }

    #[test]
    fn projectivization_laws(seed in any::<u64>(), n in 2usize..5, e in 1u32..5) {
        let eta = homogeneous_form(&mut rng(seed), n, 1, e, 4);
        let lifted = projectivize(&eta, e).unwrap();
        prop_assert!(descends(&lifted).unwrap());
        prop_assert!(lifted.is_zero() || lifted.is_homogeneous_of(e + 1));
        let back = dehomogenize(&lifted).unwrap();
        prop_assert_eq!(back.form, eta);
    }

    #[test]
    fn projectivized_parameters_match(seed in any::<u64>()) {
        let spec = logarithmic_spec(&mut rng(seed), 3, 3, 2);
        prop_assert!(projectivized_log_parameters(&spec).unwrap().verified);
    }

    #[test]
    fn subspace_basis_is_canonical(seed in any::<u64>()) {
        let mut r = rng(seed);
        let gens: Vec<Form> = (0..4).map(|_| homogeneous_form(&mut r, 3, 1, 2, 3)).collect();
        let mut mixed: Vec<Form> = gens
            .iter()
            .map(|g| g.scale(&Scalar::from_int(r.gen_range(1..7))))
            .collect();
        mixed.push(&gens[0] + &gens[1]);
        mixed.shuffle(&mut r);
        let a = SubspaceBasis::span(3, 2, gens).unwrap();
        let b = SubspaceBasis::span(3, 2, mixed).unwrap();
        prop_assert_eq!(a, b);
    }
}
