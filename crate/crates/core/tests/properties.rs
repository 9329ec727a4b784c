use ghpq::expr::parse_poly_expr;
use ghpq::family::{explicit, exp_gamma_d, FamilyParams};
use ghpq::format::{poly_from_json_terms, poly_to_json_terms, poly_to_text};
use ghpq::poly::Poly;
use ghpq::scalar::Scalar;
use ghpq::series::SeriesUV;
use ghpq::var::Var;
use proptest::prelude::*;

const VARS: [Var; 4] = [Var::Z, Var::W, Var::Gamma, Var::T];

fn scalar() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| Scalar::new(n, d))
}

fn poly_in(vars: &'static [Var], max_exp: u32) -> impl Strategy<Value = Poly> {
    let term = (scalar(), prop::collection::vec(0..=max_exp, vars.len()));
    prop::collection::vec(term, 0..6).prop_map(move |terms| {
        let mut p = Poly::zero();
        for (c, exps) in terms {
            let pairs: Vec<(Var, u32)> = vars.iter().copied().zip(exps).collect();
            p = p + Poly::monomial(c, &pairs);
        }
        p
    })
}

fn poly() -> impl Strategy<Value = Poly> {
    poly_in(&VARS, 3)
}

/// Polynomial in u, v with no constant term, coefficients in z.
fn series_arg() -> impl Strategy<Value = Poly> {
    poly_in(&[Var::U, Var::V, Var::Z], 2).prop_map(|p| {
        let c = p.coeff_of(Var::U, 0).coeff_of(Var::V, 0);
        p - c
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Poly::one(), a.clone());
    }

    #[test]
    fn mixed_partials_commute(f in poly(), i in 0u32..3, j in 0u32..3) {
        prop_assert_eq!(f.diff(Var::Z, i).diff(Var::W, j), f.diff(Var::W, j).diff(Var::Z, i));
        prop_assert_eq!(f.diff_zw(i, j), f.diff(Var::Z, i).diff(Var::W, j));
    }

    #[test]
    fn leibniz(f in poly(), g in poly()) {
        let lhs = (&f * &g).diff(Var::Z, 1);
        let rhs = &(&f.diff(Var::Z, 1) * &g) + &(&f * &g.diff(Var::Z, 1));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn series_exp_additive(a in series_arg(), b in series_arg()) {
        let order = 6;
        let sa = SeriesUV::from_poly(&a, order);
        let sb = SeriesUV::from_poly(&b, order);
        let lhs = sa.add(&sb).exp().unwrap();
        let rhs = sa.exp().unwrap().mul(&sb.exp().unwrap());
        prop_assert!(lhs.mismatches(&rhs).is_empty());
        prop_assert!(sa.exp().unwrap().mismatches(&sa.exp_naive().unwrap()).is_empty());
    }

    #[test]
    fn text_round_trip(f in poly()) {
        let printed = poly_to_text(&f);
        let parsed = parse_poly_expr(&printed, &VARS).unwrap();
        prop_assert_eq!(&parsed, &f);
        prop_assert_eq!(poly_to_text(&parsed), printed);
    }

    #[test]
    fn json_round_trip(f in poly()) {
        prop_assert_eq!(poly_from_json_terms(&poly_to_json_terms(&f)).unwrap(), f);
    }

    #[test]
    fn subst_is_a_ring_map(f in poly(), g in poly(), s in poly()) {
        let b = [(Var::Z, s)];
        prop_assert_eq!((&f * &g).subst(&b), &f.subst(&b) * &g.subst(&b));
        prop_assert_eq!((&f + &g).subst(&b), &f.subst(&b) + &g.subst(&b));
    }

    // e^{γ∂_z^p∂_w^q} is multiplicative in γ: applying it with s then with t
    // equals applying it once with s + t.
    #[test]
    fn exp_operator_semigroup(f in poly_in(&[Var::Z, Var::W], 4), p in 0u32..3, q in 0u32..3) {
        prop_assume!(p + q >= 1);
        let (s, t) = (Poly::var(Var::A), Poly::var(Var::B));
        let two = exp_gamma_d(&exp_gamma_d(&f, p, q, &s), p, q, &t);
        prop_assert_eq!(two, exp_gamma_d(&f, p, q, &(&s + &t)));
    }

    #[test]
    fn family_weighted_homogeneous(p in 0u32..4, q in 0u32..4, n in 0u32..8, m in 0u32..8) {
        prop_assume!(p + q >= 1);
        let h = explicit(FamilyParams::new(p, q, n, m).unwrap()).unwrap().poly;
        for (mono, _) in h.terms() {
            let g = mono.exp(Var::Gamma);
            prop_assert_eq!(mono.exp(Var::Z) + p * g, n);
            prop_assert_eq!(mono.exp(Var::W) + q * g, m);
        }
    }
}
